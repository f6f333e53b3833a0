//! Encodings for non-decreasing destination lists.
//!
//! A block stores, per symbol, the non-decreasing list M of destination run
//! indices of its rows with that symbol. Three interchangeable encodings,
//! each with an explicit base M[0]:
//!
//! - bitvector: unary gaps; one set bit per element, M[k]-M[k-1] zeros
//!   before it, so M[k] = base + select(k) - k. Size is linear in the span
//!   M[last] - M[0].
//! - DAC-sampled: consecutive differences in a DAC list plus every s-th
//!   value sampled (as offset from the base); decoding sums at most s-1
//!   differences.
//! - interpolated: every s-th value sampled; in-window values store the
//!   signed correction against the rounded linear interpolation between the
//!   surrounding samples (round half up). A window with no following sample
//!   falls back to the difference against its own sample.

use crate::bits::BitVec;
use crate::dac::DacList;

/// Which destination encoding a blocked table uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DestEncoding {
    Bitvector,
    DacSampled { rate: usize },
    Interpolated { rate: usize },
}

impl DestEncoding {
    pub const DEFAULT_DAC_RATE: usize = 5;
    pub const DEFAULT_INTERP_RATE: usize = 16;

    pub fn validate(&self) {
        match *self {
            DestEncoding::Bitvector => {}
            DestEncoding::DacSampled { rate } => {
                assert!(rate >= 1, "DAC sampling rate must be at least 1")
            }
            DestEncoding::Interpolated { rate } => {
                assert!(rate >= 2, "interpolation rate must be at least 2")
            }
        }
    }
}

/// An encoded non-decreasing list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DestList {
    Bitvector(BvList),
    DacSampled(SampledList),
    Interpolated(InterpList),
}

impl DestList {
    pub fn encode(values: &[u64], encoding: DestEncoding) -> Self {
        encoding.validate();
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]), "list must be non-decreasing");
        match encoding {
            DestEncoding::Bitvector => DestList::Bitvector(BvList::encode(values)),
            DestEncoding::DacSampled { rate } => {
                DestList::DacSampled(SampledList::encode(values, rate))
            }
            DestEncoding::Interpolated { rate } => {
                DestList::Interpolated(InterpList::encode(values, rate))
            }
        }
    }

    pub fn get(&self, k: usize) -> u64 {
        match self {
            DestList::Bitvector(l) => l.get(k),
            DestList::DacSampled(l) => l.get(k),
            DestList::Interpolated(l) => l.get(k),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            DestList::Bitvector(l) => l.len,
            DestList::DacSampled(l) => l.len,
            DestList::Interpolated(l) => l.len,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Unary-gap bitvector encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BvList {
    pub base: u64,
    pub bits: BitVec,
    pub len: usize,
}

impl BvList {
    pub fn encode(values: &[u64]) -> Self {
        if values.is_empty() {
            return BvList { base: 0, bits: BitVec::from_set_bits(0, []), len: 0 };
        }
        let base = values[0];
        let span = (values[values.len() - 1] - base) as usize;
        let bits = BitVec::from_set_bits(
            values.len() + span,
            values.iter().enumerate().map(|(k, &v)| (v - base) as usize + k),
        );
        BvList { base, bits, len: values.len() }
    }

    pub fn get(&self, k: usize) -> u64 {
        let pos = self.bits.select1(k).expect("index out of encoded range");
        self.base + (pos - k) as u64
    }

    /// The raw bit pattern, for inspection.
    pub fn bit_string(&self) -> String {
        (0..self.bits.len()).map(|i| if self.bits.get(i) { '1' } else { '0' }).collect()
    }
}

/// Differences in a DAC list plus every `rate`-th value sampled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledList {
    pub rate: usize,
    pub base: u64,
    /// samples[j] = M[j * rate] - base.
    pub samples: DacList,
    /// diffs[i] = M[i] - M[i-1]; diffs[0] = 0.
    pub diffs: DacList,
    pub len: usize,
}

impl SampledList {
    pub fn encode(values: &[u64], rate: usize) -> Self {
        assert!(rate >= 1);
        let base = values.first().copied().unwrap_or(0);
        let samples: Vec<u64> =
            values.iter().step_by(rate).map(|&v| v - base).collect();
        let diffs: Vec<u64> = values
            .iter()
            .enumerate()
            .map(|(i, &v)| if i == 0 { 0 } else { v - values[i - 1] })
            .collect();
        SampledList {
            rate,
            base,
            samples: DacList::new(&samples),
            diffs: DacList::new(&diffs),
            len: values.len(),
        }
    }

    pub fn get(&self, k: usize) -> u64 {
        assert!(k < self.len, "index {k} out of range (len {})", self.len);
        let window = k / self.rate;
        let mut value = self.base + self.samples.get(window);
        for i in window * self.rate + 1..=k {
            value += self.diffs.get(i);
        }
        value
    }
}

/// Sampled values plus signed corrections against linear interpolation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterpList {
    pub rate: usize,
    /// samples[j] = M[j * rate], verbatim.
    pub samples: DacList,
    /// |M[i] - prediction| for every non-sampled i, window order.
    pub deltas: DacList,
    /// Set where the correction is negative.
    pub signs: BitVec,
    pub len: usize,
}

impl InterpList {
    pub fn encode(values: &[u64], rate: usize) -> Self {
        assert!(rate >= 2);
        let samples: Vec<u64> = values.iter().step_by(rate).copied().collect();
        let mut deltas = Vec::new();
        let mut signs = Vec::new();
        for (i, &v) in values.iter().enumerate() {
            if i % rate == 0 {
                continue;
            }
            let predicted = Self::predict(&samples, values.len(), rate, i);
            let (magnitude, negative) = if v >= predicted {
                (v - predicted, false)
            } else {
                (predicted - v, true)
            };
            deltas.push(magnitude);
            signs.push(negative);
        }
        InterpList {
            rate,
            samples: DacList::new(&samples),
            deltas: DacList::new(&deltas),
            signs: BitVec::from_bools(&signs),
            len: values.len(),
        }
    }

    /// Rounded linear interpolation between the window samples `x` and `z`,
    /// or `x` alone when the window has no right sample.
    fn interpolate(x: u64, z: Option<u64>, rate: usize, i: usize) -> u64 {
        match z {
            // final partial window: difference against x
            None => x,
            Some(z) => {
                let along = (i % rate) as u64;
                // round half up of (z - x) * along / rate
                x + ((z - x) * along * 2 + rate as u64) / (2 * rate as u64)
            }
        }
    }

    fn predict(samples: &[u64], len: usize, rate: usize, i: usize) -> u64 {
        let window = i / rate;
        let z = if (window + 1) * rate < len { Some(samples[window + 1]) } else { None };
        Self::interpolate(samples[window], z, rate, i)
    }

    pub fn get(&self, k: usize) -> u64 {
        assert!(k < self.len, "index {k} out of range (len {})", self.len);
        if k.is_multiple_of(self.rate) {
            return self.samples.get(k / self.rate);
        }
        let window = k / self.rate;
        let x = self.samples.get(window);
        let z = if (window + 1) * self.rate < self.len {
            Some(self.samples.get(window + 1))
        } else {
            None
        };
        let predicted = Self::interpolate(x, z, self.rate, k);
        let delta_index = k - window - 1;
        let magnitude = self.deltas.get(delta_index);
        if self.signs.get(delta_index) {
            predicted - magnitude
        } else {
            predicted + magnitude
        }
    }
}
