use std::ops::Index;

/// Fixed-width presence/absence vector over a vocabulary.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FeatureVector {
    bits: Vec<bool>,
}

impl FeatureVector {
    pub fn zeros(len: usize) -> Self {
        FeatureVector {
            bits: vec![false; len],
        }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        FeatureVector { bits }
    }

    /// Builds a vector from `0`/`1` values; any nonzero value counts as set.
    pub fn from_u8(values: &[u8]) -> Self {
        FeatureVector {
            bits: values.iter().map(|&v| v != 0).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    #[inline]
    pub fn get(&self, k: usize) -> bool {
        self.bits[k]
    }

    pub fn set(&mut self, k: usize, value: bool) {
        self.bits[k] = value;
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(k, &b)| b.then_some(k))
    }
}

impl Index<usize> for FeatureVector {
    type Output = bool;

    fn index(&self, k: usize) -> &bool {
        &self.bits[k]
    }
}
