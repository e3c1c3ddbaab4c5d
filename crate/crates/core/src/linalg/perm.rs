use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A signed permutation matrix: column `i` is `signs[i] · e_{perm[i]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedPerm {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPerm {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        if perm.len() != signs.len() {
            return Err(Error::DimensionMismatch {
                left: perm.len(),
                right: signs.len(),
            });
        }
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || seen[p] {
                return Err(Error::InvalidArgument(format!(
                    "{perm:?} is not a permutation"
                )));
            }
            seen[p] = true;
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidArgument("signs must be ±1".into()));
        }
        Ok(Self { perm, signs })
    }

    pub fn identity(size: usize) -> Self {
        Self {
            perm: (0..size).collect(),
            signs: vec![1; size],
        }
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Matrix entry at `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> i8 {
        if self.perm[col] == row {
            self.signs[col]
        } else {
            0
        }
    }

    /// `self · other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::DimensionMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        let (perm, signs) = other
            .perm
            .iter()
            .zip(&other.signs)
            .map(|(&p, &s)| (self.perm[p], s * self.signs[p]))
            .unzip();
        Ok(Self { perm, signs })
    }

    pub fn neg(&self) -> Self {
        Self {
            perm: self.perm.clone(),
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }

    /// Transpose, which is also the inverse.
    pub fn transpose(&self) -> Self {
        let mut perm = vec![0; self.size()];
        let mut signs = vec![1; self.size()];
        for (i, (&p, &s)) in self.perm.iter().zip(&self.signs).enumerate() {
            perm[p] = i;
            signs[p] = s;
        }
        Self { perm, signs }
    }

    pub fn kron(&self, other: &Self) -> Self {
        let nb = other.size();
        let mut perm = Vec::with_capacity(self.size() * nb);
        let mut signs = Vec::with_capacity(self.size() * nb);
        for (&pa, &sa) in self.perm.iter().zip(&self.signs) {
            for (&pb, &sb) in other.perm.iter().zip(&other.signs) {
                perm.push(pa * nb + pb);
                signs.push(sa * sb);
            }
        }
        Self { perm, signs }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.signs.iter().all(|&s| s == 1)
    }

    /// `Some(c)` when the matrix equals `c·Id` (only `c = ±1` is possible).
    pub fn scalar_value(&self) -> Option<i8> {
        if !self.perm.iter().enumerate().all(|(i, &p)| i == p) {
            return None;
        }
        let first = *self.signs.first()?;
        self.signs.iter().all(|&s| s == first).then_some(first)
    }

    /// Applies the matrix to a vector over any ring with negation.
    pub fn apply<T>(&self, v: &[T]) -> Vec<T>
    where
        T: Clone + Default + std::ops::Neg<Output = T>,
    {
        let mut out = vec![T::default(); v.len()];
        for (i, x) in v.iter().enumerate() {
            out[self.perm[i]] = if self.signs[i] > 0 { x.clone() } else { -x.clone() };
        }
        out
    }

    /// `apply` specialized to `f64` slices, writing into `out`.
    pub fn apply_f64(&self, v: &[f64], out: &mut [f64]) {
        for (i, &x) in v.iter().enumerate() {
            out[self.perm[i]] = f64::from(self.signs[i]) * x;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_permutations() {
        assert!(SignedPerm::new(vec![0, 0], vec![1, 1]).is_err());
        assert!(SignedPerm::new(vec![0, 2], vec![1, 1]).is_err());
        assert!(SignedPerm::new(vec![1, 0], vec![1, 2]).is_err());
        assert!(SignedPerm::new(vec![1, 0], vec![1]).is_err());
    }

    #[test]
    fn rotation_squares_to_minus_identity() {
        // e0 -> e1, e1 -> -e0
        let r = SignedPerm::new(vec![1, 0], vec![1, -1]).unwrap();
        let r2 = r.compose(&r).unwrap();
        assert_eq!(r2.scalar_value(), Some(-1));
        assert!(r.compose(&r.transpose()).unwrap().is_identity());
        assert_eq!(r.entry(1, 0), 1);
        assert_eq!(r.entry(0, 1), -1);
        assert_eq!(r.apply(&[3i64, 5]), vec![-5, 3]);
    }
}
