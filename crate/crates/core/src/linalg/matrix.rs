use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use super::perm::SignedPerm;
use crate::error::{Error, Result};
use crate::Rational;

/// Default guard on the side length of any matrix produced by [`ExactMatrix::kron`].
pub const DEFAULT_MAX_DIM: usize = 1 << 16;

/// Largest allowed matrix side, read once from `CSL_MAX_DIM`.
pub fn max_dim() -> usize {
    static LIMIT: OnceLock<usize> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var("CSL_MAX_DIM")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_DIM)
    })
}

#[derive(Clone, Debug)]
enum Repr {
    Dense(Vec<Rational>),
    Perm(SignedPerm),
}

/// Exact rational matrix. Signed permutations are kept in their specialized
/// form, and products of two signed permutations stay specialized.
#[derive(Clone, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    repr: Repr,
}

fn rat(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            repr: Repr::Dense(vec![Rational::zero(); rows * cols]),
        }
    }

    pub fn identity(size: usize) -> Self {
        SignedPerm::identity(size).into()
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                left: c,
                right: bad.len(),
            });
        }
        Ok(Self {
            rows: r,
            cols: c,
            repr: Repr::Dense(rows.into_iter().flatten().collect()),
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
    }

    /// Builds a dense matrix from `(row, col, value)` triples; unspecified entries are zero.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self> {
        let mut data = vec![Rational::zero(); rows * cols];
        for (i, j, v) in entries {
            if i >= rows || j >= cols {
                return Err(Error::ShapeMismatch {
                    op: "entry",
                    lhs: (rows, cols),
                    rhs: (i, j),
                });
            }
            data[i * cols + j] = v;
        }
        Ok(Self {
            rows,
            cols,
            repr: Repr::Dense(data),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_signed_perm(&self) -> Option<&SignedPerm> {
        match &self.repr {
            Repr::Perm(p) => Some(p),
            Repr::Dense(_) => None,
        }
    }

    pub fn is_specialized(&self) -> bool {
        matches!(self.repr, Repr::Perm(_))
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        match &self.repr {
            Repr::Dense(d) => d[row * self.cols + col].clone(),
            Repr::Perm(p) => rat(p.entry(row, col).into()),
        }
    }

    /// Dense copy of the entries, row-major.
    pub fn to_dense(&self) -> Self {
        match &self.repr {
            Repr::Dense(_) => self.clone(),
            Repr::Perm(p) => {
                let n = p.size();
                let mut data = vec![Rational::zero(); n * n];
                for (col, (&row, &s)) in p.perm().iter().zip(p.signs()).enumerate() {
                    data[row * n + col] = rat(s.into());
                }
                Self {
                    rows: n,
                    cols: n,
                    repr: Repr::Dense(data),
                }
            }
        }
    }

    /// Detects a signed permutation stored densely and switches to the specialized form.
    pub fn specialize(self) -> Self {
        if self.is_specialized() || !self.is_square() {
            return self;
        }
        match self.detect_signed_perm() {
            Some(p) => p.into(),
            None => self,
        }
    }

    fn detect_signed_perm(&self) -> Option<SignedPerm> {
        let n = self.rows;
        let mut perm = vec![usize::MAX; n];
        let mut signs = vec![0i8; n];
        let one = Rational::one();
        for i in 0..n {
            for j in 0..n {
                let v = self.get(i, j);
                if v.is_zero() {
                    continue;
                }
                if v.abs() != one || perm[j] != usize::MAX {
                    return None;
                }
                perm[j] = i;
                signs[j] = if v.is_positive() { 1 } else { -1 };
            }
        }
        if perm.contains(&usize::MAX) {
            return None;
        }
        SignedPerm::new(perm, signs).ok()
    }

    pub fn row(&self, i: usize) -> Vec<Rational> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    /// Nonzero entries sorted by `(row, col)`.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, Rational)> {
        match &self.repr {
            Repr::Perm(p) => {
                let mut out: Vec<_> = p
                    .perm()
                    .iter()
                    .zip(p.signs())
                    .enumerate()
                    .map(|(col, (&row, &s))| (row, col, rat(s.into())))
                    .collect();
                out.sort_by_key(|&(i, j, _)| (i, j));
                out
            }
            Repr::Dense(d) => d
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(idx, v)| (idx / self.cols, idx % self.cols, v.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                op: "mul",
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        if let (Repr::Perm(a), Repr::Perm(b)) = (&self.repr, &other.repr) {
            return Ok(a.compose(b)?.into());
        }
        Ok(self.mul_dense(other))
    }

    /// Product through the dense path regardless of representation.
    pub fn mul_dense(&self, other: &Self) -> Self {
        let a = self.to_dense();
        let b = other.to_dense();
        let (Repr::Dense(ad), Repr::Dense(bd)) = (&a.repr, &b.repr) else {
            unreachable!("to_dense yields dense storage")
        };
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut out = vec![Rational::zero(); n * m];
        for i in 0..n {
            for l in 0..k {
                let x = &ad[i * k + l];
                if x.is_zero() {
                    continue;
                }
                for j in 0..m {
                    let y = &bd[l * m + j];
                    if !y.is_zero() {
                        out[i * m + j] += x * y;
                    }
                }
            }
        }
        Self {
            rows: n,
            cols: m,
            repr: Repr::Dense(out),
        }
    }

    fn zip_with(&self, other: &Self, op: &'static str, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                op,
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        let data = (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .map(|(i, j)| f(&self.get(i, j), &other.get(i, j)))
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            repr: Repr::Dense(data),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        match &self.repr {
            Repr::Perm(p) => p.neg().into(),
            Repr::Dense(d) => Self {
                rows: self.rows,
                cols: self.cols,
                repr: Repr::Dense(d.iter().map(|v| -v).collect()),
            },
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_one() {
            return self.clone();
        }
        if *s == -Rational::one() {
            return self.neg();
        }
        let Repr::Dense(d) = &self.to_dense().repr else {
            unreachable!()
        };
        Self {
            rows: self.rows,
            cols: self.cols,
            repr: Repr::Dense(d.iter().map(|v| v * s).collect()),
        }
    }

    pub fn transpose(&self) -> Self {
        match &self.repr {
            Repr::Perm(p) => p.transpose().into(),
            Repr::Dense(_) => Self {
                rows: self.cols,
                cols: self.rows,
                repr: Repr::Dense(
                    (0..self.cols)
                        .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
                        .map(|(i, j)| self.get(i, j))
                        .collect(),
                ),
            },
        }
    }

    /// Kronecker product, guarded by [`max_dim`].
    pub fn kron(&self, other: &Self) -> Result<Self> {
        self.kron_with_limit(other, max_dim())
    }

    pub fn kron_with_limit(&self, other: &Self, limit: usize) -> Result<Self> {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        if rows.max(cols) > limit {
            return Err(Error::MaxDimExceeded {
                requested: rows.max(cols),
                limit,
            });
        }
        if let (Repr::Perm(a), Repr::Perm(b)) = (&self.repr, &other.repr) {
            return Ok(a.kron(b).into());
        }
        let mut data = vec![Rational::zero(); rows * cols];
        for (i, j, a) in self.nonzero_entries() {
            for (k, l, b) in other.nonzero_entries() {
                data[(i * other.rows + k) * cols + j * other.cols + l] = &a * &b;
            }
        }
        Ok(Self {
            rows,
            cols,
            repr: Repr::Dense(data),
        })
    }

    /// Kronecker product of a list; the empty product is the 1×1 identity.
    pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a ExactMatrix>) -> Result<Self> {
        factors
            .into_iter()
            .try_fold(Self::identity(1), |acc, f| acc.kron(f))
    }

    /// 2×2 block matrix `[[a, b], [c, d]]`.
    pub fn block2(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        let (r0, c0) = a.shape();
        let (r1, c1) = d.shape();
        if b.shape() != (r0, c1) || c.shape() != (r1, c0) {
            return Err(Error::ShapeMismatch {
                op: "block2",
                lhs: a.shape(),
                rhs: d.shape(),
            });
        }
        let mut entries = Vec::new();
        for (m, (dr, dc)) in [(a, (0, 0)), (b, (0, c0)), (c, (r0, 0)), (d, (r0, c0))] {
            entries.extend(
                m.nonzero_entries()
                    .into_iter()
                    .map(|(i, j, v)| (i + dr, j + dc, v)),
            );
        }
        Ok(Self::from_entries(r0 + r1, c0 + c1, entries)?.specialize())
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Perm(p) => p.size() == 0,
            Repr::Dense(d) => d.iter().all(Zero::is_zero),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.scalar_value().is_some_and(|c| c.is_one())
    }

    /// `Some(c)` when the matrix is `c·Id`.
    pub fn scalar_value(&self) -> Option<Rational> {
        if !self.is_square() {
            return None;
        }
        match &self.repr {
            Repr::Perm(p) => p.scalar_value().map(|s| rat(s.into())),
            Repr::Dense(_) => {
                let c = if self.rows == 0 { Rational::zero() } else { self.get(0, 0) };
                let ok = (0..self.rows).all(|i| {
                    (0..self.cols).all(|j| {
                        let v = self.get(i, j);
                        if i == j {
                            v == c
                        } else {
                            v.is_zero()
                        }
                    })
                });
                ok.then_some(c)
            }
        }
    }

    /// `A v` for a column vector `v`.
    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                left: self.cols,
                right: v.len(),
            });
        }
        Ok(match &self.repr {
            Repr::Perm(p) => p.apply(v),
            Repr::Dense(d) => (0..self.rows)
                .map(|i| {
                    d[i * self.cols..(i + 1) * self.cols]
                        .iter()
                        .zip(v)
                        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                        .map(|(a, b)| a * b)
                        .sum()
                })
                .collect(),
        })
    }

    /// Inverse by Gauss–Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        if let Repr::Perm(p) = &self.repr {
            return Some(p.transpose().into());
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].recip();
            for v in a[col].iter_mut().chain(inv[col].iter_mut()) {
                *v *= &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    let (ac, ic) = (a[col][c].clone(), inv[col][c].clone());
                    a[r][c] -= &f * ac;
                    inv[r][c] -= &f * ic;
                }
            }
        }
        Some(Self::from_rows(inv).ok()?.specialize())
    }
}

impl From<SignedPerm> for ExactMatrix {
    fn from(p: SignedPerm) -> Self {
        Self {
            rows: p.size(),
            cols: p.size(),
            repr: Repr::Perm(p),
        }
    }
}

impl PartialEq for ExactMatrix {
    fn eq(&self, other: &Self) -> bool {
        if self.shape() != other.shape() {
            return false;
        }
        match (&self.repr, &other.repr) {
            (Repr::Perm(a), Repr::Perm(b)) => a == b,
            (Repr::Dense(a), Repr::Dense(b)) => a == b,
            _ => (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == other.get(i, j))),
        }
    }
}

impl Eq for ExactMatrix {}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> ExactMatrix {
        ExactMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = ExactMatrix::identity(2);
        let k = i2.kron(&i2).unwrap();
        assert_eq!(k, ExactMatrix::identity(4));
        assert!(k.is_specialized());
    }

    #[test]
    fn kron_shape() {
        let a = m(&[vec![1, 2, 3], vec![4, 5, 6]]);
        let b = m(&[vec![1], vec![-1], vec![2], vec![0]]);
        let k = a.kron(&b).unwrap();
        assert_eq!(k.shape(), (8, 3));
        assert_eq!(k.get(2, 1), rat(4));
        assert_eq!(k.get(5, 2), rat(-6));
    }

    #[test]
    fn kron_respects_limit() {
        let a = ExactMatrix::identity(300);
        assert_eq!(
            a.kron_with_limit(&a, 1 << 16),
            Err(Error::MaxDimExceeded {
                requested: 90000,
                limit: 1 << 16
            })
        );
    }

    #[test]
    fn dense_signed_perm_is_detected() {
        let d = m(&[vec![0, -1], vec![1, 0]]);
        assert!(!d.is_specialized());
        let s = d.clone().specialize();
        assert!(s.is_specialized());
        assert_eq!(s, d);
        let sq = s.mul(&s).unwrap();
        assert!(sq.is_specialized());
        assert_eq!(sq.scalar_value(), Some(rat(-1)));
        assert!(!m(&[vec![2, 0], vec![0, 1]]).specialize().is_specialized());
    }

    #[test]
    fn shape_errors() {
        let a = m(&[vec![1, 2]]);
        assert!(a.mul(&a).is_err());
        assert!(a.add(&a.transpose()).is_err());
        assert!(a.apply(&[rat(1)]).is_err());
    }

    #[test]
    fn dense_inverse() {
        let a = m(&[vec![2, 1], vec![1, 1]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert!(m(&[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    #[test]
    fn entries_are_sorted() {
        let p: ExactMatrix = SignedPerm::new(vec![2, 0, 1], vec![1, -1, 1]).unwrap().into();
        let e = p.nonzero_entries();
        assert_eq!(
            e.iter().map(|(i, j, _)| (*i, *j)).collect::<Vec<_>>(),
            vec![(0, 1), (1, 2), (2, 0)]
        );
    }
}
