use num_traits::{One, Zero};

use super::matrix::ExactMatrix;
use super::perm::SignedPerm;
use crate::error::{Error, Result};
use crate::Rational;

/// A subspace of ℚ^ambient_dim stored by its reduced row-echelon basis.
///
/// RREF is canonical, so derived equality is subspace equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    rows: Vec<Vec<Rational>>,
}

/// In-place RREF; returns the pivot columns. Zero rows are dropped.
fn rref(rows: &mut Vec<Vec<Rational>>, width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        if !inv.is_one() {
            for v in rows[r][col..].iter_mut() {
                *v *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

impl Subspace {
    /// Span of the given vectors (which need not be independent).
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                left: ambient_dim,
                right: v.len(),
            });
        }
        let mut rows = vectors.to_vec();
        rref(&mut rows, ambient_dim);
        Ok(Self { ambient_dim, rows })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            rows: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            rows: (0..ambient_dim).map(|i| unit(ambient_dim, i)).collect(),
        }
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient_dim: usize, indices: &[usize]) -> Result<Self> {
        if let Some(&i) = indices.iter().find(|&&i| i >= ambient_dim) {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: ambient_dim,
            });
        }
        let vs: Vec<_> = indices.iter().map(|&i| unit(ambient_dim, i)).collect();
        Self::span(ambient_dim, &vs)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Canonical basis rows.
    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn basis_matrix(&self) -> ExactMatrix {
        let entries = self.rows.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(move |(j, v)| (i, j, v.clone()))
        });
        ExactMatrix::from_entries(self.dim(), self.ambient_dim, entries)
            .expect("entries are in range")
    }

    pub fn basis_f64(&self) -> Vec<Vec<f64>> {
        use num_traits::ToPrimitive;
        self.rows
            .iter()
            .map(|r| r.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect())
            .collect()
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                left: self.ambient_dim,
                right: v.len(),
            });
        }
        Ok(self.reduce(v.to_vec()).iter().all(Zero::is_zero))
    }

    /// Residue of `v` after eliminating every pivot column of the basis.
    fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        for row in &self.rows {
            let p = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    /// Adjoins `v`, keeping the basis in RREF. Returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<Rational>) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                left: self.ambient_dim,
                right: v.len(),
            });
        }
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = r[p].recip();
        if !inv.is_one() {
            for x in r[p..].iter_mut() {
                *x *= &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row[p..].iter_mut().zip(&r[p..]) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let at = self
            .rows
            .iter()
            .position(|row| row.iter().position(|x| !x.is_zero()).expect("nonzero row") > p)
            .unwrap_or(self.rows.len());
        self.rows.insert(at, r);
        Ok(true)
    }

    /// Sum of two subspaces of the same ambient space.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        rref(&mut rows, self.ambient_dim);
        Ok(Self {
            ambient_dim: self.ambient_dim,
            rows,
        })
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        self.same_ambient(other)?;
        for r in &self.rows {
            if !other.contains(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `self ⊗ other` inside the Kronecker product of the ambient spaces.
    ///
    /// The Kronecker product of two RREF bases, rows in lexicographic order,
    /// is again in RREF, so no re-reduction is needed.
    pub fn tensor(&self, other: &Self) -> Self {
        let ambient_dim = self.ambient_dim * other.ambient_dim;
        let rows = self
            .rows
            .iter()
            .flat_map(|a| other.rows.iter().map(move |b| kron_vec(a, b)))
            .collect();
        Self { ambient_dim, rows }
    }

    /// Direct sum of two subspaces placed in complementary coordinate blocks.
    pub fn block_sum(&self, other: &Self) -> Self {
        let ambient_dim = self.ambient_dim + other.ambient_dim;
        let pad = |row: &Vec<Rational>, before: usize, after: usize| {
            let mut v = vec![Rational::zero(); before];
            v.extend(row.iter().cloned());
            v.extend(std::iter::repeat_n(Rational::zero(), after));
            v
        };
        let mut rows: Vec<_> = self
            .rows
            .iter()
            .map(|r| pad(r, 0, other.ambient_dim))
            .collect();
        rows.extend(other.rows.iter().map(|r| pad(r, self.ambient_dim, 0)));
        Self { ambient_dim, rows }
    }

    fn same_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        Ok(())
    }
}

fn unit(dim: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[i] = Rational::one();
    v
}

fn kron_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x * y))
        .collect()
}

/// Image `op(S)`: the row space of `basis · opᵀ`, re-canonicalized.
pub fn image(op: &ExactMatrix, s: &Subspace) -> Result<Subspace> {
    if op.cols() != s.ambient_dim {
        return Err(Error::ShapeMismatch {
            op: "image",
            lhs: op.shape(),
            rhs: (s.dim(), s.ambient_dim),
        });
    }
    let vs = s
        .rows
        .iter()
        .map(|r| op.apply(r))
        .collect::<Result<Vec<_>>>()?;
    Subspace::span(op.rows(), &vs)
}

/// True iff `s ⊕ t` is the whole ambient space.
pub fn direct_sum_check(s: &Subspace, t: &Subspace) -> Result<bool> {
    s.same_ambient(t)?;
    if s.dim() + t.dim() != s.ambient_dim {
        return Ok(false);
    }
    Ok(s.sum(t)?.dim() == s.ambient_dim)
}

/// Smallest subspace containing `v` and invariant under every generator.
pub fn spin_submodule(gens: &[ExactMatrix], v: &[Rational]) -> Result<Subspace> {
    let dim = v.len();
    if v.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    if let Some(g) = gens.iter().find(|g| g.shape() != (dim, dim)) {
        return Err(Error::ShapeMismatch {
            op: "spin_submodule",
            lhs: g.shape(),
            rhs: (dim, 1),
        });
    }
    let mut space = Subspace::span(dim, &[v.to_vec()])?;
    let mut frontier = vec![v.to_vec()];
    while let Some(w) = frontier.pop() {
        if space.dim() == dim {
            break;
        }
        for g in gens {
            let u = g.apply(&w)?;
            if space.insert(u.clone())? {
                frontier.push(u);
            }
        }
    }
    Ok(space)
}

/// Prime modulus for the fast spin rank, `2^61 − 1`.
const SPIN_PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % SPIN_PRIME as u128) as u64
}

fn inv_mod(a: u64) -> u64 {
    // Fermat: a^(p−2)
    let (mut base, mut exp, mut acc) = (a, SPIN_PRIME - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

/// Echelon basis over `F_p` with normalized pivots.
struct ModSpan {
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModSpan {
    fn insert(&mut self, mut u: Vec<u64>) -> bool {
        for (pivot, row) in &self.rows {
            let c = u[*pivot];
            if c != 0 {
                for (x, r) in u.iter_mut().zip(row) {
                    *x = (*x + SPIN_PRIME - mul_mod(c, *r)) % SPIN_PRIME;
                }
            }
        }
        match u.iter().position(|&x| x != 0) {
            Some(pivot) => {
                let inv = inv_mod(u[pivot]);
                u.iter_mut().for_each(|x| *x = mul_mod(*x, inv));
                self.rows.push((pivot, u));
                true
            }
            None => false,
        }
    }
}

/// Dimension of the smallest subspace containing the integer vector `v` and
/// invariant under signed-permutation generators.
///
/// The orbit is first spun modulo a large prime. Rank modulo a prime never
/// exceeds rank over ℚ, so a full result is exact; otherwise the dimension is
/// recomputed with exact rationals.
pub fn spin_dimension(gens: &[SignedPerm], v: &[i64]) -> Result<usize> {
    let dim = v.len();
    if v.iter().all(|&x| x == 0) {
        return Err(Error::ZeroVector);
    }
    if let Some(g) = gens.iter().find(|g| g.size() != dim) {
        return Err(Error::ShapeMismatch {
            op: "spin_dimension",
            lhs: (g.size(), g.size()),
            rhs: (dim, 1),
        });
    }
    let reduce = |w: &[i64]| -> Vec<u64> { w.iter().map(|&x| x.rem_euclid(SPIN_PRIME as i64) as u64).collect() };
    let mut span = ModSpan { rows: Vec::new() };
    span.insert(reduce(v));
    let mut frontier = vec![v.to_vec()];
    while let Some(w) = frontier.pop() {
        if span.rows.len() == dim {
            return Ok(dim);
        }
        for g in gens {
            let image = g.apply(&w);
            if span.insert(reduce(&image)) {
                frontier.push(image);
            }
        }
    }
    if span.rows.len() == dim {
        return Ok(dim);
    }
    let exact: Vec<ExactMatrix> = gens.iter().cloned().map(ExactMatrix::from).collect();
    let rational: Vec<Rational> = v.iter().map(|&x| Rational::from_integer(x.into())).collect();
    Ok(spin_submodule(&exact, &rational)?.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::SignedPerm;
    use proptest::prelude::*;

    #[test]
    fn spin_dimension_matches_exact_spin() {
        // a 4-cycle spins e_0 + e_2 to a 2-dimensional subspace, and e_0 to everything
        let cyc = SignedPerm::new(vec![1, 2, 3, 0], vec![1, 1, 1, 1]).unwrap();
        assert_eq!(spin_dimension(std::slice::from_ref(&cyc), &[1, 0, 1, 0]).unwrap(), 2);
        assert_eq!(spin_dimension(std::slice::from_ref(&cyc), &[1, 0, 0, 0]).unwrap(), 4);
        assert_eq!(spin_dimension(std::slice::from_ref(&cyc), &[1, 1, 1, 1]).unwrap(), 1);
        let exact = spin_submodule(&[ExactMatrix::from(cyc)], &ints(&[1, 0, 1, 0])).unwrap();
        assert_eq!(exact.dim(), 2);
        assert!(spin_dimension(&[], &[0, 0]).is_err());
    }

    fn rat(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rref_is_reduced() {
        let s = Subspace::span(3, &[ints(&[2, 4, 6]), ints(&[1, 1, 1]), ints(&[3, 5, 7])]).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.basis(), &[ints(&[1, 0, -1]), ints(&[0, 1, 2])]);
    }

    #[test]
    fn image_under_identity_and_negation() {
        let s = Subspace::span(3, &[ints(&[1, 2, 0])]).unwrap();
        let id = ExactMatrix::identity(3);
        assert_eq!(image(&id, &s).unwrap(), s);
        assert_eq!(image(&id.neg(), &s).unwrap(), s);
        assert!(image(&ExactMatrix::identity(2), &s).is_err());
    }

    #[test]
    fn direct_sums() {
        let e0 = Subspace::coordinate(2, &[0]).unwrap();
        let e1 = Subspace::coordinate(2, &[1]).unwrap();
        assert!(direct_sum_check(&e0, &e1).unwrap());
        assert!(!direct_sum_check(&e0, &e0).unwrap());
    }

    #[test]
    fn octonion_diagonal_and_antidiagonal_split_r16() {
        let plus: Vec<_> = (0..8)
            .map(|i| {
                let mut v = vec![rat(0); 16];
                v[i] = rat(1);
                v[i + 8] = rat(1);
                v
            })
            .collect();
        let minus: Vec<_> = (0..8)
            .map(|i| {
                let mut v = vec![rat(0); 16];
                v[i] = rat(1);
                v[i + 8] = rat(-1);
                v
            })
            .collect();
        let h0 = Subspace::span(16, &plus).unwrap();
        let h1 = Subspace::span(16, &minus).unwrap();
        assert!(direct_sum_check(&h0, &h1).unwrap());
    }

    #[test]
    fn insert_keeps_canonical_form() {
        let mut s = Subspace::span(4, &[ints(&[0, 1, 2, 0])]).unwrap();
        assert!(s.insert(ints(&[1, 1, 1, 1])).unwrap());
        assert!(!s.insert(ints(&[2, 3, 4, 2])).unwrap());
        assert!(s.insert(ints(&[0, 0, 3, 1])).unwrap());
        let direct = Subspace::span(
            4,
            &[ints(&[0, 1, 2, 0]), ints(&[1, 1, 1, 1]), ints(&[0, 0, 3, 1])],
        )
        .unwrap();
        assert_eq!(s, direct);
    }

    #[test]
    fn spinning_basics() {
        let e0 = ints(&[1, 0]);
        assert_eq!(spin_submodule(&[], &e0).unwrap(), Subspace::coordinate(2, &[0]).unwrap());
        let rot: ExactMatrix = SignedPerm::new(vec![1, 0], vec![1, -1]).unwrap().into();
        assert_eq!(spin_submodule(&[rot], &e0).unwrap(), Subspace::full(2));
        assert_eq!(spin_submodule(&[], &ints(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn tensor_matches_reduced_span() {
        let a = Subspace::span(3, &[ints(&[1, 2, 0]), ints(&[0, 1, 1])]).unwrap();
        let b = Subspace::span(2, &[ints(&[1, -1])]).unwrap();
        let t = a.tensor(&b);
        let vs: Vec<_> = a
            .basis()
            .iter()
            .flat_map(|x| b.basis().iter().map(move |y| kron_vec(x, y)))
            .collect();
        assert_eq!(t, Subspace::span(6, &vs).unwrap());
    }

    fn small_vecs(dim: usize, count: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(-3i64..=3, dim), 0..=count)
    }

    fn signed_perm(dim: usize) -> impl Strategy<Value = SignedPerm> {
        (
            Just((0..dim).collect::<Vec<_>>()).prop_shuffle(),
            prop::collection::vec(prop::bool::ANY, dim),
        )
            .prop_map(|(p, s)| {
                SignedPerm::new(p, s.into_iter().map(|b| if b { 1 } else { -1 }).collect()).unwrap()
            })
    }

    proptest! {
        #[test]
        fn rref_is_canonical(vs in small_vecs(5, 4), seed in 0u64..1000) {
            let rows: Vec<_> = vs.iter().map(|v| ints(v)).collect();
            let s = Subspace::span(5, &rows).unwrap();
            // a different spanning set: shuffled rows plus integer combinations
            let mut alt = rows.clone();
            alt.rotate_left(if rows.is_empty() { 0 } else { seed as usize % rows.len() });
            if alt.len() >= 2 {
                let c = rat(seed as i64 % 5 + 1);
                let extra: Vec<_> = alt[0].iter().zip(&alt[1]).map(|(a, b)| a * &c + b).collect();
                alt[1] = extra;
                alt.push(rows[1].clone());
            }
            let t = Subspace::span(5, &alt).unwrap();
            prop_assert_eq!(s, t);
        }

        #[test]
        fn image_round_trip(vs in small_vecs(6, 4), p in signed_perm(6)) {
            let rows: Vec<_> = vs.iter().map(|v| ints(v)).collect();
            let s = Subspace::span(6, &rows).unwrap();
            let op: ExactMatrix = p.into();
            let inv = op.inverse().unwrap();
            let there = image(&op, &s).unwrap();
            prop_assert_eq!(there.dim(), s.dim());
            prop_assert_eq!(image(&inv, &there).unwrap(), s);
        }

        #[test]
        fn perm_path_agrees_with_dense(p in signed_perm(6), q in signed_perm(6), vs in small_vecs(6, 3)) {
            let a: ExactMatrix = p.into();
            let b: ExactMatrix = q.into();
            prop_assert_eq!(a.mul(&b).unwrap(), a.mul_dense(&b));
            prop_assert_eq!(a.kron(&b).unwrap(), a.to_dense().kron(&b.to_dense()).unwrap());
            prop_assert_eq!(a.transpose(), a.to_dense().transpose());
            let rows: Vec<_> = vs.iter().map(|v| ints(v)).collect();
            let s = Subspace::span(6, &rows).unwrap();
            prop_assert_eq!(image(&a, &s).unwrap(), image(&a.to_dense(), &s).unwrap());
        }

        #[test]
        fn mixed_product(p in signed_perm(2), q in signed_perm(2), r in signed_perm(2), s in signed_perm(2)) {
            let (a, b, c, d): (ExactMatrix, ExactMatrix, ExactMatrix, ExactMatrix) =
                (p.into(), q.into(), r.into(), s.into());
            let lhs = a.kron(&b).unwrap().mul(&c.kron(&d).unwrap()).unwrap();
            let rhs = a.mul_dense(&c).kron(&b.mul_dense(&d)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn spin_invariant_under_generator_order(
            p in signed_perm(6), q in signed_perm(6), v in prop::collection::vec(-3i64..=3, 6)
        ) {
            prop_assume!(v.iter().any(|&x| x != 0));
            let gens: Vec<ExactMatrix> = vec![p.into(), q.into()];
            let rev: Vec<ExactMatrix> = gens.iter().rev().cloned().collect();
            let v = ints(&v);
            prop_assert_eq!(spin_submodule(&gens, &v).unwrap(), spin_submodule(&rev, &v).unwrap());
        }
    }
}
