use serde::{Deserialize, Serialize};

use super::operators::{a_op, e_k, left_mult_matrix, m_op, right_mult_matrix};
use crate::division::Hypercomplex;
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, Subspace};
use crate::Rational;

/// Which irreducible module a generator list acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentTag {
    Single,
    Plus,
    Minus,
}

impl ComponentTag {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Single => "single",
            Self::Plus => "plus",
            Self::Minus => "minus",
        }
    }
}

/// Generators `e_0, …, e_{n−1}` acting on one spinor module.
#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub tag: ComponentTag,
    pub generators: Vec<ExactMatrix>,
}

/// Multiplication side used for the `Im ℍ` slots when `n ≡ 2 mod 8`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuaternionSide {
    #[default]
    Left,
    Right,
}

/// Bookkeeping recorded alongside a realization.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Conventions {
    pub multiplication: String,
    pub tensor_order: String,
    pub generator_order: String,
    pub quaternion_side: QuaternionSide,
}

impl Conventions {
    fn standard(side: QuaternionSide) -> Self {
        Self {
            multiplication: "cayley-dickson (a,b)(c,d) = (ac - conj(d) b, da + b conj(c))".into(),
            tensor_order: "base ⊗ (O^2)^{⊗k}".into(),
            generator_order: "base slots first, then octonion slot s = 1..k with e_0..e_7 each"
                .into(),
            quaternion_side: side,
        }
    }
}

/// The realization of Cℓ_n on its spinor space(s).
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordRealization {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub spinor_dim: usize,
    pub components: Vec<Component>,
    pub conventions: Conventions,
}

const BASE_FACTOR: [usize; 8] = [1, 2, 4, 4, 8, 8, 8, 8];

/// Real dimension of the spinor space: `factor(m) · 16^k`.
pub fn spinor_dim(n: usize) -> usize {
    BASE_FACTOR[n % 8] * 16usize.pow((n / 8) as u32)
}

/// Real dimension of the division algebra the spinor module is defined over.
pub fn base_field_dim(n: usize) -> usize {
    match n % 8 {
        0 | 6 | 7 => 1,
        1 | 5 => 2,
        _ => 4,
    }
}

fn unit(dim: usize, i: usize) -> Hypercomplex {
    Hypercomplex::basis(dim, i).expect("valid basis index")
}

/// `diag(L_q, −L_q)` on ℍ².
fn split_left(q: &Hypercomplex) -> Result<ExactMatrix> {
    let l = left_mult_matrix(q)?;
    let z = ExactMatrix::zeros(4, 4);
    ExactMatrix::block2(&l, &z, &z, &l.neg())
}

/// Base-slot generators per residue class; two lists for the ± pair.
fn base_generators(m: usize, side: QuaternionSide) -> Result<Vec<Vec<ExactMatrix>>> {
    let h = |i| unit(4, i);
    let o = |i| unit(8, i);
    let quaternion_m = || (0..4).map(|i| m_op(&h(i))).collect::<Result<Vec<_>>>();
    Ok(match m {
        0 => vec![vec![]],
        1 => vec![vec![left_mult_matrix(&unit(2, 1))?]],
        2 => {
            let mult = match side {
                QuaternionSide::Left => left_mult_matrix,
                QuaternionSide::Right => right_mult_matrix,
            };
            vec![vec![mult(&h(1))?, mult(&h(2))?]]
        }
        3 => vec![
            (1..4).map(|i| right_mult_matrix(&h(i))).collect::<Result<_>>()?,
            (1..4).map(|i| right_mult_matrix(&h(i).conj())).collect::<Result<_>>()?,
        ],
        4 => vec![quaternion_m()?],
        5 => {
            let mut g = vec![split_left(&h(1))?];
            g.extend(quaternion_m()?);
            vec![g]
        }
        6 => {
            let mut g = vec![split_left(&h(1))?, split_left(&h(2))?];
            g.extend(quaternion_m()?);
            vec![g]
        }
        7 => vec![
            (1..8).map(|i| right_mult_matrix(&o(i))).collect::<Result<_>>()?,
            (1..8).map(|i| right_mult_matrix(&o(i).conj())).collect::<Result<_>>()?,
        ],
        _ => unreachable!("residue mod 8"),
    })
}

impl CliffordRealization {
    pub fn build(n: usize) -> Result<Self> {
        Self::build_with(n, QuaternionSide::Left)
    }

    pub fn build_with(n: usize, side: QuaternionSide) -> Result<Self> {
        if n == 0 {
            return Err(Error::UnsupportedDimension {
                n,
                reason: "Cl_0 has no generators",
            });
        }
        let (k, m) = (n / 8, n % 8);
        let dim = spinor_dim(n);
        let limit = crate::linalg::max_dim();
        if dim > limit {
            return Err(Error::MaxDimExceeded {
                requested: dim,
                limit,
            });
        }
        let ek = e_k(k)?;
        let base_dim = BASE_FACTOR[m];
        let id_base = ExactMatrix::identity(base_dim);
        let mut tail = Vec::with_capacity(8 * k);
        for s in 1..=k {
            for i in 0..8 {
                tail.push(id_base.kron(&a_op(s, k, &unit(8, i))?)?);
            }
        }
        let bases = base_generators(m, side)?;
        let tags: &[ComponentTag] = if bases.len() == 2 {
            &[ComponentTag::Plus, ComponentTag::Minus]
        } else {
            &[ComponentTag::Single]
        };
        let components = bases
            .into_iter()
            .zip(tags)
            .map(|(base, &tag)| {
                let mut generators = base
                    .iter()
                    .map(|b| b.kron(&ek))
                    .collect::<Result<Vec<_>>>()?;
                generators.extend(tail.iter().cloned());
                Ok(Component { tag, generators })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            n,
            k,
            m,
            spinor_dim: dim,
            components,
            conventions: Conventions::standard(side),
        })
    }

    pub fn semisimple_pair(&self) -> bool {
        self.components.len() == 2
    }

    pub fn component(&self, tag: ComponentTag) -> Option<&Component> {
        self.components.iter().find(|c| c.tag == tag)
    }

    /// The component acted on by default: `single`, or `plus` for a pair.
    pub fn primary(&self) -> &Component {
        &self.components[0]
    }

    /// Image of a vector `x ∈ ℝⁿ` under the realization, per component.
    pub fn apply_vector(&self, x: &[Rational]) -> Result<Vec<ExactMatrix>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: x.len(),
            });
        }
        self.components
            .iter()
            .map(|c| {
                c.generators
                    .iter()
                    .zip(x)
                    .try_fold(ExactMatrix::zeros(self.spinor_dim, self.spinor_dim), |acc, (g, xi)| {
                        acc.add(&g.scale(xi))
                    })
            })
            .collect()
    }
}

/// Violations of `e_i e_j + e_j e_i = −2 δ_ij Id` within one component.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentRelations {
    pub tag: ComponentTag,
    pub pairs_checked: usize,
    pub violations: Vec<(usize, usize)>,
    pub all_signed_permutations: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationReport {
    pub n: usize,
    pub components: Vec<ComponentRelations>,
    pub pass: bool,
}

/// True iff `a b + b a = −2 δ Id`, computed exactly.
fn pair_ok(a: &ExactMatrix, b: &ExactMatrix, same: bool) -> Result<bool> {
    let ab = a.mul(b)?;
    if same {
        return Ok(ab.scalar_value() == Some(-Rational::from_integer(1.into())));
    }
    Ok(ab == b.mul(a)?.neg())
}

pub fn verify_relations(r: &CliffordRealization) -> Result<RelationReport> {
    let mut components = Vec::new();
    for c in &r.components {
        let g = &c.generators;
        let mut violations = Vec::new();
        let mut checked = 0;
        for i in 0..g.len() {
            for j in i..g.len() {
                checked += 1;
                if g[i].shape() != g[j].shape() || !g[i].is_square() || !pair_ok(&g[i], &g[j], i == j)? {
                    violations.push((i, j));
                }
            }
        }
        components.push(ComponentRelations {
            tag: c.tag,
            pairs_checked: checked,
            violations,
            all_signed_permutations: g.iter().all(|m| m.clone().specialize().is_specialized()),
        });
    }
    let pass = components
        .iter()
        .all(|c| c.violations.is_empty() && c.pairs_checked == r.n * (r.n + 1) / 2);
    Ok(RelationReport {
        n: r.n,
        components,
        pass,
    })
}

/// Ordered product `e_0 e_1 ⋯ e_{n−1}` per component.
pub fn volume_element(r: &CliffordRealization) -> Result<Vec<(ComponentTag, ExactMatrix)>> {
    r.components
        .iter()
        .map(|c| {
            let id = ExactMatrix::identity(r.spinor_dim);
            let v = c.generators.iter().try_fold(id, |acc, g| acc.mul(g))?;
            Ok((c.tag, v))
        })
        .collect()
}

/// Whether the volume element is a real multiple of the identity on the
/// whole spinor space (all components carrying the same scalar).
pub fn volume_is_scalar(vol: &[(ComponentTag, ExactMatrix)]) -> bool {
    let scalars: Vec<_> = vol.iter().map(|(_, m)| m.scalar_value()).collect();
    match scalars.first() {
        Some(Some(first)) => scalars.iter().all(|s| s.as_ref() == Some(first)),
        _ => false,
    }
}

/// Real-dimension bookkeeping: `Σ (dim 𝓡 / dim F)² · dim F` against `2ⁿ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionAccounting {
    pub n: usize,
    pub base_field_dim: usize,
    pub component_dims: Vec<usize>,
    pub algebra_dim: u128,
    pub expected: u128,
    pub ok: bool,
}

pub fn dimension_accounting(r: &CliffordRealization) -> DimensionAccounting {
    let f = base_field_dim(r.n) as u128;
    let component_dims: Vec<usize> = r.components.iter().map(|_| r.spinor_dim).collect();
    let algebra_dim = component_dims
        .iter()
        .map(|&d| {
            let over_f = d as u128 / f;
            over_f * over_f * f
        })
        .sum();
    let expected = 1u128.checked_shl(r.n as u32).unwrap_or(0);
    DimensionAccounting {
        n: r.n,
        base_field_dim: f as usize,
        component_dims,
        algebra_dim,
        expected,
        ok: algebra_dim == expected,
    }
}

/// Dimension of the span of all `2ⁿ` monomials `e_α`, each taken as the
/// tuple of its component matrices. Feasible for small `n` only.
pub fn monomial_span_dim(r: &CliffordRealization) -> Result<usize> {
    const LIMIT: usize = 8;
    if r.n > LIMIT {
        return Err(Error::UnsupportedDimension {
            n: r.n,
            reason: "monomial enumeration is limited to n <= 8",
        });
    }
    let d = r.spinor_dim;
    let width = r.components.len() * d * d;
    let mut vectors = Vec::with_capacity(1 << r.n);
    for mask in 0usize..(1 << r.n) {
        let mut v = Vec::with_capacity(width);
        for c in &r.components {
            let prod = (0..r.n)
                .filter(|i| mask >> i & 1 == 1)
                .try_fold(ExactMatrix::identity(d), |acc, i| acc.mul(&c.generators[i]))?;
            for i in 0..d {
                v.extend(prod.row(i));
            }
        }
        vectors.push(v);
    }
    Ok(Subspace::span(width, &vectors)?.dim())
}

/// Sign convention for Clifford conjugation of a monomial `e_α`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConjugationConvention {
    /// `(−1)^{k(k+1)/2}` with `k` the number of indices.
    #[default]
    Cardinality,
    /// `(−1)^{s(s+1)/2}` with `s` the sum of the indices.
    IndexSum,
}

/// Sign `c` with `ē_α = c · e_α`. Indices in `alpha` are taken as a set.
pub fn clifford_conj_sign(alpha: &[usize], convention: ConjugationConvention) -> i8 {
    let mut set = alpha.to_vec();
    set.sort_unstable();
    set.dedup();
    let k: usize = match convention {
        ConjugationConvention::Cardinality => set.len(),
        ConjugationConvention::IndexSum => set.iter().sum(),
    };
    if (k * (k + 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn spinor_dims() {
        assert_eq!(spinor_dim(4), 8);
        assert_eq!(spinor_dim(8), 16);
        assert_eq!(spinor_dim(13), 128);
        assert_eq!(spinor_dim(16), 256);
        assert_eq!(spinor_dim(0), 1);
    }

    #[test]
    fn build_rejects_zero() {
        assert!(matches!(
            CliffordRealization::build(0),
            Err(Error::UnsupportedDimension { n: 0, .. })
        ));
    }

    #[test]
    fn build_shapes() {
        for n in 1..=13 {
            let r = CliffordRealization::build(n).unwrap();
            assert_eq!(r.semisimple_pair(), n % 8 == 3 || n % 8 == 7);
            for c in &r.components {
                assert_eq!(c.generators.len(), n);
                assert!(c.generators.iter().all(|g| g.shape() == (r.spinor_dim, r.spinor_dim)));
                assert!(c.generators.iter().all(ExactMatrix::is_specialized));
            }
            assert!(verify_relations(&r).unwrap().pass, "n = {n}");
        }
        assert_eq!(CliffordRealization::build(13).unwrap().spinor_dim, 128);
    }

    #[test]
    fn n3_is_right_multiplication_pair() {
        let r = CliffordRealization::build(3).unwrap();
        for (i, g) in r.components[0].generators.iter().enumerate() {
            let q = Hypercomplex::basis(4, i + 1).unwrap();
            assert_eq!(*g, right_mult_matrix(&q).unwrap());
            assert_eq!(r.components[1].generators[i], right_mult_matrix(&q.conj()).unwrap());
        }
    }

    #[test]
    fn right_side_quaternion_variant_also_satisfies_relations() {
        let r = CliffordRealization::build_with(10, QuaternionSide::Right).unwrap();
        assert!(verify_relations(&r).unwrap().pass);
        assert_eq!(r.conventions.quaternion_side, QuaternionSide::Right);
    }

    #[test]
    fn build_is_deterministic() {
        assert_eq!(CliffordRealization::build(9).unwrap(), CliffordRealization::build(9).unwrap());
    }

    #[test]
    fn fault_injection_names_pair() {
        let mut r = CliffordRealization::build(4).unwrap();
        let g = r.components[0].generators[2].to_dense();
        let (i, j, v) = g.nonzero_entries()[0].clone();
        let mut entries: Vec<_> = g.nonzero_entries();
        entries[0] = (i, j, -v);
        r.components[0].generators[2] = ExactMatrix::from_entries(8, 8, entries).unwrap();
        let report = verify_relations(&r).unwrap();
        assert!(!report.pass);
        assert!(report.components[0].violations.contains(&(2, 2)));
        assert!(report.components[0].violations.iter().all(|&(a, b)| a == 2 || b == 2));
    }

    #[test]
    fn volume_element_dichotomy() {
        for n in 1..=13 {
            let r = CliffordRealization::build(n).unwrap();
            let vol = volume_element(&r).unwrap();
            if n % 4 == 3 {
                assert!(!volume_is_scalar(&vol), "n = {n}");
                assert_eq!(vol[0].1.scalar_value(), Some(rat(1)), "n = {n}");
                assert_eq!(vol[1].1.scalar_value(), Some(rat(-1)), "n = {n}");
            } else {
                assert!(vol[0].1.scalar_value().is_none(), "n = {n}");
            }
        }
        let r = CliffordRealization::build(8).unwrap();
        let v = &volume_element(&r).unwrap()[0].1;
        assert!(v.mul(v).unwrap().scalar_value().is_some());
    }

    #[test]
    fn monomials_span_full_algebra() {
        for n in 1..=7 {
            let r = CliffordRealization::build(n).unwrap();
            assert_eq!(monomial_span_dim(&r).unwrap(), 1 << n, "n = {n}");
            assert!(dimension_accounting(&r).ok);
        }
    }

    #[test]
    fn conjugation_signs() {
        use ConjugationConvention::*;
        assert_eq!(clifford_conj_sign(&[], Cardinality), 1);
        assert_eq!(clifford_conj_sign(&[], IndexSum), 1);
        assert_eq!(clifford_conj_sign(&[0], Cardinality), -1);
        assert_eq!(clifford_conj_sign(&[1, 2], Cardinality), -1);
        assert_eq!(clifford_conj_sign(&[1, 2], IndexSum), 1);
    }

    #[test]
    fn vector_squares_to_minus_norm() {
        let r = CliffordRealization::build(6).unwrap();
        let x: Vec<_> = [1, -2, 3, 0, 1, 5].iter().map(|&v| rat(v)).collect();
        let norm: Rational = x.iter().map(|v| v * v).sum();
        for v in r.apply_vector(&x).unwrap() {
            assert_eq!(v.mul(&v).unwrap().scalar_value(), Some(-norm.clone()));
        }
    }
}
