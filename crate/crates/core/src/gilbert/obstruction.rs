use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::clifford::{spinor_dim, CliffordRealization, Component, ComponentTag};
use crate::error::{Error, Result};
use crate::linalg::{spin_dimension, ExactMatrix, SignedPerm};

/// `g_j = e_0 e_j` for `j = 1..n−1` on one component.
pub fn even_generators_of(c: &Component) -> Result<Vec<ExactMatrix>> {
    let g = &c.generators;
    g.iter().skip(1).map(|gj| g[0].mul(gj)).collect()
}

/// `g_j = e_0 e_j` on the primary component (`single`, or `plus` for a pair).
pub fn even_generators(r: &CliffordRealization) -> Result<Vec<ExactMatrix>> {
    even_generators_of(r.primary())
}

/// The necessary condition `dim 𝓡_n ≥ 2 dim 𝓡_{n−2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub n: usize,
    pub spinor_dim: usize,
    pub required: usize,
    pub inequality_holds: bool,
    pub obstructed: bool,
}

pub fn dim_obstruction(n: usize) -> Result<ObstructionReport> {
    if n < 3 {
        return Err(Error::UnsupportedDimension {
            n,
            reason: "the inequality compares with n - 2 >= 1",
        });
    }
    let d = spinor_dim(n);
    let required = 2 * spinor_dim(n - 2);
    Ok(ObstructionReport {
        n,
        spinor_dim: d,
        required,
        inequality_holds: d >= required,
        obstructed: d < required,
    })
}

/// Spin dimensions for one component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSpins {
    pub tag: ComponentTag,
    pub basis_dims: Vec<usize>,
    pub random_dims: Vec<usize>,
    pub min_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvidenceReport {
    pub n: usize,
    pub seed: u64,
    pub trials: usize,
    pub spinor_dim: usize,
    pub half_dim: usize,
    /// Number of `g_1 g_j` generators used for spinning.
    pub generator_count: usize,
    pub components: Vec<ComponentSpins>,
    pub consistent_with_obstruction: bool,
    pub evidence_kind: String,
}

/// Random nonzero vector with integer coordinates in `[−9, 9]`.
pub fn random_small_vector(rng: &mut impl Rng, dim: usize) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..dim).map(|_| rng.gen_range(-9..=9)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

/// Spins basis vectors and `trials` random vectors under `{g_1 g_j : j = 2..n−1}`.
///
/// Any `ℌ₀` of a witness would be invariant under these operators, so every
/// spin exceeding half the spinor dimension is evidence against a witness.
/// Random sampling makes this evidence probabilistic, not a proof.
pub fn spinning_evidence(n: usize, trials: usize, seed: u64) -> Result<EvidenceReport> {
    if !matches!(n % 8, 6 | 7) {
        return Err(Error::WrongResidueClass(n));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let r = CliffordRealization::build(n)?;
    let d = r.spinor_dim;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random: Vec<Vec<i64>> = (0..trials).map(|_| random_small_vector(&mut rng, d)).collect();
    let mut components = Vec::new();
    let mut generator_count = 0;
    for c in &r.components {
        let g = even_generators_of(c)?;
        let gens = g[1..]
            .iter()
            .map(|gj| g[0].mul(gj))
            .collect::<Result<Vec<_>>>()?;
        generator_count = gens.len();
        let perms = gens
            .iter()
            .map(|g| {
                g.clone()
                    .specialize()
                    .as_signed_perm()
                    .cloned()
                    .ok_or_else(|| Error::InvalidArgument("spinning generator is not a signed permutation".into()))
            })
            .collect::<Result<Vec<SignedPerm>>>()?;
        let mut basis_dims = Vec::with_capacity(d);
        for i in 0..d {
            let mut v = vec![0; d];
            v[i] = 1;
            basis_dims.push(spin_dimension(&perms, &v)?);
        }
        let random_dims = random
            .iter()
            .map(|v| spin_dimension(&perms, v))
            .collect::<Result<Vec<_>>>()?;
        let min_dim = basis_dims.iter().chain(&random_dims).copied().min().unwrap_or(0);
        components.push(ComponentSpins {
            tag: c.tag,
            basis_dims,
            random_dims,
            min_dim,
        });
    }
    let half_dim = d / 2;
    Ok(EvidenceReport {
        n,
        seed,
        trials,
        spinor_dim: d,
        half_dim,
        generator_count,
        consistent_with_obstruction: components.iter().all(|c| c.min_dim > half_dim),
        components,
        evidence_kind: "probabilistic".into(),
    })
}

/// Relation between two operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairRelation {
    Anticommute,
    Commute,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairEntry {
    pub i: usize,
    pub j: usize,
    pub relation: PairRelation,
}

/// Comparison of `h_j = e_1 e_0 e_j` against the Cℓ_{1,n−2} pattern
/// `h_1² = +Id`, `h_j² = −Id (j ≥ 2)`, pairwise anticommuting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureReport {
    pub n: usize,
    pub expected_squares: Vec<i64>,
    /// `Some(c)` when `h_j² = c·Id`.
    pub observed_squares: Vec<Option<i64>>,
    pub pairs: Vec<PairEntry>,
    pub squares_match: bool,
    pub all_anticommute: bool,
    pub pass: bool,
}

pub fn mixed_signature_check(r: &CliffordRealization) -> Result<SignatureReport> {
    use num_traits::ToPrimitive;
    let n = r.n;
    if n < 3 {
        return Err(Error::UnsupportedDimension {
            n,
            reason: "mixed-signature check needs n >= 3",
        });
    }
    let g = &r.primary().generators;
    let e1e0 = g[1].mul(&g[0])?;
    let h = g[1..]
        .iter()
        .map(|gj| e1e0.mul(gj))
        .collect::<Result<Vec<_>>>()?;
    let expected_squares: Vec<i64> = (1..n).map(|j| if j == 1 { 1 } else { -1 }).collect();
    let observed_squares = h
        .iter()
        .map(|hj| Ok(hj.mul(hj)?.scalar_value().and_then(|c| c.to_integer().to_i64())))
        .collect::<Result<Vec<_>>>()?;
    let mut pairs = Vec::new();
    for a in 0..h.len() {
        for b in a + 1..h.len() {
            let ab = h[a].mul(&h[b])?;
            let ba = h[b].mul(&h[a])?;
            let relation = if ab == ba.neg() {
                PairRelation::Anticommute
            } else if ab == ba {
                PairRelation::Commute
            } else {
                PairRelation::Neither
            };
            pairs.push(PairEntry {
                i: a + 1,
                j: b + 1,
                relation,
            });
        }
    }
    let squares_match = observed_squares
        .iter()
        .zip(&expected_squares)
        .all(|(o, e)| *o == Some(*e));
    let all_anticommute = pairs.iter().all(|p| p.relation == PairRelation::Anticommute);
    Ok(SignatureReport {
        n,
        expected_squares,
        observed_squares,
        pairs,
        squares_match,
        all_anticommute,
        pass: squares_match && all_anticommute,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::spin_submodule;
    use crate::Rational;

    fn to_rational(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(x.into())).collect()
    }

    #[test]
    fn even_generators_square_and_anticommute() {
        for n in [2, 8, 11] {
            let r = CliffordRealization::build(n).unwrap();
            let g = even_generators(&r).unwrap();
            assert_eq!(g.len(), n - 1);
            for (i, a) in g.iter().enumerate() {
                assert!(a.is_specialized());
                assert_eq!(a.mul(a).unwrap().scalar_value(), Some(Rational::from_integer((-1).into())));
                for b in &g[i + 1..] {
                    assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap().neg());
                }
            }
        }
    }

    #[test]
    fn obstruction_pattern() {
        for n in 3..=16 {
            assert_eq!(dim_obstruction(n).unwrap().obstructed, matches!(n % 8, 6 | 7), "n = {n}");
        }
        let r = dim_obstruction(14).unwrap();
        assert_eq!((r.spinor_dim, r.required), (128, 256));
        let r = dim_obstruction(8).unwrap();
        assert_eq!((r.spinor_dim, r.required), (16, 16));
        assert!(dim_obstruction(2).is_err());
    }

    #[test]
    fn spinning_small_cases() {
        for n in [6, 7] {
            let rep = spinning_evidence(n, 5, 7).unwrap();
            assert!(rep.consistent_with_obstruction);
            assert!(rep.components.iter().all(|c| c.min_dim == 8));
        }
        assert_eq!(spinning_evidence(8, 5, 0), Err(Error::WrongResidueClass(8)));
        assert!(spinning_evidence(6, 0, 0).is_err());
    }

    #[test]
    fn spin_dimension_is_scale_invariant() {
        let r = CliffordRealization::build(6).unwrap();
        let g = even_generators(&r).unwrap();
        let gens: Vec<_> = g[1..].iter().map(|gj| g[0].mul(gj).unwrap()).collect();
        let v = to_rational(&[1, 0, 0, 2, 0, 0, 0, 0]);
        let w: Vec<_> = v.iter().map(|x| x * Rational::new((-3).into(), 7.into())).collect();
        assert_eq!(spin_submodule(&gens, &v).unwrap(), spin_submodule(&gens, &w).unwrap());
    }

    #[test]
    fn mixed_signature_observed_pattern() {
        // h_1 = e_1 e_0 e_1 = e_0, so h_1² = −Id and h_1 commutes with every other h_j.
        for n in [3, 5, 8] {
            let r = CliffordRealization::build(n).unwrap();
            let rep = mixed_signature_check(&r).unwrap();
            assert_eq!(rep.observed_squares[0], Some(-1));
            assert!(rep.observed_squares[1..].iter().all(|s| *s == Some(1)));
            for p in &rep.pairs {
                let expect = if p.i == 1 { PairRelation::Commute } else { PairRelation::Anticommute };
                assert_eq!(p.relation, expect, "n = {n} ({}, {})", p.i, p.j);
            }
            assert!(!rep.pass);
        }
    }
}
