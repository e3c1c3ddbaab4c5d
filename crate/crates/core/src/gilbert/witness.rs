use serde::{Deserialize, Serialize};

use crate::clifford::{spinor_dim, CliffordRealization, Component, ComponentTag};
use crate::error::{Error, Result};
use crate::linalg::{direct_sum_check, image, ExactMatrix, MatrixJson, Subspace};
use crate::Rational;

/// A candidate `(η, ℌ₀)` for one spinor component.
///
/// `η` is always one of the generators `e_{eta_index}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GilbertWitness {
    pub n: usize,
    pub eta_index: usize,
    pub eta_matrix: ExactMatrix,
    pub h0: Subspace,
    pub component_tag: ComponentTag,
}

impl GilbertWitness {
    /// Witness with `η = e_{eta_index}` taken from the given component of `r`.
    pub fn new(
        r: &CliffordRealization,
        component_tag: ComponentTag,
        eta_index: usize,
        h0: Subspace,
    ) -> Result<Self> {
        let c = r
            .component(component_tag)
            .ok_or_else(|| Error::InvalidArgument(format!("no {} component", component_tag.as_str())))?;
        let eta_matrix = c
            .generators
            .get(eta_index)
            .ok_or(Error::IndexOutOfRange {
                index: eta_index,
                max: r.n - 1,
            })?
            .clone();
        if h0.ambient_dim() != r.spinor_dim {
            return Err(Error::DimensionMismatch {
                left: r.spinor_dim,
                right: h0.ambient_dim(),
            });
        }
        Ok(Self {
            n: r.n,
            eta_index,
            eta_matrix,
            h0,
            component_tag,
        })
    }

    /// `η` as a unit vector of ℝⁿ.
    pub fn eta_vector(&self) -> Vec<i64> {
        let mut v = vec![0; self.n];
        v[self.eta_index] = 1;
        v
    }
}

/// Coordinate eigenspaces of `E_k = E^{⊗k}` on `(𝕆²)^{⊗k}`, for eigenvalues `+1` and `−1`.
fn grading_blocks(k: usize) -> Result<(Subspace, Subspace)> {
    let dim = 16usize.pow(k as u32);
    let odd = |mut x: usize| {
        let mut parity = false;
        for _ in 0..k {
            parity ^= x % 16 >= 8;
            x /= 16;
        }
        parity
    };
    let even_coords: Vec<usize> = (0..dim).filter(|&x| !odd(x)).collect();
    let odd_coords: Vec<usize> = (0..dim).filter(|&x| odd(x)).collect();
    Ok((Subspace::coordinate(dim, &even_coords)?, Subspace::coordinate(dim, &odd_coords)?))
}

fn unit(dim: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::from_integer(0.into()); dim];
    v[i] = Rational::from_integer(1.into());
    v
}

/// `span{(e_i, e_i)}` inside `A ⊕ A` with `dim A = half`.
fn diagonal(half: usize) -> Result<Subspace> {
    let vs: Vec<_> = (0..half)
        .map(|i| {
            let mut v = unit(2 * half, i);
            v[i + half] = Rational::from_integer(1.into());
            v
        })
        .collect();
    Subspace::span(2 * half, &vs)
}

/// How the `n = 8k + 3` and `n = 8k + 5` subspaces extend past the first octonion slot.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LiftGrading {
    /// `a ⊗ ker(E_k − Id) ⊕ b ⊗ ker(E_k + Id)`: split by the grading of all `k` slots.
    #[default]
    Total,
    /// `(a ⊗ top(𝕆²) ⊕ b ⊗ bottom(𝕆²)) ⊗ (𝕆²)^{⊗(k−1)}`: split by the first slot only.
    /// Agrees with `Total` for `k = 1` and fails the slot-`k` conditions for `k ≥ 2`.
    FirstSlot,
}

fn graded_lift(a: &Subspace, b: &Subspace, k: usize, grading: LiftGrading) -> Result<Subspace> {
    match grading {
        LiftGrading::Total => {
            let (even, odd) = grading_blocks(k)?;
            a.tensor(&even).sum(&b.tensor(&odd))
        }
        LiftGrading::FirstSlot => {
            let (top, bottom) = grading_blocks(1)?;
            let sum = a.tensor(&top).sum(&b.tensor(&bottom))?;
            Ok(sum.tensor(&Subspace::full(16usize.pow((k - 1) as u32))))
        }
    }
}

/// The `(η index, ℌ₀)` construction for `n`, shared by all components.
fn construction(n: usize, grading: LiftGrading) -> Result<(usize, Subspace)> {
    let (k, m) = (n / 8, n % 8);
    let full = |j: usize| Subspace::full(16usize.pow(j as u32));
    Ok(match m {
        0 => (0, diagonal(8)?.tensor(&full(k - 1))),
        1 => (0, Subspace::coordinate(2, &[0])?.tensor(&full(k))),
        2 => (0, Subspace::coordinate(4, &[0, 2])?.tensor(&full(k))),
        3 => {
            let c_i = Subspace::coordinate(4, &[0, 1])?;
            if k == 0 {
                (1, c_i)
            } else {
                (1, graded_lift(&c_i, &Subspace::coordinate(4, &[2, 3])?, k, grading)?)
            }
        }
        4 => (0, diagonal(4)?.tensor(&full(k))),
        5 => {
            let first = Subspace::coordinate(8, &[0, 1, 2, 3])?;
            if k == 0 {
                (1, first)
            } else {
                (1, graded_lift(&first, &Subspace::coordinate(8, &[4, 5, 6, 7])?, k, grading)?)
            }
        }
        _ => unreachable!("obstructed residues are rejected earlier"),
    })
}

/// The standard witnesses for `n`, one per spinor component.
pub fn standard_witness(n: usize) -> Result<Vec<GilbertWitness>> {
    if n < 2 {
        return Err(Error::UnsupportedDimension {
            n,
            reason: "no witness below n = 2",
        });
    }
    if matches!(n % 8, 6 | 7) {
        return Err(Error::ObstructedDimension {
            n,
            spinor_dim: spinor_dim(n),
            required: 2 * spinor_dim(n - 2),
        });
    }
    let r = CliffordRealization::build(n)?;
    standard_witness_for(&r)
}

/// Same as [`standard_witness`], reusing an already built realization.
pub fn standard_witness_for(r: &CliffordRealization) -> Result<Vec<GilbertWitness>> {
    standard_witness_with(r, LiftGrading::default())
}

/// Standard witnesses with an explicit choice of lift for `n = 8k + 3, 8k + 5`.
pub fn standard_witness_with(r: &CliffordRealization, grading: LiftGrading) -> Result<Vec<GilbertWitness>> {
    let n = r.n;
    if n < 2 {
        return Err(Error::UnsupportedDimension {
            n,
            reason: "no witness below n = 2",
        });
    }
    if matches!(n % 8, 6 | 7) {
        return Err(Error::ObstructedDimension {
            n,
            spinor_dim: spinor_dim(n),
            required: 2 * spinor_dim(n - 2),
        });
    }
    let (eta_index, h0) = construction(n, grading)?;
    r.components
        .iter()
        .map(|c| GilbertWitness::new(r, c.tag, eta_index, h0.clone()))
        .collect()
}

/// Outcome of the two invariance conditions for one `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JCondition {
    pub j: usize,
    /// `η e_0 e_j ℌ₀ = ℌ₀`
    pub forward_ok: bool,
    /// `e_0 e_j η ℌ₀ = ℌ₀`
    pub backward_ok: bool,
    /// `e_j ℌ₀ = ℌ₀`, checked only when `η = e_0`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simplified_ok: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub n: usize,
    pub component: ComponentTag,
    pub verdict: bool,
    pub eta_squares_to_minus_one: bool,
    pub h0_dim: usize,
    pub spinor_dim: usize,
    pub decomposition_ok: bool,
    pub conditions: Vec<JCondition>,
    /// When `η = e_0`: whether the simplified criterion agrees with the full one for every `j`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simplified_agrees: Option<bool>,
    pub eta: Vec<i64>,
    pub h0_basis: MatrixJson,
}

impl ConditionReport {
    /// Indices `j` where either condition fails.
    pub fn failing_j(&self) -> Vec<usize> {
        self.conditions
            .iter()
            .filter(|c| !(c.forward_ok && c.backward_ok))
            .map(|c| c.j)
            .collect()
    }
}

fn generators<'a>(r: &'a CliffordRealization, w: &GilbertWitness) -> Result<&'a Component> {
    if r.n != w.n || w.h0.ambient_dim() != r.spinor_dim {
        return Err(Error::ShapeMismatch {
            op: "check_gilbert",
            lhs: (r.n, r.spinor_dim),
            rhs: (w.n, w.h0.ambient_dim()),
        });
    }
    r.component(w.component_tag).ok_or_else(|| {
        Error::InvalidArgument(format!("no {} component", w.component_tag.as_str()))
    })
}

/// Exact check of `𝓡_n = ℌ₀ ⊕ ηℌ₀` and `ηe_0e_jℌ₀ = e_0e_jηℌ₀ = ℌ₀` for `j = 1..n−1`.
pub fn check_gilbert(r: &CliffordRealization, w: &GilbertWitness) -> Result<ConditionReport> {
    let c = generators(r, w)?;
    let g = &c.generators;
    let eta = &w.eta_matrix;
    let minus_one = Some(-Rational::from_integer(1.into()));
    let eta_sq_ok = eta.mul(eta)?.scalar_value() == minus_one;
    let h0 = &w.h0;
    let decomposition_ok = direct_sum_check(h0, &image(eta, h0)?)?;
    let eta_is_e0 = *eta == g[0];
    let mut conditions = Vec::with_capacity(r.n.saturating_sub(1));
    for j in 1..r.n {
        let e0ej = g[0].mul(&g[j])?;
        let forward_ok = image(&eta.mul(&e0ej)?, h0)? == *h0;
        let backward_ok = image(&e0ej.mul(eta)?, h0)? == *h0;
        let simplified_ok = if eta_is_e0 {
            Some(image(&g[j], h0)? == *h0)
        } else {
            None
        };
        conditions.push(JCondition {
            j,
            forward_ok,
            backward_ok,
            simplified_ok,
        });
    }
    let simplified_agrees = eta_is_e0.then(|| {
        conditions
            .iter()
            .all(|c| c.simplified_ok == Some(c.forward_ok && c.backward_ok))
    });
    let verdict = eta_sq_ok
        && decomposition_ok
        && conditions.iter().all(|c| c.forward_ok && c.backward_ok)
        && simplified_agrees.unwrap_or(true);
    Ok(ConditionReport {
        n: r.n,
        component: w.component_tag,
        verdict,
        eta_squares_to_minus_one: eta_sq_ok,
        h0_dim: h0.dim(),
        spinor_dim: r.spinor_dim,
        decomposition_ok,
        conditions,
        simplified_agrees,
        eta: w.eta_vector(),
        h0_basis: MatrixJson::from(&h0.basis_matrix()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_witnesses_pass_for_small_n() {
        for n in [2, 3, 4, 5, 8, 9, 10, 11, 12, 13] {
            let r = CliffordRealization::build(n).unwrap();
            let ws = standard_witness_for(&r).unwrap();
            assert_eq!(ws.len(), if n % 8 == 3 { 2 } else { 1 });
            for w in &ws {
                assert_eq!(w.h0.dim() * 2, r.spinor_dim);
                let rep = check_gilbert(&r, w).unwrap();
                assert!(rep.verdict, "n = {n} {:?}: {:?}", w.component_tag, rep.failing_j());
            }
        }
    }

    #[test]
    fn lifts_agree_for_one_octonion_slot() {
        for n in [11, 13] {
            let r = CliffordRealization::build(n).unwrap();
            let total = standard_witness_with(&r, LiftGrading::Total).unwrap();
            let first = standard_witness_with(&r, LiftGrading::FirstSlot).unwrap();
            assert_eq!(total, first);
        }
    }

    #[test]
    fn grading_blocks_split_by_total_parity() {
        let (even, odd) = grading_blocks(1).unwrap();
        assert_eq!(even, Subspace::coordinate(16, &(0..8).collect::<Vec<_>>()).unwrap());
        assert_eq!(odd, Subspace::coordinate(16, &(8..16).collect::<Vec<_>>()).unwrap());
        let (even, odd) = grading_blocks(2).unwrap();
        assert_eq!((even.dim(), odd.dim()), (128, 128));
        // bottom ⊗ bottom has even total parity
        assert!(even.contains(&unit(256, 8 * 16 + 9)).unwrap());
        assert!(odd.contains(&unit(256, 9)).unwrap());
    }

    #[test]
    fn n8_uses_octonion_diagonal() {
        let ws = standard_witness(8).unwrap();
        assert_eq!(ws[0].eta_index, 0);
        assert_eq!(ws[0].h0, diagonal(8).unwrap());
        assert_eq!(ws[0].h0.dim(), 8);
    }

    #[test]
    fn n3_uses_complex_line_and_j() {
        let ws = standard_witness(3).unwrap();
        assert_eq!(ws[0].eta_index, 1);
        assert_eq!(ws[0].component_tag, ComponentTag::Plus);
        assert_eq!(ws[0].h0, Subspace::coordinate(4, &[0, 1]).unwrap());
    }

    #[test]
    fn block_subspace_fails_first_condition_at_n8() {
        let r = CliffordRealization::build(8).unwrap();
        let top = Subspace::coordinate(16, &(0..8).collect::<Vec<_>>()).unwrap();
        let w = GilbertWitness::new(&r, ComponentTag::Single, 0, top).unwrap();
        let rep = check_gilbert(&r, &w).unwrap();
        assert!(rep.decomposition_ok);
        assert!(!rep.verdict);
        assert!(!rep.conditions[0].forward_ok);
        assert_eq!(rep.simplified_agrees, Some(true));
    }

    #[test]
    fn obstructed_and_unsupported() {
        assert!(matches!(
            standard_witness(14),
            Err(Error::ObstructedDimension { n: 14, spinor_dim: 128, required: 256 })
        ));
        assert!(matches!(standard_witness(7), Err(Error::ObstructedDimension { .. })));
        assert!(matches!(standard_witness(1), Err(Error::UnsupportedDimension { .. })));
    }

    #[test]
    fn report_json_field_names() {
        let r = CliffordRealization::build(4).unwrap();
        let w = &standard_witness_for(&r).unwrap()[0];
        let v = serde_json::to_value(check_gilbert(&r, w).unwrap()).unwrap();
        for key in ["n", "verdict", "decomposition_ok", "conditions", "eta", "h0_basis"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["conditions"][0]["j"], 1);
        assert!(v["conditions"][0].get("forward_ok").is_some());
    }
}
