//! Explicit realizations of Cℓ_n by signed-permutation matrices built from
//! ℂ, ℍ and 𝕆 multiplication operators.
//!
//! For `n = 8k + m` the spinor space is `B ⊗ (𝕆²)^{⊗k}` with `B` one of
//! ℝ, ℂ, ℍ, ℍ^±, ℍ², ℍ², ℍ², 𝕆^± for `m = 0..7`. Base-slot generators are
//! tensored with `E_k`; the octonion slots contribute `Id_B ⊗ A_{e_i}^s`.

mod operators;
mod realization;

pub use operators::{a_op, e_k, e_op, grading, left_mult_matrix, m_op, right_mult_matrix};
pub use realization::{
    base_field_dim, clifford_conj_sign, dimension_accounting, monomial_span_dim, spinor_dim,
    verify_relations, volume_element, volume_is_scalar, CliffordRealization, Component,
    ComponentRelations, ComponentTag, ConjugationConvention, Conventions, DimensionAccounting,
    QuaternionSide, RelationReport,
};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::linalg::ExactMatrix;

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum GeneratorsJson {
    Pairs(Vec<(ExactMatrix, ExactMatrix)>),
    Single(Vec<ExactMatrix>),
}

#[derive(Serialize, Deserialize)]
struct RealizationJson {
    n: usize,
    k: usize,
    m: usize,
    spinor_dim: usize,
    semisimple_pair: bool,
    generators: GeneratorsJson,
    conventions: Conventions,
}

impl Serialize for CliffordRealization {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let generators = if self.semisimple_pair() {
            GeneratorsJson::Pairs(
                self.components[0]
                    .generators
                    .iter()
                    .cloned()
                    .zip(self.components[1].generators.iter().cloned())
                    .collect(),
            )
        } else {
            GeneratorsJson::Single(self.components[0].generators.clone())
        };
        RealizationJson {
            n: self.n,
            k: self.k,
            m: self.m,
            spinor_dim: self.spinor_dim,
            semisimple_pair: self.semisimple_pair(),
            generators,
            conventions: self.conventions.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CliffordRealization {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = RealizationJson::deserialize(d)?;
        let components = match j.generators {
            GeneratorsJson::Single(g) => vec![Component {
                tag: ComponentTag::Single,
                generators: g,
            }],
            GeneratorsJson::Pairs(p) => {
                let (plus, minus) = p.into_iter().unzip();
                vec![
                    Component {
                        tag: ComponentTag::Plus,
                        generators: plus,
                    },
                    Component {
                        tag: ComponentTag::Minus,
                        generators: minus,
                    },
                ]
            }
        };
        if j.semisimple_pair != (components.len() == 2) {
            return Err(serde::de::Error::custom(
                "semisimple_pair flag disagrees with the generator layout",
            ));
        }
        Ok(Self {
            n: j.n,
            k: j.k,
            m: j.m,
            spinor_dim: j.spinor_dim,
            components,
            conventions: j.conventions,
        })
    }
}
