//! Witnesses `(η, ℌ₀)` for the boundary decomposition problem, their exact
//! condition checks, and the dimension obstruction for `n ≡ 6, 7 mod 8`.

mod obstruction;
mod witness;

pub use obstruction::{
    dim_obstruction, even_generators, even_generators_of, mixed_signature_check,
    random_small_vector, spinning_evidence, ComponentSpins, EvidenceReport, ObstructionReport,
    PairEntry, PairRelation, SignatureReport,
};
pub use witness::{
    check_gilbert, standard_witness, standard_witness_for, standard_witness_with, ConditionReport,
    GilbertWitness, JCondition, LiftGrading,
};
