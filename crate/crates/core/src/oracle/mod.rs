//! Dense complex-matrix ground truth for small codes.

pub mod composite;
pub mod dense;
pub mod group;
pub mod montecarlo;
pub mod sampling;
pub mod traces;

pub use composite::{composite_weight_sums, entangled_state, pue_composite_exact};
pub use dense::{
    oracle_cap, partial_trace, pauli_matrix, single_qubit, DenseOperator, PauliAction, Subsystem, C64,
    COMPOSITE_CAP, DEFAULT_ORACLE_CAP,
};
pub use group::{close_group, product_phase, projector, stabilizer_projector, SignedPauli, SignedPauliGroup};
pub use montecarlo::{pue_nonstab_mc, pue_nonstab_mc_grid, McEstimate};
pub use sampling::{
    deviation_scaling, range_basis, scaling_replicates, symmetric_target, uniform_state, verify_lemma_int, verify_lemma_vvvv, Lemma,
    LemmaReport, ScalingPoint, StateVector,
};
pub use traces::{classify_error, classify_error_dense, enumerators_bruteforce, trace_sums, ErrorClass, TraceSums};
