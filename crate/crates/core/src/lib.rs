//! Generalized Hilbert matrices `Γ_μ` and Hausdorff matrices built from finite
//! positive measures on `(0, 1)`, their action on Hardy spaces, and numerical
//! checks of their structure, boundedness and norms.

pub mod analysis;
pub mod error;
pub mod hardy;
pub mod linalg;
pub mod matrices;
pub mod measure;
pub mod operators;
pub mod quadrature;
pub mod special;

pub use analysis::{
    compactness_probe, complete_continuity_probe, default_a_schedule, finite_section_norm,
    lambda_lower_bound_check, norm_probe_fa, proof_lower_bounds, psi, psi_integral,
    t_norm_bound_check, LambdaBoundCheck, NormEstimate, NormMethod, ProbeReport, ProofBounds,
    PsiValue, SegmentIntegral, TNormBound,
};
pub use error::{Endpoint, Error, ErrorClass, Result};
pub use hardy::{
    evaluate_on_grid, fa_coefficients, fejer_riesz_check, growth_estimate_check, h1_kernel_norm,
    hardy_inequality_check, hp_norm, hp_norm_boundary, hp_norm_moduli, kernel_kw, test_function_fa,
    BoundaryFunction, BoundaryGrid, CoefficientVector, InequalityCheck, KernelNorm,
};
pub use linalg::{largest_singular_value, SingularValue};
pub use matrices::{
    composition_matrix, gamma_matrix, hankel_moment_test, hausdorff_matrix,
    hausdorff_matrix_via_differences, is_hankel, is_toeplitz, MatrixKind, MomentTest,
    OperatorMatrix, StructureCheck, Witness,
};
pub use measure::{parse_measure, Atom, JacobiDensity, Measure, MomentSequence, SingularityHint};
pub use num_complex::Complex64;
pub use operators::{
    apply_gamma_adjoint_coefficients, apply_gamma_boundary, apply_gamma_coefficients,
    apply_t_boundary, gamma_boundary_values, gamma_of_one, BoundaryApplication, OperatorHandle,
};
pub use special::log_binomial;
