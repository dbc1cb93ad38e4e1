//! Finite-truncation model of `C(SU_q(2))` acting on `l^2(N) (x) l^2(Z)`.
//!
//! The first leg carries the Toeplitz generator `alpha`; the Jacobi operator
//! `|q|^{-1} alpha + |q| alpha^*` is the image of the twisted fundamental
//! character under the conditional expectation onto `C^*(alpha)`. Its
//! eigenvectors `eta_z` give the functionals `theta_z`, which restrict to
//! positive multiples of the central states `psi_t` on the real segment.
//!
//! Every constructed operator records the rows that are unaffected by
//! truncation; all residual checks are taken over those rows.

mod eta;
mod operator;
mod theta;

pub use eta::{decay_length, eta_tail_bound, eta_vector, EigenCheck, EtaVector};
pub use operator::{
    build_alpha_toeplitz, build_jacobi, conditional_expectation, jacobi_spectrum,
    jacobi_symmetrized, tensor_alpha, tensor_gamma, BandedOperator, TensorOperator,
};
pub use theta::{
    required_truncation, theta_pair, ThetaFunctional, DECAY_TAIL_THRESHOLD, GUARD_MARGIN,
};
