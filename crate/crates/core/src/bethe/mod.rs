//! Two-photon states of the interacting (even) mode.

pub mod basis;
pub mod overlap;
pub mod smatrix;
pub mod state;

pub use basis::{a_basis, bound_basis, s_basis, w_basis, BasisKind, BasisLabel, BasisState};
pub use overlap::{completeness_by_projection, completeness_residual, overlap, OverlapDecomposition};
pub use smatrix::{background_b, bound_term, out_state_relative, resum_background, s_ee_element, SMatrixElement};
pub use state::{
    boundary_residuals, boundary_residuals_fd, build_bethe_state, build_bound_state, channel_eigenvalue, BetheState,
    BoundInteractingState, BoundaryResiduals, Eigenstate, Region, ScatteringChannel, Side,
};
