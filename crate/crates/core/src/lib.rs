//! Numerical toolkit for the inverse Dirichlet spectral problem of the
//! radial Schrödinger operator
//!
//! ```text
//! -u'' + ( l(l+1)/r^2 + q(r) ) u = lambda u,   r in (0,1),   u(1) = 0,
//! ```
//!
//! with a regularity condition `u(r) = O(r^{l+1})` at the origin and a
//! real potential `q` in L^2(0,1).
//!
//! The crate provides, for half-integer Bessel order `nu = l + 1/2`:
//!
//! * closed-form half-integer Bessel functions, their zeros and the kernels
//!   `Phi_l`, `Psi_l` ([`special`]);
//! * grid functions on (0,1) with composite Gauss–Legendre quadrature,
//!   midpoint reflection and parity projectors ([`grid`]);
//! * the index-reduction operators `S_l`, their adjoints and inverses, and
//!   the composite trigonometric transfer operators `T_l`, `B_l` ([`xform`]);
//! * Dirichlet spectra, eigenfunctions and eigenvalue derivatives of the
//!   radial operator ([`spectral`]);
//! * the corrected Kneser–Sommerfeld expansion and the Green/moment
//!   identities that follow from it ([`ksgreen`]);
//! * the even/odd symmetry analyses for the angular-momentum pairs (0,1)
//!   and (0,2), including the explicit obstruction value ([`uniq`]);
//! * the linearized spectral map, its isomorphism-plus-compact splitting,
//!   kernel probes and damped Gauss–Newton potential reconstruction
//!   ([`linmap`]);
//! * Jost function matching at fixed energy and Hadamard-product
//!   consistency checks ([`scatter`]).
//!
//! Data-parallel inner loops (series summation, eigenvalue brackets,
//! Jacobian rows) run on rayon when the `parallel` feature is enabled and
//! fall back to an identical sequential schedule otherwise; reductions are
//! blocked so results are bit-identical either way (see [`exec`]).

pub mod error;
pub mod exec;
pub mod filon;
pub mod grid;
pub mod ksgreen;
pub mod ode;
pub mod linmap;
pub mod scatter;
pub mod special;
pub mod spectral;
pub mod uniq;
pub mod xform;

pub use error::{Error, Result};
pub use exec::Exec;
pub use grid::{Grid, GridFn, Parity};
pub use special::Order;
