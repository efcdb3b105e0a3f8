//! Half-integer Bessel machinery: closed forms, zeros, polynomial families
//! and the kernels `Phi_l`, `Psi_l`.

mod bessel;
mod poly;
mod zeros;

pub use bessel::{
    bessel_half, bessel_half_c, bessel_j_prime, hankel, phi_psi, Branch, HankelKind,
};
pub use poly::{a_polynomial, a_tilde_polynomial, pq_polynomials, PolyKind, PolySeq};
pub use zeros::{bessel_zero, ZeroCache};

/// Angular momentum `l >= 0` together with the Bessel order `nu = l + 1/2`.
///
/// The pairing is enforced by construction: `nu` is always derived from `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Order {
    ell: u32,
}

/// Largest angular momentum for which the exact rational polynomial tables
/// are generated.
pub const MAX_ELL: u32 = 12;

impl Order {
    pub fn new(ell: u32) -> Self {
        assert!(ell <= MAX_ELL, "angular momentum {ell} > {MAX_ELL}");
        Order { ell }
    }

    #[inline]
    pub fn ell(self) -> u32 {
        self.ell
    }

    /// Bessel order `nu = l + 1/2`.
    #[inline]
    pub fn nu(self) -> f64 {
        self.ell as f64 + 0.5
    }

    /// Centrifugal coupling `l(l+1)`.
    #[inline]
    pub fn centrifugal(self) -> f64 {
        (self.ell * (self.ell + 1)) as f64
    }
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "l={} (nu={}/2)", self.ell, 2 * self.ell + 1)
    }
}
