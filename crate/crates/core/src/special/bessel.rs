//! Closed-form evaluation of half-integer Bessel functions.
//!
//! For `nu = l + 1/2`,
//!
//! ```text
//! J_{+nu}(z) =          sqrt(2/(pi z)) [ P_l(1/z) sin z - Q_{l-1}(1/z) cos z ],
//! J_{-nu}(z) = (-1)^l * sqrt(2/(pi z)) [ P_l(1/z) cos z + Q_{l-1}(1/z) sin z ],
//! ```
//!
//! and `Y_nu = (-1)^{l+1} J_{-nu}`. The trigonometric forms cancel
//! catastrophically as `z -> 0`, so below `|z| < 1e-2` evaluation switches
//! to a 12-term power series around the leading behavior
//! `J_nu(z) ~ (z/2)^nu / Gamma(nu+1)`.

use super::{pq_polynomials, Order, PolySeq};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Which of `J_{+nu}`, `J_{-nu}` to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    PlusNu,
    MinusNu,
}

/// Hankel function kind: `H^(1) = J + iY`, `H^(2) = J - iY`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HankelKind {
    First,
    Second,
}

const SERIES_TERMS: usize = 12;

/// Representation switch point. The trigonometric closed forms lose
/// roughly `log10 |P_l(1/z)|` digits to cancellation, which grows fast for
/// `z` below the order; the 12-term series is accurate to machine precision
/// up to `z ~ 0.35 nu` (and always up to 1e-2), so the switch tracks the
/// order.
fn series_switch(order: Order) -> f64 {
    (0.35 * order.nu()).max(1e-2)
}

fn pq_table(ell: u32) -> &'static (PolySeq, PolySeq) {
    static TABLE: OnceLock<Vec<(PolySeq, PolySeq)>> = OnceLock::new();
    let t = TABLE.get_or_init(|| (0..=super::MAX_ELL).map(pq_polynomials).collect());
    &t[ell as usize]
}

/// Exact `(2l+1)!!` etc. fit in f64 for l <= 12.
fn double_factorial(n: i64) -> f64 {
    let mut acc = 1.0;
    let mut k = n;
    while k > 1 {
        acc *= k as f64;
        k -= 2;
    }
    acc
}

/// `Gamma(l + 3/2) = sqrt(pi) (2l+1)!! / 2^{l+1}`.
fn gamma_nu_plus_one(ell: u32) -> f64 {
    PI.sqrt() * double_factorial(2 * ell as i64 + 1) / 2f64.powi(ell as i32 + 1)
}

/// `Gamma(1/2 - l) = sqrt(pi) (-1)^l 2^l / (2l-1)!!`.
fn gamma_one_minus_nu(ell: u32) -> f64 {
    let sign = if ell % 2 == 0 { 1.0 } else { -1.0 };
    PI.sqrt() * sign * 2f64.powi(ell as i32) / double_factorial(2 * ell as i64 - 1)
}

/// `J_{±nu}(z)` for real `z > 0` (or any real `z != 0`; odd/even symmetry is
/// not applied, callers stay on the positive axis).
pub fn bessel_half(order: Order, branch: Branch, z: f64) -> Result<f64> {
    if z == 0.0 {
        return match branch {
            Branch::PlusNu => Ok(0.0),
            Branch::MinusNu => Err(Error::Domain(
                "J_{-nu} has a pole at z=0 for half-integer nu".into(),
            )),
        };
    }
    if z.abs() < series_switch(order) {
        return Ok(series_real(order, branch, z));
    }
    Ok(closed_real(order, branch, z))
}

fn closed_real(order: Order, branch: Branch, z: f64) -> f64 {
    let (p, q) = pq_table(order.ell());
    let t = 1.0 / z;
    let (s, c) = z.sin_cos();
    let amp = (2.0 / (PI * z)).sqrt();
    match branch {
        Branch::PlusNu => amp * (p.eval(t) * s - q.eval(t) * c),
        Branch::MinusNu => {
            let sign = if order.ell() % 2 == 0 { 1.0 } else { -1.0 };
            sign * amp * (p.eval(t) * c + q.eval(t) * s)
        }
    }
}

fn series_real(order: Order, branch: Branch, z: f64) -> f64 {
    let ell = order.ell();
    let nu = order.nu();
    let (alpha, gamma) = match branch {
        Branch::PlusNu => (nu, gamma_nu_plus_one(ell)),
        Branch::MinusNu => (-nu, gamma_one_minus_nu(ell)),
    };
    let w = -0.25 * z * z;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..SERIES_TERMS as i32 {
        let kf = k as f64;
        term *= w / ((kf + 1.0) * (alpha + kf + 1.0));
        sum += term;
    }
    (0.5 * z).powf(alpha) / gamma * sum
}

/// Complex-argument variant, principal branches for the square root and
/// power.
pub fn bessel_half_c(order: Order, branch: Branch, z: Complex64) -> Result<Complex64> {
    if z.norm() == 0.0 {
        return match branch {
            Branch::PlusNu => Ok(Complex64::new(0.0, 0.0)),
            Branch::MinusNu => Err(Error::Domain(
                "J_{-nu} has a pole at z=0 for half-integer nu".into(),
            )),
        };
    }
    if z.norm() < series_switch(order) {
        return Ok(series_complex(order, branch, z));
    }
    let (p, q) = pq_table(order.ell());
    let t = z.finv();
    let (s, c) = (z.sin(), z.cos());
    let amp = (Complex64::new(2.0 / PI, 0.0) * t).sqrt();
    Ok(match branch {
        Branch::PlusNu => amp * (p.eval_c(t) * s - q.eval_c(t) * c),
        Branch::MinusNu => {
            let sign = if order.ell() % 2 == 0 { 1.0 } else { -1.0 };
            amp * (p.eval_c(t) * c + q.eval_c(t) * s) * sign
        }
    })
}

fn series_complex(order: Order, branch: Branch, z: Complex64) -> Complex64 {
    let ell = order.ell();
    let nu = order.nu();
    let (alpha, gamma) = match branch {
        Branch::PlusNu => (nu, gamma_nu_plus_one(ell)),
        Branch::MinusNu => (-nu, gamma_one_minus_nu(ell)),
    };
    let w = -0.25 * z * z;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 0..SERIES_TERMS as i32 {
        let kf = k as f64;
        term = term * w / ((kf + 1.0) * (alpha + kf + 1.0));
        sum += term;
    }
    (z * 0.5).powf(alpha) / gamma * sum
}

/// `Y_nu(x) = (-1)^{l+1} J_{-nu}(x)`.
pub fn bessel_y(order: Order, x: f64) -> Result<f64> {
    let sign = if order.ell() % 2 == 0 { -1.0 } else { 1.0 };
    Ok(sign * bessel_half(order, Branch::MinusNu, x)?)
}

/// `J'_nu(x) = J_{nu-1}(x) - (nu/x) J_nu(x)`.
pub fn bessel_j_prime(order: Order, x: f64) -> Result<f64> {
    let jnu = bessel_half(order, Branch::PlusNu, x)?;
    let jm = if order.ell() >= 1 {
        bessel_half(Order::new(order.ell() - 1), Branch::PlusNu, x)?
    } else {
        // nu - 1 = -1/2
        bessel_half(Order::new(0), Branch::MinusNu, x)?
    };
    Ok(jm - order.nu() / x * jnu)
}

/// `Y'_nu(x) = Y_{nu-1}(x) - (nu/x) Y_nu(x)`, with `Y_{-1/2} = J_{1/2}`.
pub fn bessel_y_prime(order: Order, x: f64) -> Result<f64> {
    let ynu = bessel_y(order, x)?;
    let ym = if order.ell() >= 1 {
        bessel_y(Order::new(order.ell() - 1), x)?
    } else {
        bessel_half(Order::new(0), Branch::PlusNu, x)?
    };
    Ok(ym - order.nu() / x * ynu)
}

/// Hankel function `H^(1,2)_nu(x)` for real `x > 0`.
pub fn hankel(order: Order, kind: HankelKind, x: f64) -> Result<Complex64> {
    let j = bessel_half(order, Branch::PlusNu, x)?;
    let y = bessel_y(order, x)?;
    Ok(match kind {
        HankelKind::First => Complex64::new(j, y),
        HankelKind::Second => Complex64::new(j, -y),
    })
}

/// Derivative `d/dx H^(1,2)_nu(x)` via the order-lowering recurrence.
pub fn hankel_prime(order: Order, kind: HankelKind, x: f64) -> Result<Complex64> {
    let jp = bessel_j_prime(order, x)?;
    let yp = bessel_y_prime(order, x)?;
    Ok(match kind {
        HankelKind::First => Complex64::new(jp, yp),
        HankelKind::Second => Complex64::new(jp, -yp),
    })
}

/// The kernels `Phi_l(x) = (pi x/2) J_nu(x)^2` and
/// `Psi_l(x) = -(pi x/2) J_nu(x) Y_nu(x)`, `x >= 0`.
pub fn phi_psi(ell: u32, x: f64) -> (f64, f64) {
    if x == 0.0 {
        return (0.0, 0.0);
    }
    let order = Order::new(ell);
    let j = bessel_half(order, Branch::PlusNu, x).expect("x > 0");
    let y = bessel_y(order, x).expect("x > 0");
    let w = 0.5 * PI * x;
    (w * j * j, -w * j * y)
}
