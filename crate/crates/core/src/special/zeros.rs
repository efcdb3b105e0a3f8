//! Positive zeros `j_{nu,n}` of half-integer Bessel functions.
//!
//! Initial guesses come from the asymptotic spacing `j_{nu,n} ~ (n + l/2) pi`
//! refined by the McMahon expansion; a guarded Newton iteration on the
//! closed form polishes each zero. For the first few zeros (where McMahon
//! is unreliable at larger `l`) a sign scan brackets the root first.

use super::bessel::{bessel_half, bessel_j_prime, Branch};
use super::Order;
use std::f64::consts::PI;

fn j_nu(order: Order, x: f64) -> f64 {
    bessel_half(order, Branch::PlusNu, x).expect("x > 0")
}

/// McMahon expansion around `a = (n + l/2) pi`.
fn mcmahon(order: Order, n: usize) -> f64 {
    let mu = 4.0 * order.nu() * order.nu();
    let a = (n as f64 + order.ell() as f64 / 2.0) * PI;
    let e = 8.0 * a;
    a - (mu - 1.0) / e
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e.powi(3))
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * e.powi(5))
}

fn newton_polish(order: Order, mut x: f64, lo: f64, hi: f64) -> f64 {
    for _ in 0..40 {
        let f = j_nu(order, x);
        let fp = bessel_j_prime(order, x).expect("x > 0");
        let dx = f / fp;
        let mut xn = x - dx;
        if !(lo..=hi).contains(&xn) {
            xn = 0.5 * (x + if dx > 0.0 { lo } else { hi });
        }
        if (xn - x).abs() <= 1e-15 * x {
            return xn;
        }
        x = xn;
    }
    x
}

fn bisect_then_newton(order: Order, mut lo: f64, mut hi: f64) -> f64 {
    debug_assert!(j_nu(order, lo) * j_nu(order, hi) < 0.0);
    for _ in 0..12 {
        let mid = 0.5 * (lo + hi);
        if j_nu(order, lo) * j_nu(order, mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    newton_polish(order, 0.5 * (lo + hi), lo, hi)
}

/// The `n`-th positive zero of `J_nu` (`n >= 1`).
pub fn bessel_zero(order: Order, n: usize) -> f64 {
    assert!(n >= 1, "zero index starts at 1");
    if n <= (order.ell() as usize).max(3) {
        return scan_zero(order, n);
    }
    let g = mcmahon(order, n);
    let z = newton_polish(order, g, g - 0.45 * PI, g + 0.45 * PI);
    debug_assert!(j_nu(order, z).abs() <= 1e-12);
    z
}

/// Bracket the first zeros by a sign scan starting just above `nu`
/// (all zeros satisfy `j_{nu,1} > nu`).
fn scan_zero(order: Order, n: usize) -> f64 {
    let mut x = order.nu().max(0.5);
    let step = 0.125 * PI;
    let mut prev = j_nu(order, x);
    let mut count = 0;
    for _ in 0..10_000 {
        let xn = x + step;
        let cur = j_nu(order, xn);
        if prev * cur < 0.0 {
            count += 1;
            if count == n {
                return bisect_then_newton(order, x, xn);
            }
        }
        x = xn;
        prev = cur;
    }
    unreachable!("sign scan failed to isolate zero {n} of {order}");
}

/// Lazily extended table of zeros for one order.
#[derive(Debug, Clone)]
pub struct ZeroCache {
    order: Order,
    zeros: Vec<f64>,
}

impl ZeroCache {
    pub fn new(order: Order) -> Self {
        ZeroCache { order, zeros: Vec::new() }
    }

    pub fn order(&self) -> Order {
        self.order
    }

    /// `j_{nu,n}`, computing and memoizing as needed (`n >= 1`).
    pub fn get(&mut self, n: usize) -> f64 {
        self.ensure(n);
        self.zeros[n - 1]
    }

    pub fn ensure(&mut self, n: usize) {
        while self.zeros.len() < n {
            let k = self.zeros.len() + 1;
            let z = bessel_zero(self.order, k);
            if let Some(&last) = self.zeros.last() {
                assert!(z > last, "zeros must increase: j_{k} = {z} <= {last}");
            }
            self.zeros.push(z);
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.zeros
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn nu_half_zeros_are_multiples_of_pi() {
        let o = Order::new(0);
        for n in 1..=20 {
            assert_relative_eq!(bessel_zero(o, n), n as f64 * PI, max_relative = 1e-13);
        }
    }

    #[test]
    fn first_zero_nu_three_halves() {
        // root of tan z = z, bisected independently
        let mut lo = PI;
        let mut hi = 1.5 * PI - 1e-9;
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if mid.tan() - mid > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let tan_root = 0.5 * (lo + hi);
        assert_relative_eq!(bessel_zero(Order::new(1), 1), tan_root, max_relative = 1e-11);
        assert_relative_eq!(bessel_zero(Order::new(1), 1), 4.493409, max_relative = 1e-6);
    }

    #[test]
    fn interlacing() {
        // j_{nu,n} < j_{nu+1,n} < j_{nu,n+1}
        for ell in 0..=4u32 {
            let a = Order::new(ell);
            let b = Order::new(ell + 1);
            for n in 1..=20 {
                let jn = bessel_zero(a, n);
                let jn1 = bessel_zero(a, n + 1);
                let kn = bessel_zero(b, n);
                assert!(jn < kn && kn < jn1, "interlacing failed at l={ell}, n={n}");
            }
        }
    }

    #[test]
    fn residual_small() {
        for ell in [0u32, 2, 5, 8] {
            let o = Order::new(ell);
            for n in [1usize, 2, 7, 40, 500] {
                let z = bessel_zero(o, n);
                assert!(j_nu(o, z).abs() <= 1e-13, "J at zero: {}", j_nu(o, z));
            }
        }
    }

    #[test]
    fn cache_extends_monotonically() {
        let mut c = ZeroCache::new(Order::new(2));
        let z10 = c.get(10);
        let z3 = c.get(3);
        assert!(z3 < z10);
        assert_eq!(c.as_slice().len(), 10);
    }
}
