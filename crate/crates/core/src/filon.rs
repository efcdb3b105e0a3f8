//! Oscillation-proof trigonometric transforms of grid functions.
//!
//! `int f(t) cos(wt) dt` is evaluated per panel from the Legendre expansion
//! of the interpolant: with panel center `c`, halfwidth `h`,
//!
//! ```text
//! int_panel f(t) e^{iwt} dt = h e^{iwc} sum_k a_k * 2 i^k j_k(wh),
//! ```
//!
//! where `a_k` are the Legendre coefficients of the panel interpolant and
//! `j_k` are spherical Bessel functions. The quadrature error equals the
//! interpolation error of `f` uniformly in `w`, so Fourier-type integrals
//! with `w` far beyond the per-panel Nyquist limit remain accurate.

use crate::grid::GridFn;

/// `(int_0^1 f cos(wt) dt, int_0^1 f sin(wt) dt)`.
pub fn trig_transform(f: &GridFn, w: f64) -> (f64, f64) {
    let sign = if w < 0.0 { -1.0 } else { 1.0 };
    let w = w.abs();
    let grid = f.grid();
    let m = grid.nodes_per_panel();
    let mut cos_acc = 0.0;
    let mut sin_acc = 0.0;
    let mut jbuf = vec![0.0; m];
    for p in 0..grid.panel_count() {
        let (a, b) = grid.panel_bounds(p);
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        sph_bessel_j(w * h, &mut jbuf);
        // sum_k a_k 2 i^k j_k(wh), split into real (k = 0 mod 4 -> +, ...)
        let vals = &f.values()[p * m..(p + 1) * m];
        let mut re = 0.0;
        let mut im = 0.0;
        for k in 0..m {
            let mut ak = 0.0;
            for i in 0..m {
                ak += grid.ref_weights()[i] * grid.legendre_value(k, i) * vals[i];
            }
            ak *= (2 * k + 1) as f64 / 2.0;
            let t = 2.0 * ak * jbuf[k];
            match k % 4 {
                0 => re += t,
                1 => im += t,
                2 => re -= t,
                _ => im -= t,
            }
        }
        let (s, cc) = (w * c).sin_cos();
        // h * e^{iwc} (re + i im)
        cos_acc += h * (cc * re - s * im);
        sin_acc += h * (s * re + cc * im);
    }
    (cos_acc, sign * sin_acc)
}

/// `int_0^1 f(t) cos(wt) dt`.
pub fn cos_transform(f: &GridFn, w: f64) -> f64 {
    trig_transform(f, w).0
}

/// `int_0^1 f(t) sin(wt) dt`.
pub fn sin_transform(f: &GridFn, w: f64) -> f64 {
    trig_transform(f, w).1
}

/// Spherical Bessel `j_k(w)` for `k = 0..buf.len()`, any `w >= 0`.
///
/// Upward recurrence where it is stable (`w > k_max`), Miller's downward
/// recurrence normalized by `j_0` otherwise.
fn sph_bessel_j(w: f64, buf: &mut [f64]) {
    let kmax = buf.len() - 1;
    if w == 0.0 {
        buf.fill(0.0);
        buf[0] = 1.0;
        return;
    }
    let j0 = w.sin() / w;
    if w > kmax as f64 + 1.0 {
        buf[0] = j0;
        if kmax >= 1 {
            buf[1] = j0 / w - w.cos() / w;
            for k in 1..kmax {
                buf[k + 1] = (2 * k + 1) as f64 / w * buf[k] - buf[k - 1];
            }
        }
        return;
    }
    // Miller downward
    let start = kmax + 20 + w as usize;
    let mut jp = 0.0_f64;
    let mut jc = 1e-280_f64;
    for k in (0..start).rev() {
        let jm = (2 * k + 3) as f64 / w * jc - jp;
        jp = jc;
        jc = jm;
        if k <= kmax {
            buf[k] = jc;
        }
        if jc.abs() > 1e250 {
            let scale = 1.0 / jc.abs();
            jp *= scale;
            jc *= scale;
            for b in buf[k..].iter_mut() {
                *b *= scale;
            }
        }
    }
    let scale = j0 / buf[0];
    for b in buf.iter_mut() {
        *b *= scale;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use approx::assert_relative_eq;

    fn closed_t_cos(w: f64) -> f64 {
        // int_0^1 t cos(wt) dt
        (w.cos() + w * w.sin() - 1.0) / (w * w)
    }

    #[test]
    fn sph_bessel_values() {
        let mut b = vec![0.0; 6];
        sph_bessel_j(1.0, &mut b);
        // j_0(1), j_1(1), j_2(1) reference values
        assert_relative_eq!(b[0], 0.8414709848078965, max_relative = 1e-13);
        assert_relative_eq!(b[1], 0.30116867893975674, max_relative = 1e-12);
        assert_relative_eq!(b[2], 0.06203505201137386, max_relative = 1e-12);
        sph_bessel_j(25.0, &mut b);
        assert_relative_eq!(b[0], (25.0_f64).sin() / 25.0, max_relative = 1e-13);
    }

    #[test]
    fn matches_plain_quadrature_at_moderate_frequency() {
        let g = Grid::standard();
        let f = GridFn::from_fn(&g, |x| (1.5 * x).exp() * (1.0 - x));
        for &w in &[0.0, 0.7, 6.3, 30.0] {
            let direct = g.integrate(
                &g.nodes()
                    .iter()
                    .zip(f.values())
                    .map(|(&x, &v)| v * (w * x).cos())
                    .map(|v| v / 1.0)
                    .collect::<Vec<_>>(),
            );
            // fold weights properly: direct = sum w_i f_i cos(w x_i)
            let (c, _) = trig_transform(&f, w);
            assert_relative_eq!(c, direct, epsilon = 1e-11);
        }
    }

    #[test]
    fn exact_for_linear_integrand_any_frequency() {
        let g = Grid::standard();
        let f = GridFn::from_fn(&g, |x| x);
        for &w in &[3.0, 250.0, 5_000.0, 120_000.0] {
            assert_relative_eq!(cos_transform(&f, w), closed_t_cos(w), epsilon = 1e-14);
        }
    }

    #[test]
    fn high_frequency_smooth_integrand() {
        // int_0^1 sin(3x) cos(wt): closed form via product-to-sum
        let g = Grid::standard();
        let f = GridFn::from_fn(&g, |x| (3.0 * x).sin());
        let w = 40_000.0;
        let exact = 0.5
            * ((1.0 - ((3.0 + w) * 1.0f64).cos()) / (3.0 + w)
                + (1.0 - ((3.0 - w) * 1.0f64).cos()) / (3.0 - w));
        assert!((cos_transform(&f, w) - exact).abs() <= 1e-13);
    }

    #[test]
    fn negative_frequency_symmetry() {
        let g = Grid::standard();
        let f = GridFn::from_fn(&g, |x| x * x);
        let (c1, s1) = trig_transform(&f, 17.0);
        let (c2, s2) = trig_transform(&f, -17.0);
        assert_eq!(c1.to_bits(), c2.to_bits());
        assert_eq!(s1.to_bits(), (-s2).to_bits());
    }
}
