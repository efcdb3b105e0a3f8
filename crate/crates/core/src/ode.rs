//! Adaptive embedded Runge–Kutta integration (Dormand–Prince 5(4)).
//!
//! The integrator is generic over small fixed-size real state vectors and
//! offers two output modes: endpoint-only, and "checkpointed" where steps
//! are forced to land on a sorted list of output abscissae (used to sample
//! eigenfunctions at quadrature nodes without dense-output interpolation).
//!
//! Near regular singular endpoints the radial/symmetry ODEs are integrated
//! in the log variable `tau = ln x` with the scaled derivatives
//! `v_k = x^k y^(k)`; that substitution keeps the coefficients bounded, so
//! the callers here build their right-hand sides that way and this module
//! stays a plain IVP engine.

use crate::error::{Error, Result};

/// Fixed-size real state.
pub trait State: Copy {
    const DIM: usize;
    fn get(&self, i: usize) -> f64;
    fn set(&mut self, i: usize, v: f64);
    fn zero() -> Self;
}

impl<const N: usize> State for [f64; N] {
    const DIM: usize = N;
    #[inline]
    fn get(&self, i: usize) -> f64 {
        self[i]
    }
    #[inline]
    fn set(&mut self, i: usize, v: f64) {
        self[i] = v;
    }
    fn zero() -> Self {
        [0.0; N]
    }
}

// Dormand–Prince 5(4) coefficients.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const C: [f64; 6] = [0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integration control parameters.
#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    pub min_step: f64,
}

impl Default for OdeOptions {
    fn default() -> Self {
        // error control is relative, coupled across components through the
        // state sup-norm; the tiny atol only guards the all-zero state
        OdeOptions { rtol: 1e-11, atol: 1e-290, max_steps: 2_000_000, min_step: 1e-13 }
    }
}

/// Integrates `y' = f(t, y)` from `t0` to `t1` (either direction).
///
/// When `checkpoints` is non-empty it must be sorted in the direction of
/// integration and lie inside `[t0, t1]`; `on_checkpoint` is called with
/// `(index, t, y)` exactly once per checkpoint.
pub fn integrate<S: State>(
    f: &dyn Fn(f64, &S) -> S,
    t0: f64,
    t1: f64,
    y0: S,
    opts: &OdeOptions,
    checkpoints: &[f64],
    on_checkpoint: &mut dyn FnMut(usize, f64, &S),
) -> Result<S> {
    let dir = if t1 >= t0 { 1.0 } else { -1.0 };
    let span = (t1 - t0).abs();
    if span == 0.0 {
        return Ok(y0);
    }
    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);
    let mut h = initial_step(span, &y, &k1, opts) * dir;
    let mut next_cp = 0usize;
    let mut steps = 0usize;

    while (t1 - t) * dir > 0.0 {
        steps += 1;
        if steps > opts.max_steps {
            return Err(Error::StepSizeCollapse { lambda: f64::NAN, r: t });
        }
        // do not overshoot the end or the next checkpoint
        let mut limit = t1;
        if next_cp < checkpoints.len() && (checkpoints[next_cp] - t) * dir >= 0.0 {
            limit = checkpoints[next_cp];
        }
        if (t + h - limit) * dir > 0.0 {
            h = limit - t;
        }
        if h.abs() < opts.min_step {
            return Err(Error::StepSizeCollapse { lambda: f64::NAN, r: t });
        }

        // stages
        let mut k = [S::zero(); 7];
        k[0] = k1;
        for s in 0..6 {
            let mut ys = y;
            for i in 0..S::DIM {
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate().take(s + 1) {
                    acc += A[s][j] * kj.get(i);
                }
                ys.set(i, y.get(i) + h * acc);
            }
            k[s + 1] = f(t + C[s] * h, &ys);
        }
        // 5th order solution is the last stage evaluation point (FSAL)
        let mut ynew = y;
        for i in 0..S::DIM {
            let mut acc = 0.0;
            for (j, kj) in k.iter().enumerate().take(6) {
                acc += A[5][j] * kj.get(i);
            }
            ynew.set(i, y.get(i) + h * acc);
        }
        // error estimate, relative to the state sup-norm so that small
        // components near zero crossings do not stall the step size
        let mut ymax: f64 = 0.0;
        for i in 0..S::DIM {
            ymax = ymax.max(y.get(i).abs()).max(ynew.get(i).abs());
        }
        let mut err_norm: f64 = 0.0;
        for i in 0..S::DIM {
            let mut e = 0.0;
            for (j, kj) in k.iter().enumerate() {
                e += E[j] * kj.get(i);
            }
            e *= h;
            let comp = y.get(i).abs().max(ynew.get(i).abs()).max(0.01 * ymax);
            let scale = opts.atol + opts.rtol * comp;
            err_norm = err_norm.max((e / scale).abs());
        }

        if err_norm <= 1.0 {
            t += h;
            y = ynew;
            k1 = k[6];
            if next_cp < checkpoints.len() && (t - checkpoints[next_cp]) * dir >= 0.0 {
                on_checkpoint(next_cp, t, &y);
                next_cp += 1;
            }
        }
        // PI-free classic step update
        let factor = if err_norm == 0.0 {
            5.0
        } else {
            (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
    }
    Ok(y)
}

fn initial_step<S: State>(span: f64, y: &S, dy: &S, opts: &OdeOptions) -> f64 {
    let mut ynorm: f64 = 0.0;
    let mut dnorm: f64 = 0.0;
    for i in 0..S::DIM {
        ynorm = ynorm.max(y.get(i).abs());
        dnorm = dnorm.max(dy.get(i).abs());
    }
    let h = if dnorm > 0.0 {
        0.01 * (ynorm.max(opts.atol) / dnorm)
    } else {
        span * 1e-3
    };
    h.min(span * 0.1).max(opts.min_step * 10.0)
}
