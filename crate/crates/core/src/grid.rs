//! Grid functions on (0,1): composite Gauss–Legendre quadrature on graded
//! panels, per-panel polynomial differentiation, midpoint reflection and
//! parity projectors.
//!
//! Panels are open: every node is strictly interior to (0,1), so integrands
//! carrying negative powers of `x` or `1-x` stay finite at all nodes once
//! the singular weight is folded in analytically.

use crate::error::{Error, Result};
use std::f64::consts::PI;
use std::io::Write;
use std::sync::Arc;

/// Parity with respect to the midpoint reflection `sigma(x) = 1 - x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Composite Gauss–Legendre quadrature grid on (0,1).
#[derive(Debug)]
pub struct Grid {
    m: usize,
    breaks: Vec<f64>,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    ref_nodes: Vec<f64>,
    ref_weights: Vec<f64>,
    bary: Vec<f64>,
    /// differentiation matrix on the reference panel, row-major m x m
    diff: Vec<f64>,
    /// Legendre values P_k(x_i), k-major: legendre[k*m + i]
    legendre: Vec<f64>,
    symmetric: bool,
    hash: u64,
}

impl Grid {
    /// The default grid: 64 panels graded quadratically toward both
    /// endpoints, 12 Gauss–Legendre nodes per panel.
    pub fn standard() -> Arc<Grid> {
        Grid::graded(64, 12, 2.0)
    }

    /// Symmetric grid whose panel breakpoints cluster like `u^exponent`
    /// toward 0 and 1.
    pub fn graded(panels: usize, m: usize, exponent: f64) -> Arc<Grid> {
        assert!(panels >= 2 && m >= 2);
        let breaks: Vec<f64> = (0..=panels)
            .map(|i| {
                let t = i as f64 / panels as f64;
                if t <= 0.5 {
                    0.5 * (2.0 * t).powf(exponent)
                } else {
                    1.0 - 0.5 * (2.0 * (1.0 - t)).powf(exponent)
                }
            })
            .collect();
        Grid::from_breaks(breaks, m)
    }

    /// Uniform panels; used where wide panels are needed for high-order
    /// differentiation.
    pub fn uniform(panels: usize, m: usize) -> Arc<Grid> {
        let breaks = (0..=panels).map(|i| i as f64 / panels as f64).collect();
        Grid::from_breaks(breaks, m)
    }

    fn from_breaks(breaks: Vec<f64>, m: usize) -> Arc<Grid> {
        let (ref_nodes, ref_weights) = gauss_legendre(m);
        let bary = barycentric_weights(&ref_nodes);
        let diff = differentiation_matrix(&ref_nodes, &bary);
        let mut legendre = vec![0.0; m * m];
        for (i, &x) in ref_nodes.iter().enumerate() {
            let mut p0 = 1.0;
            let mut p1 = x;
            legendre[i] = p0;
            if m > 1 {
                legendre[m + i] = p1;
            }
            for k in 2..m {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                legendre[k * m + i] = p2;
                p0 = p1;
                p1 = p2;
            }
        }
        let mut nodes = Vec::with_capacity((breaks.len() - 1) * m);
        let mut weights = Vec::with_capacity(nodes.capacity());
        for p in 0..breaks.len() - 1 {
            let (a, b) = (breaks[p], breaks[p + 1]);
            let c = 0.5 * (a + b);
            let h = 0.5 * (b - a);
            for i in 0..m {
                nodes.push(c + h * ref_nodes[i]);
                weights.push(h * ref_weights[i]);
            }
        }
        let symmetric = breaks
            .iter()
            .zip(breaks.iter().rev())
            .all(|(a, b)| (a + b - 1.0).abs() <= 1e-15);
        let hash = fnv_hash(&breaks, m);
        Arc::new(Grid {
            m,
            breaks,
            nodes,
            weights,
            ref_nodes,
            ref_weights,
            bary,
            diff,
            legendre,
            symmetric,
            hash,
        })
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    #[inline]
    pub fn panel_count(&self) -> usize {
        self.breaks.len() - 1
    }

    #[inline]
    pub fn nodes_per_panel(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    #[inline]
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    #[inline]
    pub fn panel_bounds(&self, p: usize) -> (f64, f64) {
        (self.breaks[p], self.breaks[p + 1])
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn hash(&self) -> u64 {
        self.hash
    }

    pub fn ref_nodes(&self) -> &[f64] {
        &self.ref_nodes
    }

    pub fn ref_weights(&self) -> &[f64] {
        &self.ref_weights
    }

    /// Barycentric weight of reference node `i`.
    #[inline]
    pub fn bary_weight(&self, i: usize) -> f64 {
        self.bary[i]
    }

    /// P_k(ref node i), `k < m`.
    #[inline]
    pub fn legendre_value(&self, k: usize, i: usize) -> f64 {
        self.legendre[k * self.m + i]
    }

    /// Panel containing `x` (clamped to the boundary panels outside (0,1)).
    pub fn panel_of(&self, x: f64) -> usize {
        match self.breaks.binary_search_by(|b| b.partial_cmp(&x).unwrap()) {
            Ok(i) => i.min(self.panel_count() - 1),
            Err(i) => i.saturating_sub(1).min(self.panel_count() - 1),
        }
    }

    /// Mirror image of a node index under `x -> 1-x` (symmetric grids).
    pub fn reflect_index(&self, i: usize) -> usize {
        let (p, j) = (i / self.m, i % self.m);
        (self.panel_count() - 1 - p) * self.m + (self.m - 1 - j)
    }

    /// Barycentric evaluation of the panel-`p` interpolant at `x`.
    pub fn eval_on_panel(&self, values: &[f64], p: usize, x: f64) -> f64 {
        let (a, b) = self.panel_bounds(p);
        let t = (2.0 * x - a - b) / (b - a);
        let vals = &values[p * self.m..(p + 1) * self.m];
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..self.m {
            let d = t - self.ref_nodes[i];
            if d.abs() < 1e-300 {
                return vals[i];
            }
            let w = self.bary[i] / d;
            num += w * vals[i];
            den += w;
        }
        num / den
    }

    /// Interpolated value of grid data at an arbitrary `x` in [0,1].
    pub fn eval(&self, values: &[f64], x: f64) -> f64 {
        self.eval_on_panel(values, self.panel_of(x), x)
    }

    /// `sum_i w_i v_i`.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        self.weights.iter().zip(values).map(|(w, v)| w * v).sum()
    }

    /// k-th derivative of the per-panel interpolant, sampled at the nodes.
    pub fn differentiate(&self, values: &[f64], k: usize) -> Result<Vec<f64>> {
        if k > 5 {
            return Err(Error::DerivativeOrder { requested: k, max: 5 });
        }
        if k >= self.m {
            return Err(Error::DerivativeOrder { requested: k, max: self.m - 1 });
        }
        // D^k on the reference panel
        let mut dk = self.diff.clone();
        for _ in 1..k {
            dk = mat_mul(&dk, &self.diff, self.m);
        }
        if k == 0 {
            return Ok(values.to_vec());
        }
        let mut out = vec![0.0; values.len()];
        for p in 0..self.panel_count() {
            let (a, b) = self.panel_bounds(p);
            let scale = (2.0 / (b - a)).powi(k as i32);
            let v = &values[p * self.m..(p + 1) * self.m];
            let o = &mut out[p * self.m..(p + 1) * self.m];
            for i in 0..self.m {
                let mut acc = 0.0;
                for j in 0..self.m {
                    acc += dk[i * self.m + j] * v[j];
                }
                o[i] = scale * acc;
            }
        }
        Ok(out)
    }
}

fn mat_mul(a: &[f64], b: &[f64], m: usize) -> Vec<f64> {
    let mut c = vec![0.0; m * m];
    for i in 0..m {
        for k in 0..m {
            let aik = a[i * m + k];
            for j in 0..m {
                c[i * m + j] += aik * b[k * m + j];
            }
        }
    }
    c
}

/// Gauss–Legendre nodes and weights on [-1,1] by Newton iteration on P_m.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    for i in 0..m.div_ceil(2) {
        // Chebyshev-based initial guess
        let mut x = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=m {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[m - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    if m % 2 == 1 {
        nodes[m / 2] = 0.0;
    }
    (nodes, weights)
}

fn barycentric_weights(nodes: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    let mut w = vec![1.0; n];
    for j in 0..n {
        for k in 0..n {
            if k != j {
                w[j] /= nodes[j] - nodes[k];
            }
        }
    }
    w
}

fn differentiation_matrix(nodes: &[f64], bary: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        let mut diag = 0.0;
        for j in 0..n {
            if i != j {
                let v = bary[j] / bary[i] / (nodes[i] - nodes[j]);
                d[i * n + j] = v;
                diag -= v;
            }
        }
        d[i * n + i] = diag;
    }
    d
}

fn fnv_hash(breaks: &[f64], m: usize) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    let mut feed = |bytes: &[u8]| {
        for &b in bytes {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    };
    feed(&(m as u64).to_le_bytes());
    for b in breaks {
        feed(&b.to_bits().to_le_bytes());
    }
    h
}

/// Real-valued function sampled at the grid nodes.
#[derive(Debug, Clone)]
pub struct GridFn {
    grid: Arc<Grid>,
    values: Vec<f64>,
}

impl GridFn {
    pub fn from_values(grid: &Arc<Grid>, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), grid.node_count());
        debug_assert!(values.iter().all(|v| v.is_finite()));
        GridFn { grid: Arc::clone(grid), values }
    }

    pub fn from_fn(grid: &Arc<Grid>, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.nodes().iter().map(|&x| f(x)).collect();
        GridFn::from_values(grid, values)
    }

    pub fn zeros(grid: &Arc<Grid>) -> Self {
        GridFn { grid: Arc::clone(grid), values: vec![0.0; grid.node_count()] }
    }

    pub fn constant(grid: &Arc<Grid>, c: f64) -> Self {
        GridFn { grid: Arc::clone(grid), values: vec![c; grid.node_count()] }
    }

    #[inline]
    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn same_grid(&self, other: &GridFn) -> bool {
        Arc::ptr_eq(&self.grid, &other.grid) || self.grid.hash() == other.grid.hash()
    }

    /// Quadrature approximation of the L^2(0,1) pairing `int f g`.
    pub fn inner(&self, other: &GridFn) -> Result<f64> {
        if !self.same_grid(other) {
            return Err(Error::GridMismatch);
        }
        Ok(self
            .grid
            .weights()
            .iter()
            .zip(self.values.iter().zip(&other.values))
            .map(|(w, (a, b))| w * a * b)
            .sum())
    }

    pub fn integral(&self) -> f64 {
        self.grid.integrate(&self.values)
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).expect("same grid").sqrt()
    }

    /// Interpolated point value.
    pub fn eval(&self, x: f64) -> f64 {
        self.grid.eval(&self.values, x)
    }

    /// `f o sigma` with `sigma(x) = 1-x`; exact involution on symmetric grids.
    pub fn reflect(&self) -> Result<GridFn> {
        if !self.grid.is_symmetric() {
            return Err(Error::AsymmetricGrid);
        }
        let n = self.values.len();
        let mut values = vec![0.0; n];
        for i in 0..n {
            values[i] = self.values[self.grid.reflect_index(i)];
        }
        Ok(GridFn { grid: Arc::clone(&self.grid), values })
    }

    /// `(f ± f o sigma)/2`; even part + odd part reproduces `f` exactly.
    pub fn parity_project(&self, parity: Parity) -> Result<GridFn> {
        let refl = self.reflect()?;
        let sign = match parity {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        };
        let values = self
            .values
            .iter()
            .zip(refl.values.iter())
            .map(|(a, b)| 0.5 * (a + sign * b))
            .collect();
        Ok(GridFn { grid: Arc::clone(&self.grid), values })
    }

    /// k-th derivative of the per-panel interpolant.
    pub fn differentiate(&self, k: usize) -> Result<GridFn> {
        let values = self.grid.differentiate(&self.values, k)?;
        Ok(GridFn { grid: Arc::clone(&self.grid), values })
    }

    pub fn scale(&self, c: f64) -> GridFn {
        GridFn {
            grid: Arc::clone(&self.grid),
            values: self.values.iter().map(|v| c * v).collect(),
        }
    }

    pub fn add(&self, other: &GridFn) -> Result<GridFn> {
        if !self.same_grid(other) {
            return Err(Error::GridMismatch);
        }
        Ok(GridFn {
            grid: Arc::clone(&self.grid),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &GridFn) -> Result<GridFn> {
        Ok(self.add(&other.scale(-1.0))?)
    }

    pub fn mul_pointwise(&self, other: &GridFn) -> Result<GridFn> {
        if !self.same_grid(other) {
            return Err(Error::GridMismatch);
        }
        Ok(GridFn {
            grid: Arc::clone(&self.grid),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        })
    }

    /// Two-column CSV with a grid-identifying header line.
    pub fn write_csv(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "# grid={:016x}", self.grid.hash())?;
        writeln!(w, "node,value")?;
        for (x, v) in self.grid.nodes().iter().zip(&self.values) {
            writeln!(w, "{x:.17e},{v:.17e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn weights_normalized() {
        let g = Grid::standard();
        let total: f64 = g.weights().iter().sum();
        assert!((total - 1.0).abs() <= 1e-14);
        assert!(g.is_symmetric());
        assert!(g.nodes().windows(2).all(|w| w[0] < w[1]));
        assert!(g.weights().iter().all(|&w| w > 0.0));
    }

    #[test]
    fn inner_products_basic() {
        let g = Grid::standard();
        let one = GridFn::constant(&g, 1.0);
        let x = GridFn::from_fn(&g, |x| x);
        assert_relative_eq!(one.inner(&one).unwrap(), 1.0, epsilon = 1e-14);
        assert_relative_eq!(x.inner(&one).unwrap(), 0.5, epsilon = 1e-14);
        let s = GridFn::from_fn(&g, |x| (2.0 * PI * x).sin());
        let c = GridFn::from_fn(&g, |x| (2.0 * PI * x).cos());
        assert!(s.inner(&c).unwrap().abs() <= 1e-12);
    }

    #[test]
    fn quadrature_exact_for_panel_polynomials() {
        // degree <= 2m-1 per panel integrates exactly; cross-check a global
        // polynomial against its closed-form integral
        let g = Grid::graded(16, 6, 2.0);
        let f = GridFn::from_fn(&g, |x| x.powi(11) - 3.0 * x.powi(4) + 2.0);
        let exact = 1.0 / 12.0 - 3.0 / 5.0 + 2.0;
        assert_relative_eq!(f.integral(), exact, epsilon = 1e-13);
    }

    #[test]
    fn reflect_and_parity() {
        let g = Grid::standard();
        let x = GridFn::from_fn(&g, |x| x);
        let r = x.reflect().unwrap();
        for (i, &xi) in g.nodes().iter().enumerate() {
            assert_relative_eq!(r.values()[i], 1.0 - xi, epsilon = 1e-15);
        }
        let even = x.parity_project(Parity::Even).unwrap();
        let odd = x.parity_project(Parity::Odd).unwrap();
        for (i, &xi) in g.nodes().iter().enumerate() {
            assert_relative_eq!(even.values()[i], 0.5, epsilon = 1e-15);
            assert_relative_eq!(odd.values()[i], xi - 0.5, epsilon = 1e-15);
        }
        // odd projection of an even function vanishes
        let c = GridFn::from_fn(&g, |x| (PI * (2.0 * x - 1.0)).cos());
        let codd = c.parity_project(Parity::Odd).unwrap();
        assert!(codd.values().iter().all(|v| v.abs() <= 1e-14));
    }

    #[test]
    fn differentiation_on_uniform_grid() {
        let g = Grid::uniform(3, 10);
        let f = GridFn::from_fn(&g, |x| x.powi(3));
        let d2 = f.differentiate(2).unwrap();
        for (i, &xi) in g.nodes().iter().enumerate() {
            assert!((d2.values()[i] - 6.0 * xi).abs() <= 1e-10);
        }
        let s = GridFn::from_fn(&g, |x| (2.0 * x).sin());
        let d1 = s.differentiate(1).unwrap();
        for (i, &xi) in g.nodes().iter().enumerate() {
            assert!((d1.values()[i] - 2.0 * (2.0 * xi).cos()).abs() <= 1e-8);
        }
        let cst = GridFn::constant(&g, 4.2);
        let d = cst.differentiate(1).unwrap();
        assert!(d.values().iter().all(|v| v.abs() <= 1e-11));
    }

    #[test]
    fn derivative_order_errors() {
        let g = Grid::standard();
        let f = GridFn::constant(&g, 1.0);
        assert!(f.differentiate(6).is_err());
    }

    #[test]
    fn interpolation_accuracy() {
        let g = Grid::standard();
        let f = GridFn::from_fn(&g, |x| (3.0 * x).cos() * x);
        for &x in &[0.013, 0.24, 0.5, 0.77, 0.995] {
            assert_relative_eq!(f.eval(x), (3.0 * x).cos() * x, epsilon = 1e-12);
        }
    }

    #[test]
    fn csv_header_and_shape() {
        let g = Grid::graded(4, 3, 2.0);
        let f = GridFn::from_fn(&g, |x| x * x);
        let mut buf = Vec::new();
        f.write_csv(&mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        let mut lines = s.lines();
        assert!(lines.next().unwrap().starts_with("# grid="));
        assert_eq!(lines.next().unwrap(), "node,value");
        assert_eq!(s.lines().count(), 2 + g.node_count());
    }

    proptest! {
        #[test]
        fn reflect_is_involution(coeffs in proptest::collection::vec(-2.0..2.0f64, 5)) {
            let g = Grid::graded(8, 6, 2.0);
            let f = GridFn::from_fn(&g, |x| {
                coeffs.iter().enumerate().map(|(k, c)| c * x.powi(k as i32)).sum()
            });
            let rr = f.reflect().unwrap().reflect().unwrap();
            for (a, b) in f.values().iter().zip(rr.values()) {
                prop_assert_eq!(a.to_bits(), b.to_bits());
            }
        }

        #[test]
        fn parity_parts_sum_to_identity(coeffs in proptest::collection::vec(-2.0..2.0f64, 6)) {
            let g = Grid::graded(8, 6, 2.0);
            let f = GridFn::from_fn(&g, |x| {
                coeffs.iter().enumerate().map(|(k, c)| c * (1.3 * x + 0.2 * k as f64).sin()).sum()
            });
            let e = f.parity_project(Parity::Even).unwrap();
            let o = f.parity_project(Parity::Odd).unwrap();
            let sum = e.add(&o).unwrap();
            for (a, b) in f.values().iter().zip(sum.values()) {
                prop_assert!((a - b).abs() <= 1e-15 * (1.0 + a.abs()));
            }
            // orthogonality of the projection pair
            prop_assert!(e.inner(&o).unwrap().abs() <= 1e-12);
        }
    }
}
