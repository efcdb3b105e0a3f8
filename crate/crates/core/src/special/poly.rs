//! The polynomial families attached to half-integer Bessel functions.
//!
//! `P_l` and `Q_l` are the trigonometric-form coefficients,
//!
//! ```text
//! J_{l+1/2}(z) = sqrt(2/(pi z)) [ P_l(1/z) sin z - Q_{l-1}(1/z) cos z ],
//! ```
//!
//! with the three-term recursions
//!
//! ```text
//! P_{l+1}(t) = (2l+1) t P_l(t) - P_{l-1}(t),    P_0 = 1, P_1 = t,
//! Q_{l+1}(t) = (2l+3) t Q_l(t) - Q_{l-1}(t),    Q_{-1} = 0, Q_0 = 1.
//! ```
//!
//! From these, `Atilde_l(z) = z^l P_l(1/z) - i z^l Q_{l-1}(1/z)` satisfies
//! `Atilde_{l+1} = (2l+1) Atilde_l - z^2 Atilde_{l-1}`, and the real
//! obstruction polynomials are `A_l(t) = Atilde_l(t/2i)`:
//!
//! ```text
//! A_0 = 1,  A_1 = 1 - t/2,  A_{l+1}(t) = (2l+1) A_l(t) + (t^2/4) A_{l-1}(t).
//! ```
//!
//! All recursions are carried out in exact rational arithmetic and only
//! converted to floating point at evaluation time.

use super::MAX_ELL;
use num_complex::Complex64;
use num_rational::Ratio;

type Q = Ratio<i128>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyKind {
    /// `P_l`, degree `l`, parity of `l`.
    P,
    /// `Q_l`, degree `l`, parity of `l` (`Q_{-1}` is the zero polynomial).
    Q,
    /// `Atilde_l`, complex coefficients; even real part, odd imaginary part.
    ATilde,
    /// `A_l(t)`, real coefficients.
    AObstruction,
}

/// A member of one of the four polynomial families, lowest degree first.
#[derive(Debug, Clone)]
pub struct PolySeq {
    pub kind: PolyKind,
    /// Degree of the polynomial (0 for the zero polynomial `Q_{-1}`).
    pub degree: usize,
    /// Real parts of the coefficients, exact.
    re: Vec<Q>,
    /// Imaginary parts (all zero except for `ATilde`).
    im: Vec<Q>,
}

impl PolySeq {
    fn real(kind: PolyKind, re: Vec<Q>) -> Self {
        let degree = re.len().saturating_sub(1);
        let im = vec![Q::from_integer(0); re.len()];
        PolySeq { kind, degree, re, im }
    }

    /// Coefficients as floating point, lowest degree first.
    pub fn coeffs(&self) -> Vec<f64> {
        self.re.iter().map(ratio_to_f64).collect()
    }

    /// Imaginary coefficient parts as floating point.
    pub fn coeffs_im(&self) -> Vec<f64> {
        self.im.iter().map(ratio_to_f64).collect()
    }

    /// Exact rational coefficient accessor (real part), for tests.
    pub fn coeff_exact(&self, k: usize) -> (i128, i128) {
        let c = self.re.get(k).copied().unwrap_or_else(|| Q::from_integer(0));
        (*c.numer(), *c.denom())
    }

    /// Horner evaluation at a real point (real-coefficient families).
    pub fn eval(&self, t: f64) -> f64 {
        debug_assert!(self.kind != PolyKind::ATilde);
        let mut acc = 0.0;
        for &c in self.re.iter().rev() {
            acc = acc * t + ratio_to_f64(&c);
        }
        acc
    }

    /// Horner evaluation at a complex point, using both coefficient parts.
    pub fn eval_c(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in (0..self.re.len()).rev() {
            let c = Complex64::new(ratio_to_f64(&self.re[k]), ratio_to_f64(&self.im[k]));
            acc = acc * z + c;
        }
        acc
    }

    /// Derivative of the differential-operator polynomial applied as
    /// `sum_k c_k D^k`: returns the coefficient list itself.
    pub fn len(&self) -> usize {
        self.re.len()
    }

    pub fn is_empty(&self) -> bool {
        self.re.is_empty()
    }
}

fn ratio_to_f64(q: &Q) -> f64 {
    (*q.numer() as f64) / (*q.denom() as f64)
}

fn qi(n: i128) -> Q {
    Q::from_integer(n)
}

/// `(P_l, Q_{l-1})` by the three-term recursions.
pub fn pq_polynomials(ell: u32) -> (PolySeq, PolySeq) {
    assert!(ell <= MAX_ELL);
    // P_0..P_ell
    let mut p_prev = vec![qi(1)]; // P_0
    let mut p_cur = vec![qi(0), qi(1)]; // P_1 = t
    if ell == 0 {
        return (
            PolySeq::real(PolyKind::P, p_prev),
            PolySeq { kind: PolyKind::Q, degree: 0, re: vec![], im: vec![] }, // Q_{-1} = 0
        );
    }
    for l in 1..ell as i128 {
        let next = three_term(&p_cur, &p_prev, 2 * l + 1, -1);
        p_prev = std::mem::replace(&mut p_cur, next);
    }
    let p = p_cur;

    // Q_{-1} = 0, Q_0 = 1, Q_{l+1} = (2l+3) t Q_l - Q_{l-1}
    let mut q_prev: Vec<Q> = vec![]; // Q_{-1}
    let mut q_cur = vec![qi(1)]; // Q_0
    for l in 0..ell as i128 - 1 {
        let next = three_term(&q_cur, &q_prev, 2 * l + 3, -1);
        q_prev = std::mem::replace(&mut q_cur, next);
    }
    let q = q_cur; // Q_{ell-1}
    let qdeg = q.len().saturating_sub(1);
    (
        PolySeq::real(PolyKind::P, p),
        PolySeq { kind: PolyKind::Q, degree: qdeg, im: vec![qi(0); q.len()], re: q },
    )
}

/// `next = a * t * cur + b * prev`, exact.
fn three_term(cur: &[Q], prev: &[Q], a: i128, b: i128) -> Vec<Q> {
    let n = cur.len() + 1;
    let mut out = vec![qi(0); n.max(prev.len())];
    for (k, c) in cur.iter().enumerate() {
        out[k + 1] += qi(a) * c;
    }
    for (k, c) in prev.iter().enumerate() {
        out[k] += qi(b) * c;
    }
    out
}

/// `Atilde_l(z)` with Gaussian-rational coefficients.
pub fn a_tilde_polynomial(ell: u32) -> PolySeq {
    assert!(ell <= MAX_ELL);
    // pairs (re, im) per coefficient
    let mut prev: Vec<(Q, Q)> = vec![(qi(1), qi(0))]; // Atilde_0 = 1
    let mut cur: Vec<(Q, Q)> = vec![(qi(1), qi(0)), (qi(0), qi(-1))]; // Atilde_1 = 1 - i z
    if ell == 0 {
        return pack_atilde(prev);
    }
    for l in 1..ell as i128 {
        // Atilde_{l+1} = (2l+1) Atilde_l - z^2 Atilde_{l-1}
        let n = (cur.len() + 2).max(prev.len() + 2);
        let mut next = vec![(qi(0), qi(0)); n];
        for (k, (re, im)) in cur.iter().enumerate() {
            next[k].0 += qi(2 * l + 1) * re;
            next[k].1 += qi(2 * l + 1) * im;
        }
        for (k, (re, im)) in prev.iter().enumerate() {
            next[k + 2].0 -= *re;
            next[k + 2].1 -= *im;
        }
        while next.len() > 1 && next.last() == Some(&(qi(0), qi(0))) {
            next.pop();
        }
        prev = std::mem::replace(&mut cur, next);
    }
    pack_atilde(cur)
}

fn pack_atilde(cs: Vec<(Q, Q)>) -> PolySeq {
    let degree = cs.len().saturating_sub(1);
    let (re, im) = cs.into_iter().unzip();
    PolySeq { kind: PolyKind::ATilde, degree, re, im }
}

/// The real obstruction polynomials `A_l(t) = Atilde_l(t/2i)`.
///
/// Generated directly from the real recursion
/// `A_{l+1} = (2l+1) A_l + (t^2/4) A_{l-1}`.
pub fn a_polynomial(ell: u32) -> PolySeq {
    assert!(ell <= MAX_ELL);
    let half = Q::new(-1, 2);
    let quarter = Q::new(1, 4);
    let mut prev = vec![qi(1)]; // A_0
    let mut cur = vec![qi(1), half]; // A_1 = 1 - t/2
    if ell == 0 {
        return PolySeq::real(PolyKind::AObstruction, prev);
    }
    for l in 1..ell as i128 {
        let n = (cur.len()).max(prev.len() + 2);
        let mut next = vec![qi(0); n];
        for (k, c) in cur.iter().enumerate() {
            next[k] += qi(2 * l + 1) * c;
        }
        for (k, c) in prev.iter().enumerate() {
            next[k + 2] += quarter * c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    let coeffs = cur;
    PolySeq::real(PolyKind::AObstruction, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn coeffs(p: &PolySeq) -> Vec<f64> {
        p.coeffs()
    }

    #[test]
    fn first_pq_values() {
        // P_2 = 3t^2 - 1, Q_1 = 3t
        let (p2, q1) = pq_polynomials(2);
        assert_eq!(coeffs(&p2), vec![-1.0, 0.0, 3.0]);
        assert_eq!(coeffs(&q1), vec![0.0, 3.0]);
        // P_3 = 15t^3 - 6t, Q_2 = 15t^2 - 1
        let (p3, q2) = pq_polynomials(3);
        assert_eq!(coeffs(&p3), vec![0.0, -6.0, 0.0, 15.0]);
        assert_eq!(coeffs(&q2), vec![-1.0, 0.0, 15.0]);
        // P_0 = 1, Q_{-1} = 0
        let (p0, qm1) = pq_polynomials(0);
        assert_eq!(coeffs(&p0), vec![1.0]);
        assert!(qm1.is_empty());
        // P_1 = t, Q_0 = 1
        let (p1, q0) = pq_polynomials(1);
        assert_eq!(coeffs(&p1), vec![0.0, 1.0]);
        assert_eq!(coeffs(&q0), vec![1.0]);
    }

    #[test]
    fn pq_parity() {
        // P_l(-t) = (-1)^l P_l(t): odd-index coefficients vanish when l even, etc.
        for ell in 0..=8u32 {
            let (p, q) = pq_polynomials(ell);
            for (k, c) in p.coeffs().iter().enumerate() {
                if (k + ell as usize) % 2 == 1 {
                    assert_eq!(*c, 0.0, "P_{ell} coefficient {k}");
                }
            }
            // Q_{ell-1} has the parity of ell-1, i.e. opposite to ell
            for (k, c) in q.coeffs().iter().enumerate() {
                if (k + ell as usize) % 2 == 0 && ell > 0 {
                    assert_eq!(*c, 0.0, "Q_{} coefficient {k}", ell as i32 - 1);
                }
            }
        }
    }

    #[test]
    fn obstruction_polynomials() {
        // A_2 = t^2/4 - 3t/2 + 3
        let a2 = a_polynomial(2);
        assert_eq!(coeffs(&a2), vec![3.0, -1.5, 0.25]);
        // A_3 = -t^3/8 + 3t^2/2 - 15t/2 + 15
        let a3 = a_polynomial(3);
        assert_eq!(coeffs(&a3), vec![15.0, -7.5, 1.5, -0.125]);
        // A_0 = 1
        assert_eq!(coeffs(&a_polynomial(0)), vec![1.0]);
    }

    #[test]
    fn a_from_a_tilde_is_real() {
        // A_l(t) = Atilde_l(t/2i); the imaginary residue must vanish exactly.
        for ell in 0..=8u32 {
            let at = a_tilde_polynomial(ell);
            let a = a_polynomial(ell);
            for &t in &[-1.7, -0.3, 0.0, 0.4, 2.2] {
                let z = Complex64::new(0.0, -t / 2.0); // t/(2i) = -i t/2
                let v = at.eval_c(z);
                assert!(
                    (v.im).abs() <= 1e-14 * (1.0 + v.re.abs()),
                    "imaginary residue for l={ell}: {}",
                    v.im
                );
                assert!((v.re - a.eval(t)).abs() <= 1e-12 * (1.0 + v.re.abs()));
            }
        }
    }

    #[test]
    fn a_tilde_parity_structure() {
        // even real part, odd imaginary part in z
        for ell in 1..=8u32 {
            let at = a_tilde_polynomial(ell);
            let re = at.coeffs();
            let im = at.coeffs_im();
            for (k, c) in re.iter().enumerate() {
                if k % 2 == 1 {
                    assert_eq!(*c, 0.0);
                }
                let _ = c;
            }
            for (k, c) in im.iter().enumerate() {
                if k % 2 == 0 {
                    assert_eq!(*c, 0.0);
                }
            }
        }
    }
}
