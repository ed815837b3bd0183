//! Closed-form walk distributions from Chebyshev polynomials evaluated at the
//! Laurent argument `X = s (z + 1/z) / 2`.
//!
//! `U^n` acting on the two seed vectors is encoded by four real Laurent
//! polynomials
//!
//! ```text
//! p1 = T_n(X) + (s/2)(z - 1/z) U_{n-1}(X)     p2 =  t z     U_{n-1}(X)
//! q1 = -t z^{-1} U_{n-1}(X)                   q2 = T_n(X) - (s/2)(z - 1/z) U_{n-1}(X)
//! ```
//!
//! whose coefficient of `z^x` is the amplitude at site `x`. The Chebyshev
//! factors come from the three-term recurrence carried out directly on the
//! Laurent coefficients, which costs `O(n)` per step.

use num_complex::Complex64;

use crate::coin::{check_unit, Spinor};
use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::output::{csv_row, fmt_f64};
use crate::quad::circle_mean;

/// Tolerance on `s^2 + t^2 = 1` for caller-supplied parameters.
pub const PARAM_TOL: f64 = 1e-10;

/// Largest tolerated disagreement between the two sides of
/// [`cross_series`].
pub const CROSS_TOL: f64 = 1e-6;

pub fn check_params(s: f64, t: f64) -> Result<()> {
    if !(s > 0.0 && s < 1.0 && t > 0.0 && t < 1.0) {
        return Err(Error::ParamViolation(format!(
            "need 0 < s, t < 1 (got s = {s}, t = {t})"
        )));
    }
    if (s * s + t * t - 1.0).abs() > PARAM_TOL {
        return Err(Error::ParamViolation(format!(
            "s^2 + t^2 = {} (expected 1)",
            s * s + t * t
        )));
    }
    Ok(())
}

/// Successive pairs `(T_n(X), U_{n-1}(X))` for `n = 0, 1, 2, ...`.
#[derive(Clone, Debug)]
pub struct ChebyshevPairs {
    half_s: f64,
    t_prev: LaurentPoly,
    t_cur: LaurentPoly,
    u_prev: LaurentPoly,
    u_cur: LaurentPoly,
    n: usize,
}

impl ChebyshevPairs {
    pub fn new(s: f64) -> Self {
        let one = LaurentPoly::constant(1.0);
        Self {
            half_s: 0.5 * s,
            // T_{-1}(X) = X keeps the recurrence uniform
            t_prev: one.mul_z_plus_inv(0.5 * s),
            t_cur: one.clone(),
            // U_{-2} = -1, U_{-1} = 0
            u_prev: LaurentPoly::constant(-1.0),
            u_cur: LaurentPoly::zero(),
            n: 0,
        }
    }

    /// Index `n` of the pair the next call to `next` returns.
    pub fn index(&self) -> usize {
        self.n
    }

    fn advance(prev: &LaurentPoly, cur: &LaurentPoly, s: f64) -> LaurentPoly {
        // 2 X p = s (z + 1/z) p
        &cur.mul_z_plus_inv(s) - prev
    }
}

impl Iterator for ChebyshevPairs {
    type Item = (usize, LaurentPoly, LaurentPoly);

    fn next(&mut self) -> Option<Self::Item> {
        let out = (self.n, self.t_cur.clone(), self.u_cur.clone());
        let s = 2.0 * self.half_s;
        let t_next = Self::advance(&self.t_prev, &self.t_cur, s);
        let u_next = if self.n == 0 {
            LaurentPoly::constant(1.0)
        } else {
            Self::advance(&self.u_prev, &self.u_cur, s)
        };
        self.t_prev = std::mem::replace(&mut self.t_cur, t_next);
        self.u_prev = std::mem::replace(&mut self.u_cur, u_next);
        self.n += 1;
        Some(out)
    }
}

/// Laurent coefficients of `T_n(s (z + 1/z) / 2)`.
pub fn cheb_t_laurent(n: usize, s: f64) -> LaurentPoly {
    ChebyshevPairs::new(s).nth(n).map(|(_, t, _)| t).unwrap()
}

/// Laurent coefficients of `U_m(s (z + 1/z) / 2)`, with `U_{-1} = 0`.
pub fn cheb_u_laurent(m: i64, s: f64) -> LaurentPoly {
    assert!(m >= -1, "U_m is defined here for m >= -1");
    ChebyshevPairs::new(s)
        .nth((m + 1) as usize)
        .map(|(_, _, u)| u)
        .unwrap()
}

/// The four transfer polynomials of `U^n` for one `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransferQuadruple {
    pub n: usize,
    pub p1: LaurentPoly,
    pub p2: LaurentPoly,
    pub q1: LaurentPoly,
    pub q2: LaurentPoly,
}

impl TransferQuadruple {
    fn from_chebyshev(n: usize, s: f64, t: f64, tn: &LaurentPoly, un1: &LaurentPoly) -> Self {
        let tilt = un1.mul_z_minus_inv(0.5 * s);
        Self {
            n,
            p1: tn + &tilt,
            p2: un1.shift(1).scale(t),
            q1: un1.shift(-1).scale(-t),
            q2: tn - &tilt,
        }
    }

    /// `sum_x c_x(p1)^2 + c_x(p2)^2` and the same for `q1, q2`.
    pub fn column_masses(&self) -> (f64, f64) {
        let sq = |p: &LaurentPoly| p.coeffs().iter().map(|c| c * c).sum::<f64>();
        (sq(&self.p1) + sq(&self.p2), sq(&self.q1) + sq(&self.q2))
    }

    fn sites(&self) -> std::ops::RangeInclusive<i64> {
        let n = self.n as i64;
        -n..=n
    }

    /// Site distribution for the operator-picture initial state `psi`.
    pub fn distribution(&self, psi: &Spinor) -> Result<Distribution> {
        check_unit(psi)?;
        let w1 = psi[0].norm_sqr();
        let w2 = psi[1].norm_sqr();
        let cross = 2.0 * (psi[0] * psi[1].conj()).re;
        let probs = self
            .sites()
            .map(|x| {
                let (a1, a2) = (self.p1.coeff(x), self.p2.coeff(x));
                let (b1, b2) = (self.q1.coeff(x), self.q2.coeff(x));
                let v = w1 * (a1 * a1 + a2 * a2)
                    + w2 * (b1 * b1 + b2 * b2)
                    + cross * (a1 * b1 + a2 * b2);
                // the quadratic form is positive semidefinite; clip roundoff
                v.max(0.0)
            })
            .collect();
        Ok(Distribution::new(-(self.n as i64), probs))
    }

    /// The bracketed sums `(P1 + P2, Q1 + Q2, R1 + R2)` at `xi`.
    pub fn char_sums(&self, xi: f64) -> (Complex64, Complex64, Complex64) {
        let mut acc = [Complex64::new(0.0, 0.0); 3];
        for x in self.sites() {
            let (a1, a2) = (self.p1.coeff(x), self.p2.coeff(x));
            let (b1, b2) = (self.q1.coeff(x), self.q2.coeff(x));
            let phase = Complex64::from_polar(1.0, xi * x as f64);
            acc[0] += phase * (a1 * a1 + a2 * a2);
            acc[1] += phase * (b1 * b1 + b2 * b2);
            acc[2] += phase * (a1 * b1 + a2 * b2);
        }
        (acc[0], acc[1], acc[2])
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,p1,p2,q1,q2\n");
        for x in self.sites() {
            out.push_str(&csv_row([
                x.to_string(),
                fmt_f64(self.p1.coeff(x)),
                fmt_f64(self.p2.coeff(x)),
                fmt_f64(self.q1.coeff(x)),
                fmt_f64(self.q2.coeff(x)),
            ]));
        }
        out
    }
}

/// Transfer quadruples for `n = 0, 1, 2, ...` sharing one recurrence.
pub struct TransferSequence {
    pairs: ChebyshevPairs,
    s: f64,
    t: f64,
}

impl TransferSequence {
    pub fn new(s: f64, t: f64) -> Result<Self> {
        check_params(s, t)?;
        Ok(Self {
            pairs: ChebyshevPairs::new(s),
            s,
            t,
        })
    }
}

impl Iterator for TransferSequence {
    type Item = TransferQuadruple;

    fn next(&mut self) -> Option<TransferQuadruple> {
        let (n, tn, un1) = self.pairs.next()?;
        Some(TransferQuadruple::from_chebyshev(
            n, self.s, self.t, &tn, &un1,
        ))
    }
}

/// The transfer polynomials at step `n`. `n = 0` gives the identity.
pub fn transfer_polys(n: usize, s: f64, t: f64) -> Result<TransferQuadruple> {
    Ok(TransferSequence::new(s, t)?.nth(n).unwrap())
}

/// `q_n(psi; x)` for all `x` in `[-n, n]`.
pub fn qn_distribution(psi: &Spinor, n: usize, s: f64, t: f64) -> Result<Distribution> {
    check_unit(psi)?;
    transfer_polys(n, s, t)?.distribution(psi)
}

/// Characteristic-function pieces at `xi` together with their
/// `psi`-weighted combination `E_n(xi)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CharComponents {
    pub p_sum: Complex64,
    pub q_sum: Complex64,
    pub r_sum: Complex64,
    pub total: Complex64,
}

impl CharComponents {
    pub fn combine(psi: &Spinor, p_sum: Complex64, q_sum: Complex64, r_sum: Complex64) -> Self {
        let total = p_sum * psi[0].norm_sqr()
            + q_sum * psi[1].norm_sqr()
            + r_sum * (2.0 * (psi[0] * psi[1].conj()).re);
        Self {
            p_sum,
            q_sum,
            r_sum,
            total,
        }
    }
}

pub fn char_fn_components(
    psi: &Spinor,
    n: usize,
    s: f64,
    t: f64,
    xi: f64,
) -> Result<CharComponents> {
    check_unit(psi)?;
    let quad = transfer_polys(n, s, t)?;
    let (p, q, r) = quad.char_sums(xi);
    Ok(CharComponents::combine(psi, p, q, r))
}

/// `sum_x c_x(p) c_x(q) w^x` from the coefficients.
pub fn cross_series_coeff(p: &LaurentPoly, q: &LaurentPoly, w: Complex64) -> Complex64 {
    let lo = p.lo().max(q.lo());
    let hi = p.hi().min(q.hi());
    (lo..=hi)
        .map(|x| w.powi(x as i32) * (p.coeff(x) * q.coeff(x)))
        .sum()
}

/// Default node count for the contour side: `2 * span + 16` rounded up to a
/// power of two, where `span` bounds `|exponent|` in `p(wz) q(1/z)`.
pub fn default_nodes(p: &LaurentPoly, q: &LaurentPoly) -> usize {
    let span = (p.hi() - q.lo()).abs().max((q.hi() - p.lo()).abs()).max(0) as usize;
    (2 * span + 16).next_power_of_two()
}

/// `(1/2 pi i) \oint p(wz) q(1/z) dz / z` by the trapezoid rule on `nodes`
/// equispaced points of the unit circle.
pub fn cross_series_quadrature(
    p: &LaurentPoly,
    q: &LaurentPoly,
    w: Complex64,
    nodes: usize,
) -> Complex64 {
    circle_mean(nodes, |theta| {
        let z = Complex64::from_polar(1.0, theta);
        p.eval(w * z) * q.eval(z.conj())
    })
}

/// Evaluates the convolution identity from the coefficient side and checks
/// it against the contour side with [`default_nodes`] nodes.
pub fn cross_series(p: &LaurentPoly, q: &LaurentPoly, w: Complex64) -> Result<Complex64> {
    if (w.norm() - 1.0).abs() > PARAM_TOL {
        return Err(Error::ParamViolation(format!(
            "|w| = {} is not on the unit circle",
            w.norm()
        )));
    }
    let nodes = default_nodes(p, q);
    let coeff_side = cross_series_coeff(p, q, w);
    let quad_side = cross_series_quadrature(p, q, w, nodes);
    let gap = (coeff_side - quad_side).norm();
    if gap > CROSS_TOL || !gap.is_finite() {
        return Err(Error::QuadratureDivergence { gap, nodes });
    }
    Ok(coeff_side)
}
