//! Finite realisation of the walk algebra on the cyclic lattice `Z_N`.
//!
//! `V` and `W` are the walks built from the coins
//! `V0 = diag(alpha, conj(alpha))` and `W0 = [[0, beta], [-conj(beta), 0]]`
//! with the lattice shift replaced by the cyclic shift; `sigma` is
//! `diag(1, -1)` on every site. Basis index of `(site x, component c)` is
//! `2x + c`, the same site-major layout as the walk window.
//!
//! The relations `W^2 = -I`, `VW = WV^{-1}`, `sigma W = -W sigma`,
//! `sigma V = V sigma` hold exactly on `Z_N`. The cyclicity condition
//! `<V^x e, e> = 0` only holds for `0 < x < N`: at `x = N` the shift wraps.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coin::Spinor;
use crate::distribution::Distribution;
use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = nalgebra::DVector<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Debug)]
pub struct CyclicRep {
    pub n: usize,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub v: CMatrix,
    pub w: CMatrix,
    pub sigma: CMatrix,
}

/// Walk operator `P tau + Q tau^{-1}` on `Z_N` for a 2x2 coin split by
/// columns.
fn cyclic_walk(n: usize, coin: [[Complex64; 2]; 2]) -> CMatrix {
    let mut m = CMatrix::zeros(2 * n, 2 * n);
    for x in 0..n {
        let right = (x + 1) % n;
        let left = (x + n - 1) % n;
        // column 0 of the coin moves right, column 1 moves left
        for r in 0..2 {
            m[(2 * right + r, 2 * x)] += coin[r][0];
            m[(2 * left + r, 2 * x + 1)] += coin[r][1];
        }
    }
    m
}

impl CyclicRep {
    pub fn new(n: usize, alpha: Complex64, beta: Complex64) -> Result<Self> {
        if n < 3 {
            return Err(Error::ParamViolation(format!("lattice size {n} < 3")));
        }
        for (name, z) in [("alpha", alpha), ("beta", beta)] {
            if (z.norm() - 1.0).abs() > 1e-10 {
                return Err(Error::ParamViolation(format!(
                    "|{name}| = {} != 1",
                    z.norm()
                )));
            }
        }
        let v = cyclic_walk(n, [[alpha, ZERO], [ZERO, alpha.conj()]]);
        let w = cyclic_walk(n, [[ZERO, beta], [-beta.conj(), ZERO]]);
        let sigma = CMatrix::from_fn(2 * n, 2 * n, |i, j| {
            if i != j {
                ZERO
            } else if i % 2 == 0 {
                ONE
            } else {
                -ONE
            }
        });
        Ok(Self {
            n,
            alpha,
            beta,
            v,
            w,
            sigma,
        })
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn identity(&self) -> CMatrix {
        CMatrix::identity(self.dim(), self.dim())
    }

    /// `pi_+ = (I + sigma)/2` and `pi_- = (I - sigma)/2`.
    pub fn projections(&self) -> (CMatrix, CMatrix) {
        let id = self.identity();
        let half = Complex64::from(0.5);
        ((&id + &self.sigma) * half, (&id - &self.sigma) * half)
    }

    /// `X = (V + V*)/2`, `Y = (V - V*)/2i`, `T = X + i sigma Y`.
    pub fn xyt(&self) -> (CMatrix, CMatrix, CMatrix) {
        let vs = self.v.adjoint();
        let x = (&self.v + &vs) * Complex64::from(0.5);
        let y = (&self.v - &vs) / (2.0 * I);
        let t = &x + &self.sigma * &y * I;
        (x, y, t)
    }

    /// `epsilon = V W`.
    pub fn epsilon(&self) -> CMatrix {
        &self.v * &self.w
    }

    /// `U = s V + t W`.
    pub fn walk(&self, s: f64, t: f64) -> CMatrix {
        &self.v * Complex64::from(s) + &self.w * Complex64::from(t)
    }

    /// Seed vector `e = delta_0 (x) (1, 0)`.
    pub fn seed(&self) -> CVector {
        let mut e = CVector::zeros(self.dim());
        e[0] = ONE;
        e
    }
}

pub fn build_rep(n: usize, alpha: Complex64, beta: Complex64) -> Result<CyclicRep> {
    CyclicRep::new(n, alpha, beta)
}

/// Maximum-modulus entry of a matrix.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Residual of every checked identity, keyed by a readable name.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RelationReport {
    pub residuals: BTreeMap<String, f64>,
}

impl RelationReport {
    pub fn failing(&self, tol: f64) -> Vec<String> {
        self.residuals
            .iter()
            .filter(|(_, &r)| r.is_nan() || r > tol)
            .map(|(k, _)| k.clone())
            .collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.values().copied().fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("residual map serialises")
    }
}

/// Names of every identity checked by [`relation_residuals`].
pub const RELATION_NAMES: &[&str] = &[
    "V unitary",
    "W unitary",
    "sigma unitary",
    "W^2 = -I",
    "VW = WV^-1",
    "sigma W + W sigma = 0",
    "sigma V - V sigma = 0",
    "sigma* = sigma",
    "T*T = I",
    "TT* = I",
    "T = pi+ V + pi- V*",
    "V = pi+ T + pi- T*",
    "eps* = -eps",
    "eps* = eps^-1",
    "eps pi+ = pi- eps",
    "eps pi- = pi+ eps",
    "eps W = -V",
    "W eps = -V*",
    "eps V = V* eps",
    "eps sigma + sigma eps = 0",
    "XY = YX",
    "XW = WX",
    "YW + WY = 0",
    "VT = TV",
    "TW = WT",
    "X sigma = sigma X",
    "Y sigma = sigma Y",
    "T sigma = sigma T",
    "(iy + w)^2 = -(y^2 + t^2)",
    "x^2 + y^2 + t^2 = I",
    "x commutes with iy + w",
];

/// Computes the max-abs residual `LHS - RHS` of every identity.
pub fn relation_residuals(rep: &CyclicRep, s: f64, t: f64) -> RelationReport {
    let id = rep.identity();
    let (v, w, sg) = (&rep.v, &rep.w, &rep.sigma);
    let (vs, ws) = (v.adjoint(), w.adjoint());
    let (pp, pm) = rep.projections();
    let (xo, yo, to) = rep.xyt();
    let ts = to.adjoint();
    let eps = rep.epsilon();
    let epss = eps.adjoint();
    let c = Complex64::from;

    let xs = &xo * c(s);
    let ys = &yo * c(s);
    let ws_t = w * c(t);
    let iyw = &ys * I + &ws_t;
    let t2 = &id * c(t * t);

    let r = |m: CMatrix| max_abs(&m);
    let vals = [
        r(&vs * v - &id),
        r(&ws * w - &id),
        r(sg.adjoint() * sg - &id),
        r(w * w + &id),
        r(v * w - w * &vs),
        r(sg * w + w * sg),
        r(sg * v - v * sg),
        r(sg.adjoint() - sg),
        r(&ts * &to - &id),
        r(&to * &ts - &id),
        r(&to - (&pp * v + &pm * &vs)),
        r(v - (&pp * &to + &pm * &ts)),
        r(&epss + &eps),
        r(&epss * &eps - &id),
        r(&eps * &pp - &pm * &eps),
        r(&eps * &pm - &pp * &eps),
        r(&eps * w + v),
        r(w * &eps + &vs),
        r(&eps * v - &vs * &eps),
        r(&eps * sg + sg * &eps),
        r(&xo * &yo - &yo * &xo),
        r(&xo * w - w * &xo),
        r(&yo * w + w * &yo),
        r(v * &to - &to * v),
        r(&to * w - w * &to),
        r(&xo * sg - sg * &xo),
        r(&yo * sg - sg * &yo),
        r(&to * sg - sg * &to),
        r(&iyw * &iyw + (&ys * &ys + &t2)),
        r(&xs * &xs + &ys * &ys + &t2 - &id),
        r(&xs * &iyw - &iyw * &xs),
    ];
    RelationReport {
        residuals: RELATION_NAMES
            .iter()
            .zip(vals)
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
    }
}

/// Checks every identity against `tol`.
pub fn verify_relations(rep: &CyclicRep, s: f64, t: f64, tol: f64) -> Result<RelationReport> {
    let report = relation_residuals(rep, s, t);
    let failing = report.failing(tol);
    if failing.is_empty() {
        Ok(report)
    } else {
        Err(Error::RelationFailure { failing, report })
    }
}

/// The vectors `e_1^x = T^x e` and `e_2^x = T^x eps e` for `x = 0..N`,
/// returned as `(e1, e2)`.
pub fn build_basis(rep: &CyclicRep) -> (Vec<CVector>, Vec<CVector>) {
    let (_, _, t) = rep.xyt();
    let mut e1 = Vec::with_capacity(rep.n);
    let mut e2 = Vec::with_capacity(rep.n);
    let mut a = rep.seed();
    let mut b = rep.epsilon() * rep.seed();
    for _ in 0..rep.n {
        let (na, nb) = (&t * &a, &t * &b);
        e1.push(std::mem::replace(&mut a, na));
        e2.push(std::mem::replace(&mut b, nb));
    }
    (e1, e2)
}

/// Basis vector `e_i^x` for any integer `x`. On `Z_N`, `T^N = alpha^N I`,
/// so indices reduce modulo `N` with a phase `alpha^N` per wrap.
pub fn basis_vector(basis: &[CVector], alpha: Complex64, x: i64) -> CVector {
    let n = basis.len() as i64;
    let wraps = x.div_euclid(n);
    &basis[x.rem_euclid(n) as usize] * alpha.powi((wraps * n) as i32)
}

/// Largest deviation of the Gram matrix of all `2N` basis vectors from the
/// identity.
pub fn gram_residual(e1: &[CVector], e2: &[CVector]) -> f64 {
    let all: Vec<&CVector> = e1.iter().chain(e2.iter()).collect();
    let mut worst: f64 = 0.0;
    for (i, u) in all.iter().enumerate() {
        for (j, v) in all.iter().enumerate() {
            let want = if i == j { ONE } else { ZERO };
            worst = worst.max((v.dotc(u) - want).norm());
        }
    }
    worst
}

/// Largest residual of the basis action
/// `V e1^x = e1^{x+1}`, `V e2^x = e2^{x-1}`, `W e1^x = e2^{x+1}`,
/// `W e2^x = -e1^{x-1}` over all `x` in `Z_N`.
pub fn action_residual(rep: &CyclicRep, e1: &[CVector], e2: &[CVector]) -> f64 {
    let a = rep.alpha;
    let mut worst: f64 = 0.0;
    for x in 0..rep.n as i64 {
        let (u1, u2) = (&e1[x as usize], &e2[x as usize]);
        let checks = [
            &rep.v * u1 - basis_vector(e1, a, x + 1),
            &rep.v * u2 - basis_vector(e2, a, x - 1),
            &rep.w * u1 - basis_vector(e2, a, x + 1),
            &rep.w * u2 + basis_vector(e1, a, x - 1),
        ];
        for d in checks {
            worst = worst.max(d.iter().map(|z| z.norm()).fold(0.0, f64::max));
        }
    }
    worst
}

/// `max_{0 < x < N} |<V^x e, e>|`.
pub fn qwr_check(rep: &CyclicRep) -> f64 {
    qwr_profile(rep)[1..rep.n]
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

/// `|<V^x e, e>|` for `x = 0..=N`. Entry `N` wraps around the cycle.
pub fn qwr_profile(rep: &CyclicRep) -> Vec<f64> {
    let e = rep.seed();
    let mut cur = e.clone();
    let mut out = Vec::with_capacity(rep.n + 1);
    for _ in 0..=rep.n {
        out.push(e.dotc(&cur).norm());
        cur = &rep.v * cur;
    }
    out
}

/// `q_n(psi; x)` computed on the cyclic representation from
/// `|<U^n Psi, e_1^x>|^2 + |<U^n Psi, e_2^x>|^2` for `|x| <= n`. Only
/// meaningful while `2n < N`, before the window wraps.
pub fn cyclic_distribution(
    rep: &CyclicRep,
    s: f64,
    t: f64,
    psi: &Spinor,
    steps: usize,
) -> Result<Distribution> {
    if 2 * steps >= rep.n {
        return Err(Error::ParamViolation(format!(
            "{steps} steps wrap around a lattice of size {}",
            rep.n
        )));
    }
    let (e1, e2) = build_basis(rep);
    let u = rep.walk(s, t);
    let mut state = &e1[0] * psi[0] + &e2[0] * psi[1];
    for _ in 0..steps {
        state = &u * state;
    }
    let n = steps as i64;
    let probs = (-n..=n)
        .map(|x| {
            let b1 = basis_vector(&e1, rep.alpha, x);
            let b2 = basis_vector(&e2, rep.alpha, x);
            b1.dotc(&state).norm_sqr() + b2.dotc(&state).norm_sqr()
        })
        .collect();
    Ok(Distribution::new(-n, probs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(theta: f64) -> Complex64 {
        Complex64::from_polar(1.0, theta)
    }

    #[test]
    fn small_real_rep_is_orthogonal() {
        let rep = build_rep(3, ONE, ONE).unwrap();
        assert_eq!(rep.dim(), 6);
        for m in [&rep.v, &rep.w] {
            assert!(m.iter().all(|z| z.im == 0.0));
            let prod = m.transpose() * m;
            assert!(max_abs(&(prod - rep.identity())) < 1e-15);
        }
        assert!(build_rep(2, ONE, ONE).is_err());
    }

    #[test]
    fn v_power_n_phase() {
        let rep = build_rep(4, I, ONE).unwrap();
        let e = rep.seed();
        let v4 = &rep.v * &rep.v * &rep.v * &rep.v;
        // alpha^4 = 1
        assert!((v4 * &e - &e).iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn w_squares_to_minus_identity() {
        for n in [3, 5, 8] {
            let rep = build_rep(n, unit(0.4), unit(-2.0)).unwrap();
            assert!(max_abs(&(&rep.w * &rep.w + rep.identity())) < 1e-12);
        }
    }

    #[test]
    fn relations_hold() {
        let (s, t) = (0.6, 0.8);
        for (a, b) in [(ONE, ONE), (unit(std::f64::consts::PI / 5.0), unit(1.1))] {
            let rep = build_rep(8, a, b).unwrap();
            let report = verify_relations(&rep, s, t, 1e-12).unwrap();
            assert_eq!(report.residuals.len(), RELATION_NAMES.len());
        }
    }

    #[test]
    fn perturbed_w_is_caught() {
        let mut rep = build_rep(8, ONE, ONE).unwrap();
        let bump = CMatrix::from_fn(16, 16, |i, j| {
            Complex64::new(((i * 7 + j * 3) % 5) as f64 / 5.0, 0.0)
        });
        rep.w += bump * Complex64::from(0.01);
        match verify_relations(&rep, 0.6, 0.8, 1e-12) {
            Err(Error::RelationFailure { failing, .. }) => {
                assert!(failing.iter().any(|f| f == "W^2 = -I"));
            }
            other => panic!("expected RelationFailure, got {other:?}"),
        }
    }

    #[test]
    fn basis_examples() {
        let (alpha, beta) = (unit(0.3), unit(-1.2));
        let rep = build_rep(6, alpha, beta).unwrap();
        let (e1, e2) = build_basis(&rep);
        let want = -alpha.conj() * beta.conj();
        assert!((e2[0][1] - want).norm() < 1e-15);
        assert!(e2[0]
            .iter()
            .enumerate()
            .all(|(i, z)| i == 1 || z.norm() == 0.0));
        for x in 0..6 {
            assert!((e1[x][2 * x] - alpha.powi(x as i32)).norm() < 1e-14);
            let want = -alpha.powi(x as i32 - 1) * beta.conj();
            assert!((e2[x][2 * x + 1] - want).norm() < 1e-14);
        }
        assert!(gram_residual(&e1, &e2) < 1e-12);
        assert!(action_residual(&rep, &e1, &e2) < 1e-12);
    }

    #[test]
    fn qwr_examples() {
        for n in [3, 5] {
            let rep = build_rep(n, unit(0.9), unit(0.2)).unwrap();
            assert!(qwr_check(&rep) < 1e-14);
            let prof = qwr_profile(&rep);
            assert!((prof[n] - 1.0).abs() < 1e-14);
            assert!((prof[0] - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn report_json_round_trip() {
        let rep = build_rep(3, ONE, ONE).unwrap();
        let report = relation_residuals(&rep, 0.6, 0.8);
        let back: RelationReport = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(back, report);
        let raw: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert!(raw.get("W^2 = -I").is_some());
    }
}
