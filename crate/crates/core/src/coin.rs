//! Special-unitary coins `[[a, b], [-conj(b), conj(a)]]`, their column split
//! `A = P + Q`, polar parameters and the initial-state map between the walk
//! picture (`phi`) and the abstract operator picture (`psi`).

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Two-component amplitude.
pub type Spinor = [Complex64; 2];

/// Row-major 2x2 complex matrix.
pub type Mat2 = [[Complex64; 2]; 2];

/// Tolerance on `|a|^2 + |b|^2 = 1` for values coming from outside.
pub const INPUT_TOL: f64 = 1e-10;

/// Tolerance for values constructed internally.
pub const INTERNAL_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

pub fn norm_sq(v: &Spinor) -> f64 {
    v[0].norm_sqr() + v[1].norm_sqr()
}

/// Checks that `v` is a unit vector to within [`INPUT_TOL`].
pub fn check_unit(v: &Spinor) -> Result<()> {
    let norm_sq = norm_sq(v);
    if (norm_sq - 1.0).abs() > INPUT_TOL || !norm_sq.is_finite() {
        return Err(Error::NormViolation { norm_sq });
    }
    Ok(())
}

pub fn apply(m: &Mat2, u: &Spinor) -> Spinor {
    [
        m[0][0] * u[0] + m[0][1] * u[1],
        m[1][0] * u[0] + m[1][1] * u[1],
    ]
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoinMatrix {
    a: Complex64,
    b: Complex64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarParams {
    pub s: f64,
    pub t: f64,
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl CoinMatrix {
    /// Validates `|a|^2 + |b|^2 = 1`. Coins with a zero entry are accepted
    /// here; operations that need both entries non-zero reject them later.
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        check_unit(&[a, b])?;
        Ok(Self { a, b })
    }

    /// The Hadamard-type coin `a = b = 1/sqrt(2)`.
    pub fn hadamard() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            a: Complex64::new(h, 0.0),
            b: Complex64::new(h, 0.0),
        }
    }

    /// Builds `a = s*alpha`, `b = t*beta` from polar data.
    pub fn from_polar(p: &PolarParams) -> Result<Self> {
        Self::new(p.alpha * p.s, p.beta * p.t)
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == ZERO || self.b == ZERO
    }

    pub fn matrix(&self) -> Mat2 {
        [[self.a, self.b], [-self.b.conj(), self.a.conj()]]
    }

    /// `P = [[a, 0], [-conj(b), 0]]`, `Q = [[0, b], [0, conj(a)]]`.
    pub fn split(&self) -> (Mat2, Mat2) {
        let p = [[self.a, ZERO], [-self.b.conj(), ZERO]];
        let q = [[ZERO, self.b], [ZERO, self.a.conj()]];
        (p, q)
    }

    pub fn polar(&self) -> Result<PolarParams> {
        if self.is_degenerate() {
            return Err(Error::DegenerateCoin);
        }
        let s = self.a.norm();
        let t = self.b.norm();
        Ok(PolarParams {
            s,
            t,
            alpha: self.a / s,
            beta: self.b / t,
        })
    }
}

pub fn make_coin(a: Complex64, b: Complex64) -> Result<CoinMatrix> {
    CoinMatrix::new(a, b)
}

pub fn split(c: &CoinMatrix) -> (Mat2, Mat2) {
    c.split()
}

pub fn polar(c: &CoinMatrix) -> Result<PolarParams> {
    c.polar()
}

/// Maps a walk initial state `phi` to the operator-picture state
/// `psi = (phi_1, -alpha*beta*phi_2)`.
pub fn psi_from_phi(phi: &Spinor, p: &PolarParams) -> Result<Spinor> {
    check_unit(phi)?;
    Ok([phi[0], -p.alpha * p.beta * phi[1]])
}

/// Inverse of [`psi_from_phi`].
pub fn phi_from_psi(psi: &Spinor, p: &PolarParams) -> Result<Spinor> {
    check_unit(psi)?;
    Ok([psi[0], -(p.alpha * p.beta).conj() * psi[1]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2 as H;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn mat_close(m: &Mat2, n: &Mat2, tol: f64) -> bool {
        (0..2).all(|i| (0..2).all(|j| (m[i][j] - n[i][j]).norm() <= tol))
    }

    #[test]
    fn accepts_and_rejects() {
        assert!(make_coin(c(H, 0.0), c(H, 0.0)).is_ok());
        let id = make_coin(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!(id.is_degenerate());
        assert!(matches!(
            make_coin(c(0.9, 0.0), c(0.5, 0.0)),
            Err(Error::NormViolation { .. })
        ));
    }

    #[test]
    fn split_examples() {
        let (p, q) = CoinMatrix::hadamard().split();
        let z = c(0.0, 0.0);
        assert!(mat_close(&p, &[[c(H, 0.0), z], [c(-H, 0.0), z]], 0.0));
        assert!(mat_close(&q, &[[z, c(H, 0.0)], [z, c(H, 0.0)]], 0.0));

        let (p, q) = make_coin(c(1.0, 0.0), z).unwrap().split();
        assert!(mat_close(&p, &[[c(1.0, 0.0), z], [z, z]], 0.0));
        assert!(mat_close(&q, &[[z, z], [z, c(1.0, 0.0)]], 0.0));
    }

    #[test]
    fn coin_matrix_is_special_unitary() {
        let coin = make_coin(c(0.3, 0.4), c(0.0, 0.75f64.sqrt())).unwrap();
        let m = coin.matrix();
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        assert!((det - c(1.0, 0.0)).norm() < INTERNAL_TOL);
        for i in 0..2 {
            for j in 0..2 {
                let dot: Complex64 = (0..2).map(|k| m[k][i].conj() * m[k][j]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot - c(want, 0.0)).norm() < INTERNAL_TOL);
            }
        }
    }

    #[test]
    fn polar_examples() {
        let p = CoinMatrix::hadamard().polar().unwrap();
        assert!((p.s - H).abs() < 1e-15 && (p.t - H).abs() < 1e-15);
        assert!((p.alpha - c(1.0, 0.0)).norm() < 1e-15);
        assert!((p.beta - c(1.0, 0.0)).norm() < 1e-15);

        let coin = make_coin(c(0.0, 0.5), c(3f64.sqrt() / 2.0, 0.0)).unwrap();
        let p = coin.polar().unwrap();
        assert!((p.s - 0.5).abs() < 1e-15);
        assert!((p.t - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert!((p.alpha - c(0.0, 1.0)).norm() < 1e-15);
        assert!((p.beta - c(1.0, 0.0)).norm() < 1e-15);

        let id = make_coin(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!(matches!(id.polar(), Err(Error::DegenerateCoin)));
    }

    #[test]
    fn psi_phi_examples() {
        let p = CoinMatrix::hadamard().polar().unwrap();
        let psi = psi_from_phi(&[c(1.0, 0.0), c(0.0, 0.0)], &p).unwrap();
        assert_eq!(psi, [c(1.0, 0.0), c(0.0, 0.0)]);

        let psi = psi_from_phi(&[c(H, 0.0), c(0.0, H)], &p).unwrap();
        assert!((psi[0] - c(H, 0.0)).norm() < 1e-15);
        assert!((psi[1] - c(0.0, -H)).norm() < 1e-15);

        let p = PolarParams {
            s: 0.5,
            t: 3f64.sqrt() / 2.0,
            alpha: c(0.0, 1.0),
            beta: c(1.0, 0.0),
        };
        let psi = psi_from_phi(&[c(0.0, 0.0), c(1.0, 0.0)], &p).unwrap();
        assert!((psi[1] - c(0.0, -1.0)).norm() < 1e-15);

        assert!(matches!(
            psi_from_phi(&[c(2.0, 0.0), c(0.0, 0.0)], &p),
            Err(Error::NormViolation { .. })
        ));
    }
}
