//! The weak-limit law of `X_n / n` and the oscillatory integrals that lead
//! to it.
//!
//! Every integral over `(-s, s)` is taken after the substitution
//! `y = s sin(theta)` (or `y = s cos(theta)`), which absorbs the
//! `1/sqrt(s^2 - y^2)` endpoint singularity and leaves a smooth integrand
//! for composite Gauss-Legendre.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::cheb::check_params;
use crate::coin::{check_unit, CoinMatrix, Spinor};
use crate::error::{Error, Result};
use crate::quad::{circle_mean, integrate, integrate_complex};

/// Absolute accuracy target for the limit-law quadratures.
pub const QUAD_TOL: f64 = 1e-12;

/// Largest tolerated `|B + C|` between the two independently computed
/// antisymmetric limits.
pub const ANTISYMMETRY_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitDensity {
    s: f64,
    t: f64,
    lambda: f64,
}

impl LimitDensity {
    pub fn new(s: f64, t: f64, lambda: f64) -> Result<Self> {
        check_params(s, t)?;
        if lambda.is_nan() || lambda.abs() > 1.0 / s + 1e-12 {
            return Err(Error::ParamViolation(format!(
                "|lambda| = {} exceeds 1/s = {}",
                lambda.abs(),
                1.0 / s
            )));
        }
        Ok(Self { s, t, lambda })
    }

    /// Limit law for the operator-picture state `psi`.
    pub fn from_psi(psi: &Spinor, s: f64, t: f64) -> Result<Self> {
        Self::new(s, t, lambda_psi(psi, s, t)?)
    }

    /// Limit law for the walk with coin `coin` started from `delta_0 (x) phi`.
    pub fn from_coin(phi: &Spinor, coin: &CoinMatrix) -> Result<Self> {
        let p = coin.polar()?;
        Self::new(p.s, p.t, lambda_phi(phi, coin)?)
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn density(&self, y: f64) -> f64 {
        let (s, t) = (self.s, self.t);
        if y.is_nan() || y.abs() >= s {
            return 0.0;
        }
        t * (1.0 + self.lambda * y) / (PI * (1.0 - y * y) * (s * s - y * y).sqrt())
    }

    /// The density in the angle variable `y = s sin(theta)`, including the
    /// Jacobian.
    fn angular(&self, theta: f64) -> f64 {
        let sy = self.s * theta.sin();
        self.t * (1.0 + self.lambda * sy) / (PI * (1.0 - sy * sy))
    }

    pub fn cdf(&self, y: f64) -> Result<f64> {
        if y <= -self.s {
            return Ok(0.0);
        }
        let upper = (y / self.s).min(1.0).asin();
        integrate(|th| self.angular(th), -FRAC_PI_2, upper, 2, QUAD_TOL)
    }

    /// `E[Y]` under the limit law.
    pub fn mean(&self) -> Result<f64> {
        integrate(
            |th| self.s * th.sin() * self.angular(th),
            -FRAC_PI_2,
            FRAC_PI_2,
            2,
            QUAD_TOL,
        )
    }

    /// `E[exp(i xi Y)]` under the limit law.
    pub fn char_fn(&self, xi: f64) -> Result<Complex64> {
        let panels = 4 + (xi.abs() * self.s).ceil() as usize;
        integrate_complex(
            |th| Complex64::from_polar(self.angular(th), xi * self.s * th.sin()),
            -FRAC_PI_2,
            FRAC_PI_2,
            panels,
            QUAD_TOL,
        )
    }
}

/// `|psi_1|^2 - |psi_2|^2 + 2 Re(psi_1 conj(psi_2)) t / s`.
pub fn lambda_psi(psi: &Spinor, s: f64, t: f64) -> Result<f64> {
    check_params(s, t)?;
    check_unit(psi)?;
    Ok(psi[0].norm_sqr() - psi[1].norm_sqr() + 2.0 * (psi[0] * psi[1].conj()).re * t / s)
}

/// Asymmetry parameter written directly in terms of the coin entries and
/// the walk initial state `phi`.
pub fn lambda_phi(phi: &Spinor, coin: &CoinMatrix) -> Result<f64> {
    if coin.is_degenerate() {
        return Err(Error::DegenerateCoin);
    }
    check_unit(phi)?;
    let (a, b) = (coin.a(), coin.b());
    let w = a * b * phi[0].conj() * phi[1];
    let corr = w + (a.conj() * b.conj() * phi[0] * phi[1].conj());
    debug_assert!(corr.im.abs() < 1e-12, "correction term is not real: {corr}");
    Ok(phi[0].norm_sqr() - phi[1].norm_sqr() - corr.re / a.norm_sqr())
}

pub fn density(d: &LimitDensity, y: f64) -> f64 {
    d.density(y)
}

pub fn cdf(d: &LimitDensity, y: f64) -> Result<f64> {
    d.cdf(y)
}

pub fn limit_char_fn(d: &LimitDensity, xi: f64) -> Result<Complex64> {
    d.char_fn(xi)
}

/// The four contour integrals `A, B, C, D` (or their limits).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymValues {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl AsymValues {
    pub fn as_array(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Componentwise `|self - other|`.
    pub fn gaps(&self, other: &AsymValues) -> [f64; 4] {
        let (x, y) = (self.as_array(), other.as_array());
        [0, 1, 2, 3].map(|i| (x[i] - y[i]).norm())
    }
}

fn check_s(s: f64) -> Result<()> {
    if s > 0.0 && s < 1.0 {
        Ok(())
    } else {
        Err(Error::ParamViolation(format!("need 0 < s < 1 (got {s})")))
    }
}

/// Node count used by [`asym_integrals`].
pub fn asym_nodes(n: usize, k: i64) -> usize {
    4 * n + 4 * k.unsigned_abs() as usize + 64
}

/// `A_{n,k}(xi) .. D_{n,k}(xi)`: contour integrals over `|z| = 1` of
/// `z^k F(s(e^{i xi/n} z + e^{-i xi/n}/z)/2) G(s(z + 1/z)/2) dz / (2 pi i z)`
/// with `F, G` ranging over `T_n, U_{n-1}`, by the trapezoid rule.
pub fn asym_integrals(n: usize, k: i64, xi: f64, s: f64) -> Result<AsymValues> {
    check_s(s)?;
    if n == 0 {
        return Err(Error::ParamViolation("n must be positive".into()));
    }
    let nf = n as f64;
    let cheb = |theta: f64| {
        let f = (s * theta.cos()).acos();
        ((nf * f).cos(), (nf * f).sin() / f.sin())
    };
    let nodes = asym_nodes(n, k);
    let mut out = [Complex64::new(0.0, 0.0); 4];
    for (slot, which) in out.iter_mut().zip(0..4) {
        *slot = circle_mean(nodes, |theta| {
            let (t_shift, u_shift) = cheb(theta + xi / nf);
            let (t0, u0) = cheb(theta);
            let v = match which {
                0 => t_shift * t0,
                1 => t_shift * u0,
                2 => u_shift * t0,
                _ => u_shift * u0,
            };
            Complex64::from_polar(v, k as f64 * theta)
        });
    }
    if out.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::QuadratureFailure(format!(
            "non-finite contour integral at n = {n}, k = {k}"
        )));
    }
    let [a, b, c, d] = out;
    Ok(AsymValues { a, b, c, d })
}

/// Limits of [`asym_integrals`] as `n -> infinity`.
///
/// `B` comes from the integral over `x in (-s, s)` with `x = s sin(u)`; `C`
/// from the angle form `theta in (0, pi)` of the same limit. Their sum must
/// vanish, which is checked against [`ANTISYMMETRY_TOL`].
pub fn asym_limits(k: i64, xi: f64, s: f64) -> Result<AsymValues> {
    check_s(s)?;
    let zero = Complex64::new(0.0, 0.0);
    let even = k.rem_euclid(2) == 0;
    let panels = 8 + k.unsigned_abs() as usize + xi.abs().ceil() as usize;
    let kf = k as f64;
    let phase = |xs: f64| Complex64::from_polar(1.0, kf * xs.acos());

    if even {
        // x = s cos(phi): e_k = e^{i k phi}, dx / sqrt(s^2 - x^2) = d phi
        let arg = |phi: f64| {
            let c2 = 1.0 - (s * phi.cos()).powi(2);
            (xi * s * phi.sin() / c2.sqrt(), c2)
        };
        let a = integrate_complex(
            |phi| {
                let (g, _) = arg(phi);
                Complex64::from_polar(g.cos(), kf * phi)
            },
            0.0,
            PI,
            panels,
            QUAD_TOL,
        )? / (2.0 * PI);
        let d = integrate_complex(
            |phi| {
                let (g, c2) = arg(phi);
                Complex64::from_polar(g.cos() / c2, kf * phi)
            },
            0.0,
            PI,
            panels,
            QUAD_TOL,
        )? / (2.0 * PI);
        return Ok(AsymValues {
            a,
            b: zero,
            c: zero,
            d,
        });
    }

    // x = s sin(u), u in (-pi/2, pi/2)
    let b = -integrate_complex(
        |u| {
            let x = s * u.sin();
            let root = (1.0 - x * x).sqrt();
            phase(x / s) * ((xi * s * u.cos() / root).sin() / root)
        },
        -FRAC_PI_2,
        FRAC_PI_2,
        panels,
        QUAD_TOL,
    )? / (2.0 * PI);
    // theta form with f(theta) = acos(s cos(theta))
    let c = integrate_complex(
        |theta| {
            let f = (s * theta.cos()).acos();
            let df = s * theta.sin() / f.sin();
            Complex64::from_polar((xi * df).sin() / f.sin(), kf * theta)
        },
        0.0,
        PI,
        panels,
        QUAD_TOL,
    )? / (2.0 * PI);
    let gap = (b + c).norm();
    if gap > ANTISYMMETRY_TOL {
        return Err(Error::QuadratureFailure(format!(
            "limits of B and C are not antisymmetric (|B + C| = {gap:e})"
        )));
    }
    Ok(AsymValues {
        a: zero,
        b,
        c,
        d: zero,
    })
}
