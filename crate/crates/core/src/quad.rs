//! Quadrature rules: adaptive composite Gauss-Legendre on intervals and the
//! equispaced trapezoid rule on the unit circle.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

const GL_ORDER: usize = 20;
const MAX_DEPTH: u32 = 40;

/// Nodes and weights of the Gauss-Legendre rule on [-1, 1], computed by
/// Newton iteration on the Legendre three-term recurrence.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; order];
    let mut weights = vec![0.0; order];
    let nf = order as f64;
    for i in 0..order.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=order {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
    (nodes, weights)
}

fn gl20() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(GL_ORDER))
}

fn panel<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Complex64 {
    let (nodes, weights) = gl20();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    nodes
        .iter()
        .zip(weights)
        .map(|(&x, &w)| f(mid + half * x) * w)
        .sum::<Complex64>()
        * half
}

fn refine<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    whole: Complex64,
    tol: f64,
    depth: u32,
) -> Result<Complex64> {
    let m = 0.5 * (a + b);
    let left = panel(f, a, m);
    let right = panel(f, m, b);
    let both = left + right;
    // absolute target, floored at roundoff of the panel value
    if (both - whole).norm() <= tol.max(16.0 * f64::EPSILON * both.norm()) {
        return Ok(both);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::QuadratureFailure(format!(
            "no convergence on [{a}, {b}] after {MAX_DEPTH} bisections"
        )));
    }
    Ok(
        refine(f, a, m, left, 0.5 * tol, depth + 1)?
            + refine(f, m, b, right, 0.5 * tol, depth + 1)?,
    )
}

/// Integrates a complex-valued `f` over `[a, b]` to absolute tolerance `tol`
/// by bisecting 20-point Gauss-Legendre panels. The interval is first cut
/// into `panels` equal pieces.
pub fn integrate_complex<F>(f: F, a: f64, b: f64, panels: usize, tol: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    if a == b {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..panels {
        let lo = a + h * i as f64;
        let hi = if i + 1 == panels { b } else { lo + h };
        let whole = panel(&f, lo, hi);
        total += refine(&f, lo, hi, whole, tol / panels as f64, 0)?;
    }
    if !total.re.is_finite() || !total.im.is_finite() {
        return Err(Error::QuadratureFailure("non-finite integral".into()));
    }
    Ok(total)
}

pub fn integrate<F>(f: F, a: f64, b: f64, panels: usize, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    integrate_complex(|x| Complex64::new(f(x), 0.0), a, b, panels, tol).map(|c| c.re)
}

/// `(1/2 pi) int_0^{2 pi} g(theta) d theta` with `nodes` equispaced points;
/// exact for trigonometric polynomials of degree below `nodes`.
pub fn circle_mean<F>(nodes: usize, g: F) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let h = 2.0 * PI / nodes as f64;
    (0..nodes).map(|j| g(h * j as f64)).sum::<Complex64>() / nodes as f64
}
