//! Finite-n versus limit diagnostics used by the CLI experiments.

use num_complex::Complex64;

use crate::cheb::{CharComponents, TransferQuadruple};
use crate::coin::Spinor;
use crate::distribution::Distribution;
use crate::error::Result;
use crate::exec::Exec;
use crate::limit::{asym_integrals, asym_limits, AsymValues, LimitDensity};
use crate::output::{csv_row, fmt_f64};

/// `sup_y |F_n(y) - F(y)|` where `F_n` is the CDF of `X_n / n` for the
/// exact distribution `dist` and `F` the limit CDF.
///
/// `F_n` is a step function and `F` is continuous and monotone, so the
/// supremum is attained at an atom, approached from one side or the other.
pub fn kolmogorov_distance(
    dist: &Distribution,
    n: usize,
    law: &LimitDensity,
    exec: Exec,
) -> Result<f64> {
    let scale = n.max(1) as f64;
    let atoms: Vec<(i64, f64)> = dist.iter().filter(|&(_, p)| p > 0.0).collect();
    let limit_cdf = exec.map(&atoms, |&(x, _)| law.cdf(x as f64 / scale));
    let mut below = 0.0;
    let mut worst: f64 = 0.0;
    for (&(_, p), f) in atoms.iter().zip(limit_cdf) {
        let f = f?;
        let above = below + p;
        worst = worst.max((f - below).abs()).max((f - above).abs());
        below = above;
    }
    Ok(worst)
}

/// `E_n(xi / n)` from the transfer polynomials at step `n`.
pub fn scaled_char_fn(quad: &TransferQuadruple, psi: &Spinor, xi: f64) -> Complex64 {
    let scale = quad.n.max(1) as f64;
    let (p, q, r) = quad.char_sums(xi / scale);
    CharComponents::combine(psi, p, q, r).total
}

/// One row of the characteristic-function convergence table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CharFnRow {
    pub n: usize,
    pub xi: f64,
    pub finite: Complex64,
    pub limit: Complex64,
    pub gap: f64,
}

pub const CHARFN_HEADER: &str = "n,xi,re_En,im_En,re_limit,im_limit,gap\n";

impl CharFnRow {
    pub fn csv(&self) -> String {
        csv_row([
            self.n.to_string(),
            fmt_f64(self.xi),
            fmt_f64(self.finite.re),
            fmt_f64(self.finite.im),
            fmt_f64(self.limit.re),
            fmt_f64(self.limit.im),
            fmt_f64(self.gap),
        ])
    }
}

/// `|E_n(xi/n) - phi(xi)|` for every `xi` at one `n`.
pub fn charfn_rows(
    quad: &TransferQuadruple,
    psi: &Spinor,
    law: &LimitDensity,
    xis: &[f64],
    exec: Exec,
) -> Result<Vec<CharFnRow>> {
    exec.map(xis, |&xi| {
        let finite = scaled_char_fn(quad, psi, xi);
        let limit = law.char_fn(xi)?;
        Ok(CharFnRow {
            n: quad.n,
            xi,
            finite,
            limit,
            gap: (finite - limit).norm(),
        })
    })
    .into_iter()
    .collect()
}

/// One row of the asymptotic-integral convergence table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymRow {
    pub n: usize,
    pub k: i64,
    pub xi: f64,
    pub finite: AsymValues,
    pub gaps: [f64; 4],
}

pub const ASYM_HEADER: &str = "n,k,xi,reA,imA,reB,imB,reC,imC,reD,imD,gapA,gapB,gapC,gapD\n";

impl AsymRow {
    pub fn csv(&self) -> String {
        let mut fields = vec![self.n.to_string(), self.k.to_string(), fmt_f64(self.xi)];
        for v in self.finite.as_array() {
            fields.push(fmt_f64(v.re));
            fields.push(fmt_f64(v.im));
        }
        fields.extend(self.gaps.iter().map(|&g| fmt_f64(g)));
        csv_row(fields)
    }
}

/// Evaluates `A..D` at every `(n, k, xi)` on the grid against their limits.
pub fn asym_table(
    ns: &[usize],
    ks: &[i64],
    xis: &[f64],
    s: f64,
    exec: Exec,
) -> Result<Vec<AsymRow>> {
    let mut limits = Vec::new();
    for &k in ks {
        for &xi in xis {
            limits.push((k, xi, asym_limits(k, xi, s)?));
        }
    }
    let cells: Vec<(usize, i64, f64, AsymValues)> = ns
        .iter()
        .flat_map(|&n| limits.iter().map(move |&(k, xi, l)| (n, k, xi, l)))
        .collect();
    exec.map(&cells, |&(n, k, xi, lim)| {
        let finite = asym_integrals(n, k, xi, s)?;
        Ok(AsymRow {
            n,
            k,
            xi,
            finite,
            gaps: finite.gaps(&lim),
        })
    })
    .into_iter()
    .collect()
}

/// True when `values` decreases along the sequence with at most
/// `allowed_rises` increases.
pub fn is_decreasing_trend(values: &[f64], allowed_rises: usize) -> bool {
    let rises = values.windows(2).filter(|w| w[1] > w[0]).count();
    rises <= allowed_rises && values.last() < values.first()
}
