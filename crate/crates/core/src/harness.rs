//! Experiment configuration and the commands behind the `qwalk` binary.
//!
//! Every command is a deterministic function of its [`ExperimentConfig`]:
//! the only randomness (unit phases for the algebra check) is drawn from a
//! generator seeded by the config. Output files are written atomically.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    action_residual, build_basis, build_rep, gram_residual, qwr_check, relation_residuals, CMatrix,
    RelationReport,
};
use crate::cheb::TransferSequence;
use crate::coin::{check_unit, make_coin, psi_from_phi, CoinMatrix, Spinor};
use crate::convergence::{
    asym_table, charfn_rows, kolmogorov_distance, ASYM_HEADER, CHARFN_HEADER,
};
use crate::error::Error;
use crate::exec::Exec;
use crate::limit::LimitDensity;
use crate::output::{csv_row, fmt_f64, write_atomic};
use crate::pinned;
use crate::walk::{evolve_checkpoints, DEFAULT_MAX_STEPS};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error("{context}: {source}")]
    Numeric {
        context: String,
        #[source]
        source: Error,
    },
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl HarnessError {
    /// 1 for numerical and i/o failures, 2 for invalid configuration.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 2,
            _ => 1,
        }
    }
}

fn numeric(context: impl Into<String>) -> impl FnOnce(Error) -> HarnessError {
    let context = context.into();
    move |source| HarnessError::Numeric { context, source }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoinSpec {
    pub a: [f64; 2],
    pub b: [f64; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Max pointwise gap between direct and Chebyshev distributions.
    pub gap: f64,
    /// Max residual of the algebra identities.
    pub relations: f64,
    /// Pinned Kolmogorov distance at the largest `n`.
    pub kolmogorov: f64,
    /// Pinned characteristic-function gap at the largest `n`.
    pub charfn: f64,
    /// Bound on columns that vanish by parity.
    pub parity: f64,
    /// Multiplier applied to pinned values.
    pub safety: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            gap: 1e-10,
            relations: 1e-12,
            kolmogorov: pinned::KOLMOGOROV_SYMMETRIC,
            charfn: pinned::CHARFN_SYMMETRIC
                .iter()
                .map(|&(_, g)| g)
                .fold(0.0, f64::max),
            parity: pinned::PARITY_TOL,
            safety: pinned::SAFETY,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema: u32,
    pub coin: CoinSpec,
    /// Walk initial state as `[[re, im], [re, im]]`.
    pub phi: [[f64; 2]; 2],
    /// Strictly increasing step counts.
    pub steps: Vec<usize>,
    pub xi: Vec<f64>,
    /// Lattice size `N` for the algebra check.
    pub lattice_size: usize,
    /// Fixed phases for the algebra check; drawn from `seed` when absent.
    pub alpha: Option<[f64; 2]>,
    pub beta: Option<[f64; 2]>,
    /// Number of phase draws when `alpha`/`beta` are absent.
    pub draws: usize,
    pub seed: u64,
    /// Scale of a deterministic perturbation added to `W` (fault injection).
    pub perturb_w: f64,
    pub asym_k: Vec<i64>,
    pub asym_xi: Vec<f64>,
    pub tolerances: Tolerances,
    pub max_n: usize,
    pub out: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            schema: SCHEMA_VERSION,
            coin: CoinSpec {
                a: [h, 0.0],
                b: [h, 0.0],
            },
            phi: [[h, 0.0], [0.0, h]],
            steps: pinned::N_GRID.to_vec(),
            xi: vec![0.5, 1.0, 2.0],
            lattice_size: 16,
            alpha: None,
            beta: None,
            draws: 1,
            seed: 7,
            perturb_w: 0.0,
            asym_k: vec![0, 1, 2],
            asym_xi: vec![0.0, 1.0],
            tolerances: Tolerances::default(),
            max_n: DEFAULT_MAX_STEPS,
            out: None,
        }
    }
}

fn complex(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, HarnessError> {
        let cfg: Self =
            serde_json::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialises")
    }

    pub fn coin(&self) -> Result<CoinMatrix, HarnessError> {
        make_coin(complex(self.coin.a), complex(self.coin.b))
            .map_err(|e| HarnessError::Config(format!("coin: {e}")))
    }

    pub fn phi(&self) -> Spinor {
        [complex(self.phi[0]), complex(self.phi[1])]
    }

    pub fn out_dir(&self) -> PathBuf {
        self.out
            .clone()
            .unwrap_or_else(|| PathBuf::from("qwalk-out"))
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |m: String| Err(HarnessError::Config(m));
        if self.schema != SCHEMA_VERSION {
            return bad(format!(
                "schema {} is not supported (expected {SCHEMA_VERSION})",
                self.schema
            ));
        }
        self.coin()?;
        check_unit(&self.phi()).map_err(|e| HarnessError::Config(format!("phi: {e}")))?;
        if self.steps.is_empty() {
            return bad("steps must not be empty".into());
        }
        if self.steps.windows(2).any(|w| w[1] <= w[0]) {
            return bad("steps must be strictly increasing".into());
        }
        if let Some(&last) = self.steps.last() {
            if last > self.max_n {
                return bad(format!("step {last} exceeds max_n = {}", self.max_n));
            }
        }
        if self.lattice_size < 3 {
            return bad(format!("lattice_size {} < 3", self.lattice_size));
        }
        for (name, p) in [("alpha", self.alpha), ("beta", self.beta)] {
            if let Some(p) = p {
                if (complex(p).norm() - 1.0).abs() > 1e-10 {
                    return bad(format!("{name} must have modulus 1"));
                }
            }
        }
        if self.draws == 0 {
            return bad("draws must be positive".into());
        }
        let t = &self.tolerances;
        for (name, v) in [
            ("gap", t.gap),
            ("relations", t.relations),
            ("kolmogorov", t.kolmogorov),
            ("charfn", t.charfn),
            ("parity", t.parity),
            ("safety", t.safety),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return bad(format!("tolerance {name} must be positive"));
            }
        }
        if self.xi.iter().chain(&self.asym_xi).any(|x| !x.is_finite()) {
            return bad("xi values must be finite".into());
        }
        Ok(())
    }
}

/// Result of a command: pass/fail plus human-readable summary lines.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub passed: bool,
    pub lines: Vec<String>,
    pub files: Vec<PathBuf>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

struct Writer {
    dir: PathBuf,
    files: Vec<PathBuf>,
}

impl Writer {
    fn new(dir: PathBuf) -> Self {
        Self {
            dir,
            files: Vec::new(),
        }
    }

    fn write(&mut self, name: &str, contents: &str) -> Result<(), HarnessError> {
        let path = self.dir.join(name);
        write_atomic(&path, contents).map_err(|source| HarnessError::Io {
            path: path.clone(),
            source,
        })?;
        self.files.push(path);
        Ok(())
    }
}

/// Direct and Chebyshev distributions for every `n` with their gap.
pub fn cmd_simulate(cfg: &ExperimentConfig, exec: Exec) -> Result<Outcome, HarnessError> {
    cfg.validate()?;
    let coin = cfg.coin()?;
    let phi = cfg.phi();
    let mut out = Writer::new(cfg.out_dir());
    let mut lines = Vec::new();

    let states = evolve_checkpoints(phi, &coin, &cfg.steps, cfg.max_n)
        .map_err(numeric("direct evolution"))?;
    let direct: Vec<_> = exec.map(&states, |st| st.distribution());
    for (n, d) in cfg.steps.iter().zip(&direct) {
        out.write(&format!("direct_n{n}.csv"), &d.to_csv())?;
    }

    let polar = match coin.polar() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("warning: Chebyshev path skipped: {e}");
            lines.push(format!("direct path only ({e})"));
            return Ok(Outcome {
                passed: true,
                lines,
                files: out.files,
            });
        }
    };
    let psi = psi_from_phi(&phi, &polar).map_err(numeric("initial state"))?;
    let mut seq = TransferSequence::new(polar.s, polar.t).map_err(numeric("transfer polys"))?;
    let mut gaps_csv = String::from("n,gap\n");
    let mut passed = true;
    for (&n, d) in cfg.steps.iter().zip(&direct) {
        let quad = seq
            .by_ref()
            .find(|q| q.n == n)
            .expect("sequence is unbounded");
        let cheb = quad
            .distribution(&psi)
            .map_err(numeric(format!("n = {n}")))?;
        let gap = d.max_abs_gap(&cheb);
        out.write(&format!("cheb_n{n}.csv"), &cheb.to_csv())?;
        gaps_csv.push_str(&csv_row([n.to_string(), fmt_f64(gap)]));
        let ok = gap < cfg.tolerances.gap;
        if !ok && passed {
            lines.push(format!(
                "FAIL first at n = {n}: gap {gap:e} >= {:e}",
                cfg.tolerances.gap
            ));
        }
        passed &= ok;
        lines.push(format!("n = {n}: max gap {gap:.3e}"));
    }
    out.write("gaps.csv", &gaps_csv)?;
    Ok(Outcome {
        passed,
        lines,
        files: out.files,
    })
}

fn limit_setup(cfg: &ExperimentConfig) -> Result<(CoinMatrix, LimitDensity), HarnessError> {
    let coin = cfg.coin()?;
    if coin.is_degenerate() {
        return Err(HarnessError::Config(
            "limit law needs both coin entries non-zero".into(),
        ));
    }
    let law = LimitDensity::from_coin(&cfg.phi(), &coin).map_err(numeric("limit law"))?;
    Ok((coin, law))
}

/// Kolmogorov distance between `X_n / n` and the limit law over the `n` grid.
pub fn cmd_limit(cfg: &ExperimentConfig, exec: Exec) -> Result<Outcome, HarnessError> {
    cfg.validate()?;
    let (coin, law) = limit_setup(cfg)?;
    let states = evolve_checkpoints(cfg.phi(), &coin, &cfg.steps, cfg.max_n)
        .map_err(numeric("direct evolution"))?;
    let mut csv = String::from("n,Dn\n");
    let mut lines = vec![format!("lambda = {:.12}", law.lambda())];
    let mut last = f64::NAN;
    for (&n, st) in cfg.steps.iter().zip(&states) {
        let d = st.distribution();
        let dn = kolmogorov_distance(&d, n, &law, exec).map_err(numeric(format!("n = {n}")))?;
        csv.push_str(&csv_row([n.to_string(), fmt_f64(dn)]));
        lines.push(format!(
            "n = {n}: D_n = {dn:.6e}, mean(X_n/n) = {:.6e}",
            d.mean() / n.max(1) as f64
        ));
        last = dn;
    }
    let limit_mean = law.mean().map_err(numeric("limit mean"))?;
    lines.push(format!("limit mean = {limit_mean:.6e}"));
    let threshold = cfg.tolerances.kolmogorov * cfg.tolerances.safety;
    let passed = last <= threshold;
    lines.push(format!(
        "{}: D at n = {} is {last:.6e} (threshold {threshold:.6e})",
        if passed { "PASS" } else { "FAIL" },
        cfg.steps.last().unwrap()
    ));
    let mut out = Writer::new(cfg.out_dir());
    out.write("kolmogorov.csv", &csv)?;
    Ok(Outcome {
        passed,
        lines,
        files: out.files,
    })
}

/// `|E_n(xi/n) - phi(xi)|` over the `xi` and `n` grids.
pub fn cmd_charfn(cfg: &ExperimentConfig, exec: Exec) -> Result<Outcome, HarnessError> {
    cfg.validate()?;
    let (coin, law) = limit_setup(cfg)?;
    let polar = coin.polar().map_err(numeric("coin"))?;
    let psi = psi_from_phi(&cfg.phi(), &polar).map_err(numeric("initial state"))?;
    let mut seq = TransferSequence::new(polar.s, polar.t).map_err(numeric("transfer polys"))?;
    let mut csv = String::from(CHARFN_HEADER);
    let mut lines = Vec::new();
    let mut last_max = 0.0;
    for &n in &cfg.steps {
        let quad = seq
            .by_ref()
            .find(|q| q.n == n)
            .expect("sequence is unbounded");
        let rows =
            charfn_rows(&quad, &psi, &law, &cfg.xi, exec).map_err(numeric(format!("n = {n}")))?;
        let worst = rows.iter().map(|r| r.gap).fold(0.0, f64::max);
        for r in &rows {
            csv.push_str(&r.csv());
        }
        lines.push(format!("n = {n}: max gap over xi {worst:.6e}"));
        last_max = worst;
    }
    let threshold = cfg.tolerances.charfn * cfg.tolerances.safety;
    let passed = last_max <= threshold;
    lines.push(format!(
        "{}: max gap at largest n is {last_max:.6e} (threshold {threshold:.6e})",
        if passed { "PASS" } else { "FAIL" }
    ));
    let mut out = Writer::new(cfg.out_dir());
    out.write("charfn.csv", &csv)?;
    Ok(Outcome {
        passed,
        lines,
        files: out.files,
    })
}

fn perturbation(dim: usize) -> CMatrix {
    CMatrix::from_fn(dim, dim, |i, j| {
        Complex64::new(
            (((i * 7 + j * 3) % 5) as f64) / 5.0,
            (((i + 2 * j) % 3) as f64) / 3.0,
        )
    })
}

/// Operator identities on the cyclic lattice, as a JSON report of the worst
/// residual per identity over all phase draws.
pub fn cmd_algebra(cfg: &ExperimentConfig, exec: Exec) -> Result<Outcome, HarnessError> {
    cfg.validate()?;
    let polar = cfg.coin()?.polar();
    // the (iy + w) identities only need some s^2 + t^2 = 1
    let (s, t) = polar.map(|p| (p.s, p.t)).unwrap_or((0.6, 0.8));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut draw = || Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
    let phases: Vec<(Complex64, Complex64)> = match (cfg.alpha, cfg.beta) {
        (Some(a), Some(b)) => vec![(complex(a), complex(b))],
        _ => (0..cfg.draws)
            .map(|_| {
                let a = cfg.alpha.map(complex).unwrap_or_else(&mut draw);
                let b = cfg.beta.map(complex).unwrap_or_else(&mut draw);
                (a, b)
            })
            .collect(),
    };
    let n = cfg.lattice_size;
    let reports = exec.map(&phases, |&(alpha, beta)| -> Result<RelationReport, Error> {
        let mut rep = build_rep(n, alpha, beta)?;
        if cfg.perturb_w != 0.0 {
            rep.w += perturbation(rep.dim()) * Complex64::from(cfg.perturb_w);
        }
        let mut report = relation_residuals(&rep, s, t);
        let (e1, e2) = build_basis(&rep);
        report
            .residuals
            .insert("basis gram = I".into(), gram_residual(&e1, &e2));
        report
            .residuals
            .insert("basis action".into(), action_residual(&rep, &e1, &e2));
        report
            .residuals
            .insert("<V^x e, e> = 0 (0 < x < N)".into(), qwr_check(&rep));
        Ok(report)
    });
    let mut worst = RelationReport::default();
    for r in reports {
        let r = r.map_err(numeric("algebra"))?;
        for (k, v) in r.residuals {
            let e = worst.residuals.entry(k).or_insert(0.0);
            if v.is_nan() || v > *e {
                *e = v;
            }
        }
    }
    let failing = worst.failing(cfg.tolerances.relations);
    let mut out = Writer::new(cfg.out_dir());
    out.write("relations.json", &worst.to_json())?;
    let mut lines = vec![format!(
        "N = {n}, {} phase draw(s), max residual {:.3e}",
        phases.len(),
        worst.max_residual()
    )];
    if failing.is_empty() {
        lines.push("PASS: all identities within tolerance".into());
    } else {
        lines.push(format!("FAIL: {}", failing.join(", ")));
    }
    Ok(Outcome {
        passed: failing.is_empty(),
        lines,
        files: out.files,
    })
}

/// Finite-n contour integrals `A..D` against their limits.
pub fn cmd_asym(cfg: &ExperimentConfig, exec: Exec) -> Result<Outcome, HarnessError> {
    cfg.validate()?;
    let coin = cfg.coin()?;
    let s = coin
        .polar()
        .map_err(|e| HarnessError::Config(format!("asym needs 0 < s < 1: {e}")))?
        .s;
    let ns: Vec<usize> = cfg.steps.iter().copied().filter(|&n| n > 0).collect();
    let rows = asym_table(&ns, &cfg.asym_k, &cfg.asym_xi, s, exec)
        .map_err(numeric("asymptotic integrals"))?;
    let mut csv = String::from(ASYM_HEADER);
    let mut parity_worst: f64 = 0.0;
    for r in &rows {
        csv.push_str(&r.csv());
        let vanishing = if r.k.rem_euclid(2) == 0 {
            [r.finite.b, r.finite.c]
        } else {
            [r.finite.a, r.finite.d]
        };
        for v in vanishing {
            parity_worst = parity_worst.max(v.norm());
        }
    }
    let mut lines = Vec::new();
    if let Some(&n) = ns.last() {
        for r in rows.iter().filter(|r| r.n == n) {
            lines.push(format!(
                "n = {n}, k = {}, xi = {}: gaps A {:.3e} B {:.3e} C {:.3e} D {:.3e}",
                r.k, r.xi, r.gaps[0], r.gaps[1], r.gaps[2], r.gaps[3]
            ));
        }
    }
    let passed = parity_worst < cfg.tolerances.parity;
    lines.push(format!(
        "{}: parity-vanishing columns max {parity_worst:.3e}",
        if passed { "PASS" } else { "FAIL" }
    ));
    let mut out = Writer::new(cfg.out_dir());
    out.write("asym.csv", &csv)?;
    Ok(Outcome {
        passed,
        lines,
        files: out.files,
    })
}
