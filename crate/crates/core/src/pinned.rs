//! Thresholds for the convergence checks, measured once with
//! `cargo run --release --example pin_thresholds` (Hadamard coin,
//! `s = t = 1/sqrt(2)`) and rounded up in the fourth digit. Checks assert
//! `measured <= pin * SAFETY`.

pub const SAFETY: f64 = 1.1;

/// Largest `n` of the convergence grid.
pub const N_MAX: usize = 2000;

/// Geometric `n` grid for the convergence checks.
pub const N_GRID: [usize; 5] = [125, 250, 500, 1000, 2000];

/// Kolmogorov distance at `n = 2000` from `phi = (1, i)/sqrt(2)` (`lambda = 0`).
pub const KOLMOGOROV_SYMMETRIC: f64 = 1.425e-2;

/// Kolmogorov distance at `n = 2000` from `phi = (1, 0)` (`lambda = 1`).
pub const KOLMOGOROV_RIGHT: f64 = 2.325e-2;

/// `|E_n(xi/n) - phi(xi)|` at `n = 2000`, `xi = 0.5, 1, 2`, `lambda = 0`.
pub const CHARFN_SYMMETRIC: [(f64, f64); 3] = [(0.5, 1.567e-8), (1.0, 5.542e-8), (2.0, 1.212e-7)];

/// Same as [`CHARFN_SYMMETRIC`] for `lambda = 1`.
pub const CHARFN_RIGHT: [(f64, f64); 3] = [(0.5, 8.565e-5), (1.0, 1.554e-4), (2.0, 1.977e-4)];

/// `(k, xi, [gapA, gapB, gapC, gapD])` at `n = 2000`, `s = 1/sqrt(2)`.
/// Parity-vanishing columns are recorded as zero and checked separately.
pub const ASYM_GAPS: [(i64, f64, [f64; 4]); 6] = [
    (0, 0.0, [4.460e-3, 0.0, 0.0, 8.922e-3]),
    (0, 1.0, [4.460e-3, 0.0, 0.0, 8.921e-3]),
    (1, 0.0, [0.0, 6.308e-3, 6.308e-3, 0.0]),
    (1, 1.0, [0.0, 6.250e-3, 6.347e-3, 0.0]),
    (2, 0.0, [4.462e-3, 0.0, 0.0, 8.927e-3]),
    (2, 1.0, [4.462e-3, 0.0, 0.0, 8.926e-3]),
];

/// Bound for columns that vanish identically by parity.
pub const PARITY_TOL: f64 = 1e-10;
