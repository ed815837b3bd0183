//! Measures the convergence diagnostics whose values are pinned in
//! `src/pinned.rs`. Run with `cargo run --release --example pin_thresholds`.

use num_complex::Complex64;
use qwalk::cheb::transfer_polys;
use qwalk::coin::psi_from_phi;
use qwalk::convergence::{asym_table, charfn_rows, kolmogorov_distance};
use qwalk::walk::evolve_checkpoints;
use qwalk::{CoinMatrix, Exec, LimitDensity};

const GRID: [usize; 5] = [125, 250, 500, 1000, 2000];

fn main() -> anyhow::Result<()> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let coin = CoinMatrix::hadamard();
    let polar = coin.polar()?;
    let states = [
        (
            "symmetric",
            [Complex64::new(h, 0.0), Complex64::new(0.0, h)],
        ),
        (
            "right",
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        ),
    ];
    for (name, phi) in states {
        let law = LimitDensity::from_coin(&phi, &coin)?;
        let psi = psi_from_phi(&phi, &polar)?;
        println!("# {name}: lambda = {}", law.lambda());
        let walks = evolve_checkpoints(phi, &coin, &GRID, 100_000)?;
        for (n, st) in GRID.iter().zip(&walks) {
            let d = st.distribution();
            let dn = kolmogorov_distance(&d, *n, &law, Exec::Parallel)?;
            let mean = d.mean() / *n as f64;
            let quad = transfer_polys(*n, polar.s, polar.t)?;
            let rows = charfn_rows(&quad, &psi, &law, &[0.0, 0.5, 1.0, 2.0], Exec::Parallel)?;
            let gaps: Vec<String> = rows.iter().map(|r| format!("{:.6e}", r.gap)).collect();
            println!(
                "n = {n:5}  D_n = {dn:.6e}  mean = {mean:.6e} (limit {:.6e})  charfn gaps [0, .5, 1, 2] = {}",
                law.mean()?,
                gaps.join(" ")
            );
        }
    }
    println!("# asymptotic integrals, s = 1/sqrt(2)");
    let rows = asym_table(
        &[200, 500, 1000, 2000],
        &[0, 1, 2],
        &[0.0, 1.0],
        h,
        Exec::Parallel,
    )?;
    for r in rows {
        println!(
            "n = {:5} k = {} xi = {}  gaps A {:.3e} B {:.3e} C {:.3e} D {:.3e}",
            r.n, r.k, r.xi, r.gaps[0], r.gaps[1], r.gaps[2], r.gaps[3]
        );
    }
    Ok(())
}
