//! Direct evolution of `U(A) = P tau + Q tau^{-1}` on a growing window of
//! the integer lattice.
//!
//! The window widens by one site on each side per step, so nothing is ever
//! truncated and the result is exact up to rounding. The state is never
//! renormalised; norm drift is left visible as a diagnostic.

use num_complex::Complex64;

use crate::coin::{check_unit, CoinMatrix, Spinor};
use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::output::{csv_row, fmt_f64};

pub const DEFAULT_MAX_STEPS: usize = 100_000;

const ZERO: Spinor = [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)];

#[derive(Clone, Debug, PartialEq)]
pub struct WalkState {
    offset: i64,
    amps: Vec<Spinor>,
}

impl WalkState {
    /// `delta_0 (x) phi`.
    pub fn initial(phi: Spinor) -> Result<Self> {
        check_unit(&phi)?;
        Ok(Self {
            offset: 0,
            amps: vec![phi],
        })
    }

    /// Builds a state from raw amplitudes without validation. Used for
    /// linear combinations where the unit norm is not expected.
    pub fn from_raw(offset: i64, amps: Vec<Spinor>) -> Self {
        Self { offset, amps }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn amps(&self) -> &[Spinor] {
        &self.amps
    }

    pub fn amp(&self, x: i64) -> Spinor {
        let i = x - self.offset;
        if i < 0 {
            return ZERO;
        }
        self.amps.get(i as usize).copied().unwrap_or(ZERO)
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps
            .iter()
            .map(|u| u[0].norm_sqr() + u[1].norm_sqr())
            .sum()
    }

    /// One application of `U(A)`: the new amplitude at `x` is
    /// `P psi(x-1) + Q psi(x+1)`.
    pub fn step(&self, coin: &CoinMatrix) -> Self {
        let (a, b) = (coin.a(), coin.b());
        let (ac, bc) = (a.conj(), b.conj());
        let len = self.amps.len();
        let mut next = vec![ZERO; len + 2];
        // new index j sits at site offset - 1 + j; its left neighbour in the
        // old window is j - 2 and its right neighbour is j.
        for (j, slot) in next.iter_mut().enumerate() {
            let left = if j >= 2 { self.amps[j - 2][0] } else { ZERO[0] };
            let right = if j < len { self.amps[j][1] } else { ZERO[1] };
            *slot = [a * left + b * right, -bc * left + ac * right];
        }
        Self {
            offset: self.offset - 1,
            amps: next,
        }
    }

    pub fn distribution(&self) -> Distribution {
        Distribution::new(
            self.offset,
            self.amps
                .iter()
                .map(|u| u[0].norm_sqr() + u[1].norm_sqr())
                .collect(),
        )
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,re1,im1,re2,im2\n");
        for (i, u) in self.amps.iter().enumerate() {
            out.push_str(&csv_row([
                (self.offset + i as i64).to_string(),
                fmt_f64(u[0].re),
                fmt_f64(u[0].im),
                fmt_f64(u[1].re),
                fmt_f64(u[1].im),
            ]));
        }
        out
    }
}

pub fn initial_state(phi: Spinor) -> Result<WalkState> {
    WalkState::initial(phi)
}

pub fn step(st: &WalkState, coin: &CoinMatrix) -> WalkState {
    st.step(coin)
}

/// `U(A)^n (delta_0 (x) phi)` with the default step limit.
pub fn evolve(phi: Spinor, coin: &CoinMatrix, n: usize) -> Result<WalkState> {
    evolve_bounded(phi, coin, n, DEFAULT_MAX_STEPS)
}

pub fn evolve_bounded(
    phi: Spinor,
    coin: &CoinMatrix,
    n: usize,
    max_steps: usize,
) -> Result<WalkState> {
    if n > max_steps {
        return Err(Error::ResourceLimit {
            requested: n,
            limit: max_steps,
        });
    }
    let mut st = WalkState::initial(phi)?;
    for _ in 0..n {
        st = st.step(coin);
    }
    Ok(st)
}

/// Runs the walk up to the largest entry of `ns` (which must be sorted) and
/// returns the state at each requested step.
pub fn evolve_checkpoints(
    phi: Spinor,
    coin: &CoinMatrix,
    ns: &[usize],
    max_steps: usize,
) -> Result<Vec<WalkState>> {
    let last = ns.iter().copied().max().unwrap_or(0);
    if last > max_steps {
        return Err(Error::ResourceLimit {
            requested: last,
            limit: max_steps,
        });
    }
    let mut st = WalkState::initial(phi)?;
    let mut done = 0;
    let mut out = Vec::with_capacity(ns.len());
    for &n in ns {
        if n < done {
            return Err(Error::ParamViolation("step list must be sorted".into()));
        }
        while done < n {
            st = st.step(coin);
            done += 1;
        }
        out.push(st.clone());
    }
    Ok(out)
}

pub fn distribution(st: &WalkState) -> Distribution {
    st.distribution()
}

pub fn char_fn(d: &Distribution, xi: f64) -> Complex64 {
    d.char_fn(xi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coin::make_coin;
    use std::f64::consts::FRAC_1_SQRT_2 as H;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(u: Spinor, v: Spinor) -> bool {
        (u[0] - v[0]).norm() < 1e-15 && (u[1] - v[1]).norm() < 1e-15
    }

    #[test]
    fn initial_state_examples() {
        let st = initial_state([c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(st.offset(), 0);
        assert_eq!(st.amps().len(), 1);
        let st = initial_state([c(H, 0.0), c(0.0, H)]).unwrap();
        assert_eq!(st.amp(0), [c(H, 0.0), c(0.0, H)]);
        assert!(matches!(
            initial_state([c(2.0, 0.0), c(0.0, 0.0)]),
            Err(Error::NormViolation { .. })
        ));
    }

    #[test]
    fn single_steps() {
        let h = CoinMatrix::hadamard();
        let st = initial_state([c(1.0, 0.0), c(0.0, 0.0)]).unwrap().step(&h);
        assert!(close(st.amp(1), [c(H, 0.0), c(-H, 0.0)]));
        assert!(close(st.amp(-1), ZERO));
        assert!(close(st.amp(0), ZERO));

        let st = initial_state([c(0.0, 0.0), c(1.0, 0.0)]).unwrap().step(&h);
        assert!(close(st.amp(-1), [c(H, 0.0), c(H, 0.0)]));
        assert!(close(st.amp(1), ZERO));

        let shift = make_coin(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let st = initial_state([c(1.0, 0.0), c(0.0, 0.0)])
            .unwrap()
            .step(&shift);
        assert_eq!(st.amp(1), [c(1.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn two_and_three_steps() {
        let h = CoinMatrix::hadamard();
        let phi = [c(1.0, 0.0), c(0.0, 0.0)];
        assert_eq!(evolve(phi, &h, 0).unwrap(), initial_state(phi).unwrap());

        let st = evolve(phi, &h, 2).unwrap();
        assert!(close(st.amp(2), [c(0.5, 0.0), c(-0.5, 0.0)]));
        assert!(close(st.amp(0), [c(-0.5, 0.0), c(-0.5, 0.0)]));

        let d = evolve(phi, &h, 3).unwrap().distribution();
        for (x, p) in [(3, 0.25), (1, 0.5), (-1, 0.25), (-3, 0.0)] {
            assert!((d.prob(x) - p).abs() < 1e-15, "x = {x}");
        }
        assert!(char_fn(&d, std::f64::consts::FRAC_PI_2).norm() < 1e-15);
    }

    #[test]
    fn resource_limit() {
        let h = CoinMatrix::hadamard();
        let phi = [c(1.0, 0.0), c(0.0, 0.0)];
        assert!(matches!(
            evolve_bounded(phi, &h, 11, 10),
            Err(Error::ResourceLimit {
                requested: 11,
                limit: 10
            })
        ));
    }

    #[test]
    fn checkpoints_match_fresh_runs() {
        let h = CoinMatrix::hadamard();
        let phi = [c(H, 0.0), c(0.0, H)];
        let cps = evolve_checkpoints(phi, &h, &[0, 3, 10], 100).unwrap();
        for (st, n) in cps.iter().zip([0, 3, 10]) {
            assert_eq!(st, &evolve(phi, &h, n).unwrap());
        }
    }

    #[test]
    fn support_and_parity_are_exact() {
        let coin = make_coin(c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let n = 17;
        let st = evolve([c(H, 0.0), c(0.0, H)], &coin, n).unwrap();
        assert_eq!(st.offset(), -(n as i64));
        for (x, p) in st.distribution().iter() {
            if (x + n as i64).rem_euclid(2) == 1 {
                assert_eq!(p, 0.0);
            }
        }
    }

    #[test]
    fn state_csv_header() {
        let st = initial_state([c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(st.to_csv().starts_with("x,re1,im1,re2,im2\n0,"));
    }
}
