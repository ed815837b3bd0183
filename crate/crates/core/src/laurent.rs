//! Real Laurent polynomials `sum_x c_x z^x` stored densely over an exponent
//! window `[lo, lo + len)`.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly {
    lo: i64,
    coeffs: Vec<f64>,
}

impl LaurentPoly {
    pub fn new(lo: i64, coeffs: Vec<f64>) -> Self {
        Self { lo, coeffs }
    }

    pub fn zero() -> Self {
        Self::new(0, Vec::new())
    }

    pub fn constant(c: f64) -> Self {
        Self::new(0, vec![c])
    }

    /// `c z^k`.
    pub fn monomial(k: i64, c: f64) -> Self {
        Self::new(k, vec![c])
    }

    /// Lowest stored exponent.
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest stored exponent (`lo - 1` for the empty polynomial).
    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `z^x`; zero outside the stored window.
    pub fn coeff(&self, x: i64) -> f64 {
        let i = x - self.lo;
        if i < 0 {
            return 0.0;
        }
        self.coeffs.get(i as usize).copied().unwrap_or(0.0)
    }

    /// Iterates `(exponent, coefficient)` over the stored window.
    pub fn terms(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, &c)| (self.lo + i as i64, c))
    }

    /// Largest absolute exponent in the stored window.
    pub fn bandwidth(&self) -> i64 {
        if self.is_empty() {
            0
        } else {
            self.lo.abs().max(self.hi().abs())
        }
    }

    /// Drops zero coefficients from both ends.
    pub fn trimmed(mut self) -> Self {
        while self.coeffs.last() == Some(&0.0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0.0).count();
        if lead == self.coeffs.len() {
            return Self::zero();
        }
        self.coeffs.drain(..lead);
        self.lo += lead as i64;
        self
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::new(self.lo, self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::new(self.lo + k, self.coeffs.clone())
    }

    /// Substitution `z -> 1/z`.
    pub fn reflect(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(-self.hi(), coeffs)
    }

    /// Multiplication by `k (z + 1/z)`, written so that a polynomial
    /// symmetric under `z -> 1/z` maps to an exactly symmetric result.
    pub fn mul_z_plus_inv(&self, k: f64) -> Self {
        if self.is_empty() {
            return Self::zero();
        }
        let lo = self.lo - 1;
        let len = self.coeffs.len() + 2;
        let coeffs = (0..len as i64)
            .map(|i| {
                let x = lo + i;
                k * (self.coeff(x - 1) + self.coeff(x + 1))
            })
            .collect();
        Self::new(lo, coeffs)
    }

    /// Multiplication by `k (z - 1/z)`.
    pub fn mul_z_minus_inv(&self, k: f64) -> Self {
        if self.is_empty() {
            return Self::zero();
        }
        let lo = self.lo - 1;
        let len = self.coeffs.len() + 2;
        let coeffs = (0..len as i64)
            .map(|i| {
                let x = lo + i;
                k * (self.coeff(x - 1) - self.coeff(x + 1))
            })
            .collect();
        Self::new(lo, coeffs)
    }

    /// Horner evaluation at a non-zero complex point.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc * z.powi(self.lo as i32)
    }

    fn combine(&self, other: &Self, sign: f64) -> Self {
        if self.is_empty() {
            return other.scale(sign);
        }
        if other.is_empty() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let coeffs = (lo..=hi)
            .map(|x| self.coeff(x) + sign * other.coeff(x))
            .collect();
        Self::new(lo, coeffs)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.combine(rhs, 1.0)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.combine(rhs, -1.0)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1.0)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_empty() || rhs.is_empty() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.lo + rhs.lo, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coeff_lookup_and_bounds() {
        let p = LaurentPoly::new(-2, vec![1.0, 0.0, 3.0]);
        assert_eq!(p.hi(), 0);
        assert_eq!(p.coeff(-2), 1.0);
        assert_eq!(p.coeff(0), 3.0);
        assert_eq!(p.coeff(5), 0.0);
        assert_eq!(p.coeff(-9), 0.0);
        assert_eq!(p.bandwidth(), 2);
        assert_eq!(LaurentPoly::zero().hi(), -1);
    }

    #[test]
    fn arithmetic() {
        let z = LaurentPoly::monomial(1, 1.0);
        let zi = LaurentPoly::monomial(-1, 1.0);
        let s = &z + &zi;
        let sq = &s * &s;
        assert_eq!(sq, LaurentPoly::new(-2, vec![1.0, 0.0, 2.0, 0.0, 1.0]));
        assert_eq!((&s - &s).trimmed(), LaurentPoly::zero());
        assert_eq!(s.mul_z_plus_inv(1.0), sq);
        assert_eq!(
            LaurentPoly::constant(1.0).mul_z_minus_inv(2.0),
            LaurentPoly::new(-1, vec![-2.0, 0.0, 2.0])
        );
        assert_eq!(z.reflect(), zi);
        assert_eq!(zi.shift(3), LaurentPoly::monomial(2, 1.0));
    }

    #[test]
    fn eval_matches_terms() {
        let p = LaurentPoly::new(-3, vec![0.5, -1.0, 0.0, 2.0, 0.25]);
        let z = Complex64::from_polar(1.0, 0.37);
        let direct: Complex64 = p.terms().map(|(x, c)| z.powi(x as i32) * c).sum();
        assert!((p.eval(z) - direct).norm() < 1e-14);
    }

    #[test]
    fn trimmed_strips_both_ends() {
        let p = LaurentPoly::new(-2, vec![0.0, 0.0, 1.0, 2.0, 0.0]).trimmed();
        assert_eq!(p, LaurentPoly::new(0, vec![1.0, 2.0]));
    }
}
