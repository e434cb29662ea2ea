use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{Rational, Scalar};

/// Dense univariate polynomial over `Q`, coefficients in ascending order,
/// no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn one() -> Self {
        Poly::new(vec![Rational::one()])
    }

    /// `x - root`
    pub fn linear(root: &Rational) -> Self {
        Poly::new(vec![-root, Rational::one()])
    }

    /// `x^2 - 2 sigma x + (sigma^2 + tau^2)`, the real factor of a conjugate pair.
    pub fn conjugate_pair(sigma: &Rational, tau: &Rational) -> Self {
        let two = Rational::from_integer(BigInt::from(2));
        Poly::new(vec![sigma * sigma + tau * tau, -(two * sigma), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> Self {
        let lead = self.leading();
        if lead.is_zero() {
            return self.clone();
        }
        Poly::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::new(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        if rem.len() <= dd {
            return (Poly::new(Vec::new()), self.clone());
        }
        let lead = divisor.leading();
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let factor = &rem[k + dd] / &lead;
            if factor.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &factor * d;
            }
            quot[k] = factor;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// Exact multiplicity of `factor` in `self`.
    pub fn multiplicity(&self, factor: &Self) -> usize {
        let mut count = 0;
        let mut rest = self.clone();
        loop {
            let (q, r) = rest.divrem(factor);
            if !r.is_zero() || rest.is_zero() {
                return count;
            }
            count += 1;
            rest = q;
        }
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::zero(), |acc, c| &acc * x + Scalar::from_rational(c.clone()))
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_coef = k == 0 || !magnitude.is_one();
            if show_coef {
                write!(f, "{magnitude}")?;
            }
            match (k, show_coef) {
                (0, _) => {}
                (1, true) => f.write_str("*x")?,
                (1, false) => f.write_str("x")?,
                (_, true) => write!(f, "*x^{k}")?,
                (_, false) => write!(f, "x^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&n| rat(n)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (x^2 + 1)^2 = x^4 + 2x^2 + 1
        let f = p(&[1, 0, 2, 0, 1]);
        let (q, r) = f.divrem(&p(&[1, 0, 1]));
        assert_eq!(q, p(&[1, 0, 1]));
        assert!(r.is_zero());
        assert_eq!(f.squarefree_part(), p(&[1, 0, 1]));
        assert_eq!(f.multiplicity(&p(&[1, 0, 1])), 2);
        assert_eq!(p(&[-1, 1]).gcd(&p(&[1, 1])), Poly::one());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 0, 2, 0, 1]).to_string(), "x^4 + 2*x^2 + 1");
        assert_eq!(p(&[-2, 0, 1]).to_string(), "x^2 - 2");
        assert_eq!(Poly::new(vec![ratio(-1, 2), rat(-1)]).to_string(), "-x - 1/2");
    }
}
