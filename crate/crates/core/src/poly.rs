//! Dense univariate polynomials over the rationals.
//!
//! Also used for binary forms `a₀sᵏ + a₁sᵏ⁻¹t + … + aₖtᵏ`, which multiply
//! exactly like polynomials in one variable once the degree is fixed.

use std::fmt;

use num_traits::{One, Zero};

use crate::rational::{fmt_rational, Rational};

/// Coefficients stored lowest degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `a + b·X`
    pub fn linear(a: Rational, b: Rational) -> Self {
        Poly::from_coeffs(vec![a, b])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| crate::rational::int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * at + c)
    }

    pub fn scale(&self, by: &Rational) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c * by).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(convolve(&self.coeffs, &other.coeffs))
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = Rational::zero();
        Poly::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) - other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dlead = divisor.leading().expect("division by the zero polynomial");
        let ddeg = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= ddeg {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - ddeg];
        for shift in (0..quot.len()).rev() {
            let c = &rem[shift + ddeg] / dlead;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &c * dc;
            }
            quot[shift] = c;
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor; zero when both are zero.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        match a.leading().cloned() {
            Some(l) => a.scale(&l.recip()),
            None => a,
        }
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c < &Rational::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = match deg {
                0 => String::new(),
                1 => var.to_string(),
                d => format!("{var}^{d}"),
            };
            if mono.is_empty() || !mag.is_one() {
                out.push_str(&fmt_rational(&mag));
            }
            out.push_str(&mono);
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("X"))
    }
}

/// Plain coefficient convolution; keeps trailing zeros, so fixed-degree
/// binary forms keep their length.
pub fn convolve(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn division_roundtrip() {
        // (X^2 - 1) = (X - 1)(X + 1)
        let p = Poly::from_ints(&[-1, 0, 1]);
        let d = Poly::from_ints(&[-1, 1]);
        let q = p.exact_div(&d).unwrap();
        assert_eq!(q, Poly::from_ints(&[1, 1]));
        assert!(p.exact_div(&Poly::from_ints(&[2, 1])).is_none());
    }

    #[test]
    fn eval_and_display() {
        let p = Poly::from_ints(&[-1, 0, 1]);
        assert_eq!(p.eval(&int(5)), int(24));
        assert_eq!(p.display_in("N"), "N^2 - 1");
        assert_eq!(Poly::zero().display_in("N"), "0");
    }

    #[test]
    fn gcd_of_shared_factor() {
        let a = Poly::from_ints(&[2, 3, 1]); // (x+1)(x+2)
        let b = Poly::from_ints(&[3, 4, 1]); // (x+1)(x+3)
        assert_eq!(a.gcd(&b), Poly::from_ints(&[1, 1]));
        assert_eq!(a.scale(&crate::rational::int(3)).gcd(&a), Poly::from_ints(&[2, 3, 1]).gcd(&a));
        assert_eq!(Poly::zero().gcd(&Poly::zero()), Poly::zero());
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = Poly::from_ints(&[1, 0, 0]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(Poly::from_ints(&[0]).degree(), None);
    }
}
