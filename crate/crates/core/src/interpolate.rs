//! Exact Lagrange interpolation over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// A polynomial with rational coefficients, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn integer_coefficients(&self) -> Option<Vec<BigInt>> {
        self.is_integral().then(|| self.coeffs.iter().map(|c| c.to_integer()).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    fn add_scaled(&mut self, other: &[BigRational], scale: &BigRational) {
        if self.coeffs.len() < other.len() {
            self.coeffs.resize(other.len(), BigRational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(other) {
            *a += b * scale;
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let unit = mag.is_one() && deg > 0;
            if !unit {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "{}/{}", mag.numer(), mag.denom())?;
                }
                if deg > 0 {
                    f.write_str("*")?;
                }
            }
            match deg {
                0 => {}
                1 => f.write_str("x")?,
                d => write!(f, "x^{d}")?,
            }
        }
        Ok(())
    }
}

/// The unique polynomial of degree below `points.len()` through every `(x, y)`.
pub fn interpolate_count_polynomial(points: &[(i64, i64)]) -> Result<Polynomial> {
    if points.is_empty() {
        return Err(Error::InvalidArgument("at least one point is required".into()));
    }
    for (i, (x, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(x2, _)| x2 == x) {
            return Err(Error::DuplicateAbscissa(*x));
        }
    }
    let rat = |v: i64| BigRational::from_integer(BigInt::from(v));
    let mut result = Polynomial { coeffs: Vec::new() };
    for (i, &(xi, yi)) in points.iter().enumerate() {
        // basis numerator Π_{j≠i} (x - x_j), built up one linear factor at a time
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, &(xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (d, b) in basis.iter().enumerate() {
                next[d + 1] += b;
                next[d] -= b * rat(xj);
            }
            basis = next;
            denom *= rat(xi - xj);
        }
        result.add_scaled(&basis, &(rat(yi) / denom));
    }
    Ok(Polynomial::new(result.coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn recovers_quartics() {
        let f = |p: i64| p.pow(4) - p * p - p - 1;
        let pts: Vec<_> = [2, 3, 5, 7, 11].iter().map(|&p| (p, f(p))).collect();
        let poly = interpolate_count_polynomial(&pts).unwrap();
        assert_eq!(poly, Polynomial::from_integers(&[-1, -1, -1, 0, 1]));
        assert_eq!(poly.to_string(), "x^4 - x^2 - x - 1");

        let g = |p: i64| 2 * p.pow(4) - p.pow(3) - p * p - 3 * p - 1;
        let pts: Vec<_> = [2, 3, 5, 7, 11].iter().map(|&p| (p, g(p))).collect();
        let poly = interpolate_count_polynomial(&pts).unwrap();
        assert_eq!(poly.to_string(), "2*x^4 - x^3 - x^2 - 3*x - 1");
        assert!(poly.is_integral());
    }

    #[test]
    fn constant_and_errors() {
        let poly = interpolate_count_polynomial(&[(2, 9)]).unwrap();
        assert_eq!(poly, Polynomial::from_integers(&[9]));
        assert_eq!(poly.degree(), Some(0));
        assert_eq!(interpolate_count_polynomial(&[(2, 9), (2, 3)]), Err(Error::DuplicateAbscissa(2)));
        assert!(interpolate_count_polynomial(&[]).is_err());
        assert_eq!(interpolate_count_polynomial(&[(1, 0), (2, 0)]).unwrap().to_string(), "0");
    }

    #[test]
    fn rational_coefficients_are_reported() {
        // x(x-1)/2 through (0,0), (1,0), (2,1)
        let poly = interpolate_count_polynomial(&[(0, 0), (1, 0), (2, 1)]).unwrap();
        assert!(!poly.is_integral());
        assert_eq!(poly.to_string(), "1/2*x^2 - 1/2*x");
        assert!(poly.integer_coefficients().is_none());
    }

    proptest! {
        #[test]
        fn interpolant_passes_through_points(ys in proptest::collection::vec(-1000i64..1000, 1..7)) {
            let pts: Vec<(i64, i64)> = ys.iter().enumerate().map(|(i, &y)| (2 * i as i64 - 3, y)).collect();
            let poly = interpolate_count_polynomial(&pts).unwrap();
            prop_assert!(poly.degree().map_or(true, |d| d < pts.len()));
            for (x, y) in pts {
                prop_assert_eq!(poly.eval(&BigRational::from_integer(x.into())), BigRational::from_integer(y.into()));
            }
        }
    }
}
