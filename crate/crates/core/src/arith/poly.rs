use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// A polynomial in the parameter `c` with exact rational coefficients.
///
/// Coefficients are stored lowest degree first with no trailing zeros, so
/// the zero polynomial is the empty vector and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyC {
    coeffs: Vec<Rational>,
}

impl PolyC {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyC { coeffs }
    }

    /// Shorthand for integer coefficient lists, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&n| Rational::from_int(n)).collect())
    }

    pub fn constant(r: Rational) -> Self {
        Self::from_coeffs(vec![r])
    }

    /// The polynomial `c`.
    pub fn c() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(coeff: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = coeff;
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> Rational {
        self.coeffs.get(degree).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        PolyC {
            coeffs: self.coeffs.iter().map(|a| a * r).collect(),
        }
    }

    pub fn eval(&self, c: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * c) + a;
        }
        acc
    }

    /// Substitutes another polynomial for `c`.
    pub fn compose(&self, inner: &PolyC) -> PolyC {
        let mut acc = PolyC::zero();
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &PolyC::constant(a.clone());
        }
        acc
    }

    /// Euclidean division over `Q[c]`: returns `(q, r)` with `self = q*b + r`.
    pub fn div_rem(&self, b: &PolyC) -> Result<(PolyC, PolyC)> {
        let bdeg = b
            .degree()
            .ok_or_else(|| Error::InvalidArgument("polynomial division by zero".into()))?;
        let lead_inv = b.coeffs[bdeg].inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let qlen = rem.len().saturating_sub(bdeg);
        let mut quot = vec![Rational::zero(); qlen];
        for shift in (0..qlen).rev() {
            let top = &rem[shift + bdeg] * &lead_inv;
            if top.is_zero() {
                continue;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                rem[shift + i] -= &(&top * bc);
            }
            quot[shift] = top;
        }
        Ok((PolyC::from_coeffs(quot), PolyC::from_coeffs(rem)))
    }

    /// Division that must be exact; a nonzero remainder is `NotDivisible`.
    pub fn exact_div(&self, b: &PolyC) -> Result<PolyC> {
        let (q, r) = self.div_rem(b)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible)
        }
    }
}

impl Zero for PolyC {
    fn zero() -> Self {
        PolyC { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for PolyC {
    fn one() -> Self {
        PolyC::constant(Rational::one())
    }
}

impl<'a> Add<&'a PolyC> for &'a PolyC {
    type Output = PolyC;
    fn add(self, rhs: &'a PolyC) -> PolyC {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        PolyC::from_coeffs(coeffs)
    }
}

impl<'a> Sub<&'a PolyC> for &'a PolyC {
    type Output = PolyC;
    fn sub(self, rhs: &'a PolyC) -> PolyC {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a PolyC> for &'a PolyC {
    type Output = PolyC;
    fn mul(self, rhs: &'a PolyC) -> PolyC {
        if self.is_zero() || rhs.is_zero() {
            return PolyC::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        PolyC::from_coeffs(coeffs)
    }
}

impl Neg for &PolyC {
    type Output = PolyC;
    fn neg(self) -> PolyC {
        PolyC {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Add for PolyC {
    type Output = PolyC;
    fn add(self, rhs: PolyC) -> PolyC {
        &self + &rhs
    }
}

impl Sub for PolyC {
    type Output = PolyC;
    fn sub(self, rhs: PolyC) -> PolyC {
        &self - &rhs
    }
}

impl Mul for PolyC {
    type Output = PolyC;
    fn mul(self, rhs: PolyC) -> PolyC {
        &self * &rhs
    }
}

impl Neg for PolyC {
    type Output = PolyC;
    fn neg(self) -> PolyC {
        -&self
    }
}

/// Human-readable form, highest degree first: `32c^2/35 - 1/7`, `c/2`.
impl fmt::Display for PolyC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let negative = a.is_negative();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let num = a.numer().abs();
            let den = a.denom();
            if deg == 0 || !num.is_one() {
                write!(f, "{num}")?;
            }
            match deg {
                0 => {}
                1 => f.write_str("c")?,
                _ => write!(f, "c^{deg}")?,
            }
            if !den.is_one() {
                write!(f, "/{den}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyC({self})")
    }
}
