use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{PolyC, Rational};

/// Coefficient field for ring, algebra and series computations.
///
/// Two instances exist: [`PolyC`], the generic parameter `c` kept symbolic
/// over `Q[c]`, and [`Rational`], the parameter specialized to a value `c0`.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(r: Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    /// Multiplies by a rational constant.
    fn scale(&self, r: &Rational) -> Self;

    /// Evaluates a polynomial in `c` at the given value of `c`.
    fn eval_poly(p: &PolyC, c: &Self) -> Self {
        let mut acc = Self::zero();
        for coeff in p.coeffs().iter().rev() {
            acc = acc * c.clone() + Self::from_rational(coeff.clone());
        }
        acc
    }
}

impl Scalar for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }

    fn scale(&self, r: &Rational) -> Self {
        self * r
    }

    fn eval_poly(p: &PolyC, c: &Self) -> Self {
        p.eval(c)
    }
}

impl Scalar for PolyC {
    fn from_rational(r: Rational) -> Self {
        PolyC::constant(r)
    }

    fn scale(&self, r: &Rational) -> Self {
        PolyC::scale(self, r)
    }

    fn eval_poly(p: &PolyC, c: &Self) -> Self {
        p.compose(c)
    }
}
