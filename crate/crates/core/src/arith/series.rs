use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::{PolyC, Rational, Scalar};
use crate::error::{Error, Result};
use crate::families::gegenbauer_sequence;

/// Trusted order used for series that are really polynomials.
pub const EXACT_ORDER: i64 = i64::MAX / 4;

/// A truncated Laurent series `sum_k a_k z^k` whose coefficients are
/// trusted for exponents strictly below `order`.
///
/// Arithmetic tracks the tightest order it can prove, so "equal up to
/// order N" is a checkable claim: reading a coefficient at or above the
/// trusted order is an error rather than a silent zero.
#[derive(Clone, PartialEq)]
pub struct LaurentSeries<K> {
    min_exponent: i64,
    coeffs: Vec<K>,
    order: i64,
}

impl<K: Scalar> LaurentSeries<K> {
    pub fn new(min_exponent: i64, coeffs: Vec<K>, order: i64) -> Self {
        let mut s = LaurentSeries {
            min_exponent,
            coeffs,
            order,
        };
        s.normalize();
        s
    }

    pub fn zero(order: i64) -> Self {
        LaurentSeries {
            min_exponent: 0,
            coeffs: Vec::new(),
            order,
        }
    }

    /// A polynomial, trusted to every order.
    pub fn polynomial(terms: impl IntoIterator<Item = (i64, K)>) -> Self {
        Self::from_terms(terms, EXACT_ORDER)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, K)>, order: i64) -> Self {
        let terms: Vec<(i64, K)> = terms.into_iter().filter(|(e, _)| *e < order).collect();
        let Some(lo) = terms.iter().map(|(e, _)| *e).min() else {
            return Self::zero(order);
        };
        let hi = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut coeffs = alloc::vec![K::zero(); (hi - lo + 1) as usize];
        for (e, a) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = slot.clone() + a;
        }
        Self::new(lo, coeffs, order)
    }

    fn normalize(&mut self) {
        let keep = (self.order - self.min_exponent).clamp(0, self.coeffs.len() as i64) as usize;
        self.coeffs.truncate(keep);
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|a| a.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_exponent += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.min_exponent = 0;
        }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// Lowest exponent with a stored (nonzero) coefficient; 0 for the zero series.
    pub fn min_exponent(&self) -> i64 {
        self.min_exponent
    }

    /// Lower bound on the exponent of any nonzero trusted coefficient.
    pub fn valuation(&self) -> i64 {
        if self.coeffs.is_empty() {
            self.order
        } else {
            self.min_exponent
        }
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn coeff(&self, exponent: i64) -> Result<K> {
        if exponent >= self.order {
            return Err(Error::TruncationUnderflow {
                requested: exponent,
                order: self.order,
            });
        }
        let idx = exponent - self.min_exponent;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            Ok(K::zero())
        } else {
            Ok(self.coeffs[idx as usize].clone())
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &K)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(move |(i, a)| (self.min_exponent + i as i64, a))
    }

    /// Zero at every trusted exponent.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn truncate(&self, order: i64) -> Self {
        Self::new(self.min_exponent, self.coeffs.clone(), self.order.min(order))
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let terms = self.terms().chain(other.terms()).map(|(e, a)| (e, a.clone()));
        Self::from_terms(terms, order)
    }

    pub fn neg(&self) -> Self {
        Self::new(
            self.min_exponent,
            self.coeffs.iter().map(|a| -a.clone()).collect(),
            self.order,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &K) -> Self {
        Self::new(
            self.min_exponent,
            self.coeffs.iter().map(|a| a.clone() * k.clone()).collect(),
            self.order,
        )
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        Self::new(
            self.min_exponent,
            self.coeffs.iter().map(|a| a.scale(r)).collect(),
            self.order,
        )
    }

    /// Multiplies by `z^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        Self::new(
            self.min_exponent + shift,
            self.coeffs.clone(),
            self.order.saturating_add(shift),
        )
    }

    /// Product; trusted to `min(order_a + val_b, order_b + val_a)`.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self
            .order
            .saturating_add(other.valuation())
            .min(other.order.saturating_add(self.valuation()));
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero(order);
        }
        let lo = self.min_exponent + other.min_exponent;
        let len = ((order - lo).max(0) as usize).min(self.coeffs.len() + other.coeffs.len() - 1);
        let mut coeffs = alloc::vec![K::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len || a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                let slot = &mut coeffs[i + j];
                *slot = slot.clone() + a.clone() * b.clone();
            }
        }
        Self::new(lo, coeffs, order)
    }

    pub fn derivative(&self) -> Self {
        let terms = self
            .terms()
            .filter(|(e, _)| *e != 0)
            .map(|(e, a)| (e - 1, a.scale(&Rational::from_int(e))));
        Self::from_terms(terms, self.order - 1)
    }

    /// Formal antiderivative with zero constant term: `z^k -> z^{k+1}/(k+1)`.
    pub fn antiderivative(&self) -> Result<Self> {
        if !self.coeff(-1)?.is_zero() {
            return Err(Error::ExponentMinusOne);
        }
        let terms = self.terms().map(|(e, a)| (e + 1, a.scale(&Rational::ratio(1, e + 1))));
        Ok(Self::from_terms(terms, self.order.saturating_add(1)))
    }

    /// Inverse of a series `1 + O(z)`, by Newton iteration `g <- g(2 - f g)`,
    /// trusted below `target`.
    pub fn reciprocal_unit(&self, target: i64) -> Result<Self> {
        self.check_unit()?;
        let two = Self::polynomial([(0, K::from_int(2))]);
        let mut g = Self::polynomial([(0, K::one())]).truncate(1);
        let mut prec = 1;
        while prec < target {
            prec = (2 * prec).min(target);
            let f = self.truncate(prec);
            let g_exact = g.as_polynomial();
            g = g_exact.mul(&two.sub(&f.mul(&g_exact))).truncate(prec);
        }
        Ok(g.truncate(target))
    }

    /// Square root of a series `1 + O(z)` by Newton iteration
    /// `y <- (y + f/y)/2`, trusted below `target`.
    pub fn sqrt_unit(&self, target: i64) -> Result<Self> {
        self.check_unit()?;
        let half = Rational::ratio(1, 2);
        let mut y = Self::polynomial([(0, K::one())]).truncate(1);
        let mut prec = 1;
        while prec < target {
            prec = (2 * prec).min(target);
            let f = self.truncate(prec);
            let y_exact = y.as_polynomial();
            let quotient = f.mul(&y_exact.reciprocal_unit(prec)?);
            y = y_exact.add(&quotient).scale_rational(&half).truncate(prec);
        }
        Ok(y.truncate(target))
    }

    /// Same coefficients, declared exact. Used inside Newton steps, where
    /// the doubling of precision comes from the iteration, not the arithmetic.
    fn as_polynomial(&self) -> Self {
        Self::new(self.min_exponent, self.coeffs.clone(), EXACT_ORDER)
    }

    fn check_unit(&self) -> Result<()> {
        if self.valuation() < 0 || !self.coeff(0)?.is_one() {
            return Err(Error::NotUnit);
        }
        Ok(())
    }
}

impl<K: Scalar> fmt::Debug for LaurentSeries<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("LaurentSeries[")?;
        let mut first = true;
        for (e, a) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({a})z^{e}")?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, "; O(z^{})]", self.order)
    }
}

/// `z * sqrt(1 - 2cz^2 + z^4) = sum_n Q_n^{(-1/2)}(c) z^{2n+1}`, trusted
/// below `order`.
pub fn series_sqrt_gegenbauer(order: i64) -> Result<LaurentSeries<PolyC>> {
    if order < 1 {
        return Err(Error::InvalidArgument("series order must be at least 1".into()));
    }
    let n_max = ((order - 2).max(0) / 2) as usize;
    let q = gegenbauer_sequence(&Rational::ratio(-1, 2), n_max);
    let terms = q.into_iter().enumerate().map(|(n, p)| (2 * n as i64 + 1, p));
    Ok(LaurentSeries::from_terms(terms, order))
}

/// The same series computed by Newton iteration on `1 - 2cz^2 + z^4`,
/// independent of the Gegenbauer recursion.
pub fn series_sqrt_newton(order: i64) -> Result<LaurentSeries<PolyC>> {
    let quartic = LaurentSeries::polynomial([(0, PolyC::one()), (2, PolyC::from_ints(&[0, -2])), (4, PolyC::one())]);
    Ok(quartic.sqrt_unit(order - 1)?.shift(1))
}
