//! The four canonical polynomial families `P_{j,k}(c)`, `j in {-4,-3,-2,-1}`.
//!
//! Every family satisfies
//!
//! ```text
//! (6 + 2k) P_k = 4kc P_{k-2} - 2(k - 3) P_{k-4},   k >= 0,
//! ```
//!
//! and is singled out by the initial condition `P_{j,i} = [i = j]` for
//! `i in -4..=-1`. Besides the recursion, the families are produced from
//! Gegenbauer closed forms (odd families) and from formal elliptic-integral
//! series (even families), and all routes are checked against each other and
//! against the generating-function ODE.

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::arith::{series_sqrt_gegenbauer, LaurentSeries, PolyC, Rational, EXACT_ORDER};
use crate::error::{Error, Result};

/// Default recursion depth for family tables.
pub const DEFAULT_RECURSION_KMAX: i64 = 50;
/// Default series order for the elliptic-integral expansions.
pub const DEFAULT_SERIES_ORDER: i64 = 40;

/// One of the four canonical families, named by the index of its unit
/// initial value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    M4,
    M3,
    M2,
    M1,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::M4, Family::M3, Family::M2, Family::M1];

    pub fn index(self) -> i64 {
        match self {
            Family::M4 => -4,
            Family::M3 => -3,
            Family::M2 => -2,
            Family::M1 => -1,
        }
    }

    pub fn from_index(which: i64) -> Result<Self> {
        match which {
            -4 => Ok(Family::M4),
            -3 => Ok(Family::M3),
            -2 => Ok(Family::M2),
            -1 => Ok(Family::M1),
            _ => Err(Error::InvalidArgument(alloc::format!(
                "family index must be one of -4, -3, -2, -1 (got {which})"
            ))),
        }
    }

    /// `P_{self, i}` for `i in -4..=-1`.
    pub fn initial_value(self, i: i64) -> PolyC {
        if i == self.index() {
            PolyC::one()
        } else {
            PolyC::zero()
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// `Q_n^{(lambda)}(c)` for `n = 0..=n_max` by the three-term recursion
/// `n Q_n = 2c(n + lambda - 1) Q_{n-1} - (n + 2 lambda - 2) Q_{n-2}`.
pub fn gegenbauer_sequence(lambda: &Rational, n_max: usize) -> Vec<PolyC> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(PolyC::one());
    if n_max == 0 {
        return out;
    }
    let two_lambda = lambda * &Rational::from_int(2);
    out.push(PolyC::from_coeffs(alloc::vec![Rational::zero(), two_lambda.clone()]));
    for n in 2..=n_max {
        let nr = Rational::from_int(n as i64);
        let a = &(&nr + lambda) - &Rational::one();
        let b = &(&nr + &two_lambda) - &Rational::from_int(2);
        let two_c = PolyC::from_ints(&[0, 2]);
        let first = (&two_c * &out[n - 1]).scale(&a);
        let second = out[n - 2].scale(&b);
        let next = (&first - &second).scale(&nr.inv().unwrap());
        out.push(next);
    }
    out
}

/// `Q_n^{(lambda)}(c)`.
pub fn gegenbauer(lambda: &Rational, n: usize) -> PolyC {
    gegenbauer_sequence(lambda, n).pop().unwrap()
}

/// `P_{which, k}` for `k = -4..=k_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyTable {
    family: Family,
    entries: Vec<PolyC>,
}

impl FamilyTable {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn k_max(&self) -> i64 {
        self.entries.len() as i64 - 5
    }

    pub fn get(&self, k: i64) -> Option<&PolyC> {
        usize::try_from(k + 4).ok().and_then(|i| self.entries.get(i))
    }

    /// `(k, P_k)` pairs from `k = -4`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &PolyC)> + '_ {
        self.entries.iter().enumerate().map(|(i, p)| (i as i64 - 4, p))
    }
}

pub fn family_by_recursion(family: Family, k_max: i64) -> Result<FamilyTable> {
    if k_max < -1 {
        return Err(Error::InvalidArgument(alloc::format!(
            "k_max must be at least -1 (got {k_max})"
        )));
    }
    let mut entries: Vec<PolyC> = (-4..=-1).map(|i| family.initial_value(i)).collect();
    for k in 0..=k_max {
        let at = |i: i64| &entries[(i + 4) as usize];
        let lhs = Rational::from_int(6 + 2 * k).inv().unwrap();
        let four_k_c = PolyC::from_ints(&[0, 4 * k]);
        let rhs = &(&four_k_c * at(k - 2)) - &at(k - 4).scale(&Rational::from_int(2 * (k - 3)));
        entries.push(rhs.scale(&lhs));
    }
    Ok(FamilyTable { family, entries })
}

/// Gegenbauer closed forms of the odd families:
/// `P_{-1,2n-3} = -c Q_n / (c^2 - 1)` and `P_{-3,2n-3} = -Q_n / (c^2 - 1)`,
/// with `Q_n = Q_n^{(-1/2)}`.
pub fn family_closed_form_odd(family: Family, n: usize) -> Result<PolyC> {
    if n < 2 {
        return Err(Error::InvalidArgument(alloc::format!(
            "closed form needs n >= 2 (got {n})"
        )));
    }
    let q = gegenbauer(&Rational::ratio(-1, 2), n);
    let numer = match family {
        Family::M1 => -(&PolyC::c() * &q),
        Family::M3 => -q,
        _ => {
            return Err(Error::InvalidArgument(
                "closed form exists only for the families -1 and -3".into(),
            ))
        }
    };
    numer.exact_div(&PolyC::from_ints(&[-1, 0, 1]))
}

/// Generating function `sum_{k >= 0} P_{which,k-4} z^k` of an even family,
/// computed from its elliptic-integral representation: expand
/// `(z^4 - 2cz^2 + 1)^{-3/2}` by Gegenbauer, multiply by the integrand
/// prefactor, integrate with zero constant, multiply by `z sqrt(1 - 2cz^2 + z^4)`.
pub fn family_elliptic_series(family: Family, order: i64) -> Result<LaurentSeries<PolyC>> {
    if order < 1 {
        return Err(Error::InvalidArgument("series order must be at least 1".into()));
    }
    // inner integrals have valuation >= -1, the square-root factor >= 1
    let inner_order = order + 1;
    let n_max = ((inner_order + 2).max(0) / 2) as usize;
    let q = gegenbauer_sequence(&Rational::ratio(3, 2), n_max);
    let inv_pow = LaurentSeries::from_terms(
        q.into_iter().enumerate().map(|(n, p)| (2 * n as i64, p)),
        2 * n_max as i64 + 1,
    );
    let integrand = match family {
        Family::M4 => {
            let prefactor = LaurentSeries::polynomial([(0, PolyC::from_ints(&[0, 4])), (-2, -PolyC::one())]);
            prefactor.mul(&inv_pow)
        }
        Family::M2 => inv_pow,
        _ => {
            return Err(Error::InvalidArgument(
                "elliptic series exist only for the families -4 and -2".into(),
            ))
        }
    };
    let integral = integrand.antiderivative()?.truncate(inner_order);
    let root = series_sqrt_gegenbauer(order + 2)?;
    let product = root.mul(&integral);
    if product.order() < order {
        return Err(Error::TruncationUnderflow {
            requested: order - 1,
            order: product.order(),
        });
    }
    Ok(product.truncate(order))
}

/// `sum_{k=0}^{order-1} P_{which,k-4} z^k` from the recursion.
pub fn generating_function(family: Family, order: i64) -> Result<LaurentSeries<PolyC>> {
    if order < 1 {
        return Err(Error::InvalidArgument("series order must be at least 1".into()));
    }
    let table = family_by_recursion(family, (order - 5).max(-1))?;
    let terms = table.iter().map(|(k, p)| (k + 4, p.clone()));
    Ok(LaurentSeries::from_terms(terms, order))
}

/// Denominator-cleared residual of the generating-function ODE
///
/// ```text
/// (z^5 - 2cz^3 + z) P' - (3z^4 - 4cz^2 + 1) P
///     - [2(P_{-1} + c P_{-3}) z^3 + P_{-2} z^2 + (4cz^2 - 1) P_{-4}],
/// ```
///
/// with the scalar initial values taken from `family`. Zero to the trusted
/// order exactly when `series` solves the ODE for that initial condition.
pub fn ode_residual(series: &LaurentSeries<PolyC>, family: Family, order: i64) -> Result<LaurentSeries<PolyC>> {
    if series.order() < order {
        return Err(Error::TruncationUnderflow {
            requested: order - 1,
            order: series.order(),
        });
    }
    let series = series.truncate(order);
    let c = PolyC::c();
    let quintic = LaurentSeries::polynomial([(5, PolyC::one()), (3, PolyC::from_ints(&[0, -2])), (1, PolyC::one())]);
    let quartic = LaurentSeries::polynomial([
        (4, PolyC::from_ints(&[3])),
        (2, PolyC::from_ints(&[0, -4])),
        (0, PolyC::one()),
    ]);
    let p = |i| family.initial_value(i);
    let p1_plus_c_p3 = &p(-1) + &(&c * &p(-3));
    let rhs = LaurentSeries::from_terms(
        [
            (3, p1_plus_c_p3.scale(&Rational::from_int(2))),
            (2, p(-2)),
            (2, &PolyC::from_ints(&[0, 4]) * &p(-4)),
            (0, -p(-4)),
        ],
        EXACT_ORDER,
    );
    let lhs = quintic.mul(&series.derivative()).sub(&quartic.mul(&series));
    Ok(lhs.sub(&rhs).truncate(order))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn poly(coeffs: &[(i64, i64)]) -> PolyC {
        PolyC::from_coeffs(coeffs.iter().map(|&(n, d)| q(n, d)).collect())
    }

    #[test]
    fn gegenbauer_examples() {
        assert_eq!(gegenbauer(&q(-1, 2), 0), PolyC::one());
        assert_eq!(gegenbauer(&q(-1, 2), 2), poly(&[(1, 2), (0, 1), (-1, 2)]));
        assert_eq!(gegenbauer(&q(3, 2), 2), poly(&[(-3, 2), (0, 1), (15, 2)]));
        // Q_3^{(-1/2)} = c(1 - c^2)/2
        assert_eq!(gegenbauer(&q(-1, 2), 3), poly(&[(0, 1), (1, 2), (0, 1), (-1, 2)]));
    }

    #[test]
    fn recursion_examples() {
        let m3 = family_by_recursion(Family::M3, 10).unwrap();
        assert_eq!(m3.get(1).unwrap(), &PolyC::constant(q(1, 2)));
        let m1 = family_by_recursion(Family::M1, 10).unwrap();
        assert_eq!(m1.get(3).unwrap(), &poly(&[(0, 1), (0, 1), (1, 2)]));
        let m4 = family_by_recursion(Family::M4, 10).unwrap();
        assert_eq!(m4.get(4).unwrap(), &poly(&[(-5, 35), (0, 1), (32, 35)]));
        assert_eq!(m4.get(2).unwrap(), &poly(&[(0, 1), (4, 5)]));
        let m2 = family_by_recursion(Family::M2, 10).unwrap();
        assert_eq!(m2.get(2).unwrap(), &PolyC::constant(q(1, 5)));
    }

    #[test]
    fn table_indexing_and_initial_block() {
        for fam in Family::ALL {
            let t = family_by_recursion(fam, -1).unwrap();
            assert_eq!(t.k_max(), -1);
            for i in -4..=-1 {
                assert_eq!(t.get(i).unwrap(), &fam.initial_value(i));
            }
            assert!(t.get(0).is_none());
            assert!(t.get(-5).is_none());
        }
        assert!(family_by_recursion(Family::M4, -2).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(family_closed_form_odd(Family::M3, 2).unwrap(), PolyC::constant(q(1, 2)));
        assert_eq!(family_closed_form_odd(Family::M1, 2).unwrap(), poly(&[(0, 1), (1, 2)]));
        assert_eq!(
            family_closed_form_odd(Family::M1, 3).unwrap(),
            poly(&[(0, 1), (0, 1), (1, 2)])
        );
        assert!(family_closed_form_odd(Family::M4, 3).is_err());
        assert!(family_closed_form_odd(Family::M1, 1).is_err());
    }

    #[test]
    fn elliptic_series_low_coefficients() {
        let s = family_elliptic_series(Family::M4, 10).unwrap();
        assert_eq!(s.coeff(0).unwrap(), PolyC::one());
        assert_eq!(s.coeff(2).unwrap(), PolyC::zero());
        assert_eq!(s.coeff(6).unwrap(), poly(&[(0, 1), (4, 5)]));
        assert!(s.coeff(10).is_err());
        assert!(family_elliptic_series(Family::M3, 10).is_err());
    }

    #[test]
    fn generating_function_examples() {
        let g3 = generating_function(Family::M3, 12).unwrap();
        assert_eq!(g3.coeff(1).unwrap(), PolyC::one());
        let g2 = generating_function(Family::M2, 12).unwrap();
        assert_eq!(g2.coeff(2).unwrap(), PolyC::one());
        assert_eq!(g2.coeff(6).unwrap(), PolyC::constant(q(1, 5)));
        assert_eq!(g2.order(), 12);
    }

    #[test]
    fn ode_residual_vanishes_and_detects_mismatch() {
        for fam in Family::ALL {
            let g = generating_function(fam, 30).unwrap();
            let r = ode_residual(&g, fam, 30).unwrap();
            assert!(r.is_zero(), "family {fam}: {r:?}");
            assert_eq!(r.order(), 30);
        }
        let g = generating_function(Family::M4, 30).unwrap();
        let r = ode_residual(&g, Family::M2, 30).unwrap();
        assert!(!r.coeff(0).unwrap().is_zero() || !r.coeff(2).unwrap().is_zero());
    }

    #[test]
    fn parity_of_families() {
        let m1 = family_by_recursion(Family::M1, 30).unwrap();
        let m3 = family_by_recursion(Family::M3, 30).unwrap();
        let m4 = family_by_recursion(Family::M4, 30).unwrap();
        let m2 = family_by_recursion(Family::M2, 30).unwrap();
        for m in 0..=15 {
            assert!(m1.get(2 * m).unwrap().is_zero());
            assert!(m3.get(2 * m).unwrap().is_zero());
        }
        for m in -2..=14 {
            assert!(m4.get(2 * m + 1).unwrap().is_zero());
            assert!(m2.get(2 * m + 1).unwrap().is_zero());
        }
    }

    #[test]
    fn elliptic_series_matches_recursion() {
        for fam in [Family::M4, Family::M2] {
            let e = family_elliptic_series(fam, 24).unwrap();
            let g = generating_function(fam, 24).unwrap();
            assert_eq!(e, g, "family {fam}");
        }
    }
}
