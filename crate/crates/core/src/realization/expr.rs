use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::fock::Generator;
use crate::ring::LaurentPoly;

/// Expression built from the six basic fields. `alpha`, `alpha1`, `beta`,
/// `beta1` expand as `sum_n (mode)_n z^{-n-1}`; the starred fields as
/// `sum_n (mode)_n z^{-n}`.
#[derive(Clone, PartialEq)]
pub enum FieldExpression {
    Gen(Generator),
    Deriv(Box<FieldExpression>),
    /// Normal-ordered product; factors are `Gen` or `Deriv(Gen)`.
    NormProd(Vec<FieldExpression>),
    /// Product taken in the written order, without reordering. Only
    /// meaningful when the factors commute.
    Product(Vec<FieldExpression>),
    PolyMul(LaurentPoly<Rational>, Box<FieldExpression>),
    Sum(Vec<FieldExpression>),
    ScalarMul(Rational, Box<FieldExpression>),
}

impl FieldExpression {
    pub fn gen(g: Generator) -> Self {
        FieldExpression::Gen(g)
    }

    pub fn deriv(e: FieldExpression) -> Self {
        FieldExpression::Deriv(Box::new(e))
    }

    pub fn scalar(k: Rational, e: FieldExpression) -> Self {
        FieldExpression::ScalarMul(k, Box::new(e))
    }

    pub fn poly(p: LaurentPoly<Rational>, e: FieldExpression) -> Self {
        FieldExpression::PolyMul(p, Box::new(e))
    }

    pub fn norm(factors: impl IntoIterator<Item = Generator>) -> Self {
        FieldExpression::NormProd(factors.into_iter().map(FieldExpression::Gen).collect())
    }

    /// Flattens into a sum of monomial terms.
    pub fn expand(&self) -> Result<Vec<Term>> {
        let mut out = Vec::new();
        self.expand_into(&Rational::one(), 0, &mut out)?;
        out.retain(|t| !t.coeff.is_zero());
        Ok(out)
    }

    fn expand_into(&self, coeff: &Rational, shift: i64, out: &mut Vec<Term>) -> Result<()> {
        match self {
            FieldExpression::Gen(_) | FieldExpression::Deriv(_) => {
                out.push(Term {
                    coeff: coeff.clone(),
                    shift,
                    factors: vec![Factor::from_expr(self)?],
                    literal: false,
                });
            }
            FieldExpression::NormProd(fs) | FieldExpression::Product(fs) => {
                let literal = matches!(self, FieldExpression::Product(_));
                let factors = fs.iter().map(Factor::from_expr).collect::<Result<Vec<_>>>()?;
                if factors.is_empty() {
                    return Err(Error::InvalidArgument("empty product of fields".into()));
                }
                if literal {
                    check_commuting(&factors)?;
                }
                out.push(Term {
                    coeff: coeff.clone(),
                    shift,
                    factors,
                    literal,
                });
            }
            FieldExpression::PolyMul(p, e) => {
                for (k, a) in p.terms() {
                    e.expand_into(&(coeff * a), shift + k, out)?;
                }
            }
            FieldExpression::Sum(es) => {
                for e in es {
                    e.expand_into(coeff, shift, out)?;
                }
            }
            FieldExpression::ScalarMul(k, e) => e.expand_into(&(coeff * k), shift, out)?,
        }
        Ok(())
    }
}

/// `alpha` does not commute with `alpha*`, nor `alpha1` with `alpha1*`;
/// every other pair of fields commutes.
fn check_commuting(factors: &[Factor]) -> Result<()> {
    use Generator::*;
    for (i, a) in factors.iter().enumerate() {
        for b in &factors[i + 1..] {
            let clash = matches!(
                (a.generator, b.generator),
                (A, AStar) | (AStar, A) | (A1, A1Star) | (A1Star, A1)
            );
            if clash {
                return Err(Error::InvalidArgument(format!(
                    "product of {} and {} needs a normal ordering",
                    a.generator.name(),
                    b.generator.name()
                )));
            }
        }
    }
    Ok(())
}

impl fmt::Display for FieldExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, es: &[FieldExpression], sep: &str| -> fmt::Result {
            for (i, e) in es.iter().enumerate() {
                if i > 0 {
                    f.write_str(sep)?;
                }
                write!(f, "{e}")?;
            }
            Ok(())
        };
        match self {
            FieldExpression::Gen(g) => f.write_str(field_name(*g)),
            FieldExpression::Deriv(e) => write!(f, "d({e})"),
            FieldExpression::NormProd(es) => {
                f.write_str(":")?;
                join(f, es, " ")?;
                f.write_str(":")
            }
            FieldExpression::Product(es) => join(f, es, " "),
            FieldExpression::PolyMul(p, e) => write!(f, "[{p:?}]({e})"),
            FieldExpression::Sum(es) => {
                f.write_str("(")?;
                join(f, es, " + ")?;
                f.write_str(")")
            }
            FieldExpression::ScalarMul(k, e) => write!(f, "{k}*{e}"),
        }
    }
}

impl fmt::Debug for FieldExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn field_name(g: Generator) -> &'static str {
    match g {
        Generator::A => "alpha",
        Generator::AStar => "alpha*",
        Generator::A1 => "alpha1",
        Generator::A1Star => "alpha1*",
        Generator::B => "beta",
        Generator::B1 => "beta1",
    }
}

/// One field factor, possibly differentiated once in `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factor {
    pub generator: Generator,
    pub deriv: bool,
}

impl Factor {
    fn from_expr(e: &FieldExpression) -> Result<Self> {
        match e {
            FieldExpression::Gen(g) => Ok(Factor {
                generator: *g,
                deriv: false,
            }),
            FieldExpression::Deriv(inner) => match **inner {
                FieldExpression::Gen(g) => Ok(Factor {
                    generator: g,
                    deriv: true,
                }),
                _ => Err(Error::InvalidArgument(format!("unsupported derivative of {inner}"))),
            },
            _ => Err(Error::InvalidArgument(format!("unsupported product factor {e}"))),
        }
    }

    /// `w` in the expansion `sum_n (mode)_n z^{-n-w}`.
    pub fn weight(&self) -> i64 {
        if self.generator.is_starred() {
            0
        } else {
            1
        }
    }

    /// Exponent offset: the factor contributes `z^{-(n + offset)}` at mode `n`.
    pub fn offset(&self) -> i64 {
        self.weight() + self.deriv as i64
    }

    /// Scalar picked up at mode `n`: `-(n + w)` for a derivative, else 1.
    pub fn mode_coeff(&self, n: i64) -> Rational {
        if self.deriv {
            Rational::from_int(-(n + self.weight()))
        } else {
            Rational::one()
        }
    }
}

/// `coeff * z^shift * F_1 ... F_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: Rational,
    pub shift: i64,
    pub factors: Vec<Factor>,
    /// Written-order product of commuting factors.
    pub literal: bool,
}

impl Term {
    /// Sum of the factor mode indices contributing to the `z^{-m-1}`
    /// coefficient: `sum_i (n_i + offset_i) = m + 1 + shift`.
    pub fn index_total(&self, m: i64) -> i64 {
        m + 1 + self.shift - self.factors.iter().map(Factor::offset).sum::<i64>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    #[test]
    fn expansion_distributes_polynomials() {
        let p = LaurentPoly::from_terms([(4, Rational::one()), (2, Rational::from_int(-4)), (0, Rational::one())]);
        let e = FieldExpression::Sum(vec![
            FieldExpression::scalar(
                Rational::from_int(2),
                FieldExpression::poly(p, FieldExpression::norm([A, A1Star])),
            ),
            FieldExpression::gen(B1),
        ]);
        let terms = e.expand().unwrap();
        assert_eq!(terms.len(), 4);
        assert_eq!(terms[0].shift, 0);
        assert_eq!(terms[1].coeff, Rational::from_int(-8));
        assert_eq!(terms[2].shift, 4);
        assert_eq!(
            terms[3].factors,
            vec![Factor {
                generator: B1,
                deriv: false
            }]
        );
    }

    #[test]
    fn index_totals() {
        let t = &FieldExpression::norm([A, AStar]).expand().unwrap()[0];
        // a_i a*_j with i + j = m
        assert_eq!(t.index_total(-1), -1);
        let t = &FieldExpression::deriv(FieldExpression::gen(AStar)).expand().unwrap()[0];
        assert_eq!(t.index_total(3), 3);
        assert_eq!(t.factors[0].mode_coeff(3), Rational::from_int(-3));
    }

    #[test]
    fn literal_products_must_commute() {
        assert!(
            FieldExpression::Product(vec![FieldExpression::gen(A1), FieldExpression::gen(AStar)])
                .expand()
                .is_ok()
        );
        assert!(
            FieldExpression::Product(vec![FieldExpression::gen(A1), FieldExpression::gen(A1Star)])
                .expand()
                .is_err()
        );
        let nested = FieldExpression::NormProd(vec![FieldExpression::norm([A])]);
        assert!(nested.expand().is_err());
    }
}
