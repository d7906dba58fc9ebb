use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use super::expr::{FieldExpression, Term};
use super::modes::{mode_apply, EnumerationWindow, ModeOperator};
use crate::algebra::{AlgebraElement, BasisKey, Bracket, ClosedBracket, PsiConvention, Sl2};
use crate::arith::Rational;
use crate::error::Result;
use crate::fock::{FockState, Generator, Monomial, RealizationParams, VIndex};
use crate::report::{Report, Violation};
use crate::ring::LaurentPoly;

/// How to read the first term of `tau(e1)`, printed without colons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum E1Reading {
    #[default]
    NormalOrdered,
    /// The written-order product; its factors commute, so this is allowed.
    Literal,
}

/// Convention choices fixed for a whole run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Conventions {
    pub psi: PsiConvention,
    pub e1_reading: E1Reading,
    pub window: EnumerationWindow,
}

/// `P(z) = z^4 - 2 c0 z^2 + 1`.
pub fn p_of_z(c0: &Rational) -> LaurentPoly<Rational> {
    LaurentPoly::from_terms([
        (4, Rational::one()),
        (2, &Rational::from_int(-2) * c0),
        (0, Rational::one()),
    ])
}

/// The six generating fields `e, f, h, e1, f1, h1`, as `(x, odd)` pairs.
pub const GENERATORS: [(Sl2, bool); 6] = [
    (Sl2::E, false),
    (Sl2::F, false),
    (Sl2::H, false),
    (Sl2::E, true),
    (Sl2::F, true),
    (Sl2::H, true),
];

/// The image of the generating field `x(z)` (or `x^1(z)` when `odd`).
pub fn tau_field(x: Sl2, odd: bool, params: &RealizationParams, reading: E1Reading) -> FieldExpression {
    use FieldExpression as F;
    use Generator::*;
    let int = Rational::from_int;
    let p = || p_of_z(&params.c0);
    let chi0 = params.chi0();
    match (x, odd) {
        (Sl2::F, false) => F::scalar(int(-1), F::gen(A)),
        (Sl2::F, true) => F::scalar(int(-1), F::gen(A1)),
        (Sl2::H, false) => F::Sum(vec![
            F::scalar(int(2), F::norm([A, AStar])),
            F::scalar(int(2), F::norm([A1, A1Star])),
            F::gen(B),
        ]),
        (Sl2::H, true) => F::Sum(vec![
            F::scalar(int(2), F::norm([A1, AStar])),
            F::scalar(int(2), F::poly(p(), F::norm([A, A1Star]))),
            F::gen(B1),
        ]),
        (Sl2::E, false) => F::Sum(vec![
            F::norm([A, AStar, AStar]),
            F::poly(p(), F::norm([A, A1Star, A1Star])),
            F::scalar(int(2), F::norm([A1, AStar, A1Star])),
            F::norm([B, AStar]),
            F::norm([B1, A1Star]),
            F::scalar(chi0, F::deriv(F::gen(AStar))),
        ]),
        (Sl2::E, true) => {
            let first = match reading {
                E1Reading::NormalOrdered => F::norm([A1, AStar, AStar]),
                E1Reading::Literal => F::Product(vec![F::gen(A1), F::gen(AStar), F::gen(AStar)]),
            };
            let dp = LaurentPoly::from_terms([(3, int(2)), (1, &int(-2) * &params.c0)]);
            F::Sum(vec![
                first,
                F::poly(
                    p(),
                    F::Sum(vec![
                        F::norm([A1, A1Star, A1Star]),
                        F::scalar(int(2), F::norm([A, AStar, A1Star])),
                    ]),
                ),
                F::norm([B1, AStar]),
                F::poly(p(), F::norm([B, A1Star])),
                F::scalar(
                    chi0,
                    F::Sum(vec![
                        F::poly(p(), F::deriv(F::gen(A1Star))),
                        F::poly(dp, F::gen(A1Star)),
                    ]),
                ),
            ])
        }
    }
}

/// The realization at one parameter set, with field expansions and the
/// specialized bracket precomputed.
pub struct Realization {
    params: RealizationParams,
    conventions: Conventions,
    fields: Vec<Vec<Term>>,
    bracket: ClosedBracket<Rational>,
}

fn slot(x: Sl2, odd: bool) -> usize {
    GENERATORS.iter().position(|g| *g == (x, odd)).expect("six generators")
}

impl Realization {
    /// `window` bounds the modes that will be bracketed.
    pub fn new(params: RealizationParams, conventions: Conventions, window: i64) -> Result<Self> {
        let fields = GENERATORS
            .iter()
            .map(|&(x, odd)| tau_field(x, odd, &params, conventions.e1_reading).expand())
            .collect::<Result<Vec<_>>>()?;
        let bracket = ClosedBracket::new(params.c0.clone(), window + 4, conventions.psi);
        Ok(Realization {
            params,
            conventions,
            fields,
            bracket,
        })
    }

    pub fn params(&self) -> &RealizationParams {
        &self.params
    }

    pub fn conventions(&self) -> Conventions {
        self.conventions
    }

    /// `tau(key) s`; `w0` acts as `chi0`, the other centrals as zero.
    pub fn tau_apply(&self, key: &BasisKey, s: &FockState) -> Result<FockState> {
        match *key {
            BasisKey::Central(0) => Ok(s.scale(&self.params.chi0())),
            BasisKey::Central(_) => Ok(FockState::zero()),
            BasisKey::Current { x, odd, n } => {
                let op = ModeOperator::from_terms(self.fields[slot(x, odd)].clone(), n);
                mode_apply(&op, s, &self.params, self.conventions.window)
            }
        }
    }

    pub fn tau_apply_element(&self, a: &AlgebraElement<Rational>, s: &FockState) -> Result<FockState> {
        let mut out = FockState::zero();
        for (key, coeff) in a.terms() {
            out.add_scaled(&self.tau_apply(key, s)?, coeff);
        }
        Ok(out)
    }

    pub fn bracket(&self, a: &BasisKey, b: &BasisKey) -> AlgebraElement<Rational> {
        self.bracket.bracket_basis(a, b)
    }

    /// `tau(X) tau(Y) s - tau(Y) tau(X) s - tau([X, Y]) s`.
    pub fn check_commutator(&self, x: &BasisKey, y: &BasisKey, s: &FockState) -> Result<FockState> {
        let ys = self.tau_apply(y, s)?;
        let xs = self.tau_apply(x, s)?;
        self.residual(x, y, s, &xs, &ys)
    }

    fn residual(&self, x: &BasisKey, y: &BasisKey, s: &FockState, xs: &FockState, ys: &FockState) -> Result<FockState> {
        let xys = self.tau_apply(x, ys)?;
        let yxs = self.tau_apply(y, xs)?;
        let rhs = self.tau_apply_element(&self.bracket(x, y), s)?;
        Ok(xys.sub(&yxs).sub(&rhs))
    }

    /// All 21 unordered generator pairs, all modes in `[-window, window]`,
    /// on one state. Images of basis monomials are memoized for the
    /// duration of the call.
    pub fn verify_state(&self, window: i64, s: &FockState, label: &str) -> Result<Report> {
        let mut memo = Memo {
            real: self,
            cache: BTreeMap::new(),
        };
        let modes: Vec<i64> = (-window..=window).collect();
        let mut first = Vec::with_capacity(GENERATORS.len());
        for &(x, odd) in &GENERATORS {
            let row = modes
                .iter()
                .map(|&n| memo.apply(&BasisKey::current(x, odd, n), s))
                .collect::<Result<Vec<_>>>()?;
            first.push(row);
        }
        let mut report = Report::default();
        for i in 0..GENERATORS.len() {
            for j in i..GENERATORS.len() {
                let (xa, oa) = GENERATORS[i];
                let (xb, ob) = GENERATORS[j];
                for (mi, &m) in modes.iter().enumerate() {
                    for (ni, &n) in modes.iter().enumerate() {
                        let a = BasisKey::current(xa, oa, m);
                        let b = BasisKey::current(xb, ob, n);
                        let mut r = memo.apply(&a, &first[j][ni])?;
                        r = r.sub(&memo.apply(&b, &first[i][mi])?);
                        for (key, coeff) in self.bracket(&a, &b).terms() {
                            r.add_scaled(&memo.apply(key, s)?, &-coeff);
                        }
                        report.record((!r.is_zero()).then(|| Violation {
                            witness: format!("[tau({a}), tau({b})] on {label} ({})", self.params),
                            residual: r.to_string(),
                        }));
                    }
                }
            }
        }
        Ok(report)
    }
}

struct Memo<'a> {
    real: &'a Realization,
    cache: BTreeMap<(BasisKey, Monomial, VIndex), FockState>,
}

impl Memo<'_> {
    fn apply(&mut self, key: &BasisKey, s: &FockState) -> Result<FockState> {
        if !matches!(key, BasisKey::Current { .. }) {
            return self.real.tau_apply(key, s);
        }
        let mut out = FockState::zero();
        for (mono, v, coeff) in s.terms() {
            let cache_key = (*key, mono.clone(), v);
            if !self.cache.contains_key(&cache_key) {
                let mut basis = FockState::zero();
                basis.add_term(mono.clone(), v, Rational::one());
                let image = self.real.tau_apply(key, &basis)?;
                self.cache.insert(cache_key.clone(), image);
            }
            out.add_scaled(&self.cache[&cache_key], coeff);
        }
        Ok(out)
    }
}

/// Sequential sweep over parameter sets and states.
pub fn verify_realization(
    window: i64,
    states: &[FockState],
    params_list: &[RealizationParams],
    conventions: Conventions,
) -> Result<Report> {
    let mut parts = Vec::new();
    for p in params_list {
        let real = Realization::new(p.clone(), conventions, window)?;
        for (i, s) in states.iter().enumerate() {
            parts.push(real.verify_state(window, s, &format!("state {i}"))?);
        }
    }
    Ok(Report::merge(parts))
}
