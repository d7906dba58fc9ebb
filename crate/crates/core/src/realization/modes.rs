//! Mode extraction: applying the `z^{-m-1}` coefficient of an infinite
//! normal-ordered sum to a finite state by a finite enumeration.
//!
//! For each factor the indices at which its mode can act nontrivially on
//! the state are a creation half-line plus a finite set of annihilation
//! indices read off from the variables present in the state (annihilators
//! act first, and only ever remove variables). Together with the linear
//! constraint on the index sum this bounds every factor but at most one,
//! which is then determined.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use super::expr::{FieldExpression, Term};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::fock::{apply_mode, is_creation, FockState, Generator, ModeKey, Ordering, RealizationParams, Var, VarKind};

/// How wide to enumerate mode tuples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EnumerationWindow {
    /// The derived window.
    #[default]
    Normal,
    /// Every bounded range twice as wide and no admissibility filter. Used
    /// only to confirm that the derived window drops nothing.
    Widened,
}

/// Applies a product of modes with creation-classified modes to the left
/// of the others; `b`-modes commute with every oscillator and are applied
/// with the annihilators.
pub fn normal_order_apply(factors: &[ModeKey], s: &FockState, params: &RealizationParams) -> FockState {
    let (create, other): (Vec<ModeKey>, Vec<ModeKey>) = factors.iter().partition(|k| is_creation(**k, params.ordering));
    apply_in_order(other.iter().chain(create.iter()).copied(), s, params)
}

/// Applies modes one after another, first element first.
fn apply_in_order(modes: impl Iterator<Item = ModeKey>, s: &FockState, params: &RealizationParams) -> FockState {
    let mut cur = s.clone();
    for k in modes {
        if cur.is_zero() {
            break;
        }
        cur = apply_mode(k, &cur, params);
    }
    cur
}

/// Indices where a factor can act nontrivially: `n <= hi` (the creation
/// half-line, possibly all of `Z`) together with a finite set.
#[derive(Debug, Clone)]
struct Admissible {
    line: Option<Option<i64>>,
    finite: BTreeSet<i64>,
}

impl Admissible {
    fn contains(&self, n: i64) -> bool {
        match self.line {
            Some(None) => true,
            Some(Some(hi)) if n <= hi => true,
            _ => self.finite.contains(&n),
        }
    }

    fn upper(&self) -> Option<i64> {
        match self.line {
            Some(None) => None,
            Some(Some(hi)) => Some(self.finite.iter().next_back().map_or(hi, |&f| f.max(hi))),
            None => Some(self.finite.iter().next_back().copied().unwrap_or(i64::MIN)),
        }
    }

    fn lower(&self) -> Option<i64> {
        match self.line {
            Some(_) => None,
            None => Some(self.finite.iter().next().copied().unwrap_or(i64::MAX)),
        }
    }
}

fn admissible(g: Generator, ordering: Ordering, vars: &BTreeSet<Var>) -> Admissible {
    let present = |kind: VarKind| vars.iter().filter(move |v| v.kind == kind).map(|v| v.index);
    match (g, ordering) {
        (Generator::A | Generator::A1, Ordering::Usual) => {
            let kind = if g == Generator::A { VarKind::X } else { VarKind::X1 };
            Admissible {
                line: Some(Some(-1)),
                finite: present(kind).filter(|&i| i >= 0).collect(),
            }
        }
        (Generator::A | Generator::A1, Ordering::Natural) => Admissible {
            line: Some(None),
            finite: BTreeSet::new(),
        },
        (Generator::AStar | Generator::A1Star, _) => {
            let kind = if g == Generator::AStar { VarKind::X } else { VarKind::X1 };
            let (line, min) = match ordering {
                Ordering::Usual => (Some(Some(0)), 1),
                Ordering::Natural => (None, i64::MIN),
            };
            Admissible {
                line,
                finite: present(kind).map(|i| -i).filter(|&n| n >= min).collect(),
            }
        }
        (Generator::B, _) => Admissible {
            line: Some(Some(0)),
            finite: present(VarKind::Y).map(|i| -i).collect(),
        },
        (Generator::B1, _) => Admissible {
            line: Some(Some(0)),
            finite: present(VarKind::Y1)
                .flat_map(|i| [-i - 4, -i - 2, -i])
                .filter(|&n| n > 0)
                .collect(),
        },
    }
}

/// Mode index tuples that can contribute for `term` at mode `m` on a state
/// with the given variables.
pub fn enumerate_tuples(
    term: &Term,
    m: i64,
    vars: &BTreeSet<Var>,
    ordering: Ordering,
    window: EnumerationWindow,
) -> Result<Vec<Vec<i64>>> {
    let k = term.factors.len();
    let total = term.index_total(m);
    let adm: Vec<Admissible> = term
        .factors
        .iter()
        .map(|f| admissible(f.generator, ordering, vars))
        .collect();
    let unbounded_above: Vec<usize> = (0..k).filter(|&i| adm[i].upper().is_none()).collect();
    let free = match unbounded_above.as_slice() {
        [] => k - 1,
        [i] => *i,
        _ => {
            return Err(Error::InfiniteModeSum(format!(
                "{} factors are unbounded above",
                unbounded_above.len()
            )))
        }
    };
    let sum_upper_except = |skip: usize| -> Option<i64> {
        (0..k)
            .filter(|&j| j != skip)
            .map(|j| adm[j].upper())
            .try_fold(0i64, |acc, u| u.map(|u| acc.saturating_add(u)))
    };
    let mut ranges: Vec<(i64, i64)> = Vec::with_capacity(k);
    for (i, a) in adm.iter().enumerate() {
        if i == free {
            ranges.push((0, 0));
            continue;
        }
        let hi = a.upper().expect("only the free factor is unbounded above");
        let lo = match a.lower() {
            Some(lo) => lo,
            None => match sum_upper_except(i) {
                Some(rest) => total.saturating_sub(rest),
                None => {
                    return Err(Error::InfiniteModeSum(format!(
                        "factor {} is unbounded below while another factor is unbounded above",
                        i
                    )))
                }
            },
        };
        ranges.push((lo, hi));
    }
    let empty = (0..k).any(|i| i != free && ranges[i].0 > ranges[i].1);
    if empty {
        return Ok(Vec::new());
    }
    if window == EnumerationWindow::Widened {
        for (i, r) in ranges.iter_mut().enumerate() {
            if i != free {
                let width = r.1 - r.0 + 2;
                *r = (r.0 - width, r.1 + width);
            }
        }
    }
    let candidates: Vec<Vec<i64>> = (0..k)
        .map(|i| {
            if i == free {
                Vec::new()
            } else if window == EnumerationWindow::Widened {
                (ranges[i].0..=ranges[i].1).collect()
            } else {
                (ranges[i].0..=ranges[i].1).filter(|&n| adm[i].contains(n)).collect()
            }
        })
        .collect();
    let mut out = Vec::new();
    let mut tuple = alloc::vec![0i64; k];
    fill(0, free, total, &candidates, &adm, window, &mut tuple, &mut out);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn fill(
    i: usize,
    free: usize,
    remaining: i64,
    candidates: &[Vec<i64>],
    adm: &[Admissible],
    window: EnumerationWindow,
    tuple: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if i == candidates.len() {
        if window == EnumerationWindow::Widened || adm[free].contains(remaining) {
            tuple[free] = remaining;
            out.push(tuple.clone());
        }
        return;
    }
    if i == free {
        fill(i + 1, free, remaining, candidates, adm, window, tuple, out);
        return;
    }
    for &n in &candidates[i] {
        tuple[i] = n;
        fill(i + 1, free, remaining - n, candidates, adm, window, tuple, out);
    }
}

/// Applies the `z^{-m-1}` coefficient of one expanded term.
pub fn term_apply(
    term: &Term,
    m: i64,
    s: &FockState,
    params: &RealizationParams,
    window: EnumerationWindow,
) -> Result<FockState> {
    let mut out = FockState::zero();
    if s.is_zero() {
        return Ok(out);
    }
    let tuples = enumerate_tuples(term, m, &s.variables(), params.ordering, window)?;
    for tuple in tuples {
        let mut coeff = term.coeff.clone();
        for (f, &n) in term.factors.iter().zip(&tuple) {
            coeff = &coeff * &f.mode_coeff(n);
        }
        if coeff.is_zero() {
            continue;
        }
        let modes: Vec<ModeKey> = term
            .factors
            .iter()
            .zip(&tuple)
            .map(|(f, &n)| ModeKey::new(f.generator, n))
            .collect();
        let r = if term.literal {
            // written order: the rightmost factor acts first
            apply_in_order(modes.iter().rev().copied(), s, params)
        } else {
            normal_order_apply(&modes, s, params)
        };
        out.add_scaled(&r, &coeff);
    }
    Ok(out)
}

/// The `z^{-m-1}` coefficient of a field expression, as an operator.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeOperator {
    terms: Vec<Term>,
    pub m: i64,
}

impl ModeOperator {
    pub fn new(expr: &FieldExpression, m: i64) -> Result<Self> {
        Ok(ModeOperator {
            terms: expr.expand()?,
            m,
        })
    }

    pub fn from_terms(terms: Vec<Term>, m: i64) -> Self {
        ModeOperator { terms, m }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }
}

pub fn mode_apply(
    op: &ModeOperator,
    s: &FockState,
    params: &RealizationParams,
    window: EnumerationWindow,
) -> Result<FockState> {
    let mut out = FockState::zero();
    for t in &op.terms {
        out.add_assign(&term_apply(t, op.m, s, params, window)?);
    }
    Ok(out)
}

/// Applies to every monomial separately and sums; equal to `mode_apply`
/// by linearity, but each piece gets its own (smaller) window.
pub fn mode_apply_termwise(
    op: &ModeOperator,
    s: &FockState,
    params: &RealizationParams,
    window: EnumerationWindow,
) -> Result<FockState> {
    let mut out = FockState::zero();
    for (mono, v, a) in s.terms() {
        let mut single = FockState::zero();
        single.add_term(mono.clone(), v, Rational::from_int(1));
        out.add_scaled(&mode_apply(op, &single, params, window)?, a);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::Var;
    use Generator::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn params(r: u8) -> RealizationParams {
        RealizationParams::new(q(2), r, q(1), [q(5), q(1), q(2), q(3)]).unwrap()
    }

    #[test]
    fn normal_order_examples() {
        let vac = FockState::vacuum(0);
        let p0 = params(0);
        let out = normal_order_apply(&[ModeKey::new(A, -1), ModeKey::new(AStar, 0)], &vac, &p0);
        assert_eq!(out, FockState::monomial(&[(Var::x(-1), 1), (Var::x(0), 1)], 0));
        assert!(normal_order_apply(&[ModeKey::new(A, 0), ModeKey::new(AStar, 0)], &vac, &p0).is_zero());
        let p1 = params(1);
        assert!(normal_order_apply(&[ModeKey::new(A, 0), ModeKey::new(AStar, 0)], &vac, &p1).is_zero());
    }

    #[test]
    fn quadratic_mode_on_vacuum() {
        let op = ModeOperator::new(&FieldExpression::norm([A, AStar]), -1).unwrap();
        let vac = FockState::vacuum(0);
        let p = params(0);
        let tuples = enumerate_tuples(
            &op.terms()[0],
            -1,
            &vac.variables(),
            p.ordering,
            EnumerationWindow::Normal,
        )
        .unwrap();
        assert_eq!(tuples, vec![vec![-1, 0]]);
        assert_eq!(
            mode_apply(&op, &vac, &p, EnumerationWindow::Normal).unwrap(),
            FockState::monomial(&[(Var::x(-1), 1), (Var::x(0), 1)], 0)
        );
    }

    #[test]
    fn beta_zero_mode_is_lambda() {
        let op = ModeOperator::new(&FieldExpression::gen(B), 0).unwrap();
        let s = FockState::monomial(&[(Var::x1(2), 1)], 1);
        let p = params(1);
        assert_eq!(
            mode_apply(&op, &s, &p, EnumerationWindow::Normal).unwrap(),
            s.scale(&p.lambda)
        );
    }

    #[test]
    fn widened_window_agrees() {
        let expr = FieldExpression::Sum(vec![
            FieldExpression::norm([A, AStar, AStar]),
            FieldExpression::norm([B, A1Star]),
            FieldExpression::deriv(FieldExpression::gen(AStar)),
        ]);
        let s = FockState::monomial(&[(Var::x(-2), 1), (Var::x(1), 2), (Var::y(-1), 1)], 0)
            .add(&FockState::monomial(&[(Var::x1(0), 1)], 1));
        for r in [0, 1] {
            let p = params(r);
            for m in -3..=3 {
                let op = ModeOperator::new(&expr, m).unwrap();
                let a = mode_apply(&op, &s, &p, EnumerationWindow::Normal).unwrap();
                let b = mode_apply(&op, &s, &p, EnumerationWindow::Widened).unwrap();
                assert_eq!(a, b, "r={r} m={m}");
                assert_eq!(a, mode_apply_termwise(&op, &s, &p, EnumerationWindow::Normal).unwrap());
            }
        }
    }

    #[test]
    fn two_free_factors_are_rejected() {
        let op = ModeOperator::new(&FieldExpression::norm([A, A1]), 0).unwrap();
        let err = mode_apply(&op, &FockState::vacuum(0), &params(1), EnumerationWindow::Normal);
        assert!(matches!(err, Err(Error::InfiniteModeSum(_))));
    }
}
