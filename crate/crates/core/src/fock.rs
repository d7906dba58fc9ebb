//! The state space `C[x] (x) C[y] (x) V`, the two oscillator representations
//! of the beta-gamma system, and the representation of the DJKM Heisenberg
//! algebra.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::algebra::{BasisKey, Bracket, ClosedBracket, Sl2};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::report::{Report, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarKind {
    X,
    X1,
    Y,
    Y1,
}

impl VarKind {
    pub fn name(self) -> &'static str {
        match self {
            VarKind::X => "x",
            VarKind::X1 => "x1",
            VarKind::Y => "y",
            VarKind::Y1 => "y1",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        match s {
            "x" => Ok(VarKind::X),
            "x1" => Ok(VarKind::X1),
            "y" => Ok(VarKind::Y),
            "y1" => Ok(VarKind::Y1),
            _ => Err(Error::Parse(format!("unknown variable name {s:?}"))),
        }
    }
}

/// A polynomial variable. `y` and `y1` exist only for negative indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub kind: VarKind,
    pub index: i64,
}

impl Var {
    pub fn new(kind: VarKind, index: i64) -> Result<Self> {
        if matches!(kind, VarKind::Y | VarKind::Y1) && index >= 0 {
            return Err(Error::InvalidArgument(format!(
                "{}_{index}: y variables have negative index",
                kind.name()
            )));
        }
        Ok(Var { kind, index })
    }

    pub fn x(index: i64) -> Self {
        Var {
            kind: VarKind::X,
            index,
        }
    }

    pub fn x1(index: i64) -> Self {
        Var {
            kind: VarKind::X1,
            index,
        }
    }

    pub fn y(index: i64) -> Self {
        Var::new(VarKind::Y, index).expect("negative index")
    }

    pub fn y1(index: i64) -> Self {
        Var::new(VarKind::Y1, index).expect("negative index")
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.kind.name(), self.index)
    }
}

/// Monomial in the polynomial variables; exponents are positive.
pub type Monomial = BTreeMap<Var, u32>;

/// Basis vector of `V`.
pub type VIndex = u8;

/// Finite linear combination of `monomial (x) v_i`; no zero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FockState {
    terms: BTreeMap<(Monomial, VIndex), Rational>,
}

impl FockState {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `|0> (x) v_i`.
    pub fn vacuum(v: VIndex) -> Self {
        Self::monomial(&[], v)
    }

    /// `prod var^exp |0> (x) v_i` with coefficient 1.
    pub fn monomial(vars: &[(Var, u32)], v: VIndex) -> Self {
        let mut mono = Monomial::new();
        for &(var, e) in vars {
            if e > 0 {
                *mono.entry(var).or_insert(0) += e;
            }
        }
        let mut s = Self::zero();
        s.add_term(mono, v, Rational::one());
        s
    }

    pub fn add_term(&mut self, mono: Monomial, v: VIndex, coeff: Rational) {
        assert!(v < 2, "V is two-dimensional");
        if coeff.is_zero() {
            return;
        }
        let key = (mono, v);
        match self.terms.remove(&key) {
            Some(old) => {
                let sum = old + coeff;
                if !sum.is_zero() {
                    self.terms.insert(key, sum);
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, VIndex, &Rational)> + '_ {
        self.terms.iter().map(|((m, v), a)| (m, *v, a))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_assign(&mut self, other: &FockState) {
        for (m, v, a) in other.terms() {
            self.add_term(m.clone(), v, a.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &FockState, k: &Rational) {
        if k.is_zero() {
            return;
        }
        for (m, v, a) in other.terms() {
            self.add_term(m.clone(), v, a * k);
        }
    }

    pub fn add(&self, other: &FockState) -> FockState {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &FockState) -> FockState {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::from_int(-1));
        out
    }

    pub fn scale(&self, k: &Rational) -> FockState {
        let mut out = FockState::zero();
        out.add_scaled(self, k);
        out
    }

    /// Multiplication by a variable.
    pub fn mul_var(&self, var: Var) -> FockState {
        let mut out = FockState::zero();
        for (m, v, a) in self.terms() {
            let mut m = m.clone();
            *m.entry(var).or_insert(0) += 1;
            out.add_term(m, v, a.clone());
        }
        out
    }

    /// Partial derivative with respect to a variable.
    pub fn diff_var(&self, var: Var) -> FockState {
        let mut out = FockState::zero();
        for (m, v, a) in self.terms() {
            let Some(&e) = m.get(&var) else { continue };
            let mut m = m.clone();
            if e == 1 {
                m.remove(&var);
            } else {
                m.insert(var, e - 1);
            }
            out.add_term(m, v, a * &Rational::from_int(e as i64));
        }
        out
    }

    /// Applies a linear map on `V` given by its matrix `[[v0 -> v0, v0 -> v1], [v1 -> v0, v1 -> v1]]`.
    pub fn apply_v(&self, matrix: &[[Rational; 2]; 2]) -> FockState {
        let mut out = FockState::zero();
        for (m, v, a) in self.terms() {
            for (w, entry) in matrix[v as usize].iter().enumerate() {
                out.add_term(m.clone(), w as VIndex, a * entry);
            }
        }
        out
    }

    /// Every variable occurring in some monomial.
    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms().flat_map(|(m, _, _)| m.keys().copied()).collect()
    }

    /// Largest total monomial degree.
    pub fn max_degree(&self) -> u32 {
        self.terms().map(|(m, _, _)| m.values().sum()).max().unwrap_or(0)
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, v, a) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({a})")?;
            for (var, e) in m {
                if *e == 1 {
                    write!(f, "{var}")?;
                } else {
                    write!(f, "{var}^{e}")?;
                }
            }
            write!(f, "|v{v}>")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    A,
    AStar,
    A1,
    A1Star,
    B,
    B1,
}

impl Generator {
    pub const OSCILLATORS: [Generator; 4] = [Generator::A, Generator::AStar, Generator::A1, Generator::A1Star];

    pub fn is_oscillator(self) -> bool {
        !matches!(self, Generator::B | Generator::B1)
    }

    pub fn is_starred(self) -> bool {
        matches!(self, Generator::AStar | Generator::A1Star)
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::A => "a",
            Generator::AStar => "a*",
            Generator::A1 => "a1",
            Generator::A1Star => "a1*",
            Generator::B => "b",
            Generator::B1 => "b1",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModeKey {
    pub generator: Generator,
    pub n: i64,
}

impl ModeKey {
    pub fn new(generator: Generator, n: i64) -> Self {
        ModeKey { generator, n }
    }
}

impl fmt::Display for ModeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.generator.name(), self.n)
    }
}

/// Which signs to use in the Heisenberg representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HeisenbergSigns {
    /// Signs for which the defining relations hold.
    #[default]
    Corrected,
    /// The formulas exactly as printed, for comparison.
    Printed,
}

/// Normal-ordering convention and the matching oscillator representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ordering {
    /// `r = 0`: `a_n` creates for `n < 0`, `a*_n` creates for `n <= 0`.
    Usual,
    /// `r = 1`: every `a_n` creates, every `a*_n` annihilates.
    Natural,
}

impl Ordering {
    pub fn r(self) -> u8 {
        match self {
            Ordering::Usual => 0,
            Ordering::Natural => 1,
        }
    }

    pub fn from_r(r: u8) -> Result<Self> {
        match r {
            0 => Ok(Ordering::Usual),
            1 => Ok(Ordering::Natural),
            _ => Err(Error::InvalidParams(format!("r must be 0 or 1 (got {r})"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationParams {
    pub c0: Rational,
    pub ordering: Ordering,
    pub kappa0: Rational,
    pub lambda: Rational,
    pub mu: Rational,
    pub nu: Rational,
    pub varkappa: Rational,
    pub signs: HeisenbergSigns,
}

impl RealizationParams {
    pub fn new(c0: Rational, r: u8, kappa0: Rational, [lambda, mu, nu, varkappa]: [Rational; 4]) -> Result<Self> {
        if &c0 * &c0 == Rational::one() {
            return Err(Error::InvalidParams("c0 must satisfy c0^2 != 1".into()));
        }
        Ok(RealizationParams {
            c0,
            ordering: Ordering::from_r(r)?,
            kappa0,
            lambda,
            mu,
            nu,
            varkappa,
            signs: HeisenbergSigns::Corrected,
        })
    }

    pub fn r(&self) -> u8 {
        self.ordering.r()
    }

    /// `chi0 = kappa0 + 4 [r = 0]`, the image of `w0`.
    pub fn chi0(&self) -> Rational {
        match self.ordering {
            Ordering::Usual => &self.kappa0 + &Rational::from_int(4),
            Ordering::Natural => self.kappa0.clone(),
        }
    }

    /// The matrix of `B` on `V`: `v0 -> mu v0 + nu v1`, `v1 -> varkappa v0 + mu v1`.
    pub fn b0_matrix(&self) -> [[Rational; 2]; 2] {
        [
            [self.mu.clone(), self.nu.clone()],
            [self.varkappa.clone(), self.mu.clone()],
        ]
    }
}

impl fmt::Display for RealizationParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "c0={} r={} kappa0={} (lambda,mu,nu,varkappa)=({},{},{},{})",
            self.c0,
            self.r(),
            self.kappa0,
            self.lambda,
            self.mu,
            self.nu,
            self.varkappa
        )
    }
}

/// Whether a mode is creation-classified for normal ordering. `b`-modes
/// commute with every oscillator and are reported as non-creation.
pub fn is_creation(mode: ModeKey, ordering: Ordering) -> bool {
    match (mode.generator, ordering) {
        (Generator::A | Generator::A1, Ordering::Usual) => mode.n < 0,
        (Generator::AStar | Generator::A1Star, Ordering::Usual) => mode.n <= 0,
        (Generator::A | Generator::A1, Ordering::Natural) => true,
        (Generator::AStar | Generator::A1Star, Ordering::Natural) => false,
        (Generator::B | Generator::B1, _) => false,
    }
}

pub fn apply_oscillator(mode: ModeKey, s: &FockState, params: &RealizationParams) -> Result<FockState> {
    let (kind, starred) = match mode.generator {
        Generator::A => (VarKind::X, false),
        Generator::AStar => (VarKind::X, true),
        Generator::A1 => (VarKind::X1, false),
        Generator::A1Star => (VarKind::X1, true),
        _ => return Err(Error::WrongFamily(mode.to_string())),
    };
    let n = mode.n;
    let minus_one = Rational::from_int(-1);
    Ok(match (starred, params.ordering) {
        (false, Ordering::Usual) if n >= 0 => s.diff_var(Var { kind, index: n }),
        (false, _) => s.mul_var(Var { kind, index: n }),
        (true, Ordering::Usual) if n <= 0 => s.mul_var(Var { kind, index: -n }),
        (true, _) => s.diff_var(Var { kind, index: -n }).scale(&minus_one),
    })
}

fn d_y1(s: &FockState, index: i64, coeff: Rational, out: &mut FockState) {
    if index < 0 && !coeff.is_zero() {
        out.add_scaled(&s.diff_var(Var::y1(index)), &coeff);
    }
}

pub fn apply_heisenberg(mode: ModeKey, s: &FockState, params: &RealizationParams) -> Result<FockState> {
    let n = mode.n;
    let k = &params.kappa0;
    let c0 = &params.c0;
    let int = Rational::from_int;
    // printed signs are the corrected ones times `flip` in the places listed
    // in HEISENBERG_CORRECTIONS
    let printed = params.signs == HeisenbergSigns::Printed;
    let flip = if printed { int(-1) } else { int(1) };
    let mut out = FockState::zero();
    match mode.generator {
        Generator::B => {
            if n < 0 {
                out = s.mul_var(Var::y(n));
            } else if n == 0 {
                out = s.scale(&params.lambda);
            } else {
                out = s.diff_var(Var::y(-n)).scale(&(&int(-2 * n) * k));
            }
        }
        Generator::B1 => {
            if n < 0 {
                out = s.mul_var(Var::y1(n));
                if n == -1 {
                    d_y1(s, -3, -(k * &flip), &mut out);
                }
                if n == -3 {
                    d_y1(s, -1, k * &flip, &mut out);
                }
            } else if n == 0 {
                if printed {
                    d_y1(s, -4, &int(4) * k, &mut out);
                    d_y1(s, -2, &(&int(-2) * c0) * k, &mut out);
                } else {
                    d_y1(s, -4, &int(-4) * k, &mut out);
                    d_y1(s, -2, &(&int(4) * c0) * k, &mut out);
                }
                out.add_assign(&s.apply_v(&params.b0_matrix()));
            } else {
                d_y1(s, -n - 4, &(&int(-2 * (n + 2)) * k) * &flip, &mut out);
                d_y1(s, -n - 2, &(&(&int(4 * (n + 1)) * c0) * k) * &flip, &mut out);
                d_y1(s, -n, &(&int(-2 * n) * k) * &flip, &mut out);
            }
        }
        _ => return Err(Error::WrongFamily(mode.to_string())),
    }
    Ok(out)
}

/// Applies any single mode.
pub fn apply_mode(mode: ModeKey, s: &FockState, params: &RealizationParams) -> FockState {
    if mode.generator.is_oscillator() {
        apply_oscillator(mode, s, params)
    } else {
        apply_heisenberg(mode, s, params)
    }
    .expect("dispatched by family")
}

/// One departure of the Heisenberg representation from the printed formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Correction {
    pub operator: &'static str,
    pub printed: &'static str,
    pub corrected: &'static str,
    pub reason: &'static str,
}

pub const HEISENBERG_CORRECTIONS: &[Correction] = &[
    Correction {
        operator: "b1[n], n<0",
        printed: "y1[n] + d[n,-1] chi0 dy1[-3] - d[n,-3] chi0 dy1[-1]",
        corrected: "y1[n] - d[n,-1] kappa0 dy1[-3] + d[n,-3] kappa0 dy1[-1]",
        reason: "printed signs give [b1[-1], b1[-3]] = +2 chi0; relation needs 2(n+2) at n=-3, i.e. -2",
    },
    Correction {
        operator: "b1[n], n>0",
        printed: "2(n+2) chi0 dy1[-n-4] - 4c(n+1) chi0 dy1[-n-2] + 2n chi0 dy1[-n]",
        corrected: "-2(n+2) kappa0 dy1[-n-4] + 4c(n+1) kappa0 dy1[-n-2] - 2n kappa0 dy1[-n]",
        reason: "printed signs give [b1[m], b1[-m]] = +2m chi0; relation needs 2n with n=-m",
    },
    Correction {
        operator: "b1[0]",
        printed: "4 chi0 dy1[-4] - 2c chi0 dy1[-2] + B",
        corrected: "-4 kappa0 dy1[-4] + 4c kappa0 dy1[-2] + B",
        reason: "relation at m=0 needs 2(n+2) = -4 at n=-4 and -4c(n+1) = 4c at n=-2",
    },
    Correction {
        operator: "all derivative terms",
        printed: "central scalar chi0",
        corrected: "central scalar kappa0",
        reason: "the Heisenberg sector contributes kappa0; chi0 = kappa0 + 4[r=0] is the total image of w0",
    },
];

/// `[A, B] s` for two modes.
pub fn commutator(x: ModeKey, y: ModeKey, s: &FockState, params: &RealizationParams) -> FockState {
    let xy = apply_mode(x, &apply_mode(y, s, params), params);
    let yx = apply_mode(y, &apply_mode(x, s, params), params);
    xy.sub(&yx)
}

/// Checks `[g_m, h_n] = delta_{m+n,0}` for oscillator pairs and `0`
/// otherwise, over every ordered pair of oscillator generators.
pub fn oscillator_relation_check(m: i64, n: i64, states: &[FockState], params: &RealizationParams) -> Report {
    let mut report = Report::default();
    for g in Generator::OSCILLATORS {
        for h in Generator::OSCILLATORS {
            let expected = match (g, h) {
                _ if m + n != 0 => 0,
                (Generator::A, Generator::AStar) | (Generator::A1, Generator::A1Star) => 1,
                (Generator::AStar, Generator::A) | (Generator::A1Star, Generator::A1) => -1,
                _ => 0,
            };
            let (x, y) = (ModeKey::new(g, m), ModeKey::new(h, n));
            for (i, s) in states.iter().enumerate() {
                let residual = commutator(x, y, s, params).sub(&s.scale(&Rational::from_int(expected)));
                report.record((!residual.is_zero()).then(|| Violation {
                    witness: format!("[{x}, {y}] on state {i} ({params})"),
                    residual: residual.to_string(),
                }));
            }
        }
    }
    report
}

/// Checks the Heisenberg relations for `(b, b)`, `(b, b1)`, `(b1, b)`,
/// `(b1, b1)` at modes `(m, n)`. The expected value is the `w0` coefficient
/// of the bracket of the matching `h`-currents times `kappa0`; every other
/// central maps to zero.
pub fn heisenberg_relation_check(
    m: i64,
    n: i64,
    states: &[FockState],
    params: &RealizationParams,
    bracket: &ClosedBracket<Rational>,
) -> Report {
    let mut report = Report::default();
    for (g, go) in [(Generator::B, false), (Generator::B1, true)] {
        for (h, ho) in [(Generator::B, false), (Generator::B1, true)] {
            let br = bracket.bracket_basis(&BasisKey::current(Sl2::H, go, m), &BasisKey::current(Sl2::H, ho, n));
            let expected = &br.get(&BasisKey::Central(0)) * &params.kappa0;
            let (x, y) = (ModeKey::new(g, m), ModeKey::new(h, n));
            for (i, s) in states.iter().enumerate() {
                let residual = commutator(x, y, s, params).sub(&s.scale(&expected));
                report.record((!residual.is_zero()).then(|| Violation {
                    witness: format!("[{x}, {y}] on state {i} ({params})"),
                    residual: residual.to_string(),
                }));
            }
        }
    }
    report
}

/// States used by the relation sweeps: vacua, every degree-one monomial in
/// the variables touched by modes with `|n| <= window`, and a few mixed
/// monomials of degree two and three.
pub fn relation_test_states(window: i64) -> Vec<FockState> {
    let mut vars = Vec::new();
    for i in -window - 4..=window + 4 {
        vars.push(Var::x(i));
        vars.push(Var::x1(i));
        if i < 0 {
            vars.push(Var::y(i));
            vars.push(Var::y1(i));
        }
    }
    let mut out = alloc::vec![FockState::vacuum(0), FockState::vacuum(1)];
    for (j, v) in vars.iter().enumerate() {
        out.push(FockState::monomial(&[(*v, 1)], (j % 2) as VIndex));
    }
    out.push(FockState::monomial(&[(Var::x(0), 2), (Var::x1(-1), 1)], 1));
    out.push(FockState::monomial(&[(Var::y1(-1), 1), (Var::y1(-3), 2)], 0));
    out.push(FockState::monomial(
        &[(Var::y(-2), 1), (Var::y1(-2), 1), (Var::x(3), 1)],
        1,
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn params(r: u8) -> RealizationParams {
        RealizationParams::new(q(2, 1), r, q(3, 1), [q(5, 1), q(1, 1), q(2, 1), q(3, 1)]).unwrap()
    }

    fn a(g: Generator, n: i64) -> ModeKey {
        ModeKey::new(g, n)
    }

    #[test]
    fn params_validation() {
        assert!(RealizationParams::new(q(1, 1), 0, q(0, 1), [q(0, 1), q(0, 1), q(0, 1), q(0, 1)]).is_err());
        assert!(RealizationParams::new(q(2, 1), 2, q(0, 1), [q(0, 1), q(0, 1), q(0, 1), q(0, 1)]).is_err());
        assert_eq!(params(0).chi0(), q(7, 1));
        assert_eq!(params(1).chi0(), q(3, 1));
    }

    #[test]
    fn oscillator_examples() {
        let p0 = params(0);
        let vac = FockState::vacuum(0);
        assert_eq!(
            apply_oscillator(a(Generator::A, -1), &vac, &p0).unwrap(),
            FockState::monomial(&[(Var::x(-1), 1)], 0)
        );
        assert!(apply_oscillator(a(Generator::AStar, 1), &vac, &p0).unwrap().is_zero());
        let p1 = params(1);
        let s = FockState::monomial(&[(Var::x(0), 1)], 0);
        assert_eq!(
            apply_oscillator(a(Generator::AStar, 0), &s, &p1).unwrap(),
            vac.scale(&q(-1, 1))
        );
        assert_eq!(
            apply_oscillator(a(Generator::B, 0), &vac, &p0),
            Err(Error::WrongFamily("b[0]".into()))
        );
    }

    #[test]
    fn vacuum_conditions() {
        for r in [0, 1] {
            let p = params(r);
            for v in [0, 1] {
                let vac = FockState::vacuum(v);
                for m in -6..=6 {
                    let kills = |g| apply_oscillator(a(g, m), &vac, &p).unwrap().is_zero();
                    if r == 0 {
                        assert_eq!(kills(Generator::A), m >= 0);
                        assert_eq!(kills(Generator::A1), m >= 0);
                        assert_eq!(kills(Generator::AStar), m > 0);
                        assert_eq!(kills(Generator::A1Star), m > 0);
                    } else {
                        assert!(kills(Generator::AStar) && kills(Generator::A1Star));
                        assert!(!kills(Generator::A));
                    }
                }
            }
        }
    }

    #[test]
    fn heisenberg_examples() {
        let p = params(0);
        let vac = FockState::vacuum(0);
        assert_eq!(
            apply_heisenberg(a(Generator::B1, -1), &vac, &p).unwrap(),
            FockState::monomial(&[(Var::y1(-1), 1)], 0)
        );
        let expected = {
            let mut s = FockState::zero();
            s.add_term(Monomial::new(), 0, q(1, 1));
            s.add_term(Monomial::new(), 1, q(2, 1));
            s
        };
        assert_eq!(apply_heisenberg(a(Generator::B1, 0), &vac, &p).unwrap(), expected);
        let s = FockState::monomial(&[(Var::y(-2), 1)], 0);
        assert_eq!(
            apply_heisenberg(a(Generator::B, 2), &s, &p).unwrap(),
            vac.scale(&q(-12, 1))
        );
        assert!(apply_heisenberg(a(Generator::A, 0), &s, &p).is_err());
    }

    #[test]
    fn heisenberg_spot_commutators() {
        let p = params(0);
        let s = FockState::monomial(&[(Var::y1(-1), 1), (Var::x(2), 1)], 1);
        let k = &p.kappa0;
        assert_eq!(
            commutator(a(Generator::B1, -1), a(Generator::B1, -3), &s, &p),
            s.scale(&(&q(-2, 1) * k))
        );
        assert_eq!(
            commutator(a(Generator::B1, 2), a(Generator::B1, -4), &s, &p),
            s.scale(&(&(&q(12, 1) * &p.c0) * k))
        );
        for m in -4..=4 {
            for n in -4..=4 {
                assert!(commutator(a(Generator::B1, m), a(Generator::B, n), &s, &p).is_zero());
            }
        }
    }

    #[test]
    fn relation_sweeps_small() {
        let states = relation_test_states(3);
        for r in [0, 1] {
            let p = params(r);
            let br = ClosedBracket::new(p.c0.clone(), 4, Default::default());
            for m in -3..=3 {
                for n in -3..=3 {
                    assert!(oscillator_relation_check(m, n, &states, &p).passed());
                    let rep = heisenberg_relation_check(m, n, &states, &p, &br);
                    assert!(rep.passed(), "{:?}", rep.violations.first());
                }
            }
        }
    }

    #[test]
    fn printed_signs_break_relations() {
        let mut p = params(0);
        p.signs = HeisenbergSigns::Printed;
        let br = ClosedBracket::new(p.c0.clone(), 4, Default::default());
        let states = relation_test_states(3);
        let rep = heisenberg_relation_check(-1, -3, &states, &p, &br);
        assert!(!rep.passed());
    }

    #[test]
    fn modes_change_degree_by_one() {
        let p = params(0);
        let s = FockState::monomial(&[(Var::x(1), 1), (Var::x1(-2), 2)], 0);
        for g in Generator::OSCILLATORS {
            for n in -3..=3 {
                let out = apply_mode(a(g, n), &s, &p);
                for (mono, _, _) in out.terms() {
                    let d: u32 = mono.values().sum();
                    assert!(d == 2 || d == 4);
                }
            }
        }
    }
}
