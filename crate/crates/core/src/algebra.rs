//! The universal central extension `(sl(2) (x) R) + Omega^1_R / dR` as a
//! structure-constant algebra with two independent bracket backends.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::arith::{PolyC, Rational, Scalar};
use crate::error::{Error, Result};
use crate::report::{Report, Violation};
use crate::ring::{psi_table_generic, CentralElement, DjkmRing, PsiTable, RingElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sl2 {
    E,
    F,
    H,
}

impl Sl2 {
    pub const ALL: [Sl2; 3] = [Sl2::E, Sl2::F, Sl2::H];

    fn letter(self) -> char {
        match self {
            Sl2::E => 'e',
            Sl2::F => 'f',
            Sl2::H => 'h',
        }
    }
}

/// Structure constants of `sl(2)` and the invariant form used for the
/// central terms. The trace form `(e,f) = 1`, `(h,h) = 2` is the
/// normalization forced by `[e_m, f_n] = h_{m+n} - m delta_{m,-n} w0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sl2Data;

impl Sl2Data {
    /// `[x, y]` as `coefficient * z`.
    pub fn bracket(&self, x: Sl2, y: Sl2) -> Option<(i64, Sl2)> {
        use Sl2::*;
        match (x, y) {
            (H, E) => Some((2, E)),
            (E, H) => Some((-2, E)),
            (H, F) => Some((-2, F)),
            (F, H) => Some((2, F)),
            (E, F) => Some((1, H)),
            (F, E) => Some((-1, H)),
            _ => None,
        }
    }

    pub fn form(&self, x: Sl2, y: Sl2) -> i64 {
        use Sl2::*;
        match (x, y) {
            (E, F) | (F, E) => 1,
            (H, H) => 2,
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisKey {
    /// `x (x) t^n` or, with `odd`, `x (x) t^n u`.
    Current { x: Sl2, odd: bool, n: i64 },
    /// `w_j`, `j in {0, -1, -2, -3, -4}`.
    Central(i64),
}

impl BasisKey {
    pub fn current(x: Sl2, odd: bool, n: i64) -> Self {
        BasisKey::Current { x, odd, n }
    }

    pub fn central(j: i64) -> Result<Self> {
        if (-4..=0).contains(&j) {
            Ok(BasisKey::Central(j))
        } else {
            Err(Error::InvalidArgument(format!(
                "central index must be in -4..=0 (got {j})"
            )))
        }
    }

    /// All current keys with `|n| <= window`, in canonical order.
    pub fn currents(window: i64) -> Vec<BasisKey> {
        let mut out = Vec::new();
        for x in Sl2::ALL {
            for odd in [false, true] {
                for n in -window..=window {
                    out.push(BasisKey::current(x, odd, n));
                }
            }
        }
        out
    }

    /// Current keys with `|n| <= window` followed by the five centrals.
    pub fn all(window: i64) -> Vec<BasisKey> {
        let mut out = Self::currents(window);
        out.extend((-4..=0).rev().map(BasisKey::Central));
        out
    }
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisKey::Current { x, odd, n } => {
                write!(f, "{}{}:{n}", x.letter(), if *odd { "1" } else { "" })
            }
            BasisKey::Central(j) => write!(f, "w:{j}"),
        }
    }
}

impl FromStr for BasisKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected a basis key like e:1, f1:-1 or w:0 (got {s:?})"));
        let (name, index) = s.trim().split_once(':').ok_or_else(bad)?;
        let n: i64 = index.trim().parse().map_err(|_| bad())?;
        let (x, odd) = match name.trim() {
            "e" => (Sl2::E, false),
            "f" => (Sl2::F, false),
            "h" => (Sl2::H, false),
            "e1" => (Sl2::E, true),
            "f1" => (Sl2::F, true),
            "h1" => (Sl2::H, true),
            "w" => return BasisKey::central(n),
            _ => return Err(bad()),
        };
        Ok(BasisKey::current(x, odd, n))
    }
}

/// Finite linear combination of basis keys; no zero coefficients stored.
#[derive(Clone, PartialEq)]
pub struct AlgebraElement<K> {
    terms: BTreeMap<BasisKey, K>,
}

impl<K: Scalar> AlgebraElement<K> {
    pub fn zero() -> Self {
        AlgebraElement { terms: BTreeMap::new() }
    }

    pub fn basis(key: BasisKey) -> Self {
        Self::term(key, K::one())
    }

    pub fn term(key: BasisKey, coeff: K) -> Self {
        let mut out = Self::zero();
        out.add_term(key, coeff);
        out
    }

    pub fn add_term(&mut self, key: BasisKey, coeff: K) {
        if coeff.is_zero() {
            return;
        }
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

    /// `x (x) f` for a ring element `f`.
    pub fn from_current(x: Sl2, f: &RingElement<K>, scale: &K) -> Self {
        let mut out = Self::zero();
        out.add_current(x, f, scale);
        out
    }

    pub fn add_current(&mut self, x: Sl2, f: &RingElement<K>, scale: &K) {
        for (n, a) in f.even.terms() {
            self.add_term(BasisKey::current(x, false, n), a.clone() * scale.clone());
        }
        for (n, a) in f.odd.terms() {
            self.add_term(BasisKey::current(x, true, n), a.clone() * scale.clone());
        }
    }

    pub fn add_central(&mut self, z: &CentralElement<K>, scale: &K) {
        for (j, a) in z.terms() {
            self.add_term(BasisKey::Central(j), a.clone() * scale.clone());
        }
    }

    pub fn get(&self, key: &BasisKey) -> K {
        self.terms.get(key).cloned().unwrap_or_else(K::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisKey, &K)> + '_ {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, a) in other.terms() {
            out.add_term(*k, a.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        AlgebraElement {
            terms: self.terms.iter().map(|(k, a)| (*k, -a.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &K) -> Self {
        let mut out = Self::zero();
        for (key, a) in self.terms() {
            out.add_term(*key, a.clone() * k.clone());
        }
        out
    }

    pub fn map<L: Scalar>(&self, f: impl Fn(&K) -> L) -> AlgebraElement<L> {
        let mut out = AlgebraElement::zero();
        for (key, a) in self.terms() {
            out.add_term(*key, f(a));
        }
        out
    }
}

impl<K: Scalar> fmt::Display for AlgebraElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (key, a) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if a.is_one() {
                write!(f, "{key}")?;
            } else {
                write!(f, "({a}){key}")?;
            }
        }
        Ok(())
    }
}

impl<K: Scalar> fmt::Debug for AlgebraElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A bracket on basis keys, extended bilinearly.
pub trait Bracket<K: Scalar> {
    fn bracket_basis(&self, a: &BasisKey, b: &BasisKey) -> AlgebraElement<K>;

    fn bracket(&self, a: &AlgebraElement<K>, b: &AlgebraElement<K>) -> AlgebraElement<K> {
        let mut out = AlgebraElement::zero();
        for (ka, ca) in a.terms() {
            for (kb, cb) in b.terms() {
                let coeff = ca.clone() * cb.clone();
                for (k, v) in self.bracket_basis(ka, kb).terms() {
                    out.add_term(*k, v.clone() * coeff.clone());
                }
            }
        }
        out
    }
}

/// Which `Psi` value supplies the central term of `[x (x) t^m u, y (x) t^n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PsiConvention {
    /// `n (x,y) Psi(m + n - 1)`, read off the Kassel cocycle.
    #[default]
    Derived,
    /// `n (x,y) Psi(m + n - 2)`, the subscript as printed in the relation list.
    PrintedSubscript,
}

/// Closed-form structure constants with central terms from the `Psi` table.
#[derive(Clone)]
pub struct ClosedBracket<K> {
    c: K,
    psi: PsiTable<K>,
    convention: PsiConvention,
    sl2: Sl2Data,
}

impl ClosedBracket<PolyC> {
    pub fn generic(window: i64) -> Self {
        Self::new(PolyC::c(), window, PsiConvention::Derived)
    }
}

impl<K: Scalar> ClosedBracket<K> {
    /// `window` bounds the mode indices of the inputs that will be seen,
    /// including those produced by nested brackets.
    pub fn new(c: K, window: i64, convention: PsiConvention) -> Self {
        let k_max = 4 * window.max(1) + 12;
        let psi = PsiTable::from_generic(&psi_table_generic(k_max), &c);
        ClosedBracket {
            c,
            psi,
            convention,
            sl2: Sl2Data,
        }
    }

    pub fn convention(&self) -> PsiConvention {
        self.convention
    }

    fn psi(&self, k: i64) -> CentralElement<K> {
        match self.psi.get(k) {
            Some(z) => z.clone(),
            None => PsiTable::from_generic(&psi_table_generic(k.abs()), &self.c)
                .get(k)
                .cloned()
                .expect("table covers k"),
        }
    }
}

impl<K: Scalar> Bracket<K> for ClosedBracket<K> {
    fn bracket_basis(&self, a: &BasisKey, b: &BasisKey) -> AlgebraElement<K> {
        let (BasisKey::Current { x, odd: oa, n: m }, BasisKey::Current { x: y, odd: ob, n }) = (*a, *b) else {
            return AlgebraElement::zero();
        };
        let mut out = AlgebraElement::zero();
        let form = K::from_int(self.sl2.form(x, y));
        let lie = self.sl2.bracket(x, y);
        let s = m + n;
        let shift = match self.convention {
            PsiConvention::Derived => 1,
            PsiConvention::PrintedSubscript => 2,
        };
        match (oa, ob) {
            (false, false) => {
                if let Some((k, z)) = lie {
                    out.add_term(BasisKey::current(z, false, s), K::from_int(k));
                }
                if s == 0 {
                    out.add_term(BasisKey::Central(0), form * K::from_int(n));
                }
            }
            (true, true) => {
                if let Some((k, z)) = lie {
                    let k = K::from_int(k);
                    out.add_term(BasisKey::current(z, false, s + 4), k.clone());
                    out.add_term(
                        BasisKey::current(z, false, s + 2),
                        k.clone() * self.c.scale(&Rational::from_int(-2)),
                    );
                    out.add_term(BasisKey::current(z, false, s), k);
                }
                let w0 = match s {
                    -4 => K::from_int(n + 2),
                    -2 => self.c.scale(&Rational::from_int(-2 * (n + 1))),
                    0 => K::from_int(n),
                    _ => K::zero(),
                };
                out.add_term(BasisKey::Central(0), form * w0);
            }
            (true, false) | (false, true) => {
                if let Some((k, z)) = lie {
                    out.add_term(BasisKey::current(z, true, s), K::from_int(k));
                }
                // the central term carries the mode of the untwisted factor,
                // with a sign when it sits on the left
                let weight = if oa { n } else { -m };
                if !form.is_zero() && weight != 0 {
                    out.add_central(&self.psi(s - shift), &(form * K::from_int(weight)));
                }
            }
        }
        out
    }
}

/// `[x (x) f, y (x) g] = [x,y] (x) fg + (x,y) [f dg]` computed in the ring.
#[derive(Debug, Clone)]
pub struct KasselBracket<K> {
    ring: DjkmRing<K>,
    sl2: Sl2Data,
}

impl<K: Scalar> KasselBracket<K> {
    pub fn new(ring: DjkmRing<K>) -> Self {
        KasselBracket { ring, sl2: Sl2Data }
    }
}

impl<K: Scalar> Bracket<K> for KasselBracket<K> {
    fn bracket_basis(&self, a: &BasisKey, b: &BasisKey) -> AlgebraElement<K> {
        let (BasisKey::Current { x, odd: oa, n: m }, BasisKey::Current { x: y, odd: ob, n }) = (*a, *b) else {
            return AlgebraElement::zero();
        };
        let f = RingElement::basis(m, oa);
        let g = RingElement::basis(n, ob);
        let mut out = AlgebraElement::zero();
        if let Some((k, z)) = self.sl2.bracket(x, y) {
            out.add_current(z, &self.ring.mul(&f, &g), &K::from_int(k));
        }
        let form = self.sl2.form(x, y);
        if form != 0 {
            out.add_central(&self.ring.kassel_cocycle(&f, &g), &K::from_int(form));
        }
        out
    }
}

fn violation<K: Scalar>(witness: String, residual: &AlgebraElement<K>) -> Option<Violation> {
    (!residual.is_zero()).then(|| Violation {
        witness,
        residual: residual.to_string(),
    })
}

/// `[a,b] + [b,a]`, or `None` when it vanishes.
pub fn check_antisymmetry<K: Scalar>(br: &impl Bracket<K>, a: &BasisKey, b: &BasisKey) -> Option<Violation> {
    let r = br.bracket_basis(a, b).add(&br.bracket_basis(b, a));
    violation(format!("[{a}, {b}]"), &r)
}

/// Jacobiator of three basis elements, or `None` when it vanishes.
pub fn check_jacobi<K: Scalar>(br: &impl Bracket<K>, a: &BasisKey, b: &BasisKey, c: &BasisKey) -> Option<Violation> {
    let (ea, eb, ec) = (
        AlgebraElement::basis(*a),
        AlgebraElement::basis(*b),
        AlgebraElement::basis(*c),
    );
    let r = br
        .bracket(&ea, &br.bracket(&eb, &ec))
        .add(&br.bracket(&eb, &br.bracket(&ec, &ea)))
        .add(&br.bracket(&ec, &br.bracket(&ea, &eb)));
    violation(format!("({a}, {b}, {c})"), &r)
}

/// Difference of the two backends on a pair, or `None` when they agree.
pub fn check_agreement<K: Scalar>(
    closed: &impl Bracket<K>,
    kassel: &impl Bracket<K>,
    a: &BasisKey,
    b: &BasisKey,
) -> Option<Violation> {
    let r = closed.bracket_basis(a, b).sub(&kassel.bracket_basis(a, b));
    violation(format!("[{a}, {b}]"), &r)
}

/// Ordered pairs of basis keys (centrals included) with `|n| <= window`.
pub fn basis_pairs(window: i64) -> Vec<(BasisKey, BasisKey)> {
    let keys = BasisKey::all(window);
    let mut out = Vec::with_capacity(keys.len() * keys.len());
    for a in &keys {
        for b in &keys {
            out.push((*a, *b));
        }
    }
    out
}

/// Unordered triples, repetition allowed, of current keys with `|n| <= window`.
pub fn basis_triples(window: i64) -> Vec<[BasisKey; 3]> {
    let keys = BasisKey::currents(window);
    let mut out = Vec::new();
    for i in 0..keys.len() {
        for j in i..keys.len() {
            for k in j..keys.len() {
                out.push([keys[i], keys[j], keys[k]]);
            }
        }
    }
    out
}

pub fn verify_antisymmetry<K: Scalar>(br: &impl Bracket<K>, window: i64) -> Report {
    let mut report = Report::default();
    for (a, b) in basis_pairs(window) {
        report.record(check_antisymmetry(br, &a, &b));
    }
    report
}

pub fn verify_jacobi<K: Scalar>(br: &impl Bracket<K>, window: i64) -> Report {
    let mut report = Report::default();
    for [a, b, c] in basis_triples(window) {
        report.record(check_jacobi(br, &a, &b, &c));
    }
    report
}

pub fn verify_backend_agreement<K: Scalar>(closed: &impl Bracket<K>, kassel: &impl Bracket<K>, window: i64) -> Report {
    let mut report = Report::default();
    for (a, b) in basis_pairs(window) {
        report.record(check_agreement(closed, kassel, &a, &b));
    }
    report
}
