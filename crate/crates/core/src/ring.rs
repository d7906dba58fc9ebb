//! The ring `R = K[t, t^-1, u] / (u^2 - p(t))` with `p(t) = t^4 - 2ct^2 + 1`,
//! its one-forms modulo exact forms, and the reduction onto the basis
//! `w0 = [t^-1 dt]`, `w-k = [t^-k u dt]` (`k = 1..4`).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::arith::{PolyC, Rational, Scalar};
use crate::error::{Error, Result};
use crate::families::{family_by_recursion, Family, FamilyTable};

/// Finite Laurent polynomial in `t`; no zero coefficients are stored.
#[derive(Clone, PartialEq)]
pub struct LaurentPoly<K> {
    terms: BTreeMap<i64, K>,
}

impl<K: Scalar> LaurentPoly<K> {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn monomial(exponent: i64, coeff: K) -> Self {
        let mut p = Self::zero();
        p.add_term(exponent, coeff);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, K)>) -> Self {
        let mut p = Self::zero();
        for (e, a) in terms {
            p.add_term(e, a);
        }
        p
    }

    pub fn add_term(&mut self, exponent: i64, coeff: K) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&exponent) {
            Some(old) => {
                let sum = old + coeff;
                if !sum.is_zero() {
                    self.terms.insert(exponent, sum);
                }
            }
            None => {
                self.terms.insert(exponent, coeff);
            }
        }
    }

    pub fn coeff(&self, exponent: i64) -> K {
        self.terms.get(&exponent).cloned().unwrap_or_else(K::zero)
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &K)> + '_ {
        self.terms.iter().map(|(e, a)| (*e, a))
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
        for (e, a) in other.terms() {
            out.add_term(e, a.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, a)| (*e, -a.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e, a) in self.terms() {
            for (f, b) in other.terms() {
                out.add_term(e + f, a.clone() * b.clone());
            }
        }
        out
    }

    pub fn scale(&self, k: &K) -> Self {
        Self::from_terms(self.terms().map(|(e, a)| (e, a.clone() * k.clone())))
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        Self::from_terms(self.terms().map(|(e, a)| (e, a.scale(r))))
    }

    /// Multiplies by `t^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, a)| (e + shift, a.clone())).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms()
                .filter(|(e, _)| *e != 0)
                .map(|(e, a)| (e - 1, a.scale(&Rational::from_int(e)))),
        )
    }
}

impl<K: Scalar> fmt::Debug for LaurentPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, a) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({a})t^{e}")?;
        }
        Ok(())
    }
}

/// `even + odd * u`.
#[derive(Clone, PartialEq)]
pub struct RingElement<K> {
    pub even: LaurentPoly<K>,
    pub odd: LaurentPoly<K>,
}

impl<K: Scalar> RingElement<K> {
    pub fn new(even: LaurentPoly<K>, odd: LaurentPoly<K>) -> Self {
        RingElement { even, odd }
    }

    pub fn zero() -> Self {
        Self::new(LaurentPoly::zero(), LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::t_pow(0)
    }

    pub fn u() -> Self {
        Self::t_pow_u(0)
    }

    /// `t^k`.
    pub fn t_pow(k: i64) -> Self {
        Self::new(LaurentPoly::monomial(k, K::one()), LaurentPoly::zero())
    }

    /// `t^k u`.
    pub fn t_pow_u(k: i64) -> Self {
        Self::new(LaurentPoly::zero(), LaurentPoly::monomial(k, K::one()))
    }

    /// The basis monomial `t^k u^parity`.
    pub fn basis(k: i64, odd: bool) -> Self {
        if odd {
            Self::t_pow_u(k)
        } else {
            Self::t_pow(k)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.even.add(&other.even), self.odd.add(&other.odd))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.even.sub(&other.even), self.odd.sub(&other.odd))
    }

    pub fn scale(&self, k: &K) -> Self {
        Self::new(self.even.scale(k), self.odd.scale(k))
    }

    /// The automorphism `t -> t`, `u -> -u`.
    pub fn involution_p(&self) -> Self {
        Self::new(self.even.clone(), self.odd.neg())
    }

    /// Degrees of the basis monomials present, with `deg t^i = i` and
    /// `deg t^i u = i + 1/2`, sorted ascending.
    pub fn degree_support(&self) -> Result<Vec<HalfDegree>> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut out: Vec<HalfDegree> = self
            .even
            .terms()
            .map(|(e, _)| HalfDegree::of(e, false))
            .chain(self.odd.terms().map(|(e, _)| HalfDegree::of(e, true)))
            .collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// `(minus, h, plus)` with `self = minus + h + plus`, `plus` in
    /// `K(1+u) + span{t^k, t^k u : k >= 1}` and `minus` in
    /// `span{t^-k, t^-k u : k >= 1}`.
    pub fn triangular_decompose(&self) -> (Self, K, Self) {
        let split = |p: &LaurentPoly<K>, keep: fn(i64) -> bool| {
            LaurentPoly::from_terms(p.terms().filter(|(e, _)| keep(*e)).map(|(e, a)| (e, a.clone())))
        };
        let minus = Self::new(split(&self.even, |e| e < 0), split(&self.odd, |e| e < 0));
        let b0 = self.odd.coeff(0);
        let h = self.even.coeff(0) - b0.clone();
        let mut plus = Self::new(split(&self.even, |e| e > 0), split(&self.odd, |e| e > 0));
        plus.even.add_term(0, b0.clone());
        plus.odd.add_term(0, b0);
        (minus, h, plus)
    }
}

impl<K: Scalar> fmt::Debug for RingElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}] + [{:?}]u", self.even, self.odd)
    }
}

/// A half-integer degree stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfDegree(pub i64);

impl HalfDegree {
    pub fn of(exponent: i64, odd: bool) -> Self {
        HalfDegree(2 * exponent + odd as i64)
    }
}

impl fmt::Display for HalfDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let whole = self.0.div_euclid(2);
        if self.0.rem_euclid(2) == 0 {
            write!(f, "{whole}")
        } else if whole == -1 {
            f.write_str("-0.5")
        } else {
            write!(f, "{}.5", if whole < 0 { whole + 1 } else { whole })
        }
    }
}

/// `(a + b u) dt`.
#[derive(Clone, PartialEq)]
pub struct OneForm<K> {
    pub a: LaurentPoly<K>,
    pub b: LaurentPoly<K>,
}

impl<K: Scalar> OneForm<K> {
    pub fn new(a: LaurentPoly<K>, b: LaurentPoly<K>) -> Self {
        OneForm { a, b }
    }

    /// `t^k dt`.
    pub fn t_pow(k: i64) -> Self {
        Self::new(LaurentPoly::monomial(k, K::one()), LaurentPoly::zero())
    }

    /// `t^k u dt`.
    pub fn t_pow_u(k: i64) -> Self {
        Self::new(LaurentPoly::zero(), LaurentPoly::monomial(k, K::one()))
    }
}

impl<K: Scalar> fmt::Debug for OneForm<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "([{:?}] + [{:?}]u)dt", self.a, self.b)
    }
}

/// Coordinates on `w0, w-1, w-2, w-3, w-4`; slot `j` holds `w_{-j}`.
#[derive(Clone, PartialEq)]
pub struct CentralElement<K> {
    pub coords: [K; 5],
}

impl<K: Scalar> CentralElement<K> {
    pub fn zero() -> Self {
        CentralElement {
            coords: [K::zero(), K::zero(), K::zero(), K::zero(), K::zero()],
        }
    }

    /// `w_index`, `index in {0, -1, -2, -3, -4}`.
    pub fn basis(index: i64) -> Self {
        let mut z = Self::zero();
        z.coords[slot(index)] = K::one();
        z
    }

    pub fn get(&self, index: i64) -> &K {
        &self.coords[slot(index)]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (o, x) in out.coords.iter_mut().zip(&other.coords) {
            *o = o.clone() + x.clone();
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &K) -> Self {
        self.map(|x| x.clone() * k.clone())
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.map(|x| x.scale(r))
    }

    pub fn map<L>(&self, f: impl Fn(&K) -> L) -> CentralElement<L> {
        CentralElement {
            coords: [
                f(&self.coords[0]),
                f(&self.coords[1]),
                f(&self.coords[2]),
                f(&self.coords[3]),
                f(&self.coords[4]),
            ],
        }
    }

    /// `(index, coefficient)` for the nonzero coordinates.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &K)> + '_ {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (-(j as i64), x))
    }
}

fn slot(index: i64) -> usize {
    assert!((-4..=0).contains(&index), "central index out of range: {index}");
    (-index) as usize
}

impl<K: Scalar> fmt::Debug for CentralElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<K: Scalar> fmt::Display for CentralElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, x) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({x})w{j}")?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// The ring at a fixed value of `c` (symbolic when `K = PolyC`).
#[derive(Debug, Clone, PartialEq)]
pub struct DjkmRing<K> {
    c: K,
}

impl DjkmRing<PolyC> {
    /// `c` kept symbolic.
    pub fn generic() -> Self {
        DjkmRing { c: PolyC::c() }
    }
}

impl DjkmRing<Rational> {
    /// `c` fixed to `c0`; requires `c0^2 != 1`.
    pub fn specialized(c0: Rational) -> Result<Self> {
        if &c0 * &c0 == Rational::from_int(1) {
            return Err(Error::InvalidParams("c0 must satisfy c0^2 != 1".into()));
        }
        Ok(DjkmRing { c: c0 })
    }
}

impl<K: Scalar> DjkmRing<K> {
    pub fn c(&self) -> &K {
        &self.c
    }

    /// `p(t) = t^4 - 2ct^2 + 1`.
    pub fn p(&self) -> LaurentPoly<K> {
        LaurentPoly::from_terms([(4, K::one()), (2, self.c.scale(&Rational::from_int(-2))), (0, K::one())])
    }

    /// `p'(t) / 2 = 2t^3 - 2ct`.
    pub fn p_prime_half(&self) -> LaurentPoly<K> {
        LaurentPoly::from_terms([(3, K::from_int(2)), (1, self.c.scale(&Rational::from_int(-2)))])
    }

    pub fn mul(&self, f: &RingElement<K>, g: &RingElement<K>) -> RingElement<K> {
        let even = f.even.mul(&g.even).add(&f.odd.mul(&g.odd).mul(&self.p()));
        let odd = f.even.mul(&g.odd).add(&f.odd.mul(&g.even));
        RingElement::new(even, odd)
    }

    /// Class of `df` written as `(a + b u) dt` modulo exact forms, using
    /// `C(t) du = -C'(t) u dt`. For `f = A + B u` this is `A' dt`.
    pub fn differential(&self, f: &RingElement<K>) -> OneForm<K> {
        // B' u dt + B du = B' u dt - B' u dt
        OneForm::new(f.even.derivative(), LaurentPoly::zero())
    }

    /// `f dg` as `(a + b u) dt` modulo exact forms.
    pub fn f_dg(&self, f: &RingElement<K>, g: &RingElement<K>) -> OneForm<K> {
        let (fa, fb) = (&f.even, &f.odd);
        let (gc, gd) = (&g.even, &g.odd);
        let dc = gc.derivative();
        let dd = gd.derivative();
        // (A + Bu)(C' + D'u) dt + A D du + B D u du
        let a = fa
            .mul(&dc)
            .add(&fb.mul(&dd).mul(&self.p()))
            .add(&fb.mul(gd).mul(&self.p_prime_half()));
        let b = fa.mul(&dd).add(&fb.mul(&dc)).sub(&fa.mul(gd).derivative());
        OneForm::new(a, b)
    }

    /// Reduction of a one-form onto the basis of `Omega^1_R / dR`.
    ///
    /// `t^k dt` is exact unless `k = -1`. For the `u`-part the relation
    /// `(12 + 2i) t^{i+3} u dt = 2c(6 + 2i) t^{i+1} u dt - 2i t^{i-1} u dt`
    /// (from `d(t^i u^3)`) is used forward on the top exponent while it is
    /// `>= 0` and backward on the bottom exponent while it is `<= -5`.
    pub fn reduce(&self, w: &OneForm<K>) -> CentralElement<K> {
        let mut out = CentralElement::zero();
        out.coords[0] = w.a.coeff(-1);
        let mut pending = w.b.clone();
        let two_c = self.c.scale(&Rational::from_int(2));
        loop {
            let top = pending.terms().next_back().map(|(e, a)| (e, a.clone()));
            if let Some((k, a)) = top {
                if k >= 0 {
                    pending.terms.remove(&k);
                    let i = k - 3;
                    let inv = Rational::ratio(1, 12 + 2 * i);
                    let a = a.scale(&inv);
                    pending.add_term(i + 1, (two_c.clone() * a.clone()).scale(&Rational::from_int(6 + 2 * i)));
                    pending.add_term(i - 1, a.scale(&Rational::from_int(-2 * i)));
                    continue;
                }
            }
            let bottom = pending.terms().next().map(|(e, a)| (e, a.clone()));
            if let Some((k, a)) = bottom {
                if k <= -5 {
                    pending.terms.remove(&k);
                    let i = k + 1;
                    let inv = Rational::ratio(1, -2 * i);
                    let a = a.scale(&inv);
                    pending.add_term(i + 3, a.scale(&Rational::from_int(12 + 2 * i)));
                    pending.add_term(i + 1, -(two_c.clone() * a).scale(&Rational::from_int(6 + 2 * i)));
                    continue;
                }
            }
            break;
        }
        for (k, a) in pending.terms() {
            out.coords[(-k) as usize] = a.clone();
        }
        out
    }

    /// `Psi(k) = [t^k u dt]` by reduction.
    pub fn reduce_u_monomial(&self, k: i64) -> CentralElement<K> {
        self.reduce(&OneForm::t_pow_u(k))
    }

    /// Kassel cocycle `[f dg]`.
    pub fn kassel_cocycle(&self, f: &RingElement<K>, g: &RingElement<K>) -> CentralElement<K> {
        self.reduce(&self.f_dg(f, g))
    }

    /// Closed-form `Psi(k)` for `|k| <= k_max` assembled from the
    /// polynomial families.
    pub fn psi_table(&self, k_max: i64) -> PsiTable<K> {
        PsiTable::from_generic(&psi_table_generic(k_max), &self.c)
    }
}

/// `Psi(k)` for `-k_max <= k <= k_max`.
#[derive(Clone, PartialEq)]
pub struct PsiTable<K> {
    k_max: i64,
    values: Vec<CentralElement<K>>,
}

impl<K: Scalar> PsiTable<K> {
    /// Evaluates a table over `Q[c]` at `c`.
    pub fn from_generic(generic: &PsiTable<PolyC>, c: &K) -> Self {
        PsiTable {
            k_max: generic.k_max,
            values: generic.values.iter().map(|z| z.map(|p| K::eval_poly(p, c))).collect(),
        }
    }

    pub fn k_max(&self) -> i64 {
        self.k_max
    }

    pub fn get(&self, k: i64) -> Option<&CentralElement<K>> {
        if k.abs() > self.k_max {
            return None;
        }
        self.values.get((k + self.k_max) as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &CentralElement<K>)> + '_ {
        self.values.iter().enumerate().map(|(i, z)| (i as i64 - self.k_max, z))
    }
}

impl<K: Scalar> fmt::Debug for PsiTable<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter()).finish()
    }
}

/// The closed form over `Q[c]`:
///
/// - `k in -4..=-1`: `w_k`;
/// - odd `k >= 1`: `P_{-3,k} (w-3 + c w-1)`;
/// - even `k >= 0`: `P_{-4,k} w-4 + P_{-2,k} w-2`;
/// - `k <= -5`: the value at `-k-4` with `w-1` and `w-3` exchanged, which is
///   the image under the automorphism `t -> 1/t`, `u -> u/t^2`.
pub fn psi_table_generic(k_max: i64) -> PsiTable<PolyC> {
    let k_max = k_max.max(0);
    let depth = k_max.max(4);
    let table = |f| family_by_recursion(f, depth).expect("depth >= -1");
    let (m4, m3, m2): (FamilyTable, FamilyTable, FamilyTable) =
        (table(Family::M4), table(Family::M3), table(Family::M2));
    let c = PolyC::c();
    let nonnegative = |k: i64| -> [PolyC; 5] {
        let z = PolyC::zero();
        if k % 2 != 0 {
            let p3 = m3.get(k).unwrap().clone();
            [z.clone(), &c * &p3, z.clone(), p3, z]
        } else {
            [
                z.clone(),
                z.clone(),
                m2.get(k).unwrap().clone(),
                z,
                m4.get(k).unwrap().clone(),
            ]
        }
    };
    let values = (-k_max..=k_max)
        .map(|k| {
            let coords = if (-4..=-1).contains(&k) {
                CentralElement::<PolyC>::basis(k).coords
            } else if k >= 0 {
                nonnegative(k)
            } else {
                let mut v = nonnegative(-k - 4);
                v.swap(1, 3);
                v
            };
            CentralElement { coords }
        })
        .collect();
    PsiTable { k_max, values }
}

/// Largest `|deg(component) - (deg a + deg b)|` over products of basis
/// monomials `a, b` with `|index| <= window`, in whole degrees rounded up.
pub fn quasi_graded_bound<K: Scalar>(ring: &DjkmRing<K>, window: i64) -> i64 {
    let mut worst = 0;
    for i in -window..=window {
        for j in -window..=window {
            for (pa, pb) in [(false, false), (false, true), (true, false), (true, true)] {
                worst = worst.max(quasi_graded_deviation(ring, (i, pa), (j, pb)));
            }
        }
    }
    (worst + 1) / 2
}

/// Doubled deviation for the product of `t^i u^pa` and `t^j u^pb`.
pub fn quasi_graded_deviation<K: Scalar>(ring: &DjkmRing<K>, (i, pa): (i64, bool), (j, pb): (i64, bool)) -> i64 {
    let sum = HalfDegree::of(i, pa).0 + HalfDegree::of(j, pb).0;
    let prod = ring.mul(&RingElement::basis(i, pa), &RingElement::basis(j, pb));
    prod.degree_support()
        .map(|ds| ds.iter().map(|d| (d.0 - sum).abs()).max().unwrap_or(0))
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;
    use num_traits::One;

    fn gen() -> DjkmRing<PolyC> {
        DjkmRing::generic()
    }

    fn c() -> PolyC {
        PolyC::c()
    }

    fn half() -> PolyC {
        PolyC::constant(Rational::ratio(1, 2))
    }

    fn central(coords: [PolyC; 5]) -> CentralElement<PolyC> {
        CentralElement { coords }
    }

    #[test]
    fn ring_mul_examples() {
        let r = gen();
        let uu = r.mul(&RingElement::u(), &RingElement::u());
        assert_eq!(uu, RingElement::new(r.p(), LaurentPoly::zero()));
        let tu = RingElement::t_pow_u(1);
        let sq = r.mul(&tu, &tu);
        assert_eq!(sq.even, r.p().shift(2));
        assert!(sq.odd.is_zero());
        assert_eq!(
            r.mul(&RingElement::t_pow(-1), &RingElement::t_pow(1)),
            RingElement::one()
        );
    }

    #[test]
    fn degree_support_examples() {
        let ds = RingElement::<PolyC>::t_pow_u(3).degree_support().unwrap();
        assert_eq!(ds, vec![HalfDegree(7)]);
        assert_eq!(ds[0].to_string(), "3.5");
        let ds = RingElement::<PolyC>::one()
            .add(&RingElement::u())
            .degree_support()
            .unwrap();
        assert_eq!(ds, vec![HalfDegree(0), HalfDegree(1)]);
        assert_eq!(
            RingElement::<PolyC>::t_pow(-2).degree_support().unwrap()[0].to_string(),
            "-2"
        );
        assert_eq!(HalfDegree::of(-1, true).to_string(), "-0.5");
        assert_eq!(HalfDegree::of(-2, true).to_string(), "-1.5");
        assert_eq!(RingElement::<PolyC>::zero().degree_support(), Err(Error::ZeroElement));
    }

    #[test]
    fn quasi_graded_examples() {
        let r = gen();
        for i in -3..=3 {
            for j in -3..=3 {
                assert_eq!(quasi_graded_deviation(&r, (i, false), (j, false)), 0);
            }
        }
        assert_eq!(quasi_graded_deviation(&r, (2, true), (-1, true)), 6);
        assert_eq!(quasi_graded_bound(&r, 5), 3);
    }

    #[test]
    fn involution_examples() {
        let f = RingElement::<PolyC>::t_pow(1).add(&RingElement::t_pow_u(1));
        let g = RingElement::t_pow(1).sub(&RingElement::t_pow_u(1));
        assert_eq!(f.involution_p(), g);
        let h = RingElement::<PolyC>::one()
            .add(&RingElement::u())
            .add(&RingElement::t_pow_u(-1));
        assert_eq!(h.involution_p().involution_p(), h);
        assert_eq!(
            RingElement::<PolyC>::u().involution_p(),
            RingElement::zero().sub(&RingElement::u())
        );
    }

    #[test]
    fn triangular_examples() {
        let (m, h, p) = RingElement::<PolyC>::u().triangular_decompose();
        assert!(m.is_zero());
        assert_eq!(h, -PolyC::one());
        assert_eq!(p, RingElement::one().add(&RingElement::u()));

        let (m, h, p) = RingElement::<PolyC>::t_pow_u(-1).triangular_decompose();
        assert_eq!(m, RingElement::t_pow_u(-1));
        assert!(h.is_zero() && p.is_zero());

        let f = RingElement::<PolyC>::t_pow(2).add(&RingElement::one().scale(&PolyC::from_ints(&[3])));
        let (m, h, p) = f.triangular_decompose();
        assert!(m.is_zero());
        assert_eq!(h, PolyC::from_ints(&[3]));
        assert_eq!(p, RingElement::t_pow(2));
    }

    #[test]
    fn differential_is_exact() {
        let r = gen();
        let d = r.differential(&RingElement::t_pow(3));
        assert_eq!(d.a, LaurentPoly::monomial(2, PolyC::from_ints(&[3])));
        assert!(r.reduce(&r.differential(&RingElement::u())).is_zero());
        assert!(r.reduce(&r.differential(&RingElement::t_pow_u(1))).is_zero());
    }

    #[test]
    fn reduce_examples() {
        let r = gen();
        assert_eq!(r.reduce_u_monomial(0), CentralElement::basis(-4));
        let z = PolyC::zero();
        assert_eq!(
            r.reduce_u_monomial(1),
            central([z.clone(), &c() * &half(), z.clone(), half(), z.clone()])
        );
        assert_eq!(
            r.reduce_u_monomial(-5),
            central([z.clone(), half(), z.clone(), &c() * &half(), z])
        );
        for k in -15..=15 {
            let expected = if k == -1 {
                CentralElement::basis(0)
            } else {
                CentralElement::zero()
            };
            assert_eq!(r.reduce(&OneForm::t_pow(k)), expected);
        }
    }

    #[test]
    fn kassel_examples() {
        let r = gen();
        for m in -4..=4 {
            for n in -4..=4 {
                let z = r.kassel_cocycle(&RingElement::t_pow(m), &RingElement::t_pow(n));
                let expected = if m + n == 0 {
                    CentralElement::basis(0).scale_rational(&Rational::from_int(n))
                } else {
                    CentralElement::zero()
                };
                assert_eq!(z, expected);
            }
        }
        let z = r.kassel_cocycle(&RingElement::t_pow_u(-2), &RingElement::u());
        assert_eq!(z, CentralElement::basis(0).scale(&PolyC::from_ints(&[0, -2])));
        assert!(r.kassel_cocycle(&RingElement::u(), &RingElement::u()).is_zero());
        assert!(r
            .kassel_cocycle(&RingElement::one(), &RingElement::t_pow_u(5))
            .is_zero());
    }

    #[test]
    fn psi_table_examples() {
        let t = psi_table_generic(6);
        assert_eq!(t.get(-1).unwrap(), &CentralElement::basis(-1));
        let z = PolyC::zero();
        assert_eq!(
            t.get(1).unwrap(),
            &central([z.clone(), &c() * &half(), z.clone(), half(), z.clone()])
        );
        let four_fifths_c = PolyC::from_coeffs(vec![Rational::zero(), Rational::ratio(4, 5)]);
        assert_eq!(
            t.get(2).unwrap(),
            &central([
                z.clone(),
                z.clone(),
                PolyC::constant(Rational::ratio(1, 5)),
                z,
                four_fifths_c
            ])
        );
        assert!(t.get(7).is_none());
    }

    #[test]
    fn psi_table_matches_reduction() {
        let r = gen();
        let t = r.psi_table(20);
        for (k, z) in t.iter() {
            assert_eq!(z, &r.reduce_u_monomial(k), "k = {k}");
        }
    }

    #[test]
    fn specialized_ring_agrees_with_generic() {
        let c0 = Rational::ratio(3, 5);
        let r = DjkmRing::specialized(c0.clone()).unwrap();
        let g = gen();
        for k in -12..=12 {
            let a = r.reduce_u_monomial(k);
            let b = g.reduce_u_monomial(k).map(|p| p.eval(&c0));
            assert_eq!(a, b);
        }
        assert!(DjkmRing::specialized(Rational::from_int(-1)).is_err());
    }
}
