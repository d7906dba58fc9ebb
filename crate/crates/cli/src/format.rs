//! Canonical JSON and CSV encodings. Object keys are sorted (serde_json's
//! default map is ordered) and polynomial coefficient arrays run from the
//! lowest degree up, so equal values always serialize to equal bytes.

use djkm_core::algebra::{AlgebraElement, BasisKey};
use djkm_core::arith::{PolyC, Rational, Scalar};
use djkm_core::families::FamilyTable;
use djkm_core::fock::{FockState, Monomial, Var, VarKind};
use djkm_core::ring::{CentralElement, LaurentPoly, OneForm, PsiTable};
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::error::{CliError, Result};

pub fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values built here always serialize");
    s.push('\n');
    s
}

fn bigint_json(n: &num_bigint::BigInt) -> Value {
    match n.to_i64() {
        Some(i) => json!(i),
        None => json!(n.to_string()),
    }
}

pub fn rational_json(r: &Rational) -> Value {
    json!([bigint_json(&r.numer()), bigint_json(&r.denom())])
}

pub fn parse_rational_json(v: &Value) -> Result<Rational> {
    let part = |x: &Value| -> Result<num_bigint::BigInt> {
        match x {
            Value::Number(n) => n
                .as_i64()
                .map(Into::into)
                .ok_or_else(|| CliError::usage(format!("not an integer: {n}"))),
            Value::String(s) => s.parse().map_err(|_| CliError::usage(format!("not an integer: {s:?}"))),
            _ => Err(CliError::usage(format!("not an integer: {x}"))),
        }
    };
    match v {
        Value::Array(a) if a.len() == 2 => {
            let den = part(&a[1])?;
            if den == 0.into() {
                return Err(CliError::usage("zero denominator"));
            }
            Ok(Rational::new(part(&a[0])?, den))
        }
        Value::String(s) => Ok(s.parse()?),
        Value::Number(_) => Ok(Rational::new(part(v)?, 1)),
        _ => Err(CliError::usage(format!("not a rational: {v}"))),
    }
}

pub fn poly_json(p: &PolyC) -> Value {
    Value::Array(p.coeffs().iter().map(rational_json).collect())
}

/// Scalars that have a canonical JSON form.
pub trait JsonScalar: Scalar {
    fn to_json(&self) -> Value;
}

impl JsonScalar for Rational {
    fn to_json(&self) -> Value {
        rational_json(self)
    }
}

impl JsonScalar for PolyC {
    fn to_json(&self) -> Value {
        poly_json(self)
    }
}

/// All five coordinates, keyed `w0 .. w-4`.
pub fn central_json<K: JsonScalar>(z: &CentralElement<K>) -> Value {
    let map: Map<String, Value> = (-4..=0).map(|j| (format!("w{j}"), z.get(j).to_json())).collect();
    Value::Object(map)
}

/// Nonzero coordinates only, as display strings: `{"w-1": "c/2"}`.
pub fn central_compact<K: Scalar>(z: &CentralElement<K>) -> Value {
    let map: Map<String, Value> = z
        .terms()
        .map(|(j, x)| (format!("w{j}"), json!(x.to_string())))
        .collect();
    Value::Object(map)
}

pub fn algebra_json<K: JsonScalar>(a: &AlgebraElement<K>) -> Value {
    let map: Map<String, Value> = a.terms().map(|(k, x)| (k.to_string(), x.to_json())).collect();
    Value::Object(map)
}

pub fn family_json(table: &FamilyTable) -> Value {
    let entries: Vec<Value> = table.iter().map(|(k, p)| json!({"k": k, "p": poly_json(p)})).collect();
    json!({
        "which": table.family().index(),
        "k_max": table.k_max(),
        "entries": entries,
    })
}

/// Header `k,c^0,...,c^d`; cells are `p` or `p/q`.
pub fn family_csv(table: &FamilyTable) -> String {
    let d = table.iter().filter_map(|(_, p)| p.degree()).max().unwrap_or(0);
    let mut out = String::from("k");
    for i in 0..=d {
        out.push_str(&format!(",c^{i}"));
    }
    out.push('\n');
    for (k, p) in table.iter() {
        out.push_str(&k.to_string());
        for i in 0..=d {
            out.push_str(&format!(",{}", p.coeff(i)));
        }
        out.push('\n');
    }
    out
}

pub fn psi_table_json<K: JsonScalar>(table: &PsiTable<K>, k_min: i64) -> Value {
    let entries: Vec<Value> = table
        .iter()
        .filter(|(k, _)| *k >= k_min)
        .map(|(k, z)| json!({"k": k, "psi": central_json(z)}))
        .collect();
    json!({"k_min": k_min, "k_max": table.k_max(), "entries": entries})
}

/// Parses `t^k u dt`, `t^k,u`, `t u`, `u dt`, `t^-3` ... into the one-form
/// `t^k dt` or `t^k u dt`.
pub fn parse_monomial_form(spec: &str) -> Result<OneForm<PolyC>> {
    let bad = || CliError::usage(format!("expected a monomial like \"t^1 u dt\", got {spec:?}"));
    let mut k: Option<i64> = None;
    let mut odd = false;
    let mut saw_dt = false;
    for tok in spec
        .split(|c: char| c.is_whitespace() || c == ',' || c == '*')
        .filter(|s| !s.is_empty())
    {
        match tok {
            "u" if !odd => odd = true,
            "dt" if !saw_dt => saw_dt = true,
            "t" if k.is_none() => k = Some(1),
            _ => match tok.strip_prefix("t^") {
                Some(e) if k.is_none() => {
                    k = Some(e.trim_matches(|c| c == '(' || c == ')').parse().map_err(|_| bad())?)
                }
                _ => return Err(bad()),
            },
        }
    }
    if k.is_none() && !odd {
        return Err(bad());
    }
    let k = k.unwrap_or(0);
    Ok(if odd { OneForm::t_pow_u(k) } else { OneForm::t_pow(k) })
}

/// `{"even": [[k, num, den], ...], "odd": [...]}` as `a(t) dt + b(t) u dt`.
pub fn parse_form_json(v: &Value) -> Result<OneForm<PolyC>> {
    let obj = v
        .as_object()
        .ok_or_else(|| CliError::usage("form must be a JSON object"))?;
    for key in obj.keys() {
        if key != "even" && key != "odd" {
            return Err(CliError::usage(format!("unknown form key {key:?}")));
        }
    }
    let side = |name: &str| -> Result<LaurentPoly<PolyC>> {
        let mut p = LaurentPoly::zero();
        let Some(list) = obj.get(name) else {
            return Ok(p);
        };
        let list = list
            .as_array()
            .ok_or_else(|| CliError::usage(format!("{name} must be a list")))?;
        for item in list {
            let item = item
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| CliError::usage(format!("{name} entries are [k, num, den]")))?;
            let k = item[0]
                .as_i64()
                .ok_or_else(|| CliError::usage("exponent must be an integer"))?;
            let r = parse_rational_json(&Value::Array(item[1..].to_vec()))?;
            p.add_term(k, PolyC::constant(r));
        }
        Ok(p)
    };
    Ok(OneForm::new(side("even")?, side("odd")?))
}

pub fn parse_form(spec: &str) -> Result<OneForm<PolyC>> {
    if spec.trim_start().starts_with('{') {
        parse_form_json(&serde_json::from_str(spec)?)
    } else {
        parse_monomial_form(spec)
    }
}

pub fn parse_basis_key(s: &str) -> Result<BasisKey> {
    s.parse::<BasisKey>().map_err(CliError::from)
}

/// `[{"monomial": [[var, index, exponent], ...], "v": 0, "coeff": [num, den]}, ...]`.
pub fn fock_state_json(s: &FockState) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .map(|(mono, v, coeff)| {
            let vars: Vec<Value> = mono
                .iter()
                .map(|(var, e)| json!([var.kind.name(), var.index, e]))
                .collect();
            json!({"monomial": vars, "v": v, "coeff": rational_json(coeff)})
        })
        .collect();
    Value::Array(terms)
}

pub fn parse_fock_state(v: &Value) -> Result<FockState> {
    let terms = v
        .as_array()
        .ok_or_else(|| CliError::usage("a state is a list of terms"))?;
    let mut s = FockState::zero();
    for t in terms {
        let bad = |what: &str| CliError::usage(format!("state term {t}: {what}"));
        let vidx = t
            .get("v")
            .and_then(Value::as_u64)
            .filter(|&v| v < 2)
            .ok_or_else(|| bad("v must be 0 or 1"))?;
        let coeff = match t.get("coeff") {
            Some(c) => parse_rational_json(c)?,
            None => Rational::from_int(1),
        };
        let mut mono = Monomial::new();
        for f in t
            .get("monomial")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing monomial"))?
        {
            let f = f
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| bad("factors are [var, index, exponent]"))?;
            let kind = VarKind::from_name(f[0].as_str().ok_or_else(|| bad("variable name"))?)?;
            let index = f[1].as_i64().ok_or_else(|| bad("variable index"))?;
            let e = f[2]
                .as_u64()
                .and_then(|e| u32::try_from(e).ok())
                .ok_or_else(|| bad("exponent"))?;
            if e > 0 {
                *mono.entry(Var::new(kind, index)?).or_insert(0) += e;
            }
        }
        s.add_term(mono, vidx as u8, coeff);
    }
    Ok(s)
}

/// A states file holds a list of states, or `{"states": [...]}`.
pub fn parse_states(text: &str) -> Result<Vec<FockState>> {
    let v: Value = serde_json::from_str(text)?;
    let list = match &v {
        Value::Object(o) => o
            .get("states")
            .ok_or_else(|| CliError::usage("expected a \"states\" key"))?,
        other => other,
    };
    list.as_array()
        .ok_or_else(|| CliError::usage("states must be a list"))?
        .iter()
        .map(parse_fock_state)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use djkm_core::families::{family_by_recursion, Family};
    use djkm_core::ring::DjkmRing;

    #[test]
    fn reduce_example_output() {
        let ring = DjkmRing::generic();
        let z = ring.reduce(&parse_form("t^1 u dt").unwrap());
        assert_eq!(central_compact(&z), json!({"w-3": "1/2", "w-1": "c/2"}));
        let full = central_json(&z);
        assert_eq!(full["w-1"], json!([[0, 1], [1, 2]]));
        assert_eq!(full["w0"], json!([]));
    }

    #[test]
    fn monomial_specs() {
        assert_eq!(parse_form("t^1,u").unwrap(), OneForm::t_pow_u(1));
        assert_eq!(parse_form("t^-3 dt").unwrap(), OneForm::t_pow(-3));
        assert_eq!(parse_form("u dt").unwrap(), OneForm::t_pow_u(0));
        assert_eq!(parse_form("t").unwrap(), OneForm::t_pow(1));
        assert!(parse_form("t^x u").is_err());
        assert!(parse_form("u u").is_err());
        assert!(parse_form("dt").is_err());
        let j = parse_form(r#"{"even": [[-1, 3, 1]], "odd": [[1, 1, 2]]}"#).unwrap();
        let ring = DjkmRing::generic();
        let z = ring.reduce(&j);
        assert_eq!(central_compact(&z), json!({"w0": "3", "w-3": "1/4", "w-1": "c/4"}));
        assert!(parse_form(r#"{"evn": []}"#).is_err());
    }

    #[test]
    fn family_csv_row() {
        let t = family_by_recursion(Family::M4, 10).unwrap();
        let csv = family_csv(&t);
        let mut lines = csv.lines();
        assert!(lines.next().unwrap().starts_with("k,c^0,c^1"));
        let row = csv.lines().find(|l| l.starts_with("2,")).unwrap();
        assert!(row.starts_with("2,0,4/5"), "{row}");
    }

    #[test]
    fn fock_state_round_trip() {
        let s = FockState::monomial(&[(Var::x1(0), 1), (Var::y(-2), 2)], 1)
            .add(&FockState::vacuum(0).scale(&Rational::ratio(-3, 7)));
        let v = fock_state_json(&s);
        assert_eq!(parse_fock_state(&v).unwrap(), s);
        assert!(parse_fock_state(&json!([{"monomial": [["y", 2, 1]], "v": 0}])).is_err());
        assert!(parse_fock_state(&json!([{"monomial": [], "v": 2}])).is_err());
        let states = parse_states(r#"{"states": [[{"monomial": [["x", -1, 1]], "v": 0}]]}"#).unwrap();
        assert_eq!(states, vec![FockState::monomial(&[(Var::x(-1), 1)], 0)]);
    }

    #[test]
    fn rationals() {
        assert_eq!(rational_json(&Rational::ratio(-4, 6)), json!([-2, 3]));
        assert_eq!(parse_rational_json(&json!("3/5")).unwrap(), Rational::ratio(3, 5));
        assert_eq!(parse_rational_json(&json!([1, "2"])).unwrap(), Rational::ratio(1, 2));
        assert!(parse_rational_json(&json!([1, 0])).is_err());
    }
}
