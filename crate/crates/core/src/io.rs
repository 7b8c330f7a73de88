//! JSON reading and writing for coefficient tables, presentations, series
//! and Ohtsuki coefficients.
//!
//! Loading errors carry a JSON pointer to the offending value.

use std::collections::BTreeMap;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::qjones::{CycCoeffTable, ExplicitTable, KnownKnot, TableFactor};
use crate::ring::text::{format_laurent, parse_laurent};
use crate::ring::{DenFactor, DenFactors, RationalLaurent};
use crate::surgery::{builtin, SurgeryPresentation};
use crate::unified::{HabiroSeries, OhtsukiSeries};

fn schema(pointer: &str, message: impl Into<String>) -> Error {
    Error::Schema { pointer: if pointer.is_empty() { "/".into() } else { pointer.into() }, message: message.into() }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, at: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| schema(at, format!("missing field \"{key}\"")))
}

fn as_object<'a>(v: &'a Value, at: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| schema(at, "expected an object"))
}

fn as_array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(at, "expected an array"))
}

fn as_u32(v: &Value, at: &str) -> Result<u32> {
    v.as_u64().and_then(|n| u32::try_from(n).ok()).ok_or_else(|| schema(at, "expected a non-negative integer"))
}

fn as_str<'a>(v: &'a Value, at: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| schema(at, "expected a string"))
}

fn knot_by_name(name: &str) -> Option<KnownKnot> {
    match name {
        "trefoil" => Some(KnownKnot::TrefoilRight),
        _ => KnownKnot::from_name(name),
    }
}

fn parse_den_factor(v: &Value, at: &str) -> Result<DenFactors> {
    let a = as_array(v, at)?;
    let kind = as_str(a.first().ok_or_else(|| schema(at, "empty factor"))?, &format!("{at}/0"))?;
    let arg = |i: usize| -> Result<u32> {
        let p = format!("{at}/{i}");
        as_u32(a.get(i).ok_or_else(|| schema(&p, "missing factor argument"))?, &p)
    };
    let want = |n: usize| -> Result<()> {
        if a.len() == n + 1 {
            Ok(())
        } else {
            Err(schema(at, format!("\"{kind}\" takes {n} arguments")))
        }
    };
    match kind {
        "one_minus_q" => {
            want(1)?;
            Ok(DenFactors::one().with(DenFactor::one_minus_q(), arg(1)?))
        }
        "poch" => {
            want(2)?;
            let (s, k) = (arg(1)?, arg(2)?);
            if s == 0 && k > 0 {
                return Err(schema(&format!("{at}/1"), "pochhammer start must be positive"));
            }
            Ok(DenFactors::pochhammer(s, k))
        }
        "one_minus_q_pow" => {
            want(2)?;
            let j = arg(1)?;
            if j == 0 {
                return Err(schema(&format!("{at}/1"), "exponent must be positive"));
            }
            Ok(DenFactors::one().with(DenFactor::OneMinusQPow(j), arg(2)?))
        }
        "one_plus_v_odd" => {
            want(2)?;
            let e = arg(1)?;
            if e % 2 == 0 {
                return Err(schema(&format!("{at}/1"), "exponent of v must be odd"));
            }
            Ok(DenFactors::one().with(DenFactor::OnePlusVOdd(e / 2), arg(2)?))
        }
        _ => Err(schema(&format!("{at}/0"), format!("unknown factor kind \"{kind}\""))),
    }
}

/// Parse a `den_factors` list into a factor multiset.
pub fn parse_den_factors(v: &Value, at: &str) -> Result<DenFactors> {
    let mut den = DenFactors::one();
    for (i, f) in as_array(v, at)?.iter().enumerate() {
        den = den.product(&parse_den_factor(f, &format!("{at}/{i}"))?);
    }
    Ok(den)
}

pub fn den_factors_to_json(d: &DenFactors) -> Value {
    Value::Array(
        d.iter()
            .map(|(f, m)| match f {
                DenFactor::OneMinusQPow(j) => json!(["one_minus_q_pow", j, m]),
                DenFactor::OnePlusVOdd(i) => json!(["one_plus_v_odd", 2 * i + 1, m]),
            })
            .collect(),
    )
}

fn parse_rational(obj: &Map<String, Value>, at: &str) -> Result<RationalLaurent> {
    let num_at = format!("{at}/num");
    let num = parse_laurent(as_str(field(obj, "num", at)?, &num_at)?).map_err(|e| schema(&num_at, e.to_string()))?;
    let den = match obj.get("den_factors") {
        Some(d) => parse_den_factors(d, &format!("{at}/den_factors"))?,
        None => DenFactors::one(),
    };
    Ok(RationalLaurent::new(num, den))
}

fn rational_fields(r: &RationalLaurent) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("num".into(), Value::String(format_laurent(r.num())));
    m.insert("den_factors".into(), den_factors_to_json(r.den()));
    m
}

fn parse_explicit(obj: &Map<String, Value>, at: &str) -> Result<ExplicitTable> {
    let arity = as_u32(field(obj, "arity", at)?, &format!("{at}/arity"))? as usize;
    if arity == 0 {
        return Err(schema(&format!("{at}/arity"), "arity must be positive"));
    }
    let mut entries = BTreeMap::new();
    let list_at = format!("{at}/entries");
    for (i, e) in as_array(field(obj, "entries", at)?, &list_at)?.iter().enumerate() {
        let e_at = format!("{list_at}/{i}");
        let eo = as_object(e, &e_at)?;
        let k_at = format!("{e_at}/k");
        let k = match field(eo, "k", &e_at)? {
            Value::Array(ks) => {
                ks.iter().enumerate().map(|(j, x)| as_u32(x, &format!("{k_at}/{j}"))).collect::<Result<Vec<_>>>()?
            }
            x => vec![as_u32(x, &k_at)?],
        };
        if k.len() != arity {
            return Err(schema(&k_at, format!("index has {} entries, arity is {arity}", k.len())));
        }
        let value = parse_rational(eo, &e_at)?;
        if entries.insert(k, value).is_some() {
            return Err(schema(&k_at, "duplicate index"));
        }
    }
    match obj.get("form").map(|f| as_str(f, &format!("{at}/form"))).transpose()? {
        None | Some("jprime") => Ok(ExplicitTable { arity, entries }),
        Some("link") => Ok(ExplicitTable::from_link_form(arity, entries)),
        Some(other) => Err(schema(&format!("{at}/form"), format!("unknown table form \"{other}\""))),
    }
}

/// Parse a coefficient table: a builtin reference, an explicit table, or a
/// product of tables with an optional component permutation.
pub fn parse_table(v: &Value, at: &str) -> Result<CycCoeffTable> {
    let obj = as_object(v, at)?;
    if let Some(b) = obj.get("builtin") {
        let b_at = format!("{at}/builtin");
        let name = as_str(b, &b_at)?;
        let k = knot_by_name(name).ok_or_else(|| schema(&b_at, format!("unknown builtin table \"{name}\"")))?;
        return Ok(CycCoeffTable::builtin(k));
    }
    if let Some(p) = obj.get("product") {
        let p_at = format!("{at}/product");
        let mut t = CycCoeffTable::empty();
        for (i, f) in as_array(p, &p_at)?.iter().enumerate() {
            t = t.product(&parse_table(f, &format!("{p_at}/{i}"))?);
        }
        if let Some(perm) = obj.get("permutation") {
            let pm_at = format!("{at}/permutation");
            let perm =
                as_array(perm, &pm_at)?.iter().map(|x| as_u32(x, &pm_at).map(|n| n as usize)).collect::<Result<Vec<_>>>()?;
            let mut seen = perm.clone();
            seen.sort_unstable();
            if seen != (0..t.arity()).collect::<Vec<_>>() {
                return Err(schema(&pm_at, "not a permutation of the components"));
            }
            t = t.permuted(&perm);
        }
        return Ok(t);
    }
    Ok(CycCoeffTable::single(TableFactor::Explicit(parse_explicit(obj, at)?)))
}

fn factor_to_json(f: &TableFactor) -> Value {
    match f {
        TableFactor::Builtin(k) => json!({ "builtin": k.name() }),
        TableFactor::Explicit(t) => {
            let entries: Vec<Value> = t
                .entries
                .iter()
                .filter(|(_, e)| !e.is_zero())
                .map(|(k, e)| {
                    let mut m = rational_fields(e);
                    m.insert("k".into(), json!(k));
                    Value::Object(m)
                })
                .collect();
            json!({ "arity": t.arity, "entries": entries })
        }
    }
}

/// Canonical JSON for a table.
pub fn table_to_json(t: &CycCoeffTable) -> Value {
    if let ([f], true) = (t.factors(), t.slots().iter().enumerate().all(|(i, s)| *s == (0, i))) {
        return factor_to_json(f);
    }
    let mut canonical = Vec::new();
    for (f, fac) in t.factors().iter().enumerate() {
        canonical.extend((0..fac.arity()).map(|j| (f, j)));
    }
    let perm: Vec<usize> =
        t.slots().iter().map(|s| canonical.iter().position(|c| c == s).expect("slot of a factor")).collect();
    let mut out = json!({ "product": t.factors().iter().map(factor_to_json).collect::<Vec<_>>() });
    if perm.iter().enumerate().any(|(i, &p)| i != p) {
        out["permutation"] = json!(perm);
    }
    out
}

/// Parse a presentation document.
pub fn parse_presentation(v: &Value) -> Result<SurgeryPresentation> {
    let obj = as_object(v, "")?;
    let name = obj.get("name").map(|n| as_str(n, "/name").map(str::to_string)).transpose()?;
    if let Some(b) = obj.get("builtin") {
        let b = as_str(b, "/builtin")?;
        let p = builtin(b).ok_or_else(|| schema("/builtin", format!("unknown builtin presentation \"{b}\"")))?;
        return Ok(match name {
            Some(n) => p.with_name(&n),
            None => p,
        });
    }
    let comps = as_array(field(obj, "components", "")?, "/components")?;
    let mut framings = Vec::with_capacity(comps.len());
    for (i, c) in comps.iter().enumerate() {
        let at = format!("/components/{i}");
        let co = as_object(c, &at)?;
        let f_at = format!("{at}/framing");
        let b = field(co, "framing", &at)?.as_i64().ok_or_else(|| schema(&f_at, "framing must be an integer"))?;
        if !matches!(b, 1 | -1 | 2 | -2) {
            return Err(schema(&f_at, format!("unsupported framing {b}; expected one of 2, -2, 1, -1")));
        }
        framings.push(b);
    }
    let table = match obj.get("coefficients") {
        Some(t) => parse_table(t, "/coefficients")?,
        None if framings.is_empty() => CycCoeffTable::empty(),
        None => return Err(schema("", "missing field \"coefficients\"")),
    };
    if table.arity() != framings.len() {
        return Err(schema(
            "/components",
            format!("{} components but the coefficient table has arity {}", framings.len(), table.arity()),
        ));
    }
    SurgeryPresentation::new(framings, table, name).map_err(|e| schema("/components", e.to_string()))
}

pub fn presentation_from_str(src: &str) -> Result<SurgeryPresentation> {
    let v: Value = serde_json::from_str(src).map_err(|e| schema("", format!("invalid JSON: {e}")))?;
    parse_presentation(&v)
}

pub fn load_presentation(path: &Path) -> Result<SurgeryPresentation> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    presentation_from_str(&src)
}

/// Canonical JSON for a presentation; builtin references are expanded.
pub fn presentation_to_json(p: &SurgeryPresentation) -> Value {
    let comps: Vec<Value> = p.framing_values().iter().map(|b| json!({ "framing": b })).collect();
    let mut out = json!({ "components": comps, "coefficients": table_to_json(p.table()) });
    if let Some(n) = p.name() {
        out["name"] = json!(n);
    }
    out
}

pub fn series_to_json(s: &HabiroSeries) -> Value {
    Value::Array(
        s.terms()
            .iter()
            .map(|t| {
                let mut m = Map::new();
                m.insert("k".into(), json!(t.k));
                m.extend(rational_fields(&t.value));
                m.insert("certificate".into(), json!(t.certificate));
                Value::Object(m)
            })
            .collect(),
    )
}

/// Terms `{k, num, den_factors}` of a serialized series, in order.
pub fn series_terms_from_json(v: &Value) -> Result<Vec<(u32, RationalLaurent)>> {
    as_array(v, "")?
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let at = format!("/{i}");
            let o = as_object(t, &at)?;
            Ok((as_u32(field(o, "k", &at)?, &format!("{at}/k"))?, parse_rational(o, &at)?))
        })
        .collect()
}

pub fn ohtsuki_to_json(o: &OhtsukiSeries) -> Value {
    json!({
        "variable": "q-1",
        "degree": o.series.degree(),
        "coeffs": o.series.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "integral": o.integral,
        "dyadic": o.dyadic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surgery::BUILTIN_NAMES;

    #[test]
    fn builtins_round_trip() {
        for name in BUILTIN_NAMES {
            let p = builtin(name).unwrap();
            let j = presentation_to_json(&p);
            let back = parse_presentation(&j).unwrap();
            assert_eq!(back, p, "{name}");
            assert_eq!(presentation_to_json(&back), j);
        }
    }

    #[test]
    fn pointers_locate_errors() {
        let bad = json!({ "components": [{ "framing": 2 }, { "framing": 3 }], "coefficients": { "builtin": "whitehead" } });
        match parse_presentation(&bad) {
            Err(Error::Schema { pointer, .. }) => assert_eq!(pointer, "/components/1/framing"),
            other => panic!("{other:?}"),
        }
        let order = json!({ "components": [{ "framing": -1 }, { "framing": 2 }], "coefficients": { "builtin": "whitehead" } });
        let e = parse_presentation(&order).unwrap_err();
        assert!(e.to_string().contains("ordering convention"), "{e}");
        let den = json!({ "arity": 1, "entries": [{ "k": [0], "num": "1", "den_factors": [["poch", 0, 2]] }] });
        match parse_table(&den, "/coefficients") {
            Err(Error::Schema { pointer, .. }) => assert_eq!(pointer, "/coefficients/entries/0/den_factors/0/1"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn explicit_products_keep_their_permutation() {
        let t = json!({
            "product": [
                { "arity": 1, "entries": [{ "k": [0], "num": "1" }, { "k": [1], "num": "q^-1", "den_factors": [["one_minus_q", 1]] }] },
                { "builtin": "whitehead" }
            ],
            "permutation": [1, 0, 2]
        });
        let table = parse_table(&t, "").unwrap();
        assert_eq!(table.components_of(0), vec![1]);
        let j = table_to_json(&table);
        assert_eq!(parse_table(&j, "").unwrap(), table);
        assert_eq!(j["permutation"], json!([1, 0, 2]));
    }
}
