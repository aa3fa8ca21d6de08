//! Serialization of results: JSON documents with canonical key order
//! (graded-lex subsets), CSV rows, and LaTeX layouts.
//!
//! Every number is rendered exactly: rationals as `p/q` (just `p` when the
//! denominator is 1), polynomials either as single strings (`2t`, `16`) or
//! as `{"t_power": k, "value": "p/q"}` term lists. No value ever passes
//! through floating point.

use crate::error::{Error, Result};
use crate::eulerian::{MixedEulerian, VolumePolynomial};
use crate::operators::{StructureConstants, SubsetMatrix, SuiteReport};
use crate::rootsys::{NodeSet, RootSystem};
use crate::{Rat, TPoly};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};
use std::str::FromStr;

pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    Rat::from_str(s.trim())
        .map_err(|e| Error::Malformed(format!("invalid rational '{s}': {e}")))
}

/// A polynomial as a JSON list of `{"t_power": k, "value": "p/q"}` terms.
pub fn poly_to_json(p: &TPoly) -> Value {
    Value::Array(
        p.terms()
            .map(|(power, coeff)| json!({"t_power": power, "value": format_rat(coeff)}))
            .collect(),
    )
}

pub fn poly_from_json(v: &Value) -> Result<TPoly> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::Malformed("polynomial must be a JSON list".into()))?;
    let mut out = TPoly::zero();
    for item in items {
        let power = item
            .get("t_power")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Malformed("term is missing \"t_power\"".into()))?;
        let value = item
            .get("value")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Malformed("term is missing \"value\"".into()))?;
        out = out + TPoly::monomial(power as u32, parse_rat(value)?);
    }
    Ok(out)
}

fn subset_key(set: NodeSet) -> String {
    set.to_string()
}

/// The bare terms map, e.g. `{"{1,2}": "2t", "{1,2,3}": "16"}`.
pub fn structure_constants_json(sc: &StructureConstants) -> Value {
    let mut map = Map::new();
    for (k_set, poly) in &sc.terms {
        map.insert(subset_key(*k_set), Value::String(poly.to_string()));
    }
    Value::Object(map)
}

pub fn structure_constants_csv(sc: &StructureConstants) -> String {
    let mut out = String::from("row_subset,col_subset,t_power,value\n");
    for (k_set, poly) in &sc.terms {
        push_csv_terms(&mut out, sc.j_set, *k_set, poly);
    }
    out
}

fn push_csv_terms(out: &mut String, row: NodeSet, col: NodeSet, poly: &TPoly) {
    for (power, coeff) in poly.terms() {
        out.push_str(&format!(
            "\"{}\",\"{}\",{},{}\n",
            subset_key(row),
            subset_key(col),
            power,
            format_rat(coeff)
        ));
    }
}

pub fn latex_subset(set: NodeSet) -> String {
    if set.is_empty() {
        return r"\emptyset".into();
    }
    let labels: Vec<String> = set.iter().map(|l| l.to_string()).collect();
    format!(r"\{{{}\}}", labels.join(","))
}

pub fn latex_rat(r: &Rat) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let abs = r.abs();
    if abs.denom().is_one() {
        format!("{sign}{}", abs.numer())
    } else {
        format!(r"{sign}\frac{{{}}}{{{}}}", abs.numer(), abs.denom())
    }
}

pub fn latex_poly(p: &TPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (power, coeff)) in p.terms().enumerate() {
        if idx > 0 {
            out.push_str(if coeff.is_negative() { " - " } else { " + " });
        } else if coeff.is_negative() {
            out.push('-');
        }
        let abs = coeff.abs();
        if power == 0 || !abs.is_one() {
            out.push_str(&latex_rat(&abs));
        }
        match power {
            0 => {}
            1 => out.push('t'),
            _ => out.push_str(&format!("t^{{{power}}}")),
        }
    }
    out
}

/// The product expansion as a LaTeX sum over basis classes.
pub fn structure_constants_latex(sc: &StructureConstants) -> String {
    let symbol = match sc.basis {
        crate::operators::Basis::Monomial => r"\varpi",
        crate::operators::Basis::Peterson => "p",
    };
    if sc.terms.is_empty() {
        return "0".into();
    }
    sc.terms
        .iter()
        .map(|(k_set, poly)| {
            let coeff = match poly.single_monomial() {
                Some((0, c)) if c.is_one() => String::new(),
                _ => format!(r"{}\,", latex_poly(poly)),
            };
            format!("{coeff}{symbol}_{{{}}}", latex_subset(*k_set))
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Rows as one JSON object per row subset, in graded-lex order both ways.
pub fn subset_matrix_json(m: &SubsetMatrix) -> Value {
    let mut rows = Map::new();
    for (j_set, row) in &m.rows {
        let mut cols = Map::new();
        for (k_set, poly) in row {
            cols.insert(subset_key(*k_set), Value::String(poly.to_string()));
        }
        rows.insert(subset_key(*j_set), Value::Object(cols));
    }
    json!({
        "node": m.node,
        "equivariant": m.equivariant,
        "rows": Value::Object(rows),
    })
}

pub fn subset_matrix_csv(m: &SubsetMatrix) -> String {
    let mut out = String::from("row_subset,col_subset,t_power,value\n");
    for (j_set, row) in &m.rows {
        for (k_set, poly) in row {
            push_csv_terms(&mut out, *j_set, *k_set, poly);
        }
    }
    out
}

/// A bordered array in graded-lex order, matching the printed layout of the
/// generator matrix for a rank-3 system (8 x 8 plus labels).
pub fn subset_matrix_latex(m: &SubsetMatrix) -> String {
    let labels: Vec<NodeSet> = m.rows.iter().map(|(j, _)| *j).collect();
    let mut out = String::new();
    out.push_str(&format!(r"\begin{{array}}{{c|{}}}", "c".repeat(labels.len())));
    out.push('\n');
    for k_set in &labels {
        out.push_str(&format!(" & {}", latex_subset(*k_set)));
    }
    out.push_str(" \\\\\n\\hline\n");
    for (j_set, row) in &m.rows {
        out.push_str(&latex_subset(*j_set));
        for k_set in &labels {
            let entry = row.get(k_set).map_or_else(|| "0".into(), latex_poly);
            out.push_str(&format!(" & {entry}"));
        }
        out.push_str(" \\\\\n");
    }
    out.push_str("\\end{array}\n");
    out
}

pub fn mixed_eulerian_json(m: &MixedEulerian) -> Value {
    json!({
        "composition": m.composition.parts(),
        "prefactor": m.prefactor.to_string(),
        "raw_entry": format_rat(&m.raw_entry),
        "value": m.value.to_string(),
    })
}

fn composition_key(parts: &[usize]) -> String {
    parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

pub fn volume_json(v: &VolumePolynomial) -> Value {
    let mut map = Map::new();
    for (comp, value) in &v.coefficients {
        map.insert(composition_key(comp.parts()), Value::String(value.to_string()));
    }
    Value::Object(map)
}

pub fn volume_csv(v: &VolumePolynomial) -> String {
    let mut out = String::from("composition,value\n");
    for (comp, value) in &v.coefficients {
        out.push_str(&format!("\"{}\",{}\n", composition_key(comp.parts()), value));
    }
    out
}

pub fn volume_latex(v: &VolumePolynomial) -> String {
    let mut out = String::from("\\begin{array}{c|c}\nc & A_c \\\\\n\\hline\n");
    for (comp, value) in &v.coefficients {
        out.push_str(&format!("({}) & {} \\\\\n", composition_key(comp.parts()), value));
    }
    out.push_str("\\end{array}\n");
    out
}

/// Summary of the root-system data the `cartan` command reports.
pub fn root_system_json(rs: &RootSystem) -> Result<Value> {
    let full = rs.full_set();
    let components = rs.components(full)?;
    let inverse = rs.inverse(full)?;
    let inverse_rows: Vec<Value> = (0..inverse.n_rows())
        .map(|i| {
            Value::Array(inverse.row(i).iter().map(|r| Value::String(format_rat(r))).collect())
        })
        .collect();
    let mut exps = Map::new();
    let mut coxeter = Map::new();
    for &comp in components.iter() {
        exps.insert(
            subset_key(comp),
            Value::Array(
                rs.exponents(comp)?.iter().map(|&m| Value::Number(m.into())).collect(),
            ),
        );
        coxeter.insert(subset_key(comp), Value::Number(rs.coxeter_number(comp)?.into()));
    }
    Ok(json!({
        "rank": rs.rank(),
        "cartan": rs.cartan().entries(),
        "components": components.iter().map(|c| subset_key(*c)).collect::<Vec<_>>(),
        "det": rs.det(full)?.to_string(),
        "weyl_order": rs.weyl_order(full)?.to_string(),
        "inverse": Value::Array(inverse_rows),
        "exponents": Value::Object(exps),
        "coxeter_numbers": Value::Object(coxeter),
    }))
}

pub fn suite_report_json(r: &SuiteReport) -> Value {
    json!({
        "suite": r.suite,
        "cases": r.cases,
        "passed": r.passed(),
        "failures": r.failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use crate::operators::structure_constants_c;

    fn ns(labels: &[usize]) -> NodeSet {
        NodeSet::from_labels(labels.iter().copied())
    }

    #[test]
    fn rational_strings() {
        assert_eq!(format_rat(&rat(1, 2)), "1/2");
        assert_eq!(format_rat(&rat_int(16)), "16");
        assert_eq!(format_rat(&rat(-4, 3)), "-4/3");
        assert_eq!(parse_rat("18/35").unwrap(), rat(18, 35));
        assert_eq!(parse_rat("7").unwrap(), rat_int(7));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn poly_json_round_trip() {
        let p = TPoly::monomial(1, rat_int(2)) + TPoly::constant(rat(1, 3));
        let v = poly_to_json(&p);
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"[{"t_power":0,"value":"1/3"},{"t_power":1,"value":"2"}]"#
        );
        assert_eq!(poly_from_json(&v).unwrap(), p);
        assert_eq!(poly_from_json(&json!([])).unwrap(), TPoly::zero());
        assert!(poly_from_json(&json!({"t_power": 1})).is_err());
    }

    #[test]
    fn sc_document_matches_contract() {
        let rs = RootSystem::from_type("B3").unwrap();
        let c = structure_constants_c(&rs, ns(&[2]), ns(&[1, 2]), true).unwrap();
        let doc = structure_constants_json(&c);
        assert_eq!(
            serde_json::to_string(&doc).unwrap(),
            r#"{"{1,2}":"2t","{1,2,3}":"16"}"#
        );
        let csv = structure_constants_csv(&c);
        assert_eq!(
            csv,
            "row_subset,col_subset,t_power,value\n\
             \"{1,2}\",\"{1,2}\",1,2\n\
             \"{1,2}\",\"{1,2,3}\",0,16\n"
        );
        assert_eq!(
            structure_constants_latex(&c),
            r"2t\,p_{\{1,2\}} + 16\,p_{\{1,2,3\}}"
        );
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let rs = RootSystem::from_type("B3").unwrap();
        let c = structure_constants_c(&rs, ns(&[2]), ns(&[1, 2, 3]), true).unwrap();
        let first = serde_json::to_string_pretty(&structure_constants_json(&c)).unwrap();
        let parsed: Value = serde_json::from_str(&first).unwrap();
        let second = serde_json::to_string_pretty(&parsed).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn latex_fragments() {
        assert_eq!(latex_subset(NodeSet::empty()), r"\emptyset");
        assert_eq!(latex_subset(ns(&[1, 3])), r"\{1,3\}");
        assert_eq!(latex_rat(&rat(4, 3)), r"\frac{4}{3}");
        assert_eq!(latex_rat(&rat(-1, 2)), r"-\frac{1}{2}");
        assert_eq!(latex_rat(&rat_int(5)), "5");
        assert_eq!(latex_poly(&TPoly::monomial(1, rat_int(2))), "2t");
        assert_eq!(latex_poly(&TPoly::monomial(1, rat(4, 3))), r"\frac{4}{3}t");
        assert_eq!(latex_poly(&TPoly::zero()), "0");
    }

    #[test]
    fn root_system_document() {
        let rs = RootSystem::from_type("B3").unwrap();
        let doc = root_system_json(&rs).unwrap();
        assert_eq!(doc["det"], "2");
        assert_eq!(doc["weyl_order"], "48");
        assert_eq!(doc["inverse"][2][0], "1/2");
        assert_eq!(doc["exponents"]["{1,2,3}"][2], 5);
        assert_eq!(doc["coxeter_numbers"]["{1,2,3}"], 6);
    }
}
