//! Browser demo. Three operations are exported to JavaScript; each has a
//! plain Rust twin returning `Result<String, Error>` so it can be tested
//! natively.

use dybkit::bialgebra::{face_weights, star_triangular_check};
use dybkit::dyb::{check_dyb_map, classify};
use dybkit::dynset::DynSet;
use dybkit::ph::{sigma_from_ternary, LeftQuasigroup, TernaryOp};
use dybkit::report::render_report;
use dybkit::search::{census_ternary, search_ternary, Filter, SearchSpec};
use dybkit::Error;
use wasm_bindgen::prelude::*;

/// Largest size the page will search; n = 4 takes too long in a tab.
pub const DEMO_MAX_N: usize = 3;

/// Reads a table written as `n³` digits, e.g. `01101001`; spaces are ignored.
pub fn parse_digits(text: &str) -> Result<TernaryOp, Error> {
    let digits: Vec<usize> = text
        .chars()
        .filter(|c| !c.is_whitespace() && *c != ',')
        .map(|c| {
            c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse {
                path: "table".into(),
                position: format!("{c:?}"),
                message: "expected decimal digits".into(),
            })
        })
        .collect::<Result<_, _>>()?;
    let n = (1..=9).find(|n| n * n * n == digits.len()).ok_or_else(|| Error::Parse {
        path: "table".into(),
        position: format!("{} digits", digits.len()),
        message: "length must be a cube: 1, 8, 27 or 64".into(),
    })?;
    TernaryOp::new(n, digits)
}

fn carrier(name: &str, n: usize) -> Result<DynSet, Error> {
    match name {
        "K" => DynSet::terminal(n),
        "cyclic" => Ok(LeftQuasigroup::cyclic(n).dynset()),
        other => Err(Error::Parse {
            path: "carrier".into(),
            position: other.into(),
            message: "expected K or cyclic".into(),
        }),
    }
}

/// Builds σ from the table on the chosen carrier and reports the check,
/// the flags and, when σ is invertible, the face-model summary.
pub fn verify_table_text(table: &str, carrier_name: &str) -> Result<String, Error> {
    let t = parse_digits(table)?;
    let s = sigma_from_ternary(&carrier(carrier_name, t.n())?, &t)?;
    let report = check_dyb_map(&s);
    let mut out = render_report(&report);
    if report.passed {
        out.push_str(&render_report(&classify(&s)?));
        let star = star_triangular_check(&s);
        out.push_str(&render_report(&star));
        let face = face_weights(&s)?;
        out.push_str(&format!("face weights: {} nonzero on {} pairs\n", face.weights().len(), face.pairs().len()));
    }
    Ok(out)
}

fn demo_spec(n: usize, filters: &str) -> Result<SearchSpec, Error> {
    if n > DEMO_MAX_N {
        return Err(Error::SizeLimit(format!("the demo searches n ≤ {DEMO_MAX_N}")));
    }
    let mut spec = SearchSpec::new(n);
    for f in filters.split(',').filter(|f| !f.trim().is_empty()) {
        spec = spec.filter(f.parse::<Filter>()?);
    }
    Ok(spec)
}

/// Raw and orbit counts of valid tables of size `n`.
pub fn census_text(n: usize, filters: &str) -> Result<String, Error> {
    Ok(render_report(&census_ternary(&demo_spec(n, filters)?)?))
}

/// Up to `limit` orbit representatives, one digit string per line.
pub fn list_text(n: usize, filters: &str, limit: usize) -> Result<String, Error> {
    let spec = demo_spec(n, filters)?.reduced().limit(limit);
    let tables = search_ternary(&spec)?;
    Ok(tables
        .iter()
        .map(|t| t.table().iter().map(usize::to_string).collect::<String>() + "\n")
        .collect())
}

fn js(r: Result<String, Error>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&format!("{} ({})", e, e.code())))
}

#[wasm_bindgen]
pub fn verify_table(table: &str, carrier: &str) -> Result<String, JsError> {
    js(verify_table_text(table, carrier))
}

#[wasm_bindgen]
pub fn census(n: usize, filters: &str) -> Result<String, JsError> {
    js(census_text(n, filters))
}

#[wasm_bindgen]
pub fn list_tables(n: usize, filters: &str, limit: usize) -> Result<String, JsError> {
    js(list_text(n, filters, limit))
}
