//! Family catalog: a line-oriented text format, one weighted hypersurface
//! family per record. Ships with the three surfaces the certification
//! pipeline targets.
//!
//! Format: `NAME W0,W1,W2,W3 DEGREE [quasi-smooth]`, `#` starts a comment.

use crate::error::{Error, Result};
use crate::wps::WeightedFamily;

/// Text of the built-in catalog.
pub const BUILTIN_CATALOG: &str = include_str!("../data/catalog.txt");

/// Parses a catalog document. Malformed records fail with their line number.
pub fn parse_catalog(text: &str) -> Result<Vec<WeightedFamily>> {
    let mut families = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let record = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if record.is_empty() {
            continue;
        }
        families.push(parse_record(record, line)?);
    }
    Ok(families)
}

fn parse_record(record: &str, line: usize) -> Result<WeightedFamily> {
    let err = |reason: &str| Error::Catalog {
        line,
        reason: reason.to_string(),
    };
    let mut fields = record.split_whitespace();
    let name = fields.next().ok_or_else(|| err("missing name"))?;
    let weights_field = fields.next().ok_or_else(|| err("missing weights"))?;
    let degree_field = fields.next().ok_or_else(|| err("missing degree"))?;
    let flag = fields.next();
    if fields.next().is_some() {
        return Err(err("trailing fields"));
    }

    let parts: Vec<&str> = weights_field.split(',').collect();
    if parts.len() != 4 {
        return Err(err("weights must be four comma-separated integers"));
    }
    let mut weights = [0u64; 4];
    for (slot, part) in weights.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| err(&format!("bad weight `{part}`")))?;
    }
    let degree: u64 = degree_field
        .parse()
        .map_err(|_| err(&format!("bad degree `{degree_field}`")))?;
    let quasi_smooth = match flag {
        None => false,
        Some("quasi-smooth") => true,
        Some(other) => return Err(err(&format!("unknown flag `{other}`"))),
    };
    WeightedFamily::new(name, weights, degree, quasi_smooth)
        .map_err(|e| err(&e.to_string()))
}

/// The built-in families (X30, X36, X50).
pub fn builtin_families() -> Vec<WeightedFamily> {
    parse_catalog(BUILTIN_CATALOG).expect("built-in catalog parses")
}

/// Looks a family up by name, case-sensitively.
pub fn find_family<'a>(families: &'a [WeightedFamily], name: &str) -> Option<&'a WeightedFamily> {
    families.iter().find(|f| f.name == name)
}
