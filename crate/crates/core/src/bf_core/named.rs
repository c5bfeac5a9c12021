//! Registry of named Boolean functions.
//!
//! The functions with at most three true points are given by their true-point
//! lists; together they cover every class of the minorant-minor poset on
//! functions with at most three true points.

use serde::Serialize;

use super::{BoolFn, TuplePoint};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct NamedFunction {
    pub name: &'static str,
    /// Conventional symbol used in drawings.
    pub symbol: &'static str,
    pub arity: usize,
    pub table: BoolFn,
    pub definition: String,
}

/// (name, symbol, true points); arity is the tuple length.
const BY_TRUE_POINTS: &[(&str, &str, usize, &[&str])] = &[
    ("0", "0", 1, &[]),
    ("id", "id", 1, &["1"]),
    ("neg", "¬", 1, &["0"]),
    ("nimp", "↛", 2, &["10"]),
    ("1", "1", 1, &["1", "0"]),
    ("plus", "+", 2, &["01", "10"]),
    ("lambda30", "λ30", 3, &["001", "010"]),
    ("lambda31", "λ31", 3, &["110", "101"]),
    ("or", "∨", 2, &["11", "01", "10"]),
    ("nand", "↑", 2, &["00", "01", "10"]),
    ("Gamma0", "Γ0", 3, &["000", "110", "101"]),
    ("Gamma1", "Γ1", 3, &["111", "001", "010"]),
    ("Gamma01", "Γ01", 4, &["1001", "0111", "0010"]),
    ("delta0", "δ0", 3, &["110", "101", "011"]),
    ("delta0_0", "δ0⁰", 4, &["1100", "1010", "0110"]),
    ("delta0_1", "δ0¹", 4, &["1101", "1011", "0111"]),
    ("delta0p", "δ0⁺", 4, &["1101", "1010", "0110"]),
    ("delta0_0p", "δ0⁰⁺", 5, &["11010", "10100", "01100"]),
    ("lambda10", "λ10", 5, &["10011", "01101", "00110"]),
    ("lambda10_0", "λ10⁰", 6, &["100110", "011010", "001100"]),
    ("delta1", "δ1", 3, &["001", "010", "100"]),
    ("delta1_0", "δ1⁰", 4, &["0010", "0100", "1000"]),
    ("delta1_1", "δ1¹", 4, &["0011", "0101", "1001"]),
    ("delta1p", "δ1⁺", 4, &["0010", "0101", "1001"]),
    ("delta1_1p", "δ1¹⁺", 5, &["00101", "01011", "10011"]),
    ("lambda11", "λ11", 5, &["10001", "01010", "00111"]),
    ("lambda11_1", "λ11¹", 6, &["100011", "010101", "001111"]),
    ("lambda2", "λ2", 6, &["100011", "010101", "001110"]),
    ("lambda2_0", "λ2⁰", 7, &["1000110", "0101010", "0011100"]),
    ("lambda2_1", "λ2¹", 7, &["1000111", "0101011", "0011101"]),
    ("A0", "A0", 3, &["110", "100", "010"]),
    ("A0p", "A0⁺", 4, &["1110", "0100", "0010"]),
    ("A1", "A1", 3, &["001", "011", "101"]),
    ("A1p", "A1⁺", 4, &["0001", "1011", "1101"]),
];

/// Further common functions given by truth table.
const BY_TABLE: &[(&str, &str, &str, &str)] = &[
    ("and", "∧", "2:8", "x ∧ y"),
    ("iff", "↔", "2:9", "x ↔ y"),
    ("impl", "→", "2:d", "x → y"),
    ("nor", "↓", "2:1", "¬(x ∨ y)"),
    ("pr1", "pr1", "2:c", "first of two arguments"),
    ("pr2", "pr2", "2:a", "second of two arguments"),
    ("mu", "μ", "3:e8", "majority of three"),
    ("oplus3", "⊕3", "3:96", "x ⊕ y ⊕ z"),
];

/// Names of the functions whose classes make up the poset for at most three
/// true points, in listing order.
pub fn three_point_names() -> impl Iterator<Item = &'static str> {
    BY_TRUE_POINTS.iter().map(|e| e.0)
}

fn build_from_points(arity: usize, points: &[&str]) -> BoolFn {
    let pts: Vec<TuplePoint> = points.iter().map(|p| p.parse().expect("registry tuple")).collect();
    BoolFn::from_true_points(arity, &pts).expect("registry function")
}

pub fn named_functions() -> Vec<NamedFunction> {
    let mut out = Vec::new();
    for &(name, symbol, arity, points) in BY_TRUE_POINTS {
        let definition = if points.is_empty() {
            "no true points".to_string()
        } else {
            format!("true points {}", points.join(", "))
        };
        out.push(NamedFunction {
            name,
            symbol,
            arity,
            table: build_from_points(arity, points),
            definition,
        });
    }
    for &(name, symbol, table, definition) in BY_TABLE {
        let table: BoolFn = table.parse().expect("registry table");
        out.push(NamedFunction {
            name,
            symbol,
            arity: table.arity(),
            table,
            definition: definition.to_string(),
        });
    }
    out
}

/// Looks up a function by registry name. Also accepts `thN_T` for thresholds.
pub fn named_fn(name: &str) -> Result<BoolFn> {
    if let Some(&(_, _, arity, points)) = BY_TRUE_POINTS.iter().find(|e| e.0 == name) {
        return Ok(build_from_points(arity, points));
    }
    if let Some(&(_, _, table, _)) = BY_TABLE.iter().find(|e| e.0 == name) {
        return table.parse();
    }
    if let Some(rest) = name.strip_prefix("th") {
        if let Some((n, t)) = rest.split_once('_') {
            if let (Ok(n), Ok(t)) = (n.parse(), t.parse()) {
                return BoolFn::threshold(n, t);
            }
        }
    }
    Err(Error::UnknownFunction(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_examples() {
        assert_eq!(named_fn("lambda30").unwrap().to_string(), "3:6");
        assert_eq!(named_fn("plus").unwrap().to_string(), "2:6");
        assert_eq!(named_fn("delta1").unwrap(), BoolFn::from_indices(3, [1, 2, 4]).unwrap());
        assert_eq!(named_fn("1").unwrap().to_string(), "1:3");
        assert_eq!(named_fn("or").unwrap().to_string(), "2:e");
        assert_eq!(named_fn("nimp").unwrap().to_string(), "2:4");
        assert_eq!(named_fn("th3_2").unwrap(), named_fn("mu").unwrap());
        assert!(matches!(named_fn("zeta"), Err(Error::UnknownFunction(_))));
    }

    #[test]
    fn three_point_listing_is_complete() {
        assert_eq!(three_point_names().count(), 34);
        let names: Vec<_> = named_functions().iter().map(|f| f.name).collect();
        let mut dedup = names.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), names.len());
        for f in named_functions().iter().take(34) {
            assert!(f.table.count_true() <= 3);
        }
    }
}
