//! Generating sets for the clones that appear as stability bounds, their
//! upper covers, and the known stability of the rank-2 clonoids.

use serde::Serialize;

use crate::bf_core::{BoolFn, NamedClass};
use crate::error::{Error, Result};

/// A clone given by generators, together with the class it should equal.
#[derive(Debug, Clone, Serialize)]
pub struct ClonePreset {
    pub name: String,
    pub generators: Vec<BoolFn>,
    pub predicate: NamedClass,
}

fn f(table: &str) -> BoolFn {
    table.parse().expect("preset table")
}

fn th(n: usize, t: usize) -> BoolFn {
    BoolFn::threshold(n, t).expect("preset threshold")
}

/// Splits `U2` into `("U", Some(2))`; names without digits give `None`.
fn split_rank(name: &str) -> (&str, Option<usize>) {
    match name.find(|c: char| c.is_ascii_digit()) {
        Some(pos) => (&name[..pos], name[pos..].parse().ok()),
        None => (name, None),
    }
}

/// Looks up a preset by clone name, such as `OX`, `M`, or `TcU3`.
pub fn preset(name: &str) -> Result<ClonePreset> {
    let name = name.strip_prefix("cl").unwrap_or(name);
    let (base, rank) = split_rank(name);
    let unknown = || Error::UnknownClass(format!("no clone preset named {name}"));
    let generators: Vec<BoolFn> = match (base, rank) {
        ("All", None) => vec![f("2:8"), f("1:1")],
        ("OX", None) => vec![f("2:8"), f("2:6")],
        ("XI", None) => vec![f("2:e"), f("2:9")],
        // ∨ and x ∧ (y ↔ z)
        ("OI", None) => vec![f("2:e"), f("3:90")],
        ("M", None) => vec![f("2:8"), f("2:e"), f("1:0"), f("1:3")],
        ("Mo", None) => vec![f("2:8"), f("2:e"), f("1:0")],
        ("Mi", None) => vec![f("2:8"), f("2:e"), f("1:3")],
        ("Mc", None) => vec![f("2:8"), f("2:e")],
        // maj(x, ¬y, ¬z)
        ("S", None) => vec![BoolFn::from_fn(3, |r| {
            let (x, y, z) = (r >> 2 & 1, !r >> 1 & 1, !r & 1);
            x + y + z >= 2
        })?],
        ("Sc", None) => vec![th(3, 2), f("3:96")],
        ("SM", None) => vec![th(3, 2)],
        ("Ic", None) => vec![],
        ("U", Some(k)) if k >= 1 => vec![th(k + 1, k), f("2:4")],
        // x ∧ (y → z)
        ("TcU", Some(k)) if k >= 1 => vec![th(k + 1, k), f("3:b0")],
        ("MU", Some(k)) if k >= 1 => vec![th(k + 1, k), f("1:0")],
        // x ∧ (y ∨ z)
        ("McU", Some(2)) => vec![th(3, 2), f("3:e0")],
        ("McU", Some(k)) if k >= 3 => vec![th(k + 1, k)],
        ("W", Some(k)) if k >= 1 => vec![th(k + 1, 2), f("2:d")],
        // x ∨ (y ↛ z)
        ("TcW", Some(k)) if k >= 1 => vec![th(k + 1, 2), f("3:f4")],
        ("MW", Some(k)) if k >= 1 => vec![th(k + 1, 2), f("1:3")],
        // x ∨ (y ∧ z)
        ("McW", Some(2)) => vec![th(3, 2), f("3:f8")],
        ("McW", Some(k)) if k >= 3 => vec![th(k + 1, 2)],
        _ => return Err(unknown()),
    };
    let predicate: NamedClass = name.parse().map_err(|_| unknown())?;
    Ok(ClonePreset {
        name: name.to_string(),
        generators,
        predicate,
    })
}

/// Every preset, with the ranked families instantiated at rank `k`.
pub fn all_presets(k: usize) -> Vec<ClonePreset> {
    let mut names: Vec<String> = ["All", "OX", "XI", "OI", "M", "Mo", "Mi", "Mc", "S", "Sc", "SM", "Ic"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for base in ["U", "TcU", "MU", "McU", "W", "TcW", "MW", "McW"] {
        names.push(format!("{base}{k}"));
    }
    names.iter().map(|n| preset(n).expect("preset table")).collect()
}

/// Immediate upper covers, within the clones used as stability bounds, of
/// each clone bounding a rank-2 clonoid.
pub const CLONE_UPPER_COVERS: &[(&str, &[&str])] = &[
    ("All", &[]),
    ("OX", &["All"]),
    ("XI", &["All"]),
    ("M", &["All"]),
    ("S", &["All"]),
    ("OI", &["OX", "XI"]),
    ("Mo", &["M", "OX"]),
    ("Mi", &["M", "XI"]),
    ("Mc", &["Mo", "Mi", "OI"]),
    ("Sc", &["S", "OI"]),
    ("SM", &["Sc", "McU2", "McW2"]),
    ("U2", &["OX"]),
    ("TcU2", &["U2", "OI"]),
    ("MU2", &["U2", "Mo"]),
    ("McU2", &["TcU2", "MU2", "Mc"]),
    ("W2", &["XI"]),
    ("TcW2", &["W2", "OI"]),
    ("MW2", &["W2", "Mi"]),
    ("McW2", &["TcW2", "MW2", "Mc"]),
];

pub fn clone_upper_covers(name: &str) -> Result<&'static [&'static str]> {
    CLONE_UPPER_COVERS
        .iter()
        .find(|e| e.0 == name)
        .map(|e| e.1)
        .ok_or_else(|| Error::UnknownClass(format!("no upper covers recorded for {name}")))
}

/// The rank-2 clonoids with the largest clones `C` such that `K C ⊆ K`
/// (right) and `C K ⊆ K` (left).
pub const KNOWN_STABILITY: &[(&str, &str, &str)] = &[
    ("All", "All", "All"),
    ("Eiio", "OI", "M"),
    ("Eioi", "OI", "M"),
    ("Eiii", "OI", "U2"),
    ("Eq", "OI", "All"),
    ("OXC", "OX", "M"),
    ("XOC", "XI", "M"),
    ("IXC", "OX", "M"),
    ("XIC", "XI", "M"),
    ("OX", "OX", "OX"),
    ("XO", "XI", "OX"),
    ("IX", "OX", "XI"),
    ("XI", "XI", "XI"),
    ("OOC", "OI", "M"),
    ("IIC", "OI", "M"),
    ("OO", "OI", "OX"),
    ("II", "OI", "XI"),
    ("OIC", "OI", "M"),
    ("IOC", "OI", "M"),
    ("OICO", "OI", "Mo"),
    ("IOCI", "OI", "Mi"),
    ("OICI", "OI", "Mi"),
    ("IOCO", "OI", "Mo"),
    ("OI", "OI", "OI"),
    ("IO", "OI", "OI"),
    ("Smin", "S", "U2"),
    ("SminOX", "Sc", "U2"),
    ("SminXO", "Sc", "U2"),
    ("SminOICO", "Sc", "MU2"),
    ("SminIOCO", "Sc", "MU2"),
    ("SminOI", "Sc", "TcU2"),
    ("SminIO", "Sc", "TcU2"),
    ("SminOO", "Sc", "U2"),
    ("M", "M", "M"),
    ("Mneg", "M", "M"),
    ("Mo", "Mo", "Mo"),
    ("Mineg", "Mi", "Mo"),
    ("Mi", "Mi", "Mi"),
    ("Moneg", "Mo", "Mi"),
    ("Mc", "Mc", "Mc"),
    ("Mcneg", "Mc", "Mc"),
    ("U2", "U2", "U2"),
    ("Wneg2", "W2", "U2"),
    ("TcUCO2", "TcU2", "MU2"),
    ("TcWnegCO2", "TcW2", "MU2"),
    ("TcU2", "TcU2", "TcU2"),
    ("TcWneg2", "TcW2", "TcU2"),
    ("MU2", "MU2", "MU2"),
    ("MWneg2", "MW2", "MU2"),
    ("McU2", "McU2", "McU2"),
    ("McWneg2", "McW2", "McU2"),
    ("UOO2", "TcU2", "U2"),
    ("WnegOO2", "TcW2", "U2"),
    ("UWneg2", "SM", "U2"),
    ("Refl", "S", "All"),
    ("ReflOOC", "Sc", "M"),
    ("ReflIIC", "Sc", "M"),
    ("ReflOO", "Sc", "OX"),
    ("ReflII", "Sc", "XI"),
    ("Vak", "All", "All"),
    ("Vako", "All", "OX"),
    ("Vaki", "All", "XI"),
    ("Empty", "All", "All"),
];

/// Named functions usable as generators on the command line, e.g. `and,neg`.
pub fn parse_generators(list: &str) -> Result<Vec<BoolFn>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(crate::bf_core::parse_fn)
        .collect()
}
