//! Named classes of Boolean functions.
//!
//! Every class is `(property ∩ allowed (f(0), f(1)) pairs) ∪ selected constants`.
//! Pair sets are bitmasks with bit `2·f(0) + f(1)`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::BoolFn;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Props(u16);

impl Props {
    pub const NONE: Props = Props(0);
    pub const MONO: Props = Props(1);
    pub const ANTI: Props = Props(1 << 1);
    pub const SELFDUAL: Props = Props(1 << 2);
    /// No `a` with `f(a) = f(ā) = 1`.
    pub const SMIN: Props = Props(1 << 3);
    /// `f(a) = f(ā)` for all `a`.
    pub const REFL: Props = Props(1 << 4);
    pub const PROJ: Props = Props(1 << 5);
    /// At most `rank` true points always share a coordinate equal to 1.
    pub const TRUE_ONE: Props = Props(1 << 6);
    /// At most `rank` true points always share a coordinate equal to 0.
    pub const TRUE_ZERO: Props = Props(1 << 7);
    /// At most `rank` false points always share a coordinate equal to 0.
    pub const FALSE_ZERO: Props = Props(1 << 8);
    /// At most `rank` false points always share a coordinate equal to 1.
    pub const FALSE_ONE: Props = Props(1 << 9);

    const RANKED: Props = Props(0b1111 << 6);

    pub const fn contains(self, other: Props) -> bool {
        self.0 & other.0 == other.0
    }

    pub const fn intersects(self, other: Props) -> bool {
        self.0 & other.0 != 0
    }

    pub const fn union(self, other: Props) -> Props {
        Props(self.0 | other.0)
    }

    fn inner_negated(self) -> Option<Props> {
        if self.contains(Props::PROJ) {
            return None;
        }
        let swaps = [
            (Props::MONO, Props::ANTI),
            (Props::TRUE_ONE, Props::TRUE_ZERO),
            (Props::FALSE_ZERO, Props::FALSE_ONE),
        ];
        let mut out = Props(self.0 & (Props::SELFDUAL.0 | Props::SMIN.0 | Props::REFL.0));
        for (a, b) in swaps {
            if self.contains(a) {
                out = out.union(b);
            }
            if self.contains(b) {
                out = out.union(a);
            }
        }
        Some(out)
    }
}

pub const P00: u8 = 1;
pub const P01: u8 = 2;
pub const P10: u8 = 4;
pub const P11: u8 = 8;
pub const ANY_PAIR: u8 = 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ClassSpec {
    pub props: Props,
    /// Rank for the separating properties; ignored otherwise.
    pub rank: u8,
    pub pairs: u8,
    /// Bit 0: constant 0 included, bit 1: constant 1 included.
    pub consts: u8,
}

impl ClassSpec {
    pub fn member(&self, f: &BoolFn) -> bool {
        if f.is_constant() {
            let bit = if f.is_zero() { 1 } else { 2 };
            if self.consts & bit != 0 {
                return true;
            }
        }
        let pair = (f.at_zero() as u8) * 2 + f.at_one() as u8;
        if self.pairs & (1 << pair) == 0 {
            return false;
        }
        let p = self.props;
        let k = self.rank as usize;
        (!p.contains(Props::MONO) || is_monotone(f))
            && (!p.contains(Props::ANTI) || is_monotone(&f.inner_negation()))
            && (!p.contains(Props::SELFDUAL) || *f == f.dual())
            && (!p.contains(Props::SMIN) || f.and(&f.inner_negation()).is_ok_and(|g| g.is_zero()))
            && (!p.contains(Props::REFL) || *f == f.inner_negation())
            && (!p.contains(Props::PROJ) || is_projection(f))
            && (!p.contains(Props::TRUE_ONE) || separating(f, true, true, k))
            && (!p.contains(Props::TRUE_ZERO) || separating(f, true, false, k))
            && (!p.contains(Props::FALSE_ZERO) || separating(f, false, false, k))
            && (!p.contains(Props::FALSE_ONE) || separating(f, false, true, k))
    }

    pub fn inner_negated(&self) -> Option<ClassSpec> {
        let swap = |m: u8| (m & (P00 | P11)) | ((m & P01) << 1) | ((m & P10) >> 1);
        Some(ClassSpec {
            props: self.props.inner_negated()?,
            rank: self.rank,
            pairs: swap(self.pairs),
            consts: self.consts,
        })
    }
}

pub fn is_monotone(f: &BoolFn) -> bool {
    let n = f.arity();
    (0..n).all(|b| {
        let bit = 1usize << b;
        (0..f.rows()).all(|i| i & bit != 0 || !f.get(i) || f.get(i | bit))
    })
}

pub fn is_projection(f: &BoolFn) -> bool {
    (0..f.arity()).any(|i| BoolFn::projection(f.arity(), i).is_ok_and(|p| p == *f))
}

/// Checks that every set of at most `k` true (or false) points has a common
/// coordinate equal to `common`.
pub fn separating(f: &BoolFn, on_true: bool, common: bool, k: usize) -> bool {
    let n = f.arity();
    let full = (1u32 << n) - 1;
    // Work in the complemented space when looking for a common 0.
    let pts: Vec<u32> = (0..f.rows())
        .filter(|&i| f.get(i) == on_true)
        .map(|i| if common { i as u32 } else { full ^ i as u32 })
        .collect();
    if pts.contains(&0) {
        return false;
    }
    let k = k.min(pts.len());
    fn dfs(pts: &[u32], start: usize, left: usize, acc: u32) -> bool {
        if left == 0 {
            return true;
        }
        for j in start..pts.len() {
            let a = acc & pts[j];
            if a == 0 || !dfs(pts, j + 1, left - 1, a) {
                return false;
            }
        }
        true
    }
    k <= 1 || dfs(&pts, 0, k, u32::MAX)
}

struct Entry {
    name: &'static str,
    props: Props,
    pairs: u8,
    consts: u8,
    definition: &'static str,
}

const fn e(name: &'static str, props: Props, pairs: u8, consts: u8, definition: &'static str) -> Entry {
    Entry {
        name,
        props,
        pairs,
        consts,
        definition,
    }
}

const CONST0: u8 = 1;
const CONST1: u8 = 2;
const CONSTS: u8 = 3;

use Props as P;

const REGISTRY: &[Entry] = &[
    e("All", P::NONE, ANY_PAIR, 0, "all functions"),
    e("Empty", P::NONE, 0, 0, "no functions"),
    e("Vak", P::NONE, 0, CONSTS, "constant functions"),
    e("Vako", P::NONE, 0, CONST0, "constant 0 functions"),
    e("Vaki", P::NONE, 0, CONST1, "constant 1 functions"),
    e("Eiio", P::NONE, P00 | P01 | P11, 0, "f(0) ≤ f(1)"),
    e("Eioi", P::NONE, P00 | P10 | P11, 0, "f(0) ≥ f(1)"),
    e("Eiii", P::NONE, P00 | P01 | P10, 0, "f(0) = 0 or f(1) = 0"),
    e("Eq", P::NONE, P00 | P11, 0, "f(0) = f(1)"),
    e("OX", P::NONE, P00 | P01, 0, "f(0) = 0"),
    e("XO", P::NONE, P00 | P10, 0, "f(1) = 0"),
    e("IX", P::NONE, P10 | P11, 0, "f(0) = 1"),
    e("XI", P::NONE, P01 | P11, 0, "f(1) = 1"),
    e("OI", P::NONE, P01, 0, "f(0) = 0, f(1) = 1"),
    e("IO", P::NONE, P10, 0, "f(0) = 1, f(1) = 0"),
    e("OO", P::NONE, P00, 0, "f(0) = f(1) = 0"),
    e("II", P::NONE, P11, 0, "f(0) = f(1) = 1"),
    e("OXC", P::NONE, P00 | P01, CONSTS, "f(0) = 0, or constant"),
    e("XOC", P::NONE, P00 | P10, CONSTS, "f(1) = 0, or constant"),
    e("IXC", P::NONE, P10 | P11, CONSTS, "f(0) = 1, or constant"),
    e("XIC", P::NONE, P01 | P11, CONSTS, "f(1) = 1, or constant"),
    e("OOC", P::NONE, P00, CONSTS, "f(0) = f(1) = 0, or constant"),
    e("IIC", P::NONE, P11, CONSTS, "f(0) = f(1) = 1, or constant"),
    e("OIC", P::NONE, P01, CONSTS, "f(0) = 0, f(1) = 1, or constant"),
    e("IOC", P::NONE, P10, CONSTS, "f(0) = 1, f(1) = 0, or constant"),
    e("OICO", P::NONE, P01, CONST0, "f(0) = 0, f(1) = 1, or constant 0"),
    e("OICI", P::NONE, P01, CONST1, "f(0) = 0, f(1) = 1, or constant 1"),
    e("IOCO", P::NONE, P10, CONST0, "f(0) = 1, f(1) = 0, or constant 0"),
    e("IOCI", P::NONE, P10, CONST1, "f(0) = 1, f(1) = 0, or constant 1"),
    e("M", P::MONO, ANY_PAIR, 0, "monotone"),
    e("Mo", P::MONO, P00 | P01, 0, "monotone, f(0) = 0"),
    e("Mi", P::MONO, P01 | P11, 0, "monotone, f(1) = 1"),
    e("Mc", P::MONO, P01, 0, "monotone, f(0) = 0, f(1) = 1"),
    e("Mneg", P::ANTI, ANY_PAIR, 0, "antitone"),
    e("Mineg", P::ANTI, P00 | P10, 0, "antitone, f(1) = 0"),
    e("Moneg", P::ANTI, P10 | P11, 0, "antitone, f(0) = 1"),
    e("Mcneg", P::ANTI, P10, 0, "antitone, f(0) = 1, f(1) = 0"),
    e("S", P::SELFDUAL, ANY_PAIR, 0, "self-dual"),
    e("Sc", P::SELFDUAL, P01, 0, "self-dual, f(0) = 0"),
    e("SM", P::MONO.union(P::SELFDUAL), ANY_PAIR, 0, "self-dual monotone"),
    e("Smin", P::SMIN, ANY_PAIR, 0, "f(a) ∧ f(ā) = 0"),
    e("SminOX", P::SMIN, P00 | P01, 0, "f(a) ∧ f(ā) = 0, f(0) = 0"),
    e("SminXO", P::SMIN, P00 | P10, 0, "f(a) ∧ f(ā) = 0, f(1) = 0"),
    e("SminOO", P::SMIN, P00, 0, "f(a) ∧ f(ā) = 0, f(0) = f(1) = 0"),
    e("SminOI", P::SMIN, P01, 0, "f(a) ∧ f(ā) = 0, f(0) = 0, f(1) = 1"),
    e("SminIO", P::SMIN, P10, 0, "f(a) ∧ f(ā) = 0, f(0) = 1, f(1) = 0"),
    e("SminOICO", P::SMIN, P01, CONST0, "SminOI or constant 0"),
    e("SminIOCO", P::SMIN, P10, CONST0, "SminIO or constant 0"),
    e("Refl", P::REFL, ANY_PAIR, 0, "f(a) = f(ā)"),
    e("ReflOO", P::REFL, P00, 0, "f(a) = f(ā), f(0) = 0"),
    e("ReflII", P::REFL, P11, 0, "f(a) = f(ā), f(0) = 1"),
    e("ReflOOC", P::REFL, P00, CONSTS, "ReflOO or constant"),
    e("ReflIIC", P::REFL, P11, CONSTS, "ReflII or constant"),
    e("Ic", P::PROJ, ANY_PAIR, 0, "projections"),
];

/// Families indexed by a rank `k ≥ 1`, written with the rank as suffix (`U2`).
const RANKED: &[Entry] = &[
    e("U", P::TRUE_ONE, ANY_PAIR, 0, "any k true points share a 1"),
    e("Wneg", P::TRUE_ZERO, ANY_PAIR, 0, "any k true points share a 0"),
    e("W", P::FALSE_ZERO, ANY_PAIR, 0, "any k false points share a 0"),
    e("Wineg", P::FALSE_ONE, ANY_PAIR, 0, "any k false points share a 1"),
    e("TcU", P::TRUE_ONE, P01, 0, "U, f(1) = 1"),
    e("TcUCO", P::TRUE_ONE, P01, CONST0, "TcU or constant 0"),
    e("MU", P::MONO.union(P::TRUE_ONE), ANY_PAIR, 0, "monotone U"),
    e("McU", P::MONO.union(P::TRUE_ONE), P01, 0, "monotone U, f(1) = 1"),
    e("UOO", P::TRUE_ONE, P00, 0, "U, f(1) = 0"),
    e("UWneg", P::TRUE_ONE.union(P::TRUE_ZERO), ANY_PAIR, 0, "U and Wneg"),
    e("TcWneg", P::TRUE_ZERO, P10, 0, "Wneg, f(0) = 1"),
    e("TcWnegCO", P::TRUE_ZERO, P10, CONST0, "TcWneg or constant 0"),
    e("MWneg", P::ANTI.union(P::TRUE_ZERO), ANY_PAIR, 0, "antitone Wneg"),
    e("McWneg", P::ANTI.union(P::TRUE_ZERO), P10, 0, "antitone Wneg, f(0) = 1"),
    e("WnegOO", P::TRUE_ZERO, P00, 0, "Wneg, f(0) = 0"),
    e("TcW", P::FALSE_ZERO, P01, 0, "W, f(0) = 0"),
    e("MW", P::MONO.union(P::FALSE_ZERO), ANY_PAIR, 0, "monotone W"),
    e("McW", P::MONO.union(P::FALSE_ZERO), P01, 0, "monotone W, f(0) = 0"),
    e("TciWineg", P::FALSE_ONE, P10, 0, "Wineg, f(1) = 0"),
    e("MWineg", P::ANTI.union(P::FALSE_ONE), ANY_PAIR, 0, "antitone Wineg"),
    e(
        "McWineg",
        P::ANTI.union(P::FALSE_ONE),
        P10,
        0,
        "antitone Wineg, f(1) = 0",
    ),
];

/// The fixed classes that appear in the enumeration of clonoids besides the
/// `K_k(Θ)` families.
pub const FIXED_CLONOID_CLASSES: [&str; 26] = [
    "Eiio", "Eioi", "Eq", "OXC", "XOC", "IXC", "XIC", "OOC", "OIC", "IOC", "IIC", "OICI", "IOCI", "IX", "XI", "II",
    "M", "Mi", "Mneg", "Moneg", "Refl", "ReflOOC", "ReflIIC", "ReflII", "Vak", "Vaki",
];

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct NamedClass {
    name: String,
    pub spec: ClassSpec,
    pub definition: String,
}

impl NamedClass {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn member(&self, f: &BoolFn) -> bool {
        self.spec.member(f)
    }

    pub fn ranked(base: &str, rank: usize) -> Result<NamedClass> {
        format!("{base}{rank}").parse()
    }

    /// Every unranked class, and every ranked family at the given ranks.
    pub fn registry(ranks: &[usize]) -> Vec<NamedClass> {
        let mut out: Vec<NamedClass> = REGISTRY.iter().map(|e| from_entry(e, 0)).collect();
        for &k in ranks {
            out.extend(RANKED.iter().map(|e| from_entry(e, k)));
        }
        out
    }

    /// The class `{f^n : f ∈ K}`, looked up by its defining properties.
    pub fn inner_negated(&self) -> Result<NamedClass> {
        let target = self
            .spec
            .inner_negated()
            .ok_or_else(|| Error::UnknownClass(format!("inner negation of {}", self.name)))?;
        let rank = self.spec.rank as usize;
        let ranks: Vec<usize> = if rank > 0 { vec![rank] } else { vec![] };
        NamedClass::registry(&ranks)
            .into_iter()
            .find(|c| c.spec == target)
            .ok_or_else(|| Error::UnknownClass(format!("inner negation of {}", self.name)))
    }
}

fn from_entry(e: &Entry, rank: usize) -> NamedClass {
    let ranked = e.props.intersects(Props::RANKED);
    NamedClass {
        name: if ranked {
            format!("{}{rank}", e.name)
        } else {
            e.name.to_string()
        },
        spec: ClassSpec {
            props: e.props,
            rank: if ranked { rank as u8 } else { 0 },
            pairs: e.pairs,
            consts: e.consts,
        },
        definition: if ranked {
            e.definition.replace('k', &rank.to_string())
        } else {
            e.definition.to_string()
        },
    }
}

impl FromStr for NamedClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.strip_prefix("cl").unwrap_or(s);
        if let Some(entry) = REGISTRY.iter().find(|e| e.name == s) {
            return Ok(from_entry(entry, 0));
        }
        let split = s.find(|c: char| c.is_ascii_digit());
        if let Some(pos) = split {
            let (base, digits) = s.split_at(pos);
            if let (Some(entry), Ok(rank)) = (RANKED.iter().find(|e| e.name == base), digits.parse::<usize>()) {
                if (1..=16).contains(&rank) {
                    return Ok(from_entry(entry, rank));
                }
            }
        }
        Err(Error::UnknownClass(s.to_string()))
    }
}

impl fmt::Display for NamedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> BoolFn {
        s.parse().unwrap()
    }

    fn cls(s: &str) -> NamedClass {
        s.parse().unwrap()
    }

    #[test]
    fn membership_examples() {
        assert!(cls("U2").member(&f("3:e8")));
        assert!(!cls("U3").member(&f("3:e8")));
        assert!(!cls("M").member(&f("2:4")));
        assert!(cls("Refl").member(&f("2:6")));
        assert!(!cls("Vaki").member(&f("1:0")));
        assert!(cls("Vako").member(&f("3:0")));
        assert!(cls("SM").member(&f("3:e8")));
        assert!(cls("Ic").member(&f("2:a")));
        assert!(!cls("Ic").member(&f("2:8")));
    }

    #[test]
    fn constant_unions() {
        assert!(cls("OICO").member(&f("2:0")));
        assert!(!cls("OICO").member(&f("2:f")));
        assert!(cls("OICI").member(&f("2:f")));
        assert!(cls("OXC").member(&f("1:3")));
        assert!(!cls("OX").member(&f("1:3")));
    }

    #[test]
    fn separating_ranks() {
        // ∨ has true points 01, 10 with no common 1.
        assert!(!cls("U2").member(&f("2:e")));
        assert!(cls("U1").member(&f("2:e")));
        assert!(cls("W2").member(&f("2:e")));
        assert!(!cls("W2").member(&f("2:8")));
        assert!(cls("Wneg2").member(&f("2:4")));
        assert!(cls("W2").member(&f("1:3")));
    }

    #[test]
    fn inner_negation_pairs() {
        let pairs = [
            ("U2", "Wneg2"),
            ("OX", "XO"),
            ("IX", "XI"),
            ("Mo", "Mineg"),
            ("Mi", "Moneg"),
            ("OICO", "IOCO"),
            ("Vako", "Vako"),
            ("Smin", "Smin"),
            ("TcUCO3", "TcWnegCO3"),
        ];
        for (a, b) in pairs {
            assert_eq!(cls(a).inner_negated().unwrap().name(), b);
            assert_eq!(cls(b).inner_negated().unwrap().name(), a);
        }
        assert!(cls("Ic").inner_negated().is_err());
    }

    #[test]
    fn names_parse_and_reject() {
        assert_eq!(cls("clU3").name(), "U3");
        assert!("U".parse::<NamedClass>().is_err());
        assert!("Foo".parse::<NamedClass>().is_err());
        for name in FIXED_CLONOID_CLASSES {
            assert!(name.parse::<NamedClass>().is_ok(), "{name}");
        }
    }
}
