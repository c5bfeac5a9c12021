//! Truth-table Boolean functions and the pointwise and structural operations on them.
//!
//! Rows are indexed big-endian: the tuple `(a1, ..., an)` lives at index
//! `a1 * 2^(n-1) + ... + an`, so `a1` is the most significant bit.

mod classes;
mod named;

pub use classes::{is_monotone, separating, ClassSpec, NamedClass, Props, FIXED_CLONOID_CLASSES};
pub use named::{named_fn, named_functions, three_point_names, NamedFunction};

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_ARITY: usize = 16;

fn word_count(arity: usize) -> usize {
    if arity <= 6 {
        1
    } else {
        1 << (arity - 6)
    }
}

fn low_mask(arity: usize) -> u64 {
    if arity >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << arity)) - 1
    }
}

fn check_arity(arity: usize) -> Result<()> {
    if (1..=MAX_ARITY).contains(&arity) {
        Ok(())
    } else {
        Err(Error::Arity(arity))
    }
}

/// A Boolean function given by its arity and truth table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolFn {
    arity: u8,
    words: Vec<u64>,
}

impl BoolFn {
    pub fn zero(arity: usize) -> Result<Self> {
        check_arity(arity)?;
        Ok(Self::zero_unchecked(arity))
    }

    pub(crate) fn zero_unchecked(arity: usize) -> Self {
        BoolFn {
            arity: arity as u8,
            words: vec![0; word_count(arity)],
        }
    }

    pub fn constant(arity: usize, value: bool) -> Result<Self> {
        let mut f = Self::zero(arity)?;
        if value {
            let mask = low_mask(arity);
            f.words.iter_mut().for_each(|w| *w = mask);
        }
        Ok(f)
    }

    /// Builds a function row by row.
    pub fn from_fn(arity: usize, mut rule: impl FnMut(usize) -> bool) -> Result<Self> {
        check_arity(arity)?;
        Ok(Self::from_fn_unchecked(arity, &mut rule))
    }

    pub(crate) fn from_fn_unchecked(arity: usize, rule: &mut impl FnMut(usize) -> bool) -> Self {
        let mut f = Self::zero_unchecked(arity);
        for i in 0..(1usize << arity) {
            if rule(i) {
                f.words[i >> 6] |= 1 << (i & 63);
            }
        }
        f
    }

    /// Characteristic function of a set of row indices.
    pub fn from_indices(arity: usize, rows: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut f = Self::zero(arity)?;
        for i in rows {
            if i >= f.rows() {
                return Err(Error::MalformedTuple(format!("row {i} for arity {arity}")));
            }
            f.set(i, true);
        }
        Ok(f)
    }

    /// Characteristic function of a set of tuples.
    pub fn from_true_points(arity: usize, points: &[TuplePoint]) -> Result<Self> {
        for p in points {
            if p.arity() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: p.arity(),
                });
            }
        }
        Self::from_indices(arity, points.iter().map(|p| p.index()))
    }

    /// Single-word table for arity at most 6.
    pub fn from_word(arity: usize, word: u64) -> Result<Self> {
        check_arity(arity)?;
        if arity > 6 || word & !low_mask(arity) != 0 {
            return Err(Error::MalformedTable(format!("{arity}:{word:x}")));
        }
        Ok(BoolFn {
            arity: arity as u8,
            words: vec![word],
        })
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    pub fn rows(&self) -> usize {
        1 << self.arity
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The whole table as one word; only meaningful for arity at most 6.
    pub fn word(&self) -> u64 {
        self.words[0]
    }

    #[inline]
    pub fn get(&self, row: usize) -> bool {
        (self.words[row >> 6] >> (row & 63)) & 1 == 1
    }

    #[inline]
    pub(crate) fn set(&mut self, row: usize, value: bool) {
        if value {
            self.words[row >> 6] |= 1 << (row & 63);
        } else {
            self.words[row >> 6] &= !(1 << (row & 63));
        }
    }

    pub fn eval(&self, point: &TuplePoint) -> Result<bool> {
        if point.arity() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: point.arity(),
            });
        }
        Ok(self.get(point.index()))
    }

    pub fn count_true(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Row indices of the true points in increasing order.
    pub fn true_rows(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.count_true());
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push((wi << 6) | b);
                w &= w - 1;
            }
        }
        out
    }

    pub fn false_rows(&self) -> Vec<usize> {
        (0..self.rows()).filter(|&i| !self.get(i)).collect()
    }

    pub fn true_points(&self) -> Vec<TuplePoint> {
        self.true_rows()
            .into_iter()
            .map(|i| TuplePoint::new_unchecked(self.arity(), i))
            .collect()
    }

    pub fn at_zero(&self) -> bool {
        self.get(0)
    }

    pub fn at_one(&self) -> bool {
        self.get(self.rows() - 1)
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_constant(&self) -> bool {
        let mask = low_mask(self.arity());
        self.is_zero() || self.words.iter().all(|&w| w == mask)
    }

    fn same_arity(&self, other: &BoolFn) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: other.arity(),
            });
        }
        Ok(())
    }

    /// Pointwise order: every true point of `self` is a true point of `other`.
    pub fn is_minorant_of(&self, other: &BoolFn) -> Result<bool> {
        self.same_arity(other)?;
        Ok(self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0))
    }

    pub fn and(&self, other: &BoolFn) -> Result<BoolFn> {
        self.zip_words(other, |a, b| a & b)
    }

    pub fn or(&self, other: &BoolFn) -> Result<BoolFn> {
        self.zip_words(other, |a, b| a | b)
    }

    fn zip_words(&self, other: &BoolFn, op: impl Fn(u64, u64) -> u64) -> Result<BoolFn> {
        self.same_arity(other)?;
        Ok(BoolFn {
            arity: self.arity,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect(),
        })
    }

    pub fn negation(&self) -> BoolFn {
        let mask = low_mask(self.arity());
        BoolFn {
            arity: self.arity,
            words: self.words.iter().map(|w| !w & mask).collect(),
        }
    }

    /// `a ↦ f(ā)`; complementing the tuple reverses the row order.
    pub fn inner_negation(&self) -> BoolFn {
        let last = self.rows() - 1;
        let mut g = Self::zero_unchecked(self.arity());
        for i in self.true_rows() {
            g.set(last - i, true);
        }
        g
    }

    pub fn dual(&self) -> BoolFn {
        self.inner_negation().negation()
    }

    pub fn transform(&self, mode: Transform) -> BoolFn {
        match mode {
            Transform::Negation => self.negation(),
            Transform::InnerNegation => self.inner_negation(),
            Transform::Dual => self.dual(),
        }
    }

    /// `g_σ(a) = g(aσ)` with `(aσ)_j = a_{σ(j)}`.
    pub fn minor(&self, map: &MinorMap) -> Result<BoolFn> {
        if map.source_arity() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: map.source_arity(),
            });
        }
        Ok(self.minor_unchecked(map.target_arity(), map.indices()))
    }

    /// Minor with a zero-based map; the caller guarantees the ranges.
    pub(crate) fn minor_unchecked(&self, target: usize, map: &[usize]) -> BoolFn {
        let m = map.len();
        debug_assert_eq!(m, self.arity());
        Self::from_fn_unchecked(target, &mut |i| {
            let mut j = 0usize;
            for (t, &s) in map.iter().enumerate() {
                j |= ((i >> (target - 1 - s)) & 1) << (m - 1 - t);
            }
            self.get(j)
        })
    }

    /// `f(g1, ..., gn)`; all inner functions share one arity.
    pub fn compose(&self, inner: &[BoolFn]) -> Result<BoolFn> {
        if inner.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: inner.len(),
            });
        }
        let m = inner[0].arity();
        for g in inner {
            if g.arity() != m {
                return Err(Error::ArityMismatch {
                    expected: m,
                    found: g.arity(),
                });
            }
        }
        let n = self.arity();
        Ok(Self::from_fn_unchecked(m, &mut |i| {
            let mut j = 0usize;
            for (t, g) in inner.iter().enumerate() {
                j |= (g.get(i) as usize) << (n - 1 - t);
            }
            self.get(j)
        }))
    }

    /// `(f ∗ g)(a1..a_{m+n-1}) = f(g(a1..am), a_{m+1}..a_{m+n-1})` for `g` m-ary, `f` n-ary.
    pub fn star(&self, g: &BoolFn) -> Result<BoolFn> {
        let n = self.arity();
        let m = g.arity();
        let arity = m + n - 1;
        if arity > MAX_ARITY {
            return Err(Error::Capacity(format!(
                "star product of arity {arity} exceeds {MAX_ARITY}"
            )));
        }
        let rest = n - 1;
        let low = (1usize << rest) - 1;
        Ok(Self::from_fn_unchecked(arity, &mut |i| {
            let head = g.get(i >> rest) as usize;
            self.get((head << rest) | (i & low))
        }))
    }

    pub fn threshold(arity: usize, t: usize) -> Result<BoolFn> {
        check_arity(arity)?;
        if t > arity + 1 {
            return Err(Error::Precondition(format!("threshold {t} outside 0..={}", arity + 1)));
        }
        Self::from_fn(arity, |i| i.count_ones() as usize >= t)
    }

    /// The i-th n-ary projection (zero-based `i`).
    pub fn projection(arity: usize, i: usize) -> Result<BoolFn> {
        check_arity(arity)?;
        if i >= arity {
            return Err(Error::MapOutOfRange {
                value: i + 1,
                target: arity,
            });
        }
        Self::from_fn(arity, |r| (r >> (arity - 1 - i)) & 1 == 1)
    }

    pub fn closure(&self, kind: Closure) -> BoolFn {
        let n = self.arity();
        let mut g = self.clone();
        match kind {
            Closure::XI => {
                let last = g.rows() - 1;
                g.set(last, true);
            }
            Closure::IX => g.set(0, true),
            Closure::M => {
                for b in 0..n {
                    let bit = 1usize << b;
                    for i in 0..g.rows() {
                        if i & bit == 0 && g.get(i) {
                            g.set(i | bit, true);
                        }
                    }
                }
            }
            Closure::Mneg => {
                for b in 0..n {
                    let bit = 1usize << b;
                    for i in 0..g.rows() {
                        if i & bit != 0 && g.get(i) {
                            g.set(i & !bit, true);
                        }
                    }
                }
            }
            Closure::R => {
                let other = self.inner_negation();
                for (w, o) in g.words.iter_mut().zip(other.words) {
                    *w |= o;
                }
            }
        }
        g
    }

    fn cmp_table(&self, other: &BoolFn) -> Ordering {
        self.arity.cmp(&other.arity).then_with(|| {
            for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
                match a.cmp(b) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl Ord for BoolFn {
    /// Arity first, then the table read as an unsigned integer.
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_table(other)
    }
}

impl PartialOrd for BoolFn {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BoolFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.arity)?;
        match self.words.iter().rposition(|&w| w != 0) {
            None => write!(f, "0"),
            Some(top) => {
                write!(f, "{:x}", self.words[top])?;
                for w in self.words[..top].iter().rev() {
                    write!(f, "{w:016x}")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for BoolFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoolFn({self})")
    }
}

impl FromStr for BoolFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedTable(s.to_string());
        let (a, hex) = s.trim().split_once(':').ok_or_else(bad)?;
        let arity: usize = a.parse().map_err(|_| bad())?;
        check_arity(arity)?;
        if hex.is_empty() || !hex.bytes().all(|c| c.is_ascii_hexdigit()) {
            return Err(bad());
        }
        let hex = hex.trim_start_matches('0');
        let mut f = BoolFn::zero_unchecked(arity);
        let words = f.words.len();
        let chunks: Vec<&[u8]> = hex.as_bytes().rchunks(16).collect();
        if chunks.len() > words {
            return Err(bad());
        }
        for (i, chunk) in chunks.iter().enumerate() {
            let text = std::str::from_utf8(chunk).map_err(|_| bad())?;
            f.words[i] = u64::from_str_radix(text, 16).map_err(|_| bad())?;
        }
        if f.words[0] & !low_mask(arity) != 0 && arity < 6 {
            return Err(bad());
        }
        Ok(f)
    }
}

impl Serialize for BoolFn {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BoolFn {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    Negation,
    InnerNegation,
    Dual,
}

impl FromStr for Transform {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "negation" | "neg" => Ok(Transform::Negation),
            "inner_negation" | "inner-negation" | "inner" => Ok(Transform::InnerNegation),
            "dual" => Ok(Transform::Dual),
            _ => Err(Error::Precondition(format!("unknown transform `{s}`"))),
        }
    }
}

/// The five closure operators: force `f(1)=1`, force `f(0)=1`, up-closure,
/// down-closure, and reflexive closure `f(a) ∨ f(ā)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Closure {
    XI,
    IX,
    M,
    Mneg,
    R,
}

impl Closure {
    pub const ALL: [Closure; 5] = [Closure::XI, Closure::IX, Closure::M, Closure::Mneg, Closure::R];

    pub fn name(self) -> &'static str {
        match self {
            Closure::XI => "XI",
            Closure::IX => "IX",
            Closure::M => "M",
            Closure::Mneg => "Mneg",
            Closure::R => "R",
        }
    }

    /// The closure that corresponds under inner negation.
    pub fn inner_negated(self) -> Closure {
        match self {
            Closure::XI => Closure::IX,
            Closure::IX => Closure::XI,
            Closure::M => Closure::Mneg,
            Closure::Mneg => Closure::M,
            Closure::R => Closure::R,
        }
    }
}

impl fmt::Display for Closure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Closure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "XI" | "xi" => Ok(Closure::XI),
            "IX" | "ix" => Ok(Closure::IX),
            "M" | "m" => Ok(Closure::M),
            "Mneg" | "mneg" => Ok(Closure::Mneg),
            "R" | "r" | "Refl" | "refl" => Ok(Closure::R),
            _ => Err(Error::Precondition(format!("unknown closure `{s}`"))),
        }
    }
}

/// A point of `{0,1}^n`, stored as its big-endian row index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TuplePoint {
    arity: u8,
    index: u32,
}

impl TuplePoint {
    pub fn new(arity: usize, index: usize) -> Result<Self> {
        check_arity(arity)?;
        if index >= 1 << arity {
            return Err(Error::MalformedTuple(format!("row {index} for arity {arity}")));
        }
        Ok(Self::new_unchecked(arity, index))
    }

    pub(crate) fn new_unchecked(arity: usize, index: usize) -> Self {
        TuplePoint {
            arity: arity as u8,
            index: index as u32,
        }
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        check_arity(bits.len())?;
        let index = bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        Ok(Self::new_unchecked(bits.len(), index))
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    pub fn index(&self) -> usize {
        self.index as usize
    }

    /// Zero-based coordinate `j`.
    pub fn coord(&self, j: usize) -> bool {
        (self.index >> (self.arity as usize - 1 - j)) & 1 == 1
    }

    pub fn complement(&self) -> TuplePoint {
        TuplePoint {
            arity: self.arity,
            index: ((1u32 << self.arity) - 1) ^ self.index,
        }
    }

    pub fn weight(&self) -> usize {
        self.index.count_ones() as usize
    }
}

impl fmt::Display for TuplePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.arity() {
            f.write_str(if self.coord(j) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for TuplePoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits: Option<Vec<bool>> = s
            .chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect();
        let bits = bits.ok_or_else(|| Error::MalformedTuple(s.to_string()))?;
        Self::from_bits(&bits).map_err(|_| Error::MalformedTuple(s.to_string()))
    }
}

/// A map `σ: [m] → [n]`, displayed one-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MinorMap {
    target: usize,
    map: Vec<usize>,
}

impl MinorMap {
    /// Builds a map from one-based values.
    pub fn new(target: usize, one_based: &[usize]) -> Result<Self> {
        check_arity(target)?;
        check_arity(one_based.len())?;
        let mut map = Vec::with_capacity(one_based.len());
        for &v in one_based {
            if v == 0 || v > target {
                return Err(Error::MapOutOfRange { value: v, target });
            }
            map.push(v - 1);
        }
        Ok(MinorMap { target, map })
    }

    pub fn source_arity(&self) -> usize {
        self.map.len()
    }

    pub fn target_arity(&self) -> usize {
        self.target
    }

    /// Zero-based images.
    pub fn indices(&self) -> &[usize] {
        &self.map
    }

    /// All maps `[m] → [n]`.
    pub fn all(source: usize, target: usize) -> Result<Vec<MinorMap>> {
        check_arity(source)?;
        check_arity(target)?;
        let total = target.checked_pow(source as u32).unwrap_or(usize::MAX);
        if total > 1 << 20 {
            return Err(Error::Capacity(format!("{target}^{source} minor maps")));
        }
        let mut out = Vec::with_capacity(total);
        let mut cur = vec![0usize; source];
        loop {
            out.push(MinorMap {
                target,
                map: cur.clone(),
            });
            let mut pos = source;
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                cur[pos] += 1;
                if cur[pos] < target {
                    break;
                }
                cur[pos] = 0;
            }
        }
    }
}

impl fmt::Display for MinorMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.map.iter().map(|v| (v + 1).to_string()).collect();
        write!(f, "({})->{}", parts.join(","), self.target)
    }
}

/// Parses either `n:hex` or a registered function name.
pub fn parse_fn(text: &str) -> Result<BoolFn> {
    if text.contains(':') {
        text.parse()
    } else {
        named_fn(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> BoolFn {
        s.parse().unwrap()
    }

    #[test]
    fn true_points_build_known_tables() {
        let nimp = BoolFn::from_true_points(2, &["10".parse().unwrap()]).unwrap();
        assert_eq!(nimp.to_string(), "2:4");
        assert_eq!(BoolFn::from_true_points(2, &[]).unwrap().to_string(), "2:0");
        let pts: Vec<TuplePoint> = ["011", "101", "110", "111"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(BoolFn::from_true_points(3, &pts).unwrap().to_string(), "3:e8");
    }

    #[test]
    fn point_arity_mismatch_is_rejected() {
        let err = BoolFn::from_true_points(3, &["10".parse().unwrap()]).unwrap_err();
        assert!(matches!(err, Error::ArityMismatch { .. }));
    }

    #[test]
    fn minors() {
        let or = f("2:e");
        assert_eq!(or.minor(&MinorMap::new(1, &[1, 1]).unwrap()).unwrap(), f("1:2"));
        let mu = f("3:e8");
        // mu(x, x, y) = x
        assert_eq!(mu.minor(&MinorMap::new(2, &[1, 1, 2]).unwrap()).unwrap(), f("2:c"));
        let id = f("1:2");
        assert_eq!(id.minor(&MinorMap::new(2, &[2]).unwrap()).unwrap(), f("2:a"));
        assert!(id.minor(&MinorMap::new(2, &[1, 2]).unwrap()).is_err());
        assert!(MinorMap::new(2, &[3]).is_err());
    }

    #[test]
    fn composition() {
        let and = f("2:8");
        let id = f("1:2");
        let neg = f("1:1");
        assert_eq!(and.compose(&[id.clone(), neg.clone()]).unwrap(), f("1:0"));
        assert_eq!(neg.compose(std::slice::from_ref(&neg)).unwrap(), id);
        let th = BoolFn::threshold(3, 2).unwrap();
        let prs: Vec<BoolFn> = (0..3).map(|i| BoolFn::projection(3, i).unwrap()).collect();
        assert_eq!(th.compose(&prs).unwrap(), f("3:e8"));
        assert!(and.compose(&[id]).is_err());
    }

    #[test]
    fn star_products() {
        let id = f("1:2");
        let and = f("2:8");
        let or = f("2:e");
        let neg = f("1:1");
        assert_eq!(id.star(&and).unwrap(), and);
        assert_eq!(neg.star(&id).unwrap(), neg);
        // (x1 ∨ x2) ∧ x3: rows 011, 101, 111
        assert_eq!(and.star(&or).unwrap(), BoolFn::from_indices(3, [3, 5, 7]).unwrap());
        let big = BoolFn::zero(9).unwrap();
        assert!(matches!(big.star(&big), Err(Error::Capacity(_))));
    }

    #[test]
    fn transforms() {
        assert_eq!(f("2:4").inner_negation(), f("2:2"));
        assert_eq!(f("2:8").dual(), f("2:e"));
        assert_eq!(f("1:0").negation(), f("1:3"));
    }

    #[test]
    fn thresholds() {
        assert_eq!(BoolFn::threshold(3, 2).unwrap(), f("3:e8"));
        assert_eq!(BoolFn::threshold(2, 1).unwrap(), f("2:e"));
        assert_eq!(BoolFn::threshold(3, 4).unwrap(), f("3:0"));
        assert!(BoolFn::threshold(3, 5).is_err());
    }

    #[test]
    fn closures() {
        let nimp = f("2:4");
        assert_eq!(nimp.closure(Closure::R), f("2:6"));
        assert_eq!(nimp.closure(Closure::M), f("2:c"));
        assert_eq!(nimp.closure(Closure::XI), f("2:c"));
        assert_eq!(f("3:e8").closure(Closure::XI), f("3:e8"));
        assert_eq!(nimp.closure(Closure::Mneg), BoolFn::from_indices(2, [0, 2]).unwrap());
        assert_eq!(nimp.closure(Closure::IX), BoolFn::from_indices(2, [0, 2]).unwrap());
    }

    #[test]
    fn text_format() {
        for s in [
            "1:2",
            "1:1",
            "2:8",
            "2:e",
            "2:6",
            "2:4",
            "3:e8",
            "2:0",
            "7:1",
            "7:80000000000000000000000000000000",
        ] {
            assert_eq!(f(s).to_string(), s);
        }
        assert_eq!(f("7:1").words().len(), 2);
        assert!("2:1f".parse::<BoolFn>().is_err());
        assert!("0:1".parse::<BoolFn>().is_err());
        assert!("17:1".parse::<BoolFn>().is_err());
        assert!("2:g".parse::<BoolFn>().is_err());
        assert!("2".parse::<BoolFn>().is_err());
        assert_eq!(f("2:04"), f("2:4"));
    }

    #[test]
    fn order_is_arity_then_value() {
        assert!(f("1:3") < f("2:0"));
        assert!(f("7:1") < f("7:10000000000000000"));
        assert!(f("2:4") < f("2:6"));
    }

    #[test]
    fn tuple_points() {
        let p: TuplePoint = "0110".parse().unwrap();
        assert_eq!(p.index(), 6);
        assert_eq!(p.complement().to_string(), "1001");
        assert!(p.coord(1) && !p.coord(0));
        assert!("01a".parse::<TuplePoint>().is_err());
    }

    #[test]
    fn all_minor_maps() {
        assert_eq!(MinorMap::all(3, 2).unwrap().len(), 8);
        assert!(MinorMap::all(16, 16).is_err());
    }
}
