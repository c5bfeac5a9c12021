//! Minorant, minor and minorant-minor relations, and canonical forms for the
//! minorant-minor equivalence on functions with few true points.
//!
//! A function with `p` true points is, up to equivalence, determined by the
//! set of distinct columns of its true-point matrix. Such a set is a [`Form`]:
//! `p` rows and a bitmask over `{0,1}^p`, where column value `c` has bit `r`
//! equal to the entry in row `r`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::bf_core::{BoolFn, Closure};
use crate::error::{Error, Result};

/// Default bound on the number of true points accepted by [`canonical_class`].
pub const DEFAULT_K_MAX: usize = 4;
/// Largest row count a [`Form`] can hold (columns fit in a `u64` mask).
pub const FORM_MAX_ROWS: usize = 6;

pub fn minorant_le(f: &BoolFn, g: &BoolFn) -> Result<bool> {
    f.is_minorant_of(g)
}

/// Decides `f ⪯ g`, that is whether `f ≤ g_σ` for some map `σ` from the
/// arguments of `g` to the arguments of `f`.
pub fn minmin_le(f: &BoolFn, g: &BoolFn) -> bool {
    let rows = f.true_rows();
    if rows.is_empty() {
        return true;
    }
    if g.is_zero() {
        return false;
    }
    let m = f.arity();
    let n = g.arity();
    // Distinct columns of f's true-point matrix, one representative argument each.
    let mut cols: Vec<Vec<bool>> = (0..m)
        .map(|j| rows.iter().map(|&r| (r >> (m - 1 - j)) & 1 == 1).collect())
        .collect();
    cols.sort();
    cols.dedup();
    let prefixes = PrefixSets::new(g);
    let mut state = vec![0u32; rows.len()];
    search(&cols, &prefixes, 0, n, &mut state)
}

/// For each `j`, the set of `j`-bit prefixes of true points of `g`.
struct PrefixSets {
    sets: Vec<Vec<u64>>,
}

impl PrefixSets {
    fn new(g: &BoolFn) -> Self {
        let n = g.arity();
        let mut sets = vec![Vec::new(); n + 1];
        sets[n] = g.words().to_vec();
        for j in (0..n).rev() {
            let size = 1usize << j;
            let mut s = vec![0u64; size.div_ceil(64)];
            let above = &sets[j + 1];
            for v in 0..size {
                let a = 2 * v;
                let hit = (above[a >> 6] >> (a & 63)) & 0b11 != 0;
                if hit {
                    s[v >> 6] |= 1 << (v & 63);
                }
            }
            sets[j] = s;
        }
        PrefixSets { sets }
    }

    #[inline]
    fn contains(&self, len: usize, v: u32) -> bool {
        let v = v as usize;
        (self.sets[len][v >> 6] >> (v & 63)) & 1 == 1
    }
}

fn search(cols: &[Vec<bool>], pre: &PrefixSets, depth: usize, n: usize, state: &mut [u32]) -> bool {
    if depth == n {
        return true;
    }
    for col in cols {
        let ok = state
            .iter()
            .zip(col)
            .all(|(&s, &b)| pre.contains(depth + 1, (s << 1) | b as u32));
        if !ok {
            continue;
        }
        for (s, &b) in state.iter_mut().zip(col) {
            *s = (*s << 1) | b as u32;
        }
        if search(cols, pre, depth + 1, n, state) {
            return true;
        }
        for s in state.iter_mut() {
            *s >>= 1;
        }
    }
    false
}

pub fn minmin_equiv(f: &BoolFn, g: &BoolFn) -> bool {
    minmin_le(f, g) && minmin_le(g, f)
}

/// The order `⪯_C`: `f ⪯ g^C`.
pub fn minmin_le_closed(f: &BoolFn, g: &BoolFn, c: Closure) -> bool {
    minmin_le(f, &g.closure(c))
}

/// Distinct-column description of a characteristic function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Form {
    pub rows: u8,
    pub cols: u64,
}

impl Form {
    /// The form of `f`; fails when `f` has more than [`FORM_MAX_ROWS`] true points.
    pub fn of(f: &BoolFn) -> Result<Form> {
        let rows = f.true_rows();
        if rows.len() > FORM_MAX_ROWS {
            return Err(Error::Capacity(format!(
                "{} true points, at most {FORM_MAX_ROWS} supported",
                rows.len()
            )));
        }
        let m = f.arity();
        let mut cols = 0u64;
        for j in 0..m {
            let mut c = 0usize;
            for (r, &row) in rows.iter().enumerate() {
                c |= ((row >> (m - 1 - j)) & 1) << r;
            }
            cols |= 1 << c;
        }
        Ok(Form {
            rows: rows.len() as u8,
            cols,
        })
    }

    /// The function with one argument per column, columns in increasing order.
    pub fn to_fn(&self) -> BoolFn {
        let cols: Vec<usize> = (0..64).filter(|&c| (self.cols >> c) & 1 == 1).collect();
        let a = cols.len().max(1);
        let rows = (0..self.rows as usize).map(|r| cols.iter().fold(0usize, |acc, &c| (acc << 1) | ((c >> r) & 1)));
        BoolFn::from_indices(a, rows).expect("form rows fit the arity")
    }

    pub fn columns(&self) -> impl Iterator<Item = usize> + '_ {
        (0..1usize << self.rows).filter(move |&c| (self.cols >> c) & 1 == 1)
    }

    /// Whether all rows are distinct and there is at least one column.
    pub fn is_valid(&self) -> bool {
        let p = self.rows as usize;
        if p > FORM_MAX_ROWS || self.cols == 0 || (p < 6 && self.cols >> (1u32 << p) != 0) {
            return false;
        }
        for r in 0..p {
            for s in r + 1..p {
                if !self.columns().any(|c| ((c >> r) ^ (c >> s)) & 1 == 1) {
                    return false;
                }
            }
        }
        true
    }

    /// Column set after re-indexing rows: new row `r` reads old row `map[r]`.
    fn pull(&self, map: &[usize]) -> u64 {
        let mut out = 0u64;
        for c in self.columns() {
            let mut d = 0usize;
            for (r, &s) in map.iter().enumerate() {
                d |= ((c >> s) & 1) << r;
            }
            out |= 1 << d;
        }
        out
    }

    /// `χ_self ⪯ χ_other`: some `ρ` from rows of `self` to rows of `other`
    /// pulls every column of `other` back into the columns of `self`.
    pub fn le(&self, other: &Form) -> bool {
        if self.rows == 0 {
            return true;
        }
        if other.rows == 0 {
            return false;
        }
        let p = self.rows as usize;
        let q = other.rows as usize;
        let mut map = vec![0usize; p];
        loop {
            if other.pull(&map) & !self.cols == 0 {
                return true;
            }
            if !next_map(&mut map, q) {
                return false;
            }
        }
    }

    /// A core: an equivalent form all of whose endomorphisms are bijective.
    pub fn core(&self) -> Form {
        let mut cur = *self;
        'outer: loop {
            let p = cur.rows as usize;
            if p <= 1 {
                return cur;
            }
            let mut map = vec![0usize; p];
            loop {
                let mut image = 0u32;
                for &s in &map {
                    image |= 1 << s;
                }
                if (image.count_ones() as usize) < p && cur.pull(&map) & !cur.cols == 0 {
                    let keep: Vec<usize> = (0..p).filter(|&r| (image >> r) & 1 == 1).collect();
                    cur = Form {
                        rows: keep.len() as u8,
                        cols: cur.pull(&keep),
                    };
                    continue 'outer;
                }
                if !next_map(&mut map, p) {
                    return cur;
                }
            }
        }
    }

    /// Least column mask over all row orders.
    pub fn min_over_row_orders(&self) -> Form {
        let p = self.rows as usize;
        let mut perm: Vec<usize> = (0..p).collect();
        let mut best = self.cols;
        while next_permutation(&mut perm) {
            best = best.min(self.pull(&perm));
        }
        Form {
            rows: self.rows,
            cols: best,
        }
    }

    pub fn canonical(&self) -> Form {
        self.core().min_over_row_orders()
    }
}

fn next_map(map: &mut [usize], base: usize) -> bool {
    for v in map.iter_mut() {
        *v += 1;
        if *v < base {
            return true;
        }
        *v = 0;
    }
    false
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Canonical representative of a minorant-minor equivalence class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalKey {
    form: Form,
    rep: BoolFn,
}

impl CanonicalKey {
    pub fn from_form(form: &Form) -> CanonicalKey {
        let form = form.canonical();
        CanonicalKey {
            rep: form.to_fn(),
            form,
        }
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn representative(&self) -> &BoolFn {
        &self.rep
    }

    pub fn true_points(&self) -> usize {
        self.form.rows as usize
    }
}

impl PartialOrd for CanonicalKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalKey {
    /// By number of true points, then by representative table.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.form
            .rows
            .cmp(&other.form.rows)
            .then_with(|| self.rep.cmp(&other.rep))
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

impl Serialize for CanonicalKey {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(&self.rep)
    }
}

pub fn canonical_class(f: &BoolFn) -> Result<CanonicalKey> {
    canonical_class_with_limit(f, DEFAULT_K_MAX)
}

pub fn canonical_class_with_limit(f: &BoolFn, k_max: usize) -> Result<CanonicalKey> {
    let t = f.count_true();
    if t > k_max.min(FORM_MAX_ROWS) {
        return Err(Error::Capacity(format!(
            "canonical form needs at most {} true points, found {t}",
            k_max.min(FORM_MAX_ROWS)
        )));
    }
    Ok(CanonicalKey::from_form(&Form::of(f)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bf_core::named_fn;

    fn f(s: &str) -> BoolFn {
        s.parse().unwrap()
    }

    #[test]
    fn minorant_examples() {
        assert!(minorant_le(&f("2:4"), &f("2:6")).unwrap());
        assert!(!minorant_le(&f("2:6"), &f("2:4")).unwrap());
        assert!(minorant_le(&f("2:0"), &f("2:9")).unwrap());
        assert!(minorant_le(&f("2:0"), &f("3:0")).is_err());
    }

    #[test]
    fn minmin_examples() {
        assert!(minmin_le(&f("1:2"), &f("1:3")));
        assert!(!minmin_le(&f("1:1"), &f("1:2")));
        let or2 = f("2:e");
        let or3 = BoolFn::threshold(3, 1).unwrap();
        assert!(minmin_le(&or2, &or3));
        assert!(!minmin_le(&or3, &or2));
    }

    #[test]
    fn closed_order_examples() {
        assert!(minmin_le_closed(&f("2:c"), &f("2:4"), Closure::M));
        assert!(minmin_le_closed(&f("2:6"), &f("2:4"), Closure::R));
        assert!(!minmin_le_closed(&f("2:6"), &f("2:4"), Closure::XI));
    }

    #[test]
    fn canonical_examples() {
        let a = canonical_class(&BoolFn::from_indices(2, [2]).unwrap()).unwrap();
        let b = canonical_class(&BoolFn::from_indices(3, [4]).unwrap()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "2:2");
        let plus = canonical_class(&f("2:6")).unwrap();
        assert_eq!(
            plus,
            canonical_class(&BoolFn::from_indices(2, [2, 1]).unwrap()).unwrap()
        );
        let l30 = canonical_class(&named_fn("lambda30").unwrap()).unwrap();
        let l31 = canonical_class(&named_fn("lambda31").unwrap()).unwrap();
        assert_ne!(l30, l31);
        assert!(canonical_class(&BoolFn::threshold(3, 1).unwrap()).is_err());
    }

    #[test]
    fn cores_collapse_redundant_rows() {
        // χ{00, 11, 01} is equivalent to constant 1.
        let g = BoolFn::from_indices(2, [0, 3, 1]).unwrap();
        let key = canonical_class(&g).unwrap();
        assert_eq!(key.true_points(), 2);
        assert_eq!(key, canonical_class(&f("1:3")).unwrap());
        // Constant 0 at any arity.
        assert_eq!(canonical_class(&f("4:0")).unwrap().to_string(), "1:0");
        // All four columns over two rows reduce to ↛.
        let full = Form { rows: 2, cols: 0b1111 };
        assert_eq!(CanonicalKey::from_form(&full).to_string(), "2:2");
    }

    #[test]
    fn forms_round_trip() {
        for s in ["2:4", "3:6", "3:e8", "1:3", "2:6"] {
            let g = f(s);
            let back = Form::of(&g).unwrap().to_fn();
            assert!(minmin_equiv(&g, &back), "{s}");
        }
    }

    #[test]
    fn form_order_matches_function_order() {
        let fs: Vec<BoolFn> = ["1:0", "2:4", "1:2", "1:1", "2:6", "3:6", "3:18", "1:3", "3:e8"]
            .iter()
            .map(|s| f(s))
            .collect();
        for a in &fs {
            for b in &fs {
                let (fa, fb) = (Form::of(a).unwrap(), Form::of(b).unwrap());
                assert_eq!(fa.le(&fb), minmin_le(a, b), "{a} {b}");
            }
        }
    }
}
