//! Posets of minorant-minor classes of functions with at most `k` true points,
//! and their quotients under the `C`-closed orders.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::bf_core::{named_fn, three_point_names, BoolFn, Closure};
use crate::error::{Error, Result};
use crate::order::{minmin_le, minmin_le_closed, CanonicalKey, Form};

pub const MAX_RANK: usize = 4;

#[derive(Debug, Clone, Serialize)]
pub struct Element {
    pub id: usize,
    pub table: BoolFn,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(rename = "truePoints")]
    pub true_points: Vec<String>,
    /// Elements of the unclosed poset merged into this one.
    #[serde(skip)]
    pub members: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Poset {
    pub k: usize,
    pub closure: Option<Closure>,
    elements: Vec<Element>,
    leq: Vec<Vec<bool>>,
    covers: Vec<(usize, usize)>,
    /// Element of this poset for each element of the unclosed poset.
    base_class: Vec<usize>,
    /// For `p ≤ k` rows, the unclosed class of every valid column mask.
    lookup: Vec<Vec<u32>>,
}

const NO_CLASS: u32 = u32::MAX;

impl Poset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn rep(&self, i: usize) -> &BoolFn {
        &self.elements[i].table
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn label(&self, i: usize) -> Option<&str> {
        self.elements[i].label.as_deref()
    }

    /// Label if present, table otherwise.
    pub fn display_name(&self, i: usize) -> String {
        match &self.elements[i].label {
            Some(l) => l.clone(),
            None => self.elements[i].table.to_string(),
        }
    }

    /// Index of the element whose label or table is `name`.
    pub fn find(&self, name: &str) -> Result<usize> {
        if let Some(i) = self.elements.iter().position(|e| {
            e.label
                .as_deref()
                .is_some_and(|l| l == name || l.split('=').any(|p| p == name))
        }) {
            return Ok(i);
        }
        let f = crate::bf_core::parse_fn(name)?;
        self.class_of(&f)
    }

    /// Element of a function with at most `k` true points.
    pub fn class_of(&self, f: &BoolFn) -> Result<usize> {
        let t = f.count_true();
        if t > self.k {
            return Err(Error::Precondition(format!(
                "{f} has {t} true points, more than k = {}",
                self.k
            )));
        }
        let form = Form::of(f)?;
        Ok(self.base_class[self.lookup[t][form.cols as usize] as usize])
    }

    /// Element of the characteristic function of `rows` (row indices of an
    /// `arity`-ary tuple space, at most `k` of them).
    pub fn class_of_rows(&self, arity: usize, rows: &[usize]) -> usize {
        let mut cols = 0usize;
        for j in 0..arity {
            let mut c = 0usize;
            for (r, &row) in rows.iter().enumerate() {
                c |= ((row >> (arity - 1 - j)) & 1) << r;
            }
            cols |= 1 << c;
        }
        self.base_class[self.lookup[rows.len()][cols] as usize]
    }

    /// Calls `visit` with the element of `χ_T` for every `T ⊆ f⁻¹(1)` of size
    /// `min(k, |f⁻¹(1)|)`; stops early when `visit` returns false.
    /// Returns false iff stopped early.
    pub fn for_each_restriction(&self, f: &BoolFn, mut visit: impl FnMut(usize) -> bool) -> bool {
        let rows = f.true_rows();
        let size = self.k.min(rows.len());
        let n = f.arity();
        // Columns of the true-point matrix restricted to the chosen rows, built incrementally.
        let mut chosen: Vec<usize> = Vec::with_capacity(size);
        fn rec(
            p: &Poset,
            rows: &[usize],
            n: usize,
            start: usize,
            size: usize,
            chosen: &mut Vec<usize>,
            visit: &mut dyn FnMut(usize) -> bool,
        ) -> bool {
            if chosen.len() == size {
                let sel: Vec<usize> = chosen.iter().map(|&i| rows[i]).collect();
                return visit(p.class_of_rows(n, &sel));
            }
            let left = size - chosen.len();
            for i in start..=rows.len() - left {
                chosen.push(i);
                let ok = rec(p, rows, n, i + 1, size, chosen, visit);
                chosen.pop();
                if !ok {
                    return false;
                }
            }
            true
        }
        rec(self, &rows, n, 0, size, &mut chosen, &mut visit)
    }

    /// The set of elements reached by [`Self::for_each_restriction`], as a bitmask.
    /// Requires at most 64 elements.
    pub fn restriction_signature(&self, f: &BoolFn) -> u64 {
        let mut sig = 0u64;
        self.for_each_restriction(f, |c| {
            sig |= 1 << c;
            true
        });
        sig
    }

    /// The element of this poset containing element `i` of the unclosed poset.
    pub fn base_class(&self, i: usize) -> usize {
        self.base_class[i]
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "k": self.k,
            "closure": self.closure.map(|c| c.name()),
            "elements": self.elements,
            "covers": self.covers.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
        })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=box];\n");
        let max_t = self.elements.iter().map(|e| e.true_points.len()).max().unwrap_or(0);
        for t in 0..=max_t {
            let ids: Vec<String> = self
                .elements
                .iter()
                .filter(|e| e.true_points.len() == t)
                .map(|e| format!("n{}", e.id))
                .collect();
            if !ids.is_empty() {
                let _ = writeln!(out, "  {{ rank=same; {}; }}", ids.join("; "));
            }
        }
        for e in &self.elements {
            let _ = writeln!(out, "  n{} [label=\"{}\"];", e.id, self.display_name(e.id));
        }
        for &(a, b) in &self.covers {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}

fn transitive_reduction(leq: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = leq.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && leq[i][j] && !(0..n).any(|l| l != i && l != j && leq[i][l] && leq[l][j]) {
                out.push((i, j));
            }
        }
    }
    out
}

fn check_partial_order(leq: &[Vec<bool>]) -> Result<()> {
    let n = leq.len();
    for i in 0..n {
        if !leq[i][i] {
            return Err(Error::Consistency(format!("element {i} not reflexive")));
        }
        for j in 0..n {
            if i != j && leq[i][j] && leq[j][i] {
                return Err(Error::Consistency(format!("elements {i} and {j} are equivalent")));
            }
            for l in 0..n {
                if leq[i][j] && leq[j][l] && !leq[i][l] {
                    return Err(Error::Consistency(format!("order not transitive at {i},{j},{l}")));
                }
            }
        }
    }
    Ok(())
}

/// Builds the poset of classes of functions with at most `k` true points,
/// or its quotient under `⪯_C`.
pub fn enumerate_classes(k: usize, closure: Option<Closure>) -> Result<Poset> {
    if !(1..=MAX_RANK).contains(&k) {
        return Err(Error::Precondition(format!("k = {k} outside 1..={MAX_RANK}")));
    }
    let base = build_base(k)?;
    match closure {
        None => Ok(base),
        Some(c) => build_closed(&base, c),
    }
}

/// Cached [`enumerate_classes`].
pub fn shared_poset(k: usize, closure: Option<Closure>) -> Result<Arc<Poset>> {
    type Cache = Mutex<HashMap<(usize, Option<Closure>), Arc<Poset>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("poset cache").get(&(k, closure)) {
        return Ok(Arc::clone(p));
    }
    let p = Arc::new(match closure {
        None => enumerate_classes(k, None)?,
        Some(c) => build_closed(&*shared_poset(k, None)?, c)?,
    });
    cache.lock().expect("poset cache").insert((k, closure), Arc::clone(&p));
    Ok(p)
}

fn build_base(k: usize) -> Result<Poset> {
    let mut keys: HashMap<Form, CanonicalKey> = HashMap::new();
    let mut raw: Vec<Vec<Option<Form>>> = Vec::with_capacity(k + 1);
    for p in 0..=k {
        let width = 1usize << p;
        let masks = 1usize << width;
        let mut row = vec![None; masks];
        for (mask, slot) in row.iter_mut().enumerate() {
            let form = Form {
                rows: p as u8,
                cols: mask as u64,
            };
            if !form.is_valid() {
                continue;
            }
            let key = CanonicalKey::from_form(&form);
            *slot = Some(key.form());
            keys.entry(key.form()).or_insert(key);
        }
        raw.push(row);
    }
    let mut sorted: Vec<CanonicalKey> = keys.into_values().collect();
    sorted.sort();
    let index: HashMap<Form, usize> = sorted.iter().enumerate().map(|(i, k)| (k.form(), i)).collect();
    let lookup: Vec<Vec<u32>> = raw
        .iter()
        .map(|row| row.iter().map(|f| f.map_or(NO_CLASS, |f| index[&f] as u32)).collect())
        .collect();

    let n = sorted.len();
    let reps: Vec<BoolFn> = sorted.iter().map(|k| k.representative().clone()).collect();
    let forms: Vec<Form> = sorted.iter().map(|k| k.form()).collect();
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            let by_search = minmin_le(&reps[i], &reps[j]);
            if by_search != forms[i].le(&forms[j]) {
                return Err(Error::Consistency(format!(
                    "order of {} and {} disagrees between search and forms",
                    reps[i], reps[j]
                )));
            }
            leq[i][j] = by_search;
        }
    }
    check_partial_order(&leq)?;
    // Every candidate is equivalent to the representative of its class.
    for (p, row) in raw.iter().enumerate() {
        for (mask, f) in row.iter().enumerate() {
            if let Some(f) = f {
                let cand = Form {
                    rows: p as u8,
                    cols: mask as u64,
                };
                if !(cand.le(f) && f.le(&cand)) {
                    return Err(Error::Consistency(format!(
                        "candidate ({p}, {mask:#x}) not equivalent to its canonical form"
                    )));
                }
            }
        }
    }
    let covers = transitive_reduction(&leq);
    let mut elements: Vec<Element> = reps
        .iter()
        .enumerate()
        .map(|(id, rep)| Element {
            id,
            table: rep.clone(),
            label: None,
            true_points: rep.true_points().iter().map(|p| p.to_string()).collect(),
            members: vec![id],
        })
        .collect();
    let mut poset = Poset {
        k,
        closure: None,
        elements: Vec::new(),
        leq,
        covers,
        base_class: (0..n).collect(),
        lookup,
    };
    poset.elements = std::mem::take(&mut elements);
    if let Ok(labels) = label_listed_names(&poset) {
        for (i, name) in labels {
            poset.elements[i].label = Some(name);
        }
    }
    Ok(poset)
}

fn build_closed(base: &Poset, c: Closure) -> Result<Poset> {
    let n = base.len();
    let closures: Vec<BoolFn> = base.elements.iter().map(|e| e.table.closure(c)).collect();
    let rel: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| minmin_le(&base.elements[i].table, &closures[j]))
                .collect()
        })
        .collect();
    for i in 0..n {
        for j in 0..n {
            if base.leq[i][j] && !rel[i][j] {
                return Err(Error::Consistency(format!("{c}-order misses {i} ≤ {j}")));
            }
            for l in 0..n {
                if rel[i][j] && rel[j][l] && !rel[i][l] {
                    return Err(Error::Consistency(format!("{c}-order not transitive")));
                }
            }
        }
    }
    // Group mutually related elements; the least member represents the group.
    let mut base_class = vec![usize::MAX; n];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if base_class[i] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (i..n).filter(|&j| rel[i][j] && rel[j][i]).collect();
        for &m in &members {
            base_class[m] = groups.len();
        }
        groups.push(members);
    }
    let m = groups.len();
    let leq: Vec<Vec<bool>> = (0..m)
        .map(|a| (0..m).map(|b| rel[groups[a][0]][groups[b][0]]).collect())
        .collect();
    check_partial_order(&leq)?;
    let covers = transitive_reduction(&leq);
    let elements = groups
        .iter()
        .enumerate()
        .map(|(id, g)| {
            let first = &base.elements[g[0]];
            let labels: Vec<String> = g.iter().map(|&b| base.display_name(b)).collect();
            Element {
                id,
                table: first.table.clone(),
                label: Some(labels.join("=")),
                true_points: first.true_points.clone(),
                members: g.clone(),
            }
        })
        .collect();
    Ok(Poset {
        k: base.k,
        closure: Some(c),
        elements,
        leq,
        covers,
        base_class,
        lookup: base.lookup.clone(),
    })
}

/// Maps each element to the registry name of a listed function in its class.
/// Fails if two names land in one class or some element stays unnamed.
pub fn label_listed_names(p: &Poset) -> Result<Vec<(usize, String)>> {
    if p.k > 3 {
        return Err(Error::Precondition("names are only listed up to k = 3".into()));
    }
    let mut labels: Vec<Option<String>> = vec![None; p.len()];
    for name in three_point_names() {
        let f = named_fn(name)?;
        let key = crate::order::canonical_class(&f)?;
        if key.true_points() > p.k {
            continue;
        }
        let idx = p.class_of(key.representative())?;
        if let Some(prev) = &labels[idx] {
            if p.closure.is_none() {
                return Err(Error::Consistency(format!(
                    "names {prev} and {name} label the same class"
                )));
            }
            continue;
        }
        labels[idx] = Some(name.to_string());
    }
    let missing: Vec<String> = labels
        .iter()
        .enumerate()
        .filter(|(_, l)| l.is_none())
        .map(|(i, _)| p.rep(i).to_string())
        .collect();
    if !missing.is_empty() {
        return Err(Error::Consistency(format!("unnamed classes: {}", missing.join(", "))));
    }
    Ok(labels
        .into_iter()
        .enumerate()
        .map(|(i, l)| (i, l.expect("checked")))
        .collect())
}

/// The order `⪯_C` between two elements of the unclosed poset.
pub fn closed_leq(p: &Poset, i: usize, j: usize, c: Closure) -> bool {
    minmin_le_closed(p.rep(i), p.rep(j), c)
}
