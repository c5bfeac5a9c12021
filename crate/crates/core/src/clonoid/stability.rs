//! Bounded verification of stability under right and left composition with a
//! clone, and bounded clone closures.
//!
//! These checks never prove stability. A pass means that no counterexample
//! exists among the functions up to the arity cap; a failure comes with a
//! concrete counterexample.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::presets::ClonePreset;
use crate::bf_core::{BoolFn, MinorMap};
use crate::error::{Error, Result};
use crate::lattice::Ideal;

/// Largest arity cap accepted by the stability checks and clone closures.
pub const MAX_ARITY_CAP: usize = 4;

/// Membership predicate of the class under test.
pub type Predicate<'a> = &'a (dyn Fn(&BoolFn) -> bool + Sync);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    pub arity_cap: usize,
    /// Compositions tried per generator and arity before switching to sampling.
    pub budget: u64,
    pub seed: u64,
    pub jobs: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            arity_cap: 3,
            budget: 1 << 25,
            seed: 0,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// The function outside the class.
    pub result: BoolFn,
    /// The outer function of the composition.
    pub outer: BoolFn,
    pub inner: Vec<BoolFn>,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Pass { exhaustive: bool, checked: u64 },
    Fail { counterexample: Counterexample },
    Inconclusive { checked: u64, reason: String },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass { .. })
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }
}

fn check_cap(cap: usize) -> Result<()> {
    if cap == 0 || cap > MAX_ARITY_CAP {
        return Err(Error::Precondition(format!(
            "arity cap must be in 1..={MAX_ARITY_CAP}, got {cap}"
        )));
    }
    Ok(())
}

fn full_mask(m: usize) -> u64 {
    if m == 6 {
        u64::MAX
    } else {
        (1u64 << (1 << m)) - 1
    }
}

fn projection_word(m: usize, i: usize) -> u64 {
    BoolFn::projection(m, i).expect("small projection").word()
}

/// `g(args)` on tables of a common arity at most 6, given as row masks.
fn apply(g_true: &[usize], n: usize, args: &[u64], mask: u64) -> u64 {
    let mut out = 0u64;
    for &t in g_true {
        let mut term = mask;
        for (j, &a) in args.iter().enumerate() {
            term &= if (t >> (n - 1 - j)) & 1 == 1 { a } else { !a & mask };
            if term == 0 {
                break;
            }
        }
        out |= term;
    }
    out
}

/// Steps `idx` to the next tuple of the box `lo..hi`, last position fastest.
/// Returns false after the last tuple.
fn advance(idx: &mut [usize], lo: &[usize], hi: &[usize]) -> bool {
    for q in (0..idx.len()).rev() {
        idx[q] += 1;
        if idx[q] < hi[q] {
            return true;
        }
        idx[q] = lo[q];
    }
    false
}

/// Visits every tuple in `[0, len)^n` with at least one entry `≥ from`.
/// Stops when `visit` returns false; returns false iff stopped.
fn for_each_new_tuple(len: usize, n: usize, from: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    // `p` is the first position holding a new element.
    for p in 0..n {
        let lo: Vec<usize> = (0..n).map(|q| if q == p { from } else { 0 }).collect();
        let hi: Vec<usize> = (0..n).map(|q| if q < p { from } else { len }).collect();
        if (0..n).any(|q| lo[q] >= hi[q]) {
            continue;
        }
        let mut idx = lo.clone();
        loop {
            if !visit(&idx) {
                return false;
            }
            if !advance(&mut idx, &lo, &hi) {
                break;
            }
        }
    }
    true
}

/// The functions of arity `1..=max_arity` in the clone generated by `gens`.
/// Sorted by arity, then table.
pub fn clone_closure_bounded(gens: &[BoolFn], max_arity: usize) -> Result<Vec<BoolFn>> {
    check_cap(max_arity)?;
    const WORK_LIMIT: u64 = 1 << 28;
    let gens: Vec<(Vec<usize>, usize)> = gens.iter().map(|g| (g.true_rows(), g.arity())).collect();
    let mut out = Vec::new();
    let mut work = 0u64;
    for m in 1..=max_arity {
        let mask = full_mask(m);
        let mut seen = vec![false; 1usize << (1 << m)];
        let mut list: Vec<u64> = Vec::new();
        for i in 0..m {
            let w = projection_word(m, i);
            if !seen[w as usize] {
                seen[w as usize] = true;
                list.push(w);
            }
        }
        let mut from = 0;
        while from < list.len() {
            let len = list.len();
            let mut fresh = Vec::new();
            for (g_true, n) in &gens {
                let mut args = vec![0u64; *n];
                let completed = for_each_new_tuple(len, *n, from, |t| {
                    work += 1;
                    if work > WORK_LIMIT {
                        return false;
                    }
                    for (a, &i) in args.iter_mut().zip(t) {
                        *a = list[i];
                    }
                    let r = apply(g_true, *n, &args, mask);
                    if !seen[r as usize] {
                        seen[r as usize] = true;
                        fresh.push(r);
                    }
                    true
                });
                if !completed {
                    return Err(Error::Capacity(format!(
                        "clone closure at arity {m} needs more than {WORK_LIMIT} compositions"
                    )));
                }
            }
            from = len;
            list.extend(fresh);
        }
        list.sort_unstable();
        out.extend(list.into_iter().map(|w| BoolFn::from_word(m, w).expect("small table")));
    }
    Ok(out)
}

/// All `m`-ary members of the class, as row masks, and a membership table.
fn members_of_arity(pred: Predicate, m: usize) -> (Vec<u64>, Vec<bool>) {
    let size = 1usize << (1 << m);
    let mut table = vec![false; size];
    let mut list = Vec::new();
    for w in 0..size as u64 {
        if pred(&BoolFn::from_word(m, w).expect("small table")) {
            table[w as usize] = true;
            list.push(w);
        }
    }
    (list, table)
}

fn describe(outer: &BoolFn, inner: &[BoolFn], result: &BoolFn, op: &str) -> String {
    let args: Vec<String> = inner.iter().map(|f| f.to_string()).collect();
    format!("{outer}{op}({}) = {result}", args.join(", "))
}

/// Checks `K C ⊆ K` (right) or `C K ⊆ K` (left) for the clone `C` generated
/// by the preset, over functions of arity at most `opts.arity_cap`.
pub fn stability_check(pred: Predicate, side: Side, preset: &ClonePreset, opts: &CheckOptions) -> Result<Verdict> {
    check_cap(opts.arity_cap)?;
    match side {
        Side::Right => right_check(pred, &preset.generators, opts),
        Side::Left => left_check(pred, &preset.generators, opts),
    }
}

fn right_check(pred: Predicate, gens: &[BoolFn], opts: &CheckOptions) -> Result<Verdict> {
    let mut checked = 0u64;
    let members: Vec<BoolFn> = (1..=opts.arity_cap)
        .flat_map(|m| {
            members_of_arity(pred, m)
                .0
                .into_iter()
                .map(move |w| BoolFn::from_word(m, w).expect("small table"))
        })
        .collect();
    for f in &members {
        for target in 1..=opts.arity_cap {
            for map in MinorMap::all(f.arity(), target)? {
                let r = f.minor(&map)?;
                checked += 1;
                if !pred(&r) {
                    return Ok(Verdict::Fail {
                        counterexample: Counterexample {
                            description: format!("minor {f}[{map}] = {r} is outside the class"),
                            result: r,
                            outer: f.clone(),
                            inner: vec![],
                        },
                    });
                }
            }
        }
    }
    for f in &members {
        for g in gens {
            let r = f.star(g)?;
            checked += 1;
            if !pred(&r) {
                return Ok(Verdict::Fail {
                    counterexample: Counterexample {
                        description: format!(
                            "{} is outside the class",
                            describe(f, std::slice::from_ref(g), &r, " ∗ ")
                        ),
                        result: r,
                        outer: f.clone(),
                        inner: vec![g.clone()],
                    },
                });
            }
        }
    }
    Ok(Verdict::Pass {
        exhaustive: true,
        checked,
    })
}

/// First tuple (in lexicographic order within the given first-index range)
/// whose composition falls outside the class.
fn scan_range(
    first: std::ops::Range<usize>,
    list: &[u64],
    table: &[bool],
    g_true: &[usize],
    n: usize,
    mask: u64,
) -> Option<Vec<usize>> {
    if first.is_empty() {
        return None;
    }
    let mut lo = vec![0usize; n];
    let mut hi = vec![list.len(); n];
    lo[0] = first.start;
    hi[0] = first.end;
    let mut idx = lo.clone();
    let mut args = vec![0u64; n];
    loop {
        for (a, &i) in args.iter_mut().zip(&idx) {
            *a = list[i];
        }
        if !table[apply(g_true, n, &args, mask) as usize] {
            return Some(idx);
        }
        if !advance(&mut idx, &lo, &hi) {
            return None;
        }
    }
}

fn left_check(pred: Predicate, gens: &[BoolFn], opts: &CheckOptions) -> Result<Verdict> {
    let mut checked = 0u64;
    let mut exhaustive = true;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for m in 1..=opts.arity_cap {
        let mask = full_mask(m);
        let (list, table) = members_of_arity(pred, m);
        if list.is_empty() {
            continue;
        }
        for g in gens {
            let n = g.arity();
            let g_true = g.true_rows();
            let total = (list.len() as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
            let found = if total <= opts.budget {
                checked += total;
                let jobs = opts.jobs.max(1).min(list.len());
                let chunk = list.len().div_ceil(jobs);
                let parts: Vec<Option<Vec<usize>>> = std::thread::scope(|s| {
                    let handles: Vec<_> = (0..jobs)
                        .map(|j| {
                            let range = j * chunk..((j + 1) * chunk).min(list.len());
                            let (list, table, g_true) = (&list, &table, &g_true);
                            s.spawn(move || scan_range(range, list, table, g_true, n, mask))
                        })
                        .collect();
                    handles.into_iter().map(|h| h.join().expect("worker")).collect()
                });
                parts.into_iter().flatten().next()
            } else {
                exhaustive = false;
                checked += opts.budget;
                let mut args = vec![0u64; n];
                let mut hit = None;
                for _ in 0..opts.budget {
                    let idx: Vec<usize> = (0..n).map(|_| rng.gen_range(0..list.len())).collect();
                    for (a, &i) in args.iter_mut().zip(&idx) {
                        *a = list[i];
                    }
                    if !table[apply(&g_true, n, &args, mask) as usize] {
                        hit = Some(idx);
                        break;
                    }
                }
                hit
            };
            if let Some(idx) = found {
                let inner: Vec<BoolFn> = idx
                    .iter()
                    .map(|&i| BoolFn::from_word(m, list[i]).expect("small table"))
                    .collect();
                let result = g.compose(&inner)?;
                return Ok(Verdict::Fail {
                    counterexample: Counterexample {
                        description: format!("{} is outside the class", describe(g, &inner, &result, "")),
                        result,
                        outer: g.clone(),
                        inner,
                    },
                });
            }
        }
    }
    Ok(if exhaustive {
        Verdict::Pass {
            exhaustive: true,
            checked,
        }
    } else {
        Verdict::Inconclusive {
            checked,
            reason: format!("sampled beyond the budget of {} compositions", opts.budget),
        }
    })
}

/// Checks `K_k(Θ) C ⊆ K_k(Θ)` through the `≤ k`-point minorant-minors of
/// `Θ C`, with `C` bounded to arity `opts.arity_cap`.
pub fn theta_right_stability(theta: &Ideal, preset: &ClonePreset, opts: &CheckOptions) -> Result<Verdict> {
    check_cap(opts.arity_cap)?;
    let poset = theta.poset();
    let clone = clone_closure_bounded(&preset.generators, opts.arity_cap)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut checked = 0u64;
    let mut exhaustive = true;
    let mut memo: HashMap<(usize, u64), u64> = HashMap::new();
    for e in theta.maxima() {
        let outer = poset.rep(e).clone();
        let a = outer.arity();
        for m in 1..=opts.arity_cap {
            let layer: Vec<&BoolFn> = clone.iter().filter(|c| c.arity() == m).collect();
            let total = (layer.len() as u64).checked_pow(a as u32).unwrap_or(u64::MAX);
            let width = layer.len() as u64;
            let tuples: Box<dyn Iterator<Item = Vec<usize>>> = if total <= opts.budget {
                Box::new((0..total).map(move |mut t| {
                    let mut idx = vec![0usize; a];
                    for slot in idx.iter_mut().rev() {
                        *slot = (t % width) as usize;
                        t /= width;
                    }
                    idx
                }))
            } else {
                exhaustive = false;
                let draws: Vec<Vec<usize>> = (0..opts.budget)
                    .map(|_| (0..a).map(|_| rng.gen_range(0..layer.len())).collect())
                    .collect();
                Box::new(draws.into_iter())
            };
            for idx in tuples {
                checked += 1;
                let inner: Vec<BoolFn> = idx.iter().map(|&i| layer[i].clone()).collect();
                let r = outer.compose(&inner)?;
                let sig = *memo
                    .entry((m, r.word()))
                    .or_insert_with(|| poset.restriction_signature(&r));
                let outside = sig & !theta.members();
                if outside != 0 {
                    let bad = outside.trailing_zeros() as usize;
                    return Ok(Verdict::Fail {
                        counterexample: Counterexample {
                            description: format!(
                                "{} has a restriction in class {} outside the ideal",
                                describe(&outer, &inner, &r, ""),
                                poset.display_name(bad)
                            ),
                            result: r,
                            outer: outer.clone(),
                            inner,
                        },
                    });
                }
            }
        }
    }
    Ok(if exhaustive {
        Verdict::Pass {
            exhaustive: true,
            checked,
        }
    } else {
        Verdict::Inconclusive {
            checked,
            reason: format!("sampled beyond the budget of {} compositions", opts.budget),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bf_core::NamedClass;
    use crate::clonoid::presets::preset;

    #[test]
    fn new_tuples_cover_exactly_the_fresh_part() {
        let mut seen = Vec::new();
        for_each_new_tuple(3, 2, 1, |t| {
            seen.push(t.to_vec());
            true
        });
        seen.sort();
        let mut expect: Vec<Vec<usize>> = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                if a >= 1 || b >= 1 {
                    expect.push(vec![a, b]);
                }
            }
        }
        assert_eq!(seen, expect);
        let mut count = 0;
        for_each_new_tuple(4, 3, 0, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 64);
    }

    #[test]
    fn scan_range_visits_every_tuple() {
        // A class that is never hit: the scan must return None after all 27 tuples.
        let list = [0u64, 1, 2];
        let table = vec![true; 4];
        assert_eq!(scan_range(0..3, &list, &table, &[1, 2], 3, 3), None);
        let mut table = vec![true; 4];
        table[3] = false;
        // g = ∨ on unary tables: 1 ∨ 2 = 3 first appears at (1, 2).
        assert_eq!(scan_range(0..3, &list, &table, &[1, 2, 3], 2, 3), Some(vec![1, 2]));
    }

    #[test]
    fn bounded_closures() {
        let mcu2 = preset("McU2").unwrap();
        let c = clone_closure_bounded(&mcu2.generators, 3).unwrap();
        let mu: BoolFn = "3:e8".parse().unwrap();
        let x_and_y_or_z: BoolFn = "3:e0".parse().unwrap();
        assert!(c.contains(&mu) && c.contains(&x_and_y_or_z));
        assert!(c.iter().all(|f| mcu2.predicate.member(f)));
        let proj = clone_closure_bounded(&[], 3).unwrap();
        assert_eq!(proj.len(), 1 + 2 + 3);
        let neg = clone_closure_bounded(&["1:1".parse().unwrap()], 1).unwrap();
        let names: Vec<String> = neg.iter().map(|f| f.to_string()).collect();
        assert_eq!(names, ["1:1", "1:2"]);
    }

    #[test]
    fn left_and_right_examples() {
        let u2: NamedClass = "U2".parse().unwrap();
        let pred = |f: &BoolFn| u2.member(f);
        let opts = CheckOptions::default();
        let v = stability_check(&pred, Side::Left, &preset("U2").unwrap(), &opts).unwrap();
        assert!(v.is_pass(), "{v:?}");
        let with_one = ClonePreset {
            name: "one".into(),
            generators: vec!["1:3".parse().unwrap()],
            predicate: "All".parse().unwrap(),
        };
        match stability_check(&pred, Side::Left, &with_one, &opts).unwrap() {
            Verdict::Fail { counterexample } => assert_eq!(counterexample.result.to_string(), "1:3"),
            v => panic!("{v:?}"),
        }
        let negation = ClonePreset {
            name: "neg".into(),
            generators: vec!["1:1".parse().unwrap()],
            predicate: "All".parse().unwrap(),
        };
        match stability_check(&pred, Side::Right, &negation, &opts).unwrap() {
            Verdict::Fail { counterexample } => {
                assert_eq!(counterexample.outer.to_string(), "1:2");
                assert_eq!(counterexample.result.to_string(), "1:1");
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn sampling_is_inconclusive_not_pass() {
        let all = |_: &BoolFn| true;
        let opts = CheckOptions {
            budget: 1000,
            ..CheckOptions::default()
        };
        let v = stability_check(&all, Side::Left, &preset("All").unwrap(), &opts).unwrap();
        assert!(matches!(v, Verdict::Inconclusive { .. }), "{v:?}");
    }

    #[test]
    fn theta_right_examples() {
        use crate::clonoid::ideal_of;
        let opts = CheckOptions::default();
        let u2 = ideal_of(2, &["id"]).unwrap();
        assert!(theta_right_stability(&u2, &preset("Ic").unwrap(), &opts)
            .unwrap()
            .is_pass());
        let negation = ClonePreset {
            name: "neg".into(),
            generators: vec!["1:1".parse().unwrap()],
            predicate: "All".parse().unwrap(),
        };
        assert!(theta_right_stability(&u2, &negation, &opts).unwrap().is_fail());
        assert!(theta_right_stability(&u2, &preset("U2").unwrap(), &opts)
            .unwrap()
            .is_pass());
        assert!(theta_right_stability(&u2, &preset("OX").unwrap(), &opts)
            .unwrap()
            .is_fail());
        let full = ideal_of(2, &["1"]).unwrap();
        for p in crate::clonoid::all_presets(2) {
            assert!(theta_right_stability(&full, &p, &opts).unwrap().is_pass(), "{}", p.name);
        }
    }
}
