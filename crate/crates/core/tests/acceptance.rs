//! Acceptance checks. Each test prints one `PASS` or `FAIL` line and then
//! asserts, so `cargo test --test acceptance -- --nocapture` gives a summary.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use clonoids::bf_core::{three_point_names, BoolFn, Closure, MinorMap, NamedClass};
use clonoids::clonoid::presets::clone_upper_covers;
use clonoids::clonoid::{
    decompose_via_mcuk, enumerate_clonoids, ideal_functions, klik, local_closure, lower_covers, member_klik,
    minors_of_arity, preset, semibisectable, shared_enumeration, stability_check, CheckOptions, Side, KNOWN_STABILITY,
};
use clonoids::lattice::{all_ideals, closed_ideals, downset, ideals_via_filters};
use clonoids::order::minmin_le;
use clonoids::poset::{enumerate_classes, label_listed_names, shared_poset};

const POSET_K3_LIMIT: Duration = Duration::from_secs(10);
const IDEALS_K3_LIMIT: Duration = Duration::from_secs(60);
const STABILITY_CHECK_LIMIT: Duration = Duration::from_secs(30);
const STABILITY_ARITY_CAP: usize = 3;
const ORACLE_MIN_ASSERTIONS: usize = 10_000;
const DECOMPOSITION_SAMPLES: usize = 100;

fn report(criterion: &str, ok: bool, detail: &str) {
    println!("{} criterion {criterion}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {criterion}: {detail}");
}

fn b(s: &str) -> BoolFn {
    s.parse().unwrap()
}

#[test]
fn criterion_1_poset_sizes() {
    let mut problems = Vec::new();
    let mut elapsed = Duration::ZERO;
    for (k, want) in [(1, 4), (2, 8), (3, 34)] {
        let start = Instant::now();
        let p = enumerate_classes(k, None).unwrap();
        if k == 3 {
            elapsed = start.elapsed();
        }
        if p.len() != want {
            problems.push(format!("k={k}: {} classes, want {want}", p.len()));
        }
    }
    let p3 = shared_poset(3, None).unwrap();
    match label_listed_names(&p3) {
        Ok(labels) => {
            let distinct: BTreeSet<&str> = labels.iter().map(|(_, l)| l.as_str()).collect();
            let listed = three_point_names().count();
            if distinct.len() != p3.len() || listed != p3.len() {
                problems.push(format!(
                    "{} labels for {} listed names and {} classes",
                    distinct.len(),
                    listed,
                    p3.len()
                ));
            }
        }
        Err(e) => problems.push(format!("labelling failed: {e}")),
    }
    if elapsed >= POSET_K3_LIMIT {
        problems.push(format!("k=3 took {elapsed:?}"));
    }
    let detail = if problems.is_empty() {
        format!("4/8/34 classes, k=3 bijectively labelled, built in {elapsed:?}")
    } else {
        problems.join("; ")
    };
    report("1 (poset sizes)", problems.is_empty(), &detail);
}

#[test]
fn criterion_2_ideal_counts() {
    let mut problems = Vec::new();
    let mut elapsed = Duration::ZERO;
    for (k, want) in [(1, 6), (2, 16), (3, 2854)] {
        let p = shared_poset(k, None).unwrap();
        let start = Instant::now();
        let ideals = all_ideals(&p).unwrap();
        if k == 3 {
            elapsed = start.elapsed();
        }
        if ideals.len() != want {
            problems.push(format!("k={k}: {} ideals, want {want}", ideals.len()));
        }
        let via_filters = ideals_via_filters(&p).unwrap().len();
        if via_filters != want {
            problems.push(format!("k={k}: {via_filters} ideals through filters"));
        }
    }
    if elapsed >= IDEALS_K3_LIMIT {
        problems.push(format!("k=3 took {elapsed:?}"));
    }
    let detail = if problems.is_empty() {
        format!("6/16/2854 ideals, k=3 in {elapsed:?}")
    } else {
        problems.join("; ")
    };
    report("2 (ideal counts)", problems.is_empty(), &detail);
}

/// The `(2, C)`-closed ideals, as generator sets of their downsets.
const EXPECTED_CLOSED_IDEALS: &[(Closure, &[&[&str]])] = &[
    (
        Closure::XI,
        &[&["1"], &["id", "plus"], &["id", "lambda30"], &["id"], &["0"], &[]],
    ),
    (
        Closure::IX,
        &[&["1"], &["neg", "plus"], &["neg", "lambda31"], &["neg"], &["0"], &[]],
    ),
    (Closure::M, &[&["1"], &["id", "plus"], &["id"], &["0"], &[]]),
    (Closure::Mneg, &[&["1"], &["neg", "plus"], &["neg"], &["0"], &[]]),
    (Closure::R, &[&["1"], &["plus"], &["0"], &[]]),
];

#[test]
fn criterion_3_closed_ideals_at_rank_two() {
    let p = shared_poset(2, None).unwrap();
    let mut problems = Vec::new();
    let mut counts = Vec::new();
    for (c, lists) in EXPECTED_CLOSED_IDEALS {
        let want: BTreeSet<u64> = lists
            .iter()
            .map(|names| {
                let ids: Vec<usize> = names.iter().map(|n| p.find(n).unwrap()).collect();
                downset(&p, &ids).unwrap().members()
            })
            .collect();
        let got: BTreeSet<u64> = closed_ideals(&p, *c, 2).unwrap().iter().map(|t| t.members()).collect();
        counts.push(format!("{c} {}/{}", got.len(), want.len()));
        if got != want {
            let show = |set: &BTreeSet<u64>| {
                set.iter()
                    .map(|&m| {
                        let names: Vec<String> = (0..p.len())
                            .filter(|&e| m >> e & 1 == 1)
                            .map(|e| p.display_name(e))
                            .collect();
                        format!("{{{}}}", names.join(","))
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let missing: BTreeSet<u64> = want.difference(&got).copied().collect();
            let extra: BTreeSet<u64> = got.difference(&want).copied().collect();
            problems.push(format!("{c}: missing [{}], extra [{}]", show(&missing), show(&extra)));
        }
    }
    let detail = format!("{} {}", counts.join(", "), problems.join("; "));
    report("3 (closed ideals at k=2)", problems.is_empty(), detail.trim());
}

#[test]
fn criterion_4_rank_two_bijection() {
    let e = enumerate_clonoids(2).unwrap();
    let mut probes = Vec::new();
    for n in 1..=4 {
        for w in 0..1u64 << (1 << n) {
            probes.push(BoolFn::from_word(n, w).unwrap());
        }
    }
    let row = |member: &dyn Fn(&BoolFn) -> bool| -> Vec<bool> { probes.iter().map(member).collect() };
    let enumerated: Vec<Vec<bool>> = e
        .clonoids
        .iter()
        .map(|c| row(&|f: &BoolFn| c.descriptor.member(f)))
        .collect();
    let mut problems = Vec::new();
    let mut partnered = vec![0usize; enumerated.len()];
    for (name, _, _) in KNOWN_STABILITY {
        let class: NamedClass = name.parse().unwrap();
        let mine = row(&|f: &BoolFn| class.member(f));
        let hits: Vec<usize> = (0..enumerated.len()).filter(|&i| enumerated[i] == mine).collect();
        if hits.len() != 1 {
            problems.push(format!("{name} agrees with {} descriptors", hits.len()));
        }
        for i in hits {
            partnered[i] += 1;
        }
    }
    for (i, &n) in partnered.iter().enumerate() {
        if n != 1 {
            problems.push(format!("{} has {n} listed partners", e.clonoids[i].descriptor));
        }
    }
    let detail = if problems.is_empty() {
        format!(
            "{} listed classes match {} descriptors one-to-one on {} probes",
            KNOWN_STABILITY.len(),
            e.len(),
            probes.len()
        )
    } else {
        problems.join("; ")
    };
    report("4 (rank-2 bijection)", problems.is_empty(), &detail);
}

#[test]
fn criterion_5_stability_matrix() {
    let opts = CheckOptions {
        arity_cap: STABILITY_ARITY_CAP,
        ..CheckOptions::default()
    };
    let mut problems = Vec::new();
    let mut checks = 0;
    let mut slowest = Duration::ZERO;
    let mut run = |name: &str, side: Side, clone: &str, expect_pass: bool, problems: &mut Vec<String>| {
        let class: NamedClass = name.parse().unwrap();
        let pred = |f: &BoolFn| class.member(f);
        let start = Instant::now();
        let v = stability_check(&pred, side, &preset(clone).unwrap(), &opts).unwrap();
        let t = start.elapsed();
        slowest = slowest.max(t);
        checks += 1;
        let ok = if expect_pass { v.is_pass() } else { v.is_fail() };
        if !ok {
            problems.push(format!("{name} {side:?} {clone}: {v:?}"));
        }
        if t >= STABILITY_CHECK_LIMIT {
            problems.push(format!("{name} {side:?} {clone} took {t:?}"));
        }
    };
    let mut sides = BTreeSet::new();
    for (name, right, left) in KNOWN_STABILITY {
        for (side, clone) in [(Side::Right, *right), (Side::Left, *left)] {
            run(name, side, clone, true, &mut problems);
            for up in clone_upper_covers(clone).unwrap() {
                run(name, side, up, false, &mut problems);
                sides.insert(format!("{side:?}"));
            }
        }
    }
    let required = ["U2", "OO", "M", "ReflOO", "Vako"];
    for r in required {
        if !KNOWN_STABILITY.iter().any(|row| row.0 == r) {
            problems.push(format!("row {r} missing"));
        }
    }
    if sides.len() != 2 {
        problems.push("upper-cover failures not exercised on both sides".into());
    }
    let detail = if problems.is_empty() {
        format!("{} rows, {checks} checks, slowest {slowest:?}", KNOWN_STABILITY.len())
    } else {
        problems.join("; ")
    };
    report("5 (stability matrix)", problems.is_empty(), &detail);
}

/// `f ⪯ g` by transitive closure of the minorant and minor relations over
/// every function of arity at most 3.
fn brute_force_order() -> (Vec<BoolFn>, Vec<Vec<bool>>) {
    let mut fns = Vec::new();
    for n in 1..=3 {
        for w in 0..1u64 << (1 << n) {
            fns.push(BoolFn::from_word(n, w).unwrap());
        }
    }
    let index = |f: &BoolFn| fns.iter().position(|g| g == f).unwrap();
    let len = fns.len();
    let mut le = vec![vec![false; len]; len];
    for (j, g) in fns.iter().enumerate() {
        for (i, f) in fns.iter().enumerate() {
            if f.arity() == g.arity() && f.is_minorant_of(g).unwrap() {
                le[i][j] = true;
            }
        }
        for n in 1..=3 {
            for map in MinorMap::all(g.arity(), n).unwrap() {
                le[index(&g.minor(&map).unwrap())][j] = true;
            }
        }
    }
    for m in 0..len {
        for i in 0..len {
            if le[i][m] {
                let via = le[m].clone();
                for (dst, src) in le[i].iter_mut().zip(via) {
                    *dst |= src;
                }
            }
        }
    }
    (fns, le)
}

fn antichain_member(n: usize) -> BoolFn {
    BoolFn::from_fn(n, |r| {
        let w = r.count_ones() as usize;
        w == 1 || w == n - 1
    })
    .unwrap()
}

#[test]
fn criterion_6_oracle_equivalences() {
    let mut problems = Vec::new();
    let mut summary = Vec::new();

    // (i) the order on functions of arity ≤ 3 with at most 3 true points
    let (fns, le) = brute_force_order();
    let small: Vec<usize> = (0..fns.len()).filter(|&i| fns[i].count_true() <= 3).collect();
    let mut n_i = 0;
    for &i in &small {
        for &j in &small {
            n_i += 1;
            if minmin_le(&fns[i], &fns[j]) != le[i][j] {
                problems.push(format!("(i) {} vs {}", fns[i], fns[j]));
            }
        }
    }
    // The same comparison without the true-point bound.
    for i in 0..fns.len() {
        for j in 0..fns.len() {
            n_i += 1;
            if minmin_le(&fns[i], &fns[j]) != le[i][j] {
                problems.push(format!("(i) {} vs {}", fns[i], fns[j]));
            }
        }
    }
    summary.push(format!("(i) {n_i}"));

    // (ii) rank-k membership against the k-local closure of ↓Θ
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut n_ii = 0;
    for k in [2, 3] {
        let p = shared_poset(k, None).unwrap();
        let ideals = all_ideals(&p).unwrap();
        let picks: Vec<usize> = if ideals.len() <= 64 {
            (0..ideals.len()).collect()
        } else {
            (0..64).map(|_| rng.gen_range(0..ideals.len())).collect()
        };
        for t in picks {
            let theta = &ideals[t];
            for n in 1..=3 {
                let x = ideal_functions(theta, n).unwrap();
                let local: BTreeSet<BoolFn> = local_closure(&x, k, n).unwrap().into_iter().collect();
                for w in 0..1u64 << (1 << n) {
                    let f = BoolFn::from_word(n, w).unwrap();
                    n_ii += 1;
                    if member_klik(&f, theta) != local.contains(&f) {
                        problems.push(format!("(ii) k={k} {theta} {f}"));
                    }
                }
            }
        }
    }
    summary.push(format!("(ii) {n_ii}"));

    // (iii) decompositions of sampled semibisectable pairs
    let mut found = 0;
    let mut attempts = 0;
    while found < DECOMPOSITION_SAMPLES && attempts < 200_000 {
        attempts += 1;
        let k = rng.gen_range(2..=3);
        let gens: Vec<BoolFn> = (0..rng.gen_range(1..=2))
            .map(|_| {
                let n = rng.gen_range(1..=2);
                BoolFn::from_word(n, rng.gen_range(0..1u64 << (1 << n))).unwrap()
            })
            .collect();
        let n = rng.gen_range(2..=3);
        let f = BoolFn::from_word(n, rng.gen_range(0..1u64 << (1 << n))).unwrap();
        if f.is_constant() || !semibisectable(&f, &gens, k).unwrap() {
            continue;
        }
        let minors: BTreeSet<BoolFn> = gens
            .iter()
            .flat_map(|g| {
                MinorMap::all(g.arity(), n)
                    .unwrap()
                    .into_iter()
                    .map(|m| g.minor(&m).unwrap())
            })
            .collect();
        if minors.len() > 6 {
            continue;
        }
        found += 1;
        match decompose_via_mcuk(&f, &gens, k) {
            Ok(d) => {
                let inner_ok = d.inner.iter().cloned().collect::<BTreeSet<_>>() == minors
                    && d.inner == minors_of_arity(&gens, n).unwrap();
                let mcuk = NamedClass::ranked("McU", k).unwrap();
                if !inner_ok || d.h.compose(&d.inner).unwrap() != f || !mcuk.member(&d.h) {
                    problems.push(format!("(iii) {f} over {gens:?}"));
                }
            }
            Err(e) => problems.push(format!("(iii) {f} over {gens:?}: {e}")),
        }
    }
    if found < DECOMPOSITION_SAMPLES {
        problems.push(format!("(iii) only {found} semibisectable pairs sampled"));
    }
    summary.push(format!("(iii) {found} pairs"));

    // (iv) the weight-{1, n-1} family is an antichain
    let family: Vec<BoolFn> = (3..=6).map(antichain_member).collect();
    for (i, f) in family.iter().enumerate() {
        for (j, g) in family.iter().enumerate() {
            if minmin_le(f, g) != (i == j) {
                problems.push(format!("(iv) f{} vs f{}", i + 3, j + 3));
            }
        }
    }
    summary.push("(iv) 16 pairs".into());

    if n_i < ORACLE_MIN_ASSERTIONS || n_ii < ORACLE_MIN_ASSERTIONS {
        problems.push(format!("too few assertions: {n_i}, {n_ii}"));
    }
    problems.truncate(10);
    let detail = if problems.is_empty() {
        format!("zero failures: {}", summary.join(", "))
    } else {
        problems.join("; ")
    };
    report("6 (oracle equivalences)", problems.is_empty(), &detail);
}

#[test]
fn criterion_7_cover_graph_at_rank_two() {
    let e = shared_enumeration(2).unwrap();
    let mut problems = Vec::new();
    let mut edges = 0;
    for i in 0..e.len() {
        let me = &e.clonoids[i];
        let covers = e.lower_covers(i).unwrap();
        for &j in &covers {
            edges += 1;
            let lower = &e.clonoids[j];
            if !lower.fingerprint.is_strict_subset(&me.fingerprint) || !lower.extended.is_subset(&me.extended) {
                problems.push(format!("{} is not below {}", lower.display_name(), me.display_name()));
            }
            let between = e.clonoids.iter().find(|m| {
                lower.fingerprint.is_strict_subset(&m.fingerprint) && m.fingerprint.is_strict_subset(&me.fingerprint)
            });
            if let Some(m) = between {
                problems.push(format!(
                    "{} lies between {} and {}",
                    m.display_name(),
                    lower.display_name(),
                    me.display_name()
                ));
            }
        }
        // Every strictly smaller clonoid lies below some returned cover.
        for (j, other) in e.clonoids.iter().enumerate() {
            if other.fingerprint.is_strict_subset(&me.fingerprint)
                && !covers
                    .iter()
                    .any(|&c| other.fingerprint.is_subset(&e.clonoids[c].fingerprint))
            {
                problems.push(format!(
                    "{} is below {} but under no cover",
                    e.clonoids[j].display_name(),
                    me.display_name()
                ));
            }
        }
    }
    let nimp = klik(2, &["nimp"]).unwrap();
    let below = lower_covers(&nimp, 2).unwrap();
    let vako: NamedClass = "Vako".parse().unwrap();
    let vako_fp = e.probes().of_predicate(|f| vako.member(f));
    let unique_vako = below.len() == 1 && e.probes().fingerprint(&below[0]).unwrap() == vako_fp;
    if !unique_vako {
        let shown: Vec<String> = below.iter().map(|d| d.to_string()).collect();
        problems.push(format!("lower covers of {nimp}: [{}]", shown.join(", ")));
    }
    let detail = if problems.is_empty() {
        format!(
            "{} clonoids, {edges} cover edges, unique lower cover of {nimp} is Vako",
            e.len()
        )
    } else {
        problems.join("; ")
    };
    report("7 (cover graph at k=2)", problems.is_empty(), &detail);
}

#[test]
fn weight_family_base_case() {
    assert_eq!(antichain_member(3), b("3:7e"));
}
