//! Local closures, reduction of generating sets to few true points, and
//! changing the rank of a `K_ℓ(Θ)` description.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::member_klik;
use crate::bf_core::BoolFn;
use crate::error::{Error, Result};
use crate::lattice::Ideal;
use crate::order::canonical_class;
use crate::poset::{shared_poset, MAX_RANK};

/// Largest arity for which local closures are listed exhaustively.
pub const LOCAL_MAX_ARITY: usize = 4;

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, start: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..=n - (size - cur.len()) {
            cur.push(i);
            rec(n, i + 1, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size <= n {
        rec(n, 0, size, &mut Vec::with_capacity(size), &mut out);
    }
    out
}

fn pattern(f: &BoolFn, rows: &[usize]) -> usize {
    rows.iter()
        .enumerate()
        .fold(0, |p, (i, &r)| p | (f.get(r) as usize) << i)
}

/// All `n`-ary functions agreeing on every set of at most `l` points with
/// some `n`-ary member of `x`.
pub fn local_closure(x: &[BoolFn], l: usize, n: usize) -> Result<Vec<BoolFn>> {
    if n == 0 || n > LOCAL_MAX_ARITY {
        return Err(Error::Capacity(format!(
            "local closures are listed for arity 1..={LOCAL_MAX_ARITY}, not {n}"
        )));
    }
    let rows = 1usize << n;
    let size = l.min(rows);
    if size > 6 {
        return Err(Error::Capacity(format!(
            "restrictions to {size} points are not supported"
        )));
    }
    let members: Vec<&BoolFn> = x.iter().filter(|g| g.arity() == n).collect();
    let sets = subsets(rows, size);
    let allowed: Vec<u64> = sets
        .iter()
        .map(|s| members.iter().fold(0u64, |m, g| m | 1 << pattern(g, s)))
        .collect();
    let mut out = Vec::new();
    for w in 0..1u64 << rows {
        let f = BoolFn::from_word(n, w)?;
        if sets.iter().zip(&allowed).all(|(s, &a)| a >> pattern(&f, s) & 1 == 1) {
            out.push(f);
        }
    }
    Ok(out)
}

/// The `n`-ary functions of `↓Θ`, i.e. those with at most `k` true points
/// whose class lies in the ideal.
pub fn ideal_functions(theta: &Ideal, n: usize) -> Result<Vec<BoolFn>> {
    if n == 0 || n > LOCAL_MAX_ARITY {
        return Err(Error::Capacity(format!(
            "ideal members are listed for arity 1..={LOCAL_MAX_ARITY}, not {n}"
        )));
    }
    let p = theta.poset();
    let mut out = Vec::new();
    for w in 0..1u64 << (1 << n) {
        if w.count_ones() as usize <= p.k {
            let f = BoolFn::from_word(n, w)?;
            if theta.contains(p.class_of(&f)?) {
                out.push(f);
            }
        }
    }
    Ok(out)
}

/// Class representatives of the minorants with at most `l` true points of
/// the members of `theta`. They generate the same `K_l` class.
pub fn normalize_theta(theta: &[BoolFn], l: usize) -> Result<Vec<BoolFn>> {
    let mut out = BTreeSet::new();
    for f in theta {
        let rows = f.true_rows();
        for size in 0..=l.min(rows.len()) {
            for s in subsets(rows.len(), size) {
                let chi = BoolFn::from_indices(f.arity(), s.iter().map(|&i| rows[i]))?;
                out.insert(canonical_class(&chi)?.representative().clone());
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// The ideal `Ψ` of the rank-`k` poset with `K_l(Θ) = K_k(Ψ)`, checked on all
/// functions of arity at most 3.
pub fn lift_rank(theta: &Ideal, l: usize, k: usize) -> Result<Ideal> {
    if theta.poset().k != l || theta.poset().closure.is_some() {
        return Err(Error::Precondition(format!(
            "the ideal does not belong to the rank-{l} poset"
        )));
    }
    if l == 0 || l > k || k > MAX_RANK {
        return Err(Error::Precondition(format!(
            "need 1 ≤ l ≤ k ≤ {MAX_RANK}, got l = {l}, k = {k}"
        )));
    }
    let target = shared_poset(k, None)?;
    let members = (0..target.len())
        .filter(|&e| member_klik(target.rep(e), theta))
        .fold(0u64, |m, e| m | 1 << e);
    let psi = Ideal::from_members(&target, members)?;
    for n in 1..=3 {
        for w in 0..1u64 << (1 << n) {
            let f = BoolFn::from_word(n, w)?;
            if member_klik(&f, theta) != member_klik(&f, &psi) {
                return Err(Error::Consistency(format!(
                    "lifting {theta} from rank {l} to {k} changes membership of {f}"
                )));
            }
        }
    }
    Ok(psi)
}

/// Shorthand used by tests and the command line: the ideal `↓names` of the
/// unclosed rank-`k` poset.
pub fn ideal_of(k: usize, names: &[&str]) -> Result<Ideal> {
    let p: Arc<_> = shared_poset(k, None)?;
    Ideal::from_names(&p, names)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn local_closure_of_u2_at_arity_two() {
        let theta = ideal_of(2, &["id"]).unwrap();
        let x = ideal_functions(&theta, 2).unwrap();
        let got: Vec<String> = local_closure(&x, 2, 2).unwrap().iter().map(|f| f.to_string()).collect();
        // 0, ↛ both ways, ∧, and the two projections.
        assert_eq!(got, ["2:0", "2:2", "2:4", "2:8", "2:a", "2:c"]);
    }

    #[test]
    fn local_closure_is_extensive_and_idempotent() {
        let x: Vec<BoolFn> = ["2:6", "2:1", "2:8"].iter().map(|s| s.parse().unwrap()).collect();
        for l in 1..=3 {
            let once = local_closure(&x, l, 2).unwrap();
            assert!(x.iter().all(|f| once.contains(f)));
            assert_eq!(local_closure(&once, l, 2).unwrap(), once);
        }
    }

    #[test]
    fn normalization_examples() {
        let one: BoolFn = "1:3".parse().unwrap();
        let got: Vec<String> = normalize_theta(&[one], 1)
            .unwrap()
            .iter()
            .map(|f| f.to_string())
            .collect();
        assert_eq!(got, ["1:0", "1:1", "1:2"]);
        let mu: BoolFn = "3:e8".parse().unwrap();
        let reps = normalize_theta(&[mu], 2).unwrap();
        let pair = canonical_class(&BoolFn::from_indices(3, [3, 5]).unwrap()).unwrap();
        assert!(reps.contains(pair.representative()));
        assert!(reps.iter().all(|f| f.count_true() <= 2));
    }

    #[test]
    fn lifting_examples() {
        let up = lift_rank(&ideal_of(1, &["id"]).unwrap(), 1, 2).unwrap();
        assert_eq!(up, ideal_of(2, &["id", "plus"]).unwrap());
        let up = lift_rank(&ideal_of(1, &["neg"]).unwrap(), 1, 2).unwrap();
        assert_eq!(up, ideal_of(2, &["neg", "plus"]).unwrap());
        let same = ideal_of(2, &["lambda30"]).unwrap();
        assert_eq!(lift_rank(&same, 2, 2).unwrap(), same);
    }
}
