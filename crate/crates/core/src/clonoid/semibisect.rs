//! `(G, k)`-semibisectable functions and their decomposition through a
//! monotone, constant-preserving, `k`-wise 1-separating outer function.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::bf_core::{BoolFn, MinorMap, NamedClass, MAX_ARITY};
use crate::error::{Error, Result};

/// All `n`-ary minors of the functions in `gens`, sorted and deduplicated.
pub fn minors_of_arity(gens: &[BoolFn], n: usize) -> Result<Vec<BoolFn>> {
    let mut out = BTreeSet::new();
    for g in gens {
        for map in MinorMap::all(g.arity(), n)? {
            out.insert(g.minor(&map)?);
        }
    }
    Ok(out.into_iter().collect())
}

fn check_rank(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::Precondition("the rank k must be a positive integer".into()));
    }
    Ok(())
}

/// Whether every `min(k, |T|)`-subset of the rows in `sets` (each a bitmask
/// over some index set, one per row) has a common index.
fn k_wise_common(sets: &[Vec<u64>], k: usize) -> bool {
    let size = k.min(sets.len());
    fn rec(sets: &[Vec<u64>], start: usize, left: usize, acc: &[u64]) -> bool {
        if left == 0 {
            return true;
        }
        for i in start..=sets.len() - left {
            let next: Vec<u64> = acc.iter().zip(&sets[i]).map(|(a, b)| a & b).collect();
            if next.iter().all(|&w| w == 0) || !rec(sets, i + 1, left - 1, &next) {
                return false;
            }
        }
        true
    }
    match sets.first() {
        None => true,
        Some(first) => rec(sets, 0, size, &vec![u64::MAX; first.len()]),
    }
}

/// For each row of `f`'s domain, the set of indices `i` with `taus[i]` true there.
fn row_sets(taus: &[BoolFn], rows: &[usize]) -> Vec<Vec<u64>> {
    let words = taus.len().div_ceil(64).max(1);
    rows.iter()
        .map(|&r| {
            let mut v = vec![0u64; words];
            for (i, t) in taus.iter().enumerate() {
                if t.get(r) {
                    v[i / 64] |= 1 << (i % 64);
                }
            }
            v
        })
        .collect()
}

/// Conditions (A) and (B): any `k` true points are all true in some member of
/// `G_n`, and every (true, false) pair of points is separated by one.
pub fn semibisectable(f: &BoolFn, gens: &[BoolFn], k: usize) -> Result<bool> {
    check_rank(k)?;
    if f.is_constant() {
        return Err(Error::Precondition(format!("{f} is constant")));
    }
    let taus = minors_of_arity(gens, f.arity())?;
    let ones = row_sets(&taus, &f.true_rows());
    let zeros = row_sets(&taus, &f.false_rows());
    if !k_wise_common(&ones, k) {
        return Ok(false);
    }
    let separated = ones
        .iter()
        .all(|a| zeros.iter().all(|b| a.iter().zip(b).any(|(x, y)| x & !y != 0)));
    Ok(separated)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    /// Outer function, one argument per inner function.
    pub h: BoolFn,
    /// The `n`-ary minors of the generators, in sorted order.
    pub inner: Vec<BoolFn>,
}

/// Writes `f = h(φ_1, ..., φ_N)` with `φ_i` the `n`-ary minors of `gens` and
/// `h` the characteristic function of the up-closure of `φ(f⁻¹(1))`.
pub fn decompose_via_mcuk(f: &BoolFn, gens: &[BoolFn], k: usize) -> Result<Decomposition> {
    check_rank(k)?;
    if f.is_constant() {
        return Err(Error::Precondition(format!("{f} is constant")));
    }
    let inner = minors_of_arity(gens, f.arity())?;
    let big = inner.len();
    if big == 0 || big > MAX_ARITY {
        return Err(Error::Capacity(format!(
            "{big} minors of arity {} do not fit an outer function (at most {MAX_ARITY})",
            f.arity()
        )));
    }
    let image = |row: usize| {
        inner
            .iter()
            .enumerate()
            .fold(0usize, |v, (i, t)| v | (t.get(row) as usize) << (big - 1 - i))
    };
    let t: BTreeSet<usize> = f.true_rows().into_iter().map(image).collect();
    let fs: BTreeSet<usize> = f.false_rows().into_iter().map(image).collect();
    let t: Vec<usize> = t.into_iter().collect();
    let sets: Vec<Vec<u64>> = t.iter().map(|&u| vec![u as u64]).collect();
    if !k_wise_common(&sets, k) {
        return Err(Error::Precondition(format!(
            "{f}: some {k} images of true points meet in 0, so it is not semibisectable"
        )));
    }
    if let Some((u, v)) = t
        .iter()
        .flat_map(|&u| fs.iter().map(move |&v| (u, v)))
        .find(|&(u, v)| u & !v == 0)
    {
        return Err(Error::Precondition(format!(
            "{f}: image {u:b} of a true point lies below image {v:b} of a false point"
        )));
    }
    let h = BoolFn::from_fn(big, |x| t.iter().any(|&u| u & !x == 0))?;
    if h.compose(&inner)? != *f {
        return Err(Error::Consistency(format!("recomposition of {f} differs")));
    }
    let mcuk = NamedClass::ranked("McU", k)?;
    if !mcuk.member(&h) {
        return Err(Error::Consistency(format!("{h} is outside {mcuk}")));
    }
    Ok(Decomposition { h, inner })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BoolFn {
        s.parse().unwrap()
    }

    #[test]
    fn semibisectable_examples() {
        let id = vec![b("1:2")];
        assert!(semibisectable(&b("3:e8"), &id, 2).unwrap());
        assert!(!semibisectable(&b("2:6"), &id, 2).unwrap());
        assert!(semibisectable(&b("3:e0"), &id, 2).unwrap());
        assert!(!semibisectable(&b("3:e8"), &id, 3).unwrap());
        assert!(semibisectable(&b("1:0"), &id, 2).is_err());
        assert!(semibisectable(&b("3:e8"), &id, 0).is_err());
    }

    #[test]
    fn decompositions() {
        let id = vec![b("1:2")];
        let d = decompose_via_mcuk(&b("3:e8"), &id, 2).unwrap();
        assert_eq!(d.h, b("3:e8"));
        assert_eq!(d.inner.len(), 3);
        let pr1 = b("2:c");
        let d = decompose_via_mcuk(&pr1, &id, 2).unwrap();
        assert_eq!(d.h.compose(&d.inner).unwrap(), pr1);
        assert!(matches!(
            decompose_via_mcuk(&b("2:6"), &id, 2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn minors_of_identity_are_projections() {
        let m = minors_of_arity(&[b("1:2")], 3).unwrap();
        assert_eq!(m.len(), 3);
        let m = minors_of_arity(&[b("2:8")], 2).unwrap();
        // x∧y, y∧x are equal; x∧x and y∧y are projections.
        assert_eq!(m.len(), 3);
    }
}
