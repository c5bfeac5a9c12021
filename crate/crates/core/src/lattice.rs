//! Order ideals of the class posets, `(k, C)`-closedness, and closed ideals.

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::bf_core::Closure;
use crate::error::{Error, Result};
use crate::poset::{shared_poset, Poset};

/// Largest poset accepted by the ideal enumerations.
pub const MAX_IDEAL_POSET: usize = 40;

/// A downset of a [`Poset`], stored as a bitmask over its elements.
#[derive(Clone)]
pub struct Ideal {
    poset: Arc<Poset>,
    members: u64,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && self.poset.k == other.poset.k && self.poset.closure == other.poset.closure
    }
}

impl Eq for Ideal {}

impl std::hash::Hash for Ideal {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.hash(state);
        self.poset.k.hash(state);
    }
}

fn check_size(p: &Poset) -> Result<()> {
    if p.len() > 64 {
        return Err(Error::Capacity(format!(
            "ideals need at most 64 poset elements, poset has {}",
            p.len()
        )));
    }
    Ok(())
}

fn below_masks(p: &Poset) -> Vec<u64> {
    (0..p.len())
        .map(|j| (0..p.len()).filter(|&i| p.leq(i, j)).fold(0u64, |m, i| m | 1 << i))
        .collect()
}

fn above_masks(p: &Poset) -> Vec<u64> {
    (0..p.len())
        .map(|i| (0..p.len()).filter(|&j| p.leq(i, j)).fold(0u64, |m, j| m | 1 << j))
        .collect()
}

impl Ideal {
    /// Wraps a member mask, checking that it is downward closed.
    pub fn from_members(poset: &Arc<Poset>, members: u64) -> Result<Ideal> {
        check_size(poset)?;
        let below = below_masks(poset);
        for (i, b) in below.iter().enumerate() {
            if members >> i & 1 == 1 && b & !members != 0 {
                return Err(Error::Precondition(format!("{members:#x} is not a downset")));
            }
        }
        Ok(Ideal {
            poset: Arc::clone(poset),
            members,
        })
    }

    pub fn empty(poset: &Arc<Poset>) -> Ideal {
        Ideal {
            poset: Arc::clone(poset),
            members: 0,
        }
    }

    pub fn full(poset: &Arc<Poset>) -> Ideal {
        let n = poset.len();
        Ideal {
            poset: Arc::clone(poset),
            members: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
        }
    }

    /// Downset of elements named by registry name or truth table.
    pub fn from_names(poset: &Arc<Poset>, names: &[&str]) -> Result<Ideal> {
        let ids = names.iter().map(|n| poset.find(n)).collect::<Result<Vec<_>>>()?;
        downset(poset, &ids)
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn members(&self) -> u64 {
        self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 64 && self.members >> i & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.members.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.members == 0
    }

    pub fn ids(&self) -> Vec<usize> {
        (0..self.poset.len()).filter(|&i| self.contains(i)).collect()
    }

    /// Maximal members, as an antichain.
    pub fn maxima(&self) -> Vec<usize> {
        let ids = self.ids();
        ids.iter()
            .copied()
            .filter(|&i| !ids.iter().any(|&j| j != i && self.poset.leq(i, j)))
            .collect()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.members & !other.members == 0
    }

    pub fn union(&self, other: &Ideal) -> Ideal {
        Ideal {
            poset: Arc::clone(&self.poset),
            members: self.members | other.members,
        }
    }

    pub fn intersection(&self, other: &Ideal) -> Ideal {
        Ideal {
            poset: Arc::clone(&self.poset),
            members: self.members & other.members,
        }
    }

    /// Lower covers in the ideal lattice: remove one maximal element.
    pub fn lower_covers(&self) -> Vec<Ideal> {
        self.maxima()
            .into_iter()
            .map(|m| Ideal {
                poset: Arc::clone(&self.poset),
                members: self.members & !(1 << m),
            })
            .collect()
    }

    /// Same member set as an ideal of another poset with the same elements
    /// and at least as many order relations.
    pub fn with_poset(&self, poset: &Arc<Poset>) -> Result<Ideal> {
        Ideal::from_members(poset, self.members)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "members": self.ids(),
            "maxima": self.maxima().iter().map(|&i| self.poset.display_name(i)).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.maxima().iter().map(|&i| self.poset.display_name(i)).collect();
        write!(f, "↓{{{}}}", names.join(","))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({self})")
    }
}

impl Serialize for Ideal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

pub fn downset(p: &Arc<Poset>, xs: &[usize]) -> Result<Ideal> {
    check_size(p)?;
    let mut members = 0u64;
    for &x in xs {
        if x >= p.len() {
            return Err(Error::Precondition(format!("element {x} not in poset")));
        }
        for i in 0..p.len() {
            if p.leq(i, x) {
                members |= 1 << i;
            }
        }
    }
    Ok(Ideal {
        poset: Arc::clone(p),
        members,
    })
}

/// Every ideal, by depth-first search over antichains. Sorted by size, then mask.
pub fn all_ideals(p: &Arc<Poset>) -> Result<Vec<Ideal>> {
    if p.len() > MAX_IDEAL_POSET {
        return Err(Error::Capacity(format!(
            "ideal enumeration limited to {MAX_IDEAL_POSET} elements, poset has {}",
            p.len()
        )));
    }
    let n = p.len();
    let below = below_masks(p);
    let above = above_masks(p);
    let mut out = Vec::new();
    // `blocked` holds elements comparable to some chosen antichain member.
    fn rec(n: usize, start: usize, blocked: u64, ideal: u64, below: &[u64], above: &[u64], out: &mut Vec<u64>) {
        out.push(ideal);
        for i in start..n {
            if blocked >> i & 1 == 0 {
                rec(
                    n,
                    i + 1,
                    blocked | below[i] | above[i],
                    ideal | below[i],
                    below,
                    above,
                    out,
                );
            }
        }
    }
    rec(n, 0, 0, 0, &below, &above, &mut out);
    out.sort_by_key(|m| (m.count_ones(), *m));
    out.dedup();
    Ok(out
        .into_iter()
        .map(|members| Ideal {
            poset: Arc::clone(p),
            members,
        })
        .collect())
}

/// Ideals as complements of order filters, built by deciding elements from
/// the top down. Independent of [`all_ideals`]; sorted the same way.
pub fn ideals_via_filters(p: &Arc<Poset>) -> Result<Vec<u64>> {
    if p.len() > MAX_IDEAL_POSET {
        return Err(Error::Capacity(format!("{} elements", p.len())));
    }
    let n = p.len();
    let above = above_masks(p);
    // Linear extension: fewer elements below comes first.
    let below = below_masks(p);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (below[i].count_ones(), i));
    order.reverse();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut filters = Vec::new();
    fn rec(pos: usize, order: &[usize], above: &[u64], filter: u64, out: &mut Vec<u64>) {
        if pos == order.len() {
            out.push(filter);
            return;
        }
        let x = order[pos];
        rec(pos + 1, order, above, filter, out);
        let strictly_above = above[x] & !(1 << x);
        if strictly_above & !filter == 0 {
            rec(pos + 1, order, above, filter | 1 << x, out);
        }
    }
    rec(0, &order, &above, 0, &mut filters);
    let mut ideals: Vec<u64> = filters.into_iter().map(|f| full & !f).collect();
    ideals.sort_by_key(|m| (m.count_ones(), *m));
    Ok(ideals)
}

/// For each element `e`, the classes of `χ_T` over `T ⊆ (rep_e^C)⁻¹(1)` of
/// size `min(k, |T|)`; an ideal `Θ` is `(k, C)`-closed iff it contains these
/// for each of its members.
pub fn closure_requirements(p: &Poset, c: Closure) -> Result<Vec<u64>> {
    if p.closure.is_some() {
        return Err(Error::Precondition(
            "requirements are defined on the unclosed poset".into(),
        ));
    }
    check_size(p)?;
    type Cache = Mutex<HashMap<(usize, Closure), Vec<u64>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("requirement cache").get(&(p.k, c)) {
        return Ok(v.clone());
    }
    let req: Vec<u64> = (0..p.len())
        .map(|e| p.restriction_signature(&p.rep(e).closure(c)))
        .collect();
    cache.lock().expect("requirement cache").insert((p.k, c), req.clone());
    Ok(req)
}

/// Whether every member's `C`-closure has all its at most `k`-point
/// restrictions inside the ideal.
pub fn is_kc_closed(theta: &Ideal, c: Closure, k: usize) -> Result<bool> {
    if k != theta.poset.k || theta.poset.closure.is_some() {
        return Err(Error::Precondition(format!(
            "ideal belongs to the rank-{} poset, not rank {k}",
            theta.poset.k
        )));
    }
    let req = closure_requirements(&theta.poset, c)?;
    Ok(theta.ids().iter().all(|&e| req[e] & !theta.members == 0))
}

/// Closed ideals, cross-checked against the ideals of the `⪯_C` quotient.
pub fn closed_ideals(p: &Arc<Poset>, c: Closure, k: usize) -> Result<Vec<Ideal>> {
    let mut closed = Vec::new();
    for ideal in all_ideals(p)? {
        if is_kc_closed(&ideal, c, k)? {
            closed.push(ideal);
        }
    }
    let quotient = shared_poset(p.k, Some(c))?;
    let mut via_quotient: Vec<u64> = all_ideals(&quotient)?
        .iter()
        .map(|q| {
            (0..p.len())
                .filter(|&i| q.contains(quotient.base_class(i)))
                .fold(0u64, |m, i| m | 1 << i)
        })
        .collect();
    via_quotient.sort_by_key(|m| (m.count_ones(), *m));
    let direct: Vec<u64> = closed.iter().map(|i| i.members).collect();
    if direct != via_quotient {
        return Err(Error::Consistency(format!(
            "{c}-closed ideals: {} by definition, {} from the quotient poset",
            direct.len(),
            via_quotient.len()
        )));
    }
    Ok(closed)
}

/// The union of all `(k, C)`-closed ideals contained in `Θ`.
pub fn largest_closed_subset(theta: &Ideal, c: Closure, k: usize) -> Result<Ideal> {
    if k != theta.poset.k {
        return Err(Error::Precondition(format!("rank {k} does not match the ideal")));
    }
    let req = closure_requirements(&theta.poset, c)?;
    let below = below_masks(&theta.poset);
    let mut m = theta.members;
    loop {
        let mut next = m;
        for e in 0..theta.poset.len() {
            if next >> e & 1 == 1 && (req[e] & !m != 0 || below[e] & !m != 0) {
                next &= !(1 << e);
            }
        }
        if next == m {
            break;
        }
        m = next;
    }
    Ok(Ideal {
        poset: Arc::clone(&theta.poset),
        members: m,
    })
}

/// DOT drawing of a family of ideals ordered by inclusion.
pub fn ideal_lattice_dot(ideals: &[Ideal]) -> String {
    let mut out = String::from("digraph ideals {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, x) in ideals.iter().enumerate() {
        let name = x.to_string();
        let _ = writeln!(out, "  i{i} [label=\"{}\"];", name.replace('"', "'"));
    }
    for (i, x) in ideals.iter().enumerate() {
        for (j, y) in ideals.iter().enumerate() {
            if i != j
                && x.is_subset(y)
                && !ideals
                    .iter()
                    .enumerate()
                    .any(|(l, z)| l != i && l != j && x.is_subset(z) && z.is_subset(y))
            {
                let _ = writeln!(out, "  i{i} -> i{j};");
            }
        }
    }
    out.push_str("}\n");
    out
}
