//! Clonoids over the clone of monotone, constant-preserving, `k`-wise
//! 1-separating functions: descriptors, membership, enumeration, and covers.

pub mod local;
pub mod presets;
pub mod semibisect;
pub mod stability;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bf_core::{BoolFn, Closure, NamedClass, FIXED_CLONOID_CLASSES};
use crate::error::{Error, Result};
use crate::lattice::{all_ideals, closed_ideals, downset, is_kc_closed, Ideal};
use crate::poset::{shared_poset, Poset};

pub use local::{ideal_functions, ideal_of, lift_rank, local_closure, normalize_theta};
pub use presets::{all_presets, preset, ClonePreset, CLONE_UPPER_COVERS, KNOWN_STABILITY};
pub use semibisect::{decompose_via_mcuk, minors_of_arity, semibisectable, Decomposition};
pub use stability::{
    clone_closure_bounded, stability_check, theta_right_stability, CheckOptions, Counterexample, Side, Verdict,
};

/// The classes intersected with `K_k(Θ)` in the enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Meet {
    OICO,
    OI,
    IOCO,
    IO,
    Mo,
    Mc,
    Mineg,
    Mcneg,
    ReflOO,
}

impl Meet {
    pub const ALL: [Meet; 9] = [
        Meet::OICO,
        Meet::OI,
        Meet::IOCO,
        Meet::IO,
        Meet::Mo,
        Meet::Mc,
        Meet::Mineg,
        Meet::Mcneg,
        Meet::ReflOO,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Meet::OICO => "OICO",
            Meet::OI => "OI",
            Meet::IOCO => "IOCO",
            Meet::IO => "IO",
            Meet::Mo => "Mo",
            Meet::Mc => "Mc",
            Meet::Mineg => "Mineg",
            Meet::Mcneg => "Mcneg",
            Meet::ReflOO => "ReflOO",
        }
    }

    /// The closure under which `Θ` must be closed for this meet.
    pub fn closure(self) -> Closure {
        match self {
            Meet::OICO | Meet::OI => Closure::XI,
            Meet::IOCO | Meet::IO => Closure::IX,
            Meet::Mo | Meet::Mc => Closure::M,
            Meet::Mineg | Meet::Mcneg => Closure::Mneg,
            Meet::ReflOO => Closure::R,
        }
    }

    pub fn class(self) -> NamedClass {
        self.name().parse().expect("meet classes are registered")
    }

    pub fn inner_negated(self) -> Meet {
        match self {
            Meet::OICO => Meet::IOCO,
            Meet::IOCO => Meet::OICO,
            Meet::OI => Meet::IO,
            Meet::IO => Meet::OI,
            Meet::Mo => Meet::Mineg,
            Meet::Mineg => Meet::Mo,
            Meet::Mc => Meet::Mcneg,
            Meet::Mcneg => Meet::Mc,
            Meet::ReflOO => Meet::ReflOO,
        }
    }

    fn index(self) -> usize {
        Meet::ALL.iter().position(|&m| m == self).expect("listed")
    }
}

impl fmt::Display for Meet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Meet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.strip_prefix("cl").unwrap_or(s);
        Meet::ALL
            .iter()
            .copied()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::UnknownClass(format!("{s} is not one of the meet classes")))
    }
}

/// Whether every at most `k`-point restriction of `f` lies in `↓Θ`.
pub fn member_klik(f: &BoolFn, theta: &Ideal) -> bool {
    theta.poset().for_each_restriction(f, |c| theta.contains(c))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ClonoidDescriptor {
    Klik(Ideal),
    KlikMeet(Ideal, Meet),
    Named(NamedClass),
}

impl ClonoidDescriptor {
    pub fn k(&self) -> Option<usize> {
        match self {
            ClonoidDescriptor::Klik(t) | ClonoidDescriptor::KlikMeet(t, _) => Some(t.poset().k),
            ClonoidDescriptor::Named(_) => None,
        }
    }

    pub fn theta(&self) -> Option<&Ideal> {
        match self {
            ClonoidDescriptor::Klik(t) | ClonoidDescriptor::KlikMeet(t, _) => Some(t),
            ClonoidDescriptor::Named(_) => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ClonoidDescriptor::Klik(t) => {
                if t.poset().closure.is_some() {
                    return Err(Error::InvalidDescriptor(
                        "Θ must be an ideal of the unclosed poset".into(),
                    ));
                }
            }
            ClonoidDescriptor::KlikMeet(t, m) => {
                if t.poset().closure.is_some() {
                    return Err(Error::InvalidDescriptor(
                        "Θ must be an ideal of the unclosed poset".into(),
                    ));
                }
                if t.is_empty() {
                    return Err(Error::InvalidDescriptor(format!(
                        "the meet with {m} needs a nonempty Θ"
                    )));
                }
                if !is_kc_closed(t, m.closure(), t.poset().k)? {
                    return Err(Error::InvalidDescriptor(format!(
                        "{t} is not closed under the {} closure",
                        m.closure()
                    )));
                }
            }
            ClonoidDescriptor::Named(c) => {
                if !FIXED_CLONOID_CLASSES.contains(&c.name()) {
                    return Err(Error::InvalidDescriptor(format!(
                        "{c} is not one of the fixed clonoid classes"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Membership without validation.
    pub fn member(&self, f: &BoolFn) -> bool {
        match self {
            ClonoidDescriptor::Klik(t) => member_klik(f, t),
            ClonoidDescriptor::KlikMeet(t, m) => m.class().member(f) && member_klik(f, t),
            ClonoidDescriptor::Named(c) => c.member(f),
        }
    }

    /// The descriptor of `{f^n : f ∈ K}`.
    pub fn inner_negated(&self) -> Result<ClonoidDescriptor> {
        let negate = |t: &Ideal| -> Result<Ideal> {
            let p = t.poset();
            let mut m = 0u64;
            for e in t.ids() {
                m |= 1 << p.class_of(&p.rep(e).inner_negation())?;
            }
            Ideal::from_members(p, m)
        };
        Ok(match self {
            ClonoidDescriptor::Klik(t) => ClonoidDescriptor::Klik(negate(t)?),
            ClonoidDescriptor::KlikMeet(t, m) => ClonoidDescriptor::KlikMeet(negate(t)?, m.inner_negated()),
            ClonoidDescriptor::Named(c) => ClonoidDescriptor::Named(c.inner_negated()?),
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            ClonoidDescriptor::Klik(t) => serde_json::json!({
                "variant": "Klik",
                "k": t.poset().k,
                "theta": t.ids(),
                "label": self.to_string(),
            }),
            ClonoidDescriptor::KlikMeet(t, m) => serde_json::json!({
                "variant": "KlikMeet",
                "k": t.poset().k,
                "theta": t.ids(),
                "meet": m.name(),
                "label": self.to_string(),
            }),
            ClonoidDescriptor::Named(c) => serde_json::json!({
                "variant": "Named",
                "named": c.name(),
                "label": self.to_string(),
            }),
        }
    }
}

impl fmt::Display for ClonoidDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClonoidDescriptor::Klik(t) => write!(f, "K{}({t})", t.poset().k),
            ClonoidDescriptor::KlikMeet(t, m) => write!(f, "K{}({t}) ∩ {m}", t.poset().k),
            ClonoidDescriptor::Named(c) => write!(f, "{c}"),
        }
    }
}

impl Serialize for ClonoidDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Membership of a class over a probe family.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    bits: Vec<u64>,
    len: usize,
}

impl Fingerprint {
    fn from_fn(len: usize, mut member: impl FnMut(usize) -> bool) -> Fingerprint {
        let mut bits = vec![0u64; len.div_ceil(64)];
        for i in 0..len {
            if member(i) {
                bits[i / 64] |= 1 << (i % 64);
            }
        }
        Fingerprint { bits, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &Fingerprint) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn is_strict_subset(&self, other: &Fingerprint) -> bool {
        self.is_subset(other) && self != other
    }

    /// FNV-1a over the membership words.
    pub fn hash(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for w in &self.bits {
            for b in w.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        }
        h
    }

    fn and(&self, other: &[u64]) -> Fingerprint {
        Fingerprint {
            bits: self.bits.iter().zip(other).map(|(a, b)| a & b).collect(),
            len: self.len,
        }
    }
}

/// Test functions with their restriction signatures at rank `k`.
pub struct Probes {
    poset: Arc<Poset>,
    fns: Vec<BoolFn>,
    sigs: Vec<u64>,
    /// Membership of each meet class, indexed like [`Meet::ALL`].
    meets: Vec<Vec<u64>>,
}

impl Probes {
    fn new(poset: Arc<Poset>, fns: Vec<BoolFn>) -> Probes {
        let sigs = fns.iter().map(|f| poset.restriction_signature(f)).collect();
        let meets = Meet::ALL
            .iter()
            .map(|m| {
                let c = m.class();
                Fingerprint::from_fn(fns.len(), |i| c.member(&fns[i])).bits
            })
            .collect();
        Probes {
            poset,
            fns,
            sigs,
            meets,
        }
    }

    /// All functions of arity at most 3, the poset representatives, and their
    /// closures under each of the five closures.
    pub fn primary(k: usize) -> Result<Probes> {
        let poset = shared_poset(k, None)?;
        let mut set = BTreeSet::new();
        for n in 1..=3 {
            for w in 0..1u64 << (1 << n) {
                set.insert(BoolFn::from_word(n, w)?);
            }
        }
        for e in 0..poset.len() {
            let r = poset.rep(e);
            set.insert(r.clone());
            for c in Closure::ALL {
                set.insert(r.closure(c));
            }
        }
        Ok(Probes::new(poset, set.into_iter().collect()))
    }

    /// Every function of arity 4 and a seeded sample of arity-5 functions.
    pub fn extension(k: usize) -> Result<Probes> {
        let poset = shared_poset(k, None)?;
        let mut fns: Vec<BoolFn> = (0..1u64 << 16)
            .map(|w| BoolFn::from_word(4, w))
            .collect::<Result<_>>()?;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
        for _ in 0..256 {
            // Sparse tables keep the `U`-like classes from being trivially empty.
            let density = rng.gen_range(1..=4);
            let w: u32 = (0..density).fold(u32::MAX, |acc, _| acc & rng.gen::<u32>());
            fns.push(BoolFn::from_word(5, w as u64)?);
        }
        Ok(Probes::new(poset, fns))
    }

    pub fn len(&self) -> usize {
        self.fns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fns.is_empty()
    }

    pub fn functions(&self) -> &[BoolFn] {
        &self.fns
    }

    fn klik(&self, theta: &Ideal) -> Fingerprint {
        let outside = !theta.members();
        Fingerprint::from_fn(self.len(), |i| self.sigs[i] & outside == 0)
    }

    pub fn fingerprint(&self, d: &ClonoidDescriptor) -> Result<Fingerprint> {
        if let Some(t) = d.theta() {
            if t.poset().k != self.poset.k {
                return Err(Error::Precondition(format!(
                    "probes are for rank {}, descriptor has rank {}",
                    self.poset.k,
                    t.poset().k
                )));
            }
        }
        Ok(match d {
            ClonoidDescriptor::Klik(t) => self.klik(t),
            ClonoidDescriptor::KlikMeet(t, m) => self.klik(t).and(&self.meets[m.index()]),
            ClonoidDescriptor::Named(c) => self.of_predicate(|f| c.member(f)),
        })
    }

    pub fn of_predicate(&self, pred: impl Fn(&BoolFn) -> bool) -> Fingerprint {
        Fingerprint::from_fn(self.len(), |i| pred(&self.fns[i]))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EnumeratedClonoid {
    pub id: usize,
    pub descriptor: ClonoidDescriptor,
    /// Further descriptors of the same class.
    pub aliases: Vec<ClonoidDescriptor>,
    /// Registry classes with the same membership on all probes.
    pub names: Vec<String>,
    #[serde(skip)]
    pub fingerprint: Fingerprint,
    #[serde(skip)]
    pub extended: Fingerprint,
}

impl EnumeratedClonoid {
    pub fn descriptors(&self) -> impl Iterator<Item = &ClonoidDescriptor> {
        std::iter::once(&self.descriptor).chain(&self.aliases)
    }

    pub fn display_name(&self) -> String {
        self.names
            .first()
            .cloned()
            .unwrap_or_else(|| self.descriptor.to_string())
    }
}

/// Immediate lower covers of the fixed classes and of `clAll`, `clVako`,
/// and `clEmpty`.
pub const NAMED_LOWER_COVERS: &[(&str, &[&str])] = &[
    ("All", &["Eiio", "Eioi", "Eiii"]),
    ("Eiio", &["OXC", "XIC", "Eq"]),
    ("Eioi", &["XOC", "IXC", "Eq"]),
    ("Eq", &["OOC", "IIC", "Refl"]),
    ("OXC", &["OX", "OOC", "OIC"]),
    ("XOC", &["XO", "OOC", "IOC"]),
    ("IXC", &["IIC", "IOC", "IX"]),
    ("XIC", &["IIC", "OIC", "XI"]),
    ("IX", &["II", "IOCI"]),
    ("XI", &["II", "OICI"]),
    ("II", &["ReflII"]),
    ("IIC", &["ReflIIC", "II"]),
    ("OOC", &["OO", "ReflOOC"]),
    ("OIC", &["OICO", "OICI", "M"]),
    ("OICI", &["OI", "Mi"]),
    ("IOC", &["IOCO", "IOCI", "Mneg"]),
    ("IOCI", &["IO", "Moneg"]),
    ("M", &["Mo", "Mi", "Vak"]),
    ("Mi", &["Mc", "Vaki"]),
    ("Mneg", &["Moneg", "Mineg", "Vak"]),
    ("Moneg", &["Mcneg", "Vaki"]),
    ("Refl", &["ReflOOC", "ReflIIC"]),
    ("ReflOOC", &["ReflOO", "Vak"]),
    ("ReflIIC", &["ReflII", "Vak"]),
    ("ReflII", &["Vaki"]),
    ("Vak", &["Vako", "Vaki"]),
    ("Vaki", &["Empty"]),
    ("Vako", &["Empty"]),
    ("Empty", &[]),
];

/// The distinct clonoids for rank `k`, with aliases and covers.
pub struct Enumeration {
    pub k: usize,
    pub poset: Arc<Poset>,
    pub clonoids: Vec<EnumeratedClonoid>,
    /// Descriptors that agree on the primary probes but not on the extension.
    pub diagnostics: Vec<String>,
    probes: Probes,
    extension: Probes,
    by_fingerprint: HashMap<Fingerprint, usize>,
}

pub fn enumerate_clonoids(k: usize) -> Result<Enumeration> {
    if !(2..=3).contains(&k) {
        return Err(Error::Precondition(format!(
            "clonoids are enumerated for k = 2, 3, not {k}"
        )));
    }
    let poset = shared_poset(k, None)?;
    let probes = Probes::primary(k)?;
    let extension = Probes::extension(k)?;
    let mut candidates: Vec<ClonoidDescriptor> = all_ideals(&poset)?.into_iter().map(ClonoidDescriptor::Klik).collect();
    for m in Meet::ALL {
        for t in closed_ideals(&poset, m.closure(), k)? {
            if !t.is_empty() {
                candidates.push(ClonoidDescriptor::KlikMeet(t, m));
            }
        }
    }
    for name in FIXED_CLONOID_CLASSES {
        candidates.push(ClonoidDescriptor::Named(name.parse()?));
    }
    let mut clonoids: Vec<EnumeratedClonoid> = Vec::new();
    let mut by_fingerprint = HashMap::new();
    let mut diagnostics = Vec::new();
    for d in candidates {
        let fp = probes.fingerprint(&d)?;
        let ext = extension.fingerprint(&d)?;
        match by_fingerprint.get(&fp) {
            Some(&i) => {
                let entry: &mut EnumeratedClonoid = &mut clonoids[i];
                if entry.extended != ext {
                    diagnostics.push(format!(
                        "{d} and {} agree on the primary probes but differ on the extension",
                        entry.descriptor
                    ));
                }
                entry.aliases.push(d);
            }
            None => {
                by_fingerprint.insert(fp.clone(), clonoids.len());
                clonoids.push(EnumeratedClonoid {
                    id: clonoids.len(),
                    descriptor: d,
                    aliases: Vec::new(),
                    names: Vec::new(),
                    fingerprint: fp,
                    extended: ext,
                });
            }
        }
    }
    let mut ranks = vec![2];
    if k != 2 {
        ranks.push(k);
    }
    for c in NamedClass::registry(&ranks) {
        let fp = probes.of_predicate(|f| c.member(f));
        if let Some(&i) = by_fingerprint.get(&fp) {
            if clonoids[i].extended == extension.of_predicate(|f| c.member(f)) {
                clonoids[i].names.push(c.name().to_string());
            }
        }
    }
    Ok(Enumeration {
        k,
        poset,
        clonoids,
        diagnostics,
        probes,
        extension,
        by_fingerprint,
    })
}

/// Enumerations are cached per rank.
pub fn shared_enumeration(k: usize) -> Result<Arc<Enumeration>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Enumeration>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(e) = cache.lock().expect("enumeration cache").get(&k) {
        return Ok(Arc::clone(e));
    }
    let e = Arc::new(enumerate_clonoids(k)?);
    cache
        .lock()
        .expect("enumeration cache")
        .entry(k)
        .or_insert_with(|| Arc::clone(&e));
    Ok(e)
}

impl Enumeration {
    pub fn len(&self) -> usize {
        self.clonoids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clonoids.is_empty()
    }

    pub fn probes(&self) -> &Probes {
        &self.probes
    }

    /// The clonoid described by `d`, if it is among the enumerated ones.
    pub fn index_of(&self, d: &ClonoidDescriptor) -> Result<Option<usize>> {
        let fp = self.probes.fingerprint(d)?;
        Ok(self.by_fingerprint.get(&fp).copied())
    }

    /// Enumerated clonoids agreeing with `pred` on every probe, including the extension.
    pub fn locate(&self, pred: impl Fn(&BoolFn) -> bool) -> Vec<usize> {
        let fp = self.probes.of_predicate(&pred);
        let ext = self.extension.of_predicate(&pred);
        self.clonoids
            .iter()
            .filter(|c| c.fingerprint == fp && c.extended == ext)
            .map(|c| c.id)
            .collect()
    }

    pub fn by_name(&self, name: &str) -> Result<usize> {
        self.clonoids
            .iter()
            .position(|c| c.names.iter().any(|n| n == name))
            .ok_or_else(|| Error::UnknownClass(format!("no enumerated clonoid is named {name}")))
    }

    /// Lower covers read off the probe fingerprints.
    pub fn hasse_lower_covers(&self, i: usize) -> Vec<usize> {
        let top = &self.clonoids[i].fingerprint;
        let below: Vec<usize> = (0..self.len())
            .filter(|&j| self.clonoids[j].fingerprint.is_strict_subset(top))
            .collect();
        below
            .iter()
            .copied()
            .filter(|&j| {
                let fj = &self.clonoids[j].fingerprint;
                !below
                    .iter()
                    .any(|&l| fj.is_strict_subset(&self.clonoids[l].fingerprint))
            })
            .collect()
    }

    fn resolve(&self, d: &ClonoidDescriptor) -> Result<usize> {
        self.index_of(d)?
            .ok_or_else(|| Error::Consistency(format!("{d} is not among the enumerated clonoids")))
    }

    fn closed_lower_covers(&self, theta: &Ideal, c: Closure) -> Result<Vec<Ideal>> {
        let closed = closed_ideals(&self.poset, c, self.k)?;
        let below: Vec<&Ideal> = closed.iter().filter(|t| t.is_subset(theta) && *t != theta).collect();
        Ok(below
            .iter()
            .filter(|t| !below.iter().any(|u| t.is_subset(u) && t.members() != u.members()))
            .map(|t| (*t).clone())
            .collect())
    }

    /// Candidate lower covers: the recorded table for the fixed classes, the
    /// case analysis on `Θ` otherwise.
    pub fn cover_candidates(&self, i: usize) -> Result<Vec<ClonoidDescriptor>> {
        let entry = &self.clonoids[i];
        if let Some((_, covers)) = NAMED_LOWER_COVERS
            .iter()
            .find(|(name, _)| entry.names.iter().any(|n| n == name))
        {
            return covers
                .iter()
                .map(|n| Ok(ClonoidDescriptor::Named(n.parse()?)))
                .collect();
        }
        let d = &entry.descriptor;
        let mut out = Vec::new();
        match d {
            ClonoidDescriptor::Klik(t) => {
                for psi in t.lower_covers() {
                    out.push(ClonoidDescriptor::Klik(psi));
                }
                for (c, m) in [
                    (Closure::XI, Meet::OICO),
                    (Closure::IX, Meet::IOCO),
                    (Closure::R, Meet::ReflOO),
                ] {
                    if is_kc_closed(t, c, self.k)? {
                        out.push(ClonoidDescriptor::KlikMeet(t.clone(), m));
                    }
                }
            }
            ClonoidDescriptor::KlikMeet(t, m) => {
                for psi in self.closed_lower_covers(t, m.closure())? {
                    out.push(ClonoidDescriptor::KlikMeet(psi, *m));
                }
                let extra: &[(Option<Closure>, Meet)] = match m {
                    Meet::OICO => &[(None, Meet::OI), (Some(Closure::M), Meet::Mo)],
                    Meet::OI => &[(Some(Closure::M), Meet::Mc)],
                    Meet::IOCO => &[(None, Meet::IO), (Some(Closure::Mneg), Meet::Mineg)],
                    Meet::IO => &[(Some(Closure::Mneg), Meet::Mcneg)],
                    Meet::Mo => &[(None, Meet::Mc)],
                    Meet::Mineg => &[(None, Meet::Mcneg)],
                    Meet::Mc | Meet::Mcneg | Meet::ReflOO => &[],
                };
                for &(c, m2) in extra {
                    let applies = match c {
                        None => true,
                        Some(c) => is_kc_closed(t, c, self.k)?,
                    };
                    if applies {
                        out.push(ClonoidDescriptor::KlikMeet(t.clone(), m2));
                    }
                }
            }
            ClonoidDescriptor::Named(c) => {
                return Err(Error::Consistency(format!("no recorded lower covers for {c}")));
            }
        }
        Ok(out)
    }

    /// Lower covers: the candidates resolved to enumerated clonoids, keeping
    /// only the maximal ones strictly below.
    pub fn lower_covers(&self, i: usize) -> Result<Vec<usize>> {
        let top = &self.clonoids[i].fingerprint;
        let mut found = BTreeSet::new();
        for d in self.cover_candidates(i)? {
            let j = self.resolve(&d)?;
            if self.clonoids[j].fingerprint.is_strict_subset(top) {
                found.insert(j);
            }
        }
        let found: Vec<usize> = found.into_iter().collect();
        Ok(found
            .iter()
            .copied()
            .filter(|&j| {
                !found.iter().any(|&l| {
                    self.clonoids[j]
                        .fingerprint
                        .is_strict_subset(&self.clonoids[l].fingerprint)
                })
            })
            .collect())
    }

    pub fn to_json(&self) -> Result<serde_json::Value> {
        let mut items = Vec::new();
        for c in &self.clonoids {
            items.push(serde_json::json!({
                "id": c.id,
                "descriptor": c.descriptor,
                "aliases": c.aliases,
                "names": c.names,
                "fingerprintHash": format!("{:016x}", c.fingerprint.hash()),
                "lowerCovers": self.lower_covers(c.id)?,
            }));
        }
        Ok(serde_json::json!({
            "k": self.k,
            "count": self.len(),
            "clonoids": items,
            "diagnostics": self.diagnostics,
        }))
    }

    /// Cover graph in DOT, nodes in enumeration order.
    pub fn to_dot(&self) -> Result<String> {
        use std::fmt::Write as _;
        let mut s = format!("digraph clonoids_k{} {{\n  rankdir=BT;\n", self.k);
        for c in &self.clonoids {
            let _ = writeln!(s, "  n{} [label=\"{}\"];", c.id, c.display_name().replace('"', "\\\""));
        }
        for c in &self.clonoids {
            for j in self.lower_covers(c.id)? {
                let _ = writeln!(s, "  n{j} -> n{};", c.id);
            }
        }
        s.push_str("}\n");
        Ok(s)
    }
}

/// Lower covers of a descriptor among the clonoids of its rank.
pub fn lower_covers(d: &ClonoidDescriptor, k: usize) -> Result<Vec<ClonoidDescriptor>> {
    let e = shared_enumeration(k)?;
    let i = e.resolve(d)?;
    Ok(e.lower_covers(i)?
        .into_iter()
        .map(|j| e.clonoids[j].descriptor.clone())
        .collect())
}

/// Membership after validating the descriptor.
pub fn descriptor_member(d: &ClonoidDescriptor, f: &BoolFn) -> Result<bool> {
    d.validate()?;
    Ok(d.member(f))
}

/// `↓{names}` in the unclosed rank-`k` poset, as a descriptor `K_k(Θ)`.
pub fn klik(k: usize, names: &[&str]) -> Result<ClonoidDescriptor> {
    Ok(ClonoidDescriptor::Klik(ideal_of(k, names)?))
}

/// Parses a comma-separated list of poset element names into `↓{…}`.
pub fn parse_theta(k: usize, list: &str) -> Result<Ideal> {
    let p = shared_poset(k, None)?;
    let mut ids = Vec::new();
    for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        ids.push(p.find(name)?);
    }
    downset(&p, &ids)
}
