//! □- and ▲-bisimulations on one model.
//!
//! Relations between two models live on their disjoint union. A ▲-pair
//! `(s, s′)` needs the forth witness only for successors `t` of `s` with
//! `(s, t) ∉ Z`, and symmetrically for back.
//!
//! The largest bisimulation is a greatest fixpoint: start from all pairs
//! agreeing on atoms and repeatedly drop every pair whose clauses fail with
//! respect to the previous round's relation. The ▲ guard makes the step
//! non-monotone, but any round containing the largest bisimulation `B`
//! keeps all of `B` (a guard under the round implies the guard under `B`,
//! and a witness in `B` is a witness in the round). So the limit contains
//! `B`; being a nonempty fixpoint it is itself a bisimulation, hence `B`.
//!
//! Contraction quotients by ▲-bisimilarity. A quotient block `[s]` sees
//! `[t]` iff some member of `[s]` sees some member of `[t]`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::kripke::{block_name, disjoint_union, quotient, KripkeError, Model};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BisimKind {
    Box,
    BlackTri,
}

impl fmt::Display for BisimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BisimKind::Box => "box",
            BisimKind::BlackTri => "tri",
        })
    }
}

impl std::str::FromStr for BisimKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "box" => Ok(BisimKind::Box),
            "tri" | "blacktri" => Ok(BisimKind::BlackTri),
            other => Err(format!("unknown bisimulation kind `{other}`")),
        }
    }
}

/// A set of world pairs of one model, read as a bisimulation of `kind`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BisimRelation {
    pub kind: BisimKind,
    pub pairs: BTreeSet<(String, String)>,
}

impl BisimRelation {
    pub fn new<S: Into<String>>(kind: BisimKind, pairs: impl IntoIterator<Item = (S, S)>) -> Self {
        BisimRelation {
            kind,
            pairs: pairs
                .into_iter()
                .map(|(a, b)| (a.into(), b.into()))
                .collect(),
        }
    }

    pub fn contains(&self, s: &str, t: &str) -> bool {
        self.pairs.contains(&(s.to_string(), t.to_string()))
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn union(&self, other: &BisimRelation) -> BisimRelation {
        BisimRelation {
            kind: self.kind,
            pairs: self.pairs.union(&other.pairs).cloned().collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Clause {
    Empty,
    Inv,
    Forth,
    Back,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::Empty => "nonempty",
            Clause::Inv => "Inv",
            Clause::Forth => "Forth",
            Clause::Back => "Back",
        })
    }
}

/// A failed clause. For Forth the successor is the unmatched successor of
/// the left world; for Back, of the right world.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub clause: Clause,
    pub pair: Option<(String, String)>,
    pub successor: Option<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.clause)?;
        if let Some((s, t)) = &self.pair {
            write!(f, " at ({s},{t})")?;
        }
        if let Some(u) = &self.successor {
            write!(f, " unmatched successor {u}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BisimReport {
    pub kind: BisimKind,
    pub violations: Vec<Violation>,
}

impl BisimReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A relation on the worlds of one model, as an `n × n` bit matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSet {
    n: usize,
    bits: FixedBitSet,
}

impl PairSet {
    pub fn empty(n: usize) -> PairSet {
        PairSet {
            n,
            bits: FixedBitSet::with_capacity(n * n),
        }
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.bits.contains(a * self.n + b)
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.bits.insert(a * self.n + b);
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    /// Pairs in lexicographic index order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.bits.ones().map(move |i| (i / self.n, i % self.n))
    }

    pub fn to_relation(&self, model: &Model, kind: BisimKind) -> BisimRelation {
        let name = |w| model.frame().name(w).to_string();
        BisimRelation {
            kind,
            pairs: self.pairs().map(|(a, b)| (name(a), name(b))).collect(),
        }
    }
}

/// First failing clause of one pair with respect to `z`, if any.
fn pair_violation(
    model: &Model,
    kind: BisimKind,
    z: &PairSet,
    a: usize,
    b: usize,
) -> Option<(Clause, Option<usize>)> {
    if !model.agree_on_atoms(a, b) {
        return Some((Clause::Inv, None));
    }
    let frame = model.frame();
    let guarded = kind == BisimKind::BlackTri;
    for &t in frame.succ(a) {
        if guarded && z.contains(a, t) {
            continue;
        }
        if !frame.succ(b).iter().any(|&u| z.contains(t, u)) {
            return Some((Clause::Forth, Some(t)));
        }
    }
    for &u in frame.succ(b) {
        if guarded && z.contains(b, u) {
            continue;
        }
        if !frame.succ(a).iter().any(|&t| z.contains(t, u)) {
            return Some((Clause::Back, Some(u)));
        }
    }
    None
}

/// Every clause violation of `z`, pairs in lexicographic index order.
pub fn violations(
    model: &Model,
    kind: BisimKind,
    z: &PairSet,
) -> Vec<(Clause, (usize, usize), Option<usize>)> {
    z.pairs()
        .filter_map(|(a, b)| pair_violation(model, kind, z, a, b).map(|(c, w)| (c, (a, b), w)))
        .collect()
}

/// Checks Inv, Forth, Back and nonemptiness for a named relation.
pub fn check_bisimulation(model: &Model, z: &BisimRelation) -> Result<BisimReport, KripkeError> {
    let frame = model.frame();
    let mut set = PairSet::empty(model.len());
    for (s, t) in &z.pairs {
        set.insert(frame.index_of(s)?, frame.index_of(t)?);
    }
    let name = |w: usize| frame.name(w).to_string();
    let mut found: Vec<Violation> = violations(model, z.kind, &set)
        .into_iter()
        .map(|(clause, (a, b), w)| Violation {
            clause,
            pair: Some((name(a), name(b))),
            successor: w.map(name),
        })
        .collect();
    if set.is_empty() {
        found.insert(
            0,
            Violation {
                clause: Clause::Empty,
                pair: None,
                successor: None,
            },
        );
    }
    Ok(BisimReport {
        kind: z.kind,
        violations: found,
    })
}

/// Largest bisimulation of `kind` on one model, possibly empty.
pub fn largest_on(model: &Model, kind: BisimKind) -> PairSet {
    let n = model.len();
    let mut z = PairSet::empty(n);
    for a in 0..n {
        for b in 0..n {
            if model.agree_on_atoms(a, b) {
                z.insert(a, b);
            }
        }
    }
    loop {
        let mut next = PairSet::empty(n);
        for (a, b) in z.pairs() {
            if pair_violation(model, kind, &z, a, b).is_none() {
                next.insert(a, b);
            }
        }
        if next == z {
            return z;
        }
        z = next;
    }
}

/// Largest bisimulation on one model, with world names.
pub fn largest_bisimulation_on(model: &Model, kind: BisimKind) -> BisimRelation {
    largest_on(model, kind).to_relation(model, kind)
}

/// Largest bisimulation over the disjoint union of two models; world names
/// carry the union's tags.
pub fn largest_bisimulation(m1: &Model, m2: &Model, kind: BisimKind) -> BisimRelation {
    let (union, _) = disjoint_union(m1, m2);
    largest_bisimulation_on(&union, kind)
}

/// Whether `(m1, s)` and `(m2, t)` are bisimilar.
pub fn bisimilar(
    m1: &Model,
    s: &str,
    m2: &Model,
    t: &str,
    kind: BisimKind,
) -> Result<bool, KripkeError> {
    let i = m1.frame().index_of(s)?;
    let j = m2.frame().index_of(t)?;
    let (union, inj) = disjoint_union(m1, m2);
    Ok(largest_on(&union, kind).contains(inj.left[i], inj.right[j]))
}

/// Partition into the classes of the equivalence generated by `z` and the
/// diagonal, each class ascending, classes ordered by least member.
pub fn classes(z: &PairSet) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..z.n).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (a, b) in z.pairs() {
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        parent[ra.max(rb)] = ra.min(rb);
    }
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for w in 0..z.n {
        let r = root(&mut parent, w);
        by_root.entry(r).or_default().push(w);
    }
    by_root.into_values().collect()
}

/// A contracted model and the block each original world went to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    pub model: Model,
    pub block_of: BTreeMap<String, String>,
}

/// Quotient by ▲-bisimilarity.
pub fn contract(model: &Model) -> Contraction {
    let blocks = classes(&largest_on(model, BisimKind::BlackTri));
    let quotiented = quotient(model, &blocks).expect("bisimilar worlds agree on atoms");
    let mut block_of = BTreeMap::new();
    for block in &blocks {
        let name = block_name(model, block);
        for &w in block {
            block_of.insert(model.frame().name(w).to_string(), name.clone());
        }
    }
    Contraction {
        model: quotiented,
        block_of,
    }
}
