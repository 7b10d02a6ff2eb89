//! Finite Kripke frames and models.
//!
//! Worlds are opaque string names kept in insertion order; internally every
//! world is addressed by its index. Atoms missing from a valuation are false
//! everywhere.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A set of worlds of one model, by index.
pub type WorldSet = FixedBitSet;

/// Suffixes used to tag the two halves of a disjoint union.
pub const LEFT_TAG: &str = "·L";
pub const RIGHT_TAG: &str = "·R";

#[derive(Debug, Error)]
pub enum KripkeError {
    #[error("a frame needs at least one world")]
    NoWorlds,
    #[error("world `{0}` is listed twice")]
    DuplicateWorld(String),
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("world `{world}` is not covered exactly once by the partition")]
    NotAPartition { world: String },
    #[error("block {block:?} disagrees on atom `{atom}`")]
    BlockDisagrees { block: Vec<String>, atom: String },
    #[error("malformed model file: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FrameProperty {
    Serial,
    Reflexive,
    Symmetric,
    Transitive,
    Euclidean,
    Coreflexive,
    Equivalence,
}

impl FrameProperty {
    pub const ALL: [FrameProperty; 7] = [
        FrameProperty::Serial,
        FrameProperty::Reflexive,
        FrameProperty::Symmetric,
        FrameProperty::Transitive,
        FrameProperty::Euclidean,
        FrameProperty::Coreflexive,
        FrameProperty::Equivalence,
    ];
}

impl fmt::Display for FrameProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            FrameProperty::Serial => "serial",
            FrameProperty::Reflexive => "reflexive",
            FrameProperty::Symmetric => "symmetric",
            FrameProperty::Transitive => "transitive",
            FrameProperty::Euclidean => "euclidean",
            FrameProperty::Coreflexive => "coreflexive",
            FrameProperty::Equivalence => "equivalence",
        };
        f.write_str(name)
    }
}

impl std::str::FromStr for FrameProperty {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FrameProperty::ALL
            .into_iter()
            .find(|p| p.to_string() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| format!("unknown frame property `{s}`"))
    }
}

/// A failed frame condition with the tuple of worlds that breaks it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyViolation {
    pub property: FrameProperty,
    pub witness: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Frame {
    names: Vec<String>,
    index: HashMap<String, usize>,
    succ: Vec<Vec<usize>>,
    matrix: FixedBitSet,
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.matrix == other.matrix
    }
}

impl Eq for Frame {}

impl Frame {
    pub fn new<W, S, R>(worlds: W, relation: R) -> Result<Frame, KripkeError>
    where
        W: IntoIterator<Item = S>,
        S: Into<String>,
        R: IntoIterator<Item = (S, S)>,
    {
        let names: Vec<String> = worlds.into_iter().map(Into::into).collect();
        let index = build_index(&names)?;
        let mut edges = Vec::new();
        for (a, b) in relation {
            let (a, b) = (a.into(), b.into());
            let ia = *index.get(&a).ok_or(KripkeError::UnknownWorld(a))?;
            let ib = *index.get(&b).ok_or(KripkeError::UnknownWorld(b))?;
            edges.push((ia, ib));
        }
        Ok(Frame::assemble(names, index, edges))
    }

    /// Builds a frame from index pairs; panics on out-of-range indices.
    pub fn from_indices(
        names: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Frame, KripkeError> {
        let index = build_index(&names)?;
        let edges: Vec<_> = edges.into_iter().collect();
        for &(a, b) in &edges {
            assert!(
                a < names.len() && b < names.len(),
                "edge ({a},{b}) out of range"
            );
        }
        Ok(Frame::assemble(names, index, edges))
    }

    fn assemble(
        names: Vec<String>,
        index: HashMap<String, usize>,
        edges: Vec<(usize, usize)>,
    ) -> Frame {
        let n = names.len();
        let mut matrix = FixedBitSet::with_capacity(n * n);
        for (a, b) in edges {
            matrix.insert(a * n + b);
        }
        let succ = (0..n)
            .map(|a| (0..n).filter(|&b| matrix.contains(a * n + b)).collect())
            .collect();
        Frame {
            names,
            index,
            succ,
            matrix,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn worlds(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, world: usize) -> &str {
        &self.names[world]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, KripkeError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| KripkeError::UnknownWorld(name.to_string()))
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.matrix.contains(a * self.len() + b)
    }

    /// Successor indices of `world`, ascending.
    pub fn succ(&self, world: usize) -> &[usize] {
        &self.succ[world]
    }

    /// `R(s)` by name.
    pub fn successors(&self, world: &str) -> Result<BTreeSet<&str>, KripkeError> {
        let i = self.index_of(world)?;
        Ok(self.succ[i]
            .iter()
            .map(|&j| self.names[j].as_str())
            .collect())
    }

    /// All pairs of the relation in lexicographic index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(a, bs)| bs.iter().map(move |&b| (a, b)))
    }

    pub fn edge_count(&self) -> usize {
        self.matrix.count_ones(..)
    }

    pub fn full_set(&self) -> WorldSet {
        let mut set = WorldSet::with_capacity(self.len());
        set.insert_range(..);
        set
    }

    pub fn empty_set(&self) -> WorldSet {
        WorldSet::with_capacity(self.len())
    }

    pub fn has_property(&self, property: FrameProperty) -> bool {
        self.check_property(property).is_ok()
    }

    /// Checks a frame condition, returning the first violating tuple in
    /// lexicographic order of world indices.
    pub fn check_property(&self, property: FrameProperty) -> Result<(), PropertyViolation> {
        let n = self.len();
        let fail = |ws: &[usize]| PropertyViolation {
            property,
            witness: ws.iter().map(|&w| self.names[w].clone()).collect(),
        };
        match property {
            FrameProperty::Serial => match (0..n).find(|&s| self.succ[s].is_empty()) {
                Some(s) => Err(fail(&[s])),
                None => Ok(()),
            },
            FrameProperty::Reflexive => match (0..n).find(|&s| !self.related(s, s)) {
                Some(s) => Err(fail(&[s])),
                None => Ok(()),
            },
            FrameProperty::Symmetric => {
                for (s, t) in self.edges() {
                    if !self.related(t, s) {
                        return Err(fail(&[s, t]));
                    }
                }
                Ok(())
            }
            FrameProperty::Transitive => {
                for (s, t) in self.edges() {
                    for &u in &self.succ[t] {
                        if !self.related(s, u) {
                            return Err(fail(&[s, t, u]));
                        }
                    }
                }
                Ok(())
            }
            FrameProperty::Euclidean => {
                for s in 0..n {
                    for &t in &self.succ[s] {
                        for &u in &self.succ[s] {
                            if !self.related(t, u) {
                                return Err(fail(&[s, t, u]));
                            }
                        }
                    }
                }
                Ok(())
            }
            FrameProperty::Coreflexive => match self.edges().find(|(s, t)| s != t) {
                Some((s, t)) => Err(fail(&[s, t])),
                None => Ok(()),
            },
            FrameProperty::Equivalence => {
                for p in [
                    FrameProperty::Reflexive,
                    FrameProperty::Symmetric,
                    FrameProperty::Transitive,
                ] {
                    self.check_property(p).map_err(|v| PropertyViolation {
                        property,
                        witness: v.witness,
                    })?;
                }
                Ok(())
            }
        }
    }

    pub fn from_json(text: &str) -> Result<Frame, KripkeError> {
        let file: ModelFile = serde_json::from_str(text)?;
        file.frame()
    }

    pub fn to_file(&self) -> ModelFile {
        ModelFile {
            worlds: self.names.clone(),
            relation: self
                .edges()
                .map(|(a, b)| (self.names[a].clone(), self.names[b].clone()))
                .collect(),
            valuation: None,
        }
    }
}

fn build_index(names: &[String]) -> Result<HashMap<String, usize>, KripkeError> {
    if names.is_empty() {
        return Err(KripkeError::NoWorlds);
    }
    let mut index = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if index.insert(name.clone(), i).is_some() {
            return Err(KripkeError::DuplicateWorld(name.clone()));
        }
    }
    Ok(index)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    frame: Frame,
    valuation: BTreeMap<String, WorldSet>,
}

impl Model {
    /// Builds a model from a frame and a valuation listing world names.
    pub fn new<S: AsRef<str>>(
        frame: Frame,
        valuation: impl IntoIterator<Item = (String, Vec<S>)>,
    ) -> Result<Model, KripkeError> {
        let mut sets = BTreeMap::new();
        for (atom, worlds) in valuation {
            let mut set = frame.empty_set();
            for w in worlds {
                set.insert(frame.index_of(w.as_ref())?);
            }
            sets.insert(atom, set);
        }
        Ok(Model {
            frame,
            valuation: sets,
        })
    }

    /// Builds a model from index-based truth sets.
    pub fn from_sets(frame: Frame, valuation: BTreeMap<String, WorldSet>) -> Model {
        let n = frame.len();
        let valuation = valuation
            .into_iter()
            .map(|(atom, mut set)| {
                set.grow(n);
                assert!(set.len() == n, "truth set of `{atom}` exceeds the frame");
                (atom, set)
            })
            .collect();
        Model { frame, valuation }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn len(&self) -> usize {
        self.frame.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frame.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = &str> {
        self.valuation.keys().map(String::as_str)
    }

    pub fn valuation(&self) -> &BTreeMap<String, WorldSet> {
        &self.valuation
    }

    /// Truth set of an atom; empty when the atom is not mentioned.
    pub fn atom_set(&self, atom: &str) -> WorldSet {
        self.valuation
            .get(atom)
            .cloned()
            .unwrap_or_else(|| self.frame.empty_set())
    }

    pub fn holds(&self, atom: &str, world: usize) -> bool {
        self.valuation
            .get(atom)
            .is_some_and(|set| set.contains(world))
    }

    /// Whether two worlds agree on every atom the model mentions.
    pub fn agree_on_atoms(&self, a: usize, b: usize) -> bool {
        self.valuation
            .values()
            .all(|set| set.contains(a) == set.contains(b))
    }

    pub fn successors(&self, world: &str) -> Result<BTreeSet<&str>, KripkeError> {
        self.frame.successors(world)
    }

    pub fn from_json(text: &str) -> Result<Model, KripkeError> {
        let file: ModelFile = serde_json::from_str(text)?;
        file.model()
    }

    pub fn to_file(&self) -> ModelFile {
        let mut file = self.frame.to_file();
        file.valuation = Some(
            self.valuation
                .iter()
                .map(|(atom, set)| {
                    (
                        atom.clone(),
                        set.ones().map(|w| self.frame.names[w].clone()).collect(),
                    )
                })
                .collect(),
        );
        file
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("model serialises")
    }
}

/// On-disk form: `{"worlds":[..],"relation":[[a,b],..],"valuation":{atom:[..]}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFile {
    pub worlds: Vec<String>,
    #[serde(default)]
    pub relation: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valuation: Option<BTreeMap<String, Vec<String>>>,
}

impl ModelFile {
    pub fn frame(&self) -> Result<Frame, KripkeError> {
        Frame::new(
            self.worlds.iter().map(String::as_str),
            self.relation.iter().map(|(a, b)| (a.as_str(), b.as_str())),
        )
    }

    pub fn model(&self) -> Result<Model, KripkeError> {
        let frame = self.frame()?;
        Model::new(frame, self.valuation.clone().unwrap_or_default())
    }
}

/// Maps from each source model's world indices into the union.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Injections {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// Disjoint union; left worlds come first and carry [`LEFT_TAG`], right
/// worlds carry [`RIGHT_TAG`].
pub fn disjoint_union(left: &Model, right: &Model) -> (Model, Injections) {
    let offset = left.len();
    let names: Vec<String> = left
        .frame
        .names
        .iter()
        .map(|w| format!("{w}{LEFT_TAG}"))
        .chain(right.frame.names.iter().map(|w| format!("{w}{RIGHT_TAG}")))
        .collect();
    let edges = left
        .frame
        .edges()
        .chain(right.frame.edges().map(|(a, b)| (a + offset, b + offset)));
    let frame = Frame::from_indices(names, edges).expect("tagged names are distinct");
    let n = frame.len();
    let atoms: BTreeSet<&str> = left.atoms().chain(right.atoms()).collect();
    let valuation = atoms
        .into_iter()
        .map(|atom| {
            let mut set = WorldSet::with_capacity(n);
            set.extend(left.atom_set(atom).ones());
            set.extend(right.atom_set(atom).ones().map(|w| w + offset));
            (atom.to_string(), set)
        })
        .collect();
    let injections = Injections {
        left: (0..offset).collect(),
        right: (offset..n).collect(),
    };
    (Model::from_sets(frame, valuation), injections)
}

/// Name given to a quotient world: the block's member names, sorted, in
/// braces.
pub fn block_name(model: &Model, block: &[usize]) -> String {
    let mut members: Vec<&str> = block.iter().map(|&w| model.frame.name(w)).collect();
    members.sort_unstable();
    format!("{{{}}}", members.join(","))
}

/// Quotient by a partition of world indices. `[s][R][t]` iff some member of
/// `[s]` sees some member of `[t]`; an atom holds at a block iff it holds at
/// its members.
pub fn quotient(model: &Model, blocks: &[Vec<usize>]) -> Result<Model, KripkeError> {
    let n = model.len();
    let mut block_of = vec![usize::MAX; n];
    for (b, block) in blocks.iter().enumerate() {
        for &w in block {
            if w >= n || block_of[w] != usize::MAX {
                let world = if w < n {
                    model.frame.name(w).to_string()
                } else {
                    w.to_string()
                };
                return Err(KripkeError::NotAPartition { world });
            }
            block_of[w] = b;
        }
    }
    if let Some(w) = block_of.iter().position(|&b| b == usize::MAX) {
        return Err(KripkeError::NotAPartition {
            world: model.frame.name(w).to_string(),
        });
    }
    for block in blocks {
        for (atom, set) in &model.valuation {
            if block
                .iter()
                .any(|&w| set.contains(w) != set.contains(block[0]))
            {
                return Err(KripkeError::BlockDisagrees {
                    block: block
                        .iter()
                        .map(|&w| model.frame.name(w).to_string())
                        .collect(),
                    atom: atom.clone(),
                });
            }
        }
    }
    let names = blocks.iter().map(|b| block_name(model, b)).collect();
    let edges: BTreeSet<(usize, usize)> = model
        .frame
        .edges()
        .map(|(a, b)| (block_of[a], block_of[b]))
        .collect();
    let frame = Frame::from_indices(names, edges)?;
    let valuation = model
        .valuation
        .iter()
        .map(|(atom, set)| {
            let mut out = WorldSet::with_capacity(blocks.len());
            out.extend(set.ones().map(|w| block_of[w]));
            (atom.clone(), out)
        })
        .collect();
    Ok(Model::from_sets(frame, valuation))
}

/// Quotient by blocks given as world names.
pub fn quotient_by_names<S: AsRef<str>>(
    model: &Model,
    blocks: &[Vec<S>],
) -> Result<Model, KripkeError> {
    let blocks = blocks
        .iter()
        .map(|b| b.iter().map(|w| model.frame.index_of(w.as_ref())).collect())
        .collect::<Result<Vec<Vec<usize>>, _>>()?;
    quotient(model, &blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame(worlds: &[&str], rel: &[(&'static str, &'static str)]) -> Frame {
        Frame::new(worlds.iter().copied(), rel.iter().copied()).unwrap()
    }

    #[test]
    fn successors_by_name() {
        let f = frame(&["s", "t"], &[("s", "t")]);
        assert_eq!(f.successors("s").unwrap(), BTreeSet::from(["t"]));
        assert!(f.successors("t").unwrap().is_empty());
        assert!(matches!(
            f.successors("u"),
            Err(KripkeError::UnknownWorld(_))
        ));
        let m = frame(&["s", "t"], &[("s", "t"), ("t", "t"), ("t", "s")]);
        assert_eq!(m.successors("t").unwrap(), BTreeSet::from(["s", "t"]));
    }

    #[test]
    fn two_cycle_is_not_transitive() {
        let f = frame(&["s", "t"], &[("s", "t"), ("t", "s")]);
        let v = f.check_property(FrameProperty::Transitive).unwrap_err();
        assert_eq!(v.witness, ["s", "t", "s"]);
        assert!(f.has_property(FrameProperty::Symmetric));
        assert!(!f.has_property(FrameProperty::Euclidean));
    }

    #[test]
    fn loop_has_every_property() {
        let f = frame(&["w"], &[("w", "w")]);
        for p in FrameProperty::ALL {
            assert!(f.has_property(p), "{p}");
        }
    }

    #[test]
    fn reflexive_one_way_frame() {
        // s→s, s→t, t→t: sRt and sRs would need tRs for euclideanness.
        let f = frame(&["s", "t"], &[("s", "s"), ("s", "t"), ("t", "t")]);
        assert_eq!(
            f.check_property(FrameProperty::Symmetric)
                .unwrap_err()
                .witness,
            ["s", "t"]
        );
        assert_eq!(
            f.check_property(FrameProperty::Euclidean)
                .unwrap_err()
                .witness,
            ["s", "t", "s"]
        );
        assert!(f.has_property(FrameProperty::Reflexive));
        assert!(f.has_property(FrameProperty::Transitive));
        // Without the loop at s the frame is euclidean.
        let g = frame(&["s", "t"], &[("s", "t"), ("t", "t")]);
        assert!(g.has_property(FrameProperty::Euclidean));
    }

    #[test]
    fn frame_validation_errors() {
        assert!(matches!(
            Frame::new(Vec::<&str>::new(), Vec::<(&str, &str)>::new()),
            Err(KripkeError::NoWorlds)
        ));
        assert!(matches!(
            Frame::new(["a", "a"], Vec::<(&str, &str)>::new()),
            Err(KripkeError::DuplicateWorld(_))
        ));
        assert!(matches!(
            Frame::new(["a"], [("a", "b")]),
            Err(KripkeError::UnknownWorld(_))
        ));
    }

    fn single(name: &str, looped: bool, p: bool) -> Model {
        let rel: Vec<(&str, &str)> = if looped { vec![(name, name)] } else { vec![] };
        let f = Frame::new([name], rel).unwrap();
        let val = if p {
            vec![("p".to_string(), vec![name])]
        } else {
            vec![]
        };
        Model::new(f, val).unwrap()
    }

    #[test]
    fn union_of_singletons() {
        let (u, inj) = disjoint_union(&single("a", false, false), &single("b", false, false));
        assert_eq!(u.len(), 2);
        assert_eq!(u.frame().edge_count(), 0);
        assert_eq!(inj.left, [0]);
        assert_eq!(inj.right, [1]);
        assert_eq!(u.frame().worlds(), ["a·L", "b·R"]);
    }

    #[test]
    fn union_keeps_relation_and_valuation() {
        let (u, _) = disjoint_union(&single("s", true, true), &single("t", false, true));
        assert_eq!(u.frame().edges().collect::<Vec<_>>(), [(0, 0)]);
        assert_eq!(u.atom_set("p").ones().collect::<Vec<_>>(), [0, 1]);
    }

    #[test]
    fn quotient_merges_loop_and_dead_end() {
        let (u, _) = disjoint_union(&single("s", true, true), &single("t", false, true));
        let q = quotient(&u, &[vec![0, 1]]).unwrap();
        assert_eq!(q.len(), 1);
        assert!(q.frame().related(0, 0));
        assert!(q.holds("p", 0));
    }

    #[test]
    fn identity_quotient_is_isomorphic() {
        let f = frame(&["s", "t"], &[("s", "t"), ("t", "t")]);
        let m = Model::new(f, [("p".to_string(), vec!["s"])]).unwrap();
        let q = quotient(&m, &[vec![0], vec![1]]).unwrap();
        assert_eq!(
            q.frame().edges().collect::<Vec<_>>(),
            m.frame().edges().collect::<Vec<_>>()
        );
        assert_eq!(q.atom_set("p"), m.atom_set("p"));
    }

    #[test]
    fn quotient_rejects_mixed_blocks() {
        let f = frame(&["s", "t"], &[]);
        let m = Model::new(f, [("p".to_string(), vec!["s"])]).unwrap();
        assert!(matches!(
            quotient(&m, &[vec![0, 1]]),
            Err(KripkeError::BlockDisagrees { .. })
        ));
        assert!(matches!(
            quotient(&m, &[vec![0]]),
            Err(KripkeError::NotAPartition { .. })
        ));
        assert!(matches!(
            quotient(&m, &[vec![0], vec![0, 1]]),
            Err(KripkeError::NotAPartition { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"worlds":["s","t"],"relation":[["s","t"]],"valuation":{"p":["s"]}}"#;
        let m = Model::from_json(text).unwrap();
        assert_eq!(m.to_json(), text);
        let f = Frame::from_json(r#"{"worlds":["s"],"relation":[]}"#).unwrap();
        assert_eq!(f.len(), 1);
        assert!(matches!(
            Model::from_json(r#"{"worlds":["s"],"valuation":{"p":["x"]}}"#),
            Err(KripkeError::UnknownWorld(_))
        ));
    }
}
