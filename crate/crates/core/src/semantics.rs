//! Satisfaction, validity and definable sets.
//!
//! Truth is computed bottom-up as world sets. Each modality is a set
//! operator on one frame:
//!
//! - `□X = {s | R(s) ⊆ X}`
//! - `ΔX = {s | R(s) ⊆ X or R(s) ∩ X = ∅}`
//! - `∘X = {s | s ∈ X ⇒ R(s) ⊆ X}`
//! - `▲X = {s | (s ∈ X ⇒ R(s) ⊆ X) and (s ∉ X ⇒ R(s) ∩ X = ∅)}`
//!
//! Logical equivalence on a finite model is decided by closing the atom
//! truth sets under complement, intersection and the language's operators.
//! The closed family is a boolean algebra, stored as its partition into
//! atoms (blocks); two worlds are equivalent iff they share a block.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{Formula, LanguageTag, Modality};
use crate::kripke::{disjoint_union, Frame, KripkeError, Model, WorldSet};

/// Default cap on the number of valuations a frame check may enumerate.
pub const DEFAULT_VALUATION_CAP: u64 = 1 << 20;

#[derive(Debug, Error)]
pub enum SemanticsError {
    #[error(transparent)]
    Kripke(#[from] KripkeError),
    #[error("enumeration needs {needed} valuations, cap is {cap}")]
    BudgetExceeded { needed: u128, cap: u64 },
}

/// Applies a modal set operator.
pub fn modal_image(frame: &Frame, modality: Modality, x: &WorldSet) -> WorldSet {
    let mut out = frame.empty_set();
    for s in 0..frame.len() {
        let succ = frame.succ(s);
        let all_in = || succ.iter().all(|&t| x.contains(t));
        let none_in = || succ.iter().all(|&t| !x.contains(t));
        let holds = match modality {
            Modality::Box => all_in(),
            Modality::Delta => all_in() || none_in(),
            Modality::Circ => !x.contains(s) || all_in(),
            Modality::BlackTri => {
                if x.contains(s) {
                    all_in()
                } else {
                    none_in()
                }
            }
        };
        out.set(s, holds);
    }
    out
}

fn complement(frame: &Frame, x: &WorldSet) -> WorldSet {
    let mut out = frame.full_set();
    out.difference_with(x);
    out
}

/// The set of worlds where `phi` holds.
pub fn truth_set(model: &Model, phi: &Formula) -> WorldSet {
    let frame = model.frame();
    match phi {
        Formula::Top => frame.full_set(),
        Formula::Prop(p) => model.atom_set(p),
        Formula::Not(a) => complement(frame, &truth_set(model, a)),
        Formula::And(a, b) => {
            let mut x = truth_set(model, a);
            x.intersect_with(&truth_set(model, b));
            x
        }
        _ => {
            let (m, a) = phi.as_modal().expect("remaining cases are modal");
            modal_image(frame, m, &truth_set(model, a))
        }
    }
}

pub fn satisfies(model: &Model, world: &str, phi: &Formula) -> Result<bool, KripkeError> {
    let s = model.frame().index_of(world)?;
    Ok(truth_set(model, phi).contains(s))
}

pub fn valid_on_model(model: &Model, phi: &Formula) -> bool {
    truth_set(model, phi).is_full()
}

/// A valuation and world where a frame check fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Countermodel {
    pub valuation: BTreeMap<String, Vec<String>>,
    pub world: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Validity {
    Valid,
    Invalid(Countermodel),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }

    pub fn countermodel(&self) -> Option<&Countermodel> {
        match self {
            Validity::Valid => None,
            Validity::Invalid(c) => Some(c),
        }
    }
}

/// Every valuation of `atoms` over the frame, ascending as a bitmask whose
/// bit `a * n + w` says atom `a` holds at world `w`.
fn for_each_valuation(
    frame: &Frame,
    atoms: &[String],
    cap: u64,
    mut visit: impl FnMut(Model) -> Option<Countermodel>,
) -> Result<Validity, SemanticsError> {
    let n = frame.len();
    let bits = n * atoms.len();
    let needed: u128 = 1u128.checked_shl(bits as u32).unwrap_or(u128::MAX);
    if bits >= 64 || needed > cap as u128 {
        return Err(SemanticsError::BudgetExceeded { needed, cap });
    }
    for mask in 0..(1u64 << bits) {
        let valuation = atoms
            .iter()
            .enumerate()
            .map(|(a, atom)| {
                let mut set = frame.empty_set();
                set.extend((0..n).filter(|w| mask >> (a * n + w) & 1 == 1));
                (atom.clone(), set)
            })
            .collect();
        if let Some(c) = visit(Model::from_sets(frame.clone(), valuation)) {
            return Ok(Validity::Invalid(c));
        }
    }
    Ok(Validity::Valid)
}

fn countermodel(model: &Model, world: usize) -> Countermodel {
    let file = model.to_file();
    Countermodel {
        valuation: file.valuation.unwrap_or_default(),
        world: model.frame().name(world).to_string(),
    }
}

/// Validity on every model over `frame`, enumerating valuations of the
/// formula's own atoms.
pub fn valid_on_frame(frame: &Frame, phi: &Formula) -> Result<Validity, SemanticsError> {
    valid_on_frame_capped(frame, phi, DEFAULT_VALUATION_CAP)
}

pub fn valid_on_frame_capped(
    frame: &Frame,
    phi: &Formula,
    cap: u64,
) -> Result<Validity, SemanticsError> {
    entails_on_frame_capped(frame, &[], phi, cap)
}

/// Whether every world of every model over `frame` satisfying all of
/// `premises` also satisfies `phi`.
pub fn entails_on_frame(
    frame: &Frame,
    premises: &[Formula],
    phi: &Formula,
) -> Result<Validity, SemanticsError> {
    entails_on_frame_capped(frame, premises, phi, DEFAULT_VALUATION_CAP)
}

pub fn entails_on_frame_capped(
    frame: &Frame,
    premises: &[Formula],
    phi: &Formula,
    cap: u64,
) -> Result<Validity, SemanticsError> {
    let mut atoms = phi.props_of();
    for g in premises {
        atoms.extend(g.props_of());
    }
    let atoms: Vec<String> = atoms.into_iter().collect();
    for_each_valuation(frame, &atoms, cap, |model| {
        let mut bad = complement(model.frame(), &truth_set(&model, phi));
        for g in premises {
            bad.intersect_with(&truth_set(&model, g));
        }
        bad.minimum().map(|w| countermodel(&model, w))
    })
}

/// The sets definable in a sublanguage over given atoms, as the blocks of
/// the partition they induce. Every definable set is a union of blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefinableFamily {
    blocks: Vec<WorldSet>,
    language: LanguageTag,
    carrier: usize,
}

impl DefinableFamily {
    pub fn blocks(&self) -> &[WorldSet] {
        &self.blocks
    }

    pub fn language(&self) -> LanguageTag {
        self.language
    }

    /// Number of definable sets, `2^blocks`.
    pub fn len(&self) -> u128 {
        1u128 << self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// A set is definable iff it is a union of blocks.
    pub fn contains(&self, x: &WorldSet) -> bool {
        self.blocks
            .iter()
            .all(|b| b.is_subset(x) || b.is_disjoint(x))
    }

    /// Every definable set; panics above 2^20 members.
    pub fn sets(&self) -> Vec<WorldSet> {
        assert!(self.blocks.len() <= 20, "family too large to list");
        (0u32..1 << self.blocks.len())
            .map(|mask| union_of(&self.blocks, mask as u64, self.carrier))
            .collect()
    }

    pub fn block_of(&self, world: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(world))
            .expect("blocks cover the carrier")
    }

    /// Whether some definable set contains exactly one of the two worlds.
    pub fn separates(&self, s: usize, t: usize) -> bool {
        self.block_of(s) != self.block_of(t)
    }
}

fn union_of(blocks: &[WorldSet], mask: u64, n: usize) -> WorldSet {
    let mut out = WorldSet::with_capacity(n);
    for (i, b) in blocks.iter().enumerate() {
        if mask >> i & 1 == 1 {
            out.union_with(b);
        }
    }
    out
}

/// Splits every block by `x`; returns whether anything changed.
fn refine(blocks: &mut Vec<WorldSet>, x: &WorldSet) -> bool {
    let mut changed = false;
    let mut out = Vec::with_capacity(blocks.len());
    for b in blocks.drain(..) {
        let mut inside = b.clone();
        inside.intersect_with(x);
        let mut outside = b;
        outside.difference_with(x);
        changed |= !inside.is_clear() && !outside.is_clear();
        out.extend([inside, outside].into_iter().filter(|s| !s.is_clear()));
    }
    *blocks = out;
    changed
}

/// Least family containing the carrier and the atoms' truth sets, closed
/// under complement, intersection and the operators of `lang`.
///
/// Each round applies the operators to every union of current blocks, so
/// the cost is exponential in the number of blocks; intended for small
/// models.
pub fn definable_closure(model: &Model, atoms: &[String], lang: LanguageTag) -> DefinableFamily {
    let frame = model.frame();
    let n = frame.len();
    let mut blocks = vec![frame.full_set()];
    for atom in atoms {
        refine(&mut blocks, &model.atom_set(atom));
    }
    loop {
        let snapshot = blocks.clone();
        assert!(snapshot.len() < 64, "too many blocks");
        let mut changed = false;
        for mask in 0..(1u64 << snapshot.len()) {
            let x = union_of(&snapshot, mask, n);
            for &m in lang.modalities() {
                changed |= refine(&mut blocks, &modal_image(frame, m, &x));
            }
        }
        if !changed {
            break;
        }
    }
    blocks.sort_by_key(|b| b.minimum());
    DefinableFamily {
        blocks,
        language: lang,
        carrier: n,
    }
}

/// Whether `s` and `t` satisfy the same `lang`-formulas over `atoms`.
pub fn logically_equivalent(
    model: &Model,
    s: &str,
    t: &str,
    atoms: &[String],
    lang: LanguageTag,
) -> Result<bool, KripkeError> {
    let (i, j) = (model.frame().index_of(s)?, model.frame().index_of(t)?);
    Ok(!definable_closure(model, atoms, lang).separates(i, j))
}

/// Equivalence of two pointed models over all atoms either mentions,
/// decided on their disjoint union.
pub fn equivalent_pointed(
    m1: &Model,
    s: &str,
    m2: &Model,
    t: &str,
    lang: LanguageTag,
) -> Result<bool, KripkeError> {
    let i = m1.frame().index_of(s)?;
    let j = m2.frame().index_of(t)?;
    let (union, inj) = disjoint_union(m1, m2);
    let atoms: Vec<String> = union.atoms().map(str::to_string).collect();
    let family = definable_closure(&union, &atoms, lang);
    Ok(!family.separates(inj.left[i], inj.right[j]))
}
