//! Formulas of the modal language with □, Δ, ∘ and ▲.
//!
//! The stored AST only has the primitive connectives ⊤, atoms, ¬, ∧ and the
//! four modalities. Every derived connective (⊥, ∨, →, ↔, ◇, ∇, •, ▼) is
//! expanded by the smart constructors below, so two formulas that differ only
//! in sugar are structurally equal.

mod parse;
mod render;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use parse::{parse, parse_in, ParseError};
pub use render::render;

/// A formula over the primitive connectives.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Top,
    Prop(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    /// Necessity □.
    Box(Box<Formula>),
    /// Noncontingency Δ.
    Delta(Box<Formula>),
    /// Essence ∘.
    Circ(Box<Formula>),
    /// Strong noncontingency ▲.
    BlackTri(Box<Formula>),
}

/// The four primitive modalities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Modality {
    Box,
    Delta,
    Circ,
    BlackTri,
}

impl Modality {
    pub const ALL: [Modality; 4] = [
        Modality::Box,
        Modality::Delta,
        Modality::Circ,
        Modality::BlackTri,
    ];

    pub fn apply(self, inner: Formula) -> Formula {
        let inner = Box::new(inner);
        match self {
            Modality::Box => Formula::Box(inner),
            Modality::Delta => Formula::Delta(inner),
            Modality::Circ => Formula::Circ(inner),
            Modality::BlackTri => Formula::BlackTri(inner),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Modality::Box => "[]",
            Modality::Delta => "%",
            Modality::Circ => "o",
            Modality::BlackTri => "#",
        }
    }
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Modality::Box => "□",
            Modality::Delta => "Δ",
            Modality::Circ => "∘",
            Modality::BlackTri => "▲",
        };
        f.write_str(name)
    }
}

/// A sublanguage, identified by the modalities it admits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LanguageTag {
    /// Propositional logic, no modalities.
    PL,
    Box,
    Delta,
    Circ,
    BlackTri,
    /// All four modalities.
    Full,
}

impl LanguageTag {
    pub fn modalities(self) -> &'static [Modality] {
        match self {
            LanguageTag::PL => &[],
            LanguageTag::Box => &[Modality::Box],
            LanguageTag::Delta => &[Modality::Delta],
            LanguageTag::Circ => &[Modality::Circ],
            LanguageTag::BlackTri => &[Modality::BlackTri],
            LanguageTag::Full => &Modality::ALL,
        }
    }

    pub fn admits(self, modality: Modality) -> bool {
        self.modalities().contains(&modality)
    }
}

impl fmt::Display for LanguageTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            LanguageTag::PL => "L",
            LanguageTag::Box => "L(□)",
            LanguageTag::Delta => "L(Δ)",
            LanguageTag::Circ => "L(∘)",
            LanguageTag::BlackTri => "L(▲)",
            LanguageTag::Full => "L(□,Δ,∘,▲)",
        };
        f.write_str(name)
    }
}

impl std::str::FromStr for LanguageTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "pl" => Ok(LanguageTag::PL),
            "box" => Ok(LanguageTag::Box),
            "delta" => Ok(LanguageTag::Delta),
            "circ" => Ok(LanguageTag::Circ),
            "tri" | "blacktri" => Ok(LanguageTag::BlackTri),
            "full" => Ok(LanguageTag::Full),
            other => Err(format!("unknown language `{other}`")),
        }
    }
}

/// A simultaneous substitution of formulas for atoms.
pub type Substitution = BTreeMap<String, Formula>;

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Prop(name.into())
    }

    pub fn bottom() -> Formula {
        Formula::Top.not()
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(other))
    }

    /// `a ∨ b` as `¬(¬a ∧ ¬b)`.
    pub fn or(self, other: Formula) -> Formula {
        self.not().and(other.not()).not()
    }

    /// `a → b` as `¬(a ∧ ¬b)`.
    pub fn implies(self, other: Formula) -> Formula {
        self.and(other.not()).not()
    }

    /// `a ↔ b` as `(a → b) ∧ (b → a)`.
    pub fn iff(self, other: Formula) -> Formula {
        self.clone().implies(other.clone()).and(other.implies(self))
    }

    pub fn boxed(self) -> Formula {
        Formula::Box(Box::new(self))
    }

    /// `◇a` as `¬□¬a`.
    pub fn diamond(self) -> Formula {
        self.not().boxed().not()
    }

    pub fn delta(self) -> Formula {
        Formula::Delta(Box::new(self))
    }

    /// `∇a` as `¬Δa`.
    pub fn nabla(self) -> Formula {
        self.delta().not()
    }

    pub fn circ(self) -> Formula {
        Formula::Circ(Box::new(self))
    }

    /// `•a` as `¬∘a`.
    pub fn bullet(self) -> Formula {
        self.circ().not()
    }

    pub fn tri(self) -> Formula {
        Formula::BlackTri(Box::new(self))
    }

    /// `▼a` as `¬▲a`.
    pub fn blackdown(self) -> Formula {
        self.tri().not()
    }

    /// Left-nested conjunction of the given formulas; ⊤ when empty.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(parts: I) -> Formula {
        parts
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::Top)
    }

    /// The outermost modality and its argument, if this is a modal node.
    pub fn as_modal(&self) -> Option<(Modality, &Formula)> {
        match self {
            Formula::Box(a) => Some((Modality::Box, a)),
            Formula::Delta(a) => Some((Modality::Delta, a)),
            Formula::Circ(a) => Some((Modality::Circ, a)),
            Formula::BlackTri(a) => Some((Modality::BlackTri, a)),
            _ => None,
        }
    }

    /// Matches `¬(a ∧ ¬b)` and returns `(a, b)`.
    pub fn as_implication(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Not(inner) => match inner.as_ref() {
                Formula::And(a, nb) => match nb.as_ref() {
                    Formula::Not(b) => Some((a, b)),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }
    }

    /// Matches `(a → b) ∧ (b → a)` and returns `(a, b)`.
    pub fn as_biconditional(&self) -> Option<(&Formula, &Formula)> {
        let Formula::And(l, r) = self else {
            return None;
        };
        let (a, b) = l.as_implication()?;
        let (b2, a2) = r.as_implication()?;
        (a == a2 && b == b2).then_some((a, b))
    }

    /// Immediate subformulas.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Top | Formula::Prop(_) => vec![],
            Formula::Not(a)
            | Formula::Box(a)
            | Formula::Delta(a)
            | Formula::Circ(a)
            | Formula::BlackTri(a) => vec![a],
            Formula::And(a, b) => vec![a, b],
        }
    }

    /// Atoms occurring in the formula.
    pub fn props_of(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_props(&mut out);
        out
    }

    fn collect_props(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Prop(p) => {
                out.insert(p.clone());
            }
            other => {
                for child in other.children() {
                    child.collect_props(out);
                }
            }
        }
    }

    /// The set of distinct subformulas, including the formula itself.
    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_subformulas(&mut out);
        out
    }

    fn collect_subformulas(&self, out: &mut BTreeSet<Formula>) {
        if out.insert(self.clone()) {
            for child in self.children() {
                child.collect_subformulas(out);
            }
        }
    }

    /// Maximal nesting of modal operators of any kind.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Top | Formula::Prop(_) => 0,
            Formula::Not(a) => a.modal_depth(),
            Formula::And(a, b) => a.modal_depth().max(b.modal_depth()),
            Formula::Box(a) | Formula::Delta(a) | Formula::Circ(a) | Formula::BlackTri(a) => {
                1 + a.modal_depth()
            }
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// Modalities used anywhere in the formula.
    pub fn modalities(&self) -> BTreeSet<Modality> {
        let mut out = BTreeSet::new();
        self.collect_modalities(&mut out);
        out
    }

    fn collect_modalities(&self, out: &mut BTreeSet<Modality>) {
        if let Some((m, _)) = self.as_modal() {
            out.insert(m);
        }
        for child in self.children() {
            child.collect_modalities(out);
        }
    }

    /// The first modality not admitted by `tag`, if any.
    pub fn foreign_modality(&self, tag: LanguageTag) -> Option<Modality> {
        self.modalities().into_iter().find(|m| !tag.admits(*m))
    }

    pub fn in_language(&self, tag: LanguageTag) -> bool {
        self.foreign_modality(tag).is_none()
    }

    /// Simultaneously replaces every mapped atom. Unmapped atoms stay put.
    pub fn substitute(&self, sigma: &Substitution) -> Formula {
        match self {
            Formula::Top => Formula::Top,
            Formula::Prop(p) => sigma.get(p).cloned().unwrap_or_else(|| self.clone()),
            Formula::Not(a) => a.substitute(sigma).not(),
            Formula::And(a, b) => a.substitute(sigma).and(b.substitute(sigma)),
            Formula::Box(a) => a.substitute(sigma).boxed(),
            Formula::Delta(a) => a.substitute(sigma).delta(),
            Formula::Circ(a) => a.substitute(sigma).circ(),
            Formula::BlackTri(a) => a.substitute(sigma).tri(),
        }
    }

    /// Rebuilds the formula with `f` applied to every immediate child.
    pub fn map_children(&self, mut f: impl FnMut(&Formula) -> Formula) -> Formula {
        match self {
            Formula::Top | Formula::Prop(_) => self.clone(),
            Formula::Not(a) => f(a).not(),
            Formula::And(a, b) => f(a).and(f(b)),
            Formula::Box(a) => f(a).boxed(),
            Formula::Delta(a) => f(a).delta(),
            Formula::Circ(a) => f(a).circ(),
            Formula::BlackTri(a) => f(a).tri(),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// Builds a substitution from `(atom, formula)` pairs.
pub fn substitution<I, S>(pairs: I) -> Substitution
where
    I: IntoIterator<Item = (S, Formula)>,
    S: Into<String>,
{
    pairs.into_iter().map(|(k, v)| (k.into(), v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }
    fn q() -> Formula {
        Formula::atom("q")
    }

    #[test]
    fn sugar_expands_to_primitives() {
        assert_eq!(p().implies(q()), p().and(q().not()).not());
        assert_eq!(p().or(q()), p().not().and(q().not()).not());
        assert_eq!(Formula::bottom(), Formula::Not(Box::new(Formula::Top)));
        assert_eq!(p().blackdown(), Formula::Not(Box::new(p().tri())));
    }

    #[test]
    fn pattern_views() {
        let imp = p().implies(q());
        assert_eq!(imp.as_implication(), Some((&p(), &q())));
        let iff = p().iff(q());
        assert_eq!(iff.as_biconditional(), Some((&p(), &q())));
        assert_eq!(p().and(q()).as_biconditional(), None);
    }

    #[test]
    fn props_of_counterexample_formula() {
        let phi = p().implies(q()).tri().and(p().tri());
        let expected: BTreeSet<String> = ["p", "q"].iter().map(|s| s.to_string()).collect();
        assert_eq!(phi.props_of(), expected);
    }

    #[test]
    fn modal_depth_counts_every_modality() {
        assert_eq!(p().tri().tri().modal_depth(), 2);
        assert_eq!(p().boxed().delta().circ().modal_depth(), 3);
        assert_eq!(p().and(q()).not().modal_depth(), 0);
    }

    #[test]
    fn subformula_count_after_desugaring() {
        // ▲p → Δp = ¬(▲p ∧ ¬Δp): {p, ▲p, Δp, ¬Δp, ▲p∧¬Δp, ¬(▲p∧¬Δp)}
        let phi = p().tri().implies(p().delta());
        assert_eq!(phi.subformulas().len(), 6);
    }

    #[test]
    fn substitution_replaces_uniformly() {
        let axiom = p().tri().iff(p().not().tri());
        let phi = q().and(Formula::atom("r")).boxed();
        let inst = axiom.substitute(&substitution([("p", phi.clone())]));
        assert_eq!(inst, phi.clone().tri().iff(phi.not().tri()));
    }

    #[test]
    fn empty_substitution_is_identity() {
        assert_eq!(p().substitute(&Substitution::new()), p());
    }

    #[test]
    fn substitution_is_simultaneous() {
        let phi = p().and(q()).tri();
        let swapped = phi.substitute(&substitution([("p", q()), ("q", p())]));
        assert_eq!(swapped, q().and(p()).tri());
    }

    #[test]
    fn language_membership() {
        let phi = p().tri().and(p().delta());
        assert!(phi.in_language(LanguageTag::Full));
        assert!(!phi.in_language(LanguageTag::BlackTri));
        assert_eq!(
            phi.foreign_modality(LanguageTag::BlackTri),
            Some(Modality::Delta)
        );
        assert!(p().and(q()).in_language(LanguageTag::PL));
    }
}
