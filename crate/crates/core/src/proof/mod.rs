//! Hilbert-style proof checking for the ▲ axiom systems.
//!
//! A script is a numbered list of `L(▲)` formulas, each with a
//! justification pointing only at earlier lines. Checking is local: a line
//! is accepted when its rule, applied to the referenced lines, yields
//! exactly that formula.
//!
//! | system | axioms | rules |
//! |--------|--------|-------|
//! | K      | top, neg, and | TAUT US MP R |
//! | K4     | K + 4 | as K |
//! | KB     | K + B | as K |
//! | KB5    | KB + 5 | as K |
//! | KB5'   | KB + 5' | as K |
//! | LA     | A1, A2, A3 | TAUT RTri MP RE |
//!
//! Premise lines are allowed in every system. Lines depending on premises
//! may only be combined by MP; the other rules need theorems.

mod script;
mod taut;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{parse, render, Formula, LanguageTag, Substitution};
use crate::kripke::FrameProperty;

pub use script::{parse_script, ScriptError};
pub use taut::{is_tautology_instance, MAX_TAUT_VARIABLES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SystemName {
    K,
    K4,
    KB,
    KB5,
    KB5Prime,
    LA,
}

impl SystemName {
    pub const ALL: [SystemName; 6] = [
        SystemName::K,
        SystemName::K4,
        SystemName::KB,
        SystemName::KB5,
        SystemName::KB5Prime,
        SystemName::LA,
    ];

    /// Frame conditions the system is sound for.
    pub fn frame_class(self) -> Vec<FrameProperty> {
        match self {
            SystemName::K | SystemName::LA => vec![],
            SystemName::K4 => vec![FrameProperty::Transitive],
            SystemName::KB => vec![FrameProperty::Symmetric],
            SystemName::KB5 | SystemName::KB5Prime => {
                vec![FrameProperty::Symmetric, FrameProperty::Euclidean]
            }
        }
    }
}

impl fmt::Display for SystemName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemName::K => "K",
            SystemName::K4 => "K4",
            SystemName::KB => "KB",
            SystemName::KB5 => "KB5",
            SystemName::KB5Prime => "KB5'",
            SystemName::LA => "LA",
        })
    }
}

impl std::str::FromStr for SystemName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SystemName::ALL
            .into_iter()
            .find(|n| n.to_string() == s.trim())
            .ok_or_else(|| format!("unknown system `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    Taut,
    Us,
    Mp,
    R,
    RTri,
    Re,
    Ax,
    Premise,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Taut => "TAUT",
            Rule::Us => "US",
            Rule::Mp => "MP",
            Rule::R => "R",
            Rule::RTri => "RTri",
            Rule::Re => "RE",
            Rule::Ax => "AX",
            Rule::Premise => "PREM",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomSystem {
    pub name: SystemName,
    pub axioms: Vec<(&'static str, Formula)>,
    pub rules: BTreeSet<Rule>,
}

const SCHEMAS: &[(&str, &str)] = &[
    ("top", "#true"),
    ("neg", "#!p <-> #p"),
    ("and", "#p & #q -> #(p & q)"),
    ("4", "#p -> ##p"),
    ("B", "p -> #(#p -> p)"),
    ("5", "!#p -> #!#p"),
    ("5'", "p & !#p -> #(p & #p)"),
    ("A1", "#p -> #!p"),
    ("A2", "#p & ~(p | q) -> ~q"),
    ("A3", "#p -> (p & #(p | q)) | (!p & #(!p | r))"),
];

/// The schema with this label, whatever system it belongs to.
pub fn schema(label: &str) -> Option<Formula> {
    SCHEMAS
        .iter()
        .find(|(l, _)| *l == label)
        .map(|(_, text)| parse(text).expect("built-in schema parses"))
}

impl AxiomSystem {
    pub fn new(name: SystemName) -> AxiomSystem {
        let labels: &[&str] = match name {
            SystemName::K => &["top", "neg", "and"],
            SystemName::K4 => &["top", "neg", "and", "4"],
            SystemName::KB => &["top", "neg", "and", "B"],
            SystemName::KB5 => &["top", "neg", "and", "B", "5"],
            SystemName::KB5Prime => &["top", "neg", "and", "B", "5'"],
            SystemName::LA => &["A1", "A2", "A3"],
        };
        let rules = match name {
            SystemName::LA => [Rule::Taut, Rule::RTri, Rule::Mp, Rule::Re],
            _ => [Rule::Taut, Rule::Us, Rule::Mp, Rule::R],
        };
        AxiomSystem {
            name,
            axioms: labels
                .iter()
                .map(|&l| {
                    let (label, _) = SCHEMAS.iter().find(|(x, _)| *x == l).expect("known label");
                    (*label, schema(l).expect("known label"))
                })
                .collect(),
            rules: rules.into_iter().chain([Rule::Ax, Rule::Premise]).collect(),
        }
    }

    pub fn axiom(&self, label: &str) -> Option<&Formula> {
        self.axioms
            .iter()
            .find(|(l, _)| *l == label)
            .map(|(_, f)| f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Axiom {
        label: String,
        sigma: Option<Substitution>,
    },
    Taut,
    Mp(usize, usize),
    Us(usize, Substitution),
    R(usize),
    RTri(usize),
    Re(usize),
    Premise,
}

impl Justification {
    pub fn rule(&self) -> Rule {
        match self {
            Justification::Axiom { .. } => Rule::Ax,
            Justification::Taut => Rule::Taut,
            Justification::Mp(..) => Rule::Mp,
            Justification::Us(..) => Rule::Us,
            Justification::R(_) => Rule::R,
            Justification::RTri(_) => Rule::RTri,
            Justification::Re(_) => Rule::Re,
            Justification::Premise => Rule::Premise,
        }
    }

    /// Line numbers this justification cites.
    pub fn references(&self) -> Vec<usize> {
        match self {
            Justification::Mp(i, j) => vec![*i, *j],
            Justification::Us(i, _)
            | Justification::R(i)
            | Justification::RTri(i)
            | Justification::Re(i) => vec![*i],
            _ => vec![],
        }
    }
}

fn write_sigma(f: &mut fmt::Formatter<'_>, sigma: &Substitution) -> fmt::Result {
    for (p, phi) in sigma {
        write!(f, ", {p}:={}", render(phi))?;
    }
    Ok(())
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom { label, sigma } => {
                write!(f, "AX({label}")?;
                if let Some(sigma) = sigma {
                    write_sigma(f, sigma)?;
                }
                f.write_str(")")
            }
            Justification::Taut => f.write_str("TAUT"),
            Justification::Mp(i, j) => write!(f, "MP({i},{j})"),
            Justification::Us(i, sigma) => {
                write!(f, "US({i}")?;
                write_sigma(f, sigma)?;
                f.write_str(")")
            }
            Justification::R(i) => write!(f, "R({i})"),
            Justification::RTri(i) => write!(f, "RTri({i})"),
            Justification::Re(i) => write!(f, "RE({i})"),
            Justification::Premise => f.write_str("PREM"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofLine {
    pub index: usize,
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofScript {
    pub system: SystemName,
    pub lines: Vec<ProofLine>,
}

impl fmt::Display for ProofScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "system: {}", self.system)?;
        for line in &self.lines {
            writeln!(
                f,
                "{}. {} ; {}",
                line.index,
                render(&line.formula),
                line.justification
            )?;
        }
        Ok(())
    }
}

/// Why a line was not accepted.
#[derive(Clone, Debug, Error, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rejection {
    #[error("line {line} cites line {reference}, which is not an earlier line")]
    MalformedReference { line: usize, reference: usize },
    #[error("rule {rule} is not part of {system}")]
    RuleNotInSystem { rule: Rule, system: SystemName },
    #[error("{system} has no axiom `{label}`")]
    UnknownAxiom { label: String, system: SystemName },
    #[error("{rule}: expected `{expected}`, found `{found}` (differs at `{expected_part}` vs `{found_part}`)")]
    Mismatch {
        rule: Rule,
        expected: String,
        found: String,
        expected_part: String,
        found_part: String,
    },
    #[error("{rule}: cited line `{found}` is not {shape}")]
    WrongShape {
        rule: Rule,
        shape: String,
        found: String,
    },
    #[error("AX({label}): `{found}` is not an instance of `{schema}`")]
    NotAnInstance {
        label: String,
        schema: String,
        found: String,
    },
    #[error("TAUT: `{0}` is not a substitution instance of a tautology")]
    NotTautology(String),
    #[error("TAUT: {0} propositional variables exceed the truth-table cap")]
    TooManyVariables(usize),
    #[error("{rule} applied to line {line}, which depends on premises")]
    PremiseDependent { rule: Rule, line: usize },
    #[error("formula uses `{0}`, outside the ▲ language")]
    OutsideLanguage(String),
}

impl Rejection {
    /// Short name of the failed clause.
    pub fn clause(&self) -> String {
        match self {
            Rejection::MalformedReference { .. } => "reference".into(),
            Rejection::RuleNotInSystem { rule, .. } => rule.to_string(),
            Rejection::UnknownAxiom { .. } | Rejection::NotAnInstance { .. } => "AX".into(),
            Rejection::Mismatch { rule, .. }
            | Rejection::WrongShape { rule, .. }
            | Rejection::PremiseDependent { rule, .. } => rule.to_string(),
            Rejection::NotTautology(_) | Rejection::TooManyVariables(_) => "TAUT".into(),
            Rejection::OutsideLanguage(_) => "language".into(),
        }
    }
}

/// First differing subterms of two formulas in a left-to-right walk.
pub fn first_difference<'a>(a: &'a Formula, b: &'a Formula) -> Option<(&'a Formula, &'a Formula)> {
    if a == b {
        return None;
    }
    let (ca, cb) = (a.children(), b.children());
    let same_head = std::mem::discriminant(a) == std::mem::discriminant(b) && ca.len() == cb.len();
    if !same_head || ca.is_empty() {
        return Some((a, b));
    }
    ca.into_iter()
        .zip(cb)
        .find_map(|(x, y)| first_difference(x, y))
}

fn expect_eq(rule: Rule, expected: &Formula, found: &Formula) -> Result<(), Rejection> {
    match first_difference(expected, found) {
        None => Ok(()),
        Some((x, y)) => Err(Rejection::Mismatch {
            rule,
            expected: render(expected),
            found: render(found),
            expected_part: render(x),
            found_part: render(y),
        }),
    }
}

/// The unique `σ` with `schema σ = candidate`, if any.
pub fn axiom_instance(schema: &Formula, candidate: &Formula) -> Option<Substitution> {
    fn go(s: &Formula, c: &Formula, sigma: &mut Substitution) -> bool {
        match (s, c) {
            (Formula::Prop(p), _) => match sigma.get(p) {
                Some(bound) => bound == c,
                None => {
                    sigma.insert(p.clone(), c.clone());
                    true
                }
            },
            (Formula::Top, Formula::Top) => true,
            (Formula::Not(a), Formula::Not(b))
            | (Formula::Box(a), Formula::Box(b))
            | (Formula::Delta(a), Formula::Delta(b))
            | (Formula::Circ(a), Formula::Circ(b))
            | (Formula::BlackTri(a), Formula::BlackTri(b)) => go(a, b, sigma),
            (Formula::And(a1, a2), Formula::And(b1, b2)) => go(a1, b1, sigma) && go(a2, b2, sigma),
            _ => false,
        }
    }
    let mut sigma = Substitution::new();
    go(schema, candidate, &mut sigma).then_some(sigma)
}

impl ProofScript {
    fn line(&self, at: usize, reference: usize) -> Result<&ProofLine, Rejection> {
        if reference == 0 || reference >= self.lines[at].index {
            return Err(Rejection::MalformedReference {
                line: self.lines[at].index,
                reference,
            });
        }
        self.lines
            .iter()
            .take(at)
            .find(|l| l.index == reference)
            .ok_or(Rejection::MalformedReference {
                line: self.lines[at].index,
                reference,
            })
    }

    /// Whether the line at position `at` rests on a premise.
    pub fn depends_on_premises(&self, at: usize) -> bool {
        let mut dep = vec![false; self.lines.len()];
        for (k, line) in self.lines.iter().enumerate().take(at + 1) {
            dep[k] = matches!(line.justification, Justification::Premise)
                || line.justification.references().iter().any(|&r| {
                    self.lines[..k]
                        .iter()
                        .position(|l| l.index == r)
                        .is_some_and(|p| dep[p])
                });
        }
        dep[at]
    }

    fn theorem_line(
        &self,
        at: usize,
        reference: usize,
        rule: Rule,
    ) -> Result<&ProofLine, Rejection> {
        let line = self.line(at, reference)?;
        let pos = self
            .lines
            .iter()
            .position(|l| l.index == reference)
            .expect("found above");
        if self.depends_on_premises(pos) {
            return Err(Rejection::PremiseDependent {
                rule,
                line: reference,
            });
        }
        Ok(line)
    }
}

/// Checks the line numbered `index`.
pub fn check_line(script: &ProofScript, index: usize) -> Result<(), Rejection> {
    let at = script.lines.iter().position(|l| l.index == index).ok_or(
        Rejection::MalformedReference {
            line: index,
            reference: index,
        },
    )?;
    let line = &script.lines[at];
    let system = AxiomSystem::new(script.system);
    let phi = &line.formula;
    if let Some(m) = phi.foreign_modality(LanguageTag::BlackTri) {
        return Err(Rejection::OutsideLanguage(m.to_string()));
    }
    let rule = line.justification.rule();
    if !system.rules.contains(&rule) {
        return Err(Rejection::RuleNotInSystem {
            rule,
            system: script.system,
        });
    }
    match &line.justification {
        Justification::Premise => Ok(()),
        Justification::Taut => match is_tautology_instance(phi) {
            Ok(true) => Ok(()),
            Ok(false) => Err(Rejection::NotTautology(render(phi))),
            Err(n) => Err(Rejection::TooManyVariables(n)),
        },
        Justification::Axiom { label, sigma } => {
            let schema = system.axiom(label).ok_or_else(|| Rejection::UnknownAxiom {
                label: label.clone(),
                system: script.system,
            })?;
            match sigma {
                Some(sigma) => expect_eq(Rule::Ax, &schema.substitute(sigma), phi),
                None => axiom_instance(schema, phi).map(|_| ()).ok_or_else(|| {
                    Rejection::NotAnInstance {
                        label: label.clone(),
                        schema: render(schema),
                        found: render(phi),
                    }
                }),
            }
        }
        Justification::Mp(i, j) => {
            let minor = &script.line(at, *i)?.formula;
            let major = &script.line(at, *j)?.formula;
            expect_eq(Rule::Mp, &minor.clone().implies(phi.clone()), major)
        }
        Justification::Us(i, sigma) => {
            let source = &script.theorem_line(at, *i, Rule::Us)?.formula;
            expect_eq(Rule::Us, &source.substitute(sigma), phi)
        }
        Justification::R(i) => {
            let source = &script.theorem_line(at, *i, Rule::R)?.formula;
            let (a, b) = source
                .as_implication()
                .ok_or_else(|| Rejection::WrongShape {
                    rule: Rule::R,
                    shape: "an implication".into(),
                    found: render(source),
                })?;
            let expected = a.clone().tri().and(a.clone()).implies(b.clone().tri());
            expect_eq(Rule::R, &expected, phi)
        }
        Justification::RTri(i) => {
            let source = &script.theorem_line(at, *i, Rule::RTri)?.formula;
            expect_eq(Rule::RTri, &source.clone().tri(), phi)
        }
        Justification::Re(i) => {
            let source = &script.theorem_line(at, *i, Rule::Re)?.formula;
            let (a, b) = source
                .as_biconditional()
                .ok_or_else(|| Rejection::WrongShape {
                    rule: Rule::Re,
                    shape: "a biconditional".into(),
                    found: render(source),
                })?;
            expect_eq(Rule::Re, &a.clone().tri().iff(b.clone().tri()), phi)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineReport {
    pub index: usize,
    pub formula: String,
    pub justification: String,
    pub rejection: Option<Rejection>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptReport {
    pub system: SystemName,
    pub lines: Vec<LineReport>,
}

impl ScriptReport {
    pub fn is_ok(&self) -> bool {
        self.lines.iter().all(|l| l.rejection.is_none())
    }

    pub fn first_rejection(&self) -> Option<(usize, &Rejection)> {
        self.lines
            .iter()
            .find_map(|l| l.rejection.as_ref().map(|r| (l.index, r)))
    }
}

pub fn check_script(script: &ProofScript) -> ScriptReport {
    ScriptReport {
        system: script.system,
        lines: script
            .lines
            .iter()
            .map(|line| LineReport {
                index: line.index,
                formula: render(&line.formula),
                justification: line.justification.to_string(),
                rejection: check_line(script, line.index).err(),
            })
            .collect(),
    }
}

/// Formulas of accepted lines that rest on no premise.
pub fn theorems(script: &ProofScript) -> Vec<Formula> {
    script
        .lines
        .iter()
        .enumerate()
        .filter(|(at, line)| {
            check_line(script, line.index).is_ok() && !script.depends_on_premises(*at)
        })
        .map(|(_, line)| line.formula.clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::substitution;

    fn f(text: &str) -> Formula {
        parse(text).unwrap()
    }

    #[test]
    fn matching_axiom_schemas() {
        let sigma = axiom_instance(&f("#!p <-> #p"), &f("#!(q & r) <-> #(q & r)")).unwrap();
        assert_eq!(sigma, substitution([("p", f("q & r"))]));
        let sigma = axiom_instance(
            &f("#p & #q -> #(p & q)"),
            &f("#true & #true -> #(true & true)"),
        )
        .unwrap();
        assert_eq!(
            sigma,
            substitution([("p", Formula::Top), ("q", Formula::Top)])
        );
        assert_eq!(
            axiom_instance(&f("p -> #(#p -> p)"), &f("q -> #(#r -> q)")),
            None
        );
    }

    #[test]
    fn systems_contain_their_axioms() {
        assert_eq!(AxiomSystem::new(SystemName::K).axioms.len(), 3);
        assert!(AxiomSystem::new(SystemName::KB5Prime).axiom("5'").is_some());
        assert!(AxiomSystem::new(SystemName::KB5Prime).axiom("5").is_none());
        assert!(!AxiomSystem::new(SystemName::LA).rules.contains(&Rule::R));
        assert!(AxiomSystem::new(SystemName::LA).rules.contains(&Rule::Re));
    }

    fn script(system: SystemName, lines: &[(&str, Justification)]) -> ProofScript {
        ProofScript {
            system,
            lines: lines
                .iter()
                .enumerate()
                .map(|(k, (text, j))| ProofLine {
                    index: k + 1,
                    formula: f(text),
                    justification: j.clone(),
                })
                .collect(),
        }
    }

    #[test]
    fn rule_r_and_mp() {
        let s = script(
            SystemName::K,
            &[
                ("p -> p | q", Justification::Taut),
                ("#p & p -> #(p | q)", Justification::R(1)),
                ("#p & p", Justification::Premise),
                ("#(p | q)", Justification::Mp(3, 2)),
            ],
        );
        assert!(check_script(&s).is_ok());
        assert_eq!(theorems(&s).len(), 2);
    }

    #[test]
    fn missing_reference_is_malformed() {
        let s = script(
            SystemName::K,
            &[
                ("#p", Justification::Premise),
                ("#q", Justification::Mp(1, 2)),
            ],
        );
        assert_eq!(
            check_line(&s, 2),
            Err(Rejection::MalformedReference {
                line: 2,
                reference: 2
            })
        );
    }

    #[test]
    fn rules_need_theorems() {
        let s = script(
            SystemName::K,
            &[
                ("p -> q", Justification::Premise),
                ("#p & p -> #q", Justification::R(1)),
            ],
        );
        assert!(matches!(
            check_line(&s, 2),
            Err(Rejection::PremiseDependent { rule: Rule::R, .. })
        ));
    }

    #[test]
    fn mismatch_names_the_rule_and_the_difference() {
        let s = script(
            SystemName::K,
            &[
                ("p -> q", Justification::Taut),
                ("#p & p -> #r", Justification::R(1)),
            ],
        );
        assert_eq!(
            check_line(&s, 1),
            Err(Rejection::NotTautology("p -> q".into()))
        );
        match check_line(&s, 2) {
            Err(Rejection::Mismatch {
                rule,
                expected_part,
                found_part,
                ..
            }) => {
                assert_eq!(rule, Rule::R);
                assert_eq!((expected_part.as_str(), found_part.as_str()), ("q", "r"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn system_restrictions() {
        let s = script(
            SystemName::LA,
            &[(
                "#p -> ##p",
                Justification::Axiom {
                    label: "4".into(),
                    sigma: None,
                },
            )],
        );
        assert!(matches!(
            check_line(&s, 1),
            Err(Rejection::UnknownAxiom { .. })
        ));
        let s = script(
            SystemName::K,
            &[
                ("#true", Justification::Taut),
                ("##true", Justification::RTri(1)),
            ],
        );
        assert!(matches!(
            check_line(&s, 2),
            Err(Rejection::RuleNotInSystem {
                rule: Rule::RTri,
                ..
            })
        ));
        let s = script(SystemName::K, &[("[]p -> []p", Justification::Taut)]);
        assert!(matches!(
            check_line(&s, 1),
            Err(Rejection::OutsideLanguage(_))
        ));
    }

    #[test]
    fn rtri_and_re() {
        let s = script(
            SystemName::LA,
            &[
                ("p & q <-> q & p", Justification::Taut),
                ("#(p & q) <-> #(q & p)", Justification::Re(1)),
                ("#(p & q <-> q & p)", Justification::RTri(1)),
            ],
        );
        assert!(check_script(&s).is_ok(), "{:?}", check_script(&s));
    }
}
