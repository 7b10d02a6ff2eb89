//! Bounded satisfiability by exhaustive model enumeration.
//!
//! Candidates are visited by world count, then relation bitmask, then
//! valuation bitmask, all ascending. A candidate is skipped unless its
//! per-world keys `(out-degree, valuation bits)` are nondecreasing in world
//! order; every model has an isomorphic copy that passes, so no
//! satisfiable isomorphism class is lost.
//!
//! On the unconstrained class an empty search is a proof of
//! unsatisfiability once it covers [`fmp_bound`] worlds. The bound comes
//! from the tree-model property of `K` applied to the `□`-translation:
//! a satisfiable formula of modal depth `d` with `k` distinct boxed
//! subformulas has a tree model with at most `1 + k + … + k^d` nodes.
//! Filtration gives `2^|subformulas|` as an alternative; the smaller wins.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::Formula;
use crate::kripke::{Frame, FrameProperty, Model, WorldSet};
use crate::semantics::truth_set;
use crate::translate::to_box;

/// Default cap on the number of candidate models examined.
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SatError {
    #[error("max_worlds must be at least 1")]
    NoWorlds,
    #[error("search budget of {budget} candidates exhausted at {worlds} worlds")]
    BudgetExceeded { budget: u64, worlds: usize },
    #[error("{worlds} worlds with {atoms} atoms is beyond exhaustive search")]
    TooLarge { worlds: usize, atoms: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SatOutcome {
    /// A pointed model satisfying the formula.
    Sat {
        model: crate::kripke::ModelFile,
        world: String,
    },
    /// No model with at most this many worlds.
    UnsatUpTo(usize),
    /// No model at all: the search covered the certification bound.
    UnsatCertified(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatResult {
    pub outcome: SatOutcome,
    /// Largest world count searched.
    pub bound: usize,
    pub class: Vec<FrameProperty>,
    /// Candidates examined.
    pub explored: u64,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self.outcome, SatOutcome::Sat { .. })
    }

    /// The witness as a model and world name.
    pub fn witness(&self) -> Option<(Model, &str)> {
        match &self.outcome {
            SatOutcome::Sat { model, world } => {
                Some((model.model().expect("search output is well formed"), world))
            }
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatOptions {
    pub class: Vec<FrameProperty>,
    pub max_worlds: usize,
    pub node_budget: u64,
}

impl SatOptions {
    pub fn new(class: &[FrameProperty], max_worlds: usize) -> SatOptions {
        SatOptions {
            class: class.to_vec(),
            max_worlds,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// World count beyond which an empty unconstrained search proves
/// unsatisfiability.
pub fn fmp_bound(phi: &Formula) -> u128 {
    let t = to_box(phi);
    let subs = t.subformulas();
    let k = subs.iter().filter(|s| matches!(s, Formula::Box(_))).count() as u128;
    let d = t.modal_depth() as u32;
    let mut tree: u128 = 0;
    let mut level: u128 = 1;
    for _ in 0..=d {
        tree = tree.saturating_add(level);
        level = level.saturating_mul(k);
    }
    let filtration = 1u128.checked_shl(subs.len() as u32).unwrap_or(u128::MAX);
    tree.min(filtration)
}

pub fn satisfiable(
    phi: &Formula,
    class: &[FrameProperty],
    max_worlds: usize,
) -> Result<SatResult, SatError> {
    satisfiable_with(phi, &SatOptions::new(class, max_worlds))
}

fn world_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("w{i}")).collect()
}

pub fn satisfiable_with(phi: &Formula, options: &SatOptions) -> Result<SatResult, SatError> {
    if options.max_worlds == 0 {
        return Err(SatError::NoWorlds);
    }
    let certifiable = options.class.is_empty();
    let cert = fmp_bound(phi);
    let limit = if certifiable && cert <= options.max_worlds as u128 {
        cert as usize
    } else {
        options.max_worlds
    };
    let atoms: Vec<String> = phi.props_of().into_iter().collect();
    let mut explored: u64 = 0;
    for n in 1..=limit {
        if n * n >= 32 || n * atoms.len() >= 32 {
            return Err(SatError::TooLarge {
                worlds: n,
                atoms: atoms.len(),
            });
        }
        let bits = n * atoms.len();
        for rel in 0u32..(1 << (n * n)) {
            let frame = Frame::from_indices(
                world_names(n),
                (0..n * n)
                    .filter(|b| rel >> b & 1 == 1)
                    .map(|b| (b / n, b % n)),
            )
            .expect("generated names are distinct");
            if !options.class.iter().all(|&p| frame.has_property(p)) {
                continue;
            }
            let degree: Vec<usize> = (0..n).map(|w| frame.succ(w).len()).collect();
            for val in 0u32..(1 << bits) {
                // Valuation bits of world w, atom-major.
                let key = |w: usize| {
                    let bits: u32 = (0..atoms.len())
                        .map(|a| (val >> (a * n + w) & 1) << a)
                        .sum();
                    (degree[w], bits)
                };
                if (1..n).any(|w| key(w - 1) > key(w)) {
                    continue;
                }
                explored += 1;
                if explored > options.node_budget {
                    return Err(SatError::BudgetExceeded {
                        budget: options.node_budget,
                        worlds: n,
                    });
                }
                let valuation = atoms
                    .iter()
                    .enumerate()
                    .map(|(a, atom)| {
                        let mut set = WorldSet::with_capacity(n);
                        set.extend((0..n).filter(|w| val >> (a * n + w) & 1 == 1));
                        (atom.clone(), set)
                    })
                    .collect();
                let model = Model::from_sets(frame.clone(), valuation);
                if let Some(w) = truth_set(&model, phi).minimum() {
                    return Ok(SatResult {
                        outcome: SatOutcome::Sat {
                            world: model.frame().name(w).to_string(),
                            model: model.to_file(),
                        },
                        bound: n,
                        class: options.class.clone(),
                        explored,
                    });
                }
            }
        }
    }
    let outcome = if certifiable && limit as u128 == cert {
        SatOutcome::UnsatCertified(limit)
    } else {
        SatOutcome::UnsatUpTo(limit)
    };
    Ok(SatResult {
        outcome,
        bound: limit,
        class: options.class.clone(),
        explored,
    })
}
