//! `nckit`: model checking, validity, bisimulation, proof checking and
//! satisfiability for strong noncontingency logic.
//!
//! Exit codes: 0 affirmative answer, 1 negative answer, 2 usage or input
//! error, 3 search or enumeration budget exceeded.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use nckit_core::bisim::{self, BisimKind, BisimRelation};
use nckit_core::formula::{parse, render, Formula, LanguageTag};
use nckit_core::kripke::{disjoint_union, Frame, FrameProperty, Model};
use nckit_core::proof::{check_script, parse_script};
use nckit_core::sat::{satisfiable_with, SatError, SatOptions, SatOutcome};
use nckit_core::semantics::{self, SemanticsError, DEFAULT_VALUATION_CAP};
use nckit_core::translate::{to_blacktri, to_box};

use report::*;

#[derive(Parser)]
#[command(name = "nckit", version, about = "Strong noncontingency logic toolkit")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Box,
    Tri,
}

impl From<Kind> for BisimKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Box => BisimKind::Box,
            Kind::Tri => BisimKind::BlackTri,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Box,
    Tri,
}

#[derive(Subcommand)]
enum Command {
    /// Truth of a formula at a world.
    Check {
        #[arg(short = 'm')]
        model: PathBuf,
        #[arg(short = 'w')]
        world: String,
        #[arg(short = 'f')]
        formula: String,
    },
    /// Truth of a formula at every world of a model.
    ValidModel {
        #[arg(short = 'm')]
        model: PathBuf,
        #[arg(short = 'f')]
        formula: String,
    },
    /// Validity on a frame under every valuation.
    ValidFrame {
        #[arg(short = 'F')]
        frame: PathBuf,
        #[arg(short = 'f')]
        formula: String,
        /// Maximum number of valuations to enumerate.
        #[arg(long, default_value_t = DEFAULT_VALUATION_CAP)]
        budget: u64,
    },
    /// Entailment over a frame from premises given with -g.
    Entails {
        #[arg(short = 'F')]
        frame: PathBuf,
        #[arg(short = 'g')]
        premises: Vec<String>,
        #[arg(short = 'f')]
        formula: String,
        #[arg(long, default_value_t = DEFAULT_VALUATION_CAP)]
        budget: u64,
    },
    /// Translate into the □ or the ▲ language.
    Translate {
        #[arg(short = 'f')]
        formula: String,
        #[arg(long, value_enum)]
        lang: Target,
    },
    /// Bisimilarity of two pointed models, or verification of a relation
    /// given with --relation.
    Bisim {
        #[arg(short = 'm')]
        model: PathBuf,
        #[arg(short = 'w')]
        world: Option<String>,
        #[arg(short = 'n')]
        other: Option<PathBuf>,
        #[arg(short = 'x')]
        other_world: Option<String>,
        #[arg(long, value_enum, default_value = "tri")]
        kind: Kind,
        /// JSON list of world pairs to verify as a bisimulation.
        #[arg(long)]
        relation: Option<PathBuf>,
    },
    /// Quotient a model by ▲-bisimilarity.
    Contract {
        #[arg(short = 'm')]
        model: PathBuf,
    },
    /// Logical equivalence of two worlds in a sublanguage.
    Equiv {
        #[arg(short = 'm')]
        model: PathBuf,
        #[arg(short = 'w')]
        world: String,
        #[arg(short = 'n')]
        other: Option<PathBuf>,
        #[arg(short = 'x')]
        other_world: String,
        /// One of pl, box, delta, circ, tri, full.
        #[arg(long, default_value = "tri")]
        lang: String,
    },
    /// Check a proof script.
    Prove { script: PathBuf },
    /// Bounded satisfiability search.
    Sat {
        #[arg(short = 'f')]
        formula: String,
        /// Comma-separated frame properties.
        #[arg(long, default_value = "")]
        class: String,
        #[arg(long, default_value_t = 3)]
        max_worlds: usize,
        /// Maximum number of candidate models.
        #[arg(long, default_value_t = nckit_core::sat::DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Which frame properties hold, with counterexamples.
    FrameProps {
        #[arg(short = 'F')]
        frame: PathBuf,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_model(path: &Path) -> Result<Model> {
    Model::from_json(&read(path)?).with_context(|| format!("loading model {}", path.display()))
}

fn load_frame(path: &Path) -> Result<Frame> {
    Frame::from_json(&read(path)?).with_context(|| format!("loading frame {}", path.display()))
}

fn formula(text: &str) -> Result<Formula> {
    parse(text).with_context(|| format!("parsing `{text}`"))
}

fn emit<T: Serialize>(json: bool, report: &T, text: impl FnOnce() -> String) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(report).expect("reports serialise")
        );
    } else {
        println!("{}", text());
    }
}

fn answer(yes: bool) -> u8 {
    if yes {
        0
    } else {
        1
    }
}

fn run(cli: Cli) -> Result<u8> {
    let json = cli.json;
    match cli.command {
        Command::Check {
            model,
            world,
            formula: f,
        } => {
            let m = load_model(&model)?;
            let phi = formula(&f)?;
            let holds = semantics::satisfies(&m, &world, &phi)?;
            let r = CheckReport {
                formula: render(&phi),
                world,
                holds,
            };
            emit(json, &r, || format!("{}: {}", r.world, r.holds));
            Ok(answer(holds))
        }
        Command::ValidModel { model, formula: f } => {
            let m = load_model(&model)?;
            let phi = formula(&f)?;
            let truth = semantics::truth_set(&m, &phi);
            let failing: Vec<String> = (0..m.len())
                .filter(|&w| !truth.contains(w))
                .map(|w| m.frame().name(w).to_string())
                .collect();
            let r = ModelValidityReport {
                formula: render(&phi),
                valid: failing.is_empty(),
                failing_worlds: failing,
            };
            emit(json, &r, || {
                if r.valid {
                    "valid".into()
                } else {
                    format!("fails at {}", r.failing_worlds.join(", "))
                }
            });
            Ok(answer(r.valid))
        }
        Command::ValidFrame {
            frame,
            formula: f,
            budget,
        } => frame_check(json, &frame, &[], &f, budget),
        Command::Entails {
            frame,
            premises,
            formula: f,
            budget,
        } => frame_check(json, &frame, &premises, &f, budget),
        Command::Translate { formula: f, lang } => {
            let phi = formula(&f)?;
            let (target, out) = match lang {
                Target::Box => ("box", to_box(&phi)),
                Target::Tri => ("tri", to_blacktri(&phi)?),
            };
            let r = TranslateReport {
                input: render(&phi),
                target: target.into(),
                output: render(&out),
            };
            emit(json, &r, || r.output.clone());
            Ok(0)
        }
        Command::Bisim {
            model,
            world,
            other,
            other_world,
            kind,
            relation,
        } => bisim_command(
            json,
            &model,
            world,
            other,
            other_world,
            kind.into(),
            relation,
        ),
        Command::Contract { model } => {
            let m = load_model(&model)?;
            let c = bisim::contract(&m);
            let r = ContractReport {
                model: c.model.to_file(),
                block_of: c.block_of,
            };
            emit(json, &r, || c.model.to_json());
            Ok(0)
        }
        Command::Equiv {
            model,
            world,
            other,
            other_world,
            lang,
        } => {
            let tag: LanguageTag = lang.parse().map_err(anyhow::Error::msg)?;
            let m = load_model(&model)?;
            let equivalent = match other {
                Some(path) => {
                    let n = load_model(&path)?;
                    semantics::equivalent_pointed(&m, &world, &n, &other_world, tag)?
                }
                None => {
                    let atoms: Vec<String> = m.atoms().map(str::to_string).collect();
                    semantics::logically_equivalent(&m, &world, &other_world, &atoms, tag)?
                }
            };
            let r = EquivalenceReport {
                language: tag.to_string(),
                left: world,
                right: other_world,
                equivalent,
            };
            emit(json, &r, || {
                format!(
                    "{} and {} {} in {}",
                    r.left,
                    r.right,
                    if equivalent { "agree" } else { "are separated" },
                    r.language
                )
            });
            Ok(answer(equivalent))
        }
        Command::Prove { script } => {
            let s = parse_script(&read(&script)?)
                .with_context(|| format!("parsing {}", script.display()))?;
            let r = check_script(&s);
            emit(json, &r, || {
                r.lines
                    .iter()
                    .map(|l| match &l.rejection {
                        None => format!("{}. ok", l.index),
                        Some(e) => format!("{}. rejected: {e}", l.index),
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            });
            Ok(answer(r.is_ok()))
        }
        Command::Sat {
            formula: f,
            class,
            max_worlds,
            budget,
        } => {
            let phi = formula(&f)?;
            let class = class
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<FrameProperty>().map_err(anyhow::Error::msg))
                .collect::<Result<Vec<_>>>()?;
            let options = SatOptions {
                class,
                max_worlds,
                node_budget: budget,
            };
            let r = satisfiable_with(&phi, &options)?;
            emit(json, &r, || match &r.outcome {
                SatOutcome::Sat { model, world } => format!(
                    "sat at {world}: {}",
                    serde_json::to_string(model).expect("model serialises")
                ),
                SatOutcome::UnsatUpTo(n) => format!("no model with at most {n} worlds"),
                SatOutcome::UnsatCertified(n) => {
                    format!("unsatisfiable (search complete at {n} worlds)")
                }
            });
            Ok(answer(r.is_sat()))
        }
        Command::FrameProps { frame } => {
            let f = load_frame(&frame)?;
            let properties = FrameProperty::ALL
                .into_iter()
                .map(|p| {
                    let status = match f.check_property(p) {
                        Ok(()) => PropertyStatus {
                            holds: true,
                            witness: None,
                        },
                        Err(v) => PropertyStatus {
                            holds: false,
                            witness: Some(v.witness),
                        },
                    };
                    (p.to_string(), status)
                })
                .collect();
            let r = FramePropertiesReport { properties };
            emit(json, &r, || {
                r.properties
                    .iter()
                    .map(|(name, s)| match &s.witness {
                        None => format!("{name}: yes"),
                        Some(w) => format!("{name}: no ({})", w.join(",")),
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            });
            Ok(0)
        }
    }
}

fn frame_check(json: bool, frame: &Path, premises: &[String], f: &str, budget: u64) -> Result<u8> {
    let fr = load_frame(frame)?;
    let phi = formula(f)?;
    let gamma = premises
        .iter()
        .map(|g| formula(g))
        .collect::<Result<Vec<_>>>()?;
    let verdict = semantics::entails_on_frame_capped(&fr, &gamma, &phi, budget)?;
    let r = FrameValidityReport {
        formula: render(&phi),
        premises: gamma.iter().map(render).collect(),
        valid: verdict.is_valid(),
        countermodel: verdict.countermodel().cloned(),
    };
    emit(json, &r, || match &r.countermodel {
        None => "valid".into(),
        Some(c) => {
            let v: Vec<String> = c
                .valuation
                .iter()
                .map(|(p, ws)| format!("V({p})={{{}}}", ws.join(",")))
                .collect();
            format!("fails at {} with {}", c.world, v.join(" "))
        }
    });
    Ok(answer(r.valid))
}

fn bisim_command(
    json: bool,
    model: &Path,
    world: Option<String>,
    other: Option<PathBuf>,
    other_world: Option<String>,
    kind: BisimKind,
    relation: Option<PathBuf>,
) -> Result<u8> {
    let m = load_model(model)?;
    let n = other.as_deref().map(load_model).transpose()?;
    if let Some(path) = relation {
        let pairs: Vec<(String, String)> = serde_json::from_str(&read(&path)?)
            .with_context(|| format!("reading relation {}", path.display()))?;
        let carrier = match &n {
            Some(n) => disjoint_union(&m, n).0,
            None => m,
        };
        let report = bisim::check_bisimulation(&carrier, &BisimRelation::new(kind, pairs))?;
        let r = RelationCheckReport {
            valid: report.is_valid(),
            report,
        };
        emit(json, &r, || {
            if r.valid {
                "valid".into()
            } else {
                r.report
                    .violations
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join("\n")
            }
        });
        return Ok(answer(r.valid));
    }
    let (Some(s), Some(t)) = (world, other_world) else {
        bail!("bisimilarity needs -w and -x (or --relation)");
    };
    let n = n.unwrap_or_else(|| m.clone());
    let bisimilar = bisim::bisimilar(&m, &s, &n, &t, kind)?;
    let largest = bisim::largest_bisimulation(&m, &n, kind);
    let r = BisimilarityReport {
        kind: kind.to_string(),
        left: s,
        right: t,
        bisimilar,
        largest: largest.pairs.into_iter().collect(),
    };
    emit(json, &r, || {
        format!(
            "{} and {} are {}{}-bisimilar",
            r.left,
            r.right,
            if bisimilar { "" } else { "not " },
            r.kind
        )
    });
    Ok(answer(bisimilar))
}

fn exit_code(err: &anyhow::Error) -> u8 {
    let budget = err.chain().any(|cause| {
        matches!(
            cause.downcast_ref::<SemanticsError>(),
            Some(SemanticsError::BudgetExceeded { .. })
        ) || matches!(
            cause.downcast_ref::<SatError>(),
            Some(SatError::BudgetExceeded { .. })
        )
    });
    if budget {
        3
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
