//! Strong noncontingency logic over finite Kripke structures.
//!
//! The crate covers the language `L(□, Δ, ∘, ▲)` end to end: parsing and
//! printing, model checking, frame validity by valuation enumeration, the
//! translations between `▲` and `□`, ▲-bisimulation and contraction, exact
//! logical equivalence on finite models, Hilbert proof checking and bounded
//! satisfiability search.

pub mod bisim;
pub mod formula;
pub mod kripke;
pub mod proof;
pub mod random;
pub mod sat;
pub mod semantics;
pub mod translate;

pub use formula::{parse, parse_in, render, Formula, LanguageTag, Modality, ParseError};
pub use kripke::{Frame, FrameProperty, Model, WorldSet};
