//! Shared helpers: fixture loading and oracles that avoid the library's
//! set-based evaluator.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use nckit_core::kripke::{Frame, FrameProperty, Model};
use nckit_core::Formula;

pub fn repo_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join(rel)
}

pub fn model(name: &str) -> Model {
    let text = std::fs::read_to_string(repo_path(&format!("fixtures/{name}.json"))).unwrap();
    Model::from_json(&text).unwrap()
}

pub fn frame(name: &str) -> Frame {
    let text = std::fs::read_to_string(repo_path(&format!("fixtures/{name}.json"))).unwrap();
    Frame::from_json(&text).unwrap()
}

pub fn f(text: &str) -> Formula {
    nckit_core::parse(text).unwrap()
}

/// Pointwise evaluation straight from the truth clauses.
pub fn eval(m: &Model, w: usize, phi: &Formula) -> bool {
    let succ = m.frame().succ(w);
    match phi {
        Formula::Top => true,
        Formula::Prop(p) => m.holds(p, w),
        Formula::Not(a) => !eval(m, w, a),
        Formula::And(a, b) => eval(m, w, a) && eval(m, w, b),
        Formula::Box(a) => succ.iter().all(|&v| eval(m, v, a)),
        Formula::Delta(a) => {
            let vals: Vec<bool> = succ.iter().map(|&v| eval(m, v, a)).collect();
            vals.iter().all(|&x| x) || vals.iter().all(|&x| !x)
        }
        Formula::Circ(a) => !eval(m, w, a) || succ.iter().all(|&v| eval(m, v, a)),
        Formula::BlackTri(a) => {
            let here = eval(m, w, a);
            succ.iter().all(|&v| eval(m, v, a) == here)
        }
    }
}

pub fn eval_named(m: &Model, w: &str, phi: &Formula) -> bool {
    eval(m, m.frame().index_of(w).unwrap(), phi)
}

fn rel(fr: &Frame) -> Vec<Vec<bool>> {
    let n = fr.len();
    (0..n)
        .map(|a| (0..n).map(|b| fr.related(a, b)).collect())
        .collect()
}

/// First-order definitions checked over all tuples.
pub fn brute_property(fr: &Frame, p: FrameProperty) -> bool {
    let r = rel(fr);
    let n = fr.len();
    let all3 = |cond: &dyn Fn(usize, usize, usize) -> bool| {
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| cond(a, b, c))))
    };
    match p {
        FrameProperty::Reflexive => (0..n).all(|a| r[a][a]),
        FrameProperty::Serial => (0..n).all(|a| r[a].iter().any(|&x| x)),
        FrameProperty::Symmetric => all3(&|a, b, _| !r[a][b] || r[b][a]),
        FrameProperty::Transitive => all3(&|a, b, c| !(r[a][b] && r[b][c]) || r[a][c]),
        FrameProperty::Euclidean => all3(&|a, b, c| !(r[a][b] && r[a][c]) || r[b][c]),
        FrameProperty::Coreflexive => all3(&|a, b, _| !r[a][b] || a == b),
        FrameProperty::Equivalence => {
            (0..n).all(|a| r[a][a])
                && all3(&|a, b, _| !r[a][b] || r[b][a])
                && all3(&|a, b, c| !(r[a][b] && r[b][c]) || r[a][c])
        }
    }
}

/// Every frame on `w0..w{n-1}`.
pub fn all_frames(n: usize) -> impl Iterator<Item = Frame> {
    let names: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
    (0u32..1 << (n * n)).map(move |mask| {
        let edges = (0..n * n)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| (b / n, b % n));
        Frame::from_indices(names.clone(), edges.collect::<Vec<_>>()).unwrap()
    })
}

/// Every valuation of `atoms` over `frame`.
pub fn all_models(frame: &Frame, atoms: &[String]) -> Vec<Model> {
    let n = frame.len();
    let bits = n * atoms.len();
    (0u64..1 << bits)
        .map(|mask| {
            let val: BTreeMap<String, Vec<String>> = atoms
                .iter()
                .enumerate()
                .map(|(a, atom)| {
                    let ws = (0..n)
                        .filter(|w| mask >> (a * n + w) & 1 == 1)
                        .map(|w| frame.name(w).to_string())
                        .collect();
                    (atom.clone(), ws)
                })
                .collect();
            Model::new(frame.clone(), val).unwrap()
        })
        .collect()
}

/// The same model with its worlds listed in the order given by `perm`.
pub fn permuted(m: &Model, perm: &[usize]) -> Model {
    let fr = m.frame();
    let names: Vec<String> = perm.iter().map(|&i| fr.name(i).to_string()).collect();
    let edges: Vec<(String, String)> = fr
        .edges()
        .map(|(a, b)| (fr.name(a).to_string(), fr.name(b).to_string()))
        .collect();
    let frame = Frame::new(names, edges).unwrap();
    let val: Vec<(String, Vec<String>)> = m
        .valuation()
        .iter()
        .map(|(p, set)| {
            (
                p.clone(),
                set.ones().map(|w| fr.name(w).to_string()).collect(),
            )
        })
        .collect();
    Model::new(frame, val).unwrap()
}
