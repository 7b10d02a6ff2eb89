//! Seeded generators for frames, models and formulas.
//!
//! Everything is driven by a caller-supplied RNG, so a fixed seed
//! reproduces the same sample on every platform.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::{Formula, Modality};
use crate::kripke::{Frame, FrameProperty, Model, WorldSet};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("w{i}")).collect()
}

/// A frame on `n` worlds with each edge present with probability `density`.
pub fn frame<R: Rng>(rng: &mut R, n: usize, density: f64) -> Frame {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|_| rng.gen_bool(density))
        .collect();
    Frame::from_indices(names(n), edges).expect("generated names are distinct")
}

/// A random frame closed under the requested properties.
///
/// Starts from a random relation, drops non-loops for coreflexivity, then
/// adds edges until every other condition holds.
pub fn frame_in<R: Rng>(rng: &mut R, n: usize, class: &[FrameProperty]) -> Frame {
    let has = |p| {
        class.contains(&p)
            || (class.contains(&FrameProperty::Equivalence)
                && matches!(
                    p,
                    FrameProperty::Reflexive | FrameProperty::Symmetric | FrameProperty::Transitive
                ))
    };
    let density = rng.gen_range(0.1..0.6);
    let mut rel = vec![vec![false; n]; n];
    for (a, row) in rel.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            *cell = rng.gen_bool(density) && (a == b || !has(FrameProperty::Coreflexive));
        }
    }
    loop {
        let before = rel.clone();
        for a in 0..n {
            if has(FrameProperty::Reflexive) {
                rel[a][a] = true;
            }
            if has(FrameProperty::Serial) && !rel[a].iter().any(|&x| x) {
                rel[a][a] = true;
            }
            for b in 0..n {
                if !before[a][b] {
                    continue;
                }
                if has(FrameProperty::Symmetric) {
                    rel[b][a] = true;
                }
                for c in 0..n {
                    if has(FrameProperty::Transitive) && before[b][c] {
                        rel[a][c] = true;
                    }
                    if has(FrameProperty::Euclidean) && before[a][c] {
                        rel[b][c] = true;
                    }
                }
            }
        }
        if rel == before {
            break;
        }
    }
    let edges = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| rel[a][b]);
    let frame = Frame::from_indices(names(n), edges.collect::<Vec<_>>()).expect("distinct names");
    for &p in class {
        assert!(frame.has_property(p), "closure failed to establish {p}");
    }
    frame
}

/// A uniformly random valuation of `atoms` over `frame`.
pub fn valuate<R: Rng>(rng: &mut R, frame: Frame, atoms: &[&str]) -> Model {
    let n = frame.len();
    let valuation: BTreeMap<String, WorldSet> = atoms
        .iter()
        .map(|&atom| {
            let mut set = WorldSet::with_capacity(n);
            set.extend((0..n).filter(|_| rng.gen_bool(0.5)));
            (atom.to_string(), set)
        })
        .collect();
    Model::from_sets(frame, valuation)
}

/// A model with between `min` and `max` worlds and random density.
pub fn model<R: Rng>(rng: &mut R, min: usize, max: usize, atoms: &[&str]) -> Model {
    let n = rng.gen_range(min..=max);
    let density = rng.gen_range(0.0..0.7);
    let f = frame(rng, n, density);
    valuate(rng, f, atoms)
}

/// A model whose frame lies in `class`.
pub fn model_in<R: Rng>(
    rng: &mut R,
    min: usize,
    max: usize,
    atoms: &[&str],
    class: &[FrameProperty],
) -> Model {
    let n = rng.gen_range(min..=max);
    let f = frame_in(rng, n, class);
    valuate(rng, f, atoms)
}

/// A formula of modal depth at most `depth` over `atoms` using only the
/// given modalities.
pub fn formula<R: Rng>(
    rng: &mut R,
    atoms: &[&str],
    modalities: &[Modality],
    depth: usize,
) -> Formula {
    let leaf = |rng: &mut R| {
        if rng.gen_ratio(1, 8) {
            Formula::Top
        } else {
            Formula::atom(*atoms.choose(rng).expect("at least one atom"))
        }
    };
    fn go<R: Rng>(
        rng: &mut R,
        modalities: &[Modality],
        depth: usize,
        size: usize,
        leaf: &dyn Fn(&mut R) -> Formula,
    ) -> Formula {
        if size == 0 {
            return leaf(rng);
        }
        let modal = depth > 0 && !modalities.is_empty();
        match rng.gen_range(0..if modal { 5 } else { 3 }) {
            0 => leaf(rng),
            1 => go(rng, modalities, depth, size - 1, leaf).not(),
            2 => {
                let a = go(rng, modalities, depth, size / 2, leaf);
                let b = go(rng, modalities, depth, size / 2, leaf);
                a.and(b)
            }
            _ => {
                let m = *modalities.choose(rng).expect("nonempty");
                m.apply(go(rng, modalities, depth - 1, size - 1, leaf))
            }
        }
    }
    go(rng, modalities, depth, 6, &leaf)
}
