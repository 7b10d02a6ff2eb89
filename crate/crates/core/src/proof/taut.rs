//! Recognising substitution instances of propositional tautologies.
//!
//! Maximal modal subformulas are replaced by fresh variables (equal
//! subformulas share a variable) and the resulting boolean skeleton is
//! truth-tabled. A formula is an instance of some tautology iff its
//! skeleton is one.

use std::collections::BTreeMap;

use crate::formula::Formula;

/// Largest number of skeleton variables the truth table will enumerate.
pub const MAX_TAUT_VARIABLES: usize = 20;

enum Skeleton {
    Top,
    Var(usize),
    Not(Box<Skeleton>),
    And(Box<Skeleton>, Box<Skeleton>),
}

fn abstract_into<'a>(phi: &'a Formula, vars: &mut BTreeMap<&'a Formula, usize>) -> Skeleton {
    match phi {
        Formula::Top => Skeleton::Top,
        Formula::Not(a) => Skeleton::Not(Box::new(abstract_into(a, vars))),
        Formula::And(a, b) => Skeleton::And(
            Box::new(abstract_into(a, vars)),
            Box::new(abstract_into(b, vars)),
        ),
        // Atoms and modal formulas are opaque.
        _ => {
            let next = vars.len();
            Skeleton::Var(*vars.entry(phi).or_insert(next))
        }
    }
}

fn eval(s: &Skeleton, assignment: u32) -> bool {
    match s {
        Skeleton::Top => true,
        Skeleton::Var(i) => assignment >> i & 1 == 1,
        Skeleton::Not(a) => !eval(a, assignment),
        Skeleton::And(a, b) => eval(a, assignment) && eval(b, assignment),
    }
}

/// `Ok(true)` when `phi` is a tautology instance; `Err(n)` when its
/// skeleton has `n` variables, more than [`MAX_TAUT_VARIABLES`].
pub fn is_tautology_instance(phi: &Formula) -> Result<bool, usize> {
    let mut vars = BTreeMap::new();
    let skeleton = abstract_into(phi, &mut vars);
    let n = vars.len();
    if n > MAX_TAUT_VARIABLES {
        return Err(n);
    }
    Ok((0..1u32 << n).all(|a| eval(&skeleton, a)))
}
