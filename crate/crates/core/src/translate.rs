//! Translations between the `▲` and `□` languages.
//!
//! [`to_box`] removes `Δ`, `∘` and `▲` and preserves truth on every model.
//! [`to_blacktri`] rewrites `□φ` as `▲φ ∧ φ`, which preserves truth only on
//! reflexive models. Neither simplifies its output.

use thiserror::Error;

use crate::formula::{Formula, Modality};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("`{0}` has no translation into the ▲ language")]
pub struct TranslateError(pub Modality);

/// `t(▲φ) = (t→□t) ∧ (¬t→□¬t)`, `t(Δφ) = □t ∨ □¬t`, `t(∘φ) = t→□t`.
pub fn to_box(phi: &Formula) -> Formula {
    match phi {
        Formula::Delta(a) => {
            let t = to_box(a);
            t.clone().boxed().or(t.not().boxed())
        }
        Formula::Circ(a) => {
            let t = to_box(a);
            t.clone().implies(t.boxed())
        }
        Formula::BlackTri(a) => {
            let t = to_box(a);
            let neg = t.clone().not();
            t.clone()
                .implies(t.boxed())
                .and(neg.clone().implies(neg.boxed()))
        }
        _ => phi.map_children(to_box),
    }
}

/// `t′(□φ) = ▲t′(φ) ∧ t′(φ)`; fails on `Δ` and `∘`.
pub fn to_blacktri(phi: &Formula) -> Result<Formula, TranslateError> {
    match phi {
        Formula::Box(a) => {
            let t = to_blacktri(a)?;
            Ok(t.clone().tri().and(t))
        }
        Formula::Delta(_) => Err(TranslateError(Modality::Delta)),
        Formula::Circ(_) => Err(TranslateError(Modality::Circ)),
        Formula::Top | Formula::Prop(_) => Ok(phi.clone()),
        Formula::Not(a) => Ok(to_blacktri(a)?.not()),
        Formula::And(a, b) => Ok(to_blacktri(a)?.and(to_blacktri(b)?)),
        Formula::BlackTri(a) => Ok(to_blacktri(a)?.tri()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, LanguageTag};

    fn f(text: &str) -> Formula {
        parse(text).unwrap()
    }

    #[test]
    fn tri_to_box() {
        assert_eq!(to_box(&f("#p")), f("(p -> []p) & (!p -> []!p)"));
        assert_eq!(to_box(&f("p")), f("p"));
        assert_eq!(to_box(&f("o p")), f("p -> []p"));
    }

    #[test]
    fn nested_delta_over_tri() {
        let t = f("(p -> []p) & (!p -> []!p)");
        let expected = t.clone().boxed().or(t.not().boxed());
        assert_eq!(to_box(&f("%#p")), expected);
        assert!(to_box(&f("%#p")).in_language(LanguageTag::Box));
    }

    #[test]
    fn box_to_tri() {
        assert_eq!(to_blacktri(&f("[]p")).unwrap(), f("#p & p"));
        assert_eq!(to_blacktri(&f("<>p")).unwrap(), f("!(#!p & !p)"));
        assert_eq!(to_blacktri(&f("[][]p")).unwrap(), f("#(#p & p) & (#p & p)"));
        assert_eq!(to_blacktri(&f("%p")), Err(TranslateError(Modality::Delta)));
    }
}
