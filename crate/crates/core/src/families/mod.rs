//! Named families of presentations and the structure specific to each.

pub mod cleary;
pub mod higman;
pub mod mono;

use crate::forest::{Colour, Tree};
use crate::rewriting::{quotient_morphism_check, Engine, QuotientCheck};
use crate::skein_dsl::SkeinPresentation;

/// Every relation relates two trees of the same shape.
pub fn is_shape_preserving(p: &SkeinPresentation) -> bool {
    p.relations().iter().all(|(u, v)| u.same_shape(v))
}

/// The free category on one colour and the colour-collapse map `γ(c) = Y_x` onto it.
pub fn colour_collapse(p: &SkeinPresentation) -> (SkeinPresentation, Vec<Tree>) {
    let target = SkeinPresentation::new(vec!["x".into()], Vec::new(), None).expect("one colour");
    let gamma = vec![Tree::caret(Colour(0)); p.colour_count()];
    (target, gamma)
}

/// The colour collapse, when the presentation is shape-preserving and the map is verified
/// to respect every relation.
pub fn detect_shape_preserving(p: &SkeinPresentation) -> Option<(SkeinPresentation, Vec<Tree>)> {
    if !is_shape_preserving(p) {
        return None;
    }
    let (target, gamma) = colour_collapse(p);
    let engine = Engine::auto(target.clone());
    matches!(quotient_morphism_check(p, &engine, &gamma), Ok(QuotientCheck::Verified)).then_some((target, gamma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skein_dsl::parse_presentation;

    #[test]
    fn shape_detection() {
        let p = parse_presentation("colors: a b\nrel: a1 a2 = b1 b2").unwrap();
        assert!(detect_shape_preserving(&p).is_some());
        let c = parse_presentation("colors: a b\nrel: a1 a2 = b1 b1").unwrap();
        assert!(detect_shape_preserving(&c).is_none());
    }
}
