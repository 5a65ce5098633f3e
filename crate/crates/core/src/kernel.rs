//! Search for nontrivial elements acting trivially on the Q-space, through quotient maps.

use std::sync::Arc;

use crate::actions::{sample_points, QSpace};
use crate::error::Result;
use crate::families::{colour_collapse, is_shape_preserving};
use crate::forest::{rooted_subtree_query, Colour, Skeleton, Tree};
use crate::fraction::GroupElement;
use crate::rewriting::{quotient_morphism_check, substitute, Engine, QuotientCheck, Separation, Verdict};
use crate::skein_dsl::SkeinPresentation;
use crate::symmetric::Permutation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientKind {
    /// All colours sent to one.
    ColourCollapse,
    /// Both sides of a relation are quasi-trees over one skeleton; the cells are identified.
    CellCollapse { relation: usize, cells: (Tree, Tree) },
}

#[derive(Clone, Debug)]
pub struct KernelWitness {
    pub element: GroupElement,
    pub quotient: SkeinPresentation,
    pub kind: QuotientKind,
    /// Class of the element in `Z^S / relations`, nonzero, so the element is not trivial.
    pub class: Vec<i128>,
    /// Number of Q-points checked to be fixed.
    pub samples: usize,
}

/// Depth of the Q-points on which a witness must act trivially.
pub const SAMPLE_DEPTH: usize = 4;

/// Root subtrees of `t` with exactly `m` carets.
fn root_subtrees(t: &Tree, m: usize) -> Vec<Tree> {
    if m == 0 {
        return vec![Tree::leaf()];
    }
    let Some((c, l, r)) = t.split() else { return Vec::new() };
    let mut out = Vec::new();
    for ml in 0..m {
        for a in root_subtrees(l, ml) {
            for b in root_subtrees(r, m - 1 - ml) {
                out.push(Tree::node(c, a.clone(), b));
            }
        }
    }
    out
}

fn skeleton_of(t: &Tree, cell: &Tree) -> Option<Skeleton> {
    if t.is_leaf() {
        return Some(Skeleton::Leaf);
    }
    let f = rooted_subtree_query(cell, t)?;
    f.trees().iter().map(|s| skeleton_of(s, cell)).collect::<Option<Vec<_>>>().map(Skeleton::Node)
}

/// Cells `(cu, cv)` with `u`, `v` quasi-trees over one skeleton with at least two vertices.
pub fn quasi_shape(u: &Tree, v: &Tree) -> Option<(Skeleton, Tree, Tree)> {
    let n = u.carets();
    if n != v.carets() {
        return None;
    }
    for m in (1..n).filter(|m| n.is_multiple_of(*m)) {
        for cu in root_subtrees(u, m) {
            let Some(sk) = skeleton_of(u, &cu) else { continue };
            if sk.interior() < 2 {
                continue;
            }
            for cv in root_subtrees(v, m) {
                if cv.leaves() == cu.leaves() && skeleton_of(v, &cv).as_ref() == Some(&sk) {
                    return Some((sk, cu, cv));
                }
            }
        }
    }
    None
}

/// A quotient map `γ` onto another presentation, with the tree pairs it is expected to kill.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub quotient: SkeinPresentation,
    pub gamma: Vec<Tree>,
    pub kind: QuotientKind,
    pub elements: Vec<(Tree, Tree)>,
}

/// Colour collapse (shape-preserving presentations) and cell collapse (quasi-shapes).
/// The maps are not yet checked to respect the relations.
pub fn candidates(p: &SkeinPresentation) -> Vec<Candidate> {
    let mut out = Vec::new();
    if p.colour_count() >= 2 && is_shape_preserving(p) {
        let (quotient, gamma) = colour_collapse(p);
        let k = p.colour_count();
        let elements = (0..k)
            .flat_map(|c| (c + 1..k).map(move |d| (Tree::caret(Colour(c as u16)), Tree::caret(Colour(d as u16)))))
            .collect();
        out.push(Candidate { quotient, gamma, kind: QuotientKind::ColourCollapse, elements });
    }
    for (i, (u, v)) in p.relations().iter().enumerate() {
        if let Some((_, cu, cv)) = quasi_shape(u, v) {
            let Ok(quotient) =
                SkeinPresentation::new(p.colours().to_vec(), vec![(cu.clone(), cv.clone())], None)
            else {
                continue;
            };
            let gamma = (0..p.colour_count()).map(|c| Tree::caret(Colour(c as u16))).collect();
            out.push(Candidate {
                quotient,
                gamma,
                kind: QuotientKind::CellCollapse { relation: i, cells: (cu.clone(), cv.clone()) },
                elements: vec![(cu, cv)],
            });
        }
    }
    out
}

/// A certified element of the kernel of the canonical action: trivial in a verified quotient,
/// nonzero colour class in the source, and fixing every sampled Q-point.
pub fn kernel_witness_search(p: &SkeinPresentation, budget: usize) -> Result<Option<KernelWitness>> {
    let src = Arc::new(Engine::auto(p.clone()).with_budget(budget));
    let space = QSpace::new(src.clone());
    let points = sample_points(p.colour_count(), SAMPLE_DEPTH);
    for cand in candidates(p) {
        let tgt = Engine::auto(cand.quotient.clone()).with_budget(budget);
        if quotient_morphism_check(p, &tgt, &cand.gamma)? != QuotientCheck::Verified {
            continue;
        }
        for (t, s) in &cand.elements {
            let (gt, gs) = (substitute(t, &cand.gamma)?, substitute(s, &cand.gamma)?);
            if !tgt.is_identity_fraction(&gt, &Permutation::identity(gt.leaves()), &gs).is_equal() {
                continue;
            }
            let g = GroupElement::tree_pair(t.clone(), s.clone(), src.clone())?;
            let Verdict::Distinct(Separation::ColourClass(class)) = g.is_identity() else {
                continue;
            };
            let fixes = |x: &crate::actions::QPoint| {
                space.alpha(&g, x).is_ok_and(|y| space.equal(&y, x).is_equal())
            };
            if points.iter().all(fixes) {
                return Ok(Some(KernelWitness {
                    element: g,
                    quotient: cand.quotient.clone(),
                    kind: cand.kind.clone(),
                    class,
                    samples: points.len(),
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skein_dsl::parse_presentation;

    #[test]
    fn quasi_shapes() {
        let p = parse_presentation("colors: a b\nrel: a1 a1 a3 a3 = b1 b2 b3 b4").unwrap();
        let (u, v) = &p.relations()[0];
        let (sk, cu, cv) = quasi_shape(u, v).unwrap();
        assert_eq!(sk.interior(), 2);
        assert_eq!(p.show_tree(&cu), "a1 a1");
        assert_eq!(p.show_tree(&cv), "b1 b2");
        let c = parse_presentation("colors: a b\nrel: a1 a2 = b1 b1").unwrap();
        let (u, v) = &c.relations()[0];
        assert!(quasi_shape(u, v).is_none());
    }

    #[test]
    fn witnesses() {
        let sp = parse_presentation("colors: a b\nrel: a1 a2 = b1 b2").unwrap();
        let w = kernel_witness_search(&sp, 10_000).unwrap().unwrap();
        assert_eq!(w.kind, QuotientKind::ColourCollapse);
        assert!(w.class.iter().any(|x| *x != 0));
        let z4 = parse_presentation("colors: a b\nrel: a1 a1 a3 a3 = b1 b2 b3 b4").unwrap();
        let w = kernel_witness_search(&z4, 10_000).unwrap().unwrap();
        assert!(matches!(w.kind, QuotientKind::CellCollapse { .. }));
        assert_eq!(w.element.to_string(), "frac(a1 a1 ; (1 2 3) ; b1 b2)");
        for text in ["colors: a b\nrel: a1 a2 = b1 b1", "colors: a b c\nrel: a1 b2 = b1 a1\nrel: a1 c2 = c1 a1\nrel: b1 c2 = c1 b1"] {
            let p = parse_presentation(text).unwrap();
            assert!(kernel_witness_search(&p, 10_000).unwrap().is_none());
        }
        let free = parse_presentation("colors: a\nrel:").unwrap();
        assert!(kernel_witness_search(&free, 10_000).unwrap().is_none());
    }
}
