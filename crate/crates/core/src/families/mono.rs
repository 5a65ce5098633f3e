//! Monochromatic presentations: one tree per colour, all with the same number of leaves.

use crate::error::{Error, Result};
use crate::forest::{Colour, Tree};
use crate::skein_dsl::{FamilyHint, SkeinPresentation};

/// `FS<S | t_a(a) = t_b(b) = …>` from shapes given as monochromatic trees in any colour.
pub fn monochromatic_family(names: Vec<String>, shapes: &[Tree]) -> Result<SkeinPresentation> {
    if names.len() != shapes.len() || shapes.is_empty() {
        return Err(Error::Invalid("one shape per colour is needed".into()));
    }
    let leaves = shapes[0].leaves();
    if leaves < 2 {
        return Err(Error::Invalid("shapes must have at least one caret".into()));
    }
    if let Some(s) = shapes.iter().find(|s| s.leaves() != leaves) {
        return Err(Error::LeafCountMismatch { lhs: leaves, rhs: s.leaves() });
    }
    let trees: Vec<Tree> =
        shapes.iter().enumerate().map(|(i, s)| s.monochromatize(Colour(i as u16))).collect();
    let mut rels = Vec::new();
    for i in 0..trees.len() {
        for j in i + 1..trees.len() {
            rels.push((trees[i].clone(), trees[j].clone()));
        }
    }
    SkeinPresentation::new(names, rels, Some(FamilyHint::Monochromatic))
}

/// Parse `a=a1a1a3,b=b1b2b3` style specifications.
pub fn parse_spec(spec: &str) -> Result<SkeinPresentation> {
    let mut names = Vec::new();
    let mut words = Vec::new();
    for part in spec.split(',') {
        let (name, word) = part
            .split_once('=')
            .ok_or_else(|| Error::Invalid(format!("expected colour=word, got {part:?}")))?;
        names.push(name.trim().to_string());
        words.push(word.trim().to_string());
    }
    let probe = SkeinPresentation::new(names.clone(), Vec::new(), None)?;
    let shapes = words.iter().map(|w| probe.tree(w)).collect::<Result<Vec<_>>>()?;
    monochromatic_family(names, &shapes)
}
