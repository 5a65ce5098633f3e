//! The categories `F_z = FS<a,b | x(a) = y(b)>` with `x = Y(I⊗z)` and `y` the left-vine of
//! length `n = |Leaf(z)|`: good trees, semi-normal forms and the word problem.
//!
//! Colour `a` is colour 0 and `b` is colour 1. Relation 0 reads `x(a) = y(b)`, so a forward
//! rewrite turns an `x(a)` occurrence into `y(b)`.

use crate::error::{Error, Result};
use crate::forest::{left_vine, left_vine_decomposition, Colour, Dir, Forest, Tree};
use crate::rewriting::{Certificate, Engine, RewritePath, Strategy, Workspace};
use crate::skein_dsl::{FamilyHint, SkeinPresentation};

pub const A: Colour = Colour(0);
pub const B: Colour = Colour(1);

/// `(x(a), y(b))` for a monochromatic `z`.
pub fn presentation_relation(z: &Tree, n: usize) -> Result<(Tree, Tree)> {
    if z.is_leaf() {
        return Err(Error::Invalid("z must be a nontrivial tree".into()));
    }
    if z.leaves() != n {
        return Err(Error::LeafCountMismatch { lhs: z.leaves() + 1, rhs: n + 1 });
    }
    let za = z.monochromatize(A);
    Ok((Tree::node(A, Tree::leaf(), za), left_vine(B, n)))
}

pub fn cleary_category(z: &Tree, n: usize) -> Result<SkeinPresentation> {
    let rel = presentation_relation(z, n)?;
    SkeinPresentation::new(
        vec!["a".into(), "b".into()],
        vec![rel],
        Some(FamilyHint::Cleary { z: z.monochromatize(A), n }),
    )
}

/// The same presentation read right to left: `FS<a,b | x'(a) = y'(b)>` with `x' = Y(z'⊗I)`
/// and `y'` a right-vine.
pub fn mirror_cleary_category(z: &Tree, n: usize) -> Result<SkeinPresentation> {
    let (x, y) = presentation_relation(z, n)?;
    SkeinPresentation::new(vec!["a".into(), "b".into()], vec![(mirror(&x), mirror(&y))], None)
}

pub fn mirror(t: &Tree) -> Tree {
    match t.split() {
        None => Tree::leaf(),
        Some((c, l, r)) => Tree::node(c, mirror(r), mirror(l)),
    }
}

/// Recognise `x(a) = y(b)` in a two-colour presentation.
pub fn recognise(p: &SkeinPresentation) -> Option<(Tree, usize)> {
    if p.colour_count() != 2 || p.relations().len() != 1 {
        return None;
    }
    let (x, _) = &p.relations()[0];
    let z = x.right()?.clone();
    let n = z.leaves();
    let rel = presentation_relation(&z, n).ok()?;
    (p.relations()[0] == rel).then_some((z, n))
}

fn params(e: &Engine) -> Result<(Tree, usize)> {
    match e.strategy() {
        Strategy::ClearyNF { z, n } => Ok((z.monochromatize(A), *n)),
        _ => Err(Error::Invalid("engine is not a Cleary engine".into())),
    }
}

/// Condition (2) failing at a vine: its colour word, read from the root, is not `a^p b^q`
/// with `q < n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodnessViolation {
    pub vine: usize,
    pub attach: usize,
    pub word: Vec<Colour>,
}

/// Check the good-tree conditions on the left-vine decomposition; the index conditions
/// hold for every decomposition, so only the vine words need checking.
pub fn good_tree_violation(t: &Tree, n: usize) -> Option<GoodnessViolation> {
    for (i, v) in left_vine_decomposition(t).vines.into_iter().enumerate() {
        let p = v.colours.iter().take_while(|c| **c == A).count();
        let rest = &v.colours[p..];
        if !rest.iter().all(|c| *c == B) || rest.len() >= n {
            return Some(GoodnessViolation { vine: i + 1, attach: v.attach, word: v.colours });
        }
    }
    None
}

pub fn is_good_tree(t: &Tree, n: usize) -> bool {
    t.vertices().iter().all(|(_, c)| *c == A || *c == B) && good_tree_violation(t, n).is_none()
}

fn down(v: &[Dir], i: usize) -> Vec<Dir> {
    let mut a = v.to_vec();
    a.extend(std::iter::repeat_n(Dir::L, i));
    a
}

fn right_of(v: &[Dir], i: usize) -> Vec<Dir> {
    let mut a = down(v, i);
    a.push(Dir::R);
    a
}

/// Colours of the left-vine starting at `v`, from the top.
fn vine_word(t: &Tree, v: &[Dir]) -> Vec<Colour> {
    t.at(v).map(|s| s.first_branch()).unwrap_or_default()
}

struct Goodifier<'a> {
    engine: &'a Engine,
    z: Tree,
    n: usize,
}

impl Goodifier<'_> {
    fn to_y(&self, ws: &mut Workspace, at: &[Dir]) -> Result<()> {
        ws.rewrite(self.engine.presentation(), at, 0, true)
    }

    fn to_x(&self, ws: &mut Workspace, at: &[Dir]) -> Result<()> {
        ws.rewrite(self.engine.presentation(), at, 0, false)
    }

    /// Leaf index of the bottom-left leaf of the vine at `v`.
    fn vine_bottom_leaf(&self, ws: &Workspace, v: &[Dir]) -> usize {
        ws.current.leaves_before(v) + 1
    }

    /// Make the subtree at `v` good; `v` is the root of a vine.
    fn good_at(&self, ws: &mut Workspace, v: &[Dir]) -> Result<()> {
        let len = vine_word(&ws.current, v).len();
        for i in 0..len {
            let r = right_of(v, i);
            if !ws.current.at(&r).expect("vine vertex").is_leaf() {
                self.good_at(ws, &r)?;
            }
        }
        let word = vine_word(&ws.current, v);
        let p = word.iter().take_while(|c| **c == A).count();
        let q = word.len() - p;
        if word[p..].iter().all(|c| *c == B) && q < self.n {
            return Ok(());
        }
        if !word[p..].iter().all(|c| *c == B) {
            // every a-vertex needs z below its right child before turning into y(b)
            for (i, c) in word.iter().enumerate() {
                if *c == A {
                    self.ensure_z(ws, &right_of(v, i))?;
                }
            }
            for i in (0..word.len()).rev() {
                if vine_word(&ws.current, v)[i] == A {
                    self.to_y(ws, &down(v, i))?;
                }
            }
        }
        self.normalise_b_block(ws, v)
    }

    /// Turn the vine `a^p b^N` at `v` into `a^{p + N div n} b^{N mod n}`.
    fn normalise_b_block(&self, ws: &mut Workspace, v: &[Dir]) -> Result<()> {
        loop {
            let word = vine_word(&ws.current, v);
            let p = word.iter().take_while(|c| **c == A).count();
            debug_assert!(word[p..].iter().all(|c| *c == B));
            if word.len() - p < self.n {
                return Ok(());
            }
            self.to_x(ws, &down(v, p))?;
        }
    }

    /// Make the subtree at `r` contain `z(a)` as a rooted subtree. The subtree is good.
    fn ensure_z(&self, ws: &mut Workspace, r: &[Dir]) -> Result<()> {
        for (rel, _) in self.z.vertices() {
            let mut w = r.to_vec();
            w.extend(rel.iter().copied());
            let node = ws.current.at(&w).expect("parent was fixed first").clone();
            match node.colour() {
                None => {
                    let k = ws.current.leaf_index(&w).expect("leaf");
                    ws.grow(k, &Tree::caret(A));
                }
                Some(c) if c == A => {}
                Some(_) => {
                    // `w` is the first b of its vine: the vine starts inside z's image, where
                    // every vertex above is an a
                    let start = vine_start(&w);
                    let k = self.vine_bottom_leaf(ws, &w);
                    let (x, _) = presentation_relation(&self.z, self.n)?;
                    ws.grow(k, &x);
                    let depth = vine_word(&ws.current, &start).len();
                    self.to_y(ws, &down(&start, depth - 1))?;
                    self.to_x(ws, &w)?;
                }
            }
        }
        Ok(())
    }

    /// Turn a good tree into an a-tree by growth: each vine `a^p b^q` with `q > 0` is
    /// completed to `a^p b^n` and folded into `a^{p+1}`.
    fn a_ify(&self, ws: &mut Workspace, v: &[Dir]) -> Result<()> {
        let len = vine_word(&ws.current, v).len();
        for i in 0..len {
            let r = right_of(v, i);
            if !ws.current.at(&r).expect("vine vertex").is_leaf() {
                self.a_ify(ws, &r)?;
            }
        }
        let word = vine_word(&ws.current, v);
        let p = word.iter().take_while(|c| **c == A).count();
        let q = word.len() - p;
        if q > 0 {
            let k = self.vine_bottom_leaf(ws, v);
            ws.grow(k, &left_vine(B, self.n - q));
            self.to_x(ws, &down(v, p))?;
        }
        Ok(())
    }
}

/// Strip trailing left steps: the root of the vine through `w`.
fn vine_start(w: &[Dir]) -> Vec<Dir> {
    let mut s = w.to_vec();
    while s.last() == Some(&Dir::L) {
        s.pop();
    }
    s
}

/// An a-forest `f` and a good tree `g` with `t ∘ f ≡ g`, together with the rewrites.
pub fn goodify_workspace(e: &Engine, t: &Tree) -> Result<Workspace> {
    let (z, n) = params(e)?;
    let g = Goodifier { engine: e, z, n };
    let mut ws = Workspace::new(t);
    if !t.is_leaf() {
        g.good_at(&mut ws, &[])?;
    }
    Ok(ws)
}

pub fn goodify(e: &Engine, t: &Tree) -> Result<(Forest, Tree)> {
    let ws = goodify_workspace(e, t)?;
    Ok((ws.growth, ws.current))
}

/// Grow `t` to an a-tree.
pub fn to_a(e: &Engine, t: &Tree) -> Result<Workspace> {
    let (z, n) = params(e)?;
    let g = Goodifier { engine: e, z, n };
    let mut ws = goodify_workspace(e, t)?;
    if !ws.current.is_leaf() {
        g.a_ify(&mut ws, &[])?;
    }
    Ok(ws)
}

/// Semi-normal form of `[t, s]`: a good tree and an a-tree representing the same element.
#[derive(Clone, Debug)]
pub struct SemiNormalForm {
    pub good: Tree,
    pub a_tree: Tree,
    /// `t ∘ growth ≡ good` and `s ∘ growth ≡ a_tree`.
    pub growth: Forest,
    pub good_path: RewritePath,
    pub a_path: RewritePath,
}

pub fn semi_normal_form(e: &Engine, t: &Tree, s: &Tree) -> Result<SemiNormalForm> {
    if t.leaves() != s.leaves() {
        return Err(Error::LeafCountMismatch { lhs: t.leaves(), rhs: s.leaves() });
    }
    let ws = to_a(e, s)?;
    let tf = t.compose(&ws.growth)?;
    let wt = goodify_workspace(e, &tf)?;
    let a_tree = ws.current.compose(&wt.growth)?;
    Ok(SemiNormalForm {
        good: wt.current,
        a_tree,
        growth: ws.growth.compose(&wt.growth)?,
        good_path: wt.path,
        a_path: ws.path,
    })
}

/// Exact decision of `[t, s] = e`: the semi-normal form is trivial iff both trees coincide.
pub fn is_identity_fz(e: &Engine, t: &Tree, s: &Tree) -> Result<bool> {
    Ok(identity_certificate(e, t, s)?.is_some())
}

/// Rewrites from `t ∘ f` to `s ∘ f` when `[t, s]` is trivial.
pub fn identity_certificate(e: &Engine, t: &Tree, s: &Tree) -> Result<Option<Certificate>> {
    let snf = semi_normal_form(e, t, s)?;
    if snf.good != snf.a_tree {
        return Ok(None);
    }
    let path = snf.good_path.then(&snf.a_path.reversed());
    Ok(Some(Certificate::Grown { growth: snf.growth, path }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::complete_tree;

    fn engine(n: usize) -> Engine {
        let z = if n == 2 { Tree::caret(A) } else { left_vine(A, n - 1) };
        Engine::auto(cleary_category(&z, n).unwrap())
    }

    #[test]
    fn construction() {
        let p = cleary_category(&Tree::caret(A), 2).unwrap();
        assert_eq!(p.show_tree(&p.relations()[0].0), "a1 a2");
        assert_eq!(p.show_tree(&p.relations()[0].1), "b1 b1");
        let p3 = cleary_category(&left_vine(A, 2), 3).unwrap();
        assert_eq!(p3.show_tree(&p3.relations()[0].0), "a1 a2 a2");
        assert!(cleary_category(&Tree::leaf(), 1).is_err());
        assert!(cleary_category(&Tree::caret(A), 3).is_err());
    }

    #[test]
    fn good_trees() {
        assert!(is_good_tree(&complete_tree(A, 3), 2));
        assert!(!is_good_tree(&left_vine(B, 2), 2));
        assert!(is_good_tree(&left_vine(B, 1), 2));
        let p = cleary_category(&Tree::caret(A), 2).unwrap();
        assert!(!is_good_tree(&p.tree("b1 a1").unwrap(), 2));
    }

    #[test]
    fn goodify_b_vine() {
        let e = engine(2);
        let p = e.presentation();
        for k in 1..6 {
            let t = left_vine(B, k);
            let ws = goodify_workspace(&e, &t).unwrap();
            assert!(is_good_tree(&ws.current, 2), "{}", p.show_tree(&ws.current));
            assert!(ws.growth.colour_count().get(B) == 0);
            let replay = ws.path.replay(p, &Forest::from_tree(ws.grown_original())).unwrap();
            assert_eq!(replay, Forest::from_tree(ws.current.clone()));
        }
    }

    #[test]
    fn relation_is_identity() {
        let e = engine(2);
        let p = e.presentation();
        let (x, y) = p.relations()[0].clone();
        assert!(is_identity_fz(&e, &x, &y).unwrap());
        assert!(!is_identity_fz(&e, &Tree::caret(A), &Tree::caret(B)).unwrap());
        let t = p.tree("a1 b2 b1 a3").unwrap();
        assert!(is_identity_fz(&e, &t, &t).unwrap());
    }
}
