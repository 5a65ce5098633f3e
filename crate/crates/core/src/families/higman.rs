//! Higman–Thompson categories `H_n = FS<S_n | R_n>` and their translation into n-ary forests.
//!
//! Colour `r ∈ {1, …, n−1}` is `Colour(r − 1)`. A caret of colour `r` at root `j` of the
//! infinite forest corresponds to the n-ary caret `z_{(j−1)(n−1)+r}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::forest::{Colour, Dir, Forest, Tree};
use crate::rewriting::{Certificate, RightMultiple, Workspace};
use crate::skein_dsl::{FamilyHint, SkeinPresentation};

/// Colour names `a, c, d, …, b`; the last colour is `b`.
pub fn colour_names(n: usize) -> Vec<String> {
    let k = n - 1;
    if k == 1 {
        return vec!["a".into()];
    }
    let mut names = vec!["a".to_string()];
    let mut letters = ('c'..='z').map(|c| c.to_string());
    for i in 1..k - 1 {
        names.push(letters.next().unwrap_or_else(|| format!("c{i}")));
    }
    names.push("b".into());
    names
}

pub fn higman_presentation(n: usize) -> Result<SkeinPresentation> {
    if n < 2 {
        return Err(Error::Invalid(format!("H_n needs n >= 2, got {n}")));
    }
    let mut rels = Vec::new();
    for r in 0..n - 1 {
        for s in r + 1..n - 1 {
            let (cr, cs) = (Colour(r as u16), Colour(s as u16));
            rels.push((
                Tree::node(cr, Tree::leaf(), Tree::caret(cs)),
                Tree::node(cs, Tree::caret(cr), Tree::leaf()),
            ));
        }
    }
    SkeinPresentation::new(colour_names(n), rels, Some(FamilyHint::Higman(n)))
}

pub fn higman_category(n: usize) -> Result<SkeinPresentation> {
    higman_presentation(n)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NTree {
    Leaf,
    Node(Vec<NTree>),
}

impl NTree {
    pub fn leaves(&self) -> usize {
        match self {
            NTree::Leaf => 1,
            NTree::Node(k) => k.iter().map(NTree::leaves).sum(),
        }
    }

    fn graft(&mut self, k: usize, n: usize) {
        match self {
            NTree::Leaf => *self = NTree::Node(vec![NTree::Leaf; n]),
            NTree::Node(kids) => {
                let mut k = k;
                for c in kids.iter_mut() {
                    let l = c.leaves();
                    if k <= l {
                        c.graft(k, n);
                        return;
                    }
                    k -= l;
                }
                unreachable!("leaf index checked by caller")
            }
        }
    }

    fn union(&self, other: &NTree) -> NTree {
        match (self, other) {
            (NTree::Leaf, x) | (x, NTree::Leaf) => x.clone(),
            (NTree::Node(a), NTree::Node(b)) => {
                NTree::Node(a.iter().zip(b).map(|(x, y)| x.union(y)).collect())
            }
        }
    }

    /// Trees hanging below the leaves of `self` inside `big`, which must contain `self`.
    fn quotient(&self, big: &NTree, out: &mut Vec<NTree>) {
        match (self, big) {
            (NTree::Leaf, x) => out.push(x.clone()),
            (NTree::Node(a), NTree::Node(b)) => {
                for (x, y) in a.iter().zip(b) {
                    x.quotient(y, out);
                }
            }
            (NTree::Node(_), NTree::Leaf) => unreachable!("big contains self"),
        }
    }

    /// Preorder vertices with the number of leaves to their left.
    fn preorder(&self, before: usize, out: &mut Vec<usize>) {
        if let NTree::Node(kids) = self {
            out.push(before);
            let mut b = before;
            for c in kids {
                c.preorder(b, out);
                b += c.leaves();
            }
        }
    }
}

/// A finite prefix of an infinite n-ary forest; trailing trivial trees are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NForest {
    pub n: usize,
    pub trees: Vec<NTree>,
}

impl NForest {
    pub fn trivial(n: usize) -> NForest {
        NForest { n, trees: Vec::new() }
    }

    fn trim(&mut self) {
        while self.trees.last() == Some(&NTree::Leaf) {
            self.trees.pop();
        }
    }

    /// Glue an n-ary caret onto leaf `k` (the tail of trivial trees is unbounded).
    pub fn graft(&mut self, k: usize) {
        let mut rest = k;
        for t in self.trees.iter_mut() {
            let l = t.leaves();
            if rest <= l {
                t.graft(rest, self.n);
                return;
            }
            rest -= l;
        }
        self.trees.extend(std::iter::repeat_n(NTree::Leaf, rest - 1));
        self.trees.push(NTree::Node(vec![NTree::Leaf; self.n]));
    }

    pub fn from_word(n: usize, word: &[usize]) -> Result<NForest> {
        let mut f = NForest::trivial(n);
        for &j in word {
            if j == 0 {
                return Err(Error::Invalid("n-ary generators are numbered from 1".into()));
            }
            f.graft(j);
        }
        f.trim();
        Ok(f)
    }

    pub fn union(&self, other: &NForest) -> NForest {
        let len = self.trees.len().max(other.trees.len());
        let get = |f: &NForest, i: usize| f.trees.get(i).cloned().unwrap_or(NTree::Leaf);
        let trees = (0..len).map(|i| get(self, i).union(&get(other, i))).collect();
        NForest { n: self.n, trees }
    }

    /// A word `w` with `self · w = big`.
    pub fn quotient_word(&self, big: &NForest) -> Vec<usize> {
        let mut hanging = Vec::new();
        for (i, b) in big.trees.iter().enumerate() {
            self.trees.get(i).unwrap_or(&NTree::Leaf).quotient(b, &mut hanging);
        }
        let mut word = Vec::new();
        let mut before = 0;
        for t in &hanging {
            let mut pos = Vec::new();
            t.preorder(before, &mut pos);
            word.extend(pos.into_iter().map(|b| b + 1));
            before += t.leaves();
        }
        word
    }

    /// Canonical word: preorder over the trees.
    pub fn word(&self) -> Vec<usize> {
        NForest::trivial(self.n).quotient_word(self)
    }
}

impl fmt::Display for NForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.word();
        if w.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = w.iter().map(|j| format!("z{j}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A generator `r_j` of the infinite-forest monoid: colour `r` (1-based) at root `j`.
pub type Gen = (usize, usize);

pub fn phi(n: usize, word: &[Gen]) -> Result<Vec<usize>> {
    word.iter()
        .map(|&(r, j)| {
            if r == 0 || r >= n || j == 0 {
                Err(Error::IndexOutOfRange { index: r, bound: n - 1 })
            } else {
                Ok((j - 1) * (n - 1) + r)
            }
        })
        .collect()
}

pub fn psi(n: usize, word: &[usize]) -> Result<Vec<Gen>> {
    word.iter()
        .map(|&k| {
            if k == 0 {
                Err(Error::IndexOutOfRange { index: 0, bound: usize::MAX })
            } else {
                Ok(((k - 1) % (n - 1) + 1, (k - 1) / (n - 1) + 1))
            }
        })
        .collect()
}

pub fn nary_equal(n: usize, u: &[usize], v: &[usize]) -> Result<bool> {
    Ok(NForest::from_word(n, u)? == NForest::from_word(n, v)?)
}

/// Word of the tree `t` placed at the first root.
pub fn tree_word(t: &Tree) -> Vec<Gen> {
    t.preorder_factors().into_iter().map(|(c, j)| (c.0 as usize + 1, j)).collect()
}

pub fn tree_to_nary(n: usize, t: &Tree) -> NForest {
    NForest::from_word(n, &phi(n, &tree_word(t)).expect("colours in range")).expect("valid word")
}

/// Build the first `roots` trees of the infinite forest given by a word.
pub fn forest_from_gens(word: &[Gen], roots: usize) -> Result<Forest> {
    let mut f = Forest::identity(roots)?;
    for &(r, j) in word {
        if j > f.leaves() {
            f = f.tensor(&Forest::identity(j - f.leaves())?);
        }
        f = f.graft(j, &Tree::caret(Colour(r as u16 - 1)))?;
    }
    Ok(f)
}

/// `t ∘ p ≡ s ∘ q` from the union of the n-ary images.
pub fn common_right_multiple(n: usize, t: &Tree, s: &Tree) -> Result<RightMultiple> {
    let (a, b) = (tree_to_nary(n, t), tree_to_nary(n, s));
    let j = a.union(&b);
    let grow = |tree: &Tree, from: &NForest| -> Result<Forest> {
        let mut f = Forest::identity(tree.leaves())?;
        for (r, x) in psi(n, &from.quotient_word(&j))? {
            // carets beyond the first tree land in the trivial tail
            if x <= f.leaves() {
                f = f.graft(x, &Tree::caret(Colour(r as u16 - 1)))?;
            }
        }
        Ok(f)
    };
    let p = grow(t, &a)?;
    let q = grow(s, &b)?;
    Ok(RightMultiple { p, q, certificate: Certificate::NormalForm(j.to_string()) })
}

/// Growth at the last leaf and rotations `Y_r(I⊗Y_b) → Y_b(Y_r⊗I)` making the right-most
/// branch of both trees `b`-coloured.
pub fn cgp_normalize(p: &SkeinPresentation, t: &Tree, s: &Tree) -> Result<(Workspace, Workspace)> {
    let k = p.colour_count();
    let b = Colour(k as u16 - 1);
    let needs = |x: &Tree| x.last_branch().last().is_some_and(|c| *c != b);
    let mut wt = Workspace::new(t);
    let mut ws = Workspace::new(s);
    if needs(t) || needs(s) {
        let (lt, ls) = (t.leaves(), s.leaves());
        wt.grow(lt, &Tree::caret(b));
        ws.grow(ls, &Tree::caret(b));
    }
    for w in [&mut wt, &mut ws] {
        let branch = w.current.last_branch();
        for i in (0..branch.len()).rev() {
            let c = branch[i];
            if c == b {
                continue;
            }
            let lhs = Tree::node(c, Tree::leaf(), Tree::caret(b));
            let rel = p
                .relations()
                .iter()
                .position(|(u, _)| *u == lhs)
                .ok_or_else(|| Error::Invalid("presentation is not Higman–Thompson".into()))?;
            w.rewrite(p, &vec![Dir::R; i], rel, true)?;
        }
    }
    Ok((wt, ws))
}
