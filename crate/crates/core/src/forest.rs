//! Coloured binary trees and forests.
//!
//! Vertices are addressed by words over `{l, r}` read from the root; leaves are
//! numbered from 1, left to right.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a colour in a presentation's colour list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Colour(pub u16);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    L,
    R,
}

pub type Address = Vec<Dir>;

pub fn address_string(a: &[Dir]) -> String {
    if a.is_empty() {
        return "ε".to_string();
    }
    a.iter().map(|d| if *d == Dir::L { 'l' } else { 'r' }).collect()
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Node {
    colour: Colour,
    left: Tree,
    right: Tree,
    carets: usize,
}

/// An immutable coloured binary tree; `Tree::leaf()` is the trivial tree `I`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Tree(Option<Arc<Node>>);

impl Tree {
    pub fn leaf() -> Tree {
        Tree(None)
    }

    pub fn node(colour: Colour, left: Tree, right: Tree) -> Tree {
        let carets = 1 + left.carets() + right.carets();
        Tree(Some(Arc::new(Node { colour, left, right, carets })))
    }

    pub fn caret(colour: Colour) -> Tree {
        Tree::node(colour, Tree::leaf(), Tree::leaf())
    }

    pub fn is_leaf(&self) -> bool {
        self.0.is_none()
    }

    pub fn colour(&self) -> Option<Colour> {
        self.0.as_ref().map(|n| n.colour)
    }

    pub fn left(&self) -> Option<&Tree> {
        self.0.as_ref().map(|n| &n.left)
    }

    pub fn right(&self) -> Option<&Tree> {
        self.0.as_ref().map(|n| &n.right)
    }

    /// Children of an interior vertex.
    pub fn split(&self) -> Option<(Colour, &Tree, &Tree)> {
        self.0.as_ref().map(|n| (n.colour, &n.left, &n.right))
    }

    pub fn carets(&self) -> usize {
        self.0.as_ref().map_or(0, |n| n.carets)
    }

    pub fn leaves(&self) -> usize {
        self.carets() + 1
    }

    /// Height: 0 for the trivial tree.
    pub fn depth(&self) -> usize {
        match self.split() {
            None => 0,
            Some((_, l, r)) => 1 + l.depth().max(r.depth()),
        }
    }

    pub fn at(&self, addr: &[Dir]) -> Option<&Tree> {
        let mut cur = self;
        for d in addr {
            let (_, l, r) = cur.split()?;
            cur = if *d == Dir::L { l } else { r };
        }
        Some(cur)
    }

    /// Colour of the interior vertex at `addr`, if it is one.
    pub fn colour_at(&self, addr: &[Dir]) -> Option<Colour> {
        self.at(addr).and_then(|t| t.colour())
    }

    /// Interior vertices in preorder (vertex, left subtree, right subtree).
    pub fn vertices(&self) -> Vec<(Address, Colour)> {
        let mut out = Vec::with_capacity(self.carets());
        let mut stack = vec![(Vec::new(), self)];
        while let Some((addr, t)) = stack.pop() {
            if let Some((c, l, r)) = t.split() {
                let mut ar = addr.clone();
                ar.push(Dir::R);
                let mut al = addr.clone();
                al.push(Dir::L);
                out.push((addr, c));
                stack.push((ar, r));
                stack.push((al, l));
            }
        }
        out
    }

    pub fn leaf_addresses(&self) -> Vec<Address> {
        fn go(t: &Tree, addr: &mut Address, out: &mut Vec<Address>) {
            match t.split() {
                None => out.push(addr.clone()),
                Some((_, l, r)) => {
                    addr.push(Dir::L);
                    go(l, addr, out);
                    addr.pop();
                    addr.push(Dir::R);
                    go(r, addr, out);
                    addr.pop();
                }
            }
        }
        let mut out = Vec::with_capacity(self.leaves());
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// 1-based index of the leaf at `addr`.
    pub fn leaf_index(&self, addr: &[Dir]) -> Option<usize> {
        let mut cur = self;
        let mut idx = 1;
        for d in addr {
            let (_, l, r) = cur.split()?;
            if *d == Dir::L {
                cur = l;
            } else {
                idx += l.leaves();
                cur = r;
            }
        }
        if cur.is_leaf() {
            Some(idx)
        } else {
            None
        }
    }

    /// Number of leaves strictly to the left of the subtree rooted at `addr`.
    pub fn leaves_before(&self, addr: &[Dir]) -> usize {
        let mut cur = self;
        let mut n = 0;
        for d in addr {
            let (_, l, r) = cur.split().expect("address inside tree");
            if *d == Dir::L {
                cur = l;
            } else {
                n += l.leaves();
                cur = r;
            }
        }
        n
    }

    /// Replace the subtree at `addr`.
    pub fn replace(&self, addr: &[Dir], new: Tree) -> Tree {
        match addr.split_first() {
            None => new,
            Some((d, rest)) => {
                let (c, l, r) = self.split().expect("address inside tree");
                match d {
                    Dir::L => Tree::node(c, l.replace(rest, new), r.clone()),
                    Dir::R => Tree::node(c, l.clone(), r.replace(rest, new)),
                }
            }
        }
    }

    /// Glue `t` onto leaf `k` (1-based).
    pub fn graft(&self, k: usize, t: &Tree) -> Result<Tree> {
        if k == 0 || k > self.leaves() {
            return Err(Error::IndexOutOfRange { index: k, bound: self.leaves() });
        }
        fn go(s: &Tree, k: usize, t: &Tree) -> Tree {
            match s.split() {
                None => t.clone(),
                Some((c, l, r)) => {
                    let nl = l.leaves();
                    if k <= nl {
                        Tree::node(c, go(l, k, t), r.clone())
                    } else {
                        Tree::node(c, l.clone(), go(r, k - nl, t))
                    }
                }
            }
        }
        Ok(go(self, k, t))
    }

    /// `self ∘ f`: the i-th tree of `f` is glued to the i-th leaf.
    pub fn compose(&self, f: &Forest) -> Result<Tree> {
        if f.roots() != self.leaves() {
            return Err(Error::ArityMismatch { expected: self.leaves(), found: f.roots() });
        }
        fn go(s: &Tree, trees: &[Tree], pos: &mut usize) -> Tree {
            match s.split() {
                None => {
                    let t = trees[*pos].clone();
                    *pos += 1;
                    t
                }
                Some((c, l, r)) => {
                    let nl = go(l, trees, pos);
                    let nr = go(r, trees, pos);
                    Tree::node(c, nl, nr)
                }
            }
        }
        let mut pos = 0;
        Ok(go(self, f.trees(), &mut pos))
    }

    pub fn recolour(&self, map: &dyn Fn(Colour) -> Colour) -> Tree {
        match self.split() {
            None => Tree::leaf(),
            Some((c, l, r)) => Tree::node(map(c), l.recolour(map), r.recolour(map)),
        }
    }

    pub fn monochromatize(&self, colour: Colour) -> Tree {
        self.recolour(&|_| colour)
    }

    pub fn is_monochromatic(&self, colour: Colour) -> bool {
        self.vertices().iter().all(|(_, c)| *c == colour)
    }

    pub fn same_shape(&self, other: &Tree) -> bool {
        match (self.split(), other.split()) {
            (None, None) => true,
            (Some((_, a, b)), Some((_, c, d))) => a.same_shape(c) && b.same_shape(d),
            _ => false,
        }
    }

    /// Colour word along the path to the first leaf.
    pub fn first_branch(&self) -> Vec<Colour> {
        let mut out = Vec::new();
        let mut cur = self;
        while let Some((c, l, _)) = cur.split() {
            out.push(c);
            cur = l;
        }
        out
    }

    /// Colour word along the path to the last leaf.
    pub fn last_branch(&self) -> Vec<Colour> {
        let mut out = Vec::new();
        let mut cur = self;
        while let Some((c, _, r)) = cur.split() {
            out.push(c);
            cur = r;
        }
        out
    }

    pub fn colour_count(&self) -> ColourVector {
        let mut v = ColourVector::default();
        for (_, c) in self.vertices() {
            *v.0.entry(c).or_insert(0) += 1;
        }
        v
    }

    /// Preorder elementary factors; this is also the order of the left-vine decomposition.
    pub fn preorder_factors(&self) -> Vec<(Colour, usize)> {
        let mut out = Vec::with_capacity(self.carets());
        for (addr, c) in self.vertices() {
            // In preorder every earlier vertex is an ancestor or lies to the left, so the
            // leaf index of `addr` in the partial tree equals the number of leaves to its left + 1.
            out.push((c, self.leaves_before(&addr) + 1));
        }
        out
    }

    pub fn from_factors(factors: &[(Colour, usize)]) -> Result<Tree> {
        let mut t = Tree::leaf();
        for &(c, j) in factors {
            t = t.graft(j, &Tree::caret(c))?;
        }
        Ok(t)
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.split() {
            None => write!(f, "I"),
            Some((c, l, r)) if l.is_leaf() && r.is_leaf() => write!(f, "Y{}", c.0),
            Some((c, l, r)) => write!(f, "Y{}({:?},{:?})", c.0, l, r),
        }
    }
}

/// Colour counting vector: number of vertices of each colour.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ColourVector(pub BTreeMap<Colour, usize>);

impl ColourVector {
    pub fn get(&self, c: Colour) -> usize {
        self.0.get(&c).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &ColourVector) -> ColourVector {
        let mut out = self.clone();
        for (c, n) in &other.0 {
            *out.0.entry(*c).or_insert(0) += n;
        }
        out.0.retain(|_, n| *n > 0);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.values().all(|n| *n == 0)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    /// Dense signed vector over `k` colours.
    pub fn to_vec(&self, k: usize) -> Vec<i64> {
        let mut v = vec![0; k];
        for (c, n) in &self.0 {
            if (c.0 as usize) < k {
                v[c.0 as usize] = *n as i64;
            }
        }
        v
    }
}

/// An elementary forest factor `c_{j,n}`: one `c`-caret at root `j` of `n` roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Elementary {
    pub colour: Colour,
    pub j: usize,
    pub n: usize,
}

/// A nonempty ordered list of trees.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Forest {
    trees: Vec<Tree>,
}

impl Forest {
    pub fn new(trees: Vec<Tree>) -> Result<Forest> {
        if trees.is_empty() {
            return Err(Error::EmptyForest);
        }
        Ok(Forest { trees })
    }

    pub fn from_tree(t: Tree) -> Forest {
        Forest { trees: vec![t] }
    }

    /// `I^{⊗n}`.
    pub fn identity(n: usize) -> Result<Forest> {
        Forest::new(vec![Tree::leaf(); n])
    }

    pub fn elementary(colour: Colour, j: usize, n: usize) -> Result<Forest> {
        if j == 0 || j > n {
            return Err(Error::IndexOutOfRange { index: j, bound: n });
        }
        let mut trees = vec![Tree::leaf(); n];
        trees[j - 1] = Tree::caret(colour);
        Forest::new(trees)
    }

    /// Forest on `n` roots with `t` at root `j` and trivial trees elsewhere.
    pub fn single(t: Tree, j: usize, n: usize) -> Result<Forest> {
        if j == 0 || j > n {
            return Err(Error::IndexOutOfRange { index: j, bound: n });
        }
        let mut trees = vec![Tree::leaf(); n];
        trees[j - 1] = t;
        Forest::new(trees)
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn into_trees(self) -> Vec<Tree> {
        self.trees
    }

    pub fn tree(&self, i: usize) -> &Tree {
        &self.trees[i]
    }

    pub fn roots(&self) -> usize {
        self.trees.len()
    }

    pub fn leaves(&self) -> usize {
        self.trees.iter().map(Tree::leaves).sum()
    }

    pub fn carets(&self) -> usize {
        self.trees.iter().map(Tree::carets).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.trees.iter().all(Tree::is_leaf)
    }

    pub fn as_tree(&self) -> Option<&Tree> {
        if self.trees.len() == 1 {
            Some(&self.trees[0])
        } else {
            None
        }
    }

    /// `self ∘ g`: tree `i` of `g` is glued to leaf `i` of `self`.
    pub fn compose(&self, g: &Forest) -> Result<Forest> {
        if self.leaves() != g.roots() {
            return Err(Error::ArityMismatch { expected: self.leaves(), found: g.roots() });
        }
        let mut out = Vec::with_capacity(self.roots());
        let mut pos = 0;
        for t in &self.trees {
            let k = t.leaves();
            let sub = Forest { trees: g.trees[pos..pos + k].to_vec() };
            out.push(t.compose(&sub)?);
            pos += k;
        }
        Ok(Forest { trees: out })
    }

    pub fn tensor(&self, g: &Forest) -> Forest {
        let mut trees = self.trees.clone();
        trees.extend(g.trees.iter().cloned());
        Forest { trees }
    }

    /// Glue `t` onto leaf `k` of the forest.
    pub fn graft(&self, k: usize, t: &Tree) -> Result<Forest> {
        let (i, local) = self.locate_leaf(k)?;
        let mut trees = self.trees.clone();
        trees[i] = trees[i].graft(local, t)?;
        Ok(Forest { trees })
    }

    /// For a 1-based leaf index, the 0-based tree index and the 1-based local leaf index.
    pub fn locate_leaf(&self, k: usize) -> Result<(usize, usize)> {
        let mut rest = k;
        if k == 0 {
            return Err(Error::IndexOutOfRange { index: k, bound: self.leaves() });
        }
        for (i, t) in self.trees.iter().enumerate() {
            if rest <= t.leaves() {
                return Ok((i, rest));
            }
            rest -= t.leaves();
        }
        Err(Error::IndexOutOfRange { index: k, bound: self.leaves() })
    }

    /// 1-based index of the first leaf of tree `i` (0-based).
    pub fn first_leaf_of(&self, i: usize) -> usize {
        1 + self.trees[..i].iter().map(Tree::leaves).sum::<usize>()
    }

    /// Factors root-down: vertices are taken level by level from the roots, right to left
    /// within a level, so that `a1 b2 c1 a3` is returned in its written order.
    pub fn elementary_factorization(&self) -> Vec<Elementary> {
        let mut out = Vec::with_capacity(self.carets());
        // slots are the leaves of the partial forest, each carrying the subtree still to build
        let mut slots: Vec<Tree> = self.trees.clone();
        loop {
            // indices of slots holding nontrivial trees, processed right to left
            let pending: Vec<usize> =
                (0..slots.len()).filter(|&i| !slots[i].is_leaf()).rev().collect();
            if pending.is_empty() {
                break;
            }
            for i in pending {
                let (c, l, r) = {
                    let (c, l, r) = slots[i].split().expect("pending slot is interior");
                    (c, l.clone(), r.clone())
                };
                out.push(Elementary { colour: c, j: i + 1, n: slots.len() });
                slots.splice(i..i + 1, [l, r]);
            }
        }
        out
    }

    pub fn from_elementary(roots: usize, factors: &[Elementary]) -> Result<Forest> {
        let mut f = Forest::identity(roots)?;
        for e in factors {
            if e.n != f.leaves() {
                return Err(Error::ArityMismatch { expected: f.leaves(), found: e.n });
            }
            f = f.graft(e.j, &Tree::caret(e.colour))?;
        }
        Ok(f)
    }

    pub fn colour_count(&self) -> ColourVector {
        let mut v = ColourVector::default();
        for t in &self.trees {
            v = v.add(&t.colour_count());
        }
        v
    }

    pub fn recolour(&self, map: &dyn Fn(Colour) -> Colour) -> Forest {
        Forest { trees: self.trees.iter().map(|t| t.recolour(map)).collect() }
    }
}

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, t) in self.trees.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{t:?}")?;
        }
        write!(f, "]")
    }
}

/// One left-vine: attached at leaf `attach` of the partial tree, coloured from its root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vine {
    pub attach: usize,
    pub colours: Vec<Colour>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VineDecomposition {
    pub vines: Vec<Vine>,
}

impl VineDecomposition {
    pub fn recompose(&self) -> Result<Tree> {
        let mut t = Tree::leaf();
        for v in &self.vines {
            t = t.graft(v.attach, &left_vine_coloured(&v.colours))?;
        }
        Ok(t)
    }
}

/// Left-vine decomposition `t = λ(1)_{k1} λ(2)_{k2} ⋯` with `k1 = 1 < k2 < ⋯`.
pub fn left_vine_decomposition(t: &Tree) -> VineDecomposition {
    let mut vines = Vec::new();
    for (addr, _) in t.vertices() {
        // a vine starts at the root and at every interior right child
        if addr.last().is_some_and(|d| *d == Dir::L) {
            continue;
        }
        let mut colours = Vec::new();
        let mut cur = t.at(&addr).expect("vertex");
        while let Some((c, l, _)) = cur.split() {
            colours.push(c);
            cur = l;
        }
        vines.push(Vine { attach: t.leaves_before(&addr) + 1, colours });
    }
    VineDecomposition { vines }
}

/// Left-vine with the given colours read from the root.
pub fn left_vine_coloured(colours: &[Colour]) -> Tree {
    let mut t = Tree::leaf();
    for c in colours.iter().rev() {
        t = Tree::node(*c, t, Tree::leaf());
    }
    t
}

/// Right-vine with the given colours read from the root.
pub fn right_vine_coloured(colours: &[Colour]) -> Tree {
    let mut t = Tree::leaf();
    for c in colours.iter().rev() {
        t = Tree::node(*c, Tree::leaf(), t);
    }
    t
}

/// Monochromatic left-vine with `n` carets.
pub fn left_vine(colour: Colour, n: usize) -> Tree {
    left_vine_coloured(&vec![colour; n])
}

/// Monochromatic right-vine with `n` carets.
pub fn right_vine(colour: Colour, n: usize) -> Tree {
    right_vine_coloured(&vec![colour; n])
}

pub fn complete_tree(colour: Colour, depth: usize) -> Tree {
    if depth == 0 {
        return Tree::leaf();
    }
    let sub = complete_tree(colour, depth - 1);
    Tree::node(colour, sub.clone(), sub)
}

/// An uncoloured `k`-ary tree used as the skeleton of a quasi-tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Skeleton {
    Leaf,
    Node(Vec<Skeleton>),
}

impl Skeleton {
    /// `k`-ary left-vine with `len` interior vertices.
    pub fn left_vine(k: usize, len: usize) -> Skeleton {
        let mut s = Skeleton::Leaf;
        for _ in 0..len {
            let mut kids = vec![Skeleton::Leaf; k];
            kids[0] = s;
            s = Skeleton::Node(kids);
        }
        s
    }

    /// `k`-ary right-vine with `len` interior vertices.
    pub fn right_vine(k: usize, len: usize) -> Skeleton {
        let mut s = Skeleton::Leaf;
        for _ in 0..len {
            let mut kids = vec![Skeleton::Leaf; k];
            kids[k - 1] = s;
            s = Skeleton::Node(kids);
        }
        s
    }

    pub fn complete(k: usize, depth: usize) -> Skeleton {
        if depth == 0 {
            Skeleton::Leaf
        } else {
            Skeleton::Node(vec![Skeleton::complete(k, depth - 1); k])
        }
    }

    pub fn interior(&self) -> usize {
        match self {
            Skeleton::Leaf => 0,
            Skeleton::Node(k) => 1 + k.iter().map(Skeleton::interior).sum::<usize>(),
        }
    }
}

/// Replace every interior vertex of the skeleton by a copy of `cell`.
pub fn quasi_tree(skeleton: &Skeleton, cell: &Tree) -> Result<Tree> {
    match skeleton {
        Skeleton::Leaf => Ok(Tree::leaf()),
        Skeleton::Node(kids) => {
            if kids.len() != cell.leaves() {
                return Err(Error::ArityMismatch { expected: cell.leaves(), found: kids.len() });
            }
            let subs = kids.iter().map(|k| quasi_tree(k, cell)).collect::<Result<Vec<_>>>()?;
            cell.compose(&Forest::new(subs)?)
        }
    }
}

/// If `s ≤ t` structurally, the forest `f` with `s ∘ f = t`.
pub fn rooted_subtree_query(s: &Tree, t: &Tree) -> Option<Forest> {
    fn go(s: &Tree, t: &Tree, out: &mut Vec<Tree>) -> bool {
        match (s.split(), t.split()) {
            (None, _) => {
                out.push(t.clone());
                true
            }
            (Some(_), None) => false,
            (Some((c, sl, sr)), Some((d, tl, tr))) => c == d && go(sl, tl, out) && go(sr, tr, out),
        }
    }
    let mut out = Vec::with_capacity(s.leaves());
    if go(s, t, &mut out) {
        Some(Forest { trees: out })
    } else {
        None
    }
}

/// Smallest common upper bound in the free category: the union of the two shapes.
pub fn free_join(t: &Tree, s: &Tree) -> Result<Tree> {
    fn go(t: &Tree, s: &Tree, addr: &mut Address) -> Result<Tree> {
        match (t.split(), s.split()) {
            (None, _) => Ok(s.clone()),
            (_, None) => Ok(t.clone()),
            (Some((c, tl, tr)), Some((d, sl, sr))) => {
                if c != d {
                    return Err(Error::ColourClash(address_string(addr)));
                }
                addr.push(Dir::L);
                let l = go(tl, sl, addr)?;
                addr.pop();
                addr.push(Dir::R);
                let r = go(tr, sr, addr)?;
                addr.pop();
                Ok(Tree::node(c, l, r))
            }
        }
    }
    go(t, s, &mut Vec::new())
}

pub fn colour_count(f: &Forest) -> ColourVector {
    f.colour_count()
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: Colour = Colour(0);
    const B: Colour = Colour(1);
    const C: Colour = Colour(2);

    fn word(ws: &[(Colour, usize)]) -> Tree {
        Tree::from_factors(ws).unwrap()
    }

    #[test]
    fn compact_word_tree() {
        let t = word(&[(A, 1), (B, 2), (C, 1), (A, 3)]);
        assert_eq!(t.leaves(), 5);
        assert_eq!(t.colour_at(&[Dir::L]), Some(C));
        assert_eq!(t.colour_at(&[Dir::R]), Some(B));
        assert_eq!(t.colour_at(&[Dir::R, Dir::L]), Some(A));
    }

    #[test]
    fn elementary_factorization_written_order() {
        let t = word(&[(A, 1), (B, 2), (C, 1), (A, 3)]);
        let f = Forest::from_tree(t.clone()).elementary_factorization();
        let got: Vec<_> = f.iter().map(|e| (e.colour, e.j, e.n)).collect();
        assert_eq!(got, vec![(A, 1, 1), (B, 2, 2), (C, 1, 3), (A, 3, 4)]);
        assert_eq!(Forest::from_elementary(1, &f).unwrap().as_tree(), Some(&t));
        assert!(Forest::identity(3).unwrap().elementary_factorization().is_empty());
    }

    #[test]
    fn vines_of_example() {
        let t = word(&[(A, 1), (B, 2), (C, 1), (A, 3)]);
        let d = left_vine_decomposition(&t);
        assert_eq!(
            d.vines,
            vec![Vine { attach: 1, colours: vec![A, C] }, Vine { attach: 3, colours: vec![B, A] }]
        );
        assert_eq!(d.recompose().unwrap(), t);
        let lv = word(&[(A, 1), (A, 1)]);
        assert_eq!(left_vine_decomposition(&lv).vines, vec![Vine { attach: 1, colours: vec![A, A] }]);
    }

    #[test]
    fn compose_and_join() {
        let y = Tree::caret(A);
        let f = Forest::elementary(A, 1, 2).unwrap();
        assert_eq!(y.compose(&f).unwrap(), word(&[(A, 1), (A, 1)]));
        let j = free_join(&word(&[(A, 1), (A, 1)]), &word(&[(A, 1), (A, 2)])).unwrap();
        assert_eq!(j, complete_tree(A, 2));
        assert!(free_join(&Tree::caret(A), &Tree::caret(B)).is_err());
        assert_eq!(free_join(&y, &y).unwrap(), y);
    }

    #[test]
    fn subtree_query() {
        let t = word(&[(A, 1), (A, 1)]);
        let f = rooted_subtree_query(&Tree::caret(A), &t).unwrap();
        assert_eq!(f, Forest::new(vec![Tree::caret(A), Tree::leaf()]).unwrap());
        assert!(rooted_subtree_query(&Tree::caret(B), &t).is_none());
    }

    #[test]
    fn constructors() {
        assert_eq!(left_vine(B, 2), word(&[(B, 1), (B, 1)]));
        assert_eq!(complete_tree(A, 1), Tree::caret(A));
        assert_eq!(complete_tree(A, 3).leaves(), 8);
        let q = quasi_tree(&Skeleton::left_vine(3, 2), &word(&[(A, 1), (A, 2)])).unwrap();
        assert_eq!(q, word(&[(A, 1), (A, 2), (A, 1), (A, 2)]));
        let qr = quasi_tree(&Skeleton::right_vine(3, 2), &word(&[(A, 1), (A, 1)])).unwrap();
        assert_eq!(qr, word(&[(A, 1), (A, 1), (A, 3), (A, 3)]));
        assert!(quasi_tree(&Skeleton::left_vine(2, 1), &word(&[(A, 1), (A, 2)])).is_err());
    }

    #[test]
    fn colour_counting() {
        let t = word(&[(A, 1), (B, 2), (C, 1), (A, 3)]);
        let v = t.colour_count();
        assert_eq!((v.get(A), v.get(B), v.get(C)), (2, 1, 1));
        assert!(Tree::leaf().colour_count().is_zero());
    }
}
