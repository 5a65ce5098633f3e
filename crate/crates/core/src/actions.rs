//! Pointed trees, the Q-space of a category and the canonical actions on it.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::forest::{complete_tree, Colour, Dir, Tree};
use crate::fraction::GroupElement;
use crate::germ::{germ_presentation, End, GermPresentation};
use crate::rewriting::{Certificate, Engine, Separation, Verdict};
use crate::symmetric::TypeTag;

/// A tree with a distinguished leaf (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointedTree {
    pub tree: Tree,
    pub leaf: usize,
}

/// One step of a root-to-leaf path: the colour of the vertex left and the direction taken.
pub type Step = (Colour, Dir);

impl PointedTree {
    pub fn new(tree: Tree, leaf: usize) -> Result<PointedTree> {
        if leaf == 0 || leaf > tree.leaves() {
            return Err(Error::IndexOutOfRange { index: leaf, bound: tree.leaves() });
        }
        Ok(PointedTree { tree, leaf })
    }

    pub fn unit() -> PointedTree {
        PointedTree { tree: Tree::leaf(), leaf: 1 }
    }

    /// Glue the root of `q` to the distinguished leaf and keep the distinguished leaf of `q`.
    pub fn compose(&self, q: &PointedTree) -> PointedTree {
        PointedTree { tree: self.tree.graft(self.leaf, &q.tree).expect("leaf in range"), leaf: self.leaf - 1 + q.leaf }
    }

    /// `(t, j) • s`: the tree `t` with `s` glued onto its leaf `j`.
    pub fn bullet(&self, s: &Tree) -> Tree {
        self.tree.graft(self.leaf, s).expect("leaf in range")
    }

    /// The path from the root to the distinguished leaf.
    pub fn path(&self) -> Vec<Step> {
        let addr = &self.tree.leaf_addresses()[self.leaf - 1];
        let mut cur = &self.tree;
        let mut out = Vec::with_capacity(addr.len());
        for d in addr {
            let (c, l, r) = cur.split().expect("path inside tree");
            out.push((c, *d));
            cur = if *d == Dir::L { l } else { r };
        }
        out
    }

    pub fn from_path(path: &[Step]) -> PointedTree {
        let mut p = PointedTree::unit();
        for (c, d) in path {
            let leaf = if *d == Dir::L { 1 } else { 2 };
            p = p.compose(&PointedTree { tree: Tree::caret(*c), leaf });
        }
        p
    }

    /// Keep only the vertices on the path to the distinguished leaf.
    pub fn prune(&self) -> PointedTree {
        PointedTree::from_path(&self.path())
    }

    pub fn is_narrow(&self) -> bool {
        self.tree.carets() == self.path().len()
    }
}

/// A point `[t, j]` of the Q-space, stored as a narrow path without trailing left turns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPoint {
    pub path: Vec<Step>,
}

impl QPoint {
    pub fn from_path(path: &[Step]) -> QPoint {
        let mut path = path.to_vec();
        // growing at the distinguished leaf moves it up to the left: (t, j) ∼ (t f, j^f)
        while path.last().is_some_and(|(_, d)| *d == Dir::L) {
            path.pop();
        }
        QPoint { path }
    }

    pub fn new(t: &Tree, j: usize) -> Result<QPoint> {
        Ok(QPoint::from_path(&PointedTree::new(t.clone(), j)?.path()))
    }

    /// The base point `[I, 1]`, which is also the minimum `o`.
    pub fn base() -> QPoint {
        QPoint { path: Vec::new() }
    }

    pub fn pointed(&self) -> PointedTree {
        PointedTree::from_path(&self.path)
    }
}

/// `Cone(t, j)`, given by the narrow path of `(t, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    pub path: Vec<Step>,
}

impl Cone {
    pub fn of(p: &PointedTree) -> Cone {
        Cone { path: p.path() }
    }

    pub fn pointed(&self) -> PointedTree {
        PointedTree::from_path(&self.path)
    }

    pub fn contains_prefix(&self, other: &Cone) -> bool {
        other.path.starts_with(&self.path)
    }

    /// Syntactic membership: the point's path, padded with left turns, extends the cone's.
    pub fn contains(&self, x: &QPoint) -> bool {
        x.path.starts_with(&self.path)
            || (self.path.starts_with(&x.path) && self.path[x.path.len()..].iter().all(|(_, d)| *d == Dir::L))
    }
}

pub fn show_path(path: &[Step], colours: &[String]) -> String {
    if path.is_empty() {
        return "e".into();
    }
    path.iter()
        .map(|(c, d)| format!("{}{}", colours[c.0 as usize], if *d == Dir::L { "L" } else { "R" }))
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> =
            self.path.iter().map(|(c, d)| format!("{}{}", c.0, if *d == Dir::L { "L" } else { "R" })).collect();
        write!(f, "Cone({})", s.join(" "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QOrder {
    Less,
    Equal,
    Greater,
    Unknown,
}

/// The prefix-replacement rule of an element on one cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalMap {
    pub source: Cone,
    pub target: Cone,
    pub rule: (PointedTree, PointedTree),
}

/// The Q-space of a category together with its engine.
#[derive(Clone, Debug)]
pub struct QSpace {
    engine: Arc<Engine>,
}

impl QSpace {
    pub fn new(engine: Arc<Engine>) -> QSpace {
        QSpace { engine }
    }

    pub fn engine(&self) -> &Arc<Engine> {
        &self.engine
    }

    /// Leaf positions of `x` and `y` on a common tree.
    fn common(&self, x: &QPoint, y: &QPoint) -> Result<(usize, usize, Certificate)> {
        let (px, py) = (x.pointed(), y.pointed());
        let m = self.engine.common_right_multiple(&px.tree, &py.tree)?;
        Ok((m.p.first_leaf_of(px.leaf - 1), m.q.first_leaf_of(py.leaf - 1), m.certificate))
    }

    pub fn compare(&self, x: &QPoint, y: &QPoint) -> QOrder {
        if x == y {
            return QOrder::Equal;
        }
        match self.common(x, y) {
            Ok((a, b, _)) => match a.cmp(&b) {
                Ordering::Less => QOrder::Less,
                Ordering::Equal => QOrder::Equal,
                Ordering::Greater => QOrder::Greater,
            },
            Err(_) => QOrder::Unknown,
        }
    }

    pub fn equal(&self, x: &QPoint, y: &QPoint) -> Verdict {
        if x == y {
            return Verdict::Equal(Certificate::NormalForm("same narrow path".into()));
        }
        match self.common(x, y) {
            Ok((a, b, cert)) if a == b => Verdict::Equal(cert),
            Ok((a, b, _)) => Verdict::Distinct(Separation::NormalForm(format!("leaves {a} and {b} of a common tree"))),
            Err(_) if matches!(self.engine.strategy(), crate::rewriting::Strategy::FreeJoin) => {
                // free points are their narrow paths
                Verdict::Distinct(Separation::NormalForm("different free paths".into()))
            }
            Err(e) => Verdict::Unknown(e.to_string()),
        }
    }

    /// `β(t, j)([s, k]) = [(t, j) ∘ (s, k)]`.
    pub fn beta(&self, p: &PointedTree, x: &QPoint) -> QPoint {
        let mut path = p.path();
        path.extend(x.path.iter().copied());
        QPoint::from_path(&path)
    }

    /// `[tπ, s] · [s ∘ p, k]`, by prefix replacement on the cone of `s` containing the point.
    pub fn alpha(&self, g: &GroupElement, x: &QPoint) -> Result<QPoint> {
        let px = x.pointed();
        let m = self.engine.common_right_multiple(g.s(), &px.tree)?;
        let k = m.q.first_leaf_of(px.leaf - 1);
        let (j, local) = m.p.locate_leaf(k)?;
        let target = PointedTree::new(g.t().clone(), g.perm().apply(j + 1))?;
        let tail = PointedTree::new(m.p.tree(j).clone(), local)?;
        Ok(QPoint::from_path(&target.compose(&tail).path()))
    }

    pub fn local_map(&self, g: &GroupElement, j: usize) -> Result<LocalMap> {
        let src = PointedTree::new(g.s().clone(), j)?;
        let tgt = PointedTree::new(g.t().clone(), g.perm().apply(j))?;
        Ok(LocalMap { source: Cone::of(&src), target: Cone::of(&tgt), rule: (src.prune(), tgt.prune()) })
    }

    /// Whether the rule `(s, j) ↦ (t, k)` fixes its cone pointwise, tested on the cone's points
    /// with paths of length at most 2 below it.
    fn rule_is_trivial(&self, src: &[Step], tgt: &[Step]) -> bool {
        if src == tgt {
            return true;
        }
        let probes = all_paths(self.engine.presentation().colour_count(), 2);
        probes.iter().all(|w| {
            let a = QPoint::from_path(&[src, w].concat());
            let b = QPoint::from_path(&[tgt, w].concat());
            self.equal(&a, &b).is_equal()
        })
    }

    /// Cones of the source tree, refined `depth` levels, on which `g` is not the identity rule.
    pub fn support_cones(&self, g: &GroupElement, depth: usize) -> Result<Vec<Cone>> {
        let cell = complete_tree(self.engine.base(), depth);
        let mut out = Vec::new();
        for j in 1..=g.s().leaves() {
            let src = PointedTree::new(g.s().clone(), j)?;
            let tgt = PointedTree::new(g.t().clone(), g.perm().apply(j))?;
            for k in 1..=cell.leaves() {
                let sub = PointedTree { tree: cell.clone(), leaf: k };
                let (a, b) = (src.compose(&sub).path(), tgt.compose(&sub).path());
                if !self.rule_is_trivial(&a, &b) {
                    out.push(Cone { path: a });
                }
            }
        }
        Ok(out)
    }

    pub fn germ(&self, end: End) -> GermPresentation {
        germ_presentation(self.engine.presentation(), end)
    }

    /// Whether `g` acts trivially near the endpoint, through its germ words.
    pub fn in_k_end(&self, g: &GroupElement, end: End) -> Result<Verdict> {
        if g.tag() != TypeTag::F {
            return Err(Error::TagViolation("K is a subgroup of G".into()));
        }
        Ok(self.germ(end).word_problem(&end.branch(g.t()), &end.branch(g.s())))
    }

    pub fn in_k_o(&self, g: &GroupElement) -> Result<Verdict> {
        self.in_k_end(g, End::O)
    }

    pub fn in_k_omega(&self, g: &GroupElement) -> Result<Verdict> {
        self.in_k_end(g, End::Omega)
    }

    pub fn in_k(&self, g: &GroupElement) -> Result<Verdict> {
        let o = self.in_k_o(g)?;
        if !o.is_equal() {
            return Ok(o);
        }
        self.in_k_omega(g)
    }
}

/// Every narrow path with at most `len` steps.
pub fn all_paths(colours: usize, len: usize) -> Vec<Vec<Step>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<Step>> = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for p in &layer {
            for c in 0..colours {
                for d in [Dir::L, Dir::R] {
                    let mut q = p.clone();
                    q.push((Colour(c as u16), d));
                    next.push(q);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Distinct Q-points with narrow representatives of at most `len` carets.
pub fn sample_points(colours: usize, len: usize) -> Vec<QPoint> {
    let mut pts: Vec<QPoint> = all_paths(colours, len).iter().map(|p| QPoint::from_path(p)).collect();
    pts.sort();
    pts.dedup();
    pts
}

pub fn random_point<R: Rng>(rng: &mut R, colours: usize, max_len: usize) -> QPoint {
    let n = rng.gen_range(0..=max_len);
    let path: Vec<Step> = (0..n)
        .map(|_| (Colour(rng.gen_range(0..colours) as u16), if rng.gen_bool(0.5) { Dir::L } else { Dir::R }))
        .collect();
    QPoint::from_path(&path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fraction::{generator, GeneratorName};
    use crate::skein_dsl::parse_presentation;
    use crate::symmetric::Permutation;

    fn space(text: &str) -> QSpace {
        QSpace::new(Arc::new(Engine::auto(parse_presentation(text).unwrap())))
    }

    #[test]
    fn pointed_monoid() {
        let (a, b) = (Colour(0), Colour(1));
        let p = PointedTree::new(Tree::caret(a), 1).unwrap();
        let q = PointedTree::new(Tree::caret(b), 2).unwrap();
        let pq = p.compose(&q);
        assert_eq!(pq.tree, Tree::node(a, Tree::caret(b), Tree::leaf()));
        assert_eq!(pq.leaf, 2);
        assert_eq!(p.bullet(&Tree::caret(b)), Tree::node(a, Tree::caret(b), Tree::leaf()));
        assert_eq!(PointedTree::unit().compose(&pq), pq);
        let wide = PointedTree::new(Tree::node(a, Tree::caret(b), Tree::leaf()), 3).unwrap();
        assert_eq!(wide.prune(), PointedTree::new(Tree::caret(a), 2).unwrap());
        assert!(pq.is_narrow() && !wide.is_narrow());
    }

    #[test]
    fn growth_equivalence() {
        let s = space("colors: a b\nrel: a1 a2 = b1 b1");
        let (a, b) = (Colour(0), Colour(1));
        let x = QPoint::new(&Tree::caret(a), 1).unwrap();
        let y = QPoint::new(&Tree::node(a, Tree::caret(b), Tree::leaf()), 1).unwrap();
        assert_eq!(x, y);
        let l = QPoint::new(&Tree::caret(a), 2).unwrap();
        assert_eq!(s.compare(&x, &l), QOrder::Less);
        // [b1 b1, 3] is the last leaf of a tree equal to a1 a2
        let bb = s.engine().presentation().tree("b1 b1").unwrap();
        let aa = s.engine().presentation().tree("a1 a2").unwrap();
        assert!(s.equal(&QPoint::new(&bb, 3).unwrap(), &QPoint::new(&aa, 3).unwrap()).is_equal());
        assert!(s.equal(&QPoint::new(&bb, 2).unwrap(), &QPoint::new(&aa, 2).unwrap()).is_equal());
    }

    #[test]
    fn alpha_swaps() {
        let s = space("colors: a\nrel:");
        let t = Tree::caret(Colour(0));
        let g = GroupElement::new(t.clone(), Permutation::new(vec![2, 1]).unwrap(), t.clone(), s.engine().clone(), TypeTag::V)
            .unwrap();
        let (x1, x2) = (QPoint::new(&t, 1).unwrap(), QPoint::new(&t, 2).unwrap());
        assert_eq!(s.alpha(&g, &x1).unwrap(), x2);
        assert_eq!(s.alpha(&g, &x2).unwrap(), x1);
    }

    #[test]
    fn k_membership_in_f() {
        let s = space("colors: a\nrel:");
        let e = s.engine().clone();
        let x1 = generator(&GeneratorName::X { colour: Colour(0), j: 1 }, &e).unwrap();
        let x2 = generator(&GeneratorName::X { colour: Colour(0), j: 2 }, &e).unwrap();
        assert!(s.in_k(&x1).unwrap().is_distinct());
        assert!(s.in_k(&x1.commutator(&x2).unwrap()).unwrap().is_equal());
        assert!(s.support_cones(&GroupElement::identity(e.clone()), 2).unwrap().is_empty());
        let sup = s.support_cones(&x2, 1).unwrap();
        assert!(!sup.is_empty());
    }
}
