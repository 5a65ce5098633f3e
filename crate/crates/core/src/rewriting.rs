//! Equality of forests modulo skein relations.
//!
//! Relations preserve caret counts, so every congruence class is finite. The generic
//! strategy is therefore an exact search whenever a class fits in the budget; the family
//! strategies decide equality outright.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::abelian::{relation_rows, Cokernel, IntMatrix};
use crate::error::{Error, Result};
use crate::families::{cleary, higman};
use crate::forest::{
    address_string, complete_tree, free_join, rooted_subtree_query, Address, Colour, Forest, Tree,
};
use crate::skein_dsl::{FamilyHint, SkeinPresentation};
use crate::symmetric::Permutation;

pub const DEFAULT_BUDGET: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// No relations: structural equality, joins by shape union.
    FreeJoin,
    /// Every relation identifies two monochromatic trees of different colours.
    MonochromaticCofinal { base: Colour },
    /// `FS<a,b | x(a) = y(b)>` with `x = Y(I⊗z)` and `y` the left-vine of length `n`.
    ClearyNF { z: Tree, n: usize },
    /// Higman–Thompson category, decided through n-ary forests.
    NAry { n: usize },
    BoundedSearch { budget: usize },
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::FreeJoin => "free-join",
            Strategy::MonochromaticCofinal { .. } => "monochromatic-cofinal",
            Strategy::ClearyNF { .. } => "cleary-nf",
            Strategy::NAry { .. } => "n-ary",
            Strategy::BoundedSearch { .. } => "bounded-search",
        }
    }

    /// Whether equality verdicts are always decided.
    pub fn is_exact(&self) -> bool {
        matches!(self, Strategy::FreeJoin | Strategy::ClearyNF { .. } | Strategy::NAry { .. })
    }
}

/// Replace the occurrence of one side of `relation` rooted at `address` of tree `tree`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RewriteStep {
    pub tree: usize,
    pub address: Address,
    pub relation: usize,
    /// `true` rewrites lhs to rhs.
    pub forward: bool,
}

impl RewriteStep {
    pub fn inverse(&self) -> RewriteStep {
        RewriteStep { forward: !self.forward, ..self.clone() }
    }
}

impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrow = if self.forward { "->" } else { "<-" };
        write!(f, "{}@{}:r{}{}", self.tree + 1, address_string(&self.address), self.relation, arrow)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RewritePath {
    pub steps: Vec<RewriteStep>,
}

impl RewritePath {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn reversed(&self) -> RewritePath {
        RewritePath { steps: self.steps.iter().rev().map(RewriteStep::inverse).collect() }
    }

    pub fn then(mut self, other: &RewritePath) -> RewritePath {
        self.steps.extend(other.steps.iter().cloned());
        self
    }

    pub fn replay(&self, p: &SkeinPresentation, f: &Forest) -> Result<Forest> {
        let mut cur = f.clone();
        for st in &self.steps {
            cur = apply_step(p, &cur, st)?;
        }
        Ok(cur)
    }
}

pub fn rewrite_tree_at(
    p: &SkeinPresentation,
    t: &Tree,
    address: &[crate::forest::Dir],
    relation: usize,
    forward: bool,
) -> Result<Tree> {
    let (u, v) = p
        .relations()
        .get(relation)
        .ok_or(Error::IndexOutOfRange { index: relation, bound: p.relations().len() })?;
    let (from, to) = if forward { (u, v) } else { (v, u) };
    let sub = t.at(address).ok_or_else(|| Error::Invalid("address outside tree".into()))?;
    let rest = rooted_subtree_query(from, sub).ok_or_else(|| {
        Error::Invalid(format!("relation side does not occur at {}", address_string(address)))
    })?;
    Ok(t.replace(address, to.compose(&rest)?))
}

pub fn apply_step(p: &SkeinPresentation, f: &Forest, st: &RewriteStep) -> Result<Forest> {
    if st.tree >= f.roots() {
        return Err(Error::IndexOutOfRange { index: st.tree + 1, bound: f.roots() });
    }
    let mut trees = f.trees().to_vec();
    trees[st.tree] = rewrite_tree_at(p, &trees[st.tree], &st.address, st.relation, st.forward)?;
    Forest::new(trees)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Rewrites taking the left forest to the right one.
    Path(RewritePath),
    /// Rewrites taking `lhs ∘ growth` to `rhs ∘ growth`; conclusive for right-cancellative
    /// presentations.
    Grown { growth: Forest, path: RewritePath },
    /// Both sides reduce to the same normal form.
    NormalForm(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separation {
    LeafCount(usize, usize),
    RootCount(usize, usize),
    /// `χ0(lhs) − χ0(rhs)` is nonzero modulo the relation lattice; its class is given.
    ColourClass(Vec<i128>),
    /// One side's congruence class was enumerated completely without meeting the other.
    Exhausted { class_size: usize },
    NormalForm(String),
    Permutation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equal(Certificate),
    Distinct(Separation),
    Unknown(String),
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal(_))
    }

    pub fn is_distinct(&self) -> bool {
        matches!(self, Verdict::Distinct(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(_))
    }

    pub fn word(&self) -> &'static str {
        match self {
            Verdict::Equal(_) => "equal",
            Verdict::Distinct(_) => "distinct",
            Verdict::Unknown(_) => "unknown",
        }
    }
}

/// A tree being grown and rewritten, keeping the record needed to replay the rewrites on
/// `original ∘ growth`.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub original: Tree,
    pub growth: Forest,
    pub current: Tree,
    pub path: RewritePath,
}

impl Workspace {
    pub fn new(t: &Tree) -> Workspace {
        Workspace {
            original: t.clone(),
            growth: Forest::identity(t.leaves()).expect("trees have leaves"),
            current: t.clone(),
            path: RewritePath::default(),
        }
    }

    /// Glue `t` onto leaf `k` of the current tree.
    pub fn grow(&mut self, k: usize, t: &Tree) {
        self.growth = self.growth.graft(k, t).expect("leaf in range");
        self.current = self.current.graft(k, t).expect("leaf in range");
    }

    pub fn grow_forest(&mut self, f: &Forest) {
        self.growth = self.growth.compose(f).expect("growth matches leaves");
        self.current = self.current.compose(f).expect("growth matches leaves");
    }

    pub fn rewrite(
        &mut self,
        p: &SkeinPresentation,
        address: &[crate::forest::Dir],
        relation: usize,
        forward: bool,
    ) -> Result<()> {
        self.current = rewrite_tree_at(p, &self.current, address, relation, forward)?;
        self.path.steps.push(RewriteStep { tree: 0, address: address.to_vec(), relation, forward });
        Ok(())
    }

    pub fn grown_original(&self) -> Tree {
        self.original.compose(&self.growth).expect("growth matches leaves")
    }
}

/// Result of a common-right-multiple search: `t ∘ p ≡ s ∘ q`, with rewrites from
/// `t ∘ p` to `s ∘ q` when the strategy produces them.
#[derive(Clone, Debug)]
pub struct RightMultiple {
    pub p: Forest,
    pub q: Forest,
    pub certificate: Certificate,
}

#[derive(Clone, Debug)]
pub struct Engine {
    presentation: SkeinPresentation,
    strategy: Strategy,
    budget: usize,
    base: Colour,
    lattice: Cokernel,
    /// For monochromatic families: the tree `t_c` of each colour and the relation joining
    /// each ordered colour pair.
    mono: Option<MonoData>,
}

#[derive(Clone, Debug)]
struct MonoData {
    trees: Vec<Option<Tree>>,
    links: HashMap<(Colour, Colour), (usize, bool)>,
}

fn mono_colour(t: &Tree) -> Option<Colour> {
    let c = t.colour()?;
    t.is_monochromatic(c).then_some(c)
}

fn mono_data(p: &SkeinPresentation) -> Option<MonoData> {
    let mut trees = vec![None; p.colour_count()];
    let mut links = HashMap::new();
    for (i, (u, v)) in p.relations().iter().enumerate() {
        let (cu, cv) = (mono_colour(u)?, mono_colour(v)?);
        if cu == cv {
            return None;
        }
        for (c, t) in [(cu, u), (cv, v)] {
            match &trees[c.0 as usize] {
                None => trees[c.0 as usize] = Some(t.clone()),
                Some(old) if old == t => {}
                Some(_) => return None,
            }
        }
        links.insert((cu, cv), (i, true));
        links.insert((cv, cu), (i, false));
    }
    Some(MonoData { trees, links })
}

impl Engine {
    pub fn new(presentation: SkeinPresentation, strategy: Strategy) -> Result<Engine> {
        let k = presentation.colour_count();
        let rows = relation_rows(&presentation);
        let lattice = Cokernel::new(&if rows.is_empty() {
            IntMatrix::zero(0, k)
        } else {
            IntMatrix::new(k, rows)
        });
        let mono = mono_data(&presentation);
        let mut budget = DEFAULT_BUDGET;
        let mut base = Colour(0);
        match &strategy {
            Strategy::FreeJoin => {
                if !presentation.relations().is_empty() {
                    return Err(Error::Invalid("free-join needs a presentation without relations".into()));
                }
            }
            Strategy::MonochromaticCofinal { base: b } => {
                if mono.is_none() {
                    return Err(Error::Invalid("relations are not between monochromatic trees".into()));
                }
                if b.0 as usize >= k {
                    return Err(Error::UnknownColour(format!("#{}", b.0)));
                }
                base = *b;
            }
            Strategy::ClearyNF { z, n } => {
                let expected = cleary::presentation_relation(z, *n)?;
                if k != 2 || presentation.relations() != [expected] {
                    return Err(Error::Invalid("presentation is not of the form x(a) = y(b)".into()));
                }
            }
            Strategy::NAry { n } => {
                let h = higman::higman_presentation(*n)?;
                if presentation.relations() != h.relations() || k != h.colour_count() {
                    return Err(Error::Invalid(format!("presentation is not H_{n}")));
                }
            }
            Strategy::BoundedSearch { budget: b } => {
                if *b == 0 {
                    return Err(Error::Invalid("budget must be at least 1".into()));
                }
                budget = *b;
            }
        }
        Ok(Engine { presentation, strategy, budget, base, lattice, mono })
    }

    /// Choose the strongest strategy the presentation supports.
    pub fn auto(presentation: SkeinPresentation) -> Engine {
        let strategy = Engine::detect(&presentation);
        Engine::new(presentation, strategy).expect("detected strategy fits")
    }

    pub fn detect(p: &SkeinPresentation) -> Strategy {
        if p.relations().is_empty() {
            return Strategy::FreeJoin;
        }
        if let Some(FamilyHint::Cleary { z, n }) = p.family() {
            if cleary::presentation_relation(z, *n).is_ok_and(|r| p.relations() == [r]) {
                return Strategy::ClearyNF { z: z.clone(), n: *n };
            }
        }
        if let Some((z, n)) = cleary::recognise(p) {
            return Strategy::ClearyNF { z, n };
        }
        let n = p.colour_count() + 1;
        if higman::higman_presentation(n).is_ok_and(|h| h.relations() == p.relations()) {
            return Strategy::NAry { n };
        }
        if mono_data(p).is_some() {
            return Strategy::MonochromaticCofinal { base: Colour(0) };
        }
        Strategy::BoundedSearch { budget: DEFAULT_BUDGET }
    }

    pub fn with_budget(mut self, budget: usize) -> Engine {
        self.budget = budget.max(1);
        if let Strategy::BoundedSearch { budget: b } = &mut self.strategy {
            *b = self.budget;
        }
        self
    }

    /// Base colour used for generators and cofinal growth.
    pub fn with_base(mut self, base: Colour) -> Result<Engine> {
        if base.0 as usize >= self.presentation.colour_count() {
            return Err(Error::UnknownColour(format!("#{}", base.0)));
        }
        match &mut self.strategy {
            Strategy::MonochromaticCofinal { base: b } => *b = base,
            Strategy::ClearyNF { .. } if base != Colour(0) => {
                return Err(Error::Invalid("the Cleary engine grows in its first colour".into()))
            }
            _ => {}
        }
        self.base = base;
        Ok(self)
    }

    pub fn presentation(&self) -> &SkeinPresentation {
        &self.presentation
    }

    pub fn strategy(&self) -> &Strategy {
        &self.strategy
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn base(&self) -> Colour {
        self.base
    }

    pub fn describe(&self) -> String {
        format!("engine={} budget={} base={}", self.strategy.name(), self.budget, self.presentation.name(self.base))
    }

    /// Classes of `χ0` modulo the relation lattice, without the unit row.
    pub fn lattice(&self) -> &Cokernel {
        &self.lattice
    }

    pub fn colour_difference(&self, t: &Tree, s: &Tree) -> Vec<i64> {
        let k = self.presentation.colour_count();
        let (a, b) = (t.colour_count().to_vec(k), s.colour_count().to_vec(k));
        a.iter().zip(&b).map(|(x, y)| x - y).collect()
    }

    /// Cheap invariants that separate trees.
    pub fn separate(&self, t: &Tree, s: &Tree) -> Option<Separation> {
        if t.leaves() != s.leaves() {
            return Some(Separation::LeafCount(t.leaves(), s.leaves()));
        }
        let d = self.colour_difference(t, s);
        if !self.lattice.is_zero(&d) {
            return Some(Separation::ColourClass(self.lattice.class(&d)));
        }
        None
    }

    pub fn one_step_tree(&self, t: &Tree) -> Vec<(RewriteStep, Tree)> {
        let mut out = Vec::new();
        for (addr, _) in t.vertices() {
            let sub = t.at(&addr).expect("vertex");
            for (i, (u, v)) in self.presentation.relations().iter().enumerate() {
                for (forward, from, to) in [(true, u, v), (false, v, u)] {
                    if let Some(rest) = rooted_subtree_query(from, sub) {
                        let new = t.replace(&addr, to.compose(&rest).expect("arity"));
                        let st = RewriteStep { tree: 0, address: addr.clone(), relation: i, forward };
                        out.push((st, new));
                    }
                }
            }
        }
        out
    }

    /// All forests one rewrite away; both directions of every relation, at every vertex.
    pub fn one_step_rewrites(&self, f: &Forest) -> Vec<Forest> {
        let mut out = Vec::new();
        for (i, t) in f.trees().iter().enumerate() {
            for (_, new) in self.one_step_tree(t) {
                let mut trees = f.trees().to_vec();
                trees[i] = new;
                out.push(Forest::new(trees).expect("nonempty"));
            }
        }
        out
    }

    /// Bidirectional breadth-first search between `t` and `s`.
    pub fn search(&self, t: &Tree, s: &Tree, budget: usize) -> Verdict {
        if let Some(sep) = self.separate(t, s) {
            return Verdict::Distinct(sep);
        }
        if t == s {
            return Verdict::Equal(Certificate::Path(RewritePath::default()));
        }
        type Parents = HashMap<Tree, Option<(Tree, RewriteStep)>>;
        let mut seen: [Parents; 2] = [HashMap::new(), HashMap::new()];
        let mut queues: [VecDeque<Tree>; 2] = [VecDeque::new(), VecDeque::new()];
        seen[0].insert(t.clone(), None);
        seen[1].insert(s.clone(), None);
        queues[0].push_back(t.clone());
        queues[1].push_back(s.clone());
        let trace = |seen: &Parents, mut x: Tree| -> Vec<RewriteStep> {
            // steps from the root of this side to x
            let mut steps = Vec::new();
            while let Some(Some((prev, st))) = seen.get(&x) {
                steps.push(st.clone());
                x = prev.clone();
            }
            steps.reverse();
            steps
        };
        loop {
            if queues[0].is_empty() {
                return Verdict::Distinct(Separation::Exhausted { class_size: seen[0].len() });
            }
            if queues[1].is_empty() {
                return Verdict::Distinct(Separation::Exhausted { class_size: seen[1].len() });
            }
            if seen[0].len() + seen[1].len() >= budget {
                return Verdict::Unknown(format!("search budget {budget} exhausted"));
            }
            let side = usize::from(queues[1].len() < queues[0].len());
            let x = queues[side].pop_front().expect("nonempty");
            for (st, y) in self.one_step_tree(&x) {
                if seen[side].contains_key(&y) {
                    continue;
                }
                seen[side].insert(y.clone(), Some((x.clone(), st)));
                if seen[1 - side].contains_key(&y) {
                    let (from_t, from_s) = (trace(&seen[0], y.clone()), trace(&seen[1], y));
                    let back = RewritePath { steps: from_s }.reversed();
                    let path = RewritePath { steps: from_t }.then(&back);
                    return Verdict::Equal(Certificate::Path(path));
                }
                queues[side].push_back(y);
            }
        }
    }

    /// The whole congruence class of `t`, if it has at most `limit` members.
    pub fn class_of(&self, t: &Tree, limit: usize) -> Option<Vec<Tree>> {
        let mut seen: HashSet<Tree> = HashSet::new();
        let mut order = vec![t.clone()];
        seen.insert(t.clone());
        let mut i = 0;
        while i < order.len() {
            if order.len() > limit {
                return None;
            }
            let x = order[i].clone();
            for (_, y) in self.one_step_tree(&x) {
                if seen.insert(y.clone()) {
                    order.push(y);
                }
            }
            i += 1;
        }
        Some(order)
    }

    /// Least member of the class of `t` in the structural order.
    pub fn canonical(&self, t: &Tree) -> Option<Tree> {
        self.class_of(t, self.budget).map(|c| c.into_iter().min().expect("class contains t"))
    }

    pub fn equivalent_trees(&self, t: &Tree, s: &Tree) -> Verdict {
        if let Some(sep) = self.separate(t, s) {
            return Verdict::Distinct(sep);
        }
        if t == s {
            return Verdict::Equal(Certificate::Path(RewritePath::default()));
        }
        match &self.strategy {
            Strategy::FreeJoin => Verdict::Distinct(Separation::NormalForm("free trees differ".into())),
            Strategy::NAry { n } => {
                let (a, b) = (higman::tree_to_nary(*n, t), higman::tree_to_nary(*n, s));
                if a == b {
                    Verdict::Equal(Certificate::NormalForm(a.to_string()))
                } else {
                    Verdict::Distinct(Separation::NormalForm(format!("{a} vs {b}")))
                }
            }
            Strategy::ClearyNF { .. } => {
                // right-cancellative, so trees agree iff the fraction [t, s] is trivial
                match cleary::identity_certificate(self, t, s) {
                    Ok(Some(cert)) => Verdict::Equal(cert),
                    Ok(None) => Verdict::Distinct(Separation::NormalForm("semi-normal forms differ".into())),
                    Err(e) => Verdict::Unknown(e.to_string()),
                }
            }
            Strategy::MonochromaticCofinal { .. } | Strategy::BoundedSearch { .. } => {
                self.search(t, s, self.budget)
            }
        }
    }

    pub fn equivalent(&self, f: &Forest, g: &Forest) -> Verdict {
        if f.roots() != g.roots() {
            return Verdict::Distinct(Separation::RootCount(f.roots(), g.roots()));
        }
        if f.leaves() != g.leaves() {
            return Verdict::Distinct(Separation::LeafCount(f.leaves(), g.leaves()));
        }
        let mut steps = Vec::new();
        let mut others = Vec::new();
        for (i, (a, b)) in f.trees().iter().zip(g.trees()).enumerate() {
            match self.equivalent_trees(a, b) {
                Verdict::Equal(Certificate::Path(p)) => {
                    steps.extend(p.steps.into_iter().map(|st| RewriteStep { tree: i, ..st }))
                }
                Verdict::Equal(other) => others.push(format!("{}:{other:?}", i + 1)),
                v => return v,
            }
        }
        if others.is_empty() {
            Verdict::Equal(Certificate::Path(RewritePath { steps }))
        } else {
            Verdict::Equal(Certificate::NormalForm(others.join("; ")))
        }
    }

    /// Grow `t` to a tree of the base colour.
    pub fn to_base(&self, t: &Tree) -> Result<Workspace> {
        match &self.strategy {
            Strategy::ClearyNF { .. } => cleary::to_a(self, t),
            Strategy::MonochromaticCofinal { .. } => {
                let mut ws = Workspace::new(t);
                let mut fuel = 100_000usize;
                while let Some((addr, _)) =
                    ws.current.vertices().into_iter().find(|(_, c)| *c != self.base)
                {
                    self.fix(&mut ws, &addr, self.base, &mut fuel)?;
                }
                Ok(ws)
            }
            _ => Err(Error::Invalid("cofinal growth needs a monochromatic family".into())),
        }
    }

    /// Make the vertex at `u` (growing it if it is a leaf) carry colour `c`.
    fn fix(&self, ws: &mut Workspace, u: &[crate::forest::Dir], c: Colour, fuel: &mut usize) -> Result<()> {
        if *fuel == 0 {
            return Err(Error::NotFound("cofinal growth ran out of fuel".into()));
        }
        *fuel -= 1;
        let mono = self.mono.as_ref().expect("monochromatic data");
        let node = ws.current.at(u).expect("address in tree").clone();
        let Some(d) = node.colour() else {
            let k = ws.current.leaf_index(u).expect("leaf");
            ws.grow(k, &Tree::caret(c));
            return Ok(());
        };
        if d == c {
            return Ok(());
        }
        let Some(&(rel, forward)) = mono.links.get(&(d, c)) else {
            if d != self.base && c != self.base && mono.links.contains_key(&(d, self.base)) {
                self.fix(ws, u, self.base, fuel)?;
                return self.fix(ws, u, c, fuel);
            }
            return Err(Error::NotFound(format!(
                "no relation joins colours {} and {}",
                self.presentation.name(d),
                self.presentation.name(c)
            )));
        };
        let shape = mono.trees[d.0 as usize].clone().expect("colour has a tree");
        for (rel_addr, _) in shape.vertices().into_iter().skip(1) {
            let mut w = u.to_vec();
            w.extend(rel_addr);
            self.fix(ws, &w, d, fuel)?;
        }
        ws.rewrite(&self.presentation, u, rel, forward)
    }

    /// Forests `p, q` with `t ∘ p ≡ s ∘ q`.
    pub fn common_right_multiple(&self, t: &Tree, s: &Tree) -> Result<RightMultiple> {
        if t == s {
            let id = Forest::identity(t.leaves())?;
            return Ok(RightMultiple { p: id.clone(), q: id, certificate: Certificate::Path(RewritePath::default()) });
        }
        if let Ok(j) = free_join(t, s) {
            let p = rooted_subtree_query(t, &j).expect("join contains t");
            let q = rooted_subtree_query(s, &j).expect("join contains s");
            return Ok(RightMultiple { p, q, certificate: Certificate::Path(RewritePath::default()) });
        }
        match &self.strategy {
            Strategy::FreeJoin => Err(Error::ColourClash("trees disagree on a shared vertex".into())),
            Strategy::NAry { n } => higman::common_right_multiple(*n, t, s),
            Strategy::ClearyNF { .. } | Strategy::MonochromaticCofinal { .. } => {
                let wt = self.to_base(t)?;
                let ws = self.to_base(s)?;
                let j = free_join(&wt.current, &ws.current).expect("monochromatic trees join");
                let gt = rooted_subtree_query(&wt.current, &j).expect("join");
                let gs = rooted_subtree_query(&ws.current, &j).expect("join");
                let p = wt.growth.compose(&gt)?;
                let q = ws.growth.compose(&gs)?;
                let path = wt.path.then(&ws.path.reversed());
                Ok(RightMultiple { p, q, certificate: Certificate::Path(path) })
            }
            Strategy::BoundedSearch { .. } => self.searched_multiple(t, s),
        }
    }

    fn searched_multiple(&self, t: &Tree, s: &Tree) -> Result<RightMultiple> {
        // joins of class members first, then growth by complete trees of each colour
        let limit = self.budget / 4;
        let ct = self.class_of(t, limit);
        let cs = self.class_of(s, limit);
        if let (Some(ct), Some(cs)) = (&ct, &cs) {
            for a in ct {
                for b in cs {
                    if let Ok(j) = free_join(a, b) {
                        let pa = rooted_subtree_query(a, &j).expect("join");
                        let pb = rooted_subtree_query(b, &j).expect("join");
                        let Verdict::Equal(Certificate::Path(p1)) = self.search(t, a, self.budget) else {
                            continue;
                        };
                        let Verdict::Equal(Certificate::Path(p2)) = self.search(s, b, self.budget) else {
                            continue;
                        };
                        return Ok(RightMultiple {
                            p: pa,
                            q: pb,
                            certificate: Certificate::Path(p1.then(&p2.reversed())),
                        });
                    }
                }
            }
        }
        for depth in 1..=3 {
            for c in 0..self.presentation.colour_count() {
                let cell = complete_tree(Colour(c as u16), depth);
                let p = Forest::new(vec![cell.clone(); t.leaves()])?;
                let q = Forest::new(vec![cell; s.leaves()])?;
                let (tp, sq) = (t.compose(&p)?, s.compose(&q)?);
                if let Verdict::Equal(Certificate::Path(path)) = self.search(&tp, &sq, self.budget) {
                    return Ok(RightMultiple { p, q, certificate: Certificate::Path(path) });
                }
            }
        }
        Err(Error::NotFound(format!("no common right multiple within budget {}", self.budget)))
    }

    /// Whether `[tπ, s]` is the identity of the fraction group.
    pub fn is_identity_fraction(&self, t: &Tree, perm: &Permutation, s: &Tree) -> Verdict {
        if t.leaves() != s.leaves() {
            return Verdict::Distinct(Separation::LeafCount(t.leaves(), s.leaves()));
        }
        // `π^p = id` exactly when `π = id`, so a nontrivial permutation survives any growth
        if !perm.is_identity() {
            return Verdict::Distinct(Separation::Permutation);
        }
        let d = self.colour_difference(t, s);
        if !self.lattice.is_zero(&d) {
            return Verdict::Distinct(Separation::ColourClass(self.lattice.class(&d)));
        }
        if t == s {
            return Verdict::Equal(Certificate::Path(RewritePath::default()));
        }
        match &self.strategy {
            Strategy::FreeJoin | Strategy::NAry { .. } | Strategy::ClearyNF { .. } => {
                self.equivalent_trees(t, s)
            }
            Strategy::MonochromaticCofinal { .. } | Strategy::BoundedSearch { .. } => {
                // no cancellation available: a direct match, then uniform growth
                let direct = self.search(t, s, self.budget);
                if direct.is_equal() {
                    return direct;
                }
                for depth in 1..=2 {
                    let cell = complete_tree(self.base, depth);
                    let Ok(f) = Forest::new(vec![cell; t.leaves()]) else { break };
                    let (tf, sf) = (t.compose(&f).expect("arity"), s.compose(&f).expect("arity"));
                    if let Verdict::Equal(Certificate::Path(path)) = self.search(&tf, &sf, self.budget) {
                        return Verdict::Equal(Certificate::Grown { growth: f, path });
                    }
                }
                Verdict::Unknown("no growth found that identifies the two trees".into())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CancellationFailure {
    pub t: Tree,
    pub h: Forest,
    pub h2: Forest,
}

/// All trees over `colours` colours with exactly `k` carets, in a fixed order.
pub fn trees_with_carets(colours: usize, k: usize) -> Vec<Tree> {
    let mut memo: Vec<Vec<Tree>> = vec![vec![Tree::leaf()]];
    for m in 1..=k {
        let mut out = Vec::new();
        for c in 0..colours {
            for left in 0..m {
                for l in &memo[left] {
                    for r in &memo[m - 1 - left] {
                        out.push(Tree::node(Colour(c as u16), l.clone(), r.clone()));
                    }
                }
            }
        }
        memo.push(out);
    }
    memo.swap_remove(k)
}

/// All forests on `roots` roots with exactly `k` carets in total.
pub fn forests_with_carets(colours: usize, roots: usize, k: usize) -> Vec<Forest> {
    fn go(colours: usize, roots: usize, k: usize, acc: &mut Vec<Tree>, out: &mut Vec<Forest>) {
        if roots == 0 {
            if k == 0 {
                out.push(Forest::new(acc.clone()).expect("nonempty"));
            }
            return;
        }
        // heavier trees first, so that (Y, I) precedes (I, Y)
        for m in (0..=k).rev() {
            for t in trees_with_carets(colours, m) {
                acc.push(t);
                go(colours, roots - 1, k - m, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(colours, roots, k, &mut Vec::new(), &mut out);
    out
}

/// Exhaustive search for `t ∘ h ≡ t ∘ h'` with `h ≢ h'` and at most `max_carets` carets in
/// `t` and `h` together.
pub fn left_cancellativity_scan(engine: &Engine, max_carets: usize) -> Result<Option<CancellationFailure>> {
    let colours = engine.presentation().colour_count();
    let mut canon: HashMap<Tree, Tree> = HashMap::new();
    let mut canonical = |t: &Tree| -> Result<Tree> {
        if let Some(c) = canon.get(t) {
            return Ok(c.clone());
        }
        let class = engine
            .class_of(t, engine.budget())
            .ok_or_else(|| Error::NotFound("congruence class exceeds the budget".into()))?;
        let min = class.iter().min().expect("nonempty").clone();
        for x in class {
            canon.insert(x, min.clone());
        }
        Ok(min)
    };
    for tc in 0..=max_carets {
        for t in trees_with_carets(colours, tc) {
            for hc in 0..=max_carets - tc {
                let mut seen: HashMap<Tree, (Vec<Tree>, Forest)> = HashMap::new();
                for h in forests_with_carets(colours, t.leaves(), hc) {
                    let th = canonical(&t.compose(&h)?)?;
                    let key: Vec<Tree> = h.trees().iter().map(&mut canonical).collect::<Result<_>>()?;
                    match seen.get(&th) {
                        Some((k0, h0)) if *k0 != key => {
                            return Ok(Some(CancellationFailure { t, h: h0.clone(), h2: h }));
                        }
                        Some(_) => {}
                        None => {
                            seen.insert(th, (key, h));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientCheck {
    Verified,
    Refuted { relation: usize },
    Unknown { relation: usize },
}

/// Replace every vertex of colour `c` by the two-leaf tree `gamma[c]`.
pub fn substitute(t: &Tree, gamma: &[Tree]) -> Result<Tree> {
    match t.split() {
        None => Ok(Tree::leaf()),
        Some((c, l, r)) => {
            let cell = gamma.get(c.0 as usize).ok_or(Error::UnknownColour(format!("#{}", c.0)))?;
            if cell.leaves() != 2 {
                return Err(Error::ArityMismatch { expected: 2, found: cell.leaves() });
            }
            cell.compose(&Forest::new(vec![substitute(l, gamma)?, substitute(r, gamma)?])?)
        }
    }
}

/// Whether `γ` respects every source relation inside the target presentation.
pub fn quotient_morphism_check(src: &SkeinPresentation, tgt: &Engine, gamma: &[Tree]) -> Result<QuotientCheck> {
    if gamma.len() != src.colour_count() {
        return Err(Error::ArityMismatch { expected: src.colour_count(), found: gamma.len() });
    }
    let mut unknown = None;
    for (i, (u, v)) in src.relations().iter().enumerate() {
        match tgt.equivalent_trees(&substitute(u, gamma)?, &substitute(v, gamma)?) {
            Verdict::Equal(_) => {}
            Verdict::Distinct(_) => return Ok(QuotientCheck::Refuted { relation: i }),
            Verdict::Unknown(_) => unknown = unknown.or(Some(i)),
        }
    }
    Ok(match unknown {
        None => QuotientCheck::Verified,
        Some(relation) => QuotientCheck::Unknown { relation },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skein_dsl::parse_presentation;

    fn engine(text: &str) -> Engine {
        Engine::auto(parse_presentation(text).unwrap())
    }

    #[test]
    fn detection() {
        assert_eq!(engine("colors: a\nrel:").strategy(), &Strategy::FreeJoin);
        assert!(matches!(engine("colors: a b\nrel: a1 a2 = b1 b1").strategy(), Strategy::ClearyNF { n: 2, .. }));
        assert_eq!(engine("colors: a b\nrel: a1 b2 = b1 a1").strategy(), &Strategy::NAry { n: 3 });
        assert!(matches!(
            engine("colors: a b\nrel: a1 a1 a3 = b1 b2 b3").strategy(),
            Strategy::MonochromaticCofinal { .. }
        ));
        assert!(matches!(engine("colors: a\nrel: a1 a1 = a1 a2").strategy(), Strategy::BoundedSearch { .. }));
    }

    #[test]
    fn one_step() {
        let e = engine("colors: a b\nrel: a1 a2 = b1 b1");
        let p = e.presentation();
        let t = p.forest("a1 a2").unwrap();
        assert!(e.one_step_rewrites(&t).contains(&p.forest("b1 b1").unwrap()));
        assert!(e.one_step_rewrites(&Forest::identity(2).unwrap()).is_empty());
    }

    #[test]
    fn search_and_replay() {
        let e = engine("colors: a\nrel: a1 a1 = a1 a2");
        let p = e.presentation();
        let (t, s) = (p.tree("a1 a1 a1").unwrap(), p.tree("a1 a2 a3").unwrap());
        match e.search(&t, &s, 1000) {
            Verdict::Equal(Certificate::Path(path)) => {
                let out = path.replay(p, &Forest::from_tree(t)).unwrap();
                assert_eq!(out, Forest::from_tree(s));
            }
            v => panic!("{v:?}"),
        }
        let free = engine("colors: a\nrel:");
        let (x, y) = (free.presentation().tree("a1 a1").unwrap(), free.presentation().tree("a1 a2").unwrap());
        assert!(free.equivalent_trees(&x, &y).is_distinct());
    }

    #[test]
    fn cofinal_multiple() {
        let e = engine("colors: a b\nrel: a1 a1 a3 = b1 b2 b3");
        let p = e.presentation();
        let (t, s) = (p.tree("a1 b2").unwrap(), p.tree("b1 a1").unwrap());
        let m = e.common_right_multiple(&t, &s).unwrap();
        let (tp, sq) = (t.compose(&m.p).unwrap(), s.compose(&m.q).unwrap());
        let Certificate::Path(path) = &m.certificate else { panic!() };
        assert_eq!(path.replay(p, &Forest::from_tree(tp)).unwrap(), Forest::from_tree(sq));
    }

    #[test]
    fn cancellation_counterexample() {
        let e = engine("colors: a\nrel: a1 a1 = a1 a2");
        let w = left_cancellativity_scan(&e, 3).unwrap().unwrap();
        assert_eq!(w.t, Tree::caret(Colour(0)));
        let y = Tree::caret(Colour(0));
        assert_eq!(w.h, Forest::new(vec![y.clone(), Tree::leaf()]).unwrap());
        assert_eq!(w.h2, Forest::new(vec![Tree::leaf(), y]).unwrap());
        assert!(left_cancellativity_scan(&engine("colors: a b\nrel:"), 3).unwrap().is_none());
    }

    #[test]
    fn quotient_maps() {
        let src = parse_presentation("colors: a b\nrel: a1 a2 = b1 b2").unwrap();
        let tgt = engine("colors: x\nrel:");
        let y = Tree::caret(Colour(0));
        assert_eq!(quotient_morphism_check(&src, &tgt, &[y.clone(), y]).unwrap(), QuotientCheck::Verified);
        let same = Engine::auto(src.clone());
        let id = [Tree::caret(Colour(0)), Tree::caret(Colour(1))];
        assert_eq!(quotient_morphism_check(&src, &same, &id).unwrap(), QuotientCheck::Verified);
    }
}
