//! Elements `[tπ, s]` of the fraction groups `G ⊂ G^T ⊂ G^V` and their arithmetic.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::abelian::{relation_matrix, Cokernel};
use crate::error::{Error, Result};
use crate::forest::{free_join, right_vine, rooted_subtree_query, Colour, Dir, Forest, Tree};
use crate::rewriting::{Engine, Verdict};
use crate::skein_dsl::serialize_fraction;
use crate::symmetric::{act_perm_on_forest, Permutation, TypeTag};

#[derive(Clone)]
pub struct GroupElement {
    t: Tree,
    perm: Permutation,
    s: Tree,
    tag: TypeTag,
    engine: Arc<Engine>,
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let colours = self.engine.presentation().colours();
        write!(f, "{}", serialize_fraction(&self.t, &self.perm, &self.s, colours))
    }
}

/// Representatives are compared structurally; use [`GroupElement::equals`] for group equality.
impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.t == other.t && self.perm == other.perm && self.s == other.s && self.tag == other.tag
    }
}

/// Remove caret pairs that sit directly above leaves on both sides and are matched by `π`.
fn reduce(mut t: Tree, mut perm: Permutation, mut s: Tree) -> (Tree, Permutation, Tree) {
    'outer: loop {
        let t_leaves = t.leaf_addresses();
        for (addr, c) in s.vertices() {
            let node = s.at(&addr).expect("vertex");
            if !(node.left().is_some_and(Tree::is_leaf) && node.right().is_some_and(Tree::is_leaf)) {
                continue;
            }
            let k = s.leaves_before(&addr) + 1;
            let m = perm.apply(k);
            if perm.apply(k + 1) != m + 1 {
                continue;
            }
            let la = &t_leaves[m - 1];
            if la.last() != Some(&Dir::L) {
                continue;
            }
            let parent = &la[..la.len() - 1];
            let pn = t.at(parent).expect("parent");
            if pn.colour() != Some(c) || !pn.right().is_some_and(Tree::is_leaf) {
                continue;
            }
            let images = (1..perm.degree())
                .map(|j| {
                    let img = perm.apply(if j <= k { j } else { j + 1 });
                    if img > m {
                        img - 1
                    } else {
                        img
                    }
                })
                .collect();
            perm = Permutation::new(images).expect("collapsed permutation");
            t = t.replace(parent, Tree::leaf());
            s = s.replace(&addr, Tree::leaf());
            continue 'outer;
        }
        return (t, perm, s);
    }
}

impl GroupElement {
    /// `[tπ, s]`, reduced.
    pub fn new(t: Tree, perm: Permutation, s: Tree, engine: Arc<Engine>, tag: TypeTag) -> Result<GroupElement> {
        if t.leaves() != s.leaves() {
            return Err(Error::LeafCountMismatch { lhs: t.leaves(), rhs: s.leaves() });
        }
        if perm.degree() != t.leaves() {
            return Err(Error::DegreeMismatch(perm.degree(), t.leaves()));
        }
        if !tag.admits(&perm) {
            return Err(Error::TagViolation(format!("{perm:?} is not allowed in {tag:?}")));
        }
        let k = engine.presentation().colour_count();
        if let Some((_, c)) = t.vertices().into_iter().chain(s.vertices()).find(|(_, c)| c.0 as usize >= k) {
            return Err(Error::UnknownColour(format!("#{}", c.0)));
        }
        let (t, perm, s) = reduce(t, perm, s);
        Ok(GroupElement { t, perm, s, tag, engine })
    }

    /// `[t, s]` in `G`.
    pub fn tree_pair(t: Tree, s: Tree, engine: Arc<Engine>) -> Result<GroupElement> {
        let n = t.leaves();
        GroupElement::new(t, Permutation::identity(n), s, engine, TypeTag::F)
    }

    /// The tag is the least one admitting `perm`.
    pub fn from_parts(t: Tree, perm: Permutation, s: Tree, engine: Arc<Engine>) -> Result<GroupElement> {
        let tag = perm.tag();
        GroupElement::new(t, perm, s, engine, tag)
    }

    pub fn identity(engine: Arc<Engine>) -> GroupElement {
        GroupElement::tree_pair(Tree::leaf(), Tree::leaf(), engine).expect("trivial element")
    }

    pub fn t(&self) -> &Tree {
        &self.t
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn s(&self) -> &Tree {
        &self.s
    }

    pub fn tag(&self) -> TypeTag {
        self.tag
    }

    pub fn engine(&self) -> &Arc<Engine> {
        &self.engine
    }

    fn same_engine(&self, other: &GroupElement) -> Result<()> {
        if Arc::ptr_eq(&self.engine, &other.engine)
            || self.engine.presentation().relations() == other.engine.presentation().relations()
                && self.engine.presentation().colours() == other.engine.presentation().colours()
        {
            Ok(())
        } else {
            Err(Error::Invalid("elements live in different categories".into()))
        }
    }

    pub fn multiply(&self, h: &GroupElement) -> Result<GroupElement> {
        self.same_engine(h)?;
        let m = self.engine.common_right_multiple(&self.s, &h.t)?;
        let (p_pi, pi_p) = act_perm_on_forest(&self.perm, &m.p)?;
        let rho_inv = h.perm.inverse();
        let (q_r, r_q) = act_perm_on_forest(&rho_inv, &m.q)?;
        let t = self.t.compose(&p_pi)?;
        let s = h.s.compose(&q_r)?;
        let perm = pi_p.compose(&r_q.inverse())?;
        GroupElement::new(t, perm, s, self.engine.clone(), self.tag.max(h.tag))
    }

    pub fn inverse(&self) -> GroupElement {
        let (t, perm, s) = reduce(self.s.clone(), self.perm.inverse(), self.t.clone());
        GroupElement { t, perm, s, tag: self.tag, engine: self.engine.clone() }
    }

    pub fn pow(&self, k: i64) -> Result<GroupElement> {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = GroupElement { tag: self.tag, ..GroupElement::identity(self.engine.clone()) };
        for _ in 0..k.unsigned_abs() {
            acc = acc.multiply(&base)?;
        }
        Ok(acc)
    }

    /// `[g, h] = g h g⁻¹ h⁻¹`.
    pub fn commutator(&self, h: &GroupElement) -> Result<GroupElement> {
        self.multiply(h)?.multiply(&self.inverse())?.multiply(&h.inverse())
    }

    pub fn is_identity(&self) -> Verdict {
        self.engine.is_identity_fraction(&self.t, &self.perm, &self.s)
    }

    pub fn equals(&self, other: &GroupElement) -> Result<Verdict> {
        Ok(self.multiply(&other.inverse())?.is_identity())
    }

    /// `χ(t) − χ(s)` in `Z^S / ⟨relations, a = 0⟩`.
    pub fn abelian_class(&self) -> Result<Vec<i128>> {
        if self.tag == TypeTag::F {
            return Err(Error::TagViolation("the abelian class is only defined for T and V elements".into()));
        }
        let c = Cokernel::new(&relation_matrix(self.engine.presentation(), self.engine.base())?);
        Ok(c.class(&self.engine.colour_difference(&self.t, &self.s)))
    }

    pub fn with_tag(mut self, tag: TypeTag) -> Result<GroupElement> {
        if !tag.admits(&self.perm) {
            return Err(Error::TagViolation(format!("{:?} is not allowed in {tag:?}", self.perm)));
        }
        self.tag = tag;
        Ok(self)
    }
}

/// Standard generators, relative to the engine's base colour `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorName {
    /// `x_j = [ρ_j ∘ x_{j,j+1}, ρ_{j+1}]`
    X { colour: Colour, j: usize },
    /// `x̂_j = [ρ_{j−1} ∘ x_{j,j}, ρ_j]`
    XHat { colour: Colour, j: usize },
    /// `τ̂_j = [ρ_{j−1} τ_j, ρ_{j−1}]`
    TauHat(usize),
    /// `σ̂ = [ρ_2 σ_3, ρ_2]`
    SigmaHat,
}

pub fn rho(engine: &Engine, j: usize) -> Tree {
    right_vine(engine.base(), j)
}

pub fn generator(name: &GeneratorName, engine: &Arc<Engine>) -> Result<GroupElement> {
    let e = engine.clone();
    let k = engine.presentation().colour_count();
    let check = |c: &Colour| {
        if c.0 as usize >= k {
            Err(Error::UnknownColour(format!("#{}", c.0)))
        } else {
            Ok(())
        }
    };
    match name {
        GeneratorName::X { colour, j } => {
            check(colour)?;
            if *j == 0 {
                return Err(Error::IndexOutOfRange { index: 0, bound: usize::MAX });
            }
            let t = rho(engine, *j).compose(&Forest::elementary(*colour, *j, j + 1)?)?;
            GroupElement::tree_pair(t, rho(engine, j + 1), e)
        }
        GeneratorName::XHat { colour, j } => {
            check(colour)?;
            if *j == 0 {
                return Err(Error::IndexOutOfRange { index: 0, bound: usize::MAX });
            }
            let t = rho(engine, j - 1).compose(&Forest::elementary(*colour, *j, *j)?)?;
            GroupElement::tree_pair(t, rho(engine, *j), e)
        }
        GeneratorName::TauHat(j) => {
            if *j < 2 {
                return Err(Error::IndexOutOfRange { index: *j, bound: 2 });
            }
            let images = std::iter::once(*j).chain(1..*j).collect();
            let r = rho(engine, j - 1);
            GroupElement::new(r.clone(), Permutation::new(images)?, r, e, TypeTag::T)
        }
        GeneratorName::SigmaHat => {
            let r = rho(engine, 2);
            GroupElement::new(r.clone(), Permutation::new(vec![2, 1, 3])?, r, e, TypeTag::V)
        }
    }
}

/// A word over generators: factors with integer exponents, or commutators of words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordFactor {
    Gen(GeneratorName, i64),
    Commutator(Vec<WordFactor>, Vec<WordFactor>, i64),
}

/// Parse `a2 hat.b3 tau4^-1 sigma [sigma^-1, tau4^-1]`; `e` is the empty word.
pub fn parse_word(text: &str, engine: &Engine) -> Result<Vec<WordFactor>> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0;
    let w = parse_factors(&chars, &mut pos, engine, false)?;
    if pos != chars.len() {
        return Err(word_err(pos, "unexpected character"));
    }
    Ok(w)
}

fn word_err(pos: usize, msg: &str) -> Error {
    Error::Parse { line: 1, col: pos + 1, msg: msg.into() }
}

fn parse_factors(c: &[char], pos: &mut usize, engine: &Engine, nested: bool) -> Result<Vec<WordFactor>> {
    let mut out = Vec::new();
    loop {
        while *pos < c.len() && c[*pos].is_whitespace() {
            *pos += 1;
        }
        if *pos >= c.len() || (nested && (c[*pos] == ',' || c[*pos] == ']')) {
            return Ok(out);
        }
        if c[*pos] == '[' {
            *pos += 1;
            let g = parse_factors(c, pos, engine, true)?;
            if c.get(*pos) != Some(&',') {
                return Err(word_err(*pos, "expected ','"));
            }
            *pos += 1;
            let h = parse_factors(c, pos, engine, true)?;
            if c.get(*pos) != Some(&']') {
                return Err(word_err(*pos, "expected ']'"));
            }
            *pos += 1;
            let e = parse_exponent(c, pos)?;
            out.push(WordFactor::Commutator(g, h, e));
            continue;
        }
        let start = *pos;
        while *pos < c.len() && (c[*pos].is_alphanumeric() || c[*pos] == '_' || c[*pos] == '.') {
            *pos += 1;
        }
        let tok: String = c[start..*pos].iter().collect();
        if tok.is_empty() {
            return Err(word_err(start, "expected a generator"));
        }
        let e = parse_exponent(c, pos)?;
        if tok == "e" && engine.presentation().colour("e").is_err() {
            continue;
        }
        let g = parse_generator(&tok, engine).map_err(|m| word_err(start, &m))?;
        out.push(WordFactor::Gen(g, e));
    }
}

fn parse_exponent(c: &[char], pos: &mut usize) -> Result<i64> {
    if c.get(*pos) != Some(&'^') {
        return Ok(1);
    }
    *pos += 1;
    let start = *pos;
    if c.get(*pos) == Some(&'-') {
        *pos += 1;
    }
    while *pos < c.len() && c[*pos].is_ascii_digit() {
        *pos += 1;
    }
    let s: String = c[start..*pos].iter().collect();
    s.parse().map_err(|_| word_err(start, "bad exponent"))
}

pub fn parse_generator(tok: &str, engine: &Engine) -> std::result::Result<GeneratorName, String> {
    if tok == "sigma" {
        return Ok(GeneratorName::SigmaHat);
    }
    if let Some(d) = tok.strip_prefix("tau") {
        if !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()) {
            return Ok(GeneratorName::TauHat(d.parse().map_err(|_| "bad index")?));
        }
    }
    let (hat, body) = match tok.strip_prefix("hat.") {
        Some(b) => (true, b),
        None => (false, tok),
    };
    let split = body.find(|c: char| c.is_ascii_digit()).ok_or("generator needs an index")?;
    let (name, idx) = body.split_at(split);
    if !idx.chars().all(|c| c.is_ascii_digit()) {
        return Err(format!("bad generator {tok:?}"));
    }
    let colour = engine.presentation().colour(name).map_err(|e| e.to_string())?;
    let j: usize = idx.parse().map_err(|_| "bad index")?;
    Ok(if hat { GeneratorName::XHat { colour, j } } else { GeneratorName::X { colour, j } })
}

pub fn evaluate_word(word: &[WordFactor], engine: &Arc<Engine>) -> Result<GroupElement> {
    let mut acc = GroupElement::identity(engine.clone());
    for f in word {
        let g = match f {
            WordFactor::Gen(name, e) => generator(name, engine)?.pow(*e)?,
            WordFactor::Commutator(g, h, e) => {
                let (g, h) = (evaluate_word(g, engine)?, evaluate_word(h, engine)?);
                g.commutator(&h)?.pow(*e)?
            }
        };
        acc = acc.multiply(&g)?;
    }
    Ok(acc)
}

/// Decide `lhs = rhs` through `lhs · rhs⁻¹`.
pub fn check_relation(lhs: &str, rhs: &str, engine: &Arc<Engine>) -> Result<Verdict> {
    let l = evaluate_word(&parse_word(lhs, engine)?, engine)?;
    let r = evaluate_word(&parse_word(rhs, engine)?, engine)?;
    l.equals(&r)
}

/// Colour every vertex of a one-colour element with `a`.
pub fn vertex_colour_embedding(m: &GroupElement, a: Colour, engine: &Arc<Engine>) -> Result<GroupElement> {
    let paint = |t: &Tree| t.monochromatize(a);
    GroupElement::new(paint(&m.t), m.perm.clone(), paint(&m.s), engine.clone(), m.tag)
}

/// `η_{(z,j)}([t, s]) = [(z,j)•t, (z,j)•s]`.
pub fn eta_embedding(g: &GroupElement, z: &Tree, j: usize) -> Result<GroupElement> {
    if g.tag != TypeTag::F {
        return Err(Error::TagViolation("η is defined on order-preserving elements".into()));
    }
    if j == 0 || j > z.leaves() {
        return Err(Error::IndexOutOfRange { index: j, bound: z.leaves() });
    }
    GroupElement::tree_pair(z.graft(j, &g.t)?, z.graft(j, &g.s)?, g.engine.clone())
}

/// `g = t ∘ (h_1 ⊗ ⋯ ⊗ h_n) ∘ t⁻¹`.
pub fn split_under_tree(g: &GroupElement, t: &Tree) -> Result<Vec<GroupElement>> {
    if g.tag != TypeTag::F {
        return Err(Error::TagViolation("splitting needs an element of G".into()));
    }
    let not_rep = || Error::NotRepresentable(format!("element is not of the form [t∘p, t∘q] for t = {t:?}"));
    let (mut big_t, mut big_s) = (g.t.clone(), g.s.clone());
    if rooted_subtree_query(t, &big_t).is_none() || rooted_subtree_query(t, &big_s).is_none() {
        // grow both sides by the same forest until `t` sits on top of each
        for _ in 0..2 {
            let j = free_join(&big_t, t).map_err(|_| not_rep())?;
            let f = rooted_subtree_query(&big_t, &j).expect("join");
            big_t = j;
            big_s = big_s.compose(&f)?;
            let j = free_join(&big_s, t).map_err(|_| not_rep())?;
            let f = rooted_subtree_query(&big_s, &j).expect("join");
            big_s = j;
            big_t = big_t.compose(&f)?;
        }
    }
    let p = rooted_subtree_query(t, &big_t).ok_or_else(not_rep)?;
    let q = rooted_subtree_query(t, &big_s).ok_or_else(not_rep)?;
    p.trees()
        .iter()
        .zip(q.trees())
        .map(|(a, b)| {
            if a.leaves() != b.leaves() {
                return Err(Error::NotRepresentable(format!(
                    "blocks have {} and {} leaves",
                    a.leaves(),
                    b.leaves()
                )));
            }
            GroupElement::tree_pair(a.clone(), b.clone(), g.engine.clone())
        })
        .collect()
}

/// A uniformly shaped random tree with `carets` carets.
pub fn random_tree<R: Rng>(rng: &mut R, colours: usize, carets: usize) -> Tree {
    let mut t = Tree::leaf();
    for _ in 0..carets {
        let k = rng.gen_range(1..=t.leaves());
        let c = Colour(rng.gen_range(0..colours) as u16);
        t = t.graft(k, &Tree::caret(c)).expect("leaf in range");
    }
    t
}

/// Random rewrites of `t`; the result is congruent to `t`.
pub fn random_walk<R: Rng>(rng: &mut R, engine: &Engine, t: &Tree, steps: usize) -> Tree {
    let mut t = t.clone();
    for _ in 0..steps {
        let next = engine.one_step_tree(&t);
        if next.is_empty() {
            break;
        }
        t = next[rng.gen_range(0..next.len())].1.clone();
    }
    t
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize, tag: TypeTag) -> Permutation {
    match tag {
        TypeTag::F => Permutation::identity(n),
        TypeTag::T => Permutation::rotation(n, rng.gen_range(0..n)),
        TypeTag::V => {
            let mut images: Vec<usize> = (1..=n).collect();
            for i in (1..n).rev() {
                images.swap(i, rng.gen_range(0..=i));
            }
            Permutation::new(images).expect("shuffle")
        }
    }
}

pub fn random_element<R: Rng>(rng: &mut R, engine: &Arc<Engine>, max_carets: usize, tag: TypeTag) -> GroupElement {
    let k = engine.presentation().colour_count();
    let n = rng.gen_range(0..=max_carets);
    let t = random_tree(rng, k, n);
    let s = random_tree(rng, k, n);
    let perm = random_permutation(rng, n + 1, tag);
    GroupElement::new(t, perm, s, engine.clone(), tag).expect("consistent sample")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cleary, higman};
    use crate::skein_dsl::parse_presentation;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn engine(text: &str) -> Arc<Engine> {
        Arc::new(Engine::auto(parse_presentation(text).unwrap()))
    }

    #[test]
    fn reduction_strips_growth() {
        let e = engine("colors: a b\nrel:");
        let p = e.presentation().clone();
        let (t, s) = (p.tree("a1 b1").unwrap(), p.tree("b1 a2").unwrap());
        let f = p.forest("a[2,3] b[1,4]").unwrap();
        let g = GroupElement::tree_pair(t.compose(&f).unwrap(), s.compose(&f).unwrap(), e.clone()).unwrap();
        assert_eq!((g.t(), g.s()), (&t, &s));
        let id = GroupElement::tree_pair(t.clone(), t.clone(), e).unwrap();
        assert!(id.t().is_leaf());
    }

    #[test]
    fn reduction_follows_permutation() {
        let e = engine("colors: a\nrel:");
        let p = e.presentation().clone();
        // [Y(I⊗Y) (1 3 2)… ] with the pair at t-leaves 2,3 matched to s-leaves 1,2
        let t = p.tree("a1 a2").unwrap();
        let s = p.tree("a1 a1").unwrap();
        let g = GroupElement::new(t, Permutation::new(vec![2, 3, 1]).unwrap(), s, e, TypeTag::T).unwrap();
        assert_eq!(g.t(), &p.tree("a1").unwrap());
        assert_eq!(g.perm().images(), &[2, 1]);
    }

    #[test]
    fn inverses_and_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let free = engine("colors: a\nrel:");
        let cl = Arc::new(Engine::auto(cleary::cleary_category(&Tree::caret(Colour(0)), 2).unwrap()));
        for i in 0..40 {
            let e = if i % 2 == 0 { &free } else { &cl };
            let g = random_element(&mut rng, e, 4, TypeTag::V);
            let h = random_element(&mut rng, e, 4, TypeTag::V);
            assert!(g.multiply(&g.inverse()).unwrap().is_identity().is_equal());
            let gh = g.multiply(&h).unwrap();
            assert!(gh.multiply(&h.inverse()).unwrap().equals(&g).unwrap().is_equal());
        }
    }

    #[test]
    fn generators() {
        let e = Arc::new(Engine::auto(cleary::cleary_category(&Tree::caret(Colour(0)), 2).unwrap()));
        let ah = generator(&GeneratorName::XHat { colour: Colour(0), j: 1 }, &e).unwrap();
        assert!(ah.is_identity().is_equal());
        let b1 = generator(&GeneratorName::X { colour: Colour(1), j: 1 }, &e).unwrap();
        assert_eq!(b1.to_string(), "frac(a1 b1 ; (1 2 3) ; a1 a2)");
        assert_eq!(b1.clone().with_tag(TypeTag::T).unwrap().abelian_class().unwrap(), vec![1]);
        let tau2 = generator(&GeneratorName::TauHat(2), &e).unwrap();
        assert_eq!(tau2.perm().images(), &[2, 1]);
        assert!(generator(&GeneratorName::TauHat(1), &e).is_err());
    }

    #[test]
    fn relations() {
        let free = engine("colors: a b\nrel:");
        assert!(check_relation("a3 b1", "b1 a4", &free).unwrap().is_equal());
        assert!(check_relation("hat.a3 b2", "b2 hat.a4", &free).unwrap().is_equal());
        assert!(check_relation("a3 b1", "b1 a3", &free).unwrap().is_distinct());
        let h3 = Arc::new(Engine::auto(higman::higman_presentation(3).unwrap()));
        assert!(check_relation("tau3", "a2 tau4", &h3).unwrap().is_equal());
        assert!(check_relation("tau3 b2", "b1 tau4", &h3).unwrap().is_equal());
        let c = Arc::new(Engine::auto(cleary::cleary_category(&Tree::caret(Colour(0)), 2).unwrap()));
        assert!(check_relation("sigma a1", "a2 [sigma^-1, tau4^-1]", &c).unwrap().is_equal());
        assert!(check_relation("tau2 a1", "tau3^2", &c).unwrap().is_equal());
    }

    #[test]
    fn embeddings() {
        let one = engine("colors: x\nrel:");
        let two = engine("colors: a b\nrel:");
        let g = generator(&GeneratorName::X { colour: Colour(0), j: 1 }, &one).unwrap();
        let img = vertex_colour_embedding(&g, Colour(1), &two).unwrap();
        assert!(img.t().is_monochromatic(Colour(1)));
        let z = two.presentation().tree("a1 b1").unwrap();
        let k = GroupElement::tree_pair(
            two.presentation().tree("a1 a1").unwrap(),
            two.presentation().tree("a1 a2").unwrap(),
            two.clone(),
        )
        .unwrap();
        let eta = eta_embedding(&k, &z, 2).unwrap();
        let parts = split_under_tree(&eta, &z).unwrap();
        assert_eq!(parts.len(), 3);
        assert!(parts[0].is_identity().is_equal() && parts[2].is_identity().is_equal());
        assert!(parts[1].equals(&k).unwrap().is_equal());
        let bad = GroupElement::tree_pair(
            two.presentation().tree("a1 a1").unwrap(),
            two.presentation().tree("a1 a2").unwrap(),
            two.clone(),
        )
        .unwrap();
        assert!(split_under_tree(&bad, &Tree::caret(Colour(0))).is_err());
    }
}
