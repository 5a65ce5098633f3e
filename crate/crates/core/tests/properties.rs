use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fskein::abelian::abelianization_tv;
use fskein::actions::{QOrder, QPoint, QSpace};
use fskein::cli::preset;
use fskein::families::{cleary, higman};
use fskein::forest::{Colour, Forest, Tree};
use fskein::fraction::{random_element, random_tree, random_walk, GroupElement};
use fskein::rewriting::{Engine, Strategy};
use fskein::skein_dsl::{parse_fraction, parse_tree_word};
use fskein::symmetric::{Permutation, SymmetricForest, TypeTag};

fn engine(name: &str) -> Arc<Engine> {
    Arc::new(Engine::auto(preset(name).unwrap()))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn tag(i: u8) -> TypeTag {
    [TypeTag::F, TypeTag::T, TypeTag::V][i as usize % 3]
}

fn perm(images: Vec<usize>) -> Permutation {
    Permutation::new(images).unwrap()
}

fn shuffled(seed: u64, n: usize) -> Permutation {
    use rand::seq::SliceRandom;
    let mut v: Vec<usize> = (1..=n).collect();
    v.shuffle(&mut rng(seed));
    perm(v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tree_words_round_trip(seed in any::<u64>(), carets in 0usize..10) {
        let e = engine("free:3");
        let p = e.presentation();
        let t = random_tree(&mut rng(seed), 3, carets);
        prop_assert_eq!(parse_tree_word(&p.show_tree(&t), p.colours()).unwrap(), t);
    }

    #[test]
    fn fractions_round_trip(seed in any::<u64>(), k in 0usize..5, t in 0u8..3) {
        let e = engine("cleary:2");
        let g = random_element(&mut rng(seed), &e, k, tag(t));
        let (a, pi, b) = parse_fraction(&g.to_string(), e.presentation().colours()).unwrap();
        let back = GroupElement::from_parts(a, pi, b, e.clone()).unwrap();
        prop_assert_eq!(back.to_string(), g.to_string());
    }

    #[test]
    fn group_laws(seed in any::<u64>(), name in prop::sample::select(vec!["cleary:2", "cleary:3", "higman:3", "higman:4", "free:1"]), t in 0u8..3) {
        let e = engine(name);
        let mut r = rng(seed);
        let (g, h, k) = (random_element(&mut r, &e, 3, tag(t)), random_element(&mut r, &e, 3, tag(t)), random_element(&mut r, &e, 3, tag(t)));
        let left = g.multiply(&h).unwrap().multiply(&k).unwrap();
        let right = g.multiply(&h.multiply(&k).unwrap()).unwrap();
        prop_assert!(left.equals(&right).unwrap().is_equal(), "{} vs {}", left, right);
        prop_assert!(g.multiply(&g.inverse()).unwrap().is_identity().is_equal());
        prop_assert!(g.inverse().multiply(&g).unwrap().is_identity().is_equal());
        let id = GroupElement::identity(e.clone());
        prop_assert!(id.multiply(&g).unwrap().equals(&g).unwrap().is_equal());
    }

    #[test]
    fn abelian_class_is_a_homomorphism(seed in any::<u64>(), name in prop::sample::select(vec!["cleary:2", "higman:4", "mono:a=a1a1a3,b=b1b2b3,c=c1c1c1"])) {
        let e = engine(name);
        let mut r = rng(seed);
        let (g, h) = (random_element(&mut r, &e, 3, TypeTag::V), random_element(&mut r, &e, 3, TypeTag::V));
        let gh = g.multiply(&h).unwrap();
        let q = gh.multiply(&h.inverse()).unwrap().multiply(&g.inverse()).unwrap();
        prop_assert!(q.abelian_class().unwrap().iter().all(|x| *x == 0));
        // rewriting never changes the class
        let t = random_tree(&mut r, e.presentation().colour_count(), 4);
        let s = random_walk(&mut r, &e, &t, 8);
        let w = GroupElement::tree_pair(t, s, e.clone()).unwrap().with_tag(TypeTag::V).unwrap();
        prop_assert!(w.abelian_class().unwrap().iter().all(|x| *x == 0));
    }

    #[test]
    fn permutations_form_a_group(seed in any::<u64>(), n in 1usize..7) {
        let (a, b, c) = (shuffled(seed, n), shuffled(seed ^ 1, n), shuffled(seed ^ 2, n));
        let ab_c = a.compose(&b).unwrap().compose(&c).unwrap();
        let a_bc = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        prop_assert_eq!(a.tag() == TypeTag::T || a.tag() == TypeTag::F, a.is_cyclic());
    }

    #[test]
    fn symmetric_forests_compose_associatively(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let layer = |r: &mut ChaCha8Rng, roots: usize, s: u64| {
            let trees: Vec<Tree> = (0..roots).map(|i| random_tree(r, 2, (i + s as usize) % 2)).collect();
            let f = Forest::new(trees).unwrap();
            let pi = shuffled(s, f.leaves());
            SymmetricForest::new(f, pi, TypeTag::V).unwrap()
        };
        let x = layer(&mut r, n, seed);
        let y = layer(&mut r, x.forest.leaves(), seed ^ 5);
        let z = layer(&mut r, y.forest.leaves(), seed ^ 9);
        let l = x.compose(&y).unwrap().compose(&z).unwrap();
        let rr = x.compose(&y.compose(&z).unwrap()).unwrap();
        prop_assert_eq!(l, rr);
    }

    #[test]
    fn nary_equality_is_a_congruence(n in 2usize..6, j in 1usize..5, dk in 1usize..4, pre in prop::collection::vec(1usize..9, 0..4), post in prop::collection::vec(1usize..9, 0..4)) {
        let k = j + dk;
        let wrap = |mid: Vec<usize>| [pre.clone(), mid, post.clone()].concat();
        prop_assert!(higman::nary_equal(n, &wrap(vec![k, j]), &wrap(vec![j, k + n - 1])).unwrap());
    }

    #[test]
    fn phi_and_psi_are_inverse(n in 2usize..7, word in prop::collection::vec(1usize..30, 0..8)) {
        let gens = higman::psi(n, &word).unwrap();
        prop_assert_eq!(higman::phi(n, &gens).unwrap(), word);
    }

    #[test]
    fn goodify_certificates_replay(seed in any::<u64>(), n in 2usize..4, carets in 0usize..8) {
        let e = engine(&format!("cleary:{n}"));
        let p = e.presentation();
        let t = random_tree(&mut rng(seed), 2, carets);
        let ws = cleary::goodify_workspace(&e, &t).unwrap();
        prop_assert!(cleary::is_good_tree(&ws.current, n));
        let replayed = ws.path.replay(p, &Forest::from_tree(ws.grown_original())).unwrap();
        prop_assert_eq!(replayed.as_tree(), Some(&ws.current));
        prop_assert!(ws.growth.trees().iter().all(|f| f.is_monochromatic(cleary::A) || f.is_leaf()));
    }

    #[test]
    fn cleary_decision_matches_search(seed in any::<u64>(), carets in 1usize..7) {
        let e = engine("cleary:2");
        let search = Engine::new(e.presentation().clone(), Strategy::BoundedSearch { budget: 200_000 }).unwrap();
        let mut r = rng(seed);
        let t = random_tree(&mut r, 2, carets);
        let s = random_tree(&mut r, 2, carets);
        let v = search.search(&t, &s, 200_000);
        prop_assume!(!v.is_unknown());
        prop_assert_eq!(cleary::is_identity_fz(&e, &t, &s).unwrap(), v.is_equal());
    }

    #[test]
    fn cgp_normal_forms(seed in any::<u64>(), n in 3usize..6, carets in 0usize..6) {
        let e = engine(&format!("higman:{n}"));
        let p = e.presentation().clone();
        let k = p.colour_count();
        let mut r = rng(seed);
        let (t, s) = (random_tree(&mut r, k, carets), random_tree(&mut r, k, carets));
        let (wt, ws) = higman::cgp_normalize(&p, &t, &s).unwrap();
        let b = Colour(k as u16 - 1);
        for w in [&wt, &ws] {
            prop_assert!(w.current.last_branch().iter().all(|c| *c == b));
            let replayed = w.path.replay(&p, &Forest::from_tree(w.grown_original())).unwrap();
            prop_assert_eq!(replayed.as_tree(), Some(&w.current));
        }
        let g = GroupElement::tree_pair(t, s, e.clone()).unwrap();
        let h = GroupElement::tree_pair(wt.current.clone(), ws.current.clone(), e.clone()).unwrap();
        prop_assert!(g.equals(&h).unwrap().is_equal());
    }

    #[test]
    fn q_order_is_total_and_antisymmetric(seed in any::<u64>(), name in prop::sample::select(vec!["free:1", "cleary:2", "higman:3"])) {
        use fskein::actions::random_point;
        let e = engine(name);
        let q = QSpace::new(e.clone());
        let mut r = rng(seed);
        let k = e.presentation().colour_count();
        let (x, y): (QPoint, QPoint) = (random_point(&mut r, k, 4), random_point(&mut r, k, 4));
        let (a, b) = (q.compare(&x, &y), q.compare(&y, &x));
        let flipped = match a {
            QOrder::Less => QOrder::Greater,
            QOrder::Greater => QOrder::Less,
            o => o,
        };
        prop_assert_ne!(a, QOrder::Unknown);
        prop_assert_eq!(b, flipped);
        prop_assert_eq!(a == QOrder::Equal, q.equal(&x, &y).is_equal());
    }
}

#[test]
fn abelianization_does_not_depend_on_relation_order() {
    let p = preset("mono:a=a1a1a3,b=b1b2b3,c=c1c1c1").unwrap();
    let mut rels = p.relations().to_vec();
    rels.reverse();
    let q = fskein::skein_dsl::SkeinPresentation::new(p.colours().to_vec(), rels, None).unwrap();
    assert_eq!(abelianization_tv(&p), abelianization_tv(&q));
}
