use std::collections::BTreeMap;
use std::sync::Arc;

use hopfpath::hopf_quiver::{Path, QuiverKind};
use hopfpath::linear::Combination;
use hopfpath::presentations::confluence::depth_budget;
use hopfpath::presentations::{
    check_confluence, classify_iso, multiply_alg, normal_form, path_to_pbw, pbw_monomials, pbw_to_path,
    presentation_of, simple_pointed_catalog, AlgElement, Family, Gen, HopfFamilyDescriptor as D, Monomial,
    RewriteSystem,
};
use hopfpath::scalars::{q_factorial, root_of_unity, CyclotomicContext, Scalar};
use hopfpath::Error;
use proptest::prelude::*;

fn ctx() -> Arc<CyclotomicContext> {
    CyclotomicContext::new(12).unwrap()
}

fn m(k: u64, j: u64, i: i64) -> Monomial {
    Monomial::new(k, j, i)
}

fn alg(c: &Arc<CyclotomicContext>, terms: &[(Monomial, Scalar)]) -> AlgElement {
    Combination::from_terms(c, terms.iter().cloned())
}

fn rule_set(rs: &RewriteSystem) -> BTreeMap<Vec<Gen>, Vec<(Vec<Gen>, Scalar)>> {
    rs.rules().iter().map(|r| (r.lhs.clone(), r.rhs.clone())).collect()
}

/// Rewrites at the rightmost applicable position until nothing applies.
fn reduce_rightmost(rs: &RewriteSystem, gens: &[Gen], coeff: &Scalar, out: &mut BTreeMap<Vec<Gen>, Scalar>) {
    for pos in (0..gens.len()).rev() {
        for (idx, rule) in rs.rules().iter().enumerate() {
            if gens[pos..].starts_with(&rule.lhs) {
                for (w, c) in rs.apply(gens, pos, idx).iter() {
                    reduce_rightmost(rs, w.gens(), &(coeff * c), out);
                }
                return;
            }
        }
    }
    let e = out.entry(gens.to_vec()).or_insert_with(|| rs.context().zero());
    *e += coeff;
}

fn rightmost_normal_form(rs: &RewriteSystem, gens: &[Gen]) -> AlgElement {
    let mut words = BTreeMap::new();
    reduce_rightmost(rs, gens, &rs.context().one(), &mut words);
    let mut out = Combination::zero(rs.context());
    for (w, c) in words {
        out.add_term(Monomial::from_gens(&w).expect("irreducible words are PBW"), &c);
    }
    out
}

fn sample_descriptors(c: &Arc<CyclotomicContext>) -> Vec<D> {
    let w = root_of_unity(c, 3).unwrap();
    let i = root_of_unity(c, 4).unwrap();
    let m1 = c.integer(-1);
    let (zero, one, two) = (c.zero(), c.one(), c.integer(2));
    vec![
        D::cycle_graded(3, &w).unwrap(),
        D::cycle_graded(4, &c.one()).unwrap(),
        D::cycle_graded(6, &m1).unwrap(),
        D::cycle_deform(3, &w, &one).unwrap(),
        D::cycle_deform(4, &i, &two).unwrap(),
        D::cycle_half(4, &m1, &one).unwrap(),
        D::cycle_half(6, &w, &two).unwrap(),
        D::chain_graded(&two).unwrap(),
        D::chain_graded(&w).unwrap(),
        D::chain_q1(c, &one).unwrap(),
        D::chain_root(&m1, &one).unwrap(),
        D::chain_root(&w, &two).unwrap(),
        D::type_one_cycle(4, &m1, &one).unwrap(),
        D::type_one_cycle(3, &w, &zero).unwrap(),
        D::type_one_chain(&i, &one).unwrap(),
    ]
}

#[test]
fn taft_rules() {
    let c = ctx();
    let rs = presentation_of(&D::cycle_graded(2, &c.integer(-1)).unwrap());
    let rules = rule_set(&rs);
    use Gen::{A, H, P};
    assert_eq!(rules[&vec![H, H]], vec![(vec![], c.one())]);
    assert_eq!(rules[&vec![A, A]], vec![]);
    assert_eq!(rules[&vec![H, A]], vec![(vec![A, H], c.integer(-1))]);
    assert_eq!(rules[&vec![H, P]], vec![(vec![P, H], c.one())]);
    assert_eq!(rules[&vec![A, P]], vec![(vec![P, A], c.one())]);
}

#[test]
fn deformed_cycle_rules() {
    let c = ctx();
    let w = root_of_unity(&c, 3).unwrap();
    let rs = presentation_of(&D::cycle_deform(3, &w, &c.one()).unwrap());
    use Gen::{A, P};
    assert_eq!(rule_set(&rs)[&vec![A, P]], vec![(vec![P, A], c.one()), (vec![A], c.one())]);
}

#[test]
fn type_one_rules() {
    let c = ctx();
    use Gen::{A, H};
    let rs = presentation_of(&D::type_one_cycle(4, &c.integer(-1), &c.one()).unwrap());
    let rules = rule_set(&rs);
    assert_eq!(rules.len(), 3);
    assert_eq!(rules[&vec![H; 4]], vec![(vec![], c.one())]);
    assert_eq!(rules[&vec![A, A]], vec![(vec![], c.one()), (vec![H, H], c.integer(-1))]);
    assert_eq!(rules[&vec![H, A]], vec![(vec![A, H], c.integer(-1))]);
    assert_eq!(rs.generators(), &[A, H]);
}

#[test]
fn chain_rules_use_inverse_generator() {
    let c = ctx();
    use Gen::{HInv, A, H};
    let w = root_of_unity(&c, 3).unwrap();
    let rs = presentation_of(&D::chain_graded(&w).unwrap());
    let rules = rule_set(&rs);
    assert_eq!(rules[&vec![H, HInv]], vec![(vec![], c.one())]);
    assert_eq!(rules[&vec![HInv, H]], vec![(vec![], c.one())]);
    assert_eq!(rules[&vec![HInv, A]], vec![(vec![A, HInv], w.pow(2))]);
    let q1 = rule_set(&presentation_of(&D::chain_q1(&c, &c.one()).unwrap()));
    assert_eq!(
        q1[&vec![H, A]],
        vec![(vec![A, H], c.one()), (vec![H], c.one()), (vec![H, H], c.integer(-1))]
    );
}

#[test]
fn normal_form_examples() {
    let c = ctx();
    let i = root_of_unity(&c, 4).unwrap();
    for lam in [c.zero(), c.one(), c.integer(5)] {
        let d = D::cycle_deform(4, &i, &lam).unwrap();
        let nf = normal_form(&d, "a p", &c.one()).unwrap();
        assert_eq!(nf, alg(&c, &[(m(1, 1, 0), c.one()), (m(0, 1, 0), lam.clone())]));
        assert_eq!(normal_form(&d, "h^4", &c.one()).unwrap(), alg(&c, &[(Monomial::ONE, c.one())]));
    }
    let half = D::cycle_half(4, &c.integer(-1), &c.one()).unwrap();
    assert_eq!(
        normal_form(&half, "a a", &c.one()).unwrap(),
        alg(&c, &[(Monomial::ONE, c.one()), (m(0, 0, 2), c.integer(-1))])
    );
    assert_eq!(
        normal_form(&half, "a p", &c.one()).unwrap(),
        alg(&c, &[(m(1, 1, 0), c.one()), (m(0, 1, 0), c.integer(2)), (m(0, 1, 2), c.integer(2))])
    );
    let w = root_of_unity(&c, 3).unwrap();
    let nf = normal_form(&D::cycle_graded(3, &w).unwrap(), "h a h^-1", &c.integer(3)).unwrap();
    assert_eq!(nf, alg(&c, &[(m(0, 1, 0), c.integer(3) * w.clone())]));
    let chain = D::chain_graded(&c.integer(2)).unwrap();
    let nf = normal_form(&chain, "H^2 a h", &c.one()).unwrap();
    assert_eq!(nf, alg(&c, &[(m(0, 1, -1), c.ratio(1, 4).unwrap())]));
    assert!(matches!(normal_form(&chain, "p", &c.one()), Err(Error::Parse(_))));
    assert!(matches!(normal_form(&chain, "x", &c.one()), Err(Error::Parse(_))));
}

#[test]
fn multiply_examples() {
    let c = ctx();
    let w = root_of_unity(&c, 3).unwrap();
    let d = D::cycle_deform(3, &w, &c.integer(7)).unwrap();
    let a2 = alg(&c, &[(m(0, 2, 0), c.one())]);
    let a = alg(&c, &[(m(0, 1, 0), c.one())]);
    assert!(multiply_alg(&d, &a2, &a).is_zero());
    let one = alg(&c, &[(Monomial::ONE, c.one())]);
    let y = alg(&c, &[(m(2, 1, 2), c.integer(3)), (m(0, 2, 1), w.clone())]);
    assert_eq!(multiply_alg(&d, &one, &y), y);
    assert_eq!(multiply_alg(&d, &y, &one), y);

    let d1 = D::cycle_deform(3, &w, &c.one()).unwrap();
    let rs = presentation_of(&d1);
    let apa = normal_form(&d1, "a p a", &c.one()).unwrap();
    assert_eq!(apa, alg(&c, &[(m(1, 2, 0), c.one()), (m(0, 2, 0), c.one())]));
    assert_eq!(apa, rightmost_normal_form(&rs, &[Gen::A, Gen::P, Gen::A]));
}

#[test]
fn leftmost_and_rightmost_reduction_agree() {
    let c = ctx();
    for d in sample_descriptors(&c) {
        let rs = presentation_of(&d);
        let gens = rs.generators().to_vec();
        // all words of length ≤ 4 over the generators
        let mut words: Vec<Vec<Gen>> = vec![vec![]];
        for _ in 0..4 {
            let next: Vec<Vec<Gen>> = words
                .iter()
                .filter(|w| w.len() == words.last().unwrap().len())
                .flat_map(|w| {
                    gens.iter().map(move |g| {
                        let mut v = w.clone();
                        v.push(*g);
                        v
                    })
                })
                .collect();
            words.extend(next);
        }
        for w in &words {
            assert_eq!(rs.normal_form_gens(w).unwrap(), rightmost_normal_form(&rs, w), "{d}: {w:?}");
        }
    }
}

#[test]
fn confluence_examples() {
    let c = ctx();
    let i = root_of_unity(&c, 4).unwrap();
    for d in [
        D::cycle_graded(2, &c.integer(-1)).unwrap(),
        D::cycle_deform(4, &i, &c.one()).unwrap(),
        D::cycle_half(4, &c.integer(-1), &c.one()).unwrap(),
    ] {
        let r = check_confluence(&presentation_of(&d), 3 * d.scale());
        assert!(r.passed(), "{r}");
        assert!(r.check("ambiguities resolve").unwrap().cases > 0);
    }
}

#[test]
fn broken_system_is_reported() {
    let c = ctx();
    let w = root_of_unity(&c, 3).unwrap();
    let d = D::cycle_deform(3, &w, &c.one()).unwrap();
    let good = presentation_of(&d);
    // a·p → p·a + a together with a^3 → 0 is consistent; a·p → p·a + h is not
    let mut rules = good.rules().to_vec();
    for r in &mut rules {
        if r.lhs == vec![Gen::A, Gen::P] {
            r.rhs = vec![(vec![Gen::P, Gen::A], c.one()), (vec![Gen::H], c.one())];
        }
    }
    let bad = RewriteSystem::from_rules(&c, d.kind(), 3, good.generators().to_vec(), rules);
    let r = check_confluence(&bad, 9);
    assert!(!r.passed());
    assert!(r.check("ambiguities resolve").unwrap().witness.is_some());
}

#[test]
fn pbw_count_without_p() {
    let c = ctx();
    for (n, dq) in [(4u64, 4u64), (4, 2), (6, 3), (6, 2), (6, 6), (5, 1)] {
        let q = root_of_unity(&c, dq).unwrap();
        let d = D::cycle_graded(n, &q).unwrap();
        let bound = if dq == 1 { 3 * n } else { dq - 1 };
        let count = pbw_monomials(&d, bound, 0..=n as i64 - 1)
            .into_iter()
            .filter(|x| x.k == 0)
            .count() as u64;
        let expect = if dq == 1 { n * (bound + 1) } else { n * dq };
        assert_eq!(count, expect);
        let r = check_confluence(&presentation_of(&d), 3 * n);
        assert!(r.check("PBW count").unwrap().pass, "{r}");
    }
}

#[test]
fn basis_change_examples() {
    let c = ctx();
    let w = root_of_unity(&c, 3).unwrap();
    let d = D::cycle_graded(3, &w).unwrap();
    let k = QuiverKind::Cycle(3);
    let x = alg(&c, &[(m(0, 1, 2), c.one())]);
    assert_eq!(pbw_to_path(&d, &x).unwrap(), Combination::basis(&c, Path::new(k, 2, 1)));
    let y = alg(&c, &[(m(1, 2, 0), c.one())]);
    let py = pbw_to_path(&d, &y).unwrap();
    assert_eq!(py, Combination::term(Path::new(k, 0, 5), c.one() + w.clone()));
    assert_eq!(path_to_pbw(&d, &py).unwrap(), y);
    let d1 = D::cycle_graded(5, &c.one()).unwrap();
    let z = alg(&c, &[(m(0, 3, 0), c.one())]);
    assert_eq!(
        pbw_to_path(&d1, &z).unwrap(),
        Combination::term(Path::new(QuiverKind::Cycle(5), 0, 3), c.integer(6))
    );
    let def = D::cycle_deform(3, &w, &c.one()).unwrap();
    assert_eq!(pbw_to_path(&def, &y), Err(Error::GeneratorLevelOnly));
    assert_eq!(
        Error::GeneratorLevelOnly.to_string(),
        "identification is generator-level only for deformed families"
    );
    let p = alg(&c, &[(m(1, 0, 0), c.one())]);
    assert_eq!(pbw_to_path(&def, &p).unwrap(), Combination::basis(&c, Path::new(k, 0, 3)));
}

#[test]
fn basis_change_is_multiplicative() {
    let c = ctx();
    for (n, dq) in [(4u64, 4u64), (6, 3), (6, 2), (3, 1)] {
        let q = root_of_unity(&c, dq).unwrap();
        let d = D::cycle_graded(n, &q).unwrap();
        let graded = hopfpath::graded_hopf::GradedHopf::cycle(n, &q).unwrap();
        let monos = pbw_monomials(&d, 2 * n, 0..=n as i64 - 1);
        for x in &monos {
            for y in &monos {
                let ex = Combination::basis(&c, *x);
                let ey = Combination::basis(&c, *y);
                let lhs = pbw_to_path(&d, &multiply_alg(&d, &ex, &ey)).unwrap();
                let rhs = graded
                    .multiply(&pbw_to_path(&d, &ex).unwrap(), &pbw_to_path(&d, &ey).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs, "n={n}, ({x})({y})");
            }
        }
        // the k = 0 part is j!_q, independently of the k! normalization
        for j in 0..dq.max(2) {
            let x = alg(&c, &[(m(0, j, 1), c.one())]);
            let expect = Combination::term(Path::new(QuiverKind::Cycle(n), 1, j), q_factorial(j, &q));
            assert_eq!(pbw_to_path(&d, &x).unwrap(), expect);
        }
    }
}

#[test]
fn classify_examples() {
    let c = ctx();
    let w = root_of_unity(&c, 3).unwrap();
    let m1 = c.integer(-1);
    let d = |l: i64| D::cycle_deform(3, &w, &c.integer(l)).unwrap();
    assert!(classify_iso(&d(1), &d(2)));
    assert!(!classify_iso(&d(1), &d(0)));
    let r = |l: i64| D::chain_root(&m1, &c.integer(l)).unwrap();
    assert!(!classify_iso(&r(1), &r(2)));
    assert!(!classify_iso(&d(1), &D::cycle_graded(3, &w).unwrap()));
}

#[test]
fn catalog_examples() {
    let c = CyclotomicContext::new(2).unwrap();
    let m1 = c.integer(-1);
    let cat = simple_pointed_catalog(&c, 2).unwrap();
    for mu in [c.zero(), c.one()] {
        assert!(cat.contains(&D::type_one_cycle(2, &m1, &mu).unwrap()));
    }
    assert!(cat.contains(&D::chain_q1(&c, &c.one()).unwrap()));
    let c12 = ctx();
    for n in 1..=4 {
        let cat = simple_pointed_catalog(&c12, n).unwrap();
        assert!(cat.iter().all(|d| d.family() != Family::CycleDeform));
        assert!(cat.contains(&D::chain_q1(&c12, &c12.one()).unwrap()));
    }
}

#[test]
fn descriptor_errors() {
    let c = ctx();
    let w = root_of_unity(&c, 3).unwrap();
    let i = root_of_unity(&c, 4).unwrap();
    let msg = |r: hopfpath::Result<D>| r.unwrap_err().to_string();
    assert!(msg(D::cycle_deform(4, &w, &c.one())).contains("order(q) must equal n"));
    assert!(msg(D::cycle_graded(3, &i)).contains("q^n must equal 1"));
    assert!(msg(D::cycle_half(6, &i, &c.one())).contains("order(q) must equal n/2"));
    assert!(msg(D::chain_q1(&c, &c.zero()).and_then(|_| D::new(Family::ChainQ1Deform, None, w.clone(), c.one())))
        .contains("q must equal 1"));
    assert!(msg(D::chain_root(&c.integer(2), &c.one())).contains("order d > 1"));
    assert!(msg(D::type_one_cycle(4, &i, &c.integer(2))).contains("mu must be 0 or 1"));
    assert!(msg(D::type_one_chain(&c.one(), &c.zero())).contains("order d > 1"));
}

#[test]
fn chain_q1_rescaling() {
    let c = ctx();
    let d = D::chain_q1(&c, &c.integer(5)).unwrap();
    assert!(d.param().is_one());
    assert!(d.note().unwrap().contains("rescaled"));
    assert!(classify_iso(&d, &D::chain_q1(&c, &c.one()).unwrap()));
}

#[test]
fn json_examples() {
    let c = ctx();
    let v = serde_json::json!({"family": "cycle-deform", "n": 3, "qOrder": 3, "lambda": 1});
    let d = D::from_json(&c, &v).unwrap();
    assert_eq!(d, D::cycle_deform(3, &root_of_unity(&c, 3).unwrap(), &c.one()).unwrap());
    let bad = serde_json::json!({"family": "cycle-deform", "n": 4, "qOrder": 3, "lambda": 1});
    assert!(D::from_json(&c, &bad).is_err());
    assert!(D::from_json(&c, &serde_json::json!({"family": "nope"})).is_err());
}

fn any_descriptor() -> impl Strategy<Value = D> {
    (0usize..8, 0i64..12, prop::sample::select(vec![(0i64, 1i64), (1, 1), (2, 1), (-1, 2), (3, 4)]))
        .prop_filter_map("invalid parameters", |(f, e, (a, b))| {
            let c = ctx();
            let q = c.zeta_pow(e);
            let p = c.ratio(a, b).unwrap();
            let ord = match q.order().unwrap() {
                hopfpath::scalars::Order::Finite(d) => d,
                _ => unreachable!(),
            };
            let r = match Family::ALL[f] {
                Family::CycleGraded => D::cycle_graded(ord.max(2) * 2, &q),
                Family::CycleDeform => D::cycle_deform(ord, &q, &p),
                Family::CycleHalfDeform => D::cycle_half(2 * ord, &q, &p),
                Family::ChainGraded => D::chain_graded(&q),
                Family::ChainQ1Deform => D::chain_q1(&c, &p),
                Family::ChainRootDeform => D::chain_root(&q, &p),
                Family::TypeOneCycle => D::type_one_cycle(ord, &q, &p),
                Family::TypeOneChain => D::type_one_chain(&q, &p),
            };
            r.ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn descriptor_json_round_trip(d in any_descriptor()) {
        let back = D::from_json(&ctx(), &d.to_json()).unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn classify_is_an_equivalence(x in any_descriptor(), y in any_descriptor(), z in any_descriptor()) {
        prop_assert!(classify_iso(&x, &x));
        prop_assert_eq!(classify_iso(&x, &y), classify_iso(&y, &x));
        if classify_iso(&x, &y) && classify_iso(&y, &z) {
            prop_assert!(classify_iso(&x, &z));
        }
    }

    #[test]
    fn multiplication_is_associative(
        pick in 0usize..15,
        a in (0u64..3, 0u64..4, -3i64..4),
        b in (0u64..3, 0u64..4, -3i64..4),
        e in (0u64..3, 0u64..4, -3i64..4),
    ) {
        let c = ctx();
        let d = sample_descriptors(&c).swap_remove(pick);
        let rs = presentation_of(&d);
        let word = |(k, j, i): (u64, u64, i64)| {
            let mut w = Vec::new();
            if d.p_weight().is_some() {
                w.extend(std::iter::repeat(Gen::P).take(k as usize));
            }
            w.extend(std::iter::repeat(Gen::A).take(j as usize));
            let (g, n) = match (d.n(), i < 0) {
                (None, true) => (Gen::HInv, -i),
                (Some(n), _) => (Gen::H, i.rem_euclid(n as i64)),
                _ => (Gen::H, i),
            };
            w.extend(std::iter::repeat(g).take(n as usize));
            rs.normal_form_gens(&w).unwrap()
        };
        let (x, y, z) = (word(a), word(b), word(e));
        let left = rs.multiply(&rs.multiply(&x, &y), &z);
        let right = rs.multiply(&x, &rs.multiply(&y, &z));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn rewriting_terminates_within_budget(
        pick in 0usize..15,
        word in prop::collection::vec(0usize..4, 0..9),
    ) {
        let c = ctx();
        let d = sample_descriptors(&c).swap_remove(pick);
        let rs = presentation_of(&d);
        let gens: Vec<Gen> = word.iter().map(|&g| rs.generators()[g % rs.generators().len()]).collect();
        let (_, depth) = rs.reduce_with_depth(&rs.word_element(gens.clone(), &c.one()));
        prop_assert!(depth <= depth_budget(&d, gens.len()).max(1), "{} steps for {:?}", depth, gens);
    }
}
