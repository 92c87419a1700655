use std::sync::Arc;

use hopfpath::graded_hopf::{verify_graded_bialgebra, verify_graded_bialgebra_with, GradedCheckOptions, GradedHopf};
use hopfpath::hopf_quiver::{enumerate_paths, Path, QuiverKind};
use hopfpath::linear::Combination;
use hopfpath::path_coalgebra::{comultiply, path_element, CoalgElement};
use hopfpath::scalars::{q_factorial, root_of_unity, CyclotomicContext, Scalar};
use hopfpath::Error;
use proptest::prelude::*;

fn ctx() -> Arc<CyclotomicContext> {
    CyclotomicContext::new(12).unwrap()
}

fn el(c: &Arc<CyclotomicContext>, k: QuiverKind, i: i64, l: u64) -> CoalgElement {
    path_element(c, Path::new(k, i, l))
}

fn power(h: &GradedHopf, x: &CoalgElement, e: u64) -> CoalgElement {
    (0..e).fold(h.unit(), |acc, _| h.multiply(&acc, x).unwrap())
}

#[test]
fn product_examples() {
    let c = ctx();
    let w = root_of_unity(&c, 3).unwrap();
    let h = GradedHopf::cycle(3, &w).unwrap();
    let k = QuiverKind::Cycle(3);
    let x = h.multiply_paths(&Path::new(k, 1, 1), &Path::new(k, 1, 1)).unwrap();
    assert_eq!(x, Combination::term(Path::new(k, 2, 2), c.integer(-1)));
    let a0 = el(&c, k, 0, 1);
    assert!(power(&h, &a0, 3).is_zero());

    let i = root_of_unity(&c, 4).unwrap();
    let h4 = GradedHopf::cycle(4, &i).unwrap();
    let k4 = QuiverKind::Cycle(4);
    assert!(h4.multiply_paths(&Path::new(k4, 1, 2), &Path::new(k4, 0, 3)).unwrap().is_zero());

    let h2 = GradedHopf::cycle(2, &c.integer(-1)).unwrap();
    let k2 = QuiverKind::Cycle(2);
    let p = el(&c, k2, 0, 2);
    // (p_0^2)^2 = 2·p_0^4: the closed formula carries binom(4,2)_{−1} = 2
    assert_eq!(h2.multiply(&p, &p).unwrap(), el(&c, k2, 0, 4).scale(&c.integer(2)));
}

#[test]
fn vertices_act_by_q_powers() {
    let c = ctx();
    for (n, q) in [(4, root_of_unity(&c, 4).unwrap()), (6, root_of_unity(&c, 3).unwrap()), (3, c.one())] {
        let h = GradedHopf::cycle(n, &q).unwrap();
        let k = QuiverKind::Cycle(n);
        for p in enumerate_paths(k, 6, 0..=0) {
            for j in 0..n as i64 {
                let g = Path::vertex(k, j);
                let left = h.multiply_paths(&g, &p).unwrap();
                let right = h.multiply_paths(&p, &g).unwrap();
                let shifted = Path::new(k, p.source() + j, p.length());
                assert_eq!(left, Combination::term(shifted, q.pow(j as u64 * p.length())));
                assert_eq!(right, Combination::basis(&c, shifted));
            }
        }
    }
}

#[test]
fn arrow_powers_are_q_factorials() {
    let c = ctx();
    for (n, q) in [(4, root_of_unity(&c, 4).unwrap()), (6, root_of_unity(&c, 6).unwrap()), (5, c.one())] {
        let h = GradedHopf::cycle(n, &q).unwrap();
        let k = QuiverKind::Cycle(n);
        for l in 0..10 {
            let expect = el(&c, k, 0, l).scale(&q_factorial(l, &q));
            assert_eq!(power(&h, &el(&c, k, 0, 1), l), expect, "n={n}, l={l}");
        }
    }
}

#[test]
fn power_formula() {
    let c = ctx();
    let i = root_of_unity(&c, 4).unwrap();
    let h4 = GradedHopf::cycle(4, &i).unwrap();
    let h2 = GradedHopf::cycle(2, &c.integer(-1)).unwrap();
    let h6 = GradedHopf::cycle(6, &root_of_unity(&c, 3).unwrap()).unwrap();
    assert!(h2.power_formula_check(1, 1).unwrap());
    assert!(h4.power_formula_check(1, 3).unwrap());
    assert!(h4.power_formula_check(0, 2).unwrap());
    // (p_0^d)^l = l!·p_0^{dl}, so the unnormalized identity holds only for l ≤ 1
    assert!(!h4.power_formula_check(2, 3).unwrap());
    assert!(!h6.power_formula_check(3, 2).unwrap());
    for h in [&h2, &h4, &h6] {
        for l in 0..6u64 {
            let fact = (1..=l as i64).product::<i64>();
            assert_eq!(h.power_coefficient(l).unwrap(), c.integer(fact));
        }
    }
    let h1 = GradedHopf::cycle(3, &c.one()).unwrap();
    assert!(matches!(h1.power_formula_check(1, 1), Err(Error::TrivialRoot(1))));
    let chain = GradedHopf::chain(&c.integer(2)).unwrap();
    assert!(matches!(chain.power_formula_check(1, 1), Err(Error::InfiniteOrder(_))));
}

#[test]
fn second_power_identity_holds() {
    let c = ctx();
    for (n, d) in [(4u64, 4u64), (6, 3), (6, 2), (4, 2)] {
        let q = root_of_unity(&c, d).unwrap();
        let h = GradedHopf::cycle(n, &q).unwrap();
        let k = QuiverKind::Cycle(n);
        for l in 0..4 {
            for j in 0..d {
                let lhs = h.multiply(&el(&c, k, 0, d * l), &power(&h, &el(&c, k, 0, 1), j)).unwrap();
                assert_eq!(lhs, el(&c, k, 0, j + d * l).scale(&q_factorial(j, &q)));
            }
        }
    }
}

#[test]
fn parameters_are_validated() {
    let c = ctx();
    let i = root_of_unity(&c, 4).unwrap();
    assert!(GradedHopf::cycle(3, &i).is_err());
    assert!(GradedHopf::chain(&c.zero()).is_err());
    let h = GradedHopf::cycle(4, &i).unwrap();
    let wrong = h.multiply_paths(&Path::new(QuiverKind::Chain, 0, 1), &Path::new(QuiverKind::Cycle(4), 0, 1));
    assert!(matches!(wrong, Err(Error::KindMismatch(_))));
}

#[test]
fn report_examples() {
    let c = ctx();
    let i = root_of_unity(&c, 4).unwrap();
    for (n, q) in [(2, c.integer(-1)), (4, i), (4, c.integer(-1))] {
        let r = verify_graded_bialgebra(&GradedHopf::cycle(n, &q).unwrap(), 4);
        assert!(r.passed(), "{r}");
        assert_eq!(r.checks.len(), 4);
    }
}

#[test]
fn chain_bialgebras() {
    let c = ctx();
    for q in [c.one(), c.integer(2), c.ratio(-2, 3).unwrap(), c.integer(-1), root_of_unity(&c, 3).unwrap()] {
        let opts = GradedCheckOptions {
            pair_len: 4,
            triple_len: 3,
            window: Some(-3..=3),
        };
        let r = verify_graded_bialgebra_with(&GradedHopf::chain(&q).unwrap(), &opts);
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn chain_and_cycle_agree_without_wrap() {
    let c = ctx();
    let n = 6;
    let q = root_of_unity(&c, 3).unwrap();
    let cyc = GradedHopf::cycle(n, &q).unwrap();
    let chain = GradedHopf::chain(&q).unwrap();
    for x in enumerate_paths(QuiverKind::Chain, 5, 0..=2) {
        for y in enumerate_paths(QuiverKind::Chain, 5, 0..=2) {
            if x.length() + y.length() >= n {
                continue;
            }
            let (cc, _) = chain.product_term(&x, &y);
            let xc = Path::new(QuiverKind::Cycle(n), x.source(), x.length());
            let yc = Path::new(QuiverKind::Cycle(n), y.source(), y.length());
            let (cz, pz) = cyc.product_term(&xc, &yc);
            assert_eq!(cc, cz, "{x}·{y}");
            if !cz.is_zero() {
                assert_eq!(pz.source(), (x.source() + y.source()).rem_euclid(n as i64));
            }
        }
    }
}

#[test]
fn structure_table_rows() {
    let c = ctx();
    let h = GradedHopf::cycle(2, &c.integer(-1)).unwrap();
    let rows = h.structure_table(1, 0..=0);
    assert_eq!(rows.len(), 16);
    let row = rows.iter().find(|r| r.left == "p[0,1]" && r.right == "p[0,1]").unwrap();
    assert_eq!(row.result, "0");
}

proptest! {
    #[test]
    fn coproduct_is_multiplicative(
        e in prop::sample::select(vec![0i64, 2, 3, 4, 6]),
        xs in (0i64..12, 0u64..7),
        ys in (0i64..12, 0u64..7),
    ) {
        let c = ctx();
        let q: Scalar = c.zeta_pow(e);
        let h = GradedHopf::cycle(12, &q).unwrap();
        let k = QuiverKind::Cycle(12);
        let x = el(&c, k, xs.0, xs.1);
        let y = el(&c, k, ys.0, ys.1);
        let xy = h.multiply(&x, &y).unwrap();
        prop_assert_eq!(comultiply(&xy), h.multiply_tensor(&comultiply(&x), &comultiply(&y)));
    }

    #[test]
    fn associative(
        e in 0i64..12,
        a in (0i64..6, 0u64..6),
        b in (0i64..6, 0u64..6),
        d in (0i64..6, 0u64..6),
    ) {
        let c = ctx();
        let q = c.zeta_pow(2 * e);
        let h = GradedHopf::cycle(6, &q).unwrap();
        let k = QuiverKind::Cycle(6);
        let (x, y, z) = (el(&c, k, a.0, a.1), el(&c, k, b.0, b.1), el(&c, k, d.0, d.1));
        let left = h.multiply(&h.multiply(&x, &y).unwrap(), &z).unwrap();
        let right = h.multiply(&x, &h.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}
