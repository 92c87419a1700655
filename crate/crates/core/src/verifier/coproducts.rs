use std::collections::{BTreeMap, HashMap};

use crate::linear::Combination;
use crate::presentations::{AlgElement, Gen, HopfFamilyDescriptor, Monomial, Multiplier, RewriteSystem};
use crate::report::{Check, VerificationReport};
use crate::scalars::{q_factorial, Scalar};

pub type TensorAlg = Combination<(Monomial, Monomial)>;
pub type TripleAlg = Combination<(Monomial, Monomial, Monomial)>;

/// Coproducts and counits of the generators, read off from the path coalgebra.
#[derive(Debug, Clone)]
pub struct GeneratorCoproducts {
    delta: BTreeMap<Gen, TensorAlg>,
}

impl GeneratorCoproducts {
    /// `Δh = h⊗h`, `Δa = a⊗1 + h⊗a`, and
    /// `Δp = p⊗1 + h^d⊗p + Σ_{l=1}^{d−1} a^{d−l}h^l ⊗ a^l / ((d−l)!_q l!_q)`.
    pub fn new(desc: &HopfFamilyDescriptor) -> Self {
        let ctx = desc.context();
        let one = ctx.one();
        let m = Monomial::new;
        let mut delta = BTreeMap::new();
        delta.insert(Gen::H, Combination::basis(ctx, (m(0, 0, 1), m(0, 0, 1))));
        if desc.n().is_none() {
            delta.insert(Gen::HInv, Combination::basis(ctx, (m(0, 0, -1), m(0, 0, -1))));
        }
        delta.insert(
            Gen::A,
            Combination::from_terms(
                ctx,
                [((m(0, 1, 0), Monomial::ONE), one.clone()), ((m(0, 0, 1), m(0, 1, 0)), one.clone())],
            ),
        );
        if let Some(d) = desc.p_weight() {
            let q = desc.q();
            let mut dp = Combination::from_terms(
                ctx,
                [
                    ((m(1, 0, 0), Monomial::ONE), one.clone()),
                    ((m(0, 0, desc.kind().reduce(d as i64)), m(1, 0, 0)), one.clone()),
                ],
            );
            for l in 1..d {
                let c = (q_factorial(d - l, q) * q_factorial(l, q))
                    .inv()
                    .expect("q-factorials below ord(q) are nonzero");
                dp.add_term((m(0, d - l, l as i64), m(0, l, 0)), &c);
            }
            delta.insert(Gen::P, dp);
        }
        GeneratorCoproducts { delta }
    }

    pub fn get(&self, g: Gen) -> &TensorAlg {
        &self.delta[&g]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Gen, &TensorAlg)> {
        self.delta.iter()
    }
}

pub fn counit_gen(g: Gen) -> i64 {
    match g {
        Gen::H | Gen::HInv => 1,
        Gen::A | Gen::P => 0,
    }
}

pub fn counit_monomial(m: &Monomial) -> bool {
    m.k == 0 && m.j == 0
}

pub fn counit(x: &AlgElement) -> Scalar {
    x.iter()
        .filter(|(m, _)| counit_monomial(m))
        .fold(x.context().zero(), |acc, (_, c)| acc + c)
}

/// Multiplication in the algebra and its tensor square, with cached coproducts of monomials.
pub struct CoproductEngine<'a> {
    pub mult: Multiplier<'a>,
    gens: &'a GeneratorCoproducts,
    cache: HashMap<Monomial, TensorAlg>,
}

impl<'a> CoproductEngine<'a> {
    pub fn new(rs: &'a RewriteSystem, gens: &'a GeneratorCoproducts) -> Self {
        CoproductEngine {
            mult: Multiplier::new(rs),
            gens,
            cache: HashMap::new(),
        }
    }

    pub fn system(&self) -> &'a RewriteSystem {
        self.mult.system()
    }

    /// Component-wise product `(x₁⊗x₂)(y₁⊗y₂) = x₁y₁ ⊗ x₂y₂`.
    pub fn tensor_multiply(&mut self, x: &TensorAlg, y: &TensorAlg) -> TensorAlg {
        let mut out = Combination::zero(x.context());
        for ((a1, a2), ca) in x.iter() {
            for ((b1, b2), cb) in y.iter() {
                let c = ca * cb;
                let left = self.mult.multiply_monomials(a1, b1);
                if left.is_zero() {
                    continue;
                }
                let right = self.mult.multiply_monomials(a2, b2);
                for (l, cl) in left.iter() {
                    for (r, cr) in right.iter() {
                        out.add_term((*l, *r), &(&c * &(cl * cr)));
                    }
                }
            }
        }
        out
    }

    pub fn delta_word(&mut self, gens: &[Gen]) -> TensorAlg {
        let ctx = self.system().context().clone();
        let mut acc = Combination::basis(&ctx, (Monomial::ONE, Monomial::ONE));
        for g in gens {
            let dg = self.gens.get(*g).clone();
            acc = self.tensor_multiply(&acc, &dg);
        }
        acc
    }

    pub fn delta_monomial(&mut self, m: &Monomial) -> TensorAlg {
        if let Some(hit) = self.cache.get(m) {
            return hit.clone();
        }
        let out = self.delta_word(&m.gens());
        self.cache.insert(*m, out.clone());
        out
    }

    pub fn delta(&mut self, x: &AlgElement) -> TensorAlg {
        let mut out = Combination::zero(x.context());
        for (m, c) in x.iter() {
            let dm = self.delta_monomial(m);
            out.add_scaled(&dm, c);
        }
        out
    }
}

fn word_counit(gens: &[Gen]) -> i64 {
    gens.iter().map(|g| counit_gen(*g)).product()
}

/// Checks that `Δ` and `ε`, defined on generators, respect every defining relation, and that
/// they satisfy coassociativity and the counit axiom on the generators.
pub fn verify_relation_coproducts(desc: &HopfFamilyDescriptor) -> VerificationReport {
    let rs = RewriteSystem::presentation(desc);
    let gens = GeneratorCoproducts::new(desc);
    verify_relation_coproducts_with(desc, &rs, &gens)
}

pub(crate) fn verify_relation_coproducts_with(
    desc: &HopfFamilyDescriptor,
    rs: &RewriteSystem,
    gens: &GeneratorCoproducts,
) -> VerificationReport {
    let ctx = desc.context();
    let mut report = VerificationReport::new(desc.family().tag(), desc.describe());
    let rules = rs.rules().to_vec();
    report.push(Check::run_with_init(
        "coproduct respects relations",
        &rules,
        || CoproductEngine::new(rs, gens),
        |eng, rule| {
            let lhs = eng.delta_word(&rule.lhs);
            let mut rhs = Combination::zero(ctx);
            for (w, c) in &rule.rhs {
                let dw = eng.delta_word(w);
                rhs.add_scaled(&dw, c);
            }
            (lhs != rhs).then(|| format!("{rule}: Δ(lhs) − Δ(rhs) = {}", &lhs - &rhs))
        },
    ));
    report.push(Check::run("counit respects relations", &rules, |rule| {
        let lhs = ctx.integer(word_counit(&rule.lhs));
        let rhs = rule
            .rhs
            .iter()
            .fold(ctx.zero(), |acc, (w, c)| acc + c * &ctx.integer(word_counit(w)));
        (lhs != rhs).then(|| format!("{rule}: ε(lhs) = {lhs}, ε(rhs) = {rhs}"))
    }));
    let generators: Vec<Gen> = gens.iter().map(|(g, _)| *g).collect();
    report.push(Check::run_with_init(
        "coassociative on generators",
        &generators,
        || CoproductEngine::new(rs, gens),
        |eng, g| {
            let dg = gens.get(*g).clone();
            let mut left: TripleAlg = Combination::zero(ctx);
            let mut right: TripleAlg = Combination::zero(ctx);
            for ((x1, x2), c) in dg.iter() {
                for ((y1, y2), c2) in eng.delta_monomial(x1).iter() {
                    left.add_term((*y1, *y2, *x2), &(c * c2));
                }
                for ((y1, y2), c2) in eng.delta_monomial(x2).iter() {
                    right.add_term((*x1, *y1, *y2), &(c * c2));
                }
            }
            (left != right).then(|| format!("{}: (Δ⊗id)Δ − (id⊗Δ)Δ = {}", g.symbol(), &left - &right))
        },
    ));
    report.push(Check::run("counit axiom on generators", &generators, |g| {
        let dg = gens.get(*g);
        let mut left = Combination::zero(ctx);
        let mut right = Combination::zero(ctx);
        for ((x1, x2), c) in dg.iter() {
            if counit_monomial(x1) {
                left.add_term(*x2, c);
            }
            if counit_monomial(x2) {
                right.add_term(*x1, c);
            }
        }
        let m = Monomial::from_gens(&[*g]).expect("generator");
        let id = Combination::basis(ctx, m);
        (left != id || right != id).then(|| format!("{}: (ε⊗id)Δ = {left}, (id⊗ε)Δ = {right}", g.symbol()))
    }));
    report
}
