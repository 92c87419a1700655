use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linear::Combination;
use crate::presentations::confluence::exponent_window;
use crate::presentations::{pbw_monomials, AlgElement, Gen, HopfFamilyDescriptor, Monomial, Multiplier, RewriteSystem};
use crate::report::{Check, VerificationReport};

use super::coproducts::{counit, counit_monomial, CoproductEngine, GeneratorCoproducts};

/// Antipode values on the generators; extended anti-multiplicatively.
#[derive(Debug, Clone)]
pub struct Antipode {
    values: BTreeMap<Gen, AlgElement>,
}

impl Antipode {
    pub fn generator(&self, g: Gen) -> &AlgElement {
        &self.values[&g]
    }

    pub fn generators(&self) -> &BTreeMap<Gen, AlgElement> {
        &self.values
    }

    /// `S(p^k a^j h^i) = S(h)^i S(a)^j S(p)^k`.
    pub fn apply_monomial(&self, mult: &mut Multiplier, m: &Monomial) -> Result<AlgElement> {
        let ctx = mult.system().context().clone();
        let mut acc = Combination::basis(&ctx, Monomial::ONE);
        for g in m.gens().into_iter().rev() {
            let s = self
                .values
                .get(&g)
                .ok_or_else(|| Error::NoAntipode(format!("S({}) is not known yet", g.symbol())))?;
            acc = mult.multiply(&acc, s);
        }
        Ok(acc)
    }

    pub fn apply(&self, mult: &mut Multiplier, x: &AlgElement) -> Result<AlgElement> {
        let mut out = Combination::zero(x.context());
        for (m, c) in x.iter() {
            out.add_scaled(&self.apply_monomial(mult, m)?, c);
        }
        Ok(out)
    }
}

/// Solves `m∘(S⊗id)∘Δ = ε` on each generator: group-likes first, then `a`, then `p`.
pub fn solve_antipode(rs: &RewriteSystem, gens: &GeneratorCoproducts) -> Result<Antipode> {
    let ctx = rs.context().clone();
    let mut ant = Antipode {
        values: BTreeMap::new(),
    };
    let inverse_h = match rs.kind() {
        crate::hopf_quiver::QuiverKind::Cycle(n) => Monomial::new(0, 0, n as i64 - 1),
        crate::hopf_quiver::QuiverKind::Chain => Monomial::new(0, 0, -1),
    };
    let mut mult = Multiplier::new(rs);
    for &g in rs.generators().iter().rev() {
        let x = Monomial::from_gens(&[g]).expect("generator");
        let value = match g {
            Gen::H => Combination::basis(&ctx, inverse_h),
            Gen::HInv => Combination::basis(&ctx, Monomial::new(0, 0, 1)),
            Gen::A | Gen::P => {
                let dx = gens.get(g);
                let lead = dx.coeff(&(x, Monomial::ONE));
                if lead.is_zero() {
                    return Err(Error::NoAntipode(format!(
                        "Δ({}) has no {}⊗1 term",
                        g.symbol(),
                        g.symbol()
                    )));
                }
                let mut rest = Combination::zero(&ctx);
                for ((x1, x2), c) in dx.iter() {
                    if (*x1, *x2) == (x, Monomial::ONE) {
                        continue;
                    }
                    if x1.gens().contains(&g) {
                        return Err(Error::NoAntipode(format!(
                            "Δ({}) has {x1} on the left of a term other than {}⊗1",
                            g.symbol(),
                            g.symbol()
                        )));
                    }
                    let s1 = ant.apply_monomial(&mut mult, x1)?;
                    let prod = mult.multiply(&s1, &Combination::basis(&ctx, *x2));
                    rest.add_scaled(&prod, c);
                }
                // ε(a) = ε(p) = 0
                rest.scale(&(-lead.inv()?))
            }
        };
        ant.values.insert(g, value);
    }
    Ok(ant)
}

fn monomials(desc: &HopfFamilyDescriptor, bound: u64) -> Vec<Monomial> {
    pbw_monomials(desc, bound, exponent_window(desc, desc.scale()))
}

/// The antipode on all PBW monomials of weight at most `degree_bound`.
pub fn compute_antipode(desc: &HopfFamilyDescriptor, degree_bound: u64) -> Result<BTreeMap<Monomial, AlgElement>> {
    let rs = RewriteSystem::presentation(desc);
    let gens = GeneratorCoproducts::new(desc);
    let ant = solve_antipode(&rs, &gens)?;
    let mut mult = Multiplier::new(&rs);
    monomials(desc, degree_bound)
        .into_iter()
        .map(|m| Ok((m, ant.apply_monomial(&mut mult, &m)?)))
        .collect()
}

/// Both antipode axioms on monomials of weight at most `degree_bound`, anti-multiplicativity and
/// multiplicativity of the counit on pairs of total weight at most `degree_bound`.
pub fn verify_antipode(desc: &HopfFamilyDescriptor, degree_bound: u64) -> VerificationReport {
    let rs = RewriteSystem::presentation(desc);
    let gens = GeneratorCoproducts::new(desc);
    verify_antipode_with(desc, &rs, &gens, degree_bound)
}

pub(crate) fn verify_antipode_with(
    desc: &HopfFamilyDescriptor,
    rs: &RewriteSystem,
    gens: &GeneratorCoproducts,
    degree_bound: u64,
) -> VerificationReport {
    let ctx = desc.context();
    let mut report = VerificationReport::new(desc.family().tag(), desc.describe());
    report.params.insert("degree".into(), degree_bound.to_string());
    let ant = match solve_antipode(rs, gens) {
        Ok(a) => a,
        Err(e) => {
            report.push(Check::failed("antipode solve", 1, e.to_string()));
            return report;
        }
    };
    let solved: Vec<String> = ant
        .generators()
        .iter()
        .rev()
        .map(|(g, v)| format!("S({}) = {v}", g.symbol()))
        .collect();
    report.push(Check::passed("antipode solve", ant.generators().len() as u64).with_witness(solved.join("; ")));
    let monos = monomials(desc, degree_bound);
    let unit = |x: &Monomial| {
        let e = if counit_monomial(x) { ctx.one() } else { ctx.zero() };
        Combination::term(Monomial::ONE, e)
    };
    for (name, left) in [("left antipode axiom", true), ("right antipode axiom", false)] {
        report.push(Check::run_with_init(
            name,
            &monos,
            || CoproductEngine::new(rs, gens),
            |eng, x| {
                let dx = eng.delta_monomial(x);
                let mut total = Combination::zero(ctx);
                for ((x1, x2), c) in dx.iter() {
                    let (l, r) = if left {
                        (ant.apply_monomial(&mut eng.mult, x1), Ok(Combination::basis(ctx, *x2)))
                    } else {
                        (Ok(Combination::basis(ctx, *x1)), ant.apply_monomial(&mut eng.mult, x2))
                    };
                    match (l, r) {
                        (Ok(l), Ok(r)) => total.add_scaled(&eng.mult.multiply(&l, &r), c),
                        (Err(e), _) | (_, Err(e)) => return Some(format!("{x}: {e}")),
                    }
                }
                let expect = unit(x);
                (total != expect).then(|| format!("{x}: got {total}, expected {expect}"))
            },
        ));
    }
    let dp = rs.p_weight();
    let mut pairs = Vec::new();
    for x in &monos {
        for y in &monos {
            if x.weight(dp) + y.weight(dp) <= degree_bound {
                pairs.push((*x, *y));
            }
        }
    }
    report.push(Check::run_with_init(
        "antipode anti-multiplicative",
        &pairs,
        || Multiplier::new(rs),
        |mult, (x, y)| {
            let xy = mult.multiply_monomials(x, y);
            let res = ant.apply(mult, &xy).and_then(|sxy| {
                let sx = ant.apply_monomial(mult, x)?;
                let sy = ant.apply_monomial(mult, y)?;
                Ok((sxy, mult.multiply(&sy, &sx)))
            });
            match res {
                Ok((a, b)) if a == b => None,
                Ok((a, b)) => Some(format!("S(({x})({y})) = {a}, S({y})S({x}) = {b}")),
                Err(e) => Some(format!("({x})({y}): {e}")),
            }
        },
    ));
    report.push(Check::run_with_init(
        "counit multiplicative",
        &pairs,
        || Multiplier::new(rs),
        |mult, (x, y)| {
            let xy = counit(&mult.multiply_monomials(x, y));
            let ex = counit(&Combination::basis(ctx, *x));
            let ey = counit(&Combination::basis(ctx, *y));
            (xy != &ex * &ey).then(|| format!("ε(({x})({y})) = {xy}"))
        },
    ));
    let mut mult = Multiplier::new(rs);
    let h = Combination::basis(ctx, Monomial::new(0, 0, 1));
    let sh = ant.generator(Gen::H).clone();
    let one = Combination::basis(ctx, Monomial::ONE);
    let (a, b) = (mult.multiply(&sh, &h), mult.multiply(&h, &sh));
    report.push(if a == one && b == one {
        Check::passed("S(h) inverts h", 2)
    } else {
        Check::failed("S(h) inverts h", 2, format!("S(h)h = {a}, hS(h) = {b}"))
    });
    report
}
