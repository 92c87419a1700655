use crate::error::{Error, Result};
use crate::graded_hopf::GradedHopf;
use crate::hopf_quiver::Path;
use crate::linear::Combination;
use crate::path_coalgebra::CoalgElement;
use crate::report::{Check, VerificationReport};
use crate::scalars::{q_factorial, Scalar};

use super::confluence::{exponent_window, pbw_monomials};
use super::descriptor::HopfFamilyDescriptor;
use super::rewrite::{AlgElement, Monomial, Multiplier, RewriteSystem};

fn factorial(k: u64, desc: &HopfFamilyDescriptor) -> Scalar {
    (1..=k as i64).fold(desc.context().one(), |acc, m| acc * desc.context().integer(m))
}

fn image(desc: &HopfFamilyDescriptor, m: &Monomial, with_k_factorial: bool) -> Result<(Scalar, Path)> {
    let kind = desc.kind();
    if !desc.is_graded() {
        let d = desc.p_weight();
        return match (m.k, m.j, m.i) {
            (0, 0, i) => Ok((desc.context().one(), Path::vertex(kind, i))),
            (0, 1, 0) => Ok((desc.context().one(), Path::new(kind, 0, 1))),
            (1, 0, 0) if d.is_some() => Ok((desc.context().one(), Path::new(kind, 0, d.unwrap()))),
            _ => Err(Error::GeneratorLevelOnly),
        };
    }
    let d = desc.p_weight().unwrap_or(0);
    let mut c = q_factorial(m.j, desc.q());
    if with_k_factorial {
        c = c * factorial(m.k, desc);
    }
    Ok((c, Path::new(kind, m.i, m.j + d * m.k)))
}

/// `p^k a^j h^i ↦ k!·j!_q·p_i^{j+dk}` on graded algebras; on deformed ones only the generators
/// `h^i`, `a`, `p` are sent to `g_i`, `p_0^1`, `p_0^d`.
pub fn pbw_to_path(desc: &HopfFamilyDescriptor, x: &AlgElement) -> Result<CoalgElement> {
    let mut out = Combination::zero(desc.context());
    for (m, c) in x.iter() {
        let (s, p) = image(desc, m, true)?;
        out.add_term(p, &(s * c));
    }
    Ok(out)
}

/// The normalization `p^k a^j h^i ↦ j!_q·p_i^{j+dk}` without the `k!` factor.
/// It is not multiplicative once `k ≥ 2`, because `(p_0^d)^k = k!·p_0^{dk}`.
pub fn pbw_to_path_literal(desc: &HopfFamilyDescriptor, x: &AlgElement) -> Result<CoalgElement> {
    let mut out = Combination::zero(desc.context());
    for (m, c) in x.iter() {
        let (s, p) = image(desc, m, false)?;
        out.add_term(p, &(s * c));
    }
    Ok(out)
}

/// Inverse of [`pbw_to_path`] on graded algebras.
pub fn path_to_pbw(desc: &HopfFamilyDescriptor, x: &CoalgElement) -> Result<AlgElement> {
    inverse(desc, x, true)
}

fn inverse(desc: &HopfFamilyDescriptor, x: &CoalgElement, with_k_factorial: bool) -> Result<AlgElement> {
    let mut out = Combination::zero(desc.context());
    for (p, c) in x.iter() {
        if p.kind() != desc.kind() {
            return Err(Error::KindMismatch(format!("{p} is not a path of {}", desc.kind())));
        }
        let m = if desc.is_graded() {
            match desc.p_weight() {
                Some(d) => Monomial::new(p.length() / d, p.length() % d, p.source()),
                None => Monomial::new(0, p.length(), p.source()),
            }
        } else {
            match (p.length(), p.source()) {
                (0, i) => Monomial::new(0, 0, i),
                (1, 0) => Monomial::new(0, 1, 0),
                (l, 0) if Some(l) == desc.p_weight() => Monomial::new(1, 0, 0),
                _ => return Err(Error::GeneratorLevelOnly),
            }
        };
        if matches!(desc.a_bound(), Some(b) if m.j >= b) {
            return Err(Error::OutsideFamily(format!("{p} is not in the image of the algebra")));
        }
        let (s, _) = image(desc, &m, with_k_factorial)?;
        out.add_term(m, &c.div(&s)?);
    }
    Ok(out)
}

/// Checks that the basis map is a bijection on monomials and turns products into path products.
pub fn check_basis_change(desc: &HopfFamilyDescriptor, max_weight: u64, literal: bool) -> Result<VerificationReport> {
    if !desc.is_graded() {
        return Err(Error::GeneratorLevelOnly);
    }
    let graded = GradedHopf::new(desc.kind(), desc.q())?;
    let rs = RewriteSystem::presentation(desc);
    let window = exponent_window(desc, desc.scale());
    let monos = pbw_monomials(desc, max_weight, window);
    let map = |x: &AlgElement| {
        if literal {
            pbw_to_path_literal(desc, x)
        } else {
            pbw_to_path(desc, x)
        }
    };
    let mut report = VerificationReport::new(desc.family().tag(), desc.describe());
    report.params.insert("map".into(), if literal { "literal" } else { "k!·j!_q" }.into());
    report.params.insert("maxWeight".into(), max_weight.to_string());
    report.push(Check::run("round trip", &monos, |m| {
        let x = Combination::basis(desc.context(), *m);
        let back = map(&x).and_then(|p| inverse(desc, &p, !literal));
        match back {
            Ok(y) if y == x => None,
            Ok(y) => Some(format!("{m} comes back as {y}")),
            Err(e) => Some(format!("{m}: {e}")),
        }
    }));
    let dp = rs.p_weight();
    let mut pairs = Vec::new();
    for x in &monos {
        for y in &monos {
            if x.weight(dp) + y.weight(dp) <= max_weight {
                pairs.push((*x, *y));
            }
        }
    }
    report.push(Check::run("multiplicative", &pairs, |(x, y)| {
        let mut mult = Multiplier::new(&rs);
        let prod = mult.multiply_monomials(x, y);
        let ctx = desc.context();
        let sides = map(&prod).and_then(|lhs| {
            let px = map(&Combination::basis(ctx, *x))?;
            let py = map(&Combination::basis(ctx, *y))?;
            Ok((lhs, graded.multiply(&px, &py)?))
        });
        match sides {
            Ok((lhs, rhs)) if lhs == rhs => None,
            Ok((lhs, rhs)) => Some(format!("({x})({y}): algebra side {lhs}, path side {rhs}")),
            Err(e) => Some(format!("({x})({y}): {e}")),
        }
    }));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{root_of_unity, CyclotomicContext};

    #[test]
    fn corrected_map_is_multiplicative() {
        let ctx = CyclotomicContext::new(6).unwrap();
        let q = root_of_unity(&ctx, 3).unwrap();
        let desc = HopfFamilyDescriptor::cycle_graded(3, &q).unwrap();
        let r = check_basis_change(&desc, 9, false).unwrap();
        assert!(r.passed(), "{r}");
        let lit = check_basis_change(&desc, 9, true).unwrap();
        assert!(!lit.check("multiplicative").unwrap().pass);
    }

    #[test]
    fn deformed_maps_generators_only() {
        let ctx = CyclotomicContext::new(3).unwrap();
        let q = root_of_unity(&ctx, 3).unwrap();
        let desc = HopfFamilyDescriptor::cycle_deform(3, &q, &ctx.one()).unwrap();
        let p = Combination::basis(&ctx, Monomial::new(1, 0, 0));
        let img = pbw_to_path(&desc, &p).unwrap();
        assert_eq!(img, Combination::basis(&ctx, Path::new(desc.kind(), 0, 3)));
        assert_eq!(path_to_pbw(&desc, &img).unwrap(), p);
        let pa = Combination::basis(&ctx, Monomial::new(1, 1, 0));
        assert!(matches!(pbw_to_path(&desc, &pa), Err(Error::GeneratorLevelOnly)));
    }
}
