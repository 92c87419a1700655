use crate::error::Result;
use crate::graded_hopf::GradedHopf;
use crate::linear::Combination;
use crate::presentations::confluence::exponent_window;
use crate::presentations::{path_to_pbw, pbw_monomials, pbw_to_path, HopfFamilyDescriptor, Multiplier, RewriteSystem};
use crate::report::{Check, VerificationReport};

/// Compares products in `desc` with the graded products of the associated graded family,
/// transported through the path basis: the top-weight part must agree and the rest must have lower weight.
pub fn verify_degeneration(desc: &HopfFamilyDescriptor, degree_bound: u64) -> Result<VerificationReport> {
    let graded_desc = desc.graded_counterpart()?;
    let graded = GradedHopf::new(graded_desc.kind(), graded_desc.q())?;
    let rs = RewriteSystem::presentation(desc);
    let dp = rs.p_weight();
    let monos = pbw_monomials(desc, degree_bound, exponent_window(desc, desc.scale()));
    let mut pairs = Vec::new();
    for x in &monos {
        for y in &monos {
            if x.weight(dp) + y.weight(dp) <= degree_bound {
                pairs.push((*x, *y));
            }
        }
    }
    let ctx = desc.context();
    let mut report = VerificationReport::new(desc.family().tag(), desc.describe());
    report.params.insert("degree".into(), degree_bound.to_string());
    report.params.insert("graded".into(), graded_desc.to_string());
    report.push(Check::run_with_init(
        "leading terms match graded product",
        &pairs,
        || Multiplier::new(&rs),
        |mult, (x, y)| {
            let w = x.weight(dp) + y.weight(dp);
            let prod = mult.multiply_monomials(x, y);
            let mut lead = prod.clone();
            lead.retain(|m| m.weight(dp) == w);
            let expected = pbw_to_path(&graded_desc, &Combination::basis(ctx, *x))
                .and_then(|px| {
                    let py = pbw_to_path(&graded_desc, &Combination::basis(ctx, *y))?;
                    graded.multiply(&px, &py)
                })
                .and_then(|pxy| path_to_pbw(&graded_desc, &pxy));
            match expected {
                Ok(e) if e == lead => None,
                Ok(e) => Some(format!("({x})({y}): leading part {lead}, graded product {e}")),
                Err(err) => Some(format!("({x})({y}): {err}")),
            }
        },
    ));
    report.push(Check::run_with_init(
        "remainder has lower weight",
        &pairs,
        || Multiplier::new(&rs),
        |mult, (x, y)| {
            let w = x.weight(dp) + y.weight(dp);
            let prod = mult.multiply_monomials(x, y);
            prod.keys()
                .find(|m| m.weight(dp) > w)
                .map(|m| format!("({x})({y}) contains {m} of weight {} > {w}", m.weight(dp)))
        },
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{root_of_unity, CyclotomicContext};

    #[test]
    fn deformations_degenerate() {
        let ctx = CyclotomicContext::new(3).unwrap();
        let w = root_of_unity(&ctx, 3).unwrap();
        let d = HopfFamilyDescriptor::cycle_deform(3, &w, &ctx.one()).unwrap();
        let r = verify_degeneration(&d, 6).unwrap();
        assert!(r.passed(), "{r}");
        let ctx = CyclotomicContext::new(2).unwrap();
        let half = HopfFamilyDescriptor::cycle_half(4, &ctx.integer(-1), &ctx.one()).unwrap();
        let r = verify_degeneration(&half, 4).unwrap();
        assert!(r.passed(), "{r}");
    }
}
