use std::sync::Arc;

use crate::error::Result;
use crate::scalars::{divisors, primitive_roots, CyclotomicContext};

use super::descriptor::{Family, HopfFamilyDescriptor};

/// The zero-parameter deformations are the graded algebras themselves.
fn normalize(d: &HopfFamilyDescriptor) -> HopfFamilyDescriptor {
    let graded = match d.family() {
        Family::CycleDeform | Family::CycleHalfDeform | Family::ChainQ1Deform | Family::ChainRootDeform
            if d.param().is_zero() =>
        {
            d.graded_counterpart().ok()
        }
        _ => None,
    };
    graded.unwrap_or_else(|| d.clone())
}

/// Whether two descriptors present isomorphic Hopf algebras.
pub fn classify_iso(a: &HopfFamilyDescriptor, b: &HopfFamilyDescriptor) -> bool {
    let (a, b) = (normalize(a), normalize(b));
    if a.family() != b.family() || a.n() != b.n() {
        return false;
    }
    let zero_alike = a.param().is_zero() == b.param().is_zero();
    match a.family() {
        Family::CycleGraded | Family::ChainGraded => a.q() == b.q(),
        Family::CycleDeform | Family::CycleHalfDeform => a.q() == b.q() && zero_alike,
        Family::ChainQ1Deform => a.param() == b.param(),
        Family::ChainRootDeform => a.q() == b.q() && a.param() == b.param(),
        Family::TypeOneCycle => {
            a.q() == b.q() && (a.param() == b.param() || a.root_order() == a.n())
        }
        Family::TypeOneChain => a.q() == b.q() && a.param() == b.param(),
    }
}

/// Simple-pointed Hopf algebras on the basic cycles with `2 ≤ n ≤ max_n`, and on the chain
/// with roots of unity of order at most `max_n` (`2` stands in for the non-roots).
///
/// The one-vertex loop is left out: its Hopf structures are cocommutative. Both values of `μ` are
/// listed for every `q`, although at `ord(q) = n` the two presentations coincide.
pub fn simple_pointed_catalog(
    ctx: &Arc<CyclotomicContext>,
    max_n: u64,
) -> Result<Vec<HopfFamilyDescriptor>> {
    let one = ctx.one();
    let zero = ctx.zero();
    let mut out = Vec::new();
    for n in 2..=max_n {
        out.push(HopfFamilyDescriptor::cycle_graded(n, &one)?);
        for d in divisors(n).into_iter().filter(|&d| d > 1) {
            for q in primitive_roots(ctx, d)? {
                for mu in [&zero, &one] {
                    out.push(HopfFamilyDescriptor::type_one_cycle(n, &q, mu)?);
                }
            }
        }
    }
    out.push(HopfFamilyDescriptor::chain_graded(&one)?);
    out.push(HopfFamilyDescriptor::chain_graded(&ctx.integer(2))?);
    out.push(HopfFamilyDescriptor::chain_q1(ctx, &one)?);
    for d in 2..=max_n {
        for q in primitive_roots(ctx, d)? {
            for mu in [&zero, &one] {
                out.push(HopfFamilyDescriptor::type_one_chain(&q, mu)?);
            }
        }
    }
    Ok(out)
}
