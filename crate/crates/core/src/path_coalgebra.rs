//! The path coalgebra of the basic n-cycle and the linear chain: deconcatenation
//! coproduct, vertex counit, length grading, and the coalgebra automorphisms
//! `F^d_λ(j)` that fix all paths of length below `d`.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hopf_quiver::{Path, QuiverKind};
use crate::linear::{split_terms, Combination};
use crate::scalars::{CyclotomicContext, Scalar};

pub type CoalgElement = Combination<Path>;
pub type TensorElement = Combination<(Path, Path)>;

pub fn path_element(ctx: &Arc<CyclotomicContext>, p: Path) -> CoalgElement {
    Combination::basis(ctx, p)
}

/// Common quiver kind of all terms, if the element is nonzero.
pub fn kind_of(x: &CoalgElement) -> Option<QuiverKind> {
    x.keys().next().map(Path::kind)
}

pub fn check_kind(x: &CoalgElement, kind: QuiverKind) -> Result<()> {
    match x.keys().find(|p| p.kind() != kind) {
        None => Ok(()),
        Some(p) => Err(Error::KindMismatch(format!(
            "{p} is a path of {}, expected {kind}",
            p.kind()
        ))),
    }
}

/// `Δ(p_i^l) = Σ_t p_{i+t}^{l−t} ⊗ p_i^t`.
pub fn comultiply_path(ctx: &Arc<CyclotomicContext>, p: &Path) -> TensorElement {
    let mut out = Combination::zero(ctx);
    let one = ctx.one();
    for t in 0..=p.length() {
        let left = Path::new(p.kind(), p.source() + t as i64, p.length() - t);
        let right = Path::new(p.kind(), p.source(), t);
        out.add_term((left, right), &one);
    }
    out
}

pub fn comultiply(x: &CoalgElement) -> TensorElement {
    x.map_linear(|p| comultiply_path(x.context(), p))
}

pub fn counit(x: &CoalgElement) -> Scalar {
    x.iter()
        .filter(|(p, _)| p.is_vertex())
        .fold(x.context().zero(), |acc, (_, c)| acc + c)
}

pub fn degree(x: &CoalgElement) -> Result<u64> {
    x.keys().map(Path::length).max().ok_or(Error::DegreeOfZero)
}

/// `f ⊗ g` applied to a tensor.
pub fn tensor_map(
    t: &TensorElement,
    f: impl Fn(&Path) -> CoalgElement,
    g: impl Fn(&Path) -> CoalgElement,
) -> TensorElement {
    t.map_linear(|(a, b)| tensor_product(&f(a), &g(b)))
}

pub fn tensor_product(x: &CoalgElement, y: &CoalgElement) -> TensorElement {
    let mut out = Combination::zero(x.context());
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_term((*a, *b), &(ca * cb));
        }
    }
    out
}

/// `(Δ ⊗ id)Δ` and `(id ⊗ Δ)Δ` as triple tensors.
pub fn iterated_coproducts(
    ctx: &Arc<CyclotomicContext>,
    p: &Path,
) -> (Combination<(Path, Path, Path)>, Combination<(Path, Path, Path)>) {
    let d = comultiply_path(ctx, p);
    let mut left = Combination::zero(ctx);
    let mut right = Combination::zero(ctx);
    for ((a, b), c) in d.iter() {
        for ((a1, a2), c1) in comultiply_path(ctx, a).iter() {
            left.add_term((*a1, *a2, *b), &(c * c1));
        }
        for ((b1, b2), c2) in comultiply_path(ctx, b).iter() {
            right.add_term((*a, *b1, *b2), &(c * c2));
        }
    }
    (left, right)
}

/// The locally nilpotent coderivation whose exponential is `F^d_λ(j)`:
/// `φ(p_i^l) = −[i ≡ j]·p_{i+d}^{l−d} + [i+l ≡ j+d]·p_i^{l−d}` for `l ≥ d`.
fn lowering(ctx: &Arc<CyclotomicContext>, d: u64, j: i64, p: &Path) -> CoalgElement {
    let mut out = Combination::zero(ctx);
    if p.length() < d {
        return out;
    }
    let kind = p.kind();
    let rest = p.length() - d;
    if kind.same_index(p.source(), j) {
        out.add_term(Path::new(kind, p.source() + d as i64, rest), &ctx.integer(-1));
    }
    if kind.same_index(p.source() + p.length() as i64, j + d as i64) {
        out.add_term(Path::new(kind, p.source(), rest), &ctx.one());
    }
    out
}

/// `exp(λφ)`; `φ` lowers length by `d`, so the series is finite.
fn exp_lowering(x: &CoalgElement, d: u64, j: i64, lambda: &Scalar) -> CoalgElement {
    let ctx = x.context().clone();
    let mut out = x.clone();
    let mut term = x.clone();
    let mut k = 1i64;
    while !term.is_zero() && !lambda.is_zero() {
        term = term.map_linear(|p| lowering(&ctx, d, j, p));
        let coeff = lambda
            .pow(k as u64)
            .div(&ctx.integer(factorial(k)))
            .expect("nonzero factorial");
        out.add_scaled(&term, &coeff);
        k += 1;
    }
    out
}

fn factorial(k: i64) -> i64 {
    (1..=k).product()
}

/// `F^d_λ(j)` on `kZ` for the basic n-cycle: identity below length `d`,
/// `p_j^d ↦ p_j^d + λ(g^j − g^{j+d})`, extended as a coalgebra automorphism.
pub fn cycle_automorphism(
    n: u64,
    d: u64,
    lambda: &Scalar,
    j: i64,
    x: &CoalgElement,
) -> Result<CoalgElement> {
    if d <= 1 {
        return Err(Error::Automorphism(format!("d must exceed 1 (got {d})")));
    }
    check_kind(x, QuiverKind::Cycle(n))?;
    Ok(exp_lowering(x, d, j, lambda))
}

/// `F^d_λ` on `kA` for the linear chain: `p_0^d ↦ p_0^d + λ(1 − g^d)`.
pub fn chain_automorphism(d: u64, lambda: &Scalar, x: &CoalgElement) -> Result<CoalgElement> {
    if d == 0 {
        return Err(Error::Automorphism("d must be at least 1".into()));
    }
    check_kind(x, QuiverKind::Chain)?;
    Ok(exp_lowering(x, d, 0, lambda))
}

pub fn parse_element(ctx: &Arc<CyclotomicContext>, kind: QuiverKind, text: &str) -> Result<CoalgElement> {
    let mut out = Combination::zero(ctx);
    for (c, key) in split_terms(text).map_err(Error::Parse)? {
        let coeff = match c {
            Some(c) => ctx.parse(c)?,
            None => ctx.one(),
        };
        out.add_term(Path::parse(kind, key)?, &coeff);
    }
    Ok(out)
}

pub fn element_to_json(x: &CoalgElement) -> Value {
    Value::Array(
        x.iter()
            .map(|(p, c)| json!({"source": p.source(), "length": p.length(), "coeff": c.to_string()}))
            .collect(),
    )
}
