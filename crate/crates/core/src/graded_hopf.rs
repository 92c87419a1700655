//! The graded Hopf algebras `kZ(q)` and `kA(q)` on path coalgebras, given by
//! the closed product `p_i^l · p_j^m = q^{im} binom(l+m, l)_q p_{i+j}^{l+m}`,
//! and an exhaustive checker for the bialgebra axioms.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hopf_quiver::{enumerate_paths, Path, QuiverKind};
use crate::linear::Combination;
use crate::path_coalgebra::{comultiply_path, counit, CoalgElement, TensorElement};
use crate::report::{Check, VerificationReport};
use crate::scalars::{CyclotomicContext, Order, QBinomialTable, Scalar};

const TABLE_SIZE: usize = 48;

#[derive(Debug, Clone)]
pub struct GradedHopf {
    kind: QuiverKind,
    q: Scalar,
    q_inv: Scalar,
    order: Order,
    binom: QBinomialTable,
}

impl GradedHopf {
    /// `kZ(q)` on the basic n-cycle; requires `q^n = 1`.
    pub fn cycle(n: u64, q: &Scalar) -> Result<Self> {
        if n == 0 {
            return Err(Error::Descriptor("n must be positive".into()));
        }
        if !q.pow(n).is_one() {
            return Err(Error::Descriptor(format!("q^n must equal 1 for the {n}-cycle (q = {q})")));
        }
        Self::build(QuiverKind::Cycle(n), q)
    }

    /// `kA(q)` on the linear chain; requires `q ≠ 0`.
    pub fn chain(q: &Scalar) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::Descriptor("q must be nonzero for the chain".into()));
        }
        Self::build(QuiverKind::Chain, q)
    }

    pub fn new(kind: QuiverKind, q: &Scalar) -> Result<Self> {
        match kind {
            QuiverKind::Cycle(n) => Self::cycle(n, q),
            QuiverKind::Chain => Self::chain(q),
        }
    }

    fn build(kind: QuiverKind, q: &Scalar) -> Result<Self> {
        Ok(GradedHopf {
            kind,
            q: q.clone(),
            q_inv: q.inv()?,
            order: q.order()?,
            binom: QBinomialTable::new(q, TABLE_SIZE),
        })
    }

    pub fn kind(&self) -> QuiverKind {
        self.kind
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn context(&self) -> &Arc<CyclotomicContext> {
        self.q.context()
    }

    pub fn q_pow(&self, e: i64) -> Scalar {
        if e >= 0 {
            self.q.pow(e as u64)
        } else {
            self.q_inv.pow(e.unsigned_abs())
        }
    }

    fn check(&self, p: &Path) -> Result<()> {
        if p.kind() != self.kind {
            return Err(Error::KindMismatch(format!(
                "{p} belongs to {}, algebra is on {}",
                p.kind(),
                self.kind
            )));
        }
        Ok(())
    }

    /// Coefficient and target of `p_i^l · p_j^m`.
    pub fn product_term(&self, x: &Path, y: &Path) -> (Scalar, Path) {
        let (l, m) = (x.length(), y.length());
        let coeff = self.q_pow(x.source() * m as i64)
            * self.binom.get((l + m) as usize, l as usize);
        (coeff, Path::new(self.kind, x.source() + y.source(), l + m))
    }

    pub fn multiply_paths(&self, x: &Path, y: &Path) -> Result<CoalgElement> {
        self.check(x)?;
        self.check(y)?;
        let (c, p) = self.product_term(x, y);
        Ok(Combination::term(p, c))
    }

    pub fn multiply(&self, x: &CoalgElement, y: &CoalgElement) -> Result<CoalgElement> {
        for p in x.keys().chain(y.keys()) {
            self.check(p)?;
        }
        let mut out = Combination::zero(self.context());
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                let (c, p) = self.product_term(a, b);
                out.add_term(p, &(c * ca * cb));
            }
        }
        Ok(out)
    }

    pub fn unit(&self) -> CoalgElement {
        Combination::basis(self.context(), Path::vertex(self.kind, 0))
    }

    /// Component-wise product `(a⊗b)(c⊗d) = ac ⊗ bd`.
    pub fn multiply_tensor(&self, x: &TensorElement, y: &TensorElement) -> TensorElement {
        let mut out = Combination::zero(self.context());
        for ((a, b), cx) in x.iter() {
            for ((c, d), cy) in y.iter() {
                let (c1, p1) = self.product_term(a, c);
                if c1.is_zero() {
                    continue;
                }
                let (c2, p2) = self.product_term(b, d);
                out.add_term((p1, p2), &(c1 * c2 * cx * cy));
            }
        }
        out
    }

    /// The scalar `c` with `(p_0^d)^l = c · p_0^{dl}`, `d = ord(q)`.
    pub fn power_coefficient(&self, l: u64) -> Result<Scalar> {
        let d = self.finite_order()?;
        let p = Combination::basis(self.context(), Path::new(self.kind, 0, d));
        Ok(self.power(&p, l).coeff(&Path::new(self.kind, 0, d * l)))
    }

    fn finite_order(&self) -> Result<u64> {
        match self.order {
            Order::Infinite => Err(Error::InfiniteOrder("the power formula needs ord(q) finite".into())),
            Order::Finite(d) if d < 2 => Err(Error::TrivialRoot(d)),
            Order::Finite(d) => Ok(d),
        }
    }

    fn power(&self, x: &CoalgElement, e: u64) -> CoalgElement {
        (0..e).fold(self.unit(), |acc, _| self.multiply(&acc, x).expect("same kind"))
    }

    /// Checks `(p_0^d)^l = p_0^{dl}` and `p_0^{dl} a_0^j = j!_q p_0^{j+dl}` with `d = ord(q)`.
    pub fn power_formula_check(&self, l: u64, j: u64) -> Result<bool> {
        let d = self.finite_order()?;
        let ctx = self.context();
        let path = |len| Combination::basis(ctx, Path::new(self.kind, 0, len));
        let lhs1 = self.power(&path(d), l);
        let ok1 = lhs1 == path(d * l);
        let a0 = path(1);
        let lhs2 = self.multiply(&path(d * l), &self.power(&a0, j))?;
        let fact = crate::scalars::q_factorial(j, &self.q);
        let ok2 = lhs2 == path(j + d * l).scale(&fact);
        Ok(ok1 && ok2)
    }

    pub fn structure_table(&self, max_len: u64, window: RangeInclusive<i64>) -> Vec<TableRow> {
        let paths = enumerate_paths(self.kind, max_len, window);
        let mut rows = Vec::with_capacity(paths.len() * paths.len());
        for x in &paths {
            for y in &paths {
                let (c, p) = self.product_term(x, y);
                rows.push(TableRow {
                    left: x.to_string(),
                    right: y.to_string(),
                    coeff: c.to_string(),
                    result: if c.is_zero() { "0".into() } else { p.to_string() },
                });
            }
        }
        rows
    }

    pub fn describe(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        match self.kind {
            QuiverKind::Cycle(n) => {
                m.insert("quiver".into(), "cycle".into());
                m.insert("n".into(), n.to_string());
            }
            QuiverKind::Chain => {
                m.insert("quiver".into(), "chain".into());
            }
        }
        m.insert("q".into(), self.q.to_string());
        m.insert("qOrder".into(), self.order.to_string());
        m
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub left: String,
    pub right: String,
    pub coeff: String,
    pub result: String,
}

/// Bounds for [`verify_graded_bialgebra_with`].
#[derive(Debug, Clone)]
pub struct GradedCheckOptions {
    pub pair_len: u64,
    pub triple_len: u64,
    /// Chain sources; defaults to a window of width `2·pair_len` around 0.
    pub window: Option<RangeInclusive<i64>>,
}

impl GradedCheckOptions {
    pub fn uniform(max_len: u64) -> Self {
        GradedCheckOptions {
            pair_len: max_len,
            triple_len: max_len,
            window: None,
        }
    }
}

pub fn verify_graded_bialgebra(params: &GradedHopf, max_len: u64) -> VerificationReport {
    verify_graded_bialgebra_with(params, &GradedCheckOptions::uniform(max_len))
}

pub fn verify_graded_bialgebra_with(h: &GradedHopf, opts: &GradedCheckOptions) -> VerificationReport {
    let ctx = h.context().clone();
    let mut params = h.describe();
    params.insert("pairLen".into(), opts.pair_len.to_string());
    params.insert("tripleLen".into(), opts.triple_len.to_string());
    let mut report = VerificationReport::new("graded", params);
    let w = opts.pair_len as i64;
    let window = opts.window.clone().unwrap_or(-w..=(w - 1).max(0));
    let paths = enumerate_paths(h.kind, opts.pair_len, window.clone());
    let small = enumerate_paths(h.kind, opts.triple_len, window);
    let el = |p: &Path| Combination::basis(&ctx, *p);

    let mut triples = Vec::with_capacity(small.len().pow(3));
    for x in &small {
        for y in &small {
            for z in &small {
                triples.push((*x, *y, *z));
            }
        }
    }
    report.push(Check::run("associativity", &triples, |(x, y, z)| {
        let xy = h.multiply(&el(x), &el(y)).ok()?;
        let yz = h.multiply(&el(y), &el(z)).ok()?;
        let left = h.multiply(&xy, &el(z)).ok()?;
        let right = h.multiply(&el(x), &yz).ok()?;
        (left != right).then(|| format!("({x}·{y})·{z} = {left} but {x}·({y}·{z}) = {right}"))
    }));

    let unit = h.unit();
    report.push(Check::run("unit", &paths, |x| {
        let l = h.multiply(&unit, &el(x)).ok()?;
        let r = h.multiply(&el(x), &unit).ok()?;
        (l != el(x) || r != el(x)).then(|| format!("1·{x} = {l}, {x}·1 = {r}"))
    }));

    let pairs: Vec<(Path, Path)> = paths
        .iter()
        .flat_map(|x| paths.iter().map(move |y| (*x, *y)))
        .collect();
    report.push(Check::run("coproduct multiplicative", &pairs, |(x, y)| {
        let (c, p) = h.product_term(x, y);
        let lhs = comultiply_path(&ctx, &p).scale(&c);
        let rhs = h.multiply_tensor(&comultiply_path(&ctx, x), &comultiply_path(&ctx, y));
        (lhs != rhs).then(|| format!("Δ({x}·{y}) = {lhs} but Δ({x})Δ({y}) = {rhs}"))
    }));
    report.push(Check::run("counit multiplicative", &pairs, |(x, y)| {
        let xy = h.multiply(&el(x), &el(y)).ok()?;
        let lhs = counit(&xy);
        let rhs = counit(&el(x)) * counit(&el(y));
        (lhs != rhs).then(|| format!("ε({x}·{y}) = {lhs} but ε({x})ε({y}) = {rhs}"))
    }));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{q_factorial, root_of_unity};

    #[test]
    fn product_examples() {
        let ctx = CyclotomicContext::new(3).unwrap();
        let w = root_of_unity(&ctx, 3).unwrap();
        let h = GradedHopf::cycle(3, &w).unwrap();
        let k = QuiverKind::Cycle(3);
        let x = h.multiply_paths(&Path::new(k, 1, 1), &Path::new(k, 1, 1)).unwrap();
        assert_eq!(x, Combination::term(Path::new(k, 2, 2), ctx.integer(-1)));
        // g · p_i^l = q^l p_{i+1}^l
        let x = h.multiply_paths(&Path::vertex(k, 1), &Path::new(k, 2, 2)).unwrap();
        assert_eq!(x, Combination::term(Path::new(k, 0, 2), w.pow(2)));
        // a_0^3 = 3!_ω p_0^3 = 0
        let a = Combination::basis(&ctx, Path::new(k, 0, 1));
        assert!(h.multiply(&h.multiply(&a, &a).unwrap(), &a).unwrap().is_zero());
        assert!(q_factorial(3, &w).is_zero());
    }

    #[test]
    fn vanishing_and_powers() {
        let ctx = CyclotomicContext::new(4).unwrap();
        let i = root_of_unity(&ctx, 4).unwrap();
        let h = GradedHopf::cycle(4, &i).unwrap();
        let k = QuiverKind::Cycle(4);
        assert!(h.multiply_paths(&Path::new(k, 1, 2), &Path::new(k, 0, 3)).unwrap().is_zero());
        // the product formula gives (p_0^d)^l = l!·p_0^{dl}, so the first identity holds only for l ≤ 1
        assert!(!h.power_formula_check(2, 3).unwrap());
        assert!(h.power_formula_check(1, 3).unwrap());
        for l in 0..5u64 {
            let fact: i64 = (1..=l as i64).product();
            assert_eq!(h.power_coefficient(l).unwrap(), ctx.integer(fact));
        }
        let h2 = GradedHopf::cycle(2, &ctx.integer(-1)).unwrap();
        assert!(h2.power_formula_check(1, 1).unwrap());
        let p = Combination::basis(&ctx, Path::new(QuiverKind::Cycle(2), 0, 2));
        assert_eq!(
            h2.multiply(&p, &p).unwrap(),
            Combination::term(Path::new(QuiverKind::Cycle(2), 0, 4), ctx.integer(2))
        );
        let chain = GradedHopf::chain(&ctx.integer(2)).unwrap();
        assert!(matches!(chain.power_formula_check(1, 1), Err(Error::InfiniteOrder(_))));
        assert!(GradedHopf::cycle(3, &i).is_err());
        assert!(h.multiply_paths(&Path::new(QuiverKind::Chain, 0, 1), &Path::new(k, 0, 1)).is_err());
    }

    #[test]
    fn order_three_in_six_cycle() {
        let ctx = CyclotomicContext::new(6).unwrap();
        let w = root_of_unity(&ctx, 3).unwrap();
        let h = GradedHopf::cycle(6, &w).unwrap();
        assert!(h.power_formula_check(1, 2).unwrap());
        assert!(!h.power_formula_check(3, 2).unwrap());
        assert_eq!(h.power_coefficient(3).unwrap(), ctx.integer(6));
    }

    #[test]
    fn small_reports_pass() {
        let ctx = CyclotomicContext::new(4).unwrap();
        for (n, q) in [(2, ctx.integer(-1)), (4, ctx.zeta()), (4, ctx.integer(-1))] {
            let h = GradedHopf::cycle(n, &q).unwrap();
            let r = verify_graded_bialgebra(&h, 4);
            assert!(r.passed(), "{r}");
        }
        let chain = GradedHopf::chain(&ctx.ratio(1, 2).unwrap()).unwrap();
        let r = verify_graded_bialgebra_with(
            &chain,
            &GradedCheckOptions { pair_len: 3, triple_len: 2, window: Some(-2..=2) },
        );
        assert!(r.passed(), "{r}");
    }
}
