use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hopf_quiver::QuiverKind;
use crate::linear::{Combination, TermKey};
use crate::scalars::{q_factorial, q_int, CyclotomicContext, Scalar};

use super::descriptor::{ChainCommutator, Family, HalfCoefficient, HopfFamilyDescriptor};

/// Generators, ordered `p < a < H < h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    P,
    A,
    HInv,
    H,
}

impl Gen {
    pub fn symbol(self) -> &'static str {
        match self {
            Gen::P => "p",
            Gen::A => "a",
            Gen::HInv => "H",
            Gen::H => "h",
        }
    }
}

/// A word in the generators together with its filtration weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    weight: u64,
    gens: Vec<Gen>,
}

impl Word {
    pub fn gens(&self) -> &[Gen] {
        &self.gens
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }
}

/// Weight first, then length, then lexicographic.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .cmp(&other.weight)
            .then(self.gens.len().cmp(&other.gens.len()))
            .then_with(|| self.gens.cmp(&other.gens))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn render_gens(gens: &[Gen]) -> String {
    if gens.is_empty() {
        return "1".into();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < gens.len() {
        let g = gens[i];
        let mut run = 1;
        while i + run < gens.len() && gens[i + run] == g {
            run += 1;
        }
        parts.push(if run == 1 {
            g.symbol().to_string()
        } else {
            format!("{}^{run}", g.symbol())
        });
        i += run;
    }
    parts.join(" ")
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_gens(&self.gens))
    }
}

impl TermKey for Word {
    fn render(&self) -> String {
        self.to_string()
    }
}

/// PBW monomial `p^k a^j h^i`; on the chain a negative `i` stands for `H^{-i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub k: u64,
    pub j: u64,
    pub i: i64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { k: 0, j: 0, i: 0 };

    pub fn new(k: u64, j: u64, i: i64) -> Self {
        Monomial { k, j, i }
    }

    pub fn gens(&self) -> Vec<Gen> {
        let mut out = vec![Gen::P; self.k as usize];
        out.extend(std::iter::repeat(Gen::A).take(self.j as usize));
        let g = if self.i >= 0 { Gen::H } else { Gen::HInv };
        out.extend(std::iter::repeat(g).take(self.i.unsigned_abs() as usize));
        out
    }

    /// Filtration weight `k·d + j` for `p` of weight `d`.
    pub fn weight(&self, p_weight: u64) -> u64 {
        self.k * p_weight + self.j
    }

    pub fn from_gens(gens: &[Gen]) -> Option<Monomial> {
        let mut m = Monomial::ONE;
        let mut stage = 0;
        for &g in gens {
            let s = match g {
                Gen::P => 0,
                Gen::A => 1,
                Gen::H | Gen::HInv => 2,
            };
            if s < stage {
                return None;
            }
            stage = s;
            match g {
                Gen::P => m.k += 1,
                Gen::A => m.j += 1,
                Gen::H if m.i >= 0 => m.i += 1,
                Gen::HInv if m.i <= 0 => m.i -= 1,
                _ => return None,
            }
        }
        Some(m)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut push = |sym: &str, e: u64| match e {
            0 => {}
            1 => parts.push(sym.to_string()),
            e => parts.push(format!("{sym}^{e}")),
        };
        push("p", self.k);
        push("a", self.j);
        if self.i >= 0 {
            push("h", self.i as u64);
        } else {
            push("H", self.i.unsigned_abs());
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

impl TermKey for Monomial {
    fn render(&self) -> String {
        self.to_string()
    }
}

pub type AlgElement = Combination<Monomial>;
pub type WordElement = Combination<Word>;

/// A rewriting rule `lhs → Σ c·w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Vec<Gen>,
    pub rhs: Vec<(Vec<Gen>, Scalar)>,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rhs: Vec<String> = self
            .rhs
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(w, c)| {
                let cs = c.to_string();
                let w = render_gens(w);
                match (cs.as_str(), cs.contains(' ')) {
                    ("1", _) => w,
                    (_, true) => format!("({cs}) * {w}"),
                    _ => format!("{cs} * {w}"),
                }
            })
            .collect();
        let rhs = if rhs.is_empty() { "0".to_string() } else { rhs.join(" + ") };
        write!(f, "{} -> {}", render_gens(&self.lhs), rhs)
    }
}

/// A finite rewriting system on words in `p, a, h` (and `H` on the chain).
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    ctx: Arc<CyclotomicContext>,
    kind: QuiverKind,
    p_weight: u64,
    generators: Vec<Gen>,
    rules: Vec<Rule>,
    descriptor: Option<HopfFamilyDescriptor>,
}

fn pow(g: Gen, e: u64) -> Vec<Gen> {
    vec![g; e as usize]
}

fn cat(parts: &[&[Gen]]) -> Vec<Gen> {
    parts.concat()
}

use Gen::{HInv as BH, A, H, P};

impl RewriteSystem {
    /// A system with arbitrary rules; words must only use `generators`.
    pub fn from_rules(
        ctx: &Arc<CyclotomicContext>,
        kind: QuiverKind,
        p_weight: u64,
        generators: Vec<Gen>,
        rules: Vec<Rule>,
    ) -> Self {
        RewriteSystem {
            ctx: Arc::clone(ctx),
            kind,
            p_weight: p_weight.max(1),
            generators,
            rules,
            descriptor: None,
        }
    }

    /// Generators and oriented relations of the Hopf algebra described by `desc`.
    pub fn presentation(desc: &HopfFamilyDescriptor) -> Self {
        let ctx = desc.context();
        let q = desc.q().clone();
        let lam = desc.param().clone();
        let one = ctx.one();
        let zero = ctx.zero();
        let neg = |c: &Scalar| -c;
        let r = |lhs: Vec<Gen>, rhs: Vec<(Vec<Gen>, Scalar)>| Rule {
            lhs,
            rhs: rhs.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        };
        let mut rules = Vec::new();
        let mut generators = vec![A, H];
        let cycle = desc.family().is_cycle();
        if let Some(n) = desc.n() {
            rules.push(r(pow(H, n), vec![(vec![], one.clone())]));
        } else {
            generators.push(BH);
            rules.push(r(vec![H, BH], vec![(vec![], one.clone())]));
            rules.push(r(vec![BH, H], vec![(vec![], one.clone())]));
        }
        let q_inv = q.inv().expect("q is nonzero");
        let swap_ha = |rules: &mut Vec<Rule>| {
            rules.push(r(vec![H, A], vec![(vec![A, H], q.clone())]));
            if !cycle {
                rules.push(r(vec![BH, A], vec![(vec![A, BH], q_inv.clone())]));
            }
        };
        let d = desc.root_order();
        let with_p = desc.p_weight().is_some();
        if with_p {
            generators.push(P);
        }
        match desc.family() {
            Family::CycleGraded | Family::ChainGraded => {
                swap_ha(&mut rules);
                if let Some(d) = d {
                    rules.push(r(pow(A, d), vec![]));
                    rules.push(r(vec![H, P], vec![(vec![P, H], one.clone())]));
                    if !cycle {
                        rules.push(r(vec![BH, P], vec![(vec![P, BH], one.clone())]));
                    }
                    rules.push(r(vec![A, P], vec![(vec![P, A], one.clone())]));
                }
            }
            Family::CycleDeform => {
                let n = desc.n().unwrap();
                swap_ha(&mut rules);
                rules.push(r(pow(A, n), vec![]));
                rules.push(r(vec![H, P], vec![(vec![P, H], one.clone())]));
                rules.push(r(vec![A, P], vec![(vec![P, A], one.clone()), (vec![A], lam.clone())]));
            }
            Family::CycleHalfDeform => {
                let d = d.unwrap();
                swap_ha(&mut rules);
                rules.push(r(pow(A, d), vec![(vec![], lam.clone()), (pow(H, d), neg(&lam))]));
                rules.push(r(vec![H, P], vec![(vec![P, H], one.clone())]));
                let c = half_commutator_coefficient(desc);
                rules.push(r(
                    vec![A, P],
                    vec![
                        (vec![P, A], one.clone()),
                        (vec![A], c.clone()),
                        (cat(&[&[A], &pow(H, d)]), c),
                    ],
                ));
            }
            Family::ChainQ1Deform => {
                rules.push(r(
                    vec![H, A],
                    vec![(vec![A, H], one.clone()), (vec![H], lam.clone()), (vec![H, H], neg(&lam))],
                ));
                rules.push(r(
                    vec![BH, A],
                    vec![(vec![A, BH], one.clone()), (vec![BH], neg(&lam)), (vec![], lam.clone())],
                ));
            }
            Family::ChainRootDeform => {
                let d = d.unwrap();
                swap_ha(&mut rules);
                rules.push(r(pow(A, d), vec![]));
                rules.push(r(
                    vec![H, P],
                    vec![(vec![P, H], one.clone()), (vec![H], lam.clone()), (pow(H, d + 1), neg(&lam))],
                ));
                rules.push(r(
                    vec![BH, P],
                    vec![(vec![P, BH], one.clone()), (vec![BH], neg(&lam)), (pow(H, d - 1), lam.clone())],
                ));
                let c = match desc.chain_commutator() {
                    ChainCommutator::Corrected => lam.clone(),
                    ChainCommutator::Literal => zero.clone(),
                };
                rules.push(r(vec![A, P], vec![(vec![P, A], one.clone()), (vec![A], c)]));
            }
            Family::TypeOneCycle | Family::TypeOneChain => {
                let d = d.unwrap();
                swap_ha(&mut rules);
                rules.push(r(pow(A, d), vec![(vec![], lam.clone()), (pow(H, d), neg(&lam))]));
            }
        }
        generators.sort();
        RewriteSystem {
            ctx: Arc::clone(ctx),
            kind: desc.kind(),
            p_weight: desc.p_weight().unwrap_or(1),
            generators,
            rules,
            descriptor: Some(desc.clone()),
        }
    }

    pub fn context(&self) -> &Arc<CyclotomicContext> {
        &self.ctx
    }

    pub fn kind(&self) -> QuiverKind {
        self.kind
    }

    pub fn p_weight(&self) -> u64 {
        self.p_weight
    }

    pub fn generators(&self) -> &[Gen] {
        &self.generators
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn descriptor(&self) -> Option<&HopfFamilyDescriptor> {
        self.descriptor.as_ref()
    }

    pub fn word(&self, gens: Vec<Gen>) -> Word {
        let weight = gens
            .iter()
            .map(|g| match g {
                Gen::P => self.p_weight,
                Gen::A => 1,
                _ => 0,
            })
            .sum();
        Word { weight, gens }
    }

    pub fn word_element(&self, gens: Vec<Gen>, coeff: &Scalar) -> WordElement {
        Combination::term(self.word(gens), coeff.clone())
    }

    /// Parses `"a p a h^3"`; `g`/`e` are accepted for `h`/`a`, and negative powers of `h` give `H`
    /// on the chain or are reduced mod n on the cycle.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Gen>> {
        let mut out = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (sym, exp) = match tok.split_once('^') {
                Some((s, e)) => (
                    s,
                    e.parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?,
                ),
                None => (tok, 1),
            };
            let g = match sym {
                "p" => P,
                "a" | "e" => A,
                "h" | "g" => H,
                "H" => BH,
                _ => return Err(Error::Parse(format!("unknown generator {sym:?}"))),
            };
            let (g, exp) = match (g, exp < 0) {
                (H, true) => (BH, -exp),
                (BH, true) => (H, -exp),
                (_, true) => return Err(Error::Parse(format!("negative power of {sym}"))),
                _ => (g, exp),
            };
            let (g, exp) = match (g, self.kind) {
                (BH, QuiverKind::Cycle(n)) => (H, (n as i64 - exp % n as i64) % n as i64),
                _ => (g, exp),
            };
            if !self.generators.contains(&g) {
                return Err(Error::Parse(format!(
                    "{} is not a generator of this algebra",
                    g.symbol()
                )));
            }
            out.extend(std::iter::repeat(g).take(exp as usize));
        }
        Ok(out)
    }

    /// Leftmost position and index of a rule applicable to `gens`.
    pub fn find_match(&self, gens: &[Gen]) -> Option<(usize, usize)> {
        for pos in 0..gens.len() {
            for (idx, rule) in self.rules.iter().enumerate() {
                if gens[pos..].starts_with(&rule.lhs) {
                    return Some((pos, idx));
                }
            }
        }
        None
    }

    pub fn is_irreducible(&self, gens: &[Gen]) -> bool {
        self.find_match(gens).is_none()
    }

    /// One rewriting step: rule `idx` applied at `pos`.
    pub fn apply(&self, gens: &[Gen], pos: usize, idx: usize) -> WordElement {
        let rule = &self.rules[idx];
        let end = pos + rule.lhs.len();
        debug_assert_eq!(&gens[pos..end], rule.lhs.as_slice());
        let mut out = Combination::zero(&self.ctx);
        for (w, c) in &rule.rhs {
            out.add_term(self.word(cat(&[&gens[..pos], w, &gens[end..]])), c);
        }
        out
    }

    /// Reduces to a combination of irreducible words, largest word first.
    /// Also returns the length of the longest chain of rewriting steps taken.
    pub fn reduce_with_depth(&self, x: &WordElement) -> (WordElement, u64) {
        let mut work: BTreeMap<Word, (Scalar, u64)> =
            x.iter().map(|(w, c)| (w.clone(), (c.clone(), 0))).collect();
        let mut out = Combination::zero(&self.ctx);
        let mut depth = 0;
        while let Some((w, (c, dep))) = work.pop_last() {
            if c.is_zero() {
                continue;
            }
            match self.find_match(&w.gens) {
                None => {
                    depth = depth.max(dep);
                    out.add_term(w, &c);
                }
                Some((pos, idx)) => {
                    for (nw, nc) in self.apply(&w.gens, pos, idx).iter() {
                        debug_assert!(nw < &w, "rule {} does not decrease {w}", self.rules[idx]);
                        let e = work
                            .entry(nw.clone())
                            .or_insert_with(|| (self.ctx.zero(), 0));
                        e.0 += &(&c * nc);
                        e.1 = e.1.max(dep + 1);
                    }
                }
            }
        }
        (out, depth)
    }

    pub fn reduce(&self, x: &WordElement) -> WordElement {
        self.reduce_with_depth(x).0
    }

    /// Normal form as a combination of PBW monomials.
    pub fn normal_form(&self, x: &WordElement) -> Result<AlgElement> {
        for w in x.keys() {
            if let Some(g) = w.gens.iter().find(|g| !self.generators.contains(g)) {
                return Err(Error::Parse(format!("{} is not a generator of this algebra", g.symbol())));
            }
        }
        let reduced = self.reduce(x);
        let mut out = Combination::zero(&self.ctx);
        for (w, c) in reduced.iter() {
            let m = Monomial::from_gens(&w.gens).ok_or_else(|| {
                Error::OutsideFamily(format!("irreducible word {w} is not a PBW monomial"))
            })?;
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn normal_form_gens(&self, gens: &[Gen]) -> Result<AlgElement> {
        self.normal_form(&self.word_element(gens.to_vec(), &self.ctx.one()))
    }

    pub fn monomial_word(&self, m: &Monomial) -> Word {
        self.word(m.gens())
    }

    /// Embeds PBW monomials as words.
    pub fn to_words(&self, x: &AlgElement) -> WordElement {
        x.map_keys(|m| self.monomial_word(m))
    }

    /// Product of normal forms.
    pub fn multiply(&self, x: &AlgElement, y: &AlgElement) -> AlgElement {
        Multiplier::new(self).multiply(x, y)
    }
}

impl fmt::Display for RewriteSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.descriptor {
            Some(d) => writeln!(f, "{d}")?,
            None => writeln!(f, "rewriting system on {}", self.kind)?,
        }
        let gens: Vec<&str> = self.generators.iter().rev().map(|g| g.symbol()).collect();
        writeln!(f, "generators: {}", gens.join(", "))?;
        for rule in &self.rules {
            writeln!(f, "  {rule}")?;
        }
        Ok(())
    }
}

/// The coefficient `c` in `a·p − p·a = c·a + c·a·h^d` for the half deformation.
pub fn half_commutator_coefficient(desc: &HopfFamilyDescriptor) -> Scalar {
    let q = desc.q();
    let ctx = desc.context();
    let d = desc.root_order().unwrap_or(1);
    let denom = match desc.half_coefficient() {
        HalfCoefficient::Factorial => q_factorial(d - 1, q),
        HalfCoefficient::QInteger => q_int(d - 1, q),
    };
    let num = desc.param() * &(&ctx.one() - q);
    num.div(&denom).expect("(d-1)_q is nonzero below the order of q")
}

/// Multiplication of normal forms with a cache of `monomial · generator` products.
pub struct Multiplier<'a> {
    rs: &'a RewriteSystem,
    cache: HashMap<(Monomial, Gen), AlgElement>,
}

impl<'a> Multiplier<'a> {
    pub fn new(rs: &'a RewriteSystem) -> Self {
        Multiplier {
            rs,
            cache: HashMap::new(),
        }
    }

    pub fn system(&self) -> &'a RewriteSystem {
        self.rs
    }

    fn times_gen(&mut self, m: &Monomial, g: Gen) -> AlgElement {
        if let Some(hit) = self.cache.get(&(*m, g)) {
            return hit.clone();
        }
        let mut gens = m.gens();
        gens.push(g);
        let nf = self
            .rs
            .normal_form_gens(&gens)
            .unwrap_or_else(|e| panic!("normal form of {}: {e}", render_gens(&gens)));
        self.cache.insert((*m, g), nf.clone());
        nf
    }

    pub fn times_gens(&mut self, x: &AlgElement, gens: &[Gen]) -> AlgElement {
        let mut acc = x.clone();
        for &g in gens {
            let mut next = Combination::zero(&self.rs.ctx);
            for (m, c) in acc.iter() {
                next.add_scaled(&self.times_gen(m, g), c);
            }
            acc = next;
        }
        acc
    }

    pub fn multiply(&mut self, x: &AlgElement, y: &AlgElement) -> AlgElement {
        let mut out = Combination::zero(&self.rs.ctx);
        for (m, c) in y.iter() {
            let prod = self.times_gens(x, &m.gens());
            out.add_scaled(&prod, c);
        }
        out
    }

    pub fn multiply_monomials(&mut self, x: &Monomial, y: &Monomial) -> AlgElement {
        let x = Combination::basis(&self.rs.ctx, *x);
        self.times_gens(&x, &y.gens())
    }

    /// Normal form of a word via cached products.
    pub fn evaluate(&mut self, gens: &[Gen]) -> AlgElement {
        let one = Combination::basis(&self.rs.ctx, Monomial::ONE);
        self.times_gens(&one, gens)
    }
}
