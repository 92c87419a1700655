use std::ops::RangeInclusive;

use crate::report::{Check, VerificationReport};

use super::descriptor::HopfFamilyDescriptor;
use super::rewrite::{Gen, Monomial, RewriteSystem, WordElement};

/// A word on which two rule applications compete.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ambiguity {
    pub word: Vec<Gen>,
    /// `(position, rule index)` of each competing application.
    pub first: (usize, usize),
    pub second: (usize, usize),
    /// True for an overlap, false for an inclusion.
    pub overlap: bool,
}

impl Ambiguity {
    pub fn describe(&self, rs: &RewriteSystem) -> String {
        let w = rs.word(self.word.clone());
        format!(
            "{w} [{} at {} vs {} at {}]",
            rs.rules()[self.first.1],
            self.first.0,
            rs.rules()[self.second.1],
            self.second.0
        )
    }
}

/// All overlap and inclusion ambiguities of the rule set.
pub fn ambiguities(rs: &RewriteSystem) -> Vec<Ambiguity> {
    let rules = rs.rules();
    let mut out = Vec::new();
    for (i, r1) in rules.iter().enumerate() {
        for (j, r2) in rules.iter().enumerate() {
            let (l1, l2) = (&r1.lhs, &r2.lhs);
            for k in 1..l1.len().min(l2.len()) {
                if l1[l1.len() - k..] == l2[..k] {
                    let mut word = l1.clone();
                    word.extend_from_slice(&l2[k..]);
                    out.push(Ambiguity {
                        word,
                        first: (0, i),
                        second: (l1.len() - k, j),
                        overlap: true,
                    });
                }
            }
            if i != j && l2.len() <= l1.len() {
                for s in 0..=l1.len() - l2.len() {
                    if l1[s..s + l2.len()] == l2[..] {
                        out.push(Ambiguity {
                            word: l1.clone(),
                            first: (0, i),
                            second: (s, j),
                            overlap: false,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Difference of the two fully reduced routes, and the deepest derivation used.
pub fn obstruction(rs: &RewriteSystem, amb: &Ambiguity) -> (WordElement, u64) {
    let first = rs.apply(&amb.word, amb.first.0, amb.first.1);
    let second = rs.apply(&amb.word, amb.second.0, amb.second.1);
    let (r1, d1) = rs.reduce_with_depth(&first);
    let (r2, d2) = rs.reduce_with_depth(&second);
    (&r1 - &r2, d1.max(d2) + 1)
}

/// Irreducible words of weight at most `weight_bound` whose runs of `h` or `H` have length at most `run_bound`.
pub fn irreducible_words(rs: &RewriteSystem, weight_bound: u64, run_bound: u64) -> Vec<Vec<Gen>> {
    fn dfs(
        rs: &RewriteSystem,
        word: &mut Vec<Gen>,
        weight: u64,
        run: u64,
        bound: (u64, u64),
        out: &mut Vec<Vec<Gen>>,
    ) {
        out.push(word.clone());
        for &g in rs.generators() {
            let w = weight
                + match g {
                    Gen::P => rs.p_weight(),
                    Gen::A => 1,
                    _ => 0,
                };
            if w > bound.0 {
                continue;
            }
            let last = word.last().copied();
            let r = match g {
                Gen::H | Gen::HInv if last == Some(g) => run + 1,
                Gen::H | Gen::HInv => 1,
                _ => 0,
            };
            if r > bound.1 {
                continue;
            }
            word.push(g);
            // only a suffix can have become reducible
            let reducible = rs.rules().iter().any(|rule| word.ends_with(&rule.lhs));
            if !reducible {
                dfs(rs, word, w, r, bound, out);
            }
            word.pop();
        }
    }
    let mut out = Vec::new();
    dfs(rs, &mut Vec::new(), 0, 0, (weight_bound, run_bound), &mut out);
    out
}

/// Range of `h` exponents used for monomials: `0..n` on the cycle, `-r..=r` on the chain.
pub fn exponent_window(desc: &HopfFamilyDescriptor, chain_run: u64) -> RangeInclusive<i64> {
    match desc.n() {
        Some(n) => 0..=n as i64 - 1,
        None => -(chain_run as i64)..=chain_run as i64,
    }
}

/// PBW monomials `p^k a^j h^i` of weight at most `max_weight` predicted by the basis theorem.
pub fn pbw_monomials(
    desc: &HopfFamilyDescriptor,
    max_weight: u64,
    window: RangeInclusive<i64>,
) -> Vec<Monomial> {
    let dp = desc.p_weight();
    let a_bound = desc.a_bound();
    let mut out = Vec::new();
    let max_k = match dp {
        Some(d) => max_weight / d,
        None => 0,
    };
    for k in 0..=max_k {
        let used = k * dp.unwrap_or(0);
        let mut max_j = max_weight - used;
        if let Some(b) = a_bound {
            max_j = max_j.min(b - 1);
        }
        for j in 0..=max_j {
            for i in window.clone() {
                out.push(Monomial::new(k, j, i));
            }
        }
    }
    out.sort();
    out
}

/// Termination budget `L²·n·d` for a word of length `L`.
pub fn depth_budget(desc: &HopfFamilyDescriptor, len: usize) -> u64 {
    let l = len as u64;
    l * l * desc.scale() * desc.root_order().unwrap_or(1)
}

/// Resolves every ambiguity and, for presentations, compares irreducible words with the PBW basis.
pub fn check_confluence(rs: &RewriteSystem, weight_bound: u64) -> VerificationReport {
    let mut report = match rs.descriptor() {
        Some(d) => VerificationReport::new(d.family().tag(), d.describe()),
        None => VerificationReport::new(format!("rewriting system on {}", rs.kind()), Default::default()),
    };
    report.params.insert("weightBound".into(), weight_bound.to_string());
    let ambs = ambiguities(rs);
    report.push(Check::run("ambiguities resolve", &ambs, |amb| {
        let (diff, _) = obstruction(rs, amb);
        (!diff.is_zero()).then(|| format!("{}: difference {diff}", amb.describe(rs)))
    }));
    let Some(desc) = rs.descriptor() else {
        return report;
    };
    let run = desc.scale();
    let words = irreducible_words(rs, weight_bound, run);
    report.push(Check::run("irreducible words are PBW monomials", &words, |w| {
        Monomial::from_gens(w).is_none().then(|| rs.word(w.clone()).to_string())
    }));
    let window = exponent_window(desc, run);
    let predicted = pbw_monomials(desc, weight_bound, window);
    let mut found: Vec<Monomial> = words.iter().filter_map(|w| Monomial::from_gens(w)).collect();
    found.sort();
    let count = if found == predicted {
        Check::passed("PBW count", predicted.len() as u64)
            .with_witness(format!("{} monomials of weight <= {weight_bound}", predicted.len()))
    } else {
        let missing = predicted.iter().find(|m| found.binary_search(m).is_err());
        let extra = found.iter().find(|m| predicted.binary_search(m).is_err());
        Check::failed(
            "PBW count",
            predicted.len() as u64,
            format!(
                "predicted {}, found {}; missing {:?}, unexpected {:?}",
                predicted.len(),
                found.len(),
                missing.map(|m| m.to_string()),
                extra.map(|m| m.to_string())
            ),
        )
    };
    report.push(count);
    // termination: ambiguity words and products of pairs of basis monomials
    let small = pbw_monomials(desc, desc.scale().min(weight_bound), exponent_window(desc, run));
    let mut samples: Vec<Vec<Gen>> = ambs.iter().map(|a| a.word.clone()).collect();
    for x in &small {
        for y in &small {
            let mut w = x.gens();
            w.extend(y.gens());
            samples.push(w);
        }
    }
    report.push(Check::run("termination bound", &samples, |w| {
        let elem = rs.word_element(w.clone(), &rs.context().one());
        let (_, depth) = rs.reduce_with_depth(&elem);
        let budget = depth_budget(desc, w.len());
        (depth > budget).then(|| format!("{}: {depth} steps > {budget}", rs.word(w.clone())))
    }));
    report
}
