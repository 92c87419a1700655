//! Finite linear combinations over a cyclotomic field with ordered keys.

use std::collections::btree_map;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use crate::scalars::{CyclotomicContext, Scalar};

/// A finite sum `Σ c_k · k` with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Combination<K: Ord> {
    ctx: Arc<CyclotomicContext>,
    terms: BTreeMap<K, Scalar>,
}

impl<K: Ord + Clone> Combination<K> {
    pub fn zero(ctx: &Arc<CyclotomicContext>) -> Self {
        Combination {
            ctx: Arc::clone(ctx),
            terms: BTreeMap::new(),
        }
    }

    pub fn term(key: K, coeff: Scalar) -> Self {
        let mut out = Combination::zero(coeff.context());
        out.add_term(key, &coeff);
        out
    }

    pub fn basis(ctx: &Arc<CyclotomicContext>, key: K) -> Self {
        Combination::term(key, ctx.one())
    }

    pub fn from_terms(ctx: &Arc<CyclotomicContext>, terms: impl IntoIterator<Item = (K, Scalar)>) -> Self {
        let mut out = Combination::zero(ctx);
        for (k, c) in terms {
            out.add_term(k, &c);
        }
        out
    }

    pub fn context(&self) -> &Arc<CyclotomicContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Scalar> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Scalar> {
        self.terms.keys()
    }

    pub fn coeff(&self, key: &K) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn add_term(&mut self, key: K, coeff: &Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
            btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, v) in other.iter() {
            self.add_term(k.clone(), &(v * c));
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Combination::zero(&self.ctx);
        out.add_scaled(self, c);
        out
    }

    pub fn retain(&mut self, mut keep: impl FnMut(&K) -> bool) {
        self.terms.retain(|k, _| keep(k));
    }

    /// Linear extension of `f` from keys to combinations.
    pub fn map_linear<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Combination<K2>) -> Combination<K2> {
        let mut out = Combination::zero(&self.ctx);
        for (k, c) in self.iter() {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Linear extension of a key relabelling.
    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> Combination<K2> {
        let mut out = Combination::zero(&self.ctx);
        for (k, c) in self.iter() {
            out.add_term(f(k), c);
        }
        out
    }

    pub fn into_terms(self) -> BTreeMap<K, Scalar> {
        self.terms
    }
}

impl<K: Ord + Clone> Add for &Combination<K> {
    type Output = Combination<K>;
    fn add(self, rhs: &Combination<K>) -> Combination<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, &self.ctx.one());
        out
    }
}

impl<K: Ord + Clone> Sub for &Combination<K> {
    type Output = Combination<K>;
    fn sub(self, rhs: &Combination<K>) -> Combination<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, &self.ctx.integer(-1));
        out
    }
}

impl<K: Ord + Clone> Neg for &Combination<K> {
    type Output = Combination<K>;
    fn neg(self) -> Combination<K> {
        self.scale(&self.ctx.integer(-1))
    }
}

fn needs_parens(c: &str) -> bool {
    c.contains(' ')
}

/// Text form of a basis key inside a rendered combination.
pub trait TermKey {
    fn render(&self) -> String;
}

impl TermKey for u32 {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl<A: TermKey, B: TermKey> TermKey for (A, B) {
    fn render(&self) -> String {
        format!("{} ⊗ {}", self.0.render(), self.1.render())
    }
}

impl<A: TermKey, B: TermKey, C: TermKey> TermKey for (A, B, C) {
    fn render(&self) -> String {
        format!("{} ⊗ {} ⊗ {}", self.0.render(), self.1.render(), self.2.render())
    }
}

impl<K: Ord + TermKey> fmt::Display for Combination<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let cs = c.to_string();
            let k = k.render();
            if needs_parens(&cs) {
                write!(f, "({cs}) * {k}")?;
            } else {
                write!(f, "{cs} * {k}")?;
            }
        }
        Ok(())
    }
}

impl<K: Ord + TermKey> fmt::Debug for Combination<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Splits a rendered combination into `(coefficient, key)` text pairs.
pub(crate) fn split_terms(text: &str) -> Result<Vec<(Option<&str>, &str)>, String> {
    let text = text.trim();
    if text == "0" || text.is_empty() {
        return Ok(vec![]);
    }
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = text.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            b'+' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
        .into_iter()
        .map(|part| {
            let part = part.trim();
            // the coefficient ends at the last top-level '*'
            let mut depth = 0i32;
            let mut star = None;
            for (i, b) in part.bytes().enumerate() {
                match b {
                    b'(' | b'[' => depth += 1,
                    b')' | b']' => depth -= 1,
                    b'*' if depth == 0 => star = Some(i),
                    _ => {}
                }
            }
            match star {
                None if part.is_empty() => Err("empty term".to_string()),
                None => Ok((None, part)),
                Some(i) => {
                    let c = part[..i].trim();
                    let c = c
                        .strip_prefix('(')
                        .and_then(|s| s.strip_suffix(')'))
                        .unwrap_or(c);
                    Ok((Some(c), part[i + 1..].trim()))
                }
            }
        })
        .collect()
}
