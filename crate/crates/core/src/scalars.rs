//! Exact arithmetic in the cyclotomic field `Q(ζ_N)` and the q-combinatorics
//! (q-integers, q-factorials, Gaussian binomials) used by every other module.
//!
//! A [`Scalar`] is a vector of rational coordinates in the power basis
//! `1, z, …, z^{φ(N)-1}` with `z = ζ_N`, always reduced modulo the N-th
//! cyclotomic polynomial, so equality and zero tests are decisive.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest conductor accepted by [`CyclotomicContext::new`].
pub const MAX_CONDUCTOR: u64 = 1024;

/// The field `Q(ζ_N)`, shared read-only by every [`Scalar`] built from it.
#[derive(Debug)]
pub struct CyclotomicContext {
    conductor: u64,
    phi: usize,
    /// Coefficients of Φ_N, lowest degree first (monic, length φ+1).
    modulus: Vec<BigInt>,
    /// `z^k` reduced modulo Φ_N for `k` in `0..N`.
    zeta_powers: Vec<Vec<BigRational>>,
}

impl PartialEq for CyclotomicContext {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor
    }
}

impl Eq for CyclotomicContext {}

/// Multiplicative order of a scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u64> {
        match self {
            Order::Finite(t) => Some(t),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(t) => write!(f, "{t}"),
            Order::Infinite => write!(f, "infinite"),
        }
    }
}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    if rem.len() <= dn {
        return vec![];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (k, dk) in den.iter().enumerate() {
            rem[i + k] -= &c * dk;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// The N-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    let mut result = num;
    for d in 1..n {
        if n % d == 0 {
            result = poly_div_exact(&result, &cyclotomic_polynomial(d));
        }
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

impl CyclotomicContext {
    /// Builds `Q(ζ_N)`.
    pub fn new(conductor: u64) -> Result<Arc<Self>> {
        if conductor == 0 || conductor > MAX_CONDUCTOR {
            return Err(Error::Conductor(conductor));
        }
        let modulus = cyclotomic_polynomial(conductor);
        let phi = modulus.len() - 1;
        debug_assert_eq!(phi as u64, euler_phi(conductor));
        let mut zeta_powers = Vec::with_capacity(conductor as usize);
        let mut cur = vec![BigRational::zero(); phi];
        cur[0] = BigRational::one();
        for _ in 0..conductor {
            let mut stored = cur.clone();
            trim(&mut stored);
            zeta_powers.push(stored);
            // multiply by z and reduce the overflow coefficient
            let top = cur[phi - 1].clone();
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigRational::zero();
            if !top.is_zero() {
                for (i, c) in cur.iter_mut().enumerate() {
                    *c -= &top * BigRational::from_integer(modulus[i].clone());
                }
            }
        }
        Ok(Arc::new(CyclotomicContext {
            conductor,
            phi,
            modulus,
            zeta_powers,
        }))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Degree of the minimal polynomial of ζ_N (Euler totient of N).
    pub fn phi(&self) -> usize {
        self.phi
    }

    pub fn minimal_polynomial(&self) -> &[BigInt] {
        &self.modulus
    }

    /// Every root of unity in `Q(ζ_N)` has order dividing this number.
    pub fn root_order_bound(&self) -> u64 {
        self.conductor.lcm(&2)
    }

    fn scalar(self: &Arc<Self>, mut coeffs: Vec<BigRational>) -> Scalar {
        trim(&mut coeffs);
        Scalar {
            ctx: Arc::clone(self),
            coeffs,
        }
    }

    pub fn zero(self: &Arc<Self>) -> Scalar {
        self.scalar(vec![])
    }

    pub fn one(self: &Arc<Self>) -> Scalar {
        self.integer(1)
    }

    pub fn integer(self: &Arc<Self>, v: i64) -> Scalar {
        self.rational(BigRational::from_integer(v.into()))
    }

    pub fn ratio(self: &Arc<Self>, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.rational(BigRational::new(num.into(), den.into())))
    }

    pub fn rational(self: &Arc<Self>, v: BigRational) -> Scalar {
        self.scalar(vec![v])
    }

    /// `ζ_N^k` for any integer `k`.
    pub fn zeta_pow(self: &Arc<Self>, k: i64) -> Scalar {
        let idx = k.rem_euclid(self.conductor as i64) as usize;
        self.scalar(self.zeta_powers[idx].clone())
    }

    pub fn zeta(self: &Arc<Self>) -> Scalar {
        self.zeta_pow(1)
    }

    /// Parses the text form produced by `Display`, e.g. `"1/2 + 3*z^2"`.
    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Scalar> {
        parse_scalar(self, text)
    }
}

/// An element of `Q(ζ_N)`.
#[derive(Clone)]
pub struct Scalar {
    ctx: Arc<CyclotomicContext>,
    /// Power-basis coordinates with trailing zeros removed.
    coeffs: Vec<BigRational>,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.ctx.conductor == other.ctx.conductor
    }
}

impl Eq for Scalar {}

impl std::hash::Hash for Scalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl Scalar {
    pub fn context(&self) -> &Arc<CyclotomicContext> {
        &self.ctx
    }

    /// Power-basis coordinates, padded to length φ(N).
    pub fn coordinates(&self) -> Vec<BigRational> {
        let mut v = self.coeffs.clone();
        v.resize(self.ctx.phi, BigRational::zero());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// The rational value, if this scalar lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    fn check_ctx(&self, other: &Scalar) {
        assert!(
            Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx.conductor == other.ctx.conductor,
            "scalars from different cyclotomic contexts ({} vs {})",
            self.ctx.conductor,
            other.ctx.conductor
        );
    }

    fn scale_by(&self, c: &BigRational) -> Scalar {
        if c.is_zero() {
            return self.ctx.zero();
        }
        Scalar {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    fn mul_ref(&self, other: &Scalar) -> Scalar {
        self.check_ctx(other);
        if self.coeffs.len() <= 1 {
            return match self.coeffs.first() {
                None => self.ctx.zero(),
                Some(c) => other.scale_by(c),
            };
        }
        if other.coeffs.len() <= 1 {
            return match other.coeffs.first() {
                None => self.ctx.zero(),
                Some(c) => self.scale_by(c),
            };
        }
        let phi = self.ctx.phi;
        let mut raw = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                raw[i + j] += a * b;
            }
        }
        let mut out = vec![BigRational::zero(); phi];
        for (k, c) in raw.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < phi {
                out[k] += c;
            } else {
                let red = &self.ctx.zeta_powers[k % self.ctx.conductor as usize];
                for (i, r) in red.iter().enumerate() {
                    out[i] += &c * r;
                }
            }
        }
        self.ctx.scalar(out)
    }

    /// Exact multiplicative inverse.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.coeffs.len() == 1 {
            return Ok(self.ctx.rational(self.coeffs[0].recip()));
        }
        // Solve M u = e_0 where column i of M holds the coordinates of self·z^i.
        let phi = self.ctx.phi;
        let mut rows: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); phi + 1]; phi];
        for i in 0..phi {
            let col = self.mul_ref(&self.ctx.zeta_pow(i as i64)).coordinates();
            for (r, v) in col.into_iter().enumerate() {
                rows[r][i] = v;
            }
        }
        rows[0][phi] = BigRational::one();
        for c in 0..phi {
            let piv = (c..phi)
                .find(|&r| !rows[r][c].is_zero())
                .ok_or(Error::DivisionByZero)?;
            rows.swap(c, piv);
            let p = rows[c][c].clone();
            for v in rows[c].iter_mut() {
                *v /= &p;
            }
            for r in 0..phi {
                if r != c && !rows[r][c].is_zero() {
                    let f = rows[r][c].clone();
                    for k in c..=phi {
                        let delta = &f * &rows[c][k];
                        rows[r][k] -= delta;
                    }
                }
            }
        }
        Ok(self.ctx.scalar(rows.into_iter().map(|r| r[phi].clone()).collect()))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    /// `self^e` for a nonnegative exponent.
    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.ctx.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^e` for any integer exponent; negative powers need `self ≠ 0`.
    pub fn powi(&self, e: i64) -> Result<Scalar> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Smallest `t ≥ 1` with `self^t = 1`, searched over the divisors of lcm(2, N).
    pub fn order(&self) -> Result<Order> {
        if self.is_zero() {
            return Err(Error::OrderOfZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(if r.is_one() {
                Order::Finite(1)
            } else if r == -BigRational::one() {
                Order::Finite(2)
            } else {
                Order::Infinite
            });
        }
        for t in divisors(self.ctx.root_order_bound()) {
            if self.pow(t).is_one() {
                return Ok(Order::Finite(t));
            }
        }
        Ok(Order::Infinite)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn add_coeffs(a: &Scalar, b: &Scalar, negate: bool) -> Scalar {
    a.check_ctx(b);
    let len = a.coeffs.len().max(b.coeffs.len());
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let x = a.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
        let y = b.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
        out.push(if negate { x - y } else { x + y });
    }
    a.ctx.scalar(out)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $body(self, rhs)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $body(&self, &rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $body(&self, rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| add_coeffs(a, b, false));
forward_binop!(Sub, sub, |a, b| add_coeffs(a, b, true));
forward_binop!(Mul, mul, |a: &Scalar, b: &Scalar| a.mul_ref(b));

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = add_coeffs(self, rhs, false);
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{abs}*z")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{abs}*z^{k}")?,
            }
        }
        Ok(())
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    text: &'a str,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.chars.next();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let mut s = String::new();
        while let Some(c) = self.chars.peek().copied() {
            if c.is_ascii_digit() {
                s.push(c);
                self.chars.next();
            } else {
                break;
            }
        }
        if s.is_empty() {
            return Err(self.err("expected integer"));
        }
        Ok(s.parse().expect("digits"))
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} in scalar {:?}", self.text))
    }
}

fn parse_scalar(ctx: &Arc<CyclotomicContext>, text: &str) -> Result<Scalar> {
    let mut lx = Lexer {
        chars: text.chars().peekable(),
        text,
    };
    let mut acc = ctx.zero();
    let mut first = true;
    loop {
        let mut sign = BigRational::one();
        if lx.eat('-') {
            sign = -sign;
        } else if !lx.eat('+') && !first {
            return Err(lx.err("expected '+' or '-'"));
        }
        first = false;
        let mut coeff = BigRational::one();
        let mut has_coeff = false;
        if lx.peek().is_some_and(|c| c.is_ascii_digit()) {
            let num = lx.integer()?;
            let den = if lx.eat('/') {
                lx.integer()?
            } else {
                BigInt::one()
            };
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            coeff = BigRational::new(num, den);
            has_coeff = true;
        }
        let mut power = 0i64;
        let star = lx.eat('*');
        if has_coeff && !star && lx.peek() == Some('z') {
            return Err(lx.err("expected '*' before 'z'"));
        }
        if lx.eat('z') {
            power = 1;
            if lx.eat('^') {
                let neg = lx.eat('-');
                let e = lx
                    .integer()?
                    .to_i64()
                    .ok_or_else(|| lx.err("exponent too large"))?;
                power = if neg { -e } else { e };
            }
        } else if star || !has_coeff {
            return Err(lx.err("expected 'z'"));
        }
        let term = ctx.zeta_pow(power);
        acc = acc + term.scale_by(&(sign * coeff));
        if lx.peek().is_none() {
            return Ok(acc);
        }
    }
}

/// A primitive m-th root of unity, chosen canonically as `ζ_N^{N/m}` when
/// `m | N`; for odd `N` and even `m | 2N` it is `-ζ_N^{2N/m}`.
pub fn root_of_unity(ctx: &Arc<CyclotomicContext>, m: u64) -> Result<Scalar> {
    let n = ctx.conductor;
    if m == 0 {
        return Err(Error::OrderNotRepresentable {
            order: 0,
            modulus: n,
        });
    }
    if n % m == 0 {
        return Ok(ctx.zeta_pow((n / m) as i64));
    }
    let half = m / 2;
    if m % 2 == 0 && half % 2 == 1 && n % half == 0 {
        return Ok(-ctx.zeta_pow((n / half) as i64));
    }
    Err(Error::OrderNotRepresentable {
        order: m,
        modulus: n,
    })
}

/// All primitive m-th roots of unity in the context, as powers of the
/// canonical one with exponents coprime to m (ascending).
pub fn primitive_roots(ctx: &Arc<CyclotomicContext>, m: u64) -> Result<Vec<Scalar>> {
    let base = root_of_unity(ctx, m)?;
    Ok((1..=m.max(1))
        .filter(|k| k.gcd(&m) == 1)
        .map(|k| base.pow(k))
        .collect())
}

/// `l_q = 1 + q + … + q^{l-1}`.
pub fn q_int(l: u64, q: &Scalar) -> Scalar {
    let mut acc = q.ctx.zero();
    let mut term = q.ctx.one();
    for _ in 0..l {
        acc = &acc + &term;
        term = &term * q;
    }
    acc
}

/// `l!_q = 1_q 2_q ⋯ l_q`.
pub fn q_factorial(l: u64, q: &Scalar) -> Scalar {
    (1..=l).fold(q.ctx.one(), |acc, i| &acc * &q_int(i, q))
}

/// Gaussian binomial `binom(n, k)_q` via the division-free Pascal recurrence.
pub fn gauss_binom(n: u64, k: u64, q: &Scalar) -> Result<Scalar> {
    if k > n {
        return Err(Error::BinomialRange { n, k });
    }
    Ok(QBinomialTable::new(q, n as usize).get(n as usize, k as usize))
}

/// `[(l+m)/d] − [m/d] − [l/d] > 0`: whether `binom(l+m, l)_q` vanishes for q of order d.
pub fn binom_vanishes(l: u64, m: u64, d: u64) -> Result<bool> {
    if d < 2 {
        return Err(Error::TrivialRoot(d));
    }
    Ok((l + m) / d > m / d + l / d)
}

/// Rows `0..=max_n` of the q-Pascal triangle, for repeated lookups.
#[derive(Debug, Clone)]
pub struct QBinomialTable {
    q: Scalar,
    rows: Vec<Vec<Scalar>>,
}

impl QBinomialTable {
    pub fn new(q: &Scalar, max_n: usize) -> Self {
        let powers: Vec<Scalar> = std::iter::successors(Some(q.ctx.one()), |p| Some(p * q))
            .take(max_n + 1)
            .collect();
        let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![q.ctx.one()]);
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(q.ctx.one());
            for k in 1..=n {
                // binom(n,k) = binom(n-1,k-1) + q^k binom(n-1,k)
                let left = &prev[k - 1];
                let val = if k < n {
                    left + &(&powers[k] * &prev[k])
                } else {
                    left.clone()
                };
                row.push(val);
            }
            rows.push(row);
        }
        QBinomialTable { q: q.clone(), rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `binom(n, k)_q`; zero for `k > n`. Falls back to a fresh table beyond `max_n`.
    pub fn get(&self, n: usize, k: usize) -> Scalar {
        if k > n {
            return self.q.ctx.zero();
        }
        if n < self.rows.len() {
            return self.rows[n][k].clone();
        }
        QBinomialTable::new(&self.q, n).rows[n][k].clone()
    }
}
