use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::hopf_quiver::QuiverKind;
use crate::scalars::{root_of_unity, CyclotomicContext, Order, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    CycleGraded,
    CycleDeform,
    CycleHalfDeform,
    ChainGraded,
    ChainQ1Deform,
    ChainRootDeform,
    TypeOneCycle,
    TypeOneChain,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::CycleGraded,
        Family::CycleDeform,
        Family::CycleHalfDeform,
        Family::ChainGraded,
        Family::ChainQ1Deform,
        Family::ChainRootDeform,
        Family::TypeOneCycle,
        Family::TypeOneChain,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::CycleGraded => "cycle-graded",
            Family::CycleDeform => "cycle-deform",
            Family::CycleHalfDeform => "cycle-half",
            Family::ChainGraded => "chain-graded",
            Family::ChainQ1Deform => "chain-q1",
            Family::ChainRootDeform => "chain-root",
            Family::TypeOneCycle => "type-one-cycle",
            Family::TypeOneChain => "type-one-chain",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.tag() == tag)
            .ok_or_else(|| Error::Descriptor(format!("unknown family {tag:?}")))
    }

    pub fn is_cycle(self) -> bool {
        matches!(
            self,
            Family::CycleGraded | Family::CycleDeform | Family::CycleHalfDeform | Family::TypeOneCycle
        )
    }

    /// Name of the deformation parameter, if the family has one.
    pub fn param_name(self) -> Option<&'static str> {
        match self {
            Family::CycleDeform | Family::ChainQ1Deform | Family::ChainRootDeform => Some("lambda"),
            Family::CycleHalfDeform | Family::TypeOneCycle | Family::TypeOneChain => Some("mu"),
            Family::CycleGraded | Family::ChainGraded => None,
        }
    }

    pub fn is_type_one(self) -> bool {
        matches!(self, Family::TypeOneCycle | Family::TypeOneChain)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Reading of the commutator coefficient `c` in `[a, p] = c·a(1 + h^d)` for the half deformation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub enum HalfCoefficient {
    /// `c = μ(1−q)/(d−1)!_q`
    #[default]
    Factorial,
    /// `c = μ(1−q)/(d−1)_q`
    QInteger,
}

/// Commutator of `a` and `p` in the deformed chain at a root of unity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub enum ChainCommutator {
    /// `a·p − p·a = λ·a`, matching `h·p − p·h = λ(h − h^{d+1})`.
    #[default]
    Corrected,
    /// `a·p = p·a`.
    Literal,
}

/// One Hopf structure from the classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfFamilyDescriptor {
    family: Family,
    n: Option<u64>,
    q: Scalar,
    param: Scalar,
    order: Order,
    half_coefficient: HalfCoefficient,
    chain_commutator: ChainCommutator,
    note: Option<String>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::Descriptor(msg.into())
}

impl HopfFamilyDescriptor {
    pub fn new(family: Family, n: Option<u64>, q: Scalar, param: Scalar) -> Result<Self> {
        let tag = family.tag();
        if q.is_zero() {
            return Err(invalid(format!("q must be nonzero for {tag}")));
        }
        let order = q.order()?;
        let ord = order.finite();
        let mut note = None;
        let mut param = param;
        if family.is_cycle() {
            match n {
                Some(n) if n >= 1 => {}
                _ => return Err(invalid(format!("{tag} needs a positive n"))),
            }
        } else if n.is_some() {
            return Err(invalid(format!("{tag} lives on the chain and takes no n")));
        }
        if family.param_name().is_none() && !param.is_zero() {
            return Err(invalid(format!("{tag} takes no deformation parameter")));
        }
        let zero_or_one = |p: &Scalar, name: &str| {
            if p.is_zero() || p.is_one() {
                Ok(())
            } else {
                Err(invalid(format!("{name} must be 0 or 1 for {tag}")))
            }
        };
        match family {
            Family::CycleGraded => {
                let n = n.unwrap();
                if !q.pow(n).is_one() {
                    return Err(invalid(format!("q^n must equal 1 for {tag}")));
                }
            }
            Family::CycleDeform => {
                let n = n.unwrap();
                if n < 2 || ord != Some(n) {
                    return Err(invalid(format!("order(q) must equal n > 1 for {tag}")));
                }
            }
            Family::CycleHalfDeform => {
                let n = n.unwrap();
                if n % 2 != 0 || n < 4 || ord != Some(n / 2) {
                    return Err(invalid(format!(
                        "n must be even and order(q) must equal n/2 > 1 for {tag}"
                    )));
                }
            }
            Family::ChainGraded => {}
            Family::ChainQ1Deform => {
                if !q.is_one() {
                    return Err(invalid(format!("q must equal 1 for {tag}")));
                }
                if !param.is_zero() && !param.is_one() {
                    note = Some(format!("lambda = {param} rescaled to 1 by e ↦ e/lambda"));
                    param = q.context().one();
                }
            }
            Family::ChainRootDeform => {
                if !matches!(ord, Some(d) if d > 1) {
                    return Err(invalid(format!("q must be a root of unity of order d > 1 for {tag}")));
                }
            }
            Family::TypeOneCycle => {
                let n = n.unwrap();
                if !q.pow(n).is_one() || !matches!(ord, Some(d) if d > 1) {
                    return Err(invalid(format!(
                        "q must be an n-th root of unity of order d > 1 for {tag}"
                    )));
                }
                zero_or_one(&param, "mu")?;
            }
            Family::TypeOneChain => {
                if !matches!(ord, Some(d) if d > 1) {
                    return Err(invalid(format!("q must be a root of unity of order d > 1 for {tag}")));
                }
                zero_or_one(&param, "mu")?;
            }
        }
        Ok(HopfFamilyDescriptor {
            family,
            n,
            q,
            param,
            order,
            half_coefficient: HalfCoefficient::default(),
            chain_commutator: ChainCommutator::default(),
            note,
        })
    }

    pub fn cycle_graded(n: u64, q: &Scalar) -> Result<Self> {
        Self::new(Family::CycleGraded, Some(n), q.clone(), q.context().zero())
    }

    pub fn cycle_deform(n: u64, q: &Scalar, lambda: &Scalar) -> Result<Self> {
        Self::new(Family::CycleDeform, Some(n), q.clone(), lambda.clone())
    }

    pub fn cycle_half(n: u64, q: &Scalar, mu: &Scalar) -> Result<Self> {
        Self::new(Family::CycleHalfDeform, Some(n), q.clone(), mu.clone())
    }

    pub fn chain_graded(q: &Scalar) -> Result<Self> {
        Self::new(Family::ChainGraded, None, q.clone(), q.context().zero())
    }

    pub fn chain_q1(ctx: &Arc<CyclotomicContext>, lambda: &Scalar) -> Result<Self> {
        Self::new(Family::ChainQ1Deform, None, ctx.one(), lambda.clone())
    }

    pub fn chain_root(q: &Scalar, lambda: &Scalar) -> Result<Self> {
        Self::new(Family::ChainRootDeform, None, q.clone(), lambda.clone())
    }

    pub fn type_one_cycle(n: u64, q: &Scalar, mu: &Scalar) -> Result<Self> {
        Self::new(Family::TypeOneCycle, Some(n), q.clone(), mu.clone())
    }

    pub fn type_one_chain(q: &Scalar, mu: &Scalar) -> Result<Self> {
        Self::new(Family::TypeOneChain, None, q.clone(), mu.clone())
    }

    pub fn with_half_coefficient(mut self, c: HalfCoefficient) -> Self {
        self.half_coefficient = c;
        self
    }

    pub fn with_chain_commutator(mut self, c: ChainCommutator) -> Self {
        self.chain_commutator = c;
        self
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> Option<u64> {
        self.n
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn param(&self) -> &Scalar {
        &self.param
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn context(&self) -> &Arc<CyclotomicContext> {
        self.q.context()
    }

    pub fn half_coefficient(&self) -> HalfCoefficient {
        self.half_coefficient
    }

    pub fn chain_commutator(&self) -> ChainCommutator {
        self.chain_commutator
    }

    pub fn note(&self) -> Option<&str> {
        self.note.as_deref()
    }

    pub fn kind(&self) -> QuiverKind {
        match self.n {
            Some(n) => QuiverKind::Cycle(n),
            None => QuiverKind::Chain,
        }
    }

    /// `ord(q)` when it is finite and greater than one.
    pub fn root_order(&self) -> Option<u64> {
        self.order.finite().filter(|&d| d > 1)
    }

    /// Path length of the generator `p` (its filtration weight), if `p` is a generator.
    pub fn p_weight(&self) -> Option<u64> {
        match self.family {
            Family::CycleGraded
            | Family::ChainGraded
            | Family::CycleDeform
            | Family::CycleHalfDeform
            | Family::ChainRootDeform => self.root_order(),
            Family::ChainQ1Deform | Family::TypeOneCycle | Family::TypeOneChain => None,
        }
    }

    /// Exclusive bound on the exponent of `a` in normal forms.
    pub fn a_bound(&self) -> Option<u64> {
        match self.family {
            Family::ChainQ1Deform => None,
            _ => self.root_order(),
        }
    }

    pub fn is_graded(&self) -> bool {
        matches!(self.family, Family::CycleGraded | Family::ChainGraded) || self.param.is_zero()
    }

    /// Natural size used for default verification bounds: n on the cycle, d (or 2) on the chain.
    pub fn scale(&self) -> u64 {
        match self.n {
            Some(n) => n,
            None => self.root_order().unwrap_or(2),
        }
    }

    /// The graded family whose structure constants the associated graded algebra should carry.
    pub fn graded_counterpart(&self) -> Result<HopfFamilyDescriptor> {
        match self.family {
            Family::CycleGraded | Family::CycleDeform | Family::CycleHalfDeform | Family::TypeOneCycle => {
                Self::cycle_graded(self.n.unwrap(), &self.q)
            }
            Family::ChainGraded | Family::ChainQ1Deform | Family::ChainRootDeform | Family::TypeOneChain => {
                Self::chain_graded(&self.q)
            }
        }
    }

    pub fn describe(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        if let Some(n) = self.n {
            m.insert("n".into(), n.to_string());
        }
        m.insert("q".into(), self.q.to_string());
        m.insert("qOrder".into(), self.order.to_string());
        if let Some(name) = self.family.param_name() {
            m.insert(name.into(), self.param.to_string());
        }
        if self.family == Family::CycleHalfDeform && self.half_coefficient != HalfCoefficient::Factorial {
            m.insert("halfCoefficient".into(), "q-integer".into());
        }
        if self.family == Family::ChainRootDeform && self.chain_commutator != ChainCommutator::Corrected {
            m.insert("chainCommutator".into(), "literal".into());
        }
        if let Some(note) = &self.note {
            m.insert("note".into(), note.clone());
        }
        m
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("family".into(), json!(self.family.tag()));
        for (k, v) in self.describe() {
            if k == "qOrder" || k == "note" {
                continue;
            }
            let value = if k == "n" {
                json!(self.n.unwrap())
            } else {
                json!(v)
            };
            obj.insert(k, value);
        }
        if let Some(note) = &self.note {
            obj.insert("note".into(), json!(note));
        }
        Value::Object(obj)
    }

    /// Accepts `q` as a scalar string or `qOrder` as an integer; parameters as integers or scalar strings.
    pub fn from_json(ctx: &Arc<CyclotomicContext>, value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| invalid("descriptor must be a JSON object"))?;
        let family = Family::from_tag(
            obj.get("family")
                .and_then(Value::as_str)
                .ok_or_else(|| invalid("missing \"family\""))?,
        )?;
        let n = match obj.get("n") {
            None | Some(Value::Null) => None,
            Some(v) => Some(v.as_u64().ok_or_else(|| invalid("\"n\" must be a positive integer"))?),
        };
        let scalar = |v: &Value| -> Result<Scalar> {
            match v {
                Value::Number(num) => {
                    let i = num
                        .as_i64()
                        .ok_or_else(|| invalid(format!("{num} is not an integer")))?;
                    Ok(ctx.integer(i))
                }
                Value::String(s) => ctx.parse(s),
                other => Err(invalid(format!("expected a scalar, got {other}"))),
            }
        };
        let q = match (obj.get("q"), obj.get("qOrder")) {
            (Some(v), _) => scalar(v)?,
            (None, Some(v)) => {
                let m = v.as_u64().ok_or_else(|| invalid("\"qOrder\" must be a positive integer"))?;
                root_of_unity(ctx, m)?
            }
            (None, None) => match family {
                Family::ChainQ1Deform => ctx.one(),
                _ => return Err(invalid("missing \"q\" or \"qOrder\"")),
            },
        };
        let param = match family.param_name().and_then(|name| obj.get(name)) {
            Some(v) => scalar(v)?,
            None => ctx.zero(),
        };
        let mut d = Self::new(family, n, q, param)?;
        if let Some(v) = obj.get("halfCoefficient").and_then(Value::as_str) {
            d.half_coefficient = match v {
                "factorial" => HalfCoefficient::Factorial,
                "q-integer" => HalfCoefficient::QInteger,
                other => return Err(invalid(format!("unknown halfCoefficient {other:?}"))),
            };
        }
        if let Some(v) = obj.get("chainCommutator").and_then(Value::as_str) {
            d.chain_commutator = match v {
                "corrected" => ChainCommutator::Corrected,
                "literal" => ChainCommutator::Literal,
                other => return Err(invalid(format!("unknown chainCommutator {other:?}"))),
            };
        }
        if let Some(note) = obj.get("note").and_then(Value::as_str) {
            d.note = Some(note.to_string());
        }
        Ok(d)
    }
}

impl fmt::Display for HopfFamilyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .describe()
            .into_iter()
            .filter(|(k, _)| k != "note")
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write!(f, "{}({})", self.family.tag(), parts.join(", "))
    }
}
