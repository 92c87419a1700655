//! Groups with ramification data, the Hopf quiver `Q(G, R)`, connectivity,
//! and the paths `p_i^l` of the basic n-cycle and the linear chain.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::error::{Error, Result};

/// A group given either canonically (cyclic) or by a Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u64),
    InfiniteCyclic,
    FiniteTable {
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
    },
}

/// Label of `g^k` in a cyclic group.
pub fn power_label(k: i64) -> String {
    match k {
        0 => "e".to_string(),
        1 => "g".to_string(),
        _ => format!("g^{k}"),
    }
}

fn permutation_label(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = vec![start + 1];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x + 1);
            x = p[x];
        }
        let body: Vec<String> = cycle.iter().map(|c| c.to_string()).collect();
        out.push('(');
        out.push_str(&body.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "e".to_string()
    } else {
        out
    }
}

impl GroupSpec {
    /// Validates a Cayley table: closure, associativity, identity and inverses.
    pub fn finite_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty group".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidGroup(format!("Cayley table must be {n}x{n}")));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidGroup("table entry out of range".into()));
        }
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != n {
            return Err(Error::InvalidGroup("duplicate element labels".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        for x in 0..n {
            if !(0..n).any(|y| table[x][y] == e && table[y][x] == e) {
                return Err(Error::InvalidGroup(format!("{} has no inverse", labels[x])));
            }
        }
        Ok(GroupSpec::FiniteTable { labels, table })
    }

    /// The symmetric group on `n` points, elements labelled in cycle notation.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 6 {
            return Err(Error::InvalidGroup(format!("symmetric group S{n} not supported")));
        }
        let mut perms: Vec<Vec<usize>> = vec![(0..n).collect()];
        // lexicographic next permutation
        loop {
            let mut p = perms.last().unwrap().clone();
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
            p.swap(i, j);
            p[i + 1..].reverse();
            perms.push(p);
        }
        let index: BTreeMap<Vec<usize>, usize> =
            perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        // (a·b)(x) = a(b(x))
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index[&b.iter().map(|&x| a[x]).collect::<Vec<_>>()])
                    .collect()
            })
            .collect();
        let labels = perms.iter().map(|p| permutation_label(p)).collect();
        GroupSpec::finite_table(labels, table)
    }

    /// Parses `cyclic:4`, `infinite-cyclic` or `symmetric:3`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "infinite-cyclic" || text == "z" {
            return Ok(GroupSpec::InfiniteCyclic);
        }
        let (kind, arg) = text
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("group {text:?}")))?;
        let n: u64 = arg
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("group order {arg:?}")))?;
        match kind.trim() {
            "cyclic" if n >= 1 => Ok(GroupSpec::Cyclic(n)),
            "cyclic" => Err(Error::InvalidGroup("cyclic group of order 0".into())),
            "symmetric" => GroupSpec::symmetric(n as usize),
            other => Err(Error::Parse(format!("unknown group kind {other:?}"))),
        }
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            GroupSpec::Cyclic(n) => Some(*n as usize),
            GroupSpec::InfiniteCyclic => None,
            GroupSpec::FiniteTable { labels, .. } => Some(labels.len()),
        }
    }

    fn finite(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cyclic(n) => {
                let n = *n as usize;
                Ok(FiniteGroup {
                    labels: (0..n as i64).map(power_label).collect(),
                    table: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(),
                })
            }
            GroupSpec::FiniteTable { labels, table } => Ok(FiniteGroup {
                labels: labels.clone(),
                table: table.clone(),
            }),
            GroupSpec::InfiniteCyclic => Err(Error::InfiniteClasses),
        }
    }
}

struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    fn len(&self) -> usize {
        self.labels.len()
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    fn identity(&self) -> usize {
        (0..self.len())
            .find(|&e| (0..self.len()).all(|x| self.table[e][x] == x))
            .expect("validated group")
    }

    fn inverse(&self, x: usize) -> usize {
        let e = self.identity();
        (0..self.len()).find(|&y| self.table[x][y] == e).expect("validated group")
    }

    fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    fn classes(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.len()];
        let mut out = Vec::new();
        for x in 0..self.len() {
            if assigned[x] {
                continue;
            }
            let orbit: BTreeSet<usize> = (0..self.len())
                .map(|y| self.mul(self.mul(y, x), self.inverse(y)))
                .collect();
            for &z in &orbit {
                assigned[z] = true;
            }
            out.push(orbit.into_iter().collect());
        }
        out
    }

    fn class_id(&self, class: &[usize]) -> String {
        class
            .iter()
            .map(|&x| self.labels[x].clone())
            .min()
            .expect("nonempty class")
    }
}

/// A conjugacy class identified by its lexicographically least label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    pub id: String,
    pub elements: Vec<String>,
}

/// Partition of a finite group into conjugacy classes, ordered by first element.
pub fn conjugacy_classes(g: &GroupSpec) -> Result<Vec<ConjugacyClass>> {
    let fg = g.finite()?;
    Ok(fg
        .classes()
        .into_iter()
        .map(|c| ConjugacyClass {
            id: fg.class_id(&c),
            elements: c.iter().map(|&x| fg.labels[x].clone()).collect(),
        })
        .collect())
}

/// Multiplicities `R_C` keyed by class id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RamificationDatum {
    pub entries: BTreeMap<String, u64>,
}

impl RamificationDatum {
    pub fn single(class: &str, mult: u64) -> Self {
        RamificationDatum {
            entries: BTreeMap::from([(class.to_string(), mult)]),
        }
    }

    /// Parses `g=1,(1 2)=1`; keys may name any element of the class.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = part
                .rsplit_once('=')
                .ok_or_else(|| Error::Parse(format!("ramification entry {part:?}")))?;
            let v: u64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("multiplicity {v:?}")))?;
            *entries.entry(k.trim().to_string()).or_insert(0) += v;
        }
        Ok(RamificationDatum { entries })
    }
}

/// Canonicalizes keys to class ids; unknown labels are rejected.
fn resolve_datum(fg: &FiniteGroup, r: &RamificationDatum) -> Result<Vec<(Vec<usize>, String, u64)>> {
    let classes = fg.classes();
    let mut mult: BTreeMap<usize, u64> = BTreeMap::new();
    for (key, &m) in &r.entries {
        let x = fg
            .index_of(key)
            .ok_or_else(|| Error::Ramification(format!("{key:?} is not a group element")))?;
        let ci = classes.iter().position(|c| c.contains(&x)).expect("partition");
        *mult.entry(ci).or_insert(0) += m;
    }
    Ok(mult
        .into_iter()
        .map(|(ci, m)| (classes[ci].clone(), fg.class_id(&classes[ci]), m))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Arrow {
    #[serde(rename = "src")]
    pub source: String,
    #[serde(rename = "tgt")]
    pub target: String,
    pub class: String,
    pub copy: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HopfQuiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl HopfQuiver {
    pub fn out_degree(&self, v: &str) -> usize {
        self.arrows.iter().filter(|a| a.source == v).count()
    }

    pub fn in_degree(&self, v: &str) -> usize {
        self.arrows.iter().filter(|a| a.target == v).count()
    }

    /// Connectivity of the underlying undirected graph.
    pub fn is_weakly_connected(&self) -> bool {
        let Some(first) = self.vertices.first() else {
            return true;
        };
        let mut adj: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for a in &self.arrows {
            adj.entry(&a.source).or_default().push(&a.target);
            adj.entry(&a.target).or_default().push(&a.source);
        }
        let mut seen = BTreeSet::from([first.as_str()]);
        let mut queue = VecDeque::from([first.as_str()]);
        while let Some(v) = queue.pop_front() {
            for &w in adj.get(v).map(Vec::as_slice).unwrap_or(&[]) {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

/// Builds `Q(G, R)`: for each vertex `x`, class `C` and `c ∈ C`, `R_C` arrows `x → c·x`.
/// The infinite cyclic group is materialized on the vertex window `g^lo..=g^hi`,
/// keeping arrows whose target lies in the window.
pub fn build_hopf_quiver(
    g: &GroupSpec,
    r: &RamificationDatum,
    window: Option<RangeInclusive<i64>>,
) -> Result<HopfQuiver> {
    if let GroupSpec::InfiniteCyclic = g {
        let window = window.ok_or_else(|| {
            Error::InvalidGroup("infinite cyclic group needs a vertex window".into())
        })?;
        let mut shifts: BTreeMap<i64, u64> = BTreeMap::new();
        for (key, &m) in &r.entries {
            let k = parse_power_label(key)
                .ok_or_else(|| Error::Ramification(format!("{key:?} is not of the form g^k")))?;
            *shifts.entry(k).or_insert(0) += m;
        }
        let vertices = window.clone().map(power_label).collect();
        let mut arrows = Vec::new();
        for x in window.clone() {
            for (&k, &m) in &shifts {
                if !window.contains(&(x + k)) {
                    continue;
                }
                for copy in 0..m {
                    arrows.push(Arrow {
                        source: power_label(x),
                        target: power_label(x + k),
                        class: power_label(k),
                        copy,
                    });
                }
            }
        }
        return Ok(HopfQuiver { vertices, arrows });
    }
    let fg = g.finite()?;
    let data = resolve_datum(&fg, r)?;
    let mut arrows = Vec::new();
    for x in 0..fg.len() {
        for (class, id, m) in &data {
            for &c in class {
                for copy in 0..*m {
                    arrows.push(Arrow {
                        source: fg.labels[x].clone(),
                        target: fg.labels[fg.mul(c, x)].clone(),
                        class: id.clone(),
                        copy,
                    });
                }
            }
        }
    }
    Ok(HopfQuiver {
        vertices: fg.labels.clone(),
        arrows,
    })
}

fn parse_power_label(s: &str) -> Option<i64> {
    match s.trim() {
        "e" => Some(0),
        "g" => Some(1),
        other => other.strip_prefix("g^")?.parse().ok(),
    }
}

/// True iff the classes with nonzero multiplicity generate the group.
pub fn is_connected_hopf_quiver(g: &GroupSpec, r: &RamificationDatum) -> Result<bool> {
    let fg = g.finite()?;
    let data = resolve_datum(&fg, r)?;
    let gens: Vec<usize> = data
        .iter()
        .filter(|(_, _, m)| *m > 0)
        .flat_map(|(c, _, _)| c.iter().copied())
        .collect();
    let e = fg.identity();
    let mut closure = BTreeSet::from([e]);
    let mut queue = VecDeque::from([e]);
    while let Some(x) = queue.pop_front() {
        for &s in &gens {
            let y = fg.mul(s, x);
            if closure.insert(y) {
                queue.push_back(y);
            }
        }
    }
    Ok(closure.len() == fg.len())
}

/// The two minimal Hopf quivers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum QuiverKind {
    Cycle(u64),
    Chain,
}

impl QuiverKind {
    pub fn reduce(self, i: i64) -> i64 {
        match self {
            QuiverKind::Cycle(n) => i.rem_euclid(n as i64),
            QuiverKind::Chain => i,
        }
    }

    /// Index equality: congruence mod n on the cycle, equality on the chain.
    pub fn same_index(self, a: i64, b: i64) -> bool {
        self.reduce(a) == self.reduce(b)
    }
}

impl fmt::Display for QuiverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuiverKind::Cycle(n) => write!(f, "cycle({n})"),
            QuiverKind::Chain => write!(f, "chain"),
        }
    }
}

/// The path `p_i^l` of length `l` starting at vertex `g^i`; `l = 0` is the vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Path {
    kind: QuiverKind,
    source: i64,
    length: u64,
}

impl Path {
    pub fn new(kind: QuiverKind, source: i64, length: u64) -> Self {
        Path {
            kind,
            source: kind.reduce(source),
            length,
        }
    }

    pub fn vertex(kind: QuiverKind, i: i64) -> Self {
        Path::new(kind, i, 0)
    }

    pub fn kind(&self) -> QuiverKind {
        self.kind
    }

    pub fn source(&self) -> i64 {
        self.source
    }

    pub fn length(&self) -> u64 {
        self.length
    }

    pub fn target(&self) -> i64 {
        self.kind.reduce(self.source + self.length as i64)
    }

    pub fn is_vertex(&self) -> bool {
        self.length == 0
    }

    /// `later · earlier` as composition of paths: defined when `later` starts where `earlier` ends.
    pub fn concat(later: &Path, earlier: &Path) -> Option<Path> {
        if later.kind != earlier.kind || later.source != earlier.target() {
            return None;
        }
        Some(Path::new(
            earlier.kind,
            earlier.source,
            earlier.length + later.length,
        ))
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.kind, self.length, self.source).cmp(&(other.kind, other.length, other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.length == 0 {
            write!(f, "g^{}", self.source)
        } else {
            write!(f, "p[{},{}]", self.source, self.length)
        }
    }
}

impl crate::linear::TermKey for Path {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Path {
    /// Parses `p[i,l]` or `g^i`.
    pub fn parse(kind: QuiverKind, text: &str) -> Result<Path> {
        let t = text.trim();
        let bad = || Error::Parse(format!("path {t:?}"));
        if let Some(rest) = t.strip_prefix("g^") {
            let i: i64 = rest.trim().parse().map_err(|_| bad())?;
            return Ok(Path::vertex(kind, i));
        }
        let inner = t
            .strip_prefix("p[")
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (i, l) = inner.split_once(',').ok_or_else(bad)?;
        let i: i64 = i.trim().parse().map_err(|_| bad())?;
        let l: u64 = l.trim().parse().map_err(|_| bad())?;
        Ok(Path::new(kind, i, l))
    }
}

/// All `p_i^l` with `l ≤ max_len`; cycle sources are `0..n`, chain sources the window.
pub fn enumerate_paths(kind: QuiverKind, max_len: u64, window: RangeInclusive<i64>) -> Vec<Path> {
    let sources: Vec<i64> = match kind {
        QuiverKind::Cycle(n) => (0..n as i64).collect(),
        QuiverKind::Chain => window.collect(),
    };
    let mut out: Vec<Path> = (0..=max_len)
        .flat_map(|l| sources.iter().map(move |&i| Path::new(kind, i, l)))
        .collect();
    out.sort();
    out
}
