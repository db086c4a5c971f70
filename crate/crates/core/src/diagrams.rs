//! Coxeter diagrams and their Gram (Cartan) matrices.
//!
//! Nodes are 0-based internally; the text grammar and all printed output use
//! 1-based labels.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalars::GoldenScalar;

/// Edge label `m = num/den`. The mirror angle is `den·π/num`; Gram entry
/// `−2cos(den·π/num)`. Ordinary Coxeter bonds have `den = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Bond {
    pub num: u32,
    pub den: u32,
}

impl Bond {
    pub const ABSENT: Bond = Bond { num: 2, den: 1 };
    pub const SIMPLE: Bond = Bond { num: 3, den: 1 };

    pub fn new(num: u32, den: u32) -> Result<Self> {
        if den == 0 || num <= den || gcd(num, den) != 1 {
            return Err(Error::MalformedDiagram(format!("invalid bond label {num}/{den}")));
        }
        Ok(Self { num, den })
    }

    pub fn integer(m: u32) -> Result<Self> {
        Self::new(m, 1)
    }

    pub fn is_absent(&self) -> bool {
        *self == Self::ABSENT
    }

    /// `−2cos(den·π/num)` as a float.
    pub fn gram_entry(&self) -> f64 {
        -2.0 * (self.den as f64 * std::f64::consts::PI / self.num as f64).cos()
    }

    /// The Gram entry in the golden field, when it lies there.
    pub fn exact_gram_entry(&self) -> Option<GoldenScalar> {
        let tau = GoldenScalar::tau();
        let sigma = GoldenScalar::sigma();
        match (self.num, self.den) {
            (2, 1) => Some(GoldenScalar::zero()),
            (3, 1) => Some(GoldenScalar::from_int(-1)),
            (3, 2) => Some(GoldenScalar::one()),
            (5, 1) => Some(-tau),
            (5, 2) => Some(sigma),
            (5, 3) => Some(-sigma),
            (5, 4) => Some(tau),
            _ => None,
        }
    }
}

impl fmt::Display for Bond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Bond {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedDiagram(format!("bad edge label `{s}`"));
        match s.split_once('/') {
            Some((n, d)) => Bond::new(
                n.trim().parse().map_err(|_| bad())?,
                d.trim().parse().map_err(|_| bad())?,
            ),
            None => Bond::integer(s.trim().parse().map_err(|_| bad())?),
        }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoxeterDiagram {
    rank: usize,
    edges: BTreeMap<(usize, usize), Bond>,
    name: Option<String>,
}

impl CoxeterDiagram {
    /// Builds a diagram from 0-based `(i, j, bond)` triples.
    pub fn from_edges(
        rank: usize,
        edges: impl IntoIterator<Item = (usize, usize, Bond)>,
        name: Option<String>,
    ) -> Result<Self> {
        if rank == 0 {
            return Err(Error::MalformedDiagram("rank must be positive".into()));
        }
        let mut map = BTreeMap::new();
        for (i, j, bond) in edges {
            if i == j {
                return Err(Error::MalformedDiagram(format!("self-loop at node {}", i + 1)));
            }
            if i >= rank || j >= rank {
                return Err(Error::MalformedDiagram(format!(
                    "edge {}-{} out of range for rank {rank}",
                    i + 1,
                    j + 1
                )));
            }
            let key = (i.min(j), i.max(j));
            if map.contains_key(&key) {
                return Err(Error::MalformedDiagram(format!(
                    "duplicate edge {}-{}",
                    key.0 + 1,
                    key.1 + 1
                )));
            }
            if !bond.is_absent() {
                map.insert(key, bond);
            }
        }
        Ok(Self {
            rank,
            edges: map,
            name,
        })
    }

    fn chain(rank: usize, name: &str) -> Self {
        let edges = (0..rank.saturating_sub(1)).map(|i| (i, i + 1, Bond::SIMPLE));
        Self::from_edges(rank, edges, Some(name.to_string())).expect("valid chain")
    }

    /// `A_n`: a chain of `n` nodes.
    pub fn a(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::MalformedDiagram("A_n needs n ≥ 1".into()));
        }
        Ok(Self::chain(n, &format!("A{n}")))
    }

    /// `D_n`: chain `1..n−1` with node `n` attached to node `n−2`.
    pub fn d(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::MalformedDiagram("D_n needs n ≥ 4".into()));
        }
        let mut d = Self::chain(n - 1, "");
        d.rank = n;
        d.edges.insert((n - 3, n - 1), Bond::SIMPLE);
        d.name = Some(format!("D{n}"));
        Ok(d)
    }

    /// Chain `1..rank−1` with the last node hung off `branch` (0-based).
    fn branched(rank: usize, branch: usize, name: &str) -> Self {
        let mut d = Self::chain(rank - 1, name);
        d.rank = rank;
        d.edges.insert((branch, rank - 1), Bond::SIMPLE);
        d
    }

    pub fn e6() -> Self {
        Self::branched(6, 2, "E6")
    }

    pub fn e7() -> Self {
        Self::branched(7, 2, "E7")
    }

    /// Chain 1–2–3–4–5–6–7 with node 8 on node 5. With this labeling the node
    /// pairs (1,7),(2,6),(3,5),(4,8) fold E8 onto H4.
    pub fn e8() -> Self {
        Self::branched(8, 4, "E8")
    }

    pub fn h3() -> Self {
        let mut d = Self::chain(3, "H3");
        d.edges.insert((1, 2), Bond { num: 5, den: 1 });
        d
    }

    /// Chain with `m₃₄ = 5`: the third and fourth roots at 144°.
    pub fn h4() -> Self {
        let mut d = Self::chain(4, "H4");
        d.edges.insert((2, 3), Bond { num: 5, den: 1 });
        d
    }

    /// Same chain with the third and fourth roots at 72° (label 5/3).
    pub fn h4_prime() -> Self {
        let mut d = Self::chain(4, "H4'");
        d.edges.insert((2, 3), Bond { num: 5, den: 3 });
        d
    }

    pub fn i2(m: u32) -> Result<Self> {
        let bond = Bond::integer(m)?;
        Self::from_edges(2, [(0, 1, bond)], Some(format!("I2({m})")))
    }

    /// Parses `NAME` or `rank=N;edges=i-j:m,i-j,...` (1-based, `m` defaults to 3).
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.contains('=') {
            return Self::parse_edge_list(spec);
        }
        let unknown = || Error::UnknownDiagram(spec.to_string());
        match spec {
            "E6" => return Ok(Self::e6()),
            "E7" => return Ok(Self::e7()),
            "E8" => return Ok(Self::e8()),
            "H3" => return Ok(Self::h3()),
            "H4" => return Ok(Self::h4()),
            "H4'" => return Ok(Self::h4_prime()),
            _ => {}
        }
        if let Some(inner) = spec.strip_prefix("I2(").and_then(|s| s.strip_suffix(')')) {
            let m: u32 = inner.trim().parse().map_err(|_| unknown())?;
            return Self::i2(m);
        }
        if let Some(n) = spec.strip_prefix('A') {
            return Self::a(n.parse().map_err(|_| unknown())?);
        }
        if let Some(n) = spec.strip_prefix('D') {
            return Self::d(n.parse().map_err(|_| unknown())?);
        }
        Err(unknown())
    }

    fn parse_edge_list(spec: &str) -> Result<Self> {
        let bad = |msg: &str| Error::MalformedDiagram(format!("{msg} in `{spec}`"));
        let mut rank = None;
        let mut edges = Vec::new();
        for part in spec.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(|| bad("missing `=`"))?;
            match key.trim() {
                "rank" => {
                    rank = Some(value.trim().parse::<usize>().map_err(|_| bad("bad rank"))?)
                }
                "edges" => {
                    for edge in value.split(',').map(str::trim).filter(|e| !e.is_empty()) {
                        let (nodes, label) = match edge.split_once(':') {
                            Some((n, l)) => (n, l.parse::<Bond>()?),
                            None => (edge, Bond::SIMPLE),
                        };
                        let (i, j) = nodes.split_once('-').ok_or_else(|| bad("bad edge"))?;
                        let i: usize = i.trim().parse().map_err(|_| bad("bad node"))?;
                        let j: usize = j.trim().parse().map_err(|_| bad("bad node"))?;
                        if i == 0 || j == 0 {
                            return Err(bad("nodes are 1-based"));
                        }
                        edges.push((i - 1, j - 1, label));
                    }
                }
                other => return Err(bad(&format!("unknown key `{other}`"))),
            }
        }
        let rank = rank.ok_or_else(|| bad("missing rank"))?;
        Self::from_edges(rank, edges, None)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| self.to_spec())
    }

    /// The edge-list form of this diagram in the text grammar.
    pub fn to_spec(&self) -> String {
        let edges: Vec<String> = self
            .edges
            .iter()
            .map(|(&(i, j), b)| format!("{}-{}:{}", i + 1, j + 1, b))
            .collect();
        format!("rank={};edges={}", self.rank, edges.join(","))
    }

    /// 0-based `(i, j, bond)` with `i < j`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Bond)> + '_ {
        self.edges.iter().map(|(&(i, j), &b)| (i, j, b))
    }

    pub fn bond(&self, i: usize, j: usize) -> Bond {
        self.edges
            .get(&(i.min(j), i.max(j)))
            .copied()
            .unwrap_or(Bond::ABSENT)
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.keys().filter_map(move |&(a, b)| {
            if a == i {
                Some(b)
            } else if b == i {
                Some(a)
            } else {
                None
            }
        })
    }

    /// All bonds are simple (m = 3): the simply-laced Weyl groups.
    pub fn is_crystallographic(&self) -> bool {
        self.edges.values().all(|b| *b == Bond::SIMPLE)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.rank];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for j in self.neighbors(i) {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn gram_matrix(&self) -> GramMatrix {
        let n = self.rank;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let entry = if i == j {
                    GramEntry::Exact(GoldenScalar::from_int(2))
                } else {
                    let bond = self.bond(i, j);
                    match bond.exact_gram_entry() {
                        Some(g) => GramEntry::Exact(g),
                        None => GramEntry::Float(bond.gram_entry()),
                    }
                };
                entries.push(entry);
            }
        }
        GramMatrix { n, entries }
    }

    /// Two-colouring of the diagram graph. Node 1 (index 0) is always in the
    /// first class; each further component starts from its lowest node.
    pub fn bipartition(&self) -> Result<(BTreeSet<usize>, BTreeSet<usize>)> {
        let mut color: Vec<Option<bool>> = vec![None; self.rank];
        for start in 0..self.rank {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                let ci = color[i].expect("coloured");
                for j in self.neighbors(i) {
                    match color[j] {
                        None => {
                            color[j] = Some(!ci);
                            queue.push_back(j);
                        }
                        Some(cj) if cj == ci => return Err(Error::NotBipartite),
                        Some(_) => {}
                    }
                }
            }
        }
        let a = (0..self.rank).filter(|&i| color[i] == Some(false)).collect();
        let b = (0..self.rank).filter(|&i| color[i] == Some(true)).collect();
        Ok((a, b))
    }
}

impl FromStr for CoxeterDiagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for CoxeterDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (rank {})", self.label(), self.rank)
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum GramEntry {
    Exact(GoldenScalar),
    Float(f64),
}

impl GramEntry {
    pub fn to_f64(&self) -> f64 {
        match self {
            GramEntry::Exact(g) => g.to_f64(),
            GramEntry::Float(x) => *x,
        }
    }
}

/// Inner products of the simple roots; diagonal 2, off-diagonal `−2cos(π/m)`.
#[derive(Clone, PartialEq, Debug)]
pub struct GramMatrix {
    n: usize,
    entries: Vec<GramEntry>,
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &GramEntry {
        &self.entries[i * self.n + j]
    }

    pub fn exact(&self, i: usize, j: usize) -> Option<&GoldenScalar> {
        match self.entry(i, j) {
            GramEntry::Exact(g) => Some(g),
            GramEntry::Float(_) => None,
        }
    }

    /// True when every entry lies in the golden field.
    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(|e| matches!(e, GramEntry::Exact(_)))
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_fn(self.n, |i, j| self.entry(i, j).to_f64())
    }

    /// `2I − C`: the nonnegative matrix whose Perron pair defines the
    /// Coxeter plane.
    pub fn shifted_adjacency(&self) -> Matrix {
        Matrix::from_fn(self.n, |i, j| {
            let d = if i == j { 2.0 } else { 0.0 };
            d - self.entry(i, j).to_f64()
        })
    }

    pub fn is_positive_definite(&self) -> bool {
        self.to_matrix().leading_minors().iter().all(|&m| m > 1e-9)
    }
}

impl fmt::Display for GramMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| match self.entry(i, j) {
                    GramEntry::Exact(g) => g.to_string(),
                    GramEntry::Float(x) => format!("{x:.12}"),
                })
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
