//! Dynkin diagrams, root systems, Cartan pairings and Weyl orbits.
//!
//! Nodes carry arbitrary labels so that subdiagrams keep the labels of the
//! ambient diagram. Simple diagrams built from a [`DiagramSpec`] use the
//! Bourbaki numbering 1..=rank.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::field::{q, solve, Q};
use crate::{Error, Result};

pub const DEFAULT_ORBIT_GUARD: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Series> {
        Some(match c.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiagramSpec {
    pub series: Series,
    pub rank: usize,
}

impl DiagramSpec {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let bound = match series {
            Series::A if rank < 1 => Some("rank >= 1"),
            Series::B | Series::C if rank < 2 => Some("rank >= 2"),
            Series::D if rank < 3 => Some("rank >= 3"),
            Series::E if !(6..=8).contains(&rank) => Some("rank in {6,7,8}"),
            Series::F if rank != 4 => Some("rank = 4"),
            Series::G if rank != 2 => Some("rank = 2"),
            _ => None,
        };
        match bound {
            Some(b) => Err(Error::InvalidRank { series: series.letter(), rank, bound: b.into() }),
            None => Ok(DiagramSpec { series, rank }),
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.series, Series::A | Series::D | Series::E)
    }

    /// All valid specs with rank at most `max_rank` (exceptionals included when they fit).
    pub fn all_up_to(max_rank: usize) -> Vec<DiagramSpec> {
        let mut out = Vec::new();
        for s in [Series::A, Series::B, Series::C, Series::D, Series::E, Series::F, Series::G] {
            for r in 1..=max_rank {
                if let Ok(d) = DiagramSpec::new(s, r) {
                    out.push(d);
                }
            }
        }
        out
    }

    /// Parse `<letter><rank>`; `offset` shifts reported positions.
    pub fn parse_at(s: &str, full: &str, offset: usize) -> Result<Self> {
        let mut chars = s.chars();
        let Some(c) = chars.next() else {
            return Err(Error::parse(full, offset, "expected series letter"));
        };
        let Some(series) = Series::from_letter(c) else {
            return Err(Error::parse(full, offset, format!("unknown series '{c}'")));
        };
        let digits: &str = &s[c.len_utf8()..];
        if digits.is_empty() {
            return Err(Error::parse(full, offset + 1, "expected rank"));
        }
        if let Some((i, bad)) = digits.char_indices().find(|(_, ch)| !ch.is_ascii_digit()) {
            return Err(Error::parse(full, offset + 1 + i, format!("unexpected '{bad}' in rank")));
        }
        let rank: usize = digits
            .parse()
            .map_err(|_| Error::parse(full, offset + 1, "rank too large"))?;
        DiagramSpec::new(series, rank).map_err(|e| Error::parse(full, offset + 1, e.to_string()))
    }
}

impl FromStr for DiagramSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DiagramSpec::parse_at(s.trim(), s.trim(), 0)
    }
}

impl fmt::Display for DiagramSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub bond: u8,
    /// The endpoint carrying the shorter root, present iff bond > 1.
    pub arrow_to: Option<usize>,
}

impl Edge {
    pub fn other(&self, n: usize) -> usize {
        if self.a == n {
            self.b
        } else {
            self.a
        }
    }
    pub fn touches(&self, n: usize) -> bool {
        self.a == n || self.b == n
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DynkinDiagram {
    nodes: Vec<usize>,
    edges: Vec<Edge>,
}

impl DynkinDiagram {
    /// Build from explicit data. Validates arrows; does not require a Dynkin shape.
    pub fn from_parts(nodes: impl IntoIterator<Item = usize>, edges: Vec<Edge>) -> Result<Self> {
        let nodes: BTreeSet<usize> = nodes.into_iter().collect();
        let mut norm = Vec::new();
        for e in edges {
            if e.a == e.b || !nodes.contains(&e.a) || !nodes.contains(&e.b) {
                return Err(Error::Invalid(format!("bad edge {e:?}")));
            }
            if !(1..=3).contains(&e.bond) {
                return Err(Error::Invalid(format!("bad bond {}", e.bond)));
            }
            match (e.bond > 1, e.arrow_to) {
                (true, Some(t)) if e.touches(t) => {}
                (false, None) => {}
                _ => return Err(Error::Invalid(format!("bad arrow on edge {e:?}"))),
            }
            let (a, b) = if e.a < e.b { (e.a, e.b) } else { (e.b, e.a) };
            norm.push(Edge { a, b, bond: e.bond, arrow_to: e.arrow_to });
        }
        norm.sort();
        norm.dedup_by(|x, y| x.a == y.a && x.b == y.b);
        Ok(DynkinDiagram { nodes: nodes.into_iter().collect(), edges: norm })
    }

    pub fn empty() -> Self {
        DynkinDiagram { nodes: vec![], edges: vec![] }
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }
    pub fn rank(&self) -> usize {
        self.nodes.len()
    }
    pub fn contains(&self, n: usize) -> bool {
        self.nodes.binary_search(&n).is_ok()
    }

    pub fn edge(&self, a: usize, b: usize) -> Option<&Edge> {
        self.edges.iter().find(|e| e.touches(a) && e.touches(b))
    }

    pub fn neighbors(&self, n: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.edges.iter().filter(|e| e.touches(n)).map(|e| e.other(n)).collect();
        v.sort();
        v
    }

    pub fn degree(&self, n: usize) -> usize {
        self.edges.iter().filter(|e| e.touches(n)).count()
    }

    /// Subdiagram on the given nodes with the induced edges.
    pub fn induced(&self, keep: &BTreeSet<usize>) -> DynkinDiagram {
        DynkinDiagram {
            nodes: self.nodes.iter().copied().filter(|n| keep.contains(n)).collect(),
            edges: self
                .edges
                .iter()
                .filter(|e| keep.contains(&e.a) && keep.contains(&e.b))
                .copied()
                .collect(),
        }
    }

    pub fn without(&self, remove: &BTreeSet<usize>) -> DynkinDiagram {
        let keep: BTreeSet<usize> = self.nodes.iter().copied().filter(|n| !remove.contains(n)).collect();
        self.induced(&keep)
    }

    /// Connected components, each sorted, ordered by smallest node.
    pub fn components(&self) -> Vec<BTreeSet<usize>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for &s in &self.nodes {
            if seen.contains(&s) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([s]);
            seen.insert(s);
            while let Some(n) = queue.pop_front() {
                comp.insert(n);
                for m in self.neighbors(n) {
                    if seen.insert(m) {
                        queue.push_back(m);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn component_of(&self, n: usize) -> Option<BTreeSet<usize>> {
        self.components().into_iter().find(|c| c.contains(&n))
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Same graph with every arrow reversed (the diagram of the dual root system).
    pub fn dual(&self) -> DynkinDiagram {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { arrow_to: e.arrow_to.map(|t| e.other(t)), ..*e })
            .collect();
        DynkinDiagram { nodes: self.nodes.clone(), edges }
    }

    /// n(α_a, α_b) = 2(α_a, α_b)/(α_b, α_b).
    pub fn cartan_entry(&self, a: usize, b: usize) -> i64 {
        if a == b {
            return 2;
        }
        match self.edge(a, b) {
            None => 0,
            Some(e) if e.arrow_to == Some(b) => -(e.bond as i64),
            Some(_) => -1,
        }
    }

    /// Relabel nodes through `map` (old → new).
    pub fn relabel(&self, map: &BTreeMap<usize, usize>) -> DynkinDiagram {
        let f = |n: usize| map.get(&n).copied().unwrap_or(n);
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { a: f(e.a), b: f(e.b), bond: e.bond, arrow_to: e.arrow_to.map(f) })
            .collect();
        DynkinDiagram::from_parts(self.nodes.iter().map(|&n| f(n)), edges).expect("relabel keeps validity")
    }
}

pub fn build_diagram(spec: DiagramSpec) -> DynkinDiagram {
    let n = spec.rank;
    let simple = |a: usize, b: usize| Edge { a, b, bond: 1, arrow_to: None };
    let mut edges = Vec::new();
    match spec.series {
        Series::A => (1..n).for_each(|i| edges.push(simple(i, i + 1))),
        Series::B | Series::C => {
            (1..n - 1).for_each(|i| edges.push(simple(i, i + 1)));
            let short = if spec.series == Series::B { n } else { n - 1 };
            edges.push(Edge { a: n - 1, b: n, bond: 2, arrow_to: Some(short) });
        }
        Series::D => {
            (1..n - 1).for_each(|i| edges.push(simple(i, i + 1)));
            edges.push(simple(n - 2, n));
        }
        Series::E => {
            edges.push(simple(1, 3));
            edges.push(simple(2, 4));
            (3..n).for_each(|i| edges.push(simple(i, i + 1)));
        }
        Series::F => {
            edges.push(simple(1, 2));
            edges.push(Edge { a: 2, b: 3, bond: 2, arrow_to: Some(3) });
            edges.push(simple(3, 4));
        }
        Series::G => edges.push(Edge { a: 1, b: 2, bond: 3, arrow_to: Some(1) }),
    }
    DynkinDiagram::from_parts(1..=n, edges).expect("Bourbaki diagrams are valid")
}

/// Identify a connected Dynkin diagram. Returns its type and the node carrying
/// each Bourbaki label (`labels[k-1]` is the node with label k).
pub fn identify(d: &DynkinDiagram) -> Result<(DiagramSpec, Vec<usize>)> {
    let n = d.rank();
    if n == 0 || !d.is_connected() || d.edges().len() != n - 1 {
        return Err(Error::Invalid("not a connected tree".into()));
    }
    let multi: Vec<&Edge> = d.edges().iter().filter(|e| e.bond > 1).collect();
    let max_deg = d.nodes().iter().map(|&v| d.degree(v)).max().unwrap_or(0);
    let not_dynkin = || Error::Invalid("not a Dynkin diagram".into());
    // path from an end node
    let walk = |start: usize| -> Vec<usize> {
        let mut path = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next: Vec<usize> = d.neighbors(cur).into_iter().filter(|&m| m != prev).collect();
            match next.first() {
                Some(&m) if next.len() == 1 => {
                    prev = cur;
                    cur = m;
                    path.push(m);
                }
                _ => return path,
            }
        }
    };
    if multi.len() > 1 {
        return Err(not_dynkin());
    }
    if let Some(e) = multi.first() {
        let short = e.arrow_to.unwrap();
        let long = e.other(short);
        if max_deg > 2 {
            return Err(not_dynkin());
        }
        if e.bond == 3 {
            if n != 2 {
                return Err(not_dynkin());
            }
            return Ok((DiagramSpec::new(Series::G, 2)?, vec![short, long]));
        }
        if n == 2 {
            return Ok((DiagramSpec::new(Series::B, 2)?, vec![long, short]));
        }
        if d.degree(short) == 1 {
            // B_n: walk from the far end towards the short end
            let mut path = walk(short);
            path.reverse();
            return Ok((DiagramSpec::new(Series::B, n)?, path));
        }
        if d.degree(long) == 1 {
            let mut path = walk(long);
            path.reverse();
            return Ok((DiagramSpec::new(Series::C, n)?, path));
        }
        if n == 4 {
            let one = d.neighbors(long).into_iter().find(|&m| m != short).ok_or_else(not_dynkin)?;
            let four = d.neighbors(short).into_iter().find(|&m| m != long).ok_or_else(not_dynkin)?;
            return Ok((DiagramSpec::new(Series::F, 4)?, vec![one, long, short, four]));
        }
        return Err(not_dynkin());
    }
    if max_deg <= 2 {
        let ends: Vec<usize> = d.nodes().iter().copied().filter(|&v| d.degree(v) <= 1).collect();
        let start = *ends.iter().min().unwrap();
        return Ok((DiagramSpec::new(Series::A, n)?, walk(start)));
    }
    let branch: Vec<usize> = d.nodes().iter().copied().filter(|&v| d.degree(v) == 3).collect();
    if branch.len() != 1 || max_deg > 3 {
        return Err(not_dynkin());
    }
    let b = branch[0];
    // arms as lists from the node adjacent to b out to the tip
    let mut arms: Vec<Vec<usize>> = d
        .neighbors(b)
        .into_iter()
        .map(|m| {
            let mut arm = vec![m];
            let mut prev = b;
            let mut cur = m;
            while let Some(&nx) = d.neighbors(cur).iter().find(|&&x| x != prev) {
                prev = cur;
                cur = nx;
                arm.push(nx);
            }
            arm
        })
        .collect();
    arms.sort_by_key(|a| (a.len(), *a.last().unwrap()));
    let lens: Vec<usize> = arms.iter().map(|a| a.len()).collect();
    let rev = |a: &Vec<usize>| a.iter().rev().copied().collect::<Vec<usize>>();
    match lens.as_slice() {
        [1, 1, k] => {
            // D_{k+3}; with k = 1 the arm with the smallest tip is the "long" arm
            let (long, tips) = if *k == 1 {
                (arms[0].clone(), vec![arms[1][0], arms[2][0]])
            } else {
                (arms[2].clone(), vec![arms[0][0], arms[1][0]])
            };
            let mut labels = rev(&long);
            labels.push(b);
            let (t1, t2) = (tips[0].min(tips[1]), tips[0].max(tips[1]));
            labels.push(t1);
            labels.push(t2);
            Ok((DiagramSpec::new(Series::D, n)?, labels))
        }
        [1, 2, k] if (2..=4).contains(k) => {
            let two = arms[0][0];
            // for E6 the two arms of length 2 tie; the one with the smaller tip gets labels 1, 3
            let (first, rest) = (arms[1].clone(), arms[2].clone());
            let mut labels = vec![first[1], two, first[0], b];
            labels.extend(rest.iter().copied());
            Ok((DiagramSpec::new(Series::E, n)?, labels))
        }
        _ => Err(not_dynkin()),
    }
}

/// Isomorphism of arrowed multigraphs extending the partial map `fixed`.
pub fn find_isomorphism(
    a: &DynkinDiagram,
    b: &DynkinDiagram,
    fixed: &[(usize, usize)],
) -> Option<BTreeMap<usize, usize>> {
    if a.rank() != b.rank() || a.edges().len() != b.edges().len() {
        return None;
    }
    let mut map: BTreeMap<usize, usize> = BTreeMap::new();
    let mut used = HashSet::new();
    for &(x, y) in fixed {
        if !a.contains(x) || !b.contains(y) || !used.insert(y) {
            return None;
        }
        map.insert(x, y);
    }
    let order: Vec<usize> = a.nodes().iter().copied().filter(|n| !map.contains_key(n)).collect();
    fn consistent(a: &DynkinDiagram, b: &DynkinDiagram, map: &BTreeMap<usize, usize>, x: usize) -> bool {
        let y = map[&x];
        if a.degree(x) != b.degree(y) {
            return false;
        }
        for (&u, &v) in map.iter() {
            if u == x {
                continue;
            }
            let ea = a.edge(x, u);
            let eb = b.edge(y, v);
            match (ea, eb) {
                (None, None) => {}
                (Some(ea), Some(eb)) => {
                    if ea.bond != eb.bond {
                        return false;
                    }
                    let ta = ea.arrow_to.map(|t| map[&t]);
                    if ta != eb.arrow_to {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        true
    }
    fn go(
        a: &DynkinDiagram,
        b: &DynkinDiagram,
        order: &[usize],
        map: &mut BTreeMap<usize, usize>,
        used: &mut HashSet<usize>,
    ) -> bool {
        let Some((&x, rest)) = order.split_first() else {
            return true;
        };
        for &y in b.nodes() {
            if used.contains(&y) {
                continue;
            }
            map.insert(x, y);
            used.insert(y);
            if consistent(a, b, map, x) && go(a, b, rest, map, used) {
                return true;
            }
            map.remove(&x);
            used.remove(&y);
        }
        false
    }
    for &(x, _) in fixed {
        if !consistent(a, b, &map, x) {
            return None;
        }
    }
    if go(a, b, &order, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub coeffs: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }
    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0) && self.coeffs.iter().any(|&c| c > 0)
    }
    pub fn neg(&self) -> Root {
        Root { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    pub fn add(&self, o: &Root) -> Root {
        Root { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }
    pub fn sub(&self, o: &Root) -> Root {
        Root { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }
    pub fn scale(&self, k: i64) -> Root {
        Root { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub marks: Vec<i64>,
}

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight { marks: vec![0; rank] }
    }
    pub fn fundamental(rank: usize, pos: usize) -> Self {
        let mut w = Weight::zero(rank);
        w.marks[pos] = 1;
        w
    }
    pub fn is_dominant(&self) -> bool {
        self.marks.iter().all(|&m| m >= 0)
    }
    pub fn add(&self, o: &Weight) -> Weight {
        Weight { marks: self.marks.iter().zip(&o.marks).map(|(a, b)| a + b).collect() }
    }
    pub fn sub(&self, o: &Weight) -> Weight {
        Weight { marks: self.marks.iter().zip(&o.marks).map(|(a, b)| a - b).collect() }
    }
    pub fn is_zero(&self) -> bool {
        self.marks.iter().all(|&m| m == 0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, m) in self.marks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LengthClass {
    Long,
    Short,
}

/// Anything that can be paired with a simple coroot.
pub trait Pairable {
    fn pair(&self, r: &RootSystem, pos: usize) -> i64;
}

impl Pairable for Root {
    fn pair(&self, r: &RootSystem, pos: usize) -> i64 {
        self.coeffs.iter().enumerate().map(|(a, c)| c * r.cartan[a][pos]).sum()
    }
}

impl Pairable for Weight {
    fn pair(&self, _r: &RootSystem, pos: usize) -> i64 {
        self.marks[pos]
    }
}

/// Root system of a (possibly disconnected) Dynkin diagram. Vectors are
/// indexed by position in the sorted node list.
#[derive(Clone, Debug)]
pub struct RootSystem {
    diagram: DynkinDiagram,
    /// cartan[a][b] = n(α_a, α_b)
    cartan: Vec<Vec<i64>>,
    /// (α_a, α_a), long roots normalised to 2 in each component
    sq: Vec<Q>,
    positive: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
    lengths: Vec<LengthClass>,
}

pub fn build_root_system(d: &DynkinDiagram) -> RootSystem {
    let nodes = d.nodes().to_vec();
    let r = nodes.len();
    let cartan: Vec<Vec<i64>> =
        (0..r).map(|a| (0..r).map(|b| d.cartan_entry(nodes[a], nodes[b])).collect()).collect();
    // squared lengths: propagate ratios along edges, then normalise long = 2
    let mut sq: Vec<Option<Q>> = vec![None; r];
    let pos: HashMap<usize, usize> = nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    for comp in d.components() {
        let start = pos[comp.iter().next().unwrap()];
        sq[start] = Some(q(1));
        let mut queue = VecDeque::from([start]);
        while let Some(a) = queue.pop_front() {
            for m in d.neighbors(nodes[a]) {
                let b = pos[&m];
                if sq[b].is_none() {
                    // (α_a,α_b) symmetric: n(a,b)·sq_b = n(b,a)·sq_a
                    let v = sq[a].clone().unwrap() * q(cartan[b][a]) / q(cartan[a][b]);
                    sq[b] = Some(v);
                    queue.push_back(b);
                }
            }
        }
        let max = comp.iter().map(|n| sq[pos[n]].clone().unwrap()).max().unwrap();
        for n in &comp {
            let v = sq[pos[n]].clone().unwrap() * q(2) / max.clone();
            sq[pos[n]] = Some(v);
        }
    }
    let sq: Vec<Q> = sq.into_iter().map(|x| x.unwrap()).collect();
    let mut rs = RootSystem {
        diagram: d.clone(),
        cartan,
        sq,
        positive: vec![],
        index: HashMap::new(),
        lengths: vec![],
    };
    rs.close_roots();
    rs
}

impl RootSystem {
    pub fn of(spec: DiagramSpec) -> RootSystem {
        build_root_system(&build_diagram(spec))
    }

    fn close_roots(&mut self) {
        let r = self.rank();
        let mut all: HashSet<Vec<i64>> = HashSet::new();
        let mut level: Vec<Vec<i64>> = (0..r)
            .map(|a| {
                let mut v = vec![0; r];
                v[a] = 1;
                v
            })
            .collect();
        let mut ordered: Vec<Vec<i64>> = Vec::new();
        while !level.is_empty() {
            level.sort_by(|x, y| y.cmp(x));
            for v in &level {
                all.insert(v.clone());
            }
            ordered.extend(level.iter().cloned());
            let mut next: BTreeSet<Vec<i64>> = BTreeSet::new();
            for beta in &level {
                for i in 0..r {
                    // p = largest k with β − kα_i a root
                    let mut p = 0;
                    loop {
                        let mut t = beta.clone();
                        t[i] -= p + 1;
                        if all.contains(&t) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let n: i64 = (0..r).map(|a| beta[a] * self.cartan[a][i]).sum();
                    if p - n > 0 {
                        let mut t = beta.clone();
                        t[i] += 1;
                        next.insert(t);
                    }
                }
            }
            level = next.into_iter().collect();
        }
        self.positive = ordered.into_iter().map(|coeffs| Root { coeffs }).collect();
        self.index = self.positive.iter().enumerate().map(|(i, b)| (b.coeffs.clone(), i)).collect();
        let sqs: Vec<Q> = self.positive.iter().map(|b| self.inner(b, b)).collect();
        self.lengths = self
            .positive
            .iter()
            .zip(&sqs)
            .map(|(b, s)| {
                // long relative to the component containing the root
                let comp_max = self.component_max_sq(b);
                if *s == comp_max {
                    LengthClass::Long
                } else {
                    LengthClass::Short
                }
            })
            .collect();
    }

    fn component_max_sq(&self, b: &Root) -> Q {
        let a = b.coeffs.iter().position(|&c| c != 0).unwrap();
        let comp = self.diagram.component_of(self.diagram.nodes()[a]).unwrap();
        comp.iter().map(|n| self.sq[self.pos(*n)].clone()).max().unwrap()
    }

    pub fn diagram(&self) -> &DynkinDiagram {
        &self.diagram
    }
    pub fn rank(&self) -> usize {
        self.diagram.rank()
    }
    pub fn nodes(&self) -> &[usize] {
        self.diagram.nodes()
    }
    /// Position of a node label in coefficient vectors.
    pub fn pos(&self, node: usize) -> usize {
        self.diagram.nodes().binary_search(&node).expect("node of the diagram")
    }
    pub fn node(&self, pos: usize) -> usize {
        self.diagram.nodes()[pos]
    }
    pub fn cartan(&self) -> &Vec<Vec<i64>> {
        &self.cartan
    }
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }
    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }
    pub fn highest_root(&self) -> &Root {
        self.positive.last().expect("nonempty system")
    }
    pub fn length_class(&self, b: &Root) -> Option<LengthClass> {
        let b = if b.is_positive() { b.clone() } else { b.neg() };
        self.index.get(&b.coeffs).map(|&i| self.lengths[i])
    }
    pub fn simple_root(&self, node: usize) -> Root {
        let mut v = vec![0; self.rank()];
        v[self.pos(node)] = 1;
        Root { coeffs: v }
    }
    pub fn is_root(&self, b: &Root) -> bool {
        self.index.contains_key(&b.coeffs) || self.index.contains_key(&b.neg().coeffs)
    }
    pub fn is_positive_root(&self, b: &Root) -> bool {
        self.index.contains_key(&b.coeffs)
    }

    /// Squared length (α_a, α_a) of the simple root at position a.
    pub fn simple_sq(&self, a: usize) -> &Q {
        &self.sq[a]
    }

    pub fn inner(&self, x: &Root, y: &Root) -> Q {
        let r = self.rank();
        let mut s = q(0);
        for a in 0..r {
            if x.coeffs[a] == 0 {
                continue;
            }
            for b in 0..r {
                if y.coeffs[b] == 0 || self.cartan[a][b] == 0 {
                    continue;
                }
                // (α_a, α_b) = n(α_a, α_b)(α_b, α_b)/2
                s += q(x.coeffs[a] * y.coeffs[b] * self.cartan[a][b]) * self.sq[b].clone() / q(2);
            }
        }
        s
    }

    /// n(β, α_node) for a root or weight β.
    pub fn pairing<P: Pairable>(&self, beta: &P, node: usize) -> i64 {
        beta.pair(self, self.pos(node))
    }

    /// n(β, α) = 2(β, α)/(α, α) for two roots.
    pub fn pairing_roots(&self, beta: &Root, alpha: &Root) -> i64 {
        let v = q(2) * self.inner(beta, alpha) / self.inner(alpha, alpha);
        assert!(v.is_integer(), "non-integral pairing");
        i64::try_from(v.to_integer()).unwrap()
    }

    pub fn reflect(&self, beta: &Root, alpha: &Root) -> Root {
        beta.sub(&alpha.scale(self.pairing_roots(beta, alpha)))
    }

    pub fn root_to_weight(&self, b: &Root) -> Weight {
        Weight { marks: (0..self.rank()).map(|j| b.pair(self, j)).collect() }
    }

    /// Coordinates of a weight in the basis of simple roots.
    pub fn weight_to_root_coords(&self, w: &Weight) -> Vec<Q> {
        let r = self.rank();
        // marks_j = Σ_a c_a cartan[a][j]
        let m: Vec<Vec<Q>> = (0..r).map(|j| (0..r).map(|a| q(self.cartan[a][j])).collect()).collect();
        let b: Vec<Q> = w.marks.iter().map(|&x| q(x)).collect();
        solve(&m, &b).expect("Cartan matrix is invertible")
    }

    /// Inner product of two weights.
    pub fn weight_inner(&self, x: &Weight, y: &Weight) -> Q {
        // (x, y) = Σ_a c_a(x) (α_a, y) with (α_a, y) = y_a (α_a,α_a)/2
        let c = self.weight_to_root_coords(x);
        let mut s = q(0);
        for a in 0..self.rank() {
            if !c[a].is_zero() && y.marks[a] != 0 {
                s += c[a].clone() * q(y.marks[a]) * self.sq[a].clone() / q(2);
            }
        }
        s
    }

    /// (λ, β) for a weight λ and a root β.
    pub fn weight_root_inner(&self, w: &Weight, b: &Root) -> Q {
        let mut s = q(0);
        for a in 0..self.rank() {
            if b.coeffs[a] != 0 && w.marks[a] != 0 {
                s += q(b.coeffs[a] * w.marks[a]) * self.sq[a].clone() / q(2);
            }
        }
        s
    }

    /// Simple reflection s_i on a weight: λ − λ_i α_i.
    pub fn reflect_weight(&self, w: &Weight, pos: usize) -> Weight {
        let k = w.marks[pos];
        if k == 0 {
            return w.clone();
        }
        Weight { marks: (0..self.rank()).map(|j| w.marks[j] - k * self.cartan[pos][j]).collect() }
    }

    /// The dominant weight in the W-orbit of `w`.
    pub fn dominant_conjugate(&self, w: &Weight) -> Weight {
        let mut w = w.clone();
        while let Some(p) = w.marks.iter().position(|&m| m < 0) {
            w = self.reflect_weight(&w, p);
        }
        w
    }

    /// Orbit of λ under the group generated by s_i for i in `generators` (node labels).
    pub fn weyl_orbit(&self, w: &Weight, generators: &BTreeSet<usize>, guard: u64) -> Result<BTreeSet<Weight>> {
        let gens: Vec<usize> = generators.iter().map(|&n| self.pos(n)).collect();
        let mut seen: HashSet<Weight> = HashSet::from([w.clone()]);
        let mut queue = VecDeque::from([w.clone()]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.reflect_weight(&x, g);
                if !seen.contains(&y) {
                    if seen.len() as u64 >= guard {
                        return Err(Error::guard("weyl_orbit", seen.len() as u64, guard));
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// ρ = Σ ω_i.
    pub fn rho(&self) -> Weight {
        Weight { marks: vec![1; self.rank()] }
    }

    /// Node labels of the nodes where the root has a nonzero coefficient.
    pub fn support(&self, b: &Root) -> BTreeSet<usize> {
        b.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(a, _)| self.node(a)).collect()
    }

    /// Coefficient of α_node in β.
    pub fn coeff(&self, b: &Root, node: usize) -> i64 {
        b.coeffs[self.pos(node)]
    }
}
