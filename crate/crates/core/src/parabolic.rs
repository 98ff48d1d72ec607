//! Parabolic data for G/P_S: Δ_X, the graded tangent space, and the
//! classification of nodes (cominuscule, minuscule, exposed short) together
//! with the closed orbit Y₁ of the isotropy group on the tangent directions.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dynkin::{
    build_diagram, build_root_system, identify, DiagramSpec, DynkinDiagram, Root, RootSystem, Series,
    DEFAULT_ORBIT_GUARD,
};
use crate::reps::weyl_dim;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParabolicSpec {
    pub spec: DiagramSpec,
    pub s: BTreeSet<usize>,
}

impl ParabolicSpec {
    pub fn new(spec: DiagramSpec, s: impl IntoIterator<Item = usize>) -> Result<Self> {
        let s: BTreeSet<usize> = s.into_iter().collect();
        if s.is_empty() {
            return Err(Error::Invalid("S must be nonempty".into()));
        }
        if let Some(&bad) = s.iter().find(|&&n| n == 0 || n > spec.rank) {
            return Err(Error::Invalid(format!("node {bad} not in {spec}")));
        }
        Ok(ParabolicSpec { spec, s })
    }

    pub fn maximal(spec: DiagramSpec, i: usize) -> Result<Self> {
        ParabolicSpec::new(spec, [i])
    }

    pub fn diagram(&self) -> DynkinDiagram {
        build_diagram(self.spec)
    }

    pub fn root_system(&self) -> RootSystem {
        RootSystem::of(self.spec)
    }

    /// The unique node of a maximal parabolic.
    pub fn single(&self) -> Option<usize> {
        if self.s.len() == 1 {
            self.s.iter().next().copied()
        } else {
            None
        }
    }

    /// Parse `<Diagram>/P<n>` or `<Diagram>/P{n1,n2,..}` with positions relative to `full`.
    pub fn parse_at(s: &str, full: &str, offset: usize) -> Result<Self> {
        let Some(slash) = s.find('/') else {
            let spec = DiagramSpec::parse_at(s, full, offset)?;
            return Err(Error::parse(full, offset + s.len(), format!("expected '/P' after {spec}")));
        };
        let spec = DiagramSpec::parse_at(&s[..slash], full, offset)?;
        let rest = &s[slash + 1..];
        let base = offset + slash + 1;
        if !rest.starts_with(['P', 'p']) {
            return Err(Error::parse(full, base, "expected 'P'"));
        }
        let body = &rest[1..];
        let base = base + 1;
        let (inner, inner_off) = if let Some(b) = body.strip_prefix('{') {
            let Some(end) = b.find('}') else {
                return Err(Error::parse(full, base + body.len(), "missing '}'"));
            };
            if end + 1 != b.len() {
                return Err(Error::parse(full, base + 1 + end + 1, "trailing characters"));
            }
            (&b[..end], base + 1)
        } else {
            (body, base)
        };
        let mut nodes = BTreeSet::new();
        let mut pos = inner_off;
        for part in inner.split(',') {
            let t = part.trim();
            let lead = part.len() - part.trim_start().len();
            if t.is_empty() {
                return Err(Error::parse(full, pos + lead, "expected node number"));
            }
            let n: usize = t
                .parse()
                .map_err(|_| Error::parse(full, pos + lead, format!("bad node '{t}'")))?;
            if n == 0 || n > spec.rank {
                return Err(Error::parse(full, pos + lead, format!("node {n} not in {spec}")));
            }
            nodes.insert(n);
            pos += part.len() + 1;
        }
        ParabolicSpec::new(spec, nodes).map_err(|e| Error::parse(full, inner_off, e.to_string()))
    }
}

impl FromStr for ParabolicSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        ParabolicSpec::parse_at(t, t, 0)
    }
}

impl fmt::Display for ParabolicSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.single() {
            Some(i) => write!(f, "{}/P{}", self.spec, i),
            None => {
                let v: Vec<String> = self.s.iter().map(|n| n.to_string()).collect();
                write!(f, "{}/P{{{}}}", self.spec, v.join(","))
            }
        }
    }
}

/// Positive roots whose support meets S.
pub fn delta_x(r: &RootSystem, s: &BTreeSet<usize>) -> Vec<Root> {
    let pos: Vec<usize> = s.iter().filter(|n| r.diagram().contains(**n)).map(|&n| r.pos(n)).collect();
    r.positive_roots()
        .iter()
        .filter(|b| pos.iter().any(|&p| b.coeffs[p] > 0))
        .cloned()
        .collect()
}

pub fn dimension(ps: &ParabolicSpec) -> usize {
    delta_x(&ps.root_system(), &ps.s).len()
}

/// A connected component of a subdiagram with its Bourbaki relabeling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviComponent {
    pub spec: DiagramSpec,
    /// `labels[k-1]` is the original node carrying Bourbaki label k.
    pub labels: Vec<usize>,
}

impl LeviComponent {
    pub fn of(d: &DynkinDiagram) -> Result<Self> {
        let (spec, labels) = identify(d)?;
        Ok(LeviComponent { spec, labels })
    }

    pub fn label_of(&self, node: usize) -> Option<usize> {
        self.labels.iter().position(|&n| n == node).map(|p| p + 1)
    }

    pub fn nodes(&self) -> BTreeSet<usize> {
        self.labels.iter().copied().collect()
    }
}

/// Connected components of 𝒟 with the given nodes removed.
pub fn levi_components(d: &DynkinDiagram, s: &BTreeSet<usize>) -> Result<Vec<LeviComponent>> {
    let rest = d.without(s);
    rest.components().iter().map(|c| LeviComponent::of(&rest.induced(c))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedPiece {
    /// Degree profile over the sorted nodes of S.
    pub degree: Vec<i64>,
    pub roots: Vec<Root>,
    pub dim: usize,
    pub lowest_root: Root,
    /// Marks of the highest weight on the nodes of 𝒟∖S (original labels).
    pub h_highest_weight: BTreeMap<usize, i64>,
    /// The same marks per Levi component, in Bourbaki order of that component.
    pub component_marks: Vec<Vec<i64>>,
    /// Bound on the degree of a rational curve through the piece.
    pub curve_degree_bound: i64,
}

impl GradedPiece {
    pub fn total_degree(&self) -> i64 {
        self.degree.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grading {
    pub s: Vec<usize>,
    pub levi: Vec<LeviComponent>,
    pub pieces: Vec<GradedPiece>,
}

impl Grading {
    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.dim).collect()
    }
    pub fn piece(&self, degree: &[i64]) -> Option<&GradedPiece> {
        self.pieces.iter().find(|p| p.degree == degree)
    }
}

fn root_le(a: &Root, b: &Root) -> bool {
    a.coeffs.iter().zip(&b.coeffs).all(|(x, y)| x <= y)
}

/// Marks of φ for the degree-ε_i piece predicted by the marking recipe:
/// neighbors of i outside S get the bond multiplicity when the arrow points
/// to them, 1 otherwise.
pub fn marking_recipe(d: &DynkinDiagram, s: &BTreeSet<usize>, i: usize) -> BTreeMap<usize, i64> {
    let mut out: BTreeMap<usize, i64> = d.nodes().iter().filter(|n| !s.contains(n)).map(|&n| (n, 0)).collect();
    for j in d.neighbors(i) {
        if s.contains(&j) {
            continue;
        }
        let e = d.edge(i, j).unwrap();
        let m = if e.arrow_to == Some(j) { e.bond as i64 } else { 1 };
        out.insert(j, m);
    }
    out
}

pub fn grading(ps: &ParabolicSpec) -> Result<Grading> {
    let d = ps.diagram();
    let r = build_root_system(&d);
    grading_of(&r, &ps.s)
}

/// Grading of the tangent space for an arbitrary (possibly disconnected) root system.
pub fn grading_of(r: &RootSystem, s: &BTreeSet<usize>) -> Result<Grading> {
    let d = r.diagram().clone();
    let s_sorted: Vec<usize> = s.iter().copied().collect();
    let levi = levi_components(&d, s)?;
    let mut groups: BTreeMap<Vec<i64>, Vec<Root>> = BTreeMap::new();
    for b in delta_x(r, s) {
        let deg: Vec<i64> = s_sorted.iter().map(|&n| r.coeff(&b, n)).collect();
        groups.entry(deg).or_default().push(b);
    }
    let mut pieces = Vec::new();
    for (degree, roots) in groups {
        let minimal: Vec<&Root> =
            roots.iter().filter(|b| !roots.iter().any(|c| c != *b && root_le(c, b))).collect();
        if minimal.len() != 1 || !roots.iter().all(|b| root_le(minimal[0], b)) {
            return Err(Error::Inconsistent(format!("piece {degree:?} has no unique minimal root")));
        }
        let lowest = minimal[0].clone();
        let neg = lowest.neg();
        let hw: BTreeMap<usize, i64> =
            d.nodes().iter().filter(|n| !s.contains(n)).map(|&j| (j, r.pairing(&neg, j))).collect();
        if hw.values().any(|&m| m < 0) {
            return Err(Error::Inconsistent(format!("piece {degree:?} has a non-dominant weight")));
        }
        let total: i64 = degree.iter().sum();
        if total == 1 {
            let i = s_sorted[degree.iter().position(|&x| x == 1).unwrap()];
            if marking_recipe(&d, s, i) != hw {
                return Err(Error::Inconsistent(format!("marking recipe disagrees at node {i}")));
            }
        }
        let component_marks = levi.iter().map(|c| c.labels.iter().map(|n| hw[n]).collect()).collect();
        pieces.push(GradedPiece {
            dim: roots.len(),
            degree,
            roots,
            lowest_root: lowest,
            h_highest_weight: hw,
            component_marks,
            curve_degree_bound: total + 1,
        });
    }
    pieces.sort_by(|a, b| (a.total_degree(), &a.degree).cmp(&(b.total_degree(), &b.degree)));
    Ok(Grading { s: s_sorted, levi, pieces })
}

/// The highest root has coefficient one at the node.
pub fn is_cominuscule(r: &RootSystem, i: usize) -> bool {
    let comp = r.diagram().component_of(i).expect("node of the diagram");
    let sub = build_root_system(&r.diagram().induced(&comp));
    sub.coeff(sub.highest_root(), i) == 1
}

/// ω_i is minuscule: decided by the dual highest root, cross-checked at
/// rank ≤ 6 against the size of the Weyl orbit of ω_i.
pub fn is_minuscule_weight(r: &RootSystem, i: usize) -> Result<bool> {
    let comp = r.diagram().component_of(i).expect("node of the diagram");
    let sub = r.diagram().induced(&comp);
    let dual = build_root_system(&sub.dual());
    let by_dual = dual.coeff(dual.highest_root(), i) == 1;
    if sub.rank() <= 6 {
        let rs = build_root_system(&sub);
        let mut w = crate::dynkin::Weight::zero(rs.rank());
        w.marks[rs.pos(i)] = 1;
        let orbit = rs.weyl_orbit(&w, &comp, DEFAULT_ORBIT_GUARD)?;
        let dim = weyl_dim(&rs, &w)?;
        let by_orbit = orbit.len() as u128 == dim;
        if by_orbit != by_dual {
            return Err(Error::Inconsistent(format!("minuscule criteria disagree at node {i}")));
        }
    }
    Ok(by_dual)
}

/// Exposed short root test, by the diagram definition and by the root criterion.
pub fn is_exposed_short(r: &RootSystem, s: &BTreeSet<usize>, j: usize) -> Result<bool> {
    let d = r.diagram();
    let others: BTreeSet<usize> = s.iter().copied().filter(|&n| n != j).collect();
    let rest = d.without(&others);
    let comp = rest.component_of(j).unwrap();
    // distances from j inside its component
    let mut dist: HashMap<usize, usize> = HashMap::from([(j, 0)]);
    let mut queue = std::collections::VecDeque::from([j]);
    while let Some(n) = queue.pop_front() {
        for m in rest.neighbors(n) {
            if !dist.contains_key(&m) {
                dist.insert(m, dist[&n] + 1);
                queue.push_back(m);
            }
        }
    }
    let by_diagram = rest
        .edges()
        .iter()
        .filter(|e| comp.contains(&e.a))
        .any(|e| match e.arrow_to {
            Some(t) => dist[&t] < dist[&e.other(t)],
            None => false,
        });
    let aj = r.simple_root(j);
    let by_roots = r.positive_roots().iter().any(|b| {
        *b != aj && r.support(b).is_disjoint(&others) && r.pairing(b, j).abs() > 1
    });
    if by_diagram != by_roots {
        return Err(Error::Inconsistent(format!("exposed-short criteria disagree at node {j}")));
    }
    Ok(by_diagram)
}

/// A diagram with non-negative node marks: a parabolic (marks 1) or an
/// embedding weight Σ mᵢωᵢ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MarkedDiagram {
    pub diagram: DynkinDiagram,
    pub marks: BTreeMap<usize, u32>,
}

impl MarkedDiagram {
    pub fn new(diagram: DynkinDiagram, marks: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let marks = marks.into_iter().filter(|&(_, m)| m > 0).collect();
        MarkedDiagram { diagram, marks }
    }

    pub fn with_nodes(diagram: DynkinDiagram, nodes: &BTreeSet<usize>) -> Self {
        MarkedDiagram::new(diagram, nodes.iter().map(|&n| (n, 1)))
    }

    pub fn point() -> Self {
        MarkedDiagram::new(DynkinDiagram::empty(), [])
    }

    pub fn marked_nodes(&self) -> BTreeSet<usize> {
        self.marks.keys().copied().collect()
    }

    /// Components of the diagram that carry a mark.
    pub fn marked_components(&self) -> Vec<BTreeSet<usize>> {
        self.diagram
            .components()
            .into_iter()
            .filter(|c| c.iter().any(|n| self.marks.contains_key(n)))
            .collect()
    }

    /// Dimension of the homogeneous variety H/P_{marked} (unmarked components are dropped).
    pub fn dimension(&self) -> usize {
        if self.marks.is_empty() {
            return 0;
        }
        let r = build_root_system(&self.diagram);
        delta_x(&r, &self.marked_nodes()).len()
    }

    /// Restrict to the components carrying marks.
    pub fn trimmed(&self) -> MarkedDiagram {
        let keep: BTreeSet<usize> = self.marked_components().into_iter().flatten().collect();
        MarkedDiagram { diagram: self.diagram.induced(&keep), marks: self.marks.clone() }
    }

    /// Human-readable name, e.g. `Seg(P^1 × P^2)` or `v2(P^2)`.
    pub fn describe(&self) -> String {
        let comps = self.marked_components();
        if comps.is_empty() {
            return "P^0".into();
        }
        let names: Vec<String> = comps
            .iter()
            .map(|c| {
                let sub = self.diagram.induced(c);
                let marks: BTreeMap<usize, u32> =
                    self.marks.iter().filter(|(n, _)| c.contains(n)).map(|(&n, &m)| (n, m)).collect();
                component_name(&sub, &marks)
            })
            .collect();
        if names.len() == 1 {
            names.into_iter().next().unwrap()
        } else {
            format!("Seg({})", names.join(" × "))
        }
    }
}

/// Common name of a connected marked diagram.
pub fn component_name(d: &DynkinDiagram, marks: &BTreeMap<usize, u32>) -> String {
    let Ok(lc) = LeviComponent::of(d) else {
        return "?".into();
    };
    let labels: Vec<(usize, u32)> = marks.iter().map(|(n, &m)| (lc.label_of(*n).unwrap(), m)).collect();
    let n = lc.spec.rank;
    if labels.len() == 1 && labels[0].1 >= 1 {
        let (k, m) = labels[0];
        let base = match (lc.spec.series, k) {
            (Series::A, k) if k == 1 || k == n => format!("P^{n}"),
            (Series::A, k) => format!("G({},{})", k.min(n + 1 - k), n + 1),
            (Series::B, 1) => format!("Q^{}", 2 * n - 1),
            (Series::B, k) if k < n => format!("G_o({},{})", k, 2 * n + 1),
            (Series::C, 1) => format!("P^{}", 2 * n - 1),
            (Series::C, k) if k == n => format!("G_Lag({},{})", n, 2 * n),
            (Series::C, k) => format!("G_w({},{})", k, 2 * n),
            (Series::D, 1) => format!("Q^{}", 2 * n - 2),
            (Series::D, k) if k + 1 >= n => format!("S_{n}"),
            (Series::D, k) => format!("G_o({},{})", k, 2 * n),
            (Series::E, 1) | (Series::E, 6) if n == 6 => "OP^2".into(),
            (Series::E, 7) if n == 7 => "G_w(O^3,O^6)".into(),
            (Series::G, 1) => "Q^5".into(),
            _ => format!("{}/P{}", lc.spec, k),
        };
        return if m > 1 { format!("v{m}({base})") } else { base };
    }
    let ks: Vec<String> = labels
        .iter()
        .map(|&(k, m)| if m > 1 { format!("{m}w{k}") } else { k.to_string() })
        .collect();
    format!("{}/P{{{}}}", lc.spec, ks.join(","))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Y1Factor {
    pub component: LeviComponent,
    pub diagram: DynkinDiagram,
    /// The neighbor of i in this branch (original label).
    pub marked_node: usize,
    /// Bourbaki label of the marked node inside the component.
    pub marked_label: usize,
    pub veronese_degree: u8,
    /// Degree one and the marked node cominuscule in its component.
    pub levi_minuscule: bool,
}

impl Y1Factor {
    pub fn marked(&self) -> MarkedDiagram {
        MarkedDiagram::new(self.diagram.clone(), [(self.marked_node, 1)])
    }
    pub fn describe(&self) -> String {
        let base = self.marked().describe();
        if self.veronese_degree > 1 {
            format!("v{}({})", self.veronese_degree, base)
        } else {
            base
        }
    }
    pub fn dim(&self) -> usize {
        self.marked().dimension()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedOrbitModel {
    pub node: usize,
    pub factors: Vec<Y1Factor>,
}

impl ClosedOrbitModel {
    pub fn dim(&self) -> usize {
        self.factors.iter().map(|f| f.dim()).sum()
    }
    pub fn describe(&self) -> String {
        match self.factors.len() {
            0 => "P^0".into(),
            1 => self.factors[0].describe(),
            _ => {
                let v: Vec<String> = self.factors.iter().map(|f| f.describe()).collect();
                format!("Seg({})", v.join(" × "))
            }
        }
    }
    /// Some factor fails to be a minimally embedded minuscule variety.
    pub fn is_exceptional(&self) -> bool {
        self.factors.iter().any(|f| !f.levi_minuscule)
    }
    /// Marked diagram of the product: each branch marked at its neighbor node
    /// with the Veronese degree as mark.
    pub fn marked(&self) -> MarkedDiagram {
        let nodes: BTreeSet<usize> = self.factors.iter().flat_map(|f| f.diagram.nodes().to_vec()).collect();
        let edges = self.factors.iter().flat_map(|f| f.diagram.edges().to_vec()).collect();
        let d = DynkinDiagram::from_parts(nodes, edges).expect("union of subdiagrams");
        MarkedDiagram::new(d, self.factors.iter().map(|f| (f.marked_node, f.veronese_degree as u32)))
    }
}

/// Closed orbit Y₁ ⊂ ℙT for the degree-ε_i piece, for any diagram.
pub fn closed_orbit_of(d: &DynkinDiagram, s: &BTreeSet<usize>, i: usize) -> Result<ClosedOrbitModel> {
    if !s.contains(&i) {
        return Err(Error::Invalid(format!("node {i} not in S")));
    }
    let rest = d.without(s);
    let mut factors = Vec::new();
    for j in d.neighbors(i) {
        if s.contains(&j) {
            continue;
        }
        let comp = rest.component_of(j).unwrap();
        let sub = rest.induced(&comp);
        let component = LeviComponent::of(&sub)?;
        let e = d.edge(i, j).unwrap();
        let veronese_degree = if e.arrow_to == Some(j) { e.bond } else { 1 };
        let rs = build_root_system(&sub);
        let levi_minuscule = veronese_degree == 1 && is_cominuscule(&rs, j);
        factors.push(Y1Factor {
            marked_label: component.label_of(j).unwrap(),
            component,
            diagram: sub,
            marked_node: j,
            veronese_degree,
            levi_minuscule,
        });
    }
    Ok(ClosedOrbitModel { node: i, factors })
}

pub fn closed_orbit_y1(ps: &ParabolicSpec, i: usize) -> Result<ClosedOrbitModel> {
    closed_orbit_of(&ps.diagram(), &ps.s, i)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(s: &str) -> ParabolicSpec {
        s.parse().unwrap()
    }

    #[test]
    fn parse_parabolic() {
        assert_eq!(ps("D6/P{3,5}").s, [3, 5].into());
        assert_eq!(ps("e6/p1").to_string(), "E6/P1");
        assert!(matches!("D6/P9".parse::<ParabolicSpec>(), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!("D6/P{3,}".parse::<ParabolicSpec>(), Err(Error::Parse { pos: 7, .. })));
        assert!(matches!("D6".parse::<ParabolicSpec>(), Err(Error::Parse { .. })));
    }

    #[test]
    fn dimensions() {
        assert_eq!(dimension(&ps("G2/P1")), 5);
        assert_eq!(dimension(&ps("F4/P4")), 15);
        assert_eq!(dimension(&ps("E6/P1")), 16);
        assert_eq!(dimension(&ps("F4/P3")), 20);
        assert_eq!(dimension(&ps("G2/P2")), 5);
        assert_eq!(dimension(&ps("A4/P{1,2,3,4}")), 10);
    }

    #[test]
    fn gradings() {
        let g = grading(&ps("G2/P1")).unwrap();
        assert_eq!(g.dims(), vec![2, 1, 2]);
        assert_eq!(g.pieces[1].h_highest_weight.values().copied().collect::<Vec<_>>(), vec![0]);
        let g = grading(&ps("F4/P4")).unwrap();
        assert_eq!(g.dims(), vec![8, 7]);
        assert_eq!(g.levi[0].spec.to_string(), "B3");
        assert_eq!(g.pieces[0].component_marks[0], vec![0, 0, 1]);
        let g = grading(&ps("A5/P3")).unwrap();
        assert_eq!(g.dims(), vec![9]);
        let hw: Vec<i64> = g.pieces[0].h_highest_weight.values().copied().collect();
        assert_eq!(hw, vec![0, 1, 1, 0]);
    }

    #[test]
    fn classification() {
        let d5 = RootSystem::of("D5".parse().unwrap());
        assert!(is_cominuscule(&d5, 1));
        let f4 = RootSystem::of("F4".parse().unwrap());
        assert!((1..=4).all(|i| !is_cominuscule(&f4, i)));
        let c4 = RootSystem::of("C4".parse().unwrap());
        assert!(is_cominuscule(&c4, 4));
        assert!(is_minuscule_weight(&c4, 1).unwrap());
        assert!(!is_minuscule_weight(&c4, 4).unwrap());
        let b4 = RootSystem::of("B4".parse().unwrap());
        assert!(is_minuscule_weight(&b4, 4).unwrap());
        assert!(!is_minuscule_weight(&f4, 4).unwrap());
        assert!(is_exposed_short(&f4, &[4].into(), 4).unwrap());
        assert!(is_exposed_short(&c4, &[2].into(), 2).unwrap());
        assert!(!is_exposed_short(&c4, &[4].into(), 4).unwrap());
        let a4 = RootSystem::of("A4".parse().unwrap());
        assert!(!is_exposed_short(&a4, &[2].into(), 2).unwrap());
    }

    #[test]
    fn closed_orbits() {
        let y = closed_orbit_y1(&ps("C4/P4"), 4).unwrap();
        assert_eq!(y.factors.len(), 1);
        assert_eq!(y.factors[0].component.spec.to_string(), "A3");
        assert_eq!(y.factors[0].marked_node, 3);
        assert_eq!(y.factors[0].veronese_degree, 2);
        assert_eq!(y.describe(), "v2(P^3)");
        let y = closed_orbit_y1(&ps("G2/P2"), 2).unwrap();
        assert_eq!(y.describe(), "v3(P^1)");
        let y = closed_orbit_y1(&ps("E6/P1"), 1).unwrap();
        assert_eq!(y.factors[0].component.spec.to_string(), "D5");
        assert_eq!(y.factors[0].marked_label, 5);
        assert_eq!(y.describe(), "S_5");
        assert_eq!(y.dim(), 10);
    }
}
