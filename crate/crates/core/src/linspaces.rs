//! Linear spaces on G/P_S: line classes, cones of lines, k-plane families,
//! Tits shadows, ambient modules of the varieties of k-planes, and the
//! reconstruction of a Dynkin diagram from iterated closed orbits.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::dynkin::{
    build_diagram, build_root_system, find_isomorphism, DiagramSpec, DynkinDiagram, Edge, LengthClass, Root,
    RootSystem, Series, Weight,
};
use crate::parabolic::{closed_orbit_of, component_name, delta_x, is_exposed_short, MarkedDiagram, ParabolicSpec};
use crate::reps::{binomial, ext_power, weights_with_mults, weyl_dim};
use crate::{Error, Result};

pub const DEFAULT_EXT_GUARD: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineFamily {
    #[serde(rename = "class")]
    pub class_node: usize,
    pub exposed_short: bool,
    pub closed_orbit: MarkedDiagram,
    pub closed_name: String,
    pub closed_dim: usize,
    pub open_dim: Option<usize>,
    pub delta0: Option<Root>,
}

/// Neighbors of j in the diagram.
fn nbrs(d: &DynkinDiagram, j: usize) -> BTreeSet<usize> {
    d.neighbors(j).into_iter().collect()
}

/// Distinguished long root p·α_j + γ (γ supported off S) with (δ, α_i) ≤ 0 for
/// i ≠ j in its support; it is the highest root of its support.
pub fn delta0(r: &RootSystem, s: &BTreeSet<usize>, j: usize) -> Result<Root> {
    let others: BTreeSet<usize> = s.iter().copied().filter(|&n| n != j).collect();
    let mut found = Vec::new();
    for b in r.positive_roots() {
        let p = r.coeff(b, j);
        if !(2..=3).contains(&p) || r.length_class(b) != Some(LengthClass::Long) {
            continue;
        }
        let supp = r.support(b);
        if !supp.is_disjoint(&others) {
            continue;
        }
        let is_top = supp.iter().all(|&n| !r.is_root(&b.add(&r.simple_root(n))));
        let orthogonal_rest = supp.iter().all(|&n| n == j || p == 3 || r.pairing(b, n) <= 0);
        if is_top && orthogonal_rest {
            found.push(b.clone());
        }
    }
    match found.len() {
        1 => Ok(found.pop().unwrap()),
        _ => Err(Error::NoLongRoot(j)),
    }
}

/// Γ = (Δ_X − {δ}) ∪ {β − δ ∈ Δ : β ∈ Δ_X}, checked against (Δ_X − {δ}) ∪ s_δ(Δ_X − {δ}).
pub fn gamma_set(r: &RootSystem, s: &BTreeSet<usize>, delta: &Root) -> Result<BTreeSet<Root>> {
    let dx = delta_x(r, s);
    let rest: Vec<Root> = dx.iter().filter(|b| *b != delta).cloned().collect();
    let mut by_difference: BTreeSet<Root> = rest.iter().cloned().collect();
    for b in &dx {
        let c = b.sub(delta);
        if r.is_root(&c) {
            by_difference.insert(c);
        }
    }
    let mut by_reflection: BTreeSet<Root> = rest.iter().cloned().collect();
    for b in &rest {
        by_reflection.insert(r.reflect(b, delta));
    }
    if by_difference != by_reflection {
        return Err(Error::Inconsistent("the two descriptions of Γ differ".into()));
    }
    Ok(by_difference)
}

/// One family of lines per j ∈ S.
pub fn line_classes(ps: &ParabolicSpec) -> Result<Vec<LineFamily>> {
    let d = ps.diagram();
    let r = build_root_system(&d);
    let mut out = Vec::new();
    for &j in &ps.s {
        let exposed = is_exposed_short(&r, &ps.s, j)?;
        let mut marks: BTreeSet<usize> = ps.s.iter().copied().filter(|&n| n != j).collect();
        marks.extend(nbrs(&d, j));
        let closed_orbit = MarkedDiagram::with_nodes(d.clone(), &marks);
        let closed_dim = closed_orbit.dimension();
        let (open_dim, delta) = if exposed {
            let delta = delta0(&r, &ps.s, j)?;
            let g = gamma_set(&r, &ps.s, &delta)?;
            (Some(g.len()), Some(delta))
        } else {
            (None, None)
        };
        out.push(LineFamily {
            class_node: j,
            exposed_short: exposed,
            closed_name: closed_orbit.describe(),
            closed_orbit,
            closed_dim,
            open_dim,
            delta0: delta,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeOfLines {
    pub node: usize,
    /// H/P_{N(α)} on the components of 𝒟∖S meeting N(α).
    pub closed: MarkedDiagram,
    pub closed_name: String,
    pub closed_dim: usize,
    pub exposed_short: bool,
    /// Dimension of the cone of α-lines through a point (the base locus
    /// of the second fundamental form for maximal S).
    pub dim: usize,
}

/// Tangent directions to α-lines through a point.
pub fn cone_of_lines(ps: &ParabolicSpec, alpha: usize) -> Result<ConeOfLines> {
    if !ps.s.contains(&alpha) {
        return Err(Error::Invalid(format!("node {alpha} not in S")));
    }
    let d = ps.diagram();
    let rest = d.without(&ps.s);
    let n: BTreeSet<usize> = nbrs(&d, alpha).into_iter().filter(|x| !ps.s.contains(x)).collect();
    let keep: BTreeSet<usize> = rest.components().into_iter().filter(|c| !c.is_disjoint(&n)).flatten().collect();
    let closed = MarkedDiagram::with_nodes(rest.induced(&keep), &n);
    let closed_dim = closed.dimension();
    let fam = line_classes(ps)?.into_iter().find(|f| f.class_node == alpha).unwrap();
    let x = crate::parabolic::dimension(ps);
    // incidence count: dim F + 1 = dim X + dim C_x
    let dim = match fam.open_dim {
        Some(o) => o + 1 - x,
        None => {
            if fam.closed_dim + 1 != x + closed_dim {
                return Err(Error::Inconsistent(format!("cone of lines at {alpha}: incidence count fails")));
            }
            closed_dim
        }
    };
    Ok(ConeOfLines { node: alpha, closed_name: closed.describe(), closed, closed_dim, exposed_short: fam.exposed_short, dim })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneFamily {
    pub k: usize,
    pub removed_nodes: Vec<usize>,
    /// The A_k path, starting at α.
    pub chain: Vec<usize>,
    /// G/P marked on the removed nodes and S∖α.
    pub parameter: MarkedDiagram,
    pub parameter_name: String,
    pub parameter_dim: usize,
}

/// Simple paths of simply-laced bonds starting at α, avoiding S∖α, with at most `max` nodes.
fn a_paths(d: &DynkinDiagram, s: &BTreeSet<usize>, alpha: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack = vec![vec![alpha]];
    while let Some(path) = stack.pop() {
        let last = *path.last().unwrap();
        let prev = if path.len() > 1 { Some(path[path.len() - 2]) } else { None };
        if path.len() < max {
            for m in d.neighbors(last) {
                if Some(m) == prev || s.contains(&m) || d.edge(last, m).unwrap().bond != 1 {
                    continue;
                }
                let mut p = path.clone();
                p.push(m);
                stack.push(p);
            }
        }
        out.push(path);
    }
    out
}

fn check_not_exposed(ps: &ParabolicSpec, alpha: usize) -> Result<()> {
    if !ps.s.contains(&alpha) {
        return Err(Error::Invalid(format!("node {alpha} not in S")));
    }
    let r = ps.root_system();
    if is_exposed_short(&r, &ps.s, alpha)? {
        return Err(Error::ExposedShort(alpha));
    }
    Ok(())
}

/// Families of ℙ^k's of class α. The inclusion-minimal removed sets are the
/// outer boundaries of the admissible A_k paths through α.
pub fn planes(ps: &ParabolicSpec, alpha: usize, k: usize) -> Result<Vec<PlaneFamily>> {
    check_not_exposed(ps, alpha)?;
    if k == 0 {
        return Err(Error::KOutOfRange { k, max: ps.spec.rank });
    }
    let d = ps.diagram();
    let mut out = Vec::new();
    for chain in a_paths(&d, &ps.s, alpha, k).into_iter().filter(|p| p.len() == k) {
        let cset: BTreeSet<usize> = chain.iter().copied().collect();
        let removed: BTreeSet<usize> =
            chain.iter().flat_map(|&c| d.neighbors(c)).filter(|n| !cset.contains(n)).collect();
        // the component of α after removal must be exactly the chain
        let rest = d.without(&removed);
        if rest.component_of(alpha).unwrap() != cset {
            continue;
        }
        let mut marks = removed.clone();
        marks.extend(ps.s.iter().copied().filter(|&n| n != alpha));
        let parameter = MarkedDiagram::with_nodes(d.clone(), &marks);
        out.push(PlaneFamily {
            k,
            removed_nodes: removed.into_iter().collect(),
            chain,
            parameter_name: parameter.describe(),
            parameter_dim: parameter.dimension(),
            parameter,
        });
    }
    out.sort_by(|a, b| (a.removed_nodes.len(), &a.removed_nodes).cmp(&(b.removed_nodes.len(), &b.removed_nodes)));
    Ok(out)
}

/// Largest n such that X contains a ℙ^n of class α.
pub fn max_linear_space(ps: &ParabolicSpec, alpha: usize) -> Result<usize> {
    check_not_exposed(ps, alpha)?;
    let d = ps.diagram();
    Ok(a_paths(&d, &ps.s, alpha, usize::MAX).iter().map(|p| p.len()).max().unwrap())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogFamily {
    /// Dimension of the linear spaces.
    pub k: usize,
    pub parameter: String,
    pub parameter_dim: Option<usize>,
    pub components: usize,
    /// Number of G-orbits, when known.
    pub orbits: Option<usize>,
    pub closed_orbit: Option<String>,
    pub maximal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub space: String,
    pub families: Vec<CatalogFamily>,
    /// Dimensions of the unextendable linear spaces through a point.
    pub maximal_through_point: Vec<usize>,
    pub notes: Vec<String>,
}

fn sp_subspace_orbits(w: usize, m2: usize) -> usize {
    // subspaces of dim w in a symplectic space of dim m2, by radical dimension d
    (0..=w.min(m2 - w)).filter(|d| (w - d).is_multiple_of(2)).count()
}

fn grass_dim(a: usize, n: usize) -> usize {
    a * (n - a)
}

fn isotropic_dim(a: usize, n2: usize) -> usize {
    // dim of the isotropic Grassmannian G_ω(a, n2)
    a * (n2 - a) - a * a.saturating_sub(1) / 2
}

/// Linear spaces on the exposed-short cases C_n/P_k (k<n), B_n/P_n, F4/P4, F4/P3, G2/P1.
pub fn exposed_planes_catalog(ps: &ParabolicSpec, alpha: usize) -> Result<CatalogEntry> {
    if !ps.s.contains(&alpha) {
        return Err(Error::Invalid(format!("node {alpha} not in S")));
    }
    let r = ps.root_system();
    if !is_exposed_short(&r, &ps.s, alpha)? {
        return Err(Error::Invalid(format!("node {alpha} is not exposed short; use planes")));
    }
    let n = ps.spec.rank;
    let space = ps.to_string();
    let uncovered = || Error::Uncovered(format!("no linear-space catalog for {ps}"));
    if ps.s.len() != 1 {
        return Err(uncovered());
    }
    let fam = |k, parameter: &str, parameter_dim, components, orbits, closed_orbit: Option<&str>, maximal| CatalogFamily {
        k,
        parameter: parameter.to_string(),
        parameter_dim,
        components,
        orbits,
        closed_orbit: closed_orbit.map(|s| s.to_string()),
        maximal,
    };
    let entry = match (ps.spec.series, alpha) {
        (Series::F, 4) => CatalogEntry {
            space,
            families: vec![
                fam(1, "lines A∘B = 0", Some(23), 1, Some(2), Some("F4/P3"), false),
                fam(5, "Q^5 ⊂ PT_2", Some(5), 1, None, None, true),
                fam(4, "Q^6 ⊂ PT_1 (= S_{Q^5}, planes in Q^5)", Some(6), 1, None, None, true),
                fam(4, "S_{Q^6} (P^3's in Q^6 ⊂ PT_1)", Some(6), 2, None, None, true),
            ],
            maximal_through_point: vec![5, 4, 4],
            notes: vec!["families of maximal spaces through a fixed point".into()],
        },
        (Series::F, 3) => CatalogEntry {
            space,
            families: vec![
                fam(1, "lines AB = AC = 0, B∘C = 0", Some(24), 1, Some(2), Some("F4/P{2,4}"), false),
                fam(3, "P^2's in the Q^4 fibers of the base locus over P^1", None, 1, None, None, true),
                fam(2, "the base P^1 of the quadric fibration", None, 1, None, None, true),
            ],
            maximal_through_point: vec![3, 2],
            notes: vec!["base locus of the second fundamental form is a Q^4-bundle over P^1".into()],
        },
        (Series::G, 1) => CatalogEntry {
            space,
            families: vec![
                fam(1, "G_Q(2,7)", Some(7), 1, Some(2), Some("G2/P2"), false),
                fam(2, "G_Q(3,7) = Q^6", Some(6), 1, Some(2), Some("v2(G2/P1)"), true),
            ],
            maximal_through_point: vec![2],
            notes: vec!["G2/P1 = Q^5; its linear spaces are those of the quadric".into()],
        },
        (Series::B, a) if a == n => {
            // B_n/P_n = D_{n+1}/P_{n+1}: families from the unfolded diagram
            let dspec = DiagramSpec::new(Series::D, n + 1)?;
            let dps = ParabolicSpec::maximal(dspec, n + 1)?;
            let mut families = Vec::new();
            let maxk = max_linear_space(&dps, n + 1)?;
            for k in 1..=maxk {
                let fams = planes(&dps, n + 1, k)?;
                let last = k == maxk;
                for f in fams {
                    let folded: BTreeSet<usize> = f.removed_nodes.iter().copied().filter(|&x| x < n).collect();
                    let closed = if folded.is_empty() {
                        format!("B{n}/P{n}")
                    } else {
                        let bd = build_diagram(DiagramSpec::new(Series::B, n)?);
                        component_name(&bd, &folded.iter().map(|&x| (x, 1)).collect())
                    };
                    families.push(CatalogFamily {
                        k,
                        parameter: f.parameter_name.clone(),
                        parameter_dim: Some(f.parameter_dim),
                        components: 1,
                        orbits: Some(if folded.is_empty() { 1 } else { 2 }),
                        closed_orbit: Some(closed),
                        maximal: last,
                    });
                }
            }
            CatalogEntry {
                space,
                families,
                maximal_through_point: vec![maxk],
                notes: vec![format!("parameters are D{}-homogeneous; B{n}-orbits are open or closed", n + 1)],
            }
        }
        (Series::C, k) if k < n => {
            let m2 = 2 * (n - k + 1);
            let mut families = Vec::new();
            // {M^{k-1} ⊂ L ⊂ N^{k+l} ⊂ M^⊥}
            for l in 1..=(2 * n - 2 * k + 1) {
                families.push(CatalogFamily {
                    k: l,
                    parameter: format!("M^{} ⊂ N^{} ⊂ M^⊥", k - 1, k + l),
                    parameter_dim: Some(isotropic_dim(k - 1, 2 * n) + grass_dim(l + 1, m2)),
                    components: 1,
                    orbits: Some(sp_subspace_orbits(l + 1, m2)),
                    closed_orbit: None,
                    maximal: l == 2 * n - 2 * k + 1,
                });
            }
            // {M^{k-l} ⊂ L ⊂ N^{k+1}}, N isotropic
            for l in 2..=k {
                families.push(CatalogFamily {
                    k: l,
                    parameter: format!("M^{} ⊂ N^{} isotropic", k - l, k + 1),
                    parameter_dim: Some(isotropic_dim(k + 1, 2 * n) + grass_dim(k - l, k + 1)),
                    components: 1,
                    orbits: Some(2),
                    closed_orbit: None,
                    maximal: l == k,
                });
            }
            let mut maximal_through_point = vec![2 * n - 2 * k + 1];
            if k >= 2 {
                maximal_through_point.push(k);
            }
            CatalogEntry {
                space,
                families,
                maximal_through_point,
                notes: vec!["first type: orbits indexed by the rank of the symplectic form on N/M".into()],
            }
        }
        _ => return Err(uncovered()),
    };
    Ok(entry)
}

/// Marked diagram of the shadow in G/P_S of a point of G/P_{S'}: delete S',
/// keep the components meeting S, mark S∖S'.
pub fn tits_shadow(spec: DiagramSpec, s: &BTreeSet<usize>, s_prime: &BTreeSet<usize>) -> Result<MarkedDiagram> {
    if s.is_empty() || s_prime.is_empty() {
        return Err(Error::Invalid("S and S' must be nonempty".into()));
    }
    if s.is_subset(s_prime) {
        return Err(Error::EmptyShadow("S ⊆ S', the shadow is a point".to_string()));
    }
    let d = build_diagram(spec);
    let rest = d.without(s_prime);
    let marks: BTreeSet<usize> = s.difference(s_prime).copied().collect();
    let keep: BTreeSet<usize> =
        rest.components().into_iter().filter(|c| !c.is_disjoint(&marks)).flatten().collect();
    Ok(MarkedDiagram::with_nodes(rest.induced(&keep), &marks))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AmbientTag {
    FullExterior,
    ReducedExterior,
    BracketKernel,
    Quotient,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientModule {
    pub end_node: usize,
    pub k: usize,
    /// Nodes of the branch of the end node, starting at the end.
    pub branch: Vec<usize>,
    pub weight: Weight,
    pub dim: u128,
    pub tag: AmbientTag,
}

/// The branch of an end node: the longest A_p or C_p chain from the end in
/// which no node before the last has valence three.
pub fn branch(d: &DynkinDiagram, end: usize) -> Vec<usize> {
    let mut path = vec![end];
    let mut prev = None;
    let mut cur = end;
    loop {
        if cur != end && d.degree(cur) >= 3 {
            break;
        }
        let Some(next) = d.neighbors(cur).into_iter().find(|&m| Some(m) != prev) else {
            break;
        };
        let e = d.edge(cur, next).unwrap();
        match (e.bond, e.arrow_to) {
            (1, _) => {}
            (2, Some(t)) if t == cur => {
                path.push(next);
                break;
            }
            _ => break,
        }
        path.push(next);
        prev = Some(cur);
        cur = next;
    }
    path
}

fn fundamental(r: &RootSystem, node: usize) -> Weight {
    Weight::fundamental(r.rank(), r.pos(node))
}

/// μ₁ + … + μ_k with μ₁ = ω_end and μ_{i+1} = μ_i − α_{b_i}.
fn mu_chain_sum(r: &RootSystem, b: &[usize], k: usize) -> Weight {
    let mut mu = fundamental(r, b[0]);
    let mut sum = mu.clone();
    for i in 1..k {
        mu = mu.sub(&r.root_to_weight(&r.simple_root(b[i - 1])));
        sum = sum.add(&mu);
    }
    sum
}

/// Highest weight of the component of Λ^kV containing the k-planes, V the
/// elementary module of an end node.
pub fn ambient_module(spec: DiagramSpec, end_node: usize, k: usize, guard: u64) -> Result<AmbientModule> {
    let d = build_diagram(spec);
    if !d.contains(end_node) || d.degree(end_node) > 1 {
        return Err(Error::Invalid(format!("node {end_node} is not an end of {spec}")));
    }
    let r = build_root_system(&d);
    let v = fundamental(&r, end_node);
    let dim_v = weyl_dim(&r, &v)?;
    if k == 0 || k as u128 >= dim_v {
        return Err(Error::KOutOfRange { k, max: (dim_v - 1) as usize });
    }
    let b = branch(&d, end_node);
    let p = b.len();
    let last = b[p - 1];
    let rule: Option<Weight> = if k <= p {
        Some(fundamental(&r, b[k - 1]))
    } else if k == p + 1 {
        let outs: Vec<usize> = d.neighbors(last).into_iter().filter(|n| p < 2 || *n != b[p - 2]).collect();
        let closed_c = p >= 2 && d.edge(b[p - 2], last).unwrap().bond == 2;
        if closed_c || outs.is_empty() {
            None
        } else if outs.len() == 2 {
            Some(fundamental(&r, outs[0]).add(&fundamental(&r, outs[1])))
        } else {
            let e = d.edge(last, outs[0]).unwrap();
            match (e.bond, e.arrow_to) {
                (2, Some(t)) if t == outs[0] => Some(Weight { marks: fundamental(&r, outs[0]).marks.iter().map(|m| 2 * m).collect() }),
                (3, Some(t)) if t == outs[0] => Some(Weight { marks: fundamental(&r, outs[0]).marks.iter().map(|m| 3 * m).collect() }),
                _ => None,
            }
        }
    } else {
        None
    };
    let weight = match rule {
        Some(w) => {
            let chain = mu_chain_sum(&r, &b, k);
            if chain != w {
                return Err(Error::Inconsistent(format!("extremal weight rule {w} differs from μ-chain {chain}")));
            }
            w
        }
        None => plane_weight(&r, &v, k, guard)?,
    };
    let dim = weyl_dim(&r, &weight)?;
    let full = binomial(dim_v, k as u128);
    let lower = if k >= 2 { binomial(dim_v, k as u128 - 2) } else { 0 };
    let adjoint = r.root_to_weight(r.highest_root()) == v;
    let tag = if full == dim {
        AmbientTag::FullExterior
    } else if k >= 2 && full - lower == dim {
        AmbientTag::ReducedExterior
    } else if adjoint && k == 2 && full - dim_v == dim {
        AmbientTag::BracketKernel
    } else {
        AmbientTag::Quotient
    };
    Ok(AmbientModule { end_node, k, branch: b, weight, dim, tag })
}

/// Dominance order: μ ≤ ν iff ν − μ is a non-negative combination of simple roots.
pub fn dominated(r: &RootSystem, mu: &Weight, nu: &Weight) -> bool {
    let c = r.weight_to_root_coords(&nu.sub(mu));
    c.iter().all(|x| x.is_integer() && *x >= crate::field::q(0))
}

/// The dominant weights of Λ^kV_λ that are maximal for the dominance order.
pub fn maximal_dominant_weights(r: &RootSystem, lambda: &Weight, k: usize, guard: u64) -> Result<Vec<(Weight, i64)>> {
    let dim_v = weyl_dim(r, lambda)?;
    let size = binomial(dim_v, k as u128);
    if size > guard as u128 {
        return Err(Error::guard("exterior power", size.min(u64::MAX as u128) as u64, guard));
    }
    let wts = weights_with_mults(r, lambda, guard)?;
    let chars = ext_power(&wts, k);
    let dom: Vec<(Weight, i64)> = chars.into_iter().filter(|(w, m)| *m > 0 && w.is_dominant()).collect();
    let mut out: Vec<(Weight, i64)> = dom
        .iter()
        .filter(|(w, _)| !dom.iter().any(|(x, _)| x != w && dominated(r, w, x)))
        .cloned()
        .collect();
    out.sort();
    Ok(out)
}

/// α = μ − ν when it is a root with n(μ, α) = 1, i.e. the line joining the
/// weight points lies in the closed orbit.
fn joined_by_line(r: &RootSystem, mu: &Weight, nu: &Weight) -> bool {
    let c = r.weight_to_root_coords(&mu.sub(nu));
    if !c.iter().all(|x| x.is_integer()) {
        return false;
    }
    let a = Root { coeffs: c.iter().map(|x| crate::field::q_to_i64(x).unwrap()).collect() };
    if !r.is_root(&a) {
        return false;
    }
    let two = crate::field::q(2);
    two * r.weight_root_inner(mu, &a) == r.inner(&a, &a)
}

/// Highest weight of the span of the T-fixed ℙ^{k-1}'s in the closed orbit of
/// ℙV_λ. The orbit is cut out by quadrics, so a coordinate plane lies in it iff
/// all its coordinate lines do; planes through the highest weight suffice up to W.
pub fn plane_weight(r: &RootSystem, lambda: &Weight, k: usize, guard: u64) -> Result<Weight> {
    let all: BTreeSet<usize> = r.nodes().iter().copied().collect();
    let orbit: Vec<Weight> = r.weyl_orbit(lambda, &all, guard)?.into_iter().filter(|w| w != lambda).collect();
    let nb: Vec<usize> = (0..orbit.len()).filter(|&a| joined_by_line(r, lambda, &orbit[a])).collect();
    let adj: Vec<Vec<bool>> =
        nb.iter().map(|&a| nb.iter().map(|&b| a != b && joined_by_line(r, &orbit[a], &orbit[b])).collect()).collect();
    let mut sums: BTreeSet<Weight> = BTreeSet::new();
    let mut visited = 0u64;
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(vec![], 0)];
    while let Some((clique, start)) = stack.pop() {
        visited += 1;
        if visited > guard {
            return Err(Error::guard("plane enumeration", visited, guard));
        }
        if clique.len() + 1 == k {
            let sum = clique.iter().fold(lambda.clone(), |acc, &c| acc.add(&orbit[nb[c]]));
            sums.insert(r.dominant_conjugate(&sum));
            continue;
        }
        for c in start..nb.len() {
            if clique.iter().all(|&x| adj[x][c]) {
                let mut next = clique.clone();
                next.push(c);
                stack.push((next, c + 1));
            }
        }
    }
    let top: Vec<&Weight> =
        sums.iter().filter(|w| !sums.iter().any(|x| x != *w && dominated(r, w, x))).collect();
    if top.len() != 1 {
        return Err(Error::Inconsistent(format!("{} maximal weights among the ℙ^{}'s", top.len(), k - 1)));
    }
    let w = top[0].clone();
    let wedge = maximal_dominant_weights(r, lambda, k, guard)?;
    if !wedge.iter().any(|(x, _)| *x == w) {
        return Err(Error::Inconsistent(format!("{w} is not extremal in Λ^{k}")));
    }
    Ok(w)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconstructionStep {
    pub level: usize,
    /// The closed orbits at this level, joined by ⊔.
    pub descriptor: String,
    /// (factor descriptor, bond to its parent) for each factor produced here.
    pub factors: Vec<(String, u8)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconstructionTrace {
    pub space: String,
    pub steps: Vec<ReconstructionStep>,
    /// Assembled diagram on fresh node ids; id 1 is the starting node.
    pub result: DynkinDiagram,
    /// Map from assembled ids to the nodes of the original diagram.
    pub isomorphism: BTreeMap<usize, usize>,
}

impl ReconstructionTrace {
    pub fn chain(&self) -> Vec<String> {
        self.steps.iter().map(|s| s.descriptor.clone()).collect()
    }
}

struct Item {
    id: usize,
    spec: DiagramSpec,
    label: usize,
}

/// Rebuild 𝒟(G) from G/P_i by attaching the closed orbits Y₁ recursively.
pub fn reconstruct_diagram(spec: DiagramSpec, i: usize) -> Result<ReconstructionTrace> {
    let ps = ParabolicSpec::maximal(spec, i)?;
    let r = ps.root_system();
    if is_exposed_short(&r, &ps.s, i)? {
        return Err(Error::ExposedShort(i));
    }
    let target = ps.diagram();
    let mut edges: Vec<Edge> = Vec::new();
    let mut next_id = 2;
    let mut steps = vec![ReconstructionStep {
        level: 0,
        descriptor: component_name(&target, &BTreeMap::from([(i, 1)])),
        factors: vec![],
    }];
    let mut level = vec![Item { id: 1, spec, label: i }];
    let mut depth = 0;
    while !level.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        let mut descs: Vec<(usize, String)> = Vec::new();
        let mut factors = Vec::new();
        for item in &level {
            let d = build_diagram(item.spec);
            let s = BTreeSet::from([item.label]);
            if is_exposed_short(&build_root_system(&d), &s, item.label)? {
                return Err(Error::RecipeStuck(component_name(&d, &BTreeMap::from([(item.label, 1)]))));
            }
            let model = closed_orbit_of(&d, &s, item.label)?;
            let mut parts: Vec<(usize, String)> = model.factors.iter().map(|f| (f.dim(), f.describe())).collect();
            parts.sort();
            let desc = match parts.len() {
                0 => "P^0".to_string(),
                1 => parts[0].1.clone(),
                _ => format!("Seg({})", parts.iter().map(|p| p.1.as_str()).collect::<Vec<_>>().join(" × ")),
            };
            descs.push((model.dim(), desc));
            for f in &model.factors {
                let id = next_id;
                next_id += 1;
                let bond = f.veronese_degree;
                edges.push(Edge { a: item.id, b: id, bond, arrow_to: if bond > 1 { Some(id) } else { None } });
                factors.push((f.describe(), bond));
                next.push(Item { id, spec: f.component.spec, label: f.marked_label });
            }
        }
        descs.sort();
        steps.push(ReconstructionStep {
            level: depth,
            descriptor: descs.into_iter().map(|x| x.1).collect::<Vec<_>>().join(" ⊔ "),
            factors,
        });
        level = next;
    }
    let result = DynkinDiagram::from_parts(1..next_id, edges)?;
    let isomorphism = find_isomorphism(&result, &target, &[(1, i)])
        .ok_or_else(|| Error::Inconsistent(format!("reconstruction of {ps} is not isomorphic to {spec}")))?;
    Ok(ReconstructionTrace { space: ps.to_string(), steps, result, isomorphism })
}

/// Roots with m_i(β) = 1 and the length of α_i form one orbit of ⟨s_j : j ≠ i⟩.
pub fn levi_conjugacy_check(r: &RootSystem, i: usize) -> bool {
    let ai = r.simple_root(i);
    let len = r.length_class(&ai);
    let target: BTreeSet<Root> = r
        .positive_roots()
        .iter()
        .filter(|b| r.coeff(b, i) == 1 && r.length_class(b) == len)
        .cloned()
        .collect();
    let gens: Vec<Root> = r.nodes().iter().filter(|&&n| n != i).map(|&n| r.simple_root(n)).collect();
    let mut seen: BTreeSet<Root> = BTreeSet::from([ai.clone()]);
    let mut queue = VecDeque::from([ai]);
    while let Some(b) = queue.pop_front() {
        for g in &gens {
            let c = r.reflect(&b, g);
            if seen.insert(c.clone()) {
                queue.push_back(c);
            }
        }
    }
    seen == target
}
