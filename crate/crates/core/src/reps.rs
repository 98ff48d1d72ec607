//! Representation data: Weyl dimensions, Freudenthal multiplicities,
//! branching to Levi subgroups, Cauchy-type plethysms and the normal-space
//! tables with their verification by common constituents.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use num::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::dynkin::{build_root_system, DynkinDiagram, Root, RootSystem, Series, Weight, DEFAULT_ORBIT_GUARD};
use crate::field::{q, Q};
use crate::parabolic::{grading, LeviComponent, ParabolicSpec};
use crate::{Error, Result};

pub const DEFAULT_DIM_GUARD: u64 = 100_000;

/// Weyl dimension formula ∏_{β>0} (λ+ρ, β)/(ρ, β).
pub fn weyl_dim(r: &RootSystem, lambda: &Weight) -> Result<u128> {
    if !lambda.is_dominant() {
        return Err(Error::NonDominant(lambda.to_string()));
    }
    let rho = r.rho();
    let lr = lambda.add(&rho);
    let mut num = Q::one();
    for b in r.positive_roots() {
        num *= r.weight_root_inner(&lr, b) / r.weight_root_inner(&rho, b);
    }
    if !num.is_integer() {
        return Err(Error::Inconsistent("Weyl dimension not integral".into()));
    }
    num.to_integer().to_u128().ok_or_else(|| Error::guard("weyl_dim", u64::MAX, u64::MAX))
}

/// Inverse of the transposed Cartan matrix: root coordinates of ω_j in column j.
pub fn cartan_inverse(r: &RootSystem) -> Vec<Vec<Q>> {
    let n = r.rank();
    let mut cols = Vec::new();
    for j in 0..n {
        cols.push(r.weight_to_root_coords(&Weight::fundamental(n, j)));
    }
    (0..n).map(|a| (0..n).map(|j| cols[j][a].clone()).collect()).collect()
}

fn root_coords(minv: &[Vec<Q>], w: &Weight) -> Vec<Q> {
    minv.iter()
        .map(|row| row.iter().zip(&w.marks).fold(Q::zero(), |acc, (m, &x)| acc + m * q(x)))
        .collect()
}

/// Dominant weights of V_λ with their multiplicities (Freudenthal).
pub fn dominant_character(r: &RootSystem, lambda: &Weight) -> Result<BTreeMap<Weight, u64>> {
    if !lambda.is_dominant() {
        return Err(Error::NonDominant(lambda.to_string()));
    }
    let n = r.rank();
    let roots: Vec<(Root, Weight)> =
        r.positive_roots().iter().map(|b| (b.clone(), r.root_to_weight(b))).collect();
    // dominant weights below λ, reached by subtracting positive roots
    let mut depth: HashMap<Weight, Vec<i64>> = HashMap::from([(lambda.clone(), vec![0; n])]);
    let mut queue = VecDeque::from([lambda.clone()]);
    while let Some(mu) = queue.pop_front() {
        let c = depth[&mu].clone();
        for (b, bw) in &roots {
            let nu = mu.sub(bw);
            if nu.is_dominant() && !depth.contains_key(&nu) {
                let d: Vec<i64> = c.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
                depth.insert(nu.clone(), d);
                queue.push_back(nu);
            }
        }
    }
    let mut order: Vec<Weight> = depth.keys().cloned().collect();
    order.sort_by_key(|w| (depth[w].iter().sum::<i64>(), w.clone()));
    let rho2 = Weight { marks: vec![2; n] };
    let mut mult: HashMap<Weight, u64> = HashMap::new();
    for mu in order {
        if mu == *lambda {
            mult.insert(mu, 1);
            continue;
        }
        let c = &depth[&mu];
        // |λ+ρ|² − |μ+ρ|² = (λ+μ+2ρ, λ−μ)
        let s = lambda.add(&mu).add(&rho2);
        let mut denom = Q::zero();
        for a in 0..n {
            if c[a] != 0 {
                denom += q(c[a] * s.marks[a]) * r.simple_sq(a).clone() / q(2);
            }
        }
        let mut numer = Q::zero();
        for (b, bw) in &roots {
            let mut k = 1;
            loop {
                let rem: Vec<i64> = c.iter().zip(&b.coeffs).map(|(x, y)| x - k * y).collect();
                if rem.iter().any(|&x| x < 0) {
                    break;
                }
                let nu = Weight { marks: mu.marks.iter().zip(&bw.marks).map(|(x, y)| x + k * y).collect() };
                let m = mult.get(&r.dominant_conjugate(&nu)).copied().unwrap_or(0);
                if m > 0 {
                    numer += q(m as i64) * r.weight_root_inner(&nu, b);
                }
                k += 1;
            }
        }
        let m = q(2) * numer / denom;
        if !m.is_integer() {
            return Err(Error::Inconsistent(format!("non-integral multiplicity at {mu}")));
        }
        let m = m.to_integer().to_u64().unwrap_or(0);
        mult.insert(mu, m);
    }
    Ok(mult.into_iter().filter(|(_, m)| *m > 0).collect())
}

/// All weights of V_λ with multiplicities.
pub fn weights_with_mults(r: &RootSystem, lambda: &Weight, guard: u64) -> Result<BTreeMap<Weight, u64>> {
    let dim = weyl_dim(r, lambda)?;
    if dim > guard as u128 {
        return Err(Error::guard("weights_with_mults", dim.min(u64::MAX as u128) as u64, guard));
    }
    let dom = dominant_character(r, lambda)?;
    let gens: BTreeSet<usize> = r.nodes().iter().copied().collect();
    let mut out = BTreeMap::new();
    let mut total: u128 = 0;
    for (w, m) in dom {
        for x in r.weyl_orbit(&w, &gens, DEFAULT_ORBIT_GUARD)? {
            total += m as u128;
            out.insert(x, m);
        }
    }
    if total != dim {
        return Err(Error::Inconsistent(format!("character mass {total} != dimension {dim}")));
    }
    Ok(out)
}

/// Decompose a W-invariant weight multiset into irreducible characters by
/// repeatedly removing the character of a highest remaining weight.
pub fn peel(r: &RootSystem, mut chars: HashMap<Weight, i64>, guard: u64) -> Result<Vec<(Weight, u64)>> {
    chars.retain(|_, m| *m != 0);
    let minv = cartan_inverse(r);
    let height = |w: &Weight| root_coords(&minv, w).into_iter().fold(Q::zero(), |a, b| a + b);
    let mut out: BTreeMap<Weight, u64> = BTreeMap::new();
    let mut cache: HashMap<Weight, BTreeMap<Weight, u64>> = HashMap::new();
    while !chars.is_empty() {
        if chars.values().any(|&m| m < 0) {
            return Err(Error::Inconsistent("negative multiplicity while peeling".into()));
        }
        let top = chars.keys().max_by(|a, b| height(a).cmp(&height(b)).then(a.cmp(b))).unwrap().clone();
        if !top.is_dominant() {
            return Err(Error::Inconsistent(format!("highest remaining weight {top} not dominant")));
        }
        let m = chars[&top];
        if !cache.contains_key(&top) {
            cache.insert(top.clone(), weights_with_mults(r, &top, guard)?);
        }
        for (w, k) in &cache[&top] {
            let e = chars.entry(w.clone()).or_insert(0);
            *e -= m * (*k as i64);
        }
        chars.retain(|_, x| *x != 0);
        *out.entry(top).or_insert(0) += m as u64;
    }
    Ok(out.into_iter().collect())
}

/// Weight multiset of S^k of a module given by its weights.
pub fn sym_power(weights: &BTreeMap<Weight, u64>, k: usize) -> HashMap<Weight, i64> {
    power(weights, k, true)
}

/// Weight multiset of Λ^k of a module given by its weights.
pub fn ext_power(weights: &BTreeMap<Weight, u64>, k: usize) -> HashMap<Weight, i64> {
    power(weights, k, false)
}

fn power(weights: &BTreeMap<Weight, u64>, k: usize, symmetric: bool) -> HashMap<Weight, i64> {
    let rank = weights.keys().next().map(|w| w.marks.len()).unwrap_or(0);
    let mut dp: Vec<HashMap<Weight, i64>> = vec![HashMap::new(); k + 1];
    dp[0].insert(Weight::zero(rank), 1);
    for (w, &m) in weights {
        for _ in 0..m {
            if symmetric {
                for j in 1..=k {
                    let prev: Vec<(Weight, i64)> = dp[j - 1].iter().map(|(a, &c)| (a.add(w), c)).collect();
                    for (a, c) in prev {
                        *dp[j].entry(a).or_insert(0) += c;
                    }
                }
            } else {
                for j in (1..=k).rev() {
                    let prev: Vec<(Weight, i64)> = dp[j - 1].iter().map(|(a, &c)| (a.add(w), c)).collect();
                    for (a, c) in prev {
                        *dp[j].entry(a).or_insert(0) += c;
                    }
                }
            }
        }
    }
    std::mem::take(&mut dp[k])
}

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// The Levi subgroup of 𝒟∖S as a root system on the remaining nodes.
pub fn levi_root_system(d: &DynkinDiagram, s: &BTreeSet<usize>) -> RootSystem {
    build_root_system(&d.without(s))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviTerm {
    /// Coefficients of the S-simple roots in λ − μ for the constituent's weights.
    pub grade: Vec<i64>,
    /// Highest weight on the nodes of 𝒟∖S.
    pub weight: BTreeMap<usize, i64>,
    pub component_marks: Vec<Vec<i64>>,
    pub mult: u64,
    pub dim: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviDecomposition {
    pub s: Vec<usize>,
    pub levi: Vec<LeviComponent>,
    pub terms: Vec<LeviTerm>,
}

impl LeviDecomposition {
    pub fn dims_by_grade(&self) -> BTreeMap<Vec<i64>, u128> {
        let mut out = BTreeMap::new();
        for t in &self.terms {
            *out.entry(t.grade.clone()).or_insert(0) += t.mult as u128 * t.dim;
        }
        out
    }
    pub fn total_dim(&self) -> u128 {
        self.terms.iter().map(|t| t.mult as u128 * t.dim).sum()
    }
    pub fn weights(&self) -> BTreeSet<BTreeMap<usize, i64>> {
        self.terms.iter().map(|t| t.weight.clone()).collect()
    }
}

/// Branch V_λ to the Levi subgroup of P_S.
pub fn restrict_to_levi(
    r: &RootSystem,
    lambda: &Weight,
    s: &BTreeSet<usize>,
    guard: u64,
) -> Result<LeviDecomposition> {
    let d = r.diagram().clone();
    let full = weights_with_mults(r, lambda, guard)?;
    let minv = cartan_inverse(r);
    let s_pos: Vec<usize> = s.iter().map(|&n| r.pos(n)).collect();
    let levi_nodes: Vec<usize> = r.nodes().iter().copied().filter(|n| !s.contains(n)).collect();
    let l_pos: Vec<usize> = levi_nodes.iter().map(|&n| r.pos(n)).collect();
    let mut grades: BTreeMap<Vec<i64>, HashMap<Weight, i64>> = BTreeMap::new();
    for (mu, m) in &full {
        let c = root_coords(&minv, &lambda.sub(mu));
        let grade: Vec<i64> = s_pos.iter().map(|&p| c[p].to_integer().to_i64().unwrap()).collect();
        let lw = Weight { marks: l_pos.iter().map(|&p| mu.marks[p]).collect() };
        *grades.entry(grade).or_default().entry(lw).or_insert(0) += *m as i64;
    }
    let levi_rs = levi_root_system(&d, s);
    let levi = crate::parabolic::levi_components(&d, s)?;
    let mut terms = Vec::new();
    for (grade, chars) in grades {
        for (w, mult) in peel(&levi_rs, chars, guard)? {
            let weight: BTreeMap<usize, i64> = levi_nodes.iter().copied().zip(w.marks.iter().copied()).collect();
            let component_marks = levi.iter().map(|c| c.labels.iter().map(|n| weight[n]).collect()).collect();
            terms.push(LeviTerm { grade: grade.clone(), dim: weyl_dim(&levi_rs, &w)?, weight, component_marks, mult });
        }
    }
    Ok(LeviDecomposition { s: s.iter().copied().collect(), levi, terms })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(pub Vec<u32>);

impl Partition {
    pub fn new(mut v: Vec<u32>) -> Self {
        v.sort_by(|a, b| b.cmp(a));
        while v.last() == Some(&0) {
            v.pop();
        }
        Partition(v)
    }
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }
    pub fn conjugate(&self) -> Partition {
        let w = self.part(0);
        Partition((0..w).map(|j| self.0.iter().filter(|&&x| x > j).count() as u32).collect())
    }
    /// 2λ.
    pub fn doubled_rows(&self) -> Partition {
        Partition(self.0.iter().map(|x| 2 * x).collect())
    }
    /// λ(2) = (λ₁, λ₁, λ₂, λ₂, …).
    pub fn doubled(&self) -> Partition {
        Partition(self.0.iter().flat_map(|&x| [x, x]).collect())
    }
    /// (2^e, 1^d).
    pub fn twos_ones(e: usize, d: usize) -> Partition {
        let mut v = vec![2; e];
        v.extend(std::iter::repeat_n(1, d));
        Partition(v)
    }
    /// Dimension of S_λ ℂ^r by the hook-content formula.
    pub fn gl_dim(&self, r: usize) -> u128 {
        if self.len() > r {
            return 0;
        }
        let conj = self.conjugate();
        let mut acc = Q::one();
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row as usize {
                let hook = row as i64 - j as i64 + conj.part(j) as i64 - i as i64 - 1;
                acc *= q(r as i64 + j as i64 - i as i64) / q(hook);
            }
        }
        acc.to_integer().to_u128().unwrap_or(0)
    }
    /// Highest weight marks λ_i − λ_{i+1}, i = 1..r−1, of S_λ ℂ^r on SL_r.
    pub fn sl_marks(&self, r: usize) -> Vec<i64> {
        (0..r.saturating_sub(1)).map(|i| self.part(i) as i64 - self.part(i + 1) as i64).collect()
    }
    /// All partitions of n in reverse lexicographic order.
    pub fn all(n: u32) -> Vec<Partition> {
        fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=n.min(max)).rev() {
                cur.push(p);
                go(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut vec![], &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", v.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CauchyKind {
    /// S^j(E*⊗Q) = ⊕_{|λ|=j} S_λE*⊗S_λQ
    Tensor { rank_e: usize, rank_q: usize },
    /// S^j(S²E) = ⊕ S_{2λ}E
    Sym2 { rank: usize },
    /// S^j(Λ²E) = ⊕ S_{λ(2)}E
    Wedge2 { rank: usize },
}

/// Constituents of the plethysm, each a list of partitions (two for the tensor kind).
pub fn cauchy_sym(kind: CauchyKind, j: u32) -> Vec<Vec<Partition>> {
    let mut out = Vec::new();
    for lam in Partition::all(j) {
        match kind {
            CauchyKind::Tensor { rank_e, rank_q } => {
                if lam.len() <= rank_e.min(rank_q) {
                    out.push(vec![lam.clone(), lam]);
                }
            }
            CauchyKind::Sym2 { rank } => {
                if lam.len() <= rank {
                    out.push(vec![lam.doubled_rows()]);
                }
            }
            CauchyKind::Wedge2 { rank } => {
                let d = lam.doubled();
                if d.len() <= rank {
                    out.push(vec![d]);
                }
            }
        }
    }
    out
}

/// Symbolic module over bundle letters (E, Q, U) with ranks supplied at evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModuleExpr {
    Zero,
    Trivial,
    Letter { name: String, dual: bool },
    Lambda(usize, Box<ModuleExpr>),
    /// Reduced exterior power Λ^⟨a⟩ of a symplectic module.
    ReducedLambda(usize, Box<ModuleExpr>),
    Sym(usize, Box<ModuleExpr>),
    Schur(Partition, Box<ModuleExpr>),
    Tensor(Vec<ModuleExpr>),
    Sum(Vec<ModuleExpr>),
    /// A module known only by label and dimension.
    Named { label: String, dim: u128 },
}

impl ModuleExpr {
    pub fn letter(name: &str) -> Self {
        ModuleExpr::Letter { name: name.into(), dual: false }
    }
    pub fn dual(name: &str) -> Self {
        ModuleExpr::Letter { name: name.into(), dual: true }
    }
    pub fn lambda(a: usize, m: ModuleExpr) -> Self {
        ModuleExpr::Lambda(a, Box::new(m))
    }
    pub fn sym(a: usize, m: ModuleExpr) -> Self {
        ModuleExpr::Sym(a, Box::new(m))
    }
    pub fn schur(p: Partition, m: ModuleExpr) -> Self {
        ModuleExpr::Schur(p, Box::new(m))
    }
    pub fn tensor(v: Vec<ModuleExpr>) -> Self {
        ModuleExpr::Tensor(v)
    }

    pub fn dim(&self, ranks: &BTreeMap<String, usize>) -> u128 {
        match self {
            ModuleExpr::Zero => 0,
            ModuleExpr::Trivial => 1,
            ModuleExpr::Letter { name, .. } => ranks.get(name).copied().unwrap_or(0) as u128,
            ModuleExpr::Lambda(a, m) => binomial(m.dim(ranks), *a as u128),
            ModuleExpr::ReducedLambda(a, m) => {
                let d = m.dim(ranks);
                let lower = if *a >= 2 { binomial(d, *a as u128 - 2) } else { 0 };
                binomial(d, *a as u128) - lower
            }
            ModuleExpr::Sym(a, m) => {
                let d = m.dim(ranks);
                if d == 0 {
                    if *a == 0 {
                        1
                    } else {
                        0
                    }
                } else {
                    binomial(d + *a as u128 - 1, *a as u128)
                }
            }
            ModuleExpr::Schur(p, m) => p.gl_dim(m.dim(ranks) as usize),
            ModuleExpr::Tensor(v) => v.iter().map(|m| m.dim(ranks)).product(),
            ModuleExpr::Sum(v) => v.iter().map(|m| m.dim(ranks)).sum(),
            ModuleExpr::Named { dim, .. } => *dim,
        }
    }

    /// Highest weight of an irreducible expression, on the nodes of H.
    /// `None` for the zero module.
    pub fn highest_weight(&self, ctx: &LetterContext) -> Result<Option<BTreeMap<usize, i64>>> {
        let unsupported = || Error::Uncovered(format!("no highest weight rule for {self}"));
        let single = |p: &Partition, name: &str, dual: bool| -> Result<Option<BTreeMap<usize, i64>>> {
            let Some(nodes) = ctx.gl.get(name) else {
                return Err(unsupported());
            };
            let r = nodes.len() + 1;
            if p.len() > r {
                return Ok(None);
            }
            let mut marks = p.sl_marks(r);
            if dual {
                marks.reverse();
            }
            Ok(Some(nodes.iter().copied().zip(marks).collect()))
        };
        match self {
            ModuleExpr::Zero => Ok(None),
            ModuleExpr::Trivial => Ok(Some(BTreeMap::new())),
            ModuleExpr::Letter { name, dual } => {
                if let Some(w) = ctx.fixed.get(name) {
                    return Ok(Some(w.clone()));
                }
                single(&Partition(vec![1]), name, *dual)
            }
            ModuleExpr::Lambda(_, m) | ModuleExpr::Sym(_, m) | ModuleExpr::Schur(_, m) => {
                let ModuleExpr::Letter { name, dual } = m.as_ref() else {
                    return Err(unsupported());
                };
                let p = match self {
                    ModuleExpr::Lambda(a, _) => Partition::new(vec![1; *a]),
                    ModuleExpr::Sym(a, _) => Partition::new(vec![*a as u32]),
                    ModuleExpr::Schur(p, _) => p.clone(),
                    _ => unreachable!(),
                };
                single(&p, name, *dual)
            }
            ModuleExpr::Tensor(v) => {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for m in v {
                    match m.highest_weight(ctx)? {
                        None => return Ok(None),
                        Some(w) => {
                            for (n, x) in w {
                                if acc.contains_key(&n) && x != 0 && acc[&n] != 0 {
                                    return Err(unsupported());
                                }
                                *acc.entry(n).or_insert(0) += x;
                            }
                        }
                    }
                }
                Ok(Some(acc))
            }
            _ => Err(unsupported()),
        }
    }
}

impl fmt::Display for ModuleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleExpr::Zero => write!(f, "0"),
            ModuleExpr::Trivial => write!(f, "C"),
            ModuleExpr::Letter { name, dual } => write!(f, "{}{}", name, if *dual { "*" } else { "" }),
            ModuleExpr::Lambda(a, m) => write!(f, "Λ^{a}{}", paren(m)),
            ModuleExpr::ReducedLambda(a, m) => write!(f, "Λ^<{a}>{}", paren(m)),
            ModuleExpr::Sym(a, m) => write!(f, "S^{a}{}", paren(m)),
            ModuleExpr::Schur(p, m) => write!(f, "S_{p}{}", paren(m)),
            ModuleExpr::Tensor(v) => {
                let s: Vec<String> = v.iter().map(paren).collect();
                write!(f, "{}", s.join("⊗"))
            }
            ModuleExpr::Sum(v) => {
                let s: Vec<String> = v.iter().map(|m| m.to_string()).collect();
                write!(f, "{}", s.join(" ⊕ "))
            }
            ModuleExpr::Named { label, .. } => write!(f, "{label}"),
        }
    }
}

fn paren(m: &ModuleExpr) -> String {
    match m {
        ModuleExpr::Sum(_) | ModuleExpr::Tensor(_) => format!("({m})"),
        _ => m.to_string(),
    }
}

/// How bundle letters sit in H: `gl` letters are standard modules of an SL_r
/// whose nodes are listed so the standard module has highest weight ω at the
/// first node; `fixed` letters are irreducibles with a given highest weight.
#[derive(Clone, Debug, Default)]
pub struct LetterContext {
    pub gl: BTreeMap<String, Vec<usize>>,
    pub fixed: BTreeMap<String, BTreeMap<usize, i64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// G(k, n) = A_{n−1}/P_k
    Grassmannian { k: usize, n: usize },
    /// G_Lag(n, 2n) = C_n/P_n
    Lagrangian { n: usize },
    /// Spinor variety D_n/P_n (or P_{n−1}), with H = SL_n
    Spinor { n: usize },
    /// Quadric hypersurface Q^m
    Quadric { m: usize },
    /// B_n/P_n
    OddSpinor { n: usize },
    /// G_ω(k, 2n) = C_n/P_k, k < n
    SymplecticGrassmannian { k: usize, n: usize },
    /// G_o(k, n), 2k < n
    OrthogonalGrassmannian { k: usize, n: usize },
    /// E6/P1 or E6/P6
    CayleyPlane,
    /// E7/P7
    Freudenthal,
}

impl Family {
    pub fn of(ps: &ParabolicSpec) -> Result<Family> {
        let Some(i) = ps.single() else {
            return Err(Error::Uncovered(format!("{ps} is not a maximal parabolic")));
        };
        let n = ps.spec.rank;
        let f = match (ps.spec.series, i) {
            (Series::A, k) => Family::Grassmannian { k, n: n + 1 },
            (Series::B, 1) => Family::Quadric { m: 2 * n - 1 },
            (Series::B, k) if k == n => Family::OddSpinor { n },
            (Series::B, k) => Family::OrthogonalGrassmannian { k, n: 2 * n + 1 },
            (Series::C, k) if k == n => Family::Lagrangian { n },
            (Series::C, k) => Family::SymplecticGrassmannian { k, n },
            (Series::D, 1) => Family::Quadric { m: 2 * n - 2 },
            (Series::D, k) if k + 1 >= n => Family::Spinor { n },
            (Series::D, k) => Family::OrthogonalGrassmannian { k, n: 2 * n },
            (Series::E, 1) | (Series::E, 6) if n == 6 => Family::CayleyPlane,
            (Series::E, 7) if n == 7 => Family::Freudenthal,
            _ => return Err(Error::Uncovered(format!("no normal-space table for {ps}"))),
        };
        Ok(f)
    }

    pub fn name(&self) -> String {
        match *self {
            Family::Grassmannian { k, n } => format!("G({k},{n})"),
            Family::Lagrangian { n } => format!("G_Lag({n},{})", 2 * n),
            Family::Spinor { n } => format!("S_{n}"),
            Family::Quadric { m } => format!("Q^{m}"),
            Family::OddSpinor { n } => format!("B{n}/P{n}"),
            Family::SymplecticGrassmannian { k, n } => format!("G_w({k},{})", 2 * n),
            Family::OrthogonalGrassmannian { k, n } => format!("G_o({k},{n})"),
            Family::CayleyPlane => "OP^2".into(),
            Family::Freudenthal => "G_w(O^3,O^6)".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalTable {
    pub family: Family,
    pub ranks: BTreeMap<String, usize>,
    pub tangent: Vec<ModuleExpr>,
    /// (j, N_j) for 2 ≤ j ≤ length.
    pub normals: Vec<(usize, ModuleExpr)>,
    pub length: usize,
}

impl NormalTable {
    pub fn normal(&self, j: usize) -> ModuleExpr {
        self.normals.iter().find(|(i, _)| *i == j).map(|(_, m)| m.clone()).unwrap_or(ModuleExpr::Zero)
    }
    pub fn tangent_dim(&self) -> u128 {
        self.tangent.iter().map(|m| m.dim(&self.ranks)).sum()
    }
    pub fn normal_dims(&self) -> Vec<u128> {
        self.normals.iter().map(|(_, m)| m.dim(&self.ranks)).collect()
    }
    /// 1 + dim T + Σ dim N_j, which must equal the dimension of the ambient module.
    pub fn total_dim(&self) -> u128 {
        1 + self.tangent_dim() + self.normal_dims().iter().sum::<u128>()
    }
}

fn ranks(v: &[(&str, usize)]) -> BTreeMap<String, usize> {
    v.iter().map(|(s, r)| (s.to_string(), *r)).collect()
}

/// Tangent and normal spaces of the covered families.
pub fn normal_spaces(ps: &ParabolicSpec) -> Result<NormalTable> {
    Ok(normal_table(Family::of(ps)?))
}

pub fn normal_table(family: Family) -> NormalTable {
    use ModuleExpr as M;
    let ed = || M::dual("E");
    
    match family {
        Family::Grassmannian { k, n } => {
            let l = k.min(n - k);
            NormalTable {
                family,
                ranks: ranks(&[("E", k), ("Q", n - k)]),
                tangent: vec![M::tensor(vec![ed(), M::letter("Q")])],
                normals: (2..=l).map(|j| (j, M::tensor(vec![M::lambda(j, ed()), M::lambda(j, M::letter("Q"))]))).collect(),
                length: l,
            }
        }
        Family::Lagrangian { n } => NormalTable {
            family,
            ranks: ranks(&[("E", n)]),
            tangent: vec![M::sym(2, ed())],
            normals: (2..=n).map(|j| (j, M::schur(Partition::twos_ones(j, 0), ed()))).collect(),
            length: n,
        },
        Family::Spinor { n } => NormalTable {
            family,
            ranks: ranks(&[("E", n)]),
            tangent: vec![M::lambda(2, ed())],
            normals: (2..=n / 2).map(|j| (j, M::lambda(2 * j, ed()))).collect(),
            length: n / 2,
        },
        Family::Quadric { m } => NormalTable {
            family,
            ranks: ranks(&[("U", m)]),
            tangent: vec![M::letter("U")],
            normals: vec![(2, M::Trivial)],
            length: 2,
        },
        Family::OddSpinor { n } => {
            let l = n.div_ceil(2);
            NormalTable {
                family,
                ranks: ranks(&[("E", n)]),
                tangent: vec![ed(), M::lambda(2, ed())],
                normals: (2..=l)
                    .map(|p| (p, M::Sum(vec![M::lambda(2 * p - 1, ed()), M::lambda(2 * p, ed())])))
                    .collect(),
                length: l,
            }
        }
        Family::SymplecticGrassmannian { k, n } => {
            let mut normals = Vec::new();
            for p in 2..=k {
                let terms = (0..=p)
                    .map(|d| {
                        M::tensor(vec![M::lambda(d, M::letter("U")), M::schur(Partition::twos_ones(p - d, d), ed())])
                    })
                    .collect();
                normals.push((p, M::Sum(terms)));
            }
            NormalTable {
                family,
                ranks: ranks(&[("E", k), ("U", 2 * n - 2 * k)]),
                tangent: vec![M::tensor(vec![ed(), M::letter("U")]), M::sym(2, ed())],
                normals,
                length: k,
            }
        }
        Family::OrthogonalGrassmannian { k, n } => {
            let l = if k % 2 == 0 { k } else { k + 1 };
            let mut normals = Vec::new();
            for p in 2..=l {
                let mut terms: Vec<ModuleExpr> = (1..=p)
                    .map(|a| M::tensor(vec![M::lambda(p - a, ed()), M::lambda(p, ed()), M::lambda(a, M::letter("U"))]))
                    .collect();
                // (Λ^pE*⊗Λ^pE*)_± : S² or Λ² according to the parity of p
                let square = |p: usize, even_sym: bool| {
                    let inner = M::lambda(p, ed());
                    if p.is_multiple_of(2) == even_sym {
                        M::sym(2, inner)
                    } else {
                        M::lambda(2, inner)
                    }
                };
                terms.push(square(p, true));
                terms.push(square(p - 1, false));
                normals.push((p, M::Sum(terms)));
            }
            NormalTable {
                family,
                ranks: ranks(&[("E", k), ("U", n - 2 * k)]),
                tangent: vec![M::tensor(vec![ed(), M::letter("U")]), M::lambda(2, ed())],
                normals,
                length: l,
            }
        }
        Family::CayleyPlane => NormalTable {
            family,
            ranks: BTreeMap::new(),
            tangent: vec![M::Named { label: "W_w4 (half-spin of D5)".into(), dim: 16 }],
            normals: vec![(2, M::Named { label: "W_w1 (vector of D5)".into(), dim: 10 })],
            length: 2,
        },
        Family::Freudenthal => NormalTable {
            family,
            ranks: BTreeMap::new(),
            tangent: vec![M::Named { label: "W_w1 (minimal of E6)".into(), dim: 27 }],
            normals: vec![
                (2, M::Named { label: "W_w6 (dual minimal of E6)".into(), dim: 27 }),
                (3, M::Named { label: "C".into(), dim: 1 }),
            ],
            length: 3,
        },
    }
}

/// Letter placement in H for the family of `ps`.
pub fn letter_context(ps: &ParabolicSpec) -> Result<LetterContext> {
    let family = Family::of(ps)?;
    let i = ps.single().unwrap();
    let g = grading(ps)?;
    let phi1 = g.pieces[0].h_highest_weight.clone();
    let mut ctx = LetterContext::default();
    let d = ps.diagram();
    // the A-type path of 𝒟∖{i} starting at `start`, walking away from `avoid`
    let path_from = |start: usize| -> Vec<usize> {
        let rest = d.without(&BTreeSet::from([i]));
        let mut path = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&nx) = rest.neighbors(cur).iter().find(|&&x| x != prev) {
            if rest.degree(cur) > 2 {
                break;
            }
            prev = cur;
            cur = nx;
            path.push(nx);
        }
        path
    };
    match family {
        Family::Grassmannian { k, n } => {
            ctx.gl.insert("E".into(), (1..k).collect());
            ctx.gl.insert("Q".into(), (k + 1..n).collect());
        }
        Family::Lagrangian { n } => {
            ctx.gl.insert("E".into(), (1..n).collect());
        }
        Family::Spinor { .. } => {
            ctx.gl.insert("E".into(), path_from(1));
        }
        Family::OddSpinor { n } => {
            ctx.gl.insert("E".into(), (1..n).collect());
        }
        Family::SymplecticGrassmannian { k, .. } | Family::OrthogonalGrassmannian { k, .. } => {
            ctx.gl.insert("E".into(), (1..k).collect());
            let u: BTreeMap<usize, i64> = phi1.iter().filter(|(&n, _)| n > k).map(|(&n, &m)| (n, m)).collect();
            ctx.fixed.insert("U".into(), u);
        }
        Family::Quadric { .. } => {
            ctx.fixed.insert("U".into(), phi1);
        }
        Family::CayleyPlane | Family::Freudenthal => {}
    }
    Ok(ctx)
}

fn to_node_map(nodes: &[usize], w: &Weight) -> BTreeMap<usize, i64> {
    nodes.iter().copied().zip(w.marks.iter().copied()).collect()
}

fn from_node_map(nodes: &[usize], m: &BTreeMap<usize, i64>) -> Weight {
    Weight { marks: nodes.iter().map(|n| m.get(n).copied().unwrap_or(0)).collect() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalSpaceReport {
    pub space: String,
    pub j: usize,
    /// Constituents of S^jT: (highest weight on the nodes of H, multiplicity).
    pub sym_power: Vec<(BTreeMap<usize, i64>, u64)>,
    /// Whether the plethysm formula gives the same constituents.
    pub cauchy_agrees: Option<bool>,
    /// Constituents of the restriction of V to H, with their grades.
    pub restriction: Vec<(Vec<i64>, BTreeMap<usize, i64>)>,
    pub common: Vec<BTreeMap<usize, i64>>,
    pub expected: Option<BTreeMap<usize, i64>>,
    pub expected_expr: String,
    pub ok: bool,
}

/// Intersect the constituents of S^jT with those of Res_H V and compare the
/// unique common constituent with the table entry N_j.
pub fn verify_normal_space(ps: &ParabolicSpec, j: usize, guard: u64) -> Result<NormalSpaceReport> {
    let table = normal_spaces(ps)?;
    let ctx = letter_context(ps)?;
    let g = grading(ps)?;
    if g.pieces.len() != 1 {
        return Err(Error::Uncovered(format!("{ps} is not cominuscule; verification needs a single tangent piece")));
    }
    if j < 2 {
        return Err(Error::Invalid("j must be at least 2".into()));
    }
    let i = ps.single().unwrap();
    let d = ps.diagram();
    let r = build_root_system(&d);
    let levi_rs = levi_root_system(&d, &ps.s);
    let lnodes: Vec<usize> = levi_rs.nodes().to_vec();
    let phi1 = from_node_map(&lnodes, &g.pieces[0].h_highest_weight);
    let t_weights = weights_with_mults(&levi_rs, &phi1, guard)?;
    let dim_t: u128 = t_weights.values().map(|&m| m as u128).sum();
    let sdim = binomial(dim_t + j as u128 - 1, j as u128);
    if sdim > guard as u128 {
        return Err(Error::guard("verify_normal_space", sdim.min(u64::MAX as u128) as u64, guard));
    }
    let sym = peel(&levi_rs, sym_power(&t_weights, j), guard)?;
    let sym_maps: Vec<(BTreeMap<usize, i64>, u64)> = sym.iter().map(|(w, m)| (to_node_map(&lnodes, w), *m)).collect();
    // plethysm route
    let kind = match table.family {
        Family::Grassmannian { k, n } => Some((CauchyKind::Tensor { rank_e: k, rank_q: n - k }, vec!["E*", "Q"])),
        Family::Lagrangian { n } => Some((CauchyKind::Sym2 { rank: n }, vec!["E*"])),
        Family::Spinor { n } => Some((CauchyKind::Wedge2 { rank: n }, vec!["E*"])),
        _ => None,
    };
    let cauchy_agrees = match kind {
        None => None,
        Some((kind, letters)) => {
            let mut predicted: BTreeMap<BTreeMap<usize, i64>, u64> = BTreeMap::new();
            for term in cauchy_sym(kind, j as u32) {
                let factors: Vec<ModuleExpr> = term
                    .iter()
                    .zip(&letters)
                    .map(|(p, l)| {
                        let base = match l.strip_suffix('*') {
                            Some(x) => ModuleExpr::dual(x),
                            None => ModuleExpr::letter(l),
                        };
                        ModuleExpr::schur(p.clone(), base)
                    })
                    .collect();
                if let Some(w) = ModuleExpr::tensor(factors).highest_weight(&ctx)? {
                    let w: BTreeMap<usize, i64> = lnodes.iter().map(|n| (*n, w.get(n).copied().unwrap_or(0))).collect();
                    *predicted.entry(w).or_insert(0) += 1;
                }
            }
            let got: BTreeMap<BTreeMap<usize, i64>, u64> = sym_maps.iter().cloned().collect();
            Some(predicted == got)
        }
    };
    let mut lambda = Weight::zero(r.rank());
    lambda.marks[r.pos(i)] = 1;
    let res = restrict_to_levi(&r, &lambda, &ps.s, guard)?;
    let restriction: Vec<(Vec<i64>, BTreeMap<usize, i64>)> =
        res.terms.iter().map(|t| (t.grade.clone(), t.weight.clone())).collect();
    let res_set = res.weights();
    let common: Vec<BTreeMap<usize, i64>> =
        sym_maps.iter().map(|(w, _)| w.clone()).filter(|w| res_set.contains(w)).collect();
    let expr = table.normal(j);
    let expected = expr.highest_weight(&ctx)?.map(|w| {
        lnodes.iter().map(|n| (*n, w.get(n).copied().unwrap_or(0))).collect::<BTreeMap<usize, i64>>()
    });
    if j <= table.length && common.len() != 1 {
        return Err(Error::NonUniqueConstituent(format!("{ps}, j = {j}: {} common constituents", common.len())));
    }
    let ok = match &expected {
        Some(w) => common.len() == 1 && common[0] == *w,
        None => common.is_empty(),
    } && cauchy_agrees != Some(false);
    Ok(NormalSpaceReport {
        space: ps.to_string(),
        j,
        sym_power: sym_maps,
        cauchy_agrees,
        restriction,
        common,
        expected,
        expected_expr: expr.to_string(),
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::of(s.parse().unwrap())
    }
    fn ps(s: &str) -> ParabolicSpec {
        s.parse().unwrap()
    }
    fn w(v: &[i64]) -> Weight {
        Weight { marks: v.to_vec() }
    }

    #[test]
    fn weyl_dims() {
        assert_eq!(weyl_dim(&rs("E6"), &w(&[1, 0, 0, 0, 0, 0])).unwrap(), 27);
        assert_eq!(weyl_dim(&rs("E7"), &w(&[0, 0, 0, 0, 0, 0, 1])).unwrap(), 56);
        assert_eq!(weyl_dim(&rs("A5"), &w(&[1, 0, 0, 0, 0])).unwrap(), 6);
        assert_eq!(weyl_dim(&rs("E6"), &w(&[0, 0, 0, 1, 0, 0])).unwrap(), 2925);
        assert_eq!(weyl_dim(&rs("E8"), &w(&[0, 0, 0, 0, 0, 0, 0, 1])).unwrap(), 248);
        assert_eq!(weyl_dim(&rs("G2"), &w(&[3, 0])).unwrap(), 77);
        assert!(matches!(weyl_dim(&rs("A2"), &w(&[-1, 0])), Err(Error::NonDominant(_))));
    }

    #[test]
    fn multiplicities() {
        let a2 = rs("A2");
        let m = weights_with_mults(&a2, &w(&[1, 0]), 100).unwrap();
        assert_eq!(m.len(), 3);
        assert!(m.values().all(|&x| x == 1));
        let m = weights_with_mults(&a2, &w(&[1, 1]), 100).unwrap();
        assert_eq!(m.len(), 7);
        assert_eq!(m[&w(&[0, 0])], 2);
        let b3 = rs("B3");
        let m = weights_with_mults(&b3, &w(&[0, 0, 1]), 100).unwrap();
        assert_eq!(m.len(), 8);
        let e6 = rs("E6");
        assert!(matches!(
            weights_with_mults(&e6, &w(&[0, 0, 0, 1, 0, 0]), 1000),
            Err(Error::Guard { partial: 2925, .. })
        ));
    }

    #[test]
    fn levi_restrictions() {
        let e6 = rs("E6");
        let res = restrict_to_levi(&e6, &w(&[1, 0, 0, 0, 0, 0]), &[1].into(), 1000).unwrap();
        let dims: Vec<u128> = res.dims_by_grade().values().copied().collect();
        assert_eq!(dims, vec![1, 16, 10]);
        let a5 = rs("A5");
        let res = restrict_to_levi(&a5, &w(&[0, 0, 1, 0, 0]), &[3].into(), 1000).unwrap();
        let dims: Vec<u128> = res.dims_by_grade().values().copied().collect();
        assert_eq!(dims, vec![1, 9, 9, 1]);
        let triv = restrict_to_levi(&a5, &w(&[0, 0, 0, 0, 0]), &[3].into(), 1000).unwrap();
        assert_eq!(triv.terms.len(), 1);
        assert_eq!(triv.terms[0].dim, 1);
    }

    #[test]
    fn partitions_and_cauchy() {
        assert_eq!(Partition::all(4).len(), 5);
        assert_eq!(Partition(vec![2, 2]).gl_dim(3), 6);
        assert_eq!(Partition(vec![2, 1]).gl_dim(3), 8);
        let t = cauchy_sym(CauchyKind::Tensor { rank_e: 3, rank_q: 3 }, 2);
        assert_eq!(t, vec![vec![Partition(vec![2]); 2], vec![Partition(vec![1, 1]); 2]]);
        let s = cauchy_sym(CauchyKind::Sym2 { rank: 3 }, 3);
        let s: Vec<Partition> = s.into_iter().map(|v| v[0].clone()).collect();
        assert_eq!(s, vec![Partition(vec![6]), Partition(vec![4, 2]), Partition(vec![2, 2, 2])]);
        let s = cauchy_sym(CauchyKind::Wedge2 { rank: 4 }, 2);
        let s: Vec<Partition> = s.into_iter().map(|v| v[0].clone()).collect();
        assert_eq!(s, vec![Partition(vec![2, 2]), Partition(vec![1, 1, 1, 1])]);
    }

    #[test]
    fn table_dimensions_add_up() {
        for (s, v) in [
            ("A4/P2", 10u128),
            ("A5/P3", 20),
            ("C3/P3", 14),
            ("D6/P6", 32),
            ("D3/P1", 6),
            ("B4/P4", 16),
            ("C4/P2", 27),
            ("B4/P2", 36),
            ("D6/P3", 220),
            ("E6/P1", 27),
            ("E7/P7", 56),
        ] {
            assert_eq!(normal_spaces(&ps(s)).unwrap().total_dim(), v, "{s}");
        }
    }

    #[test]
    fn tangent_weights_match_grading() {
        for s in ["A4/P2", "A5/P3", "C3/P3", "D6/P6", "D6/P5", "B4/P4", "C4/P2", "B4/P2", "D6/P3", "D5/P1"] {
            let p = ps(s);
            let table = normal_spaces(&p).unwrap();
            let ctx = letter_context(&p).unwrap();
            let g = grading(&p).unwrap();
            for (piece, expr) in g.pieces.iter().zip(&table.tangent) {
                let hw = expr.highest_weight(&ctx).unwrap().unwrap();
                let full: BTreeMap<usize, i64> =
                    piece.h_highest_weight.keys().map(|n| (*n, hw.get(n).copied().unwrap_or(0))).collect();
                assert_eq!(full, piece.h_highest_weight, "{s}");
                assert_eq!(expr.dim(&table.ranks), piece.dim as u128, "{s}");
            }
        }
    }

    #[test]
    fn verify_small_cases() {
        let rep = verify_normal_space(&ps("A4/P2"), 2, DEFAULT_DIM_GUARD).unwrap();
        assert!(rep.ok, "{rep:?}");
        assert_eq!(rep.cauchy_agrees, Some(true));
        let rep = verify_normal_space(&ps("D3/P1"), 2, DEFAULT_DIM_GUARD).unwrap();
        assert!(rep.ok);
        assert_eq!(rep.common, vec![BTreeMap::from([(2, 0), (3, 0)])]);
    }

    #[test]
    fn verify_table_instances() {
        for (s, jmax) in [("A4/P2", 2), ("A5/P3", 3), ("C3/P3", 3), ("D6/P6", 3), ("D6/P5", 3), ("D4/P1", 2)] {
            for j in 2..=jmax {
                let rep = verify_normal_space(&ps(s), j, DEFAULT_DIM_GUARD).unwrap();
                assert!(rep.ok, "{s} j={j}: {rep:?}");
            }
        }
        // past the length the intersection is empty
        let rep = verify_normal_space(&ps("A4/P2"), 3, DEFAULT_DIM_GUARD).unwrap();
        assert!(rep.ok && rep.common.is_empty() && rep.expected.is_none());
        // G_Lag(3,6), j = 2: S_(2,2)E*
        let rep = verify_normal_space(&ps("C3/P3"), 2, DEFAULT_DIM_GUARD).unwrap();
        assert_eq!(rep.expected_expr, "S_(2,2)E*");
        assert_eq!(rep.common[0], BTreeMap::from([(1, 2), (2, 0)]));
    }
}
