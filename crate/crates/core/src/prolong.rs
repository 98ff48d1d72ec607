//! Homogeneous polynomial systems over Q, their prolongations and Jacobian
//! spaces, the quadrics of the second fundamental form in matrix charts,
//! secant sampling and differential rank probes.
//!
//! Monomials are ordered graded-lexicographically (x₀ > x₁ > …); every
//! `PolySystem` basis is the reduced row echelon form in that order.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::field::{q, q_from_str, q_to_string, rank, Dual, Field, SparseEchelon, Q};
use crate::reps::{normal_table, Family};
use crate::{Error, Result};

pub const DEFAULT_POLY_GUARD: u64 = 2_000_000;

pub type Monomial = Vec<u32>;

/// Exponent vectors of degree d in n variables, in descending graded-lex order.
pub fn monomials(n: usize, d: u32) -> Vec<Monomial> {
    fn go(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            go(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(vec![]);
        }
        return out;
    }
    go(n, d, &mut Vec::new(), &mut out);
    out
}

/// dim S^d of an n-dimensional space.
pub fn sym_dim(n: usize, d: u32) -> u128 {
    crate::reps::binomial((n as u128) + d as u128 - 1, d as u128)
}

fn index_of(mons: &[Monomial]) -> HashMap<Monomial, usize> {
    mons.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub nvars: usize,
    pub degree: u32,
    pub terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        Poly { nvars, degree, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Poly::zero(nvars, 0);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Poly::zero(nvars, 1);
        p.add_term(e, Q::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Monomial, c: Q) {
        debug_assert_eq!(e.iter().sum::<u32>(), self.degree);
        let v = self.terms.entry(e.clone()).or_insert_with(Q::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, o.degree, "adding polynomials of different degree");
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars, self.degree);
        }
        Poly { nvars: self.nvars, degree: self.degree, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut p = Poly::zero(self.nvars, self.degree + o.degree);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let e = a.iter().zip(b).map(|(i, j)| i + j).collect();
                p.add_term(e, x * y);
            }
        }
        p
    }

    /// ∂/∂x_i.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut p = Poly::zero(self.nvars, self.degree.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                p.add_term(f, c * q(e[i] as i64));
            }
        }
        p
    }

    pub fn eval<F: Field>(&self, x: &[F]) -> F {
        let mut s = F::zero();
        for (e, c) in &self.terms {
            let mut t = F::from_q(c.clone());
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t = t * xi.clone();
                }
            }
            s = s + t;
        }
        s
    }

    fn to_row(&self, index: &HashMap<Monomial, usize>) -> BTreeMap<usize, Q> {
        self.terms.iter().map(|(e, c)| (index[e], c.clone())).collect()
    }

    fn from_row(nvars: usize, degree: u32, mons: &[Monomial], row: &BTreeMap<usize, Q>) -> Poly {
        let mut p = Poly::zero(nvars, degree);
        for (&i, c) in row {
            p.add_term(mons[i].clone(), c.clone());
        }
        p
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    nvars: usize,
    degree: u32,
    terms: Vec<(Monomial, String)>,
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().rev().map(|(e, c)| (e.clone(), q_to_string(c))).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PolyJson::deserialize(d)?;
        let mut p = Poly::zero(j.nvars, j.degree);
        for (e, c) in j.terms {
            if e.len() != j.nvars || e.iter().sum::<u32>() != j.degree {
                return Err(serde::de::Error::custom("monomial of wrong shape"));
            }
            let c = q_from_str(&c).ok_or_else(|| serde::de::Error::custom(format!("bad coefficient {c}")))?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

/// A linear space of forms of one degree, stored by its canonical basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolySystem {
    pub nvars: usize,
    pub degree: u32,
    pub basis: Vec<Poly>,
}

impl PolySystem {
    pub fn span(nvars: usize, degree: u32, polys: impl IntoIterator<Item = Poly>) -> PolySystem {
        let mons = monomials(nvars, degree);
        let index = index_of(&mons);
        let mut e = SparseEchelon::new(mons.len());
        for p in polys {
            if p.is_zero() {
                continue;
            }
            assert_eq!((p.nvars, p.degree), (nvars, degree), "form of the wrong shape");
            e.insert(p.to_row(&index));
        }
        let basis = e.reduced_rows().iter().map(|(_, r)| Poly::from_row(nvars, degree, &mons, r)).collect();
        PolySystem { nvars, degree, basis }
    }

    pub fn zero(nvars: usize, degree: u32) -> PolySystem {
        PolySystem { nvars, degree, basis: vec![] }
    }

    /// All forms of degree d.
    pub fn full(nvars: usize, degree: u32) -> PolySystem {
        let mons = monomials(nvars, degree);
        let basis = mons
            .into_iter()
            .map(|m| {
                let mut p = Poly::zero(nvars, degree);
                p.add_term(m, Q::one());
                p
            })
            .collect();
        PolySystem { nvars, degree, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, p: &Poly) -> bool {
        if p.is_zero() {
            return true;
        }
        if p.degree != self.degree {
            return false;
        }
        let mons = monomials(self.nvars, self.degree);
        let index = index_of(&mons);
        let mut e = SparseEchelon::new(mons.len());
        for b in &self.basis {
            e.insert(b.to_row(&index));
        }
        !e.insert(p.to_row(&index))
    }

    pub fn is_subspace_of(&self, o: &PolySystem) -> bool {
        self.basis.iter().all(|p| o.contains(p))
    }

    /// Index of the first basis form not vanishing at x.
    pub fn first_nonvanishing(&self, x: &[Q]) -> Option<usize> {
        self.basis.iter().position(|p| !p.eval(x).is_zero())
    }
}

/// Span of all first-order contractions ∂_i P, P ∈ A.
pub fn jacobian(a: &PolySystem) -> Result<PolySystem> {
    if a.degree == 0 {
        return Err(Error::Invalid("jacobian of constants".into()));
    }
    let ds = a.basis.iter().flat_map(|p| (0..a.nvars).map(move |i| p.derivative(i)));
    Ok(PolySystem::span(a.nvars, a.degree - 1, ds))
}

/// A^(1): forms P of degree d+1 with every ∂_i P in A. Solved as the space of
/// closed 1-forms Σ ω_i dx_i with ω_i ∈ A, then P = Σ x_i ω_i / (d+1).
fn prolong_once(a: &PolySystem, guard: u64) -> Result<PolySystem> {
    let n = a.nvars;
    let d = a.degree;
    let m = a.dim();
    if m == 0 {
        return Ok(PolySystem::zero(n, d + 1));
    }
    let unknowns = n * m;
    if d > 0 {
        let rows = sym_dim(n, d - 1) * (n * (n - 1) / 2) as u128;
        if rows * unknowns as u128 > guard as u128 * 64 {
            return Err(Error::guard("prolongation system", (rows * unknowns as u128).min(u64::MAX as u128) as u64, guard));
        }
    }
    let mut e = SparseEchelon::new(unknowns);
    if d > 0 {
        let der: Vec<Vec<Poly>> = a.basis.iter().map(|p| (0..n).map(|i| p.derivative(i)).collect()).collect();
        for i in 0..n {
            for k in i + 1..n {
                // Σ_j c_ij ∂_k a_j − Σ_j c_kj ∂_i a_j = 0
                let mut rows: HashMap<&Monomial, BTreeMap<usize, Q>> = HashMap::new();
                for j in 0..m {
                    for (mon, c) in &der[j][k].terms {
                        *rows.entry(mon).or_default().entry(i * m + j).or_insert_with(Q::zero) += c;
                    }
                    for (mon, c) in &der[j][i].terms {
                        *rows.entry(mon).or_default().entry(k * m + j).or_insert_with(Q::zero) -= c;
                    }
                }
                let mut keys: Vec<&&Monomial> = rows.keys().collect();
                keys.sort();
                let keys: Vec<Monomial> = keys.into_iter().map(|k| (*k).clone()).collect();
                for key in keys {
                    let row = rows.remove(&key).unwrap();
                    e.insert(row);
                }
            }
        }
    }
    let inv = Q::one() / q(d as i64 + 1);
    let polys = e.nullspace().into_iter().map(|c| {
        let mut p = Poly::zero(n, d + 1);
        for i in 0..n {
            let xi = Poly::var(n, i);
            for j in 0..m {
                if !c[i * m + j].is_zero() {
                    p = p.add(&xi.mul(&a.basis[j]).scale(&(&c[i * m + j] * &inv)));
                }
            }
        }
        p
    });
    Ok(PolySystem::span(n, d + 1, polys))
}

/// The l-th prolongation A^(l) = (A^(l−1))^(1).
pub fn prolongation(a: &PolySystem, l: u32, guard: u64) -> Result<PolySystem> {
    if l == 0 {
        return Ok(a.clone());
    }
    let size = sym_dim(a.nvars, a.degree + l);
    if size > guard as u128 {
        return Err(Error::guard("prolongation", size.min(u64::MAX as u128) as u64, guard));
    }
    let mut cur = a.clone();
    for _ in 0..l {
        cur = prolong_once(&cur, guard)?;
    }
    Ok(cur)
}

/// A^(l) as the kernel of S^{d+l} → ⊕_β S^d/A over all derivatives ∂^β of order l.
pub fn prolongation_direct(a: &PolySystem, l: u32, guard: u64) -> Result<PolySystem> {
    let n = a.nvars;
    let d = a.degree;
    let cols = monomials(n, d + l);
    let low = monomials(n, d);
    let low_index = index_of(&low);
    let betas = monomials(n, l);
    let work = cols.len() as u128 * betas.len() as u128 * low.len() as u128;
    if work > guard as u128 * 16 {
        return Err(Error::guard("direct prolongation", work.min(u64::MAX as u128) as u64, guard));
    }
    // canonical A: pivot monomial → row
    let mut e_a = SparseEchelon::new(low.len());
    for p in &a.basis {
        e_a.insert(p.to_row(&low_index));
    }
    let a_rows: HashMap<usize, BTreeMap<usize, Q>> = e_a.reduced_rows().into_iter().collect();
    let mut e = SparseEchelon::new(cols.len());
    for beta in &betas {
        // constraint rows indexed by non-pivot monomials of degree d
        let mut rows: BTreeMap<usize, BTreeMap<usize, Q>> = BTreeMap::new();
        for (ci, m) in cols.iter().enumerate() {
            if m.iter().zip(beta).any(|(x, y)| x < y) {
                continue;
            }
            let mut coef = Q::one();
            let mut mu = m.clone();
            for v in 0..n {
                for t in 0..beta[v] {
                    coef *= q((m[v] - t) as i64);
                }
                mu[v] -= beta[v];
            }
            let idx = low_index[&mu];
            match a_rows.get(&idx) {
                Some(r) => {
                    for (&qc, v) in r {
                        if qc != idx {
                            *rows.entry(qc).or_default().entry(ci).or_insert_with(Q::zero) -= &coef * v;
                        }
                    }
                }
                None => {
                    *rows.entry(idx).or_default().entry(ci).or_insert_with(Q::zero) += coef;
                }
            }
        }
        for (_, r) in rows {
            e.insert(r);
        }
    }
    let polys = e.nullspace().into_iter().map(|v| {
        let row: BTreeMap<usize, Q> = v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        Poly::from_row(n, d + l, &cols, &row)
    });
    Ok(PolySystem::span(n, d + l, polys))
}

/// Square matrix of polynomials.
pub type PolyMatrix = Vec<Vec<Poly>>;

pub fn det(m: &PolyMatrix) -> Poly {
    let k = m.len();
    if k == 0 {
        return Poly::constant(0, Q::one());
    }
    let nv = m[0][0].nvars;
    if k == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero(nv, 0);
    let mut first = true;
    for c in 0..k {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: PolyMatrix = m[1..].iter().map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, p)| p.clone()).collect()).collect();
        let t = m[0][c].mul(&det(&minor));
        let t = if c % 2 == 1 { t.scale(&-Q::one()) } else { t };
        if first {
            acc = t;
            first = false;
        } else {
            acc = acc.add(&t);
        }
    }
    acc
}

/// Pfaffian of a skew matrix of even size, by expansion along the first row.
pub fn pfaffian(m: &PolyMatrix) -> Poly {
    let k = m.len();
    if k == 0 {
        return Poly::constant(0, Q::one());
    }
    let nv = m[0][1].nvars;
    let mut acc: Option<Poly> = None;
    for j in 1..k {
        if m[0][j].is_zero() {
            continue;
        }
        let keep: Vec<usize> = (1..k).filter(|&x| x != j).collect();
        let sub: PolyMatrix = keep.iter().map(|&a| keep.iter().map(|&b| m[a][b].clone()).collect()).collect();
        let mut t = m[0][j].mul(&pfaffian_nv(&sub, nv));
        if j % 2 == 0 {
            t = t.scale(&-Q::one());
        }
        acc = Some(match acc {
            None => t,
            Some(a) => a.add(&t),
        });
    }
    acc.unwrap_or_else(|| Poly::zero(nv, (k / 2) as u32))
}

fn pfaffian_nv(m: &PolyMatrix, nv: usize) -> Poly {
    if m.is_empty() {
        Poly::constant(nv, Q::one())
    } else {
        pfaffian(m)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn minors(m: &PolyMatrix, k: usize) -> Vec<Poly> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut out = Vec::new();
    for r in subsets(rows, k) {
        for c in subsets(cols, k) {
            let sub: PolyMatrix = r.iter().map(|&i| c.iter().map(|&j| m[i][j].clone()).collect()).collect();
            out.push(det(&sub));
        }
    }
    out
}

/// Matrix-coordinate charts on T for the covered families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub family: Family,
    pub nvars: usize,
    pub matrix: PolyMatrix,
}

/// Generic p×q matrix, variables row by row.
pub fn generic_matrix(p: usize, qn: usize) -> PolyMatrix {
    let nv = p * qn;
    (0..p).map(|i| (0..qn).map(|j| Poly::var(nv, i * qn + j)).collect()).collect()
}

/// Symmetric n×n matrix on the variables s_ab, a ≤ b.
pub fn symmetric_matrix(n: usize) -> PolyMatrix {
    let nv = n * (n + 1) / 2;
    let mut idx = HashMap::new();
    let mut c = 0;
    for a in 0..n {
        for b in a..n {
            idx.insert((a, b), c);
            c += 1;
        }
    }
    (0..n).map(|a| (0..n).map(|b| Poly::var(nv, idx[&(a.min(b), a.max(b))])).collect()).collect()
}

/// Skew n×n matrix on the variables x_ab, a < b.
pub fn skew_matrix(n: usize) -> PolyMatrix {
    let nv = n * (n - 1) / 2;
    let mut idx = HashMap::new();
    let mut c = 0;
    for a in 0..n {
        for b in a + 1..n {
            idx.insert((a, b), c);
            c += 1;
        }
    }
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| match a.cmp(&b) {
                    std::cmp::Ordering::Less => Poly::var(nv, idx[&(a, b)]),
                    std::cmp::Ordering::Greater => Poly::var(nv, idx[&(b, a)]).scale(&-Q::one()),
                    std::cmp::Ordering::Equal => Poly::zero(nv, 1),
                })
                .collect()
        })
        .collect()
}

/// Number of chart variables, i.e. dim T.
pub fn chart_dim(family: Family) -> Result<usize> {
    match family {
        Family::Grassmannian { k, n } => Ok(k * (n - k)),
        Family::Lagrangian { n } => Ok(n * (n + 1) / 2),
        Family::Spinor { n } => Ok(n * (n - 1) / 2),
        Family::Quadric { m } => Ok(m),
        _ => Err(Error::Uncovered(format!("no matrix chart for {}", family.name()))),
    }
}

/// Quadrics of |FF²| in the matrix chart: 2×2 minors, symmetric 2×2 minors,
/// 4×4 sub-Pfaffians, or one nondegenerate quadric.
pub fn ff2_system(family: Family) -> Result<PolySystem> {
    let nv = chart_dim(family)?;
    let polys = match family {
        Family::Grassmannian { k, n } => minors(&generic_matrix(k, n - k), 2),
        Family::Lagrangian { n } => minors(&symmetric_matrix(n), 2),
        Family::Spinor { n } => {
            let m = skew_matrix(n);
            subsets(n, 4)
                .into_iter()
                .map(|s| pfaffian(&s.iter().map(|&a| s.iter().map(|&b| m[a][b].clone()).collect()).collect()))
                .collect()
        }
        Family::Quadric { m } => {
            // x₀x₁ + x₂x₃ + … (+ x_{m−1}² when m is odd)
            let mut p = Poly::zero(m, 2);
            for a in (0..m - 1).step_by(2) {
                let mut e = vec![0; m];
                e[a] = 1;
                e[a + 1] = 1;
                p.add_term(e, Q::one());
            }
            if m % 2 == 1 {
                let mut e = vec![0; m];
                e[m - 1] = 2;
                p.add_term(e, Q::one());
            }
            vec![p]
        }
        _ => unreachable!(),
    };
    Ok(PolySystem::span(nv, 2, polys))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProlongationRow {
    /// l in A^(l)
    pub order: u32,
    pub dim: usize,
    /// dim N_{l+2} from the normal-space table
    pub expected: u128,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProlongationReport {
    pub family: String,
    pub nvars: usize,
    pub rows: Vec<ProlongationRow>,
    pub ok: bool,
}

/// dim A^(k−2) against dim N_k for k = 2..=kmax, A = FF² in the chart.
pub fn strict_prolongation_report(family: Family, kmax: usize, guard: u64) -> Result<ProlongationReport> {
    let a = ff2_system(family)?;
    let table = normal_table(family);
    let mut rows = Vec::new();
    let mut cur = a.clone();
    for k in 2..=kmax {
        if k > 2 {
            cur = prolongation(&cur, 1, guard)?;
        }
        let expected = if k <= table.length { table.normal(k).dim(&table.ranks) } else { 0 };
        rows.push(ProlongationRow { order: (k - 2) as u32, dim: cur.dim(), expected, ok: cur.dim() as u128 == expected });
    }
    let ok = rows.iter().all(|r| r.ok);
    Ok(ProlongationReport { family: family.name(), nvars: a.nvars, rows, ok })
}

/// Small random rational: numerator in [−20, 20], denominator in [1, 7].
pub fn random_q<R: Rng>(rng: &mut R) -> Q {
    Q::new(rng.gen_range(-20i64..=20).into(), rng.gen_range(1i64..=7).into())
}

pub fn random_vec<R: Rng>(rng: &mut R, n: usize) -> Vec<Q> {
    loop {
        let v: Vec<Q> = (0..n).map(|_| random_q(rng)).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

/// Rational parameterizations of cones over base loci, in chart coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BaseParam {
    /// u vᵀ in the p×q chart (Segre)
    RankOne { p: usize, q: usize },
    /// x xᵀ in the symmetric chart (Veronese)
    Square { n: usize },
    /// u ∧ v in the skew chart (Grassmannian of lines)
    Decomposable { n: usize },
}

impl BaseParam {
    pub fn nvars(&self) -> usize {
        match *self {
            BaseParam::RankOne { p, q } => p * q,
            BaseParam::Square { n } => n * (n + 1) / 2,
            BaseParam::Decomposable { n } => n * (n - 1) / 2,
        }
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> Vec<Q> {
        match *self {
            BaseParam::RankOne { p, q } => {
                let u = random_vec(rng, p);
                let v = random_vec(rng, q);
                u.iter().flat_map(|a| v.iter().map(move |b| a * b)).collect()
            }
            BaseParam::Square { n } => {
                let x = random_vec(rng, n);
                (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).map(|(a, b)| &x[a] * &x[b]).collect()
            }
            BaseParam::Decomposable { n } => {
                let u = random_vec(rng, n);
                let v = random_vec(rng, n);
                (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).map(|(a, b)| &u[a] * &v[b] - &u[b] * &v[a]).collect()
            }
        }
    }
}

fn sum_of<R: Rng>(base: BaseParam, k: usize, rng: &mut R) -> Vec<Q> {
    let mut x = vec![Q::zero(); base.nvars()];
    for _ in 0..k {
        for (a, b) in x.iter_mut().zip(base.sample(rng)) {
            *a += b;
        }
    }
    x
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecantReport {
    pub k: usize,
    pub trials: usize,
    pub passed: usize,
    /// A point of σ_{k+1} on which some form of A^(k−1) does not vanish.
    pub witness: Option<Vec<String>>,
    pub witness_form: Option<usize>,
}

/// Sums of k base points must lie in Base(A^(k−1)).
pub fn secant_membership_check<R: Rng>(
    base: BaseParam,
    k: usize,
    a: &PolySystem,
    trials: usize,
    rng: &mut R,
    guard: u64,
) -> Result<SecantReport> {
    if k == 0 {
        return Err(Error::Invalid("k must be positive".into()));
    }
    if base.nvars() != a.nvars {
        return Err(Error::Invalid("parameterization and system have different variables".into()));
    }
    let ak = prolongation(a, (k - 1) as u32, guard)?;
    let passed = (0..trials).filter(|_| ak.first_nonvanishing(&sum_of(base, k, rng)).is_none()).count();
    let mut witness = None;
    let mut witness_form = None;
    if ak.dim() > 0 {
        for _ in 0..20 {
            let x = sum_of(base, k + 1, rng);
            if let Some(i) = ak.first_nonvanishing(&x) {
                witness = Some(x.iter().map(q_to_string).collect());
                witness_form = Some(i);
                break;
            }
        }
    }
    Ok(SecantReport { k, trials, passed, witness, witness_form })
}

/// Rank of the differential of a polynomial map at a point, read off from
/// dual-number evaluations along each coordinate direction.
pub fn differential_rank<F, M>(map: M, point: &[F]) -> usize
where
    F: Field,
    M: Fn(&[Dual<F>]) -> Vec<Dual<F>>,
{
    let mut cols = Vec::new();
    for j in 0..point.len() {
        let x: Vec<Dual<F>> = point
            .iter()
            .enumerate()
            .map(|(i, p)| Dual::new(p.clone(), if i == j { F::one() } else { F::zero() }))
            .collect();
        cols.push(map(&x).into_iter().map(|y| y.eps).collect::<Vec<F>>());
    }
    if cols.is_empty() {
        return 0;
    }
    let m = cols[0].len();
    rank(&cols, m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    /// Dimension of the image cone.
    pub rank: usize,
    pub projective_dim: usize,
    /// Rank at a second point; differs when the first point is special.
    pub second_rank: usize,
    pub singular_warning: bool,
}

/// Local dimension of the image of a parameterized cone at two points.
pub fn param_dimension_probe<F, M>(map: M, point: &[F], second: &[F]) -> ProbeReport
where
    F: Field,
    M: Fn(&[Dual<F>]) -> Vec<Dual<F>>,
{
    let r1 = differential_rank(&map, point);
    let r2 = differential_rank(&map, second);
    let rank = r1.max(r2);
    ProbeReport { rank, projective_dim: rank.saturating_sub(1), second_rank: r2, singular_warning: r1 != r2 }
}

fn outer<F: Field>(u: &[F], v: &[F]) -> Vec<F> {
    u.iter().flat_map(|a| v.iter().map(move |b| a.clone() * b.clone())).collect()
}

/// (u₁,v₁,u₂,v₂) ↦ u₁v₁ᵀ + u₂v₂ᵀ, 3×3.
pub fn secant_segre_map<F: Field>(x: &[F]) -> Vec<F> {
    let a = outer(&x[0..3], &x[3..6]);
    let b = outer(&x[6..9], &x[9..12]);
    a.into_iter().zip(b).map(|(p, q)| p + q).collect()
}

/// C_n/P_k base locus cone {(e⊗u, e²)} ⊂ E*⊗U ⊕ S²E*, with dim E = k, dim U = 2n − 2k.
pub fn cnpk_base_map<F: Field>(k: usize, x: &[F]) -> Vec<F> {
    let (e, u) = x.split_at(k);
    let mut out = outer(e, u);
    for a in 0..k {
        for b in a..k {
            out.push(e[a].clone() * e[b].clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::qf;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn guard() -> u64 {
        DEFAULT_POLY_GUARD
    }

    #[test]
    fn monomial_order() {
        let m = monomials(3, 2);
        assert_eq!(m[0], vec![2, 0, 0]);
        assert_eq!(m[1], vec![1, 1, 0]);
        assert_eq!(m.last().unwrap(), &vec![0, 0, 2]);
        assert_eq!(m.len() as u128, sym_dim(3, 2));
    }

    #[test]
    fn minors_of_3x3() {
        let a = ff2_system(Family::Grassmannian { k: 3, n: 6 }).unwrap();
        assert_eq!(a.dim(), 9);
        let a1 = prolongation(&a, 1, guard()).unwrap();
        assert_eq!(a1.dim(), 1);
        let d = det(&generic_matrix(3, 3));
        assert!(a1.contains(&d));
        assert_eq!(prolongation(&a, 2, guard()).unwrap().dim(), 0);
        assert_eq!(prolongation_direct(&a, 1, guard()).unwrap(), a1);
        let j = jacobian(&a1).unwrap();
        assert_eq!(j.dim(), 9);
        assert_eq!(j, a);
    }

    #[test]
    fn trivial_prolongations() {
        let full = PolySystem::full(3, 2);
        assert_eq!(prolongation(&full, 1, guard()).unwrap(), PolySystem::full(3, 3));
        let qd = ff2_system(Family::Quadric { m: 4 }).unwrap();
        assert_eq!(prolongation(&qd, 1, guard()).unwrap().dim(), 0);
        assert_eq!(jacobian(&qd).unwrap().dim(), 4);
        assert_eq!(jacobian(&PolySystem::zero(3, 2)).unwrap().dim(), 0);
    }

    #[test]
    fn system_sizes() {
        assert_eq!(ff2_system(Family::Grassmannian { k: 2, n: 5 }).unwrap().dim(), 3);
        assert_eq!(ff2_system(Family::Spinor { n: 6 }).unwrap().dim(), 15);
        assert_eq!(ff2_system(Family::Lagrangian { n: 3 }).unwrap().dim(), 6);
        assert_eq!(ff2_system(Family::Quadric { m: 5 }).unwrap().dim(), 1);
        assert!(matches!(ff2_system(Family::CayleyPlane), Err(Error::Uncovered(_))));
    }

    #[test]
    fn strict_prolongation() {
        let r = strict_prolongation_report(Family::Grassmannian { k: 3, n: 6 }, 4, guard()).unwrap();
        assert_eq!(r.rows.iter().map(|x| x.dim).collect::<Vec<_>>(), vec![9, 1, 0]);
        assert!(r.ok);
        for f in [
            Family::Grassmannian { k: 2, n: 5 },
            Family::Lagrangian { n: 3 },
            Family::Spinor { n: 6 },
            Family::Quadric { m: 4 },
        ] {
            let r = strict_prolongation_report(f, 4, guard()).unwrap();
            assert!(r.ok, "{r:?}");
        }
        let r = strict_prolongation_report(Family::Lagrangian { n: 3 }, 3, guard()).unwrap();
        assert_eq!(r.rows[1].dim, 1);
        let a1 = prolongation(&ff2_system(Family::Lagrangian { n: 3 }).unwrap(), 1, guard()).unwrap();
        assert!(a1.contains(&det(&symmetric_matrix(3))));
        let a1 = prolongation(&ff2_system(Family::Spinor { n: 6 }).unwrap(), 1, guard()).unwrap();
        assert!(a1.contains(&pfaffian(&skew_matrix(6))));
    }

    #[test]
    fn secant_membership() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = ff2_system(Family::Grassmannian { k: 3, n: 6 }).unwrap();
        let r = secant_membership_check(BaseParam::RankOne { p: 3, q: 3 }, 2, &a, 100, &mut rng, guard()).unwrap();
        assert_eq!((r.passed, r.trials), (100, 100));
        assert!(r.witness.is_some());
        let a = ff2_system(Family::Lagrangian { n: 3 }).unwrap();
        let r = secant_membership_check(BaseParam::Square { n: 3 }, 2, &a, 100, &mut rng, guard()).unwrap();
        assert_eq!(r.passed, 100);
        assert!(r.witness.is_some());
        let r = secant_membership_check(BaseParam::Square { n: 3 }, 1, &a, 20, &mut rng, guard()).unwrap();
        assert_eq!(r.passed, 20);
        let a = ff2_system(Family::Spinor { n: 6 }).unwrap();
        let r = secant_membership_check(BaseParam::Decomposable { n: 6 }, 2, &a, 30, &mut rng, guard()).unwrap();
        assert_eq!(r.passed, 30);
        assert!(r.witness.is_some());
    }

    #[test]
    fn segre_minors_identity() {
        for (p, qn) in [(2, 3), (3, 3), (3, 4), (4, 4)] {
            let m = generic_matrix(p, qn);
            let a = PolySystem::span(p * qn, 2, minors(&m, 2));
            for k in 1..=p.min(qn) - 1 {
                let ak = prolongation(&a, k as u32, guard()).unwrap();
                let expect = if k + 2 <= p.min(qn) {
                    PolySystem::span(p * qn, (k + 2) as u32, minors(&m, k + 2))
                } else {
                    PolySystem::zero(p * qn, (k + 2) as u32)
                };
                assert_eq!(ak, expect, "{p}x{qn} k={k}");
            }
        }
    }

    #[test]
    fn probes() {
        let p1: Vec<Q> = (1..=12).map(|i| qf(i * i % 7 + 1, i % 3 + 1)).collect();
        let p2: Vec<Q> = (1..=12).map(|i| qf(i * 5 % 11 - 3, 2)).collect();
        let r = param_dimension_probe(secant_segre_map::<Dual<Q>>, &p1, &p2);
        assert_eq!((r.rank, r.projective_dim), (8, 7));
        assert!(!r.singular_warning);
        let r = param_dimension_probe(|x: &[Dual<Q>]| cnpk_base_map(2, x), &p1[..4], &p2[..4]);
        assert_eq!((r.rank, r.projective_dim), (4, 3));
    }

    #[test]
    fn json_round_trip() {
        let a = ff2_system(Family::Grassmannian { k: 2, n: 4 }).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert!(s.contains("\"-1\"") || s.contains("\"1\""));
        let b: PolySystem = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
    }
}
