//! Exact scalar fields and dense linear algebra over them.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

/// Exact rationals.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Render a rational as "num/den" (or "num" when integral).
pub fn q_to_string(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn q_from_str(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let n: BigInt = a.trim().parse().ok()?;
            let d: BigInt = b.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

pub fn q_to_i64(x: &Q) -> Option<i64> {
    if !x.is_integer() {
        return None;
    }
    i64::try_from(x.numer().clone()).ok()
}

/// Minimal exact field interface used by the generic elimination routines.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_q(x: Q) -> Self;
}

impl Field for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_q(x: Q) -> Self {
        x
    }
}

/// Dual numbers a + bε with ε² = 0. Evaluating a map on x + εv yields its
/// directional derivative along v exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct Dual<F> {
    pub re: F,
    pub eps: F,
}

impl<F: Field> Dual<F> {
    pub fn new(re: F, eps: F) -> Self {
        Dual { re, eps }
    }
    pub fn constant(re: F) -> Self {
        Dual { re, eps: F::zero() }
    }
}

impl<F: Field> Add for Dual<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual::new(self.re + o.re, self.eps + o.eps)
    }
}

impl<F: Field> Sub for Dual<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual::new(self.re - o.re, self.eps - o.eps)
    }
}

impl<F: Field> Mul for Dual<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let eps = self.re.clone() * o.eps + self.eps * o.re.clone();
        Dual::new(self.re * o.re, eps)
    }
}

impl<F: Field> Div for Dual<F> {
    type Output = Self;
    // only valid when the real part of the divisor is nonzero
    fn div(self, o: Self) -> Self {
        let re = self.re.clone() / o.re.clone();
        let eps = (self.eps * o.re.clone() - self.re * o.eps) / (o.re.clone() * o.re);
        Dual::new(re, eps)
    }
}

impl<F: Field> Neg for Dual<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual::new(-self.re, -self.eps)
    }
}

impl<F: Field> Field for Dual<F> {
    fn zero() -> Self {
        Dual::new(F::zero(), F::zero())
    }
    fn one() -> Self {
        Dual::new(F::one(), F::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
    fn from_q(x: Q) -> Self {
        Dual::constant(F::from_q(x))
    }
}

/// In-place reduced row echelon form. Returns the pivot columns.
pub fn rref<F: Field>(m: &mut Vec<Vec<F>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = F::one() / m[row][col].clone();
        for c in col..ncols {
            if !m[row][c].is_zero() {
                m[row][c] = m[row][c].clone() * inv.clone();
            }
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..ncols {
                    if !m[row][c].is_zero() {
                        let d = f.clone() * m[row][c].clone();
                        m[r][c] = m[r][c].clone() - d;
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    pivots
}

pub fn rank<F: Field>(m: &[Vec<F>], ncols: usize) -> usize {
    let mut a = m.to_vec();
    rref(&mut a, ncols).len()
}

/// Basis of {x : m x = 0}, one vector per free column.
pub fn nullspace<F: Field>(m: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![F::zero(); ncols];
        v[free] = F::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -a[r][free].clone();
        }
        out.push(v);
    }
    out
}

/// Solve m x = b for square invertible m.
pub fn solve<F: Field>(m: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let n = m.len();
    let mut a: Vec<Vec<F>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let piv = rref(&mut a, n + 1);
    if piv.len() != n || piv.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(a.iter().map(|r| r[n].clone()).collect())
}

/// Incremental sparse row echelon form over Q.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    ncols: usize,
    /// pivot column → row with leading entry 1 at that column
    rows: std::collections::BTreeMap<usize, std::collections::BTreeMap<usize, Q>>,
}

impl SparseEchelon {
    pub fn new(ncols: usize) -> Self {
        SparseEchelon { ncols, rows: Default::default() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, row: &mut std::collections::BTreeMap<usize, Q>) {
        let mut from = 0;
        loop {
            let Some((&k, c)) = row.range(from..).find(|(k, _)| self.rows.contains_key(k)) else {
                break;
            };
            let c = c.clone();
            for (&j, v) in &self.rows[&k] {
                let e = row.entry(j).or_insert_with(|| q(0));
                *e -= &c * v;
                if Zero::is_zero(e) {
                    row.remove(&j);
                }
            }
            from = k + 1;
        }
    }

    /// Adds a row; returns false when it was already in the span.
    pub fn insert(&mut self, mut row: std::collections::BTreeMap<usize, Q>) -> bool {
        row.retain(|_, v| !Zero::is_zero(v));
        self.reduce(&mut row);
        let Some((&p, lead)) = row.iter().next() else {
            return false;
        };
        let inv = q(1) / lead;
        for v in row.values_mut() {
            *v *= &inv;
        }
        self.rows.insert(p, row);
        true
    }

    /// Reduced rows in order of pivot column.
    pub fn reduced_rows(&self) -> Vec<(usize, std::collections::BTreeMap<usize, Q>)> {
        let mut rows = self.rows.clone();
        let pivots: Vec<usize> = rows.keys().rev().copied().collect();
        for &p in &pivots {
            let prow = rows[&p].clone();
            for (_, r) in rows.range_mut(..p) {
                if let Some(c) = r.get(&p).cloned() {
                    for (&j, v) in &prow {
                        let e = r.entry(j).or_insert_with(|| q(0));
                        *e -= &c * v;
                        if Zero::is_zero(e) {
                            r.remove(&j);
                        }
                    }
                }
            }
        }
        rows.into_iter().collect()
    }

    /// Basis of the kernel, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let rows = self.reduced_rows();
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|c| !self.rows.contains_key(c)) {
            let mut v = vec![q(0); self.ncols];
            v[free] = q(1);
            for (p, r) in &rows {
                if let Some(c) = r.get(&free) {
                    v[*p] = -c.clone();
                }
            }
            out.push(v);
        }
        out
    }
}

pub fn abs_le(x: &Q, bound: i64) -> bool {
    x.abs() <= q(bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_matches_dense() {
        let m = vec![vec![q(1), q(2), q(3), q(0)], vec![q(2), q(4), q(6), q(0)], vec![q(0), q(1), q(1), q(1)]];
        let mut e = SparseEchelon::new(4);
        for r in &m {
            e.insert(r.iter().cloned().enumerate().collect());
        }
        assert_eq!(e.rank(), rank(&m, 4));
        assert_eq!(e.nullspace(), nullspace(&m, 4));
    }

    #[test]
    fn rref_rank_nullspace() {
        let m = vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(1), q(0), q(1)],
        ];
        assert_eq!(rank(&m, 3), 2);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 1);
        for row in &m {
            let s = row.iter().zip(&ns[0]).fold(q(0), |acc, (a, b)| acc + a * b);
            assert!(Zero::is_zero(&s));
        }
    }

    #[test]
    fn dual_derivative() {
        // d/dx (x^2 + 3x) at 2 = 7
        let x = Dual::new(q(2), q(1));
        let y = x.clone() * x.clone() + Dual::constant(q(3)) * x;
        assert_eq!(y.eps, q(7));
        let z = Dual::constant(q(1)) / Dual::new(q(2), q(1));
        assert_eq!(z.eps, qf(-1, 4));
    }

    #[test]
    fn rational_strings() {
        assert_eq!(q_to_string(&qf(6, -4)), "-3/2");
        assert_eq!(q_from_str("-3/2"), Some(qf(-3, 2)));
        assert_eq!(q_from_str("7"), Some(q(7)));
        assert_eq!(q_from_str("1/0"), None);
    }
}
