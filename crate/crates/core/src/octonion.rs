//! Complexified octonions over Q(i), the Jordan algebra of 3×3 octonionic
//! Hermitian matrices, and the models of G2/P1, F4/P4 and F4/P3.
//!
//! Multiplication is Cayley–Dickson doubling of the quaternions: writing
//! x = a + bℓ with a, b quaternions, (a + bℓ)(c + dℓ) = (ac − d̄b) + (da + bc̄)ℓ.
//! The basis is 1, ε₁ = i, ε₂ = j, ε₃ = k, ε₄ = ℓ, ε₅ = iℓ, ε₆ = jℓ, ε₇ = kℓ,
//! so ε₁ε₂ = ε₃.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::field::{nullspace, q, q_to_string, qf, Dual, Field, Q};
use crate::prolong::{param_dimension_probe, random_q, ProbeReport};
use crate::{Error, Result};

/// Gaussian rationals a + bi.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CplxRat {
    pub re: Q,
    pub im: Q,
}

impl CplxRat {
    pub fn new(re: Q, im: Q) -> Self {
        CplxRat { re, im }
    }
    pub fn real(re: Q) -> Self {
        CplxRat { re, im: q(0) }
    }
    pub fn i() -> Self {
        CplxRat { re: q(0), im: q(1) }
    }
    pub fn conj(&self) -> Self {
        CplxRat { re: self.re.clone(), im: -self.im.clone() }
    }
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        CplxRat { re: random_q(rng), im: random_q(rng) }
    }
    /// Gaussian integer with parts in [-3, 3].
    pub fn random_small<R: Rng>(rng: &mut R) -> Self {
        CplxRat { re: q(rng.gen_range(-3..=3)), im: q(rng.gen_range(-3..=3)) }
    }
}

impl fmt::Display for CplxRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zero = q(0);
        match (self.re == zero, self.im == zero) {
            (_, true) => write!(f, "{}", q_to_string(&self.re)),
            (true, false) => write!(f, "{}i", q_to_string(&self.im)),
            _ => {
                let sign = if self.im < zero { "-" } else { "+" };
                let im = if self.im < zero { -self.im.clone() } else { self.im.clone() };
                write!(f, "{}{}{}i", q_to_string(&self.re), sign, q_to_string(&im))
            }
        }
    }
}

impl Add for CplxRat {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        CplxRat::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for CplxRat {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        CplxRat::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for CplxRat {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        CplxRat::new(re, im)
    }
}

impl Div for CplxRat {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let n = &o.re * &o.re + &o.im * &o.im;
        let p = self * o.conj();
        CplxRat::new(p.re / &n, p.im / n)
    }
}

impl Neg for CplxRat {
    type Output = Self;
    fn neg(self) -> Self {
        CplxRat::new(-self.re, -self.im)
    }
}

impl Field for CplxRat {
    fn zero() -> Self {
        CplxRat::real(q(0))
    }
    fn one() -> Self {
        CplxRat::real(q(1))
    }
    fn is_zero(&self) -> bool {
        self.re == q(0) && self.im == q(0)
    }
    fn from_q(x: Q) -> Self {
        CplxRat::real(x)
    }
}

pub type C = CplxRat;

fn qmul<F: Field>(a: &[F], b: &[F]) -> [F; 4] {
    let m = |x: usize, y: usize| a[x].clone() * b[y].clone();
    [
        m(0, 0) - m(1, 1) - m(2, 2) - m(3, 3),
        m(0, 1) + m(1, 0) + m(2, 3) - m(3, 2),
        m(0, 2) - m(1, 3) + m(2, 0) + m(3, 1),
        m(0, 3) + m(1, 2) - m(2, 1) + m(3, 0),
    ]
}

fn qconj<F: Field>(a: &[F]) -> [F; 4] {
    [a[0].clone(), -a[1].clone(), -a[2].clone(), -a[3].clone()]
}

/// Octonion with coordinates on 1, ε₁, …, ε₇.
#[derive(Clone, Debug, PartialEq)]
pub struct Oct<F> {
    pub c: [F; 8],
}

pub type Octonion = Oct<C>;

impl<F: Field> Oct<F> {
    pub fn zero() -> Self {
        Oct { c: std::array::from_fn(|_| F::zero()) }
    }
    pub fn scalar(x: F) -> Self {
        let mut o = Self::zero();
        o.c[0] = x;
        o
    }
    pub fn unit(k: usize) -> Self {
        let mut o = Self::zero();
        o.c[k] = F::one();
        o
    }
    pub fn from_coords(v: &[F]) -> Self {
        Oct { c: std::array::from_fn(|k| v[k].clone()) }
    }
    /// Imaginary octonion from seven coordinates.
    pub fn imaginary(v: &[F]) -> Self {
        Oct { c: std::array::from_fn(|k| if k == 0 { F::zero() } else { v[k - 1].clone() }) }
    }
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
    pub fn re(&self) -> F {
        self.c[0].clone()
    }
    pub fn is_imaginary(&self) -> bool {
        self.c[0].is_zero()
    }
    pub fn conj(&self) -> Self {
        Oct { c: std::array::from_fn(|k| if k == 0 { self.c[0].clone() } else { -self.c[k].clone() }) }
    }
    /// N(x) = x x̄ (complex bilinear).
    pub fn norm(&self) -> F {
        self.c.iter().fold(F::zero(), |s, x| s + x.clone() * x.clone())
    }
    /// Polarization of N: ⟨x, y⟩ = Re(x ȳ).
    pub fn inner(&self, o: &Self) -> F {
        self.c.iter().zip(&o.c).fold(F::zero(), |s, (x, y)| s + x.clone() * y.clone())
    }
    pub fn add(&self, o: &Self) -> Self {
        Oct { c: std::array::from_fn(|k| self.c[k].clone() + o.c[k].clone()) }
    }
    pub fn sub(&self, o: &Self) -> Self {
        Oct { c: std::array::from_fn(|k| self.c[k].clone() - o.c[k].clone()) }
    }
    pub fn scale(&self, s: &F) -> Self {
        Oct { c: std::array::from_fn(|k| s.clone() * self.c[k].clone()) }
    }
    pub fn mul(&self, o: &Self) -> Self {
        let (a, b) = self.c.split_at(4);
        let (cc, d) = o.c.split_at(4);
        let p1 = qmul(a, cc);
        let p2 = qmul(&qconj(d), b);
        let p3 = qmul(d, a);
        let p4 = qmul(b, &qconj(cc));
        Oct {
            c: std::array::from_fn(|k| {
                if k < 4 {
                    p1[k].clone() - p2[k].clone()
                } else {
                    p3[k - 4].clone() + p4[k - 4].clone()
                }
            }),
        }
    }
    pub fn lift<G: Field>(&self, f: impl Fn(&F) -> G) -> Oct<G> {
        Oct { c: std::array::from_fn(|k| f(&self.c[k])) }
    }
}

impl Octonion {
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        Oct { c: std::array::from_fn(|_| C::random(rng)) }
    }
    pub fn random_imaginary<R: Rng>(rng: &mut R) -> Self {
        let mut x = Self::random(rng);
        x.c[0] = C::zero();
        x
    }
}

impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let coef = if x.re != q(0) && x.im != q(0) { format!("({x})") } else { x.to_string() };
            parts.push(if k == 0 { coef } else { format!("{coef}e{k}") });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// The octonion product (alias of `Oct::mul`).
pub fn oct_mul<F: Field>(x: &Oct<F>, y: &Oct<F>) -> Oct<F> {
    x.mul(y)
}

/// 3×3 matrix with octonion entries.
pub type OctMatrix<F> = [[Oct<F>; 3]; 3];

/// Hermitian matrix ((r1, x̄3, x̄2), (x3, r2, x̄1), (x2, x1, r3)).
#[derive(Clone, Debug, PartialEq)]
pub struct HermOct3<F> {
    pub r: [F; 3],
    pub x: [Oct<F>; 3],
}

pub type Herm = HermOct3<C>;

impl<F: Field> HermOct3<F> {
    pub fn zero() -> Self {
        HermOct3 { r: std::array::from_fn(|_| F::zero()), x: std::array::from_fn(|_| Oct::zero()) }
    }
    pub fn diag(a: F, b: F, c: F) -> Self {
        HermOct3 { r: [a, b, c], x: std::array::from_fn(|_| Oct::zero()) }
    }
    pub fn identity() -> Self {
        Self::diag(F::one(), F::one(), F::one())
    }
    pub fn matrix(&self) -> OctMatrix<F> {
        let s = |i: usize| Oct::scalar(self.r[i].clone());
        let [x1, x2, x3] = &self.x;
        [[s(0), x3.conj(), x2.conj()], [x3.clone(), s(1), x1.conj()], [x2.clone(), x1.clone(), s(2)]]
    }
    /// Reads a Hermitian matrix back; fails when it is not Hermitian.
    pub fn from_matrix(m: &OctMatrix<F>) -> Option<Self> {
        for i in 0..3 {
            if m[i][i].c[1..].iter().any(|x| !x.is_zero()) {
                return None;
            }
            for j in 0..3 {
                if m[i][j] != m[j][i].conj() {
                    return None;
                }
            }
        }
        Some(HermOct3 { r: std::array::from_fn(|i| m[i][i].c[0].clone()), x: [m[2][1].clone(), m[2][0].clone(), m[1][0].clone()] })
    }
    pub fn trace(&self) -> F {
        self.r[0].clone() + self.r[1].clone() + self.r[2].clone()
    }
    pub fn is_zero(&self) -> bool {
        self.r.iter().all(|x| x.is_zero()) && self.x.iter().all(|x| x.is_zero())
    }
    pub fn add(&self, o: &Self) -> Self {
        HermOct3 {
            r: std::array::from_fn(|i| self.r[i].clone() + o.r[i].clone()),
            x: std::array::from_fn(|i| self.x[i].add(&o.x[i])),
        }
    }
    pub fn scale(&self, s: &F) -> Self {
        HermOct3 { r: std::array::from_fn(|i| s.clone() * self.r[i].clone()), x: std::array::from_fn(|i| self.x[i].scale(s)) }
    }
    /// Coordinates (r1, r2, r3, x1, x2, x3), 27 entries.
    pub fn coords(&self) -> Vec<F> {
        let mut v: Vec<F> = self.r.to_vec();
        for x in &self.x {
            v.extend(x.c.iter().cloned());
        }
        v
    }
    pub fn from_coords(v: &[F]) -> Self {
        HermOct3 {
            r: std::array::from_fn(|i| v[i].clone()),
            x: std::array::from_fn(|i| Oct::from_coords(&v[3 + 8 * i..11 + 8 * i])),
        }
    }
    /// Basis of the traceless part: E11 − E33, E22 − E33, then the 24 octonion units.
    pub fn traceless_basis() -> Vec<Self> {
        let mut out = Vec::new();
        for i in 0..2 {
            let mut v = vec![F::zero(); 27];
            v[i] = F::one();
            v[2] = -F::one();
            out.push(Self::from_coords(&v));
        }
        for k in 3..27 {
            let mut v = vec![F::zero(); 27];
            v[k] = F::one();
            out.push(Self::from_coords(&v));
        }
        out
    }
}

impl Herm {
    /// A ↦ gAgᵀ for a rational 3×3 matrix g.
    pub fn conjugate_by(&self, g: &[[Q; 3]; 3]) -> Herm {
        let m = self.matrix();
        let mut out: OctMatrix<C> = std::array::from_fn(|_| std::array::from_fn(|_| Oct::zero()));
        for a in 0..3 {
            for b in 0..3 {
                let mut s = Oct::zero();
                for c in 0..3 {
                    for d in 0..3 {
                        let f = C::real(&g[a][c] * &g[b][d]);
                        if !f.is_zero() {
                            s = s.add(&m[c][d].scale(&f));
                        }
                    }
                }
                out[a][b] = s;
            }
        }
        Herm::from_matrix(&out).expect("congruence preserves hermitian matrices")
    }

    pub fn base_point() -> Herm {
        let mut a = Herm::diag(C::i(), -C::i(), C::zero());
        a.x[2] = Oct::scalar(C::one());
        a
    }
}

pub fn matprod<F: Field>(a: &OctMatrix<F>, b: &OctMatrix<F>) -> OctMatrix<F> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..3).fold(Oct::zero(), |s, k| s.add(&a[i][k].mul(&b[k][j]))))
    })
}

fn mat_add<F: Field>(a: &OctMatrix<F>, b: &OctMatrix<F>) -> OctMatrix<F> {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j].add(&b[i][j])))
}

fn mat_is_zero<F: Field>(a: &OctMatrix<F>) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

/// A∘B = ½(AB + BA).
pub fn jordan<F: Field>(a: &HermOct3<F>, b: &HermOct3<F>) -> HermOct3<F> {
    let (ma, mb) = (a.matrix(), b.matrix());
    let s = mat_add(&matprod(&ma, &mb), &matprod(&mb, &ma));
    let half = F::from_q(qf(1, 2));
    let h = HermOct3::from_matrix(&s).expect("jordan product of hermitian matrices");
    h.scale(&half)
}

/// det A = tr(A)³/6 − tr(A)tr(A²)/2 + tr(A³)/3.
pub fn det<F: Field>(a: &HermOct3<F>) -> F {
    let a2 = jordan(a, a);
    let a3 = jordan(a, &a2);
    let t = a.trace();
    let c = |n: i64, d: i64| F::from_q(qf(n, d));
    c(1, 6) * t.clone() * t.clone() * t.clone() - c(1, 2) * t * a2.trace() + c(1, 3) * a3.trace()
}

/// r1r2r3 − r1N(x1) − r2N(x2) − r3N(x3) + 2Re(x̄1x2x̄3): the same cubic expanded in entries.
pub fn det_expanded<F: Field>(a: &HermOct3<F>) -> F {
    let [r1, r2, r3] = a.r.clone();
    let [x1, x2, x3] = &a.x;
    let two = F::from_q(q(2));
    r1.clone() * r2.clone() * r3.clone() - r1 * x1.norm() - r2 * x2.norm() - r3 * x3.norm()
        + two * x1.conj().mul(x2).mul(&x3.conj()).re()
}

/// [A] ∈ OP²₀ iff A∘A = 0 (A ≠ 0).
pub fn is_op2_0_point<F: Field>(a: &HermOct3<F>) -> bool {
    !a.is_zero() && jordan(a, a).is_zero()
}

fn kernel_of<F: Field, M: Fn(&HermOct3<F>) -> Vec<F>>(map: M) -> Vec<HermOct3<F>> {
    let basis = HermOct3::<F>::traceless_basis();
    let cols: Vec<Vec<F>> = basis.iter().map(&map).collect();
    let rows = cols[0].len();
    let m: Vec<Vec<F>> = (0..rows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    nullspace(&m, basis.len())
        .into_iter()
        .map(|v| v.iter().zip(&basis).fold(HermOct3::zero(), |s, (c, b)| s.add(&b.scale(c))))
        .collect()
}

fn mat_coords<F: Field>(m: &OctMatrix<F>) -> Vec<F> {
    m.iter().flat_map(|r| r.iter().flat_map(|x| x.c.iter().cloned())).collect()
}

/// Bases of Ĥ = {B traceless : A∘B = 0} and Ĥ₁ = {B traceless : AB = 0}.
pub fn op2_0_tangents<F: Field>(a: &HermOct3<F>) -> Result<(Vec<HermOct3<F>>, Vec<HermOct3<F>>)> {
    if !is_op2_0_point(a) {
        return Err(Error::NotAPoint("A∘A ≠ 0".into()));
    }
    let t = kernel_of(|b| jordan(a, b).coords());
    let ma = a.matrix();
    let t1 = kernel_of(|b| mat_coords(&matprod(&ma, &b.matrix())));
    Ok((t, t1))
}

/// Whether every element of `sub` lies in span(`sup`).
pub fn herm_span_contains<F: Field>(sup: &[HermOct3<F>], sub: &[HermOct3<F>]) -> bool {
    let mut m: Vec<Vec<F>> = sup.iter().map(|h| h.coords()).collect();
    let r0 = crate::field::rank(&m, 27);
    m.extend(sub.iter().map(|h| h.coords()));
    crate::field::rank(&m, 27) == r0
}

/// [u] ∈ G2/P1 ⊂ P(Im O) iff u² = 0.
pub fn g2p1_membership<F: Field>(u: &Oct<F>) -> Result<bool> {
    if !u.is_imaginary() {
        return Err(Error::NotImaginary);
    }
    Ok(!u.is_zero() && u.mul(u).is_zero())
}

/// Kernel of v ↦ uv + vu on Im O.
pub fn g2p1_tangent<F: Field>(u: &Oct<F>) -> Result<Vec<Oct<F>>> {
    if !u.is_imaginary() {
        return Err(Error::NotImaginary);
    }
    let basis: Vec<Oct<F>> = (1..8).map(Oct::unit).collect();
    let cols: Vec<Vec<F>> = basis.iter().map(|v| u.mul(v).add(&v.mul(u)).c.to_vec()).collect();
    let m: Vec<Vec<F>> = (0..8).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    Ok(nullspace(&m, 7)
        .into_iter()
        .map(|v| v.iter().zip(&basis).fold(Oct::zero(), |s, (c, b)| s.add(&b.scale(c))))
        .collect())
}

/// (u, v) ∈ O ⊕ Im O lies in the cone over the base locus of FF² of OP²₀:
/// u ū = 0, v v̄ = 0, u v̄ = 0.
pub fn ff2_base_op2_0<F: Field>(u: &Oct<F>, v: &Oct<F>) -> Result<bool> {
    if !v.is_imaginary() {
        return Err(Error::NotImaginary);
    }
    Ok(u.norm().is_zero() && v.norm().is_zero() && u.mul(&v.conj()).is_zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineTest {
    pub general_line: bool,
    pub homogeneous_line: bool,
    pub degenerate: bool,
}

/// Line through [A], [B]: contained in OP²₀ iff A∘B = 0, F4-homogeneous iff AB = 0.
pub fn line_tests<F: Field>(a: &HermOct3<F>, b: &HermOct3<F>) -> Result<LineTest> {
    if !is_op2_0_point(a) || !is_op2_0_point(b) {
        return Err(Error::NotAPoint("both endpoints must satisfy A² = 0".into()));
    }
    let degenerate = crate::field::rank(&[a.coords(), b.coords()], 27) < 2;
    Ok(LineTest {
        general_line: jordan(a, b).is_zero(),
        homogeneous_line: mat_is_zero(&matprod(&a.matrix(), &b.matrix())),
        degenerate,
    })
}

/// Kernel of x ↦ v x on O.
pub fn left_kernel<F: Field>(v: &Oct<F>) -> Vec<Oct<F>> {
    let cols: Vec<Vec<F>> = (0..8).map(|k| v.mul(&Oct::unit(k)).c.to_vec()).collect();
    let m: Vec<Vec<F>> = (0..8).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    nullspace(&m, 8).into_iter().map(|v| Oct::from_coords(&v)).collect()
}

/// Rational rotation (I − K)(I + K)⁻¹ for K skew with entries a, b, c.
pub fn cayley_rotation(a: &Q, b: &Q, c: &Q) -> [[Q; 3]; 3] {
    let z = q(0);
    let k = [[z.clone(), -c.clone(), b.clone()], [c.clone(), z.clone(), -a.clone()], [-b.clone(), a.clone(), z.clone()]];
    let id = |i: usize, j: usize| if i == j { q(1) } else { q(0) };
    let plus: Vec<Vec<Q>> = (0..3).map(|i| (0..3).map(|j| id(i, j) + &k[i][j]).collect()).collect();
    let minus: Vec<Vec<Q>> = (0..3).map(|i| (0..3).map(|j| id(i, j) - &k[i][j]).collect()).collect();
    // inverse of I + K by solving for each column
    let inv_cols: Vec<Vec<Q>> =
        (0..3).map(|j| crate::field::solve(&plus, &(0..3).map(|i| id(i, j)).collect::<Vec<_>>()).unwrap()).collect();
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).fold(q(0), |s, t| s + &minus[i][t] * &inv_cols[j][t])))
}

pub fn random_rotation<R: Rng>(rng: &mut R) -> [[Q; 3]; 3] {
    cayley_rotation(&random_q(rng), &random_q(rng), &random_q(rng))
}

/// Null vector q(w)p − 2B(p, w)w on the quadric Σ x_k² = 0, for p isotropic.
fn null_from<F: Field>(p: &[F], w: &[F]) -> Vec<F> {
    let b = |x: &[F], y: &[F]| x.iter().zip(y).fold(F::zero(), |s, (a, c)| s + a.clone() * c.clone());
    let qw = b(w, w);
    let two = F::from_q(q(2));
    let bp = b(p, w);
    p.iter().zip(w).map(|(pi, wi)| qw.clone() * pi.clone() - two.clone() * bp.clone() * wi.clone()).collect()
}

fn p_null_imaginary<F: Field>(i: F) -> Vec<F> {
    // ε₁ + iε₂ in the seven imaginary coordinates
    let mut p = vec![F::zero(); 7];
    p[0] = F::one();
    p[1] = i;
    p
}

/// Random point of G2/P1: a null imaginary octonion.
pub fn random_g2p1_point<R: Rng>(rng: &mut R) -> Octonion {
    loop {
        let w: Vec<C> = (0..7).map(|_| C::random(rng)).collect();
        let u = Oct::imaginary(&null_from(&p_null_imaginary(C::i()), &w));
        if !u.is_zero() {
            return u;
        }
    }
}

/// Random point of OP²₀ on the SO₃ orbit of the base point: g A gᵀ for a
/// product of two random rational rotations.
pub fn random_op2_0_point<R: Rng>(rng: &mut R) -> Herm {
    Herm::base_point().conjugate_by(&random_rotation(rng)).conjugate_by(&random_rotation(rng))
}

/// Random rank-one traceless matrix v v* for v = (a, b, c), a scalar and
/// N(a) + N(b) + N(c) = 0. Off the SO₃ orbit the kernel of B ↦ AB drops.
pub fn random_rank_one_point<R: Rng>(rng: &mut R) -> Herm {
    loop {
        // coordinates (a, b₀..b₇, c₀..c₇); isotropic p: a = 1, b₀ = i
        let mut p = vec![C::zero(); 17];
        p[0] = C::one();
        p[1] = C::i();
        let w: Vec<C> = (0..17).map(|_| C::random_small(rng)).collect();
        let v = null_from(&p, &w);
        let a = Oct::scalar(v[0].clone());
        let b = Oct::from_coords(&v[1..9]);
        let c = Oct::from_coords(&v[9..17]);
        let e = [a, b, c];
        let m: OctMatrix<C> = std::array::from_fn(|i| std::array::from_fn(|j| e[i].mul(&e[j].conj())));
        let h = Herm::from_matrix(&m).expect("v v* is hermitian");
        if h.is_zero() {
            continue;
        }
        return h;
    }
}

/// Cone over Base|FF²| of OP²₀: (w, w') ↦ (w'·v, v) with v = null_from(ε₁ + iε₂, w).
/// Coordinates of the image: u (8) then v (7).
pub fn f4p4_base_map<F: Field>(i: F, x: &[F]) -> Vec<F> {
    let v = Oct::imaginary(&null_from(&p_null_imaginary(i), &x[..7]));
    let w = Oct::from_coords(&x[7..15]);
    let u = w.mul(&v);
    let mut out = u.c.to_vec();
    out.extend(v.c[1..].iter().cloned());
    out
}

/// Cone over Base|FF²| of F4/P3: (e, f, u) ↦ ((e × f) ⊗ u, e ⊗ u²) in E*⊗U ⊕ E⊗S²U.
pub fn f4p3_base_map<F: Field>(x: &[F]) -> Vec<F> {
    let (e, rest) = x.split_at(3);
    let (f, u) = rest.split_at(3);
    let m = |a: usize, b: usize| e[a].clone() * f[b].clone() - e[b].clone() * f[a].clone();
    let es = [m(1, 2), m(2, 0), m(0, 1)];
    let mut out = Vec::new();
    for a in &es {
        for b in u {
            out.push(a.clone() * b.clone());
        }
    }
    let u2 = [u[0].clone() * u[0].clone(), u[0].clone() * u[1].clone(), u[1].clone() * u[1].clone()];
    for a in e {
        for b in &u2 {
            out.push(a.clone() * b.clone());
        }
    }
    out
}

fn random_c_point<R: Rng>(rng: &mut R, n: usize) -> Vec<C> {
    (0..n).map(|_| C::random(rng)).collect()
}

pub fn probe_f4p4<R: Rng>(rng: &mut R) -> ProbeReport {
    let i = Dual::constant(C::i());
    param_dimension_probe(|x: &[Dual<C>]| f4p4_base_map(i.clone(), x), &random_c_point(rng, 15), &random_c_point(rng, 15))
}

pub fn probe_f4p3<R: Rng>(rng: &mut R) -> ProbeReport {
    let p1: Vec<Q> = (0..8).map(|_| random_q(rng)).collect();
    let p2: Vec<Q> = (0..8).map(|_| random_q(rng)).collect();
    param_dimension_probe(f4p3_base_map::<Dual<Q>>, &p1, &p2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: usize,
    pub total: usize,
}

impl Check {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

fn check(name: &str, results: impl IntoIterator<Item = bool>) -> Check {
    let mut passed = 0;
    let mut total = 0;
    for r in results {
        total += 1;
        passed += r as usize;
    }
    Check { name: name.into(), passed, total }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub checks: Vec<Check>,
    pub tangent_dims: (usize, usize),
    pub g2_tangent_dim: usize,
    pub left_kernel_dim: usize,
    pub probes: Vec<(String, ProbeReport)>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok())
            && self.tangent_dims == (16, 9)
            && self.g2_tangent_dim == 6
            && self.left_kernel_dim == 4
    }
}

/// Identities, model dimensions and base-locus probes on `samples` random draws.
pub fn verify_suite<R: Rng>(rng: &mut R, samples: usize, model_points: usize) -> SuiteReport {
    let pairs: Vec<(Octonion, Octonion)> = (0..samples).map(|_| (Octonion::random(rng), Octonion::random(rng))).collect();
    let mut checks = vec![
        check("left alternativity x(xy) = (xx)y", pairs.iter().map(|(x, y)| x.mul(&x.mul(y)) == x.mul(x).mul(y))),
        check("right alternativity (yx)x = y(xx)", pairs.iter().map(|(x, y)| y.mul(x).mul(x) == y.mul(&x.mul(x)))),
        check("N(xy) = N(x)N(y)", pairs.iter().map(|(x, y)| x.mul(y).norm() == x.norm() * y.norm())),
        check("x x̄ = N(x)", pairs.iter().map(|(x, _)| x.mul(&x.conj()) == Oct::scalar(x.norm()))),
        check("conjugation reverses products", pairs.iter().map(|(x, y)| x.mul(y).conj() == y.conj().mul(&x.conj()))),
        check(
            "u² = −N(u) on Im O",
            (0..samples).map(|_| {
                let u = Octonion::random_imaginary(rng);
                u.mul(&u) == Oct::scalar(-u.norm())
            }),
        ),
    ];
    let e1e2 = Octonion::unit(1).mul(&Octonion::unit(2)) == Octonion::unit(3);
    checks.push(check("e1 e2 = e3", [e1e2]));

    let nulls: Vec<Octonion> = (0..model_points).map(|_| random_g2p1_point(rng)).collect();
    checks.push(check("left kernel of a null octonion has dim 4", nulls.iter().map(|v| left_kernel(v).len() == 4)));
    checks.push(check("G2/P1 points: u² = 0 and tangent dim 6", nulls.iter().map(|u| {
        g2p1_membership(u).unwrap() && g2p1_tangent(u).unwrap().len() == 6
    })));
    checks.push(check(
        "uv + vu = 0 iff Re(uv) = 0 on Im O",
        (0..samples.div_ceil(5)).map(|t| {
            let u = &nulls[t % nulls.len()];
            let v = Octonion::random_imaginary(rng);
            let t = g2p1_tangent(u).unwrap();
            let w = t.iter().fold(Oct::zero(), |s, x| s.add(&x.scale(&C::random(rng))));
            let sym = u.mul(&v).add(&v.mul(u));
            sym.is_zero() == u.mul(&v).re().is_zero() && u.mul(&w).re().is_zero()
        }),
    ));

    let a = Herm::base_point();
    let (t, t1) = op2_0_tangents(&a).unwrap();
    let tangent_dims = (t.len(), t1.len());
    checks.push(check("base point: A² = 0", [is_op2_0_point(&a)]));
    checks.push(check("T1 ⊆ T and A ∈ T1", [herm_span_contains(&t, &t1), herm_span_contains(&t1, std::slice::from_ref(&a))]));
    let points: Vec<Herm> = (0..model_points).map(|_| random_op2_0_point(rng)).collect();
    checks.push(check(
        "random OP²₀ points: A² = 0, det = 0, tangent dims (16, 9)",
        points.iter().map(|p| {
            let ok = is_op2_0_point(p) && det(p).is_zero();
            ok && op2_0_tangents(p).map(|(t, t1)| (t.len(), t1.len()) == (16, 9)).unwrap_or(false)
        }),
    ));
    checks.push(check(
        "rank-one traceless points: A² = 0, det = 0, dim T = 16",
        (0..model_points).map(|_| {
            let p = random_rank_one_point(rng);
            is_op2_0_point(&p) && det(&p).is_zero() && op2_0_tangents(&p).map(|(t, _)| t.len() == 16).unwrap_or(false)
        }),
    ));
    checks.push(check(
        "det trace formula agrees with the entry expansion",
        (0..samples / 10).map(|_| {
            let h = Herm::from_coords(&(0..27).map(|_| C::random(rng)).collect::<Vec<_>>());
            det(&h) == det_expanded(&h)
        }),
    ));

    checks.push(check(
        "base locus samples satisfy u ū = v v̄ = u v̄ = 0",
        (0..model_points).map(|_| {
            let x = random_c_point(rng, 15);
            let y = f4p4_base_map(C::i(), &x);
            let u = Oct::from_coords(&y[..8]);
            let v = Oct::imaginary(&y[8..]);
            ff2_base_op2_0(&u, &v).unwrap()
        }),
    ));

    let probes = vec![("F4/P4".to_string(), probe_f4p4(rng)), ("F4/P3".to_string(), probe_f4p3(rng))];
    SuiteReport {
        checks,
        tangent_dims,
        g2_tangent_dim: g2p1_tangent(&nulls[0]).unwrap().len(),
        left_kernel_dim: left_kernel(&nulls[0]).len(),
        probes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn e(k: usize) -> Octonion {
        Octonion::unit(k)
    }

    #[test]
    fn table() {
        assert_eq!(e(1).mul(&e(2)), e(3));
        assert_eq!(e(2).mul(&e(1)), e(3).scale(&-C::one()));
        for k in 1..8 {
            assert_eq!(e(k).mul(&e(k)), Oct::scalar(-C::one()));
            assert_eq!(e(0).mul(&e(k)), e(k));
        }
        // not associative
        let l = e(1).mul(&e(2)).mul(&e(4));
        let r = e(1).mul(&e(2).mul(&e(4)));
        assert_eq!(l, r.scale(&-C::one()));
    }

    #[test]
    fn g2_model() {
        let u = e(1).add(&e(2).scale(&C::i()));
        assert!(g2p1_membership(&u).unwrap());
        assert_eq!(g2p1_tangent(&u).unwrap().len(), 6);
        assert!(!g2p1_membership(&e(1)).unwrap());
        assert_eq!(g2p1_membership(&e(0)), Err(Error::NotImaginary));
        assert_eq!(left_kernel(&u).len(), 4);
    }

    #[test]
    fn jordan_model() {
        let id = Herm::identity();
        assert_eq!(det(&id), C::one());
        let d = Herm::diag(C::real(q(2)), C::real(q(3)), C::real(q(5)));
        assert_eq!(det(&d), C::real(q(30)));
        let a = Herm::base_point();
        assert!(is_op2_0_point(&a));
        assert_eq!(det(&a), C::zero());
        assert!(!is_op2_0_point(&id));
        let (t, t1) = op2_0_tangents(&a).unwrap();
        assert_eq!((t.len(), t1.len()), (16, 9));
        assert!(herm_span_contains(&t, &t1));
        assert!(matches!(op2_0_tangents(&id), Err(Error::NotAPoint(_))));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let g = random_rotation(&mut rng);
            assert!(is_op2_0_point(&a.conjugate_by(&g)));
        }
    }

    #[test]
    fn lines() {
        let a = Herm::base_point();
        let n = e(1).add(&e(2).scale(&C::i()));
        // homogeneous: B with x2 = i n, x1 = n
        let mut b = Herm::zero();
        b.x[0] = n.clone();
        b.x[1] = n.scale(&C::i());
        assert!(is_op2_0_point(&b));
        let t = line_tests(&a, &b).unwrap();
        assert!(t.general_line && t.homogeneous_line && !t.degenerate);
        // general only: x3 = n in the (1, 2) block
        let mut c = Herm::zero();
        c.x[2] = n.clone();
        assert!(is_op2_0_point(&c));
        let t = line_tests(&a, &c).unwrap();
        assert!(t.general_line && !t.homogeneous_line);
        assert!(line_tests(&a, &a).unwrap().degenerate);
    }

    #[test]
    fn base_locus() {
        let n = e(1).add(&e(2).scale(&C::i()));
        assert!(ff2_base_op2_0(&n, &Oct::zero()).unwrap());
        assert!(ff2_base_op2_0(&Oct::zero(), &n).unwrap());
        assert!(!ff2_base_op2_0(&e(0), &Oct::zero()).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let r = probe_f4p4(&mut rng);
        assert_eq!((r.rank, r.projective_dim), (10, 9));
        let r = probe_f4p3(&mut rng);
        assert_eq!((r.rank, r.projective_dim), (6, 5));
    }

    #[test]
    fn suite() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = verify_suite(&mut rng, 50, 3);
        for c in &r.checks {
            assert!(c.ok(), "{c:?}");
        }
        assert!(r.ok());
    }
}
