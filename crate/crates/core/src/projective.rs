//! 2×2 spin matrices over the real, complex and bicomplex rings, their
//! fractional-linear action on the projective line, one-parameter
//! subgroups, and the Hopf map S³ → S².

use crate::algebra::{
    structure_table, AlgebraError, GeneratorId, LieRealization, Realization, SignLedger,
    VectorField,
};
use crate::bicomplex::{Bicomplex, HopfTriple};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

/// Denominators smaller than this, relative to the size of their terms, count as poles.
pub const POLE_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProjectiveError {
    #[error("the {ring} ring does not provide generator {generator}")]
    Unsupported { generator: GeneratorId, ring: Ring },
    #[error("{0} has no closed-form exponential")]
    NoClosedForm(GeneratorId),
    #[error("denominator vanishes: the point is mapped to infinity")]
    Pole,
    #[error("denominator is a zero divisor: pole on a null line")]
    NullLinePole,
    #[error("both homogeneous components are zero")]
    ZeroVector,
    #[error("component {0} is zero: the point lies in a single chart")]
    SingleChart(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Real,
    Complex,
    Bicomplex,
}

impl Ring {
    pub const ALL: [Ring; 3] = [Ring::Real, Ring::Complex, Ring::Bicomplex];

    pub fn name(&self) -> &'static str {
        match self {
            Ring::Real => "real",
            Ring::Complex => "complex",
            Ring::Bicomplex => "bicomplex",
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Why a ring element could not be inverted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Singular {
    Zero,
    ZeroDivisor,
}

pub trait SpinRing:
    Copy
    + fmt::Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const RING: Ring;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_real(x: f64) -> Self;
    fn exp(self) -> Self;
    fn norm(self) -> f64;
    /// Inverse, treating anything below `tol` as zero.
    fn invert(self, tol: f64) -> Result<Self, Singular>;
    /// The sl(2) generator matrix, if the ring carries `g`.
    fn generator(g: GeneratorId) -> Option<SpinMatrix<Self>>;
}

impl SpinRing for f64 {
    const RING: Ring = Ring::Real;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_real(x: f64) -> Self {
        x
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn norm(self) -> f64 {
        self.abs()
    }
    fn invert(self, tol: f64) -> Result<Self, Singular> {
        if self.abs() <= tol {
            Err(Singular::Zero)
        } else {
            Ok(1.0 / self)
        }
    }
    fn generator(g: GeneratorId) -> Option<SpinMatrix<Self>> {
        match g {
            GeneratorId::B => Some(SpinMatrix::new(0.5, 0.0, 0.0, -0.5)),
            GeneratorId::P0 => Some(SpinMatrix::new(0.0, 1.0, 0.0, 0.0)),
            GeneratorId::Q0 => Some(SpinMatrix::new(0.0, 0.0, -1.0, 0.0)),
            _ => None,
        }
    }
}

/// s01 = i b, p1 = i p0, q1 = −i q0 on top of the real matrices.
fn complexify<R: SpinRing>(g: GeneratorId, i: R, real: impl Fn(GeneratorId) -> SpinMatrix<R>) -> SpinMatrix<R> {
    match g {
        GeneratorId::S01 => real(GeneratorId::B).scale(i),
        GeneratorId::P1 => real(GeneratorId::P0).scale(i),
        GeneratorId::Q1 => real(GeneratorId::Q0).scale(-i),
        g => real(g),
    }
}

impl SpinRing for Complex64 {
    const RING: Ring = Ring::Complex;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn exp(self) -> Self {
        Complex64::exp(self)
    }
    fn norm(self) -> f64 {
        Complex64::norm(self)
    }
    fn invert(self, tol: f64) -> Result<Self, Singular> {
        if self.norm() <= tol {
            Err(Singular::Zero)
        } else {
            Ok(self.inv())
        }
    }
    fn generator(g: GeneratorId) -> Option<SpinMatrix<Self>> {
        let real = |g| f64::generator(g).expect("real generator").map(Complex64::from_real);
        Some(complexify(g, Complex64::i(), real))
    }
}

impl SpinRing for Bicomplex {
    const RING: Ring = Ring::Bicomplex;

    fn zero() -> Self {
        Bicomplex::ZERO
    }
    fn one() -> Self {
        Bicomplex::ONE
    }
    fn from_real(x: f64) -> Self {
        Bicomplex::from(x)
    }
    fn exp(self) -> Self {
        Bicomplex::exp(&self)
    }
    fn norm(self) -> f64 {
        self.squared_length().sqrt()
    }
    fn invert(self, tol: f64) -> Result<Self, Singular> {
        let (p, m) = self.idempotent_parts();
        match (p.norm() <= tol, m.norm() <= tol) {
            (true, true) => Err(Singular::Zero),
            (true, false) | (false, true) => Err(Singular::ZeroDivisor),
            _ => Ok(Bicomplex::from_idempotent_parts(p.inv(), m.inv())),
        }
    }
    fn generator(g: GeneratorId) -> Option<SpinMatrix<Self>> {
        let (o, ob) = Bicomplex::null_plane_units();
        let real = |g| match g {
            GeneratorId::B => SpinMatrix::new(Bicomplex::IJ.scale(0.5), Bicomplex::ZERO, Bicomplex::ZERO, Bicomplex::IJ.scale(-0.5)),
            GeneratorId::P0 => SpinMatrix::new(Bicomplex::ZERO, o, -ob, Bicomplex::ZERO),
            GeneratorId::Q0 => SpinMatrix::new(Bicomplex::ZERO, ob, -o, Bicomplex::ZERO),
            _ => unreachable!("complexify only asks for b, p0, q0"),
        };
        Some(complexify(g, Bicomplex::I, real))
    }
}

/// `((a, b), (c, d))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinMatrix<R> {
    pub a: R,
    pub b: R,
    pub c: R,
    pub d: R,
}

impl<R: SpinRing> SpinMatrix<R> {
    pub fn new(a: R, b: R, c: R, d: R) -> Self {
        Self { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::new(R::one(), R::zero(), R::zero(), R::one())
    }

    pub fn zero() -> Self {
        Self::new(R::zero(), R::zero(), R::zero(), R::zero())
    }

    pub fn entries(&self) -> [R; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn map<S>(&self, f: impl Fn(R) -> S) -> SpinMatrix<S> {
        SpinMatrix {
            a: f(self.a),
            b: f(self.b),
            c: f(self.c),
            d: f(self.d),
        }
    }

    pub fn scale(&self, k: R) -> Self {
        self.map(|x| k * x)
    }

    pub fn trace(&self) -> R {
        self.a + self.d
    }

    pub fn det(&self) -> R {
        self.a * self.d - self.b * self.c
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn is_diagonal(&self) -> bool {
        self.b == R::zero() && self.c == R::zero()
    }

    /// Largest entrywise distance.
    pub fn distance(&self, other: &Self) -> f64 {
        (*self - *other)
            .entries()
            .iter()
            .fold(0.0, |m, x| m.max(x.norm()))
    }

    pub fn max_norm(&self) -> f64 {
        self.entries().iter().fold(0.0, |m, x| m.max(x.norm()))
    }
}

impl<R: SpinRing> Add for SpinMatrix<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl<R: SpinRing> Sub for SpinMatrix<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl<R: SpinRing> Mul for SpinMatrix<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

pub fn matrix_rep<R: SpinRing>(g: GeneratorId) -> Result<SpinMatrix<R>, ProjectiveError> {
    R::generator(g).ok_or(ProjectiveError::Unsupported { generator: g, ring: R::RING })
}

/// The matrices of one ring as a realization of the algebra.
#[derive(Clone, Copy, Debug, Default)]
pub struct MatrixRing<R>(std::marker::PhantomData<R>);

impl<R> MatrixRing<R> {
    pub fn new() -> Self {
        Self(std::marker::PhantomData)
    }
}

impl<R: SpinRing> LieRealization for MatrixRing<R> {
    type Element = SpinMatrix<R>;

    fn label(&self) -> String {
        format!("{} matrices", R::RING)
    }

    fn generator(&self, g: GeneratorId) -> Option<Self::Element> {
        R::generator(g)
    }

    fn bracket(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        a.commutator(b)
    }

    fn combine(&self, terms: &[(f64, &Self::Element)]) -> Self::Element {
        terms
            .iter()
            .fold(SpinMatrix::zero(), |acc, (k, m)| acc + m.scale(R::from_real(*k)))
    }

    fn distance(&self, a: &Self::Element, b: &Self::Element) -> f64 {
        a.distance(b) / (1.0 + b.max_norm())
    }

    fn magnitude(&self, a: &Self::Element) -> f64 {
        a.max_norm()
    }
}

pub fn matrix_bracket_table(ring: Ring, tol: f64) -> Result<SignLedger, ProjectiveError> {
    Ok(match ring {
        Ring::Real => structure_table(&MatrixRing::<f64>::new(), tol)?,
        Ring::Complex => structure_table(&MatrixRing::<Complex64>::new(), tol)?,
        Ring::Bicomplex => structure_table(&MatrixRing::<Bicomplex>::new(), tol)?,
    })
}

/// υ ↦ (aυ + b)/(cυ + d).
pub fn mobius_apply<R: SpinRing>(m: &SpinMatrix<R>, u: R) -> Result<R, ProjectiveError> {
    let den = m.c * u + m.d;
    let scale = (m.c * u).norm() + m.d.norm();
    let inv = den.invert(POLE_TOL * scale).map_err(|s| match s {
        Singular::Zero => ProjectiveError::Pole,
        Singular::ZeroDivisor => ProjectiveError::NullLinePole,
    })?;
    Ok((m.a * u + m.b) * inv)
}

/// exp(ε M_g): componentwise for diagonal generators, I + εM for nilpotent ones.
pub fn exp_one_param<R: SpinRing>(g: GeneratorId, eps: f64) -> Result<SpinMatrix<R>, ProjectiveError> {
    let m = matrix_rep::<R>(g)?.scale(R::from_real(eps));
    if m.is_diagonal() {
        return Ok(SpinMatrix::new(m.a.exp(), R::zero(), R::zero(), m.d.exp()));
    }
    if (m * m).max_norm() == 0.0 {
        return Ok(SpinMatrix::identity() + m);
    }
    Err(ProjectiveError::NoClosedForm(g))
}

/// |exp(εM_g)·υ₀ − (υ₀ + ε X_g(υ₀))| in the complex ring, with X_g the υ-line field.
pub fn flow_consistency(g: GeneratorId, u0: Complex64, eps: f64) -> Result<f64, ProjectiveError> {
    let image = mobius_apply(&exp_one_param::<Complex64>(g, eps)?, u0)?;
    let field = VectorField::generator(g, Realization::UpsilonLine);
    let x = field.coefficients_at([u0, Complex64::new(0.0, 0.0)])[0];
    Ok((image - (u0 + eps * x)).norm())
}

/// defect(ε) / defect(ε/2); close to 4 for a second-order defect. NaN when both vanish.
pub fn richardson_ratio(g: GeneratorId, u0: Complex64, eps: f64) -> Result<f64, ProjectiveError> {
    Ok(flow_consistency(g, u0, eps)? / flow_consistency(g, u0, eps / 2.0)?)
}

/// A point of ℝ⁴ = ℂ², read as (ς1 + iς2, ς3 + iς4).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct S3Point {
    pub s: [f64; 4],
}

impl S3Point {
    pub fn new(s1: f64, s2: f64, s3: f64, s4: f64) -> Self {
        Self { s: [s1, s2, s3, s4] }
    }

    pub fn from_spinor(v1: Complex64, v2: Complex64) -> Self {
        Self::new(v1.re, v1.im, v2.re, v2.im)
    }

    pub fn spinor(&self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.s[0], self.s[1]),
            Complex64::new(self.s[2], self.s[3]),
        )
    }

    pub fn squared_length(&self) -> f64 {
        self.s.iter().map(|x| x * x).sum()
    }

    pub fn normalized(&self) -> Result<S3Point, ProjectiveError> {
        let n = self.squared_length().sqrt();
        if n == 0.0 || !n.is_finite() {
            return Err(ProjectiveError::ZeroVector);
        }
        Ok(Self { s: self.s.map(|x| x / n) })
    }

    /// Multiplies both complex components by e^{iλ}.
    pub fn fiber_rotate(&self, lambda: f64) -> S3Point {
        let (v1, v2) = self.spinor();
        let phase = Complex64::from_polar(1.0, lambda);
        Self::from_spinor(phase * v1, phase * v2)
    }

    pub fn to_bicomplex(&self) -> Bicomplex {
        Bicomplex::from_components(self.s)
    }
}

/// ξ₁ + iξ₂ = 2υ₁ῡ₂, ξ₃ = |υ₁|² − |υ₂|², without normalizing; |ξ| = |ς|².
pub fn hopf_map(p: &S3Point) -> HopfTriple {
    let [s1, s2, s3, s4] = p.s;
    HopfTriple {
        xi1: 2.0 * (s1 * s3 + s2 * s4),
        xi2: 2.0 * (s2 * s3 - s1 * s4),
        xi3: s1 * s1 + s2 * s2 - s3 * s3 - s4 * s4,
        len_sq: p.squared_length(),
    }
}

/// The Hopf map of the normalized point.
pub fn hopf(p: &S3Point) -> Result<HopfTriple, ProjectiveError> {
    Ok(hopf_map(&p.normalized()?))
}

/// A representative of the fiber over a point of S² (ξ₃ > −1), rotated by λ.
pub fn hopf_section(xi: [f64; 3], lambda: f64) -> Result<S3Point, ProjectiveError> {
    let top = ((1.0 + xi[2]) / 2.0).max(0.0).sqrt();
    if top <= POLE_TOL {
        return Err(ProjectiveError::Pole);
    }
    let v1 = Complex64::new(top, 0.0);
    let v2 = Complex64::new(xi[0], -xi[1]) / (2.0 * top);
    Ok(S3Point::from_spinor(v1, v2).fiber_rotate(lambda))
}

/// Homogeneous coordinates (υ1, υ2) of the projective line over a ring.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectivePoint<R> {
    pub v1: R,
    pub v2: R,
}

impl<R: SpinRing> ProjectivePoint<R> {
    pub fn new(v1: R, v2: R) -> Result<Self, ProjectiveError> {
        if v1 == R::zero() && v2 == R::zero() {
            return Err(ProjectiveError::ZeroVector);
        }
        Ok(Self { v1, v2 })
    }

    /// The same point, tested by υ1 w2 = υ2 w1.
    pub fn equivalent(&self, other: &Self, tol: f64) -> bool {
        let lhs = self.v1 * other.v2;
        let rhs = self.v2 * other.v1;
        (lhs - rhs).norm() <= tol * (1.0 + lhs.norm() + rhs.norm())
    }

    /// υ1/υ2 when υ2 is invertible.
    pub fn affine(&self) -> Option<R> {
        self.v2.invert(0.0).ok().map(|inv| self.v1 * inv)
    }

    pub fn transform(&self, m: &SpinMatrix<R>) -> Self {
        Self {
            v1: m.a * self.v1 + m.b * self.v2,
            v2: m.c * self.v1 + m.d * self.v2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartTransition {
    /// (υ1/υ2, 1)
    pub chart0: (Complex64, Complex64),
    /// (1, υ2/υ1)
    pub chart1: (Complex64, Complex64),
    /// (υ1/υ2)/|υ1/υ2|
    pub transition: Complex64,
}

pub fn chart_transition(p: &ProjectivePoint<Complex64>) -> Result<ChartTransition, ProjectiveError> {
    if p.v2.norm() == 0.0 {
        return Err(ProjectiveError::SingleChart(1));
    }
    if p.v1.norm() == 0.0 {
        return Err(ProjectiveError::SingleChart(0));
    }
    let one = Complex64::new(1.0, 0.0);
    let ratio = p.v1 / p.v2;
    Ok(ChartTransition {
        chart0: (ratio, one),
        chart1: (one, p.v2 / p.v1),
        transition: ratio / ratio.norm(),
    })
}
