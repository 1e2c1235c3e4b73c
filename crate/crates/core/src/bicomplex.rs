//! Commutative bicomplex numbers `a + i b + j c + ij d`.
//!
//! `i` and `j` are commuting square roots of −1, so `ij` squares to +1 and
//! the ring has zero divisors. The idempotents `e± = (1 ± ij)/2` split every
//! value into two ordinary complex numbers (in the unit `i`), which is how the
//! exponential and the inverse are computed.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

/// Absolute tolerance on components for identities that hold exactly in the ring.
pub const EXACT_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BicomplexError {
    #[error("{product} has a non-zero {component} component ({value:e})")]
    StructureViolation {
        product: &'static str,
        component: &'static str,
        value: f64,
    },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Bicomplex {
    pub re: f64,
    pub im_i: f64,
    pub im_j: f64,
    pub im_ij: f64,
}

impl Bicomplex {
    pub const ZERO: Bicomplex = Bicomplex::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Bicomplex = Bicomplex::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Bicomplex = Bicomplex::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Bicomplex = Bicomplex::new(0.0, 0.0, 1.0, 0.0);
    pub const IJ: Bicomplex = Bicomplex::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(re: f64, im_i: f64, im_j: f64, im_ij: f64) -> Self {
        Self {
            re,
            im_i,
            im_j,
            im_ij,
        }
    }

    pub fn from_components(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    pub fn components(&self) -> [f64; 4] {
        [self.re, self.im_i, self.im_j, self.im_ij]
    }

    /// `υ1 + j υ2` for two complex numbers in the unit `i`.
    pub fn from_pair(v1: Complex64, v2: Complex64) -> Self {
        Self::new(v1.re, v1.im, v2.re, v2.im)
    }

    /// Negates the `i` and `ij` components.
    pub fn conjugate(&self) -> Self {
        Self::new(self.re, -self.im_i, self.im_j, -self.im_ij)
    }

    /// Negates the `i` and `j` components.
    pub fn reverse(&self) -> Self {
        Self::new(self.re, -self.im_i, -self.im_j, self.im_ij)
    }

    /// Euclidean squared length of the four components.
    pub fn squared_length(&self) -> f64 {
        self.components().iter().map(|c| c * c).sum()
    }

    /// The null-plane units `(o, ō)` with `i = o − ō` and `j = o + ō`.
    pub fn null_plane_units() -> (Bicomplex, Bicomplex) {
        (
            Bicomplex::new(0.0, 0.5, 0.5, 0.0),
            Bicomplex::new(0.0, -0.5, 0.5, 0.0),
        )
    }

    /// Components `(z₊, z₋)` along `e₊ = (1 + ij)/2` and `e₋ = (1 − ij)/2`.
    pub fn idempotent_parts(&self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.re + self.im_ij, self.im_i - self.im_j),
            Complex64::new(self.re - self.im_ij, self.im_i + self.im_j),
        )
    }

    pub fn from_idempotent_parts(plus: Complex64, minus: Complex64) -> Self {
        let u = (plus + minus) * 0.5;
        let w = (plus - minus) * 0.5;
        Self::new(u.re, u.im, -w.im, w.re)
    }

    pub fn exp(&self) -> Self {
        let (p, m) = self.idempotent_parts();
        Self::from_idempotent_parts(p.exp(), m.exp())
    }

    /// The multiplicative inverse, if neither idempotent part vanishes.
    pub fn try_inverse(&self) -> Option<Self> {
        let (p, m) = self.idempotent_parts();
        if p.norm() == 0.0 || m.norm() == 0.0 {
            return None;
        }
        Some(Self::from_idempotent_parts(p.inv(), m.inv()))
    }

    pub fn scale(&self, f: f64) -> Self {
        Self::new(self.re * f, self.im_i * f, self.im_j * f, self.im_ij * f)
    }

    /// Largest absolute component difference.
    pub fn max_abs_diff(&self, other: &Bicomplex) -> f64 {
        (*self - *other)
            .components()
            .iter()
            .fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Extracts the Hopf base coordinates and squared length from
    /// `ς ς̄ = ξ₃ + j ξ₁` and `ς ς† = |ς|² − ij ξ₂`.
    pub fn involution_projections(&self) -> Result<HopfTriple, BicomplexError> {
        let conj = *self * self.conjugate();
        let rev = *self * self.reverse();
        let tol = EXACT_TOL * (1.0 + self.squared_length());
        for (component, value) in [("i", conj.im_i), ("ij", conj.im_ij)] {
            if value.abs() > tol {
                return Err(BicomplexError::StructureViolation {
                    product: "ς·conjugate(ς)",
                    component,
                    value,
                });
            }
        }
        for (component, value) in [("i", rev.im_i), ("j", rev.im_j)] {
            if value.abs() > tol {
                return Err(BicomplexError::StructureViolation {
                    product: "ς·reverse(ς)",
                    component,
                    value,
                });
            }
        }
        Ok(HopfTriple {
            xi1: conj.im_j,
            xi2: -rev.im_ij,
            xi3: conj.re,
            len_sq: rev.re,
        })
    }
}

impl From<f64> for Bicomplex {
    fn from(x: f64) -> Self {
        Self::new(x, 0.0, 0.0, 0.0)
    }
}

/// Embeds a complex number along the unit `i`.
impl From<Complex64> for Bicomplex {
    fn from(z: Complex64) -> Self {
        Self::new(z.re, z.im, 0.0, 0.0)
    }
}

impl Add for Bicomplex {
    type Output = Bicomplex;
    fn add(self, o: Bicomplex) -> Bicomplex {
        Bicomplex::new(
            self.re + o.re,
            self.im_i + o.im_i,
            self.im_j + o.im_j,
            self.im_ij + o.im_ij,
        )
    }
}

impl Sub for Bicomplex {
    type Output = Bicomplex;
    fn sub(self, o: Bicomplex) -> Bicomplex {
        self + (-o)
    }
}

impl Neg for Bicomplex {
    type Output = Bicomplex;
    fn neg(self) -> Bicomplex {
        self.scale(-1.0)
    }
}

impl Mul for Bicomplex {
    type Output = Bicomplex;
    fn mul(self, o: Bicomplex) -> Bicomplex {
        let (a1, b1, c1, d1) = (self.re, self.im_i, self.im_j, self.im_ij);
        let (a2, b2, c2, d2) = (o.re, o.im_i, o.im_j, o.im_ij);
        Bicomplex::new(
            a1 * a2 - b1 * b2 - c1 * c2 + d1 * d2,
            a1 * b2 + b1 * a2 - c1 * d2 - d1 * c2,
            a1 * c2 + c1 * a2 - b1 * d2 - d1 * b2,
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        )
    }
}

impl Mul<f64> for Bicomplex {
    type Output = Bicomplex;
    fn mul(self, f: f64) -> Bicomplex {
        self.scale(f)
    }
}

impl fmt::Display for Bicomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:+}i {:+}j {:+}ij",
            self.re, self.im_i, self.im_j, self.im_ij
        )
    }
}

/// Image of a point of ℝ⁴ under the Hopf map, with the squared length of the preimage.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HopfTriple {
    pub xi1: f64,
    pub xi2: f64,
    pub xi3: f64,
    pub len_sq: f64,
}

impl HopfTriple {
    pub fn xi(&self) -> [f64; 3] {
        [self.xi1, self.xi2, self.xi3]
    }

    pub fn norm(&self) -> f64 {
        (self.xi1 * self.xi1 + self.xi2 * self.xi2 + self.xi3 * self.xi3).sqrt()
    }
}
