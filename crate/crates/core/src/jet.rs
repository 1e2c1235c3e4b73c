//! Truncated bivariate Taylor arithmetic over the complex numbers.
//!
//! A [`Jet`] carries the Taylor coefficients of a function of two coordinates
//! up to total degree [`MAX_ORDER`]. Arithmetic and elementary functions
//! propagate all coefficients exactly (up to rounding), so first and second
//! partial derivatives come out without finite differencing.
//!
//! Each jet also records the highest degree whose coefficients are still
//! exact. Differentiating a jet lowers that degree by one, which lets
//! vector-field brackets be nested (the Jacobi identity needs two levels)
//! without silently reading truncated coefficients.
//!
//! The same type serves holomorphic functions of one complex variable: seed
//! variable 0 with a complex value and the propagated coefficients are the
//! complex derivatives.

use num_complex::Complex64;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

/// Highest total degree tracked.
pub const MAX_ORDER: usize = 3;

const LEN: usize = (MAX_ORDER + 1) * (MAX_ORDER + 2) / 2;
const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

const fn slot(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

const fn factorial(n: usize) -> f64 {
    let mut acc = 1.0;
    let mut k = 2;
    while k <= n {
        acc *= k as f64;
        k += 1;
    }
    acc
}

#[derive(Clone, Copy, PartialEq)]
pub struct Jet {
    coeffs: [Complex64; LEN],
    order: usize,
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Jet(order {}; {:?}", self.order, self.value())?;
        if self.order >= 1 {
            write!(f, ", d0 {:?}, d1 {:?}", self.d(0), self.d(1))?;
        }
        write!(f, ")")
    }
}

impl Jet {
    pub fn constant(value: impl Into<Complex64>) -> Self {
        let mut coeffs = [ZERO; LEN];
        coeffs[0] = value.into();
        Self {
            coeffs,
            order: MAX_ORDER,
        }
    }

    pub fn zero() -> Self {
        Self::constant(ZERO)
    }

    /// Coordinate `k` (0 or 1) evaluated at `value`.
    pub fn variable(k: usize, value: impl Into<Complex64>) -> Self {
        assert!(k < 2, "jets carry two coordinates");
        let mut jet = Self::constant(value);
        jet.coeffs[if k == 0 { slot(1, 0) } else { slot(0, 1) }] = ONE;
        jet
    }

    /// Both coordinate seeds at a point.
    pub fn seeds(point: [Complex64; 2]) -> [Jet; 2] {
        [Self::variable(0, point[0]), Self::variable(1, point[1])]
    }

    /// Seeds for a real point.
    pub fn real_seeds(y0: f64, y1: f64) -> [Jet; 2] {
        Self::seeds([Complex64::new(y0, 0.0), Complex64::new(y1, 0.0)])
    }

    pub fn value(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// Highest total degree whose coefficients are exact.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Mixed partial derivative of `i` steps in coordinate 0 and `j` in coordinate 1.
    ///
    /// Panics if the requested degree exceeds the jet's exact order.
    pub fn partial(&self, i: usize, j: usize) -> Complex64 {
        assert!(
            i + j <= self.order,
            "partial of degree {} requested from a jet exact to degree {}",
            i + j,
            self.order
        );
        self.coeffs[slot(i, j)] * factorial(i) * factorial(j)
    }

    /// First partial derivative along coordinate `k`.
    pub fn d(&self, k: usize) -> Complex64 {
        match k {
            0 => self.partial(1, 0),
            _ => self.partial(0, 1),
        }
    }

    /// Second partial derivative along coordinates `k` and `l`.
    pub fn d2(&self, k: usize, l: usize) -> Complex64 {
        match (k, l) {
            (0, 0) => self.partial(2, 0),
            (1, 1) => self.partial(0, 2),
            _ => self.partial(1, 1),
        }
    }

    /// The jet of the partial derivative along coordinate `k`; exact to one degree less.
    pub fn derivative(&self, k: usize) -> Jet {
        assert!(self.order >= 1, "cannot differentiate a jet of order 0");
        let mut coeffs = [ZERO; LEN];
        for d in 0..MAX_ORDER {
            for j in 0..=d {
                let i = d - j;
                coeffs[slot(i, j)] = if k == 0 {
                    self.coeffs[slot(i + 1, j)] * (i + 1) as f64
                } else {
                    self.coeffs[slot(i, j + 1)] * (j + 1) as f64
                };
            }
        }
        Jet {
            coeffs,
            order: self.order - 1,
        }
    }

    pub fn scale(&self, factor: impl Into<Complex64>) -> Jet {
        let factor = factor.into();
        let mut out = *self;
        out.coeffs.iter_mut().for_each(|c| *c *= factor);
        out
    }

    /// Composes a univariate function, given by its Taylor coefficients at
    /// `self.value()`, with this jet.
    fn compose(&self, taylor: [Complex64; MAX_ORDER + 1]) -> Jet {
        let mut h = *self;
        h.coeffs[0] = ZERO;
        let mut acc = Jet::constant(taylor[MAX_ORDER]);
        for k in (0..MAX_ORDER).rev() {
            acc = acc * h + taylor[k];
        }
        acc.order = self.order;
        acc
    }

    pub fn exp(&self) -> Jet {
        let e = self.value().exp();
        self.compose(std::array::from_fn(|k| e / factorial(k)))
    }

    /// Principal-branch logarithm.
    pub fn ln(&self) -> Jet {
        let u = self.value();
        self.compose(std::array::from_fn(|k| {
            if k == 0 {
                u.ln()
            } else {
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                sign / (u.powi(k as i32) * k as f64)
            }
        }))
    }

    pub fn recip(&self) -> Jet {
        let u = self.value();
        self.compose(std::array::from_fn(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign / u.powi(k as i32 + 1)
        }))
    }

    pub fn sin(&self) -> Jet {
        let (s, c) = (self.value().sin(), self.value().cos());
        let cycle = [s, c, -s, -c];
        self.compose(std::array::from_fn(|k| cycle[k % 4] / factorial(k)))
    }

    pub fn cos(&self) -> Jet {
        let (s, c) = (self.value().sin(), self.value().cos());
        let cycle = [c, -s, -c, s];
        self.compose(std::array::from_fn(|k| cycle[k % 4] / factorial(k)))
    }

    pub fn tan(&self) -> Jet {
        self.sin() * self.cos().recip()
    }

    /// `self^exponent` on the principal branch, `exp(exponent * ln self)`.
    pub fn powc(&self, exponent: Complex64) -> Jet {
        if exponent == ZERO {
            let mut one = Jet::constant(ONE);
            one.order = self.order;
            return one;
        }
        (self.ln() * exponent).exp()
    }

    /// Integer power by repeated multiplication; valid at zero.
    pub fn powi(&self, n: u32) -> Jet {
        let mut acc = Jet::constant(ONE);
        acc.order = self.order;
        for _ in 0..n {
            acc = acc * *self;
        }
        acc
    }

    pub fn sqrt(&self) -> Jet {
        self.powc(Complex64::new(0.5, 0.0))
    }

    /// Real parts of all coefficients.
    pub fn re(&self) -> Jet {
        let mut out = *self;
        out.coeffs.iter_mut().for_each(|c| *c = Complex64::new(c.re, 0.0));
        out
    }

    /// Largest coefficient modulus among the exact degrees.
    pub fn max_norm(&self) -> f64 {
        let mut best: f64 = 0.0;
        for d in 0..=self.order {
            for j in 0..=d {
                best = best.max(self.coeffs[slot(d - j, j)].norm());
            }
        }
        best
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        let mut coeffs = self.coeffs;
        coeffs.iter_mut().zip(rhs.coeffs).for_each(|(a, b)| *a += b);
        Jet {
            coeffs,
            order: self.order.min(rhs.order),
        }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        self + (-rhs)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let mut coeffs = [ZERO; LEN];
        for da in 0..=MAX_ORDER {
            for ja in 0..=da {
                let a = self.coeffs[slot(da - ja, ja)];
                if a == ZERO {
                    continue;
                }
                for db in 0..=(MAX_ORDER - da) {
                    for jb in 0..=db {
                        let ib = db - jb;
                        coeffs[slot(da - ja + ib, ja + jb)] += a * rhs.coeffs[slot(ib, jb)];
                    }
                }
            }
        }
        Jet {
            coeffs,
            order: self.order.min(rhs.order),
        }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, rhs: Jet) -> Jet {
        self * rhs.recip()
    }
}

impl AddAssign for Jet {
    fn add_assign(&mut self, rhs: Jet) {
        *self = *self + rhs;
    }
}

impl SubAssign for Jet {
    fn sub_assign(&mut self, rhs: Jet) {
        *self = *self - rhs;
    }
}

impl Add<Complex64> for Jet {
    type Output = Jet;
    fn add(mut self, rhs: Complex64) -> Jet {
        self.coeffs[0] += rhs;
        self
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(self, rhs: f64) -> Jet {
        self + Complex64::new(rhs, 0.0)
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(self, rhs: f64) -> Jet {
        self + Complex64::new(-rhs, 0.0)
    }
}

impl Mul<Complex64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: Complex64) -> Jet {
        self.scale(rhs)
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(rhs)
    }
}

impl Mul<Jet> for f64 {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        rhs.scale(self)
    }
}

impl Mul<Jet> for Complex64 {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        rhs.scale(self)
    }
}
