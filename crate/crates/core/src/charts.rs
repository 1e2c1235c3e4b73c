//! Coordinate charts on the punctured plane.
//!
//! | chart        | coordinates | embedding x(y)              | valid region              |
//! |--------------|-------------|-----------------------------|---------------------------|
//! | cartesian    | (x₀, x₁)    | identity                    | ℝ²                        |
//! | polar        | (r, φ)      | r (cos φ, sin φ)            | r > 0, φ ∈ [0, 2π)        |
//! | holographic  | (θ, φ)      | sin θ (cos φ, sin φ)        | θ ∈ (0, π/2), φ ∈ [0, 2π) |
//! | conformal    | (ρ, φ)      | e^ρ (cos φ, sin φ)          | ρ ∈ ℝ, φ ∈ [0, 2π)        |
//!
//! The holographic chart only covers the open unit disk and its metric
//! degenerates on the boundary circle θ = π/2. Points closer than
//! [`BOUNDARY_GUARD`] to a boundary of the valid region are rejected.

use crate::jet::Jet;
use crate::sampling::{uniform, SampleRng};
use nalgebra::{Matrix2 as NaMatrix2, Vector2 as NaVector2};
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt;
use thiserror::Error;

pub type Matrix2 = NaMatrix2<f64>;
pub type Vector2 = NaVector2<f64>;

/// Minimum distance from a chart boundary (or pole) accepted by chart operations.
pub const BOUNDARY_GUARD: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChartError {
    #[error("{chart} chart: {reason}")]
    DomainViolation { chart: ChartId, reason: String },
    #[error("metric is singular at {0:?}")]
    SingularMetric(ChartPoint),
    #[error("special conformal map sends ({0}, {1}) to infinity")]
    PoleCrossing(f64, f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChartId {
    Cartesian,
    Polar,
    Holographic,
    Conformal,
}

impl ChartId {
    pub const ALL: [ChartId; 4] = [
        ChartId::Cartesian,
        ChartId::Polar,
        ChartId::Holographic,
        ChartId::Conformal,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ChartId::Cartesian => "cartesian",
            ChartId::Polar => "polar",
            ChartId::Holographic => "holographic",
            ChartId::Conformal => "conformal",
        }
    }

    pub fn coordinate_names(&self) -> [&'static str; 2] {
        match self {
            ChartId::Cartesian => ["x0", "x1"],
            ChartId::Polar => ["r", "phi"],
            ChartId::Holographic => ["theta", "phi"],
            ChartId::Conformal => ["rho", "phi"],
        }
    }

    /// A point of the chart's valid region, kept well inside it.
    ///
    /// Radii are drawn from [0.2, 3) (holographic: θ ∈ [0.1, 1.45)), angles from [0, 2π).
    pub fn sample(&self, rng: &mut SampleRng) -> ChartPoint {
        let phi = uniform(rng, 0.0, TAU);
        let (y0, y1) = match self {
            ChartId::Cartesian => {
                let r = uniform(rng, 0.2, 3.0);
                (r * phi.cos(), r * phi.sin())
            }
            ChartId::Polar => (uniform(rng, 0.2, 3.0), phi),
            ChartId::Holographic => (uniform(rng, 0.1, 1.45), phi),
            ChartId::Conformal => (uniform(rng, 0.2f64.ln(), 3.0f64.ln()), phi),
        };
        ChartPoint {
            chart: *self,
            y0,
            y1,
        }
    }
}

impl fmt::Display for ChartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartPoint {
    pub chart: ChartId,
    pub y0: f64,
    pub y1: f64,
}

impl ChartPoint {
    pub fn new(chart: ChartId, y0: f64, y1: f64) -> Result<Self, ChartError> {
        let p = Self { chart, y0, y1 };
        p.validate()?;
        Ok(p)
    }

    pub fn coords(&self) -> [f64; 2] {
        [self.y0, self.y1]
    }

    pub fn validate(&self) -> Result<(), ChartError> {
        let fail = |reason: String| {
            Err(ChartError::DomainViolation {
                chart: self.chart,
                reason,
            })
        };
        if !self.y0.is_finite() || !self.y1.is_finite() {
            return fail("non-finite coordinate".into());
        }
        if self.chart != ChartId::Cartesian && !(0.0..TAU).contains(&self.y1) {
            return fail(format!("phi = {} outside [0, 2π)", self.y1));
        }
        match self.chart {
            ChartId::Cartesian | ChartId::Conformal => Ok(()),
            ChartId::Polar if self.y0 <= BOUNDARY_GUARD => {
                fail(format!("r = {} not positive", self.y0))
            }
            ChartId::Holographic
                if self.y0 <= BOUNDARY_GUARD || self.y0 >= FRAC_PI_2 - BOUNDARY_GUARD =>
            {
                fail(format!("theta = {} outside (0, π/2)", self.y0))
            }
            _ => Ok(()),
        }
    }
}

/// The embedding x(y) evaluated on coordinate jets.
pub fn embedding_jets(chart: ChartId, y: &[Jet; 2]) -> [Jet; 2] {
    let [a, phi] = *y;
    let radius = match chart {
        ChartId::Cartesian => return *y,
        ChartId::Polar => a,
        ChartId::Holographic => a.sin(),
        ChartId::Conformal => a.exp(),
    };
    [radius * phi.cos(), radius * phi.sin()]
}

pub fn embed(p: &ChartPoint) -> Result<Vector2, ChartError> {
    p.validate()?;
    let x = embedding_jets(p.chart, &Jet::real_seeds(p.y0, p.y1));
    Ok(Vector2::new(x[0].value().re, x[1].value().re))
}

/// Angle of `x` in [0, 2π).
pub fn polar_angle(x: &Vector2) -> f64 {
    let a = x[1].atan2(x[0]);
    if a < 0.0 {
        let shifted = a + TAU;
        // a tiny negative angle rounds to exactly 2π
        if shifted >= TAU {
            0.0
        } else {
            shifted
        }
    } else {
        a
    }
}

/// Analytic inverse of [`embed`].
pub fn invert(chart: ChartId, x: &Vector2) -> Result<ChartPoint, ChartError> {
    let r = x.norm();
    let phi = polar_angle(x);
    let y0 = match chart {
        ChartId::Cartesian => return ChartPoint::new(chart, x[0], x[1]),
        ChartId::Polar => r,
        ChartId::Holographic => {
            if r >= 1.0 {
                return Err(ChartError::DomainViolation {
                    chart,
                    reason: format!("|x| = {r} outside the unit disk"),
                });
            }
            r.asin()
        }
        ChartId::Conformal => {
            if r <= BOUNDARY_GUARD {
                return Err(ChartError::DomainViolation {
                    chart,
                    reason: "origin has no scale coordinate".into(),
                });
            }
            r.ln()
        }
    };
    ChartPoint::new(chart, y0, phi)
}

/// Basis vectors ∂x/∂y₀ and ∂x/∂y₁, differentiated through the embedding.
pub fn basis(p: &ChartPoint) -> Result<(Vector2, Vector2), ChartError> {
    p.validate()?;
    let x = embedding_jets(p.chart, &Jet::real_seeds(p.y0, p.y1));
    let column = |k: usize| Vector2::new(x[0].d(k).re, x[1].d(k).re);
    Ok((column(0), column(1)))
}

/// Hand-derived basis vectors for each chart.
pub fn basis_closed_form(p: &ChartPoint) -> Result<(Vector2, Vector2), ChartError> {
    p.validate()?;
    let (s, c) = p.y1.sin_cos();
    Ok(match p.chart {
        ChartId::Cartesian => (Vector2::new(1.0, 0.0), Vector2::new(0.0, 1.0)),
        ChartId::Polar => {
            let r = p.y0;
            (Vector2::new(c, s), Vector2::new(-r * s, r * c))
        }
        ChartId::Holographic => {
            let (st, ct) = p.y0.sin_cos();
            (Vector2::new(ct * c, ct * s), Vector2::new(-st * s, st * c))
        }
        ChartId::Conformal => {
            let e = p.y0.exp();
            (Vector2::new(e * c, e * s), Vector2::new(-e * s, e * c))
        }
    })
}

/// A_μ^α = ∂x_μ/∂y_α, rows μ and columns α.
pub fn jacobian_lower(p: &ChartPoint) -> Result<Matrix2, ChartError> {
    let (b0, b1) = basis(p)?;
    Ok(Matrix2::from_columns(&[b0, b1]))
}

/// Gram matrix of the basis vectors.
pub fn metric(p: &ChartPoint) -> Result<Matrix2, ChartError> {
    let a = jacobian_lower(p)?;
    Ok(a.transpose() * a)
}

pub fn metric_closed_form(p: &ChartPoint) -> Result<Matrix2, ChartError> {
    p.validate()?;
    let (g0, g1) = match p.chart {
        ChartId::Cartesian => (1.0, 1.0),
        ChartId::Polar => (1.0, p.y0 * p.y0),
        ChartId::Holographic => (p.y0.cos().powi(2), p.y0.sin().powi(2)),
        ChartId::Conformal => {
            let e2 = (2.0 * p.y0).exp();
            (e2, e2)
        }
    };
    Ok(Matrix2::new(g0, 0.0, 0.0, g1))
}

/// A^μ_α: the lower Jacobian with its chart index lowered by the inverse metric.
pub fn jacobian_mixed(p: &ChartPoint) -> Result<Matrix2, ChartError> {
    let a = jacobian_lower(p)?;
    let g = a.transpose() * a;
    if g.determinant().abs() <= BOUNDARY_GUARD * BOUNDARY_GUARD {
        return Err(ChartError::SingularMetric(*p));
    }
    let g_inv = g.try_inverse().ok_or(ChartError::SingularMetric(*p))?;
    Ok(a * g_inv)
}

pub fn jacobian_mixed_closed_form(p: &ChartPoint) -> Result<Matrix2, ChartError> {
    p.validate()?;
    let (s, c) = p.y1.sin_cos();
    let (f0, f1) = match p.chart {
        ChartId::Cartesian => (1.0, 1.0),
        ChartId::Polar => (1.0, 1.0 / p.y0),
        ChartId::Holographic => (1.0 / p.y0.cos(), 1.0 / p.y0.sin()),
        ChartId::Conformal => {
            let e = (-p.y0).exp();
            (e, e)
        }
    };
    if p.chart == ChartId::Cartesian {
        return Ok(Matrix2::identity());
    }
    Ok(Matrix2::new(f0 * c, -f1 * s, f0 * s, f1 * c))
}

/// Null vector of ℝ^{3,1} with signature (+, +, +, −).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConformalVector {
    pub u0: f64,
    pub u1: f64,
    pub u2: f64,
    pub u3: f64,
}

impl ConformalVector {
    pub fn components(&self) -> [f64; 4] {
        [self.u0, self.u1, self.u2, self.u3]
    }

    /// u₀² + u₁² + u₂² − u₃².
    pub fn minkowski_square(&self) -> f64 {
        self.u0 * self.u0 + self.u1 * self.u1 + self.u2 * self.u2 - self.u3 * self.u3
    }
}

/// Lifts a point of the plane onto the null cone; `rescaled` normalizes u₃ to 1,
/// which puts the first three components on the unit sphere.
pub fn compactify(x0: f64, x1: f64, rescaled: bool) -> ConformalVector {
    let x2 = x0 * x0 + x1 * x1;
    let raw = ConformalVector {
        u0: x0,
        u1: x1,
        u2: (1.0 - x2) / 2.0,
        u3: (1.0 + x2) / 2.0,
    };
    if !rescaled {
        return raw;
    }
    let k = 2.0 / (1.0 + x2);
    ConformalVector {
        u0: k * raw.u0,
        u1: k * raw.u1,
        u2: k * raw.u2,
        u3: 1.0,
    }
}

fn invert_point(x: &Vector2) -> Option<Vector2> {
    let n2 = x.norm_squared();
    (n2 > BOUNDARY_GUARD * BOUNDARY_GUARD).then(|| x / n2)
}

/// Inversion, translation by `c`, inversion.
///
/// The origin is fixed (it is the image of the point at infinity). A point
/// whose translated inverse lands on the origin is sent to infinity and is
/// reported as [`ChartError::PoleCrossing`].
///
/// To first order in `c` the displacement is `−c^μ q_μ(x)`, the negative of
/// the special-conformal vector fields.
pub fn special_conformal(x: &Vector2, c: &Vector2) -> Result<Vector2, ChartError> {
    let Some(inv) = invert_point(x) else {
        return Ok(Vector2::zeros());
    };
    invert_point(&(inv + c)).ok_or(ChartError::PoleCrossing(x[0], x[1]))
}
