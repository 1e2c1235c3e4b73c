//! The rescaled Laplace operator in each chart and its separable solutions
//! υ^α = e^{iαφ} R^α, where R is the chart's radial factor.
//!
//! Rescaled operators (all equal |x|² times the flat Laplacian):
//!
//! * cartesian: ∂₀₀ + ∂₁₁ (not rescaled)
//! * polar: r∂ᵣ r∂ᵣ + ∂φφ
//! * holographic: tanθ ∂θ tanθ ∂θ + ∂φφ
//! * conformal: ∂ρρ + ∂φφ
//!
//! Non-integer powers use the principal logarithm of the (positive) radial
//! factor together with the chart angle φ ∈ [0, 2π); in cartesian
//! coordinates the same angle is recovered from the point, which puts the
//! branch cut on the positive x₀ axis for every chart.

use crate::charts::{ChartError, ChartId, ChartPoint, BOUNDARY_GUARD};
use crate::jet::Jet;
use num_complex::Complex64;
use std::f64::consts::{PI, TAU};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LaplaceError {
    #[error(transparent)]
    Chart(#[from] ChartError),
    #[error("grid is empty")]
    EmptyGrid,
    #[error("degree l = {0} must be at least 1")]
    InvalidDegree(u32),
    #[error("grid point {0:?} is not holographic")]
    WrongChart(ChartPoint),
}

/// A complex function of two coordinates, evaluated as a [`Jet`] so that its
/// partial derivatives come along.
///
/// The closure receives the coordinate seeds and must treat them as the
/// coordinates themselves.
#[derive(Clone)]
pub struct ScalarField(Arc<dyn Fn(&[Jet; 2]) -> Jet + Send + Sync>);

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ScalarField(..)")
    }
}

impl ScalarField {
    pub fn new(f: impl Fn(&[Jet; 2]) -> Jet + Send + Sync + 'static) -> Self {
        Self(Arc::new(f))
    }

    pub fn constant(c: impl Into<Complex64>) -> Self {
        let c = c.into();
        Self::new(move |_| Jet::constant(c))
    }

    /// Coordinate `k` as a field.
    pub fn coordinate(k: usize) -> Self {
        Self::new(move |y| y[k])
    }

    pub(crate) fn eval_seeded(&self, seeds: &[Jet; 2]) -> Jet {
        (self.0)(seeds)
    }

    /// The field's jet at complex coordinates.
    pub fn jet_at(&self, coords: [Complex64; 2]) -> Jet {
        self.eval_seeded(&Jet::seeds(coords))
    }

    pub fn jet_at_point(&self, p: &ChartPoint) -> Jet {
        self.eval_seeded(&Jet::real_seeds(p.y0, p.y1))
    }

    pub fn value_at(&self, p: &ChartPoint) -> Complex64 {
        self.jet_at_point(p).value()
    }

    pub fn add(&self, other: &ScalarField) -> ScalarField {
        let (a, b) = (self.clone(), other.clone());
        ScalarField::new(move |y| a.eval_seeded(y) + b.eval_seeded(y))
    }

    pub fn mul(&self, other: &ScalarField) -> ScalarField {
        let (a, b) = (self.clone(), other.clone());
        ScalarField::new(move |y| a.eval_seeded(y) * b.eval_seeded(y))
    }

    pub fn scale(&self, c: impl Into<Complex64>) -> ScalarField {
        let (a, c) = (self.clone(), c.into());
        ScalarField::new(move |y| a.eval_seeded(y) * c)
    }

    pub fn re(&self) -> ScalarField {
        let a = self.clone();
        ScalarField::new(move |y| a.eval_seeded(y).re())
    }

    pub fn im(&self) -> ScalarField {
        let a = self.clone();
        ScalarField::new(move |y| (a.eval_seeded(y) * -I).re())
    }
}

/// The solution υ^α of the Laplace equation written in one chart.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolutionFamily {
    pub alpha: Complex64,
    pub chart: ChartId,
}

impl SolutionFamily {
    pub fn new(alpha: impl Into<Complex64>, chart: ChartId) -> Self {
        Self {
            alpha: alpha.into(),
            chart,
        }
    }

    /// Jet of υ^α at coordinate seeds.
    pub fn jet(&self, y: &[Jet; 2]) -> Jet {
        let alpha = self.alpha;
        let [a, phi] = *y;
        match self.chart {
            ChartId::Cartesian => {
                let z = a + y[1] * I;
                let mut log = z.ln();
                if log.value().im < 0.0 {
                    log = log + Complex64::new(0.0, TAU);
                }
                (log * alpha).exp()
            }
            ChartId::Polar => (phi * (I * alpha)).exp() * a.powc(alpha),
            ChartId::Holographic => (phi * (I * alpha)).exp() * a.sin().powc(alpha),
            ChartId::Conformal => (phi * (I * alpha) + a * alpha).exp(),
        }
    }

    pub fn field(&self) -> ScalarField {
        let family = *self;
        ScalarField::new(move |y| family.jet(y))
    }
}

fn check_solution_domain(chart: ChartId, p: &ChartPoint) -> Result<(), ChartError> {
    if p.chart != chart {
        return Err(ChartError::DomainViolation {
            chart,
            reason: format!("point belongs to the {} chart", p.chart),
        });
    }
    p.validate()?;
    if chart == ChartId::Cartesian && p.y0.hypot(p.y1) <= BOUNDARY_GUARD {
        return Err(ChartError::DomainViolation {
            chart,
            reason: "solutions are singular at the origin".into(),
        });
    }
    Ok(())
}

/// Applies the chart's rescaled Laplace operator to `f` at `p`.
pub fn laplacian(chart: ChartId, f: &ScalarField, p: &ChartPoint) -> Result<Complex64, ChartError> {
    check_solution_domain(chart, p)?;
    let y = Jet::real_seeds(p.y0, p.y1);
    let jet = f.eval_seeded(&y);
    let angular = jet.d2(1, 1);
    // weight w in the radial part w∂(w∂f)
    let weight = match chart {
        ChartId::Cartesian => return Ok(jet.d2(0, 0) + angular),
        ChartId::Polar => y[0],
        ChartId::Holographic => y[0].tan(),
        ChartId::Conformal => Jet::constant(1.0),
    };
    let inner = weight * jet.derivative(0);
    Ok((weight * inner.derivative(0)).value() + angular)
}

/// Factor relating the chart's rescaled operator to the flat Laplacian: |x|².
pub fn rescaling_factor(p: &ChartPoint) -> f64 {
    match p.chart {
        ChartId::Cartesian => 1.0,
        ChartId::Polar => p.y0 * p.y0,
        ChartId::Holographic => p.y0.sin().powi(2),
        ChartId::Conformal => (2.0 * p.y0).exp(),
    }
}

pub fn solve(alpha: Complex64, chart: ChartId, p: &ChartPoint) -> Result<Complex64, ChartError> {
    check_solution_domain(chart, p)?;
    Ok(SolutionFamily::new(alpha, chart)
        .jet(&Jet::real_seeds(p.y0, p.y1))
        .value())
}

/// |Δυ^α| at `p`.
pub fn residual(alpha: Complex64, chart: ChartId, p: &ChartPoint) -> Result<f64, ChartError> {
    let field = SolutionFamily::new(alpha, chart).field();
    Ok(laplacian(chart, &field, p)?.norm())
}

/// The bound a residual must meet: 1e−10 (1 + |υ^α|).
pub fn residual_bound(value: Complex64) -> f64 {
    1e-10 * (1.0 + value.norm())
}

/// (∂₀ + i∂₁) f in cartesian coordinates; zero for holomorphic f.
pub fn conjugate_derivative(f: &ScalarField, x0: f64, x1: f64) -> Complex64 {
    let jet = f.eval_seeded(&Jet::real_seeds(x0, x1));
    jet.d(0) + I * jet.d(1)
}

/// Orthonormal spherical harmonic with the Condon–Shortley phase.
pub fn spherical_harmonic(l: u32, m: i32, theta: f64, phi: f64) -> Complex64 {
    let l = l as i32;
    assert!(m.abs() <= l, "|m| must not exceed l");
    if m < 0 {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        return spherical_harmonic(l as u32, -m, theta, phi).conj() * sign;
    }
    let x = theta.cos();
    let s = theta.sin();
    // P_m^m = (−1)^m (2m−1)!! (1−x²)^{m/2}
    let mut pmm = 1.0;
    for k in 1..=m {
        pmm *= -((2 * k - 1) as f64) * s;
    }
    let plm = if l == m {
        pmm
    } else {
        let mut prev = pmm;
        let mut cur = x * (2 * m + 1) as f64 * pmm;
        for ll in (m + 2)..=l {
            let next = (x * (2 * ll - 1) as f64 * cur - (ll + m - 1) as f64 * prev) / (ll - m) as f64;
            prev = cur;
            cur = next;
        }
        cur
    };
    let ratio: f64 = ((l - m + 1)..=(l + m)).map(|k| k as f64).product();
    let norm = ((2 * l + 1) as f64 / (4.0 * PI) / ratio).sqrt();
    Complex64::from_polar(norm * plm, m as f64 * phi)
}

/// Which extreme magnetic number to compare against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HarmonicBranch {
    /// Y_l^l against υ^l.
    Highest,
    /// Y_l^{−l} against the conjugate solution e^{−ilφ} sin^l θ.
    Lowest,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HarmonicRatio {
    pub mean: Complex64,
    /// Population standard deviation of the pointwise ratios divided by |mean|.
    pub relative_spread: f64,
}

/// Ratio of the extreme spherical harmonic to the holographic solution over a grid.
pub fn ylm_ratio(
    l: u32,
    grid: &[ChartPoint],
    branch: HarmonicBranch,
) -> Result<HarmonicRatio, LaplaceError> {
    if l < 1 {
        return Err(LaplaceError::InvalidDegree(l));
    }
    if grid.is_empty() {
        return Err(LaplaceError::EmptyGrid);
    }
    let family = SolutionFamily::new(l as f64, ChartId::Holographic);
    let ratios = grid
        .iter()
        .map(|p| {
            if p.chart != ChartId::Holographic {
                return Err(LaplaceError::WrongChart(*p));
            }
            let v = solve(family.alpha, ChartId::Holographic, p)?;
            let (m, v) = match branch {
                HarmonicBranch::Highest => (l as i32, v),
                HarmonicBranch::Lowest => (-(l as i32), v.conj()),
            };
            Ok(spherical_harmonic(l, m, p.y0, p.y1) / v)
        })
        .collect::<Result<Vec<_>, LaplaceError>>()?;
    let n = ratios.len() as f64;
    let mean = ratios.iter().sum::<Complex64>() / n;
    let var = ratios.iter().map(|r| (r - mean).norm_sqr()).sum::<f64>() / n;
    Ok(HarmonicRatio {
        mean,
        relative_spread: var.sqrt() / mean.norm(),
    })
}
