//! Generators as first-order differential operators X = Xʲ ∂ⱼ.
//!
//! Coefficients per realization (y₀, y₁ are the chart coordinates, φ = y₁):
//!
//! | gen | cartesian        | polar             | holographic                  | conformal           | υ-line |
//! |-----|------------------|-------------------|------------------------------|---------------------|--------|
//! | b   | (x₀, x₁)         | (r, 0)            | (tan θ, 0)                   | (1, 0)              | υ      |
//! | s01 | (−x₁, x₀)        | (0, 1)            | (0, 1)                       | (0, 1)              | iυ     |
//! | p0  | (1, 0)           | (cos φ, −sin φ/r) | (cos φ/cos θ, −sin φ/sin θ)  | e^{−ρ}(cos φ, −sin φ) | 1    |
//! | p1  | (0, 1)           | (sin φ, cos φ/r)  | (sin φ/cos θ, cos φ/sin θ)   | e^{−ρ}(sin φ, cos φ)  | i    |
//! | q0  | (x₀²−x₁², 2x₀x₁) | (r² cos φ, r sin φ) | (cos φ sin θ tan θ, sin φ sin θ) | e^ρ(cos φ, sin φ) | υ² |
//! | q1  | (2x₀x₁, x₁²−x₀²) | (r² sin φ, −r cos φ) | (sin φ sin θ tan θ, −cos φ sin θ) | e^ρ(sin φ, −cos φ) | −iυ² |
//!
//! The chart columns are pushforwards of the cartesian ones. The υ-line
//! realization acts on holomorphic functions of a single complex variable,
//! where ∂ᵤ is the complex derivative.

use super::{AlgebraError, GeneratorId, LieRealization};
use crate::charts::{embed, jacobian_mixed, ChartError, ChartId, ChartPoint, Vector2};
use crate::jet::Jet;
use crate::laplace::{solve, ScalarField, SolutionFamily};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Realization {
    Chart(ChartId),
    UpsilonLine,
}

impl Realization {
    pub const ALL: [Realization; 5] = [
        Realization::Chart(ChartId::Cartesian),
        Realization::Chart(ChartId::Polar),
        Realization::Chart(ChartId::Holographic),
        Realization::Chart(ChartId::Conformal),
        Realization::UpsilonLine,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Realization::Chart(c) => c.name(),
            Realization::UpsilonLine => "upsilon-line",
        }
    }

    pub fn from_name(name: &str) -> Option<Realization> {
        Realization::ALL.into_iter().find(|r| r.name() == name)
    }

    /// Number of independent variables.
    pub fn dimension(&self) -> usize {
        match self {
            Realization::Chart(_) => 2,
            Realization::UpsilonLine => 1,
        }
    }

    /// Human-readable coefficients of a generator.
    pub fn formula(&self, g: GeneratorId) -> [&'static str; 2] {
        use GeneratorId::*;
        match (self, g) {
            (Realization::Chart(ChartId::Cartesian), g) => match g {
                B => ["x0", "x1"],
                S01 => ["-x1", "x0"],
                P0 => ["1", "0"],
                P1 => ["0", "1"],
                Q0 => ["x0^2 - x1^2", "2 x0 x1"],
                Q1 => ["2 x0 x1", "x1^2 - x0^2"],
            },
            (Realization::Chart(ChartId::Polar), g) => match g {
                B => ["r", "0"],
                S01 => ["0", "1"],
                P0 => ["cos(phi)", "-sin(phi)/r"],
                P1 => ["sin(phi)", "cos(phi)/r"],
                Q0 => ["r^2 cos(phi)", "r sin(phi)"],
                Q1 => ["r^2 sin(phi)", "-r cos(phi)"],
            },
            (Realization::Chart(ChartId::Holographic), g) => match g {
                B => ["tan(theta)", "0"],
                S01 => ["0", "1"],
                P0 => ["cos(phi)/cos(theta)", "-sin(phi)/sin(theta)"],
                P1 => ["sin(phi)/cos(theta)", "cos(phi)/sin(theta)"],
                Q0 => ["cos(phi) sin(theta) tan(theta)", "sin(phi) sin(theta)"],
                Q1 => ["sin(phi) sin(theta) tan(theta)", "-cos(phi) sin(theta)"],
            },
            (Realization::Chart(ChartId::Conformal), g) => match g {
                B => ["1", "0"],
                S01 => ["0", "1"],
                P0 => ["exp(-rho) cos(phi)", "-exp(-rho) sin(phi)"],
                P1 => ["exp(-rho) sin(phi)", "exp(-rho) cos(phi)"],
                Q0 => ["exp(rho) cos(phi)", "exp(rho) sin(phi)"],
                Q1 => ["exp(rho) sin(phi)", "-exp(rho) cos(phi)"],
            },
            (Realization::UpsilonLine, g) => match g {
                B => ["u", ""],
                S01 => ["i u", ""],
                P0 => ["1", ""],
                P1 => ["i", ""],
                Q0 => ["u^2", ""],
                Q1 => ["-i u^2", ""],
            },
        }
    }

    /// Variable names, in coefficient order.
    pub fn variables(&self) -> Vec<&'static str> {
        match self {
            Realization::Chart(c) => c.coordinate_names().to_vec(),
            Realization::UpsilonLine => vec!["u"],
        }
    }
}

impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Coefficient jets of a generator at coordinate seeds. The υ-line only reads `y[0]`.
fn generator_jets(g: GeneratorId, realization: Realization, y: &[Jet; 2]) -> [Jet; 2] {
    use GeneratorId::*;
    let zero = Jet::zero();
    let one = Jet::constant(1.0);
    let [a, phi] = *y;
    match realization {
        Realization::Chart(ChartId::Cartesian) => {
            let (x0, x1) = (a, phi);
            match g {
                B => [x0, x1],
                S01 => [-x1, x0],
                P0 => [one, zero],
                P1 => [zero, one],
                Q0 => [x0 * x0 - x1 * x1, 2.0 * x0 * x1],
                Q1 => [2.0 * x0 * x1, x1 * x1 - x0 * x0],
            }
        }
        Realization::Chart(ChartId::Polar) => {
            let (c, s, r) = (phi.cos(), phi.sin(), a);
            match g {
                B => [r, zero],
                S01 => [zero, one],
                P0 => [c, -(s / r)],
                P1 => [s, c / r],
                Q0 => [r * r * c, r * s],
                Q1 => [r * r * s, -(r * c)],
            }
        }
        Realization::Chart(ChartId::Holographic) => {
            let (c, s) = (phi.cos(), phi.sin());
            let (st, ct, tt) = (a.sin(), a.cos(), a.tan());
            match g {
                B => [tt, zero],
                S01 => [zero, one],
                P0 => [c / ct, -(s / st)],
                P1 => [s / ct, c / st],
                Q0 => [c * st * tt, s * st],
                Q1 => [s * st * tt, -(c * st)],
            }
        }
        Realization::Chart(ChartId::Conformal) => {
            let (c, s) = (phi.cos(), phi.sin());
            let (up, down) = (a.exp(), (-a).exp());
            match g {
                B => [one, zero],
                S01 => [zero, one],
                P0 => [down * c, -(down * s)],
                P1 => [down * s, down * c],
                Q0 => [up * c, up * s],
                Q1 => [up * s, -(up * c)],
            }
        }
        Realization::UpsilonLine => {
            let u = a;
            let f = match g {
                B => u,
                S01 => u * I,
                P0 => one,
                P1 => Jet::constant(I),
                Q0 => u * u,
                Q1 => u * u * (-I),
            };
            [f, zero]
        }
    }
}

/// A vector field in one realization; `coefficients()[j]` multiplies ∂ⱼ.
#[derive(Clone, Debug)]
pub struct VectorField {
    realization: Realization,
    coeffs: Vec<ScalarField>,
}

impl VectorField {
    /// Panics if the number of coefficients does not match the realization's dimension.
    pub fn new(realization: Realization, coeffs: Vec<ScalarField>) -> Self {
        assert_eq!(coeffs.len(), realization.dimension(), "coefficient count");
        Self {
            realization,
            coeffs,
        }
    }

    pub fn generator(g: GeneratorId, realization: Realization) -> Self {
        let coeffs = (0..realization.dimension())
            .map(|j| ScalarField::new(move |y| generator_jets(g, realization, y)[j]))
            .collect();
        Self::new(realization, coeffs)
    }

    pub fn realization(&self) -> Realization {
        self.realization
    }

    pub fn coefficients(&self) -> &[ScalarField] {
        &self.coeffs
    }

    /// Coefficient jets at complex coordinates (the υ-line uses `coords[0]`).
    pub fn coefficient_jets(&self, coords: [Complex64; 2]) -> Vec<Jet> {
        let seeds = Jet::seeds(coords);
        self.coeffs.iter().map(|c| c.eval_seeded(&seeds)).collect()
    }

    pub fn coefficients_at(&self, coords: [Complex64; 2]) -> Vec<Complex64> {
        self.coefficient_jets(coords).iter().map(Jet::value).collect()
    }

    /// X(f) = Xʲ ∂ⱼ f.
    pub fn apply(&self, f: &ScalarField) -> ScalarField {
        let (x, f) = (self.clone(), f.clone());
        ScalarField::new(move |y| {
            let fj = f.eval_seeded(y);
            x.coeffs
                .iter()
                .enumerate()
                .fold(Jet::zero(), |acc, (k, c)| acc + c.eval_seeded(y) * fj.derivative(k))
        })
    }

    /// [X, Y]ʲ = X(Yʲ) − Y(Xʲ).
    pub fn bracket(&self, other: &VectorField) -> Result<VectorField, AlgebraError> {
        self.same_realization(other)?;
        let coeffs = (0..self.coeffs.len())
            .map(|j| {
                let a = self.apply(&other.coeffs[j]);
                let b = other.apply(&self.coeffs[j]);
                a.add(&b.scale(-1.0))
            })
            .collect();
        Ok(VectorField::new(self.realization, coeffs))
    }

    pub fn linear_combination(
        realization: Realization,
        terms: &[(Complex64, &VectorField)],
    ) -> Result<VectorField, AlgebraError> {
        let mut coeffs = vec![ScalarField::constant(0.0); realization.dimension()];
        for (k, field) in terms {
            if field.realization != realization {
                return Err(AlgebraError::RealizationMismatch(
                    realization.to_string(),
                    field.realization.to_string(),
                ));
            }
            for (acc, c) in coeffs.iter_mut().zip(&field.coeffs) {
                *acc = acc.add(&c.scale(*k));
            }
        }
        Ok(VectorField::new(realization, coeffs))
    }

    fn same_realization(&self, other: &VectorField) -> Result<(), AlgebraError> {
        if self.realization == other.realization {
            Ok(())
        } else {
            Err(AlgebraError::RealizationMismatch(
                self.realization.to_string(),
                other.realization.to_string(),
            ))
        }
    }
}

pub fn generator(g: GeneratorId, realization: Realization) -> VectorField {
    VectorField::generator(g, realization)
}

pub fn bracket(x: &VectorField, y: &VectorField) -> Result<VectorField, AlgebraError> {
    x.bracket(y)
}

/// Coefficients of the flat generator at `embed(p)`, pulled back into `p`'s chart.
pub fn pushforward_from_flat(g: GeneratorId, p: &ChartPoint) -> Result<[f64; 2], ChartError> {
    let x = embed(p)?;
    let flat = generator_jets(g, Realization::Chart(ChartId::Cartesian), &Jet::real_seeds(x[0], x[1]));
    let v = Vector2::new(flat[0].value().re, flat[1].value().re);
    let chart = jacobian_mixed(p)?.transpose() * v;
    Ok([chart[0], chart[1]])
}

/// (factor, shift) with X_g υ^α = factor · α · υ^{α+shift}.
pub fn eigen_relation(g: GeneratorId) -> (Complex64, i32) {
    use GeneratorId::*;
    let one = Complex64::new(1.0, 0.0);
    match g {
        B => (one, 0),
        S01 => (I, 0),
        P0 => (one, -1),
        P1 => (I, -1),
        Q0 => (one, 1),
        Q1 => (-I, 1),
    }
}

/// The generator, in `p`'s chart, applied to υ^α and evaluated at `p`.
pub fn act(g: GeneratorId, alpha: Complex64, p: &ChartPoint) -> Result<Complex64, ChartError> {
    solve(alpha, p.chart, p)?;
    let field = SolutionFamily::new(alpha, p.chart).field();
    let image = generator(g, Realization::Chart(p.chart)).apply(&field);
    Ok(image.value_at(p))
}

/// factor · α · υ^{α+shift} at `p`.
pub fn expected_action(g: GeneratorId, alpha: Complex64, p: &ChartPoint) -> Result<Complex64, ChartError> {
    let (factor, shift) = eigen_relation(g);
    Ok(factor * alpha * solve(alpha + shift as f64, p.chart, p)?)
}

/// A realization sampled at fixed points: each element stores the
/// coefficient jets at every point, which is all a bracket needs.
#[derive(Clone, Debug)]
pub struct SampledFields {
    realization: Realization,
    points: Vec<[Complex64; 2]>,
}

impl SampledFields {
    pub fn new(realization: Realization, points: Vec<[Complex64; 2]>) -> Self {
        Self {
            realization,
            points,
        }
    }

    pub fn at_chart_points(chart: ChartId, points: &[ChartPoint]) -> Self {
        Self::new(
            Realization::Chart(chart),
            points
                .iter()
                .map(|p| [Complex64::new(p.y0, 0.0), Complex64::new(p.y1, 0.0)])
                .collect(),
        )
    }

    pub fn on_line(points: &[Complex64]) -> Self {
        Self::new(
            Realization::UpsilonLine,
            points.iter().map(|u| [*u, Complex64::new(0.0, 0.0)]).collect(),
        )
    }

    pub fn realization(&self) -> Realization {
        self.realization
    }

    pub fn sample(&self, field: &VectorField) -> Vec<[Jet; 2]> {
        self.points
            .iter()
            .map(|c| {
                let jets = field.coefficient_jets(*c);
                [jets[0], jets.get(1).copied().unwrap_or_else(Jet::zero)]
            })
            .collect()
    }
}

impl LieRealization for SampledFields {
    type Element = Vec<[Jet; 2]>;

    fn label(&self) -> String {
        self.realization.to_string()
    }

    fn generator(&self, g: GeneratorId) -> Option<Self::Element> {
        Some(
            self.points
                .iter()
                .map(|c| generator_jets(g, self.realization, &Jet::seeds(*c)))
                .collect(),
        )
    }

    fn bracket(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        let dim = self.realization.dimension();
        a.iter()
            .zip(b)
            .map(|(x, y)| {
                let mut out = [Jet::zero(); 2];
                for (j, slot) in out.iter_mut().enumerate().take(dim) {
                    for k in 0..dim {
                        *slot += x[k] * y[j].derivative(k) - y[k] * x[j].derivative(k);
                    }
                }
                out
            })
            .collect()
    }

    fn combine(&self, terms: &[(f64, &Self::Element)]) -> Self::Element {
        (0..self.points.len())
            .map(|i| {
                let mut out = [Jet::zero(); 2];
                for (k, e) in terms {
                    for j in 0..2 {
                        out[j] += e[i][j] * *k;
                    }
                }
                out
            })
            .collect()
    }

    fn distance(&self, a: &Self::Element, b: &Self::Element) -> f64 {
        a.iter()
            .zip(b)
            .flat_map(|(x, y)| (0..2).map(move |j| (x[j].value(), y[j].value())))
            .map(|(u, v)| (u - v).norm() / (1.0 + v.norm()))
            .fold(0.0, f64::max)
    }

    fn magnitude(&self, a: &Self::Element) -> f64 {
        a.iter()
            .flat_map(|x| x.iter().map(|j| j.value().norm()))
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{documented_field_signs, structure_table};
    use crate::sampling::{annulus, stream};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn polar_p0_on_r() {
        let p0 = generator(GeneratorId::P0, Realization::Chart(ChartId::Polar));
        let f = p0.apply(&ScalarField::coordinate(0));
        let p = ChartPoint::new(ChartId::Polar, 2.0, 0.3).unwrap();
        assert!((f.value_at(&p) - c(0.3f64.cos())).norm() < 1e-15);
    }

    #[test]
    fn cartesian_b_p0_bracket() {
        let r = Realization::Chart(ChartId::Cartesian);
        let br = bracket(&generator(GeneratorId::B, r), &generator(GeneratorId::P0, r)).unwrap();
        let v = br.coefficients_at([c(0.4), c(-1.3)]);
        assert!((v[0] + 1.0).norm() < 1e-14 && v[1].norm() < 1e-14);
    }

    #[test]
    fn every_chart_is_a_pushforward_of_the_flat_fields() {
        let mut rng = stream(3, "pushforward");
        for chart in ChartId::ALL {
            for _ in 0..20 {
                let p = chart.sample(&mut rng);
                for g in GeneratorId::ALL {
                    let expected = pushforward_from_flat(g, &p).unwrap();
                    let got = generator(g, Realization::Chart(chart))
                        .coefficients_at([c(p.y0), c(p.y1)]);
                    for j in 0..2 {
                        let scale = 1.0 + expected[j].abs();
                        assert!((got[j].re - expected[j]).abs() < 1e-12 * scale, "{chart} {g}");
                        assert_eq!(got[j].im, 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn closure_and_sampled_brackets_agree() {
        let mut rng = stream(4, "closure");
        let points: Vec<_> = (0..5).map(|_| ChartId::Holographic.sample(&mut rng)).collect();
        let sampled = SampledFields::at_chart_points(ChartId::Holographic, &points);
        let r = Realization::Chart(ChartId::Holographic);
        let x = generator(GeneratorId::Q1, r);
        let y = generator(GeneratorId::P0, r);
        let closure = x.bracket(&y).unwrap();
        let fast = sampled.bracket(
            &sampled.generator(GeneratorId::Q1).unwrap(),
            &sampled.generator(GeneratorId::P0).unwrap(),
        );
        assert!(sampled.distance(&sampled.sample(&closure), &fast) < 1e-14);
    }

    #[test]
    fn every_realization_has_the_documented_ledger() {
        let mut rng = stream(5, "ledger");
        let expected = documented_field_signs();
        for chart in ChartId::ALL {
            let points: Vec<_> = (0..10).map(|_| chart.sample(&mut rng)).collect();
            let ledger = structure_table(&SampledFields::at_chart_points(chart, &points), 1e-10).unwrap();
            assert_eq!(ledger.signs(), expected, "{chart}");
        }
        let line: Vec<_> = (0..10).map(|_| annulus(&mut rng, 0.3, 2.0)).collect();
        let ledger = structure_table(&SampledFields::on_line(&line), 1e-10).unwrap();
        assert_eq!(ledger.signs(), expected);
    }

    #[test]
    fn mismatched_realizations_are_rejected() {
        let x = generator(GeneratorId::B, Realization::UpsilonLine);
        let y = generator(GeneratorId::B, Realization::Chart(ChartId::Polar));
        assert!(matches!(x.bracket(&y), Err(AlgebraError::RealizationMismatch(..))));
    }

    #[test]
    fn eigenactions_in_the_holographic_chart() {
        let p = ChartPoint::new(ChartId::Holographic, 0.7, 2.1).unwrap();
        let alpha = Complex64::new(1.3, -0.4);
        for g in GeneratorId::ALL {
            let got = act(g, alpha, &p).unwrap();
            let want = expected_action(g, alpha, &p).unwrap();
            assert!((got - want).norm() < 1e-10 * (1.0 + want.norm()), "{g}");
        }
    }
}
