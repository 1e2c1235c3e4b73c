//! Tangent vectors of the holographic chart identified with paravectors:
//! 1 ↦ tan θ ∂θ and i ↦ ∂φ.

use super::fields::{Realization, VectorField};
use crate::charts::{ChartError, ChartId, ChartPoint};
use crate::jet::Jet;
use crate::laplace::{solve, ScalarField};
use num_complex::Complex64;

/// The holographic field (re · tan θ) ∂θ + im ∂φ.
pub fn paravector_substitute(re_part: &ScalarField, im_part: &ScalarField) -> VectorField {
    let tan = ScalarField::new(|y| y[0].tan());
    VectorField::new(
        Realization::Chart(ChartId::Holographic),
        vec![re_part.mul(&tan), im_part.clone()],
    )
}

fn holographic(p: &ChartPoint) -> Result<Complex64, ChartError> {
    if p.chart != ChartId::Holographic {
        return Err(ChartError::DomainViolation {
            chart: ChartId::Holographic,
            reason: format!("point belongs to the {} chart", p.chart),
        });
    }
    solve(Complex64::new(1.0, 0.0), ChartId::Holographic, p)
}

/// c(ε) = e^ε υ(p).
pub fn tangent_curve(eps: f64, p: &ChartPoint) -> Result<Complex64, ChartError> {
    Ok(eps.exp() * holographic(p)?)
}

/// dc/dε at ε = 0.
pub fn tangent_curve_velocity(p: &ChartPoint) -> Result<Complex64, ChartError> {
    let u = holographic(p)?;
    Ok((Jet::variable(0, 0.0).exp() * u).d(0))
}

/// sin(θ + ε tan θ) e^{iφ}: the point reached by moving θ along tan θ ∂θ to first order.
pub fn sine_expansion(eps: f64, p: &ChartPoint) -> Result<Complex64, ChartError> {
    holographic(p)?;
    Ok(Complex64::from_polar((p.y0 + eps * p.y0.tan()).sin(), p.y1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{generator, GeneratorId};
    use crate::laplace::SolutionFamily;
    use crate::sampling::stream;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};

    fn holo() -> Realization {
        Realization::Chart(ChartId::Holographic)
    }

    fn assert_same_field(a: &VectorField, b: &VectorField) {
        let mut rng = stream(21, "paravector");
        for _ in 0..20 {
            let p = ChartId::Holographic.sample(&mut rng);
            let c = [Complex64::new(p.y0, 0.0), Complex64::new(p.y1, 0.0)];
            for (x, y) in a.coefficients_at(c).iter().zip(b.coefficients_at(c)) {
                assert!((x - y).norm() < 1e-12 * (1.0 + y.norm()));
            }
        }
    }

    #[test]
    fn substitution_reproduces_q0_p0_and_b() {
        let u = SolutionFamily::new(1.0, ChartId::Holographic).field();
        let inv = SolutionFamily::new(-1.0, ChartId::Holographic).field();
        assert_same_field(&paravector_substitute(&u.re(), &u.im()), &generator(GeneratorId::Q0, holo()));
        assert_same_field(&paravector_substitute(&inv.re(), &inv.im()), &generator(GeneratorId::P0, holo()));
        assert_same_field(
            &paravector_substitute(&ScalarField::constant(1.0), &ScalarField::constant(0.0)),
            &generator(GeneratorId::B, holo()),
        );
    }

    #[test]
    fn curve_and_velocity() {
        let p = ChartPoint::new(ChartId::Holographic, FRAC_PI_3, 0.0).unwrap();
        let u = Complex64::new(FRAC_PI_3.sin(), 0.0);
        assert!((tangent_curve(0.0, &p).unwrap() - u).norm() < 1e-15);
        assert!((tangent_curve_velocity(&p).unwrap() - u).norm() < 1e-15);
        let b_u = generator(GeneratorId::B, holo())
            .apply(&SolutionFamily::new(1.0, ChartId::Holographic).field())
            .value_at(&p);
        assert!((b_u - u).norm() < 1e-14);
    }

    #[test]
    fn second_order_agreement_with_the_sine_form() {
        let p = ChartPoint::new(ChartId::Holographic, FRAC_PI_4, 0.4).unwrap();
        let gap = |e: f64| (tangent_curve(e, &p).unwrap() - sine_expansion(e, &p).unwrap()).norm();
        assert!(gap(1e-3) <= 1e-5);
        let ratio = gap(2e-3) / gap(1e-3);
        assert!((ratio - 4.0).abs() < 0.1, "{ratio}");
    }

    #[test]
    fn rejects_other_charts() {
        let p = ChartPoint::new(ChartId::Polar, 1.0, 0.0).unwrap();
        assert!(tangent_curve(0.1, &p).is_err());
    }
}
