use holoconf::bicomplex::Bicomplex;
use holoconf::algebra::GeneratorId;
use holoconf::projective::{
    exp_one_param, hopf, hopf_map, mobius_apply, S3Point, SpinMatrix,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn bicomplex(width: f64) -> impl Strategy<Value = Bicomplex> {
    prop::array::uniform4(-width..width).prop_map(Bicomplex::from_components)
}

fn complex(width: f64) -> impl Strategy<Value = Complex64> {
    (-width..width, -width..width).prop_map(|(re, im)| Complex64::new(re, im))
}

fn s3() -> impl Strategy<Value = S3Point> {
    prop::array::uniform4(-2.0..2.0f64)
        .prop_filter("away from the origin", |s| s.iter().map(|x| x * x).sum::<f64>() > 1e-3)
        .prop_map(|s| S3Point::new(s[0], s[1], s[2], s[3]))
}

fn generator() -> impl Strategy<Value = GeneratorId> {
    prop::sample::select(GeneratorId::ALL.to_vec())
}

proptest! {
    #[test]
    fn ring_axioms(a in bicomplex(3.0), b in bicomplex(3.0), c in bicomplex(3.0)) {
        prop_assert!(((a * b) * c).max_abs_diff(&(a * (b * c))) < 1e-12);
        prop_assert!((a * b).max_abs_diff(&(b * a)) < 1e-12);
        prop_assert!((a * (b + c)).max_abs_diff(&(a * b + a * c)) < 1e-12);
    }

    #[test]
    fn idempotent_split_round_trips(a in bicomplex(3.0)) {
        let (p, m) = a.idempotent_parts();
        prop_assert!(Bicomplex::from_idempotent_parts(p, m).max_abs_diff(&a) < 1e-14);
    }

    #[test]
    fn inverse_when_invertible(a in bicomplex(3.0)) {
        let (p, m) = a.idempotent_parts();
        prop_assume!(p.norm() > 1e-3 && m.norm() > 1e-3);
        let inv = a.try_inverse().unwrap();
        let scale = 1.0 / p.norm().min(m.norm());
        prop_assert!((a * inv).max_abs_diff(&Bicomplex::ONE) < 1e-12 * scale);
    }

    #[test]
    fn exp_is_additive(a in bicomplex(1.0), b in bicomplex(1.0)) {
        let sum = (a + b).exp();
        let scale = 1.0 + sum.squared_length().sqrt();
        prop_assert!((a.exp() * b.exp()).max_abs_diff(&sum) < 1e-12 * scale);
    }

    #[test]
    fn mobius_is_a_group_action(
        g in generator(), h in generator(),
        e in -0.5..0.5f64, f in -0.5..0.5f64,
        u in complex(0.8),
    ) {
        let m = exp_one_param::<Complex64>(g, e).unwrap();
        let n = exp_one_param::<Complex64>(h, f).unwrap();
        let inner = mobius_apply(&n, u);
        prop_assume!(inner.is_ok());
        let step = mobius_apply(&m, inner.unwrap());
        let once = mobius_apply(&(m * n), u);
        prop_assume!(step.is_ok() && once.is_ok());
        let (step, once) = (step.unwrap(), once.unwrap());
        prop_assume!(once.norm() < 1e4);
        prop_assert!((step - once).norm() < 1e-10 * (1.0 + once.norm()));
    }

    #[test]
    fn one_parameter_subgroups_compose(g in generator(), e in -1.0..1.0f64, f in -1.0..1.0f64) {
        let prod: SpinMatrix<Complex64> =
            exp_one_param::<Complex64>(g, e).unwrap() * exp_one_param::<Complex64>(g, f).unwrap();
        let sum = exp_one_param::<Complex64>(g, e + f).unwrap();
        prop_assert!(prod.distance(&sum) < 1e-12 * (1.0 + sum.max_norm()));
    }

    #[test]
    fn hopf_fiber_invariance(p in s3(), lambda in 0.0..std::f64::consts::TAU) {
        let a = hopf(&p).unwrap().xi();
        let b = hopf(&p.fiber_rotate(lambda)).unwrap().xi();
        for k in 0..3 {
            prop_assert!((a[k] - b[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn hopf_norm_is_squared_length(p in s3()) {
        let h = hopf_map(&p);
        let len = p.squared_length();
        prop_assert!((h.norm() - len).abs() < 1e-12 * (1.0 + len));
        prop_assert!((hopf(&p).unwrap().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hopf_matches_bicomplex_projections(p in s3()) {
        let h = hopf_map(&p);
        let q = p.to_bicomplex().involution_projections().unwrap();
        for k in 0..3 {
            prop_assert!((h.xi()[k] - q.xi()[k]).abs() < 1e-12);
        }
    }
}
