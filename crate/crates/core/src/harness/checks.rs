use super::{Check, Outcome, Suite, SuiteConfig, Tally};
use crate::algebra::so31::diagonal_sign_patterns;
use crate::algebra::{
    act, angular_tensor, documented_field_signs, expected_action, generator, jacobi_defect,
    minkowski_check, paravector_substitute, pushforward_from_flat, sine_expansion, so31_pack,
    structure_table, tangent_curve, tangent_curve_velocity, GeneratorId, LieRealization,
    Realization, SampledFields, SignLedger, MINKOWSKI, SO31_PAIRS,
};
use crate::bicomplex::Bicomplex;
use crate::charts::{
    basis, basis_closed_form, compactify, embed, embedding_jets, invert, jacobian_lower,
    jacobian_mixed, jacobian_mixed_closed_form, metric, metric_closed_form, special_conformal,
    ChartId, ChartPoint, Matrix2, Vector2,
};
use crate::jet::Jet;
use crate::laplace::{
    conjugate_derivative, laplacian, rescaling_factor, residual, solve, ylm_ratio,
    HarmonicBranch, ScalarField, SolutionFamily,
};
use crate::projective::{
    chart_transition, exp_one_param, flow_consistency, hopf, hopf_map, matrix_bracket_table,
    matrix_rep, mobius_apply, ProjectivePoint, Ring, S3Point, SpinMatrix, SpinRing,
};
use crate::sampling::{annulus, scale_dimension, stream, uniform, SampleRng};
use num_complex::Complex64;
use std::f64::consts::TAU;

pub(crate) static CHECKS: &[Check] = &[
    Check { suite: Suite::Bicomplex, name: "ring-axioms", identity: "(ab)c = a(bc), ab = ba, a(b + c) = ab + ac", run: ring_axioms },
    Check { suite: Suite::Bicomplex, name: "null-plane-rules", identity: "oo = io = jo, ōō = −iō = jō, oō = 0, i = o − ō, j = o + ō", run: null_plane_rules },
    Check { suite: Suite::Bicomplex, name: "involutions", identity: "conjugate and reverse are involutive ring homomorphisms", run: involutions },
    Check { suite: Suite::Bicomplex, name: "projection-length", identity: "ξ₁² + ξ₂² + ξ₃² = |ς|⁴ from ς·conjugate(ς) and ς·reverse(ς)", run: projection_length },
    Check { suite: Suite::Bicomplex, name: "exp-additivity", identity: "exp(a) exp(b) = exp(a + b)", run: exp_additivity },
    Check { suite: Suite::Charts, name: "basis-closed-form", identity: "∂x/∂y by differentiation equals the closed-form basis", run: basis_closed },
    Check { suite: Suite::Charts, name: "metric-values", identity: "g = diag(1, 1), diag(1, r²), diag(cos²θ, sin²θ), diag(e^{2ρ}, e^{2ρ})", run: metric_values },
    Check { suite: Suite::Charts, name: "jacobian-inverse", identity: "A_μ^α A^ν_α = δ_μ^ν and A^μ_α matches its closed form", run: jacobian_inverse },
    Check { suite: Suite::Charts, name: "embed-invert", identity: "invert(embed(p)) = p", run: embed_invert },
    Check { suite: Suite::Charts, name: "null-compactification", identity: "u₀² + u₁² + u₂² − u₃² = 0, rescaled (u₀, u₁, u₂) on S²", run: null_compactification },
    Check { suite: Suite::Charts, name: "special-conformal-first-order", identity: "inversion∘translation∘inversion = x − c^μ q_μ(x) + O(|c|²)", run: special_conformal_order },
    Check { suite: Suite::Laplace, name: "solution-residuals", identity: "Δυ^α = 0 in the rescaled operator of each chart", run: solution_residuals },
    Check { suite: Suite::Laplace, name: "harmonic-ratio", identity: "Y_l^{±l} is a constant multiple of υ^l (or its conjugate), l = 1..4", run: harmonic_ratio },
    Check { suite: Suite::Laplace, name: "rescaled-operator", identity: "rescaled operator = |x|² × flat Laplacian on polynomials", run: rescaled_operator },
    Check { suite: Suite::Laplace, name: "chart-consistency", identity: "υ^α agrees across charts at the same physical point", run: chart_consistency },
    Check { suite: Suite::Laplace, name: "holomorphy", identity: "(∂₀ + i∂₁) υ^α = 0", run: holomorphy },
    Check { suite: Suite::Algebra, name: "structure-tables", identity: "all 15 brackets match the reference relations with [q_μ, p_ν] negated", run: structure_tables },
    Check { suite: Suite::Algebra, name: "pushforward", identity: "chart generators are pushforwards of the flat fields", run: pushforward },
    Check { suite: Suite::Algebra, name: "eigenactions", identity: "bυ^α = αυ^α, s01υ^α = iαυ^α, p0υ^α = αυ^{α−1}, p1υ^α = iαυ^{α−1}, q0υ^α = αυ^{α+1}, q1υ^α = −iαυ^{α+1}", run: eigenactions },
    Check { suite: Suite::Algebra, name: "degree-shift", identity: "p0 υ^n = n υ^{n−1}, q0 υ^n = n υ^{n+1}, n = 0..8", run: degree_shift },
    Check { suite: Suite::Algebra, name: "jacobi", identity: "[x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0", run: jacobi },
    Check { suite: Suite::Algebra, name: "so31-metric", identity: "[s_μν, s_ρσ] closes with g = diag(1,1,1,−1) and no other diagonal sign pattern", run: so31_metric },
    Check { suite: Suite::Algebra, name: "angular-tensor", identity: "s_μν = M_μν(cn υ, sn υ) υ∂ᵤ on the υ-line", run: angular_tensor_check },
    Check { suite: Suite::Algebra, name: "paravector-substitution", identity: "1 ↦ tanθ∂θ, i ↦ ∂φ maps υ, υ⁻¹, 1 to q0, p0, b", run: paravector_substitution },
    Check { suite: Suite::Algebra, name: "tangent-curve", identity: "d/dε e^ε υ = tanθ∂θ υ and e^ε υ = sin(θ + ε tanθ) e^{iφ} + O(ε²)", run: tangent_curve_check },
    Check { suite: Suite::Projective, name: "matrix-ledgers", identity: "bicomplex matrices satisfy the reference relations; real and complex ones their negation", run: matrix_ledgers },
    Check { suite: Suite::Projective, name: "complexification", identity: "s01 = i b, p1 = i p0, q1 = −i q0, tr = 0", run: complexification },
    Check { suite: Suite::Projective, name: "special-linear", identity: "det exp(εM_g) = 1", run: special_linear },
    Check { suite: Suite::Projective, name: "mobius-action", identity: "(MN)·υ = M·(N·υ)", run: mobius_action },
    Check { suite: Suite::Projective, name: "flow-consistency", identity: "exp(εM_g)·υ = υ + ε X_g(υ) + O(ε²)", run: flow_consistency_check },
    Check { suite: Suite::Projective, name: "hopf-identities", identity: "|ξ| = |ς|², fiber invariance, agreement with the bicomplex projections", run: hopf_identities },
    Check { suite: Suite::Projective, name: "chart-transition", identity: "|(υ1/υ2)/|υ1/υ2|| = 1 and both affine charts name one point", run: chart_transitions },
];

fn rng(cfg: &SuiteConfig, label: &str) -> SampleRng {
    stream(cfg.seed, label)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / (1.0 + b.norm())
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn coords(p: &ChartPoint) -> [Complex64; 2] {
    [c(p.y0), c(p.y1)]
}

fn random_bicomplex(rng: &mut SampleRng, half_width: f64) -> Bicomplex {
    Bicomplex::from_components(std::array::from_fn(|_| uniform(rng, -half_width, half_width)))
}

fn chart_points(cfg: &SuiteConfig, label: &str, chart: ChartId, n: usize) -> Vec<ChartPoint> {
    let mut r = rng(cfg, &format!("{label}/{chart}"));
    (0..n).map(|_| chart.sample(&mut r)).collect()
}

fn line_points(cfg: &SuiteConfig, label: &str, n: usize) -> Vec<Complex64> {
    let mut r = rng(cfg, label);
    (0..n).map(|_| annulus(&mut r, 0.3, 2.0)).collect()
}

fn matrix_gap(a: &Matrix2, b: &Matrix2) -> f64 {
    (a - b).abs().max() / (1.0 + b.abs().max())
}

fn bicomplex_samples(cfg: &SuiteConfig) -> usize {
    20 * cfg.samples
}

fn chart_samples(cfg: &SuiteConfig) -> usize {
    2 * cfg.samples
}

// bicomplex

fn ring_axioms(cfg: &SuiteConfig) -> Outcome {
    let mut r = rng(cfg, "ring-axioms");
    let mut t = Tally::new();
    for _ in 0..bicomplex_samples(cfg) {
        let [a, b, d] = [(); 3].map(|_| random_bicomplex(&mut r, 2.0));
        let assoc = ((a * b) * d).max_abs_diff(&(a * (b * d)));
        let comm = (a * b).max_abs_diff(&(b * a));
        let dist = (a * (b + d)).max_abs_diff(&(a * b + a * d));
        t.record(assoc.max(comm).max(dist));
    }
    Outcome::from_tally(t, cfg.exact_tol())
}

fn null_plane_rules(cfg: &SuiteConfig) -> Outcome {
    let (o, ob) = Bicomplex::null_plane_units();
    let (i, j) = (Bicomplex::I, Bicomplex::J);
    let mut t = Tally::new();
    for (a, b) in [
        (o * o, i * o),
        (o * o, j * o),
        (ob * ob, -(i * ob)),
        (ob * ob, j * ob),
        (o * ob, Bicomplex::ZERO),
        (o - ob, i),
        (o + ob, j),
        (i * i, -Bicomplex::ONE),
        (j * j, -Bicomplex::ONE),
        (Bicomplex::IJ * Bicomplex::IJ, Bicomplex::ONE),
        (i * j, Bicomplex::IJ),
    ] {
        t.record(a.max_abs_diff(&b));
    }
    Outcome::from_tally(t, cfg.exact_tol())
}

fn involutions(cfg: &SuiteConfig) -> Outcome {
    let mut r = rng(cfg, "involutions");
    let mut t = Tally::new();
    for _ in 0..bicomplex_samples(cfg) {
        let (a, b) = (random_bicomplex(&mut r, 2.0), random_bicomplex(&mut r, 2.0));
        let conj = (a * b).conjugate().max_abs_diff(&(a.conjugate() * b.conjugate()));
        let rev = (a * b).reverse().max_abs_diff(&(a.reverse() * b.reverse()));
        let twice = a.conjugate().conjugate().max_abs_diff(&a).max(a.reverse().reverse().max_abs_diff(&a));
        t.record(conj.max(rev).max(twice));
    }
    Outcome::from_tally(t, cfg.exact_tol())
}

fn projection_length(cfg: &SuiteConfig) -> Outcome {
    let mut r = rng(cfg, "projection-length");
    let mut t = Tally::new();
    for _ in 0..bicomplex_samples(cfg) {
        let s = random_bicomplex(&mut r, 1.0);
        match s.involution_projections() {
            Ok(h) => {
                let len = s.squared_length();
                let xi2: f64 = h.xi().iter().map(|x| x * x).sum();
                t.record((xi2 - len * len).abs().max((h.len_sq - len).abs()));
            }
            Err(e) => t.flag(e.to_string()),
        }
    }
    Outcome::from_tally(t, cfg.exact_tol())
}

fn exp_additivity(cfg: &SuiteConfig) -> Outcome {
    let mut r = rng(cfg, "exp-additivity");
    let mut t = Tally::new();
    for _ in 0..bicomplex_samples(cfg) {
        let (a, b) = (random_bicomplex(&mut r, 1.0), random_bicomplex(&mut r, 1.0));
        let sum = (a + b).exp();
        let scale = 1.0 + sum.squared_length().sqrt();
        t.record((a.exp() * b.exp()).max_abs_diff(&sum) / scale);
    }
    Outcome::from_tally(t, cfg.exact_tol())
}

// charts

fn per_chart(
    cfg: &SuiteConfig,
    label: &str,
    tol: f64,
    mut f: impl FnMut(&ChartPoint, &mut Tally),
) -> Outcome {
    let mut t = Tally::new();
    for chart in ChartId::ALL {
        for p in chart_points(cfg, label, chart, chart_samples(cfg)) {
            f(&p, &mut t);
        }
    }
    Outcome::from_tally(t, tol)
}

fn basis_closed(cfg: &SuiteConfig) -> Outcome {
    per_chart(cfg, "basis-closed-form", cfg.exact_tol(), |p, t| {
        match (basis(p), basis_closed_form(p)) {
            (Ok((a0, a1)), Ok((b0, b1))) => {
                let gap = (a0 - b0).abs().max().max((a1 - b1).abs().max());
                t.record(gap / (1.0 + b0.norm().max(b1.norm())));
            }
            (Err(e), _) | (_, Err(e)) => t.flag(e.to_string()),
        }
    })
}

fn metric_values(cfg: &SuiteConfig) -> Outcome {
    per_chart(cfg, "metric-values", cfg.tol, |p, t| {
        let expected = match p.chart {
            ChartId::Cartesian => Matrix2::identity(),
            ChartId::Polar => Matrix2::new(1.0, 0.0, 0.0, p.y0 * p.y0),
            ChartId::Holographic => Matrix2::new(p.y0.cos().powi(2), 0.0, 0.0, p.y0.sin().powi(2)),
            ChartId::Conformal => Matrix2::identity() * (2.0 * p.y0).exp(),
        };
        match (metric(p), metric_closed_form(p)) {
            (Ok(g), Ok(closed)) => t.record(matrix_gap(&g, &expected).max(matrix_gap(&closed, &expected))),
            (Err(e), _) | (_, Err(e)) => t.flag(e.to_string()),
        }
    })
}

fn jacobian_inverse(cfg: &SuiteConfig) -> Outcome {
    per_chart(cfg, "jacobian-inverse", cfg.tol, |p, t| {
        match (jacobian_lower(p), jacobian_mixed(p), jacobian_mixed_closed_form(p)) {
            (Ok(lower), Ok(mixed), Ok(closed)) => {
                let id = Matrix2::identity();
                let left = matrix_gap(&(lower * mixed.transpose()), &id);
                let right = matrix_gap(&(mixed.transpose() * lower), &id);
                t.record(left.max(right).max(matrix_gap(&mixed, &closed)));
            }
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => t.flag(e.to_string()),
        }
    })
}

fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

fn embed_invert(cfg: &SuiteConfig) -> Outcome {
    per_chart(cfg, "embed-invert", cfg.tol, |p, t| {
        match embed(p).and_then(|x| invert(p.chart, &x)) {
            Ok(q) => {
                let y1 = if p.chart == ChartId::Cartesian {
                    (q.y1 - p.y1).abs()
                } else {
                    angle_gap(q.y1, p.y1)
                };
                t.record(((q.y0 - p.y0).abs() / (1.0 + p.y0.abs())).max(y1));
            }
            Err(e) => t.flag(e.to_string()),
        }
    })
}

fn null_compactification(cfg: &SuiteConfig) -> Outcome {
    let mut r = rng(cfg, "null-compactification");
    let mut t = Tally::new();
    for _ in 0..bicomplex_samples(cfg) {
        let (x0, x1) = (uniform(&mut r, -3.0, 3.0), uniform(&mut r, -3.0, 3.0));
        let raw = compactify(x0, x1, false);
        let scale = (1.0 + x0 * x0 + x1 * x1).powi(2);
        let sphere = compactify(x0, x1, true);
        let norm = (sphere.u0 * sphere.u0 + sphere.u1 * sphere.u1 + sphere.u2 * sphere.u2).sqrt();
        t.record((raw.minkowski_square().abs() / scale).max(sphere.minkowski_square().abs()).max((norm - 1.0).abs()));
    }
    Outcome::from_tally(t, cfg.exact_tol())
}

/// Richardson ratios must lie in this band around 4.
const RATIO_BAND: f64 = 0.2;

fn special_conformal_order(cfg: &SuiteConfig) -> Outcome {
    let mut r = rng(cfg, "special-conformal");
    let eps = 1e-3;
    let mut t = Tally::new();
    for _ in 0..cfg.samples {
        let x = annulus(&mut r, 0.3, 2.0);
        let dir = Complex64::from_polar(1.0, uniform(&mut r, 0.0, TAU));
        let x = Vector2::new(x.re, x.im);
        let q = [GeneratorId::Q0, GeneratorId::Q1].map(|g| {
            generator(g, Realization::Chart(ChartId::Cartesian)).coefficients_at([c(x[0]), c(x[1])])
        });
        let defect = |e: f64| -> Result<f64, String> {
            let cvec = Vector2::new(e * dir.re, e * dir.im);
            let moved = special_conformal(&x, &cvec).map_err(|e| e.to_string())?;
            let first = Vector2::new(
                cvec[0] * q[0][0].re + cvec[1] * q[1][0].re,
                cvec[0] * q[0][1].re + cvec[1] * q[1][1].re,
            );
            Ok((moved - (x - first)).norm())
        };
        match (defect(eps), defect(eps / 2.0)) {
            (Ok(a), Ok(b)) => t.record((a / b - 4.0).abs()),
            (Err(e), _) | (_, Err(e)) => t.flag(e),
        }
    }
    Outcome::from_tally(t, RATIO_BAND)
}

// laplace

fn solution_residuals(cfg: &SuiteConfig) -> Outcome {
    let mut r = rng(cfg, "solution-residuals/alpha");
    let mut t = Tally::new();
    for chart in ChartId::ALL {
        for p in chart_points(cfg, "solution-residuals", chart, cfg.samples) {
            let alpha = scale_dimension(&mut r);
            match (residual(alpha, chart, &p), solve(alpha, chart, &p)) {
                (Ok(res), Ok(v)) => t.record(res / (1.0 + v.norm())),
                (Err(e), _) | (_, Err(e)) => t.flag(e.to_string()),
            }
        }
    }
    Outcome::from_tally(t, cfg.tol)
}

fn harmonic_ratio(cfg: &SuiteConfig) -> Outcome {
    let grid = chart_points(cfg, "harmonic-ratio", ChartId::Holographic, cfg.samples);
    let mut t = Tally::new();
    let mut means = Vec::new();
    for l in 1..=4 {
        for branch in [HarmonicBranch::Highest, HarmonicBranch::Lowest] {
            match ylm_ratio(l, &grid, branch) {
                Ok(h) => {
                    t.record(h.relative_spread);
                    if branch == HarmonicBranch::Highest {
                        means.push(format!("l={l}: {:.12}", h.mean.re));
                    }
                }
                Err(e) => t.flag(e.to_string()),
            }
        }
    }
    Outcome::from_tally(t, cfg.tol).with_detail(format!("Y_l^l/υ^l {}", means.join(", ")))
}

/// A random cubic in (x₀, x₁) with real coefficients.
fn random_cubic(r: &mut SampleRng) -> [f64; 10] {
    std::array::from_fn(|_| uniform(r, -1.0, 1.0))
}

fn cubic_jet(k: &[f64; 10], x: &[Jet; 2]) -> Jet {
    let [a, b] = *x;
    let monomials = [
        Jet::constant(1.0),
        a,
        b,
        a * a,
        a * b,
        b * b,
        a * a * a,
        a * a * b,
        a * b * b,
        b * b * b,
    ];
    monomials.iter().zip(k).fold(Jet::zero(), |acc, (m, c)| acc + *m * *c)
}

fn rescaled_operator(cfg: &SuiteConfig) -> Outcome {
    let mut r = rng(cfg, "rescaled-operator/poly");
    let mut t = Tally::new();
    for chart in [ChartId::Polar, ChartId::Holographic, ChartId::Conformal] {
        for p in chart_points(cfg, "rescaled-operator", chart, cfg.samples) {
            let k = random_cubic(&mut r);
            let pulled = ScalarField::new(move |y| cubic_jet(&k, &embedding_jets(chart, y)));
            let flat = ScalarField::new(move |x| cubic_jet(&k, x));
            let x = match embed(&p) {
                Ok(x) => x,
                Err(e) => {
                    t.flag(e.to_string());
                    continue;
                }
            };
            let q = ChartPoint { chart: ChartId::Cartesian, y0: x[0], y1: x[1] };
            match (laplacian(chart, &pulled, &p), laplacian(ChartId::Cartesian, &flat, &q)) {
                (Ok(lhs), Ok(rhs)) => t.record(rel(lhs, rhs * rescaling_factor(&p))),
                (Err(e), _) | (_, Err(e)) => t.flag(e.to_string()),
            }
        }
    }
    Outcome::from_tally(t, cfg.tol)
}

fn chart_consistency(cfg: &SuiteConfig) -> Outcome {
    let mut r = rng(cfg, "chart-consistency");
    let mut t = Tally::new();
    for _ in 0..cfg.samples {
        let alpha = scale_dimension(&mut r);
        // inside the unit disk so the holographic chart covers it
        let z = annulus(&mut r, 0.2, 0.95);
        let x = Vector2::new(z.re, z.im);
        let values: Result<Vec<Complex64>, String> = ChartId::ALL
            .iter()
            .map(|&chart| {
                let p = invert(chart, &x).map_err(|e| e.to_string())?;
                solve(alpha, chart, &p).map_err(|e| e.to_string())
            })
            .collect();
        match values {
            Ok(v) => t.record(v[1..].iter().map(|w| rel(*w, v[0])).fold(0.0, f64::max)),
            Err(e) => t.flag(e),
        }
    }
    Outcome::from_tally(t, cfg.tol)
}

fn holomorphy(cfg: &SuiteConfig) -> Outcome {
    let mut r = rng(cfg, "holomorphy/alpha");
    let mut t = Tally::new();
    for p in chart_points(cfg, "holomorphy", ChartId::Cartesian, cfg.samples) {
        let alpha = scale_dimension(&mut r);
        let field = SolutionFamily::new(alpha, ChartId::Cartesian).field();
        let jet = field.jet_at_point(&p);
        let scale = 1.0 + jet.d(0).norm();
        t.record(conjugate_derivative(&field, p.y0, p.y1).norm() / scale);
    }
    Outcome::from_tally(t, cfg.tol)
}

// algebra

fn sampled_realizations(cfg: &SuiteConfig, label: &str) -> Vec<SampledFields> {
    let mut out: Vec<SampledFields> = ChartId::ALL
        .iter()
        .map(|&chart| SampledFields::at_chart_points(chart, &chart_points(cfg, label, chart, cfg.samples)))
        .collect();
    out.push(SampledFields::on_line(&line_points(cfg, &format!("{label}/line"), cfg.samples)));
    out
}

fn structure_tables(cfg: &SuiteConfig) -> Outcome {
    let expected = documented_field_signs();
    let mut t = Tally::new();
    let mut ledgers: Vec<SignLedger> = Vec::new();
    for r in sampled_realizations(cfg, "structure-tables") {
        match structure_table(&r, cfg.tol) {
            Ok(l) => {
                t.record(l.max_defect());
                if l.signs() != expected {
                    t.flag(format!("{} ledger differs from the documented one", l.realization));
                }
                ledgers.push(l);
            }
            Err(e) => t.flag(e.to_string()),
        }
    }
    if ledgers.windows(2).any(|w| w[0].signs() != w[1].signs()) {
        t.flag("ledgers differ between realizations");
    }
    Outcome::from_tally(t, cfg.tol).with_ledgers(ledgers)
}

fn pushforward(cfg: &SuiteConfig) -> Outcome {
    per_chart(cfg, "pushforward", cfg.tol, |p, t| {
        for g in GeneratorId::ALL {
            match pushforward_from_flat(g, p) {
                Ok(v) => {
                    let got = generator(g, Realization::Chart(p.chart)).coefficients_at(coords(p));
                    t.record(rel(got[0], c(v[0])).max(rel(got[1], c(v[1]))));
                }
                Err(e) => t.flag(e.to_string()),
            }
        }
    })
}

fn eigenactions(cfg: &SuiteConfig) -> Outcome {
    let mut r = rng(cfg, "eigenactions/alpha");
    let mut t = Tally::new();
    for chart in ChartId::ALL {
        for g in GeneratorId::ALL {
            for p in chart_points(cfg, &format!("eigenactions/{g}"), chart, cfg.samples) {
                let alpha = scale_dimension(&mut r);
                match (act(g, alpha, &p), expected_action(g, alpha, &p)) {
                    (Ok(a), Ok(b)) => t.record(rel(a, b)),
                    (Err(e), _) | (_, Err(e)) => t.flag(e.to_string()),
                }
            }
        }
    }
    Outcome::from_tally(t, cfg.tol)
}

fn degree_shift(cfg: &SuiteConfig) -> Outcome {
    let mut t = Tally::new();
    let p0 = generator(GeneratorId::P0, Realization::UpsilonLine);
    let q0 = generator(GeneratorId::Q0, Realization::UpsilonLine);
    for u in line_points(cfg, "degree-shift", cfg.samples) {
        for n in 0..=8u32 {
            let mono = ScalarField::new(move |y| y[0].powi(n));
            let at = [u, c(0.0)];
            let down = p0.apply(&mono).jet_at(at).value();
            let up = q0.apply(&mono).jet_at(at).value();
            let nf = n as f64;
            let lower = if n == 0 { c(0.0) } else { nf * u.powu(n - 1) };
            t.record(rel(down, lower).max(rel(up, nf * u.powu(n + 1))));
        }
    }
    Outcome::from_tally(t, cfg.tol)
}

fn random_element<R: LieRealization>(r: &R, rng: &mut SampleRng) -> R::Element {
    let gens: Vec<R::Element> = GeneratorId::ALL.iter().filter_map(|g| r.generator(*g)).collect();
    let weights: Vec<f64> = gens.iter().map(|_| uniform(rng, -1.0, 1.0)).collect();
    let terms: Vec<(f64, &R::Element)> = weights.iter().copied().zip(gens.iter()).collect();
    r.combine(&terms)
}

fn jacobi(cfg: &SuiteConfig) -> Outcome {
    let mut rng_ = rng(cfg, "jacobi/weights");
    let mut t = Tally::new();
    let triples = 5.max(cfg.samples / 10);
    for r in sampled_realizations(cfg, "jacobi") {
        for g in GeneratorId::ALL {
            for h in GeneratorId::ALL {
                for k in GeneratorId::ALL {
                    if g < h && h < k {
                        let [x, y, z] = [g, h, k].map(|g| r.generator(g).expect("field generator"));
                        t.record(jacobi_defect(&r, &x, &y, &z));
                    }
                }
            }
        }
        for _ in 0..triples {
            let [x, y, z] = [(); 3].map(|_| random_element(&r, &mut rng_));
            t.record(jacobi_defect(&r, &x, &y, &z));
        }
    }
    Outcome::from_tally(t, cfg.tol)
}

fn format_metric(g: &[f64; 4]) -> String {
    let signs: Vec<&str> = g.iter().map(|x| if *x > 0.0 { "+" } else { "-" }).collect();
    format!("({})", signs.join(""))
}

fn so31_metric(cfg: &SuiteConfig) -> Outcome {
    let mut t = Tally::new();
    let mut ledgers = Vec::new();
    let realizations = sampled_realizations(cfg, "so31-metric");
    for r in &realizations {
        let conformal = match structure_table(r, cfg.tol) {
            Ok(l) => l,
            Err(e) => {
                t.flag(e.to_string());
                continue;
            }
        };
        for g in diagonal_sign_patterns() {
            let result = minkowski_check(r, g, &conformal, cfg.tol);
            match (g == MINKOWSKI, result) {
                (true, Ok(l)) => {
                    t.record(l.max_defect());
                    if r.realization() == Realization::Chart(ChartId::Cartesian) {
                        ledgers.push(l);
                    }
                }
                (true, Err(e)) => t.flag(e.to_string()),
                (false, Ok(_)) => t.flag(format!("{} also closes with {}", r.label(), format_metric(&g))),
                (false, Err(_)) => {}
            }
        }
    }
    Outcome::from_tally(t, cfg.tol).with_ledgers(ledgers)
}

fn angular_tensor_check(cfg: &SuiteConfig) -> Outcome {
    let points = line_points(cfg, "angular-tensor", cfg.samples);
    let line = SampledFields::on_line(&points);
    let mut t = Tally::new();
    let Some(basis) = so31_pack(&line) else {
        t.flag("υ-line realization lacks a generator");
        return Outcome::from_tally(t, cfg.tol);
    };
    for (i, u) in points.iter().enumerate() {
        match angular_tensor(*u) {
            Ok(m) => {
                let mut worst = m.antisymmetry_defect();
                for (k, &(mu, nu)) in SO31_PAIRS.iter().enumerate() {
                    worst = worst.max(rel(basis.elements[k][i][0].value() / u, m.get(mu, nu)));
                }
                t.record(worst);
            }
            Err(e) => t.flag(e.to_string()),
        }
    }
    Outcome::from_tally(t, cfg.tol)
}

fn paravector_substitution(cfg: &SuiteConfig) -> Outcome {
    let holo = Realization::Chart(ChartId::Holographic);
    let u = SolutionFamily::new(1.0, ChartId::Holographic).field();
    let inv = SolutionFamily::new(-1.0, ChartId::Holographic).field();
    let pairs = [
        (paravector_substitute(&u.re(), &u.im()), generator(GeneratorId::Q0, holo)),
        (paravector_substitute(&inv.re(), &inv.im()), generator(GeneratorId::P0, holo)),
        (
            paravector_substitute(&ScalarField::constant(1.0), &ScalarField::constant(0.0)),
            generator(GeneratorId::B, holo),
        ),
    ];
    let mut t = Tally::new();
    for p in chart_points(cfg, "paravector-substitution", ChartId::Holographic, cfg.samples) {
        for (sub, gen) in &pairs {
            let (a, b) = (sub.coefficients_at(coords(&p)), gen.coefficients_at(coords(&p)));
            t.record(rel(a[0], b[0]).max(rel(a[1], b[1])));
        }
    }
    Outcome::from_tally(t, cfg.exact_tol())
        .with_detail("real part of υ taken as cos φ sin θ".to_string())
}

fn tangent_curve_check(cfg: &SuiteConfig) -> Outcome {
    let b = generator(GeneratorId::B, Realization::Chart(ChartId::Holographic));
    let u = SolutionFamily::new(1.0, ChartId::Holographic).field();
    let bu = b.apply(&u);
    let eps = 1e-3;
    let mut t = Tally::new();
    for p in chart_points(cfg, "tangent-curve", ChartId::Holographic, cfg.samples) {
        let gap = |e: f64| -> Result<f64, String> {
            let a = tangent_curve(e, &p).map_err(|e| e.to_string())?;
            let s = sine_expansion(e, &p).map_err(|e| e.to_string())?;
            Ok((a - s).norm())
        };
        match (tangent_curve_velocity(&p), gap(eps), gap(eps / 2.0)) {
            (Ok(v), Ok(g1), Ok(g2)) => {
                t.record(rel(v, bu.value_at(&p)));
                if (g1 / g2 - 4.0).abs() > RATIO_BAND {
                    t.flag(format!("second-order ratio {:.3} at θ = {:.3}", g1 / g2, p.y0));
                }
            }
            (Err(e), _, _) => t.flag(e.to_string()),
            (_, Err(e), _) | (_, _, Err(e)) => t.flag(e),
        }
    }
    Outcome::from_tally(t, cfg.tol)
}

// projective

fn matrix_ledgers(cfg: &SuiteConfig) -> Outcome {
    let mut t = Tally::new();
    let line = SampledFields::on_line(&line_points(cfg, "matrix-ledgers", cfg.samples));
    let line_ledger = match structure_table(&line, cfg.tol) {
        Ok(l) => l,
        Err(e) => {
            t.flag(e.to_string());
            return Outcome::from_tally(t, cfg.exact_tol());
        }
    };
    let mut ledgers = Vec::new();
    for ring in Ring::ALL {
        match matrix_bracket_table(ring, cfg.exact_tol()) {
            Ok(l) => {
                t.record(l.max_defect());
                let ok = match ring {
                    Ring::Bicomplex => l.entries.len() == 15 && l.entries.iter().all(|e| e.sign == 1),
                    Ring::Real | Ring::Complex => l.negates(&line_ledger),
                };
                if !ok {
                    t.flag(format!("{ring} ledger has unexpected signs"));
                }
                ledgers.push(l);
            }
            Err(e) => t.flag(e.to_string()),
        }
    }
    ledgers.push(line_ledger);
    Outcome::from_tally(t, cfg.exact_tol()).with_ledgers(ledgers)
}

fn complexify_gap<R: SpinRing>(i: R, t: &mut Tally) {
    let m = |g| matrix_rep::<R>(g).expect("full ring");
    t.record(m(GeneratorId::S01).distance(&m(GeneratorId::B).scale(i)));
    t.record(m(GeneratorId::P1).distance(&m(GeneratorId::P0).scale(i)));
    t.record(m(GeneratorId::Q1).distance(&m(GeneratorId::Q0).scale(-i)));
    for g in GeneratorId::ALL {
        t.record(m(g).trace().norm());
    }
}

fn complexification(cfg: &SuiteConfig) -> Outcome {
    let mut t = Tally::new();
    complexify_gap(Complex64::i(), &mut t);
    complexify_gap(Bicomplex::I, &mut t);
    for g in [GeneratorId::B, GeneratorId::P0, GeneratorId::Q0] {
        t.record(matrix_rep::<f64>(g).map(|m| m.trace().abs()).unwrap_or(f64::NAN));
    }
    Outcome::from_tally(t, cfg.exact_tol())
}

fn det_gap<R: SpinRing>(g: GeneratorId, eps: f64, t: &mut Tally) {
    match exp_one_param::<R>(g, eps) {
        Ok(m) => t.record((m.det() - R::one()).norm()),
        Err(crate::projective::ProjectiveError::Unsupported { .. }) => {}
        Err(e) => t.flag(e.to_string()),
    }
}

fn special_linear(cfg: &SuiteConfig) -> Outcome {
    let mut r = rng(cfg, "special-linear");
    let mut t = Tally::new();
    for _ in 0..cfg.samples {
        let eps = uniform(&mut r, -2.0, 2.0);
        for g in GeneratorId::ALL {
            det_gap::<f64>(g, eps, &mut t);
            det_gap::<Complex64>(g, eps, &mut t);
            det_gap::<Bicomplex>(g, eps, &mut t);
        }
    }
    Outcome::from_tally(t, cfg.exact_tol())
}

fn random_group_element(r: &mut SampleRng) -> SpinMatrix<Complex64> {
    let mut m = SpinMatrix::identity();
    for _ in 0..3 {
        let g = GeneratorId::ALL[(uniform(r, 0.0, 6.0) as usize).min(5)];
        m = m * exp_one_param::<Complex64>(g, uniform(r, -1.0, 1.0)).expect("complex ring");
    }
    m
}

fn mobius_action(cfg: &SuiteConfig) -> Outcome {
    let mut r = rng(cfg, "mobius-action");
    let mut t = Tally::new();
    let mut poles = 0;
    for _ in 0..cfg.samples {
        let (m, n) = (random_group_element(&mut r), random_group_element(&mut r));
        let u = annulus(&mut r, 0.3, 2.0);
        match (mobius_apply(&(m * n), u), mobius_apply(&n, u).and_then(|v| mobius_apply(&m, v))) {
            (Ok(a), Ok(b)) => t.record(rel(a, b)),
            _ => poles += 1,
        }
    }
    let out = Outcome::from_tally(t, cfg.tol);
    if poles > 0 {
        out.with_detail(format!("{poles} samples hit a pole"))
    } else {
        out
    }
}

/// Second-order bound on the flow defect: |defect| ≤ FLOW_BOUND ε² (1 + |υ|)³.
const FLOW_BOUND: f64 = 10.0;

fn flow_consistency_check(cfg: &SuiteConfig) -> Outcome {
    let eps = 1e-3;
    let points = line_points(cfg, "flow-consistency", cfg.samples);
    let mut t = Tally::new();
    let mut summary = Vec::new();
    for g in GeneratorId::ALL {
        let mut ratios: Vec<f64> = Vec::new();
        let mut affine = 0;
        for u in &points {
            match (flow_consistency(g, *u, eps), flow_consistency(g, *u, eps / 2.0)) {
                (Ok(a), Ok(b)) => {
                    let bound = FLOW_BOUND * eps * eps * (1.0 + u.norm()).powi(3);
                    if a > bound {
                        t.flag(format!("{g}: defect {a:e} above {bound:e}"));
                    }
                    if a == 0.0 && b == 0.0 {
                        // the flow is exactly affine
                        affine += 1;
                        t.record(0.0);
                    } else {
                        let ratio = a / b;
                        t.record((ratio - 4.0).abs());
                        ratios.push(ratio);
                    }
                }
                (Err(e), _) | (_, Err(e)) => t.flag(format!("{g}: {e}")),
            }
        }
        if ratios.is_empty() {
            summary.push(format!("{g}: exact ({affine} samples)"));
        } else {
            let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
            summary.push(format!("{g}: ratio {mean:.4}"));
        }
    }
    Outcome::from_tally(t, RATIO_BAND).with_detail(summary.join(", "))
}

fn hopf_identities(cfg: &SuiteConfig) -> Outcome {
    let mut r = rng(cfg, "hopf-identities");
    let mut t = Tally::new();
    for _ in 0..cfg.samples {
        let s = S3Point::new(
            uniform(&mut r, -1.0, 1.0),
            uniform(&mut r, -1.0, 1.0),
            uniform(&mut r, -1.0, 1.0),
            uniform(&mut r, -1.0, 1.0),
        );
        let lambda = uniform(&mut r, 0.0, TAU);
        let raw = hopf_map(&s);
        let norm = (raw.norm() - s.squared_length()).abs();
        let unit = match hopf(&s) {
            Ok(h) => (h.norm() - 1.0).abs(),
            Err(e) => {
                t.flag(e.to_string());
                continue;
            }
        };
        let rotated = hopf_map(&s.fiber_rotate(lambda));
        let fiber = (0..3).map(|k| (rotated.xi()[k] - raw.xi()[k]).abs()).fold(0.0, f64::max);
        let agree = match s.to_bicomplex().involution_projections() {
            Ok(b) => (0..3)
                .map(|k| (b.xi()[k] - raw.xi()[k]).abs())
                .fold((b.len_sq - raw.len_sq).abs(), f64::max),
            Err(e) => {
                t.flag(e.to_string());
                continue;
            }
        };
        t.record(norm.max(unit).max(fiber).max(agree));
    }
    Outcome::from_tally(t, cfg.exact_tol())
}

fn chart_transitions(cfg: &SuiteConfig) -> Outcome {
    let mut r = rng(cfg, "chart-transition");
    let mut t = Tally::new();
    for _ in 0..cfg.samples {
        let (v1, v2) = (annulus(&mut r, 0.1, 2.0), annulus(&mut r, 0.1, 2.0));
        let p = match ProjectivePoint::new(v1, v2) {
            Ok(p) => p,
            Err(e) => {
                t.flag(e.to_string());
                continue;
            }
        };
        match chart_transition(&p) {
            Ok(tr) => {
                let a = ProjectivePoint { v1: tr.chart0.0, v2: tr.chart0.1 };
                let b = ProjectivePoint { v1: tr.chart1.0, v2: tr.chart1.1 };
                let same = a.equivalent(&p, cfg.exact_tol()) && b.equivalent(&p, cfg.exact_tol());
                if !same {
                    t.flag("chart representatives disagree");
                }
                let ratio = v1 / v2;
                t.record((tr.transition.norm() - 1.0).abs().max(rel(tr.transition * ratio.norm(), ratio)));
            }
            Err(e) => t.flag(e.to_string()),
        }
    }
    Outcome::from_tally(t, cfg.exact_tol())
}
