//! Convergence and consistency invariants of the numeric machinery.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use hyperstab_oracle::{
    build_circle, relative_error, trapezoid_periodic, Differentiator, SphereGrid, SphereMode,
};

type Vec3 = [f64; 3];

fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Random smooth tangent section: a low-degree trigonometric polynomial in
/// each ambient component, projected pointwise onto the tangent spaces.
fn random_tangent_section(im: &hyperstab_oracle::CircleImmersion, rng: &mut StdRng) -> Vec<Vec3> {
    let coeffs: Vec<[f64; 4]> = (0..6)
        .map(|_| {
            [
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ]
        })
        .collect();
    im.theta
        .iter()
        .zip(im.points.iter())
        .map(|(&t, x)| {
            let mut v = [0.0; 3];
            for (k, c) in coeffs.iter().enumerate() {
                let k = k as f64;
                v[0] += c[0] * (k * t).cos();
                v[1] += c[1] * (k * t).sin();
                v[2] += c[2] * (k * t).cos() + c[3] * (k * t).sin();
            }
            let proj = dot(&v, x);
            [v[0] - proj * x[0], v[1] - proj * x[1], v[2] - proj * x[2]]
        })
        .collect()
}

#[test]
fn laplacian_is_numerically_self_adjoint() {
    let im = build_circle(0.5, 256, -1.0, Differentiator::spectral()).unwrap();
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..20 {
        let s1 = random_tangent_section(&im, &mut rng);
        let s2 = random_tangent_section(&im, &mut rng);
        let l1 = im.rough_laplacian(&s1).unwrap();
        let l2 = im.rough_laplacian(&s2).unwrap();
        let lhs: Vec<f64> = l1.iter().zip(s2.iter()).map(|(a, b)| dot(a, b)).collect();
        let rhs: Vec<f64> = s1.iter().zip(l2.iter()).map(|(a, b)| dot(a, b)).collect();
        let lhs = trapezoid_periodic(&lhs) * im.a;
        let rhs = trapezoid_periodic(&rhs) * im.a;
        let scale = lhs.abs().max(rhs.abs()).max(1.0);
        assert!(
            (lhs - rhs).abs() / scale < 1e-9,
            "self-adjointness defect {}",
            (lhs - rhs).abs()
        );
    }
}

#[test]
fn bundle_norm_grid_convergence_fourth_order() {
    // with 4th-order differences the bundle-norm error drops at least 4x
    // per grid doubling until it reaches the spectral floor
    let reference = 97.0; // first norm at lambda = 4
    let err = |n: usize| -> f64 {
        let im = build_circle(0.5, n, -1.0, Differentiator::central4()).unwrap();
        relative_error(im.bundle_norms(1).unwrap().first, reference)
    };
    let e64 = err(64);
    let e128 = err(128);
    let e256 = err(256);
    assert!(e64 / e128 >= 4.0, "64->128: {e64:.3e} -> {e128:.3e}");
    assert!(e128 / e256 >= 4.0, "128->256: {e128:.3e} -> {e256:.3e}");
}

#[test]
fn bundle_norm_spectral_floor() {
    for n in [256usize, 512, 1024, 2048] {
        let im = build_circle(0.5, n, -1.0, Differentiator::spectral()).unwrap();
        let norms = im.bundle_norms(2).unwrap();
        assert!(
            relative_error(norms.third, 583057.0) < 1e-10,
            "n={n} third={}",
            norms.third
        );
    }
}

#[test]
fn second_variation_step_convergence() {
    // pre-Richardson error scales as h^2
    let im = build_circle(0.5, 2048, -1.0, Differentiator::spectral()).unwrap();
    let truth = 14052.0; // derived family at lambda = 4
    let err = |h: f64| -> f64 {
        let sv = im.second_variation(1, h, false).unwrap();
        (sv.value - truth).abs()
    };
    let e1 = err(4e-3);
    let e2 = err(2e-3);
    let e3 = err(1e-3);
    assert!(e1 / e2 > 3.5 && e1 / e2 < 4.5, "ratio {}", e1 / e2);
    assert!(e2 / e3 > 3.5 && e2 / e3 < 4.5, "ratio {}", e2 / e3);
}

#[test]
fn richardson_verdict_stable_across_steps() {
    let im = build_circle(0.5, 2048, -1.0, Differentiator::spectral()).unwrap();
    let a = im.second_variation(1, 1e-3, true).unwrap().value;
    let b = im.second_variation(1, 5e-4, true).unwrap().value;
    assert!(relative_error(a, 14052.0) < 1e-6);
    assert!(relative_error(b, 14052.0) < 1e-6);
}

#[test]
fn criticality_of_the_half_radius_circle() {
    let im = build_circle(0.5, 2048, -1.0, Differentiator::spectral()).unwrap();
    for j in [0u64, 1, 2] {
        let f = im.normalized_mode(j);
        let dv = im.first_variation(&f, 1e-5).unwrap();
        assert!(dv.abs() < 1e-6, "mode {j}: {dv}");
    }
}

#[test]
fn first_variation_matches_tension_closed_form() {
    // at t = 1 the tension coefficient is 2, the circumference sqrt(2) pi
    let a = 1.0 / 2.0f64.sqrt();
    let im = build_circle(a, 2048, -1.0, Differentiator::spectral()).unwrap();
    let ones = vec![1.0; im.n];
    let dv = im.first_variation(&ones, 1e-5).unwrap();
    let expected = -2.0 * 2.0f64.sqrt() * std::f64::consts::PI;
    assert!(relative_error(dv, expected) < 1e-4, "{dv} vs {expected}");
}

#[test]
fn discrete_bochner_on_the_circle() {
    // int |Hess f|^2 = lambda^2 - ricci lambda with ricci = 0 at m = 1;
    // the Hessian of cos(j theta) is f''/a^2 against the unit frame
    let im = build_circle(0.5, 1024, -1.0, Differentiator::spectral()).unwrap();
    for j in 1..=4u64 {
        let f = im.normalized_mode(j);
        let df = Differentiator::spectral().derivative(&f);
        let d2f = Differentiator::spectral().derivative(&df);
        let a2 = im.a * im.a;
        let integrand: Vec<f64> = d2f.iter().map(|v| (v / a2) * (v / a2)).collect();
        let numeric = trapezoid_periodic(&integrand) * im.a;
        let lambda = im.eigenvalue(j);
        assert!(
            relative_error(numeric, lambda * lambda) < 1e-8,
            "j={j}: {numeric} vs {}",
            lambda * lambda
        );
    }
}

#[test]
fn great_circle_second_variation_vanishes_at_first_mode() {
    let im = build_circle(1.0, 2048, -1.0, Differentiator::spectral()).unwrap();
    let sv = im.second_variation(1, 1e-3, true).unwrap();
    assert!(sv.value.abs() < 1e-4, "{}", sv.value);
}

#[test]
fn sphere_grid_convergence_is_at_floor() {
    for (nt, np) in [(16usize, 32usize), (24, 48), (32, 64)] {
        let g = SphereGrid::new(nt, np).unwrap();
        let r = g.curvature_term_integrals(SphereMode::Polar).unwrap();
        assert!(r.total.abs() < 1e-8, "nt={nt}: {}", r.total);
        for (v, c) in r.values().iter().zip(r.closed_forms().iter()) {
            assert!(relative_error(*v, *c) < 1e-9, "nt={nt}: {v} vs {c}");
        }
    }
}
