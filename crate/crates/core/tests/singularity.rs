use immcalc_core::singularity::{
    jacobian_entries, phi_tilde, symbolic_elimination, verify_no_rank2, BumpFunction, Profile,
};
use num_rational::Ratio;
use proptest::prelude::*;

fn bump(c: Ratio<i64>, p: Profile) -> BumpFunction {
    BumpFunction::new(c, p).unwrap()
}

/// Five-point central differences. The bump's higher derivatives are large
/// near the band edges, so the plain two-point stencil's `h^2` error term
/// alone can exceed the tolerance.
fn finite_difference(x: f64, y: f64, b: &BumpFunction, h: f64) -> [[f64; 2]; 2] {
    let d = |f: &dyn Fn(f64) -> (f64, f64)| {
        let (p2, p1, m1, m2) = (f(2.0 * h), f(h), f(-h), f(-2.0 * h));
        let s = |a: f64, b: f64, c: f64, e: f64| (-a + 8.0 * b - 8.0 * c + e) / (12.0 * h);
        (s(p2.0, p1.0, m1.0, m2.0), s(p2.1, p1.1, m1.1, m2.1))
    };
    let dx = d(&|e| phi_tilde(x + e, y, b));
    let dy = d(&|e| phi_tilde(x, y + e, b));
    [[dx.0, dy.0], [dx.1, dy.1]]
}

#[test]
fn outside_the_band_the_map_is_squaring() {
    let b = bump(Ratio::new(1, 20), Profile::ExpSquared);
    for k in 0..100 {
        let t = k as f64 * std::f64::consts::TAU / 100.0;
        for r in [0.71, 0.8, 0.95, 1.0] {
            let (x, y) = (r * t.cos(), r * t.sin());
            assert_eq!(phi_tilde(x, y, &b), (x * x - y * y, 2.0 * x * y));
        }
    }
}

#[test]
fn sweeps_pass_for_all_cutoffs_and_profiles() {
    for p in Profile::ALL {
        for c in [Ratio::new(1, 100), Ratio::new(1, 20), Ratio::new(1, 10)] {
            let r = verify_no_rank2(256, &bump(c, p), 1e-6).unwrap();
            assert!(r.ok, "{p} c={c}");
        }
    }
    assert!(symbolic_elimination(Ratio::new(1, 100)).ok);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn closed_form_jacobian_matches_finite_differences(
        r in 0.0f64..0.999,
        t in 0.0f64..std::f64::consts::TAU,
        c in prop_oneof![Just(Ratio::new(1, 100)), Just(Ratio::new(1, 20)), Just(Ratio::new(1, 10))],
        p in prop_oneof![Just(Profile::Exp), Just(Profile::ExpSquared)],
    ) {
        let h = 1e-4;
        let b = bump(c, p);
        let (x, y) = (r * t.cos(), r * t.sin());
        let j = jacobian_entries(x, y, &b);
        let fd = finite_difference(x, y, &b, h);
        for i in 0..2 {
            for k in 0..2 {
                prop_assert!((j[i][k] - fd[i][k]).abs() <= 10.0 * h * h, "entry ({i},{k}) at ({x},{y}): {} vs {}", j[i][k], fd[i][k]);
            }
        }
    }
}
