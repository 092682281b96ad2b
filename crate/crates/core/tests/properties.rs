//! Property-based invariants for the series arithmetic and the sampled
//! geometry formulas.

use harmonic_radius::harmonic::{self, Coupling, DilatationSpec};
use harmonic_radius::psi::PsiSpec;
use harmonic_radius::series::PowerSeries;
use num_complex::Complex64;
use proptest::prelude::*;

fn coeff_vec() -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec(
        (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im)),
        1..12,
    )
}

fn series(v: Vec<Complex64>) -> PowerSeries {
    PowerSeries::new(v).expect("nonempty")
}

proptest! {
    #[test]
    fn mul_commutes(a in coeff_vec(), b in coeff_vec()) {
        let (a, b) = (series(a), series(b));
        prop_assert!(a.mul(&b).max_coeff_distance(&b.mul(&a)) < 1e-12);
    }

    #[test]
    fn add_is_associative(a in coeff_vec(), b in coeff_vec(), c in coeff_vec()) {
        let (a, b, c) = (series(a), series(b), series(c));
        let lhs = a.add(&b).add(&c);
        let rhs = a.add(&b.add(&c));
        prop_assert!(lhs.max_coeff_distance(&rhs) < 1e-12);
    }

    #[test]
    fn mul_distributes_over_add(a in coeff_vec(), b in coeff_vec(), c in coeff_vec()) {
        let (a, b, c) = (series(a), series(b), series(c));
        let n = a.order().min(b.order()).min(c.order());
        let lhs = a.mul(&b.add(&c)).truncated(n);
        let rhs = a.mul(&b).add(&a.mul(&c)).truncated(n);
        prop_assert!(lhs.max_coeff_distance(&rhs) < 1e-11);
    }

    #[test]
    fn derivative_of_integral_is_identity(a in coeff_vec()) {
        let s = series(a);
        let round = s.integrate0().derivative().truncated(s.order());
        prop_assert!(round.max_coeff_distance(&s) < 1e-12);
    }

    #[test]
    fn exp_of_negation_is_reciprocal(mut a in coeff_vec()) {
        a[0] = Complex64::ZERO;
        let s = series(a);
        let product = s.exp().unwrap().mul(&s.scale(-Complex64::ONE).exp().unwrap());
        let one = PowerSeries::from_real(&[1.0]).unwrap();
        prop_assert!(product.truncated(s.order()).max_coeff_distance(&one.truncated(s.order())) < 1e-9);
    }

    #[test]
    fn hadamard_commutes(a in coeff_vec(), b in coeff_vec()) {
        let (a, b) = (series(a), series(b));
        prop_assert!(a.hadamard(&b).max_coeff_distance(&b.hadamard(&a)) < 1e-15);
    }

    #[test]
    fn eval_is_additive(a in coeff_vec(), b in coeff_vec(),
                        re in -0.5..0.5f64, im in -0.5..0.5f64) {
        let (a, b) = (series(a), series(b));
        let n = a.order().min(b.order());
        let (a, b) = (a.truncated(n), b.truncated(n));
        let z = Complex64::new(re, im);
        prop_assert!((a.add(&b).eval(z) - (a.eval(z) + b.eval(z))).norm() < 1e-11);
    }

    #[test]
    fn recip_inverts(a in coeff_vec()) {
        prop_assume!(a[0].norm() > 0.3);
        let s = series(a);
        let product = s.mul(&s.recip().unwrap()).truncated(s.order());
        let one = PowerSeries::from_real(&[1.0]).unwrap().truncated(s.order());
        // conditioning degrades with small leading terms; 0.3 keeps it tame
        prop_assert!(product.max_coeff_distance(&one) < 1e-6);
    }

    #[test]
    fn mobius_dilatation_stays_in_disk(are in -0.9..0.9f64, aim in -0.9..0.9f64,
                                       r in 0.0..0.999f64, theta in 0.0..std::f64::consts::TAU) {
        let a = Complex64::new(are, aim);
        prop_assume!(a.norm() < 0.95);
        let phi = DilatationSpec::mobius(a).unwrap();
        prop_assert!(phi.eval(Complex64::from_polar(r, theta)).norm() < 1.0 + 1e-12);
    }
}

/// The analytic formula for d/dtheta arg f must agree with a centered
/// finite difference of the unwrapped argument.
#[test]
fn angular_derivative_matches_finite_difference() {
    let maps = [
        harmonic::build_harmonic(
            &PsiSpec::Lemniscate,
            &DilatationSpec::Identity,
            Coupling::Product,
            64,
        )
        .unwrap(),
        harmonic::build_harmonic(
            &PsiSpec::KappaExp,
            &DilatationSpec::mobius(Complex64::new(0.3, -0.2)).unwrap(),
            Coupling::Derivative,
            64,
        )
        .unwrap(),
        harmonic::build_harmonic(
            &PsiSpec::Exponential,
            &DilatationSpec::monomial(2, 0.7).unwrap(),
            Coupling::Product,
            64,
        )
        .unwrap(),
    ];
    let h = 1e-5;
    for f in &maps {
        for i in 0..40 {
            let r = 0.05 + 0.2 * (i % 5) as f64;
            let theta = std::f64::consts::TAU * i as f64 / 40.0;
            let z = Complex64::from_polar(r, theta);
            let analytic = {
                let num = z * f.h_prime(z) - (z * f.g_prime(z)).conj();
                (num / f.eval(z)).re
            };
            let arg_at = |t: f64| f.eval(Complex64::from_polar(r, t)).arg();
            let (mut ap, am) = (arg_at(theta + h), arg_at(theta - h));
            // nearest-branch continuation across the pi cut
            while ap - am > std::f64::consts::PI {
                ap -= std::f64::consts::TAU;
            }
            while am - ap > std::f64::consts::PI {
                ap += std::f64::consts::TAU;
            }
            let fd = (ap - am) / (2.0 * h);
            assert!(
                (analytic - fd).abs() < 1e-6,
                "{}: r={r} theta={theta}: {analytic} vs {fd}",
                f.label
            );
        }
    }
}

/// Jacobian sign equals the sense-preserving margin sign pointwise.
#[test]
fn jacobian_sign_matches_margin_sign() {
    let g = harmonic::counterexample_g();
    for i in 0..200 {
        let r = 0.9 * (i % 20 + 1) as f64 / 20.0;
        let theta = std::f64::consts::TAU * i as f64 / 200.0;
        let z = Complex64::from_polar(r, theta);
        let (hp, gp) = (g.h_prime(z).norm(), g.g_prime(z).norm());
        let margin = hp - gp;
        let jac = hp * hp - gp * gp;
        if margin.abs() > 1e-12 && jac.abs() > 1e-12 {
            assert_eq!(margin.signum(), jac.signum(), "at z = {z}");
        }
    }
}
