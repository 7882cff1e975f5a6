//! Algebraic invariants of the symbol calculus.

use birkhoff::phasepoly::{
    moyal_bracket, normal_to_weyl, poisson_bracket, star_product, weyl_to_normal, MonomialKey,
    PhasePoly,
};
use num_complex::Complex64;
use proptest::prelude::*;

const TOL: f64 = 1e-10;

fn term(n: usize) -> impl Strategy<Value = (MonomialKey, Complex64)> {
    (
        0u32..2,
        proptest::collection::vec(0u32..3, n),
        proptest::collection::vec(0u32..3, n),
        0u32..2,
        -2i32..=2,
        -1.0f64..1.0,
        -1.0f64..1.0,
    )
        .prop_map(|(p, j, k, m, d, re, im)| (MonomialKey::new(p, j, k, m, d), Complex64::new(re, im)))
}

fn poly(n: usize) -> impl Strategy<Value = PhasePoly> {
    proptest::collection::vec(term(n), 1..4).prop_map(move |ts| PhasePoly::from_terms(n, ts))
}

fn triple() -> impl Strategy<Value = (PhasePoly, PhasePoly, PhasePoly)> {
    (1usize..3).prop_flat_map(|n| (poly(n), poly(n), poly(n)))
}

fn pair() -> impl Strategy<Value = (PhasePoly, PhasePoly)> {
    (1usize..3).prop_flat_map(|n| (poly(n), poly(n)))
}

fn scale(ps: &[&PhasePoly]) -> f64 {
    ps.iter().map(|p| p.max_abs()).fold(1.0, f64::max).powi(3)
}

fn real_part(p: &PhasePoly) -> PhasePoly {
    let mut r = p.clone();
    r.add_assign_poly(&p.conjugate());
    r.scale_real(0.5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poisson_antisymmetric((f, g) in pair()) {
        let s = &poisson_bracket(&f, &g) + &poisson_bracket(&g, &f);
        prop_assert!(s.max_abs() <= TOL * scale(&[&f, &g]));
    }

    #[test]
    fn moyal_antisymmetric((f, g) in pair()) {
        let s = &moyal_bracket(&f, &g) + &moyal_bracket(&g, &f);
        prop_assert!(s.max_abs() <= TOL * scale(&[&f, &g]));
    }

    #[test]
    fn poisson_jacobi((f, g, h) in triple()) {
        let a = poisson_bracket(&f, &poisson_bracket(&g, &h));
        let b = poisson_bracket(&g, &poisson_bracket(&h, &f));
        let c = poisson_bracket(&h, &poisson_bracket(&f, &g));
        let s = &(&a + &b) + &c;
        prop_assert!(s.max_abs() <= TOL * scale(&[&f, &g, &h]));
    }

    #[test]
    fn moyal_jacobi((f, g, h) in triple()) {
        let a = moyal_bracket(&f, &moyal_bracket(&g, &h));
        let b = moyal_bracket(&g, &moyal_bracket(&h, &f));
        let c = moyal_bracket(&h, &moyal_bracket(&f, &g));
        let s = &(&a + &b) + &c;
        prop_assert!(s.max_abs() <= 1e-9 * scale(&[&f, &g, &h]));
    }

    #[test]
    fn star_associative((f, g, h) in triple()) {
        let a = star_product(&star_product(&f, &g), &h);
        let b = star_product(&f, &star_product(&g, &h));
        prop_assert!(a.max_abs_diff(&b) <= 1e-9 * scale(&[&f, &g, &h]));
    }

    #[test]
    fn moyal_leading_slice_is_poisson((f, g) in pair()) {
        // On hbar-free inputs the hbar^0 part of the Moyal bracket is the Poisson bracket.
        let f0 = f.hbar_slice(0);
        let g0 = g.hbar_slice(0);
        let m = moyal_bracket(&f0, &g0).hbar_slice(0);
        prop_assert!(m.max_abs_diff(&poisson_bracket(&f0, &g0)) <= TOL * scale(&[&f, &g]));
    }

    #[test]
    fn bracket_grading((f, g) in pair()) {
        // Order is additive minus two under both brackets.
        let (of, og) = (f.max_order().unwrap(), g.max_order().unwrap());
        for br in [poisson_bracket(&f, &g), moyal_bracket(&f, &g)] {
            if let Some(o) = br.max_order() {
                prop_assert!(o + 2 <= of + og);
            }
            if let (Some(lo), Some(a), Some(b)) = (br.min_order(), f.min_order(), g.min_order()) {
                prop_assert!(lo + 2 >= a + b);
            }
        }
    }

    #[test]
    fn brackets_preserve_reality((f, g) in pair()) {
        let (f, g) = (real_part(&f), real_part(&g));
        prop_assert!(poisson_bracket(&f, &g).is_real(TOL * scale(&[&f, &g])));
        prop_assert!(moyal_bracket(&f, &g).is_real(TOL * scale(&[&f, &g])));
    }

    #[test]
    fn normal_order_round_trip(f in (1usize..3).prop_flat_map(poly)) {
        let back = normal_to_weyl(&weyl_to_normal(&f));
        prop_assert!(back.max_abs_diff(&f) <= TOL * scale(&[&f]));
    }
}
