//! Closed-form trace-kernel derivatives against finite differences of the kernel itself.

mod common;

use birkhoff::observables::{kernel_point, trace_kernel, trace_kernel_u};
use common::kernel::{g, kernel_derivative};

fn check(k: &[u32], m: u32, t: f64, alpha: &[f64]) -> f64 {
    let exact = trace_kernel_u(k, m, &kernel_point(t, alpha), alpha);
    let fd = kernel_derivative(k, m, t, alpha, 1e-2);
    (exact - fd).norm() / exact.norm()
}

#[test]
fn kernel_value_matches_definition() {
    for &(t, a) in &[(1.0, [1.0, 2f64.sqrt()]), (3.0, [0.7, 1.3]), (-2.5, [1.1, 0.4])] {
        let lib = trace_kernel(t, &a);
        assert!((lib - g(t, &a)).norm() <= 1e-14 * lib.norm());
        let u = trace_kernel_u(&[0, 0], 0, &kernel_point(t, &a), &a);
        assert!((u - lib).norm() <= 1e-13 * lib.norm());
    }
}

#[test]
fn derivatives_match_at_integer_times() {
    let theta = [1.0, 2f64.sqrt()];
    for l in [1.0, 2.0, 5.0, 17.0] {
        for (k, m) in [([1, 0], 0), ([0, 1], 0), ([0, 0], 1), ([1, 1], 0), ([2, 0], 1), ([0, 0], 2), ([1, 1], 1), ([0, 2], 1), ([3, 0], 0)] {
            let e = check(&k, m, l, &theta);
            assert!(e <= 1e-6, "k={k:?} m={m} l={l}: {e:e}");
        }
    }
}

#[test]
fn derivatives_match_at_generic_points() {
    for (t, a) in [(0.8, [1.3, 0.6]), (2.3, [0.9, 1.7]), (4.1, [0.35, 1.05])] {
        for (k, m) in [([1, 0], 1), ([0, 2], 0), ([2, 1], 0), ([0, 1], 2)] {
            let e = check(&k, m, t, &a);
            assert!(e <= 1e-6, "k={k:?} m={m} t={t}: {e:e}");
        }
    }
}
