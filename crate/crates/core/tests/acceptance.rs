//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line with the measured
//! quantities before asserting. Run with `--nocapture` to see the lines.

mod common;

use std::time::Instant;

use birkhoff::fermi::{
    determinant_sums, fermi_periodic, fermi_schrodinger, invariants_from, loop_data,
    reconstruct_symplectic, williamson, XPoly,
};
use birkhoff::inversion::{
    harmonic_levels, identifiable_part, invert_general, invert_schrodinger, recover_frequencies,
    schrodinger_observables, synthesize_trace, unmix_trace, SpectrumList,
};
use birkhoff::linalg::{block_rotation, j_matrix, max_abs, symplectic_from_factors};
use birkhoff::normalform::{
    angle_shift, birkhoff, realize_angle_shift, HamiltonianSpec, NormalFormResult, Setting,
};
use birkhoff::observables::{average_family, kernel_point, observable_family, trace_kernel_u};
use birkhoff::phasepoly::{
    lie_transform, moyal_bracket, poisson_bracket, ActionKey, ActionPoly, Caps, Mode, MonomialKey,
    PhasePoly,
};
use common::fock::{weyl_operator, CMat};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(n: u32, pass: bool, detail: &str) {
    println!("criterion {n:>2}: {} {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {n} failed: {detail}");
}

fn random_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize) -> DMatrix<f64> {
    DMatrix::from_fn(r, c, |_, _| rng.gen_range(-1.0..1.0))
}

fn random_symplectic(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    let a = random_matrix(rng, n, n) + DMatrix::identity(n, n) * 2.0;
    symplectic_from_factors(&a, &random_matrix(rng, n, n), &random_matrix(rng, n, n))
}

/// All `x^a xi^b` with `|a| + |b|` in `degrees`, each with a uniform coefficient in `[-c, c]`.
fn random_phase(rng: &mut ChaCha8Rng, n: usize, degrees: &[u32], c: f64) -> PhasePoly {
    let mut out = PhasePoly::new(n);
    for &deg in degrees {
        for e in exponents(2 * n, deg) {
            out.add_assign_poly(&PhasePoly::x_xi(n, &e[..n], &e[n..]).scale_real(rng.gen_range(-c..c)));
        }
    }
    out
}

/// Exponent vectors of length `len` summing to `total`.
fn exponents(len: usize, total: u32) -> Vec<Vec<u32>> {
    if len == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in exponents(len - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[test]
fn criterion_01_williamson() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let start = Instant::now();
    let (mut symp, mut diag, mut spec) = (0.0f64, 0.0f64, 0.0f64);
    for trial in 0..100 {
        let n = 1 + trial % 4;
        let m = random_matrix(&mut rng, 2 * n, 2 * n);
        let a = &m * m.transpose() + DMatrix::identity(2 * n, 2 * n) * 0.5;
        let f = williamson(&a).unwrap();
        let j = j_matrix(n);
        symp = symp.max(max_abs(&(f.s.transpose() * &j * &f.s - &j)));
        let mut d = DMatrix::zeros(2 * n, 2 * n);
        for (i, l) in f.lambda.iter().enumerate() {
            d[(i, i)] = *l;
            d[(n + i, n + i)] = *l;
        }
        diag = diag.max(max_abs(&(f.s.transpose() * &a * &f.s - d)));
        // Symplectic eigenvalues are the moduli of the eigenvalues of J A, each appearing twice.
        let mut im: Vec<f64> = (&j * &a).complex_eigenvalues().iter().map(|z| z.im.abs()).collect();
        im.sort_by(|p, q| p.partial_cmp(q).unwrap());
        for (i, l) in f.lambda.iter().enumerate() {
            spec = spec.max((im[2 * i] - l).abs()).max((im[2 * i + 1] - l).abs());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = symp <= 1e-10 && diag <= 1e-9 && spec <= 1e-10 && secs < 1.0;
    verdict(
        1,
        pass,
        &format!("symplectic {symp:.1e}, diagonal {diag:.1e}, spectrum {spec:.1e}, {secs:.3} s"),
    );
}

#[test]
fn criterion_02_determinant_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut worst = 0.0f64;
    let mut defect = 0.0f64;
    for trial in 0..1000 {
        let n = 1 + trial % 4;
        let s = random_symplectic(&mut rng, n);
        let j = j_matrix(n);
        defect = defect.max(max_abs(&(s.transpose() * &j * &s - &j)));
        for v in determinant_sums(&s) {
            worst = worst.max((v - 1.0).abs());
        }
    }
    verdict(2, worst <= 1e-10, &format!("max |sum det - 1| {worst:.1e} (input defect {defect:.1e})"));
}

#[test]
fn criterion_03_invariant_reconstruction() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let (mut symp, mut inv, mut rot) = (0.0f64, 0.0f64, 0.0f64);
    for trial in 0..100 {
        let n = 2 + trial % 2;
        let s = random_symplectic(&mut rng, n);
        let fam = invariants_from(&s);
        let rec = reconstruct_symplectic(&fam).unwrap();
        let j = j_matrix(n);
        symp = symp.max(max_abs(&(rec.t.transpose() * &j * &rec.t - &j)));
        inv = inv.max(invariants_from(&rec.t).max_abs_diff(&fam));
        let u = s.clone().try_inverse().unwrap() * &rec.t;
        let angles: Vec<f64> = (0..n).map(|k| u[(n + k, k)].atan2(u[(k, k)])).collect();
        rot = rot.max(max_abs(&(u - block_rotation(&angles))));
    }
    let pass = symp <= 1e-10 && inv <= 1e-8 && rot <= 1e-8;
    verdict(3, pass, &format!("symplectic {symp:.1e}, invariants {inv:.1e}, block rotation {rot:.1e}"));
}

#[test]
fn criterion_04_harmonic_fixed_point() {
    let cases = [
        HamiltonianSpec::well(&[1.0], 0.0, &PhasePoly::new(1), Caps::order(8)),
        HamiltonianSpec::well(&[1.0, 2f64.sqrt()], 0.3, &PhasePoly::new(2), Caps::order(6)),
        HamiltonianSpec::well(&[1.0, 2f64.sqrt(), 3f64.sqrt()], 0.0, &PhasePoly::new(3), Caps::order(6)),
        HamiltonianSpec::periodic(&[0.7], 0.0, &PhasePoly::new(1), Caps::new(6, 2)),
    ];
    let mut ok = true;
    let mut worst = 0.0f64;
    for spec in &cases {
        let mut want = ActionPoly::new(spec.n());
        for (key, c) in spec.hamiltonian.iter() {
            // Every diagonal key of the harmonic model has the form hbar^p A^l tau^m.
            let l: Vec<u32> = key.j.clone();
            want.add_term(ActionKey::new(key.p, l, key.m), *c);
        }
        for mode in [Mode::Classical, Mode::Quantum] {
            let nf = birkhoff(spec, mode, spec.caps.order).unwrap();
            let d = nf.h_symbol.max_abs_diff(&spec.hamiltonian).max(nf.h.max_abs_diff(&want));
            worst = worst.max(d);
            ok &= d == 0.0 && nf.generators.iter().all(|g| g.is_empty()) && nf.normal_form_residual == 0.0;
        }
    }
    verdict(4, ok, &format!("max coefficient difference {worst:e}, generators empty"));
}

fn fock_levels(eps: f64, hbar: f64, dim: usize) -> Vec<f64> {
    let big = dim + 4;
    let mut a = DMatrix::<f64>::zeros(big, big);
    for k in 1..big {
        a[(k - 1, k)] = (k as f64 * hbar).sqrt();
    }
    let ad = a.transpose();
    let x = (&a + &ad) * 0.5f64.sqrt();
    let d = &ad - &a;
    let xi2 = -(&d * &d) * 0.5;
    let x2 = &x * &x;
    let h = (&x2 + &xi2) * 0.5 + (&x2 * &x2) * eps;
    let h = h.view((0, 0), (dim, dim)).into_owned();
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|p, q| p.partial_cmp(q).unwrap());
    ev
}

#[test]
fn criterion_05_quantum_bnf_vs_fock() {
    let start = Instant::now();
    let eps = 0.05;
    let spec = HamiltonianSpec::well(&[1.0], 0.0, &PhasePoly::x(1, 0).pow(4).scale_real(eps), Caps::order(8));
    let nf = birkhoff(&spec, Mode::Quantum, 8).unwrap();
    let hbars = [0.02, 0.01, 0.005];
    let errs: Vec<f64> = hbars
        .iter()
        .map(|&hbar| {
            let ev = fock_levels(eps, hbar, 200);
            (0..=4)
                .map(|mu| (nf.h.eval(&[(mu as f64 + 0.5) * hbar], 0.0, hbar).re - ev[mu]).abs())
                .fold(0.0, f64::max)
        })
        .collect();
    let secs = start.elapsed().as_secs_f64();
    let consts: Vec<f64> = errs.iter().zip(hbars).map(|(e, h)| e / h.powi(3)).collect();
    let ratios = [errs[0] / errs[1], errs[1] / errs[2]];
    let in_window = ratios.iter().all(|r| (6.0..=10.0).contains(r));
    let pass = in_window && secs < 10.0;
    verdict(
        5,
        pass,
        &format!(
            "errors {:.2e} {:.2e} {:.2e}, C = err/hbar^3 {:.1e} {:.1e} {:.1e}, halving ratios {:.1} {:.1} \
             (window [6, 10]), {secs:.2} s",
            errs[0], errs[1], errs[2], consts[0], consts[1], consts[2], ratios[0], ratios[1]
        ),
    );
}

#[test]
fn criterion_06_classical_quantum_consistency() {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let mut worst = 0.0f64;
    for trial in 0..20 {
        let n = 1 + trial % 2;
        let order = 4 + 2 * (trial as u32 % 2);
        let theta: Vec<f64> = if n == 1 {
            vec![rng.gen_range(0.5..2.0)]
        } else {
            vec![1.0, rng.gen_range(1.3..1.9)]
        };
        let degrees: Vec<u32> = (3..=order).collect();
        let pert = random_phase(&mut rng, n, &degrees, 0.05);
        let spec = HamiltonianSpec::well(&theta, 0.0, &pert, Caps::order(order));
        let c = birkhoff(&spec, Mode::Classical, order).unwrap();
        let q = birkhoff(&spec, Mode::Quantum, order).unwrap();
        worst = worst.max(q.h.hbar_slice(0).max_abs_diff(&c.h));
    }
    verdict(6, worst <= 1e-10, &format!("max |hbar^0 slice - classical| {worst:.1e} over 20 wells"));
}

fn schrodinger_error(v: &XPoly, order: u32) -> f64 {
    let n = v.terms.keys().next().unwrap().len();
    let frame = fermi_schrodinger(v, order).unwrap();
    let spec = HamiltonianSpec::well(&frame.theta, frame.energy, &frame.remainder.to_phase(), Caps::order(order));
    let nf = birkhoff(&spec, Mode::Quantum, order).unwrap();
    let data = average_family(&nf, &schrodinger_observables(n), order).unwrap();
    let got = invert_schrodinger(&nf.h, &data, &frame.theta, Mode::Quantum, order, 1e-9).unwrap();
    let back = frame.potential_from_remainder(&got.remainder, order);
    let want = v.from_degree(3);
    let scale = want.terms.values().fold(0.0f64, |a, c| a.max(c.abs()));
    back.from_degree(3).max_abs_diff(&want) / scale
}

#[test]
fn criterion_07_schrodinger_round_trip() {
    let v1 = XPoly::from_terms(1, [(vec![2], 0.5), (vec![3], 0.1), (vec![4], 0.02)]);
    let e1 = schrodinger_error(&v1, 6);
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let mut v2 = XPoly::from_terms(2, [(vec![2, 0], 0.5), (vec![0, 2], 1.0)]);
    for e in exponents(2, 3) {
        v2.add_term(e, rng.gen_range(-0.1..0.1));
    }
    let e2 = schrodinger_error(&v2, 4);
    verdict(7, e1 <= 1e-8 && e2 <= 1e-6, &format!("n=1 order 6: {e1:.1e}; n=2 order 4: {e2:.1e}"));
}

fn general_error(spec: &HamiltonianSpec, mode: Mode, order: u32) -> f64 {
    let band = spec.caps.fourier_band;
    let nf = birkhoff(spec, mode, order).unwrap();
    let family = observable_family(spec.n(), order, band, spec.setting == Setting::Periodic);
    let data = average_family(&nf, &family, order).unwrap();
    let got = invert_general(&nf.h, &data, &spec.theta, spec.setting, mode, order, band, 1e-9).unwrap();
    let want = spec.hamiltonian.up_to_order(order);
    got.hamiltonian.max_abs_diff(&want) / want.max_abs()
}

#[test]
fn criterion_08_general_well_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let pert = random_phase(&mut rng, 2, &[3, 4], 0.05);
    let spec = HamiltonianSpec::well(&[1.0, 2f64.sqrt()], 0.0, &pert, Caps::order(4));
    let ec = general_error(&spec, Mode::Classical, 4);
    let eq = general_error(&spec, Mode::Quantum, 4);
    verdict(8, ec <= 1e-6 && eq <= 1e-6, &format!("classical {ec:.1e}, quantum {eq:.1e}"));
}

#[test]
fn criterion_09_periodic_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let mut pert = PhasePoly::new(1);
    for mono in exponents(2, 3) {
        let base = PhasePoly::x_xi(1, &mono[..1], &mono[1..]);
        for d in 0..=2 {
            pert.add_assign_poly(&base.mul_poly(&PhasePoly::cos_mode(1, d)).scale_real(rng.gen_range(-0.05..0.05)));
            if d > 0 {
                pert.add_assign_poly(&base.mul_poly(&PhasePoly::sin_mode(1, d)).scale_real(rng.gen_range(-0.05..0.05)));
            }
        }
    }
    let spec = HamiltonianSpec::periodic(&[0.7], 0.0, &pert, Caps::new(4, 2));
    let e = general_error(&spec, Mode::Classical, 4);
    verdict(9, e <= 1e-6, &format!("relative error {e:.1e}"));
}

#[test]
fn criterion_10_frequency_recovery() {
    let theta = [1.0, 2f64.sqrt(), 3f64.sqrt()];
    let levels = harmonic_levels(&theta, 1.0, 300);
    let exact = recover_frequencies(&SpectrumList { levels: levels.clone(), hbar: 1.0 }, 3, 1e-9).unwrap();
    let e0 = exact.theta.iter().zip(theta).map(|(g, t)| (g - t).abs()).fold(0.0, f64::max);
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    let noisy: Vec<f64> = levels.iter().map(|l| l + rng.gen_range(-1e-7..1e-7)).collect();
    let got = recover_frequencies(&SpectrumList { levels: noisy, hbar: 1.0 }, 3, 1e-6).unwrap();
    let e1 = got.theta.iter().zip(theta).map(|(g, t)| (g - t).abs()).fold(0.0, f64::max);
    verdict(10, e0 <= 1e-9 && e1 <= 1e-6, &format!("exact {e0:.1e}, noisy {e1:.1e}"));
}

#[test]
fn criterion_11_angle_shift() {
    let mut rng = ChaCha8Rng::seed_from_u64(111);
    let mut worst = 0.0f64;
    let cases: [(Vec<f64>, Vec<i32>); 3] = [(vec![0.3], vec![1]), (vec![0.3], vec![-2]), (vec![0.4, 0.55], vec![1, -1])];
    for (theta, k) in cases {
        let n = theta.len();
        for order in 3..=6u32 {
            let degrees: Vec<u32> = (3..=order).collect();
            let base = random_phase(&mut rng, n, &degrees, 0.05);
            let mut pert = base.mul_poly(&PhasePoly::cos_mode(n, 1));
            pert.add_assign_poly(&base.up_to_order(3).mul_poly(&PhasePoly::sin_mode(n, 2)).scale_real(0.5));
            // The shift moves Fourier indices by `(j - k) . k`, so the band must hold every shifted term.
            let caps = Caps::new(order, 32);
            let spec = HamiltonianSpec::periodic(&theta, 0.0, &pert, caps);
            let nf = birkhoff(&spec, Mode::Classical, order).unwrap();
            let shifted = realize_angle_shift(&nf, &k).unwrap();
            let mut moved = angle_shift(&spec.hamiltonian, &k);
            moved.set_caps(caps);
            let direct = birkhoff(
                &HamiltonianSpec { setting: Setting::Periodic, theta: shifted.theta.clone(), hamiltonian: moved, caps },
                Mode::Classical,
                order,
            )
            .unwrap();
            worst = worst.max(direct.h_symbol.max_abs_diff(&shifted.h_symbol));
            worst = worst.max(direct.h.max_abs_diff(&shifted.h));
        }
    }
    verdict(11, worst <= 1e-10, &format!("conjugated vs recomputed {worst:.1e}, orders 3..6"));
}

/// `max |{H0, F_q} - G_q + G1_q|` recomputed from the generator pieces of a normal form.
fn homological_check(spec: &HamiltonianSpec, nf: &NormalFormResult) -> f64 {
    let h0 = spec.harmonic();
    let mut h = spec.hamiltonian.clone();
    h.set_caps(nf.caps);
    let mut f = PhasePoly::with_caps(spec.n(), nf.caps);
    let mut worst = 0.0f64;
    for (i, piece) in nf.generators.iter().enumerate() {
        let q = 3 + i as u32;
        let t = lie_transform(&h, &f, nf.mode, Caps::new(q, nf.caps.fourier_band)).unwrap();
        let g = t.order_part(q);
        let solve = piece.scale_real(-1.0);
        let r = &(&poisson_bracket(&h0, &solve) - &g) + &g.diagonal_part();
        worst = worst.max(r.max_abs());
        f.add_assign_poly(piece);
    }
    worst
}

#[test]
fn criterion_12_homological_residual() {
    let mut rng = ChaCha8Rng::seed_from_u64(112);
    let mut specs = Vec::new();
    for n in 1..=2 {
        let theta: Vec<f64> = [1.0, 2f64.sqrt()][..n].to_vec();
        let pert = random_phase(&mut rng, n, &[3, 4, 5, 6], 0.05);
        specs.push(HamiltonianSpec::well(&theta, 0.0, &pert, Caps::order(6)));
    }
    let cubic = random_phase(&mut rng, 1, &[3], 0.05).mul_poly(&PhasePoly::cos_mode(1, 1));
    specs.push(HamiltonianSpec::periodic(&[0.7], 0.0, &cubic, Caps::new(6, 4)));
    let (mut reported, mut recomputed) = (0.0f64, 0.0f64);
    for spec in &specs {
        for mode in [Mode::Classical, Mode::Quantum] {
            let nf = birkhoff(spec, mode, spec.caps.order).unwrap();
            reported = nf.homological_residuals.iter().fold(reported, |a, r| a.max(*r));
            recomputed = recomputed.max(homological_check(spec, &nf));
        }
    }
    verdict(
        12,
        reported <= 1e-12 && recomputed <= 1e-12,
        &format!("reported {reported:.1e}, recomputed {recomputed:.1e}"),
    );
}

#[test]
fn criterion_13_moyal_vs_fock() {
    const DIM: usize = 40;
    const INNER: usize = 20;
    let hbar = 0.1;
    let mut rng = ChaCha8Rng::seed_from_u64(113);
    let random_poly = |rng: &mut ChaCha8Rng| {
        let mut p = PhasePoly::new(1);
        for _ in 0..4 {
            let j = rng.gen_range(0..=6u32);
            let k = rng.gen_range(0..=6 - j);
            let hb = u32::from(j + k + 2 <= 6 && rng.gen_bool(0.3));
            p.add_term(
                MonomialKey::new(hb, vec![j], vec![k], 0, 0),
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            );
        }
        p
    };
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let f = random_poly(&mut rng);
        let g = random_poly(&mut rng);
        let of = weyl_operator(&f, DIM, hbar);
        let og = weyl_operator(&g, DIM, hbar);
        let comm: CMat = (&of * &og - &og * &of) / Complex64::new(0.0, hbar);
        let sym = weyl_operator(&moyal_bracket(&f, &g), DIM, hbar);
        for i in 0..INNER {
            for j in 0..INNER {
                worst = worst.max((comm[(i, j)] - sym[(i, j)]).norm());
            }
        }
    }
    verdict(13, worst <= 1e-9, &format!("max entry difference {worst:.1e} on the lowest {INNER} states"));
}

#[test]
fn criterion_14_trace_unmixing() {
    let theta = [1.0, 2f64.sqrt()];
    let mut rng = ChaCha8Rng::seed_from_u64(114);
    let mut b = ActionPoly::new(2);
    for k0 in 0..=3u32 {
        for k1 in 0..=3 - k0 {
            for m in 0..=3 - k0 - k1 {
                let s = 3 - k0 - k1 - m;
                b.add_term(
                    ActionKey::new(s, vec![k0, k1], m),
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                );
            }
        }
    }
    assert_eq!(b.len(), 20);
    let times: Vec<i64> = (1..=200).collect();
    let samples = synthesize_trace(&b, &theta, &times, 3).unwrap();
    let got = unmix_trace(&samples, &theta, 3, 1e-8).unwrap();
    let literal = got.b.max_abs_diff(&b) / b.max_abs();
    let ident = identifiable_part(&b, &theta);
    let projected = got.b.max_abs_diff(&ident) / ident.max_abs();
    let mut fd = 0.0f64;
    for l in [1.0, 2.0, 5.0, 17.0] {
        for (k, m) in [([1, 0], 0), ([0, 1], 0), ([0, 0], 1), ([1, 1], 1), ([2, 0], 1), ([0, 1], 2), ([3, 0], 0)] {
            let exact = trace_kernel_u(&k, m, &kernel_point(l, &theta), &theta);
            let approx = common::kernel::kernel_derivative(&k, m, l, &theta, 1e-2);
            fd = fd.max((exact - approx).norm() / exact.norm());
        }
    }
    let pass = literal <= 1e-6 && projected <= 1e-6 && fd <= 1e-6;
    verdict(
        14,
        pass,
        &format!(
            "all 20 coefficients {literal:.1e}; identifiable projection {projected:.1e}; \
             kernel vs finite differences {fd:.1e}"
        ),
    );
}

#[test]
fn criterion_15_periodic_frames() {
    let a = DMatrix::from_row_slice(2, 2, &[1.2, 0.3, -0.1, 0.9]);
    let b = DMatrix::from_row_slice(2, 2, &[0.2, 0.1, 0.1, -0.3]);
    let c = DMatrix::from_row_slice(2, 2, &[0.05, 0.0, 0.0, 0.1]);
    let s0 = symplectic_from_factors(&a, &b, &c);
    let m = 256;
    let two_pi = 2.0 * std::f64::consts::PI;
    let samples: Vec<DMatrix<f64>> = (0..m)
        .map(|g| &s0 * block_rotation(&[two_pi * g as f64 / m as f64, 0.0]))
        .collect();
    let (families, traces) = loop_data(&samples);
    let lp = fermi_periodic(&families, &traces).unwrap();
    let rate = lp.theta_dot.iter().map(|td| (td[0] - two_pi).abs().max(td[1].abs())).fold(0.0, f64::max);
    // One constant block rotation must carry the reconstructed loop onto the input loop.
    let fix = lp.frames[0].clone().try_inverse().unwrap() * &samples[0];
    let angles: Vec<f64> = (0..2).map(|k| fix[(2 + k, k)].atan2(fix[(k, k)])).collect();
    let is_rotation = max_abs(&(&fix - block_rotation(&angles)));
    let frames = lp.frames.iter().zip(&samples).map(|(f, s)| max_abs(&(f * &fix - s))).fold(0.0, f64::max);
    let pass = rate <= 1e-4 && frames <= 1e-4 && is_rotation <= 1e-4;
    verdict(
        15,
        pass,
        &format!("theta_dot error {rate:.1e}, loop error {frames:.1e}, constant rotation defect {is_rotation:.1e}"),
    );
}
