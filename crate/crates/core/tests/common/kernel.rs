//! Finite-difference oracle for derivatives of the trace kernel
//! `g(t, alpha) = prod_i e^{i t alpha_i / 2} / (1 - e^{i t alpha_i})`.

use num_complex::Complex64;

pub fn g(t: f64, alpha: &[f64]) -> Complex64 {
    alpha
        .iter()
        .map(|&a| {
            let e = Complex64::from_polar(1.0, t * a);
            Complex64::from_polar(1.0, t * a / 2.0) / (Complex64::new(1.0, 0.0) - e)
        })
        .product()
}

/// Central-difference weights for the `r`-th derivative, second-order accurate.
fn stencil(r: u32) -> Vec<(i32, f64)> {
    match r {
        0 => vec![(0, 1.0)],
        1 => vec![(-1, -0.5), (1, 0.5)],
        2 => vec![(-1, 1.0), (0, -2.0), (1, 1.0)],
        3 => vec![(-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)],
        4 => vec![(-2, 1.0), (-1, -4.0), (0, 6.0), (1, -4.0), (2, 1.0)],
        _ => panic!("stencil order {r} not tabulated"),
    }
}

/// Mixed partial `d_t^a d_alpha^k g` by a tensor-product stencil. The step is `h` in units of the
/// natural scale of each variable (`1/max|alpha|` for `t`, `1/|t|` for `alpha`).
fn mixed_partial_h(a: u32, k: &[u32], t: f64, alpha: &[f64], h: f64) -> Complex64 {
    let amax = alpha.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let steps: Vec<f64> = std::iter::once(h / amax.max(1.0))
        .chain(alpha.iter().map(|_| h / t.abs().max(1.0)))
        .collect();
    let mut orders = vec![a];
    orders.extend_from_slice(k);
    let stencils: Vec<Vec<(i32, f64)>> = orders.iter().map(|r| stencil(*r)).collect();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut idx = vec![0usize; stencils.len()];
    loop {
        let mut w = 1.0;
        let mut tt = t;
        let mut aa = alpha.to_vec();
        for (v, st) in stencils.iter().enumerate() {
            let (off, c) = st[idx[v]];
            w *= c / steps[v].powi(orders[v] as i32);
            if v == 0 {
                tt += off as f64 * steps[v];
            } else {
                aa[v - 1] += off as f64 * steps[v];
            }
        }
        acc += g(tt, &aa) * w;
        let mut v = 0;
        while v < idx.len() {
            idx[v] += 1;
            if idx[v] < stencils[v].len() {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
        if v == idx.len() {
            break;
        }
    }
    acc
}

/// Two Richardson levels on the stencil above: error `O(h^6)`.
pub fn mixed_partial(a: u32, k: &[u32], t: f64, alpha: &[f64], h: f64) -> Complex64 {
    let d0 = mixed_partial_h(a, k, t, alpha, h);
    let d1 = mixed_partial_h(a, k, t, alpha, h / 2.0);
    let d2 = mixed_partial_h(a, k, t, alpha, h / 4.0);
    let r0 = (d1 * 4.0 - d0) / 3.0;
    let r1 = (d2 * 4.0 - d1) / 3.0;
    (r1 * 16.0 - r0) / 15.0
}

/// `(-i d_t)^m ((-i/t)^{|k|} d_alpha^k g)` at `(t, alpha)` via the Leibniz rule in `t`.
pub fn kernel_derivative(k: &[u32], m: u32, t: f64, alpha: &[f64], h: f64) -> Complex64 {
    let kk: u32 = k.iter().sum();
    let mi = Complex64::new(0.0, -1.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 0..=m {
        let r = m - a;
        // d^r/dt^r t^{-K} = (-K)(-K-1)...(-K-r+1) t^{-K-r}.
        let fall: f64 = (0..r).map(|i| -(kk as f64) - i as f64).product();
        let binom = (0..a).fold(1.0, |c, i| c * (m - i) as f64 / (i + 1) as f64);
        acc += mixed_partial(a, k, t, alpha, h) * (binom * fall * t.powi(-(kk as i32) - r as i32));
    }
    acc * mi.powu(m) * mi.powu(kk)
}
