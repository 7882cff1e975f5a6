//! Kernels of the trace formula near a periodic orbit.
//!
//! With `x_i = e^{i t alpha_i / 2}` and `h(x) = x/(1 - x^2)`, the kernel is
//! `g(t, alpha) = prod_i h(x_i)`. The operators `-i d/dt` and `-(i/t) d/d alpha_i` act on functions
//! of `x_i` as `(alpha_i/2) x d/dx` and `(1/2) x d/dx`, so every derivative reduces to
//! `E_r(x) = (x d/dx)^r h(x) = (Li_{-r}(x) - Li_{-r}(-x))/2`.

use num_complex::Complex64;

use crate::phasepoly::factorial;

/// Stirling numbers of the second kind `S(a, b)` for `a <= amax`.
fn stirling2(amax: usize) -> Vec<Vec<f64>> {
    let mut s = vec![vec![0.0; amax + 1]; amax + 1];
    s[0][0] = 1.0;
    for a in 1..=amax {
        for b in 1..=a {
            s[a][b] = b as f64 * s[a - 1][b] + s[a - 1][b - 1];
        }
    }
    s
}

/// `Li_{-r}(x) = sum_{k=0}^{r} k! S(r+1, k+1) (x/(1-x))^{k+1}`.
pub fn polylog_neg(r: u32, x: Complex64) -> Complex64 {
    let s = stirling2(r as usize + 1);
    let y = x / (Complex64::new(1.0, 0.0) - x);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut yp = y;
    for k in 0..=r as usize {
        acc += yp * (factorial(k as u32) * s[r as usize + 1][k + 1]);
        yp *= y;
    }
    acc
}

/// `E_r(x) = (x d/dx)^r [x/(1 - x^2)]`.
pub fn euler_derivative(r: u32, x: Complex64) -> Complex64 {
    (polylog_neg(r, x) - polylog_neg(r, -x)) * 0.5
}

/// The trace kernel `g(t, alpha) = e^{i t sum alpha/2} / prod (1 - e^{i t alpha_i})`.
pub fn trace_kernel(t: f64, alpha: &[f64]) -> Complex64 {
    alpha
        .iter()
        .map(|&a| {
            let x = Complex64::from_polar(1.0, t * a / 2.0);
            x / (Complex64::new(1.0, 0.0) - x * x)
        })
        .product()
}

/// `u^{(k,m)} = (-i d/dt)^m (-(i/t) d/d alpha)^k g` evaluated at `x_i = e^{i t theta_i/2}`.
pub fn trace_kernel_u(k: &[u32], m: u32, x: &[Complex64], theta: &[f64]) -> Complex64 {
    let n = k.len();
    let mut total = Complex64::new(0.0, 0.0);
    let mut s = vec![0u32; n];
    // Enumerate compositions s of m into n parts.
    loop {
        if s.iter().sum::<u32>() == m {
            let mut multinom = factorial(m);
            let mut term = Complex64::new(1.0, 0.0);
            for i in 0..n {
                multinom /= factorial(s[i]);
                term *= euler_derivative(k[i] + s[i], x[i])
                    * (0.5 * theta[i]).powi(s[i] as i32)
                    * 0.5f64.powi(k[i] as i32);
            }
            total += term * multinom;
        }
        let mut i = 0;
        while i < n && s[i] == m {
            s[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        s[i] += 1;
    }
    total
}

/// Kernel points `x_i = e^{i l theta_i / 2}` at time `l`.
pub fn kernel_point(l: f64, theta: &[f64]) -> Vec<Complex64> {
    theta
        .iter()
        .map(|&th| Complex64::from_polar(1.0, l * th / 2.0))
        .collect()
}
