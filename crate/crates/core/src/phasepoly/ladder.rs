//! Conversions between Weyl symbols, normal-ordered ladder words and functions of `P`.
//!
//! Normal-ordered polynomials reuse [`PhasePoly`]: the key `hbar^p z^j zbar^k` stands for
//! `hbar^p (a^*)^k a^j`. Only the `z` variables are reordered; `t` and `tau` pass through.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::action::{ActionKey, ActionPoly};
use super::bracket::{factorial, falling, star_product};
use super::key::MonomialKey;
use super::poly::PhasePoly;

/// One factor of a ladder word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ladder {
    /// `a_i`, quantization of `z_i`.
    Lower(usize),
    /// `a_i^*`, quantization of `zbar_i`.
    Raise(usize),
}

/// Weyl symbol of a product of ladder operators, read left to right.
pub fn ladder_to_weyl(word: &[Ladder], n: usize) -> PhasePoly {
    let mut out = PhasePoly::constant(n, 1.0);
    for f in word {
        let key = match *f {
            Ladder::Lower(i) => MonomialKey::z_pow(n, i),
            Ladder::Raise(i) => MonomialKey::zbar_pow(n, i),
        };
        out = star_product(&out, &PhasePoly::monomial(key, Complex64::new(1.0, 0.0)));
    }
    out
}

/// Apply `exp(sign * hbar/2 * sum_i d_{z_i} d_{zbar_i})` termwise.
fn heat_flow(poly: &PhasePoly, sign: f64) -> PhasePoly {
    let n = poly.n();
    let mut out = poly.empty_like();
    for (key, c) in poly.iter() {
        let bounds: Vec<u32> = (0..n).map(|i| key.j[i].min(key.k[i])).collect();
        let mut r = vec![0u32; n];
        loop {
            let mut coef = 1.0;
            for (i, &ri) in r.iter().enumerate() {
                coef *= falling(key.j[i], ri) * falling(key.k[i], ri) / factorial(ri);
            }
            let tot: u32 = r.iter().sum();
            coef *= (0.5 * sign).powi(tot as i32);
            let new_key = MonomialKey {
                p: key.p + tot,
                j: (0..n).map(|i| key.j[i] - r[i]).collect(),
                k: (0..n).map(|i| key.k[i] - r[i]).collect(),
                m: key.m,
                d: key.d,
            };
            out.add_term(new_key, c * coef);
            let mut s = 0;
            while s < n {
                if r[s] < bounds[s] {
                    r[s] += 1;
                    break;
                }
                r[s] = 0;
                s += 1;
            }
            if s == n {
                break;
            }
        }
    }
    out
}

/// Normal-ordered expansion `sum c hbar^p (a^*)^k a^j` of a Weyl symbol.
pub fn weyl_to_normal(poly: &PhasePoly) -> PhasePoly {
    heat_flow(poly, 1.0)
}

/// Weyl symbol of a normal-ordered expansion.
pub fn normal_to_weyl(poly: &PhasePoly) -> PhasePoly {
    heat_flow(poly, -1.0)
}

/// Table `e[l][q]`: `Op((z zbar)^l) = sum_q e[l][q] hbar^q P^{l-q}` for one degree of freedom.
pub fn weyl_power_to_p(lmax: u32) -> Vec<Vec<f64>> {
    // w[a][q]: Weyl symbol of P^a is sum_q w[a][q] hbar^q (z zbar)^{a-q}.
    let zz = PhasePoly::monomial(MonomialKey::action(1, 0), Complex64::new(1.0, 0.0));
    let mut w: Vec<Vec<f64>> = Vec::new();
    let mut pow = PhasePoly::constant(1, 1.0);
    for a in 0..=lmax {
        let mut row = vec![0.0; a as usize + 1];
        for (k, v) in pow.iter() {
            let q = (a - k.j[0]) as usize;
            debug_assert_eq!(k.p as usize, q);
            row[q] = v.re;
        }
        w.push(row);
        pow = star_product(&pow, &zz);
    }
    // Invert the unit triangular relation.
    let mut e: Vec<Vec<f64>> = Vec::new();
    for l in 0..=lmax as usize {
        let mut row = vec![0.0; l + 1];
        row[0] = 1.0;
        for q in 1..=l {
            let c = w[l][q];
            if c == 0.0 {
                continue;
            }
            for (qq, &ev) in e[l - q].iter().enumerate() {
                row[q + qq] -= c * ev;
            }
        }
        e.push(row);
    }
    e
}

/// Table `w[a][q]`: the Weyl symbol of `P^a` is `sum_q w[a][q] hbar^q (z zbar)^{a-q}`.
pub fn p_power_to_weyl(amax: u32) -> Vec<Vec<f64>> {
    let e = weyl_power_to_p(amax);
    // Invert e back; done through the same triangular recursion.
    let mut w: Vec<Vec<f64>> = Vec::new();
    for a in 0..=amax as usize {
        let mut row = vec![0.0; a + 1];
        row[0] = 1.0;
        for q in 1..=a {
            let c = e[a][q];
            if c == 0.0 {
                continue;
            }
            for (qq, &wv) in w[a - q].iter().enumerate() {
                row[q + qq] -= c * wv;
            }
        }
        w.push(row);
    }
    w
}

/// Expand a product over degrees of freedom of one-dimensional tables into an action polynomial.
fn expand_product(
    n: usize,
    exps: &[u32],
    base_p: u32,
    s: u32,
    c: Complex64,
    table: &[Vec<f64>],
    out: &mut ActionPoly,
) {
    let mut q = vec![0u32; n];
    loop {
        let mut coef = c;
        let mut ok = true;
        for i in 0..n {
            let t = table[exps[i] as usize][q[i] as usize];
            if t == 0.0 {
                ok = false;
                break;
            }
            coef *= t;
        }
        if ok {
            let key = ActionKey::new(
                base_p + q.iter().sum::<u32>(),
                (0..n).map(|i| exps[i] - q[i]).collect(),
                s,
            );
            out.add_term(key, coef);
        }
        let mut idx = 0;
        while idx < n {
            if q[idx] < exps[idx] {
                q[idx] += 1;
                break;
            }
            q[idx] = 0;
            idx += 1;
        }
        if idx == n {
            break;
        }
    }
}

/// The function `f(P, D_t, hbar)` whose operator is the quantization of the diagonal part of a
/// Weyl symbol. Off-diagonal terms are ignored.
pub fn weyl_diagonal_to_operator(poly: &PhasePoly) -> ActionPoly {
    let n = poly.n();
    let lmax = poly
        .iter()
        .filter(|(k, _)| k.is_diagonal())
        .flat_map(|(k, _)| k.j.iter().copied())
        .max()
        .unwrap_or(0);
    let table = weyl_power_to_p(lmax);
    let mut out = ActionPoly::new(n);
    for (k, v) in poly.iter() {
        if k.is_diagonal() {
            expand_product(n, &k.j, k.p, k.m, *v, &table, &mut out);
        }
    }
    out.prune(0.0);
    out
}

/// Weyl symbol of the operator `f(P, D_t, hbar)`.
pub fn operator_to_weyl_diagonal(f: &ActionPoly) -> PhasePoly {
    let n = f.n();
    let amax = f.iter().flat_map(|(k, _)| k.l.iter().copied()).max().unwrap_or(0);
    let table = p_power_to_weyl(amax);
    let mut tmp = ActionPoly::new(n);
    for (k, v) in f.iter() {
        expand_product(n, &k.l, k.p, k.s, *v, &table, &mut tmp);
    }
    tmp.to_diagonal_symbol()
}
