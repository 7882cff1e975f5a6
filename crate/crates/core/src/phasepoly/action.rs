use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::key::MonomialKey;
use super::poly::PhasePoly;

/// Exponents of `hbar^p A^l tau^s`, where `A_i` is an action (or the operator `P_i`) and `tau`
/// the energy variable conjugate to `t` (or `D_t`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ActionKey {
    pub p: u32,
    pub l: Vec<u32>,
    pub s: u32,
}

impl ActionKey {
    pub fn new(p: u32, l: Vec<u32>, s: u32) -> Self {
        Self { p, l, s }
    }

    /// Weighted order, counting each action, `tau` and `hbar` with weight 2.
    pub fn order(&self) -> u32 {
        2 * (self.p + self.l.iter().sum::<u32>() + self.s)
    }

    /// The diagonal phase-space key `hbar^p (z zbar)^l tau^s`.
    pub fn to_monomial(&self) -> MonomialKey {
        MonomialKey::new(self.p, self.l.clone(), self.l.clone(), self.s, 0)
    }
}

/// Polynomial in actions, `tau` and `hbar`: a normal form `h(A, tau, hbar)`, an averaged
/// observable, or Taylor data of a function of the commuting operators `P, D_t, hbar`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ActionPoly {
    n: usize,
    terms: BTreeMap<ActionKey, Complex64>,
}

impl ActionPoly {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, key: ActionKey, c: Complex64) {
        assert_eq!(key.l.len(), self.n, "action key has wrong dimension");
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        let e = self.terms.entry(key).or_default();
        *e += c;
    }

    pub fn get(&self, key: &ActionKey) -> Complex64 {
        self.terms.get(key).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ActionKey, &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Read the diagonal keys of a phase polynomial literally, `z_i zbar_i -> A_i`.
    pub fn from_diagonal_symbol(poly: &PhasePoly) -> Self {
        let mut out = Self::new(poly.n());
        for (k, v) in poly.iter() {
            if k.is_diagonal() {
                out.add_term(ActionKey::new(k.p, k.j.clone(), k.m), *v);
            }
        }
        out
    }

    /// Inverse of [`ActionPoly::from_diagonal_symbol`].
    pub fn to_diagonal_symbol(&self) -> PhasePoly {
        let mut out = PhasePoly::new(self.n);
        for (k, v) in &self.terms {
            out.add_term(k.to_monomial(), *v);
        }
        out
    }

    pub fn eval(&self, actions: &[f64], tau: f64, hbar: f64) -> Complex64 {
        assert_eq!(actions.len(), self.n, "wrong number of actions");
        self.terms
            .iter()
            .map(|(k, v)| {
                let mut x = hbar.powi(k.p as i32) * tau.powi(k.s as i32);
                for (a, &l) in actions.iter().zip(&k.l) {
                    x *= a.powi(l as i32);
                }
                v * x
            })
            .sum()
    }

    pub fn order_part(&self, r: u32) -> Self {
        self.filtered(|k| k.order() == r)
    }

    pub fn up_to_order(&self, r: u32) -> Self {
        self.filtered(|k| k.order() <= r)
    }

    /// Terms with exactly `hbar^p`, returned with the `hbar` power removed.
    pub fn hbar_slice(&self, p: u32) -> Self {
        let mut out = Self::new(self.n);
        for (k, v) in &self.terms {
            if k.p == p {
                out.add_term(ActionKey::new(0, k.l.clone(), k.s), *v);
            }
        }
        out
    }

    fn filtered<F: Fn(&ActionKey) -> bool>(&self, keep: F) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, v)| (k.clone(), *v))
                .collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = Self::new(self.n);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &ActionPoly) -> Self {
        assert_eq!(self.n, other.n, "degree-of-freedom mismatch");
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), *v);
        }
        out
    }

    pub fn sub(&self, other: &ActionPoly) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &ActionPoly) -> f64 {
        self.sub(other).max_abs()
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.im.abs() <= tol)
    }

    /// Drop coefficients below `rel_tol` times the largest coefficient of the same order.
    pub fn prune(&mut self, rel_tol: f64) {
        let mut scale: BTreeMap<u32, f64> = BTreeMap::new();
        for (k, v) in &self.terms {
            let e = scale.entry(k.order()).or_insert(0.0);
            *e = e.max(v.norm());
        }
        self.terms
            .retain(|k, v| v.norm() > rel_tol * scale[&k.order()]);
    }
}
