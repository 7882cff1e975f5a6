use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::key::{Caps, MonomialKey, TruncationReport};

/// Default relative zero tolerance used by [`PhasePoly::prune`].
pub const ZERO_TOL: f64 = 1e-12;

/// Sparse phase-space polynomial in `z, zbar, tau`, trigonometric in `t`, graded by weighted order.
///
/// Arithmetic respects the caps of the operands: terms above the order cap or outside the Fourier
/// band are dropped and counted in the truncation report.
#[derive(Clone, Debug)]
pub struct PhasePoly {
    n: usize,
    terms: BTreeMap<MonomialKey, Complex64>,
    caps: Caps,
    report: TruncationReport,
}

impl PartialEq for PhasePoly {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.terms == other.terms
    }
}

impl PhasePoly {
    pub fn new(n: usize) -> Self {
        Self::with_caps(n, Caps::UNBOUNDED)
    }

    pub fn with_caps(n: usize, caps: Caps) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
            caps,
            report: TruncationReport::default(),
        }
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (MonomialKey, Complex64)>,
    {
        let mut poly = Self::new(n);
        for (key, c) in terms {
            poly.add_term(key, c);
        }
        poly
    }

    pub fn monomial(key: MonomialKey, c: Complex64) -> Self {
        let mut poly = Self::new(key.n());
        poly.add_term(key, c);
        poly
    }

    pub fn constant(n: usize, c: f64) -> Self {
        Self::monomial(MonomialKey::one(n), Complex64::new(c, 0.0))
    }

    /// `sum_i theta_i z_i zbar_i`, the harmonic part in Fermi form.
    pub fn harmonic(theta: &[f64]) -> Self {
        let n = theta.len();
        let mut poly = Self::new(n);
        for (i, &th) in theta.iter().enumerate() {
            poly.add_term(MonomialKey::action(n, i), Complex64::new(th, 0.0));
        }
        poly
    }

    /// `sum_i theta_i z_i zbar_i + tau`, the harmonic part around a periodic orbit.
    pub fn harmonic_periodic(theta: &[f64]) -> Self {
        let mut poly = Self::harmonic(theta);
        poly.add_term(MonomialKey::tau(theta.len()), Complex64::new(1.0, 0.0));
        poly
    }

    /// Position coordinate `x_i = (z_i + zbar_i)/sqrt 2`.
    pub fn x(n: usize, i: usize) -> Self {
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::from_terms(
            n,
            [(MonomialKey::z_pow(n, i), s), (MonomialKey::zbar_pow(n, i), s)],
        )
    }

    /// Momentum coordinate `xi_i = (z_i - zbar_i)/(sqrt 2 i)`.
    pub fn xi(n: usize, i: usize) -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_terms(
            n,
            [
                (MonomialKey::z_pow(n, i), Complex64::new(0.0, -s)),
                (MonomialKey::zbar_pow(n, i), Complex64::new(0.0, s)),
            ],
        )
    }

    /// `prod_i x_i^{a_i} xi_i^{b_i}`.
    pub fn x_xi(n: usize, a: &[u32], b: &[u32]) -> Self {
        let mut out = Self::constant(n, 1.0);
        for i in 0..n {
            out = out.mul_poly(&Self::x(n, i).pow(a[i]));
            out = out.mul_poly(&Self::xi(n, i).pow(b[i]));
        }
        out
    }

    /// `cos(2 pi d t)`.
    pub fn cos_mode(n: usize, d: i32) -> Self {
        let h = Complex64::new(0.5, 0.0);
        let mut out = Self::monomial(MonomialKey::new(0, vec![0; n], vec![0; n], 0, d), h);
        out.add_term(MonomialKey::new(0, vec![0; n], vec![0; n], 0, -d), h);
        out
    }

    /// `sin(2 pi d t)`.
    pub fn sin_mode(n: usize, d: i32) -> Self {
        let mut out = Self::monomial(MonomialKey::new(0, vec![0; n], vec![0; n], 0, d), Complex64::new(0.0, -0.5));
        out.add_term(MonomialKey::new(0, vec![0; n], vec![0; n], 0, -d), Complex64::new(0.0, 0.5));
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn report(&self) -> &TruncationReport {
        &self.report
    }

    pub fn report_mut(&mut self) -> &mut TruncationReport {
        &mut self.report
    }

    /// Tighten the caps, dropping (and counting) terms that no longer fit.
    pub fn set_caps(&mut self, caps: Caps) {
        self.caps = caps;
        let dropped: Vec<MonomialKey> = self
            .terms
            .keys()
            .filter(|k| !caps.admits(k))
            .cloned()
            .collect();
        for key in dropped {
            let c = self.terms.remove(&key).unwrap();
            self.report.record(&key, &caps, c.norm());
        }
    }

    pub fn with_cap_order(mut self, order: u32) -> Self {
        let caps = Caps::new(order, self.caps.fourier_band);
        self.set_caps(caps);
        self
    }

    /// Add `c` to the coefficient of `key`; a term that cancels to exact zero is removed.
    pub fn add_term(&mut self, key: MonomialKey, c: Complex64) {
        assert_eq!(key.n(), self.n, "key has wrong number of degrees of freedom");
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        if !self.caps.admits(&key) {
            self.report.record(&key, &self.caps, c.norm());
            return;
        }
        let entry = self.terms.entry(key);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = *o.get() + c;
                if sum == Complex64::new(0.0, 0.0) {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn get(&self, key: &MonomialKey) -> Complex64 {
        self.terms.get(key).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MonomialKey, &Complex64)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &MonomialKey> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = self.empty_like();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    /// An empty polynomial with the same dimension and caps.
    pub fn empty_like(&self) -> Self {
        Self::with_caps(self.n, self.caps)
    }

    pub fn add_assign_poly(&mut self, other: &PhasePoly) {
        self.check_dof(other);
        for (k, v) in &other.terms {
            self.add_term(k.clone(), *v);
        }
        self.report.merge(&other.report);
    }

    pub fn add_scaled(&mut self, other: &PhasePoly, c: Complex64) {
        self.check_dof(other);
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
        self.report.merge(&other.report);
    }

    /// Truncated product under the tighter of the two caps.
    pub fn mul_poly(&self, other: &PhasePoly) -> Self {
        self.check_dof(other);
        let mut out = Self::with_caps(self.n, self.caps.meet(&other.caps));
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let key = MonomialKey {
                    p: ka.p + kb.p,
                    j: ka.j.iter().zip(&kb.j).map(|(a, b)| a + b).collect(),
                    k: ka.k.iter().zip(&kb.k).map(|(a, b)| a + b).collect(),
                    m: ka.m + kb.m,
                    d: ka.d + kb.d,
                };
                out.add_term(key, ca * cb);
            }
        }
        out.report.merge(&self.report);
        out.report.merge(&other.report);
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::with_caps(self.n, self.caps);
        out.add_term(MonomialKey::one(self.n), Complex64::new(1.0, 0.0));
        for _ in 0..e {
            out = out.mul_poly(self);
        }
        out
    }

    fn filtered<F: Fn(&MonomialKey) -> bool>(&self, keep: F) -> Self {
        let mut out = self.empty_like();
        for (k, v) in &self.terms {
            if keep(k) {
                out.terms.insert(k.clone(), *v);
            }
        }
        out
    }

    /// Homogeneous part of weighted order `r`.
    pub fn order_part(&self, r: u32) -> Self {
        self.filtered(|k| k.order() == r)
    }

    pub fn up_to_order(&self, r: u32) -> Self {
        self.filtered(|k| k.order() <= r)
    }

    pub fn from_order(&self, r: u32) -> Self {
        self.filtered(|k| k.order() >= r)
    }

    pub fn diagonal_part(&self) -> Self {
        self.filtered(|k| k.is_diagonal())
    }

    pub fn off_diagonal_part(&self) -> Self {
        self.filtered(|k| !k.is_diagonal())
    }

    /// Terms carrying exactly `hbar^p`, returned with the `hbar` power removed.
    pub fn hbar_slice(&self, p: u32) -> Self {
        let mut out = self.empty_like();
        for (k, v) in &self.terms {
            if k.p == p {
                let mut key = k.clone();
                key.p = 0;
                out.terms.insert(key, *v);
            }
        }
        out
    }

    pub fn max_order(&self) -> Option<u32> {
        self.terms.keys().map(MonomialKey::order).max()
    }

    pub fn min_order(&self) -> Option<u32> {
        self.terms.keys().map(MonomialKey::order).min()
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficient difference over the union of supports.
    pub fn max_abs_diff(&self, other: &PhasePoly) -> f64 {
        (self - other).max_abs()
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

    pub fn pruned(mut self) -> Self {
        self.prune(ZERO_TOL);
        self
    }

    /// Symbol of the adjoint operator: conjugate coefficients on conjugate keys.
    pub fn conjugate(&self) -> Self {
        let mut out = self.empty_like();
        for (k, v) in &self.terms {
            out.terms.insert(k.conjugate(), v.conj());
        }
        out
    }

    /// Whether the polynomial is real-valued (symmetric as a Weyl symbol) up to `tol`.
    pub fn is_real(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.conjugate()) <= tol
    }

    /// Evaluate at a point given in complex coordinates.
    pub fn eval(&self, z: &[Complex64], zbar: &[Complex64], t: f64, tau: f64, hbar: f64) -> Complex64 {
        assert_eq!(z.len(), self.n, "wrong number of coordinates");
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, v) in &self.terms {
            let mut x = *v * hbar.powi(k.p as i32) * tau.powi(k.m as i32);
            x *= Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k.d as f64 * t);
            for i in 0..self.n {
                x *= z[i].powu(k.j[i]) * zbar[i].powu(k.k[i]);
            }
            acc += x;
        }
        acc
    }

    /// Evaluate at a real phase-space point `(x, xi)`.
    pub fn eval_real(&self, x: &[f64], xi: &[f64], t: f64, tau: f64, hbar: f64) -> Complex64 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let z: Vec<Complex64> = x.iter().zip(xi).map(|(a, b)| Complex64::new(a * s, b * s)).collect();
        let zb: Vec<Complex64> = z.iter().map(|c| c.conj()).collect();
        self.eval(&z, &zb, t, tau, hbar)
    }

    /// Keys present with a nonzero coefficient of order at most 2.
    pub fn low_order_keys(&self) -> Vec<&MonomialKey> {
        self.terms.keys().filter(|k| k.order() <= 2).collect()
    }

    pub(crate) fn check_dof(&self, other: &PhasePoly) {
        assert_eq!(
            self.n, other.n,
            "degree-of-freedom mismatch in polynomial arithmetic"
        );
    }
}

impl<'a> Add<&'a PhasePoly> for &'a PhasePoly {
    type Output = PhasePoly;
    fn add(self, rhs: &PhasePoly) -> PhasePoly {
        let mut out = self.clone();
        out.caps = self.caps.meet(&rhs.caps);
        out.set_caps(out.caps);
        out.add_assign_poly(rhs);
        out
    }
}

impl<'a> Sub<&'a PhasePoly> for &'a PhasePoly {
    type Output = PhasePoly;
    fn sub(self, rhs: &PhasePoly) -> PhasePoly {
        let mut out = self.clone();
        out.caps = self.caps.meet(&rhs.caps);
        out.set_caps(out.caps);
        out.add_scaled(rhs, Complex64::new(-1.0, 0.0));
        out
    }
}

impl Neg for &PhasePoly {
    type Output = PhasePoly;
    fn neg(self) -> PhasePoly {
        self.scale_real(-1.0)
    }
}

impl<'a> Mul<&'a PhasePoly> for &'a PhasePoly {
    type Output = PhasePoly;
    fn mul(self, rhs: &PhasePoly) -> PhasePoly {
        self.mul_poly(rhs)
    }
}
