use std::collections::BTreeMap;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phasepoly::{MonomialKey, PhasePoly};

/// Real polynomial in position variables `x`, keyed by exponent vectors.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct XPoly {
    pub n: usize,
    pub terms: BTreeMap<Vec<u32>, f64>,
}

impl XPoly {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, f64)>>(n: usize, terms: I) -> Self {
        let mut p = Self::new(n);
        for (k, v) in terms {
            p.add_term(k, v);
        }
        p
    }

    pub fn add_term(&mut self, k: Vec<u32>, v: f64) {
        assert_eq!(k.len(), self.n, "exponent vector has wrong length");
        if v != 0.0 {
            *self.terms.entry(k).or_insert(0.0) += v;
        }
    }

    pub fn get(&self, k: &[u32]) -> f64 {
        self.terms.get(k).copied().unwrap_or(0.0)
    }

    pub fn degree_part(&self, r: u32) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.iter().sum::<u32>() == r)
                .map(|(k, v)| (k.clone(), *v))
                .collect(),
        }
    }

    pub fn from_degree(&self, r: u32) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.iter().sum::<u32>() >= r)
                .map(|(k, v)| (k.clone(), *v))
                .collect(),
        }
    }

    pub fn mul(&self, other: &XPoly, max_degree: u32) -> Self {
        let mut out = Self::new(self.n);
        for (a, va) in &self.terms {
            for (b, vb) in &other.terms {
                let k: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if k.iter().sum::<u32>() <= max_degree {
                    out.add_term(k, va * vb);
                }
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &XPoly) -> f64 {
        let keys: std::collections::BTreeSet<&Vec<u32>> =
            self.terms.keys().chain(other.terms.keys()).collect();
        keys.iter()
            .map(|k| (self.get(k) - other.get(k)).abs())
            .fold(0.0, f64::max)
    }

    /// `p(L x)` truncated at `max_degree`.
    pub fn substitute(&self, l: &DMatrix<f64>, max_degree: u32) -> Self {
        let n = self.n;
        let lin: Vec<XPoly> = (0..n)
            .map(|i| {
                XPoly::from_terms(
                    n,
                    (0..n).map(|j| {
                        let mut e = vec![0; n];
                        e[j] = 1;
                        (e, l[(i, j)])
                    }),
                )
            })
            .collect();
        let one = XPoly::from_terms(n, [(vec![0; n], 1.0)]);
        let mut out = Self::new(n);
        for (k, v) in &self.terms {
            let mut t = one.clone();
            for i in 0..n {
                for _ in 0..k[i] {
                    t = t.mul(&lin[i], max_degree);
                }
            }
            for (kk, vv) in t.terms {
                out.add_term(kk, v * vv);
            }
        }
        out.terms.retain(|_, v| *v != 0.0);
        out
    }

    /// The same function written in `z, zbar` with `x_i = (z_i + zbar_i)/sqrt 2`.
    pub fn to_phase(&self) -> PhasePoly {
        let n = self.n;
        let mut out = PhasePoly::new(n);
        for (k, v) in &self.terms {
            let mut t = PhasePoly::monomial(MonomialKey::one(n), Complex64::new(*v, 0.0));
            for (i, &e) in k.iter().enumerate() {
                t = t.mul_poly(&PhasePoly::x(n, i).pow(e));
            }
            out.add_assign_poly(&t);
        }
        out
    }
}

/// Fermi coordinates of `|xi|^2/2 + V(x)` at a nondegenerate minimum of `V` at the origin.
#[derive(Clone, Debug)]
pub struct SchrodingerFrame {
    /// Orthonormal eigenvectors of the Hessian of `V` as columns, ascending eigenvalues.
    pub u: DMatrix<f64>,
    pub theta: Vec<f64>,
    pub energy: f64,
    /// Cubic and higher part of `V` in Fermi coordinates.
    pub remainder: XPoly,
    /// Full symbol in Fermi coordinates.
    pub hamiltonian: PhasePoly,
}

impl SchrodingerFrame {
    /// `x_fermi = diag(sqrt theta) U^T q`.
    pub fn to_fermi_matrix(&self) -> DMatrix<f64> {
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            self.theta.len(),
            self.theta.iter().map(|t| t.sqrt()),
        ));
        d * self.u.transpose()
    }

    /// The potential in original coordinates from a remainder in Fermi coordinates.
    pub fn potential_from_remainder(&self, remainder: &XPoly, max_degree: u32) -> XPoly {
        let n = self.theta.len();
        let mut v = remainder.substitute(&self.to_fermi_matrix(), max_degree);
        v.add_term(vec![0; n], self.energy);
        // Quadratic part: (1/2) q^T U diag(theta^2) U^T q.
        let hess = &self.u
            * DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                n,
                self.theta.iter().map(|t| t * t),
            ))
            * self.u.transpose();
        for i in 0..n {
            for j in i..n {
                let mut e = vec![0; n];
                e[i] += 1;
                e[j] += 1;
                let c = if i == j { 0.5 * hess[(i, i)] } else { hess[(i, j)] };
                v.add_term(e, c);
            }
        }
        v.terms.retain(|_, c| c.abs() > 1e-15);
        v
    }
}

/// Sign convention for eigenvector columns: first non-negligible entry positive.
pub(crate) fn canonical_sign(u: &mut DMatrix<f64>) {
    for c in 0..u.ncols() {
        let col = u.column(c);
        let m = col.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        if let Some(&lead) = col.iter().find(|v| v.abs() > 1e-8 * m) {
            if lead < 0.0 {
                u.column_mut(c).neg_mut();
            }
        }
    }
}

/// Fermi coordinates for `|xi|^2/2 + V` with `V` given by its Taylor data at a critical point.
pub fn fermi_schrodinger(potential: &XPoly, max_degree: u32) -> Result<SchrodingerFrame> {
    let n = potential.n;
    if let Some((k, _)) = potential
        .terms
        .iter()
        .find(|(k, v)| k.iter().sum::<u32>() == 1 && v.abs() > 0.0)
    {
        return Err(Error::NotFermiForm(format!(
            "gradient of V does not vanish (term {k:?})"
        )));
    }
    let mut hess = DMatrix::zeros(n, n);
    for (k, v) in potential.degree_part(2).terms {
        let idx: Vec<usize> = (0..n).filter(|&i| k[i] > 0).collect();
        if idx.len() == 1 {
            hess[(idx[0], idx[0])] = 2.0 * v;
        } else {
            hess[(idx[0], idx[1])] = v;
            hess[(idx[1], idx[0])] = v;
        }
    }
    let eig = SymmetricEigen::new(hess);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let evals: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    if evals.iter().any(|&v| v <= 0.0) {
        return Err(Error::NotPositiveDefinite);
    }
    let scale = evals.iter().fold(0.0f64, |a, v| a.max(*v));
    if evals.windows(2).any(|w| (w[1] - w[0]).abs() <= 1e-10 * scale) {
        return Err(Error::DegenerateFrequencies(evals.iter().map(|v| v.sqrt()).collect()));
    }
    let mut u = DMatrix::zeros(n, n);
    for (c, &i) in order.iter().enumerate() {
        u.set_column(c, &eig.eigenvectors.column(i));
    }
    canonical_sign(&mut u);
    let theta: Vec<f64> = evals.iter().map(|v| v.sqrt()).collect();
    let l = &u
        * DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            n,
            theta.iter().map(|t| 1.0 / t.sqrt()),
        ));
    let remainder = potential.from_degree(3).substitute(&l, max_degree);
    let energy = potential.get(&vec![0; n]);
    let mut hamiltonian = remainder.to_phase();
    hamiltonian.add_assign_poly(&PhasePoly::harmonic(&theta));
    hamiltonian.add_assign_poly(&PhasePoly::constant(n, energy));
    Ok(SchrodingerFrame {
        u,
        theta,
        energy,
        remainder,
        hamiltonian,
    })
}
