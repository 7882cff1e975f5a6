use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent data of one monomial `hbar^p z^j zbar^k tau^m e^{2 pi i d t}`.
///
/// The derived ordering is the canonical lexicographic order on `(p, j, k, m, d)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MonomialKey {
    pub p: u32,
    pub j: Vec<u32>,
    pub k: Vec<u32>,
    pub m: u32,
    pub d: i32,
}

impl MonomialKey {
    pub fn new(p: u32, j: Vec<u32>, k: Vec<u32>, m: u32, d: i32) -> Self {
        assert_eq!(j.len(), k.len(), "z and zbar exponents must have equal length");
        Self { p, j, k, m, d }
    }

    /// The constant monomial 1 in `n` degrees of freedom.
    pub fn one(n: usize) -> Self {
        Self::new(0, vec![0; n], vec![0; n], 0, 0)
    }

    pub fn n(&self) -> usize {
        self.j.len()
    }

    /// Weighted order `2p + |j| + |k| + 2m`.
    pub fn order(&self) -> u32 {
        2 * self.p + self.j.iter().sum::<u32>() + self.k.iter().sum::<u32>() + 2 * self.m
    }

    /// Diagonal keys (`j = k`, `d = 0`) are the ones that survive angle averaging.
    pub fn is_diagonal(&self) -> bool {
        self.j == self.k && self.d == 0
    }

    /// Key of the complex-conjugate monomial.
    pub fn conjugate(&self) -> Self {
        Self::new(self.p, self.k.clone(), self.j.clone(), self.m, -self.d)
    }

    pub fn z_pow(n: usize, i: usize) -> Self {
        let mut key = Self::one(n);
        key.j[i] = 1;
        key
    }

    pub fn zbar_pow(n: usize, i: usize) -> Self {
        let mut key = Self::one(n);
        key.k[i] = 1;
        key
    }

    /// `z_i zbar_i`, the action of degree of freedom `i`.
    pub fn action(n: usize, i: usize) -> Self {
        let mut key = Self::one(n);
        key.j[i] = 1;
        key.k[i] = 1;
        key
    }

    pub fn tau(n: usize) -> Self {
        let mut key = Self::one(n);
        key.m = 1;
        key
    }

    pub fn hbar(n: usize) -> Self {
        let mut key = Self::one(n);
        key.p = 1;
        key
    }
}

impl fmt::Display for MonomialKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(p={}, j={:?}, k={:?}, m={}, d={})",
            self.p, self.j, self.k, self.m, self.d
        )
    }
}

/// Truncation caps: terms of weighted order above `order` or with `|d| > fourier_band` are dropped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub order: u32,
    pub fourier_band: u32,
}

impl Caps {
    pub const UNBOUNDED: Caps = Caps {
        order: u32::MAX,
        fourier_band: u32::MAX,
    };

    pub fn new(order: u32, fourier_band: u32) -> Self {
        Self {
            order,
            fourier_band,
        }
    }

    pub fn order(order: u32) -> Self {
        Self {
            order,
            fourier_band: u32::MAX,
        }
    }

    pub fn admits(&self, key: &MonomialKey) -> bool {
        key.order() <= self.order && key.d.unsigned_abs() <= self.fourier_band
    }

    /// The tighter of two caps.
    pub fn meet(&self, other: &Caps) -> Caps {
        Caps {
            order: self.order.min(other.order),
            fourier_band: self.fourier_band.min(other.fourier_band),
        }
    }
}

impl Default for Caps {
    fn default() -> Self {
        Self::UNBOUNDED
    }
}

/// Counts of terms discarded by the caps during arithmetic.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TruncationReport {
    pub dropped_by_order: usize,
    pub dropped_by_band: usize,
    /// Largest modulus among dropped coefficients.
    pub largest_dropped: f64,
}

impl TruncationReport {
    pub fn record(&mut self, key: &MonomialKey, caps: &Caps, modulus: f64) {
        self.record_drop(key.order() > caps.order, modulus);
    }

    pub fn record_drop(&mut self, by_order: bool, modulus: f64) {
        if by_order {
            self.dropped_by_order += 1;
        } else {
            self.dropped_by_band += 1;
        }
        self.largest_dropped = self.largest_dropped.max(modulus);
    }

    pub fn merge(&mut self, other: &TruncationReport) {
        self.dropped_by_order += other.dropped_by_order;
        self.dropped_by_band += other.dropped_by_band;
        self.largest_dropped = self.largest_dropped.max(other.largest_dropped);
    }

    pub fn total(&self) -> usize {
        self.dropped_by_order + self.dropped_by_band
    }
}
