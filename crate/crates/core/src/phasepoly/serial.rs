use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::action::{ActionKey, ActionPoly};
use super::key::MonomialKey;
use super::poly::PhasePoly;

/// One serialized phase-polynomial term.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    pub p: u32,
    pub j: Vec<u32>,
    pub k: Vec<u32>,
    #[serde(default)]
    pub m: u32,
    #[serde(default)]
    pub d: i32,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

/// One serialized action-polynomial term.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ActionRecord {
    pub p: u32,
    pub l: Vec<u32>,
    #[serde(default)]
    pub s: u32,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Serialize, Deserialize)]
struct PolyDoc<T> {
    n: usize,
    terms: Vec<T>,
}

impl PhasePoly {
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.iter()
            .map(|(k, v)| TermRecord {
                p: k.p,
                j: k.j.clone(),
                k: k.k.clone(),
                m: k.m,
                d: k.d,
                re: v.re,
                im: v.im,
            })
            .collect()
    }

    pub fn from_records(n: usize, records: &[TermRecord]) -> Result<Self, String> {
        let mut poly = PhasePoly::new(n);
        for r in records {
            if r.j.len() != n || r.k.len() != n {
                return Err(format!("term {:?} does not have {n} degrees of freedom", r));
            }
            poly.add_term(
                MonomialKey::new(r.p, r.j.clone(), r.k.clone(), r.m, r.d),
                Complex64::new(r.re, r.im),
            );
        }
        Ok(poly)
    }
}

impl ActionPoly {
    pub fn to_records(&self) -> Vec<ActionRecord> {
        self.iter()
            .map(|(k, v)| ActionRecord {
                p: k.p,
                l: k.l.clone(),
                s: k.s,
                re: v.re,
                im: v.im,
            })
            .collect()
    }

    pub fn from_records(n: usize, records: &[ActionRecord]) -> Result<Self, String> {
        let mut poly = ActionPoly::new(n);
        for r in records {
            if r.l.len() != n {
                return Err(format!("term {:?} does not have {n} degrees of freedom", r));
            }
            poly.add_term(
                ActionKey::new(r.p, r.l.clone(), r.s),
                Complex64::new(r.re, r.im),
            );
        }
        Ok(poly)
    }
}

impl Serialize for PhasePoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyDoc {
            n: self.n(),
            terms: self.to_records(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PhasePoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = PolyDoc::<TermRecord>::deserialize(d)?;
        PhasePoly::from_records(doc.n, &doc.terms).map_err(serde::de::Error::custom)
    }
}

impl Serialize for ActionPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyDoc {
            n: self.n(),
            terms: self.to_records(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ActionPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = PolyDoc::<ActionRecord>::deserialize(d)?;
        ActionPoly::from_records(doc.n, &doc.terms).map_err(serde::de::Error::custom)
    }
}
