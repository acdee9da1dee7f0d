//! Truncated formal series graded by a positive cone ℕ^k (root-lattice
//! coordinates), truncated by total height.

use crate::error::ExactError;
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub type Grade = Vec<u32>;

pub fn height(b: &[u32]) -> u32 {
    b.iter().sum()
}

/// All points of ℕ^dim with height at most `h`, ordered by height and then
/// lexicographically.
pub fn points_up_to(dim: usize, h: u32) -> Vec<Grade> {
    let mut out = Vec::new();
    for ht in 0..=h {
        points_of_height(dim, ht, &mut Vec::new(), &mut out);
    }
    out
}

/// Points of exactly height `h`, lexicographically decreasing in the
/// first coordinate (the order of the recursion below).
pub fn points_of_height(dim: usize, h: u32, prefix: &mut Vec<u32>, out: &mut Vec<Grade>) {
    if dim == 0 {
        if h == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    if prefix.len() + 1 == dim {
        prefix.push(h);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for x in (0..=h).rev() {
        prefix.push(x);
        points_of_height(dim, h - x, prefix, out);
        prefix.pop();
    }
}

/// Element of the quotient of the graded series ring by the ideal of
/// terms of height above `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    dim: usize,
    order: u32,
    terms: BTreeMap<Grade, Scalar>,
}

impl Series {
    pub fn zero(dim: usize, order: u32) -> Series {
        Series {
            dim,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize, order: u32) -> Series {
        Series::constant(dim, order, Scalar::one())
    }

    pub fn constant(dim: usize, order: u32, c: Scalar) -> Series {
        Series::monomial(dim, order, vec![0; dim], c)
    }

    pub fn monomial(dim: usize, order: u32, b: Grade, c: Scalar) -> Series {
        let mut s = Series::zero(dim, order);
        s.add_term(b, &c);
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &[u32]) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&vec![0; self.dim])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Grade, &Scalar)> {
        self.terms.iter()
    }

    /// Terms ordered by height, then lexicographically.
    pub fn sorted_terms(&self) -> Vec<(Grade, Scalar)> {
        let mut v: Vec<(Grade, Scalar)> =
            self.terms.iter().map(|(b, c)| (b.clone(), c.clone())).collect();
        v.sort_by(|a, b| (height(&a.0), &a.0).cmp(&(height(&b.0), &b.0)));
        v
    }

    /// Add a term; terms beyond the truncation order are discarded.
    pub fn add_term(&mut self, b: Grade, c: &Scalar) {
        assert_eq!(b.len(), self.dim, "grade dimension");
        if c.is_zero() || height(&b) > self.order {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = o.get().add(c);
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    pub fn set(&mut self, b: Grade, c: Scalar) {
        if height(&b) > self.order {
            return;
        }
        if c.is_zero() {
            self.terms.remove(&b);
        } else {
            self.terms.insert(b, c);
        }
    }

    fn check(&self, o: &Series) -> Result<(), ExactError> {
        if self.dim != o.dim {
            return Err(ExactError::LatticeMismatch(format!(
                "rank {} vs {}",
                self.dim, o.dim
            )));
        }
        Ok(())
    }

    pub fn truncate(&self, h: u32) -> Series {
        Series {
            dim: self.dim,
            order: h,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| height(b) <= h)
                .map(|(b, c)| (b.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, o: &Series) -> Series {
        self.check(o).expect("series lattice mismatch");
        let h = self.order.min(o.order);
        let mut r = self.truncate(h);
        for (b, c) in &o.terms {
            r.add_term(b.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &Series) -> Series {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Series {
        self.map_coeffs(|_, c| c.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Series {
        self.map_coeffs(|_, x| x.mul(c))
    }

    pub fn map_coeffs(&self, f: impl Fn(&Grade, &Scalar) -> Scalar) -> Series {
        let mut r = Series::zero(self.dim, self.order);
        for (b, c) in &self.terms {
            r.add_term(b.clone(), &f(b, c));
        }
        r
    }

    /// Multiply by the monomial of grade `g`.
    pub fn shift(&self, g: &[u32]) -> Series {
        let mut r = Series::zero(self.dim, self.order);
        for (b, c) in &self.terms {
            let nb: Grade = b.iter().zip(g).map(|(x, y)| x + y).collect();
            r.add_term(nb, c);
        }
        r
    }

    /// Truncated product to height `h ≤ min(order)`.
    pub fn mul_to(&self, o: &Series, h: u32) -> Result<Series, ExactError> {
        self.check(o)?;
        if h > self.order.min(o.order) {
            return Err(ExactError::LatticeMismatch(format!(
                "requested height {h} exceeds operand orders {} and {}",
                self.order, o.order
            )));
        }
        let mut acc: BTreeMap<Grade, Vec<Scalar>> = BTreeMap::new();
        for (ba, ca) in &self.terms {
            let ha = height(ba);
            if ha > h {
                continue;
            }
            for (bb, cb) in &o.terms {
                if ha + height(bb) > h {
                    continue;
                }
                let b: Grade = ba.iter().zip(bb).map(|(x, y)| x + y).collect();
                acc.entry(b).or_default().push(ca.mul(cb));
            }
        }
        let mut r = Series::zero(self.dim, h);
        for (b, v) in acc {
            let s = sum(&v);
            r.set(b, s);
        }
        Ok(r)
    }

    pub fn mul(&self, o: &Series) -> Series {
        let h = self.order.min(o.order);
        self.mul_to(o, h).expect("series lattice mismatch")
    }

    /// Multiplicative inverse to height `h`.
    pub fn inverse(&self, h: u32) -> Result<Series, ExactError> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(ExactError::NotInvertible);
        }
        let c0inv = c0.inv()?;
        let h = h.min(self.order);
        let mut r = Series::zero(self.dim, h);
        let zero = vec![0; self.dim];
        r.set(zero.clone(), c0inv.clone());
        let pts = points_up_to(self.dim, h);
        let nonconst: Vec<(&Grade, &Scalar)> =
            self.terms.iter().filter(|(b, _)| **b != zero).collect();
        for b in pts.iter().skip(1) {
            let mut parts = Vec::new();
            for (ba, ca) in &nonconst {
                if ba.iter().zip(b).all(|(x, y)| x <= y) {
                    let rest: Grade = b.iter().zip(ba.iter()).map(|(y, x)| y - x).collect();
                    let rc = r.coeff(&rest);
                    if !rc.is_zero() {
                        parts.push(ca.mul(&rc));
                    }
                }
            }
            if !parts.is_empty() {
                let v = sum(&parts).mul(&c0inv).neg();
                r.set(b.clone(), v);
            }
        }
        Ok(r)
    }
}

/// Sum of scalars, balanced to keep intermediate sizes small.
pub fn sum(v: &[Scalar]) -> Scalar {
    match v.len() {
        0 => Scalar::zero(),
        1 => v[0].clone(),
        _ => {
            let m = v.len() / 2;
            sum(&v[..m]).add(&sum(&v[m..]))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    rank: usize,
    order: u32,
    terms: Vec<SeriesTermJson>,
}

#[derive(Serialize, Deserialize)]
struct SeriesTermJson {
    beta: Vec<u32>,
    coeff: Scalar,
}

impl Serialize for Series {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SeriesJson {
            rank: self.dim,
            order: self.order,
            terms: self
                .sorted_terms()
                .into_iter()
                .map(|(beta, coeff)| SeriesTermJson { beta, coeff })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Series {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Series, D::Error> {
        let j = SeriesJson::deserialize(d)?;
        let mut s = Series::zero(j.rank, j.order);
        for t in j.terms {
            if t.beta.len() != j.rank {
                return Err(serde::de::Error::custom("grade length mismatch"));
            }
            s.add_term(t.beta, &t.coeff);
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_inverse() {
        let h = 6;
        let mut a = Series::one(1, h);
        a.add_term(vec![1], &Scalar::from_i64(-1));
        let mut g = Series::zero(1, h);
        for k in 0..=h {
            g.add_term(vec![k], &Scalar::one());
        }
        assert_eq!(a.mul(&g), Series::one(1, h));
        assert_eq!(a.inverse(h).unwrap(), g);
    }

    #[test]
    fn point_enumeration() {
        let p = points_up_to(2, 2);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![0, 0]);
        assert!(p.iter().all(|b| height(b) <= 2));
    }

    #[test]
    fn mismatch_errors() {
        let a = Series::one(1, 2);
        let b = Series::one(2, 2);
        assert!(a.mul_to(&b, 1).is_err());
        assert!(a.mul_to(&a, 3).is_err());
    }
}
