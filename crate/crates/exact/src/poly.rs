//! Sparse multivariate polynomials with integer coefficients.

use crate::int::Int;
use crate::mono::{Mono, NVARS, VAR_NAMES};
use std::collections::BTreeMap;
use std::fmt;

/// Polynomial in the scalar symbols. Terms are sorted by strictly
/// decreasing monomial (graded lex) and carry nonzero coefficients, so the
/// representation is canonical.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Mono, Int)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Int::ONE)
    }

    pub fn constant(c: Int) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(Mono::ONE, c)] }
        }
    }

    pub fn from_i64(c: i64) -> Poly {
        Poly::constant(Int::from(c))
    }

    pub fn var(i: usize) -> Poly {
        Poly::monomial(Mono::var(i, 1), Int::ONE)
    }

    pub fn monomial(m: Mono, c: Int) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Build from arbitrary terms (any order, duplicates and zeros allowed).
    pub fn from_terms(mut t: Vec<(Mono, Int)>) -> Poly {
        t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Mono, Int)> = Vec::with_capacity(t.len());
        for (m, c) in t {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = last.1.add(&c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|x| !x.1.is_zero());
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Mono, Int)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, Int)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn as_constant(&self) -> Option<Int> {
        if self.terms.is_empty() {
            Some(Int::ZERO)
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Leading term under graded lex.
    pub fn lt(&self) -> Option<&(Mono, Int)> {
        self.terms.first()
    }

    pub fn lc(&self) -> Int {
        self.terms.first().map(|t| t.1.clone()).unwrap_or(Int::ZERO)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.merge(o, true)
    }

    fn merge(&self, o: &Poly, negate: bool) -> Poly {
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i].0 > b[j].0 {
                out.push(a[i].clone());
                i += 1;
            } else if a[i].0 < b[j].0 {
                let c = if negate { b[j].1.neg() } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { t.1.neg() } else { t.1.clone() };
            out.push((t.0, c));
        }
        Poly { terms: out }
    }

    pub fn scale(&self, c: &Int) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (*m, x.mul(c))).collect(),
        }
    }

    pub fn mul_term(&self, m: Mono, c: &Int) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(x, y)| (x.mul(m), y.mul(c))).collect(),
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if o.terms.len() == 1 {
            return self.mul_term(o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_term(self.terms[0].0, &self.terms[0].1);
        }
        let mut t = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                t.push((ma.mul(*mb), ca.mul(cb)));
            }
        }
        Poly::from_terms(t)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::one();
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// Non-negative gcd of the coefficients.
    pub fn int_content(&self) -> Int {
        let mut g = Int::ZERO;
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Componentwise minimum of the exponents (the largest monomial factor).
    pub fn mono_content(&self) -> Mono {
        let mut it = self.terms.iter();
        let first = match it.next() {
            Some(t) => t.0,
            None => return Mono::ONE,
        };
        let mut g = first;
        for (m, _) in it {
            g = g.gcd(*m);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_int_exact(&self, c: &Int) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, x)| (*m, x.div_exact(c))).collect(),
        }
    }

    pub fn div_mono(&self, m: Mono) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(x, c)| (x.div(m).expect("monomial does not divide"), c.clone()))
                .collect(),
        }
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exp(v)).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exp(v)).min().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    /// Bitmask of symbols that occur.
    pub fn var_mask(&self) -> u32 {
        let mut mask = 0u32;
        for (m, _) in &self.terms {
            for i in 0..NVARS {
                if m.exp(i) > 0 {
                    mask |= 1 << i;
                }
            }
        }
        mask
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if d.terms.len() == 1 {
            let (dm, dc) = &d.terms[0];
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                out.push((m.div(*dm)?, c.checked_div_exact(dc)?));
            }
            return Some(Poly { terms: out });
        }
        let (dm, dc) = d.terms[0].clone();
        // cheap necessary conditions
        let (am, ac) = &self.terms[0];
        if !dm.divides(*am) || ac.checked_div_exact(&dc).is_none() {
            return None;
        }
        let (tm, tc) = self.terms.last().unwrap();
        let (dtm, dtc) = d.terms.last().unwrap();
        if !dtm.divides(*tm) || tc.checked_div_exact(dtc).is_none() {
            return None;
        }
        for v in 0..NVARS {
            if d.degree_in(v) > self.degree_in(v) {
                return None;
            }
        }
        let mut rem: BTreeMap<Mono, Int> = self.terms.iter().cloned().collect();
        let mut q: Vec<(Mono, Int)> = Vec::new();
        while let Some((&m, c)) = rem.iter().next_back() {
            let qm = m.div(dm)?;
            let qc = c.checked_div_exact(&dc)?;
            for (x, y) in &d.terms {
                let key = x.mul(qm);
                let prod = y.mul(&qc);
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let nv = e.get().sub(&prod);
                        if nv.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = nv;
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(prod.neg());
                    }
                }
            }
            q.push((qm, qc));
            if let Some((&m2, _)) = rem.iter().next_back() {
                if !dm.divides(m2) {
                    return None;
                }
            }
        }
        Some(Poly { terms: q })
    }

    /// Coefficients with respect to symbol `v`: pairs (exponent, coefficient
    /// polynomial free of `v`), exponent decreasing.
    pub fn coeffs_in(&self, v: usize) -> Vec<(u32, Poly)> {
        let mut map: BTreeMap<u32, Vec<(Mono, Int)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let rest = m.div(Mono::var(v, e)).unwrap();
            map.entry(e).or_default().push((rest, c.clone()));
        }
        map.into_iter()
            .rev()
            .map(|(e, t)| (e, Poly::from_terms(t)))
            .collect()
    }

    /// Rename symbols by a permutation-like map `old index -> new index`.
    pub fn remap_vars(&self, map: &[usize; NVARS]) -> Poly {
        let t = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = [0u32; NVARS];
                for i in 0..NVARS {
                    let x = m.exp(i);
                    if x > 0 {
                        e[map[i]] += x;
                    }
                }
                (Mono::from_exps(&e), c.clone())
            })
            .collect();
        Poly::from_terms(t)
    }

    /// Substitute `v ↦ v^k` for an integer `k ≥ 1` or the monomial map
    /// given by `f` on exponent vectors.
    pub fn map_monomials(&self, f: impl Fn([u32; NVARS]) -> [u32; NVARS]) -> Poly {
        let t = self
            .terms
            .iter()
            .map(|(m, c)| (Mono::from_exps(&f(m.exps())), c.clone()))
            .collect();
        Poly::from_terms(t)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Index of a symbol name.
pub fn var_index(name: &str) -> Option<usize> {
    VAR_NAMES.iter().position(|v| *v == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mono::var;

    fn p(s: &str) -> Poly {
        crate::parse::parse_poly(s).unwrap()
    }

    #[test]
    fn arithmetic_basics() {
        let a = p("qh + 1");
        let b = p("qh - 1");
        assert_eq!(a.mul(&b), p("qh^2 - 1"));
        assert_eq!(a.add(&b), p("2*qh"));
        assert_eq!(a.sub(&a), Poly::zero());
        assert_eq!(a.pow(3), p("qh^3 + 3*qh^2 + 3*qh + 1"));
    }

    #[test]
    fn exact_division() {
        let a = p("th^2 - 1");
        let b = p("th - 1");
        assert_eq!(a.div_exact(&b), Some(p("th + 1")));
        assert_eq!(p("th^2 + 1").div_exact(&b), None);
        let x = p("qh*th + z1^2 - 3");
        let y = p("qh^3 - th*z1 + 2");
        assert_eq!(x.mul(&y).div_exact(&y), Some(x));
    }

    #[test]
    fn coeffs_and_degrees() {
        let a = p("qh^2*th + qh*th^3 - 5");
        assert_eq!(a.degree_in(var::QH), 2);
        assert_eq!(a.degree_in(var::TH), 3);
        let c = a.coeffs_in(var::QH);
        assert_eq!(c[0], (2, p("th")));
        assert_eq!(c[2], (0, p("-5")));
    }
}
