//! Laurent polynomials in x₁..x_n over [`Scalar`], and quotients of them.

use crate::error::ExactError;
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub type Exp = Vec<i32>;

/// Sparse Laurent polynomial. Terms are keyed by exponent vector (lex
/// order), with no stored zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exp, Scalar>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> LaurentPoly {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> LaurentPoly {
        LaurentPoly::constant(nvars, Scalar::one())
    }

    pub fn constant(nvars: usize, c: Scalar) -> LaurentPoly {
        LaurentPoly::monomial(vec![0; nvars], c)
    }

    pub fn monomial(e: Exp, c: Scalar) -> LaurentPoly {
        let nvars = e.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// The variable x_i (0-based).
    pub fn x(i: usize, nvars: usize) -> LaurentPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        LaurentPoly::monomial(e, Scalar::one())
    }

    pub fn from_terms(nvars: usize, it: impl IntoIterator<Item = (Exp, Scalar)>) -> LaurentPoly {
        let mut p = LaurentPoly::zero(nvars);
        for (e, c) in it {
            assert_eq!(e.len(), nvars);
            p.add_term(e, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[i32]) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, e: Exp, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
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

    pub fn add(&self, o: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), &c.neg());
        }
        r
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x.mul(c))).collect(),
        }
    }

    pub fn mul(&self, o: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut r = LaurentPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Exp = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                r.add_term(e, &ca.mul(cb));
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut r = LaurentPoly::one(self.nvars);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Multiply by the monomial x^e.
    pub fn shift(&self, e: &[i32]) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(x, c)| (x.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Rescale each term by a factor depending on its exponent (used for
    /// q-shift operators such as x_i ↦ q² x_i).
    pub fn map_coeffs(&self, f: impl Fn(&Exp, &Scalar) -> Scalar) -> LaurentPoly {
        let mut r = LaurentPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            r.add_term(e.clone(), &f(e, c));
        }
        r
    }

    /// Permute variables: x_i ↦ x_{perm[i]}.
    pub fn permute(&self, perm: &[usize]) -> LaurentPoly {
        let mut r = LaurentPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; self.nvars];
            for (i, &x) in e.iter().enumerate() {
                ne[perm[i]] = x;
            }
            r.add_term(ne, c);
        }
        r
    }

    /// Invariance under all transpositions of adjacent variables.
    pub fn is_symmetric(&self) -> bool {
        for i in 0..self.nvars.saturating_sub(1) {
            let mut perm: Vec<usize> = (0..self.nvars).collect();
            perm.swap(i, i + 1);
            if &self.permute(&perm) != self {
                return false;
            }
        }
        true
    }

    /// Componentwise minimum exponent.
    pub fn min_exps(&self) -> Exp {
        let mut m: Option<Exp> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(v) => v.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    /// Lex-leading term.
    pub fn leading(&self) -> Option<(&Exp, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d` in the Laurent ring, or
    /// [`ExactError::NotDivisible`].
    pub fn exact_div(&self, d: &LaurentPoly) -> Result<LaurentPoly, ExactError> {
        assert_eq!(self.nvars, d.nvars);
        if d.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero(self.nvars));
        }
        let a = self.min_exps();
        let b = d.min_exps();
        let na: Exp = a.iter().map(|x| -x).collect();
        let nb: Exp = b.iter().map(|x| -x).collect();
        let mut rem = self.shift(&na);
        let den = d.shift(&nb);
        if den.len() == 1 {
            let (_, dc) = den.leading().unwrap();
            return Ok(self.scale(&dc.inv()?).shift(&nb));
        }
        let (de, dc) = den.leading().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let dinv = dc.inv()?;
        let mut q = LaurentPoly::zero(self.nvars);
        while let Some((e, c)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
            let mut qe = Vec::with_capacity(self.nvars);
            for (x, y) in e.iter().zip(&de) {
                if x < y {
                    return Err(ExactError::NotDivisible);
                }
                qe.push(x - y);
            }
            let qc = c.mul(&dinv);
            for (x, y) in &den.terms {
                let k: Exp = x.iter().zip(&qe).map(|(a, b)| a + b).collect();
                rem.add_term(k, &y.mul(&qc).neg());
            }
            q.add_term(qe, &qc);
        }
        let diff: Exp = a.iter().zip(&b).map(|(x, y)| x - y).collect();
        Ok(q.shift(&diff))
    }

    /// Largest absolute exponent in any term.
    pub fn max_abs_exp(&self) -> i32 {
        self.terms
            .keys()
            .flat_map(|e| e.iter().map(|x| x.abs()))
            .max()
            .unwrap_or(0)
    }
}

/// Serialized form.
#[derive(Serialize, Deserialize)]
struct LaurentJson {
    nvars: usize,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<i32>,
    coeff: Scalar,
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LaurentJson {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exp: e.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<LaurentPoly, D::Error> {
        let j = LaurentJson::deserialize(d)?;
        for t in &j.terms {
            if t.exp.len() != j.nvars {
                return Err(serde::de::Error::custom("exponent length mismatch"));
            }
        }
        Ok(LaurentPoly::from_terms(
            j.nvars,
            j.terms.into_iter().map(|t| (t.exp, t.coeff)),
        ))
    }
}

/// Quotient `num/den` of Laurent polynomials. The constructor cancels the
/// denominator whenever it divides the numerator and otherwise scales so
/// that the lex-leading coefficient of `den` is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalExpr {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

impl RationalExpr {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<RationalExpr, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let n = num.nvars();
        match num.exact_div(&den) {
            Ok(q) => Ok(RationalExpr {
                num: q,
                den: LaurentPoly::one(n),
            }),
            Err(ExactError::NotDivisible) => {
                let (_, lc) = den.leading().unwrap();
                let inv = lc.inv()?;
                Ok(RationalExpr {
                    num: num.scale(&inv),
                    den: den.scale(&inv),
                })
            }
            Err(e) => Err(e),
        }
    }

    pub fn from_poly(p: LaurentPoly) -> RationalExpr {
        let n = p.nvars();
        RationalExpr {
            num: p,
            den: LaurentPoly::one(n),
        }
    }

    /// The Laurent polynomial value, if the denominator cancelled.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        if self.den == LaurentPoly::one(self.den.nvars()) {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn into_poly(self) -> Result<LaurentPoly, ExactError> {
        if self.den == LaurentPoly::one(self.den.nvars()) {
            Ok(self.num)
        } else {
            Err(ExactError::NotDivisible)
        }
    }

    pub fn add(&self, o: &RationalExpr) -> Result<RationalExpr, ExactError> {
        if self.den == o.den {
            return RationalExpr::new(self.num.add(&o.num), self.den.clone());
        }
        RationalExpr::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    /// Value equality by cross multiplication.
    pub fn same_value(&self, o: &RationalExpr) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> LaurentPoly {
        LaurentPoly::x(i, 2)
    }

    #[test]
    fn exact_division_examples() {
        let a = x(0).mul(&x(0)).sub(&x(1).mul(&x(1)));
        let b = x(0).sub(&x(1));
        assert_eq!(a.exact_div(&b).unwrap(), x(0).add(&x(1)));
        let one = LaurentPoly::one(2);
        assert_eq!(a.exact_div(&one).unwrap(), a);
        let t2: Scalar = "th^4".parse().unwrap();
        let f = x(0).scale(&t2).sub(&x(1));
        assert_eq!(f.mul(&b).exact_div(&b).unwrap(), f);
        assert_eq!(
            x(0).add(&LaurentPoly::one(2)).exact_div(&b),
            Err(ExactError::NotDivisible)
        );
    }

    #[test]
    fn laurent_shifts_divide() {
        let inv = LaurentPoly::monomial(vec![-1, 2], Scalar::from_i64(3));
        let b = x(0).sub(&x(1));
        let p = inv.mul(&b);
        assert_eq!(p.exact_div(&b).unwrap(), inv);
        assert_eq!(p.exact_div(&inv).unwrap(), b);
    }

    #[test]
    fn json_roundtrip() {
        let p = LaurentPoly::from_terms(
            2,
            vec![
                (vec![1, -2], "qh^2/(th - 1)".parse().unwrap()),
                (vec![0, 0], Scalar::from_i64(-4)),
            ],
        );
        let s = serde_json::to_string(&p).unwrap();
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }
}
