//! Exact scalars: reduced quotients of integer polynomials in the symbols.

use crate::error::ExactError;
use crate::gcd::gcd;
use crate::int::Int;
use crate::mono::{var, Mono, NVARS};
use crate::poly::Poly;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq, Hash)]
struct Frac {
    num: Poly,
    den: Poly,
}

/// Element of ℚ(qh, th, z1..z4, w, p).
///
/// Invariant: `gcd(num, den) = 1` over ℤ[symbols] and the graded-lex
/// leading coefficient of `den` is positive; zero is `0/1`. The normal form
/// is unique, so `==` is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Arc<Frac>);

impl Default for Scalar {
    fn default() -> Scalar {
        Scalar::zero()
    }
}

fn reduce_parts(num: Poly, den: Poly) -> (Poly, Poly) {
    if num.is_zero() {
        return (Poly::zero(), Poly::one());
    }
    if den.is_one() {
        return (num, den);
    }
    let g = if den.is_monomial() {
        // gcd with a monomial needs only contents
        let (m, c) = den.terms()[0].clone();
        let ic = num.int_content().gcd(&c);
        let mc = num.mono_content().gcd(m);
        Poly::monomial(mc, ic)
    } else if num.is_monomial() {
        let (m, c) = num.terms()[0].clone();
        let ic = den.int_content().gcd(&c);
        let mc = den.mono_content().gcd(m);
        Poly::monomial(mc, ic)
    } else {
        gcd(&num, &den)
    };
    let (n, d) = if g.is_one() {
        (num, den)
    } else {
        (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
    };
    fix_sign(n, d)
}

fn fix_sign(n: Poly, d: Poly) -> (Poly, Poly) {
    if d.lc().is_negative() {
        (n.neg(), d.neg())
    } else {
        (n, d)
    }
}

impl Scalar {
    fn raw(num: Poly, den: Poly) -> Scalar {
        Scalar(Arc::new(Frac { num, den }))
    }

    pub fn zero() -> Scalar {
        Scalar::raw(Poly::zero(), Poly::one())
    }

    pub fn one() -> Scalar {
        Scalar::raw(Poly::one(), Poly::one())
    }

    pub fn from_i64(v: i64) -> Scalar {
        Scalar::raw(Poly::from_i64(v), Poly::one())
    }

    pub fn from_int(v: Int) -> Scalar {
        Scalar::raw(Poly::constant(v), Poly::one())
    }

    pub fn ratio(a: i64, b: i64) -> Scalar {
        Scalar::from_frac(Poly::from_i64(a), Poly::from_i64(b)).expect("zero denominator")
    }

    pub fn var(i: usize) -> Scalar {
        Scalar::raw(Poly::var(i), Poly::one())
    }

    pub fn from_poly(p: Poly) -> Scalar {
        Scalar::raw(p, Poly::one())
    }

    /// Reduce `num/den` to normal form.
    pub fn from_frac(num: Poly, den: Poly) -> Result<Scalar, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let (n, d) = reduce_parts(num, den);
        Ok(Scalar::raw(n, d))
    }

    /// Laurent monomial `Π symbol_i^{e_i}` with signed exponents.
    pub fn monomial(e: &[i64]) -> Scalar {
        let mut pos = [0u32; NVARS];
        let mut neg = [0u32; NVARS];
        for (i, &x) in e.iter().enumerate() {
            if x >= 0 {
                pos[i] = x as u32;
            } else {
                neg[i] = (-x) as u32;
            }
        }
        Scalar::raw(
            Poly::monomial(Mono::from_exps(&pos), Int::ONE),
            Poly::monomial(Mono::from_exps(&neg), Int::ONE),
        )
    }

    /// `symbol^e` for a single symbol.
    pub fn var_pow(i: usize, e: i64) -> Scalar {
        let mut v = [0i64; NVARS];
        v[i] = e;
        Scalar::monomial(&v)
    }

    /// `qh^e`.
    pub fn qh(e: i64) -> Scalar {
        Scalar::var_pow(var::QH, e)
    }

    /// `th^e`.
    pub fn th(e: i64) -> Scalar {
        Scalar::var_pow(var::TH, e)
    }

    pub fn num(&self) -> &Poly {
        &self.0.num
    }

    pub fn den(&self) -> &Poly {
        &self.0.den
    }

    pub fn is_zero(&self) -> bool {
        self.0.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.num.is_one() && self.0.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.0.den.is_one()
    }

    /// Rational number value if the scalar is free of symbols.
    pub fn as_rational(&self) -> Option<(Int, Int)> {
        Some((self.0.num.as_constant()?, self.0.den.as_constant()?))
    }

    pub fn neg(&self) -> Scalar {
        Scalar::raw(self.0.num.neg(), self.0.den.clone())
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        self.add_impl(o, false)
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add_impl(o, true)
    }

    fn add_impl(&self, o: &Scalar, negate: bool) -> Scalar {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { o.neg() } else { o.clone() };
        }
        let (a, b) = (&self.0, &o.0);
        let comb = |x: &Poly, y: &Poly| if negate { x.sub(y) } else { x.add(y) };
        if a.den == b.den {
            let n = comb(&a.num, &b.num);
            let (n, d) = reduce_parts(n, a.den.clone());
            return Scalar::raw(n, d);
        }
        if a.den.is_monomial() && b.den.is_monomial() {
            let (ma, ca) = a.den.terms()[0].clone();
            let (mb, cb) = b.den.terms()[0].clone();
            let m = ma.lcm(mb);
            let g = ca.gcd(&cb);
            let c = ca.div_exact(&g).mul(&cb);
            let fa = Poly::monomial(m.div(ma).unwrap(), c.div_exact(&ca));
            let fb = Poly::monomial(m.div(mb).unwrap(), c.div_exact(&cb));
            let n = comb(&a.num.mul(&fa), &b.num.mul(&fb));
            let (n, d) = reduce_parts(n, Poly::monomial(m, c));
            return Scalar::raw(n, d);
        }
        let g = gcd(&a.den, &b.den);
        if g.is_one() {
            let n = comb(&a.num.mul(&b.den), &b.num.mul(&a.den));
            let (n, d) = fix_sign(n, a.den.mul(&b.den));
            return Scalar::raw(n, d);
        }
        let ad = a.den.div_exact(&g).unwrap();
        let bd = b.den.div_exact(&g).unwrap();
        let n = comb(&a.num.mul(&bd), &b.num.mul(&ad));
        if n.is_zero() {
            return Scalar::zero();
        }
        let h = gcd(&n, &g);
        let (n, g2) = if h.is_one() {
            (n, g)
        } else {
            (n.div_exact(&h).unwrap(), g.div_exact(&h).unwrap())
        };
        let (n, d) = fix_sign(n, ad.mul(&bd).mul(&g2));
        Scalar::raw(n, d)
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        let (a, b) = (&self.0, &o.0);
        if a.den.is_one() && b.den.is_one() {
            return Scalar::raw(a.num.mul(&b.num), Poly::one());
        }
        let g1 = cheap_gcd(&a.num, &b.den);
        let g2 = cheap_gcd(&b.num, &a.den);
        let an = div_by(&a.num, &g1);
        let bd = div_by(&b.den, &g1);
        let bn = div_by(&b.num, &g2);
        let ad = div_by(&a.den, &g2);
        let (n, d) = fix_sign(an.mul(&bn), ad.mul(&bd));
        Scalar::raw(n, d)
    }

    pub fn inv(&self) -> Result<Scalar, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let (n, d) = fix_sign(self.0.den.clone(), self.0.num.clone());
        Ok(Scalar::raw(n, d))
    }

    pub fn div(&self, o: &Scalar) -> Result<Scalar, ExactError> {
        Ok(self.mul(&o.inv()?))
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, e: i64) -> Result<Scalar, ExactError> {
        if e < 0 {
            return self.inv()?.powi(-e);
        }
        if e == 0 {
            return Ok(Scalar::one());
        }
        let n = self.0.num.pow(e as u32);
        let d = self.0.den.pow(e as u32);
        let (n, d) = fix_sign(n, d);
        Ok(Scalar::raw(n, d))
    }

    pub fn scale_i64(&self, c: i64) -> Scalar {
        self.mul(&Scalar::from_i64(c))
    }

    /// Apply a monomial map to numerator and denominator, then re-reduce.
    /// Fails if the denominator maps to zero.
    pub fn map_monomials(
        &self,
        f: impl Fn([u32; NVARS]) -> [u32; NVARS] + Copy,
    ) -> Result<Scalar, ExactError> {
        let n = self.0.num.map_monomials(f);
        let d = self.0.den.map_monomials(f);
        if d.is_zero() {
            return Err(ExactError::PoleOnSpecialization);
        }
        Scalar::from_frac(n, d)
    }

    /// Substitute a symbol by a scalar value.
    pub fn subs(&self, v: usize, value: &Scalar) -> Result<Scalar, ExactError> {
        if (self.0.num.var_mask() | self.0.den.var_mask()) & (1 << v) == 0 {
            return Ok(self.clone());
        }
        let n = subs_poly(&self.0.num, v, value);
        let d = subs_poly(&self.0.den, v, value);
        if d.is_zero() {
            return Err(ExactError::PoleOnSpecialization);
        }
        n.div(&d)
    }

    /// Taylor coefficients at `v = 0` up to `v^order`.  Fails with
    /// `PoleOnSpecialization` when the denominator vanishes at `v = 0`.
    pub fn taylor_in(&self, v: usize, order: u32) -> Result<Vec<Scalar>, ExactError> {
        let split = |p: &Poly| -> Vec<Scalar> {
            let mut c = vec![Scalar::zero(); order as usize + 1];
            for (e, q) in p.coeffs_in(v) {
                if e <= order {
                    c[e as usize] = Scalar::from_poly(q);
                }
            }
            c
        };
        let n = split(&self.0.num);
        let d = split(&self.0.den);
        if d[0].is_zero() {
            return Err(ExactError::PoleOnSpecialization);
        }
        let d0 = d[0].inv()?;
        let mut out: Vec<Scalar> = Vec::with_capacity(n.len());
        for k in 0..n.len() {
            let mut acc = n[k].clone();
            for j in 1..=k {
                if !d[j].is_zero() {
                    acc = acc.sub(&d[j].mul(&out[k - j]));
                }
            }
            out.push(acc.mul(&d0));
        }
        Ok(out)
    }

    /// Coefficients of a scalar that is a Laurent polynomial in `v` over the
    /// field of the remaining symbols, i.e. whose denominator is a power of
    /// `v` times a `v`-free polynomial.  Pairs are (exponent, coefficient).
    pub fn laurent_coeffs_in(&self, v: usize) -> Result<Vec<(i64, Scalar)>, ExactError> {
        let den = &self.0.den;
        let lo = den.min_degree_in(v);
        if den.degree_in(v) != lo {
            return Err(ExactError::NotDivisible);
        }
        let rest = Scalar::from_poly(den.div_mono(Mono::var(v, lo)));
        let rinv = rest.inv()?;
        let mut out: Vec<(i64, Scalar)> = self
            .0
            .num
            .coeffs_in(v)
            .into_iter()
            .map(|(e, c)| (e as i64 - lo as i64, Scalar::from_poly(c).mul(&rinv)))
            .collect();
        out.reverse();
        Ok(out)
    }

    /// Symbols occurring in numerator or denominator (bitmask).
    pub fn var_mask(&self) -> u32 {
        self.0.num.var_mask() | self.0.den.var_mask()
    }

    /// Total size in terms, a rough cost measure.
    pub fn size(&self) -> usize {
        self.0.num.len() + self.0.den.len()
    }
}

fn cheap_gcd(a: &Poly, b: &Poly) -> Poly {
    if b.is_one() || a.is_one() {
        return Poly::one();
    }
    gcd(a, b)
}

fn div_by(a: &Poly, g: &Poly) -> Poly {
    if g.is_one() {
        a.clone()
    } else {
        a.div_exact(g).unwrap()
    }
}

fn subs_poly(p: &Poly, v: usize, value: &Scalar) -> Scalar {
    // Horner in the substituted symbol
    let cs = p.coeffs_in(v);
    let mut acc = Scalar::zero();
    let mut last = match cs.first() {
        Some((e, _)) => *e,
        None => return acc,
    };
    for (e, c) in cs {
        if !acc.is_zero() {
            acc = acc.mul(&value.powi((last - e) as i64).unwrap());
        }
        acc = acc.add(&Scalar::from_poly(c));
        last = e;
    }
    if last > 0 {
        acc = acc.mul(&value.powi(last as i64).unwrap());
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = &self.0.num;
        let d = &self.0.den;
        if d.is_one() {
            return write!(f, "{n}");
        }
        let wrap = |p: &Poly| {
            let simple = p.is_constant()
                || (p.is_monomial() && p.lc().is_one() && {
                    let m = p.lt().unwrap().0;
                    m.degree() == m.exps().iter().copied().max().unwrap_or(0)
                });
            if !simple {
                format!("({p})")
            } else {
                format!("{p}")
            }
        };
        let ns = if n.len() > 1 { format!("({n})") } else { format!("{n}") };
        write!(f, "{}/{}", ns, wrap(d))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        let s = String::deserialize(d)?;
        crate::parse::parse_scalar(&s).map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for Scalar {
    type Err = ExactError;
    fn from_str(s: &str) -> Result<Scalar, ExactError> {
        crate::parse::parse_scalar(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn identity_and_exact_division() {
        assert_eq!(s("qh").div(&s("qh")).unwrap(), Scalar::one());
        assert_eq!(s("th^2 - 1").div(&s("th - 1")).unwrap(), s("th + 1"));
        let x = s("(1 - qh^4)/(1 - qh^2)").add(&Scalar::zero());
        assert_eq!(x, s("1 + qh^2"));
        assert!(s("qh").div(&Scalar::zero()).is_err());
    }

    #[test]
    fn canonical_sign_and_content() {
        let a = s("(2*qh)/(-4*th)");
        assert_eq!(a.den().lc(), Int::from(2));
        assert_eq!(a, s("-qh/(2*th)"));
        assert_eq!(s("1/qh").add(&s("1/th")), s("(qh + th)/(qh*th)"));
    }

    #[test]
    fn display_roundtrip() {
        for t in ["(qh^2 - 1)/(th + 3)", "-3/(2*qh)", "qh*th - 1", "5/7", "1/(z1^2*qh)"] {
            let v = s(t);
            let printed = v.to_string();
            assert_eq!(s(&printed), v, "{t} -> {printed}");
        }
    }

    #[test]
    fn taylor_and_laurent_coefficients() {
        let a = s("1/(1 - p)");
        let c = a.taylor_in(var::P, 3).unwrap();
        assert!(c.iter().all(|x| x.is_one()));
        assert!(s("1/p").taylor_in(var::P, 2).is_err());
        let b = s("(z1^2 + qh)/(z1*(qh - 1))");
        let l = b.laurent_coeffs_in(var::Z1).unwrap();
        assert_eq!(l, vec![(-1, s("qh/(qh - 1)")), (1, s("1/(qh - 1)"))]);
    }

    #[test]
    fn substitution() {
        let a = s("(z1^2 - 1)/(z1 + qh)");
        let b = a.subs(var::Z1, &s("qh^3")).unwrap();
        assert_eq!(b, s("(qh^6 - 1)/(qh^3 + qh)"));
        let c = s("1/(z1 - 2)");
        assert!(c.subs(var::Z1, &Scalar::from_i64(2)).is_err());
    }
}
