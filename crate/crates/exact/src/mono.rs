//! Packed monomials in the scalar symbols.
//!
//! A monomial is a `u128`: the top 16 bits hold the total degree and the
//! remaining 112 bits hold eight 14-bit exponents, most significant symbol
//! first. Integer comparison of the packed word is then graded
//! lexicographic order with `qh > th > z1 > … > p`.

use std::fmt;

/// Number of symbol slots.
pub const NVARS: usize = 8;

/// Printable names of the symbol slots, in order.
pub const VAR_NAMES: [&str; NVARS] = ["qh", "th", "z1", "z2", "z3", "z4", "w", "p"];

/// Symbol slot indices.
pub mod var {
    pub const QH: usize = 0;
    pub const TH: usize = 1;
    pub const Z1: usize = 2;
    pub const Z2: usize = 3;
    pub const Z3: usize = 4;
    pub const Z4: usize = 5;
    pub const W: usize = 6;
    pub const P: usize = 7;
}

const BITS: u32 = 14;
const FIELD: u128 = (1 << BITS) - 1;
/// Largest exponent accepted as an operand of a product.
pub const MAX_EXP: u32 = (1 << (BITS - 1)) - 1;
const GUARD: u128 = {
    let mut g = 0u128;
    let mut i = 0;
    while i < NVARS {
        g |= 1u128 << (shift(i) + BITS - 1);
        i += 1;
    }
    g
};

const fn shift(i: usize) -> u32 {
    BITS * (NVARS as u32 - 1 - i as u32)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono(pub u128);

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn from_exps(e: &[u32]) -> Mono {
        assert!(e.len() <= NVARS);
        let mut w = 0u128;
        let mut deg = 0u128;
        for (i, &x) in e.iter().enumerate() {
            assert!(x <= MAX_EXP, "exponent {x} too large");
            w |= (x as u128) << shift(i);
            deg += x as u128;
        }
        Mono(w | (deg << 112))
    }

    pub fn var(i: usize, e: u32) -> Mono {
        let mut v = [0u32; NVARS];
        v[i] = e;
        Mono::from_exps(&v)
    }

    #[inline]
    pub fn exp(self, i: usize) -> u32 {
        ((self.0 >> shift(i)) & FIELD) as u32
    }

    pub fn exps(self) -> [u32; NVARS] {
        let mut v = [0u32; NVARS];
        for (i, x) in v.iter_mut().enumerate() {
            *x = self.exp(i);
        }
        v
    }

    #[inline]
    pub fn degree(self) -> u32 {
        (self.0 >> 112) as u32
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn mul(self, o: Mono) -> Mono {
        assert!(
            (self.0 | o.0) & GUARD == 0,
            "monomial exponent overflow"
        );
        Mono(self.0 + o.0)
    }

    /// `self / o`, if `o` divides `self`.
    pub fn div(self, o: Mono) -> Option<Mono> {
        let mut w = 0u128;
        for i in 0..NVARS {
            let a = self.exp(i);
            let b = o.exp(i);
            if b > a {
                return None;
            }
            w |= ((a - b) as u128) << shift(i);
        }
        let deg = (self.degree() - o.degree()) as u128;
        Some(Mono(w | (deg << 112)))
    }

    pub fn divides(self, o: Mono) -> bool {
        (0..NVARS).all(|i| self.exp(i) <= o.exp(i))
    }

    pub fn gcd(self, o: Mono) -> Mono {
        let mut v = [0u32; NVARS];
        for (i, x) in v.iter_mut().enumerate() {
            *x = self.exp(i).min(o.exp(i));
        }
        Mono::from_exps(&v)
    }

    pub fn lcm(self, o: Mono) -> Mono {
        let mut v = [0u32; NVARS];
        for (i, x) in v.iter_mut().enumerate() {
            *x = self.exp(i).max(o.exp(i));
        }
        Mono::from_exps(&v)
    }

    pub fn pow(self, k: u32) -> Mono {
        let mut v = self.exps();
        for x in v.iter_mut() {
            *x *= k;
        }
        Mono::from_exps(&v)
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in 0..NVARS {
            let e = self.exp(i);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", VAR_NAMES[i])?;
            } else {
                write!(f, "{}^{}", VAR_NAMES[i], e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let q = Mono::var(var::QH, 1);
        let t = Mono::var(var::TH, 1);
        let t2 = Mono::var(var::TH, 2);
        assert!(q > t);
        assert!(t2 > q);
        assert!(q.mul(t) > t2);
        assert_eq!(q.mul(t).div(t), Some(q));
        assert_eq!(t.div(q), None);
    }

    #[test]
    fn roundtrip_exps() {
        let e = [3, 0, 7, 1, 0, 0, 2, 9];
        let m = Mono::from_exps(&e);
        assert_eq!(m.exps(), e);
        assert_eq!(m.degree(), 22);
    }
}
