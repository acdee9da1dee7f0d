//! Integers with an inline `i64` fast path and a `BigInt` fallback.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

/// Arbitrary precision integer. The `Big` variant is only used for values
/// outside the `i64` range, so equality and hashing can be structural.
#[derive(Clone)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(b),
        }
    }

    fn from_i128(v: i128) -> Int {
        if v >= i64::MIN as i128 && v <= i64::MAX as i128 {
            Int::Small(v as i64)
        } else {
            Int::Big(BigInt::from(v))
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Big(_) => None,
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    pub fn signum(&self) -> i32 {
        match self {
            Int::Small(v) => v.signum() as i32,
            Int::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_abs() {
                Some(a) => Int::Small(a),
                None => Int::Big(BigInt::from(*v).abs()),
            },
            Int::Big(b) => Int::Big(b.abs()),
        }
    }

    pub fn add(&self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(c) = a.checked_add(*b) {
                return Int::Small(c);
            }
            return Int::from_i128(*a as i128 + *b as i128);
        }
        Int::from_big(self.to_big() + o.to_big())
    }

    pub fn sub(&self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(c) = a.checked_sub(*b) {
                return Int::Small(c);
            }
            return Int::from_i128(*a as i128 - *b as i128);
        }
        Int::from_big(self.to_big() - o.to_big())
    }

    pub fn mul(&self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(c) = a.checked_mul(*b) {
                return Int::Small(c);
            }
            return Int::from_i128(*a as i128 * *b as i128);
        }
        Int::from_big(self.to_big() * o.to_big())
    }

    pub fn neg(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(c) => Int::Small(c),
                None => Int::Big(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::from_big(-b),
        }
    }

    /// Truncating division and remainder.
    pub fn div_rem(&self, o: &Int) -> (Int, Int) {
        assert!(!o.is_zero(), "integer division by zero");
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let (Some(q), Some(r)) = (a.checked_div(*b), a.checked_rem(*b)) {
                return (Int::Small(q), Int::Small(r));
            }
        }
        let (q, r) = self.to_big().div_rem(&o.to_big());
        (Int::from_big(q), Int::from_big(r))
    }

    /// Division that is known to be exact.
    pub fn div_exact(&self, o: &Int) -> Int {
        let (q, r) = self.div_rem(o);
        debug_assert!(r.is_zero(), "inexact integer division");
        q
    }

    /// Quotient if `o` divides `self`.
    pub fn checked_div_exact(&self, o: &Int) -> Option<Int> {
        let (q, r) = self.div_rem(o);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Non-negative gcd.
    pub fn gcd(&self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            let (mut x, mut y) = (a.unsigned_abs(), b.unsigned_abs());
            while y != 0 {
                let t = x % y;
                x = y;
                y = t;
            }
            if x <= i64::MAX as u64 {
                return Int::Small(x as i64);
            }
            return Int::Big(BigInt::from(x));
        }
        Int::from_big(self.to_big().gcd(&o.to_big()))
    }

    pub fn pow(&self, e: u32) -> Int {
        let mut r = Int::ONE;
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Residue in `[0, p)`.
    pub fn mod_u64(&self, p: u64) -> u64 {
        match self {
            Int::Small(v) => (*v as i128).rem_euclid(p as i128) as u64,
            Int::Big(b) => {
                let m = b.mod_floor(&BigInt::from(p));
                m.to_u64().unwrap()
            }
        }
    }

    /// Bit length of the absolute value.
    pub fn bits(&self) -> u64 {
        match self {
            Int::Small(v) => 64 - v.unsigned_abs().leading_zeros() as u64,
            Int::Big(b) => b.bits(),
        }
    }
}

impl PartialEq for Int {
    fn eq(&self, o: &Int) -> bool {
        match (self, o) {
            (Int::Small(a), Int::Small(b)) => a == b,
            (Int::Big(a), Int::Big(b)) => a == b,
            _ => false,
        }
    }
}
impl Eq for Int {}

impl Hash for Int {
    fn hash<H: Hasher>(&self, h: &mut H) {
        match self {
            Int::Small(v) => v.hash(h),
            Int::Big(b) => b.hash(h),
        }
    }
}

impl Ord for Int {
    fn cmp(&self, o: &Int) -> Ordering {
        match (self, o) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}
impl PartialOrd for Int {
    fn partial_cmp(&self, o: &Int) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Int {
        Int::Small(v)
    }
}
impl From<i32> for Int {
    fn from(v: i32) -> Int {
        Int::Small(v as i64)
    }
}
impl From<BigInt> for Int {
    fn from(b: BigInt) -> Int {
        Int::from_big(b)
    }
}

impl Zero for Int {
    fn zero() -> Int {
        Int::ZERO
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl std::ops::Add for Int {
    type Output = Int;
    fn add(self, o: Int) -> Int {
        Int::add(&self, &o)
    }
}
impl std::ops::Mul for Int {
    type Output = Int;
    fn mul(self, o: Int) -> Int {
        Int::mul(&self, &o)
    }
}
impl One for Int {
    fn one() -> Int {
        Int::ONE
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}
impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Int {
    type Err = num_bigint::ParseBigIntError;
    fn from_str(s: &str) -> Result<Int, Self::Err> {
        if let Ok(v) = s.parse::<i64>() {
            return Ok(Int::Small(v));
        }
        Ok(Int::from_big(s.parse::<BigInt>()?))
    }
}

/// Chinese remaindering: given `x ≡ a (mod m)` (symmetric residue) and
/// `x ≡ b (mod p)`, return the symmetric residue modulo `m·p`.
pub fn crt_symmetric(a: &BigInt, m: &BigInt, b: u64, p: u64) -> BigInt {
    let pm = BigInt::from(p);
    let a_mod_p = a.mod_floor(&pm).to_u64().unwrap();
    let m_mod_p = m.mod_floor(&pm).to_u64().unwrap();
    let inv = crate::modp::inv(m_mod_p, p);
    let diff = (b + p - a_mod_p) % p;
    let k = crate::modp::mul(diff, inv, p);
    let mm = m * &pm;
    let mut x = a + m * BigInt::from(k);
    let half = &mm >> 1;
    x = x.mod_floor(&mm);
    if x > half {
        x -= &mm;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes() {
        let a = Int::from(i64::MAX);
        let b = a.add(&Int::ONE);
        assert!(matches!(b, Int::Big(_)));
        assert_eq!(b.sub(&Int::ONE), a);
        let c = a.mul(&a);
        assert_eq!(c.div_exact(&a), a);
    }

    #[test]
    fn gcd_and_mod() {
        assert_eq!(Int::from(12).gcd(&Int::from(-18)), Int::from(6));
        assert_eq!(Int::from(-7).mod_u64(5), 3);
        let big: Int = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(big.mod_u64(1_000_000_007), 123456789012345678901234567890u128.rem_euclid(1_000_000_007) as u64);
    }

    #[test]
    fn crt_roundtrip() {
        let p1 = 2_147_483_647u64;
        let p2 = 2_147_483_629u64;
        let x = BigInt::from(-987654321012345i64);
        let a = x.mod_floor(&BigInt::from(p1));
        let a = if a > BigInt::from(p1 / 2) { a - BigInt::from(p1) } else { a };
        let b = x.mod_floor(&BigInt::from(p2)).to_u64().unwrap();
        assert_eq!(crt_symmetric(&a, &BigInt::from(p1), b, p2), x);
    }
}
