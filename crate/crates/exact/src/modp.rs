//! Word-size prime field arithmetic and polynomials over it, used by the
//! modular gcd.

use crate::mono::NVARS;
use std::collections::BTreeMap;

#[inline]
pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero mod p");
    pow(a % p, p - 2, p)
}

/// Descending primes below 2^31, generated by trial division.
pub fn primes() -> impl Iterator<Item = u64> {
    let mut c: u64 = (1 << 31) - 1;
    std::iter::from_fn(move || loop {
        let x = c;
        c -= 2;
        if is_prime(x) {
            return Some(x);
        }
    })
}

fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= x {
        if x % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Small deterministic generator for evaluation points.
pub struct Points(u64);

impl Points {
    pub fn new(seed: u64) -> Points {
        Points(seed ^ 0x9E37_79B9_7F4A_7C15)
    }
    pub fn next(&mut self, p: u64) -> u64 {
        // splitmix64
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        1 + z % (p - 1)
    }
}

// ---------- dense univariate polynomials, low degree first ----------

pub type UPoly = Vec<u64>;

pub fn u_trim(a: &mut UPoly) {
    while let Some(&0) = a.last() {
        a.pop();
    }
}

pub fn u_deg(a: &UPoly) -> isize {
    a.len() as isize - 1
}

pub fn u_eval(a: &UPoly, x: u64, p: u64) -> u64 {
    let mut r = 0u64;
    for &c in a.iter().rev() {
        r = add(mul(r, x, p), c, p);
    }
    r
}

pub fn u_scale(a: &UPoly, c: u64, p: u64) -> UPoly {
    if c == 0 {
        return Vec::new();
    }
    a.iter().map(|&x| mul(x, c, p)).collect()
}

pub fn u_add(a: &UPoly, b: &UPoly, p: u64) -> UPoly {
    let n = a.len().max(b.len());
    let mut r = vec![0u64; n];
    for (i, x) in r.iter_mut().enumerate() {
        let u = a.get(i).copied().unwrap_or(0);
        let v = b.get(i).copied().unwrap_or(0);
        *x = add(u, v, p);
    }
    u_trim(&mut r);
    r
}

pub fn u_sub(a: &UPoly, b: &UPoly, p: u64) -> UPoly {
    let n = a.len().max(b.len());
    let mut r = vec![0u64; n];
    for (i, x) in r.iter_mut().enumerate() {
        let u = a.get(i).copied().unwrap_or(0);
        let v = b.get(i).copied().unwrap_or(0);
        *x = sub(u, v, p);
    }
    u_trim(&mut r);
    r
}

pub fn u_mul(a: &UPoly, b: &UPoly, p: u64) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = add(r[i + j], mul(x, y, p), p);
        }
    }
    u_trim(&mut r);
    r
}

/// Quotient and remainder.
pub fn u_divrem(a: &UPoly, b: &UPoly, p: u64) -> (UPoly, UPoly) {
    assert!(!b.is_empty());
    let mut r = a.clone();
    u_trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let il = inv(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = mul(r[k + db], il, p);
        q[k] = c;
        if c != 0 {
            for j in 0..=db {
                r[k + j] = sub(r[k + j], mul(c, b[j], p), p);
            }
        }
    }
    r.truncate(db);
    u_trim(&mut r);
    u_trim(&mut q);
    (q, r)
}

pub fn u_monic(a: &UPoly, p: u64) -> UPoly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => u_scale(a, inv(l, p), p),
    }
}

pub fn u_gcd(a: &UPoly, b: &UPoly, p: u64) -> UPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    u_trim(&mut x);
    u_trim(&mut y);
    while !y.is_empty() {
        let (_, r) = u_divrem(&x, &y, p);
        x = y;
        y = r;
    }
    u_monic(&x, p)
}

// ---------- sparse multivariate polynomials, lex order ----------

pub type Exps = [u32; NVARS];

/// Terms sorted by strictly decreasing exponent array (lex).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    pub terms: Vec<(Exps, u64)>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly { terms: Vec::new() }
    }

    pub fn constant(c: u64) -> MPoly {
        if c == 0 {
            MPoly::zero()
        } else {
            MPoly {
                terms: vec![([0; NVARS], c)],
            }
        }
    }

    pub fn from_unsorted(mut t: Vec<(Exps, u64)>, p: u64) -> MPoly {
        t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Exps, u64)> = Vec::with_capacity(t.len());
        for (e, c) in t {
            if let Some(last) = out.last_mut() {
                if last.0 == e {
                    last.1 = add(last.1, c, p);
                    continue;
                }
            }
            out.push((e, c));
        }
        out.retain(|x| x.1 != 0);
        MPoly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == [0; NVARS]
    }

    pub fn lead(&self) -> Option<&Exps> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn monic(&self, p: u64) -> MPoly {
        match self.terms.first() {
            None => MPoly::zero(),
            Some(&(_, c)) => {
                let i = inv(c, p);
                MPoly {
                    terms: self.terms.iter().map(|(e, x)| (*e, mul(*x, i, p))).collect(),
                }
            }
        }
    }

    pub fn scale(&self, c: u64, p: u64) -> MPoly {
        if c == 0 {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, mul(*x, c, p))).collect(),
        }
    }

    /// Group by all variables except `v`: key (with `v` zeroed) → dense
    /// polynomial in `v`. Keys in decreasing lex order.
    pub fn group_by(&self, v: usize) -> Vec<(Exps, UPoly)> {
        let mut map: BTreeMap<Exps, UPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut k = *e;
            let d = k[v] as usize;
            k[v] = 0;
            let u = map.entry(k).or_default();
            if u.len() <= d {
                u.resize(d + 1, 0);
            }
            u[d] = *c;
        }
        map.into_iter().rev().collect()
    }

    pub fn from_groups(g: &[(Exps, UPoly)], v: usize, p: u64) -> MPoly {
        let mut t = Vec::new();
        for (k, u) in g {
            for (d, &c) in u.iter().enumerate() {
                if c != 0 {
                    let mut e = *k;
                    e[v] = d as u32;
                    t.push((e, c));
                }
            }
        }
        MPoly::from_unsorted(t, p)
    }

    pub fn mul(&self, o: &MPoly, p: u64) -> MPoly {
        let mut t = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let mut e = [0u32; NVARS];
                for i in 0..NVARS {
                    e[i] = ea[i] + eb[i];
                }
                t.push((e, mul(*ca, *cb, p)));
            }
        }
        MPoly::from_unsorted(t, p)
    }

    /// Exact quotient if `d` divides `self`.
    pub fn div_exact(&self, d: &MPoly, p: u64) -> Option<MPoly> {
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        let (de, dc) = d.terms[0];
        let il = inv(dc, p);
        let mut rem: BTreeMap<Exps, u64> = self.terms.iter().cloned().collect();
        let mut q = Vec::new();
        while let Some((&e, &c)) = rem.iter().next_back() {
            let mut qe = [0u32; NVARS];
            for i in 0..NVARS {
                if e[i] < de[i] {
                    return None;
                }
                qe[i] = e[i] - de[i];
            }
            let qc = mul(c, il, p);
            for (x, y) in &d.terms {
                let mut k = [0u32; NVARS];
                for i in 0..NVARS {
                    k[i] = x[i] + qe[i];
                }
                let prod = mul(*y, qc, p);
                let cur = rem.get(&k).copied().unwrap_or(0);
                let nv = sub(cur, prod, p);
                if nv == 0 {
                    rem.remove(&k);
                } else {
                    rem.insert(k, nv);
                }
            }
            q.push((qe, qc));
        }
        Some(MPoly { terms: q })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn univariate_gcd() {
        let p = 1_000_003;
        // (x+1)(x+2) and (x+1)(x+3)
        let a = u_mul(&vec![1, 1], &vec![2, 1], p);
        let b = u_mul(&vec![1, 1], &vec![3, 1], p);
        assert_eq!(u_gcd(&a, &b, p), vec![1, 1]);
    }

    #[test]
    fn prime_stream() {
        let v: Vec<u64> = primes().take(3).collect();
        assert_eq!(v[0], 2_147_483_647);
        assert!(v[1] < v[0] && v[2] < v[1]);
    }
}
