//! Monomial symmetric functions, dominant weights below a given one, and
//! Schur polynomials by the bialternant formula.

use crate::error::{CoreError, Result};
use crate::roots::{perm_sign, permutations};
use mac_exact::{var, LaurentPoly, Scalar};
use std::collections::BTreeSet;

pub fn is_dominant(l: &[i64]) -> bool {
    l.windows(2).all(|w| w[0] >= w[1])
}

/// Dominant integer weights `μ ≤ λ` (same total), in lexicographically
/// decreasing order, which refines the dominance order.
pub fn dominant_below(lambda: &[i64]) -> Result<Vec<Vec<i64>>> {
    if !is_dominant(lambda) {
        return Err(CoreError::NotDominant(format!("{lambda:?}")));
    }
    let n = lambda.len();
    let total: i64 = lambda.iter().sum();
    let (hi, lo) = (lambda[0], lambda[n - 1]);
    let mut out = Vec::new();
    fn rec(
        cur: &mut Vec<i64>,
        n: usize,
        max: i64,
        lo: i64,
        rem: i64,
        lambda: &[i64],
        pref: i64,
        out: &mut Vec<Vec<i64>>,
    ) {
        let k = cur.len();
        if k == n {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let left = (n - k) as i64;
        for v in (lo..=max).rev() {
            // Remaining entries lie in [lo, v].
            let r = rem - v;
            if r < lo * (left - 1) || r > v * (left - 1) {
                continue;
            }
            let np = pref + v;
            let lp: i64 = lambda[..=k].iter().sum();
            if np > lp {
                continue;
            }
            cur.push(v);
            rec(cur, n, v, lo, r, lambda, np, out);
            cur.pop();
        }
    }
    rec(&mut Vec::new(), n, hi, lo, total, lambda, 0, &mut out);
    Ok(out)
}

/// `m_μ = Σ` over distinct permutations of `μ` of `x^{wμ}`.
pub fn monomial_symmetric(mu: &[i64]) -> LaurentPoly {
    let n = mu.len();
    let mut seen = BTreeSet::new();
    for p in permutations(n) {
        let e: Vec<i32> = (0..n).map(|i| mu[p[i]] as i32).collect();
        seen.insert(e);
    }
    LaurentPoly::from_terms(n, seen.into_iter().map(|e| (e, Scalar::one())))
}

/// Alternant `a_μ = Σ_w sgn(w) x^{wμ}`.
pub fn alternant(mu: &[i64]) -> LaurentPoly {
    let n = mu.len();
    let mut a = LaurentPoly::zero(n);
    for p in permutations(n) {
        let e: Vec<i32> = (0..n).map(|i| mu[p[i]] as i32).collect();
        a.add_term(e, &Scalar::from_i64(perm_sign(&p)));
    }
    a
}

/// Schur polynomial `s_λ = a_{λ+δ}/a_δ`, by exact division.
pub fn schur_bialternant(lambda: &[i64]) -> Result<LaurentPoly> {
    if !is_dominant(lambda) {
        return Err(CoreError::NotDominant(format!("{lambda:?}")));
    }
    let n = lambda.len();
    let delta: Vec<i64> = (0..n).map(|i| (n - 1 - i) as i64).collect();
    let ld: Vec<i64> = lambda.iter().zip(&delta).map(|(a, b)| a + b).collect();
    Ok(alternant(&ld).exact_div(&alternant(&delta))?)
}

/// Specialize `t = q`, i.e. `th^{2k} ↦ qh^{nk}`.  Fails on odd powers of `th`.
pub fn specialize_t_equals_q(n: usize, c: &Scalar) -> Result<Scalar> {
    let bad = |p: &mac_exact::Poly| p.terms().iter().any(|(m, _)| m.exp(var::TH) % 2 == 1);
    if bad(c.num()) || bad(c.den()) {
        return Err(CoreError::InvalidArgument(format!("odd power of th in {c}")));
    }
    Ok(c.map_monomials(|mut e| {
        let k = e[var::TH] / 2;
        e[var::TH] = 0;
        e[var::QH] += n as u32 * k;
        e
    })?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dominant_enumeration() {
        let d = dominant_below(&[2, 0]).unwrap();
        assert_eq!(d, vec![vec![2, 0], vec![1, 1]]);
        let d = dominant_below(&[2, 1, 0]).unwrap();
        assert_eq!(d, vec![vec![2, 1, 0], vec![1, 1, 1]]);
        assert_eq!(dominant_below(&[4, 0]).unwrap().len(), 3);
        assert!(dominant_below(&[0, 2]).is_err());
    }

    #[test]
    fn schur_small() {
        let s = schur_bialternant(&[2, 0]).unwrap();
        let expect = monomial_symmetric(&[2, 0]).add(&monomial_symmetric(&[1, 1]));
        assert_eq!(s, expect);
    }
}
