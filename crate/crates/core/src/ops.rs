//! Standard difference operators `Σ a_ν T_ν` acting on weight series.
//!
//! A weight series based at `σ` is `Σ_β g_β σθ_{−β}`, `β ∈ Q⁺` in
//! simple-root coordinates.  `T_ν` multiplies `σθ_{−β}` by
//! `σ(ν)² q^{−2⟨β,ν⟩}`; on Laurent monomials this is `x^μ ↦ q^{2⟨μ,ν⟩}x^μ`.

use crate::chars::{q_pow, WeightChar};
use crate::roots::FiniteWeight;
use mac_exact::{Scalar, Series};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// GL coordinates of `β` given in simple-root coordinates.
pub fn beta_gl(m: &[u32]) -> Vec<i64> {
    let n = m.len() + 1;
    let at = |i: usize| if i == 0 || i == n { 0 } else { m[i - 1] as i64 };
    (0..n).map(|i| at(i + 1) - at(i)).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `T_ν` acting on a series based at the trivial character:
/// `g_β ↦ q^{−2⟨β,ν⟩} g_β`.
pub fn shift_automorphism(n: usize, nu: &[i64], g: &Series) -> Series {
    g.map_coeffs(|b, c| c.mul(&q_pow(n, -2 * dot(&beta_gl(b), nu))))
}

/// `T_ν` on a series based at `σ`.
pub fn apply_shift(base: &WeightChar, nu: &[i64], g: &Series) -> Series {
    let s = base.eval_gl(nu);
    shift_automorphism(base.n(), nu, g).scale(&s.mul(&s))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceOperator {
    pub n: usize,
    pub order: u32,
    pub terms: BTreeMap<Vec<i64>, Series>,
}

impl DifferenceOperator {
    pub fn zero(n: usize, order: u32) -> DifferenceOperator {
        DifferenceOperator {
            n,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, nu: Vec<i64>, a: Series) {
        let e = self
            .terms
            .remove(&nu)
            .map(|x| x.add(&a))
            .unwrap_or(a);
        if !e.is_zero() {
            self.terms.insert(nu, e);
        }
    }

    pub fn shifts(&self) -> Vec<Vec<i64>> {
        self.terms.keys().cloned().collect()
    }

    pub fn coeff(&self, nu: &[i64]) -> Option<&Series> {
        self.terms.get(nu)
    }

    /// Action on a series based at `base`.
    pub fn apply(&self, base: &WeightChar, g: &Series) -> Series {
        let mut out = Series::zero(g.dim(), self.order.min(g.order()));
        for (nu, a) in &self.terms {
            out = out.add(&a.mul(&apply_shift(base, nu, g)));
        }
        out
    }

    /// Composition `self ∘ o`, using `(a T_ν)(b T_μ) = a·T_ν(b)·T_{ν+μ}`.
    pub fn compose(&self, o: &DifferenceOperator) -> DifferenceOperator {
        let mut r = DifferenceOperator::zero(self.n, self.order.min(o.order));
        for (nu, a) in &self.terms {
            for (mu, b) in &o.terms {
                let s: Vec<i64> = nu.iter().zip(mu).map(|(x, y)| x + y).collect();
                r.add_term(s, a.mul(&shift_automorphism(self.n, nu, b)));
            }
        }
        r
    }

    pub fn sub(&self, o: &DifferenceOperator) -> DifferenceOperator {
        let mut r = self.clone();
        r.order = self.order.min(o.order);
        for (nu, b) in &o.terms {
            r.add_term(nu.clone(), b.neg());
        }
        r
    }

    pub fn truncate(&self, h: u32) -> DifferenceOperator {
        DifferenceOperator {
            n: self.n,
            order: h,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v.truncate(h))).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|s| s.is_zero())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    shift: Vec<i64>,
    coeff: Series,
}

impl Serialize for DifferenceOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(k, c)| TermJson {
                shift: k.clone(),
                coeff: c.clone(),
            })
            .collect();
        v.serialize(s)
    }
}

/// Series `Σ_k c_k Y_α^k` along a single root direction.
pub fn root_series(dim: usize, order: u32, alpha: &[u32], coeffs: &[Scalar]) -> Series {
    let mut s = Series::zero(dim, order);
    for (k, c) in coeffs.iter().enumerate() {
        let b: Vec<u32> = alpha.iter().map(|&a| a * k as u32).collect();
        s.add_term(b, c);
    }
    s
}

/// Simple-root coordinates of the positive root `e_i − e_j` (`i < j`).
pub fn root_coords_u32(i: usize, j: usize, n: usize) -> Vec<u32> {
    let (a, b) = (i.min(j), i.max(j));
    let w = FiniteWeight::e(a, n).sub(&FiniteWeight::e(b, n));
    w.root_coords().unwrap().into_iter().map(|x| x as u32).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_conversion() {
        assert_eq!(beta_gl(&[1]), vec![1, -1]);
        assert_eq!(beta_gl(&[1, 1]), vec![1, 0, -1]);
        assert_eq!(root_coords_u32(2, 0, 3), vec![1, 1]);
    }
}
