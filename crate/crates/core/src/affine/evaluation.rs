//! Evaluation module `U(1)` of `U_q(ŝl₂)` on the function module
//! `u_m = x₁^m x₂^{−m}`, with evaluation parameter `w`.
//!
//! The finite generators act as in the rank-one module.  The affine ones
//! are taken in the family
//! `E_0 ↦ w F k^a`, `F_0 ↦ w⁻¹ k^b E`, `K_0 ↦ k⁻¹`,
//! and the exponents are fixed by requiring every defining relation to hold.

use crate::error::{CoreError, Result};
use crate::uq::{qint, qq, FunctionModule, LineModule, Op};
use mac_exact::{var, Scalar};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub name: String,
    pub ok: bool,
}

/// Cartan exponents in `E_0 ↦ w F k^a`, `F_0 ↦ w⁻¹ k^b E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EvalConvention {
    pub a: i64,
    pub b: i64,
}

/// The convention selected by [`build_evaluation_rep`].
pub const PINNED: EvalConvention = EvalConvention { a: 0, b: 0 };

impl EvalConvention {
    /// `E_i u_m = c u_{m'}`, returned as `(m', c)`.
    pub fn e(&self, i: usize, m: i64, w: &Scalar) -> (i64, Scalar) {
        let fm = FunctionModule;
        if i == 1 {
            (m + 1, fm.e(m))
        } else {
            (m - 1, w.mul(&qq(2 * self.a * m)).mul(&fm.f(m)))
        }
    }

    /// `F_i u_m = c u_{m'}`.
    pub fn f(&self, i: usize, m: i64, w: &Scalar) -> (i64, Scalar) {
        let fm = FunctionModule;
        if i == 1 {
            (m - 1, fm.f(m))
        } else {
            let wi = w.inv().expect("w is a unit");
            (m + 1, wi.mul(&qq(2 * self.b * (m + 1))).mul(&fm.e(m)))
        }
    }

    /// `K_i u_m`: `K_1 = k = q^{2m}`, `K_0 = k⁻¹`.
    pub fn k(&self, i: usize, m: i64) -> Scalar {
        if i == 1 {
            qq(2 * m)
        } else {
            qq(-2 * m)
        }
    }
}

/// Matrices of the generators on `u_m`, `|m| ≤ radius`.
#[derive(Clone, Debug)]
pub struct EvaluationRep {
    pub convention: EvalConvention,
    pub radius: i64,
    pub w: Scalar,
    pub e: [Op; 2],
    pub f: [Op; 2],
    pub k: [Op; 2],
    pub k_inv: [Op; 2],
}

const CARTAN: [[i64; 2]; 2] = super::qgroup::CARTAN;

impl EvaluationRep {
    pub fn build(conv: EvalConvention, radius: i64, w: &Scalar) -> EvaluationRep {
        let (lo, hi) = (-radius, radius);
        let gen = |get: &dyn Fn(i64) -> (i64, Scalar), step: i64| Op::shift(lo, hi, step, |m| get(m).1);
        let e = [
            gen(&|m| conv.e(0, m, w), -1),
            gen(&|m| conv.e(1, m, w), 1),
        ];
        let f = [
            gen(&|m| conv.f(0, m, w), 1),
            gen(&|m| conv.f(1, m, w), -1),
        ];
        let k = [Op::shift(lo, hi, 0, |m| conv.k(0, m)), Op::shift(lo, hi, 0, |m| conv.k(1, m))];
        let k_inv = [
            Op::shift(lo, hi, 0, |m| conv.k(0, m).inv().unwrap()),
            Op::shift(lo, hi, 0, |m| conv.k(1, m).inv().unwrap()),
        ];
        EvaluationRep {
            convention: conv,
            radius,
            w: w.clone(),
            e,
            f,
            k,
            k_inv,
        }
    }

    /// All defining relations of `U_q(ŝl₂)` plus `K_δ = K_0K_1 = 1`, on the
    /// columns at distance `≥ margin` from the ends of the truncation.
    pub fn check_relations(&self, margin: i64) -> Vec<Relation> {
        let (a, b) = (-self.radius + margin, self.radius - margin);
        let id = Op::identity(-self.radius, self.radius);
        let dq = qq(1).sub(&qq(-1)).inv().unwrap();
        let mut out = Vec::new();
        let mut push = |name: String, l: Op, r: Op| {
            out.push(Relation {
                name,
                ok: l.agrees_on(&r, a, b),
            })
        };
        push("K_δ = K_0 K_1 = 1".into(), self.k[0].mul(&self.k[1]), id.clone());
        for i in 0..2 {
            push(format!("K_{i} K_{i}⁻¹ = 1"), self.k[i].mul(&self.k_inv[i]), id.clone());
            for j in 0..2 {
                let c = CARTAN[i][j];
                push(
                    format!("K_{i} E_{j} K_{i}⁻¹ = q^{c} E_{j}"),
                    self.k[i].mul(&self.e[j]).mul(&self.k_inv[i]),
                    self.e[j].scale(&qq(c)),
                );
                push(
                    format!("K_{i} F_{j} K_{i}⁻¹ = q^{} F_{j}", -c),
                    self.k[i].mul(&self.f[j]).mul(&self.k_inv[i]),
                    self.f[j].scale(&qq(-c)),
                );
                let rhs = if i == j {
                    self.k[i].sub(&self.k_inv[i]).scale(&dq)
                } else {
                    Op::zero(-self.radius, self.radius)
                };
                push(format!("[E_{i}, F_{j}] = δ_{i}{j} [K_{i}; 0]"), self.e[i].commutator(&self.f[j]), rhs);
            }
        }
        let zero = Op::zero(-self.radius, self.radius);
        for (i, j) in [(0, 1), (1, 0)] {
            for (name, g) in [("E", &self.e), ("F", &self.f)] {
                push(format!("Serre relation in {name}_{i}, {name}_{j}"), serre(&g[i], &g[j]), zero.clone());
            }
        }
        out
    }
}

/// `Σ_l (−1)^l [3 choose l] X^{3−l} Y X^l`.
fn serre(x: &Op, y: &Op) -> Op {
    let mut acc = Op::zero(x.lo, x.hi);
    for l in 0..=3u32 {
        let c = if l == 0 || l == 3 { Scalar::one() } else { qint(3) };
        let c = if l % 2 == 1 { c.neg() } else { c };
        acc = acc.add(&x.pow(3 - l).mul(y).mul(&x.pow(l)).scale(&c));
    }
    acc
}

/// Searched conventions, the expected one first.
pub fn convention_family() -> Vec<EvalConvention> {
    let mut out = vec![PINNED];
    for a in -1..=1 {
        for b in -1..=1 {
            let c = EvalConvention { a, b };
            if c != PINNED {
                out.push(c);
            }
        }
    }
    out
}

/// Margin kept free of truncation effects: the longest relation is a word
/// of length four.
pub const MARGIN: i64 = 4;

/// Evaluation module on `|m| ≤ d + 4` with symbolic `w`, using the first
/// convention of the family for which every relation holds on `|m| ≤ d`.
pub fn build_evaluation_rep(d: usize) -> Result<EvaluationRep> {
    let w = Scalar::var(var::W);
    let radius = d as i64 + MARGIN;
    let mut first_failure = None;
    for conv in convention_family() {
        let rep = EvaluationRep::build(conv, radius, &w);
        let checks = rep.check_relations(MARGIN);
        match checks.iter().find(|r| !r.ok) {
            None => return Ok(rep),
            Some(r) => {
                first_failure.get_or_insert_with(|| format!("a = {}, b = {}: {}", conv.a, conv.b, r.name));
            }
        }
    }
    Err(CoreError::NoConvention(first_failure.unwrap_or_default()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pinned_convention_is_selected() {
        let rep = build_evaluation_rep(4).unwrap();
        assert_eq!(rep.convention, PINNED);
        assert_eq!(rep.check_relations(MARGIN).len(), 19);
    }

    #[test]
    fn other_conventions_fail() {
        let w = Scalar::var(var::W);
        for conv in convention_family().into_iter().skip(1) {
            let rep = EvaluationRep::build(conv, 8, &w);
            let bad: Vec<_> = rep.check_relations(MARGIN).into_iter().filter(|r| !r.ok).collect();
            assert!(!bad.is_empty(), "{conv:?}");
        }
    }

    #[test]
    fn k_delta_is_trivial() {
        let rep = build_evaluation_rep(2).unwrap();
        let kd = rep.k[0].mul(&rep.k[1]);
        for m in -2..=2 {
            assert!(kd.entry(m, m).is_one());
        }
    }
}
