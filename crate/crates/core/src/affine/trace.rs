//! Intertwiners `Φ: M_σ → M_σ ⊗ U(1)` for `U_q(ŝl₂)` and their traces
//! `Ψ = Σ_β Tr(Φ|_{M[σθ_{−β}]}) σθ_{−β}`.
//!
//! `Φ(v) = Σ_β x_β ⊗ u_{m(β)}`, `m(β) = m_1 − m_0`, is fixed by
//! `Δ(E_i)Φ(v) = 0` with `Δ(E_i) = E_i ⊗ 1 + K_i ⊗ E_i`, which reads
//! `E_i x_β = −σ(α_i) q^{−⟨β−α_i, α_i⟩} e_i(m(β−α_i)) x_{β−α_i}`.
//! On the rest of the module `Φ(b v) = Δ(b) Φ(v)`.

use super::evaluation::{EvalConvention, PINNED};
use super::qgroup::{bidegrees_up_to, build_affine_qgroup, AffineQGroupTrunc, AffineVerma, Bidegree, Vector, Word};
use super::AffineWeightChar;
use crate::error::{CoreError, Result};
use crate::roots::AffineWeight;
use mac_exact::linalg::solve;
use mac_exact::series::sum;
use mac_exact::{ExactError, Scalar, Series};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

pub fn m_of(b: Bidegree) -> i64 {
    b[1] as i64 - b[0] as i64
}

/// `σ = θτ` and its values `(σ(α_0), σ(α_1))`.
pub fn affine_sigma(theta: &AffineWeightChar) -> Result<(AffineWeightChar, [Scalar; 2])> {
    if theta.n() != 2 {
        return Err(CoreError::InvalidArgument("the affine quantum group tower needs n = 2".into()));
    }
    let sigma = theta.mul(&AffineWeightChar::tau(2));
    let s0 = sigma.eval(&AffineWeight::simple_root(0, 2))?;
    let s1 = sigma.eval(&AffineWeight::simple_root(1, 2))?;
    Ok((sigma, [s0, s1]))
}

#[derive(Clone, Debug)]
pub struct AffineIntertwiner {
    pub height: u32,
    pub w: Scalar,
    pub convention: EvalConvention,
    /// `x_β` in the reduced-word basis of `M_β`.
    pub x: BTreeMap<Bidegree, Vector>,
}

/// Solve for `x_β`, `height(β) ≤ h`, in increasing height.
pub fn solve_affine_intertwiner(
    m: &AffineVerma,
    conv: EvalConvention,
    w: &Scalar,
    h: u32,
) -> Result<AffineIntertwiner> {
    if h > m.u.max_degree {
        return Err(CoreError::InvalidArgument(format!(
            "height {h} exceeds the quantum group truncation {}",
            m.u.max_degree
        )));
    }
    let mut x: BTreeMap<Bidegree, Vector> = BTreeMap::new();
    x.insert([0, 0], Vector::from([(0, Scalar::one())]));
    for ht in 1..=h {
        let degs: Vec<Bidegree> = bidegrees_up_to(ht).into_iter().filter(|b| b[0] + b[1] == ht).collect();
        let solved: Vec<Result<(Bidegree, Vector)>> = degs
            .par_iter()
            .map(|&b| solve_degree(m, conv, w, b, &x).map(|v| (b, v)))
            .collect();
        for s in solved {
            let (b, v) = s?;
            x.insert(b, v);
        }
    }
    Ok(AffineIntertwiner {
        height: h,
        w: w.clone(),
        convention: conv,
        x,
    })
}

fn solve_degree(
    m: &AffineVerma,
    conv: EvalConvention,
    w: &Scalar,
    b: Bidegree,
    x: &BTreeMap<Bidegree, Vector>,
) -> Result<Vector> {
    let dim = m.u.dim(b);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    for i in 0..2 {
        if b[i] == 0 {
            continue;
        }
        let mut pb = b;
        pb[i] -= 1;
        let cols = m.e_matrix(i, b)?;
        let (target, e) = conv.e(i, m_of(pb), w);
        debug_assert_eq!(target, m_of(b));
        let coef = m.k_value(i, pb).mul(&e).neg();
        let prev = &x[&pb];
        for r in 0..m.u.dim(pb) {
            rows.push((0..dim).map(|c| cols[c].get(&r).cloned().unwrap_or_else(Scalar::zero)).collect());
            rhs.push(prev.get(&r).map(|v| v.mul(&coef)).unwrap_or_else(Scalar::zero));
        }
    }
    let beta = vec![b[0] as i64, b[1] as i64];
    match solve(&rows, &rhs, dim) {
        Ok(v) => Ok(v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()),
        Err(ExactError::Singular(_)) | Err(ExactError::Inconsistent) => Err(CoreError::Resonance(beta)),
        Err(e) => Err(e.into()),
    }
}

impl AffineIntertwiner {
    /// Coefficient of `b ⊗ u_0` in `Φ(b)` for the `k`-th basis word `b` of `M_β`.
    fn diagonal(&self, u: &AffineQGroupTrunc, b: Bidegree, k: usize) -> Result<Scalar> {
        let word = &u.piece(b).expect("in range").basis[k];
        let conv = self.convention;
        // States (unreduced M-word, U index) ↦ coefficient.
        let mut st: BTreeMap<(Word, i64), Scalar> = BTreeMap::new();
        for (bp, v) in &self.x {
            if bp[0] > b[0] || bp[1] > b[1] {
                continue;
            }
            let p = u.piece(*bp).unwrap();
            for (&kk, c) in v {
                st.insert((p.basis[kk].clone(), m_of(*bp)), c.clone());
            }
        }
        for (pos, &j) in word.iter().enumerate().rev() {
            let j = j as usize;
            // Letters still to be applied after this one.
            let rest = super::qgroup::bidegree(&word[..pos]);
            let mut next: BTreeMap<(Word, i64), Vec<Scalar>> = BTreeMap::new();
            for ((mw, mu), c) in &st {
                let d = super::qgroup::bidegree(mw);
                let ok = |d: Bidegree| (0..2).all(|t| d[t] <= b[t] && d[t] + rest[t] >= b[t]);
                // F_j ⊗ K_j⁻¹
                let mut d1 = d;
                d1[j] += 1;
                if ok(d1) {
                    let mut w2 = vec![j as u8];
                    w2.extend(mw);
                    let kinv = conv.k(j, *mu).inv()?;
                    next.entry((w2, *mu)).or_default().push(c.mul(&kinv));
                }
                // 1 ⊗ F_j
                if ok(d) {
                    let (m2, f) = conv.f(j, *mu, &self.w);
                    if !f.is_zero() {
                        next.entry((mw.clone(), m2)).or_default().push(c.mul(&f));
                    }
                }
            }
            st = next
                .into_iter()
                .map(|(k, v)| (k, sum(&v)))
                .filter(|(_, v)| !v.is_zero())
                .collect();
        }
        let terms: Vec<(Word, Scalar)> = st
            .into_iter()
            .filter(|((mw, mu), _)| *mu == 0 && super::qgroup::bidegree(mw) == b)
            .map(|((mw, _), c)| (mw, c))
            .collect();
        let red = u.reduce_words(b, &terms)?;
        Ok(red.get(&k).cloned().unwrap_or_else(Scalar::zero))
    }

    /// `Ψ_β = Tr(Φ|_{M_β})` for every `β` of height `≤ h`.
    pub fn trace(&self, u: &AffineQGroupTrunc) -> Result<Series> {
        let degs = bidegrees_up_to(self.height);
        let vals: Vec<Result<(Bidegree, Scalar)>> = degs
            .par_iter()
            .map(|&b| {
                let parts: Vec<Scalar> = (0..u.dim(b)).map(|k| self.diagonal(u, b, k)).collect::<Result<_>>()?;
                Ok((b, sum(&parts)))
            })
            .collect();
        let mut s = Series::zero(2, self.height);
        for v in vals {
            let (b, c) = v?;
            s.set(b.to_vec(), c);
        }
        Ok(s)
    }
}

/// `Ψ_θ` based at `θτ`, coefficients indexed by `β = (m_0, m_1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffinePsi {
    pub base: AffineWeightChar,
    pub height: u32,
    pub coeffs: Series,
}

/// `Ψ_θ` to height `h` with evaluation parameter `w`, reusing `u`.
pub fn affine_trace_psi_with(theta: &AffineWeightChar, h: u32, w: &Scalar, u: &AffineQGroupTrunc) -> Result<AffinePsi> {
    let (sigma, s) = affine_sigma(theta)?;
    let m = AffineVerma::new(u, s)?;
    let phi = solve_affine_intertwiner(&m, PINNED, w, h)?;
    Ok(AffinePsi {
        base: sigma,
        height: h,
        coeffs: phi.trace(u)?,
    })
}

/// `Ψ_θ` to height `h`, at `w = 1` (the trace does not depend on `w`).
pub fn affine_trace_psi(theta: &AffineWeightChar, h: u32) -> Result<AffinePsi> {
    let u = build_affine_qgroup(h)?;
    affine_trace_psi_with(theta, h, &Scalar::one(), &u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::WeightChar;
    use crate::uq::trace_psi;
    use mac_exact::var;

    fn rational_theta(z: i64) -> AffineWeightChar {
        let fin = WeightChar::new(vec![Scalar::from_i64(z), Scalar::ratio(1, z)]);
        AffineWeightChar::with_finite(fin)
    }

    #[test]
    fn constant_term_and_finite_slice() {
        let th = rational_theta(3);
        let psi = affine_trace_psi(&th, 3).unwrap();
        assert!(psi.coeffs.coeff(&[0, 0]).is_one());
        let fin = trace_psi(&th.fin, 3).unwrap();
        for m in 0..=3u32 {
            assert_eq!(psi.coeffs.coeff(&[0, m]), fin.coeffs.coeff(&[m]), "m = {m}");
        }
    }

    #[test]
    fn independent_of_w() {
        let th = rational_theta(2);
        let u = build_affine_qgroup(2).unwrap();
        let w = Scalar::var(var::W);
        let a = affine_trace_psi_with(&th, 2, &w, &u).unwrap();
        for (_, c) in a.coeffs.terms() {
            assert_eq!(c.var_mask() & (1 << var::W), 0, "{c}");
        }
        let b = affine_trace_psi_with(&th, 2, &Scalar::one(), &u).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn symbolic_depth_two() {
        // Generic σ: every linear system up to height 2 has full rank.
        let th = AffineWeightChar::symbolic(2).unwrap();
        let psi = affine_trace_psi(&th, 2).unwrap();
        assert!(psi.coeffs.coeff(&[0, 0]).is_one());
        assert!(!psi.coeffs.coeff(&[1, 1]).is_zero());
    }

    #[test]
    fn intertwining_holds() {
        // Δ(E_i)Φ(v) = 0 is what the solver imposes; verify it independently
        // for the top-height component from the stored solution.
        let th = rational_theta(5);
        let u = build_affine_qgroup(3).unwrap();
        let (_, s) = affine_sigma(&th).unwrap();
        let m = AffineVerma::new(&u, s).unwrap();
        let phi = solve_affine_intertwiner(&m, PINNED, &Scalar::one(), 3).unwrap();
        for (b, v) in &phi.x {
            for i in 0..2 {
                if b[i] == 0 {
                    continue;
                }
                let mut pb = *b;
                pb[i] -= 1;
                let lhs = m.e(i, *b, v).unwrap();
                let (_, e) = PINNED.e(i, m_of(pb), &Scalar::one());
                let c = m.k_value(i, pb).mul(&e);
                for r in 0..u.dim(pb) {
                    let l = lhs.get(&r).cloned().unwrap_or_else(Scalar::zero);
                    let x = phi.x[&pb].get(&r).cloned().unwrap_or_else(Scalar::zero);
                    assert!(l.add(&c.mul(&x)).is_zero());
                }
            }
        }
    }
}
