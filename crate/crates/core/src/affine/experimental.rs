//! Experimental: `ψ = Ψ_{θ_λ}/φ` for dominant affine `λ = lω_1 + kε`
//! (n = 2), and how far its depth slices are symmetric under the finite
//! Weyl group.  This is a report, not a check: the truncation in height
//! cuts every slice, and nothing here is claimed at full scale.

use super::kernel::affine_phi;
use super::qgroup::build_affine_qgroup;
use super::trace::affine_trace_psi_with;
use super::AffineWeightChar;
use crate::chars::{q_pow, WeightChar};
use crate::error::{CoreError, Result};
use crate::roots::FiniteWeight;
use mac_exact::{Scalar, Series};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    pub l: u32,
    pub level: u32,
    pub height: u32,
    pub imag_mult: u32,
    /// Pairs `(m_0, m_1) ↔ (m_0, 2m_0 + l − m_1)` inside the window.
    pub pairs: usize,
    pub symmetric: usize,
    pub asymmetric: Vec<[Vec<u32>; 2]>,
    pub psi: Series,
}

/// `θ_λ(μ) = q^{⟨λ,μ⟩}` for `λ = lω_1 + kε`: `θ(ε) = 1`, `θ(δ) = q^k`.
pub fn theta_dominant(l: u32, k: u32) -> Result<AffineWeightChar> {
    if l > k {
        return Err(CoreError::NotDominant(format!("{l}ω_1 + {k}ε")));
    }
    let fin = WeightChar::theta_mu(&FiniteWeight::omega(1, 2).scale(crate::roots::Q::from_integer(l as i64)))?;
    Ok(AffineWeightChar::new(fin, Scalar::one(), q_pow(2, k as i64)))
}

pub fn dominant_trace_symmetry(l: u32, k: u32, h: u32, imag_mult: u32) -> Result<SymmetryReport> {
    let th = theta_dominant(l, k)?;
    let u = build_affine_qgroup(h)?;
    let psi_tr = affine_trace_psi_with(&th, h, &Scalar::one(), &u)?;
    let phi = affine_phi(2, h, h, imag_mult);
    let psi = psi_tr.coeffs.mul(&phi.inverse(h)?);
    let mut pairs = 0;
    let mut symmetric = 0;
    let mut asymmetric = Vec::new();
    for m0 in 0..=h {
        for m1 in 0..=(h - m0) {
            let m1p = 2 * m0 as i64 + l as i64 - m1 as i64;
            if m1p <= m1 as i64 || m1p < 0 || m0 as i64 + m1p > h as i64 {
                continue;
            }
            let a = vec![m0, m1];
            let b = vec![m0, m1p as u32];
            pairs += 1;
            if psi.coeff(&a) == psi.coeff(&b) {
                symmetric += 1;
            } else {
                asymmetric.push([a, b]);
            }
        }
    }
    Ok(SymmetryReport {
        l,
        level: k,
        height: h,
        imag_mult,
        pairs,
        symmetric,
        asymmetric,
        psi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_is_well_formed() {
        let rep = dominant_trace_symmetry(0, 1, 2, 1).unwrap();
        assert!(rep.psi.coeff(&[0, 0]).is_one());
        assert_eq!(rep.pairs, rep.symmetric + rep.asymmetric.len());
        assert!(matches!(theta_dominant(2, 1), Err(CoreError::NotDominant(_))));
    }
}
