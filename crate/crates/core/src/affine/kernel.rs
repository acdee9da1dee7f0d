//! The affine kernel `φ` and the affine eigenvalues `P̃_r(θ)`.

use super::character::{affine_character, AffineCharacter};
use super::AffineWeightChar;
use crate::error::{CoreError, Result};
use crate::macdonald::phi_factor_coeffs;
use crate::ops::root_series;
use crate::roots::affine_positive_roots;
use mac_exact::{Scalar, Series};

/// Terms of `s` with `m_0 ≤ d`.
pub fn depth_truncate(s: &Series, d: u32) -> Series {
    let mut out = Series::zero(s.dim(), s.order());
    for (b, c) in s.terms() {
        if b[0] <= d {
            out.set(b.clone(), c.clone());
        }
    }
    out
}

/// Terms with `m_0 = 0`, regraded over the finite root lattice.
pub fn finite_slice(s: &Series) -> Series {
    let mut out = Series::zero(s.dim() - 1, s.order());
    for (b, c) in s.terms() {
        if b[0] == 0 {
            out.set(b[1..].to_vec(), c.clone());
        }
    }
    out
}

/// Series part of `φ` over `Q̃⁺`: the product over positive affine roots
/// with `m_0 ≤ d` of `F(θ_{−α})`, imaginary roots raised to `imag_mult`.
/// The prefactor `τ` is carried as the base point, as in the finite case.
pub fn affine_phi(n: usize, d: u32, h: u32, imag_mult: u32) -> Series {
    let c = phi_factor_coeffs(n, h);
    let mut out = Series::one(n, h);
    for root in affine_positive_roots(n, d, imag_mult) {
        let a: Vec<u32> = root.coords.iter().map(|&x| x as u32).collect();
        if a.iter().sum::<u32>() > h {
            continue;
        }
        let f = root_series(n, h, &a, &c);
        for _ in 0..root.mult {
            out = depth_truncate(&out.mul(&f), d);
        }
    }
    out
}

/// `P̃_r(θ) = (θτ₀)²(χ_{ω̂_r})` over the given truncated character: a
/// polynomial in `p` of degree `≤ 2d`.
pub fn affine_eigenvalue_from(theta: &AffineWeightChar, ch: &AffineCharacter) -> Result<Scalar> {
    if theta.n() != ch.n {
        return Err(CoreError::LatticeMismatch(format!("character rank {} vs weight rank {}", ch.n, theta.n())));
    }
    let tt = theta.mul(&AffineWeightChar::tau0(ch.n));
    let mut acc = Vec::with_capacity(ch.mults.len());
    for (b, &m) in &ch.mults {
        let v = tt.eval(&ch.weight(b))?;
        acc.push(v.mul(&v).scale_i64(m as i64));
    }
    Ok(mac_exact::series::sum(&acc))
}

pub fn affine_eigenvalue(r: usize, theta: &AffineWeightChar, d: u32) -> Result<Scalar> {
    affine_eigenvalue_from(theta, &affine_character(theta.n(), r, d)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::{q_pow, t_pow, WeightChar};
    use crate::macdonald::phi_kernel;
    use mac_exact::{var, LaurentPoly};

    /// `F(Y) = Σ_k (t⁻²q²; q²)_k / (q²; q²)_k (t²Y)^k` by the q-binomial theorem.
    fn qbinomial_coeffs(n: usize, h: u32) -> Vec<Scalar> {
        let mut out = Vec::new();
        for k in 0..=h as i64 {
            let mut c = t_pow(2 * k);
            for i in 1..=k {
                let num = Scalar::one().sub(&t_pow(-2).mul(&q_pow(n, 2 * i)));
                let den = Scalar::one().sub(&q_pow(n, 2 * i));
                c = c.mul(&num).div(&den).unwrap();
            }
            out.push(c);
        }
        out
    }

    #[test]
    fn factor_coefficients_match_qbinomial() {
        for n in 2..=3 {
            assert_eq!(phi_factor_coeffs(n, 4), qbinomial_coeffs(n, 4));
        }
    }

    #[test]
    fn finite_slice_is_the_finite_kernel() {
        for n in 2..=3 {
            for m in [1, n as u32 - 1] {
                let phi = affine_phi(n, 2, 4, m);
                assert_eq!(finite_slice(&phi), phi_kernel(n, 4), "n = {n}");
            }
        }
        assert_eq!(affine_phi(2, 3, 0, 1), Series::one(2, 0));
    }

    #[test]
    fn brute_force_first_delta_coefficient() {
        // n = 2, roots α, δ−α, δ, δ+α with m₀ ≤ 1, expanded as a Laurent
        // polynomial in X₀ = θ_{−α₀}, X₁ = θ_{−α₁}.
        let h = 4u32;
        let c = qbinomial_coeffs(2, h);
        let factor = |e: [i32; 2]| {
            let mut f = LaurentPoly::zero(2);
            for (k, ck) in c.iter().enumerate() {
                f.add_term(vec![e[0] * k as i32, e[1] * k as i32], ck);
            }
            f
        };
        let mut prod = LaurentPoly::one(2);
        for e in [[0, 1], [1, 0], [1, 1], [1, 2]] {
            prod = prod.mul(&factor(e));
        }
        let phi = affine_phi(2, 1, h, 1);
        for (e, v) in prod.terms() {
            if e[0] <= 1 && e[0] + e[1] <= h as i32 {
                assert_eq!(phi.coeff(&[e[0] as u32, e[1] as u32]), *v, "at {e:?}");
            }
        }
        for (b, v) in phi.terms() {
            assert_eq!(prod.coeff(&[b[0] as i32, b[1] as i32]), *v);
        }
    }

    #[test]
    fn eigenvalue_depth_zero() {
        // At depth 0 the affine eigenvalue is the finite one times
        // (θτ₀)(ε)² = 1 (r = 0 gives the single weight ε).
        let th = AffineWeightChar::symbolic(2).unwrap();
        assert!(affine_eigenvalue(0, &th, 0).unwrap().is_one());
        let fin = crate::macdonald::eigenvalue(1, &th.fin).unwrap();
        assert_eq!(affine_eigenvalue(1, &th, 0).unwrap(), fin);
    }

    #[test]
    fn eigenvalue_finite_weyl_symmetric() {
        // θ ↦ w(θτ₀)τ₀⁻¹ for finite w permutes the terms of each depth slice.
        for n in 2..=3 {
            let th = AffineWeightChar::symbolic(n).unwrap();
            let t0 = WeightChar::tau0(n);
            for r in 0..n {
                let ch = affine_character(n, r, 1).unwrap();
                let base = affine_eigenvalue_from(&th, &ch).unwrap();
                for p in crate::roots::permutations(n) {
                    let fin = th.fin.mul(&t0).permute(&p).mul(&t0.inv());
                    let w = AffineWeightChar::new(fin, th.eps.clone(), th.delta.clone());
                    assert_eq!(affine_eigenvalue_from(&w, &ch).unwrap(), base);
                }
            }
        }
    }

    #[test]
    fn eigenvalue_is_a_polynomial_in_p() {
        let th = AffineWeightChar::symbolic(2).unwrap();
        let e = affine_eigenvalue(0, &th, 2).unwrap();
        let c = e.taylor_in(var::P, 5).unwrap();
        assert!(c[0].is_one());
        assert!(c[1].is_zero() && c[3].is_zero() && c[5].is_zero());
        // Depth one: Λ₀ − δ and Λ₀ ± α − δ.
        assert!(!c[2].is_zero());
    }
}
