//! Truncated affine layer.  Affine weights are `λ_fin + cε + dδ`; root
//! lattice elements are written in simple-root coordinates `(m_0, …, m_{n−1})`
//! where `m_0` is the δ-depth.
//!
//! The δ-direction is carried by the symbol `p`, standing for `θ(δ)⁻¹`, and
//! every character takes `θ(ε) = 1`.

pub mod character;
pub mod evaluation;
pub mod experimental;
pub mod extract;
pub mod kernel;
pub mod qgroup;
pub mod trace;

use crate::chars::{q_pow, t_pow, WeightChar};
use crate::error::{CoreError, Result};
use crate::roots::{AffineWeight, Q};
use mac_exact::{var, Scalar};
use num_traits::Zero;
use serde::Serialize;

/// Character of the affine weight lattice given by its finite part and its
/// values on `ε` and `δ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineWeightChar {
    pub fin: WeightChar,
    pub eps: Scalar,
    pub delta: Scalar,
}

fn int_of(x: Q, what: &str) -> Result<i64> {
    if !x.is_integer() {
        return Err(CoreError::NotInLattice(format!("{what} coefficient {x} is not integral")));
    }
    Ok(x.to_integer())
}

impl AffineWeightChar {
    pub fn new(fin: WeightChar, eps: Scalar, delta: Scalar) -> AffineWeightChar {
        AffineWeightChar { fin, eps, delta }
    }

    pub fn n(&self) -> usize {
        self.fin.n()
    }

    /// Generic character: `θ(ω_i) = z_i`, `θ(ε) = 1`, `θ(δ) = p⁻¹`.
    pub fn symbolic(n: usize) -> Result<AffineWeightChar> {
        Ok(AffineWeightChar::new(
            WeightChar::symbolic_sl(n)?,
            Scalar::one(),
            Scalar::var_pow(var::P, -1),
        ))
    }

    /// Finite part fixed by `θ(e_i)`, with `θ(δ) = p⁻¹`.
    pub fn with_finite(fin: WeightChar) -> AffineWeightChar {
        AffineWeightChar::new(fin, Scalar::one(), Scalar::var_pow(var::P, -1))
    }

    /// `τ₀(λ) = t^{⟨λ,ρ̂⟩}`: `τ₀(ε) = 1`, `τ₀(δ) = t^n`.
    pub fn tau0(n: usize) -> AffineWeightChar {
        AffineWeightChar::new(WeightChar::tau0(n), Scalar::one(), t_pow(n as i64))
    }

    /// `τ = τ₀θ_{−ρ̂}`: `τ(δ) = t^n q^{−n}`.
    pub fn tau(n: usize) -> AffineWeightChar {
        AffineWeightChar::new(
            WeightChar::tau(n),
            Scalar::one(),
            t_pow(n as i64).mul(&q_pow(n, -(n as i64))),
        )
    }

    pub fn mul(&self, o: &AffineWeightChar) -> AffineWeightChar {
        AffineWeightChar::new(self.fin.mul(&o.fin), self.eps.mul(&o.eps), self.delta.mul(&o.delta))
    }

    pub fn eval(&self, l: &AffineWeight) -> Result<Scalar> {
        let f = if l.finite.0.iter().all(|x| x.is_zero()) {
            Scalar::one()
        } else {
            self.fin.eval(&l.finite)?
        };
        let c = int_of(l.c, "ε")?;
        let d = int_of(l.d, "δ")?;
        Ok(f.mul(&self.eps.powi(c)?).mul(&self.delta.powi(d)?))
    }

    /// Value on `−Σ m_i α_i`, i.e. on `θ_{−β}`-type shifts.
    pub fn eval_root(&self, m: &[i64]) -> Result<Scalar> {
        self.eval(&AffineWeight::from_root_coords(m).neg())
    }

    pub fn subs(&self, v: usize, x: &Scalar) -> Result<AffineWeightChar> {
        Ok(AffineWeightChar::new(
            self.fin.subs(v, x)?,
            self.eps.subs(v, x)?,
            self.delta.subs(v, x)?,
        ))
    }
}

/// `⟨Σ a_i α_i, Σ b_j α_j⟩` on the affine root lattice.
pub fn root_pairing(a: &[i64], b: &[i64]) -> Result<i64> {
    let x = AffineWeight::from_root_coords(a);
    let y = AffineWeight::from_root_coords(b);
    int_of(x.pairing(&y)?, "pairing")
}

/// Affine weight `ω̂_r − Σ m_i α_i`.
pub fn weight_below(r: usize, n: usize, m: &[i64]) -> AffineWeight {
    AffineWeight::omega_hat(r, n).sub(&AffineWeight::from_root_coords(m))
}
