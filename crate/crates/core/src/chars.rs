//! Multiplicative characters of the finite weight lattice and the scalar
//! conventions `q = qh^n`, `t = th^2`.

use crate::error::{CoreError, Result};
use crate::roots::{FiniteWeight, Q};
use mac_exact::{var, Scalar};
use serde::{Deserialize, Serialize};

/// `q^k = qh^{n k}` for rank `n` (number of GL variables).
pub fn q_pow(n: usize, k: i64) -> Scalar {
    Scalar::qh(n as i64 * k)
}

/// `q^x` for `x ∈ (1/n)ℤ`.
pub fn q_pow_frac(n: usize, x: Q) -> Result<Scalar> {
    let e = x * Q::from_integer(n as i64);
    if !e.is_integer() {
        return Err(CoreError::NotInLattice(format!("q^{x} is not a power of qh at n = {n}")));
    }
    Ok(Scalar::qh(e.to_integer()))
}

/// `t^k = th^{2k}`.
pub fn t_pow(k: i64) -> Scalar {
    Scalar::th(2 * k)
}

/// `t^x` for `x ∈ (1/2)ℤ`.
pub fn t_pow_frac(x: Q) -> Result<Scalar> {
    let e = x * Q::from_integer(2);
    if !e.is_integer() {
        return Err(CoreError::NotInLattice(format!("t^{x} is not a power of th")));
    }
    Ok(Scalar::th(e.to_integer()))
}

/// q-number `[k] = (q^k − q^{−k})/(q − q^{−1})` in base `q = qh^{qexp}`.
pub fn qnum(qexp: i64, k: i64) -> Scalar {
    let num = Scalar::qh(qexp * k).sub(&Scalar::qh(-qexp * k));
    let den = Scalar::qh(qexp).sub(&Scalar::qh(-qexp));
    num.div(&den).expect("q - 1/q is nonzero")
}

/// Character `θ` given by its values on `e_1, …, e_n`.  A character of the
/// sl weight lattice `P` satisfies `Π θ(e_i) = 1`; general values describe
/// characters of the GL lattice `ℤⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightChar {
    pub vals: Vec<Scalar>,
}

impl WeightChar {
    pub fn new(vals: Vec<Scalar>) -> WeightChar {
        WeightChar { vals }
    }

    pub fn n(&self) -> usize {
        self.vals.len()
    }

    pub fn trivial(n: usize) -> WeightChar {
        WeightChar::new(vec![Scalar::one(); n])
    }

    /// `θ_μ(λ) = q^{⟨μ,λ⟩}` with the sl pairing.
    pub fn theta_mu(mu: &FiniteWeight) -> Result<WeightChar> {
        let n = mu.n();
        let m = mu.sl();
        Ok(WeightChar::new(
            m.0.iter().map(|&x| q_pow_frac(n, x)).collect::<Result<_>>()?,
        ))
    }

    /// GL version `θ(e_i) = q^{μ_i}`.
    pub fn theta_mu_gl(mu: &[i64]) -> WeightChar {
        let n = mu.len();
        WeightChar::new(mu.iter().map(|&x| q_pow(n, x)).collect())
    }

    /// `τ₀(λ) = t^{⟨λ,ρ⟩}`, i.e. `τ₀(e_i) = th^{n+1−2i}`.
    pub fn tau0(n: usize) -> WeightChar {
        WeightChar::new((1..=n).map(|i| Scalar::th(n as i64 + 1 - 2 * i as i64)).collect())
    }

    /// `τ = τ₀ θ_{−ρ}`.
    pub fn tau(n: usize) -> WeightChar {
        let rho = FiniteWeight::rho(n);
        WeightChar::tau0(n).mul(&WeightChar::theta_mu(&rho.neg()).expect("ρ pairs into (1/n)ℤ"))
    }

    /// Generic sl character: `θ(ω_i) = z_i`, so `θ(e_i) = z_i / z_{i−1}`.
    pub fn symbolic_sl(n: usize) -> Result<WeightChar> {
        if n > 5 {
            return Err(CoreError::InvalidArgument("at most 4 weight symbols".into()));
        }
        let z = |i: usize| -> Scalar {
            if i == 0 || i == n {
                Scalar::one()
            } else {
                Scalar::var(var::Z1 + i - 1)
            }
        };
        Ok(WeightChar::new(
            (1..=n).map(|i| z(i).div(&z(i - 1)).unwrap()).collect(),
        ))
    }

    /// Generic GL character `θ(e_i) = z_i`.  Eigen-equations are invariant
    /// under a common rescaling of all `θ(e_i)`, so this is as generic as
    /// [`WeightChar::symbolic_sl`] for them, with sparser expressions.
    pub fn symbolic_gl(n: usize) -> Result<WeightChar> {
        if n > 4 {
            return Err(CoreError::InvalidArgument("at most 4 weight symbols".into()));
        }
        Ok(WeightChar::new((0..n).map(|i| Scalar::var(var::Z1 + i)).collect()))
    }

    pub fn mul(&self, o: &WeightChar) -> WeightChar {
        WeightChar::new(self.vals.iter().zip(&o.vals).map(|(a, b)| a.mul(b)).collect())
    }

    pub fn inv(&self) -> WeightChar {
        WeightChar::new(self.vals.iter().map(|a| a.inv().expect("character values are units")).collect())
    }

    pub fn is_sl(&self) -> bool {
        self.vals.iter().fold(Scalar::one(), |a, b| a.mul(b)).is_one()
    }

    /// `θ(λ)` for an integer GL weight.
    pub fn eval_gl(&self, l: &[i64]) -> Scalar {
        let mut r = Scalar::one();
        for (v, &k) in self.vals.iter().zip(l) {
            if k != 0 {
                r = r.mul(&v.powi(k).expect("unit"));
            }
        }
        r
    }

    /// `θ(λ)`; non-integral `λ ∈ P` requires an sl character.
    pub fn eval(&self, l: &FiniteWeight) -> Result<Scalar> {
        if let Some(ints) = l.as_ints() {
            return Ok(self.eval_gl(&ints));
        }
        if !self.is_sl() {
            return Err(CoreError::NotInLattice(
                "non-integral weight needs an sl character".into(),
            ));
        }
        Ok(self.eval_gl(&l.gl_representative()?))
    }

    /// `(wθ)(λ) = θ(w⁻¹λ)` for the permutation `w e_i = e_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> WeightChar {
        let mut v = self.vals.clone();
        for (i, &p) in perm.iter().enumerate() {
            v[p] = self.vals[i].clone();
        }
        WeightChar::new(v)
    }

    /// Dot action `σ^w = w(στ₀)τ₀⁻¹`.
    pub fn dot_action(&self, perm: &[usize]) -> WeightChar {
        let t0 = WeightChar::tau0(self.n());
        self.mul(&t0).permute(perm).mul(&t0.inv())
    }

    pub fn subs(&self, v: usize, value: &Scalar) -> Result<WeightChar> {
        Ok(WeightChar::new(
            self.vals.iter().map(|x| x.subs(v, value)).collect::<std::result::Result<_, _>>()?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_values() {
        // n = 2: τ(e₁)² = t/q.
        let t = WeightChar::tau(2);
        assert_eq!(t.vals[0].mul(&t.vals[0]), Scalar::th(2).div(&Scalar::qh(2)).unwrap());
        for n in 2..5 {
            assert!(WeightChar::tau(n).is_sl());
            assert!(WeightChar::symbolic_sl(n).unwrap().is_sl());
        }
    }

    #[test]
    fn theta_mu_integer_exponents() {
        // θ_μ(λ) = qh^{n⟨μ,λ⟩}.
        let mu = FiniteWeight::from_ints(&[2, 1, 0]);
        let th = WeightChar::theta_mu(&mu).unwrap();
        let l = FiniteWeight::from_ints(&[1, 0, -1]);
        let p = mu.pairing(&l).unwrap() * Q::from_integer(3);
        assert_eq!(th.eval(&l).unwrap(), Scalar::qh(p.to_integer()));
        let w = FiniteWeight::omega(1, 3).sl();
        let p = mu.pairing(&w).unwrap() * Q::from_integer(3);
        assert_eq!(th.eval(&w).unwrap(), Scalar::qh(p.to_integer()));
    }

    #[test]
    fn q_numbers() {
        assert_eq!(qnum(1, 2), Scalar::qh(1).add(&Scalar::qh(-1)));
        assert!(qnum(2, 0).is_zero());
    }
}
