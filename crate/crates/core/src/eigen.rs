//! Formal eigenfunctions `ψ_θ = Σ_β c_β θθ_{−β}` of the Macdonald
//! operators, the Macdonald polynomial oracle, and the comparison between
//! them.

use crate::chars::{q_pow, WeightChar};
use crate::error::{CoreError, Result};
use crate::macdonald::{apply_macdonald_symmetric, eigenvalue, macdonald_operator};
use crate::ops::{beta_gl, DifferenceOperator};
use crate::roots::{height as root_height, permutations, FiniteWeight};
use crate::symfun::{dominant_below, monomial_symmetric, schur_bialternant, specialize_t_equals_q};
use mac_exact::series::{points_up_to, sum};
use mac_exact::{Grade, LaurentPoly, Scalar, Series};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiSeries {
    pub base: WeightChar,
    pub coeffs: Series,
}

/// `θθ_{−β}` for `β` in simple-root coordinates.
pub fn shifted_char(theta: &WeightChar, beta: &[u32]) -> WeightChar {
    let b: Vec<i64> = beta_gl(beta).iter().map(|x| -x).collect();
    theta.mul(&WeightChar::theta_mu_gl(&b))
}

struct Recursion {
    n: usize,
    a: Vec<Series>,
    theta_sq: Vec<Scalar>,
    p1: Scalar,
    theta: WeightChar,
}

impl Recursion {
    fn new(theta: &WeightChar, h: u32) -> Result<Recursion> {
        let n = theta.n();
        let m1 = macdonald_operator(n, 1, h)?;
        let a = (0..n)
            .map(|i| {
                let nu: Vec<i64> = (0..n).map(|k| (k == i) as i64).collect();
                m1.coeff(&nu).cloned().unwrap()
            })
            .collect();
        Ok(Recursion {
            n,
            a,
            theta_sq: theta.vals.iter().map(|v| v.mul(v)).collect(),
            p1: eigenvalue(1, theta)?,
            theta: theta.clone(),
        })
    }

    /// `c_β (P₁(θ) − P₁(θθ_{−β})) = Σ_{β'<β} Σ_i [a_i]_{β−β'} θ(e_i)² q^{−2⟨β',e_i⟩} c_{β'}`.
    fn cell(&self, b: &Grade, known: &BTreeMap<Grade, Scalar>) -> Result<Scalar> {
        let mut parts = Vec::new();
        for (bp, c) in known {
            if bp == b || !bp.iter().zip(b).all(|(x, y)| x <= y) {
                continue;
            }
            let diff: Grade = b.iter().zip(bp).map(|(y, x)| y - x).collect();
            let g = beta_gl(bp);
            for i in 0..self.n {
                let ai = self.a[i].coeff(&diff);
                if ai.is_zero() {
                    continue;
                }
                let f = ai.mul(&self.theta_sq[i]).mul(&q_pow(self.n, -2 * g[i]));
                parts.push(f.mul(c));
            }
        }
        let rhs = sum(&parts);
        let den = self.p1.sub(&eigenvalue(1, &shifted_char(&self.theta, b))?);
        if den.is_zero() {
            return Err(CoreError::Resonance(b.iter().map(|&x| x as i64).collect()));
        }
        Ok(rhs.div(&den)?)
    }
}

/// The unique series with `c₀ = 1` solving `M¹ψ = P₁(θ)ψ` to height `h`.
/// Cells of equal height are independent and evaluated in parallel.
pub fn expand_psi(theta: &WeightChar, h: u32) -> Result<PsiSeries> {
    let n = theta.n();
    let rec = Recursion::new(theta, h)?;
    let mut known: BTreeMap<Grade, Scalar> = BTreeMap::new();
    known.insert(vec![0; n - 1], Scalar::one());
    let pts = points_up_to(n - 1, h);
    for ht in 1..=h {
        let layer: Vec<&Grade> = pts
            .iter()
            .filter(|b| b.iter().sum::<u32>() == ht)
            .collect();
        let vals: Vec<Result<Scalar>> = layer.par_iter().map(|b| rec.cell(b, &known)).collect();
        for (b, v) in layer.into_iter().zip(vals) {
            known.insert(b.clone(), v?);
        }
    }
    let mut s = Series::zero(n - 1, h);
    for (b, c) in known {
        s.set(b, c);
    }
    Ok(PsiSeries {
        base: theta.clone(),
        coeffs: s,
    })
}

/// Sequential variant solving cells in the given height-compatible order.
pub fn expand_psi_in_order(theta: &WeightChar, h: u32, order: &[Grade]) -> Result<PsiSeries> {
    let n = theta.n();
    let rec = Recursion::new(theta, h)?;
    let mut known: BTreeMap<Grade, Scalar> = BTreeMap::new();
    known.insert(vec![0; n - 1], Scalar::one());
    for b in order {
        if b.iter().all(|&x| x == 0) {
            continue;
        }
        let v = rec.cell(b, &known)?;
        known.insert(b.clone(), v);
    }
    let mut s = Series::zero(n - 1, h);
    for (b, c) in known {
        s.set(b, c);
    }
    Ok(PsiSeries {
        base: theta.clone(),
        coeffs: s,
    })
}

/// `op·g − ev·g` for a series based at `base`.
pub fn eigen_residual(op: &DifferenceOperator, base: &WeightChar, g: &Series, ev: &Scalar) -> Series {
    op.apply(base, g).sub(&g.scale(ev))
}

/// Check `M^r ψ = P_r(θ) ψ` to the truncation height of `ψ`.
pub fn satisfies_eigen(psi: &PsiSeries, r: usize) -> Result<bool> {
    let n = psi.base.n();
    let op = macdonald_operator(n, r, psi.coeffs.order())?;
    let ev = eigenvalue(r, &psi.base)?;
    Ok(eigen_residual(&op, &psi.base, &psi.coeffs, &ev).is_zero())
}

// ------------------------------------------------------------ polynomials

/// Monic Macdonald polynomial `m_λ + Σ_{μ<λ} c_μ m_μ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MacPoly {
    pub lambda: Vec<i64>,
    /// Coefficients keyed by dominant `μ`, lexicographically decreasing.
    pub coeffs: Vec<(Vec<i64>, Scalar)>,
}

impl MacPoly {
    pub fn to_laurent(&self) -> LaurentPoly {
        let n = self.lambda.len();
        let mut p = LaurentPoly::zero(n);
        for (mu, c) in &self.coeffs {
            p = p.add(&monomial_symmetric(mu).scale(c));
        }
        p
    }

    pub fn coeff(&self, mu: &[i64]) -> Scalar {
        self.coeffs
            .iter()
            .find(|(m, _)| m == mu)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero)
    }
}

/// Eigenvalue of `M¹` on `P_λ` in the GL picture.
pub fn eigenvalue_gl(r: usize, lambda: &[i64]) -> Result<Scalar> {
    eigenvalue(r, &WeightChar::theta_mu_gl(lambda))
}

/// Triangular solve for `P_λ` from the action of `M¹` on monomial
/// symmetric functions.
pub fn macdonald_poly_oracle(lambda: &[i64]) -> Result<MacPoly> {
    let n = lambda.len();
    let mus = dominant_below(lambda)?;
    let e_l = eigenvalue_gl(1, lambda)?;
    // A[ν][μ] = coefficient of x^ν in M¹ m_μ.
    let images: Vec<LaurentPoly> = mus
        .par_iter()
        .map(|mu| apply_macdonald_symmetric(n, 1, &monomial_symmetric(mu)))
        .collect::<Result<_>>()?;
    let a = |nu: &[i64], j: usize| -> Scalar {
        let e: Vec<i32> = nu.iter().map(|&x| x as i32).collect();
        images[j].coeff(&e)
    };
    if a(lambda, 0) != e_l {
        return Err(CoreError::CheckFailed(format!(
            "diagonal entry of M¹ at {lambda:?} differs from P₁(θ_λ)"
        )));
    }
    let mut c: Vec<Scalar> = vec![Scalar::one()];
    for k in 1..mus.len() {
        let nu = &mus[k];
        let diag = a(nu, k);
        let den = e_l.sub(&diag);
        if den.is_zero() {
            return Err(CoreError::EigenvalueCollision(format!("{lambda:?}"), format!("{nu:?}")));
        }
        let parts: Vec<Scalar> = (0..k).map(|j| a(nu, j).mul(&c[j])).collect();
        c.push(sum(&parts).div(&den)?);
    }
    Ok(MacPoly {
        lambda: lambda.to_vec(),
        coeffs: mus
            .into_iter()
            .zip(c)
            .filter(|(_, x)| !x.is_zero())
            .collect(),
    })
}

/// Largest height of `λ − μ` over the monomials `x^μ` of `P_λ`.
pub fn support_height(lambda: &[i64]) -> Result<u32> {
    let w0: Vec<i64> = lambda.iter().rev().copied().collect();
    let d = FiniteWeight::from_ints(lambda).sub(&FiniteWeight::from_ints(&w0));
    Ok(root_height(&d.root_coords()?) as u32)
}

#[derive(Clone, Debug, Serialize)]
pub struct PolynomialMatchReport {
    pub lambda: Vec<i64>,
    pub height: u32,
    pub ok: bool,
    pub mismatches: Vec<Vec<u32>>,
}

/// Compare `ψ_{θ_λ}` under `θ_λθ_{−β} ↔ x^{λ−β}` with the oracle `P_λ`.
pub fn check_polynomial_match(lambda: &[i64], h: u32) -> Result<PolynomialMatchReport> {
    let n = lambda.len();
    let need = support_height(lambda)?;
    if h < need {
        return Err(CoreError::InvalidArgument(format!("height {h} below support height {need}")));
    }
    let theta = WeightChar::theta_mu(&FiniteWeight::from_ints(lambda))?;
    let psi = expand_psi(&theta, h)?;
    let p = macdonald_poly_oracle(lambda)?.to_laurent();
    let mut mismatches = Vec::new();
    for b in points_up_to(n - 1, h) {
        let g = beta_gl(&b);
        let e: Vec<i32> = lambda.iter().zip(&g).map(|(l, x)| (l - x) as i32).collect();
        if psi.coeffs.coeff(&b) != p.coeff(&e) {
            mismatches.push(b);
        }
    }
    Ok(PolynomialMatchReport {
        lambda: lambda.to_vec(),
        height: h,
        ok: mismatches.is_empty(),
        mismatches,
    })
}

/// At `t = q` the oracle polynomial must equal the Schur polynomial.
pub fn check_schur_degeneration(lambda: &[i64]) -> Result<bool> {
    let n = lambda.len();
    let p = macdonald_poly_oracle(lambda)?.to_laurent();
    let s = schur_bialternant(lambda)?;
    let mut spec = LaurentPoly::zero(n);
    for (e, c) in p.terms() {
        spec.add_term(e.clone(), &specialize_t_equals_q(n, c)?);
    }
    Ok(spec == s)
}

// --------------------------------------------------------- orbit solutions

#[derive(Clone, Debug, Serialize)]
pub struct OrbitSolution {
    pub perm: Vec<usize>,
    pub psi: PsiSeries,
}

/// The solutions `ψ_{σ^w}`, `σ^w = w(στ₀)τ₀⁻¹`, one per permutation, each
/// checked against every `M^r` with the common eigenvalue `P_r(σ)`.
pub fn weyl_orbit_solutions(sigma: &WeightChar, h: u32) -> Result<Vec<OrbitSolution>> {
    let n = sigma.n();
    let perms = permutations(n);
    let chars: Vec<WeightChar> = perms.iter().map(|p| sigma.dot_action(p)).collect();
    for i in 0..chars.len() {
        for j in 0..i {
            if chars[i] == chars[j] {
                return Err(CoreError::InvalidArgument(format!(
                    "σ^w coincide for {:?} and {:?}",
                    perms[i], perms[j]
                )));
            }
        }
    }
    let mut out = Vec::new();
    for (p, c) in perms.into_iter().zip(chars) {
        let psi = expand_psi(&c, h)?;
        for r in 1..n {
            let ev = eigenvalue(r, sigma)?;
            if eigenvalue(r, &c)? != ev {
                return Err(CoreError::CheckFailed(format!("P_{r}(σ^w) ≠ P_{r}(σ) for w = {p:?}")));
            }
            let op = macdonald_operator(n, r, h)?;
            if !eigen_residual(&op, &c, &psi.coeffs, &ev).is_zero() {
                return Err(CoreError::CheckFailed(format!("M^{r} eigen-equation fails for w = {p:?}")));
            }
        }
        out.push(OrbitSolution { perm: p, psi });
    }
    Ok(out)
}

/// Matrix of `ψ_{σθ_{−β}}`, `height(β) ≤ h`, against the monomials
/// `σθ_{−γ}`.  Returns true iff it is unitriangular for the partial order
/// `β ≤ γ`.
pub fn topological_basis_unitriangular(sigma: &WeightChar, h: u32) -> Result<bool> {
    let n = sigma.n();
    let pts = points_up_to(n - 1, h);
    for b in &pts {
        let ht: u32 = b.iter().sum();
        let psi = expand_psi(&shifted_char(sigma, b), h - ht)?;
        for g in &pts {
            let ge = g.iter().zip(b).all(|(x, y)| x >= y);
            let entry = if ge {
                let d: Grade = g.iter().zip(b).map(|(x, y)| x - y).collect();
                psi.coeffs.coeff(&d)
            } else {
                Scalar::zero()
            };
            if g == b && !entry.is_one() {
                return Ok(false);
            }
            if !ge && !entry.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use mac_exact::parse_scalar as s;

    #[test]
    fn psi_trivial_order() {
        let th = WeightChar::symbolic_sl(2).unwrap();
        let p = expand_psi(&th, 0).unwrap();
        assert_eq!(p.coeffs, Series::one(1, 0));
    }

    #[test]
    fn oracle_two_zero() {
        // c_(1,1) = (1 + q²)(1 − t²)/(1 − q²t²), q = qh², t = th².
        let p = macdonald_poly_oracle(&[2, 0]).unwrap();
        let c = p.coeff(&[1, 1]);
        assert_eq!(c, s("(1 + qh^4)*(1 - th^4)/(1 - qh^4*th^4)").unwrap());
    }

    #[test]
    fn polynomial_match_small() {
        assert!(check_polynomial_match(&[0, 0], 1).unwrap().ok);
        assert!(check_polynomial_match(&[1, 0], 2).unwrap().ok);
        assert!(check_polynomial_match(&[2, 0], 3).unwrap().ok);
    }

    #[test]
    fn resonance_reported() {
        // θ = θ_ρ-shifted so that θθ_{−α} has the same eigenvalue: choose
        // θ(e₁)² t = θ(e₂)² q^{2}/t, i.e. a reflection-fixed point of the
        // dot action at height one.
        let z = Scalar::var(mac_exact::var::Z1);
        let t = crate::chars::t_pow(1);
        let q = q_pow(2, 1);
        // P₁(θ) − P₁(θθ_{−α}) = θ₁²t(1 − q⁻²) + θ₂²t⁻¹(1 − q²)
        // vanishes when θ₁²/θ₂² = q² t⁻².
        let th1 = z.clone();
        let th2 = z.mul(&t).div(&q).unwrap();
        let theta = WeightChar::new(vec![th1, th2]);
        assert_eq!(expand_psi(&theta, 2).unwrap_err(), CoreError::Resonance(vec![1]));
    }

    #[test]
    fn order_independent() {
        let th = WeightChar::symbolic_gl(3).unwrap();
        let a = expand_psi(&th, 3).unwrap();
        let mut order = points_up_to(2, 3);
        order.sort_by_key(|b| (b.iter().sum::<u32>(), std::cmp::Reverse(b.clone())));
        let b = expand_psi_in_order(&th, 3, &order).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn specialization_matches_theta_lambda() {
        let th = WeightChar::symbolic_sl(2).unwrap();
        let c = expand_psi(&th, 1).unwrap().coeffs.coeff(&[1]);
        // θ_(1,0)(ω) = q^{1/2} = qh.
        let spec = c.subs(mac_exact::var::Z1, &Scalar::qh(1)).unwrap();
        let lam = WeightChar::theta_mu(&FiniteWeight::from_ints(&[1, 0])).unwrap();
        assert_eq!(spec, expand_psi(&lam, 1).unwrap().coeffs.coeff(&[1]));
        // x^{λ−α} = x₂ is a monomial of m_(1,0).
        assert!(spec.is_one());
    }

    #[test]
    fn chi_sign_is_pinned_by_polynomials() {
        // The diagonal of M¹ on m_(1,0) is Σ q^{2λ_i} t^{2ρ_i}; the opposite
        // sign in the ρ-exponent does not match it.
        let img = apply_macdonald_symmetric(2, 1, &monomial_symmetric(&[1, 0])).unwrap();
        let diag = img.coeff(&[1, 0]);
        assert_eq!(diag, eigenvalue_gl(1, &[1, 0]).unwrap());
        let wrong = q_pow(2, 2).mul(&Scalar::th(-1).mul(&Scalar::th(-1))).add(&Scalar::th(2));
        assert_ne!(diag, wrong);
    }

    #[test]
    fn schur_degeneration_small() {
        for l in [[1, 0], [2, 0], [1, 1], [3, 1]] {
            assert!(check_schur_degeneration(&l).unwrap());
        }
        assert!(check_schur_degeneration(&[2, 1, 0]).unwrap());
    }

    #[test]
    fn orbit_n2() {
        let th = WeightChar::symbolic_sl(2).unwrap();
        let sols = weyl_orbit_solutions(&th, 3).unwrap();
        assert_eq!(sols.len(), 2);
        assert_eq!(sols[0].psi, expand_psi(&th, 3).unwrap());
    }

    #[test]
    fn unitriangular_n2() {
        let th = WeightChar::symbolic_sl(2).unwrap();
        assert!(topological_basis_unitriangular(&th, 3).unwrap());
    }

    #[test]
    fn all_r_n3_height2() {
        let th = WeightChar::symbolic_gl(3).unwrap();
        let psi = expand_psi(&th, 2).unwrap();
        assert!(satisfies_eigen(&psi, 2).unwrap());
    }
}
