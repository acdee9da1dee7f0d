//! Recovering the affine operators `M̃^{ω̂_r} = Σ_ν a_ν T_ν` for `n = 2`
//! from the traces `Ψ_θ`.
//!
//! Unknowns are `a_{ν,γ}` for `ν = ω̂_r − β_ν` a weight of `L(Λ_r)` with
//! `m_0(β_ν) ≤ K` and `γ ∈ Q̃⁺` of height `≤ h`.  At every sample `θ` the
//! relation `M̃Ψ_θ = P̃_r(θ)Ψ_θ` is expanded at `p = 0` to order `p^{2K}`,
//! which is exactly what the depth-`K` character can see: a shift of depth
//! `k` carries `σ(ν)² ∝ p^{2k}`.  Row `β` only involves `γ ≤ β`, so the
//! system is solved block by block in increasing height.

use super::character::affine_character;
use super::kernel::{affine_eigenvalue_from, affine_phi};
use super::qgroup::build_affine_qgroup;
use super::trace::affine_trace_psi_with;
use super::{int_of, AffineWeightChar};
use crate::chars::WeightChar;
use crate::error::{CoreError, Result};
use crate::macdonald::{conjugated_operator, Route};
use crate::roots::{AffineWeight, FiniteWeight};
use crate::uq::qq;
use mac_exact::linalg::solve_general;
use mac_exact::series::points_up_to;
use mac_exact::{var, ExactError, Scalar, Series};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// `Σ_ν a_ν T_ν` with `ν = top − β_ν`; terms keyed by `β_ν`, coefficients
/// series over `Q̃⁺` (dimension 2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineOperator {
    pub top: AffineWeight,
    pub depth: u32,
    pub height: u32,
    pub terms: BTreeMap<Vec<i64>, Series>,
}

fn pair(gamma: &[i64], nu: &AffineWeight) -> Result<i64> {
    int_of(AffineWeight::from_root_coords(gamma).pairing(nu)?, "pairing")
}

fn gi(b: &[u32]) -> Vec<i64> {
    b.iter().map(|&x| x as i64).collect()
}

impl AffineOperator {
    pub fn zero(top: AffineWeight, depth: u32, height: u32) -> AffineOperator {
        AffineOperator {
            top,
            depth,
            height,
            terms: BTreeMap::new(),
        }
    }

    pub fn shift(&self, beta: &[i64]) -> AffineWeight {
        self.top.sub(&AffineWeight::from_root_coords(beta))
    }

    fn add_term(&mut self, beta: Vec<i64>, a: Series) {
        let e = self.terms.remove(&beta).map(|x| x.add(&a)).unwrap_or(a);
        if !e.is_zero() {
            self.terms.insert(beta, e);
        }
    }

    /// `b_γ ↦ q^{−2⟨γ,ν⟩} b_γ`.
    fn twist(nu: &AffineWeight, b: &Series) -> Result<Series> {
        let mut out = Series::zero(b.dim(), b.order());
        for (g, c) in b.terms() {
            out.set(g.clone(), c.mul(&qq(-2 * pair(&gi(g), nu)?)));
        }
        Ok(out)
    }

    /// `self ∘ o`, keeping shifts of combined depth `≤ min(K)`.
    pub fn compose(&self, o: &AffineOperator) -> Result<AffineOperator> {
        let depth = self.depth.min(o.depth);
        let mut r = AffineOperator::zero(self.top.add(&o.top), depth, self.height.min(o.height));
        for (bn, a) in &self.terms {
            let nu = self.shift(bn);
            for (bm, b) in &o.terms {
                let s: Vec<i64> = bn.iter().zip(bm).map(|(x, y)| x + y).collect();
                if s[0] > depth as i64 {
                    continue;
                }
                r.add_term(s, a.mul(&Self::twist(&nu, b)?).truncate(r.height));
            }
        }
        Ok(r)
    }

    pub fn sub(&self, o: &AffineOperator) -> AffineOperator {
        let mut r = self.clone();
        for (b, s) in &o.terms {
            r.add_term(b.clone(), s.neg());
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|s| s.is_zero())
    }

    /// `(M f)_β = Σ a_{ν,γ} σ(ν)² q^{−2⟨β−γ,ν⟩} f_{β−γ}`.
    pub fn apply(&self, sigma: &AffineWeightChar, f: &Series) -> Result<Series> {
        let h = self.height.min(f.order());
        let mut out = Series::zero(2, h);
        for (bn, a) in &self.terms {
            let nu = self.shift(bn);
            let s = sigma.eval(&nu)?;
            let tf = Self::twist(&nu, f)?.scale(&s.mul(&s));
            out = out.add(&a.mul_to(&tf, h)?);
        }
        Ok(out)
    }
}

/// What the operator is fitted against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Source {
    /// `Ψ_θ` itself, giving `M̃^{ω̂_r}`.
    Trace,
    /// `ψ_θ = Ψ_θ/φ`, giving `M^{ω̂_r}`; imaginary roots enter `φ` with
    /// the given multiplicity.
    Normalized { imag_mult: u32 },
}

impl Serialize for AffineOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            beta: &'a [i64],
            coeff: &'a Series,
        }
        #[derive(Serialize)]
        struct Out<'a> {
            depth: u32,
            height: u32,
            terms: Vec<Term<'a>>,
        }
        Out {
            depth: self.depth,
            height: self.height,
            terms: self.terms.iter().map(|(b, c)| Term { beta: b, coeff: c }).collect(),
        }
        .serialize(s)
    }
}

/// One sample: `σ`, the series, `P̃_r(θ)`.  `σ = θτ` for `Ψ_θ` and
/// `σ = θ` for `ψ_θ`.
struct Sample {
    sigma: AffineWeightChar,
    psi: Series,
    eigen: Scalar,
}

fn taylor(s: &Scalar, order: u32, what: &str) -> Result<Vec<Scalar>> {
    s.taylor_in(var::P, order).map_err(|e| match e {
        ExactError::PoleOnSpecialization => CoreError::NotRegular(format!("{what} has a pole at p = 0")),
        e => e.into(),
    })
}

/// Rational finite character with `θ(e_1) = z`, `θ(δ) = p⁻¹`.
pub fn rational_theta(z: Scalar) -> Result<AffineWeightChar> {
    let zi = z.inv()?;
    Ok(AffineWeightChar::with_finite(WeightChar::new(vec![z, zi])))
}

/// Samples needed at depth `K`: the largest number of weights in one
/// depth slice of the character, since a depth-`k` shift is first seen at
/// order `p^{2k}` and only through its finite part.
pub fn samples_needed(r: usize, depth: u32) -> Result<usize> {
    let ch = affine_character(2, r, depth)?;
    Ok((0..=depth as i64).map(|k| ch.slice(k).count()).max().unwrap_or(1))
}

/// `fit` values `z = 2, 3, 5, 7, …` (primes) and `holdout` values
/// `z = 3/2, 5/2, …`.
pub fn sample_points(fit: usize, holdout: usize) -> (Vec<Scalar>, Vec<Scalar>) {
    let mut primes = Vec::new();
    let mut k = 2i64;
    while primes.len() < fit {
        if (2..k).all(|d| k % d != 0) {
            primes.push(Scalar::from_i64(k));
        }
        k += 1;
    }
    let hold = (0..holdout as i64).map(|i| Scalar::ratio(2 * i + 3, 2)).collect();
    (primes, hold)
}

/// Minimal fitting set at depth `K` plus one holdout.
pub fn default_samples(r: usize, depth: u32) -> Result<(Vec<Scalar>, Scalar)> {
    let (fit, hold) = sample_points(samples_needed(r, depth)?, 1);
    Ok((fit, hold.into_iter().next().unwrap()))
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub beta: Vec<u32>,
    pub p_order: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct Extraction {
    pub r: usize,
    pub source: Source,
    pub operator: AffineOperator,
    pub samples: usize,
    pub unknowns: usize,
    pub equations: usize,
}

fn build_samples(r: usize, zs: &[Scalar], depth: u32, h: u32, src: Source) -> Result<Vec<Sample>> {
    let ch = affine_character(2, r, depth)?;
    let u = build_affine_qgroup(h)?;
    let phi_inv = match src {
        Source::Trace => None,
        Source::Normalized { imag_mult } => Some(affine_phi(2, h, h, imag_mult).inverse(h)?),
    };
    zs.par_iter()
        .map(|z| {
            let th = rational_theta(z.clone())?;
            let psi = affine_trace_psi_with(&th, h, &Scalar::one(), &u)?;
            let eigen = affine_eigenvalue_from(&th, &ch)?;
            let (sigma, series) = match &phi_inv {
                None => (psi.base, psi.coeffs),
                Some(f) => (th, psi.coeffs.mul(f)),
            };
            Ok(Sample {
                sigma,
                psi: series,
                eigen,
            })
        })
        .collect()
}

/// Fit `M̃^{ω̂_r}` (n = 2) on the samples `θ(e_1) = z`.
pub fn extract_affine_operator(r: usize, zs: &[Scalar], depth: u32, h: u32, src: Source) -> Result<Extraction> {
    if r > 1 {
        return Err(CoreError::InvalidArgument(format!("r = {r} out of range for n = 2")));
    }
    let ch = affine_character(2, r, depth)?;
    let shifts: Vec<Vec<i64>> = ch.mults.keys().cloned().collect();
    let top = AffineWeight::omega_hat(r, 2);
    let samples = build_samples(r, zs, depth, h, src)?;
    let order = 2 * depth;
    let mut op = AffineOperator::zero(top, depth, h);
    let mut coeffs: BTreeMap<Vec<i64>, Series> = shifts.iter().map(|b| (b.clone(), Series::zero(2, h))).collect();
    let nv = shifts.len();
    let mut equations = 0;
    for beta in points_up_to(2, h) {
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        let mut rhs: Vec<Scalar> = Vec::new();
        for s in &samples {
            // Known part: Σ_{γ<β} a_{ν,γ} σ(ν)² q^{−2⟨β−γ,ν⟩} Ψ_{β−γ}.
            let mut known = s.eigen.mul(&s.psi.coeff(&beta));
            let mut cols = Vec::with_capacity(nv);
            for b in &shifts {
                let nu = op.shift(b);
                let sv = s.sigma.eval(&nu)?;
                let s2 = sv.mul(&sv);
                for (g, a) in coeffs[b].terms() {
                    if g == &beta || g.iter().zip(&beta).any(|(x, y)| x > y) {
                        continue;
                    }
                    let rest: Vec<u32> = beta.iter().zip(g).map(|(x, y)| x - y).collect();
                    let c = s2.mul(&qq(-2 * pair(&gi(&rest), &nu)?)).mul(&s.psi.coeff(&rest));
                    known = known.sub(&a.mul(&c));
                }
                cols.push(taylor(&s2, order, "σ(ν)²")?);
            }
            let k = taylor(&known, order, &format!("row {beta:?}"))?;
            for o in 0..=order as usize {
                rows.push(cols.iter().map(|c| c[o].clone()).collect());
                rhs.push(k[o].clone());
            }
        }
        equations += rows.len();
        let sol = solve_general(&rows, &rhs, nv).map_err(|e| match e {
            ExactError::Inconsistent => CoreError::Inconsistent(format!("no operator fits at β = {beta:?}")),
            e => e.into(),
        })?;
        if !sol.kernel.is_empty() {
            return Err(CoreError::Underdetermined(sol.kernel.len()));
        }
        for (b, v) in shifts.iter().zip(sol.particular) {
            coeffs.get_mut(b).unwrap().set(beta.clone(), v);
        }
    }
    for (b, s) in coeffs {
        op.add_term(b, s);
    }
    Ok(Extraction {
        r,
        source: src,
        operator: op,
        samples: zs.len(),
        unknowns: nv * points_up_to(2, h).len(),
        equations,
    })
}

/// First `(β, p-order)` at which `M̃Ψ_θ − P̃_r(θ)Ψ_θ` is nonzero, for a
/// sample not used in the fit.
pub fn holdout_residual(op: &AffineOperator, r: usize, z: &Scalar, src: Source) -> Result<Option<Witness>> {
    let s = build_samples(r, std::slice::from_ref(z), op.depth, op.height, src)?.remove(0);
    let lhs = op.apply(&s.sigma, &s.psi)?;
    let res = lhs.sub(&s.psi.scale(&s.eigen));
    for beta in points_up_to(2, op.height) {
        let c = taylor(&res.coeff(&beta), 2 * op.depth, "residual")?;
        if let Some(o) = c.iter().position(|x| !x.is_zero()) {
            return Ok(Some(Witness {
                beta,
                p_order: o as u32,
            }));
        }
    }
    Ok(None)
}

/// `a_{ν,0}` against `P̃_r`: `mult·(τ_0/τ)(ν)²` for `M̃`, `mult·τ_0(ν)²`
/// for `M`.
pub fn leading_terms_ok(op: &AffineOperator, r: usize, src: Source) -> Result<bool> {
    let ch = affine_character(2, r, op.depth)?;
    let rho = AffineWeight::rho_hat(2);
    let tau0 = AffineWeightChar::tau0(2);
    for (b, &m) in &ch.mults {
        let nu = op.shift(b);
        let lead = match src {
            Source::Trace => qq(int_of(rho.pairing(&nu)? * crate::roots::Q::from_integer(2), "pairing")?),
            Source::Normalized { .. } => {
                let t = tau0.eval(&nu)?;
                t.mul(&t)
            }
        };
        let want = lead.scale_i64(m as i64);
        let got = op.terms.get(b).map(|s| s.coeff(&[0, 0])).unwrap_or_else(Scalar::zero);
        if got != want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `[A, B]` through combined depth `min(K)`.
pub fn commutator(a: &AffineOperator, b: &AffineOperator) -> Result<AffineOperator> {
    Ok(a.compose(b)?.sub(&b.compose(a)?))
}

/// The depth-zero part of `M̃^{ω̂_1}`, read on `γ = (0, m)`, against the
/// finite `M̃^1` for `n = 2`.
pub fn depth_zero_matches_finite(op: &AffineOperator) -> Result<bool> {
    let fin = conjugated_operator(2, 1, op.height, Route::ClosedForm)?;
    for (beta, key) in [(vec![0i64, 0], vec![1i64, 0]), (vec![0, 1], vec![0, 1])] {
        let a = op.terms.get(&beta).cloned().unwrap_or_else(|| Series::zero(2, op.height));
        let f = fin.coeff(&key).cloned().unwrap_or_else(|| Series::zero(1, op.height));
        for m in 0..=op.height {
            if a.coeff(&[0, m]) != f.coeff(&[m]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct ActionSymmetry {
    pub l: u32,
    /// Pairs `D ↔ (m_0, 2m_0 + l − m_1)` fully inside the window.
    pub pairs: usize,
    pub asymmetric: Vec<[Vec<i64>; 2]>,
}

/// `M(x^μ + x^{s_1μ})` for `μ = lω_1` at generic level (`θ(δ) = p⁻¹`),
/// read on the weights `μ − D` to order `p^{2K}`, must agree on `D` and
/// its reflection.  Only weights all of whose contributions `γ` have
/// height `≤ h` are compared.
pub fn symmetric_action(op: &AffineOperator, l: u32) -> Result<ActionSymmetry> {
    let h = op.height as i64;
    let li = l as i64;
    let one = {
        let mut s = Series::zero(2, op.height);
        s.set(vec![0, 0], Scalar::one());
        s
    };
    let mu = FiniteWeight::omega(1, 2).scale(crate::roots::Q::from_integer(li));
    let mut parts = Vec::new();
    for fin in [mu.clone(), mu.neg()] {
        let th = AffineWeightChar::with_finite(WeightChar::theta_mu(&fin)?);
        parts.push(op.apply(&th, &one)?);
    }
    let order = 2 * op.depth;
    // Offsets of x^μ and x^{s_1μ} below μ.
    let offs = [0i64, li];
    let inside = |m0: i64, m1: i64| {
        offs.iter().all(|&o| m1 - o < 0 || m0 + m1 - o <= h)
            && offs.iter().any(|&o| m0 >= 0 && m1 - o >= 0)
    };
    let value = |m0: i64, m1: i64| -> Result<Vec<Scalar>> {
        let mut v = Scalar::zero();
        for (g, &o) in parts.iter().zip(&offs) {
            if m1 - o >= 0 {
                v = v.add(&g.coeff(&[m0 as u32, (m1 - o) as u32]));
            }
        }
        taylor(&v, order, "M x^μ")
    };
    let mut pairs = 0;
    let mut asymmetric = Vec::new();
    for m0 in 0..=h {
        for m1 in 0..=(h + li) {
            let m1p = 2 * m0 + li - m1;
            if m1p <= m1 || !inside(m0, m1) || !inside(m0, m1p) {
                continue;
            }
            pairs += 1;
            if value(m0, m1)? != value(m0, m1p)? {
                asymmetric.push([vec![m0, m1], vec![m0, m1p]]);
            }
        }
    }
    Ok(ActionSymmetry { l, pairs, asymmetric })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_zero_depth_one() {
        let (zs, hold) = default_samples(0, 1).unwrap();
        let ex = extract_affine_operator(0, &zs, 1, 1, Source::Trace).unwrap();
        assert!(leading_terms_ok(&ex.operator, 0, Source::Trace).unwrap());
        assert!(holdout_residual(&ex.operator, 0, &hold, Source::Trace).unwrap().is_none());
    }

    #[test]
    fn depth_two_both_levels_commute() {
        let mut ops = Vec::new();
        for r in 0..2 {
            let (zs, hold) = default_samples(r, 2).unwrap();
            let ex = extract_affine_operator(r, &zs, 2, 2, Source::Trace).unwrap();
            assert!(leading_terms_ok(&ex.operator, r, Source::Trace).unwrap(), "r = {r}");
            let w = holdout_residual(&ex.operator, r, &hold, Source::Trace).unwrap();
            assert!(w.is_none(), "r = {r}: {w:?}");
            ops.push(ex.operator);
        }
        assert!(depth_zero_matches_finite(&ops[1]).unwrap());
        assert!(commutator(&ops[0], &ops[1]).unwrap().is_zero());
    }

    #[test]
    fn sample_counts() {
        assert_eq!(samples_needed(0, 2).unwrap(), 3);
        assert_eq!(samples_needed(1, 2).unwrap(), 4);
        assert_eq!(samples_needed(0, 0).unwrap(), 1);
    }

    #[test]
    fn too_few_samples() {
        let zs = [Scalar::from_i64(2), Scalar::from_i64(3)];
        assert!(matches!(
            extract_affine_operator(1, &zs, 2, 1, Source::Trace),
            Err(CoreError::Underdetermined(_))
        ));
    }

    #[test]
    fn normalized_series_and_a_wrong_operator() {
        let src = Source::Normalized { imag_mult: 1 };
        let (zs, hold) = default_samples(0, 1).unwrap();
        let ex = extract_affine_operator(0, &zs, 1, 2, src).unwrap();
        assert!(leading_terms_ok(&ex.operator, 0, src).unwrap());
        assert!(holdout_residual(&ex.operator, 0, &hold, src).unwrap().is_none());
        // The operator for Ψ does not annihilate the residual for ψ.
        let tr = extract_affine_operator(0, &zs, 1, 2, Source::Trace).unwrap();
        assert_ne!(tr.operator, ex.operator);
        assert!(holdout_residual(&tr.operator, 0, &hold, src).unwrap().is_some());
    }

    #[test]
    fn normalized_action_is_symmetric() {
        let src = Source::Normalized { imag_mult: 1 };
        for r in 0..2 {
            let (zs, _) = default_samples(r, 1).unwrap();
            let ex = extract_affine_operator(r, &zs, 1, 3, src).unwrap();
            for l in 0..3 {
                let s = symmetric_action(&ex.operator, l).unwrap();
                assert!(s.pairs > 0 && s.asymmetric.is_empty(), "r = {r}, l = {l}: {:?}", s.asymmetric);
            }
        }
        let (zs, _) = default_samples(1, 1).unwrap();
        let tr = extract_affine_operator(1, &zs, 1, 3, Source::Trace).unwrap();
        // M̃ is not Weyl-invariant.
        let s = symmetric_action(&tr.operator, 1).unwrap();
        assert_eq!(s.asymmetric[0], [vec![0, 0], vec![0, 1]]);
    }
}
