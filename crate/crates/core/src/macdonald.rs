//! Macdonald operators
//! `M^r = t^{r(r−n)} Σ_{|I|=r} Π_{i∈I, j∉I} (t²x_i − x_j)/(x_i − x_j) T_I`, with
//! `(T_i f)(x) = f(…, q²x_i, …)`, their eigenvalues, the kernel `φ`, and the
//! conjugated operators `M̃^r`.

use crate::chars::{q_pow, t_pow, WeightChar};
use crate::error::{CoreError, Result};
use crate::ops::{root_coords_u32, root_series, shift_automorphism, DifferenceOperator};
use crate::roots::subsets;
use mac_exact::{var, LaurentPoly, RationalExpr, Scalar, Series};
use rayon::prelude::*;

fn check_r(n: usize, r: usize) -> Result<()> {
    if n < 2 || r == 0 || r >= n {
        return Err(CoreError::InvalidArgument(format!("need 1 ≤ r ≤ n−1, got r = {r}, n = {n}")));
    }
    Ok(())
}

fn x_minus_x(i: usize, j: usize, n: usize) -> LaurentPoly {
    LaurentPoly::x(i, n).sub(&LaurentPoly::x(j, n))
}

/// `T_I f`: `x^a ↦ q^{2 Σ_{i∈I} a_i} x^a`.
pub fn t_shift_poly(n: usize, subset: &[usize], f: &LaurentPoly) -> LaurentPoly {
    f.map_coeffs(|e, c| {
        let k: i64 = subset.iter().map(|&i| e[i] as i64).sum();
        c.mul(&q_pow(n, 2 * k))
    })
}

/// `Π_{i<j} (x_i − x_j)`.
pub fn vandermonde(n: usize) -> LaurentPoly {
    let mut d = LaurentPoly::one(n);
    for i in 0..n {
        for j in i + 1..n {
            d = d.mul(&x_minus_x(i, j, n));
        }
    }
    d
}

/// Numerator of `M^r f` over the common denominator `Π_{i<j}(x_i − x_j)`.
fn macdonald_numerator(n: usize, r: usize, f: &LaurentPoly) -> LaurentPoly {
    let t2 = t_pow(2);
    let pref = t_pow((r * r) as i64 - (r * n) as i64);
    let parts: Vec<LaurentPoly> = subsets(n, r)
        .par_iter()
        .map(|sub| {
            let inside = |k: usize| sub.contains(&k);
            let mut num = t_shift_poly(n, sub, f).scale(&pref);
            let mut sign = 1;
            for &i in sub {
                for j in (0..n).filter(|&j| !inside(j)) {
                    let fac = LaurentPoly::x(i, n).scale(&t2).sub(&LaurentPoly::x(j, n));
                    num = num.mul(&fac);
                    if i > j {
                        sign = -sign;
                    }
                }
            }
            for i in 0..n {
                for j in i + 1..n {
                    if inside(i) == inside(j) {
                        num = num.mul(&x_minus_x(i, j, n));
                    }
                }
            }
            if sign < 0 {
                num.neg()
            } else {
                num
            }
        })
        .collect();
    parts.iter().fold(LaurentPoly::zero(n), |a, b| a.add(b))
}

/// `M^r f` as an exact rational expression.
pub fn apply_macdonald(n: usize, r: usize, f: &LaurentPoly) -> Result<RationalExpr> {
    check_r(n, r)?;
    if f.nvars() != n {
        return Err(CoreError::LatticeMismatch(format!("{} variables, n = {n}", f.nvars())));
    }
    Ok(RationalExpr::new(macdonald_numerator(n, r, f), vandermonde(n))?)
}

/// `M^r f` for symmetric `f`, reduced to a Laurent polynomial.
pub fn apply_macdonald_symmetric(n: usize, r: usize, f: &LaurentPoly) -> Result<LaurentPoly> {
    check_r(n, r)?;
    if f.nvars() != n {
        return Err(CoreError::LatticeMismatch(format!("{} variables, n = {n}", f.nvars())));
    }
    if !f.is_symmetric() {
        return Err(CoreError::NotSymmetric);
    }
    let num = macdonald_numerator(n, r, f);
    let out = num
        .exact_div(&vandermonde(n))
        .map_err(|_| CoreError::NotPolynomial("M^r f has a nontrivial denominator".into()))?;
    if !out.is_symmetric() {
        return Err(CoreError::NotSymmetric);
    }
    Ok(out)
}

/// Weights `e_I`, `|I| = r`, of the character `χ_r` entering the eigenvalue.
pub fn chi_weights(n: usize, r: usize) -> Vec<Vec<i64>> {
    subsets(n, r)
        .into_iter()
        .map(|s| (0..n).map(|i| if s.contains(&i) { 1 } else { 0 }).collect())
        .collect()
}

/// `P_r(θ) = (θτ₀)²(χ_r) = Σ_{|I|=r} θ(e_I)² t^{2⟨e_I,ρ⟩}`.
pub fn eigenvalue(r: usize, theta: &WeightChar) -> Result<Scalar> {
    let n = theta.n();
    check_r(n, r)?;
    let t0 = WeightChar::tau0(n);
    let tt = theta.mul(&t0);
    let mut acc = Vec::new();
    for w in chi_weights(n, r) {
        let v = tt.eval_gl(&w);
        acc.push(v.mul(&v));
    }
    Ok(mac_exact::series::sum(&acc))
}

/// Coefficients `c_k` of `F(Y) = Π_{i≥1} (1 − q^{2i}Y)/(1 − q^{2(i−1)}t²Y)`:
/// `c_k = c_{k−1} (t² − q^{2k})/(1 − q^{2k})`.
pub fn phi_factor_coeffs(n: usize, h: u32) -> Vec<Scalar> {
    let t2 = t_pow(2);
    let mut c = vec![Scalar::one()];
    for k in 1..=h as i64 {
        let q2k = q_pow(n, 2 * k);
        let f = t2.sub(&q2k).div(&Scalar::one().sub(&q2k)).unwrap();
        let prev = c.last().unwrap().clone();
        c.push(prev.mul(&f));
    }
    c
}

/// The series part of `φ = τ Π_{i≥1} Π_{α>0} (1 − q^{2i}θ_{−α})/(1 − q^{2(i−1)}t²θ_{−α})`
/// over `Q⁺`, to height `h`.  The prefactor `τ` is carried as a shift of
/// base point, not as a series term.
pub fn phi_kernel(n: usize, h: u32) -> Series {
    let c = phi_factor_coeffs(n, h);
    let mut out = Series::one(n - 1, h);
    for i in 0..n {
        for j in i + 1..n {
            let a = root_coords_u32(i, j, n);
            out = out.mul(&root_series(n - 1, h, &a, &c));
        }
    }
    out
}

/// `Σ_k c_k Y^k` for a rational function of the symbol `p` (standing in for `Y`).
fn expand_rational_in_y(expr: &Scalar, h: u32) -> Vec<Scalar> {
    expr.taylor_in(var::P, h).expect("regular at Y = 0")
}

/// Factor of `M^r` for the pair `(i, j)`, `i ∈ I`, `j ∉ I`, as a series in
/// `Y = θ_{−(e_a − e_b)}`, `a = min(i,j)`, `b = max(i,j)`.
fn macdonald_pair_factor(n: usize, i: usize, j: usize, h: u32) -> Series {
    let y = Scalar::var(var::P);
    let t2 = t_pow(2);
    let one = Scalar::one();
    let expr = if i < j {
        t2.sub(&y).div(&one.sub(&y)).unwrap()
    } else {
        one.sub(&t2.mul(&y)).div(&one.sub(&y)).unwrap()
    };
    root_series(n - 1, h, &root_coords_u32(i, j, n), &expand_rational_in_y(&expr, h))
}

/// `M^r` as a standard difference operator, coefficients expanded over `Q⁺`.
pub fn macdonald_operator(n: usize, r: usize, h: u32) -> Result<DifferenceOperator> {
    check_r(n, r)?;
    let pref = t_pow((r * r) as i64 - (r * n) as i64);
    let mut op = DifferenceOperator::zero(n, h);
    for sub in subsets(n, r) {
        let mut a = Series::constant(n - 1, h, pref.clone());
        for &i in &sub {
            for j in (0..n).filter(|j| !sub.contains(j)) {
                a = a.mul(&macdonald_pair_factor(n, i, j, h));
            }
        }
        let nu: Vec<i64> = (0..n).map(|k| if sub.contains(&k) { 1 } else { 0 }).collect();
        op.add_term(nu, a);
    }
    Ok(op)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Conjugate the expansion of `M^r` by the series `φ`.
    Conjugation,
    /// Expand the closed-form coefficients directly.
    ClosedForm,
}

/// `M̃^r` acting on series based at `θτ`, with
/// `(1/φ) M̃^r (φ f) = M^r f`.
pub fn conjugated_operator(n: usize, r: usize, h: u32, route: Route) -> Result<DifferenceOperator> {
    check_r(n, r)?;
    let tau = WeightChar::tau(n);
    match route {
        Route::Conjugation => {
            let m = macdonald_operator(n, r, h)?;
            let phi = phi_kernel(n, h);
            let phi_inv = phi.inverse(h)?;
            let mut op = DifferenceOperator::zero(n, h);
            for (nu, a) in &m.terms {
                let tn = tau.eval_gl(nu);
                let tn2inv = tn.mul(&tn).inv()?;
                let c = phi.mul(a).mul(&shift_automorphism(n, nu, &phi_inv)).scale(&tn2inv);
                op.add_term(nu.clone(), c);
            }
            Ok(op)
        }
        Route::ClosedForm => {
            let y = Scalar::var(var::P);
            let one = Scalar::one();
            let t2 = t_pow(2);
            let q2 = q_pow(n, 2);
            let pref = t_pow((r * r) as i64 - (r * n) as i64);
            let mut op = DifferenceOperator::zero(n, h);
            for sub in subsets(n, r) {
                let nu: Vec<i64> = (0..n).map(|k| if sub.contains(&k) { 1 } else { 0 }).collect();
                let tn = tau.eval_gl(&nu);
                let mut a = Series::constant(n - 1, h, pref.mul(&tn.mul(&tn).inv()?));
                for &i in &sub {
                    for j in (0..n).filter(|j| !sub.contains(j)) {
                        let expr = if i < j {
                            // (t² − Y)(1 − t²q⁻²Y)/(1 − Y)²
                            let u = t2.sub(&y).mul(&one.sub(&t2.div(&q2)?.mul(&y)));
                            u.div(&one.sub(&y).powi(2)?)?
                        } else {
                            // (1 − q²Y)/(1 − Y)
                            one.sub(&q2.mul(&y)).div(&one.sub(&y))?
                        };
                        let s = root_series(
                            n - 1,
                            h,
                            &root_coords_u32(i, j, n),
                            &expand_rational_in_y(&expr, h),
                        );
                        a = a.mul(&s);
                    }
                }
                op.add_term(nu, a);
            }
            Ok(op)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mac_exact::parse_scalar as s;

    #[test]
    fn constant_function_n2() {
        let one = LaurentPoly::one(2);
        let r = apply_macdonald_symmetric(2, 1, &one).unwrap();
        assert_eq!(r, LaurentPoly::constant(2, s("th^2 + th^-2").unwrap()));
        let e = eigenvalue(1, &WeightChar::trivial(2)).unwrap();
        assert_eq!(e, s("th^2 + th^-2").unwrap());
    }

    #[test]
    fn phi_first_coefficient() {
        // n = 2: c_1 = (t² − q²)/(1 − q²) with q = qh².
        let c = phi_factor_coeffs(2, 2);
        assert_eq!(c[1], s("(th^4 - qh^4)/(1 - qh^4)").unwrap());
        let p = phi_kernel(2, 0);
        assert_eq!(p, Series::one(1, 0));
    }

    #[test]
    fn operator_shapes() {
        let op = conjugated_operator(3, 2, 2, Route::ClosedForm).unwrap();
        assert_eq!(op.terms.len(), 3);
        for nu in op.shifts() {
            assert_eq!(nu.iter().sum::<i64>(), 2);
        }
        assert!(apply_macdonald(3, 3, &LaurentPoly::one(3)).is_err());
    }

    #[test]
    fn conjugation_and_closed_form_agree() {
        for n in 2..=3 {
            for r in 1..n {
                let a = conjugated_operator(n, r, 3, Route::Conjugation).unwrap();
                let b = conjugated_operator(n, r, 3, Route::ClosedForm).unwrap();
                assert_eq!(a, b, "n = {n}, r = {r}");
            }
        }
    }
}
