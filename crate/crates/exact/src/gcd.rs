//! Multivariate polynomial gcd over the integers.
//!
//! Trivial factors (monomials, integer content, symbols present in only one
//! operand) are split off first; the remaining primitive gcd is computed
//! with Brown's dense modular algorithm: images modulo word-size primes,
//! recursive evaluation/interpolation in all but one symbol, Chinese
//! remaindering, and a final trial division over ℤ.

use crate::int::{crt_symmetric, Int};
use crate::modp::{self, Exps, MPoly, Points, UPoly};
use crate::mono::{Mono, NVARS};
use crate::poly::Poly;
use num_bigint::BigInt;

/// gcd with positive leading coefficient (graded lex); `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return normalize_sign(b.clone());
    }
    if b.is_zero() {
        return normalize_sign(a.clone());
    }
    let ma = a.mono_content();
    let mb = b.mono_content();
    let mg = ma.gcd(mb);
    let a1 = if ma.is_one() { a.clone() } else { a.div_mono(ma) };
    let b1 = if mb.is_one() { b.clone() } else { b.div_mono(mb) };
    let ca = a1.int_content();
    let cb = b1.int_content();
    let ic = ca.gcd(&cb);
    let a2 = if ca.is_one() { a1 } else { a1.div_int_exact(&ca) };
    let b2 = if cb.is_one() { b1 } else { b1.div_int_exact(&cb) };
    let g = gcd_primitive(&a2, &b2);
    normalize_sign(g.mul_term(mg, &ic))
}

fn normalize_sign(p: Poly) -> Poly {
    if p.lc().is_negative() {
        p.neg()
    } else {
        p
    }
}

/// Content with respect to symbol `v`: gcd of the coefficients.
pub fn content_in(a: &Poly, v: usize) -> Poly {
    let mut g = Poly::zero();
    for (_, c) in a.coeffs_in(v) {
        g = gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// gcd of primitive polynomials without monomial content.
fn gcd_primitive(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b || *a == b.neg() {
        return a.clone();
    }
    let mut a = a.clone();
    let mut b = b.clone();
    loop {
        let va = a.var_mask();
        let vb = b.var_mask();
        if va == vb {
            break;
        }
        // a symbol occurring in only one operand can only enter the gcd
        // through that operand's content with respect to it
        for v in 0..NVARS {
            let bit = 1u32 << v;
            if va & bit != 0 && vb & bit == 0 {
                a = content_in(&a, v);
                break;
            }
            if vb & bit != 0 && va & bit == 0 {
                b = content_in(&b, v);
                break;
            }
        }
        if a.is_constant() || b.is_constant() {
            return Poly::one();
        }
        // re-strip after taking contents
        let ma = a.mono_content();
        let mb = b.mono_content();
        let mg = ma.gcd(mb);
        let a1 = a.div_mono(ma);
        let b1 = b.div_mono(mb);
        if !mg.is_one() || !ma.is_one() || !mb.is_one() {
            return gcd(&a1, &b1).mul_term(mg, &Int::ONE);
        }
    }
    let mask = a.var_mask();
    let mut vars: Vec<usize> = (0..NVARS).filter(|v| mask & (1 << v) != 0).collect();
    // main symbol: largest degree; the others in decreasing degree so the
    // outermost interpolation runs over the smallest degree
    vars.sort_by_key(|&v| std::cmp::Reverse(a.degree_in(v).min(b.degree_in(v))));
    modular_gcd(&a, &b, &vars)
}

fn to_local(a: &Poly, vars: &[usize]) -> Vec<(Exps, Int)> {
    a.terms()
        .iter()
        .map(|(m, c)| {
            let mut e = [0u32; NVARS];
            for (i, &v) in vars.iter().enumerate() {
                e[i] = m.exp(v);
            }
            (e, c.clone())
        })
        .collect()
}

fn reduce_mod(t: &[(Exps, Int)], p: u64) -> MPoly {
    let v = t.iter().map(|(e, c)| (*e, c.mod_u64(p))).collect();
    MPoly::from_unsorted(v, p)
}

fn lex_lead(t: &[(Exps, Int)]) -> (Exps, Int) {
    let mut best = &t[0];
    for x in t {
        if x.0 > best.0 {
            best = x;
        }
    }
    best.clone()
}

fn modular_gcd(a: &Poly, b: &Poly, vars: &[usize]) -> Poly {
    let k = vars.len();
    let la = to_local(a, vars);
    let lb = to_local(b, vars);
    let (_, lca) = lex_lead(&la);
    let (_, lcb) = lex_lead(&lb);
    let gamma = lca.gcd(&lcb);
    let mut pts = Points::new(a.len() as u64 * 31 + b.len() as u64);
    // accumulated image: exps → symmetric residue
    let mut acc: Option<(Vec<(Exps, BigInt)>, BigInt, Exps)> = None;
    for p in modp::primes() {
        if lca.mod_u64(p) == 0 || lcb.mod_u64(p) == 0 {
            continue;
        }
        let ap = reduce_mod(&la, p);
        let bp = reduce_mod(&lb, p);
        let gp = match pgcd(&ap, &bp, k, p, &mut pts) {
            Some(g) => g,
            None => continue,
        };
        if gp.is_constant() {
            return Poly::one();
        }
        let gp = gp.scale(gamma.mod_u64(p), p);
        let lead = *gp.lead().unwrap();
        let restart = match &acc {
            None => true,
            Some((_, _, l)) => lead < *l,
        };
        if restart {
            let v = gp
                .terms
                .iter()
                .map(|(e, c)| (*e, symmetric(*c, p)))
                .collect();
            acc = Some((v, BigInt::from(p), lead));
        } else {
            let (cur, m, l) = acc.as_mut().unwrap();
            if lead > *l {
                continue;
            }
            // merge supports
            let mut map: std::collections::BTreeMap<Exps, (BigInt, u64)> =
                std::collections::BTreeMap::new();
            for (e, c) in cur.iter() {
                map.insert(*e, (c.clone(), 0));
            }
            for (e, c) in &gp.terms {
                map.entry(*e).or_insert((BigInt::from(0), 0)).1 = *c;
            }
            let mut changed = false;
            let mut nv = Vec::with_capacity(map.len());
            for (e, (c, r)) in map {
                let x = crt_symmetric(&c, m, r, p);
                if x != c {
                    changed = true;
                }
                if x != BigInt::from(0) {
                    nv.push((e, x));
                }
            }
            *m *= BigInt::from(p);
            *cur = nv;
            if !changed {
                let cand = from_local(cur, vars);
                let cont = cand.int_content();
                let h = normalize_sign(cand.div_int_exact(&cont));
                if a.div_exact(&h).is_some() && b.div_exact(&h).is_some() {
                    return h;
                }
            }
        }
    }
    unreachable!("prime stream exhausted")
}

fn symmetric(c: u64, p: u64) -> BigInt {
    if c > p / 2 {
        BigInt::from(c as i64 - p as i64)
    } else {
        BigInt::from(c)
    }
}

fn from_local(t: &[(Exps, BigInt)], vars: &[usize]) -> Poly {
    let v = t
        .iter()
        .map(|(e, c)| {
            let mut g = [0u32; NVARS];
            for (i, &var) in vars.iter().enumerate() {
                g[var] = e[i];
            }
            (Mono::from_exps(&g), Int::from(c.clone()))
        })
        .collect();
    Poly::from_terms(v)
}

fn u_content(groups: &[(Exps, UPoly)], p: u64) -> UPoly {
    let mut g: UPoly = Vec::new();
    for (_, u) in groups {
        g = modp::u_gcd(&g, u, p);
        if g.len() == 1 {
            break;
        }
    }
    g
}

fn eval_groups(groups: &[(Exps, UPoly)], x: u64, p: u64) -> MPoly {
    let mut t = Vec::with_capacity(groups.len());
    for (k, u) in groups {
        let c = modp::u_eval(u, x, p);
        if c != 0 {
            t.push((*k, c));
        }
    }
    // keys are distinct and already in decreasing order
    MPoly { terms: t }
}

/// Monic (lex) gcd modulo `p` of polynomials in local variables `0..k`.
/// Returns `None` when too many unlucky evaluations occur.
fn pgcd(a: &MPoly, b: &MPoly, k: usize, p: u64, pts: &mut Points) -> Option<MPoly> {
    if a.is_zero() {
        return Some(b.monic(p));
    }
    if b.is_zero() {
        return Some(a.monic(p));
    }
    if k == 1 {
        let ua = dense0(a);
        let ub = dense0(b);
        let g = modp::u_gcd(&ua, &ub, p);
        let t = g
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(d, &c)| {
                let mut e = [0u32; NVARS];
                e[0] = d as u32;
                (e, c)
            })
            .collect();
        return Some(MPoly { terms: t });
    }
    let v = k - 1;
    let mut ga = a.group_by(v);
    let mut gb = b.group_by(v);
    let ca = u_content(&ga, p);
    let cb = u_content(&gb, p);
    let c = modp::u_gcd(&ca, &cb, p);
    if ca.len() > 1 {
        for g in ga.iter_mut() {
            g.1 = modp::u_divrem(&g.1, &ca, p).0;
        }
    }
    if cb.len() > 1 {
        for g in gb.iter_mut() {
            g.1 = modp::u_divrem(&g.1, &cb, p).0;
        }
    }
    let lca = ga[0].1.clone();
    let lcb = gb[0].1.clone();
    let gamma = modp::u_gcd(&lca, &lcb, p);
    let dega = ga.iter().map(|g| g.1.len()).max().unwrap_or(1) - 1;
    let degb = gb.iter().map(|g| g.1.len()).max().unwrap_or(1) - 1;
    let bound = (gamma.len() - 1) + dega.min(degb);
    let content_poly = |c: &UPoly| -> MPoly {
        let t = c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &x)| x != 0)
            .map(|(d, &x)| {
                let mut e = [0u32; NVARS];
                e[v] = d as u32;
                (e, x)
            })
            .collect();
        MPoly { terms: t }
    };
    let aprim = MPoly::from_groups(&ga, v, p);
    let bprim = MPoly::from_groups(&gb, v, p);

    // interpolation state
    let mut g_int: Vec<(Exps, UPoly)> = Vec::new();
    let mut modulus: UPoly = vec![1];
    let mut npts = 0usize;
    let mut lead: Option<Exps> = None;
    let mut used: Vec<u64> = Vec::new();
    let mut failures = 0usize;
    loop {
        if failures > 64 {
            return None;
        }
        let x = pts.next(p);
        if used.contains(&x) {
            failures += 1;
            continue;
        }
        if modp::u_eval(&lca, x, p) == 0 || modp::u_eval(&lcb, x, p) == 0 {
            failures += 1;
            continue;
        }
        let ax = eval_groups(&ga, x, p);
        let bx = eval_groups(&gb, x, p);
        let gx = pgcd(&ax, &bx, k - 1, p, pts)?;
        if gx.is_constant() {
            return Some(content_poly(&c).monic(p));
        }
        let lx = *gx.lead().unwrap();
        let gam = modp::u_eval(&gamma, x, p);
        let gx = gx.scale(gam, p);
        match lead {
            Some(l) if lx > l => {
                failures += 1;
                continue;
            }
            Some(l) if lx == l => {}
            _ => {
                lead = Some(lx);
                g_int.clear();
                modulus = vec![1];
                npts = 0;
                used.clear();
            }
        }
        // Newton step: G += (gx - G(x)) * modulus / modulus(x)
        let mx = modp::u_eval(&modulus, x, p);
        let imx = modp::inv(mx, p);
        let mut map: std::collections::BTreeMap<Exps, UPoly> = g_int.drain(..).collect();
        for (e, cx) in &gx.terms {
            map.entry(*e).or_default();
            let _ = cx;
        }
        let gxm: std::collections::BTreeMap<Exps, u64> = gx.terms.iter().cloned().collect();
        let mut unchanged = true;
        for (e, u) in map.iter_mut() {
            let cur = modp::u_eval(u, x, p);
            let target = gxm.get(e).copied().unwrap_or(0);
            let diff = modp::sub(target, cur, p);
            if diff != 0 {
                unchanged = false;
                let s = modp::mul(diff, imx, p);
                *u = modp::u_add(u, &modp::u_scale(&modulus, s, p), p);
            }
        }
        map.retain(|_, u| !u.is_empty());
        g_int = map.into_iter().rev().collect();
        modulus = modp::u_mul(&modulus, &vec![p - x % p, 1], p);
        used.push(x);
        npts += 1;
        if (unchanged && npts >= 2) || npts > bound {
            let cand = MPoly::from_groups(&g_int, v, p);
            let gc = u_content(&g_int, p);
            let h = if gc.len() > 1 {
                let gg: Vec<(Exps, UPoly)> = g_int
                    .iter()
                    .map(|(e, u)| (*e, modp::u_divrem(u, &gc, p).0))
                    .collect();
                MPoly::from_groups(&gg, v, p)
            } else {
                cand
            };
            if aprim.div_exact(&h, p).is_some() && bprim.div_exact(&h, p).is_some() {
                let full = h.mul(&content_poly(&c), p);
                return Some(full.monic(p));
            }
            if npts > bound {
                // unlucky start; begin again
                lead = None;
                failures += 1;
            }
        }
    }
}

fn dense0(a: &MPoly) -> UPoly {
    let d = a.terms.first().map(|t| t.0[0]).unwrap_or(0) as usize;
    let mut u = vec![0u64; d + 1];
    for (e, c) in &a.terms {
        u[e[0] as usize] = *c;
    }
    modp::u_trim(&mut u);
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    fn p(s: &str) -> Poly {
        crate::parse::parse_poly(s).unwrap()
    }

    #[test]
    fn simple_cases() {
        assert_eq!(gcd(&p("qh^2 - 1"), &p("qh - 1")), p("qh - 1"));
        assert_eq!(gcd(&p("6*qh^2"), &p("4*qh^3*th")), p("2*qh^2"));
        assert_eq!(gcd(&p("qh + 1"), &p("th + 1")), p("1"));
        assert_eq!(gcd(&Poly::zero(), &p("-3*qh")), p("3*qh"));
    }

    #[test]
    fn multivariate_common_factor() {
        let g = p("qh^3*th - 2*z1*th + 7*qh + 1");
        let a = p("qh^2*z1 - th^3 + 4");
        let b = p("qh*th*z1^2 + 3*qh - th^2*z1 - 5");
        let ga = g.mul(&a);
        let gb = g.mul(&b);
        assert_eq!(gcd(&ga, &gb), normalize_sign(g.clone()));
        let g2 = g.mul(&g);
        assert_eq!(gcd(&g2.mul(&a), &g.mul(&b)), normalize_sign(g));
    }

    #[test]
    fn disjoint_symbols() {
        // gcd must come from the content in the symbol only one side has
        let a = p("qh^2*th - th");
        let b = p("qh^2 - 2*qh + 1");
        assert_eq!(gcd(&a, &b), p("qh - 1"));
    }

    #[test]
    fn large_coefficients() {
        let g = p("123456789123*qh^2 - 98765432198765*th + 1");
        let a = p("qh*th - 999999999989");
        let b = p("qh^3 + 77777777777*th^2");
        assert_eq!(gcd(&g.mul(&a), &g.mul(&b)), g);
    }
}
