//! Characters of the fundamental representations `L(ω̂_r)`, truncated in
//! δ-depth.  Two independent routes: the Weyl–Kac quotient over an
//! enumerated piece of `Ŵ`, and the Freudenthal recursion.

use crate::error::{CoreError, Result};
use crate::roots::{affine_positive_roots, affine_weyl_enumerate, permutations, AffineWeight, FiniteWeight, Q};
use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;

/// Multiplicities of `ω̂_r − β`, keyed by `β` in simple-root coordinates.
pub type Multiplicities = BTreeMap<Vec<i64>, u64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineCharacter {
    pub n: usize,
    pub r: usize,
    pub depth: u32,
    /// Height window `H` of the series in `Q̃⁺`.
    pub height: u32,
    /// Length `L` of the enumerated part of `Ŵ`.
    pub weyl_len: usize,
    #[serde(serialize_with = "ser_mults")]
    pub mults: Multiplicities,
}

fn ser_mults<S: Serializer>(m: &Multiplicities, s: S) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Term<'a> {
        beta: &'a [i64],
        mult: u64,
    }
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for (b, &k) in m {
        seq.serialize_element(&Term { beta: b, mult: k })?;
    }
    seq.end()
}

impl AffineCharacter {
    pub fn mult(&self, beta: &[i64]) -> u64 {
        self.mults.get(beta).copied().unwrap_or(0)
    }

    /// The weight `ω̂_r − β`.
    pub fn weight(&self, beta: &[i64]) -> AffineWeight {
        super::weight_below(self.r, self.n, beta)
    }

    /// Terms at δ-depth exactly `k`.
    pub fn slice(&self, k: i64) -> impl Iterator<Item = (&Vec<i64>, &u64)> {
        self.mults.iter().filter(move |(b, _)| b[0] == k)
    }
}

fn check_args(n: usize, r: usize) -> Result<()> {
    if n < 2 || r >= n {
        return Err(CoreError::InvalidArgument(format!("need 0 ≤ r < n, n ≥ 2 (got n = {n}, r = {r})")));
    }
    Ok(())
}

fn in_window(b: &[i64], d: u32, h: u32) -> bool {
    b.iter().all(|&x| x >= 0) && b[0] <= d as i64 && b.iter().sum::<i64>() <= h as i64
}

/// Lattice points of `Q̃⁺` with `m_0 ≤ d` and height `≤ h`, by height.
fn window_points(n: usize, d: u32, h: u32) -> Vec<Vec<i64>> {
    mac_exact::points_up_to(n, h)
        .into_iter()
        .filter(|p| p[0] <= d)
        .map(|p| p.into_iter().map(i64::from).collect())
        .collect()
}

/// `β_w = (Λ + ρ̂) − w(Λ + ρ̂)` for `w` of length `≤ L`, with signs.
fn weyl_numerator(n: usize, r: usize, d: u32, h: u32, len: usize) -> Result<BTreeMap<Vec<i64>, i64>> {
    let lr = AffineWeight::omega_hat(r, n).add(&AffineWeight::rho_hat(n));
    let mut num: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for w in affine_weyl_enumerate(n, len) {
        let b = lr.sub(&w.act(&lr)).root_coords()?;
        if in_window(&b, d, h) {
            *num.entry(b).or_default() += w.sign();
        }
    }
    num.retain(|_, v| *v != 0);
    Ok(num)
}

/// Weyl–Kac quotient on the window `(d, h)` from `Ŵ` truncated at `len`.
fn weyl_kac_raw(n: usize, r: usize, d: u32, h: u32, len: usize) -> Result<BTreeMap<Vec<i64>, i128>> {
    let pts = window_points(n, d, h);
    let num = weyl_numerator(n, r, d, h, len)?;
    let mut s: BTreeMap<Vec<i64>, i128> = num.into_iter().map(|(k, v)| (k, v as i128)).collect();
    // Divide by (1 − X^α) once per unit of multiplicity; points are visited
    // in increasing height so `s[β − α]` is already updated.
    for root in affine_positive_roots(n, d, n as u32 - 1) {
        for _ in 0..root.mult {
            for p in &pts {
                let prev: Vec<i64> = p.iter().zip(&root.coords).map(|(a, b)| a - b).collect();
                if prev.iter().all(|&x| x >= 0) {
                    if let Some(&v) = s.get(&prev) {
                        if v != 0 {
                            *s.entry(p.clone()).or_default() += v;
                        }
                    }
                }
            }
        }
    }
    s.retain(|_, v| *v != 0);
    Ok(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WkWindow {
    pub height: u32,
    pub weyl_len: usize,
}

impl WkWindow {
    /// Starting window for depth `d`; enlarged by the stability loop.
    pub fn initial(n: usize, d: u32) -> WkWindow {
        let h = n as u32 * (d + 1);
        WkWindow {
            height: h,
            weyl_len: h as usize,
        }
    }

    fn grown(self, n: usize) -> WkWindow {
        WkWindow {
            height: self.height + n as u32,
            weyl_len: self.weyl_len + 2,
        }
    }
}

fn to_mults(raw: BTreeMap<Vec<i64>, i128>) -> Result<Multiplicities> {
    raw.into_iter()
        .map(|(k, v)| {
            u64::try_from(v)
                .map(|v| (k.clone(), v))
                .map_err(|_| CoreError::CheckFailed(format!("negative multiplicity {v} at {k:?}")))
        })
        .collect()
}

/// Weyl–Kac character at the given window, checked against the window grown
/// by `(L + 2, H + n)`.
pub fn weyl_kac_character(n: usize, r: usize, d: u32, win: WkWindow) -> Result<AffineCharacter> {
    check_args(n, r)?;
    let a = weyl_kac_raw(n, r, d, win.height, win.weyl_len)?;
    let big = win.grown(n);
    // Same height, longer words: detects a short Weyl enumeration.
    let b = weyl_kac_raw(n, r, d, win.height, big.weyl_len)?;
    if a != b {
        return Err(CoreError::WeylTruncation(win.weyl_len));
    }
    let c = weyl_kac_raw(n, r, d, big.height, big.weyl_len)?;
    let c: BTreeMap<_, _> = c.into_iter().filter(|(k, _)| k.iter().sum::<i64>() <= win.height as i64).collect();
    if a != c {
        return Err(CoreError::WeylTruncation(win.weyl_len));
    }
    // Weights at depth ≤ d must lie strictly inside the height window.
    let edge = win.height as i64 - n as i64;
    if a.keys().any(|k| k.iter().sum::<i64>() > edge) {
        return Err(CoreError::HeightTruncation(win.height));
    }
    Ok(AffineCharacter {
        n,
        r,
        depth: d,
        height: win.height,
        weyl_len: win.weyl_len,
        mults: to_mults(a)?,
    })
}

const MAX_GROW: usize = 12;

/// `χ_{ω̂_r}` to δ-depth `d`, growing the window until it is stable.
pub fn affine_character(n: usize, r: usize, d: u32) -> Result<AffineCharacter> {
    let mut win = WkWindow::initial(n, d);
    let mut last = Err(CoreError::WeylTruncation(win.weyl_len));
    for _ in 0..MAX_GROW {
        match weyl_kac_character(n, r, d, win) {
            Ok(c) => return Ok(c),
            Err(e @ (CoreError::WeylTruncation(_) | CoreError::HeightTruncation(_))) => last = Err(e),
            Err(e) => return Err(e),
        }
        win = win.grown(n);
    }
    last
}

/// Freudenthal recursion
/// `(2⟨Λ+ρ̂, β⟩ − ⟨β, β⟩) m(β) = 2 Σ_{α>0} mult(α) Σ_{k≥1} ⟨Λ − β + kα, α⟩ m(β − kα)`
/// over the window `(d, h)`, in exact rational arithmetic.
pub fn freudenthal(n: usize, r: usize, d: u32, h: u32) -> Result<Multiplicities> {
    check_args(n, r)?;
    let lam = AffineWeight::omega_hat(r, n);
    let lr = lam.add(&AffineWeight::rho_hat(n));
    let roots: Vec<(Vec<i64>, AffineWeight, Q)> = affine_positive_roots(n, d, n as u32 - 1)
        .into_iter()
        .map(|a| {
            let w = AffineWeight::from_root_coords(&a.coords);
            (a.coords, w, Q::from_integer(a.mult as i64))
        })
        .collect();
    let mut m: BTreeMap<Vec<i64>, Q> = BTreeMap::new();
    for b in window_points(n, d, h) {
        if b.iter().all(|&x| x == 0) {
            m.insert(b, Q::one());
            continue;
        }
        let bw = AffineWeight::from_root_coords(&b);
        let mu = lam.sub(&bw);
        let mut rhs = Q::zero();
        for (ac, aw, mult) in &roots {
            for k in 1i64.. {
                let prev: Vec<i64> = b.iter().zip(ac).map(|(x, y)| x - k * y).collect();
                if prev.iter().any(|&x| x < 0) {
                    break;
                }
                let Some(mp) = m.get(&prev) else { continue };
                if mp.is_zero() {
                    continue;
                }
                let pt = mu.add(&aw.scale(Q::from_integer(k)));
                rhs += *mult * pt.pairing(aw)? * mp;
            }
        }
        rhs *= Q::from_integer(2);
        let den = Q::from_integer(2) * lr.pairing(&bw)? - bw.pairing(&bw)?;
        let v = if den.is_zero() {
            if !rhs.is_zero() {
                return Err(CoreError::CheckFailed(format!("Freudenthal: zero denominator at {b:?}")));
            }
            Q::zero()
        } else {
            rhs / den
        };
        m.insert(b, v);
    }
    m.into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, v)| {
            if !v.is_integer() || v < Q::zero() {
                return Err(CoreError::CheckFailed(format!("Freudenthal: multiplicity {v} at {k:?}")));
            }
            Ok((k, v.to_integer() as u64))
        })
        .collect()
}

/// The multiset of finite parts at each δ-depth is invariant under `W = S_n`.
pub fn finite_weyl_invariant(ch: &AffineCharacter) -> bool {
    let n = ch.n;
    for k in 0..=ch.depth as i64 {
        let slice: BTreeMap<FiniteWeight, u64> = ch.slice(k).map(|(b, &m)| (ch.weight(b).finite, m)).collect();
        for p in permutations(n) {
            for (f, m) in &slice {
                if slice.get(&f.permute(&p)) != Some(m) {
                    return false;
                }
            }
        }
    }
    true
}

/// `m(s_i μ) = m(μ)` whenever both weights lie in the computed window.
pub fn affine_weyl_invariant(ch: &AffineCharacter) -> Result<bool> {
    let lam = AffineWeight::omega_hat(ch.r, ch.n);
    for (b, &m) in &ch.mults {
        let mu = ch.weight(b);
        for i in 0..ch.n {
            let b2 = lam.sub(&mu.reflect(i)).root_coords()?;
            if b2.iter().any(|&x| x < 0) {
                return Ok(false);
            }
            if in_window(&b2, ch.depth, ch.height) && ch.mult(&b2) != m {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_zero_is_the_finite_module() {
        // L(ω̂_r) at depth 0 is the r-th fundamental of sl_n: Λ^r of the
        // standard module, all weights of multiplicity one.
        for n in 2..=4 {
            for r in 0..n {
                let ch = affine_character(n, r, 0).unwrap();
                let binom = (0..r).fold(1u64, |a, i| a * (n - i) as u64 / (i + 1) as u64);
                assert_eq!(ch.mults.len() as u64, binom, "n = {n}, r = {r}");
                assert!(ch.mults.values().all(|&m| m == 1));
            }
        }
    }

    #[test]
    fn basic_level_one_sl2() {
        // Frenkel–Kac: L(Λ₀) of sl₂^ has string functions given by the
        // partition function, so weights Λ₀ − kδ have multiplicity p(k).
        let ch = affine_character(2, 0, 4).unwrap();
        let p = [1, 1, 2, 3, 5];
        for (k, &pk) in p.iter().enumerate() {
            assert_eq!(ch.mult(&[k as i64, k as i64]), pk);
        }
        let low: Vec<_> = ch.mults.keys().filter(|b| b[0] <= 2).collect();
        assert_eq!(low.len(), 7);
        assert!(finite_weyl_invariant(&ch));
        assert!(affine_weyl_invariant(&ch).unwrap());
    }

    #[test]
    fn freudenthal_agrees_small() {
        for r in 0..2 {
            let ch = affine_character(2, r, 2).unwrap();
            let f = freudenthal(2, r, 2, ch.height).unwrap();
            assert_eq!(ch.mults, f);
        }
    }

    #[test]
    fn short_enumeration_is_reported() {
        let e = weyl_kac_character(2, 0, 3, WkWindow { height: 12, weyl_len: 1 }).unwrap_err();
        assert!(matches!(e, CoreError::WeylTruncation(1)));
        let e = weyl_kac_character(2, 0, 3, WkWindow { height: 3, weyl_len: 20 }).unwrap_err();
        assert!(matches!(e, CoreError::HeightTruncation(3)));
    }
}
