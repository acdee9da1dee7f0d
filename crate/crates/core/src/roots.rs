//! Type A root data, finite and affine.
//!
//! Finite weights are kept in the GL picture (coordinates in the `e_i`
//! basis).  The sl pairing is the dot product of the projections onto the
//! sum-zero hyperplane.  Affine weights are triples (finite, c, d) meaning
//! `λ̄ + cε + dδ` with `⟨ε,δ⟩ = 1`.

use crate::error::CoreError;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

pub type Q = Ratio<i64>;

pub fn qi(v: i64) -> Q {
    Q::from_integer(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiniteWeight(pub Vec<Q>);

impl FiniteWeight {
    pub fn from_ints(v: &[i64]) -> FiniteWeight {
        FiniteWeight(v.iter().map(|&x| qi(x)).collect())
    }

    pub fn zero(n: usize) -> FiniteWeight {
        FiniteWeight(vec![Q::zero(); n])
    }

    pub fn e(i: usize, n: usize) -> FiniteWeight {
        let mut v = FiniteWeight::zero(n);
        v.0[i] = Q::one();
        v
    }

    /// `ρ = ((n−1)/2, (n−3)/2, …, (1−n)/2)`.
    pub fn rho(n: usize) -> FiniteWeight {
        FiniteWeight(
            (0..n)
                .map(|i| Q::new(n as i64 - 1 - 2 * i as i64, 2))
                .collect(),
        )
    }

    /// Fundamental weight `ω_r = e_1 + … + e_r` (GL representative).
    pub fn omega(r: usize, n: usize) -> FiniteWeight {
        FiniteWeight((0..n).map(|i| if i < r { Q::one() } else { Q::zero() }).collect())
    }

    /// Simple root `α_i = e_i − e_{i+1}`, `1 ≤ i ≤ n−1`.
    pub fn simple_root(i: usize, n: usize) -> FiniteWeight {
        let mut v = FiniteWeight::zero(n);
        v.0[i - 1] = Q::one();
        v.0[i] = -Q::one();
        v
    }

    /// Highest root `e_1 − e_n`.
    pub fn highest_root(n: usize) -> FiniteWeight {
        let mut v = FiniteWeight::zero(n);
        v.0[0] = Q::one();
        v.0[n - 1] = -Q::one();
        v
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> Q {
        self.0.iter().copied().sum()
    }

    /// Projection onto the sum-zero hyperplane.
    pub fn sl(&self) -> FiniteWeight {
        let m = self.total() / qi(self.n() as i64);
        FiniteWeight(self.0.iter().map(|x| x - m).collect())
    }

    pub fn add(&self, o: &FiniteWeight) -> FiniteWeight {
        FiniteWeight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &FiniteWeight) -> FiniteWeight {
        FiniteWeight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> FiniteWeight {
        FiniteWeight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: Q) -> FiniteWeight {
        FiniteWeight(self.0.iter().map(|a| a * c).collect())
    }

    /// GL dot product `⟨e_i, e_j⟩ = δ_ij`.
    pub fn dot(&self, o: &FiniteWeight) -> Result<Q, CoreError> {
        if self.n() != o.n() {
            return Err(CoreError::LatticeMismatch(format!(
                "rank {} vs {}",
                self.n(),
                o.n()
            )));
        }
        Ok(self.0.iter().zip(&o.0).map(|(a, b)| a * b).sum())
    }

    /// Pairing on the weight lattice `P` of sl_n.
    pub fn pairing(&self, o: &FiniteWeight) -> Result<Q, CoreError> {
        self.sl().dot(&o.sl())
    }

    pub fn as_ints(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|x| if x.is_integer() { Some(x.to_integer()) } else { None })
            .collect()
    }

    /// Integer GL representative of the P-class: `λ_i − λ_n`.
    pub fn gl_representative(&self) -> Result<Vec<i64>, CoreError> {
        let last = *self.0.last().unwrap_or(&Q::zero());
        self.0
            .iter()
            .map(|x| {
                let d = x - last;
                if d.is_integer() {
                    Ok(d.to_integer())
                } else {
                    Err(CoreError::NotInLattice(format!("{self:?} is not in P")))
                }
            })
            .collect()
    }

    /// Simple-root coordinates of an element of the root lattice.
    pub fn root_coords(&self) -> Result<Vec<i64>, CoreError> {
        let ints = self
            .as_ints()
            .ok_or_else(|| CoreError::NotInLattice(format!("{self:?} is not integral")))?;
        if ints.iter().sum::<i64>() != 0 {
            return Err(CoreError::NotInLattice(format!("{self:?} is not in the root lattice")));
        }
        let mut acc = 0;
        let mut out = Vec::with_capacity(self.n() - 1);
        for &x in &ints[..self.n() - 1] {
            acc += x;
            out.push(acc);
        }
        Ok(out)
    }

    pub fn from_root_coords(m: &[i64]) -> FiniteWeight {
        let n = m.len() + 1;
        let at = |i: usize| if i == 0 || i == n { 0 } else { m[i - 1] };
        FiniteWeight((0..n).map(|i| qi(at(i + 1) - at(i))).collect())
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// Apply a permutation of coordinates: `(wλ)_{perm[i]} = λ_i`.
    pub fn permute(&self, perm: &[usize]) -> FiniteWeight {
        let mut v = FiniteWeight::zero(self.n());
        for (i, &p) in perm.iter().enumerate() {
            v.0[p] = self.0[i];
        }
        v
    }
}

/// Height of `β ∈ Q⁺` given in simple-root coordinates.
pub fn height(m: &[i64]) -> i64 {
    m.iter().sum()
}

/// `μ ≤ λ` in dominance order, i.e. `λ − μ ∈ Q⁺`.
pub fn dominance_leq(mu: &FiniteWeight, lambda: &FiniteWeight) -> Result<bool, CoreError> {
    let c = lambda.sub(mu).root_coords()?;
    Ok(c.iter().all(|&x| x >= 0))
}

/// Positive roots `e_i − e_j`, `i < j`, in lexicographic order of `(i, j)`.
pub fn positive_roots(n: usize) -> Vec<FiniteWeight> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(FiniteWeight::e(i, n).sub(&FiniteWeight::e(j, n)));
        }
    }
    out
}

/// All permutations of `0..n` (lexicographic).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = used.len();
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn perm_sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

// ---------------------------------------------------------------- affine

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineWeight {
    /// Finite part, stored sl-projected.
    pub finite: FiniteWeight,
    /// Coefficient of ε.
    pub c: Q,
    /// Coefficient of δ.
    pub d: Q,
}

impl AffineWeight {
    pub fn new(finite: FiniteWeight, c: Q, d: Q) -> AffineWeight {
        AffineWeight {
            finite: finite.sl(),
            c,
            d,
        }
    }

    pub fn zero(n: usize) -> AffineWeight {
        AffineWeight::new(FiniteWeight::zero(n), Q::zero(), Q::zero())
    }

    pub fn epsilon(n: usize) -> AffineWeight {
        AffineWeight::new(FiniteWeight::zero(n), Q::one(), Q::zero())
    }

    pub fn delta(n: usize) -> AffineWeight {
        AffineWeight::new(FiniteWeight::zero(n), Q::zero(), Q::one())
    }

    pub fn n(&self) -> usize {
        self.finite.n()
    }

    /// Simple root `α_i`, `0 ≤ i ≤ n−1`; `α_0 = δ − θ`.
    pub fn simple_root(i: usize, n: usize) -> AffineWeight {
        if i == 0 {
            AffineWeight::new(FiniteWeight::highest_root(n).neg(), Q::zero(), Q::one())
        } else {
            AffineWeight::new(FiniteWeight::simple_root(i, n), Q::zero(), Q::zero())
        }
    }

    /// `ρ̂ = ρ + nε` (dual Coxeter number `n`).
    pub fn rho_hat(n: usize) -> AffineWeight {
        AffineWeight::new(FiniteWeight::rho(n), qi(n as i64), Q::zero())
    }

    /// Fundamental weight `ω̂_r = ω_r + ε` (`ω̂_0 = ε`).
    pub fn omega_hat(r: usize, n: usize) -> AffineWeight {
        AffineWeight::new(FiniteWeight::omega(r, n), Q::one(), Q::zero())
    }

    /// `Σ m_i α_i` from simple-root coordinates `(m_0, …, m_{n−1})`.
    pub fn from_root_coords(m: &[i64]) -> AffineWeight {
        let n = m.len();
        let mut w = AffineWeight::zero(n);
        for (i, &k) in m.iter().enumerate() {
            w = w.add(&AffineWeight::simple_root(i, n).scale(qi(k)));
        }
        w
    }

    /// Simple-root coordinates of an element of the affine root lattice.
    pub fn root_coords(&self) -> Result<Vec<i64>, CoreError> {
        if !self.c.is_zero() || !self.d.is_integer() {
            return Err(CoreError::NotInLattice(format!("{self:?} is not in Q̃")));
        }
        let m0 = self.d.to_integer();
        let fin = self.finite.add(&FiniteWeight::highest_root(self.n()).scale(qi(m0)));
        let mut out = vec![m0];
        out.extend(fin.root_coords()?);
        Ok(out)
    }

    pub fn add(&self, o: &AffineWeight) -> AffineWeight {
        AffineWeight {
            finite: self.finite.add(&o.finite),
            c: self.c + o.c,
            d: self.d + o.d,
        }
    }

    pub fn sub(&self, o: &AffineWeight) -> AffineWeight {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> AffineWeight {
        AffineWeight {
            finite: self.finite.neg(),
            c: -self.c,
            d: -self.d,
        }
    }

    pub fn scale(&self, k: Q) -> AffineWeight {
        AffineWeight {
            finite: self.finite.scale(k),
            c: self.c * k,
            d: self.d * k,
        }
    }

    pub fn pairing(&self, o: &AffineWeight) -> Result<Q, CoreError> {
        Ok(self.finite.dot(&o.finite)? + self.c * o.d + self.d * o.c)
    }

    /// Simple reflection `s_i λ = λ − ⟨λ, α_i⟩ α_i`.
    pub fn reflect(&self, i: usize) -> AffineWeight {
        let a = AffineWeight::simple_root(i, self.n());
        let k = self.pairing(&a).expect("same rank");
        self.sub(&a.scale(k))
    }
}

/// A positive affine root in simple-root coordinates with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineRoot {
    pub coords: Vec<i64>,
    pub mult: u32,
    pub imaginary: bool,
}

/// Positive roots of the affine algebra with δ-coefficient at most `depth`:
/// `α + kδ` (`k ≥ 0` for `α > 0`, `k ≥ 1` for `α < 0`) and `kδ`, `k ≥ 1`,
/// the latter with multiplicity `imag_mult` (`n − 1` for the affine algebra).
pub fn affine_positive_roots(n: usize, depth: u32, imag_mult: u32) -> Vec<AffineRoot> {
    let mut out = Vec::new();
    for k in 0..=depth as i64 {
        for i in 0..n {
            for j in 0..n {
                if i == j || (i > j && k == 0) {
                    continue;
                }
                let (a, b) = (i.min(j), i.max(j));
                let sign = if i < j { 1 } else { -1 };
                let mut c = vec![k; n];
                for idx in a + 1..=b {
                    c[idx] += sign;
                }
                out.push(AffineRoot {
                    coords: c,
                    mult: 1,
                    imaginary: false,
                });
            }
        }
        if k >= 1 && imag_mult > 0 {
            out.push(AffineRoot {
                coords: vec![k; n],
                mult: imag_mult,
                imaginary: true,
            });
        }
    }
    out
}

/// Element of the affine Weyl group with a reduced word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineWeylElement {
    /// Word `s_{w_1} s_{w_2} …`, acting right to left.
    pub word: Vec<usize>,
}

impl AffineWeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn sign(&self) -> i64 {
        if self.word.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn act(&self, l: &AffineWeight) -> AffineWeight {
        let mut v = l.clone();
        for &i in self.word.iter().rev() {
            v = v.reflect(i);
        }
        v
    }
}

/// Point used to deduplicate Weyl group elements: `ρ̂` plus a finite
/// perturbation with distinct non-resonant coordinates.
fn generic_point(n: usize) -> AffineWeight {
    let pert = FiniteWeight((0..n).map(|i| Q::new((i * i) as i64 + 1, 7 + 4 * i as i64)).collect());
    let r = AffineWeight::rho_hat(n);
    AffineWeight::new(r.finite.add(&pert), r.c, r.d)
}

/// All elements of `Ŵ` of length at most `max_len`.  Breadth-first, so each
/// element is reached first by a reduced word.
pub fn affine_weyl_enumerate(n: usize, max_len: usize) -> Vec<AffineWeylElement> {
    let p = generic_point(n);
    let mut seen: BTreeSet<AffineWeight> = BTreeSet::new();
    seen.insert(p.clone());
    let mut out = vec![AffineWeylElement { word: vec![] }];
    let mut frontier = vec![(AffineWeylElement { word: vec![] }, p)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (w, img) in &frontier {
            for i in 0..n {
                let nimg = img.reflect(i);
                if seen.insert(nimg.clone()) {
                    let mut word = vec![i];
                    word.extend(&w.word);
                    let e = AffineWeylElement { word };
                    next.push((e.clone(), nimg));
                    out.push(e);
                }
            }
        }
        frontier = next;
    }
    out
}

/// The `r`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairings() {
        for n in 2..5 {
            for i in 1..n {
                let a = FiniteWeight::simple_root(i, n);
                assert_eq!(a.pairing(&a).unwrap(), qi(2));
            }
            let d = AffineWeight::delta(n);
            assert_eq!(d.pairing(&d).unwrap(), Q::zero());
            let e = AffineWeight::epsilon(n);
            assert_eq!(e.pairing(&d).unwrap(), Q::one());
        }
        let rho = FiniteWeight::rho(2);
        assert_eq!(rho.pairing(&FiniteWeight::omega(1, 2)).unwrap(), Q::new(1, 2));
        assert!(FiniteWeight::zero(2).pairing(&FiniteWeight::zero(3)).is_err());
    }

    #[test]
    fn rho_hat_normalization() {
        for n in 2..5 {
            let r = AffineWeight::rho_hat(n);
            for i in 0..n {
                let a = AffineWeight::simple_root(i, n);
                assert_eq!(r.pairing(&a).unwrap(), a.pairing(&a).unwrap() / qi(2));
            }
            assert_eq!(r.pairing(&AffineWeight::epsilon(n)).unwrap(), Q::zero());
        }
    }

    #[test]
    fn root_enumeration() {
        assert_eq!(positive_roots(2).len(), 1);
        assert_eq!(positive_roots(3).len(), 3);
        let r = affine_positive_roots(2, 1, 1);
        let mut c: Vec<Vec<i64>> = r.iter().map(|x| x.coords.clone()).collect();
        c.sort();
        // α₁ = (0,1), δ−α₁ = α₀ = (1,0), δ = (1,1), α₁+δ = (1,2)
        assert_eq!(c, vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 2]]);
        let low: Vec<&Vec<i64>> = c.iter().filter(|x| height(x) <= 2).collect();
        assert_eq!(low.len(), 3);
        for root in affine_positive_roots(3, 2, 2) {
            let w = AffineWeight::from_root_coords(&root.coords);
            let len = w.pairing(&w).unwrap();
            assert_eq!(len, if root.imaginary { Q::zero() } else { qi(2) });
            assert_eq!(w.root_coords().unwrap(), root.coords);
        }
    }

    #[test]
    fn weyl_enumeration() {
        assert_eq!(affine_weyl_enumerate(2, 0).len(), 1);
        let w = affine_weyl_enumerate(2, 2);
        assert_eq!(w.len(), 5);
        let words: Vec<Vec<usize>> = w.iter().map(|e| e.word.clone()).collect();
        for expect in [vec![], vec![0], vec![1], vec![0, 1], vec![1, 0]] {
            assert!(words.contains(&expect));
        }
        let l = AffineWeight::new(FiniteWeight::from_ints(&[3, -1, 0]), qi(2), Q::new(-1, 3));
        let m = AffineWeight::new(FiniteWeight::from_ints(&[1, 5, 2]), qi(-1), qi(4));
        for e in affine_weyl_enumerate(3, 4) {
            assert_eq!(e.act(&l).pairing(&e.act(&m)).unwrap(), l.pairing(&m).unwrap());
        }
    }

    #[test]
    fn dominance() {
        let l = FiniteWeight::from_ints(&[2, 0]);
        assert!(dominance_leq(&l, &l).unwrap());
        assert!(dominance_leq(&FiniteWeight::from_ints(&[1, 1]), &l).unwrap());
        let t = FiniteWeight::from_ints(&[3, 0, 0]);
        assert!(dominance_leq(&FiniteWeight::from_ints(&[1, 1, 1]), &t).unwrap());
        let u = FiniteWeight::from_ints(&[2, 2, -1]);
        assert!(!dominance_leq(&u, &t).unwrap());
        assert!(!dominance_leq(&t, &u).unwrap());
        assert!(dominance_leq(&FiniteWeight::from_ints(&[1, 0, 0]), &t).is_err());
    }

    #[test]
    fn root_coordinates_roundtrip() {
        let b = FiniteWeight::from_ints(&[2, -1, 0, -1]);
        let c = b.root_coords().unwrap();
        assert_eq!(c, vec![2, 1, 1]);
        assert_eq!(FiniteWeight::from_root_coords(&c), b);
        assert_eq!(height(&c), 4);
    }
}
