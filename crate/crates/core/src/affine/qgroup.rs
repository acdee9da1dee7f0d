//! Truncated `U_q(n̂⁻)` for `ŝl₂` and the affine Verma module.
//!
//! Elements of `U_q(n̂⁻)` are words in `F_0, F_1` modulo the two-sided ideal
//! generated by the Serre elements
//! `S_ij = Σ_l (−1)^l [3 choose l] F_i^{3−l} F_j F_i^l`.  Each bidegree is
//! reduced by row echelon form with the words in descending order, so the
//! basis of the quotient is the set of non-pivot words.

use crate::error::{CoreError, Result};
use crate::uq::{qint, qq};
use mac_exact::linalg::rref;
use mac_exact::series::sum;
use mac_exact::Scalar;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// A word `F_{w_0} F_{w_1} ⋯` in the letters `0, 1`.
pub type Word = Vec<u8>;
/// Bidegree `(#F_0, #F_1)`, i.e. `β = m_0 α_0 + m_1 α_1`.
pub type Bidegree = [u32; 2];

/// Affine Cartan matrix of `ŝl₂`.
pub const CARTAN: [[i64; 2]; 2] = [[2, -2], [-2, 2]];

pub fn bidegree(w: &[u8]) -> Bidegree {
    let a = w.iter().filter(|&&x| x == 0).count() as u32;
    [a, w.len() as u32 - a]
}

/// `⟨β, α_i⟩`.
pub fn pair_simple(b: Bidegree, i: usize) -> i64 {
    CARTAN[i][0] * b[0] as i64 + CARTAN[i][1] * b[1] as i64
}

/// Gaussian binomial `[3 choose l]`.
fn qbinom3(l: usize) -> Scalar {
    match l {
        0 | 3 => Scalar::one(),
        _ => qint(3),
    }
}

/// Serre element `S_ij` as a combination of words.
pub fn serre_element(i: u8, j: u8) -> Vec<(Word, Scalar)> {
    (0..=3)
        .map(|l| {
            let mut w = vec![i; 3 - l];
            w.push(j);
            w.extend(std::iter::repeat(i).take(l));
            let c = qbinom3(l);
            (w, if l % 2 == 1 { c.neg() } else { c })
        })
        .collect()
}

/// All words of a bidegree, in descending lexicographic order.
pub fn words_of(b: Bidegree) -> Vec<Word> {
    fn rec(a: u32, c: u32, cur: &mut Word, out: &mut Vec<Word>) {
        if a == 0 && c == 0 {
            out.push(cur.clone());
            return;
        }
        if c > 0 {
            cur.push(1);
            rec(a, c - 1, cur, out);
            cur.pop();
        }
        if a > 0 {
            cur.push(0);
            rec(a - 1, c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(b[0], b[1], &mut Vec::new(), &mut out);
    out
}

/// One bidegree of the quotient.
#[derive(Clone, Debug, Serialize)]
pub struct GradedPiece {
    pub degree: Bidegree,
    pub basis: Vec<Word>,
    /// Pivot words written in the basis: `w = Σ c_k basis[k]`.
    #[serde(skip)]
    pub rewrite: BTreeMap<Word, Vec<(usize, Scalar)>>,
    #[serde(skip)]
    index: BTreeMap<Word, usize>,
}

impl GradedPiece {
    fn build(b: Bidegree) -> GradedPiece {
        let words = words_of(b);
        let col: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(k, w)| (w, k)).collect();
        let mut rows = Vec::new();
        for (i, j, sd) in [(0u8, 1u8, [3u32, 1u32]), (1, 0, [1, 3])] {
            if sd[0] > b[0] || sd[1] > b[1] {
                continue;
            }
            let rest = [b[0] - sd[0], b[1] - sd[1]];
            let s = serre_element(i, j);
            // u S v with bideg(u) + bideg(v) = rest.
            for a0 in 0..=rest[0] {
                for a1 in 0..=rest[1] {
                    for u in words_of([a0, a1]) {
                        for v in words_of([rest[0] - a0, rest[1] - a1]) {
                            let mut row = vec![Scalar::zero(); words.len()];
                            for (w, c) in &s {
                                let mut full = u.clone();
                                full.extend(w);
                                full.extend(&v);
                                let k = col[&full];
                                row[k] = row[k].add(c);
                            }
                            rows.push(row);
                        }
                    }
                }
            }
        }
        let nc = words.len();
        let red = rref(rows, nc, nc);
        let basis_cols: Vec<usize> = (0..nc).filter(|c| !red.pivots.contains(c)).collect();
        let pos: BTreeMap<usize, usize> = basis_cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let mut rewrite = BTreeMap::new();
        for (r, &pc) in red.pivots.iter().enumerate() {
            let comb: Vec<(usize, Scalar)> = basis_cols
                .iter()
                .filter(|&&c| !red.rows[r][c].is_zero())
                .map(|&c| (pos[&c], red.rows[r][c].neg()))
                .collect();
            rewrite.insert(words[pc].clone(), comb);
        }
        let basis: Vec<Word> = basis_cols.iter().map(|&c| words[c].clone()).collect();
        let index = basis.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
        GradedPiece {
            degree: b,
            basis,
            rewrite,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a word of this bidegree in the basis.
    pub fn reduce(&self, w: &[u8]) -> Vec<(usize, Scalar)> {
        if let Some(&k) = self.index.get(w) {
            return vec![(k, Scalar::one())];
        }
        self.rewrite.get(w).cloned().unwrap_or_default()
    }
}

/// `U_q(n̂⁻)` to total degree `D`.
#[derive(Clone, Debug, Serialize)]
pub struct AffineQGroupTrunc {
    pub max_degree: u32,
    /// `(bidegree, dimension)` for every bidegree in the truncation.
    pub dims: Vec<(Bidegree, usize)>,
    #[serde(skip)]
    by_degree: BTreeMap<Bidegree, GradedPiece>,
}

/// Positive roots of `ŝl₂` (all multiplicity one) up to height `h`:
/// `α_1 + kδ`, `α_0 + kδ`, `(k+1)δ`.
pub fn pbw_roots(h: u32) -> Vec<Bidegree> {
    let mut out = Vec::new();
    for k in 0..=h {
        for r in [[k, k + 1], [k + 1, k], [k + 1, k + 1]] {
            if r[0] + r[1] <= h {
                out.push(r);
            }
        }
    }
    out
}

/// Kostant partition count of `b` over `pbw_roots`.
pub fn pbw_dimension(b: Bidegree) -> usize {
    let roots = pbw_roots(b[0] + b[1]);
    fn count(b: [i64; 2], roots: &[Bidegree], from: usize) -> usize {
        if b == [0, 0] {
            return 1;
        }
        let mut total = 0;
        for (k, r) in roots.iter().enumerate().skip(from) {
            let nb = [b[0] - r[0] as i64, b[1] - r[1] as i64];
            if nb[0] >= 0 && nb[1] >= 0 {
                total += count(nb, roots, k);
            }
        }
        total
    }
    count([b[0] as i64, b[1] as i64], &roots, 0)
}

pub fn bidegrees_up_to(d: u32) -> Vec<Bidegree> {
    let mut out = Vec::new();
    for h in 0..=d {
        for a in (0..=h).rev() {
            out.push([a, h - a]);
        }
    }
    out
}

/// Quotient to total degree `D`; fails if a graded dimension disagrees
/// with the PBW count.
pub fn build_affine_qgroup(d: u32) -> Result<AffineQGroupTrunc> {
    let pieces: Vec<GradedPiece> = bidegrees_up_to(d).into_par_iter().map(GradedPiece::build).collect();
    for p in &pieces {
        let expected = pbw_dimension(p.degree);
        if p.dim() != expected {
            return Err(CoreError::DimensionMismatch {
                degree: p.degree.to_vec(),
                got: p.dim(),
                expected,
            });
        }
    }
    let by_degree: BTreeMap<Bidegree, GradedPiece> = pieces.into_iter().map(|p| (p.degree, p)).collect();
    Ok(AffineQGroupTrunc {
        max_degree: d,
        dims: by_degree.iter().map(|(k, v)| (*k, v.dim())).collect(),
        by_degree,
    })
}

/// Vector in one weight space of the Verma module, in basis coordinates.
pub type Vector = BTreeMap<usize, Scalar>;

fn add_into(v: &mut Vector, k: usize, c: Scalar) {
    let e = v.remove(&k).map(|x| x.add(&c)).unwrap_or(c);
    if !e.is_zero() {
        v.insert(k, e);
    }
}

impl AffineQGroupTrunc {
    pub fn piece(&self, b: Bidegree) -> Option<&GradedPiece> {
        self.by_degree.get(&b)
    }

    pub fn dim(&self, b: Bidegree) -> usize {
        self.piece(b).map_or(0, |p| p.dim())
    }

    pub fn degrees(&self) -> impl Iterator<Item = &Bidegree> {
        self.by_degree.keys()
    }

    /// Reduce a combination of words of bidegree `b`.
    pub fn reduce_words(&self, b: Bidegree, terms: &[(Word, Scalar)]) -> Result<Vector> {
        let p = self
            .piece(b)
            .ok_or_else(|| CoreError::InvalidArgument(format!("bidegree {b:?} beyond the truncation")))?;
        let mut acc: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
        for (w, c) in terms {
            for (k, x) in p.reduce(w) {
                acc.entry(k).or_default().push(x.mul(c));
            }
        }
        Ok(acc
            .into_iter()
            .map(|(k, v)| (k, sum(&v)))
            .filter(|(_, v)| !v.is_zero())
            .collect())
    }
}

/// Verma module `M_σ` of `U_q(ŝl₂)` given by `σ(α_0), σ(α_1)`, on the
/// basis `b·v`, `b` running over the reduced words.
#[derive(Clone, Debug)]
pub struct AffineVerma<'a> {
    pub u: &'a AffineQGroupTrunc,
    pub s: [Scalar; 2],
    s_inv: [Scalar; 2],
}

impl<'a> AffineVerma<'a> {
    pub fn new(u: &'a AffineQGroupTrunc, s: [Scalar; 2]) -> Result<AffineVerma<'a>> {
        let s_inv = [s[0].inv()?, s[1].inv()?];
        Ok(AffineVerma { u, s, s_inv })
    }

    /// `K_i` on `M[σθ_{−β}]`: `σ(α_i) q^{−⟨β, α_i⟩}`.
    pub fn k_value(&self, i: usize, b: Bidegree) -> Scalar {
        self.s[i].mul(&qq(-pair_simple(b, i)))
    }

    /// `(K_i − K_i⁻¹)/(q − q⁻¹)` on `M[σθ_{−β}]`.
    pub fn bracket(&self, i: usize, b: Bidegree) -> Scalar {
        let e = pair_simple(b, i);
        let k = self.s[i].mul(&qq(-e));
        let ki = self.s_inv[i].mul(&qq(e));
        k.sub(&ki).div(&qq(1).sub(&qq(-1))).unwrap()
    }

    /// `E_i` on a word: from `E_i F_j = F_j E_i + δ_ij [K_i; 0]` and `E_i v = 0`,
    /// a sum over the positions carrying the letter `i`.
    pub fn e_on_word(&self, i: usize, w: &[u8]) -> Vec<(Word, Scalar)> {
        let mut out = Vec::new();
        for p in 0..w.len() {
            if w[p] as usize != i {
                continue;
            }
            let c = self.bracket(i, bidegree(&w[p + 1..]));
            if c.is_zero() {
                continue;
            }
            let mut nw = w[..p].to_vec();
            nw.extend(&w[p + 1..]);
            out.push((nw, c));
        }
        out
    }

    /// `E_i` on a vector of bidegree `b`.
    pub fn e(&self, i: usize, b: Bidegree, v: &Vector) -> Result<Vector> {
        if b[i] == 0 {
            return Ok(Vector::new());
        }
        let mut nb = b;
        nb[i] -= 1;
        let p = self.u.piece(b).ok_or_else(|| CoreError::InvalidArgument(format!("{b:?}")))?;
        let mut terms = Vec::new();
        for (&k, c) in v {
            for (w, x) in self.e_on_word(i, &p.basis[k]) {
                terms.push((w, x.mul(c)));
            }
        }
        self.u.reduce_words(nb, &terms)
    }

    /// `F_j` on a vector of bidegree `b`.
    pub fn f(&self, j: usize, b: Bidegree, v: &Vector) -> Result<Vector> {
        let p = self.u.piece(b).ok_or_else(|| CoreError::InvalidArgument(format!("{b:?}")))?;
        let mut nb = b;
        nb[j] += 1;
        let terms: Vec<(Word, Scalar)> = v
            .iter()
            .map(|(&k, c)| {
                let mut w = vec![j as u8];
                w.extend(&p.basis[k]);
                (w, c.clone())
            })
            .collect();
        self.u.reduce_words(nb, &terms)
    }

    /// Matrix of `E_i: M_β → M_{β−α_i}`, by columns.
    pub fn e_matrix(&self, i: usize, b: Bidegree) -> Result<Vec<Vector>> {
        (0..self.u.dim(b))
            .map(|k| self.e(i, b, &Vector::from([(k, Scalar::one())])))
            .collect()
    }

    /// Relations of `U_q(ŝl₂)` on every basis vector of degree `< D`:
    /// `[E_i, F_j] = δ_ij [K_i; 0]` and the Serre relations for `E`.
    pub fn check_relations(&self) -> Result<Vec<super::evaluation::Relation>> {
        use super::evaluation::Relation;
        let top = self.u.max_degree;
        let mut out = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                let mut ok = true;
                for b in bidegrees_up_to(top.saturating_sub(1)) {
                    for k in 0..self.u.dim(b) {
                        let v = Vector::from([(k, Scalar::one())]);
                        let mut jb = b;
                        jb[j] += 1;
                        let lhs = self.e(i, jb, &self.f(j, b, &v)?)?;
                        let mut rhs = if b[i] > 0 {
                            let mut ib = b;
                            ib[i] -= 1;
                            self.f(j, ib, &self.e(i, b, &v)?)?
                        } else {
                            Vector::new()
                        };
                        if i == j {
                            add_into(&mut rhs, k, self.bracket(i, b));
                        }
                        ok &= lhs == rhs;
                    }
                }
                let name = if i == j {
                    format!("[E_{i}, F_{i}] = (K_{i} − K_{i}⁻¹)/(q − q⁻¹)")
                } else {
                    format!("[E_{i}, F_{j}] = 0")
                };
                out.push(Relation { name, ok });
            }
        }
        for (i, j) in [(0usize, 1usize), (1, 0)] {
            let mut ok = true;
            for b in bidegrees_up_to(top) {
                for k in 0..self.u.dim(b) {
                    ok &= self.serre_e(i, j, b, k)?.is_empty();
                }
            }
            out.push(Relation {
                name: format!("Serre relation in E_{i}, E_{j}"),
                ok,
            });
        }
        Ok(out)
    }

    fn serre_e(&self, i: usize, j: usize, b: Bidegree, k: usize) -> Result<Vector> {
        let mut total = Vector::new();
        for (w, c) in serre_element(i as u8, j as u8) {
            // Apply the rightmost letter first.
            let mut v = Vector::from([(k, Scalar::one())]);
            let mut cur = b;
            let mut dead = false;
            for &l in w.iter().rev() {
                let l = l as usize;
                if cur[l] == 0 {
                    dead = true;
                    break;
                }
                v = self.e(l, cur, &v)?;
                cur[l] -= 1;
            }
            if dead {
                continue;
            }
            for (kk, x) in v {
                add_into(&mut total, kk, x.mul(&c));
            }
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mac_exact::var;

    #[test]
    fn small_degrees() {
        let u = build_affine_qgroup(5).unwrap();
        assert_eq!(u.dim([1, 0]) + u.dim([0, 1]), 2);
        assert_eq!(u.dim([1, 1]), 2);
        assert_eq!(u.dim([2, 1]), 3);
        assert_eq!(u.dim([3, 1]), 3);
        // Free algebra count 4 minus one Serre relation.
        assert_eq!(words_of([3, 1]).len() - 1, u.dim([3, 1]));
        for b in bidegrees_up_to(5) {
            assert_eq!(u.dim(b), pbw_dimension(b));
        }
    }

    #[test]
    fn pbw_counts() {
        assert_eq!(pbw_dimension([0, 0]), 1);
        assert_eq!(pbw_dimension([2, 2]), 6);
        assert_eq!(pbw_dimension([4, 0]), 1);
    }

    #[test]
    fn verma_relations() {
        let u = build_affine_qgroup(4).unwrap();
        let m = AffineVerma::new(&u, [Scalar::var(var::Z2), Scalar::var(var::Z1)]).unwrap();
        for r in m.check_relations().unwrap() {
            assert!(r.ok, "{}", r.name);
        }
    }
}
