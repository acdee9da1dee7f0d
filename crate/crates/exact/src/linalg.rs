//! Fraction-free-ish Gaussian elimination over `Scalar`.
//!
//! Pivots are chosen by smallest expression size to limit swell.

use crate::error::ExactError;
use crate::scalar::Scalar;

/// Reduced row echelon form of an augmented system.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

/// Row-reduce `m` (all rows of length `ncols`).  Only the first `nvars`
/// columns are eligible as pivots, so an augmented column is kept intact.
pub fn rref(mut m: Vec<Vec<Scalar>>, ncols: usize, nvars: usize) -> Rref {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nvars {
        if r == m.len() {
            break;
        }
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(r) {
            if !row[c].is_zero() {
                let sz = row[c].size();
                if best.map_or(true, |(_, s)| sz < s) {
                    best = Some((i, sz));
                }
            }
        }
        let Some((p, _)) = best else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        let prow: Vec<Scalar> = m[r].iter().map(|x| x.mul(&inv)).collect();
        m[r] = prow;
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..ncols {
                if !m[r][j].is_zero() {
                    let v = m[i][j].sub(&f.mul(&m[r][j]));
                    m[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref {
        rows: m,
        pivots,
        ncols,
    }
}

pub fn rank(m: &[Vec<Scalar>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let n = m[0].len();
    rref(m.to_vec(), n, n).pivots.len()
}

/// Solution set `particular + span(kernel)` of `A x = b`.
#[derive(Clone, Debug)]
pub struct Solution {
    pub particular: Vec<Scalar>,
    pub kernel: Vec<Vec<Scalar>>,
}

/// General solution of `A x = b`, `Inconsistent` if none exists.
pub fn solve_general(a: &[Vec<Scalar>], b: &[Scalar], nvars: usize) -> Result<Solution, ExactError> {
    assert_eq!(a.len(), b.len());
    let aug: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            assert_eq!(row.len(), nvars);
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let red = rref(aug, nvars + 1, nvars);
    for row in red.rows.iter().skip(red.pivots.len()) {
        if !row[nvars].is_zero() {
            return Err(ExactError::Inconsistent);
        }
    }
    let mut particular = vec![Scalar::zero(); nvars];
    for (i, &c) in red.pivots.iter().enumerate() {
        particular[c] = red.rows[i][nvars].clone();
    }
    let mut kernel = Vec::new();
    for f in (0..nvars).filter(|c| !red.pivots.contains(c)) {
        let mut v = vec![Scalar::zero(); nvars];
        v[f] = Scalar::one();
        for (i, &c) in red.pivots.iter().enumerate() {
            v[c] = red.rows[i][f].neg();
        }
        kernel.push(v);
    }
    Ok(Solution { particular, kernel })
}

/// Unique solution of `A x = b`; `Singular(col)` names the first free column.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar], nvars: usize) -> Result<Vec<Scalar>, ExactError> {
    let s = solve_general(a, b, nvars)?;
    if let Some(k) = s.kernel.first() {
        let col = k.iter().rposition(|x| x.is_one()).unwrap_or(0);
        return Err(ExactError::Singular(col));
    }
    Ok(s.particular)
}

/// Kernel basis of `A`.
pub fn kernel(a: &[Vec<Scalar>], nvars: usize) -> Vec<Vec<Scalar>> {
    let b = vec![Scalar::zero(); a.len()];
    solve_general(a, &b, nvars).expect("homogeneous").kernel
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_scalar as s;

    #[test]
    fn symbolic_two_by_two() {
        let a = vec![vec![s("qh").unwrap(), s("1").unwrap()], vec![s("1").unwrap(), s("th").unwrap()]];
        let x = vec![s("th+1").unwrap(), s("1/qh").unwrap()];
        let b: Vec<Scalar> = a
            .iter()
            .map(|r| r[0].mul(&x[0]).add(&r[1].mul(&x[1])))
            .collect();
        assert_eq!(solve(&a, &b, 2).unwrap(), x);
    }

    #[test]
    fn singular_and_inconsistent() {
        let one = Scalar::one();
        let a = vec![vec![one.clone(), one.clone()], vec![one.clone(), one.clone()]];
        assert!(matches!(solve(&a, &[one.clone(), one.clone()], 2), Err(ExactError::Singular(_))));
        assert_eq!(
            solve(&a, &[one.clone(), Scalar::zero()], 2).unwrap_err(),
            ExactError::Inconsistent
        );
        let k = kernel(&a, 2);
        assert_eq!(k.len(), 1);
        assert!(k[0][0].add(&k[0][1]).is_zero());
    }
}
