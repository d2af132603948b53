//! Column Hermite normal form over `Q[x]`.
//!
//! `H = M·U` with `U` unimodular. Pivot columns come first, ordered by
//! increasing pivot row; each pivot is the lowest nonzero entry of its
//! column, is monic, and every other entry in a pivot row is reduced modulo
//! that pivot. Columns after the pivots are zero. The result depends only on
//! the column lattice of `M`.

use num_traits::One;

use crate::error::{Error, Result};
use crate::qmatrix::PolyMatrix;
use crate::qpoly::{Poly, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm {
    pub h: PolyMatrix,
    pub u: PolyMatrix,
    /// `(row, column)` of each pivot, columns `0..rank`.
    pub pivots: Vec<(usize, usize)>,
    /// Determinant of `U`, a nonzero rational.
    pub det_u: Rational,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The pivot columns of `H`: a basis of the column lattice.
    pub fn basis(&self) -> PolyMatrix {
        let idx: Vec<usize> = (0..self.rank()).collect();
        self.h.select_columns(&idx)
    }

    fn pivot_at_row(&self, r: usize) -> Option<usize> {
        self.pivots.iter().find(|(pr, _)| *pr == r).map(|&(_, c)| c)
    }

    /// Coefficients `c` over the columns of the source matrix with `M c = v`.
    pub fn solve(&self, v: &[Poly]) -> Result<Option<Vec<Poly>>> {
        let m = self.h.rows();
        if v.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: v.len(),
            });
        }
        let mut w = v.to_vec();
        let mut coeffs = vec![Poly::zero(); self.h.cols()];
        for r in (0..m).rev() {
            if w[r].is_zero() {
                continue;
            }
            let Some(j) = self.pivot_at_row(r) else {
                return Ok(None);
            };
            let (q, rem) = w[r].divmod(self.h.get(r, j))?;
            if !rem.is_zero() {
                return Ok(None);
            }
            for (i, wi) in w.iter_mut().enumerate().take(r + 1) {
                let hij = self.h.get(i, j);
                if !hij.is_zero() {
                    *wi -= &(&q * hij);
                }
            }
            coeffs[j] = q;
        }
        Ok(Some(self.u.mul_vec(&coeffs)?))
    }

    /// Canonical representative of `v` modulo the column lattice.
    pub fn reduce(&self, v: &[Poly]) -> Result<Vec<Poly>> {
        let m = self.h.rows();
        if v.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: v.len(),
            });
        }
        let mut w = v.to_vec();
        for r in (0..m).rev() {
            let Some(j) = self.pivot_at_row(r) else {
                continue;
            };
            let (q, _) = w[r].divmod(self.h.get(r, j))?;
            if q.is_zero() {
                continue;
            }
            for (i, wi) in w.iter_mut().enumerate().take(r + 1) {
                let hij = self.h.get(i, j);
                if !hij.is_zero() {
                    *wi -= &(&q * hij);
                }
            }
        }
        Ok(w)
    }

    pub fn kernel(&self) -> PolyMatrix {
        let idx: Vec<usize> = (self.rank()..self.h.cols()).collect();
        self.u.select_columns(&idx)
    }
}

pub fn hnf(m: &PolyMatrix) -> HermiteForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = PolyMatrix::identity(cols);
    let mut det = Rational::one();
    // Pivots found bottom-up: (row, column) with the column swapped to `next`.
    let mut found: Vec<usize> = Vec::new();
    let mut next = 0;

    for r in (0..rows).rev() {
        if next == cols {
            break;
        }
        let Some(p) = (next..cols)
            .filter(|&j| !a.get(r, j).is_zero())
            .min_by_key(|&j| a.get(r, j).degree())
        else {
            continue;
        };
        for j in next..cols {
            if j == p || a.get(r, j).is_zero() {
                continue;
            }
            let x = a.get(r, p).clone();
            let y = a.get(r, j).clone();
            let (g, s, t) = Poly::gcd_ext(&x, &y).expect("pivot nonzero");
            let xg = x.div_exact(&g).expect("gcd divides");
            let yg = y.div_exact(&g).expect("gcd divides");
            // [col_p, col_j] <- [s col_p + t col_j, -y/g col_p + x/g col_j]; determinant 1.
            let neg_yg = -&yg;
            a.combine_cols(p, j, [&s, &t, &neg_yg, &xg]);
            u.combine_cols(p, j, [&s, &t, &neg_yg, &xg]);
        }
        let lc = a.get(r, p).leading_coeff();
        if !lc.is_one() {
            let inv = lc.recip();
            a.scale_col(p, &inv);
            u.scale_col(p, &inv);
            det *= inv;
        }
        if p != next {
            a.swap_cols(p, next);
            u.swap_cols(p, next);
            det = -det;
        }
        found.push(r);
        next += 1;
    }

    // Reduce each pivot row, lowest pivot first, against the columns whose
    // pivots sit lower down.
    for (k, &r) in found.iter().enumerate() {
        let pivot = a.get(r, k).clone();
        for j in 0..k {
            let (q, _) = a.get(r, j).divmod(&pivot).expect("pivot nonzero");
            if !q.is_zero() {
                let neg = -&q;
                a.add_col_multiple(j, k, &neg);
                u.add_col_multiple(j, k, &neg);
            }
        }
    }

    // Reorder pivot columns by increasing pivot row.
    let rank = found.len();
    let mut order: Vec<usize> = (0..rank).rev().collect();
    order.extend(rank..cols);
    let (a, u, det) = permute_columns(a, u, det, &order);
    let pivots = found
        .iter()
        .rev()
        .enumerate()
        .map(|(c, &r)| (r, c))
        .collect();
    HermiteForm {
        h: a,
        u,
        pivots,
        det_u: det,
    }
}

fn permute_columns(
    a: PolyMatrix,
    u: PolyMatrix,
    mut det: Rational,
    order: &[usize],
) -> (PolyMatrix, PolyMatrix, Rational) {
    let a2 = a.select_columns(order);
    let u2 = u.select_columns(order);
    if permutation_is_odd(order) {
        det = -det;
    }
    (a2, u2, det)
}

fn permutation_is_odd(order: &[usize]) -> bool {
    let mut seen = vec![false; order.len()];
    let mut transpositions = 0;
    for start in 0..order.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = order[i];
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmatrix::tests::mat;
    use crate::qpoly::parse_poly;

    fn check_shape(m: &PolyMatrix, f: &HermiteForm) {
        assert_eq!(&(m * &f.u), &f.h);
        let det = f.u.determinant().unwrap();
        assert!(det.is_unit());
        assert_eq!(det.leading_coeff(), f.det_u);
        for (k, &(r, c)) in f.pivots.iter().enumerate() {
            assert_eq!(c, k);
            assert!(f.h.get(r, c).is_monic());
            for i in r + 1..f.h.rows() {
                assert!(f.h.get(i, c).is_zero());
            }
            for j in 0..f.h.cols() {
                if j != c {
                    let e = f.h.get(r, j);
                    assert!(e.is_zero() || e.degree() < f.h.get(r, c).degree());
                }
            }
        }
        for j in f.rank()..f.h.cols() {
            assert!(f.h.column(j).iter().all(Poly::is_zero));
        }
    }

    #[test]
    fn identity_is_fixed() {
        let m = PolyMatrix::identity(2);
        let f = hnf(&m);
        assert_eq!(f.h, m);
        check_shape(&m, &f);
    }

    #[test]
    fn single_column() {
        let m = mat(&[&["x^2"], &["0"]]);
        let f = hnf(&m);
        assert_eq!(f.pivots, vec![(0, 0)]);
        assert_eq!(f.h.get(0, 0), &parse_poly("x^2").unwrap());
        check_shape(&m, &f);
    }

    #[test]
    fn gcd_collapses_columns() {
        let m = mat(&[&["x", "1"], &["0", "0"]]);
        let f = hnf(&m);
        assert_eq!(f.rank(), 1);
        assert_eq!(f.pivots, vec![(0, 0)]);
        assert!(f.h.get(0, 0).is_one());
        check_shape(&m, &f);
    }

    #[test]
    fn lattice_canonicity() {
        let m = mat(&[
            &["x", "1", "x^2"],
            &["x - 1", "0", "2"],
            &["0", "x", "x + 1"],
        ]);
        let w = mat(&[&["1", "x", "0"], &["0", "1", "0"], &["3", "x^2", "1"]]);
        let f1 = hnf(&m);
        let f2 = hnf(&(&m * &w));
        check_shape(&m, &f1);
        assert_eq!(f1.h, f2.h);
    }

    #[test]
    fn reduce_is_canonical() {
        let m = mat(&[&["x^2", "x"], &["0", "x - 1"]]);
        let f = hnf(&m);
        let v = vec![parse_poly("x^3 + 2").unwrap(), parse_poly("x^2").unwrap()];
        let shift = m
            .mul_vec(&[parse_poly("x + 5").unwrap(), parse_poly("-3*x").unwrap()])
            .unwrap();
        let v2: Vec<Poly> = v.iter().zip(&shift).map(|(a, b)| a + b).collect();
        assert_eq!(f.reduce(&v).unwrap(), f.reduce(&v2).unwrap());
    }

    #[test]
    fn odd_permutations() {
        assert!(!permutation_is_odd(&[0, 1, 2]));
        assert!(permutation_is_odd(&[1, 0, 2]));
        assert!(!permutation_is_odd(&[1, 2, 0]));
    }
}
