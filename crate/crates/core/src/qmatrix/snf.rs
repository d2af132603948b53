//! Smith normal form over `Q[x]` with unimodular transforms.
//!
//! Pivoting takes the nonzero entry of least degree in the active block;
//! off-pivot entries are cleared by determinant-one 2x2 gcd steps, and a
//! pivot that fails to divide the rest of the block absorbs the offending row.

use num_traits::One;

use crate::qmatrix::PolyMatrix;
use crate::qpoly::{Poly, Rational};

/// `U·M·V = D` with `D` diagonal, nonzero diagonal entries monic and forming
/// a divisibility chain, zeros after them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: PolyMatrix,
    pub d: PolyMatrix,
    pub v: PolyMatrix,
    /// Inverse of `U`, maintained alongside it.
    pub u_inv: PolyMatrix,
    pub det_u: Rational,
    pub det_v: Rational,
}

impl SmithForm {
    /// All nonzero diagonal entries, units included.
    pub fn diagonal(&self) -> Vec<Poly> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .take_while(|p| !p.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }

    /// Nonunit nonzero diagonal entries: the invariant factors of the
    /// cokernel's torsion.
    pub fn invariant_factors(&self) -> Vec<Poly> {
        self.diagonal()
            .into_iter()
            .filter(|p| !p.is_unit())
            .collect()
    }
}

struct Work {
    a: PolyMatrix,
    u: PolyMatrix,
    u_inv: PolyMatrix,
    v: PolyMatrix,
    det_u: Rational,
    det_v: Rational,
}

impl Work {
    /// `row_i += q·row_j` on `A` and `U`; `U⁻¹` gets `col_j -= q·col_i`.
    fn row_add(&mut self, i: usize, j: usize, q: &Poly) {
        self.a.add_row_multiple(i, j, q);
        self.u.add_row_multiple(i, j, q);
        self.u_inv.add_col_multiple(j, i, &-q);
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
        self.det_u = -self.det_u.clone();
    }

    fn row_scale(&mut self, i: usize, c: &Rational) {
        self.a.scale_row(i, c);
        self.u.scale_row(i, c);
        self.u_inv.scale_col(i, &c.recip());
        self.det_u *= c;
    }

    /// Clears `A[i][t]` against the pivot `A[t][t]`. When the pivot divides
    /// the entry this is one row subtraction; otherwise a determinant-one
    /// 2x2 combination moves the gcd into the pivot.
    fn eliminate_row(&mut self, t: usize, i: usize) {
        let a = self.a.get(t, t).clone();
        let b = self.a.get(i, t).clone();
        if let Some(q) = b.div_exact(&a) {
            self.row_add(i, t, &-q);
            return;
        }
        let (g, s, tt) = Poly::gcd_ext(&a, &b).expect("pivot nonzero");
        let ag = a.div_exact(&g).expect("gcd divides");
        let bg = b.div_exact(&g).expect("gcd divides");
        let neg_bg = -&bg;
        // E = [[s, t], [-b/g, a/g]],  E^-1 = [[a/g, -t], [b/g, s]].
        self.a.combine_rows(t, i, [&s, &tt, &neg_bg, &ag]);
        self.u.combine_rows(t, i, [&s, &tt, &neg_bg, &ag]);
        let neg_t = -&tt;
        self.u_inv.combine_cols(t, i, [&ag, &bg, &neg_t, &s]);
    }

    fn eliminate_col(&mut self, t: usize, j: usize) {
        let a = self.a.get(t, t).clone();
        let b = self.a.get(t, j).clone();
        if let Some(q) = b.div_exact(&a) {
            self.a.add_col_multiple(j, t, &-&q);
            self.v.add_col_multiple(j, t, &-q);
            return;
        }
        let (g, s, tt) = Poly::gcd_ext(&a, &b).expect("pivot nonzero");
        let ag = a.div_exact(&g).expect("gcd divides");
        let bg = b.div_exact(&g).expect("gcd divides");
        let neg_bg = -&bg;
        self.a.combine_cols(t, j, [&s, &tt, &neg_bg, &ag]);
        self.v.combine_cols(t, j, [&s, &tt, &neg_bg, &ag]);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.det_v = -self.det_v.clone();
    }
}

pub fn snf(m: &PolyMatrix) -> SmithForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut w = Work {
        a: m.clone(),
        u: PolyMatrix::identity(rows),
        u_inv: PolyMatrix::identity(rows),
        v: PolyMatrix::identity(cols),
        det_u: Rational::one(),
        det_v: Rational::one(),
    };

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_degree_entry(&w.a, t) else {
            break;
        };
        w.row_swap(t, pi);
        w.col_swap(t, pj);

        loop {
            for i in t + 1..rows {
                if !w.a.get(i, t).is_zero() {
                    w.eliminate_row(t, i);
                }
            }
            for j in t + 1..cols {
                if !w.a.get(t, j).is_zero() {
                    w.eliminate_col(t, j);
                }
            }
            if (t + 1..rows).any(|i| !w.a.get(i, t).is_zero()) {
                continue;
            }
            let pivot = w.a.get(t, t).clone();
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !pivot.divides(w.a.get(i, j))));
            match offender {
                Some(i) => w.row_add(t, i, &Poly::one()),
                None => break,
            }
        }

        let lc = w.a.get(t, t).leading_coeff();
        if !lc.is_one() {
            w.row_scale(t, &lc.recip());
        }
    }

    SmithForm {
        u: w.u,
        d: w.a,
        v: w.v,
        u_inv: w.u_inv,
        det_u: w.det_u,
        det_v: w.det_v,
    }
}

fn min_degree_entry(a: &PolyMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            if let Some(d) = a.get(i, j).degree() {
                if best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}
