//! Dense matrices over `Q[x]` with Hermite and Smith normal forms.

mod hnf;
mod snf;

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qpoly::{Poly, Rational};

pub use hnf::{hnf, HermiteForm};
pub use snf::{snf, SmithForm};

/// A row-major `rows × cols` matrix of polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(PolyMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![Poly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = PolyMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Poly::one());
        }
        m
    }

    /// Square or rectangular matrix with `diag` on the main diagonal.
    pub fn diagonal(rows: usize, cols: usize, diag: &[Poly]) -> Self {
        let mut m = PolyMatrix::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate().take(rows.min(cols)) {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                expected: c,
                found: bad.len(),
            });
        }
        PolyMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Poly>]) -> Result<Self> {
        let mut m = PolyMatrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for (i, e) in col.iter().enumerate() {
                m.set(i, j, e.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Poly) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Poly>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        PolyMatrix::from_columns(self.rows, &cols)
    }

    /// Keeps only the listed columns, in order.
    pub fn select_columns(&self, idx: &[usize]) -> PolyMatrix {
        let cols: Vec<Vec<Poly>> = idx.iter().map(|&j| self.column(j)).collect();
        PolyMatrix::from_columns(self.rows, &cols).expect("columns have matching length")
    }

    pub fn mul_vec(&self, v: &[Poly]) -> Result<Vec<Poly>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Poly::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn try_mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = PolyMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + &(a * b);
                        out.set(i, j, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Determinant by fraction-free (Bareiss) elimination; square only.
    pub fn determinant(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::one());
        }
        let mut a = self.clone();
        let mut sign = Rational::from_integer(1.into());
        let mut prev = Poly::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(Poly::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j);
                    let v = num.div_exact(&prev).expect("Bareiss division is exact");
                    a.set(i, j, v);
                }
                a.set(i, k, Poly::zero());
            }
            prev = a.get(k, k).clone();
        }
        Ok(a.get(n - 1, n - 1).scale(&sign))
    }

    pub(crate) fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub(crate) fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// `row_i += q * row_j`.
    pub(crate) fn add_row_multiple(&mut self, i: usize, j: usize, q: &Poly) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let src = self.get(j, c);
            if !src.is_zero() {
                let v = self.get(i, c) + &(q * src);
                self.set(i, c, v);
            }
        }
    }

    /// `col_i += q * col_j`.
    pub(crate) fn add_col_multiple(&mut self, i: usize, j: usize, q: &Poly) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let src = self.get(r, j);
            if !src.is_zero() {
                let v = self.get(r, i) + &(q * src);
                self.set(r, i, v);
            }
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: &Rational) {
        for k in 0..self.cols {
            let v = self.get(i, k).scale(c);
            self.set(i, k, v);
        }
    }

    pub(crate) fn scale_col(&mut self, j: usize, c: &Rational) {
        for k in 0..self.rows {
            let v = self.get(k, j).scale(c);
            self.set(k, j, v);
        }
    }

    /// Replaces rows `i, j` by `a*row_i + b*row_j` and `c*row_i + d*row_j`.
    pub(crate) fn combine_rows(&mut self, i: usize, j: usize, [a, b, c, d]: [&Poly; 4]) {
        for k in 0..self.cols {
            let x = self.get(i, k).clone();
            let y = self.get(j, k).clone();
            if x.is_zero() && y.is_zero() {
                continue;
            }
            self.set(i, k, a * &x + b * &y);
            self.set(j, k, c * &x + d * &y);
        }
    }

    /// Replaces columns `i, j` by `a*col_i + b*col_j` and `c*col_i + d*col_j`.
    pub(crate) fn combine_cols(&mut self, i: usize, j: usize, [a, b, c, d]: [&Poly; 4]) {
        for r in 0..self.rows {
            let x = self.get(r, i).clone();
            let y = self.get(r, j).clone();
            if x.is_zero() && y.is_zero() {
                continue;
            }
            self.set(r, i, a * &x + b * &y);
            self.set(r, j, c * &x + d * &y);
        }
    }
}

impl Mul<&PolyMatrix> for &PolyMatrix {
    type Output = PolyMatrix;
    fn mul(self, rhs: &PolyMatrix) -> PolyMatrix {
        self.try_mul(rhs).expect("matrix dimensions agree")
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Poly>>,
}

impl Serialize for PolyMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows).map(|i| self.row(i).to_vec()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = MatrixRepr::deserialize(d)?;
        if r.entries.len() != r.rows || r.entries.iter().any(|row| row.len() != r.cols) {
            return Err(serde::de::Error::custom(format!(
                "matrix entries do not match declared shape {}x{}",
                r.rows, r.cols
            )));
        }
        PolyMatrix::new(r.rows, r.cols, r.entries.into_iter().flatten().collect())
            .map_err(serde::de::Error::custom)
    }
}

/// `Some(c)` with `M c = v` when `v` lies in the column lattice of `M`.
pub fn member(m: &PolyMatrix, v: &[Poly]) -> Result<Option<Vec<Poly>>> {
    if v.len() != m.rows() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: v.len(),
        });
    }
    hnf(m).solve(v)
}

/// A basis of `{c : M c = 0}` as columns, in Hermite form.
pub fn kernel(m: &PolyMatrix) -> PolyMatrix {
    hnf(&hnf(m).kernel()).basis()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::qpoly::parse_poly;

    pub(crate) fn mat(rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| parse_poly(s).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    fn polys(v: &[&str]) -> Vec<Poly> {
        v.iter().map(|s| parse_poly(s).unwrap()).collect()
    }

    #[test]
    fn json_shape() {
        let m = mat(&[&["x", "1"], &["0", "x"]]);
        let js = serde_json::to_string(&m).unwrap();
        assert_eq!(js, r#"{"rows":2,"cols":2,"entries":[["x","1"],["0","x"]]}"#);
        assert_eq!(serde_json::from_str::<PolyMatrix>(&js).unwrap(), m);
        assert!(
            serde_json::from_str::<PolyMatrix>(r#"{"rows":2,"cols":2,"entries":[["x"]]}"#).is_err()
        );
    }

    #[test]
    fn member_examples() {
        let m = mat(&[&["x"]]);
        assert_eq!(member(&m, &polys(&["x^3"])).unwrap(), Some(polys(&["x^2"])));
        assert_eq!(member(&m, &polys(&["1"])).unwrap(), None);
        let m = mat(&[&["x", "1"], &["0", "x"]]);
        let c = member(&m, &polys(&["0", "x^2"])).unwrap().unwrap();
        assert_eq!(m.mul_vec(&c).unwrap(), polys(&["0", "x^2"]));
        assert!(matches!(
            member(&m, &polys(&["1"])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn kernel_examples() {
        let k = kernel(&mat(&[&["x", "-1"]]));
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0), polys(&["1", "x"]));
        assert_eq!(kernel(&PolyMatrix::identity(3)).cols(), 0);
        let m = mat(&[&["x^2", "x"]]);
        let k = kernel(&m);
        assert_eq!(k.cols(), 1);
        // generator is (1, -x) up to a unit
        let col = k.column(0);
        let unit = col[0].leading_coeff();
        assert_eq!(col[1], parse_poly("-x").unwrap().scale(&unit));
        assert!((&m * &k).is_zero());
    }

    #[test]
    fn bareiss_determinant() {
        let m = mat(&[&["x", "1", "0"], &["1", "x", "1"], &["0", "1", "x"]]);
        assert_eq!(m.determinant().unwrap(), parse_poly("x^3 - 2*x").unwrap());
        let z = mat(&[&["x", "x"], &["1", "1"]]);
        assert!(z.determinant().unwrap().is_zero());
    }
}
