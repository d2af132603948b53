use proptest::prelude::*;
use qx_core::qmatrix::{hnf, kernel, member, snf, PolyMatrix};
use qx_core::qpoly::{rational, Poly, Rational};

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop_oneof![
        1 => Just(Poly::zero()),
        3 => prop::collection::vec(-3i64..=3, 1..=max_deg + 1).prop_map(|c| Poly::from_ints(&c)),
    ]
}

fn matrix(max_rows: usize, max_cols: usize, max_deg: usize) -> impl Strategy<Value = PolyMatrix> {
    (1..=max_rows, 0..=max_cols).prop_flat_map(move |(r, c)| {
        prop::collection::vec(poly(max_deg), r * c)
            .prop_map(move |e| PolyMatrix::new(r, c, e).unwrap())
    })
}

fn square(n: usize, max_deg: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(poly(max_deg), n * n).prop_map(move |e| PolyMatrix::new(n, n, e).unwrap())
}

/// Cofactor matrix transposed, from determinants of minors.
fn adjugate(m: &PolyMatrix) -> PolyMatrix {
    let n = m.rows();
    let mut out = PolyMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<Vec<Poly>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| m.get(r, c).clone())
                        .collect()
                })
                .collect();
            let minor = if n == 1 {
                Poly::one()
            } else {
                PolyMatrix::from_rows(rows).unwrap().determinant().unwrap()
            };
            let signed = if (i + j) % 2 == 0 { minor } else { -minor };
            out.set(j, i, signed);
        }
    }
    out
}

/// `I + q·E_ij` (row `i` gains `q` times row `j` when applied on the left).
fn elementary(n: usize, i: usize, j: usize, q: &Poly) -> PolyMatrix {
    let mut e = PolyMatrix::identity(n);
    if i != j {
        e.set(i, j, q.clone());
    }
    e
}

fn permutation(perm: &[usize]) -> PolyMatrix {
    let n = perm.len();
    let mut p = PolyMatrix::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        p.set(i, j, Poly::one());
    }
    p
}

fn shuffled(n: usize, keys: &[u8]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by_key(|&i| keys[i % keys.len()].wrapping_mul(i as u8 + 1));
    idx
}

/// Solves `M c = v` over Q with every `c_j` of degree at most `bound`, by
/// Gaussian elimination on the coefficient equations.
fn bounded_solve(m: &PolyMatrix, v: &[Poly], bound: usize) -> Option<Vec<Poly>> {
    let (r, k) = (m.rows(), m.cols());
    let mdeg = (0..r)
        .flat_map(|i| m.row(i).iter().filter_map(Poly::degree))
        .max()
        .unwrap_or(0);
    let vdeg = v.iter().filter_map(Poly::degree).max().unwrap_or(0);
    let width = (bound + mdeg).max(vdeg) + 1;
    let unknowns = k * (bound + 1);
    let zero = rational(0, 1);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (i, vi) in v.iter().enumerate().take(r) {
        for d in 0..width {
            let mut eq = vec![zero.clone(); unknowns + 1];
            for j in 0..k {
                for e in 0..=bound.min(d) {
                    eq[j * (bound + 1) + e] = m.get(i, j).coeff(d - e);
                }
            }
            eq[unknowns] = vi.coeff(d);
            rows.push(eq);
        }
    }
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..unknowns {
        let Some(p) = (row..rows.len()).find(|&i| rows[i][col] != zero) else {
            continue;
        };
        rows.swap(row, p);
        let inv = rational(1, 1) / &rows[row][col];
        for x in rows[row].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = rows[row].clone();
        for (i, eq) in rows.iter_mut().enumerate() {
            if i != row && eq[col] != zero {
                let f = eq[col].clone();
                for (x, y) in eq[col..].iter_mut().zip(&pivot[col..]) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if rows[row..].iter().any(|eq| eq[unknowns] != zero) {
        return None;
    }
    let mut sol = vec![zero.clone(); unknowns];
    for (i, &col) in pivots.iter().enumerate() {
        sol[col] = rows[i][unknowns].clone();
    }
    Some(
        sol.chunks(bound + 1)
            .map(|c| Poly::from_coeffs(c.to_vec()))
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn member_agrees_with_bounded_linear_solver(
        m in matrix(3, 3, 2),
        c in prop::collection::vec(poly(2), 3),
        w in prop::collection::vec(poly(3), 3),
        inside in any::<bool>(),
    ) {
        let v: Vec<Poly> = if inside {
            m.mul_vec(&c[..m.cols()]).unwrap()
        } else {
            w[..m.rows()].to_vec()
        };
        let mdeg = (0..m.rows())
            .flat_map(|i| m.row(i).iter().filter_map(Poly::degree))
            .max()
            .unwrap_or(0);
        let vdeg = v.iter().filter_map(Poly::degree).max().unwrap_or(0);
        let bound = m.rows() * mdeg + vdeg;
        let found = member(&m, &v).unwrap();
        let oracle = bounded_solve(&m, &v, bound);
        prop_assert_eq!(found.is_some(), oracle.is_some());
        if let Some(x) = oracle {
            prop_assert_eq!(m.mul_vec(&x).unwrap(), v.clone());
        }
        if let Some(x) = found {
            prop_assert_eq!(m.mul_vec(&x).unwrap(), v);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_is_valid(m in matrix(4, 4, 2)) {
        let s = snf(&m);
        prop_assert_eq!(&(&s.u * &m) * &s.v, s.d.clone());
        prop_assert_eq!(&s.u * &s.u_inv, PolyMatrix::identity(m.rows()));
        let d = s.diagonal();
        for w in d.windows(2) {
            prop_assert!(w[0].divides(&w[1]));
        }
        prop_assert!(d.iter().all(Poly::is_monic));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d.get(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn hermite_form_depends_only_on_lattice(m in matrix(3, 4, 2), ops in prop::collection::vec((0usize..4, 0usize..4, poly(1)), 0..6)) {
        let f = hnf(&m);
        prop_assert_eq!(&m * &f.u, f.h.clone());
        let mut w = m.clone();
        for (i, j, q) in ops {
            let (i, j) = (i % m.cols().max(1), j % m.cols().max(1));
            if m.cols() > 1 && i != j {
                let ci = w.column(i);
                let cj = w.column(j);
                let new: Vec<Poly> = ci.iter().zip(&cj).map(|(a, b)| a + &(&q * b)).collect();
                for (r, v) in new.into_iter().enumerate() {
                    w.set(r, i, v);
                }
            }
        }
        prop_assert_eq!(hnf(&w).h, f.h);
    }

    #[test]
    fn member_finds_combinations(m in matrix(3, 3, 2), c in prop::collection::vec(poly(2), 3)) {
        let v = m.mul_vec(&c[..m.cols()]).unwrap();
        let found = member(&m, &v).unwrap();
        prop_assert!(found.is_some());
        prop_assert_eq!(m.mul_vec(&found.unwrap()).unwrap(), v);
    }

    #[test]
    fn member_agrees_with_cramer(m in square(2, 2), v in prop::collection::vec(poly(3), 2)) {
        let det = m.determinant().unwrap();
        prop_assume!(!det.is_zero());
        let adj = adjugate(&m);
        let num = adj.mul_vec(&v).unwrap();
        let expect = num.iter().all(|p| det.divides(p));
        prop_assert_eq!(member(&m, &v).unwrap().is_some(), expect);
    }

    #[test]
    fn smith_invariants_survive_shuffles_and_unimodular_rows(
        m in matrix(4, 4, 2),
        keys in prop::collection::vec(any::<u8>(), 1..6),
        ops in prop::collection::vec((0usize..4, 0usize..4, poly(1)), 0..5),
    ) {
        let (r, c) = (m.rows(), m.cols());
        let mut left = permutation(&shuffled(r, &keys));
        for (i, j, q) in &ops {
            left = &elementary(r, i % r, j % r, q) * &left;
        }
        let right = permutation(&shuffled(c, &keys[1..].iter().chain(&keys[..1]).copied().collect::<Vec<_>>()));
        let moved = &(&left * &m) * &right;
        prop_assert_eq!(snf(&moved).invariant_factors(), snf(&m).invariant_factors());
    }

    #[test]
    fn kernel_is_exact(m in matrix(3, 4, 2)) {
        let k = kernel(&m);
        prop_assert!((&m * &k).is_zero());
        prop_assert_eq!(k.cols(), m.cols() - hnf(&m).rank());
    }
}

#[test]
fn smith_form_example() {
    let m = PolyMatrix::from_rows(vec![
        vec![Poly::x(), Poly::one()],
        vec![Poly::zero(), Poly::x()],
    ])
    .unwrap();
    let s = snf(&m);
    assert_eq!(s.diagonal(), vec![Poly::one(), Poly::x().pow(2)]);
}
