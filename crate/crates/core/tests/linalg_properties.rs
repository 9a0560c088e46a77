//! Property tests for the exact linear algebra layer. The oracles here
//! (plain Gaussian elimination and Laplace expansion) are written out in
//! the test so that they share no code with the library.

use bdtriple_core::exactlinalg::spectrum::characteristic_polynomial;
use bdtriple_core::exactlinalg::{diagonalize, frac, int, rational_eigenvalues};
use bdtriple_core::{Matrix, Rational, Subspace};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| frac(n, d))
}

fn dense(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(prop::collection::vec(small_rational(), cols), rows)
        .prop_map(|r| Matrix::from_rows(r).unwrap())
}

/// Products `B·C` through an inner dimension `k`, so that rank deficiency is
/// common rather than rare.
fn low_rank() -> impl Strategy<Value = Matrix> {
    (1usize..7, 1usize..7, 1usize..5)
        .prop_flat_map(|(r, c, k)| (dense(r, k), dense(k, c)))
        .prop_map(|(b, c)| &b * &c)
}

fn vectors(n: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec(small_rational(), n), 0..4)
}

fn span(n: usize, vs: &[Vec<Rational>]) -> Subspace {
    Subspace::from_vectors(n, vs).unwrap()
}

/// Rank by textbook elimination over the rationals.
fn oracle_rank(m: &Matrix) -> usize {
    let mut rows = m.to_rows();
    let mut rank = 0;
    for col in 0..m.cols() {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] / &rows[rank][col];
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn oracle_det(m: &[Vec<Rational>]) -> Rational {
    if m.is_empty() {
        return Rational::one();
    }
    let mut total = Rational::zero();
    for (j, x) in m[0].iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = x * oracle_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn eval(poly: &[Rational], x: &Rational) -> Rational {
    poly.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rank_nullity(m in low_rank()) {
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.dim(), m.cols());
        prop_assert_eq!(m.rank(), oracle_rank(&m));
        for v in k.basis().row_vectors() {
            prop_assert!(m.apply(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn kernel_with_large_entries(m in low_rank(), big in 1i64 << 40..1i64 << 61) {
        // Entries far beyond one word force several primes.
        let m = m.scale(&frac(big, 7));
        let k = m.kernel();
        prop_assert_eq!(k.dim(), m.cols() - oracle_rank(&m));
        for v in k.basis().row_vectors() {
            prop_assert!(m.apply(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn rank_of_transpose(m in low_rank()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn canonical_form_ignores_spanning_set(vs in vectors(4), mix in dense(4, 4)) {
        let u = span(4, &vs);
        // Mix the basis with an arbitrary matrix and add the original back in.
        let basis = u.basis().to_rows();
        let mut mixed: Vec<Vec<Rational>> = basis
            .iter()
            .enumerate()
            .map(|(i, _)| {
                (0..4)
                    .map(|c| basis.iter().enumerate().map(|(j, b)| mix.get(i % 4, j % 4) * &b[c]).sum())
                    .collect()
            })
            .collect();
        mixed.extend(basis.iter().rev().cloned());
        prop_assert_eq!(span(4, &mixed), u);
    }

    #[test]
    fn dimension_formula(a in vectors(5), b in vectors(5)) {
        let (u, w) = (span(5, &a), span(5, &b));
        let sum = u.sum(&w).unwrap();
        let meet = u.intersect(&w).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + w.dim());
        prop_assert!(sum.contains(&u).unwrap() && sum.contains(&w).unwrap());
        prop_assert!(u.contains(&meet).unwrap() && w.contains(&meet).unwrap());
    }

    #[test]
    fn modular_law(a in vectors(5), x in vectors(5), y in vectors(5)) {
        // U ⊆ W gives W ∩ (U + Y) = U + (W ∩ Y).
        let u = span(5, &a);
        let w = u.sum(&span(5, &x)).unwrap();
        let yy = span(5, &y);
        let left = w.intersect(&u.sum(&yy).unwrap()).unwrap();
        let right = u.sum(&w.intersect(&yy).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn characteristic_polynomial_matches_laplace(m in (1usize..6).prop_flat_map(|n| dense(n, n))) {
        let chi = characteristic_polynomial(&m);
        prop_assert_eq!(chi.len(), m.rows() + 1);
        for t in -2i64..=2 {
            let x = int(t);
            let shifted: Vec<Vec<Rational>> = (0..m.rows())
                .map(|i| {
                    (0..m.cols())
                        .map(|j| if i == j { &x - m.get(i, j) } else { -m.get(i, j) })
                        .collect()
                })
                .collect();
            prop_assert_eq!(eval(&chi, &x), oracle_det(&shifted));
        }
    }

    #[test]
    fn diagonalize_recovers_a_hidden_spectrum(
        values in prop::collection::vec(small_rational(), 1..6),
        seed in dense(6, 6),
    ) {
        let n = values.len();
        let d = Matrix::diagonal(&values);
        // unit upper triangular part of the seed, so always invertible
        let p = Matrix::from_rows(
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| match j.cmp(&i) {
                            std::cmp::Ordering::Less => Rational::zero(),
                            std::cmp::Ordering::Equal => Rational::one(),
                            std::cmp::Ordering::Greater => seed.get(i, j).clone(),
                        })
                        .collect()
                })
                .collect(),
        )
        .unwrap();
        let m = &(&p * &d) * &p.inverse().unwrap();
        let mut distinct = values.clone();
        distinct.sort();
        distinct.dedup();
        prop_assert_eq!(rational_eigenvalues(&m).unwrap(), distinct.clone());
        let parts = diagonalize(&m).unwrap();
        for (value, space) in &parts {
            let multiplicity = values.iter().filter(|v| *v == value).count();
            prop_assert_eq!(space.dim(), multiplicity);
            for v in space.basis().row_vectors() {
                let image = m.apply(v);
                prop_assert!(image.iter().zip(v).all(|(a, b)| *a == value * b));
            }
        }
    }
}
