//! Worked examples built from the module formulas by hand, a brute-force
//! ordering oracle, and invariance properties of verified triples.

use std::sync::OnceLock;

use bdtriple_core::bdcore::{
    affine_equivalent_sequences, affine_shift_triple, conjugate_triple, is_isomorphic,
    verify_bd_pair, verify_bd_triple, AffineMap,
};
use bdtriple_core::classify::{construct_from_parameter_array, reduce_triple};
use bdtriple_core::corpus::{sl2_specs, uq_specs};
use bdtriple_core::exactlinalg::{diagonalize, frac, int};
use bdtriple_core::extension::{check_uniqueness, extend_pair, split_decomposition};
use bdtriple_core::repmod::{module_to_triple, triple_to_module};
use bdtriple_core::{
    BdTriple, Matrix, ModuleSpec, Operator, ParameterArray, Rational, Subspace, Summand,
    VerifiedTriple,
};
use itertools::Itertools;
use num_traits::One;
use proptest::prelude::*;

fn ints(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| int(x)).collect()
}

fn square(n: usize, f: impl Fn(usize, usize) -> Rational) -> Matrix {
    Matrix::from_rows((0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect()).unwrap()
}

/// `(h, e, f)` on `V(d)` with `h.v_i = (d-2i)v_i`, `f.v_i = (i+1)v_(i+1)`,
/// `e.v_i = (d-i+1)v_(i-1)`; column `i` holds the image of `v_i`.
fn sl2_module(d: usize) -> (Matrix, Matrix, Matrix) {
    let n = d + 1;
    let h = square(n, |i, j| if i == j { int(d as i64 - 2 * i as i64) } else { int(0) });
    let e = square(n, |i, j| if i + 1 == j { int((d - j + 1) as i64) } else { int(0) });
    let f = square(n, |i, j| if i == j + 1 { int(i as i64) } else { int(0) });
    (h, e, f)
}

/// Equitable `X = 2e - h`, `Y = -2f - h`, `Z = h`.
fn sl2_equitable(d: usize) -> BdTriple {
    let (h, e, f) = sl2_module(d);
    let x = &e.scale(&int(2)) - &h;
    let y = &f.scale(&int(-2)) - &h;
    BdTriple::new(x, y, h).unwrap()
}

fn q_bracket(q: &Rational, n: usize) -> Rational {
    let qi = q.recip();
    let mut num = Rational::one();
    let mut den = Rational::one();
    for _ in 0..n {
        num *= q;
        den *= &qi;
    }
    (num - den) / (q - &qi)
}

/// Equitable `x = k`, `y = k⁻¹ + f(q - q⁻¹)`, `z = k⁻¹ - k⁻¹e q(q - q⁻¹)` on
/// `V(d, 1)`.
fn uq_equitable(d: usize, q: &Rational) -> BdTriple {
    let n = d + 1;
    let power = |i: usize| {
        let mut p = Rational::one();
        let exp = d as i64 - 2 * i as i64;
        for _ in 0..exp.unsigned_abs() {
            p *= q;
        }
        if exp < 0 {
            p.recip()
        } else {
            p
        }
    };
    let k = square(n, |i, j| if i == j { power(i) } else { int(0) });
    let k_inv = square(n, |i, j| if i == j { power(i).recip() } else { int(0) });
    let e = square(n, |i, j| if i + 1 == j { q_bracket(q, d - j + 1) } else { int(0) });
    let f = square(n, |i, j| if i == j + 1 { q_bracket(q, i) } else { int(0) });
    let c = q - q.recip();
    let y = &k_inv + &f.scale(&c);
    let z = &k_inv - &(&k_inv * &e).scale(&(q * &c));
    BdTriple::new(k, y, z).unwrap()
}

#[test]
fn equitable_v1_matrices() {
    let t = sl2_equitable(1);
    assert_eq!(t.a(), &Matrix::from_ints(&[&[-1, 2], &[0, 1]]));
    assert_eq!(t.a_prime(), &Matrix::from_ints(&[&[-1, 0], &[-2, 1]]));
    assert_eq!(t.a_double(), &Matrix::from_ints(&[&[1, 0], &[0, -1]]));
    let comm = Matrix::commutator(t.a(), t.a_prime());
    assert_eq!(comm, &t.a().scale(&int(2)) + &t.a_prime().scale(&int(2)));
    let v = verify_bd_triple(&t).unwrap();
    assert_eq!(v.ordering(Operator::ADouble).eigenvalues(), ints(&[-1, 1]).as_slice());
}

#[test]
fn equitable_v3_triple() {
    let t = sl2_equitable(3);
    let v = verify_bd_triple(&t).unwrap();
    for op in Operator::ALL {
        assert_eq!(v.parameter_array().sequence(op), ints(&[-3, -1, 1, 3]).as_slice());
    }
    assert_eq!(v.shape(), &[1, 1, 1, 1]);
    assert_eq!(v.base(), &int(1));
    let built = module_to_triple(&ModuleSpec::sl2(vec![Summand::new(3, 1)]).unwrap()).unwrap();
    assert_eq!(built.triple(), &t);
}

#[test]
fn equitable_uq_v2_triple() {
    let q = int(2);
    let t = uq_equitable(2, &q);
    let v = verify_bd_triple(&t).unwrap();
    let seq = [int(4), int(1), frac(1, 4)];
    for op in Operator::ALL {
        assert_eq!(v.parameter_array().sequence(op), seq.as_slice());
    }
    assert_eq!(v.base(), &frac(1, 4));
    let built = module_to_triple(&ModuleSpec::uq(q, vec![Summand::new(2, 1)]).unwrap()).unwrap();
    assert_eq!(built.triple(), &t);
}

#[test]
fn y_z_pair_on_v2() {
    let t = sl2_equitable(2);
    let pair = verify_bd_pair(t.a_prime(), t.a_double()).unwrap();
    assert_eq!(pair.diameter(), 2);
    assert_eq!(pair.shape(), &[1, 1, 1]);
}

#[test]
fn shapes_count_weight_multiplicities() {
    let spec = ModuleSpec::sl2(vec![Summand::new(3, 1), Summand::new(1, 1)]).unwrap();
    let t = module_to_triple(&spec).unwrap();
    assert_eq!(t.shape(), &[1, 2, 2, 1]);
    let small = module_to_triple(&ModuleSpec::sl2(vec![Summand::new(2, 1)]).unwrap()).unwrap();
    let bigger =
        module_to_triple(&ModuleSpec::sl2(vec![Summand::new(2, 1), Summand::new(0, 1)]).unwrap())
            .unwrap();
    assert_eq!(bigger.shape(), &[1, 2, 1]);
    assert!(!is_isomorphic(&small, &bigger));
}

#[test]
fn uq_multiplicities_from_the_k_spectrum() {
    let q = int(2);
    let spec = ModuleSpec::uq(q.clone(), vec![Summand::new(2, 1), Summand::new(0, 1)]).unwrap();
    let t = module_to_triple(&spec).unwrap();
    let k_spectrum: Vec<(Rational, usize)> = diagonalize(t.triple().a())
        .unwrap()
        .into_iter()
        .map(|(v, s)| (v, s.dim()))
        .collect();
    assert_eq!(k_spectrum, vec![(frac(1, 4), 1), (int(1), 2), (int(4), 1)]);
    let back = triple_to_module(&t, Some(&q)).unwrap();
    assert_eq!(back.spec.normalized(), spec.normalized());
}

#[test]
fn split_decomposition_dims_follow_the_shape() {
    let spec = ModuleSpec::sl2(vec![Summand::new(2, 1), Summand::new(0, 1)]).unwrap();
    let t = module_to_triple(&spec).unwrap();
    let pair = verify_bd_pair(t.triple().a_prime(), t.triple().a_double()).unwrap();
    assert_eq!(split_decomposition(&pair).unwrap().parts().dims(), vec![1, 2, 1]);
}

#[test]
fn construction_with_separate_shifts() {
    let pa = ParameterArray::new(ints(&[0, 2, 4]), ints(&[1, 2, 3]), ints(&[5, 7, 9]), vec![1, 2, 1])
        .unwrap();
    let t = construct_from_parameter_array(&pa, None).unwrap();
    assert_eq!(t.parameter_array(), &pa);
    let reduced = ints(&[-2, 0, 2]);
    let expected = [(int(1), int(2)), (frac(1, 2), int(2)), (int(1), int(7))];
    for (op, (r, s)) in Operator::ALL.into_iter().zip(expected) {
        let m = affine_equivalent_sequences(pa.sequence(op), &reduced).unwrap();
        assert_eq!((m.r(), m.s()), (&r, &s), "{op}");
    }
}

#[test]
fn affine_sequence_example() {
    let m = affine_equivalent_sequences(&ints(&[1, 2]), &ints(&[5, 3])).unwrap();
    assert_eq!((m.r().clone(), m.s().clone()), (frac(-1, 2), frac(7, 2)));
}

#[test]
fn reduction_inverts_a_shift() {
    let t = verify_bd_triple(&sl2_equitable(3)).unwrap();
    let map = AffineMap::new(int(2), int(5)).unwrap();
    let shifted = affine_shift_triple(&t, &[map.clone(), map.clone(), map.clone()]);
    let (reduced, maps) = reduce_triple(&shifted, None).unwrap();
    assert_eq!(reduced.triple(), t.triple());
    assert!(maps.iter().all(|m| *m == map));
}

/// All orderings of the eigenspaces of `op` satisfying the two bidiagonal
/// containments of the triple definition, found by trying every
/// permutation.
fn brute_force_orderings(t: &BdTriple, op: Operator) -> Vec<Vec<Rational>> {
    let ops = t.operators();
    let o = op.index();
    let (up, down) = (&ops[(o + 1) % 3], &ops[(o + 2) % 3]);
    let parts = diagonalize(&ops[o]).unwrap();
    let n = t.dim();
    let mut found = Vec::new();
    for perm in (0..parts.len()).permutations(parts.len()) {
        let space = |i: isize| -> Subspace {
            if i < 0 || i as usize >= perm.len() {
                Subspace::zero(n)
            } else {
                parts[perm[i as usize]].1.clone()
            }
        };
        let ok = (0..perm.len() as isize).all(|i| {
            let here = space(i);
            let above = here.sum(&space(i + 1)).unwrap();
            let below = here.sum(&space(i - 1)).unwrap();
            above.contains(&here.image(up)).unwrap() && below.contains(&here.image(down)).unwrap()
        });
        if ok {
            found.push(perm.iter().map(|&p| parts[p].0.clone()).collect());
        }
    }
    found
}

#[test]
fn standard_orderings_match_brute_force() {
    let mut specs = sl2_specs(6);
    specs.extend(uq_specs(&int(2), 6));
    specs.extend(uq_specs(&frac(-1, 3), 5));
    for spec in specs {
        let t = module_to_triple(&spec).unwrap();
        for op in Operator::ALL {
            let all = brute_force_orderings(t.triple(), op);
            assert_eq!(all.len(), 1, "{spec:?} {op}");
            assert_eq!(all[0].as_slice(), t.ordering(op).eigenvalues(), "{spec:?} {op}");
        }
    }
}

fn corpus() -> &'static [VerifiedTriple] {
    static CORPUS: OnceLock<Vec<VerifiedTriple>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut specs = sl2_specs(7);
        specs.extend(uq_specs(&int(3), 6));
        specs.iter().map(|s| module_to_triple(s).unwrap()).collect()
    })
}

fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, n), n)
        .prop_map(|rows| {
            Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(int).collect()).collect())
                .unwrap()
        })
        .prop_filter("singular", move |m| m.rank() == n)
}

fn affine_map() -> impl Strategy<Value = AffineMap> {
    ((-5i64..=5).prop_filter("zero", |r| *r != 0), 1i64..4, -9i64..=9)
        .prop_map(|(r, d, s)| AffineMap::new(frac(r, d), int(s)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn conjugation_keeps_the_parameter_array(
        (index, mu) in (0usize..corpus().len()).prop_flat_map(|i| {
            let n = corpus()[i].dim();
            (Just(i), invertible(n))
        })
    ) {
        let t = &corpus()[index];
        let conj = verify_bd_triple(&conjugate_triple(t.triple(), &mu).unwrap()).unwrap();
        prop_assert_eq!(conj.parameter_array(), t.parameter_array());
        prop_assert!(is_isomorphic(&conj, t));
    }

    #[test]
    fn affine_shifts_act_on_the_sequences(
        index in 0usize..40,
        maps in [affine_map(), affine_map(), affine_map()],
    ) {
        let t = &corpus()[index % corpus().len()];
        let shifted = affine_shift_triple(t, &maps);
        let fresh = verify_bd_triple(shifted.triple()).unwrap();
        prop_assert_eq!(fresh.parameter_array(), shifted.parameter_array());
        prop_assert_eq!(fresh.base(), t.base());
        for (op, m) in Operator::ALL.into_iter().zip(&maps) {
            let expected = m.apply_all(t.parameter_array().sequence(op));
            prop_assert_eq!(fresh.parameter_array().sequence(op), expected.as_slice());
        }
        prop_assert!(check_uniqueness(&fresh, t).unwrap());
    }

    #[test]
    fn extensions_by_any_recurrent_target_agree(
        index in 0usize..40,
        first in affine_map(),
        second in affine_map(),
    ) {
        let t = &corpus()[index % corpus().len()];
        let pair = verify_bd_pair(t.triple().a(), t.triple().a_prime()).unwrap();
        let third = t.parameter_array().theta_double();
        let a = extend_pair(&pair, Some(&first.apply_all(third)), None).unwrap();
        let b = extend_pair(&pair, Some(&second.apply_all(third)), None).unwrap();
        prop_assert!(check_uniqueness(&a, &b).unwrap());
        prop_assert!(check_uniqueness(&a, t).unwrap());
        // the third operators differ by exactly the composed affine map
        let rel = second.compose(&first.inverse());
        let expected = &a.triple().a_double().scale(rel.r()).shift(rel.s());
        prop_assert_eq!(b.triple().a_double(), expected);
    }
}
