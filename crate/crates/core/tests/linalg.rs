//! Exact linear algebra against naive test-side eliminators.

mod support;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use khseq::complex::GradedComplex;
use khseq::linalg::{
    apply_sparse, f2_rank_kernel, is_unimodular, mod4_lift_boundary, smith_normal_form, solve_f2, BitVec, F2Matrix,
    Reducer, Z4Matrix, ZMatrix,
};
use khseq::LinalgError;

fn naive_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] {
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn bool_matrix() -> impl Strategy<Value = Vec<Vec<bool>>> {
    (1usize..12, 1usize..12).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(any::<bool>(), c), r))
}

fn to_f2(rows: &[Vec<bool>]) -> F2Matrix {
    let bytes: Vec<Vec<u8>> = rows.iter().map(|r| r.iter().map(|&b| b as u8).collect()).collect();
    F2Matrix::from_rows(&bytes, rows[0].len()).unwrap()
}

fn small_int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

proptest! {
    #[test]
    fn f2_rank_matches_naive(rows in bool_matrix()) {
        let m = to_f2(&rows);
        prop_assert_eq!(m.rank(), naive_rank(rows.clone()));
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn f2_kernel_is_a_kernel_basis(rows in bool_matrix()) {
        let m = to_f2(&rows);
        let (rank, kernel) = f2_rank_kernel(&m);
        prop_assert_eq!(rank + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().is_zero());
        }
        prop_assert_eq!(naive_rank(kernel.iter().map(|v| v.to_bools()).collect()), kernel.len());
    }

    #[test]
    fn solve_agrees_with_consistency(rows in bool_matrix(), seed in any::<u64>()) {
        let m = to_f2(&rows);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = BitVec::from_bools(&(0..m.rows()).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>());
        let augmented: Vec<Vec<bool>> = rows.iter().enumerate().map(|(i, r)| {
            let mut r = r.clone();
            r.push(b.get(i));
            r
        }).collect();
        let consistent = naive_rank(augmented) == naive_rank(rows.clone());
        match solve_f2(&m, &b).unwrap() {
            Some(x) => prop_assert_eq!(m.mul_vec(&x).unwrap(), b),
            None => prop_assert!(!consistent),
        }
        let x0 = BitVec::from_bools(&(0..m.cols()).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>());
        let image = m.mul_vec(&x0).unwrap();
        let x = solve_f2(&m, &image).unwrap().expect("image is solvable");
        prop_assert_eq!(m.mul_vec(&x).unwrap(), image);
    }

    #[test]
    fn smith_form_recomposes(rows in small_int_matrix()) {
        let m = ZMatrix::from_i64(&rows, rows[0].len());
        let snf = smith_normal_form(&m);
        prop_assert!(is_unimodular(&snf.u) && is_unimodular(&snf.v));
        prop_assert!(snf.u.mul(&m).mul(&snf.v).is_diagonal_with(&snf.diagonal));
        let nonzero: Vec<&BigInt> = snf.diagonal.iter().take_while(|d| !d.is_zero()).collect();
        prop_assert!(snf.diagonal[nonzero.len()..].iter().all(|d| d.is_zero()));
        prop_assert!(nonzero.iter().all(|d| d.is_positive()));
        for w in nonzero.windows(2) {
            prop_assert!((w[1] % w[0]).is_zero());
        }
        let odd = snf.diagonal.iter().filter(|d| (*d % BigInt::from(2)) != BigInt::zero()).count();
        let mod2: Vec<Vec<bool>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(2) == 1).collect()).collect();
        prop_assert_eq!(odd, naive_rank(mod2));
    }

    #[test]
    fn mod4_lift_matches_integers(rows in small_int_matrix(), seed in any::<u64>()) {
        let cols = rows[0].len();
        let d = Z4Matrix::from_i64(&rows, cols);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x: Vec<bool> = (0..cols).map(|_| rng.gen_bool(0.5)).collect();
        let y: Vec<i64> = rows.iter().map(|r| r.iter().zip(&x).filter(|(_, &b)| b).map(|(c, _)| c).sum::<i64>().rem_euclid(4)).collect();
        let got = mod4_lift_boundary(&BitVec::from_bools(&x), &d);
        if y.iter().any(|v| v % 2 == 1) {
            prop_assert_eq!(got, Err(LinalgError::NotACycle));
        } else {
            let expect: Vec<bool> = y.iter().map(|&v| v == 2).collect();
            prop_assert_eq!(got.unwrap(), BitVec::from_bools(&expect));
        }
    }

    #[test]
    fn reduction_is_a_deformation_retraction(seed in any::<u64>(), pieces in 1usize..14) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (c, _, truth) = support::random_z_complex(&mut rng, pieces, false);
        let c: GradedComplex = c.change_ring(khseq::complex::Ring::F2).unwrap();
        let out = c.f2_supports();
        let mut red = Reducer::new(out.clone());
        red.reduce_all();
        prop_assert!(red.is_minimal());
        let even_pairs = truth.pairs.iter().filter(|(_, m)| m % 2 == 0).count();
        let expected: usize = truth.free.values().sum::<usize>() + 2 * even_pairs;
        prop_assert_eq!(red.survivors().len(), expected);
        for s in red.survivors() {
            let lift = red.include(s);
            prop_assert!(apply_sparse(&out, &lift).is_empty());
            prop_assert_eq!(red.project(&lift), vec![s]);
        }
        let x: Vec<u32> = (0..c.len() as u32).filter(|_| rng.gen_bool(0.5)).collect();
        prop_assert!(red.project(&apply_sparse(&out, &x)).is_empty());
        let lhs = red.include_all(&red.project(&x));
        let h = red.homotopy(&x);
        let hd = red.homotopy(&apply_sparse(&out, &x));
        let rhs = khseq::linalg::normalize_support([x.clone(), apply_sparse(&out, &h), hd].concat());
        prop_assert_eq!(lhs, rhs);
    }
}
