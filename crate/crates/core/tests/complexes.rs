//! Homology, maps and spectral sequences on random complexes with known answers.

mod support;

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use khseq::complex::{
    bockstein, filtered_ss_pages, filtered_ss_pages_dense, homology_f2_dense, induced_map, mapping_cone, ChainMap,
    F2Homology, Grading, Ring, ZHomology,
};
use khseq::linalg::F2Matrix;

/// Prime-power decomposition of a list of cyclic orders.
fn primary(orders: &[u64]) -> Vec<u64> {
    let mut out = Vec::new();
    for &n in orders {
        let mut n = n;
        let mut p = 2;
        while n > 1 {
            let mut q = 1;
            while n % p == 0 {
                n /= p;
                q *= p;
            }
            if q > 1 {
                out.push(q);
            }
            p += 1;
        }
    }
    out.sort_unstable();
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn at(i: i32) -> Grading {
    Grading::new(i, 0, 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn integral_homology_is_the_known_answer(seed in any::<u64>(), pieces in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (c, _, truth) = support::random_z_complex(&mut rng, pieces, false);
        let h = ZHomology::compute(&c).unwrap();
        for i in -4..=3 {
            let g = h.group(at(i));
            prop_assert_eq!(g.free, truth.free.get(&i).copied().unwrap_or(0));
            prop_assert_eq!(primary(&g.torsion), primary(truth.torsion.get(&i).map_or(&[][..], |v| v)));
        }
    }

    #[test]
    fn coefficient_changes_follow_universal_coefficients(seed in any::<u64>(), pieces in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (c, _, truth) = support::random_z_complex(&mut rng, pieces, false);
        let h = ZHomology::compute(&c).unwrap();
        let f2 = F2Homology::compute(&c.change_ring(Ring::F2).unwrap()).unwrap();
        prop_assert_eq!(homology_f2_dense(&c.change_ring(Ring::F2).unwrap()), f2.dims());
        let mut f2_truth: BTreeMap<i32, usize> = truth.free.clone();
        let mut z4_free: BTreeMap<i32, usize> = truth.free.clone();
        let mut z4_two: BTreeMap<i32, usize> = BTreeMap::new();
        for &(i, m) in &truth.pairs {
            match gcd(m, 4) {
                2 => {
                    *f2_truth.entry(i).or_default() += 1;
                    *f2_truth.entry(i - 1).or_default() += 1;
                    *z4_two.entry(i).or_default() += 1;
                    *z4_two.entry(i - 1).or_default() += 1;
                }
                4 => {
                    *f2_truth.entry(i).or_default() += 1;
                    *f2_truth.entry(i - 1).or_default() += 1;
                    *z4_free.entry(i).or_default() += 1;
                    *z4_free.entry(i - 1).or_default() += 1;
                }
                _ => {}
            }
        }
        f2_truth.retain(|_, d| *d > 0);
        let f2_dims: BTreeMap<i32, usize> = f2.dims().into_iter().map(|(g, d)| (g.i, d)).collect();
        prop_assert_eq!(&f2_dims, &f2_truth);
        let uct: BTreeMap<i32, usize> = h.f2_dims().into_iter().map(|(g, d)| (g.i, d)).collect();
        prop_assert_eq!(&uct, &f2_truth);
        let z4 = h.z4_table();
        for i in -4..=3 {
            let g = z4.get(at(i));
            prop_assert_eq!(g.free, z4_free.get(&i).copied().unwrap_or(0));
            prop_assert_eq!(g.torsion, vec![2; z4_two.get(&i).copied().unwrap_or(0)]);
        }
    }

    #[test]
    fn bockstein_detects_order_two_torsion(seed in any::<u64>(), pieces in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (c, _, truth) = support::random_z_complex(&mut rng, pieces, false);
        let f2 = F2Homology::compute(&c.change_ring(Ring::F2).unwrap()).unwrap();
        let b = bockstein(&c, &f2).unwrap();
        let mut ranks: BTreeMap<i32, usize> = BTreeMap::new();
        for (g, m) in &b {
            *ranks.entry(g.i).or_default() += m.rank();
        }
        ranks.retain(|_, r| *r > 0);
        let mut expect: BTreeMap<i32, usize> = BTreeMap::new();
        for &(i, m) in &truth.pairs {
            if m % 4 == 2 {
                *expect.entry(i).or_default() += 1;
            }
        }
        prop_assert_eq!(ranks, expect);
    }

    #[test]
    fn identity_maps(seed in any::<u64>(), pieces in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (cz, _, _) = support::random_z_complex(&mut rng, pieces, false);
        let c = cz.change_ring(Ring::F2).unwrap();
        let id = ChainMap::identity(&c);
        id.check(&c, &c).unwrap();
        let h = F2Homology::compute(&c).unwrap();
        for (g, m) in induced_map(&id, &h, &h).unwrap() {
            prop_assert_eq!(m, F2Matrix::identity(h.dim(g)));
        }
        let cone = mapping_cone(&id, &c, &c).unwrap();
        prop_assert_eq!(F2Homology::compute(&cone).unwrap().total_dim(), 0);
        let cone_z = mapping_cone(&ChainMap::identity(&cz), &cz, &cz).unwrap();
        prop_assert!(ZHomology::compute(&cone_z).unwrap().groups().values().all(|g| g.is_zero()));
    }

    #[test]
    fn spectral_sequence_matches_subquotients(seed in any::<u64>(), pieces in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (cz, filt, _) = support::random_z_complex(&mut rng, pieces, true);
        let c = cz.change_ring(Ring::F2).unwrap();
        let ss = filtered_ss_pages(&c, &filt, None).unwrap();
        prop_assert!(ss.check_monotone());
        let dense = filtered_ss_pages_dense(&c, &filt, ss.pages.len() + 1).unwrap();
        for (r, page) in ss.pages.iter().enumerate() {
            let mut dims = page.dims.clone();
            dims.retain(|_, d| *d > 0);
            let mut want = dense[r].clone();
            want.retain(|_, d| *d > 0);
            prop_assert_eq!(dims, want, "page {}", r + 1);
        }
        let mut last = dense.last().unwrap().clone();
        last.retain(|_, d| *d > 0);
        let mut einf = ss.last().dims.clone();
        einf.retain(|_, d| *d > 0);
        prop_assert_eq!(last, einf);
        prop_assert_eq!(ss.last().total_dim(), F2Homology::compute(&c).unwrap().total_dim());
    }
}
