//! Khovanov and annular Khovanov homology of the corpus.

mod support;

use khseq::complex::{filtered_ss_pages, F2Homology, Group, Grading, HomologyTable, Ring, ZHomology};
use khseq::diagram::{close_quotients, lift_intravergent, QuotientTangle};
use khseq::khovanov::{KhComplex, Mode, QRange};

fn kh_z(t: &QuotientTangle, q: QRange) -> HomologyTable {
    let k = lift_intravergent(t).unwrap();
    let c = KhComplex::build(k.diagram(), Ring::Z, Mode::Kh, q).unwrap();
    ZHomology::compute(c.complex()).unwrap().table()
}

fn group(free: usize, torsion: &[u64]) -> Group {
    Group { free, torsion: torsion.to_vec() }
}

fn bi(i: i32, j: i32) -> Grading {
    Grading::new(i, j, 0)
}

#[test]
fn unknot_is_two_copies_of_z() {
    let table = kh_z(&support::corpus("unknot"), QRange::ALL);
    let got: Vec<(Grading, Group)> = table.entries.iter().map(|e| (e.grading, e.group.clone())).collect();
    assert_eq!(got, vec![(bi(0, -1), group(1, &[])), (bi(0, 1), group(1, &[]))]);
}

#[test]
fn trefoil_integral_homology() {
    let table = kh_z(&support::corpus("trefoil"), QRange::ALL);
    let got: Vec<(Grading, Group)> = table.entries.iter().map(|e| (e.grading, e.group.clone())).collect();
    let expect = vec![
        (bi(-3, -9), group(1, &[])),
        (bi(-3, -7), group(0, &[2])),
        (bi(-2, -5), group(1, &[])),
        (bi(0, -3), group(1, &[])),
        (bi(0, -1), group(1, &[])),
    ];
    assert_eq!(got, expect);
}

#[test]
fn nine_forty_six_near_the_middle() {
    let t = support::corpus("9_46");
    let table = kh_z(&t, QRange { min: -1, max: 1 });
    let got: Vec<(Grading, Group)> = table.entries.iter().map(|e| (e.grading, e.group.clone())).collect();
    let expect = vec![(bi(-1, -1), group(0, &[2])), (bi(0, -1), group(1, &[])), (bi(0, 1), group(2, &[]))];
    assert_eq!(got, expect);
    let k = lift_intravergent(&t).unwrap();
    let f2 = KhComplex::build(k.diagram(), Ring::F2, Mode::Kh, QRange { min: -1, max: 1 }).unwrap();
    let h = F2Homology::compute(f2.complex()).unwrap();
    assert_eq!((h.dim(bi(-1, -1)), h.dim(bi(0, -1)), h.dim(bi(0, 1))), (1, 2, 2));
    let full = kh_z(&t, QRange::ALL);
    for e in &table.entries {
        assert_eq!(full.get(e.grading), e.group);
    }
}

#[test]
fn faithful_9_46_agrees_near_the_middle() {
    let q = QRange { min: -1, max: 1 };
    assert_eq!(kh_z(&support::corpus("9_46-full"), q), kh_z(&support::corpus("9_46"), q));
}

#[test]
fn annular_homology_of_the_9_46_quotients() {
    let t = support::corpus("9_46");
    let q = close_quotients(&t).unwrap();
    let full = close_quotients(&support::corpus("9_46-full")).unwrap();
    let akh = |d| F2Homology::compute(KhComplex::build(d, Ring::F2, Mode::Annular, QRange::ALL).unwrap().complex()).unwrap();
    let (h1, h0) = (akh(&q.k1), akh(&q.k0));
    let slice = |h: &F2Homology, level: i32| -> Vec<(Grading, usize)> {
        h.dims().into_iter().filter(|(g, _)| 2 * g.j + g.k + level == 12).collect()
    };
    assert_eq!(slice(&h1, 1), vec![(Grading::new(2, 7, -3), 1), (Grading::new(3, 5, 1), 1)]);
    assert_eq!(slice(&h0, 0), vec![(Grading::new(2, 7, -2), 1), (Grading::new(3, 5, 2), 1)]);
    assert_eq!(h1.dims(), akh(&full.k1).dims());
    assert_eq!(h0.dims(), akh(&full.k0).dims());
}

#[test]
fn restricted_quantum_range_matches_the_full_cube() {
    for name in support::CORPUS {
        let t = support::corpus(name);
        let full = kh_z(&t, QRange::ALL);
        for e in &full.entries {
            let j = e.grading.j;
            assert_eq!(kh_z(&t, QRange { min: j, max: j }).get(e.grading), e.group, "{name}");
        }
    }
}

#[test]
fn annular_filtration_converges_to_khovanov_homology() {
    for name in support::CORPUS.iter().chain(&["9_46-full"]) {
        let q = close_quotients(&support::corpus(name)).unwrap();
        for d in [&q.k0, &q.k1] {
            let filtered = KhComplex::build(d, Ring::F2, Mode::Filtered, QRange::ALL).unwrap();
            let annular = KhComplex::build(d, Ring::F2, Mode::Annular, QRange::ALL).unwrap();
            let filt: Vec<i64> = filtered.generators().iter().map(|g| -g.grading.k as i64).collect();
            let ss = filtered_ss_pages(filtered.complex(), &filt, None).unwrap();
            assert!(ss.check_monotone());
            let akh = F2Homology::compute(annular.complex()).unwrap();
            let kh = F2Homology::compute(filtered.complex()).unwrap();
            assert_eq!(ss.pages[0].total_dim(), akh.total_dim(), "{name}: E^1 = AKh");
            assert_eq!(ss.last().total_dim(), kh.total_dim(), "{name}: E^∞ = Kh");
            assert!(akh.total_dim() >= kh.total_dim());
        }
    }
}

#[test]
fn basepoint_action_is_a_chain_map() {
    for name in support::CORPUS {
        let q = close_quotients(&support::corpus(name)).unwrap();
        for mode in [Mode::Annular, Mode::Filtered] {
            let c = KhComplex::build(&q.k1, Ring::F2, mode, QRange::ALL).unwrap();
            let x = c.basepoint_action().unwrap();
            x.check(c.complex(), c.complex()).unwrap();
            assert!(x.compose(&x).is_zero(), "X² = 0");
        }
    }
}
