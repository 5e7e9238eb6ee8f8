//! Tangle parsing, lifts, closures, invariants and the axis move.

mod support;

use khseq::diagram::{
    apply_axis_wrap_move, close_quotients, diagram_invariants, lift_intravergent, quotient_axis_faces,
    AnnularDiagram, Pd, QuotientTangle, WrapDirection,
};
use khseq::khovanov::{euler_characteristics, Laurent};
use khseq::DiagramError;

fn laurent(terms: &[(i32, i64)]) -> Laurent {
    let mut p = Laurent::default();
    for &(j, c) in terms {
        p.add_term(j, c);
    }
    p
}

#[test]
fn corpus_round_trips_through_both_formats() {
    for name in support::CORPUS.iter().chain(&["9_46-full"]) {
        let t = support::corpus(name);
        assert_eq!(QuotientTangle::parse(&t.to_text()).unwrap(), t, "{name} text");
        assert_eq!(QuotientTangle::parse_json(&t.to_json()).unwrap(), t, "{name} json");
        assert_eq!(QuotientTangle::parse_named("x.json", &t.to_json()).unwrap(), t);
    }
}

#[test]
fn malformed_tangles_are_rejected() {
    let bad = [
        "X a b c\nendpoints a b\n",
        "X a b c d\nX e f g h\nendpoints a b\n",
        "X a b b a\nendpoints a a\n",
        "X p q r r\nendpoints q p\nray z:1\n",
        "X p q r r\naxis sideways\nendpoints q p\n",
        "X p q r r\n",
    ];
    for text in bad {
        assert!(QuotientTangle::parse(text).is_err(), "accepted {text:?}");
    }
    assert!(matches!(QuotientTangle::parse("X a b c\n"), Err(DiagramError::Syntax { line: 1, .. })));
    assert!(QuotientTangle::parse_json("{").is_err());
}

#[test]
fn corpus_invariants() {
    let expect = [
        ("unknot", 1, 0, 1, 1),
        ("trefoil", 3, 1, 3, -1),
        ("figure-eight", 5, 2, 2, -2),
        ("9_46", 11, 5, 4, 4),
        ("9_46-full", 19, 9, 4, 4),
    ];
    for (name, n, n_bar, delta, w) in expect {
        let inv = diagram_invariants(&support::corpus(name)).unwrap();
        assert_eq!((inv.n, inv.n_bar, inv.delta, inv.w), (n, n_bar, delta, w), "{name}");
        assert_eq!(inv.n, 2 * inv.n_bar + 1);
        assert_eq!(inv.delta, inv.n_minus as i64 - 2 * inv.n_bar_minus as i64);
        assert_eq!(inv.axis_linking_2x, inv.w - inv.delta);
        assert_eq!(inv.axis_linking_2x % 2, 0, "{name}: W − Δ is even");
    }
}

#[test]
fn lifts_are_intravergent_knots() {
    for name in support::CORPUS.iter().chain(&["9_46-full"]) {
        let t = support::corpus(name);
        let k = lift_intravergent(&t).unwrap();
        assert_eq!(k.n_crossings(), 2 * t.n_crossings() + 1);
        assert_eq!(k.diagram().pd().components().len(), 1, "{name} lifts to a knot");
        let v = k.rotate_vertex(1 << k.axis_crossing());
        assert_eq!(v, 1 << k.axis_crossing());
        let all = (1u64 << k.n_crossings()) - 1;
        assert_eq!(k.rotate_vertex(all), all);
    }
}

#[test]
fn closures_have_consistent_annular_data() {
    for name in support::CORPUS.iter().chain(&["9_46-full"]) {
        let t = support::corpus(name);
        let q = close_quotients(&t).unwrap();
        assert_eq!(q.k0.n_crossings(), t.n_crossings());
        assert_eq!(q.k1.n_crossings(), t.n_crossings());
        assert_eq!(q.kink.n_crossings(), t.n_crossings() + 1);
        let (f0, f1) = quotient_axis_faces(&t, &q);
        for (d, face) in [(&q.k0, f0), (&q.k1, f1)] {
            let Some(origin) = face else { continue };
            for v in 0..1u64 << d.n_crossings() {
                let res = d.resolve_state(v);
                assert_eq!(d.essential_by_faces(&res, origin).unwrap(), res.essential, "{name} vertex {v}");
            }
        }
    }
}

#[test]
fn trefoil_and_unknot_polynomials() {
    let right = AnnularDiagram::planar(Pd::braid_closure(&[1, 1, 1]).unwrap()).unwrap();
    let expect = laurent(&[(1, 1), (3, 1), (5, 1), (9, -1)]);
    assert_eq!(support::jones_oracle(&right), expect);
    assert_eq!(euler_characteristics(&right).0, expect);
    let left = lift_intravergent(&support::corpus("trefoil")).unwrap();
    assert_eq!(support::jones_oracle(left.diagram()), laurent(&[(-1, 1), (-3, 1), (-5, 1), (-9, -1)]));
    let unknot = lift_intravergent(&support::corpus("unknot")).unwrap();
    assert_eq!(support::jones_oracle(unknot.diagram()), laurent(&[(-1, 1), (1, 1)]));
}

#[test]
fn jones_polynomials_evaluate_to_two() {
    for name in support::CORPUS {
        let k = lift_intravergent(&support::corpus(name)).unwrap();
        assert_eq!(support::jones_oracle(k.diagram()).0.values().sum::<i64>(), 2, "{name}");
    }
}

#[test]
fn short_and_faithful_9_46_agree() {
    let short = support::corpus("9_46");
    let full = support::corpus("9_46-full");
    let (a, b) = (diagram_invariants(&short).unwrap(), diagram_invariants(&full).unwrap());
    assert_eq!((a.delta, a.w, a.w1, a.axis_linking_2x), (b.delta, b.w, b.w1, b.axis_linking_2x));
    let (ks, kf) = (lift_intravergent(&short).unwrap(), lift_intravergent(&full).unwrap());
    assert_eq!(support::jones_oracle(ks.diagram()), support::jones_oracle(kf.diagram()));
    let (qs, qf) = (close_quotients(&short).unwrap(), close_quotients(&full).unwrap());
    assert_eq!(support::annular_oracle(&qs.k0), support::annular_oracle(&qf.k0));
    assert_eq!(support::annular_oracle(&qs.k1), support::annular_oracle(&qf.k1));
}

#[test]
fn wrap_shifts_delta_and_winding() {
    for name in support::CORPUS {
        let t = support::corpus(name);
        let before = diagram_invariants(&t).unwrap();
        let w = apply_axis_wrap_move(&t, WrapDirection::Wrap).unwrap();
        let after = diagram_invariants(&w).unwrap();
        assert_eq!((after.delta, after.w), (before.delta - 1, before.w - 1), "{name}");
        let back = apply_axis_wrap_move(&w, WrapDirection::Unwrap).unwrap();
        assert_eq!(diagram_invariants(&back).unwrap(), before, "{name}");
        let (k0, k1) = (lift_intravergent(&t).unwrap(), lift_intravergent(&w).unwrap());
        assert_eq!(support::jones_oracle(k0.diagram()), support::jones_oracle(k1.diagram()), "{name}: same knot");
    }
}

#[test]
fn axis_linking_is_invariant_under_random_wrapping() {
    for (n, name) in support::CORPUS.iter().enumerate() {
        let moves = support::random_wrap_sequences(&support::corpus(name), 50, n as u64).unwrap();
        assert!(moves >= 50, "{name}: only {moves} moves");
    }
}
