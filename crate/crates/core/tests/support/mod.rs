//! Shared fixtures, independent oracles and the per-tangle property audit.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::Rng;

use khseq::complex::{induced_map, ChainMap, F2Homology, Grading, Ring, ZHomology};
use khseq::diagram::{
    close_quotients, lift_intravergent, AnnularDiagram, AxisCrossing, Pd, QuotientTangle, RaySide,
};
use khseq::equivariant::{
    axis_moving_maps, tau_chain_map, verify_theorem, VerifyOptions, F_MINUS_SHIFT, F_PLUS_SHIFT,
};
use khseq::khovanov::{euler_characteristics, KhComplex, Laurent, Laurent2, Mode, QRange};

pub const CORPUS: [&str; 4] = ["unknot", "trefoil", "figure-eight", "9_46"];

pub fn tangle_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../tangles").join(format!("{name}.tangle"))
}

pub fn corpus(name: &str) -> QuotientTangle {
    let text = std::fs::read_to_string(tangle_path(name)).expect("corpus file");
    QuotientTangle::parse(&text).expect("corpus tangle parses")
}

/// `Σ_v (−1)^{|v|−N₋} q^{N−3N₋+|v|} (q + q⁻¹)^{#circles}`, expanded by binomials.
pub fn jones_oracle(d: &AnnularDiagram) -> Laurent {
    let n = d.n_crossings() as i64;
    let nm = d.pd().n_negative() as i64;
    let mut p: BTreeMap<i32, i64> = BTreeMap::new();
    for v in 0u64..1 << n {
        let c = khseq::diagram::state_circle_count(d, v) as i64;
        let h = v.count_ones() as i64;
        let sign = if (h - nm).rem_euclid(2) == 0 { 1 } else { -1 };
        let mut binom = 1i64;
        for x in 0..=c {
            let j = n - 3 * nm + h + x - (c - x);
            *p.entry(j as i32).or_default() += sign * binom;
            binom = binom * (c - x) / (x + 1);
        }
    }
    p.retain(|_, c| *c != 0);
    Laurent(p)
}

/// Annular state sum over every labelling of every resolution.
pub fn annular_oracle(d: &AnnularDiagram) -> Laurent2 {
    let n = d.n_crossings() as i64;
    let nm = d.pd().n_negative() as i64;
    let mut p: BTreeMap<(i32, i32), i64> = BTreeMap::new();
    for v in 0u64..1 << n {
        let r = d.resolve_state(v);
        let h = v.count_ones() as i64;
        let c = r.circles.len();
        let sign = if (h - nm).rem_euclid(2) == 0 { 1 } else { -1 };
        for lab in 0u64..1 << c {
            let nx = lab.count_ones() as i64;
            let j = n - 3 * nm + h + nx - (c as i64 - nx);
            let k: i64 = (0..c).filter(|&t| r.essential[t]).map(|t| if lab >> t & 1 == 1 { -1 } else { 1 }).sum();
            *p.entry((j as i32, k as i32)).or_default() += sign;
        }
    }
    p.retain(|_, c| *c != 0);
    Laurent2(p)
}

/// Random self-avoiding walk through faces, never crossing `avoid`.
fn random_ray(rng: &mut impl Rng, pd: &Pd, start: usize, avoid: usize, max_len: usize) -> Vec<usize> {
    let (face, _) = pd.faces();
    let len = rng.gen_range(0..=max_len);
    let mut seen = vec![start];
    let mut here = start;
    let mut path = Vec::new();
    while path.len() < len {
        let options: Vec<(usize, usize)> = (0..pd.n_arcs())
            .filter(|&a| a != avoid)
            .filter_map(|a| {
                let (l, r) = (face[2 * a], face[2 * a + 1]);
                let next = if l == here { r } else if r == here { l } else { return None };
                (!seen.contains(&next)).then_some((a, next))
            })
            .collect();
        let Some(&(a, next)) = options.choose(rng) else { break };
        path.push(a);
        seen.push(next);
        here = next;
    }
    path
}

/// A random quotient tangle with at most `max_crossings` crossings, from a braid closure.
pub fn random_tangle(rng: &mut impl Rng, max_crossings: usize) -> QuotientTangle {
    loop {
        let len = rng.gen_range(1..=max_crossings);
        let strands = rng.gen_range(2..=4.min(len + 1));
        let word: Vec<i32> = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..strands) as i32;
                if rng.gen_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect();
        let Ok(pd) = Pd::braid_closure(&word) else { continue };
        if pd.components().len() != 1 {
            continue;
        }
        let axis_arc = rng.gen_range(0..pd.n_arcs());
        let side = if rng.gen_bool(0.5) { RaySide::Left } else { RaySide::Right };
        let (face, _) = pd.faces();
        let start = match side {
            RaySide::Left => face[2 * axis_arc],
            RaySide::Right => face[2 * axis_arc + 1],
        };
        let ray = random_ray(rng, &pd, start, axis_arc, 3);
        let axis = if rng.gen_bool(0.5) { AxisCrossing::OverFirst } else { AxisCrossing::UnderFirst };
        if let Ok(t) = QuotientTangle::from_knot_diagram(&pd, axis_arc, side, &ray, axis) {
            return t;
        }
    }
}

fn zeros(m: &BTreeMap<Grading, khseq::linalg::F2Matrix>) -> bool {
    m.values().all(|x| x.is_zero())
}

fn non_increasing(v: &[usize]) -> bool {
    v.windows(2).all(|w| w[1] <= w[0])
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Every structural property on one tangle; the error names the first failure.
pub fn audit(t: &QuotientTangle) -> Result<(), String> {
    let e = |x: khseq::ComplexError| x.to_string();
    let k = lift_intravergent(t).map_err(|x| x.to_string())?;

    // d² = 0 over F2 and Z, grading audit.
    let kh = KhComplex::build(k.diagram(), Ring::F2, Mode::Kh, QRange::ALL).map_err(e)?;
    kh.complex().check_d_squared().map_err(e)?;
    kh.audit_gradings().map_err(e)?;
    let khz = KhComplex::build(k.diagram(), Ring::Z, Mode::Kh, QRange::ALL).map_err(e)?;
    khz.complex().check_d_squared().map_err(e)?;

    // τ² = Id, τd = dτ.
    let tau = tau_chain_map(&k, &kh).map_err(e)?;
    tau.check(kh.complex(), kh.complex()).map_err(e)?;
    ensure!(tau.compose(&tau) == ChainMap::identity(kh.complex()), "τ² ≠ Id");

    // Annular filtration: entries keep k or lower it by two.
    let q = close_quotients(t).map_err(|x| x.to_string())?;
    for d in [&q.k0, &q.k1, &q.kink, &q.reverse_kink] {
        let c = KhComplex::build(d, Ring::F2, Mode::Filtered, QRange::ALL).map_err(e)?;
        c.audit_gradings().map_err(e)?;
        for a in 0..c.len() {
            let ka = c.generator(a).grading.k;
            for &(b, _) in c.complex().diff(a) {
                let kb = c.generator(b as usize).grading.k;
                ensure!(kb == ka || kb == ka - 2, "annular differential moves k by {}", kb - ka);
            }
        }
    }

    // f± audits and the relations on homology.
    let maps = axis_moving_maps(t).map_err(e)?;
    maps.check().map_err(e)?;
    ensure!(maps.f_plus.shift() == F_PLUS_SHIFT && maps.f_minus.shift() == F_MINUS_SHIFT, "f± shifts");
    let rev = maps.reverse().map_err(e)?;
    rev.f_plus.check(maps.k0.complex(), maps.k1.complex()).map_err(e)?;
    rev.f_minus.check(maps.k0.complex(), maps.k1.complex()).map_err(e)?;
    let h1 = F2Homology::compute(maps.k1.complex()).map_err(e)?;
    let h0 = F2Homology::compute(maps.k0.complex()).map_err(e)?;
    let x1 = induced_map(&maps.k1.basepoint_action().map_err(e)?, &h1, &h1).map_err(e)?;
    let x0 = induced_map(&maps.k0.basepoint_action().map_err(e)?, &h0, &h0).map_err(e)?;
    let on1 = |g: &ChainMap, f: &ChainMap| induced_map(&g.compose(f), &h1, &h1).map_err(e);
    let on0 = |g: &ChainMap, f: &ChainMap| induced_map(&g.compose(f), &h0, &h0).map_err(e);
    ensure!(zeros(&on1(&rev.f_plus, &maps.f_plus)?), "f⁺f⁺ ≠ 0 on AKh(K̄₁)");
    ensure!(zeros(&on1(&rev.f_minus, &maps.f_minus)?), "f⁻f⁻ ≠ 0 on AKh(K̄₁)");
    ensure!(on1(&rev.f_plus, &maps.f_minus)? == x1, "f⁺f⁻ ≠ X on AKh(K̄₁)");
    ensure!(on1(&rev.f_minus, &maps.f_plus)? == x1, "f⁻f⁺ ≠ X on AKh(K̄₁)");
    ensure!(zeros(&on0(&maps.f_plus, &rev.f_plus)?), "f⁺f⁺ ≠ 0 on AKh(K̄₀)");
    ensure!(zeros(&on0(&maps.f_minus, &rev.f_minus)?), "f⁻f⁻ ≠ 0 on AKh(K̄₀)");
    ensure!(on0(&maps.f_plus, &rev.f_minus)? == x0, "f⁺f⁻ ≠ X on AKh(K̄₀)");
    ensure!(on0(&maps.f_minus, &rev.f_plus)? == x0, "f⁻f⁺ ≠ X on AKh(K̄₀)");

    // Smith inequality, collapsed Tate = E^∞, monotone pages, the theorem.
    let report = verify_theorem(t, VerifyOptions::default()).map_err(e)?;
    for r in &report.quantum {
        ensure!(r.smith_inequality, "Smith inequality fails at j = {}", r.j);
        ensure!(r.tate_collapsed == r.e_infinity, "collapsed Tate ≠ E^∞ at j = {}", r.j);
        ensure!(non_increasing(&r.ss_page_dims), "pages grow at j = {}", r.j);
        ensure!(r.theorem, "E^∞ ≠ cone target at j = {}", r.j);
    }
    ensure!(report.pass, "verify fails");

    // Euler characteristics: state sums against homology, and UCT against F2.
    let h = F2Homology::compute(kh.complex()).map_err(e)?;
    let chi = Laurent::from_dims(&h.dims());
    ensure!(jones_oracle(k.diagram()) == chi, "state sum ≠ χ(Kh)");
    ensure!(euler_characteristics(k.diagram()).0 == chi, "library state sum ≠ χ(Kh)");
    ensure!(ZHomology::compute(khz.complex()).map_err(e)?.f2_dims() == h.dims(), "UCT mismatch");
    for (d, hd) in [(&q.k1, &h1), (&q.k0, &h0)] {
        let achi = Laurent2::from_dims(&hd.dims());
        ensure!(annular_oracle(d) == achi, "annular state sum ≠ χ(AKh)");
        ensure!(euler_characteristics(d).1 == achi, "library annular state sum ≠ χ(AKh)");
    }
    Ok(())
}

/// Known homology of a random complex: `(free ranks, torsion)` by homological degree.
#[derive(Debug, Default)]
pub struct Truth {
    pub free: BTreeMap<i32, usize>,
    pub torsion: BTreeMap<i32, Vec<u64>>,
    /// Multipliers `m` of the pieces `x → m·y`, keyed by the degree of `x`.
    pub pairs: Vec<(i32, i64)>,
}

/// A complex over Z with known homology: free pieces and pieces `x → m·y`,
/// conjugated by random unimodular changes of basis within each degree that
/// respect `filtration` (`e_b ↦ e_b ± e_a` only when `a` sits no lower than `b`).
pub fn random_z_complex(
    rng: &mut impl Rng,
    pieces: usize,
    filtered: bool,
) -> (khseq::complex::GradedComplex, Vec<i64>, Truth) {
    use khseq::complex::{Annular, GradedComplex};
    let mut grades: Vec<i32> = Vec::new();
    let mut filt: Vec<i64> = Vec::new();
    let mut edges: Vec<(usize, usize, i64)> = Vec::new();
    let mut truth = Truth::default();
    for _ in 0..pieces {
        let i = rng.gen_range(-2..=2);
        let f = if filtered { rng.gen_range(0..4) } else { 0 };
        if rng.gen_bool(0.3) {
            grades.push(i);
            filt.push(f);
            *truth.free.entry(i).or_default() += 1;
        } else {
            let m = *[1i64, 1, 2, 3, 4, 6].choose(rng).unwrap();
            let g = if filtered { f + rng.gen_range(0..3) } else { 0 };
            let x = grades.len();
            grades.extend([i, i - 1]);
            filt.extend([f, g]);
            edges.push((x, x + 1, m));
            if m > 1 {
                truth.torsion.entry(i - 1).or_default().push(m as u64);
            }
            truth.pairs.push((i, m));
        }
    }
    let n = grades.len();
    let mut d = vec![vec![0i64; n]; n];
    for &(a, b, m) in &edges {
        d[b][a] = m;
    }
    for _ in 0..3 * n {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a == b || grades[a] != grades[b] || filt[a] < filt[b] {
            continue;
        }
        let c = if rng.gen_bool(0.5) { 1 } else { -1 };
        // D ↦ P D P⁻¹ with P = 1 + c·E_ab.
        for col in 0..n {
            d[a][col] += c * d[b][col];
        }
        for row in 0..n {
            d[row][b] -= c * d[row][a];
        }
    }
    let diff: Vec<Vec<(u32, i64)>> =
        (0..n).map(|a| (0..n).filter(|&b| d[b][a] != 0).map(|b| (b as u32, d[b][a])).collect()).collect();
    let gr = grades.iter().map(|&i| Grading::new(i, 0, 0)).collect();
    let c = GradedComplex::new(Ring::Z, gr, diff, Annular::Untracked).expect("a complex");
    (c, filt, truth)
}

/// `W − Δ` along random sequences of wraps and unwraps; returns the number of moves made.
pub fn random_wrap_sequences(t: &QuotientTangle, sequences: usize, seed: u64) -> Result<usize, String> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let target = khseq::diagram::diagram_invariants(t).map_err(|e| e.to_string())?.axis_linking_2x;
    let mut moves = 0;
    for _ in 0..sequences {
        let mut cur = t.clone();
        for _ in 0..rng.gen_range(1..=8) {
            let wrap = cur.n_crossings() < 8 && rng.gen_bool(0.5);
            let dir = if wrap { khseq::diagram::WrapDirection::Wrap } else { khseq::diagram::WrapDirection::Unwrap };
            match khseq::diagram::apply_axis_wrap_move(&cur, dir) {
                Ok(next) => cur = next,
                Err(khseq::DiagramError::NotUnwrappable) => continue,
                Err(e) => return Err(e.to_string()),
            }
            moves += 1;
            let inv = khseq::diagram::diagram_invariants(&cur).map_err(|e| e.to_string())?;
            if inv.axis_linking_2x != target {
                return Err(format!("W − Δ changed from {target} to {}", inv.axis_linking_2x));
            }
        }
    }
    Ok(moves)
}

