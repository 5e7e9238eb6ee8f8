//! Closing a quotient tangle into annular knots, and the diagram invariants.

use serde::{Deserialize, Serialize};

use super::annular::AnnularDiagram;
use super::lift::lift_intravergent;
use super::pd::{Pd, Slot};
use super::tangle::{AxisCrossing, End, QuotientTangle};
use crate::error::DiagramError;

/// Tangle-arc label carried by the extra loop of the kink closure.
pub const LOOP_SOURCE: u32 = u32::MAX;

/// The three closures of a quotient tangle.
#[derive(Clone, Debug)]
pub struct Quotients {
    /// Quotient of the 0-resolution of the on-axis crossing.
    pub k0: AnnularDiagram,
    /// Quotient of the 1-resolution, without the extra essential circle.
    pub k1: AnnularDiagram,
    /// Closure through a kink whose 1-resolution is `k1` plus an essential circle and whose 0-resolution is `k0`.
    pub kink: AnnularDiagram,
    /// Kink crossing index in `kink` (always the last crossing).
    pub kink_crossing: usize,
    /// Arc of `kink` forming the essential circle of its 1-resolution.
    pub kink_loop: usize,
    /// Kink closure built from `k0` instead, moving the basepoint back across the axis.
    pub reverse_kink: AnnularDiagram,
    pub reverse_loop: usize,
}

/// Crossing counts, signs and winding data of a tangle and its lift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramInvariants {
    pub n: usize,
    pub n_bar: usize,
    pub n_minus: usize,
    pub n_bar_minus: usize,
    pub delta: i64,
    /// Winding number of the quotient of the 0-resolution, canonically oriented.
    pub w: i64,
    /// Winding number of the quotient of the 1-resolution.
    pub w1: i64,
    /// `W − Δ`, twice the axis linking number.
    pub axis_linking_2x: i64,
}

/// Ray hits of the closing arc that turns the tangle into each quotient.
///
/// Returns `(hits for K̄₀, hits for K̄₁)`; the closing arc of the first
/// endpoint `e1` to `e2` that stays clear of the ray is the 1-closure exactly
/// when `e1` is the overpass.
fn closure_hits(t: &QuotientTangle) -> (u32, u32) {
    match t.axis() {
        AxisCrossing::OverFirst => (1, 0),
        AxisCrossing::UnderFirst => (0, 1),
    }
}

/// Closes the tangle with a closing arc that meets the ray `extra` times.
fn close(t: &QuotientTangle, extra: u32) -> Result<AnnularDiagram, DiagramError> {
    let m = t.n_arcs();
    let last = t.last_arc();
    let hits = t.ray_hits();
    if t.n_crossings() == 0 {
        let pd = Pd::new(Vec::new(), 1)?;
        return AnnularDiagram::new(pd, vec![hits[0] + extra], Some(0), vec![t.arc_name(0).to_string()], vec![vec![0]]);
    }
    // The last arc merges into arc 0 through the closing arc.
    let remap = |a: usize| if a == last { 0 } else { a };
    let crossings: Vec<[usize; 4]> = t.crossings().iter().map(|x| x.map(remap)).collect();
    let head = match t.ends(0)[1] {
        End::At(s) => s,
        End::Axis => unreachable!("arc 0 meets a crossing"),
    };
    let pd = Pd::oriented(crossings, m - 1, 0, head)?;
    let mut ray: Vec<u32> = hits[..m - 1].to_vec();
    ray[0] += hits[last] + extra;
    let mut names: Vec<String> = (0..m - 1).map(|a| t.arc_name(a).to_string()).collect();
    names[0] = format!("{}+{}", t.arc_name(last), t.arc_name(0));
    let mut sources: Vec<Vec<u32>> = (0..m as u32 - 1).map(|a| vec![a]).collect();
    sources[0].push(last as u32);
    AnnularDiagram::new(pd, ray, Some(0), names, sources)
}

/// Closes the tangle through a kink at the axis built on the closing arc with `extra` hits.
///
/// Kink slots are `[arc 0, loop, loop, last arc]`.
fn kink_closure(t: &QuotientTangle, extra: u32) -> Result<(AnnularDiagram, usize), DiagramError> {
    let m = t.n_arcs();
    let last = t.last_arc();
    let hits = t.ray_hits();
    let nb = t.n_crossings();
    let loop_arc = m;
    let mut crossings: Vec<[usize; 4]> = t.crossings().to_vec();
    crossings.push([0, loop_arc, loop_arc, last]);
    let head = if nb == 0 {
        Slot::new(0, 3)
    } else {
        match t.ends(0)[1] {
            End::At(s) => s,
            End::Axis => unreachable!(),
        }
    };
    let pd = Pd::oriented(crossings, m + 1, 0, head)?;
    let mut ray: Vec<u32> = hits.to_vec();
    ray[0] += extra;
    ray.push(1);
    let mut names: Vec<String> = (0..m).map(|a| t.arc_name(a).to_string()).collect();
    names.push("U".into());
    let mut sources: Vec<Vec<u32>> = (0..m as u32).map(|a| vec![a]).collect();
    sources.push(vec![LOOP_SOURCE]);
    Ok((AnnularDiagram::new(pd, ray, Some(0), names, sources)?, loop_arc))
}

/// Builds `K̄₀`, `K̄₁` and the kink closure `L″` of a tangle.
pub fn close_quotients(t: &QuotientTangle) -> Result<Quotients, DiagramError> {
    let (h0, h1) = closure_hits(t);
    let k0 = close(t, h0)?;
    let k1 = close(t, h1)?;
    let (kink, kink_loop) = kink_closure(t, h1)?;
    let (reverse_kink, reverse_loop) = kink_closure(t, h0)?;
    Ok(Quotients { kink_crossing: t.n_crossings(), k0, k1, kink, kink_loop, reverse_kink, reverse_loop })
}

/// Face of a closure containing the axis.
///
/// The closing arc is arc 0, oriented from the second endpoint back to the
/// first. A closing arc without ray hits runs counterclockwise around the
/// axis from `e1` to `e2`, so the axis lies on its right under this
/// orientation; a closing arc crossing the ray has it on the left.
pub fn axis_face(d: &AnnularDiagram, closing_hits: u32) -> usize {
    let (face, _) = d.faces();
    if closing_hits % 2 == 0 {
        face[1]
    } else {
        face[0]
    }
}

/// Winding number of a closure about the axis, in traversal orientation.
fn traversal_winding(d: &AnnularDiagram, closing_hits: u32) -> Result<i64, DiagramError> {
    if d.n_crossings() == 0 {
        if d.ray_hits()[0] % 2 == 0 {
            return Ok(0);
        }
        return Ok(if closing_hits % 2 == 1 { 1 } else { -1 });
    }
    let origin = axis_face(d, closing_hits);
    let inf = d.infinity_face(origin)?;
    Ok(d.face_windings(inf)[origin])
}

/// Winding numbers `(W(K̄₀), W(K̄₁))` in the canonical orientation (away from the axis along the overpass).
pub fn quotient_windings(t: &QuotientTangle, q: &Quotients) -> Result<(i64, i64), DiagramError> {
    let (h0, h1) = closure_hits(t);
    let sign = match t.axis() {
        AxisCrossing::OverFirst => 1,
        AxisCrossing::UnderFirst => -1,
    };
    Ok((sign * traversal_winding(&q.k0, h0)?, sign * traversal_winding(&q.k1, h1)?))
}

/// Axis face of each closure, for the geometric essentiality re-check.
pub fn quotient_axis_faces(t: &QuotientTangle, q: &Quotients) -> (Option<usize>, Option<usize>) {
    let (h0, h1) = closure_hits(t);
    if t.n_crossings() == 0 {
        return (None, None);
    }
    (Some(axis_face(&q.k0, h0)), Some(axis_face(&q.k1, h1)))
}

/// Computes `N`, `N̄`, `N₋`, `N̄₋`, `Δ`, `W` and `W − Δ`.
pub fn diagram_invariants(t: &QuotientTangle) -> Result<DiagramInvariants, DiagramError> {
    let k = lift_intravergent(t)?;
    let n_minus = k.diagram().pd().n_negative();
    let n_bar_minus = t.crossing_signs().iter().filter(|&&s| s < 0).count();
    let q = close_quotients(t)?;
    let (w, w1) = quotient_windings(t, &q)?;
    let delta = n_minus as i64 - 2 * n_bar_minus as i64;
    Ok(DiagramInvariants {
        n: k.n_crossings(),
        n_bar: t.n_crossings(),
        n_minus,
        n_bar_minus,
        delta,
        w,
        w1,
        axis_linking_2x: w - delta,
    })
}
