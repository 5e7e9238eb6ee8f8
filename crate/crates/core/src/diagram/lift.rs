//! Branched double covers of quotient tangles: intravergent diagrams.

use super::annular::AnnularDiagram;
use super::pd::Pd;
use super::tangle::{AxisCrossing, End, QuotientTangle};
use crate::error::DiagramError;

/// A diagram symmetric under rotation by 180° about an axis through one crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntravergentDiagram {
    underlying: AnnularDiagram,
    axis_crossing: usize,
    crossing_partner: Vec<usize>,
    arc_partner: Vec<usize>,
    quotient_crossings: usize,
}

impl IntravergentDiagram {
    /// Validates the involution data against the diagram.
    pub fn new(
        underlying: AnnularDiagram,
        axis_crossing: usize,
        crossing_partner: Vec<usize>,
        arc_partner: Vec<usize>,
    ) -> Result<Self, DiagramError> {
        let pd = underlying.pd();
        let n = pd.n_crossings();
        let bad = |m: &str| Err(DiagramError::Involution(m.to_string()));
        if crossing_partner.len() != n || arc_partner.len() != pd.n_arcs() || axis_crossing >= n {
            return bad("lengths do not match the diagram");
        }
        if n % 2 == 0 {
            return bad("an intravergent diagram has an odd number of crossings");
        }
        for c in 0..n {
            let p = crossing_partner[c];
            if p >= n || crossing_partner[p] != c || (p == c) != (c == axis_crossing) {
                return bad("crossing pairing is not a fixed-point-free involution off the axis");
            }
            let (x, y) = (pd.crossings()[c], pd.crossings()[p]);
            let shift = if c == axis_crossing { 2 } else { 0 };
            for s in 0..4 {
                if y[(s + shift) % 4] != arc_partner[x[s]] {
                    return bad("rotation does not carry crossings to their partners");
                }
            }
        }
        for (a, &b) in arc_partner.iter().enumerate() {
            if b >= arc_partner.len() || arc_partner[b] != a || a == b {
                return bad("arc pairing is not a fixed-point-free involution");
            }
        }
        Ok(IntravergentDiagram {
            quotient_crossings: (n - 1) / 2,
            underlying,
            axis_crossing,
            crossing_partner,
            arc_partner,
        })
    }

    pub fn diagram(&self) -> &AnnularDiagram {
        &self.underlying
    }

    pub fn axis_crossing(&self) -> usize {
        self.axis_crossing
    }

    pub fn crossing_partner(&self) -> &[usize] {
        &self.crossing_partner
    }

    pub fn arc_partner(&self) -> &[usize] {
        &self.arc_partner
    }

    /// Crossing count `N`.
    pub fn n_crossings(&self) -> usize {
        self.underlying.n_crossings()
    }

    /// Crossing count `N̄` of the quotient.
    pub fn quotient_crossings(&self) -> usize {
        self.quotient_crossings
    }

    /// Image of a cube vertex under the rotation.
    pub fn rotate_vertex(&self, v: u64) -> u64 {
        let mut w = 0;
        for c in 0..self.n_crossings() {
            if v >> c & 1 == 1 {
                w |= 1 << self.crossing_partner[c];
            }
        }
        w
    }
}

/// Index of the lifted copy of tangle arc `a` whose sheet at its tail is `sheet`.
#[inline]
pub fn lifted_arc(a: usize, sheet: usize) -> usize {
    2 * a + sheet
}

/// Lifts a quotient tangle to its intravergent diagram.
///
/// Tangle crossing `c` lifts to crossings `2c` (sheet 0) and `2c+1` (sheet 1);
/// the on-axis crossing is last.
pub fn lift_intravergent(t: &QuotientTangle) -> Result<IntravergentDiagram, DiagramError> {
    let nb = t.n_crossings();
    let hits = t.ray_hits();
    let mut crossings = Vec::with_capacity(2 * nb + 1);
    for (c, x) in t.crossings().iter().enumerate() {
        for sheet in 0..2 {
            let mut y = [0; 4];
            for s in 0..4 {
                let a = x[s];
                let at_head = matches!(t.ends(a)[1], End::At(p) if p.crossing == c && p.slot as usize == s);
                let tail_sheet = if at_head { sheet ^ (hits[a] as usize & 1) } else { sheet };
                y[s] = lifted_arc(a, tail_sheet);
            }
            crossings.push(y);
        }
    }
    let (first, last) = (0, t.last_arc());
    let e1 = |s: usize| lifted_arc(first, s);
    let e2 = |s: usize| lifted_arc(last, s ^ (hits[last] as usize & 1));
    crossings.push(match t.axis() {
        AxisCrossing::UnderFirst => [e1(0), e2(0), e1(1), e2(1)],
        AxisCrossing::OverFirst => [e2(0), e1(1), e2(1), e1(0)],
    });
    let n_arcs = 2 * t.n_arcs();
    let pd = Pd::new(crossings, n_arcs)?;
    let names = (0..n_arcs).map(|a| format!("{}.{}", t.arc_name(a / 2), a % 2)).collect();
    let sources = (0..n_arcs as u32).map(|a| vec![a]).collect();
    let underlying = AnnularDiagram::new(pd, vec![0; n_arcs], None, names, sources)?;
    let mut crossing_partner: Vec<usize> = (0..2 * nb).map(|c| c ^ 1).collect();
    crossing_partner.push(2 * nb);
    let arc_partner = (0..n_arcs).map(|a| a ^ 1).collect();
    IntravergentDiagram::new(underlying, 2 * nb, crossing_partner, arc_partner)
}
