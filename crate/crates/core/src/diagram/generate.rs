//! Building quotient tangles from ordinary knot diagrams.

use super::pd::{Pd, Slot};
use super::tangle::{AxisCrossing, QuotientTangle};
use crate::error::DiagramError;

/// Side of the axis arc the reference ray leaves from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RaySide {
    Left,
    Right,
}

impl Pd {
    /// Closure of a braid word; `k` stands for `σ_k` and `-k` for its inverse (`k ≥ 1`).
    ///
    /// Strands run upward; a positive generator passes the left strand over the right one.
    pub fn braid_closure(word: &[i32]) -> Result<Pd, DiagramError> {
        if word.contains(&0) {
            return Err(DiagramError::NotPlanar("braid generators are nonzero".into()));
        }
        let strands = word.iter().map(|g| g.unsigned_abs() as usize).max().map_or(1, |m| m + 1);
        let mut current: Vec<usize> = (0..strands).collect();
        let mut next_arc = strands;
        let mut crossings = Vec::with_capacity(word.len());
        for &g in word {
            let i = g.unsigned_abs() as usize - 1;
            let (l, r) = (current[i], current[i + 1]);
            let (nl, nr) = (next_arc, next_arc + 1);
            next_arc += 2;
            // Slots counterclockwise from the incoming underpass.
            crossings.push(if g > 0 { [r, nr, nl, l] } else { [l, r, nr, nl] });
            current[i] = nl;
            current[i + 1] = nr;
        }
        // Close up: the top arc at each position is the bottom arc there.
        let mut label: Vec<usize> = (0..next_arc).collect();
        for (p, &a) in current.iter().enumerate() {
            label[a] = p;
        }
        let mut dense = vec![usize::MAX; next_arc];
        let mut count = 0;
        for x in crossings.iter_mut() {
            for a in x.iter_mut() {
                let l = label[*a];
                if dense[l] == usize::MAX {
                    dense[l] = count;
                    count += 1;
                }
                *a = dense[l];
            }
        }
        if count != next_arc - strands {
            return Err(DiagramError::NotPlanar("every strand must meet a crossing".into()));
        }
        Pd::new(crossings, count)
    }
}

impl QuotientTangle {
    /// Cuts an oriented knot diagram open at the axis, placed on `axis_arc`.
    ///
    /// The ray leaves the axis into the face on `side` of `axis_arc` and then
    /// crosses the arcs listed in `ray_path` in order; each must border the
    /// face the ray is in, and the axis arc itself may not be crossed.
    pub fn from_knot_diagram(
        pd: &Pd,
        axis_arc: usize,
        side: RaySide,
        ray_path: &[usize],
        axis: AxisCrossing,
    ) -> Result<QuotientTangle, DiagramError> {
        if pd.components().len() != 1 {
            return Err(DiagramError::NotPlanar("a quotient tangle has one component".into()));
        }
        let [tail, head] = pd.ends(axis_arc).ok_or(DiagramError::UnknownArc(axis_arc.to_string()))?;
        let (face, _) = pd.faces();
        let mut here = match side {
            RaySide::Left => face[2 * axis_arc],
            RaySide::Right => face[2 * axis_arc + 1],
        };
        let mut hits = vec![0u32; pd.n_arcs()];
        for &a in ray_path {
            if a == axis_arc || a >= pd.n_arcs() {
                return Err(DiagramError::InconsistentRay);
            }
            let (l, r) = (face[2 * a], face[2 * a + 1]);
            here = if here == l {
                r
            } else if here == r {
                l
            } else {
                return Err(DiagramError::InconsistentRay);
            };
            hits[a] += 1;
        }
        let before = format!("a{axis_arc}i");
        let after = format!("a{axis_arc}o");
        let name = |c: usize, s: usize, a: usize| -> String {
            if a != axis_arc {
                format!("a{a}")
            } else if Slot::new(c, s as u8) == tail {
                before.clone()
            } else {
                debug_assert_eq!(Slot::new(c, s as u8), head);
                after.clone()
            }
        };
        let crossings: Vec<[String; 4]> = pd
            .crossings()
            .iter()
            .enumerate()
            .map(|(c, x)| [0, 1, 2, 3].map(|s| name(c, s, x[s])))
            .collect();
        let endpoints = match side {
            RaySide::Left => [before, after],
            RaySide::Right => [after, before],
        };
        let ray: Vec<(String, u32)> =
            (0..pd.n_arcs()).filter(|&a| hits[a] > 0).map(|a| (format!("a{a}"), hits[a])).collect();
        QuotientTangle::from_parts(&crossings, axis, endpoints, &ray)
    }
}
