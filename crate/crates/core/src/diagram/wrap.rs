//! The move that rotates the overpass once around the underpass at the axis.

use std::collections::HashSet;

use super::tangle::{AxisCrossing, QuotientTangle};
use crate::error::DiagramError;

/// Direction of the axis move.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WrapDirection {
    Wrap,
    Unwrap,
}

fn fresh_name(used: &HashSet<String>) -> String {
    (1..).map(|i| format!("w{i}")).find(|n| !used.contains(n)).expect("infinite supply")
}

struct Named {
    crossings: Vec<[String; 4]>,
    ray: Vec<(String, u32)>,
}

fn named(t: &QuotientTangle) -> Named {
    let name = |a: usize| t.arc_name(a).to_string();
    Named {
        crossings: t.crossings().iter().map(|x| x.map(name)).collect(),
        ray: (0..t.n_arcs()).map(|a| (name(a), t.ray_hits()[a])).collect(),
    }
}

/// Applies the axis move: wrapping lowers `Δ` and `W` by one each, unwrapping undoes a wrap.
pub fn apply_axis_wrap_move(t: &QuotientTangle, direction: WrapDirection) -> Result<QuotientTangle, DiagramError> {
    match direction {
        WrapDirection::Wrap => wrap(t),
        WrapDirection::Unwrap => unwrap(t),
    }
}

fn wrap(t: &QuotientTangle) -> Result<QuotientTangle, DiagramError> {
    let mut used: HashSet<String> = (0..t.n_arcs()).map(|a| t.arc_name(a).to_string()).collect();
    used.extend(t.endpoint_names().iter().cloned());
    let first_tip = fresh_name(&used);
    used.insert(first_tip.clone());
    let (first_far, last_far) = (t.arc_name(0).to_string(), t.arc_name(t.last_arc()).to_string());
    let last_tip = if t.n_crossings() == 0 { t.endpoint_names()[1].clone() } else { fresh_name(&used) };
    let Named { mut crossings, mut ray } = named(t);
    let (new, tip_hits) = match t.axis() {
        // e1 is the overpass: [B_far, T_tip, B_tip, T_far].
        AxisCrossing::OverFirst => (
            [last_far.clone(), first_tip.clone(), last_tip.clone(), first_far.clone()],
            (1, 0),
        ),
        // e1 is the underpass: [B_tip, T_far, B_far, T_tip]; the far overpass gains the ray hit.
        AxisCrossing::UnderFirst => {
            let lf = ray.iter_mut().find(|(a, _)| *a == last_far).expect("last arc");
            lf.1 += 1;
            (
                [first_tip.clone(), last_far.clone(), first_far.clone(), last_tip.clone()],
                (0, 0),
            )
        }
    };
    crossings.push(new);
    ray.push((first_tip.clone(), tip_hits.0));
    ray.push((last_tip.clone(), tip_hits.1));
    QuotientTangle::from_parts(&crossings, t.axis(), [first_tip, last_tip], &ray)
}

fn unwrap(t: &QuotientTangle) -> Result<QuotientTangle, DiagramError> {
    let m = t.n_arcs();
    if t.n_crossings() == 0 || m < 3 {
        return Err(DiagramError::NotUnwrappable);
    }
    let (first, last) = (0, t.last_arc());
    let (near_first, near_last) = (1, m - 2);
    let hits = t.ray_hits();
    let c = t
        .crossings()
        .iter()
        .position(|x| match t.axis() {
            AxisCrossing::OverFirst => *x == [near_last, first, last, near_first],
            AxisCrossing::UnderFirst => *x == [first, near_last, near_first, last],
        })
        .ok_or(DiagramError::NotUnwrappable)?;
    let (tip_hits, far_extra) = match t.axis() {
        AxisCrossing::OverFirst => ((1, 0), 0),
        AxisCrossing::UnderFirst => ((0, 0), 1),
    };
    if (hits[first], hits[last]) != tip_hits || hits[near_last] < far_extra {
        return Err(DiagramError::NotUnwrappable);
    }
    let Named { mut crossings, mut ray } = named(t);
    crossings.remove(c);
    ray[near_last].1 -= far_extra;
    let keep = |i: usize| i != first && i != last;
    let ray: Vec<(String, u32)> = ray.into_iter().enumerate().filter(|(i, _)| keep(*i)).map(|(_, r)| r).collect();
    let endpoints = if crossings.is_empty() {
        [t.arc_name(near_first).to_string(), t.arc_name(last).to_string()]
    } else {
        [t.arc_name(near_first).to_string(), t.arc_name(near_last).to_string()]
    };
    QuotientTangle::from_parts(&crossings, t.axis(), endpoints, &ray)
}
