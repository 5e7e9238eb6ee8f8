//! The rotation involution on the Khovanov complex of an intravergent diagram.

use crate::complex::{ChainMap, Grading, Ring};
use crate::diagram::{IntravergentDiagram, Resolution};
use crate::error::{ComplexError, DiagramError};
use crate::khovanov::KhComplex;

/// Circle of the rotated resolution carrying each circle of `res`.
fn circle_bijection(k: &IntravergentDiagram, res: &Resolution, image: &Resolution) -> Result<Vec<usize>, DiagramError> {
    let partner = k.arc_partner();
    let mut map = Vec::with_capacity(res.circles.len());
    let mut hit = vec![false; image.circles.len()];
    for arcs in &res.circles {
        let t = image.circle_of_arc[partner[arcs[0]]];
        if arcs.iter().any(|&a| image.circle_of_arc[partner[a]] != t) || std::mem::replace(&mut hit[t], true) {
            return Err(DiagramError::Involution("rotation does not carry circles to circles".into()));
        }
        map.push(t);
    }
    if hit.iter().any(|h| !h) {
        return Err(DiagramError::Involution("rotation misses a circle".into()));
    }
    Ok(map)
}

/// `τ` on `CKh(K; F2)`: the vertex is rotated and labels move with their circles.
pub fn tau_chain_map(k: &IntravergentDiagram, c: &KhComplex) -> Result<ChainMap, ComplexError> {
    if c.complex().ring() != Ring::F2 {
        return Err(ComplexError::Ring("the involution is built over F2".into()));
    }
    if c.diagram() != k.diagram() {
        return Err(DiagramError::Involution("complex was built from another diagram".into()).into());
    }
    let mut cache: std::collections::HashMap<u64, Vec<usize>> = std::collections::HashMap::new();
    let mut entries = Vec::with_capacity(c.len());
    for g in c.generators() {
        let w = k.rotate_vertex(g.vertex);
        let map = match cache.get(&g.vertex) {
            Some(m) => m,
            None => {
                let m = circle_bijection(k, c.resolution(g.vertex), c.resolution(w))?;
                cache.entry(g.vertex).or_insert(m)
            }
        };
        let mut labels = 0u64;
        for (t, &u) in map.iter().enumerate() {
            if g.labels >> t & 1 == 1 {
                labels |= 1 << u;
            }
        }
        let b = c
            .find(w, labels)
            .ok_or_else(|| DiagramError::Involution("rotated generator leaves the complex".into()))?;
        entries.push(vec![(b, 1)]);
    }
    Ok(ChainMap::new(Ring::F2, Grading::default(), c.len(), entries))
}
