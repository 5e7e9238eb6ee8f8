//! Annular link diagrams and their resolutions.

use super::pd::{union_find_circles, Pd};
use crate::error::DiagramError;

/// A closed diagram in the annulus.
///
/// The annular structure is a count of transverse intersections of every arc
/// with a fixed ray from the axis to infinity; a resolution circle is
/// essential exactly when its total count is odd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnularDiagram {
    pd: Pd,
    ray_hits: Vec<u32>,
    basepoint: Option<usize>,
    names: Vec<String>,
    sources: Vec<Vec<u32>>,
}

/// A complete resolution at a vertex of the cube.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub vertex: u64,
    /// Arcs of every circle in cyclic order; circles are numbered by their lowest arc.
    pub circles: Vec<Vec<usize>>,
    pub circle_of_arc: Vec<usize>,
    pub essential: Vec<bool>,
    pub basepoint_circle: Option<usize>,
}

impl AnnularDiagram {
    /// `sources[a]` lists labels of the tangle arcs that make up arc `a`; they
    /// identify resolution circles across diagrams built from the same tangle.
    pub fn new(
        pd: Pd,
        ray_hits: Vec<u32>,
        basepoint: Option<usize>,
        names: Vec<String>,
        sources: Vec<Vec<u32>>,
    ) -> Result<Self, DiagramError> {
        let n = pd.n_arcs();
        if ray_hits.len() != n || names.len() != n || sources.len() != n {
            return Err(DiagramError::NotPlanar("per-arc data has the wrong length".into()));
        }
        if basepoint.is_some_and(|b| b >= n) {
            return Err(DiagramError::NotPlanar("basepoint arc out of range".into()));
        }
        pd.check_planar()?;
        Ok(AnnularDiagram { pd, ray_hits, basepoint, names, sources })
    }

    /// A diagram with no annular data.
    pub fn planar(pd: Pd) -> Result<Self, DiagramError> {
        let n = pd.n_arcs();
        let names = (0..n).map(|a| a.to_string()).collect();
        let sources = (0..n as u32).map(|a| vec![a]).collect();
        Self::new(pd, vec![0; n], None, names, sources)
    }

    pub fn pd(&self) -> &Pd {
        &self.pd
    }

    pub fn n_crossings(&self) -> usize {
        self.pd.n_crossings()
    }

    pub fn n_arcs(&self) -> usize {
        self.pd.n_arcs()
    }

    pub fn ray_hits(&self) -> &[u32] {
        &self.ray_hits
    }

    pub fn basepoint(&self) -> Option<usize> {
        self.basepoint
    }

    pub fn arc_name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn sources(&self, a: usize) -> &[u32] {
        &self.sources[a]
    }

    /// Whether any arc meets the ray.
    pub fn is_annular(&self) -> bool {
        self.ray_hits.iter().any(|&h| h > 0)
    }

    /// Parity of ray hits per arc, packed for fast circle essentiality.
    pub fn odd_arcs(&self) -> Vec<bool> {
        self.ray_hits.iter().map(|h| h % 2 == 1).collect()
    }

    /// Resolves every crossing according to the bits of `v` (bit `c` for crossing `c`).
    pub fn resolve(&self, v: &[bool]) -> Result<Resolution, DiagramError> {
        if v.len() != self.n_crossings() {
            return Err(DiagramError::DimensionMismatch { expected: self.n_crossings(), got: v.len() });
        }
        let state = v.iter().enumerate().fold(0u64, |acc, (i, &b)| acc | (b as u64) << i);
        Ok(self.resolve_state(state))
    }

    pub fn resolve_state(&self, state: u64) -> Resolution {
        let (circles, circle_of_arc) = self.pd.trace_circles(state);
        let essential = circles
            .iter()
            .map(|c| c.iter().map(|&a| self.ray_hits[a]).sum::<u32>() % 2 == 1)
            .collect();
        debug_assert_eq!(union_find_circles(&self.pd, state), circle_of_arc);
        Resolution {
            vertex: state,
            basepoint_circle: self.basepoint.map(|b| circle_of_arc[b]),
            circles,
            circle_of_arc,
            essential,
        }
    }

    /// Face to the left of each directed arc, plus the face count.
    pub fn faces(&self) -> (Vec<usize>, usize) {
        self.pd.faces()
    }

    /// Locates the face at infinity from the face containing the axis.
    ///
    /// The ray runs from `origin` to infinity, so the faces it joins are the
    /// boundary of the mod-2 chain of odd-hit arcs.
    pub fn infinity_face(&self, origin: usize) -> Result<usize, DiagramError> {
        let (face, nf) = self.faces();
        let mut boundary = vec![false; nf];
        for a in 0..self.n_arcs() {
            if self.ray_hits[a] % 2 == 1 && self.pd.ends(a).is_some() {
                let (l, r) = (face[2 * a], face[2 * a + 1]);
                if l != r {
                    boundary[l] ^= true;
                    boundary[r] ^= true;
                }
            }
        }
        let faces: Vec<usize> = (0..nf).filter(|&f| boundary[f]).collect();
        match faces.as_slice() {
            [] => Ok(origin),
            [a, b] if *a == origin => Ok(*b),
            [a, b] if *b == origin => Ok(*a),
            _ => Err(DiagramError::InconsistentRay),
        }
    }

    /// Winding number of every face relative to the face at infinity, for the stored orientation.
    pub fn face_windings(&self, infinity: usize) -> Vec<i64> {
        let (face, nf) = self.faces();
        let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); nf];
        for a in 0..self.n_arcs() {
            if self.pd.ends(a).is_some() {
                let (l, r) = (face[2 * a], face[2 * a + 1]);
                adj[r].push((l, 1));
                adj[l].push((r, -1));
            }
        }
        let mut w = vec![i64::MIN; nf];
        w[infinity] = 0;
        let mut queue = std::collections::VecDeque::from([infinity]);
        while let Some(f) = queue.pop_front() {
            for &(g, dw) in &adj[f] {
                if w[g] == i64::MIN {
                    w[g] = w[f] + dw;
                    queue.push_back(g);
                }
            }
        }
        w
    }

    /// Essentiality of resolution circles recomputed from the planar embedding.
    ///
    /// A shortest dual path from the axis face to the face at infinity meets an
    /// embedded circle an odd number of times exactly when the circle separates them.
    pub fn essential_by_faces(&self, res: &Resolution, origin: usize) -> Result<Vec<bool>, DiagramError> {
        let infinity = self.infinity_face(origin)?;
        let (face, nf) = self.faces();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nf];
        for a in 0..self.n_arcs() {
            if self.pd.ends(a).is_some() {
                let (l, r) = (face[2 * a], face[2 * a + 1]);
                adj[l].push((r, a));
                adj[r].push((l, a));
            }
        }
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; nf];
        let mut seen = vec![false; nf];
        seen[origin] = true;
        let mut queue = std::collections::VecDeque::from([origin]);
        while let Some(f) = queue.pop_front() {
            for &(g, a) in &adj[f] {
                if !seen[g] {
                    seen[g] = true;
                    prev[g] = Some((f, a));
                    queue.push_back(g);
                }
            }
        }
        let mut count = vec![0usize; res.circles.len()];
        let mut f = infinity;
        while let Some((g, a)) = prev[f] {
            count[res.circle_of_arc[a]] += 1;
            f = g;
        }
        // Crossingless loops are nested around nothing but the axis.
        for (c, circ) in res.circles.iter().enumerate() {
            if circ.len() == 1 && self.pd.ends(circ[0]).is_none() {
                count[c] = (self.ray_hits[circ[0]] % 2) as usize;
            }
        }
        Ok(count.into_iter().map(|n| n % 2 == 1).collect())
    }
}

/// Circle count of a Kauffman state, by union-find.
pub fn state_circle_count(d: &AnnularDiagram, state: u64) -> usize {
    union_find_circles(d.pd(), state).into_iter().max().map_or(0, |m| m + 1)
}
