//! The cube of resolutions.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{Annular, ChainMap, GradedComplex, Grading, Ring};
use crate::diagram::{AnnularDiagram, Resolution};
use crate::error::ComplexError;

/// Which chain complex of a diagram to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// `CKh`, ignoring the annulus.
    Kh,
    /// `CKh` with the annular filtration recorded.
    Filtered,
    /// The associated graded complex `ACKh`.
    Annular,
}

/// Inclusive range of quantum gradings to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QRange {
    pub min: i32,
    pub max: i32,
}

impl QRange {
    pub const ALL: QRange = QRange { min: i32::MIN, max: i32::MAX };

    pub fn contains(&self, j: i32) -> bool {
        self.min <= j && j <= self.max
    }
}

/// A vertex of the cube with labels on its circles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KhGenerator {
    pub vertex: u64,
    /// Bit `t` is set when circle `t` is labeled `X`.
    pub labels: u64,
    pub grading: Grading,
}

/// Per-diagram data entering the grading formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GradingData {
    pub n: usize,
    pub n_minus: usize,
}

impl GradingData {
    pub fn of(d: &AnnularDiagram) -> Self {
        GradingData { n: d.n_crossings(), n_minus: d.pd().n_negative() }
    }

    /// `(i, j, k)` of a labeled resolution.
    pub fn grading(&self, res: &Resolution, labels: u64) -> Grading {
        let v = res.vertex.count_ones() as i32;
        let c = res.circles.len() as i32;
        let x = labels.count_ones() as i32;
        let (n, nm) = (self.n as i32, self.n_minus as i32);
        let mut k = 0;
        for (t, &e) in res.essential.iter().enumerate() {
            if e {
                k += if labels >> t & 1 == 1 { -1 } else { 1 };
            }
        }
        Grading::new(v - nm, n - 3 * nm + v + x - (c - x), k)
    }
}

/// The Khovanov complex of a diagram with its generator bookkeeping.
#[derive(Clone, Debug)]
pub struct KhComplex {
    diagram: AnnularDiagram,
    mode: Mode,
    data: GradingData,
    resolutions: Vec<Resolution>,
    generators: Vec<KhGenerator>,
    index: HashMap<(u64, u64), u32>,
    complex: GradedComplex,
}

/// How an edge of the cube treats circles.
struct Edge {
    target: u64,
    /// Source circle of each uninvolved target circle, `usize::MAX` for involved ones.
    from: Vec<usize>,
    kind: EdgeKind,
    sign: i64,
}

enum EdgeKind {
    /// Source circles `a`, `b` merge to target circle `m`.
    Merge { a: usize, b: usize, m: usize },
    /// Source circle `a` splits into target circles `m1`, `m2`.
    Split { a: usize, m1: usize, m2: usize },
}

fn edge(d: &AnnularDiagram, resolutions: &[Resolution], v: u64, c: usize) -> Edge {
    let w = v ^ (1 << c);
    let (rv, rw) = (&resolutions[v as usize], &resolutions[w as usize]);
    let x = d.pd().crossings()[c];
    let (v0, v1) = (rv.circle_of_arc[x[0]], rv.circle_of_arc[x[1]]);
    let (w0, w2) = (rw.circle_of_arc[x[0]], rw.circle_of_arc[x[2]]);
    let mut from: Vec<usize> = rw.circles.iter().map(|arcs| rv.circle_of_arc[arcs[0]]).collect();
    let kind = if v0 != v1 {
        debug_assert_eq!(w0, w2);
        from[w0] = usize::MAX;
        EdgeKind::Merge { a: v0, b: v1, m: w0 }
    } else {
        debug_assert_ne!(w0, w2);
        from[w0] = usize::MAX;
        from[w2] = usize::MAX;
        EdgeKind::Split { a: v0, m1: w0, m2: w2 }
    };
    let sign = if (v & ((1u64 << c) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
    Edge { target: w, from, kind, sign }
}

impl Edge {
    /// Images of a labeling under the edge map, with coefficients.
    fn apply(&self, labels: u64, mut emit: impl FnMut(u64, i64)) {
        let mut base = 0u64;
        for (t, &s) in self.from.iter().enumerate() {
            if s != usize::MAX && labels >> s & 1 == 1 {
                base |= 1 << t;
            }
        }
        match self.kind {
            EdgeKind::Merge { a, b, m } => match (labels >> a & 1, labels >> b & 1) {
                (0, 0) => emit(base, self.sign),
                (1, 1) => {}
                _ => emit(base | 1 << m, self.sign),
            },
            EdgeKind::Split { a, m1, m2 } => {
                if labels >> a & 1 == 0 {
                    emit(base | 1 << m2, self.sign);
                    emit(base | 1 << m1, self.sign);
                } else {
                    emit(base | 1 << m1 | 1 << m2, self.sign);
                }
            }
        }
    }
}

impl KhComplex {
    /// Builds the complex in the quantum gradings of `q`, over `ring`.
    ///
    /// Generators are ordered by vertex, then labeling.
    pub fn build(d: &AnnularDiagram, ring: Ring, mode: Mode, q: QRange) -> Result<Self, ComplexError> {
        let n = d.n_crossings();
        if n > 24 {
            return Err(crate::error::DiagramError::TooLarge(n).into());
        }
        let data = GradingData::of(d);
        let resolutions: Vec<Resolution> = (0..1u64 << n).into_par_iter().map(|v| d.resolve_state(v)).collect();
        let mut generators = Vec::new();
        for res in &resolutions {
            let c = res.circles.len();
            let base = data.grading(res, 0).j;
            for labels in 0..1u64 << c {
                let j = base + 2 * labels.count_ones() as i32;
                if q.contains(j) {
                    generators.push(KhGenerator { vertex: res.vertex, labels, grading: data.grading(res, labels) });
                }
            }
        }
        let index: HashMap<(u64, u64), u32> =
            generators.iter().enumerate().map(|(n, g)| ((g.vertex, g.labels), n as u32)).collect();
        let mut ranges: Vec<(usize, usize)> = Vec::new();
        let mut lo = 0;
        for g in 1..=generators.len() {
            if g == generators.len() || generators[g].vertex != generators[lo].vertex {
                ranges.push((lo, g));
                lo = g;
            }
        }
        let diff: Vec<Vec<(u32, i64)>> = ranges
            .par_iter()
            .flat_map_iter(|&(lo, hi)| {
                let v = generators[lo].vertex;
                let edges: Vec<Edge> = (0..n).filter(|&c| v >> c & 1 == 1).map(|c| edge(d, &resolutions, v, c)).collect();
                let index = &index;
                generators[lo..hi].iter().map(move |g| {
                    let mut out = Vec::new();
                    for e in &edges {
                        e.apply(g.labels, |labels, sign| {
                            out.push((index[&(e.target, labels)], sign));
                        });
                    }
                    out
                })
            })
            .collect();
        let grades: Vec<Grading> = generators.iter().map(|g| g.grading).collect();
        let diff = match mode {
            Mode::Annular => diff
                .into_iter()
                .enumerate()
                .map(|(a, v)| v.into_iter().filter(|&(b, _)| grades[b as usize].k == grades[a].k).collect())
                .collect(),
            _ => diff,
        };
        let annular = match mode {
            Mode::Kh => Annular::Untracked,
            Mode::Filtered => Annular::Filtered,
            Mode::Annular => Annular::Preserved,
        };
        let complex = GradedComplex::new(ring, grades, diff, annular)?;
        Ok(KhComplex { diagram: d.clone(), mode, data, resolutions, generators, index, complex })
    }

    pub fn complex(&self) -> &GradedComplex {
        &self.complex
    }

    pub fn diagram(&self) -> &AnnularDiagram {
        &self.diagram
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn grading_data(&self) -> GradingData {
        self.data
    }

    pub fn generators(&self) -> &[KhGenerator] {
        &self.generators
    }

    pub fn generator(&self, a: usize) -> &KhGenerator {
        &self.generators[a]
    }

    pub fn resolution(&self, v: u64) -> &Resolution {
        &self.resolutions[v as usize]
    }

    /// Index of a generator, if it lies in the built quantum range.
    pub fn find(&self, vertex: u64, labels: u64) -> Option<u32> {
        self.index.get(&(vertex, labels)).copied()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Recomputes every generator's grading from its resolution.
    pub fn audit_gradings(&self) -> Result<(), ComplexError> {
        for (a, g) in self.generators.iter().enumerate() {
            let res = &self.resolutions[g.vertex as usize];
            let want = self.data.grading(res, g.labels);
            let k_ok = self.diagram.is_annular() || want.k == 0;
            if want != g.grading || !k_ok {
                return Err(ComplexError::Grading { from: a, to: a });
            }
        }
        Ok(())
    }

    /// The action of `X` at the basepoint: `1 ↦ X`, `X ↦ 0` on the basepoint circle.
    ///
    /// On the associated graded complex the image of an essential circle labeled 1 is dropped.
    pub fn basepoint_action(&self) -> Result<ChainMap, ComplexError> {
        let p = self.diagram.basepoint().ok_or(ComplexError::MissingBasepoint)?;
        let entries = self
            .generators
            .iter()
            .map(|g| {
                let res = &self.resolutions[g.vertex as usize];
                let t = res.circle_of_arc[p];
                if g.labels >> t & 1 == 1 || (self.mode == Mode::Annular && res.essential[t]) {
                    return Vec::new();
                }
                self.find(g.vertex, g.labels | 1 << t).map(|b| vec![(b, 1)]).unwrap_or_default()
            })
            .collect();
        Ok(ChainMap::new(self.complex.ring(), Grading::new(0, 2, 0), self.len(), entries))
    }
}
