//! Chain maps, induced maps on homology, mapping cones and the Bockstein.

use std::collections::BTreeMap;

use super::homology::F2Homology;
use super::{normalize_entries, Annular, GradedComplex, Grading, Ring};
use crate::error::ComplexError;
use crate::linalg::F2Matrix;

/// A homogeneous map of free complexes: `f(a) = Σ c·b` over `entries[a]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    ring: Ring,
    shift: Grading,
    target_len: usize,
    entries: Vec<Vec<(u32, i64)>>,
}

impl ChainMap {
    /// `shift` is target grading minus source grading.
    pub fn new(ring: Ring, shift: Grading, target_len: usize, entries: Vec<Vec<(u32, i64)>>) -> Self {
        let entries = entries.into_iter().map(|v| normalize_entries(ring, v)).collect();
        ChainMap { ring, shift, target_len, entries }
    }

    pub fn identity(c: &GradedComplex) -> Self {
        Self::new(c.ring(), Grading::default(), c.len(), (0..c.len() as u32).map(|a| vec![(a, 1)]).collect())
    }

    pub fn zero(ring: Ring, shift: Grading, source_len: usize, target_len: usize) -> Self {
        Self::new(ring, shift, target_len, vec![Vec::new(); source_len])
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn shift(&self) -> Grading {
        self.shift
    }

    pub fn source_len(&self) -> usize {
        self.entries.len()
    }

    pub fn target_len(&self) -> usize {
        self.target_len
    }

    pub fn image(&self, a: usize) -> &[(u32, i64)] {
        &self.entries[a]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Vec::is_empty)
    }

    /// Image of a mod-2 vector given by its support.
    pub fn apply_f2(&self, support: &[u32]) -> Vec<u32> {
        crate::linalg::normalize_support(
            support
                .iter()
                .flat_map(|&a| self.entries[a as usize].iter().filter(|e| e.1 % 2 != 0).map(|e| e.0))
                .collect(),
        )
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ChainMap) -> ChainMap {
        let entries = first
            .entries
            .iter()
            .map(|v| {
                v.iter()
                    .flat_map(|&(b, c)| self.entries[b as usize].iter().map(move |&(t, e)| (t, c * e)))
                    .collect()
            })
            .collect();
        ChainMap::new(self.ring, first.shift + self.shift, self.target_len, entries)
    }

    /// Sum of two maps with the same source, target and shift.
    pub fn add(&self, other: &ChainMap) -> ChainMap {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().chain(b).copied().collect())
            .collect();
        ChainMap::new(self.ring, self.shift, self.target_len, entries)
    }

    /// Audits the declared shift entry by entry and checks `f∘d = d∘f` exactly.
    pub fn check(&self, source: &GradedComplex, target: &GradedComplex) -> Result<(), ComplexError> {
        if self.entries.len() != source.len() || self.target_len != target.len() {
            return Err(ComplexError::Dimension { expected: source.len(), got: self.entries.len() });
        }
        let track_k = source.annular() == Annular::Preserved && target.annular() == Annular::Preserved;
        for (a, v) in self.entries.iter().enumerate() {
            let want = source.grading(a) + self.shift;
            for &(b, _) in v {
                let got = target.grading(b as usize);
                if got.i != want.i || got.j != want.j || (track_k && got.k != want.k) {
                    return Err(ComplexError::MapGrading { from: a, to: b as usize });
                }
            }
        }
        let ring = self.ring;
        for a in 0..source.len() {
            let mut lhs: Vec<(u32, i64)> = Vec::new();
            for &(b, c) in source.diff(a) {
                lhs.extend(self.entries[b as usize].iter().map(|&(t, e)| (t, c * e)));
            }
            let mut rhs: Vec<(u32, i64)> = Vec::new();
            for &(b, c) in &self.entries[a] {
                rhs.extend(target.diff(b as usize).iter().map(|&(t, e)| (t, c * e)));
            }
            if normalize_entries(ring, lhs) != normalize_entries(ring, rhs) {
                return Err(ComplexError::NotAChainMap(a));
            }
        }
        Ok(())
    }
}

/// Matrices of the induced map on F2 homology, keyed by source grading.
///
/// Columns are source basis classes, rows target basis classes.
pub fn induced_map(
    f: &ChainMap,
    source: &F2Homology,
    target: &F2Homology,
) -> Result<BTreeMap<Grading, F2Matrix>, ComplexError> {
    let mut out = BTreeMap::new();
    for g in source.gradings() {
        let tg = target.key(g + f.shift());
        let mut m = F2Matrix::zeros(target.dim(tg), source.dim(g));
        for n in 0..source.dim(g) {
            let image = f.apply_f2(&source.representative(g, n));
            for (h, coords) in target.classify(&image) {
                if h != tg {
                    return Err(ComplexError::MapGrading { from: n, to: coords.first_one().unwrap_or(0) });
                }
                for r in coords.ones() {
                    m.set(r, n, true);
                }
            }
        }
        out.insert(g, m);
    }
    Ok(out)
}

/// Cone of `f: A → B` with generators `A ⊕ B`, the copy of `A` shifted by
/// `shift(f) + (1, 0, 0)` and `D(a, b) = (−d a, f a + d b)`.
pub fn mapping_cone(f: &ChainMap, source: &GradedComplex, target: &GradedComplex) -> Result<GradedComplex, ComplexError> {
    if f.source_len() != source.len() || f.target_len() != target.len() {
        return Err(ComplexError::Dimension { expected: source.len(), got: f.source_len() });
    }
    if source.ring() != target.ring() || f.ring() != source.ring() {
        return Err(ComplexError::Ring("cone needs a common ring".into()));
    }
    let ns = source.len() as u32;
    let lift = f.shift() + Grading::new(1, 0, 0);
    let mut grades: Vec<Grading> = source.gradings().iter().map(|&g| g + lift).collect();
    grades.extend_from_slice(target.gradings());
    let mut diff: Vec<Vec<(u32, i64)>> = (0..source.len())
        .map(|a| {
            let mut v: Vec<(u32, i64)> = source.diff(a).iter().map(|&(b, c)| (b, -c)).collect();
            v.extend(f.image(a).iter().map(|&(b, c)| (b + ns, c)));
            v
        })
        .collect();
    diff.extend((0..target.len()).map(|b| target.diff(b).iter().map(|&(t, c)| (t + ns, c)).collect()));
    GradedComplex::new(source.ring(), grades, diff, source.annular())
}

/// The mod-2 Bockstein `H_{i,j}(F2) → H_{i−1,j}(F2)` of an integral or Z/4 complex.
pub fn bockstein(c: &GradedComplex, h: &F2Homology) -> Result<BTreeMap<Grading, F2Matrix>, ComplexError> {
    if c.ring() == Ring::F2 {
        return Err(ComplexError::Ring("the Bockstein needs coefficients in Z or Z/4".into()));
    }
    let down = Grading::new(1, 0, 0);
    let mut acc = vec![0i64; c.len()];
    let mut out = BTreeMap::new();
    for g in h.gradings() {
        let tg = g - down;
        let mut m = F2Matrix::zeros(h.dim(tg), h.dim(g));
        for n in 0..h.dim(g) {
            let z = h.representative(g, n);
            let mut touched = Vec::new();
            for &a in &z {
                for &(b, e) in c.diff(a as usize) {
                    if acc[b as usize] == 0 {
                        touched.push(b);
                    }
                    acc[b as usize] = (acc[b as usize] + e).rem_euclid(4);
                }
            }
            let mut half = Vec::new();
            for &b in &touched {
                match acc[b as usize] {
                    0 => {}
                    2 => half.push(b),
                    _ => return Err(ComplexError::NotACycle),
                }
                acc[b as usize] = 0;
            }
            half.sort_unstable();
            half.dedup();
            for r in h.coordinates(tg, &half).ones() {
                m.set(r, n, true);
            }
        }
        out.insert(g, m);
    }
    Ok(out)
}
