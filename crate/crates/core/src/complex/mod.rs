//! Multigraded free chain complexes, homology, maps, cones and spectral sequences.

mod homology;
mod map;
mod ss;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ComplexError;

pub use homology::{homology_f2_dense, F2Homology, Group, HomologyTable, ZHomology};
pub use map::{bockstein, induced_map, mapping_cone, ChainMap};
pub use ss::{filtered_ss_pages, filtered_ss_pages_dense, SpectralSequence, SsPage};

/// Coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ring {
    F2,
    Z,
    Z4,
}

impl Ring {
    /// Canonical representative of an integer coefficient.
    pub fn normalize(self, c: i64) -> i64 {
        match self {
            Ring::F2 => c.rem_euclid(2),
            Ring::Z4 => c.rem_euclid(4),
            Ring::Z => c,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::F2 => "F2",
            Ring::Z => "Z",
            Ring::Z4 => "Z4",
        })
    }
}

impl FromStr for Ring {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "F2" | "f2" => Ok(Ring::F2),
            "Z" | "z" => Ok(Ring::Z),
            "Z4" | "z4" => Ok(Ring::Z4),
            _ => Err(format!("unknown ring `{s}` (expected F2, Z or Z4)")),
        }
    }
}

/// Homological, quantum and annular degrees.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Grading {
    pub i: i32,
    pub j: i32,
    pub k: i32,
}

impl Grading {
    pub const fn new(i: i32, j: i32, k: i32) -> Self {
        Grading { i, j, k }
    }

    pub const fn bi(i: i32, j: i32) -> Self {
        Grading { i, j, k: 0 }
    }
}

impl std::ops::Add for Grading {
    type Output = Grading;

    fn add(self, o: Grading) -> Grading {
        Grading::new(self.i + o.i, self.j + o.j, self.k + o.k)
    }
}

impl std::ops::Sub for Grading {
    type Output = Grading;

    fn sub(self, o: Grading) -> Grading {
        Grading::new(self.i - o.i, self.j - o.j, self.k - o.k)
    }
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.k)
    }
}

/// How the differential treats the annular degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Annular {
    /// `k` is not tracked and is ignored by all checks.
    Untracked,
    /// Every entry preserves `k`.
    Preserved,
    /// Entries preserve `k` or lower it by two.
    Filtered,
}

/// A free chain complex with a basis of homogeneous generators.
///
/// `D(a) = Σ c·b` over the entries `(b, c)` of `diff[a]`; entries are sorted,
/// nonzero and reduced for the ring. Every entry lowers `i` by one and
/// preserves `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplex {
    ring: Ring,
    grades: Vec<Grading>,
    diff: Vec<Vec<(u32, i64)>>,
    annular: Annular,
}

impl GradedComplex {
    /// Builds and validates a complex: grading audit and `d∘d = 0`.
    pub fn new(
        ring: Ring,
        grades: Vec<Grading>,
        diff: Vec<Vec<(u32, i64)>>,
        annular: Annular,
    ) -> Result<Self, ComplexError> {
        let c = Self::new_unchecked(ring, grades, diff, annular)?;
        c.check_gradings()?;
        c.check_d_squared()?;
        Ok(c)
    }

    /// Builds a complex, normalising coefficients, without the `d∘d` check.
    pub fn new_unchecked(
        ring: Ring,
        grades: Vec<Grading>,
        diff: Vec<Vec<(u32, i64)>>,
        annular: Annular,
    ) -> Result<Self, ComplexError> {
        if grades.len() != diff.len() {
            return Err(ComplexError::Dimension { expected: grades.len(), got: diff.len() });
        }
        let n = grades.len();
        let diff = diff
            .into_iter()
            .map(|v| normalize_entries(ring, v))
            .collect::<Vec<_>>();
        if let Some((a, _)) = diff.iter().enumerate().find(|(_, v)| v.iter().any(|&(b, _)| b as usize >= n)) {
            return Err(ComplexError::Dimension { expected: n, got: a });
        }
        Ok(GradedComplex { ring, grades, diff, annular })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn annular(&self) -> Annular {
        self.annular
    }

    pub fn len(&self) -> usize {
        self.grades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grades.is_empty()
    }

    pub fn grading(&self, a: usize) -> Grading {
        self.grades[a]
    }

    pub fn gradings(&self) -> &[Grading] {
        &self.grades
    }

    pub fn diff(&self, a: usize) -> &[(u32, i64)] {
        &self.diff[a]
    }

    pub fn n_entries(&self) -> usize {
        self.diff.iter().map(Vec::len).sum()
    }

    /// Supports of the mod-2 reduction of the differential.
    pub fn f2_supports(&self) -> Vec<Vec<u32>> {
        self.diff.iter().map(|v| v.iter().filter(|e| e.1 % 2 != 0).map(|e| e.0).collect()).collect()
    }

    /// Every entry lowers `i` by one, preserves `j`, and treats `k` as declared.
    pub fn check_gradings(&self) -> Result<(), ComplexError> {
        for (a, v) in self.diff.iter().enumerate() {
            let ga = self.grades[a];
            for &(b, _) in v {
                let gb = self.grades[b as usize];
                let ok_k = match self.annular {
                    Annular::Untracked => true,
                    Annular::Preserved => gb.k == ga.k,
                    Annular::Filtered => gb.k == ga.k || gb.k == ga.k - 2,
                };
                if gb.i != ga.i - 1 || gb.j != ga.j || !ok_k {
                    return Err(ComplexError::Grading { from: a, to: b as usize });
                }
            }
        }
        Ok(())
    }

    /// Exact check of `d∘d = 0`.
    pub fn check_d_squared(&self) -> Result<(), ComplexError> {
        let mut acc = vec![0i64; self.len()];
        let mut touched = Vec::new();
        for a in 0..self.len() {
            for &(b, c) in &self.diff[a] {
                for &(t, e) in &self.diff[b as usize] {
                    let tu = t as usize;
                    if acc[tu] == 0 {
                        touched.push(tu);
                    }
                    acc[tu] = self.ring.normalize(acc[tu] + c * e);
                }
            }
            let bad = touched.iter().any(|&t| acc[t] != 0);
            for t in touched.drain(..) {
                acc[t] = 0;
            }
            if bad {
                return Err(ComplexError::NotAComplex(a));
            }
        }
        Ok(())
    }

    /// The complex with coefficients reduced into another ring.
    pub fn change_ring(&self, ring: Ring) -> Result<GradedComplex, ComplexError> {
        match (self.ring, ring) {
            (a, b) if a == b => Ok(self.clone()),
            (Ring::Z, _) | (Ring::Z4, Ring::F2) => {
                GradedComplex::new_unchecked(ring, self.grades.clone(), self.diff.clone(), self.annular)
            }
            (a, b) => Err(ComplexError::Ring(format!("cannot lift coefficients from {a} to {b}"))),
        }
    }

    /// Drops entries that lower `k`, keeping the associated graded complex.
    pub fn associated_graded(&self) -> GradedComplex {
        let diff = self
            .diff
            .iter()
            .enumerate()
            .map(|(a, v)| v.iter().copied().filter(|&(b, _)| self.grades[b as usize].k == self.grades[a].k).collect())
            .collect();
        GradedComplex {
            ring: self.ring,
            grades: self.grades.clone(),
            diff,
            annular: if self.annular == Annular::Untracked { Annular::Untracked } else { Annular::Preserved },
        }
    }

    /// Grading under which homology is recorded: `k` is dropped unless every entry preserves it.
    pub fn key(&self, g: Grading) -> Grading {
        match self.annular {
            Annular::Preserved => g,
            _ => Grading::bi(g.i, g.j),
        }
    }

    /// Generators grouped by grading, ascending.
    pub fn blocks(&self) -> std::collections::BTreeMap<Grading, Vec<u32>> {
        let mut m: std::collections::BTreeMap<Grading, Vec<u32>> = std::collections::BTreeMap::new();
        for (a, &g) in self.grades.iter().enumerate() {
            m.entry(g).or_default().push(a as u32);
        }
        m
    }

    /// The direct summand spanned by generators whose grading passes `keep`.
    ///
    /// `keep` must select a union of `(j, k)` blocks so the result is again a complex.
    pub fn restrict(&self, keep: impl Fn(Grading) -> bool) -> (GradedComplex, Vec<u32>) {
        let kept: Vec<u32> = (0..self.len() as u32).filter(|&a| keep(self.grades[a as usize])).collect();
        let mut index = vec![u32::MAX; self.len()];
        for (n, &a) in kept.iter().enumerate() {
            index[a as usize] = n as u32;
        }
        let grades = kept.iter().map(|&a| self.grades[a as usize]).collect();
        let diff = kept
            .iter()
            .map(|&a| {
                self.diff[a as usize]
                    .iter()
                    .filter(|e| index[e.0 as usize] != u32::MAX)
                    .map(|&(b, c)| (index[b as usize], c))
                    .collect()
            })
            .collect();
        (GradedComplex { ring: self.ring, grades, diff, annular: self.annular }, kept)
    }
}

pub(crate) fn normalize_entries(ring: Ring, mut v: Vec<(u32, i64)>) -> Vec<(u32, i64)> {
    v.sort_unstable_by_key(|e| e.0);
    let mut out: Vec<(u32, i64)> = Vec::with_capacity(v.len());
    for (t, c) in v {
        match out.last_mut() {
            Some(last) if last.0 == t => last.1 = ring.normalize(last.1 + c),
            _ => out.push((t, ring.normalize(c))),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}
