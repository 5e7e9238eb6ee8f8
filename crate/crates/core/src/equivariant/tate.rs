//! The Tate complex `(CKh ⊗ F2[θ, θ⁻¹], d + θ(1 + τ))`, collapsed and truncated.

use std::collections::BTreeMap;

use crate::complex::{filtered_ss_pages, Annular, ChainMap, GradedComplex, Grading, Ring, SpectralSequence};
use crate::diagram::IntravergentDiagram;
use crate::error::ComplexError;
use crate::khovanov::{KhComplex, Mode, QRange};
use crate::linalg::Reducer;

use super::tau::tau_chain_map;

/// A complex over F2 with a chain involution, split by quantum grading.
#[derive(Clone, Debug)]
pub struct TateComplex {
    complex: GradedComplex,
    tau: Vec<u32>,
    blocks: BTreeMap<i32, Vec<u32>>,
    local: Vec<u32>,
}

impl TateComplex {
    /// Pairs a complex with an involution; checks `τ² = 1` and `τd = dτ`.
    pub fn new(complex: GradedComplex, tau: &ChainMap) -> Result<Self, ComplexError> {
        if complex.ring() != Ring::F2 {
            return Err(ComplexError::Ring("the Tate complex is built over F2".into()));
        }
        tau.check(&complex, &complex)?;
        let mut image = Vec::with_capacity(complex.len());
        for a in 0..complex.len() {
            match tau.image(a) {
                [(b, _)] => image.push(*b),
                _ => return Err(ComplexError::NotAChainMap(a)),
            }
        }
        if let Some(a) = (0..image.len()).find(|&a| image[image[a] as usize] as usize != a) {
            return Err(ComplexError::NotAChainMap(a));
        }
        let mut blocks: BTreeMap<i32, Vec<u32>> = BTreeMap::new();
        let mut local = vec![0u32; complex.len()];
        for a in 0..complex.len() {
            let b = blocks.entry(complex.grading(a).j).or_default();
            local[a] = b.len() as u32;
            b.push(a as u32);
        }
        Ok(TateComplex { complex, tau: image, blocks, local })
    }

    /// `CKh(K; F2)` of an intravergent diagram with its rotation.
    pub fn of_diagram(k: &IntravergentDiagram, q: QRange) -> Result<Self, ComplexError> {
        let kh = KhComplex::build(k.diagram(), Ring::F2, Mode::Kh, q)?;
        let tau = tau_chain_map(k, &kh)?;
        Self::new(kh.complex().clone(), &tau)
    }

    pub fn complex(&self) -> &GradedComplex {
        &self.complex
    }

    pub fn tau(&self, a: usize) -> usize {
        self.tau[a] as usize
    }

    pub fn quantum_gradings(&self) -> impl Iterator<Item = i32> + '_ {
        self.blocks.keys().copied()
    }

    fn block(&self, j: i32) -> &[u32] {
        self.blocks.get(&j).map_or(&[], Vec::as_slice)
    }

    /// `τ` on the generators of a quantum grading, as a permutation of local indices.
    pub fn tau_block(&self, j: i32) -> Vec<u32> {
        self.block(j).iter().map(|&a| self.local[self.tau[a as usize] as usize]).collect()
    }

    /// Local differential supports of a quantum grading.
    fn d_block(&self, j: i32) -> Vec<Vec<u32>> {
        self.block(j)
            .iter()
            .map(|&a| {
                self.complex.diff(a as usize).iter().filter(|e| e.1 % 2 != 0).map(|e| self.local[e.0 as usize]).collect()
            })
            .collect()
    }

    /// `dim H(C_j, d + 1 + τ)` with the homological grading forgotten.
    pub fn collapsed_dim(&self, j: i32) -> Result<usize, ComplexError> {
        let tau = self.tau_block(j);
        let out: Vec<Vec<u32>> = self
            .d_block(j)
            .into_iter()
            .enumerate()
            .map(|(a, mut v)| {
                v.push(a as u32);
                v.push(tau[a]);
                v
            })
            .collect();
        check_square_zero(&out)?;
        let mut red = Reducer::new(out);
        red.reduce_all();
        let survivors = red.survivors();
        if let Some(&s) = survivors.iter().find(|&&s| !red.residual(s as usize).is_empty()) {
            return Err(ComplexError::NotAComplex(s as usize));
        }
        Ok(survivors.len())
    }

    /// Columns `0..=window` of the Tate complex in quantum grading `j`, with the θ-power filtration.
    ///
    /// Generator `(a, p)` has index `p·n + a` and grading `(i(a) − p, j, 0)`.
    pub fn truncated(&self, j: i32, window: usize) -> Result<(GradedComplex, Vec<i64>), ComplexError> {
        let gens = self.block(j);
        let n = gens.len();
        let d = self.d_block(j);
        let tau = self.tau_block(j);
        let mut grades = Vec::with_capacity(n * (window + 1));
        let mut diff = Vec::with_capacity(n * (window + 1));
        let mut filtration = Vec::with_capacity(n * (window + 1));
        for p in 0..=window {
            for a in 0..n {
                let g = self.complex.grading(gens[a] as usize);
                grades.push(Grading::bi(g.i - p as i32, j));
                filtration.push(p as i64);
                let base = (p * n) as u32;
                let mut v: Vec<(u32, i64)> = d[a].iter().map(|&b| (base + b, 1)).collect();
                if p < window {
                    let next = ((p + 1) * n) as u32;
                    v.push((next + a as u32, 1));
                    v.push((next + tau[a], 1));
                }
                diff.push(v);
            }
        }
        Ok((GradedComplex::new(Ring::F2, grades, diff, Annular::Untracked)?, filtration))
    }

    /// Spectral sequence of the truncated Tate complex, built on the chain level.
    pub fn ss_chain_level(&self, j: i32, window: usize) -> Result<SpectralSequence, ComplexError> {
        let (c, f) = self.truncated(j, window)?;
        filtered_ss_pages(&c, &f, None)
    }

    /// The Tate differential transported to `H(C_j) ⊗ F2[θ]` by homological perturbation.
    pub fn model(&self, j: i32) -> Result<TateModel, ComplexError> {
        let gens = self.block(j);
        let tau = self.tau_block(j);
        let mut red = Reducer::new(self.d_block(j));
        red.reduce_all();
        let classes = red.survivors();
        if let Some(&s) = classes.iter().find(|&&s| !red.residual(s as usize).is_empty()) {
            return Err(ComplexError::NotAComplex(s as usize));
        }
        let class_of: std::collections::HashMap<u32, u32> =
            classes.iter().enumerate().map(|(n, &s)| (s, n as u32)).collect();
        let one_plus_tau = |v: &[u32]| -> Vec<u32> {
            crate::linalg::normalize_support(v.iter().flat_map(|&a| [a, tau[a as usize]]).collect())
        };
        let mut arrows = Vec::with_capacity(classes.len());
        for &s in &classes {
            let mut out = Vec::new();
            let mut v = red.include(s);
            for r in 1.. {
                let w = one_plus_tau(&v);
                if w.is_empty() {
                    break;
                }
                out.extend(red.project(&w).into_iter().map(|t| (class_of[&t], r)));
                v = red.homotopy(&w);
                if v.is_empty() || r > gens.len() {
                    break;
                }
            }
            arrows.push(out);
        }
        let degrees = classes.iter().map(|&s| self.complex.grading(gens[s as usize] as usize).i).collect();
        Ok(TateModel { j, degrees, arrows })
    }

    /// Spectral sequence of the truncated Tate complex, computed on the reduced model.
    pub fn ss(&self, j: i32, window: usize) -> Result<SpectralSequence, ComplexError> {
        let (c, f) = self.model(j)?.truncated(window)?;
        filtered_ss_pages(&c, &f, None)
    }
}

/// `H(C_j)` with the components `θ^r π (1+τ) (h (1+τ))^{r−1} ι` of the transported differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TateModel {
    pub j: i32,
    /// Homological grading of each basis class.
    pub degrees: Vec<i32>,
    /// `(class, r)` for each component from a class to `θ^r` times another.
    pub arrows: Vec<Vec<(u32, usize)>>,
}

impl TateModel {
    /// Columns `0..=window` with the θ-power filtration, indexed like [`TateComplex::truncated`].
    pub fn truncated(&self, window: usize) -> Result<(GradedComplex, Vec<i64>), ComplexError> {
        let n = self.degrees.len();
        let mut grades = Vec::with_capacity(n * (window + 1));
        let mut diff = Vec::with_capacity(n * (window + 1));
        let mut filtration = Vec::with_capacity(n * (window + 1));
        for p in 0..=window {
            for a in 0..n {
                grades.push(Grading::bi(self.degrees[a] - p as i32, self.j));
                filtration.push(p as i64);
                diff.push(
                    self.arrows[a]
                        .iter()
                        .filter(|&&(_, r)| p + r <= window)
                        .map(|&(b, r)| (((p + r) * n) as u32 + b, 1))
                        .collect(),
                );
            }
        }
        Ok((GradedComplex::new(Ring::F2, grades, diff, Annular::Untracked)?, filtration))
    }
}

fn check_square_zero(out: &[Vec<u32>]) -> Result<(), ComplexError> {
    for (a, v) in out.iter().enumerate() {
        let twice = crate::linalg::apply_sparse(out, &crate::linalg::normalize_support(v.clone()));
        if !twice.is_empty() {
            return Err(ComplexError::NotAComplex(a));
        }
    }
    Ok(())
}

/// Middle-column data of a truncated Tate spectral sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TateColumn {
    pub window: usize,
    /// Total dimension of the middle column on each page, from `E^1`.
    pub page_dims: Vec<usize>,
    pub e_infinity: usize,
    pub collapse_page: usize,
    pub ss: SpectralSequence,
}

/// Truncated Tate spectral sequence in grading `j`, with the window grown until
/// the middle column is unchanged by widening it by two.
pub fn tate_middle_column(t: &TateComplex, j: i32, min_window: usize) -> Result<TateColumn, ComplexError> {
    let column = |w: usize| -> Result<TateColumn, ComplexError> {
        let ss = t.ss(j, w)?;
        let mid = (w / 2) as i64;
        let page_dims: Vec<usize> = ss.pages.iter().map(|p| p.column_dim(mid)).collect();
        Ok(TateColumn {
            window: w,
            e_infinity: *page_dims.last().unwrap_or(&0),
            collapse_page: ss.collapse_page(),
            page_dims,
            ss,
        })
    };
    let mut w = min_window.max(2);
    w += w % 2;
    for _ in 0..6 {
        let a = column(w)?;
        let b = column(w + 2)?;
        if a.e_infinity == b.e_infinity {
            return Ok(a);
        }
        w *= 2;
    }
    Err(ComplexError::Unstable(w))
}
