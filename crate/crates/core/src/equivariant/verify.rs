//! Checking the spectral sequence from Khovanov homology to the annular homology of the quotient pair.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{induced_map, F2Homology, Grading, Ring};
use crate::diagram::{diagram_invariants, lift_intravergent, DiagramInvariants, QuotientTangle};
use crate::error::ComplexError;
use crate::khovanov::{KhComplex, Mode, QRange};
use crate::linalg::F2Matrix;

use super::axis::axis_moving_maps;
use super::tate::{tate_middle_column, TateComplex};
use super::tau::tau_chain_map;

/// Dimension at one grading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDim {
    pub grading: Grading,
    pub dim: usize,
}

/// Everything computed in one quantum grading `j` of `Kh(K)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumReport {
    pub j: i32,
    /// `dim Kh_{i,j}(K; F2)` by homological grading: the `E^1` column.
    pub kh: Vec<GradedDim>,
    pub kh_total: usize,
    /// `rank(1 + τ_*)` on `Kh_{i,j}`.
    pub rank_one_plus_tau: Vec<GradedDim>,
    /// `dim H(C_j, d + 1 + τ)`.
    pub tate_collapsed: usize,
    /// Middle-column total dimension of `E^1, E^2, …` in the truncated Tate spectral sequence.
    pub ss_page_dims: Vec<usize>,
    pub e_infinity: usize,
    pub collapse_page: usize,
    pub window: usize,
    /// `(ī, j̄, k)` of the pair cone with `2j̄ + k = j − 1 + 3Δ`, and their dimensions.
    pub target_terms: Vec<GradedDim>,
    pub target: usize,
    /// `E^∞ = collapsed Tate = target`.
    pub theorem: bool,
    /// `dim Kh_{*,j} ≥ target`.
    pub smith_inequality: bool,
    /// `Some` when `Kh_{*,j}` sits in one homological grading: `dim − 2·rank(1 + τ_*) = target`.
    pub single_grading: Option<bool>,
    /// `Some` when additionally the target vanishes: `rank(1 + τ_*) = dim / 2`.
    pub free_action: Option<bool>,
}

/// The spectral sequence check over every quantum grading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TateReport {
    pub invariants: DiagramInvariants,
    pub quantum: Vec<QuantumReport>,
    pub pass: bool,
}

/// `rank(1 + M)` for a square matrix.
fn rank_one_plus(m: &F2Matrix) -> usize {
    let mut a = m.clone();
    for i in 0..a.rows().min(a.cols()) {
        a.flip(i, i);
    }
    a.rank()
}

/// Options for [`verify_theorem`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub q: QRange,
    /// Lower bound on the truncation window.
    pub min_window: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { q: QRange::ALL, min_window: 0 }
    }
}

/// Computes both sides of the spectral sequence statement in every relevant quantum grading.
pub fn verify_theorem(t: &QuotientTangle, opts: VerifyOptions) -> Result<TateReport, ComplexError> {
    let invariants = diagram_invariants(t)?;
    let k = lift_intravergent(t)?;
    let kh = KhComplex::build(k.diagram(), Ring::F2, Mode::Kh, opts.q)?;
    let tau = tau_chain_map(&k, &kh)?;
    let h = F2Homology::compute(kh.complex())?;
    let tau_star = induced_map(&tau, &h, &h)?;
    let tate = TateComplex::new(kh.complex().clone(), &tau)?;

    let maps = axis_moving_maps(t)?;
    maps.check()?;
    let cone = F2Homology::compute(&maps.pair_cone()?)?.dims();
    let delta = invariants.delta as i32;
    let quantum_of = |g: &Grading| 2 * g.j + g.k + 1 - 3 * delta;

    let mut js: BTreeSet<i32> = h.dims().keys().map(|g| g.j).collect();
    js.extend(cone.keys().map(quantum_of));
    js.retain(|&j| opts.q.contains(j));

    let kh_dims = h.dims();
    let quantum = js
        .into_par_iter()
        .map(|j| -> Result<QuantumReport, ComplexError> {
            let column: Vec<GradedDim> = kh_dims
                .iter()
                .filter(|(g, _)| g.j == j)
                .map(|(&grading, &dim)| GradedDim { grading, dim })
                .collect();
            let kh_total: usize = column.iter().map(|g| g.dim).sum();
            let ranks: Vec<GradedDim> = column
                .iter()
                .map(|c| GradedDim { grading: c.grading, dim: rank_one_plus(&tau_star[&c.grading]) })
                .collect();
            let width = match (column.first(), column.last()) {
                (Some(a), Some(b)) => (b.grading.i - a.grading.i) as usize,
                _ => 0,
            };
            let col = tate_middle_column(&tate, j, opts.min_window.max(2 * (width + 1)).max(width + 4))?;
            let collapsed = tate.collapsed_dim(j)?;
            let target_terms: Vec<GradedDim> = cone
                .iter()
                .filter(|(g, _)| quantum_of(g) == j)
                .map(|(&grading, &dim)| GradedDim { grading, dim })
                .collect();
            let target: usize = target_terms.iter().map(|g| g.dim).sum();
            let single = column.len() == 1;
            let rank_single = ranks.first().map_or(0, |r| r.dim);
            Ok(QuantumReport {
                j,
                kh_total,
                tate_collapsed: collapsed,
                e_infinity: col.e_infinity,
                ss_page_dims: col.page_dims,
                collapse_page: col.collapse_page,
                window: col.window,
                theorem: col.e_infinity == target && collapsed == target,
                smith_inequality: kh_total >= target,
                single_grading: single.then(|| kh_total == target + 2 * rank_single),
                free_action: (single && target == 0).then(|| 2 * rank_single == kh_total),
                target,
                target_terms,
                rank_one_plus_tau: ranks,
                kh: column,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let pass = quantum.iter().all(|q| {
        q.theorem && q.smith_inequality && q.single_grading != Some(false) && q.free_action != Some(false)
    });
    Ok(TateReport { invariants, quantum, pass })
}

/// `dim H(C_j, d + 1 + τ)` for every quantum grading of an intravergent diagram.
pub fn tate_collapsed_homology(
    k: &crate::diagram::IntravergentDiagram,
    q: QRange,
) -> Result<BTreeMap<i32, usize>, ComplexError> {
    let t = TateComplex::of_diagram(k, q)?;
    let js: Vec<i32> = t.quantum_gradings().collect();
    js.into_par_iter().map(|j| Ok((j, t.collapsed_dim(j)?))).collect()
}
