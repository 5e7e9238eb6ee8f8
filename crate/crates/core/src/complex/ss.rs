//! Spectral sequences of finite filtered complexes over F2.
//!
//! The filtration is an integer column per generator that the differential
//! never lowers. Arrows raising the column by `r` are cancelled in rounds
//! `r = 0, 1, 2, …`; after round `r − 1` the surviving generators at each
//! position form a basis of `E^r`, and the arrows cancelled in round `r`
//! count the rank of `d^r`.

use std::collections::BTreeMap;

use super::{GradedComplex, Grading};
use crate::error::ComplexError;
use crate::linalg::{f2_rank_kernel, BitVec, F2Matrix, Reducer};

/// Filtration column and grading of a generator.
pub type Position = (i64, Grading);

/// One page with the ranks of its differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SsPage {
    pub r: usize,
    pub dims: BTreeMap<Position, usize>,
    /// Rank of `d^r` leaving each position.
    pub rank_out: BTreeMap<Position, usize>,
    /// Rank of `d^r` arriving at each position.
    pub rank_in: BTreeMap<Position, usize>,
}

impl SsPage {
    pub fn dim(&self, p: &Position) -> usize {
        self.dims.get(p).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// Total dimension in one column.
    pub fn column_dim(&self, column: i64) -> usize {
        self.dims.iter().filter(|((c, _), _)| *c == column).map(|(_, d)| d).sum()
    }

    /// Whether `d^r` vanishes.
    pub fn differential_vanishes(&self) -> bool {
        self.rank_out.values().all(|&r| r == 0)
    }
}

/// Pages `E^1, E^2, …` ending at a page whose differential and all later ones vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralSequence {
    pub pages: Vec<SsPage>,
}

impl SpectralSequence {
    /// The last computed page, equal to `E^∞` when the computation ran to completion.
    pub fn last(&self) -> &SsPage {
        self.pages.last().expect("at least one page")
    }

    /// First `r` with `d^s = 0` for all `s ≥ r`.
    pub fn collapse_page(&self) -> usize {
        let mut r = self.last().r;
        for p in self.pages.iter().rev() {
            if p.differential_vanishes() {
                r = p.r;
            } else {
                break;
            }
        }
        r
    }

    pub fn page(&self, r: usize) -> &SsPage {
        let i = self.pages.iter().rposition(|p| p.r <= r).unwrap_or(0);
        &self.pages[i]
    }

    /// Page dimensions are non-increasing in `r` at every position, and each
    /// page is the previous one minus the ranks of the differential.
    pub fn check_monotone(&self) -> bool {
        self.pages.windows(2).all(|w| {
            let (a, b) = (&w[0], &w[1]);
            a.dims.iter().all(|(pos, &d)| {
                let out = a.rank_out.get(pos).copied().unwrap_or(0);
                let inn = a.rank_in.get(pos).copied().unwrap_or(0);
                b.dim(pos) <= d && d == b.dim(pos) + out + inn
            }) && b.dims.keys().all(|p| a.dims.contains_key(p))
        })
    }
}

fn check_filtration(c: &GradedComplex, filtration: &[i64]) -> Result<(), ComplexError> {
    if filtration.len() != c.len() {
        return Err(ComplexError::Dimension { expected: c.len(), got: filtration.len() });
    }
    for a in 0..c.len() {
        for &(b, e) in c.diff(a) {
            if e % 2 != 0 && filtration[b as usize] < filtration[a] {
                return Err(ComplexError::Filtration { from: a, to: b as usize });
            }
        }
    }
    Ok(())
}

/// Spectral sequence of a filtered complex by iterated cancellation.
///
/// Runs until every differential vanishes, or through page `r_max`.
pub fn filtered_ss_pages(
    c: &GradedComplex,
    filtration: &[i64],
    r_max: Option<usize>,
) -> Result<SpectralSequence, ComplexError> {
    check_filtration(c, filtration)?;
    let position = |a: usize| (filtration[a], c.key(c.grading(a)));
    let mut red = Reducer::new(c.f2_supports());
    red.reduce_filtered_stage(filtration, 0);
    let mut pages = Vec::new();
    let mut r = 1usize;
    loop {
        let dims = red.count_survivors_by(position);
        if red.min_drop(filtration).is_none() || r_max.is_some_and(|m| r >= m + 1) {
            pages.push(SsPage { r, dims, rank_out: BTreeMap::new(), rank_in: BTreeMap::new() });
            break;
        }
        let mut rank_out = BTreeMap::new();
        let mut rank_in = BTreeMap::new();
        for (a, b) in red.reduce_filtered_stage(filtration, r as i64) {
            *rank_out.entry(position(a as usize)).or_insert(0) += 1;
            *rank_in.entry(position(b as usize)).or_insert(0) += 1;
        }
        pages.push(SsPage { r, dims, rank_out, rank_in });
        r += 1;
    }
    if r_max.is_some_and(|m| pages.len() > m) {
        pages.truncate(r_max.unwrap_or(0).max(1));
    }
    Ok(SpectralSequence { pages })
}

/// Page dimensions `E^1 … E^{r_max}` from explicit subquotients
/// `Z^r_p / (Z^{r−1}_{p+1} + d Z^{r−1}_{p−r+1})` with dense linear algebra.
pub fn filtered_ss_pages_dense(
    c: &GradedComplex,
    filtration: &[i64],
    r_max: usize,
) -> Result<Vec<BTreeMap<Position, usize>>, ComplexError> {
    check_filtration(c, filtration)?;
    let down = Grading::new(1, 0, 0);
    let mut blocks: BTreeMap<Grading, Vec<usize>> = BTreeMap::new();
    for a in 0..c.len() {
        blocks.entry(c.key(c.grading(a))).or_default().push(a);
    }
    let mut local = vec![0usize; c.len()];
    for v in blocks.values() {
        for (n, &a) in v.iter().enumerate() {
            local[a] = n;
        }
    }
    let supports = c.f2_supports();
    let empty = Vec::new();
    // Basis of {x ∈ F_p in block g : d x ∈ F_{p+r}}, in block coordinates.
    let z = |g: Grading, p: i64, r: i64| -> Vec<BitVec> {
        let src = blocks.get(&g).unwrap_or(&empty);
        let tgt = blocks.get(&(g - down)).unwrap_or(&empty);
        let cols: Vec<usize> = src.iter().copied().filter(|&a| filtration[a] >= p).collect();
        let rows: Vec<usize> = tgt.iter().copied().filter(|&b| filtration[b] < p + r).collect();
        let mut row_of = BTreeMap::new();
        for (n, &b) in rows.iter().enumerate() {
            row_of.insert(b, n);
        }
        let mut m = F2Matrix::zeros(rows.len(), cols.len());
        for (n, &a) in cols.iter().enumerate() {
            for &b in &supports[a] {
                if let Some(&row) = row_of.get(&(b as usize)) {
                    m.flip(row, n);
                }
            }
        }
        f2_rank_kernel(&m)
            .1
            .into_iter()
            .map(|v| BitVec::from_indices(src.len(), v.ones().map(|n| local[cols[n]])))
            .collect()
    };
    let boundary = |g: Grading, v: &BitVec| -> BitVec {
        let src = &blocks[&g];
        let tlen = blocks.get(&(g - down)).map_or(0, Vec::len);
        let mut out = BitVec::zeros(tlen);
        for n in v.ones() {
            for &b in &supports[src[n]] {
                out.flip(local[b as usize]);
            }
        }
        out
    };
    let columns: Vec<i64> = {
        let mut v: Vec<i64> = filtration.to_vec();
        v.sort_unstable();
        v.dedup();
        v
    };
    let mut pages = Vec::new();
    for r in 1..=r_max as i64 {
        let mut dims = BTreeMap::new();
        for (&g, v) in &blocks {
            for &p in &columns {
                let top = z(g, p, r).len();
                let mut span = z(g, p + 1, r - 1);
                if blocks.contains_key(&(g + down)) {
                    span.extend(z(g + down, p - r + 1, r - 1).iter().map(|x| boundary(g + down, x)));
                }
                let rank = F2Matrix::from_bitvecs(&span, v.len()).map_or(0, |m| m.rank());
                let d = top - rank;
                if d > 0 {
                    dims.insert((p, g), d);
                }
            }
        }
        pages.push(dims);
    }
    Ok(pages)
}
