//! The maps that move the basepoint across the axis, and the pair cone.

use std::collections::{BTreeMap, HashMap};

use crate::complex::{mapping_cone, ChainMap, F2Homology, GradedComplex, Grading, Ring};
use crate::diagram::{close_quotients, AnnularDiagram, QuotientTangle, Quotients, Resolution, LOOP_SOURCE};
use crate::error::{ComplexError, DiagramError};
use crate::khovanov::{KhComplex, Mode, QRange};

/// Shift of `f⁺`: target grading minus source grading.
pub const F_PLUS_SHIFT: Grading = Grading::new(0, 0, 1);
/// Shift of `f⁻`.
pub const F_MINUS_SHIFT: Grading = Grading::new(0, 2, -1);

/// Tangle-arc label of every circle: the least source label of its arcs.
fn circle_keys(d: &AnnularDiagram, res: &Resolution) -> Vec<u32> {
    res.circles
        .iter()
        .map(|arcs| arcs.iter().flat_map(|&a| d.sources(a).iter().copied()).min().expect("circles have arcs"))
        .collect()
}

fn key_index(keys: &[u32]) -> HashMap<u32, usize> {
    keys.iter().enumerate().map(|(t, &k)| (k, t)).collect()
}

/// `f⁺` and `f⁻` from `source` to `target` through the kink closure `kink`.
///
/// A source generator goes to the kink's 1-resolution with the extra loop
/// labeled 1 (for `f⁺`) or `X` (for `f⁻`); the component of the associated
/// graded differential of `kink` along the kink crossing lands in the
/// 0-resolution, which is identified with `target`.
pub fn kink_maps(
    source: &KhComplex,
    target: &KhComplex,
    kink: &AnnularDiagram,
    kink_crossing: usize,
) -> Result<(ChainMap, ChainMap), ComplexError> {
    let lk = KhComplex::build(kink, Ring::F2, Mode::Annular, QRange::ALL)?;
    let bit = 1u64 << kink_crossing;
    let mismatch = || ComplexError::Diagram(DiagramError::Involution("kink closure does not match the quotients".into()));
    let mut maps = Vec::new();
    for loop_label in [0u64, 1] {
        let mut cache: HashMap<u64, (Vec<u32>, HashMap<u32, usize>, Vec<u32>)> = HashMap::new();
        let mut entries = Vec::with_capacity(source.len());
        for g in source.generators() {
            let up = g.vertex | bit;
            let (src_keys, up_index, down_keys) = cache.entry(g.vertex).or_insert_with(|| {
                let sk = circle_keys(source.diagram(), source.resolution(g.vertex));
                let ui = key_index(&circle_keys(kink, lk.resolution(up)));
                let dk = circle_keys(kink, lk.resolution(g.vertex));
                (sk, ui, dk)
            });
            let loop_circle = *up_index.get(&LOOP_SOURCE).ok_or_else(mismatch)?;
            let mut labels = loop_label << loop_circle;
            for (t, key) in src_keys.iter().enumerate() {
                let u = *up_index.get(key).ok_or_else(mismatch)?;
                labels |= (g.labels >> t & 1) << u;
            }
            let a = lk.find(up, labels).ok_or_else(mismatch)?;
            let target_index = key_index(&circle_keys(target.diagram(), target.resolution(g.vertex)));
            let mut image = Vec::new();
            for &(b, _) in lk.complex().diff(a as usize) {
                let h = lk.generator(b as usize);
                if h.vertex != g.vertex {
                    continue;
                }
                let mut tl = 0u64;
                for (t, key) in down_keys.iter().enumerate() {
                    let u = *target_index.get(key).ok_or_else(mismatch)?;
                    tl |= (h.labels >> t & 1) << u;
                }
                image.push((target.find(g.vertex, tl).ok_or_else(mismatch)?, 1));
            }
            entries.push(image);
        }
        let shift = if loop_label == 0 { F_PLUS_SHIFT } else { F_MINUS_SHIFT };
        maps.push(ChainMap::new(Ring::F2, shift, target.len(), entries));
    }
    let f_minus = maps.pop().expect("two maps");
    let f_plus = maps.pop().expect("two maps");
    Ok((f_plus, f_minus))
}

/// The annular complexes of both quotients and the axis-moving maps between them.
#[derive(Clone, Debug)]
pub struct AxisMaps {
    pub quotients: Quotients,
    /// `ACKh(K̄₁; F2)`.
    pub k1: KhComplex,
    /// `ACKh(K̄₀; F2)`.
    pub k0: KhComplex,
    /// `f⁺: Σ^{0,0,1} ACKh(K̄₁) → ACKh(K̄₀)`.
    pub f_plus: ChainMap,
    /// `f⁻: Σ^{0,2,−1} ACKh(K̄₁) → ACKh(K̄₀)`.
    pub f_minus: ChainMap,
}

/// Maps moving the basepoint back from `K̄₀` to `K̄₁`, through the reverse kink closure.
#[derive(Clone, Debug)]
pub struct ReverseMaps {
    pub f_plus: ChainMap,
    pub f_minus: ChainMap,
}

impl AxisMaps {
    /// Checks both maps: declared shifts and commutation with the differentials.
    pub fn check(&self) -> Result<(), ComplexError> {
        self.f_plus.check(self.k1.complex(), self.k0.complex())?;
        self.f_minus.check(self.k1.complex(), self.k0.complex())
    }

    pub fn reverse(&self) -> Result<ReverseMaps, ComplexError> {
        let q = &self.quotients;
        let (f_plus, f_minus) = kink_maps(&self.k0, &self.k1, &q.reverse_kink, q.kink_crossing)?;
        Ok(ReverseMaps { f_plus, f_minus })
    }

    /// `Cone(f⁺)`, whose homology is the annular Khovanov homology of the pair.
    pub fn pair_cone(&self) -> Result<GradedComplex, ComplexError> {
        mapping_cone(&self.f_plus, self.k1.complex(), self.k0.complex())
    }
}

/// Builds `ACKh` of both quotients and `f±`.
pub fn axis_moving_maps(t: &QuotientTangle) -> Result<AxisMaps, ComplexError> {
    let quotients = close_quotients(t)?;
    let k1 = KhComplex::build(&quotients.k1, Ring::F2, Mode::Annular, QRange::ALL)?;
    let k0 = KhComplex::build(&quotients.k0, Ring::F2, Mode::Annular, QRange::ALL)?;
    let (f_plus, f_minus) = kink_maps(&k1, &k0, &quotients.kink, quotients.kink_crossing)?;
    Ok(AxisMaps { quotients, k1, k0, f_plus, f_minus })
}

/// Trigraded F2 dimensions of `H(Cone(f⁺))`.
pub fn pair_cone_homology(t: &QuotientTangle) -> Result<BTreeMap<Grading, usize>, ComplexError> {
    let maps = axis_moving_maps(t)?;
    Ok(F2Homology::compute(&maps.pair_cone()?)?.dims())
}
