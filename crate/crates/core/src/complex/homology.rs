//! Homology over F2 and Z.

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{Annular, GradedComplex, Grading, Ring};
use crate::error::ComplexError;
use crate::linalg::{BitVec, F2Matrix, Reducer, ZMatrix, ZReducer};

/// Largest block for which the dense rank-nullity cross-check runs.
const DENSE_CHECK_LIMIT: usize = 3000;

/// `R^free ⊕ ⊕ Z/t` over the ring of the table.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Group {
    pub free: usize,
    pub torsion: Vec<u64>,
}

impl Group {
    pub fn is_zero(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }

    /// Human-readable form such as `Z^2 ⊕ Z/2`.
    pub fn display(&self, ring: Ring) -> String {
        let mut parts = Vec::new();
        if self.free > 0 {
            let r = ring.to_string();
            parts.push(if self.free == 1 { r } else { format!("{r}^{}", self.free) });
        }
        let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
        for &t in &self.torsion {
            *counts.entry(t).or_default() += 1;
        }
        for (t, n) in counts {
            parts.push(if n == 1 { format!("Z/{t}") } else { format!("(Z/{t})^{n}") });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ⊕ ")
        }
    }
}

/// One nonzero homology group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyEntry {
    pub grading: Grading,
    #[serde(flatten)]
    pub group: Group,
}

/// Nonzero homology groups sorted by grading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyTable {
    pub ring: Ring,
    pub entries: Vec<HomologyEntry>,
}

impl HomologyTable {
    pub fn from_map(ring: Ring, m: BTreeMap<Grading, Group>) -> Self {
        let entries = m
            .into_iter()
            .filter(|(_, g)| !g.is_zero())
            .map(|(grading, group)| HomologyEntry { grading, group })
            .collect();
        HomologyTable { ring, entries }
    }

    pub fn get(&self, g: Grading) -> Group {
        self.entries.iter().find(|e| e.grading == g).map(|e| e.group.clone()).unwrap_or_default()
    }

    /// F2 dimension of each entry (for F2 tables the number of summands).
    pub fn dims(&self) -> BTreeMap<Grading, usize> {
        self.entries.iter().map(|e| (e.grading, e.group.free + e.group.torsion.len())).collect()
    }
}

const DOWN: Grading = Grading::new(1, 0, 0);

/// Homology over F2 with chosen representatives.
#[derive(Clone, Debug)]
pub struct F2Homology {
    reducer: Reducer,
    by_k: bool,
    basis: BTreeMap<Grading, Vec<u32>>,
    slot: HashMap<u32, (Grading, usize)>,
}

impl F2Homology {
    /// Reduces the mod-2 complex to its homology; the basis in each grading is
    /// indexed by surviving generators in increasing order.
    pub fn compute(c: &GradedComplex) -> Result<Self, ComplexError> {
        let mut reducer = Reducer::new(c.f2_supports());
        reducer.reduce_all();
        debug_assert!(reducer.is_minimal());
        let mut basis: BTreeMap<Grading, Vec<u32>> = BTreeMap::new();
        for s in reducer.survivors() {
            if !reducer.residual(s as usize).is_empty() {
                return Err(ComplexError::NotAComplex(s as usize));
            }
            basis.entry(c.key(c.grading(s as usize))).or_default().push(s);
        }
        let slot = basis
            .iter()
            .flat_map(|(&g, v)| v.iter().enumerate().map(move |(n, &s)| (s, (g, n))))
            .collect();
        let h = F2Homology { reducer, by_k: c.annular() == Annular::Preserved, basis, slot };
        if c.blocks().values().all(|b| b.len() <= DENSE_CHECK_LIMIT) {
            let dense = homology_f2_dense(c);
            assert_eq!(dense, h.dims(), "F2 homology disagrees between cancellation and rank-nullity");
        }
        Ok(h)
    }

    /// The grading under which a generator of grading `g` is recorded.
    pub fn key(&self, g: Grading) -> Grading {
        if self.by_k {
            g
        } else {
            Grading::bi(g.i, g.j)
        }
    }

    pub fn dims(&self) -> BTreeMap<Grading, usize> {
        self.basis.iter().map(|(&g, v)| (g, v.len())).collect()
    }

    pub fn dim(&self, g: Grading) -> usize {
        self.basis.get(&g).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.slot.len()
    }

    pub fn gradings(&self) -> impl Iterator<Item = Grading> + '_ {
        self.basis.keys().copied()
    }

    /// A cycle representing basis class `n` in grading `g`.
    pub fn representative(&self, g: Grading, n: usize) -> Vec<u32> {
        self.reducer.include(self.basis[&g][n])
    }

    /// Coordinates of the class of a cycle; classes in other gradings are returned too.
    pub fn classify(&self, cycle: &[u32]) -> BTreeMap<Grading, BitVec> {
        let mut out: BTreeMap<Grading, BitVec> = BTreeMap::new();
        for s in self.reducer.project(cycle) {
            let (g, n) = self.slot[&s];
            out.entry(g).or_insert_with(|| BitVec::zeros(self.dim(g))).flip(n);
        }
        out
    }

    /// Coordinates of the class of a cycle in grading `g`.
    pub fn coordinates(&self, g: Grading, cycle: &[u32]) -> BitVec {
        self.classify(cycle).remove(&g).unwrap_or_else(|| BitVec::zeros(self.dim(g)))
    }

    pub fn table(&self) -> HomologyTable {
        HomologyTable::from_map(
            Ring::F2,
            self.dims().into_iter().map(|(g, d)| (g, Group { free: d, torsion: Vec::new() })).collect(),
        )
    }
}

/// F2 homology dimensions by rank-nullity on dense blocks.
pub fn homology_f2_dense(c: &GradedComplex) -> BTreeMap<Grading, usize> {
    let mut blocks: BTreeMap<Grading, Vec<u32>> = BTreeMap::new();
    for a in 0..c.len() {
        blocks.entry(c.key(c.grading(a))).or_default().push(a as u32);
    }
    let mut local = vec![0usize; c.len()];
    for v in blocks.values() {
        for (n, &a) in v.iter().enumerate() {
            local[a as usize] = n;
        }
    }
    let rank_out: BTreeMap<Grading, usize> = blocks
        .iter()
        .map(|(&g, src)| {
            let tgt_len = blocks.get(&(g - DOWN)).map_or(0, Vec::len);
            let mut m = F2Matrix::zeros(tgt_len, src.len());
            for (col, &a) in src.iter().enumerate() {
                for &(b, e) in c.diff(a as usize) {
                    if e % 2 != 0 {
                        m.flip(local[b as usize], col);
                    }
                }
            }
            (g, m.rank())
        })
        .collect();
    blocks
        .iter()
        .map(|(&g, v)| {
            let into = rank_out.get(&(g + DOWN)).copied().unwrap_or(0);
            (g, v.len() - rank_out[&g] - into)
        })
        .filter(|&(_, d)| d > 0)
        .collect()
}

/// Integral homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZHomology {
    groups: BTreeMap<Grading, Group>,
}

impl ZHomology {
    /// Cancels unit entries, then takes Smith normal forms of what remains.
    pub fn compute(c: &GradedComplex) -> Result<Self, ComplexError> {
        if c.ring() != Ring::Z {
            return Err(ComplexError::Ring(format!("integral homology needs a complex over Z, got {}", c.ring())));
        }
        let mut red = ZReducer::new((0..c.len()).map(|a| c.diff(a).to_vec()).collect());
        red.reduce_units()?;
        let mut blocks: BTreeMap<Grading, Vec<u32>> = BTreeMap::new();
        for s in red.survivors() {
            blocks.entry(c.key(c.grading(s as usize))).or_default().push(s);
        }
        let mut local = HashMap::new();
        for v in blocks.values() {
            for (n, &a) in v.iter().enumerate() {
                local.insert(a, n);
            }
        }
        // Rank and invariant factors of the differential out of each block.
        let mut out_data: BTreeMap<Grading, (usize, Vec<u64>)> = BTreeMap::new();
        for (&g, src) in &blocks {
            let tgt_len = blocks.get(&(g - DOWN)).map_or(0, Vec::len);
            let mut m = ZMatrix::zeros(tgt_len, src.len());
            let mut any = false;
            for (col, &a) in src.iter().enumerate() {
                for &(b, e) in red.residual(a as usize) {
                    m.set(local[&b], col, e.into());
                    any = true;
                }
            }
            let (rank, torsion) = if any {
                let d = crate::linalg::smith_normal_form(&m).diagonal;
                let rank = d.iter().filter(|x| !x.is_zero()).count();
                let torsion = d
                    .iter()
                    .filter(|x| !x.is_zero() && x.abs() > 1.into())
                    .map(|x| x.abs().to_u64().ok_or(ComplexError::Overflow))
                    .collect::<Result<Vec<_>, _>>()?;
                (rank, torsion)
            } else {
                (0, Vec::new())
            };
            out_data.insert(g, (rank, torsion));
        }
        let groups = blocks
            .iter()
            .map(|(&g, v)| {
                let (r_out, _) = &out_data[&g];
                let (r_in, torsion) = out_data.get(&(g + DOWN)).cloned().unwrap_or_default();
                (g, Group { free: v.len() - r_out - r_in, torsion })
            })
            .filter(|(_, grp)| !grp.is_zero())
            .collect();
        Ok(ZHomology { groups })
    }

    pub fn group(&self, g: Grading) -> Group {
        self.groups.get(&g).cloned().unwrap_or_default()
    }

    pub fn groups(&self) -> &BTreeMap<Grading, Group> {
        &self.groups
    }

    pub fn table(&self) -> HomologyTable {
        HomologyTable::from_map(Ring::Z, self.groups.clone())
    }

    /// Homology with coefficients in Z/m, by universal coefficients.
    fn with_coefficients(&self, m: u64) -> BTreeMap<Grading, Vec<u64>> {
        let mut out: BTreeMap<Grading, Vec<u64>> = BTreeMap::new();
        for (&g, grp) in &self.groups {
            let here = out.entry(g).or_default();
            here.extend(std::iter::repeat_n(m, grp.free));
            here.extend(grp.torsion.iter().map(|t| t.gcd(&m)).filter(|&d| d > 1));
            let tor: Vec<u64> = grp.torsion.iter().map(|t| t.gcd(&m)).filter(|&d| d > 1).collect();
            if !tor.is_empty() {
                out.entry(g + DOWN).or_default().extend(tor);
            }
        }
        out.retain(|_, v| !v.is_empty());
        for v in out.values_mut() {
            v.sort_unstable();
        }
        out
    }

    /// F2 dimensions by universal coefficients.
    pub fn f2_dims(&self) -> BTreeMap<Grading, usize> {
        self.with_coefficients(2).into_iter().map(|(g, v)| (g, v.len())).collect()
    }

    /// Homology over Z/4 by universal coefficients: `Z/4` summands count as free.
    pub fn z4_table(&self) -> HomologyTable {
        let m = self
            .with_coefficients(4)
            .into_iter()
            .map(|(g, v)| {
                let free = v.iter().filter(|&&t| t == 4).count();
                (g, Group { free, torsion: v.into_iter().filter(|&t| t != 4).collect() })
            })
            .collect();
        HomologyTable::from_map(Ring::Z4, m)
    }
}
