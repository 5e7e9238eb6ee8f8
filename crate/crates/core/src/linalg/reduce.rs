//! Sparse Gaussian elimination of F2 chain complexes by cancelling arrows.
//!
//! A differential is stored as adjacency lists: `out[a]` is the support of
//! `D(a)`. Cancelling an arrow `a → b` removes both generators and adds
//! `D(a)` minus `b` to every other generator whose differential contains
//! `b`, which is the zig-zag formula `D' = D_WW + D_Wa D_bW` for the
//! quotient by the acyclic subcomplex spanned by `a` and `D(a)`.

use std::collections::BTreeMap;

/// One cancellation, with the data needed to transport vectors across it.
#[derive(Clone, Debug)]
struct Cancel {
    a: u32,
    b: u32,
    /// Support of `D(a)` outside `{a, b}` at cancellation time.
    p: Vec<u32>,
    /// Generators other than `a`, `b` whose differential contained `b`.
    q: Vec<u32>,
}

/// A complex being reduced in place, with a record of all cancellations.
#[derive(Clone, Debug)]
pub struct Reducer {
    out: Vec<Vec<u32>>,
    inn: Vec<Vec<u32>>,
    alive: Vec<bool>,
    steps: Vec<Cancel>,
}

fn remove_sorted(v: &mut Vec<u32>, x: u32) {
    if let Ok(i) = v.binary_search(&x) {
        v.remove(i);
    }
}

fn toggle_sorted(v: &mut Vec<u32>, x: u32) -> bool {
    match v.binary_search(&x) {
        Ok(i) => {
            v.remove(i);
            false
        }
        Err(i) => {
            v.insert(i, x);
            true
        }
    }
}

/// Symmetric difference of sorted lists.
fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Normalises a support list: sorted, with repeated entries cancelling in pairs.
pub fn normalize_support(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    let mut out: Vec<u32> = Vec::with_capacity(v.len());
    for x in v {
        if out.last() == Some(&x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

impl Reducer {
    /// Takes the differential as supports; entries are normalised mod 2.
    pub fn new(out: Vec<Vec<u32>>) -> Self {
        let n = out.len();
        let out: Vec<Vec<u32>> = out.into_iter().map(normalize_support).collect();
        let mut inn = vec![Vec::new(); n];
        for (a, targets) in out.iter().enumerate() {
            for &b in targets {
                inn[b as usize].push(a as u32);
            }
        }
        Reducer { out, inn, alive: vec![true; n], steps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.out.len()
    }

    pub fn is_empty(&self) -> bool {
        self.out.is_empty()
    }

    pub fn is_alive(&self, a: usize) -> bool {
        self.alive[a]
    }

    /// Current differential of a surviving generator.
    pub fn residual(&self, a: usize) -> &[u32] {
        &self.out[a]
    }

    pub fn survivors(&self) -> Vec<u32> {
        (0..self.len() as u32).filter(|&a| self.alive[a as usize]).collect()
    }

    pub fn n_cancellations(&self) -> usize {
        self.steps.len()
    }

    /// Whether the reduced differential has no arrows between distinct generators.
    pub fn is_minimal(&self) -> bool {
        (0..self.len()).all(|a| !self.alive[a] || self.out[a].iter().all(|&b| b as usize == a))
    }

    /// Cancels the arrow `a → b`; `b` must lie in the support of `D(a)` and differ from `a`.
    pub fn cancel(&mut self, a: u32, b: u32) {
        let (au, bu) = (a as usize, b as usize);
        debug_assert!(a != b && self.alive[au] && self.alive[bu]);
        debug_assert!(self.out[au].binary_search(&b).is_ok());
        let p: Vec<u32> = self.out[au].iter().copied().filter(|&x| x != a && x != b).collect();
        let q: Vec<u32> = self.inn[bu].iter().copied().filter(|&x| x != a && x != b).collect();
        for g in [a, b] {
            let gu = g as usize;
            for t in std::mem::take(&mut self.out[gu]) {
                if t != a && t != b {
                    remove_sorted(&mut self.inn[t as usize], g);
                }
            }
            for s in std::mem::take(&mut self.inn[gu]) {
                if s != a && s != b {
                    remove_sorted(&mut self.out[s as usize], g);
                }
            }
            self.alive[gu] = false;
        }
        for &w in &q {
            let wu = w as usize;
            if p.len() <= 4 {
                for &u in &p {
                    if toggle_sorted(&mut self.out[wu], u) {
                        let l = &mut self.inn[u as usize];
                        let i = l.binary_search(&w).unwrap_err();
                        l.insert(i, w);
                    } else {
                        remove_sorted(&mut self.inn[u as usize], w);
                    }
                }
            } else {
                let merged = xor_sorted(&self.out[wu], &p);
                for &u in &p {
                    let l = &mut self.inn[u as usize];
                    match l.binary_search(&w) {
                        Ok(i) => {
                            l.remove(i);
                        }
                        Err(i) => l.insert(i, w),
                    }
                }
                self.out[wu] = merged;
            }
        }
        self.steps.push(Cancel { a, b, p, q });
    }

    /// Cancels arrows until only self-loops remain.
    pub fn reduce_all(&mut self) {
        loop {
            let mut progress = false;
            for a in 0..self.len() {
                if !self.alive[a] {
                    continue;
                }
                if let Some(b) = self.best_target(a, |_| true) {
                    self.cancel(a as u32, b);
                    progress = true;
                }
            }
            if !progress {
                break;
            }
        }
    }

    /// Chooses the target of `a` with the fewest incoming arrows, among those accepted by `keep`.
    fn best_target(&self, a: usize, keep: impl Fn(u32) -> bool) -> Option<u32> {
        self.out[a]
            .iter()
            .copied()
            .filter(|&b| b as usize != a && keep(b))
            .min_by_key(|&b| (self.inn[b as usize].len(), b))
    }

    /// Cancels every arrow that raises `filtration` by exactly `r`, assuming none raises it by less.
    ///
    /// Returns the cancelled pairs in order.
    pub fn reduce_filtered_stage(&mut self, filtration: &[i64], r: i64) -> Vec<(u32, u32)> {
        let mut done = Vec::new();
        loop {
            let mut progress = false;
            for a in 0..self.len() {
                if !self.alive[a] {
                    continue;
                }
                let fa = filtration[a];
                if let Some(b) = self.best_target(a, |b| filtration[b as usize] - fa == r) {
                    self.cancel(a as u32, b);
                    done.push((a as u32, b));
                    progress = true;
                }
            }
            if !progress {
                break;
            }
        }
        done
    }

    /// Smallest filtration raise among the remaining arrows between distinct generators.
    pub fn min_drop(&self, filtration: &[i64]) -> Option<i64> {
        (0..self.len())
            .filter(|&a| self.alive[a])
            .flat_map(|a| self.out[a].iter().filter(move |&&b| b as usize != a).map(move |&b| filtration[b as usize] - filtration[a]))
            .min()
    }

    /// Image of a vector (given by its support) under the projection onto the survivors.
    pub fn project(&self, support: &[u32]) -> Vec<u32> {
        let mut x = vec![false; self.len()];
        for &s in support {
            x[s as usize] ^= true;
        }
        for c in &self.steps {
            let hit_b = x[c.b as usize];
            x[c.a as usize] = false;
            x[c.b as usize] = false;
            if hit_b {
                for &u in &c.p {
                    x[u as usize] ^= true;
                }
            }
        }
        (0..self.len() as u32).filter(|&i| x[i as usize]).collect()
    }

    /// A chain-level lift of a surviving generator, inverse to the projection up to homotopy.
    pub fn include(&self, s: u32) -> Vec<u32> {
        let mut y = vec![false; self.len()];
        y[s as usize] = true;
        for c in self.steps.iter().rev() {
            let parity = c.q.iter().filter(|&&w| y[w as usize]).count() % 2;
            if parity == 1 {
                y[c.a as usize] ^= true;
            }
        }
        (0..self.len() as u32).filter(|&i| y[i as usize]).collect()
    }

    /// The homotopy `h` of the reduction, with `ι∘π = 1 + d h + h d`.
    ///
    /// It is the sum over cancellations `a → b` of `ι_{<k}(a)` weighted by the
    /// `b`-coefficient of the partially projected input.
    pub fn homotopy(&self, support: &[u32]) -> Vec<u32> {
        let mut x = vec![false; self.len()];
        for &s in support {
            x[s as usize] ^= true;
        }
        let mut hit = vec![false; self.steps.len()];
        for (k, c) in self.steps.iter().enumerate() {
            hit[k] = x[c.b as usize];
            x[c.a as usize] = false;
            x[c.b as usize] = false;
            if hit[k] {
                for &u in &c.p {
                    x[u as usize] ^= true;
                }
            }
        }
        let mut y = vec![false; self.len()];
        for (k, c) in self.steps.iter().enumerate().rev() {
            if c.q.iter().filter(|&&w| y[w as usize]).count() % 2 == 1 {
                y[c.a as usize] ^= true;
            }
            if hit[k] {
                y[c.a as usize] ^= true;
            }
        }
        (0..self.len() as u32).filter(|&i| y[i as usize]).collect()
    }

    /// `ι` applied to a combination of survivors.
    pub fn include_all(&self, survivors: &[u32]) -> Vec<u32> {
        normalize_support(survivors.iter().flat_map(|&s| self.include(s)).collect())
    }

    /// Survivor counts grouped by a key.
    pub fn count_survivors_by<K: Ord>(&self, key: impl Fn(usize) -> K) -> BTreeMap<K, usize> {
        let mut m = BTreeMap::new();
        for a in 0..self.len() {
            if self.alive[a] {
                *m.entry(key(a)).or_insert(0) += 1;
            }
        }
        m
    }
}

/// Applies a sparse F2 differential to a vector given by its support.
pub fn apply_sparse(out: &[Vec<u32>], support: &[u32]) -> Vec<u32> {
    normalize_support(support.iter().flat_map(|&a| out[a as usize].iter().copied()).collect())
}
