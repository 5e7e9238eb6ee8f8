//! Sparse elimination of unit entries in integral chain complexes.

use crate::error::ComplexError;

/// An integral complex reduced by cancelling arrows with coefficient ±1.
#[derive(Clone, Debug)]
pub struct ZReducer {
    out: Vec<Vec<(u32, i64)>>,
    inn: Vec<Vec<u32>>,
    alive: Vec<bool>,
}

fn insert_sorted(v: &mut Vec<u32>, x: u32) {
    if let Err(i) = v.binary_search(&x) {
        v.insert(i, x);
    }
}

fn remove_sorted(v: &mut Vec<u32>, x: u32) {
    if let Ok(i) = v.binary_search(&x) {
        v.remove(i);
    }
}

/// `a + c·b` for sparse integer vectors sorted by index.
fn axpy(a: &[(u32, i64)], c: i64, b: &[(u32, i64)]) -> Result<Vec<(u32, i64)>, ComplexError> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            let v = b[j].1.checked_mul(c).ok_or(ComplexError::Overflow)?;
            out.push((b[j].0, v));
            j += 1;
        } else {
            let v = b[j].1.checked_mul(c).and_then(|v| v.checked_add(a[i].1)).ok_or(ComplexError::Overflow)?;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

impl ZReducer {
    /// Takes `D(a)` as lists of `(target, coefficient)`; duplicates are summed.
    pub fn new(out: Vec<Vec<(u32, i64)>>) -> Self {
        let n = out.len();
        let out: Vec<Vec<(u32, i64)>> = out
            .into_iter()
            .map(|mut v| {
                v.sort_unstable_by_key(|e| e.0);
                let mut merged: Vec<(u32, i64)> = Vec::with_capacity(v.len());
                for (t, c) in v {
                    match merged.last_mut() {
                        Some(last) if last.0 == t => last.1 += c,
                        _ => merged.push((t, c)),
                    }
                }
                merged.retain(|e| e.1 != 0);
                merged
            })
            .collect();
        let mut inn = vec![Vec::new(); n];
        for (a, targets) in out.iter().enumerate() {
            for &(b, _) in targets {
                inn[b as usize].push(a as u32);
            }
        }
        ZReducer { out, inn, alive: vec![true; n] }
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

    pub fn residual(&self, a: usize) -> &[(u32, i64)] {
        &self.out[a]
    }

    /// Cancels `a → b` where the coefficient is a unit.
    fn cancel(&mut self, a: u32, b: u32, unit: i64) -> Result<(), ComplexError> {
        let (au, bu) = (a as usize, b as usize);
        let da: Vec<(u32, i64)> = self.out[au].iter().copied().filter(|e| e.0 != a && e.0 != b).collect();
        let q: Vec<(u32, i64)> = self.inn[bu]
            .iter()
            .copied()
            .filter(|&x| x != a && x != b)
            .map(|w| {
                let l = &self.out[w as usize];
                (w, l[l.binary_search_by_key(&b, |e| e.0).expect("inn and out agree")].1)
            })
            .collect();
        for g in [a, b] {
            let gu = g as usize;
            for (t, _) in std::mem::take(&mut self.out[gu]) {
                if t != a && t != b {
                    remove_sorted(&mut self.inn[t as usize], g);
                }
            }
            for s in std::mem::take(&mut self.inn[gu]) {
                if s != a && s != b {
                    let l = &mut self.out[s as usize];
                    if let Ok(i) = l.binary_search_by_key(&g, |e| e.0) {
                        l.remove(i);
                    }
                }
            }
            self.alive[gu] = false;
        }
        for (w, cb) in q {
            let wu = w as usize;
            let c = cb.checked_mul(unit).and_then(i64::checked_neg).ok_or(ComplexError::Overflow)?;
            let old = std::mem::take(&mut self.out[wu]);
            let new = axpy(&old, c, &da)?;
            for &(u, _) in &da {
                let before = old.binary_search_by_key(&u, |e| e.0).is_ok();
                let after = new.binary_search_by_key(&u, |e| e.0).is_ok();
                match (before, after) {
                    (false, true) => insert_sorted(&mut self.inn[u as usize], w),
                    (true, false) => remove_sorted(&mut self.inn[u as usize], w),
                    _ => {}
                }
            }
            self.out[wu] = new;
        }
        Ok(())
    }

    /// Cancels unit arrows until none remain.
    pub fn reduce_units(&mut self) -> Result<(), ComplexError> {
        loop {
            let mut progress = false;
            for a in 0..self.len() {
                if !self.alive[a] {
                    continue;
                }
                let pick = self.out[a]
                    .iter()
                    .filter(|e| e.0 as usize != a && (e.1 == 1 || e.1 == -1))
                    .min_by_key(|e| (self.inn[e.0 as usize].len(), e.0))
                    .copied();
                if let Some((b, u)) = pick {
                    self.cancel(a as u32, b, u)?;
                    progress = true;
                }
            }
            if !progress {
                return Ok(());
            }
        }
    }

    pub fn survivors(&self) -> Vec<u32> {
        (0..self.len() as u32).filter(|&a| self.alive[a as usize]).collect()
    }
}
