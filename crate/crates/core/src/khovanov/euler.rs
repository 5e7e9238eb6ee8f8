//! Graded Euler characteristics.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::cube::GradingData;
use crate::complex::Grading;
use crate::diagram::AnnularDiagram;

/// A Laurent polynomial in `q`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Laurent(pub BTreeMap<i32, i64>);

/// A Laurent polynomial in `q` (quantum) and `a` (annular).
///
/// Serialized as a list of `[j, k, coefficient]` terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<(i32, i32, i64)>", from = "Vec<(i32, i32, i64)>")]
pub struct Laurent2(pub BTreeMap<(i32, i32), i64>);

impl From<Laurent2> for Vec<(i32, i32, i64)> {
    fn from(p: Laurent2) -> Self {
        p.0.into_iter().map(|((j, k), c)| (j, k, c)).collect()
    }
}

impl From<Vec<(i32, i32, i64)>> for Laurent2 {
    fn from(terms: Vec<(i32, i32, i64)>) -> Self {
        let mut p = Laurent2::default();
        for (j, k, c) in terms {
            p.add_term(j, k, c);
        }
        p
    }
}

impl Laurent {
    pub fn add_term(&mut self, j: i32, c: i64) {
        let e = self.0.entry(j).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(&j);
        }
    }

    /// Reduction mod 2 as the set of odd exponents.
    pub fn mod2(&self) -> Vec<i32> {
        self.0.iter().filter(|(_, c)| *c % 2 != 0).map(|(&j, _)| j).collect()
    }

    /// Graded Euler characteristic `Σ (−1)^i dim · q^j` of a homology table.
    pub fn from_dims(dims: &BTreeMap<Grading, usize>) -> Self {
        let mut p = Laurent::default();
        for (g, &d) in dims {
            p.add_term(g.j, if g.i.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) });
        }
        p
    }
}

impl Laurent2 {
    pub fn add_term(&mut self, j: i32, k: i32, c: i64) {
        let e = self.0.entry((j, k)).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(&(j, k));
        }
    }

    /// Forgets the annular variable.
    pub fn forget_annulus(&self) -> Laurent {
        let mut p = Laurent::default();
        for (&(j, _), &c) in &self.0 {
            p.add_term(j, c);
        }
        p
    }

    /// Substitutes `q ↦ q^qs` and `a ↦ q^as_`, then multiplies by `q^shift`.
    pub fn specialize(&self, qs: i32, as_: i32, shift: i32) -> Laurent {
        let mut p = Laurent::default();
        for (&(j, k), &c) in &self.0 {
            p.add_term(qs * j + as_ * k + shift, c);
        }
        p
    }

    pub fn from_dims(dims: &BTreeMap<Grading, usize>) -> Self {
        let mut p = Laurent2::default();
        for (g, &d) in dims {
            p.add_term(g.j, g.k, if g.i.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) });
        }
        p
    }
}

fn term(f: &mut fmt::Formatter<'_>, first: bool, c: i64, mono: &str) -> fmt::Result {
    let sign = match (first, c < 0) {
        (true, false) => "",
        (true, true) => "-",
        (false, false) => " + ",
        (false, true) => " - ",
    };
    let a = c.unsigned_abs();
    if a == 1 && !mono.is_empty() {
        write!(f, "{sign}{mono}")
    } else {
        write!(f, "{sign}{a}{mono}")
    }
}

fn power(v: &str, e: i32) -> String {
    match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (n, (&j, &c)) in self.0.iter().enumerate() {
            term(f, n == 0, c, &power("q", j))?;
        }
        Ok(())
    }
}

impl fmt::Display for Laurent2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (n, (&(j, k), &c)) in self.0.iter().enumerate() {
            let mono = [power("q", j), power("a", k)].into_iter().filter(|s| !s.is_empty()).collect::<Vec<_>>().join("");
            term(f, n == 0, c, &mono)?;
        }
        Ok(())
    }
}

/// Annular Kauffman state sum `Σ_v (−1)^i q^{j₀} (q⁻¹ + q)^{#inessential} (q⁻¹a + qa⁻¹)^{#essential}`.
pub fn annular_state_sum(d: &AnnularDiagram) -> Laurent2 {
    let data = GradingData::of(d);
    let mut total = Laurent2::default();
    for v in 0..1u64 << d.n_crossings() {
        let res = d.resolve_state(v);
        let g = data.grading(&res, 0);
        let mut poly = Laurent2::default();
        poly.add_term(g.j, 0, if g.i.rem_euclid(2) == 0 { 1 } else { -1 });
        // g.j already counts every circle as labeled 1; each X raises j by 2.
        for &e in &res.essential {
            let mut next = Laurent2::default();
            for (&(j, k), &c) in &poly.0 {
                if e {
                    next.add_term(j, k + 1, c);
                    next.add_term(j + 2, k - 1, c);
                } else {
                    next.add_term(j, k, c);
                    next.add_term(j + 2, k, c);
                }
            }
            poly = next;
        }
        for (&(j, k), &c) in &poly.0 {
            total.add_term(j, k, c);
        }
    }
    total
}

/// The state-sum polynomials `(V, AV)` of a diagram.
pub fn euler_characteristics(d: &AnnularDiagram) -> (Laurent, Laurent2) {
    let av = annular_state_sum(d);
    (av.forget_annulus(), av)
}
