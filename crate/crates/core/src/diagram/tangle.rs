//! Quotient tangles: the single source of truth for every diagram.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::pd::Slot;
use crate::error::DiagramError;

/// Which lifted strand passes over at the on-axis crossing.
///
/// With endpoints `(e1, e2)` in counterclockwise order from the reference
/// ray, `OverFirst` lifts `e1` to the overpass and `UnderFirst` lifts `e1` to
/// the underpass.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AxisCrossing {
    OverFirst,
    UnderFirst,
}

/// Where an arc of the tangle ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum End {
    Axis,
    At(Slot),
}

/// An embedded arc with both endpoints on the axis, recorded combinatorially.
///
/// Arcs are indexed in traversal order from the first endpoint to the second,
/// so arc 0 starts at the axis and the last arc ends there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientTangle {
    names: Vec<String>,
    endpoint_names: [String; 2],
    crossings: Vec<[usize; 4]>,
    axis: AxisCrossing,
    ray_hits: Vec<u32>,
    ends: Vec<[End; 2]>,
}

#[derive(Serialize, Deserialize)]
struct TangleJson {
    crossings: Vec<[String; 4]>,
    #[serde(default)]
    axis: Option<String>,
    endpoints: [String; 2],
    #[serde(default)]
    ray: BTreeMap<String, u32>,
}

impl QuotientTangle {
    /// Builds and validates a tangle from named data.
    pub fn from_parts(
        crossings: &[[String; 4]],
        axis: AxisCrossing,
        endpoints: [String; 2],
        ray: &[(String, u32)],
    ) -> Result<Self, DiagramError> {
        if endpoints[0] == endpoints[1] {
            return Err(DiagramError::EndpointsEqual);
        }
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut raw_names: Vec<String> = Vec::new();
        let mut intern = |s: &str| -> usize {
            if let Some(&i) = index.get(s) {
                return i;
            }
            index.insert(s.to_string(), raw_names.len());
            raw_names.push(s.to_string());
            raw_names.len() - 1
        };
        let raw: Vec<[usize; 4]> = crossings.iter().map(|x| [0, 1, 2, 3].map(|s| intern(&x[s]))).collect();
        let e = [intern(&endpoints[0]), intern(&endpoints[1])];
        let n_raw = raw_names.len();
        let mut hits_raw = vec![0u32; n_raw];
        let mut seen_ray = std::collections::HashSet::new();
        for (a, h) in ray {
            let i = *index.get(a.as_str()).ok_or_else(|| DiagramError::UnknownArc(a.clone()))?;
            if !seen_ray.insert(i) {
                return Err(DiagramError::Syntax {
                    line: 0,
                    column: 0,
                    message: format!("ray count for `{a}` given twice"),
                });
            }
            hits_raw[i] = *h;
        }

        if raw.is_empty() {
            return Ok(QuotientTangle {
                names: vec![endpoints[0].clone()],
                endpoint_names: endpoints,
                crossings: Vec::new(),
                axis,
                ray_hits: vec![hits_raw.iter().sum()],
                ends: vec![[End::Axis, End::Axis]],
            });
        }

        let mut occ: Vec<Vec<End>> = vec![Vec::new(); n_raw];
        for (c, x) in raw.iter().enumerate() {
            for s in 0..4 {
                occ[x[s]].push(End::At(Slot::new(c, s as u8)));
            }
        }
        occ[e[0]].push(End::Axis);
        occ[e[1]].push(End::Axis);
        for (a, o) in occ.iter().enumerate() {
            if o.len() != 2 {
                return Err(DiagramError::ArcMultiplicity { arc: raw_names[a].clone(), count: o.len() });
            }
        }

        // Traverse from the first endpoint.
        let mut order = Vec::with_capacity(n_raw);
        let mut raw_ends = Vec::with_capacity(n_raw);
        let mut visited = vec![false; n_raw];
        let mut cur = e[0];
        let mut tail = End::Axis;
        loop {
            if visited[cur] {
                return Err(DiagramError::Disconnected { missed: n_raw - order.len() });
            }
            visited[cur] = true;
            let head = if occ[cur][0] == tail { occ[cur][1] } else { occ[cur][0] };
            order.push(cur);
            raw_ends.push([tail, head]);
            match head {
                End::Axis => break,
                End::At(s) => {
                    let out = Slot::new(s.crossing, (s.slot + 2) % 4);
                    cur = raw[out.crossing][out.slot as usize];
                    tail = End::At(out);
                }
            }
        }
        if order.len() != n_raw {
            return Err(DiagramError::Disconnected { missed: n_raw - order.len() });
        }
        let mut new_index = vec![0; n_raw];
        for (i, &a) in order.iter().enumerate() {
            new_index[a] = i;
        }
        Ok(QuotientTangle {
            names: order.iter().map(|&a| raw_names[a].clone()).collect(),
            endpoint_names: endpoints,
            crossings: raw.iter().map(|x| x.map(|a| new_index[a])).collect(),
            axis,
            ray_hits: order.iter().map(|&a| hits_raw[a]).collect(),
            ends: raw_ends,
        })
    }

    /// Parses the line-based tangle format.
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let mut crossings = Vec::new();
        let mut axis = None;
        let mut endpoints = None;
        let mut ray = Vec::new();
        for (ln, raw_line) in text.lines().enumerate() {
            let line = raw_line.split('#').next().unwrap_or("");
            let mut toks = tokens(line);
            let Some((col0, key)) = toks.next() else { continue };
            let rest: Vec<(usize, &str)> = toks.collect();
            let err = |column: usize, message: String| DiagramError::Syntax { line: ln + 1, column, message };
            match key {
                "X" => {
                    if rest.len() != 4 {
                        return Err(err(col0, format!("crossing needs 4 arcs, found {}", rest.len())));
                    }
                    for &(c, t) in &rest {
                        check_name(t).map_err(|m| err(c, m))?;
                    }
                    crossings.push([0, 1, 2, 3].map(|i| rest[i].1.to_string()));
                }
                "axis" => {
                    if axis.is_some() {
                        return Err(err(col0, "duplicate `axis` line".into()));
                    }
                    axis = Some(match rest.as_slice() {
                        [(_, "over")] => AxisCrossing::OverFirst,
                        [(_, "under")] => AxisCrossing::UnderFirst,
                        [(c, t)] => return Err(err(*c, format!("expected `over` or `under`, found `{t}`"))),
                        _ => return Err(err(col0, "`axis` takes one word".into())),
                    });
                }
                "endpoints" => {
                    if endpoints.is_some() {
                        return Err(err(col0, "duplicate `endpoints` line".into()));
                    }
                    if rest.len() != 2 {
                        return Err(err(col0, "`endpoints` takes two arcs".into()));
                    }
                    for &(c, t) in &rest {
                        check_name(t).map_err(|m| err(c, m))?;
                    }
                    endpoints = Some([rest[0].1.to_string(), rest[1].1.to_string()]);
                }
                "ray" => {
                    for &(c, t) in &rest {
                        let (a, n) = t
                            .split_once(':')
                            .ok_or_else(|| err(c, format!("expected `arc:count`, found `{t}`")))?;
                        check_name(a).map_err(|m| err(c, m))?;
                        let n: u32 = n
                            .parse()
                            .map_err(|_| err(c + a.len() + 1, format!("invalid count `{n}`")))?;
                        ray.push((a.to_string(), n));
                    }
                }
                other => return Err(err(col0, format!("unknown directive `{other}`"))),
            }
        }
        let endpoints = endpoints.ok_or(DiagramError::Missing("endpoints"))?;
        Self::from_parts(&crossings, axis.unwrap_or(AxisCrossing::OverFirst), endpoints, &ray)
    }

    /// Parses the JSON mirror of the tangle format.
    pub fn parse_json(text: &str) -> Result<Self, DiagramError> {
        let j: TangleJson = serde_json::from_str(text).map_err(|e| DiagramError::Json(e.to_string()))?;
        let axis = match j.axis.as_deref() {
            None | Some("over") => AxisCrossing::OverFirst,
            Some("under") => AxisCrossing::UnderFirst,
            Some(o) => return Err(DiagramError::Json(format!("axis must be `over` or `under`, found `{o}`"))),
        };
        let ray: Vec<(String, u32)> = j.ray.into_iter().collect();
        Self::from_parts(&j.crossings, axis, j.endpoints, &ray)
    }

    /// Parses by file name: `.json` selects the JSON mirror.
    pub fn parse_named(name: &str, text: &str) -> Result<Self, DiagramError> {
        if name.ends_with(".json") {
            Self::parse_json(text)
        } else {
            Self::parse(text)
        }
    }

    /// Canonical text form; parsing it returns an identical tangle.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for x in &self.crossings {
            s.push_str(&format!("X {}\n", x.map(|a| self.names[a].as_str()).join(" ")));
        }
        s.push_str(match self.axis {
            AxisCrossing::OverFirst => "axis over\n",
            AxisCrossing::UnderFirst => "axis under\n",
        });
        s.push_str(&format!("endpoints {} {}\n", self.endpoint_names[0], self.endpoint_names[1]));
        let hits: Vec<String> = self.ray_entries().into_iter().map(|(a, h)| format!("{a}:{h}")).collect();
        if !hits.is_empty() {
            s.push_str(&format!("ray {}\n", hits.join(" ")));
        }
        s
    }

    /// JSON mirror of [`to_text`](Self::to_text).
    pub fn to_json(&self) -> String {
        let j = TangleJson {
            crossings: self.crossings.iter().map(|x| x.map(|a| self.names[a].clone())).collect(),
            axis: Some(
                match self.axis {
                    AxisCrossing::OverFirst => "over",
                    AxisCrossing::UnderFirst => "under",
                }
                .into(),
            ),
            endpoints: self.endpoint_names.clone(),
            ray: self.ray_entries().into_iter().collect(),
        };
        serde_json::to_string_pretty(&j).expect("serializable")
    }

    fn ray_entries(&self) -> Vec<(String, u32)> {
        self.names
            .iter()
            .zip(&self.ray_hits)
            .filter(|(_, &h)| h > 0)
            .map(|(a, &h)| (a.clone(), h))
            .collect()
    }

    /// Number of crossings `N̄`.
    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn n_arcs(&self) -> usize {
        self.names.len()
    }

    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    pub fn axis(&self) -> AxisCrossing {
        self.axis
    }

    pub fn ray_hits(&self) -> &[u32] {
        &self.ray_hits
    }

    pub fn arc_name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn endpoint_names(&self) -> &[String; 2] {
        &self.endpoint_names
    }

    /// `[tail, head]` of arc `a` in traversal order.
    pub fn ends(&self, a: usize) -> [End; 2] {
        self.ends[a]
    }

    /// Index of the last arc (the one ending at the second endpoint).
    pub fn last_arc(&self) -> usize {
        self.names.len() - 1
    }

    /// Crossing signs of the quotient knot, oriented by traversal.
    pub fn crossing_signs(&self) -> Vec<i8> {
        (0..self.n_crossings())
            .map(|c| {
                let x = self.crossings[c];
                let under_forward = self.ends[x[0]][1] == End::At(Slot::new(c, 0));
                let over_3_to_1 = self.ends[x[3]][1] == End::At(Slot::new(c, 3));
                if under_forward == over_3_to_1 {
                    1
                } else {
                    -1
                }
            })
            .collect()
    }
}

fn check_name(t: &str) -> Result<(), String> {
    if t.is_empty() || t.contains(':') {
        Err(format!("invalid arc name `{t}`"))
    } else {
        Ok(())
    }
}

fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out.into_iter()
}
