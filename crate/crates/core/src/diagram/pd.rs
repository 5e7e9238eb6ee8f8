//! Planar diagram codes.
//!
//! A crossing is a 4-tuple of arc indices listed counterclockwise starting
//! from the incoming under-strand, so slots 0 and 2 carry the under-strand
//! and slots 1 and 3 the over-strand. The 0-resolution joins slots (0,1)
//! and (2,3); the 1-resolution joins (0,3) and (1,2).

use crate::error::DiagramError;

/// One end of an arc: a crossing and a slot in `0..4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub crossing: usize,
    pub slot: u8,
}

impl Slot {
    pub fn new(crossing: usize, slot: u8) -> Self {
        Slot { crossing, slot }
    }
}

/// Slot paired with `s` by the resolution `state` of a crossing.
#[inline]
pub fn resolved_partner(state: bool, s: u8) -> u8 {
    if state {
        3 - s
    } else {
        s ^ 1
    }
}

/// An oriented planar diagram. Arcs without ends are crossingless loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pd {
    crossings: Vec<[usize; 4]>,
    /// `[tail, head]` for arcs meeting crossings, in the orientation of their component.
    ends: Vec<Option<[Slot; 2]>>,
}

impl Pd {
    /// Builds a diagram, orienting every component starting from its lowest arc.
    ///
    /// The lowest arc of a component is oriented away from its first slot in
    /// crossing order.
    pub fn new(crossings: Vec<[usize; 4]>, n_arcs: usize) -> Result<Self, DiagramError> {
        Self::with_start(crossings, n_arcs, None)
    }

    /// Builds a diagram whose component through `arc` is oriented so that `arc` ends at `head`.
    pub fn oriented(
        crossings: Vec<[usize; 4]>,
        n_arcs: usize,
        arc: usize,
        head: Slot,
    ) -> Result<Self, DiagramError> {
        Self::with_start(crossings, n_arcs, Some((arc, head)))
    }

    fn with_start(
        crossings: Vec<[usize; 4]>,
        n_arcs: usize,
        start: Option<(usize, Slot)>,
    ) -> Result<Self, DiagramError> {
        if crossings.len() > 63 {
            return Err(DiagramError::TooLarge(crossings.len()));
        }
        let mut occ: Vec<Vec<Slot>> = vec![Vec::new(); n_arcs];
        for (c, x) in crossings.iter().enumerate() {
            for (s, &a) in x.iter().enumerate() {
                if a >= n_arcs {
                    return Err(DiagramError::NotPlanar(format!("arc index {a} out of range")));
                }
                occ[a].push(Slot::new(c, s as u8));
            }
        }
        for (a, o) in occ.iter().enumerate() {
            if !(o.is_empty() || o.len() == 2) {
                return Err(DiagramError::ArcMultiplicity {
                    arc: a.to_string(),
                    count: o.len(),
                });
            }
        }
        let mut pd = Pd {
            crossings,
            ends: occ
                .iter()
                .map(|o| if o.is_empty() { None } else { Some([o[0], o[1]]) })
                .collect(),
        };
        let mut done = vec![false; n_arcs];
        let mut starts: Vec<(usize, Slot)> = Vec::new();
        if let Some((a, head)) = start {
            match pd.ends.get(a).copied().flatten() {
                Some(e) if e.contains(&head) => starts.push((a, head)),
                _ => return Err(DiagramError::NotPlanar(format!("arc {a} does not end at {head:?}"))),
            }
        }
        for a in 0..n_arcs {
            if let Some(e) = pd.ends[a] {
                starts.push((a, e[1]));
            }
        }
        for (a, head) in starts {
            if done[a] {
                continue;
            }
            let (mut cur, mut h) = (a, head);
            loop {
                let e = pd.ends[cur].expect("arc with ends");
                let tail = if e[0] == h { e[1] } else { e[0] };
                pd.ends[cur] = Some([tail, h]);
                done[cur] = true;
                let out = Slot::new(h.crossing, (h.slot + 2) % 4);
                let next = pd.arc_at(out);
                let ne = pd.ends[next].expect("arc with ends");
                let nh = if ne[0] == out { ne[1] } else { ne[0] };
                if done[next] {
                    break;
                }
                cur = next;
                h = nh;
            }
        }
        Ok(pd)
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn n_arcs(&self) -> usize {
        self.ends.len()
    }

    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    #[inline]
    pub fn arc_at(&self, s: Slot) -> usize {
        self.crossings[s.crossing][s.slot as usize]
    }

    /// `[tail, head]` of an arc, or `None` for a crossingless loop.
    pub fn ends(&self, arc: usize) -> Option<[Slot; 2]> {
        self.ends[arc]
    }

    /// The arc leaving a crossing along the same strand after arriving at `head`.
    fn strand_successor(&self, head: Slot) -> usize {
        self.arc_at(Slot::new(head.crossing, (head.slot + 2) % 4))
    }

    /// Components as arc sequences in orientation order.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n_arcs()];
        let mut comps = Vec::new();
        for a in 0..self.n_arcs() {
            if seen[a] {
                continue;
            }
            let mut comp = vec![a];
            seen[a] = true;
            if let Some(e) = self.ends[a] {
                let mut cur = self.strand_successor(e[1]);
                while !seen[cur] {
                    seen[cur] = true;
                    comp.push(cur);
                    cur = self.strand_successor(self.ends[cur].unwrap()[1]);
                }
            }
            comps.push(comp);
        }
        comps
    }

    /// Sign of each crossing under the stored orientation.
    pub fn signs(&self) -> Vec<i8> {
        (0..self.n_crossings())
            .map(|c| {
                let x = self.crossings[c];
                let under_forward = self.ends[x[0]].unwrap()[1] == Slot::new(c, 0);
                let over_3_to_1 = self.ends[x[3]].unwrap()[1] == Slot::new(c, 3);
                if under_forward == over_3_to_1 {
                    1
                } else {
                    -1
                }
            })
            .collect()
    }

    /// Number of negative crossings.
    pub fn n_negative(&self) -> usize {
        self.signs().iter().filter(|&&s| s < 0).count()
    }

    /// Traces the circles of the resolution `state` (bit `c` is crossing `c`).
    ///
    /// Circles are numbered by their lowest arc and list arcs in cyclic order.
    pub fn trace_circles(&self, state: u64) -> (Vec<Vec<usize>>, Vec<usize>) {
        let n = self.n_arcs();
        let mut circle_of = vec![usize::MAX; n];
        let mut circles = Vec::new();
        for start in 0..n {
            if circle_of[start] != usize::MAX {
                continue;
            }
            let id = circles.len();
            let mut circ = vec![start];
            circle_of[start] = id;
            if let Some(e) = self.ends[start] {
                let mut arrive = e[1];
                loop {
                    let st = state >> arrive.crossing & 1 == 1;
                    let leave = Slot::new(arrive.crossing, resolved_partner(st, arrive.slot));
                    let next = self.arc_at(leave);
                    let ne = self.ends[next].unwrap();
                    let next_arrive = if ne[0] == leave { ne[1] } else { ne[0] };
                    if next == start && leave == e[0] {
                        break;
                    }
                    circle_of[next] = id;
                    circ.push(next);
                    arrive = next_arrive;
                }
            }
            circles.push(circ);
        }
        (circles, circle_of)
    }

    /// Faces of the embedded 4-valent graph.
    ///
    /// Directed edge `2a` runs tail→head along arc `a`, `2a+1` head→tail.
    /// Returns the face to the left of every directed edge and the face count.
    /// Crossingless loops are not part of the graph and get `usize::MAX`.
    pub fn faces(&self) -> (Vec<usize>, usize) {
        let n = self.n_arcs();
        let mut face = vec![usize::MAX; 2 * n];
        let mut count = 0;
        for start in 0..2 * n {
            if face[start] != usize::MAX || self.ends[start / 2].is_none() {
                continue;
            }
            let mut e = start;
            loop {
                face[e] = count;
                let [tail, head] = self.ends[e / 2].unwrap();
                let arrive = if e % 2 == 0 { head } else { tail };
                let leave = Slot::new(arrive.crossing, (arrive.slot + 3) % 4);
                let b = self.arc_at(leave);
                let be = self.ends[b].unwrap();
                e = if be[0] == leave { 2 * b } else { 2 * b + 1 };
                if e == start {
                    break;
                }
            }
            count += 1;
        }
        (face, count)
    }

    /// Checks the Euler characteristic of the face structure.
    pub fn check_planar(&self) -> Result<(), DiagramError> {
        let n = self.n_crossings();
        if n == 0 {
            return Ok(());
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in self.ends.iter().flatten() {
            let (a, b) = (find(&mut parent, e[0].crossing), find(&mut parent, e[1].crossing));
            parent[a] = b;
        }
        let pieces = (0..n).filter(|&c| find(&mut parent, c) == c).count();
        let (_, f) = self.faces();
        if f != n + 1 + pieces {
            return Err(DiagramError::NotPlanar(format!("{f} faces for {n} crossings")));
        }
        Ok(())
    }
}

/// Union-find circle count, used as an independent check of [`Pd::trace_circles`].
pub fn union_find_circles(pd: &Pd, state: u64) -> Vec<usize> {
    let n = pd.n_arcs();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (c, x) in pd.crossings().iter().enumerate() {
        let pairs: [(usize, usize); 2] = if state >> c & 1 == 1 { [(0, 3), (1, 2)] } else { [(0, 1), (2, 3)] };
        for (s, t) in pairs {
            let (ra, rb) = (find(&mut parent, x[s]), find(&mut parent, x[t]));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    let mut out = vec![0; n];
    for a in 0..n {
        let r = find(&mut parent, a);
        if label[r] == usize::MAX {
            label[r] = next;
            next += 1;
        }
        out[a] = label[r];
    }
    out
}
