//! Weighted undirected graphs, vertex colorings, and exact shortest paths.
//!
//! Everything in here is the ground truth the oracles are checked against:
//! Dijkstra from one or many sources, connected components, and the
//! brute-force nearest colored node.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type Color = u32;
/// Exact distance; `None` means unreachable.
pub type Dist = Option<u64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub w: u64,
}

/// Undirected multigraph with positive integer weights and CSR adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    adj: Vec<(VertexId, u64)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        let mut degree = vec![0usize; n + 1];
        for e in &edges {
            if e.u >= n {
                return Err(Error::InvalidVertex(e.u));
            }
            if e.v >= n {
                return Err(Error::InvalidVertex(e.v));
            }
            if e.w == 0 {
                return Err(Error::ZeroWeight { u: e.u, v: e.v });
            }
            degree[e.u] += 1;
            degree[e.v] += 1;
        }
        let mut offsets = vec![0usize; n + 1];
        for i in 0..n {
            offsets[i + 1] = offsets[i] + degree[i];
        }
        let mut fill = offsets.clone();
        let mut adj = vec![(0, 0); offsets[n]];
        for e in &edges {
            adj[fill[e.u]] = (e.v, e.w);
            fill[e.u] += 1;
            adj[fill[e.v]] = (e.u, e.w);
            fill[e.v] += 1;
        }
        Ok(Self {
            n,
            edges,
            offsets,
            adj,
        })
    }

    /// Convenience constructor from `(u, v, w)` triples.
    pub fn from_triples(n: usize, triples: &[(VertexId, VertexId, u64)]) -> Result<Self> {
        Self::new(
            n,
            triples.iter().map(|&(u, v, w)| Edge { u, v, w }).collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, u64)] {
        &self.adj[self.offsets[v]..self.offsets[v + 1]]
    }

    fn check(&self, v: VertexId) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex(v))
        }
    }
}

/// Total map from vertices to colors in `[0, sigma)`, with member lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    sigma: u32,
    color_of: Vec<Color>,
    members: Vec<Vec<VertexId>>,
}

impl Coloring {
    pub fn new(sigma: u32, color_of: Vec<Color>) -> Result<Self> {
        let mut members = vec![Vec::new(); sigma as usize];
        for (v, &c) in color_of.iter().enumerate() {
            if c >= sigma {
                return Err(Error::ColorOutOfRange { color: c, sigma });
            }
            members[c as usize].push(v);
        }
        Ok(Self {
            sigma,
            color_of,
            members,
        })
    }

    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    pub fn len(&self) -> usize {
        self.color_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.color_of.is_empty()
    }

    pub fn color_of(&self, v: VertexId) -> Color {
        self.color_of[v]
    }

    pub fn colors(&self) -> &[Color] {
        &self.color_of
    }

    /// Sorted members of color `c`.
    pub fn members(&self, c: Color) -> &[VertexId] {
        &self.members[c as usize]
    }

    pub fn check_color(&self, c: Color) -> Result<()> {
        if c < self.sigma {
            Ok(())
        } else {
            Err(Error::ColorOutOfRange {
                color: c,
                sigma: self.sigma,
            })
        }
    }

    /// Reassigns `v` to color `c`, keeping member lists sorted.
    pub fn recolor(&mut self, v: VertexId, c: Color) -> Result<()> {
        self.check_color(c)?;
        if v >= self.color_of.len() {
            return Err(Error::InvalidVertex(v));
        }
        let old = self.color_of[v];
        if old == c {
            return Ok(());
        }
        let list = &mut self.members[old as usize];
        if let Ok(pos) = list.binary_search(&v) {
            list.remove(pos);
        }
        let list = &mut self.members[c as usize];
        let pos = list.binary_search(&v).unwrap_or_else(|p| p);
        list.insert(pos, v);
        self.color_of[v] = c;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistResult {
    Reachable { distance: u64, witness: VertexId },
    Unreachable,
}

impl DistResult {
    pub fn distance(&self) -> Dist {
        match *self {
            DistResult::Reachable { distance, .. } => Some(distance),
            DistResult::Unreachable => None,
        }
    }

    pub fn witness(&self) -> Option<VertexId> {
        match *self {
            DistResult::Reachable { witness, .. } => Some(witness),
            DistResult::Unreachable => None,
        }
    }
}

/// Single-source Dijkstra.
pub fn shortest_paths(g: &Graph, source: VertexId) -> Result<Vec<Dist>> {
    g.check(source)?;
    Ok(nearest_sources(g, &[source])
        .into_iter()
        .map(|r| r.map(|(d, _)| d))
        .collect())
}

/// Multi-source Dijkstra over lexicographic labels `(distance, source)`.
///
/// Every vertex gets its closest source, ties going to the smallest source id.
/// The label order is preserved by edge relaxation, so plain Dijkstra is exact.
pub fn nearest_sources(g: &Graph, sources: &[VertexId]) -> Vec<Option<(u64, VertexId)>> {
    let mut best: Vec<Option<(u64, VertexId)>> = vec![None; g.n];
    let mut heap = BinaryHeap::new();
    for &s in sources {
        if best[s].is_none_or(|b| (0, s) < b) {
            best[s] = Some((0, s));
            heap.push(Reverse((0u64, s, s)));
        }
    }
    while let Some(Reverse((d, src, v))) = heap.pop() {
        if best[v] != Some((d, src)) {
            continue;
        }
        for &(w, len) in g.neighbors(v) {
            let cand = (d + len, src);
            if best[w].is_none_or(|b| cand < b) {
                best[w] = Some(cand);
                heap.push(Reverse((cand.0, cand.1, w)));
            }
        }
    }
    best
}

/// Exact nearest vertex of color `c`, ties broken by smallest vertex id.
pub fn brute_nearest(g: &Graph, col: &Coloring, v: VertexId, c: Color) -> Result<DistResult> {
    g.check(v)?;
    col.check_color(c)?;
    let members = col.members(c);
    if members.is_empty() {
        return Err(Error::NoSuchColor(c));
    }
    let dist = shortest_paths(g, v)?;
    let mut best: Option<(u64, VertexId)> = None;
    for &u in members {
        if let Some(d) = dist[u] {
            if best.is_none_or(|b| (d, u) < b) {
                best = Some((d, u));
            }
        }
    }
    Ok(match best {
        Some((distance, witness)) => DistResult::Reachable { distance, witness },
        None => DistResult::Unreachable,
    })
}

/// Connected components, each sorted, ordered by smallest member.
pub fn components(g: &Graph) -> Vec<Vec<VertexId>> {
    let (comp_of, count) = component_ids(g);
    let mut out = vec![Vec::new(); count];
    for (v, &c) in comp_of.iter().enumerate() {
        out[c].push(v);
    }
    out
}

/// Component id per vertex (numbered by smallest member) and the component count.
pub fn component_ids(g: &Graph) -> (Vec<usize>, usize) {
    let mut comp_of = vec![usize::MAX; g.n];
    let mut count = 0;
    let mut stack = Vec::new();
    for start in 0..g.n {
        if comp_of[start] != usize::MAX {
            continue;
        }
        comp_of[start] = count;
        stack.push(start);
        while let Some(v) = stack.pop() {
            for &(w, _) in g.neighbors(v) {
                if comp_of[w] == usize::MAX {
                    comp_of[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    (comp_of, count)
}

/// Row-major `n × sigma` table of exact color distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorDistanceTable {
    sigma: usize,
    cells: Vec<Option<(u64, VertexId)>>,
}

impl ColorDistanceTable {
    pub fn distance(&self, v: VertexId, c: Color) -> Dist {
        self.cells[v * self.sigma + c as usize].map(|(d, _)| d)
    }

    pub fn nearest(&self, v: VertexId, c: Color) -> DistResult {
        match self.cells[v * self.sigma + c as usize] {
            Some((distance, witness)) => DistResult::Reachable { distance, witness },
            None => DistResult::Unreachable,
        }
    }

    pub fn row(&self, v: VertexId) -> impl Iterator<Item = Dist> + '_ {
        self.cells[v * self.sigma..(v + 1) * self.sigma]
            .iter()
            .map(|c| c.map(|(d, _)| d))
    }
}

/// One multi-source shortest-path pass per color.
pub fn all_color_distances(g: &Graph, col: &Coloring) -> ColorDistanceTable {
    let sigma = col.sigma() as usize;
    let mut cells = vec![None; g.n * sigma];
    for c in 0..sigma {
        let members = col.members(c as Color);
        if members.is_empty() {
            continue;
        }
        for (v, r) in nearest_sources(g, members).into_iter().enumerate() {
            cells[v * sigma + c] = r;
        }
    }
    ColorDistanceTable { sigma, cells }
}
