//! Graph gadget that evaluates `uᵀMv` for a boolean matrix `M` through
//! color-connectivity queries from a source vertex `s`.
//!
//! Each row is hooked to `s`; a pair `(u, v)` detaches the rows with
//! `u[i] = 0` and asks whether any color `c_j` with `v[j] = 1` is still
//! reachable from `s`. Edges are restored afterwards.

use crate::error::{Error, Result};
use crate::graph::{brute_nearest, Color, Coloring, DistResult, Edge, Graph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetVariant {
    /// `s` plus one path per row, holding the row's colors in column order.
    Tree,
    /// `s`, one vertex per row, one vertex per color; arcs `s → v_i → c_j`.
    CompactDirected,
    /// As `CompactDirected` but undirected, with weight-2 edges between `s` and each `v_i`.
    /// `dist(s, c_j)` is 3 when an attached row holds `j` and at least 5 otherwise.
    CompactUndirected,
}

/// Source vertex in every variant.
pub const SOURCE: VertexId = 0;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    variant: GadgetVariant,
    n1: usize,
    n2: usize,
    /// Columns set in each row, ascending.
    rows: Vec<Vec<usize>>,
    /// Rows containing each column.
    color_rows: Vec<Vec<usize>>,
    attached: Vec<bool>,
    /// Tree variant: first vertex of each row path.
    row_start: Vec<VertexId>,
    vertex_count: usize,
}

/// Plain `uᵀMv` over the booleans.
pub fn direct_product(m: &[Vec<bool>], u: &[bool], v: &[bool]) -> bool {
    m.iter()
        .zip(u)
        .any(|(row, &ui)| ui && row.iter().zip(v).any(|(&mij, &vj)| mij && vj))
}

pub fn build_gadget(m: &[Vec<bool>], variant: GadgetVariant) -> Result<Gadget> {
    let n1 = m.len();
    let n2 = m.first().map_or(0, Vec::len);
    if n1 == 0 || n2 == 0 {
        return Err(Error::EmptyInput);
    }
    if let Some(row) = m.iter().find(|r| r.len() != n2) {
        return Err(Error::DimensionError {
            expected: n2,
            got: row.len(),
        });
    }
    let rows: Vec<Vec<usize>> = m
        .iter()
        .map(|r| (0..n2).filter(|&j| r[j]).collect())
        .collect();
    let mut color_rows = vec![Vec::new(); n2];
    for (i, row) in rows.iter().enumerate() {
        for &j in row {
            color_rows[j].push(i);
        }
    }
    let mut row_start = Vec::new();
    let vertex_count = match variant {
        GadgetVariant::Tree => {
            let mut next = 1;
            for row in &rows {
                row_start.push(next);
                next += row.len();
            }
            next
        }
        _ => 1 + n1 + n2,
    };
    Ok(Gadget {
        variant,
        n1,
        n2,
        rows,
        color_rows,
        attached: vec![true; n1],
        row_start,
        vertex_count,
    })
}

impl Gadget {
    pub fn variant(&self) -> GadgetVariant {
        self.variant
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.n1, self.n2)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Colors along row `i`, in path order.
    pub fn row_colors(&self, i: usize) -> &[usize] {
        &self.rows[i]
    }

    pub fn is_attached(&self, i: usize) -> bool {
        self.attached[i]
    }

    pub fn detach(&mut self, i: usize) {
        self.attached[i] = false;
    }

    pub fn attach(&mut self, i: usize) {
        self.attached[i] = true;
    }

    /// Whether an attached row holds `c_j`. This is connectivity to `s` in
    /// the tree and directed variants, and `dist(s, c_j) = 3` in the
    /// undirected compact one.
    pub fn color_reachable(&self, j: usize) -> bool {
        self.color_rows[j].iter().any(|&i| self.attached[i])
    }

    fn row_vertex(&self, i: usize) -> VertexId {
        1 + i
    }

    fn color_vertex(&self, j: usize) -> VertexId {
        1 + self.n1 + j
    }

    /// Current edge set; arcs point from `u` to `v` in the directed variant.
    pub fn edges(&self) -> Vec<Edge> {
        let mut edges = Vec::new();
        match self.variant {
            GadgetVariant::Tree => {
                for (i, row) in self.rows.iter().enumerate() {
                    let start = self.row_start[i];
                    if row.is_empty() {
                        continue;
                    }
                    if self.attached[i] {
                        edges.push(Edge {
                            u: SOURCE,
                            v: start,
                            w: 1,
                        });
                    }
                    for x in start..start + row.len() - 1 {
                        edges.push(Edge {
                            u: x,
                            v: x + 1,
                            w: 1,
                        });
                    }
                }
            }
            GadgetVariant::CompactDirected | GadgetVariant::CompactUndirected => {
                let w = if self.variant == GadgetVariant::CompactUndirected {
                    2
                } else {
                    1
                };
                for (i, row) in self.rows.iter().enumerate() {
                    if self.attached[i] {
                        edges.push(Edge {
                            u: SOURCE,
                            v: self.row_vertex(i),
                            w,
                        });
                    }
                    for &j in row {
                        edges.push(Edge {
                            u: self.row_vertex(i),
                            v: self.color_vertex(j),
                            w: 1,
                        });
                    }
                }
            }
        }
        edges
    }

    /// Coloring with `c_j = j`; `s` and the compact row vertices carry the
    /// extra color `n2`.
    pub fn coloring(&self) -> Coloring {
        let filler = self.n2 as Color;
        let mut colors = vec![filler; self.vertex_count];
        match self.variant {
            GadgetVariant::Tree => {
                for (i, row) in self.rows.iter().enumerate() {
                    for (k, &j) in row.iter().enumerate() {
                        colors[self.row_start[i] + k] = j as Color;
                    }
                }
            }
            _ => {
                for j in 0..self.n2 {
                    colors[self.color_vertex(j)] = j as Color;
                }
            }
        }
        Coloring::new(self.n2 as u32 + 1, colors).expect("colors below sigma")
    }

    /// Undirected graph of the current state.
    pub fn to_graph(&self) -> Result<Graph> {
        if self.variant == GadgetVariant::CompactDirected {
            return Err(Error::VariantError);
        }
        Graph::new(self.vertex_count, self.edges())
    }

    fn check_dims(&self, u: &[bool], v: &[bool]) -> Result<()> {
        if u.len() != self.n1 {
            return Err(Error::DimensionError {
                expected: self.n1,
                got: u.len(),
            });
        }
        if v.len() != self.n2 {
            return Err(Error::DimensionError {
                expected: self.n2,
                got: v.len(),
            });
        }
        Ok(())
    }

    fn with_detached<T>(&mut self, u: &[bool], f: impl FnOnce(&Self) -> T) -> T {
        let detached: Vec<usize> = (0..self.n1)
            .filter(|&i| !u[i] && self.attached[i])
            .collect();
        for &i in &detached {
            self.detach(i);
        }
        let out = f(self);
        for &i in &detached {
            self.attach(i);
        }
        out
    }

    /// `uᵀMv` via detachments and connectivity queries.
    pub fn process_pair(&mut self, u: &[bool], v: &[bool]) -> Result<bool> {
        self.check_dims(u, v)?;
        Ok(self.with_detached(u, |g| (0..g.n2).any(|j| v[j] && g.color_reachable(j))))
    }

    /// `uᵀMv` via the 3-versus-5 distance gap on the undirected compact graph.
    pub fn compact_distance_check(&mut self, u: &[bool], v: &[bool]) -> Result<bool> {
        if self.variant != GadgetVariant::CompactUndirected {
            return Err(Error::VariantError);
        }
        self.check_dims(u, v)?;
        self.with_detached(u, |g| {
            let graph = g.to_graph()?;
            let coloring = g.coloring();
            for j in (0..g.n2).filter(|&j| v[j]) {
                if brute_nearest(&graph, &coloring, SOURCE, j as Color)?.distance() == Some(3) {
                    return Ok(true);
                }
            }
            Ok(false)
        })
    }

    /// `dist(s, c_j)` for every color in the current state.
    pub fn color_distances(&self) -> Result<Vec<DistResult>> {
        let graph = self.to_graph()?;
        let coloring = self.coloring();
        (0..self.n2)
            .map(|j| brute_nearest(&graph, &coloring, SOURCE, j as Color))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{components, shortest_paths};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const ALL: [GadgetVariant; 3] = [
        GadgetVariant::Tree,
        GadgetVariant::CompactDirected,
        GadgetVariant::CompactUndirected,
    ];

    fn bits(x: usize, len: usize) -> Vec<bool> {
        (0..len).map(|i| x >> i & 1 == 1).collect()
    }

    fn identity(n: usize) -> Vec<Vec<bool>> {
        (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n1: usize, n2: usize) -> Vec<Vec<bool>> {
        let p = rng.gen_range(0.1..0.9);
        (0..n1)
            .map(|_| (0..n2).map(|_| rng.gen_bool(p)).collect())
            .collect()
    }

    /// Forward search over the directed arcs.
    fn reachable_colors(g: &Gadget) -> Vec<bool> {
        let mut seen = vec![false; g.vertex_count()];
        let mut stack = vec![SOURCE];
        seen[SOURCE] = true;
        let edges = g.edges();
        while let Some(x) = stack.pop() {
            for e in edges.iter().filter(|e| e.u == x) {
                if !seen[e.v] {
                    seen[e.v] = true;
                    stack.push(e.v);
                }
            }
        }
        let (n1, n2) = g.dims();
        (0..n2).map(|j| seen[1 + n1 + j]).collect()
    }

    #[test]
    fn identity_rows() {
        let g = build_gadget(&identity(2), GadgetVariant::Tree).unwrap();
        assert_eq!(g.row_colors(0), &[0]);
        assert_eq!(g.row_colors(1), &[1]);
        assert!(g.is_attached(0) && g.is_attached(1));
        assert_eq!(g.vertex_count(), 3);
        let graph = g.to_graph().unwrap();
        assert_eq!(components(&graph).len(), 1);
    }

    #[test]
    fn zero_matrix_has_no_colored_vertices() {
        let m = vec![vec![false; 3]; 2];
        let g = build_gadget(&m, GadgetVariant::Tree).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert!(g.coloring().colors().iter().all(|&c| c == 3));
        let mut g = g;
        assert!(!g.process_pair(&[true, true], &[true, true, true]).unwrap());
    }

    #[test]
    fn five_by_six_matrix_rows() {
        let sets: [&[usize]; 5] = [
            &[1, 2, 4, 6],
            &[1, 3, 4, 5],
            &[3, 5],
            &[1],
            &[2, 3, 4, 5, 6],
        ];
        let m: Vec<Vec<bool>> = sets
            .iter()
            .map(|s| (1..=6).map(|j| s.contains(&j)).collect())
            .collect();
        let g = build_gadget(&m, GadgetVariant::Tree).unwrap();
        assert_eq!(g.row_colors(0), &[0, 1, 3, 5]);
        assert_eq!(g.vertex_count(), 1 + 4 + 4 + 2 + 1 + 5);
        let graph = g.to_graph().unwrap();
        assert_eq!(graph.m(), graph.n() - 1);
        assert_eq!(components(&graph).len(), 1);
        let col = g.coloring();
        let path: Vec<Color> = (1..=4).map(|x| col.color_of(x)).collect();
        assert_eq!(path, vec![0, 1, 3, 5]);
    }

    #[test]
    fn identity_pairs() {
        for variant in ALL {
            let mut g = build_gadget(&identity(2), variant).unwrap();
            assert!(!g.process_pair(&[true, false], &[false, true]).unwrap());
            assert!(g.process_pair(&[true, false], &[true, false]).unwrap());
        }
    }

    #[test]
    fn identity_distance_check() {
        let mut g = build_gadget(&identity(2), GadgetVariant::CompactUndirected).unwrap();
        assert!(g
            .compact_distance_check(&[true, false], &[true, false])
            .unwrap());
        assert!(!g
            .compact_distance_check(&[false, false], &[true, true])
            .unwrap());
        assert!(!g
            .compact_distance_check(&[true, false], &[false, true])
            .unwrap());
    }

    #[test]
    fn errors() {
        let mut g = build_gadget(&identity(2), GadgetVariant::Tree).unwrap();
        assert_eq!(
            g.process_pair(&[true], &[true, true]).unwrap_err(),
            Error::DimensionError {
                expected: 2,
                got: 1
            }
        );
        assert_eq!(
            g.process_pair(&[true, true], &[true]).unwrap_err(),
            Error::DimensionError {
                expected: 2,
                got: 1
            }
        );
        assert_eq!(
            g.compact_distance_check(&[true, true], &[true, true])
                .unwrap_err(),
            Error::VariantError
        );
        let d = build_gadget(&identity(2), GadgetVariant::CompactDirected).unwrap();
        assert_eq!(d.to_graph().unwrap_err(), Error::VariantError);
        assert_eq!(
            build_gadget(&[], GadgetVariant::Tree).unwrap_err(),
            Error::EmptyInput
        );
        let ragged = vec![vec![true, false], vec![true]];
        assert!(matches!(
            build_gadget(&ragged, GadgetVariant::Tree),
            Err(Error::DimensionError { .. })
        ));
    }

    #[test]
    fn structure_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let (n1, n2) = (rng.gen_range(1..7), rng.gen_range(1..7));
            let m = random_matrix(&mut rng, n1, n2);
            let ones: usize = m.iter().flatten().filter(|&&b| b).count();
            let tree = build_gadget(&m, GadgetVariant::Tree).unwrap();
            assert!(tree.vertex_count() <= 1 + ones);
            let graph = tree.to_graph().unwrap();
            assert_eq!(components(&graph).len(), 1);
            assert_eq!(graph.m(), graph.n() - 1);
            for variant in [
                GadgetVariant::CompactDirected,
                GadgetVariant::CompactUndirected,
            ] {
                assert_eq!(
                    build_gadget(&m, variant).unwrap().vertex_count(),
                    1 + n1 + n2
                );
            }
        }
    }

    #[test]
    fn exhaustive_small_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for n1 in 1..=4 {
            for n2 in 1..=4 {
                let m = random_matrix(&mut rng, n1, n2);
                for variant in ALL {
                    let mut g = build_gadget(&m, variant).unwrap();
                    let before = g.clone();
                    for a in 0..1 << n1 {
                        for b in 0..1 << n2 {
                            let (u, v) = (bits(a, n1), bits(b, n2));
                            assert_eq!(g.process_pair(&u, &v).unwrap(), direct_product(&m, &u, &v));
                            assert_eq!(g, before);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn connectivity_index_matches_graph_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let (n1, n2) = (rng.gen_range(1..6), rng.gen_range(1..6));
            let m = random_matrix(&mut rng, n1, n2);
            for variant in [GadgetVariant::Tree, GadgetVariant::CompactDirected] {
                let mut g = build_gadget(&m, variant).unwrap();
                for i in 0..n1 {
                    if rng.gen_bool(0.5) {
                        g.detach(i);
                    }
                }
                let truth: Vec<bool> = match variant {
                    GadgetVariant::CompactDirected => reachable_colors(&g),
                    _ => {
                        let graph = g.to_graph().unwrap();
                        let d = shortest_paths(&graph, SOURCE).unwrap();
                        let col = g.coloring();
                        (0..n2)
                            .map(|j| {
                                (0..g.vertex_count())
                                    .any(|x| col.color_of(x) == j as Color && d[x].is_some())
                            })
                            .collect()
                    }
                };
                let index: Vec<bool> = (0..n2).map(|j| g.color_reachable(j)).collect();
                assert_eq!(index, truth);
            }
        }
    }

    #[test]
    fn compact_distances_skip_four() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..60 {
            let (n1, n2) = (rng.gen_range(1..7), rng.gen_range(1..7));
            let m = random_matrix(&mut rng, n1, n2);
            let mut g = build_gadget(&m, GadgetVariant::CompactUndirected).unwrap();
            for i in 0..n1 {
                if rng.gen_bool(0.4) {
                    g.detach(i);
                }
            }
            for (j, d) in g.color_distances().unwrap().iter().enumerate() {
                match d.distance() {
                    Some(3) => assert!(g.color_reachable(j)),
                    Some(x) => assert!(x >= 5 && !g.color_reachable(j), "distance {x}"),
                    None => assert!(!g.color_reachable(j)),
                }
            }
        }
    }

    #[test]
    fn distance_check_matches_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (n1, n2) in [(1, 1), (2, 3), (3, 3), (4, 2)] {
            let m = random_matrix(&mut rng, n1, n2);
            let mut g = build_gadget(&m, GadgetVariant::CompactUndirected).unwrap();
            let before = g.clone();
            for a in 0..1 << n1 {
                for b in 0..1 << n2 {
                    let (u, v) = (bits(a, n1), bits(b, n2));
                    assert_eq!(
                        g.compact_distance_check(&u, &v).unwrap(),
                        direct_product(&m, &u, &v)
                    );
                }
            }
            assert_eq!(g, before);
        }
    }
}
