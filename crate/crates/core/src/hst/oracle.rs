use super::{build_cover, ColoredAncestorIndex, Metric, UltrametricCover};
use crate::error::{Error, Result};
use crate::graph::{self, Color, Coloring, Graph, VertexId};
use crate::static_oracle::derive_seed;

/// Which side of the query/update trade-off the index favors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Every vertex is colored in every tree; a query reads the home tree only.
    FastQuery,
    /// A vertex is colored in its home tree only; a query scans all trees.
    FastUpdate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DynAnswer {
    pub estimate: u64,
    /// A vertex of the queried color with `ρ(v, witness) = estimate`.
    pub witness: VertexId,
    /// Tree (within `v`'s component) that produced the estimate.
    pub tree: usize,
}

#[derive(Debug, Clone)]
struct Part {
    vertices: Vec<VertexId>,
    cover: UltrametricCover,
    index: Vec<ColoredAncestorIndex>,
}

/// Nearest colored node oracle with color reassignment, one cover per
/// connected component.
#[derive(Debug, Clone)]
pub struct RecolorableOracle {
    variant: Variant,
    coloring: Coloring,
    comp_of: Vec<usize>,
    local_of: Vec<usize>,
    parts: Vec<Part>,
}

impl RecolorableOracle {
    pub fn build(
        g: &Graph,
        col: &Coloring,
        k: usize,
        distortion: f64,
        variant: Variant,
        seed: u64,
    ) -> Result<Self> {
        if g.n() == 0 {
            return Err(Error::EmptyInput);
        }
        if col.len() != g.n() {
            return Err(Error::DimensionError {
                expected: g.n(),
                got: col.len(),
            });
        }
        let comps = graph::components(g);
        let mut comp_of = vec![0; g.n()];
        let mut local_of = vec![0; g.n()];
        let mut parts = Vec::with_capacity(comps.len());
        for (cid, vertices) in comps.into_iter().enumerate() {
            for (i, &v) in vertices.iter().enumerate() {
                comp_of[v] = cid;
                local_of[v] = i;
            }
            let metric = Metric::from_component(g, &vertices)?;
            let cover = build_cover(&metric, k, distortion, derive_seed(seed, cid, 0))?;
            let mut index: Vec<ColoredAncestorIndex> = cover
                .trees()
                .iter()
                .map(|t| ColoredAncestorIndex::new(t, col.sigma()))
                .collect();
            for (i, &v) in vertices.iter().enumerate() {
                let c = Some(col.color_of(v));
                match variant {
                    Variant::FastQuery => index.iter_mut().for_each(|x| x.set_color(i, c)),
                    Variant::FastUpdate => index[cover.home(i)].set_color(i, c),
                }
            }
            parts.push(Part {
                vertices,
                cover,
                index,
            });
        }
        Ok(Self {
            variant,
            coloring: col.clone(),
            comp_of,
            local_of,
            parts,
        })
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    /// Trees summed over all components.
    pub fn tree_count(&self) -> usize {
        self.parts.iter().map(|p| p.cover.len()).sum()
    }

    /// `(vertices, cover)` per component; cover points index into `vertices`.
    pub fn covers(&self) -> impl Iterator<Item = (&[VertexId], &UltrametricCover)> {
        self.parts.iter().map(|p| (p.vertices.as_slice(), &p.cover))
    }

    /// Component of `v`, `v`'s point id inside it, and the component's cover.
    pub fn locate(&self, v: VertexId) -> Result<(usize, usize, &UltrametricCover)> {
        if v >= self.comp_of.len() {
            return Err(Error::InvalidVertex(v));
        }
        let cid = self.comp_of[v];
        Ok((cid, self.local_of[v], &self.parts[cid].cover))
    }

    pub fn index(&self, v: VertexId, tree: usize) -> &ColoredAncestorIndex {
        &self.parts[self.comp_of[v]].index[tree]
    }

    pub fn recolor(&mut self, v: VertexId, c: Color) -> Result<()> {
        match self.variant {
            Variant::FastQuery => self.recolor_all_trees(v, c),
            Variant::FastUpdate => self.recolor_home_tree(v, c),
        }
    }

    pub fn query(&self, v: VertexId, c: Color) -> Result<DynAnswer> {
        match self.variant {
            Variant::FastQuery => self.query_home_tree(v, c),
            Variant::FastUpdate => self.query_all_trees(v, c),
        }
    }

    fn recolor_all_trees(&mut self, v: VertexId, c: Color) -> Result<()> {
        self.coloring.recolor(v, c)?;
        let part = &mut self.parts[self.comp_of[v]];
        let i = self.local_of[v];
        for idx in &mut part.index {
            idx.set_color(i, Some(c));
        }
        Ok(())
    }

    fn recolor_home_tree(&mut self, v: VertexId, c: Color) -> Result<()> {
        self.coloring.recolor(v, c)?;
        let part = &mut self.parts[self.comp_of[v]];
        let i = self.local_of[v];
        let home = part.cover.home(i);
        part.index[home].set_color(i, Some(c));
        Ok(())
    }

    fn check_query(&self, v: VertexId, c: Color) -> Result<&Part> {
        if v >= self.comp_of.len() {
            return Err(Error::InvalidVertex(v));
        }
        self.coloring.check_color(c)?;
        if self.coloring.members(c).is_empty() {
            return Err(Error::NoSuchColor(c));
        }
        Ok(&self.parts[self.comp_of[v]])
    }

    /// Nearest `c`-ancestor of `v` in one tree of its component, as a tree
    /// node and a `c`-colored witness vertex below it.
    pub fn nearest_colored_ancestor(
        &self,
        v: VertexId,
        tree: usize,
        c: Color,
    ) -> Result<(usize, VertexId)> {
        let part = self.check_query(v, c)?;
        let t = part
            .cover
            .trees()
            .get(tree)
            .ok_or(Error::NoSuchColorInTree { tree, color: c })?;
        let (node, q) = part.index[tree].nearest_colored_ancestor(t, tree, self.local_of[v], c)?;
        Ok((node, part.vertices[q]))
    }

    /// One nearest-colored-ancestor lookup in `v`'s home tree. Sound when
    /// every vertex is colored in every tree.
    pub fn query_home_tree(&self, v: VertexId, c: Color) -> Result<DynAnswer> {
        let part = self.check_query(v, c)?;
        let i = self.local_of[v];
        let home = part.cover.home(i);
        let t = &part.cover.trees()[home];
        match part.index[home].nearest_colored_ancestor(t, home, i, c) {
            Ok((node, q)) => Ok(DynAnswer {
                estimate: t.delta(node),
                witness: part.vertices[q],
                tree: home,
            }),
            Err(Error::NoSuchColorInTree { .. }) => Err(Error::NoSuchColorInComponent {
                vertex: v,
                color: c,
            }),
            Err(e) => Err(e),
        }
    }

    /// Minimum over all trees of the component; trees without `c` are skipped.
    pub fn query_all_trees(&self, v: VertexId, c: Color) -> Result<DynAnswer> {
        let part = self.check_query(v, c)?;
        let i = self.local_of[v];
        let mut best: Option<DynAnswer> = None;
        for (tree, t) in part.cover.trees().iter().enumerate() {
            let idx = &part.index[tree];
            if !idx.has_color(c) {
                continue;
            }
            let (node, q) = idx.nearest_colored_ancestor(t, tree, i, c)?;
            let estimate = t.delta(node);
            if best.is_none_or(|b| estimate < b.estimate) {
                best = Some(DynAnswer {
                    estimate,
                    witness: part.vertices[q],
                    tree,
                });
            }
        }
        best.ok_or(Error::NoSuchColorInComponent {
            vertex: v,
            color: c,
        })
    }
}
