use super::Hst;
use crate::error::{Error, Result};
use crate::graph::Color;
use crate::seq::OrderedKeySet;

/// Nearest ancestor containing a leaf of a given color, for one tree.
///
/// Leaves are ranked in DFS preorder, so every subtree's leaves form a
/// contiguous rank interval. The lowest ancestor of `v` holding a `c`-leaf is
/// then the deeper of `lca(v, pred)` and `lca(v, succ)`, where `pred`/`succ`
/// are the neighboring `c`-ranks around `v`'s rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredAncestorIndex {
    rank_of: Vec<usize>,
    point_at_rank: Vec<usize>,
    color_of: Vec<Option<Color>>,
    sets: Vec<Option<OrderedKeySet>>,
}

impl ColoredAncestorIndex {
    /// An index with every point uncolored.
    pub fn new(tree: &Hst, sigma: u32) -> Self {
        let point_at_rank = tree.leaves_preorder();
        let mut rank_of = vec![0; point_at_rank.len()];
        for (r, &p) in point_at_rank.iter().enumerate() {
            rank_of[p] = r;
        }
        Self {
            rank_of,
            point_at_rank,
            color_of: vec![None; tree.points()],
            sets: vec![None; sigma as usize],
        }
    }

    pub fn rank(&self, point: usize) -> usize {
        self.rank_of[point]
    }

    pub fn color_of(&self, point: usize) -> Option<Color> {
        self.color_of[point]
    }

    /// Moves `point` to color `color`, or uncolors it with `None`.
    pub fn set_color(&mut self, point: usize, color: Option<Color>) {
        let r = self.rank_of[point];
        if let Some(old) = self.color_of[point] {
            self.sets[old as usize]
                .as_mut()
                .expect("colored points are indexed")
                .delete(r)
                .expect("rank is present under its color");
        }
        if let Some(c) = color {
            let universe = self.rank_of.len();
            self.sets[c as usize]
                .get_or_insert_with(|| OrderedKeySet::new(universe))
                .insert(r);
        }
        self.color_of[point] = color;
    }

    /// Ranks currently holding color `c`.
    pub fn keys(&self, c: Color) -> Vec<usize> {
        self.sets
            .get(c as usize)
            .and_then(Option::as_ref)
            .map(|s| s.iter().collect())
            .unwrap_or_default()
    }

    pub fn has_color(&self, c: Color) -> bool {
        self.sets
            .get(c as usize)
            .and_then(Option::as_ref)
            .is_some_and(|s| !s.is_empty())
    }

    /// Lowest ancestor of `point`'s leaf whose subtree has a `c`-colored
    /// leaf, together with such a leaf's point.
    pub fn nearest_colored_ancestor(
        &self,
        tree: &Hst,
        tree_id: usize,
        point: usize,
        c: Color,
    ) -> Result<(usize, usize)> {
        let set = self
            .sets
            .get(c as usize)
            .and_then(Option::as_ref)
            .filter(|s| !s.is_empty())
            .ok_or(Error::NoSuchColorInTree {
                tree: tree_id,
                color: c,
            })?;
        let leaf = tree.leaf(point);
        if self.color_of[point] == Some(c) {
            return Ok((leaf, point));
        }
        let r = self.rank_of[point];
        let mut best: Option<(usize, usize)> = None;
        for neighbor in [set.pred(r), set.succ(r)].into_iter().flatten() {
            let q = self.point_at_rank[neighbor];
            let a = tree.lca(leaf, tree.leaf(q));
            if best.is_none_or(|(b, _)| tree.depth(a) > tree.depth(b)) {
                best = Some((a, q));
            }
        }
        Ok(best.expect("nonempty set has a predecessor or successor"))
    }
}
