use crate::error::{Error, Result};
use crate::seq::EulerLca;

/// Rooted tree whose leaves are the points `0..n`, with labels that strictly
/// decrease toward the leaves. Leaves carry label 0.
///
/// The induced ultrametric is `ρ(x, y) = delta(lca(leaf x, leaf y))`.
#[derive(Debug, Clone)]
pub struct Hst {
    parent: Vec<usize>,
    delta: Vec<u64>,
    children: Vec<Vec<usize>>,
    leaf_of: Vec<usize>,
    point_at: Vec<Option<usize>>,
    lca: EulerLca,
}

impl Hst {
    /// `parent[root] == root`; `leaf_of[p]` is the leaf node of point `p`.
    pub fn new(parent: Vec<usize>, delta: Vec<u64>, leaf_of: Vec<usize>) -> Result<Self> {
        let nodes = parent.len();
        if delta.len() != nodes {
            return Err(Error::DimensionError {
                expected: nodes,
                got: delta.len(),
            });
        }
        let lca = EulerLca::new(&parent)?;
        let mut children = vec![Vec::new(); nodes];
        for (x, &p) in parent.iter().enumerate() {
            if p != x {
                children[p].push(x);
            }
        }
        let mut point_at = vec![None; nodes];
        for (p, &leaf) in leaf_of.iter().enumerate() {
            if leaf >= nodes || point_at[leaf].is_some() {
                return Err(Error::InvalidHst("leaf assignment is not injective"));
            }
            point_at[leaf] = Some(p);
        }
        for x in 0..nodes {
            match (children[x].is_empty(), point_at[x].is_some()) {
                (true, false) => return Err(Error::InvalidHst("childless node without a point")),
                (false, true) => return Err(Error::InvalidHst("point mapped to an inner node")),
                _ => {}
            }
            if point_at[x].is_some() && delta[x] != 0 {
                return Err(Error::InvalidHst("leaf label must be 0"));
            }
            if parent[x] != x && delta[x] >= delta[parent[x]] {
                return Err(Error::InvalidHst(
                    "labels must strictly decrease toward leaves",
                ));
            }
        }
        Ok(Self {
            parent,
            delta,
            children,
            leaf_of,
            point_at,
            lca,
        })
    }

    pub fn points(&self) -> usize {
        self.leaf_of.len()
    }

    pub fn nodes(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        (0..self.nodes())
            .find(|&x| self.parent[x] == x)
            .expect("validated tree has a root")
    }

    pub fn parent(&self, x: usize) -> usize {
        self.parent[x]
    }

    pub fn children(&self, x: usize) -> &[usize] {
        &self.children[x]
    }

    pub fn delta(&self, x: usize) -> u64 {
        self.delta[x]
    }

    pub fn depth(&self, x: usize) -> usize {
        self.lca.depth(x)
    }

    pub fn leaf(&self, point: usize) -> usize {
        self.leaf_of[point]
    }

    pub fn point_at(&self, node: usize) -> Option<usize> {
        self.point_at[node]
    }

    pub fn lca(&self, x: usize, y: usize) -> usize {
        self.lca.lca(x, y)
    }

    pub fn ultra_dist(&self, x: usize, y: usize) -> u64 {
        self.delta[self.lca(self.leaf_of[x], self.leaf_of[y])]
    }

    /// Points in DFS preorder; every subtree is a contiguous run.
    pub fn leaves_preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.points());
        let mut stack = vec![self.root()];
        while let Some(x) = stack.pop() {
            if let Some(p) = self.point_at[x] {
                out.push(p);
            }
            stack.extend(self.children[x].iter().rev());
        }
        out
    }

    /// Whether `anc` is `x` or one of its ancestors.
    pub fn is_ancestor(&self, anc: usize, x: usize) -> bool {
        self.lca(anc, x) == anc
    }
}
