use std::cmp::Reverse;

use super::RangeMaxIndex;
use crate::error::{Error, Result};

/// Lowest common ancestors via an Euler tour and a range-minimum over depths.
#[derive(Debug, Clone)]
pub struct EulerLca {
    parent: Vec<usize>,
    depth: Vec<usize>,
    tour: Vec<usize>,
    first: Vec<usize>,
    depth_rmq: RangeMaxIndex<Reverse<usize>>,
}

impl EulerLca {
    /// Builds from a parent array in which the root is its own parent.
    pub fn new(parent: &[usize]) -> Result<Self> {
        let n = parent.len();
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        let mut root = None;
        let mut children = vec![Vec::new(); n];
        for (x, &p) in parent.iter().enumerate() {
            if p >= n {
                return Err(Error::NotATree);
            }
            if p == x {
                if root.is_some() {
                    return Err(Error::NotATree);
                }
                root = Some(x);
            } else {
                children[p].push(x);
            }
        }
        let root = root.ok_or(Error::NotATree)?;

        let mut depth = vec![usize::MAX; n];
        let mut first = vec![0; n];
        let mut tour = Vec::with_capacity(2 * n - 1);
        depth[root] = 0;
        first[root] = 0;
        tour.push(root);
        // (node, next child position)
        let mut stack = vec![(root, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (x, pos) = *top;
            if pos < children[x].len() {
                top.1 += 1;
                let y = children[x][pos];
                depth[y] = depth[x] + 1;
                first[y] = tour.len();
                tour.push(y);
                stack.push((y, 0));
            } else {
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    tour.push(p);
                }
            }
        }
        if depth.contains(&usize::MAX) {
            // some node sits on a cycle that never reaches the root
            return Err(Error::NotATree);
        }
        let depth_rmq = RangeMaxIndex::new(tour.iter().map(|&x| Reverse(depth[x])).collect())?;
        Ok(Self {
            parent: parent.to_vec(),
            depth,
            tour,
            first,
            depth_rmq,
        })
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn depth(&self, x: usize) -> usize {
        self.depth[x]
    }

    pub fn parent(&self, x: usize) -> usize {
        self.parent[x]
    }

    /// Panics if either node is out of range.
    pub fn lca(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.first[x], self.first[y]);
        let (a, b) = (a.min(b), a.max(b));
        let idx = self
            .depth_rmq
            .query(a, b)
            .expect("tour positions are valid");
        self.tour[idx]
    }
}
