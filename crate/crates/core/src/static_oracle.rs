//! Static color distance oracle over a sampled pivot hierarchy.
//!
//! Levels `V = A_0 ⊇ A_1 ⊇ … ⊇ A_{k-1}` are sampled per connected component
//! with rate `σ^{-1/k}`. Every vertex stores its nearest pivot on each level and
//! the gaps between consecutive pivot distances, indexed by a range-argmax.
//! Every color `c` stores the bunch `B(c)`, the union of the bunches of its
//! members, with exact distances to `c`.
//!
//! [`StaticOracle::query`] bisects the level range using the largest gap in the
//! lower half, taking `O(log k)` bunch probes. [`StaticOracle::query_naive`]
//! walks the levels one at a time.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{self, Color, Coloring, Graph, VertexId};
use crate::seq::RangeMaxIndex;

const MAX_SAMPLING_ATTEMPTS: u32 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryAnswer {
    pub estimate: u64,
    /// The pivot `p_lower(v)` the estimate is routed through.
    pub witness_pivot: VertexId,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpaceReport {
    pub bunch_entries: usize,
    pub gap_array_words: usize,
}

#[derive(Debug, Clone)]
pub struct StaticOracle {
    k: usize,
    seed: u64,
    sigma: u32,
    /// Highest level containing each vertex.
    level_of: Vec<usize>,
    /// Row-major `n × k` nearest pivots with their distances.
    pivots: Vec<(VertexId, u64)>,
    gap_rmq: Vec<Option<RangeMaxIndex<u64>>>,
    bunches: Vec<HashMap<VertexId, u64>>,
}

/// Per-component sub-seed for the sampling stream.
pub(crate) fn derive_seed(seed: u64, component: usize, attempt: u32) -> u64 {
    let mut z = seed
        ^ (component as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (u64::from(attempt)).wrapping_mul(0xD1B5_4A32_D192_ED03);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Samples the level of every vertex, redrawing a component's hierarchy
/// until its top level is nonempty.
pub fn sample_levels(g: &Graph, sigma: u32, k: usize, seed: u64) -> Result<Vec<usize>> {
    if k < 1 {
        return Err(Error::InvalidK(k));
    }
    let rate = f64::from(sigma.max(1)).powf(-1.0 / k as f64);
    let mut level_of = vec![0; g.n()];
    for (cid, comp) in graph::components(g).into_iter().enumerate() {
        let mut attempt = 0;
        loop {
            if attempt == MAX_SAMPLING_ATTEMPTS {
                return Err(Error::RetryBudgetExceeded {
                    remaining: comp.len(),
                });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, cid, attempt));
            let mut top = 0;
            for &v in &comp {
                let mut level = 0;
                while level + 1 < k && rng.gen::<f64>() < rate {
                    level += 1;
                }
                level_of[v] = level;
                top = top.max(level);
            }
            if top == k - 1 {
                break;
            }
            attempt += 1;
        }
    }
    Ok(level_of)
}

impl StaticOracle {
    pub fn build(g: &Graph, col: &Coloring, k: usize, seed: u64) -> Result<Self> {
        if g.n() == 0 {
            return Err(Error::EmptyInput);
        }
        let levels = sample_levels(g, col.sigma(), k, seed)?;
        let mut oracle = Self::with_levels(g, col, k, levels)?;
        oracle.seed = seed;
        Ok(oracle)
    }

    /// Builds over a fixed hierarchy: `level_of[v]` is the highest `i` with
    /// `v ∈ A_i`. Every component must contain a vertex on level `k - 1`.
    pub fn with_levels(g: &Graph, col: &Coloring, k: usize, level_of: Vec<usize>) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidK(k));
        }
        let n = g.n();
        if level_of.len() != n || col.len() != n {
            return Err(Error::DimensionError {
                expected: n,
                got: level_of.len().min(col.len()),
            });
        }
        if let Some(&bad) = level_of.iter().find(|&&l| l >= k) {
            return Err(Error::InvalidK(bad + 1));
        }

        let mut pivots = vec![(0, 0); n * k];
        for i in 0..k {
            let sources: Vec<VertexId> = (0..n).filter(|&v| level_of[v] >= i).collect();
            for (v, r) in graph::nearest_sources(g, &sources).into_iter().enumerate() {
                let (d, p) = r.ok_or(Error::RetryBudgetExceeded { remaining: 1 })?;
                pivots[v * k + i] = (p, d);
            }
        }

        let gap_rmq = (0..n)
            .map(|v| {
                let row = &pivots[v * k..(v + 1) * k];
                let gaps: Vec<u64> = row.windows(2).map(|w| w[1].1 - w[0].1).collect();
                RangeMaxIndex::new(gaps).ok()
            })
            .collect();

        let table = graph::all_color_distances(g, col);
        let mut bunches: Vec<HashMap<VertexId, u64>> = vec![HashMap::new(); col.sigma() as usize];
        for u in 0..n {
            let bound_level = level_of[u] + 1;
            let cluster = grow_cluster(g, u, |w| {
                (bound_level < k).then(|| pivots[w * k + bound_level].1)
            });
            for v in cluster {
                let c = col.color_of(v);
                let d = table
                    .distance(u, c)
                    .expect("u reaches v, which has color c");
                bunches[c as usize].insert(u, d);
            }
        }

        Ok(Self {
            k,
            seed: 0,
            sigma: col.sigma(),
            level_of,
            pivots,
            gap_rmq,
            bunches,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn n(&self) -> usize {
        self.level_of.len()
    }

    pub fn level_of(&self, v: VertexId) -> usize {
        self.level_of[v]
    }

    /// `p_i(v)` and its distance from `v`.
    pub fn pivot(&self, v: VertexId, i: usize) -> (VertexId, u64) {
        self.pivots[v * self.k + i]
    }

    /// `Δ_i(v) = dist(v, p_{i+1}(v)) - dist(v, p_i(v))`.
    pub fn gap(&self, v: VertexId, i: usize) -> u64 {
        self.pivot(v, i + 1).1 - self.pivot(v, i).1
    }

    /// `B(c)` with the stored exact distances to `c`.
    pub fn color_bunch(&self, c: Color) -> &HashMap<VertexId, u64> {
        &self.bunches[c as usize]
    }

    pub fn space_report(&self) -> SpaceReport {
        SpaceReport {
            bunch_entries: self.bunches.iter().map(HashMap::len).sum(),
            gap_array_words: self.n() * (self.k - 1),
        }
    }

    fn precheck(&self, v: VertexId, c: Color) -> Result<&HashMap<VertexId, u64>> {
        if v >= self.n() {
            return Err(Error::InvalidVertex(v));
        }
        if c >= self.sigma {
            return Err(Error::ColorOutOfRange {
                color: c,
                sigma: self.sigma,
            });
        }
        // The top level of v's component lies in B(c) iff c occurs in that component.
        let bunch = &self.bunches[c as usize];
        if !bunch.contains_key(&self.pivot(v, self.k - 1).0) {
            return Err(Error::NoSuchColorInComponent {
                vertex: v,
                color: c,
            });
        }
        Ok(bunch)
    }

    fn bisect(
        &self,
        v: VertexId,
        c: Color,
        mut trace: Option<&mut Vec<(usize, usize)>>,
    ) -> Result<QueryAnswer> {
        let bunch = self.precheck(v, c)?;
        let mut lower = 0;
        let mut upper = self.k - 1;
        let mut iterations = 0;
        if let Some(t) = trace.as_deref_mut() {
            t.push((lower, upper));
        }
        while lower != upper {
            let mid = (lower + upper).div_ceil(2);
            let rmq = self.gap_rmq[v].as_ref().expect("k > 1 inside the loop");
            let j = rmq.query(lower, mid - 1)?;
            if bunch.contains_key(&self.pivot(v, j).0) {
                upper = j;
            } else {
                lower = mid;
            }
            iterations += 1;
            if let Some(t) = trace.as_deref_mut() {
                t.push((lower, upper));
            }
        }
        let (p, d) = self.pivot(v, lower);
        Ok(QueryAnswer {
            estimate: d + bunch[&p],
            witness_pivot: p,
            iterations,
        })
    }

    pub fn query(&self, v: VertexId, c: Color) -> Result<QueryAnswer> {
        self.bisect(v, c, None)
    }

    /// Level-by-level scan for the first pivot inside `B(c)`; `iterations`
    /// counts bunch probes.
    pub fn query_naive(&self, v: VertexId, c: Color) -> Result<QueryAnswer> {
        let bunch = self.precheck(v, c)?;
        for i in 0..self.k {
            let (p, d) = self.pivot(v, i);
            if let Some(&dc) = bunch.get(&p) {
                return Ok(QueryAnswer {
                    estimate: d + dc,
                    witness_pivot: p,
                    iterations: i + 1,
                });
            }
        }
        unreachable!("top-level pivot is in the bunch after the precheck")
    }

    /// The `(lower, upper)` interval before the loop and after every iteration.
    pub fn feasibility_trace(&self, v: VertexId, c: Color) -> Result<Vec<(usize, usize)>> {
        let mut trace = Vec::new();
        self.bisect(v, c, Some(&mut trace))?;
        Ok(trace)
    }
}

/// `⌈log_{3/2} k⌉ + 1`.
pub fn iteration_bound(k: usize) -> usize {
    let mut bound = 0;
    let mut reach = 1.0f64;
    while reach < k as f64 {
        reach *= 1.5;
        bound += 1;
    }
    bound + 1
}

/// Vertices `v` with `dist(u, v) < limit(v)`, where `None` means unbounded.
///
/// Such a set is closed under taking prefixes of shortest paths from `u`,
/// so Dijkstra only has to expand vertices that belong to it.
fn grow_cluster<F>(g: &Graph, u: VertexId, limit: F) -> Vec<VertexId>
where
    F: Fn(VertexId) -> Option<u64>,
{
    let within = |w: VertexId, d: u64| limit(w).is_none_or(|l| d < l);
    let mut dist: HashMap<VertexId, u64> = HashMap::new();
    let mut members = Vec::new();
    let mut heap = BinaryHeap::new();
    dist.insert(u, 0);
    heap.push(Reverse((0u64, u)));
    while let Some(Reverse((d, x))) = heap.pop() {
        if dist[&x] != d || !within(x, d) {
            continue;
        }
        members.push(x);
        for &(y, w) in g.neighbors(x) {
            let nd = d + w;
            if within(y, nd) && dist.get(&y).is_none_or(|&old| nd < old) {
                dist.insert(y, nd);
                heap.push(Reverse((nd, y)));
            }
        }
    }
    members
}
