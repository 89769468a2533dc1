//! Covers of a finite metric by dominating ultrametrics.
//!
//! Each candidate tree comes from a randomly shifted hierarchical partition:
//! at scale `β·2^ℓ·d_min` every point joins the first center, in a fresh random
//! order, within that radius. Clusters are labelled with their diameter, which
//! makes every tree dominate the metric. A tree is kept for the points whose
//! distortion against *all* other points is at most `D`; those points make it
//! their home. Trees are drawn until every point has a home.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Hst;
use crate::error::{Error, Result};
use crate::graph::{self, Graph, VertexId};

pub const DEFAULT_ATTEMPTS_PER_ROUND: usize = 64;

/// Dense symmetric distance matrix over points `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metric {
    n: usize,
    d: Vec<u64>,
}

impl Metric {
    pub fn new(n: usize, d: Vec<u64>) -> Result<Self> {
        if d.len() != n * n {
            return Err(Error::DimensionError {
                expected: n * n,
                got: d.len(),
            });
        }
        Ok(Self { n, d })
    }

    /// Exact shortest-path metric on `vertices`, which must lie in one component.
    pub fn from_component(g: &Graph, vertices: &[VertexId]) -> Result<Self> {
        let n = vertices.len();
        let mut d = vec![0; n * n];
        for (i, &s) in vertices.iter().enumerate() {
            let row = graph::shortest_paths(g, s)?;
            for (j, &t) in vertices.iter().enumerate() {
                d[i * n + j] = row[t].ok_or(Error::InvalidVertex(t))?;
            }
        }
        Ok(Self { n, d })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dist(&self, x: usize, y: usize) -> u64 {
        self.d[x * self.n + y]
    }
}

/// One random dominating HST over the whole metric.
pub fn random_hst<R: Rng>(metric: &Metric, rng: &mut R) -> Hst {
    let n = metric.len();
    if n == 1 {
        return Hst::new(vec![0], vec![0], vec![0]).expect("single leaf");
    }
    let mut d_min = u64::MAX;
    let mut diam = 0;
    for x in 0..n {
        for y in x + 1..n {
            d_min = d_min.min(metric.dist(x, y));
            diam = diam.max(metric.dist(x, y));
        }
    }
    let beta: f64 = rng.gen_range(0.5..1.0);
    let radius = |level: u32| beta * d_min as f64 * 2f64.powi(level as i32);
    let mut top = 0;
    while radius(top) < diam as f64 {
        top += 1;
    }

    // Raw partition tree, top-down. Level 0 has radius below d_min, so its
    // clusters are singletons.
    let mut raw_parent = vec![0usize];
    let mut raw_points: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut frontier = vec![0usize];
    let mut order: Vec<usize> = (0..n).collect();
    let mut rank = vec![0usize; n];
    for level in (0..top).rev() {
        let r = radius(level);
        order.shuffle(rng);
        for (i, &c) in order.iter().enumerate() {
            rank[c] = i;
        }
        let center: Vec<usize> = (0..n)
            .map(|x| {
                *order
                    .iter()
                    .find(|&&c| metric.dist(x, c) as f64 <= r)
                    .expect("a point is within any radius of itself")
            })
            .collect();
        let mut next = Vec::new();
        for &node in &frontier {
            let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
            for &x in &raw_points[node] {
                match groups.iter_mut().find(|(c, _)| *c == center[x]) {
                    Some((_, g)) => g.push(x),
                    None => groups.push((center[x], vec![x])),
                }
            }
            groups.sort_by_key(|(c, _)| rank[*c]);
            for (_, pts) in groups {
                raw_parent.push(node);
                raw_points.push(pts);
                next.push(raw_parent.len() - 1);
            }
        }
        frontier = next;
    }

    let raw_delta: Vec<u64> = raw_points
        .iter()
        .map(|pts| {
            let mut best = 0;
            for (i, &x) in pts.iter().enumerate() {
                for &y in &pts[i + 1..] {
                    best = best.max(metric.dist(x, y));
                }
            }
            best
        })
        .collect();

    // Contract children carrying their parent's label. Raw nodes are created
    // parents-first, so a single forward pass suffices.
    let mut keep = vec![0usize; raw_parent.len()];
    let mut parent = vec![0usize];
    let mut delta = vec![raw_delta[0]];
    for x in 1..raw_parent.len() {
        let p = keep[raw_parent[x]];
        if raw_delta[x] == delta[p] {
            keep[x] = p;
        } else {
            keep[x] = parent.len();
            parent.push(p);
            delta.push(raw_delta[x]);
        }
    }
    let mut leaf_of = vec![0usize; n];
    for &node in &frontier {
        let pts = &raw_points[node];
        debug_assert_eq!(pts.len(), 1);
        leaf_of[pts[0]] = keep[node];
    }
    Hst::new(parent, delta, leaf_of).expect("contracted partition tree is a valid HST")
}

/// Dominating ultrametrics with a home tree per point.
#[derive(Debug, Clone)]
pub struct UltrametricCover {
    trees: Vec<Hst>,
    home: Vec<usize>,
    distortion: f64,
    k: usize,
}

impl UltrametricCover {
    pub fn trees(&self) -> &[Hst] {
        &self.trees
    }

    pub fn home(&self, point: usize) -> usize {
        self.home[point]
    }

    pub fn homes(&self) -> &[usize] {
        &self.home
    }

    pub fn distortion(&self) -> f64 {
        self.distortion
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }
}

/// Points of `candidates` whose distortion in `tree` is at most `distortion`
/// against every point.
pub fn well_embedded(
    metric: &Metric,
    tree: &Hst,
    candidates: &[usize],
    distortion: f64,
) -> Vec<usize> {
    candidates
        .iter()
        .copied()
        .filter(|&v| {
            (0..metric.len())
                .all(|u| tree.ultra_dist(v, u) as f64 <= distortion * metric.dist(v, u) as f64)
        })
        .collect()
}

pub fn build_cover(
    metric: &Metric,
    k: usize,
    distortion: f64,
    seed: u64,
) -> Result<UltrametricCover> {
    build_cover_with_budget(metric, k, distortion, seed, DEFAULT_ATTEMPTS_PER_ROUND)
}

pub fn build_cover_with_budget(
    metric: &Metric,
    k: usize,
    distortion: f64,
    seed: u64,
    attempts_per_round: usize,
) -> Result<UltrametricCover> {
    if k < 1 {
        return Err(Error::InvalidK(k));
    }
    if distortion.is_nan() || distortion < 1.0 {
        return Err(Error::InvalidDistortion(distortion));
    }
    if metric.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut unassigned: Vec<usize> = (0..metric.len()).collect();
    let mut home = vec![usize::MAX; metric.len()];
    let mut trees = Vec::new();
    while !unassigned.is_empty() {
        let target = ((unassigned.len() as f64).powf(1.0 - 1.0 / k as f64).floor() as usize).max(1);
        let mut best: Option<(Hst, Vec<usize>)> = None;
        for _ in 0..attempts_per_round.max(1) {
            let tree = random_hst(metric, &mut rng);
            let good = well_embedded(metric, &tree, &unassigned, distortion);
            let enough = good.len() >= target;
            if best.as_ref().is_none_or(|(_, b)| good.len() > b.len()) {
                best = Some((tree, good));
            }
            if enough {
                break;
            }
        }
        let (tree, good) = best.expect("at least one attempt");
        if good.is_empty() {
            return Err(Error::RetryBudgetExceeded {
                remaining: unassigned.len(),
            });
        }
        for &v in &good {
            home[v] = trees.len();
        }
        unassigned.retain(|&v| home[v] == usize::MAX);
        trees.push(tree);
    }
    Ok(UltrametricCover {
        trees,
        home,
        distortion,
        k,
    })
}
