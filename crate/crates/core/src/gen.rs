//! Seeded random instances for tests, benchmarks and the CLI.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Color, Coloring, Edge, Graph};

/// Connected graph: a random recursive tree plus `extra` uniformly random edges.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, max_w: u64, extra: usize) -> Graph {
    let mut edges = Vec::with_capacity(n + extra);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push(Edge {
            u,
            v,
            w: rng.gen_range(1..=max_w),
        });
    }
    if n >= 2 {
        for _ in 0..extra {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v {
                edges.push(Edge {
                    u,
                    v,
                    w: rng.gen_range(1..=max_w),
                });
            }
        }
    }
    Graph::new(n, edges).expect("generated edges are valid")
}

/// `m` uniformly random edges; usually disconnected when `m` is small.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, max_w: u64, m: usize) -> Graph {
    let mut edges = Vec::with_capacity(m);
    if n >= 2 {
        for _ in 0..m {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v {
                edges.push(Edge {
                    u,
                    v,
                    w: rng.gen_range(1..=max_w),
                });
            }
        }
    }
    Graph::new(n, edges).expect("generated edges are valid")
}

/// Uniform coloring in which every color is used at least once when `n >= sigma`.
pub fn random_coloring<R: Rng>(rng: &mut R, n: usize, sigma: u32) -> Coloring {
    let mut colors: Vec<Color> = (0..n).map(|_| rng.gen_range(0..sigma)).collect();
    if n >= sigma as usize {
        let mut slots: Vec<usize> = (0..n).collect();
        slots.shuffle(rng);
        for (c, &v) in slots.iter().take(sigma as usize).enumerate() {
            colors[v] = c as Color;
        }
    }
    Coloring::new(sigma, colors).expect("colors in range")
}

pub fn random_instance<R: Rng>(
    rng: &mut R,
    n: usize,
    sigma: u32,
    max_w: u64,
    extra: usize,
) -> (Graph, Coloring) {
    let g = random_connected(rng, n, max_w, extra);
    let col = random_coloring(rng, n, sigma);
    (g, col)
}

pub fn random_sparse_instance<R: Rng>(
    rng: &mut R,
    n: usize,
    sigma: u32,
    max_w: u64,
    m: usize,
) -> (Graph, Coloring) {
    let g = random_graph(rng, n, max_w, m);
    let col = random_coloring(rng, n, sigma);
    (g, col)
}

/// Random HST over `points` leaves built by merging random groups of 2 to 4
/// subtrees; each parent's label exceeds its children's.
pub fn random_hst<R: Rng>(rng: &mut R, points: usize) -> crate::hst::Hst {
    assert!(points >= 1);
    let mut parent: Vec<usize> = (0..points).collect();
    let mut delta = vec![0u64; points];
    let mut pool: Vec<usize> = (0..points).collect();
    while pool.len() > 1 {
        pool.shuffle(rng);
        let take = rng.gen_range(2..=pool.len().min(4));
        let group: Vec<usize> = pool.drain(..take).collect();
        let node = parent.len();
        let label = group.iter().map(|&x| delta[x]).max().unwrap() + rng.gen_range(1..=5);
        parent.push(node);
        delta.push(label);
        for x in group {
            parent[x] = node;
        }
        pool.push(node);
    }
    let leaf_of = (0..points).collect();
    crate::hst::Hst::new(parent, delta, leaf_of).expect("merged tree is a valid HST")
}
