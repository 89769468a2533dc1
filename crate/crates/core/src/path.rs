//! Leveled weighted path that recovers the exact nearest colored position
//! from a factor-`b` distance estimate.
//!
//! Positions are `1..=n` with `n` a power of `b`. The edge between `x` and
//! `x + 1` weighs `b^l` for the largest `l` with `b^l | x`, so edges between
//! coarse blocks dominate path length. Every position `x` divisible by `b^l`
//! keeps, for level `l`, the first occurrence of each color in
//! `[x, end(x, l)]`, where `end(x, l)` is the next multiple of `b^{l+1}`
//! strictly above `x`. Walking `ι(i, 0), ι(i, 1), …` covers `[i, n]`
//! without gaps, and the estimate pins down which few levels can contain the
//! answer.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Color, Edge, Graph};

/// Padding color; never stored in the cover maps and never queryable.
pub const BLANK: Color = Color::MAX;

/// Default number of levels below `⌊log_b estimate⌋` probed in fast mode.
pub const DEFAULT_WINDOW: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Levels `[l - window, l + 1]` only.
    Fast { window: u32 },
    /// Levels `[0, l + 1]`.
    Exact,
}

/// Smallest multiple of `b^l` that is at least `x`.
pub fn iota(x: u64, l: u32, b: u64) -> u64 {
    let step = b.pow(l);
    x.div_ceil(step) * step
}

/// Largest `l` with `b^l | x`, for `x >= 1`.
fn valuation(mut x: u64, b: u64) -> u32 {
    let mut l = 0;
    while x.is_multiple_of(b) {
        x /= b;
        l += 1;
    }
    l
}

/// `⌊log_b x⌋` for `x >= 1`.
fn ilog(x: u64, b: u64) -> u32 {
    let mut l = 0;
    let mut p = b;
    while p <= x {
        l += 1;
        match p.checked_mul(b) {
            Some(q) => p = q,
            None => break,
        }
    }
    l
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathInstance {
    base: u64,
    levels: u32,
    /// Colors of positions `1..=n`, stored at index `x - 1`.
    colors: Vec<Color>,
    /// `prefix[x - 1]` is the distance from position 1 to position `x`.
    prefix: Vec<u64>,
    original_len: usize,
}

impl PathInstance {
    /// Pads `colors` with [`BLANK`] up to a power of `b` (at least `b`).
    pub fn new(colors: &[Color], b: u64) -> Result<Self> {
        if b < 2 {
            return Err(Error::InvalidBase(b));
        }
        if colors.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut n = b;
        let mut levels = 1;
        while (n as usize) < colors.len() {
            n *= b;
            levels += 1;
        }
        let mut padded = colors.to_vec();
        padded.resize(n as usize, BLANK);
        Ok(Self::from_padded(padded, b, levels, colors.len()))
    }

    fn from_padded(colors: Vec<Color>, base: u64, levels: u32, original_len: usize) -> Self {
        let n = colors.len();
        let mut prefix = vec![0u64; n];
        for x in 1..n {
            prefix[x] = prefix[x - 1] + edge_weight(x as u64, base);
        }
        Self {
            base,
            levels,
            colors,
            prefix,
            original_len,
        }
    }

    /// The same path read backwards; position `x` becomes `n + 1 - x`.
    pub fn mirrored(&self) -> Self {
        let mut colors = self.colors.clone();
        colors.reverse();
        Self::from_padded(colors, self.base, self.levels, self.original_len)
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    /// `log_b n`.
    pub fn levels(&self) -> u32 {
        self.levels
    }

    /// Padded length.
    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn original_len(&self) -> usize {
        self.original_len
    }

    pub fn color_at(&self, x: usize) -> Color {
        self.colors[x - 1]
    }

    /// Weight of the edge between `x` and `x + 1`.
    pub fn weight(&self, x: usize) -> u64 {
        edge_weight(x as u64, self.base)
    }

    pub fn dist(&self, i: usize, j: usize) -> u64 {
        self.prefix[i.max(j) - 1] - self.prefix[i.min(j) - 1]
    }

    pub fn total_weight(&self) -> u64 {
        *self.prefix.last().expect("nonempty path")
    }

    /// Last position covered by the level-`l` map stored at `x`.
    pub fn cover_end(&self, x: usize, l: u32) -> usize {
        let block = self.base.pow(l + 1);
        let end = (x as u64 / block + 1) * block;
        end.min(self.n() as u64) as usize
    }
}

fn edge_weight(x: u64, b: u64) -> u64 {
    b.pow(valuation(x, b))
}

/// First occurrence of each color over each covered interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverMaps {
    /// `maps[l][m - 1]` belongs to position `m · b^l`.
    maps: Vec<Vec<HashMap<Color, usize>>>,
}

impl CoverMaps {
    pub fn build(inst: &PathInstance) -> Self {
        let b = inst.base();
        let maps = (0..=inst.levels())
            .map(|l| {
                let step = b.pow(l) as usize;
                (1..=inst.n() / step)
                    .map(|m| {
                        let x = m * step;
                        let mut map = HashMap::new();
                        for j in x..=inst.cover_end(x, l) {
                            let c = inst.color_at(j);
                            if c != BLANK {
                                map.entry(c).or_insert(j);
                            }
                        }
                        map
                    })
                    .collect()
            })
            .collect();
        Self { maps }
    }

    /// The level-`l` map at `x`; `x` must be a multiple of `b^l`.
    pub fn map_at(&self, inst: &PathInstance, x: usize, l: u32) -> &HashMap<Color, usize> {
        let step = inst.base().pow(l) as usize;
        debug_assert_eq!(x % step, 0);
        &self.maps[l as usize][x / step - 1]
    }

    pub fn entries(&self) -> usize {
        self.maps.iter().flatten().map(HashMap::len).sum()
    }
}

/// Nearest `c`-position at or after `i`, among the maps the mode allows.
pub fn forward_query(
    inst: &PathInstance,
    maps: &CoverMaps,
    i: usize,
    c: Color,
    estimate: u64,
    mode: Mode,
) -> Option<usize> {
    if inst.color_at(i) == c {
        return Some(i);
    }
    if estimate == 0 {
        return None;
    }
    let b = inst.base();
    let l = ilog(estimate, b);
    let hi = (l + 1).min(inst.levels());
    let lo = match mode {
        Mode::Exact => 0,
        Mode::Fast { window } => l.saturating_sub(window).min(hi),
    };
    (lo..=hi)
        .filter_map(|lv| {
            let x = iota(i as u64, lv, b) as usize;
            maps.map_at(inst, x, lv).get(&c).copied()
        })
        .min()
}

/// Forward and mirrored instances with their cover maps.
#[derive(Debug, Clone)]
pub struct PathExactifier {
    forward: PathInstance,
    forward_maps: CoverMaps,
    backward: PathInstance,
    backward_maps: CoverMaps,
}

impl PathExactifier {
    pub fn build(colors: &[Color], b: u64) -> Result<Self> {
        let forward = PathInstance::new(colors, b)?;
        let backward = forward.mirrored();
        Ok(Self {
            forward_maps: CoverMaps::build(&forward),
            backward_maps: CoverMaps::build(&backward),
            forward,
            backward,
        })
    }

    pub fn instance(&self) -> &PathInstance {
        &self.forward
    }

    pub fn maps(&self) -> &CoverMaps {
        &self.forward_maps
    }

    pub fn mirrored_instance(&self) -> &PathInstance {
        &self.backward
    }

    /// Map entries of the forward instance.
    pub fn entries(&self) -> usize {
        self.forward_maps.entries()
    }

    /// Exact nearest `c`-position to `i`, given `estimate` within
    /// `[dist(i, c), b · dist(i, c)]`. Ties go to the smaller position.
    pub fn exact_query(&self, i: usize, c: Color, estimate: u64, mode: Mode) -> Result<usize> {
        if i == 0 || i > self.forward.original_len() {
            return Err(Error::InvalidVertex(i));
        }
        if c == BLANK {
            return Err(Error::NoSuchColor(c));
        }
        let n = self.forward.n();
        let ahead = forward_query(&self.forward, &self.forward_maps, i, c, estimate, mode);
        let behind = forward_query(
            &self.backward,
            &self.backward_maps,
            n + 1 - i,
            c,
            estimate,
            mode,
        )
        .map(|j| n + 1 - j);
        [behind, ahead]
            .into_iter()
            .flatten()
            .min_by_key(|&j| (self.forward.dist(i, j), j))
            .ok_or(Error::ContractViolation {
                position: i,
                color: c,
                estimate,
            })
    }
}

/// Unit-weight graph: a weight-`w` edge becomes a path through `w - 1`
/// dummies. Position `x` is vertex `x - 1`; dummies follow.
pub fn expand_unweighted(inst: &PathInstance) -> Graph {
    let n = inst.n();
    let mut edges = Vec::new();
    let mut next = n;
    for x in 1..n {
        let w = inst.weight(x);
        let mut prev = x - 1;
        for _ in 1..w {
            edges.push(Edge {
                u: prev,
                v: next,
                w: 1,
            });
            prev = next;
            next += 1;
        }
        edges.push(Edge {
            u: prev,
            v: x,
            w: 1,
        });
    }
    Graph::new(next, edges).expect("expanded path is well formed")
}

/// Rank queries (occurrences of `c` in `S[1, i)`) answered through a
/// nearest-colored-position lookup.
#[derive(Debug, Clone)]
pub struct RankIndex {
    exact: PathExactifier,
    /// Occurrences of `S[j]` in `S[1, j]`, at index `j - 1`.
    rank: Vec<usize>,
}

impl RankIndex {
    pub fn new(sequence: &[Color], b: u64) -> Result<Self> {
        let exact = PathExactifier::build(sequence, b)?;
        let mut seen: HashMap<Color, usize> = HashMap::new();
        let rank = sequence
            .iter()
            .map(|&c| {
                let r = seen.entry(c).or_insert(0);
                *r += 1;
                *r
            })
            .collect();
        Ok(Self { exact, rank })
    }

    pub fn path(&self) -> &PathExactifier {
        &self.exact
    }

    /// `estimate(i, c)` must honor the factor-`b` contract, returning `None`
    /// when `c` does not occur.
    pub fn rank<F>(&self, i: usize, c: Color, estimate: F, mode: Mode) -> Result<usize>
    where
        F: Fn(usize, Color) -> Option<u64>,
    {
        let Some(est) = estimate(i, c) else {
            return Ok(0);
        };
        let j = self.exact.exact_query(i, c, est, mode)?;
        Ok(if j < i {
            self.rank[j - 1]
        } else {
            self.rank[j - 1] - 1
        })
    }
}
