//! Exhaustive checks for the path exactifier and the matrix gadget.

use colordist::gadget::{build_gadget, direct_product, GadgetVariant};
use colordist::path::{Mode, PathExactifier};
use colordist::Color;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::Report;

pub const PATH_HEADER: &str = "i,c,expected,found,estimate";
pub const GADGET_HEADER: &str = "trial,variant,u,v,expected,found";

/// For every position, the nearest occurrence of each color by path
/// distance, ties to the smaller position.
fn nearest_table(p: &PathExactifier, len: usize, sigma: u32) -> Vec<Vec<Option<usize>>> {
    let inst = p.instance();
    let n = inst.n();
    let mut table = vec![vec![None; sigma as usize]; len];
    for c in 0..sigma {
        let mut left = vec![None; n + 2];
        for x in 1..=n {
            left[x] = if inst.color_at(x) == c {
                Some(x)
            } else {
                left[x - 1]
            };
        }
        let mut right = vec![None; n + 2];
        for x in (1..=n).rev() {
            right[x] = if inst.color_at(x) == c {
                Some(x)
            } else {
                right[x + 1]
            };
        }
        for i in 1..=len {
            table[i - 1][c as usize] = [left[i], right[i]]
                .into_iter()
                .flatten()
                .min_by_key(|&j| (inst.dist(i, j), j));
        }
    }
    table
}

/// Queries every `(i, c)` with estimates `dist` and `b · dist`.
pub fn verify_path(colors: &[Color], base: u64, mode: Mode) -> colordist::Result<Report> {
    let p = PathExactifier::build(colors, base)?;
    let inst = p.instance();
    let sigma = colors.iter().copied().max().map_or(0, |c| c + 1);
    let table = nearest_table(&p, colors.len(), sigma);
    let mut rows = Vec::new();
    let mut queries = 0usize;
    for i in 1..=colors.len() {
        for c in 0..sigma {
            let Some(j) = table[i - 1][c as usize] else {
                continue;
            };
            let d = inst.dist(i, j);
            for estimate in [d, base * d] {
                queries += 1;
                match p.exact_query(i, c, estimate, mode) {
                    Ok(found) if found == j => {}
                    Ok(found) => rows.push(format!("{i},{c},{j},{found},{estimate}")),
                    Err(_) => rows.push(format!("{i},{c},{j},none,{estimate}")),
                }
            }
        }
    }
    let entry_bound = base * inst.n() as u64 * u64::from(inst.levels());
    let pass = rows.is_empty() && p.entries() as u64 <= entry_bound;
    let summary = format!(
        "summary,queries={queries},violations={},entries={},entry_bound={entry_bound},status={}",
        rows.len(),
        p.entries(),
        if pass { "pass" } else { "fail" }
    );
    Ok(Report {
        header: PATH_HEADER,
        rows,
        summary,
        pass,
    })
}

fn bits(x: u64, len: usize) -> Vec<bool> {
    (0..len).map(|i| x >> i & 1 == 1).collect()
}

fn random_bits(rng: &mut ChaCha8Rng, len: usize) -> Vec<bool> {
    (0..len).map(|_| rng.next_u32() & 1 == 1).collect()
}

fn show(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Random matrices; every vector pair when `n1 + n2 <= 12`, otherwise
/// 256 random pairs per matrix.
pub fn verify_gadget(n1: usize, n2: usize, trials: usize, seed: u64) -> colordist::Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut pairs_checked = 0usize;
    for trial in 0..trials {
        let m: Vec<Vec<bool>> = (0..n1).map(|_| random_bits(&mut rng, n2)).collect();
        let pairs: Vec<(Vec<bool>, Vec<bool>)> = if n1 + n2 <= 12 {
            (0..1u64 << n1)
                .flat_map(|a| (0..1u64 << n2).map(move |b| (bits(a, n1), bits(b, n2))))
                .collect()
        } else {
            (0..256)
                .map(|_| (random_bits(&mut rng, n1), random_bits(&mut rng, n2)))
                .collect()
        };
        for variant in [
            GadgetVariant::Tree,
            GadgetVariant::CompactDirected,
            GadgetVariant::CompactUndirected,
        ] {
            let mut g = build_gadget(&m, variant)?;
            for (u, v) in &pairs {
                let expected = direct_product(&m, u, v);
                let mut found = vec![g.process_pair(u, v)?];
                if variant == GadgetVariant::CompactUndirected {
                    found.push(g.compact_distance_check(u, v)?);
                }
                pairs_checked += 1;
                for f in found.into_iter().filter(|&f| f != expected) {
                    rows.push(format!(
                        "{trial},{variant:?},{},{},{},{}",
                        show(u),
                        show(v),
                        u8::from(expected),
                        u8::from(f)
                    ));
                }
            }
        }
    }
    let pass = rows.is_empty();
    let summary = format!(
        "summary,pairs={pairs_checked},violations={},status={}",
        rows.len(),
        if pass { "pass" } else { "fail" }
    );
    Ok(Report {
        header: GADGET_HEADER,
        rows,
        summary,
        pass,
    })
}
