//! Verification and benchmark reports, written as CSV.

use std::time::Instant;

use colordist::graph::{brute_nearest, shortest_paths};
use colordist::hst::{RecolorableOracle, Variant};
use colordist::static_oracle::{iteration_bound, StaticOracle};
use colordist::{Color, Coloring, Error, Graph, VertexId};

use crate::io::Op;

pub const VERIFY_HEADER: &str = "v,c,exact,estimate,stretch,witness,iterations";
pub const BENCH_HEADER: &str = "procedure,k,mean_iterations,p99_time";

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub header: &'static str,
    pub rows: Vec<String>,
    pub summary: String,
    pub pass: bool,
}

impl Report {
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.rows.len() + 2));
        out.push_str(self.header);
        out.push('\n');
        for row in &self.rows {
            out.push_str(row);
            out.push('\n');
        }
        out.push_str(&self.summary);
        out.push('\n');
        out
    }
}

fn status(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

/// `estimate / exact`, with `0 / 0` read as 1.
fn stretch(exact: u64, estimate: u64) -> f64 {
    if exact == 0 {
        if estimate == 0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        estimate as f64 / exact as f64
    }
}

/// Nearest `c`-vertex for every color from one shortest-path pass; ties
/// go to the smaller id.
fn nearest_row(g: &Graph, col: &Coloring, v: VertexId) -> Vec<Option<(u64, VertexId)>> {
    let d = shortest_paths(g, v).expect("vertex in range");
    (0..col.sigma())
        .map(|c| {
            col.members(c)
                .iter()
                .filter_map(|&u| d[u].map(|du| (du, u)))
                .min()
        })
        .collect()
}

fn absent(e: &Error) -> bool {
    matches!(
        e,
        Error::NoSuchColor(_) | Error::NoSuchColorInComponent { .. }
    )
}

struct Tally {
    rows: Vec<String>,
    max_stretch: f64,
    pass: bool,
}

impl Tally {
    fn new() -> Self {
        Self {
            rows: Vec::new(),
            max_stretch: 1.0,
            pass: true,
        }
    }

    /// Records one query answer as `(estimate, witness, iterations)`.
    fn record(
        &mut self,
        v: VertexId,
        c: Color,
        exact: Option<u64>,
        answer: Result<(u64, VertexId, usize), Error>,
        bound: f64,
    ) {
        match (exact, answer) {
            (None, Err(e)) if absent(&e) => {}
            (Some(d), Ok((estimate, witness, iterations))) => {
                let s = stretch(d, estimate);
                self.max_stretch = self.max_stretch.max(s);
                if estimate < d || s > bound {
                    self.pass = false;
                }
                self.rows.push(format!(
                    "{v},{c},{d},{estimate},{s:.4},{witness},{iterations}"
                ));
            }
            (exact, answer) => {
                self.pass = false;
                let exact = exact.map_or("none".to_string(), |d| d.to_string());
                let got = match answer {
                    Ok((e, _, _)) => e.to_string(),
                    Err(e) => format!("error: {e}"),
                };
                self.rows.push(format!("{v},{c},{exact},{got},,,"));
            }
        }
    }
}

/// Exhaustive `(v, c)` check of the static oracle.
pub fn verify_static(g: &Graph, col: &Coloring, k: usize, seed: u64) -> colordist::Result<Report> {
    let oracle = StaticOracle::build(g, col, k, seed)?;
    let bound = (4 * k).saturating_sub(5).max(1);
    let mut tally = Tally::new();
    for v in 0..g.n() {
        for (c, exact) in nearest_row(g, col, v).into_iter().enumerate() {
            let c = c as Color;
            let answer = oracle
                .query(v, c)
                .map(|a| (a.estimate, a.witness_pivot, a.iterations));
            tally.record(v, c, exact.map(|(d, _)| d), answer, bound as f64);
        }
    }
    let space = oracle.space_report();
    let summary = format!(
        "summary,max_stretch={:.4},bound={bound},status={},bunch_entries={},gap_words={}",
        tally.max_stretch,
        status(tally.pass),
        space.bunch_entries,
        space.gap_array_words
    );
    Ok(Report {
        header: VERIFY_HEADER,
        rows: tally.rows,
        summary,
        pass: tally.pass,
    })
}

/// Checks the recolorable oracle; without a workload every `(v, c)` of the
/// initial coloring is queried. The iterations column holds the number of
/// trees read by the query.
pub fn verify_dynamic(
    g: &Graph,
    col: &Coloring,
    k: usize,
    distortion: f64,
    variant: Variant,
    seed: u64,
    workload: Option<&[Op]>,
) -> colordist::Result<Report> {
    let mut oracle = RecolorableOracle::build(g, col, k, distortion, variant, seed)?;
    let mut current = col.clone();
    let mut tally = Tally::new();
    let query = |oracle: &RecolorableOracle, current: &Coloring, tally: &mut Tally, v, c| {
        let exact = brute_nearest(g, current, v, c).map(|r| r.distance());
        let exact = match exact {
            Ok(d) => d,
            Err(e) => {
                tally.record(v, c, None, Err(e), distortion);
                return;
            }
        };
        let probed = match variant {
            Variant::FastQuery => 1,
            Variant::FastUpdate => oracle.locate(v).map_or(0, |(_, _, cover)| cover.len()),
        };
        let answer = oracle.query(v, c).map(|a| (a.estimate, a.witness, probed));
        tally.record(v, c, exact, answer, distortion);
    };
    match workload {
        Some(ops) => {
            for &op in ops {
                match op {
                    Op::Recolor(v, c) => {
                        oracle.recolor(v, c)?;
                        current.recolor(v, c)?;
                    }
                    Op::Query(v, c) => query(&oracle, &current, &mut tally, v, c),
                }
            }
        }
        None => {
            for v in 0..g.n() {
                for c in 0..col.sigma() {
                    query(&oracle, &current, &mut tally, v, c);
                }
            }
        }
    }
    let summary = format!(
        "summary,max_stretch={:.4},bound={distortion},status={},trees={}",
        tally.max_stretch,
        status(tally.pass),
        oracle.tree_count()
    );
    Ok(Report {
        header: VERIFY_HEADER,
        rows: tally.rows,
        summary,
        pass: tally.pass,
    })
}

fn p99(mut nanos: Vec<u128>) -> u128 {
    if nanos.is_empty() {
        return 0;
    }
    nanos.sort_unstable();
    let idx = ((nanos.len() as f64) * 0.99).ceil() as usize;
    nanos[idx.clamp(1, nanos.len()) - 1]
}

/// Iteration counts and p99 latency (nanoseconds) of the bisection query
/// and the level walk over every answerable `(v, c)`. Timing is reported,
/// iteration counts are checked.
pub fn bench_static(g: &Graph, col: &Coloring, k: usize, seed: u64) -> colordist::Result<Report> {
    let oracle = StaticOracle::build(g, col, k, seed)?;
    let bound = iteration_bound(k);
    let mut rows = Vec::new();
    let mut pass = true;
    let mut worst = [0usize; 2];
    for (p, name) in ["query", "query_naive"].into_iter().enumerate() {
        let (mut total, mut count, mut times) = (0usize, 0usize, Vec::new());
        for v in 0..g.n() {
            for c in 0..col.sigma() {
                let start = Instant::now();
                let answer = if p == 0 {
                    oracle.query(v, c)
                } else {
                    oracle.query_naive(v, c)
                };
                let elapsed = start.elapsed().as_nanos();
                let Ok(a) = answer else { continue };
                times.push(elapsed);
                total += a.iterations;
                count += 1;
                worst[p] = worst[p].max(a.iterations);
            }
        }
        let mean = if count == 0 {
            0.0
        } else {
            total as f64 / count as f64
        };
        rows.push(format!("{name},{k},{mean:.4},{}", p99(times)));
    }
    if worst[0] > bound || worst[1] > k {
        pass = false;
    }
    let summary = format!(
        "summary,max_iterations_query={},iteration_bound={bound},max_iterations_naive={},status={}",
        worst[0],
        worst[1],
        status(pass)
    );
    Ok(Report {
        header: BENCH_HEADER,
        rows,
        summary,
        pass,
    })
}
