//! Line-oriented text formats for graphs and workloads.
//!
//! Graph file:
//!
//! ```text
//! g <n> <m> <sigma>
//! e <u> <v> <w>      (m lines)
//! c <v> <color>      (n lines)
//! ```
//!
//! Workload file: `q <v> <color>` queries and `r <v> <color>` recolors.
//! Blank lines and anything after `#` are ignored in both.

use std::fmt::Write as _;
use std::path::Path;

use colordist::graph::Edge;
use colordist::{Color, Coloring, Graph, VertexId};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: color {color} is not below sigma = {sigma}")]
    Range { line: usize, color: u64, sigma: u32 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Graph(#[from] colordist::Error),
}

fn parse_err(line: usize, message: impl Into<String>) -> LoadError {
    LoadError::Parse {
        line,
        message: message.into(),
    }
}

/// Nonempty lines with their 1-based numbers, comments stripped.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

fn numbers<const N: usize>(line: usize, tag: &str, fields: &[&str]) -> Result<[u64; N], LoadError> {
    if fields.len() != N + 1 {
        return Err(parse_err(
            line,
            format!("`{tag}` expects {N} fields, found {}", fields.len() - 1),
        ));
    }
    let mut out = [0u64; N];
    for (slot, f) in out.iter_mut().zip(&fields[1..]) {
        *slot = f
            .parse()
            .map_err(|_| parse_err(line, format!("`{f}` is not a nonnegative integer")))?;
    }
    Ok(out)
}

pub fn parse_graph(text: &str) -> Result<(Graph, Coloring), LoadError> {
    let mut lines = records(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing `g` header"))?;
    if header[0] != "g" {
        return Err(parse_err(
            hline,
            format!("expected `g` header, found `{}`", header[0]),
        ));
    }
    let [n, m, sigma] = numbers::<3>(hline, "g", &header)?;
    let sigma = u32::try_from(sigma).map_err(|_| parse_err(hline, "sigma too large"))?;
    let (n, m) = (n as usize, m as usize);
    let mut edges = Vec::with_capacity(m);
    let mut colors: Vec<Option<Color>> = vec![None; n];
    let mut last = hline;
    for (line, fields) in lines {
        last = line;
        match fields[0] {
            "e" => {
                if colors.iter().any(Option::is_some) {
                    return Err(parse_err(line, "edge after color lines"));
                }
                if edges.len() == m {
                    return Err(parse_err(line, format!("more than {m} edges")));
                }
                let [u, v, w] = numbers::<3>(line, "e", &fields)?;
                for x in [u, v] {
                    if x >= n as u64 {
                        return Err(parse_err(line, format!("vertex {x} out of range")));
                    }
                }
                if w == 0 {
                    return Err(parse_err(line, "edge weight must be positive"));
                }
                edges.push(Edge {
                    u: u as VertexId,
                    v: v as VertexId,
                    w,
                });
            }
            "c" => {
                if edges.len() != m {
                    return Err(parse_err(
                        line,
                        format!("expected {m} edges, found {}", edges.len()),
                    ));
                }
                let [v, c] = numbers::<2>(line, "c", &fields)?;
                if v >= n as u64 {
                    return Err(parse_err(line, format!("vertex {v} out of range")));
                }
                if c >= u64::from(sigma) {
                    return Err(LoadError::Range {
                        line,
                        color: c,
                        sigma,
                    });
                }
                let slot = &mut colors[v as usize];
                if slot.is_some() {
                    return Err(parse_err(line, format!("vertex {v} colored twice")));
                }
                *slot = Some(c as Color);
            }
            other => return Err(parse_err(line, format!("unknown record `{other}`"))),
        }
    }
    if edges.len() != m {
        return Err(parse_err(
            last,
            format!("expected {m} edges, found {}", edges.len()),
        ));
    }
    let colors = colors
        .into_iter()
        .enumerate()
        .map(|(v, c)| {
            c.ok_or_else(|| parse_err(last, format!("missing color line for vertex {v}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((Graph::new(n, edges)?, Coloring::new(sigma, colors)?))
}

pub fn load_graph(path: &Path) -> Result<(Graph, Coloring), LoadError> {
    parse_graph(&std::fs::read_to_string(path)?)
}

pub fn format_graph(g: &Graph, col: &Coloring) -> String {
    let mut out = String::new();
    writeln!(out, "g {} {} {}", g.n(), g.m(), col.sigma()).unwrap();
    for e in g.edges() {
        writeln!(out, "e {} {} {}", e.u, e.v, e.w).unwrap();
    }
    for (v, c) in col.colors().iter().enumerate() {
        writeln!(out, "c {v} {c}").unwrap();
    }
    out
}

pub fn write_graph(path: &Path, g: &Graph, col: &Coloring) -> std::io::Result<()> {
    std::fs::write(path, format_graph(g, col))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Query(VertexId, Color),
    Recolor(VertexId, Color),
}

pub fn parse_workload(text: &str) -> Result<Vec<Op>, LoadError> {
    records(text)
        .map(|(line, fields)| {
            let [v, c] = numbers::<2>(line, fields[0], &fields)?;
            let (v, c) = (
                v as VertexId,
                u32::try_from(c).map_err(|_| parse_err(line, "color too large"))?,
            );
            match fields[0] {
                "q" => Ok(Op::Query(v, c)),
                "r" => Ok(Op::Recolor(v, c)),
                other => Err(parse_err(line, format!("unknown record `{other}`"))),
            }
        })
        .collect()
}

pub fn load_workload(path: &Path) -> Result<Vec<Op>, LoadError> {
    parse_workload(&std::fs::read_to_string(path)?)
}

/// Whitespace-separated color ids, for the path commands.
pub fn parse_sequence(text: &str) -> Result<Vec<Color>, LoadError> {
    records(text)
        .flat_map(|(line, fields)| fields.into_iter().map(move |f| (line, f)))
        .map(|(line, f)| {
            f.parse()
                .map_err(|_| parse_err(line, format!("`{f}` is not a color id")))
        })
        .collect()
}
