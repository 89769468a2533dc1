//! Nearest colored node oracles.
//!
//! * [`static_oracle`]: sampled pivot hierarchy with color bunches, queried by
//!   a logarithmic bisection over pivot gaps.
//! * [`hst`]: recolorable oracle over a cover of dominating ultrametrics.
//! * [`path`]: leveled weighted path that turns any factor-`b` distance
//!   estimate into the exact nearest colored position.
//! * [`gadget`]: the row-path graph that evaluates `uᵀMv` by color
//!   connectivity queries.
//!
//! [`graph`] holds the exact shortest-path ground truth every structure is
//! tested against, and [`seq`] the range-max, LCA and predecessor structures.

pub mod error;
pub mod gadget;
pub mod gen;
pub mod graph;
pub mod hst;
pub mod path;
pub mod seq;
pub mod static_oracle;

pub use error::{Error, Result};
pub use graph::{Color, Coloring, Dist, DistResult, Graph, VertexId};
