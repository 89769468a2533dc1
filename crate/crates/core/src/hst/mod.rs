//! Recolorable nearest colored node oracle over an ultrametric cover.

mod cover;
mod index;
mod oracle;
mod tree;

pub use cover::{
    build_cover, build_cover_with_budget, random_hst, well_embedded, Metric, UltrametricCover,
    DEFAULT_ATTEMPTS_PER_ROUND,
};
pub use index::ColoredAncestorIndex;
pub use oracle::{DynAnswer, RecolorableOracle, Variant};
pub use tree::Hst;
