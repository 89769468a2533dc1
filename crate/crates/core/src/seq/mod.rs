//! Array and tree substructures shared by the oracles.

mod lca;
mod okset;
mod rmq;

pub use lca::EulerLca;
pub use okset::OrderedKeySet;
pub use rmq::RangeMaxIndex;
