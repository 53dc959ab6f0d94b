//! P4-sparse graphs: spider detection, primeval decomposition, and the
//! color-elimination descent on `G[K_l]`.

mod descent;
mod tree;

pub use descent::{
    descend_p4sparse, lift_coloring, CLift, CliqueCertificate, ColorChange, DescentOutcome, RecolorRule,
    ReductionTrace, TraceRecord,
};
pub use tree::{
    detect_spider, detect_spider_within, primeval_decompose, LeafKind, Node, Operation, PrimevalTree, SpiderParts,
};

#[cfg(test)]
mod tests;
