//! Exact maximum cardinality cut for graphs that come with a bubble partition
//! or a clique-width expression.
//!
//! The bubble route contracts maximal true-twin classes, groups them into a
//! tree-shaped partition, and runs a dynamic program over tight cuts. The
//! clique-width route evaluates label-count vectors bottom-up, optionally
//! restricted to vectors that tight cuts can produce. A brute-force oracle
//! cross-checks both.

pub mod bench;
pub mod bubble_model;
pub mod cw;
pub mod dp;
pub mod graph;
pub mod interval;
pub mod mis;
pub mod oracle;
pub mod partition;
pub mod pipeline;
