//! Approximating the crossing number of bounded-degree graphs.
//!
//! The pipeline removes a planarizing edge set `E*`, embeds the planar
//! remainder close to well-behaved embeddings using block decompositions, and
//! reinserts the removed edges. Graphs that are not 3-connected are split into
//! pieces that are drawn separately and composed back with weighted
//! bookkeeping. Degree reduction and restoration make arbitrary-degree inputs
//! fit the same machinery.

pub mod composer;
pub mod decomp;
pub mod drawing;
pub mod embedder;
pub mod flow;
pub mod generators;
pub mod graph;
pub mod inserter;
pub mod io;
pub mod planarity;
pub mod pipeline;
pub mod planarizer;
pub mod reducer;
