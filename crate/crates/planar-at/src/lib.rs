//! Exact certificates that a plane graph minus a matching has small
//! Alon-Tarsi number.
//!
//! Given a plane graph and a boundary edge, the extractor constructs a
//! matching `M` avoiding that edge's endpoints together with a monomial of
//! the graph polynomial of `G - M` whose coefficient is nonzero and whose
//! exponents stay at most 3. Independent oracles re-derive everything the
//! certificate claims: coefficients by a second engine, colorability from
//! lists via the polynomial, and the on-line coloring game by exhaustive
//! search.

pub mod error;
pub mod extractor;
pub mod format;
pub mod generators;
pub mod oracles;
pub mod plane_graph;
pub mod polynomial;
