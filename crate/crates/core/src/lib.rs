//! Transverse-read channel coding toolkit.
//!
//! A nanopore-style sequencer reads a q-ary word of length `n` through a
//! window of width `ℓ`, reporting for every window position the *multiset*
//! of the ℓ symbols inside it (with zero padding outside the word). The
//! resulting length-(n+ℓ−1) vector of multisets is the ℓ-read vector of the
//! word. This crate implements the combinatorics of that channel:
//!
//! - [`seqcore`] — words, read vectors and all per-word functionals
//!   (VT syndromes, inversion numbers, indicator/odd/even transforms,
//!   alternating-run statistics, multiset ranking).
//! - [`characterize`] — structural decomposition of word pairs by the
//!   Hamming distance between their 2-read vectors, and the ℓ ≥ 3
//!   distance-2 structure.
//! - [`codebook`] — membership predicates, enumerators and residue
//!   optimizers for the syndrome-based code families, plus exhaustive
//!   pairwise verification of each family's guarantee.
//! - [`bounds`] — the clique-cover lower-bound machinery, the Hamming
//!   bound, Levenshtein's intersection-size formula and the reconstruction
//!   upper bound for read vectors.
//! - [`oracle`] — independent brute force: substitution/insertion/deletion
//!   balls, ball intersections, exact independence numbers and exhaustive
//!   sweeps over small parameter grids.
//!
//! All values are immutable after construction and the operations are pure,
//! so everything here is safe to share across threads; the heavy sweeps
//! shard their pair spaces with rayon and reduce to deterministic results.

pub mod bounds;
pub mod budget;
pub mod characterize;
pub mod codebook;
pub mod numutil;
pub mod oracle;
pub mod report;
pub mod seqcore;

pub use budget::Budget;
pub use report::VerificationReport;
pub use seqcore::{Multiset, ReadVector, Symbol, Word};
