//! Normalized autocorrelation and sumset vectors of finite integer sets, and
//! the rational polytopes that approximate them.
//!
//! For `A ⊆ [1, N]` the vector `N⁻¹ (1_A * 1_{-A}(x_1), …, 1_A * 1_{-A}(x_d))`
//! lies within `O(2^d m / N)` of a polytope whose corners come from simple
//! cycles of the de Bruijn graph on binary strings of length `d`, and every
//! point of that polytope is approached by some set. The sum case over
//! `[-N, N]` works the same way on a doubled graph.
//!
//! ```
//! use convopoly::{candidate_corners, minimize, Caps, Kind};
//!
//! let cands = candidate_corners(Kind::Diff, 2, Caps::default()).unwrap();
//! assert_eq!(cands.cycles.len(), 6);
//! let hull = minimize(cands.corners).unwrap();
//! assert_eq!(hull.len(), 4);
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub mod convolution;
pub mod cycles;
pub mod debruijn;
pub mod decomposition;
pub mod error;
pub mod format;
pub mod hull;
pub mod lp;
pub mod oracle;
pub mod rational;
pub mod reconstruct;
pub mod walks;

pub use convolution::{conv_diff, conv_sum, cyclic_conv_diff, cyclic_conv_pair, CyclicSet, IntegerSet};
pub use cycles::{
    candidate_corners, corner_count_bound, corner_vector, corner_vector_double, enumerate_cycles, CandidateSet, Caps,
    CornerVector, DEFAULT_CYCLE_CAP,
};
pub use debruijn::{BitLabel, DeBruijnGraph, Digraph, DoubleDeBruijnGraph, DoubleVertex, EdgeId, ShiftGraph};
pub use decomposition::{peel_cycles, recompose, Cycle, CycleDecomposition};
pub use error::{Error, Result};
pub use hull::{hull_contains, hull_distance_linf, minimize, project, LinfDistance, Polytope};
pub use oracle::{enclosure_report, enumerate_spectrum, EnclosureReport, SpectrumCloud};
pub use rational::{format_rational, parse_rational, Rational};
pub use reconstruct::{link_cycles, multiplicities, realize, walk_to_set, walk_to_set_double, HullPoint, Realization};
pub use walks::{close_walk, edge_weights, encode_walk, encode_walk_double, Walk, WeightedDigraph};

/// Which convolution a vector records: differences `1_A * 1_{-A}` over
/// `[1, N]`, or sums `1_A * 1_A` over `[-N, N]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Diff,
    Sum,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Diff => "diff",
            Kind::Sum => "sum",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "diff" => Ok(Kind::Diff),
            "sum" => Ok(Kind::Sum),
            other => Err(Error::InvalidSet(format!("unknown kind {other:?}, expected diff or sum"))),
        }
    }
}

// Book chapters are compiled as doc-tests so their snippets cannot drift.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/convolution.md")]
    mod convolution {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/decomposition.md")]
    mod decomposition {}
    #[doc = include_str!("../../../book/src/corners.md")]
    mod corners {}
    #[doc = include_str!("../../../book/src/hull.md")]
    mod hull {}
    #[doc = include_str!("../../../book/src/reconstruct.md")]
    mod reconstruct {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
