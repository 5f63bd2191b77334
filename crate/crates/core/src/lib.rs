//! Critical independent sets, crowns and local maximum independent sets of
//! small graphs, with the matching algorithms beneath them, crown-reduction
//! kernelization for Vertex Cover, greedoid and augmentoid checkers, and a
//! harness that verifies the structural theorems relating these families.

pub mod critical;
pub mod crowns;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod independence;
pub mod io;
pub mod lmis;
pub mod matching;
pub mod oracle;
pub mod report;
pub mod scan;
pub mod set_systems;
pub mod theorems;
pub mod vertex_set;

use serde::{Deserialize, Serialize};

pub use error::{Error, Result};
pub use graph::{Graph, GraphKind};
pub use vertex_set::VertexSet;

/// Size caps for the exponential routines. Exceeding one is a
/// [`Error::SizeLimit`], never a silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest graph for exact `α` (branch and bound).
    pub exact: usize,
    /// Largest graph for listing `Ω`, `Ψ` and maximal independent sets.
    pub enumeration: usize,
    /// Largest graph for whole-family work (`Ind`, `CritIndep`, `Crown`,
    /// axiom checks).
    pub family: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            exact: 40,
            enumeration: 25,
            family: 16,
        }
    }
}

impl Limits {
    pub fn validate(&self) -> Result<()> {
        if self.exact == 0 || self.enumeration == 0 || self.family == 0 {
            return Err(Error::InvalidParameter("limits must be at least 1".into()));
        }
        Ok(())
    }
}
