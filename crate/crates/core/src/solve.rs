use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::instance::{Instance, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SolverTag {
    Brute,
    NeighbourhoodDiversity,
    TwinCover,
    CliqueWidth,
    Planar,
}

impl SolverTag {
    pub fn name(self) -> &'static str {
        match self {
            SolverTag::Brute => "brute",
            SolverTag::NeighbourhoodDiversity => "nd",
            SolverTag::TwinCover => "twincover",
            SolverTag::CliqueWidth => "cliquewidth",
            SolverTag::Planar => "planar",
        }
    }
}

impl fmt::Display for SolverTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A maximum harmless set together with bookkeeping counters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub max_size: usize,
    pub witness: VertexSet,
    pub solver: SolverTag,
    pub stats: BTreeMap<&'static str, u64>,
}

impl SolveResult {
    /// Packs a witness after re-checking it against `instance`; a failing
    /// witness means a solver bug and is reported as such.
    pub(crate) fn verified(
        instance: &Instance,
        witness: VertexSet,
        solver: SolverTag,
        stats: BTreeMap<&'static str, u64>,
    ) -> Result<Self> {
        if !instance.is_harmless(&witness)? {
            return Err(Error::Internal(format!(
                "{} produced a witness that is not harmless: {:?}",
                solver,
                witness.one_based()
            )));
        }
        Ok(SolveResult {
            max_size: witness.len(),
            witness,
            solver,
            stats,
        })
    }

    /// `SIZE`, `SET` (omitted when empty) and, with a target, `ANSWER`.
    pub fn render(&self, target: Option<usize>) -> String {
        let mut out = String::new();
        writeln!(out, "SIZE {}", self.max_size).unwrap();
        if !self.witness.is_empty() {
            let ids: Vec<String> = self
                .witness
                .one_based()
                .iter()
                .map(|v| v.to_string())
                .collect();
            writeln!(out, "SET {}", ids.join(" ")).unwrap();
        }
        if let Some(k) = target {
            writeln!(
                out,
                "ANSWER {}",
                if self.max_size >= k { "yes" } else { "no" }
            )
            .unwrap();
        }
        out
    }
}
