//! Homomorphisms between finite quandles.
//!
//! Two engines produce `Hom(S, T)`: a propagating backtracking search that
//! works for any pair, and mesh-based enumeration that builds each
//! homomorphism from group homomorphisms between components. The
//! 2-reductive fast path counts without enumerating.

mod brute;
mod functorial;
mod general;
mod quandle;
mod reductive;
mod triv;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::mesh::{DecomposeError, MeshError};
use crate::table::BudgetExceeded;

pub use brute::{enumerate_homs, enumerate_homs_with_budget, generating_sequence};
pub use functorial::{compose_functorial, Direction, FunctorialImage};
pub use general::{enumerate_mesh_homs, enumerate_mesh_homs_with_budget};
pub use quandle::{hom_quandle, hom_quandle_from_set, pointwise};
pub use reductive::{
    count_homs_two_reductive, enumerate_homs_two_reductive, hom_structure_two_reductive,
    ComponentMapCount, StructureReport, TwoReductiveCount,
};
pub use triv::{surjection_count, triv_homs, trivial_subquandles, TrivReport};

/// Default cap on partial assignments explored by a search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error("search budget of {budget} partial states exceeded")]
    SearchBudget { budget: u64 },
    #[error(transparent)]
    ProductBudget(#[from] BudgetExceeded),
    #[error("target is not medial, so Hom(S, T) carries no quandle structure: witness {witness:?}")]
    TargetNotMedial { witness: Vec<usize> },
    #[error("target is not 2-reductive: ({x}▷{y})▷{z} != {y}▷{z}")]
    TargetNotTwoReductive { x: usize, y: usize, z: usize },
    #[error("invalid mesh: {0}")]
    Mesh(#[from] MeshError),
    #[error("incompatible inputs: {0}")]
    Incompatible(String),
    #[error("internal consistency error: {0}")]
    Inconsistent(String),
}

impl From<DecomposeError> for HomError {
    fn from(e: DecomposeError) -> Self {
        match e {
            DecomposeError::NotTwoReductive { x, y, z } => HomError::TargetNotTwoReductive { x, y, z },
            DecomposeError::Inconsistent(msg) => HomError::Inconsistent(msg),
        }
    }
}

/// Which engine produced a [`HomSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HomEngine {
    Brute,
    TwoReductiveMesh,
    GeneralMesh,
}

impl HomEngine {
    pub fn name(&self) -> &'static str {
        match self {
            HomEngine::Brute => "brute",
            HomEngine::TwoReductiveMesh => "two_reductive_mesh",
            HomEngine::GeneralMesh => "general_mesh",
        }
    }
}

impl fmt::Display for HomEngine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HomEngine {
    type Err = HomSetParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "brute" => Ok(HomEngine::Brute),
            "two_reductive_mesh" => Ok(HomEngine::TwoReductiveMesh),
            "general_mesh" => Ok(HomEngine::GeneralMesh),
            other => Err(HomSetParseError::Engine(other.to_string())),
        }
    }
}

/// A map `S → T` stored as its image sequence `h(0), …, h(|S|-1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HomRecord {
    pub image: Vec<usize>,
}

impl HomRecord {
    pub fn new(image: Vec<usize>) -> Self {
        Self { image }
    }

    pub fn constant(source_order: usize, value: usize) -> Self {
        Self {
            image: vec![value; source_order],
        }
    }

    pub fn source_order(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    /// Sorted distinct image elements.
    pub fn image_set(&self) -> Vec<usize> {
        let mut set = self.image.clone();
        set.sort_unstable();
        set.dedup();
        set
    }
}

/// A sorted, duplicate-free set of homomorphisms with its provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomSet {
    source_order: usize,
    target_order: usize,
    engine: HomEngine,
    records: Vec<HomRecord>,
}

impl HomSet {
    pub fn new(
        source_order: usize,
        target_order: usize,
        engine: HomEngine,
        mut records: Vec<HomRecord>,
    ) -> Self {
        records.sort_unstable();
        records.dedup();
        Self {
            source_order,
            target_order,
            engine,
            records,
        }
    }

    pub fn source_order(&self) -> usize {
        self.source_order
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }

    pub fn engine(&self) -> HomEngine {
        self.engine
    }

    pub fn records(&self) -> &[HomRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn index_of(&self, image: &[usize]) -> Option<usize> {
        self.records
            .binary_search_by(|r| r.image.as_slice().cmp(image))
            .ok()
    }

    pub fn contains(&self, image: &[usize]) -> bool {
        self.index_of(image).is_some()
    }

    /// Indices of the constant maps, in target order.
    pub fn constants(&self) -> Vec<usize> {
        (0..self.target_order)
            .filter_map(|t| self.index_of(&vec![t; self.source_order]))
            .collect()
    }

    /// Same records, different engine tag.
    pub fn with_engine(mut self, engine: HomEngine) -> Self {
        self.engine = engine;
        self
    }
}

impl fmt::Display for HomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "homset {} {} {} {}",
            self.source_order,
            self.target_order,
            self.records.len(),
            self.engine
        )?;
        for r in &self.records {
            let line: Vec<String> = r.image.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomSetParseError {
    #[error("missing or malformed `homset` header")]
    Header,
    #[error("unknown engine {0:?}")]
    Engine(String),
    #[error("line {line}: {msg}")]
    Record { line: usize, msg: String },
    #[error("header announces {expected} records, found {found}")]
    Count { expected: usize, found: usize },
}

impl FromStr for HomSet {
    type Err = HomSetParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (_, header) = lines.next().ok_or(HomSetParseError::Header)?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [tag, n, m, count, engine] = fields[..] else {
            return Err(HomSetParseError::Header);
        };
        if tag != "homset" {
            return Err(HomSetParseError::Header);
        }
        let parse = |v: &str| v.parse::<usize>().map_err(|_| HomSetParseError::Header);
        let (n, m, count) = (parse(n)?, parse(m)?, parse(count)?);
        let engine: HomEngine = engine.parse()?;
        let mut records = Vec::with_capacity(count);
        for (line, text) in lines {
            let image = text
                .split_whitespace()
                .map(|v| match v.parse::<usize>() {
                    Ok(x) if x < m => Ok(x),
                    _ => Err(HomSetParseError::Record {
                        line,
                        msg: format!("bad target element {v:?}"),
                    }),
                })
                .collect::<Result<Vec<_>, _>>()?;
            if image.len() != n {
                return Err(HomSetParseError::Record {
                    line,
                    msg: format!("expected {n} entries, found {}", image.len()),
                });
            }
            records.push(HomRecord { image });
        }
        if records.len() != count {
            return Err(HomSetParseError::Count {
                expected: count,
                found: records.len(),
            });
        }
        Ok(HomSet::new(n, m, engine, records))
    }
}
