//! Equivalence relations on `0..n` in union-find normal form.
//!
//! Both component decompositions and congruences are carried as a
//! [`Partition`]: every class is represented by its least element and the
//! classes are listed in ascending order of representative.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Clone, Debug)]
pub(crate) struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut node: usize) -> usize {
        let mut root = node;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[node] != node {
            let next = self.parent[node];
            self.parent[node] = root;
            node = next;
        }
        root
    }

    /// Returns `true` when two distinct classes were merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let mut a = self.find(a);
        let mut b = self.find(b);
        if a == b {
            return false;
        }
        if self.rank[a] < self.rank[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        if self.rank[a] == self.rank[b] {
            self.rank[a] = self.rank[a].saturating_add(1);
        }
        true
    }

    pub(crate) fn into_partition(mut self) -> Partition {
        let n = self.parent.len();
        let roots: Vec<usize> = (0..n).map(|x| self.find(x)).collect();
        Partition::from_labels(&roots)
    }
}

/// A partition of `0..n` with classes keyed by their minimum element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionParseError {
    #[error("element {0} appears more than once")]
    Duplicate(usize),
    #[error("elements do not cover 0..{0}")]
    NotCovering(usize),
    #[error("invalid element token {0:?}")]
    BadToken(String),
    #[error("empty class")]
    EmptyClass,
}

impl Partition {
    /// All singletons.
    pub fn discrete(n: usize) -> Self {
        Self {
            block_of: (0..n).collect(),
            blocks: (0..n).map(|x| vec![x]).collect(),
        }
    }

    /// One class containing everything.
    pub fn full(n: usize) -> Self {
        if n == 0 {
            return Self::discrete(0);
        }
        Self {
            block_of: vec![0; n],
            blocks: vec![(0..n).collect()],
        }
    }

    /// Builds the partition whose classes are the fibres of `labels`.
    pub fn from_labels<T: Eq + std::hash::Hash + Copy>(labels: &[T]) -> Self {
        let mut first_seen = std::collections::HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = vec![0; labels.len()];
        for (x, label) in labels.iter().enumerate() {
            let id = *first_seen.entry(*label).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[id].push(x);
            block_of[x] = id;
        }
        // First-seen order over ascending x is already ascending by minimum.
        Self { block_of, blocks }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self, PartitionParseError> {
        let mut labels = vec![usize::MAX; n];
        for (id, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(PartitionParseError::EmptyClass);
            }
            for &x in block {
                if x >= n {
                    return Err(PartitionParseError::NotCovering(n));
                }
                if labels[x] != usize::MAX {
                    return Err(PartitionParseError::Duplicate(x));
                }
                labels[x] = id;
            }
        }
        if labels.contains(&usize::MAX) {
            return Err(PartitionParseError::NotCovering(n));
        }
        Ok(Self::from_labels(&labels))
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, id: usize) -> &[usize] {
        &self.blocks[id]
    }

    /// Index of the class containing `x`.
    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn block_ids(&self) -> &[usize] {
        &self.block_of
    }

    /// Least element of class `id`.
    pub fn representative(&self, id: usize) -> usize {
        self.blocks[id][0]
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b[0]).collect()
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.block_of.len()
    }

    /// `true` when every class of `self` lies inside a class of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        self.len() == other.len()
            && self
                .blocks
                .iter()
                .all(|b| b.iter().all(|&x| other.related(x, b[0])))
    }

    /// Pairs `(x, rep(x))` for every non-representative `x`; these generate
    /// the relation.
    pub fn generating_pairs(&self) -> Vec<(usize, usize)> {
        self.blocks
            .iter()
            .flat_map(|b| b[1..].iter().map(move |&x| (x, b[0])))
            .collect()
    }

    /// Sorted block sizes.
    pub fn size_profile(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        sizes
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            for (k, x) in block.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = PartitionParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::discrete(0));
        }
        let mut blocks = Vec::new();
        for part in s.split('|') {
            let block = part
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| PartitionParseError::BadToken(tok.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            blocks.push(block);
        }
        let n = blocks.iter().map(Vec::len).sum();
        Partition::from_blocks(n, &blocks)
    }
}
