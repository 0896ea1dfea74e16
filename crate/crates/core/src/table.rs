//! Finite quandles as left-translation Cayley tables.
//!
//! Row `x`, column `y` of the table holds `x ▷ y`, so row `x` is the left
//! translation `L_x`.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::partition::{DisjointSet, Partition};

/// Default cap on the number of elements of a constructed product.
pub const DEFAULT_PRODUCT_BUDGET: usize = 10_000;

/// Structural problems with a raw table, as opposed to axiom failures.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("table is empty")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry at row {row}, column {col} is {value}, outside 0..{n}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
        n: usize,
    },
}

/// The first quandle axiom violated by a table, with a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomFailure {
    /// `x ▷ x != x`.
    Idempotence { x: usize },
    /// Row `x` is not a permutation.
    LeftDivisibility { x: usize },
    /// `x ▷ (y ▷ z) != (x ▷ y) ▷ (x ▷ z)`.
    SelfDistributivity { x: usize, y: usize, z: usize },
}

impl AxiomFailure {
    pub fn axiom_name(&self) -> &'static str {
        match self {
            AxiomFailure::Idempotence { .. } => "idempotence",
            AxiomFailure::LeftDivisibility { .. } => "left_divisibility",
            AxiomFailure::SelfDistributivity { .. } => "self_distributivity",
        }
    }

    pub fn witness(&self) -> Vec<usize> {
        match *self {
            AxiomFailure::Idempotence { x } | AxiomFailure::LeftDivisibility { x } => vec![x],
            AxiomFailure::SelfDistributivity { x, y, z } => vec![x, y, z],
        }
    }
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let witness: Vec<String> = self.witness().iter().map(|x| x.to_string()).collect();
        write!(f, "{} fails at ({})", self.axiom_name(), witness.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationReport {
    Ok,
    Failed(AxiomFailure),
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        matches!(self, ValidationReport::Ok)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuandleError {
    #[error("malformed table: {0}")]
    Malformed(#[from] TableError),
    #[error("not a quandle: {0}")]
    Axiom(AxiomFailure),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("product would have {required} elements, budget is {budget}")]
pub struct BudgetExceeded {
    pub required: u128,
    pub budget: u128,
}

/// Checks the three quandle axioms on a raw table.
///
/// Axioms are checked in the order idempotence, left divisibility,
/// self-distributivity, and the reported witness is the lexicographically
/// least failing tuple for the first failing axiom.
pub fn verify_quandle(raw: &[Vec<usize>]) -> Result<ValidationReport, TableError> {
    let n = raw.len();
    if n == 0 {
        return Err(TableError::Empty);
    }
    for (row, entries) in raw.iter().enumerate() {
        if entries.len() != n {
            return Err(TableError::NotSquare {
                row,
                len: entries.len(),
                expected: n,
            });
        }
        if let Some((col, &value)) = entries.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(TableError::OutOfRange { row, col, value, n });
        }
    }
    Ok(match check_axioms(n, |x, y| raw[x][y]) {
        None => ValidationReport::Ok,
        Some(failure) => ValidationReport::Failed(failure),
    })
}

fn check_axioms(n: usize, op: impl Fn(usize, usize) -> usize) -> Option<AxiomFailure> {
    if let Some(x) = (0..n).find(|&x| op(x, x) != x) {
        return Some(AxiomFailure::Idempotence { x });
    }
    for x in 0..n {
        let mut seen = vec![false; n];
        for y in 0..n {
            let v = op(x, y);
            if seen[v] {
                return Some(AxiomFailure::LeftDivisibility { x });
            }
            seen[v] = true;
        }
    }
    for x in 0..n {
        for y in 0..n {
            let xy = op(x, y);
            for z in 0..n {
                if op(x, op(y, z)) != op(xy, op(x, z)) {
                    return Some(AxiomFailure::SelfDistributivity { x, y, z });
                }
            }
        }
    }
    None
}

/// A finite quandle. Values of this type always satisfy the quandle axioms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quandle {
    n: usize,
    table: Vec<usize>,
    // inverse[a * n + c] is the unique b with a ▷ b = c
    inverse: Vec<usize>,
}

impl fmt::Debug for Quandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Quandle")
            .field("n", &self.n)
            .field("rows", &self.rows())
            .finish()
    }
}

impl Quandle {
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, QuandleError> {
        match verify_quandle(rows)? {
            ValidationReport::Ok => Ok(Self::from_flat_unchecked(
                rows.len(),
                rows.iter().flatten().copied().collect(),
            )),
            ValidationReport::Failed(f) => Err(QuandleError::Axiom(f)),
        }
    }

    /// Builds a quandle from an operation, checking the axioms.
    pub fn from_fn(n: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self, QuandleError> {
        let rows: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| op(x, y)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub(crate) fn from_flat_unchecked(n: usize, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), n * n);
        let mut inverse = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                inverse[a * n + table[a * n + b]] = b;
            }
        }
        Self { n, table, inverse }
    }

    /// The trivial quandle `nI`, where `x ▷ y = y`.
    pub fn trivial(n: usize) -> Self {
        assert!(n > 0, "quandles are nonempty");
        Self::from_flat_unchecked(n, (0..n).flat_map(|_| 0..n).collect())
    }

    /// The dihedral quandle on `Z_n`: `x ▷ y = 2x - y`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n > 0, "quandles are nonempty");
        Self::from_flat_unchecked(
            n,
            (0..n)
                .flat_map(|x| (0..n).map(move |y| (2 * x + n - y) % n))
                .collect(),
        )
    }

    /// The affine quandle on `Z_n` with `x ▷ y = t·x + (1 - t)·y`.
    pub fn affine_cyclic(n: usize, t: usize) -> Result<Self, QuandleError> {
        let t = t % n.max(1);
        let one_minus_t = (1 + n - t) % n.max(1);
        Self::from_fn(n, |x, y| (t * x + one_minus_t * y) % n)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }

    /// The unique `y` with `x ▷ y = z`.
    #[inline]
    pub fn left_div(&self, x: usize, z: usize) -> usize {
        self.inverse[x * self.n + z]
    }

    /// Row `x`, i.e. the left translation `L_x`.
    pub fn row(&self, x: usize) -> &[usize] {
        &self.table[x * self.n..(x + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|x| self.row(x).to_vec()).collect()
    }

    pub fn flat(&self) -> &[usize] {
        &self.table
    }

    /// Orbits of the inner group, computed as the closure of `y ~ x ▷ y`.
    pub fn components(&self) -> Partition {
        let mut ds = DisjointSet::new(self.n);
        for x in 0..self.n {
            for y in 0..self.n {
                ds.union(y, self.op(x, y));
            }
        }
        ds.into_partition()
    }

    /// `true` when `map` is a homomorphism from `self` into `target`.
    pub fn is_homomorphism(&self, target: &Quandle, map: &[usize]) -> bool {
        map.len() == self.n
            && map.iter().all(|&v| v < target.n)
            && (0..self.n).all(|x| {
                (0..self.n).all(|y| map[self.op(x, y)] == target.op(map[x], map[y]))
            })
    }

    /// Applies a relabeling `perm` (old element -> new element).
    pub fn relabel(&self, perm: &[usize]) -> Quandle {
        let n = self.n;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                table[perm[x] * n + perm[y]] = perm[self.op(x, y)];
            }
        }
        Quandle::from_flat_unchecked(n, table)
    }

    /// Restriction to a subset closed under `▷`, relabeled `0..k` in
    /// ascending order of the given elements.
    pub fn subquandle(&self, elements: &[usize]) -> Option<Quandle> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &x) in elements.iter().enumerate() {
            index[x] = i;
        }
        let k = elements.len();
        let mut table = Vec::with_capacity(k * k);
        for &x in elements {
            for &y in elements {
                let v = index[self.op(x, y)];
                if v == usize::MAX {
                    return None;
                }
                table.push(v);
            }
        }
        Some(Quandle::from_flat_unchecked(k, table))
    }

    /// The least subset containing `seeds` and closed under `▷`.
    pub fn generated_subquandle(&self, seeds: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.n];
        let mut members = Vec::new();
        let mut queue = VecDeque::new();
        for &s in seeds {
            if !inside[s] {
                inside[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(e) = queue.pop_front() {
            members.push(e);
            for i in 0..members.len() {
                let m = members[i];
                for v in [self.op(m, e), self.op(e, m)] {
                    if !inside[v] {
                        inside[v] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// `self × other` with element `(a, b)` encoded as `a + |self|·b`.
    pub fn product(&self, other: &Quandle) -> Result<Quandle, BudgetExceeded> {
        self.product_with_budget(other, DEFAULT_PRODUCT_BUDGET)
    }

    pub fn product_with_budget(
        &self,
        other: &Quandle,
        budget: usize,
    ) -> Result<Quandle, BudgetExceeded> {
        let size = self.n as u128 * other.n as u128;
        if size > budget as u128 {
            return Err(BudgetExceeded {
                required: size,
                budget: budget as u128,
            });
        }
        let (n, m) = (self.n, other.n);
        let total = n * m;
        let mut table = Vec::with_capacity(total * total);
        for x in 0..total {
            let (x0, x1) = (x % n, x / n);
            for y in 0..total {
                let (y0, y1) = (y % n, y / n);
                table.push(self.op(x0, y0) + n * other.op(x1, y1));
            }
        }
        Ok(Quandle::from_flat_unchecked(total, table))
    }

    /// `Q^k` with little-endian base-`n` element encoding.
    pub fn direct_power(&self, k: u32) -> Result<Quandle, BudgetExceeded> {
        self.direct_power_with_budget(k, DEFAULT_PRODUCT_BUDGET)
    }

    pub fn direct_power_with_budget(&self, k: u32, budget: usize) -> Result<Quandle, BudgetExceeded> {
        let size = (self.n as u128).checked_pow(k).unwrap_or(u128::MAX);
        if size > budget as u128 {
            return Err(BudgetExceeded {
                required: size,
                budget: budget as u128,
            });
        }
        let total = size as usize;
        let n = self.n;
        let mut table = Vec::with_capacity(total * total);
        for x in 0..total {
            for y in 0..total {
                let (mut xr, mut yr, mut place, mut v) = (x, y, 1, 0);
                for _ in 0..k {
                    v += place * self.op(xr % n, yr % n);
                    xr /= n;
                    yr /= n;
                    place *= n;
                }
                table.push(v);
            }
        }
        Ok(Quandle::from_flat_unchecked(total, table))
    }

    /// Decodes a power element into its coordinates.
    pub fn power_coordinates(&self, k: u32, mut element: usize) -> Vec<usize> {
        (0..k)
            .map(|_| {
                let c = element % self.n;
                element /= self.n;
                c
            })
            .collect()
    }

    /// Encodes coordinates into a power element.
    pub fn power_index(&self, coords: &[usize]) -> usize {
        coords.iter().rev().fold(0, |acc, &c| acc * self.n + c)
    }

    pub fn is_trivial_subset(&self, elements: &[usize]) -> bool {
        elements
            .iter()
            .all(|&a| elements.iter().all(|&b| self.op(a, b) == b))
    }
}

impl fmt::Display for Quandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in 0..self.n {
            let row: Vec<String> = self.row(x).iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
