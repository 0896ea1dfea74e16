//! Exhaustive generation of small quandles up to isomorphism.

use std::collections::BTreeSet;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::cli::format::write_qnd;
use crate::property::{has_property, Property, UnknownProperty};
use crate::table::Quandle;

pub use crate::iso::canonical_form;

pub const MAX_ORDER: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("order {0} is outside the supported range 1..={MAX_ORDER}")]
    OrderOutOfRange(usize),
}

/// Order in which candidate rows are tried; the resulting catalog must not
/// depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchOrder {
    Forward,
    Reverse,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub quandle: Quandle,
    /// Component sizes, ascending.
    pub components: Vec<usize>,
    pub medial: bool,
    pub two_reductive: bool,
    pub latin: bool,
    pub connected: bool,
}

impl CatalogEntry {
    pub fn new(quandle: Quandle) -> Self {
        Self {
            components: quandle.components().size_profile(),
            medial: has_property(&quandle, Property::Medial),
            two_reductive: has_property(&quandle, Property::TwoReductive),
            latin: has_property(&quandle, Property::Latin),
            connected: has_property(&quandle, Property::Connected),
            quandle,
        }
    }

    pub fn has(&self, p: Property) -> bool {
        match p {
            Property::Medial => self.medial,
            Property::TwoReductive => self.two_reductive,
            Property::Latin => self.latin,
            Property::Connected => self.connected,
            Property::Trivial | Property::Involutory => has_property(&self.quandle, p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    order: usize,
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn quandles(&self) -> impl Iterator<Item = &Quandle> {
        self.entries.iter().map(|e| &e.quandle)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn filter(&self, p: Property) -> Catalog {
        Catalog {
            order: self.order,
            entries: self.entries.iter().filter(|e| e.has(p)).cloned().collect(),
        }
    }

    /// File name of the entry at `rank`.
    pub fn file_name(&self, rank: usize) -> String {
        format!("q{}_{}.qnd", self.order, rank)
    }

    /// One line per entry: rank, file, properties that hold, component sizes.
    pub fn index(&self) -> String {
        let mut out = format!("# catalog of order {}: rank file properties components\n", self.order);
        for (rank, e) in self.entries.iter().enumerate() {
            let props: Vec<&str> = Property::ALL
                .iter()
                .filter(|&&p| e.has(p))
                .map(|p| p.name())
                .collect();
            let sizes: Vec<String> = e.components.iter().map(|s| s.to_string()).collect();
            out.push_str(&format!(
                "{} {} {} {}\n",
                rank,
                self.file_name(rank),
                if props.is_empty() { "-".to_string() } else { props.join(",") },
                sizes.join(",")
            ));
        }
        out
    }

    /// Writes `q<order>_<rank>.qnd` per entry plus `index.txt`.
    pub fn export(&self, dir: &Path) -> io::Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let mut written = Vec::with_capacity(self.entries.len() + 1);
        for (rank, e) in self.entries.iter().enumerate() {
            let path = dir.join(self.file_name(rank));
            fs::write(&path, write_qnd(&e.quandle))?;
            written.push(path);
        }
        let index = dir.join("index.txt");
        fs::write(&index, self.index())?;
        written.push(index);
        Ok(written)
    }
}

pub fn catalog_filter(c: &Catalog, property: &str) -> Result<Catalog, UnknownProperty> {
    Ok(c.filter(property.parse()?))
}

/// Permutations of `0..n` fixing `x`, in lexicographic order.
fn permutations_fixing(n: usize, x: usize) -> Vec<Vec<usize>> {
    let others: Vec<usize> = (0..n).filter(|&y| y != x).collect();
    let mut out = Vec::new();
    let mut current = others.clone();
    loop {
        let mut p = current.clone();
        p.insert(x, x);
        out.push(p);
        // next lexicographic permutation
        let Some(i) = (1..current.len()).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..current.len()).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
}

struct Search {
    n: usize,
    candidates: Vec<Vec<Vec<usize>>>,
    rows: Vec<Option<Vec<usize>>>,
    found: BTreeSet<Vec<usize>>,
}

impl Search {
    /// Forces `L_{a▷b} = L_a L_b L_a^{-1}` for all placed rows until a
    /// fixpoint; records newly placed rows in `placed`. False on conflict.
    fn propagate(&mut self, placed: &mut Vec<usize>) -> bool {
        let n = self.n;
        loop {
            let mut changed = false;
            for a in 0..n {
                let Some(la) = self.rows[a].clone() else { continue };
                let mut la_inv = vec![0; n];
                for (x, &y) in la.iter().enumerate() {
                    la_inv[y] = x;
                }
                for b in 0..n {
                    let Some(lb) = &self.rows[b] else { continue };
                    let c = la[b];
                    let forced: Vec<usize> = (0..n).map(|x| la[lb[la_inv[x]]]).collect();
                    match &self.rows[c] {
                        Some(lc) if *lc != forced => return false,
                        Some(_) => {}
                        None => {
                            self.rows[c] = Some(forced);
                            placed.push(c);
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn run(&mut self) {
        let Some(x) = self.rows.iter().position(Option::is_none) else {
            let flat: Vec<usize> = self.rows.iter().flat_map(|r| r.clone().unwrap()).collect();
            let q = Quandle::from_flat_unchecked(self.n, flat);
            self.found.insert(canonical_form(&q).flat().to_vec());
            return;
        };
        for k in 0..self.candidates[x].len() {
            let mut placed = vec![x];
            self.rows[x] = Some(self.candidates[x][k].clone());
            if self.propagate(&mut placed) {
                self.run();
            }
            for p in placed {
                self.rows[p] = None;
            }
        }
    }
}

/// All quandles of order `n` up to isomorphism, sorted by canonical form.
pub fn enumerate_quandles(n: usize) -> Result<Catalog, EnumerateError> {
    enumerate_quandles_with_order(n, SearchOrder::Forward)
}

pub fn enumerate_quandles_with_order(n: usize, order: SearchOrder) -> Result<Catalog, EnumerateError> {
    if n == 0 || n > MAX_ORDER {
        return Err(EnumerateError::OrderOutOfRange(n));
    }
    let candidates = (0..n)
        .map(|x| {
            let mut perms = permutations_fixing(n, x);
            if order == SearchOrder::Reverse {
                perms.reverse();
            }
            perms
        })
        .collect();
    let mut search = Search {
        n,
        candidates,
        rows: vec![None; n],
        found: BTreeSet::new(),
    };
    search.run();
    let entries = search
        .found
        .into_iter()
        .map(|flat| CatalogEntry::new(Quandle::from_flat_unchecked(n, flat)))
        .collect();
    Ok(Catalog { order: n, entries })
}
