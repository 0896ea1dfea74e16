use super::{HomEngine, HomError, HomRecord, HomSet, DEFAULT_SEARCH_BUDGET};
use crate::table::Quandle;

const UNSET: usize = usize::MAX;

/// A generating sequence for `s`, chosen greedily: each next element is
/// the one whose addition makes the generated subquandle largest (ties to
/// the smaller element). Every element of `s` lies in the subquandle
/// generated by the sequence.
pub fn generating_sequence(s: &Quandle) -> Vec<usize> {
    let n = s.order();
    let mut seq = Vec::new();
    let mut covered = vec![false; n];
    while let Some(first) = covered.iter().position(|&c| !c) {
        let mut best = (first, 0);
        for x in first..n {
            if covered[x] {
                continue;
            }
            let mut seeds = seq.clone();
            seeds.push(x);
            let size = s.generated_subquandle(&seeds).len();
            if size > best.1 {
                best = (x, size);
            }
        }
        seq.push(best.0);
        for y in s.generated_subquandle(&seq) {
            covered[y] = true;
        }
    }
    seq
}

struct Search<'a> {
    s: &'a Quandle,
    t: &'a Quandle,
    seq: Vec<usize>,
    image: Vec<usize>,
    assigned: Vec<usize>,
    nodes: u64,
    budget: u64,
    out: Vec<HomRecord>,
}

impl Search<'_> {
    /// Closes the partial map under `h(a▷b) = h(a)▷h(b)` starting from
    /// the element at `assigned[from..]`; false on a conflict.
    fn propagate(&mut self, from: usize) -> bool {
        let mut next = from;
        while next < self.assigned.len() {
            let a = self.assigned[next];
            next += 1;
            let mut k = 0;
            while k < self.assigned.len() {
                let b = self.assigned[k];
                k += 1;
                for (p, q) in [(a, b), (b, a)] {
                    let z = self.s.op(p, q);
                    let value = self.t.op(self.image[p], self.image[q]);
                    if self.image[z] == UNSET {
                        self.image[z] = value;
                        self.assigned.push(z);
                    } else if self.image[z] != value {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, len: usize) {
        for x in self.assigned.drain(len..) {
            self.image[x] = UNSET;
        }
    }

    fn run(&mut self, depth: usize) -> Result<(), HomError> {
        if depth == self.seq.len() {
            debug_assert!(self.image.iter().all(|&v| v != UNSET));
            self.out.push(HomRecord::new(self.image.clone()));
            return Ok(());
        }
        let x = self.seq[depth];
        if self.image[x] != UNSET {
            return self.run(depth + 1);
        }
        for v in 0..self.t.order() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(HomError::SearchBudget {
                    budget: self.budget,
                });
            }
            let len = self.assigned.len();
            self.image[x] = v;
            self.assigned.push(x);
            if self.propagate(len) {
                self.run(depth + 1)?;
            }
            self.undo(len);
        }
        Ok(())
    }
}

/// All homomorphisms `S → T` by propagating backtracking search.
pub fn enumerate_homs(s: &Quandle, t: &Quandle) -> Result<HomSet, HomError> {
    enumerate_homs_with_budget(s, t, DEFAULT_SEARCH_BUDGET)
}

pub fn enumerate_homs_with_budget(s: &Quandle, t: &Quandle, budget: u64) -> Result<HomSet, HomError> {
    let mut search = Search {
        s,
        t,
        seq: generating_sequence(s),
        image: vec![UNSET; s.order()],
        assigned: Vec::with_capacity(s.order()),
        nodes: 0,
        budget,
        out: Vec::new(),
    };
    search.run(0)?;
    Ok(HomSet::new(s.order(), t.order(), HomEngine::Brute, search.out))
}
