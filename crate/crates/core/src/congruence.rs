//! Congruence closure, the standard congruences, and quotient quandles.

use thiserror::Error;

use crate::partition::{DisjointSet, Partition};
use crate::table::Quandle;
use crate::terms::{instantiate_identity_pairs, Identity};

/// Which congruence to generate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CongruenceKind {
    /// Same-component relation, the kernel of `c_Q`.
    Components,
    /// Generated by all instances of mediality (`m_Q`).
    Medial,
    /// Generated by all instances of 2-reductivity (`γ_Q`).
    TwoReductive,
    /// Generated by all instances of the given identities (`Cg(K)`).
    Identities(Vec<Identity>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CongruenceError {
    #[error("partition has {partition} elements but the quandle has {quandle}")]
    SizeMismatch { partition: usize, quandle: usize },
    #[error("not a congruence: {a}~{b} and {c}~{d} but {a}▷{c} and {b}▷{d} are not related")]
    NotCongruence {
        a: usize,
        b: usize,
        c: usize,
        d: usize,
    },
}

/// The least congruence containing `seeds`.
///
/// Fixpoint over the generating pairs `(x, rep(x))`: for every such pair and
/// every `c`, merge `x ▷ c` with `rep ▷ c` and `c ▷ x` with `c ▷ rep`. The
/// two one-sided merges give `a ▷ c ~ b ▷ d` by transitivity.
pub fn congruence_closure(q: &Quandle, seeds: &[(usize, usize)]) -> Partition {
    let n = q.order();
    let mut ds = DisjointSet::new(n);
    for &(a, b) in seeds {
        ds.union(a, b);
    }
    loop {
        let mut changed = false;
        for a in 0..n {
            let b = ds.find(a);
            if a == b {
                continue;
            }
            for c in 0..n {
                changed |= ds.union(q.op(a, c), q.op(b, c));
                changed |= ds.union(q.op(c, a), q.op(c, b));
            }
        }
        if !changed {
            return ds.into_partition();
        }
    }
}

pub fn standard_congruence(q: &Quandle, kind: &CongruenceKind) -> Partition {
    match kind {
        CongruenceKind::Components => q.components(),
        CongruenceKind::Medial => congruence_closure(
            q,
            &instantiate_identity_pairs(q, &[Identity::mediality()]),
        ),
        CongruenceKind::TwoReductive => congruence_closure(
            q,
            &instantiate_identity_pairs(q, &[Identity::two_reductivity()]),
        ),
        CongruenceKind::Identities(ids) => {
            congruence_closure(q, &instantiate_identity_pairs(q, ids))
        }
    }
}

/// Checks compatibility with `▷`; on failure returns a quadruple
/// `(a, b, c, d)` with `a~b`, `c~d` and `a▷c` unrelated to `b▷d`.
pub fn check_congruence(q: &Quandle, alpha: &Partition) -> Result<(), CongruenceError> {
    if alpha.len() != q.order() {
        return Err(CongruenceError::SizeMismatch {
            partition: alpha.len(),
            quandle: q.order(),
        });
    }
    for (a, b) in alpha.generating_pairs() {
        for c in 0..q.order() {
            if !alpha.related(q.op(a, c), q.op(b, c)) {
                return Err(CongruenceError::NotCongruence { a, b, c, d: c });
            }
            if !alpha.related(q.op(c, a), q.op(c, b)) {
                return Err(CongruenceError::NotCongruence {
                    a: c,
                    b: c,
                    c: a,
                    d: b,
                });
            }
        }
    }
    Ok(())
}

/// `Q/α` on classes ordered by representative, together with the projection.
pub fn quotient(q: &Quandle, alpha: &Partition) -> Result<(Quandle, Vec<usize>), CongruenceError> {
    check_congruence(q, alpha)?;
    let reps = alpha.representatives();
    let k = reps.len();
    let mut table = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            table.push(alpha.block_of(q.op(a, b)));
        }
    }
    let projection = alpha.block_ids().to_vec();
    Ok((Quandle::from_flat_unchecked(k, table), projection))
}
