use super::{enumerate_homs, HomError, HomSet};
use crate::table::Quandle;

/// Homomorphisms with trivial image, next to the count predicted from the
/// trivial subquandles of the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivReport {
    pub homs: HomSet,
    pub predicted: u128,
    /// Each trivial subquandle `U` with the number of maps onto it.
    pub by_subquandle: Vec<(Vec<usize>, u128)>,
}

impl TrivReport {
    pub fn agrees(&self) -> bool {
        self.homs.len() as u128 == self.predicted
    }
}

/// Number of surjections from an `m`-set onto a `u`-set,
/// `Σ_j (-1)^(u-j) C(u,j) j^m`.
pub fn surjection_count(m: usize, u: usize) -> u128 {
    let mut total: i128 = 0;
    let mut binom: i128 = 1;
    for j in 0..=u {
        if j > 0 {
            binom = binom * (u - j + 1) as i128 / j as i128;
        }
        let term = binom * (j as i128).pow(m as u32);
        if (u - j).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    total as u128
}

/// Every nonempty subset on which `▷` is trivial, in lexicographic order.
/// Such subsets are automatically subquandles.
pub fn trivial_subquandles(t: &Quandle) -> Vec<Vec<usize>> {
    let n = t.order();
    let compatible = |x: usize, y: usize| t.op(x, y) == y && t.op(y, x) == x;
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn extend(
        start: usize,
        n: usize,
        compatible: &dyn Fn(usize, usize) -> bool,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        for x in start..n {
            if current.iter().all(|&y| compatible(x, y)) {
                current.push(x);
                out.push(current.clone());
                extend(x + 1, n, compatible, current, out);
                current.pop();
            }
        }
    }
    extend(0, n, &compatible, &mut current, &mut out);
    out
}

/// `Triv(S, T)` by filtering the full Hom set, with the surjection-count
/// prediction `Σ_U surj(c(S) → U)`.
pub fn triv_homs(s: &Quandle, t: &Quandle) -> Result<TrivReport, HomError> {
    let all = enumerate_homs(s, t)?;
    let records = all
        .records()
        .iter()
        .filter(|h| t.is_trivial_subset(&h.image_set()))
        .cloned()
        .collect();
    let homs = HomSet::new(s.order(), t.order(), all.engine(), records);
    let m = s.components().block_count();
    let by_subquandle: Vec<(Vec<usize>, u128)> = trivial_subquandles(t)
        .into_iter()
        .map(|u| {
            let count = surjection_count(m, u.len());
            (u, count)
        })
        .collect();
    let predicted = by_subquandle.iter().map(|(_, c)| c).sum();
    Ok(TrivReport {
        homs,
        predicted,
        by_subquandle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surjections_match_brute_force() {
        for m in 0..6usize {
            for u in 0..5usize {
                let mut count = 0;
                for code in 0..u.pow(m as u32) {
                    let mut c = code;
                    let mut hit = vec![false; u];
                    for _ in 0..m {
                        hit[c % u] = true;
                        c /= u;
                    }
                    if hit.iter().all(|&h| h) {
                        count += 1;
                    }
                }
                if u == 0 {
                    count = usize::from(m == 0);
                }
                assert_eq!(surjection_count(m, u), count as u128, "m={m} u={u}");
            }
        }
        assert_eq!(surjection_count(3, 2), 6);
    }

    #[test]
    fn trivial_subquandles_of_small_quandles() {
        assert_eq!(trivial_subquandles(&Quandle::dihedral(3)), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(trivial_subquandles(&Quandle::trivial(3)).len(), 7);
        let f4a = Quandle::from_rows(&[
            vec![0, 1, 3, 2],
            vec![0, 1, 3, 2],
            vec![1, 0, 2, 3],
            vec![1, 0, 2, 3],
        ])
        .unwrap();
        assert_eq!(
            trivial_subquandles(&f4a),
            vec![vec![0], vec![0, 1], vec![1], vec![2], vec![2, 3], vec![3]]
        );
    }

    #[test]
    fn constants_are_the_only_triv_homs_from_a_point() {
        let r = triv_homs(&Quandle::trivial(1), &Quandle::dihedral(5)).unwrap();
        assert_eq!(r.homs.len(), 5);
        assert!(r.agrees());
    }
}
