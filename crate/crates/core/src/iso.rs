//! Isomorphism search and canonical forms.
//!
//! Both rely on an isomorphism-invariant colouring of elements: start from
//! component size, the cycle type of `L_a` and the shape of the right
//! translation `R_a`, then refine by the colours of `a ▷ x` and `x ▷ a` until
//! the colouring is stable.

use std::collections::BTreeMap;

use crate::table::Quandle;

type Signature = (usize, Vec<(usize, usize, usize)>);

fn initial_invariant(q: &Quandle, comp_sizes: &[usize], a: usize) -> Vec<usize> {
    let n = q.order();
    let row = q.row(a);
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = row[x];
            len += 1;
        }
        cycles.push(len);
    }
    cycles.sort_unstable();
    let fixed_by_right = (0..n).filter(|&x| q.op(x, a) == a).count();
    let mut image = vec![false; n];
    (0..n).for_each(|x| image[q.op(x, a)] = true);
    let right_image = image.iter().filter(|&&b| b).count();
    let mut inv = vec![comp_sizes[a], fixed_by_right, right_image];
    inv.extend(cycles);
    inv
}

/// Jointly refined colours for several quandles. Equal colours in different
/// quandles mean equal invariants.
pub(crate) fn refine_colours(qs: &[&Quandle]) -> Vec<Vec<usize>> {
    let mut colours: Vec<Vec<usize>> = {
        let invariants: Vec<Vec<Vec<usize>>> = qs
            .iter()
            .map(|q| {
                let comps = q.components();
                let sizes: Vec<usize> = (0..q.order())
                    .map(|x| comps.block(comps.block_of(x)).len())
                    .collect();
                (0..q.order())
                    .map(|a| initial_invariant(q, &sizes, a))
                    .collect()
            })
            .collect();
        renumber(&invariants)
    };
    let mut classes = count_classes(&colours);
    loop {
        let signatures: Vec<Vec<Signature>> = qs
            .iter()
            .zip(&colours)
            .map(|(q, col)| {
                (0..q.order())
                    .map(|a| {
                        let mut around: Vec<(usize, usize, usize)> = (0..q.order())
                            .map(|x| (col[x], col[q.op(a, x)], col[q.op(x, a)]))
                            .collect();
                        around.sort_unstable();
                        (col[a], around)
                    })
                    .collect()
            })
            .collect();
        let next = renumber(&signatures);
        let next_classes = count_classes(&next);
        colours = next;
        if next_classes == classes {
            return colours;
        }
        classes = next_classes;
    }
}

fn renumber<T: Ord + Clone>(values: &[Vec<T>]) -> Vec<Vec<usize>> {
    let mut ids: BTreeMap<T, usize> = BTreeMap::new();
    for v in values.iter().flatten() {
        ids.entry(v.clone()).or_insert(0);
    }
    for (i, id) in ids.values_mut().enumerate() {
        *id = i;
    }
    values
        .iter()
        .map(|vs| vs.iter().map(|v| ids[v]).collect())
        .collect()
}

fn count_classes(colours: &[Vec<usize>]) -> usize {
    let mut all: Vec<usize> = colours.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

fn histogram(colours: &[usize]) -> Vec<usize> {
    let mut h = colours.to_vec();
    h.sort_unstable();
    h
}

/// Returns a bijection `f` (indexed by elements of `q`) with
/// `f(x ▷ y) = f(x) ▷ f(y)`, if `q` and `r` are isomorphic.
pub fn is_isomorphic(q: &Quandle, r: &Quandle) -> Option<Vec<usize>> {
    if q.order() != r.order() {
        return None;
    }
    if q == r {
        return Some((0..q.order()).collect());
    }
    if q.components().size_profile() != r.components().size_profile() {
        return None;
    }
    let colours = refine_colours(&[q, r]);
    if histogram(&colours[0]) != histogram(&colours[1]) {
        return None;
    }
    let mut search = IsoSearch::new(q, r, &colours[0], &colours[1]);
    if search.run() {
        Some(search.map.iter().map(|m| m.expect("complete map")).collect())
    } else {
        None
    }
}

struct IsoSearch<'a> {
    q: &'a Quandle,
    r: &'a Quandle,
    colour_q: &'a [usize],
    colour_r: &'a [usize],
    map: Vec<Option<usize>>,
    inv: Vec<Option<usize>>,
    assigned: Vec<usize>,
    order: Vec<usize>,
}

impl<'a> IsoSearch<'a> {
    fn new(q: &'a Quandle, r: &'a Quandle, colour_q: &'a [usize], colour_r: &'a [usize]) -> Self {
        let n = q.order();
        let mut class_size = vec![0usize; colour_q.iter().max().map_or(0, |m| m + 1)];
        for &c in colour_q {
            class_size[c] += 1;
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| (class_size[colour_q[x]], x));
        Self {
            q,
            r,
            colour_q,
            colour_r,
            map: vec![None; n],
            inv: vec![None; n],
            assigned: Vec::with_capacity(n),
            order,
        }
    }

    fn run(&mut self) -> bool {
        let Some(&x) = self.order.iter().find(|&&x| self.map[x].is_none()) else {
            return true;
        };
        for y in 0..self.r.order() {
            if self.inv[y].is_some() || self.colour_r[y] != self.colour_q[x] {
                continue;
            }
            let mark = self.assigned.len();
            if self.assign_and_propagate(x, y) && self.run() {
                return true;
            }
            self.undo(mark);
        }
        false
    }

    fn undo(&mut self, mark: usize) {
        while self.assigned.len() > mark {
            let x = self.assigned.pop().unwrap();
            let y = self.map[x].take().unwrap();
            self.inv[y] = None;
        }
    }

    fn try_set(&mut self, x: usize, y: usize, queue: &mut Vec<usize>) -> bool {
        match (self.map[x], self.inv[y]) {
            (Some(v), _) => v == y,
            (None, Some(_)) => false,
            (None, None) => {
                if self.colour_q[x] != self.colour_r[y] {
                    return false;
                }
                self.map[x] = Some(y);
                self.inv[y] = Some(x);
                self.assigned.push(x);
                queue.push(x);
                true
            }
        }
    }

    fn assign_and_propagate(&mut self, x: usize, y: usize) -> bool {
        let mut queue = Vec::new();
        if !self.try_set(x, y, &mut queue) {
            return false;
        }
        while let Some(a) = queue.pop() {
            let fa = self.map[a].unwrap();
            let mut i = 0;
            while i < self.assigned.len() {
                let c = self.assigned[i];
                let fc = self.map[c].unwrap();
                let forced = [
                    (self.q.op(a, c), self.r.op(fa, fc)),
                    (self.q.op(c, a), self.r.op(fc, fa)),
                    (self.q.left_div(a, c), self.r.left_div(fa, fc)),
                    (self.q.left_div(c, a), self.r.left_div(fc, fa)),
                ];
                for (u, v) in forced {
                    if !self.try_set(u, v, &mut queue) {
                        return false;
                    }
                }
                i += 1;
            }
        }
        true
    }
}

/// The lexicographically least relabeled table among relabelings that list
/// colour classes in ascending colour order.
///
/// The colouring is an isomorphism invariant, so isomorphic inputs produce
/// identical output. The search is exhaustive within colour classes and is
/// intended for small orders.
pub fn canonical_form(q: &Quandle) -> Quandle {
    let n = q.order();
    let colours = refine_colours(&[q]).pop().unwrap();
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (x, &c) in colours.iter().enumerate() {
        classes.entry(c).or_default().push(x);
    }
    // positions are filled in class order; slot_class[p] = class members
    let slots: Vec<&Vec<usize>> = classes
        .values()
        .flat_map(|members| std::iter::repeat_n(members, members.len()))
        .collect();
    let mut best: Option<Vec<usize>> = None;
    let mut new_of_old = vec![usize::MAX; n];
    let mut old_of_new = vec![usize::MAX; n];
    canonical_dfs(
        q,
        &slots,
        0,
        &mut new_of_old,
        &mut old_of_new,
        &mut best,
    );
    Quandle::from_flat_unchecked(n, best.expect("at least one relabeling"))
}

fn canonical_dfs(
    q: &Quandle,
    slots: &[&Vec<usize>],
    pos: usize,
    new_of_old: &mut [usize],
    old_of_new: &mut [usize],
    best: &mut Option<Vec<usize>>,
) {
    let n = q.order();
    if pos == n {
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(new_of_old[q.op(old_of_new[i], old_of_new[j])]);
            }
        }
        if best.as_ref().is_none_or(|b| table < *b) {
            *best = Some(table);
        }
        return;
    }
    for &x in slots[pos] {
        if new_of_old[x] != usize::MAX {
            continue;
        }
        new_of_old[x] = pos;
        old_of_new[pos] = x;
        canonical_dfs(q, slots, pos + 1, new_of_old, old_of_new, best);
        new_of_old[x] = usize::MAX;
        old_of_new[pos] = usize::MAX;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q33() -> Quandle {
        Quandle::from_rows(&[vec![0, 1, 2], vec![0, 1, 2], vec![1, 0, 2]]).unwrap()
    }

    #[test]
    fn r3_and_q33_are_not_isomorphic() {
        assert!(is_isomorphic(&Quandle::dihedral(3), &q33()).is_none());
    }

    #[test]
    fn identity_is_accepted() {
        for q in [Quandle::dihedral(3), q33(), Quandle::trivial(4)] {
            let f = is_isomorphic(&q, &q).unwrap();
            assert!(q.is_homomorphism(&q, &f));
        }
    }

    #[test]
    fn relabeled_r3_is_found() {
        let r3 = Quandle::dihedral(3);
        let cycled = r3.relabel(&[1, 2, 0]);
        let f = is_isomorphic(&r3, &cycled).unwrap();
        assert!(r3.is_homomorphism(&cycled, &f));
    }

    #[test]
    fn relabeled_q33_is_found() {
        let q = q33();
        let p = q.relabel(&[2, 0, 1]);
        assert_ne!(q, p);
        let f = is_isomorphic(&q, &p).unwrap();
        assert!(q.is_homomorphism(&p, &f));
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(canonical_form(&Quandle::trivial(3)), Quandle::trivial(3));
        let r3 = Quandle::dihedral(3);
        for perm in [[0, 2, 1], [1, 0, 2], [2, 0, 1]] {
            assert_eq!(canonical_form(&r3.relabel(&perm)), canonical_form(&r3));
        }
        assert_ne!(canonical_form(&q33()), canonical_form(&r3));
        let c = canonical_form(&q33());
        assert_eq!(canonical_form(&c), c);
    }
}
