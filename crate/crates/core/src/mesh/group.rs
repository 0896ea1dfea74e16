//! Finite abelian groups with explicit addition tables.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid group label {0:?}")]
    BadLabel(String),
    #[error("addition table is not an abelian group: {0}")]
    NotAbelianGroup(String),
    #[error("map is not a group homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("generator and target lists differ in length ({gens} vs {targets})")]
    LengthMismatch { gens: usize, targets: usize },
    #[error("generators do not generate the group")]
    DoNotGenerate,
    #[error("element {element} outside group of order {order}")]
    OutOfRange { element: usize, order: usize },
}

/// A finite abelian group on `0..m` with `0` as identity.
///
/// Groups built from cyclic factors `[d1, d2, ...]` use the little-endian
/// mixed-radix encoding `a1 + d1·(a2 + d2·(...))`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    order: usize,
    add: Vec<usize>,
    neg: Vec<usize>,
    factors: Option<Vec<usize>>,
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.label() {
            Some(l) => write!(f, "AbelianGroup({l})"),
            None => write!(f, "AbelianGroup(order {})", self.order),
        }
    }
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::from_factors(&[])
    }

    pub fn cyclic(d: usize) -> Self {
        Self::from_factors(&[d])
    }

    /// Direct product of cyclic groups. Factors equal to 1 are dropped.
    pub fn from_factors(factors: &[usize]) -> Self {
        assert!(factors.iter().all(|&d| d > 0), "cyclic factors are positive");
        let factors: Vec<usize> = factors.iter().copied().filter(|&d| d > 1).collect();
        let order: usize = factors.iter().product();
        let decode = |mut x: usize| -> Vec<usize> {
            factors
                .iter()
                .map(|&d| {
                    let c = x % d;
                    x /= d;
                    c
                })
                .collect()
        };
        let encode = |coords: &[usize]| -> usize {
            coords
                .iter()
                .zip(&factors)
                .rev()
                .fold(0, |acc, (&c, &d)| acc * d + c)
        };
        let coords: Vec<Vec<usize>> = (0..order).map(decode).collect();
        let mut add = Vec::with_capacity(order * order);
        for a in &coords {
            for b in &coords {
                let sum: Vec<usize> = a
                    .iter()
                    .zip(b)
                    .zip(&factors)
                    .map(|((x, y), d)| (x + y) % d)
                    .collect();
                add.push(encode(&sum));
            }
        }
        let neg = coords
            .iter()
            .map(|a| {
                let n: Vec<usize> = a.iter().zip(&factors).map(|(x, d)| (d - x) % d).collect();
                encode(&n)
            })
            .collect();
        Self {
            order,
            add,
            neg,
            factors: Some(factors),
        }
    }

    /// Validates an explicit addition table (`table[a][b] = a + b`).
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self, GroupError> {
        let m = table.len();
        if m == 0 {
            return Err(GroupError::NotAbelianGroup("empty".into()));
        }
        if table.iter().any(|r| r.len() != m || r.iter().any(|&v| v >= m)) {
            return Err(GroupError::NotAbelianGroup("table is not square over 0..m".into()));
        }
        let add: Vec<usize> = table.iter().flatten().copied().collect();
        let at = |a: usize, b: usize| add[a * m + b];
        for a in 0..m {
            if at(0, a) != a {
                return Err(GroupError::NotAbelianGroup(format!("0 + {a} != {a}")));
            }
            for b in 0..m {
                if at(a, b) != at(b, a) {
                    return Err(GroupError::NotAbelianGroup(format!("{a} + {b} != {b} + {a}")));
                }
                for c in 0..m {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAbelianGroup(format!(
                            "({a} + {b}) + {c} != {a} + ({b} + {c})"
                        )));
                    }
                }
            }
        }
        let mut neg = vec![usize::MAX; m];
        for a in 0..m {
            match (0..m).find(|&b| at(a, b) == 0) {
                Some(b) => neg[a] = b,
                None => return Err(GroupError::NotAbelianGroup(format!("{a} has no inverse"))),
            }
        }
        Ok(Self {
            order: m,
            add,
            neg,
            factors: None,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg[b])
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| self.add[a * self.order..(a + 1) * self.order].to_vec())
            .collect()
    }

    /// Cyclic factors, present for groups built from a label.
    pub fn factors(&self) -> Option<&[usize]> {
        self.factors.as_deref()
    }

    /// `Z1`, `Zd`, or `Zd1xZd2x...`.
    pub fn label(&self) -> Option<String> {
        self.factors.as_ref().map(|f| label_of(f))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.add(x, a);
            k += 1;
        }
        k
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.add(x, g);
                if !inside[y] {
                    inside[y] = true;
                    queue.push_back(y);
                }
            }
        }
        inside
    }

    pub fn generates(&self, gens: &[usize]) -> bool {
        self.generated_subgroup(gens).iter().all(|&b| b)
    }

    /// A small generating set, chosen greedily by subgroup growth.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = self.generated_subgroup(&gens);
        while inside.iter().any(|&b| !b) {
            let best = (0..self.order)
                .filter(|&x| !inside[x])
                .max_by_key(|&x| {
                    let mut g = gens.clone();
                    g.push(x);
                    (self.generated_subgroup(&g).iter().filter(|&&b| b).count(), std::cmp::Reverse(x))
                })
                .expect("some element outside");
            gens.push(best);
            inside = self.generated_subgroup(&gens);
        }
        gens
    }

    /// Invariant factors `d1 | d2 | ...` and an isomorphism onto the
    /// mixed-radix group with those factors: `iso[x]` is the encoded index
    /// of element `x`.
    pub fn identify(&self) -> (Vec<usize>, Vec<usize>) {
        for candidate in invariant_factor_chains(self.order) {
            if let Some(iso) = self.find_basis(&candidate) {
                return (candidate, iso);
            }
        }
        unreachable!("every finite abelian group has invariant factors")
    }

    fn find_basis(&self, factors: &[usize]) -> Option<Vec<usize>> {
        // span[idx] = element whose mixed-radix coordinates are idx
        fn extend(g: &AbelianGroup, factors: &[usize], span: Vec<usize>) -> Option<Vec<usize>> {
            let i = factors_used(span.len(), factors);
            if i == factors.len() {
                return Some(span);
            }
            let d = factors[i];
            for x in 0..g.order {
                if g.element_order(x) != d {
                    continue;
                }
                let mut next = Vec::with_capacity(span.len() * d);
                let mut multiple = 0;
                for _ in 0..d {
                    next.extend(span.iter().map(|&s| g.add(s, multiple)));
                    multiple = g.add(multiple, x);
                }
                let mut seen = vec![false; g.order];
                if next.iter().all(|&e| !std::mem::replace(&mut seen[e], true)) {
                    if let Some(done) = extend(g, factors, next) {
                        return Some(done);
                    }
                }
            }
            None
        }
        fn factors_used(len: usize, factors: &[usize]) -> usize {
            let mut prod = 1;
            let mut i = 0;
            while prod < len {
                prod *= factors[i];
                i += 1;
            }
            i
        }
        let span = extend(self, factors, vec![0])?;
        let mut iso = vec![0; self.order];
        for (idx, &x) in span.iter().enumerate() {
            iso[x] = idx;
        }
        Some(iso)
    }
}

fn label_of(factors: &[usize]) -> String {
    if factors.is_empty() {
        return "Z1".to_string();
    }
    factors
        .iter()
        .map(|d| format!("Z{d}"))
        .collect::<Vec<_>>()
        .join("x")
}

/// Chains `d1 | d2 | ... | dk` of integers > 1 with product `m`.
fn invariant_factor_chains(m: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, last: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 1 {
            out.push(prefix.clone());
            return;
        }
        for d in 2..=rest {
            if rest.is_multiple_of(d) && d % last == 0 {
                prefix.push(d);
                go(rest / d, d, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(m, 1, &mut Vec::new(), &mut out);
    out
}

impl FromStr for AbelianGroup {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GroupError::BadLabel(s.to_string());
        let factors = s
            .split('x')
            .map(|part| {
                part.strip_prefix('Z')
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&d| d > 0)
                    .ok_or_else(bad)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AbelianGroup::from_factors(&factors))
    }
}

/// A group homomorphism given by its image of every source element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupHom {
    image: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: &AbelianGroup, target: &AbelianGroup, image: Vec<usize>) -> Result<Self, GroupError> {
        if image.len() != source.order() {
            return Err(GroupError::NotHomomorphism(format!(
                "{} images for a group of order {}",
                image.len(),
                source.order()
            )));
        }
        if let Some(&e) = image.iter().find(|&&e| e >= target.order()) {
            return Err(GroupError::OutOfRange {
                element: e,
                order: target.order(),
            });
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if image[source.add(a, b)] != target.add(image[a], image[b]) {
                    return Err(GroupError::NotHomomorphism(format!(
                        "image({a} + {b}) != image({a}) + image({b})"
                    )));
                }
            }
        }
        Ok(Self { image })
    }

    pub fn zero(source: &AbelianGroup) -> Self {
        Self {
            image: vec![0; source.order()],
        }
    }

    pub fn identity(group: &AbelianGroup) -> Self {
        Self {
            image: (0..group.order()).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.image[a]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_zero(&self) -> bool {
        self.image.iter().all(|&e| e == 0)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &GroupHom) -> GroupHom {
        GroupHom {
            image: first.image.iter().map(|&x| self.image[x]).collect(),
        }
    }
}

/// Decides whether `gens[s] ↦ targets[s]` extends to a homomorphism
/// `G → H`, returning the full map when it does.
///
/// Breadth-first propagation from `k(0) = 0` along `x ↦ x + gens[s]`; any
/// element reached with two different values is a conflict.
pub fn group_hom_extends(
    g: &AbelianGroup,
    h: &AbelianGroup,
    gens: &[usize],
    targets: &[usize],
) -> Result<Option<GroupHom>, GroupError> {
    if gens.len() != targets.len() {
        return Err(GroupError::LengthMismatch {
            gens: gens.len(),
            targets: targets.len(),
        });
    }
    if let Some(&e) = gens.iter().find(|&&e| e >= g.order()) {
        return Err(GroupError::OutOfRange {
            element: e,
            order: g.order(),
        });
    }
    if let Some(&e) = targets.iter().find(|&&e| e >= h.order()) {
        return Err(GroupError::OutOfRange {
            element: e,
            order: h.order(),
        });
    }
    if !g.generates(gens) {
        return Err(GroupError::DoNotGenerate);
    }
    let mut image = vec![usize::MAX; g.order()];
    image[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(targets) {
            let y = g.add(x, s);
            let value = h.add(image[x], t);
            if image[y] == usize::MAX {
                image[y] = value;
                queue.push_back(y);
            } else if image[y] != value {
                return Ok(None);
            }
        }
    }
    Ok(Some(GroupHom { image }))
}

/// Every homomorphism `G → H`, found by trying all images of a generating
/// set.
pub fn all_group_homs(g: &AbelianGroup, h: &AbelianGroup) -> Vec<GroupHom> {
    let gens = g.generating_set();
    let mut out = Vec::new();
    let mut targets = vec![0; gens.len()];
    loop {
        if let Ok(Some(k)) = group_hom_extends(g, h, &gens, &targets) {
            out.push(k);
        }
        let mut i = 0;
        loop {
            if i == targets.len() {
                return out;
            }
            targets[i] += 1;
            if targets[i] < h.order() {
                break;
            }
            targets[i] = 0;
            i += 1;
        }
    }
}
