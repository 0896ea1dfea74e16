//! Affine meshes: indexed abelian groups `A_i`, connecting homomorphisms
//! `φ_{i,j}: A_i → A_j` and constants `c_{i,j} ∈ A_j`.
//!
//! A valid mesh composes to a medial quandle on the disjoint union of the
//! groups via `a ▷ b = c_{i,j} + φ_{i,j}(a) + (1 - φ_{j,j})(b)` for
//! `a ∈ A_i`, `b ∈ A_j`.

mod decompose;
mod group;

use std::fmt;

use thiserror::Error;

pub use decompose::{decompose_two_reductive, DecomposeError, Decomposition};
pub use group::{all_group_homs, group_hom_extends, AbelianGroup, GroupError, GroupHom};

use crate::table::Quandle;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeshError {
    #[error("mesh has no components")]
    Empty,
    #[error("{what} has {found} entries, expected {expected}")]
    Shape {
        what: &'static str,
        found: usize,
        expected: usize,
    },
    #[error("constant c[{i}][{j}] = {value} is outside A_{j} of order {order}")]
    ConstantOutOfRange {
        i: usize,
        j: usize,
        value: usize,
        order: usize,
    },
    #[error("phi[{i}][{j}]: {source}")]
    Phi {
        i: usize,
        j: usize,
        source: GroupError,
    },
    #[error("mesh axiom fails: {0}")]
    Invalid(MeshAxiomFailure),
}

/// The first mesh axiom that fails, with witness indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshAxiomFailure {
    /// `1 - φ_{i,i}` is not a bijection of `A_i`.
    OneMinusPhiNotBijective { i: usize },
    /// `c_{i,i} != 0`.
    DiagonalConstant { i: usize },
    /// `φ_{j,k}∘φ_{i,j} != φ_{j',k}∘φ_{i,j'}`.
    PhiComposition { i: usize, j: usize, j2: usize, k: usize },
    /// `φ_{j,k}(c_{i,j}) != φ_{k,k}(c_{i,k} - c_{j,k})`.
    ConstantCompatibility { i: usize, j: usize, k: usize },
    /// The constants `c_{i,j}` and images of `φ_{i,j}` do not generate `A_j`.
    NotGenerating { j: usize },
}

impl MeshAxiomFailure {
    pub fn axiom_number(&self) -> usize {
        match self {
            MeshAxiomFailure::OneMinusPhiNotBijective { .. } => 1,
            MeshAxiomFailure::DiagonalConstant { .. } => 2,
            MeshAxiomFailure::PhiComposition { .. } => 3,
            MeshAxiomFailure::ConstantCompatibility { .. } => 4,
            MeshAxiomFailure::NotGenerating { .. } => 5,
        }
    }
}

impl fmt::Display for MeshAxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MeshAxiomFailure::OneMinusPhiNotBijective { i } => {
                write!(f, "axiom 1: 1 - phi[{i}][{i}] is not bijective")
            }
            MeshAxiomFailure::DiagonalConstant { i } => write!(f, "axiom 2: c[{i}][{i}] != 0"),
            MeshAxiomFailure::PhiComposition { i, j, j2, k } => write!(
                f,
                "axiom 3: phi[{j}][{k}]∘phi[{i}][{j}] != phi[{j2}][{k}]∘phi[{i}][{j2}]"
            ),
            MeshAxiomFailure::ConstantCompatibility { i, j, k } => write!(
                f,
                "axiom 4: phi[{j}][{k}](c[{i}][{j}]) != phi[{k}][{k}](c[{i}][{k}] - c[{j}][{k}])"
            ),
            MeshAxiomFailure::NotGenerating { j } => {
                write!(f, "axiom 5: constants and phi images do not generate A_{j}")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshReport {
    Ok,
    Failed(MeshAxiomFailure),
}

impl MeshReport {
    pub fn is_ok(&self) -> bool {
        matches!(self, MeshReport::Ok)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMesh {
    groups: Vec<AbelianGroup>,
    phis: Vec<Vec<GroupHom>>,
    consts: Vec<Vec<usize>>,
}

/// Position of mesh elements `(i, a)` in the composed quandle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeshLabeling {
    offsets: Vec<usize>,
    total: usize,
}

impl MeshLabeling {
    pub fn index(&self, component: usize, element: usize) -> usize {
        self.offsets[component] + element
    }

    pub fn element(&self, index: usize) -> (usize, usize) {
        let i = self.offsets.partition_point(|&o| o <= index) - 1;
        (i, index - self.offsets[i])
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn component_range(&self, i: usize) -> std::ops::Range<usize> {
        let end = self.offsets.get(i + 1).copied().unwrap_or(self.total);
        self.offsets[i]..end
    }
}

impl AffineMesh {
    /// Checks shapes, element ranges and that each `φ` is a homomorphism.
    /// The mesh axioms are checked separately by [`AffineMesh::validate`].
    pub fn new(
        groups: Vec<AbelianGroup>,
        phis: Vec<Vec<Vec<usize>>>,
        consts: Vec<Vec<usize>>,
    ) -> Result<Self, MeshError> {
        let r = groups.len();
        if r == 0 {
            return Err(MeshError::Empty);
        }
        check_square("phi", &phis, r)?;
        check_square("const", &consts, r)?;
        for (i, row) in consts.iter().enumerate() {
            for (j, &value) in row.iter().enumerate() {
                if value >= groups[j].order() {
                    return Err(MeshError::ConstantOutOfRange {
                        i,
                        j,
                        value,
                        order: groups[j].order(),
                    });
                }
            }
        }
        let phis = phis
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(j, image)| {
                        GroupHom::new(&groups[i], &groups[j], image)
                            .map_err(|source| MeshError::Phi { i, j, source })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            groups,
            phis,
            consts,
        })
    }

    /// A mesh with every `φ` zero, the shape of all 2-reductive quandles.
    pub fn two_reductive(groups: Vec<AbelianGroup>, consts: Vec<Vec<usize>>) -> Result<Self, MeshError> {
        let phis = groups
            .iter()
            .map(|gi| groups.iter().map(|_| vec![0; gi.order()]).collect())
            .collect();
        Self::new(groups, phis, consts)
    }

    pub fn component_count(&self) -> usize {
        self.groups.len()
    }

    pub fn group(&self, i: usize) -> &AbelianGroup {
        &self.groups[i]
    }

    pub fn groups(&self) -> &[AbelianGroup] {
        &self.groups
    }

    pub fn phi(&self, i: usize, j: usize) -> &GroupHom {
        &self.phis[i][j]
    }

    pub fn constant(&self, i: usize, j: usize) -> usize {
        self.consts[i][j]
    }

    pub fn order(&self) -> usize {
        self.groups.iter().map(AbelianGroup::order).sum()
    }

    pub fn is_two_reductive_shape(&self) -> bool {
        self.phis.iter().flatten().all(GroupHom::is_zero)
    }

    pub fn labeling(&self) -> MeshLabeling {
        let mut offsets = Vec::with_capacity(self.groups.len());
        let mut total = 0;
        for g in &self.groups {
            offsets.push(total);
            total += g.order();
        }
        MeshLabeling { offsets, total }
    }

    /// Checks the five mesh axioms in order; witnesses are lexicographically
    /// least within the failing axiom.
    pub fn validate(&self) -> MeshReport {
        match self.first_failure() {
            None => MeshReport::Ok,
            Some(f) => MeshReport::Failed(f),
        }
    }

    fn first_failure(&self) -> Option<MeshAxiomFailure> {
        let r = self.groups.len();
        for i in 0..r {
            let g = &self.groups[i];
            let mut seen = vec![false; g.order()];
            for a in 0..g.order() {
                let v = g.sub(a, self.phis[i][i].apply(a));
                if std::mem::replace(&mut seen[v], true) {
                    return Some(MeshAxiomFailure::OneMinusPhiNotBijective { i });
                }
            }
        }
        if let Some(i) = (0..r).find(|&i| self.consts[i][i] != 0) {
            return Some(MeshAxiomFailure::DiagonalConstant { i });
        }
        for i in 0..r {
            for j in 0..r {
                for j2 in 0..r {
                    for k in 0..r {
                        let lhs = self.phis[j][k].after(&self.phis[i][j]);
                        let rhs = self.phis[j2][k].after(&self.phis[i][j2]);
                        if lhs != rhs {
                            return Some(MeshAxiomFailure::PhiComposition { i, j, j2, k });
                        }
                    }
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let ak = &self.groups[k];
                    let lhs = self.phis[j][k].apply(self.consts[i][j]);
                    let rhs = self.phis[k][k].apply(ak.sub(self.consts[i][k], self.consts[j][k]));
                    if lhs != rhs {
                        return Some(MeshAxiomFailure::ConstantCompatibility { i, j, k });
                    }
                }
            }
        }
        for j in 0..r {
            let mut gens: Vec<usize> = (0..r).map(|i| self.consts[i][j]).collect();
            for i in 0..r {
                gens.extend_from_slice(self.phis[i][j].image());
            }
            if !self.groups[j].generates(&gens) {
                return Some(MeshAxiomFailure::NotGenerating { j });
            }
        }
        None
    }

    /// The medial quandle on the disjoint union, ordered by component then
    /// group element.
    pub fn to_quandle(&self) -> Result<(Quandle, MeshLabeling), MeshError> {
        if let MeshReport::Failed(f) = self.validate() {
            return Err(MeshError::Invalid(f));
        }
        let labeling = self.labeling();
        let n = labeling.total();
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            let (i, a) = labeling.element(x);
            for y in 0..n {
                let (j, b) = labeling.element(y);
                let aj = &self.groups[j];
                let one_minus = aj.sub(b, self.phis[j][j].apply(b));
                let v = aj.add(aj.add(self.consts[i][j], self.phis[i][j].apply(a)), one_minus);
                table.push(labeling.index(j, v));
            }
        }
        Ok((Quandle::from_flat_unchecked(n, table), labeling))
    }
}

fn check_square<T>(what: &'static str, rows: &[Vec<T>], r: usize) -> Result<(), MeshError> {
    if rows.len() != r {
        return Err(MeshError::Shape {
            what,
            found: rows.len(),
            expected: r,
        });
    }
    if let Some(row) = rows.iter().find(|row| row.len() != r) {
        return Err(MeshError::Shape {
            what,
            found: row.len(),
            expected: r,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::property::{has_property, Property};
    use crate::table::verify_quandle;

    fn z(d: usize) -> AbelianGroup {
        AbelianGroup::cyclic(d)
    }

    fn q33_mesh() -> AffineMesh {
        AffineMesh::two_reductive(vec![z(2), z(1)], vec![vec![0, 0], vec![1, 0]]).unwrap()
    }

    #[test]
    fn q33_mesh_is_valid_and_composes() {
        let m = q33_mesh();
        assert_eq!(m.validate(), MeshReport::Ok);
        let (q, _) = m.to_quandle().unwrap();
        assert_eq!(q.rows(), vec![vec![0, 1, 2], vec![0, 1, 2], vec![1, 0, 2]]);
    }

    #[test]
    fn singleton_mesh_is_one_element_quandle() {
        let m = AffineMesh::two_reductive(vec![z(1)], vec![vec![0]]).unwrap();
        assert_eq!(m.to_quandle().unwrap().0, Quandle::trivial(1));
    }

    #[test]
    fn crossed_z2_mesh_composes_to_f4a() {
        let m = AffineMesh::two_reductive(vec![z(2), z(2)], vec![vec![0, 1], vec![1, 0]]).unwrap();
        let (q, _) = m.to_quandle().unwrap();
        assert_eq!(
            q.rows(),
            vec![vec![0, 1, 3, 2], vec![0, 1, 3, 2], vec![1, 0, 2, 3], vec![1, 0, 2, 3]]
        );
    }

    #[test]
    fn axiom_failures() {
        let m = AffineMesh::two_reductive(vec![z(2)], vec![vec![1]]).unwrap();
        assert_eq!(m.validate(), MeshReport::Failed(MeshAxiomFailure::DiagonalConstant { i: 0 }));
        let m = AffineMesh::two_reductive(vec![z(2), z(2)], vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(m.validate(), MeshReport::Failed(MeshAxiomFailure::NotGenerating { j: 0 }));
        // phi = identity on Z3: 1 - phi = 0
        let m = AffineMesh::new(vec![z(3)], vec![vec![vec![0, 1, 2]]], vec![vec![0]]).unwrap();
        assert_eq!(
            m.validate(),
            MeshReport::Failed(MeshAxiomFailure::OneMinusPhiNotBijective { i: 0 })
        );
        assert!(matches!(m.to_quandle(), Err(MeshError::Invalid(_))));
    }

    #[test]
    fn composition_axiom_failure() {
        // Z3 with phi = -1 next to a point: phi00∘phi00 = 1 but it must
        // factor through the point
        let m = AffineMesh::new(
            vec![z(3), z(1)],
            vec![vec![vec![0, 2, 1], vec![0, 0, 0]], vec![vec![0], vec![0]]],
            vec![vec![0, 0], vec![0, 0]],
        )
        .unwrap();
        assert_eq!(
            m.validate(),
            MeshReport::Failed(MeshAxiomFailure::PhiComposition { i: 0, j: 0, j2: 1, k: 0 })
        );
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(
            AffineMesh::two_reductive(vec![z(2)], vec![vec![2]]),
            Err(MeshError::ConstantOutOfRange { .. })
        ));
        assert!(matches!(
            AffineMesh::new(vec![z(2)], vec![vec![vec![0, 0]]], vec![vec![0, 0]]),
            Err(MeshError::Shape { .. })
        ));
        assert!(matches!(
            AffineMesh::new(vec![z(3)], vec![vec![vec![0, 1, 1]]], vec![vec![0]]),
            Err(MeshError::Phi { .. })
        ));
    }

    #[test]
    fn alexander_meshes_compose_to_connected_medial_quandles() {
        // Z5 with phi = t gives x ▷ y = t x + (1 - t) y
        for t in 2..5 {
            let phi: Vec<usize> = (0..5).map(|a| a * t % 5).collect();
            let m = AffineMesh::new(vec![z(5)], vec![vec![phi]], vec![vec![0]]).unwrap();
            let (q, _) = m.to_quandle().unwrap();
            assert_eq!(q, Quandle::affine_cyclic(5, t).unwrap());
            assert!(has_property(&q, Property::Connected));
            assert!(!has_property(&q, Property::TwoReductive));
        }
    }

    #[test]
    fn composed_tables_are_medial_with_group_components() {
        let m = q33_mesh();
        let (q, labeling) = m.to_quandle().unwrap();
        assert!(verify_quandle(&q.rows()).unwrap().is_ok());
        assert!(has_property(&q, Property::Medial));
        let comps = q.components();
        for i in 0..m.component_count() {
            let range: Vec<usize> = labeling.component_range(i).collect();
            assert_eq!(comps.block(comps.block_of(range[0])), &range[..]);
        }
        assert_eq!(labeling.element(2), (1, 0));
    }
}
