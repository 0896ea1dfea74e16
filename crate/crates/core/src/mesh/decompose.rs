use thiserror::Error;

use super::{AbelianGroup, AffineMesh};
use crate::property::two_reductive_witness;
use crate::table::Quandle;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecomposeError {
    #[error("not 2-reductive: ({x}▷{y})▷{z} != {y}▷{z}")]
    NotTwoReductive { x: usize, y: usize, z: usize },
    #[error("internal consistency error: {0}")]
    Inconsistent(String),
}

/// A mesh for a 2-reductive quandle plus the element correspondence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub mesh: AffineMesh,
    /// `labels[x] = (i, a)`: element `x` of the input is `a ∈ A_i`.
    pub labels: Vec<(usize, usize)>,
}

impl Decomposition {
    /// `map[x]` is the index of `x` in the quandle composed from the mesh.
    pub fn composed_index(&self) -> Vec<usize> {
        let labeling = self.mesh.labeling();
        self.labels
            .iter()
            .map(|&(i, a)| labeling.index(i, a))
            .collect()
    }
}

/// Realises a 2-reductive quandle as a mesh with every `φ` zero.
///
/// In a 2-reductive quandle `L_a` depends only on the component of `a`, so
/// component `i` acts on component `j` by a single permutation `ρ_{i,j}`.
/// These permutations commute and act transitively on component `j`, hence
/// regularly; `A_j` is the group they generate, carried on the component by
/// `g ↦ g(0_j)` where `0_j` is the least element. Then `c_{i,j} = ρ_{i,j}(0_j)`.
/// Groups are returned in invariant-factor form.
pub fn decompose_two_reductive(q: &Quandle) -> Result<Decomposition, DecomposeError> {
    if let Some(w) = two_reductive_witness(q) {
        return Err(DecomposeError::NotTwoReductive {
            x: w[0],
            y: w[1],
            z: w[2],
        });
    }
    let comps = q.components();
    let r = comps.block_count();
    let mut local = vec![0; q.order()];
    for block in comps.blocks() {
        for (k, &x) in block.iter().enumerate() {
            local[x] = k;
        }
    }
    let bases = comps.representatives();

    let mut groups = Vec::with_capacity(r);
    let mut isos = Vec::with_capacity(r);
    let mut consts = vec![vec![0; r]; r];
    for j in 0..r {
        let block = comps.block(j);
        let m = block.len();
        let rho: Vec<Vec<usize>> = bases
            .iter()
            .map(|&b| block.iter().map(|&x| local[q.op(b, x)]).collect())
            .collect();
        // translation[a] is the unique generated permutation sending 0 to a
        let mut translation: Vec<Option<Vec<usize>>> = vec![None; m];
        translation[0] = Some((0..m).collect());
        let mut queue = std::collections::VecDeque::from([0]);
        while let Some(a) = queue.pop_front() {
            let ga = translation[a].clone().unwrap();
            for p in &rho {
                let composed: Vec<usize> = ga.iter().map(|&v| p[v]).collect();
                let target = composed[0];
                match &translation[target] {
                    Some(existing) if *existing != composed => {
                        return Err(DecomposeError::Inconsistent(format!(
                            "translations of component {j} do not act regularly"
                        )));
                    }
                    Some(_) => {}
                    None => {
                        translation[target] = Some(composed);
                        queue.push_back(target);
                    }
                }
            }
        }
        let translation: Vec<Vec<usize>> = translation
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| DecomposeError::Inconsistent(format!("component {j} is not an orbit")))?;
        let table: Vec<Vec<usize>> = translation.clone();
        let plain = AbelianGroup::from_table(&table)
            .map_err(|e| DecomposeError::Inconsistent(format!("component {j}: {e}")))?;
        let (factors, iso) = plain.identify();
        for (i, p) in rho.iter().enumerate() {
            consts[i][j] = iso[p[0]];
        }
        groups.push(AbelianGroup::from_factors(&factors));
        isos.push(iso);
    }

    let labels: Vec<(usize, usize)> = (0..q.order())
        .map(|x| {
            let j = comps.block_of(x);
            (j, isos[j][local[x]])
        })
        .collect();
    let mesh = AffineMesh::two_reductive(groups, consts)
        .map_err(|e| DecomposeError::Inconsistent(e.to_string()))?;
    let decomposition = Decomposition { mesh, labels };

    let (composed, _) = decomposition
        .mesh
        .to_quandle()
        .map_err(|e| DecomposeError::Inconsistent(e.to_string()))?;
    let map = decomposition.composed_index();
    if !q.is_homomorphism(&composed, &map) {
        return Err(DecomposeError::Inconsistent(
            "composed mesh does not reproduce the input".into(),
        ));
    }
    Ok(decomposition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;

    fn q33() -> Quandle {
        Quandle::from_rows(&[vec![0, 1, 2], vec![0, 1, 2], vec![1, 0, 2]]).unwrap()
    }

    #[test]
    fn q33_decomposes_to_z2_and_point() {
        let d = decompose_two_reductive(&q33()).unwrap();
        let m = &d.mesh;
        assert_eq!(m.group(0).label().as_deref(), Some("Z2"));
        assert_eq!(m.group(1).label().as_deref(), Some("Z1"));
        assert_eq!(m.constant(1, 0), 1);
        assert_eq!(m.constant(0, 1), 0);
        assert!(m.is_two_reductive_shape());
    }

    #[test]
    fn trivial_quandle_decomposes_to_points() {
        let d = decompose_two_reductive(&Quandle::trivial(3)).unwrap();
        assert_eq!(d.mesh.component_count(), 3);
        assert!(d.mesh.groups().iter().all(|g| g.order() == 1));
    }

    #[test]
    fn f4a_roundtrip() {
        let f4a = Quandle::from_rows(&[
            vec![0, 1, 3, 2],
            vec![0, 1, 3, 2],
            vec![1, 0, 2, 3],
            vec![1, 0, 2, 3],
        ])
        .unwrap();
        let d = decompose_two_reductive(&f4a).unwrap();
        assert_eq!(d.mesh.constant(0, 1), 1);
        assert_eq!(d.mesh.constant(1, 0), 1);
        let (back, _) = d.mesh.to_quandle().unwrap();
        assert!(is_isomorphic(&f4a, &back).is_some());
    }

    #[test]
    fn interleaved_components_are_relabeled() {
        let q = q33().relabel(&[0, 2, 1]);
        let d = decompose_two_reductive(&q).unwrap();
        let (back, _) = d.mesh.to_quandle().unwrap();
        assert!(q.is_homomorphism(&back, &d.composed_index()));
    }

    #[test]
    fn non_two_reductive_input_is_rejected() {
        assert_eq!(
            decompose_two_reductive(&Quandle::dihedral(3)),
            Err(DecomposeError::NotTwoReductive { x: 0, y: 1, z: 0 })
        );
    }
}
