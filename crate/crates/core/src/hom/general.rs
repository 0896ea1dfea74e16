use super::{HomEngine, HomError, HomRecord, HomSet, DEFAULT_SEARCH_BUDGET};
use crate::mesh::{all_group_homs, AffineMesh, GroupHom, MeshError, MeshLabeling, MeshReport};

/// Validates a mesh and returns its labeling.
fn checked_labeling(m: &AffineMesh) -> Result<MeshLabeling, HomError> {
    if let MeshReport::Failed(f) = m.validate() {
        return Err(HomError::Mesh(MeshError::Invalid(f)));
    }
    Ok(m.labeling())
}

struct Search<'a> {
    ms: &'a AffineMesh,
    mt: &'a AffineMesh,
    /// `homs[i][j]`: all group homomorphisms `S_i → T_j`.
    homs: Vec<Vec<Vec<GroupHom>>>,
    g: Vec<usize>,
    chosen: Vec<(usize, usize)>,
    nodes: u64,
    budget: u64,
    found: Vec<(Vec<usize>, Vec<(usize, usize)>)>,
}

impl Search<'_> {
    fn k(&self, i: usize) -> &GroupHom {
        &self.homs[i][self.g[i]][self.chosen[i].0]
    }

    /// Conditions (i) and (ii) for the ordered pair of source components `(i, j)`:
    /// `k_j ∘ σ_{i,j} = τ_{g(i),g(j)} ∘ k_i` and
    /// `k_j(s_{i,j}) = t_{g(i),g(j)} + τ_{g(i),g(j)}(e_i) - τ_{g(j),g(j)}(e_j)`.
    fn compatible(&self, i: usize, j: usize) -> bool {
        let (gi, gj) = (self.g[i], self.g[j]);
        let (ki, kj) = (self.k(i), self.k(j));
        let sigma = self.ms.phi(i, j);
        let tau = self.mt.phi(gi, gj);
        let tau_jj = self.mt.phi(gj, gj);
        let target = self.mt.group(gj);
        let linear = (0..self.ms.group(i).order()).all(|a| kj.apply(sigma.apply(a)) == tau.apply(ki.apply(a)));
        if !linear {
            return false;
        }
        let (ei, ej) = (self.chosen[i].1, self.chosen[j].1);
        let rhs = target.sub(
            target.add(self.mt.constant(gi, gj), tau.apply(ei)),
            tau_jj.apply(ej),
        );
        kj.apply(self.ms.constant(i, j)) == rhs
    }

    fn run(&mut self, i: usize) -> Result<(), HomError> {
        let r = self.ms.component_count();
        if i == r {
            self.found.push((self.g.clone(), self.chosen.clone()));
            return Ok(());
        }
        for gi in 0..self.mt.component_count() {
            self.g[i] = gi;
            self.choose(i)?;
        }
        Ok(())
    }

    fn choose(&mut self, i: usize) -> Result<(), HomError> {
        let gi = self.g[i];
        for k in 0..self.homs[i][gi].len() {
            for e in 0..self.mt.group(gi).order() {
                self.nodes += 1;
                if self.nodes > self.budget {
                    return Err(HomError::SearchBudget {
                        budget: self.budget,
                    });
                }
                self.chosen.push((k, e));
                if (0..=i).all(|j| self.compatible(i, j) && (j == i || self.compatible(j, i))) {
                    self.run(i + 1)?;
                }
                self.chosen.pop();
            }
        }
        Ok(())
    }
}

/// `Hom` between the quandles composed from two meshes, built from
/// component maps `g`, group homomorphisms `k_i: S_i → T_{g(i)}` and
/// constants `e_i ∈ T_{g(i)}` as `h(a) = k_i(a) + e_i`.
pub fn enumerate_mesh_homs(ms: &AffineMesh, mt: &AffineMesh) -> Result<HomSet, HomError> {
    enumerate_mesh_homs_with_budget(ms, mt, DEFAULT_SEARCH_BUDGET)
}

pub fn enumerate_mesh_homs_with_budget(
    ms: &AffineMesh,
    mt: &AffineMesh,
    budget: u64,
) -> Result<HomSet, HomError> {
    let ls = checked_labeling(ms)?;
    let lt = checked_labeling(mt)?;
    let homs = ms
        .groups()
        .iter()
        .map(|si| mt.groups().iter().map(|tj| all_group_homs(si, tj)).collect())
        .collect();
    let r = ms.component_count();
    let mut search = Search {
        ms,
        mt,
        homs,
        g: vec![0; r],
        chosen: Vec::with_capacity(r),
        nodes: 0,
        budget,
        found: Vec::new(),
    };
    search.run(0)?;

    let mut records = Vec::with_capacity(search.found.len());
    for (g, chosen) in &search.found {
        let mut image = vec![0; ls.total()];
        for (i, &(k, e)) in chosen.iter().enumerate() {
            let ki = &search.homs[i][g[i]][k];
            let target = mt.group(g[i]);
            for a in 0..ms.group(i).order() {
                image[ls.index(i, a)] = lt.index(g[i], target.add(ki.apply(a), e));
            }
        }
        records.push(HomRecord::new(image));
    }
    Ok(HomSet::new(ls.total(), lt.total(), HomEngine::GeneralMesh, records))
}
