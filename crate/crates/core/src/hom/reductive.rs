use super::{enumerate_homs, pointwise, HomEngine, HomError, HomRecord, HomSet, DEFAULT_SEARCH_BUDGET};
use crate::congruence::{quotient, standard_congruence, CongruenceKind};
use crate::mesh::{decompose_two_reductive, group_hom_extends, DecomposeError, Decomposition, GroupHom};
use crate::property::two_reductive_witness;
use crate::table::Quandle;

/// Contribution of one component map `g: c(S) → c(T)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentMapCount {
    pub g: Vec<usize>,
    pub delta: bool,
    /// `Π_i |T_{g(i)}|`, counted only when `delta` holds.
    pub product: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoReductiveCount {
    pub total: u128,
    /// Order of `S/γ_S`.
    pub quotient_order: usize,
    pub maps: Vec<ComponentMapCount>,
}

/// Meshes for `S/γ_S` and `T`, with the maps needed to read records back.
struct Prepared {
    source: Decomposition,
    target: Decomposition,
    projection: Vec<usize>,
    /// `target_element[j][b]` is the element of `T` labelled `(j, b)`.
    target_element: Vec<Vec<usize>>,
}

impl Prepared {
    fn new(s: &Quandle, t: &Quandle) -> Result<Self, HomError> {
        if let Some(w) = two_reductive_witness(t) {
            return Err(HomError::TargetNotTwoReductive {
                x: w[0],
                y: w[1],
                z: w[2],
            });
        }
        let gamma = standard_congruence(s, &CongruenceKind::TwoReductive);
        let (reduced, projection) =
            quotient(s, &gamma).map_err(|e| HomError::Inconsistent(e.to_string()))?;
        let source = decompose_two_reductive(&reduced).map_err(|e| match e {
            DecomposeError::NotTwoReductive { .. } => {
                HomError::Inconsistent("S/γ_S is not 2-reductive".into())
            }
            other => other.into(),
        })?;
        let target = decompose_two_reductive(t)?;
        let mut target_element: Vec<Vec<usize>> = target
            .mesh
            .groups()
            .iter()
            .map(|g| vec![0; g.order()])
            .collect();
        for (x, &(j, b)) in target.labels.iter().enumerate() {
            target_element[j][b] = x;
        }
        Ok(Self {
            source,
            target,
            projection,
            target_element,
        })
    }

    fn source_components(&self) -> usize {
        self.source.mesh.component_count()
    }

    fn target_components(&self) -> usize {
        self.target.mesh.component_count()
    }

    /// The unique group homomorphisms `k_i` with `k_i(s_{j,i}) = t_{g(j),g(i)}`,
    /// or `None` when some `k_i` does not exist (`δ_g = 0`).
    fn translations(&self, g: &[usize]) -> Result<Option<Vec<GroupHom>>, HomError> {
        let (ms, mt) = (&self.source.mesh, &self.target.mesh);
        let r = ms.component_count();
        let mut ks = Vec::with_capacity(r);
        for i in 0..r {
            let gens: Vec<usize> = (0..r).map(|j| ms.constant(j, i)).collect();
            let targets: Vec<usize> = (0..r).map(|j| mt.constant(g[j], g[i])).collect();
            match group_hom_extends(ms.group(i), mt.group(g[i]), &gens, &targets)
                .map_err(|e| HomError::Inconsistent(e.to_string()))?
            {
                Some(k) => ks.push(k),
                None => return Ok(None),
            }
        }
        Ok(Some(ks))
    }

    fn product(&self, g: &[usize]) -> u128 {
        g.iter()
            .map(|&j| self.target.mesh.group(j).order() as u128)
            .product()
    }
}

/// Every `g ∈ m^r` in lexicographic order.
fn component_maps(r: usize, m: usize) -> Vec<Vec<usize>> {
    let total = m.pow(r as u32);
    (0..total)
        .map(|mut code| {
            let mut g = vec![0; r];
            for slot in g.iter_mut().rev() {
                *slot = code % m;
                code /= m;
            }
            g
        })
        .collect()
}

/// `|Hom(S, T)| = Σ_g δ_g Π_i |T_{g(i)}|` for 2-reductive `T`, computed on
/// meshes for `S/γ_S` and `T`.
pub fn count_homs_two_reductive(s: &Quandle, t: &Quandle) -> Result<TwoReductiveCount, HomError> {
    let prep = Prepared::new(s, t)?;
    let mut maps = Vec::new();
    let mut total = 0u128;
    for g in component_maps(prep.source_components(), prep.target_components()) {
        let delta = prep.translations(&g)?.is_some();
        let product = prep.product(&g);
        if delta {
            total += product;
        }
        maps.push(ComponentMapCount { g, delta, product });
    }
    Ok(TwoReductiveCount {
        total,
        quotient_order: prep.projection.iter().max().map_or(0, |&m| m + 1),
        maps,
    })
}

/// Lists `Hom(S, T)` for 2-reductive `T`: for each admissible `g`, every
/// choice of base-point images `e_i ∈ T_{g(i)}` gives `h(a) = k_i(a) + e_i`.
pub fn enumerate_homs_two_reductive(s: &Quandle, t: &Quandle) -> Result<HomSet, HomError> {
    let prep = Prepared::new(s, t)?;
    let r = prep.source_components();
    let mut records = Vec::new();
    for g in component_maps(r, prep.target_components()) {
        let Some(ks) = prep.translations(&g)? else {
            continue;
        };
        if records.len() as u128 + prep.product(&g) > DEFAULT_SEARCH_BUDGET as u128 {
            return Err(HomError::SearchBudget {
                budget: DEFAULT_SEARCH_BUDGET,
            });
        }
        let groups: Vec<_> = g.iter().map(|&j| prep.target.mesh.group(j)).collect();
        let mut e = vec![0; r];
        'choices: loop {
            let image = (0..s.order())
                .map(|x| {
                    let (i, a) = prep.source.labels[prep.projection[x]];
                    let b = groups[i].add(ks[i].apply(a), e[i]);
                    prep.target_element[g[i]][b]
                })
                .collect();
            records.push(HomRecord::new(image));
            for i in 0..r {
                e[i] += 1;
                if e[i] < groups[i].order() {
                    continue 'choices;
                }
                e[i] = 0;
            }
            break;
        }
    }
    Ok(HomSet::new(s.order(), t.order(), HomEngine::TwoReductiveMesh, records))
}

/// How `Hom(S, T)` sits inside `T^{c(S)}` under `h ↦ (h(b_1), …, h(b_r))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub homs: HomSet,
    pub power: Quandle,
    /// Image of each record in `T^{c(S)}`.
    pub embedding: Vec<usize>,
    pub injective: bool,
    pub homomorphism: bool,
    pub union_of_components: bool,
    /// Components of `T^{c(S)}` met by the image, as element lists.
    pub components: Vec<Vec<usize>>,
}

impl StructureReport {
    pub fn holds(&self) -> bool {
        self.injective && self.homomorphism && self.union_of_components
    }
}

/// Checks the base-point embedding of `Hom(S, T)` into `T^{c(S)}` for
/// 2-reductive `T`; the Hom set comes from the brute-force engine.
pub fn hom_structure_two_reductive(s: &Quandle, t: &Quandle) -> Result<StructureReport, HomError> {
    if let Some(w) = two_reductive_witness(t) {
        return Err(HomError::TargetNotTwoReductive {
            x: w[0],
            y: w[1],
            z: w[2],
        });
    }
    let bases = s.components().representatives();
    let power = t.direct_power(bases.len() as u32)?;
    let homs = enumerate_homs(s, t)?;
    let embedding: Vec<usize> = homs
        .records()
        .iter()
        .map(|h| t.power_index(&bases.iter().map(|&b| h.apply(b)).collect::<Vec<_>>()))
        .collect();

    let mut hit = vec![false; power.order()];
    for &e in &embedding {
        hit[e] = true;
    }
    let injective = hit.iter().filter(|&&h| h).count() == embedding.len();

    let records = homs.records();
    let homomorphism = records.iter().enumerate().all(|(a, h)| {
        records.iter().enumerate().all(|(b, k)| {
            homs.index_of(&pointwise(t, h, k).image)
                .is_some_and(|c| embedding[c] == power.op(embedding[a], embedding[b]))
        })
    });

    let mut components = Vec::new();
    let mut union_of_components = true;
    for block in power.components().blocks() {
        if block.iter().any(|&x| hit[x]) {
            union_of_components &= block.iter().all(|&x| hit[x]);
            components.push(block.clone());
        }
    }
    Ok(StructureReport {
        homs,
        power,
        embedding,
        injective,
        homomorphism,
        union_of_components,
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q33() -> Quandle {
        Quandle::from_rows(&[vec![0, 1, 2], vec![0, 1, 2], vec![1, 0, 2]]).unwrap()
    }

    fn f4a() -> Quandle {
        Quandle::from_rows(&[
            vec![0, 1, 3, 2],
            vec![0, 1, 3, 2],
            vec![1, 0, 2, 3],
            vec![1, 0, 2, 3],
        ])
        .unwrap()
    }

    fn breakdown(c: &TwoReductiveCount) -> Vec<(Vec<usize>, bool, u128)> {
        c.maps.iter().map(|m| (m.g.clone(), m.delta, m.product)).collect()
    }

    #[test]
    fn two_points_into_q33() {
        let c = count_homs_two_reductive(&Quandle::trivial(2), &q33()).unwrap();
        assert_eq!(c.total, 5);
        assert_eq!(
            breakdown(&c),
            vec![
                (vec![0, 0], true, 4),
                (vec![0, 1], false, 2),
                (vec![1, 0], false, 2),
                (vec![1, 1], true, 1),
            ]
        );
    }

    #[test]
    fn q33_into_itself() {
        let c = count_homs_two_reductive(&q33(), &q33()).unwrap();
        assert_eq!(c.total, 7);
        let contributing: Vec<u128> = c.maps.iter().filter(|m| m.delta).map(|m| m.product).collect();
        assert_eq!(contributing, vec![4, 2, 1]);
    }

    #[test]
    fn listing_matches_brute_force() {
        for (s, t) in [
            (Quandle::trivial(2), q33()),
            (q33(), q33()),
            (f4a(), f4a()),
            (Quandle::dihedral(3), f4a()),
            (Quandle::dihedral(3).product(&Quandle::trivial(2)).unwrap(), q33()),
        ] {
            let fast = enumerate_homs_two_reductive(&s, &t).unwrap();
            let brute = enumerate_homs(&s, &t).unwrap();
            assert_eq!(fast.records(), brute.records());
            assert_eq!(count_homs_two_reductive(&s, &t).unwrap().total, brute.len() as u128);
        }
    }

    #[test]
    fn non_two_reductive_target_is_refused() {
        assert!(matches!(
            count_homs_two_reductive(&Quandle::trivial(1), &Quandle::dihedral(3)),
            Err(HomError::TargetNotTwoReductive { x: 0, y: 1, z: 0 })
        ));
    }

    #[test]
    fn structure_of_two_points_into_q33() {
        let rep = hom_structure_two_reductive(&Quandle::trivial(2), &q33()).unwrap();
        assert!(rep.holds());
        let sizes: Vec<usize> = rep.components.iter().map(|b| b.len()).collect();
        assert_eq!(sizes, vec![4, 1]);
    }

    #[test]
    fn structure_of_point_source_is_all_of_t() {
        let rep = hom_structure_two_reductive(&Quandle::trivial(1), &f4a()).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.embedding, vec![0, 1, 2, 3]);
    }

    #[test]
    fn structure_of_two_points_into_f4a() {
        let rep = hom_structure_two_reductive(&Quandle::trivial(2), &f4a()).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.homs.len(), 8);
        let sizes: Vec<usize> = rep.components.iter().map(|b| b.len()).collect();
        assert_eq!(sizes, vec![4, 4]);
    }
}
