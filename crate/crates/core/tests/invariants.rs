mod common;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use quandle::hom::{
    count_homs_two_reductive, enumerate_homs, hom_quandle, triv_homs, HomRecord,
};
use quandle::mesh::{decompose_two_reductive, group_hom_extends, AbelianGroup};
use quandle::terms::{instantiate_identity_pairs, satisfies_identity, Identity};
use quandle::{
    check_property, congruence_closure, has_property, is_isomorphic, parse_identity, quotient,
    standard_congruence, verify_quandle, Catalog, CongruenceKind, Property, Quandle, Term,
};

use common::*;

fn catalog5() -> &'static [Catalog] {
    static C: OnceLock<Vec<Catalog>> = OnceLock::new();
    C.get_or_init(|| catalogs(5))
}

fn catalog6() -> &'static [Catalog] {
    static C: OnceLock<Vec<Catalog>> = OnceLock::new();
    C.get_or_init(|| catalogs(6))
}

fn all5() -> Vec<Quandle> {
    all_up_to(catalog5(), 5)
}

fn medial_exhaustive(q: &Quandle) -> bool {
    let n = q.order();
    (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| (0..n).all(|w| q.op(q.op(x, y), q.op(z, w)) == q.op(q.op(x, z), q.op(y, w))))
        })
    })
}

// --- core -----------------------------------------------------------------

#[test]
fn left_translations_are_automorphisms() {
    for q in all_up_to(catalog6(), 6) {
        for a in 0..q.order() {
            assert!(q.is_homomorphism(&q, q.row(a)), "L_{a} of\n{q}");
        }
    }
}

#[test]
fn catalog_entries_are_quandles() {
    for q in all_up_to(catalog6(), 6) {
        assert!(verify_quandle(&q.rows()).unwrap().is_ok());
    }
}

#[test]
fn two_reductive_implies_medial() {
    for q in all_up_to(catalog6(), 6) {
        if has_property(&q, Property::TwoReductive) {
            assert!(has_property(&q, Property::Medial), "{q}");
        }
    }
}

#[test]
fn medial_check_matches_exhaustive_definition() {
    for q in all_up_to(catalog6(), 6) {
        let check = check_property(&q, Property::Medial);
        assert_eq!(check.holds, medial_exhaustive(&q), "{q}");
        if !check.holds {
            let [x, y, z, w] = check.witness[..] else { panic!("witness shape") };
            assert_ne!(q.op(q.op(x, y), q.op(z, w)), q.op(q.op(x, z), q.op(y, w)));
        }
    }
}

#[test]
fn power_component_counts() {
    for q in all_up_to(catalog5(), 4) {
        let c = q.components().block_count();
        let sq = q.direct_power(2).unwrap();
        if has_property(&q, Property::Latin) {
            assert_eq!(sq.components().block_count(), c * c, "{q}");
        }
        if has_property(&q, Property::Trivial) {
            assert_eq!(sq.components().block_count(), q.order().pow(2));
        }
    }
}

#[test]
fn generated_subquandles_divide_connected_medial_orders() {
    for q in with_property(catalog5(), 5, Property::Connected) {
        if !has_property(&q, Property::Medial) {
            continue;
        }
        let n = q.order();
        for mask in 1u32..1 << n {
            let seeds: Vec<usize> = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
            let sub = q.generated_subquandle(&seeds);
            assert_eq!(n % sub.len(), 0, "{seeds:?} in\n{q}");
        }
    }
}

// --- terms ----------------------------------------------------------------

#[test]
fn identity_holds_iff_pairs_reflexive() {
    let ids = [
        Identity::mediality(),
        Identity::two_reductivity(),
        Identity::involutory(),
        parse_identity("x*(y*z) = y*(x*z)").unwrap(),
    ];
    for q in all5() {
        assert!(satisfies_identity(&q, &Identity::idempotence()).holds);
        for id in &ids {
            let reflexive = instantiate_identity_pairs(&q, std::slice::from_ref(id))
                .iter()
                .all(|(a, b)| a == b);
            assert_eq!(satisfies_identity(&q, id).holds, reflexive, "{id} on\n{q}");
        }
    }
}

fn term(depth: u32) -> impl Strategy<Value = Term> {
    let leaf = (0usize..4).prop_map(Term::Var);
    leaf.prop_recursive(depth, 32, 2, |inner| {
        (inner.clone(), inner).prop_map(|(l, r)| Term::op(l, r))
    })
}

fn render(t: &Term) -> String {
    match t {
        Term::Var(v) => ["x", "y", "z", "w"][*v].to_string(),
        Term::Op(l, r) => format!("({}*{})", render(l), render(r)),
    }
}

proptest! {
    #[test]
    fn identity_print_parse_is_stable(l in term(4), r in term(4)) {
        let src = format!("{} = {}", render(&l), render(&r));
        let once = parse_identity(&src).unwrap();
        let printed = once.to_string();
        let twice = parse_identity(&printed).unwrap();
        prop_assert_eq!(&twice, &once);
        prop_assert_eq!(twice.to_string(), printed);
    }

    #[test]
    fn identity_semantics_survive_reprinting(l in term(3), r in term(3), pick in 0usize..22) {
        let q = &catalog5()[4].entries()[pick].quandle;
        let id = parse_identity(&format!("{} = {}", render(&l), render(&r))).unwrap();
        let again = parse_identity(&id.to_string()).unwrap();
        prop_assert_eq!(satisfies_identity(q, &id), satisfies_identity(q, &again));
    }
}

// --- isomorphism ------------------------------------------------------------

fn relabeled(q: &Quandle, seed: &[usize]) -> (Quandle, Vec<usize>) {
    // seed is a permutation of 0..k, k >= n; keep the relative order of 0..n
    let perm: Vec<usize> = {
        let kept: Vec<usize> = seed.iter().copied().filter(|&x| x < q.order()).collect();
        let mut p = vec![0; q.order()];
        for (i, &x) in kept.iter().enumerate() {
            p[i] = x;
        }
        p
    };
    (q.relabel(&perm), perm)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn iso_invariant_under_relabeling(
        n in 1usize..=5,
        pick in any::<prop::sample::Index>(),
        seed in Just((0..6).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let cat = &catalog5()[n - 1];
        let q = &cat.entries()[pick.index(cat.len())].quandle;
        let (r, _) = relabeled(q, &seed);
        let f = is_isomorphic(q, &r).expect("relabeled copy is isomorphic");
        prop_assert!(q.is_homomorphism(&r, &f));
        let g = is_isomorphic(&r, q).expect("symmetric");
        prop_assert!(r.is_homomorphism(q, &g));
        prop_assert!(is_isomorphic(q, q).is_some());
        prop_assert_eq!(quandle::canonical_form(q), quandle::canonical_form(&r));
    }
}

#[test]
fn distinct_catalog_entries_are_not_isomorphic() {
    for cat in catalog5() {
        let qs: Vec<&Quandle> = cat.quandles().collect();
        for (i, a) in qs.iter().enumerate() {
            for b in &qs[i + 1..] {
                assert!(is_isomorphic(a, b).is_none());
            }
        }
    }
}

// --- congruence -----------------------------------------------------------

#[test]
fn standard_quotients_satisfy_their_identities() {
    for q in all_up_to(catalog6(), 6) {
        let m = standard_congruence(&q, &CongruenceKind::Medial);
        let (qm, _) = quotient(&q, &m).unwrap();
        assert!(has_property(&qm, Property::Medial), "{q}");
        let g = standard_congruence(&q, &CongruenceKind::TwoReductive);
        let (qg, _) = quotient(&q, &g).unwrap();
        assert!(has_property(&qg, Property::TwoReductive), "{q}");
        if has_property(&q, Property::Connected) {
            assert_eq!(qg.order(), 1);
        }
    }
}

#[test]
fn quotients_below_components_keep_component_count() {
    for q in all5() {
        let kc = standard_congruence(&q, &CongruenceKind::Components);
        assert_eq!(kc.block_count(), q.components().block_count());
        for kind in [CongruenceKind::Medial, CongruenceKind::TwoReductive] {
            let alpha = standard_congruence(&q, &kind);
            assert!(alpha.refines(&kc), "{kind:?} on\n{q}");
            let (r, _) = quotient(&q, &alpha).unwrap();
            assert_eq!(r.components().block_count(), kc.block_count());
        }
    }
}

#[test]
fn closure_is_idempotent_and_division_stable() {
    for q in all5() {
        let n = q.order();
        for a in 0..n {
            for b in a + 1..n {
                let p = congruence_closure(&q, &[(a, b)]);
                assert_eq!(congruence_closure(&q, &p.generating_pairs()), p);
                for x in 0..n {
                    for y in (0..n).filter(|&y| p.related(x, y)) {
                        for c in 0..n {
                            for d in (0..n).filter(|&d| p.related(c, d)) {
                                assert!(
                                    p.related(q.left_div(x, c), q.left_div(y, d)),
                                    "seed ({a},{b}) on\n{q}"
                                );
                                assert!(p.related(q.op(x, c), q.op(y, d)));
                            }
                        }
                    }
                }
            }
        }
    }
}

// --- mesh -----------------------------------------------------------------

#[test]
fn composed_meshes_are_medial_with_group_components() {
    let mut meshes: Vec<_> = general_meshes().into_iter().map(|(_, m)| m).collect();
    meshes.extend(
        with_property(catalog5(), 5, Property::TwoReductive)
            .iter()
            .map(|q| decompose_two_reductive(q).unwrap().mesh),
    );
    for m in meshes {
        let (q, labels) = m.to_quandle().unwrap();
        assert!(has_property(&q, Property::Medial));
        let comps = q.components();
        let expected: BTreeSet<Vec<usize>> =
            (0..m.component_count()).map(|i| labels.component_range(i).collect()).collect();
        let got: BTreeSet<Vec<usize>> = comps.blocks().iter().cloned().collect();
        assert_eq!(got, expected);
        if m.is_two_reductive_shape() {
            for block in comps.blocks() {
                assert!(q.is_trivial_subset(block));
            }
        }
    }
}

#[test]
fn decompositions_have_zero_phi_and_diagonal() {
    for q in with_property(catalog6(), 6, Property::TwoReductive) {
        let m = decompose_two_reductive(&q).unwrap().mesh;
        for i in 0..m.component_count() {
            assert_eq!(m.constant(i, i), 0);
            for j in 0..m.component_count() {
                assert!(m.phi(i, j).is_zero());
            }
        }
    }
}

proptest! {
    #[test]
    fn extended_group_homs_are_additive(
        g_factors in prop::sample::select(vec![vec![1], vec![2], vec![3], vec![4], vec![2, 2], vec![6], vec![2, 4]]),
        h_factors in prop::sample::select(vec![vec![2], vec![3], vec![4], vec![2, 2], vec![6], vec![2, 6]]),
        raw_targets in prop::collection::vec(0usize..12, 3),
        raw_gens in prop::collection::vec(0usize..8, 3),
    ) {
        let g = AbelianGroup::from_factors(&g_factors);
        let h = AbelianGroup::from_factors(&h_factors);
        let gens: Vec<usize> = raw_gens.iter().map(|x| x % g.order()).collect();
        let targets: Vec<usize> = raw_targets.iter().map(|x| x % h.order()).collect();
        prop_assume!(g.generates(&gens));
        if let Some(f) = group_hom_extends(&g, &h, &gens, &targets).unwrap() {
            for a in 0..g.order() {
                for b in 0..g.order() {
                    prop_assert_eq!(f.apply(g.add(a, b)), h.add(f.apply(a), f.apply(b)));
                }
            }
            for (x, y) in gens.iter().zip(&targets) {
                prop_assert_eq!(f.apply(*x), *y);
            }
        }
    }
}

// --- hom ------------------------------------------------------------------

#[test]
fn homs_respect_components() {
    let all = all_up_to(catalog5(), 4);
    for s in &all {
        let sc = s.components();
        for t in &all {
            let tc = t.components();
            for h in enumerate_homs(s, t).unwrap().records() {
                for block in sc.blocks() {
                    let images: BTreeSet<usize> = block.iter().map(|&x| tc.block_of(h.apply(x))).collect();
                    assert_eq!(images.len(), 1);
                }
            }
        }
    }
}

#[test]
fn triv_and_constants_are_subquandles() {
    let all = all_up_to(catalog5(), 4);
    for s in &all {
        for t in all.iter().filter(|t| has_property(t, Property::Medial)) {
            let (h, homs) = hom_quandle(s, t).unwrap();
            let triv = triv_homs(s, t).unwrap();
            let idx: Vec<usize> = triv.homs.records().iter().map(|r| homs.index_of(&r.image).unwrap()).collect();
            let sub = h.subquandle(&idx).expect("Triv is closed");
            assert_eq!(sub.order(), idx.len());

            let consts = homs.constants();
            let c = h.subquandle(&consts).expect("constants are closed");
            assert!(is_isomorphic(&c, t).is_some());
            for (v, &i) in consts.iter().enumerate() {
                assert_eq!(homs.records()[i], HomRecord::constant(s.order(), v));
            }
        }
    }
}

#[test]
fn connected_components_force_trivial_images() {
    let targets = with_property(catalog5(), 5, Property::TwoReductive);
    for s in all5() {
        let comps = s.components();
        if !comps.blocks().iter().all(|b| {
            s.subquandle(b).is_some_and(|sub| has_property(&sub, Property::Connected))
        }) {
            continue;
        }
        for t in &targets {
            let all = enumerate_homs(&s, t).unwrap();
            let triv = triv_homs(&s, t).unwrap();
            assert_eq!(all.records(), triv.homs.records());
        }
    }
}

#[test]
fn base_point_choices_are_realized_uniquely() {
    let targets = with_property(catalog5(), 5, Property::TwoReductive);
    for s in all_up_to(catalog5(), 4) {
        let sc = s.components();
        let bases = sc.representatives();
        for t in &targets {
            let tc = t.components();
            let homs = enumerate_homs(&s, t).unwrap();
            let count = count_homs_two_reductive(&s, t).unwrap();
            // quotient components map bijectively onto source components
            let gamma = standard_congruence(&s, &CongruenceKind::TwoReductive);
            let (sq, proj) = quotient(&s, &gamma).unwrap();
            let qc = sq.components();
            let comp_of_base: Vec<usize> = bases.iter().map(|&b| qc.block_of(proj[b])).collect();
            for m in count.maps.iter().filter(|m| m.delta) {
                let mut seen = BTreeSet::new();
                for h in homs.records() {
                    let picks: Vec<usize> = bases.iter().map(|&b| h.apply(b)).collect();
                    let selected: Vec<usize> = picks.iter().map(|&p| tc.block_of(p)).collect();
                    let wanted: Vec<usize> = comp_of_base.iter().map(|&c| m.g[c]).collect();
                    if selected == wanted {
                        assert!(seen.insert(picks), "two records share base-point images");
                    }
                }
                let expected: usize = comp_of_base.iter().map(|&c| tc.block(m.g[c]).len()).product();
                assert_eq!(seen.len(), expected, "δ_g = 1 but not every choice realized\n{s}->\n{t}");
            }
        }
    }
}

#[test]
fn trivial_images_are_those_with_vanishing_constants() {
    for t in with_property(catalog5(), 5, Property::TwoReductive) {
        let d = decompose_two_reductive(&t).unwrap();
        for s in all_up_to(catalog5(), 4) {
            let bases = s.components().representatives();
            let triv = triv_homs(&s, &t).unwrap();
            let homs = enumerate_homs(&s, &t).unwrap();
            for h in homs.records() {
                let g: Vec<usize> = bases.iter().map(|&b| d.labels[h.apply(b)].0).collect();
                let vanishing = g.iter().all(|&i| g.iter().all(|&j| d.mesh.constant(i, j) == 0));
                assert_eq!(triv.homs.contains(&h.image), vanishing, "{h:?}\n{s}->\n{t}");
            }
            // maps landing inside one component are always trivial
            for comp in t.components().blocks() {
                for h in homs.records() {
                    if h.image.iter().all(|x| comp.contains(x)) {
                        assert!(triv.homs.contains(&h.image));
                    }
                }
            }
        }
    }
}

// --- enumerate ------------------------------------------------------------

#[test]
fn catalog_entries_carry_correct_flags() {
    for cat in catalog6() {
        for e in cat.entries() {
            for p in [Property::Medial, Property::TwoReductive, Property::Latin, Property::Connected] {
                assert_eq!(e.has(p), has_property(&e.quandle, p));
            }
            let mut sizes = e.quandle.components().size_profile();
            sizes.sort();
            assert_eq!(e.components, sizes);
        }
    }
}
