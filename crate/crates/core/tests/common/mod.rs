#![allow(dead_code)]

use quandle::enumerate::{enumerate_quandles, Catalog};
use quandle::mesh::{AbelianGroup, AffineMesh};
use quandle::{Property, Quandle};

/// Catalogs of orders `1..=max`.
pub fn catalogs(max: usize) -> Vec<Catalog> {
    (1..=max).map(|n| enumerate_quandles(n).unwrap()).collect()
}

pub fn all_up_to(catalogs: &[Catalog], max: usize) -> Vec<Quandle> {
    catalogs
        .iter()
        .filter(|c| c.order() <= max)
        .flat_map(|c| c.quandles().cloned())
        .collect()
}

pub fn with_property(catalogs: &[Catalog], max: usize, p: Property) -> Vec<Quandle> {
    catalogs
        .iter()
        .filter(|c| c.order() <= max)
        .flat_map(|c| c.filter(p).quandles().cloned().collect::<Vec<_>>())
        .collect()
}

/// The unique connected quandle of order 3.
pub fn r3(order3: &Catalog) -> Quandle {
    let connected = order3.filter(Property::Connected);
    assert_eq!(connected.len(), 1);
    connected.entries()[0].quandle.clone()
}

/// The unique quandle of order 3 with two components.
pub fn q33(order3: &Catalog) -> Quandle {
    let two: Vec<&Quandle> = order3
        .quandles()
        .filter(|q| q.components().block_count() == 2)
        .collect();
    assert_eq!(two.len(), 1);
    two[0].clone()
}

/// Two-reductive mesh on `Z_n ⊔ Z_m` with both cross constants 1.
pub fn crossed_mesh(n: usize, m: usize) -> AffineMesh {
    AffineMesh::two_reductive(
        vec![AbelianGroup::cyclic(n), AbelianGroup::cyclic(m)],
        vec![vec![0, 1], vec![1, 0]],
    )
    .unwrap()
}

/// The crossed `Z2 ⊔ Z2` quandle.
pub fn f4a() -> Quandle {
    crossed_mesh(2, 2).to_quandle().unwrap().0
}

/// Connected Alexander mesh on `Z_n` with `φ = t·`.
pub fn alexander(n: usize, t: usize) -> AffineMesh {
    let phi = (0..n).map(|a| a * t % n).collect();
    AffineMesh::new(vec![AbelianGroup::cyclic(n)], vec![vec![phi]], vec![vec![0]]).unwrap()
}

/// Connected mesh on `Z2 × Z2` with `φ` the order-3 automorphism
/// `e1 ↦ e2, e2 ↦ e1 + e2`.
pub fn tetrahedral() -> AffineMesh {
    AffineMesh::new(
        vec![AbelianGroup::from_factors(&[2, 2])],
        vec![vec![vec![0, 2, 3, 1]]],
        vec![vec![0]],
    )
    .unwrap()
}

/// Hand-written meshes with nonzero `φ`.
pub fn general_meshes() -> Vec<(&'static str, AffineMesh)> {
    vec![
        ("Z3, phi=2", alexander(3, 2)),
        ("Z2xZ2, phi of order 3", tetrahedral()),
        ("Z5, phi=2", alexander(5, 2)),
        ("Z5, phi=3", alexander(5, 3)),
        ("Z5, phi=4", alexander(5, 4)),
    ]
}

/// Every subset of `0..n` closed under `▷`.
pub fn subquandles(q: &Quandle) -> Vec<Vec<usize>> {
    let n = q.order();
    (1u32..1 << n)
        .map(|mask| (0..n).filter(|&x| mask >> x & 1 == 1).collect::<Vec<_>>())
        .filter(|set| {
            let mut member = vec![false; n];
            for &x in set {
                member[x] = true;
            }
            set.iter().all(|&x| set.iter().all(|&y| member[q.op(x, y)]))
        })
        .collect()
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
