//! Hand-checked fixtures: basic surfaces, the standalone X part, towers, and
//! the X replacement move.

use shadowcalc::classify::standalone_x;
use shadowcalc::poly::branching::{enumerate_branchings, is_valid_branching};
use shadowcalc::poly::group::{fundamental_group, is_plausibly_trivial};
use shadowcalc::poly::homology::first_homology;
use shadowcalc::poly::iso::{isomorphic, IsoOptions};
use shadowcalc::poly::model::*;
use shadowcalc::poly::moves::{attach_tower, replace_vertex_with_x, replace_x_with_vertex};

fn closed_surface(genus: u32, free: Vec<Color>) -> SimplePolyhedron {
    SimplePolyhedron {
        vertices: vec![],
        edges: vec![],
        regions: vec![Region { genus, circuits: vec![], free }],
    }
}

#[test]
fn disk_invariants() {
    let disk = closed_surface(0, vec![Color::F]);
    disk.validate().unwrap();
    assert_eq!(disk.euler_characteristic(), 1);
    let h1 = first_homology(&disk);
    assert!(h1.is_trivial());
    assert!(is_plausibly_trivial(&fundamental_group(&disk)));
}

#[test]
fn annulus_invariants() {
    let annulus = closed_surface(0, vec![Color::E, Color::F]);
    annulus.validate().unwrap();
    assert_eq!(annulus.euler_characteristic(), 0);
    let h1 = first_homology(&annulus);
    assert_eq!((h1.rank, h1.torsion.as_slice()), (1, &[][..]));
}

#[test]
fn torus_invariants() {
    let torus = closed_surface(1, vec![]);
    torus.validate().unwrap();
    assert_eq!(torus.euler_characteristic(), 0);
    let h1 = first_homology(&torus);
    assert_eq!((h1.rank, h1.torsion.as_slice()), (2, &[][..]));
}

/// Sphere built from a circle edge with identity monodromy: two disks and a
/// collar annulus with a free boundary.
fn sphere_with_collar() -> SimplePolyhedron {
    let pass = |germ: u8| vec![Passage { edge: 0, germ, forward: true }];
    SimplePolyhedron {
        vertices: vec![],
        edges: vec![Edge::circle([0, 1, 2])],
        regions: vec![
            Region { genus: 0, circuits: vec![pass(0)], free: vec![] },
            Region { genus: 0, circuits: vec![pass(2)], free: vec![] },
            Region { genus: 0, circuits: vec![pass(1)], free: vec![Color::F] },
        ],
    }
}

#[test]
fn circle_edge_sphere() {
    let p = sphere_with_collar();
    p.validate().unwrap();
    assert_eq!(p.euler_characteristic(), 2);
    assert!(first_homology(&p).is_trivial());
    assert!(is_plausibly_trivial(&fundamental_group(&p)));
    // Branchings exist: flip one disk against the other regions.
    let s = p.analyze().unwrap();
    let branchings = enumerate_branchings(&p, &s);
    assert!(!branchings.is_empty());
    for b in &branchings {
        assert!(is_valid_branching(&p, &s, b));
    }
}

#[test]
fn standalone_x_shape() {
    let x = standalone_x();
    let structure = x.poly.analyze().unwrap();
    assert_eq!(x.poly.vertices.len(), 2);
    assert_eq!(x.poly.edges.len(), 4);
    // Bigon plus five annuli.
    assert_eq!(x.poly.regions.len(), 6);
    assert_eq!(x.poly.euler_characteristic(), -1);
    assert_eq!(x.poly.boundary_circles().len(), 5);
    let bigons: Vec<usize> = x
        .poly
        .regions
        .iter()
        .enumerate()
        .filter(|(_, r)| r.free.is_empty())
        .map(|(i, _)| i)
        .collect();
    assert_eq!(bigons.len(), 1);
    assert_eq!(x.gleams.as_ref().unwrap()[&bigons[0]], HalfInt::from_int(1));
    // The six boundary strips: every non-bigon region is an annulus.
    for (ri, r) in x.poly.regions.iter().enumerate() {
        if ri != bigons[0] {
            assert_eq!((r.genus, r.circuits.len(), r.free.len()), (0, 1, 1));
        }
    }
    let branchings = enumerate_branchings(&x.poly, &structure);
    assert!(!branchings.is_empty());
}

#[test]
fn x_collapse_and_expand_roundtrip() {
    let x = standalone_x();
    let structure = x.poly.analyze().unwrap();
    let branchings = enumerate_branchings(&x.poly, &structure);
    let mut dec = x.clone();
    dec.branching = Some(branchings[0].clone());
    let bigon = dec.poly.regions.iter().position(|r| r.free.is_empty()).unwrap();

    let collapsed = replace_x_with_vertex(&dec, bigon).unwrap();
    assert_eq!(collapsed.poly.vertices.len(), 1);
    assert!(collapsed.poly.vertices[0].ii3);
    assert_eq!(collapsed.poly.edges.len(), 2);
    assert_eq!(collapsed.poly.regions.len(), 5);
    collapsed.poly.validate().unwrap();

    let expanded = replace_vertex_with_x(&collapsed, 0).unwrap();
    expanded.poly.validate().unwrap();
    assert!(isomorphic(
        &expanded,
        &dec,
        IsoOptions { respect_branching: false, respect_gleams: true },
    ));
    // Branched round trip as well.
    assert!(isomorphic(
        &expanded,
        &dec,
        IsoOptions { respect_branching: true, respect_gleams: true },
    ));
}

#[test]
fn tower_on_x_boundary() {
    let x = standalone_x();
    let structure = x.poly.analyze().unwrap();
    let mut dec = x.clone();
    dec.branching = Some(enumerate_branchings(&x.poly, &structure)[0].clone());
    let (region, free_index, _) = dec.poly.boundary_circles()[0];
    let before_chi = dec.poly.euler_characteristic();
    let before_free = dec.poly.boundary_circles().len();
    let before_circles = dec.poly.edges.iter().filter(|e| e.is_circle()).count();
    for k in 1..=3usize {
        let t = attach_tower(&dec, region, free_index, k, Color::E).unwrap();
        let st = t.poly.analyze().unwrap();
        assert_eq!(t.poly.euler_characteristic(), before_chi + k as i64);
        assert_eq!(t.poly.boundary_circles().len(), before_free);
        assert_eq!(
            t.poly.edges.iter().filter(|e| e.is_circle()).count(),
            before_circles + k
        );
        // Region count grows by 2k: k disks and k bands.
        assert_eq!(t.poly.regions.len(), dec.poly.regions.len() + 2 * k);
        // The extended branching stays valid.
        assert!(is_valid_branching(&t.poly, &st, t.branching.as_ref().unwrap()));
    }
}

#[test]
fn iso_self_and_gleam_sensitivity() {
    let x = standalone_x();
    assert!(isomorphic(&x, &x, IsoOptions::default()));
    let mut y = x.clone();
    let bigon = y.poly.regions.iter().position(|r| r.free.is_empty()).unwrap();
    y.gleams.as_mut().unwrap().insert(bigon, HalfInt::from_int(-1));
    assert!(isomorphic(&x, &y, IsoOptions::default()));
    assert!(!isomorphic(
        &x,
        &y,
        IsoOptions { respect_gleams: true, respect_branching: false },
    ));
}
