//! The closure census: enumeration, the branching filter, the
//! simple-connectivity filter, deduplication, and labels.

use shadowcalc::classify::census::{
    census_classes, enumerate_closures, run_census, type3_closures, x_symmetry_order,
};
use shadowcalc::classify::closures::{all_closure_specs, standalone_x};
use shadowcalc::classify::xbranch::{restore_x_branching, X_BRANCHING};
use shadowcalc::classify::Certificate;
use shadowcalc::poly::branching::{enumerate_branchings, is_valid_branching};
use shadowcalc::poly::format::serialize;
use shadowcalc::poly::iso::{isomorphic, IsoOptions};

#[test]
fn closure_specs_are_exhaustive() {
    let specs = all_closure_specs();
    assert_eq!(specs.len(), 108);
    let t1 = specs.iter().filter(|s| s.matching.graph_type() == 1).count();
    let t2 = specs.iter().filter(|s| s.matching.graph_type() == 2).count();
    assert_eq!((t1, t2), (72, 36));
}

#[test]
fn every_closure_is_a_valid_polyhedron() {
    for cand in enumerate_closures() {
        let structure = cand.polyhedron.poly.analyze().expect("closure must be valid");
        // A restored branching, when present, is a valid branching.
        if let Some(b) = &cand.branching {
            assert!(is_valid_branching(&cand.polyhedron.poly, &structure, b));
        }
    }
}

#[test]
fn branching_filter_leaves_four_candidates_per_type() {
    let cands = enumerate_closures();
    let surviving = |t: u8| {
        cands
            .iter()
            .filter(|c| c.graph_type == t && c.branching.is_some())
            .count()
    };
    assert_eq!(surviving(1), 4);
    assert_eq!(surviving(2), 4);
}

#[test]
fn type3_yields_no_candidates_and_no_branchings() {
    let cands = type3_closures();
    assert!(cands.is_empty());
    assert!(cands.iter().all(|c| c.branching.is_none()));
}

#[test]
fn standalone_x_is_the_five_boundary_survivor() {
    let x = standalone_x();
    assert!(restore_x_branching(&x, &X_BRANCHING).is_some());
    assert_eq!(x.poly.boundary_circles().len(), 5);
    // Its branchings include the one restored from X's strip directions.
    let structure = x.poly.analyze().unwrap();
    let restored = restore_x_branching(&x, &X_BRANCHING).unwrap();
    assert!(enumerate_branchings(&x.poly, &structure).contains(&restored));
}

#[test]
fn census_has_three_classes_per_type_with_merged_pairs() {
    let classes = census_classes();
    assert_eq!(classes.len(), 6);
    for t in [1u8, 2] {
        let of_type: Vec<_> = classes.iter().filter(|c| c.graph_type == t).collect();
        assert_eq!(of_type.len(), 3);
        // Exactly one class per type is a merged homeomorphic pair.
        let merged = of_type.iter().filter(|c| c.specs.len() == 2).count();
        let single = of_type.iter().filter(|c| c.specs.len() == 1).count();
        assert_eq!((merged, single), (1, 2));
    }
}

#[test]
fn full_census_matches_the_classical_list() {
    let entries = run_census(3);
    assert_eq!(entries.len(), 6);
    let labels: Vec<&str> = entries.iter().map(|e| e.label.as_str()).collect();
    assert_eq!(labels, vec!["1-(iv)", "1-(ii)", "1-(i)", "2-(ii)", "2-(i)", "2-(iv)"]);

    // 1-(iv) is eliminated with a nontrivial H1 certificate.
    let iv = entries.iter().find(|e| e.label == "1-(iv)").unwrap();
    match &iv.certificate {
        Certificate::NotSimplyConnectable { sample_towers, sample_h1 } => {
            assert_eq!(sample_towers.len(), iv.class.rep.poly.boundary_circles().len());
            assert!(!sample_h1.is_empty() && sample_h1 != "0");
        }
        other => panic!("1-(iv) must be eliminated, got {other:?}"),
    }

    // Exactly five survivors P1..P5, all simply connectable.
    let survivors: Vec<_> = entries.iter().filter(|e| e.p_label.is_some()).collect();
    assert_eq!(survivors.len(), 5);
    let ps: Vec<&str> = survivors.iter().map(|e| e.p_label.as_deref().unwrap()).collect();
    assert_eq!(ps, vec!["P2", "P1", "P4", "P3", "P5"]);
    for e in &survivors {
        assert!(matches!(e.certificate, Certificate::SimplyConnected { .. }));
    }

    // P1 is the five-boundary-circle class (the 5-chain link shadow).
    let p1 = survivors.iter().find(|e| e.p_label.as_deref() == Some("P1")).unwrap();
    assert_eq!(p1.class.rep.poly.boundary_circles().len(), 5);
    assert_eq!(p1.label, "1-(i)");

    // The two remaining type-2 survivors have equally many boundary circles,
    // matching the fact that their exteriors are homeomorphic.
    let b: Vec<usize> = ["P3", "P5"]
        .iter()
        .map(|p| {
            survivors
                .iter()
                .find(|e| e.p_label.as_deref() == Some(*p))
                .unwrap()
                .class
                .rep
                .poly
                .boundary_circles()
                .len()
        })
        .collect();
    assert_eq!(b, vec![4, 4]);
}

#[test]
fn census_entries_are_pairwise_non_isomorphic() {
    let entries = run_census(3);
    let opts = IsoOptions { respect_branching: false, respect_gleams: true };
    for i in 0..entries.len() {
        for j in (i + 1)..entries.len() {
            assert!(
                !isomorphic(&entries[i].class.rep, &entries[j].class.rep, opts),
                "census entries {} and {} are isomorphic",
                entries[i].label,
                entries[j].label
            );
        }
    }
}

#[test]
fn census_is_deterministic() {
    let a: Vec<String> = run_census(3)
        .iter()
        .map(|e| format!("{} {:?} {}", e.label, e.p_label, serialize(&e.class.rep)))
        .collect();
    let b: Vec<String> = run_census(3)
        .iter()
        .map(|e| format!("{} {:?} {}", e.label, e.p_label, serialize(&e.class.rep)))
        .collect();
    assert_eq!(a, b);
}

#[test]
fn every_census_entry_contains_x() {
    // Witness: each representative is a closure of X (built from a stored
    // spec), has exactly two vertices, and its singular set is connected
    // with the bigon present.
    for e in run_census(3) {
        assert_eq!(e.class.rep.poly.vertices.len(), 2);
        assert!(!e.class.rep.poly.vertices.iter().any(|v| v.ii3));
        let gleams = e.class.rep.gleams.as_ref().unwrap();
        assert!(gleams.values().any(|&g| g == shadowcalc::poly::model::HalfInt::from_int(1)));
        assert!(restore_x_branching(&e.class.rep, &X_BRANCHING).is_some());
    }
}

#[test]
fn x_symmetry_group_has_order_eight() {
    // Frozen from an exhaustive automorphism search on the standalone X.
    assert_eq!(x_symmetry_order(), 8);
}
