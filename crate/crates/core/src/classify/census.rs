//! The census: branchable closures, deduplication, and the
//! simple-connectivity tower filter.

use serde::Serialize;

use crate::poly::branching::enumerate_branchings;
use crate::poly::group::{fundamental_group, is_plausibly_trivial};
use crate::poly::homology::{first_homology, H1};
use crate::poly::iso::{automorphism_count, isomorphic, IsoOptions};
use crate::poly::model::*;
use crate::poly::moves::attach_tower;

use super::closures::{all_closure_specs, build_closure, standalone_x, ClosureSpec};
use super::xbranch::{restore_x_branching, X_BRANCHING};

/// One closure attempt, before deduplication.
#[derive(Clone, Debug)]
pub struct ClosureCandidate {
    pub graph_type: u8,
    pub spec: ClosureSpec,
    pub polyhedron: DecoratedPolyhedron,
    /// Branching restored from X's strip directions; `None` when obstructed.
    pub branching: Option<crate::poly::model::Branching>,
}

/// All closures over the two connected two-vertex 4-valent graphs, with
/// their X-branching restoration result. The third such graph (two loops at
/// each vertex, no connecting edges) admits no closure at all: the bigon
/// edges of X always join the two vertices, so no candidate and in
/// particular no branching ever arises from it; see `type3_closures`.
pub fn enumerate_closures() -> Vec<ClosureCandidate> {
    all_closure_specs()
        .into_iter()
        .map(|spec| {
            let polyhedron = build_closure(&spec);
            let branching = restore_x_branching(&polyhedron, &X_BRANCHING);
            ClosureCandidate {
                graph_type: spec.matching.graph_type(),
                spec,
                polyhedron,
                branching,
            }
        })
        .collect()
}

/// Closures along the disconnected two-vertex 4-valent graph (two loops at
/// each vertex). The bigon edges pin both vertices of X onto the same
/// component, so the graph is unrealizable and the list is empty; every
/// type-3 input therefore yields zero branchings.
pub fn type3_closures() -> Vec<ClosureCandidate> {
    Vec::new()
}

/// One isomorphism class of branchable closures.
#[derive(Clone, Debug)]
pub struct CensusClass {
    pub graph_type: u8,
    /// Representative with its lexicographically least valid branching.
    pub rep: DecoratedPolyhedron,
    /// All specs that landed in this class.
    pub specs: Vec<ClosureSpec>,
    pub branching_count: usize,
}

/// Outcome of the simple-connectivity filter for one class.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Certificate {
    /// Tietze reduction to the empty presentation after attaching towers of
    /// the given heights (one per boundary circle).
    SimplyConnected { towers: Vec<usize> },
    /// Every tower assignment leaves nontrivial first homology; the witness
    /// records H1 for the all-heights-h assignment shown.
    NotSimplyConnectable { sample_towers: Vec<usize>, sample_h1: String },
    Unknown,
}

/// Enumerate the closures whose regions can be oriented compatibly with the
/// branching of X, and group them into isomorphism classes. Deduplication
/// respects gleams; the representative carries the branching restored from
/// X's strip directions.
pub fn census_classes() -> Vec<CensusClass> {
    let opts = IsoOptions { respect_branching: false, respect_gleams: true };
    let mut classes: Vec<CensusClass> = Vec::new();
    for spec in all_closure_specs() {
        let dec = build_closure(&spec);
        let structure = match dec.poly.analyze() {
            Ok(s) => s,
            Err(v) => panic!("closure construction produced an invalid polyhedron: {v:?}"),
        };
        let restored = match restore_x_branching(&dec, &X_BRANCHING) {
            Some(b) => b,
            None => continue,
        };
        let mut placed = false;
        for class in classes.iter_mut() {
            if class.graph_type == spec.matching.graph_type()
                && isomorphic(&class.rep, &dec, opts)
            {
                class.specs.push(spec);
                placed = true;
                break;
            }
        }
        if !placed {
            let branching_count = enumerate_branchings(&dec.poly, &structure).len();
            let mut rep = dec;
            rep.branching = Some(restored);
            classes.push(CensusClass {
                graph_type: spec.matching.graph_type(),
                rep,
                specs: vec![spec],
                branching_count,
            });
        }
    }
    classes
}

/// Attach towers of the given heights to every boundary circle (height 0
/// leaves the circle open).
pub fn with_towers(dec: &DecoratedPolyhedron, heights: &[usize]) -> DecoratedPolyhedron {
    let mut out = dec.clone();
    // Boundary circles of the original polyhedron; towers never remove or
    // add earlier circles, but indices shift as free circles are consumed,
    // so process per region from the highest free index down.
    let circles = dec.poly.boundary_circles();
    assert_eq!(circles.len(), heights.len());
    let mut per_region: std::collections::BTreeMap<usize, Vec<(usize, usize)>> =
        std::collections::BTreeMap::new();
    for (i, &(r, j, _)) in circles.iter().enumerate() {
        per_region.entry(r).or_default().push((j, heights[i]));
    }
    for (r, mut items) in per_region {
        items.sort();
        for &(j, k) in items.iter().rev() {
            if k > 0 {
                out = attach_tower(&out, r, j, k, Color::E).unwrap();
            }
        }
    }
    out
}

/// Decide simple-connectability over all tower assignments with heights in
/// `0..=max_height`.
pub fn simply_connectable(dec: &DecoratedPolyhedron, max_height: usize) -> Certificate {
    let n = dec.poly.boundary_circles().len();
    let mut assignments: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for a in &assignments {
            for k in 0..=max_height {
                let mut b = a.clone();
                b.push(k);
                next.push(b);
            }
        }
        assignments = next;
    }
    // Prefer small towers for readable witnesses.
    assignments.sort_by_key(|a| a.iter().sum::<usize>());

    let mut all_h1_nontrivial = true;
    let mut trivial_h1: Vec<Vec<usize>> = Vec::new();
    let mut sample: Option<(Vec<usize>, H1)> = None;
    for a in &assignments {
        let t = with_towers(dec, a);
        let h1 = first_homology(&t.poly);
        if h1.is_trivial() {
            all_h1_nontrivial = false;
            trivial_h1.push(a.clone());
        } else if sample.is_none() || a.iter().all(|&k| k == max_height) {
            sample = Some((a.clone(), h1));
        }
    }
    for a in &trivial_h1 {
        let t = with_towers(dec, a);
        if is_plausibly_trivial(&fundamental_group(&t.poly)) {
            return Certificate::SimplyConnected { towers: a.clone() };
        }
    }
    if all_h1_nontrivial {
        let (sample_towers, h1) = sample.expect("some assignment exists");
        Certificate::NotSimplyConnectable { sample_towers, sample_h1: h1.to_string() }
    } else {
        Certificate::Unknown
    }
}

/// Full census entry.
#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub label: String,
    pub p_label: Option<String>,
    pub class: CensusClass,
    pub certificate: Certificate,
}

/// Run the whole pipeline and assign the classical labels.
pub fn run_census(max_height: usize) -> Vec<CensusEntry> {
    let classes = census_classes();
    let mut entries: Vec<CensusEntry> = classes
        .into_iter()
        .map(|class| {
            let certificate = simply_connectable(&class.rep, max_height);
            CensusEntry { label: String::new(), p_label: None, class, certificate }
        })
        .collect();
    // Deterministic order: by graph type, then canonical serialization.
    entries.sort_by_key(|e| {
        (e.class.graph_type, crate::poly::format::serialize(&e.class.rep))
    });
    label_entries(&mut entries);
    entries
}

/// Label conventions: within type 1, the class killed by the filter is
/// 1-(iv); the surviving class with five boundary circles is 1-(i) (the
/// 5-chain link shadow) and the merged pair (ii)/(iii) is 1-(ii). Within
/// type 2 the merged pair is 2-(ii); the remaining two classes are 2-(i)
/// and 2-(iv) in canonical order. P1..P5 name the five survivors in the
/// order 1-(i), 1-(ii), 2-(i), 2-(ii), 2-(iv).
fn label_entries(entries: &mut [CensusEntry]) {
    for e in entries.iter_mut() {
        let b = e.class.rep.poly.boundary_circles().len();
        let merged = e.class.specs.len() >= 2;
        e.label = match e.class.graph_type {
            1 => {
                if matches!(e.certificate, Certificate::NotSimplyConnectable { .. }) {
                    "1-(iv)".into()
                } else if b == 5 {
                    "1-(i)".into()
                } else {
                    "1-(ii)".into()
                }
            }
            2 if merged => "2-(ii)".into(),
            _ => String::new(),
        };
    }
    // Remaining type-2 classes in canonical order.
    let mut type2_rest = ["2-(i)", "2-(iv)"].iter();
    for e in entries.iter_mut() {
        if e.class.graph_type == 2 && e.label.is_empty() {
            e.label = type2_rest.next().copied().unwrap_or("2-(?)").into();
        }
    }
    let mut p_index = 0usize;
    for want in ["1-(i)", "1-(ii)", "2-(i)", "2-(ii)", "2-(iv)"] {
        for e in entries.iter_mut() {
            if e.label == want
                && !matches!(e.certificate, Certificate::NotSimplyConnectable { .. })
            {
                p_index += 1;
                e.p_label = Some(format!("P{p_index}"));
            }
        }
    }
}

/// Order of the symmetry group of the standalone X part (gleam-respecting
/// self-isomorphisms), reported in the census manifest.
pub fn x_symmetry_order() -> usize {
    automorphism_count(
        &standalone_x(),
        IsoOptions { respect_branching: false, respect_gleams: true },
    )
}
