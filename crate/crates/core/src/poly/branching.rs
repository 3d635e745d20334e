//! Branchings: per-region orientation choices subject to the edge condition.
//!
//! Each singular edge carries three germ bands. A region orientation induces a
//! direction on every band of its boundary; a branching is valid when at no
//! edge all three induced directions agree.

use super::model::*;
use super::validate::Structure;

/// Direction induced on band (edge, germ) by a branching: stored forward flag
/// flipped when the region's orientation is reversed.
pub fn induced_direction(
    structure: &Structure,
    branching: &Branching,
    edge: usize,
    germ: u8,
) -> bool {
    let bu = structure.band_use[&(edge, germ)];
    bu.forward == branching[bu.region]
}

/// Check the edge condition at a single edge.
pub fn edge_condition_holds(
    structure: &Structure,
    branching: &Branching,
    edge: usize,
) -> bool {
    let d0 = induced_direction(structure, branching, edge, 0);
    let d1 = induced_direction(structure, branching, edge, 1);
    let d2 = induced_direction(structure, branching, edge, 2);
    !(d0 == d1 && d1 == d2)
}

/// True when `branching` satisfies the edge condition at every edge.
pub fn is_valid_branching(
    poly: &SimplePolyhedron,
    structure: &Structure,
    branching: &Branching,
) -> bool {
    branching.len() == poly.regions.len()
        && (0..poly.edges.len()).all(|e| edge_condition_holds(structure, branching, e))
}

/// All valid branchings, in lexicographic order with `true` (keep stored
/// directions) before `false`.
pub fn enumerate_branchings(poly: &SimplePolyhedron, structure: &Structure) -> Vec<Branching> {
    let nr = poly.regions.len();
    // For each edge, the regions carrying its three bands and the stored
    // directions; an edge can be checked as soon as all three are assigned.
    let mut edge_bands: Vec<[(usize, bool); 3]> = Vec::with_capacity(poly.edges.len());
    for e in 0..poly.edges.len() {
        let mut bands = [(0usize, false); 3];
        for g in 0..3u8 {
            let bu = structure.band_use[&(e, g)];
            bands[g as usize] = (bu.region, bu.forward);
        }
        edge_bands.push(bands);
    }
    // Edges become checkable once their highest-region band is assigned.
    let mut check_at: Vec<Vec<usize>> = vec![Vec::new(); nr.max(1)];
    for (e, bands) in edge_bands.iter().enumerate() {
        if nr > 0 {
            let last = bands.iter().map(|&(r, _)| r).max().unwrap();
            check_at[last].push(e);
        }
    }

    let mut out = Vec::new();
    let mut signs = vec![true; nr];
    fn rec(
        depth: usize,
        nr: usize,
        signs: &mut Vec<bool>,
        edge_bands: &[[(usize, bool); 3]],
        check_at: &[Vec<usize>],
        out: &mut Vec<Branching>,
    ) {
        if depth == nr {
            out.push(signs.clone());
            return;
        }
        for sign in [true, false] {
            signs[depth] = sign;
            let ok = check_at[depth].iter().all(|&e| {
                let dirs: Vec<bool> = edge_bands[e]
                    .iter()
                    .map(|&(r, fwd)| fwd == signs[r])
                    .collect();
                !(dirs[0] == dirs[1] && dirs[1] == dirs[2])
            });
            if ok {
                rec(depth + 1, nr, signs, edge_bands, check_at, out);
            }
        }
    }
    if nr == 0 {
        return Vec::new();
    }
    rec(0, nr, &mut signs, &edge_bands, &check_at, &mut out);
    out
}
