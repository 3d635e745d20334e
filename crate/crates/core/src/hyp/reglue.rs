//! Cutting the cover along the two geodesic pants and regluing.
//!
//! A pants here is a pair of face classes invariant under the deck
//! involution; cutting both pants frees eight tetrahedron-face slots, and a
//! regluing is a fresh involutive pairing of those slots. A regluing is
//! kept only when the result still has all edge valences 6 (so the regular
//! shape solves its gluing equations) and solves to a complete geometric
//! structure.

use thiserror::Error;

use super::equations::gluing_equations;
use super::solve::{perturbed_regular, solve_shapes, REGULAR_SHAPE};
use super::tri::{perm_inverse, Glue, IdealTriangulation};

/// A face slot (tetrahedron, face).
pub type Slot = (usize, u8);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regluing {
    /// Face classes to cut, one representative slot each.
    pub cut: Vec<Slot>,
    /// New pairings of the freed slots with their vertex bijections.
    pub pairs: Vec<(Slot, Slot, [u8; 4])>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReglueError {
    #[error("regluing does not repair the cut slots")]
    BadPairing,
    #[error("permutation does not carry face onto face")]
    BadPermutation,
    #[error("edge class {0} does not have valence 6 after regluing")]
    BadValence(usize),
    #[error("reglued triangulation is disconnected or non-orientable")]
    BadTopology,
}

/// Apply a regluing; the result is validated (involutive, valence 6,
/// connected, orientable) and returned in canonical oriented form.
pub fn apply_regluing(tri: &IdealTriangulation, r: &Regluing) -> Result<IdealTriangulation, ReglueError> {
    let mut freed: Vec<Slot> = Vec::new();
    for &(t, f) in &r.cut {
        let g = tri.gluings[t][f as usize];
        freed.push((t, f));
        freed.push((g.tet, g.face));
    }
    freed.sort();
    let mut repaired: Vec<Slot> = r
        .pairs
        .iter()
        .flat_map(|&(x, y, _)| [x, y])
        .collect();
    repaired.sort();
    if freed != repaired {
        return Err(ReglueError::BadPairing);
    }
    let mut out = tri.clone();
    for &((t1, f1), (t2, f2), perm) in &r.pairs {
        if perm[f1 as usize] != f2 {
            return Err(ReglueError::BadPermutation);
        }
        out.gluings[t1][f1 as usize] = Glue { tet: t2, face: f2, perm };
        out.gluings[t2][f2 as usize] = Glue { tet: t1, face: f1, perm: perm_inverse(&perm) };
    }
    out.validate().map_err(|_| ReglueError::BadPairing)?;
    let (edge_of, edge_count) = out.edge_classes();
    let mut valence = vec![0usize; edge_count];
    for &c in &edge_of {
        valence[c] += 1;
    }
    if let Some(bad) = valence.iter().position(|&v| v != 6) {
        return Err(ReglueError::BadValence(bad));
    }
    if !out.is_connected() {
        return Err(ReglueError::BadTopology);
    }
    out.oriented().map_err(|_| ReglueError::BadTopology)
}

/// True when the reglued triangulation solves to the all-regular complete
/// structure.
pub fn solves_to_regular(tri: &IdealTriangulation) -> bool {
    let (sys, _) = gluing_equations(tri);
    match solve_shapes(&sys, &perturbed_regular(tri.len(), 0), 1e-12) {
        Ok(s) => {
            s.geometric
                && s.shapes.iter().all(|z| (z - REGULAR_SHAPE).norm() < 1e-9)
        }
        Err(_) => false,
    }
}

/// All permutations of the three vertices of a face extended by the fixed
/// opposite-vertex assignment f1 -> f2.
fn face_bijections(f1: u8, f2: u8) -> Vec<[u8; 4]> {
    let src: Vec<u8> = (0..4u8).filter(|&v| v != f1).collect();
    let dst: Vec<u8> = (0..4u8).filter(|&v| v != f2).collect();
    let mut out = Vec::new();
    let order = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for ord in order {
        let mut perm = [0u8; 4];
        perm[f1 as usize] = f2;
        for k in 0..3 {
            perm[src[k] as usize] = dst[ord[k]];
        }
        out.push(perm);
    }
    out
}

/// Exhaustive search over regluings of the given cut: all involutive
/// pairings of the freed slots with all face bijections, filtered by the
/// valence/connectivity/solution postconditions. The identity regluing is
/// included (it reproduces the input).
pub fn search_regluings(tri: &IdealTriangulation, cut: &[Slot]) -> Vec<Regluing> {
    let mut freed: Vec<Slot> = Vec::new();
    for &(t, f) in cut {
        let g = tri.gluings[t][f as usize];
        freed.push((t, f));
        freed.push((g.tet, g.face));
    }
    freed.sort();
    let mut found = Vec::new();
    let mut pairing: Vec<(Slot, Slot)> = Vec::new();
    search_pairings(&freed, &mut pairing, &mut |pairs| {
        // Odometer over the vertex bijections of every pair.
        let choices: Vec<Vec<[u8; 4]>> =
            pairs.iter().map(|&((_, f1), (_, f2))| face_bijections(f1, f2)).collect();
        let mut idx = vec![0usize; pairs.len()];
        loop {
            let candidate = Regluing {
                cut: cut.to_vec(),
                pairs: pairs
                    .iter()
                    .enumerate()
                    .map(|(k, &(x, y))| (x, y, choices[k][idx[k]]))
                    .collect(),
            };
            if let Ok(reglued) = apply_regluing(tri, &candidate) {
                if solves_to_regular(&reglued) {
                    found.push(candidate);
                }
            }
            // Advance the odometer.
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return;
                }
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    });
    found.sort_by(|a: &Regluing, b| a.pairs.cmp(&b.pairs));
    found
}

fn search_pairings(
    remaining: &[Slot],
    acc: &mut Vec<(Slot, Slot)>,
    visit: &mut dyn FnMut(&[(Slot, Slot)]),
) {
    if remaining.is_empty() {
        visit(acc);
        return;
    }
    let first = remaining[0];
    for k in 1..remaining.len() {
        let second = remaining[k];
        let rest: Vec<Slot> = remaining[1..]
            .iter()
            .copied()
            .filter(|&s| s != second)
            .collect();
        acc.push((first, second));
        search_pairings(&rest, acc, visit);
        acc.pop();
    }
}

/// The canonical pants cut of the 10-tetrahedron double cover: the four
/// face classes covering the two totally geodesic pants, one representative
/// slot per class. The four slots are swapped in pairs by the deck
/// involution.
pub fn pants_cut() -> Vec<Slot> {
    vec![(4, 3), (5, 3), (6, 3), (7, 3)]
}

/// Regluings of the pants cut shipped as data: index 0 is the identity
/// (reproducing the 5-cusp cover), indices 1..=3 are the nontrivial
/// variants. All were found by `search_regluings` over the pants cut and
/// restricted to results with 4 or 5 cusps; the search is re-run as the
/// provenance check in the test suite.
pub fn shipped_variants() -> Vec<Regluing> {
    let cut = pants_cut();
    let raw: [&[(Slot, Slot, [u8; 4])]; 4] = [
        &[
            ((4, 2), (7, 3), [0, 1, 3, 2]),
            ((4, 3), (8, 2), [0, 1, 3, 2]),
            ((5, 2), (6, 3), [0, 1, 3, 2]),
            ((5, 3), (9, 2), [0, 1, 3, 2]),
        ],
        &[
            ((4, 2), (5, 2), [0, 3, 2, 1]),
            ((4, 3), (8, 2), [0, 1, 3, 2]),
            ((5, 3), (9, 2), [0, 1, 3, 2]),
            ((6, 3), (7, 3), [0, 2, 1, 3]),
        ],
        &[
            ((4, 2), (7, 3), [0, 1, 3, 2]),
            ((4, 3), (5, 3), [0, 2, 1, 3]),
            ((5, 2), (6, 3), [0, 1, 3, 2]),
            ((8, 2), (9, 2), [0, 3, 2, 1]),
        ],
        &[
            ((4, 2), (7, 3), [0, 1, 3, 2]),
            ((4, 3), (5, 3), [1, 0, 2, 3]),
            ((5, 2), (6, 3), [0, 1, 3, 2]),
            ((8, 2), (9, 2), [1, 0, 2, 3]),
        ],
    ];
    raw.iter()
        .map(|pairs| Regluing { cut: cut.clone(), pairs: pairs.to_vec() })
        .collect()
}
