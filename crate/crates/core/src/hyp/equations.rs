//! Thurston gluing and completeness equations in log-exponent form.
//!
//! Shapes live at the edge pairs of each positively-oriented tetrahedron:
//! z on edges {01,23}, z' = 1/(1-z) on {02,13}, z'' = 1-1/z on {03,12};
//! around every vertex the three shapes appear in counterclockwise order
//! z, z', z''. Every equation is stored as integer exponent vectors over
//! (log z_t, log(1-z_t)) with a target that is an integer multiple of i*pi,
//! using log z'' = log(1-z) - log z + i*pi for Im z > 0.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::tri::{edge_index, perm_parity_odd, IdealTriangulation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EqKind {
    Edge(usize),
    Completeness { cusp: usize, index: u8 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqRow {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    /// Equation: sum a log z + b log(1-z) = i*pi*target.
    pub target: i64,
    pub kind: EqKind,
}

#[derive(Clone, Debug)]
pub struct EquationSystem {
    pub tets: usize,
    pub rows: Vec<EqRow>,
}

/// Exponents (a, b, c) with log shape = a log z + b log(1-z) + c*i*pi for
/// the shape on the tetrahedron edge {u, v}.
pub fn edge_shape_exponents(u: u8, v: u8) -> (i64, i64, i64) {
    let e = edge_index(u, v);
    match e.min(5 - e) {
        0 => (1, 0, 0),
        1 => (0, -1, 0),
        _ => (-1, 1, 1),
    }
}

/// The triangulated cross-section of one cusp: triangles are tetrahedron
/// corners (t, v); the side of a triangle on tetrahedron face f is labelled
/// f (the corner opposite it is also labelled f... the corners are the
/// three vertex labels != v, and side f contains the two corners != f).
pub struct CuspSurface {
    pub cusp: usize,
    pub tris: Vec<(usize, u8)>,
    pub index: BTreeMap<(usize, u8), usize>,
    /// BFS tree: for each non-root triangle, (parent index, parent exit
    /// side, child enter side).
    pub parent: Vec<Option<(usize, u8, u8)>>,
    pub order: Vec<usize>,
    /// Non-tree side pairings (i, f, j, f2), deduplicated, sorted.
    pub seams: Vec<(usize, u8, usize, u8)>,
}

/// Neighbor of triangle (t, v) across side f: the glued corner plus the
/// side entered there.
pub fn corner_neighbor(tri: &IdealTriangulation, t: usize, v: u8, f: u8) -> (usize, u8, u8) {
    let g = tri.gluings[t][f as usize];
    (g.tet, g.perm[v as usize], g.face)
}

pub fn cusp_surfaces(tri: &IdealTriangulation) -> Vec<CuspSurface> {
    let (cusp_of, cusps) = tri.cusp_classes();
    let mut out = Vec::new();
    for cusp in 0..cusps {
        let tris: Vec<(usize, u8)> = (0..tri.len())
            .flat_map(|t| (0..4u8).map(move |v| (t, v)))
            .filter(|&(t, v)| cusp_of[4 * t + v as usize] == cusp)
            .collect();
        let index: BTreeMap<(usize, u8), usize> =
            tris.iter().enumerate().map(|(i, &tv)| (tv, i)).collect();
        let mut parent = vec![None; tris.len()];
        let mut seen = vec![false; tris.len()];
        let mut order = vec![0usize];
        seen[0] = true;
        let mut head = 0;
        let mut tree_side = vec![[false; 4]; tris.len()];
        while head < order.len() {
            let i = order[head];
            head += 1;
            let (t, v) = tris[i];
            for f in 0..4u8 {
                if f == v {
                    continue;
                }
                let (t2, v2, f2) = corner_neighbor(tri, t, v, f);
                let j = index[&(t2, v2)];
                if !seen[j] {
                    seen[j] = true;
                    parent[j] = Some((i, f, f2));
                    tree_side[i][f as usize] = true;
                    tree_side[j][f2 as usize] = true;
                    order.push(j);
                }
            }
        }
        let mut seams = Vec::new();
        for (i, &(t, v)) in tris.iter().enumerate() {
            for f in 0..4u8 {
                if f == v || tree_side[i][f as usize] {
                    continue;
                }
                let (t2, v2, f2) = corner_neighbor(tri, t, v, f);
                let j = index[&(t2, v2)];
                if (i, f) <= (j, f2) {
                    seams.push((i, f, j, f2));
                }
            }
        }
        seams.sort();
        out.push(CuspSurface { cusp, tris, index, parent, order, seams });
    }
    out
}

/// Log-holonomy derivative of the loop through a seam: walk the tree path
/// root -> i, cross the seam, walk j -> root; each triangle crossed from
/// side f1 to side f2 turns around the corner X = 6-v-f1-f2, with positive
/// sign when (v, X, f2, f1) is an even permutation (counterclockwise turn
/// in the positively-oriented corner triangle).
pub fn seam_exponents(
    tri: &IdealTriangulation,
    surf: &CuspSurface,
    seam: (usize, u8, usize, u8),
) -> (Vec<i64>, Vec<i64>, i64) {
    let n = tri.len();
    let chain = |mut i: usize| -> Vec<(usize, u8, u8)> {
        // (node, node side toward parent, parent side toward node)
        let mut out = Vec::new();
        while let Some((p, fp, fc)) = surf.parent[i] {
            out.push((i, fc, fp));
            i = p;
        }
        out
    };
    // Directed steps (from, exit side, to, enter side).
    let mut steps: Vec<(usize, u8, usize, u8)> = Vec::new();
    let up = chain(seam.0);
    for &(node, fc, fp) in up.iter().rev() {
        let p = surf.parent[node].unwrap().0;
        steps.push((p, fp, node, fc));
    }
    steps.push(seam);
    for &(node, fc, fp) in chain(seam.2).iter() {
        let p = surf.parent[node].unwrap().0;
        steps.push((node, fc, p, fp));
    }
    let mut a = vec![0i64; n];
    let mut b = vec![0i64; n];
    let mut c = 0i64;
    let len = steps.len();
    for k in 0..len {
        let (tri_i, exit) = (steps[k].0, steps[k].1);
        let enter = steps[(k + len - 1) % len].3;
        debug_assert_eq!(steps[(k + len - 1) % len].2, tri_i);
        if enter == exit {
            continue; // backtracking spur encloses nothing
        }
        let (t, v) = surf.tris[tri_i];
        let corner = 6 - v - enter - exit;
        let sign = if perm_parity_odd(&[v, corner, exit, enter]) { -1 } else { 1 };
        let (da, db, dc) = edge_shape_exponents(v, corner);
        a[t] += sign * da;
        b[t] += sign * db;
        c += sign * dc;
    }
    (a, b, c)
}

/// Assemble edge equations (one per edge class, angle sum 2*pi) and two
/// completeness equations per cusp along a deterministic basis: the first
/// two seam loops of the least-index BFS sweep that are independent modulo
/// the span of the edge equations.
///
/// Also returns the seams realizing each completeness basis curve, for the
/// cusp developing map.
pub fn gluing_equations(
    tri: &IdealTriangulation,
) -> (EquationSystem, Vec<[(usize, u8, usize, u8); 2]>) {
    assert!(
        tri.gluings.iter().all(|fs| fs.iter().all(|g| perm_parity_odd(&g.perm))),
        "equations require the canonical positive orientation"
    );
    let n = tri.len();
    let (edge_of, edge_count) = tri.edge_classes();
    let mut rows = Vec::new();
    for cls in 0..edge_count {
        let mut a = vec![0i64; n];
        let mut b = vec![0i64; n];
        let mut c = 0i64;
        for t in 0..n {
            for (e, &[u, v]) in super::tri::TET_EDGES.iter().enumerate() {
                if edge_of[6 * t + e] == cls {
                    let (da, db, dc) = edge_shape_exponents(u, v);
                    a[t] += da;
                    b[t] += db;
                    c += dc;
                }
            }
        }
        // Angle sum 2*pi: sum of logs = 2*i*pi.
        let target = 2 - c;
        rows.push(EqRow { a, b, target, kind: EqKind::Edge(cls) });
    }
    // Independence test over the coefficient parts, floating-point row
    // reduction (entries are small integers).
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let reduce = |row: &EqRow, basis: &mut Vec<Vec<f64>>, insert: bool| -> bool {
        let mut v: Vec<f64> = row.a.iter().chain(row.b.iter()).map(|&x| x as f64).collect();
        for bvec in basis.iter() {
            let pivot = bvec.iter().position(|&x| x.abs() > 1e-6).unwrap();
            let factor = v[pivot] / bvec[pivot];
            for (x, y) in v.iter_mut().zip(bvec) {
                *x -= factor * y;
            }
        }
        let independent = v.iter().any(|&x| x.abs() > 1e-6);
        if independent && insert {
            basis.push(v);
        }
        independent
    };
    for row in &rows {
        reduce(row, &mut basis, true);
    }
    let surfaces = cusp_surfaces(tri);
    let mut basis_seams = Vec::new();
    for surf in &surfaces {
        let mut chosen = Vec::new();
        for &seam in &surf.seams {
            let (a, b, _c) = seam_exponents(tri, surf, seam);
            // Fix the i*pi branch of the peripheral equation by evaluating
            // the exponent sum at the equilateral shape, where every log is
            // an exact multiple of i*pi/3; the well-known sign of -1 per
            // crossed corner triangle is absorbed into the chosen branch.
            let s = a.iter().sum::<i64>() - b.iter().sum::<i64>();
            let row = EqRow {
                a,
                b,
                target: (s as f64 / 3.0).round() as i64,
                kind: EqKind::Completeness { cusp: surf.cusp, index: chosen.len() as u8 },
            };
            if reduce(&row, &mut basis, true) {
                chosen.push((row, seam));
            }
            if chosen.len() == 2 {
                break;
            }
        }
        assert_eq!(chosen.len(), 2, "torus cusp must yield two independent curves");
        basis_seams.push([chosen[0].1, chosen[1].1]);
        for (row, _) in chosen {
            rows.push(row);
        }
    }
    (EquationSystem { tets: n, rows }, basis_seams)
}

impl EquationSystem {
    /// Residual vector: row value minus its i*pi target.
    pub fn evaluate(&self, z: &[Complex64]) -> Vec<Complex64> {
        self.rows
            .iter()
            .map(|row| {
                let mut sum = Complex64::new(0.0, -std::f64::consts::PI * row.target as f64);
                for t in 0..self.tets {
                    sum += row.a[t] as f64 * z[t].ln() + row.b[t] as f64 * (1.0 - z[t]).ln();
                }
                sum
            })
            .collect()
    }

    /// Jacobian d(residual_r)/d(z_t).
    pub fn jacobian(&self, z: &[Complex64]) -> Vec<Vec<Complex64>> {
        self.rows
            .iter()
            .map(|row| {
                (0..self.tets)
                    .map(|t| row.a[t] as f64 / z[t] - row.b[t] as f64 / (1.0 - z[t]))
                    .collect()
            })
            .collect()
    }

    pub fn residual(&self, z: &[Complex64]) -> f64 {
        self.evaluate(z).iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}
