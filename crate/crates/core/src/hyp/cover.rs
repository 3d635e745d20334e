//! The 4-simplex boundary quotient complex and its sign double cover.
//!
//! The boundary of the 4-simplex has 5 tetrahedra (indexed by the omitted
//! vertex), 10 triangular faces and 10 edges, each edge touched by exactly
//! 3 faces. A face sign assignment with odd sum around every edge lifts the
//! complex to a connected double cover in which every edge has valence 6,
//! so the regular ideal shape solves the gluing equations.

use super::tri::{Glue, IdealTriangulation};

/// Boundary complex of the 4-simplex on vertices 0..5, with tetrahedron i
/// omitting vertex i.
pub struct QuotientComplex {
    /// The 10 triangular faces as sorted vertex triples.
    pub faces: Vec<[u8; 3]>,
    /// The 10 edges as sorted vertex pairs.
    pub edges: Vec<[u8; 2]>,
}

pub fn build_pentachoron_complex() -> QuotientComplex {
    let mut faces = Vec::new();
    let mut edges = Vec::new();
    for a in 0..5u8 {
        for b in a + 1..5 {
            edges.push([a, b]);
            for c in b + 1..5 {
                faces.push([a, b, c]);
            }
        }
    }
    QuotientComplex { faces, edges }
}

impl QuotientComplex {
    /// The two tetrahedra sharing a face: the complement pair of vertices.
    pub fn face_tets(&self, face: usize) -> [u8; 2] {
        let f = self.faces[face];
        let mut out = Vec::new();
        for v in 0..5u8 {
            if !f.contains(&v) {
                out.push(v);
            }
        }
        [out[0], out[1]]
    }

    /// Faces incident to an edge (always 3).
    pub fn edge_faces(&self, edge: usize) -> Vec<usize> {
        let e = self.edges[edge];
        (0..self.faces.len())
            .filter(|&f| self.faces[f].contains(&e[0]) && self.faces[f].contains(&e[1]))
            .collect()
    }
}

/// Face signs with odd sum around every edge: the 10x10 GF(2) system. The
/// canonical solution is the lexicographically least vector over the
/// solution affine subspace; the second component is the dimension of that
/// subspace.
pub fn gf2_face_signs(q: &QuotientComplex) -> Result<(Vec<u8>, usize), String> {
    let ne = q.edges.len();
    let nf = q.faces.len();
    // Augmented rows as bitmasks, bit nf = right-hand side 1.
    let mut rows: Vec<u32> = (0..ne)
        .map(|e| {
            let mut m = 1u32 << nf;
            for f in q.edge_faces(e) {
                m |= 1 << f;
            }
            m
        })
        .collect();
    // Gaussian elimination.
    let mut pivot_col_of_row = Vec::new();
    let mut r = 0;
    for col in 0..nf {
        if let Some(i) = (r..rows.len()).find(|&i| rows[i] >> col & 1 == 1) {
            rows.swap(r, i);
            for j in 0..rows.len() {
                if j != r && rows[j] >> col & 1 == 1 {
                    rows[j] ^= rows[r];
                }
            }
            pivot_col_of_row.push(col);
            r += 1;
        }
    }
    if rows[r..].iter().any(|&m| m >> nf & 1 == 1) {
        return Err("edge-sign system is unsolvable".into());
    }
    let rank = r;
    let dim = nf - rank;
    let free_cols: Vec<usize> =
        (0..nf).filter(|c| !pivot_col_of_row.contains(c)).collect();
    // Enumerate the affine subspace and keep the lexicographically least
    // assignment (dimension is tiny).
    let mut best: Option<Vec<u8>> = None;
    for mask in 0..1u32 << dim {
        let mut eps = vec![0u8; nf];
        for (k, &c) in free_cols.iter().enumerate() {
            eps[c] = (mask >> k & 1) as u8;
        }
        for (row, &col) in pivot_col_of_row.iter().enumerate() {
            let mut val = (rows[row] >> nf & 1) as u8;
            for &fc in &free_cols {
                val ^= (rows[row] >> fc & 1) as u8 & eps[fc];
            }
            eps[col] = val;
        }
        if best.as_ref().map_or(true, |b| eps < *b) {
            best = Some(eps);
        }
    }
    let eps = best.unwrap();
    for e in 0..ne {
        debug_assert_eq!(q.edge_faces(e).iter().map(|&f| eps[f]).sum::<u8>() % 2, 1);
    }
    Ok((eps, dim))
}

/// Local vertex label of pentachoron vertex `v` inside tetrahedron `t`
/// (which omits vertex `t`): the rank of `v` among the other four.
fn local(t: u8, v: u8) -> u8 {
    assert_ne!(t, v);
    (0..5u8).filter(|&w| w != t && w < v).count() as u8
}

fn global(t: u8, l: u8) -> u8 {
    (0..5u8).filter(|&w| w != t).nth(l as usize).unwrap()
}

/// The cover before reorientation: tetrahedron (i, sheet s) has index 2i+s;
/// a quotient face with sign 1 swaps sheets.
fn raw_cover(q: &QuotientComplex, eps: &[u8]) -> IdealTriangulation {
    let dummy = Glue { tet: 0, face: 0, perm: [0; 4] };
    let mut gluings = vec![[dummy; 4]; 10];
    for fi in 0..q.faces.len() {
        let [a, b] = q.face_tets(fi);
        // Face fi is opposite vertex b in tetrahedron a and vice versa; the
        // identification fixes the three shared vertices and swaps a, b.
        for (src, dst) in [(a, b), (b, a)] {
            let face_local = local(src, dst);
            let mut perm = [0u8; 4];
            for l in 0..4u8 {
                let v = global(src, l);
                let image = if v == dst { src } else { v };
                perm[l as usize] = local(dst, image);
            }
            for s in 0..2usize {
                let s2 = s ^ eps[fi] as usize;
                gluings[2 * src as usize + s][face_local as usize] =
                    Glue { tet: 2 * dst as usize + s2, face: local(dst, src), perm };
            }
        }
    }
    IdealTriangulation { gluings }
}

/// Build the 10-tetrahedron double cover and return it in canonical
/// positively-oriented form, after checking connectivity and valence 6.
pub fn build_double_cover(q: &QuotientComplex, eps: &[u8]) -> IdealTriangulation {
    let tri = raw_cover(q, eps);
    tri.validate().expect("cover construction must be involutive");
    assert!(tri.is_connected(), "sign system must yield a connected cover");
    let (edge_of, edge_count) = tri.edge_classes();
    let mut valence = vec![0usize; edge_count];
    for &c in &edge_of {
        valence[c] += 1;
    }
    assert!(valence.iter().all(|&v| v == 6), "cover edges must have valence 6");
    tri.oriented().expect("the sign double cover is orientable")
}

/// The sheet-swap deck involution of the cover built by
/// [`build_double_cover`], in the canonical orientation's labels.
pub fn deck_involution(q: &QuotientComplex, eps: &[u8]) -> Vec<(usize, [u8; 4])> {
    let raw = raw_cover(q, eps);
    let flags = raw.orientation().unwrap();
    let relabel = |t: usize, v: u8| -> u8 {
        if flags[t] || v < 2 {
            v
        } else {
            5 - v
        }
    };
    // Sheet swap t=2i+s -> 2i+(1-s) with the identity on vertices, pushed
    // through the (involutive) orientation relabeling on both sides.
    (0..10)
        .map(|t| {
            let t2 = t ^ 1;
            let mut perm = [0u8; 4];
            for v in 0..4u8 {
                perm[v as usize] = relabel(t2, relabel(t, v));
            }
            (t2, perm)
        })
        .collect()
}
