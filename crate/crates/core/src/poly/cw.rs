//! CW model of a polyhedron, shared by homology and fundamental group.
//!
//! Each region of genus g with b attached circuits and f free circles is the
//! polygon 2-cell with word
//!   prod [a_i, b_i] * prod_k (u_k w_k u_k^-1) * prod_j (t_j f_j t_j^-1)
//! attached to the singular graph extended by per-region handles, free-circle
//! loops, and tethers. This is an honest cell structure of the polyhedron, so
//! both H1 and pi1 computed from it are the real ones.

use super::model::*;

#[derive(Clone, Debug, Default)]
pub struct CwComplex {
    pub n0: usize,
    /// 1-cells as (tail, head) 0-cell indices.
    pub cells1: Vec<(usize, usize)>,
    /// 2-cell attaching words; letter k > 0 means 1-cell (k-1) forward,
    /// k < 0 backward.
    pub words2: Vec<Vec<i64>>,
}

impl CwComplex {
    pub fn add0(&mut self) -> usize {
        self.n0 += 1;
        self.n0 - 1
    }

    pub fn add1(&mut self, tail: usize, head: usize) -> i64 {
        self.cells1.push((tail, head));
        self.cells1.len() as i64
    }
}

fn inv(word: &[i64]) -> Vec<i64> {
    word.iter().rev().map(|&x| -x).collect()
}

/// Build the CW model of a polyhedron. No validity assumptions beyond
/// edge/vertex references being in range.
pub fn cw_complex(poly: &SimplePolyhedron) -> CwComplex {
    let mut cw = CwComplex::default();
    for _ in &poly.vertices {
        cw.add0();
    }
    // 1-cells of the singular graph, indexed like polyhedron edges.
    let mut edge_cell = Vec::with_capacity(poly.edges.len());
    for edge in &poly.edges {
        match edge.shape {
            EdgeShape::Interval { ends } => {
                edge_cell.push(cw.add1(ends[0].vertex, ends[1].vertex));
            }
            EdgeShape::Circle { .. } => {
                let cut = cw.add0();
                edge_cell.push(cw.add1(cut, cut));
            }
        }
    }
    // Start 0-cell of a circuit: where its first passage departs.
    let circuit_start = |cw: &CwComplex, circuit: &Circuit| -> usize {
        let p = circuit[0];
        match poly.edges[p.edge].shape {
            EdgeShape::Interval { ends } => ends[if p.forward { 0 } else { 1 }].vertex,
            EdgeShape::Circle { .. } => {
                // The circle-edge cut 0-cell: 1-cell tail.
                let c = edge_cell[p.edge];
                cw.cells1[(c - 1) as usize].0
            }
        }
    };

    let mut words2 = Vec::with_capacity(poly.regions.len());
    for region in &poly.regions {
        let x = cw.add0();
        let mut word: Vec<i64> = Vec::new();
        for _ in 0..region.genus {
            let a = cw.add1(x, x);
            let b = cw.add1(x, x);
            word.extend([a, b, -a, -b]);
        }
        for circuit in &region.circuits {
            let start = circuit_start(&cw, circuit);
            let u = cw.add1(x, start);
            let mut w: Vec<i64> = Vec::new();
            for p in circuit {
                let c = edge_cell[p.edge];
                w.push(if p.forward { c } else { -c });
            }
            word.push(u);
            word.extend(w);
            word.extend(inv(&[u]));
        }
        for _ in &region.free {
            let y = cw.add0();
            let t = cw.add1(x, y);
            let f = cw.add1(y, y);
            word.extend([t, f, -t]);
        }
        words2.push(word);
    }
    cw.words2 = words2;
    cw
}

impl CwComplex {
    /// Boundary map from 1-chains to 0-chains, rows indexed by 0-cells.
    pub fn d1(&self) -> Vec<Vec<i128>> {
        let mut m = vec![vec![0i128; self.cells1.len()]; self.n0];
        for (j, &(tail, head)) in self.cells1.iter().enumerate() {
            m[head][j] += 1;
            m[tail][j] -= 1;
        }
        m
    }

    /// Boundary map from 2-chains to 1-chains (abelianized attaching words).
    pub fn d2(&self) -> Vec<Vec<i128>> {
        let mut m = vec![vec![0i128; self.words2.len()]; self.cells1.len()];
        for (j, word) in self.words2.iter().enumerate() {
            for &letter in word {
                let idx = letter.unsigned_abs() as usize - 1;
                m[idx][j] += letter.signum() as i128;
            }
        }
        m
    }
}
