//! Isomorphism of decorated polyhedra.
//!
//! Search over circuit correspondences: mapping one band forces the whole
//! circuit through it (up to rotation and direction), which in turn forces
//! edge targets, germ bijections, edge reversals, vertex images and region
//! images. Only exact invariants are used for pruning, so a true isomorphism
//! is never missed.

use super::model::*;

#[derive(Clone, Copy, Default)]
pub struct IsoOptions {
    pub respect_branching: bool,
    pub respect_gleams: bool,
}

#[derive(Clone)]
struct Side<'a> {
    dec: &'a DecoratedPolyhedron,
    /// Global circuit list: (region, passages).
    circuits: Vec<(usize, &'a Circuit)>,
}

fn side<'a>(dec: &'a DecoratedPolyhedron) -> Side<'a> {
    let mut circuits = Vec::new();
    for (ri, r) in dec.poly.regions.iter().enumerate() {
        for c in &r.circuits {
            circuits.push((ri, c));
        }
    }
    Side { dec, circuits }
}

fn region_profile(dec: &DecoratedPolyhedron, ri: usize, opts: IsoOptions) -> impl Ord {
    let r = &dec.poly.regions[ri];
    let mut lens: Vec<usize> = r.circuits.iter().map(|c| c.len()).collect();
    lens.sort();
    let mut free = r.free.clone();
    free.sort();
    let gleam = if opts.respect_gleams {
        dec.gleams.as_ref().and_then(|g| g.get(&ri).copied())
    } else {
        None
    };
    (r.genus, lens, free, gleam)
}

#[derive(Clone)]
struct State {
    edge_target: Vec<Option<usize>>,
    edge_rev: Vec<Option<bool>>,
    germ_map: Vec<[Option<u8>; 3]>,
    q_edge_used: Vec<bool>,
    q_germ_used: Vec<[bool; 3]>,
    vertex_map: Vec<Option<usize>>,
    q_vertex_used: Vec<bool>,
    region_map: Vec<Option<usize>>,
    region_flip: Vec<Option<bool>>,
    q_region_used: Vec<bool>,
    q_circuit_of: Vec<Option<usize>>,
}

struct Search<'a> {
    p: Side<'a>,
    q: Side<'a>,
    opts: IsoOptions,
    count_all: bool,
    found: usize,
}

impl<'a> Search<'a> {
    fn set_vertex(&self, st: &mut State, pv: usize, qv: usize) -> bool {
        match st.vertex_map[pv] {
            Some(v) => v == qv,
            None => {
                if st.q_vertex_used[qv]
                    || self.p.dec.poly.vertices[pv].ii3 != self.q.dec.poly.vertices[qv].ii3
                {
                    return false;
                }
                st.vertex_map[pv] = Some(qv);
                st.q_vertex_used[qv] = true;
                true
            }
        }
    }

    fn set_region(&self, st: &mut State, pr: usize, qr: usize, flip: bool) -> bool {
        if let Some(r) = st.region_map[pr] {
            return r == qr && st.region_flip[pr] == Some(flip);
        }
        if st.q_region_used[qr] {
            return false;
        }
        if region_profile(self.p.dec, pr, self.opts) != region_profile(self.q.dec, qr, self.opts)
        {
            return false;
        }
        if self.opts.respect_branching {
            let sp = self.p.dec.branching.as_ref().map_or(true, |b| b[pr]);
            let sq = self.q.dec.branching.as_ref().map_or(true, |b| b[qr]);
            if flip != (sp != sq) {
                return false;
            }
        }
        st.region_map[pr] = Some(qr);
        st.region_flip[pr] = Some(flip);
        st.q_region_used[qr] = true;
        true
    }

    /// Map p circuit `pc` onto q circuit `qc` so that position 0 of pc lands
    /// on `offset`, reversing when `flip` is set. Returns the updated state.
    fn map_circuit(
        &self,
        st: &State,
        pci: usize,
        qci: usize,
        offset: usize,
        flip: bool,
    ) -> Option<State> {
        let (pr, pc) = self.p.circuits[pci];
        let (qr, qc) = self.q.circuits[qci];
        let n = pc.len();
        if qc.len() != n || st.q_circuit_of[qci].is_some() {
            return None;
        }
        let mut st = st.clone();
        if !self.set_region(&mut st, pr, qr, flip) {
            return None;
        }
        st.q_circuit_of[qci] = Some(pci);
        let qpos = |k: usize| -> usize {
            if flip {
                (offset + n - k % n) % n
            } else {
                (offset + k) % n
            }
        };
        for k in 0..n {
            let pp = pc[k];
            let qp = qc[qpos(k)];
            let pe = &self.p.dec.poly.edges[pp.edge];
            let qe = &self.q.dec.poly.edges[qp.edge];
            if pe.is_circle() != qe.is_circle() {
                return None;
            }
            let rev = (pp.forward != qp.forward) != flip;
            match st.edge_target[pp.edge] {
                Some(t) => {
                    if t != qp.edge || st.edge_rev[pp.edge] != Some(rev) {
                        return None;
                    }
                }
                None => {
                    if st.q_edge_used[qp.edge] {
                        return None;
                    }
                    st.edge_target[pp.edge] = Some(qp.edge);
                    st.edge_rev[pp.edge] = Some(rev);
                    st.q_edge_used[qp.edge] = true;
                }
            }
            match st.germ_map[pp.edge][pp.germ as usize] {
                Some(g) => {
                    if g != qp.germ {
                        return None;
                    }
                }
                None => {
                    if st.q_germ_used[qp.edge][qp.germ as usize] {
                        return None;
                    }
                    st.germ_map[pp.edge][pp.germ as usize] = Some(qp.germ);
                    st.q_germ_used[qp.edge][qp.germ as usize] = true;
                }
            }
            // Vertex images from endpoints (interval edges only).
            if let (EdgeShape::Interval { ends: pe }, EdgeShape::Interval { ends: qe }) =
                (&pe.shape, &qe.shape)
            {
                for end in 0..2 {
                    let qend = if rev { 1 - end } else { end };
                    if !self.set_vertex(&mut st, pe[end].vertex, qe[qend].vertex) {
                        return None;
                    }
                }
            }
        }
        Some(st)
    }

    fn recurse(&mut self, st: &State, pci: usize) -> bool {
        let n = self.p.circuits[pci].1.len();
        let mut done = false;
        for qci in 0..self.q.circuits.len() {
            if self.q.circuits[qci].1.len() != n || st.q_circuit_of[qci].is_some() {
                continue;
            }
            for offset in 0..n {
                for flip in [false, true] {
                    if let Some(st2) = self.map_circuit(st, pci, qci, offset, flip) {
                        if self.advance(&st2, pci + 1) {
                            done = true;
                            if !self.count_all {
                                return true;
                            }
                        }
                    }
                }
            }
        }
        done
    }

    fn advance(&mut self, st: &State, from: usize) -> bool {
        if from >= self.p.circuits.len() {
            return self.finish(st);
        }
        self.recurse(st, from)
    }

    fn finish(&mut self, st: &State) -> bool {
        // Circle-edge monodromy compatibility.
        for (ei, e) in self.p.dec.poly.edges.iter().enumerate() {
            if let EdgeShape::Circle { monodromy: pm } = e.shape {
                let t = match st.edge_target[ei] {
                    Some(t) => t,
                    None => return false,
                };
                let qm = match self.q.dec.poly.edges[t].shape {
                    EdgeShape::Circle { monodromy } => monodromy,
                    _ => return false,
                };
                let rev = st.edge_rev[ei].unwrap();
                let sig = &st.germ_map[ei];
                if sig.iter().any(|g| g.is_none()) {
                    return false;
                }
                let sig: Vec<u8> = sig.iter().map(|g| g.unwrap()).collect();
                // Effective monodromy after relabelling and reversal.
                let mut pm_eff = [0u8; 3];
                if rev {
                    // Inverse permutation.
                    for g in 0..3 {
                        pm_eff[pm[g] as usize] = g as u8;
                    }
                } else {
                    pm_eff = pm;
                }
                for g in 0..3usize {
                    if qm[sig[g] as usize] != sig[pm_eff[g] as usize] {
                        return false;
                    }
                }
            }
        }
        // Regions without circuits: multiset matching by profile.
        let mut p_left: Vec<_> = (0..self.p.dec.poly.regions.len())
            .filter(|&r| st.region_map[r].is_none())
            .map(|r| region_profile(self.p.dec, r, self.opts))
            .collect();
        let mut q_left: Vec<_> = (0..self.q.dec.poly.regions.len())
            .filter(|&r| !st.q_region_used[r])
            .map(|r| region_profile(self.q.dec, r, self.opts))
            .collect();
        p_left.sort();
        q_left.sort();
        if p_left != q_left {
            return false;
        }
        self.found += 1;
        true
    }

    fn run(&mut self) -> bool {
        let st = State {
            edge_target: vec![None; self.p.dec.poly.edges.len()],
            edge_rev: vec![None; self.p.dec.poly.edges.len()],
            germ_map: vec![[None; 3]; self.p.dec.poly.edges.len()],
            q_edge_used: vec![false; self.q.dec.poly.edges.len()],
            q_germ_used: vec![[false; 3]; self.q.dec.poly.edges.len()],
            vertex_map: vec![None; self.p.dec.poly.vertices.len()],
            q_vertex_used: vec![false; self.q.dec.poly.vertices.len()],
            region_map: vec![None; self.p.dec.poly.regions.len()],
            region_flip: vec![None; self.p.dec.poly.regions.len()],
            q_region_used: vec![false; self.q.dec.poly.regions.len()],
            q_circuit_of: vec![None; self.q.circuits.len()],
        };
        self.advance(&st, 0)
    }
}

fn prechecks(p: &DecoratedPolyhedron, q: &DecoratedPolyhedron, opts: IsoOptions) -> bool {
    let (pp, qq) = (&p.poly, &q.poly);
    if pp.vertices.len() != qq.vertices.len()
        || pp.edges.len() != qq.edges.len()
        || pp.regions.len() != qq.regions.len()
    {
        return false;
    }
    let flags = |x: &SimplePolyhedron| x.vertices.iter().filter(|v| v.ii3).count();
    if flags(pp) != flags(qq) {
        return false;
    }
    let circles = |x: &SimplePolyhedron| x.edges.iter().filter(|e| e.is_circle()).count();
    if circles(pp) != circles(qq) {
        return false;
    }
    let mut pr: Vec<_> = (0..pp.regions.len()).map(|r| region_profile(p, r, opts)).collect();
    let mut qr: Vec<_> = (0..qq.regions.len()).map(|r| region_profile(q, r, opts)).collect();
    pr.sort();
    qr.sort();
    pr == qr
}

/// Decide isomorphism. `_structure` arguments are accepted for symmetry with
/// other operations but derived data is rebuilt internally.
pub fn isomorphic(
    p: &DecoratedPolyhedron,
    q: &DecoratedPolyhedron,
    opts: IsoOptions,
) -> bool {
    if !prechecks(p, q, opts) {
        return false;
    }
    let mut search =
        Search { p: side(p), q: side(q), opts, count_all: false, found: 0 };
    if search.p.circuits.is_empty() {
        return search.finish(&State {
            edge_target: vec![],
            edge_rev: vec![],
            germ_map: vec![],
            q_edge_used: vec![false; q.poly.edges.len()],
            q_germ_used: vec![[false; 3]; q.poly.edges.len()],
            vertex_map: vec![],
            q_vertex_used: vec![false; q.poly.vertices.len()],
            region_map: vec![None; p.poly.regions.len()],
            region_flip: vec![None; p.poly.regions.len()],
            q_region_used: vec![false; q.poly.regions.len()],
            q_circuit_of: vec![],
        });
    }
    search.run()
}

/// Branched isomorphism up to reversing every region orientation at once.
pub fn isomorphic_up_to_global_flip(
    p: &DecoratedPolyhedron,
    q: &DecoratedPolyhedron,
    opts: IsoOptions,
) -> bool {
    if isomorphic(p, q, opts) {
        return true;
    }
    if !opts.respect_branching {
        return false;
    }
    let mut qf = q.clone();
    if let Some(b) = qf.branching.as_mut() {
        for s in b.iter_mut() {
            *s = !*s;
        }
    }
    isomorphic(p, &qf, opts)
}

/// Number of self-isomorphisms.
pub fn automorphism_count(p: &DecoratedPolyhedron, opts: IsoOptions) -> usize {
    if !prechecks(p, p, opts) {
        return 0;
    }
    let mut search = Search { p: side(p), q: side(p), opts, count_all: true, found: 0 };
    if search.p.circuits.is_empty() {
        return 1;
    }
    search.run();
    search.found
}
