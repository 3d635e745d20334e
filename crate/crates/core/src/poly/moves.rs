//! Polyhedron moves: tower attachment and the X-part replacement move.

use thiserror::Error;

use super::model::*;
use super::validate::Violation;

#[derive(Clone, Debug, Error)]
pub enum MoveError {
    #[error("region {0} does not exist")]
    NoSuchRegion(usize),
    #[error("region {region} has no free circle {index}")]
    NoSuchFreeCircle { region: usize, index: usize },
    #[error("tower height {0} must be between 1 and 3")]
    BadTowerHeight(usize),
    #[error("vertex {0} does not exist")]
    NoSuchVertex(usize),
    #[error("vertex {0} is not flagged as a collapsed X part")]
    NotFlagged(usize),
    #[error("region {0} is not a +1-gleam bigon between two ordinary vertices")]
    NotAnXBigon(usize),
    #[error("collapsing region {region} does not produce a valid local model: {violations:?}")]
    NotAnXPart { region: usize, violations: Vec<Violation> },
    #[error("no bigon orientation satisfies the edge condition at the new edges")]
    BranchingObstructed,
    #[error("polyhedron is invalid: {0:?}")]
    Invalid(Vec<Violation>),
}

/// Attach a tower of height `k` to the free boundary circle `(region,
/// free_index)`. The circle is capped with `k` parallel singular circles,
/// each bounding a disk, joined by annular bands; the outermost band gets a
/// fresh free circle colored `new_color`.
pub fn attach_tower(
    dec: &DecoratedPolyhedron,
    region: usize,
    free_index: usize,
    k: usize,
    new_color: Color,
) -> Result<DecoratedPolyhedron, MoveError> {
    if !(1..=3).contains(&k) {
        return Err(MoveError::BadTowerHeight(k));
    }
    let mut out = dec.clone();
    let r = out
        .poly
        .regions
        .get_mut(region)
        .ok_or(MoveError::NoSuchRegion(region))?;
    if free_index >= r.free.len() {
        return Err(MoveError::NoSuchFreeCircle { region, index: free_index });
    }
    r.free.remove(free_index);
    let first_circle = out.poly.edges.len();
    for _ in 0..k {
        out.poly.edges.push(Edge::circle([0, 1, 2]));
    }
    let base_sign = out.branching.as_ref().map(|b| b[region]);
    // The attaching circle becomes the first singular circle.
    out.poly.regions[region]
        .circuits
        .push(vec![Passage { edge: first_circle, germ: 0, forward: true }]);
    for i in 0..k {
        let c = first_circle + i;
        // Disk capping circle i.
        out.poly.regions.push(Region {
            genus: 0,
            circuits: vec![vec![Passage { edge: c, germ: 2, forward: true }]],
            free: Vec::new(),
        });
        if let Some(b) = out.branching.as_mut() {
            // Disk oriented against the region below its circle keeps the
            // edge condition: bands run as (below, band, disk) with the band
            // sign free.
            let below = if i == 0 { base_sign.unwrap() } else { true };
            b.push(!below);
        }
        if let Some(g) = out.gleams.as_mut() {
            g.insert(out.poly.regions.len() - 1, HalfInt::from_int(0));
        }
        // Band from circle i up to circle i+1, or the new free boundary.
        let mut band = Region {
            genus: 0,
            circuits: vec![vec![Passage { edge: c, germ: 1, forward: true }]],
            free: Vec::new(),
        };
        if i + 1 < k {
            band.circuits
                .push(vec![Passage { edge: c + 1, germ: 0, forward: true }]);
        } else {
            band.free.push(new_color);
        }
        out.poly.regions.push(band);
        if let Some(b) = out.branching.as_mut() {
            b.push(true);
        }
    }
    Ok(out)
}

/// Find the slots of vertex `v` not used by edges `a`, `b`, sorted.
fn stub_slots(poly: &SimplePolyhedron, v: usize, a: usize, b: usize) -> Vec<u8> {
    let mut used = Vec::new();
    for &e in &[a, b] {
        if let EdgeShape::Interval { ends } = poly.edges[e].shape {
            for ep in ends {
                if ep.vertex == v {
                    used.push(ep.slot);
                }
            }
        }
    }
    (0..4u8).filter(|s| !used.contains(s)).collect()
}

/// Anchor slots for the doubled-sector pairing convention at an II3 vertex:
/// one slot from each doubled pair, chosen so that the edges at the two
/// slots are distinct. With roles [a, b, c, d] the cascade (a,b), (c,d),
/// (a,d) always reaches such a pair, because one edge has only two ends and
/// so cannot occupy three slots.
fn anchor_slots(roles: &[u8; 4], edge_at: impl Fn(u8) -> usize) -> (u8, u8) {
    let [a, b, c, d] = *roles;
    [(a, b), (c, d), (a, d)]
        .into_iter()
        .find(|&(x, y)| edge_at(x) != edge_at(y))
        .unwrap_or((a, b))
}

/// Collapse an X part onto a single flagged vertex. `bigon` must be the
/// +1-gleam bigon region of the X part.
pub fn replace_x_with_vertex(
    dec: &DecoratedPolyhedron,
    bigon: usize,
) -> Result<DecoratedPolyhedron, MoveError> {
    let poly = &dec.poly;
    let region = poly.regions.get(bigon).ok_or(MoveError::NoSuchRegion(bigon))?;
    let bad = || MoveError::NotAnXBigon(bigon);
    if region.genus != 0 || !region.free.is_empty() || region.circuits.len() != 1 {
        return Err(bad());
    }
    let circuit = &region.circuits[0];
    if circuit.len() != 2 {
        return Err(bad());
    }
    let (ea, eb) = (circuit[0].edge, circuit[1].edge);
    if ea == eb {
        return Err(bad());
    }
    let (v0, v1) = match poly.edges[ea].shape {
        EdgeShape::Interval { ends } => (ends[0].vertex, ends[1].vertex),
        EdgeShape::Circle { .. } => return Err(bad()),
    };
    match poly.edges[eb].shape {
        EdgeShape::Interval { ends } => {
            let (w0, w1) = (ends[0].vertex, ends[1].vertex);
            if v0 == v1 || (w0, w1) != (v0, v1) && (w1, w0) != (v0, v1) {
                return Err(bad());
            }
        }
        EdgeShape::Circle { .. } => return Err(bad()),
    }
    if poly.vertices[v0].ii3 || poly.vertices[v1].ii3 {
        return Err(bad());
    }
    if let Some(g) = &dec.gleams {
        if g.get(&bigon) != Some(&HalfInt::from_int(1)) {
            return Err(bad());
        }
    }

    // Slot map: the stub slots of v0 become slots 0,1 of the new vertex,
    // those of v1 become slots 2,3.
    let w = poly.vertices.len() - 2;
    let mut vertex_map: Vec<Option<usize>> = (0..poly.vertices.len()).map(Some).collect();
    vertex_map[v0] = None;
    vertex_map[v1] = None;
    let mut next = 0usize;
    for m in vertex_map.iter_mut() {
        if m.is_some() {
            *m = Some(next);
            next += 1;
        }
    }
    let mut slot_map = std::collections::BTreeMap::new();
    for (i, s) in stub_slots(poly, v0, ea, eb).into_iter().enumerate() {
        slot_map.insert((v0, s), (w, i as u8));
    }
    for (i, s) in stub_slots(poly, v1, ea, eb).into_iter().enumerate() {
        slot_map.insert((v1, s), (w, 2 + i as u8));
    }

    let mut edge_map: Vec<Option<usize>> = (0..poly.edges.len()).map(Some).collect();
    edge_map[ea] = None;
    edge_map[eb] = None;
    let mut next = 0usize;
    for m in edge_map.iter_mut() {
        if m.is_some() {
            *m = Some(next);
            next += 1;
        }
    }

    let mut out = SimplePolyhedron::default();
    for (vi, v) in poly.vertices.iter().enumerate() {
        if vi != v0 && vi != v1 {
            out.vertices.push(*v);
        }
    }
    out.vertices.push(Vertex { ii3: true });
    for (ei, edge) in poly.edges.iter().enumerate() {
        if ei == ea || ei == eb {
            continue;
        }
        let shape = match edge.shape {
            EdgeShape::Interval { ends } => EdgeShape::Interval {
                ends: ends.map(|ep| {
                    if let Some(&(nv, ns)) = slot_map.get(&(ep.vertex, ep.slot)) {
                        EndPoint { vertex: nv, slot: ns }
                    } else {
                        EndPoint { vertex: vertex_map[ep.vertex].unwrap(), slot: ep.slot }
                    }
                }),
            },
            EdgeShape::Circle { monodromy } => EdgeShape::Circle { monodromy },
        };
        out.edges.push(Edge { shape });
    }
    let mut branching = dec.branching.as_ref().map(|_| Vec::new());
    let mut gleams = dec.gleams.as_ref().map(|_| Gleams::new());
    // Each removed germ-1 or germ-2 passage of ea/eb becomes a doubled-sector
    // traversal of the new vertex. Record, in output coordinates, the slots
    // it touches with the germs of the adjacent kept passages, plus which of
    // ea/eb carried it; the germ-order convention below lets the inverse
    // move re-pair the doubled sectors correctly.
    struct Traversal {
        /// ea or eb (original index), identifying the removed strip's edge.
        removed: usize,
        /// The two (new slot, germ of the adjacent kept passage) endpoints.
        ends: [(u8, u8); 2],
    }
    let new_slot = |vertex: usize, slot: u8| slot_map.get(&(vertex, slot)).map(|&(_, s)| s);
    let end_point = |edge: usize, end: u8| -> EndPoint {
        match poly.edges[edge].shape {
            EdgeShape::Interval { ends } => ends[end as usize],
            EdgeShape::Circle { .. } => unreachable!("stub edges are intervals"),
        }
    };
    let mut traversals: Vec<Traversal> = Vec::new();
    for (ri, r) in poly.regions.iter().enumerate() {
        if ri == bigon {
            continue;
        }
        let new_ri = out.regions.len();
        let mut circuits = Vec::new();
        for c in &r.circuits {
            let n = c.len();
            let kept: Vec<usize> = (0..n).filter(|&i| c[i].edge != ea && c[i].edge != eb).collect();
            for (i, p) in c.iter().enumerate() {
                if p.edge != ea && p.edge != eb {
                    continue;
                }
                if kept.is_empty() || c[(i + n - 1) % n].edge == ea || c[(i + n - 1) % n].edge == eb
                {
                    return Err(bad());
                }
                let (prev, next) = (c[(i + n - 1) % n], c[(i + 1) % n]);
                let pa = prev.arrival();
                let qd = next.departure();
                let ep_prev = end_point(pa.edge, pa.end);
                let ep_next = end_point(qd.edge, qd.end);
                let (Some(s_prev), Some(s_next)) = (
                    new_slot(ep_prev.vertex, ep_prev.slot),
                    new_slot(ep_next.vertex, ep_next.slot),
                ) else {
                    return Err(bad());
                };
                traversals.push(Traversal {
                    removed: p.edge,
                    ends: [(s_prev, prev.germ), (s_next, next.germ)],
                });
            }
            circuits.push(
                kept.iter()
                    .map(|&i| Passage {
                        edge: edge_map[c[i].edge].unwrap(),
                        germ: c[i].germ,
                        forward: c[i].forward,
                    })
                    .collect(),
            );
        }
        out.regions.push(Region { genus: r.genus, circuits, free: r.free.clone() });
        if let (Some(b), Some(src)) = (branching.as_mut(), dec.branching.as_ref()) {
            b.push(src[ri]);
        }
        if let (Some(g), Some(src)) = (gleams.as_mut(), dec.gleams.as_ref()) {
            if let Some(&val) = src.get(&ri) {
                g.insert(new_ri, val);
            }
        }
    }

    let structure = match out.analyze() {
        Ok(s) => s,
        Err(violations) => return Err(MoveError::NotAnXPart { region: bigon, violations }),
    };

    // Germ-order convention used by the inverse move: at the anchor slot
    // pair (one slot from each doubled pair, chosen by the cascade below so
    // that the two slot edges are distinct), the traversals arriving on the
    // smaller germ of their anchor edge are the two that shared an edge of
    // the X part. Germ labels per edge are isomorphism-gauge, so relabel one
    // anchor edge if needed to make the convention hold for the pairing this
    // X part actually had.
    let w_idx = out.vertices.len() - 1;
    if let Some(&roles) = structure.ii3_roles.get(&w_idx) {
        let edge_at = |slot: u8| structure.slot_edge[&(w_idx, slot)].0;
        {
            let (x, y) = anchor_slots(&roles, edge_at);
            let germ_at = |slot: u8| -> Vec<(usize, u8)> {
                // (removed edge, germ at this slot) of the two traversals.
                traversals
                    .iter()
                    .filter_map(|t| {
                        t.ends.iter().find(|&&(s, _)| s == slot).map(|&(_, g)| (t.removed, g))
                    })
                    .collect()
            };
            let (acc, bdd) = (germ_at(x), germ_at(y));
            if acc.len() == 2 && bdd.len() == 2 {
                let min_acc = if acc[0].1 < acc[1].1 { acc[0] } else { acc[1] };
                let (min_bdd, max_bdd) =
                    if bdd[0].1 < bdd[1].1 { (bdd[0], bdd[1]) } else { (bdd[1], bdd[0]) };
                if min_acc.0 != min_bdd.0 {
                    // Swap the two germ labels the y-side traversals use, on
                    // the y anchor edge only (distinct from the x anchor).
                    let (g1, g2) = (min_bdd.1, max_bdd.1);
                    let e_y = edge_at(y);
                    for r in &mut out.regions {
                        for c in &mut r.circuits {
                            for pass in c {
                                if pass.edge == e_y {
                                    if pass.germ == g1 {
                                        pass.germ = g2;
                                    } else if pass.germ == g2 {
                                        pass.germ = g1;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    match out.analyze() {
        Ok(_) => Ok(DecoratedPolyhedron { poly: out, branching, gleams }),
        Err(violations) => Err(MoveError::NotAnXPart { region: bigon, violations }),
    }
}

/// Expand a flagged vertex back into the two-vertex X part with its
/// +1-gleam bigon.
pub fn replace_vertex_with_x(
    dec: &DecoratedPolyhedron,
    vertex: usize,
) -> Result<DecoratedPolyhedron, MoveError> {
    let poly = &dec.poly;
    if vertex >= poly.vertices.len() {
        return Err(MoveError::NoSuchVertex(vertex));
    }
    if !poly.vertices[vertex].ii3 {
        return Err(MoveError::NotFlagged(vertex));
    }
    let structure = poly.analyze().map_err(MoveError::Invalid)?;
    let [sa, sb, sc, sd] = structure.ii3_roles[&vertex];

    // New vertices v0 (stubs of roles a,b) and v1 (roles c,d).
    let v0 = poly.vertices.len() - 1;
    let v1 = v0 + 1;
    let mut vertex_map: Vec<usize> = Vec::new();
    let mut next = 0usize;
    for vi in 0..poly.vertices.len() {
        if vi == vertex {
            vertex_map.push(usize::MAX);
        } else {
            vertex_map.push(next);
            next += 1;
        }
    }
    let slot_map: std::collections::BTreeMap<u8, (usize, u8)> = [
        (sa, (v0, 2)),
        (sb, (v0, 3)),
        (sc, (v1, 2)),
        (sd, (v1, 3)),
    ]
    .into_iter()
    .collect();

    let mut out = SimplePolyhedron::default();
    for (vi, v) in poly.vertices.iter().enumerate() {
        if vi != vertex {
            out.vertices.push(*v);
        }
    }
    out.vertices.push(Vertex::default());
    out.vertices.push(Vertex::default());
    let ea = poly.edges.len();
    let eb = ea + 1;
    for edge in &poly.edges {
        let shape = match edge.shape {
            EdgeShape::Interval { ends } => EdgeShape::Interval {
                ends: ends.map(|ep| {
                    if ep.vertex == vertex {
                        let &(nv, ns) = slot_map.get(&ep.slot).unwrap();
                        EndPoint { vertex: nv, slot: ns }
                    } else {
                        EndPoint { vertex: vertex_map[ep.vertex], slot: ep.slot }
                    }
                }),
            },
            EdgeShape::Circle { monodromy } => EdgeShape::Circle { monodromy },
        };
        out.edges.push(Edge { shape });
    }
    out.edges.push(Edge::interval(v0, 0, v1, 0));
    out.edges.push(Edge::interval(v0, 1, v1, 1));

    // Reroute circuits through the new edges at the doubled sectors.
    let vertex_of = |ge: GermEnd| -> usize {
        match poly.edges[ge.edge].shape {
            EdgeShape::Interval { ends } => ends[ge.end as usize].vertex,
            EdgeShape::Circle { .. } => usize::MAX,
        }
    };
    let slot_of = |ge: GermEnd| -> u8 {
        match poly.edges[ge.edge].shape {
            EdgeShape::Interval { ends } => ends[ge.end as usize].slot,
            EdgeShape::Circle { .. } => unreachable!(),
        }
    };
    // Of the two doubled {a,c} sectors one is the strip along edge a (germ 1)
    // and the other the strip along edge b (germ 1); the {b,d} sectors are
    // the germ-2 strips. Which goes where is fixed by the germ-order
    // convention the collapse establishes: at the anchor slots, the
    // traversals arriving on the smaller germ of their anchor edge share
    // edge ea, the others share eb.
    let ac = (sa.min(sc), sa.max(sc));
    let bd = (sb.min(sd), sb.max(sd));
    let (anchor_x, anchor_y) =
        anchor_slots(&[sa, sb, sc, sd], |s| structure.slot_edge[&(vertex, s)].0);
    let mut ac_travs: Vec<((usize, usize, usize), u8)> = Vec::new();
    let mut bd_travs: Vec<((usize, usize, usize), u8)> = Vec::new();
    for (ri, r) in poly.regions.iter().enumerate() {
        for (ci, circuit) in r.circuits.iter().enumerate() {
            if poly.edges[circuit[0].edge].is_circle() {
                continue;
            }
            let n = circuit.len();
            for i in 0..n {
                let p = circuit[i];
                let q = circuit[(i + 1) % n];
                if vertex_of(p.arrival()) != vertex {
                    continue;
                }
                let (s1, s2) = (slot_of(p.arrival()), slot_of(q.departure()));
                let pair = (s1.min(s2), s1.max(s2));
                if pair == ac {
                    let germ = if s1 == anchor_x { p.germ } else { q.germ };
                    ac_travs.push(((ri, ci, i), germ));
                } else if pair == bd {
                    let germ = if s1 == anchor_y { p.germ } else { q.germ };
                    bd_travs.push(((ri, ci, i), germ));
                }
            }
        }
    }
    let assign = |travs: &mut Vec<((usize, usize, usize), u8)>| {
        travs.sort_by_key(|&(_, g)| g);
        travs
            .iter()
            .enumerate()
            .map(|(k, &(key, _))| (key, if k == 0 { ea } else { eb }))
            .collect::<std::collections::BTreeMap<_, _>>()
    };
    let edge_of_trav: std::collections::BTreeMap<(usize, usize, usize), usize> = {
        let mut m = assign(&mut ac_travs);
        m.append(&mut assign(&mut bd_travs));
        m
    };
    for (ri, r) in poly.regions.iter().enumerate() {
        let mut region = Region { genus: r.genus, circuits: Vec::new(), free: r.free.clone() };
        for (ci, circuit) in r.circuits.iter().enumerate() {
            let pure_circle = poly.edges[circuit[0].edge].is_circle();
            let mut new_circuit = Vec::new();
            let n = circuit.len();
            for i in 0..n {
                let p = circuit[i];
                new_circuit.push(p);
                if pure_circle {
                    continue;
                }
                let q = circuit[(i + 1) % n];
                if vertex_of(p.arrival()) != vertex {
                    continue;
                }
                let (s1, s2) = (slot_of(p.arrival()), slot_of(q.departure()));
                let pair = (s1.min(s2), s1.max(s2));
                if pair == ac {
                    // Crossing from the v0 side to the v1 side or back.
                    let forward = s1 == sa;
                    let edge = edge_of_trav[&(ri, ci, i)];
                    new_circuit.push(Passage { edge, germ: 1, forward });
                } else if pair == bd {
                    let forward = s1 == sb;
                    let edge = edge_of_trav[&(ri, ci, i)];
                    new_circuit.push(Passage { edge, germ: 2, forward });
                }
            }
            region.circuits.push(new_circuit);
        }
        out.regions.push(region);
    }
    let bigon = out.regions.len();
    out.regions.push(Region {
        genus: 0,
        circuits: vec![vec![
            Passage { edge: ea, germ: 0, forward: true },
            Passage { edge: eb, germ: 0, forward: false },
        ]],
        free: Vec::new(),
    });

    let mut branching = dec.branching.clone();
    if let Some(b) = branching.as_mut() {
        // Pick the bigon orientation satisfying the edge condition at both
        // new edges.
        let mut dirs_a = Vec::new();
        let mut dirs_b = Vec::new();
        for (ri, r) in out.regions.iter().enumerate().take(bigon) {
            for c in &r.circuits {
                for p in c {
                    if p.edge == ea {
                        dirs_a.push(p.forward == b[ri]);
                    } else if p.edge == eb {
                        dirs_b.push(p.forward == b[ri]);
                    }
                }
            }
        }
        let mut sign = None;
        for s in [true, false] {
            let da = s; // bigon passage (ea, 0, true)
            let db = !s; // bigon passage (eb, 0, false)
            let ok_a = !(dirs_a.iter().all(|&d| d == da));
            let ok_b = !(dirs_b.iter().all(|&d| d == db));
            if ok_a && ok_b {
                sign = Some(s);
                break;
            }
        }
        match sign {
            Some(s) => b.push(s),
            None => return Err(MoveError::BranchingObstructed),
        }
    }
    let mut gleams = dec.gleams.clone();
    if let Some(g) = gleams.as_mut() {
        g.insert(bigon, HalfInt::from_int(1));
    }

    let out = DecoratedPolyhedron { poly: out, branching, gleams };
    match out.poly.analyze() {
        Ok(_) => Ok(out),
        Err(v) => Err(MoveError::Invalid(v)),
    }
}
