//! Shadows of link diagrams: the starred mapping-cylinder polyhedron and
//! the reduced polyhedron with the outer region removed.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::poly::model::*;
use crate::poly::validate::Dsu;

use super::faces::{corner_contribution_twice, diagram_faces};
use super::pd::{strand_partner, LinkDiagram};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ShadowError {
    #[error("the closure of the outer region is not an annulus")]
    ClosureNotAnnulus,
    #[error("branching incompatibility on edge {edge}: the outer region and the annulus induce opposite directions")]
    BranchingIncompatible { edge: usize },
}

/// Where a region of a diagram shadow came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegionOrigin {
    /// A bounded face of the diagram.
    Face { face: usize },
    /// The outer face (touches the false-colored boundary circle).
    Outer,
    /// The half-open annulus over link component `component`.
    Annulus { component: usize },
    /// Faces and annuli merged by removing the outer region.
    Merged { faces: Vec<usize>, components: Vec<usize> },
}

/// A diagram shadow: the polyhedron with branching and gleams, region
/// origin tags, and (for the starred construction) the outer region.
#[derive(Clone, Debug)]
pub struct StarShadow {
    pub diagram: LinkDiagram,
    pub dec: DecoratedPolyhedron,
    pub origin: Vec<RegionOrigin>,
    pub outer_region: Option<usize>,
}

/// Gleam contributions at one crossing, in twice-units; always two +1/2 and
/// two -1/2.
pub fn crossing_contributions() -> [i64; 4] {
    [
        corner_contribution_twice(0),
        corner_contribution_twice(1),
        corner_contribution_twice(2),
        corner_contribution_twice(3),
    ]
}

/// Build the starred shadow: one region per face of the diagram (the outer
/// face carries the false-colored free circle) plus one annulus per link
/// component, with gleams from the crossing corner rule and the branching
/// that orients every face by the plane and each annulus by
/// `orientations` (default all positive).
pub fn build_star_shadow(d: &LinkDiagram, orientations: Option<&[bool]>) -> StarShadow {
    let orient = |j: usize| orientations.map_or(true, |o| o[j]);
    if d.unknot {
        // A circle edge with identity monodromy; germ 0 inner disk, germ 1
        // outer region, germ 2 annulus.
        let poly = SimplePolyhedron {
            vertices: Vec::new(),
            edges: vec![Edge::circle([0, 1, 2])],
            regions: vec![
                Region {
                    genus: 0,
                    circuits: vec![vec![Passage { edge: 0, germ: 0, forward: true }]],
                    free: Vec::new(),
                },
                Region {
                    genus: 0,
                    circuits: vec![vec![Passage { edge: 0, germ: 1, forward: false }]],
                    free: vec![Color::F],
                },
                Region {
                    genus: 0,
                    circuits: vec![vec![Passage { edge: 0, germ: 2, forward: orient(0) }]],
                    free: vec![Color::E],
                },
            ],
        };
        let mut gleams = Gleams::new();
        gleams.insert(0, HalfInt::from_int(0));
        let dec = DecoratedPolyhedron {
            poly,
            branching: Some(vec![true, true, true]),
            gleams: Some(gleams),
        };
        debug_assert!(dec.poly.analyze().is_ok());
        return StarShadow {
            diagram: d.clone(),
            dec,
            origin: vec![
                RegionOrigin::Face { face: 0 },
                RegionOrigin::Outer,
                RegionOrigin::Annulus { component: 0 },
            ],
            outer_region: Some(1),
        };
    }

    let (faces, outer) = diagram_faces(d);
    let ends = d.arc_ends();
    let edges: Vec<Edge> = ends
        .iter()
        .map(|e| Edge::interval(e[0].0, e[0].1, e[1].0, e[1].1))
        .collect();

    let mut regions = Vec::new();
    let mut origin = Vec::new();
    let mut gleams = Gleams::new();
    for (i, f) in faces.iter().enumerate() {
        // Germ 0 is the forward-traversing face side, germ 1 the backward.
        let circuit: Circuit = f
            .steps
            .iter()
            .map(|s| Passage {
                edge: s.arc,
                germ: if s.forward { 0 } else { 1 },
                forward: s.forward,
            })
            .collect();
        let free = if i == outer { vec![Color::F] } else { Vec::new() };
        if i != outer {
            let twice: i64 = f
                .steps
                .iter()
                .map(|s| corner_contribution_twice(s.corner))
                .sum();
            gleams.insert(regions.len(), HalfInt::halves(twice));
        }
        regions.push(Region { genus: 0, circuits: vec![circuit], free });
        origin.push(if i == outer {
            RegionOrigin::Outer
        } else {
            RegionOrigin::Face { face: i }
        });
    }
    let outer_region = faces
        .iter()
        .enumerate()
        .position(|(i, _)| i == outer)
        .unwrap();

    // Annulus circuits: follow each strand through the crossings.
    let mut seen = vec![false; d.arcs];
    let mut annuli: Vec<(usize, Circuit)> = Vec::new();
    for a0 in 0..d.arcs {
        if seen[a0] {
            continue;
        }
        let mut circuit = Vec::new();
        let (mut arc, mut forward) = (a0, true);
        loop {
            seen[arc] = true;
            circuit.push(Passage { edge: arc, germ: 2, forward });
            let (c, p) = ends[arc][forward as usize];
            let q = strand_partner(p);
            let next_arc = d.crossings[c][q as usize];
            let next_forward = ends[next_arc][0] == (c, q);
            arc = next_arc;
            forward = next_forward;
            if (arc, forward) == (a0, true) {
                break;
            }
        }
        annuli.push((d.component_of[a0], circuit));
    }
    annuli.sort_by_key(|&(j, _)| j);
    let mut branching = vec![true; regions.len()];
    for (j, mut circuit) in annuli {
        if !orient(j) {
            // Normalize to sign `true` by reversing the stored circuit.
            circuit.reverse();
            for p in circuit.iter_mut() {
                p.forward = !p.forward;
            }
        }
        regions.push(Region { genus: 0, circuits: vec![circuit], free: vec![Color::E] });
        origin.push(RegionOrigin::Annulus { component: j });
        branching.push(true);
    }

    let poly = SimplePolyhedron { vertices: vec![Vertex::default(); d.crossings.len()], edges, regions };
    let dec = DecoratedPolyhedron { poly, branching: Some(branching), gleams: Some(gleams) };
    debug_assert!(dec.poly.analyze().is_ok(), "{:?}", dec.poly.analyze());
    StarShadow { diagram: d.clone(), dec, origin, outer_region: Some(outer_region) }
}

/// A maximal chain of former arcs forming one edge of the reduced
/// polyhedron.
struct Chain {
    /// (arc, flip): flip is true when the chain traverses the arc from its
    /// end 1 to its end 0.
    parts: Vec<(usize, bool)>,
    /// Chain germ label -> germ label of each constituent arc.
    maps: Vec<[u8; 3]>,
    /// Terminal (crossing, position) pairs for interval chains.
    ends: Option<[(usize, u8); 2]>,
    /// Full-loop germ continuation for circle chains.
    monodromy: Option<[u8; 3]>,
}

/// Remove the outer region: demote the crossings and arcs on its boundary,
/// concatenate the surviving singular arcs into chains, and merge each face
/// adjacent to a demoted arc with the annulus on its far side.
pub fn remove_outer_region(s: &StarShadow) -> Result<StarShadow, ShadowError> {
    let outer = s.outer_region.ok_or(ShadowError::ClosureNotAnnulus)?;
    let d = &s.diagram;
    let poly = &s.dec.poly;
    let r = &poly.regions[outer];
    if r.genus != 0 || r.circuits.len() != 1 {
        return Err(ShadowError::ClosureNotAnnulus);
    }
    let rc = &r.circuits[0];
    if rc.iter().any(|p| poly.edges[p.edge].is_circle()) {
        // A circle-edge boundary (zero-crossing unknot): the closure is a
        // disk, not an annulus embedded along interval edges.
        return Err(ShadowError::ClosureNotAnnulus);
    }
    let ends = d.arc_ends();

    // Demoted arcs and crossings; the closure is an embedded annulus only
    // if no arc and no crossing repeats.
    let mut r_germ: BTreeMap<usize, u8> = BTreeMap::new();
    let mut corner: BTreeMap<usize, u8> = BTreeMap::new();
    let n = rc.len();
    for i in 0..n {
        let p = rc[i];
        if r_germ.insert(p.edge, p.germ).is_some() {
            return Err(ShadowError::ClosureNotAnnulus);
        }
        let (c, sa) = {
            let ge = p.arrival();
            let ep = match poly.edges[ge.edge].shape {
                EdgeShape::Interval { ends } => ends[ge.end as usize],
                EdgeShape::Circle { .. } => unreachable!(),
            };
            (ep.vertex, ep.slot)
        };
        debug_assert_eq!(
            {
                let ge = rc[(i + 1) % n].departure();
                match poly.edges[ge.edge].shape {
                    EdgeShape::Interval { ends } => ends[ge.end as usize].slot,
                    EdgeShape::Circle { .. } => unreachable!(),
                }
            },
            (sa + 1) % 4
        );
        if corner.insert(c, sa).is_some() {
            return Err(ShadowError::ClosureNotAnnulus);
        }
    }

    // Region of each face germ / annulus germ per arc.
    let mut germ_region: BTreeMap<(usize, u8), usize> = BTreeMap::new();
    for (ri, region) in poly.regions.iter().enumerate() {
        for circuit in &region.circuits {
            for p in circuit {
                germ_region.insert((p.edge, p.germ), ri);
            }
        }
    }

    // Branching compatibility: on each demoted arc the outer region and the
    // annulus must induce the same direction.
    for p in rc {
        let annulus_region = germ_region[&(p.edge, 2)];
        let fa = poly.regions[annulus_region].circuits[0]
            .iter()
            .find(|q| q.edge == p.edge)
            .unwrap()
            .forward;
        if fa != p.forward {
            return Err(ShadowError::BranchingIncompatible { edge: p.edge });
        }
    }

    // Wing step at a crossing: from the germ-end of the arc at `pos` into
    // the adjacent sector, to the partner germ-end.
    let end_index = |c: usize, pos: u8| -> (usize, u8) {
        let arc = d.crossings[c][pos as usize];
        let k = if ends[arc][0] == (c, pos) { 0 } else { 1 };
        (arc, k)
    };
    let wing = |c: usize, pos: u8, germ: u8| -> (u8, u8) {
        if germ == 2 {
            return ((pos + 2) % 4, 2);
        }
        let (_, k) = end_index(c, pos);
        let arriving = if k == 1 { 0 } else { 1 };
        if germ == arriving {
            let q = (pos + 1) % 4;
            let (_, kb) = end_index(c, q);
            (q, if kb == 0 { 0 } else { 1 })
        } else {
            let q = (pos + 3) % 4;
            let (_, kb) = end_index(c, q);
            (q, if kb == 1 { 0 } else { 1 })
        }
    };
    // Germ continuation through a demoted crossing from the singular arc at
    // position corner+2 to the one at corner+3.
    let chase = |c: usize, g: u8| -> u8 {
        let s1 = (corner[&c] + 2) % 4;
        let s2 = (corner[&c] + 3) % 4;
        let (mut pos, mut germ) = wing(c, s1, g);
        loop {
            if pos == s2 {
                return germ;
            }
            let (arc, _) = end_index(c, pos);
            let gr = r_germ[&arc];
            let other = 1 - gr;
            germ = if germ == 2 {
                other
            } else {
                debug_assert_eq!(germ, other, "sheet trace must avoid the removed corner");
                2
            };
            let next = wing(c, pos, germ);
            pos = next.0;
            germ = next.1;
        }
    };

    // Links between singular arc ends through demoted crossings.
    let mut links: BTreeMap<(usize, u8), (usize, u8, [u8; 3])> = BTreeMap::new();
    for (&c, &sa) in &corner {
        let s1 = (sa + 2) % 4;
        let s2 = (sa + 3) % 4;
        let (a1, k1) = end_index(c, s1);
        let (a2, k2) = end_index(c, s2);
        let phi = [chase(c, 0), chase(c, 1), chase(c, 2)];
        let mut inv = [0u8; 3];
        for g in 0..3 {
            inv[phi[g] as usize] = g as u8;
        }
        links.insert((a1, k1), (a2, k2, phi));
        links.insert((a2, k2), (a1, k1, inv));
    }

    // Assemble chains.
    let singular: Vec<usize> =
        (0..d.arcs).filter(|a| !r_germ.contains_key(a)).collect();
    let compose = |m: [u8; 3], phi: [u8; 3]| -> [u8; 3] {
        [phi[m[0] as usize], phi[m[1] as usize], phi[m[2] as usize]]
    };
    let mut chains: Vec<Chain> = Vec::new();
    let mut in_chain: BTreeMap<usize, (usize, usize)> = BTreeMap::new(); // arc -> (chain, index)
    // Interval chains, started from terminals in (crossing, position) order.
    let mut terminals: Vec<(usize, u8, usize, u8)> = Vec::new(); // (crossing, pos, arc, end)
    for &a in &singular {
        for k in 0..2u8 {
            if !links.contains_key(&(a, k)) {
                let (c, p) = ends[a][k as usize];
                terminals.push((c, p, a, k));
            }
        }
    }
    terminals.sort();
    for &(c0, p0, a0, k0) in &terminals {
        if in_chain.contains_key(&a0) {
            continue;
        }
        let mut parts = Vec::new();
        let mut maps = Vec::new();
        let (mut arc, mut enter) = (a0, k0);
        let mut map = [0u8, 1, 2];
        let (c1, p1) = loop {
            in_chain.insert(arc, (chains.len(), parts.len()));
            parts.push((arc, enter == 1));
            maps.push(map);
            let exit = 1 - enter;
            match links.get(&(arc, exit)) {
                Some(&(a2, k2, phi)) => {
                    map = compose(map, phi);
                    arc = a2;
                    enter = k2;
                }
                None => break ends[arc][exit as usize],
            }
        };
        chains.push(Chain { parts, maps, ends: Some([(c0, p0), (c1, p1)]), monodromy: None });
    }
    // Circle chains from whatever is left.
    for &a0 in &singular {
        if in_chain.contains_key(&a0) {
            continue;
        }
        let mut parts = Vec::new();
        let mut maps = Vec::new();
        let (mut arc, mut enter) = (a0, 0u8);
        let mut map = [0u8, 1, 2];
        loop {
            in_chain.insert(arc, (chains.len(), parts.len()));
            parts.push((arc, enter == 1));
            maps.push(map);
            let exit = 1 - enter;
            let &(a2, k2, phi) = links.get(&(arc, exit)).unwrap();
            map = compose(map, phi);
            if (a2, k2) == (a0, 0) {
                break;
            }
            arc = a2;
            enter = k2;
        }
        chains.push(Chain { parts, maps, ends: None, monodromy: Some(map) });
    }

    // New vertices: live crossings.
    let mut new_vertex: BTreeMap<usize, usize> = BTreeMap::new();
    for c in 0..d.crossings.len() {
        if !corner.contains_key(&c) {
            let id = new_vertex.len();
            new_vertex.insert(c, id);
        }
    }
    let new_edges: Vec<Edge> = chains
        .iter()
        .map(|ch| match (&ch.ends, &ch.monodromy) {
            (Some([(c0, p0), (c1, p1)]), None) => {
                Edge::interval(new_vertex[c0], *p0, new_vertex[c1], *p1)
            }
            (None, Some(m)) => Edge::circle(*m),
            _ => unreachable!(),
        })
        .collect();

    // Splice the old region boundaries across the demoted arcs. Passages
    // are identified by (region, circuit, position); the annulus signs are
    // already normalized to `true` by construction.
    let mut pool: Vec<(usize, usize, usize, Passage)> = Vec::new();
    let mut index_of: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    for (ri, region) in poly.regions.iter().enumerate() {
        if ri == outer {
            continue;
        }
        for (ci, circuit) in region.circuits.iter().enumerate() {
            for (pi, &p) in circuit.iter().enumerate() {
                index_of.insert((ri, ci, pi), pool.len());
                pool.push((ri, ci, pi, p));
            }
        }
    }
    // The other passage on a demoted arc (its merge partner).
    let mut partner_on_arc: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &(_, _, _, p)) in pool.iter().enumerate() {
        if r_germ.contains_key(&p.edge) {
            partner_on_arc.entry(p.edge).or_default().push(i);
        }
    }
    let advance = |ri: usize, ci: usize, pi: usize| -> (usize, usize, usize) {
        let len = poly.regions[ri].circuits[ci].len();
        (ri, ci, (pi + 1) % len)
    };
    let successor = |start: usize| -> usize {
        let (ri, ci, pi, _) = pool[start];
        let (mut ri, mut ci, mut pi) = advance(ri, ci, pi);
        loop {
            let i = index_of[&(ri, ci, pi)];
            let p = pool[i].3;
            if !r_germ.contains_key(&p.edge) {
                return i;
            }
            let pair = &partner_on_arc[&p.edge];
            debug_assert_eq!(pair.len(), 2);
            let j = if pair[0] == i { pair[1] } else { pair[0] };
            let (rj, cj, pj, _) = pool[j];
            let next = advance(rj, cj, pj);
            ri = next.0;
            ci = next.1;
            pi = next.2;
        }
    };

    // New boundary circuits as orbits over the surviving passages.
    let mut orbit_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for i in 0..pool.len() {
        if r_germ.contains_key(&pool[i].3.edge) || orbit_of.contains_key(&i) {
            continue;
        }
        let mut orbit = Vec::new();
        let mut j = i;
        loop {
            orbit_of.insert(j, orbits.len());
            orbit.push(j);
            j = successor(j);
            if j == i {
                break;
            }
        }
        orbits.push(orbit);
    }

    // Translate an orbit into passages over the new edges.
    let translate = |orbit: &[usize]| -> Circuit {
        let steps: Vec<(usize, usize, u8, bool)> = orbit
            .iter()
            .map(|&i| {
                let p = pool[i].3;
                let (chain, idx) = in_chain[&p.edge];
                let flip = chains[chain].parts[idx].1;
                let m = chains[chain].maps[idx];
                let mut inv = [0u8; 3];
                for g in 0..3 {
                    inv[m[g] as usize] = g as u8;
                }
                (chain, idx, inv[p.germ as usize], p.forward != flip)
            })
            .collect();
        let n = steps.len();
        if chains[steps[0].0].monodromy.is_some() {
            // Pure circle-chain circuit: rotate to the seam, then chunk
            // into full loops.
            let len = chains[steps[0].0].parts.len();
            debug_assert_eq!(n % len, 0);
            let dir = steps[0].3;
            let seam = if dir { 0 } else { len - 1 };
            let start = steps.iter().position(|s| s.1 == seam).unwrap();
            (0..n / len)
                .map(|k| {
                    let s = steps[(start + k * len) % n];
                    Passage { edge: s.0, germ: s.2, forward: s.3 }
                })
                .collect()
        } else {
            // Merge maximal runs along interval chains.
            let mut out = Vec::new();
            let mut i = 0usize;
            while i < n {
                let (chain, idx, germ, dir) = steps[i];
                let len = chains[chain].parts.len();
                debug_assert_eq!(idx, if dir { 0 } else { len - 1 });
                for k in 1..len {
                    let expect = if dir { idx + k } else { idx - k };
                    debug_assert_eq!(steps[i + k].1, expect);
                    debug_assert_eq!((steps[i + k].0, steps[i + k].2, steps[i + k].3), (chain, germ, dir));
                }
                out.push(Passage { edge: chain, germ, forward: dir });
                i += len;
            }
            out
        }
    };

    // Group old regions merged across demoted arcs.
    let mut dsu = Dsu::new(poly.regions.len());
    for (&arc, &g) in &r_germ {
        let face = germ_region[&(arc, 1 - g)];
        let annulus = germ_region[&(arc, 2)];
        dsu.union(face, annulus);
    }
    let mut group_ids: BTreeMap<usize, usize> = BTreeMap::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for ri in 0..poly.regions.len() {
        if ri == outer {
            continue;
        }
        let root = dsu.find(ri);
        let gid = *group_ids.entry(root).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[gid].push(ri);
    }

    // Build the new regions, transferring gleams of unmerged faces.
    let old_gleams = s.dec.gleams.as_ref().unwrap();
    let mut regions = Vec::new();
    let mut origin = Vec::new();
    let mut gleams = Gleams::new();
    for members in &groups {
        let mut circuits: Vec<Circuit> = Vec::new();
        let mut taken = BTreeSet::new();
        for &i in orbit_of.keys() {
            let oi = orbit_of[&i];
            if taken.contains(&oi) || !members.contains(&pool[i].0) {
                continue;
            }
            taken.insert(oi);
            circuits.push(translate(&orbits[oi]));
        }
        let mut free = Vec::new();
        let mut faces_in = Vec::new();
        let mut comps_in = Vec::new();
        for &ri in members {
            free.extend(poly.regions[ri].free.iter().copied());
            match &s.origin[ri] {
                RegionOrigin::Face { face } => faces_in.push(*face),
                RegionOrigin::Annulus { component } => comps_in.push(*component),
                other => unreachable!("outer region excluded, got {other:?}"),
            }
        }
        let glued = r_germ
            .keys()
            .filter(|&&arc| members.contains(&germ_region[&(arc, 2)]))
            .count();
        let chi = faces_in.len() as i64 - glued as i64;
        let b = (circuits.len() + free.len()) as i64;
        let genus2 = 2 - chi - b;
        assert!(genus2 >= 0 && genus2 % 2 == 0, "bad genus bookkeeping");
        let idx = regions.len();
        if comps_in.is_empty() {
            debug_assert_eq!(faces_in.len(), 1);
            gleams.insert(idx, old_gleams[&members[0]]);
        }
        origin.push(if comps_in.is_empty() {
            RegionOrigin::Face { face: faces_in[0] }
        } else if faces_in.is_empty() {
            RegionOrigin::Annulus { component: comps_in[0] }
        } else {
            faces_in.sort();
            comps_in.sort();
            comps_in.dedup();
            RegionOrigin::Merged { faces: faces_in.clone(), components: comps_in.clone() }
        });
        regions.push(Region { genus: (genus2 / 2) as u32, circuits, free });
    }

    let branching = vec![true; regions.len()];
    let poly2 = SimplePolyhedron {
        vertices: vec![Vertex::default(); new_vertex.len()],
        edges: new_edges,
        regions,
    };
    let dec = DecoratedPolyhedron {
        poly: poly2,
        branching: Some(branching.clone()),
        gleams: Some(gleams),
    };
    let structure = dec
        .poly
        .analyze()
        .unwrap_or_else(|v| panic!("reduced shadow must be a valid polyhedron: {v:?}"));
    debug_assert!(crate::poly::branching::is_valid_branching(&dec.poly, &structure, &branching));
    Ok(StarShadow { diagram: d.clone(), dec, origin, outer_region: None })
}

/// Reduce with the lexicographically least annulus orientation vector for
/// which the outer-region removal is branching-compatible.
pub fn reduce_with_best_orientations(
    d: &LinkDiagram,
) -> Result<(StarShadow, Vec<bool>), ShadowError> {
    let ncomp = if d.unknot { 1 } else { d.components };
    let mut last = Err(ShadowError::ClosureNotAnnulus);
    for mask in 0..(1u32 << ncomp) {
        // Lexicographic: false < true, component 0 most significant.
        let orient: Vec<bool> =
            (0..ncomp).map(|j| mask & (1 << (ncomp - 1 - j)) != 0).collect();
        let star = build_star_shadow(d, Some(&orient));
        match remove_outer_region(&star) {
            Ok(reduced) => return Ok((reduced, orient)),
            Err(e) => last = Err(e),
        }
    }
    last.map(|_: StarShadow| unreachable!())
}
