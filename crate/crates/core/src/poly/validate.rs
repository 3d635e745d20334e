//! Structural validation and the derived local structure.
//!
//! Validation rebuilds, from the stored circuits, the sector decomposition at
//! every vertex (twelve germ-ends pairing into six wings) and checks the
//! local models: ordinary vertices must realize the cone over the complete
//! graph on the four slots; vertices flagged `ii3` must realize the sector
//! pattern left behind by collapsing the X part.

use std::collections::BTreeMap;

use thiserror::Error;

use super::model::*;

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum Violation {
    #[error("edge {edge} end {end} references vertex {vertex} which does not exist")]
    BadVertexRef { edge: usize, end: u8, vertex: usize },
    #[error("edge {edge} end {end} uses slot {slot}, outside 0..=3")]
    BadSlot { edge: usize, end: u8, slot: u8 },
    #[error("circle edge {edge} monodromy {monodromy:?} is not a permutation of 0..=2")]
    BadMonodromy { edge: usize, monodromy: [u8; 3] },
    #[error("vertex {vertex} slot {slot} is met by {count} interval edge ends, expected exactly 1")]
    SlotOccupancy { vertex: usize, slot: u8, count: usize },
    #[error("region {region} circuit {circuit} position {pos}: passage references edge {edge} which does not exist")]
    BadEdgeRef { region: usize, circuit: usize, pos: usize, edge: usize },
    #[error("region {region} circuit {circuit} position {pos}: germ {germ} outside 0..=2")]
    BadGerm { region: usize, circuit: usize, pos: usize, germ: u8 },
    #[error("region {region} circuit {circuit} is empty")]
    EmptyCircuit { region: usize, circuit: usize },
    #[error("band (edge {edge}, germ {germ}) is traversed by {count} passages, expected exactly 1")]
    BandMultiplicity { edge: usize, germ: u8, count: usize },
    #[error("region {region} circuit {circuit} mixes circle-edge and interval-edge passages")]
    MixedCircuit { region: usize, circuit: usize },
    #[error("region {region} circuit {circuit} position {pos}: circle-edge passage does not follow the monodromy of edge {edge}")]
    MonodromyBreak { region: usize, circuit: usize, pos: usize, edge: usize },
    #[error("region {region} circuit {circuit} position {pos}: arrival vertex of one passage differs from departure vertex of the next")]
    VertexMismatch { region: usize, circuit: usize, pos: usize },
    #[error("vertex {vertex}: sector structure is not the cone over K4 (slot-pair multiset {pairs:?})")]
    NotOrdinaryVertex { vertex: usize, pairs: Vec<(u8, u8)> },
    #[error("vertex {vertex}: sector structure does not match the collapsed X pattern (slot-pair multiset {pairs:?})")]
    NotII3Vertex { vertex: usize, pairs: Vec<(u8, u8)> },
    #[error("polyhedron is not connected")]
    Disconnected,
    #[error("polyhedron is empty")]
    Empty,
}

/// One wing at a vertex: an unordered pair of germ-ends joined by a sector of
/// some region, with the region and the stored boundary direction through it.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Sector {
    pub from: GermEnd,
    pub to: GermEnd,
    pub region: usize,
}

/// Where a band is traversed: (region, circuit, position, stored direction).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BandUse {
    pub region: usize,
    pub circuit: usize,
    pub pos: usize,
    pub forward: bool,
}

/// Derived combinatorial structure of a valid polyhedron.
#[derive(Clone, Debug, Default)]
pub struct Structure {
    /// For each vertex, its six sectors.
    pub sectors: Vec<Vec<Sector>>,
    /// For each vertex flagged ii3, a slot-role assignment [a, b, c, d] such
    /// that the doubled sector pairs are {a,c} and {b,d} and the single pairs
    /// are {a,b} and {c,d}.
    pub ii3_roles: BTreeMap<usize, [u8; 4]>,
    /// Band (edge, germ) -> its unique traversal.
    pub band_use: BTreeMap<(usize, u8), BandUse>,
    /// Vertex slot -> (edge, end) of the interval edge end sitting there.
    pub slot_edge: BTreeMap<(usize, u8), (usize, u8)>,
}

impl Structure {
    /// Vertex at a germ-end.
    pub fn germ_end_vertex(&self, poly: &SimplePolyhedron, ge: GermEnd) -> usize {
        match poly.edges[ge.edge].shape {
            EdgeShape::Interval { ends } => ends[ge.end as usize].vertex,
            EdgeShape::Circle { .. } => unreachable!("circle edges have no germ-ends"),
        }
    }
}

fn germ_end_slot(poly: &SimplePolyhedron, ge: GermEnd) -> (usize, u8) {
    match poly.edges[ge.edge].shape {
        EdgeShape::Interval { ends } => {
            let ep = ends[ge.end as usize];
            (ep.vertex, ep.slot)
        }
        EdgeShape::Circle { .. } => unreachable!(),
    }
}

/// Check the II3 sector pattern and recover a slot-role assignment.
///
/// The pattern from collapsing an X part: with roles (a,b,c,d), the six
/// slot-pairs are {a,c} twice, {b,d} twice, {a,b} once, {c,d} once.
fn ii3_roles_from_pairs(pairs: &[(u8, u8)]) -> Option<[u8; 4]> {
    let mut counts: BTreeMap<(u8, u8), usize> = BTreeMap::new();
    for &p in pairs {
        if p.0 == p.1 {
            return None;
        }
        *counts.entry(p).or_insert(0) += 1;
    }
    let doubled: Vec<(u8, u8)> = counts.iter().filter(|&(_, &c)| c == 2).map(|(&p, _)| p).collect();
    let single: Vec<(u8, u8)> = counts.iter().filter(|&(_, &c)| c == 1).map(|(&p, _)| p).collect();
    if doubled.len() != 2 || single.len() != 2 {
        return None;
    }
    let (d1, d2) = (doubled[0], doubled[1]);
    let (s1, s2) = (single[0], single[1]);
    // Both the doubled and the single pairs must be perfect pairings of the
    // four slots, and they must be different pairings.
    let disjoint = |p: (u8, u8), q: (u8, u8)| p.0 != q.0 && p.0 != q.1 && p.1 != q.0 && p.1 != q.1;
    if !disjoint(d1, d2) || !disjoint(s1, s2) || doubled == single {
        return None;
    }
    // Roles: a in d1 and s1, b = s1's other slot, c = d1's other, d = d2's
    // slot paired with c in s2.
    let (a, c) = if d1.0 == s1.0 || d1.0 == s1.1 { (d1.0, d1.1) } else { (d1.1, d1.0) };
    let b = if s1.0 == a { s1.1 } else { s1.0 };
    let d = if s2.0 == c { s2.1 } else { s2.0 };
    // Sanity: {b,d} must be the other doubled pair.
    let bd = (b.min(d), b.max(d));
    if bd != d2 {
        return None;
    }
    Some([a, b, c, d])
}

impl SimplePolyhedron {
    /// Full structural validation. Returns the derived structure on success,
    /// otherwise every violation found.
    pub fn analyze(&self) -> Result<Structure, Vec<Violation>> {
        let mut violations = Vec::new();
        if self.vertices.is_empty() && self.edges.is_empty() && self.regions.is_empty() {
            return Err(vec![Violation::Empty]);
        }

        // Edge endpoint sanity and slot occupancy.
        let mut slot_edge: BTreeMap<(usize, u8), Vec<(usize, u8)>> = BTreeMap::new();
        for (ei, edge) in self.edges.iter().enumerate() {
            match edge.shape {
                EdgeShape::Interval { ends } => {
                    for (end, ep) in ends.iter().enumerate() {
                        if ep.vertex >= self.vertices.len() {
                            violations.push(Violation::BadVertexRef {
                                edge: ei,
                                end: end as u8,
                                vertex: ep.vertex,
                            });
                        } else if ep.slot > 3 {
                            violations.push(Violation::BadSlot {
                                edge: ei,
                                end: end as u8,
                                slot: ep.slot,
                            });
                        } else {
                            slot_edge
                                .entry((ep.vertex, ep.slot))
                                .or_default()
                                .push((ei, end as u8));
                        }
                    }
                }
                EdgeShape::Circle { monodromy } => {
                    let mut seen = [false; 3];
                    let mut ok = true;
                    for &m in &monodromy {
                        if m > 2 || seen[m as usize] {
                            ok = false;
                        } else {
                            seen[m as usize] = true;
                        }
                    }
                    if !ok {
                        violations.push(Violation::BadMonodromy { edge: ei, monodromy });
                    }
                }
            }
        }
        if !violations.is_empty() {
            return Err(violations);
        }
        for v in 0..self.vertices.len() {
            for s in 0..4u8 {
                let count = slot_edge.get(&(v, s)).map_or(0, |u| u.len());
                if count != 1 {
                    violations.push(Violation::SlotOccupancy { vertex: v, slot: s, count });
                }
            }
        }

        // Passage sanity and band multiplicity.
        let mut band_use: BTreeMap<(usize, u8), Vec<BandUse>> = BTreeMap::new();
        for (ri, region) in self.regions.iter().enumerate() {
            for (ci, circuit) in region.circuits.iter().enumerate() {
                if circuit.is_empty() {
                    violations.push(Violation::EmptyCircuit { region: ri, circuit: ci });
                    continue;
                }
                for (pi, p) in circuit.iter().enumerate() {
                    if p.edge >= self.edges.len() {
                        violations.push(Violation::BadEdgeRef {
                            region: ri,
                            circuit: ci,
                            pos: pi,
                            edge: p.edge,
                        });
                    } else if p.germ > 2 {
                        violations.push(Violation::BadGerm {
                            region: ri,
                            circuit: ci,
                            pos: pi,
                            germ: p.germ,
                        });
                    } else {
                        band_use.entry((p.edge, p.germ)).or_default().push(BandUse {
                            region: ri,
                            circuit: ci,
                            pos: pi,
                            forward: p.forward,
                        });
                    }
                }
            }
        }
        if !violations.is_empty() {
            return Err(violations);
        }
        for (ei, _) in self.edges.iter().enumerate() {
            for g in 0..GERMS {
                let count = band_use.get(&(ei, g)).map_or(0, |u| u.len());
                if count != 1 {
                    violations.push(Violation::BandMultiplicity { edge: ei, germ: g, count });
                }
            }
        }
        if !violations.is_empty() {
            return Err(violations);
        }

        // Circuit continuity: pure circle-edge orbits or vertex transits.
        let mut sectors: Vec<Vec<Sector>> = vec![Vec::new(); self.vertices.len()];
        for (ri, region) in self.regions.iter().enumerate() {
            for (ci, circuit) in region.circuits.iter().enumerate() {
                let any_circle = circuit.iter().any(|p| self.edges[p.edge].is_circle());
                let all_circle = circuit.iter().all(|p| self.edges[p.edge].is_circle());
                if any_circle && !all_circle {
                    violations.push(Violation::MixedCircuit { region: ri, circuit: ci });
                    continue;
                }
                if all_circle {
                    // Single-edge orbit of the monodromy.
                    let e0 = circuit[0].edge;
                    let fwd = circuit[0].forward;
                    let mono = match self.edges[e0].shape {
                        EdgeShape::Circle { monodromy } => monodromy,
                        _ => unreachable!(),
                    };
                    let mut inv = [0u8; 3];
                    for g in 0..3 {
                        inv[mono[g] as usize] = g as u8;
                    }
                    let n = circuit.len();
                    for pi in 0..n {
                        let p = circuit[pi];
                        let q = circuit[(pi + 1) % n];
                        let expected = if fwd { mono[p.germ as usize] } else { inv[p.germ as usize] };
                        if p.edge != e0 || p.forward != fwd || q.germ != expected {
                            violations.push(Violation::MonodromyBreak {
                                region: ri,
                                circuit: ci,
                                pos: pi,
                                edge: e0,
                            });
                            break;
                        }
                    }
                } else {
                    let n = circuit.len();
                    for pi in 0..n {
                        let p = circuit[pi];
                        let q = circuit[(pi + 1) % n];
                        let (va, _) = germ_end_slot(self, p.arrival());
                        let (vd, _) = germ_end_slot(self, q.departure());
                        if va != vd {
                            violations.push(Violation::VertexMismatch {
                                region: ri,
                                circuit: ci,
                                pos: pi,
                            });
                        } else {
                            sectors[va].push(Sector {
                                from: p.arrival(),
                                to: q.departure(),
                                region: ri,
                            });
                        }
                    }
                }
            }
        }
        if !violations.is_empty() {
            return Err(violations);
        }

        // Local models at vertices.
        let mut ii3_roles = BTreeMap::new();
        for (vi, vertex) in self.vertices.iter().enumerate() {
            let mut pairs: Vec<(u8, u8)> = sectors[vi]
                .iter()
                .map(|s| {
                    let (_, s1) = germ_end_slot(self, s.from);
                    let (_, s2) = germ_end_slot(self, s.to);
                    (s1.min(s2), s1.max(s2))
                })
                .collect();
            pairs.sort();
            if vertex.ii3 {
                match ii3_roles_from_pairs(&pairs) {
                    Some(roles) => {
                        ii3_roles.insert(vi, roles);
                    }
                    None => violations.push(Violation::NotII3Vertex { vertex: vi, pairs }),
                }
            } else {
                let k4: Vec<(u8, u8)> =
                    vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
                if pairs != k4 {
                    violations.push(Violation::NotOrdinaryVertex { vertex: vi, pairs });
                }
            }
        }

        // Connectivity: vertices, edges and regions as nodes.
        {
            let nv = self.vertices.len();
            let ne = self.edges.len();
            let nr = self.regions.len();
            let n = nv + ne + nr;
            let mut dsu = Dsu::new(n);
            for (ei, edge) in self.edges.iter().enumerate() {
                if let EdgeShape::Interval { ends } = edge.shape {
                    for ep in ends {
                        dsu.union(ep.vertex, nv + ei);
                    }
                }
            }
            for (ri, region) in self.regions.iter().enumerate() {
                for circuit in &region.circuits {
                    for p in circuit {
                        dsu.union(nv + p.edge, nv + ne + ri);
                    }
                }
            }
            let root = dsu.find(0);
            if (0..n).any(|i| dsu.find(i) != root) {
                violations.push(Violation::Disconnected);
            }
        }

        if !violations.is_empty() {
            return Err(violations);
        }

        Ok(Structure {
            sectors,
            ii3_roles,
            band_use: band_use.into_iter().map(|(k, v)| (k, v[0])).collect(),
            slot_edge: slot_edge.into_iter().map(|(k, v)| (k, v[0])).collect(),
        })
    }

    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        self.analyze().map(|_| ())
    }
}

/// Plain disjoint-set union.
pub struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Dsu {
        Dsu { parent: (0..n).collect() }
    }

    pub fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        self.parent[ra] = rb;
        ra != rb
    }
}
