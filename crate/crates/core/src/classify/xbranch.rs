//! Compatibility of a closure with the branching of the X part.
//!
//! The X part carries a fixed branching: the bigon plus six boundary strips.
//! Each strip either runs along one of the free germs of edges `a`/`b`
//! (inducing a direction on that band) or crosses the stub-stub wing at one
//! of the vertices (inducing a transit direction there). A closure is
//! admissible when its regions can be oriented so that every strip is
//! traversed in its own direction, and the resulting branching satisfies the
//! edge condition everywhere.

use crate::poly::model::*;

use super::closures::{EDGE_A, EDGE_B};

/// Directions of the six strips relative to the bigon (whose boundary runs
/// forward along `a` germ 0 and backward along `b` germ 0). Flap directions
/// are `true` for v0 -> v1; wing transits are `true` for slot2 -> slot3.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct XBranching {
    pub a1: bool,
    pub a2: bool,
    pub b1: bool,
    pub b2: bool,
    pub wing_v0: bool,
    pub wing_v1: bool,
}

impl XBranching {
    /// Edge condition inside X: at edge a the directions (true, a1, a2) must
    /// not all agree, at edge b (false, b1, b2) must not.
    pub fn internally_valid(&self) -> bool {
        !(self.a1 && self.a2) && (self.b1 || self.b2)
    }

    pub fn all() -> Vec<XBranching> {
        let mut out = Vec::new();
        for a1 in [true, false] {
            for a2 in [true, false] {
                for b1 in [true, false] {
                    for b2 in [true, false] {
                        for wing_v0 in [true, false] {
                            for wing_v1 in [true, false] {
                                let x = XBranching { a1, a2, b1, b2, wing_v0, wing_v1 };
                                if x.internally_valid() {
                                    out.push(x);
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// The shipped branching of X; calibrated so that the census reproduces the
/// classical candidate lists (see `classify::census`): exactly four
/// branchable closures per graph type, none for the disconnected type.
pub const X_BRANCHING: XBranching = XBranching {
    a1: true,
    a2: false,
    b1: true,
    b2: false,
    wing_v0: false,
    wing_v1: true,
};

/// Try to orient the regions of a closure so that the fixed X branching is
/// restored; returns the branching (region signs) if one exists.
pub fn restore_x_branching(
    dec: &DecoratedPolyhedron,
    x: &XBranching,
) -> Option<Branching> {
    let poly = &dec.poly;
    let vertex_slot = |ge: GermEnd| -> (usize, u8) {
        match poly.edges[ge.edge].shape {
            EdgeShape::Interval { ends } => {
                let ep = ends[ge.end as usize];
                (ep.vertex, ep.slot)
            }
            EdgeShape::Circle { .. } => unreachable!("closures have no circle edges"),
        }
    };
    // Per region: collect required signs; requirement sign s means the
    // stored circuit direction realizes the X direction exactly when the
    // region keeps its stored orientation.
    let mut signs: Vec<Option<bool>> = vec![None; poly.regions.len()];
    let demand = |signs: &mut Vec<Option<bool>>, region: usize, s: bool| -> bool {
        match signs[region] {
            None => {
                signs[region] = Some(s);
                true
            }
            Some(prev) => prev == s,
        }
    };
    for (ri, region) in poly.regions.iter().enumerate() {
        for circuit in &region.circuits {
            let n = circuit.len();
            for i in 0..n {
                let p = circuit[i];
                // Band requirements from the bigon and the four flaps.
                let want = match (p.edge, p.germ) {
                    (EDGE_A, 0) => Some(true),
                    (EDGE_B, 0) => Some(false),
                    (EDGE_A, 1) => Some(x.a1),
                    (EDGE_A, 2) => Some(x.a2),
                    (EDGE_B, 1) => Some(x.b1),
                    (EDGE_B, 2) => Some(x.b2),
                    _ => None,
                };
                if let Some(w) = want {
                    if !demand(&mut signs, ri, p.forward == w) {
                        return None;
                    }
                }
                // Wing transit requirements at the stub-stub wings.
                let q = circuit[(i + 1) % n];
                if p.edge > EDGE_B || q.edge > EDGE_B {
                    let (va, sa) = vertex_slot(p.arrival());
                    let (vd, sd) = vertex_slot(q.departure());
                    debug_assert_eq!(va, vd);
                    if (sa == 2 && sd == 3) || (sa == 3 && sd == 2) {
                        let transit = sa == 2;
                        let w = if va == 0 { x.wing_v0 } else { x.wing_v1 };
                        if !demand(&mut signs, ri, transit == w) {
                            return None;
                        }
                    }
                }
            }
        }
    }
    let branching: Branching = signs.into_iter().map(|s| s.unwrap_or(true)).collect();
    // The induced branching must satisfy the edge condition everywhere.
    let structure = poly.analyze().ok()?;
    if crate::poly::branching::is_valid_branching(poly, &structure, &branching) {
        Some(branching)
    } else {
        None
    }
}
