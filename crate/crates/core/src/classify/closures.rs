//! Closures of the X part along a two-vertex 4-valent graph.
//!
//! The X part has two ordinary vertices joined by edges `a` and `b` carrying
//! a +1-gleam bigon. A closure attaches two further edges `e1`, `e2` to the
//! remaining four slots and chooses how the germs meet the wings at each
//! vertex. The wing structure of X itself (which free germ of `a`/`b` meets
//! which stub slot) is fixed; every choice is normalized so that germ labels
//! along each edge are constant (band-preserving), leaving: the stub
//! matching (three ways to pair four slots into two edges given `a`, `b`
//! fixed) and a wing permutation for the far end of each new edge.

use crate::poly::model::*;

/// How the four stub slots close up.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum Matching {
    /// e1: v0.2-v1.2, e2: v0.3-v1.3 (graph type 1).
    Parallel,
    /// e1: v0.2-v1.3, e2: v0.3-v1.2 (graph type 1).
    Crossed,
    /// e1: loop at v0, e2: loop at v1 (graph type 2).
    Loops,
}

impl Matching {
    pub fn graph_type(self) -> u8 {
        match self {
            Matching::Parallel | Matching::Crossed => 1,
            Matching::Loops => 2,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub struct ClosureSpec {
    pub matching: Matching,
    /// Wing assignment at the non-gauge-fixed end of e1/e2: germ g attaches
    /// to the perm[g]-th partner slot (ascending order).
    pub perm1: [u8; 3],
    pub perm2: [u8; 3],
}

pub const PERMS: [[u8; 3]; 6] =
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// All 108 closure specifications.
pub fn all_closure_specs() -> Vec<ClosureSpec> {
    let mut out = Vec::new();
    for matching in [Matching::Parallel, Matching::Crossed, Matching::Loops] {
        for perm1 in PERMS {
            for perm2 in PERMS {
                out.push(ClosureSpec { matching, perm1, perm2 });
            }
        }
    }
    out
}

/// Edge ids in every closure.
pub const EDGE_A: usize = 0;
pub const EDGE_B: usize = 1;
pub const EDGE_E1: usize = 2;
pub const EDGE_E2: usize = 3;

/// Per-slot description: which edge end sits there and, for each of its
/// germs, the partner slot of the wing it attaches to.
#[derive(Clone, Copy, Debug)]
struct SlotAttach {
    edge: usize,
    end: u8,
    /// wing partner slot per germ.
    partner: [u8; 3],
}

fn perm_partner(others: [u8; 3], perm: [u8; 3]) -> [u8; 3] {
    [others[perm[0] as usize], others[perm[1] as usize], others[perm[2] as usize]]
}

/// Build the closure polyhedron: vertices v0, v1; edges a, b, e1, e2; the
/// +1-gleam bigon plus one annular region (free `e` circle) per remaining
/// boundary circuit.
pub fn build_closure(spec: &ClosureSpec) -> DecoratedPolyhedron {
    let (e1_ends, e2_ends) = match spec.matching {
        Matching::Parallel => (((0usize, 2u8), (1usize, 2u8)), ((0, 3), (1, 3))),
        Matching::Crossed => (((0, 2), (1, 3)), ((0, 3), (1, 2))),
        Matching::Loops => (((0, 2), (0, 3)), ((1, 2), (1, 3))),
    };

    let mut poly = SimplePolyhedron {
        vertices: vec![Vertex::default(), Vertex::default()],
        edges: vec![
            Edge::interval(0, 0, 1, 0),
            Edge::interval(0, 1, 1, 1),
            Edge::interval(e1_ends.0 .0, e1_ends.0 .1, e1_ends.1 .0, e1_ends.1 .1),
            Edge::interval(e2_ends.0 .0, e2_ends.0 .1, e2_ends.1 .0, e2_ends.1 .1),
        ],
        regions: Vec::new(),
    };

    // Slot attachments. Germ labels are constant along each edge, so an
    // attachment is germ -> wing partner slot at each end.
    let mut attach: std::collections::BTreeMap<(usize, u8), SlotAttach> =
        std::collections::BTreeMap::new();
    // a and b: germ 0 is the bigon wing; at both vertices germ 1 goes to
    // slot 2 and germ 2 to slot 3 (the fixed wing structure of X).
    attach.insert((0, 0), SlotAttach { edge: EDGE_A, end: 0, partner: [1, 2, 3] });
    attach.insert((0, 1), SlotAttach { edge: EDGE_B, end: 0, partner: [0, 2, 3] });
    attach.insert((1, 0), SlotAttach { edge: EDGE_A, end: 1, partner: [1, 2, 3] });
    attach.insert((1, 1), SlotAttach { edge: EDGE_B, end: 1, partner: [0, 2, 3] });
    // New edges: gauge-fixed end 0 attaches germ g to the g-th partner slot
    // in ascending order; end 1 follows the spec permutation.
    let others = |vslot: (usize, u8)| -> [u8; 3] {
        let mut o: Vec<u8> = (0..4u8).filter(|&s| s != vslot.1).collect();
        o.sort();
        [o[0], o[1], o[2]]
    };
    attach.insert(
        e1_ends.0,
        SlotAttach { edge: EDGE_E1, end: 0, partner: others(e1_ends.0) },
    );
    attach.insert(
        e1_ends.1,
        SlotAttach { edge: EDGE_E1, end: 1, partner: perm_partner(others(e1_ends.1), spec.perm1) },
    );
    attach.insert(
        e2_ends.0,
        SlotAttach { edge: EDGE_E2, end: 0, partner: others(e2_ends.0) },
    );
    attach.insert(
        e2_ends.1,
        SlotAttach { edge: EDGE_E2, end: 1, partner: perm_partner(others(e2_ends.1), spec.perm2) },
    );

    // Wing pairing: germ-end at slot s with partner t matches the germ-end
    // at slot t with partner s.
    let pair = |ge: GermEnd| -> GermEnd {
        // Locate the slot of this germ-end.
        let (vslot, at) = attach
            .iter()
            .find(|(_, a)| a.edge == ge.edge && a.end == ge.end)
            .map(|(&k, &a)| (k, a))
            .unwrap();
        let t = at.partner[ge.germ as usize];
        let other = attach[&(vslot.0, t)];
        let back = other
            .partner
            .iter()
            .position(|&p| p == vslot.1)
            .expect("wing pairing must be symmetric");
        GermEnd { edge: other.edge, end: other.end, germ: back as u8 }
    };

    // Trace circuits: traverse a band to its far end, hop through the wing.
    let mut visited = std::collections::BTreeSet::new();
    let mut circuits: Vec<Circuit> = Vec::new();
    for e in 0..4usize {
        for g in 0..3u8 {
            if visited.contains(&(e, g)) {
                continue;
            }
            let mut circuit = Vec::new();
            let (mut edge, mut germ, mut forward) = (e, g, true);
            loop {
                visited.insert((edge, germ));
                circuit.push(Passage { edge, germ, forward });
                let far = GermEnd { edge, end: forward as u8, germ };
                let next = pair(far);
                edge = next.edge;
                germ = next.germ;
                forward = next.end == 0;
                if (edge, germ, forward) == (e, g, true) {
                    break;
                }
            }
            circuits.push(circuit);
        }
    }

    // Regions: the bigon is the circuit on germ 0 of a and b.
    let mut gleams = Gleams::new();
    for c in circuits {
        let is_bigon = c.len() == 2
            && c.iter().all(|p| p.germ == 0 && (p.edge == EDGE_A || p.edge == EDGE_B));
        if is_bigon {
            gleams.insert(poly.regions.len(), HalfInt::from_int(1));
            poly.regions.push(Region { genus: 0, circuits: vec![c], free: Vec::new() });
        } else {
            poly.regions.push(Region { genus: 0, circuits: vec![c], free: vec![Color::E] });
        }
    }
    DecoratedPolyhedron { poly, branching: None, gleams: Some(gleams) }
}

/// The standalone X part: identity type-1 closure. Two vertices, four edges,
/// the +1-gleam bigon and five annular regions.
pub fn standalone_x() -> DecoratedPolyhedron {
    build_closure(&ClosureSpec {
        matching: Matching::Parallel,
        perm1: [0, 1, 2],
        perm2: [0, 1, 2],
    })
}
