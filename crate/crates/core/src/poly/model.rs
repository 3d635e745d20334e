//! Core data model for boundary-decorated simple polyhedra.
//!
//! A polyhedron is described combinatorially: true vertices (cones over the
//! 1-skeleton of a tetrahedron, with four edge slots), singular edges carrying
//! three surface germs each (intervals between vertex slots, or circles with a
//! germ monodromy), and regions (compact orientable surfaces) whose boundary
//! circuits are explicit cyclic sequences of germ passages. Free boundary
//! circles carry a color from {i, e, f}.

use serde::{Deserialize, Serialize};

/// Number of surface germs along every singular edge.
pub const GERMS: u8 = 3;

/// Boundary color of a free region boundary circle.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    /// `i`: circle destined to be glued to another polyhedron piece.
    I,
    /// `e`: circle left in the boundary (external annular germ).
    E,
    /// `f`: free boundary of the ambient disk/surface.
    F,
}

impl Color {
    pub fn as_char(self) -> char {
        match self {
            Color::I => 'i',
            Color::E => 'e',
            Color::F => 'f',
        }
    }

    pub fn from_char(c: char) -> Option<Color> {
        match c {
            'i' => Some(Color::I),
            'e' => Some(Color::E),
            'f' => Some(Color::F),
            _ => None,
        }
    }
}

/// One end of an interval edge: which vertex it meets and at which of the
/// four slots.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EndPoint {
    pub vertex: usize,
    pub slot: u8,
}

/// Shape of a singular edge.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum EdgeShape {
    /// Interval between two vertex slots (possibly the same vertex).
    Interval { ends: [EndPoint; 2] },
    /// Circle edge disjoint from all vertices. Germs are labelled on a cut;
    /// travelling once around in the positive direction, germ `g` continues
    /// into germ `monodromy[g]`.
    Circle { monodromy: [u8; 3] },
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Edge {
    pub shape: EdgeShape,
}

impl Edge {
    pub fn interval(v0: usize, s0: u8, v1: usize, s1: u8) -> Edge {
        Edge {
            shape: EdgeShape::Interval {
                ends: [EndPoint { vertex: v0, slot: s0 }, EndPoint { vertex: v1, slot: s1 }],
            },
        }
    }

    pub fn circle(monodromy: [u8; 3]) -> Edge {
        Edge { shape: EdgeShape::Circle { monodromy } }
    }

    pub fn is_circle(&self) -> bool {
        matches!(self.shape, EdgeShape::Circle { .. })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct Vertex {
    /// Marked as the local model replaced by the two-vertex X part.
    pub ii3: bool,
}

/// A single traversal of one germ of one edge by a region boundary circuit.
///
/// For interval edges, `forward` means the traversal runs from end 0 to
/// end 1. For circle edges it means the traversal follows the positive
/// direction of the circle.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Passage {
    pub edge: usize,
    pub germ: u8,
    pub forward: bool,
}

/// Cyclic sequence of passages; the listing order is the direction induced by
/// the region's reference orientation.
pub type Circuit = Vec<Passage>;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct Region {
    pub genus: u32,
    /// Boundary circuits attached to the singular set.
    pub circuits: Vec<Circuit>,
    /// Colors of the free boundary circles.
    pub free: Vec<Color>,
}

impl Region {
    /// Euler characteristic of the underlying compact surface.
    pub fn euler(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.circuits.len() as i64 - self.free.len() as i64
    }

    /// A region is internal when it does not touch the polyhedron boundary.
    pub fn is_internal(&self) -> bool {
        self.free.is_empty()
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct SimplePolyhedron {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub regions: Vec<Region>,
}

/// Orientation choice per region: `true` keeps the stored circuit directions,
/// `false` reverses them all.
pub type Branching = Vec<bool>;

/// Half-integer, stored as twice its value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfInt(pub i64);

impl HalfInt {
    pub fn from_int(n: i64) -> HalfInt {
        HalfInt(2 * n)
    }

    pub fn halves(n: i64) -> HalfInt {
        HalfInt(n)
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl std::fmt::Display for HalfInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl std::str::FromStr for HalfInt {
    type Err = std::num::ParseIntError;
    fn from_str(s: &str) -> Result<HalfInt, Self::Err> {
        if let Some(num) = s.strip_suffix("/2") {
            Ok(HalfInt(num.trim().parse()?))
        } else {
            Ok(HalfInt::from_int(s.trim().parse()?))
        }
    }
}

/// Gleams: one half-integer per internal region, indexed by region id.
pub type Gleams = std::collections::BTreeMap<usize, HalfInt>;

/// A polyhedron together with its optional decorations, as stored on disk.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct DecoratedPolyhedron {
    pub poly: SimplePolyhedron,
    pub branching: Option<Branching>,
    pub gleams: Option<Gleams>,
}

impl SimplePolyhedron {
    pub fn interval_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| !e.is_circle()).count()
    }

    /// Euler characteristic of the polyhedron: vertices minus interval edges
    /// plus region surface characteristics (circle edges contribute 0).
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.interval_edge_count() as i64
            + self.regions.iter().map(|r| r.euler()).sum::<i64>()
    }

    /// Boundary circles, listed as (region, free index) with their color.
    pub fn boundary_circles(&self) -> Vec<(usize, usize, Color)> {
        let mut out = Vec::new();
        for (r, region) in self.regions.iter().enumerate() {
            for (j, &c) in region.free.iter().enumerate() {
                out.push((r, j, c));
            }
        }
        out
    }
}

/// Identifies one germ-end of an interval edge: (edge, end, germ).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct GermEnd {
    pub edge: usize,
    pub end: u8,
    pub germ: u8,
}

impl Passage {
    /// Germ-end this passage arrives at (interval edges only).
    pub fn arrival(&self) -> GermEnd {
        GermEnd { edge: self.edge, end: self.forward as u8, germ: self.germ }
    }

    /// Germ-end this passage departs from (interval edges only).
    pub fn departure(&self) -> GermEnd {
        GermEnd { edge: self.edge, end: !self.forward as u8, germ: self.germ }
    }
}
