//! Faces of the 4-valent plane graph underlying a diagram.

use super::pd::LinkDiagram;

/// One traversal step of a face boundary: an arc together with the direction
/// it is traversed in (relative to the arc's stored end order) and the
/// corner swept at the crossing where the traversal arrives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceStep {
    pub arc: usize,
    pub forward: bool,
    /// Corner `{pos, (pos+1)%4}` at the arrival crossing, recorded by the
    /// arrival position `pos`.
    pub crossing: usize,
    pub corner: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub steps: Vec<FaceStep>,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.steps.len()
    }

    /// Sorted, deduplicated arc labels on this face.
    pub fn arc_set(&self) -> Vec<usize> {
        let mut arcs: Vec<usize> = self.steps.iter().map(|s| s.arc).collect();
        arcs.sort();
        arcs.dedup();
        arcs
    }
}

/// Faces of the plane graph via the rotation system (counterclockwise tuple
/// order), together with the index of the outer face. A connected diagram
/// with c crossings has exactly c + 2 faces. The outer face is the
/// annotated one if present, otherwise the face of maximal degree with the
/// lexicographically smallest sorted arc-label list.
pub fn diagram_faces(d: &LinkDiagram) -> (Vec<Face>, usize) {
    assert!(!d.unknot, "the unknot diagram has no crossings to trace");
    let ends = d.arc_ends();
    // Darts: (arc, forward). The dart's head is ends[arc][forward as usize].
    let mut visited = std::collections::BTreeSet::new();
    let mut faces: Vec<Face> = Vec::new();
    for a0 in 0..d.arcs {
        for f0 in [true, false] {
            if visited.contains(&(a0, f0)) {
                continue;
            }
            let mut steps = Vec::new();
            let (mut arc, mut forward) = (a0, f0);
            loop {
                visited.insert((arc, forward));
                let (c, p) = ends[arc][forward as usize];
                steps.push(FaceStep { arc, forward, crossing: c, corner: p });
                // Turn counterclockwise: leave along position p+1.
                let q = (p + 1) % 4;
                let next_arc = d.crossings[c][q as usize];
                // Leave away from (c, q): forward when (c, q) is end 0.
                let next_forward = ends[next_arc][0] == (c, q);
                arc = next_arc;
                forward = next_forward;
                if (arc, forward) == (a0, f0) {
                    break;
                }
            }
            faces.push(Face { steps });
        }
    }
    debug_assert_eq!(faces.len(), d.crossings.len() + 2);

    let outer = match &d.outer {
        Some(set) => faces
            .iter()
            .position(|f| &f.arc_set() == set)
            .expect("annotated outer face must exist"),
        None => {
            let max_deg = faces.iter().map(Face::degree).max().unwrap();
            (0..faces.len())
                .filter(|&i| faces[i].degree() == max_deg)
                .min_by_key(|&i| faces[i].arc_set())
                .unwrap()
        }
    };
    (faces, outer)
}

/// Gleam contribution of a corner: the corners swept between positions
/// {0,1} and {2,3} contribute +1/2, the corners {1,2} and {3,0} contribute
/// -1/2. In twice-units:
///
/// ```text
///            3
///      -1/2  |  +1/2
///   2 -------+------- 0   (positions of X(a,b,c,d); 0 = incoming under)
///      +1/2  |  -1/2
///            1
/// ```
pub fn corner_contribution_twice(corner: u8) -> i64 {
    match corner {
        0 | 2 => 1,
        1 | 3 => -1,
        _ => unreachable!("corner is an arrival position 0..4"),
    }
}
