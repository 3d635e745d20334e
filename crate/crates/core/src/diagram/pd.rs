//! PD-code parsing for planar link diagrams.

use std::collections::BTreeMap;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PdError {
    #[error("malformed tuple at token {0}: {1}")]
    MalformedTuple(usize, String),
    #[error("arc label {0} occurs {1} times (must be exactly 2)")]
    ArcMultiplicity(u64, usize),
    #[error("split diagram: the projection is not connected")]
    SplitDiagram,
    #[error("outer annotation names no face of the diagram")]
    BadOuterAnnotation,
    #[error("crossing tuples do not describe a plane projection")]
    NonPlanar,
}

/// A planar link diagram. Crossing tuples list arc indices counterclockwise
/// starting from the incoming under-strand; arcs are relabelled 0.. in the
/// sorted order of their original labels. A diagram is either one
/// zero-crossing unknot (`U()`) or a nonempty connected crossing list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    pub crossings: Vec<[usize; 4]>,
    pub arcs: usize,
    /// Component index per arc.
    pub component_of: Vec<usize>,
    pub components: usize,
    /// Zero-crossing unknot diagram (no crossings, one circular arc).
    pub unknot: bool,
    /// Sorted arc labels of the annotated outer face, if any.
    pub outer: Option<Vec<usize>>,
}

impl LinkDiagram {
    /// Endpoints (crossing, position) of each arc, in scan order.
    pub fn arc_ends(&self) -> Vec<[(usize, u8); 2]> {
        let mut ends: Vec<Vec<(usize, u8)>> = vec![Vec::new(); self.arcs];
        for (c, tuple) in self.crossings.iter().enumerate() {
            for (p, &a) in tuple.iter().enumerate() {
                ends[a].push((c, p as u8));
            }
        }
        ends.into_iter().map(|e| [e[0], e[1]]).collect()
    }
}

/// Strand continuation at a crossing: the under-strand joins positions 0 and
/// 2, the over-strand positions 1 and 3.
pub fn strand_partner(pos: u8) -> u8 {
    (pos + 2) % 4
}

fn parse_tuple(i: usize, tok: &str) -> Result<Option<[u64; 4]>, PdError> {
    let bad = || PdError::MalformedTuple(i, tok.to_string());
    if tok == "U()" {
        return Ok(None);
    }
    let body = tok
        .strip_prefix("X(")
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(bad)?;
    let parts: Vec<&str> = body.split(',').collect();
    if parts.len() != 4 {
        return Err(bad());
    }
    let mut out = [0u64; 4];
    for (k, p) in parts.iter().enumerate() {
        out[k] = p.trim().parse::<u64>().map_err(|_| bad())?;
    }
    Ok(Some(out))
}

/// Parse whitespace-separated `X(a,b,c,d)` tuples, an optional `U()` token
/// (only as the entire diagram), and an optional `outer=a,b,...` annotation
/// naming the outer face by its sorted arc-label set.
pub fn parse_pd(text: &str) -> Result<LinkDiagram, PdError> {
    let mut raw: Vec<[u64; 4]> = Vec::new();
    let mut unknots = 0usize;
    let mut outer_raw: Option<Vec<u64>> = None;
    for (i, tok) in text.split_whitespace().enumerate() {
        if let Some(body) = tok.strip_prefix("outer=") {
            let mut labels = Vec::new();
            for p in body.split(',') {
                labels.push(
                    p.trim()
                        .parse::<u64>()
                        .map_err(|_| PdError::MalformedTuple(i, tok.to_string()))?,
                );
            }
            outer_raw = Some(labels);
            continue;
        }
        match parse_tuple(i, tok)? {
            Some(t) => raw.push(t),
            None => unknots += 1,
        }
    }
    if unknots > 1 || (unknots == 1 && !raw.is_empty()) {
        return Err(PdError::SplitDiagram);
    }
    if unknots == 1 {
        return Ok(LinkDiagram {
            crossings: Vec::new(),
            arcs: 1,
            component_of: vec![0],
            components: 1,
            unknot: true,
            outer: None,
        });
    }

    // Canonical arc relabelling and multiplicity check.
    let mut count: BTreeMap<u64, usize> = BTreeMap::new();
    for t in &raw {
        for &a in t {
            *count.entry(a).or_default() += 1;
        }
    }
    for (&a, &n) in &count {
        if n != 2 {
            return Err(PdError::ArcMultiplicity(a, n));
        }
    }
    let index: BTreeMap<u64, usize> =
        count.keys().enumerate().map(|(i, &a)| (a, i)).collect();
    let crossings: Vec<[usize; 4]> =
        raw.iter().map(|t| t.map(|a| index[&a])).collect();
    let arcs = index.len();

    // Components: arcs joined through crossings by strand continuation.
    let mut dsu = crate::poly::validate::Dsu::new(arcs);
    for t in &crossings {
        dsu.union(t[0], t[2]);
        dsu.union(t[1], t[3]);
    }
    let mut comp_index: BTreeMap<usize, usize> = BTreeMap::new();
    let mut component_of = vec![0usize; arcs];
    for a in 0..arcs {
        let root = dsu.find(a);
        let next = comp_index.len();
        component_of[a] = *comp_index.entry(root).or_insert(next);
    }
    let components = comp_index.len();

    // Connectivity of the projection graph (crossings joined by arcs).
    if crossings.is_empty() {
        return Err(PdError::SplitDiagram);
    }
    let mut gdsu = crate::poly::validate::Dsu::new(crossings.len());
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    for (c, t) in crossings.iter().enumerate() {
        for &a in t {
            match seen.entry(a) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(e) => {
                    gdsu.union(*e.get(), c);
                }
            }
        }
    }
    let root = gdsu.find(0);
    if (0..crossings.len()).any(|c| gdsu.find(c) != root) {
        return Err(PdError::SplitDiagram);
    }

    let outer = match outer_raw {
        None => None,
        Some(labels) => {
            let mut set = Vec::new();
            for l in labels {
                set.push(*index.get(&l).ok_or(PdError::BadOuterAnnotation)?);
            }
            set.sort();
            set.dedup();
            Some(set)
        }
    };

    let d = LinkDiagram {
        crossings,
        arcs,
        component_of,
        components,
        unknot: false,
        outer,
    };
    // Euler check: the counterclockwise rotation system must have genus 0,
    // i.e. exactly c + 2 face orbits (V - E + F = 2 with E = 2V).
    if face_orbit_count(&d) != d.crossings.len() + 2 {
        return Err(PdError::NonPlanar);
    }
    Ok(d)
}

/// Number of face orbits of the dart permutation "arrive at (c, p), leave
/// along position p + 1"; equals c + 2 exactly when the rotation system is
/// planar.
fn face_orbit_count(d: &LinkDiagram) -> usize {
    let ends = d.arc_ends();
    let mut visited = std::collections::BTreeSet::new();
    let mut orbits = 0;
    for a0 in 0..d.arcs {
        for f0 in [true, false] {
            if !visited.insert((a0, f0)) {
                continue;
            }
            orbits += 1;
            let (mut arc, mut forward) = (a0, f0);
            loop {
                let (c, p) = ends[arc][forward as usize];
                let q = (p + 1) % 4;
                arc = d.crossings[c][q as usize];
                forward = ends[arc][0] == (c, q);
                if (arc, forward) == (a0, f0) {
                    break;
                }
                visited.insert((arc, forward));
            }
        }
    }
    orbits
}
