//! Ideal triangulations: face gluings, edge and cusp classes, orientation.
//!
//! Face `f` of a tetrahedron is the face opposite local vertex `f`. A gluing
//! carries a bijection of vertex labels sending face `f` onto the target
//! face (so `perm[f]` is the target face index).

use std::fmt::Write as _;

use thiserror::Error;

use crate::poly::validate::Dsu;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Glue {
    pub tet: usize,
    pub face: u8,
    pub perm: [u8; 4],
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdealTriangulation {
    pub gluings: Vec<[Glue; 4]>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TriError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("face {face} of tetrahedron {tet} is not glued")]
    UngluedFace { tet: usize, face: u8 },
    #[error("gluing of face {face} of tetrahedron {tet} is not involutive")]
    NotInvolution { tet: usize, face: u8 },
    #[error("permutation on face {face} of tetrahedron {tet} is inconsistent with the glued faces")]
    BadPermutation { tet: usize, face: u8 },
    #[error("triangulation is not orientable")]
    NonOrientable,
}

pub fn perm_parity_odd(p: &[u8; 4]) -> bool {
    let mut inversions = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

pub fn perm_inverse(p: &[u8; 4]) -> [u8; 4] {
    let mut inv = [0u8; 4];
    for i in 0..4 {
        inv[p[i] as usize] = i as u8;
    }
    inv
}

pub fn perm_compose(outer: &[u8; 4], inner: &[u8; 4]) -> [u8; 4] {
    [
        outer[inner[0] as usize],
        outer[inner[1] as usize],
        outer[inner[2] as usize],
        outer[inner[3] as usize],
    ]
}

/// The 6 edges of a tetrahedron as vertex pairs, indexed canonically.
pub const TET_EDGES: [[u8; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];

pub fn edge_index(a: u8, b: u8) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    TET_EDGES.iter().position(|&e| e == [a, b]).unwrap()
}

impl IdealTriangulation {
    pub fn len(&self) -> usize {
        self.gluings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gluings.is_empty()
    }

    /// Structural invariants: involutive gluing with face-respecting
    /// permutations.
    pub fn validate(&self) -> Result<(), TriError> {
        for (t, faces) in self.gluings.iter().enumerate() {
            for f in 0..4u8 {
                let g = faces[f as usize];
                let mut seen = [false; 4];
                for &x in &g.perm {
                    if x > 3 || seen[x as usize] {
                        return Err(TriError::BadPermutation { tet: t, face: f });
                    }
                    seen[x as usize] = true;
                }
                if g.tet >= self.len() || g.perm[f as usize] != g.face {
                    return Err(TriError::BadPermutation { tet: t, face: f });
                }
                let back = self.gluings[g.tet][g.face as usize];
                if back.tet != t || back.face != f || back.perm != perm_inverse(&g.perm) {
                    return Err(TriError::NotInvolution { tet: t, face: f });
                }
            }
        }
        Ok(())
    }

    /// Edge classes: per tetrahedron edge (6 per tetrahedron), the class id.
    pub fn edge_classes(&self) -> (Vec<usize>, usize) {
        let n = self.len();
        let mut dsu = Dsu::new(6 * n);
        for (t, faces) in self.gluings.iter().enumerate() {
            for f in 0..4u8 {
                let g = faces[f as usize];
                for &[a, b] in &TET_EDGES {
                    if a != f && b != f {
                        dsu.union(
                            6 * t + edge_index(a, b),
                            6 * g.tet + edge_index(g.perm[a as usize], g.perm[b as usize]),
                        );
                    }
                }
            }
        }
        relabel(&mut dsu, 6 * n)
    }

    /// Cusp classes: per ideal vertex (4 per tetrahedron), the class id.
    pub fn cusp_classes(&self) -> (Vec<usize>, usize) {
        let n = self.len();
        let mut dsu = Dsu::new(4 * n);
        for (t, faces) in self.gluings.iter().enumerate() {
            for f in 0..4u8 {
                let g = faces[f as usize];
                for v in 0..4u8 {
                    if v != f {
                        dsu.union(4 * t + v as usize, 4 * g.tet + g.perm[v as usize] as usize);
                    }
                }
            }
        }
        relabel(&mut dsu, 4 * n)
    }

    /// Euler characteristic of each cusp cross-section surface.
    pub fn cusp_euler(&self) -> Vec<i64> {
        let n = self.len();
        let (cusp_of, cusps) = self.cusp_classes();
        // Link-surface vertices are corner triples (t, v, u), u != v.
        let triple = |t: usize, v: u8, u: u8| {
            let offset = (0..4u8).filter(|&u2| u2 != v).position(|u2| u2 == u).unwrap();
            12 * t + 3 * v as usize + offset
        };
        let mut dsu = Dsu::new(12 * n);
        for (t, faces) in self.gluings.iter().enumerate() {
            for f in 0..4u8 {
                let g = faces[f as usize];
                for v in 0..4u8 {
                    if v == f {
                        continue;
                    }
                    for u in 0..4u8 {
                        if u != v && u != f {
                            dsu.union(
                                triple(t, v, u),
                                triple(g.tet, g.perm[v as usize], g.perm[u as usize]),
                            );
                        }
                    }
                }
            }
        }
        let mut vertex_orbit_cusp: std::collections::BTreeMap<usize, usize> =
            std::collections::BTreeMap::new();
        for t in 0..n {
            for v in 0..4u8 {
                for u in 0..4u8 {
                    if u != v {
                        vertex_orbit_cusp.insert(dsu.find(triple(t, v, u)), cusp_of[4 * t + v as usize]);
                    }
                }
            }
        }
        // chi = V - E + F with E = 3F/2, so 2*chi = 2V - F.
        let mut two_chi = vec![0i64; cusps];
        for (&_orbit, &c) in &vertex_orbit_cusp {
            two_chi[c] += 2;
        }
        for t in 0..n {
            for v in 0..4u8 {
                two_chi[cusp_of[4 * t + v as usize]] -= 1;
            }
        }
        two_chi.iter().map(|&x| x / 2).collect()
    }

    /// Orientation flags per tetrahedron (`true` = keep label order), if the
    /// triangulation is orientable. With consistent orientations every
    /// gluing permutation is odd relative to the flags.
    pub fn orientation(&self) -> Result<Vec<bool>, TriError> {
        let n = self.len();
        let mut flag: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if flag[start].is_some() {
                continue;
            }
            flag[start] = Some(true);
            let mut stack = vec![start];
            while let Some(t) = stack.pop() {
                let ft = flag[t].unwrap();
                for f in 0..4 {
                    let g = self.gluings[t][f];
                    // A gluing is orientation-compatible when its
                    // permutation is odd relative to the two flags.
                    let want = if perm_parity_odd(&g.perm) { ft } else { !ft };
                    match flag[g.tet] {
                        None => {
                            flag[g.tet] = Some(want);
                            stack.push(g.tet);
                        }
                        Some(x) if x == want => {}
                        Some(_) => return Err(TriError::NonOrientable),
                    }
                }
            }
        }
        Ok(flag.into_iter().map(|x| x.unwrap()).collect())
    }

    /// Relabel vertices (swapping labels 2 and 3 in flagged tetrahedra) so
    /// that every tetrahedron is positively oriented.
    pub fn oriented(&self) -> Result<IdealTriangulation, TriError> {
        let flags = self.orientation()?;
        let swap = |t: usize, x: u8| -> u8 {
            if flags[t] || x < 2 {
                x
            } else {
                5 - x
            }
        };
        let mut gluings = Vec::with_capacity(self.len());
        for (t, faces) in self.gluings.iter().enumerate() {
            let mut row = [Glue { tet: 0, face: 0, perm: [0; 4] }; 4];
            for f in 0..4u8 {
                let g = faces[f as usize];
                let mut perm = [0u8; 4];
                for v in 0..4u8 {
                    perm[swap(t, v) as usize] = swap(g.tet, g.perm[v as usize]);
                }
                row[swap(t, f) as usize] =
                    Glue { tet: g.tet, face: swap(g.tet, g.face), perm };
            }
            gluings.push(row);
        }
        let out = IdealTriangulation { gluings };
        debug_assert_eq!(out.validate(), Ok(()));
        debug_assert!(out
            .gluings
            .iter()
            .all(|fs| fs.iter().all(|g| perm_parity_odd(&g.perm))));
        Ok(out)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return true;
        }
        let mut dsu = Dsu::new(n);
        for (t, faces) in self.gluings.iter().enumerate() {
            for g in faces {
                dsu.union(t, g.tet);
            }
        }
        (0..n).all(|t| dsu.find(t) == dsu.find(0))
    }

    /// Check that `map` (tetrahedron image plus per-tetrahedron vertex
    /// permutation) is a combinatorial automorphism.
    pub fn is_automorphism(&self, map: &[(usize, [u8; 4])]) -> bool {
        if map.len() != self.len() {
            return false;
        }
        for (t, faces) in self.gluings.iter().enumerate() {
            let (t2, p) = map[t];
            if t2 >= self.len() {
                return false;
            }
            for f in 0..4u8 {
                let g = faces[f as usize];
                let (s2, q) = map[g.tet];
                let image = self.gluings[t2][p[f as usize] as usize];
                if image.tet != s2 || image.face != q[g.face as usize] {
                    return false;
                }
                // The square tet -> image must commute with the gluings.
                let lhs = perm_compose(&image.perm, &p);
                let rhs = perm_compose(&q, &g.perm);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

fn relabel(dsu: &mut Dsu, n: usize) -> (Vec<usize>, usize) {
    let mut ids = std::collections::BTreeMap::new();
    let mut out = Vec::with_capacity(n);
    for x in 0..n {
        let r = dsu.find(x);
        let next = ids.len();
        out.push(*ids.entry(r).or_insert(next));
    }
    let count = ids.len();
    (out, count)
}

/// Serialize to the versioned text format: one line per tetrahedron with
/// four `->(t,f,perm)` entries.
pub fn serialize_triangulation(tri: &IdealTriangulation) -> String {
    let mut out = String::from("ITRI 1\n");
    for faces in &tri.gluings {
        let mut line = String::new();
        for (i, g) in faces.iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            let word: String = g.perm.iter().map(|d| char::from(b'0' + d)).collect();
            let _ = write!(line, "->({},{},{})", g.tet, g.face, word);
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn parse_triangulation(text: &str) -> Result<IdealTriangulation, TriError> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some("ITRI 1") => {}
        Some(other) => return Err(TriError::Parse(format!("bad header {other:?}"))),
        None => return Err(TriError::Parse("empty file".into())),
    }
    let mut rows: Vec<Vec<Option<Glue>>> = Vec::new();
    for line in lines {
        let mut row = Vec::new();
        for tok in line.split_whitespace() {
            if tok == "-" {
                row.push(None);
                continue;
            }
            let inner = tok
                .strip_prefix("->(")
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| TriError::Parse(format!("bad entry {tok:?}")))?;
            let parts: Vec<&str> = inner.split(',').collect();
            if parts.len() != 3 || parts[2].len() != 4 {
                return Err(TriError::Parse(format!("bad entry {tok:?}")));
            }
            let tet: usize =
                parts[0].parse().map_err(|_| TriError::Parse(format!("bad entry {tok:?}")))?;
            let face: u8 =
                parts[1].parse().map_err(|_| TriError::Parse(format!("bad entry {tok:?}")))?;
            let mut perm = [0u8; 4];
            for (i, ch) in parts[2].chars().enumerate() {
                let d = ch
                    .to_digit(10)
                    .filter(|&d| d < 4)
                    .ok_or_else(|| TriError::Parse(format!("bad entry {tok:?}")))? as u8;
                perm[i] = d;
            }
            if face > 3 {
                return Err(TriError::Parse(format!("bad entry {tok:?}")));
            }
            row.push(Some(Glue { tet, face, perm }));
        }
        if row.len() != 4 {
            return Err(TriError::Parse(format!("expected 4 entries, got {}", row.len())));
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(TriError::Parse("no tetrahedra".into()));
    }
    let mut gluings = Vec::with_capacity(rows.len());
    for (t, row) in rows.iter().enumerate() {
        let mut faces = [Glue { tet: 0, face: 0, perm: [0; 4] }; 4];
        for f in 0..4 {
            faces[f] = row[f].ok_or(TriError::UngluedFace { tet: t, face: f as u8 })?;
            if faces[f].tet >= rows.len() {
                return Err(TriError::Parse(format!(
                    "tetrahedron {} out of range on line {}",
                    faces[f].tet,
                    t + 1
                )));
            }
        }
        gluings.push(faces);
    }
    let tri = IdealTriangulation { gluings };
    tri.validate()?;
    Ok(tri)
}
