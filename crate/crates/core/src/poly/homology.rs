//! Integral first homology via Smith normal form.

use super::cw::cw_complex;
use super::model::SimplePolyhedron;

/// H1 as rank and invariant factors (each > 1, in divisibility order).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct H1 {
    pub rank: usize,
    pub torsion: Vec<u128>,
}

impl H1 {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for H1 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Diagonal of the Smith normal form, nonnegative, in divisibility order,
/// zeros omitted. Destroys `m`.
pub fn smith_diagonal(m: &mut Vec<Vec<i128>>) -> Vec<u128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag: Vec<u128> = Vec::new();
    let mut top = 0usize;
    let mut left = 0usize;
    while top < rows && left < cols {
        // Pivot: smallest nonzero absolute value in the working submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for i in top..rows {
            for j in left..cols {
                if m[i][j] != 0
                    && pivot.map_or(true, |(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(top, pi);
        for row in m.iter_mut() {
            row.swap(left, pj);
        }
        // Clear the pivot row and column.
        loop {
            let mut clean = true;
            for i in (top + 1)..rows {
                let q = m[i][left].div_euclid(m[top][left]);
                if q != 0 {
                    for j in left..cols {
                        m[i][j] -= q * m[top][j];
                    }
                }
                if m[i][left] != 0 {
                    // Remainder smaller than pivot: swap up and restart.
                    m.swap(top, i);
                    clean = false;
                    break;
                }
            }
            if !clean {
                continue;
            }
            for j in (left + 1)..cols {
                let q = m[top][j].div_euclid(m[top][left]);
                if q != 0 {
                    for i in top..rows {
                        let v = m[i][left];
                        m[i][j] -= q * v;
                    }
                }
                if m[top][j] != 0 {
                    for row in m.iter_mut() {
                        row.swap(left, j);
                    }
                    clean = false;
                    break;
                }
            }
            if clean {
                break;
            }
        }
        // Divisibility: pivot must divide every remaining entry.
        let p = m[top][left];
        let mut fixed = true;
        'scan: for i in (top + 1)..rows {
            for j in (left + 1)..cols {
                if m[i][j] % p != 0 {
                    // Fold that row into the pivot row and redo this pivot.
                    for jj in left..cols {
                        let v = m[i][jj];
                        m[top][jj] += v;
                    }
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if !fixed {
            continue;
        }
        diag.push(p.unsigned_abs());
        top += 1;
        left += 1;
    }
    diag
}

pub fn matrix_rank(m: &mut Vec<Vec<i128>>) -> usize {
    smith_diagonal(m).len()
}

/// H1 of a chain complex given its two boundary maps (d1 * d2 = 0).
pub fn h1_of_boundaries(mut d1: Vec<Vec<i128>>, mut d2: Vec<Vec<i128>>) -> H1 {
    let n1 = if d2.is_empty() {
        d1.first().map_or(0, |r| r.len())
    } else {
        d2.len()
    };
    let diag2 = smith_diagonal(&mut d2);
    let r1 = matrix_rank(&mut d1);
    let r2 = diag2.len();
    H1 {
        rank: n1 - r1 - r2,
        torsion: diag2.into_iter().filter(|&d| d > 1).collect(),
    }
}

/// First integral homology of the polyhedron.
pub fn first_homology(poly: &SimplePolyhedron) -> H1 {
    let cw = cw_complex(poly);
    h1_of_boundaries(cw.d1(), cw.d2())
}
