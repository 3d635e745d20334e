//! Fundamental group presentation and bounded Tietze simplification.

use super::cw::{cw_complex, CwComplex};
use super::model::SimplePolyhedron;
use super::validate::Dsu;

/// Group presentation: letters are +-(generator index + 1).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    pub ngens: usize,
    pub relators: Vec<Vec<i64>>,
}

/// Presentation of the fundamental group from a spanning tree of the
/// 1-skeleton: generators are non-tree 1-cells, relators the 2-cell words
/// with tree letters dropped.
pub fn fundamental_group(poly: &SimplePolyhedron) -> Presentation {
    let cw = cw_complex(poly);
    presentation_of_cw(&cw)
}

pub fn presentation_of_cw(cw: &CwComplex) -> Presentation {
    let mut dsu = Dsu::new(cw.n0);
    let mut in_tree = vec![false; cw.cells1.len()];
    for (i, &(tail, head)) in cw.cells1.iter().enumerate() {
        if dsu.union(tail, head) {
            in_tree[i] = true;
        }
    }
    let mut gen_of = vec![None; cw.cells1.len()];
    let mut ngens = 0usize;
    for (i, &t) in in_tree.iter().enumerate() {
        if !t {
            gen_of[i] = Some(ngens);
            ngens += 1;
        }
    }
    let relators = cw
        .words2
        .iter()
        .map(|word| {
            word.iter()
                .filter_map(|&letter| {
                    gen_of[letter.unsigned_abs() as usize - 1]
                        .map(|g| letter.signum() * (g as i64 + 1))
                })
                .collect()
        })
        .collect();
    Presentation { ngens, relators }
}

fn free_reduce(word: &[i64]) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::with_capacity(word.len());
    for &letter in word {
        if out.last() == Some(&-letter) {
            out.pop();
        } else {
            out.push(letter);
        }
    }
    // Cyclic reduction.
    while out.len() >= 2 && *out.first().unwrap() == -*out.last().unwrap() {
        out.pop();
        out.remove(0);
    }
    out
}

/// Canonical representative of a relator up to rotation and inversion.
fn canonical_cyclic(word: &[i64]) -> Vec<i64> {
    let mut best: Option<Vec<i64>> = None;
    for w in [word.to_vec(), word.iter().rev().map(|&x| -x).collect()] {
        for r in 0..w.len().max(1) {
            let mut rot = w[r..].to_vec();
            rot.extend_from_slice(&w[..r]);
            if best.as_ref().map_or(true, |b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

const MAX_WORD: usize = 20_000;
const MAX_PASSES: usize = 400;

/// Bounded Tietze simplification: free/cyclic reduction, duplicate removal,
/// and elimination of generators that occur exactly once in some relator.
pub fn simplify(mut p: Presentation) -> Presentation {
    for _ in 0..MAX_PASSES {
        p.relators = p.relators.iter().map(|r| free_reduce(r)).collect();
        p.relators.retain(|r| !r.is_empty());
        let mut seen = std::collections::BTreeSet::new();
        p.relators.retain(|r| seen.insert(canonical_cyclic(r)));
        p.relators.sort_by_key(|r| r.len());

        // Find a relator in which some generator occurs exactly once.
        let mut choice: Option<(usize, usize)> = None;
        'outer: for (ri, r) in p.relators.iter().enumerate() {
            for (pos, &letter) in r.iter().enumerate() {
                let occurrences =
                    r.iter().filter(|&&x| x.abs() == letter.abs()).count();
                if occurrences == 1 {
                    choice = Some((ri, pos));
                    break 'outer;
                }
            }
        }
        let Some((ri, pos)) = choice else { break };
        let r = p.relators.remove(ri);
        let letter = r[pos];
        let g = letter.abs();
        // Rotate so the chosen letter is last: g^s = inverse of the rest.
        let mut rest: Vec<i64> = Vec::new();
        rest.extend_from_slice(&r[pos + 1..]);
        rest.extend_from_slice(&r[..pos]);
        // letter * rest = 1  =>  g^{sign} = rest^{-1}.
        let expr_forward: Vec<i64> = if letter > 0 {
            rest.iter().rev().map(|&x| -x).collect()
        } else {
            rest.clone()
        };
        let mut overflow = false;
        let substituted: Vec<Vec<i64>> = p
            .relators
            .iter()
            .map(|w| {
                let mut out = Vec::new();
                for &x in w {
                    if x.abs() == g {
                        if x > 0 {
                            out.extend_from_slice(&expr_forward);
                        } else {
                            out.extend(expr_forward.iter().rev().map(|&y| -y));
                        }
                    } else {
                        out.push(x);
                    }
                    if out.len() > MAX_WORD {
                        overflow = true;
                    }
                }
                out
            })
            .collect();
        if overflow {
            // Too costly; keep the un-eliminated presentation.
            p.relators.push(r);
            break;
        }
        p.relators = substituted;
        // Remove generator g, renumbering the ones above it.
        for w in &mut p.relators {
            for x in w.iter_mut() {
                if x.abs() > g {
                    *x -= x.signum();
                }
            }
        }
        p.ngens -= 1;
    }
    p.relators = p.relators.iter().map(|r| free_reduce(r)).collect();
    p.relators.retain(|r| !r.is_empty());
    p
}

/// Sound one-sided triviality check: `true` only when the simplified
/// presentation has no generators left.
pub fn is_plausibly_trivial(p: &Presentation) -> bool {
    simplify(p.clone()).ngens == 0
}
