//! SPOLY 1: plain-text interchange format for decorated polyhedra.
//!
//! Canonical layout (single spaces, `\n` line endings):
//!
//! ```text
//! SPOLY 1
//! vertices 2
//! v 0
//! v 1 ii3
//! edges 2
//! e 0 interval 0.0 1.0
//! e 1 circle 120
//! regions 1
//! r 0 genus 0 free ef circuits 1
//! c +0.0 -1.2
//! branching + -
//! gleams 1
//! g 0 -1/2
//! ```
//!
//! Serializing a parsed canonical file reproduces it byte for byte.

use std::fmt::Write as _;

use thiserror::Error;

use super::model::*;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: expected `{expected}`")]
    Expected { line: usize, expected: String },
    #[error("line 1: bad header, expected `SPOLY 1`")]
    BadHeader,
    #[error("line {line}: bad integer `{token}`")]
    BadInt { line: usize, token: String },
    #[error("line {line}: bad passage token `{token}` (expected [+-]<edge>.<germ>)")]
    BadPassage { line: usize, token: String },
    #[error("line {line}: bad color string `{token}`")]
    BadColors { line: usize, token: String },
    #[error("line {line}: bad monodromy `{token}`")]
    BadMonodromy { line: usize, token: String },
    #[error("line {line}: bad endpoint `{token}` (expected <vertex>.<slot>)")]
    BadEndPoint { line: usize, token: String },
    #[error("line {line}: bad branching sign `{token}`")]
    BadSign { line: usize, token: String },
    #[error("line {line}: bad gleam value `{token}` (expected integer or odd/2)")]
    BadGleam { line: usize, token: String },
    #[error("line {line}: index {got} out of order, expected {expected}")]
    IndexOrder { line: usize, got: usize, expected: usize },
    #[error("line {line}: unexpected trailing tokens")]
    Trailing { line: usize },
    #[error("unexpected end of file")]
    Eof,
    #[error("branching has {got} signs, polyhedron has {want} regions")]
    BranchingLength { got: usize, want: usize },
    #[error("gleam assigned to non-internal or missing region {0}")]
    GleamRegion(usize),
}

pub fn serialize(dec: &DecoratedPolyhedron) -> String {
    let mut s = String::new();
    let p = &dec.poly;
    s.push_str("SPOLY 1\n");
    writeln!(s, "vertices {}", p.vertices.len()).unwrap();
    for (i, v) in p.vertices.iter().enumerate() {
        if v.ii3 {
            writeln!(s, "v {i} ii3").unwrap();
        } else {
            writeln!(s, "v {i}").unwrap();
        }
    }
    writeln!(s, "edges {}", p.edges.len()).unwrap();
    for (i, e) in p.edges.iter().enumerate() {
        match e.shape {
            EdgeShape::Interval { ends } => {
                writeln!(
                    s,
                    "e {i} interval {}.{} {}.{}",
                    ends[0].vertex, ends[0].slot, ends[1].vertex, ends[1].slot
                )
                .unwrap();
            }
            EdgeShape::Circle { monodromy } => {
                writeln!(s, "e {i} circle {}{}{}", monodromy[0], monodromy[1], monodromy[2])
                    .unwrap();
            }
        }
    }
    writeln!(s, "regions {}", p.regions.len()).unwrap();
    for (i, r) in p.regions.iter().enumerate() {
        let colors: String = if r.free.is_empty() {
            "-".into()
        } else {
            r.free.iter().map(|c| c.as_char()).collect()
        };
        writeln!(s, "r {i} genus {} free {colors} circuits {}", r.genus, r.circuits.len())
            .unwrap();
        for c in &r.circuits {
            let tokens: Vec<String> = c
                .iter()
                .map(|p| format!("{}{}.{}", if p.forward { '+' } else { '-' }, p.edge, p.germ))
                .collect();
            writeln!(s, "c {}", tokens.join(" ")).unwrap();
        }
    }
    if let Some(b) = &dec.branching {
        let signs: Vec<&str> = b.iter().map(|&x| if x { "+" } else { "-" }).collect();
        writeln!(s, "branching {}", signs.join(" ")).unwrap();
    }
    if let Some(g) = &dec.gleams {
        writeln!(s, "gleams {}", g.len()).unwrap();
        for (r, v) in g {
            writeln!(s, "g {r} {v}").unwrap();
        }
    }
    s
}

struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
    peeked: Option<(usize, &'a str)>,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Option<(usize, &'a str)> {
        if let Some(p) = self.peeked.take() {
            return Some(p);
        }
        for (i, l) in self.iter.by_ref() {
            let l = l.trim();
            if !l.is_empty() && !l.starts_with('#') {
                return Some((i + 1, l));
            }
        }
        None
    }

    fn peek(&mut self) -> Option<(usize, &'a str)> {
        if self.peeked.is_none() {
            self.peeked = self.next();
        }
        self.peeked
    }
}

fn parse_usize(line: usize, token: &str) -> Result<usize, FormatError> {
    token
        .parse()
        .map_err(|_| FormatError::BadInt { line, token: token.into() })
}

fn expect_kv<'a>(
    lines: &mut Lines<'a>,
    key: &str,
) -> Result<(usize, Vec<&'a str>), FormatError> {
    let (ln, l) = lines.next().ok_or(FormatError::Eof)?;
    let mut tokens = l.split_whitespace();
    if tokens.next() != Some(key) {
        return Err(FormatError::Expected { line: ln, expected: key.into() });
    }
    Ok((ln, tokens.collect()))
}

pub fn parse(input: &str) -> Result<DecoratedPolyhedron, FormatError> {
    let mut lines = Lines { iter: input.lines().enumerate(), peeked: None };
    let (_, header) = lines.next().ok_or(FormatError::Eof)?;
    if header != "SPOLY 1" {
        return Err(FormatError::BadHeader);
    }
    let mut poly = SimplePolyhedron::default();

    let (ln, args) = expect_kv(&mut lines, "vertices")?;
    let nv = parse_usize(ln, args.first().copied().unwrap_or(""))?;
    for i in 0..nv {
        let (ln, args) = expect_kv(&mut lines, "v")?;
        let idx = parse_usize(ln, args.first().copied().unwrap_or(""))?;
        if idx != i {
            return Err(FormatError::IndexOrder { line: ln, got: idx, expected: i });
        }
        let ii3 = match args.get(1) {
            None => false,
            Some(&"ii3") => true,
            Some(_) => return Err(FormatError::Trailing { line: ln }),
        };
        if args.len() > 2 {
            return Err(FormatError::Trailing { line: ln });
        }
        poly.vertices.push(Vertex { ii3 });
    }

    let (ln, args) = expect_kv(&mut lines, "edges")?;
    let ne = parse_usize(ln, args.first().copied().unwrap_or(""))?;
    for i in 0..ne {
        let (ln, args) = expect_kv(&mut lines, "e")?;
        let idx = parse_usize(ln, args.first().copied().unwrap_or(""))?;
        if idx != i {
            return Err(FormatError::IndexOrder { line: ln, got: idx, expected: i });
        }
        match args.get(1) {
            Some(&"interval") => {
                if args.len() != 4 {
                    return Err(FormatError::Trailing { line: ln });
                }
                let mut ends = [EndPoint { vertex: 0, slot: 0 }; 2];
                for (k, tok) in args[2..4].iter().enumerate() {
                    let (v, s) = tok
                        .split_once('.')
                        .ok_or(FormatError::BadEndPoint { line: ln, token: tok.to_string() })?;
                    let vertex = v.parse().map_err(|_| FormatError::BadEndPoint {
                        line: ln,
                        token: tok.to_string(),
                    })?;
                    let slot = s.parse().map_err(|_| FormatError::BadEndPoint {
                        line: ln,
                        token: tok.to_string(),
                    })?;
                    ends[k] = EndPoint { vertex, slot };
                }
                poly.edges.push(Edge { shape: EdgeShape::Interval { ends } });
            }
            Some(&"circle") => {
                let tok = args.get(2).copied().unwrap_or("");
                let digits: Vec<u8> = tok
                    .chars()
                    .filter_map(|c| c.to_digit(10).map(|d| d as u8))
                    .collect();
                if digits.len() != 3 || tok.chars().count() != 3 || args.len() != 3 {
                    return Err(FormatError::BadMonodromy { line: ln, token: tok.into() });
                }
                poly.edges
                    .push(Edge { shape: EdgeShape::Circle { monodromy: [digits[0], digits[1], digits[2]] } });
            }
            _ => {
                return Err(FormatError::Expected {
                    line: ln,
                    expected: "interval|circle".into(),
                })
            }
        }
    }

    let (ln, args) = expect_kv(&mut lines, "regions")?;
    let nr = parse_usize(ln, args.first().copied().unwrap_or(""))?;
    for i in 0..nr {
        let (ln, args) = expect_kv(&mut lines, "r")?;
        if args.len() != 7 || args[1] != "genus" || args[3] != "free" || args[5] != "circuits" {
            return Err(FormatError::Expected {
                line: ln,
                expected: "r <i> genus <g> free <colors> circuits <n>".into(),
            });
        }
        let idx = parse_usize(ln, args[0])?;
        if idx != i {
            return Err(FormatError::IndexOrder { line: ln, got: idx, expected: i });
        }
        let genus = parse_usize(ln, args[2])? as u32;
        let free = if args[4] == "-" {
            Vec::new()
        } else {
            args[4]
                .chars()
                .map(|c| {
                    Color::from_char(c)
                        .ok_or(FormatError::BadColors { line: ln, token: args[4].into() })
                })
                .collect::<Result<Vec<_>, _>>()?
        };
        let ncirc = parse_usize(ln, args[6])?;
        let mut circuits = Vec::with_capacity(ncirc);
        for _ in 0..ncirc {
            let (cln, ctokens) = expect_kv(&mut lines, "c")?;
            let mut circuit = Vec::with_capacity(ctokens.len());
            for tok in ctokens {
                let bad = || FormatError::BadPassage { line: cln, token: tok.to_string() };
                let forward = match tok.chars().next() {
                    Some('+') => true,
                    Some('-') => false,
                    _ => return Err(bad()),
                };
                let (e, g) = tok[1..].split_once('.').ok_or_else(bad)?;
                circuit.push(Passage {
                    edge: e.parse().map_err(|_| bad())?,
                    germ: g.parse().map_err(|_| bad())?,
                    forward,
                });
            }
            circuits.push(circuit);
        }
        poly.regions.push(Region { genus, circuits, free });
    }

    let mut branching = None;
    let mut gleams = None;
    if let Some((_, l)) = lines.peek() {
        if l.starts_with("branching") {
            let (ln, args) = expect_kv(&mut lines, "branching")?;
            let mut b = Vec::with_capacity(args.len());
            for tok in args {
                match tok {
                    "+" => b.push(true),
                    "-" => b.push(false),
                    _ => return Err(FormatError::BadSign { line: ln, token: tok.into() }),
                }
            }
            if b.len() != poly.regions.len() {
                return Err(FormatError::BranchingLength {
                    got: b.len(),
                    want: poly.regions.len(),
                });
            }
            branching = Some(b);
        }
    }
    if let Some((_, l)) = lines.peek() {
        if l.starts_with("gleams") {
            let (ln, args) = expect_kv(&mut lines, "gleams")?;
            let count = parse_usize(ln, args.first().copied().unwrap_or(""))?;
            let mut g = Gleams::new();
            for _ in 0..count {
                let (gln, gargs) = expect_kv(&mut lines, "g")?;
                if gargs.len() != 2 {
                    return Err(FormatError::Trailing { line: gln });
                }
                let region = parse_usize(gln, gargs[0])?;
                let value: HalfInt = gargs[1]
                    .parse()
                    .map_err(|_| FormatError::BadGleam { line: gln, token: gargs[1].into() })?;
                if region >= poly.regions.len() || !poly.regions[region].is_internal() {
                    return Err(FormatError::GleamRegion(region));
                }
                g.insert(region, value);
            }
            gleams = Some(g);
        }
    }
    if let Some((ln, _)) = lines.peek() {
        return Err(FormatError::Trailing { line: ln });
    }
    Ok(DecoratedPolyhedron { poly, branching, gleams })
}
