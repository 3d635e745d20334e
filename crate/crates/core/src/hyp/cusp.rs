//! Cusp cross-section developing maps and moduli.

use num_complex::Complex64;
use num_rational::Rational64;
use serde::Serialize;

use super::equations::{cusp_surfaces, gluing_equations, CuspSurface};
use super::tri::{perm_parity_odd, IdealTriangulation};

#[derive(Clone, Debug, Serialize)]
pub struct CuspData {
    pub cusp: usize,
    /// Corner triangles in the cross-section.
    pub triangles: usize,
    /// Lattice ratio of the torus, in the modular fundamental domain.
    #[serde(serialize_with = "ser_complex")]
    pub modulus: Complex64,
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

fn shape_value(z: Complex64, v: u8, u: u8) -> Complex64 {
    let e = super::tri::edge_index(v, u);
    match e.min(5 - e) {
        0 => z,
        1 => 1.0 / (1.0 - z),
        _ => 1.0 - 1.0 / z,
    }
}

/// Counterclockwise corner order of the cusp triangle (t, v) in a
/// positively-oriented tetrahedron.
fn ccw_corners(v: u8) -> [u8; 3] {
    let mut c: Vec<u8> = (0..4u8).filter(|&u| u != v).collect();
    if perm_parity_odd(&[v, c[0], c[1], c[2]]) {
        c.swap(1, 2);
    }
    [c[0], c[1], c[2]]
}

/// Develop the cusp cross-section in the plane: positions of the three
/// corners of every triangle, indexed by corner label (entry v unused).
/// In counterclockwise corner order (A, B, C): C = A + (B - A) * w where w
/// is the shape on tetrahedron edge {v, A}.
pub fn develop_cusp(
    tri: &IdealTriangulation,
    surf: &CuspSurface,
    shapes: &[Complex64],
) -> Vec<[Complex64; 4]> {
    let zero = Complex64::new(0.0, 0.0);
    let mut pos = vec![[zero; 4]; surf.tris.len()];
    for &i in &surf.order {
        let (t, v) = surf.tris[i];
        let [a, b, c] = ccw_corners(v);
        let w = shape_value(shapes[t], v, a);
        match surf.parent[i] {
            None => {
                pos[i][a as usize] = zero;
                pos[i][b as usize] = Complex64::new(1.0, 0.0);
                pos[i][c as usize] = w;
            }
            Some((p, fp, fc)) => {
                let (tp, vp) = surf.tris[p];
                let perm = tri.gluings[tp][fp as usize].perm;
                debug_assert_eq!(perm[vp as usize], v);
                for u in 0..4u8 {
                    if u != vp && u != fp {
                        pos[i][perm[u as usize] as usize] = pos[p][u as usize];
                    }
                }
                // The corner opposite the entered side is the unknown one.
                if fc == c {
                    pos[i][c as usize] =
                        pos[i][a as usize] + (pos[i][b as usize] - pos[i][a as usize]) * w;
                } else if fc == b {
                    pos[i][b as usize] =
                        pos[i][a as usize] + (pos[i][c as usize] - pos[i][a as usize]) / w;
                } else {
                    pos[i][a as usize] =
                        (pos[i][c as usize] - pos[i][b as usize] * w) / (1.0 - w);
                }
            }
        }
    }
    pos
}

/// Translation of the deck transformation through a seam: where the loop
/// re-enters, the developed copies differ by this vector (the holonomy
/// must be parabolic, i.e. derivative 1, at a complete structure).
pub fn seam_translation(
    tri: &IdealTriangulation,
    surf: &CuspSurface,
    pos: &[[Complex64; 4]],
    seam: (usize, u8, usize, u8),
) -> Complex64 {
    let (i, f, j, _f2) = seam;
    let (t, v) = surf.tris[i];
    let perm = tri.gluings[t][f as usize].perm;
    let mut out = None;
    for u in 0..4u8 {
        if u != v && u != f {
            let tau = pos[i][u as usize] - pos[j][perm[u as usize] as usize];
            if let Some(prev) = out {
                let diff: Complex64 = tau - prev;
                debug_assert!(
                    diff.norm() < 1e-6 * (1.0 + tau.norm()),
                    "seam holonomy is not a translation"
                );
            }
            out = Some(tau);
        }
    }
    out.unwrap()
}

/// Reduce a lattice ratio into the modular fundamental domain.
pub fn normalize_modulus(mut tau: Complex64) -> Complex64 {
    if tau.im < 0.0 {
        tau = 1.0 / tau; // swap the basis vectors
    }
    for _ in 0..64 {
        tau -= Complex64::new(tau.re.round(), 0.0);
        if tau.norm() < 1.0 - 1e-12 {
            tau = -1.0 / tau;
        } else {
            break;
        }
    }
    // Boundary tie-breaks: prefer Re >= 0 on the unit circle and Re = +1/2
    // over -1/2, so equivalent lattices normalize to identical values.
    if (tau.norm() - 1.0).abs() < 1e-9 && tau.re < -1e-9 {
        tau = -1.0 / tau;
    }
    if (tau.re + 0.5).abs() < 1e-9 {
        tau += 1.0;
    }
    tau
}

/// Moduli of all cusps at a solved geometric structure, using the same
/// deterministic curve basis as the completeness equations.
pub fn cusp_moduli(tri: &IdealTriangulation, shapes: &[Complex64]) -> Vec<CuspData> {
    let (_, basis_seams) = gluing_equations(tri);
    let surfaces = cusp_surfaces(tri);
    surfaces
        .iter()
        .zip(&basis_seams)
        .map(|(surf, seams)| {
            let pos = develop_cusp(tri, surf, shapes);
            let t1 = seam_translation(tri, surf, &pos, seams[0]);
            let t2 = seam_translation(tri, surf, &pos, seams[1]);
            CuspData {
                cusp: surf.cusp,
                triangles: surf.tris.len(),
                modulus: normalize_modulus(t2 / t1),
            }
        })
        .collect()
}

/// Element a + b*w of the lattice field, w = exp(i*pi/3), with w^2 = w - 1.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Eisenstein {
    pub a: Rational64,
    pub b: Rational64,
}

impl Eisenstein {
    pub fn new(a: i64, b: i64) -> Eisenstein {
        Eisenstein { a: Rational64::from_integer(a), b: Rational64::from_integer(b) }
    }

    pub fn omega() -> Eisenstein {
        Eisenstein::new(0, 1)
    }

    pub fn add(self, o: Eisenstein) -> Eisenstein {
        Eisenstein { a: self.a + o.a, b: self.b + o.b }
    }

    pub fn sub(self, o: Eisenstein) -> Eisenstein {
        Eisenstein { a: self.a - o.a, b: self.b - o.b }
    }

    pub fn mul(self, o: Eisenstein) -> Eisenstein {
        // (a + bw)(c + dw) = ac - bd + (ad + bc + bd) w
        Eisenstein {
            a: self.a * o.a - self.b * o.b,
            b: self.a * o.b + self.b * o.a + self.b * o.b,
        }
    }

    /// Squared modulus a^2 + ab + b^2 (a rational number).
    pub fn norm(self) -> Rational64 {
        self.a * self.a + self.a * self.b + self.b * self.b
    }

    pub fn inv(self) -> Eisenstein {
        // conj(a + bw) = (a + b) - bw; x * conj(x) = norm.
        let n = self.norm();
        Eisenstein { a: (self.a + self.b) / n, b: -self.b / n }
    }

    pub fn div(self, o: Eisenstein) -> Eisenstein {
        self.mul(o.inv())
    }

    pub fn to_complex(self) -> Complex64 {
        let a = *self.a.numer() as f64 / *self.a.denom() as f64;
        let b = *self.b.numer() as f64 / *self.b.denom() as f64;
        Complex64::new(a + 0.5 * b, b * (3.0f64).sqrt() / 2.0)
    }
}

/// Exact cusp moduli at the regular shape, where every corner shape equals
/// w exactly: the same development and reduction carried out over the
/// lattice field.
pub fn exact_regular_moduli(tri: &IdealTriangulation) -> Vec<Eisenstein> {
    let (_, basis_seams) = gluing_equations(tri);
    let surfaces = cusp_surfaces(tri);
    let w = Eisenstein::omega();
    surfaces
        .iter()
        .zip(&basis_seams)
        .map(|(surf, seams)| {
            let zero = Eisenstein::new(0, 0);
            let mut pos = vec![[zero; 4]; surf.tris.len()];
            for &i in &surf.order {
                let (_, v) = surf.tris[i];
                let [a, b, c] = ccw_corners(v);
                match surf.parent[i] {
                    None => {
                        pos[i][a as usize] = zero;
                        pos[i][b as usize] = Eisenstein::new(1, 0);
                        pos[i][c as usize] = w;
                    }
                    Some((p, fp, fc)) => {
                        let (tp, _) = surf.tris[p];
                        let perm = tri.gluings[tp][fp as usize].perm;
                        for u in 0..4u8 {
                            if u != surf.tris[p].1 && u != fp {
                                pos[i][perm[u as usize] as usize] = pos[p][u as usize];
                            }
                        }
                        if fc == c {
                            pos[i][c as usize] = pos[i][a as usize]
                                .add(pos[i][b as usize].sub(pos[i][a as usize]).mul(w));
                        } else if fc == b {
                            pos[i][b as usize] = pos[i][a as usize]
                                .add(pos[i][c as usize].sub(pos[i][a as usize]).div(w));
                        } else {
                            let one = Eisenstein::new(1, 0);
                            pos[i][a as usize] = pos[i][c as usize]
                                .sub(pos[i][b as usize].mul(w))
                                .div(one.sub(w));
                        }
                    }
                }
            }
            let tau_of = |seam: (usize, u8, usize, u8)| {
                let (i, f, j, _) = seam;
                let (t, v) = surf.tris[i];
                let perm = tri.gluings[t][f as usize].perm;
                let u = (0..4u8).find(|&u| u != v && u != f).unwrap();
                pos[i][u as usize].sub(pos[j][perm[u as usize] as usize])
            };
            let mut tau = tau_of(seams[1]).div(tau_of(seams[0]));
            // Exact modular reduction; Im tau > 0 iff b > 0.
            if tau.b < Rational64::from_integer(0) {
                tau = tau.inv();
            }
            let one = Rational64::from_integer(1);
            for _ in 0..64 {
                // Re tau = a + b/2; shift by the nearest integer.
                let re2 = tau.a * 2 + tau.b; // 2*Re
                let shift = ((*re2.numer() as f64 / *re2.denom() as f64) / 2.0).round() as i64;
                tau = tau.sub(Eisenstein::new(shift, 0));
                if tau.norm() < one {
                    tau = tau.inv().mul(Eisenstein::new(-1, 0));
                } else {
                    break;
                }
            }
            // Same boundary tie-breaks as the floating-point reduction.
            let zero = Rational64::from_integer(0);
            if tau.norm() == one && tau.a * 2 + tau.b < zero {
                tau = tau.inv().mul(Eisenstein::new(-1, 0));
            }
            if tau.a * 2 + tau.b == -one {
                tau = tau.add(Eisenstein::new(1, 0));
            }
            tau
        })
        .collect()
}
