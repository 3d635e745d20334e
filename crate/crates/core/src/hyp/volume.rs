//! Hyperbolic volume via the Lobachevsky function and Bloch-Wigner values.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use super::solve::ShapeSolution;

/// zeta(2n) for n = 1..; zeta(2) is pi^2/6 exactly, higher values by direct
/// summation with a tail bound below 1e-18.
fn zeta_even(n: usize) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut out = vec![PI * PI / 6.0];
        for m in 2..=40usize {
            let s = 2 * m as i32;
            let mut sum = 0.0;
            let mut k = 1.0f64;
            loop {
                let term = k.powi(-s);
                sum += term;
                // Tail below integral bound k^(1-s)/(s-1).
                if k.powi(1 - s) / f64::from(s - 1) < 1e-18 {
                    break;
                }
                k += 1.0;
            }
            out.push(sum);
        }
        out
    });
    table[n - 1]
}

/// Lobachevsky function L(theta) = -int_0^theta log|2 sin t| dt, evaluated
/// by the power series
///   L(t) = t - t log|2t| + sum_{n>=1} zeta(2n)/(n(2n+1)) t^{2n+1}/pi^{2n}
/// after reduction by the pi-periodicity and oddness to |t| <= pi/2, where
/// the series ratio is at most 1/4 per term.
pub fn lobachevsky(theta: f64) -> f64 {
    let mut t = theta % PI;
    if t > PI / 2.0 {
        t -= PI;
    } else if t < -PI / 2.0 {
        t += PI;
    }
    if t == 0.0 {
        return 0.0;
    }
    let mut sum = t - t * (2.0 * t.abs()).ln();
    let ratio = (t / PI) * (t / PI);
    let mut power = t * ratio;
    for n in 1..=40usize {
        let term = zeta_even(n) / (n as f64 * (2 * n + 1) as f64) * power;
        sum += term;
        if term.abs() < 1e-16 {
            break;
        }
        power *= ratio;
    }
    sum
}

/// Volume of the ideal tetrahedron of shape z (Bloch-Wigner value):
/// L(arg z) + L(arg 1/(1-z)) + L(arg(1 - 1/z)). Real (flat) shapes
/// contribute 0.
pub fn tet_volume(z: Complex64) -> f64 {
    if z.im == 0.0 {
        return 0.0;
    }
    let z1 = 1.0 / (1.0 - z);
    let z2 = 1.0 - 1.0 / z;
    lobachevsky(z.arg()) + lobachevsky(z1.arg()) + lobachevsky(z2.arg())
}

#[derive(Clone, Copy, Debug)]
pub struct VolumeConstants {
    /// Volume of the ideal regular tetrahedron.
    pub v_tet: f64,
    /// Volume of the ideal regular octahedron (4 shape-i tetrahedra).
    pub v_oct: f64,
}

pub fn volume_constants() -> VolumeConstants {
    VolumeConstants {
        v_tet: tet_volume(Complex64::new(0.5, (3.0f64).sqrt() / 2.0)),
        v_oct: 4.0 * tet_volume(Complex64::new(0.0, 1.0)),
    }
}

/// Total volume of a solved triangulation; the flag reports flat
/// tetrahedra contributing zero.
pub fn total_volume(s: &ShapeSolution) -> (f64, bool) {
    let mut flat = false;
    let mut vol = 0.0;
    for &z in &s.shapes {
        if z.im.abs() <= 1e-9 {
            flat = true;
        } else {
            vol += tet_volume(z);
        }
    }
    (vol, flat)
}

/// Volume of the complement determined by `n` true vertices on the
/// singular component with `m` of them replaced by X parts:
/// 2(n-2m) v_oct + 10m v_tet.
pub fn volume_formula(n: i64, m: i64, vc: &VolumeConstants) -> Result<f64, String> {
    if n <= 0 || m < 0 || n < 2 * m {
        return Err(format!("invalid arguments n={n}, m={m}: need n > 0 and n >= 2m >= 0"));
    }
    Ok(2.0 * (n - 2 * m) as f64 * vc.v_oct + 10.0 * m as f64 * vc.v_tet)
}
