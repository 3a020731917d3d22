//! Roots of polynomials over `Q(ζ_m)` that lie in `Q(ζ_m)` itself.
//!
//! Floating-point roots under every complex embedding serve only as hints:
//! a candidate is assembled from one root per conjugate pair of embeddings,
//! its power-basis coordinates are recovered by inverting the embedding
//! matrix and rounded to nearby rationals, and the candidate is kept only if
//! it annihilates the polynomial exactly.

use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;

use super::{CycloField, CycloScalar};

// Kept small on purpose: the conjugate-pair assembly always yields real
// coordinates, so rationality with a small denominator is the filter that
// rejects inconsistent combinations before the exact evaluation.
const MAX_DENOMINATOR: i64 = 1 << 12;
const MAX_COMBINATIONS: usize = 4_000_000;

/// Distinct roots of `poly` (coefficients lowest degree first) lying in the
/// coefficient field. A root that exists in the field but is missed by the
/// numeric hints is simply absent from the result; callers compare the count
/// against the degree.
pub fn roots_in_field(poly: &[CycloScalar]) -> Vec<CycloScalar> {
    let Some(deg) = poly.iter().rposition(|c| !c.is_zero()) else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    let poly = &poly[..=deg];
    let field = poly[0].field().clone();
    if deg == 1 {
        let root = -(&poly[0] / &poly[1]);
        return vec![root];
    }
    let m = field.modulus();
    let phi = field.degree();
    let units: Vec<u32> = (1..=m.max(1)).filter(|k| k.gcd(&m) == 1).collect();
    debug_assert_eq!(units.len(), phi);

    if phi == 1 {
        let numeric: Vec<Complex64> = poly.iter().map(|c| c.to_complex(1)).collect();
        let mut found: Vec<CycloScalar> = Vec::new();
        for z in complex_roots(&numeric) {
            if let Some(r) = rationalize(z.re) {
                let cand = CycloScalar::from_rational(&field, r);
                push_if_root(poly, cand, &mut found);
            }
        }
        return found;
    }

    // one representative per conjugate pair {k, m-k}
    let reps: Vec<u32> = units.iter().copied().filter(|&k| k < m - k).collect();
    let rep_roots: Vec<Vec<Complex64>> = reps
        .iter()
        .map(|&k| {
            let numeric: Vec<Complex64> = poly.iter().map(|c| c.to_complex(k)).collect();
            complex_roots(&numeric)
        })
        .collect();
    let vinv = embedding_inverse(&units, m);

    let mut found: Vec<CycloScalar> = Vec::new();
    let others = reps.len() - 1;
    let per = deg;
    let combos = per.checked_pow(others as u32).unwrap_or(usize::MAX);
    if combos > MAX_COMBINATIONS {
        return found;
    }
    for first in &rep_roots[0] {
        for combo in 0..combos {
            let idx = combo;
            let mut values = vec![Complex64::new(0.0, 0.0); phi];
            for (u, &k) in units.iter().enumerate() {
                let (rep_pos, conj) = match reps.iter().position(|&r| r == k) {
                    Some(p) => (p, false),
                    None => (reps.iter().position(|&r| r == m - k).unwrap(), true),
                };
                let value = if rep_pos == 0 {
                    *first
                } else {
                    let stride = per.pow((rep_pos - 1) as u32);
                    rep_roots[rep_pos][(idx / stride) % per]
                };
                values[u] = if conj { value.conj() } else { value };
            }
            let Some(cand) = reconstruct(&field, &vinv, &values) else {
                continue;
            };
            if push_if_root(poly, cand, &mut found) {
                break;
            }
        }
        if found.len() == deg {
            break;
        }
    }
    found
}

fn push_if_root(poly: &[CycloScalar], cand: CycloScalar, found: &mut Vec<CycloScalar>) -> bool {
    if found.contains(&cand) {
        return true;
    }
    if evaluate(poly, &cand).is_zero() {
        found.push(cand);
        return true;
    }
    false
}

fn evaluate(poly: &[CycloScalar], x: &CycloScalar) -> CycloScalar {
    let mut acc = CycloScalar::zero(x.field());
    for c in poly.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

fn reconstruct(field: &Arc<CycloField>, vinv: &[Vec<Complex64>], values: &[Complex64]) -> Option<CycloScalar> {
    let mut coeffs = Vec::with_capacity(values.len());
    let scale = values.iter().map(|v| v.norm()).fold(1.0, f64::max);
    for row in vinv {
        let r: Complex64 = row.iter().zip(values).map(|(a, b)| a * b).sum();
        if r.im.abs() > 1e-6 * scale {
            return None;
        }
        coeffs.push(rationalize(r.re)?);
    }
    Some(CycloScalar::from_coeffs(field, coeffs))
}

// Inverse of V[u][j] = exp(2πi·units[u]·j/m), j < φ(m).
fn embedding_inverse(units: &[u32], m: u32) -> Vec<Vec<Complex64>> {
    let n = units.len();
    let mut a: Vec<Vec<Complex64>> = units
        .iter()
        .map(|&k| {
            (0..n)
                .map(|j| {
                    Complex64::from_polar(
                        1.0,
                        2.0 * std::f64::consts::PI * (k as f64) * (j as f64) / m as f64,
                    )
                })
                .collect()
        })
        .collect();
    let mut inv: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm()))
            .unwrap();
        a.swap(col, piv);
        inv.swap(col, piv);
        let d = a[col][col];
        for j in 0..n {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for r in 0..n {
            if r != col {
                let f = a[r][col];
                if f.norm() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let t = a[col][j];
                    a[r][j] -= f * t;
                    let t = inv[col][j];
                    inv[r][j] -= f * t;
                }
            }
        }
    }
    inv
}

/// Best rational approximation with bounded denominator, if close enough.
fn rationalize(x: f64) -> Option<BigRational> {
    if !x.is_finite() || x.abs() > 1e12 {
        return None;
    }
    let tol = 1e-8 * x.abs().max(1.0);
    // continued fraction convergents
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut y = x;
    for _ in 0..64 {
        let a = y.floor();
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > MAX_DENOMINATOR as i128 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        if ((h1 as f64) / (k1 as f64) - x).abs() <= tol {
            return Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = y - a;
        if frac.abs() < 1e-15 {
            break;
        }
        y = 1.0 / frac;
    }
    if k1 != 0 && ((h1 as f64) / (k1 as f64) - x).abs() <= tol {
        Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)))
    } else {
        None
    }
}

/// All complex roots of a polynomial (lowest degree first) by Aberth iteration
/// followed by Newton polishing.
fn complex_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.9, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    for _ in 0..2000 {
        let mut worst: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = eval(z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| {
                    let d = z[k] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        1.0 / d
                    }
                })
                .sum();
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[k] -= w;
                worst = worst.max(w.norm() / (1.0 + z[k].norm()));
            }
        }
        if worst < 1e-15 {
            break;
        }
    }
    for zk in &mut z {
        for _ in 0..3 {
            let (p, dp) = eval(*zk);
            if dp.norm() > 0.0 {
                let step = p / dp;
                if step.is_finite() {
                    *zk -= step;
                }
            }
        }
    }
    z
}
