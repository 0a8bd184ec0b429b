//! Independent quadrature for small indices: the iterated integral over
//! 0 < x₁ < … < x_w < 1 rewritten in θ (x = sin θ), integrated panel by panel
//! with a Legendre spectral integration matrix on a graded mesh.

use std::f64::consts::FRAC_PI_2;

use super::{form_sequence, NForm};
use crate::index::F2Index;
use crate::{Error, Result};

fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, q) = legendre_pair(n, x);
            dp = n as f64 * (x * p - q) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (p, q) = legendre_pair(n, x);
        dp = if p.is_finite() { n as f64 * (x * p - q) / (x * x - 1.0) } else { dp };
        xs[i] = x;
        ws[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (xs, ws)
}

/// (P_n(x), P_{n−1}(x)).
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for m in 1..n {
        let p2 = ((2 * m + 1) as f64 * x * p1 - m as f64 * p0) / (m + 1) as f64;
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

fn legendre_all(n: usize, x: f64) -> Vec<f64> {
    let mut p = vec![1.0, x];
    for m in 1..n {
        p.push(((2 * m + 1) as f64 * x * p[m] - m as f64 * p[m - 1]) / (m + 1) as f64);
    }
    p.truncate(n + 1);
    p
}

/// S[i][j] with Σ_j S[i][j] f(x_j) ≈ ∫_{−1}^{x_i} f.
fn integration_matrix(xs: &[f64], ws: &[f64]) -> Vec<Vec<f64>> {
    let n = xs.len();
    let ps: Vec<Vec<f64>> = xs.iter().map(|&x| legendre_all(n + 1, x)).collect();
    // ∫_{−1}^{x} P_m = (P_{m+1} − P_{m−1})/(2m+1), and x + 1 for m = 0
    let q = |i: usize, m: usize| if m == 0 { xs[i] + 1.0 } else { (ps[i][m + 1] - ps[i][m - 1]) / (2 * m + 1) as f64 };
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|m| (2 * m + 1) as f64 / 2.0 * ws[j] * ps[j][m] * q(i, m)).sum())
                .collect()
        })
        .collect()
}

#[derive(Clone, Copy)]
struct Panel {
    theta: (f64, f64),
    u: (f64, f64),
}

fn mesh(levels: usize, middle: usize, ratio: f64) -> Vec<Panel> {
    let q = std::f64::consts::FRAC_PI_4;
    let mut left = vec![0.0];
    left.extend((0..levels).rev().map(|j| q / 2.0 * ratio.powi(j as i32)));
    let mut panels = Vec::new();
    for w in left.windows(2) {
        panels.push(Panel { theta: (w[0], w[1]), u: (FRAC_PI_2 - w[0], FRAC_PI_2 - w[1]) });
    }
    let (a, b) = (q / 2.0, FRAC_PI_2 - q / 2.0);
    for m in 0..middle {
        let t0 = a + (b - a) * m as f64 / middle as f64;
        let t1 = a + (b - a) * (m + 1) as f64 / middle as f64;
        panels.push(Panel { theta: (t0, t1), u: (FRAC_PI_2 - t0, FRAC_PI_2 - t1) });
    }
    // graded in u toward θ = π/2, endpoints exact in u
    let mut right: Vec<f64> = (0..levels).map(|j| q / 2.0 * ratio.powi(j as i32)).collect();
    right.push(0.0);
    for w in right.windows(2) {
        panels.push(Panel { theta: (FRAC_PI_2 - w[0], FRAC_PI_2 - w[1]), u: (w[0], w[1]) });
    }
    panels
}

fn form_value(f: NForm, theta: f64, u: f64) -> f64 {
    match f {
        NForm::Omega => 1.0,
        NForm::Omega0 => u.sin() / theta.sin(),
        NForm::Omega1 => (u / 2.0).cos() / (u / 2.0).sin(),
    }
}

fn integrate(forms: &[NForm], nodes: usize, levels: usize, middle: usize) -> f64 {
    let (xs, ws) = gauss_legendre(nodes);
    let s = integration_matrix(&xs, &ws);
    let panels = mesh(levels, middle, 0.25);
    let pts: Vec<Vec<(f64, f64)>> = panels
        .iter()
        .map(|p| {
            xs.iter()
                .map(|&x| {
                    let t = (x + 1.0) / 2.0;
                    (p.theta.0 + t * (p.theta.1 - p.theta.0), p.u.0 + t * (p.u.1 - p.u.0))
                })
                .collect()
        })
        .collect();
    let mut g: Vec<Vec<f64>> = panels.iter().map(|_| vec![1.0; nodes]).collect();
    let mut total = 0.0;
    for &f in forms {
        let mut carry = 0.0;
        for (pi, p) in panels.iter().enumerate() {
            let half = (p.theta.1 - p.theta.0) / 2.0;
            let h: Vec<f64> = pts[pi].iter().zip(&g[pi]).map(|(&(t, u), &gv)| form_value(f, t, u) * gv).collect();
            let panel_int: f64 = half * h.iter().zip(&ws).map(|(a, b)| a * b).sum::<f64>();
            for i in 0..nodes {
                g[pi][i] = carry + half * s[i].iter().zip(&h).map(|(a, b)| a * b).sum::<f64>();
            }
            carry += panel_int;
        }
        total = carry;
    }
    total
}

/// Quadrature value and a two-resolution error estimate.
pub fn quad_oracle_with_error(idx: &F2Index) -> Result<(f64, f64)> {
    if idx.depth() > 2 || idx.weight() > 4 {
        return Err(Error::OracleTooLarge);
    }
    if !idx.is_admissible() {
        return Err(Error::Inadmissible(idx.to_string()));
    }
    let forms = form_sequence(idx);
    let coarse = integrate(&forms, 20, 24, 4);
    let fine = integrate(&forms, 30, 32, 8);
    Ok((fine, (fine - coarse).abs()))
}

/// Quadrature evaluation for depth ≤ 2 and weight ≤ 4.
pub fn quad_oracle(idx: &F2Index) -> Result<f64> {
    quad_oracle_with_error(idx).map(|r| r.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rule_is_exact_on_polynomials() {
        let (xs, ws) = gauss_legendre(12);
        let s: f64 = xs.iter().zip(&ws).map(|(x, w)| w * x.powi(10)).sum();
        assert!((s - 2.0 / 11.0).abs() < 1e-14);
        let m = integration_matrix(&xs, &ws);
        for (i, &x) in xs.iter().enumerate() {
            let v: f64 = m[i].iter().zip(&xs).map(|(a, y)| a * y * y).sum();
            assert!((v - (x.powi(3) + 1.0) / 3.0).abs() < 1e-14);
        }
    }

    #[test]
    fn known_values() {
        let l2 = std::f64::consts::LN_2;
        let (v, e) = quad_oracle_with_error(&F2Index::omega(1)).unwrap();
        assert!((v - PI / 2.0).abs() < 1e-13 && e < 1e-12);
        let v = quad_oracle(&F2Index::omega(2)).unwrap();
        assert!((v - PI / 2.0 * l2).abs() < 1e-12);
        let v = quad_oracle(&"zf2(2; w1)".parse().unwrap()).unwrap();
        assert!((v - PI * PI / 6.0).abs() < 1e-11, "{v}");
        let v = quad_oracle(&"zf2(1,1; w,w)".parse().unwrap()).unwrap();
        assert!((v - PI * PI / 8.0).abs() < 1e-12);
        assert!(matches!(quad_oracle(&"zf2(1,1,1; w,w,w)".parse().unwrap()), Err(Error::OracleTooLarge)));
    }
}
