//! Floating-point Gauss–Hermite check of the Hermite basis.
//!
//! `h_m(t) = e^{t²/2} dᵐ/dtᵐ e^{−t²} = q_m(t) e^{−t²/2}` with
//! `q_0 = 1`, `q_{m+1} = q_m′ − 2t q_m`. Integrals of `h_m h_k` are
//! polynomial against the weight `e^{−t²}` and are computed exactly up to
//! rounding by a 48-node rule. This is the only floating-point code in the
//! crate.

use std::sync::OnceLock;

const NODES: usize = 48;
/// Largest index the oracle accepts.
pub const MAX_INDEX: usize = 12;

type Poly = Vec<f64>;

fn rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_hermite(NODES))
}

/// Nodes and weights for `∫ f(t) e^{−t²} dt`, by Newton iteration on the
/// orthonormal Hermite recurrence.
fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    let pim4 = std::f64::consts::PI.powf(-0.25);
    let nf = n as f64;
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let mut z = 0.0f64;
    for i in 0..n.div_ceil(2) {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-0.16667),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..100 {
            let (mut p1, mut p2) = (pim4, 0.0);
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

fn derivative(p: &[f64]) -> Poly {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| k as f64 * c)
        .collect()
}

fn times_t(p: &[f64], c: f64) -> Poly {
    std::iter::once(0.0)
        .chain(p.iter().map(|x| x * c))
        .collect()
}

fn poly_add(a: &[f64], b: &[f64]) -> Poly {
    (0..a.len().max(b.len()))
        .map(|k| a.get(k).copied().unwrap_or(0.0) + b.get(k).copied().unwrap_or(0.0))
        .collect()
}

/// `q_m` from the derivative definition.
fn q(m: usize) -> Poly {
    let mut p = vec![1.0];
    for _ in 0..m {
        p = poly_add(&derivative(&p), &times_t(&p, -2.0));
    }
    p
}

fn eval(p: &[f64], t: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * t + c)
}

/// `∫ (p e^{−t²/2}) (r e^{−t²/2}) dt`.
fn pair(p: &[f64], r: &[f64]) -> f64 {
    let (x, w) = rule();
    x.iter()
        .zip(w)
        .map(|(&t, &wt)| wt * eval(p, t) * eval(r, t))
        .sum()
}

/// `∫_ℝ h_m(t) h_{m′}(t) dt`.
pub fn hermite_quadrature_oracle(m: usize, m_prime: usize) -> f64 {
    assert!(
        m <= MAX_INDEX && m_prime <= MAX_INDEX,
        "oracle supports indices up to {MAX_INDEX}"
    );
    pair(&q(m), &q(m_prime))
}

/// `∫ ((t ∓ d/dt) h_m) h_k dt`: the minus sign when `raising`, plus otherwise.
pub fn ladder_quadrature(m: usize, k: usize, raising: bool) -> f64 {
    assert!(
        m <= MAX_INDEX && k <= MAX_INDEX + 1,
        "oracle supports indices up to {MAX_INDEX}"
    );
    let qm = q(m);
    // (t ∓ d/dt)(q e^{−t²/2}) = (t q ∓ (q′ − t q)) e^{−t²/2}
    let dq = poly_add(&derivative(&qm), &times_t(&qm, -1.0));
    let tq = times_t(&qm, 1.0);
    let f = if raising {
        poly_add(&tq, &dq.iter().map(|c| -c).collect::<Vec<_>>())
    } else {
        poly_add(&tq, &dq)
    };
    pair(&f, &q(k))
}
