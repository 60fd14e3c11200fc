//! Direct quadrature of the form-factor integrals for n ≤ 3.
//!
//! With x = sin²φ every endpoint factor (x⁻¹−1)^(±1/2) combines with dx into a
//! smooth trigonometric weight, so tensor-product Gauss–Legendre on [0, π/2]
//! converges geometrically.

use crate::error::{Error, Result};
use crate::numerics::gauss_legendre;
use rug::Float;

const T_MAX: f64 = 0.95;

struct Rule {
    x: Vec<f64>,
    /// Weight including the Jacobian, split by weight type.
    w_plain: Vec<f64>,
    /// Extra cos²φ factor for the (x⁻¹−1)^(+1/2) weight.
    cos2: Vec<f64>,
}

/// Nodes for ∫_0^1 g(x) x^N (x⁻¹−1)^(−1/2) dx = ∫ 2 sin^(2N+2)φ g(sin²φ) dφ, split into panels.
fn rule(n_nodes: usize, panels: usize, n_sep: u32, shift: i32) -> Rule {
    let gl = gauss_legendre(n_nodes, 64);
    let half_pi = std::f64::consts::FRAC_PI_2;
    let h = half_pi / panels as f64;
    let mut r = Rule {
        x: Vec::new(),
        w_plain: Vec::new(),
        cos2: Vec::new(),
    };
    for p in 0..panels {
        let a = p as f64 * h;
        for (node, wt) in &gl {
            let phi = a + h * (node.to_f64() + 1.0) / 2.0;
            let s = phi.sin();
            let c = phi.cos();
            r.x.push(s * s);
            let pow = 2 * n_sep as i32 + 2 + shift;
            r.w_plain.push(2.0 * s.powi(pow) * wt.to_f64() * h / 2.0);
            r.cos2.push(c * c / (s * s));
        }
    }
    r
}

fn integrate(n: usize, n_sep: u32, t: f64, nodes: usize) -> f64 {
    let pi = std::f64::consts::PI;
    let panels = 4;
    match n {
        1 => {
            // x^(N−1)(x⁻¹−1)^(−1/2)(1−tx)^(−1/2)
            let r = rule(nodes, panels, n_sep, -2);
            let s: f64 =
                r.x.iter()
                    .zip(&r.w_plain)
                    .map(|(x, w)| w / (1.0 - t * x).sqrt())
                    .sum();
            t.powf(n_sep as f64 / 2.0) * s / pi
        }
        2 => {
            // x1: x^N (x⁻¹−1)^(−1/2)(1−tx)^(−1/2); x2: x^N (x⁻¹−1)^(1/2)(1−tx)^(1/2)
            let r1 = rule(nodes, panels, n_sep, 0);
            let r2 = rule(nodes, panels, n_sep, 0);
            let mut s = 0.0;
            for (x1, w1) in r1.x.iter().zip(&r1.w_plain) {
                let a = w1 / (1.0 - t * x1).sqrt();
                let mut inner = 0.0;
                for ((x2, w2), c2) in r2.x.iter().zip(&r2.w_plain).zip(&r2.cos2) {
                    let d = 1.0 - t * x1 * x2;
                    inner += w2 * c2 * (1.0 - t * x2).sqrt() / (d * d);
                }
                s += a * inner;
            }
            t.powi(n_sep as i32 + 1) * s / (pi * pi)
        }
        3 => {
            // x1, x3: x^(N−1)(x⁻¹−1)^(−1/2)(1−tx)^(−1/2); x2: x^(N+1)(x⁻¹−1)^(1/2)(1−tx)^(1/2)
            let ra = rule(nodes, panels, n_sep, -2);
            let rb = rule(nodes, panels, n_sep, 2);
            let mut s = 0.0;
            for ((x2, w2), c2) in rb.x.iter().zip(&rb.w_plain).zip(&rb.cos2) {
                let b = w2 * c2 * (1.0 - t * x2).sqrt();
                let mut inner = 0.0;
                for (i, (x1, w1)) in ra.x.iter().zip(&ra.w_plain).enumerate() {
                    let d1 = 1.0 - t * x1 * x2;
                    let a1 = w1 / ((1.0 - t * x1).sqrt() * d1 * d1);
                    for (x3, w3) in ra.x[..i].iter().zip(&ra.w_plain[..i]) {
                        let d3 = 1.0 - t * x3 * x2;
                        let diff = x1 - x3;
                        inner += 2.0 * a1 * w3 * diff * diff / ((1.0 - t * x3).sqrt() * d3 * d3);
                    }
                }
                s += b * inner;
            }
            let expo = 1.5 * n_sep as f64 + 2.0;
            t.powf(expo) * s / (2.0 * pi * pi * pi)
        }
        _ => unreachable!(),
    }
}

/// f^(n)_{N,N}(t) for n ∈ {1, 2, 3} by tensor-product quadrature with target
/// relative accuracy 1e-12. Refuses t > 0.95.
pub fn formfactor_quad(n: usize, n_sep: u32, t: &Float) -> Result<Float> {
    if !(1..=3).contains(&n) {
        return Err(Error::Parameter(format!(
            "quadrature is available for n = 1..3, got {n}"
        )));
    }
    let tf = t.to_f64();
    if !(0.0..=T_MAX).contains(&tf) {
        return Err(Error::Domain(format!(
            "quadrature needs 0 ≤ t ≤ {T_MAX}; endpoint singularities crowd at t = {tf}"
        )));
    }
    let mut nodes = 8;
    let mut prev = integrate(n, n_sep, tf, nodes);
    loop {
        nodes *= 2;
        let cur = integrate(n, n_sep, tf, nodes);
        let scale = cur.abs().max(1e-300);
        if (cur - prev).abs() <= 1e-13 * scale {
            return Ok(Float::with_val(t.prec().max(64), cur));
        }
        let limit = if n == 3 { 32 } else { 128 };
        if nodes >= limit {
            if (cur - prev).abs() <= 1e-11 * scale {
                return Ok(Float::with_val(t.prec().max(64), cur));
            }
            return Err(Error::Convergence(format!(
                "quadrature for f^({n}) stalled at {:.3e} relative change",
                (cur - prev).abs() / scale
            )));
        }
        prev = cur;
    }
}
