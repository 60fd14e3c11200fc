//! Bulk terms χ^(n): isotropic closed forms, the (n−1)-fold ω-integrals for
//! general couplings, and the critical amplitude constants C^(n).

use crate::error::{Error, Result};
use crate::numerics::{clausen_cl2, elliptic_ke, pi};
use crate::params::{CouplingPoint, Side};
use rug::Float;
use std::f64::consts::PI;

/// χ^(1)(t) = t^(1/4)/(1−t^(1/4))² (t above T_c) and
/// χ^(2)(t) = [(1+t)E − (1−t)K]/[3π(1−t^(1/2))(1−t)] (t below T_c, parameter m = t).
pub fn chi_bulk_closed(n: usize, t: &Float) -> Result<Float> {
    let prec = t.prec();
    if !(*t > 0 && *t < 1) {
        return Err(Error::Domain(format!(
            "closed forms need 0 < t < 1, got {}",
            t.to_f64()
        )));
    }
    let root = Float::with_val(prec, t.sqrt_ref());
    match n {
        1 => {
            let q = Float::with_val(prec, root.sqrt_ref());
            let d = Float::with_val(prec, 1 - &q).square();
            Ok(q / d)
        }
        2 => {
            let w = prec + 32;
            let t = Float::with_val(w, t);
            let (k, e) = elliptic_ke(&t)?;
            let num = Float::with_val(w, 1 + &t) * e - Float::with_val(w, 1 - &t) * k;
            let den = pi(w) * 3u32 * Float::with_val(w, 1 - &root) * Float::with_val(w, 1 - &t);
            Ok(Float::with_val(prec, num / den))
        }
        _ => Err(Error::Parameter(format!(
            "bulk closed forms exist for n = 1, 2, got {n}"
        ))),
    }
}

/// Per-leg quantities of the ω-integrand.
struct Geometry {
    cot: f64,
    cot2: f64,
    xi: f64,
}

struct Leg {
    x: f64,
    sinh_gamma: f64,
    gamma: f64,
}

impl Geometry {
    fn new(cp: &CouplingPoint) -> Self {
        let sv = cp.s_v().to_f64();
        let sh = cp.s_h().to_f64();
        let cot2 = sh / sv;
        let xi = (1.0 + 1.0 / (sh * sh)).sqrt() * (1.0 + sv * sv).sqrt();
        Geometry {
            cot: cot2.sqrt(),
            cot2,
            xi,
        }
    }

    fn leg(&self, omega: f64) -> Leg {
        let d = self.xi - omega.cos();
        let root = (d * d - 1.0 / (self.cot2 * self.cot2)).sqrt();
        let sinh_gamma = self.cot2 * root;
        Leg {
            // cot²α (d − root) without cancellation
            x: 1.0 / (self.cot2 * (d + root)),
            sinh_gamma,
            gamma: sinh_gamma.asinh(),
        }
    }

    /// Integrand of the n-particle term at ω_1..ω_n (Σω = 0), without the
    /// cot^n α / n! prefactor and the 1/(2π)^(n−1) measure.
    fn integrand(&self, omegas: &[f64]) -> f64 {
        let legs: Vec<Leg> = omegas.iter().map(|&w| self.leg(w)).collect();
        let mut v = 1.0;
        let mut prod_x = 1.0;
        for l in &legs {
            v /= l.sinh_gamma;
            prod_x *= l.x;
        }
        for i in 0..legs.len() {
            for k in i + 1..legs.len() {
                let h = self.cot * ((omegas[i] - omegas[k]) / 2.0).sin()
                    / ((legs[i].gamma + legs[k].gamma) / 2.0).sinh();
                v *= h * h;
            }
        }
        v * (1.0 + prod_x) / (1.0 - prod_x)
    }
}

fn tolerance(n: usize) -> f64 {
    if n <= 2 {
        1e-13
    } else {
        1e-11
    }
}

/// Periodic trapezoid rule in `dim` ≤ 2 angles over [−π, π)^dim, doubling the
/// node count until successive estimates agree. Returns the mean value.
fn periodic_mean<F: Fn(&[f64]) -> f64>(
    dim: usize,
    tol: f64,
    max_nodes: usize,
    f: F,
) -> Result<f64> {
    let mut m = 16usize;
    let mut prev: Option<f64> = None;
    while m <= max_nodes {
        let h = 2.0 * PI / m as f64;
        let mut sum = 0.0;
        if dim == 1 {
            for i in 0..m {
                sum += f(&[-PI + i as f64 * h]);
            }
        } else {
            for i in 0..m {
                let a = -PI + i as f64 * h;
                for j in 0..m {
                    sum += f(&[a, -PI + j as f64 * h]);
                }
            }
        }
        let cur = sum / (m.pow(dim as u32)) as f64;
        if let Some(p) = prev {
            if (cur - p).abs() <= tol * cur.abs().max(1e-300) {
                return Ok(cur);
            }
        }
        prev = Some(cur);
        m *= 2;
    }
    Err(Error::Convergence(format!(
        "ω-quadrature did not settle with {max_nodes} nodes per angle; the couplings are too close to |s| = 1"
    )))
}

/// χ^(n) for n ≤ 3 from the (n−1)-fold ω-integral at general couplings.
/// The integrand is analytic and 2π-periodic off criticality, so the
/// trapezoid rule converges geometrically; relative accuracy ~1e-12 (n ≤ 2)
/// and ~1e-10 (n = 3).
pub fn chi_bulk_integral(n: usize, cp: &CouplingPoint) -> Result<Float> {
    if !(1..=3).contains(&n) {
        return Err(Error::Cap(format!(
            "bulk integrals are limited to n ≤ 3, got {n}"
        )));
    }
    if cp.side == Side::AtTc {
        return Err(Error::Domain("χ^(n) integrals diverge at T_c".into()));
    }
    let g = Geometry::new(cp);
    let tol = tolerance(n);
    let mean = match n {
        1 => g.integrand(&[0.0]),
        2 => periodic_mean(1, tol, 1 << 16, |w| g.integrand(&[w[0], -w[0]]))?,
        _ => periodic_mean(2, tol, 1 << 11, |w| {
            g.integrand(&[w[0], w[1], -w[0] - w[1]])
        })?,
    };
    let fact = [1.0, 1.0, 2.0, 6.0][n];
    let v = g.cot.powi(n as i32) / fact * mean;
    if !v.is_finite() {
        return Err(Error::Convergence("non-finite ω-integral".into()));
    }
    Ok(Float::with_val(cp.prec(), v))
}

/// Amplitudes C^(1..4) of the n-particle terms at T_c.
#[derive(Debug, Clone)]
pub struct Amplitudes {
    pub c: [Float; 4],
}

impl Amplitudes {
    /// C^(1)/C^(2).
    pub fn ratio_leading(&self) -> Float {
        Float::with_val(self.c[0].prec(), &self.c[0] / &self.c[1])
    }

    /// (C^(1) + C^(3))/(C^(2) + C^(4)).
    pub fn ratio_four_term(&self) -> Float {
        let p = self.c[0].prec();
        Float::with_val(p, &self.c[0] + &self.c[2]) / Float::with_val(p, &self.c[1] + &self.c[3])
    }
}

/// C^(1) = 1, C^(2) = 1/(12π), C^(3) = (π²/3 + 2 − 3√3 Cl₂(π/3))/(2π²),
/// C^(4) = (4π²/9 − 1/6 − 7ζ(3)/2)/(16π³).
pub fn amplitude_constants(prec: u32) -> Amplitudes {
    let w = prec + 32;
    let p = pi(w);
    let p2 = Float::with_val(w, p.square_ref());
    let c1 = Float::with_val(w, 1);
    let c2 = Float::with_val(w, &p * 12u32).recip();
    let cl = clausen_cl2(&Float::with_val(w, &p / 3u32));
    let sqrt3 = Float::with_val(w, 3).sqrt();
    let c3 = (Float::with_val(w, &p2 / 3u32) + 2u32 - sqrt3 * cl * 3u32)
        / (Float::with_val(w, &p2 * 2u32));
    let zeta3 = Float::with_val(w, 3).zeta();
    let c4 = (Float::with_val(w, &p2 * 4u32) / 9u32
        - Float::with_val(w, 6).recip()
        - zeta3 * 7u32 / 2u32)
        / (Float::with_val(w, &p2 * &p) * 16u32);
    Amplitudes {
        c: [c1, c2, c3, c4].map(|v| Float::with_val(prec, v)),
    }
}
