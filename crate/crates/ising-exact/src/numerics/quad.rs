use super::{eps, pi};
use crate::error::{Error, Result};
use rug::Float;

/// Tolerance and precision settings shared by the quadrature routines.
#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    pub prec: u32,
    /// Target relative accuracy 2^(-tol_bits).
    pub tol_bits: u32,
    pub max_level: u32,
}

impl QuadConfig {
    pub fn new(prec: u32, tol_bits: u32) -> Self {
        QuadConfig {
            prec,
            tol_bits,
            max_level: 14,
        }
    }
}

/// Double-exponential (tanh-sinh) quadrature on [a, b] with level doubling.
pub fn tanh_sinh<F>(mut f: F, a: &Float, b: &Float, cfg: &QuadConfig) -> Result<Float>
where
    F: FnMut(&Float) -> Result<Float>,
{
    tanh_sinh_endpoints(|x, _, _| f(x), a, b, cfg)
}

/// Tanh-sinh variant whose integrand also receives the distances `x - a` and
/// `b - x`, computed without cancellation. Integrands with algebraic endpoint
/// singularities should use those distances rather than `x`.
pub fn tanh_sinh_endpoints<F>(mut f: F, a: &Float, b: &Float, cfg: &QuadConfig) -> Result<Float>
where
    F: FnMut(&Float, &Float, &Float) -> Result<Float>,
{
    let w = cfg.prec + 16;
    let a = Float::with_val(w, a);
    let b = Float::with_val(w, b);
    let len = Float::with_val(w, &b - &a);
    let half_pi = pi(w) / 2u32;
    // Nodes reach within 2^-(2 tol) of the endpoints, enough for inverse square-root singularities.
    let u_max = (2.0 * cfg.tol_bits as f64 + 24.0) * std::f64::consts::LN_2 / 2.0 + 2.0;
    let s_max = (2.0 * u_max / std::f64::consts::PI).asinh();
    let tol = eps(w, cfg.tol_bits as i32);

    let eval = |s: f64, f: &mut F| -> Result<Float> {
        let sf = Float::with_val(w, s);
        let u = Float::with_val(w, sf.sinh_ref()) * &half_pi;
        let cu = Float::with_val(w, u.cosh_ref());
        let weight =
            Float::with_val(w, sf.cosh_ref()) * &half_pi / Float::with_val(w, cu.square_ref());
        let e = Float::with_val(w, Float::with_val(w, u.abs_ref()) * -2i32).exp();
        let near = Float::with_val(w, &len * &e) / Float::with_val(w, &e + 1u32);
        let far = Float::with_val(w, &len - &near);
        let (x, da, db) = if u < 0 {
            (Float::with_val(w, &a + &near), near, far)
        } else {
            (Float::with_val(w, &b - &near), far, near)
        };
        if da.is_zero() || db.is_zero() {
            return Ok(Float::with_val(w, 0));
        }
        let fx = f(&x, &da, &db)?;
        Ok(weight * fx)
    };

    let h0 = 0.5f64;
    let mut sum = Float::with_val(w, 0);
    let kmax = (s_max / h0).ceil() as i64;
    for k in -kmax..=kmax {
        sum += eval(k as f64 * h0, &mut f)?;
    }
    let mut prev = Float::with_val(w, &sum * h0) * &len / 2u32;
    let mut h = h0;
    for level in 1..=cfg.max_level {
        h /= 2.0;
        let kmax = (s_max / h).ceil() as i64;
        let mut k = -kmax + if kmax % 2 == 0 { 1 } else { 0 };
        while k <= kmax {
            sum += eval(k as f64 * h, &mut f)?;
            k += 2;
        }
        let cur = Float::with_val(w, &sum * h) * &len / 2u32;
        let diff = Float::with_val(w, &cur - &prev).abs();
        let scale = Float::with_val(w, cur.abs_ref()).max(&eps(w, w as i32 / 2));
        if level >= 3 && diff <= Float::with_val(w, &tol * &scale) {
            return Ok(Float::with_val(cfg.prec, cur));
        }
        prev = cur;
    }
    Err(Error::Convergence(format!(
        "tanh-sinh did not reach 2^-{} within {} levels",
        cfg.tol_bits, cfg.max_level
    )))
}

/// ∫_{-π}^{π} f(ω) dω for a smooth 2π-periodic integrand by the trapezoid rule,
/// doubling the node count until successive estimates agree.
pub fn trapezoid_periodic<F>(mut f: F, cfg: &QuadConfig) -> Result<Float>
where
    F: FnMut(&Float) -> Result<Float>,
{
    let w = cfg.prec + 16;
    let two_pi = pi(w) * 2u32;
    let tol = eps(w, cfg.tol_bits as i32);
    let mut m: u64 = 8;
    let mut sum = Float::with_val(w, 0);
    for i in 0..m {
        let x = Float::with_val(w, &two_pi * i) / m - pi(w);
        sum += f(&x)?;
    }
    let mut prev = Float::with_val(w, &sum * &two_pi) / m;
    for level in 1..=(cfg.max_level + 6) {
        for i in 0..m {
            let x = Float::with_val(w, &two_pi * (2 * i + 1)) / (2 * m) - pi(w);
            sum += f(&x)?;
        }
        m *= 2;
        let cur = Float::with_val(w, &sum * &two_pi) / m;
        let diff = Float::with_val(w, &cur - &prev).abs();
        let scale = Float::with_val(w, cur.abs_ref()).max(&eps(w, w as i32 / 2));
        if level >= 2 && diff <= Float::with_val(w, &tol * &scale) {
            return Ok(Float::with_val(cfg.prec, cur));
        }
        prev = cur;
    }
    Err(Error::Convergence(
        "periodic trapezoid rule did not converge".into(),
    ))
}

/// Gauss–Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize, prec: u32) -> Vec<(Float, Float)> {
    let w = prec + 32;
    let mut out = Vec::with_capacity(n);
    let pw = pi(w);
    for i in 1..=n {
        let guess = ((i as f64 - 0.25) / (n as f64 + 0.5) * std::f64::consts::PI).cos();
        let mut x = Float::with_val(w, guess);
        let mut dp = Float::with_val(w, 0);
        for _ in 0..200 {
            let (p, d) = legendre(n, &x, w);
            let dx = Float::with_val(w, &p / &d);
            x -= &dx;
            dp = d;
            if dx.is_zero() || Float::with_val(w, dx.abs_ref()) < eps(w, w as i32 - 4) {
                let (_, d) = legendre(n, &x, w);
                dp = d;
                break;
            }
        }
        let one_m = Float::with_val(w, 1) - Float::with_val(w, x.square_ref());
        let weight = Float::with_val(w, 2) / (one_m * Float::with_val(w, dp.square_ref()));
        let _ = &pw;
        out.push((Float::with_val(prec, x), Float::with_val(prec, weight)));
    }
    out
}

fn legendre(n: usize, x: &Float, w: u32) -> (Float, Float) {
    let mut p0 = Float::with_val(w, 1);
    let mut p1 = Float::with_val(w, x);
    for k in 2..=n {
        let p2 = (Float::with_val(w, x * &p1) * (2 * k as u32 - 1)
            - Float::with_val(w, &p0 * (k as u32 - 1)))
            / k as u32;
        p0 = p1;
        p1 = p2;
    }
    let one_m = Float::with_val(w, 1) - Float::with_val(w, x.square_ref());
    let d = Float::with_val(w, &p0 - Float::with_val(w, x * &p1)) * n as u32 / one_m;
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoint_singularity() {
        // ∫_0^1 x^(-1/2) (1-x)^(-1/2) dx = π
        let cfg = QuadConfig::new(128, 100);
        let a = Float::with_val(128, 0);
        let b = Float::with_val(128, 1);
        let v = tanh_sinh_endpoints(
            |_, da, db| {
                let p = Float::with_val(150, da * db);
                Ok(p.sqrt().recip())
            },
            &a,
            &b,
            &cfg,
        )
        .unwrap();
        assert!((v - pi(128)).abs() < 1e-28);
    }

    #[test]
    fn periodic() {
        // ∫ e^{cos ω} dω = 2π I0(1)
        let cfg = QuadConfig::new(128, 110);
        let v = trapezoid_periodic(|x| Ok(Float::with_val(150, x.cos_ref()).exp()), &cfg).unwrap();
        let i0 = 1.266_065_877_752_008_4_f64;
        assert!((v / (pi(128) * 2u32) - i0).abs() < 1e-15);
    }

    #[test]
    fn legendre_integrates_polynomials() {
        let nodes = gauss_legendre(10, 128);
        let mut s = Float::with_val(128, 0);
        for (x, w) in &nodes {
            s += Float::with_val(128, rug::ops::Pow::pow(x, 18u32)) * w;
        }
        assert!((s - Float::with_val(128, 2) / 19u32).abs() < 1e-35);
    }
}
