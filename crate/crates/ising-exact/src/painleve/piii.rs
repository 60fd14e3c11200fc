use crate::error::{Error, Result};
use crate::numerics::bessel_k01;
use rug::Float;
use serde::Serialize;
use std::f64::consts::PI;

/// Output spacing of the stored grid.
const GRID_H: f64 = 1.0 / 256.0;
const TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GSign {
    Plus,
    Minus,
}

impl GSign {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(GSign::Plus),
            "minus" | "-" => Ok(GSign::Minus),
            _ => Err(Error::Parameter(format!("unknown sign {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PiiiStep {
    pub theta: f64,
    pub eta: f64,
    pub deta: f64,
    /// (1/4)∫_θ^∞ s[(1−η²)² − η′²]/η² ds
    pub exponent: f64,
}

/// η(θ) on a uniform grid from θ_max down to θ_min (last point exactly θ_min).
#[derive(Debug, Clone, Serialize)]
pub struct PiiiSolution {
    pub lambda: f64,
    pub theta_max: f64,
    pub grid: Vec<PiiiStep>,
}

fn rhs(theta: f64, y: &[f64; 3]) -> [f64; 3] {
    let (eta, d) = (y[0], y[1]);
    let dd = d * d / eta - d / theta + eta * eta * eta - 1.0 / eta;
    let one_m = 1.0 - eta * eta;
    let di = -0.25 * theta * (one_m * one_m - d * d) / (eta * eta);
    [d, dd, di]
}

/// The ODE right-hand side η″(θ, η, η′).
pub fn piii_rhs(theta: f64, eta: f64, deta: f64) -> f64 {
    rhs(theta, &[eta, deta, 0.0])[1]
}

// Dormand–Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

fn dp_step(theta: f64, y: &[f64; 3], h: f64) -> ([f64; 3], f64) {
    let mut k = [[0.0; 3]; 7];
    for s in 0..7 {
        let mut ys = *y;
        for (j, kj) in k.iter().enumerate().take(s) {
            for c in 0..3 {
                ys[c] += h * A[s][j] * kj[c];
            }
        }
        k[s] = rhs(theta + C[s] * h, &ys);
    }
    let mut y5 = *y;
    let mut err: f64 = 0.0;
    for c in 0..3 {
        let mut d5 = 0.0;
        let mut d4 = 0.0;
        for s in 0..7 {
            d5 += B5[s] * k[s][c];
            d4 += B4[s] * k[s][c];
        }
        y5[c] += h * d5;
        let scale = TOL * (1.0 + y[c].abs().max(y5[c].abs()));
        err = err.max((h * (d5 - d4)).abs() / scale);
    }
    (y5, err)
}

fn pole(theta: f64, y: &[f64; 3]) -> Option<Error> {
    if !y.iter().all(|v| v.is_finite()) || y[0] <= 0.0 || y[0] > 1e12 {
        let detail = if y[0] <= 0.0 || !y[0].is_finite() {
            "η reached zero"
        } else {
            "η diverged"
        };
        return Some(Error::Pole {
            theta,
            detail: detail.into(),
        });
    }
    None
}

/// Integrates from `from` to `to` (to < from) adaptively, landing exactly on `to`.
fn advance(from: f64, to: f64, y: &mut [f64; 3], h: &mut f64) -> Result<()> {
    let mut theta = from;
    let mut guard = 0usize;
    while theta > to {
        guard += 1;
        if guard > 200_000 {
            return Err(Error::Convergence(format!(
                "step size collapsed near θ = {theta}"
            )));
        }
        let step = (*h).min(theta - to);
        let (y_new, err) = dp_step(theta, y, -step);
        if !err.is_finite() {
            *h = step / 4.0;
            if *h < 1e-14 {
                return Err(pole(theta, y).unwrap_or(Error::Pole {
                    theta,
                    detail: "non-finite step".into(),
                }));
            }
            continue;
        }
        if err <= 1.0 {
            theta = if step == theta - to { to } else { theta - step };
            *y = y_new;
            if let Some(e) = pole(theta, y) {
                return Err(e);
            }
        }
        let factor = if err == 0.0 {
            4.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 4.0)
        };
        *h = (step * factor).min(GRID_H);
        if *h < 1e-14 {
            return Err(pole(theta, y).unwrap_or(Error::Pole {
                theta,
                detail: "step size underflow".into(),
            }));
        }
    }
    Ok(())
}

fn k01(x: f64) -> Result<(f64, f64)> {
    let (k0, k1) = bessel_k01(&Float::with_val(64, x))?;
    Ok((k0.to_f64(), k1.to_f64()))
}

/// (1/4)∫_X^∞ θ[(1−η²)² − η′²] dθ for η = 1 − (2/π)λK0(2θ), to second order in λ:
/// (λ²/π²)[S²(K1² − K0²) − S K0 K1] at S = 2X.
fn bessel_tail(lambda: f64, x: f64) -> Result<f64> {
    let s = 2.0 * x;
    let (k0, k1) = k01(s)?;
    Ok(lambda * lambda / (PI * PI) * (s * s * (k1 * k1 - k0 * k0) - s * k0 * k1))
}

/// Solves the PIII equation inward from θ_max with the Bessel boundary
/// condition η ∼ 1 − (2/π)λK0(2θ).
pub fn piii_solve(lambda: f64, theta_min: f64, theta_max: f64) -> Result<PiiiSolution> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::Parameter(format!(
            "λ must lie in (0, 1], got {lambda}"
        )));
    }
    if theta_max < 8.0 {
        return Err(Error::Parameter(format!(
            "θ_max must be at least 8, got {theta_max}"
        )));
    }
    if !(theta_min > 0.0 && theta_min < theta_max) {
        return Err(Error::Parameter(format!(
            "θ_min must lie in (0, θ_max), got {theta_min}"
        )));
    }
    let (k0, k1) = k01(2.0 * theta_max)?;
    let c = 2.0 * lambda / PI;
    let mut y = [1.0 - c * k0, 2.0 * c * k1, bessel_tail(lambda, theta_max)?];
    let mut grid = vec![PiiiStep {
        theta: theta_max,
        eta: y[0],
        deta: y[1],
        exponent: y[2],
    }];
    let mut h = GRID_H / 4.0;
    let mut theta = theta_max;
    let mut k = 1u64;
    while theta > theta_min {
        let next = (theta_max - k as f64 * GRID_H).max(theta_min);
        advance(theta, next, &mut y, &mut h)?;
        theta = next;
        grid.push(PiiiStep {
            theta,
            eta: y[0],
            deta: y[1],
            exponent: y[2],
        });
        k += 1;
    }
    Ok(PiiiSolution {
        lambda,
        theta_max,
        grid,
    })
}

impl PiiiSolution {
    /// Largest |η″_fd − η″_ode| over uniform grid points in [a, b], with η″_fd
    /// from the fourth-order central difference of stored η values.
    pub fn max_defect(&self, a: f64, b: f64) -> f64 {
        self.max_defect_stride(a, b, 1)
    }

    /// Defect with the difference stencil spaced `stride` grid cells apart.
    pub fn max_defect_stride(&self, a: f64, b: f64, stride: usize) -> f64 {
        let g = &self.grid;
        let h = GRID_H * stride as f64;
        let mut worst: f64 = 0.0;
        for i in 2 * stride..g.len().saturating_sub(2 * stride) {
            let p = &g[i];
            if p.theta < a || p.theta > b {
                continue;
            }
            // stored points run downward in θ; the last interval may be short
            if ((g[i - 2 * stride].theta - g[i + 2 * stride].theta) - 4.0 * h).abs() > 1e-12 {
                continue;
            }
            let e = |k: isize| g[(i as isize + k * stride as isize) as usize].eta;
            let fd = (-e(-2) + 16.0 * e(-1) - 30.0 * p.eta + 16.0 * e(1) - e(2)) / (12.0 * h * h);
            worst = worst.max((fd - piii_rhs(p.theta, p.eta, p.deta)).abs());
        }
        worst
    }

    /// Writes θ, η, η′ as CSV with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("theta,eta,deta\n");
        for p in &self.grid {
            s.push_str(&format!(
                "{:.16e},{:.16e},{:.16e}\n",
                p.theta, p.eta, p.deta
            ));
        }
        s
    }

    pub fn last(&self) -> &PiiiStep {
        self.grid.last().expect("grid holds at least θ_max")
    }
}

fn g_value(p: &PiiiStep, sign: GSign) -> f64 {
    let pre = match sign {
        GSign::Plus => 1.0 - p.eta,
        GSign::Minus => 1.0 + p.eta,
    };
    pre / (2.0 * p.eta.sqrt()) * p.exponent.exp()
}

/// G±(r;λ) from a solution whose last grid point is θ = r/2.
pub fn scaling_g_from(sol: &PiiiSolution, r: f64, sign: GSign) -> Result<f64> {
    let p = sol.last();
    if (p.theta - r / 2.0).abs() > 1e-12 * r.max(1.0) {
        return Err(Error::Parameter(format!(
            "solution ends at θ = {}, not r/2 = {}",
            p.theta,
            r / 2.0
        )));
    }
    Ok(g_value(p, sign))
}

/// G±(r;λ) = (1∓η)/(2η^(1/2)) exp((1/4)∫_(r/2)^∞ θ[(1−η²)² − η′²]/η² dθ).
pub fn scaling_g(r: f64, lambda: f64, sign: GSign) -> Result<f64> {
    if r <= 0.0 {
        return Err(Error::Domain(format!("r must be positive, got {r}")));
    }
    let theta_max = (r / 2.0 + 4.0).max(10.0);
    let sol = piii_solve(lambda, r / 2.0, theta_max)?;
    scaling_g_from(&sol, r, sign)
}
