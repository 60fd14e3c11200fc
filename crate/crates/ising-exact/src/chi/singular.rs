//! Singularity loci of χ^(n) (Nickel points, isotropic w) and χ_d^(n)
//! (roots of unity), with their local exponents.

use crate::error::{Error, Result};
use crate::numerics::{eps, float_string, pi};
use crate::params::Side;
use rug::{Float, Rational};
use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChiKind {
    Bulk,
    Diagonal,
}

impl ChiKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "bulk" => Ok(ChiKind::Bulk),
            "diag" | "diagonal" => Ok(ChiKind::Diagonal),
            _ => Err(Error::Parameter(format!(
                "unknown susceptibility kind {s:?}"
            ))),
        }
    }
}

/// Variable a singular point is reported in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SingVariable {
    W,
    T,
    /// x = t^(1/2), used for odd diagonal terms.
    X,
}

fn ser_float<S: Serializer>(x: &Float, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&float_string(x))
}

fn ser_rational<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[derive(Debug, Clone, Serialize)]
pub struct SingularityRecord {
    #[serde(serialize_with = "ser_float")]
    pub re: Float,
    #[serde(serialize_with = "ser_float")]
    pub im: Float,
    pub variable: SingVariable,
    #[serde(serialize_with = "ser_rational")]
    pub exponent: Rational,
    pub has_log: bool,
    pub n: usize,
    /// Index pairs (j, k) of the location equation that produce this point.
    pub pairs: Vec<(u32, u32)>,
}

/// Local exponent of χ^(n) or χ_d^(n) at its Nickel-type singularities:
/// bulk ε^(2j(j+1)−1) ln ε for n = 2j+1, ε^(2j²−3/2) for n = 2j;
/// diagonal ε^(2m²−1) ln ε for n = 2m, ε^((m+1)²−1/2) for n = 2m+1.
pub fn singularity_exponent(n: usize, side: Side, kind: ChiKind) -> Result<(Rational, bool)> {
    if n < 2 {
        return Err(Error::Parameter(format!(
            "no singularities of this type for n = {n}"
        )));
    }
    let want = if n % 2 == 1 {
        Side::AboveTc
    } else {
        Side::BelowTc
    };
    if side != want {
        return Err(Error::Parameter(format!(
            "n = {n} contributes to the {} side only",
            if n % 2 == 1 {
                "high-temperature"
            } else {
                "low-temperature"
            }
        )));
    }
    let m = (n / 2) as i64;
    Ok(match (kind, n % 2 == 1) {
        (ChiKind::Bulk, true) => (Rational::from(2 * m * (m + 1) - 1), true),
        (ChiKind::Bulk, false) => (Rational::from((4 * m * m - 3, 2)), false),
        (ChiKind::Diagonal, false) => (Rational::from(2 * m * m - 1), true),
        (ChiKind::Diagonal, true) => (Rational::from((2 * (m + 1) * (m + 1) - 1, 2)), false),
    })
}

fn side_of(n: usize) -> Side {
    if n % 2 == 1 {
        Side::AboveTc
    } else {
        Side::BelowTc
    }
}

/// cos(2πj/n) + cos(2πk/n).
fn cos_sum(n: usize, j: u32, k: u32, w: u32) -> Float {
    let two_pi = pi(w) * 2u32;
    let a = Float::with_val(w, &two_pi * j) / n as u32;
    let b = Float::with_val(w, &two_pi * k) / n as u32;
    a.cos() + b.cos()
}

/// All isotropic solutions w = 1/(2(cos 2πj/n + cos 2πk/n)) of the location
/// equation, over 0 ≤ j ≤ k ≤ [n/2], (j, k) ≠ (0, 0), j + k ≠ n/2 for even n.
/// Points at infinity (vanishing cosine sum) are dropped.
fn raw_points(n: usize, prec: u32) -> Vec<(Float, (u32, u32))> {
    let w = prec + 32;
    let half = (n / 2) as u32;
    let tiny = eps(w, w as i32 - 16);
    let mut out = Vec::new();
    for j in 0..=half {
        for k in j..=half {
            if j == 0 && k == 0 {
                continue;
            }
            if n % 2 == 0 && (j + k) as usize * 2 == n {
                continue;
            }
            let c = cos_sum(n, j, k, w);
            if Float::with_val(w, c.abs_ref()) < tiny {
                continue;
            }
            out.push(((c * 2u32).recip(), (j, k)));
        }
    }
    out
}

fn close(a: &Float, b: &Float, prec: u32) -> bool {
    Float::with_val(a.prec(), a - b).abs() < eps(a.prec(), prec as i32 - 8)
}

/// Nickel singularities of χ^(n) in w, as reported in the usual tables:
/// only points new at n (absent for every lower n of the same parity), and
/// without the critical points w = ±1/4.
pub fn nickel_singularities(n: usize, prec: u32) -> Result<Vec<SingularityRecord>> {
    if !(2..=64).contains(&n) {
        return Err(Error::Parameter(format!(
            "Nickel singularities need 2 ≤ n ≤ 64, got {n}"
        )));
    }
    let (exponent, has_log) = singularity_exponent(n, side_of(n), ChiKind::Bulk)?;
    let quarter = Float::with_val(prec + 32, 0.25f64);
    let mut seen: Vec<Float> = Vec::new();
    let mut m = 2 - n % 2;
    while m < n {
        seen.extend(raw_points(m, prec).into_iter().map(|(w, _)| w));
        m += 2;
    }
    let mut out: Vec<SingularityRecord> = Vec::new();
    for (w, pair) in raw_points(n, prec) {
        let wabs = Float::with_val(w.prec(), w.abs_ref());
        if close(&wabs, &quarter, prec) || seen.iter().any(|s| close(s, &w, prec)) {
            continue;
        }
        if let Some(rec) = out.iter_mut().find(|r| close(&r.re, &w, prec)) {
            rec.pairs.push(pair);
            continue;
        }
        out.push(SingularityRecord {
            re: Float::with_val(prec, &w),
            im: Float::with_val(prec, 0),
            variable: SingVariable::W,
            exponent: exponent.clone(),
            has_log,
            n,
            pairs: vec![pair],
        });
    }
    out.sort_by(|a, b| a.re.partial_cmp(&b.re).expect("finite"));
    Ok(out)
}

/// |cosh²2K − s(cos 2πj/n + cos 2πk/n)| at the isotropic s with
/// 1/(2w) = s + 1/s, for the first index pair of a bulk record.
pub fn location_residual(rec: &SingularityRecord) -> Result<Float> {
    let (j, k) = *rec
        .pairs
        .first()
        .ok_or_else(|| Error::Parameter("record carries no index pair".into()))?;
    if rec.variable != SingVariable::W {
        return Err(Error::Parameter(
            "location residual applies to bulk records".into(),
        ));
    }
    let w = rec.re.prec() + 64;
    let sigma = Float::with_val(w, &rec.re * 2u32).recip();
    let disc = Float::with_val(w, sigma.square_ref()) - 4u32;
    // s = (σ ± √(σ²−4))/2, complex on |s| = 1 when |σ| < 2
    let (s_re, s_im) = if disc < 0 {
        (
            Float::with_val(w, &sigma / 2u32),
            Float::with_val(w, -disc).sqrt() / 2u32,
        )
    } else {
        (
            Float::with_val(w, &sigma + disc.sqrt()) / 2u32,
            Float::with_val(w, 0),
        )
    };
    let c = cos_sum(rec.n, j, k, w);
    // 1 + s² − c s
    let re = Float::with_val(w, 1u32) + Float::with_val(w, s_re.square_ref())
        - Float::with_val(w, s_im.square_ref())
        - Float::with_val(w, &c * &s_re);
    let im = Float::with_val(w, &s_re * &s_im) * 2u32 - Float::with_val(w, &c * &s_im);
    Ok(Float::with_val(rec.re.prec(), re.hypot(&im)))
}

/// Root-of-unity singularities of χ_d^(n) other than t = 1: t^m = 1 for
/// n = 2m, and x^(2m+1) = 1 (x = t^(1/2)) for n = 2m+1.
pub fn diagonal_singularities(n: usize, prec: u32) -> Result<Vec<SingularityRecord>> {
    if !(2..=64).contains(&n) {
        return Err(Error::Parameter(format!(
            "diagonal singularities need 2 ≤ n ≤ 64, got {n}"
        )));
    }
    let (exponent, has_log) = singularity_exponent(n, side_of(n), ChiKind::Diagonal)?;
    let (count, variable) = if n % 2 == 0 {
        (n / 2, SingVariable::T)
    } else {
        (n, SingVariable::X)
    };
    let w = prec + 32;
    let two_pi = pi(w) * 2u32;
    Ok((1..count)
        .map(|k| {
            let a = Float::with_val(w, &two_pi * k as u32) / count as u32;
            SingularityRecord {
                re: Float::with_val(prec, a.cos_ref()),
                im: Float::with_val(prec, a.sin_ref()),
                variable,
                exponent: exponent.clone(),
                has_log,
                n,
                pairs: Vec::new(),
            }
        })
        .collect())
}
