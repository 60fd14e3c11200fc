use super::field::{add, SeriesModP};
use super::ode::{fit_ode, verify_annihilation, LinearODE};
use super::operator::Operator;
use crate::chi::{chi3d_closed_series, chi3d_parts_series};
use crate::error::{Error, Result};
use crate::formfactor::formfactor_series_mod;
use rug::Rational;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureTarget {
    /// The f^(1)_{N,N} operator right-divides the f^(3)_{N,N} operator, N ≤ 2.
    RussianDoll,
    /// The χ_d^(3) operator annihilates each of χ_{d;1}, χ_{d;2}, χ_{d;3}, and
    /// the operator of Ω_d^(3) = χ_d^(3) − χ_d^(1)/3 has order 2 + 3.
    DirectSum,
    /// The order-2 operator of χ_{d;2} right-divides the χ_d^(3) operator.
    DiagChi3Factor,
}

impl StructureTarget {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "russian_doll" => Ok(StructureTarget::RussianDoll),
            "direct_sum" => Ok(StructureTarget::DirectSum),
            "diag_chi3_factor" => Ok(StructureTarget::DiagChi3Factor),
            _ => Err(Error::Parameter(format!("unknown structure target {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OperatorInfo {
    pub label: String,
    pub order: usize,
    pub degree: usize,
    /// Expected order, when one is known.
    pub expected_order: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureCheck {
    pub label: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub target: StructureTarget,
    pub p: u64,
    pub operators: Vec<OperatorInfo>,
    pub checks: Vec<StructureCheck>,
    pub pass: bool,
}

const F1_LEN: usize = 60;
const F3_LEN: usize = 200;
const CHI3_LEN: usize = 300;

fn info(label: &str, ode: &LinearODE, expected_order: Option<usize>) -> OperatorInfo {
    OperatorInfo {
        label: label.into(),
        order: ode.order,
        degree: ode.degree,
        expected_order,
    }
}

/// Negative control: the same operator with 1 added to the constant term of P_0.
fn perturbed(ode: &LinearODE) -> LinearODE {
    let mut o = ode.clone();
    o.coeffs[0][0] = add(o.coeffs[0][0], 1, o.p);
    o
}

fn divides(big: &LinearODE, small: &LinearODE) -> Result<bool> {
    Operator::from_ode(big).right_divisible_by(&Operator::from_ode(small))
}

fn russian_doll(p: u64) -> Result<(Vec<OperatorInfo>, Vec<StructureCheck>)> {
    let mut ops = Vec::new();
    let mut checks = Vec::new();
    for n_sep in 0..=2u32 {
        let l1 = fit_ode(&formfactor_series_mod(1, n_sep, F1_LEN, p)?, 3, 6)?;
        let l3 = fit_ode(&formfactor_series_mod(3, n_sep, F3_LEN, p)?, 8, 14)?;
        ops.push(info(&format!("f^(1)_{{{n_sep},{n_sep}}}"), &l1, Some(2)));
        ops.push(info(&format!("f^(3)_{{{n_sep},{n_sep}}}"), &l3, None));
        checks.push(StructureCheck {
            label: format!("L[f^(1)] right-divides L[f^(3)] at N = {n_sep}"),
            pass: divides(&l3, &l1)?,
        });
        checks.push(StructureCheck {
            label: format!("perturbed L[f^(1)] does not divide L[f^(3)] at N = {n_sep}"),
            pass: !divides(&l3, &perturbed(&l1))?,
        });
    }
    Ok((ops, checks))
}

fn chi3_operator(p: u64) -> Result<LinearODE> {
    fit_ode(
        &SeriesModP::from_rational(&chi3d_closed_series(CHI3_LEN), p)?,
        8,
        30,
    )
}

fn direct_sum(p: u64) -> Result<(Vec<OperatorInfo>, Vec<StructureCheck>)> {
    let l = chi3_operator(p)?;
    let parts = chi3d_parts_series(CHI3_LEN);
    // Ω_d^(3) = χ_d^(3) − χ_d^(1)/3, the part left after the lower-n term
    let omega = chi3d_closed_series(CHI3_LEN).sub(&parts[0].scale(&Rational::from((1, 3))))?;
    let lo = fit_ode(&SeriesModP::from_rational(&omega, p)?, 8, 30)?;
    let mut ops = vec![
        info("chi_d^(3)", &l, None),
        info("Omega_d^(3)", &lo, Some(5)),
    ];
    let mut checks = Vec::new();
    let mut total = 0;
    for (i, part) in parts.iter().enumerate() {
        let s = SeriesModP::from_rational(part, p)?;
        let lp = fit_ode(&s, 5, 30)?;
        total += lp.order;
        ops.push(info(&format!("chi_d;{}", i + 1), &lp, Some(i + 1)));
        checks.push(StructureCheck {
            label: format!("L[chi_d^(3)] annihilates chi_d;{}", i + 1),
            pass: verify_annihilation(&l, &s)?.ok,
        });
        if i > 0 {
            checks.push(StructureCheck {
                label: format!("L[Omega_d^(3)] annihilates chi_d;{}", i + 1),
                pass: verify_annihilation(&lo, &s)?.ok,
            });
        }
    }
    checks.push(StructureCheck {
        label: "order of L[chi_d^(3)] equals the sum of the summand orders".into(),
        pass: total == l.order,
    });
    checks.push(StructureCheck {
        label: "L[Omega_d^(3)] has order 5 = 2 + 3".into(),
        pass: lo.order == 5,
    });
    Ok((ops, checks))
}

fn diag_chi3_factor(p: u64) -> Result<(Vec<OperatorInfo>, Vec<StructureCheck>)> {
    let l = chi3_operator(p)?;
    let s2 = SeriesModP::from_rational(&chi3d_parts_series(CHI3_LEN)[1], p)?;
    let l2 = fit_ode(&s2, 4, 20)?;
    let checks = vec![
        StructureCheck {
            label: "L_d;2 has order 2".into(),
            pass: l2.order == 2,
        },
        StructureCheck {
            label: "L_d;2 right-divides L[chi_d^(3)]".into(),
            pass: divides(&l, &l2)?,
        },
        StructureCheck {
            label: "L[chi_d^(3)] annihilates chi_d;2".into(),
            pass: verify_annihilation(&l, &s2)?.ok,
        },
        StructureCheck {
            label: "perturbed L_d;2 does not divide L[chi_d^(3)]".into(),
            pass: !divides(&l, &perturbed(&l2))?,
        },
    ];
    Ok((
        vec![info("chi_d^(3)", &l, None), info("chi_d;2", &l2, Some(2))],
        checks,
    ))
}

pub fn structure_check_mod(target: StructureTarget, p: u64) -> Result<StructureReport> {
    let (operators, checks) = match target {
        StructureTarget::RussianDoll => russian_doll(p)?,
        StructureTarget::DirectSum => direct_sum(p)?,
        StructureTarget::DiagChi3Factor => diag_chi3_factor(p)?,
    };
    Ok(StructureReport {
        target,
        p,
        pass: checks.iter().all(|c| c.pass),
        operators,
        checks,
    })
}

/// Structure check over the default prime.
pub fn structure_check(target: StructureTarget) -> Result<StructureReport> {
    structure_check_mod(target, super::field::DEFAULT_PRIME)
}
