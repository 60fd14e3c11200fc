//! Dimensionless couplings and the derived variables t, s, w, k and the
//! Toeplitz symbol parameters.

use crate::error::{Error, Result};
use crate::numerics::{check_prec, eps};
use rug::Float;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    BelowTc,
    AboveTc,
    AtTc,
}

impl Side {
    pub fn parse(s: &str) -> Result<Side> {
        match s {
            "below" | "low" | "below_tc" | "minus" => Ok(Side::BelowTc),
            "above" | "high" | "above_tc" | "plus" => Ok(Side::AboveTc),
            "critical" | "at_tc" => Ok(Side::AtTc),
            _ => Err(Error::Parameter(format!("unknown side {s:?}"))),
        }
    }
}

/// Couplings Kv = E^v/k_BT and Kh = E^h/k_BT with the side of T_c they imply.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingPoint {
    pub kv: Float,
    pub kh: Float,
    pub side: Side,
}

/// Toeplitz symbol parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolParams {
    pub alpha1: Float,
    pub alpha2: Float,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariablePack {
    pub t: Float,
    /// sinh 2K, isotropic couplings only.
    pub s: Option<Float>,
    /// w = 1/(2(s + 1/s)), isotropic couplings only.
    pub w: Option<Float>,
    /// Elliptic modulus t^(1/2).
    pub k: Float,
    pub diagonal: SymbolParams,
    pub row: SymbolParams,
}

impl CouplingPoint {
    /// Classifies the side from s_v·s_h; within 2^(32−prec) of 1 counts as critical.
    pub fn new(kv: Float, kh: Float) -> Result<Self> {
        let prec = check_prec(kv.prec().min(kh.prec()))?;
        if kv <= 0 || kh <= 0 || !kv.is_finite() || !kh.is_finite() {
            return Err(Error::Parameter(
                "couplings must be positive and finite".into(),
            ));
        }
        let p = product_sinh(&kv, &kh, prec);
        let dev = Float::with_val(prec, &p - 1u32).abs();
        let side = if dev < eps(prec, prec as i32 - 32) {
            Side::AtTc
        } else if p > 1 {
            Side::BelowTc
        } else {
            Side::AboveTc
        };
        Ok(CouplingPoint { kv, kh, side })
    }

    pub fn isotropic(k: Float) -> Result<Self> {
        CouplingPoint::new(k.clone(), k)
    }

    /// Isotropic couplings with the given t on the given side.
    pub fn isotropic_from_t(t: &Float, side: Side) -> Result<Self> {
        let prec = check_prec(t.prec())?;
        if *t <= 0 || *t > 1 {
            return Err(Error::Domain(format!("t = {} outside (0, 1]", t.to_f64())));
        }
        let quarter = Float::with_val(prec, t.sqrt_ref()).sqrt();
        let s = match side {
            Side::BelowTc => quarter.recip(),
            Side::AboveTc => quarter,
            Side::AtTc => Float::with_val(prec, 1),
        };
        let k = s.asinh() / 2u32;
        let mut cp = CouplingPoint::isotropic(k)?;
        if side == Side::AtTc || *t == 1 {
            cp.side = Side::AtTc;
        }
        Ok(cp)
    }

    pub fn prec(&self) -> u32 {
        self.kv.prec().min(self.kh.prec())
    }

    pub fn s_v(&self) -> Float {
        Float::with_val(self.prec(), &self.kv * 2u32).sinh()
    }

    pub fn s_h(&self) -> Float {
        Float::with_val(self.prec(), &self.kh * 2u32).sinh()
    }

    pub fn is_isotropic(&self) -> bool {
        self.kv == self.kh
    }

    /// t below T_c: (s_v s_h)^(-2).
    pub fn t_low(&self) -> Float {
        let p = product_sinh(&self.kv, &self.kh, self.prec());
        p.square().recip()
    }

    /// t above T_c: (s_v s_h)^2.
    pub fn t_high(&self) -> Float {
        product_sinh(&self.kv, &self.kh, self.prec()).square()
    }

    /// The t appropriate to the side; 1 at criticality.
    pub fn t(&self) -> Float {
        match self.side {
            Side::BelowTc => self.t_low(),
            Side::AboveTc => self.t_high(),
            Side::AtTc => Float::with_val(self.prec(), 1),
        }
    }

    /// w = 1/(2(s + 1/s)); isotropic couplings only.
    pub fn w(&self) -> Result<Float> {
        if !self.is_isotropic() {
            return Err(Error::Anisotropy("w is defined only for Kv = Kh".into()));
        }
        let s = self.s_v();
        let sum = Float::with_val(self.prec(), s.recip_ref()) + &s;
        Ok((sum * 2u32).recip())
    }

    pub fn diagonal_symbol(&self) -> SymbolParams {
        let prec = self.prec();
        SymbolParams {
            alpha1: Float::with_val(prec, 0),
            alpha2: product_sinh(&self.kv, &self.kh, prec).recip(),
        }
    }

    pub fn row_symbol(&self) -> SymbolParams {
        let prec = self.prec();
        let e = Float::with_val(prec, &self.kv * -2i32).exp();
        let th = Float::with_val(prec, self.kh.tanh_ref());
        SymbolParams {
            alpha1: Float::with_val(prec, &e * &th),
            alpha2: e / th,
        }
    }
}

fn product_sinh(kv: &Float, kh: &Float, prec: u32) -> Float {
    let sv = Float::with_val(prec, kv * 2u32).sinh();
    let sh = Float::with_val(prec, kh * 2u32).sinh();
    sv * sh
}

pub fn derive_variables(cp: &CouplingPoint) -> VariablePack {
    let t = cp.t();
    let (s, w) = if cp.is_isotropic() {
        (Some(cp.s_v()), cp.w().ok())
    } else {
        (None, None)
    };
    VariablePack {
        k: Float::with_val(cp.prec(), t.sqrt_ref()),
        t,
        s,
        w,
        diagonal: cp.diagonal_symbol(),
        row: cp.row_symbol(),
    }
}

/// Critical isotropic coupling Kc = asinh(1)/2.
pub fn critical_coupling(prec: u32) -> Float {
    Float::with_val(prec, 1).asinh() / 2u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn critical_point() {
        let cp = CouplingPoint::isotropic(critical_coupling(256)).unwrap();
        assert_eq!(cp.side, Side::AtTc);
        let v = derive_variables(&cp);
        assert_eq!(v.t, 1);
        let w = v.w.unwrap();
        assert!(Float::with_val(256, &w - 0.25f64).abs() < 1e-70);
    }

    #[test]
    fn anisotropic_w_is_an_error() {
        let cp = CouplingPoint::new(Float::with_val(128, 0.3), Float::with_val(128, 0.5)).unwrap();
        assert!(matches!(cp.w(), Err(Error::Anisotropy(_))));
        assert!(derive_variables(&cp).w.is_none());
    }

    #[test]
    fn sides() {
        let low = CouplingPoint::isotropic(Float::with_val(128, 0.6)).unwrap();
        let high = CouplingPoint::isotropic(Float::with_val(128, 0.3)).unwrap();
        assert_eq!(low.side, Side::BelowTc);
        assert_eq!(high.side, Side::AboveTc);
        assert!(low.t() < 1 && high.t() < 1);
    }
}
