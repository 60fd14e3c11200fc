//! Truncated power series with exact coefficients.
//!
//! A [`Series`] stands for `v^offset · Σ_{k<len} c_k v^k + O(v^(offset+len))`
//! in one of the expansion variables `t`, `x = t^(1/2)` or the nome `q`.

mod json;
mod ring;

pub use json::{series_from_json, series_to_json, SeriesDoc, SCHEMA};
pub use ring::{Coeff, LambdaPoly};

use crate::error::{Error, Result};
use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variable {
    T,
    X,
    Q,
}

impl Variable {
    pub fn name(self) -> &'static str {
        match self {
            Variable::T => "t",
            Variable::X => "x",
            Variable::Q => "q",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series<C: Coeff = Rational> {
    pub variable: Variable,
    pub offset: Rational,
    pub coeffs: Vec<C>,
}

pub type RationalSeries = Series<Rational>;

impl<C: Coeff> Series<C> {
    pub fn new(variable: Variable, offset: Rational, coeffs: Vec<C>) -> Self {
        Series {
            variable,
            offset,
            coeffs,
        }
    }

    /// Plain power series (offset 0).
    pub fn from_coeffs(variable: Variable, coeffs: Vec<C>) -> Self {
        Series::new(variable, Rational::new(), coeffs)
    }

    pub fn zero(variable: Variable, len: usize) -> Self {
        Series::from_coeffs(variable, vec![C::zero(); len])
    }

    pub fn one(variable: Variable, len: usize) -> Self {
        let mut s = Series::zero(variable, len);
        if len > 0 {
            s.coeffs[0] = C::one();
        }
        s
    }

    /// Number of known coefficients; the error term is O(v^(offset + len)).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exclusive truncation exponent offset + len.
    pub fn order(&self) -> Rational {
        Rational::from(&self.offset + self.coeffs.len() as u64)
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn truncate(mut self, len: usize) -> Self {
        self.coeffs.truncate(len);
        self
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.variable != other.variable {
            return Err(Error::Parameter(format!(
                "series in {} and {} cannot be combined",
                self.variable.name(),
                other.variable.name()
            )));
        }
        Ok(())
    }

    fn check_same_offset(&self, other: &Self) -> Result<()> {
        self.check_compatible(other)?;
        if self.offset != other.offset {
            return Err(Error::Parameter(format!(
                "offsets {} and {} differ",
                self.offset, other.offset
            )));
        }
        Ok(())
    }

    fn require_plain(&self, what: &str) -> Result<()> {
        if self.offset.cmp0().is_ne() {
            return Err(Error::Parameter(format!(
                "{what} needs offset 0, got {}",
                self.offset
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_offset(other)?;
        let n = self.len().min(other.len());
        let mut c = self.coeffs[..n].to_vec();
        for (a, b) in c.iter_mut().zip(&other.coeffs) {
            a.add_assign(b);
        }
        Ok(Series::new(self.variable, self.offset.clone(), c))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_offset(other)?;
        let n = self.len().min(other.len());
        let mut c = self.coeffs[..n].to_vec();
        for (a, b) in c.iter_mut().zip(&other.coeffs) {
            a.sub_assign(b);
        }
        Ok(Series::new(self.variable, self.offset.clone(), c))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.len().min(other.len());
        Ok(Series::new(
            self.variable,
            Rational::from(&self.offset + &other.offset),
            mul_trunc(&self.coeffs, &other.coeffs, n),
        ))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut s = self.clone();
        for c in &mut s.coeffs {
            c.scale(r);
        }
        s
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        for c in &mut s.coeffs {
            c.neg();
        }
        s
    }

    /// Multiplies every coefficient by a ring element.
    pub fn scale_by(&self, c: &C) -> Self {
        let mut s = self.clone();
        for x in &mut s.coeffs {
            *x = x.mul(c);
        }
        s
    }

    /// Multiplication by v^k, k ≥ 0 integer; the known range grows accordingly.
    pub fn shift(&self, k: usize) -> Self {
        let mut c = vec![C::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Series::new(self.variable, self.offset.clone(), c)
    }

    /// Moves an integer power between the offset and the coefficient list.
    pub fn with_offset(&self, offset: &Rational) -> Result<Self> {
        let d = Rational::from(&self.offset - offset);
        if !d.is_integer() {
            return Err(Error::Parameter(format!(
                "offset {} cannot be re-expressed at {}",
                self.offset, offset
            )));
        }
        let d = d.numer().to_i64().unwrap_or(i64::MAX);
        if d >= 0 {
            let mut s = self.shift(d as usize);
            s.offset = offset.clone();
            Ok(s)
        } else {
            let drop = (-d) as usize;
            if self.coeffs.iter().take(drop).any(|c| !c.is_zero()) {
                return Err(Error::Parameter(format!(
                    "series has terms below the requested offset {offset}"
                )));
            }
            Ok(Series::new(
                self.variable,
                offset.clone(),
                self.coeffs.iter().skip(drop).cloned().collect(),
            ))
        }
    }

    /// d/dv of a series with offset 0.
    pub fn derivative(&self) -> Result<Self> {
        self.require_plain("derivative")?;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, x)| {
                let mut x = x.clone();
                x.scale(&Rational::from(k as u64));
                x
            })
            .collect();
        Ok(Series::from_coeffs(self.variable, c))
    }

    /// Euler operator v·d/dv; valid for any offset.
    pub fn euler(&self) -> Self {
        let mut s = self.clone();
        for (k, x) in s.coeffs.iter_mut().enumerate() {
            x.scale(&Rational::from(&self.offset + k as u64));
        }
        s
    }

    /// Multiplicative inverse; the constant coefficient must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        self.require_plain("inverse")?;
        let n = self.len();
        if n == 0 {
            return Ok(self.clone());
        }
        let inv0 = self.coeffs[0]
            .inv()
            .ok_or_else(|| Error::Domain("constant coefficient is not invertible".into()))?;
        let mut out: Vec<C> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut acc = C::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc.mul_add_assign(&self.coeffs[j], &out[k - j]);
                }
            }
            let mut v = acc.mul(&inv0);
            v.neg();
            out.push(v);
        }
        Ok(Series::from_coeffs(self.variable, out))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let inv = other.inverse()?;
        self.mul(&inv)
    }

    /// f'/f for a plain series with unit constant term.
    pub fn log_derivative(&self) -> Result<Self> {
        let d = self.derivative()?;
        let n = d.len();
        d.mul(&self.inverse()?.truncate(n))
    }

    /// log f for a plain series with constant coefficient 1.
    pub fn log(&self) -> Result<Self> {
        self.require_plain("log")?;
        if self.is_empty() {
            return Ok(self.clone());
        }
        if self.coeffs[0] != C::one() {
            return Err(Error::Domain("log needs constant coefficient 1".into()));
        }
        let ld = self.log_derivative()?;
        let mut c = vec![C::zero()];
        for (k, x) in ld.coeffs.iter().enumerate() {
            let mut x = x.clone();
            x.scale(&Rational::from((1, k as u64 + 1)));
            c.push(x);
        }
        c.truncate(self.len());
        Ok(Series::from_coeffs(self.variable, c))
    }

    /// exp f for a plain series with zero constant coefficient.
    pub fn exp(&self) -> Result<Self> {
        self.require_plain("exp")?;
        let n = self.len();
        if n == 0 {
            return Ok(self.clone());
        }
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain("exp needs zero constant coefficient".into()));
        }
        // g = exp f satisfies k g_k = Σ_{j=1}^k j f_j g_{k-j}.
        let mut g: Vec<C> = vec![C::one()];
        for k in 1..n {
            let mut acc = C::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                let mut fj = self.coeffs[j].clone();
                fj.scale(&Rational::from(j as u64));
                acc.mul_add_assign(&fj, &g[k - j]);
            }
            acc.scale(&Rational::from((1, k as u64)));
            g.push(acc);
        }
        Ok(Series::from_coeffs(self.variable, g))
    }

    /// f^α for a plain series with constant coefficient 1.
    pub fn pow(&self, alpha: &Rational) -> Result<Self> {
        self.require_plain("pow")?;
        let n = self.len();
        if n == 0 {
            return Ok(self.clone());
        }
        if self.coeffs[0] != C::one() {
            return Err(Error::Domain("pow needs constant coefficient 1".into()));
        }
        // Miller recurrence: k g_k = Σ_{j=1}^k ((α+1) j − k) f_j g_{k−j}.
        let ap1 = Rational::from(alpha + 1u32);
        let mut g: Vec<C> = vec![C::one()];
        for k in 1..n {
            let mut acc = C::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                let w = Rational::from(&ap1 * j as u64) - k as u64;
                if w.cmp0().is_eq() {
                    continue;
                }
                let mut fj = self.coeffs[j].clone();
                fj.scale(&w);
                acc.mul_add_assign(&fj, &g[k - j]);
            }
            acc.scale(&Rational::from((1, k as u64)));
            g.push(acc);
        }
        Ok(Series::from_coeffs(self.variable, g))
    }

    /// Substitutes v → v^m in a plain series (used to pass from t to x = t^(1/2)).
    pub fn inflate(&self, m: usize, variable: Variable) -> Self {
        let mut c = vec![C::zero(); self.len() * m];
        for (k, x) in self.coeffs.iter().enumerate() {
            c[k * m] = x.clone();
        }
        Series::new(variable, Rational::from(&self.offset * m as u64), c)
    }
}

impl Series<Rational> {
    /// (1 + a v)^α to `len` terms.
    pub fn binomial(variable: Variable, a: &Rational, alpha: &Rational, len: usize) -> Self {
        let mut c = Vec::with_capacity(len);
        let mut term = Rational::from(1);
        for k in 0..len {
            c.push(term.clone());
            term *= Rational::from(alpha - k as u64);
            term *= a;
            term /= k as u64 + 1;
        }
        Series::from_coeffs(variable, c)
    }

    /// Hypergeometric series Σ (a)_k (b)_k / ((c)_k k!) v^k to `len` terms.
    pub fn hyp2f1(
        variable: Variable,
        a: &Rational,
        b: &Rational,
        c: &Rational,
        len: usize,
    ) -> Self {
        let mut out = Vec::with_capacity(len);
        let mut term = Rational::from(1);
        for k in 0..len {
            out.push(term.clone());
            term *= Rational::from(a + k as u64) * Rational::from(b + k as u64);
            term /= Rational::from(c + k as u64) * Rational::from(k as u64 + 1);
        }
        Series::from_coeffs(variable, out)
    }

    /// Partial sum at a numerical value of the variable, including v^offset.
    pub fn eval(&self, v: &Float) -> Float {
        let prec = v.prec();
        let mut acc = Float::with_val(prec, 0);
        for c in self.coeffs.iter().rev() {
            acc *= v;
            acc += Float::with_val(prec, c);
        }
        if self.offset.cmp0().is_ne() {
            let p = Float::with_val(prec, &self.offset);
            let vp = Float::with_val(prec, rug::ops::Pow::pow(v, &p));
            acc *= vp;
        }
        acc
    }

    /// Lifts rational coefficients into another coefficient ring.
    pub fn lift<C: Coeff>(&self) -> Series<C> {
        Series::new(
            self.variable,
            self.offset.clone(),
            self.coeffs.iter().map(C::from_rational).collect(),
        )
    }
}

impl Series<LambdaPoly> {
    /// Specializes μ = λ² to a rational value.
    pub fn at_mu(&self, mu: &Rational) -> RationalSeries {
        Series::new(
            self.variable,
            self.offset.clone(),
            self.coeffs.iter().map(|c| c.eval(mu)).collect(),
        )
    }
}

/// Truncated product of coefficient lists, skipping zero entries.
pub fn mul_trunc<C: Coeff>(a: &[C], b: &[C], n: usize) -> Vec<C> {
    let mut c = vec![C::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            if !y.is_zero() {
                c[i + j].mul_add_assign(x, y);
            }
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn geometric_inverse() {
        let s = Series::from_coeffs(Variable::T, vec![q(1, 1), q(-1, 1), q(0, 1), q(0, 1)]);
        let inv = s.inverse().unwrap();
        assert!(inv.coeffs.iter().all(|c| *c == 1));
    }

    #[test]
    fn log_exp_inverse() {
        let s = Series::binomial(Variable::T, &q(-1, 1), &q(1, 4), 12);
        let back = s.log().unwrap().exp().unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn pow_matches_binomial() {
        let one_minus_t = Series::from_coeffs(
            Variable::T,
            vec![q(1, 1), q(-1, 1), q(0, 1), q(0, 1), q(0, 1)],
        );
        let p = one_minus_t.pow(&q(1, 4)).unwrap();
        assert_eq!(p, Series::binomial(Variable::T, &q(-1, 1), &q(1, 4), 5));
    }

    #[test]
    fn offset_mismatch_is_rejected() {
        let a = Series::new(Variable::T, q(1, 2), vec![q(1, 1)]);
        let b = Series::from_coeffs(Variable::T, vec![q(1, 1)]);
        assert!(a.add(&b).is_err());
        assert!(a.mul(&b).is_ok());
    }

    #[test]
    fn lambda_coefficients() {
        let a = LambdaPoly::new(vec![q(1, 1), q(2, 1)]);
        let b = LambdaPoly::new(vec![q(-1, 1), q(1, 1)]);
        let p = a.mul(&b);
        assert_eq!(p.coeffs(), &[q(-1, 1), q(-1, 1), q(2, 1)]);
        assert_eq!(p.eval(&q(1, 1)), 0);
        assert!(p.inv().is_none());
    }
}
