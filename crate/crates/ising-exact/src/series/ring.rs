use rug::ops::NegAssign;
use rug::Rational;
use std::fmt::Debug;

/// Coefficient ring for truncated power series.
///
/// Only the operations the series code needs are required; `inv` may fail for
/// non-units (for polynomial coefficients only nonzero constants are units).
pub trait Coeff: Clone + Debug + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: &Rational) -> Self;
    fn add_assign(&mut self, other: &Self);
    fn sub_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
    /// self += a * b
    fn mul_add_assign(&mut self, a: &Self, b: &Self);
    fn scale(&mut self, r: &Rational);
    fn neg(&mut self);
    fn inv(&self) -> Option<Self>;
    /// The value as a plain rational when the coefficient is a constant.
    fn as_constant(&self) -> Option<Rational>;
}

impl Coeff for Rational {
    fn zero() -> Self {
        Rational::new()
    }
    fn one() -> Self {
        Rational::from(1)
    }
    fn is_zero(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Equal
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul(&self, other: &Self) -> Self {
        Rational::from(self * other)
    }
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        *self += Rational::from(a * b);
    }
    fn scale(&mut self, r: &Rational) {
        *self *= r;
    }
    fn neg(&mut self) {
        self.neg_assign();
    }
    fn inv(&self) -> Option<Self> {
        if Coeff::is_zero(self) {
            None
        } else {
            Some(Rational::from(self.recip_ref()))
        }
    }
    fn as_constant(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

/// Polynomial in μ = λ² with rational coefficients, `c[k]` multiplying μ^k.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct LambdaPoly {
    c: Vec<Rational>,
}

impl LambdaPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.cmp0().is_eq()) {
            c.pop();
        }
        LambdaPoly { c }
    }

    /// c · μ^k
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::new(); k + 1];
        v[k] = c;
        LambdaPoly::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Value at a rational μ.
    pub fn eval(&self, mu: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.c.iter().rev() {
            acc *= mu;
            acc += c;
        }
        acc
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.cmp0().is_eq()) {
            self.c.pop();
        }
    }
}

impl Coeff for LambdaPoly {
    fn zero() -> Self {
        LambdaPoly { c: Vec::new() }
    }
    fn one() -> Self {
        LambdaPoly {
            c: vec![Rational::from(1)],
        }
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn from_rational(r: &Rational) -> Self {
        LambdaPoly::new(vec![r.clone()])
    }
    fn add_assign(&mut self, other: &Self) {
        if other.c.len() > self.c.len() {
            self.c.resize(other.c.len(), Rational::new());
        }
        for (a, b) in self.c.iter_mut().zip(&other.c) {
            *a += b;
        }
        self.trim();
    }
    fn sub_assign(&mut self, other: &Self) {
        if other.c.len() > self.c.len() {
            self.c.resize(other.c.len(), Rational::new());
        }
        for (a, b) in self.c.iter_mut().zip(&other.c) {
            *a -= b;
        }
        self.trim();
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = LambdaPoly::zero();
        out.mul_add_assign(self, other);
        out
    }
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        if a.c.is_empty() || b.c.is_empty() {
            return;
        }
        let n = a.c.len() + b.c.len() - 1;
        if self.c.len() < n {
            self.c.resize(n, Rational::new());
        }
        for (i, x) in a.c.iter().enumerate() {
            if x.cmp0().is_eq() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                self.c[i + j] += Rational::from(x * y);
            }
        }
        self.trim();
    }
    fn scale(&mut self, r: &Rational) {
        for x in &mut self.c {
            *x *= r;
        }
        self.trim();
    }
    fn neg(&mut self) {
        for x in &mut self.c {
            x.neg_assign();
        }
    }
    fn inv(&self) -> Option<Self> {
        match self.c.len() {
            1 => Some(LambdaPoly::new(vec![Rational::from(self.c[0].recip_ref())])),
            _ => None,
        }
    }
    fn as_constant(&self) -> Option<Rational> {
        match self.c.len() {
            0 => Some(Rational::new()),
            1 => Some(self.c[0].clone()),
            _ => None,
        }
    }
}
