//! Truncated power series with complex coefficients.
//!
//! A [`TruncatedSeries`] of order `N` stores `c_0 ..= c_N`. Everything is
//! computed exactly up to `z^N` and silently truncated beyond it. Binary
//! operations on series of different orders treat the shorter one as a
//! polynomial padded with zeros, so the result has the larger order.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Default truncation order: enough for a₂ … a₅ plus guard terms.
pub const DEFAULT_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![ZERO; order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(ONE, order)
    }

    pub fn constant(value: Complex64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = value;
        s
    }

    /// The identity function `z`.
    pub fn identity(order: usize) -> Self {
        Self::monomial(ONE, 1, order)
    }

    /// `value · z^power`, truncated to `order`.
    pub fn monomial(value: Complex64, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = value;
        }
        s
    }

    /// Normalized series `z + a_2 z^2 + …`; `tail` holds a₂, a₃, ….
    pub fn normalized(tail: &[Complex64]) -> Self {
        let mut coeffs = Vec::with_capacity(tail.len() + 2);
        coeffs.push(ZERO);
        coeffs.push(ONE);
        coeffs.extend_from_slice(tail);
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of `z^k`; zero beyond the order.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn set_coeff(&mut self, k: usize, value: Complex64) {
        if k <= self.order() {
            self.coeffs[k] = value;
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.order() >= 1 && self.coeffs[0] == ZERO && self.coeffs[1] == ONE
    }

    pub fn is_unit(&self) -> bool {
        self.coeffs[0] == ONE
    }

    /// Re-truncate (or zero-pad) to a new order.
    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, ZERO);
        TruncatedSeries { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |x, y| x - y)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }

    /// Cauchy product truncated at the larger order.
    pub fn cauchy_mul(&self, other: &Self) -> Self {
        let order = self.order().max(other.order());
        let mut out = vec![ZERO; order + 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == ZERO {
                continue;
            }
            for (j, &y) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                out[i + j] += x * y;
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// Multiplicative inverse to the same order.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0 == ZERO {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = c0.inv();
        let n = self.coeffs.len();
        let mut out = vec![ZERO; n];
        out[0] = inv0;
        for k in 1..n {
            let mut acc = ZERO;
            for i in 1..=k {
                acc += self.coeffs[i] * out[k - i];
            }
            out[k] = -acc * inv0;
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// `self / other`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let order = self.order().max(other.order());
        Ok(self.truncate(order).cauchy_mul(&other.truncate(order).reciprocal()?))
    }

    /// Hadamard (coefficientwise) product.
    pub fn hadamard(&self, other: &Self) -> Self {
        self.zip_with(other, |x, y| x * y)
    }

    /// Principal square root of a unit series, by solving `r·r = s` term by term.
    pub fn principal_sqrt(&self) -> Result<Self> {
        self.require_unit()?;
        let n = self.coeffs.len();
        let mut r = vec![ZERO; n];
        r[0] = ONE;
        for k in 1..n {
            let mut acc = ZERO;
            for i in 1..k {
                acc += r[i] * r[k - i];
            }
            r[k] = (self.coeffs[k] - acc) * 0.5;
        }
        Ok(TruncatedSeries { coeffs: r })
    }

    /// Principal power `s^alpha` of a unit series.
    ///
    /// Uses the recurrence from `s·r' = alpha·s'·r`:
    /// `k r_k = Σ_{i=1..k} (alpha·i − (k − i)) s_i r_{k−i}`.
    pub fn unit_power(&self, alpha: f64) -> Result<Self> {
        self.require_unit()?;
        let n = self.coeffs.len();
        let mut r = vec![ZERO; n];
        r[0] = ONE;
        for k in 1..n {
            let mut acc = ZERO;
            for i in 1..=k {
                let weight = alpha * i as f64 - (k - i) as f64;
                acc += self.coeffs[i] * r[k - i] * weight;
            }
            r[k] = acc / k as f64;
        }
        Ok(TruncatedSeries { coeffs: r })
    }

    /// `self(inner(z))`, truncated at the larger order.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.coeffs[0] != ZERO {
            return Err(Error::InnerConstantNonzero);
        }
        let order = self.order().max(inner.order());
        let inner = inner.truncate(order);
        // Horner in the series ring
        let mut acc = Self::zero(order);
        for &c in self.coeffs.iter().rev() {
            acc = acc.cauchy_mul(&inner);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Term-by-term derivative; the order drops by one (never below zero).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = self.coeffs[1..].iter().enumerate().map(|(k, &c)| c * (k + 1) as f64).collect();
        TruncatedSeries { coeffs }
    }

    /// Multiply by `z`; the order grows by one.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ZERO);
        coeffs.extend_from_slice(&self.coeffs);
        TruncatedSeries { coeffs }
    }

    /// Divide by `z`, dropping `c_0`; the order shrinks by one.
    pub fn shift_down(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        TruncatedSeries { coeffs: self.coeffs[1..].to_vec() }
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// Largest coefficient deviation from `other` over the common range.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).map(|k| (self.coeff(k) - other.coeff(k)).norm()).fold(0.0, f64::max)
    }

    fn require_unit(&self) -> Result<()> {
        if self.is_unit() {
            Ok(())
        } else {
            Err(Error::NotUnitSeries(format!("{}", self.coeffs[0])))
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        TruncatedSeries { coeffs: (0..n).map(|k| f(self.coeff(k), other.coeff(k))).collect() }
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        self.cauchy_mul(rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}
