//! h-polynomials and truncated Hilbert series.
//!
//! An [`HPolynomial`] is the numerator `h_0 + h_1 t + ... + h_s t^s` of a
//! Hilbert series written over `(1 - t)^dim`. The two functionals that drive
//! the rest of the crate are the multiplicity `e(h) = h(1)` and
//! `delta(h) = sum_i (2i - s) h_i`, which measures how far `h` is from being
//! palindromic.
//!
//! Negative coefficients are allowed: the product rule for `delta` holds over
//! all of `Z[t]` and the property tests exercise it there. Ring-shaped
//! polynomials can be checked with [`HPolynomial::validate_ring`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{self, ExactInt, Overflow};

/// Default number of trailing zero coefficients required before a Hilbert
/// series prefix is accepted as having stabilized.
pub const DEFAULT_WINDOW: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HPolyError {
    #[error("h-polynomial must have at least one nonzero coefficient")]
    EmptyOrZero,
    #[error("series has not stabilized: the last {window} coefficients of H(t)(1-t)^{dim} up to degree {degree} are not all zero")]
    NotStabilized { window: usize, dim: u32, degree: usize },
    #[error("h-vector is not ring-shaped: {0}")]
    NotRingShaped(String),
    #[error(transparent)]
    Overflow(#[from] Overflow),
}

/// Integer coefficient sequence `(h_0, ..., h_s)` with `h_s != 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<T>", into = "Vec<T>")]
#[serde(bound(serialize = "T: ExactInt + Serialize", deserialize = "T: ExactInt + Deserialize<'de>"))]
pub struct HPolynomial<T: ExactInt = i64> {
    coeffs: Vec<T>,
}

impl<T: ExactInt> TryFrom<Vec<T>> for HPolynomial<T> {
    type Error = HPolyError;

    fn try_from(v: Vec<T>) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl<T: ExactInt> From<HPolynomial<T>> for Vec<T> {
    fn from(h: HPolynomial<T>) -> Self {
        h.coeffs
    }
}

impl<T: ExactInt> HPolynomial<T> {
    /// Builds an h-polynomial, stripping trailing zeros.
    pub fn new(mut coeffs: Vec<T>) -> Result<Self, HPolyError> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(HPolyError::EmptyOrZero);
        }
        Ok(Self { coeffs })
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        Self { coeffs: vec![T::one()] }
    }

    /// `1 + t + ... + t^(len-1)`.
    pub fn ones(len: usize) -> Result<Self, HPolyError> {
        Self::new(vec![T::one(); len])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// The degree `s`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &T {
        self.coeffs.last().expect("nonempty by construction")
    }

    /// `e(h) = h(1)`.
    pub fn e_value(&self) -> Result<T, HPolyError> {
        let mut acc = T::zero();
        for c in &self.coeffs {
            acc = scalar::add(&acc, c)?;
        }
        Ok(acc)
    }

    /// `delta(h) = sum_i (2i - s) h_i`.
    pub fn delta_value(&self) -> Result<T, HPolyError> {
        let s = self.degree() as i64;
        let mut acc = T::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let w: T = scalar::from_i64(2 * i as i64 - s)?;
            acc = scalar::add(&acc, &scalar::mul(&w, c)?)?;
        }
        Ok(acc)
    }

    /// Polynomial product (coefficient convolution).
    pub fn product(&self, other: &Self) -> Result<Self, HPolyError> {
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = scalar::add(&out[i + j], &scalar::mul(a, b)?)?;
            }
        }
        // Z[t] has no zero divisors, so the leading term survives.
        Self::new(out)
    }

    /// Numerator of the Hilbert series of `cok(R -> omega_R(-a_R))`:
    /// `c_j = (h_s + ... + h_{s-j}) - (h_0 + ... + h_j)` for `0 <= j < s`.
    pub fn cokernel_numerator(&self) -> Result<Vec<T>, HPolyError> {
        let s = self.degree();
        let mut out = Vec::with_capacity(s);
        let mut head = T::zero();
        let mut tail = T::zero();
        for j in 0..s {
            head = scalar::add(&head, &self.coeffs[j])?;
            tail = scalar::add(&tail, &self.coeffs[s - j])?;
            out.push(scalar::sub(&tail, &head)?);
        }
        debug_assert_eq!(
            out.iter().try_fold(T::zero(), |acc, c| scalar::add(&acc, c)).ok(),
            self.delta_value().ok()
        );
        Ok(out)
    }

    /// `h_i = h_{s-i}` for all `i`.
    pub fn is_symmetric(&self) -> bool {
        let s = self.degree();
        (0..=s / 2).all(|i| self.coeffs[i] == self.coeffs[s - i])
    }

    /// Checks the shape of an h-vector of a graded algebra over a field:
    /// `h_0 = 1`, and nonnegative entries when the ring is Cohen-Macaulay.
    pub fn validate_ring(&self, cohen_macaulay: bool) -> Result<(), HPolyError> {
        if !self.coeffs[0].is_one() {
            return Err(HPolyError::NotRingShaped(format!("h_0 = {}", self.coeffs[0])));
        }
        if cohen_macaulay {
            if let Some((i, c)) = self.coeffs.iter().enumerate().find(|(_, c)| c.is_negative()) {
                return Err(HPolyError::NotRingShaped(format!("h_{i} = {c} < 0")));
            }
        }
        Ok(())
    }

    /// Coefficients of `h(t) / (1 - t)^dim` in degrees `0..=degree`.
    pub fn expand_series(&self, dim: u32, degree: usize) -> Result<Vec<T>, HPolyError> {
        let mut series = vec![T::zero(); degree + 1];
        for (i, c) in self.coeffs.iter().take(degree + 1).enumerate() {
            series[i] = c.clone();
        }
        // Each factor 1/(1-t) is a running prefix sum.
        for _ in 0..dim {
            for n in 1..=degree {
                series[n] = scalar::add(&series[n], &series[n - 1])?;
            }
        }
        Ok(series)
    }

    /// Converts coefficients to another exact scalar type.
    pub fn convert<U: ExactInt>(&self) -> Result<HPolynomial<U>, HPolyError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.to_i128().and_then(U::from_i128).ok_or(Overflow))
            .collect::<Result<Vec<U>, _>>()?;
        HPolynomial::new(coeffs)
    }
}

/// A degree-truncated Hilbert series `(H_0, ..., H_D)` of a graded ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesPrefix {
    coeffs: Vec<u64>,
}

impl SeriesPrefix {
    pub fn new(coeffs: Vec<u64>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Truncation degree `D`, or `None` for an empty prefix.
    pub fn truncation(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn push(&mut self, c: u64) {
        self.coeffs.push(c);
    }
}

/// Recovers the h-vector from a Hilbert series prefix: multiplies by
/// `(1 - t)^dim` and requires the last `window` coefficients to vanish.
pub fn hilbert_to_hvector<T: ExactInt>(
    series: &SeriesPrefix,
    dim: u32,
    window: usize,
) -> Result<HPolynomial<T>, HPolyError> {
    let n = series.coeffs.len();
    let not_stabilized = HPolyError::NotStabilized {
        window,
        dim,
        degree: n.saturating_sub(1),
    };
    if n <= window {
        return Err(not_stabilized);
    }
    let mut c = series
        .coeffs
        .iter()
        .map(|&v| T::from_u64(v).ok_or(Overflow))
        .collect::<Result<Vec<T>, _>>()?;
    for _ in 0..dim {
        for i in (1..n).rev() {
            c[i] = scalar::sub(&c[i], &c[i - 1])?;
        }
    }
    if !c[n - window..].iter().all(|x| x.is_zero()) {
        return Err(not_stabilized);
    }
    HPolynomial::new(c)
}
