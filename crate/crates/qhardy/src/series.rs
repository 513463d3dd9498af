//! Truncated power series with quaternion coefficients and the ⋆-algebra.
//!
//! A [`QSeries`] stores the coefficients of `f(q) = Σ q^n a_n` (coefficient
//! on the right). These are the computational stand-ins for slice regular
//! functions on the unit ball: the ⋆-product is coefficient convolution
//! with the factor order preserved, the conjugate flips each coefficient,
//! the symmetrization `f ⋆ f^c` has real coefficients, and the ⋆-inverse is
//! `(f^s)^{-1} ⋆ f^c` wherever the constant term does not vanish.
//!
//! No operation truncates silently: results carry their exact structural
//! degree and callers shorten them explicitly with [`QSeries::truncated`].

use std::ops::{Add, Sub};

use num_complex::Complex64;
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::par;
use crate::quat::{Quaternion, UnitImaginary};

/// Tolerance below which a constant coefficient counts as zero for inversion.
pub const ORIGIN_TOL: f64 = 1e-12;

/// Truncated power series `Σ_{n=0}^{N} q^n a_n` with `a_n` quaternions.
#[derive(Clone, Debug, PartialEq)]
pub struct QSeries {
    coeffs: Vec<Quaternion>,
}

impl QSeries {
    /// Wraps a coefficient vector; the empty vector becomes the zero constant.
    pub fn new(coeffs: Vec<Quaternion>) -> Self {
        if coeffs.is_empty() {
            return Self { coeffs: vec![Quaternion::ZERO] };
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::constant(Quaternion::ZERO)
    }

    pub fn one() -> Self {
        Self::constant(Quaternion::ONE)
    }

    pub fn constant(c: Quaternion) -> Self {
        Self { coeffs: vec![c] }
    }

    /// The monomial `q^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![Quaternion::ZERO; n + 1];
        coeffs[n] = Quaternion::ONE;
        Self { coeffs }
    }

    pub fn from_reals(values: &[f64]) -> Self {
        Self::new(values.iter().map(|&w| Quaternion::real(w)).collect())
    }

    /// Extension of a holomorphic series from the disk of `axis` to the ball.
    ///
    /// The complex coefficient `u + v·i` of the input becomes the quaternion
    /// `u + v·axis`; restricting the result back to that disk reproduces the
    /// input exactly.
    pub fn from_complex_on_slice(coeffs: &[Complex64], axis: UnitImaginary) -> Self {
        let j = axis.as_quaternion();
        Self::new(
            coeffs
                .iter()
                .map(|c| Quaternion::real(c.re) + j * c.im)
                .collect(),
        )
    }

    /// Structural degree `N` (the coefficient vector has `N + 1` entries).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `q^n`; zero beyond the stored degree.
    pub fn coeff(&self, n: usize) -> Quaternion {
        self.coeffs.get(n).copied().unwrap_or(Quaternion::ZERO)
    }

    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm_sqr() == 0.0)
    }

    /// Explicit truncation (or zero-padding) to the given degree.
    pub fn truncated(&self, degree: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(degree + 1, Quaternion::ZERO);
        coeffs.truncate(degree + 1);
        Self { coeffs }
    }

    /// ⋆-multiplication by `q^k` (coefficient shift).
    pub fn shifted(&self, k: usize) -> Self {
        let mut coeffs = vec![Quaternion::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// Right scalar multiple `f · c` (each coefficient becomes `a_n c`).
    pub fn scaled_right(&self, c: Quaternion) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn scaled(&self, t: f64) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * t).collect())
    }

    /// ⋆-product: coefficient `n` of the result is `Σ_k a_k b_{n-k}` with
    /// the left factor's coefficients first. Result degree is `deg f + deg g`.
    pub fn star(&self, rhs: &QSeries) -> QSeries {
        #[cfg(feature = "parallel")]
        {
            if self.coeffs.len() * rhs.coeffs.len() >= 1 << 14 {
                return self.star_par(rhs);
            }
        }
        self.star_seq(rhs)
    }

    /// Sequential reference path for [`QSeries::star`]; bitwise identical.
    pub fn star_seq(&self, rhs: &QSeries) -> QSeries {
        let out_len = self.coeffs.len() + rhs.coeffs.len() - 1;
        let coeffs = (0..out_len).map(|n| self.star_coeff(rhs, n)).collect();
        QSeries { coeffs }
    }

    #[cfg(feature = "parallel")]
    fn star_par(&self, rhs: &QSeries) -> QSeries {
        let out_len = self.coeffs.len() + rhs.coeffs.len() - 1;
        let coeffs = par::map_indexed(out_len, |n| self.star_coeff(rhs, n));
        QSeries { coeffs }
    }

    fn star_coeff(&self, rhs: &QSeries, n: usize) -> Quaternion {
        let lo = (n + 1).saturating_sub(rhs.coeffs.len());
        let hi = n.min(self.coeffs.len() - 1);
        let mut acc = Quaternion::ZERO;
        for k in lo..=hi {
            acc += self.coeffs[k] * rhs.coeffs[n - k];
        }
        acc
    }

    /// Conjugate series `f^c`: each coefficient is conjugated in place.
    pub fn conjugate(&self) -> QSeries {
        Self::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    /// Symmetrization `f^s = f ⋆ f^c`.
    ///
    /// The result has real coefficients; the (pure roundoff) imaginary
    /// residue is dropped.
    pub fn symmetrize(&self) -> QSeries {
        Self::from_reals(&self.symmetrize_real())
    }

    pub(crate) fn symmetrize_real(&self) -> Vec<f64> {
        let prod = self.star(&self.conjugate());
        debug_assert!(
            prod.coeffs
                .iter()
                .map(|c| c.x.abs().max(c.y.abs()).max(c.z.abs()))
                .fold(0.0, f64::max)
                <= 1e-12 * (1.0 + prod.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max))
        );
        prod.coeffs.iter().map(|c| c.w).collect()
    }

    /// ⋆-inverse `(f^s)^{-1} ⋆ f^c`, truncated to `out_degree`.
    ///
    /// Computed by long division of `1` by the real series `f^s` followed by
    /// a ⋆-product with `f^c`, so `f ⋆ result = 1` up to terms of order
    /// greater than `out_degree`.
    pub fn star_inverse(&self, out_degree: usize) -> Result<QSeries> {
        if self.coeff(0).norm() < ORIGIN_TOL {
            return Err(Error::ZeroAtOrigin { tol: ORIGIN_TOL });
        }
        let sym = self.symmetrize_real();
        // reciprocal of the real series by forward substitution
        let mut recip = vec![0.0; out_degree + 1];
        recip[0] = 1.0 / sym[0];
        for n in 1..=out_degree {
            let mut acc = 0.0;
            for k in 1..=n.min(sym.len() - 1) {
                acc += sym[k] * recip[n - k];
            }
            recip[n] = -acc / sym[0];
        }
        let conj = self.conjugate();
        let mut coeffs = vec![Quaternion::ZERO; out_degree + 1];
        for (n, c) in coeffs.iter_mut().enumerate() {
            let mut acc = Quaternion::ZERO;
            for k in (n + 1).saturating_sub(conj.coeffs.len())..=n {
                acc += conj.coeffs[n - k] * recip[k];
            }
            *c = acc;
        }
        Ok(QSeries { coeffs })
    }

    /// Evaluation `Σ q^n a_n` by Horner recursion with the powers of `q`
    /// applied on the left.
    pub fn eval(&self, q: Quaternion) -> Quaternion {
        let mut acc = *self.coeffs.last().expect("coeffs nonempty");
        for &a in self.coeffs.iter().rev().skip(1) {
            acc = a + q * acc;
        }
        acc
    }

    /// The similarity `f(q)^{-1} q f(q)`; stays on the sphere of `q`.
    pub fn t_map(&self, q: Quaternion) -> Result<Quaternion> {
        let v = self.eval(q);
        if v.norm() < 1e-12 {
            return Err(Error::ZeroDenominator);
        }
        Ok(v.inverse().expect("nonzero by check") * q * v)
    }

    /// Evaluation at `x + yI` through values on the slice of `J`:
    /// `(1 - IJ)/2 · f(x + yJ) + (1 + IJ)/2 · f(x - yJ)`.
    ///
    /// For slice regular `f` this agrees with direct evaluation at `x + yI`.
    pub fn eval_via_representation(
        &self,
        x: f64,
        y: f64,
        i: UnitImaginary,
        j: UnitImaginary,
    ) -> Quaternion {
        let jq = j.as_quaternion();
        let plus = self.eval(Quaternion::real(x) + jq * y);
        let minus = self.eval(Quaternion::real(x) - jq * y);
        let ij = i.as_quaternion() * jq;
        ((Quaternion::ONE - ij) * 0.5) * plus + ((Quaternion::ONE + ij) * 0.5) * minus
    }

    /// Boundary moments: coefficients of `f^c ⋆ f~` on the circle, where
    /// `f~(q) = f(conj q)`.
    ///
    /// `c_k = Σ_{n ≥ max(0,k)} conj(a_n) a_{n-k}` for `0 ≤ k ≤ max_lag`, and
    /// `c_{-k} = conj(c_k)` exactly. `c_k = <q^k ⋆ f, f>` for `k ≥ 0`, which
    /// is what the moment test for inner functions inspects.
    pub fn moment_coeffs(&self, max_lag: usize) -> LaurentCoeffs {
        let deg = self.degree();
        let mut coeffs = vec![Quaternion::ZERO; 2 * max_lag + 1];
        for k in 0..=max_lag {
            let mut acc = Quaternion::ZERO;
            for n in k..=deg {
                acc += self.coeffs[n].conj() * self.coeffs[n - k];
            }
            coeffs[max_lag + k] = acc;
            coeffs[max_lag - k] = acc.conj();
        }
        LaurentCoeffs { lo: -(max_lag as isize), coeffs }
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        QSeries::new((0..len).map(|n| self.coeff(n) + rhs.coeff(n)).collect())
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        QSeries::new((0..len).map(|n| self.coeff(n) - rhs.coeff(n)).collect())
    }
}

// JSON encoding: {"degree": N, "coeffs": [[w,x,y,z], ...]} with N+1 entries.
impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QSeries", 2)?;
        st.serialize_field("degree", &self.degree())?;
        st.serialize_field("coeffs", &self.coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            degree: usize,
            coeffs: Vec<Quaternion>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.coeffs.len() != raw.degree + 1 {
            return Err(D::Error::custom(format!(
                "series of degree {} must carry {} coefficients, got {}",
                raw.degree,
                raw.degree + 1,
                raw.coeffs.len()
            )));
        }
        if raw.coeffs.iter().any(|c| !c.is_finite()) {
            return Err(D::Error::custom("series coefficients must be finite"));
        }
        Ok(QSeries::new(raw.coeffs))
    }
}

/// Two-sided coefficient window `c_lo .. c_hi` for boundary slice-L² data.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentCoeffs {
    lo: isize,
    coeffs: Vec<Quaternion>,
}

impl LaurentCoeffs {
    /// `lo ≤ 0 ≤ lo + coeffs.len() - 1` is required.
    pub fn new(lo: isize, coeffs: Vec<Quaternion>) -> Self {
        assert!(lo <= 0 && lo + coeffs.len() as isize - 1 >= 0);
        Self { lo, coeffs }
    }

    pub fn lo(&self) -> isize {
        self.lo
    }

    pub fn hi(&self) -> isize {
        self.lo + self.coeffs.len() as isize - 1
    }

    /// Coefficient of `q^k`; zero outside the window.
    pub fn get(&self, k: isize) -> Quaternion {
        if k < self.lo || k > self.hi() {
            return Quaternion::ZERO;
        }
        self.coeffs[(k - self.lo) as usize]
    }
}
