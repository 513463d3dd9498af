//! Splitting of a series into two complex-coefficient series.
//!
//! Relative to an orthogonal frame `(I, J)` of imaginary units, every
//! quaternion decomposes uniquely as `α + βJ` with `α, β` in the plane
//! `R + RI`. Applying this to each coefficient of a series `f` gives two
//! holomorphic series `F`, `G` with `f = F + G·J` on the disk of `I`.
//! Complex coefficients are stored as `(re, im)` pairs relative to `I`,
//! never as ambient quaternions, so frames cannot be mixed accidentally.

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quat::{Quaternion, UnitImaginary};
use crate::series::QSeries;

/// Largest tolerated `|<I, J>|` for a splitting frame.
pub const FRAME_TOL: f64 = 1e-10;

/// The two complex component series of `f = F + G·J` in the frame `(I, J)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitPair {
    pub i: UnitImaginary,
    pub j: UnitImaginary,
    /// Coefficients of `F`, interpreted in the plane of `i`.
    pub f: Vec<Complex64>,
    /// Coefficients of `G`, interpreted in the plane of `i`.
    pub g: Vec<Complex64>,
}

/// Decomposes each coefficient `a_n = α_n + β_n J` with `α_n, β_n` in the
/// plane of `I`. Both output series carry the source degree (zero-padded).
pub fn split(series: &QSeries, i: UnitImaginary, j: UnitImaginary) -> Result<SplitPair> {
    let dot = i.dot(j);
    if dot.abs() > FRAME_TOL {
        return Err(Error::FrameNotOrthogonal { dot });
    }
    // {1, I, J, IJ} is an orthonormal real basis of the algebra.
    let iv = i.components();
    let jv = j.components();
    let kq = i.as_quaternion() * j.as_quaternion();
    let kv = kq.imag();
    let mut f = Vec::with_capacity(series.coeffs().len());
    let mut g = Vec::with_capacity(series.coeffs().len());
    for &a in series.coeffs() {
        let im = a.imag();
        let u = a.re();
        let v = im[0] * iv[0] + im[1] * iv[1] + im[2] * iv[2];
        let s = im[0] * jv[0] + im[1] * jv[1] + im[2] * jv[2];
        let t = im[0] * kv[0] + im[1] * kv[1] + im[2] * kv[2];
        f.push(Complex64::new(u, v));
        g.push(Complex64::new(s, t));
    }
    Ok(SplitPair { i, j, f, g })
}

/// Rebuilds the series with `a_n = α_n + β_n J`; inverse of [`split`] up to
/// roundoff.
pub fn recombine(pair: &SplitPair) -> QSeries {
    let iq = pair.i.as_quaternion();
    let jq = pair.j.as_quaternion();
    let coeffs = pair
        .f
        .iter()
        .zip(&pair.g)
        .map(|(alpha, beta)| {
            let alpha_q = Quaternion::real(alpha.re) + iq * alpha.im;
            let beta_q = Quaternion::real(beta.re) + iq * beta.im;
            alpha_q + beta_q * jq
        })
        .collect();
    QSeries::new(coeffs)
}

/// Horner evaluation of a complex-coefficient polynomial.
pub(crate) fn eval_complex_poly(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

// JSON encoding: {"I": [x,y,z], "J": [x,y,z], "F": [[re,im],...], "G": [[re,im],...]}.
impl Serialize for SplitPair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs = |v: &[Complex64]| v.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>();
        let mut st = s.serialize_struct("SplitPair", 4)?;
        st.serialize_field("I", &self.i)?;
        st.serialize_field("J", &self.j)?;
        st.serialize_field("F", &pairs(&self.f))?;
        st.serialize_field("G", &pairs(&self.g))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for SplitPair {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(rename = "I")]
            i: UnitImaginary,
            #[serde(rename = "J")]
            j: UnitImaginary,
            #[serde(rename = "F")]
            f: Vec<[f64; 2]>,
            #[serde(rename = "G")]
            g: Vec<[f64; 2]>,
        }
        let raw = Raw::deserialize(d)?;
        let unpack = |v: Vec<[f64; 2]>| v.into_iter().map(|[re, im]| Complex64::new(re, im)).collect();
        Ok(SplitPair { i: raw.i, j: raw.j, f: unpack(raw.f), g: unpack(raw.g) })
    }
}
