//! The H² inner product in both computable forms, norms, and boundary grids.
//!
//! For series `f = Σ q^n a_n` and `g = Σ q^n b_n` the inner product is
//! `<f, g> = Σ conj(b_n) a_n` (right quaternionic Hilbert space: right-linear
//! in the first slot). The same number is the boundary integral of
//! `conj(g) f` against the normalized measure, and that integral can be
//! computed on any single slice: uniform-angle quadrature with `M ≥
//! deg f + deg g + 1` nodes is exact because the integrand is a
//! trigonometric polynomial.
//!
//! Grid scans are embarrassingly parallel; sums are accumulated pairwise in
//! a fixed tree, so results are independent of the evaluation schedule.

use crate::error::{Error, Result};
use crate::par;
use crate::quat::{Quaternion, UnitImaginary};
use crate::series::QSeries;

/// Coefficient form of the inner product: `Σ conj(b_n) a_n`.
pub fn inner_product_coeff(f: &QSeries, g: &QSeries) -> Quaternion {
    let len = f.coeffs().len().min(g.coeffs().len());
    let terms: Vec<Quaternion> = (0..len).map(|n| g.coeff(n).conj() * f.coeff(n)).collect();
    par::pairwise_sum_quat(&terms)
}

/// Squared H² norm `Σ |a_n|²`.
pub fn h2_norm_sqr(f: &QSeries) -> f64 {
    let terms: Vec<f64> = f.coeffs().iter().map(|c| c.norm_sqr()).collect();
    par::pairwise_sum_f64(&terms)
}

/// H² norm `sqrt(Σ |a_n|²)`.
pub fn h2_norm(f: &QSeries) -> f64 {
    h2_norm_sqr(f).sqrt()
}

fn slice_quadrature_terms(
    f: &QSeries,
    g: &QSeries,
    slice: UnitImaginary,
    nodes: usize,
    seq: bool,
) -> Vec<Quaternion> {
    let step = std::f64::consts::TAU / nodes as f64;
    let term = |m: usize| {
        let q = slice.circle_point(m as f64 * step);
        g.eval(q).conj() * f.eval(q)
    };
    if seq {
        par::map_indexed_seq(nodes, term)
    } else {
        par::map_indexed(nodes, term)
    }
}

/// Slice form of the inner product: equal-weight quadrature of
/// `(1/2π) ∫ conj(g(e^{θI})) f(e^{θI}) dθ` over `nodes` uniform angles.
///
/// Exact (up to roundoff) once `nodes ≥ deg f + deg g + 1`; smaller node
/// counts are rejected.
pub fn inner_product_slice(
    f: &QSeries,
    g: &QSeries,
    slice: UnitImaginary,
    nodes: usize,
) -> Result<Quaternion> {
    let required = f.degree() + g.degree() + 1;
    if nodes < required {
        return Err(Error::InsufficientNodes { required, got: nodes });
    }
    let terms = slice_quadrature_terms(f, g, slice, nodes, false);
    Ok(par::pairwise_sum_quat(&terms) / nodes as f64)
}

/// Sequential reference path for [`inner_product_slice`]; bitwise identical.
pub fn inner_product_slice_seq(
    f: &QSeries,
    g: &QSeries,
    slice: UnitImaginary,
    nodes: usize,
) -> Result<Quaternion> {
    let required = f.degree() + g.degree() + 1;
    if nodes < required {
        return Err(Error::InsufficientNodes { required, got: nodes });
    }
    let terms = slice_quadrature_terms(f, g, slice, nodes, true);
    Ok(par::pairwise_sum_quat(&terms) / nodes as f64)
}

/// [`inner_product_slice`] with the node count defaulted to
/// `deg f + deg g + 1` rounded up to a power of two.
pub fn inner_product_slice_auto(f: &QSeries, g: &QSeries, slice: UnitImaginary) -> Quaternion {
    let nodes = (f.degree() + g.degree() + 1).next_power_of_two();
    inner_product_slice(f, g, slice, nodes).expect("node count meets the exactness bound")
}

/// Deterministic sampling of the boundary: a Fibonacci lattice on the sphere
/// of imaginary units crossed with uniform angles.
#[derive(Clone, Debug)]
pub struct BoundaryGrid {
    slices: Vec<UnitImaginary>,
    angles: usize,
}

impl BoundaryGrid {
    /// `slice_count` lattice points on the sphere, `angles` nodes per circle.
    /// Both must be at least 1.
    pub fn fibonacci(slice_count: usize, angles: usize) -> Self {
        assert!(slice_count >= 1 && angles >= 1, "grid must have at least one node");
        let golden_angle = std::f64::consts::PI * (3.0 - 5f64.sqrt());
        let slices = (0..slice_count)
            .map(|k| {
                let z = 1.0 - (2.0 * k as f64 + 1.0) / slice_count as f64;
                let r = (1.0 - z * z).sqrt();
                let phi = golden_angle * k as f64;
                UnitImaginary::new(r * phi.cos(), r * phi.sin(), z)
                    .expect("lattice points avoid the poles")
            })
            .collect();
        Self { slices, angles }
    }

    pub fn slices(&self) -> &[UnitImaginary] {
        &self.slices
    }

    pub fn angle_count(&self) -> usize {
        self.angles
    }

    /// Equal quadrature weight per node; the weights sum to 1.
    pub fn node_weight(&self) -> f64 {
        1.0 / (self.slices.len() * self.angles) as f64
    }
}

fn slice_max_modulus(f: &QSeries, slice: UnitImaginary, angles: usize) -> f64 {
    let step = std::f64::consts::TAU / angles as f64;
    (0..angles)
        .map(|m| f.eval(slice.circle_point(m as f64 * step)).norm())
        .fold(0.0, f64::max)
}

/// Largest `|f|` over the grid: a lower bound for the H^∞ norm that
/// converges to it as the grid refines (the sup lives on the boundary by
/// the maximum modulus principle).
pub fn hinf_estimate(f: &QSeries, grid: &BoundaryGrid) -> f64 {
    let maxima = par::map_indexed(grid.slices.len(), |s| {
        slice_max_modulus(f, grid.slices[s], grid.angles)
    });
    maxima.into_iter().fold(0.0, f64::max)
}

/// Sequential reference path for [`hinf_estimate`]; bitwise identical.
pub fn hinf_estimate_seq(f: &QSeries, grid: &BoundaryGrid) -> f64 {
    let maxima = par::map_indexed_seq(grid.slices.len(), |s| {
        slice_max_modulus(f, grid.slices[s], grid.angles)
    });
    maxima.into_iter().fold(0.0, f64::max)
}
