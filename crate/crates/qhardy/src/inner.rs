//! Inner functions: Möbius and Blaschke constructors, the three inner
//! tests (boundary moments, splitting conditions, norm equalities), and
//! classification of zero sets into isolated points and spheres.
//!
//! Rational inner functions only exist here as truncations, so every
//! verdict is tolerance-based and the worst defect is always reported
//! alongside it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hardy::{self, BoundaryGrid};
use crate::linalg;
use crate::par;
use crate::quat::{Quaternion, UnitImaginary};
use crate::series::QSeries;
use crate::splitting::{eval_complex_poly, split};

/// Cluster radius (relative) for grouping nearby roots of the symmetrization.
const ROOT_CLUSTER_EPS: f64 = 1e-6;
/// Radius below which polished candidates are considered the same zero.
const DEDUP_EPS: f64 = 1e-7;
/// Imaginary parts at most this (relative) size count as real roots.
const REAL_FOLD_EPS: f64 = 1e-8;

/// Degree-`n` truncation of the Möbius transformation
/// `τ_ω(q) = (1 - q conj(ω))^{-⋆} ⋆ (ω - q)` of the unit ball.
///
/// Sends 0 to `ω`; tail coefficients decay like `|ω|^n`.
pub fn mobius(omega: Quaternion, degree: usize) -> Result<QSeries> {
    let modulus = omega.norm();
    if modulus >= 1.0 {
        return Err(Error::NotInBall { modulus });
    }
    let denom = QSeries::new(vec![Quaternion::ONE, -omega.conj()]);
    let numer = QSeries::new(vec![omega, -Quaternion::ONE]);
    let inv = denom.star_inverse(degree).expect("constant term is 1");
    Ok(inv.star(&numer).truncated(degree))
}

/// ⋆-product of Möbius factors `τ_{ω_1} ⋆ τ_{ω_2} ⋆ …`, truncated to
/// `degree` after each factor.
///
/// Vanishes at `ω_1`; each later factor contributes one zero on the sphere
/// of its `ω_k` (⋆-multiplication shifts it within that sphere). The empty
/// list gives the constant 1.
pub fn blaschke(zeros: &[Quaternion], degree: usize) -> Result<QSeries> {
    let mut acc = QSeries::one();
    for &omega in zeros {
        acc = acc.star(&mobius(omega, degree)?).truncated(degree);
    }
    Ok(acc)
}

/// Which test produced an [`InnerReport`], with the parameters used.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum InnerMethod {
    Moment { max_lag: usize },
    Splitting { slice: UnitImaginary, nodes: usize },
    Norm { slices: usize, angles: usize },
}

/// Outcome of an inner-function test: the verdict holds exactly when
/// `max_defect ≤ tol`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InnerReport {
    pub verdict: bool,
    pub max_defect: f64,
    #[serde(flatten)]
    pub method: InnerMethod,
    pub tol: f64,
}

impl InnerReport {
    fn from_defect(max_defect: f64, tol: f64, method: InnerMethod) -> Self {
        Self { verdict: max_defect <= tol, max_defect, method, tol }
    }
}

/// Moment test: `f` is inner exactly when `<q^k ⋆ f, f>` is the Kronecker
/// delta at `k = 0`. Checks lags `0 ≤ k ≤ max_lag` (with `max_lag ≥ 1`) and
/// reports the worst deviation.
pub fn is_inner_moment(f: &QSeries, max_lag: usize, tol: f64) -> InnerReport {
    assert!(max_lag >= 1, "the moment test needs at least one nonzero lag");
    let moments = f.moment_coeffs(max_lag);
    let mut defect = (moments.get(0) - Quaternion::ONE).norm();
    for k in 1..=max_lag as isize {
        defect = defect.max(moments.get(k).norm());
    }
    InnerReport::from_defect(defect, tol, InnerMethod::Moment { max_lag })
}

/// Splitting test on the slice of `slice`: with `f = F + G·J` in the frame
/// `(slice, slice.orthogonal())`, `f` is inner exactly when on the boundary
/// circle `|F|² + |G|² = 1` and `F(z)G(conj z) = F(conj z)G(z)`.
///
/// Both conditions are checked at `nodes ≥ 2·deg f + 1` uniform angles; the
/// report carries the worst violation of either.
pub fn is_inner_splitting(
    f: &QSeries,
    slice: UnitImaginary,
    nodes: usize,
    tol: f64,
) -> Result<InnerReport> {
    let required = 2 * f.degree() + 1;
    if nodes < required {
        return Err(Error::InsufficientNodes { required, got: nodes });
    }
    let pair = split(f, slice, slice.orthogonal())?;
    let step = std::f64::consts::TAU / nodes as f64;
    let defects = par::map_indexed(nodes, |m| {
        let z = num_complex::Complex64::from_polar(1.0, m as f64 * step);
        let fz = eval_complex_poly(&pair.f, z);
        let gz = eval_complex_poly(&pair.g, z);
        let fzbar = eval_complex_poly(&pair.f, z.conj());
        let gzbar = eval_complex_poly(&pair.g, z.conj());
        let unimodular = (fz.norm_sqr() + gz.norm_sqr() - 1.0).abs();
        let cross = (fz * gzbar - fzbar * gz).norm();
        unimodular.max(cross)
    });
    let defect = defects.into_iter().fold(0.0, f64::max);
    Ok(InnerReport::from_defect(defect, tol, InnerMethod::Splitting { slice, nodes }))
}

/// Norm test: inner functions are exactly those with H² and H^∞ norms both
/// equal to 1. At finite grid resolution the boundary maximum underestimates
/// the H^∞ norm, so this check is necessary-only.
pub fn is_inner_norm(f: &QSeries, grid: &BoundaryGrid, tol: f64) -> InnerReport {
    let h2_defect = (hardy::h2_norm(f) - 1.0).abs();
    let hinf_defect = (hardy::hinf_estimate(f, grid) - 1.0).abs();
    InnerReport::from_defect(
        h2_defect.max(hinf_defect),
        tol,
        InnerMethod::Norm { slices: grid.slices().len(), angles: grid.angle_count() },
    )
}

/// Zero set of a polynomial: isolated points and spheres `x + y·S`, `y > 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroSet {
    pub isolated: Vec<Quaternion>,
    pub spheres: Vec<(f64, f64)>,
}

impl ZeroSet {
    /// Smallest modulus over all zeros (`√(x²+y²)` for spheres); infinite
    /// when there are none.
    pub fn min_modulus(&self) -> f64 {
        let iso = self.isolated.iter().map(|q| q.norm());
        let sph = self.spheres.iter().map(|&(x, y)| x.hypot(y));
        iso.chain(sph).fold(f64::INFINITY, f64::min)
    }
}

enum SphereOutcome {
    Spherical(f64, f64),
    Isolated(Quaternion),
}

/// Evaluation noise scale `Σ |a_n| r^n` of `p` at radius `r`; thresholds at
/// a candidate zero are `tol` times `1 +` this majorant, so the residual
/// check stays meaningful for zeros far outside the ball.
fn local_scale(p: &QSeries, r: f64) -> f64 {
    let mut pow = 1.0;
    let mut acc = 0.0;
    for c in p.coeffs() {
        acc += c.norm() * pow;
        pow *= r;
    }
    acc
}

fn classify_sphere(p: &QSeries, x: f64, y: f64, tol: f64) -> Result<SphereOutcome> {
    let threshold = tol * (1.0 + local_scale(p, x.hypot(y)));
    let plus = p.eval(Quaternion::new(x, y, 0.0, 0.0));
    let minus = p.eval(Quaternion::new(x, -y, 0.0, 0.0));
    // p(x + yI) = c + I d  across the whole sphere
    let c = (plus + minus) * 0.5;
    let d = Quaternion::I * (minus - plus) * 0.5;
    if c.norm() < threshold && d.norm() < threshold {
        return Ok(SphereOutcome::Spherical(x, y));
    }
    let inconsistent = Error::InconsistentSphere { x, y };
    let d_inv = match d.inverse() {
        Some(inv) if d.norm() >= threshold => inv,
        _ => return Err(inconsistent),
    };
    let unit = -(c * d_inv);
    // the solve is only valid if the result is a genuine imaginary unit
    if (unit * unit + Quaternion::ONE).norm() > tol * (1.0 + unit.norm_sqr()) {
        return Err(inconsistent);
    }
    let axis = UnitImaginary::from_imaginary_part(unit).ok_or(inconsistent.clone())?;
    let zero = Quaternion::real(x) + axis.as_quaternion() * y;
    if p.eval(zero).norm() > threshold {
        return Err(inconsistent);
    }
    Ok(SphereOutcome::Isolated(zero))
}

/// Groups nearby eigenvalues into clusters and polishes each cluster mean,
/// estimating the root multiplicity `m` on the fly: plain Newton contracts
/// the error by `(m-1)/m` at an `m`-fold root, so two probing steps reveal
/// `m` and the corrected iteration `z - m·p(z)/p'(z)` converges
/// quadratically. Plain Newton alone stalls at `O(ε^{1/m})` on multiple
/// roots and the sphere parameters would miss the residual gate.
fn cluster_and_polish(sym: &[f64], roots: Vec<num_complex::Complex64>) -> Vec<num_complex::Complex64> {
    let mut remaining: Vec<num_complex::Complex64> =
        roots.into_iter().filter(|r| r.is_finite()).collect();
    remaining.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    let mut polished = Vec::new();
    while let Some(&seed) = remaining.first() {
        let radius = ROOT_CLUSTER_EPS * (1.0 + seed.norm());
        let (cluster, rest): (Vec<_>, Vec<_>) =
            remaining.into_iter().partition(|r| (r - seed).norm() <= radius);
        remaining = rest;
        let mean = cluster.iter().sum::<num_complex::Complex64>() / cluster.len() as f64;
        polished.push(polish_root(sym, mean, cluster.len()));
    }
    polished
}

fn polish_root(
    sym: &[f64],
    start: num_complex::Complex64,
    cluster_size: usize,
) -> num_complex::Complex64 {
    let (p0, d0) = eval_real_poly_with_derivative(sym, start);
    if d0.norm() < 1e-300 {
        return start;
    }
    let s0 = p0 / d0;
    if !s0.is_finite() {
        return start;
    }
    let z1 = start - s0;
    let (p1, d1) = eval_real_poly_with_derivative(sym, z1);
    if d1.norm() < 1e-300 {
        return z1;
    }
    let s1 = p1 / d1;
    if !s1.is_finite() {
        return z1;
    }
    let mut z = z1 - s1;
    let mut multiplicity = cluster_size as f64;
    if s0.norm() > 1e-14 * (1.0 + start.norm()) {
        // cap the estimate at 16 (rho ≤ 15/16)
        let rho = (s1.norm() / s0.norm()).clamp(0.0, 0.9375);
        multiplicity = multiplicity.max((1.0 / (1.0 - rho)).round());
    }
    if multiplicity > 1.0 {
        for _ in 0..3 {
            let (p, d) = eval_real_poly_with_derivative(sym, z);
            if d.norm() < 1e-300 {
                break;
            }
            let step = p / d * multiplicity;
            if !step.is_finite() {
                break;
            }
            z -= step;
        }
    }
    z
}

fn eval_real_poly_with_derivative(
    coeffs: &[f64],
    z: num_complex::Complex64,
) -> (num_complex::Complex64, num_complex::Complex64) {
    let mut p = num_complex::Complex64::new(0.0, 0.0);
    let mut dp = num_complex::Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Classifies the zero set of a (not identically zero) polynomial.
///
/// The roots of the real-coefficient symmetrization `p^s` are found from a
/// balanced companion matrix, polished by Newton steps (multiplicity-aware,
/// see [`cluster_and_polish`]), and merged when clustered. Each root
/// `x + iy` with `y > 0` names a candidate sphere `x + y·S`; writing
/// `p(x + yI) = c + I d` with
/// `c = (p(x+yi) + p(x-yi))/2`, `d = i(p(x-yi) - p(x+yi))/2`,
/// the sphere is a spherical zero when `c = d = 0` (within `tol` scaled by
/// `1 + ‖p‖`) and otherwise carries the single isolated zero `x + y·I*`
/// with `I* = -c·d^{-1}`. Real roots are checked directly. Since every root
/// sphere of `p^s` carries a zero of `p`, a candidate that yields none
/// signals numerical failure and is reported as [`Error::InconsistentSphere`].
pub fn zero_structure(p: &QSeries, tol: f64) -> Result<ZeroSet> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sym: Vec<f64> = p.symmetrize_real();
    let roots = cluster_and_polish(&sym, linalg::real_poly_roots(&sym));

    // fold conjugate pairs onto y ≥ 0 and drop duplicates
    let mut candidates: Vec<(f64, f64)> = Vec::new();
    for root in roots {
        let pt = (root.re, root.im.abs());
        if !candidates
            .iter()
            .any(|&(x, y)| (x - pt.0).hypot(y - pt.1) <= DEDUP_EPS * (1.0 + pt.0.hypot(pt.1)))
        {
            candidates.push(pt);
        }
    }
    candidates.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let (real_candidates, sphere_candidates): (Vec<_>, Vec<_>) = candidates
        .into_iter()
        .partition(|&(x, y)| y <= REAL_FOLD_EPS * (1.0 + x.abs()));

    let outcomes = par::map_indexed(sphere_candidates.len(), |idx| {
        let (x, y) = sphere_candidates[idx];
        classify_sphere(p, x, y, tol)
    });

    let mut set = ZeroSet { isolated: Vec::new(), spheres: Vec::new() };
    for outcome in outcomes {
        match outcome? {
            SphereOutcome::Spherical(x, y) => set.spheres.push((x, y)),
            SphereOutcome::Isolated(zero) => set.isolated.push(zero),
        }
    }
    for (x, _) in real_candidates {
        if p.eval(Quaternion::real(x)).norm() > tol * (1.0 + local_scale(p, x.abs())) {
            return Err(Error::InconsistentSphere { x, y: 0.0 });
        }
        set.isolated.push(Quaternion::real(x));
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::Quaternion as Q;

    #[test]
    fn mobius_at_zero_is_minus_q() {
        let tau = mobius(Q::ZERO, 5).unwrap();
        assert_eq!(tau.degree(), 5);
        assert!(tau.coeff(1).approx_eq(-Q::ONE, 1e-15));
        for n in [0usize, 2, 3, 4, 5] {
            assert!(tau.coeff(n).norm() < 1e-15);
        }
    }

    #[test]
    fn mobius_maps_zero_to_omega_and_back() {
        let omega = Q::new(0.0, 0.3, 0.0, 0.4);
        let tau = mobius(omega, 100).unwrap();
        assert!(tau.eval(Q::ZERO).approx_eq(omega, 1e-12));
        // τ_ω(ω) = 0 on the slice of ω
        assert!(tau.eval(omega).norm() < 1e-8);
    }

    #[test]
    fn mobius_rejects_boundary_points() {
        match mobius(Q::ONE, 10) {
            Err(Error::NotInBall { .. }) => {}
            other => panic!("expected NotInBall, got {other:?}"),
        }
    }

    #[test]
    fn blaschke_trivia() {
        assert_eq!(blaschke(&[], 8).unwrap(), QSeries::one());
        let omega = Q::new(0.1, 0.2, -0.3, 0.0);
        assert_eq!(blaschke(&[omega], 40).unwrap(), mobius(omega, 40).unwrap());
    }

    #[test]
    fn blaschke_two_factor_zero_structure() {
        // factors with zeros on distinct spheres: the first zero survives
        // exactly, the second is ⋆-shifted within the sphere of its omega
        let omega2 = Q::new(0.3, 0.0, 0.4, 0.0);
        let f = blaschke(&[Q::I * 0.5, omega2], 60).unwrap();
        let zs = zero_structure(&f, 1e-7).unwrap();
        let inside: Vec<_> = zs.isolated.iter().filter(|z| z.norm() < 1.0).collect();
        assert!(
            inside.iter().any(|z| z.approx_eq(Q::I * 0.5, 1e-7)),
            "first factor zero missing: {zs:?}"
        );
        let second: Vec<_> = inside
            .iter()
            .filter(|z| {
                (z.re() - 0.3).abs() < 1e-7
                    && (Quaternion::new(0.0, z.x, z.y, z.z).norm() - 0.4).abs() < 1e-7
            })
            .collect();
        assert_eq!(second.len(), 1, "expected one zero on the second sphere: {zs:?}");
        // shifted within its sphere, away from omega2 itself
        assert!(!second[0].approx_eq(omega2, 1e-3));
        assert_eq!(inside.len(), 2);
        for z in inside {
            assert!(f.eval(*z).norm() < 1e-7 * (1.0 + hardy::h2_norm(&f)));
        }
    }

    #[test]
    fn blaschke_same_sphere_zero_collapses() {
        // both omegas on the sphere (0, 1/2): the second factor's zero
        // collapses, mirroring (q-i)⋆(q-j) which vanishes only at i
        let f = blaschke(&[Q::I * 0.5, Q::J * 0.5], 60).unwrap();
        let zs = zero_structure(&f, 1e-7).unwrap();
        let inside: Vec<_> = zs.isolated.iter().filter(|z| z.norm() < 1.0).collect();
        assert_eq!(inside.len(), 1, "zero set inside the ball: {zs:?}");
        assert!(inside[0].approx_eq(Q::I * 0.5, 1e-7));
        assert!(zs.spheres.iter().all(|&(x, y)| x.hypot(y) > 1.0));
    }

    #[test]
    fn moment_test_examples() {
        let r = is_inner_moment(&QSeries::monomial(3), 10, 1e-7);
        assert!(r.verdict);
        assert_eq!(r.max_defect, 0.0);

        let s = 1.0 / 2f64.sqrt();
        let f = QSeries::new(vec![Q::real(s), Q::I * s]);
        let r = is_inner_moment(&f, 5, 1e-7);
        assert!(!r.verdict);
        assert!((r.max_defect - 0.5).abs() < 1e-14);

        let tau = mobius(Q::new(0.0, 0.3, 0.0, 0.4), 100).unwrap();
        let r = is_inner_moment(&tau, 20, 1e-7);
        assert!(r.verdict);
        assert!(r.max_defect < 1e-8);
    }

    #[test]
    fn splitting_test_examples() {
        let r = is_inner_splitting(&QSeries::monomial(1), UnitImaginary::I, 16, 1e-10).unwrap();
        assert!(r.verdict, "defect {}", r.max_defect);

        let s = 1.0 / 2f64.sqrt();
        let f = QSeries::from_reals(&[s, s]);
        let r = is_inner_splitting(&f, UnitImaginary::I, 64, 1e-7).unwrap();
        assert!(!r.verdict);
        assert!(r.max_defect >= 1.0 - 1e-7);

        // extension of a complex Blaschke factor is inner
        let a = num_complex::Complex64::new(0.4, -0.2);
        let mut coeffs = vec![a];
        for n in 1..80 {
            coeffs.push(a.conj().powu(n as u32 - 1) * (a.norm_sqr() - 1.0));
        }
        let f = QSeries::from_complex_on_slice(&coeffs, UnitImaginary::I);
        let r = is_inner_splitting(&f, UnitImaginary::new(1.0, -1.0, 0.5).unwrap(), 256, 1e-7).unwrap();
        assert!(r.verdict, "defect {}", r.max_defect);
        assert!(r.max_defect < 1e-8);
    }

    #[test]
    fn splitting_verdict_is_slice_independent() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let tau = mobius(Q::new(0.2, 0.1, -0.4, 0.3), 80).unwrap();
        let not_inner = QSeries::new(vec![Q::new(0.8, 0.1, 0.0, 0.0), Q::new(0.0, 0.3, -0.2, 0.5)]);
        for _ in 0..5 {
            let slice = UnitImaginary::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            )
            .unwrap();
            assert!(is_inner_splitting(&tau, slice, 256, 1e-7).unwrap().verdict);
            assert!(!is_inner_splitting(&not_inner, slice, 256, 1e-7).unwrap().verdict);
        }
    }

    #[test]
    fn splitting_node_bound() {
        match is_inner_splitting(&QSeries::monomial(4), UnitImaginary::I, 8, 1e-7) {
            Err(Error::InsufficientNodes { required: 9, got: 8 }) => {}
            other => panic!("expected InsufficientNodes, got {other:?}"),
        }
    }

    #[test]
    fn norm_test_examples() {
        let grid = BoundaryGrid::fibonacci(16, 512);
        assert!(is_inner_norm(&QSeries::monomial(1), &grid, 1e-7).verdict);
        let s = 1.0 / 2f64.sqrt();
        let r = is_inner_norm(&QSeries::from_reals(&[s, s]), &grid, 1e-7);
        assert!(!r.verdict);
        assert!((r.max_defect - (2f64.sqrt() - 1.0)).abs() < 1e-3);
        let lam = Q::new(0.5, 0.5, -0.5, 0.5);
        assert!(is_inner_norm(&QSeries::constant(lam), &grid, 1e-7).verdict);
    }

    #[test]
    fn mobius_boundary_modulus_bound() {
        // ||τ_ω| - 1| < 10 |ω|^{N-1} on the boundary, |ω| ≤ 0.6
        let grid = BoundaryGrid::fibonacci(16, 16);
        for (omega, degree) in [
            (Q::new(0.0, 0.6, 0.0, 0.0), 16usize),
            (Q::new(0.3, 0.3, 0.3, 0.0), 18),
            (Q::new(0.0, 0.25, -0.3, 0.2), 20),
        ] {
            let tau = mobius(omega, degree).unwrap();
            let mut worst = 0.0f64;
            for slice in grid.slices() {
                for m in 0..grid.angle_count() {
                    let t = std::f64::consts::TAU * m as f64 / grid.angle_count() as f64;
                    let v = tau.eval(slice.circle_point(t)).norm();
                    worst = worst.max((v - 1.0).abs());
                }
            }
            assert!(
                worst < 10.0 * omega.norm().powi(degree as i32 - 1),
                "omega {omega}, degree {degree}: worst {worst}"
            );
        }
    }

    #[test]
    fn zero_structure_worked_examples() {
        // 1 + q²: the whole sphere (0, 1)
        let p = QSeries::from_reals(&[1.0, 0.0, 1.0]);
        let zs = zero_structure(&p, 1e-9).unwrap();
        assert!(zs.isolated.is_empty());
        assert_eq!(zs.spheres.len(), 1);
        assert!((zs.spheres[0].0).abs() < 1e-10 && (zs.spheres[0].1 - 1.0).abs() < 1e-10);

        // q - i: one isolated zero at i
        let p = QSeries::new(vec![-Q::I, Q::ONE]);
        let zs = zero_structure(&p, 1e-9).unwrap();
        assert!(zs.spheres.is_empty());
        assert_eq!(zs.isolated.len(), 1);
        assert!(zs.isolated[0].approx_eq(Q::I, 1e-10));

        // q² - q(i+j) + k: the two factor zeros collapse to the single zero i
        let p = QSeries::new(vec![Q::K, -(Q::I + Q::J), Q::ONE]);
        let zs = zero_structure(&p, 1e-9).unwrap();
        assert!(zs.spheres.is_empty());
        assert_eq!(zs.isolated.len(), 1);
        assert!(zs.isolated[0].approx_eq(Q::I, 1e-10));
        assert!(p.eval(zs.isolated[0]).norm() < 1e-10);
    }

    #[test]
    fn slice_preserving_off_slice_zero_is_spherical() {
        // real coefficients preserve every slice; a zero off the real axis
        // therefore spreads over its whole sphere
        let p = QSeries::from_reals(&[2.0, -2.0, 1.0]); // roots 1 ± i
        let zs = zero_structure(&p, 1e-9).unwrap();
        assert_eq!(zs.spheres, vec![(1.0, 1.0)]);
        assert!(zs.isolated.is_empty());
        // sample the sphere
        for dir in [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, -1.0, 2.0]] {
            let u = UnitImaginary::new(dir[0], dir[1], dir[2]).unwrap();
            let z = Quaternion::real(1.0) + u.as_quaternion();
            assert!(p.eval(z).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        match zero_structure(&QSeries::zero(), 1e-9) {
            Err(Error::ZeroPolynomial) => {}
            other => panic!("expected ZeroPolynomial, got {other:?}"),
        }
    }

    #[test]
    fn moment_and_splitting_agree_on_small_corpus() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        let mut corpus = vec![
            QSeries::monomial(2),
            QSeries::constant(Q::new(0.5, 0.5, 0.5, -0.5)),
            mobius(Q::new(0.1, 0.4, 0.0, 0.2), 80).unwrap(),
        ];
        for _ in 0..4 {
            corpus.push(QSeries::new(
                (0..6)
                    .map(|_| {
                        Q::new(
                            rng.random_range(-1.0..1.0),
                            rng.random_range(-1.0..1.0),
                            rng.random_range(-1.0..1.0),
                            rng.random_range(-1.0..1.0),
                        )
                    })
                    .collect(),
            ));
        }
        for f in &corpus {
            let moment = is_inner_moment(f, 12, 1e-7);
            let splitting = is_inner_splitting(f, UnitImaginary::J, 512, 1e-7).unwrap();
            assert_eq!(moment.verdict, splitting.verdict, "defects {} vs {}", moment.max_defect, splitting.max_defect);
        }
    }

    #[test]
    fn report_json_round_trip() {
        let r = is_inner_moment(&QSeries::monomial(1), 3, 1e-7);
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"method\":\"moment\""));
        let back: InnerReport = serde_json::from_str(&text).unwrap();
        assert_eq!(r, back);
    }
}
