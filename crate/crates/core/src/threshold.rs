//! Closed-form threshold mathematics for the attractive Euler-Poisson flow:
//! the convex potential F, the path invariant of the majorant phase-plane
//! system, the blow-up region classifier, separatrix branches, critical
//! points, and the rescaling that reduces physical parameters to unit form.

use crate::error::{Error, Result};

/// Default half-width of the boundary band in the margin metric.
pub const DEFAULT_BOUNDARY_TOL: f64 = 1e-9;

/// Spatial dimension of the flow. The logarithmic branch of F is selected
/// exactly when n = 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dimension(u32);

impl Dimension {
    pub fn new(n: u32) -> Result<Self> {
        if n >= 1 {
            Ok(Self(n))
        } else {
            Err(Error::InvalidDimension)
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0)
    }

    pub fn is_two(self) -> bool {
        self.0 == 2
    }
}

impl TryFrom<u32> for Dimension {
    type Error = Error;

    fn try_from(n: u32) -> Result<Self> {
        Dimension::new(n)
    }
}

/// A point (d, rho) of the divergence-density phase plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseState {
    /// Divergence of the velocity field, units of 1/time.
    pub d: f64,
    /// Density, dimensionless after rescaling; rho = 0 is vacuum.
    pub rho: f64,
}

impl PhaseState {
    pub fn new(d: f64, rho: f64) -> Self {
        Self { d, rho }
    }
}

/// Background density c > 0 and attractive forcing constant k < 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysicalParams {
    c: f64,
    k: f64,
}

impl PhysicalParams {
    pub fn new(c: f64, k: f64) -> Result<Self> {
        if !(c.is_finite() && k.is_finite()) {
            return Err(Error::NonFinite { what: "physical parameters".into() });
        }
        if c > 0.0 && k < 0.0 {
            Ok(Self { c, k })
        } else {
            Err(Error::InvalidPhysicalParams { c, k })
        }
    }

    /// Unit parameters c = 1, k = -1 (the unit-free system).
    pub fn unit() -> Self {
        Self { c: 1.0, k: -1.0 }
    }

    pub fn c(self) -> f64 {
        self.c
    }

    pub fn k(self) -> f64 {
        self.k
    }

    /// The velocity/divergence scale sqrt(-k c) of the rescaling.
    pub fn rate_scale(self) -> f64 {
        (-self.k * self.c).sqrt()
    }
}

/// Verdict of the sup-critical test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Invariant positive and d < 0: blow-up region reached from negative divergence.
    SupCriticalOmega1,
    /// Invariant negative and rho > 1: blow-up even with nonnegative divergence.
    SupCriticalOmega2,
    /// Within `boundary_tol` of the separatrix; the theory is silent here.
    Boundary,
    /// Outside the proven blow-up region. No global existence is claimed.
    NoBlowupGuaranteed,
    /// rho = 0; the classifier requires a non-vacuum state.
    InvalidVacuum,
}

impl Verdict {
    pub fn is_sup_critical(self) -> bool {
        matches!(self, Verdict::SupCriticalOmega1 | Verdict::SupCriticalOmega2)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::SupCriticalOmega1 => "SupCriticalOmega1",
            Verdict::SupCriticalOmega2 => "SupCriticalOmega2",
            Verdict::Boundary => "Boundary",
            Verdict::NoBlowupGuaranteed => "NoBlowupGuaranteed",
            Verdict::InvalidVacuum => "InvalidVacuum",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Full classification record: the verdict plus the two scalar diagnostics
/// it was decided on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Classification {
    pub verdict: Verdict,
    /// Value of the path invariant I(d, rho).
    pub invariant_value: f64,
    /// Signed distance d - sgn(rho - 1) * sqrt(n F(rho)); negative inside
    /// the blow-up region.
    pub margin: f64,
}

/// Kind of a critical point of the majorant vector field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CriticalPointKind {
    Saddle,
    NodalSource,
    NodalSink,
}

impl CriticalPointKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CriticalPointKind::Saddle => "Saddle",
            CriticalPointKind::NodalSource => "NodalSource",
            CriticalPointKind::NodalSink => "NodalSink",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalPoint {
    pub location: PhaseState,
    pub kind: CriticalPointKind,
}

fn check_rho_nonnegative(rho: f64) -> Result<()> {
    if !rho.is_finite() {
        return Err(Error::NonFinite { what: format!("rho = {rho}") });
    }
    if rho < 0.0 {
        return Err(Error::NegativeDensity { rho });
    }
    Ok(())
}

/// rho^(2/n), with the n = 1 case kept exact.
fn rho_pow_2_over_n(rho: f64, n: Dimension) -> f64 {
    if n.get() == 1 {
        rho * rho
    } else {
        rho.powf(2.0 / n.as_f64())
    }
}

/// The convex potential F(rho).
///
/// For n != 2 this is 1 + 2 rho/(n-2) - n rho^(2/n)/(n-2); for n = 2 it is
/// 1 - rho + rho ln rho, with the rho = 0 value taken as the limit 1.
/// F(1) = 0 and F >= 0 on rho >= 0.
pub fn evaluate_f(rho: f64, n: Dimension) -> Result<f64> {
    check_rho_nonnegative(rho)?;
    if n.is_two() {
        if rho == 0.0 {
            return Ok(1.0);
        }
        Ok(1.0 - rho + rho * rho.ln())
    } else {
        let nf = n.as_f64();
        let denom = nf - 2.0;
        Ok(1.0 + 2.0 * rho / denom - nf * rho_pow_2_over_n(rho, n) / denom)
    }
}

/// The generic-n formula of F evaluated at a *real* dimension parameter.
/// Exists only so tests can probe continuity of the two branches across
/// n = 2; not part of the supported surface.
#[doc(hidden)]
pub fn evaluate_f_real_dim(rho: f64, n: f64) -> f64 {
    let denom = n - 2.0;
    1.0 + 2.0 * rho / denom - n * rho.powf(2.0 / n) / denom
}

/// F''(rho) = (2/n) rho^(2/n - 2); strictly positive for rho > 0, which is
/// the convexity the blow-up argument rests on.
pub fn f_second_derivative(rho: f64, n: Dimension) -> Result<f64> {
    if !rho.is_finite() {
        return Err(Error::NonFinite { what: format!("rho = {rho}") });
    }
    if rho <= 0.0 {
        return Err(Error::NegativeDensity { rho });
    }
    let nf = n.as_f64();
    Ok(2.0 / nf * rho.powf(2.0 / nf - 2.0))
}

/// sgn(x) with sgn(0) = 0 (unlike `f64::signum`).
fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Value of sqrt(n F(rho)), the half-width of the separatrix at this density.
/// F can round a hair below zero near rho = 1; the sqrt argument is clamped.
fn separatrix_halfwidth(rho: f64, n: Dimension) -> Result<f64> {
    let f = evaluate_f(rho, n)?;
    Ok((n.as_f64() * f).max(0.0).sqrt())
}

/// The path invariant I(d, rho) = rho^(-2/n) (d^2 - n F(rho)) of the
/// majorant system, evaluated in factored form
/// rho^(-2/n) (d - s)(d + s), s = sqrt(n F(rho)), so that states sitting
/// exactly on a separatrix branch report exactly zero.
pub fn path_invariant(state: PhaseState, n: Dimension) -> Result<f64> {
    check_rho_nonnegative(state.rho)?;
    if state.rho == 0.0 {
        return Err(Error::Vacuum);
    }
    if !state.d.is_finite() {
        return Err(Error::NonFinite { what: format!("d = {}", state.d) });
    }
    let s = separatrix_halfwidth(state.rho, n)?;
    Ok((state.d - s) * (state.d + s) / rho_pow_2_over_n(state.rho, n))
}

/// Classify a phase state against the blow-up region.
///
/// Points within `boundary_tol` of the separatrix (in the margin metric)
/// come back `Boundary`: the theorem proves nothing on the separatrix, so
/// no blow-up claim is made there. Vacuum states come back `InvalidVacuum`.
pub fn classify(state: PhaseState, n: Dimension, boundary_tol: f64) -> Result<Classification> {
    if !(boundary_tol > 0.0) {
        return Err(Error::InvalidControls { what: format!("boundary_tol = {boundary_tol}") });
    }
    check_rho_nonnegative(state.rho)?;
    if !state.d.is_finite() {
        return Err(Error::NonFinite { what: format!("d = {}", state.d) });
    }
    if state.rho == 0.0 {
        let s = separatrix_halfwidth(0.0, n)?;
        return Ok(Classification {
            verdict: Verdict::InvalidVacuum,
            invariant_value: f64::NAN,
            margin: state.d - sign(-1.0) * s,
        });
    }

    let s = separatrix_halfwidth(state.rho, n)?;
    let margin = state.d - sign(state.rho - 1.0) * s;
    let invariant = path_invariant(state, n)?;

    let verdict = if margin.abs() <= boundary_tol {
        Verdict::Boundary
    } else if margin < 0.0 {
        // Inside the open blow-up region; split on the invariant's sign.
        if invariant < 0.0 && state.rho > 1.0 {
            Verdict::SupCriticalOmega2
        } else {
            Verdict::SupCriticalOmega1
        }
    } else {
        Verdict::NoBlowupGuaranteed
    };

    Ok(Classification { verdict, invariant_value: invariant, margin })
}

/// Both separatrix branches at a given density: (-sqrt(n F), +sqrt(n F)).
/// The branches meet at the saddle (0, 1).
pub fn separatrix(rho: f64, n: Dimension) -> Result<(f64, f64)> {
    let s = separatrix_halfwidth(rho, n)?;
    Ok((-s, s))
}

/// The three critical points of the majorant vector field: the saddle at
/// (0, 1), a nodal source at (-sqrt n, 0) and a nodal sink at (+sqrt n, 0).
pub fn critical_points(n: Dimension) -> Vec<CriticalPoint> {
    let root_n = n.as_f64().sqrt();
    vec![
        CriticalPoint {
            location: PhaseState::new(0.0, 1.0),
            kind: CriticalPointKind::Saddle,
        },
        CriticalPoint {
            location: PhaseState::new(-root_n, 0.0),
            kind: CriticalPointKind::NodalSource,
        },
        CriticalPoint {
            location: PhaseState::new(root_n, 0.0),
            kind: CriticalPointKind::NodalSink,
        },
    ]
}

/// Map a physical state to unit-free form: (d, rho) -> (d / sqrt(-k c), rho / c).
pub fn rescale_physical(state: PhaseState, params: PhysicalParams) -> Result<PhaseState> {
    check_rho_nonnegative(state.rho)?;
    Ok(PhaseState::new(state.d / params.rate_scale(), state.rho / params.c))
}

/// Classify directly from physical parameters (rescale, then classify).
pub fn classify_physical(
    state: PhaseState,
    n: Dimension,
    params: PhysicalParams,
    boundary_tol: f64,
) -> Result<Classification> {
    classify(rescale_physical(state, params)?, n, boundary_tol)
}

/// Membership in the earlier one-sided blow-up region d < -sqrt(-n k c).
/// A strict subset of the region the classifier covers.
pub fn chae_tadmor_member(state: PhaseState, n: Dimension, params: PhysicalParams) -> bool {
    state.d < -(-n.as_f64() * params.k * params.c).sqrt()
}
