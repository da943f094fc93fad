//! Adaptive embedded Runge-Kutta driver (Dormand-Prince 5(4)) with PI step
//! control. The phase-plane integrators and the skew-part evolution all run
//! on this engine; callers observe accepted steps through a callback and may
//! stop the integration (event detection, blow-up thresholds).

/// Butcher tableau of the Dormand-Prince 5(4) pair.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// 5th-order weights (the propagated solution).
const B: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
/// Weights of the embedded error estimate (b5 - b4).
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 6.0;
/// PI controller exponents for a 5th-order pair.
const ALPHA: f64 = 0.7 / 5.0;
const BETA: f64 = 0.4 / 5.0;
/// Steps are never shrunk below this before the driver gives up.
pub(crate) const MIN_STEP: f64 = 1e-14;

#[derive(Clone, Copy, Debug)]
pub(crate) struct RkControls {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum RkStatus {
    /// Integrated to the requested end time.
    ReachedEnd,
    /// The accepted-step callback asked to stop.
    StoppedByCallback,
    /// Step budget exhausted before the end time.
    StepLimit,
    /// Error control forced the step below `MIN_STEP`.
    StepSizeUnderflow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum StepOutcome {
    Continue,
    Stop,
}

#[derive(Debug)]
pub(crate) struct RkResult {
    pub status: RkStatus,
    pub t: f64,
    pub y: Vec<f64>,
    pub accepted: usize,
    pub rejected: usize,
}

fn error_norm(err: &[f64], y0: &[f64], y1: &[f64], controls: &RkControls) -> f64 {
    let mut acc = 0.0;
    for i in 0..err.len() {
        let scale = controls.abs_tol + controls.rel_tol * y0[i].abs().max(y1[i].abs());
        let r = err[i] / scale;
        acc += r * r;
    }
    (acc / err.len() as f64).sqrt()
}

/// Crude but robust initial step heuristic: balance the solution scale
/// against the right-hand-side scale, capped by the integration window.
fn initial_step(f0: &[f64], y0: &[f64], span: f64, controls: &RkControls) -> f64 {
    let mut ratio = f64::INFINITY;
    for i in 0..y0.len() {
        let scale = controls.abs_tol + controls.rel_tol * y0[i].abs();
        let d = f0[i].abs() / (y0[i].abs().max(scale)).max(1e-300);
        if d > 0.0 {
            ratio = ratio.min(1.0 / d);
        }
    }
    let h = if ratio.is_finite() { 0.01 * ratio } else { 1e-3 * span.max(1.0) };
    h.min(span).max(MIN_STEP)
}

/// Integrate dy/dt = rhs(t, y) from `t0` to `t_end` (t_end > t0).
///
/// `on_accept` runs after every accepted step with mutable access to the
/// state (projection hooks) and may stop the run.
pub(crate) fn integrate_adaptive<F, G>(
    mut rhs: F,
    t0: f64,
    y0: &[f64],
    t_end: f64,
    controls: &RkControls,
    mut on_accept: G,
) -> RkResult
where
    F: FnMut(f64, &[f64], &mut [f64]),
    G: FnMut(f64, &mut [f64]) -> StepOutcome,
{
    let dim = y0.len();
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut k = vec![vec![0.0; dim]; 7];
    let mut y_stage = vec![0.0; dim];
    let mut y_new = vec![0.0; dim];
    let mut err = vec![0.0; dim];

    rhs(t, &y, &mut k[0]);
    let mut h = initial_step(&k[0], &y, t_end - t0, controls);
    let mut err_prev: f64 = 1.0;
    let mut accepted = 0usize;
    let mut rejected = 0usize;

    while t < t_end {
        if accepted + rejected >= controls.max_steps {
            return RkResult { status: RkStatus::StepLimit, t, y, accepted, rejected };
        }
        h = h.min(t_end - t);
        if h < MIN_STEP {
            // A final sliver shorter than MIN_STEP counts as arrival.
            if t_end - t < MIN_STEP {
                t = t_end;
                break;
            }
            return RkResult { status: RkStatus::StepSizeUnderflow, t, y, accepted, rejected };
        }

        rhs(t, &y, &mut k[0]);
        for stage in 1..7 {
            for i in 0..dim {
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate().take(stage) {
                    let a = A[stage][j];
                    if a != 0.0 {
                        acc += a * kj[i];
                    }
                }
                y_stage[i] = y[i] + h * acc;
            }
            let (head, tail) = k.split_at_mut(stage);
            let _ = head;
            rhs(t + C[stage] * h, &y_stage, &mut tail[0]);
        }
        for i in 0..dim {
            let mut acc = 0.0;
            let mut eacc = 0.0;
            for (j, kj) in k.iter().enumerate() {
                if B[j] != 0.0 {
                    acc += B[j] * kj[i];
                }
                if E[j] != 0.0 {
                    eacc += E[j] * kj[i];
                }
            }
            y_new[i] = y[i] + h * acc;
            err[i] = h * eacc;
        }

        let mut err_norm = error_norm(&err, &y, &y_new, controls);
        if !err_norm.is_finite() {
            err_norm = 1e6; // treat overflow inside a trial step as a hard rejection
        }

        if err_norm <= 1.0 {
            t += h;
            y.copy_from_slice(&y_new);
            accepted += 1;
            let e = err_norm.max(1e-10);
            let factor =
                (SAFETY * e.powf(-ALPHA) * err_prev.powf(BETA)).clamp(MIN_FACTOR, MAX_FACTOR);
            err_prev = e;
            h *= factor;
            if on_accept(t, &mut y) == StepOutcome::Stop {
                return RkResult { status: RkStatus::StoppedByCallback, t, y, accepted, rejected };
            }
        } else {
            rejected += 1;
            let factor = (SAFETY * err_norm.powf(-ALPHA)).clamp(MIN_FACTOR, 1.0);
            h *= factor;
        }
    }

    RkResult { status: RkStatus::ReachedEnd, t, y, accepted, rejected }
}
