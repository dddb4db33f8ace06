//! Analytic continuation of solutions along paths in the twice-punctured
//! plane, and the monodromy data extracted from it.
//!
//! Continuation integrates the companion first-order system of a linear
//! operator with an embedded Runge-Kutta-Fehlberg 7(8) pair (13 stages,
//! local extrapolation), adaptive in the path parameter. Monodromy
//! matrices are expressed in the `(F_mu, G_mu)` basis with the convention
//!
//! ```text
//! (F, G) after the loop  =  (F, G) * M
//! ```
//!
//! (columns give the continued basis functions in the original basis).
//! All circle loops are positively oriented; the loop around infinity is
//! realized as a clockwise circle enclosing both finite punctures, and
//! with loops traversed 0, then 1, then infinity the matrix product
//! `M_inf * M_1 * M_0` is the identity.

use crate::diffop::{build_d, build_d_for_mu, DiffOperator, OpBasis};
use crate::error::{Error, Result};
use crate::functions::{deriv_stack, Family};
use crate::gamma::pochhammer_rat;
use crate::params::{unit_root_pow, HGParams};
use crate::scalar::{rat_int, rat_to_c64, C64};
use crate::series::{eval_2f1, TruncationPolicy};

/// Minimum admissible distance of any path to the punctures 0 and 1.
pub const MIN_PUNCTURE_DISTANCE: f64 = 0.05;

/// A continuation path: a circle with a signed number of turns, or a
/// polyline. The base point always lies on the path.
#[derive(Clone, Debug)]
pub enum PathKind {
    Circle {
        center: C64,
        radius: f64,
        turns: i32,
    },
    Polyline {
        points: Vec<C64>,
    },
}

#[derive(Clone, Debug)]
pub struct PathSpec {
    pub kind: PathKind,
    pub base_point: C64,
}

impl PathSpec {
    /// Circle through `base` around `center`, `turns` counterclockwise
    /// windings (negative = clockwise).
    pub fn circle_through(center: C64, base: C64, turns: i32) -> Result<Self> {
        let radius = (base - center).norm();
        let spec = Self {
            kind: PathKind::Circle {
                center,
                radius,
                turns,
            },
            base_point: base,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn polyline(points: Vec<C64>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Invalid("polyline needs at least two points".into()));
        }
        let base = points[0];
        let spec = Self {
            kind: PathKind::Polyline { points },
            base_point: base,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let punctures = [C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
        match &self.kind {
            PathKind::Circle { center, radius, .. } => {
                if (self.base_point - center).norm() - radius > 1e-9 * radius.max(1.0) {
                    return Err(Error::Invalid("base point is not on the circle".into()));
                }
                for p in punctures {
                    if ((p - center).norm() - radius).abs() < MIN_PUNCTURE_DISTANCE {
                        return Err(Error::Invalid(format!(
                            "circle passes within {MIN_PUNCTURE_DISTANCE} of the puncture {p}"
                        )));
                    }
                }
            }
            PathKind::Polyline { points } => {
                if (self.base_point - points[0]).norm() > 1e-12 {
                    return Err(Error::Invalid(
                        "base point must be the first polyline point".into(),
                    ));
                }
                for seg in points.windows(2) {
                    for p in punctures {
                        if segment_distance(seg[0], seg[1], p) < MIN_PUNCTURE_DISTANCE {
                            return Err(Error::Invalid(format!(
                                "polyline segment passes within {MIN_PUNCTURE_DISTANCE} of {p}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Position and velocity at parameter `tau` in `[0, 1]`.
    fn at(&self, tau: f64) -> (C64, C64) {
        match &self.kind {
            PathKind::Circle {
                center,
                radius,
                turns,
            } => {
                let theta0 = (self.base_point - center).arg();
                let omega = 2.0 * std::f64::consts::PI * (*turns as f64);
                let ang = theta0 + omega * tau;
                let e = C64::new(ang.cos(), ang.sin());
                (center + radius * e, C64::new(0.0, omega * radius) * e)
            }
            PathKind::Polyline { points } => {
                let nseg = points.len() - 1;
                let s = (tau * nseg as f64).min(nseg as f64 - 1e-15);
                let i = s.floor() as usize;
                let frac = s - i as f64;
                let d = points[i + 1] - points[i];
                (points[i] + frac * d, d * nseg as f64)
            }
        }
    }
}

fn segment_distance(a: C64, b: C64, p: C64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).re * d.re + (p - a).im * d.im) / len2;
    let t = t.clamp(0.0, 1.0);
    (p - (a + t * d)).norm()
}

// Fehlberg 7(8) tableau (13 stages); the propagated solution is the
// 8th-order one, the embedded difference estimates the local error.
const RKF_C: [f64; 13] = [
    0.0,
    2.0 / 27.0,
    1.0 / 9.0,
    1.0 / 6.0,
    5.0 / 12.0,
    0.5,
    5.0 / 6.0,
    1.0 / 6.0,
    2.0 / 3.0,
    1.0 / 3.0,
    1.0,
    0.0,
    1.0,
];

const RKF_A: [&[f64]; 13] = [
    &[],
    &[2.0 / 27.0],
    &[1.0 / 36.0, 1.0 / 12.0],
    &[1.0 / 24.0, 0.0, 1.0 / 8.0],
    &[5.0 / 12.0, 0.0, -25.0 / 16.0, 25.0 / 16.0],
    &[1.0 / 20.0, 0.0, 0.0, 0.25, 0.2],
    &[
        -25.0 / 108.0,
        0.0,
        0.0,
        125.0 / 108.0,
        -65.0 / 27.0,
        125.0 / 54.0,
    ],
    &[
        31.0 / 300.0,
        0.0,
        0.0,
        0.0,
        61.0 / 225.0,
        -2.0 / 9.0,
        13.0 / 900.0,
    ],
    &[
        2.0,
        0.0,
        0.0,
        -53.0 / 6.0,
        704.0 / 45.0,
        -107.0 / 9.0,
        67.0 / 90.0,
        3.0,
    ],
    &[
        -91.0 / 108.0,
        0.0,
        0.0,
        23.0 / 108.0,
        -976.0 / 135.0,
        311.0 / 54.0,
        -19.0 / 60.0,
        17.0 / 6.0,
        -1.0 / 12.0,
    ],
    &[
        2383.0 / 4100.0,
        0.0,
        0.0,
        -341.0 / 164.0,
        4496.0 / 1025.0,
        -301.0 / 82.0,
        2133.0 / 4100.0,
        45.0 / 82.0,
        45.0 / 164.0,
        18.0 / 41.0,
    ],
    &[
        3.0 / 205.0,
        0.0,
        0.0,
        0.0,
        0.0,
        -6.0 / 41.0,
        -3.0 / 205.0,
        -3.0 / 41.0,
        3.0 / 41.0,
        6.0 / 41.0,
        0.0,
    ],
    &[
        -1777.0 / 4100.0,
        0.0,
        0.0,
        -341.0 / 164.0,
        4496.0 / 1025.0,
        -289.0 / 82.0,
        2193.0 / 4100.0,
        51.0 / 82.0,
        33.0 / 164.0,
        12.0 / 41.0,
        0.0,
        1.0,
    ],
];

const RKF_B8: [f64; 13] = [
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    34.0 / 105.0,
    9.0 / 35.0,
    9.0 / 35.0,
    9.0 / 280.0,
    9.0 / 280.0,
    0.0,
    41.0 / 840.0,
    41.0 / 840.0,
];

/// Companion system of a linear operator: `y = (u, u', ..., u^(n-1))`,
/// `dy/dtau = gamma'(tau) * A(lam) y`. Coefficients are lowered to f64
/// once; the exact forms never enter the stepping loop.
struct CompanionSystem {
    coeffs: Vec<crate::ratfun::RatLamF64>,
}

impl CompanionSystem {
    fn rhs(&self, lam: C64, dlam: C64, y: &[C64], out: &mut [C64]) {
        let n = y.len();
        for i in 0..n - 1 {
            out[i] = dlam * y[i + 1];
        }
        let lead = self.coeffs[n].eval(lam);
        let mut top = C64::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().take(n).enumerate() {
            if !c.is_zero() {
                top -= c.eval(lam) * y[k];
            }
        }
        out[n - 1] = dlam * top / lead;
    }
}

/// Continue the state vector of an arbitrary-order operator along a path.
///
/// A polyline is integrated segment by segment so the velocity kinks at
/// its joints never sit inside a step.
pub fn continue_linear(
    op: &DiffOperator,
    state: &[C64],
    path: &PathSpec,
    tol: f64,
) -> Result<Vec<C64>> {
    let op_dd = op.to_basis(OpBasis::DDLambda);
    let order = op_dd
        .order()
        .ok_or_else(|| Error::Invalid("cannot continue the zero operator".into()))?;
    if state.len() != order {
        return Err(Error::Invalid(format!(
            "state length {} does not match operator order {order}",
            state.len()
        )));
    }
    path.validate()?;
    if let PathKind::Polyline { points } = &path.kind {
        let mut y = state.to_vec();
        for seg in points.windows(2) {
            if (seg[1] - seg[0]).norm() == 0.0 {
                continue;
            }
            let piece = PathSpec {
                kind: PathKind::Polyline {
                    points: seg.to_vec(),
                },
                base_point: seg[0],
            };
            y = continue_smooth(&op_dd, &y, &piece, tol)?;
        }
        return Ok(y);
    }
    continue_smooth(&op_dd, state, path, tol)
}

fn continue_smooth(
    op_dd: &DiffOperator,
    state: &[C64],
    path: &PathSpec,
    tol: f64,
) -> Result<Vec<C64>> {
    let sys = CompanionSystem {
        coeffs: op_dd.coeffs().iter().map(|c| c.to_f64()).collect(),
    };
    let n = state.len();
    let mut y: Vec<C64> = state.to_vec();
    let mut tau = 0.0f64;
    let mut h = 0.02f64;
    let mut k = vec![vec![C64::new(0.0, 0.0); n]; 13];
    let mut ytmp = vec![C64::new(0.0, 0.0); n];
    let mut steps = 0usize;

    while tau < 1.0 {
        if h < 1e-13 {
            return Err(Error::StepUnderflow(tau));
        }
        if tau + h > 1.0 {
            h = 1.0 - tau;
        }
        for s in 0..13 {
            ytmp.copy_from_slice(&y);
            for (j, a) in RKF_A[s].iter().enumerate() {
                if *a != 0.0 {
                    for i in 0..n {
                        ytmp[i] += h * a * k[j][i];
                    }
                }
            }
            let (lam, dlam) = path.at(tau + RKF_C[s] * h);
            let (head, tail) = k.split_at_mut(s);
            let _ = head;
            sys.rhs(lam, dlam, &ytmp, &mut tail[0]);
        }
        // 8th-order update; embedded error (41/840)(k0 + k10 - k11 - k12) h
        let mut ynew = y.clone();
        let mut err = 0.0f64;
        for i in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for s in 0..13 {
                if RKF_B8[s] != 0.0 {
                    acc += RKF_B8[s] * k[s][i];
                }
            }
            ynew[i] += h * acc;
            let e = (41.0 / 840.0) * (k[0][i] + k[10][i] - k[11][i] - k[12][i]) * h;
            let scale = tol * (1.0 + y[i].norm().max(ynew[i].norm()));
            err = err.max(e.norm() / scale);
        }
        if !ynew.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite(format!(
                "continuation state at tau = {tau}"
            )));
        }
        if err <= 1.0 {
            tau += h;
            y = ynew;
        }
        let factor = if err > 0.0 {
            0.9 * err.powf(-1.0 / 8.0)
        } else {
            5.0
        };
        h *= factor.clamp(0.2, 5.0);
        h = h.min(0.25);
        steps += 1;
        if steps > 2_000_000 {
            return Err(Error::NonConvergence(
                "continuation step budget exhausted".into(),
            ));
        }
    }
    Ok(y)
}

/// Transport a `(value, derivative)` pair of a second-order operator.
pub fn integrate_ode(
    op: &DiffOperator,
    initial: (C64, C64),
    path: &PathSpec,
    tol: f64,
) -> Result<(C64, C64)> {
    let out = continue_linear(op, &[initial.0, initial.1], path, tol)?;
    Ok((out[0], out[1]))
}

/// 2x2 monodromy matrix in a labelled solution basis.
#[derive(Clone, Debug)]
pub struct MonodromyMatrix {
    pub entries: [[C64; 2]; 2],
    pub basis_labels: (&'static str, &'static str),
}

impl MonodromyMatrix {
    pub fn eigenvalues(&self) -> [C64; 2] {
        let m = &self.entries;
        let tr = m[0][0] + m[1][1];
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let disc = (tr * tr - 4.0 * det).sqrt();
        [(tr + disc) / 2.0, (tr - disc) / 2.0]
    }

    pub fn determinant(&self) -> C64 {
        let m = &self.entries;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let a = &self.entries;
        let b = &o.entries;
        let mut out = [[C64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self {
            entries: out,
            basis_labels: self.basis_labels,
        }
    }

    pub fn max_deviation_from_identity(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, row) in self.entries.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                let id = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((z - C64::new(id, 0.0)).norm());
            }
        }
        worst
    }
}

/// Default base point: inside the lens where both series bases converge.
pub fn default_base_point() -> C64 {
    C64::new(0.5, 0.6)
}

/// `(value, derivative)` columns of `(F_mu, G_mu)` at a lens point; the
/// derivatives come from the exact recurrence, not numerical
/// differentiation.
fn basis_wronskian(p: &HGParams, lam: C64, policy: &TruncationPolicy) -> Result<[[C64; 2]; 2]> {
    let f = deriv_stack(Family::FMu, p, 0, lam, 1, policy)?;
    let g = deriv_stack(Family::GMu, p, 0, lam, 1, policy)?;
    Ok([[f[0], g[0]], [f[1], g[1]]])
}

fn solve_2x2(w: &[[C64; 2]; 2], v: &[[C64; 2]; 2]) -> Result<[[C64; 2]; 2]> {
    let det = w[0][0] * w[1][1] - w[0][1] * w[1][0];
    let scale = w.iter().flatten().map(|z| z.norm()).fold(0.0f64, f64::max);
    if det.norm() < 1e-8 * scale * scale {
        return Err(Error::Hypothesis(
            "basis Wronskian nearly singular at the base point; move the base point".into(),
        ));
    }
    let inv = [
        [w[1][1] / det, -w[0][1] / det],
        [-w[1][0] / det, w[0][0] / det],
    ];
    let mut m = [[C64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = inv[i][0] * v[0][j] + inv[i][1] * v[1][j];
        }
    }
    Ok(m)
}

/// Monodromy of the `(F_mu, G_mu)` basis along an admissible loop based
/// in the lens.
pub fn monodromy_along(p: &HGParams, path: &PathSpec, tol: f64) -> Result<MonodromyMatrix> {
    let policy = TruncationPolicy::default();
    let lam0 = path.base_point;
    let w = basis_wronskian(p, lam0, &policy)?;
    let op = build_d(p);
    let f_end = continue_linear(&op, &[w[0][0], w[1][0]], path, tol)?;
    let g_end = continue_linear(&op, &[w[0][1], w[1][1]], path, tol)?;
    let v = [[f_end[0], g_end[0]], [f_end[1], g_end[1]]];
    Ok(MonodromyMatrix {
        entries: solve_2x2(&w, &v)?,
        basis_labels: ("F_mu", "G_mu"),
    })
}

/// Monodromy around `lambda = 0` (positively oriented circle through the
/// base point).
pub fn monodromy_at_zero(p: &HGParams, tol: f64) -> Result<MonodromyMatrix> {
    let base = default_base_point();
    monodromy_along(
        p,
        &PathSpec::circle_through(C64::new(0.0, 0.0), base, 1)?,
        tol,
    )
}

/// Monodromy around `lambda = 1`.
pub fn monodromy_at_one(p: &HGParams, tol: f64) -> Result<MonodromyMatrix> {
    let base = default_base_point();
    monodromy_along(
        p,
        &PathSpec::circle_through(C64::new(1.0, 0.0), base, 1)?,
        tol,
    )
}

/// Monodromy around infinity: a clockwise circle enclosing both
/// punctures, so that `M_inf * M_1 * M_0 = 1`.
pub fn monodromy_at_infinity(p: &HGParams, tol: f64) -> Result<MonodromyMatrix> {
    let base = default_base_point();
    monodromy_along(
        p,
        &PathSpec::circle_through(C64::new(0.5, 0.0), base, -1)?,
        tol,
    )
}

/// The closed-form zero-loop matrix `[[xi, 0], [1-xi, 1]]`.
pub fn expected_zero_monodromy(p: &HGParams) -> MonodromyMatrix {
    let xi = p.xi();
    MonodromyMatrix {
        entries: [
            [xi, C64::new(0.0, 0.0)],
            [C64::new(1.0, 0.0) - xi, C64::new(1.0, 0.0)],
        ],
        basis_labels: ("F_mu", "G_mu"),
    }
}

/// The multiplier picked up by `H_mu` around infinity, computed by
/// continuing its order-3 annihilator (`theta_lam` composed with the
/// second-order operator) along the clockwise big circle; the closed
/// form is `e^{-2 pi i mu}`.
pub fn h_infinity_factor(p: &HGParams, tol: f64) -> Result<C64> {
    let policy = TruncationPolicy::default();
    // theta_lam . D annihilates H because theta_lam kills the
    // inhomogeneity (lam-1)^(mu-1); note theta_lam . P does not
    let theta = crate::diffop::build_theta_lambda(p).to_basis(OpBasis::DDLambda);
    let op3 = theta.compose(&build_d(p))?;
    let base = C64::new(0.5, -2.5);
    let path = PathSpec::circle_through(C64::new(0.5, 0.0), base, -1)?;
    let h = deriv_stack(Family::HMu, p, 0, base, 2, &policy)?;
    let end = continue_linear(&op3, &h, &path, tol)?;
    Ok(end[0] / h[0])
}

/// Quotient triviality of the zero loop on the third solution: after a
/// loop around 0 only (not enclosing 1), the continued `H` still solves
/// the inhomogeneous equation with the *same* right-hand side, so it
/// returns to itself modulo the `(F, G)` span. Returns the relative
/// residual of the inhomogeneity after the loop.
pub fn h_zero_loop_quotient_residual(p: &HGParams, tol: f64) -> Result<f64> {
    let policy = TruncationPolicy::default();
    let theta = crate::diffop::build_theta_lambda(p).to_basis(OpBasis::DDLambda);
    let op3 = theta.compose(&build_d(p))?;
    // base with |1-lam| > 1 on a circle around 0 that excludes 1
    let base = C64::new(-0.9, 0.0);
    let path = PathSpec::circle_through(C64::new(0.0, 0.0), base, 1)?;
    let h = deriv_stack(Family::HMu, p, 0, base, 2, &policy)?;
    let end = continue_linear(&op3, &h, &path, tol)?;
    let d = build_d(p);
    let got = d.apply_with_derivatives(base, &end)?;
    let inhom = -crate::scalar::pow_principal_rat(
        base - C64::new(1.0, 0.0),
        &(p.mu() - rat_int(1)),
    )?;
    Ok((got - inhom).norm() / inhom.norm().max(1e-300))
}

/// Expected infinity eigenvalues
/// `{e^{2 pi i (alpha-mu)}, e^{2 pi i (beta-mu)}}`.
pub fn expected_infinity_eigenvalues(p: &HGParams) -> [C64; 2] {
    [
        unit_root_pow(&(p.alpha() - p.mu())),
        unit_root_pow(&(p.beta() - p.mu())),
    ]
}

/// Greatest distance between two eigenvalue sets over the best pairing.
pub fn eigenvalue_set_distance(a: &[C64; 2], b: &[C64; 2]) -> f64 {
    let d1 = (a[0] - b[0]).norm().max((a[1] - b[1]).norm());
    let d2 = (a[0] - b[1]).norm().max((a[1] - b[0]).norm());
    d1.min(d2)
}

/// Residual of the Laurent-coefficient recurrence at `z = 1 - lambda`:
/// the sequence built from
///
/// ```text
/// (n-1)^2 (n-1+mu) a_n = (n-1)(n-2+alpha)(n-2+beta) a_{n-1},  a_1 = 1
/// ```
///
/// must sum to `z * 2F1(alpha, beta; 1+mu; z)`; coefficients with
/// `n <= 0` vanish because they do so for `n << 0`.
pub fn laurent_solution_check(p: &HGParams, z: C64) -> Result<f64> {
    if z.norm() >= 1.0 {
        return Err(Error::Domain("laurent check needs |z| < 1".into()));
    }
    let policy = TruncationPolicy::default();
    let (alpha, beta, mu) = (p.alpha(), p.beta(), p.mu());
    let ratio = |n: i64| -> Result<C64> {
        let nf = n as f64;
        let num = (nf - 1.0)
            * (C64::new(nf - 2.0, 0.0) + rat_to_c64(alpha)?)
            * (C64::new(nf - 2.0, 0.0) + rat_to_c64(beta)?);
        let den = (nf - 1.0) * (nf - 1.0) * (C64::new(nf - 1.0, 0.0) + rat_to_c64(mu)?);
        Ok(num / den)
    };
    let mut sum = C64::new(0.0, 0.0);
    let mut a_n = C64::new(1.0, 0.0);
    let mut zn = z;
    let mut n = 1i64;
    loop {
        sum += a_n * zn;
        n += 1;
        a_n *= ratio(n)?;
        zn *= z;
        if (a_n * zn).norm() < 1e-17 * sum.norm().max(1e-30) || n > 100_000 {
            sum += a_n * zn;
            break;
        }
    }
    // cross-check one deep coefficient against the closed form
    // (alpha)_{n-1} (beta)_{n-1} / ((n-1)! (1+mu)_{n-1})
    let n_check = 7u32;
    let closed = rat_to_c64(
        &(&(&pochhammer_rat(alpha, n_check - 1) * &pochhammer_rat(beta, n_check - 1))
            / &(&pochhammer_rat(&rat_int(1), n_check - 1)
                * &pochhammer_rat(&(mu + rat_int(1)), n_check - 1))),
    )?;
    let mut a_rebuild = C64::new(1.0, 0.0);
    for m in 2..=n_check as i64 {
        a_rebuild *= ratio(m)?;
    }
    if (a_rebuild - closed).norm() > 1e-12 * closed.norm().max(1.0) {
        return Err(Error::NonConvergence(
            "laurent recurrence disagrees with its closed form".into(),
        ));
    }
    if z.norm() == 0.0 {
        return Ok(sum.norm());
    }
    let rhs = z * eval_2f1(
        rat_to_c64(alpha)?,
        rat_to_c64(beta)?,
        rat_to_c64(&(mu + rat_int(1)))?,
        z,
        &policy,
    )?
    .value;
    Ok((sum - rhs).norm() / rhs.norm().max(1e-300))
}

/// Annihilator at a shifted level, for transporting shifted family
/// members.
pub fn build_shifted_d(p: &HGParams, shift: i64) -> DiffOperator {
    build_d_for_mu(p.alpha(), p.beta(), &p.mu_shifted(shift))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::eval_f_mu;
    use crate::scalar::rat;

    fn params() -> HGParams {
        HGParams::new(rat(1, 3), rat(1, 5), rat(7, 2), 2).unwrap()
    }

    fn pol() -> TruncationPolicy {
        TruncationPolicy::default()
    }

    #[test]
    fn trivial_paths() {
        let p = params();
        let op = build_d(&p);
        let lam0 = C64::new(0.6, 0.1);
        let f = deriv_stack(Family::FMu, &p, 0, lam0, 1, &pol()).unwrap();
        let path = PathSpec::polyline(vec![lam0, C64::new(0.62, 0.12), lam0]).unwrap();
        let out = continue_linear(&op, &f, &path, 1e-10).unwrap();
        assert!((out[0] - f[0]).norm() < 1e-9);
        // circle enclosing no singularity: trivial monodromy
        let circ = PathSpec::circle_through(C64::new(0.5, 0.0), C64::new(0.8, 0.0), 1).unwrap();
        let f2 = deriv_stack(Family::FMu, &p, 0, C64::new(0.8, 0.0), 1, &pol()).unwrap();
        let out = continue_linear(&op, &f2, &circ, 1e-10).unwrap();
        assert!((out[0] - f2[0]).norm() < 1e-8);
        assert!((out[1] - f2[1]).norm() < 1e-8);
    }

    #[test]
    fn short_arc_matches_series() {
        let p = params();
        let op = build_d(&p);
        let a = C64::new(0.7, 0.05);
        let b = C64::new(0.85, 0.25);
        let f = deriv_stack(Family::FMu, &p, 0, a, 1, &pol()).unwrap();
        let path = PathSpec::polyline(vec![a, b]).unwrap();
        let out = continue_linear(&op, &f, &path, 1e-11).unwrap();
        let direct = eval_f_mu(&p, 0, b, &pol()).unwrap();
        assert!((out[0] - direct).norm() / direct.norm() < 1e-8);
    }

    #[test]
    fn zero_loop_matrix() {
        let p = params();
        let m = monodromy_at_zero(&p, 1e-10).unwrap();
        let want = expected_zero_monodromy(&p);
        for i in 0..2 {
            for j in 0..2 {
                assert!(
                    (m.entries[i][j] - want.entries[i][j]).norm() < 1e-6,
                    "entry ({i},{j}): {} vs {}",
                    m.entries[i][j],
                    want.entries[i][j]
                );
            }
        }
        // eigenvalues of the triangular matrix: {xi, 1}
        let evs = m.eigenvalues();
        let want = [p.xi(), C64::new(1.0, 0.0)];
        assert!(eigenvalue_set_distance(&evs, &want) < 1e-6);
    }

    #[test]
    fn xi_depends_only_on_mu_mod_z() {
        let p1 = params();
        let p2 = HGParams::new(rat(1, 3), rat(1, 5), rat(9, 2), 2).unwrap();
        let m1 = monodromy_at_zero(&p1, 1e-10).unwrap();
        let m2 = monodromy_at_zero(&p2, 1e-10).unwrap();
        assert!((m1.entries[0][0] - m2.entries[0][0]).norm() < 1e-8);
    }

    #[test]
    fn infinity_loop_eigenvalues() {
        let p = params();
        let m = monodromy_at_infinity(&p, 1e-10).unwrap();
        let want = expected_infinity_eigenvalues(&p);
        assert!(eigenvalue_set_distance(&m.eigenvalues(), &want) < 1e-6);
    }

    #[test]
    fn loop_product_is_identity() {
        let p = params();
        let m0 = monodromy_at_zero(&p, 1e-10).unwrap();
        let m1 = monodromy_at_one(&p, 1e-10).unwrap();
        let mi = monodromy_at_infinity(&p, 1e-10).unwrap();
        let prod = mi.mul(&m1).mul(&m0);
        assert!(
            prod.max_deviation_from_identity() < 1e-5,
            "{:?}",
            prod.entries
        );
        assert!((prod.determinant() - C64::new(1.0, 0.0)).norm() < 1e-5);
    }

    #[test]
    fn h_factor_around_infinity() {
        let p = params();
        let got = h_infinity_factor(&p, 1e-10).unwrap();
        let want = unit_root_pow(&-p.mu().clone());
        assert!((got - want).norm() < 1e-6, "{got} vs {want}");
    }

    #[test]
    fn zero_loop_acts_trivially_on_the_quotient() {
        // continued H still satisfies the same inhomogeneous equation,
        // i.e. H comes back to itself modulo the (F, G) span
        let p = params();
        let r = h_zero_loop_quotient_residual(&p, 1e-10).unwrap();
        assert!(r < 1e-6, "residual {r}");
    }

    #[test]
    fn laurent_residuals() {
        let p = params();
        assert!(laurent_solution_check(&p, C64::new(0.0, 0.0)).unwrap() < 1e-15);
        assert!(laurent_solution_check(&p, C64::new(0.4, 0.0)).unwrap() < 1e-12);
        assert!(laurent_solution_check(&p, C64::new(-0.3, 0.55)).unwrap() < 1e-12);
    }

    #[test]
    fn path_validation() {
        assert!(PathSpec::circle_through(C64::new(0.0, 0.0), C64::new(1.0, 0.0), 1).is_err());
        assert!(PathSpec::polyline(vec![C64::new(-0.5, 0.01), C64::new(0.5, 0.01)]).is_err());
    }

    #[test]
    fn homotopic_loops_agree() {
        let p = params();
        let base = C64::new(0.5, 0.6);
        // two different polyline loops around 0 only
        let square = PathSpec::polyline(vec![
            base,
            C64::new(-0.7, 0.6),
            C64::new(-0.7, -0.45),
            C64::new(0.5, -0.45),
            base,
        ])
        .unwrap();
        let wide = PathSpec::polyline(vec![
            base,
            C64::new(-0.9, 0.8),
            C64::new(-0.9, -0.6),
            C64::new(0.6, -0.6),
            C64::new(0.6, 0.2),
            base,
        ])
        .unwrap();
        let m1 = monodromy_along(&p, &square, 1e-10).unwrap();
        let m2 = monodromy_along(&p, &wide, 1e-10).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((m1.entries[i][j] - m2.entries[i][j]).norm() < 1e-6);
            }
        }
    }
}
