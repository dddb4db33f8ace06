//! Assembly of the weighted sums `P_m`, `Q_m`, the 2x2 period matrix, and
//! the evaluator handle exposed by the CLI.
//!
//! `P_m` and `Q_m` are the same sum over the coefficient families with
//! different kernels:
//!
//! ```text
//! P_m = (2 pi i / l) sum_{i=0}^N (a_i + b_i d/dlam) F_{mu+i},   |1-lam| < 1
//! Q_m =        (1/l) sum_{i=0}^N (a_i + b_i d/dlam) H_{mu+i},   |1-lam| > 1
//! ```
//!
//! with `mu = m/l` and all derivatives taken through the exact recurrence.

use crate::diffop::{build_theta, DiffOperator, OpBasis};
use crate::error::{Error, Result};
use crate::functions::{
    apply_op, cauchy_derivative_branchful, default_radius, eval_f1, eval_f2, eval_f3, eval_f_mu,
    eval_g_mu, eval_h_mu, Family,
};
use crate::params::{unit_root_pow, HGParams};
use crate::ratfun::RatLam;
use crate::scalar::{rat_int, rat_to_c64, Rat, C64};
use crate::series::{eval_pfq, HGSeriesSpec, TruncationPolicy};
use crate::theta::ThetaData;

fn c64(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Parameters at level `m`: same `(alpha, beta, l)`, `mu = m/l`. Errors
/// when `m` is not congruent to `k` or violates the level hypotheses.
pub fn params_at_level(p: &HGParams, m: i64) -> Result<HGParams> {
    if (m - p.m()) % p.l() != 0 {
        return Err(Error::Hypothesis(format!(
            "m = {m} must be congruent to k = {} (mod l = {})",
            p.k(),
            p.l()
        )));
    }
    HGParams::new(
        p.alpha().clone(),
        p.beta().clone(),
        Rat::new(m.into(), p.l().into()),
        p.l(),
    )
}

fn weighted_family_sum(
    fam: Family,
    p: &HGParams,
    td: &ThetaData,
    m: i64,
    lam: C64,
    policy: &TruncationPolicy,
) -> Result<C64> {
    let pm = params_at_level(p, m)?;
    let mu = pm.mu();
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..=td.n() {
        let ai = td.a_eval(i, lam);
        let bi = td.b_eval(i, lam);
        let shift = i as i64;
        if ai != C64::new(0.0, 0.0) {
            acc += ai * fam.eval(&pm, shift, lam, policy)?;
        }
        if bi != C64::new(0.0, 0.0) {
            // d/dlam X_{mu+i} = (mu+i-1) X_{mu+i-1}
            let factor = rat_to_c64(&(mu + rat_int(shift - 1)))?;
            acc += bi * factor * fam.eval(&pm, shift - 1, lam, policy)?;
        }
    }
    Ok(acc)
}

/// `P_m(lam)`; needs `m > 0`, `m = k (mod l)` and `|1-lam| < 1`.
pub fn eval_p_m(
    p: &HGParams,
    td: &ThetaData,
    m: i64,
    lam: C64,
    policy: &TruncationPolicy,
) -> Result<C64> {
    if m <= 0 {
        return Err(Error::Hypothesis("P_m needs m > 0".into()));
    }
    let sum = weighted_family_sum(Family::FMu, p, td, m, lam, policy)?;
    let two_pi_i = C64::new(0.0, 2.0 * std::f64::consts::PI);
    Ok(two_pi_i / (p.l() as f64) * sum)
}

/// `Q_m(lam)`; needs `m = k (mod l)` and `|1-lam| > 1`.
pub fn eval_q_m(
    p: &HGParams,
    td: &ThetaData,
    m: i64,
    lam: C64,
    policy: &TruncationPolicy,
) -> Result<C64> {
    if m <= 0 {
        return Err(Error::Hypothesis("Q_m needs m > 0".into()));
    }
    let sum = weighted_family_sum(Family::HMu, p, td, m, lam, policy)?;
    Ok(sum / (p.l() as f64))
}

/// The 2x2 period matrix at level `m` together with its scalar data.
///
/// ```text
/// full(lam) = 2 pi i (1 - zeta^m) diag(1, 1/(mu-1))
///             [[T F_mu, T G_mu], [d T F_mu, d T G_mu]]
///             [[1, xi], [0, 1-xi]]
/// ```
///
/// where `T` is the first-order reduced operator and `zeta` the fixed
/// primitive `l`-th root of unity.
#[derive(Debug)]
pub struct PeriodMatrix {
    level_params: HGParams,
    theta: DiffOperator,
    d_theta: DiffOperator,
    prefactor_zeta: C64,
    xi: C64,
    m: i64,
}

impl PeriodMatrix {
    pub fn level_params(&self) -> &HGParams {
        &self.level_params
    }

    pub fn theta(&self) -> &DiffOperator {
        &self.theta
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    /// `2 pi i (1 - zeta^m)`.
    pub fn prefactor_zeta(&self) -> C64 {
        self.prefactor_zeta
    }

    pub fn xi(&self) -> C64 {
        self.xi
    }

    /// Inner block `[[T F, T G], [d T F, d T G]]` at a lens point.
    pub fn inner_block(&self, lam: C64, policy: &TruncationPolicy) -> Result<[[C64; 2]; 2]> {
        let p = &self.level_params;
        let tf = apply_op(&self.theta, Family::FMu, p, 0, lam, policy)?;
        let tg = apply_op(&self.theta, Family::GMu, p, 0, lam, policy)?;
        let dtf = apply_op(&self.d_theta, Family::FMu, p, 0, lam, policy)?;
        let dtg = apply_op(&self.d_theta, Family::GMu, p, 0, lam, policy)?;
        Ok([[tf, tg], [dtf, dtg]])
    }

    /// Determinant of the inner block relative to the entry scale.
    pub fn inner_det_relative(&self, lam: C64, policy: &TruncationPolicy) -> Result<f64> {
        let b = self.inner_block(lam, policy)?;
        let det = b[0][0] * b[1][1] - b[0][1] * b[1][0];
        let scale = b
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(1e-300f64, f64::max);
        Ok(det.norm() / (scale * scale))
    }

    /// The full matrix with prefactors and the `xi` column mixing.
    pub fn full(&self, lam: C64, policy: &TruncationPolicy) -> Result<[[C64; 2]; 2]> {
        let b = self.inner_block(lam, policy)?;
        let inv_mu_m1 = 1.0 / (self.level_params.mu_f64() - 1.0);
        let rows = [
            [b[0][0], b[0][1]],
            [inv_mu_m1 * b[1][0], inv_mu_m1 * b[1][1]],
        ];
        let xi = self.xi;
        let one = c64(1.0);
        let mut out = [[C64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            // right-multiply by [[1, xi], [0, 1-xi]]
            out[i][0] = rows[i][0];
            out[i][1] = rows[i][0] * xi + rows[i][1] * (one - xi);
            out[i][0] *= self.prefactor_zeta;
            out[i][1] *= self.prefactor_zeta;
        }
        Ok(out)
    }
}

/// Build the period matrix at level `m > l`.
pub fn period_matrix(p: &HGParams, td: &ThetaData, m: i64) -> Result<PeriodMatrix> {
    if m <= p.l() {
        return Err(Error::Hypothesis(format!(
            "period matrix needs m > l, got m = {m}"
        )));
    }
    let level = params_at_level(p, m)?;
    let theta = build_theta(&level, td, td.n())?;
    let d = DiffOperator::monomial(OpBasis::DDLambda, RatLam::one(), 1);
    let d_theta = d.compose(&theta)?;
    let zeta_m = unit_root_pow(&Rat::new(m.into(), p.l().into()));
    let prefactor_zeta = C64::new(0.0, 2.0 * std::f64::consts::PI) * (c64(1.0) - zeta_m);
    Ok(PeriodMatrix {
        xi: level.xi(),
        level_params: level,
        theta,
        d_theta,
        prefactor_zeta,
        m,
    })
}

/// Existential non-degeneracy scan: the first of the admissible levels
/// `m = k + j l`, `j = 1..=5`, whose inner-block determinant stays above
/// the floor on the whole grid.
pub fn scan_nondegenerate_level(
    p: &HGParams,
    td: &ThetaData,
    grid: &[C64],
    floor: f64,
    policy: &TruncationPolicy,
) -> Result<i64> {
    let mut last_err = None;
    for j in 1..=5i64 {
        let m = p.k() + j * p.l();
        let pm = match period_matrix(p, td, m) {
            Ok(pm) => pm,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        let mut ok = true;
        for &lam in grid {
            if pm.inner_det_relative(lam, policy)? <= floor {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(m);
        }
    }
    Err(last_err.unwrap_or_else(|| {
        Error::Degenerate("no admissible level among the first 5 has a nonvanishing block".into())
    }))
}

/// Convergence-domain tag of an evaluator.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DomainTag {
    DiscAt0,
    DiscAt1,
    ExteriorOf1,
    Custom,
}

impl DomainTag {
    pub fn contains(self, lam: C64) -> bool {
        match self {
            DomainTag::DiscAt0 => lam.norm() < 1.0,
            DomainTag::DiscAt1 => (c64(1.0) - lam).norm() < 1.0,
            DomainTag::ExteriorOf1 => (c64(1.0) - lam).norm() > 1.0,
            DomainTag::Custom => true,
        }
    }

    pub fn boundary_distance(self, lam: C64) -> f64 {
        match self {
            DomainTag::DiscAt0 => 1.0 - lam.norm(),
            DomainTag::DiscAt1 => 1.0 - (c64(1.0) - lam).norm(),
            DomainTag::ExteriorOf1 => (c64(1.0) - lam).norm() - 1.0,
            DomainTag::Custom => f64::INFINITY,
        }
    }
}

/// One evaluator: a named function with its parameters and shift.
#[derive(Clone, Debug)]
pub enum FnKind {
    F1 {
        alpha: Rat,
        beta: Rat,
    },
    F2 {
        alpha: Rat,
        beta: Rat,
    },
    F3 {
        alpha: Rat,
        beta: Rat,
    },
    FMu {
        params: HGParams,
        shift: i64,
    },
    GMu {
        params: HGParams,
        shift: i64,
    },
    HMu {
        params: HGParams,
        shift: i64,
    },
    PFqRaw {
        spec: HGSeriesSpec,
    },
    PM {
        params: HGParams,
        td: ThetaData,
        m: i64,
    },
    QM {
        params: HGParams,
        td: ThetaData,
        m: i64,
    },
}

/// Evaluator handle: kind plus the domain it may be evaluated on.
#[derive(Clone, Debug)]
pub struct AnalyticFunction {
    pub kind: FnKind,
    pub domain_tag: DomainTag,
}

impl AnalyticFunction {
    pub fn new(kind: FnKind) -> Self {
        let domain_tag = match &kind {
            FnKind::F1 { .. } | FnKind::F3 { .. } | FnKind::GMu { .. } | FnKind::PFqRaw { .. } => {
                DomainTag::DiscAt0
            }
            FnKind::F2 { .. } | FnKind::FMu { .. } | FnKind::PM { .. } => DomainTag::DiscAt1,
            FnKind::HMu { .. } | FnKind::QM { .. } => DomainTag::ExteriorOf1,
        };
        Self { kind, domain_tag }
    }

    pub fn eval(&self, lam: C64, policy: &TruncationPolicy) -> Result<C64> {
        if !self.domain_tag.contains(lam) {
            return Err(Error::Domain(format!(
                "{lam} is outside the {:?} domain of this evaluator",
                self.domain_tag
            )));
        }
        match &self.kind {
            FnKind::F1 { alpha, beta } => eval_f1(alpha, beta, lam, policy),
            FnKind::F2 { alpha, beta } => eval_f2(alpha, beta, lam, policy),
            FnKind::F3 { alpha, beta } => eval_f3(alpha, beta, lam, policy),
            FnKind::FMu { params, shift } => eval_f_mu(params, *shift, lam, policy),
            FnKind::GMu { params, shift } => eval_g_mu(params, *shift, lam, policy),
            FnKind::HMu { params, shift } => eval_h_mu(params, *shift, lam, policy),
            FnKind::PFqRaw { spec } => Ok(eval_pfq(spec, lam, policy)?.value),
            FnKind::PM { params, td, m } => eval_p_m(params, td, *m, lam, policy),
            FnKind::QM { params, td, m } => eval_q_m(params, td, *m, lam, policy),
        }
    }

    /// Branch-aware Cauchy derivative with the default radius rule
    /// (min(0.05, half distance to the domain boundary), 32 nodes).
    pub fn derivative(&self, lam: C64, policy: &TruncationPolicy) -> Result<C64> {
        let dist = self.domain_tag.boundary_distance(lam);
        if dist <= 0.0 {
            return Err(Error::Domain(
                "differentiation point outside the domain".into(),
            ));
        }
        let r = default_radius(dist);
        let phase = match &self.kind {
            FnKind::FMu { params, .. }
            | FnKind::HMu { params, .. }
            | FnKind::PM { params, .. }
            | FnKind::QM { params, .. } => unit_root_pow(params.mu()),
            _ => c64(1.0),
        };
        cauchy_derivative_branchful(|z| self.eval(z, policy), lam, r, 32, phase)
    }
}
