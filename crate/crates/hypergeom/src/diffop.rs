//! Exact differential operators with rational-function coefficients in
//! `lambda`, in either the `d/dlambda` basis or the Euler basis
//! `D = lambda d/dlambda`.
//!
//! Supports composition by the Leibniz rewriting rule, right Euclidean
//! division (used to reduce operators modulo the second-order annihilator),
//! involutive basis changes, and the construction of every named operator
//! of the period and regulator formulas.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gamma::pochhammer_rat;
use crate::params::HGParams;
use crate::poly::Poly;
use crate::ratfun::{RatFun, RatLam};
use crate::scalar::{parse_rat, rat_int, Rat, C64};
use crate::theta::ThetaData;

/// Which first-order generator the powers refer to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OpBasis {
    /// Powers of `d/dlambda`.
    DDLambda,
    /// Powers of `D = lambda d/dlambda`.
    DLambda,
}

impl OpBasis {
    fn label(self) -> &'static str {
        match self {
            OpBasis::DDLambda => "d/dlam",
            OpBasis::DLambda => "lam*d/dlam",
        }
    }

    /// The commutation derivation `[X, f] = d(f)` of the basis generator.
    fn bracket(self, f: &RatLam) -> RatLam {
        match self {
            OpBasis::DDLambda => f.derivative(),
            OpBasis::DLambda => RatLam::x().mul(&f.derivative()),
        }
    }
}

/// Finite-order operator `sum_k c_k(lambda) X^k` with `X` the basis
/// generator; coefficients ascend by order and the leading one is nonzero.
#[derive(Clone, PartialEq, Debug)]
pub struct DiffOperator {
    basis: OpBasis,
    coeffs: Vec<RatLam>,
}

impl DiffOperator {
    pub fn new(basis: OpBasis, mut coeffs: Vec<RatLam>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { basis, coeffs }
    }

    pub fn zero(basis: OpBasis) -> Self {
        Self {
            basis,
            coeffs: vec![],
        }
    }

    pub fn identity(basis: OpBasis) -> Self {
        Self::new(basis, vec![RatLam::one()])
    }

    /// Multiplication by a function (order-zero operator).
    pub fn function(basis: OpBasis, f: RatLam) -> Self {
        Self::new(basis, vec![f])
    }

    /// `c(lambda) X^k`.
    pub fn monomial(basis: OpBasis, c: RatLam, k: usize) -> Self {
        let mut v = vec![RatLam::zero(); k + 1];
        v[k] = c;
        Self::new(basis, v)
    }

    pub fn basis(&self) -> OpBasis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order of the operator; `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> RatLam {
        self.coeffs.get(k).cloned().unwrap_or_else(RatLam::zero)
    }

    pub fn coeffs(&self) -> &[RatLam] {
        &self.coeffs
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_basis(o)?;
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|k| self.coeff(k).add(&o.coeff(k))).collect();
        Ok(Self::new(self.basis, v))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check_basis(o)?;
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|k| self.coeff(k).sub(&o.coeff(k))).collect();
        Ok(Self::new(self.basis, v))
    }

    pub fn scale(&self, c: &RatLam) -> Self {
        Self::new(self.basis, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    fn check_basis(&self, o: &Self) -> Result<()> {
        if self.basis != o.basis {
            return Err(Error::Invalid(format!(
                "operator basis mismatch: {} vs {}",
                self.basis.label(),
                o.basis.label()
            )));
        }
        Ok(())
    }

    /// Operator product `self . o` (apply `o` first), by the rewriting
    /// rule `X . f = f X + d(f)`.
    pub fn compose(&self, o: &Self) -> Result<Self> {
        self.check_basis(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero(self.basis));
        }
        // powers[i] = X^i . o
        let mut acc = Self::zero(self.basis);
        let mut xi_o = o.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                xi_o = xi_o.left_mul_generator();
            }
            if !a.is_zero() {
                acc = acc.add(&xi_o.scale(a))?;
            }
        }
        Ok(acc)
    }

    /// `X . self` expanded in the same basis.
    fn left_mul_generator(&self) -> Self {
        let mut v = vec![RatLam::zero(); self.coeffs.len() + 1];
        for (j, b) in self.coeffs.iter().enumerate() {
            // X . (b X^j) = b X^{j+1} + d(b) X^j
            v[j + 1] = v[j + 1].add(b);
            v[j] = v[j].add(&self.basis.bracket(b));
        }
        Self::new(self.basis, v)
    }

    /// Right Euclidean division: `self = quotient . d + remainder` with
    /// `order(remainder) < order(d)`. Exact.
    pub fn right_divide(&self, d: &Self) -> Result<(Self, Self)> {
        self.check_basis(d)?;
        let d_ord = d
            .order()
            .ok_or_else(|| Error::Invalid("division by the zero operator".into()))?;
        let d_lead = d.coeff(d_ord);
        let mut rem = self.clone();
        let mut quot = Self::zero(self.basis);
        while let Some(r_ord) = rem.order() {
            if r_ord < d_ord {
                break;
            }
            let c = rem.coeff(r_ord).div(&d_lead);
            let t = Self::monomial(self.basis, c, r_ord - d_ord);
            rem = rem.sub(&t.compose(d)?)?;
            quot = quot.add(&t)?;
        }
        Ok((quot, rem))
    }

    /// Rewrite in the other basis; `to_basis` is involutive up to exact
    /// equality.
    pub fn to_basis(&self, target: OpBasis) -> Self {
        if self.basis == target || self.is_zero() {
            return Self {
                basis: target,
                coeffs: self.coeffs.clone(),
            };
        }
        // generator of the source basis expressed in the target basis:
        //   D = lambda * d/dlam        (DLambda source)
        //   d/dlam = (1/lambda) * D    (DDLambda source)
        let gen_in_target = match self.basis {
            OpBasis::DLambda => Self::monomial(target, RatLam::x(), 1),
            OpBasis::DDLambda => Self::monomial(target, RatLam::one().div(&RatLam::x()), 1),
        };
        let mut acc = Self::zero(target);
        let mut power = Self::identity(target);
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = gen_in_target.compose(&power).expect("same basis");
            }
            if !a.is_zero() {
                acc = acc.add(&power.scale(a)).expect("same basis");
            }
        }
        acc
    }

    /// Apply to a function given its derivative stack
    /// `[f, f', f'', ...]` at one point; requires the `d/dlambda` basis.
    pub fn apply_with_derivatives(&self, lam: C64, derivs: &[C64]) -> Result<C64> {
        if self.basis != OpBasis::DDLambda {
            return Err(Error::Invalid(
                "apply_with_derivatives needs the d/dlambda basis".into(),
            ));
        }
        if derivs.len() < self.coeffs.len() {
            return Err(Error::Invalid(format!(
                "operator of order {} needs {} derivatives, got {}",
                self.coeffs.len() - 1,
                self.coeffs.len(),
                derivs.len()
            )));
        }
        let mut acc = C64::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += c.eval_c64(lam) * derivs[k];
            }
        }
        Ok(acc)
    }

    /// True when every coefficient has poles at most at `lambda = 0, 1`.
    pub fn poles_only_at_zero_one(&self) -> bool {
        self.coeffs.iter().all(|c| c.poles_only_at_zero_one())
    }

    /// Text form `q(lam) + r(lam)*d + ...` used by the CLI.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let d = match self.basis {
            OpBasis::DDLambda => "d",
            OpBasis::DLambda => "D",
        };
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string_var("lam");
            let term = match k {
                0 => format!("({cs})"),
                1 => format!("({cs})*{d}"),
                _ => format!("({cs})*{d}^{k}"),
            };
            parts.push(term);
        }
        parts.join(" + ")
    }

    /// JSON form: coefficient fraction strings, ascending numerator and
    /// denominator coefficients per derivative order.
    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self
            .coeffs
            .iter()
            .map(|c| {
                json!({
                    "num": poly_strings(c.num()),
                    "den": poly_strings(c.den()),
                })
            })
            .collect();
        json!({ "basis": self.basis.label(), "coeffs": coeffs })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let basis = match v.get("basis").and_then(Value::as_str) {
            Some("d/dlam") => OpBasis::DDLambda,
            Some("lam*d/dlam") => OpBasis::DLambda,
            other => return Err(Error::Invalid(format!("unknown operator basis {other:?}"))),
        };
        let list = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Invalid("operator JSON lacks coeffs".into()))?;
        let mut coeffs = Vec::with_capacity(list.len());
        for c in list {
            let num = strings_poly(c.get("num"))?;
            let den = strings_poly(c.get("den"))?;
            if den.is_zero() {
                return Err(Error::Invalid("zero denominator in operator JSON".into()));
            }
            coeffs.push(RatFun::new(num, den));
        }
        Ok(Self::new(basis, coeffs))
    }
}

fn poly_strings(p: &Poly<Rat>) -> Vec<String> {
    p.coeffs()
        .iter()
        .map(crate::scalar::rat_to_string)
        .collect()
}

fn strings_poly(v: Option<&Value>) -> Result<Poly<Rat>> {
    let arr = v
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Invalid("operator JSON coefficient is not an array".into()))?;
    let mut cs = Vec::with_capacity(arr.len());
    for s in arr {
        let s = s
            .as_str()
            .ok_or_else(|| Error::Invalid("operator JSON coefficient entry not a string".into()))?;
        cs.push(parse_rat(s)?);
    }
    Ok(Poly::new(cs))
}

fn ratlam_const(r: Rat) -> RatLam {
    RatFun::constant(r)
}

fn poly_lam(cs: Vec<Rat>) -> RatLam {
    RatFun::from_poly(Poly::new(cs))
}

/// The second-order annihilator of the period functions:
///
/// ```text
/// lam(1-lam) d^2 + {alpha+beta-mu - (alpha+beta-2mu+1) lam} d
///                - (alpha-mu)(beta-mu)
/// ```
pub fn build_d(p: &HGParams) -> DiffOperator {
    build_d_for_mu(p.alpha(), p.beta(), p.mu())
}

/// Same operator for an explicitly shifted `mu`.
pub fn build_d_for_mu(alpha: &Rat, beta: &Rat, mu: &Rat) -> DiffOperator {
    let ab = alpha + beta;
    let c2 = poly_lam(vec![rat_int(0), rat_int(1), rat_int(-1)]); // lam - lam^2
    let c1 = poly_lam(vec![&ab - mu, -(&ab - &(mu * rat_int(2)) + rat_int(1))]);
    let c0 = ratlam_const(-((alpha - mu) * (beta - mu)));
    DiffOperator::new(OpBasis::DDLambda, vec![c0, c1, c2])
}

/// The Euler-basis hypergeometric operator
/// `D(D - mu + alpha + beta - 1) - lam (D + alpha - mu)(D + beta - mu)`;
/// equals `lam * build_d` exactly.
pub fn build_p_hg(p: &HGParams) -> DiffOperator {
    let (alpha, beta, mu) = (p.alpha(), p.beta(), p.mu());
    let ab = alpha + beta;
    // order 2: 1 - lam
    let c2 = poly_lam(vec![rat_int(1), rat_int(-1)]);
    // order 1: (alpha+beta-mu-1) - (alpha+beta-2mu) lam
    let c1 = poly_lam(vec![&ab - mu - rat_int(1), -(&ab - &(mu * rat_int(2)))]);
    // order 0: -lam (alpha-mu)(beta-mu)
    let c0 = poly_lam(vec![Rat::from(rat_int(0)), -((alpha - mu) * (beta - mu))]);
    DiffOperator::new(OpBasis::DLambda, vec![c0, c1, c2])
}

/// `theta_lam = (1 - lam) D + (mu - 1) lam` in the Euler basis.
pub fn build_theta_lambda(p: &HGParams) -> DiffOperator {
    let mu = p.mu();
    let c1 = poly_lam(vec![rat_int(1), rat_int(-1)]);
    let c0 = poly_lam(vec![rat_int(0), mu - rat_int(1)]);
    DiffOperator::new(OpBasis::DLambda, vec![c0, c1])
}

/// `Q = theta_lam . P` (order 3).
pub fn build_q_hg(p: &HGParams) -> Result<DiffOperator> {
    build_theta_lambda(p).compose(&build_p_hg(p))
}

/// The order-(N+1) operator turning `F_{mu+N}` into the weighted sum
/// `(1/l) sum_i (a_i + b_i d) F_{mu+i}` via the derivative recurrence.
pub fn build_theta1(p: &HGParams, td: &ThetaData, n: usize) -> DiffOperator {
    let mu = p.mu();
    let poch_n = pochhammer_rat(mu, n as u32);
    let inv_l = Rat::new(1.into(), p.l().into());
    let mut acc = DiffOperator::zero(OpBasis::DDLambda);
    for i in 0..=n {
        let w = &pochhammer_rat(mu, i as u32) / &poch_n * &inv_l;
        let ai = RatFun::from_poly(td.a(i)).mul(&ratlam_const(w.clone()));
        let bi = RatFun::from_poly(td.b(i)).mul(&ratlam_const(w));
        acc = acc
            .add(&DiffOperator::monomial(OpBasis::DDLambda, ai, n - i))
            .and_then(|a| a.add(&DiffOperator::monomial(OpBasis::DDLambda, bi, n + 1 - i)))
            .expect("same basis");
    }
    acc
}

/// One raising step: maps `F_{mu+j}` to `F_{mu+j+1}` exactly,
///
/// ```text
/// S_j = (mu+j) / ((alpha-mu-j-1)(beta-mu-j-1))
///       * ( c_{mu+j+1}(lam) + lam(1-lam) d )
/// ```
///
/// with `c_m(lam)` the first-order coefficient of the annihilator at
/// level `m`.
pub fn build_theta2_step(p: &HGParams, j: i64) -> Result<DiffOperator> {
    let (alpha, beta, mu) = (p.alpha(), p.beta(), p.mu());
    let m = mu + rat_int(j + 1);
    let divisor = (alpha - &m) * (beta - &m);
    if divisor == rat_int(0) {
        return Err(Error::Degenerate(format!(
            "raising step divisor (alpha-mu-{})(beta-mu-{}) vanished",
            j + 1,
            j + 1
        )));
    }
    let scale = (mu + rat_int(j)) / divisor;
    let ab = alpha + beta;
    let c_lin = poly_lam(vec![&ab - &m, -(&ab - &(&m * rat_int(2)) + rat_int(1))]);
    let c_quad = poly_lam(vec![rat_int(0), rat_int(1), rat_int(-1)]);
    let step = DiffOperator::new(OpBasis::DDLambda, vec![c_lin, c_quad]);
    Ok(step.scale(&ratlam_const(scale)))
}

/// `Theta_2 = S_{N-1} . ... . S_0`, so `F_{mu+N} = Theta_2 F_mu`.
pub fn build_theta2(p: &HGParams, n: usize) -> Result<DiffOperator> {
    let mut acc = DiffOperator::identity(OpBasis::DDLambda);
    for j in 0..n as i64 {
        acc = build_theta2_step(p, j)?.compose(&acc)?;
    }
    Ok(acc)
}

/// The first-order operator of the period formula: the remainder of
/// `Theta_1 . Theta_2` under right division by the annihilator. Its
/// coefficients live in `Q[lam, 1/(lam(lam-1))]`.
pub fn build_theta(p: &HGParams, td: &ThetaData, n: usize) -> Result<DiffOperator> {
    if n < td.n() {
        return Err(Error::Invalid(format!(
            "truncation order N = {n} is below the exhaustive bound {}",
            td.n()
        )));
    }
    let t1 = build_theta1(p, td, n);
    let t2 = build_theta2(p, n)?;
    let product = t1.compose(&t2)?;
    let (_, rem) = product.right_divide(&build_d(p))?;
    Ok(rem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn params() -> HGParams {
        HGParams::new(rat(1, 3), rat(1, 5), rat(7, 2), 2).unwrap()
    }

    fn lam_poly(cs: &[i64]) -> RatLam {
        poly_lam(cs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn leibniz_rule() {
        // d . lam = lam d + 1
        let d = DiffOperator::monomial(OpBasis::DDLambda, RatLam::one(), 1);
        let f = DiffOperator::function(OpBasis::DDLambda, RatLam::x());
        let got = d.compose(&f).unwrap();
        let want = DiffOperator::new(OpBasis::DDLambda, vec![RatLam::one(), RatLam::x()]);
        assert_eq!(got, want);
    }

    #[test]
    fn compose_with_identity() {
        let l = build_d(&params());
        let id = DiffOperator::identity(OpBasis::DDLambda);
        assert_eq!(l.compose(&id).unwrap(), l);
        assert_eq!(id.compose(&l).unwrap(), l);
    }

    #[test]
    fn d_applied_to_monomials() {
        // apply D to lam^n via the derivative stack of lam^n at a point and
        // compare with the hand expansion for n = 0, 1, 2
        let p = params();
        let op = build_d(&p);
        let lam = C64::new(0.37, 0.21);
        let (a, b, m) = (p.alpha_f64(), p.beta_f64(), p.mu_f64());
        let c1 = |l: C64| C64::new(a + b - m, 0.0) - C64::new(a + b - 2.0 * m + 1.0, 0.0) * l;
        let c0 = -C64::new((a - m) * (b - m), 0.0);
        for n in 0..3u32 {
            let derivs = [
                lam.powu(n),
                if n >= 1 {
                    C64::new(n as f64, 0.0) * lam.powu(n - 1)
                } else {
                    C64::new(0.0, 0.0)
                },
                if n >= 2 {
                    C64::new((n * (n - 1)) as f64, 0.0) * lam.powu(n - 2)
                } else {
                    C64::new(0.0, 0.0)
                },
            ];
            let got = op.apply_with_derivatives(lam, &derivs).unwrap();
            let want =
                lam * (C64::new(1.0, 0.0) - lam) * derivs[2] + c1(lam) * derivs[1] + c0 * derivs[0];
            assert!((got - want).norm() < 1e-13);
        }
    }

    #[test]
    fn p_hg_is_lambda_times_d() {
        let p = params();
        let lhs = build_p_hg(&p).to_basis(OpBasis::DDLambda);
        let rhs = build_d(&p).scale(&RatLam::x());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn q_hg_orders() {
        let p = params();
        assert_eq!(build_p_hg(&p).order(), Some(2));
        assert_eq!(build_q_hg(&p).unwrap().order(), Some(3));
    }

    #[test]
    fn division_trivia() {
        let p = params();
        let d = build_d(&p);
        let (q, r) = d.right_divide(&d).unwrap();
        assert_eq!(q, DiffOperator::identity(OpBasis::DDLambda));
        assert!(r.is_zero());
        // (d/dlam . D) / D has zero remainder and quotient d/dlam
        let dd = DiffOperator::monomial(OpBasis::DDLambda, RatLam::one(), 1);
        let (q, r) = dd.compose(&d).unwrap().right_divide(&d).unwrap();
        assert_eq!(q, dd);
        assert!(r.is_zero());
    }

    #[test]
    fn division_invariant_random_operators() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let d = build_d(&params());
        for _ in 0..20 {
            let ord = rng.gen_range(0..=5usize);
            let coeffs: Vec<RatLam> = (0..=ord)
                .map(|_| {
                    let c0 = rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4));
                    let c1 = rat(rng.gen_range(-9i64..=9), 1);
                    poly_lam(vec![c0, c1])
                })
                .collect();
            let l = DiffOperator::new(OpBasis::DDLambda, coeffs);
            let (q, r) = l.right_divide(&d).unwrap();
            assert!(r.order().is_none_or(|o| o < 2));
            let back = q.compose(&d).unwrap().add(&r).unwrap();
            assert_eq!(back, l);
        }
    }

    #[test]
    fn basis_round_trip() {
        let p = params();
        for op in [
            build_p_hg(&p),
            build_theta_lambda(&p),
            build_q_hg(&p).unwrap(),
        ] {
            let round = op.to_basis(OpBasis::DDLambda).to_basis(OpBasis::DLambda);
            assert_eq!(round, op);
        }
        let d = build_d(&p);
        assert_eq!(d.to_basis(OpBasis::DLambda).to_basis(OpBasis::DDLambda), d);
    }

    #[test]
    fn theta_is_first_order_with_controlled_poles() {
        let p = params();
        let td = ThetaData::derive(
            Poly::constant(rat_int(1)),
            Poly::new(vec![rat_int(0), rat_int(1), rat_int(-1)]),
        )
        .unwrap();
        let theta = build_theta(&p, &td, td.n()).unwrap();
        assert!(theta.order().is_none_or(|o| o <= 1));
        assert!(theta.poles_only_at_zero_one());
    }

    #[test]
    fn q_hg_application_to_the_families() {
        use crate::functions::{deriv_stack, op_term_scale, Family};
        use crate::series::TruncationPolicy;
        let p = params();
        let policy = TruncationPolicy::default();
        let q = build_q_hg(&p).unwrap().to_basis(OpBasis::DDLambda);
        // F solves the second-order factor, hence also Q
        let lam = C64::new(0.5, 0.0);
        let stack = deriv_stack(Family::FMu, &p, 0, lam, 3, &policy).unwrap();
        let v = q.apply_with_derivatives(lam, &stack).unwrap();
        assert!(v.norm() / op_term_scale(&q, lam, &stack) < 1e-8, "QF = {v}");
        // H is killed by theta_lam composed with the second-order factor
        // (theta_lam annihilates the inhomogeneity); the Euler-form
        // composition instead leaves the explicit value lam (lam-1)^mu
        let theta_d = build_theta_lambda(&p)
            .to_basis(OpBasis::DDLambda)
            .compose(&build_d(&p))
            .unwrap();
        let lam = C64::new(-1.4, 0.0);
        let stack = deriv_stack(Family::HMu, &p, 0, lam, 3, &policy).unwrap();
        let v = theta_d.apply_with_derivatives(lam, &stack).unwrap();
        assert!(
            v.norm() / op_term_scale(&theta_d, lam, &stack) < 1e-8,
            "(theta.D)H = {v}"
        );
        let qv = q.apply_with_derivatives(lam, &stack).unwrap();
        let expect =
            lam * crate::scalar::pow_principal_rat(lam - C64::new(1.0, 0.0), p.mu()).unwrap();
        assert!(
            (qv - expect).norm() / expect.norm() < 1e-8,
            "QH = {qv} vs {expect}"
        );
    }

    #[test]
    fn degenerate_step_rejected() {
        // mu congruent to alpha mod Z cannot be built as HGParams at all,
        // which is exactly the hypothesis protecting the raising steps
        assert!(HGParams::new(rat(1, 2), rat(1, 5), rat(7, 2), 2).is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = params();
        let td = ThetaData::derive(
            Poly::constant(rat_int(1)),
            Poly::new(vec![rat_int(0), rat_int(1), rat_int(-1)]),
        )
        .unwrap();
        for op in [
            build_d(&p),
            build_q_hg(&p).unwrap(),
            build_theta(&p, &td, td.n()).unwrap(),
        ] {
            let v = op.to_json();
            let back = DiffOperator::from_json(&v).unwrap();
            assert_eq!(back, op);
        }
    }

    #[test]
    fn pretty_printer_shape() {
        let op = DiffOperator::new(
            OpBasis::DDLambda,
            vec![
                lam_poly(&[0, 2]),
                RatFun::new(Poly::one(), Poly::new(vec![rat_int(0), rat_int(1)])),
            ],
        );
        assert_eq!(op.pretty(), "(2*lam) + ((1) / (lam))*d");
    }
}
