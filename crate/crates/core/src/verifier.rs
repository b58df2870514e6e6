//! Exact and numerical verification with structured reports.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::coefficients::{beta_from_alpha, epsilon_inner_sum, phi_eval, AlphaCoeffs, BetaCoeffs};
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::linalg::{commutator, diag, diagonal_values};
use crate::qdeform::{q_beta_coeffs, q_bracket, QParam};
use crate::repbuilder::MatrixRep;
use crate::scalar::{Rational, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Exact,
    Numeric,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    /// The identity under test.
    pub name: String,
    pub kind: CheckKind,
    pub pass: bool,
    /// Present iff `kind == Numeric`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<f64>,
    /// Nonzero exact difference `lhs - rhs` of a failed exact check.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact_discrepancy: Option<String>,
    pub context: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `lhs == rhs` in exact arithmetic.
    pub fn exact(&mut self, name: &str, context: String, lhs: &Rational, rhs: &Rational) -> bool {
        let diff = lhs - rhs;
        let pass = diff.is_zero();
        self.checks.push(Check {
            name: name.to_string(),
            kind: CheckKind::Exact,
            pass,
            residual: None,
            exact_discrepancy: (!pass).then(|| diff.to_string()),
            context,
        });
        pass
    }

    /// Records an exact check whose outcome was decided elsewhere.
    pub fn exact_flag(&mut self, name: &str, context: String, pass: bool, discrepancy: Option<String>) -> bool {
        self.checks.push(Check {
            name: name.to_string(),
            kind: CheckKind::Exact,
            pass,
            residual: None,
            exact_discrepancy: if pass { None } else { discrepancy },
            context,
        });
        pass
    }

    /// Records `residual <= tol`.
    pub fn numeric(&mut self, name: &str, context: String, residual: f64, tol: f64) -> bool {
        let pass = residual <= tol;
        self.checks.push(Check {
            name: name.to_string(),
            kind: CheckKind::Numeric,
            pass,
            residual: Some(residual),
            exact_discrepancy: None,
            context,
        });
        pass
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().filter_map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn summary(&self) -> Summary {
        let passed = self.checks.iter().filter(|c| c.pass).count();
        Summary { total: self.checks.len(), passed, failed: self.checks.len() - passed }
    }
}

pub const DEFAULT_TOL: f64 = 1e-10;

const LADDER_IDENTITY: &str = "ladder difference F(j,m-1) - F(j,m) = sum_p beta_p (2m)^(2p+1)";

/// Exact check, for every `m = -j+1 .. j`, that consecutive structure
/// function values differ by the commutator polynomial with
/// `beta = beta_from_alpha(a)`.
pub fn exact_recurrence_check(a: &AlphaCoeffs, j: HalfInt) -> VerificationReport {
    let b = beta_from_alpha(a);
    let mut report = VerificationReport::new();
    // F(j, -j-1) = 0 is reached through the same formula, off the ladder.
    let u = phi_eval(a, &j.casimir());
    let f = |m: HalfInt| -> Rational {
        let mr = m.to_rational();
        let v = &mr * (&mr + Rational::from_integer(BigInt::from(1)));
        &u - phi_eval(a, &v)
    };
    for m in j.weights().filter(|&m| m != -j) {
        let lhs = f(m - HalfInt::ONE) - f(m);
        let rhs: Rational = b.commutator_at(&m.to_rational());
        report.exact(LADDER_IDENTITY, format!("j = {j}, m = {m}"), &lhs, &rhs);
    }
    report
}

fn apply_diagonal<T: Real>(m: &DMatrix<T>, f: &dyn Fn(T) -> T) -> DMatrix<T> {
    let v: Vec<T> = diagonal_values(m).into_iter().map(f).collect();
    diag(&v)
}

/// Residuals of `[J+, J-] = rhs(J3)`, `[J3, J+] = J+`, `[J3, J-] = -J-` and
/// `J- = J+^T`, all as Frobenius norms. `J3` must be diagonal.
pub fn relation_residuals<T: Real>(
    rep: &MatrixRep<T>,
    relation: &str,
    rhs: &dyn Fn(T) -> T,
    tol: f64,
) -> VerificationReport {
    let mut report = VerificationReport::new();
    let ctx = format!("j = {}, dim = {}", rep.j, rep.dim());
    let target = apply_diagonal(&rep.j3, rhs);
    let pm = (commutator(&rep.jplus, &rep.jminus) - target).norm().as_f64();
    report.numeric(relation, ctx.clone(), pm, tol);
    let up = (commutator(&rep.j3, &rep.jplus) - &rep.jplus).norm().as_f64();
    report.numeric("[J3, J+] = J+", ctx.clone(), up, tol);
    let down = (commutator(&rep.j3, &rep.jminus) + &rep.jminus).norm().as_f64();
    report.numeric("[J3, J-] = -J-", ctx.clone(), down, tol);
    let herm = (&rep.jminus - rep.jplus.transpose()).norm().as_f64();
    report.numeric("J- = (J+)^T", ctx, herm, tol);
    report
}

/// Defining relations with `[J+, J-] = sum_p beta_p (2 J3)^(2p+1)`.
pub fn commutator_residuals<T: Real>(rep: &MatrixRep<T>, b: &BetaCoeffs, tol: f64) -> VerificationReport {
    let coeffs: Vec<T> = b.to_real();
    let rhs = move |x: T| odd_polynomial(&coeffs, x);
    relation_residuals(rep, "[J+, J-] = sum_p beta_p (2 J3)^(2p+1)", &rhs, tol)
}

/// `sum_p c_p (2x)^(2p+1)`.
pub fn odd_polynomial<T: Real>(c: &[T], x: T) -> T {
    let y = T::int(2) * x;
    let y2 = y * y;
    c.iter().rev().fold(T::zero(), |acc, &cp| acc * y2 + cp) * y
}

/// Quadratic algebra relations, `[J+, J-] = 2 J3 + 4 alpha J3^2`.
pub fn quadratic_residuals<T: Real>(rep: &MatrixRep<T>, alpha: T, tol: f64) -> VerificationReport {
    let rhs = move |x: T| T::int(2) * x + T::int(4) * alpha * x * x;
    relation_residuals(rep, "[J+, J-] = 2 J3 + 4 alpha J3^2", &rhs, tol)
}

/// U_q relations, `[J+, J-] = [2 J3]`.
pub fn uq_residuals<T: Real>(rep: &MatrixRep<T>, qp: QParam<T>, tol: f64) -> VerificationReport {
    let rhs = move |x: T| q_bracket(T::int(2) * x, qp);
    relation_residuals(rep, "[J+, J-] = [2 J3]", &rhs, tol)
}

/// `|LHS - RHS_trunc|` for the q-number expansion of the product `f+ f-`:
/// LHS is `[j-m][j+m+1] / ((j-m)(j+m+1))` written with hyperbolic cosines and
/// RHS the epsilon expansion with the U_q commutator coefficients, truncated
/// after `k = trunc`. The epsilon sums are exact.
pub fn q_series_identity_residual(j: HalfInt, m: HalfInt, delta: f64, trunc: usize) -> Result<f64> {
    if !j.contains(m) {
        return Err(Error::Domain(format!("m = {m} is not on the ladder of j = {j}")));
    }
    if m == j {
        return Err(Error::Precondition("m = j makes the (j - m) denominator vanish".into()));
    }
    let qp = QParam::new(delta)?;
    let (jf, mf) = (j.as_f64(), m.as_f64());
    let lhs = ((delta * (2.0 * jf + 1.0)).cosh() - (delta * (2.0 * mf + 1.0)).cosh())
        / (2.0 * delta.sinh().powi(2) * (jf - mf) * (jf + mf + 1.0));
    let beta = q_beta_coeffs(qp, trunc + 1);
    let u = j.casimir();
    let mr = m.to_rational();
    let v = &mr * (&mr + Rational::from_integer(BigInt::from(1)));
    let mut rhs = beta[0];
    for (k, bk) in beta.iter().enumerate().skip(1) {
        let inner = epsilon_inner_sum(k, &u, &v) * Rational::from_integer(BigInt::from(4).pow(k as u32))
            / Rational::from_integer(BigInt::from(k + 1));
        rhs += bk * inner.to_f64().unwrap_or(f64::NAN);
    }
    Ok((lhs - rhs).abs())
}

/// Structure function of U_q with shifted spectrum `J3 -> m + gamma`:
/// `(q^(-2j+2g-1) + q^(2j-2g+1) - q^(2m+2g+1) - q^(-2m-2g-1)) / (q - 1/q)^2`.
pub fn q_shift_structure(j: f64, m: f64, gamma: f64, qp: QParam<f64>) -> f64 {
    let d = qp.delta;
    let num = 2.0 * (d * (2.0 * j - 2.0 * gamma + 1.0)).cosh() - 2.0 * (d * (2.0 * m + 2.0 * gamma + 1.0)).cosh();
    num / (2.0 * d.sinh()).powi(2)
}

/// All real roots in `[-10, 10]` of the top-state condition `f(j, j; gamma) = 0`
/// (sign scan on a uniform grid, bisection to `1e-12`).
pub fn q_shift_rigidity(j: HalfInt, delta: f64) -> Result<Vec<f64>> {
    let qp = QParam::new(delta)?;
    let jf = j.as_f64();
    let f = |g: f64| q_shift_structure(jf, jf, g, qp);
    const N: usize = 4000;
    let grid = |i: usize| -10.0 + 20.0 * i as f64 / N as f64;
    let mut roots: Vec<f64> = Vec::new();
    let push = |r: f64, roots: &mut Vec<f64>| {
        if roots.iter().all(|&x| (x - r).abs() > 1e-9) {
            roots.push(r);
        }
    };
    let mut prev = f(grid(0));
    if prev == 0.0 {
        push(grid(0), &mut roots);
    }
    for i in 1..=N {
        let x = grid(i);
        let cur = f(x);
        if cur == 0.0 {
            push(x, &mut roots);
        } else if prev != 0.0 && prev.signum() != cur.signum() {
            let (mut lo, mut hi) = (grid(i - 1), x);
            let flo = prev;
            while hi - lo > 1e-12 {
                let mid = 0.5 * (lo + hi);
                let fm = f(mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if fm.signum() == flo.signum() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            push(0.5 * (lo + hi), &mut roots);
        }
        prev = cur;
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repbuilder::{build_deformed, build_sl2, build_uq};
    use crate::scalar::ratio;
    use crate::structure::StructureSpec;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn recurrence_examples() {
        for tj in 0..10 {
            let r = exact_recurrence_check(&AlphaCoeffs::identity(), h(tj));
            assert!(r.all_pass());
            assert_eq!(r.checks.len(), tj as usize);
        }
        assert!(exact_recurrence_check(&AlphaCoeffs::higgs(&ratio(-7, 13)), h(25)).all_pass());
        let r = exact_recurrence_check(&AlphaCoeffs(vec![ratio(0, 1), ratio(0, 1), ratio(1, 1)]), h(3));
        assert!(r.all_pass());
        assert!(r.checks.iter().all(|c| c.kind == CheckKind::Exact && c.residual.is_none()));
    }

    #[test]
    fn commutator_examples() {
        let r = build_sl2::<f64>(h(2)).unwrap();
        let rep = commutator_residuals(&r, &BetaCoeffs(vec![ratio(1, 1)]), 1e-10);
        assert!(rep.all_pass() && rep.max_residual() <= 1e-14);

        let a = AlphaCoeffs::higgs(&ratio(-1, 10));
        let spec = StructureSpec::<f64>::polynomial(a.clone(), h(5));
        let r = build_deformed(&spec);
        // -0.1 is outside the unshifted bound at j = 5/2; pick an admissible value.
        assert!(r.is_err());
        let a = AlphaCoeffs::higgs(&ratio(-1, 100));
        let mut r = build_deformed(&StructureSpec::<f64>::polynomial(a.clone(), h(5))).unwrap();
        let b = beta_from_alpha(&a);
        assert!(commutator_residuals(&r, &b, 1e-10).all_pass());
        r.jplus[(1, 2)] += 1e-6;
        let rep = commutator_residuals(&r, &b, 1e-10);
        assert!(!rep.all_pass());
    }

    #[test]
    fn uq_relation() {
        let qp = QParam::new(0.3).unwrap();
        let r = build_uq(h(4), 0.3).unwrap();
        assert!(uq_residuals(&r, qp, 1e-12).all_pass());
    }

    #[test]
    fn series_identity() {
        assert!(q_series_identity_residual(h(1), h(-1), 0.3, 25).unwrap() <= 1e-8);
        assert!(q_series_identity_residual(h(4), h(0), 1e-3, 2).unwrap() <= 1e-6);
        assert!(q_series_identity_residual(h(5), h(-3), 0.3, 25).unwrap() <= 1e-8);
        assert!(matches!(q_series_identity_residual(h(2), h(2), 0.3, 5), Err(Error::Precondition(_))));
        let coarse = q_series_identity_residual(h(5), h(-5), 0.5, 2).unwrap();
        let fine = q_series_identity_residual(h(5), h(-5), 0.5, 6).unwrap();
        assert!(fine < coarse * 1e-3);
    }

    #[test]
    fn shift_rigidity() {
        assert_eq!(q_shift_rigidity(h(1), 0.3).unwrap(), vec![0.0]);
        let r = q_shift_rigidity(h(4), 1.0).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].abs() <= 1e-12);
        assert!(q_shift_rigidity(h(1), 0.0).is_err());
        let qp = QParam::new(0.4).unwrap();
        for &g in &[0.3, -1.1, 2.0] {
            let top = q_shift_structure(1.5, 1.5, g, qp);
            assert!((top - q_bracket(-2.0 * g, qp) * q_bracket(4.0, qp)).abs() < 1e-10);
        }
        // Unshifted, the formula reduces to [j-m][j+m+1].
        let f = q_shift_structure(2.0, -1.0, 0.0, qp);
        assert!((f - q_bracket(3.0, qp) * q_bracket(2.0, qp)).abs() < 1e-12);
    }

    #[test]
    fn report_serialization() {
        let mut r = VerificationReport::new();
        r.numeric("x", "c".into(), 1e-3, 1e-10);
        r.exact("y", "c".into(), &ratio(1, 2), &ratio(1, 3));
        let s = r.summary();
        assert_eq!((s.total, s.passed, s.failed), (2, 0, 2));
        assert_eq!(r.checks[1].exact_discrepancy.as_deref(), Some("1/6"));
        let back: VerificationReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }
}
