//! q-number utilities and the U_q(sl(2)) specializations.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::linalg::{commutator, diag};
use crate::repbuilder::{build_deformed, build_uq, MatrixRep};
use crate::scalar::Real;
use crate::structure::{admissible, Family, StructureSpec};

/// Deformation parameter, `q = exp(delta)` with `delta` real and nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QParam<T> {
    pub delta: T,
}

impl<T: Real> QParam<T> {
    pub fn new(delta: T) -> Result<Self> {
        if delta == T::zero() || !delta.is_finite() {
            return Err(Error::Domain(format!(
                "q = exp(delta) needs a finite nonzero real delta, got {}",
                delta.as_f64()
            )));
        }
        Ok(QParam { delta })
    }

    pub fn q(self) -> T {
        self.delta.exp()
    }
}

/// `[x] = (q^x - q^-x)/(q - q^-1) = sinh(delta x)/sinh(delta)`.
pub fn q_bracket<T: Real>(x: T, qp: QParam<T>) -> T {
    (qp.delta * x).sinh() / qp.delta.sinh()
}

/// `[[x]_1]_2 ...`, innermost bracket first. Only a scalar helper; no
/// representation family is attached to it.
pub fn nested_bracket<T: Real>(x: T, levels: &[QParam<T>]) -> T {
    levels.iter().fold(x, |acc, &qp| q_bracket(acc, qp))
}

/// Commutator coefficients of U_q(sl(2)) seen as the infinite-order limit,
/// `beta_p = delta^(2p+1) / ((2p+1)! sinh(delta))`, for `p < count`.
pub fn q_beta_coeffs<T: Real>(qp: QParam<T>, count: usize) -> Vec<T> {
    let d = qp.delta;
    let mut out = Vec::with_capacity(count);
    let mut term = d / d.sinh();
    for p in 0..count {
        if p > 0 {
            let k = T::int(2 * p as i64);
            term = term * d * d / (k * (k + T::one()));
        }
        out.push(term);
    }
    out
}

/// q-deformed Casimir built from the matrices of a U_q irrep,
/// `(1/2)(J+J- + J-J+ + [J3][J3+1] + [J3-1][J3])`.
pub fn uq_casimir_matrix<T: Real>(rep: &MatrixRep<T>, qp: QParam<T>) -> DMatrix<T> {
    let half = T::lit(0.5);
    let one = T::one();
    let diag_part: Vec<T> = (0..rep.dim())
        .map(|i| {
            let m = rep.j3[(i, i)];
            q_bracket(m, qp) * q_bracket(m + one, qp) + q_bracket(m - one, qp) * q_bracket(m, qp)
        })
        .collect();
    (&rep.jplus * &rep.jminus + &rep.jminus * &rep.jplus + diag(&diag_part)) * half
}

/// Largest deviation among the U_q Casimir relations on the spin-`j` irrep:
/// `C^ = [j][j+1]`, `sqrt(C^ + [1/2]^2) = [sqrt(C + 1/4)]`, and the inversion
/// `sqrt(C + 1/4) = arcsinh(sqrt(C^ + [1/2]^2) sinh(delta)) / delta`.
pub fn uq_casimir_relation<T: Real>(j: HalfInt, qp: QParam<T>) -> Result<T> {
    let rep = build_uq(j, qp.delta)?;
    let cq = uq_casimir_matrix(&rep, qp);
    let jt: T = j.to_scalar();
    let one = T::one();
    let half = T::lit(0.5);
    let quarter = T::lit(0.25);
    let expected = q_bracket(jt, qp) * q_bracket(jt + one, qp);
    let root_c = (jt * (jt + one) + quarter).sqrt();
    let half_sq = q_bracket(half, qp) * q_bracket(half, qp);
    let mut worst = T::zero();
    for r in 0..rep.dim() {
        for c in 0..rep.dim() {
            let target = if r == c { expected } else { T::zero() };
            worst = worst.max((cq[(r, c)] - target).abs());
        }
        let ch = cq[(r, r)];
        let lifted = (ch + half_sq).sqrt();
        worst = worst.max((lifted - q_bracket(root_c, qp)).abs());
        let inverted = (lifted * qp.delta.sinh()).asinh() / qp.delta;
        worst = worst.max((inverted - root_c).abs());
    }
    Ok(worst)
}

/// `phi(x) = x + beta x^2 / [2]` on the q-base family; returns
/// `||[J+, J-] - [2 J3](1 + beta [J3]^2)||_F`.
pub fn qbase_example_commutator<T: Real>(j: HalfInt, beta: T, qp: QParam<T>) -> Result<T> {
    let two = T::int(2);
    let alpha = vec![T::one(), beta / q_bracket(two, qp)];
    let spec = StructureSpec::new(Family::QBase { alpha, delta: qp.delta }, j)?;
    let adm = admissible(&spec);
    if !adm.admissible {
        return Err(Error::Inadmissible {
            reason: "q-base structure function negative".into(),
            offending: adm.offending,
        });
    }
    let rep = build_deformed(&spec)?;
    let target: Vec<T> = (0..rep.dim())
        .map(|i| {
            let m = rep.j3[(i, i)];
            let bm = q_bracket(m, qp);
            q_bracket(two * m, qp) * (T::one() + beta * bm * bm)
        })
        .collect();
    Ok((commutator(&rep.jplus, &rep.jminus) - diag(&target)).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(d: f64) -> QParam<f64> {
        QParam::new(d).unwrap()
    }

    #[test]
    fn bracket_values() {
        assert!((q_bracket(1.0, qp(0.7)) - 1.0).abs() < 1e-15);
        assert_eq!(q_bracket(0.0, qp(0.7)), 0.0);
        let two = q_bracket(2.0, qp(0.3));
        assert!((two - 2.0 * 0.3f64.cosh()).abs() < 1e-14);
        assert!((two - 2.09067).abs() < 1e-5);
        assert!(QParam::new(0.0).is_err());
        assert!((qp(0.3).q() - 0.3f64.exp()).abs() < 1e-15);
    }

    #[test]
    fn bracket_product_identity() {
        let p = qp(0.37);
        for &(a, b) in &[(0.3, 1.7), (-2.2, 0.4), (3.5, 3.5), (1.25, -0.75)] {
            let lhs = q_bracket(a, p) * q_bracket(b, p);
            let rhs = ((p.delta * (a + b)).cosh() - (p.delta * (a - b)).cosh()) / (2.0 * p.delta.sinh().powi(2));
            assert!((lhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn ladder_bracket_identity() {
        let p = qp(0.5);
        for tj in 0..12 {
            let j = tj as f64 / 2.0;
            for i in 0..=tj {
                let m = j - i as f64;
                let lhs = q_bracket(j, p) * q_bracket(j + 1.0, p) - q_bracket(m, p) * q_bracket(m + 1.0, p);
                let rhs = q_bracket(j - m, p) * q_bracket(j + m + 1.0, p);
                assert!((lhs - rhs).abs() < 1e-12 * lhs.abs().max(1.0));
            }
        }
    }

    #[test]
    fn beta_coefficients() {
        let b = q_beta_coeffs(qp(0.3), 4);
        assert!((b[0] - 0.3 / 0.3f64.sinh()).abs() < 1e-15);
        assert!((b[0] - 0.985).abs() < 1e-3);
        assert!((b[1] / b[0] - 0.09 / 6.0).abs() < 1e-15);
        let b = q_beta_coeffs(qp(1e-8), 3);
        assert!((b[0] - 1.0).abs() < 1e-12);
        assert!(b[1].abs() < 1e-12 && b[2].abs() < 1e-12);
    }

    #[test]
    fn nested_helper() {
        let (a, b) = (qp(0.2), qp(0.5));
        let x = 1.3;
        assert!((nested_bracket(x, &[a, b]) - q_bracket(q_bracket(x, a), b)).abs() < 1e-15);
        assert_eq!(nested_bracket(x, &[]), x);
    }

    #[test]
    fn casimir_relations() {
        assert!(uq_casimir_relation(HalfInt::from_twice(1), qp(0.5)).unwrap() <= 1e-12);
        assert!(uq_casimir_relation(HalfInt::from_twice(6), qp(0.1)).unwrap() <= 1e-12);
        let rep = build_uq(HalfInt::from_twice(4), 1e-4).unwrap();
        let c = uq_casimir_matrix(&rep, qp(1e-4));
        for i in 0..rep.dim() {
            assert!((c[(i, i)] - 6.0).abs() < 1e-6);
        }
    }

    #[test]
    fn qbase_commutator_examples() {
        assert!(qbase_example_commutator(HalfInt::from_twice(2), 0.0, qp(0.3)).unwrap() <= 1e-10);
        assert!(qbase_example_commutator(HalfInt::from_twice(2), 0.2, qp(0.3)).unwrap() <= 1e-10);
        assert!(qbase_example_commutator(HalfInt::from_twice(5), -0.05, qp(0.5)).unwrap() <= 1e-10);
        assert!(matches!(
            qbase_example_commutator(HalfInt::from_twice(4), -5.0, qp(0.5)),
            Err(Error::Inadmissible { .. })
        ));
    }
}
