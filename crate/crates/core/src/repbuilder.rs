//! Dense matrix representations.
//!
//! Basis order is `m = j, j-1, ..., -j`; basis index `i` carries weight
//! `m = j - i`. Raising operators therefore live on the superdiagonal, entry
//! `(i-1, i)` holding the matrix element from `|j, m>`. All phases are
//! positive, so every matrix is real and `J- = J+^T`.
//!
//! On a single irrep the undeformed Casimir is a scalar and `J3` is diagonal,
//! so functions of `(C, J3)` are evaluated by substitution on the diagonal.

use nalgebra::DMatrix;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coefficients::{divided_difference, phi_derivative, phi_eval, AlphaCoeffs};
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::linalg::{diag, diagonal_values, off_diagonal_max, symmetric_apply};
use crate::qdeform::{q_bracket, uq_casimir_matrix, QParam};
use crate::scalar::{rational_serde, Rational, Real, Scalar};
use crate::structure::{admissible, Family, StructureSpec};

/// What a [`MatrixRep`] realizes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RepFamily<T> {
    /// Undeformed sl(2) irrep.
    Sl2,
    /// U_q(sl(2)) irrep, `q = exp(delta)`.
    Uq { delta: T },
    /// Built from a structure function.
    Structure { family: Family<T> },
    /// Quadratic algebra generators expressed through undeformed ones.
    QuadraticExplicit {
        #[serde(with = "rational_serde")]
        alpha: Rational,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixRep<T> {
    pub j: HalfInt,
    pub gamma: T,
    pub family: RepFamily<T>,
    pub j3: DMatrix<T>,
    pub jplus: DMatrix<T>,
    pub jminus: DMatrix<T>,
    pub tol: T,
}

impl<T: Real> MatrixRep<T> {
    pub fn dim(&self) -> usize {
        self.j3.nrows()
    }

    /// Weight labels `m` in basis order.
    pub fn weights(&self) -> Vec<HalfInt> {
        self.j.weights().collect()
    }

    /// `(1/2)(J+ J- + J- J+) + J3^2`.
    pub fn casimir(&self) -> DMatrix<T> {
        (&self.jplus * &self.jminus + &self.jminus * &self.jplus) * T::lit(0.5) + &self.j3 * &self.j3
    }

    /// Raising matrix elements from `|j, m>` for `m = -j .. j-1`, bottom first.
    pub fn raising_entries(&self) -> Vec<T> {
        let d = self.dim();
        (1..d).rev().map(|i| self.jplus[(i - 1, i)]).collect()
    }
}

/// Superdiagonal raising matrix from per-source squared elements.
fn raising_matrix<T: Real>(j: HalfInt, mut f2: impl FnMut(HalfInt) -> Result<T>) -> Result<DMatrix<T>> {
    let d = j.dim();
    let mut jp = DMatrix::zeros(d, d);
    for (i, m) in j.weights().enumerate().skip(1) {
        let v = f2(m)?;
        jp[(i - 1, i)] = v.max(T::zero()).sqrt();
    }
    Ok(jp)
}

fn j3_matrix<T: Real>(j: HalfInt, gamma: T) -> DMatrix<T> {
    let vals: Vec<T> = j.weights().map(|m| m.to_scalar::<T>() + gamma).collect();
    diag(&vals)
}

/// Standard spin-`j` angular momentum matrices.
pub fn build_sl2<T: Real>(j: HalfInt) -> Result<MatrixRep<T>> {
    if j.twice < 0 {
        return Err(Error::Domain(format!("spin j must be >= 0, got {j}")));
    }
    let jt: T = j.to_scalar();
    let jplus = raising_matrix(j, |m| {
        let mt: T = m.to_scalar();
        Ok((jt - mt) * (jt + mt + T::one()))
    })?;
    Ok(MatrixRep {
        j,
        gamma: T::zero(),
        family: RepFamily::Sl2,
        j3: j3_matrix(j, T::zero()),
        jminus: jplus.transpose(),
        jplus,
        tol: T::DEFAULT_TOL,
    })
}

/// Representation of any admissible [`StructureSpec`]:
/// `J3 = diag(m + gamma)`, `J+` from the square root of the up-function.
pub fn build_deformed<T: Real>(spec: &StructureSpec<T>) -> Result<MatrixRep<T>> {
    let adm = admissible(spec);
    if !adm.admissible {
        return Err(Error::Inadmissible {
            reason: format!("{} structure function fails unitarity screening", spec.family_name()),
            offending: adm.offending,
        });
    }
    let jplus = raising_matrix(spec.j, |m| spec.up(m))?;
    let gamma = spec.gamma();
    Ok(MatrixRep {
        j: spec.j,
        gamma,
        family: RepFamily::Structure { family: spec.family.clone() },
        j3: j3_matrix(spec.j, gamma),
        jminus: jplus.transpose(),
        jplus,
        tol: T::DEFAULT_TOL,
    })
}

/// U_q(sl(2)) irrep with raising elements `sqrt([j-m][j+m+1])`.
pub fn build_uq<T: Real>(j: HalfInt, delta: T) -> Result<MatrixRep<T>> {
    let qp = QParam::new(delta)?;
    if j.twice < 0 {
        return Err(Error::Domain(format!("spin j must be >= 0, got {j}")));
    }
    let jt: T = j.to_scalar();
    let jplus = raising_matrix(j, |m| {
        let mt: T = m.to_scalar();
        Ok(q_bracket(jt - mt, qp) * q_bracket(jt + mt + T::one(), qp))
    })?;
    Ok(MatrixRep {
        j,
        gamma: T::zero(),
        family: RepFamily::Uq { delta },
        j3: j3_matrix(j, T::zero()),
        jminus: jplus.transpose(),
        jplus,
        tol: T::DEFAULT_TOL,
    })
}

/// Scalar value of a matrix that must be a multiple of the identity.
fn scalar_value<T: Real>(m: &DMatrix<T>, what: &str, tol: T) -> Result<T> {
    let d = diagonal_values(m);
    if d.is_empty() {
        return Ok(T::zero());
    }
    let mean = d.iter().fold(T::zero(), |a, &b| a + b) / T::int(d.len() as i64);
    let spread = d.iter().fold(T::zero(), |a, &b| a.max((b - mean).abs()));
    let scale = T::one().max(mean.abs());
    if spread > tol * scale || off_diagonal_max(m) > tol * scale {
        return Err(Error::Inconsistent(format!("{what} is not a multiple of the identity")));
    }
    Ok(mean)
}

pub(crate) fn require_undeformed<T: Real>(rep: &MatrixRep<T>) -> Result<()> {
    let lhs = &rep.jplus * &rep.jminus - &rep.jminus * &rep.jplus;
    let res = (lhs - &rep.j3 * T::int(2)).norm();
    if res > rep.tol * T::int(rep.dim().max(1) as i64) {
        return Err(Error::Precondition(format!(
            "expected an undeformed sl(2) irrep, [J+, J-] - 2 J3 has norm {:e}",
            res.as_f64()
        )));
    }
    Ok(())
}

/// `sqrt(value)` honouring the ladder: at the top state the raising operator
/// annihilates anyway, so a negative value there is harmless.
pub(crate) fn ladder_sqrt<T: Real>(value: T, top: bool, tol: T, at: &str) -> Result<T> {
    if value < -tol && !top {
        return Err(Error::Inadmissible {
            reason: format!("negative ladder factor {:e} at {at}", value.as_f64()),
            offending: Vec::new(),
        });
    }
    Ok(value.max(T::zero()).sqrt())
}

/// `J+^ = J+ ((phi(C) - phi(J3(J3+1))) / (C - J3(J3+1)))^(1/2)`, `J-^ = (J+^)^T`.
///
/// The divided difference is expanded as a polynomial, so the removable point
/// `C = J3(J3+1)` (the top state) evaluates to `phi'(C)`.
pub fn deformed_from_undeformed<T: Real>(rep: &MatrixRep<T>, a: &AlphaCoeffs) -> Result<MatrixRep<T>> {
    require_undeformed(rep)?;
    let c = scalar_value(&rep.casimir(), "Casimir", rep.tol)?;
    let mut factors = Vec::with_capacity(rep.dim());
    for i in 0..rep.dim() {
        let m = rep.j3[(i, i)];
        let v = m * (m + T::one());
        let g: T = divided_difference(a, &c, &v);
        let top = (c - v).abs() < T::lit(0.5);
        factors.push(ladder_sqrt(g, top, rep.tol, &format!("m = {}", m.as_f64()))?);
    }
    let jplus = &rep.jplus * diag(&factors);
    Ok(MatrixRep {
        j: rep.j,
        gamma: T::zero(),
        family: RepFamily::Structure { family: Family::Polynomial { alpha: a.clone() } },
        j3: rep.j3.clone(),
        jminus: jplus.transpose(),
        jplus,
        tol: rep.tol,
    })
}

/// Quadratic algebra generators in terms of undeformed ones:
///
/// ```text
/// J3' = J3 - 1/(4a) + sqrt(1 - 16 a^2 C / 3) / (4a)
/// J+' = J+ (2a(2 J3 + 1)/3 + sqrt(1 - 16 a^2 C / 3))^(1/2)
/// J-' = (2a(2 J3 + 1)/3 + sqrt(1 - 16 a^2 C / 3))^(1/2) J-
/// ```
pub fn build_quadratic_explicit<T: Real>(rep: &MatrixRep<T>, alpha: &Rational) -> Result<MatrixRep<T>> {
    require_undeformed(rep)?;
    let a: T = T::from_rational(alpha);
    if a.abs() < T::lit(1e-12) {
        return Err(Error::Domain("quadratic deformation parameter is ~0; use the undeformed representation".into()));
    }
    let c = scalar_value(&rep.casimir(), "Casimir", rep.tol)?;
    let radicand = T::one() - T::lit(16.0 / 3.0) * a * a * c;
    if radicand < T::zero() {
        return Err(Error::Domain(format!(
            "negative radicand 1 - 16 a^2 j(j+1)/3 = {:e}; quadratic bound a <= 3/(2(4j+1)) violated",
            radicand.as_f64()
        )));
    }
    let root = radicand.sqrt();
    let four_a = T::int(4) * a;
    let gamma = (root - T::one()) / four_a;
    let mut factors = Vec::with_capacity(rep.dim());
    for i in 0..rep.dim() {
        let m = rep.j3[(i, i)];
        let g = T::lit(2.0 / 3.0) * a * (T::int(2) * m + T::one()) + root;
        let top = (c - m * (m + T::one())).abs() < T::lit(0.5);
        factors.push(ladder_sqrt(g, top, rep.tol, &format!("m = {}", m.as_f64()))?);
    }
    let f = diag(&factors);
    let jplus = &rep.jplus * &f;
    let jminus = &f * &rep.jminus;
    let shift = DMatrix::identity(rep.dim(), rep.dim()) * gamma;
    Ok(MatrixRep {
        j: rep.j,
        gamma,
        family: RepFamily::QuadraticExplicit { alpha: alpha.clone() },
        j3: &rep.j3 + shift,
        jplus,
        jminus,
        tol: rep.tol,
    })
}

/// `f(J3)` for the (diagonal) `J3` of a rep.
fn apply_j3<T: Real>(rep: &MatrixRep<T>, mut f: impl FnMut(T) -> T) -> Result<DMatrix<T>> {
    if off_diagonal_max(&rep.j3) == T::zero() {
        let v: Vec<T> = diagonal_values(&rep.j3).into_iter().map(&mut f).collect();
        return Ok(diag(&v));
    }
    symmetric_apply(&rep.j3, |x| Ok(f(x)))
}

/// Deformed Casimir `(1/2)(J+J- + J-J+ + phi(J3(J3+1)) + phi(J3(J3-1)))`.
pub fn casimir_matrix<T: Real>(rep: &MatrixRep<T>, a: &AlphaCoeffs) -> Result<DMatrix<T>> {
    let one = T::one();
    let phis = apply_j3(rep, |m| phi_eval(a, &(m * (m + one))) + phi_eval(a, &(m * (m - one))))?;
    Ok((&rep.jplus * &rep.jminus + &rep.jminus * &rep.jplus + phis) * T::lit(0.5))
}

/// Undeformed generators recovered from a U_q irrep through the arcsinh
/// inversion of its Casimir.
pub fn inverse_map_uq<T: Real>(repq: &MatrixRep<T>, delta: T) -> Result<MatrixRep<T>> {
    let qp = QParam::new(delta)?;
    let half = T::lit(0.5);
    let cq = scalar_value(&uq_casimir_matrix(repq, qp), "q-Casimir", repq.tol)?;
    let half_bracket = q_bracket(half, qp);
    let lifted_sq = cq + half_bracket * half_bracket;
    if lifted_sq < T::zero() {
        return Err(Error::Inconsistent(format!("C^ + [1/2]^2 = {:e} is negative", lifted_sq.as_f64())));
    }
    let lifted = lifted_sq.sqrt();
    // s = sqrt(C + 1/4)
    let s = (lifted * delta.sinh()).asinh() / delta;
    let mut factors = Vec::with_capacity(repq.dim());
    for i in 0..repq.dim() {
        let x = repq.j3[(i, i)] + half;
        let num = s * s - x * x;
        let ratio = if num.abs() < half {
            // limit x -> s of (s^2 - x^2)/([s]^2 - [x]^2)
            s / (q_bracket(s, qp) * delta * (delta * s).cosh() / delta.sinh())
        } else {
            let bx = q_bracket(x, qp);
            num / (lifted_sq - bx * bx)
        };
        if !ratio.is_finite() || ratio < T::zero() {
            return Err(Error::Inconsistent(format!(
                "negative argument {:e} under the inverse-map square root",
                ratio.as_f64()
            )));
        }
        factors.push(ratio.sqrt());
    }
    let jplus = &repq.jplus * diag(&factors);
    Ok(MatrixRep {
        j: repq.j,
        gamma: T::zero(),
        family: RepFamily::Sl2,
        j3: repq.j3.clone(),
        jminus: jplus.transpose(),
        jplus,
        tol: repq.tol,
    })
}

/// Samples `phi'` on `[0, upper]`; returns the first point where it is not
/// strictly positive.
pub fn monotonicity_witness(a: &AlphaCoeffs, upper: f64, samples: usize) -> Option<(f64, f64)> {
    let n = samples.max(2);
    (0..n).find_map(|i| {
        let x = upper * i as f64 / (n - 1) as f64;
        let d: f64 = phi_derivative(a, &x);
        (d <= 0.0).then_some((x, d))
    })
}

/// Undeformed generators recovered from a polynomial-family rep when `phi` is
/// bijective on the Casimir interval: `C = phi^-1(C^)` and
/// `J+ = J+^ ((C - J3(J3+1)) / (C^ - phi(J3(J3+1))))^(1/2)`.
pub fn inverse_map_polynomial<T: Real>(rep: &MatrixRep<T>, a: &AlphaCoeffs) -> Result<MatrixRep<T>> {
    let upper = rep.j.casimir();
    let upper_f: f64 = f64::from_rational(&upper);
    if let Some((witness, derivative)) = monotonicity_witness(a, upper_f, 4097) {
        return Err(Error::NotBijective { witness, derivative, upper: upper_f });
    }
    let ch = scalar_value(&casimir_matrix(rep, a)?, "deformed Casimir", rep.tol)?;
    let c = invert_phi(a, ch, T::lit(upper_f))?;
    let mut factors = Vec::with_capacity(rep.dim());
    for i in 0..rep.dim() {
        let m = rep.j3[(i, i)];
        let v = m * (m + T::one());
        // (C - v) / (phi(C) - phi(v)) = 1 / divided difference
        let dd: T = divided_difference(a, &c, &v);
        let top = (c - v).abs() < T::lit(0.5);
        if dd <= T::zero() {
            if top {
                factors.push(T::zero());
                continue;
            }
            return Err(Error::Inconsistent(format!(
                "deformation divided difference {:e} <= 0 at m = {}",
                dd.as_f64(),
                m.as_f64()
            )));
        }
        factors.push((T::one() / dd).sqrt());
    }
    let jplus = &rep.jplus * diag(&factors);
    Ok(MatrixRep {
        j: rep.j,
        gamma: T::zero(),
        family: RepFamily::Sl2,
        j3: rep.j3.clone(),
        jminus: jplus.transpose(),
        jplus,
        tol: rep.tol,
    })
}

/// Bisection for `phi(c) = target` on `[0, upper (1 + 1e-6) + 1e-9]`.
fn invert_phi<T: Real>(a: &AlphaCoeffs, target: T, upper: T) -> Result<T> {
    let mut lo = T::zero();
    let mut hi = upper * T::lit(1.0 + 1e-6) + T::lit(1e-9);
    let f = |x: T| phi_eval(a, &x) - target;
    if f(lo) > T::DEFAULT_TOL || f(hi) < -T::DEFAULT_TOL {
        return Err(Error::Inconsistent(format!("deformed Casimir {:e} is outside phi([0, j(j+1)])", target.as_f64())));
    }
    for _ in 0..200 {
        let mid = (lo + hi) * T::lit(0.5);
        if mid == lo || mid == hi {
            break;
        }
        if f(mid) < T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) * T::lit(0.5))
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de>"))]
struct RepMatricesJson<T> {
    j3: Vec<Vec<T>>,
    jplus: Vec<Vec<T>>,
    jminus: Vec<Vec<T>>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de>"))]
struct RepJson<T> {
    dim: usize,
    two_j: i64,
    gamma: T,
    family: RepFamily<T>,
    tol: T,
    matrices: RepMatricesJson<T>,
}

fn rows<T: Real>(m: &DMatrix<T>) -> Vec<Vec<T>> {
    (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| m[(r, c)]).collect()).collect()
}

fn from_rows<T: Real>(rows: &[Vec<T>], dim: usize) -> std::result::Result<DMatrix<T>, String> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(format!("matrix is not {dim}x{dim}"));
    }
    Ok(DMatrix::from_fn(dim, dim, |r, c| rows[r][c]))
}

/// JSON layout: `{dim, two_j, gamma, family, tol, matrices: {j3, jplus, jminus}}`,
/// matrices as arrays of rows.
impl<T: Real + Serialize> Serialize for MatrixRep<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RepJson {
            dim: self.dim(),
            two_j: self.j.twice,
            gamma: self.gamma,
            family: self.family.clone(),
            tol: self.tol,
            matrices: RepMatricesJson { j3: rows(&self.j3), jplus: rows(&self.jplus), jminus: rows(&self.jminus) },
        }
        .serialize(s)
    }
}

impl<'de, T: Real + Deserialize<'de>> Deserialize<'de> for MatrixRep<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RepJson::<T>::deserialize(d)?;
        if raw.dim as i64 != raw.two_j + 1 {
            return Err(D::Error::custom("dim must equal two_j + 1"));
        }
        let m = |r: &[Vec<T>]| from_rows(r, raw.dim).map_err(D::Error::custom);
        Ok(MatrixRep {
            j: HalfInt::from_twice(raw.two_j),
            gamma: raw.gamma,
            j3: m(&raw.matrices.j3)?,
            jplus: m(&raw.matrices.jplus)?,
            jminus: m(&raw.matrices.jminus)?,
            family: raw.family,
            tol: raw.tol,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::commutator;
    use crate::scalar::ratio;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn sl2_small_cases() {
        let r = build_sl2::<f64>(h(1)).unwrap();
        assert_eq!(r.j3, DMatrix::from_row_slice(2, 2, &[0.5, 0.0, 0.0, -0.5]));
        assert_eq!(r.jplus, DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]));
        let r = build_sl2::<f64>(h(2)).unwrap();
        let s2 = 2f64.sqrt();
        assert!((r.jplus[(0, 1)] - s2).abs() < 1e-15 && (r.jplus[(1, 2)] - s2).abs() < 1e-15);
        let r = build_sl2::<f64>(h(0)).unwrap();
        assert_eq!(r.dim(), 1);
        assert_eq!(r.jplus[(0, 0)], 0.0);
        assert_eq!(r.j3[(0, 0)], 0.0);
    }

    #[test]
    fn sl2_relations() {
        for tj in 0..20 {
            let r = build_sl2::<f64>(h(tj)).unwrap();
            assert!((commutator(&r.jplus, &r.jminus) - &r.j3 * 2.0).norm() <= 1e-14 * (tj as f64 + 1.0));
            assert!((commutator(&r.j3, &r.jplus) - &r.jplus).norm() <= 1e-14);
            assert!((commutator(&r.j3, &r.jminus) + &r.jminus).norm() <= 1e-14);
        }
    }

    #[test]
    fn deformed_examples() {
        for tj in 0..8 {
            let spec = StructureSpec::<f64>::polynomial(AlphaCoeffs::identity(), h(tj));
            assert_eq!(build_deformed(&spec).unwrap().jplus, build_sl2::<f64>(h(tj)).unwrap().jplus);
        }
        let spec = StructureSpec::<f64>::polynomial(AlphaCoeffs::higgs(&ratio(-3, 10)), h(1));
        let r = build_deformed(&spec).unwrap();
        assert!((r.jplus[(0, 1)] - 0.7f64.sqrt()).abs() < 1e-15);
        let spec = StructureSpec::new(Family::HiggsShifted { beta: ratio(-1, 4), gamma: 0.5 }, h(1)).unwrap();
        let r = build_deformed(&spec).unwrap();
        assert_eq!(r.j3, DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]));
        let bad = StructureSpec::<f64>::polynomial(AlphaCoeffs::higgs(&ratio(-3, 2)), h(1));
        match build_deformed(&bad) {
            Err(Error::Inadmissible { offending, .. }) => assert_eq!(offending, vec![h(-1)]),
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn uq_examples() {
        let r = build_uq(h(1), 0.3f64).unwrap();
        assert!((r.jplus[(0, 1)] - 1.0).abs() < 1e-15);
        let r = build_uq(h(2), 0.3f64).unwrap();
        let e = (2.0 * 0.3f64.cosh()).sqrt();
        assert!((r.jplus[(0, 1)] - e).abs() < 1e-14 && (r.jplus[(1, 2)] - e).abs() < 1e-14);
        for tj in 0..9 {
            let q = build_uq(h(tj), 1e-6f64).unwrap();
            let s = build_sl2::<f64>(h(tj)).unwrap();
            assert!((q.jplus - s.jplus).amax() <= 1e-4);
        }
        assert!(build_uq(h(2), 0.0).is_err());
    }

    #[test]
    fn two_routes_agree() {
        let a = AlphaCoeffs::higgs(&ratio(-1, 100));
        for tj in 0..10 {
            let direct = build_deformed(&StructureSpec::<f64>::polynomial(a.clone(), h(tj))).unwrap();
            let via = deformed_from_undeformed(&build_sl2(h(tj)).unwrap(), &a).unwrap();
            assert!((direct.jplus - via.jplus).amax() <= 1e-12);
        }
        let base = build_sl2::<f64>(h(3)).unwrap();
        assert_eq!(deformed_from_undeformed(&base, &AlphaCoeffs::identity()).unwrap().jplus, base.jplus);
    }

    #[test]
    fn removable_point_uses_derivative() {
        // j = 1/2: the top state has C = J3(J3+1) = 3/4.
        let a = AlphaCoeffs::higgs(&ratio(-3, 10));
        let c = ratio(3, 4);
        let g: Rational = divided_difference(&a, &c, &c);
        assert_eq!(g, phi_derivative(&a, &c));
        let via = deformed_from_undeformed(&build_sl2::<f64>(h(1)).unwrap(), &a).unwrap();
        assert!((via.jplus[(0, 1)] - 0.7f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn quadratic_explicit_examples() {
        let base = build_sl2::<f64>(h(1)).unwrap();
        let r = build_quadratic_explicit(&base, &ratio(1, 2)).unwrap();
        assert!((r.j3[(0, 0)] - 0.0).abs() < 1e-12 && (r.j3[(1, 1)] + 1.0).abs() < 1e-12);
        assert!(build_quadratic_explicit(&base, &Rational::from_integer(0.into())).is_err());
        assert!(build_quadratic_explicit(&base, &ratio(2, 1)).is_err());
        let base = build_sl2::<f64>(h(2)).unwrap();
        let r = build_quadratic_explicit(&base, &ratio(1, 5)).unwrap();
        let lhs = commutator(&r.jplus, &r.jminus);
        let rhs = &r.j3 * 2.0 + &r.j3 * &r.j3 * 0.8;
        assert!((lhs - rhs).norm() <= 1e-10);
        assert!((commutator(&r.j3, &r.jplus) - &r.jplus).norm() <= 1e-10);
    }

    #[test]
    fn casimir_examples() {
        let c = casimir_matrix(&build_sl2::<f64>(h(1)).unwrap(), &AlphaCoeffs::identity()).unwrap();
        assert!((c - DMatrix::identity(2, 2) * 0.75).norm() < 1e-15);
        let a = AlphaCoeffs::higgs(&ratio(-3, 10));
        let r = build_deformed(&StructureSpec::<f64>::polynomial(a.clone(), h(1))).unwrap();
        let c = casimir_matrix(&r, &a).unwrap();
        assert!((c - DMatrix::identity(2, 2) * 0.4125).norm() < 1e-12);
        let c = casimir_matrix(&build_sl2::<f64>(h(2)).unwrap(), &AlphaCoeffs::identity()).unwrap();
        assert!((c - DMatrix::identity(3, 3) * 2.0).norm() < 1e-14);
    }

    #[test]
    fn inverse_maps() {
        let q = build_uq(h(2), 0.5f64).unwrap();
        let back = inverse_map_uq(&q, 0.5).unwrap();
        assert!((back.jplus - build_sl2::<f64>(h(2)).unwrap().jplus).amax() <= 1e-10);
        let q = build_uq(h(0), 0.5f64).unwrap();
        assert_eq!(inverse_map_uq(&q, 0.5).unwrap().dim(), 1);
        let q = build_uq(h(3), 1e-6f64).unwrap();
        assert!((inverse_map_uq(&q, 1e-6).unwrap().jplus - &q.jplus).amax() <= 1e-4);

        let a = AlphaCoeffs(vec![ratio(1, 1), ratio(1, 10)]);
        let r = build_deformed(&StructureSpec::<f64>::polynomial(a.clone(), h(2))).unwrap();
        let back = inverse_map_polynomial(&r, &a).unwrap();
        assert!((back.jplus - build_sl2::<f64>(h(2)).unwrap().jplus).amax() <= 1e-10);

        let base = build_sl2::<f64>(h(4)).unwrap();
        assert!((inverse_map_polynomial(&base, &AlphaCoeffs::identity()).unwrap().jplus - &base.jplus).amax() <= 1e-12);

        let a = AlphaCoeffs(vec![ratio(1, 1), ratio(-4, 5)]);
        let r = build_sl2::<f64>(h(3)).unwrap();
        match inverse_map_polynomial(&r, &a) {
            Err(Error::NotBijective { witness, derivative, .. }) => {
                assert!(witness <= 3.75 && derivative <= 0.0);
            }
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn json_layout() {
        let r = build_sl2::<f64>(h(1)).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["dim"], 2);
        assert_eq!(v["two_j"], 1);
        assert_eq!(v["family"]["kind"], "sl2");
        assert_eq!(v["matrices"]["jplus"][0][1], 1.0);
        let back: MatrixRep<f64> = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
