//! Squared ladder matrix elements ("structure functions") for each algebra
//! family, and unitarity screening.
//!
//! `up(m)` is the squared matrix element of the raising operator from
//! `|j, m>`; `down(m)` that of the lowering operator from `|j, m>`. Unitary
//! representations need `up(m) >= 0` on `m = -j .. j-1`, `up(j) = 0` and
//! `down(-j) = 0`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::coefficients::{phi_eval, AlphaCoeffs};
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::qdeform::{q_bracket, QParam};
use crate::scalar::{ratio, rational_serde, Rational, Real, Scalar};

/// Algebra family of a representation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family<T> {
    /// `phi(x) = sum alpha_k x^k`, spectrum of `J3` unshifted.
    Polynomial { alpha: AlphaCoeffs },
    /// Higgs algebra `[J+, J-] = 2 J3 + 8 beta J3^3` with `J3 -> m + gamma`.
    HiggsShifted {
        #[serde(with = "rational_serde")]
        beta: Rational,
        gamma: T,
    },
    /// Quadratic algebra `[J+, J-] = 2 J3 + 4 alpha J3^2` with `J3 -> m + gamma`.
    QuadraticShifted {
        #[serde(with = "rational_serde")]
        alpha: Rational,
        gamma: T,
    },
    /// Polynomial deformation built on q-numbers, `q = exp(delta)`.
    ///
    /// Coefficients are real here since the usual examples carry factors such
    /// as `1/[2]`.
    QBase { alpha: Vec<T>, delta: T },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureSpec<T> {
    pub family: Family<T>,
    pub j: HalfInt,
}

/// Result of [`admissible`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Admissibility {
    pub admissible: bool,
    /// Weights where the structure function is negative or a boundary
    /// annihilation fails.
    pub offending: Vec<HalfInt>,
}

fn check_range(j: HalfInt, m: HalfInt) -> Result<()> {
    if j.twice < 0 {
        return Err(Error::Domain(format!("spin j must be >= 0, got {j}")));
    }
    if !j.contains(m) {
        return Err(Error::Domain(format!("m = {m} is not on the ladder of j = {j}")));
    }
    Ok(())
}

fn polynomial_raw<T: Scalar>(a: &AlphaCoeffs, j: HalfInt, m: &T) -> T {
    let jj: T = j.to_scalar();
    let u = jj.clone() * (jj + T::one());
    let v = m.clone() * (m.clone() + T::one());
    phi_eval(a, &u) - phi_eval(a, &v)
}

/// `sum_k alpha_k ((j(j+1))^k - (m(m+1))^k)`, exact over [`Rational`].
pub fn f2_polynomial<T: Scalar>(a: &AlphaCoeffs, j: HalfInt, m: HalfInt) -> Result<T> {
    check_range(j, m)?;
    Ok(polynomial_raw(a, j, &m.to_scalar()))
}

/// Lowering counterpart: `F(j, m-1)` (hermiticity); vanishes at `m = -j`.
pub fn f2_polynomial_down<T: Scalar>(a: &AlphaCoeffs, j: HalfInt, m: HalfInt) -> Result<T> {
    check_range(j, m)?;
    Ok(polynomial_raw(a, j, &(m - HalfInt::ONE).to_scalar()))
}

/// `(j-m)(j+m+1+2g)(1 + 2b(j(j+1) + m(m+1) + 2g(j+m+1+g)))`.
pub fn f2_higgs_shifted_up<T: Real>(beta: T, gamma: T, j: HalfInt, m: HalfInt) -> Result<T> {
    check_range(j, m)?;
    Ok(higgs_up_raw(beta, gamma, j.to_scalar(), m.to_scalar()))
}

/// `(j-m+1)(j+m+2g)(1 + 2b(j(j+1) + m(m-1) + 2g(j+m+g)))`.
pub fn f2_higgs_shifted_down<T: Real>(beta: T, gamma: T, j: HalfInt, m: HalfInt) -> Result<T> {
    check_range(j, m)?;
    let (j, m): (T, T) = (j.to_scalar(), m.to_scalar());
    let one = T::one();
    let two = T::int(2);
    Ok((j - m + one)
        * (j + m + two * gamma)
        * (one + two * beta * (j * (j + one) + m * (m - one) + two * gamma * (j + m + gamma))))
}

fn higgs_up_raw<T: Real>(beta: T, gamma: T, j: T, m: T) -> T {
    let one = T::one();
    let two = T::int(2);
    (j - m)
        * (j + m + one + two * gamma)
        * (one + two * beta * (j * (j + one) + m * (m + one) + two * gamma * (j + m + one + gamma)))
}

/// Raising structure function of the shifted quadratic algebra.
pub fn f2_quadratic_up<T: Real>(alpha: T, gamma: T, j: HalfInt, m: HalfInt) -> Result<T> {
    check_range(j, m)?;
    let (j, m): (T, T) = (j.to_scalar(), m.to_scalar());
    let c = |n: i64, d: i64| T::from_rational(&ratio(n, d));
    let g = gamma;
    let inner = c(4, 3) * j * j
        + c(4, 3) * j * m
        + c(4, 3) * m * m
        + c(4, 1) * g * j
        + c(4, 1) * g * m
        + c(2, 1) * j
        + c(2, 1) * m
        + c(4, 1) * g * g
        + c(4, 1) * g
        + c(2, 3);
    Ok((j - m) * (j + m + T::one() + c(2, 1) * g + alpha * inner))
}

/// Lowering structure function of the shifted quadratic algebra.
pub fn f2_quadratic_down<T: Real>(alpha: T, gamma: T, j: HalfInt, m: HalfInt) -> Result<T> {
    check_range(j, m)?;
    let (j, m): (T, T) = (j.to_scalar(), m.to_scalar());
    let c = |n: i64, d: i64| T::from_rational(&ratio(n, d));
    let g = gamma;
    let inner = c(4, 3) * j * j + c(4, 3) * j * m + c(4, 3) * m * m + c(4, 1) * g * j + c(4, 1) * g * m + c(2, 3) * j
        - c(2, 3) * m
        + c(4, 1) * g * g;
    Ok((j - m + T::one()) * (j + m + c(2, 1) * g + alpha * inner))
}

fn qbase_raw<T: Real>(alpha: &[T], qp: QParam<T>, j: T, m: T) -> T {
    let one = T::one();
    let u = q_bracket(j, qp) * q_bracket(j + one, qp);
    let v = q_bracket(m, qp) * q_bracket(m + one, qp);
    let (mut pu, mut pv) = (one, one);
    let mut acc = T::zero();
    for &a in alpha {
        pu *= u;
        pv *= v;
        acc += a * (pu - pv);
    }
    acc
}

/// `sum_k alpha_k (([j][j+1])^k - ([m][m+1])^k)` with `[x] = sinh(delta x)/sinh(delta)`.
pub fn f2_qbase<T: Real>(alpha: &[T], delta: T, j: HalfInt, m: HalfInt) -> Result<T> {
    check_range(j, m)?;
    let qp = QParam::new(delta)?;
    Ok(qbase_raw(alpha, qp, j.to_scalar(), m.to_scalar()))
}

/// Lowering counterpart of [`f2_qbase`], `F(j, m-1)`.
pub fn f2_qbase_down<T: Real>(alpha: &[T], delta: T, j: HalfInt, m: HalfInt) -> Result<T> {
    check_range(j, m)?;
    let qp = QParam::new(delta)?;
    Ok(qbase_raw(alpha, qp, j.to_scalar(), m.to_scalar::<T>() - T::one()))
}

impl<T: Real> StructureSpec<T> {
    pub fn new(family: Family<T>, j: HalfInt) -> Result<Self> {
        if j.twice < 0 {
            return Err(Error::Domain(format!("spin j must be >= 0, got {j}")));
        }
        if let Family::QBase { delta, .. } = &family {
            QParam::new(*delta)?;
        }
        Ok(StructureSpec { family, j })
    }

    pub fn polynomial(alpha: AlphaCoeffs, j: HalfInt) -> Self {
        StructureSpec { family: Family::Polynomial { alpha }, j }
    }

    /// Shift of the `J3` spectrum.
    pub fn gamma(&self) -> T {
        match &self.family {
            Family::HiggsShifted { gamma, .. } | Family::QuadraticShifted { gamma, .. } => *gamma,
            _ => T::zero(),
        }
    }

    /// Squared raising matrix element from `|j, m>`.
    pub fn up(&self, m: HalfInt) -> Result<T> {
        let j = self.j;
        match &self.family {
            Family::Polynomial { alpha } => f2_polynomial(alpha, j, m),
            Family::HiggsShifted { beta, gamma } => f2_higgs_shifted_up(T::from_rational(beta), *gamma, j, m),
            Family::QuadraticShifted { alpha, gamma } => f2_quadratic_up(T::from_rational(alpha), *gamma, j, m),
            Family::QBase { alpha, delta } => f2_qbase(alpha, *delta, j, m),
        }
    }

    /// Squared lowering matrix element from `|j, m>`.
    pub fn down(&self, m: HalfInt) -> Result<T> {
        let j = self.j;
        match &self.family {
            Family::Polynomial { alpha } => f2_polynomial_down(alpha, j, m),
            Family::HiggsShifted { beta, gamma } => f2_higgs_shifted_down(T::from_rational(beta), *gamma, j, m),
            Family::QuadraticShifted { alpha, gamma } => f2_quadratic_down(T::from_rational(alpha), *gamma, j, m),
            Family::QBase { alpha, delta } => f2_qbase_down(alpha, *delta, j, m),
        }
    }

    /// Short family label used in serialized output.
    pub fn family_name(&self) -> &'static str {
        match self.family {
            Family::Polynomial { .. } => "polynomial",
            Family::HiggsShifted { .. } => "higgs_shifted",
            Family::QuadraticShifted { .. } => "quadratic_shifted",
            Family::QBase { .. } => "qbase",
        }
    }
}

/// Unitarity screening of a spec.
///
/// Polynomial specs are screened exactly; the real-valued families use a
/// nonnegativity tolerance of `1e-12` and a boundary-annihilation tolerance
/// of `1e-10` (at `f64`).
pub fn admissible<T: Real>(spec: &StructureSpec<T>) -> Admissibility {
    let j = spec.j;
    let mut offending = Vec::new();
    if let Family::Polynomial { alpha } = &spec.family {
        for m in j.raising_sources() {
            let f: Rational = f2_polynomial(alpha, j, m).expect("m on ladder");
            if f < Rational::zero() {
                offending.push(m);
            }
        }
        // Boundary annihilation is exact for this family.
        return Admissibility { admissible: offending.is_empty(), offending };
    }
    let neg_tol = T::lit(if T::DEFAULT_TOL.as_f64() < 1e-6 { 1e-12 } else { 1e-5 });
    let ann_tol = T::DEFAULT_TOL;
    for m in j.raising_sources() {
        match spec.up(m) {
            Ok(f) if f >= -neg_tol && f.is_finite() => {}
            _ => offending.push(m),
        }
    }
    let top_ok = matches!(spec.up(j), Ok(f) if f.abs() <= ann_tol);
    if !top_ok && !offending.contains(&j) {
        offending.push(j);
    }
    let bottom_ok = matches!(spec.down(-j), Ok(f) if f.abs() <= ann_tol);
    if !bottom_ok && !offending.contains(&(-j)) {
        offending.push(-j);
    }
    offending.sort();
    Admissibility { admissible: offending.is_empty(), offending }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::beta_from_alpha;
    use num_traits::One;

    fn one() -> Rational {
        Rational::one()
    }

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn polynomial_examples() {
        let f: Rational = f2_polynomial(&AlphaCoeffs::identity(), h(1), h(-1)).unwrap();
        assert_eq!(f, one());
        let q = ratio(-3, 10);
        let f: Rational = f2_polynomial(&AlphaCoeffs::higgs(&q), h(1), h(-1)).unwrap();
        assert_eq!(f, one() + &q);
        for tj in 0..8 {
            let f: Rational = f2_polynomial(&AlphaCoeffs::higgs(&q), h(tj), h(tj)).unwrap();
            assert!(f.is_zero());
        }
        assert!(f2_polynomial::<Rational>(&AlphaCoeffs::identity(), h(1), h(3)).is_err());
        assert!(f2_polynomial::<Rational>(&AlphaCoeffs::identity(), h(2), h(1)).is_err());
    }

    #[test]
    fn polynomial_matches_sl2_and_higgs_closed_forms() {
        let b = ratio(1, 7);
        for tj in 0..10 {
            let j = h(tj);
            for m in j.weights() {
                let (jr, mr) = (j.to_rational(), m.to_rational());
                let lin: Rational = f2_polynomial(&AlphaCoeffs::identity(), j, m).unwrap();
                assert_eq!(lin, (&jr - &mr) * (&jr + &mr + one()));
                let hig: Rational = f2_polynomial(&AlphaCoeffs::higgs(&b), j, m).unwrap();
                let expect = (&jr - &mr)
                    * (&jr + &mr + one())
                    * (one() + ratio(2, 1) * &b * (&jr * (&jr + one()) + &mr * (&mr + one())));
                assert_eq!(hig, expect);
            }
        }
    }

    #[test]
    fn ladder_difference_identity() {
        let a = AlphaCoeffs(vec![ratio(1, 1), ratio(-1, 9), ratio(2, 13), ratio(-1, 40)]);
        let b = beta_from_alpha(&a);
        for tj in 0..12 {
            let j = h(tj);
            for m in j.weights().filter(|m| *m != -j) {
                let lhs: Rational = f2_polynomial::<Rational>(&a, j, m - HalfInt::ONE).unwrap()
                    - f2_polynomial::<Rational>(&a, j, m).unwrap();
                assert_eq!(lhs, b.commutator_at(&m.to_rational()));
            }
        }
    }

    #[test]
    fn higgs_shift_examples() {
        let f = f2_higgs_shifted_up(-0.3f64, 0.0, h(1), h(-1)).unwrap();
        assert!((f - 0.7).abs() < 1e-15);
        assert_eq!(f2_higgs_shifted_up(-0.25f64, 0.5, h(1), h(1)).unwrap(), 0.0);
        // At the root gamma = 1/2 of beta = -1/4 the bottom annihilation holds.
        assert!(f2_higgs_shifted_down(-0.25f64, 0.5, h(1), h(-1)).unwrap().abs() < 1e-15);
        assert!(f2_higgs_shifted_up(-0.25f64, 0.5, h(1), h(-1)).unwrap().abs() < 1e-15);
    }

    #[test]
    fn higgs_unshifted_reduces_to_polynomial() {
        let beta = ratio(-1, 20);
        let a = AlphaCoeffs::higgs(&beta);
        for tj in 0..9 {
            let j = h(tj);
            for m in j.weights() {
                let p: f64 = f2_polynomial(&a, j, m).unwrap();
                let s = f2_higgs_shifted_up(-0.05f64, 0.0, j, m).unwrap();
                assert!((p - s).abs() < 1e-12);
                let pd: f64 = f2_polynomial_down(&a, j, m).unwrap();
                let sd = f2_higgs_shifted_down(-0.05f64, 0.0, j, m).unwrap();
                assert!((pd - sd).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn shifted_down_is_up_of_previous() {
        for tj in 1..7 {
            let j = h(tj);
            for m in j.weights().filter(|m| *m != -j) {
                let d = f2_higgs_shifted_down(-0.07f64, 0.31, j, m).unwrap();
                let u = f2_higgs_shifted_up(-0.07f64, 0.31, j, m - HalfInt::ONE).unwrap();
                assert!((d - u).abs() < 1e-12);
                let d = f2_quadratic_down(0.13f64, -0.4, j, m).unwrap();
                let u = f2_quadratic_up(0.13f64, -0.4, j, m - HalfInt::ONE).unwrap();
                assert!((d - u).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn quadratic_examples() {
        for tj in 0..7 {
            let j = h(tj);
            for m in j.weights() {
                let f = f2_quadratic_up(0.0f64, 0.0, j, m).unwrap();
                let (jf, mf) = (j.as_f64(), m.as_f64());
                assert!((f - (jf - mf) * (jf + mf + 1.0)).abs() < 1e-12);
            }
            assert_eq!(f2_quadratic_up(0.3f64, -0.2, j, j).unwrap(), 0.0);
        }
        let up = f2_quadratic_up(0.5f64, -0.5, h(1), h(-1)).unwrap();
        assert!(up >= -1e-15);
        assert!(f2_quadratic_down(0.5f64, -0.5, h(1), h(-1)).unwrap().abs() < 1e-15);
    }

    #[test]
    fn qbase_examples() {
        let d = 0.3;
        for tj in 0..6 {
            assert!(f2_qbase(&[1.0f64], d, h(tj), h(tj)).unwrap().abs() < 1e-12);
        }
        let f = f2_qbase(&[1.0f64], d, h(1), h(-1)).unwrap();
        let qp = QParam::new(d).unwrap();
        // [j][j+1] - [m][m+1] = [j-m][j+m+1] at j = 1/2, m = -1/2.
        assert!((f - q_bracket(1.0, qp) * q_bracket(1.0, qp)).abs() < 1e-12);
        let f = f2_qbase(&[1.0f64], d, h(2), h(0)).unwrap();
        assert!((f - q_bracket(1.0, qp) * q_bracket(2.0, qp)).abs() < 1e-12);
        assert!(f2_qbase(&[1.0f64], 0.0, h(2), h(0)).is_err());
    }

    #[test]
    fn qbase_classical_limit() {
        let a = AlphaCoeffs(vec![ratio(1, 1), ratio(1, 10)]);
        let ar: Vec<f64> = a.to_real();
        for tj in 0..8 {
            let j = h(tj);
            for m in j.weights() {
                let p: f64 = f2_polynomial(&a, j, m).unwrap();
                let q = f2_qbase(&ar, 1e-6, j, m).unwrap();
                assert!((p - q).abs() <= 1e-4 * p.abs().max(1.0));
            }
        }
    }

    #[test]
    fn admissibility_examples() {
        let spec = StructureSpec::<f64>::polynomial(AlphaCoeffs::higgs(&ratio(-3, 10)), h(1));
        assert!(admissible(&spec).admissible);
        let spec = StructureSpec::<f64>::polynomial(AlphaCoeffs::higgs(&ratio(-3, 2)), h(1));
        let adm = admissible(&spec);
        assert!(!adm.admissible);
        assert_eq!(adm.offending, vec![h(-1)]);
        for fam in [
            Family::Polynomial { alpha: AlphaCoeffs::higgs(&ratio(-9, 1)) },
            Family::HiggsShifted { beta: ratio(-9, 1), gamma: 0.0 },
            Family::QuadraticShifted { alpha: ratio(5, 1), gamma: 0.0 },
            Family::QBase { alpha: vec![1.0, -30.0], delta: 0.4 },
        ] {
            assert!(admissible(&StructureSpec::new(fam, HalfInt::ZERO).unwrap()).admissible);
        }
    }

    #[test]
    fn shifted_admissibility_needs_root() {
        // gamma not a root: bottom annihilation fails.
        let spec = StructureSpec::new(Family::HiggsShifted { beta: ratio(-1, 4), gamma: 0.3 }, h(1)).unwrap();
        let adm = admissible(&spec);
        assert!(!adm.admissible);
        assert!(adm.offending.contains(&h(-1)));
        let spec = StructureSpec::new(Family::HiggsShifted { beta: ratio(-1, 4), gamma: 0.5 }, h(1)).unwrap();
        assert!(admissible(&spec).admissible);
    }
}
