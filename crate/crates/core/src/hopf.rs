//! Coproducts on tensor products and the Hopf axioms.
//!
//! The undeformed generators carry the primitive, co-commutative coproduct
//! `Delta(X) = X (x) 1 + 1 (x) X`. Deformed generators are functions of
//! `(C, J3)` times ladder operators, so their coproducts are realized by
//! joint functional calculus on `(Delta(C), Delta(J3))`. Product-space
//! indices are `i1 * d2 + i2`.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coefficients::{beta_from_alpha, divided_difference, AlphaCoeffs};
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::linalg::{commutator, identity, off_diagonal_max, swap_permutation};
use crate::repbuilder::{build_quadratic_explicit, build_sl2, ladder_sqrt, require_undeformed, MatrixRep};
use crate::scalar::{Rational, Real};
use crate::verifier::VerificationReport;

/// Generators of the (undeformed) enveloping algebra used in formal sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Gen {
    J3,
    Plus,
    Minus,
    Casimir,
}

impl Gen {
    pub const ALL: [Gen; 4] = [Gen::J3, Gen::Plus, Gen::Minus, Gen::Casimir];

    pub fn symbol(self) -> &'static str {
        match self {
            Gen::J3 => "J3",
            Gen::Plus => "J+",
            Gen::Minus => "J-",
            Gen::Casimir => "C",
        }
    }

    fn matrix<T: Real>(self, rep: &MatrixRep<T>) -> DMatrix<T> {
        match self {
            Gen::J3 => rep.j3.clone(),
            Gen::Plus => rep.jplus.clone(),
            Gen::Minus => rep.jminus.clone(),
            Gen::Casimir => rep.casimir(),
        }
    }
}

/// Product of generators; empty is the unit.
pub type Word = Vec<Gen>;

/// Finite sum of `c * w_1 (x) ... (x) w_r` with rational `c`. Terms with the
/// same factor words are merged and zero terms dropped, so equal tensors
/// compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalTensor {
    rank: usize,
    terms: BTreeMap<Vec<Word>, Rational>,
}

impl FormalTensor {
    pub fn zero(rank: usize) -> Self {
        FormalTensor { rank, terms: BTreeMap::new() }
    }

    pub fn term(factors: Vec<Word>, coeff: Rational) -> Self {
        let mut t = FormalTensor::zero(factors.len());
        t.add_term(factors, coeff);
        t
    }

    /// `1 (x) ... (x) 1`.
    pub fn unit(rank: usize) -> Self {
        FormalTensor::term(vec![Vec::new(); rank], Rational::one())
    }

    pub fn generator(g: Gen) -> Self {
        FormalTensor::term(vec![vec![g]], Rational::one())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Rational)> {
        self.terms.iter()
    }

    fn add_term(&mut self, factors: Vec<Word>, coeff: Rational) {
        assert_eq!(factors.len(), self.rank, "tensor rank mismatch");
        if coeff.is_zero() {
            return;
        }
        let e = self.terms.entry(factors.clone()).or_insert_with(Rational::zero);
        *e += coeff;
        if e.is_zero() {
            self.terms.remove(&factors);
        }
    }

    pub fn add(&self, other: &FormalTensor) -> FormalTensor {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> FormalTensor {
        let mut out = FormalTensor::zero(self.rank);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    /// Factorwise product `(a_1 (x) a_2)(b_1 (x) b_2) = a_1 b_1 (x) a_2 b_2`.
    pub fn mul(&self, other: &FormalTensor) -> FormalTensor {
        assert_eq!(self.rank, other.rank, "tensor rank mismatch");
        let mut out = FormalTensor::zero(self.rank);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let k: Vec<Word> = ka.iter().zip(kb).map(|(a, b)| a.iter().chain(b).copied().collect()).collect();
                out.add_term(k, ca * cb);
            }
        }
        out
    }

    /// `Delta` applied to the factor at `pos`; rank grows by one.
    pub fn delta_at(&self, pos: usize) -> FormalTensor {
        assert!(pos < self.rank);
        let mut out = FormalTensor::zero(self.rank + 1);
        for (k, c) in &self.terms {
            let split = coproduct_word(&k[pos]);
            for (pair, cc) in &split.terms {
                let mut factors = k[..pos].to_vec();
                factors.extend(pair.iter().cloned());
                factors.extend(k[pos + 1..].iter().cloned());
                out.add_term(factors, c * cc);
            }
        }
        out
    }

    /// Counit applied to the factor at `pos`; rank drops by one.
    pub fn counit_at(&self, pos: usize) -> FormalTensor {
        assert!(pos < self.rank);
        let mut out = FormalTensor::zero(self.rank - 1);
        for (k, c) in &self.terms {
            // every generator has counit 0, so only the unit survives
            if k[pos].is_empty() {
                let mut factors = k[..pos].to_vec();
                factors.extend(k[pos + 1..].iter().cloned());
                out.add_term(factors, c.clone());
            }
        }
        out
    }

    /// Matrix of the tensor on `V_1 (x) ... (x) V_r`.
    pub fn evaluate<T: Real>(&self, reps: &[&MatrixRep<T>]) -> Result<DMatrix<T>> {
        if reps.len() != self.rank {
            return Err(Error::Precondition(format!(
                "rank-{} tensor evaluated on {} representations",
                self.rank,
                reps.len()
            )));
        }
        let dim: usize = reps.iter().map(|r| r.dim()).product();
        let mut out = DMatrix::zeros(dim, dim);
        for (k, c) in &self.terms {
            let mut m = DMatrix::from_element(1, 1, T::from_rational(c));
            for (w, rep) in k.iter().zip(reps) {
                let mut f = identity::<T>(rep.dim());
                for g in w {
                    f *= g.matrix(rep);
                }
                m = m.kronecker(&f);
            }
            out += m;
        }
        Ok(out)
    }
}

impl fmt::Display for FormalTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if !c.is_one() {
                write!(f, "({c}) ")?;
            }
            let parts: Vec<String> = k
                .iter()
                .map(|w| {
                    if w.is_empty() {
                        "1".to_string()
                    } else {
                        w.iter().map(|g| g.symbol()).collect::<Vec<_>>().join(" ")
                    }
                })
                .collect();
            write!(f, "{}", parts.join(" (x) "))?;
        }
        Ok(())
    }
}

/// Primitive coproduct of a generator; for the Casimir
/// `C (x) 1 + 1 (x) C + J+ (x) J- + J- (x) J+ + 2 J3 (x) J3`.
pub fn coproduct_gen(g: Gen) -> FormalTensor {
    let one = Rational::one();
    let mut t = FormalTensor::term(vec![vec![g], vec![]], one.clone())
        .add(&FormalTensor::term(vec![vec![], vec![g]], one.clone()));
    if g == Gen::Casimir {
        t = t
            .add(&FormalTensor::term(vec![vec![Gen::Plus], vec![Gen::Minus]], one.clone()))
            .add(&FormalTensor::term(vec![vec![Gen::Minus], vec![Gen::Plus]], one))
            .add(&FormalTensor::term(vec![vec![Gen::J3], vec![Gen::J3]], Rational::from_integer(BigInt::from(2))));
    }
    t
}

/// `Delta` is an algebra map, so a word goes to the product of its letters'
/// coproducts.
pub fn coproduct_word(w: &[Gen]) -> FormalTensor {
    w.iter().fold(FormalTensor::unit(2), |acc, &g| acc.mul(&coproduct_gen(g)))
}

/// Generators on a (possibly reducible) space, with the Casimir matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Generators<T> {
    pub j3: DMatrix<T>,
    pub jplus: DMatrix<T>,
    pub jminus: DMatrix<T>,
    pub casimir: DMatrix<T>,
}

impl<T: Real> Generators<T> {
    pub fn of(rep: &MatrixRep<T>) -> Self {
        Generators { j3: rep.j3.clone(), jplus: rep.jplus.clone(), jminus: rep.jminus.clone(), casimir: rep.casimir() }
    }

    pub fn dim(&self) -> usize {
        self.j3.nrows()
    }

    /// Primitive coproduct realized on `self (x) other`.
    pub fn tensor(&self, other: &Generators<T>) -> Generators<T> {
        let i1 = identity::<T>(self.dim());
        let i2 = identity::<T>(other.dim());
        let prim = |a: &DMatrix<T>, b: &DMatrix<T>| a.kronecker(&i2) + i1.kronecker(b);
        let casimir = prim(&self.casimir, &other.casimir)
            + self.jplus.kronecker(&other.jminus)
            + self.jminus.kronecker(&other.jplus)
            + self.j3.kronecker(&other.j3) * T::int(2);
        Generators {
            j3: prim(&self.j3, &other.j3),
            jplus: prim(&self.jplus, &other.jplus),
            jminus: prim(&self.jminus, &other.jminus),
            casimir,
        }
    }
}

/// Joint eigenvector of `(Delta(C), Delta(J3))`.
#[derive(Clone, Debug, PartialEq)]
pub struct JointEigen<T> {
    pub c: T,
    pub m: T,
    pub vector: DVector<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProductRep<T> {
    /// Irreducible factors, left to right.
    pub factors: Vec<HalfInt>,
    pub gens: Generators<T>,
    pub joint: Vec<JointEigen<T>>,
    /// Two factors with identical matrices, so the swap acts.
    pub same_factors: bool,
    pub tol: T,
}

impl<T: Real> ProductRep<T> {
    pub fn dim(&self) -> usize {
        self.gens.dim()
    }

    /// Joint eigenstructure, diagonalizing `Delta(C)` inside each eigenspace
    /// of the diagonal `Delta(J3)`.
    pub fn from_generators(factors: Vec<HalfInt>, gens: Generators<T>, same_factors: bool, tol: T) -> Result<Self> {
        if off_diagonal_max(&gens.j3) > T::zero() {
            return Err(Error::Precondition("Delta(J3) must be diagonal in the product basis".into()));
        }
        let scale = T::one().max(gens.casimir.amax());
        let comm = commutator(&gens.casimir, &gens.j3).amax();
        if comm > T::lit(1e-12) * scale {
            return Err(Error::Precondition(format!(
                "Delta(C) and Delta(J3) do not commute (residual {:e})",
                comm.as_f64()
            )));
        }
        let n = gens.dim();
        let mvals: Vec<T> = (0..n).map(|i| gens.j3[(i, i)]).collect();
        let mut blocks: Vec<(T, Vec<usize>)> = Vec::new();
        for (i, &m) in mvals.iter().enumerate() {
            match blocks.iter_mut().find(|(v, _)| (*v - m).abs() < T::lit(1e-9)) {
                Some((_, idx)) => idx.push(i),
                None => blocks.push((m, vec![i])),
            }
        }
        let mut joint = Vec::with_capacity(n);
        for (m, idx) in &blocks {
            let k = idx.len();
            let sub = DMatrix::from_fn(k, k, |r, c| gens.casimir[(idx[r], idx[c])]);
            let eig = SymmetricEigen::new(sub);
            for col in 0..k {
                let mut v = DVector::zeros(n);
                for (r, &i) in idx.iter().enumerate() {
                    v[i] = eig.eigenvectors[(r, col)];
                }
                joint.push(JointEigen { c: eig.eigenvalues[col], m: *m, vector: v });
            }
        }
        Ok(ProductRep { factors, gens, joint, same_factors, tol })
    }

    /// Eigenvalues of `Delta(C)`, ascending.
    pub fn casimir_spectrum(&self) -> Vec<T> {
        let mut v: Vec<T> = self.joint.iter().map(|e| e.c).collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        v
    }
}

/// Primitive coproduct on `rep1 (x) rep2`; both must be undeformed irreps.
pub fn primitive_coproduct<T: Real>(rep1: &MatrixRep<T>, rep2: &MatrixRep<T>) -> Result<ProductRep<T>> {
    require_undeformed(rep1)?;
    require_undeformed(rep2)?;
    let same = rep1.j == rep2.j && rep1.jplus == rep2.jplus && rep1.j3 == rep2.j3;
    let gens = Generators::of(rep1).tensor(&Generators::of(rep2));
    ProductRep::from_generators(vec![rep1.j, rep2.j], gens, same, rep1.tol.max(rep2.tol))
}

/// `(J(J+1), 2J+1)` for `|j1-j2| <= J <= j1+j2`, ascending.
pub fn clebsch_gordan_spectrum(j1: HalfInt, j2: HalfInt) -> Vec<(Rational, usize)> {
    let lo = (j1.twice - j2.twice).abs();
    let hi = j1.twice + j2.twice;
    (lo..=hi).step_by(2).map(|t| (HalfInt::from_twice(t).casimir(), (t + 1) as usize)).collect()
}

/// `sum g(c, m) v v^T` over joint eigenpairs.
pub fn joint_calculus<T: Real>(pr: &ProductRep<T>, mut g: impl FnMut(T, T) -> Result<T>) -> Result<DMatrix<T>> {
    let n = pr.dim();
    let mut out = DMatrix::zeros(n, n);
    for e in &pr.joint {
        let val = g(e.c, e.m)?;
        if val != T::zero() {
            out += &e.vector * e.vector.transpose() * val;
        }
    }
    Ok(out)
}

/// Top of the irrep with Casimir `c`: `c = m(m+1)`.
fn is_top<T: Real>(c: T, m: T) -> bool {
    (c - m * (m + T::one())).abs() < T::lit(0.5)
}

/// `sum_p beta_p (2X)^(2p+1)` for a square matrix `X`.
fn odd_poly_matrix<T: Real>(beta: &[T], x: &DMatrix<T>) -> DMatrix<T> {
    let n = x.nrows();
    let y = x * T::int(2);
    let y2 = &y * &y;
    let mut acc = DMatrix::zeros(n, n);
    for &b in beta.iter().rev() {
        acc = &acc * &y2 + identity::<T>(n) * b;
    }
    acc * y
}

/// Frobenius residuals of the ladder relations for a generator triple.
fn relation_residual<T: Real>(j3: &DMatrix<T>, jp: &DMatrix<T>, jm: &DMatrix<T>, rhs: &DMatrix<T>) -> T {
    let a = (commutator(jp, jm) - rhs).norm();
    let b = (commutator(j3, jp) - jp).norm();
    let c = (commutator(j3, jm) + jm).norm();
    a.max(b).max(c)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeformedCoproduct<T> {
    pub j3: DMatrix<T>,
    pub jplus: DMatrix<T>,
    pub jminus: DMatrix<T>,
    /// Homomorphism residual of the source-state ordering.
    pub residual: T,
    /// The same function applied to the left of `Delta(J+)`.
    pub jplus_left: DMatrix<T>,
    pub jminus_left: DMatrix<T>,
    pub residual_left: T,
}

/// `Delta(J+^) = Delta(J+) h(Delta(C), Delta(J3))^(1/2)` with `h` the divided
/// difference `(phi(c) - phi(m(m+1)))/(c - m(m+1))`, evaluated on the state
/// `Delta(J+)` acts on, and `Delta(J-^) = Delta(J+^)^T`.
///
/// The left-ordered variant `h^(1/2) Delta(J+)` is computed alongside; there
/// negative values of `h` are clamped to zero and only its residual is
/// reported.
pub fn deformed_coproduct<T: Real>(pr: &ProductRep<T>, a: &AlphaCoeffs) -> Result<DeformedCoproduct<T>> {
    let tol = pr.tol;
    let factor = joint_calculus(pr, |c, m| {
        let v = m * (m + T::one());
        let h: T = divided_difference(a, &c, &v);
        if h < -tol && !is_top(c, m) {
            return Err(Error::Inadmissible {
                reason: format!(
                    "inadmissible tensor product: divided difference {:e} < 0 at (c, m) = ({}, {})",
                    h.as_f64(),
                    c.as_f64(),
                    m.as_f64()
                ),
                offending: Vec::new(),
            });
        }
        Ok(h.max(T::zero()).sqrt())
    })?;
    let left = joint_calculus(pr, |c, m| {
        let h: T = divided_difference(a, &c, &(m * (m + T::one())));
        Ok(h.max(T::zero()).sqrt())
    })?;
    let g = &pr.gens;
    let jplus = &g.jplus * &factor;
    let jplus_left = &left * &g.jplus;
    let beta: Vec<T> = beta_from_alpha(a).to_real();
    let rhs = odd_poly_matrix(&beta, &g.j3);
    let jminus = jplus.transpose();
    let jminus_left = jplus_left.transpose();
    Ok(DeformedCoproduct {
        residual: relation_residual(&g.j3, &jplus, &jminus, &rhs),
        residual_left: relation_residual(&g.j3, &jplus_left, &jminus_left, &rhs),
        j3: g.j3.clone(),
        jplus,
        jminus,
        jplus_left,
        jminus_left,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticCoproduct<T> {
    pub j3: DMatrix<T>,
    pub jplus: DMatrix<T>,
    pub jminus: DMatrix<T>,
    /// Residual of `[J+, J-] = 2 J3 + 4 alpha J3^2`, `[J3, J+-] = +-J+-`.
    pub residual: T,
}

/// Coproduct of the quadratic generators:
///
/// ```text
/// Delta(J3') = Delta(J3) - 1/(4a) + sqrt(1 - 16 a^2 Delta(C) / 3) / (4a)
/// Delta(J+') = Delta(J+) (2a(2 Delta(J3) + 1)/3 + sqrt(1 - 16 a^2 Delta(C) / 3))^(1/2)
/// Delta(J-') = (2a(2 Delta(J3) + 1)/3 + sqrt(1 - 16 a^2 Delta(C) / 3))^(1/2) Delta(J-)
/// ```
pub fn quadratic_coproduct<T: Real>(pr: &ProductRep<T>, alpha: &Rational) -> Result<QuadraticCoproduct<T>> {
    let a: T = T::from_rational(alpha);
    if a.abs() < T::lit(1e-12) {
        return Err(Error::Domain("quadratic deformation parameter is ~0; use the primitive coproduct".into()));
    }
    let c_max = pr.joint.iter().fold(T::zero(), |acc, e| acc.max(e.c));
    let r_min = T::one() - T::lit(16.0 / 3.0) * a * a * c_max;
    if r_min < -pr.tol {
        return Err(Error::Inadmissible {
            reason: format!(
                "1 - 16 a^2 c / 3 = {:e} < 0 at the largest Delta(C) eigenvalue c = {}; needs |a| <= sqrt(3/(16 c)) = {}",
                r_min.as_f64(),
                c_max.as_f64(),
                (3.0 / (16.0 * c_max.as_f64())).sqrt()
            ),
            offending: Vec::new(),
        });
    }
    let root = |c: T| (T::one() - T::lit(16.0 / 3.0) * a * a * c).max(T::zero()).sqrt();
    let shift = joint_calculus(pr, |c, _| {
        // (-1 + sqrt R)/(4a) without cancellation
        Ok(-T::int(4) * c * a / (T::int(3) * (T::one() + root(c))))
    })?;
    let tol = pr.tol;
    let factor = joint_calculus(pr, |c, m| {
        let g = T::lit(2.0 / 3.0) * a * (T::int(2) * m + T::one()) + root(c);
        ladder_sqrt(g, is_top(c, m), tol, &format!("(c, m) = ({}, {})", c.as_f64(), m.as_f64()))
    })?;
    let g = &pr.gens;
    let j3 = &g.j3 + shift;
    let jplus = &g.jplus * &factor;
    let jminus = &factor * &g.jminus;
    let rhs = &j3 * T::int(2) + &j3 * &j3 * (T::int(4) * a);
    Ok(QuadraticCoproduct { residual: relation_residual(&j3, &jplus, &jminus, &rhs), j3, jplus, jminus })
}

/// `||P X P - X||_F` for the factor swap `P`, per named matrix.
pub fn cocommutativity_check<T: Real>(
    pr: &ProductRep<T>,
    matrices: &[(&str, &DMatrix<T>)],
    tol: f64,
) -> Result<VerificationReport> {
    if !pr.same_factors || pr.factors.len() != 2 {
        return Err(Error::Precondition("co-commutativity needs two equal tensor factors".into()));
    }
    let d = pr.factors[0].dim();
    let p = swap_permutation::<T>(d);
    let mut report = VerificationReport::new();
    for (name, x) in matrices {
        let r = (&p * *x * &p - *x).norm().as_f64();
        report.numeric(
            &format!("swap invariance of {name}"),
            format!("{} (x) {}", pr.factors[0], pr.factors[1]),
            r,
            tol,
        );
    }
    Ok(report)
}

/// `W |m> = (-1)^(j-m) |-m>`, the matrix intertwining `V` and its dual.
pub fn antipode_intertwiner<T: Real>(j: HalfInt) -> DMatrix<T> {
    let d = j.dim();
    let mut w = DMatrix::zeros(d, d);
    for i in 0..d {
        w[(d - 1 - i, i)] = if i % 2 == 0 { T::one() } else { -T::one() };
    }
    w
}

/// The antipode on `End(V)`, `S(A) = W A^T W^-1`.
pub fn antipode_matrix<T: Real>(w: &DMatrix<T>, a: &DMatrix<T>) -> DMatrix<T> {
    w * a.transpose() * w.transpose()
}

/// `m(id (x) S)` and `m(S (x) id)` of an operator on `V (x) V`.
pub fn antipode_contractions<T: Real>(w: &DMatrix<T>, m: &DMatrix<T>) -> (DMatrix<T>, DMatrix<T>) {
    let d = w.nrows();
    let winv = w.transpose();
    let idx = |x: usize, y: usize| x * d + y;
    let mut right = DMatrix::zeros(d, d);
    let mut left = DMatrix::zeros(d, d);
    for a in 0..d {
        for e in 0..d {
            let mut sr = T::zero();
            let mut sl = T::zero();
            for b in 0..d {
                for c in 0..d {
                    for dd in 0..d {
                        sr += m[(idx(a, dd), idx(c, b))] * w[(c, b)] * winv[(dd, e)];
                        sl += w[(a, b)] * winv[(dd, c)] * m[(idx(dd, c), idx(b, e))];
                    }
                }
            }
            right[(a, e)] = sr;
            left[(a, e)] = sl;
        }
    }
    (right, left)
}

/// Hopf axioms for the generators on the irrep `rep`:
///
/// * coassociativity and counit laws as exact formal identities;
/// * the antipode `S(J+-) = -J+-`, `S(J3) = -J3`, `S(C) = C` realized on
///   `End(V)`, and `m(id (x) S) Delta = m(S (x) id) Delta = epsilon` on
///   `V (x) V`;
/// * optionally the same antipode laws for deformed generators, and for the
///   quadratic algebra in addition its printed antipode formulas.
pub fn hopf_axiom_checks<T: Real>(
    rep: &MatrixRep<T>,
    deformed: Option<&AlphaCoeffs>,
    quadratic: Option<&Rational>,
    tol: f64,
) -> Result<VerificationReport> {
    require_undeformed(rep)?;
    let mut report = VerificationReport::new();
    let ctx = format!("j = {}", rep.j);
    for g in Gen::ALL {
        let d = coproduct_gen(g);
        let lhs = d.delta_at(0);
        let rhs = d.delta_at(1);
        let pass = lhs == rhs;
        report.exact_flag(
            "coassociativity (Delta (x) id) Delta = (id (x) Delta) Delta",
            format!("X = {}; {} terms", g.symbol(), lhs.len()),
            pass,
            Some(lhs.add(&rhs.scale(&-Rational::one())).to_string()),
        );
        let x = FormalTensor::generator(g);
        for (side, t) in [("(id (x) eps) Delta", d.counit_at(1)), ("(eps (x) id) Delta", d.counit_at(0))] {
            let pass = t == x;
            report.exact_flag(
                &format!("counit {side} = id"),
                format!("X = {}", g.symbol()),
                pass,
                Some(t.add(&x.scale(&-Rational::one())).to_string()),
            );
        }
    }

    let w = antipode_intertwiner::<T>(rep.j);
    let c1 = rep.casimir();
    for (name, x, sx) in [
        ("J3", &rep.j3, -rep.j3.clone()),
        ("J+", &rep.jplus, -rep.jplus.clone()),
        ("J-", &rep.jminus, -rep.jminus.clone()),
        ("C", &c1, c1.clone()),
    ] {
        let r = (antipode_matrix(&w, x) - sx).norm().as_f64();
        report.numeric(&format!("antipode value S({name})"), ctx.clone(), r, tol);
    }

    let pr = primitive_coproduct(rep, rep)?;
    let antipode_law = |report: &mut VerificationReport, name: &str, m: &DMatrix<T>, eps: T| {
        let (right, left) = antipode_contractions(&w, m);
        let target = identity::<T>(rep.dim()) * eps;
        let r = (right - &target).norm().max((left - &target).norm()).as_f64();
        report.numeric(
            &format!("antipode law m(id (x) S) Delta = m(S (x) id) Delta = eps for {name}"),
            ctx.clone(),
            r,
            tol,
        );
    };
    let g = &pr.gens;
    for (name, m) in [("J3", &g.j3), ("J+", &g.jplus), ("J-", &g.jminus), ("C", &g.casimir)] {
        antipode_law(&mut report, name, m, T::zero());
    }
    antipode_law(&mut report, "1", &identity::<T>(pr.dim()), T::one());

    if let Some(a) = deformed {
        let dc = deformed_coproduct(&pr, a)?;
        antipode_law(&mut report, "deformed J+", &dc.jplus, T::zero());
        antipode_law(&mut report, "deformed J-", &dc.jminus, T::zero());
    }

    if let Some(alpha) = quadratic {
        let qc = quadratic_coproduct(&pr, alpha)?;
        antipode_law(&mut report, "quadratic J3", &qc.j3, T::zero());
        antipode_law(&mut report, "quadratic J+", &qc.jplus, T::zero());
        antipode_law(&mut report, "quadratic J-", &qc.jminus, T::zero());

        // eps(J3') = -1/(4a) + sqrt(1 - 0)/(4a)
        let four_a = Rational::from_integer(BigInt::from(4)) * alpha;
        let eps = -Rational::one() / &four_a + Rational::one() / &four_a;
        report.exact("counit eps(J3') = 0", format!("alpha = {alpha}"), &eps, &Rational::zero());

        let q = build_quadratic_explicit(rep, alpha)?;
        let a: T = T::from_rational(alpha);
        let c = rep.casimir()[(0, 0)];
        let root = (T::one() - T::lit(16.0 / 3.0) * a * a * c).sqrt();
        let id = identity::<T>(rep.dim());
        let s_j3 = -&rep.j3 + &id * ((root - T::one()) / (T::int(4) * a));
        let r = (antipode_matrix(&w, &q.j3) - s_j3).norm().as_f64();
        report.numeric("quadratic antipode S(J3') = -J3 - 1/(4a) + sqrt(1 - 16 a^2 C/3)/(4a)", ctx.clone(), r, tol);
        let jt: T = rep.j.to_scalar();
        let mut fac = Vec::with_capacity(rep.dim());
        for i in 0..rep.dim() {
            let m = rep.j3[(i, i)];
            let v = T::lit(2.0 / 3.0) * a * (-T::int(2) * m + T::one()) + root;
            // the bottom state is never reached by J+
            fac.push(ladder_sqrt(v, (m + jt).abs() < T::lit(0.5), rep.tol, "S(J+')")?);
        }
        let f = crate::linalg::diag(&fac);
        let s_plus = -(&f * &rep.jplus);
        let s_minus = -(&rep.jminus * &f);
        let r = (antipode_matrix(&w, &q.jplus) - s_plus).norm().as_f64();
        report.numeric(
            "quadratic antipode S(J+') = -(2a(-2 J3 + 1)/3 + sqrt(1 - 16 a^2 C/3))^(1/2) J+",
            ctx.clone(),
            r,
            tol,
        );
        let r = (antipode_matrix(&w, &q.jminus) - s_minus).norm().as_f64();
        report.numeric("quadratic antipode S(J-') = -J- (2a(-2 J3 + 1)/3 + sqrt(1 - 16 a^2 C/3))^(1/2)", ctx, r, tol);
    }
    Ok(report)
}

/// Coassociativity of the deformed coproduct on `V (x) V (x) V`: the two
/// bracketings give the same deformed `J+` matrix. Returns the larger of the
/// difference norm and the two homomorphism residuals.
pub fn deformed_triple_coassociativity<T: Real>(j: HalfInt, a: &AlphaCoeffs) -> Result<T> {
    let v = build_sl2::<T>(j)?;
    let gv = Generators::of(&v);
    let g12 = gv.tensor(&gv);
    let tol = v.tol;
    let left = ProductRep::from_generators(vec![j, j, j], g12.tensor(&gv), false, tol)?;
    let right = ProductRep::from_generators(vec![j, j, j], gv.tensor(&g12), false, tol)?;
    if (&left.gens.jplus - &right.gens.jplus).norm() > T::zero()
        || (&left.gens.casimir - &right.gens.casimir).norm() > tol
    {
        return Err(Error::Inconsistent("primitive triple coproducts disagree".into()));
    }
    let dl = deformed_coproduct(&left, a)?;
    let dr = deformed_coproduct(&right, a)?;
    Ok((&dl.jplus - &dr.jplus).norm().max(dl.residual).max(dr.residual))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::symmetric_eigenvalues;
    use crate::scalar::ratio;
    use num_traits::ToPrimitive;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    fn sl2(t: i64) -> MatrixRep<f64> {
        build_sl2(h(t)).unwrap()
    }

    #[test]
    fn formal_coproducts() {
        let d = coproduct_gen(Gen::Casimir);
        assert_eq!(d.len(), 5);
        assert_eq!(coproduct_gen(Gen::Plus).to_string(), "1 (x) J+ + J+ (x) 1");
        assert!(d.to_string().contains("(2) J3 (x) J3"));
        let l = coproduct_gen(Gen::J3).delta_at(0);
        assert_eq!(l.len(), 3);
        assert_eq!(l, coproduct_gen(Gen::J3).delta_at(1));
        let z = FormalTensor::generator(Gen::Plus).add(&FormalTensor::generator(Gen::Plus).scale(&-Rational::one()));
        assert!(z.is_empty());
    }

    #[test]
    fn formal_evaluation_matches_matrices() {
        let (a, b) = (sl2(1), sl2(2));
        let pr = primitive_coproduct(&a, &b).unwrap();
        let dc = coproduct_gen(Gen::Casimir).evaluate(&[&a, &b]).unwrap();
        assert!((dc - &pr.gens.casimir).norm() < 1e-13);
        let via_casimir =
            (&pr.gens.jplus * &pr.gens.jminus + &pr.gens.jminus * &pr.gens.jplus) * 0.5 + &pr.gens.j3 * &pr.gens.j3;
        assert!((via_casimir - &pr.gens.casimir).norm() < 1e-13);
    }

    #[test]
    fn clebsch_gordan_examples() {
        let pr = primitive_coproduct(&sl2(1), &sl2(1)).unwrap();
        let s = pr.casimir_spectrum();
        let expect = [0.0, 2.0, 2.0, 2.0];
        assert!(s.iter().zip(expect).all(|(x, y)| (x - y).abs() < 1e-12));
        let pr = primitive_coproduct(&sl2(1), &sl2(2)).unwrap();
        let s = pr.casimir_spectrum();
        let expect = [0.75, 0.75, 3.75, 3.75, 3.75, 3.75];
        assert!(s.iter().zip(expect).all(|(x, y)| (x - y).abs() < 1e-12));
        assert_eq!(clebsch_gordan_spectrum(h(1), h(2)), vec![(ratio(3, 4), 2), (ratio(15, 4), 4)]);
        let pr = primitive_coproduct(&sl2(3), &sl2(0)).unwrap();
        assert_eq!(pr.gens.jplus, sl2(3).jplus);
    }

    #[test]
    fn joint_calculus_consistency() {
        let pr = primitive_coproduct(&sl2(2), &sl2(3)).unwrap();
        let one = joint_calculus(&pr, |_, _| Ok(1.0)).unwrap();
        assert!((one - identity::<f64>(12)).norm() < 1e-12);
        let c = joint_calculus(&pr, |c, _| Ok(c)).unwrap();
        assert!((c - &pr.gens.casimir).norm() < 1e-12);
        let a = AlphaCoeffs::higgs(&ratio(-3, 10));
        let pr = primitive_coproduct(&sl2(1), &sl2(1)).unwrap();
        let f = joint_calculus(&pr, |c, m| {
            let v: f64 = divided_difference(&a, &c, &(m * (m + 1.0)));
            Ok(v.max(0.0).sqrt())
        })
        .unwrap();
        assert!((&f - f.transpose()).norm() < 1e-14);
        assert!(symmetric_eigenvalues(&f)[0] >= -1e-12);
        assert!(
            joint_calculus(&pr, |c, _| if c > 1.0 { Err(Error::Domain(format!("c = {c}"))) } else { Ok(c) }).is_err()
        );
    }

    #[test]
    fn deformed_coproduct_homomorphism() {
        for (t1, t2) in [(1, 1), (1, 2)] {
            for q in [(-1, 10), (-1, 20)] {
                let a = AlphaCoeffs::higgs(&ratio(q.0, q.1));
                let pr = primitive_coproduct(&sl2(t1), &sl2(t2)).unwrap();
                let dc = deformed_coproduct(&pr, &a).unwrap();
                assert!(dc.residual <= 1e-8, "{t1} {t2} {q:?}");
            }
        }
        // spin 2 appears in 1 (x) 1 and is not admissible at beta = -1/10
        let pr = primitive_coproduct(&sl2(2), &sl2(2)).unwrap();
        assert!(matches!(
            deformed_coproduct(&pr, &AlphaCoeffs::higgs(&ratio(-1, 10))),
            Err(Error::Inadmissible { .. })
        ));
        let pr = primitive_coproduct(&sl2(1), &sl2(2)).unwrap();
        let dc = deformed_coproduct(&pr, &AlphaCoeffs::identity()).unwrap();
        assert!((dc.jplus - &pr.gens.jplus).norm() < 1e-12);
    }

    #[test]
    fn quadratic_coproduct_relations() {
        let pr = primitive_coproduct(&sl2(1), &sl2(1)).unwrap();
        let qc = quadratic_coproduct(&pr, &ratio(1, 100)).unwrap();
        assert!(qc.residual <= 1e-8);
        let qc = quadratic_coproduct(&pr, &ratio(1, 5)).unwrap();
        assert!(qc.residual <= 1e-8);
        // 3/32 < (7/20)^2
        assert!(quadratic_coproduct(&pr, &ratio(7, 20)).is_err());
        assert!(quadratic_coproduct(&pr, &ratio(0, 1)).is_err());
    }

    #[test]
    fn swap_invariance() {
        let pr = primitive_coproduct(&sl2(1), &sl2(1)).unwrap();
        let dc = deformed_coproduct(&pr, &AlphaCoeffs::higgs(&ratio(-1, 10))).unwrap();
        let qc = quadratic_coproduct(&pr, &ratio(1, 5)).unwrap();
        let r = cocommutativity_check(
            &pr,
            &[("J3", &pr.gens.j3), ("J+^", &dc.jplus), ("J+'", &qc.jplus), ("J3'", &qc.j3)],
            1e-10,
        )
        .unwrap();
        assert!(r.all_pass());
        assert_eq!(r.checks[0].residual, Some(0.0));
        let pr = primitive_coproduct(&sl2(1), &sl2(2)).unwrap();
        assert!(cocommutativity_check(&pr, &[], 1e-10).is_err());
    }

    #[test]
    fn antipode_realization() {
        for t in 0..6 {
            let v = sl2(t);
            let w = antipode_intertwiner::<f64>(v.j);
            assert!((antipode_matrix(&w, &v.jplus) + &v.jplus).norm() < 1e-13);
            assert!((antipode_matrix(&w, &v.j3) + &v.j3).norm() < 1e-13);
        }
    }

    #[test]
    fn axioms() {
        let r = hopf_axiom_checks(&sl2(2), None, None, 1e-12).unwrap();
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
        let r =
            hopf_axiom_checks(&sl2(1), Some(&AlphaCoeffs::higgs(&ratio(-1, 10))), Some(&ratio(1, 5)), 1e-10).unwrap();
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
        let r = hopf_axiom_checks(&sl2(3), None, Some(&ratio(1, 20)), 1e-10).unwrap();
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn triple_product() {
        let r = deformed_triple_coassociativity::<f64>(h(1), &AlphaCoeffs::higgs(&ratio(-1, 10))).unwrap();
        assert!(r <= 1e-10, "{r}");
        let spec = clebsch_gordan_spectrum(h(1), h(1));
        assert_eq!(spec.iter().map(|(c, _)| c.to_f64().unwrap()).collect::<Vec<_>>(), vec![0.0, 2.0]);
    }
}
