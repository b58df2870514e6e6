//! Shifted representation families of the Higgs and quadratic algebras.
//!
//! A shift `J3 |j,m> = (m + gamma)|j,m>` is fixed by lowest-weight
//! annihilation. For the Higgs algebra this gives
//! `2 gamma (2j+1)(1 + 4 beta (j(j+1) + gamma^2)) = 0`, i.e. `gamma = 0` or
//! `gamma = +-(1/(2 beta)) sqrt(-beta - 4 beta^2 j(j+1))`; for the quadratic
//! algebra `gamma = (1/(4 alpha))(-1 + sqrt(1 - 16 j(j+1) alpha^2 / 3))`.
//! Whatever the algebra says, a candidate only counts once the whole ladder
//! passes unitarity screening.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::coefficients::AlphaCoeffs;
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::scalar::{ratio, rational_serde, Rational};
use crate::structure::{admissible, Admissibility, Family, StructureSpec};

/// Which root of the annihilation constraint a solution is. For the shifted
/// roots the name is the sign in front of the square root as the formulas
/// above are written.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolutionKind {
    Unshifted,
    ShiftPlus,
    ShiftMinus,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySolution {
    pub gamma: f64,
    pub kind: SolutionKind,
    pub admissible: bool,
    /// First weight failing screening.
    pub witness: Option<HalfInt>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl FamilySolution {
    fn screened(gamma: f64, kind: SolutionKind, adm: Admissibility) -> Self {
        FamilySolution { gamma, kind, admissible: adm.admissible, witness: adm.offending.first().copied(), note: None }
    }
}

fn require_positive(j: HalfInt) -> Result<()> {
    if j.twice <= 0 {
        return Err(Error::Domain(format!("spin j must be > 0, got {j}")));
    }
    Ok(())
}

/// `(-1/(4j(j+1)), -1/(4j(j+1)+1)]`: open below, closed above.
pub fn higgs_beta_window(j: HalfInt) -> Result<(Rational, Rational)> {
    require_positive(j)?;
    let four_u = j.casimir() * Rational::from_integer(BigInt::from(4));
    let one = Rational::from_integer(BigInt::from(1));
    Ok((-(&one / &four_u), -(&one / (four_u + &one))))
}

pub fn in_higgs_window(j: HalfInt, beta: &Rational) -> Result<bool> {
    let (lo, hi) = higgs_beta_window(j)?;
    Ok(*beta > lo && *beta <= hi)
}

fn higgs_screen(j: HalfInt, beta: &Rational, gamma: f64) -> Admissibility {
    if gamma == 0.0 {
        // Exact screening through the polynomial form.
        return admissible(&StructureSpec::<f64>::polynomial(AlphaCoeffs::higgs(beta), j));
    }
    let spec = StructureSpec { family: Family::HiggsShifted { beta: beta.clone(), gamma }, j };
    admissible(&spec)
}

/// Candidate shifts for the Higgs algebra on spin `j`, in the order
/// unshifted, plus, minus. The shifted pair is present iff `beta` lies in
/// [`higgs_beta_window`]; each candidate is screened over the full ladder.
pub fn higgs_gamma_roots(j: HalfInt, beta: &Rational) -> Result<Vec<FamilySolution>> {
    require_positive(j)?;
    let mut out = vec![FamilySolution::screened(0.0, SolutionKind::Unshifted, higgs_screen(j, beta, 0.0))];
    if beta.is_zero() {
        out[0].note = Some("degenerate constraint at beta = 0: deformation-only families absent".into());
        return Ok(out);
    }
    if in_higgs_window(j, beta)? {
        let four = Rational::from_integer(BigInt::from(4));
        let radicand = -beta - four * beta * beta * j.casimir();
        let root = radicand.to_f64().unwrap_or(f64::NAN).max(0.0).sqrt();
        let g = root / (2.0 * beta.to_f64().unwrap_or(f64::NAN));
        out.push(FamilySolution::screened(g, SolutionKind::ShiftPlus, higgs_screen(j, beta, g)));
        out.push(FamilySolution::screened(-g, SolutionKind::ShiftMinus, higgs_screen(j, beta, -g)));
    }
    Ok(out)
}

/// Number of admissible Higgs families on spin `j`.
pub fn family_count(j: HalfInt, beta: &Rational) -> Result<usize> {
    Ok(higgs_gamma_roots(j, beta)?.iter().filter(|s| s.admissible).count())
}

/// Admissibility bound of the quadratic family, `alpha <= 3/(2(4j+1))`.
pub fn quadratic_bound(j: HalfInt) -> Rational {
    ratio(3, 2 * (2 * j.twice + 1))
}

/// The printed shift of the quadratic algebra,
/// `gamma = (1/(4 alpha))(-1 + sqrt(1 - 16 j(j+1) alpha^2 / 3))`, evaluated in
/// the cancellation-free form `-4 j(j+1) alpha / (3 (1 + sqrt(R)))`.
pub fn quadratic_gamma(j: HalfInt, alpha: &Rational) -> Result<FamilySolution> {
    if alpha.is_zero() {
        return Err(Error::Domain("quadratic shift needs alpha != 0 (1/(4 alpha) is singular)".into()));
    }
    if j.twice < 0 {
        return Err(Error::Domain(format!("spin j must be >= 0, got {j}")));
    }
    let u = j.casimir();
    let radicand = Rational::from_integer(BigInt::from(1)) - ratio(16, 3) * &u * alpha * alpha;
    if radicand.is_negative() {
        return Err(Error::OutOfBound(format!(
            "1 - 16 j(j+1) alpha^2 / 3 = {radicand} < 0 at j = {j}, alpha = {alpha}; \
             quadratic bound alpha <= 3/(2(4j+1)) = {}",
            quadratic_bound(j)
        )));
    }
    let r = radicand.to_f64().unwrap_or(f64::NAN).sqrt();
    let a = alpha.to_f64().unwrap_or(f64::NAN);
    let gamma = -4.0 * u.to_f64().unwrap_or(f64::NAN) * a / (3.0 * (1.0 + r));
    let spec = StructureSpec { family: Family::QuadraticShifted { alpha: alpha.clone(), gamma }, j };
    Ok(FamilySolution::screened(gamma, SolutionKind::ShiftPlus, admissible(&spec)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanFamily {
    Higgs,
    Quadratic,
}

impl ScanFamily {
    pub fn name(self) -> &'static str {
        match self {
            ScanFamily::Higgs => "higgs",
            ScanFamily::Quadratic => "quadratic",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub family: ScanFamily,
    pub two_j: i64,
    #[serde(with = "rational_serde")]
    pub param: Rational,
    pub count: usize,
    pub solutions: Vec<FamilySolution>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

pub const SCAN_HEADER: [&str; 10] = [
    "family",
    "two_j",
    "param",
    "count",
    "gamma_1",
    "gamma_2",
    "gamma_3",
    "admissible_1",
    "admissible_2",
    "admissible_3",
];

impl ScanRow {
    /// Flat record matching [`SCAN_HEADER`]; absent solutions are empty cells.
    pub fn record(&self) -> Vec<String> {
        let mut rec = vec![
            self.family.name().to_string(),
            self.two_j.to_string(),
            self.param.to_string(),
            self.count.to_string(),
        ];
        for i in 0..3 {
            rec.push(self.solutions.get(i).map(|s| format!("{:.15}", s.gamma)).unwrap_or_default());
        }
        for i in 0..3 {
            rec.push(self.solutions.get(i).map(|s| s.admissible.to_string()).unwrap_or_default());
        }
        rec
    }
}

/// One row per grid point, in grid order. Out-of-bound quadratic parameters
/// give a row with count 0 and the error text.
pub fn scan(family: ScanFamily, j: HalfInt, grid: &[Rational]) -> Result<Vec<ScanRow>> {
    grid.iter()
        .map(|p| {
            let solved = match family {
                ScanFamily::Higgs => higgs_gamma_roots(j, p),
                ScanFamily::Quadratic => quadratic_gamma(j, p).map(|s| vec![s]),
            };
            match solved {
                Ok(solutions) => Ok(ScanRow {
                    family,
                    two_j: j.twice,
                    param: p.clone(),
                    count: solutions.iter().filter(|s| s.admissible).count(),
                    solutions,
                    error: None,
                }),
                Err(e @ (Error::OutOfBound(_) | Error::Domain(_))) if family == ScanFamily::Quadratic => Ok(ScanRow {
                    family,
                    two_j: j.twice,
                    param: p.clone(),
                    count: 0,
                    solutions: Vec::new(),
                    error: Some(e.to_string()),
                }),
                Err(e) => Err(e),
            }
        })
        .collect()
}
