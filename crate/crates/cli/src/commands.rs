use nalgebra::DMatrix;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use nonlinear_sl2::coefficients::{alpha_from_beta, bernoulli_sequence, beta_from_alpha, epsilon_row, phi_eval};
use nonlinear_sl2::families::{higgs_gamma_roots, quadratic_gamma, scan, SCAN_HEADER};
use nonlinear_sl2::hopf::{
    clebsch_gordan_spectrum, cocommutativity_check, deformed_coproduct, deformed_triple_coassociativity,
    hopf_axiom_checks, primitive_coproduct, quadratic_coproduct,
};
use nonlinear_sl2::linalg::{commutator, identity};
use nonlinear_sl2::qdeform::{q_bracket, uq_casimir_relation};
use nonlinear_sl2::repbuilder::{
    build_deformed, build_quadratic_explicit, build_sl2, build_uq, casimir_matrix, deformed_from_undeformed,
    inverse_map_uq,
};
use nonlinear_sl2::structure::{
    f2_higgs_shifted_down, f2_higgs_shifted_up, f2_quadratic_down, f2_quadratic_up, Family,
};
use nonlinear_sl2::verifier::{
    commutator_residuals, exact_recurrence_check, q_series_identity_residual, q_shift_rigidity, quadratic_residuals,
    relation_residuals, uq_residuals,
};
use nonlinear_sl2::{
    AlphaCoeffs, BetaCoeffs, HalfInt, QParam, Rational, Rep64, ScanFamily, SolutionKind, Spec64, VerificationReport,
};

use crate::render::{self, Format};
use crate::{Branch, CliError, CoeffsArgs, FamiliesArgs, HopfArgs, Outcome, QlimitArgs, RepKind, ScanKind, SpecArgs};

fn ok(text: String) -> Result<Outcome, CliError> {
    Ok(Outcome { text, all_pass: true })
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(|r| r.to_string()).collect()
}

fn f64_of(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn coeffs(a: &CoeffsArgs, format: Format) -> Result<Outcome, CliError> {
    let (op, first, input, output) = if let Some(b) = &a.alpha_from_beta {
        let b = BetaCoeffs::new(b.0.clone())?;
        ("alpha_from_beta", 1, b.0.clone(), alpha_from_beta(&b).0)
    } else if let Some(al) = &a.beta_from_alpha {
        let al = AlphaCoeffs::new(al.0.clone())?;
        ("beta_from_alpha", 0, al.0.clone(), beta_from_alpha(&al).0)
    } else if let Some(k) = a.epsilon {
        ("epsilon", 1, Vec::new(), epsilon_row(k)?)
    } else if let Some(n) = a.bernoulli {
        ("bernoulli", 1, Vec::new(), bernoulli_sequence(n))
    } else {
        return Err(usage("no coefficient operation given"));
    };
    let text = match format {
        Format::Json => render::json(&json!({
            "operation": op,
            "input": strings(&input),
            "output": strings(&output),
        }))?,
        Format::Csv => {
            let rows: Vec<Vec<String>> =
                output.iter().enumerate().map(|(i, v)| vec![(i + first).to_string(), v.to_string()]).collect();
            render::csv_text(&["index", "value"], &rows)?
        }
        Format::Table => format!("{}\n", strings(&output).join(", ")),
    };
    ok(text)
}

/// A representation selected by the spec flags, plus the data needed to
/// verify it.
enum Resolved {
    Sl2,
    Polynomial(AlphaCoeffs),
    Higgs { beta: Rational, gamma: f64 },
    Quadratic { alpha: Rational, gamma: f64, explicit: bool },
    Uq(f64),
    Qbase { alpha: Vec<f64>, delta: f64 },
}

struct Selected {
    echo: Value,
    resolved: Resolved,
    rep: Rep64,
}

fn need<T: Clone>(v: &Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    v.clone().ok_or_else(|| usage(format!("--{flag} is required for --family {family}")))
}

fn delta_of(a: &SpecArgs, family: &str) -> Result<f64, CliError> {
    let d = need(&a.delta, "delta", family)?;
    QParam::new(d)?;
    Ok(d)
}

fn select(a: &SpecArgs) -> Result<Selected, CliError> {
    let j = a.j;
    let mut echo = Map::new();
    echo.insert("j".into(), json!(j.to_string()));
    let resolved = match a.family {
        RepKind::Sl2 => Resolved::Sl2,
        RepKind::Polynomial => {
            let al = AlphaCoeffs::new(need(&a.alpha, "alpha", "polynomial")?.0)?;
            echo.insert("alpha".into(), json!(strings(&al.0)));
            Resolved::Polynomial(al)
        }
        RepKind::Higgs => {
            let beta = need(&a.beta, "beta", "higgs")?;
            let gamma = match (a.gamma, a.branch) {
                (Some(g), _) => g,
                (None, Branch::Unshifted) => 0.0,
                (None, branch) => {
                    let kind = if branch == Branch::Plus { SolutionKind::ShiftPlus } else { SolutionKind::ShiftMinus };
                    let roots = higgs_gamma_roots(j, &beta)?;
                    roots.iter().find(|s| s.kind == kind).map(|s| s.gamma).ok_or_else(|| {
                        nonlinear_sl2::Error::OutOfBound(format!(
                            "beta = {beta} is outside the window (-1/(4j(j+1)), -1/(4j(j+1)+1)] where the shifted \
                             Higgs solutions exist"
                        ))
                    })?
                }
            };
            echo.insert("beta".into(), json!(beta.to_string()));
            echo.insert("gamma".into(), json!(gamma));
            Resolved::Higgs { beta, gamma }
        }
        RepKind::Quadratic => {
            let list = need(&a.alpha, "alpha", "quadratic")?.0;
            let [alpha] = <[Rational; 1]>::try_from(list)
                .map_err(|_| usage("--alpha takes a single value for --family quadratic"))?;
            let (gamma, explicit) = match a.gamma {
                Some(g) => (g, false),
                None => (quadratic_gamma(j, &alpha)?.gamma, true),
            };
            echo.insert("alpha".into(), json!(alpha.to_string()));
            echo.insert("gamma".into(), json!(gamma));
            Resolved::Quadratic { alpha, gamma, explicit }
        }
        RepKind::Uq => {
            let d = delta_of(a, "uq")?;
            echo.insert("delta".into(), json!(d));
            Resolved::Uq(d)
        }
        RepKind::Qbase => {
            let alpha: Vec<f64> = need(&a.alpha, "alpha", "qbase")?.0.iter().map(f64_of).collect();
            let delta = delta_of(a, "qbase")?;
            echo.insert("alpha".into(), json!(alpha));
            echo.insert("delta".into(), json!(delta));
            Resolved::Qbase { alpha, delta }
        }
    };
    let family_name = match a.family {
        RepKind::Sl2 => "sl2",
        RepKind::Polynomial => "polynomial",
        RepKind::Higgs => "higgs",
        RepKind::Quadratic => "quadratic",
        RepKind::Uq => "uq",
        RepKind::Qbase => "qbase",
    };
    echo.insert("family".into(), json!(family_name));
    let deformed = |family: Family<f64>| -> Result<Rep64, CliError> { Ok(build_deformed(&Spec64::new(family, j)?)?) };
    let rep = match &resolved {
        Resolved::Sl2 => build_sl2(j)?,
        Resolved::Polynomial(al) => deformed(Family::Polynomial { alpha: al.clone() })?,
        Resolved::Higgs { beta, gamma } => deformed(Family::HiggsShifted { beta: beta.clone(), gamma: *gamma })?,
        Resolved::Quadratic { alpha, gamma, .. } => {
            deformed(Family::QuadraticShifted { alpha: alpha.clone(), gamma: *gamma })?
        }
        Resolved::Uq(d) => build_uq(j, *d)?,
        Resolved::Qbase { alpha, delta } => deformed(Family::QBase { alpha: alpha.clone(), delta: *delta })?,
    };
    Ok(Selected { echo: Value::Object(echo), resolved, rep })
}

pub fn rep(a: &SpecArgs, format: Format) -> Result<Outcome, CliError> {
    let s = select(a)?;
    let rep = &s.rep;
    let text = match format {
        Format::Json => render::json(rep)?,
        Format::Csv => {
            let mut rows = Vec::new();
            render::matrix_rows("J3", &rep.j3, &mut rows);
            render::matrix_rows("J+", &rep.jplus, &mut rows);
            render::matrix_rows("J-", &rep.jminus, &mut rows);
            render::csv_text(&["matrix", "row", "col", "value"], &rows)?
        }
        Format::Table => {
            let mut t = format!("j = {}, dim = {}, gamma = {}\n", rep.j, rep.dim(), rep.gamma);
            t.push_str(&render::matrix_block("J3", &rep.j3));
            t.push_str(&render::matrix_block("J+", &rep.jplus));
            t.push_str(&render::matrix_block("J-", &rep.jminus));
            t
        }
    };
    ok(text)
}

fn max_abs(m: DMatrix<f64>) -> f64 {
    m.amax()
}

fn annihilation(report: &mut VerificationReport, ctx: &str, up: f64, down: f64, tol: f64) {
    report.numeric("J+ annihilates the highest weight", ctx.to_string(), up.abs(), tol);
    report.numeric("J- annihilates the lowest weight", ctx.to_string(), down.abs(), tol);
}

fn suite(s: &Selected, tol: f64) -> Result<VerificationReport, CliError> {
    let rep = &s.rep;
    let j = rep.j;
    let ctx = format!("j = {}, dim = {}", j, rep.dim());
    let mut report = VerificationReport::new();
    match &s.resolved {
        Resolved::Sl2 => {
            report.extend(relation_residuals(rep, "[J+, J-] = 2 J3", &|x: f64| 2.0 * x, tol));
            let u = f64_of(&j.casimir());
            let dev = max_abs(rep.casimir() - identity::<f64>(rep.dim()) * u);
            report.numeric("C = j(j+1)", ctx, dev, tol);
        }
        Resolved::Polynomial(al) => {
            report.extend(exact_recurrence_check(al, j));
            report.extend(commutator_residuals(rep, &beta_from_alpha(al), tol));
            let c = casimir_matrix(rep, al)?;
            let u: f64 = f64_of(&phi_eval(al, &j.casimir()));
            report.numeric("C^ = phi(j(j+1))", ctx.clone(), max_abs(&c - identity::<f64>(rep.dim()) * u), tol);
            let central =
                [&rep.j3, &rep.jplus, &rep.jminus].iter().map(|g| commutator(&c, g).norm()).fold(0.0, f64::max);
            report.numeric("C^ commutes with J3, J+, J-", ctx.clone(), central, tol);
            let mapped = deformed_from_undeformed(&build_sl2(j)?, al)?;
            report.numeric(
                "J+^ from sl(2) generators equals the direct construction",
                ctx,
                max_abs(&mapped.jplus - &rep.jplus),
                tol,
            );
        }
        Resolved::Higgs { beta, gamma } => {
            let b = f64_of(beta);
            let rhs = move |x: f64| 2.0 * x + 8.0 * b * x * x * x;
            report.extend(relation_residuals(rep, "[J+, J-] = 2 J3 + 8 beta J3^3", &rhs, tol));
            let up = f2_higgs_shifted_up(b, *gamma, j, j)?;
            let down = f2_higgs_shifted_down(b, *gamma, j, -j)?;
            annihilation(&mut report, &ctx, up, down, tol);
        }
        Resolved::Quadratic { alpha, gamma, explicit } => {
            let al = f64_of(alpha);
            report.extend(quadratic_residuals(rep, al, tol));
            let up = f2_quadratic_up(al, *gamma, j, j)?;
            let down = f2_quadratic_down(al, *gamma, j, -j)?;
            annihilation(&mut report, &ctx, up, down, tol);
            if *explicit {
                let ex = build_quadratic_explicit(&build_sl2(j)?, alpha)?;
                let mut r = quadratic_residuals(&ex, al, tol);
                for c in &mut r.checks {
                    c.name = format!("{} (from sl(2) generators)", c.name);
                }
                report.extend(r);
                report.numeric("explicit J3' spectrum shift equals gamma", ctx, (ex.gamma - gamma).abs(), tol);
            }
        }
        Resolved::Uq(d) => {
            let qp = QParam::new(*d)?;
            report.extend(uq_residuals(rep, qp, tol));
            report.numeric("U_q Casimir value and arcsinh inversion", ctx.clone(), uq_casimir_relation(j, qp)?, tol);
            let back = inverse_map_uq(rep, *d)?;
            report.numeric(
                "inverse map recovers the sl(2) generators",
                ctx,
                max_abs(back.jplus - build_sl2::<f64>(j)?.jplus),
                tol,
            );
        }
        Resolved::Qbase { alpha, delta } => {
            let qp = QParam::new(*delta)?;
            let phi = |x: f64| {
                let u = q_bracket(x, qp) * q_bracket(x + 1.0, qp);
                alpha.iter().rev().fold(0.0, |acc, &a| (acc + a) * u)
            };
            let rhs = move |x: f64| phi(x) - phi(x - 1.0);
            report.extend(relation_residuals(rep, "[J+, J-] = phi([J3][J3+1]) - phi([J3-1][J3])", &rhs, tol));
        }
    }
    Ok(report)
}

pub fn verify(a: &SpecArgs, format: Format, tol: f64) -> Result<Outcome, CliError> {
    let s = select(a)?;
    let report = suite(&s, tol)?;
    let mut echo = s.echo.clone();
    echo["tol"] = json!(tol);
    Ok(Outcome { text: render::report(&echo, &report, format)?, all_pass: report.all_pass() })
}

pub fn families(a: &FamiliesArgs, format: Format) -> Result<Outcome, CliError> {
    let (family, grid) = match a.family {
        ScanKind::Higgs => {
            (ScanFamily::Higgs, a.beta.clone().ok_or_else(|| usage("--beta is required for --family higgs"))?.0)
        }
        ScanKind::Quadratic => (
            ScanFamily::Quadratic,
            a.alpha.clone().ok_or_else(|| usage("--alpha is required for --family quadratic"))?.0,
        ),
    };
    let rows = scan(family, a.j, &grid)?;
    let records: Vec<Vec<String>> = rows.iter().map(|r| r.record()).collect();
    let text = match format {
        Format::Json => render::json(&rows)?,
        Format::Csv => render::csv_text(&SCAN_HEADER, &records)?,
        Format::Table => {
            let mut t = render::table(&SCAN_HEADER, &records);
            for r in &rows {
                for note in r.solutions.iter().filter_map(|s| s.note.as_ref()) {
                    t.push_str(&format!("note (param = {}): {note}\n", r.param));
                }
                if let Some(e) = &r.error {
                    t.push_str(&format!("param = {}: {e}\n", r.param));
                }
            }
            t
        }
    };
    ok(text)
}

pub fn hopf(a: &HopfArgs, format: Format, tol: f64) -> Result<Outcome, CliError> {
    let (j1, j2) = (a.j, a.j2.unwrap_or(a.j));
    let deformation = match (&a.beta, &a.alpha) {
        (Some(b), _) => Some(AlphaCoeffs::higgs(b)),
        (None, Some(al)) => Some(AlphaCoeffs::new(al.0.clone())?),
        (None, None) => None,
    };
    let mut echo = json!({ "j": j1.to_string(), "j2": j2.to_string(), "tol": tol });
    if let Some(d) = &deformation {
        echo["alpha"] = json!(strings(&d.0));
    }
    if let Some(q) = &a.quadratic {
        echo["quadratic"] = json!(q.to_string());
    }
    let rep1 = build_sl2::<f64>(j1)?;
    let rep2 = build_sl2::<f64>(j2)?;
    let mut report = hopf_axiom_checks(&rep1, deformation.as_ref(), a.quadratic.as_ref(), tol)?;
    let pr = primitive_coproduct(&rep1, &rep2)?;
    let ctx = format!("{j1} (x) {j2}");
    let expected: Vec<f64> = clebsch_gordan_spectrum(j1, j2)
        .into_iter()
        .flat_map(|(c, mult)| std::iter::repeat_n(f64_of(&c), mult))
        .collect();
    let spectrum = pr.casimir_spectrum();
    let dev = if spectrum.len() == expected.len() {
        spectrum.iter().zip(&expected).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    report.numeric("Delta(C) spectrum is {J(J+1)}, |j1-j2| <= J <= j1+j2", ctx.clone(), dev, tol);
    let mut swap: Vec<(String, DMatrix<f64>)> =
        vec![("Delta(J3)".into(), pr.gens.j3.clone()), ("Delta(J+)".into(), pr.gens.jplus.clone())];
    if let Some(d) = &deformation {
        let dc = deformed_coproduct(&pr, d)?;
        report.numeric(
            "Delta(J+^), Delta(J-^) satisfy the deformed relations",
            format!("{ctx}; left-ordered variant residual {:.3e}", dc.residual_left),
            dc.residual,
            tol,
        );
        if j1 == HalfInt::HALF && j2 == HalfInt::HALF {
            let r: f64 = deformed_triple_coassociativity(j1, d)?;
            report.numeric("deformed coproduct is coassociative", "1/2 (x) 1/2 (x) 1/2".into(), r, tol);
        }
        swap.push(("Delta(J+^)".into(), dc.jplus));
        swap.push(("Delta(J-^)".into(), dc.jminus));
    }
    if let Some(q) = &a.quadratic {
        let qc = quadratic_coproduct(&pr, q)?;
        report.numeric("Delta(J3'), Delta(J+'), Delta(J-') satisfy the quadratic relations", ctx, qc.residual, tol);
        swap.push(("Delta(J3')".into(), qc.j3));
        swap.push(("Delta(J+')".into(), qc.jplus));
    }
    if j1 == j2 {
        let named: Vec<(&str, &DMatrix<f64>)> = swap.iter().map(|(n, m)| (n.as_str(), m)).collect();
        report.extend(cocommutativity_check(&pr, &named, tol)?);
    }
    Ok(Outcome { text: render::report(&echo, &report, format)?, all_pass: report.all_pass() })
}

pub fn qlimit(a: &QlimitArgs, format: Format, tol: f64) -> Result<Outcome, CliError> {
    let qp = QParam::new(a.delta)?;
    let j = a.j;
    let echo = json!({ "j": j.to_string(), "delta": a.delta, "trunc": a.trunc, "tol": tol });
    let rep = build_uq(j, a.delta)?;
    let mut report = uq_residuals(&rep, qp, tol);
    report.numeric("U_q Casimir value and arcsinh inversion", format!("j = {j}"), uq_casimir_relation(j, qp)?, tol);
    for m in j.weights().filter(|&m| m != j) {
        let r = q_series_identity_residual(j, m, a.delta, a.trunc)?;
        report.numeric("truncated series of [j-m][j+m+1]/((j-m)(j+m+1))", format!("j = {j}, m = {m}"), r, tol);
    }
    let roots = q_shift_rigidity(j, a.delta)?;
    let unique = roots.len() == 1 && roots[0].abs() <= 1e-12;
    let listed = roots.iter().map(|r| format!("{r:e}")).collect::<Vec<_>>().join(", ");
    report.exact_flag(
        "highest-weight condition forces gamma = 0",
        format!("j = {j}; roots in [-10, 10]: [{listed}]"),
        unique,
        (!unique).then(|| listed.clone()),
    );
    let back = inverse_map_uq(&rep, a.delta)?;
    report.numeric(
        "inverse map recovers the sl(2) generators",
        format!("j = {j}"),
        (back.jplus - build_sl2::<f64>(j)?.jplus).amax(),
        tol,
    );
    Ok(Outcome { text: render::report(&echo, &report, format)?, all_pass: report.all_pass() })
}
