use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use gammakit_core::analytic::{cr_residuals, expand};
use gammakit_core::bvp::{sample_boundary, solve_dirichlet, Target};
use gammakit_core::json::{number, serialize_f64};
use gammakit_core::random::{TrialRng, ALGORITHM_ID};
use gammakit_core::theorems::{
    compose_solution, fd, gamma_squared_report, goursat_part, lemma1_residuals, theorem1_residual,
    GoursatPart,
};
use gammakit_core::{
    algebra_from_operator, APoly, AlgebraParams, BiPoly, BoundarySample, CollocationFit, FdOrder,
    FdScheme, OperatorParams, ResidualReport, Shape,
};

use crate::args::{
    Command, ComposeArgs, FdVerifyArgs, Format, GenerateArgs, GoursatArgs, Order, ParamArgs,
    Params, ShapeKind, SolveBvpArgs, VerifyCrArgs,
};
use crate::input::{self, CrInput};
use crate::{CliError, Verdict};

pub fn run(cmd: Command) -> Result<Verdict, CliError> {
    match cmd {
        Command::Classify(a) => classify(&a),
        Command::VerifyCr(a) => verify_cr(&a),
        Command::Generate(a) => generate(&a),
        Command::Compose(a) => compose(&a),
        Command::Goursat(a) => goursat(&a),
        Command::FdVerify(a) => fd_verify(&a),
        Command::SolveBvp(a) => solve_bvp(&a),
    }
}

fn emit<T: Serialize>(doc: &T) -> Result<(), CliError> {
    let text = serde_json::to_string(doc).map_err(|e| CliError::Invalid(e.to_string()))?;
    let mut out = io::stdout().lock();
    writeln!(out, "{text}").map_err(|e| CliError::Invalid(e.to_string()))
}

fn verdict(passed: bool, what: &'static str) -> Verdict {
    if passed {
        Verdict::Passed
    } else {
        Verdict::Failed(what)
    }
}

#[derive(Serialize)]
struct OperatorOut {
    #[serde(serialize_with = "serialize_f64")]
    alpha: f64,
    #[serde(serialize_with = "serialize_f64")]
    beta: f64,
}

impl From<OperatorParams> for OperatorOut {
    fn from(op: OperatorParams) -> Self {
        OperatorOut {
            alpha: op.alpha,
            beta: op.beta,
        }
    }
}

fn algebra_of(params: Params) -> Result<AlgebraParams, CliError> {
    match params {
        Params::Operator(op) => Ok(algebra_from_operator(op)?),
        Params::Algebra(a) => Ok(a),
    }
}

fn classify(a: &ParamArgs) -> Result<Verdict, CliError> {
    let alg = algebra_of(a.resolve()?)?;
    emit(&alg)?;
    Ok(Verdict::Passed)
}

fn verify_cr(a: &VerifyCrArgs) -> Result<Verdict, CliError> {
    if a.tol.is_nan() || a.tol <= 0.0 {
        return Err(CliError::Usage("--tol must be positive".into()));
    }
    let alg = algebra_of(a.params.resolve()?)?;
    let pair = match input::cr_input(&a.input)? {
        CrInput::Pair(p) => p,
        CrInput::Function(f) => {
            alg.ensure_same(&f.algebra())?;
            expand(&f)
        }
    };
    let (r1, r2) = cr_residuals(&pair, &alg);
    let scale = pair.max_abs_coeff();
    let reports = [
        ResidualReport::symbolic(r1, a.tol, scale),
        ResidualReport::symbolic(r2, a.tol, scale),
    ];
    let passed = reports.iter().all(|r| r.passed);

    #[derive(Serialize)]
    struct Out<'a> {
        algebra: AlgebraParams,
        a_differentiable: bool,
        residuals: &'a [ResidualReport; 2],
    }
    emit(&Out {
        algebra: alg,
        a_differentiable: passed,
        residuals: &reports,
    })?;
    Ok(verdict(passed, "Cauchy-Riemann residuals are nonzero"))
}

fn generate(a: &GenerateArgs) -> Result<Verdict, CliError> {
    let op = a.op.op();
    let alg = algebra_from_operator(op)?;
    if !(a.range.is_finite() && a.range > 0.0) {
        return Err(CliError::Usage("--range must be positive".into()));
    }
    let mut rng = TrialRng::new(a.seed);
    let f = rng.apoly(alg, a.degree, a.range);
    let pair = expand(&f);
    let (ru, rv) = lemma1_residuals(&f, op)?;
    let passed = ru.passed && rv.passed;

    #[derive(Serialize)]
    struct Lemma1<'a> {
        u: &'a ResidualReport,
        v: &'a ResidualReport,
    }
    #[derive(Serialize)]
    struct Out<'a> {
        generator: &'static str,
        seed: u64,
        operator: OperatorOut,
        algebra: AlgebraParams,
        apoly: &'a APoly,
        u: &'a BiPoly,
        v: &'a BiPoly,
        lemma1: Lemma1<'a>,
    }
    emit(&Out {
        generator: ALGORITHM_ID,
        seed: a.seed,
        operator: op.into(),
        algebra: alg,
        apoly: &f,
        u: &pair.u,
        v: &pair.v,
        lemma1: Lemma1 { u: &ru, v: &rv },
    })?;
    Ok(verdict(passed, "component residuals are nonzero"))
}

fn compose(a: &ComposeArgs) -> Result<Verdict, CliError> {
    let op = a.op.op();
    let key = match a.component {
        crate::args::Component::U => "u",
        crate::args::Component::V => "v",
    };
    let h = input::bipoly(&a.h, &["h", "H", key])?;
    let f = input::apoly(&a.f)?;
    if !a.skip_check {
        compose_solution(&h, &f, op)?;
    }
    let rep = theorem1_residual(&h, &f, op)?;

    #[derive(Serialize)]
    struct Out<'a> {
        #[serde(rename = "H")]
        composition: &'a BiPoly,
        report: &'a ResidualReport,
        factorization: &'a ResidualReport,
    }
    emit(&Out {
        composition: &rep.composition,
        report: &rep.residual,
        factorization: &rep.factorization,
    })?;
    Ok(verdict(
        rep.residual.passed && rep.factorization.passed,
        "Γ(h ∘ F) is nonzero",
    ))
}

fn goursat(a: &GoursatArgs) -> Result<Verdict, CliError> {
    let op = a.op.op();
    let f = input::apoly(&a.f)?;
    let g = input::apoly(&a.g)?;
    let part = if a.experimental_re {
        eprintln!("note: the real-part variant is experimental");
        GoursatPart::Real
    } else {
        GoursatPart::Imaginary
    };
    let h = goursat_part(&f, &g, op, part)?;
    let report = gamma_squared_report(&h, op);

    #[derive(Serialize)]
    struct Out<'a> {
        part: &'static str,
        h: &'a BiPoly,
        report: &'a ResidualReport,
    }
    emit(&Out {
        part: if a.experimental_re { "re" } else { "im" },
        h: &h,
        report: &report,
    })?;
    Ok(verdict(report.passed, "Γ²h is nonzero"))
}

fn fd_verify(a: &FdVerifyArgs) -> Result<Verdict, CliError> {
    let op = a.op.op();
    algebra_from_operator(op)?;
    let field = input::bipoly(&a.field, &["h", "H", "u"])?;
    let order = match a.order {
        Order::One => FdOrder::Gamma,
        Order::Two => FdOrder::GammaSquared,
    };
    let mut scheme = FdScheme::default_for(order);
    if let Some(step) = a.step {
        if !(step.is_finite() && step > 0.0) {
            return Err(CliError::Usage("--step must be positive".into()));
        }
        scheme.step = step;
    }
    let tol = a.tol.unwrap_or(scheme.default_tolerance());
    let mut rng = TrialRng::new(a.seed);
    let points = rng.points(a.samples, -1.0, 1.0);
    let eval = |x: f64, y: f64| field.eval(x, y);
    let report = fd::fd_residual_with_tol(&eval, op, scheme, &points, tol);

    match a.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                order: u8,
                #[serde(serialize_with = "serialize_f64")]
                step: f64,
                seed: u64,
                samples: usize,
                report: &'a ResidualReport,
            }
            emit(&Out {
                order: if order == FdOrder::Gamma { 1 } else { 2 },
                step: scheme.step,
                seed: a.seed,
                samples: a.samples,
                report: &report,
            })?;
        }
        Format::Csv => {
            let mut out = io::stdout().lock();
            let mut lines = String::from("x,y,residual\n");
            for &(x, y) in &points {
                let r = match order {
                    FdOrder::Gamma => fd::gamma_stencil(&eval, op, scheme.step, x, y),
                    FdOrder::GammaSquared => {
                        fd::gamma_squared_stencil(&eval, op, scheme.step, x, y)
                    }
                };
                lines.push_str(&format!("{},{},{}\n", number(x), number(y), number(r)));
            }
            out.write_all(lines.as_bytes())
                .map_err(|e| CliError::Invalid(e.to_string()))?;
        }
    }
    Ok(verdict(
        report.passed,
        "finite-difference residual above tolerance",
    ))
}

fn shape_of(a: &SolveBvpArgs) -> Result<Shape, CliError> {
    match a.shape {
        ShapeKind::Circle => {
            let c = input::numbers(&a.center, 2, "--center")?;
            if !(a.radius.is_finite() && a.radius > 0.0) {
                return Err(CliError::Usage("--radius must be positive".into()));
            }
            Ok(Shape::Circle {
                center: (c[0], c[1]),
                radius: a.radius,
            })
        }
        ShapeKind::Rect => {
            let r = input::numbers(&a.rect, 4, "--rect")?;
            if !(r[2] > r[0] && r[3] > r[1]) {
                return Err(CliError::Usage(
                    "--rect needs xmin < xmax and ymin < ymax".into(),
                ));
            }
            Ok(Shape::Rect {
                min: (r[0], r[1]),
                max: (r[2], r[3]),
            })
        }
    }
}

fn is_csv(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

fn solve_bvp(a: &SolveBvpArgs) -> Result<Verdict, CliError> {
    let op = a.op.op();
    let target = match a.order {
        Order::One => Target::Gamma,
        Order::Two => Target::GammaSquared,
    };
    // validates β and the basis before any sampling
    let basis_len = gammakit_core::bvp::basis(op, target, a.degree)?.len();

    let sample = if is_csv(&a.data) {
        let file = File::open(&a.data)
            .map_err(|e| CliError::Invalid(format!("{}: {e}", a.data.display())))?;
        BoundarySample::read_csv(file)?
    } else {
        let data = input::bipoly(&a.data, &["h", "H", "u"])?;
        let m = a.samples.unwrap_or(2 * basis_len);
        sample_boundary(shape_of(a)?, m, |x, y| data.eval(x, y))?
    };
    if let Some(path) = &a.boundary_out {
        let file = File::create(path).map_err(|e| CliError::Invalid(e.to_string()))?;
        sample.write_csv(BufWriter::new(file))?;
    }

    let fit = solve_dirichlet(op, target, a.degree, &sample)?;
    if let Some(w) = &fit.warning {
        eprintln!("warning: {w}");
    }
    if !fit.dropped_columns.is_empty() {
        eprintln!(
            "note: dropped {} rank-deficient column(s): {:?}",
            fit.dropped_columns.len(),
            fit.dropped_columns
        );
    }

    let text =
        serde_json::to_string(&fit.summary()).map_err(|e| CliError::Invalid(e.to_string()))?;
    fs::write(&a.out, format!("{text}\n"))
        .map_err(|e| CliError::Invalid(format!("{}: {e}", a.out.display())))?;
    if let Some(path) = &a.grid {
        write_grid(path, &fit, &sample, a.grid_n)?;
    }
    emit(&fit.summary())?;
    Ok(Verdict::Passed)
}

fn write_grid(
    path: &Path,
    fit: &CollocationFit,
    sample: &BoundarySample,
    n: usize,
) -> Result<(), CliError> {
    let shape = sample.shape();
    let (lo, hi) = shape.bounding_box().unwrap_or_else(|| {
        let fold = |f: fn(f64, f64) -> f64, init: f64, pick: fn(&(f64, f64)) -> f64| {
            sample.points().iter().map(pick).fold(init, f)
        };
        (
            (
                fold(f64::min, f64::INFINITY, |p| p.0),
                fold(f64::min, f64::INFINITY, |p| p.1),
            ),
            (
                fold(f64::max, f64::NEG_INFINITY, |p| p.0),
                fold(f64::max, f64::NEG_INFINITY, |p| p.1),
            ),
        )
    });
    let n = n.max(2);
    let mut points = Vec::new();
    for i in 0..n {
        for k in 0..n {
            let x = lo.0 + (hi.0 - lo.0) * i as f64 / (n - 1) as f64;
            let y = lo.1 + (hi.1 - lo.1) * k as f64 / (n - 1) as f64;
            if matches!(shape, Shape::Custom) || shape.contains(x, y) {
                points.push((x, y));
            }
        }
    }
    let values = gammakit_core::bvp::evaluate_fit(fit, &points);
    let mut text = String::from("x,y,value\n");
    for (&(x, y), v) in points.iter().zip(values) {
        text.push_str(&format!("{},{},{}\n", number(x), number(y), number(v)));
    }
    fs::write(path, text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}
