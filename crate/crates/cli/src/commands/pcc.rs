use num_complex::Complex;
use qclone::phase_covariant::{self as pc, InputFamily, PcCase, PcCoeffs};
use qclone::qmat::{fidelity, PureQubit};
use qclone::scalar::rational_to_real;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::{grid_map, CliError, Ctx};
use crate::args::{exact_param, PccArgs};
use crate::report::{ReportBundle, Route};

const ROUTE_TOL: f64 = 1e-12;
const OPT_TOL: f64 = 1e-9;
const FAMILIES: [(InputFamily, &str); 3] = [
    (InputFamily::RealPairs, "real-pairs"),
    (InputFamily::RealImaginary, "real-imaginary"),
    (InputFamily::FullyComplex, "fully-complex"),
];

pub fn run(ctx: &Ctx, args: &PccArgs) -> Result<ReportBundle, CliError> {
    let mut report = ReportBundle::new(&["pcc"]);
    if let Some(case) = args.case {
        report.params([("case".to_string(), Some(case.to_string()))]);
    }
    report.params(exact_param("a", &args.a));
    report.params(exact_param("b", &args.b));
    report.params(exact_param("c", &args.c));
    report.params(exact_param("alpha", &args.alpha));
    report.params(exact_param("phase", &args.phase));
    report.params([("samples".to_string(), Some(args.samples.to_string()))]);
    report.params(ctx.params());

    let k = match (args.case, &args.a, &args.b, &args.c) {
        (Some(case), ..) => optimum(&mut report, case)?,
        (None, Some(a), Some(b), Some(c)) => {
            report.reference("pc-coefficients");
            PcCoeffs::new(
                rational_to_real(a),
                rational_to_real(b),
                rational_to_real(c),
            )?
        }
        _ => {
            return Err(CliError::Usage(
                "pcc needs --case or all of --a, --b, --c".to_string(),
            ))
        }
    };
    report.push(
        "unitarity_residual",
        k.unitarity_residual(),
        Route::ClosedForm,
        None,
    );

    for (family, name) in FAMILIES {
        let states = sample_states(ctx, family, args.samples);
        let fs = grid_map(ctx, &states, |psi| pc::fidelity(psi, &k))?;
        let lo = fs.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = fs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        report.push(
            &format!("residual.{name}"),
            hi - lo,
            Route::ClosedForm,
            None,
        );
    }
    if let Some(case) = args.case {
        let name = FAMILIES
            .iter()
            .find(|f| f.0 == case.family())
            .expect("listed")
            .1;
        let universal = report
            .value(&format!("residual.{name}"))
            .unwrap_or(f64::NAN)
            < OPT_TOL;
        report.verdict("universal_on_case_family", universal);
        if !universal {
            report.discrepant = true;
        }
    }

    if let Some(alpha) = &args.alpha {
        let alpha = rational_to_real::<f64>(alpha);
        let phase = args.phase.as_ref().map_or(0.0, rational_to_real::<f64>);
        let beta = (1.0 - alpha * alpha).max(0.0).sqrt();
        let psi = PureQubit::new(
            Complex::new(alpha, 0.0),
            Complex::from_polar(beta, std::f64::consts::TAU * phase),
        )?;
        report.push(
            "F",
            pc::fidelity(&psi, &k)?,
            Route::ClosedForm,
            Some(ROUTE_TOL),
        );
        report.push(
            "F.moduli",
            pc::fidelity_moduli_form(&psi, &k)?,
            Route::ClosedForm,
            Some(ROUTE_TOL),
        );
        let rho = pc::output_density_a(&psi, &k);
        report.push(
            "F.matrix",
            fidelity(&psi.projector(), &rho)?,
            Route::MatrixOracle,
            Some(ROUTE_TOL),
        );
        report.pair("F", "F.matrix", ROUTE_TOL);
        report.pair("F.moduli", "F.matrix", ROUTE_TOL);
    }
    Ok(report)
}

fn optimum(report: &mut ReportBundle, case: PcCase) -> Result<PcCoeffs<f64>, CliError> {
    report.reference(&format!("pc-case-{case}"));
    let opt = pc::maximize_fidelity::<f64>(case)?;
    let k = opt.coeffs;
    report.push("a", k.a(), Route::Optimizer, Some(OPT_TOL));
    report.push("b", k.b(), Route::Optimizer, Some(OPT_TOL));
    report.push("c", k.c(), Route::Optimizer, Some(OPT_TOL));
    report.push("F", opt.fidelity, Route::Optimizer, Some(OPT_TOL));
    let s = (1.0f64 / 8.0).sqrt();
    let (a, b, c, f) = match case {
        PcCase::Case1 => (0.5 + s, s, 0.5 - s, (0.5 + s).sqrt()),
        PcCase::Case2 => (0.5 + s, s, s - 0.5, (0.5 + s).sqrt()),
        PcCase::Case3 => (
            (2.0f64 / 3.0).sqrt(),
            (1.0f64 / 6.0).sqrt(),
            0.0,
            (5.0f64 / 6.0).sqrt(),
        ),
    };
    for (name, v) in [("a", a), ("b", b), ("c", c), ("F", f)] {
        let exact = format!("{name}.exact");
        report.push(&exact, v, Route::ClosedForm, None);
        report.pair(name, &exact, OPT_TOL);
    }
    report.push(
        "relation_residual",
        case.relation_residual(&k),
        Route::ClosedForm,
        None,
    );
    Ok(k)
}

fn sample_states(ctx: &Ctx, family: InputFamily, n: usize) -> Vec<PureQubit<f64>> {
    match ctx.global.seed {
        None => family.grid(n),
        Some(seed) => {
            let mut rng = StdRng::seed_from_u64(seed);
            (0..n)
                .map(|_| family.state(rng.random(), rng.random()))
                .collect()
        }
    }
}
