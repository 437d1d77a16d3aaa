use std::fmt::Write as _;

use qclone::sdc::{self, sample_alphas, FeasibilityReport};

use super::{grid_map, CliError, Ctx};
use crate::args::FiguresArgs;
use crate::report::{sig12, ReportBundle, Route};

/// Endpoint accuracy of the bisection.
const ROOT_TOL: f64 = 1e-12;

pub struct FigureOutput {
    pub report: ReportBundle,
    pub csv: String,
}

pub fn run(ctx: &Ctx, args: &FiguresArgs) -> Result<FigureOutput, CliError> {
    let subcase = args.figure.subcase();
    let alphas = sample_alphas(args.samples)?;
    let mut feas = sdc::feasibility_intervals(subcase)?;
    feas.samples = grid_map(ctx, &alphas, |&alpha| sdc::curve_sample(subcase, alpha))?;

    let mut report = ReportBundle::new(&["figures", args.figure.name()]);
    report.params([("samples".to_string(), Some(args.samples.to_string()))]);
    report.reference(&format!("sdc-{subcase}-perfect-cloning-curves"));
    for (i, x) in feas.endpoints.iter().enumerate() {
        report.push(
            &format!("endpoint.{i}"),
            *x,
            Route::ClosedForm,
            Some(ROOT_TOL),
        );
    }
    for (i, x) in feas.reference_endpoints.iter().enumerate() {
        report.push(
            &format!("reference_endpoint.{i}"),
            *x,
            Route::Reference,
            None,
        );
    }
    report.verdict("disjoint", feas.disjoint);
    report.verdict("reference_discrepancy", feas.reference_discrepancy);
    if feas.reference_discrepancy {
        report.discrepant = true;
        report.warn(format!(
            "computed endpoints {:?} differ from reference endpoints {:?}",
            feas.endpoints, feas.reference_endpoints
        ));
    }
    let csv = to_csv(&feas);
    let mut sidecar = feas;
    sidecar.samples.clear();
    report.data = Some(serde_json::to_value(&sidecar).expect("plain data"));
    Ok(FigureOutput { report, csv })
}

fn to_csv(feas: &FeasibilityReport) -> String {
    let [first, second] = &feas.curves;
    let (p, q) = (&first.name, &second.name);
    let mut out = format!("alpha,{p},{p}_feasible,{q},{q}_feasible\n");
    for s in &feas.samples {
        writeln!(
            out,
            "{},{},{},{},{}",
            sig12(s.alpha),
            sig12(s.first),
            u8::from(s.first_feasible),
            sig12(s.second),
            u8::from(s.second_feasible)
        )
        .unwrap();
    }
    out
}
