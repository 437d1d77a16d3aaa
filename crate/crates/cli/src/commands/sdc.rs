use qclone::qmat::{fidelity, hs_distance, LogBase, PureQubit};
use qclone::quadrature::average_over_alpha_try;
use qclone::scalar::rational_to_real;
use qclone::sdc::{self, SdcOverlaps, SdcSubcase};

use super::{alpha_grid, bh::grid_summary, grid_map, CliError, Ctx};
use crate::args::{exact_param, SdcAction, SdcArgs};
use crate::report::{ReportBundle, Route};

const ROUTE_TOL: f64 = 1e-12;
const QUAD_TOL: f64 = 1e-10;
const ENTROPY_TOL: f64 = 1e-9;

pub fn run(ctx: &Ctx, args: &SdcArgs) -> Result<ReportBundle, CliError> {
    match args.action {
        Some(SdcAction::Optimize { subcase }) => optimize(ctx, subcase),
        None => explicit(ctx, args),
    }
}

fn optimize(ctx: &Ctx, subcase: SdcSubcase) -> Result<ReportBundle, CliError> {
    let mut report = ReportBundle::new(&["sdc", "optimize"]);
    report.params([("subcase".to_string(), Some(subcase.to_string()))]);
    report.params(ctx.params());
    report.reference(&format!("sdc-{subcase}-optimum"));

    let opt = sdc::exact_optimum(subcase)?;
    for (name, q) in ["A", "B", "C"].iter().zip(&opt.overlaps) {
        report.push_exact(name, q);
    }
    report.push_exact("D_avg", &opt.avg_hs_norm);
    report.push_exact("F_sq_avg", &opt.avg_fidelity_sq);
    report.verdict("hessian", opt.hessian);

    let ov = opt.overlaps_real::<f64>();
    let csi = sdc::csi_feasible(&ov);
    report.verdict("csi", csi.verdict);
    if !csi.verdict.is_feasible() {
        report.warn("optimum overlaps admit no Hilbert-space realisation");
    }
    report.push(
        "D_avg.value",
        rational_to_real(&opt.avg_hs_norm),
        Route::ClosedForm,
        Some(QUAD_TOL),
    );
    averages(ctx, &mut report, &ov);
    Ok(report)
}

fn explicit(ctx: &Ctx, args: &SdcArgs) -> Result<ReportBundle, CliError> {
    let mut report = ReportBundle::new(&["sdc"]);
    report.params(exact_param("A", &args.a));
    report.params(exact_param("B", &args.b));
    report.params(exact_param("C", &args.c));
    report.params(exact_param("alpha", &args.alpha));
    if let Some(n) = args.alpha_grid {
        report.params([("alpha-grid".to_string(), Some(n.to_string()))]);
    }
    report.params(ctx.params());
    report.reference("sdc-overlaps");

    let (Some(a), Some(b), Some(c)) = (&args.a, &args.b, &args.c) else {
        return Err(CliError::Usage(
            "sdc needs `optimize` or all of --A, --B, --C".to_string(),
        ));
    };
    let exact = [a.clone(), b.clone(), c.clone()];
    let ov = SdcOverlaps::new(
        rational_to_real(a),
        rational_to_real(b),
        rational_to_real(c),
    )?;
    let csi = sdc::csi_feasible(&ov);
    report.verdict("csi", csi.verdict);
    report.verdict("csi.joint", csi.joint);
    report.verdict("csi.mirror", csi.mirror);
    if !csi.verdict.is_feasible() {
        report.warn("overlaps admit no Hilbert-space realisation; outputs need not be states");
    }

    if let Some(alpha) = &args.alpha {
        pointwise(ctx, &mut report, rational_to_real(alpha), &ov)?;
    }

    report.push_exact("D_avg", &sdc::avg_hs_norm_exact(&exact));
    report.push_exact("F_sq_avg", &sdc::avg_fidelity_exact(&exact));
    report.push(
        "D_avg.value",
        sdc::avg_hs_norm(&ov, SdcSubcase::General)?,
        Route::ClosedForm,
        Some(QUAD_TOL),
    );
    averages(ctx, &mut report, &ov);

    if let Some(n) = args.alpha_grid {
        let gaps = grid_map(ctx, &alpha_grid(n), |&alpha| {
            let psi = PureQubit::real(alpha)?;
            let rho = sdc::output_density_a(&psi, &ov)?;
            let d = (sdc::hs_norm_a(alpha, &ov)? - hs_distance(&psi.projector(), &rho)).abs();
            let f = match (sdc::fidelity(&psi, &ov), fidelity(&psi.projector(), &rho)) {
                (Ok(x), Ok(y)) => (x - y).abs(),
                _ => f64::NAN,
            };
            Ok((d, f))
        })?;
        grid_summary(&mut report, &gaps);
    }
    Ok(report)
}

fn pointwise(
    ctx: &Ctx,
    report: &mut ReportBundle,
    alpha: f64,
    ov: &SdcOverlaps<f64>,
) -> Result<(), CliError> {
    let base = ctx.global.entropy_base;
    let psi = PureQubit::real(alpha)?;
    let rho = sdc::output_density_a(&psi, ov)?;
    report.push(
        "D_a",
        sdc::hs_norm_a(alpha, ov)?,
        Route::ClosedForm,
        Some(ROUTE_TOL),
    );
    report.push(
        "D_a.matrix",
        hs_distance(&psi.projector(), &rho),
        Route::MatrixOracle,
        Some(ROUTE_TOL),
    );
    report.pair("D_a", "D_a.matrix", ROUTE_TOL);
    record(
        report,
        "F",
        sdc::fidelity(&psi, ov),
        Route::ClosedForm,
        ROUTE_TOL,
    );
    record(
        report,
        "F.matrix",
        fidelity(&psi.projector(), &rho),
        Route::MatrixOracle,
        ROUTE_TOL,
    );
    report.pair("F", "F.matrix", ROUTE_TOL);
    record(
        report,
        "K",
        sdc::entropy_k(&psi, ov),
        Route::ClosedForm,
        ROUTE_TOL,
    );
    report.push(
        "K.matrix",
        rho.spectral_gap(),
        Route::MatrixOracle,
        Some(ROUTE_TOL),
    );
    report.pair("K", "K.matrix", ROUTE_TOL);
    if ctx.global.as_printed {
        record(
            report,
            "K.as_printed",
            sdc::entropy_k_as_printed(&psi, ov),
            Route::ClosedForm,
            0.0,
        );
    }
    if let Ok(k) = sdc::entropy_k(&psi, ov) {
        record(
            report,
            "S",
            sdc::entropy_from_gap(k, base),
            Route::ClosedForm,
            ENTROPY_TOL,
        );
    }
    record(
        report,
        "S.matrix",
        sdc::entropy(&psi, ov, base),
        Route::MatrixOracle,
        ENTROPY_TOL,
    );
    report.pair("S", "S.matrix", ENTROPY_TOL);
    Ok(())
}

fn averages(ctx: &Ctx, report: &mut ReportBundle, ov: &SdcOverlaps<f64>) {
    let quad = ctx.global.quadrature;
    let base = ctx.global.entropy_base;
    let d = average_over_alpha_try(|alpha| sdc::hs_norm_a(alpha, ov), quad);
    record(report, "D_avg.quadrature", d, Route::Quadrature, QUAD_TOL);
    report.pair("D_avg.value", "D_avg.quadrature", QUAD_TOL);

    record(
        report,
        "F_avg",
        sdc::avg_fidelity(ov),
        Route::ClosedForm,
        QUAD_TOL,
    );
    let f_sq = average_over_alpha_try(
        |alpha| Ok(sdc::fidelity(&PureQubit::real(alpha)?, ov)?.powi(2)),
        quad,
    );
    record(
        report,
        "F_avg.quadrature",
        f_sq.map(f64::sqrt),
        Route::Quadrature,
        QUAD_TOL,
    );
    report.pair("F_avg", "F_avg.quadrature", QUAD_TOL);
    if ctx.global.literal_mean_fidelity {
        record(
            report,
            "F_avg.literal",
            sdc::avg_fidelity_literal(ov, quad),
            Route::Quadrature,
            QUAD_TOL,
        );
    }

    record(
        report,
        "S_avg",
        sdc::avg_entropy(ov, base, quad),
        Route::Quadrature,
        ENTROPY_TOL,
    );
    let gap_route = average_over_alpha_try(
        |alpha| sdc::entropy_from_gap(sdc::entropy_k(&PureQubit::real(alpha)?, ov)?, base),
        quad,
    );
    record(
        report,
        "S_avg.gap",
        gap_route,
        Route::Quadrature,
        ENTROPY_TOL,
    );
    report.pair("S_avg", "S_avg.gap", ENTROPY_TOL);
    report.verdict(
        "entropy_base",
        if base == LogBase::Two { "bits" } else { "nats" },
    );
}

/// Pushes `value`, or a warning when the route is undefined here.
fn record(
    report: &mut ReportBundle,
    name: &str,
    value: qclone::Result<f64>,
    route: Route,
    tol: f64,
) {
    match value {
        Ok(v) => report.push(name, v, route, Some(tol)),
        Err(e) => report.warn(format!("{name}: {e}")),
    }
}
