use qclone::bh::{self, BhOverlaps, Table1Column};
use qclone::qmat::{fidelity, hs_distance, PureQubit};
use qclone::scalar::rational_to_real;

use super::{alpha_grid, grid_map, CliError, Ctx};
use crate::args::{exact_param, BhArgs};
use crate::report::{ReportBundle, Route};

const ROUTE_TOL: f64 = 1e-12;
const QUAD_TOL: f64 = 1e-9;

pub fn run(ctx: &Ctx, args: &BhArgs) -> Result<ReportBundle, CliError> {
    let mut report = ReportBundle::new(&["bh"]);
    if args.table1 {
        report.params([("table1".to_string(), None)]);
    }
    report.params(exact_param("A", &args.a));
    report.params(exact_param("C", &args.c));
    report.params(exact_param("alpha", &args.alpha));
    if let Some(n) = args.alpha_grid {
        report.params([("alpha-grid".to_string(), Some(n.to_string()))]);
    }
    report.params(ctx.params());

    if args.table1 {
        report.reference("bh-comparison-table");
        let columns = bh::table1::<f64>(ctx.global.quadrature)?;
        for col in &columns {
            table_column(&mut report, col);
        }
        let improved = BhOverlaps::<f64>::improved();
        report.push(
            "improved.D_a.exact",
            (3.0 - 2.0 * 2f64.sqrt()) / 4.0,
            Route::ClosedForm,
            None,
        );
        report.push(
            "improved.F.exact",
            (0.5 + 1.0 / (2.0 * 2f64.sqrt())).sqrt(),
            Route::ClosedForm,
            None,
        );
        report.push(
            "improved.D_ab_avg.exact",
            37.0 / 15.0 - 8.0 * 2f64.sqrt() / 5.0,
            Route::ClosedForm,
            None,
        );
        report.pair("improved.D_a", "improved.D_a.exact", ROUTE_TOL);
        report.pair("improved.F", "improved.F.exact", ROUTE_TOL);
        report.pair("improved.D_ab_avg", "improved.D_ab_avg.exact", QUAD_TOL);
        report.pair("buzek-hillery.D_a", "buzek-hillery.D_a.exact", ROUTE_TOL);
        report.verdict("improved.joint_csi", bh::joint_csi_feasible(&improved));
        report.verdict(
            "buzek-hillery.joint_csi",
            bh::joint_csi_feasible(&BhOverlaps::<f64>::buzek_hillery()),
        );
        return Ok(report);
    }

    let (Some(a), Some(c)) = (&args.a, &args.c) else {
        return Err(CliError::Usage(
            "bh needs --table1 or both --A and --C".to_string(),
        ));
    };
    let ov = BhOverlaps::new(rational_to_real::<f64>(a), rational_to_real::<f64>(c))?;
    report.reference("bh-overlaps");
    let verdict = bh::joint_csi_feasible(&ov);
    report.verdict("joint_csi", verdict);
    if !verdict.is_feasible() {
        report.warn("overlaps admit no Hilbert-space realisation; outputs need not be states");
    }

    if let Some(alpha) = &args.alpha {
        let alpha = rational_to_real::<f64>(alpha);
        let psi = PureQubit::real(alpha)?;
        let rho = bh::output_density_a(&psi, &ov);
        report.push(
            "D_a",
            bh::hs_norm_a(alpha, &ov)?,
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
        match bh::fidelity_closed(&psi, &ov) {
            Ok(f) => report.push("F", f, Route::ClosedForm, Some(ROUTE_TOL)),
            Err(e) => report.warn(format!("F: {e}")),
        }
        match fidelity(&psi.projector(), &rho) {
            Ok(f) => report.push("F.matrix", f, Route::MatrixOracle, Some(ROUTE_TOL)),
            Err(e) => report.warn(format!("F.matrix: {e}")),
        }
        report.pair("F", "F.matrix", ROUTE_TOL);
        report.push(
            "D_ab",
            bh::joint_hs_distance(&psi, &ov),
            Route::MatrixOracle,
            None,
        );
        if ctx.global.as_printed {
            report.push(
                "D_ab.as_printed",
                bh::hs_norm_ab_as_printed(alpha, &ov)?,
                Route::ClosedForm,
                None,
            );
        }
    }

    let quad = ctx.global.quadrature;
    report.push(
        "D_ab_avg",
        bh::avg_hs_norm_ab(&ov, quad)?,
        Route::Quadrature,
        Some(QUAD_TOL),
    );

    if let Some(n) = args.alpha_grid {
        let gaps = grid_map(ctx, &alpha_grid(n), |&alpha| {
            let psi = PureQubit::real(alpha)?;
            let rho = bh::output_density_a(&psi, &ov);
            let d = (bh::hs_norm_a(alpha, &ov)? - hs_distance(&psi.projector(), &rho)).abs();
            let f = match (
                bh::fidelity_closed(&psi, &ov),
                fidelity(&psi.projector(), &rho),
            ) {
                (Ok(x), Ok(y)) => (x - y).abs(),
                _ => f64::NAN,
            };
            Ok((d, f))
        })?;
        grid_summary(&mut report, &gaps);
    }
    Ok(report)
}

fn table_column(report: &mut ReportBundle, col: &Table1Column<f64>) {
    let l = &col.label;
    report.push(&format!("{l}.A"), col.overlaps.a(), Route::ClosedForm, None);
    report.push(&format!("{l}.C"), col.overlaps.c(), Route::ClosedForm, None);
    report.push(
        &format!("{l}.D_a"),
        col.hs_norm_a,
        Route::ClosedForm,
        Some(ROUTE_TOL),
    );
    if l == "buzek-hillery" {
        report.push(
            &format!("{l}.D_a.exact"),
            1.0 / 18.0,
            Route::ClosedForm,
            None,
        );
    }
    report.push(
        &format!("{l}.F"),
        col.fidelity,
        Route::ClosedForm,
        Some(ROUTE_TOL),
    );
    report.push(
        &format!("{l}.D_ab_avg"),
        col.avg_hs_norm_ab,
        Route::Quadrature,
        Some(QUAD_TOL),
    );
}

/// Worst closed-form versus matrix gaps over an α grid.
pub fn grid_summary(report: &mut ReportBundle, gaps: &[(f64, f64)]) {
    let worst = |f: fn(&(f64, f64)) -> f64| gaps.iter().map(f).fold(0.0f64, f64::max);
    let d = worst(|g| g.0);
    let f = worst(|g| g.1);
    report.push("grid.max_gap.D_a", d, Route::MatrixOracle, Some(ROUTE_TOL));
    report.push("grid.max_gap.F", f, Route::MatrixOracle, Some(ROUTE_TOL));
    if gaps.iter().any(|g| g.1.is_nan()) {
        report.warn("fidelity undefined at some grid points");
    }
    if d > ROUTE_TOL || f > ROUTE_TOL {
        report.discrepant = true;
    }
}
