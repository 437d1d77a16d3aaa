//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! run with `--nocapture` to see them.

use qclone::bh::{self, BhOverlaps};
use qclone::machine::CsiVerdict;
use qclone::optimize::determinant;
use qclone::phase_covariant::{self as pc, InputFamily, PcCase, PcCoeffs};
use qclone::qmat::{fidelity, hs_distance, partial_trace, LogBase, PureQubit, Subsystem};
use qclone::quadrature::QuadratureSpec;
use qclone::scalar::{ratio, rational_to_real};
use qclone::sdc::{self, SdcOverlaps, SdcSubcase};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const EXACT: f64 = 1e-12;
const QUADRATURE: f64 = 1e-9;
const ROUNDED_FIDELITY: f64 = 5e-4;
const ROUNDED_ENTROPY: f64 = 2e-3;
const HESSIAN_DET: f64 = 1e-10;
const QUOTED_ENDPOINT: f64 = 1e-3;
const RANDOM_DRAWS: usize = 1000;
const SEED: u64 = 0x5eed_c10e;
/// Base-e mean entropy at the general optimum, from 128-node Gauss-Legendre.
const ENTROPY_NATS_GENERAL: f64 = 0.572_924;
const ENTROPY_NATS_TOL: f64 = 1e-6;

type Outcome = Result<(), String>;

fn close(what: &str, got: f64, want: f64, tol: f64) -> Outcome {
    if (got - want).abs() <= tol {
        Ok(())
    } else {
        Err(format!(
            "{what}: got {got:.15}, want {want:.15} (tol {tol:e})"
        ))
    }
}

fn ensure(what: &str, cond: bool) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn alpha_grid() -> impl Iterator<Item = f64> {
    (0..=100).map(|i| i as f64 / 100.0)
}

fn real(alpha: f64) -> PureQubit<f64> {
    PureQubit::real(alpha).unwrap()
}

fn bh_improved_hs_norm() -> Outcome {
    let ov = BhOverlaps::<f64>::improved();
    let want = (3.0 - 2.0 * 2f64.sqrt()) / 4.0;
    close("constant", want, 0.042_893_2, 1e-7)?;
    for alpha in alpha_grid() {
        let psi = real(alpha);
        close(
            "closed D_a",
            bh::hs_norm_a(alpha, &ov).unwrap(),
            want,
            EXACT,
        )?;
        let matrix = hs_distance(&psi.projector(), &bh::output_density_a(&psi, &ov));
        close("matrix D_a", matrix, want, EXACT)?;
    }
    Ok(())
}

fn bh_improved_fidelity() -> Outcome {
    let ov = BhOverlaps::<f64>::improved();
    let want = (0.5 + 1.0 / (2.0 * 2f64.sqrt())).sqrt();
    close("constant", want, 0.923_879_5, 1e-7)?;
    for family in [InputFamily::RealPairs, InputFamily::FullyComplex] {
        for psi in family.grid::<f64>(101) {
            close(
                "closed F",
                bh::fidelity_closed(&psi, &ov).unwrap(),
                want,
                EXACT,
            )?;
            let matrix = fidelity(&psi.projector(), &bh::output_density_a(&psi, &ov)).unwrap();
            close("matrix F", matrix, want, EXACT)?;
        }
    }
    Ok(())
}

fn bh_original_values() -> Outcome {
    let ov = BhOverlaps::<f64>::buzek_hillery();
    for alpha in alpha_grid() {
        let psi = real(alpha);
        let rho = bh::output_density_a(&psi, &ov);
        close(
            "closed D_a",
            bh::hs_norm_a(alpha, &ov).unwrap(),
            1.0 / 18.0,
            EXACT,
        )?;
        close(
            "matrix D_a",
            hs_distance(&psi.projector(), &rho),
            1.0 / 18.0,
            EXACT,
        )?;
        close(
            "closed F",
            bh::fidelity_closed(&psi, &ov).unwrap(),
            (5.0f64 / 6.0).sqrt(),
            EXACT,
        )?;
        close(
            "matrix F",
            fidelity(&psi.projector(), &rho).unwrap(),
            (5.0f64 / 6.0).sqrt(),
            EXACT,
        )?;
        close(
            "joint distance",
            bh::joint_hs_distance(&psi, &ov),
            2.0 / 9.0,
            EXACT,
        )?;
    }
    Ok(())
}

fn bh_improved_joint_average() -> Outcome {
    let ov = BhOverlaps::<f64>::improved();
    let want = 37.0 / 15.0 - 8.0 * 2f64.sqrt() / 5.0;
    close("rounded", want, 0.2039, 5e-5)?;
    for n in [64, 128] {
        let got = bh::avg_hs_norm_ab(&ov, QuadratureSpec::Gauss(n)).unwrap();
        close(&format!("Gauss({n})"), got, want, QUADRATURE)?;
    }
    Ok(())
}

fn phase_covariant_optima() -> Outcome {
    let s = (1.0f64 / 8.0).sqrt();
    let best = (0.5 + s).sqrt();
    for (case, c) in [(PcCase::Case1, 0.5 - s), (PcCase::Case2, -(0.5 - s))] {
        let opt = pc::maximize_fidelity::<f64>(case).unwrap();
        close("F", opt.fidelity, best, QUADRATURE)?;
        close("a", opt.coeffs.a(), 0.5 + s, QUADRATURE)?;
        close("b", opt.coeffs.b(), s, QUADRATURE)?;
        close("c", opt.coeffs.c(), c, QUADRATURE)?;
        ensure("unitarity", opt.coeffs.unitarity_residual() < 1e-12)?;
    }
    let opt = pc::maximize_fidelity::<f64>(PcCase::Case3).unwrap();
    close("case 3 F", opt.fidelity, (5.0f64 / 6.0).sqrt(), EXACT)?;
    ensure("unitarity", opt.coeffs.unitarity_residual() < 1e-12)
}

fn sdc_exact_optima() -> Outcome {
    let g = sdc::exact_optimum(SdcSubcase::General).map_err(|e| e.to_string())?;
    ensure(
        "general point",
        g.point == vec![ratio(13, 59), ratio(9, 118), ratio(25, 236)],
    )?;
    ensure("general value", g.avg_hs_norm == ratio(157, 885))?;
    let e = sdc::exact_optimum(SdcSubcase::EqualAB).map_err(|e| e.to_string())?;
    ensure(
        "equalAB point",
        e.point == vec![ratio(5, 41), ratio(-5, 82)],
    )?;
    ensure("equalAB value", e.avg_hs_norm == ratio(38, 205))?;
    let z = sdc::exact_optimum(SdcSubcase::ZeroC).map_err(|e| e.to_string())?;
    ensure(
        "zeroC point",
        z.point == vec![ratio(49, 282), ratio(19, 188)],
    )?;
    close(
        "zeroC value",
        rational_to_real(&z.avg_hs_norm),
        0.1799,
        5e-5,
    )
}

fn sdc_averaged_fidelity() -> Outcome {
    for (sub, rounded) in SdcSubcase::ALL.into_iter().zip([0.8474, 0.8420, 0.8462]) {
        let ov = sdc::exact_optimum(sub).unwrap().overlaps_real::<f64>();
        let [a, b, c] = ov.as_array();
        let closed = (11.0 / 15.0 + 2.0 * a / 15.0 - 2.0 * b / 5.0 - 2.0 * c / 15.0).sqrt();
        let got = sdc::avg_fidelity(&ov).unwrap();
        close(&format!("{sub} closed"), got, closed, EXACT)?;
        close(&format!("{sub} rounded"), got, rounded, ROUNDED_FIDELITY)?;
    }
    Ok(())
}

fn sdc_averaged_entropy() -> Outcome {
    for (sub, rounded) in SdcSubcase::ALL.into_iter().zip([0.825, 0.8438, 0.8297]) {
        let ov = sdc::exact_optimum(sub).unwrap().overlaps_real::<f64>();
        let got = sdc::avg_entropy(&ov, LogBase::Two, QuadratureSpec::Gauss(128)).unwrap();
        close(&format!("{sub}"), got, rounded, ROUNDED_ENTROPY)?;
    }
    Ok(())
}

fn sdc_hessian_singular() -> Outcome {
    for alpha in alpha_grid() {
        let h = sdc::hessian_da(alpha).unwrap();
        let rows: Vec<Vec<f64>> = h.iter().map(|r| r.to_vec()).collect();
        let det = determinant(&rows);
        ensure(
            &format!("det = {det:e} at alpha = {alpha}"),
            det.abs() < HESSIAN_DET,
        )?;
    }
    Ok(())
}

fn random_state(rng: &mut StdRng) -> PureQubit<f64> {
    InputFamily::FullyComplex.state(rng.random::<f64>(), rng.random::<f64>())
}

fn random_draw_properties() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED);
    let max_c = 1.0 / (2.0 * 2f64.sqrt());
    for _ in 0..RANDOM_DRAWS {
        let a: f64 = rng.random_range(0.0..=0.5);
        let c_hi = (a * (1.0 - 2.0 * a)).sqrt().min(max_c);
        let ov = BhOverlaps::new(a, rng.random_range(0.0..=c_hi)).unwrap();
        let psi = random_state(&mut rng);
        let rho = bh::output_density_a(&psi, &ov);
        let joint = bh::joint_output_density(&psi, &ov);
        let rho_a = partial_trace(&joint, Subsystem::B);
        let rho_b = partial_trace(&joint, Subsystem::A);
        ensure(
            "bh reduction",
            rho_a.matrix().max_abs_diff(rho.matrix()) <= EXACT,
        )?;
        ensure(
            "bh symmetry",
            rho_a.matrix().max_abs_diff(rho_b.matrix()) <= EXACT,
        )?;
        let f = fidelity(&psi.projector(), &rho).unwrap();
        close("bh F", bh::fidelity_closed(&psi, &ov).unwrap(), f, EXACT)?;
        let alpha: f64 = rng.random();
        let real_psi = real(alpha);
        let d = hs_distance(&real_psi.projector(), &bh::output_density_a(&real_psi, &ov));
        close("bh D_a", bh::hs_norm_a(alpha, &ov).unwrap(), d, EXACT)?;
    }
    for _ in 0..RANDOM_DRAWS {
        let v: [f64; 3] = [
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ];
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let k = PcCoeffs::new(v[0] / norm, v[1] / norm / 2f64.sqrt(), v[2] / norm).unwrap();
        let psi = random_state(&mut rng);
        let rho = pc::output_density_a(&psi, &k);
        let joint = pc::joint_output_density(&psi, &k);
        let rho_a = partial_trace(&joint, Subsystem::B);
        let rho_b = partial_trace(&joint, Subsystem::A);
        ensure(
            "pc reduction",
            rho_a.matrix().max_abs_diff(rho.matrix()) <= EXACT,
        )?;
        ensure(
            "pc symmetry",
            rho_a.matrix().max_abs_diff(rho_b.matrix()) <= EXACT,
        )?;
        let f = fidelity(&psi.projector(), &rho).unwrap();
        close("pc F", pc::fidelity(&psi, &k).unwrap(), f, EXACT)?;
        close(
            "pc F moduli",
            pc::fidelity_moduli_form(&psi, &k).unwrap(),
            f,
            EXACT,
        )?;
    }
    for _ in 0..RANDOM_DRAWS {
        let a: f64 = rng.random_range(0.0..=1.0 / 3.0);
        let b: f64 = rng.random_range(0.0..=1.0 / 3.0);
        let c_hi = (b * (1.0 - 3.0 * a))
            .min(a * (1.0 - 3.0 * b))
            .max(0.0)
            .sqrt();
        let ov = SdcOverlaps::new(a, b, rng.random_range(-c_hi..=c_hi)).unwrap();
        ensure(
            "sdc draw feasible",
            sdc::csi_feasible(&ov).verdict == CsiVerdict::Feasible,
        )?;
        let alpha: f64 = rng.random();
        let psi = real(alpha);
        let rho = sdc::output_density_a(&psi, &ov).unwrap();
        let joint = sdc::joint_output_density(&psi, &ov).unwrap();
        let rho_a = partial_trace(&joint, Subsystem::B);
        let rho_b = partial_trace(&joint, Subsystem::A);
        ensure(
            "sdc reduction",
            rho_a.matrix().max_abs_diff(rho.matrix()) <= EXACT,
        )?;
        ensure(
            "sdc symmetry",
            rho_a.matrix().max_abs_diff(rho_b.matrix()) <= EXACT,
        )?;
        close(
            "sdc D_a",
            sdc::hs_norm_a(alpha, &ov).unwrap(),
            hs_distance(&psi.projector(), &rho),
            EXACT,
        )?;
        let f = fidelity(&psi.projector(), &rho).unwrap();
        close("sdc F", sdc::fidelity(&psi, &ov).unwrap(), f, EXACT)?;
    }
    Ok(())
}

fn feasibility_findings() -> Outcome {
    let fig1 = sdc::feasibility_intervals(SdcSubcase::EqualAB).unwrap();
    ensure("fig 1 disjoint", fig1.disjoint)?;
    ensure("fig 1 endpoint count", fig1.endpoints.len() == 4)?;
    let mut quoted = [0.3568, 0.9342, 0.4597, 0.8881];
    quoted.sort_by(f64::total_cmp);
    for (got, want) in fig1.endpoints.iter().zip(quoted) {
        close("fig 1 endpoint", *got, want, QUOTED_ENDPOINT)?;
    }
    let fig2 = sdc::feasibility_intervals(SdcSubcase::ZeroC).unwrap();
    ensure("fig 2 disjoint", fig2.disjoint)?;
    ensure("fig 2 endpoint count", fig2.endpoints.len() == 2)?;
    close(
        "fig 2 low",
        fig2.endpoints[0],
        2.0 / 13f64.sqrt(),
        QUADRATURE,
    )?;
    close(
        "fig 2 high",
        fig2.endpoints[1],
        3.0 / 13f64.sqrt(),
        QUADRATURE,
    )?;
    ensure("fig 2 discrepancy flagged", fig2.reference_discrepancy)?;
    ensure("fig 1 not flagged", !fig1.reference_discrepancy)
}

fn inconsistency_detectors() -> Outcome {
    let verdict = bh::joint_csi_feasible(&BhOverlaps::<f64>::improved());
    ensure(
        &format!("improved pair verdict {verdict}"),
        verdict == CsiVerdict::MarginalOnly,
    )?;
    ensure("verdict label", verdict.to_string() == "marginal-only")?;
    let ov = sdc::exact_optimum(SdcSubcase::General)
        .unwrap()
        .overlaps_real::<f64>();
    let nats = sdc::avg_entropy(&ov, LogBase::E, QuadratureSpec::Gauss(128)).unwrap();
    close(
        "base-e entropy",
        nats,
        ENTROPY_NATS_GENERAL,
        ENTROPY_NATS_TOL,
    )?;
    ensure("base-e differs from 0.825", (nats - 0.825).abs() > 0.2)?;
    let bits = sdc::avg_entropy(&ov, LogBase::Two, QuadratureSpec::Gauss(128)).unwrap();
    close("base-2 entropy", bits, 0.825, ROUNDED_ENTROPY)
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("BH improved D_a constant", bh_improved_hs_norm),
        ("BH improved fidelity constant", bh_improved_fidelity),
        ("BH original D_a, F and joint distance", bh_original_values),
        (
            "BH improved averaged joint distance",
            bh_improved_joint_average,
        ),
        (
            "phase-covariant maximised fidelities",
            phase_covariant_optima,
        ),
        ("SDC exact optima", sdc_exact_optima),
        ("SDC averaged fidelities", sdc_averaged_fidelity),
        ("SDC averaged entropies", sdc_averaged_entropy),
        ("SDC Hessian singular", sdc_hessian_singular),
        ("random-draw reductions and routes", random_draw_properties),
        ("feasibility curves", feasibility_findings),
        ("inconsistency detectors", inconsistency_detectors),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("PASS {:>2} {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
