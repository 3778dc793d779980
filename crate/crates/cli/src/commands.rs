// SPDX-License-Identifier: Apache-2.0

use annulus_cp::analysis::{
    critical_angles, family_intervals, repulsion_map, second_region_threshold,
    torsion_free_analytic, torsion_free_heights, AnalyticCase, Family, DEFAULT_U_MAX,
};
use annulus_cp::closed_forms::{DiscMode, RingComponent};
use annulus_cp::electrostatics::{PolarizedRing, RingPolarization};
use annulus_cp::machine::{cycle_report, machine_energy, HeightChoice};
use annulus_cp::verification::{coarse_grid, verify_all, VerifyGrid};
use annulus_cp::{AnnularPolarizability, AtomPolarizability, Observable, QuadratureSettings};
use anyhow::{bail, Result};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::eval::{build_table, resolve, DipoleModel, Evaluator, Model, TableSpec};
use crate::output::{emit, metadata, Cell, Format, Table};
use crate::parse::{angle, fixed_list, grid, number};
use crate::{
    ChoiceArg, Command, ElectroArgs, GeometryKind, MachineArgs, OutputArgs, PolKind, RegionsArgs,
    RingPolArg, RootsArgs, Source, TableArgs, TargetArgs, ThresholdArgs, VerifyArgs, VerifyFailed,
};

pub fn run(cmd: &Command) -> Result<()> {
    match cmd {
        Command::Energy(a) => table(cmd, "energy", a, &[(Observable::Energy, "value")]),
        Command::Force(a) => table(cmd, "force", a, &[(Observable::Force, "value")]),
        Command::Torque(a) => table(cmd, "torque", a, &[(Observable::Torque, "value")]),
        Command::Scan(a) => table(
            cmd,
            "scan",
            a,
            &[
                (Observable::Energy, "energy"),
                (Observable::Force, "force"),
                (Observable::Torque, "torque"),
            ],
        ),
        Command::Roots(a) => roots(cmd, a),
        Command::Regions(a) => regions(cmd, a),
        Command::Threshold(a) => threshold(cmd, a),
        Command::Machine(a) => machine(cmd, a),
        Command::Verify(a) => verify(cmd, a),
        Command::Electro(a) => electro(cmd, a),
    }
}

/// Writes a table as CSV (default) or a report object as JSON.
fn finish(
    cmd: &Command,
    name: &str,
    out: &OutputArgs,
    default: Format,
    extra: Value,
    table: Option<&Table>,
    report: Value,
) -> Result<()> {
    let meta = metadata(name, cmd, extra)?;
    let text = match (out.format.unwrap_or(default), table) {
        (Format::Csv, Some(t)) => t.to_csv(&meta),
        (Format::Csv, None) => bail!("{name} has no tabular form; use --format json"),
        (Format::Json, _) => {
            let mut obj = json!({ "meta": meta, "inputs": cmd });
            obj["results"] = report;
            if let Some(t) = table {
                if obj["results"].is_null() {
                    obj["results"] = t.to_json();
                }
            }
            format!("{}\n", serde_json::to_string_pretty(&obj)?)
        }
    };
    emit(&text, out.output.as_deref())
}

fn settings(rel_tol: f64) -> Result<QuadratureSettings> {
    let s = QuadratureSettings::default().with_rel_tol(rel_tol);
    s.validate()?;
    Ok(s)
}

fn annulus_pol(t: &TargetArgs) -> Result<AnnularPolarizability> {
    let pol = match &t.components {
        Some(c) => {
            let v = fixed_list(c, 3)?;
            AnnularPolarizability::new(v[0], v[1], v[2])
        }
        None => match t.pol {
            PolKind::Radial => AnnularPolarizability::radial(1.0),
            PolKind::Axial => AnnularPolarizability::axial(1.0),
            PolKind::Tangential => AnnularPolarizability::tangential(1.0),
            PolKind::Isotropic => AnnularPolarizability::in_plane_isotropic(1.0),
        },
    };
    pol.validate()?;
    Ok(pol)
}

fn check_outer(t: &TargetArgs) -> Result<()> {
    if t.geometry == GeometryKind::Disc && !(t.b > 1.0 && t.b.is_finite()) {
        bail!(annulus_cp::Error::InvalidGeometry(format!(
            "--b must exceed 1 (units of a), got {}",
            t.b
        )));
    }
    Ok(())
}

fn table(
    cmd: &Command,
    name: &str,
    args: &TableArgs,
    columns: &[(Observable, &str)],
) -> Result<()> {
    check_outer(&args.target)?;
    let a = args.units.a;
    if !(a > 0.0 && a.is_finite()) {
        bail!(annulus_cp::Error::InvalidGeometry(format!(
            "--a must be positive, got {a}"
        )));
    }
    let alpha = fixed_list(&args.atom.alpha, 3)?;
    let atom = AtomPolarizability::new(
        [alpha[0], alpha[1], alpha[2]],
        0.0,
        angle(&args.atom.beta)?,
        angle(&args.atom.phi_s)?,
    );
    atom.validate()?;
    let model = Model {
        geometry: args.target.geometry,
        a,
        b_over_a: args.target.b,
        atom,
        pol: annulus_pol(&args.target)?,
        kernel: args.kernel,
        settings: settings(args.rel_tol)?,
    };
    let heights = grid(&args.h, number)?;
    let thetas = grid(&args.theta, angle)?;
    let sources = columns
        .iter()
        .map(|&(obs, _)| resolve(&model, obs, args.source))
        .collect::<Result<Vec<_>>>()?;
    let spec = TableSpec {
        columns: columns.to_vec(),
        heights: &heights,
        thetas: &thetas,
        absolute: args.units.absolute,
        ev: args.units.ev,
    };
    let t = build_table(&model, &spec, &sources)?;
    let scales: Vec<Value> = columns
        .iter()
        .zip(&sources)
        .map(|(&(obs, col), src)| json!({"column": col, "observable": obs, "source": src, "scale": model.scale(obs)}))
        .collect();
    finish(
        cmd,
        name,
        &args.out,
        Format::Csv,
        json!({ "columns": scales }),
        Some(&t),
        Value::Null,
    )
}

fn family(t: &TargetArgs) -> Result<Family> {
    if t.components.is_some() {
        bail!("--components is not supported here; pick a --pol preset");
    }
    let mode = |p: PolKind| -> Result<DiscMode> {
        Ok(match p {
            PolKind::Radial => DiscMode::Radial,
            PolKind::Axial => DiscMode::Axial,
            PolKind::Isotropic => DiscMode::Isotropic,
            PolKind::Tangential => bail!("discs and plates take radial, axial or isotropic"),
        })
    };
    let f = match (t.geometry, t.pol) {
        (GeometryKind::Ring, PolKind::Radial) => Family::ring(RingComponent::Radial),
        (GeometryKind::Ring, PolKind::Axial) => Family::ring(RingComponent::Axial),
        (GeometryKind::Ring, PolKind::Tangential) => Family::ring(RingComponent::Tangential),
        (GeometryKind::Ring, PolKind::Isotropic) => Family::RingInPlaneIsotropic,
        (GeometryKind::Disc, p) => Family::Disc {
            mode: mode(p)?,
            b: t.b,
        },
        (GeometryKind::Plate, p) => Family::Plate { mode: mode(p)? },
    };
    f.validate()?;
    Ok(f)
}

fn analytic_case(f: &Family) -> Option<AnalyticCase> {
    AnalyticCase::ALL.into_iter().find(|c| c.family() == *f)
}

fn window(f: &Family, w: Option<f64>) -> f64 {
    w.unwrap_or_else(|| f.default_window())
}

fn roots(cmd: &Command, args: &RootsArgs) -> Result<()> {
    let f = family(&args.target)?;
    let w = window(&f, args.window);
    let numeric = torsion_free_heights(&f, w)?;
    let analytic = analytic_case(&f).map(torsion_free_analytic);
    let mut t = Table::new(["index", "h_over_a", "analytic_h_over_a"]);
    for (k, &r) in numeric.iter().enumerate() {
        let exact = analytic
            .as_ref()
            .and_then(|v| v.get(k))
            .copied()
            .unwrap_or(f64::NAN);
        t.rows.push(vec![
            Cell::Text(k.to_string()),
            Cell::Num(r),
            Cell::Num(exact),
        ]);
    }
    let report = json!({
        "family": f,
        "window": w,
        "roots_h_over_a": numeric,
        "analytic_h_over_a": analytic,
        "method": "numeric: Brent on the cos2θ coefficient; analytic: quadratic in (h/a)²",
    });
    finish(
        cmd,
        "roots",
        &args.out,
        Format::Json,
        json!({ "family": f }),
        Some(&t),
        report,
    )
}

fn regions(cmd: &Command, args: &RegionsArgs) -> Result<()> {
    let f = family(&args.target)?;
    let thetas = grid(&args.theta, angle)?;
    if let Some(h) = &args.map_h {
        let heights = grid(h, number)?;
        let map = repulsion_map(&f, &heights, &thetas)?;
        let mut t = Table::new(["theta_deg", "h_over_a", "repulsive"]);
        for (i, th) in map.theta.iter().enumerate() {
            for (j, u) in map.u.iter().enumerate() {
                let flag = if map.mask[i][j] { "1" } else { "0" };
                t.rows.push(vec![
                    Cell::Num(th.to_degrees()),
                    Cell::Num(*u),
                    Cell::Text(flag.into()),
                ]);
            }
        }
        let report = json!({ "family": f, "map": map, "method": "force sign on the grid" });
        return finish(
            cmd,
            "regions",
            &args.out,
            Format::Csv,
            json!({ "family": f }),
            Some(&t),
            report,
        );
    }
    let w = args.window.unwrap_or(DEFAULT_U_MAX);
    let per_theta = thetas
        .par_iter()
        .map(|&th| family_intervals(&f, th, w))
        .collect::<annulus_cp::Result<Vec<_>>>()?;
    let crit = critical_angles(&f, w, args.angle_tol)?;
    let mut t = Table::new(["theta_deg", "lo_h_over_a", "hi_h_over_a"]);
    let mut rows = Vec::new();
    for (th, ivs) in thetas.iter().zip(&per_theta) {
        for iv in ivs {
            t.rows.push(vec![
                Cell::Num(th.to_degrees()),
                Cell::Num(iv.lo),
                Cell::Num(iv.hi),
            ]);
        }
        rows.push(json!({ "theta_deg": th.to_degrees(), "intervals": ivs }));
    }
    let crit_deg: Vec<f64> = crit.iter().map(|c| c.to_degrees()).collect();
    let report = json!({
        "family": f,
        "window": w,
        "repulsive": rows,
        "critical_angles_deg": crit_deg,
        "method": "force sign scan with golden-section refinement; edges by Brent",
    });
    finish(
        cmd,
        "regions",
        &args.out,
        Format::Json,
        json!({ "family": f, "critical_angles_deg": crit_deg }),
        Some(&t),
        report,
    )
}

#[derive(Serialize)]
struct ThresholdRow {
    theta_deg: f64,
    b_star: f64,
    present_below: bool,
}

fn threshold(cmd: &Command, args: &ThresholdArgs) -> Result<()> {
    let thetas = grid(&args.theta, angle)?;
    if !(args.tol > 0.0 && args.tol < 0.1) {
        bail!(annulus_cp::Error::InvalidParameter(format!(
            "--tol must lie in (0, 0.1), got {}",
            args.tol
        )));
    }
    let rows = thetas
        .iter()
        .map(|&th| {
            let r = second_region_threshold(th, args.tol)?;
            Ok(ThresholdRow {
                theta_deg: th.to_degrees(),
                b_star: r.b,
                present_below: r.present_below,
            })
        })
        .collect::<annulus_cp::Result<Vec<_>>>()?;
    let mut t = Table::new(["theta_deg", "b_star_over_a", "present_below"]);
    for r in &rows {
        t.rows.push(vec![
            Cell::Num(r.theta_deg),
            Cell::Num(r.b_star),
            Cell::Text(r.present_below.to_string()),
        ]);
    }
    let report = json!({
        "thresholds": rows,
        "tolerance": args.tol,
        "method": "bisection on the existence of a detached repulsive interval",
    });
    finish(
        cmd,
        "threshold",
        &args.out,
        Format::Json,
        json!({}),
        Some(&t),
        report,
    )
}

fn machine(cmd: &Command, args: &MachineArgs) -> Result<()> {
    let choice = match args.choice {
        ChoiceArg::TorsionFree => HeightChoice::TorsionFree,
        ChoiceArg::ForceEquilibrium => HeightChoice::ForceEquilibrium,
    };
    let r = cycle_report(choice)?;
    let heights = grid(&args.h, number)?;
    let mut t = Table::new(["h_over_a", "energy_theta0_e0", "energy_theta90_e0"]);
    for &u in &heights {
        t.rows.push(vec![
            Cell::Num(u),
            Cell::Num(machine_energy(u, 0.0)),
            Cell::Num(machine_energy(u, std::f64::consts::FRAC_PI_2)),
        ]);
    }
    let report = json!({
        "cycle": r,
        "units": "energies in E0 = 13 hbar c alpha sigma / (16 pi a^6), heights in a",
        "method": "closed forms; line works by adaptive quadrature",
    });
    finish(
        cmd,
        "machine",
        &args.out,
        Format::Json,
        json!({ "h_e": r.h_e }),
        Some(&t),
        report,
    )
}

fn verify(cmd: &Command, args: &VerifyArgs) -> Result<()> {
    let mut g = if args.coarse {
        coarse_grid()
    } else {
        VerifyGrid::default()
    };
    if !(args.b > 1.0 && args.b.is_finite()) {
        bail!(annulus_cp::Error::InvalidGeometry(format!(
            "--b must exceed 1, got {}",
            args.b
        )));
    }
    g.disc_b = args.b;
    let r = verify_all(&g, args.tol, &settings(args.rel_tol)?)?;
    let mut t = Table::new([
        "case",
        "points",
        "max_error",
        "worst_h_over_a",
        "worst_theta_deg",
        "worst_beta_deg",
        "pass",
    ]);
    for c in &r.cases {
        t.rows.push(vec![
            Cell::Text(c.name.clone()),
            Cell::Text(c.points.to_string()),
            Cell::Num(c.max_error),
            Cell::Num(c.worst.h),
            Cell::Num(c.worst.theta.to_degrees()),
            Cell::Num(c.worst.beta.to_degrees()),
            Cell::Text(c.pass.to_string()),
        ]);
    }
    let worst = r.cases.iter().map(|c| c.max_error).fold(0.0, f64::max);
    let failed = r.cases.iter().filter(|c| !c.pass).count();
    let verdict = if r.pass { "PASS" } else { "FAIL" };
    finish(
        cmd,
        "verify",
        &args.out,
        Format::Json,
        json!({ "verdict": verdict }),
        Some(&t),
        json!({ "verdict": verdict, "report": r }),
    )?;
    eprintln!(
        "verify: {verdict} ({} forms, worst {worst:.3e}, tolerance {:e})",
        r.cases.len(),
        args.tol
    );
    if failed > 0 {
        bail!(VerifyFailed(failed));
    }
    Ok(())
}

fn electro(cmd: &Command, args: &ElectroArgs) -> Result<()> {
    let direction = match args.pol {
        RingPolArg::Axial => RingPolarization::Axial,
        RingPolArg::Radial => RingPolarization::Radial,
        RingPolArg::Tangential => RingPolarization::Tangential,
    };
    if !args.p.is_finite() {
        bail!(annulus_cp::Error::InvalidParameter(
            "--p must be finite".into()
        ));
    }
    let model = DipoleModel {
        p: args.p,
        ring: PolarizedRing::new(args.a, direction, args.lambda)?,
        settings: settings(args.rel_tol)?,
    };
    let columns = vec![
        (Observable::Energy, "energy"),
        (Observable::Force, "force"),
        (Observable::Torque, "torque"),
    ];
    let sources = columns
        .iter()
        .map(|&(obs, _)| resolve(&model, obs, args.source))
        .collect::<Result<Vec<_>>>()?;
    let heights = grid(&args.h, number)?;
    let thetas = grid(&args.theta, angle)?;
    let spec = TableSpec {
        columns,
        heights: &heights,
        thetas: &thetas,
        absolute: args.absolute,
        ev: false,
    };
    let t = build_table(&model, &spec, &sources)?;
    let source = sources.first().copied().unwrap_or(Source::Oracle);
    finish(
        cmd,
        "electro",
        &args.out,
        Format::Csv,
        json!({ "source": source, "units": "1/(4 pi eps0) = 1; reduced by p lambda / a^2 and p lambda / a^3" }),
        Some(&t),
        Value::Null,
    )
}
