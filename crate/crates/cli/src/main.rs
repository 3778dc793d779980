// SPDX-License-Identifier: Apache-2.0

//! `annulus-cp`: tables and reports for atom–annulus Casimir–Polder
//! interactions. Exit codes: 0 ok, 2 bad configuration, 3 numeric failure.

mod commands;
mod eval;
mod output;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::output::Format;

#[derive(Parser)]
#[command(
    name = "annulus-cp",
    version,
    about = "Casimir-Polder forces between an anisotropic atom and annular dielectrics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
enum Command {
    /// Interaction energy over a height × angle grid.
    Energy(TableArgs),
    /// Force −∂E/∂h along the axis (positive = repulsive).
    Force(TableArgs),
    /// Torque −∂E/∂θ.
    Torque(TableArgs),
    /// Energy, force and torque side by side.
    Scan(TableArgs),
    /// Torsion-free heights of an e1 atom.
    Roots(RootsArgs),
    /// Repulsive height intervals, critical angles or a repulsion map.
    Regions(RegionsArgs),
    /// Outer radius at which a radial disc gains a detached repulsive interval.
    Threshold(ThresholdArgs),
    /// Four-state cycle above an axially polarizable ring.
    Machine(MachineArgs),
    /// Compare every closed form with the quadrature oracle.
    Verify(VerifyArgs),
    /// Permanent dipole above a polarized ring.
    Electro(ElectroArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeometryKind {
    Ring,
    Disc,
    Plate,
}

/// Preset annulus polarizabilities; `isotropic` means in-plane isotropic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PolKind {
    Radial,
    Axial,
    Tangential,
    Isotropic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelKind {
    /// Retarded (large-separation) kernel.
    Cp,
    /// Non-retarded kernel, per unit frequency integral.
    London,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// Closed form when one exists, quadrature otherwise.
    Auto,
    Closed,
    Oracle,
    /// Closed form plus oracle and their relative difference.
    Both,
}

#[derive(Args, Serialize, Clone, Debug)]
pub struct TargetArgs {
    #[arg(long, value_enum, default_value_t = GeometryKind::Ring)]
    pub geometry: GeometryKind,
    #[arg(long, value_enum, default_value_t = PolKind::Radial)]
    pub pol: PolKind,
    /// Explicit components z,rho,phi; overrides --pol.
    #[arg(long, allow_hyphen_values = true)]
    pub components: Option<String>,
    /// Outer disc radius in units of a.
    #[arg(long, default_value_t = 2.0)]
    pub b: f64,
}

#[derive(Args, Serialize, Clone, Debug)]
pub struct AtomArgs {
    /// Principal polarizabilities α1,α2,α3.
    #[arg(long, default_value = "1,0,0")]
    pub alpha: String,
    /// Rotation of e2, e3 about e1.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub beta: String,
    /// Azimuth of the atom axis.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub phi_s: String,
}

#[derive(Args, Serialize, Clone, Debug)]
pub struct UnitArgs {
    /// Inner radius in natural length units. Heights are always given as h/a.
    #[arg(long = "a", default_value_t = 1.0)]
    pub a: f64,
    /// Print absolute heights instead of h/a.
    #[arg(long)]
    pub absolute: bool,
    /// Convert natural-unit values to eV, reading lengths as nm.
    #[arg(long)]
    pub ev: bool,
}

#[derive(Args, Serialize, Clone, Debug)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[serde(skip)]
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Serialize, Clone, Debug)]
pub struct TableArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    #[command(flatten)]
    pub atom: AtomArgs,
    #[command(flatten)]
    pub units: UnitArgs,
    /// Heights h/a as start:stop:count or a comma list.
    #[arg(long, default_value = "0:5:51")]
    pub h: String,
    /// Angles θ of e1 from the axis (deg by default, or rad suffix).
    #[arg(long, default_value = "0,30,60,75", allow_hyphen_values = true)]
    pub theta: String,
    #[arg(long, value_enum, default_value_t = KernelKind::Cp)]
    pub kernel: KernelKind,
    #[arg(long, value_enum, default_value_t = Source::Auto)]
    pub source: Source,
    /// Relative tolerance of the quadrature oracle.
    #[arg(long, default_value_t = 1e-12)]
    pub rel_tol: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Serialize, Clone, Debug)]
pub struct RootsArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    /// Upper end of the height window in units of a.
    #[arg(long)]
    pub window: Option<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Serialize, Clone, Debug)]
pub struct RegionsArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    #[arg(long, default_value = "0:90:19", allow_hyphen_values = true)]
    pub theta: String,
    #[arg(long)]
    pub window: Option<f64>,
    /// Emit the repulsion mask on this height grid instead of intervals.
    #[arg(long)]
    pub map_h: Option<String>,
    /// Bisection tolerance for critical angles, radians.
    #[arg(long, default_value_t = 1e-9)]
    pub angle_tol: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Serialize, Clone, Debug)]
pub struct ThresholdArgs {
    #[arg(long, default_value = "90", allow_hyphen_values = true)]
    pub theta: String,
    /// Bisection tolerance on b/a.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChoiceArg {
    TorsionFree,
    ForceEquilibrium,
}

#[derive(Args, Serialize, Clone, Debug)]
pub struct MachineArgs {
    /// Height of the raised states.
    #[arg(long, value_enum, default_value_t = ChoiceArg::TorsionFree)]
    pub choice: ChoiceArg,
    /// Height grid for the CSV energy curves.
    #[arg(long, default_value = "0:2:201")]
    pub h: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Serialize, Clone, Debug)]
pub struct VerifyArgs {
    /// Largest accepted normalized discrepancy.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Use a reduced grid.
    #[arg(long)]
    pub coarse: bool,
    #[arg(long, default_value_t = 1e-12)]
    pub rel_tol: f64,
    /// Outer radius of the disc cases in units of a.
    #[arg(long, default_value_t = 2.0)]
    pub b: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RingPolArg {
    Axial,
    Radial,
    Tangential,
}

#[derive(Args, Serialize, Clone, Debug)]
pub struct ElectroArgs {
    #[arg(long, value_enum, default_value_t = RingPolArg::Axial)]
    pub pol: RingPolArg,
    #[arg(long, default_value = "0:3:31")]
    pub h: String,
    #[arg(long, default_value = "0,90", allow_hyphen_values = true)]
    pub theta: String,
    /// Dipole moment.
    #[arg(long, default_value_t = 1.0)]
    pub p: f64,
    /// Ring dipole moment per unit length.
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long = "a", default_value_t = 1.0)]
    pub a: f64,
    #[arg(long)]
    pub absolute: bool,
    #[arg(long, value_enum, default_value_t = Source::Auto)]
    pub source: Source,
    #[arg(long, default_value_t = 1e-12)]
    pub rel_tol: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Raised when `verify` finds a discrepancy above tolerance.
#[derive(Debug)]
pub struct VerifyFailed(pub usize);

impl std::fmt::Display for VerifyFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} closed form(s) exceed the tolerance", self.0)
    }
}

impl std::error::Error for VerifyFailed {}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<VerifyFailed>().is_some() {
        return 3;
    }
    match e.downcast_ref::<annulus_cp::Error>() {
        Some(err) if err.is_numeric() => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
