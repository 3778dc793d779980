// SPDX-License-Identifier: Apache-2.0

//! Closed-form and oracle evaluation behind the table commands.

use annulus_cp::closed_forms::{
    disc_energy_atom, force_numeric, plate_scale, ring_energy_closed, ring_force_closed,
    ring_scale, ring_tangential_force, ring_torque_closed, torque_numeric, AtomAxis, RingComponent,
};
use annulus_cp::electrostatics::{
    es_energy_axial, es_energy_quadrature, es_force_axial, es_force_quadrature, es_torque_axial,
    es_torque_quadrature, PointDipole, PolarizedRing, RingPolarization,
};
use annulus_cp::kernels::geometry_quadrature;
use annulus_cp::units::HBAR_C_EV_NM;
use annulus_cp::verification::discrepancy;
use annulus_cp::{
    AnnularPolarizability, AtomPolarizability, DyadicKernel, Error, Geometry, Observable,
    QuadResult, QuadratureSettings,
};
use anyhow::{bail, Result};
use rayon::prelude::*;

use crate::output::{Cell, Table};
use crate::{GeometryKind, KernelKind, Source};

pub trait Evaluator: Sync {
    fn closed_available(&self, obs: Observable) -> bool;
    /// Natural units, height in absolute length.
    fn closed(&self, obs: Observable, h: f64, theta: f64) -> annulus_cp::Result<f64>;
    fn oracle(&self, obs: Observable, h: f64, theta: f64) -> annulus_cp::Result<QuadResult>;
    /// Divisor that turns a natural value into the reduced one.
    fn scale(&self, obs: Observable) -> f64;
    fn length(&self) -> f64;
}

/// Runs `f`, turning the first error raised inside the callback into the
/// result.
fn catching(
    f: impl Fn(f64) -> annulus_cp::Result<f64>,
    run: impl FnOnce(&mut dyn FnMut(f64) -> f64) -> annulus_cp::Result<f64>,
) -> annulus_cp::Result<f64> {
    let mut failure = None;
    let r = run(&mut |x| match f(x) {
        Ok(v) => v,
        Err(e) => {
            failure.get_or_insert(e);
            f64::NAN
        }
    });
    match failure {
        Some(e) => Err(e),
        None => r,
    }
}

pub struct Model {
    pub geometry: GeometryKind,
    pub a: f64,
    pub b_over_a: f64,
    pub atom: AtomPolarizability,
    pub pol: AnnularPolarizability,
    pub kernel: KernelKind,
    pub settings: QuadratureSettings,
}

impl Model {
    fn dyadic(&self) -> DyadicKernel {
        match self.kernel {
            KernelKind::Cp => DyadicKernel::casimir_polder(),
            KernelKind::London => DyadicKernel::london(),
        }
    }

    fn geometry_at(&self, h: f64) -> Geometry {
        match self.geometry {
            GeometryKind::Ring => Geometry::Ring { a: self.a, h },
            GeometryKind::Disc => Geometry::AnnularDisc {
                a: self.a,
                b: self.b_over_a * self.a,
                h,
            },
            GeometryKind::Plate => Geometry::AperturedPlate { a: self.a, h },
        }
    }

    fn closed_energy(&self, atom: &AtomPolarizability, h: f64) -> annulus_cp::Result<f64> {
        if self.kernel != KernelKind::Cp {
            return Err(Error::NoClosedForm("the non-retarded kernel".into()));
        }
        match self.geometry {
            GeometryKind::Ring => ring_energy_closed(atom, &self.pol, self.a, h),
            GeometryKind::Disc => {
                disc_energy_atom(atom, &self.pol, self.a, self.b_over_a * self.a, h)
            }
            GeometryKind::Plate => disc_energy_atom(atom, &self.pol, self.a, f64::INFINITY, h),
        }
    }

    fn e1_ring(&self) -> bool {
        self.geometry == GeometryKind::Ring
            && self.atom.is_uniaxial_e1()
            && self.kernel == KernelKind::Cp
    }
}

impl Evaluator for Model {
    fn closed_available(&self, _obs: Observable) -> bool {
        self.kernel == KernelKind::Cp
            && (self.geometry == GeometryKind::Ring || self.atom.is_uniaxial_e1())
    }

    fn closed(&self, obs: Observable, h: f64, theta: f64) -> annulus_cp::Result<f64> {
        let atom = self.atom.with_theta(theta);
        let a1 = atom.alpha[0];
        match obs {
            Observable::Energy => self.closed_energy(&atom, h),
            Observable::Force if self.e1_ring() => {
                let mut f = ring_tangential_force(&atom, self.pol.comp_phi, self.a, h)?;
                for comp in [RingComponent::Radial, RingComponent::Axial] {
                    let s = comp.of(&self.pol);
                    if s != 0.0 {
                        f += ring_force_closed(AtomAxis::E1, comp, a1, s, self.a, h, theta)?;
                    }
                }
                Ok(f)
            }
            Observable::Force => catching(
                |x| self.closed_energy(&atom, x),
                |e| force_numeric(e, h, self.a),
            ),
            Observable::Torque if self.e1_ring() => RingComponent::ALL
                .iter()
                .map(|&c| ring_torque_closed(c, a1, c.of(&self.pol), self.a, h, theta))
                .sum(),
            Observable::Torque => catching(
                |t| self.closed_energy(&atom.with_theta(t), h),
                |e| torque_numeric(e, theta),
            ),
        }
    }

    fn oracle(&self, obs: Observable, h: f64, theta: f64) -> annulus_cp::Result<QuadResult> {
        let atom = self.atom.with_theta(theta);
        geometry_quadrature(
            obs,
            &atom,
            &self.pol,
            &self.geometry_at(h),
            &self.dyadic(),
            &self.settings,
        )
    }

    /// ħc α σ/(64π a⁶) for rings, ħc α λ/(64π a⁵) otherwise, with α the
    /// e1 value (or the largest) and σ, λ the largest component.
    fn scale(&self, obs: Observable) -> f64 {
        let alpha = if self.atom.alpha[0] != 0.0 {
            self.atom.alpha[0]
        } else {
            self.atom.alpha.iter().fold(0.0, |m: f64, v| m.max(v.abs()))
        };
        let d = self.pol.max_abs();
        let e = match self.geometry {
            GeometryKind::Ring => ring_scale(alpha, d, self.a),
            _ => plate_scale(alpha, d, self.a),
        };
        let e = if e != 0.0 && e.is_finite() { e } else { 1.0 };
        match obs {
            Observable::Force => e / self.a,
            _ => e,
        }
    }

    fn length(&self) -> f64 {
        self.a
    }
}

pub struct DipoleModel {
    pub p: f64,
    pub ring: PolarizedRing,
    pub settings: QuadratureSettings,
}

impl Evaluator for DipoleModel {
    fn closed_available(&self, _obs: Observable) -> bool {
        self.ring.direction == RingPolarization::Axial
    }

    fn closed(&self, obs: Observable, h: f64, theta: f64) -> annulus_cp::Result<f64> {
        if !self.closed_available(obs) {
            return Err(Error::NoClosedForm(format!(
                "{:?} ring polarization",
                self.ring.direction
            )));
        }
        let f = match obs {
            Observable::Energy => es_energy_axial,
            Observable::Force => es_force_axial,
            Observable::Torque => es_torque_axial,
        };
        Ok(f(self.p, self.ring.lambda, self.ring.a, h, theta))
    }

    fn oracle(&self, obs: Observable, h: f64, theta: f64) -> annulus_cp::Result<QuadResult> {
        let d = PointDipole::tilted(self.p, theta);
        match obs {
            Observable::Energy => es_energy_quadrature(&d, &self.ring, h, &self.settings),
            Observable::Force => es_force_quadrature(&d, &self.ring, h, &self.settings),
            Observable::Torque => es_torque_quadrature(&d, &self.ring, h, &self.settings),
        }
    }

    /// pλ/a² (energy, torque) and pλ/a³ (force).
    fn scale(&self, obs: Observable) -> f64 {
        let a = self.ring.a;
        let e = self.p * self.ring.lambda / (a * a);
        let e = if e != 0.0 { e } else { 1.0 };
        match obs {
            Observable::Force => e / a,
            _ => e,
        }
    }

    fn length(&self) -> f64 {
        self.ring.a
    }
}

/// Resolves `auto` and rejects `closed`/`both` when no closed form exists.
pub fn resolve(eval: &dyn Evaluator, obs: Observable, source: Source) -> Result<Source> {
    let has = eval.closed_available(obs);
    Ok(match source {
        Source::Auto if has => Source::Closed,
        Source::Auto => Source::Oracle,
        Source::Closed | Source::Both if !has => {
            bail!(Error::NoClosedForm(format!(
                "{obs:?} in this configuration"
            )))
        }
        s => s,
    })
}

pub struct TableSpec<'a> {
    /// (observable, column prefix)
    pub columns: Vec<(Observable, &'a str)>,
    pub heights: &'a [f64],
    pub thetas: &'a [f64],
    pub absolute: bool,
    pub ev: bool,
}

/// Rows ordered by θ then h; evaluated in parallel, assembled in order.
pub fn build_table(eval: &dyn Evaluator, spec: &TableSpec, sources: &[Source]) -> Result<Table> {
    let mut header = vec![
        if spec.absolute { "h" } else { "h_over_a" }.to_string(),
        "theta_deg".to_string(),
    ];
    let nat = if spec.ev { "ev" } else { "natural" };
    for (&(_, name), src) in spec.columns.iter().zip(sources) {
        header.push(format!("{name}_reduced"));
        header.push(format!("{name}_{nat}"));
        if *src == Source::Both {
            header.push(format!("{name}_oracle_{nat}"));
            header.push(format!("{name}_rel_diff"));
        }
    }
    let conv = |v: f64| if spec.ev { v * HBAR_C_EV_NM } else { v };
    let a = eval.length();
    let points: Vec<(f64, f64)> = spec
        .thetas
        .iter()
        .flat_map(|&t| spec.heights.iter().map(move |&u| (u, t)))
        .collect();
    let rows = points
        .par_iter()
        .map(|&(u, t)| -> annulus_cp::Result<Vec<Cell>> {
            let h = u * a;
            let mut row = vec![
                Cell::Num(if spec.absolute { h } else { u }),
                Cell::Num(t.to_degrees()),
            ];
            for (&(obs, _), src) in spec.columns.iter().zip(sources) {
                let scale = eval.scale(obs);
                let (value, oracle) = match src {
                    Source::Closed => (eval.closed(obs, h, t)?, None),
                    Source::Oracle => (eval.oracle(obs, h, t)?.value, None),
                    _ => {
                        let q = eval.oracle(obs, h, t)?;
                        (eval.closed(obs, h, t)?, Some(q))
                    }
                };
                row.push(Cell::Num(value / scale));
                row.push(Cell::Num(conv(value)));
                if let Some(q) = oracle {
                    row.push(Cell::Num(conv(q.value)));
                    row.push(Cell::Num(discrepancy(value, &q, 0.0)));
                }
            }
            Ok(row)
        })
        .collect::<annulus_cp::Result<Vec<_>>>()?;
    Ok(Table { header, rows })
}
