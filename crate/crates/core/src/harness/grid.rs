//! CSV grids for offline plotting. Each file starts with a one-line header.

use crate::algebra::{cn, sn, GeneratorId};
use crate::projective::{exp_one_param, hopf_section, mobius_apply};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GridError {
    #[error("resolution must be at least 2, got {0}")]
    Resolution(usize),
    #[error("cannot write grid: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GridKind {
    Joukowski,
    HopfFibers,
    ConformalFlow,
}

impl GridKind {
    pub const ALL: [GridKind; 3] = [GridKind::Joukowski, GridKind::HopfFibers, GridKind::ConformalFlow];

    pub fn name(&self) -> &'static str {
        match self {
            GridKind::Joukowski => "joukowski",
            GridKind::HopfFibers => "hopf-fibers",
            GridKind::ConformalFlow => "conformal-flow",
        }
    }

    pub fn from_name(name: &str) -> Option<GridKind> {
        GridKind::ALL.into_iter().find(|k| k.name() == name)
    }

    pub fn header(&self) -> &'static str {
        match self {
            GridKind::Joukowski => "r,phi,u_re,u_im,cn_re,cn_im,sn_re,sn_im",
            GridKind::HopfFibers => "xi1,xi2,xi3,lambda,s1,s2,s3,s4",
            GridKind::ConformalFlow => "generator,u0_re,u0_im,eps,u_re,u_im",
        }
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
}

/// Angles k·2π/n, k = 0..n.
fn angles(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| TAU * k as f64 / n as f64)
}

/// Renders a grid as CSV text.
pub fn render_grid(kind: GridKind, res: usize) -> Result<String, GridError> {
    if res < 2 {
        return Err(GridError::Resolution(res));
    }
    let mut out = String::new();
    out.push_str(kind.header());
    out.push('\n');
    match kind {
        GridKind::Joukowski => {
            // radii from 1/2 to 2, geometric so that odd resolutions hit the unit circle
            for r in linspace(-1.0, 1.0, res).map(|e| 2f64.powf(e)) {
                for phi in angles(res) {
                    let u = Complex64::from_polar(r, phi);
                    let (c, s) = (cn(u).expect("nonzero"), sn(u).expect("nonzero"));
                    let _ = writeln!(out, "{r},{phi},{},{},{},{},{},{}", u.re, u.im, c.re, c.im, s.re, s.im);
                }
            }
        }
        GridKind::HopfFibers => {
            for i in 0..res {
                let theta = PI * i as f64 / res as f64;
                let base_angles: Vec<f64> = if i == 0 { vec![0.0] } else { angles(res).collect() };
                for phi in base_angles {
                    let xi = [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
                    for lambda in angles(res) {
                        let p = hopf_section(xi, lambda).expect("base point away from the south pole");
                        let [s1, s2, s3, s4] = p.s;
                        let _ = writeln!(out, "{},{},{},{lambda},{s1},{s2},{s3},{s4}", xi[0], xi[1], xi[2]);
                    }
                }
            }
        }
        GridKind::ConformalFlow => {
            for g in GeneratorId::ALL {
                for start in angles(res) {
                    let u0 = Complex64::from_polar(0.5, start);
                    for eps in linspace(-1.0, 1.0, res) {
                        let m = exp_one_param::<Complex64>(g, eps).expect("complex ring has every generator");
                        // points sent to infinity are left out
                        if let Ok(u) = mobius_apply(&m, u0) {
                            let _ = writeln!(out, "{g},{},{},{eps},{},{}", u0.re, u0.im, u.re, u.im);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Writes the grid to `path` and returns the number of data rows.
pub fn emit_grid(kind: GridKind, res: usize, path: &Path) -> Result<usize, GridError> {
    let csv = render_grid(kind, res)?;
    fs::write(path, &csv)?;
    Ok(csv.lines().count() - 1)
}
