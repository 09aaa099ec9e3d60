//! Parameter sweeps emitting CSV plot data.
//!
//! Rows are computed in parallel (the evaluations are pure) and assembled
//! in deterministic lexicographic order before writing, so the output is
//! byte-stable across runs and thread counts.

use keywitness::bounds::{
    kd_single_approx, kd_single_central, kd_single_weak1, kd_single_weak2, kd_two_full,
    kd_two_weak, kd_w_wz,
};
use rayon::prelude::*;
use std::path::Path;

use crate::gfmt::g12;
use crate::Failure;

/// One swept axis: an inclusive `[min, max]` range sampled at `steps`
/// points.
#[derive(Debug, Clone, Copy)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn validate(&self, name: &str) -> Result<(), Failure> {
        if !(self.min.is_finite() && self.max.is_finite()) || self.min >= self.max {
            return Err(Failure::Domain(format!(
                "{name}: range requires min < max, got [{}, {}]",
                self.min, self.max
            )));
        }
        if self.steps < 2 {
            return Err(Failure::Domain(format!(
                "{name}: at least 2 steps required, got {}",
                self.steps
            )));
        }
        Ok(())
    }

    fn at(&self, i: usize) -> f64 {
        self.min + (self.max - self.min) * i as f64 / (self.steps - 1) as f64
    }

    fn values(&self) -> Vec<f64> {
        (0..self.steps).map(|i| self.at(i)).collect()
    }
}

fn run_rows<F>(points: Vec<f64>, f: F) -> Result<Vec<String>, Failure>
where
    F: Fn(f64) -> Result<String, Failure> + Sync,
{
    points.par_iter().map(|&x| f(x)).collect()
}

/// Single-witness bound comparison: columns `w,central,weak1,weak2`.
/// `weak1` is `nan` below its domain edge w = 1/4.
pub fn fig1(axis: Axis, out: &Path) -> Result<(), Failure> {
    axis.validate("w")?;
    let rows = run_rows(axis.values(), |w| {
        let central = kd_single_central(w).map_err(Failure::from)?.value;
        let weak1 = if w >= 0.25 {
            kd_single_weak1(w).map_err(Failure::from)?.value
        } else {
            f64::NAN
        };
        let weak2 = kd_single_weak2(w).map_err(Failure::from)?.value;
        Ok(format!(
            "{},{},{},{}",
            g12(w),
            g12(central),
            g12(weak1),
            g12(weak2)
        ))
    })?;
    write_csv(out, "w,central,weak1,weak2", rows)
}

/// Two-observable bounds on a grid: columns `wx,wz,full,weak`, rows
/// lexicographic in (wx, wz).
pub fn fig3(wx_axis: Axis, wz_axis: Axis, out: &Path) -> Result<(), Failure> {
    wx_axis.validate("wx")?;
    wz_axis.validate("wz")?;
    let mut points = Vec::with_capacity(wx_axis.steps * wz_axis.steps);
    for i in 0..wx_axis.steps {
        for j in 0..wz_axis.steps {
            points.push((wx_axis.at(i), wz_axis.at(j)));
        }
    }
    let rows: Result<Vec<String>, Failure> = points
        .par_iter()
        .map(|&(wx, wz)| {
            let full = kd_two_full(wx, wz).map_err(Failure::from)?.value;
            let weak = kd_two_weak(wx, wz).map_err(Failure::from)?.value;
            Ok(format!("{},{},{},{}", g12(wx), g12(wz), g12(full), g12(weak)))
        })
        .collect();
    write_csv(out, "wx,wz,full,weak", rows?)
}

/// Combined w and wz bound: columns `w,wz,bound,physical`; infeasible
/// points carry `nan` and `physical = 0`.
pub fn fig4(w_axis: Axis, wz_axis: Axis, out: &Path) -> Result<(), Failure> {
    w_axis.validate("w")?;
    wz_axis.validate("wz")?;
    let mut points = Vec::with_capacity(w_axis.steps * wz_axis.steps);
    for i in 0..w_axis.steps {
        for j in 0..wz_axis.steps {
            points.push((w_axis.at(i), wz_axis.at(j)));
        }
    }
    let rows: Result<Vec<String>, Failure> = points
        .par_iter()
        .map(|&(w, wz)| match kd_w_wz(w, wz) {
            Ok(rep) => Ok(format!("{},{},{},1", g12(w), g12(wz), g12(rep.value))),
            Err(keywitness::Error::Domain(_)) => {
                Ok(format!("{},{},nan,0", g12(w), g12(wz)))
            }
            Err(e) => Err(Failure::from(e)),
        })
        .collect();
    write_csv(out, "w,wz,bound,physical", rows?)
}

/// Central bound against its closed-form approximation: columns
/// `w,central,approx,diff`.
pub fn fig5(axis: Axis, out: &Path) -> Result<(), Failure> {
    axis.validate("w")?;
    if axis.min <= 0.0 {
        return Err(Failure::Domain(
            "fig5 sweep requires w > 0 (the approximation diverges at w = 0)".into(),
        ));
    }
    let rows = run_rows(axis.values(), |w| {
        let central = kd_single_central(w).map_err(Failure::from)?.value;
        let approx = kd_single_approx(w).map_err(Failure::from)?.value;
        Ok(format!(
            "{},{},{},{}",
            g12(w),
            g12(central),
            g12(approx),
            g12(approx - central)
        ))
    })?;
    write_csv(out, "w,central,approx,diff", rows)
}

fn write_csv(path: &Path, header: &str, rows: Vec<String>) -> Result<(), Failure> {
    let mut text = String::with_capacity(rows.len() * 48 + header.len() + 1);
    text.push_str(header);
    text.push('\n');
    for row in rows {
        text.push_str(&row);
        text.push('\n');
    }
    std::fs::write(path, text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}
