//! Probing a graph through the phase of `S(e^{i theta})`: sweeps, winding
//! numbers, and resonance detection.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{self, RootClass};
use crate::scatter::ScatterFunction;

const TAU: f64 = 2.0 * PI;

/// Removes `2 pi` jumps between consecutive phases.
pub fn unwrap_phase(phases: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(phases.len());
    let mut offset = 0.0;
    for (i, p) in phases.iter().enumerate() {
        if i > 0 {
            let d = p - phases[i - 1];
            offset -= TAU * (d / TAU).round();
        }
        out.push(p + offset);
    }
    out
}

/// Samples of `S` on a uniform grid of the unit circle.
#[derive(Debug, Clone)]
pub struct PhaseSweep {
    pub thetas: Vec<f64>,
    pub values: Vec<Complex64>,
    pub unwrapped_phase: Vec<f64>,
    /// Total phase change around the circle divided by `2 pi`, including the
    /// step from the last sample back to the first.
    pub raw_winding: f64,
    pub winding: i64,
}

impl PhaseSweep {
    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    fn step(&self) -> f64 {
        TAU / self.len() as f64
    }

    /// Unwrapped phase increment from sample `i` to `i + 1`, wrapping around.
    fn increment(&self, i: usize) -> f64 {
        let n = self.len();
        if i + 1 < n {
            self.unwrapped_phase[i + 1] - self.unwrapped_phase[i]
        } else {
            let d = self.values[0].arg() - self.values[n - 1].arg();
            d - TAU * (d / TAU).round()
        }
    }

    /// `d phi / d theta` on each grid interval `[theta_i, theta_{i+1}]`.
    pub fn slopes(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.len()).map(|i| self.increment(i) / h).collect()
    }
}

/// Sweeps `K` points `theta_m = 2 pi m / K`. If a grid point lands on a pole
/// the whole grid is rotated by half a step once.
pub fn phase_sweep(sf: &ScatterFunction, k: usize) -> Result<PhaseSweep> {
    if k < 2 {
        return Err(Error::InvalidArgument("a phase sweep needs at least 2 points".into()));
    }
    match sweep_at(sf, k, 0.0) {
        Err(Error::Pole(_)) => sweep_at(sf, k, 0.5),
        other => other,
    }
}

fn sweep_at(sf: &ScatterFunction, k: usize, offset: f64) -> Result<PhaseSweep> {
    let thetas: Vec<f64> = (0..k).map(|m| TAU * (m as f64 + offset) / k as f64).collect();
    let values: Vec<Complex64> = thetas
        .par_iter()
        .map(|t| sf.eval(Complex64::from_polar(1.0, *t)))
        .collect::<Result<_>>()?;
    let phases: Vec<f64> = values.iter().map(|v| v.arg()).collect();
    let unwrapped_phase = unwrap_phase(&phases);
    let mut sweep = PhaseSweep {
        thetas,
        values,
        unwrapped_phase,
        raw_winding: 0.0,
        winding: 0,
    };
    let total: f64 = (0..k).map(|i| sweep.increment(i)).sum();
    sweep.raw_winding = total / TAU;
    sweep.winding = sweep.raw_winding.round() as i64;
    Ok(sweep)
}

/// Doubles the grid from `k0` until two consecutive sizes give the same
/// winding, or `k_max` is reached.
///
/// A mode at distance `delta` inside the circle turns the phase by `2 pi`
/// over an arc of about `2 delta`; grids coarser than that can agree with
/// each other and still miss it, so `k0` should exceed `2 pi / delta` when a
/// bound on `delta` is known.
pub fn phase_sweep_auto(sf: &ScatterFunction, k0: usize, k_max: usize) -> Result<PhaseSweep> {
    let mut k = k0.max(2);
    let mut prev = phase_sweep(sf, k)?;
    while k * 2 <= k_max {
        k *= 2;
        let next = phase_sweep(sf, k)?;
        if next.winding == prev.winding {
            return Ok(next);
        }
        prev = next;
    }
    Ok(prev)
}

/// `|winding|`, a lower bound on the number of edge states.
pub fn dimension_lower_bound(sweep: &PhaseSweep) -> usize {
    sweep.winding.unsigned_abs() as usize
}

/// Zeros minus poles of `z^delay (-g/f)` inside the unit disc, counted from
/// the root sets rather than from a sweep.
pub fn root_count_winding(sf: &ScatterFunction) -> Result<i64> {
    let dec = &sf.decomposition;
    let zeros_inside = dec.g_roots()?.count(RootClass::Inside) as i64;
    let poles_inside = dec.s as i64 + dec.etas.count(RootClass::Inside) as i64;
    Ok(zeros_inside - poles_inside + sf.delay as i64)
}

/// A sharp phase excursion on the circle, the trace of a mode `eta` close to
/// it.
#[derive(Debug, Clone, PartialEq)]
pub struct Resonance {
    pub center: f64,
    pub width: f64,
    /// `(1 - width / 2) e^{i center}`.
    pub eta: Complex64,
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        0.0
    } else if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Finds runs of grid intervals where `|d phi/d theta|` exceeds
/// `jump_threshold` (default ten times the median). The centre is the
/// steepest interval; the width is the span over which the phase, with the
/// background slope removed, stays within `pi/2` of its value at the centre.
pub fn find_resonances(sweep: &PhaseSweep, jump_threshold: Option<f64>) -> Vec<Resonance> {
    let n = sweep.len();
    if n < 3 {
        return Vec::new();
    }
    let slopes = sweep.slopes();
    let background = median(slopes.clone());
    let threshold = jump_threshold.unwrap_or_else(|| 10.0 * median(slopes.iter().map(|s| s.abs()).collect()));
    let steep: Vec<bool> = slopes.iter().map(|s| (s - background).abs() > threshold).collect();
    if steep.iter().all(|s| *s) || !steep.iter().any(|s| *s) {
        return Vec::new();
    }
    // start scanning just after a quiet interval so runs never wrap
    let first_quiet = steep.iter().position(|s| !s).unwrap_or(0);
    let h = sweep.step();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let idx = (first_quiet + i) % n;
        if !steep[idx] {
            i += 1;
            continue;
        }
        let mut best = idx;
        let mut j = i;
        while j < n && steep[(first_quiet + j) % n] {
            let t = (first_quiet + j) % n;
            if (slopes[t] - background).abs() > (slopes[best] - background).abs() {
                best = t;
            }
            j += 1;
        }
        out.push(measure(sweep, &slopes, background, best, h));
        i = j;
    }
    out.sort_by(|a, b| a.center.total_cmp(&b.center));
    out
}

fn measure(sweep: &PhaseSweep, slopes: &[f64], background: f64, best: usize, h: f64) -> Resonance {
    let n = sweep.len();
    let excess = |t: usize| (slopes[t] - background) * h;
    let mut reach = [0.5 * n as f64 * h; 2];
    for (side, dir) in [(0usize, 1isize), (1, -1)] {
        let sign = dir as f64;
        // (distance from centre, residual phase) at successive grid points
        let mut prev: (f64, f64) = (0.0, 0.0);
        let mut cur = (0.5 * h, sign * 0.5 * excess(best));
        let mut t = best;
        for _ in 0..n / 2 {
            if cur.1.abs() >= FRAC_PI_2 {
                let frac = (FRAC_PI_2 - prev.1.abs()) / (cur.1.abs() - prev.1.abs());
                reach[side] = prev.0 + frac.clamp(0.0, 1.0) * (cur.0 - prev.0);
                break;
            }
            t = (t as isize + dir).rem_euclid(n as isize) as usize;
            prev = cur;
            cur = (cur.0 + h, cur.1 + sign * excess(t));
        }
    }
    let width = reach[0] + reach[1];
    let center = (sweep.thetas[best] + 0.5 * h).rem_euclid(TAU);
    let rho = (1.0 - 0.5 * width).clamp(0.0, 1.0 - 1e-12);
    Resonance {
        center,
        width,
        eta: Complex64::from_polar(rho, center),
    }
}

/// Marked fraction `L` of a star from the first-quadrant resonance at `tau`:
/// `sin(2 tau) = 2 sqrt(L (1 - L))`, solved as `L = sin^2 tau`.
pub fn star_marked_fraction(resonances: &[Resonance]) -> Option<f64> {
    resonances
        .iter()
        .filter(|r| r.center > 0.0 && r.center < FRAC_PI_2)
        .max_by(|a, b| b.width.total_cmp(&a.width))
        .map(|r| r.center.sin().powi(2))
}

/// Angle in `(pi/2, pi)` closest to `pi/2` where the swept value crosses the
/// positive real axis (`arg = 0`), linearly interpolated.
pub fn first_unit_crossing_after_quarter(sweep: &PhaseSweep) -> Option<f64> {
    let n = sweep.len();
    let mut best: Option<f64> = None;
    for i in 0..n {
        let (a, b) = (sweep.values[i], sweep.values[(i + 1) % n]);
        let (pa, pb) = (a.arg(), b.arg());
        if a.re <= 0.0 || b.re <= 0.0 || (pa > 0.0) == (pb > 0.0) && pa != 0.0 {
            continue;
        }
        let frac = pa / (pa - pb);
        let theta = sweep.thetas[i] + frac * sweep.step();
        if theta > FRAC_PI_2 && theta < PI && best.is_none_or(|t| theta < t) {
            best = Some(theta);
        }
    }
    best
}

/// Size estimate for a complete graph from the crossing `R(e^{i theta}) = 1`
/// at `theta ~ pi/2 + 1/N`.
pub fn complete_graph_size(sweep_of_r: &PhaseSweep) -> Option<f64> {
    first_unit_crossing_after_quarter(sweep_of_r).map(|t| 1.0 / (t - FRAC_PI_2))
}

/// Classifies the nonzero roots of `f_red` for reporting.
pub fn eta_classes(sf: &ScatterFunction) -> Vec<(Complex64, RootClass)> {
    sf.decomposition
        .etas
        .nonzero
        .iter()
        .map(|e| (*e, poly::classify(*e)))
        .collect()
}
