//! Impulse responses, convolution with input signals, and a brute-force
//! oracle that steps the graph with truncated runways attached.
//!
//! Sequences follow the anticipation convention: `h[n]` is the amplitude on
//! `|0,1>` after `n + 1` steps starting from `|1,0>`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::{build_operator, GraphSpec};
use crate::linalg::CVector;
use crate::scatter::{check_reciprocal, ScatterFunction};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Modes closer than this are treated as degenerate.
pub const DISTINCT_EPS: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub omega: Complex64,
    pub eta: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Dft,
    Oracle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ImpulseResponse {
    /// Lag of the delta term.
    pub s: usize,
    pub omega0: Complex64,
    /// Empty unless produced by the closed form.
    pub modes: Vec<Mode>,
    pub max_n: usize,
    /// `h[0..=max_n]`.
    pub sequence: Vec<Complex64>,
    pub method: Method,
    /// DFT only: `max |eta|^K`, the scale of the aliasing error.
    pub aliasing_bound: Option<f64>,
    /// Set when the closed form was requested but the DFT route was used.
    pub fell_back: bool,
}

impl ImpulseResponse {
    fn from_sequence(sequence: Vec<Complex64>, method: Method) -> Self {
        let s = sequence.iter().position(|h| h.norm() > 1e-12).unwrap_or(0);
        Self {
            s,
            omega0: ZERO,
            modes: Vec::new(),
            max_n: sequence.len().saturating_sub(1),
            sequence,
            method,
            aliasing_bound: None,
            fell_back: false,
        }
    }

    /// `omega0 delta[n - s] + sum_j omega_j eta_j^n` for `n >= s`, zero before.
    pub fn closed_form_value(&self, n: usize) -> Complex64 {
        if n < self.s {
            return ZERO;
        }
        let delta = if n == self.s { self.omega0 } else { ZERO };
        delta
            + self
                .modes
                .iter()
                .map(|m| m.omega * m.eta.powu(n as u32))
                .sum::<Complex64>()
    }

    /// `sum_{n <= N} h[n] z^{-n}`, which approaches `S(z)` for `|z| >= 1`.
    pub fn z_transform(&self, z: Complex64) -> Complex64 {
        let inv = ONE / z;
        self.sequence.iter().rev().fold(ZERO, |acc, h| acc * inv + h)
    }
}

/// Residue form of the single-runway impulse response.
///
/// `omega0 = -g0 prod_k 1/(-eta_k)` and
/// `omega_j = -g0 (1 - |eta_j|^2) / eta_j^{s+1} prod_{k != j} (1 - eta_j conj(eta_k)) / (eta_j - eta_k)`.
/// A delay `m` moves the delta to lag `s - m` and scales each mode by
/// `eta_j^m`.
pub fn impulse_closed_form(sf: &ScatterFunction, max_n: usize) -> Result<ImpulseResponse> {
    let dec = &sf.decomposition;
    let rec = check_reciprocal(dec, 1e-6);
    if !rec.passed || (dec.g0.norm() - 1.0).abs() > 1e-6 {
        return Err(Error::Unsupported(
            "the closed form applies to single-runway responses only".into(),
        ));
    }
    let etas = &dec.etas.nonzero;
    for a in 0..etas.len() {
        if etas[a].norm() < DISTINCT_EPS {
            return Err(Error::Unsupported("a mode sits at the origin".into()));
        }
        for b in a + 1..etas.len() {
            if (etas[a] - etas[b]).norm() < DISTINCT_EPS {
                return Err(Error::Unsupported(format!(
                    "modes {} and {} are not distinct",
                    etas[a], etas[b]
                )));
            }
        }
    }
    let m = sf.delay;
    if m > dec.s as i32 {
        return Err(Error::NonCausal { delay: m, s: dec.s });
    }
    let g0 = dec.g0;
    let omega0 = -g0 * etas.iter().map(|e| ONE / -e).product::<Complex64>();
    let modes: Vec<Mode> = etas
        .iter()
        .enumerate()
        .map(|(j, ej)| {
            let prod: Complex64 = etas
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != j)
                .map(|(_, ek)| (ONE - ej * ek.conj()) / (ej - ek))
                .product();
            let omega = -g0 * (1.0 - ej.norm_sqr()) / ej.powi(dec.s as i32 + 1) * prod;
            Mode {
                omega: omega * ej.powi(m),
                eta: *ej,
            }
        })
        .collect();
    let mut out = ImpulseResponse {
        s: (dec.s as i32 - m) as usize,
        omega0,
        modes,
        max_n,
        sequence: Vec::new(),
        method: Method::ClosedForm,
        aliasing_bound: None,
        fell_back: false,
    };
    out.sequence = (0..=max_n).map(|n| out.closed_form_value(n)).collect();
    Ok(out)
}

/// `h[n] = (1/K) sum_m z_m^n S(z_m)` over `K` points of the unit circle.
/// A pole on the grid rotates it by half a step once.
pub fn impulse_dft(sf: &ScatterFunction, k: usize, max_n: usize) -> Result<ImpulseResponse> {
    if k < 4 * max_n.max(1) {
        return Err(Error::InvalidArgument(format!(
            "grid size {k} must be at least 4 * max_n = {}",
            4 * max_n.max(1)
        )));
    }
    let run = |offset: f64| -> Result<Vec<Complex64>> {
        let zs: Vec<Complex64> = (0..k)
            .map(|m| Complex64::from_polar(1.0, 2.0 * PI * (m as f64 + offset) / k as f64))
            .collect();
        let vals = sf.eval_many(&zs)?;
        Ok((0..=max_n)
            .map(|n| {
                zs.iter()
                    .zip(&vals)
                    .map(|(z, v)| z.powu(n as u32) * v)
                    .sum::<Complex64>()
                    / k as f64
            })
            .collect())
    };
    let sequence = match run(0.0) {
        Err(Error::Pole(_)) => run(0.5)?,
        other => other?,
    };
    let mut out = ImpulseResponse::from_sequence(sequence, Method::Dft);
    let rho = sf.decomposition.etas.max_modulus();
    out.aliasing_bound = Some(rho.powi(k as i32));
    Ok(out)
}

/// Closed form when it applies, otherwise the DFT route with `fell_back`
/// set.
pub fn impulse(sf: &ScatterFunction, max_n: usize, k: usize) -> Result<ImpulseResponse> {
    match impulse_closed_form(sf, max_n) {
        Ok(h) => Ok(h),
        Err(Error::Unsupported(_)) => {
            let mut h = impulse_dft(sf, k.max(4 * max_n.max(1)), max_n)?;
            h.fell_back = true;
            Ok(h)
        }
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    Delta,
    Monochromatic(Complex64),
    Custom,
}

/// Finite input or output sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    pub samples: Vec<Complex64>,
    pub generator: Generator,
}

impl Signal {
    pub fn custom(samples: Vec<Complex64>) -> Self {
        Self {
            samples,
            generator: Generator::Custom,
        }
    }

    pub fn delta(len: usize) -> Self {
        let mut samples = vec![ZERO; len];
        if len > 0 {
            samples[0] = ONE;
        }
        Self {
            samples,
            generator: Generator::Delta,
        }
    }

    /// `x[n] = lambda^n`.
    pub fn monochromatic(lambda: Complex64, len: usize) -> Self {
        Self {
            samples: (0..len).map(|n| lambda.powu(n as u32)).collect(),
            generator: Generator::Monochromatic(lambda),
        }
    }

    /// `width` ones followed by zeros up to `len`.
    pub fn pulse(width: usize, len: usize) -> Self {
        Self::custom((0..len).map(|n| if n < width { ONE } else { ZERO }).collect())
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// `y[n] = sum_k h[k] x[n - k]`, truncated to the length of `x`.
pub fn convolve(x: &Signal, h: &[Complex64]) -> Signal {
    let y = (0..x.len())
        .map(|n| {
            (0..=n.min(h.len().saturating_sub(1)))
                .filter(|k| *k < h.len())
                .map(|k| h[k] * x.samples[n - k])
                .sum()
        })
        .collect();
    Signal::custom(y)
}

/// Output of a runway simulation.
#[derive(Debug, Clone)]
pub struct OracleRun {
    /// `y[0..steps]`.
    pub output: Signal,
    /// Norm of the retained state after each step.
    pub norms: Vec<f64>,
    /// Cumulative squared amplitude absorbed at the far end of the
    /// outgoing runways, after each step.
    pub absorbed: Vec<f64>,
}

impl OracleRun {
    /// Largest drift of `norm^2 + absorbed` from its starting value.
    pub fn max_norm_drift(&self, initial: f64) -> f64 {
        self.norms
            .iter()
            .zip(&self.absorbed)
            .map(|(n, a)| (n * n + a - initial).abs())
            .fold(0.0, f64::max)
    }
}

/// Impulse response from a direct simulation with runways of `runway_len`
/// edges on every port.
pub fn simulate_oracle(spec: &GraphSpec, port: &str, steps: usize, runway_len: usize) -> Result<OracleRun> {
    simulate_signal(spec, port, port, &Signal::delta(1), steps, runway_len)
}

/// Drives `in_port`'s runway with `x` (sample `x[n]` starts on
/// `|n+1, n>`) and records `|0,1>` on `out_port`'s runway.
pub fn simulate_signal(
    spec: &GraphSpec,
    in_port: &str,
    out_port: &str,
    x: &Signal,
    steps: usize,
    runway_len: usize,
) -> Result<OracleRun> {
    let need = (steps + 2).max(x.len() + 1);
    if runway_len < need {
        return Err(Error::RunwayTooShort {
            len: runway_len,
            steps,
            need,
        });
    }
    let u0 = build_operator(spec)?;
    let jp = u0.port_position(in_port)?;
    let kp = u0.port_position(out_port)?;
    let ports = u0.ports().to_vec();
    let l = runway_len;

    let mut graph = CVector::zeros(u0.dim());
    let mut incoming = vec![vec![ZERO; l]; ports.len()];
    let mut outgoing = vec![vec![ZERO; l]; ports.len()];
    incoming[jp][..x.len()].copy_from_slice(&x.samples);

    let mut y = Vec::with_capacity(steps);
    let mut norms = Vec::with_capacity(steps);
    let mut absorbed = Vec::with_capacity(steps);
    let mut lost = 0.0;
    for _ in 0..steps {
        let mut next = u0.matrix() * &graph;
        for (q, p) in ports.iter().enumerate() {
            next[p.input] += incoming[q][0];
            incoming[q].rotate_left(1);
            incoming[q][l - 1] = ZERO;
            lost += outgoing[q][l - 1].norm_sqr();
            outgoing[q].rotate_right(1);
            outgoing[q][0] = graph[p.output];
        }
        graph = next;
        y.push(outgoing[kp][0]);
        let retained: f64 = graph.norm_squared()
            + incoming
                .iter()
                .chain(&outgoing)
                .flatten()
                .map(|v| v.norm_sqr())
                .sum::<f64>();
        norms.push(retained.sqrt());
        absorbed.push(lost);
    }
    Ok(OracleRun {
        output: Signal::custom(y),
        norms,
        absorbed,
    })
}
