//! Characteristic-polynomial decomposition and scattering functions.
//!
//! Closing the loop `out_k -> in_j` with amplitude `alpha` gives
//! `det(U0 + alpha |in_j><out_k| - zI) = b(z) (f(z) + alpha g(z))`, and the
//! scattering amplitude is `S_jk(z) = -g(z)/f(z)`, which equals
//! `-<out_k| (U0 - zI)^-1 |in_j>`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::TimeStepOperator;
use crate::linalg::{self, CMatrix, Lu};
use crate::poly::{self, ComplexPoly, RootClass, RootSet};
use crate::sounding::unwrap_phase;

/// Roots of `f` and `g` closer than this are cancelled into `b`.
pub const COMMON_ROOT_TOL: f64 = 1e-7;

/// Below this `|det|` a node uses the signed-minor route for `g`.
pub const MINOR_FALLBACK: f64 = 1e-12;

/// Distance from a pole inside which evaluation is refused.
pub const POLE_EPS: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `det(U0 - zI)` and the `(in_j, out_k)` cofactor, before and after removing
/// their common factor `b`.
#[derive(Debug, Clone)]
pub struct CharDecomposition {
    pub f_full: ComplexPoly,
    pub g_full: ComplexPoly,
    /// Monic product of the common factors.
    pub b: ComplexPoly,
    /// Monic.
    pub f_red: ComplexPoly,
    /// Scaled by the same factor as `f_red`.
    pub g_red: ComplexPoly,
    /// Multiplicity of the root of `f_red` at the origin.
    pub s: usize,
    /// Constant term of `g_red`.
    pub g0: Complex64,
    /// Degree of `f_red`.
    pub d: usize,
    /// Nonzero roots of `f_red`.
    pub etas: RootSet,
    /// Roots of `b`, zeros included.
    pub common_roots: Vec<Complex64>,
    pub in_port: usize,
    pub out_port: usize,
    /// Largest remainder coefficient left by dividing out `b`.
    pub reduction_residual: f64,
}

impl CharDecomposition {
    /// `d - s`.
    pub fn d_prime(&self) -> usize {
        self.d - self.s
    }

    /// Roots of `b` that lie on the unit circle (bound states).
    pub fn bound_roots(&self) -> Vec<Complex64> {
        self.common_roots
            .iter()
            .copied()
            .filter(|r| poly::classify(*r) == RootClass::OnCircle)
            .collect()
    }

    /// Roots of `g_red`; empty when `g_red` is constant or zero.
    pub fn g_roots(&self) -> Result<RootSet> {
        if self.g_red.degree().unwrap_or(0) == 0 {
            return Ok(RootSet::default());
        }
        poly::poly_roots(&self.g_red)
    }

    /// `-g_red(z) / f_red(z)` with no pole check.
    pub fn ratio(&self, z: Complex64) -> Complex64 {
        -self.g_red.eval(z) / self.f_red.eval(z)
    }

    /// Largest coefficient gap in `f_full = c b f_red`, `g_full = c b g_red`
    /// where `c` is the leading coefficient of `f_full`.
    pub fn factorization_error(&self) -> f64 {
        let c = self.f_full.lead();
        let fb = (&self.b * &self.f_red).scale(c);
        let gb = (&self.b * &self.g_red).scale(c);
        let scale = self.f_full.max_coeff_norm().max(1.0);
        fb.max_abs_diff(&self.f_full).max(gb.max_abs_diff(&self.g_full)) / scale
    }
}

/// Cofactor `(-1)^{r+c} det(minor)` of `a` at `(r, c)`.
pub fn cofactor(a: &CMatrix, r: usize, c: usize) -> Complex64 {
    let minor = a.clone().remove_row(r).remove_column(c);
    let sign = if (r + c).is_multiple_of(2) { 1.0 } else { -1.0 };
    if minor.nrows() == 0 {
        return Complex64::new(sign, 0.0);
    }
    Lu::new(minor).determinant() * sign
}

/// `(f_full(z), g_full(z))` at one node.
fn sample_node(m: &CMatrix, input: usize, output: usize, z: Complex64) -> (Complex64, Complex64) {
    let a = linalg::shifted(m, z);
    let lu = Lu::new(a.clone());
    let f = lu.determinant();
    if f.norm() >= MINOR_FALLBACK {
        let mut e = CMatrix::zeros(m.nrows(), 1);
        e[(input, 0)] = ONE;
        if let Some(x) = lu.solve(&e) {
            return (f, f * x[(output, 0)]);
        }
    }
    (f, cofactor(&a, input, output))
}

/// Decomposes the characteristic polynomial for the loop from out-port `k`
/// back into in-port `j` (indices into [`TimeStepOperator::ports`]).
pub fn char_decompose(u0: &TimeStepOperator, j: usize, k: usize) -> Result<CharDecomposition> {
    let ports = u0.ports();
    if j >= ports.len() || k >= ports.len() {
        return Err(Error::InvalidArgument(format!(
            "port indices ({j}, {k}) out of range for {} ports",
            ports.len()
        )));
    }
    let (input, output) = (ports[j].input, ports[k].output);
    let n = u0.dim();
    let nodes = poly::rotated_circle_nodes(n + 1);
    let m = u0.matrix();
    let values: Vec<(Complex64, Complex64)> = nodes.par_iter().map(|z| sample_node(m, input, output, *z)).collect();
    if values.iter().all(|(f, _)| f.norm() < MINOR_FALLBACK) {
        return Err(Error::AllNodesSingular);
    }
    let fs: Vec<_> = nodes.iter().zip(&values).map(|(z, (f, _))| (*z, *f)).collect();
    let gs: Vec<_> = nodes.iter().zip(&values).map(|(z, (_, g))| (*z, *g)).collect();
    let f_full = poly::interpolate_from_circle(&fs, n)?;
    let g_full = poly::interpolate_from_circle(&gs, n)?;
    reduce(f_full, g_full, j, k)
}

/// Cancels common roots of `f_full` and `g_full`.
pub fn reduce(f_full: ComplexPoly, g_full: ComplexPoly, j: usize, k: usize) -> Result<CharDecomposition> {
    let f_roots = poly::poly_roots(&f_full)?;
    let lead = f_full.lead();

    if g_full.is_zero() {
        let f_red = f_full.monic();
        let s = f_roots.zero_multiplicity;
        return Ok(CharDecomposition {
            d: f_red.degree().unwrap_or(0),
            f_red,
            g_red: ComplexPoly::zero(),
            b: ComplexPoly::constant(ONE),
            s,
            g0: ZERO,
            etas: RootSet {
                nonzero: f_roots.nonzero,
                zero_multiplicity: 0,
            },
            common_roots: Vec::new(),
            in_port: j,
            out_port: k,
            reduction_residual: 0.0,
            f_full,
            g_full,
        });
    }

    let g_roots = if g_full.degree() == Some(0) {
        RootSet::default()
    } else {
        poly::poly_roots(&g_full)?
    };
    let common = poly::pair_common_roots(&f_roots, &g_roots, COMMON_ROOT_TOL);
    let shared: Vec<Complex64> = common.pairs.iter().map(|(a, _)| f_roots.nonzero[*a]).collect();
    let cz = common.zero_multiplicity;
    let b_nonzero = ComplexPoly::from_roots(&shared, ONE);

    let divide = |p: &ComplexPoly| {
        let (q, r) = p.trimmed(poly::TRIM_EPS).shift_down(cz).div_rem(&b_nonzero);
        (q.scale(ONE / lead), r.max_coeff_norm() / lead.norm())
    };
    let (f_q, f_res) = divide(&f_full);
    let (g_red, g_res) = divide(&g_full);

    let s = f_roots.zero_multiplicity - cz;
    let mut fc: Vec<Complex64> = f_q.coeffs().to_vec();
    for c in fc.iter_mut().take(s) {
        *c = ZERO;
    }
    let f_red = ComplexPoly::new(fc).monic();
    let g_red = g_red.scale(ONE / f_q.lead());

    let used: Vec<bool> = {
        let mut u = vec![false; f_roots.nonzero.len()];
        for (a, _) in &common.pairs {
            u[*a] = true;
        }
        u
    };
    let etas = RootSet {
        nonzero: f_roots
            .nonzero
            .iter()
            .zip(&used)
            .filter(|(_, u)| !**u)
            .map(|(r, _)| *r)
            .collect(),
        zero_multiplicity: 0,
    };
    let mut common_roots = vec![ZERO; cz];
    common_roots.extend_from_slice(&shared);

    Ok(CharDecomposition {
        b: b_nonzero.shift_up(cz),
        d: f_red.degree().unwrap_or(0),
        g0: g_red.coeff(0),
        f_red,
        g_red,
        s,
        etas,
        common_roots,
        in_port: j,
        out_port: k,
        reduction_residual: f_res.max(g_res),
        f_full,
        g_full,
    })
}

/// Single-runway decomposition built from its modes: `f = z^s prod (z -
/// eta_j)` and `g` the reciprocal of `f` with constant term `g0`.
pub fn synthetic(etas: &[Complex64], s: usize, g0: Complex64) -> CharDecomposition {
    let f_red = ComplexPoly::from_roots(etas, ONE).shift_up(s);
    let d = f_red.degree().unwrap_or(0);
    let g_red = ComplexPoly::new((0..=d).map(|k| f_red.coeff(d - k).conj() * g0).collect());
    CharDecomposition {
        f_full: f_red.clone(),
        g_full: g_red.clone(),
        b: ComplexPoly::constant(ONE),
        g0: g_red.coeff(0),
        f_red,
        g_red,
        s,
        d,
        etas: RootSet {
            nonzero: etas.to_vec(),
            zero_multiplicity: 0,
        },
        common_roots: Vec::new(),
        in_port: 0,
        out_port: 0,
        reduction_residual: 0.0,
    }
}

/// `z^delay * (-g_red(z) / f_red(z))`.
#[derive(Debug, Clone)]
pub struct ScatterFunction {
    pub decomposition: CharDecomposition,
    pub delay: i32,
}

impl ScatterFunction {
    pub fn new(decomposition: CharDecomposition) -> Self {
        Self {
            decomposition,
            delay: 0,
        }
    }

    /// Decomposes `u0` for the port pair and wraps the result.
    pub fn from_operator(u0: &TimeStepOperator, j: usize, k: usize) -> Result<Self> {
        Ok(Self::new(char_decompose(u0, j, k)?))
    }

    pub fn with_delay(mut self, delay: i32) -> Self {
        self.delay = delay;
        self
    }

    pub fn in_port(&self) -> usize {
        self.decomposition.in_port
    }

    pub fn out_port(&self) -> usize {
        self.decomposition.out_port
    }

    /// Poles of the undelayed function: the roots of `f_red`.
    pub fn poles(&self) -> Vec<Complex64> {
        let dec = &self.decomposition;
        let mut p = vec![ZERO; dec.s];
        p.extend_from_slice(&dec.etas.nonzero);
        p
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if self.poles().iter().any(|p| (z - p).norm() < POLE_EPS) {
            return Err(Error::Pole(z));
        }
        Ok(self.eval_unchecked(z))
    }

    pub fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        z.powi(self.delay) * self.decomposition.ratio(z)
    }

    /// Evaluates on a slice of points in parallel, preserving order.
    pub fn eval_many(&self, zs: &[Complex64]) -> Result<Vec<Complex64>> {
        zs.par_iter().map(|z| self.eval(*z)).collect()
    }

    /// Numerator and denominator with the delay folded in and any common
    /// power of `z` cancelled.
    pub fn rational(&self) -> (ComplexPoly, ComplexPoly) {
        let dec = &self.decomposition;
        let num = -&dec.g_red;
        let den = dec.f_red.clone();
        if self.delay >= 0 {
            let m = self.delay as usize;
            let cancel = m.min(dec.s);
            (num.shift_up(m - cancel), den.shift_down(cancel))
        } else {
            (num, den.shift_up((-self.delay) as usize))
        }
    }
}

/// `-<out_k|(U0 - zI)^-1|in_j>` for every port pair; rows are out-ports and
/// columns in-ports.
pub fn resolvent_scatter(u0: &TimeStepOperator, z: Complex64) -> Result<CMatrix> {
    let ports = u0.ports();
    let n = u0.dim();
    let lu = Lu::new(linalg::shifted(u0.matrix(), z));
    let mut rhs = CMatrix::zeros(n, ports.len());
    for (c, p) in ports.iter().enumerate() {
        rhs[(p.input, c)] = ONE;
    }
    let x = lu.solve(&rhs).ok_or(Error::Singular(z))?;
    Ok(CMatrix::from_fn(ports.len(), ports.len(), |k, j| {
        -x[(ports[k].output, j)]
    }))
}

/// Worst `|sum_k |S_jk(z)|^2 - 1|` over in-ports `j` and the given points.
pub fn row_normalization_error(u0: &TimeStepOperator, zs: &[Complex64]) -> Result<f64> {
    let errs: Vec<f64> = zs
        .par_iter()
        .map(|z| {
            let s = resolvent_scatter(u0, *z)?;
            Ok((0..s.ncols())
                .map(|j| (s.column(j).iter().map(|v| v.norm_sqr()).sum::<f64>() - 1.0).abs())
                .fold(0.0, f64::max))
        })
        .collect::<Result<_>>()?;
    Ok(errs.into_iter().fold(0.0, f64::max))
}

/// Worst `||S(z)| - 1|` over the given points.
pub fn unit_modulus_error(sf: &ScatterFunction, zs: &[Complex64]) -> Result<f64> {
    Ok(sf
        .eval_many(zs)?
        .iter()
        .map(|v| (v.norm() - 1.0).abs())
        .fold(0.0, f64::max))
}

/// `n` points `e^{i(2 pi m + offset)/n}` on the unit circle.
pub fn circle_points(n: usize, offset: f64) -> Vec<Complex64> {
    (0..n)
        .map(|m| Complex64::from_polar(1.0, (2.0 * PI * m as f64 + offset) / n as f64))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReciprocalReport {
    pub max_deviation: f64,
    pub passed: bool,
}

/// Checks `f_k = g0 * conj(g_{d-k})` for `k = 0..=d`.
pub fn check_reciprocal(dec: &CharDecomposition, tol: f64) -> ReciprocalReport {
    let max_deviation = (0..=dec.d)
        .map(|k| (dec.f_red.coeff(k) - dec.g0 * dec.g_red.coeff(dec.d - k).conj()).norm())
        .fold(0.0, f64::max);
    ReciprocalReport {
        max_deviation,
        passed: max_deviation < tol,
    }
}

/// Eigenvalue tracks of `U0 + alpha |in_j><out_k|` as `alpha` goes once
/// around the unit circle.
#[derive(Debug, Clone)]
pub struct SpectralFlow {
    /// Eigenvalues at `alpha = 1` with the bound roots removed, sorted by
    /// argument in `[0, 2 pi)`.
    pub start: Vec<Complex64>,
    /// `permutation[i]` is the index in `start` where track `i` ends.
    pub permutation: Vec<usize>,
    /// `Some(k)` when every track moves `k` places in argument order.
    pub shift: Option<isize>,
    /// Smallest distance between two moving eigenvalues over the sweep.
    pub min_gap: f64,
    /// Number of alpha values actually evaluated (after refinement).
    pub evaluations: usize,
    /// Full alpha loops needed for track 0 to come back to its start.
    pub cycle_length: usize,
}

impl SpectralFlow {
    /// Phase advance of alpha over one full eigenvalue loop, implied by the
    /// permutation.
    pub fn alpha_phase_advance(&self) -> f64 {
        2.0 * PI * self.cycle_length as f64
    }
}

fn moving_eigenvalues(
    u0: &TimeStepOperator,
    j: usize,
    k: usize,
    x: f64,
    bound: &[Complex64],
) -> Result<Vec<Complex64>> {
    let m = u0.with_feedback(j, k, Complex64::from_polar(1.0, x));
    let mut ev = linalg::eigenvalues(&m)?;
    for r in bound {
        let (i, _) = ev
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - r).norm().total_cmp(&(b.1 - r).norm()))
            .ok_or(Error::NoConvergence)?;
        ev.swap_remove(i);
    }
    Ok(ev)
}

fn min_gap(v: &[Complex64]) -> f64 {
    let mut g = f64::INFINITY;
    for a in 0..v.len() {
        for b in a + 1..v.len() {
            g = g.min((v[a] - v[b]).norm());
        }
    }
    g
}

/// Nearest-neighbour assignment of `prev` onto `next`, or `None` when it is
/// not one-to-one. Returns the matched values and the largest displacement.
fn match_tracks(prev: &[Complex64], next: &[Complex64]) -> Option<(Vec<Complex64>, f64)> {
    let mut used = vec![false; next.len()];
    let mut out = Vec::with_capacity(prev.len());
    let mut radius = 0.0_f64;
    for p in prev {
        let (i, d) = next
            .iter()
            .enumerate()
            .map(|(i, q)| (i, (p - q).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))?;
        if used[i] {
            return None;
        }
        used[i] = true;
        radius = radius.max(d);
        out.push(next[i]);
    }
    Some((out, radius))
}

fn arg_0_2pi(z: Complex64) -> f64 {
    let a = z.arg();
    if a < 0.0 {
        a + 2.0 * PI
    } else {
        a
    }
}

/// Tracks the eigenvalues not belonging to `b` through one loop of `alpha`,
/// starting from `steps` equal increments and halving any step whose
/// smallest gap is under ten times the largest displacement.
pub fn spectral_flow(u0: &TimeStepOperator, j: usize, k: usize, steps: usize) -> Result<SpectralFlow> {
    if steps < 8 * u0.dim() {
        return Err(Error::InvalidArgument(format!(
            "spectral flow needs at least {} steps for dimension {}",
            8 * u0.dim(),
            u0.dim()
        )));
    }
    let dec = char_decompose(u0, j, k)?;
    let bound = dec.common_roots.clone();
    let mut start = moving_eigenvalues(u0, j, k, 0.0, &bound)?;
    start.sort_by(|a, b| arg_0_2pi(*a).total_cmp(&arg_0_2pi(*b)));

    let base = 2.0 * PI / steps as f64;
    let mut tracks = start.clone();
    let mut x = 0.0;
    let mut gap = min_gap(&tracks);
    let mut evaluations = 1;
    while x < 2.0 * PI - 1e-12 {
        let mut h = base.min(2.0 * PI - x);
        let mut halvings = 0;
        loop {
            let next = moving_eigenvalues(u0, j, k, x + h, &bound)?;
            evaluations += 1;
            let g = min_gap(&next);
            if let Some((matched, radius)) = match_tracks(&tracks, &next) {
                if g >= 10.0 * radius {
                    tracks = matched;
                    gap = gap.min(g);
                    x += h;
                    break;
                }
            }
            halvings += 1;
            if halvings > 30 {
                return Err(Error::TrackAmbiguity(Complex64::from_polar(1.0, x)));
            }
            h /= 2.0;
        }
    }

    let permutation: Vec<usize> = tracks
        .iter()
        .map(|t| {
            start
                .iter()
                .enumerate()
                .min_by(|a, b| (a.1 - t).norm().total_cmp(&(b.1 - t).norm()))
                .map(|(i, _)| i)
                .unwrap_or(0)
        })
        .collect();
    let n = permutation.len() as isize;
    let shift = if n == 0 {
        None
    } else {
        let s = (permutation[0] as isize).rem_euclid(n);
        permutation
            .iter()
            .enumerate()
            .all(|(i, p)| *p as isize == (i as isize + s).rem_euclid(n))
            .then_some(s)
    };
    let mut cycle_length = 0;
    if !permutation.is_empty() {
        let mut i = 0;
        loop {
            i = permutation[i];
            cycle_length += 1;
            if i == 0 || cycle_length > permutation.len() {
                break;
            }
        }
    }
    Ok(SpectralFlow {
        start,
        permutation,
        shift,
        min_gap: gap,
        evaluations,
        cycle_length,
    })
}

/// Unwrapped change of `arg(alpha)` along `alpha(theta) = -f(e^{i theta}) /
/// g(e^{i theta})` as `theta` makes one loop; `2 pi d` for a single runway.
pub fn alpha_phase_advance(dec: &CharDecomposition, samples: usize) -> f64 {
    let phases: Vec<f64> = (0..=samples)
        .map(|m| {
            let z = Complex64::from_polar(1.0, 2.0 * PI * m as f64 / samples as f64 + 1e-3);
            (-dec.f_red.eval(z) / dec.g_red.eval(z)).arg()
        })
        .collect();
    let u = unwrap_phase(&phases);
    u[u.len() - 1] - u[0]
}

#[derive(Debug, Clone, PartialEq)]
pub struct LeakReport {
    /// Worst `||eta|^2 - (1 - sum_k |<out_k|psi>|^2)|`.
    pub max_deviation: f64,
    /// Eigenvectors checked.
    pub checked: usize,
    /// Eigenvalue clusters with no resolvable eigenvector.
    pub unresolved: usize,
}

/// Checks the leak relation on every eigenvector of `U0`.
///
/// Eigenvalues are clustered, each cluster's near-null space of
/// `U0 - cI` is taken from an SVD, and `eta` is the Rayleigh quotient of each
/// vector, so the check error is quadratic in the eigenvector residual.
pub fn leak_relation(u0: &TimeStepOperator) -> Result<LeakReport> {
    let m = u0.matrix();
    let ev = linalg::eigenvalues(m)?;
    let clusters = poly::cluster(&ev, 1e-5);
    let outs = u0.out_indices();
    let mut max_deviation = 0.0_f64;
    let mut checked = 0;
    let mut unresolved = 0;
    for group in clusters {
        let c = group.iter().map(|i| ev[*i]).sum::<Complex64>() / group.len() as f64;
        let vecs = linalg::near_null_vectors(&linalg::shifted(m, c), 1e-6);
        if vecs.is_empty() {
            unresolved += 1;
            continue;
        }
        for v in vecs {
            let norm = v.norm();
            let psi = v / Complex64::new(norm, 0.0);
            let u_psi = m * &psi;
            let eta = psi.dotc(&u_psi);
            let leak: f64 = outs.iter().map(|o| psi[*o].norm_sqr()).sum();
            max_deviation = max_deviation.max((eta.norm_sqr() - (1.0 - leak)).abs());
            checked += 1;
        }
    }
    Ok(LeakReport {
        max_deviation,
        checked,
        unresolved,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::graph::build_operator;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn bolo() -> CharDecomposition {
        char_decompose(&build_operator(&catalog::bolo()).unwrap(), 0, 0).unwrap()
    }

    #[test]
    fn bolo_decomposition() {
        let d = bolo();
        assert!(d.b.max_abs_diff(&ComplexPoly::from_real(&[1.0, 1.0])) < 1e-10);
        let f = ComplexPoly::from_real(&[0.0, 0.0, 1.0 / 3.0, -2.0 / 3.0, 1.0]);
        let g = ComplexPoly::from_real(&[1.0, -2.0 / 3.0, 1.0 / 3.0]);
        assert!(d.f_red.max_abs_diff(&f) < 1e-10, "{:?}", d.f_red);
        assert!(d.g_red.max_abs_diff(&g) < 1e-10, "{:?}", d.g_red);
        assert_eq!((d.s, d.d), (2, 4));
        assert!((d.g0 - ONE).norm() < 1e-10);
        assert!(d.etas.nonzero.iter().all(|e| poly::classify(*e) == RootClass::Inside));
        assert!(d.factorization_error() < 1e-8);
        assert_eq!(d.bound_roots().len(), 1);
    }

    #[test]
    fn bolo_scatter_values() {
        let s = ScatterFunction::new(bolo());
        assert!((s.eval(c(0.0, 1.0)).unwrap() - c(0.0, 1.0)).norm() < 1e-10);
        let r = s.clone().with_delay(2);
        for z in circle_points(10, 0.37) {
            let want = -(z * z - 2.0 * z + 3.0) / (3.0 * z * z - 2.0 * z + 1.0);
            assert!((r.eval(z).unwrap() - want).norm() < 1e-10);
        }
        assert!(matches!(s.eval(ZERO), Err(Error::Pole(_))));
    }

    #[test]
    fn constant_reflector_is_constant_after_delay() {
        let r = Complex64::from_polar(1.0, 0.9);
        let u = build_operator(&catalog::reflector(r)).unwrap();
        let s = ScatterFunction::from_operator(&u, 0, 0).unwrap().with_delay(2);
        assert_eq!(s.decomposition.s, 2);
        for z in [c(0.3, 0.1), c(-2.0, 1.0), c(0.0, 1.0)] {
            assert!((s.eval(z).unwrap() - r).norm() < 1e-12);
        }
        let (num, den) = s.rational();
        assert_eq!((num.degree(), den.degree()), (Some(0), Some(0)));
    }

    #[test]
    fn minors_agree_with_resolvent_route() {
        let u = build_operator(&catalog::square_junction()).unwrap();
        let (input, output) = (u.ports()[1].input, u.ports()[2].output);
        for z in circle_points(7, 0.2) {
            let a = linalg::shifted(u.matrix(), z);
            let lu = Lu::new(a.clone());
            let mut e = CMatrix::zeros(u.dim(), 1);
            e[(input, 0)] = ONE;
            let x = lu.solve(&e).unwrap();
            let via_resolvent = lu.determinant() * x[(output, 0)];
            assert!((via_resolvent - cofactor(&a, input, output)).norm() < 1e-12);
        }
    }

    #[test]
    fn resolvent_matches_decomposition_on_valve() {
        let u = build_operator(&catalog::valve(Complex64::from_polar(1.0, PI / 3.0))).unwrap();
        for j in 0..2 {
            for k in 0..2 {
                let s = ScatterFunction::from_operator(&u, j, k).unwrap();
                for z in [c(0.3, 0.4), c(1.5, -0.2), c(-0.1, 0.7)] {
                    let m = resolvent_scatter(&u, z).unwrap();
                    assert!((m[(k, j)] - s.eval(z).unwrap()).norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn resolvent_at_two_is_block_of_inverse() {
        let u = build_operator(&catalog::square_junction()).unwrap();
        let z = c(2.0, 0.0);
        let inv = linalg::shifted(u.matrix(), z).try_inverse().unwrap();
        let s = resolvent_scatter(&u, z).unwrap();
        for (k, pk) in u.ports().iter().enumerate() {
            for (j, pj) in u.ports().iter().enumerate() {
                assert!((s[(k, j)] + inv[(pk.output, pj.input)]).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn reciprocal_identity() {
        assert!(check_reciprocal(&bolo(), 1e-8).passed);
        let u = build_operator(&catalog::star(3, 1)).unwrap();
        assert!(check_reciprocal(&char_decompose(&u, 0, 0).unwrap(), 1e-8).passed);
        let mut d = bolo();
        let mut f = d.f_red.coeffs().to_vec();
        f[3] += c(1e-3, 0.0);
        d.f_red = ComplexPoly::new(f);
        assert!(!check_reciprocal(&d, 1e-8).passed);
    }

    #[test]
    fn star_three_one_matches_closed_form() {
        let (n, m) = (3.0, 1.0);
        let u = build_operator(&catalog::star(3, 1)).unwrap();
        let d = char_decompose(&u, 0, 0).unwrap();
        let a = (4.0 * m - 2.0 * n) / (n + 1.0);
        let b = (n - 1.0) / (n + 1.0);
        assert!(
            d.f_red
                .max_abs_diff(&ComplexPoly::from_real(&[0.0, 0.0, b, 0.0, a, 0.0, 1.0]))
                < 1e-10
        );
        assert!(d.g_red.max_abs_diff(&ComplexPoly::from_real(&[1.0, 0.0, a, 0.0, b])) < 1e-10);
        let reduced = build_operator(&catalog::star_reduced(3, 1)).unwrap();
        let dr = char_decompose(&reduced, 0, 0).unwrap();
        assert!(dr.f_red.max_abs_diff(&d.f_red) < 1e-10);
    }

    #[test]
    fn unit_modulus_on_the_circle() {
        let s = ScatterFunction::new(bolo());
        assert!(unit_modulus_error(&s, &circle_points(200, 0.5)).unwrap() < 1e-8);
    }

    #[test]
    fn square_rows_are_normalized() {
        let u = build_operator(&catalog::square_junction()).unwrap();
        assert!(row_normalization_error(&u, &circle_points(50, 0.3)).unwrap() < 1e-8);
    }

    #[test]
    fn bolo_spectral_flow_is_a_cyclic_shift() {
        let u = build_operator(&catalog::bolo()).unwrap();
        let flow = spectral_flow(&u, 0, 0, 512).unwrap();
        assert_eq!(flow.start.len(), 4);
        assert_eq!(flow.shift, Some(1));
        assert!(flow.min_gap > 1e-3);
        assert_eq!(flow.cycle_length, 4);
        let adv = alpha_phase_advance(&bolo(), 4096);
        assert!((adv - 2.0 * PI * 4.0).abs() < 0.01 * 2.0 * PI * 4.0);
    }

    #[test]
    fn leak_relation_on_bolo_and_square() {
        for spec in [catalog::bolo(), catalog::square_junction()] {
            let rep = leak_relation(&build_operator(&spec).unwrap()).unwrap();
            assert!(rep.max_deviation < 1e-8, "{rep:?}");
            assert!(rep.checked > 0);
        }
    }
}
