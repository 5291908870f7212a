//! Complex polynomials: evaluation, interpolation from unit-circle samples,
//! companion-matrix root finding, and common-root pairing.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

/// Relative magnitude (against the largest coefficient) below which a
/// coefficient is treated as zero.
pub const TRIM_EPS: f64 = 1e-9;

/// Half-width of the band around `|z| = 1` classified as "on the circle".
pub const CIRCLE_EPS: f64 = 1e-7;

/// Computed roots closer than this (relative to `max(1, |root|)`) are taken
/// to be one multiple root and snapped to their centroid.
pub const CLUSTER_EPS: f64 = 1e-6;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Polynomial with complex coefficients stored in ascending degree.
///
/// The coefficient vector never ends in an exact zero, so the zero
/// polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ComplexPoly {
    coeffs: Vec<Complex64>,
}

impl ComplexPoly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == ZERO) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|c| Complex64::new(*c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// `z^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![ZERO; k + 1];
        coeffs[k] = ONE;
        Self { coeffs }
    }

    /// `lead * prod (z - r)`.
    pub fn from_roots(roots: &[Complex64], lead: Complex64) -> Self {
        let mut coeffs = vec![lead];
        for r in roots {
            let mut next = vec![ZERO; coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] += *c;
                next[k] -= *c * r;
            }
            coeffs = next;
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or(ZERO)
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
        )
    }

    /// Zeroes every coefficient smaller than `rel_eps` times the largest one.
    pub fn trimmed(&self, rel_eps: f64) -> Self {
        let cut = rel_eps * self.max_coeff_norm();
        Self::new(
            self.coeffs
                .iter()
                .map(|c| if c.norm() < cut { ZERO } else { *c })
                .collect(),
        )
    }

    /// Number of exactly-zero low-order coefficients, i.e. the multiplicity of
    /// the root at the origin.
    pub fn trailing_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|c| **c == ZERO).count()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiply by `z^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// Divide by `z^k`, discarding the `k` lowest coefficients.
    pub fn shift_down(&self, k: usize) -> Self {
        Self::new(self.coeffs.iter().skip(k).copied().collect())
    }

    /// Scale so the leading coefficient is one. The zero polynomial is
    /// returned unchanged.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(ONE / self.lead())
    }

    /// Coefficients conjugated.
    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    /// Long division from the top; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &ComplexPoly) -> (ComplexPoly, ComplexPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![ZERO; nd - dd + 1];
        let lead = divisor.lead();
        for k in (0..=nd - dd).rev() {
            let q = rem[k + dd] / lead;
            quot[k] = q;
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= q * d;
            }
            rem[k + dd] = ZERO;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Largest coefficientwise difference.
    pub fn max_abs_diff(&self, other: &ComplexPoly) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }
}

/// Highest power first; terms below `TRIM_EPS` relative to the largest
/// coefficient are skipped. Precision defaults to 6.
impl fmt::Display for ComplexPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prec = f.precision().unwrap_or(6);
        let floor = TRIM_EPS * self.max_coeff_norm();
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate().rev() {
            if c.norm() <= floor {
                continue;
            }
            let real = c.im.abs() <= floor;
            if first {
                if real && c.re < 0.0 {
                    f.write_str("-")?;
                }
            } else if real && c.re < 0.0 {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            if real {
                write!(f, "{:.*}", prec, c.re.abs())?;
            } else if c.re.abs() <= floor {
                write!(f, "{:.*}i", prec, c.im)?;
            } else {
                write!(f, "({:.*})", prec, c)?;
            }
            match k {
                0 => {}
                1 => f.write_str(" z")?,
                _ => write!(f, " z^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Add for &ComplexPoly {
    type Output = ComplexPoly;
    fn add(self, rhs: &ComplexPoly) -> ComplexPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ComplexPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &ComplexPoly {
    type Output = ComplexPoly;
    fn sub(self, rhs: &ComplexPoly) -> ComplexPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ComplexPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &ComplexPoly {
    type Output = ComplexPoly;
    fn neg(self) -> ComplexPoly {
        self.scale(-ONE)
    }
}

impl Mul for &ComplexPoly {
    type Output = ComplexPoly;
    fn mul(self, rhs: &ComplexPoly) -> ComplexPoly {
        if self.is_zero() || rhs.is_zero() {
            return ComplexPoly::zero();
        }
        let mut out = vec![ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ComplexPoly::new(out)
    }
}

/// Where a root sits relative to the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootClass {
    Inside,
    OnCircle,
    Outside,
}

pub fn classify(z: Complex64) -> RootClass {
    let r = z.norm();
    if (r - 1.0).abs() <= CIRCLE_EPS {
        RootClass::OnCircle
    } else if r < 1.0 - CIRCLE_EPS {
        RootClass::Inside
    } else {
        RootClass::Outside
    }
}

/// Roots of a polynomial. The root at the origin is carried as a
/// multiplicity; every other root is listed once per multiplicity.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RootSet {
    pub nonzero: Vec<Complex64>,
    pub zero_multiplicity: usize,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.nonzero.len() + self.zero_multiplicity
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every root including the zeros, in storage order.
    pub fn all(&self) -> Vec<Complex64> {
        let mut v = vec![ZERO; self.zero_multiplicity];
        v.extend_from_slice(&self.nonzero);
        v
    }

    pub fn count(&self, class: RootClass) -> usize {
        let zeros = if class == RootClass::Inside {
            self.zero_multiplicity
        } else {
            0
        };
        zeros + self.nonzero.iter().filter(|r| classify(**r) == class).count()
    }

    pub fn max_modulus(&self) -> f64 {
        self.nonzero.iter().fold(0.0, |m, r| m.max(r.norm()))
    }
}

/// Interpolates the unique polynomial of degree `< samples.len()` through
/// `(node, value)` pairs.
///
/// Nodes that form a rotated, scaled set of roots of unity (in order) are
/// handled with an inverse DFT; anything else falls back to a Vandermonde
/// solve. Coefficients below [`TRIM_EPS`] relative are zeroed.
pub fn interpolate_from_circle(samples: &[(Complex64, Complex64)], degree_bound: usize) -> Result<ComplexPoly> {
    let n = samples.len();
    if n < degree_bound + 1 {
        return Err(Error::InvalidArgument(format!(
            "{n} samples cannot determine a polynomial of degree {degree_bound}"
        )));
    }
    let scale = samples.iter().fold(1.0_f64, |m, (z, _)| m.max(z.norm()));
    for a in 0..n {
        for b in a + 1..n {
            if (samples[a].0 - samples[b].0).norm() <= 1e-14 * scale {
                return Err(Error::DuplicateNodes(a, b));
            }
        }
    }

    let coeffs = if is_rotated_roots_of_unity(samples) {
        inverse_dft(samples)
    } else {
        vandermonde_solve(samples)?
    };
    Ok(ComplexPoly::new(coeffs).trimmed(TRIM_EPS))
}

/// The `n` interpolation nodes `e^{i pi / (4 n)} * e^{2 pi i m / n}`.
///
/// The rotation keeps every node off `+-1` and `+-i`, where bound states
/// commonly sit.
pub fn rotated_circle_nodes(n: usize) -> Vec<Complex64> {
    let rot = PI / (4.0 * n as f64);
    (0..n)
        .map(|m| Complex64::from_polar(1.0, rot + 2.0 * PI * m as f64 / n as f64))
        .collect()
}

fn is_rotated_roots_of_unity(samples: &[(Complex64, Complex64)]) -> bool {
    let n = samples.len();
    let z0 = samples[0].0;
    if z0.norm() == 0.0 {
        return false;
    }
    samples.iter().enumerate().all(|(m, (z, _))| {
        let expected = z0 * unit_root(m, n);
        (z - expected).norm() <= 1e-12 * z0.norm()
    })
}

/// `e^{2 pi i k / n}` with the exponent reduced mod `n` first.
fn unit_root(k: usize, n: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * (k % n) as f64 / n as f64)
}

fn inverse_dft(samples: &[(Complex64, Complex64)]) -> Vec<Complex64> {
    let n = samples.len();
    let z0 = samples[0].0;
    let inv_z0 = ONE / z0;
    let mut out = Vec::with_capacity(n);
    let mut z0_pow = ONE;
    for k in 0..n {
        let mut acc = ZERO;
        for (m, (_, v)) in samples.iter().enumerate() {
            acc += v * unit_root(n - (m * k) % n, n);
        }
        out.push(acc / n as f64 * z0_pow);
        z0_pow *= inv_z0;
    }
    out
}

fn vandermonde_solve(samples: &[(Complex64, Complex64)]) -> Result<Vec<Complex64>> {
    let n = samples.len();
    let v = CMatrix::from_fn(n, n, |i, j| samples[i].0.powi(j as i32));
    let rhs = CMatrix::from_fn(n, 1, |i, _| samples[i].1);
    let lu = linalg::Lu::new(v);
    let x = lu.solve(&rhs).ok_or(Error::Singular(ZERO))?;
    Ok(x.iter().copied().collect())
}

/// Roots by eigenvalues of the balanced companion matrix.
///
/// The multiplicity of the root at the origin is the number of trailing
/// coefficients below [`TRIM_EPS`] (relative). Nonzero roots that agree to
/// within [`CLUSTER_EPS`] are snapped to their centroid; isolated roots get a
/// few Newton steps on the deflated polynomial.
pub fn poly_roots(p: &ComplexPoly) -> Result<RootSet> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = p.trimmed(TRIM_EPS);
    let zero_multiplicity = p.trailing_zeros();
    let q = p.shift_down(zero_multiplicity);
    let m = q.degree().unwrap_or(0);
    let nonzero = match m {
        0 => Vec::new(),
        1 => vec![-q.coeff(0) / q.coeff(1)],
        _ => {
            let lead = q.lead();
            let mut c = CMatrix::zeros(m, m);
            for i in 1..m {
                c[(i, i - 1)] = ONE;
            }
            for i in 0..m {
                c[(i, m - 1)] = -q.coeff(i) / lead;
            }
            linalg::balance(&mut c);
            let raw = linalg::eigenvalues(&c)?;
            refine_roots(&q, raw)
        }
    };
    Ok(RootSet {
        nonzero,
        zero_multiplicity,
    })
}

fn refine_roots(q: &ComplexPoly, raw: Vec<Complex64>) -> Vec<Complex64> {
    let clusters = cluster(&raw, CLUSTER_EPS);
    let dq = q.derivative();
    let mut out = Vec::with_capacity(raw.len());
    for members in clusters {
        let centroid = members.iter().map(|i| raw[*i]).sum::<Complex64>() / members.len() as f64;
        if members.len() > 1 {
            out.extend(std::iter::repeat_n(centroid, members.len()));
            continue;
        }
        let mut z = centroid;
        let mut best = q.eval(z).norm();
        for _ in 0..3 {
            let d = dq.eval(z);
            if d.norm() == 0.0 {
                break;
            }
            let next = z - q.eval(z) / d;
            let val = q.eval(next).norm();
            if val.is_nan() || val >= best {
                break;
            }
            z = next;
            best = val;
        }
        out.push(z);
    }
    out
}

/// Single-linkage clustering of points closer than `eps * max(1, |z|)`.
/// Clusters are returned in order of their first member.
pub(crate) fn cluster(points: &[Complex64], eps: f64) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for a in 0..n {
        for b in a + 1..n {
            let tol = eps * points[a].norm().max(points[b].norm()).max(1.0);
            if (points[a] - points[b]).norm() <= tol {
                let ra = find(&mut label, a);
                let rb = find(&mut label, b);
                if ra != rb {
                    label[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for i in 0..n {
        let r = find(&mut label, i);
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, g)) => g.push(i),
            None => groups.push((r, vec![i])),
        }
    }
    groups.into_iter().map(|(_, g)| g).collect()
}

/// Roots shared by two root sets.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CommonRoots {
    /// `(index into a.nonzero, index into b.nonzero)`.
    pub pairs: Vec<(usize, usize)>,
    pub zero_multiplicity: usize,
}

impl CommonRoots {
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty() && self.zero_multiplicity == 0
    }
}

/// Greedy nearest-neighbour matching of nonzero roots within `tol`; each root
/// is used at most once. Zero roots match by multiplicity.
pub fn pair_common_roots(a: &RootSet, b: &RootSet, tol: f64) -> CommonRoots {
    let mut candidates = Vec::new();
    for (i, x) in a.nonzero.iter().enumerate() {
        for (j, y) in b.nonzero.iter().enumerate() {
            let d = (x - y).norm();
            if d <= tol {
                candidates.push((d, i, j));
            }
        }
    }
    candidates.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.cmp(&q.1)).then(p.2.cmp(&q.2)));
    let mut used_a = vec![false; a.nonzero.len()];
    let mut used_b = vec![false; b.nonzero.len()];
    let mut pairs = Vec::new();
    for (_, i, j) in candidates {
        if !used_a[i] && !used_b[j] {
            used_a[i] = true;
            used_b[j] = true;
            pairs.push((i, j));
        }
    }
    pairs.sort_unstable();
    CommonRoots {
        pairs,
        zero_multiplicity: a.zero_multiplicity.min(b.zero_multiplicity),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn bolo_f() -> ComplexPoly {
        ComplexPoly::from_real(&[0.0, 0.0, 1.0 / 3.0, -2.0 / 3.0, 1.0])
    }

    #[test]
    fn eval_basics() {
        let p = ComplexPoly::from_real(&[1.0, 0.0, 1.0]);
        assert!(p.eval(c(0.0, 1.0)).norm() < 1e-15);
        let k = ComplexPoly::from_real(&[3.0]);
        assert_eq!(k.eval(c(0.3, -7.0)), c(3.0, 0.0));
        let eta = c(1.0, 2f64.sqrt()) / 3.0;
        assert!(bolo_f().eval(eta).norm() < 1e-12);
    }

    #[test]
    fn z_squared_at_third_roots() {
        let nodes: Vec<_> = (0..3).map(|m| unit_root(m, 3)).collect();
        let samples: Vec<_> = nodes.iter().map(|z| (*z, z * z)).collect();
        let p = interpolate_from_circle(&samples, 2).unwrap();
        assert_eq!(p.degree(), Some(2));
        assert!(p.max_abs_diff(&ComplexPoly::monomial(2)) < 1e-14);
        assert_eq!(p.coeff(0), ZERO);
        assert_eq!(p.coeff(1), ZERO);
    }

    #[test]
    fn constant_samples() {
        let samples: Vec<_> = rotated_circle_nodes(5).into_iter().map(|z| (z, c(2.0, -1.0))).collect();
        let p = interpolate_from_circle(&samples, 4).unwrap();
        assert_eq!(p.degree(), Some(0));
        assert!((p.coeff(0) - c(2.0, -1.0)).norm() < 1e-14);
    }

    #[test]
    fn arbitrary_nodes_use_vandermonde() {
        let p = ComplexPoly::from_real(&[1.0, -2.0, 0.5]);
        let nodes = [c(0.1, 0.0), c(2.0, 1.0), c(-1.0, 0.3)];
        let samples: Vec<_> = nodes.iter().map(|z| (*z, p.eval(*z))).collect();
        let q = interpolate_from_circle(&samples, 2).unwrap();
        assert!(q.max_abs_diff(&p) < 1e-12);
    }

    #[test]
    fn duplicate_nodes_rejected() {
        let samples = [(c(1.0, 0.0), ONE), (c(0.0, 1.0), ONE), (c(1.0, 0.0), ONE)];
        assert!(matches!(
            interpolate_from_circle(&samples, 2),
            Err(Error::DuplicateNodes(0, 2))
        ));
    }

    #[test]
    fn bolo_f_roots() {
        let r = poly_roots(&bolo_f()).unwrap();
        assert_eq!(r.zero_multiplicity, 2);
        assert_eq!(r.nonzero.len(), 2);
        let want = [c(1.0, 2f64.sqrt()) / 3.0, c(1.0, -(2f64.sqrt())) / 3.0];
        for w in want {
            assert!(r.nonzero.iter().any(|x| (x - w).norm() < 1e-12));
            assert_eq!(classify(w), RootClass::Inside);
        }
        for x in &r.nonzero {
            assert!((x.norm() - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn unit_circle_roots() {
        let r = poly_roots(&ComplexPoly::from_real(&[1.0, 0.0, 1.0])).unwrap();
        assert_eq!(r.count(RootClass::OnCircle), 2);
        assert!(r.nonzero.iter().any(|x| (x - c(0.0, 1.0)).norm() < 1e-14));
        assert!(r.nonzero.iter().any(|x| (x - c(0.0, -1.0)).norm() < 1e-14));
    }

    #[test]
    fn square_junction_g11_roots() {
        let g = ComplexPoly::from_real(&[-3.0, 0.0, 10.0, 0.0, 9.0]);
        let r = poly_roots(&g).unwrap();
        let s13 = 13f64.sqrt();
        let re = (2.0 * s13 - 5.0).sqrt() / 3.0;
        let im = (2.0 * s13 + 5.0).sqrt() / 3.0;
        for (w, class) in [
            (c(re, 0.0), RootClass::Inside),
            (c(-re, 0.0), RootClass::Inside),
            (c(0.0, im), RootClass::Outside),
            (c(0.0, -im), RootClass::Outside),
        ] {
            let hit = r
                .nonzero
                .iter()
                .find(|x| (*x - w).norm() < 1e-12)
                .expect("root present");
            assert_eq!(classify(*hit), class);
        }
    }

    #[test]
    fn zero_polynomial_has_no_roots() {
        assert!(matches!(poly_roots(&ComplexPoly::zero()), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn double_roots_are_snapped() {
        let root = c(0.0, 1.0 / 3f64.sqrt());
        let p = ComplexPoly::from_roots(&[root, root, c(0.5, 0.0)], ONE);
        let r = poly_roots(&p).unwrap();
        let near: Vec<_> = r.nonzero.iter().filter(|x| (*x - root).norm() < 1e-6).collect();
        assert_eq!(near.len(), 2);
        assert_eq!(near[0], near[1]);
        assert!((near[0] - root).norm() < 1e-12);
    }

    #[test]
    fn division_recovers_factor() {
        let a = ComplexPoly::from_roots(&[c(-1.0, 0.0), c(0.2, 0.3)], c(2.0, 0.0));
        let b = ComplexPoly::from_roots(&[c(-1.0, 0.0)], ONE);
        let (q, r) = a.div_rem(&b);
        assert!(r.max_coeff_norm() < 1e-15);
        assert!((q.eval(c(0.2, 0.3))).norm() < 1e-15);
        assert!((&q * &b).max_abs_diff(&a) < 1e-15);
    }

    #[test]
    fn pairing() {
        let a = RootSet {
            nonzero: vec![c(-1.0, 0.0), c(0.5, 0.0)],
            zero_multiplicity: 2,
        };
        let b = RootSet {
            nonzero: vec![c(3.0, 0.0), c(-1.0 + 1e-9, 0.0)],
            zero_multiplicity: 0,
        };
        let m = pair_common_roots(&a, &b, 1e-7);
        assert_eq!(m.pairs, vec![(0, 1)]);
        assert_eq!(m.zero_multiplicity, 0);

        let disjoint = RootSet {
            nonzero: vec![c(7.0, 0.0)],
            zero_multiplicity: 0,
        };
        assert!(pair_common_roots(&a, &disjoint, 1e-7).is_empty());
    }

    fn coeff_strategy(max_len: usize) -> impl Strategy<Value = Vec<Complex64>> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..max_len)
            .prop_map(|v| v.into_iter().map(|(a, b)| c(a, b)).collect())
    }

    proptest! {
        #[test]
        fn interpolate_eval_is_identity(coeffs in coeff_strategy(65)) {
            let mut coeffs = coeffs;
            // keep the leading coefficient away from the trim threshold
            let last = coeffs.len() - 1;
            coeffs[last] += c(2.0, 0.0);
            let p = ComplexPoly::new(coeffs);
            let d = p.degree().unwrap();
            let samples: Vec<_> = rotated_circle_nodes(d + 1).into_iter().map(|z| (z, p.eval(z))).collect();
            let q = interpolate_from_circle(&samples, d).unwrap();
            for k in 0..=d {
                let exact = p.coeff(k);
                let got = q.coeff(k);
                // trimming may zero a coefficient below the relative threshold
                let tol = 1e-10f64.max(if got == ZERO { TRIM_EPS * p.max_coeff_norm() } else { 0.0 });
                prop_assert!((exact - got).norm() < tol, "k={} exact={} got={}", k, exact, got);
            }
        }

        #[test]
        fn root_residuals_are_small(coeffs in coeff_strategy(14)) {
            let mut coeffs = coeffs;
            let last = coeffs.len() - 1;
            coeffs[last] += c(1.5, 0.0);
            let p = ComplexPoly::new(coeffs).trimmed(TRIM_EPS);
            prop_assume!(p.degree().unwrap_or(0) >= 1);
            let r = poly_roots(&p).unwrap();
            prop_assert_eq!(r.len(), p.degree().unwrap());
            for z in r.all() {
                prop_assert!(p.eval(z).norm() / (1.0 + p.lead().norm()) < 1e-8);
            }
        }

        #[test]
        fn zero_multiplicity_counts_trailing_coefficients(s in 0usize..5, coeffs in coeff_strategy(6)) {
            let mut coeffs = coeffs;
            coeffs[0] += c(1.0, 0.0);
            let last = coeffs.len() - 1;
            coeffs[last] += c(1.0, 0.0);
            let p = ComplexPoly::new(coeffs).shift_up(s);
            prop_assume!(p.trimmed(TRIM_EPS).trailing_zeros() == s);
            prop_assert_eq!(poly_roots(&p).unwrap().zero_multiplicity, s);
        }
    }
}
