//! Thin helpers over `nalgebra` for the dense complex matrices used throughout.

use nalgebra::{DMatrix, DVector, Schur};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

const SCHUR_EPS: f64 = 1e-15;
const SCHUR_MAX_ITER: usize = 10_000;

/// Pivot ratio below which an LU factorisation is treated as singular.
const SINGULAR_RATIO: f64 = 1e-14;

/// `m - z I`.
pub fn shifted(m: &CMatrix, z: Complex64) -> CMatrix {
    let mut a = m.clone();
    for i in 0..a.nrows() {
        a[(i, i)] -= z;
    }
    a
}

/// LU factorisation with a singularity flag based on the pivot spread.
pub struct Lu {
    lu: nalgebra::LU<Complex64, nalgebra::Dyn, nalgebra::Dyn>,
    singular: bool,
}

impl Lu {
    pub fn new(a: CMatrix) -> Self {
        let lu = a.lu();
        let u = lu.u();
        let mut max = 0.0_f64;
        let mut min = f64::INFINITY;
        for i in 0..u.nrows() {
            let p = u[(i, i)].norm();
            max = max.max(p);
            min = min.min(p);
        }
        let singular = u.nrows() > 0 && (max == 0.0 || min <= SINGULAR_RATIO * max);
        Self { lu, singular }
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    pub fn determinant(&self) -> Complex64 {
        self.lu.determinant()
    }

    pub fn solve(&self, b: &CMatrix) -> Option<CMatrix> {
        if self.singular {
            return None;
        }
        self.lu.solve(b)
    }
}

/// All eigenvalues of a square complex matrix via the complex Schur form.
pub fn eigenvalues(m: &CMatrix) -> Result<Vec<Complex64>> {
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    let schur = Schur::try_new(m.clone(), SCHUR_EPS, SCHUR_MAX_ITER).ok_or(Error::NoConvergence)?;
    let ev = schur.eigenvalues().ok_or(Error::NoConvergence)?;
    Ok(ev.iter().copied().collect())
}

/// Diagonal similarity balancing (Parlett and Reinsch, radix 2).
pub fn balance(m: &mut CMatrix) {
    let n = m.nrows();
    let radix = 2.0_f64;
    let mut converged = false;
    while !converged {
        converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].norm();
                    r += m[(i, j)].norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut cc = c;
            let mut rr = r;
            while cc < rr / radix {
                cc *= radix;
                rr /= radix;
                f *= radix;
            }
            while cc >= rr * radix {
                cc /= radix;
                rr *= radix;
                f /= radix;
            }
            if (cc + rr) < 0.95 * s {
                converged = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                }
                for j in 0..n {
                    m[(j, i)] *= f;
                }
            }
        }
    }
}

/// Right singular vectors of `a` whose singular value is at most `tol`
/// (relative to the largest singular value, floored at 1).
pub fn near_null_vectors(a: &CMatrix, tol: f64) -> Vec<CVector> {
    let svd = a.clone().svd(false, true);
    let v_t = match svd.v_t {
        Some(v) => v,
        None => return Vec::new(),
    };
    let scale = svd.singular_values.iter().fold(1.0_f64, |m, s| m.max(*s));
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s <= tol * scale)
        .map(|(i, _)| v_t.row(i).adjoint())
        .collect()
}
