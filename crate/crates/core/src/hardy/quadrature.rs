use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::kernels::omega;
use crate::error::{Error, Result};

// Gauss–Kronrod 7/15 nodes on [−1, 1] (non-negative half) and weights.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15(f: &mut dyn FnMut(f64) -> Result<f64>, a: f64, b: f64) -> Result<(f64, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x)? + f(c + x)?;
        kronrod += WGK[i] * s;
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    Ok((kronrod * h, ((kronrod - gauss) * h).abs()))
}

/// Globally adaptive Gauss–Kronrod (7/15) integration of `f` over `[a, b]`
/// to absolute tolerance `tol`. Returns the estimate and its error bound.
pub fn integrate(
    f: &mut dyn FnMut(f64) -> Result<f64>,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    const MAX_INTERVALS: usize = 4000;
    let (v, e) = gk15(f, a, b)?;
    let mut intervals = vec![(a, b, v, e)];
    loop {
        let total: f64 = intervals.iter().map(|iv| iv.2).sum();
        let err: f64 = intervals.iter().map(|iv| iv.3).sum();
        if err <= tol {
            return Ok((total, err));
        }
        if intervals.len() >= MAX_INTERVALS {
            return Err(Error::QuadratureNonConvergence {
                estimate: err,
                tolerance: tol,
            });
        }
        let worst = intervals
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .expect("non-empty");
        let (lo, hi, _, _) = intervals.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(f, lo, mid)?;
        let (v2, e2) = gk15(f, mid, hi)?;
        intervals.push((lo, mid, v1, e1));
        intervals.push((mid, hi, v2, e2));
    }
}

/// Radial cutoff: `e^{−R²}` is far below every tolerance used here.
const RADIUS: f64 = 10.0;

/// `(2/ω_n) ∫_{ℝ^{n−1}} (−u_j/|u|ⁿ) · c·u_1 e^{−|u|²} du` in spherical coordinates.
///
/// The integrand is evaluated as written at `u = rθ`; the Jacobian `r^{d−1}`
/// cancels the kernel singularity, so the radial integrand is bounded.
pub fn riesz_of_schwartz_at_origin(n: usize, j: usize, c: f64, tol: f64) -> Result<f64> {
    if !(2..=4).contains(&n) {
        return Err(Error::UnsupportedDimension {
            n,
            reason: "schwartz normalization supports 2 <= n <= 4",
        });
    }
    let d = n - 1;
    if j == 0 || j > d {
        return Err(Error::IndexOutOfRange { index: j, max: d });
    }
    let integrand = |u: &[f64]| -> f64 {
        let r2: f64 = u.iter().map(|x| x * x).sum();
        let r = r2.sqrt();
        (-u[j - 1] / r.powi(n as i32)) * c * u[0] * (-r2).exp()
    };
    let pref = 2.0 / omega(n);
    let value = match d {
        1 => {
            let mut total = 0.0;
            for theta in [1.0, -1.0] {
                let mut radial = |r: f64| Ok(integrand(&[r * theta]));
                total += integrate(&mut radial, 0.0, RADIUS, tol / 2.0)?.0;
            }
            total
        }
        2 => {
            let inner_tol = tol / (4.0 * PI);
            let mut angular = |phi: f64| {
                let (s, co) = phi.sin_cos();
                let mut radial = |r: f64| Ok(integrand(&[r * co, r * s]) * r);
                Ok(integrate(&mut radial, 0.0, RADIUS, inner_tol)?.0)
            };
            integrate(&mut angular, 0.0, 2.0 * PI, tol / 2.0)?.0
        }
        _ => {
            let inner_tol = tol / (8.0 * PI * PI);
            let mut polar = |psi: f64| {
                let (sp, cp) = psi.sin_cos();
                let mut azimuth = |phi: f64| {
                    let (s, co) = phi.sin_cos();
                    let mut radial = |r: f64| {
                        Ok(integrand(&[r * sp * co, r * sp * s, r * cp]) * r * r * sp)
                    };
                    Ok(integrate(&mut radial, 0.0, RADIUS, inner_tol)?.0)
                };
                Ok(integrate(&mut azimuth, 0.0, 2.0 * PI, tol / (4.0 * PI))?.0)
            };
            integrate(&mut polar, 0.0, PI, tol / 2.0)?.0
        }
    };
    Ok(pref * value)
}

/// Closed form of the normalization, `c = −ω_n (n−1) / (√π ω_{n−1})`.
pub fn schwartz_closed_form(n: usize) -> f64 {
    -omega(n) * (n - 1) as f64 / (PI.sqrt() * omega(n - 1))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchwartzReport {
    pub n: usize,
    /// Constant making `𝓡_1 f(0) = 1` for `f(x) = c x_1 e^{−|x|²}`.
    pub c: f64,
    pub closed_form: f64,
    pub tolerance: f64,
    /// `𝓡_1 f(0)` recomputed at a tolerance ten times tighter.
    pub verification: f64,
    pub verification_residual: f64,
    /// `|𝓡_j f(0)|` for `j = 2..n−1`.
    pub off_axis: Vec<f64>,
}

/// Finds `c` by quadrature at `tol` and re-verifies it at `tol / 10`.
pub fn schwartz_normalization(n: usize, tol: f64) -> Result<SchwartzReport> {
    let base = riesz_of_schwartz_at_origin(n, 1, 1.0, tol)?;
    let c = 1.0 / base;
    let verification = riesz_of_schwartz_at_origin(n, 1, c, tol / 10.0)?;
    let off_axis = (2..n)
        .map(|j| Ok(riesz_of_schwartz_at_origin(n, j, c, tol / 10.0)?.abs()))
        .collect::<Result<Vec<_>>>()?;
    Ok(SchwartzReport {
        n,
        c,
        closed_form: schwartz_closed_form(n),
        tolerance: tol,
        verification,
        verification_residual: (verification - 1.0).abs(),
        off_axis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_kronrod_polynomials_and_gaussian() {
        let mut cubic = |x: f64| Ok(x * x * x - 2.0 * x + 1.0);
        let (v, _) = integrate(&mut cubic, 0.0, 2.0, 1e-12).unwrap();
        assert!((v - 2.0).abs() < 1e-13);
        let mut g = |x: f64| Ok((-x * x).exp());
        let (v, _) = integrate(&mut g, -10.0, 10.0, 1e-12).unwrap();
        assert!((v - PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn non_convergence_is_reported() {
        let mut wild = |x: f64| Ok(if x > 0.3 { 1.0 / (x - 0.3).sqrt() } else { 0.0 });
        assert!(matches!(
            integrate(&mut wild, 0.0, 1.0, 1e-300),
            Err(Error::QuadratureNonConvergence { .. })
        ));
    }

    #[test]
    fn n2_constant_is_minus_root_pi() {
        assert!((schwartz_closed_form(2) + PI.sqrt()).abs() < 1e-14);
        let rep = schwartz_normalization(2, 1e-10).unwrap();
        assert!((rep.c + PI.sqrt()).abs() < 1e-8);
        assert!(rep.off_axis.is_empty());
    }

    #[test]
    fn linear_in_c() {
        let one = riesz_of_schwartz_at_origin(3, 1, 1.0, 1e-9).unwrap();
        let two = riesz_of_schwartz_at_origin(3, 1, 2.0, 1e-9).unwrap();
        assert!((two - 2.0 * one).abs() < 1e-8);
    }

    #[test]
    fn rejects_unsupported_n() {
        assert!(schwartz_normalization(5, 1e-9).is_err());
        assert!(riesz_of_schwartz_at_origin(3, 3, 1.0, 1e-9).is_err());
    }
}
