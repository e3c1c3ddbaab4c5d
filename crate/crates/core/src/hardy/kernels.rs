use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::grid::SpinorField;
use super::spectral::{check_height, CliffordOps};
use crate::error::{Error, Result};

/// `Γ(n/2)` for a positive integer `n`, by the recursion `Γ(x + 1) = xΓ(x)`.
pub fn gamma_half(n: usize) -> f64 {
    let (mut x, mut g) = if n.is_multiple_of(2) { (1.0, 1.0) } else { (0.5, PI.sqrt()) };
    let target = n as f64 / 2.0;
    while x < target {
        g *= x;
        x += 1.0;
    }
    g
}

/// Surface measure of the unit sphere in ℝⁿ, `2π^{n/2} / Γ(n/2)`.
pub fn omega(n: usize) -> f64 {
    2.0 * PI.powf(n as f64 / 2.0) / gamma_half(n)
}

/// Poisson kernel `P_t(x)` and conjugate kernels `Q_t^{(j)}(x)` on ℝ^{n−1}, `n = x.len() + 1`.
pub fn kernels(t: f64, x: &[f64]) -> Result<(f64, Vec<f64>)> {
    check_height(t)?;
    let n = x.len() + 1;
    let c = 2.0 / omega(n);
    let denom = (t * t + x.iter().map(|v| v * v).sum::<f64>()).powf(n as f64 / 2.0);
    Ok((c * t / denom, x.iter().map(|xj| c * xj / denom).collect()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub t: f64,
    pub residual: f64,
    pub spectral_norm: f64,
}

/// Compares `cauchy_extension(f, t)` with `½P_t∗f + ½Σ_j e_0e_j (Q_t^{(j)}∗f)` evaluated by
/// direct (non-periodic) summation over the grid. The gap is the periodization error.
pub fn convolution_crosscheck(ops: &CliffordOps, f: &SpinorField, t: f64) -> Result<CrosscheckReport> {
    check_height(t)?;
    let spectral = ops.cauchy_extension(f, t)?;
    let grid = f.grid;
    let d = grid.d;
    if d + 1 != ops.n {
        return Err(Error::DimensionMismatch { left: ops.n, right: d + 1 });
    }
    let size = grid.size();
    let dim = f.dim;
    let h = grid.cell_volume();
    let coords: Vec<Vec<f64>> = (0..size).map(|p| grid.coords(p)).collect();
    // Σ_l K(x_i − x_l) f(x_l) h^d for K = P_t and each Q_t^{(j)}
    let mut poisson = SpinorField::zeros(grid, f.n, dim);
    let mut conj: Vec<SpinorField> = (0..d).map(|_| SpinorField::zeros(grid, f.n, dim)).collect();
    let mut diff = vec![0.0; d];
    for i in 0..size {
        for l in 0..size {
            for a in 0..d {
                diff[a] = coords[i][a] - coords[l][a];
            }
            let (p, q) = kernels(t, &diff)?;
            let src = f.point(l);
            for (c, &value) in src.iter().enumerate() {
                poisson.values[i * dim + c] += p * value * h;
                for (qf, qa) in conj.iter_mut().zip(&q) {
                    qf.values[i * dim + c] += qa * value * h;
                }
            }
        }
    }
    let mut direct = poisson.scale(0.5);
    for (a, qf) in conj.iter().enumerate() {
        let e0ej = ops.apply_generator(0, &ops.apply_generator(a + 1, qf)?)?;
        direct = direct.add(&e0ej.scale(0.5))?;
    }
    Ok(CrosscheckReport {
        t,
        residual: direct.relative_distance(&spectral)?,
        spectral_norm: spectral.norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardy::Grid;

    #[test]
    fn sphere_measures() {
        assert!((omega(2) - 2.0 * PI).abs() < 1e-14);
        assert!((omega(3) - 4.0 * PI).abs() < 1e-13);
        assert!((omega(4) - 2.0 * PI * PI).abs() < 1e-13);
        assert!((gamma_half(5) - 0.75 * PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn kernel_values() {
        let t = 0.4;
        let (p, q) = kernels(t, &[0.0, 0.0]).unwrap();
        assert!((p - 2.0 / omega(3) * t.powi(-2)).abs() < 1e-12);
        assert_eq!(q, vec![0.0, 0.0]);
        let (p, q) = kernels(t, &[0.3]).unwrap();
        assert!((p - t / (PI * (t * t + 0.09))).abs() < 1e-14);
        assert!((q[0] - 0.3 / (PI * (t * t + 0.09))).abs() < 1e-14);
        assert!(kernels(0.0, &[1.0]).is_err());
    }

    #[test]
    fn zero_field_has_zero_discrepancy() {
        let g = Grid::new(1, 32, 8.0).unwrap();
        let ops = CliffordOps::for_n(2).unwrap();
        let f = SpinorField::zeros(g, 2, 4);
        assert_eq!(convolution_crosscheck(&ops, &f, 0.5).unwrap().residual, 0.0);
    }
}
