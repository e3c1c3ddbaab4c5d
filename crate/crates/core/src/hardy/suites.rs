use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::{Grid, SpinorField};
use super::kernels::convolution_crosscheck;
use super::quadrature::schwartz_normalization;
use super::spectral::{frequency_table, spectral_derivative, CliffordOps, Spectrum};
use crate::clifford::CliffordRealization;
use crate::error::{Error, Result};
use crate::gilbert::{check_gilbert, standard_witness_for, GilbertWitness};
use crate::linalg::Subspace;

/// Tolerance for pure multiplier identities.
pub const TOL_MULTIPLIER: f64 = 1e-12;
/// Tolerance for composed pipelines.
pub const TOL_PIPELINE: f64 = 1e-10;
/// Tolerance for kernel periodization.
pub const TOL_PERIODIZATION: f64 = 1e-3;
/// Tolerance for quadrature verification.
pub const TOL_QUADRATURE: f64 = 1e-6;
/// Bound on off-axis Riesz values of the Schwartz test function.
pub const TOL_OFF_AXIS: f64 = 1e-8;
/// Minimum empirical order of the central-difference Dirac check.
pub const MIN_DIRAC_ORDER: f64 = 1.8;

/// One numeric check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericReport {
    pub test: String,
    pub n: usize,
    pub d: usize,
    #[serde(rename = "N")]
    pub points: usize,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl NumericReport {
    fn below(test: &str, grid: &Grid, n: usize, residual: f64, tolerance: f64) -> Self {
        Self {
            test: test.into(),
            n,
            d: grid.d,
            points: grid.points,
            residual,
            tolerance,
            pass: residual < tolerance,
        }
    }
}

/// Real random field whose spectrum lives on `0 < max_a |k_a| ≤ band`, away from the Nyquist bins.
pub fn random_band_limited(grid: Grid, n: usize, dim: usize, band: usize, rng: &mut impl Rng) -> SpinorField {
    let band = band.min(grid.points / 2 - 1) as i64;
    let size = grid.size();
    let support: Vec<bool> = (0..size)
        .map(|k| {
            let (mut rest, mut inside, mut nonzero) = (k, true, false);
            for _ in 0..grid.d {
                let w = grid.wave_index(rest % grid.points);
                rest /= grid.points;
                inside &= w.abs() <= band;
                nonzero |= w != 0;
            }
            inside && nonzero
        })
        .collect();
    let data = (0..dim)
        .map(|_| {
            support
                .iter()
                .map(|&inside| {
                    if inside {
                        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                    } else {
                        Complex64::default()
                    }
                })
                .collect()
        })
        .collect();
    // taking the real part symmetrizes the spectrum on the same support
    Spectrum { grid, n, data }.inverse()
}

/// Orthogonal projection onto a subspace of the spinor space, from its exact basis.
#[derive(Clone, Debug)]
pub struct OrthoProjector {
    basis: Vec<Vec<f64>>,
}

impl OrthoProjector {
    /// Modified Gram–Schmidt on the RREF basis.
    pub fn new(s: &Subspace) -> Self {
        let mut basis: Vec<Vec<f64>> = Vec::new();
        for mut v in s.basis_f64() {
            for q in &basis {
                let dot: f64 = v.iter().zip(q).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(q).for_each(|(a, b)| *a -= dot * b);
            }
            let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
            v.iter_mut().for_each(|a| *a /= norm);
            basis.push(v);
        }
        Self { basis }
    }

    pub fn project(&self, f: &SpinorField) -> SpinorField {
        f.map_points(|src, dst| {
            dst.fill(0.0);
            for q in &self.basis {
                let dot: f64 = src.iter().zip(q).map(|(a, b)| a * b).sum();
                dst.iter_mut().zip(q).for_each(|(a, b)| *a += dot * b);
            }
        })
    }
}

/// `𝓡𝓑𝓒 f` for `ℌ₀`-valued `f`: Hardy projection (the `t → 0` boundary of the
/// Cauchy extension) followed by twice the orthogonal projection onto `ℌ₀`.
pub fn rbc_apply(ops: &CliffordOps, proj: &OrthoProjector, f: &SpinorField) -> Result<SpinorField> {
    Ok(proj.project(&ops.hardy_projection(f)?).scale(2.0))
}

fn witness_ops(w: &GilbertWitness) -> Result<(CliffordOps, OrthoProjector)> {
    let r = CliffordRealization::build(w.n)?;
    if !check_gilbert(&r, w)?.verdict {
        return Err(Error::InvalidArgument(format!("witness for n = {} fails its conditions", w.n)));
    }
    let c = r
        .component(w.component_tag)
        .ok_or_else(|| Error::InvalidArgument("witness component missing".into()))?;
    Ok((CliffordOps::from_component(w.n, c)?, OrthoProjector::new(&w.h0)))
}

/// `‖𝓡𝓑𝓒 f − f‖ / ‖f‖` with `f` first projected onto `ℌ₀`.
pub fn rbc_identity(field: &SpinorField, w: &GilbertWitness) -> Result<f64> {
    let (ops, proj) = witness_ops(w)?;
    rbc_residual(&ops, &proj, field)
}

fn rbc_residual(ops: &CliffordOps, proj: &OrthoProjector, field: &SpinorField) -> Result<f64> {
    let f = proj.project(field);
    rbc_apply(ops, proj, &f)?.relative_distance(&f)
}

/// `‖𝓒𝓡𝓑F − F‖ / ‖F‖` for `F` the Cauchy extension at height `t` of the `ℌ₀`-part of `field`.
pub fn crb_identity(field: &SpinorField, w: &GilbertWitness, t: f64) -> Result<f64> {
    let (ops, proj) = witness_ops(w)?;
    crb_residual(&ops, &proj, field, t)
}

fn crb_residual(ops: &CliffordOps, proj: &OrthoProjector, field: &SpinorField, t: f64) -> Result<f64> {
    let f = proj.project(field);
    let big = ops.cauchy_extension(&f, t)?;
    let boundary = ops.boundary_from_extension(&big, t)?;
    let again = ops.cauchy_extension(&proj.project(&boundary).scale(2.0), t)?;
    again.relative_distance(&big)
}

/// Finite-difference monogenicity check of the Cauchy extension.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiracReport {
    pub t0: f64,
    pub steps: Vec<f64>,
    /// Relative residual `‖e_0∂_tF + Σ e_j∂_jF‖ / ‖e_0∂_tF‖` per step.
    pub residuals: Vec<f64>,
    /// Empirical order between consecutive steps.
    pub orders: Vec<f64>,
    pub min_order: f64,
    /// Same residual with the exact spectral `∂_t` (multiplier `−|ξ|`).
    pub spectral_residual: f64,
}

fn dirac_space_part(ops: &CliffordOps, s: &Spectrum) -> Result<Spectrum> {
    let mut acc = s.scale(0.0);
    for j in 1..=s.grid.d {
        acc = acc.add(&spectral_derivative(s, j)?.apply_perm(&ops.generators[j]));
    }
    Ok(acc)
}

/// Measures `D = e_0∂_t + Σ e_j∂_j` on `F(t) = cauchy_extension(f, t)` around `t0`
/// with central differences for each step in `steps` (at least three).
pub fn dirac_residual(ops: &CliffordOps, f: &SpinorField, t0: f64, steps: &[f64]) -> Result<DiracReport> {
    if steps.len() < 3 {
        return Err(Error::InvalidArgument("dirac_residual needs at least 3 step sizes".into()));
    }
    if steps.iter().any(|&h| !(h > 0.0 && h < t0)) {
        return Err(Error::InvalidArgument("steps must lie in (0, t0)".into()));
    }
    let center = ops.cauchy_spectrum(f, t0)?;
    let space = dirac_space_part(ops, &center)?.inverse();
    let table = frequency_table(&f.grid);
    let exact_dt = center.scalar_multiplier(|k| Complex64::new(-table.abs[k], 0.0));
    let exact_time = exact_dt.apply_perm(&ops.generators[0]).inverse();
    let scale = exact_time.norm();
    let rel = |x: f64| if scale > 0.0 { x / scale } else { x };
    let spectral_residual = rel(exact_time.add(&space)?.norm());
    let mut residuals = Vec::with_capacity(steps.len());
    for &h in steps {
        let up = ops.cauchy_extension(f, t0 + h)?;
        let down = ops.cauchy_extension(f, t0 - h)?;
        let dt = up.sub(&down)?.scale(0.5 / h);
        let time = ops.apply_generator(0, &dt)?;
        residuals.push(rel(time.add(&space)?.norm()));
    }
    let orders: Vec<f64> = residuals
        .windows(2)
        .zip(steps.windows(2))
        .map(|(r, h)| (r[0] / r[1]).ln() / (h[0] / h[1]).ln())
        .collect();
    let min_order = orders.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(DiracReport {
        t0,
        steps: steps.to_vec(),
        residuals,
        orders,
        min_order,
        spectral_residual,
    })
}

/// Grid and sampling parameters shared by the numeric suites.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteConfig {
    pub n: usize,
    pub grid: Grid,
    pub trials: usize,
    pub seed: u64,
}

impl SuiteConfig {
    pub fn new(n: usize, points: usize, length: f64, trials: usize, seed: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::UnsupportedDimension { n, reason: "boundary dimension n - 1 must be >= 1" });
        }
        Ok(Self {
            n,
            grid: Grid::new(n - 1, points, length)?,
            trials: trials.max(1),
            seed,
        })
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn band(&self) -> usize {
        (self.grid.points / 4).max(1)
    }

    /// Random trial fields, generated one at a time from the seeded stream.
    fn fields(&self, dim: usize) -> impl Iterator<Item = SpinorField> + '_ {
        let mut rng = self.rng();
        (0..self.trials).map(move |_| random_band_limited(self.grid, self.n, dim, self.band(), &mut rng))
    }
}

fn max_over(values: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    values.into_iter().try_fold(0.0f64, |m, v| Ok(m.max(v?)))
}

/// `‖P(Pf) − Pf‖ / ‖Pf‖`, worst case over random fields.
pub fn suite_idempotency(cfg: &SuiteConfig) -> Result<NumericReport> {
    let ops = CliffordOps::for_n(cfg.n)?;
    let res = max_over(cfg.fields(ops.dim).map(|f| {
        let p = ops.hardy_projection(&f)?;
        ops.hardy_projection(&p)?.relative_distance(&p)
    }))?;
    Ok(NumericReport::below("idempotency", &cfg.grid, cfg.n, res, TOL_MULTIPLIER))
}

/// `‖ℋ²f − f‖ / ‖f‖` on mean-zero fields, worst case.
pub fn suite_involution(cfg: &SuiteConfig) -> Result<NumericReport> {
    let ops = CliffordOps::for_n(cfg.n)?;
    let res = max_over(cfg.fields(ops.dim).map(|f| {
        ops.hilbert(&ops.hilbert(&f)?)?.relative_distance(&f)
    }))?;
    Ok(NumericReport::below("involution", &cfg.grid, cfg.n, res, TOL_MULTIPLIER))
}

/// `𝓡𝓑𝓒 = Id` on `ℌ₀`-valued fields for every component witness.
pub fn suite_rbc(cfg: &SuiteConfig) -> Result<NumericReport> {
    let r = CliffordRealization::build(cfg.n)?;
    let witnesses = standard_witness_for(&r)?;
    let prepared = witnesses.iter().map(witness_ops).collect::<Result<Vec<_>>>()?;
    let res = max_over(
        prepared
            .iter()
            .flat_map(|(ops, proj)| cfg.fields(r.spinor_dim).map(move |f| rbc_residual(ops, proj, &f))),
    )?;
    Ok(NumericReport::below("rbc", &cfg.grid, cfg.n, res, TOL_PIPELINE))
}

/// `𝓒𝓡𝓑F = F` for Cauchy extensions of `ℌ₀`-valued fields at `t = 0.5`.
pub fn suite_crb(cfg: &SuiteConfig) -> Result<NumericReport> {
    let r = CliffordRealization::build(cfg.n)?;
    let witnesses = standard_witness_for(&r)?;
    let prepared = witnesses.iter().map(witness_ops).collect::<Result<Vec<_>>>()?;
    let res = max_over(
        prepared
            .iter()
            .flat_map(|(ops, proj)| cfg.fields(r.spinor_dim).map(move |f| crb_residual(ops, proj, &f, 0.5))),
    )?;
    Ok(NumericReport::below("crb", &cfg.grid, cfg.n, res, TOL_PIPELINE))
}

/// Default Dirac setup: `t0 = 0.5`, steps `0.1, 0.05, 0.025`, band limited to `|k| ≤ 3`.
pub fn suite_dirac(cfg: &SuiteConfig) -> Result<(DiracReport, Vec<NumericReport>)> {
    let ops = CliffordOps::for_n(cfg.n)?;
    let mut rng = cfg.rng();
    let f = random_band_limited(cfg.grid, cfg.n, ops.dim, 3, &mut rng);
    let rep = dirac_residual(&ops, &f, 0.5, &[0.1, 0.05, 0.025])?;
    let order = NumericReport {
        test: "dirac_order".into(),
        n: cfg.n,
        d: cfg.grid.d,
        points: cfg.grid.points,
        residual: rep.min_order,
        tolerance: MIN_DIRAC_ORDER,
        pass: rep.min_order >= MIN_DIRAC_ORDER,
    };
    let spectral = NumericReport::below("dirac_spectral", &cfg.grid, cfg.n, rep.spectral_residual, TOL_PIPELINE);
    Ok((rep, vec![order, spectral]))
}

/// The localized test field `H_3(x) e^{−|x|²} v` with `H_3(x) = 8x³ − 12x` in the first
/// coordinate and a fixed spinor direction `v`.
pub fn localized_field(grid: Grid, n: usize, dim: usize) -> Result<SpinorField> {
    let v: Vec<f64> = (0..dim).map(|c| 1.0 + c as f64 * 0.5).collect();
    SpinorField::from_fn(grid, n, dim, |x| {
        let r2: f64 = x.iter().map(|a| a * a).sum();
        let h3 = 8.0 * x[0].powi(3) - 12.0 * x[0];
        let s = h3 * (-r2).exp();
        v.iter().map(|c| c * s).collect()
    })
}

/// Kernel cross-check at `t = 0.5` for the configured grid.
pub fn suite_kernels(cfg: &SuiteConfig) -> Result<NumericReport> {
    let ops = CliffordOps::for_n(cfg.n)?;
    let f = localized_field(cfg.grid, cfg.n, ops.dim)?;
    let rep = convolution_crosscheck(&ops, &f, 0.5)?;
    Ok(NumericReport::below("kernels", &cfg.grid, cfg.n, rep.residual, TOL_PERIODIZATION))
}

/// Schwartz normalization at quadrature tolerance `1e−9`.
pub fn suite_schwartz(n: usize) -> Result<(super::quadrature::SchwartzReport, NumericReport)> {
    let rep = schwartz_normalization(n, 1e-9)?;
    let off = rep.off_axis.iter().copied().fold(0.0, f64::max);
    let report = NumericReport {
        test: "schwartz".into(),
        n,
        d: n - 1,
        points: 0,
        residual: rep.verification_residual,
        tolerance: TOL_QUADRATURE,
        pass: rep.verification_residual < TOL_QUADRATURE && off < TOL_OFF_AXIS,
    };
    Ok((rep, report))
}
