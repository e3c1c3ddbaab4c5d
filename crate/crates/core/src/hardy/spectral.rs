use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::grid::{Grid, SpinorField};
use crate::clifford::{CliffordRealization, Component};
use crate::error::{Error, Result};
use crate::linalg::SignedPerm;

/// Per-grid frequency data, indexed by flat spectral index.
#[derive(Debug)]
pub struct FrequencyTable {
    pub d: usize,
    /// `ξ` components, `xi[k * d + a]`.
    pub xi: Vec<f64>,
    /// `|ξ|`.
    pub abs: Vec<f64>,
    /// Whether axis `a` sits on its Nyquist bin, `nyquist[k * d + a]`.
    pub nyquist: Vec<bool>,
    /// Imaginary part of the Riesz symbol per axis, `riesz_im[a][k]`.
    pub riesz_im: Vec<Vec<f64>>,
    /// Flat index of `−k`.
    pub negated: Vec<usize>,
}

type TableKey = (usize, usize, u64);

/// Frequency table of a grid, computed once per grid and shared.
pub fn frequency_table(grid: &Grid) -> Arc<FrequencyTable> {
    static CACHE: OnceLock<Mutex<HashMap<TableKey, Arc<FrequencyTable>>>> = OnceLock::new();
    let key = (grid.d, grid.points, grid.length.to_bits());
    let mut cache = CACHE.get_or_init(Default::default).lock().expect("table cache");
    cache
        .entry(key)
        .or_insert_with(|| {
            let size = grid.size();
            let mut xi = Vec::with_capacity(size * grid.d);
            let mut abs = Vec::with_capacity(size);
            let mut nyquist = Vec::with_capacity(size * grid.d);
            for k in 0..size {
                let f = grid.frequency(k);
                abs.push(f.iter().map(|x| x * x).sum::<f64>().sqrt());
                xi.extend(f);
                nyquist.extend(grid.multi_index(k).into_iter().map(|i| grid.is_nyquist(i)));
            }
            let mut table = FrequencyTable {
                d: grid.d,
                xi,
                abs,
                nyquist,
                riesz_im: Vec::new(),
                negated: (0..size)
                    .map(|k| {
                        let n = grid.points;
                        grid.multi_index(k).iter().fold(0, |acc, &i| acc * n + (n - i) % n)
                    })
                    .collect(),
            };
            table.riesz_im = (1..=grid.d)
                .map(|j| (0..size).map(|k| table.riesz(j, k).im).collect())
                .collect();
            Arc::new(table)
        })
        .clone()
}

impl FrequencyTable {
    /// Riesz symbol `−iξ_j/|ξ|`, zero at `ξ = 0` and on the Nyquist bin of axis `j`.
    pub fn riesz(&self, j: usize, k: usize) -> Complex64 {
        let a = k * self.d + j - 1;
        if self.nyquist[a] || self.abs[k] == 0.0 {
            Complex64::default()
        } else {
            Complex64::new(0.0, -self.xi[a] / self.abs[k])
        }
    }

    /// Derivative symbol `iξ_j`, zero on the Nyquist bin of axis `j`.
    pub fn derivative(&self, j: usize, k: usize) -> Complex64 {
        let a = k * self.d + j - 1;
        if self.nyquist[a] {
            Complex64::default()
        } else {
            Complex64::new(0.0, self.xi[a])
        }
    }
}

/// Spectrum of a spinor field, `data[c][k]` for coordinate `c` and flat frequency `k`.
///
/// Convention: `f(x) = Σ_k f̂(k) e^{iξ_k·x}`, so `∂_j` is the multiplier `iξ_j`.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub grid: Grid,
    pub n: usize,
    pub data: Vec<Vec<Complex64>>,
}

fn plan(points: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    static PLANNER: OnceLock<Mutex<FftPlanner<f64>>> = OnceLock::new();
    let mut planner = PLANNER.get_or_init(|| Mutex::new(FftPlanner::new())).lock().expect("planner");
    if inverse {
        planner.plan_fft_inverse(points)
    } else {
        planner.plan_fft_forward(points)
    }
}

/// In-place d-dimensional FFT of a row-major buffer; the inverse is normalized.
fn fft_nd(grid: &Grid, buf: &mut [Complex64], inverse: bool) {
    let n = grid.points;
    let fft = plan(n, inverse);
    let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
    let mut lines = Vec::new();
    for axis in 0..grid.d {
        let stride = n.pow((grid.d - 1 - axis) as u32);
        if stride == 1 {
            fft.process_with_scratch(buf, &mut scratch);
            continue;
        }
        // each block is an n × stride matrix; gather a few columns at a time so the axis is contiguous
        let group = stride.min(32);
        lines.resize(group * n, Complex64::default());
        for chunk in buf.chunks_mut(stride * n) {
            for o0 in (0..stride).step_by(group) {
                for i in 0..n {
                    let row = &chunk[i * stride + o0..i * stride + o0 + group];
                    for (o, z) in row.iter().enumerate() {
                        lines[o * n + i] = *z;
                    }
                }
                fft.process_with_scratch(&mut lines, &mut scratch);
                for i in 0..n {
                    let row = &mut chunk[i * stride + o0..i * stride + o0 + group];
                    for (o, z) in row.iter_mut().enumerate() {
                        *z = lines[o * n + i];
                    }
                }
            }
        }
    }
    if inverse {
        let s = 1.0 / grid.size() as f64;
        buf.iter_mut().for_each(|z| *z *= s);
    }
}

impl Spectrum {
    /// Transforms two real coordinates per complex FFT: `z = a + ib` gives
    /// `â(k) = (ẑ(k) + conj ẑ(−k))/2` and `b̂(k) = (ẑ(k) − conj ẑ(−k))/2i`.
    pub fn forward(field: &SpinorField) -> Self {
        let grid = field.grid;
        let size = grid.size();
        let dim = field.dim;
        let negated = &frequency_table(&grid).negated;
        let mut data = Vec::with_capacity(dim);
        for c in (0..dim).step_by(2) {
            let pair = c + 1 < dim;
            let mut buf: Vec<Complex64> = (0..size)
                .map(|p| {
                    let im = if pair { field.values[p * dim + c + 1] } else { 0.0 };
                    Complex64::new(field.values[p * dim + c], im)
                })
                .collect();
            fft_nd(&grid, &mut buf, false);
            if !pair {
                data.push(buf);
                continue;
            }
            let (mut a, mut b) = (Vec::with_capacity(size), Vec::with_capacity(size));
            for (k, z) in buf.iter().enumerate() {
                let w = buf[negated[k]].conj();
                a.push((z + w) * 0.5);
                let diff = (z - w) * 0.5;
                b.push(Complex64::new(diff.im, -diff.re));
            }
            data.push(a);
            data.push(b);
        }
        Self { grid, n: field.n, data }
    }

    fn zeros_like(&self) -> Self {
        Self {
            grid: self.grid,
            n: self.n,
            data: vec![vec![Complex64::default(); self.grid.size()]; self.dim()],
        }
    }

    /// Inverse transform one coordinate at a time, returning the real part and the
    /// relative size of the discarded imaginary part.
    pub fn inverse_with_residue(&self) -> (SpinorField, f64) {
        let dim = self.data.len();
        let mut field = SpinorField::zeros(self.grid, self.n, dim);
        let (mut max_re, mut max_im) = (0.0f64, 0.0f64);
        let mut buf = Vec::new();
        for (c, coeffs) in self.data.iter().enumerate() {
            buf.clone_from(coeffs);
            fft_nd(&self.grid, &mut buf, true);
            for (p, z) in buf.iter().enumerate() {
                field.values[p * dim + c] = z.re;
                max_re = max_re.max(z.re.abs());
                max_im = max_im.max(z.im.abs());
            }
        }
        let residue = if max_re > 0.0 { max_im / max_re } else { max_im };
        (field, residue)
    }

    /// Real part of the inverse transform. The Hermitian parts of two coordinates are
    /// packed into one complex FFT, whose real and imaginary outputs are the two real parts.
    pub fn inverse(&self) -> SpinorField {
        let dim = self.data.len();
        let size = self.grid.size();
        let negated = &frequency_table(&self.grid).negated;
        let mut field = SpinorField::zeros(self.grid, self.n, dim);
        let mut buf = vec![Complex64::default(); size];
        for c in (0..dim).step_by(2) {
            let a = &self.data[c];
            let zero = Vec::new();
            let b = self.data.get(c + 1).unwrap_or(&zero);
            for (k, slot) in buf.iter_mut().enumerate() {
                let m = negated[k];
                let ha = (a[k] + a[m].conj()) * 0.5;
                let hb = if b.is_empty() {
                    Complex64::default()
                } else {
                    (b[k] + b[m].conj()) * 0.5
                };
                *slot = ha + Complex64::new(-hb.im, hb.re);
            }
            fft_nd(&self.grid, &mut buf, true);
            for (p, z) in buf.iter().enumerate() {
                field.values[p * dim + c] = z.re;
                if c + 1 < dim {
                    field.values[p * dim + c + 1] = z.im;
                }
            }
        }
        field
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    /// Multiplies every coordinate in place by a real symbol.
    fn scale_by(&mut self, m: &[f64]) {
        for coeffs in self.data.iter_mut() {
            coeffs.iter_mut().zip(m).for_each(|(a, s)| *a *= s);
        }
    }

    /// Multiplies every coordinate by a scalar symbol `m(k)`.
    pub fn scalar_multiplier(&self, m: impl Fn(usize) -> Complex64) -> Self {
        let symbols: Vec<Complex64> = (0..self.grid.size()).map(m).collect();
        Self {
            data: self
                .data
                .iter()
                .map(|coeffs| coeffs.iter().zip(&symbols).map(|(a, s)| a * s).collect())
                .collect(),
            ..self.clone()
        }
    }

    /// Applies a real signed permutation to the spinor index at every frequency.
    pub fn apply_perm(&self, g: &SignedPerm) -> Self {
        let mut out = self.zeros_like();
        self.accumulate_perm(g, None, 1.0, &mut out);
        out
    }

    /// `out += sign · g (m(ξ) · self)`, with `m = i·symbols` purely imaginary (or 1 when absent).
    fn accumulate_perm(&self, g: &SignedPerm, symbols: Option<&[f64]>, sign: f64, out: &mut Self) {
        for (c, coeffs) in self.data.iter().enumerate() {
            let s = sign * f64::from(g.signs()[c]);
            let target = &mut out.data[g.perm()[c]];
            match symbols {
                Some(m) => {
                    for ((t, a), mk) in target.iter_mut().zip(coeffs).zip(m) {
                        let f = mk * s;
                        t.re -= a.im * f;
                        t.im += a.re * f;
                    }
                }
                None => {
                    for (t, a) in target.iter_mut().zip(coeffs) {
                        *t += a * s;
                    }
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            data: self
                .data
                .iter()
                .map(|coeffs| coeffs.iter().map(|z| z * s).collect())
                .collect(),
            ..self.clone()
        }
    }
}

/// `|ξ|` at a flat frequency index.
pub fn abs_frequency(grid: &Grid, k: usize) -> f64 {
    frequency_table(grid).abs[k]
}

/// Riesz symbol `−iξ_j/|ξ|`, set to zero at `ξ = 0` and where axis `j` sits on its Nyquist bin.
pub fn riesz_symbol(grid: &Grid, j: usize, k: usize) -> Complex64 {
    frequency_table(grid).riesz(j, k)
}

fn check_axis(grid: &Grid, j: usize) -> Result<()> {
    if j == 0 || j > grid.d {
        return Err(Error::IndexOutOfRange { index: j, max: grid.d });
    }
    Ok(())
}

/// Riesz transform `R_j` along boundary axis `j ∈ 1..=d`, applied to every spinor coordinate.
pub fn riesz(field: &SpinorField, j: usize) -> Result<SpinorField> {
    check_axis(&field.grid, j)?;
    let table = frequency_table(&field.grid);
    Ok(Spectrum::forward(field)
        .scalar_multiplier(|k| table.riesz(j, k))
        .inverse())
}

/// Spectral partial derivative `∂_j` (multiplier `iξ_j`).
pub fn spectral_derivative(s: &Spectrum, j: usize) -> Result<Spectrum> {
    check_axis(&s.grid, j)?;
    let table = frequency_table(&s.grid);
    Ok(s.scalar_multiplier(|k| table.derivative(j, k)))
}

/// Generators of one spinor component as signed permutations, for pointwise and spectral use.
#[derive(Clone, Debug)]
pub struct CliffordOps {
    pub n: usize,
    pub dim: usize,
    pub generators: Vec<SignedPerm>,
}

impl CliffordOps {
    pub fn from_component(n: usize, c: &Component) -> Result<Self> {
        let generators = c
            .generators
            .iter()
            .map(|g| {
                g.clone()
                    .specialize()
                    .as_signed_perm()
                    .cloned()
                    .ok_or_else(|| Error::InvalidArgument("generator is not a signed permutation".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let dim = generators.first().map_or(1, SignedPerm::size);
        Ok(Self { n, dim, generators })
    }

    /// Operators on the primary component of `build(n)`.
    pub fn for_n(n: usize) -> Result<Self> {
        let r = CliffordRealization::build(n)?;
        Self::from_component(n, r.primary())
    }

    fn check_field(&self, f: &SpinorField) -> Result<()> {
        if f.dim != self.dim || f.grid.d + 1 != self.n {
            return Err(Error::ShapeMismatch {
                op: "clifford field operator",
                lhs: (self.n, self.dim),
                rhs: (f.grid.d + 1, f.dim),
            });
        }
        Ok(())
    }

    /// Pointwise `e_j f`.
    pub fn apply_generator(&self, j: usize, f: &SpinorField) -> Result<SpinorField> {
        let g = self
            .generators
            .get(j)
            .ok_or(Error::IndexOutOfRange { index: j, max: self.n - 1 })?;
        if f.dim != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: f.dim });
        }
        Ok(f.map_points(|src, dst| g.apply_f64(src, dst)))
    }

    /// `ℋ̂ = Σ_j e_j · (−iξ_j/|ξ|)` applied to a spectrum.
    pub fn hilbert_spectrum(&self, s: &Spectrum) -> Spectrum {
        let table = frequency_table(&s.grid);
        let mut out = s.zeros_like();
        for j in 1..=s.grid.d {
            s.accumulate_perm(&self.generators[j], Some(&table.riesz_im[j - 1]), 1.0, &mut out);
        }
        out
    }

    /// `½(Id + sign · e_0 ℋ)` on a spectrum.
    pub fn projection_spectrum(&self, s: &Spectrum, sign: f64) -> Spectrum {
        let h = self.hilbert_spectrum(s);
        let mut out = s.clone();
        h.accumulate_perm(&self.generators[0], None, sign, &mut out);
        for coeffs in out.data.iter_mut() {
            coeffs.iter_mut().for_each(|z| *z *= 0.5);
        }
        out
    }

    /// Clifford–Riesz–Hilbert transform `ℋ f = Σ_{j=1}^{n−1} e_j R_j f`.
    pub fn hilbert(&self, f: &SpinorField) -> Result<SpinorField> {
        self.check_field(f)?;
        Ok(self.hilbert_spectrum(&Spectrum::forward(f)).inverse())
    }

    /// Hardy projection `½(Id + e_0 ℋ)`.
    pub fn hardy_projection(&self, f: &SpinorField) -> Result<SpinorField> {
        self.check_field(f)?;
        Ok(self.projection_spectrum(&Spectrum::forward(f), 1.0).inverse())
    }

    /// Complementary projection `½(Id − e_0 ℋ)`.
    pub fn complementary_projection(&self, f: &SpinorField) -> Result<SpinorField> {
        self.check_field(f)?;
        Ok(self.projection_spectrum(&Spectrum::forward(f), -1.0).inverse())
    }

    /// Cauchy extension at height `t`: `e^{−t|ξ|} · ½(Id + e_0 ℋ)`.
    pub fn cauchy_extension(&self, f: &SpinorField, t: f64) -> Result<SpinorField> {
        Ok(self.cauchy_spectrum(f, t)?.inverse())
    }

    pub fn cauchy_spectrum(&self, f: &SpinorField, t: f64) -> Result<Spectrum> {
        check_height(t)?;
        self.check_field(f)?;
        let damping: Vec<f64> = frequency_table(&f.grid).abs.iter().map(|a| (-t * a).exp()).collect();
        let mut s = self.projection_spectrum(&Spectrum::forward(f), 1.0);
        s.scale_by(&damping);
        Ok(s)
    }

    /// Boundary value of a Cauchy extension sampled at height `t`: undoes the `e^{−t|ξ|}` damping.
    pub fn boundary_from_extension(&self, big_f: &SpinorField, t: f64) -> Result<SpinorField> {
        check_height(t)?;
        self.check_field(big_f)?;
        let growth: Vec<f64> = frequency_table(&big_f.grid).abs.iter().map(|a| (t * a).exp()).collect();
        let mut s = Spectrum::forward(big_f);
        s.scale_by(&growth);
        Ok(s.inverse())
    }
}

pub(crate) fn check_height(t: f64) -> Result<()> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidArgument(format!("height t = {t} must be positive")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(n: usize, len: f64) -> Grid {
        Grid::new(1, n, len).unwrap()
    }

    #[test]
    fn fft_round_trip_2d() {
        let g = Grid::new(2, 8, 3.0).unwrap();
        let f = SpinorField::from_fn(g, 3, 2, |x| vec![x[0] * x[1], (x[0] - x[1]).cos()]).unwrap();
        let (back, residue) = Spectrum::forward(&f).inverse_with_residue();
        assert!(back.relative_distance(&f).unwrap() < 1e-14);
        assert!(residue < 1e-14);
    }

    #[test]
    fn hilbert_of_cosine_is_sine() {
        let g = line(64, 2.0 * std::f64::consts::PI);
        let f = SpinorField::from_fn(g, 2, 1, |x| vec![x[0].cos()]).unwrap();
        let s = SpinorField::from_fn(g, 2, 1, |x| vec![x[0].sin()]).unwrap();
        assert!(riesz(&f, 1).unwrap().relative_distance(&s).unwrap() < 1e-13);
    }

    #[test]
    fn constants_are_annihilated() {
        let g = Grid::new(2, 16, 5.0).unwrap();
        let ops = CliffordOps::for_n(3).unwrap();
        let c = SpinorField::from_fn(g, 3, 4, |_| vec![1.0, -2.0, 0.5, 3.0]).unwrap();
        assert!(riesz(&c, 2).unwrap().norm() < 1e-13);
        assert!(ops.hilbert(&c).unwrap().norm() < 1e-13);
        let half = c.scale(0.5);
        assert!(ops.hardy_projection(&c).unwrap().relative_distance(&half).unwrap() < 1e-14);
        assert!(ops.cauchy_extension(&c, 0.7).unwrap().relative_distance(&half).unwrap() < 1e-14);
        assert!(riesz(&c, 3).is_err());
        assert!(ops.cauchy_extension(&c, 0.0).is_err());
    }

    #[test]
    fn n2_hilbert_is_e1_times_classical() {
        let g = line(32, 7.0);
        let ops = CliffordOps::for_n(2).unwrap();
        let f = SpinorField::from_fn(g, 2, 4, |x| {
            vec![(2.0 * x[0]).sin(), x[0].cos(), 0.0, (-x[0] * x[0]).exp()]
        })
        .unwrap();
        let h = riesz(&f, 1).unwrap();
        let expect = ops.apply_generator(1, &h).unwrap();
        assert!(ops.hilbert(&f).unwrap().relative_distance(&expect).unwrap() < 1e-14);
    }

    #[test]
    fn single_mode_cauchy_extension() {
        let len = 2.0 * std::f64::consts::PI;
        let g = line(32, len);
        let ops = CliffordOps::for_n(2).unwrap();
        let t = 0.3;
        let f = SpinorField::from_fn(g, 2, 4, |x| vec![(3.0 * x[0]).cos(), 0.0, 0.0, 0.0]).unwrap();
        let big = ops.cauchy_extension(&f, t).unwrap();
        let expect = ops.hardy_projection(&f).unwrap().scale((-3.0 * t).exp());
        assert!(big.relative_distance(&expect).unwrap() < 1e-14);
    }

    #[test]
    fn generators_are_isometries() {
        let g = Grid::new(2, 8, 2.0).unwrap();
        let ops = CliffordOps::for_n(3).unwrap();
        let f = SpinorField::from_fn(g, 3, 4, |x| vec![x[0], x[1], 1.0, -x[0] * x[1]]).unwrap();
        for j in 0..3 {
            let gf = ops.apply_generator(j, &f).unwrap();
            assert!((gf.norm() - f.norm()).abs() < 1e-14 * f.norm());
        }
    }
}
