use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform periodic grid on `[−L/2, L/2)^d`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub d: usize,
    #[serde(rename = "N")]
    pub points: usize,
    #[serde(rename = "L")]
    pub length: f64,
}

impl Grid {
    pub fn new(d: usize, points: usize, length: f64) -> Result<Self> {
        if !(1..=3).contains(&d) {
            return Err(Error::InvalidArgument(format!("grid dimension d = {d} not in 1..=3")));
        }
        if points < 2 || !points.is_power_of_two() {
            return Err(Error::InvalidArgument(format!("N = {points} is not a power of two >= 2")));
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::InvalidArgument(format!("period L = {length} must be positive")));
        }
        Ok(Self {
            d,
            points,
            length,
        })
    }

    /// Total number of grid points, `N^d`.
    pub fn size(&self) -> usize {
        self.points.pow(self.d as u32)
    }

    pub fn spacing(&self) -> f64 {
        self.length / self.points as f64
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.d as i32)
    }

    /// Per-axis indices of a flat (row-major) index.
    pub fn multi_index(&self, flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.d];
        let mut rest = flat;
        for a in (0..self.d).rev() {
            idx[a] = rest % self.points;
            rest /= self.points;
        }
        idx
    }

    /// Physical coordinates of a grid point.
    pub fn coords(&self, flat: usize) -> Vec<f64> {
        let h = self.spacing();
        self.multi_index(flat)
            .into_iter()
            .map(|i| -self.length / 2.0 + h * i as f64)
            .collect()
    }

    /// Signed integer frequency index along one axis (FFT ordering).
    pub fn wave_index(&self, i: usize) -> i64 {
        if i < self.points / 2 {
            i as i64
        } else {
            i as i64 - self.points as i64
        }
    }

    /// Angular frequency vector `ξ = 2π k / L` of a flat spectral index.
    pub fn frequency(&self, flat: usize) -> Vec<f64> {
        let scale = 2.0 * std::f64::consts::PI / self.length;
        self.multi_index(flat)
            .into_iter()
            .map(|i| scale * self.wave_index(i) as f64)
            .collect()
    }

    /// Whether the axis index is the Nyquist bin `N/2`.
    pub fn is_nyquist(&self, i: usize) -> bool {
        i == self.points / 2
    }
}

/// Spinor-valued samples on a grid; `values[p · dim + c]` is coordinate `c` at point `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorField {
    pub grid: Grid,
    pub n: usize,
    pub dim: usize,
    pub values: Vec<f64>,
}

/// Sidecar metadata for CSV field files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldMeta {
    pub d: usize,
    #[serde(rename = "N")]
    pub points: usize,
    #[serde(rename = "L")]
    pub length: f64,
    pub n: usize,
}

impl SpinorField {
    pub fn zeros(grid: Grid, n: usize, dim: usize) -> Self {
        Self {
            grid,
            n,
            dim,
            values: vec![0.0; grid.size() * dim],
        }
    }

    pub fn from_fn(grid: Grid, n: usize, dim: usize, f: impl Fn(&[f64]) -> Vec<f64>) -> Result<Self> {
        let mut values = Vec::with_capacity(grid.size() * dim);
        for p in 0..grid.size() {
            let v = f(&grid.coords(p));
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: v.len(),
                });
            }
            values.extend(v);
        }
        Ok(Self {
            grid,
            n,
            dim,
            values,
        })
    }

    pub fn point(&self, p: usize) -> &[f64] {
        &self.values[p * self.dim..(p + 1) * self.dim]
    }

    /// Discrete L² norm, `(Σ |v|² h^d)^{1/2}`.
    pub fn norm(&self) -> f64 {
        (self.values.iter().map(|v| v * v).sum::<f64>() * self.grid.cell_volume()).sqrt()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid || self.dim != other.dim {
            return Err(Error::ShapeMismatch {
                op: "field arithmetic",
                lhs: (self.grid.size(), self.dim),
                rhs: (other.grid.size(), other.dim),
            });
        }
        Ok(())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    fn zip(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self {
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
            ..self.clone()
        })
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            values: self.values.iter().map(|v| v * s).collect(),
            ..self.clone()
        }
    }

    /// `‖self − reference‖ / ‖reference‖`, or the absolute norm when the reference vanishes.
    pub fn relative_distance(&self, reference: &Self) -> Result<f64> {
        let diff = self.sub(reference)?.norm();
        let base = reference.norm();
        Ok(if base > 0.0 { diff / base } else { diff })
    }

    /// Applies `op` to the spinor value at every point.
    pub fn map_points(&self, op: impl Fn(&[f64], &mut [f64])) -> Self {
        let mut out = vec![0.0; self.values.len()];
        for (src, dst) in self.values.chunks(self.dim).zip(out.chunks_mut(self.dim)) {
            op(src, dst);
        }
        Self {
            values: out,
            ..self.clone()
        }
    }

    pub fn meta(&self) -> FieldMeta {
        FieldMeta {
            d: self.grid.d,
            points: self.grid.points,
            length: self.grid.length,
            n: self.n,
        }
    }

    /// CSV with header `x1..xd, s0..s{dim−1}`, one row per grid point.
    pub fn write_csv(&self, w: impl Write) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let mut header: Vec<String> = (1..=self.grid.d).map(|a| format!("x{a}")).collect();
        header.extend((0..self.dim).map(|c| format!("s{c}")));
        out.write_record(&header).map_err(io_err)?;
        for p in 0..self.grid.size() {
            let row: Vec<String> = self
                .grid
                .coords(p)
                .iter()
                .chain(self.point(p))
                .map(|v| format!("{v:e}"))
                .collect();
            out.write_record(&row).map_err(io_err)?;
        }
        out.flush().map_err(|e| Error::Parse(e.to_string()))
    }

    /// Reads a field written by [`SpinorField::write_csv`] using its sidecar metadata.
    pub fn read_csv(meta: &FieldMeta, r: impl Read) -> Result<Self> {
        let grid = Grid::new(meta.d, meta.points, meta.length)?;
        let mut rdr = csv::Reader::from_reader(r);
        let width = rdr.headers().map_err(io_err)?.len();
        if width <= grid.d {
            return Err(Error::Parse("CSV has no spinor columns".into()));
        }
        let dim = width - grid.d;
        let mut values = Vec::with_capacity(grid.size() * dim);
        let mut rows = 0;
        for rec in rdr.records() {
            let rec = rec.map_err(io_err)?;
            for field in rec.iter().skip(grid.d) {
                values.push(
                    field
                        .trim()
                        .parse::<f64>()
                        .map_err(|e| Error::Parse(format!("{field:?}: {e}")))?,
                );
            }
            rows += 1;
        }
        if rows != grid.size() {
            return Err(Error::Parse(format!("expected {} rows, found {rows}", grid.size())));
        }
        Ok(Self {
            grid,
            n: meta.n,
            dim,
            values,
        })
    }
}

fn io_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}
