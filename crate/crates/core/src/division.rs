//! ℝ, ℂ, ℍ and 𝕆 over exact rationals, built by Cayley–Dickson doubling.
//!
//! An element of dimension `2d` is the pair `(a, b)` of elements of dimension
//! `d`, multiplied by
//!
//! ```text
//! (a, b)(c, d) = (ac − d̄b, da + bc̄)
//! ```
//!
//! With this convention the first two coordinates are ℂ, the first four are
//! ℍ with `e1 e2 = e3` (i j = k), and all eight form the octonions.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Rational;

/// An element of ℝ, ℂ, ℍ or 𝕆 with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypercomplex {
    coords: Vec<Rational>,
}

fn check_dim(dim: usize) -> Result<()> {
    match dim {
        1 | 2 | 4 | 8 => Ok(()),
        _ => Err(Error::UnsupportedHypercomplexDim(dim, "Cayley-Dickson algebra")),
    }
}

impl Hypercomplex {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        check_dim(coords.len())?;
        Ok(Self { coords })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            coords: vec![Rational::zero(); dim],
        })
    }

    pub fn one(dim: usize) -> Result<Self> {
        Self::basis(dim, 0)
    }

    /// The canonical basis unit `e_index` (with `e_0 = 1`).
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        let mut x = Self::zero(dim)?;
        if index >= dim {
            return Err(Error::IndexOutOfRange {
                index,
                max: dim - 1,
            });
        }
        x.coords[index] = Rational::one();
        Ok(x)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn re(&self) -> Rational {
        self.coords[0].clone()
    }

    pub fn conj(&self) -> Self {
        let mut coords: Vec<Rational> = self.coords.iter().map(|c| -c).collect();
        coords[0] = self.coords[0].clone();
        Self { coords }
    }

    /// Σ coords², i.e. x·x̄ read as a scalar.
    pub fn norm_sq(&self) -> Rational {
        self.coords.iter().map(|c| c * c).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    /// Cayley–Dickson product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(Self {
            coords: cd_mul(&self.coords, &other.coords),
        })
    }

    /// `(a, b) = Re(a b̄)`.
    pub fn inner(&self, other: &Self) -> Result<Rational> {
        Ok(self.mul(&other.conj())?.re())
    }

    /// `[a, b, c] = (ab)c − a(bc)`.
    pub fn associator(&self, b: &Self, c: &Self) -> Result<Self> {
        let left = self.mul(b)?.mul(c)?;
        let right = self.mul(&b.mul(c)?)?;
        Ok(&left - &right)
    }

    /// If this element is `±e_k`, returns `(k, sign)`.
    pub fn as_signed_unit(&self) -> Option<(usize, i8)> {
        let mut found = None;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if found.is_some() || c.abs() != Rational::one() {
                return None;
            }
            found = Some((k, if c.is_positive() { 1 } else { -1 }));
        }
        found
    }
}

fn conj_slice(a: &[Rational]) -> Vec<Rational> {
    let mut out: Vec<Rational> = a.iter().map(|c| -c).collect();
    out[0] = a[0].clone();
    out
}

fn add_slices(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_slices(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn cd_mul(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    if x.len() == 1 {
        return vec![&x[0] * &y[0]];
    }
    let h = x.len() / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let first = sub_slices(&cd_mul(a, c), &cd_mul(&conj_slice(d), b));
    let second = add_slices(&cd_mul(d, a), &cd_mul(b, &conj_slice(c)));
    let mut out = first;
    out.extend(second);
    out
}

impl Add for &Hypercomplex {
    type Output = Hypercomplex;
    fn add(self, rhs: Self) -> Hypercomplex {
        assert_eq!(self.dim(), rhs.dim(), "hypercomplex dimension mismatch");
        Hypercomplex {
            coords: add_slices(&self.coords, &rhs.coords),
        }
    }
}

impl Sub for &Hypercomplex {
    type Output = Hypercomplex;
    fn sub(self, rhs: Self) -> Hypercomplex {
        assert_eq!(self.dim(), rhs.dim(), "hypercomplex dimension mismatch");
        Hypercomplex {
            coords: sub_slices(&self.coords, &rhs.coords),
        }
    }
}

impl Neg for &Hypercomplex {
    type Output = Hypercomplex;
    fn neg(self) -> Hypercomplex {
        Hypercomplex {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Hypercomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}·e{i}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// One entry `e_i e_j = sign · e_k` of a basis multiplication table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub sign: i8,
}

/// Full basis multiplication table of the algebra of dimension `dim`, row-major in `(i, j)`.
pub fn multiplication_table(dim: usize) -> Result<Vec<TableEntry>> {
    check_dim(dim)?;
    let mut table = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        let ei = Hypercomplex::basis(dim, i)?;
        for j in 0..dim {
            let prod = ei.mul(&Hypercomplex::basis(dim, j)?)?;
            let (k, sign) = prod
                .as_signed_unit()
                .expect("basis products are signed basis units");
            table.push(TableEntry { i, j, k, sign });
        }
    }
    Ok(table)
}
