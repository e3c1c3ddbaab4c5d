use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::ExactMatrix;
use super::subspace::Subspace;
use crate::error::{Error, Result};
use crate::Rational;

/// Renders a rational as `"num/den"`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"num/den"` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| bad());
    match s.split_once('/') {
        Some((n, d)) => {
            let d = int(d)?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Rational::new(int(n)?, d))
        }
        None => Ok(Rational::from_integer(int(s)?)),
    }
}

/// Wire form of a matrix: nonzero entries sorted by `(row, col)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, String)>,
}

impl From<&ExactMatrix> for MatrixJson {
    fn from(m: &ExactMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: m
                .nonzero_entries()
                .into_iter()
                .map(|(i, j, v)| (i, j, format_rational(&v)))
                .collect(),
        }
    }
}

impl TryFrom<MatrixJson> for ExactMatrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        let entries = j
            .entries
            .iter()
            .map(|(r, c, v)| Ok((*r, *c, parse_rational(v)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix::from_entries(j.rows, j.cols, entries)?.specialize())
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MatrixJson::deserialize(d)?;
        ExactMatrix::try_from(j).map_err(serde::de::Error::custom)
    }
}

/// Wire form of a subspace: ambient dimension plus the RREF basis matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub ambient_dim: usize,
    pub matrix: MatrixJson,
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SubspaceJson {
            ambient_dim: self.ambient_dim(),
            matrix: MatrixJson::from(&self.basis_matrix()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SubspaceJson::deserialize(d)?;
        let m = ExactMatrix::try_from(j.matrix).map_err(serde::de::Error::custom)?;
        if m.cols() != j.ambient_dim && m.rows() != 0 {
            return Err(serde::de::Error::custom("matrix width differs from ambient_dim"));
        }
        Subspace::span(j.ambient_dim, &m.to_rows()).map_err(serde::de::Error::custom)
    }
}
