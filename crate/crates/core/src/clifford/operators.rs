//! Matrices of the octonionic building blocks `R_p`, `L_q`, `M_p`, `E`,
//! `A_p^s` and `E_k` in the canonical coordinate bases.

use num_traits::Zero;

use crate::division::Hypercomplex;
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;

fn mult_matrix(p: &Hypercomplex, left: bool) -> Result<ExactMatrix> {
    let d = p.dim();
    let mut entries = Vec::new();
    for c in 0..d {
        let ec = Hypercomplex::basis(d, c)?;
        let col = if left { p.mul(&ec)? } else { ec.mul(p)? };
        entries.extend(
            col.coords()
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(r, v)| (r, c, v.clone())),
        );
    }
    Ok(ExactMatrix::from_entries(d, d, entries)?.specialize())
}

/// Matrix of `q ↦ q p` on ℍ or 𝕆.
pub fn right_mult_matrix(p: &Hypercomplex) -> Result<ExactMatrix> {
    match p.dim() {
        4 | 8 => mult_matrix(p, false),
        d => Err(Error::UnsupportedHypercomplexDim(d, "right multiplication")),
    }
}

/// Matrix of `x ↦ q x` on ℂ or ℍ.
pub fn left_mult_matrix(q: &Hypercomplex) -> Result<ExactMatrix> {
    match q.dim() {
        2 | 4 => mult_matrix(q, true),
        d => Err(Error::UnsupportedHypercomplexDim(d, "left multiplication")),
    }
}

/// `M_p = [[0, R_p], [−R_p̄, 0]]` acting on `A²` for `A = ℍ` or `𝕆`.
pub fn m_op(p: &Hypercomplex) -> Result<ExactMatrix> {
    let d = p.dim();
    let rp = right_mult_matrix(p)?;
    let rpbar = right_mult_matrix(&p.conj())?;
    let z = ExactMatrix::zeros(d, d);
    ExactMatrix::block2(&z, &rp, &rpbar.neg(), &z)
}

/// `diag(Id, −Id)` of size `2·half`.
pub fn grading(half: usize) -> ExactMatrix {
    let id = ExactMatrix::identity(half);
    let z = ExactMatrix::zeros(half, half);
    ExactMatrix::block2(&id, &z, &z, &id.neg()).expect("square blocks")
}

/// `E = diag(Id₈, −Id₈)` on 𝕆².
pub fn e_op() -> ExactMatrix {
    grading(8)
}

/// `E_k = E ⊗ ⋯ ⊗ E` (k factors); `E_0 = 1`.
pub fn e_k(k: usize) -> Result<ExactMatrix> {
    let e = e_op();
    ExactMatrix::kron_all(std::iter::repeat_n(&e, k))
}

/// `A_p^s = Id ⊗ ⋯ ⊗ Id ⊗ M_p ⊗ E ⊗ ⋯ ⊗ E`, with `M_p` in slot `s` of `k`.
pub fn a_op(s: usize, k: usize, p: &Hypercomplex) -> Result<ExactMatrix> {
    if s == 0 || s > k {
        return Err(Error::IndexOutOfRange { index: s, max: k });
    }
    if p.dim() != 8 {
        return Err(Error::UnsupportedHypercomplexDim(p.dim(), "A_p^s"));
    }
    let id = ExactMatrix::identity(16usize.pow((s - 1) as u32));
    id.kron(&m_op(p)?)?.kron(&e_k(k - s)?)
}
