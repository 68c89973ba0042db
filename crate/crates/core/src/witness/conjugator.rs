use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Mat;
use crate::normal_forms::frobenius_form;
use crate::poly::Poly;

use super::lemperm::solve_shape;

/// Cap on centralizer candidates tried per block.
const SEARCH_CAP: u64 = 1 << 20;
/// Coefficient range for the centralizer search over `Q`.
const Q_COEFF: i64 = 3;

/// Returns `g` with `g⁻¹ M g = N`, in `SL_n` when `require_sl` is set.
///
/// The base solution is `P_M P_N⁻¹` from the two Frobenius transforms. To reach
/// determinant 1 it is corrected by an element `Z` of the centralizer of the common
/// Frobenius form, giving `P_M Z P_N⁻¹`. Tried in order: the lemma-shape moves (when
/// both matrices have that shape), scaling a 1×1 block, then `f([P_i])` for small
/// polynomials `f` on each block.
pub fn solve_conjugator(m: &Mat, n: &Mat, require_sl: bool) -> Result<Mat> {
    if m.field() != n.field() {
        return Err(Error::FieldMismatch(m.field(), n.field()));
    }
    if m.n() != n.n() {
        return Err(Error::DimensionMismatch(m.n(), n.n()));
    }
    if require_sl {
        if let Some(e) = solve_shape(m, n)? {
            return Ok(e);
        }
    }
    let fm = frobenius_form(m)?;
    let fnn = frobenius_form(n)?;
    if fm.invariant_factors != fnn.invariant_factors {
        return Err(Error::NotSimilar);
    }
    let pn_inv = fnn.transform.inv()?;
    let check = |g: &Mat| -> Result<()> {
        if &m.conj(g)? != n {
            return Err(Error::VerificationFailed("conjugator".into()));
        }
        Ok(())
    };
    let g = &fm.transform * &pn_inv;
    check(&g)?;
    let det = g.det();
    if !require_sl || det.is_one() {
        return Ok(g);
    }
    let want = det.inv()?;
    let z = centralizer_with_det(&fm.invariant_factors, &want)?;
    let g2 = &(&fm.transform * &z) * &pn_inv;
    check(&g2)?;
    if !g2.det().is_one() {
        return Err(Error::VerificationFailed("SL adjustment".into()));
    }
    Ok(g2)
}

/// An element of the centralizer of `[P_1] ⊕ … ⊕ [P_r]` with the given determinant,
/// acting as `f([P_i])` on one block and as the identity elsewhere.
fn centralizer_with_det(factors: &[Poly], want: &Scalar) -> Result<Mat> {
    let field = want.field();
    let n: usize = factors.iter().map(|p| p.deg()).sum();
    let mut offset = 0;
    let mut found: Option<(usize, Mat)> = None;
    if let Some(pos) = factors.iter().position(|p| p.deg() == 1) {
        let off: usize = factors[..pos].iter().map(|p| p.deg()).sum();
        found = Some((off, Mat::scalar(want, 1)));
    } else {
        for p in factors {
            if let Some(block) = search_block(p, want)? {
                found = Some((offset, block));
                break;
            }
            offset += p.deg();
        }
    }
    let (off, block) = found.ok_or_else(|| {
        Error::SynthesisFailed(format!("no centralizer element of determinant {want} found"))
    })?;
    let mut z = Mat::identity(field, n);
    for i in 0..block.n() {
        for j in 0..block.n() {
            z.set(off + i, off + j, block.get(i, j).clone());
        }
    }
    Ok(z)
}

fn coefficient_range(field: FieldSpec) -> Vec<Scalar> {
    match field {
        FieldSpec::Prime(_) => field.elements().expect("finite").collect(),
        FieldSpec::Rationals => {
            let mut v = vec![field.zero()];
            for k in 1..=Q_COEFF {
                v.push(field.from_i64(k));
                v.push(field.from_i64(-k));
            }
            v
        }
    }
}

/// Enumerates `f` with `deg f < deg P` in a fixed order and returns the first `f([P])`
/// of determinant `want`.
fn search_block(p: &Poly, want: &Scalar) -> Result<Option<Mat>> {
    let field = p.field();
    let c = Mat::companion(p)?;
    let t = p.deg();
    let range = coefficient_range(field);
    let base = range.len() as u64;
    let total = base.checked_pow(t as u32).unwrap_or(u64::MAX).min(SEARCH_CAP);
    let powers: Vec<Mat> = (0..t).map(|k| c.pow(k as i64)).collect::<Result<_>>()?;
    for idx in 1..total {
        let mut k = idx;
        let mut acc = Mat::zero(field, t);
        for pw in &powers {
            let coef = &range[(k % base) as usize];
            k /= base;
            if !coef.is_zero() {
                acc = &acc + &pw.scale(coef);
            }
        }
        if &acc.det() == want {
            return Ok(Some(acc));
        }
    }
    Ok(None)
}
