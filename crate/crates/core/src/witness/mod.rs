//! Verified decompositions `t_12(1) = ∏ (σ^{i_k})^{ε_k}` with every `ε_k ∈ SL_n(K)`.
//!
//! Each construction works on a convenient model `σ^g` and then pulls its factors
//! back to `σ`. The last step of every construction is an exact check; nothing
//! unverified leaves this module.

mod conjugator;
mod four;
mod lemperm;
mod n3;
mod root;

pub use conjugator::solve_conjugator;
pub use four::witness_four;
pub use lemperm::{lemperm_move, shape_of, LemShape, Move};
pub use n3::{witness_cube_n3, witness_square_n3};
pub use root::witness_root;

use crate::classify::{classify, describe_class, Sign, Verdict};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{as_transvection, d, t, transvection_normalizer, Mat};
use crate::normal_forms::{frobenius_form, krylov, verify_transform};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub sigma: Mat,
    pub factors: Vec<(Sign, Mat)>,
    /// Classifier case tag, when produced through [`witness`].
    pub case: String,
    /// Which construction produced the factors.
    pub construction: String,
}

impl Witness {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn signs(&self) -> Vec<Sign> {
        self.factors.iter().map(|(s, _)| *s).collect()
    }
}

/// `∏ (σ^{s_k})^{h_k}` in order.
pub fn evaluate(sigma: &Mat, factors: &[(Sign, Mat)]) -> Result<Mat> {
    let inv = sigma.inv()?;
    let mut acc = Mat::identity(sigma.field(), sigma.n());
    for (s, h) in factors {
        let base = match s {
            1 => sigma,
            -1 => &inv,
            _ => return Err(Error::PreconditionViolated(format!("bad sign {s}"))),
        };
        acc = acc.try_mul(&base.conj(h)?)?;
    }
    Ok(acc)
}

/// True iff every conjugator has determinant 1 and the product is exactly `t_12(1)`.
pub fn verify_witness(w: &Witness) -> bool {
    let n = w.sigma.n();
    if n < 2 || w.factors.is_empty() {
        return false;
    }
    for (s, h) in &w.factors {
        if h.n() != n || h.field() != w.sigma.field() || !h.det().is_one() || (*s != 1 && *s != -1) {
            return false;
        }
    }
    let target = t(n, 1, 2, &w.sigma.field().one()).expect("n >= 2");
    matches!(evaluate(&w.sigma, &w.factors), Ok(p) if p == target)
}

/// Moves factors written for `τ = σ^g` onto `σ` with conjugators in `SL_n`.
///
/// The conjugators become `g h_k`. When these all share a determinant `δ`, each is
/// right-multiplied by `d_n(δ)⁻¹`; this conjugates the whole product by `d_n(δ)⁻¹`,
/// which fixes `t_12(1)` for `n >= 3`.
pub fn to_e_conjugators(sigma: &Mat, g: &Mat, factors: &[(Sign, Mat)]) -> Result<Vec<(Sign, Mat)>> {
    let n = sigma.n();
    let lifted: Vec<(Sign, Mat)> = factors
        .iter()
        .map(|(s, h)| Ok((*s, g.try_mul(h)?)))
        .collect::<Result<_>>()?;
    let Some((_, h0)) = lifted.first() else {
        return Ok(lifted);
    };
    let delta = h0.det();
    if lifted.iter().any(|(_, h)| h.det() != delta) {
        return Err(Error::VerificationFailed(
            "conjugators do not share a determinant".into(),
        ));
    }
    if delta.is_one() {
        return Ok(lifted);
    }
    let fix = d(n, n, &delta.inv()?)?;
    Ok(lifted.into_iter().map(|(s, h)| (s, &h * &fix)).collect())
}

/// Completes a construction on the model `σ^g` whose factors multiply to some
/// nontrivial transvection `t_kl(c)`: normalizes it to `t_12(1)`, pulls back, verifies.
pub(crate) fn finish(
    sigma: &Mat,
    g: &Mat,
    model_factors: Vec<(Sign, Mat)>,
    construction: &str,
) -> Result<Witness> {
    let model = sigma.conj(g)?;
    let prod = evaluate(&model, &model_factors)?;
    let (k, l, c) = as_transvection(&prod).ok_or_else(|| {
        Error::VerificationFailed(format!("{construction}: product is not a transvection"))
    })?;
    let nu = transvection_normalizer(sigma.field(), k, l, &c, sigma.n())?;
    let normalized: Vec<(Sign, Mat)> = model_factors
        .into_iter()
        .map(|(s, h)| (s, &h * &nu))
        .collect();
    let factors = to_e_conjugators(sigma, g, &normalized)?;
    let w = Witness {
        sigma: sigma.clone(),
        factors,
        case: String::new(),
        construction: construction.into(),
    };
    if !verify_witness(&w) {
        return Err(Error::VerificationFailed(construction.into()));
    }
    Ok(w)
}

/// Frobenius blocks of `σ` arranged in a chosen order.
pub(crate) struct Arranged {
    pub factors: Vec<Poly>,
    /// `σ^g` is the direct sum of the companion matrices of `factors`.
    pub g: Mat,
}

/// Rearranges the Frobenius blocks of `σ`; `order` lists invariant-factor indices.
pub(crate) fn arrange_frobenius(sigma: &Mat, order: impl Fn(&[Poly]) -> Vec<usize>) -> Result<Arranged> {
    let fd = frobenius_form(sigma)?;
    let mut groups = Vec::new();
    let mut col = 0;
    for p in &fd.invariant_factors {
        let cols: Vec<Vec<Scalar>> = (col..col + p.deg()).map(|j| fd.transform.column(j)).collect();
        groups.push(cols);
        col += p.deg();
    }
    let idx = order(&fd.invariant_factors);
    let factors: Vec<Poly> = idx.iter().map(|&i| fd.invariant_factors[i].clone()).collect();
    let cols: Vec<Vec<Scalar>> = idx.iter().flat_map(|&i| groups[i].clone()).collect();
    let g = Mat::from_columns(sigma.field(), &cols);
    let blocks = factors.iter().map(Mat::companion).collect::<Result<Vec<_>>>()?;
    let model = Mat::block_diag(&blocks)?;
    verify_transform(sigma, &g, &model, "arranged Frobenius")?;
    Ok(Arranged { factors, g })
}

/// Length-1 witness for a member of the transvection class.
pub fn witness_m1(sigma: &Mat) -> Result<Witness> {
    let cd = describe_class(sigma)?;
    if !cd.is_transvection_class {
        return Err(Error::NotInT);
    }
    let n = sigma.n();
    let target = t(n, 1, 2, &sigma.field().one())?;
    let g = solve_conjugator(sigma, &target, false)?;
    finish(sigma, &g, vec![(1, Mat::identity(sigma.field(), n))], "transvection")
}

/// Runs the construction matching the classifier verdict and checks the length
/// against it.
pub fn witness(sigma: &Mat) -> Result<Witness> {
    let cd = describe_class(sigma)?;
    let report = classify(sigma)?;
    let mut w = if cd.is_transvection_class {
        witness_m1(sigma)?
    } else if let Some(a) = cd.roots().first() {
        witness_root(sigma, a)?
    } else if cd.n == 3 {
        let d2 = &cd.det * &cd.det;
        if d2.is_one() {
            witness_square_n3(sigma)?
        } else if (&d2 * &cd.det).is_one() {
            witness_cube_n3(sigma)?
        } else {
            witness_four(sigma)?
        }
    } else {
        witness_four(sigma)?
    };
    let ok = match &report.verdict {
        Verdict::Exact { m, .. } => w.len() == *m,
        Verdict::Bounds { lower, upper, .. } => (*lower..=*upper).contains(&w.len()),
    };
    if !ok {
        return Err(Error::VerificationFailed(format!(
            "witness length {} disagrees with verdict {}",
            w.len(),
            report.case_tag
        )));
    }
    w.case = report.case_tag;
    Ok(w)
}

/// Columns `C_0 · P`: each output column is a combination of `cols` with
/// coefficients from the matching column of `p`.
pub(crate) fn combine_columns(cols: &[Vec<Scalar>], p: &Mat) -> Vec<Vec<Scalar>> {
    let field = p.field();
    let len = cols.first().map_or(0, |c| c.len());
    (0..p.n())
        .map(|j| {
            let mut out = vec![field.zero(); len];
            for (i, c) in cols.iter().enumerate() {
                let k = p.get(i, j);
                if k.is_zero() {
                    continue;
                }
                for (o, x) in out.iter_mut().zip(c) {
                    *o = &*o + &(k * x);
                }
            }
            out
        })
        .collect()
}

pub(crate) fn krylov_block(sigma: &Mat, w: &[Scalar], p: &Poly) -> Vec<Vec<Scalar>> {
    krylov(sigma, w, p.deg())
}
