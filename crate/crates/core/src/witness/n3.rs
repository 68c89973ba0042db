//! Length-2 `(+, +)` and length-3 `(+, +, +)` witnesses for `n = 3` with no root.
//!
//! Both work on the Frobenius form `F = [[0,0,a],[1,0,b],[0,1,c]]` with `a = det σ`,
//! using an auxiliary `σ_0` and an involution `ξ ∈ SL_3` with `σ_0 ξ = F^{d_13(-1)}`,
//! so that `F^{d_13(-1) ε} F^{d_13(-1) ε ξ^ε} = (σ_0^ε)^2`.

use crate::classify::Sign;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::{d, dd, perm, phat, t, Mat};
use crate::normal_forms::frobenius_form;

use super::{finish, solve_conjugator, Witness};

fn gate(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::VerificationFailed(format!("identity check failed: {what}")))
    }
}

fn m3(field: FieldSpec, rows: [[Scalar; 3]; 3]) -> Mat {
    Mat::from_rows(field, rows.into_iter().map(|r| r.to_vec()).collect()).expect("3x3")
}

struct Setup {
    field: FieldSpec,
    f: Mat,
    /// `σ^p = F`.
    p: Mat,
    a: Scalar,
    b: Scalar,
    c: Scalar,
}

fn setup(sigma: &Mat) -> Result<Setup> {
    if sigma.n() != 3 {
        return Err(Error::WrongDimension {
            expected: 3,
            got: sigma.n(),
        });
    }
    if sigma.det().is_zero() {
        return Err(Error::Singular);
    }
    if sigma.is_scalar() {
        return Err(Error::CentralMatrix);
    }
    let fd = frobenius_form(sigma)?;
    if fd.invariant_factors.len() != 1 || !fd.invariant_factors[0].roots()?.is_empty() {
        return Err(Error::PreconditionViolated(
            "characteristic polynomial must have no root".into(),
        ));
    }
    let f = fd.form;
    Ok(Setup {
        field: sigma.field(),
        a: f.get(0, 2).clone(),
        b: f.get(1, 2).clone(),
        c: f.get(2, 2).clone(),
        p: fd.transform,
        f,
    })
}

/// `T ⊆ CC` when the characteristic polynomial has no root and `det² = 1`.
pub fn witness_square_n3(sigma: &Mat) -> Result<Witness> {
    let Setup { field, f, p, a, b, c } = setup(sigma)?;
    if !(&a * &a).is_one() {
        return Err(Error::PreconditionViolated("det^2 must be 1".into()));
    }
    let (z, one) = (field.zero(), field.one());
    let sigma0 = m3(
        field,
        [
            [z.clone(), z.clone(), a.clone()],
            [one.clone(), z.clone(), one.clone()],
            [z.clone(), one.clone(), -&a],
        ],
    );
    let s2 = &sigma0 * &sigma0;
    let h = &perm(field, 3, 1, 2)? * &t(3, 2, 1, &a)?;
    let ft = m3(
        field,
        [
            [one.clone(), z.clone(), z.clone()],
            [z.clone(), z.clone(), -&one],
            [z.clone(), one.clone(), field.from_i64(2)],
        ],
    );
    let s2h = s2.conj(&h)?;
    gate(s2h == ft, "(σ_0²)^{p_12 t_21(a)} = [X-1] ⊕ [(X-1)²]")?;
    let target = t(3, 1, 2, &one)?;
    let eps = &h * &solve_conjugator(&s2h, &target, false)?;
    let eps = &eps * &d(3, 3, &eps.det().inv()?)?;
    gate(s2.conj(&eps)? == target && eps.det().is_one(), "(σ_0²)^ε = t_12(1)")?;

    let xi = &(&t(3, 1, 3, &(-&b - &one))?
        * &t(3, 2, 3, &(&a + &c))?)
        * &dd(3, 1, 2, &-&one)?;
    let d13 = dd(3, 1, 3, &-&one)?;
    gate((&xi * &xi).is_identity(), "ξ² = e")?;
    gate(&sigma0 * &xi == f.conj(&d13)?, "σ_0 ξ = F^{d_13(-1)}")?;

    let x1 = &d13 * &eps;
    let x2 = &x1 * &xi.conj(&eps)?;
    let factors: Vec<(Sign, Mat)> = vec![(1, x1), (1, x2)];
    finish(sigma, &p, factors, "square")
}

/// `T ⊆ CCC` when the characteristic polynomial has no root, `det³ = 1` and
/// `det² ≠ 1`. Over `Q` this never happens, since 1 is the only rational cube root
/// of unity.
pub fn witness_cube_n3(sigma: &Mat) -> Result<Witness> {
    if sigma.field() == FieldSpec::Rationals {
        return Err(Error::Unreachable(
            "det^3 = 1 and det^2 != 1 has no solution in Q".into(),
        ));
    }
    let Setup { field, f, p, a, b, c } = setup(sigma)?;
    let a2 = &a * &a;
    if a2.is_one() || !(&a2 * &a).is_one() {
        return Err(Error::PreconditionViolated(
            "det^3 must be 1 and det^2 must not".into(),
        ));
    }
    let (z, one) = (field.zero(), field.one());
    let two = field.from_i64(2);
    let ai = a.inv()?;
    let case = if !b.is_zero() {
        1
    } else if !c.is_zero() {
        2
    } else {
        3
    };
    let zt = if case == 3 {
        m3(
            field,
            [
                [z.clone(), z.clone(), a2.clone()],
                [one.clone(), z.clone(), -&one],
                [z.clone(), one.clone(), two.clone()],
            ],
        )
    } else {
        m3(
            field,
            [
                [z.clone(), z.clone(), a2.clone()],
                [one.clone(), z.clone(), z.clone()],
                [z.clone(), one.clone(), z.clone()],
            ],
        )
    };
    let mid = if case == 3 { one.clone() } else { z.clone() };
    let sigma0 = m3(
        field,
        [
            [z.clone(), z.clone(), a.clone()],
            [one.clone(), z.clone(), mid],
            [z.clone(), one.clone(), z.clone()],
        ],
    );
    let xi = if case == 3 {
        &t(3, 1, 3, &-&one)? * &dd(3, 1, 2, &-&one)?
    } else {
        &(&t(3, 1, 3, &-&b)? * &t(3, 2, 3, &c)?) * &dd(3, 1, 2, &-&one)?
    };
    let d13 = dd(3, 1, 3, &-&one)?;
    gate((&xi * &xi).is_identity(), "ξ² = e")?;
    gate(&sigma0 * &xi == f.conj(&d13)?, "σ_0 ξ = F^{d_13(-1)}")?;

    let s2 = &sigma0 * &sigma0;
    let prefix = if case == 3 {
        &phat(field, 3, 3, 2)? * &t(3, 2, 3, &-&ai)?
    } else {
        phat(field, 3, 3, 2)?
    };
    let s2p = s2.conj(&prefix)?;
    let printed = if case == 3 {
        m3(
            field,
            [
                [z.clone(), z.clone(), -&a],
                [one.clone(), z.clone(), ai.clone()],
                [z.clone(), -&a, two.clone()],
            ],
        )
    } else {
        m3(
            field,
            [
                [z.clone(), z.clone(), -&a],
                [one.clone(), z.clone(), z.clone()],
                [z.clone(), -&a, z.clone()],
            ],
        )
    };
    gate(s2p == printed, "(σ_0²) after the first printed conjugation")?;
    let eps = &prefix * &solve_conjugator(&s2p, &zt, true)?;

    let (eps1, prefix2, printed2) = match case {
        1 => {
            let bi = b.inv()?;
            let e1 = &(&phat(field, 3, 2, 3)? * &t(3, 3, 1, &(&bi * &c))?) * &dd(3, 3, 2, &-&b)?;
            let pre = t(3, 3, 1, &(&(&bi * &bi) * &c))?;
            let pr = m3(
                field,
                [
                    [z.clone(), z.clone(), -&b],
                    [&b * &ai, z.clone(), z.clone()],
                    [z.clone(), -&(&bi * &bi), z.clone()],
                ],
            );
            (e1, pre, pr)
        }
        2 => {
            let ci = c.inv()?;
            let e1 = &t(3, 3, 1, &(&c * &ai))? * &dd(3, 3, 2, &c)?;
            let pre = &t(3, 1, 2, &one)? * &phat(field, 3, 2, 3)?;
            let pr = m3(
                field,
                [
                    [z.clone(), z.clone(), ci.clone()],
                    [-&(&ci * &ai), z.clone(), z.clone()],
                    [z.clone(), -&(&c * &c), z.clone()],
                ],
            );
            (e1, pre, pr)
        }
        _ => {
            let e1 = &dd(3, 1, 3, &-&a)? * &t(3, 2, 3, &-&(&two * &ai))?;
            let pre = &(&t(3, 2, 3, &(&two * &ai))? * &t(3, 1, 3, &(&two * &ai))?) * &phat(field, 3, 2, 1)?;
            let pr = m3(
                field,
                [
                    [z.clone(), z.clone(), -&ai],
                    [ai.clone(), z.clone(), ai.clone()],
                    [z.clone(), -&a, two.clone()],
                ],
            );
            (e1, pre, pr)
        }
    };
    let y = &t(3, 1, 2, &one)? * &f.inv()?.conj(&eps1)?;
    let yp = y.conj(&prefix2)?;
    gate(yp == printed2, "t_12(1) (σ⁻¹)^{ε'} after the second printed conjugation")?;
    let eps2 = &prefix2 * &solve_conjugator(&yp, &zt, true)?;
    gate(
        eps.det().is_one() && eps1.det().is_one() && eps2.det().is_one(),
        "conjugators in SL_3",
    )?;

    let e2i = eps2.inv()?;
    let x1 = &(&d13 * &eps) * &e2i;
    let x2 = &(&(&d13 * &eps) * &xi.conj(&eps)?) * &e2i;
    let factors: Vec<(Sign, Mat)> = vec![(1, x1), (1, x2), (1, eps1)];
    finish(sigma, &p, factors, &format!("cube-{case}"))
}
