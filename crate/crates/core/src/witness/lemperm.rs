//! Conjugation moves on matrices of the shape
//!
//! ```text
//! [ 0 0 a ]
//! [ d 0 b ]
//! [ 0 f c ]
//! ```
//!
//! with `a, d, f ≠ 0`. Both moves use conjugators in `SL_3`, and `bf`, `c`, `adf`
//! are invariant under both.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{dd, phat, t, Mat};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemShape {
    pub a: Scalar,
    pub d: Scalar,
    pub f: Scalar,
    pub b: Scalar,
    pub c: Scalar,
}

impl LemShape {
    pub fn to_mat(&self) -> Mat {
        let field = self.a.field();
        let z = field.zero();
        Mat::from_rows(
            field,
            vec![
                vec![z.clone(), z.clone(), self.a.clone()],
                vec![self.d.clone(), z.clone(), self.b.clone()],
                vec![z.clone(), self.f.clone(), self.c.clone()],
            ],
        )
        .expect("3x3")
    }
}

pub fn shape_of(m: &Mat) -> Option<LemShape> {
    if m.n() != 3 {
        return None;
    }
    let zeros = [(0, 0), (0, 1), (1, 1), (2, 0)];
    if zeros.iter().any(|&(i, j)| !m.get(i, j).is_zero()) {
        return None;
    }
    let s = LemShape {
        a: m.get(0, 2).clone(),
        d: m.get(1, 0).clone(),
        f: m.get(2, 1).clone(),
        b: m.get(1, 2).clone(),
        c: m.get(2, 2).clone(),
    };
    if s.a.is_zero() || s.d.is_zero() || s.f.is_zero() {
        return None;
    }
    Some(s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// `(a, d, f, b, c) ↦ (d, f, a, a⁻¹bf, c)`.
    Rotate,
    /// `(a, d, f, b, c) ↦ (ax², dx⁻¹, fx⁻¹, bx, c)`.
    Scale(Scalar),
}

/// Applies one move; returns `(M^ε, ε)` with `ε ∈ SL_3`.
pub fn lemperm_move(m: &Mat, mv: &Move) -> Result<(Mat, Mat)> {
    let s = shape_of(m).ok_or(Error::ShapeMismatch)?;
    let field = m.field();
    let (eps, expect) = match mv {
        Move::Rotate => {
            let ai = s.a.inv()?;
            let eps = &(&(&(&phat(field, 3, 3, 2)? * &phat(field, 3, 3, 1)?)
                * &t(3, 2, 3, &-(&ai * &s.c))?)
                * &t(3, 1, 3, &(&ai * &s.b))?)
                * &dd(3, 1, 3, &-field.one())?;
            let expect = LemShape {
                a: s.d.clone(),
                d: s.f.clone(),
                f: s.a.clone(),
                b: &(&ai * &s.b) * &s.f,
                c: s.c.clone(),
            };
            (eps, expect)
        }
        Move::Scale(x) => {
            if x.is_zero() {
                return Err(Error::ZeroParameter);
            }
            let xi = x.inv()?;
            let expect = LemShape {
                a: &(&s.a * x) * x,
                d: &s.d * &xi,
                f: &s.f * &xi,
                b: &s.b * x,
                c: s.c.clone(),
            };
            (dd(3, 3, 1, x)?, expect)
        }
    };
    let out = m.conj(&eps)?;
    if out != expect.to_mat() {
        return Err(Error::VerificationFailed("lemma move".into()));
    }
    Ok((out, eps))
}

/// Looks for `ε ∈ SL_3` with `M^ε = N` using `k` rotations followed by
/// `R S(y) R S(z) R`, for `k ∈ {0, 1}` (at most six moves).
///
/// After the prefix, write the current corner entries as `(A, D, F)` and the target
/// as `(a', d', f')`. The five moves produce `(A/(yz), Dy²/z, Fz²/y)`, so
/// `y³ = A d' / (a' D)` and `z = D y² / d'`; every cube root `y` in `K` is tried.
pub fn solve_shape(m: &Mat, n: &Mat) -> Result<Option<Mat>> {
    let (Some(_), Some(target)) = (shape_of(m), shape_of(n)) else {
        return Ok(None);
    };
    let field = m.field();
    for k in 0..2 {
        let mut cur = m.clone();
        let mut eps = Mat::identity(field, 3);
        for _ in 0..k {
            let (next, e) = lemperm_move(&cur, &Move::Rotate)?;
            cur = next;
            eps = &eps * &e;
        }
        let s = shape_of(&cur).expect("moves keep the shape");
        let v = &(&s.a * &target.d) / &(&target.a * &s.d);
        let cube = &Poly::monomial(field.one(), 3) - &Poly::constant(v);
        'roots: for y in cube.roots()? {
            let z = &(&s.d * &(&y * &y)) / &target.d;
            let mut c2 = cur.clone();
            let mut e2 = eps.clone();
            for mv in [Move::Rotate, Move::Scale(y.clone()), Move::Rotate, Move::Scale(z), Move::Rotate] {
                match lemperm_move(&c2, &mv) {
                    Ok((next, e)) => {
                        c2 = next;
                        e2 = &e2 * &e;
                    }
                    Err(_) => continue 'roots,
                }
            }
            if &c2 == n {
                return Ok(Some(e2));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;
    const F7: FieldSpec = FieldSpec::Prime(7);

    fn shape(f: FieldSpec, v: [i64; 5]) -> Mat {
        LemShape {
            a: f.from_i64(v[0]),
            d: f.from_i64(v[1]),
            f: f.from_i64(v[2]),
            b: f.from_i64(v[3]),
            c: f.from_i64(v[4]),
        }
        .to_mat()
    }

    #[test]
    fn move_examples() {
        let (m, e) = lemperm_move(&shape(Q, [5, 1, 1, 0, 0]), &Move::Rotate).unwrap();
        assert_eq!(m, shape(Q, [1, 1, 5, 0, 0]));
        assert!(e.det().is_one());
        let x = Q.from_i64(3);
        let (m, e) = lemperm_move(&shape(Q, [5, 1, 1, 0, 0]), &Move::Scale(x)).unwrap();
        let third = Q.parse_scalar("1/3").unwrap();
        let expect = LemShape { a: Q.from_i64(45), d: third.clone(), f: third, b: Q.zero(), c: Q.zero() };
        assert_eq!(m, expect.to_mat());
        assert!(e.det().is_one());
        let src = shape(Q, [2, 3, 4, 5, 6]);
        let (m, e) = lemperm_move(&src, &Move::Scale(Q.one())).unwrap();
        assert_eq!(m, src);
        assert!(e.is_identity());
        // general b, c
        let (m, _) = lemperm_move(&src, &Move::Rotate).unwrap();
        let expect = LemShape {
            a: Q.from_i64(3),
            d: Q.from_i64(4),
            f: Q.from_i64(2),
            b: Q.from_i64(10),
            c: Q.from_i64(6),
        };
        assert_eq!(m, expect.to_mat());
        assert_eq!(lemperm_move(&Mat::identity(Q, 3), &Move::Rotate), Err(Error::ShapeMismatch));
    }

    #[test]
    fn solves_cube_root_instance() {
        // (-a, 1, -a, 0, 0) to (a², 1, 1, 0, 0) with a = 2, a³ = 1 in F_7
        let a = 2;
        let m = shape(F7, [-a, 1, -a, 0, 0]);
        let n = shape(F7, [a * a, 1, 1, 0, 0]);
        let e = solve_shape(&m, &n).unwrap().expect("solvable");
        assert!(e.det().is_one());
        assert_eq!(m.conj(&e).unwrap(), n);
    }
}
