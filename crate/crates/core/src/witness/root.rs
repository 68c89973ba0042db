use crate::classify::Sign;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{t, Mat};
use crate::normal_forms::{apply_poly, cyclic_decomposition, frobenius_form, jordan_chain, verify_transform};
use crate::poly::Poly;

use super::{combine_columns, finish, krylov_block, Witness};

/// Length-2 witness with signs `(+, -)` for `σ` whose characteristic polynomial
/// vanishes at `a`.
///
/// `σ` is brought to `J((X-a)^q) ⊕ τ` with `τ` in Frobenius form, where `q` is the
/// multiplicity of `X-a` in the largest invariant factor. Depending on `q` and on
/// whether `τ` is scalar, an auxiliary conjugation gives `ζ` and a transvection `u`
/// for which `[ζ, u] = ζ (ζ⁻¹)^{u⁻¹}` is a nontrivial transvection.
pub fn witness_root(sigma: &Mat, a: &Scalar) -> Result<Witness> {
    let n = sigma.n();
    if n < 3 {
        return Err(Error::DimensionTooSmall(n));
    }
    if sigma.det().is_zero() {
        return Err(Error::Singular);
    }
    if sigma.is_scalar() {
        return Err(Error::CentralMatrix);
    }
    let field = sigma.field();
    let cd = cyclic_decomposition(sigma);
    let chi = cd
        .invariant_factors
        .iter()
        .fold(Poly::one(field), |acc, p| &acc * p);
    if !chi.eval(a).is_zero() {
        return Err(Error::NoRoot);
    }
    let xa = Poly::linear(a);
    let r = cd.invariant_factors.len();
    let (pr, wr) = (&cd.invariant_factors[r - 1], &cd.generators[r - 1]);
    let mut q = 0;
    let mut rest = pr.clone();
    while xa.divides(&rest) {
        rest = rest.exact_div(&xa)?;
        q += 1;
    }

    let u = apply_poly(sigma, &rest, wr);
    let mut cols = jordan_chain(sigma, &xa, q, &u);

    // complement: the other cyclic summands plus the X-a-free part of the last one
    let mut c0 = Vec::new();
    let mut blocks0 = Vec::new();
    for (p, w) in cd.invariant_factors[..r - 1].iter().zip(&cd.generators) {
        c0.extend(krylov_block(sigma, w, p));
        blocks0.push(Mat::companion(p)?);
    }
    if !rest.is_constant() {
        let u2 = apply_poly(sigma, &xa.pow(q), wr);
        c0.extend(krylov_block(sigma, &u2, &rest));
        blocks0.push(Mat::companion(&rest)?);
    }
    let mut tau_factors: Vec<Poly> = Vec::new();
    if !blocks0.is_empty() {
        let fd = frobenius_form(&Mat::block_diag(&blocks0)?)?;
        let ccols = combine_columns(&c0, &fd.transform);
        tau_factors = fd.invariant_factors.clone();
        let scalar_tau = tau_factors.iter().all(|p| p.deg() == 1);
        // cases 1.2 and 2.2 want a block of degree >= 2 right after the Jordan part
        let mut order: Vec<usize> = (0..tau_factors.len()).collect();
        if q <= 2 && !scalar_tau {
            let last = order.pop().expect("nonempty");
            order.insert(0, last);
        }
        let mut groups = Vec::new();
        let mut off = 0;
        for p in &tau_factors {
            groups.push(ccols[off..off + p.deg()].to_vec());
            off += p.deg();
        }
        for &i in &order {
            cols.extend(groups[i].clone());
        }
        tau_factors = order.iter().map(|&i| tau_factors[i].clone()).collect();
    }
    let b_mat = Mat::from_columns(field, &cols);
    let mut blocks = vec![Mat::jordan_block(&xa, q)?];
    for p in &tau_factors {
        blocks.push(Mat::companion(p)?);
    }
    let rho = Mat::block_diag(&blocks)?;
    verify_transform(sigma, &b_mat, &rho, "root arrangement")?;

    let one = field.one();
    let scalar_tau = tau_factors.iter().all(|p| p.deg() == 1);
    let (name, g2, u) = match (q, scalar_tau) {
        (1, true) => ("root-1.1", Mat::identity(field, n), t(n, 1, 2, &one)?),
        (1, false) => ("root-1.2", t(n, 2, 3, &-a)?, t(n, 2, 1, &one)?),
        (2, true) => {
            let b = -&tau_factors[0].coeff(0);
            ("root-2.1", t(n, 1, 2, &(a - &b))?, t(n, 1, 3, &one)?)
        }
        (2, false) => ("root-2.2", t(n, 3, 4, &-a)?, t(n, 3, 1, &one)?),
        _ => ("root-3", Mat::identity(field, n), t(n, 2, 1, &one)?),
    };
    let factors: Vec<(Sign, Mat)> = vec![(1, Mat::identity(field, n)), (-1, u.inv()?)];
    finish(sigma, &(&b_mat * &g2), factors, name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::witness::verify_witness;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn case_examples() {
        let w = witness_root(&Mat::from_ints(Q, &[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]]), &Q.from_i64(2)).unwrap();
        assert_eq!(w.construction, "root-1.1");
        assert!(verify_witness(&w));
        assert_eq!(w.signs(), vec![1, -1]);

        let w = witness_root(&t(3, 1, 2, &Q.one()).unwrap(), &Q.one()).unwrap();
        assert!(verify_witness(&w));

        let c = Mat::companion(&Poly::from_ints(Q, &[-1, 1, -1, 1])).unwrap();
        let w = witness_root(&c, &Q.one()).unwrap();
        assert_eq!(w.construction, "root-1.2");
        assert!(verify_witness(&w));

        assert_eq!(witness_root(&c, &Q.from_i64(3)).unwrap_err(), Error::NoRoot);
    }

    #[test]
    fn all_cases_fire() {
        let x1 = Poly::from_ints(Q, &[-1, 1]);
        let x2 = Poly::from_ints(Q, &[-2, 1]);
        let quad = Poly::from_ints(Q, &[1, 0, 1]);
        let cases = [
            (Mat::companion(&(&x1.pow(2) * &x2)).unwrap().direct_sum(&Mat::scalar(&Q.from_i64(2), 1)).unwrap(), "root-2.1"),
            (Mat::companion(&(&x1.pow(2) * &quad)).unwrap(), "root-2.2"),
            (Mat::companion(&x1.pow(3)).unwrap(), "root-3"),
        ];
        for (m, name) in cases {
            let w = witness_root(&m, &Q.one()).unwrap();
            assert_eq!(w.construction, name);
            assert!(verify_witness(&w));
        }
    }
}
