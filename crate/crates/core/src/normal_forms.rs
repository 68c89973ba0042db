//! Smith normal form over `K[X]`, invariant factors, Frobenius and generalized Jordan forms.
//!
//! Similarity transforms come from the cokernel of the characteristic matrix: if
//! `U (Xe - σ) V = D`, the columns of `U⁻¹` evaluated at `σ` give cyclic generators
//! `w_i` whose annihilators are the diagonal entries `d_i`.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Mat;
use crate::poly::Poly;

/// Square matrix over `K[X]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMat {
    n: usize,
    field: FieldSpec,
    data: Vec<Poly>,
}

impl PolyMat {
    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut data = vec![Poly::zero(field); n * n];
        for i in 0..n {
            data[i * n + i] = Poly::one(field);
        }
        PolyMat { n, field, data }
    }

    /// The characteristic matrix `Xe - σ`.
    pub fn char_matrix(sigma: &Mat) -> Self {
        let n = sigma.n();
        let field = sigma.field();
        let x = Poly::x(field);
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let c = Poly::constant(-sigma.get(i, j));
                data.push(if i == j { &x + &c } else { c });
            }
        }
        PolyMat { n, field, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.n + j]
    }

    fn at(&mut self, i: usize, j: usize) -> &mut Poly {
        &mut self.data[i * self.n + j]
    }

    pub fn mul(&self, other: &PolyMat) -> PolyMat {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut data = vec![Poly::zero(self.field); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        data[i * n + j] = &data[i * n + j] + &(a * b);
                    }
                }
            }
        }
        PolyMat {
            n,
            field: self.field,
            data,
        }
    }

    /// Bareiss determinant; every division is exact in `K[X]`.
    pub fn det(&self) -> Poly {
        let n = self.n;
        let mut a = self.data.clone();
        let mut prev = Poly::one(self.field);
        let mut negate = false;
        for k in 0..n {
            if a[k * n + k].is_zero() {
                match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                    None => return Poly::zero(self.field),
                    Some(r) => {
                        for j in 0..n {
                            a.swap(k * n + j, r * n + j);
                        }
                        negate = !negate;
                    }
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(&a[k * n + k] * &a[i * n + j]) - &(&a[i * n + k] * &a[k * n + j]);
                    a[i * n + j] = v.exact_div(&prev).expect("Bareiss division is exact");
                }
            }
            prev = a[k * n + k].clone();
        }
        if negate {
            -&prev
        } else {
            prev
        }
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.n {
            self.data.swap(a * self.n + j, b * self.n + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.n {
            self.data.swap(i * self.n + a, i * self.n + b);
        }
    }

    /// `row_dst += f · row_src`.
    fn add_row(&mut self, dst: usize, src: usize, f: &Poly) {
        for j in 0..self.n {
            let v = self.get(src, j) * f;
            let cell = self.at(dst, j);
            *cell = &*cell + &v;
        }
    }

    /// `col_dst += f · col_src`.
    fn add_col(&mut self, dst: usize, src: usize, f: &Poly) {
        for i in 0..self.n {
            let v = self.get(i, src) * f;
            let cell = self.at(i, dst);
            *cell = &*cell + &v;
        }
    }

    fn scale_row(&mut self, r: usize, c: &Scalar) {
        for j in 0..self.n {
            let cell = self.at(r, j);
            *cell = cell.scale(c);
        }
    }

    fn scale_col(&mut self, col: usize, c: &Scalar) {
        for i in 0..self.n {
            let cell = self.at(i, col);
            *cell = cell.scale(c);
        }
    }
}

/// `U · A · V = D`, with `u_inv = U⁻¹` tracked alongside.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub d: PolyMat,
    pub u: PolyMat,
    pub v: PolyMat,
    pub u_inv: PolyMat,
    pub diag: Vec<Poly>,
}

/// Row operations mirrored on `U` (left) and on `U⁻¹` (inverse, on the right).
struct Tracker {
    a: PolyMat,
    u: PolyMat,
    v: PolyMat,
    u_inv: PolyMat,
}

impl Tracker {
    fn row_add(&mut self, dst: usize, src: usize, f: &Poly) {
        self.a.add_row(dst, src, f);
        self.u.add_row(dst, src, f);
        self.u_inv.add_col(src, dst, &-f);
    }

    fn col_add(&mut self, dst: usize, src: usize, f: &Poly) {
        self.a.add_col(dst, src, f);
        self.v.add_col(dst, src, f);
    }

    fn row_swap(&mut self, a: usize, b: usize) {
        self.a.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        self.a.swap_cols(a, b);
        self.v.swap_cols(a, b);
    }

    fn row_scale(&mut self, r: usize, c: &Scalar) {
        self.a.scale_row(r, c);
        self.u.scale_row(r, c);
        self.u_inv.scale_col(r, &c.inv().expect("nonzero scale"));
    }
}

/// Smith normal form with deterministic pivoting: the nonzero entry of least degree,
/// ties broken row-major; rows and columns are cleared by division and a failed
/// divisibility check adds the offending row into the pivot row.
pub fn smith_normal_form(a: &PolyMat) -> SnfResult {
    let n = a.n;
    let field = a.field;
    let mut tr = Tracker {
        a: a.clone(),
        u: PolyMat::identity(field, n),
        v: PolyMat::identity(field, n),
        u_inv: PolyMat::identity(field, n),
    };
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    let p = tr.a.get(i, j);
                    if let Some(dg) = p.degree() {
                        if best.is_none_or(|(b, _, _)| dg < b) {
                            best = Some((dg, i, j));
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else { break };
            if pi != t {
                tr.row_swap(t, pi);
            }
            if pj != t {
                tr.col_swap(t, pj);
            }
            let piv = tr.a.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..n {
                if tr.a.get(i, t).is_zero() {
                    continue;
                }
                let (q, r) = tr.a.get(i, t).divmod(&piv).expect("nonzero pivot");
                tr.row_add(i, t, &-&q);
                dirty |= !r.is_zero();
            }
            for j in t + 1..n {
                if tr.a.get(t, j).is_zero() {
                    continue;
                }
                let (q, r) = tr.a.get(t, j).divmod(&piv).expect("nonzero pivot");
                tr.col_add(j, t, &-&q);
                dirty |= !r.is_zero();
            }
            if dirty {
                continue;
            }
            let bad_row = (t + 1..n).find(|&i| (t + 1..n).any(|j| !piv.divides(tr.a.get(i, j))));
            if let Some(i) = bad_row {
                tr.row_add(t, i, &Poly::one(field));
                continue;
            }
            let lc = piv.leading().expect("nonzero").clone();
            if !lc.is_one() {
                tr.row_scale(t, &lc.inv().expect("nonzero"));
            }
            break;
        }
    }
    let diag = (0..n).map(|i| tr.a.get(i, i).clone()).collect();
    SnfResult {
        d: tr.a,
        u: tr.u,
        v: tr.v,
        u_inv: tr.u_inv,
        diag,
    }
}

/// `f(σ)·v` by Horner's rule.
pub fn apply_poly(sigma: &Mat, f: &Poly, v: &[Scalar]) -> Vec<Scalar> {
    let field = sigma.field();
    let mut acc = vec![field.zero(); sigma.n()];
    for c in f.coeffs().iter().rev() {
        acc = sigma.mul_vec(&acc);
        for (a, x) in acc.iter_mut().zip(v) {
            *a = &*a + &(c * x);
        }
    }
    acc
}

/// Cyclic decomposition `K^n = ⊕ K[σ] w_i` with `ann(w_i) = P_i` and `P_1 | … | P_r`.
#[derive(Clone, Debug)]
pub struct CyclicDecomposition {
    pub invariant_factors: Vec<Poly>,
    pub generators: Vec<Vec<Scalar>>,
}

pub fn cyclic_decomposition(sigma: &Mat) -> CyclicDecomposition {
    let snf = smith_normal_form(&PolyMat::char_matrix(sigma));
    let n = sigma.n();
    let mut invariant_factors = Vec::new();
    let mut generators = Vec::new();
    for (i, d) in snf.diag.iter().enumerate() {
        if d.is_constant() {
            continue;
        }
        let mut w = vec![sigma.field().zero(); n];
        for j in 0..n {
            let mut e = vec![sigma.field().zero(); n];
            e[j] = sigma.field().one();
            let c = apply_poly(sigma, snf.u_inv.get(j, i), &e);
            for (a, x) in w.iter_mut().zip(&c) {
                *a = &*a + x;
            }
        }
        invariant_factors.push(d.clone());
        generators.push(w);
    }
    CyclicDecomposition {
        invariant_factors,
        generators,
    }
}

/// The Krylov basis `w, σw, …, σ^{k-1}w`.
pub fn krylov(sigma: &Mat, w: &[Scalar], k: usize) -> Vec<Vec<Scalar>> {
    let mut out = Vec::with_capacity(k);
    let mut cur = w.to_vec();
    for _ in 0..k {
        let next = sigma.mul_vec(&cur);
        out.push(cur);
        cur = next;
    }
    out
}

pub fn invariant_factors(sigma: &Mat) -> Vec<Poly> {
    smith_normal_form(&PolyMat::char_matrix(sigma))
        .diag
        .into_iter()
        .filter(|d| !d.is_constant())
        .collect()
}

#[derive(Clone, Debug)]
pub struct FrobeniusData {
    pub invariant_factors: Vec<Poly>,
    pub form: Mat,
    /// `P` with `P⁻¹ σ P = form`.
    pub transform: Mat,
}

/// Checks `σ P = P F` and `det P ≠ 0`.
pub(crate) fn verify_transform(sigma: &Mat, p: &Mat, f: &Mat, what: &str) -> Result<()> {
    if p.det().is_zero() || &(sigma * p) != &(p * f) {
        return Err(Error::VerificationFailed(format!("{what} transform")));
    }
    Ok(())
}

pub fn frobenius_form(sigma: &Mat) -> Result<FrobeniusData> {
    let cd = cyclic_decomposition(sigma);
    let mut cols = Vec::with_capacity(sigma.n());
    let mut blocks = Vec::new();
    for (p, w) in cd.invariant_factors.iter().zip(&cd.generators) {
        cols.extend(krylov(sigma, w, p.deg()));
        blocks.push(Mat::companion(p)?);
    }
    let form = Mat::block_diag(&blocks)?;
    let transform = Mat::from_columns(sigma.field(), &cols);
    verify_transform(sigma, &transform, &form, "Frobenius")?;
    Ok(FrobeniusData {
        invariant_factors: cd.invariant_factors,
        form,
        transform,
    })
}

pub fn is_similar(a: &Mat, b: &Mat) -> Result<bool> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field(), b.field()));
    }
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(a.n(), b.n()));
    }
    Ok(invariant_factors(a) == invariant_factors(b))
}

/// Elementary divisors `(P, q)` collected over all invariant factors, sorted by `P`
/// ascending and then by power descending.
pub fn elementary_divisors(sigma: &Mat) -> Result<Vec<(Poly, usize)>> {
    elementary_divisors_of(&invariant_factors(sigma))
}

pub fn elementary_divisors_of(factors: &[Poly]) -> Result<Vec<(Poly, usize)>> {
    let mut out = Vec::new();
    for f in factors {
        out.extend(f.factor()?);
    }
    sort_divisors(&mut out);
    Ok(out)
}

fn sort_divisors(v: &mut [(Poly, usize)]) {
    v.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
}

#[derive(Clone, Debug)]
pub struct JordanData {
    pub elementary_divisors: Vec<(Poly, usize)>,
    pub form: Mat,
    pub transform: Mat,
}

/// Basis of `K[σ]u` adapted to `J(f^q)`: columns `σ^j f(σ)^b u`, block `b` major.
pub fn jordan_chain(sigma: &Mat, f: &Poly, q: usize, u: &[Scalar]) -> Vec<Vec<Scalar>> {
    let mut out = Vec::with_capacity(f.deg() * q);
    let mut head = u.to_vec();
    for _ in 0..q {
        out.extend(krylov(sigma, &head, f.deg()));
        head = apply_poly(sigma, f, &head);
    }
    out
}

pub fn jordan_form(sigma: &Mat) -> Result<JordanData> {
    let cd = cyclic_decomposition(sigma);
    // (P, q, chain) triples gathered per invariant factor, then sorted.
    let mut parts: Vec<(Poly, usize, Vec<Vec<Scalar>>)> = Vec::new();
    for (p, w) in cd.invariant_factors.iter().zip(&cd.generators) {
        for (f, q) in p.factor()? {
            let fq = f.pow(q);
            let cof = p.exact_div(&fq)?;
            let u = apply_poly(sigma, &cof, w);
            let chain = jordan_chain(sigma, &f, q, &u);
            parts.push((f, q, chain));
        }
    }
    parts.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    let mut cols = Vec::new();
    let mut blocks = Vec::new();
    let mut divisors = Vec::new();
    for (f, q, chain) in parts {
        blocks.push(Mat::jordan_block(&f, q)?);
        cols.extend(chain);
        divisors.push((f, q));
    }
    let form = Mat::block_diag(&blocks)?;
    let transform = Mat::from_columns(sigma.field(), &cols);
    verify_transform(sigma, &transform, &form, "Jordan")?;
    Ok(JordanData {
        elementary_divisors: divisors,
        form,
        transform,
    })
}

/// Characteristic polynomial as the product of the invariant factors.
pub fn charpoly_snf(sigma: &Mat) -> Poly {
    invariant_factors(sigma)
        .iter()
        .fold(Poly::one(sigma.field()), |acc, p| &acc * p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::t;

    const Q: FieldSpec = FieldSpec::Rationals;
    const F2: FieldSpec = FieldSpec::Prime(2);
    const F7: FieldSpec = FieldSpec::Prime(7);

    fn p(f: FieldSpec, c: &[i64]) -> Poly {
        Poly::from_ints(f, c)
    }

    fn check_snf(sigma: &Mat) -> SnfResult {
        let a = PolyMat::char_matrix(sigma);
        let r = smith_normal_form(&a);
        assert_eq!(r.u.mul(&a).mul(&r.v), r.d);
        assert!(r.d.is_diagonal());
        assert!(r.u.det().is_constant() && !r.u.det().is_zero());
        assert!(r.v.det().is_constant() && !r.v.det().is_zero());
        assert!(r.u.mul(&r.u_inv) == PolyMat::identity(sigma.field(), sigma.n()));
        r
    }

    #[test]
    fn snf_examples() {
        let r = check_snf(&Mat::from_ints(Q, &[&[1, 0], &[0, 2]]));
        assert_eq!(r.diag, vec![p(Q, &[1]), p(Q, &[2, -3, 1])]);
        let c = Mat::companion(&p(Q, &[2, 0, 0, 1])).unwrap();
        assert_eq!(check_snf(&c).diag, vec![p(Q, &[1]), p(Q, &[1]), p(Q, &[2, 0, 0, 1])]);
        let r = check_snf(&Mat::identity(Q, 3));
        assert_eq!(r.diag, vec![p(Q, &[-1, 1]); 3]);
    }

    #[test]
    fn invariant_factor_examples() {
        let t32 = t(3, 3, 2, &Q.one()).unwrap();
        let x1 = p(Q, &[-1, 1]);
        assert_eq!(invariant_factors(&t32), vec![x1.clone(), x1.pow(2)]);
        let sigma = Mat::from_ints(F2, &[&[0, 1, 1, 0], &[0, 1, 0, 1], &[1, 0, 1, 0], &[0, 1, 0, 0]]);
        assert_eq!(invariant_factors(&sigma), vec![p(F2, &[1, 0, 1, 0, 1])]);
    }

    #[test]
    fn frobenius_examples() {
        let fd = frobenius_form(&t(2, 1, 2, &Q.one()).unwrap()).unwrap();
        assert_eq!(fd.form, Mat::from_ints(Q, &[&[0, -1], &[1, 2]]));
        let sigma = Mat::from_ints(F2, &[&[0, 1, 1, 0], &[0, 1, 0, 1], &[1, 0, 1, 0], &[0, 1, 0, 0]]);
        let tau = Mat::from_ints(F2, &[&[0, 0, 1, 1], &[0, 1, 0, 1], &[1, 0, 1, 0], &[0, 1, 0, 0]]);
        let (fs, ft) = (frobenius_form(&sigma).unwrap(), frobenius_form(&tau).unwrap());
        assert_eq!(fs.form, ft.form);
        assert_eq!(fs.invariant_factors, vec![p(F2, &[1, 0, 1, 0, 1])]);
        // a Frobenius form is its own form
        let again = frobenius_form(&fs.form).unwrap();
        assert_eq!(again.form, fs.form);
    }

    #[test]
    fn similarity_examples() {
        let a = t(3, 1, 2, &F7.one()).unwrap();
        let b = t(3, 1, 3, &F7.from_i64(5)).unwrap();
        assert!(is_similar(&a, &b).unwrap());
        assert!(!is_similar(&Mat::identity(F7, 3), &a).unwrap());
        assert!(matches!(
            is_similar(&a, &Mat::identity(F7, 2)),
            Err(Error::DimensionMismatch(3, 2))
        ));
    }

    #[test]
    fn elementary_divisor_examples() {
        let x1 = p(Q, &[-1, 1]);
        assert_eq!(
            elementary_divisors(&t(3, 3, 2, &Q.one()).unwrap()).unwrap(),
            vec![(x1.clone(), 2), (x1, 1)]
        );
        let c = Mat::companion(&p(F2, &[1, 0, 1, 0, 1])).unwrap();
        assert_eq!(elementary_divisors(&c).unwrap(), vec![(p(F2, &[1, 1, 1]), 2)]);
        let dg = Mat::from_ints(Q, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        assert_eq!(
            elementary_divisors(&dg).unwrap(),
            vec![(p(Q, &[-3, 1]), 1), (p(Q, &[-2, 1]), 1), (p(Q, &[-2, 1]), 1)]
        );
    }

    #[test]
    fn jordan_examples() {
        let a = Q.from_i64(4);
        let j = Mat::jordan_block(&Poly::linear(&a), 3).unwrap();
        let jd = jordan_form(&j).unwrap();
        assert_eq!(jd.form, j);
        let x1 = p(Q, &[-1, 1]);
        let c = Mat::companion(&(&x1.pow(2) * &p(Q, &[-2, 1]))).unwrap();
        let jd = jordan_form(&c).unwrap();
        assert_eq!(jd.elementary_divisors, vec![(p(Q, &[-2, 1]), 1), (x1.clone(), 2)]);
        assert_eq!(invariant_factors(&jd.form), invariant_factors(&c));
        // irreducible quadratic squared
        let c2 = Mat::companion(&p(F2, &[1, 0, 1, 0, 1])).unwrap();
        let jd = jordan_form(&c2).unwrap();
        assert_eq!(jd.form, Mat::jordan_block(&p(F2, &[1, 1, 1]), 2).unwrap());
    }
}
