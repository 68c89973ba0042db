//! Dense square matrices over `Q` or `F_p`, elementary generators, and their relations.
//!
//! Generator constructors take 1-based indices, matching the usual `t_ij(a)` notation.
//! Raw entry access (`get`, `set`) is 0-based.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    n: usize,
    field: FieldSpec,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zero(field: FieldSpec, n: usize) -> Mat {
        Mat {
            n,
            field,
            data: vec![field.zero(); n * n],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Mat {
        let mut m = Mat::zero(field, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn scalar(c: &Scalar, n: usize) -> Mat {
        Mat::identity(c.field(), n).scale(c)
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Mat> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Parse("empty matrix".into()));
        }
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch(n, row.len()));
            }
            for x in row {
                if x.field() != field {
                    return Err(Error::FieldMismatch(field, x.field()));
                }
                data.push(x);
            }
        }
        Ok(Mat { n, field, data })
    }

    /// Integer entries, reduced into the field. Panics on a ragged array.
    pub fn from_ints(field: FieldSpec, rows: &[&[i64]]) -> Mat {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "ragged matrix");
        Mat {
            n,
            field,
            data: rows
                .iter()
                .flat_map(|r| r.iter().map(|&v| field.from_i64(v)))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "matrix field mismatch");
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn from_columns(field: FieldSpec, cols: &[Vec<Scalar>]) -> Mat {
        let n = cols.len();
        let mut m = Mat::zero(field, n);
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.data[i * n + j] = x.clone();
            }
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        self.is_scalar() && self.data[0].is_one()
    }

    /// True iff the matrix is `c·e` for some scalar `c`.
    pub fn is_scalar(&self) -> bool {
        let c = &self.data[0];
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let x = self.get(i, j);
                if i == j {
                    x == c
                } else {
                    x.is_zero()
                }
            })
        })
    }

    fn check(&self, other: &Mat) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Mat) -> Result<Mat> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Mat) -> Mat {
        let n = self.n;
        let mut out = Mat::zero(self.field, n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if !b.is_zero() {
                        out.data[i * n + j] = &out.data[i * n + j] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(self.field.zero(), |acc, j| &acc + &(self.get(i, j) * &v[j]))
            })
            .collect()
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        Mat {
            n: self.n,
            field: self.field,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn transpose(&self) -> Mat {
        let mut m = Mat::zero(self.field, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.data[j * self.n + i] = self.get(i, j).clone();
            }
        }
        m
    }

    pub fn trace(&self) -> Scalar {
        (0..self.n).fold(self.field.zero(), |acc, i| &acc + self.get(i, i))
    }

    /// Bareiss fraction-free determinant.
    pub fn det(&self) -> Scalar {
        let n = self.n;
        let mut a = self.data.clone();
        let mut prev = self.field.one();
        let mut negate = false;
        for k in 0..n {
            if a[k * n + k].is_zero() {
                match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                    None => return self.field.zero(),
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
                    a[i * n + j] = &v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        if negate {
            -prev
        } else {
            prev
        }
    }

    /// Inverse by fraction-free Gauss-Jordan elimination on `[A | e]`.
    ///
    /// For integral input every intermediate entry stays integral; the single
    /// division by the final pivot (which equals `±det`) happens at the end.
    pub fn inv(&self) -> Result<Mat> {
        let n = self.n;
        let w = 2 * n;
        let mut a = vec![self.field.zero(); n * w];
        for i in 0..n {
            for j in 0..n {
                a[i * w + j] = self.get(i, j).clone();
            }
            a[i * w + n + i] = self.field.one();
        }
        let mut prev = self.field.one();
        for k in 0..n {
            if a[k * w + k].is_zero() {
                let r = (k + 1..n)
                    .find(|&r| !a[r * w + k].is_zero())
                    .ok_or(Error::Singular)?;
                for j in 0..w {
                    a.swap(k * w + j, r * w + j);
                }
            }
            let piv = a[k * w + k].clone();
            for i in 0..n {
                if i == k {
                    continue;
                }
                let f = a[i * w + k].clone();
                for j in 0..w {
                    if j == k {
                        continue;
                    }
                    let v = &(&piv * &a[i * w + j]) - &(&f * &a[k * w + j]);
                    a[i * w + j] = &v / &prev;
                }
                a[i * w + k] = self.field.zero();
            }
            prev = piv;
        }
        let d_inv = prev.inv()?;
        let mut out = Mat::zero(self.field, n);
        for i in 0..n {
            for j in 0..n {
                out.data[i * n + j] = &a[i * w + n + j] * &d_inv;
            }
        }
        Ok(out)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Mat> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Mat::identity(self.field, self.n);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            k >>= 1;
        }
        Ok(acc)
    }

    /// `g^h = h⁻¹ g h`.
    pub fn conj(&self, h: &Mat) -> Result<Mat> {
        self.check(h)?;
        Ok(h.inv()?.mul_unchecked(self).mul_unchecked(h))
    }

    /// `[g, h] = g h g⁻¹ h⁻¹`.
    pub fn commutator(g: &Mat, h: &Mat) -> Result<Mat> {
        g.check(h)?;
        Ok(g.mul_unchecked(h)
            .mul_unchecked(&g.inv()?)
            .mul_unchecked(&h.inv()?))
    }

    pub fn direct_sum(&self, other: &Mat) -> Result<Mat> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let n = self.n + other.n;
        let mut m = Mat::zero(self.field, n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.data[i * n + j] = self.get(i, j).clone();
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                m.data[(i + self.n) * n + j + self.n] = other.get(i, j).clone();
            }
        }
        Ok(m)
    }

    /// Block diagonal sum of a nonempty list.
    pub fn block_diag(blocks: &[Mat]) -> Result<Mat> {
        let (first, rest) = blocks
            .split_first()
            .ok_or_else(|| Error::PreconditionViolated("no blocks".into()))?;
        rest.iter().try_fold(first.clone(), |acc, b| acc.direct_sum(b))
    }

    /// `e_k ⊕ σ`.
    pub fn pad(&self, k: usize) -> Mat {
        if k == 0 {
            return self.clone();
        }
        Mat::identity(self.field, k)
            .direct_sum(self)
            .expect("same field")
    }

    /// Square submatrix on the given 0-based row and column index sets.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let k = rows.len();
        assert_eq!(k, cols.len());
        let mut m = Mat::zero(self.field, k);
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.data[a * k + b] = self.get(i, j).clone();
            }
        }
        m
    }

    /// Companion matrix `[P]`: ones on the subdiagonal, last column `-a_0, …, -a_{n-1}`.
    pub fn companion(p: &Poly) -> Result<Mat> {
        if p.is_zero() || p.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        if !p.is_monic() {
            return Err(Error::NotMonic);
        }
        let n = p.deg();
        let field = p.field();
        let mut m = Mat::zero(field, n);
        for i in 1..n {
            m.data[i * n + i - 1] = field.one();
        }
        for i in 0..n {
            m.data[i * n + n - 1] = -&p.coeff(i);
        }
        Ok(m)
    }

    /// Generalized Jordan block `J(P^q)`: `q` copies of `[P]` on the diagonal and a
    /// corner matrix with a single 1 at position (1, deg P) on each block subdiagonal.
    pub fn jordan_block(p: &Poly, q: usize) -> Result<Mat> {
        if q == 0 {
            return Err(Error::PreconditionViolated("power must be at least 1".into()));
        }
        let c = Mat::companion(p)?;
        let d = c.n;
        let n = d * q;
        let mut m = Mat::zero(p.field(), n);
        for b in 0..q {
            for i in 0..d {
                for j in 0..d {
                    m.data[(b * d + i) * n + b * d + j] = c.get(i, j).clone();
                }
            }
            if b > 0 {
                m.data[(b * d) * n + (b - 1) * d + d - 1] = p.field().one();
            }
        }
        Ok(m)
    }

    /// Characteristic polynomial as `Σ (-1)^k a_k X^{n-k}`, where `a_k` is the sum of
    /// all principal minors of size `k`.
    pub fn charpoly_minors(&self) -> Poly {
        let n = self.n;
        let mut sums = vec![self.field.zero(); n + 1];
        sums[0] = self.field.one();
        for mask in 1u32..(1u32 << n) {
            let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let k = idx.len();
            sums[k] = &sums[k] + &self.submatrix(&idx, &idx).det();
        }
        let coeffs = (0..=n)
            .map(|deg| {
                let k = n - deg;
                if k % 2 == 0 {
                    sums[k].clone()
                } else {
                    -&sums[k]
                }
            })
            .collect();
        Poly::from_coeffs(self.field, coeffs).expect("same field")
    }
}

fn check_index(n: usize, i: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::BadIndices(i, i, n));
    }
    Ok(())
}

fn check_pair(n: usize, i: usize, j: usize) -> Result<()> {
    if i == 0 || j == 0 || i > n || j > n || i == j {
        return Err(Error::BadIndices(i, j, n));
    }
    Ok(())
}

/// Elementary transvection `t_ij(a) = e + a e^{ij}`.
pub fn t(n: usize, i: usize, j: usize, a: &Scalar) -> Result<Mat> {
    check_pair(n, i, j)?;
    let mut m = Mat::identity(a.field(), n);
    m.set(i - 1, j - 1, a.clone());
    Ok(m)
}

/// `d_i(a) = e + (a-1) e^{ii}`.
pub fn d(n: usize, i: usize, a: &Scalar) -> Result<Mat> {
    check_index(n, i)?;
    if a.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let mut m = Mat::identity(a.field(), n);
    m.set(i - 1, i - 1, a.clone());
    Ok(m)
}

/// `d_ij(a) = e + (a-1) e^{ii} + (a⁻¹-1) e^{jj}`.
pub fn dd(n: usize, i: usize, j: usize, a: &Scalar) -> Result<Mat> {
    check_pair(n, i, j)?;
    if a.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let mut m = Mat::identity(a.field(), n);
    m.set(i - 1, i - 1, a.clone());
    m.set(j - 1, j - 1, a.inv()?);
    Ok(m)
}

/// Permutation matrix `p_ij`.
pub fn perm(field: FieldSpec, n: usize, i: usize, j: usize) -> Result<Mat> {
    check_pair(n, i, j)?;
    let mut m = Mat::identity(field, n);
    m.set(i - 1, i - 1, field.zero());
    m.set(j - 1, j - 1, field.zero());
    m.set(i - 1, j - 1, field.one());
    m.set(j - 1, i - 1, field.one());
    Ok(m)
}

/// Signed permutation `p̂_ij = e + e^{ij} - e^{ji} - e^{ii} - e^{jj}`.
pub fn phat(field: FieldSpec, n: usize, i: usize, j: usize) -> Result<Mat> {
    let mut m = perm(field, n, i, j)?;
    m.set(j - 1, i - 1, -field.one());
    Ok(m)
}

/// A named elementary generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElemGen {
    Transvection(usize, usize, Scalar),
    DiagOne(usize, Scalar),
    DiagPair(usize, usize, Scalar),
    Perm(usize, usize),
    SignedPerm(usize, usize),
}

impl ElemGen {
    pub fn to_mat(&self, field: FieldSpec, n: usize) -> Result<Mat> {
        match self {
            ElemGen::Transvection(i, j, a) => t(n, *i, *j, a),
            ElemGen::DiagOne(i, a) => d(n, *i, a),
            ElemGen::DiagPair(i, j, a) => dd(n, *i, *j, a),
            ElemGen::Perm(i, j) => perm(field, n, *i, *j),
            ElemGen::SignedPerm(i, j) => phat(field, n, *i, *j),
        }
    }
}

/// Reads a matrix of the form `t_kl(c)` back as 1-based `(k, l, c)`.
pub fn as_transvection(m: &Mat) -> Option<(usize, usize, Scalar)> {
    let mut found = None;
    for i in 0..m.n() {
        for j in 0..m.n() {
            let x = m.get(i, j);
            if i == j {
                if !x.is_one() {
                    return None;
                }
            } else if !x.is_zero() {
                if found.is_some() {
                    return None;
                }
                found = Some((i + 1, j + 1, x.clone()));
            }
        }
    }
    found
}

/// Returns `ε ∈ SL_n` with `t_ij(a)^ε = t_12(1)`.
///
/// A breadth-first search over index pairs moves `(i, j)` to `(1, 2)` by conjugating
/// with signed permutations; the accumulated parameter `b` is then scaled away by
/// `d_23(b⁻¹)`.
pub fn transvection_normalizer(
    field: FieldSpec,
    i: usize,
    j: usize,
    a: &Scalar,
    n: usize,
) -> Result<Mat> {
    if n < 3 {
        return Err(Error::DimensionTooSmall(n));
    }
    check_pair(n, i, j)?;
    if a.is_zero() {
        return Err(Error::ZeroParameter);
    }
    if a.field() != field {
        return Err(Error::FieldMismatch(field, a.field()));
    }
    let moves: Vec<Mat> = (1..=n)
        .flat_map(|s| (1..=n).filter(move |&u| u != s).map(move |u| (s, u)))
        .map(|(s, u)| phat(field, n, s, u))
        .collect::<Result<_>>()?;

    let mut seen: HashMap<(usize, usize), ()> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert((i, j), ());
    queue.push_back((t(n, i, j, a)?, Mat::identity(field, n)));
    while let Some((cur, eps)) = queue.pop_front() {
        let (k, l, b) = as_transvection(&cur).expect("conjugate of a transvection");
        if (k, l) == (1, 2) {
            let eps = if b.is_one() {
                eps
            } else {
                eps.try_mul(&dd(n, 2, 3, &b.inv()?)?)?
            };
            let check = t(n, i, j, a)?.conj(&eps)?;
            if check != t(n, 1, 2, &field.one())? || !eps.det().is_one() {
                return Err(Error::VerificationFailed("transvection normalizer".into()));
            }
            return Ok(eps);
        }
        for g in &moves {
            let next = cur.conj(g)?;
            let (k2, l2, _) = as_transvection(&next).expect("signed permutation keeps shape");
            if seen.insert((k2, l2), ()).is_none() {
                queue.push_back((next, eps.try_mul(g)?));
            }
        }
    }
    Err(Error::SynthesisFailed("index pair unreachable".into()))
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|x| x.to_string()).collect();
        let w = cells.iter().map(|c| c.len()).max().unwrap_or(1);
        for (r, row) in cells.chunks(self.n).enumerate() {
            if r > 0 {
                writeln!(f)?;
            }
            let line: Vec<String> = row.iter().map(|c| format!("{c:>w$}")).collect();
            write!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat[{}; {}]\n{self}", self.field, self.n)
    }
}

impl Mul<&Mat> for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        self.try_mul(rhs).expect("matrix shape mismatch")
    }
}

impl Mul<Mat> for Mat {
    type Output = Mat;
    fn mul(self, rhs: Mat) -> Mat {
        &self * &rhs
    }
}

impl Mul<&Mat> for Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        &self * rhs
    }
}

impl Add<&Mat> for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        self.check(rhs).expect("matrix shape mismatch");
        Mat {
            n: self.n,
            field: self.field,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&Mat> for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        self.check(rhs).expect("matrix shape mismatch");
        Mat {
            n: self.n,
            field: self.field,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;
    const F2: FieldSpec = FieldSpec::Prime(2);
    const F7: FieldSpec = FieldSpec::Prime(7);

    fn s(f: FieldSpec, v: i64) -> Scalar {
        f.from_i64(v)
    }

    #[test]
    fn basic_arithmetic_examples() {
        assert!(phat(Q, 3, 1, 2).unwrap().det().is_one());
        let t1 = t(3, 1, 2, &s(Q, 1)).unwrap();
        assert_eq!(&t1 * &t1, t(3, 1, 2, &s(Q, 2)).unwrap());
        let d13 = dd(3, 1, 3, &s(Q, -1)).unwrap();
        assert_eq!(d13.inv().unwrap(), d13);
    }

    #[test]
    fn inverse_and_det() {
        let m = Mat::from_ints(Q, &[&[2, 1, 0], &[1, 3, 4], &[0, 5, 6]]);
        assert_eq!(m.det(), s(Q, 2 * (18 - 20) - (6)));
        let inv = m.inv().unwrap();
        assert!((&m * &inv).is_identity());
        let sing = Mat::from_ints(Q, &[&[1, 2], &[2, 4]]);
        assert_eq!(sing.inv(), Err(Error::Singular));
        assert!(sing.det().is_zero());
        // zero pivot forces a swap
        let p = Mat::from_ints(F7, &[&[0, 1, 2], &[3, 0, 1], &[1, 2, 0]]);
        assert!((&p * &p.inv().unwrap()).is_identity());
    }

    #[test]
    fn commutator_examples() {
        let (a, b) = (s(Q, 3), s(Q, -5));
        let c = Mat::commutator(&t(3, 1, 2, &a).unwrap(), &t(3, 2, 3, &b).unwrap()).unwrap();
        assert_eq!(c, t(3, 1, 3, &(&a * &b)).unwrap());
        let c = Mat::commutator(&t(4, 1, 2, &a).unwrap(), &t(4, 3, 4, &b).unwrap()).unwrap();
        assert!(c.is_identity());
        let g = Mat::from_ints(Q, &[&[2, 1, 0], &[1, 3, 4], &[0, 5, 6]]);
        assert!(Mat::commutator(&Mat::identity(Q, 3), &g).unwrap().is_identity());
    }

    #[test]
    fn generator_determinants() {
        let a = s(Q, 5);
        assert!(t(3, 2, 1, &a).unwrap().det().is_one());
        assert!(dd(3, 1, 3, &a).unwrap().det().is_one());
        assert!(phat(Q, 4, 2, 4).unwrap().det().is_one());
        assert_eq!(d(3, 2, &a).unwrap().det(), a);
        assert_eq!(perm(Q, 3, 1, 3).unwrap().det(), s(Q, -1));
        assert_eq!(d(3, 2, &s(Q, 0)), Err(Error::ZeroParameter));
        assert!(matches!(t(3, 2, 2, &a), Err(Error::BadIndices(..))));
    }

    #[test]
    fn charpoly_examples() {
        let p = Poly::from_ints(Q, &[2, 0, 0, 1]);
        assert_eq!(Mat::companion(&p).unwrap().charpoly_minors(), p);
        let x1 = Poly::from_ints(Q, &[-1, 1]);
        assert_eq!(Mat::identity(Q, 4).charpoly_minors(), x1.pow(4));
        let sigma = Mat::from_ints(F2, &[&[0, 1, 1, 0], &[0, 1, 0, 1], &[1, 0, 1, 0], &[0, 1, 0, 0]]);
        assert_eq!(sigma.charpoly_minors(), Poly::from_ints(F2, &[1, 0, 1, 0, 1]));
        let tau = Mat::from_ints(F2, &[&[0, 0, 1, 1], &[0, 1, 0, 1], &[1, 0, 1, 0], &[0, 1, 0, 0]]);
        assert_eq!(&t(4, 1, 2, &s(F2, 1)).unwrap() * &tau, sigma);
    }

    #[test]
    fn companion_det_sign() {
        // det [P] = (-1)^n a_0
        let p = Poly::from_ints(Q, &[2, -1, 0, 1]);
        assert_eq!(Mat::companion(&p).unwrap().det(), s(Q, -2));
        let p4 = Poly::from_ints(Q, &[2, 0, 0, 0, 1]);
        assert_eq!(Mat::companion(&p4).unwrap().det(), s(Q, 2));
    }

    #[test]
    fn jordan_block_shape() {
        let p = Poly::from_ints(Q, &[1, 0, 1]);
        let j = Mat::jordan_block(&p, 2).unwrap();
        assert!(j.get(2, 1).is_one());
        assert!(j.get(3, 2).is_one());
        assert_eq!(j.charpoly_minors(), p.pow(2));
    }

    #[test]
    fn normalizer_examples() {
        let one = s(Q, 1);
        assert!(transvection_normalizer(Q, 1, 2, &one, 3).unwrap().is_identity());
        let e = transvection_normalizer(Q, 3, 2, &one, 3).unwrap();
        assert_eq!(t(3, 3, 2, &one).unwrap().conj(&e).unwrap(), t(3, 1, 2, &one).unwrap());
        assert!(e.det().is_one());
        let five = s(F7, 5);
        let e = transvection_normalizer(F7, 1, 2, &five, 3).unwrap();
        assert_eq!(e, dd(3, 2, 3, &five.inv().unwrap()).unwrap());
        assert_eq!(
            transvection_normalizer(Q, 1, 2, &s(Q, 0), 3),
            Err(Error::ZeroParameter)
        );
    }

    #[test]
    fn normalizer_all_pairs() {
        for n in 3..=5 {
            for i in 1..=n {
                for j in 1..=n {
                    if i == j {
                        continue;
                    }
                    let a = s(F7, 3);
                    let e = transvection_normalizer(F7, i, j, &a, n).unwrap();
                    assert_eq!(
                        t(n, i, j, &a).unwrap().conj(&e).unwrap(),
                        t(n, 1, 2, &s(F7, 1)).unwrap()
                    );
                }
            }
        }
    }
}
