#![allow(dead_code)]

use conjclass::matrix::t;
use conjclass::{FieldSpec, Mat, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const Q: FieldSpec = FieldSpec::Rationals;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform over `F_p`, or an integer in `[-3, 3]` over `Q`.
pub fn scalar(field: FieldSpec, r: &mut ChaCha8Rng) -> Scalar {
    match field {
        FieldSpec::Prime(p) => field.from_i64(r.gen_range(0..p as i64)),
        FieldSpec::Rationals => field.from_i64(r.gen_range(-3..=3)),
    }
}

pub fn nonzero(field: FieldSpec, r: &mut ChaCha8Rng) -> Scalar {
    loop {
        let x = scalar(field, r);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn matrix(field: FieldSpec, n: usize, r: &mut ChaCha8Rng) -> Mat {
    let rows = (0..n).map(|_| (0..n).map(|_| scalar(field, r)).collect()).collect();
    Mat::from_rows(field, rows).unwrap()
}

pub fn invertible(field: FieldSpec, n: usize, r: &mut ChaCha8Rng) -> Mat {
    loop {
        let m = matrix(field, n, r);
        if !m.det().is_zero() {
            return m;
        }
    }
}

pub fn noncentral(field: FieldSpec, n: usize, r: &mut ChaCha8Rng) -> Mat {
    loop {
        let m = invertible(field, n, r);
        if !m.is_scalar() {
            return m;
        }
    }
}

/// A product of a few random transvections; keeps rational entries small.
pub fn sl_walk(field: FieldSpec, n: usize, steps: usize, r: &mut ChaCha8Rng) -> Mat {
    let mut g = Mat::identity(field, n);
    for _ in 0..steps {
        let i = r.gen_range(1..=n);
        let mut j = r.gen_range(1..=n);
        while j == i {
            j = r.gen_range(1..=n);
        }
        let a = match field {
            FieldSpec::Rationals => field.from_i64(if r.gen_bool(0.5) { 1 } else { -1 }),
            _ => nonzero(field, r),
        };
        g = &g * &t(n, i, j, &a).unwrap();
    }
    g
}

/// Random matrix with more varied similarity type than a uniform draw: half the
/// time a block-diagonal matrix with a repeated block, conjugated.
pub fn structured(field: FieldSpec, n: usize, r: &mut ChaCha8Rng) -> Mat {
    if n < 2 || r.gen_bool(0.5) {
        return matrix(field, n, r);
    }
    let k = r.gen_range(1..=n / 2);
    let b = matrix(field, k, r);
    let mut blocks = vec![b.clone(), b];
    let rest = n - 2 * k;
    if rest > 0 {
        blocks.push(matrix(field, rest, r));
    }
    let m = Mat::block_diag(&blocks).unwrap();
    let g = sl_walk(field, n, 2 * n, r);
    m.conj(&g).unwrap()
}

pub fn structured_invertible(field: FieldSpec, n: usize, r: &mut ChaCha8Rng) -> Mat {
    loop {
        let m = structured(field, n, r);
        if !m.det().is_zero() && !m.is_scalar() {
            return m;
        }
    }
}

/// Random upper-triangular invertible matrix conjugated by a random invertible one:
/// its characteristic polynomial splits.
pub fn split(field: FieldSpec, n: usize, r: &mut ChaCha8Rng) -> Mat {
    loop {
        let mut m = Mat::zero(field, n);
        for i in 0..n {
            m.set(i, i, nonzero(field, r));
            for j in i + 1..n {
                if r.gen_bool(0.5) {
                    m.set(i, j, scalar(field, r));
                }
            }
        }
        if m.is_scalar() {
            continue;
        }
        let g = invertible(field, n, r);
        return m.conj(&g).unwrap();
    }
}

pub fn comp(field: FieldSpec, c: &[i64]) -> Mat {
    Mat::companion(&conjclass::Poly::from_ints(field, c)).unwrap()
}
