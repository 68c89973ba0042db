mod common;

use common::*;
use conjclass::matrix::{d, dd, perm, phat, t, transvection_normalizer};
use conjclass::normal_forms::{elementary_divisors, frobenius_form, is_similar, jordan_form};
use conjclass::stable::{stable_frobenius, StableElement};
use conjclass::{FieldSpec, Irreducibility, Mat, Poly};
use proptest::prelude::*;

const FIELDS: [FieldSpec; 5] = [
    FieldSpec::Rationals,
    FieldSpec::Prime(2),
    FieldSpec::Prime(3),
    FieldSpec::Prime(5),
    FieldSpec::Prime(7),
];

fn field() -> impl Strategy<Value = FieldSpec> {
    (0..FIELDS.len()).prop_map(|i| FIELDS[i])
}

fn prime_field() -> impl Strategy<Value = FieldSpec> {
    (1..FIELDS.len()).prop_map(|i| FIELDS[i])
}

fn poly(f: FieldSpec, deg: usize, r: &mut rand_chacha::ChaCha8Rng) -> Poly {
    let mut c: Vec<_> = (0..deg).map(|_| scalar(f, r)).collect();
    c.push(f.one());
    Poly::from_coeffs(f, c).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms(f in field(), seed: u64) {
        let mut r = rng(seed);
        let (a, b, c) = (scalar(f, &mut r), scalar(f, &mut r), scalar(f, &mut r));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert_eq!(&(&b / &a) * &a, b);
        } else {
            prop_assert!(a.inv().is_err());
        }
    }

    #[test]
    fn divmod_round_trip(f in field(), da in 0usize..7, db in 0usize..5, seed: u64) {
        let mut r = rng(seed);
        let a = poly(f, da, &mut r);
        let b = poly(f, db, &mut r).scale(&nonzero(f, &mut r));
        let (q, rem) = a.divmod(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &rem, a);
        prop_assert!(rem.is_zero() || rem.deg() < b.deg());
    }

    #[test]
    fn roots_match_exhaustive_evaluation(f in prime_field(), deg in 1usize..6, seed: u64) {
        let mut r = rng(seed);
        let p = poly(f, deg, &mut r);
        let mut want: Vec<_> = f.elements().unwrap().filter(|x| p.eval(x).is_zero()).collect();
        let mut got = p.roots().unwrap();
        want.sort();
        got.sort();
        got.dedup();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn irreducibility_is_sound(f in field(), deg in 1usize..6, seed: u64) {
        let mut r = rng(seed);
        let p = poly(f, deg, &mut r);
        match p.irreducibility().unwrap() {
            Irreducibility::Reducible(g) => {
                prop_assert!(g.deg() >= 1 && g.deg() < p.deg());
                prop_assert!(g.divides(&p));
            }
            Irreducibility::Irreducible => {
                prop_assert!(p.deg() == 1 || p.roots().unwrap().is_empty());
                if f.is_finite() {
                    let fac = p.factor().unwrap();
                    prop_assert_eq!(fac.len(), 1);
                    prop_assert_eq!(fac[0].1, 1);
                }
            }
            Irreducibility::Unknown => prop_assert!(!f.is_finite() && p.deg() >= 4),
        }
    }

    #[test]
    fn generator_relations(f in field(), n in 3usize..6, seed: u64) {
        let mut r = rng(seed);
        let a = nonzero(f, &mut r);
        let b = nonzero(f, &mut r);
        let (i, j, k) = (1, 2, 3);
        let one = Mat::identity(f, n);
        // t_ij(a) t_ij(b) = t_ij(a + b)
        let s = &a + &b;
        let lhs = &t(n, i, j, &a).unwrap() * &t(n, i, j, &b).unwrap();
        if s.is_zero() {
            prop_assert_eq!(lhs, one.clone());
        } else {
            prop_assert_eq!(lhs, t(n, i, j, &s).unwrap());
        }
        // [t_ij(a), t_jk(b)] = t_ik(ab)
        let c = Mat::commutator(&t(n, i, j, &a).unwrap(), &t(n, j, k, &b).unwrap()).unwrap();
        prop_assert_eq!(c, t(n, i, k, &(&a * &b)).unwrap());
        // [t_ij(a), t_kl(b)] = e for j != k, i != l
        let c = Mat::commutator(&t(n, 1, 2, &a).unwrap(), &t(n, 1, 3, &b).unwrap()).unwrap();
        prop_assert_eq!(c, one);
        prop_assert!(t(n, i, j, &a).unwrap().det().is_one());
        prop_assert_eq!(d(n, 2, &a).unwrap().det(), a.clone());
        prop_assert!(dd(n, 1, 3, &a).unwrap().det().is_one());
        prop_assert_eq!(perm(f, n, 1, 2).unwrap().det(), -f.one());
        prop_assert!(phat(f, n, 1, 2).unwrap().det().is_one());
    }

    #[test]
    fn normalizer_moves_transvections_to_t12(f in field(), n in 3usize..6, seed: u64) {
        let mut r = rng(seed);
        let i = rand::Rng::gen_range(&mut r, 1..=n);
        let j = loop {
            let j = rand::Rng::gen_range(&mut r, 1..=n);
            if j != i { break j; }
        };
        let a = nonzero(f, &mut r);
        let e = transvection_normalizer(f, i, j, &a, n).unwrap();
        prop_assert!(e.det().is_one());
        prop_assert_eq!(t(n, i, j, &a).unwrap().conj(&e).unwrap(), t(n, 1, 2, &f.one()).unwrap());
    }

    #[test]
    fn similarity_is_an_equivalence(f in field(), n in 1usize..6, seed: u64) {
        let mut r = rng(seed);
        let a = structured(f, n, &mut r);
        let b = a.conj(&invertible(f, n, &mut r)).unwrap();
        let c = b.conj(&invertible(f, n, &mut r)).unwrap();
        prop_assert!(is_similar(&a, &a).unwrap());
        prop_assert!(is_similar(&a, &b).unwrap() && is_similar(&b, &a).unwrap());
        prop_assert!(is_similar(&a, &c).unwrap());
        prop_assert_eq!(frobenius_form(&a).unwrap().form, frobenius_form(&c).unwrap().form);
        let other = structured(f, n, &mut r);
        let same = frobenius_form(&a).unwrap().invariant_factors == frobenius_form(&other).unwrap().invariant_factors;
        prop_assert_eq!(is_similar(&a, &other).unwrap(), same);
    }

    #[test]
    fn jordan_form_regroups_elementary_divisors(f in prime_field(), n in 1usize..6, seed: u64) {
        let mut r = rng(seed);
        let s = structured(f, n, &mut r);
        let jd = jordan_form(&s).unwrap();
        prop_assert_eq!(&jd.elementary_divisors, &elementary_divisors(&s).unwrap());
        let blocks: Vec<Mat> = jd
            .elementary_divisors
            .iter()
            .map(|(p, q)| Mat::jordan_block(p, *q).unwrap())
            .collect();
        let dim: usize = jd.elementary_divisors.iter().map(|(p, q)| p.deg() * q).sum();
        prop_assert_eq!(dim, n);
        prop_assert!(is_similar(&Mat::block_diag(&blocks).unwrap(), &jd.form).unwrap());
        prop_assert_eq!(&(&jd.transform.inv().unwrap() * &s) * &jd.transform, jd.form);
    }

    #[test]
    fn stable_form_ignores_padding(f in field(), n in 1usize..5, k in 0usize..4, seed: u64) {
        let mut r = rng(seed);
        let s = invertible(f, n, &mut r);
        let a = stable_frobenius(&StableElement::new(&s).unwrap()).unwrap();
        let b = stable_frobenius(&StableElement::new(&s.pad(k)).unwrap()).unwrap();
        prop_assert_eq!(&a.invariant_factors, &b.invariant_factors);
        prop_assert!(b.stabilization_index <= a.stabilization_index);
        // the stable form is reached after the reported number of pads
        let x = StableElement::new(&s).unwrap();
        prop_assume!(x.n_min > 0);
        let padded = x.at(x.n_min + a.stabilization_index).unwrap();
        let direct: Vec<Poly> = frobenius_form(&padded)
            .unwrap()
            .invariant_factors
            .into_iter()
            .skip_while(|p| p.deg() == 1 && p.coeff(0) == -f.one())
            .collect();
        prop_assert_eq!(direct, a.invariant_factors);
    }
}
