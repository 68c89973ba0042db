//! One PASS/FAIL line per acceptance criterion. Runs without the libtest harness so
//! the lines always reach stdout; exits nonzero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::*;
use conjclass::classify::{classify_m_n3, Verdict};
use conjclass::matrix::t;
use conjclass::normal_forms::{frobenius_form, invariant_factors, smith_normal_form, PolyMat};
use conjclass::oracle::{sweep, GroupTable, DEFAULT_TABLE_CAP};
use conjclass::stable::{pad_rule, stable_frobenius, stable_m, StableElement};
use conjclass::witness::evaluate;
use conjclass::{classify, verify_witness, witness, FieldSpec, Mat, Poly};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_exhaustive_n3() -> Outcome {
    let mut total = 0;
    for p in [2, 3] {
        let s = sweep(FieldSpec::Prime(p), 3, DEFAULT_TABLE_CAP).map_err(|e| e.to_string())?;
        for r in &s.rows {
            let m = r.classifier.verdict.exact_m();
            check(r.agreement && m == Some(r.verdict.m_min), || {
                format!("F{p}: class {} classifier {:?} oracle {:?}", r.class_id, r.classifier.verdict, r.verdict)
            })?;
            check(r.verdict.m_min <= 2, || format!("F{p}: class {} has m = {}", r.class_id, r.verdict.m_min))?;
        }
        total += s.rows.len();
    }
    Ok(format!("{total} noncentral E-classes over F2, F3 agree, all m <= 2"))
}

fn c2_f5_sharpness() -> Outcome {
    let f5 = FieldSpec::Prime(5);
    let c = comp(f5, &[2, -1, 0, 1]);
    let r = classify_m_n3(&c).map_err(|e| e.to_string())?;
    check(r.verdict.exact_m() == Some(4) && r.case_tag == "n3-v", || format!("classifier {:?}", r))?;
    let table = GroupTable::new(f5, 3, DEFAULT_TABLE_CAP).map_err(|e| e.to_string())?;
    let id = table.class_of(&c).map_err(|e| e.to_string())?;
    let v = table.minimal_m(id).map_err(|e| e.to_string())?;
    check(v.m_min == 4, || format!("oracle m_min = {}", v.m_min))?;
    for bits in 0..8u32 {
        let pat: Vec<(u32, i8)> = (0..3).map(|k| (id, if bits >> k & 1 == 0 { 1 } else { -1 })).collect();
        check(!table.product_contains_t(&pat), || format!("length-3 pattern {pat:?} hits"))?;
    }
    Ok(format!(
        "classifier Exact(4) n3-v, oracle m_min = 4, no length-3 hit, class size {}",
        table.classes()[id as usize].size
    ))
}

fn c3_f2_n4_example() -> Outcome {
    let f2 = FieldSpec::Prime(2);
    let sigma = Mat::from_ints(f2, &[&[0, 1, 1, 0], &[0, 1, 0, 1], &[1, 0, 1, 0], &[0, 1, 0, 0]]);
    let tau = Mat::from_ints(f2, &[&[0, 0, 1, 1], &[0, 1, 0, 1], &[1, 0, 1, 0], &[0, 1, 0, 0]]);
    let want = Poly::from_ints(f2, &[1, 0, 1, 0, 1]);
    let fs = frobenius_form(&sigma).map_err(|e| e.to_string())?;
    let ft = frobenius_form(&tau).map_err(|e| e.to_string())?;
    check(fs.invariant_factors == vec![want.clone()] && ft.invariant_factors == vec![want.clone()], || {
        format!("F(σ) = {:?}, F(τ) = {:?}", fs.invariant_factors, ft.invariant_factors)
    })?;
    check(fs.form == Mat::companion(&want).unwrap() && fs.form == ft.form, || "Frobenius forms differ".into())?;
    let prod = &sigma * &tau.inv().unwrap();
    check(prod == t(4, 1, 2, &f2.one()).unwrap(), || format!("σ τ⁻¹ = {prod:?}"))?;
    let table = GroupTable::new(f2, 4, DEFAULT_TABLE_CAP).map_err(|e| e.to_string())?;
    let v = table.minimal_m(table.class_of(&sigma).unwrap()).map_err(|e| e.to_string())?;
    check(v.m_min == 2 && v.realizing_patterns.contains(&vec![1, -1]), || format!("oracle {v:?}"))?;
    Ok("F(σ) = F(τ) = [X^4+X^2+1], σ τ⁻¹ = t_12(1), oracle m_min = 2 with (+,-)".into())
}

fn c4_rational_witnesses() -> Outcome {
    for c0 in [2, -2] {
        let c = comp(Q, &[c0, 0, 0, 1]);
        let r = classify(&c).map_err(|e| e.to_string())?;
        check(r.verdict.exact_m() == Some(4), || format!("X^3 + {c0}: verdict {:?}", r.verdict))?;
        let w = witness(&c).map_err(|e| e.to_string())?;
        check(w.len() == 4 && verify_witness(&w), || format!("X^3 + {c0}: witness fails"))?;
        check(w.factors.iter().all(|(_, h)| h.det().is_one()), || "conjugator not in SL".into())?;
        let p = evaluate(&c, &w.factors).unwrap();
        check(p == t(3, 1, 2, &Q.one()).unwrap(), || format!("product {p:?}"))?;
    }
    Ok("companion(X^3+2), companion(X^3-2): Exact(4), verified length-4 witnesses in SL_3(Q)".into())
}

fn c5_soundness_sweep() -> Outcome {
    let configs = [
        (FieldSpec::Prime(2), 3),
        (FieldSpec::Prime(3), 3),
        (FieldSpec::Prime(5), 3),
        (FieldSpec::Prime(2), 4),
        (Q, 3),
    ];
    let mut by_len = [0usize; 5];
    for (k, (f, n)) in configs.into_iter().enumerate() {
        let mut r = rng(0xC5 + k as u64);
        for i in 0..100 {
            let s = noncentral(f, n, &mut r);
            let rep = classify(&s).map_err(|e| format!("{f} n={n} #{i}: {e}"))?;
            let w = witness(&s).map_err(|e| format!("{f} n={n} #{i}: {e} on {s:?}"))?;
            check(verify_witness(&w), || format!("{f} n={n} #{i}: witness does not verify"))?;
            let ok = match rep.verdict {
                Verdict::Exact { m, .. } => w.len() == m,
                Verdict::Bounds { lower, upper, .. } => (lower..=upper).contains(&w.len()),
            };
            check(ok, || format!("{f} n={n} #{i}: length {} vs {:?}", w.len(), rep.verdict))?;
            by_len[w.len()] += 1;
        }
    }
    Ok(format!(
        "500 witnesses verified; lengths 1/2/3/4: {}/{}/{}/{}",
        by_len[1], by_len[2], by_len[3], by_len[4]
    ))
}

fn c6_normal_forms() -> Outcome {
    let fields = [Q, FieldSpec::Prime(2), FieldSpec::Prime(3), FieldSpec::Prime(5), FieldSpec::Prime(7)];
    let mut r = rng(0xC6);
    for i in 0..500 {
        let f = fields[i % fields.len()];
        let n = 1 + (i / fields.len()) % 6;
        let s = structured(f, n, &mut r);
        let a = PolyMat::char_matrix(&s);
        let snf = smith_normal_form(&a);
        check(snf.u.mul(&a).mul(&snf.v) == snf.d, || format!("#{i}: U A V != D"))?;
        for u in [&snf.u, &snf.v] {
            let d = u.det();
            check(d.is_constant() && !d.is_zero(), || format!("#{i}: transform not unimodular"))?;
        }
        check(snf.d.is_diagonal(), || format!("#{i}: D not diagonal"))?;
        for w in snf.diag.windows(2) {
            check(w[0].divides(&w[1]), || format!("#{i}: divisibility chain broken"))?;
        }
        let fd = frobenius_form(&s).map_err(|e| format!("#{i}: {e}"))?;
        let prod = fd.invariant_factors.iter().fold(Poly::one(f), |acc, p| &acc * p);
        check(prod == s.charpoly_minors(), || format!("#{i}: ∏ invariant factors != charpoly"))?;
        let back = &(&fd.transform.inv().unwrap() * &s) * &fd.transform;
        check(back == fd.form, || format!("#{i}: P⁻¹σP != F(σ)"))?;
    }
    Ok("500 random matrices, n <= 6, over Q, F2, F3, F5, F7".into())
}

fn c7_stable() -> Outcome {
    let fields = [Q, FieldSpec::Prime(2), FieldSpec::Prime(3), FieldSpec::Prime(5)];
    let mut r = rng(0xC7);
    for i in 0..100 {
        let f = fields[i % fields.len()];
        let n = 1 + i % 4;
        let s = invertible(f, n, &mut r);
        let mut cur = invariant_factors(&s);
        for k in 1..=4 {
            cur = pad_rule(&cur, f).map_err(|e| e.to_string())?;
            let direct = invariant_factors(&s.pad(k));
            check(cur == direct, || format!("#{i} k={k}: pad_rule {cur:?} vs direct {direct:?}"))?;
        }
    }
    let tt = StableElement::new(&t(2, 1, 2, &Q.one()).unwrap()).unwrap();
    let x1 = Poly::from_ints(Q, &[-1, 1]);
    let sf = stable_frobenius(&tt).unwrap();
    check(sf.invariant_factors == vec![x1.pow(2)], || format!("F(T) = {:?}", sf.invariant_factors))?;
    let c = comp(Q, &[2, 0, 0, 1]);
    let finite = classify(&c).unwrap().verdict.exact_m();
    let st = stable_m(&StableElement::new(&c).unwrap()).map_err(|e| e.to_string())?;
    check(finite == Some(4), || format!("finite verdict {finite:?}"))?;
    check(st.report.verdict.exact_m() == Some(2) && verify_witness(&st.witness), || "stable witness".into())?;
    Ok(format!(
        "pad_rule^k matches direct SNF for k <= 4 on 100 samples; F(T) = [(X-1)^2]; X^3+2: finite m = 4, stable m = 2 (witness in dim {})",
        st.witness.sigma.n()
    ))
}

fn c8_split_charpoly() -> Outcome {
    let mut count = 0;
    for p in [2, 3, 5, 7] {
        let f = FieldSpec::Prime(p);
        for n in 3..=5 {
            let mut r = rng(0xC8 * 100 + p as u64 * 10 + n as u64);
            for i in 0..25 {
                let s = split(f, n, &mut r);
                let rep = classify(&s).map_err(|e| e.to_string())?;
                check(rep.verdict.upper() <= 2, || format!("F{p} n={n} #{i}: {:?}", rep.verdict))?;
                let w = witness(&s).map_err(|e| format!("F{p} n={n} #{i}: {e}"))?;
                check(w.len() <= 2 && verify_witness(&w), || format!("F{p} n={n} #{i}: witness"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} split-charpoly matrices over F2..F7, n = 3..5: verdict <= 2, verified witness of length <= 2"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("exhaustive n=3 classifier/oracle agreement over F2, F3", c1_exhaustive_n3),
        ("F5 sharpness for companion(X^3-X+2)", c2_f5_sharpness),
        ("F2 n=4 counterexample", c3_f2_n4_example),
        ("rational length-4 witnesses", c4_rational_witnesses),
        ("witness soundness sweep", c5_soundness_sweep),
        ("normal-form property suite", c6_normal_forms),
        ("stable layer", c7_stable),
        ("split characteristic polynomial", c8_split_charpoly),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS [{name}] {detail} ({secs:.1}s)", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL [{name}] {detail} ({secs:.1}s)", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
