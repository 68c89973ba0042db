//! The stable group `GL_∞(K)`: elements up to top-left identity padding
//! `σ ↦ e_k ⊕ σ`.

use crate::classify::{MReport, Verdict, PATTERN_ROOT, PATTERN_T};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::Mat;
use crate::normal_forms::invariant_factors;
use crate::poly::Poly;
use crate::witness::{witness_m1, witness_root, Witness};

/// A stable element, stored through its smallest representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableElement {
    /// The representative of dimension `n_min`.
    pub rep: Mat,
    pub n_min: usize,
}

impl StableElement {
    /// Strips the maximal leading identity block of `m`.
    pub fn new(m: &Mat) -> Result<Self> {
        if m.det().is_zero() {
            return Err(Error::Singular);
        }
        let n = m.n();
        let mut k = 0;
        'outer: while k < n {
            for j in 0..n {
                let want_one = j == k;
                let (r, c) = (m.get(k, j), m.get(j, k));
                if want_one {
                    if !r.is_one() {
                        break 'outer;
                    }
                } else if !r.is_zero() || !c.is_zero() {
                    break 'outer;
                }
            }
            k += 1;
        }
        let n_min = n - k;
        let idx: Vec<usize> = (k..n).collect();
        let rep = if n_min == 0 {
            Mat::identity(m.field(), 0)
        } else {
            m.submatrix(&idx, &idx)
        };
        Ok(StableElement { rep, n_min })
    }

    pub fn is_central(&self) -> bool {
        self.n_min == 0
    }

    /// `σ^{(n)} = e_{n - n_min} ⊕ rep`.
    pub fn at(&self, n: usize) -> Result<Mat> {
        if n < self.n_min {
            return Err(Error::DimensionMismatch(n, self.n_min));
        }
        Ok(self.rep.pad(n - self.n_min))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableFrobenius {
    /// Stabilized invariant factors with the leading `X-1` entries removed.
    pub invariant_factors: Vec<Poly>,
    /// Number of paddings after `n_min` from which the form is constant.
    pub stabilization_index: usize,
}

fn check_chain(factors: &[Poly]) -> Result<()> {
    for p in factors {
        if p.is_constant() || !p.is_monic() {
            return Err(Error::BrokenChain);
        }
    }
    for w in factors.windows(2) {
        if !w[0].divides(&w[1]) {
            return Err(Error::BrokenChain);
        }
    }
    Ok(())
}

/// Invariant factors of `1 ⊕ σ` from those of `σ`: `P_i` becomes `P_i (X-1)` for the
/// least `i` with `P_i (X-1) | P_{i+1}`, where `P_0 = 1` and `P_{r+1} = P_r (X-1)`.
/// For `i = 0` this prepends `X-1`.
pub fn pad_rule(factors: &[Poly], field: FieldSpec) -> Result<Vec<Poly>> {
    check_chain(factors)?;
    let x1 = Poly::linear(&field.one());
    let r = factors.len();
    let p = |j: usize| -> Poly {
        if j == 0 {
            Poly::one(field)
        } else if j <= r {
            factors[j - 1].clone()
        } else {
            &factors[r - 1] * &x1
        }
    };
    let i = (0..=r)
        .find(|&j| (&p(j) * &x1).divides(&p(j + 1)))
        .expect("j = r always qualifies");
    let mut out = factors.to_vec();
    if i == 0 {
        out.insert(0, x1);
    } else {
        out[i - 1] = &out[i - 1] * &x1;
    }
    Ok(out)
}

fn strip_leading(factors: &[Poly]) -> Vec<Poly> {
    let Some(first) = factors.first() else {
        return Vec::new();
    };
    let x1 = Poly::linear(&first.field().one());
    factors.iter().skip_while(|p| **p == x1).cloned().collect()
}

pub fn stable_frobenius(x: &StableElement) -> Result<StableFrobenius> {
    if x.is_central() {
        return Ok(StableFrobenius {
            invariant_factors: Vec::new(),
            stabilization_index: 0,
        });
    }
    if x.rep.det().is_zero() {
        return Err(Error::Singular);
    }
    let field = x.rep.field();
    let mut cur = invariant_factors(&x.rep);
    let mut s = 0;
    loop {
        let next = pad_rule(&cur, field)?;
        if strip_leading(&next) == strip_leading(&cur) {
            break;
        }
        cur = next;
        s += 1;
    }
    Ok(StableFrobenius {
        invariant_factors: strip_leading(&cur),
        stabilization_index: s,
    })
}

pub fn stable_is_similar(x: &StableElement, y: &StableElement) -> Result<bool> {
    if x.rep.field() != y.rep.field() {
        return Err(Error::FieldMismatch(x.rep.field(), y.rep.field()));
    }
    Ok(stable_frobenius(x)?.invariant_factors == stable_frobenius(y)?.invariant_factors)
}

#[derive(Clone, Debug)]
pub struct StableReport {
    pub frobenius: StableFrobenius,
    pub n_min: usize,
    pub report: MReport,
    /// A finite witness in dimension `witness.sigma.n()`.
    pub witness: Witness,
}

/// `m = 1` on the transvection class and `m = 2` otherwise, with a finite witness
/// in dimension `max(n_min + 1, 3)`, where the padded representative has the root 1.
pub fn stable_m(x: &StableElement) -> Result<StableReport> {
    if x.is_central() {
        return Err(Error::CentralElement);
    }
    let frob = stable_frobenius(x)?;
    let field = x.rep.field();
    let x1 = Poly::linear(&field.one());
    let (report, witness) = if frob.invariant_factors == [x1.pow(2)] {
        let n = x.n_min.max(3);
        let w = witness_m1(&x.at(n)?)?;
        let r = MReport {
            verdict: Verdict::Exact {
                m: 1,
                sign_pattern: PATTERN_T.to_vec(),
            },
            case_tag: "stable-t".into(),
            rationale: "stable Frobenius form is [(X-1)^2], so C = T".into(),
        };
        (r, w)
    } else {
        let n = (x.n_min + 1).max(3);
        let w = witness_root(&x.at(n)?, &field.one())?;
        let r = MReport {
            verdict: Verdict::Exact {
                m: 2,
                sign_pattern: PATTERN_ROOT.to_vec(),
            },
            case_tag: "stable-root".into(),
            rationale: "C != T, and a padded representative has the root 1, so T lies in C C^-1".into(),
        };
        (r, w)
    };
    let mut witness = witness;
    witness.case = report.case_tag.clone();
    Ok(StableReport {
        frobenius: frob,
        n_min: x.n_min,
        report,
        witness,
    })
}
