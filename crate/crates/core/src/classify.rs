//! Class descriptors and the verdict on `m(C)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Mat;
use crate::normal_forms::invariant_factors;
use crate::poly::{Irreducibility, Poly};

/// Sign `+1` or `-1` of a factor `C^{±1}`.
pub type Sign = i8;

#[derive(Clone, Debug)]
pub struct ClassDescriptor {
    pub n: usize,
    pub field: FieldSpec,
    pub invariant_factors: Vec<Poly>,
    pub charpoly: Poly,
    pub det: Scalar,
    pub trace: Scalar,
    pub is_transvection_class: bool,
}

impl ClassDescriptor {
    pub fn roots(&self) -> Vec<Scalar> {
        self.charpoly.roots().expect("charpoly is nonzero")
    }
}

/// True iff the invariant factors are `X-1, …, X-1, (X-1)^2`.
pub fn is_transvection_chain(factors: &[Poly], n: usize) -> bool {
    let Some((last, rest)) = factors.split_last() else {
        return false;
    };
    let field = last.field();
    let x1 = Poly::linear(&field.one());
    rest.len() + 2 == n && rest.iter().all(|p| *p == x1) && *last == x1.pow(2)
}

pub fn describe_class(sigma: &Mat) -> Result<ClassDescriptor> {
    let n = sigma.n();
    if n < 3 {
        return Err(Error::DimensionTooSmall(n));
    }
    let det = sigma.det();
    if det.is_zero() {
        return Err(Error::Singular);
    }
    if sigma.is_scalar() {
        return Err(Error::CentralMatrix);
    }
    let factors = invariant_factors(sigma);
    let charpoly = factors
        .iter()
        .fold(Poly::one(sigma.field()), |acc, p| &acc * p);
    Ok(ClassDescriptor {
        n,
        field: sigma.field(),
        is_transvection_class: is_transvection_chain(&factors, n),
        invariant_factors: factors,
        charpoly,
        det,
        trace: sigma.trace(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExcludedPattern {
    pub pattern: Vec<Sign>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Exact {
        m: usize,
        sign_pattern: Vec<Sign>,
    },
    Bounds {
        lower: usize,
        upper: usize,
        excluded_patterns: Vec<ExcludedPattern>,
        irreducibility_unknown: bool,
    },
}

impl Verdict {
    pub fn exact_m(&self) -> Option<usize> {
        match self {
            Verdict::Exact { m, .. } => Some(*m),
            Verdict::Bounds { .. } => None,
        }
    }

    pub fn lower(&self) -> usize {
        match self {
            Verdict::Exact { m, .. } => *m,
            Verdict::Bounds { lower, .. } => *lower,
        }
    }

    pub fn upper(&self) -> usize {
        match self {
            Verdict::Exact { m, .. } => *m,
            Verdict::Bounds { upper, .. } => *upper,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MReport {
    pub verdict: Verdict,
    pub case_tag: String,
    pub rationale: String,
}

fn exact(m: usize, pattern: &[Sign], tag: &str, why: &str) -> MReport {
    MReport {
        verdict: Verdict::Exact {
            m,
            sign_pattern: pattern.to_vec(),
        },
        case_tag: tag.into(),
        rationale: why.into(),
    }
}

pub const PATTERN_T: [Sign; 1] = [1];
pub const PATTERN_ROOT: [Sign; 2] = [1, -1];
pub const PATTERN_SQUARE: [Sign; 2] = [1, 1];
pub const PATTERN_CUBE: [Sign; 3] = [1, 1, 1];
pub const PATTERN_FOUR: [Sign; 4] = [1, -1, 1, -1];

fn is_one(x: &Scalar) -> bool {
    x.is_one()
}

/// The exact verdict for `n = 3`, by root, `det^2` and `det^3`.
pub fn classify_m_n3(sigma: &Mat) -> Result<MReport> {
    if sigma.n() != 3 {
        return Err(Error::WrongDimension {
            expected: 3,
            got: sigma.n(),
        });
    }
    let cd = describe_class(sigma)?;
    Ok(classify_n3_desc(&cd))
}

fn classify_n3_desc(cd: &ClassDescriptor) -> MReport {
    let det = &cd.det;
    if cd.is_transvection_class {
        return exact(1, &PATTERN_T, "n3-i", "C = T, so m(C) = 1");
    }
    if !cd.roots().is_empty() {
        return exact(
            2,
            &PATTERN_ROOT,
            "n3-ii",
            "charpoly has a root in K and C != T, so T lies in C C^-1 but not in C",
        );
    }
    let d2 = det * det;
    if is_one(&d2) {
        return exact(
            2,
            &PATTERN_SQUARE,
            "n3-iii",
            "charpoly has no root (hence irreducible) and det^2 = 1, so T lies in C C",
        );
    }
    if is_one(&(&d2 * det)) {
        return exact(
            3,
            &PATTERN_CUBE,
            "n3-iv",
            "irreducible charpoly, det^2 != 1 and det^3 = 1, so T lies in C C C",
        );
    }
    exact(
        4,
        &PATTERN_FOUR,
        "n3-v",
        "irreducible charpoly, det^2 != 1 and det^3 != 1, so m(C) = 4",
    )
}

fn all_patterns(len: usize) -> Vec<Vec<Sign>> {
    (0..1u32 << len)
        .map(|bits| {
            (0..len)
                .map(|k| if bits >> (len - 1 - k) & 1 == 0 { 1 } else { -1 })
                .collect()
        })
        .collect()
}

/// Verdict for any `n >= 3` using only the general results: exact where proven,
/// otherwise an interval with the sign patterns that are ruled out.
pub fn classify_m_general(sigma: &Mat) -> Result<MReport> {
    let cd = describe_class(sigma)?;
    classify_general_desc(&cd)
}

fn classify_general_desc(cd: &ClassDescriptor) -> Result<MReport> {
    if cd.is_transvection_class {
        return Ok(exact(1, &PATTERN_T, "gen-transvection", "C = T, so m(C) = 1"));
    }
    if !cd.roots().is_empty() {
        return Ok(exact(
            2,
            &PATTERN_ROOT,
            "gen-root",
            "charpoly has a root in K and C != T, so T lies in C C^-1",
        ));
    }
    let irr = cd.charpoly.irreducibility()?;
    let det = &cd.det;
    let d2 = det * det;
    let sq_one = is_one(&d2);
    let cube_one = is_one(&(&d2 * det));
    if irr == Irreducibility::Irreducible && !sq_one && !cube_one {
        return Ok(exact(
            4,
            &PATTERN_FOUR,
            "gen-eisenstein-4",
            "irreducible charpoly with det^2 != 1 and det^3 != 1, so m(C) = 4",
        ));
    }
    let mut excluded = Vec::new();
    if irr == Irreducibility::Irreducible {
        for p in [vec![1, -1], vec![-1, 1]] {
            excluded.push(ExcludedPattern {
                pattern: p,
                reason: "irreducible charpoly (and its reciprocal) rules out C C^-1 and C^-1 C".into(),
            });
        }
    }
    if !sq_one {
        for p in [vec![1, 1], vec![-1, -1]] {
            excluded.push(ExcludedPattern {
                pattern: p,
                reason: "det^2 != 1".into(),
            });
        }
    }
    if !cube_one {
        for p in all_patterns(3) {
            excluded.push(ExcludedPattern {
                pattern: p,
                reason: "det^3 != 1".into(),
            });
        }
    }
    let len2_excluded = excluded.iter().filter(|e| e.pattern.len() == 2).count();
    let lower = if len2_excluded == 4 { 3 } else { 2 };
    let unknown = irr == Irreducibility::Unknown;
    let mut rationale = String::from("m(C) is at least 2 since C != T and at most 4 for every noncentral class");
    if unknown {
        rationale.push_str("; irreducibility of the charpoly is undecided by the available tests");
    }
    Ok(MReport {
        verdict: Verdict::Bounds {
            lower,
            upper: 4,
            excluded_patterns: excluded,
            irreducibility_unknown: unknown,
        },
        case_tag: "gen-bounds".into(),
        rationale,
    })
}

/// Exact `n = 3` verdict when `n = 3`, the general verdict otherwise.
pub fn classify(sigma: &Mat) -> Result<MReport> {
    let cd = describe_class(sigma)?;
    if cd.n == 3 {
        Ok(classify_n3_desc(&cd))
    } else {
        classify_general_desc(&cd)
    }
}
