//! Brute-force ground truth over small `GL_n(F_p)`.
//!
//! Every invertible matrix gets a packed code (entries in base `p`, row-major, least
//! significant first) and a dense table maps codes to `E`-class ids. Products of
//! classes are unions of classes, so the product fold tracks sets of class ids: the
//! classes of `X · C` are the classes of `x · c` for one representative `x` of `X`
//! and all `c ∈ C`.

use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;

use crate::classify::{classify, describe_class, MReport, Sign, Verdict};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Mat;
use crate::normal_forms::invariant_factors;
use crate::poly::Poly;

/// Default cap on `p^(n^2)`, the size of the dense code table.
pub const DEFAULT_TABLE_CAP: u64 = 1 << 22;
/// Default cap on the size of a single enumerated class.
pub const DEFAULT_CLASS_CAP: u64 = 1 << 22;

const MAX_N: usize = 4;
const UNSET: u32 = u32::MAX;
const SINGULAR: u32 = u32::MAX - 1;

type Raw = [u8; MAX_N * MAX_N];

/// Arithmetic on `n × n` matrices over `F_p` with `u8` residues.
#[derive(Clone, Debug)]
struct Small {
    p: u32,
    n: usize,
    field: FieldSpec,
    inv: Vec<u8>,
}

impl Small {
    fn new(field: FieldSpec, n: usize) -> Result<Self> {
        let p = match field {
            FieldSpec::Prime(p) if p < 256 => p,
            _ => {
                return Err(Error::PreconditionViolated(format!(
                    "enumeration needs F_p with p < 256, got {field}"
                )))
            }
        };
        if !(2..=MAX_N).contains(&n) {
            return Err(Error::PreconditionViolated(format!(
                "enumeration supports 2 <= n <= {MAX_N}, got {n}"
            )));
        }
        let mut inv = vec![0u8; p as usize];
        for a in 1..p {
            let b = (1..p).find(|b| a * b % p == 1).expect("p is prime");
            inv[a as usize] = b as u8;
        }
        Ok(Small { p, n, field, inv })
    }

    fn table_size(&self) -> u64 {
        (self.p as u64).saturating_pow((self.n * self.n) as u32)
    }

    fn encode(&self, m: &Raw) -> u64 {
        let mut code = 0u64;
        for k in (0..self.n * self.n).rev() {
            code = code * self.p as u64 + m[k] as u64;
        }
        code
    }

    fn decode(&self, mut code: u64) -> Raw {
        let mut m = [0u8; MAX_N * MAX_N];
        for e in m.iter_mut().take(self.n * self.n) {
            *e = (code % self.p as u64) as u8;
            code /= self.p as u64;
        }
        m
    }

    fn mul(&self, a: &Raw, b: &Raw) -> Raw {
        let n = self.n;
        let mut c = [0u8; MAX_N * MAX_N];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0u32;
                for k in 0..n {
                    s += a[i * n + k] as u32 * b[k * n + j] as u32;
                }
                c[i * n + j] = (s % self.p) as u8;
            }
        }
        c
    }

    fn det(&self, a: &Raw) -> u32 {
        let (n, p) = (self.n, self.p);
        let mut m: Vec<u32> = a[..n * n].iter().map(|&x| x as u32).collect();
        let mut det = 1u32;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| m[r * n + col] != 0) else {
                return 0;
            };
            if piv != col {
                for j in 0..n {
                    m.swap(piv * n + j, col * n + j);
                }
                det = (p - det) % p;
            }
            let pv = m[col * n + col];
            det = det * pv % p;
            let pinv = self.inv[pv as usize] as u32;
            for r in col + 1..n {
                let f = m[r * n + col] * pinv % p;
                if f == 0 {
                    continue;
                }
                for j in col..n {
                    m[r * n + j] = (m[r * n + j] + p * p - f * m[col * n + j]) % p;
                }
            }
        }
        det
    }

    /// `t_ij(c)⁻¹ A t_ij(c)`, 0-based `i, j`.
    fn conj_t(&self, a: &Raw, i: usize, j: usize, c: u32) -> Raw {
        let (n, p) = (self.n, self.p);
        let mut b = *a;
        for k in 0..n {
            b[i * n + k] = ((b[i * n + k] as u32 + p * p - c * b[j * n + k] as u32) % p) as u8;
        }
        for k in 0..n {
            b[k * n + j] = ((b[k * n + j] as u32 + c * b[k * n + i] as u32) % p) as u8;
        }
        b
    }

    fn neighbours(&self, a: &Raw) -> impl Iterator<Item = Raw> + '_ {
        let a = *a;
        let n = self.n;
        (0..n)
            .flat_map(move |i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .flat_map(move |(i, j)| (1..self.p).map(move |c| self.conj_t(&a, i, j, c)))
    }

    fn from_mat(&self, m: &Mat) -> Result<Raw> {
        if m.field() != self.field {
            return Err(Error::FieldMismatch(m.field(), self.field));
        }
        if m.n() != self.n {
            return Err(Error::DimensionMismatch(m.n(), self.n));
        }
        let mut r = [0u8; MAX_N * MAX_N];
        for i in 0..self.n {
            for j in 0..self.n {
                r[i * self.n + j] = m.get(i, j).residue().expect("finite field") as u8;
            }
        }
        Ok(r)
    }

    fn to_mat(&self, r: &Raw) -> Mat {
        let rows = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.field.from_i64(r[i * self.n + j] as i64))
                    .collect()
            })
            .collect();
        Mat::from_rows(self.field, rows).expect("square")
    }
}

/// An `E`-class as an explicit set of packed codes.
#[derive(Clone, Debug)]
pub struct ClassSet {
    pub elements: HashSet<u64>,
    pub det: Scalar,
    pub representative: Mat,
}

impl ClassSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// The packed code of a matrix over `F_p`, `p < 256`, `n <= 4`.
pub fn pack(m: &Mat) -> Result<u64> {
    let s = Small::new(m.field(), m.n())?;
    Ok(s.encode(&s.from_mat(m)?))
}

/// Breadth-first closure of `{σ}` under conjugation by every `t_ij(a)`, `a ≠ 0`.
pub fn enumerate_e_class(sigma: &Mat, cap: u64) -> Result<ClassSet> {
    let s = Small::new(sigma.field(), sigma.n())?;
    let start = s.from_mat(sigma)?;
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(s.encode(&start));
    queue.push_back(start);
    while let Some(a) = queue.pop_front() {
        for b in s.neighbours(&a) {
            if seen.insert(s.encode(&b)) {
                if seen.len() as u64 > cap {
                    return Err(Error::TooLarge {
                        size: seen.len() as u64,
                        cap,
                    });
                }
                queue.push_back(b);
            }
        }
    }
    Ok(ClassSet {
        elements: seen,
        det: sigma.det(),
        representative: sigma.clone(),
    })
}

#[derive(Clone, Debug)]
pub struct ClassInfo {
    /// Smallest packed code in the class.
    pub rep: u64,
    pub size: usize,
    pub det: u32,
    pub central: bool,
}

/// Every `E`-class of `GL_n(F_p)`, with a dense code-to-class table.
pub struct GroupTable {
    small: Small,
    ids: Vec<u32>,
    classes: Vec<ClassInfo>,
    /// Codes of class `k` are `members[offsets[k]..offsets[k + 1]]`.
    members: Vec<u32>,
    offsets: Vec<usize>,
    inverse: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct OracleVerdict {
    pub m_min: usize,
    /// All sign vectors of length `m_min` whose product contains `t_12(1)`, in
    /// lexicographic order with `+ < -`.
    pub realizing_patterns: Vec<Vec<Sign>>,
}

fn patterns(len: usize) -> Vec<Vec<Sign>> {
    (0..1u32 << len)
        .map(|bits| {
            (0..len)
                .map(|k| if bits >> (len - 1 - k) & 1 == 0 { 1 } else { -1 })
                .collect()
        })
        .collect()
}

/// `|GL_n(F_q)| = ∏_{k<n} (q^n - q^k)`.
pub fn group_order(q: u64, n: usize) -> u64 {
    let qn = q.pow(n as u32);
    (0..n).map(|k| qn - q.pow(k as u32)).product()
}

impl GroupTable {
    pub fn new(field: FieldSpec, n: usize, cap: u64) -> Result<Self> {
        let small = Small::new(field, n)?;
        let size = small.table_size();
        if size > cap || size > u32::MAX as u64 {
            return Err(Error::TooLarge { size, cap });
        }
        let size = size as usize;
        let mut ids: Vec<u32> = (0..size as u64)
            .into_par_iter()
            .map(|c| if small.det(&small.decode(c)) == 0 { SINGULAR } else { UNSET })
            .collect();
        let mut classes = Vec::new();
        let mut members = Vec::new();
        let mut offsets = vec![0];
        let mut queue = VecDeque::new();
        for code in 0..size {
            if ids[code] != UNSET {
                continue;
            }
            let id = classes.len() as u32;
            let start = members.len();
            ids[code] = id;
            members.push(code as u32);
            queue.push_back(small.decode(code as u64));
            while let Some(a) = queue.pop_front() {
                for b in small.neighbours(&a) {
                    let c = small.encode(&b) as usize;
                    if ids[c] == UNSET {
                        ids[c] = id;
                        members.push(c as u32);
                        queue.push_back(b);
                    }
                }
            }
            members[start..].sort_unstable();
            let raw = small.decode(code as u64);
            classes.push(ClassInfo {
                rep: code as u64,
                size: members.len() - start,
                det: small.det(&raw),
                central: small.to_mat(&raw).is_scalar(),
            });
            offsets.push(members.len());
        }
        let inverse = classes
            .iter()
            .map(|c| {
                let m = small.to_mat(&small.decode(c.rep)).inv().expect("invertible");
                let code = small.encode(&small.from_mat(&m).expect("same shape"));
                ids[code as usize]
            })
            .collect();
        Ok(GroupTable {
            small,
            ids,
            classes,
            members,
            offsets,
            inverse,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.small.field
    }

    pub fn n(&self) -> usize {
        self.small.n
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn members(&self, id: u32) -> &[u32] {
        &self.members[self.offsets[id as usize]..self.offsets[id as usize + 1]]
    }

    pub fn class_of(&self, m: &Mat) -> Result<u32> {
        let code = self.small.encode(&self.small.from_mat(m)?);
        match self.ids[code as usize] {
            SINGULAR => Err(Error::Singular),
            id => Ok(id),
        }
    }

    pub fn representative(&self, id: u32) -> Mat {
        self.small.to_mat(&self.small.decode(self.classes[id as usize].rep))
    }

    pub fn inverse_class(&self, id: u32) -> u32 {
        self.inverse[id as usize]
    }

    pub fn class_set(&self, id: u32) -> ClassSet {
        let rep = self.representative(id);
        ClassSet {
            elements: self.members(id).iter().map(|&c| c as u64).collect(),
            det: rep.det(),
            representative: rep,
        }
    }

    fn signed(&self, id: u32, s: Sign) -> u32 {
        if s == 1 {
            id
        } else {
            self.inverse_class(id)
        }
    }

    fn det_of_product(&self, classes: &[(u32, Sign)]) -> u32 {
        let p = self.small.p;
        classes.iter().fold(1, |acc, &(id, s)| {
            let d = self.classes[self.signed(id, s) as usize].det;
            acc * d % p
        })
    }

    fn t12_raw(&self) -> Raw {
        let mut r = [0u8; MAX_N * MAX_N];
        for i in 0..self.n() {
            r[i * self.n() + i] = 1;
        }
        r[1] = 1;
        r
    }

    fn t12(&self) -> u32 {
        self.ids[self.small.encode(&self.t12_raw()) as usize]
    }

    /// Classes met by `X · C` for the classes `X` marked in `reach`.
    fn step(&self, reach: &[bool], c: u32) -> Vec<bool> {
        let reps: Vec<Raw> = reach
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(k, _)| self.small.decode(self.classes[k].rep))
            .collect();
        let k = self.classes.len();
        self.members(c)
            .par_iter()
            .fold(
                || vec![false; k],
                |mut acc, &code| {
                    let y = self.small.decode(code as u64);
                    for x in &reps {
                        let z = self.small.mul(x, &y);
                        acc[self.ids[self.small.encode(&z) as usize] as usize] = true;
                    }
                    acc
                },
            )
            .reduce(
                || vec![false; k],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x |= y);
                    a
                },
            )
    }

    /// `t_12(1) ∈ X · C` iff `t_12(1) y ∈ X` for some `y ∈ C⁻¹`.
    fn last_step_hits(&self, reach: &[bool], c: u32) -> bool {
        let t12 = self.t12_raw();
        self.members(self.inverse_class(c)).par_iter().any(|&code| {
            let z = self.small.mul(&t12, &self.small.decode(code as u64));
            reach[self.ids[self.small.encode(&z) as usize] as usize]
        })
    }

    /// Whether `t_12(1) ∈ C_1^{s_1} ⋯ C_m^{s_m}`.
    pub fn product_contains_t(&self, classes: &[(u32, Sign)]) -> bool {
        let mut memo = HashMap::new();
        self.contains_t_memo(classes, &mut memo)
    }

    fn reach(&self, prefix: &[(u32, Sign)], memo: &mut HashMap<Vec<(u32, Sign)>, Vec<bool>>) -> Vec<bool> {
        if let Some(r) = memo.get(prefix) {
            return r.clone();
        }
        let (&(id, s), rest) = prefix.split_last().expect("nonempty prefix");
        let c = self.signed(id, s);
        let r = if rest.is_empty() {
            let mut r = vec![false; self.classes.len()];
            r[c as usize] = true;
            r
        } else {
            let before = self.reach(rest, memo);
            self.step(&before, c)
        };
        memo.insert(prefix.to_vec(), r.clone());
        r
    }

    fn contains_t_memo(&self, classes: &[(u32, Sign)], memo: &mut HashMap<Vec<(u32, Sign)>, Vec<bool>>) -> bool {
        if classes.is_empty() || self.det_of_product(classes) != 1 {
            return false;
        }
        let (&(id, s), rest) = classes.split_last().expect("nonempty");
        let c = self.signed(id, s);
        if rest.is_empty() {
            return c == self.t12();
        }
        let before = self.reach(rest, memo);
        self.last_step_hits(&before, c)
    }

    /// Smallest `m <= 4` with a hitting sign pattern, and all hitting patterns of
    /// that length.
    pub fn minimal_m(&self, id: u32) -> Result<OracleVerdict> {
        if self.classes[id as usize].central {
            return Err(Error::CentralMatrix);
        }
        let mut memo = HashMap::new();
        for len in 1..=4 {
            let hits: Vec<Vec<Sign>> = patterns(len)
                .into_iter()
                .filter(|pat| {
                    let cl: Vec<(u32, Sign)> = pat.iter().map(|&s| (id, s)).collect();
                    self.contains_t_memo(&cl, &mut memo)
                })
                .collect();
            if !hits.is_empty() {
                return Ok(OracleVerdict {
                    m_min: len,
                    realizing_patterns: hits,
                });
            }
        }
        Err(Error::VerificationFailed(
            "no sign pattern of length <= 4 hits t_12(1)".into(),
        ))
    }
}

/// Decides `t_12(1) ∈ C_1^{s_1} ⋯ C_m^{s_m}` for explicit classes.
pub fn class_product_contains_t(classes: &[(&ClassSet, Sign)]) -> Result<bool> {
    let Some((first, _)) = classes.first() else {
        return Ok(false);
    };
    let (field, n) = (first.representative.field(), first.representative.n());
    for (c, _) in classes {
        if c.representative.field() != field {
            return Err(Error::FieldMismatch(c.representative.field(), field));
        }
        if c.representative.n() != n {
            return Err(Error::DimensionMismatch(c.representative.n(), n));
        }
    }
    let table = GroupTable::new(field, n, DEFAULT_TABLE_CAP)?;
    let ids = classes
        .iter()
        .map(|(c, s)| Ok((table.class_of(&c.representative)?, *s)))
        .collect::<Result<Vec<_>>>()?;
    Ok(table.product_contains_t(&ids))
}

pub fn minimal_m_search(sigma: &Mat) -> Result<OracleVerdict> {
    if sigma.is_scalar() {
        return Err(Error::CentralMatrix);
    }
    let table = GroupTable::new(sigma.field(), sigma.n(), DEFAULT_TABLE_CAP)?;
    table.minimal_m(table.class_of(sigma)?)
}

/// Whether the classifier's verdict is consistent with the oracle's.
pub fn agrees(report: &MReport, v: &OracleVerdict) -> bool {
    match &report.verdict {
        Verdict::Exact { m, sign_pattern } => {
            v.m_min == *m && v.realizing_patterns.contains(sign_pattern)
        }
        Verdict::Bounds {
            lower,
            upper,
            excluded_patterns,
            ..
        } => {
            (*lower..=*upper).contains(&v.m_min)
                && !v
                    .realizing_patterns
                    .iter()
                    .any(|p| excluded_patterns.iter().any(|e| &e.pattern == p))
        }
    }
}

#[derive(Clone, Debug)]
pub struct OracleRow {
    pub class_id: u32,
    pub representative: Mat,
    pub charpoly: Poly,
    pub invariant_factors: Vec<Poly>,
    pub det: Scalar,
    pub class_size: usize,
    pub verdict: OracleVerdict,
    pub classifier: MReport,
    pub agreement: bool,
}

#[derive(Clone, Debug)]
pub struct OracleSweep {
    pub field: FieldSpec,
    pub n: usize,
    pub group_order: u64,
    pub class_count: usize,
    pub rows: Vec<OracleRow>,
    /// Rows whose classifier verdict is only an interval: measured values, not
    /// results.
    pub observations: Vec<OracleRow>,
}

/// Runs the oracle on every noncentral `E`-class of `GL_n(F_p)`.
pub fn sweep(field: FieldSpec, n: usize, cap: u64) -> Result<OracleSweep> {
    if n < 3 {
        return Err(Error::DimensionTooSmall(n));
    }
    let table = GroupTable::new(field, n, cap)?;
    let ids: Vec<u32> = (0..table.classes().len() as u32)
        .filter(|&k| !table.classes()[k as usize].central)
        .collect();
    let rows = ids
        .par_iter()
        .map(|&id| {
            let rep = table.representative(id);
            let verdict = table.minimal_m(id)?;
            let classifier = classify(&rep)?;
            let cd = describe_class(&rep)?;
            Ok(OracleRow {
                class_id: id,
                agreement: agrees(&classifier, &verdict),
                invariant_factors: invariant_factors(&rep),
                charpoly: cd.charpoly,
                det: cd.det,
                class_size: table.classes()[id as usize].size,
                representative: rep,
                verdict,
                classifier,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let observations = rows
        .iter()
        .filter(|r| matches!(r.classifier.verdict, Verdict::Bounds { .. }))
        .cloned()
        .collect();
    Ok(OracleSweep {
        field,
        n,
        group_order: group_order(field.order().expect("finite") as u64, n),
        class_count: table.classes().len(),
        rows,
        observations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::t;

    const F2: FieldSpec = FieldSpec::Prime(2);
    const F3: FieldSpec = FieldSpec::Prime(3);

    #[test]
    fn packing_round_trip() {
        let s = Small::new(F3, 3).unwrap();
        let m = Mat::from_ints(F3, &[&[1, 2, 0], &[0, 1, 1], &[2, 0, 1]]);
        let r = s.from_mat(&m).unwrap();
        assert_eq!(s.to_mat(&s.decode(s.encode(&r))), m);
        assert_eq!(s.det(&r), m.det().residue().unwrap());
        let tt = t(3, 1, 3, &F3.from_i64(2)).unwrap();
        let want = m.conj(&tt).unwrap();
        assert_eq!(s.to_mat(&s.conj_t(&r, 0, 2, 2)), want);
    }

    #[test]
    fn class_examples() {
        let c = enumerate_e_class(&t(3, 1, 2, &F2.one()).unwrap(), DEFAULT_CLASS_CAP).unwrap();
        assert_eq!(c.len(), 21);
        assert_eq!(enumerate_e_class(&Mat::identity(F2, 3), 10).unwrap().len(), 1);
        let comp = Mat::companion(&Poly::from_ints(F2, &[1, 1, 0, 1])).unwrap();
        let c = enumerate_e_class(&comp, DEFAULT_CLASS_CAP).unwrap();
        assert_eq!(168 % c.len(), 0);
        assert!(matches!(
            enumerate_e_class(&comp, 5),
            Err(Error::TooLarge { cap: 5, .. })
        ));
    }

    #[test]
    fn partition_and_orders() {
        for (f, n) in [(F2, 3), (F3, 3), (F2, 4)] {
            let table = GroupTable::new(f, n, DEFAULT_TABLE_CAP).unwrap();
            let total: usize = table.classes().iter().map(|c| c.size).sum();
            assert_eq!(total as u64, group_order(f.order().unwrap() as u64, n));
        }
        assert_eq!(group_order(2, 3), 168);
    }

    #[test]
    fn transvection_class_search() {
        let v = minimal_m_search(&t(3, 1, 2, &F3.one()).unwrap()).unwrap();
        assert_eq!(v.m_min, 1);
        assert_eq!(v.realizing_patterns, vec![vec![1], vec![-1]]);
        assert_eq!(minimal_m_search(&Mat::identity(F3, 3)), Err(Error::CentralMatrix));
    }
}
