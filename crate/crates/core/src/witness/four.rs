use crate::classify::Sign;
use crate::error::{Error, Result};
use crate::matrix::{t, Mat};

use super::{arrange_frobenius, finish, Witness};

/// Length-4 witness with signs `(+, -, +, -)`, from the identity
/// `[[a, b], c] = a (a⁻¹)^{b⁻¹} a^{b⁻¹c⁻¹} (a⁻¹)^{c⁻¹}`.
///
/// Requires every invariant factor to have degree at least 2. If all have degree 2
/// then `b = t_14(1)`, `c = t_12(1)`; otherwise a block of degree `t >= 3` is moved
/// to the front and `b = c = t_{t-1,t}(1)`.
pub fn witness_four(sigma: &Mat) -> Result<Witness> {
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
    let one = field.one();
    let arr = arrange_frobenius(sigma, |fs| {
        let mut order: Vec<usize> = (0..fs.len()).collect();
        if let Some(i) = fs.iter().position(|p| p.deg() >= 3) {
            order.remove(i);
            order.insert(0, i);
        }
        order
    })?;
    if arr.factors.iter().any(|p| p.deg() == 1) {
        return Err(Error::HasDegreeOneFactor);
    }
    let (name, b, c) = if arr.factors.iter().all(|p| p.deg() == 2) {
        ("four-1", t(n, 1, 4, &one)?, t(n, 1, 2, &one)?)
    } else {
        let d = arr.factors[0].deg();
        let x = t(n, d - 1, d, &one)?;
        ("four-2", x.clone(), x)
    };
    let (bi, ci) = (b.inv()?, c.inv()?);
    let factors: Vec<(Sign, Mat)> = vec![
        (1, Mat::identity(field, n)),
        (-1, bi.clone()),
        (1, &bi * &ci),
        (-1, ci),
    ];
    finish(sigma, &arr.g, factors, name)
}
