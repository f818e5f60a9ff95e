//! Orthogonal pairs of non-degenerate points of the unitary plane.

use std::sync::Arc;

use serde::Serialize;

use crate::actions::{GroupVariant, UnitaryPlane, UnitaryPoint};
use crate::engine::BaseRelation;
use crate::error::{Result, SaxlError};
use crate::gf::{prime_power, FqElem, FqField};

fn check_label(plane: &UnitaryPlane, b: FqElem) -> Result<()> {
    if plane.q().is_multiple_of(2) {
        return Err(SaxlError::Precondition("needs odd q".into()));
    }
    if !plane.is_label(b) {
        return Err(SaxlError::Precondition("b is zero or b^(q+1) = -1".into()));
    }
    Ok(())
}

/// `b^((q+1)(p^k-1)/2) != 1` for all `0 < k < 2f`.
fn psigma_condition(plane: &UnitaryPlane, b: FqElem) -> bool {
    let fq = plane.field();
    let (p, q) = (fq.p() as i64, plane.q() as i64);
    (1..fq.f()).all(|k| fq.pow(b, (q + 1) * (p.pow(k) - 1) / 2) != Some(FqElem::ONE))
}

/// Whether `{alpha, omega_b}` is a base, for `PSL(2,q)` (`b` a non-square in `GF(q^2)`) or
/// `PΣL(2,q)`.
pub fn c3_base(plane: &UnitaryPlane, variant: GroupVariant, b: FqElem) -> Result<bool> {
    check_label(plane, b)?;
    match variant {
        GroupVariant::Psl2 => Ok(!plane.field().is_square(b)?),
        GroupVariant::PSigmaL2 => Ok(psigma_condition(plane, b)),
        _ => Err(SaxlError::Unsupported(format!(
            "no closed-form criterion for {variant}"
        ))),
    }
}

/// Least `a` (by logarithm) with `a^(q+1) = t` for `t` in `GF(q)^×`.
pub fn norm_root(plane: &UnitaryPlane, t: FqElem) -> Result<FqElem> {
    let q = plane.q();
    let m = t.log().ok_or_else(|| SaxlError::Precondition("norm of zero".into()))? as u64;
    if !m.is_multiple_of(q + 1) {
        return Err(SaxlError::Precondition("value lies outside GF(q)".into()));
    }
    Ok(FqElem::from_log(((m / (q + 1)) % (q - 1)) as u32))
}

/// `(b a1^-2 (b + b^-q) + b^-q d) / (a1^-2 (b + b^-q) - d)`: a label of the image of
/// `omega_d` under the unitary map taking `alpha` to `omega_b` built from `a1`.
pub fn c3_transfer(plane: &UnitaryPlane, b: FqElem, a1: FqElem, d: FqElem) -> Result<FqElem> {
    let fq = plane.field();
    let b_q = fq
        .pow(b, -(plane.q() as i64))
        .ok_or_else(|| SaxlError::Precondition("b = 0".into()))?;
    let a2 = fq.pow(a1, -2).ok_or_else(|| SaxlError::Precondition("a1 = 0".into()))?;
    let s = fq.mul(a2, fq.add(b, b_q));
    fq.div(fq.add(fq.mul(b, s), fq.mul(b_q, d)), fq.sub(s, d))
        .ok_or_else(|| SaxlError::Precondition("d equals a1^-2 (b + b^-q)".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct C3Witness {
    /// The common neighbour `omega_c` with `c = -b`.
    pub c: FqElem,
    /// Least root of `a1^(q+1) = 1 + b^(q+1)`.
    pub a1: FqElem,
    /// `2b a1^-2 (b + b^-q) / (b - b^-q)`.
    pub d: FqElem,
}

/// Common neighbour of `alpha` and `omega_b` for `PΣL(2,q)`, re-verified before returning.
pub fn c3_common_neighbour_witness(plane: &UnitaryPlane, b: FqElem) -> Result<C3Witness> {
    if !c3_base(plane, GroupVariant::PSigmaL2, b)? {
        return Err(SaxlError::Precondition("{alpha, omega_b} is not a base".into()));
    }
    let fq = plane.field();
    let fail = |what: &str| SaxlError::Precondition(format!("witness check failed: {what}"));
    let one = FqElem::ONE;
    let norm_b = plane.norm(b);
    let a1 = norm_root(plane, fq.add(one, norm_b))?;
    if plane.norm(a1) != fq.add(one, norm_b) {
        return Err(fail("a1^(q+1) != 1 + b^(q+1)"));
    }
    let b_q = fq.pow(b, -(plane.q() as i64)).expect("b non-zero");
    let s = fq.mul(fq.pow(a1, -2).expect("a1 non-zero"), fq.add(b, b_q));
    let d = fq
        .div(fq.mul(fq.mul(fq.from_int(2), b), s), fq.sub(b, b_q))
        .ok_or_else(|| fail("b = b^-q"))?;
    // conditions on d: a label other than the two excluded values, satisfying the criterion
    if !plane.is_label(d) || d == s || d == fq.neg(fq.mul(norm_b, s)) {
        return Err(fail("d violates the label conditions"));
    }
    if !c3_base(plane, GroupVariant::PSigmaL2, d)? {
        return Err(fail("{alpha, omega_d} is not a base"));
    }
    let c = fq.neg(b);
    let image = c3_transfer(plane, b, a1, d)?;
    if plane.canonical(image) != plane.canonical(c) {
        return Err(fail("transfer of d is not omega_(-b)"));
    }
    if !c3_base(plane, GroupVariant::PSigmaL2, c)? {
        return Err(fail("{alpha, omega_(-b)} is not a base"));
    }
    Ok(C3Witness { c, a1, d })
}

/// `{alpha} ∪ {omega_(bx) : x in GF(q)^×, (bx)^(q+1) != -1}` for a non-square `b`, each pair
/// checked to be a base for `PSL(2,q)`. Returned with `Alpha` first, then by label.
pub fn c3_clique(model: &C3Model, b: FqElem) -> Result<Vec<UnitaryPoint>> {
    let plane = model.plane();
    check_label(plane, b)?;
    let fq = plane.field();
    if fq.is_square(b)? {
        return Err(SaxlError::Precondition("b must be a non-square".into()));
    }
    let q = plane.q() as i64;
    let mut labels: Vec<FqElem> = (0..q - 1)
        .map(|k| fq.mul(b, fq.lambda_pow(k * (q + 1))))
        .filter(|&x| plane.is_label(x))
        .map(|x| plane.canonical(x))
        .collect();
    labels.sort_unstable();
    labels.dedup();
    let mut clique = vec![UnitaryPoint::Alpha];
    clique.extend(labels.into_iter().map(UnitaryPoint::Omega));
    let g0 = C3Model::new(plane.q(), GroupVariant::Psl2)?;
    for (i, &x) in clique.iter().enumerate() {
        for &y in &clique[i + 1..] {
            if !g0.is_base(x, y)? {
                return Err(SaxlError::Precondition(format!("clique check failed for {x:?}, {y:?}")));
            }
        }
    }
    Ok(clique)
}

/// Closed-form base relation on the unitary model, points numbered as in the action.
#[derive(Clone, Debug)]
pub struct C3Model {
    plane: UnitaryPlane,
    variant: GroupVariant,
    labels: Vec<UnitaryPoint>,
}

impl C3Model {
    /// Variants containing `PGL(2,q)`, and every variant for even `q`, have no bases of
    /// size two; `PSL(2,q)` and `PΣL(2,q)` are decided in closed form.
    pub fn new(q: u64, variant: GroupVariant) -> Result<Self> {
        let (p, f) = prime_power(q).ok_or_else(|| SaxlError::Precondition(format!("{q} is not a prime power")))?;
        variant.check(p, f)?;
        if !matches!(
            variant,
            GroupVariant::Psl2 | GroupVariant::PSigmaL2 | GroupVariant::Pgl2 | GroupVariant::PGammaL2
        ) {
            return Err(SaxlError::Unsupported(format!(
                "no closed-form criterion for {variant}"
            )));
        }
        let plane = UnitaryPlane::new(Arc::new(FqField::new(p, 2 * f)?), q);
        let labels = plane.points();
        Ok(C3Model { plane, variant, labels })
    }

    pub fn plane(&self) -> &UnitaryPlane {
        &self.plane
    }

    pub fn field(&self) -> &FqField {
        self.plane.field()
    }

    pub fn labels(&self) -> &[UnitaryPoint] {
        &self.labels
    }

    /// A label `d` with `{x, y}` carried to `{alpha, omega_d}` by a similitude; `None` when
    /// `x = y`.
    pub fn transport(&self, x: UnitaryPoint, y: UnitaryPoint) -> Option<FqElem> {
        let fq = self.field();
        match (x, y) {
            _ if x == y => None,
            (UnitaryPoint::Alpha, UnitaryPoint::Omega(d)) | (UnitaryPoint::Omega(d), UnitaryPoint::Alpha) => Some(d),
            (UnitaryPoint::Omega(b), UnitaryPoint::Omega(c)) => {
                // columns (1, b) and (b, -b^(1-q)) are orthogonal of equal norm
                let b1q = fq.pow(b, 1 - self.plane.q() as i64).expect("b non-zero");
                let den = fq.sub(fq.neg(b1q), fq.mul(b, c));
                let d = fq.div(fq.sub(c, b), den)?;
                Some(self.plane.canonical(d))
            }
            _ => unreachable!(),
        }
    }

    pub fn is_base(&self, x: UnitaryPoint, y: UnitaryPoint) -> Result<bool> {
        let Some(d) = self.transport(x, y) else {
            return Ok(false);
        };
        let has_pgl =
            self.plane.q().is_multiple_of(2) || matches!(self.variant, GroupVariant::Pgl2 | GroupVariant::PGammaL2);
        if has_pgl {
            return Ok(false);
        }
        c3_base(&self.plane, self.variant, d)
    }
}

impl BaseRelation for C3Model {
    fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    fn adjacent(&self, a: u32, b: u32) -> bool {
        self.is_base(self.labels[a as usize], self.labels[b as usize])
            .expect("labels are valid points")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane(q: u64) -> UnitaryPlane {
        let (p, f) = prime_power(q).unwrap();
        UnitaryPlane::new(Arc::new(FqField::new(p, 2 * f).unwrap()), q)
    }

    #[test]
    fn q7_examples() {
        let u = plane(7);
        let lambda = u.field().primitive();
        assert!(c3_base(&u, GroupVariant::Psl2, lambda).unwrap());
        assert!(c3_base(&u, GroupVariant::PSigmaL2, lambda).unwrap());
        let l2 = u.field().lambda_pow(2);
        assert!(!c3_base(&u, GroupVariant::Psl2, l2).unwrap());
    }

    #[test]
    fn non_points_are_rejected() {
        let u = plane(7);
        let fq = u.field();
        let bad = fq.nonzero().find(|&b| u.norm(b) == fq.neg(FqElem::ONE)).unwrap();
        assert!(c3_base(&u, GroupVariant::Psl2, bad).is_err());
        assert!(c3_common_neighbour_witness(&u, bad).is_err());
        assert!(c3_base(&u, GroupVariant::Psl2, FqElem::ZERO).is_err());
    }

    #[test]
    fn square_roots_of_norms() {
        let u = plane(9);
        let fq = u.field();
        for k in 0..8 {
            let t = fq.lambda_pow(10 * k);
            let a = norm_root(&u, t).unwrap();
            assert_eq!(u.norm(a), t);
        }
        assert!(norm_root(&u, fq.primitive()).is_err());
    }
}
