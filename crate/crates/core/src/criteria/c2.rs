//! Pairs of projective points.

use std::sync::Arc;

use serde::Serialize;

use crate::actions::{GroupVariant, ProjPoint, ProjectiveLine};
use crate::engine::BaseRelation;
use crate::error::{Result, SaxlError};
use crate::gf::{prime_power, FqElem, FqField};

/// `{<e1>, <e2>}` and `{<e1 + b e2>, <e1 + c e2>}` form a base for `PΣL(2,q)`, `q` odd:
/// `bc != 0`, `-b/c` is a non-square and `b^(p^k - 1) != c^(p^k - 1)` for `0 < k < f`.
pub fn c2_base_psigma(fq: &FqField, b: FqElem, c: FqElem) -> Result<bool> {
    check_odd(fq)?;
    if b == c {
        return Err(SaxlError::Precondition("b and c must differ".into()));
    }
    if b.is_zero() || c.is_zero() {
        return Ok(false);
    }
    if fq.is_square(fq.neg(fq.div(b, c).expect("c non-zero")))? {
        return Ok(false);
    }
    let p = fq.p() as i64;
    Ok((1..fq.f()).all(|k| {
        let e = p.pow(k) - 1;
        fq.pow(b, e) != fq.pow(c, e)
    }))
}

/// [`c2_base_psigma`] with the last condition replaced by "`b/c` lies in no maximal
/// subfield".
pub fn c2_base_psigma_fast(fq: &FqField, b: FqElem, c: FqElem) -> Result<bool> {
    check_odd(fq)?;
    if b == c {
        return Err(SaxlError::Precondition("b and c must differ".into()));
    }
    if b.is_zero() || c.is_zero() {
        return Ok(false);
    }
    let ratio = fq.div(b, c).expect("c non-zero");
    Ok(!fq.is_square(fq.neg(ratio))? && !fq.in_proper_subfield_by_divisors(ratio))
}

/// Base condition for `PSL(2,q)` itself, `q` odd, on disjoint pairs: `-b/c` is a non-square.
pub fn c2_base_psl(fq: &FqField, b: FqElem, c: FqElem) -> Result<bool> {
    check_odd(fq)?;
    if b == c {
        return Err(SaxlError::Precondition("b and c must differ".into()));
    }
    if b.is_zero() || c.is_zero() {
        return Ok(false);
    }
    Ok(!fq.is_square(fq.neg(fq.div(b, c).expect("c non-zero")))?)
}

fn check_odd(fq: &FqField) -> Result<()> {
    if fq.p() == 2 {
        return Err(SaxlError::Precondition("needs odd q".into()));
    }
    Ok(())
}

/// The image of `{<e1 + d e2>, <e1 + e e2>}` under the element of `SL(2,q)` taking
/// `{<e1>, <e2>}` to `{<e1 + b e2>, <e1 + c e2>}`:
/// `((b(c-b) + dc) / (c-b+d), (b(c-b) + ec) / (c-b+e))`.
pub fn c2_neighbour_transfer(fq: &FqField, b: FqElem, c: FqElem, d: FqElem, e: FqElem) -> Result<(FqElem, FqElem)> {
    let cb = fq.sub(c, b);
    let base = fq.mul(b, cb);
    let image = |x: FqElem| -> Result<FqElem> {
        let den = fq.add(cb, x);
        fq.div(fq.add(base, fq.mul(x, c)), den)
            .ok_or_else(|| SaxlError::Precondition("scalar equals b - c".into()))
    };
    Ok((image(d)?, image(e)?))
}

/// A common neighbour of `{<e1>, <e2>}` and `{<e1 + b e2>, <e1 + c e2>}` for `PΣL(2,q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct C2Witness {
    /// The neighbour `{<e1 - b e2>, <e1 - c e2>}`.
    pub gamma: (FqElem, FqElem),
    /// Scalars with `gamma` the transfer of `{<e1 + d e2>, <e1 + e e2>}`.
    pub d: FqElem,
    pub e: FqElem,
}

/// Take `gamma = (-b, -c)`, `d = 2b(b-c)/(b+c)`, `e = (b^2-c^2)/(2c)` and re-check every
/// claim before returning.
pub fn c2_common_neighbour_witness(fq: &FqField, b: FqElem, c: FqElem) -> Result<C2Witness> {
    if !c2_base_psigma(fq, b, c)? {
        return Err(SaxlError::Precondition("(b, c) is not a base pair".into()));
    }
    let two = fq.from_int(2);
    let fail = |what: &str| SaxlError::Precondition(format!("witness check failed: {what}"));
    let b_minus_c = fq.sub(b, c);
    let d = fq
        .div(fq.mul(fq.mul(two, b), b_minus_c), fq.add(b, c))
        .ok_or_else(|| fail("b + c = 0"))?;
    let e = fq
        .div(fq.sub(fq.mul(b, b), fq.mul(c, c)), fq.mul(two, c))
        .ok_or_else(|| fail("2c = 0"))?;
    if d == b_minus_c || e == b_minus_c || d == e {
        return Err(fail("d or e equals b - c"));
    }
    if !c2_base_psigma(fq, d, e)? {
        return Err(fail("(d, e) is not a base pair"));
    }
    let gamma = (fq.neg(b), fq.neg(c));
    let (x, y) = c2_neighbour_transfer(fq, b, c, d, e)?;
    if !((x, y) == gamma || (y, x) == gamma) {
        return Err(fail("transfer does not give (-b, -c)"));
    }
    if !c2_base_psigma(fq, gamma.0, gamma.1)? {
        return Err(fail("(-b, -c) is not a base pair"));
    }
    Ok(C2Witness { gamma, d, e })
}

/// Cosets of `PSL(2,q)` in a variant, as (non-square determinant, Frobenius power).
fn variant_cosets(variant: GroupVariant, p: u64, f: u32) -> Vec<(bool, u32)> {
    let odd = p != 2;
    let mut out: Vec<(bool, u32)> = match variant {
        GroupVariant::Psl2 => vec![(false, 0)],
        GroupVariant::Pgl2 => vec![(false, 0), (odd, 0)],
        GroupVariant::PSigmaL2 => (0..f).map(|k| (false, k)).collect(),
        GroupVariant::PGammaL2 => (0..f).flat_map(|k| [(false, k), (odd, k)]).collect(),
        GroupVariant::DeltaPhi(j) => (0..2 * f).map(|m| (odd && m % 2 == 1, (m * j) % f)).collect(),
    };
    out.sort_unstable();
    out.dedup();
    out
}

/// Closed-form base relation for a variant on pairs of projective points, with points
/// numbered exactly as in the permutation action.
#[derive(Clone, Debug)]
pub struct C2Model {
    line: ProjectiveLine,
    variant: GroupVariant,
    cosets: Vec<(bool, u32)>,
    labels: Vec<(ProjPoint, ProjPoint)>,
}

impl C2Model {
    pub fn new(q: u64, variant: GroupVariant) -> Result<Self> {
        let (p, f) = prime_power(q).ok_or_else(|| SaxlError::Precondition(format!("{q} is not a prime power")))?;
        variant.check(p, f)?;
        let line = ProjectiveLine::new(Arc::new(FqField::new(p, f)?));
        let m = line.len();
        let mut labels = Vec::with_capacity(m * (m - 1) / 2);
        for a in 0..m {
            for b in a + 1..m {
                labels.push((line.point(a), line.point(b)));
            }
        }
        Ok(C2Model {
            cosets: variant_cosets(variant, p, f),
            line,
            variant,
            labels,
        })
    }

    pub fn field(&self) -> &FqField {
        self.line.field()
    }

    pub fn variant(&self) -> GroupVariant {
        self.variant
    }

    pub fn labels(&self) -> &[(ProjPoint, ProjPoint)] {
        &self.labels
    }

    /// The image of `y` under a matrix taking `x` to `{<e1>, <e2>}`.
    pub fn transport(&self, x: (ProjPoint, ProjPoint), y: (ProjPoint, ProjPoint)) -> (ProjPoint, ProjPoint) {
        let fq = self.field();
        let (x1, y1) = self.line.vector(x.0);
        let (x2, y2) = self.line.vector(x.1);
        let inv = [[y2, fq.neg(x2)], [fq.neg(y1), x1]];
        let t = |pt| self.line.apply(&inv, pt);
        (t(y.0), t(y.1))
    }

    /// Whether two points form a base, by deciding whether a non-identity element of the
    /// variant can fix both.
    pub fn is_base(&self, x: (ProjPoint, ProjPoint), y: (ProjPoint, ProjPoint)) -> bool {
        let e1 = ProjPoint::Affine(FqElem::ZERO);
        let on_alpha = |pt: ProjPoint| pt == e1 || pt == ProjPoint::Infinity;
        let (s, t) = self.transport(x, y);
        match (on_alpha(s), on_alpha(t)) {
            (true, true) => false,
            (true, false) | (false, true) => {
                let ProjPoint::Affine(b) = (if on_alpha(s) { t } else { s }) else {
                    unreachable!()
                };
                !self.meeting_pair_fixed(b)
            }
            (false, false) => {
                let (ProjPoint::Affine(b), ProjPoint::Affine(c)) = (s, t) else {
                    unreachable!()
                };
                !self.disjoint_pair_fixed(b, c)
            }
        }
    }

    /// [`c2_base_psigma`] transported to an arbitrary pair of points. A pair meeting the
    /// first in one projective point is a base exactly when there are no field automorphisms.
    pub fn is_base_psigma(&self, x: (ProjPoint, ProjPoint), y: (ProjPoint, ProjPoint)) -> Result<bool> {
        let fq = self.field();
        let (s, t) = self.transport(x, y);
        let e1 = ProjPoint::Affine(FqElem::ZERO);
        let on_alpha = |pt: ProjPoint| pt == e1 || pt == ProjPoint::Infinity;
        match (s, t) {
            _ if on_alpha(s) && on_alpha(t) => Ok(false),
            _ if on_alpha(s) || on_alpha(t) => {
                check_odd(fq)?;
                Ok(fq.f() == 1)
            }
            (ProjPoint::Affine(b), ProjPoint::Affine(c)) => c2_base_psigma(fq, b, c),
            _ => unreachable!(),
        }
    }

    fn square_class(&self, r: FqElem) -> bool {
        let fq = self.field();
        fq.p() != 2 && fq.is_square(r).map(|s| !s).unwrap_or(false)
    }

    // `{<e1>,<e2>}` and `{<e1>, <e1 + b e2>}` (or with `<e2>`): only diagonal maps after a
    // Frobenius power can fix both, with ratio `b^(1 - p^k)`.
    fn meeting_pair_fixed(&self, b: FqElem) -> bool {
        let fq = self.field();
        self.cosets
            .iter()
            .any(|&(nonsq, k)| k != 0 && self.square_class(fq.div(b, fq.frobenius(b, k)).unwrap()) == nonsq)
    }

    // Elements `x -> D x^(p^k)` with `D` diagonal or anti-diagonal of entry ratio `r`.
    fn disjoint_pair_fixed(&self, b: FqElem, c: FqElem) -> bool {
        let fq = self.field();
        self.cosets.iter().any(|&(nonsq, k)| {
            let (bk, ck) = (fq.frobenius(b, k), fq.frobenius(c, k));
            let d = |x, y| fq.div(x, y).unwrap();
            let cases = [
                (false, d(b, bk), d(c, ck)),
                (false, d(c, bk), d(b, ck)),
                (true, fq.mul(b, bk), fq.mul(c, ck)),
                (true, fq.mul(c, bk), fq.mul(b, ck)),
            ];
            cases.iter().enumerate().any(|(i, &(anti, r1, r2))| {
                if r1 != r2 || (i == 0 && k == 0) {
                    return false;
                }
                let det = if anti { fq.neg(r1) } else { r1 };
                self.square_class(det) == nonsq
            })
        })
    }
}

impl BaseRelation for C2Model {
    fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    fn adjacent(&self, a: u32, b: u32) -> bool {
        a != b && self.is_base(self.labels[a as usize], self.labels[b as usize])
    }
}
