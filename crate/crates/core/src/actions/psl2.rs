//! `PSL(2,q)` and its overgroups on pairs of projective points, and on pairs of
//! orthogonal non-degenerate points of the unitary plane over `GF(q^2)`.
//!
//! Matrices act on column vectors, so `e1 <-> (1,0)`, `<e1 + b e2> <-> (1,b)` and a
//! matrix `[[m11, m12], [m21, m22]]` sends `(x, y)` to `(m11 x + m12 y, m21 x + m22 y)`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{ActionFamily, LabelledAction, OmegaPoint, ProjPoint, UnitaryPoint};
use crate::caps::Caps;
use crate::error::{Result, SaxlError};
use crate::gf::{prime_power, FqElem, FqField};
use crate::perm::{PermGroup, Permutation};

pub type Mat2 = [[FqElem; 2]; 2];

/// Groups `G` with `PSL(2,q) <= G <= PΓL(2,q)` that the constructors support.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupVariant {
    Psl2,
    Pgl2,
    PSigmaL2,
    PGammaL2,
    /// `<PSL(2,q), δφ^j>` with `δ` diagonal of non-square determinant and `φ` the
    /// Frobenius map; needs `q` odd and `f / gcd(f, j)` even.
    DeltaPhi(u32),
}

impl GroupVariant {
    pub fn parse(s: &str) -> Result<GroupVariant> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "psl" | "psl2" => Ok(GroupVariant::Psl2),
            "pgl" | "pgl2" => Ok(GroupVariant::Pgl2),
            "psigma" | "psigmal" | "psigmal2" => Ok(GroupVariant::PSigmaL2),
            "pgamma" | "pgammal" | "pgammal2" => Ok(GroupVariant::PGammaL2),
            _ => {
                let j = lower
                    .strip_prefix("deltaphi")
                    .map(|r| r.trim_start_matches([':', '=']))
                    .and_then(|r| r.parse::<u32>().ok());
                j.map(GroupVariant::DeltaPhi)
                    .ok_or_else(|| SaxlError::InvalidVariant(format!("unknown variant {s:?}")))
            }
        }
    }

    /// Reject variants that do not name a group for this field.
    pub fn check(self, p: u64, f: u32) -> Result<()> {
        if let GroupVariant::DeltaPhi(j) = self {
            if p == 2 {
                return Err(SaxlError::InvalidVariant("δφ^j needs odd q".into()));
            }
            let g = num_integer::gcd(f, j);
            if !(f / g).is_multiple_of(2) {
                return Err(SaxlError::InvalidVariant(format!(
                    "δφ^{j} needs f / gcd(f, j) even, got f = {f}"
                )));
            }
        }
        Ok(())
    }

    /// `|G : PSL(2,q)|`.
    pub fn index_over_psl(self, p: u64, f: u32) -> u64 {
        let d = if p == 2 { 1 } else { 2 };
        match self {
            GroupVariant::Psl2 => 1,
            GroupVariant::Pgl2 => d,
            GroupVariant::PSigmaL2 => f as u64,
            GroupVariant::PGammaL2 => d * f as u64,
            GroupVariant::DeltaPhi(j) => (f / num_integer::gcd(f, j)) as u64,
        }
    }

    /// Whether `G ∩ PGL(2,q) = PSL(2,q)`.
    pub fn meets_pgl_in_psl(self, p: u64) -> bool {
        match self {
            GroupVariant::Psl2 | GroupVariant::PSigmaL2 | GroupVariant::DeltaPhi(_) => true,
            GroupVariant::Pgl2 | GroupVariant::PGammaL2 => p == 2,
        }
    }
}

impl fmt::Display for GroupVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupVariant::Psl2 => write!(f, "PSL2"),
            GroupVariant::Pgl2 => write!(f, "PGL2"),
            GroupVariant::PSigmaL2 => write!(f, "PSigmaL2"),
            GroupVariant::PGammaL2 => write!(f, "PGammaL2"),
            GroupVariant::DeltaPhi(j) => write!(f, "PSL2.<delta*phi^{j}>"),
        }
    }
}

/// `|PSL(2,q)|`.
pub fn psl2_order(q: u64) -> u128 {
    let q = q as u128;
    let d = if q % 2 == 1 { 2 } else { 1 };
    q * (q * q - 1) / d
}

fn field_params(q: u64) -> Result<(u64, u32)> {
    let (p, f) = prime_power(q).ok_or_else(|| SaxlError::Precondition(format!("{q} is not a prime power")))?;
    if q < 4 {
        return Err(SaxlError::Precondition(format!("need q >= 4, got {q}")));
    }
    Ok((p, f))
}

/// Apply a matrix to a column vector.
pub fn mat_apply(fq: &FqField, m: &Mat2, x: FqElem, y: FqElem) -> (FqElem, FqElem) {
    (
        fq.add(fq.mul(m[0][0], x), fq.mul(m[0][1], y)),
        fq.add(fq.mul(m[1][0], x), fq.mul(m[1][1], y)),
    )
}

/// The projective line over `GF(q)`, point `<e1 + b e2>` at index `b.index()` and
/// `<e2>` at index `q`.
#[derive(Clone, Debug)]
pub struct ProjectiveLine {
    field: Arc<FqField>,
}

impl ProjectiveLine {
    pub fn new(field: Arc<FqField>) -> Self {
        ProjectiveLine { field }
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.field.q() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, i: usize) -> ProjPoint {
        if i == self.field.q() as usize {
            ProjPoint::Infinity
        } else {
            ProjPoint::Affine(FqElem::from_index(i))
        }
    }

    pub fn index(&self, pt: ProjPoint) -> usize {
        match pt {
            ProjPoint::Affine(b) => b.index(),
            ProjPoint::Infinity => self.field.q() as usize,
        }
    }

    /// The point spanned by a non-zero vector.
    pub fn from_vector(&self, x: FqElem, y: FqElem) -> ProjPoint {
        match self.field.div(y, x) {
            Some(b) => ProjPoint::Affine(b),
            None => ProjPoint::Infinity,
        }
    }

    pub fn vector(&self, pt: ProjPoint) -> (FqElem, FqElem) {
        match pt {
            ProjPoint::Affine(b) => (FqElem::ONE, b),
            ProjPoint::Infinity => (FqElem::ZERO, FqElem::ONE),
        }
    }

    pub fn apply(&self, m: &Mat2, pt: ProjPoint) -> ProjPoint {
        let (x, y) = self.vector(pt);
        let (x2, y2) = mat_apply(&self.field, m, x, y);
        self.from_vector(x2, y2)
    }

    pub fn frobenius(&self, pt: ProjPoint, k: u32) -> ProjPoint {
        match pt {
            ProjPoint::Affine(b) => ProjPoint::Affine(self.field.frobenius(b, k)),
            ProjPoint::Infinity => ProjPoint::Infinity,
        }
    }

    fn perm_from(&self, map: impl Fn(ProjPoint) -> ProjPoint) -> Permutation {
        let images = (0..self.len()).map(|i| self.index(map(self.point(i))) as u32).collect();
        Permutation::from_images_unchecked(images)
    }

    pub fn matrix_perm(&self, m: &Mat2) -> Permutation {
        self.perm_from(|pt| self.apply(m, pt))
    }

    pub fn frobenius_perm(&self, k: u32) -> Permutation {
        self.perm_from(|pt| self.frobenius(pt, k))
    }

    /// Generators of the variant acting on the line.
    pub fn generators(&self, variant: GroupVariant) -> Vec<Permutation> {
        let fq = &self.field;
        let (zero, one) = (FqElem::ZERO, FqElem::ONE);
        let mu = fq.primitive();
        let mu_inv = fq.inv(mu).expect("non-zero");
        let transvection = [[one, zero], [one, one]];
        let torus = [[mu, zero], [zero, mu_inv]];
        let swap = [[zero, one], [fq.neg(one), zero]];
        let delta = [[mu, zero], [zero, one]];
        let mut gens = vec![
            self.matrix_perm(&transvection),
            self.matrix_perm(&torus),
            self.matrix_perm(&swap),
        ];
        match variant {
            GroupVariant::Psl2 => {}
            GroupVariant::Pgl2 => gens.push(self.matrix_perm(&delta)),
            GroupVariant::PSigmaL2 => gens.push(self.frobenius_perm(1)),
            GroupVariant::PGammaL2 => {
                gens.push(self.matrix_perm(&delta));
                gens.push(self.frobenius_perm(1));
            }
            GroupVariant::DeltaPhi(j) => {
                gens.push(self.matrix_perm(&delta).then(&self.frobenius_perm(j)));
            }
        }
        gens
    }
}

fn pair_index(a: usize, b: usize, m: usize) -> usize {
    // position of {a, b}, a < b, in the lexicographic list of pairs from 0..m
    debug_assert!(a < b && b < m);
    a * (2 * m - a - 1) / 2 + (b - a - 1)
}

fn expected_order(q: u64, p: u64, f: u32, variant: GroupVariant) -> BigUint {
    BigUint::from(psl2_order(q)) * BigUint::from(variant.index_over_psl(p, f))
}

fn maximality_warning(action: &mut LabelledAction) -> Result<()> {
    if action.degree() <= 2000 && !action.group().is_primitive()? {
        action.push_warning("point stabiliser is not maximal: the action is imprimitive");
    }
    Ok(())
}

/// The variant acting on unordered pairs of distinct projective points.
pub fn psl2_c2_action(q: u64, variant: GroupVariant, caps: &Caps) -> Result<LabelledAction> {
    let (p, f) = field_params(q)?;
    variant.check(p, f)?;
    let m = q as usize + 1;
    caps.check_points(m * (m - 1) / 2)?;
    let field = Arc::new(FqField::new(p, f)?);
    let line = ProjectiveLine::new(field.clone());

    let order = expected_order(q, p, f, variant);
    let natural = PermGroup::new(m, line.generators(variant))?;
    if natural.order() != order {
        return Err(SaxlError::OrderMismatch {
            expected: order.to_string(),
            found: natural.order().to_string(),
        });
    }

    let mut labels = Vec::with_capacity(m * (m - 1) / 2);
    for a in 0..m {
        for b in a + 1..m {
            labels.push(OmegaPoint::ProjPair(line.point(a), line.point(b)));
        }
    }
    let gens = natural
        .generators()
        .iter()
        .map(|g| {
            let mut images = Vec::with_capacity(labels.len());
            for a in 0..m {
                for b in a + 1..m {
                    let (x, y) = (g.image(a as u32) as usize, g.image(b as u32) as usize);
                    images.push(pair_index(x.min(y), x.max(y), m) as u32);
                }
            }
            Permutation::from_images_unchecked(images)
        })
        .collect();
    let group = PermGroup::with_known_order(labels.len(), gens, &order)?;
    let mut action = LabelledAction::new(
        format!("{variant}({q}) on pairs of projective points"),
        ActionFamily::Psl2C2 { q, variant },
        group,
        labels,
    )
    .with_field(field);
    maximality_warning(&mut action)?;
    Ok(action)
}

/// Arithmetic of the unitary model over `GF(q^2)`.
#[derive(Clone, Debug)]
pub struct UnitaryPlane {
    field: Arc<FqField>,
    q: u64,
}

impl UnitaryPlane {
    /// `field` must be `GF(q^2)`.
    pub fn new(field: Arc<FqField>, q: u64) -> Self {
        debug_assert_eq!(field.q(), q * q);
        UnitaryPlane { field, q }
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `x^(q+1)`, the Hermitian norm.
    pub fn norm(&self, x: FqElem) -> FqElem {
        self.field.pow(x, self.q as i64 + 1).expect("positive exponent")
    }

    /// `-b^-q`, the partner label of `b`.
    pub fn partner(&self, b: FqElem) -> FqElem {
        let fq = &self.field;
        fq.neg(fq.pow(b, -(self.q as i64)).expect("non-zero label"))
    }

    /// Whether `b` labels a point, i.e. `b != 0` and `b^(q+1) != -1`.
    pub fn is_label(&self, b: FqElem) -> bool {
        !b.is_zero() && self.norm(b) != self.field.neg(FqElem::ONE)
    }

    pub fn canonical(&self, b: FqElem) -> FqElem {
        b.min(self.partner(b))
    }

    /// The point containing the non-isotropic 1-space spanned by `(x, y)`.
    pub fn point_of_vector(&self, x: FqElem, y: FqElem) -> UnitaryPoint {
        if x.is_zero() || y.is_zero() {
            UnitaryPoint::Alpha
        } else {
            let b = self.field.div(y, x).expect("x non-zero");
            UnitaryPoint::Omega(self.canonical(b))
        }
    }

    /// A vector spanning one of the two 1-spaces of the point.
    pub fn vector(&self, pt: UnitaryPoint) -> (FqElem, FqElem) {
        match pt {
            UnitaryPoint::Alpha => (FqElem::ONE, FqElem::ZERO),
            UnitaryPoint::Omega(b) => (FqElem::ONE, b),
        }
    }

    pub fn apply(&self, m: &Mat2, pt: UnitaryPoint) -> UnitaryPoint {
        let (x, y) = self.vector(pt);
        let (x2, y2) = mat_apply(&self.field, m, x, y);
        self.point_of_vector(x2, y2)
    }

    pub fn frobenius(&self, pt: UnitaryPoint, k: u32) -> UnitaryPoint {
        match pt {
            UnitaryPoint::Alpha => UnitaryPoint::Alpha,
            UnitaryPoint::Omega(b) => UnitaryPoint::Omega(self.canonical(self.field.frobenius(b, k))),
        }
    }

    /// All points, `Alpha` first and then by canonical label.
    pub fn points(&self) -> Vec<UnitaryPoint> {
        let mut out = vec![UnitaryPoint::Alpha];
        out.extend(
            self.field
                .nonzero()
                .filter(|&b| self.is_label(b) && self.canonical(b) == b)
                .map(UnitaryPoint::Omega),
        );
        out
    }

    /// Special unitary matrix `[[a, -b^q], [b, a^q]]`, given `a^(q+1) + b^(q+1) = 1`.
    pub fn su2(&self, a: FqElem, b: FqElem) -> Mat2 {
        let fq = &self.field;
        let bq = fq.frobenius(b, fq.f() / 2);
        let aq = fq.frobenius(a, fq.f() / 2);
        [[a, fq.neg(bq)], [b, aq]]
    }
}

fn unitary_perm(points: &[UnitaryPoint], index: &[u32], map: impl Fn(UnitaryPoint) -> UnitaryPoint) -> Permutation {
    let idx = |pt: UnitaryPoint| match pt {
        UnitaryPoint::Alpha => 0,
        UnitaryPoint::Omega(b) => index[b.index()],
    };
    Permutation::from_images_unchecked(points.iter().map(|&pt| idx(map(pt))).collect())
}

/// The variant acting on pairs `{<w>, <w>^⊥}` of orthogonal non-degenerate points of the
/// unitary plane over `GF(q^2)`.
pub fn psl2_c3_action(q: u64, variant: GroupVariant, caps: &Caps) -> Result<LabelledAction> {
    let (p, f) = field_params(q)?;
    variant.check(p, f)?;
    let n = (q * (q - 1) / 2) as usize;
    caps.check_points(n)?;
    let field = Arc::new(FqField::new(p, 2 * f)?);
    let plane = UnitaryPlane::new(field.clone(), q);
    let fq = field.as_ref();

    let points = plane.points();
    debug_assert_eq!(points.len(), n);
    let mut index = vec![u32::MAX; fq.q() as usize];
    for (i, pt) in points.iter().enumerate() {
        if let UnitaryPoint::Omega(b) = pt {
            index[b.index()] = i as u32;
        }
    }
    let mat_perm = |m: &Mat2| unitary_perm(&points, &index, |pt| plane.apply(m, pt));
    let frob_perm = |k: u32| unitary_perm(&points, &index, |pt| plane.frobenius(pt, k));

    let (zero, one) = (FqElem::ZERO, FqElem::ONE);
    let torus = fq.lambda_pow(q as i64 - 1);
    let diag = plane.su2(torus, zero);
    let swap = plane.su2(zero, one);
    let mut extra = Vec::new();
    let delta = [[torus, zero], [zero, one]];
    match variant {
        GroupVariant::Psl2 => {}
        GroupVariant::Pgl2 => extra.push(mat_perm(&delta)),
        GroupVariant::PSigmaL2 => extra.push(frob_perm(1)),
        GroupVariant::PGammaL2 => {
            extra.push(mat_perm(&delta));
            extra.push(frob_perm(1));
        }
        GroupVariant::DeltaPhi(j) => extra.push(mat_perm(&delta).then(&frob_perm(j))),
    }

    let order = expected_order(q, p, f, variant);
    let base_order = BigUint::from(psl2_order(q));
    // A third special unitary matrix off the torus normaliser; the first one that
    // completes a generating set is kept.
    let candidates = fq.nonzero().flat_map(|a| fq.nonzero().map(move |b| (a, b)));
    let mut base = None;
    for (a, b) in candidates {
        if fq.add(plane.norm(a), plane.norm(b)) != one {
            continue;
        }
        let gens = vec![mat_perm(&diag), mat_perm(&swap), mat_perm(&plane.su2(a, b))];
        match PermGroup::with_known_order(n, gens.clone(), &base_order) {
            Ok(_) => {
                base = Some(gens);
                break;
            }
            Err(SaxlError::OrderMismatch { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    let mut gens = base.ok_or_else(|| SaxlError::NotFound("generators for the special unitary group".into()))?;
    gens.extend(extra);
    let group = PermGroup::with_known_order(n, gens, &order)?;
    let labels = points.into_iter().map(OmegaPoint::Unitary).collect();
    let mut action = LabelledAction::new(
        format!("{variant}({q}) on orthogonal pairs of the unitary plane"),
        ActionFamily::Psl2C3 { q, variant },
        group,
        labels,
    )
    .with_field(field);
    maximality_warning(&mut action)?;
    Ok(action)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_index_is_lexicographic() {
        let m = 6;
        let mut k = 0;
        for a in 0..m {
            for b in a + 1..m {
                assert_eq!(pair_index(a, b, m), k);
                k += 1;
            }
        }
    }

    #[test]
    fn variant_parsing_and_checks() {
        assert_eq!(GroupVariant::parse("deltaphi:1").unwrap(), GroupVariant::DeltaPhi(1));
        assert_eq!(GroupVariant::parse("PGL").unwrap(), GroupVariant::Pgl2);
        assert!(GroupVariant::parse("nonsense").is_err());
        assert!(GroupVariant::DeltaPhi(1).check(3, 2).is_ok());
        assert!(GroupVariant::DeltaPhi(1).check(3, 3).is_err());
        assert!(GroupVariant::DeltaPhi(2).check(3, 2).is_err());
    }

    #[test]
    fn c2_small_cases() {
        let caps = Caps::default();
        let a = psl2_c2_action(8, GroupVariant::Pgl2, &caps).unwrap();
        assert_eq!((a.degree(), a.group().order_u128()), (36, 504));
        let b = psl2_c2_action(13, GroupVariant::Psl2, &caps).unwrap();
        assert_eq!((b.degree(), b.group().order_u128()), (91, 1092));
        let c = psl2_c2_action(25, GroupVariant::PSigmaL2, &caps).unwrap();
        assert_eq!((c.degree(), c.group().order_u128()), (325, 15600));
    }

    #[test]
    fn c2_rejects_bad_q() {
        let caps = Caps::default();
        assert!(psl2_c2_action(6, GroupVariant::Psl2, &caps).is_err());
        assert!(psl2_c2_action(3, GroupVariant::Psl2, &caps).is_err());
        assert!(matches!(
            psl2_c2_action(27, GroupVariant::DeltaPhi(1), &caps),
            Err(SaxlError::InvalidVariant(_))
        ));
    }

    #[test]
    fn c3_small_cases() {
        let caps = Caps::default();
        let a = psl2_c3_action(7, GroupVariant::Psl2, &caps).unwrap();
        assert_eq!((a.degree(), a.group().order_u128()), (21, 168));
        let b = psl2_c3_action(9, GroupVariant::PSigmaL2, &caps).unwrap();
        assert_eq!((b.degree(), b.group().order_u128()), (36, 720));
    }
}
