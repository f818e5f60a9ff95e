//! Finite fields `GF(p^f)` via Zech logarithms, plus the small number theory the
//! criteria need.
//!
//! The defining polynomial is the least monic irreducible of degree `f` when coefficient
//! tuples `(c_0, .., c_{f-1})` are compared with the constant term most significant.
//! The distinguished primitive element `λ` is the least primitive element under the same
//! order on coordinate tuples `(a_0, .., a_{f-1})` of `a_0 + a_1 x + ..`.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SaxlError};

/// Largest field order built.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Euler–Mascheroni constant, truncated so that bounds derived from it err on the safe side.
pub const EULER_GAMMA: f64 = 0.5772156649;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorisation as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Some((p, f))` when `q = p^f` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, f)] => Some((*p, *f)),
        _ => None,
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// `φ(k)` for every `k ≤ n` by sieve.
pub fn euler_phi_table(n: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for p in 2..=n {
        if phi[p] == p as u64 {
            for k in (p..=n).step_by(p) {
                phi[k] -= phi[k] / p as u64;
            }
        }
    }
    phi
}

fn bound_denominator(n: u64) -> f64 {
    let ll = (n as f64).ln().ln();
    EULER_GAMMA.exp() * ll + 3.0 / ll
}

/// `n / (e^γ log log n + 3 / log log n)` with natural logarithms, for `n ≥ 3`.
pub fn euler_lower_bound(n: u64) -> f64 {
    n as f64 / bound_denominator(n)
}

/// Certify `φ(n) > euler_lower_bound(n)`. The floating-point bound is inflated by a
/// relative `2^-40` before comparing, so a `true` answer survives rounding error.
pub fn euler_bound_holds(n: u64, phi: u64) -> bool {
    let slack = 1.0 - f64::powi(2.0, -40);
    (phi as f64) * bound_denominator(n) * slack > n as f64
}

/// An element of a finite field: zero, or `λ^k` stored as `k + 1`.
/// The derived order puts zero first and then follows the exponent of `λ`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FqElem(u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn from_log(k: u32) -> FqElem {
        FqElem(k + 1)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Discrete logarithm to base `λ`, `None` for zero.
    pub fn log(self) -> Option<u32> {
        self.0.checked_sub(1)
    }

    /// Dense index in `0..q`: zero is 0 and `λ^k` is `k + 1`.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> FqElem {
        FqElem(i as u32)
    }
}

impl std::fmt::Debug for FqElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.log() {
            None => write!(f, "0"),
            Some(k) => write!(f, "λ^{k}"),
        }
    }
}

const NO_ZECH: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct FqField {
    p: u32,
    f: u32,
    q: u32,
    modulus: Vec<u32>,
    /// Coordinate code `Σ a_i p^i` of `λ^k`.
    exp: Vec<u32>,
    /// Inverse of `exp`, indexed by code; entry for code 0 is unused.
    log: Vec<u32>,
    /// `zech[k] = log(1 + λ^k)`, or `NO_ZECH` when `1 + λ^k = 0`.
    zech: Vec<u32>,
}

fn decode(code: u32, p: u32, f: u32) -> Vec<u32> {
    let mut c = code;
    (0..f)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Remainder of `a` modulo the monic `m` (coefficients low to high, `m` including its
/// leading 1).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let v = (r[shift + i] + p - (lead * c) % p) % p;
                r[shift + i] = v;
            }
        }
        r.pop();
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(&prod, m, p);
    r.resize(m.len() - 1, 0);
    r
}

fn poly_powmod(a: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
    let f = m.len() - 1;
    let mut acc = vec![0u32; f];
    acc[0] = 1;
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &base, m, p);
        }
        base = poly_mulmod(&base, &base, m, p);
        e >>= 1;
    }
    acc
}

/// Coefficient tuples of length `len` in lexicographic order with index 0 most significant.
fn tuples_constant_first(p: u32, len: u32) -> impl Iterator<Item = Vec<u32>> {
    let total = (p as u64).pow(len);
    (0..total).map(move |mut t| {
        let mut v = vec![0u32; len as usize];
        for i in (0..len as usize).rev() {
            v[i] = (t % p as u64) as u32;
            t /= p as u64;
        }
        v
    })
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let f = (m.len() - 1) as u32;
    for d in 1..=f / 2 {
        for low in tuples_constant_first(p, d) {
            let mut div = low;
            div.push(1);
            if poly_rem(m, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FqField {
    /// `GF(p^f)`; errors when `p` is not prime, `f = 0` or the order exceeds the cap.
    pub fn new(p: u64, f: u32) -> Result<FqField> {
        if !is_prime(p) {
            return Err(SaxlError::Precondition(format!("{p} is not prime")));
        }
        if f == 0 {
            return Err(SaxlError::Precondition("field degree must be positive".into()));
        }
        let q = p.checked_pow(f).filter(|&q| q <= MAX_FIELD_ORDER);
        let Some(q) = q else {
            return Err(SaxlError::cap(
                "field order",
                MAX_FIELD_ORDER,
                (p as u128).saturating_pow(f),
            ));
        };
        let (p, q) = (p as u32, q as u32);

        let modulus = if f == 1 {
            vec![0, 1]
        } else {
            tuples_constant_first(p, f)
                .map(|mut c| {
                    c.push(1);
                    c
                })
                .find(|m| is_irreducible(m, p))
                .expect("irreducible polynomials exist in every degree")
        };

        let order = (q - 1) as u64;
        let primes: Vec<u64> = factorize(order).into_iter().map(|(r, _)| r).collect();
        let one = {
            let mut v = vec![0u32; f as usize];
            v[0] = 1;
            v
        };
        let generator = tuples_constant_first(p, f)
            .filter(|a| a.iter().any(|&c| c != 0))
            .find(|a| primes.iter().all(|&r| poly_powmod(a, order / r, &modulus, p) != one))
            .expect("multiplicative group is cyclic");

        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let mut cur = one.clone();
        for k in 0..order as u32 {
            let code = encode(&cur, p);
            exp.push(code);
            log[code as usize] = k;
            cur = poly_mulmod(&cur, &generator, &modulus, p);
        }

        let add_one = |code: u32| -> u32 {
            let mut d = decode(code, p, f);
            d[0] = (d[0] + 1) % p;
            encode(&d, p)
        };
        let zech = exp
            .iter()
            .map(|&code| {
                let s = add_one(code);
                if s == 0 {
                    NO_ZECH
                } else {
                    log[s as usize]
                }
            })
            .collect();

        Ok(FqField {
            p,
            f,
            q,
            modulus,
            exp,
            log,
            zech,
        })
    }

    /// `GF(q)` for a prime power `q`.
    pub fn with_order(q: u64) -> Result<FqField> {
        let (p, f) = prime_power(q).ok_or_else(|| SaxlError::Precondition(format!("{q} is not a prime power")))?;
        FqField::new(p, f)
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u64 {
        self.q as u64
    }

    /// Order of the multiplicative group.
    pub fn units(&self) -> u64 {
        (self.q - 1) as u64
    }

    /// Coefficients `c_0 .. c_{f-1}` of the monic defining polynomial.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus[..self.f as usize]
    }

    pub fn primitive(&self) -> FqElem {
        FqElem::from_log(1 % self.units().max(1) as u32)
    }

    pub fn zero(&self) -> FqElem {
        FqElem::ZERO
    }

    pub fn one(&self) -> FqElem {
        FqElem::ONE
    }

    /// Coordinates `(a_0, .., a_{f-1})` of `x = a_0 + a_1 x + ..`.
    pub fn coordinates(&self, x: FqElem) -> Vec<u32> {
        match x.log() {
            None => vec![0; self.f as usize],
            Some(k) => decode(self.exp[k as usize], self.p, self.f),
        }
    }

    pub fn from_coordinates(&self, coords: &[u32]) -> Result<FqElem> {
        if coords.len() != self.f as usize || coords.iter().any(|&c| c >= self.p) {
            return Err(SaxlError::Precondition("bad coordinate vector".into()));
        }
        Ok(self.element_of_code(encode(coords, self.p)))
    }

    fn element_of_code(&self, code: u32) -> FqElem {
        if code == 0 {
            FqElem::ZERO
        } else {
            FqElem::from_log(self.log[code as usize])
        }
    }

    /// The image of the integer `n` in the prime subfield.
    pub fn from_int(&self, n: i64) -> FqElem {
        let r = n.rem_euclid(self.p as i64) as u32;
        self.element_of_code(r)
    }

    /// `λ^k` for any integer `k`.
    pub fn lambda_pow(&self, k: i64) -> FqElem {
        FqElem::from_log(k.rem_euclid(self.units() as i64) as u32)
    }

    /// All elements, zero first and then `λ^0, λ^1, ..`.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q as usize).map(FqElem::from_index)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FqElem> {
        (1..self.q as usize).map(FqElem::from_index)
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        match (a.log(), b.log()) {
            (Some(x), Some(y)) => FqElem::from_log(((x as u64 + y as u64) % self.units()) as u32),
            _ => FqElem::ZERO,
        }
    }

    pub fn inv(&self, a: FqElem) -> Option<FqElem> {
        let k = a.log()? as u64;
        Some(FqElem::from_log(((self.units() - k) % self.units()) as u32))
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Option<FqElem> {
        Some(self.mul(a, self.inv(b)?))
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        match a.log() {
            None => a,
            Some(_) if self.p == 2 => a,
            Some(k) => FqElem::from_log(((k as u64 + self.units() / 2) % self.units()) as u32),
        }
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        let (Some(x), Some(y)) = (a.log(), b.log()) else {
            return if a.is_zero() { b } else { a };
        };
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        let z = self.zech[(hi - lo) as usize];
        if z == NO_ZECH {
            FqElem::ZERO
        } else {
            FqElem::from_log(((lo as u64 + z as u64) % self.units()) as u32)
        }
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    /// `a^e` for any integer `e`; `0^e` is 0 for `e > 0` and 1 for `e = 0`.
    /// Returns `None` for zero raised to a negative power.
    pub fn pow(&self, a: FqElem, e: i64) -> Option<FqElem> {
        match a.log() {
            None if e > 0 => Some(FqElem::ZERO),
            None if e == 0 => Some(FqElem::ONE),
            None => None,
            Some(k) => {
                let m = self.units() as i128;
                let l = ((k as i128) * (e as i128)).rem_euclid(m);
                Some(FqElem::from_log(l as u32))
            }
        }
    }

    /// `a^(p^k)`.
    pub fn frobenius(&self, a: FqElem, k: u32) -> FqElem {
        match a.log() {
            None => a,
            Some(l) => {
                let m = self.units() as u128;
                let pk = (self.p as u128).pow(k % self.f) % m;
                FqElem::from_log(((l as u128 * pk) % m) as u32)
            }
        }
    }

    /// Multiplicative order of a non-zero element.
    pub fn order(&self, a: FqElem) -> Option<u64> {
        let k = a.log()? as u64;
        Some(self.units() / num_integer::gcd(k, self.units()))
    }

    /// Whether a non-zero element of a field of odd order is a square.
    pub fn is_square(&self, a: FqElem) -> Result<bool> {
        if self.p == 2 {
            return Err(SaxlError::Precondition(
                "squares are only classified in odd characteristic".into(),
            ));
        }
        match a.log() {
            None => Err(SaxlError::Precondition(
                "zero is neither square nor non-square here".into(),
            )),
            Some(k) => Ok(k % 2 == 0),
        }
    }

    /// Literal check: `a^(p^k) = a` for some `0 < k < f`.
    pub fn in_proper_subfield(&self, a: FqElem) -> bool {
        (1..self.f).any(|k| self.frobenius(a, k) == a)
    }

    /// Same as [`in_proper_subfield`](Self::in_proper_subfield), testing only the maximal
    /// proper subfields.
    pub fn in_proper_subfield_by_divisors(&self, a: FqElem) -> bool {
        factorize(self.f as u64)
            .into_iter()
            .any(|(r, _)| self.frobenius(a, self.f / r as u32) == a)
    }

    /// Number of non-squares of `GF(q)` lying in no proper subfield.
    pub fn count_nonsquare_nonsubfield(&self) -> Result<u64> {
        if self.p == 2 {
            return Err(SaxlError::Precondition("needs odd characteristic".into()));
        }
        Ok(self
            .nonzero()
            .filter(|&a| a.log().unwrap() % 2 == 1 && !self.in_proper_subfield_by_divisors(a))
            .count() as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf13_generator_and_squares() {
        let f = FqField::new(13, 1).unwrap();
        assert_eq!(f.coordinates(f.primitive()), vec![2]);
        let squares: Vec<u32> = f
            .nonzero()
            .filter(|&a| f.is_square(a).unwrap())
            .map(|a| f.coordinates(a)[0])
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        assert_eq!(squares, vec![1, 3, 4, 9, 10, 12]);
    }

    #[test]
    fn gf25_modulus_is_least_irreducible() {
        // x^2 + x + 1: constant term 1 is the least possible, and x^2 + 1 splits mod 5.
        let f = FqField::new(5, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1]);
    }

    #[test]
    fn field_axioms_gf27() {
        let f = FqField::new(3, 3).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), FqElem::ZERO);
            for b in f.elements() {
                // distributivity against a fixed third element
                let c = f.primitive();
                assert_eq!(f.mul(c, f.add(a, b)), f.add(f.mul(c, a), f.mul(c, b)));
                assert_eq!(f.add(a, b), f.add(b, a));
            }
        }
    }

    #[test]
    fn counts_of_nonsquares_outside_subfields() {
        assert_eq!(FqField::new(5, 2).unwrap().count_nonsquare_nonsubfield().unwrap(), 12);
        assert_eq!(FqField::new(13, 1).unwrap().count_nonsquare_nonsubfield().unwrap(), 6);
        assert_eq!(FqField::new(3, 2).unwrap().count_nonsquare_nonsubfield().unwrap(), 4);
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(FqField::new(4, 2).is_err());
        assert!(FqField::new(2, 21).unwrap_err().is_cap_exceeded());
        assert!(FqField::new(2, 20).is_ok());
    }

    #[test]
    fn euler_values() {
        assert_eq!(euler_phi(100), 40);
        assert_eq!(euler_phi(840), 192);
        assert!((euler_lower_bound(100) - 21.347).abs() < 0.01);
        assert!(euler_bound_holds(100, 40));
        let table = euler_phi_table(1000);
        for n in 1..=1000u64 {
            assert_eq!(table[n as usize], euler_phi(n));
        }
    }
}
