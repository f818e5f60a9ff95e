use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SaxlError};
use crate::gf::{euler_bound_holds, euler_phi, euler_phi_table, is_prime, prime_power, FqField};

/// Valency of the Saxl graph and number of regular suborbits of `PΣL(2,q)` on pairs of
/// projective points, for odd `q = p^f` with `f >= 2`: `m(q-1)/2` and `m/(2f)`, where `m`
/// counts non-squares outside every proper subfield.
pub fn c2_counts(fq: &FqField) -> Result<(u64, u64)> {
    if fq.p() == 2 {
        return Err(SaxlError::Precondition("needs odd q".into()));
    }
    if fq.f() == 1 {
        return Err(SaxlError::Unsupported(
            "prime fields: pairs meeting in a point are also bases, count by brute force".into(),
        ));
    }
    let m = fq.count_nonsquare_nonsubfield()?;
    let f = fq.f() as u64;
    if m % (2 * f) != 0 {
        return Err(SaxlError::Precondition(format!(
            "m = {m} is not divisible by 2f = {}",
            2 * f
        )));
    }
    Ok((m * (fq.q() - 1) / 2, m / (2 * f)))
}

/// Regular suborbits of `PSL(2,q)` on the unitary model for an odd prime `q`: `(q - l)/4`
/// with `q ≡ l (mod 4)`, `l` in `{1, 3}`.
pub fn c3_regular_count_prime(q: u64) -> Result<u64> {
    if q < 5 || !is_prime(q) {
        return Err(SaxlError::Precondition(format!("need an odd prime q >= 5, got {q}")));
    }
    Ok((q - q % 4) / 4)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedForm {
    /// `PSL(2,q)`, `q` odd, on pairs of projective points (stabiliser `D_(q-1)`).
    PslPairs,
    /// `PSL(2,q)`, `q` odd, on the unitary model (stabiliser `D_(q+1)`).
    PslUnitary,
    /// `PGL(2,q)` on pairs of projective points.
    PglPairs,
}

/// Exact non-base probability from its closed form.
pub fn q_closed_form(q: u64, kind: ClosedForm) -> Result<BigRational> {
    let (p, _) = prime_power(q).ok_or_else(|| SaxlError::Precondition(format!("{q} is not a prime power")))?;
    if q < 4 {
        return Err(SaxlError::Precondition(format!("need q >= 4, got {q}")));
    }
    let qi = BigInt::from(q);
    let one = BigRational::one();
    let frac = |num: BigInt, den: BigInt| BigRational::new(num, den);
    let (a, b) = if q % 4 == 1 { (7, 1) } else { (5, 3) };
    match kind {
        ClosedForm::PglPairs => Ok(one - frac(4 * (&qi - 1), &qi * (&qi + 1))),
        _ if p == 2 => Err(SaxlError::Precondition("needs odd q".into())),
        ClosedForm::PslPairs => Ok(one - frac((&qi - 1) * (&qi + a), 2 * &qi * (&qi + 1))),
        ClosedForm::PslUnitary => Ok(one - frac((&qi + 1) * (&qi - b), 2 * &qi * (&qi - 1))),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanResult {
    pub checked: u64,
    pub failures: Vec<u64>,
}

impl ScanResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `φ(n) > n / (e^γ log log n + 3 / log log n)` for `3 <= n <= nmax`, using a sieve. Each
/// comparison leans towards failure by a relative margin of `2^-40`.
pub fn euler_bound_scan(nmax: u64) -> ScanResult {
    let table = euler_phi_table(nmax as usize);
    let mut out = ScanResult::default();
    for n in 3..=nmax {
        out.checked += 1;
        if !euler_bound_holds(n, table[n as usize]) {
            out.failures.push(n);
        }
    }
    out
}

/// Odd prime powers `q = p^f` with `f >= 2` and `lo < q < hi`.
pub fn odd_nonprime_prime_powers(lo: u64, hi: u64) -> Vec<(u64, u32)> {
    (lo + 1..hi)
        .filter_map(|q| prime_power(q).map(|(p, f)| (q, p, f)))
        .filter(|&(_, p, f)| p != 2 && f >= 2)
        .map(|(q, _, f)| (q, f))
        .collect()
}

/// `φ(q-1) >= 4f` for odd prime powers `27 < q < qmax` that are not prime.
pub fn c2_euler_scan(qmax: u64) -> ScanResult {
    let mut out = ScanResult::default();
    for (q, f) in odd_nonprime_prime_powers(27, qmax) {
        out.checked += 1;
        if euler_phi(q - 1) < 4 * f as u64 {
            out.failures.push(q);
        }
    }
    out
}

/// `φ(q^2-1) >= 4f(q+1)` for odd prime powers `27 < q < qmax`.
pub fn c3_euler_scan(qmax: u64) -> ScanResult {
    let mut out = ScanResult::default();
    for q in 28..qmax {
        let Some((p, f)) = prime_power(q) else { continue };
        if p == 2 {
            continue;
        }
        out.checked += 1;
        if euler_phi(q * q - 1) < 4 * f as u64 * (q + 1) {
            out.failures.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(q_closed_form(13, ClosedForm::PslPairs).unwrap(), r(31, 91));
        assert_eq!(q_closed_form(13, ClosedForm::PslUnitary).unwrap(), r(6, 13));
        assert_eq!(q_closed_form(8, ClosedForm::PglPairs).unwrap(), r(11, 18));
        assert!(q_closed_form(8, ClosedForm::PslPairs).is_err());
        assert!(q_closed_form(12, ClosedForm::PglPairs).is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(c2_counts(&FqField::with_order(25).unwrap()).unwrap(), (144, 3));
        assert_eq!(c2_counts(&FqField::with_order(9).unwrap()).unwrap(), (16, 1));
        assert!(c2_counts(&FqField::with_order(13).unwrap()).is_err());
        assert_eq!(c3_regular_count_prime(13).unwrap(), 3);
        assert_eq!(c3_regular_count_prime(17).unwrap(), 4);
        assert_eq!(c3_regular_count_prime(11).unwrap(), 2);
        assert!(c3_regular_count_prime(9).is_err());
    }

    #[test]
    fn small_scans() {
        assert!(euler_bound_scan(10_000).passed());
        let c2 = c2_euler_scan(1000);
        assert!(c2.passed() && c2.checked > 0);
        assert!(c3_euler_scan(200).passed());
    }
}
