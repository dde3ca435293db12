//! Exact rational-integer utilities: gcd, valuations, cube detection,
//! primality, sieves and modular square roots.
//!
//! Everything here is arbitrary-precision. Inputs at the scale this crate
//! targets fit comfortably in 128 bits, but the contract is exactness, not
//! width.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Non-negative greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Largest exponent e with q^e | n.
///
/// Rejects non-prime q and n = 0 (the valuation of 0 is an error here,
/// not infinity; callers guard).
pub fn valuation(q: &BigInt, n: &BigInt) -> Result<u64> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q.clone()));
    }
    if n.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let mut m = n.abs();
    let mut e = 0u64;
    while (&m % q).is_zero() {
        m /= q;
        e += 1;
    }
    Ok(e)
}

/// The m with m^3 = n, if n is a perfect cube (negative n allowed).
pub fn cube_root_exact(n: &BigInt) -> Option<BigInt> {
    let r = n.cbrt();
    if &(&r * &r) * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Prime factorization by trial division, ascending. Requires n > 0.
///
/// Suitable for the desk-scale operands this crate works with; there is no
/// sub-exponential fallback.
pub fn factor(n: &BigInt) -> Vec<(BigInt, u64)> {
    assert!(n.is_positive(), "factor requires a positive argument");
    let mut out = Vec::new();
    let mut m = n.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        if (&m % &p).is_zero() {
            let mut e = 0u64;
            while (&m % &p).is_zero() {
                m /= &p;
                e += 1;
            }
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if m > BigInt::one() {
        out.push((m, 1));
    }
    out
}

/// True iff no prime square divides n. Rejects n <= 1.
pub fn is_squarefree(n: &BigInt) -> Result<bool> {
    if n <= &BigInt::one() {
        return Err(Error::BelowRange);
    }
    Ok(factor(n).iter().all(|(_, e)| *e == 1))
}

/// Largest perfect cube dividing g > 0: the product of q^(3*floor(e/3))
/// over primes q^e || g. The quotient g / result is cube-free.
pub fn largest_cube_divisor(g: &BigInt) -> BigInt {
    assert!(g.is_positive(), "largest_cube_divisor requires g > 0");
    let mut t = BigInt::one();
    for (q, e) in factor(g) {
        t *= q.pow(3 * (e as u32 / 3));
    }
    t
}

/// Miller-Rabin witnesses: the first 12 primes. This set is deterministic
/// for all n < 3_317_044_064_679_887_385_961_981 (Sorenson-Webster bound,
/// comfortably past 2^80); beyond that the test is still run with the same
/// witnesses but is no longer a proof.
const MR_WITNESSES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality for the crate's working range (see
/// [`MR_WITNESSES`] for the exact bound).
pub fn is_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    for w in MR_WITNESSES {
        let w = BigInt::from(w);
        if *n == w {
            return true;
        }
        if (n % &w).is_zero() {
            return false;
        }
    }
    // n odd, coprime to the witness primes
    let n_minus_1: BigInt = n - BigInt::one();
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for w in MR_WITNESSES {
        let mut x = BigInt::from(w).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes <= limit, ascending (empty for limit < 2).
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2usize;
    while p * p <= n {
        if sieve[p] {
            let mut q = p * p;
            while q <= n {
                sieve[q] = false;
                q += p;
            }
        }
        p += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| if b { Some(i as u64) } else { None })
        .collect()
}

/// Floor square root for non-negative n.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative());
    n.sqrt()
}

/// True iff n is a perfect square (n >= 0).
pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let s = n.sqrt();
    &s * &s == *n
}

/// A square root of n modulo the odd prime p, reduced to [0, p), or None
/// when n is a quadratic non-residue. Rejects p | n.
///
/// Which of the two roots comes back is unspecified but deterministic:
/// the Tonelli-Shanks run below always picks the same non-residue and the
/// same chain, so repeated calls agree. Callers needing the other root
/// negate.
pub fn sqrt_mod(n: &BigInt, p: &BigInt) -> Result<Option<BigInt>> {
    if p.is_even() || !is_prime(p) {
        return Err(Error::NotOddPrime(p.clone()));
    }
    let n = n.mod_floor(p);
    if n.is_zero() {
        return Err(Error::SharedModulus);
    }
    let one = BigInt::one();
    let p_minus_1 = p - &one;
    let half = &p_minus_1 / 2;
    if n.modpow(&half, p) != one {
        return Ok(None); // Euler criterion
    }
    // p = 3 mod 4 shortcut
    if (p % 4u32) == BigInt::from(3) {
        let r = n.modpow(&((p + 1) / 4), p);
        debug_assert_eq!((&r * &r).mod_floor(p), n);
        return Ok(Some(r));
    }
    // Tonelli-Shanks: p - 1 = q * 2^s with q odd
    let s = p_minus_1.trailing_zeros().unwrap();
    let q = &p_minus_1 >> s;
    // deterministic non-residue scan
    let mut z = BigInt::from(2);
    while z.modpow(&half, p) == one {
        z += 1;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = n.modpow(&q, p);
    let mut r = n.modpow(&((&q + 1) / 2), p);
    let two = BigInt::from(2);
    while !t.is_one() {
        // least i with t^(2^i) = 1
        let mut i = 0u64;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = t2.modpow(&two, p);
            i += 1;
        }
        let b = c.modpow(&(BigInt::one() << (m - i - 1)), p);
        m = i;
        c = (&b * &b).mod_floor(p);
        t = (&t * &c).mod_floor(p);
        r = (&r * &b).mod_floor(p);
    }
    debug_assert_eq!((&r * &r).mod_floor(p), n);
    Ok(Some(r))
}

/// Inverse of a modulo m (gcd(a, m) = 1), in [0, m).
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let eg = a.extended_gcd(m);
    if !eg.gcd.is_one() {
        return None;
    }
    Some(eg.x.mod_floor(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&big(0), &big(7)), big(7));
        assert_eq!(gcd(&big(17), &big(51)), big(17));
        assert_eq!(gcd(&big(110), &big(10)), big(10));
        assert_eq!(gcd(&big(0), &big(0)), big(0));
        assert_eq!(gcd(&big(-12), &big(18)), big(6));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&big(2), &big(24)).unwrap(), 3);
        assert_eq!(valuation(&big(7), &big(343)).unwrap(), 3);
        assert_eq!(valuation(&big(3), &big(51)).unwrap(), 1);
        assert!(valuation(&big(4), &big(24)).is_err());
        assert!(valuation(&big(2), &big(0)).is_err());
    }

    #[test]
    fn cube_roots() {
        assert_eq!(cube_root_exact(&big(343)), Some(big(7)));
        assert_eq!(cube_root_exact(&big(-658503)), Some(big(-87)));
        assert_eq!(cube_root_exact(&big(2)), None);
        assert_eq!(cube_root_exact(&big(0)), Some(big(0)));
        for m in -40i64..=40 {
            assert_eq!(cube_root_exact(&big(m * m * m)), Some(big(m)));
        }
    }

    #[test]
    fn squarefree_examples() {
        assert!(is_squarefree(&big(7)).unwrap());
        assert!(!is_squarefree(&big(12)).unwrap());
        assert!(is_squarefree(&big(30)).unwrap());
        assert!(is_squarefree(&big(1)).is_err());
        assert!(is_squarefree(&big(0)).is_err());
    }

    #[test]
    fn cube_divisors() {
        assert_eq!(largest_cube_divisor(&big(8)), big(8));
        // gcd(147, 42) = 21 contains no prime cube
        assert_eq!(largest_cube_divisor(&big(21)), big(1));
        assert_eq!(largest_cube_divisor(&big(48)), big(8));
        for g in 1i64..=600 {
            let t = largest_cube_divisor(&big(g));
            assert!(cube_root_exact(&t).is_some());
            assert!((big(g) % &t).is_zero());
            let rest = big(g) / &t;
            assert_eq!(largest_cube_divisor(&rest), big(1));
        }
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(&big(1759)));
        assert!(is_prime(&big(919)));
        // trial division to sqrt(1801) < 43 confirms 1801
        let n = 1801i64;
        let by_trial = (2..=42).all(|d| n % d != 0);
        assert!(by_trial);
        assert!(is_prime(&big(n)));
        assert!(!is_prime(&big(1)));
        assert!(!is_prime(&big(0)));
        assert!(!is_prime(&big(-7)));
        assert!(is_prime(&big(2)));
        assert!(!is_prime(&BigInt::from(3215031751u64))); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn sieve_examples() {
        assert_eq!(primes_up_to(10), vec![2, 3, 5, 7]);
        assert_eq!(primes_up_to(2), vec![2]);
        assert_eq!(primes_up_to(30).len(), 10);
        assert!(primes_up_to(1).is_empty());
    }

    #[test]
    fn sieve_matches_is_prime() {
        let ps = primes_up_to(2000);
        let set: std::collections::HashSet<u64> = ps.into_iter().collect();
        for n in 2u64..=2000 {
            assert_eq!(set.contains(&n), is_prime(&big(n as i64)), "n = {n}");
        }
    }

    #[test]
    fn sqrt_mod_examples() {
        let r = sqrt_mod(&big(4), &big(7)).unwrap().unwrap();
        assert!(r == big(2) || r == big(5));
        // 8^2 = 64 = 2 mod 31
        let r = sqrt_mod(&big(2), &big(31)).unwrap().unwrap();
        assert!(r == big(8) || r == big(23));
        // squares mod 7 are {1, 2, 4}
        assert_eq!(sqrt_mod(&big(3), &big(7)).unwrap(), None);
        assert!(sqrt_mod(&big(7), &big(7)).is_err());
        assert!(sqrt_mod(&big(3), &big(15)).is_err());
        assert!(sqrt_mod(&big(3), &big(2)).is_err());
    }

    #[test]
    fn sqrt_mod_agrees_with_euler() {
        for &p in &[5i64, 13, 17, 29, 97, 193, 257, 12289] {
            let bp = big(p);
            for n in 1..p.min(60) {
                let bn = big(n);
                let euler = bn.modpow(&big((p - 1) / 2), &bp).is_one();
                match sqrt_mod(&bn, &bp).unwrap() {
                    Some(s) => {
                        assert!(euler);
                        assert_eq!((&s * &s).mod_floor(&bp), bn.mod_floor(&bp));
                        // determinism
                        assert_eq!(sqrt_mod(&bn, &bp).unwrap(), Some(s));
                    }
                    None => assert!(!euler),
                }
            }
        }
    }

    #[test]
    fn mod_inverse_basics() {
        assert_eq!(mod_inverse(&big(3), &big(7)), Some(big(5)));
        assert_eq!(mod_inverse(&big(4), &big(8)), None);
    }
}
