//! Arithmetic in Z[w] (w = (-1+i*sqrt(3))/2) and the cubic residue symbol.
//!
//! Two independent routes compute the symbol:
//!
//! * [`cubic_symbol_oracle`] factors the denominator into Eisenstein primes
//!   and exponentiates in each residue field — slow, but it is the
//!   definition.
//! * [`cubic_symbol`] runs a gcd-like reduction loop using reciprocity and
//!   the supplementary laws for the units and for 1-w — no factorization.
//!
//! The two are required to agree on their whole common domain; see
//! [`verify_symbol_agreement`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::batch;
use crate::error::{Error, Result};
use crate::intutil;

/// Denominator norms past this are refused by the factoring oracle.
pub const ORACLE_NORM_CAP: u64 = 1_000_000_000_000;

/// Element c0 + c1*w of Z[w]; multiplication uses w^2 = -1 - w.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EisensteinInt {
    c0: BigInt,
    c1: BigInt,
}

impl EisensteinInt {
    pub fn new(c0: impl Into<BigInt>, c1: impl Into<BigInt>) -> Self {
        Self {
            c0: c0.into(),
            c1: c1.into(),
        }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn omega() -> Self {
        Self::new(0, 1)
    }

    /// The ramified element 1 - w of norm 3.
    pub fn lambda() -> Self {
        Self::new(1, -1)
    }

    pub fn c0(&self) -> &BigInt {
        &self.c0
    }

    pub fn c1(&self) -> &BigInt {
        &self.c1
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.c1.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// N(c0 + c1*w) = c0^2 - c0*c1 + c1^2 >= 0, multiplicative.
    pub fn norm(&self) -> BigInt {
        &self.c0 * &self.c0 - &self.c0 * &self.c1 + &self.c1 * &self.c1
    }

    /// Complex conjugate: (c0 - c1) - c1*w. Satisfies a * conj(a) = N(a).
    pub fn conj(&self) -> Self {
        Self {
            c0: &self.c0 - &self.c1,
            c1: -self.c1.clone(),
        }
    }

    /// Multiply by the primitive sixth root of unity -w^2 = 1 + w
    /// (a 60-degree rotation): (c0, c1) -> (c0 - c1, c0).
    fn rotate(&self) -> Self {
        Self {
            c0: &self.c0 - &self.c1,
            c1: self.c0.clone(),
        }
    }

    /// The six associates, starting with self, each rotated 60 degrees
    /// from the previous.
    fn associates(&self) -> [Self; 6] {
        let a0 = self.clone();
        let a1 = a0.rotate();
        let a2 = a1.rotate();
        let a3 = a2.rotate();
        let a4 = a3.rotate();
        let a5 = a4.rotate();
        [a0, a1, a2, a3, a4, a5]
    }

    /// Canonical associate: the unique one with argument in [0, 60)
    /// degrees, i.e. c1 >= 0 and c0 > c1. Zero maps to zero.
    pub fn canonical_associate(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        for a in self.associates() {
            if !a.c1.is_negative() && a.c0 > a.c1 {
                return a;
            }
        }
        unreachable!("every nonzero element has an associate in the sector")
    }

    /// For a unit, the e with self = (1+w)^e, e in 0..6.
    pub fn unit_exponent(&self) -> Option<u8> {
        if !self.is_unit() {
            return None;
        }
        let mut u = Self::one();
        for e in 0u8..6 {
            if *self == u {
                return Some(e);
            }
            u = u.rotate();
        }
        None
    }

    /// Euclidean division by nearest lattice point: self = q*d + r with
    /// N(r) <= (3/4) N(d) < N(d). Rejects d = 0.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let n = d.norm();
        let t = self * &d.conj();
        let q = Self {
            c0: div_round(&t.c0, &n),
            c1: div_round(&t.c1, &n),
        };
        let r = self - &(&q * d);
        debug_assert!(r.norm() < n);
        Ok((q, r))
    }

    fn divides(&self, other: &Self) -> bool {
        other
            .divrem(self)
            .map(|(_, r)| r.is_zero())
            .unwrap_or(false)
    }
}

/// Nearest-integer division a / n for n > 0 (half rounds up).
fn div_round(a: &BigInt, n: &BigInt) -> BigInt {
    debug_assert!(n.is_positive());
    let two_a: BigInt = a << 1u32;
    let two_n: BigInt = n << 1u32;
    (two_a + n).div_floor(&two_n)
}

impl Add for &EisensteinInt {
    type Output = EisensteinInt;
    fn add(self, rhs: Self) -> EisensteinInt {
        EisensteinInt {
            c0: &self.c0 + &rhs.c0,
            c1: &self.c1 + &rhs.c1,
        }
    }
}

impl Sub for &EisensteinInt {
    type Output = EisensteinInt;
    fn sub(self, rhs: Self) -> EisensteinInt {
        EisensteinInt {
            c0: &self.c0 - &rhs.c0,
            c1: &self.c1 - &rhs.c1,
        }
    }
}

impl Mul for &EisensteinInt {
    type Output = EisensteinInt;
    fn mul(self, rhs: Self) -> EisensteinInt {
        // (a0 + a1 w)(b0 + b1 w) with w^2 = -1 - w
        let a1b1 = &self.c1 * &rhs.c1;
        EisensteinInt {
            c0: &self.c0 * &rhs.c0 - &a1b1,
            c1: &self.c0 * &rhs.c1 + &self.c1 * &rhs.c0 - &a1b1,
        }
    }
}

impl Neg for &EisensteinInt {
    type Output = EisensteinInt;
    fn neg(self) -> EisensteinInt {
        EisensteinInt {
            c0: -self.c0.clone(),
            c1: -self.c1.clone(),
        }
    }
}

impl Add for EisensteinInt {
    type Output = EisensteinInt;
    fn add(self, rhs: Self) -> EisensteinInt {
        &self + &rhs
    }
}

impl Sub for EisensteinInt {
    type Output = EisensteinInt;
    fn sub(self, rhs: Self) -> EisensteinInt {
        &self - &rhs
    }
}

impl Mul for EisensteinInt {
    type Output = EisensteinInt;
    fn mul(self, rhs: Self) -> EisensteinInt {
        &self * &rhs
    }
}

impl Neg for EisensteinInt {
    type Output = EisensteinInt;
    fn neg(self) -> EisensteinInt {
        -&self
    }
}

impl From<BigInt> for EisensteinInt {
    fn from(n: BigInt) -> Self {
        Self {
            c0: n,
            c1: BigInt::zero(),
        }
    }
}

impl From<i64> for EisensteinInt {
    fn from(n: i64) -> Self {
        Self::new(n, 0)
    }
}

impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c1.is_zero() {
            write!(f, "{}", self.c0)
        } else if self.c0.is_zero() {
            write!(f, "{}w", self.c1)
        } else if self.c1.is_negative() {
            write!(f, "{}-{}w", self.c0, -&self.c1)
        } else {
            write!(f, "{}+{}w", self.c0, self.c1)
        }
    }
}

impl FromStr for EisensteinInt {
    type Err = Error;

    /// Accepts `c0`, `c0+c1w`, `c0-c1w`, `c1w`, `w`, `-w` (ASCII `w`, no
    /// spaces; `1w` and `w` both mean w).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad Eisenstein literal {s:?}"));
        let s = s.trim();
        if s.is_empty() {
            return Err(bad());
        }
        let parse_int = |t: &str| -> Result<BigInt> {
            BigInt::from_str(t).map_err(|_| bad())
        };
        match s.strip_suffix('w') {
            None => Ok(Self::new(parse_int(s)?, 0)),
            Some(body) => {
                // split at the last sign that is not leading
                let split = if body.len() > 1 {
                    body[1..].rfind(['+', '-']).map(|i| i + 1)
                } else {
                    None
                };
                let (c0s, c1s) = match split {
                    Some(i) => (&body[..i], &body[i..]),
                    None => ("", body),
                };
                let c1 = match c1s {
                    "" | "+" => BigInt::one(),
                    "-" => -BigInt::one(),
                    t => {
                        let t = t.strip_prefix('+').unwrap_or(t);
                        parse_int(t)?
                    }
                };
                let c0 = if c0s.is_empty() {
                    BigInt::zero()
                } else {
                    parse_int(c0s)?
                };
                Ok(Self { c0, c1 })
            }
        }
    }
}

/// Value of a cubic residue or Jacobi symbol: 0 or a cube root of unity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CubicSymbol {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "w")]
    Omega,
    #[serde(rename = "w2")]
    OmegaSq,
}

impl CubicSymbol {
    pub fn from_exponent(e: i64) -> Self {
        match e.rem_euclid(3) {
            0 => CubicSymbol::One,
            1 => CubicSymbol::Omega,
            _ => CubicSymbol::OmegaSq,
        }
    }

    fn exponent(self) -> Option<i64> {
        match self {
            CubicSymbol::Zero => None,
            CubicSymbol::One => Some(0),
            CubicSymbol::Omega => Some(1),
            CubicSymbol::OmegaSq => Some(2),
        }
    }

    /// Complex conjugate, also the multiplicative inverse for nonzero values.
    pub fn conj(self) -> Self {
        match self {
            CubicSymbol::Omega => CubicSymbol::OmegaSq,
            CubicSymbol::OmegaSq => CubicSymbol::Omega,
            other => other,
        }
    }

    pub fn pow(self, e: u64) -> Self {
        match self.exponent() {
            None => {
                if e == 0 {
                    CubicSymbol::One
                } else {
                    CubicSymbol::Zero
                }
            }
            Some(k) => Self::from_exponent(k * (e % 3) as i64),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CubicSymbol::Zero => "0",
            CubicSymbol::One => "1",
            CubicSymbol::Omega => "w",
            CubicSymbol::OmegaSq => "w2",
        }
    }
}

impl Mul for CubicSymbol {
    type Output = CubicSymbol;
    fn mul(self, rhs: Self) -> Self {
        match (self.exponent(), rhs.exponent()) {
            (Some(a), Some(b)) => Self::from_exponent(a + b),
            _ => CubicSymbol::Zero,
        }
    }
}

impl fmt::Display for CubicSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A greatest common divisor of a and b, canonicalized per
/// [`EisensteinInt::canonical_associate`]. Rejects (0, 0).
pub fn gcd(a: &EisensteinInt, b: &EisensteinInt) -> Result<EisensteinInt> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroGcd);
    }
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let (_, r) = x.divrem(&y)?;
        x = y;
        y = r;
    }
    Ok(x.canonical_associate())
}

/// Write a = (1-w)^k * rest with N(rest) coprime to 3. Rejects 0.
pub fn ramified_valuation(a: &EisensteinInt) -> Result<(u64, EisensteinInt)> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let lambda = EisensteinInt::lambda();
    let three = BigInt::from(3);
    let mut rest = a.clone();
    let mut k = 0u64;
    while (rest.norm() % &three).is_zero() {
        let (q, r) = rest.divrem(&lambda)?;
        debug_assert!(r.is_zero());
        rest = q;
        k += 1;
    }
    Ok((k, rest))
}

/// The associate of a congruent to +-1 mod 3, i.e. of shape m + 3n*w with
/// 3 not dividing m, normalized to m > 0. Returns (a*, e) with
/// a = (1+w)^e * a*. Rejects norms divisible by 3.
pub fn semiprimary_associate(a: &EisensteinInt) -> Result<(EisensteinInt, u8)> {
    let three = BigInt::from(3);
    if (a.norm() % &three).is_zero() {
        return Err(Error::RamifiedElement);
    }
    let mut cand = a.clone();
    for k in 0u8..6 {
        if cand.c1.mod_floor(&three).is_zero() && cand.c0.is_positive() {
            debug_assert!(!cand.c0.mod_floor(&three).is_zero());
            return Ok((cand, (6 - k) % 6));
        }
        cand = cand.rotate();
    }
    unreachable!("an element of norm coprime to 3 has a semiprimary associate")
}

/// Exponent t with (1-w / den) = w^t for a semiprimary denominator
/// m + 3n*w: t = -j*n - (N(den)-1)/3 mod 3, where j = +-1 is m mod 3.
/// Together with (w / den) = w^((N(den)-1)/3) these are the two
/// supplementary laws the reduction loop needs.
fn lambda_exponent(den: &EisensteinInt, omega_exp: i64) -> i64 {
    let three = BigInt::from(3);
    let n: BigInt = (&den.c1 / &three).mod_floor(&three);
    let n: i64 = i64::try_from(&n).expect("residue fits");
    let j: i64 = if den.c0.mod_floor(&three).is_one() {
        1
    } else {
        -1
    };
    (-(j * n) - omega_exp).rem_euclid(3)
}

/// (N(den) - 1)/3 mod 3; the exponent for (w / den).
fn omega_exponent(den: &EisensteinInt) -> i64 {
    let three = BigInt::from(3);
    let m3: BigInt = ((den.norm() - BigInt::one()) / &three).mod_floor(&three);
    i64::try_from(&m3).expect("residue fits")
}

fn check_denominator(den: &EisensteinInt) -> Result<()> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if den.is_unit() {
        return Err(Error::UnitDenominator);
    }
    if (den.norm() % 3u32).is_zero() {
        return Err(Error::RamifiedDenominator);
    }
    Ok(())
}

/// Fast cubic Jacobi symbol (alpha / beta): reduce alpha mod beta, peel
/// 1-w factors and units with the supplementary laws, swap by reciprocity,
/// repeat. No factorization. Agrees with [`cubic_symbol_oracle`] on the
/// whole precondition domain.
pub fn cubic_symbol(alpha: &EisensteinInt, beta: &EisensteinInt) -> Result<CubicSymbol> {
    check_denominator(beta)?;
    // the symbol only sees the denominator's prime factorization, so unit
    // factors may be dropped
    let (mut den, _) = semiprimary_associate(beta)?;
    let mut num = alpha.clone();
    let mut exp: i64 = 0;
    loop {
        num = num.divrem(&den)?.1;
        if num.is_zero() {
            return Ok(CubicSymbol::Zero);
        }
        let (k, rest) = ramified_valuation(&num)?;
        let (semi, e6) = semiprimary_associate(&rest)?;
        let w_exp = omega_exponent(&den);
        if k > 0 {
            exp += (k % 3) as i64 * lambda_exponent(&den, w_exp);
        }
        if e6 > 0 {
            // (1+w / den) = (w^2 / den)^2 ... directly: 1+w = -w^2, and
            // (-1 / den) = 1, so (1+w / den) = w^(2 * w_exp)
            exp += e6 as i64 * 2 * w_exp;
        }
        if semi == EisensteinInt::one() {
            return Ok(CubicSymbol::from_exponent(exp));
        }
        num = std::mem::replace(&mut den, semi);
    }
}

/// Cubic Jacobi symbol with a rational denominator n (3 does not divide n).
/// n = +-1 is the empty denominator and gives One.
pub fn cubic_symbol_int(alpha: &EisensteinInt, n: &BigInt) -> Result<CubicSymbol> {
    if (n % 3u32).is_zero() {
        return Err(Error::DenominatorDivisibleBy3(n.clone()));
    }
    if n.abs().is_one() {
        return Ok(CubicSymbol::One);
    }
    cubic_symbol(alpha, &EisensteinInt::from(n.clone()))
}

/// An Eisenstein prime together with its multiplicity.
type EisFactor = (EisensteinInt, u64);

/// The Eisenstein prime above a split rational prime p = 1 (mod 3).
fn prime_above(p: &BigInt) -> Result<EisensteinInt> {
    let s = intutil::sqrt_mod(&BigInt::from(-3), p)?
        .expect("-3 is a square mod a prime = 1 mod 3");
    let t = ((s - BigInt::one()) * intutil::mod_inverse(&BigInt::from(2), p).unwrap()).mod_floor(p);
    let pi = gcd(
        &EisensteinInt::from(p.clone()),
        &EisensteinInt::new(-t, BigInt::one()),
    )?;
    debug_assert_eq!(pi.norm(), *p);
    Ok(pi)
}

/// Factor beta (nonzero, non-unit, norm coprime to 3) into Eisenstein
/// primes by trial division over the rational primes dividing N(beta).
fn eis_factor(beta: &EisensteinInt) -> Result<Vec<EisFactor>> {
    let norm = beta.norm();
    if norm > BigInt::from(ORACLE_NORM_CAP) {
        return Err(Error::FactorizationCap(norm, BigInt::from(ORACLE_NORM_CAP)));
    }
    let mut out = Vec::new();
    let mut work = beta.clone();
    for (p, e) in intutil::factor(&norm) {
        let pm3 = p.mod_floor(&BigInt::from(3));
        if pm3.is_one() {
            let pi = prime_above(&p)?;
            let mut k = 0u64;
            while pi.divides(&work) {
                work = work.divrem(&pi)?.0;
                k += 1;
            }
            if k > 0 {
                out.push((pi.clone(), k));
            }
            if k < e {
                let bar = pi.conj().canonical_associate();
                let mut k2 = 0u64;
                while bar.divides(&work) {
                    work = work.divrem(&bar)?.0;
                    k2 += 1;
                }
                debug_assert_eq!(k + k2, e);
                out.push((bar, k2));
            }
        } else {
            // inert rational prime, norm p^2
            debug_assert!(pm3 == BigInt::from(2), "ramified norm was excluded");
            debug_assert!(e % 2 == 0);
            let q = EisensteinInt::from(p.clone());
            for _ in 0..e / 2 {
                work = work.divrem(&q)?.0;
            }
            out.push((q, e / 2));
        }
    }
    debug_assert!(work.is_unit());
    Ok(out)
}

/// Residue symbol of alpha at one Eisenstein prime, by exponentiation in
/// the residue field. The discrete-log step compares against the images
/// of 1, w, w^2 directly.
fn local_symbol(alpha: &EisensteinInt, pi: &EisensteinInt) -> CubicSymbol {
    if pi.is_rational() {
        // inert: residue field F_{q^2}
        let q = pi.c0.abs();
        let base = (
            alpha.c0.mod_floor(&q),
            alpha.c1.mod_floor(&q),
        );
        if base.0.is_zero() && base.1.is_zero() {
            return CubicSymbol::Zero;
        }
        let exp: BigInt = (&q * &q - BigInt::one()) / 3u32;
        let r = pair_modpow(base, &exp, &q);
        let qm1: BigInt = &q - BigInt::one();
        if r.0.is_one() && r.1.is_zero() {
            CubicSymbol::One
        } else if r.0.is_zero() && r.1.is_one() {
            CubicSymbol::Omega
        } else {
            debug_assert!(r.0 == qm1 && r.1 == qm1);
            CubicSymbol::OmegaSq
        }
    } else {
        // split: residue field F_p, w maps to t = -c0/c1 mod p
        let p = pi.norm();
        let t = (-&pi.c0 * intutil::mod_inverse(&pi.c1, &p).expect("c1 invertible"))
            .mod_floor(&p);
        let base = (&alpha.c0 + &alpha.c1 * &t).mod_floor(&p);
        if base.is_zero() {
            return CubicSymbol::Zero;
        }
        let r = base.modpow(&((&p - BigInt::one()) / 3u32), &p);
        if r.is_one() {
            CubicSymbol::One
        } else if r == t {
            CubicSymbol::Omega
        } else {
            debug_assert_eq!(r, (&t * &t).mod_floor(&p));
            CubicSymbol::OmegaSq
        }
    }
}

/// Square-and-multiply for (a + b*w) mod q.
fn pair_modpow(base: (BigInt, BigInt), exp: &BigInt, q: &BigInt) -> (BigInt, BigInt) {
    let mut result = (BigInt::one(), BigInt::zero());
    let mut acc = base;
    for i in 0..exp.bits() {
        if exp.bit(i) {
            result = pair_mul_mod(&result, &acc, q);
        }
        acc = pair_mul_mod(&acc, &acc, q);
    }
    result
}

fn pair_mul_mod(a: &(BigInt, BigInt), b: &(BigInt, BigInt), q: &BigInt) -> (BigInt, BigInt) {
    let a1b1 = &a.1 * &b.1;
    (
        (&a.0 * &b.0 - &a1b1).mod_floor(q),
        (&a.0 * &b.1 + &a.1 * &b.0 - &a1b1).mod_floor(q),
    )
}

fn symbol_from_factors(alpha: &EisensteinInt, factors: &[EisFactor]) -> CubicSymbol {
    let mut acc = CubicSymbol::One;
    for (pi, e) in factors {
        acc = acc * local_symbol(alpha, pi).pow(*e);
        if acc == CubicSymbol::Zero {
            return acc;
        }
    }
    acc
}

/// Definitional cubic Jacobi symbol: factor the denominator, exponentiate
/// alpha to (N(pi)-1)/3 in each residue field, multiply with multiplicity.
/// Denominator norms are capped at [`ORACLE_NORM_CAP`].
pub fn cubic_symbol_oracle(alpha: &EisensteinInt, beta: &EisensteinInt) -> Result<CubicSymbol> {
    check_denominator(beta)?;
    let factors = eis_factor(beta)?;
    Ok(symbol_from_factors(alpha, &factors))
}

/// All Eisenstein integers with 0 < N < bound, in a fixed scan order.
pub fn points_with_norm_below(bound: u64) -> Vec<EisensteinInt> {
    let b = BigInt::from(bound);
    let s = intutil::isqrt(&BigInt::from(2 * bound));
    let s = i64::try_from(&s).expect("grid bound fits");
    let mut out = Vec::new();
    for c0 in -s..=s {
        for c1 in -s..=s {
            let e = EisensteinInt::new(c0, c1);
            let n = e.norm();
            if !n.is_zero() && n < b {
                out.push(e);
            }
        }
    }
    out
}

fn admissible_denominators(norm_bound: u64) -> Vec<EisensteinInt> {
    points_with_norm_below(norm_bound)
        .into_iter()
        .filter(|e| !e.is_unit() && !(e.norm() % 3u32).is_zero())
        .collect()
}

/// Exhaustively compare [`cubic_symbol`] against [`cubic_symbol_oracle`]
/// over every numerator of norm < `num_norm_bound` (plus zero) and every
/// admissible denominator of norm < `den_norm_bound`. Returns the number
/// of pairs checked; the first disagreement aborts with a
/// [`Error::Contradiction`] naming the pair.
pub fn verify_symbol_agreement(
    num_norm_bound: u64,
    den_norm_bound: u64,
    parallel: bool,
) -> Result<u64> {
    let mut nums = points_with_norm_below(num_norm_bound);
    nums.push(EisensteinInt::zero());
    verify_agreement_on(&nums, den_norm_bound, parallel)
}

/// Same cross-check but with a caller-supplied numerator panel; used to
/// cover the full denominator range cheaply.
pub fn verify_symbol_agreement_panel(
    numerators: &[EisensteinInt],
    den_norm_bound: u64,
    parallel: bool,
) -> Result<u64> {
    verify_agreement_on(numerators, den_norm_bound, parallel)
}

fn verify_agreement_on(
    nums: &[EisensteinInt],
    den_norm_bound: u64,
    parallel: bool,
) -> Result<u64> {
    let dens = admissible_denominators(den_norm_bound);
    let per_den = |den: &EisensteinInt| -> Result<u64> {
        let factors = eis_factor(den)?;
        let mut n = 0u64;
        for a in nums {
            let fast = cubic_symbol(a, den)?;
            let slow = symbol_from_factors(a, &factors);
            if fast != slow {
                return Err(Error::Contradiction(format!(
                    "symbol mismatch at ({a}, {den}): fast {fast}, oracle {slow}"
                )));
            }
            n += 1;
        }
        Ok(n)
    };
    let results = batch::map_ordered(&dens, per_den, parallel);
    let mut total = 0u64;
    for r in results {
        total += r?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(c0: i64, c1: i64) -> EisensteinInt {
        EisensteinInt::new(c0, c1)
    }

    #[test]
    fn ring_basics() {
        // w^2 = -1 - w
        assert_eq!(&e(0, 1) * &e(0, 1), e(-1, -1));
        // (1 + 2w)^2 = -3 since 1 + 2w = sqrt(-3)
        assert_eq!(&e(1, 2) * &e(1, 2), e(-3, 0));
        // a + conj(a) is rational
        let a = e(4, 7);
        assert!((&a + &a.conj()).is_rational());
        assert_eq!(-&e(2, -3), e(-2, 3));
        assert_eq!(&e(5, 1) - &e(2, 4), e(3, -3));
    }

    #[test]
    fn conj_examples() {
        assert_eq!(e(0, 1).conj(), e(-1, -1));
        assert_eq!(e(1, 2).conj(), e(-1, -2));
        assert_eq!(e(5, 0).conj(), e(5, 0));
        let a = e(-3, 8);
        assert_eq!(a.conj().conj(), a);
        assert_eq!(&a * &a.conj(), EisensteinInt::from(a.norm()));
    }

    #[test]
    fn norm_examples() {
        assert_eq!(e(1, 2).norm(), BigInt::from(3));
        assert_eq!(e(2, 3).norm(), BigInt::from(7));
        assert_eq!(e(0, 0).norm(), BigInt::from(0));
        // multiplicative
        let (a, b) = (e(3, -2), e(-4, 5));
        assert_eq!((&a * &b).norm(), a.norm() * b.norm());
    }

    #[test]
    fn divrem_contract() {
        let (q, r) = EisensteinInt::from(7).divrem(&e(2, 3)).unwrap();
        assert!(r.norm() < BigInt::from(7));
        assert_eq!(&(&q * &e(2, 3)) + &r, EisensteinInt::from(7));

        let a = e(9, -4);
        let (q, r) = a.divrem(&EisensteinInt::one()).unwrap();
        assert_eq!((q, r), (a, EisensteinInt::zero()));

        let (q, r) = EisensteinInt::zero().divrem(&e(2, 3)).unwrap();
        assert_eq!((q, r), (EisensteinInt::zero(), EisensteinInt::zero()));

        assert!(e(1, 1).divrem(&EisensteinInt::zero()).is_err());
    }

    #[test]
    fn canonical_associates() {
        assert_eq!(e(-1, 0).canonical_associate(), e(1, 0));
        assert_eq!(e(0, 1).canonical_associate(), e(1, 0));
        assert_eq!(e(1, 1).canonical_associate(), e(1, 0));
        // all six associates share one canonical form
        let a = e(5, 2);
        let c = a.canonical_associate();
        for assoc in a.associates() {
            assert_eq!(assoc.canonical_associate(), c);
        }
    }

    #[test]
    fn gcd_examples() {
        let p = EisensteinInt::from(7);
        assert_eq!(gcd(&p, &EisensteinInt::zero()).unwrap(), p);
        let g = gcd(&e(2, 3), &EisensteinInt::from(7)).unwrap();
        assert_eq!(g.norm(), BigInt::from(7));
        assert_eq!(g, e(2, 3).canonical_associate());
        assert_eq!(
            gcd(&EisensteinInt::from(2), &EisensteinInt::from(5)).unwrap(),
            EisensteinInt::one()
        );
        assert!(gcd(&EisensteinInt::zero(), &EisensteinInt::zero()).is_err());
    }

    #[test]
    fn ramified_valuations() {
        let (k, rest) = ramified_valuation(&EisensteinInt::from(3)).unwrap();
        assert_eq!(k, 2);
        assert!(rest.is_unit());
        let (k, rest) = ramified_valuation(&e(1, 2)).unwrap();
        assert_eq!(k, 1);
        assert!(rest.is_unit());
        let (k, rest) = ramified_valuation(&EisensteinInt::from(5)).unwrap();
        assert_eq!(k, 0);
        assert_eq!(rest, EisensteinInt::from(5));
        assert!(ramified_valuation(&EisensteinInt::zero()).is_err());
    }

    #[test]
    fn semiprimary_examples() {
        let (s, ex) = semiprimary_associate(&e(4, 3)).unwrap();
        assert_eq!((s, ex), (e(4, 3), 0));
        // w * (4 + 3w) = -3 + w; recovered with unit exponent 2 since
        // (1+w)^2 = w
        let rotated = &e(0, 1) * &e(4, 3);
        assert_eq!(rotated, e(-3, 1));
        let (s, ex) = semiprimary_associate(&rotated).unwrap();
        assert_eq!((s, ex), (e(4, 3), 2));
        let (s, ex) = semiprimary_associate(&e(2, 3)).unwrap();
        assert_eq!((s, ex), (e(2, 3), 0));
        assert!(semiprimary_associate(&e(1, 2)).is_err()); // norm 3
    }

    #[test]
    fn unit_exponents() {
        let mut u = EisensteinInt::one();
        for k in 0u8..6 {
            assert_eq!(u.unit_exponent(), Some(k));
            u = u.rotate();
        }
        assert_eq!(e(2, 0).unit_exponent(), None);
    }

    #[test]
    fn oracle_examples() {
        // 2^2 = 4 and w = 4 in the norm-7 residue field (3w = -2)
        assert_eq!(
            cubic_symbol_oracle(&e(2, 0), &e(2, 3)).unwrap(),
            CubicSymbol::Omega
        );
        assert_eq!(
            cubic_symbol_oracle(&e(2, 0), &e(5, 0)).unwrap(),
            CubicSymbol::One
        );
        assert_eq!(
            cubic_symbol_oracle(&e(7, 0), &e(2, 3)).unwrap(),
            CubicSymbol::Zero
        );
    }

    #[test]
    fn fast_path_examples() {
        // supplementary law, artifact convention: (1+2w / m+3nw) = w^(-jn)
        assert_eq!(
            cubic_symbol(&e(1, 2), &e(4, 3)).unwrap(),
            CubicSymbol::OmegaSq
        );
        assert_eq!(
            cubic_symbol(&e(1, 2), &e(4, -3)).unwrap(),
            CubicSymbol::Omega
        );
        assert_eq!(cubic_symbol(&e(2, 0), &e(2, 3)).unwrap(), CubicSymbol::Omega);
        // must match the oracle everywhere it is defined
        for (a, b) in [
            (e(2, 0), e(2, 3)),
            (e(1, 2), e(4, 3)),
            (e(1, 2), e(4, -3)),
            (e(7, 0), e(2, 3)),
        ] {
            assert_eq!(
                cubic_symbol(&a, &b).unwrap(),
                cubic_symbol_oracle(&a, &b).unwrap()
            );
        }
    }

    #[test]
    fn rational_denominators() {
        // symbol for the class [19,+-6,90] kernel membership check
        assert_eq!(
            cubic_symbol_int(&e(51, -6), &BigInt::from(19)).unwrap(),
            CubicSymbol::One
        );
        assert_eq!(
            cubic_symbol_int(&e(123, 45), &BigInt::one()).unwrap(),
            CubicSymbol::One
        );
        assert_eq!(
            cubic_symbol_int(&e(5, 0), &BigInt::from(7)).unwrap(),
            CubicSymbol::One
        );
        assert!(cubic_symbol_int(&e(5, 0), &BigInt::from(6)).is_err());
        assert!(cubic_symbol_int(&e(5, 0), &BigInt::zero()).is_err());
    }

    #[test]
    fn denominator_rejections() {
        assert!(matches!(
            cubic_symbol(&e(1, 0), &EisensteinInt::zero()),
            Err(Error::ZeroDenominator)
        ));
        assert!(matches!(
            cubic_symbol(&e(1, 0), &e(0, 1)),
            Err(Error::UnitDenominator)
        ));
        assert!(matches!(
            cubic_symbol(&e(1, 0), &e(1, 2)),
            Err(Error::RamifiedDenominator)
        ));
        assert!(matches!(
            cubic_symbol_oracle(&e(1, 0), &e(1, 2)),
            Err(Error::RamifiedDenominator)
        ));
    }

    #[test]
    fn symbol_zero_iff_shared_factor() {
        for a in points_with_norm_below(60) {
            for b in admissible_denominators(60) {
                let s = cubic_symbol(&a, &b).unwrap();
                let shared = !gcd(&a, &b).unwrap().is_unit();
                assert_eq!(s == CubicSymbol::Zero, shared, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn symbol_mod_invariance_and_multiplicativity() {
        let dens = [e(4, 3), e(5, 0), e(7, 3), e(2, -3)];
        let nums = [e(1, 1), e(2, -1), e(5, 3), e(-4, 1), e(3, 2)];
        for d in &dens {
            for a in &nums {
                let r = a.divrem(d).unwrap().1;
                assert_eq!(
                    cubic_symbol(a, d).unwrap(),
                    cubic_symbol(&r, d).unwrap(),
                    "reduction invariance at ({a}, {d})"
                );
                for b in &nums {
                    let prod = a * b;
                    assert_eq!(
                        cubic_symbol(&prod, d).unwrap(),
                        cubic_symbol(a, d).unwrap() * cubic_symbol(b, d).unwrap(),
                        "numerator multiplicativity at ({a}, {b}, {d})"
                    );
                }
            }
        }
        // denominator multiplicativity
        for a in &nums {
            let d1 = e(4, 3);
            let d2 = e(5, 0);
            let d12 = &d1 * &d2;
            assert_eq!(
                cubic_symbol(a, &d12).unwrap(),
                cubic_symbol(a, &d1).unwrap() * cubic_symbol(a, &d2).unwrap()
            );
        }
    }

    #[test]
    fn cube_detection_in_residue_fields() {
        // split primes of norm < 200: symbol One iff numerator is a cube
        for p in [7u64, 13, 19, 31, 37, 43, 61, 67, 73, 79, 97, 103, 109, 127, 139, 151, 157, 163, 181, 193, 199]
        {
            let bp = BigInt::from(p);
            let pi = prime_above(&bp).unwrap();
            let cubes: std::collections::HashSet<u64> =
                (1..p).map(|x| (x * x % p) * x % p).collect();
            for r in 1..p.min(40) {
                let s = local_symbol(&EisensteinInt::new(r as i64, 0), &pi);
                assert_eq!(
                    s == CubicSymbol::One,
                    cubes.contains(&r),
                    "p={p}, r={r}"
                );
            }
        }
    }

    #[test]
    fn fast_matches_oracle_small_grid() {
        let n = verify_symbol_agreement(80, 80, false).unwrap();
        assert!(n > 10_000);
    }

    #[test]
    fn parse_and_render() {
        for s in ["5", "-7", "1+2w", "4-3w", "-1-1w", "2w", "-2w", "w"] {
            let v: EisensteinInt = s.parse().unwrap();
            let round: EisensteinInt = v.to_string().parse().unwrap();
            assert_eq!(v, round, "{s}");
        }
        assert_eq!("1+2w".parse::<EisensteinInt>().unwrap(), e(1, 2));
        assert_eq!("4-3w".parse::<EisensteinInt>().unwrap(), e(4, -3));
        assert_eq!("w".parse::<EisensteinInt>().unwrap(), e(0, 1));
        assert!("".parse::<EisensteinInt>().is_err());
        assert!("5x".parse::<EisensteinInt>().is_err());
    }

    #[test]
    fn symbol_serde_strings() {
        let s = serde_json::to_string(&CubicSymbol::OmegaSq).unwrap();
        assert_eq!(s, "\"w2\"");
        let v: CubicSymbol = serde_json::from_str("\"w\"").unwrap();
        assert_eq!(v, CubicSymbol::Omega);
    }
}
