//! Validated real quadratic integers u = A + B*sqrt(D) with cubic norm.
//!
//! An element is accepted when: D > 1 is squarefree, B != 0, the norm
//! A^2 - B^2*D is a perfect cube, the coordinate gcd is cube-free, and u is
//! not itself a cube in the ring of integers of Q(sqrt(D)). Validation also
//! derives the data every later stage needs: the norm's cube root, the odd
//! squarefree factor C entering the discriminant, Q = gcd(A, B/C) and
//! d = -27*C^2*D.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::Error;
use crate::intutil;

/// Why a candidate (A, B, D) was refused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectCause {
    DTooSmall,
    DNotSquarefree,
    BZero,
    NormNotCube,
    CoordinatesCubeDivisible,
    /// u = v^3 with v = (x + y*sqrt(D))/2.
    IsCube { x: BigInt, y: BigInt },
}

impl fmt::Display for RejectCause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectCause::DTooSmall => f.write_str("D-not-greater-than-1"),
            RejectCause::DNotSquarefree => f.write_str("D-not-squarefree"),
            RejectCause::BZero => f.write_str("B-zero"),
            RejectCause::NormNotCube => f.write_str("norm-not-cube"),
            RejectCause::CoordinatesCubeDivisible => f.write_str("coordinates-cube-divisible"),
            RejectCause::IsCube { x, y } => {
                write!(f, "u-is-cube (u = (({x}+{y}*sqrt(D))/2)^3)")
            }
        }
    }
}

/// Exhaustive list of every violated condition; never fail-fast.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    pub causes: Vec<RejectCause>,
}

impl Rejection {
    pub fn names(&self) -> Vec<String> {
        self.causes.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names().join(", "))
    }
}

impl From<Rejection> for Error {
    fn from(r: Rejection) -> Error {
        Error::InvalidElement(r.to_string())
    }
}

/// A validated element together with its derived invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadInt {
    #[serde(rename = "A", with = "crate::bigser")]
    a: BigInt,
    #[serde(rename = "B", with = "crate::bigser")]
    b: BigInt,
    #[serde(rename = "D", with = "crate::bigser")]
    radicand: BigInt,
    #[serde(rename = "norm", with = "crate::bigser")]
    norm: BigInt,
    #[serde(rename = "norm_root", with = "crate::bigser")]
    norm_root: BigInt,
    #[serde(rename = "C", with = "crate::bigser")]
    c: BigInt,
    #[serde(rename = "Q", with = "crate::bigser")]
    q: BigInt,
    #[serde(rename = "d", with = "crate::bigser")]
    disc: BigInt,
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{}-{}*sqrt({})", self.a, -&self.b, self.radicand)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.radicand)
        }
    }
}

impl QuadInt {
    /// Rational part A.
    pub fn a(&self) -> &BigInt {
        &self.a
    }

    /// Coefficient B of sqrt(D).
    pub fn b(&self) -> &BigInt {
        &self.b
    }

    /// The squarefree radicand D.
    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    /// N(u) = A^2 - B^2*D; a perfect cube by construction.
    pub fn norm(&self) -> &BigInt {
        &self.norm
    }

    /// The m with m^3 = N(u).
    pub fn norm_root(&self) -> &BigInt {
        &self.norm_root
    }

    /// Product of the distinct odd primes dividing gcd(A, B) but not D.
    pub fn c_factor(&self) -> &BigInt {
        &self.c
    }

    /// gcd(A, B/C).
    pub fn q_factor(&self) -> &BigInt {
        &self.q
    }

    /// B/C (exact by construction).
    pub fn b_over_c(&self) -> BigInt {
        &self.b / &self.c
    }

    /// The form-class discriminant parameter d = -27*C^2*D.
    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    /// The conjugate's rational data: A - B*sqrt(D) as a coordinate pair.
    pub fn conj_coords(&self) -> (BigInt, BigInt) {
        (self.a.clone(), -&self.b)
    }

    /// The companion element (sqrt(D))^3 * u / T = (B*D^2 + A*D*sqrt(D))/T,
    /// with T the largest integer cube dividing the coordinate gcd. It is
    /// again a valid element, with the same C and norm -D^3*N(u)/T^2.
    pub fn twist(&self) -> Result<QuadInt, Rejection> {
        let a2 = &self.b * &self.radicand * &self.radicand;
        let b2 = &self.a * &self.radicand;
        let g = intutil::gcd(&a2, &b2);
        let t = intutil::largest_cube_divisor(&g);
        let twisted = validate(&(&a2 / &t), &(&b2 / &t), &self.radicand)?;
        debug_assert_eq!(
            &twisted.norm * &t * &t,
            -self.radicand.pow(3) * &self.norm
        );
        debug_assert_eq!(twisted.c, self.c);
        Ok(twisted)
    }

    /// Valuation profile (q, v_q(A), v_q(B/C)) for every prime q | Q.
    pub fn q_valuations(&self) -> Vec<(BigInt, u64, u64)> {
        if self.q.is_one() {
            return Vec::new();
        }
        let boc = self.b_over_c();
        intutil::factor(&self.q)
            .into_iter()
            .map(|(qp, _)| {
                let s = intutil::valuation(&qp, &self.a).expect("q | A, A != 0");
                let r = intutil::valuation(&qp, &boc).expect("q | B/C, B != 0");
                (qp, s, r)
            })
            .collect()
    }

    /// The expected relation between v_q(A) and v_q(B/C) at every prime
    /// q | Q: strict s > r except when q = 2 and D is odd, where s = r.
    pub fn q_valuations_consistent(&self) -> bool {
        let d_odd = self.radicand.is_odd();
        self.q_valuations().iter().all(|(q, s, r)| {
            if *q == BigInt::from(2) && d_odd {
                s == r
            } else {
                s > r
            }
        })
    }
}

/// Product of the distinct odd primes dividing gcd(a, b) but not d.
/// Requires (a, b) != (0, 0).
pub fn c_factor(a: &BigInt, b: &BigInt, d: &BigInt) -> BigInt {
    let g = intutil::gcd(a, b);
    assert!(!g.is_zero(), "c_factor needs a nonzero coordinate");
    let mut c = BigInt::one();
    for (p, _) in intutil::factor(&g) {
        if p.is_odd() && !(d % &p).is_zero() {
            c *= p;
        }
    }
    c
}

/// Search for v = (x + y*sqrt(d))/2 in the ring of integers with v^3 equal
/// to a + b*sqrt(d), given m^3 = a^2 - b^2*d. Integer roots x of the trace
/// cubic x^3 - 3mx - 2a divide 2a (x = 0 and x^2 = 3m when a = 0); for each
/// root, y^2 = (x^2 - 4m)/d, and membership needs x = y (mod 2) with odd
/// x, y only allowed when d = 1 (mod 4).
pub fn cube_root_in_ring(
    a: &BigInt,
    b: &BigInt,
    d: &BigInt,
    m: &BigInt,
) -> Option<(BigInt, BigInt)> {
    debug_assert_eq!(m * m * m, a * a - b * b * d);
    let candidates: Vec<BigInt> = if a.is_zero() {
        let mut v = vec![BigInt::zero()];
        let three_m = BigInt::from(3) * m;
        if three_m.is_positive() && intutil::is_square(&three_m) {
            let s = intutil::isqrt(&three_m);
            v.push(s.clone());
            v.push(-s);
        }
        v
    } else {
        let mut v = Vec::new();
        let two_a: BigInt = a << 1u32;
        for (div, _) in divisors(&two_a.abs()) {
            v.push(div.clone());
            v.push(-div);
        }
        v
    };
    for x in candidates {
        if &x * &x * &x - 3 * m * &x - 2 * a != BigInt::zero() {
            continue;
        }
        let num: BigInt = &x * &x - BigInt::from(4) * m;
        if num.is_negative() || !(&num % d).is_zero() {
            continue;
        }
        let ysq = num / d;
        if !intutil::is_square(&ysq) {
            continue;
        }
        let y0 = intutil::isqrt(&ysq);
        for y in [y0.clone(), -y0] {
            // parity: v must lie in the ring of integers
            if (&x - &y).is_odd() {
                continue;
            }
            if x.is_odd() && d.mod_floor(&BigInt::from(4)) != BigInt::one() {
                continue;
            }
            // v^3 = (x^3 + 3x y^2 d + (3x^2 y + y^3 d) sqrt(d)) / 8
            let bt = (&y * (3 * &x * &x + &y * &y * d)) / 8;
            let at = (&x * &x * &x + 3 * &x * &y * &y * d) / 8;
            if &at == a && &bt == b {
                return Some((x, y));
            }
        }
    }
    None
}

fn divisors(n: &BigInt) -> Vec<(BigInt, ())> {
    debug_assert!(n.is_positive());
    let mut out = vec![BigInt::one()];
    for (p, e) in intutil::factor(n) {
        let prev = out.clone();
        let mut pk = BigInt::one();
        for _ in 0..e {
            pk *= &p;
            out.extend(prev.iter().map(|d| d * &pk));
        }
    }
    out.into_iter().map(|d| (d, ())).collect()
}

/// Full membership check. Returns the populated element, or an exhaustive
/// report naming every violated condition.
pub fn validate(a: &BigInt, b: &BigInt, d: &BigInt) -> Result<QuadInt, Rejection> {
    let mut causes = Vec::new();
    if *d <= BigInt::one() {
        causes.push(RejectCause::DTooSmall);
    } else if !intutil::is_squarefree(d).expect("d > 1") {
        causes.push(RejectCause::DNotSquarefree);
    }
    if b.is_zero() {
        causes.push(RejectCause::BZero);
    }
    let norm = a * a - b * b * d;
    let norm_root = intutil::cube_root_exact(&norm);
    match &norm_root {
        None => causes.push(RejectCause::NormNotCube),
        Some(m) => {
            if let Some((x, y)) = cube_root_in_ring(a, b, d, m) {
                causes.push(RejectCause::IsCube { x, y });
            }
        }
    }
    if !(a.is_zero() && b.is_zero()) {
        let g = intutil::gcd(a, b);
        if intutil::largest_cube_divisor(&g) > BigInt::one() {
            causes.push(RejectCause::CoordinatesCubeDivisible);
        }
    }
    if !causes.is_empty() {
        return Err(Rejection { causes });
    }
    let c = c_factor(a, b, d);
    let q = intutil::gcd(a, &(b / &c));
    let disc = -27 * &c * &c * d;
    Ok(QuadInt {
        a: a.clone(),
        b: b.clone(),
        radicand: d.clone(),
        norm,
        norm_root: norm_root.expect("checked above"),
        c,
        q,
        disc,
    })
}

/// Convenience wrapper over i64 coordinates.
pub fn validate_i64(a: i64, b: i64, d: i64) -> Result<QuadInt, Rejection> {
    validate(&BigInt::from(a), &BigInt::from(b), &BigInt::from(d))
}
