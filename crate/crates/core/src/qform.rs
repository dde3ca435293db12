//! Primitive positive-definite binary quadratic forms [a, 2b, c] with even
//! middle coefficient, their reduction, class-group enumeration, Dirichlet
//! composition and prime representation.
//!
//! Forms store the half-middle coefficient b; all discriminant bookkeeping
//! uses d = b^2 - ac (so the classical discriminant is 4d). Rendering always
//! prints the full middle coefficient.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::intutil;

/// Search bound used when composition needs an equivalent form with a
/// coprime leading coefficient.
pub const DEFAULT_COPRIME_BOUND: u32 = 50;

/// The form a*x^2 + 2b*xy + c*y^2, stored via its half-middle coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadForm {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl QuadForm {
    /// Build from (a, b, c) where b is HALF the middle coefficient.
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    /// Build from the printed shape [a, m, c]; m must be even.
    pub fn from_full_middle(a: BigInt, m: BigInt, c: BigInt) -> Result<Self> {
        if m.is_odd() {
            return Err(Error::Parse(format!("middle coefficient {m} is odd")));
        }
        Ok(Self { a, b: m / 2, c })
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    /// Half the middle coefficient.
    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    /// d = b^2 - ac (one quarter of the classical discriminant).
    pub fn disc(&self) -> BigInt {
        &self.b * &self.b - &self.a * &self.c
    }

    pub fn evaluate(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + 2 * &self.b * x * y + &self.c * y * y
    }

    /// gcd(a, 2b, c) = 1 — the even-middle notion of primitivity.
    pub fn is_primitive(&self) -> bool {
        intutil::gcd(&intutil::gcd(&self.a, &(2 * &self.b)), &self.c).is_one()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a.is_positive() && self.disc().is_negative()
    }

    /// |2b| <= a <= c, with b >= 0 at either boundary.
    pub fn is_reduced(&self) -> bool {
        let twob = 2 * self.b.abs();
        if twob > self.a || self.a > self.c {
            return false;
        }
        if (twob == self.a || self.a == self.c) && self.b.is_negative() {
            return false;
        }
        true
    }

    /// Opposite form [a, -2b, c].
    pub fn opposite(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -self.b.clone(),
            c: self.c.clone(),
        }
    }

    /// Listing order: leading coefficient, then |b| with the positive sign
    /// first, then c.
    fn sort_key(&self) -> (BigInt, BigInt, bool, BigInt) {
        (
            self.a.clone(),
            self.b.abs(),
            self.b.is_negative(),
            self.c.clone(),
        )
    }
}

impl PartialOrd for QuadForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.a, 2 * &self.b, self.c)
    }
}

impl FromStr for QuadForm {
    type Err = Error;

    /// Accepts `[a,2b,c]` or `a,2b,c`; the middle coefficient must be even.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts: Vec<&str> = t.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("bad form literal {s:?}")));
        }
        let parse = |p: &str| {
            BigInt::from_str(p).map_err(|_| Error::Parse(format!("bad form literal {s:?}")))
        };
        QuadForm::from_full_middle(parse(parts[0])?, parse(parts[1])?, parse(parts[2])?)
    }
}

impl serde::Serialize for QuadForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for QuadForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Determinant-1 integer change of variables, acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unimodular {
    pub m00: BigInt,
    pub m01: BigInt,
    pub m10: BigInt,
    pub m11: BigInt,
}

impl Unimodular {
    pub fn identity() -> Self {
        Self {
            m00: BigInt::one(),
            m01: BigInt::zero(),
            m10: BigInt::zero(),
            m11: BigInt::one(),
        }
    }

    pub fn det(&self) -> BigInt {
        &self.m00 * &self.m11 - &self.m01 * &self.m10
    }

    pub fn apply(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        (
            &self.m00 * x + &self.m01 * y,
            &self.m10 * x + &self.m11 * y,
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            m00: &self.m00 * &other.m00 + &self.m01 * &other.m10,
            m01: &self.m00 * &other.m01 + &self.m01 * &other.m11,
            m10: &self.m10 * &other.m00 + &self.m11 * &other.m10,
            m11: &self.m10 * &other.m01 + &self.m11 * &other.m11,
        }
    }

    pub fn inverse(&self) -> Self {
        debug_assert!(self.det().is_one());
        Self {
            m00: self.m11.clone(),
            m01: -self.m01.clone(),
            m10: -self.m10.clone(),
            m11: self.m00.clone(),
        }
    }
}

/// Transform the form by a change of variables: (f . u)(v) = f(u v).
/// Preserves the discriminant and primitivity when det(u) = 1.
pub fn transform(f: &QuadForm, u: &Unimodular) -> QuadForm {
    let a = f.evaluate(&u.m00, &u.m10);
    let c = f.evaluate(&u.m01, &u.m11);
    let b = &f.a * &u.m00 * &u.m01
        + &f.b * (&u.m00 * &u.m11 + &u.m01 * &u.m10)
        + &f.c * &u.m10 * &u.m11;
    QuadForm { a, b, c }
}

/// A class of forms, keyed by its unique reduced representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormClass {
    rep: QuadForm,
}

impl FormClass {
    pub fn rep(&self) -> &QuadForm {
        &self.rep
    }
}

impl fmt::Display for FormClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

/// Reduce to the canonical representative. The returned transform maps the
/// input form's variables to the representative's:
/// `f.evaluate(v) == rep.evaluate(t.apply(v))`.
pub fn reduce(f: &QuadForm) -> Result<(FormClass, Unimodular)> {
    if !f.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    if !f.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    let mut g = f.clone();
    // u accumulates on the right: g = f . u throughout
    let mut u = Unimodular::identity();
    loop {
        // center b: |2b| <= a
        let k = -div_round(&g.b, &g.a);
        if !k.is_zero() {
            let step = Unimodular {
                m00: BigInt::one(),
                m01: k.clone(),
                m10: BigInt::zero(),
                m11: BigInt::one(),
            };
            g = transform(&g, &step);
            u = u.mul(&step);
        }
        if g.c < g.a {
            let step = Unimodular {
                m00: BigInt::zero(),
                m01: BigInt::one(),
                m10: -BigInt::one(),
                m11: BigInt::zero(),
            };
            g = transform(&g, &step);
            u = u.mul(&step);
            continue;
        }
        break;
    }
    // boundary sign convention: b >= 0 when |2b| = a or a = c
    if g.b.is_negative() {
        if 2 * -&g.b == g.a {
            let step = Unimodular {
                m00: BigInt::one(),
                m01: BigInt::one(),
                m10: BigInt::zero(),
                m11: BigInt::one(),
            };
            g = transform(&g, &step);
            u = u.mul(&step);
        } else if g.a == g.c {
            let step = Unimodular {
                m00: BigInt::zero(),
                m01: BigInt::one(),
                m10: -BigInt::one(),
                m11: BigInt::zero(),
            };
            g = transform(&g, &step);
            u = u.mul(&step);
        }
    }
    debug_assert!(g.is_reduced());
    debug_assert_eq!(g.disc(), f.disc());
    debug_assert!(u.det().is_one());
    Ok((FormClass { rep: g }, u.inverse()))
}

/// Nearest-integer division a / n for n > 0 (half rounds up).
fn div_round(a: &BigInt, n: &BigInt) -> BigInt {
    debug_assert!(n.is_positive());
    let two_a: BigInt = a << 1u32;
    let two_n: BigInt = n << 1u32;
    (two_a + n).div_floor(&two_n)
}

/// The principal class [1, 0, -d].
pub fn identity(d: &BigInt) -> Result<FormClass> {
    if !d.is_negative() {
        return Err(Error::NonNegativeDiscriminant);
    }
    Ok(FormClass {
        rep: QuadForm::new(BigInt::one(), BigInt::zero(), -d),
    })
}

/// Class of the opposite form [a, -2b, c]; the group inverse.
pub fn inverse(f: &QuadForm) -> Result<FormClass> {
    Ok(reduce(&f.opposite())?.0)
}

/// Group product of the two classes via Dirichlet composition: with coprime
/// leading coefficients, b3 = b1 (mod a1), b3 = b2 (mod a2) and a3 = a1*a2;
/// otherwise the second form is first replaced by an equivalent one whose
/// leading coefficient is coprime to a1.
pub fn compose(f1: &QuadForm, f2: &QuadForm) -> Result<FormClass> {
    let d = f1.disc();
    if d != f2.disc() {
        return Err(Error::DiscriminantMismatch);
    }
    let f2 = if intutil::gcd(&f1.a, &f2.a).is_one() {
        f2.clone()
    } else {
        find_coprime_rep(f2, &f1.a, DEFAULT_COPRIME_BOUND)?
    };
    let a3 = &f1.a * &f2.a;
    // CRT for the half-middle coefficient
    let b3 = if f2.a.is_one() {
        f1.b.clone()
    } else {
        let inv = intutil::mod_inverse(&f1.a.mod_floor(&f2.a), &f2.a)
            .expect("leading coefficients are coprime");
        (&f1.b + &f1.a * ((&f2.b - &f1.b) * inv).mod_floor(&f2.a)).mod_floor(&a3)
    };
    let num = &b3 * &b3 - &d;
    debug_assert!((&num % &a3).is_zero());
    let c3 = num / &a3;
    Ok(reduce(&QuadForm { a: a3, b: b3, c: c3 })?.0)
}

/// An equivalent form whose leading coefficient is coprime to m, found by
/// scanning coprime pairs (x, y) in rings of increasing max(|x|, |y|) and
/// completing each hit to a determinant-1 change of variables. Primitive
/// positive-definite forms represent values coprime to any m, so exhaustion
/// of the bound is a hard error, never a silent wrong answer.
pub fn find_coprime_rep(f: &QuadForm, m: &BigInt, bound: u32) -> Result<QuadForm> {
    if m.is_zero() {
        return Err(Error::CoprimeSearchExhausted(m.clone(), bound));
    }
    if intutil::gcd(&f.a, m).is_one() {
        return Ok(f.clone());
    }
    for r in 1..=bound as i64 {
        for x in -r..=r {
            for y in -r..=r {
                if x.abs().max(y.abs()) != r || gcd_i64(x, y) != 1 {
                    continue;
                }
                let bx = BigInt::from(x);
                let by = BigInt::from(y);
                let v = f.evaluate(&bx, &by);
                if !intutil::gcd(&v, m).is_one() {
                    continue;
                }
                // complete the column (x, y) to a determinant-1 matrix
                let eg = bx.extended_gcd(&by);
                debug_assert!(eg.gcd.is_one());
                let u = Unimodular {
                    m00: bx,
                    m01: -eg.y,
                    m10: by,
                    m11: eg.x,
                };
                debug_assert!(u.det().is_one());
                let g = transform(f, &u);
                debug_assert_eq!(g.a, v);
                debug_assert_eq!(g.disc(), f.disc());
                debug_assert!(g.is_primitive());
                return Ok(g);
            }
        }
    }
    Err(Error::CoprimeSearchExhausted(m.clone(), bound))
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Every (x, y) with y >= 0 and f(x, y) = p. Solutions come out with y
/// ascending and, for each y, the larger x first; (x, y) and (-x, -y)
/// always represent the same value, so y >= 0 loses nothing.
pub fn representations(f: &QuadForm, p: &BigInt) -> Vec<(BigInt, BigInt)> {
    let d = f.disc();
    debug_assert!(d.is_negative());
    let ap = &f.a * p;
    let mut out = Vec::new();
    if !ap.is_positive() {
        return out;
    }
    let ymax = intutil::isqrt(&(&ap / -&d));
    let mut y = BigInt::zero();
    while y <= ymax {
        // (ax + by)^2 = a*p + d*y^2
        let rhs = &ap + &d * &y * &y;
        if rhs.is_negative() {
            break;
        }
        if intutil::is_square(&rhs) {
            let s = intutil::isqrt(&rhs);
            let mut candidates = vec![-&f.b * &y + &s];
            if !s.is_zero() {
                candidates.push(-&f.b * &y - &s);
            }
            for xn in candidates {
                if (&xn % &f.a).is_zero() {
                    let x = xn / &f.a;
                    debug_assert_eq!(f.evaluate(&x, &y), *p);
                    out.push((x, y.clone()));
                }
            }
        }
        y += 1;
    }
    out
}

/// First representation of the prime p by f in the scan order of
/// [`representations`], or None when the class does not represent p.
pub fn represent_prime(f: &QuadForm, p: &BigInt) -> Option<(BigInt, BigInt)> {
    representations(f, p).into_iter().next()
}

/// Residue class mod 3 of the values the form represents away from 3:
/// a mod 3 when 3 does not divide a, else c mod 3 (exactly one of the two
/// is coprime to 3 by primitivity when 3 | d). Value 1 marks the classes
/// representing primes p = 1 (mod 3).
pub fn h2_marker(f: &QuadForm) -> Result<u8> {
    let three = BigInt::from(3);
    if !f.disc().mod_floor(&three).is_zero() {
        return Err(Error::MarkerUndefined);
    }
    let am = f.a.mod_floor(&three);
    let r = if !am.is_zero() {
        am
    } else {
        let cm = f.c.mod_floor(&three);
        debug_assert!(!cm.is_zero(), "primitivity forces 3 to miss a or c");
        cm
    };
    Ok(u8::try_from(&r).expect("residue fits"))
}

/// The full class group of parameter d < 0: every reduced primitive form,
/// sorted in listing order, with lazily built composition data.
#[derive(Debug)]
pub struct ClassGroup {
    d: BigInt,
    classes: Vec<FormClass>,
    index: HashMap<QuadForm, usize>,
    table: OnceLock<Vec<usize>>,
}

/// Enumerate all reduced primitive forms of parameter d < 0, each exactly
/// once. The class number is the set size.
pub fn enumerate(d: &BigInt) -> Result<ClassGroup> {
    if !d.is_negative() {
        return Err(Error::NonNegativeDiscriminant);
    }
    let mut reps = Vec::new();
    let bmax = intutil::isqrt(&(-d / 3));
    let mut b = BigInt::zero();
    while b <= bmax {
        let n = &b * &b - d;
        let mut a = std::cmp::max(BigInt::one(), 2 * &b);
        while &a * &a <= n {
            if (&n % &a).is_zero() {
                let c = &n / &a;
                let form = QuadForm {
                    a: a.clone(),
                    b: b.clone(),
                    c: c.clone(),
                };
                if form.is_primitive() {
                    let boundary = 2 * &b == a || a == c;
                    if b.is_positive() && !boundary {
                        reps.push(form.opposite());
                    }
                    reps.push(form);
                }
            }
            a += 1;
        }
        b += 1;
    }
    reps.sort();
    let classes: Vec<FormClass> = reps.into_iter().map(|rep| FormClass { rep }).collect();
    let index = classes
        .iter()
        .enumerate()
        .map(|(i, c)| (c.rep.clone(), i))
        .collect();
    Ok(ClassGroup {
        d: d.clone(),
        classes,
        index,
        table: OnceLock::new(),
    })
}

impl ClassGroup {
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[FormClass] {
        &self.classes
    }

    pub fn index_of(&self, class: &FormClass) -> Option<usize> {
        self.index.get(&class.rep).copied()
    }

    /// Index of the class of an arbitrary form of this discriminant.
    pub fn class_of(&self, f: &QuadForm) -> Result<usize> {
        if f.disc() != self.d {
            return Err(Error::DiscriminantMismatch);
        }
        let (class, _) = reduce(f)?;
        self.index_of(&class).ok_or_else(|| {
            Error::Contradiction(format!("reduced form {class} missing from enumeration"))
        })
    }

    pub fn identity_index(&self) -> usize {
        let id = QuadForm::new(BigInt::one(), BigInt::zero(), -&self.d);
        *self.index.get(&id).expect("principal form is enumerated")
    }

    pub fn compose_indices(&self, i: usize, j: usize) -> Result<usize> {
        let cls = compose(&self.classes[i].rep, &self.classes[j].rep)?;
        self.index_of(&cls).ok_or_else(|| {
            Error::Contradiction(format!("composite {cls} missing from enumeration"))
        })
    }

    pub fn inverse_index(&self, i: usize) -> Result<usize> {
        let cls = inverse(&self.classes[i].rep)?;
        self.index_of(&cls)
            .ok_or_else(|| Error::Contradiction(format!("inverse {cls} missing")))
    }

    /// Row-major Cayley table, built on first use.
    pub fn table(&self) -> Result<&[usize]> {
        if self.table.get().is_none() {
            let n = self.len();
            let mut t = vec![0usize; n * n];
            for i in 0..n {
                for j in i..n {
                    let k = self.compose_indices(i, j)?;
                    t[i * n + j] = k;
                    t[j * n + i] = k; // the group is abelian
                }
            }
            let _ = self.table.set(t);
        }
        Ok(self.table.get().expect("just built"))
    }
}
