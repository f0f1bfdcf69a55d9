//! Exact rational arithmetic, square classes of Q, places of Q and Hilbert symbols.
//!
//! Every discriminant, Pfister slot and determinant in the crate is carried as a
//! [`SquareClass`]: the unique squarefree integer in the class of a nonzero rational
//! modulo squares. Local questions are answered with the Hilbert symbol at a [`Place`].

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Default trial-division bound used when canonicalizing square classes.
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-7"` or `"9/2"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

/// True iff `r` is the square of a rational number.
pub fn is_rational_square(r: &Rational) -> bool {
    if r.is_negative() {
        return false;
    }
    if r.is_zero() {
        return true;
    }
    let n = r.numer().magnitude();
    let d = r.denom().magnitude();
    let sn = n.sqrt();
    let sd = d.sqrt();
    &(&sn * &sn) == n && &(&sd * &sd) == d
}

/// A nonzero rational modulo squares, stored as its squarefree integer representative.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct SquareClass(i64);

impl SquareClass {
    pub const ONE: SquareClass = SquareClass(1);
    pub const MINUS_ONE: SquareClass = SquareClass(-1);

    pub fn from_int(n: i64) -> Result<Self> {
        squarefree_class(&rat(n))
    }

    pub fn from_rational(r: &Rational) -> Result<Self> {
        squarefree_class(r)
    }

    pub fn rep(self) -> i64 {
        self.0
    }

    pub fn is_one(self) -> bool {
        self.0 == 1
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn to_rational(self) -> Rational {
        rat(self.0)
    }

    /// Class of the product; panics only if the squarefree product leaves `i64`.
    pub fn mul(self, other: SquareClass) -> SquareClass {
        self.checked_mul(other)
            .expect("square-class representative overflowed i64")
    }

    pub fn checked_mul(self, other: SquareClass) -> Option<SquareClass> {
        let g = self.0.unsigned_abs().gcd(&other.0.unsigned_abs()) as i64;
        (self.0 / g).checked_mul(other.0 / g).map(SquareClass)
    }

    pub fn neg(self) -> SquareClass {
        SquareClass(-self.0)
    }

    /// Odd primes dividing the representative, ascending.
    pub fn odd_prime_divisors(self) -> Vec<u64> {
        let mut n = self.0.unsigned_abs();
        let mut out = Vec::new();
        while n.is_multiple_of(2) {
            n /= 2;
        }
        let mut p = 3u64;
        while p <= DEFAULT_FACTOR_BOUND && p * p <= n {
            if n.is_multiple_of(p) {
                out.push(p);
                while n.is_multiple_of(p) {
                    n /= p;
                }
            }
            p += 2;
        }
        // Representatives only ever come out of `squarefree_class`, so a surviving
        // cofactor is prime.
        if n > 1 {
            out.push(n);
        }
        out
    }
}

impl TryFrom<i64> for SquareClass {
    type Error = Error;
    fn try_from(n: i64) -> Result<Self> {
        SquareClass::from_int(n)
    }
}

impl From<SquareClass> for i64 {
    fn from(s: SquareClass) -> i64 {
        s.0
    }
}

impl fmt::Debug for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0)
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Squarefree part of a positive integer by trial division up to `bound`.
fn squarefree_part(n: &BigUint, bound: u64) -> Result<BigUint> {
    if let Some(small) = n.to_u128() {
        return squarefree_part_u128(small, bound).map(BigUint::from);
    }
    let mut n = n.clone();
    let mut part = BigUint::one();
    let mut p = 2u64;
    loop {
        let pb = BigUint::from(p);
        if p > bound || &pb * &pb > n {
            break;
        }
        let mut odd = false;
        loop {
            let (q, r) = n.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            n = q;
            odd = !odd;
        }
        if odd {
            part *= &pb;
        }
        p = if p == 2 { 3 } else { p + 2 };
        if n.is_one() {
            return Ok(part);
        }
    }
    finish_cofactor_big(n, part, p, bound)
}

fn finish_cofactor_big(n: BigUint, part: BigUint, p: u64, bound: u64) -> Result<BigUint> {
    if n.is_one() {
        return Ok(part);
    }
    let pb = BigUint::from(p);
    let cap = BigUint::from(bound) + 1u32;
    if &pb * &pb > n || n < &cap * &cap {
        Ok(part * n)
    } else {
        Err(Error::FactorizationOverflow {
            value: n.to_string(),
            bound,
        })
    }
}

fn squarefree_part_u128(mut n: u128, bound: u64) -> Result<u128> {
    let mut part = 1u128;
    let mut p = 2u128;
    while p <= bound as u128 && p * p <= n {
        if n.is_multiple_of(p) {
            let mut odd = false;
            while n.is_multiple_of(p) {
                n /= p;
                odd = !odd;
            }
            if odd {
                part *= p;
            }
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    if n == 1 {
        return Ok(part);
    }
    let cap = bound as u128 + 1;
    if p * p > n || cap.checked_mul(cap).is_none_or(|c| n < c) {
        Ok(part * n)
    } else {
        Err(Error::FactorizationOverflow {
            value: n.to_string(),
            bound,
        })
    }
}

/// Canonical squarefree representative of `r` modulo squares.
pub fn squarefree_class(r: &Rational) -> Result<SquareClass> {
    squarefree_class_with_bound(r, DEFAULT_FACTOR_BOUND)
}

pub fn squarefree_class_with_bound(r: &Rational, bound: u64) -> Result<SquareClass> {
    if r.is_zero() {
        return Err(Error::ZeroInput);
    }
    // numerator and denominator are coprime, so their squarefree parts are too
    let num = squarefree_part(r.numer().magnitude(), bound)?;
    let den = squarefree_part(r.denom().magnitude(), bound)?;
    let mag = num * den;
    let signed = BigInt::from_biguint(
        if r.is_negative() {
            Sign::Minus
        } else {
            Sign::Plus
        },
        mag,
    );
    signed
        .to_i64()
        .map(SquareClass)
        .ok_or_else(|| Error::FactorizationOverflow {
            value: signed.to_string(),
            bound,
        })
}

/// A place of Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Place {
    Real,
    Prime(u64),
}

impl Place {
    pub fn prime(p: u64) -> Result<Place> {
        if is_prime(p) {
            Ok(Place::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1u128 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Legendre symbol (u | p) for an odd prime p not dividing u.
fn legendre(u: i64, p: u64) -> i8 {
    let p128 = p as u128;
    let r = (u as i128).rem_euclid(p as i128) as u128;
    if pow_mod(r, (p128 - 1) / 2, p128) == 1 {
        1
    } else {
        -1
    }
}

/// True iff `s` is a square in the completion of Q at `v`.
pub fn is_local_square(s: SquareClass, v: Place) -> bool {
    let n = s.rep();
    match v {
        Place::Real => n > 0,
        Place::Prime(2) => n.rem_euclid(8) == 1,
        Place::Prime(p) => n % p as i64 != 0 && legendre(n, p) == 1,
    }
}

/// Hilbert symbol (a, b)_v in {+1, -1}.
pub fn hilbert_symbol(a: SquareClass, b: SquareClass, v: Place) -> i8 {
    let (a, b) = (a.rep(), b.rep());
    match v {
        Place::Real => {
            if a < 0 && b < 0 {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (alpha, u) = if a % 2 == 0 { (1, a / 2) } else { (0, a) };
            let (beta, w) = if b % 2 == 0 { (1, b / 2) } else { (0, b) };
            let eps = |x: i64| ((x.rem_euclid(4) - 1) / 2) as u32;
            let omega = |x: i64| {
                let r = x.rem_euclid(8);
                u32::from(r == 3 || r == 5)
            };
            let e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let pi = p as i64;
            let (alpha, u) = if a % pi == 0 { (1u64, a / pi) } else { (0, a) };
            let (beta, w) = if b % pi == 0 { (1u64, b / pi) } else { (0, b) };
            let mut s: i8 = if alpha * beta * ((p - 1) / 2) % 2 == 1 {
                -1
            } else {
                1
            };
            if beta == 1 {
                s *= legendre(u, p);
            }
            if alpha == 1 {
                s *= legendre(w, p);
            }
            s
        }
    }
}

/// The real place, 2, and every odd prime dividing some representative.
pub fn relevant_places(entries: &[SquareClass]) -> BTreeSet<Place> {
    let mut places: BTreeSet<Place> = [Place::Real, Place::Prime(2)].into_iter().collect();
    for e in entries {
        for p in e.odd_prime_divisors() {
            places.insert(Place::Prime(p));
        }
    }
    places
}

/// Squarefree integers ordered `1, -1, 2, -2, 3, -3, 5, ...` with |c| <= bound.
pub fn square_class_candidates(bound: u64) -> Vec<SquareClass> {
    let mut out = Vec::new();
    for n in 1..=bound as i64 {
        if SquareClass::from_int(n)
            .map(|s| s.rep() == n)
            .unwrap_or(false)
        {
            out.push(SquareClass(n));
            out.push(SquareClass(-n));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(n: i64) -> SquareClass {
        SquareClass::from_int(n).unwrap()
    }

    #[test]
    fn canonical_classes() {
        assert_eq!(squarefree_class(&rat(18)).unwrap().rep(), 2);
        assert_eq!(squarefree_class(&rat_frac(9, 2)).unwrap().rep(), 2);
        assert_eq!(squarefree_class(&rat(-75)).unwrap().rep(), -3);
        assert_eq!(squarefree_class(&rat_frac(-12, 50)).unwrap().rep(), -6);
        assert_eq!(squarefree_class(&rat(0)), Err(Error::ZeroInput));
    }

    #[test]
    fn large_prime_cofactor_is_accepted_below_bound_squared() {
        // 1_000_003 is prime and above the bound, but below bound^2
        let r = rat(4 * 1_000_003);
        assert_eq!(squarefree_class(&r).unwrap().rep(), 1_000_003);
    }

    #[test]
    fn factorization_overflow_is_reported() {
        // product of two primes above a small bound
        let r = rat(1009 * 1013);
        let err = squarefree_class_with_bound(&r, 100).unwrap_err();
        assert!(matches!(err, Error::FactorizationOverflow { .. }));
        assert_eq!(
            squarefree_class_with_bound(&r, 1009).unwrap().rep(),
            1009 * 1013
        );
    }

    #[test]
    fn huge_rationals_go_through_bigint_path() {
        let big = BigInt::from(3u32).pow(80) * BigInt::from(7u32);
        let r = Rational::from_integer(big);
        assert_eq!(squarefree_class(&r).unwrap().rep(), 7);
    }

    #[test]
    fn class_multiplication() {
        assert_eq!(sc(6).mul(sc(10)).rep(), 15);
        assert_eq!(sc(-3).mul(sc(-3)).rep(), 1);
        assert_eq!(sc(2).neg().rep(), -2);
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_symbol(sc(-1), sc(-1), Place::Real), -1);
        assert_eq!(hilbert_symbol(sc(-1), sc(-1), Place::Prime(2)), -1);
        assert_eq!(hilbert_symbol(sc(5), sc(7), Place::Prime(5)), -1);
        assert_eq!(hilbert_symbol(sc(-1), sc(-1), Place::Prime(3)), 1);
        assert_eq!(hilbert_symbol(sc(2), sc(-1), Place::Prime(2)), 1);
        assert_eq!(hilbert_symbol(sc(2), sc(3), Place::Prime(2)), -1);
    }

    #[test]
    fn relevant_place_sets() {
        let set = |v: &[i64]| {
            relevant_places(&v.iter().map(|&n| sc(n)).collect::<Vec<_>>())
                .into_iter()
                .collect::<Vec<_>>()
        };
        assert_eq!(set(&[1, -1]), vec![Place::Real, Place::Prime(2)]);
        assert_eq!(
            set(&[-3, 5]),
            vec![
                Place::Real,
                Place::Prime(2),
                Place::Prime(3),
                Place::Prime(5)
            ]
        );
        assert_eq!(
            set(&[30]),
            vec![
                Place::Real,
                Place::Prime(2),
                Place::Prime(3),
                Place::Prime(5)
            ]
        );
    }

    #[test]
    fn place_checks_primality() {
        assert!(Place::prime(13).is_ok());
        assert_eq!(Place::prime(15), Err(Error::NotPrime(15)));
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("-9/6").unwrap(), rat_frac(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn candidate_order() {
        let c: Vec<i64> = square_class_candidates(6).iter().map(|s| s.rep()).collect();
        assert_eq!(c, vec![1, -1, 2, -2, 3, -3, 5, -5, 6, -6]);
    }
}
