//! Exact arithmetic: Bernoulli numbers, orders of the image of the stable
//! J-homomorphism, residues in cyclic groups and the greatest common divisor
//! of a subset of `Z/d`.
//!
//! # Bernoulli convention
//!
//! [`bernoulli`] returns the *unsigned, even-index* Bernoulli numbers:
//! `bernoulli(s) = |B_{2s}|` where `B_k` are the modern signed Bernoulli
//! numbers defined by `z / (e^z - 1) = sum B_k z^k / k!`. So
//! `bernoulli(1) = 1/6`, `bernoulli(2) = 1/30`, `bernoulli(6) = 691/2730`.
//! This is the classical indexing used when stating the order of the image
//! of J in degree `4s - 1` as the denominator of `B_s / 4s`.
//!
//! # gcd of a subset
//!
//! For a finite multiset `S` of residues mod `d`, [`gcd_mod`] is the minimum,
//! over all tuples of nonnegative integer representatives, of their ordinary
//! gcd. Two regimes:
//!
//! * `|S| = 1`: representatives only grow, so the answer is the least
//!   nonnegative residue itself (`gcd_mod({3}, 12) = 3`, not `gcd(3, 12)`).
//! * `|S| >= 2`: the answer is `gcd(s_1, ..., s_l, d)`, except that an
//!   all-zero multiset gives `0` (the all-zero representative tuple).
//!
//! The jump between the two regimes is intentional and matches the literal
//! definition.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// A residue in `Z/d`, or an integer when `modulus == 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicElem {
    value: i64,
    modulus: u64,
}

impl CyclicElem {
    /// Reduces `value` into `[0, modulus)`; `modulus == 0` keeps it as an integer.
    pub fn new(value: i64, modulus: u64) -> Self {
        let value = if modulus == 0 {
            value
        } else {
            (value as i128).rem_euclid(modulus as i128) as i64
        };
        CyclicElem { value, modulus }
    }

    /// Like [`CyclicElem::new`] but refuses values outside `[0, modulus)`.
    pub fn checked(value: i64, modulus: u64) -> Result<Self> {
        if modulus > 0 && (value < 0 || value as u64 >= modulus) {
            return Err(Error::invalid(format!(
                "residue {value} is not in [0, {modulus})"
            )));
        }
        Ok(CyclicElem { value, modulus })
    }

    pub fn zero(modulus: u64) -> Self {
        CyclicElem { value: 0, modulus }
    }

    pub fn value(&self) -> i64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// Additive order; `None` for a nonzero element of `Z`.
    pub fn order(&self) -> Option<u64> {
        match (self.modulus, self.value) {
            (_, 0) => Some(1),
            (0, _) => None,
            (d, v) => Some(d / (v as u64).gcd(&d)),
        }
    }

    pub fn add(&self, other: &CyclicElem) -> CyclicElem {
        debug_assert_eq!(self.modulus, other.modulus);
        if self.modulus == 0 {
            return CyclicElem::new(self.value + other.value, 0);
        }
        let v = (self.value as u128 + other.value as u128) % self.modulus as u128;
        CyclicElem::new(v as i64, self.modulus)
    }

    pub fn neg(&self) -> CyclicElem {
        CyclicElem::new(-(self.value as i128) as i64, self.modulus)
    }
}

impl fmt::Display for CyclicElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

/// The `s`-th even Bernoulli number, unsigned (see the module docs).
///
/// Uses the recurrence `sum_{k=0}^{n} C(n+1, k) B_k = 0` obtained by
/// multiplying `z / (e^z - 1)` by `e^z - 1`.
pub fn bernoulli(s: u32) -> Result<Rational> {
    if s < 1 {
        return Err(Error::invalid("bernoulli index must be >= 1"));
    }
    let top = 2 * s as usize;
    let mut b: Vec<Rational> = Vec::with_capacity(top + 1);
    b.push(Rational::one());
    for n in 1..=top {
        // binom(n+1, k) built incrementally
        let mut binom = BigInt::one();
        let mut acc = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                acc += Rational::from_integer(binom.clone()) * bk;
            }
            binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / Rational::from_integer(BigInt::from(n + 1)));
    }
    Ok(b[top].abs())
}

/// Order of `Im J` inside `pi_{n-1}` of the sphere spectrum.
pub fn imj_order(n: u32) -> Result<BigUint> {
    if n < 3 {
        return Err(Error::invalid(format!("imj_order needs n >= 3, got {n}")));
    }
    let order = match n % 8 {
        3 | 5 | 6 | 7 => BigUint::one(),
        1 | 2 => BigUint::from(2u32),
        _ => {
            let s = n / 4;
            let ratio = bernoulli(s)? / Rational::from_integer(BigInt::from(4 * s));
            ratio
                .denom()
                .to_biguint()
                .expect("denominators are positive")
        }
    };
    Ok(order)
}

/// [`imj_order`] narrowed to a machine word, for use as a residue modulus.
pub fn imj_modulus(n: u32) -> Result<u64> {
    let order = imj_order(n)?;
    u64::try_from(&order).map_err(|_| {
        Error::invalid(format!(
            "|Im J| = {order} in degree {} overflows u64",
            n - 1
        ))
    })
}

/// Greatest common divisor of a multiset of residues sharing a modulus `d > 0`.
pub fn gcd_mod(elems: &[CyclicElem]) -> Result<u64> {
    let first = elems
        .first()
        .ok_or_else(|| Error::invalid("gcd_mod of an empty multiset"))?;
    let d = first.modulus();
    if d == 0 {
        return Err(Error::invalid("gcd_mod needs a finite modulus"));
    }
    if let Some(bad) = elems.iter().find(|e| e.modulus() != d) {
        return Err(Error::invalid(format!(
            "mixed moduli in gcd_mod: {d} and {}",
            bad.modulus()
        )));
    }
    if elems.len() == 1 {
        return Ok(first.value() as u64);
    }
    if elems.iter().all(CyclicElem::is_zero) {
        return Ok(0);
    }
    Ok(elems.iter().fold(d, |g, e| g.gcd(&(e.value() as u64))))
}

/// Least positive residue generating the subgroup `<elems>` of `Z/d`, or 0
/// when that subgroup is trivial.
pub fn subgroup_generator(elems: &[CyclicElem], modulus: u64) -> Result<u64> {
    if modulus == 0 {
        return Err(Error::invalid("subgroup generator needs a finite modulus"));
    }
    // the zero class always lies in the subgroup, so the singleton regime of
    // gcd_mod never applies here
    let mut with_zero = elems.to_vec();
    with_zero.push(CyclicElem::zero(modulus));
    gcd_mod(&with_zero)
}

/// Prime factors of `n`, ascending, without multiplicity.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}
