use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A rational prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// `v_p(n)` for `n > 0`.
    pub fn valuation(self, n: u64) -> u32 {
        assert!(n > 0, "valuation of zero");
        let mut n = n;
        let mut v = 0;
        while n % self.0 == 0 {
            n /= self.0;
            v += 1;
        }
        v
    }

    /// `v_p(n)` for `n > 0`.
    pub fn valuation_big(self, n: &BigUint) -> u32 {
        assert!(!n.is_zero(), "valuation of zero");
        let p = BigUint::from(self.0);
        let mut n = n.clone();
        let mut v = 0;
        loop {
            let (q, r) = n.div_rem(&p);
            if !r.is_zero() {
                return v;
            }
            n = q;
            v += 1;
        }
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime divisors of `n` (empty for `n <= 1`).
pub fn prime_divisors(n: u64) -> BTreeSet<Prime> {
    let mut out = BTreeSet::new();
    let mut n = n;
    let mut d = 2u64;
    while n > 1 && d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.insert(Prime(d));
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.insert(Prime(n));
    }
    out
}

/// Prime divisors of an arbitrary-precision integer, by trial division.
pub fn prime_divisors_big(n: &BigUint) -> BTreeSet<Prime> {
    if let Some(small) = n.to_u64() {
        return prime_divisors(small);
    }
    let mut out = BTreeSet::new();
    let mut n = n.clone();
    let mut d = BigUint::from(2u32);
    while !n.is_one() && &d * &d <= n {
        if (&n % &d).is_zero() {
            out.insert(Prime(d.to_u64().expect("trial divisor below sqrt fits in u64")));
            while (&n % &d).is_zero() {
                n /= &d;
            }
        }
        d += 1u32;
    }
    if !n.is_one() {
        let p = n.to_u64().expect("prime factor exceeds 64 bits");
        out.insert(Prime(p));
    }
    out
}
