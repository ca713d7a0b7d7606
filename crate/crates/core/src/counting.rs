//! Exact closed-form counts.
//!
//! Every function here works in arbitrary-precision integers; nothing is
//! ever rounded. The alternating sums are accumulated in a signed
//! accumulator and converted back at the end, where the total is known to
//! be nonnegative.

use std::fmt;
use std::ops::Add;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

/// An exact nonnegative count. Serializes as a decimal string.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Count(pub BigUint);

impl Count {
    pub fn zero() -> Self {
        Count(BigUint::zero())
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }
}

impl From<u64> for Count {
    fn from(v: u64) -> Self {
        Count(BigUint::from(v))
    }
}

impl From<BigUint> for Count {
    fn from(v: BigUint) -> Self {
        Count(v)
    }
}

impl Add for Count {
    type Output = Count;

    fn add(self, rhs: Count) -> Count {
        Count(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Count> for &'a Count {
    type Output = Count;

    fn add(self, rhs: &'a Count) -> Count {
        Count(&self.0 + &rhs.0)
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

fn into_count(total: BigInt) -> Count {
    Count(
        total
            .to_biguint()
            .expect("alternating sum of a counting formula is nonnegative"),
    )
}

/// Adds `sign * term` to `acc`, where the sign alternates with `k`.
fn accumulate(acc: &mut BigInt, k: usize, term: &BigUint) {
    let term = BigInt::from(term.clone());
    if k.is_multiple_of(2) {
        *acc += term;
    } else {
        *acc -= term;
    }
}

/// Number of derangements of type B on `[n]`:
///
/// `D_n^B = sum_{k=0}^{n} (-1)^k C(n,k) (n-k)! 2^(n-k)`, with `D_0^B = 1`.
///
/// The summand equals `n!/k! * 2^(n-k)`, so it is built from `k = n`
/// downwards by multiplying by `2k` at each step.
pub fn count_derangements_b(n: usize) -> Count {
    let mut total = BigInt::zero();
    let mut term = BigUint::one();
    for k in (0..=n).rev() {
        accumulate(&mut total, k, &term);
        term *= 2 * k as u64;
    }
    into_count(total)
}

/// Number of relative derangements of type B on `[n]`, `n >= 1`:
///
/// `Q_n^B = n! 2^n + sum_{k=1}^{n-1} (-1)^k C(n-1,k) (n-k)! 2^(n-k)`.
///
/// Here `C(n-1,k) (n-k)! 2^(n-k) = (n-k) * (n-1)!/k! * 2^(n-k)`; the factor
/// `(n-1)!/k! * 2^(n-k)` is carried downwards from `k = n-1`.
pub fn count_relative_derangements_b(n: usize) -> Count {
    assert!(n >= 1, "Q_n^B is defined for n >= 1");
    let mut lead = BigUint::one();
    for i in 1..=n {
        lead *= 2 * i as u64;
    }
    let mut total = BigInt::from(lead);
    let mut partial = BigUint::from(2u32);
    for k in (1..n).rev() {
        accumulate(&mut total, k, &(&partial * (n - k)));
        partial *= 2 * k as u64;
    }
    into_count(total)
}

/// `D_n^B + D_{n-1}^B`, `n >= 1`.
pub fn count_relative_via_identity(n: usize) -> Count {
    assert!(n >= 1, "Q_n^B is defined for n >= 1");
    count_derangements_b(n) + count_derangements_b(n - 1)
}

/// Classical derangement number `D_n = sum_{k=0}^{n} (-1)^k n!/k!`.
pub fn count_derangements_classical(n: usize) -> Count {
    let mut total = BigInt::zero();
    let mut term = BigUint::one();
    for k in (0..=n).rev() {
        accumulate(&mut total, k, &term);
        term *= k as u64;
    }
    into_count(total)
}

/// Classical relative derangements `Q_n = D_n + D_{n-1}`, `n >= 1`.
pub fn count_relative_classical(n: usize) -> Count {
    assert!(n >= 1, "Q_n is defined for n >= 1");
    count_derangements_classical(n) + count_derangements_classical(n - 1)
}
