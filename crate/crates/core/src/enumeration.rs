//! Streaming enumeration of the signed permutations on a ground set, and the
//! generate-and-test predicates used as brute-force oracles.
//!
//! Order: underlying permutations in lexicographic order; for each of them
//! the bar masks `0, 1, ..., 2^n - 1` in binary counting order, where the
//! first position is the most significant bit and a set bit means barred.
//! For `n = 2` on `[2]` this gives
//!
//! ```text
//! 1 2, 1 -2, -1 2, -1 -2, 2 1, 2 -1, -2 1, -2 -1
//! ```

use std::thread;

use crate::counting::Count;
use crate::error::{Error, Result};
use crate::signed::{Ground, SignedElement, SignedPermutation};

/// Largest `n` the brute-force helpers accept without `force`.
pub const BRUTE_FORCE_LIMIT: usize = 9;

/// Below this size brute_count stays on the calling thread.
const PARALLEL_THRESHOLD: usize = 6;

pub fn check_size(n: usize, force: bool) -> Result<()> {
    if n > BRUTE_FORCE_LIMIT && !force {
        Err(Error::SizeGuard {
            n,
            limit: BRUTE_FORCE_LIMIT,
        })
    } else {
        Ok(())
    }
}

/// Rearranges `values` into the next permutation in lexicographic order.
/// Returns false (leaving `values` sorted ascending) after the last one.
fn next_permutation(values: &mut [u32]) -> bool {
    let Some(i) = values.windows(2).rposition(|w| w[0] < w[1]) else {
        values.reverse();
        return false;
    };
    let j = values.iter().rposition(|&v| v > values[i]).unwrap();
    values.swap(i, j);
    values[i + 1..].reverse();
    true
}

/// A lending cursor over signed permutations. Holds one permutation and
/// rewrites it in place on each step.
#[derive(Clone, Debug)]
pub struct EnumerationCursor {
    n: usize,
    values: Vec<u32>,
    // Leading positions of `values` that never move.
    fixed: usize,
    mask: u64,
    started: bool,
    done: bool,
    current: SignedPermutation,
}

impl EnumerationCursor {
    pub fn new(n: usize, ground: Ground) -> Self {
        assert!(n < 64, "bar masks are limited to 63 positions");
        let min = ground.min();
        let values: Vec<u32> = (min..min + n as u32).collect();
        EnumerationCursor::from_values(values, 0, ground)
    }

    /// Cursor over the `2^(n-1) (n-1)!` permutations whose first entry has
    /// underlying value `first`.
    pub fn with_first(n: usize, ground: Ground, first: u32) -> Self {
        assert!(
            (1..64).contains(&n),
            "bar masks are limited to 63 positions"
        );
        let min = ground.min();
        assert!((min..min + n as u32).contains(&first));
        let mut values = vec![first];
        values.extend((min..min + n as u32).filter(|&v| v != first));
        EnumerationCursor::from_values(values, 1, ground)
    }

    fn from_values(values: Vec<u32>, fixed: usize, ground: Ground) -> Self {
        let entries = values.iter().map(|&v| SignedElement::plain(v)).collect();
        EnumerationCursor {
            n: values.len(),
            values,
            fixed,
            mask: 0,
            started: false,
            done: false,
            current: SignedPermutation::from_parts_unchecked(entries, ground),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn apply_mask(&mut self) {
        let n = self.n;
        let mask = self.mask;
        for (i, x) in self.current.entries_mut().iter_mut().enumerate() {
            x.barred = (mask >> (n - 1 - i)) & 1 == 1;
        }
    }

    fn apply_values(&mut self) {
        for (x, &v) in self.current.entries_mut().iter_mut().zip(&self.values) {
            *x = SignedElement::plain(v);
        }
    }

    /// Advances and returns the next permutation, or `None` when exhausted.
    pub fn next_ref(&mut self) -> Option<&SignedPermutation> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.current);
        }
        self.mask += 1;
        if self.mask >> self.n == 0 {
            self.apply_mask();
            return Some(&self.current);
        }
        self.mask = 0;
        let fixed = self.fixed;
        if next_permutation(&mut self.values[fixed..]) {
            self.apply_values();
            Some(&self.current)
        } else {
            self.done = true;
            None
        }
    }
}

/// Owning iterator over signed permutations in enumeration order.
#[derive(Clone, Debug)]
pub struct SignedPermutations {
    cursor: EnumerationCursor,
}

impl Iterator for SignedPermutations {
    type Item = SignedPermutation;

    fn next(&mut self) -> Option<SignedPermutation> {
        self.cursor.next_ref().cloned()
    }
}

/// All `2^n n!` signed permutations on the ground set of size `n`.
pub fn iter_signed_permutations(n: usize, ground: Ground) -> SignedPermutations {
    SignedPermutations {
        cursor: EnumerationCursor::new(n, ground),
    }
}

/// No position `i` holds the unbarred element `i` (positions are 1-based).
pub fn is_derangement_b(p: &SignedPermutation) -> bool {
    p.entries()
        .iter()
        .zip(1..)
        .all(|(x, i)| x.barred || x.value != i)
}

/// No entry is immediately followed by its successor with the same bar.
pub fn is_relative_derangement_b(p: &SignedPermutation) -> bool {
    !p.entries()
        .windows(2)
        .any(|w| w[0].is_followed_by_succ(w[1]))
}

/// No pair maps an element to itself (value and bar both equal).
pub fn is_fixed_point_free(pairs: &[(SignedElement, SignedElement)]) -> bool {
    pairs.iter().all(|(x, fx)| x != fx)
}

fn count_with(
    mut cursor: EnumerationCursor,
    predicate: &(impl Fn(&SignedPermutation) -> bool + ?Sized),
) -> u64 {
    let mut count = 0;
    while let Some(p) = cursor.next_ref() {
        if predicate(p) {
            count += 1;
        }
    }
    count
}

/// Counts the signed permutations of size `n` satisfying `predicate`.
///
/// Refuses `n > BRUTE_FORCE_LIMIT` unless `force` is set. Larger inputs are
/// split by first entry across threads.
pub fn brute_count<P>(n: usize, ground: Ground, force: bool, predicate: P) -> Result<Count>
where
    P: Fn(&SignedPermutation) -> bool + Sync,
{
    check_size(n, force)?;
    if n < PARALLEL_THRESHOLD {
        return Ok(Count::from(count_with(
            EnumerationCursor::new(n, ground),
            &predicate,
        )));
    }
    let min = ground.min();
    let predicate = &predicate;
    let total = thread::scope(|s| {
        let handles: Vec<_> = (min..min + n as u32)
            .map(|first| {
                s.spawn(move || {
                    count_with(EnumerationCursor::with_first(n, ground, first), predicate)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("counting thread panicked"))
            .sum::<u64>()
    });
    Ok(Count::from(total))
}
