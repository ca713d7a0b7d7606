//! Signed elements, signed sets and signed permutations.
//!
//! A signed element is a nonnegative integer that may carry a bar. Barred
//! elements are written with a leading `-` in the compact text notation, so
//! `-0` is the barred zero. Elements are totally ordered with every barred
//! element below every unbarred one and by value within each class:
//!
//! ```text
//! -0 < -1 < -2 < ... < 0 < 1 < 2 < ...
//! ```

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An underlying value together with an optional bar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedElement {
    pub value: u32,
    pub barred: bool,
}

impl SignedElement {
    pub const fn new(value: u32, barred: bool) -> Self {
        SignedElement { value, barred }
    }

    pub const fn plain(value: u32) -> Self {
        SignedElement::new(value, false)
    }

    pub const fn bar(value: u32) -> Self {
        SignedElement::new(value, true)
    }

    pub const fn with_bar(self, barred: bool) -> Self {
        SignedElement::new(self.value, barred)
    }

    /// Subtracts one from the value and keeps the bar.
    pub fn pred(self) -> Result<Self> {
        match self.value.checked_sub(1) {
            Some(value) => Ok(SignedElement::new(value, self.barred)),
            None => Err(Error::ValueUnderflow(self.to_string())),
        }
    }

    /// Adds one to the value and keeps the bar.
    pub const fn succ(self) -> Self {
        SignedElement::new(self.value + 1, self.barred)
    }

    /// True when `next` is this element plus one with the same bar.
    pub const fn is_followed_by_succ(self, next: SignedElement) -> bool {
        next.barred == self.barred && next.value == self.value + 1
    }
}

impl Ord for SignedElement {
    fn cmp(&self, other: &Self) -> Ordering {
        // Barred sorts first, so compare the negated flags.
        (!self.barred, self.value).cmp(&(!other.barred, other.value))
    }
}

impl PartialOrd for SignedElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Compares two elements in the type-B order.
pub fn compare(a: SignedElement, b: SignedElement) -> Ordering {
    a.cmp(&b)
}

impl fmt::Display for SignedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.barred {
            write!(f, "-{}", self.value)
        } else {
            write!(f, "{}", self.value)
        }
    }
}

impl FromStr for SignedElement {
    type Err = Error;

    fn from_str(token: &str) -> Result<Self> {
        let malformed = || Error::MalformedToken(token.to_string());
        let (barred, digits) = match token.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, token),
        };
        // Decimal digits only, no sign, no leading zeros.
        if digits.is_empty()
            || !digits.bytes().all(|b| b.is_ascii_digit())
            || (digits.len() > 1 && digits.starts_with('0'))
        {
            return Err(malformed());
        }
        let value = digits.parse::<u32>().map_err(|_| malformed())?;
        Ok(SignedElement::new(value, barred))
    }
}

fn parse_tokens(text: &str) -> Result<Vec<SignedElement>> {
    text.split_whitespace().map(str::parse).collect()
}

fn write_joined(f: &mut fmt::Formatter<'_>, items: &[SignedElement]) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// A set of signed elements with pairwise distinct underlying values,
/// stored by increasing underlying value.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SignedSet {
    elements: Vec<SignedElement>,
}

impl SignedSet {
    pub fn new(elements: impl IntoIterator<Item = SignedElement>) -> Result<Self> {
        let mut elements: Vec<_> = elements.into_iter().collect();
        elements.sort_by_key(|x| x.value);
        if let Some(w) = elements.windows(2).find(|w| w[0].value == w[1].value) {
            return Err(Error::DuplicateValue(w[0].value));
        }
        Ok(SignedSet { elements })
    }

    pub fn elements(&self) -> &[SignedElement] {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = SignedElement> + '_ {
        self.elements.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: SignedElement) -> bool {
        self.by_value(x.value) == Some(x)
    }

    /// The member whose underlying value is `value`, if any.
    pub fn by_value(&self, value: u32) -> Option<SignedElement> {
        self.elements
            .binary_search_by_key(&value, |x| x.value)
            .ok()
            .map(|i| self.elements[i])
    }

    /// `X - 1`: subtracts one from every element, keeping bars.
    pub fn shift_down(&self) -> Result<SignedSet> {
        let elements = self
            .elements
            .iter()
            .map(|x| x.pred())
            .collect::<Result<Vec<_>>>()?;
        Ok(SignedSet { elements })
    }

    /// `X + 1`: adds one to every element, keeping bars.
    pub fn shift_up(&self) -> SignedSet {
        SignedSet {
            elements: self.elements.iter().map(|x| x.succ()).collect(),
        }
    }
}

impl fmt::Display for SignedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.elements)
    }
}

impl FromStr for SignedSet {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        SignedSet::new(parse_tokens(text)?)
    }
}

/// The ground set of a signed permutation of length `n`: either
/// `{0, ..., n-1}` or `[n] = {1, ..., n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ground {
    Zero,
    One,
}

impl Ground {
    pub const fn min(self) -> u32 {
        match self {
            Ground::Zero => 0,
            Ground::One => 1,
        }
    }

    pub fn from_min(min: u32) -> Result<Self> {
        match min {
            0 => Ok(Ground::Zero),
            1 => Ok(Ground::One),
            other => Err(Error::InvalidGround(other)),
        }
    }

    pub(crate) const fn describe(self) -> &'static str {
        match self {
            Ground::Zero => "{0, ..., n-1}",
            Ground::One => "[n]",
        }
    }
}

/// A signed permutation on `{g, ..., g + n - 1}` where `g` is the ground
/// minimum (0 or 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    entries: Vec<SignedElement>,
    ground: Ground,
}

impl SignedPermutation {
    /// Checks that the underlying values are exactly the ground set.
    pub fn new(entries: Vec<SignedElement>, ground: Ground) -> Result<Self> {
        let n = entries.len();
        let min = ground.min();
        let mut seen = vec![false; n];
        for x in &entries {
            if let Some(slot) = x
                .value
                .checked_sub(min)
                .map(|i| i as usize)
                .filter(|&i| i < n)
            {
                if seen[slot] {
                    return Err(Error::DuplicateValue(x.value));
                }
                seen[slot] = true;
            } else if entries.iter().filter(|y| y.value == x.value).count() > 1 {
                return Err(Error::DuplicateValue(x.value));
            } else {
                return Err(Error::NonContiguousGround {
                    min,
                    max: (min as usize + n).saturating_sub(1) as u32,
                });
            }
        }
        Ok(SignedPermutation { entries, ground })
    }

    /// Infers the ground set: `{0, ..., n-1}` when a zero is present,
    /// `[n]` otherwise (including the empty permutation).
    pub fn from_entries(entries: Vec<SignedElement>) -> Result<Self> {
        let ground = if entries.iter().any(|x| x.value == 0) {
            Ground::Zero
        } else {
            Ground::One
        };
        SignedPermutation::new(entries, ground)
    }

    /// Parses compact notation against an explicit ground set.
    pub fn parse_on(text: &str, ground: Ground) -> Result<Self> {
        SignedPermutation::new(parse_tokens(text)?, ground)
    }

    /// The empty permutation on `[0]`.
    pub fn empty() -> Self {
        SignedPermutation {
            entries: Vec::new(),
            ground: Ground::One,
        }
    }

    pub(crate) fn from_parts_unchecked(entries: Vec<SignedElement>, ground: Ground) -> Self {
        debug_assert!(SignedPermutation::new(entries.clone(), ground).is_ok());
        SignedPermutation { entries, ground }
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [SignedElement] {
        &mut self.entries
    }

    pub fn entries(&self) -> &[SignedElement] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<SignedElement> {
        self.entries
    }

    pub fn ground(&self) -> Ground {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry at 1-based position `i`.
    pub fn at(&self, i: usize) -> SignedElement {
        self.entries[i - 1]
    }

    /// True when no entry carries a bar.
    pub fn is_unbarred(&self) -> bool {
        self.entries.iter().all(|x| !x.barred)
    }

    /// Bar flag of each underlying value, indexed by `value - ground_min`.
    pub fn bars_by_value(&self) -> Vec<bool> {
        let min = self.ground.min();
        let mut bars = vec![false; self.entries.len()];
        for x in &self.entries {
            bars[(x.value - min) as usize] = x.barred;
        }
        bars
    }

    /// The entries as a signed set.
    pub fn entry_set(&self) -> SignedSet {
        let mut elements = self.entries.clone();
        elements.sort_by_key(|x| x.value);
        SignedSet { elements }
    }

    pub(crate) fn expect_ground(&self, expected: Ground) -> Result<()> {
        if self.ground == expected {
            Ok(())
        } else {
            Err(Error::WrongGround {
                expected: expected.describe(),
                actual: self.ground.describe(),
            })
        }
    }

    /// JSON notation: an array of `{"value", "barred"}` objects.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.entries).expect("entries always serialize")
    }

    /// Parses JSON notation, inferring the ground set as [`from_entries`]
    /// does.
    ///
    /// [`from_entries`]: SignedPermutation::from_entries
    pub fn from_json(text: &str) -> Result<Self> {
        let entries: Vec<SignedElement> =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        SignedPermutation::from_entries(entries)
    }
}

impl Serialize for SignedPermutation {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(serializer)
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.entries)
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    /// Parses compact notation, inferring the ground set.
    fn from_str(text: &str) -> Result<Self> {
        SignedPermutation::from_entries(parse_tokens(text)?)
    }
}
