//! Constructive bijections between relative derangements, signed skew
//! derangements, their representations, and derangements.
//!
//! The chain is
//!
//! ```text
//! relative derangement on [n]
//!     <-> skew derangement X -> X-1          (max-element segments)
//!     <-> representation on {0, ..., n-1}     (pi_i = f(sigma_i))
//!     <-> derangement on [n-1]  if the representation ends in 0
//!         derangement on [n]    otherwise
//! ```
//!
//! so the relative derangements on `[n]` are in bijection with the disjoint
//! union of the derangements on `[n]` and on `[n-1]`.

use std::fmt;

use serde::Serialize;

use crate::enumeration::{is_derangement_b, is_fixed_point_free, is_relative_derangement_b};
use crate::error::{Error, Result};
use crate::signed::{Ground, SignedElement, SignedPermutation, SignedSet};

/// A fixed-point-free bijection `f: X -> X-1` for a signed set `X` on `[n]`.
/// Pairs are stored by increasing underlying value of `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewDerangement {
    pairs: Vec<(SignedElement, SignedElement)>,
}

#[derive(Serialize)]
struct PairJson {
    x: SignedElement,
    fx: SignedElement,
}

impl SkewDerangement {
    /// Validates the pairs: the domain is a signed set on `[n]`, the images
    /// are exactly `X-1`, and nothing is fixed.
    pub fn new(pairs: impl IntoIterator<Item = (SignedElement, SignedElement)>) -> Result<Self> {
        let mut pairs: Vec<_> = pairs.into_iter().collect();
        pairs.sort_by_key(|(x, _)| x.value);
        let domain = SignedSet::new(pairs.iter().map(|&(x, _)| x))
            .map_err(|e| Error::MalformedSkew(format!("domain: {e}")))?;
        if domain.iter().zip(1..).any(|(x, i)| x.value != i) {
            return Err(Error::MalformedSkew(format!(
                "domain {{{domain}}} is not a signed set on [{}]",
                pairs.len()
            )));
        }
        let image = SignedSet::new(pairs.iter().map(|&(_, fx)| fx))
            .map_err(|e| Error::MalformedSkew(format!("image: {e}")))?;
        let target = domain.shift_down()?;
        if image != target {
            return Err(Error::MalformedSkew(format!(
                "image {{{image}}} is not X-1 = {{{target}}}"
            )));
        }
        if let Some((x, _)) = pairs.iter().find(|(x, fx)| x == fx) {
            return Err(Error::MalformedSkew(format!("{x} is a fixed point")));
        }
        Ok(SkewDerangement { pairs })
    }

    /// Parses `x -> fx` pairs separated by commas, semicolons or newlines.
    pub fn parse_pairs(text: &str) -> Result<Self> {
        let pairs = text
            .split([',', ';', '\n'])
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|item| {
                let (x, fx) = item
                    .split_once("->")
                    .ok_or_else(|| Error::MalformedToken(item.to_string()))?;
                Ok((x.trim().parse()?, fx.trim().parse()?))
            })
            .collect::<Result<Vec<_>>>()?;
        SkewDerangement::new(pairs)
    }

    pub fn pairs(&self) -> &[(SignedElement, SignedElement)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The domain `X`.
    pub fn domain(&self) -> SignedSet {
        SignedSet::new(self.pairs.iter().map(|&(x, _)| x)).expect("validated on construction")
    }

    /// `f(x)`, or `None` when `x` is not in the domain.
    pub fn apply(&self, x: SignedElement) -> Option<SignedElement> {
        let (dx, fx) = *self.pairs.get((x.value as usize).checked_sub(1)?)?;
        (dx == x).then_some(fx)
    }

    /// One `x -> fx` line per pair.
    pub fn to_lines(&self) -> Vec<String> {
        self.pairs
            .iter()
            .map(|(x, fx)| format!("{x} -> {fx}"))
            .collect()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let pairs: Vec<_> = self
            .pairs
            .iter()
            .map(|&(x, fx)| PairJson { x, fx })
            .collect();
        serde_json::to_value(pairs).expect("pairs always serialize")
    }
}

impl fmt::Display for SkewDerangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_lines().join("\n"))
    }
}

/// A signed permutation on `{0, ..., n-1}` that encodes a skew derangement.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation(SignedPermutation);

impl Representation {
    pub fn new(perm: SignedPermutation) -> Result<Self> {
        perm.expect_ground(Ground::Zero)?;
        if let Some(i) = first_violation(&perm) {
            return Err(Error::InvalidRepresentation(format!(
                "{perm}: entry {} at position {i} and entry with value {} share a bar",
                perm.at(i),
                i - 1
            )));
        }
        Ok(Representation(perm))
    }

    pub fn perm(&self) -> &SignedPermutation {
        &self.0
    }

    pub fn into_perm(self) -> SignedPermutation {
        self.0
    }

    /// True when the last entry is the unbarred zero.
    pub fn ends_in_zero(&self) -> bool {
        self.0.entries().last() == Some(&SignedElement::plain(0))
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// First 1-based position `i` holding `i` or `-i` whose bar matches the bar
/// of the entry with underlying value `i-1`.
fn first_violation(p: &SignedPermutation) -> Option<usize> {
    let bars = p.bars_by_value();
    p.entries()
        .iter()
        .zip(1..)
        .find(|&(x, i)| x.value as usize == i && x.barred == bars[i - 1])
        .map(|(_, i)| i)
}

/// Lemma-style validity test for a representation: every signed fixed point
/// `pi_i` has the opposite bar from the entry with underlying value `i-1`.
pub fn is_valid_representation(p: &SignedPermutation) -> bool {
    p.ground() == Ground::Zero && first_violation(p).is_none()
}

/// Splits a relative derangement into segments ending at successive maxima
/// of the remaining suffix, and maps each segment cyclically:
/// `f(pi_j) = pi_{j+1} - 1` inside the segment and `f(pi_k) = pi_start - 1`
/// for its maximum `pi_k`.
pub fn rel_to_skew(p: &SignedPermutation) -> Result<SkewDerangement> {
    p.expect_ground(Ground::One)?;
    if !is_relative_derangement_b(p) {
        return Err(Error::NotRelativeDerangement(p.to_string()));
    }
    let entries = p.entries();
    let mut pairs = Vec::with_capacity(entries.len());
    let mut start = 0;
    while start < entries.len() {
        let k = start
            + entries[start..]
                .iter()
                .enumerate()
                .max_by_key(|&(_, x)| x)
                .map(|(i, _)| i)
                .unwrap();
        for j in start..k {
            pairs.push((entries[j], entries[j + 1].pred()?));
        }
        pairs.push((entries[k], entries[start].pred()?));
        start = k + 1;
    }
    debug_assert!(is_fixed_point_free(&pairs));
    SkewDerangement::new(pairs)
}

/// Inverse of [`rel_to_skew`]: starting from the largest remaining element
/// `u`, follow `x -> f(x) + 1` until `u` is reached, then repeat on what is
/// left.
pub fn skew_to_rel(f: &SkewDerangement) -> Result<SignedPermutation> {
    let n = f.len();
    let mut used = vec![false; n];
    let mut remaining: Vec<SignedElement> = f.pairs().iter().map(|&(x, _)| x).collect();
    remaining.sort();
    let mut out = Vec::with_capacity(n);
    while let Some(u) = remaining.pop() {
        if used[u.value as usize - 1] {
            continue;
        }
        let mut cur = u;
        loop {
            let next = f
                .apply(cur)
                .ok_or_else(|| Error::MalformedSkew(format!("{cur} is not in the domain")))?
                .succ();
            let slot = next.value as usize - 1;
            if f.apply(next).is_none() || used[slot] {
                return Err(Error::MalformedSkew(format!(
                    "chain from {u} revisits or leaves the domain at {next}"
                )));
            }
            used[slot] = true;
            out.push(next);
            if next == u {
                break;
            }
            cur = next;
        }
    }
    Ok(SignedPermutation::from_parts_unchecked(out, Ground::One))
}

/// `pi_i = f(sigma_i)` where `sigma_i` is the domain element with value `i`.
pub fn representation_of(f: &SkewDerangement) -> Representation {
    let entries = f.pairs().iter().map(|&(_, fx)| fx).collect();
    Representation(SignedPermutation::from_parts_unchecked(
        entries,
        Ground::Zero,
    ))
}

/// Rebuilds the skew derangement from its representation: `X` is the entry
/// set shifted up by one.
pub fn from_representation(r: &Representation) -> Result<SkewDerangement> {
    let domain = r.perm().entry_set().shift_up();
    SkewDerangement::new(domain.iter().zip(r.perm().entries().iter().copied()))
}

/// Like [`from_representation`], for a permutation not yet known to be
/// valid.
pub fn skew_from_perm(p: &SignedPermutation) -> Result<SkewDerangement> {
    from_representation(&Representation::new(p.clone())?)
}

/// Re-signs signed fixed points in increasing position order so that each
/// has the bar opposite to the entry with underlying value `i-1`. `entries`
/// is on `{0, ..., n-1}`.
fn resign_fixed_points(entries: &mut [SignedElement]) {
    let mut bars = vec![false; entries.len()];
    for x in entries.iter() {
        bars[x.value as usize] = x.barred;
    }
    for i in 1..entries.len() {
        let x = &mut entries[i - 1];
        if x.value as usize == i {
            x.barred = !bars[i - 1];
            bars[i] = x.barred;
        }
    }
}

/// Bars every signed fixed point.
fn bar_fixed_points(entries: &mut [SignedElement]) {
    for (x, i) in entries.iter_mut().zip(1..) {
        if x.value == i {
            x.barred = true;
        }
    }
}

fn require_derangement(t: &SignedPermutation) -> Result<()> {
    t.expect_ground(Ground::One)?;
    if is_derangement_b(t) {
        Ok(())
    } else {
        Err(Error::NotDerangement(t.to_string()))
    }
}

/// A representation ending in `0` becomes a derangement on `[n-1]`: drop the
/// `0` and bar every signed fixed point.
pub fn rep_small_to_derangement(r: &Representation) -> Result<SignedPermutation> {
    if !r.ends_in_zero() {
        return Err(Error::InvalidRepresentation(format!(
            "{r} does not end in unbarred 0"
        )));
    }
    let mut entries = r.perm().entries().to_vec();
    entries.pop();
    bar_fixed_points(&mut entries);
    Ok(SignedPermutation::from_parts_unchecked(
        entries,
        Ground::One,
    ))
}

/// Inverse of [`rep_small_to_derangement`].
pub fn derangement_to_rep_small(t: &SignedPermutation) -> Result<Representation> {
    require_derangement(t)?;
    let mut entries = t.entries().to_vec();
    entries.push(SignedElement::plain(0));
    resign_fixed_points(&mut entries);
    Ok(Representation(SignedPermutation::from_parts_unchecked(
        entries,
        Ground::Zero,
    )))
}

/// A representation not ending in unbarred `0` becomes a derangement on
/// `[n]`: bar every signed fixed point, then replace `0` by `n` (or `-0` by
/// `-n`).
pub fn rep_large_to_derangement(r: &Representation) -> Result<SignedPermutation> {
    if r.ends_in_zero() || r.perm().is_empty() {
        return Err(Error::InvalidRepresentation(format!(
            "{r} ends in unbarred 0"
        )));
    }
    let n = r.perm().len() as u32;
    let mut entries = r.perm().entries().to_vec();
    bar_fixed_points(&mut entries);
    for x in entries.iter_mut().filter(|x| x.value == 0) {
        x.value = n;
    }
    Ok(SignedPermutation::from_parts_unchecked(
        entries,
        Ground::One,
    ))
}

/// Inverse of [`rep_large_to_derangement`].
pub fn derangement_to_rep_large(t: &SignedPermutation) -> Result<Representation> {
    require_derangement(t)?;
    if t.is_empty() {
        return Err(Error::NotDerangement(
            "the empty derangement has no large-branch preimage".into(),
        ));
    }
    let n = t.len() as u32;
    let mut entries = t.entries().to_vec();
    for x in entries.iter_mut().filter(|x| x.value == n) {
        x.value = 0;
    }
    resign_fixed_points(&mut entries);
    Ok(Representation(SignedPermutation::from_parts_unchecked(
        entries,
        Ground::Zero,
    )))
}

/// Which part of the disjoint union a derangement belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tag {
    /// Derangement on `[n-1]`.
    Small,
    /// Derangement on `[n]`.
    Large,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::Small => "small",
            Tag::Large => "large",
        })
    }
}

impl std::str::FromStr for Tag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "small" => Ok(Tag::Small),
            "large" => Ok(Tag::Large),
            other => Err(Error::MalformedToken(other.to_string())),
        }
    }
}

/// A derangement tagged with the part of `D_n^B ⊔ D_{n-1}^B` it lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TaggedDerangement {
    pub tag: Tag,
    pub perm: SignedPermutation,
}

impl TaggedDerangement {
    pub fn new(tag: Tag, perm: SignedPermutation) -> Result<Self> {
        require_derangement(&perm)?;
        if tag == Tag::Large && perm.is_empty() {
            return Err(Error::NotDerangement(
                "a large-tagged derangement needs n >= 1".into(),
            ));
        }
        Ok(TaggedDerangement { tag, perm })
    }

    /// Size of the relative derangements this corresponds to.
    pub fn relative_size(&self) -> usize {
        match self.tag {
            Tag::Small => self.perm.len() + 1,
            Tag::Large => self.perm.len(),
        }
    }
}

/// Relative derangement on `[n]` to a derangement on `[n]` or `[n-1]`.
pub fn relative_to_tagged_derangement(p: &SignedPermutation) -> Result<TaggedDerangement> {
    let r = representation_of(&rel_to_skew(p)?);
    if r.ends_in_zero() {
        Ok(TaggedDerangement {
            tag: Tag::Small,
            perm: rep_small_to_derangement(&r)?,
        })
    } else {
        Ok(TaggedDerangement {
            tag: Tag::Large,
            perm: rep_large_to_derangement(&r)?,
        })
    }
}

/// Inverse of [`relative_to_tagged_derangement`].
pub fn tagged_derangement_to_relative(d: &TaggedDerangement) -> Result<SignedPermutation> {
    let r = match d.tag {
        Tag::Small => derangement_to_rep_small(&d.perm)?,
        Tag::Large => derangement_to_rep_large(&d.perm)?,
    };
    skew_to_rel(&from_representation(&r)?)
}
