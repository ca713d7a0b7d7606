//! Identity and round-trip checks over a range of `n`, with a structured
//! report.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bijections::{
    from_representation, is_valid_representation, rel_to_skew, relative_to_tagged_derangement,
    representation_of, skew_to_rel, tagged_derangement_to_relative, Tag,
};
use crate::counting::{
    count_derangements_b, count_derangements_classical, count_relative_classical,
    count_relative_derangements_b, count_relative_via_identity, Count,
};
use crate::enumeration::{
    brute_count, check_size, is_derangement_b, is_fixed_point_free, is_relative_derangement_b,
    iter_signed_permutations, EnumerationCursor,
};
use crate::error::{Error, Result};
use crate::signed::Ground;

/// The identities `verify` knows how to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Identity {
    /// Closed form for `Q_n^B` against `D_n^B + D_{n-1}^B`.
    #[serde(rename = "eq4")]
    RelativeVsDerangementSum,
    /// Closed forms for `D_n^B` and `Q_n^B` against brute force.
    #[serde(rename = "eq5-vs-brute")]
    ClosedFormVsBrute,
    /// Every bijection composed with its inverse is the identity.
    #[serde(rename = "roundtrip")]
    RoundTrip,
    /// The composite map is a bijection onto the tagged derangements.
    #[serde(rename = "partition")]
    Partition,
    /// The unbarred restriction witnesses `Q_n = D_n + D_{n-1}`.
    #[serde(rename = "classical")]
    Classical,
}

impl Identity {
    pub const ALL: [Identity; 5] = [
        Identity::RelativeVsDerangementSum,
        Identity::ClosedFormVsBrute,
        Identity::RoundTrip,
        Identity::Partition,
        Identity::Classical,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::RelativeVsDerangementSum => "eq4",
            Identity::ClosedFormVsBrute => "eq5-vs-brute",
            Identity::RoundTrip => "roundtrip",
            Identity::Partition => "partition",
            Identity::Classical => "classical",
        }
    }

    pub fn method(self) -> Method {
        match self {
            Identity::RelativeVsDerangementSum => Method::ClosedForm,
            _ => Method::BruteForce,
        }
    }

    /// Smallest `n` the check is defined for.
    pub fn min_n(self) -> usize {
        1
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::MalformedToken(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    BruteForce,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed-form",
            Method::BruteForce => "brute-force",
        })
    }
}

/// Outcome for a single `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub n: usize,
    pub lhs: Count,
    pub rhs: Count,
    pub equal: bool,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<&'static str, Count>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub identity: Identity,
    pub from: usize,
    pub to: usize,
    pub method: Method,
    pub results: Vec<CheckResult>,
    pub overall: bool,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report always serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "identity {} over n = {}..={} ({})",
            self.identity, self.from, self.to, self.method
        )?;
        for r in &self.results {
            write!(
                f,
                "n={} lhs={} rhs={} {}",
                r.n,
                r.lhs,
                r.rhs,
                if r.equal { "ok" } else { "FAIL" }
            )?;
            for (k, v) in &r.details {
                write!(f, " {k}={v}")?;
            }
            writeln!(f)?;
        }
        write!(f, "overall: {}", self.overall)
    }
}

fn result(n: usize, lhs: Count, rhs: Count, extra_ok: bool) -> CheckResult {
    CheckResult {
        n,
        equal: extra_ok && lhs == rhs,
        lhs,
        rhs,
        details: BTreeMap::new(),
    }
}

/// Runs `identity` for every `n` in `from..=to`.
///
/// Brute-force identities refuse `to > BRUTE_FORCE_LIMIT` unless `force`
/// is set.
pub fn verify(
    identity: Identity,
    from: usize,
    to: usize,
    force: bool,
) -> Result<VerificationReport> {
    let from = from.max(identity.min_n());
    if identity.method() == Method::BruteForce && to >= from {
        check_size(to, force)?;
    }
    let results = (from..=to)
        .map(|n| check(identity, n, force))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport {
        identity,
        from,
        to,
        method: identity.method(),
        overall: results.iter().all(|r| r.equal),
        results,
    })
}

fn check(identity: Identity, n: usize, force: bool) -> Result<CheckResult> {
    match identity {
        Identity::RelativeVsDerangementSum => Ok(result(
            n,
            count_relative_derangements_b(n),
            count_relative_via_identity(n),
            true,
        )),
        Identity::ClosedFormVsBrute => {
            let rel = brute_count(n, Ground::One, force, is_relative_derangement_b)?;
            let der = brute_count(n, Ground::One, force, is_derangement_b)?;
            let der_formula = count_derangements_b(n);
            let der_ok = der == der_formula;
            let mut r = result(n, rel, count_relative_derangements_b(n), der_ok);
            r.details.insert("brute_db", der);
            r.details.insert("formula_db", der_formula);
            Ok(r)
        }
        Identity::RoundTrip => round_trip(n),
        Identity::Partition => partition(n, force),
        Identity::Classical => classical(n, force),
    }
}

/// Counts relative derangements on which every round trip holds; compared
/// against the total number of relative derangements.
fn round_trip(n: usize) -> Result<CheckResult> {
    let mut total = 0u64;
    let mut good = 0u64;
    let mut cursor = EnumerationCursor::new(n, Ground::One);
    while let Some(p) = cursor.next_ref() {
        if !is_relative_derangement_b(p) {
            continue;
        }
        total += 1;
        let f = rel_to_skew(p)?;
        let r = representation_of(&f);
        let d = relative_to_tagged_derangement(p)?;
        let ok = is_fixed_point_free(f.pairs())
            && skew_to_rel(&f)? == *p
            && is_valid_representation(r.perm())
            && from_representation(&r)? == f
            && tagged_derangement_to_relative(&d)? == *p
            && relative_to_tagged_derangement(&tagged_derangement_to_relative(&d)?)? == d;
        good += ok as u64;
    }
    Ok(result(n, Count::from(good), Count::from(total), true))
}

/// Image of the composite map: injective, every image a derangement of the
/// right size, and the tagged image sizes equal to the brute-force
/// derangement counts on `[n]` and `[n-1]`.
fn partition(n: usize, force: bool) -> Result<CheckResult> {
    let mut images = HashSet::new();
    let mut large = 0u64;
    let mut small = 0u64;
    let mut well_formed = true;
    let mut cursor = EnumerationCursor::new(n, Ground::One);
    while let Some(p) = cursor.next_ref() {
        if !is_relative_derangement_b(p) {
            continue;
        }
        let d = relative_to_tagged_derangement(p)?;
        well_formed &= is_derangement_b(&d.perm) && d.relative_size() == n;
        well_formed &= tagged_derangement_to_relative(&d)? == *p;
        match d.tag {
            Tag::Large => large += 1,
            Tag::Small => small += 1,
        }
        well_formed &= images.insert(d);
    }
    let der_n = brute_count(n, Ground::One, force, is_derangement_b)?;
    let der_prev = brute_count(n - 1, Ground::One, force, is_derangement_b)?;
    let (large, small) = (Count::from(large), Count::from(small));
    well_formed &= large == der_n && small == der_prev;
    let mut r = result(
        n,
        Count::from(images.len() as u64),
        &der_n + &der_prev,
        well_formed,
    );
    r.details.insert("large", large);
    r.details.insert("small", small);
    Ok(r)
}

/// Restricts the composite map to unbarred relative derangements.
fn classical(n: usize, force: bool) -> Result<CheckResult> {
    check_size(n, force)?;
    let mut images = HashSet::new();
    let mut well_formed = true;
    let mut count = 0u64;
    for p in iter_signed_permutations(n, Ground::One).filter(|p| p.is_unbarred()) {
        if !is_relative_derangement_b(&p) {
            continue;
        }
        count += 1;
        let f = rel_to_skew(&p)?;
        well_formed &= f.pairs().iter().all(|(x, fx)| !x.barred && !fx.barred);
        let d = relative_to_tagged_derangement(&p)?;
        well_formed &= d.perm.is_unbarred() && is_derangement_b(&d.perm);
        well_formed &= images.insert(d);
    }
    let unbarred_derangements = |m: usize| -> Result<Count> {
        brute_count(m, Ground::One, force, |q| {
            q.is_unbarred() && is_derangement_b(q)
        })
    };
    let der_n = unbarred_derangements(n)?;
    let der_prev = unbarred_derangements(n - 1)?;
    well_formed &= der_n == count_derangements_classical(n)
        && der_prev == count_derangements_classical(n - 1)
        && images.len() as u64 == count;
    let formula = count_relative_classical(n);
    well_formed &= &der_n + &der_prev == formula;
    let mut r = result(n, Count::from(count), formula, well_formed);
    r.details.insert("images", Count::from(images.len() as u64));
    Ok(r)
}
