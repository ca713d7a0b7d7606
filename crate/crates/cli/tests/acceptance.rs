//! Acceptance criteria. Each criterion prints one PASS/FAIL line to stderr
//! (written directly, so it shows even when libtest captures output) and
//! the test fails if any criterion fails.

use std::collections::HashSet;
use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use sderange_core::{
    brute_count, count_derangements_b, count_derangements_classical, count_relative_classical,
    count_relative_derangements_b, derangement_to_rep_large, derangement_to_rep_small,
    from_representation, is_derangement_b, is_relative_derangement_b, iter_signed_permutations,
    rel_to_skew, relative_to_tagged_derangement, rep_large_to_derangement,
    rep_small_to_derangement, representation_of, skew_to_rel, tagged_derangement_to_relative,
    Count, EnumerationCursor, Ground, Representation, SignedElement, SignedPermutation, Tag,
    TaggedDerangement,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn sderange(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sderange"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 output"),
    )
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let took = start.elapsed();
    ensure(took <= limit, || format!("took {took:?}, limit {limit:?}"))
}

fn relative_derangements(n: usize) -> impl Iterator<Item = SignedPermutation> {
    iter_signed_permutations(n, Ground::One).filter(is_relative_derangement_b)
}

fn derangements(n: usize) -> impl Iterator<Item = SignedPermutation> {
    iter_signed_permutations(n, Ground::One).filter(is_derangement_b)
}

fn sequence_reproduction() -> Outcome {
    let start = Instant::now();
    let expected = ["2", "6", "34", "262", "2562"];
    for (n, want) in (1..=5).zip(expected) {
        let (code, out) = sderange(&["count", "qb", &n.to_string(), "--method", "formula"]);
        ensure(code == 0 && out.trim() == want, || {
            format!("n={n}: exit {code}, got {out:?}, want {want}")
        })?;
    }
    within(start, Duration::from_secs(1))
}

fn identity_closed_forms() -> Outcome {
    let start = Instant::now();
    for n in 1..=200 {
        let lhs = count_relative_derangements_b(n);
        let rhs = count_derangements_b(n) + count_derangements_b(n - 1);
        ensure(lhs == rhs, || format!("n={n}: {lhs} != {rhs}"))?;
    }
    within(start, Duration::from_secs(5))
}

fn brute_force_concordance() -> Outcome {
    let start = Instant::now();
    for n in 0..=6 {
        let brute = brute_count(n, Ground::One, false, is_derangement_b).unwrap();
        let formula = count_derangements_b(n);
        ensure(brute == formula, || {
            format!("D_{n}^B: brute {brute}, formula {formula}")
        })?;
    }
    for n in 1..=6 {
        let brute = brute_count(n, Ground::One, false, is_relative_derangement_b).unwrap();
        let formula = count_relative_derangements_b(n);
        ensure(brute == formula, || {
            format!("Q_{n}^B: brute {brute}, formula {formula}")
        })?;
    }
    within(start, Duration::from_secs(120))
}

fn golden_worked_examples() -> Outcome {
    let (code, out) = sderange(&["map", "rel2skew", "-7 8 6 -1 -5 -3 4 2"]);
    ensure(code == 0, || format!("rel2skew exit {code}"))?;
    let got: HashSet<&str> = out.lines().collect();
    let want: HashSet<&str> = [
        "-7 -> 7", "8 -> -6", "6 -> 5", "-1 -> -4", "-5 -> -2", "-3 -> 3", "4 -> -0", "2 -> 1",
    ]
    .into_iter()
    .collect();
    ensure(got == want && out.lines().count() == 8, || {
        format!("pairs {out:?}")
    })?;

    // Separate golden: the representation example and its derangement.
    let (code, out) = sderange(&["map", "rel2rep", "-7 8 6 -1 -5 -3 4 2"]);
    ensure(code == 0 && out.trim_end() == "-4 1 3 -0 -2 5 7 -6", || {
        format!("representation {out:?}")
    })?;
    let (code, out) = sderange(&["map", "rep2der", "-4 1 3 -0 -2 5 7 -6"]);
    ensure(
        code == 0 && out == "tag=large\n-4 1 -3 -8 -2 5 -7 -6\n",
        || format!("derangement {out:?}"),
    )
}

fn lemma_small_golden() -> Outcome {
    let rep = Representation::new(
        SignedPermutation::parse_on("-6 -2 1 4 -3 7 -5 0", Ground::Zero).unwrap(),
    )
    .map_err(|e| e.to_string())?;
    let der = rep_small_to_derangement(&rep).map_err(|e| e.to_string())?;
    ensure(der.to_string() == "-6 -2 1 -4 -3 7 -5", || {
        format!("forward {der}")
    })?;
    let back = derangement_to_rep_small(&der).map_err(|e| e.to_string())?;
    ensure(back.to_string() == "-6 -2 1 4 -3 7 -5 0", || {
        format!("backward {back}")
    })?;

    let (code, out) = sderange(&["map", "der2rep", "-6 -2 1 -4 -3 7 -5", "--tag", "small"]);
    ensure(code == 0 && out.trim_end() == "-6 -2 1 4 -3 7 -5 0", || {
        format!("cli backward {out:?}")
    })
}

fn exhaustive_bijectivity() -> Outcome {
    let start = Instant::now();
    for n in 1..=5 {
        let mut images = HashSet::new();
        let mut inputs = 0u64;
        for p in relative_derangements(n) {
            inputs += 1;
            let d = relative_to_tagged_derangement(&p).map_err(|e| e.to_string())?;
            let back = tagged_derangement_to_relative(&d).map_err(|e| e.to_string())?;
            ensure(back == p, || format!("n={n}: {p} -> {} -> {back}", d.perm))?;
            ensure(images.insert(d), || format!("n={n}: collision at {p}"))?;
        }
        ensure(
            Count::from(inputs) == count_relative_derangements_b(n),
            || format!("n={n}: {inputs} inputs"),
        )?;
        let expected: HashSet<TaggedDerangement> = derangements(n)
            .map(|t| TaggedDerangement {
                tag: Tag::Large,
                perm: t,
            })
            .chain(derangements(n - 1).map(|t| TaggedDerangement {
                tag: Tag::Small,
                perm: t,
            }))
            .collect();
        let large = expected.iter().filter(|d| d.tag == Tag::Large).count() as u64;
        let small = expected.len() as u64 - large;
        ensure(
            Count::from(large) == count_derangements_b(n)
                && Count::from(small) == count_derangements_b(n - 1),
            || format!("n={n}: union sizes {large} + {small}"),
        )?;
        ensure(images == expected, || {
            format!("n={n}: image differs from the union")
        })?;
        for d in &expected {
            let p = tagged_derangement_to_relative(d).map_err(|e| e.to_string())?;
            let again = relative_to_tagged_derangement(&p).map_err(|e| e.to_string())?;
            ensure(&again == d, || {
                format!("n={n}: backward then forward moved {}", d.perm)
            })?;
        }
    }
    within(start, Duration::from_secs(60))
}

fn check_round_trips(p: &SignedPermutation) -> Outcome {
    let f = rel_to_skew(p).map_err(|e| e.to_string())?;
    ensure(skew_to_rel(&f).as_ref() == Ok(p), || {
        format!("rel<->skew at {p}")
    })?;
    let r = representation_of(&f);
    ensure(from_representation(&r).as_ref() == Ok(&f), || {
        format!("representation at {p}")
    })?;
    let d = relative_to_tagged_derangement(p).map_err(|e| e.to_string())?;
    let r2 = match d.tag {
        Tag::Small => derangement_to_rep_small(&d.perm),
        Tag::Large => derangement_to_rep_large(&d.perm),
    };
    ensure(r2.as_ref() == Ok(&r), || format!("lemma inverse at {p}"))?;
    let t = if r.ends_in_zero() {
        rep_small_to_derangement(&r)
    } else {
        rep_large_to_derangement(&r)
    };
    ensure(t.as_ref() == Ok(&d.perm), || {
        format!("lemma forward at {p}")
    })
}

fn random_signed_permutation(n: usize, rng: &mut StdRng) -> SignedPermutation {
    let mut values: Vec<u32> = (1..=n as u32).collect();
    values.shuffle(rng);
    let entries = values
        .into_iter()
        .map(|v| SignedElement::new(v, rng.gen()))
        .collect();
    SignedPermutation::new(entries, Ground::One).unwrap()
}

fn round_trip_suites() -> Outcome {
    for n in 1..=5 {
        for p in relative_derangements(n) {
            check_round_trips(&p)?;
        }
        for r in
            iter_signed_permutations(n, Ground::Zero).filter_map(|p| Representation::new(p).ok())
        {
            let f = from_representation(&r).map_err(|e| e.to_string())?;
            ensure(representation_of(&f) == r, || {
                format!("decode/encode at {r}")
            })?;
        }
    }
    let mut rng = StdRng::seed_from_u64(0x05ee_db0b);
    for n in [7, 8] {
        let mut checked = 0;
        while checked < 1000 {
            let p = random_signed_permutation(n, &mut rng);
            if is_relative_derangement_b(&p) {
                check_round_trips(&p)?;
                checked += 1;
            }
        }
    }
    Ok(())
}

fn classical_restriction() -> Outcome {
    for n in 1..=6 {
        let mut images = HashSet::new();
        let mut inputs = 0u64;
        for p in relative_derangements(n).filter(SignedPermutation::is_unbarred) {
            inputs += 1;
            let d = relative_to_tagged_derangement(&p).map_err(|e| e.to_string())?;
            ensure(d.perm.is_unbarred(), || format!("n={n}: {p} gained a bar"))?;
            ensure(images.insert(d), || format!("n={n}: collision at {p}"))?;
        }
        let expected: HashSet<TaggedDerangement> = derangements(n)
            .filter(SignedPermutation::is_unbarred)
            .map(|t| TaggedDerangement {
                tag: Tag::Large,
                perm: t,
            })
            .chain(
                derangements(n - 1)
                    .filter(SignedPermutation::is_unbarred)
                    .map(|t| TaggedDerangement {
                        tag: Tag::Small,
                        perm: t,
                    }),
            )
            .collect();
        ensure(images == expected, || {
            format!("n={n}: not onto classical derangements")
        })?;
        ensure(Count::from(inputs) == count_relative_classical(n), || {
            format!("n={n}: brute Q_n {inputs}")
        })?;
        let brute_d = brute_count(n, Ground::One, false, |q| {
            q.is_unbarred() && is_derangement_b(q)
        })
        .unwrap();
        ensure(brute_d == count_derangements_classical(n), || {
            format!("n={n}: brute D_n {brute_d}")
        })?;
    }
    Ok(())
}

fn performance_floor() -> Outcome {
    let start = Instant::now();
    let mut cursor = EnumerationCursor::new(8, Ground::One);
    let (mut total, mut der, mut rel) = (0u64, 0u64, 0u64);
    while let Some(p) = cursor.next_ref() {
        total += 1;
        der += is_derangement_b(p) as u64;
        rel += is_relative_derangement_b(p) as u64;
    }
    within(start, Duration::from_secs(60))?;
    ensure(total == 10_321_920, || format!("B_8 has {total} items"))?;
    ensure(
        Count::from(der) == count_derangements_b(8)
            && Count::from(rel) == count_relative_derangements_b(8),
        || format!("B_8 counts {der}, {rel}"),
    )?;

    let start = Instant::now();
    let d = count_derangements_b(1000);
    let q = count_relative_derangements_b(1000);
    within(start, Duration::from_secs(1))?;
    ensure(q == &d + &count_derangements_b(999), || {
        "n = 1000 identity".into()
    })
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("1 sequence reproduction", sequence_reproduction),
        ("2 identity for 1 <= n <= 200", identity_closed_forms),
        ("3 brute-force concordance", brute_force_concordance),
        ("4 golden worked examples", golden_worked_examples),
        ("5 trailing-zero lemma golden", lemma_small_golden),
        ("6 exhaustive bijectivity", exhaustive_bijectivity),
        ("7 round-trip suites", round_trip_suites),
        ("8 classical restriction", classical_restriction),
        ("9 performance floor", performance_floor),
    ];
    let mut stderr = std::io::stderr();
    let mut failures = Vec::new();
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let status = if outcome.is_ok() { "PASS" } else { "FAIL" };
        let _ = writeln!(
            stderr,
            "[{status}] criterion {name} ({:.2?})",
            start.elapsed()
        );
        if let Err(why) = outcome {
            let _ = writeln!(stderr, "       {why}");
            failures.push(name);
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
