//! `sderange`: count, enumerate, map and verify type-B derangements.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage,
//! parse or precondition errors.

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use sderange_core::enumeration::check_size;
use sderange_core::{
    brute_count, count_derangements_b, count_derangements_classical, count_relative_classical,
    count_relative_derangements_b, count_relative_via_identity, derangement_to_rep_large,
    derangement_to_rep_small, is_derangement_b, is_relative_derangement_b, is_valid_representation,
    rel_to_skew, relative_to_tagged_derangement, rep_large_to_derangement,
    rep_small_to_derangement, representation_of, skew_from_perm, skew_to_rel,
    tagged_derangement_to_relative, verify, Count, EnumerationCursor, Ground, Identity,
    Representation, SignedPermutation, SkewDerangement, Tag, TaggedDerangement,
};

#[derive(Parser)]
#[command(
    name = "sderange",
    version,
    about = "Derangements and relative derangements of type B"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print an exact count.
    Count {
        family: Family,
        n: usize,
        #[arg(long, value_enum, default_value_t = CountMethod::Formula)]
        method: CountMethod,
        /// Allow brute force beyond n = 9.
        #[arg(long)]
        force: bool,
        #[arg(long)]
        json: bool,
    },
    /// List signed permutations of a family in enumeration order.
    Enumerate {
        family: EnumFamily,
        n: usize,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        force: bool,
        #[arg(long)]
        json: bool,
    },
    /// Apply one of the bijections to an input in compact or JSON notation.
    Map {
        direction: Direction,
        #[arg(allow_hyphen_values = true)]
        input: String,
        /// Which derangement family the input or output belongs to.
        #[arg(long, value_enum)]
        tag: Option<TagArg>,
        #[arg(long)]
        json: bool,
    },
    /// Check an identity for every n in a range.
    Verify {
        #[arg(value_enum)]
        identity: IdentityArg,
        #[arg(long, default_value_t = 1)]
        from: usize,
        #[arg(long, default_value_t = 5)]
        to: usize,
        #[arg(long)]
        force: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print n, D_n^B, Q_n^B, D_n, Q_n for a range of n.
    Table {
        #[arg(long, default_value_t = 0)]
        from: usize,
        #[arg(long, default_value_t = 10)]
        to: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// Derangements of type B.
    Db,
    /// Relative derangements of type B.
    Qb,
    /// Classical derangements.
    D,
    /// Classical relative derangements.
    Q,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountMethod {
    Formula,
    Brute,
    Identity,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumFamily {
    All,
    Db,
    Qb,
    Reps,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Rel2skew,
    Skew2rel,
    Rel2der,
    Der2rel,
    Rel2rep,
    Rep2der,
    Der2rep,
}

#[derive(Clone, Copy, ValueEnum)]
enum TagArg {
    Small,
    Large,
}

impl From<TagArg> for Tag {
    fn from(t: TagArg) -> Tag {
        match t {
            TagArg::Small => Tag::Small,
            TagArg::Large => Tag::Large,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum IdentityArg {
    Eq4,
    #[value(name = "eq5-vs-brute")]
    Eq5VsBrute,
    Roundtrip,
    Partition,
    Classical,
}

impl From<IdentityArg> for Identity {
    fn from(i: IdentityArg) -> Identity {
        match i {
            IdentityArg::Eq4 => Identity::RelativeVsDerangementSum,
            IdentityArg::Eq5VsBrute => Identity::ClosedFormVsBrute,
            IdentityArg::Roundtrip => Identity::RoundTrip,
            IdentityArg::Partition => Identity::Partition,
            IdentityArg::Classical => Identity::Classical,
        }
    }
}

/// Anything that should end the process with exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl From<sderange_core::Error> for UsageError {
    fn from(e: sderange_core::Error) -> Self {
        UsageError(e.to_string())
    }
}

impl From<io::Error> for UsageError {
    fn from(e: io::Error) -> Self {
        UsageError(e.to_string())
    }
}

type CliResult<T> = Result<T, UsageError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(UsageError(msg.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match cli.command {
        Command::Count {
            family,
            n,
            method,
            force,
            json,
        } => cmd_count(&mut out, family, n, method, force, json)?,
        Command::Enumerate {
            family,
            n,
            limit,
            force,
            json,
        } => cmd_enumerate(&mut out, family, n, limit, force, json)?,
        Command::Map {
            direction,
            input,
            tag,
            json,
        } => cmd_map(&mut out, direction, &input, tag.map(Tag::from), json)?,
        Command::Verify {
            identity,
            from,
            to,
            force,
            json,
        } => cmd_verify(&mut out, identity.into(), from, to, force, json)?,
        Command::Table { from, to, json } => cmd_table(&mut out, from, to, json)?,
    };
    out.flush()?;
    Ok(code)
}

fn family_name(family: Family) -> &'static str {
    match family {
        Family::Db => "db",
        Family::Qb => "qb",
        Family::D => "d",
        Family::Q => "q",
    }
}

fn method_name(method: CountMethod) -> &'static str {
    match method {
        CountMethod::Formula => "formula",
        CountMethod::Brute => "brute",
        CountMethod::Identity => "identity",
    }
}

fn count(family: Family, n: usize, method: CountMethod, force: bool) -> CliResult<Count> {
    let relative = matches!(family, Family::Qb | Family::Q);
    if relative && n == 0 {
        return usage("relative derangements are counted for n >= 1");
    }
    let count = match (family, method) {
        (Family::Db, CountMethod::Formula) => count_derangements_b(n),
        (Family::Qb, CountMethod::Formula) => count_relative_derangements_b(n),
        (Family::Qb, CountMethod::Identity) => count_relative_via_identity(n),
        (Family::D, CountMethod::Formula) => count_derangements_classical(n),
        (Family::Q, CountMethod::Formula | CountMethod::Identity) => count_relative_classical(n),
        (Family::Db, CountMethod::Brute) => brute_count(n, Ground::One, force, is_derangement_b)?,
        (Family::Qb, CountMethod::Brute) => {
            brute_count(n, Ground::One, force, is_relative_derangement_b)?
        }
        (Family::D, CountMethod::Brute) => brute_count(n, Ground::One, force, |p| {
            p.is_unbarred() && is_derangement_b(p)
        })?,
        (Family::Q, CountMethod::Brute) => brute_count(n, Ground::One, force, |p| {
            p.is_unbarred() && is_relative_derangement_b(p)
        })?,
        (Family::Db | Family::D, CountMethod::Identity) => {
            return usage("--method identity applies to the relative families qb and q")
        }
    };
    Ok(count)
}

fn cmd_count(
    out: &mut impl Write,
    family: Family,
    n: usize,
    method: CountMethod,
    force: bool,
    json: bool,
) -> CliResult<ExitCode> {
    let c = count(family, n, method, force)?;
    if json {
        let v = json!({
            "family": family_name(family),
            "n": n,
            "method": method_name(method),
            "count": c,
        });
        writeln!(out, "{v}")?;
    } else {
        writeln!(out, "{c}")?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_enumerate(
    out: &mut impl Write,
    family: EnumFamily,
    n: usize,
    limit: Option<usize>,
    force: bool,
    json: bool,
) -> CliResult<ExitCode> {
    check_size(n, force)?;
    let (ground, keep): (Ground, fn(&SignedPermutation) -> bool) = match family {
        EnumFamily::All => (Ground::One, |_| true),
        EnumFamily::Db => (Ground::One, is_derangement_b),
        EnumFamily::Qb => (Ground::One, is_relative_derangement_b),
        EnumFamily::Reps => (Ground::Zero, is_valid_representation),
    };
    let limit = limit.unwrap_or(usize::MAX);
    let mut cursor = EnumerationCursor::new(n, ground);
    let mut emitted = 0;
    if json {
        write!(out, "[")?;
    }
    while emitted < limit {
        let Some(p) = cursor.next_ref() else { break };
        if !keep(p) {
            continue;
        }
        if json {
            if emitted > 0 {
                write!(out, ",")?;
            }
            write!(out, "{}", p.to_json())?;
        } else {
            writeln!(out, "{p}")?;
        }
        emitted += 1;
    }
    if json {
        writeln!(out, "]")?;
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_perm(input: &str, ground: Ground) -> CliResult<SignedPermutation> {
    let trimmed = input.trim();
    let p = if trimmed.starts_with('[') {
        let p = SignedPermutation::from_json(trimmed)?;
        if p.ground() != ground && !p.is_empty() {
            return usage(format!(
                "expected a permutation with minimum value {}",
                ground.min()
            ));
        }
        SignedPermutation::new(p.into_entries(), ground)?
    } else {
        SignedPermutation::parse_on(trimmed, ground)?
    };
    Ok(p)
}

fn parse_skew(input: &str) -> CliResult<SkewDerangement> {
    if input.contains("->") {
        Ok(SkewDerangement::parse_pairs(input)?)
    } else {
        Ok(skew_from_perm(&parse_perm(input, Ground::Zero)?)?)
    }
}

fn require_tag(tag: Option<Tag>) -> CliResult<Tag> {
    match tag {
        Some(t) => Ok(t),
        None => usage("this direction needs --tag small|large"),
    }
}

fn write_perm(out: &mut impl Write, p: &SignedPermutation, json: bool) -> CliResult<()> {
    if json {
        writeln!(out, "{}", json!({ "perm": p }))?;
    } else {
        writeln!(out, "{p}")?;
    }
    Ok(())
}

fn write_tagged(out: &mut impl Write, d: &TaggedDerangement, json: bool) -> CliResult<()> {
    if json {
        writeln!(out, "{}", json!({ "tag": d.tag, "perm": d.perm }))?;
    } else {
        writeln!(out, "tag={}", d.tag)?;
        writeln!(out, "{}", d.perm)?;
    }
    Ok(())
}

fn write_rep(out: &mut impl Write, r: &Representation, json: bool) -> CliResult<()> {
    if json {
        writeln!(out, "{}", json!({ "representation": r.perm() }))?;
    } else {
        writeln!(out, "{r}")?;
    }
    Ok(())
}

fn cmd_map(
    out: &mut impl Write,
    direction: Direction,
    input: &str,
    tag: Option<Tag>,
    json: bool,
) -> CliResult<ExitCode> {
    match direction {
        Direction::Rel2skew => {
            let f = rel_to_skew(&parse_perm(input, Ground::One)?)?;
            if json {
                let v = json!({
                    "pairs": f.to_json_value(),
                    "representation": representation_of(&f).perm(),
                });
                writeln!(out, "{v}")?;
            } else {
                for line in f.to_lines() {
                    writeln!(out, "{line}")?;
                }
            }
        }
        Direction::Skew2rel => {
            let p = skew_to_rel(&parse_skew(input)?)?;
            write_perm(out, &p, json)?;
        }
        Direction::Rel2der => {
            let d = relative_to_tagged_derangement(&parse_perm(input, Ground::One)?)?;
            write_tagged(out, &d, json)?;
        }
        Direction::Der2rel => {
            let d = TaggedDerangement::new(require_tag(tag)?, parse_perm(input, Ground::One)?)?;
            write_perm(out, &tagged_derangement_to_relative(&d)?, json)?;
        }
        Direction::Rel2rep => {
            let r = representation_of(&rel_to_skew(&parse_perm(input, Ground::One)?)?);
            write_rep(out, &r, json)?;
        }
        Direction::Rep2der => {
            let r = Representation::new(parse_perm(input, Ground::Zero)?)?;
            let d = if r.ends_in_zero() {
                TaggedDerangement {
                    tag: Tag::Small,
                    perm: rep_small_to_derangement(&r)?,
                }
            } else {
                TaggedDerangement {
                    tag: Tag::Large,
                    perm: rep_large_to_derangement(&r)?,
                }
            };
            write_tagged(out, &d, json)?;
        }
        Direction::Der2rep => {
            let t = parse_perm(input, Ground::One)?;
            let r = match require_tag(tag)? {
                Tag::Small => derangement_to_rep_small(&t)?,
                Tag::Large => derangement_to_rep_large(&t)?,
            };
            write_rep(out, &r, json)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    out: &mut impl Write,
    identity: Identity,
    from: usize,
    to: usize,
    force: bool,
    json: bool,
) -> CliResult<ExitCode> {
    if from > to {
        return usage(format!("empty range {from}..={to}"));
    }
    let report = verify(identity, from, to, force)?;
    if json {
        writeln!(out, "{}", report.to_json())?;
    } else {
        writeln!(out, "{report}")?;
    }
    Ok(if report.overall {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_table(out: &mut impl Write, from: usize, to: usize, json: bool) -> CliResult<ExitCode> {
    if from > to {
        return usage(format!("empty range {from}..={to}"));
    }
    let relative = |n: usize, f: fn(usize) -> Count| (n >= 1).then(|| f(n));
    let rows: Vec<_> = (from..=to)
        .map(|n| {
            (
                n,
                count_derangements_b(n),
                relative(n, count_relative_derangements_b),
                count_derangements_classical(n),
                relative(n, count_relative_classical),
            )
        })
        .collect();
    if json {
        let rows: Vec<_> = rows
            .iter()
            .map(|(n, db, qb, d, q)| json!({ "n": n, "db": db, "qb": qb, "d": d, "q": q }))
            .collect();
        writeln!(out, "{}", serde_json::Value::Array(rows))?;
    } else {
        let dash = |c: &Option<Count>| c.as_ref().map_or("-".to_string(), Count::to_string);
        writeln!(out, "n\tD_n^B\tQ_n^B\tD_n\tQ_n")?;
        for (n, db, qb, d, q) in &rows {
            writeln!(out, "{n}\t{db}\t{}\t{d}\t{}", dash(qb), dash(q))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
