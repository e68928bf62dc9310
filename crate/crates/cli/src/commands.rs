//! One function per CLI verb. Each returns a [`Report`]; failures to read
//! or parse input come back as [`CliError`] and map to exit code 2.

use std::fs;
use std::io::Write;
use std::path::Path;

use designlab::enumerate::{enum_bibd, enum_const_intersect, enum_odd_town, EnumerateError};
use designlab::incidence::are_isomorphic;
use designlab::{Domain, FisherVariant, IncidenceSystem, Verdict};
use thiserror::Error;

use crate::format::{family_line, infer_format, parse_str, read_file, write_design, DesignFormat, ParseError};
use crate::report::{digest, EnumerationSummary, Payload, Report, SystemSize, EXIT_NEGATIVE, EXIT_SUCCESS};
use crate::selftest::{self, Level};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error("{0}")]
    Usage(String),
}

/// A parsed input file with its digest and effective format.
pub struct Input {
    pub system: IncidenceSystem,
    pub format: DesignFormat,
    pub digest: String,
}

pub fn load(path: &Path, format: Option<DesignFormat>) -> Result<Input, CliError> {
    let wrap = |source| CliError::Parse { path: path.display().to_string(), source };
    let contents = read_file(path).map_err(wrap)?;
    let format = format.unwrap_or_else(|| infer_format(path, &contents));
    let system = parse_str(&contents, format).map_err(wrap)?;
    Ok(Input { system, format, digest: digest(contents.as_bytes()) })
}

fn echo(parts: &[&str], paths: &[&Path]) -> Vec<String> {
    parts.iter().map(|s| s.to_string()).chain(paths.iter().map(|p| p.display().to_string())).collect()
}

pub fn cmd_check(path: &Path, format: Option<DesignFormat>) -> Result<Report, CliError> {
    let input = load(path, format)?;
    let class = input.system.classify();
    Ok(Report::new(echo(&["check"], &[path]), vec![input.digest], Payload::Classification(class), EXIT_SUCCESS))
}

pub fn cmd_matrix(path: &Path, format: Option<DesignFormat>) -> Result<Report, CliError> {
    let input = load(path, format)?;
    let n = input.system.incidence_matrix(Domain::Integer);
    let m = n.matrix();
    let matrix = (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    let payload = Payload::Matrix { rows: m.rows(), cols: m.cols(), matrix };
    Ok(Report::new(echo(&["matrix"], &[path]), vec![input.digest], payload, EXIT_SUCCESS))
}

fn construct(
    name: &str,
    path: &Path,
    format: Option<DesignFormat>,
    out: Option<&Path>,
    build: fn(&IncidenceSystem) -> IncidenceSystem,
) -> Result<Report, CliError> {
    let input = load(path, format)?;
    let built = build(&input.system);
    let design = write_design(&built, input.format);
    if let Some(out) = out {
        fs::write(out, &design).map_err(|source| CliError::Write { path: out.display().to_string(), source })?;
    }
    let mut command = echo(&[name], &[path]);
    if let Some(out) = out {
        command.extend(["--out".to_string(), out.display().to_string()]);
    }
    let payload = Payload::Construction {
        construction: name.to_string(),
        v: built.v(),
        b: built.b(),
        format: input.format,
        output: out.map(|p| p.display().to_string()),
        design,
    };
    Ok(Report::new(command, vec![input.digest], payload, EXIT_SUCCESS))
}

/// Writes the dual to `out` (or only into the report) in the input's
/// format.
pub fn cmd_dual(path: &Path, format: Option<DesignFormat>, out: Option<&Path>) -> Result<Report, CliError> {
    construct("dual", path, format, out, IncidenceSystem::dual)
}

pub fn cmd_complement(path: &Path, format: Option<DesignFormat>, out: Option<&Path>) -> Result<Report, CliError> {
    construct("complement", path, format, out, IncidenceSystem::complement)
}

/// Exit 0 iff the report is bound-holds or trivial-case.
pub fn cmd_fisher(path: &Path, format: Option<DesignFormat>, variant: FisherVariant) -> Result<Report, CliError> {
    let input = load(path, format)?;
    let report = variant.check(&input.system);
    let exit = match report.verdict {
        Verdict::BoundHolds | Verdict::TrivialCase => EXIT_SUCCESS,
        Verdict::HypothesesViolated => EXIT_NEGATIVE,
    };
    let command = echo(&["fisher", "--variant", variant.name()], &[path]);
    Ok(Report::new(command, vec![input.digest], Payload::Fisher(report), exit))
}

pub fn cmd_isomorphic(first: &Path, second: &Path, format: Option<DesignFormat>) -> Result<Report, CliError> {
    let a = load(first, format)?;
    let b = load(second, format)?;
    let isomorphic = are_isomorphic(&a.system, &b.system);
    let payload = Payload::Isomorphism {
        isomorphic,
        first: SystemSize { v: a.system.v(), b: a.system.b() },
        second: SystemSize { v: b.system.v(), b: b.system.b() },
    };
    let exit = if isomorphic { EXIT_SUCCESS } else { EXIT_NEGATIVE };
    Ok(Report::new(echo(&["isomorphic"], &[first, second]), vec![a.digest, b.digest], payload, exit))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    OddTown,
    ConstIntersect,
    Bibd,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::OddTown => "odd-town",
            Family::ConstIntersect => "const-intersect",
            Family::Bibd => "bibd",
        }
    }
}

pub struct EnumerateArgs {
    pub family: Family,
    pub v: usize,
    pub k: Option<usize>,
    pub lambda: Option<usize>,
    pub limit: Option<usize>,
}

/// Streams one family per line to `sink`; the report summarizes the run.
pub fn cmd_enumerate(args: &EnumerateArgs, sink: &mut dyn Write) -> Result<Report, CliError> {
    let limit = args.limit.unwrap_or(usize::MAX);
    let families: Box<dyn Iterator<Item = IncidenceSystem>> = match args.family {
        Family::OddTown => Box::new(enum_odd_town(args.v)?),
        Family::ConstIntersect => Box::new(enum_const_intersect(args.v)?),
        Family::Bibd => {
            let (Some(k), Some(lambda)) = (args.k, args.lambda) else {
                return Err(CliError::Usage("bibd enumeration needs --k and --lambda".into()));
            };
            Box::new(enum_bibd(args.v, k, lambda, limit)?.into_iter())
        }
    };
    let (mut emitted, mut largest) = (0, 0);
    for s in families.take(limit) {
        writeln!(sink, "{}", family_line(&s))
            .map_err(|source| CliError::Write { path: "standard output".into(), source })?;
        emitted += 1;
        largest = largest.max(s.b());
    }
    let mut command = vec!["enumerate".to_string(), "--family".into(), args.family.name().into(), "--v".into(), args.v.to_string()];
    for (flag, value) in [("--k", args.k), ("--lambda", args.lambda), ("--limit", args.limit)] {
        if let Some(value) = value {
            command.extend([flag.to_string(), value.to_string()]);
        }
    }
    let summary = EnumerationSummary {
        family: args.family.name().into(),
        v: args.v,
        k: args.k,
        lambda: args.lambda,
        limit: args.limit,
        families_emitted: emitted,
        max_family_size: largest,
    };
    Ok(Report::new(command, Vec::new(), Payload::Enumeration(summary), EXIT_SUCCESS))
}

/// Runs the acceptance criteria; exit 1 if any fails.
pub fn cmd_selftest(level: Level) -> Report {
    let selftest::SelftestRun { criteria, exhaustive } = selftest::run(level);
    let failed = criteria.iter().filter(|c| !c.passed).count();
    let mut command = vec!["selftest".to_string()];
    if level == Level::Full {
        command.push("--full".into());
    }
    let payload = Payload::Selftest { level, passed: criteria.len() - failed, failed, criteria, exhaustive };
    Report::new(command, Vec::new(), payload, if failed == 0 { EXIT_SUCCESS } else { EXIT_NEGATIVE })
}
