//! Reading two-group data: inline summaries, summary files and raw CSV.
//!
//! In every form the contrast is `θ = second group - first group`, with
//! groups ordered as they first appear.

use std::fs::File;
use std::path::Path;

use fivedec::statistic::{two_sample_t, two_sample_t_raw};
use fivedec::{GroupSummary, TestResult};

use crate::CliError;

#[derive(Debug, Clone)]
pub struct Group {
    pub label: String,
    pub summary: GroupSummary,
}

#[derive(Debug, Clone)]
pub struct TwoGroups {
    pub first: Group,
    pub second: Group,
    pub result: TestResult,
}

fn parse_error(path: &Path, line: u64, msg: impl Into<String>) -> CliError {
    CliError::Parse {
        source_name: path.display().to_string(),
        line,
        msg: msg.into(),
    }
}

fn summary_from_parts(n: u64, mean: f64, sd: f64) -> Result<GroupSummary, CliError> {
    if n < 2 {
        return Err(CliError::Degenerate(format!("group of size {n} has no variance estimate")));
    }
    if sd == 0.0 {
        return Err(CliError::Degenerate("summary standard deviation is zero".into()));
    }
    Ok(GroupSummary::new(n, mean, sd)?)
}

fn from_summaries(first: Group, second: Group, theta0: f64) -> Result<TwoGroups, CliError> {
    let result = two_sample_t(&second.summary, &first.summary, theta0)?;
    Ok(TwoGroups { first, second, result })
}

fn parse_n(s: &str) -> Option<u64> {
    s.trim().parse().ok()
}

fn parse_finite(s: &str) -> Option<f64> {
    s.trim().parse::<f64>().ok().filter(|x| x.is_finite())
}

/// `nA,meanA,sdA,nB,meanB,sdB`, groups labelled `A` and `B`.
pub fn inline_summary(spec: &str, theta0: f64) -> Result<TwoGroups, CliError> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 6 {
        return Err(CliError::Usage(format!(
            "--summary expects nA,meanA,sdA,nB,meanB,sdB, got {} fields",
            parts.len()
        )));
    }
    let group = |label: &str, p: &[&str]| -> Result<Group, CliError> {
        let bad = |what: &str, v: &str| CliError::Usage(format!("--summary: bad {what} for group {label}: {v:?}"));
        let n = parse_n(p[0]).ok_or_else(|| bad("n", p[0]))?;
        let mean = parse_finite(p[1]).ok_or_else(|| bad("mean", p[1]))?;
        let sd = parse_finite(p[2]).filter(|s| *s >= 0.0).ok_or_else(|| bad("sd", p[2]))?;
        Ok(Group {
            label: label.into(),
            summary: summary_from_parts(n, mean, sd)?,
        })
    };
    from_summaries(group("A", &parts[..3])?, group("B", &parts[3..])?, theta0)
}

fn reader(path: &Path) -> Result<csv::Reader<File>, CliError> {
    let file = File::open(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(file))
}

fn check_header(path: &Path, rdr: &mut csv::Reader<File>, want: &[&str]) -> Result<(), CliError> {
    let header = rdr.headers().map_err(|e| csv_error(path, e))?.clone();
    let line = header.position().map_or(1, |p| p.line());
    if header.iter().ne(want.iter().copied()) {
        return Err(parse_error(
            path,
            line,
            format!("expected header {:?}, found {:?}", want.join(","), header.iter().collect::<Vec<_>>().join(",")),
        ));
    }
    Ok(())
}

fn csv_error(path: &Path, e: csv::Error) -> CliError {
    let line = e.position().map_or(0, |p| p.line());
    match e.kind() {
        csv::ErrorKind::Io(io) => CliError::Io(format!("{}: {io}", path.display())),
        csv::ErrorKind::UnequalLengths { expected_len, len, .. } => {
            parse_error(path, line, format!("expected {expected_len} fields, found {len}"))
        }
        _ => parse_error(path, line, e.to_string()),
    }
}

/// A file with header `group,n,mean,sd` and exactly two rows.
pub fn summary_file(path: &Path, theta0: f64) -> Result<TwoGroups, CliError> {
    let mut rdr = reader(path)?;
    check_header(path, &mut rdr, &["group", "n", "mean", "sd"])?;
    let mut groups = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| csv_error(path, e))?;
        let line = rec.position().map_or(0, |p| p.line());
        if groups.len() == 2 {
            return Err(parse_error(path, line, "more than two groups"));
        }
        let n = parse_n(&rec[1]).ok_or_else(|| parse_error(path, line, format!("bad n {:?}", &rec[1])))?;
        let mean = parse_finite(&rec[2]).ok_or_else(|| parse_error(path, line, format!("bad mean {:?}", &rec[2])))?;
        let sd = parse_finite(&rec[3])
            .filter(|s| *s >= 0.0)
            .ok_or_else(|| parse_error(path, line, format!("bad sd {:?}", &rec[3])))?;
        groups.push(Group {
            label: rec[0].to_string(),
            summary: summary_from_parts(n, mean, sd)?,
        });
    }
    if groups.len() != 2 {
        return Err(CliError::Input(format!("{}: expected two groups, found {}", path.display(), groups.len())));
    }
    let second = groups.pop().unwrap();
    let first = groups.pop().unwrap();
    from_summaries(first, second, theta0)
}

/// Raw observations with header `group,value` and exactly two labels.
pub fn raw_csv(path: &Path, theta0: f64) -> Result<TwoGroups, CliError> {
    let mut rdr = reader(path)?;
    check_header(path, &mut rdr, &["group", "value"])?;
    let mut groups: Vec<(String, Vec<f64>)> = Vec::with_capacity(2);
    for rec in rdr.records() {
        let rec = rec.map_err(|e| csv_error(path, e))?;
        let line = rec.position().map_or(0, |p| p.line());
        let value = parse_finite(&rec[1]).ok_or_else(|| parse_error(path, line, format!("bad value {:?}", &rec[1])))?;
        match groups.iter().position(|(label, _)| label == &rec[0]) {
            Some(i) => groups[i].1.push(value),
            None if groups.len() == 2 => {
                return Err(parse_error(path, line, format!("third group label {:?}", &rec[0])));
            }
            None => groups.push((rec[0].to_string(), vec![value])),
        }
    }
    if groups.len() != 2 {
        return Err(CliError::Input(format!(
            "{}: expected two group labels, found {}",
            path.display(),
            groups.len()
        )));
    }
    for (label, xs) in &groups {
        if xs.len() < 2 {
            return Err(CliError::Degenerate(format!("group {label:?} has {} observation(s)", xs.len())));
        }
    }
    let (second_label, b) = groups.pop().unwrap();
    let (first_label, a) = groups.pop().unwrap();
    let result = two_sample_t_raw(&b, &a, theta0)?;
    Ok(TwoGroups {
        first: Group {
            label: first_label,
            summary: GroupSummary::from_samples(&a)?,
        },
        second: Group {
            label: second_label,
            summary: GroupSummary::from_samples(&b)?,
        },
        result,
    })
}
