use std::io::Write;

use num_bigint::BigInt;
use rascal_core::bijection::verify::{verify_by_name, BijectionParams, BijectionReport};
use rascal_core::enumerate::{ascent_sequences, avoiders, restricted_subsets, WordFamilySpec};
use rascal_core::identity::{self, effective_passed, Identity, IdentityReport, LhsMode, VerifyOptions};
use rascal_core::number::{e_defect, triangle_rows};
use rascal_core::scalar::with_fallback;
use rascal_core::{Error, Limits, RascalQuery};
use serde::Serialize;

use crate::config::GridConfig;
use crate::{Cli, CliError, Command, EtableFormat, Family, ReportFormat, TriangleFormat, EXIT_FAILURE, EXIT_OK};

const SHOWN_FAILURES: usize = 10;

type Out<'a> = &'a mut dyn Write;

pub(crate) fn dispatch(cli: &Cli, limits: &Limits, out: Out) -> Result<i32, CliError> {
    match &cli.command {
        Command::Value { n, k, j, method } => {
            let v = RascalQuery::new(*n, *k)
                .with_j(*j)
                .with_method(*method)
                .evaluate_exact(limits)?;
            writeln!(out, "{v}")?;
            Ok(EXIT_OK)
        }
        Command::Triangle {
            n_max,
            j,
            format,
            offset,
        } => triangle(*n_max, *j, *format, *offset, limits, out),
        Command::Enumerate { family } => enumerate(family, limits, out),
        Command::Verify {
            name,
            n_max,
            oracle,
            formula,
            format,
            timing,
        } => {
            let modes = match (oracle, formula) {
                (true, _) => vec![LhsMode::Oracle],
                (_, true) => vec![LhsMode::Formula],
                _ => vec![LhsMode::Oracle, LhsMode::Formula],
            };
            verify(
                name,
                *n_max,
                &modes,
                *format,
                *timing,
                cli.caps.max_word_len.is_some(),
                limits,
                out,
            )
        }
        Command::Bijection {
            name,
            n_max,
            n,
            k,
            j_max,
            j,
            r_max,
            format,
        } => {
            let params = BijectionParams {
                n_max: *n_max,
                n: *n,
                k: *k,
                j_max: *j_max,
                j: *j,
                r_max: *r_max,
            };
            let report = verify_by_name(name, &params, limits)?;
            match format {
                ReportFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
                ReportFormat::Table => bijection_table(&report, out)?,
            }
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::Etable { n_max, j_max, format } => etable(*n_max, *j_max, *format, limits, out),
        Command::Identities => {
            let rows: Vec<[String; 4]> = identity::list_identities()
                .iter()
                .map(|id| {
                    let params: Vec<&str> = id.params().iter().map(|p| p.name).collect();
                    [
                        id.name().to_string(),
                        params.join(","),
                        id.domain().to_string(),
                        id.anchor().to_string(),
                    ]
                })
                .collect();
            write_aligned(out, &rows, "")?;
            Ok(EXIT_OK)
        }
    }
}

fn cells(n_max: usize) -> u64 {
    let n = n_max as u64 + 1;
    n * (n + 1) / 2
}

fn triangle(
    n_max: usize,
    j: u32,
    format: TriangleFormat,
    offset: i64,
    limits: &Limits,
    out: Out,
) -> Result<i32, CliError> {
    limits.check_cells(cells(n_max))?;
    let rows: Vec<Vec<String>> = match triangle_rows::<i128>(n_max, j, limits) {
        Ok(rows) => stringify(rows),
        Err(Error::Overflow(_)) => stringify(triangle_rows::<BigInt>(n_max, j, limits)?),
        Err(e) => return Err(e.into()),
    };
    match format {
        TriangleFormat::Table => {
            for row in &rows {
                writeln!(out, "{}", row.join(" "))?;
            }
        }
        TriangleFormat::Csv => {
            writeln!(out, "n,k,value")?;
            for (n, row) in rows.iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    writeln!(out, "{n},{k},{v}")?;
                }
            }
        }
        TriangleFormat::Bfile => {
            for (i, v) in rows.iter().flatten().enumerate() {
                writeln!(out, "{} {v}", offset + i as i64)?;
            }
        }
        TriangleFormat::Json => {
            #[derive(Serialize)]
            struct TriangleJson<'a> {
                j: u32,
                rows: &'a [Vec<String>],
            }
            writeln!(out, "{}", serde_json::to_string(&TriangleJson { j, rows: &rows })?)?;
        }
    }
    Ok(EXIT_OK)
}

fn stringify<T: ToString>(rows: Vec<Vec<T>>) -> Vec<Vec<String>> {
    rows.into_iter().map(|r| r.iter().map(T::to_string).collect()).collect()
}

/// Writes items one per line, or only their number; fails once more than
/// `max_items` have been seen.
fn emit<I, T>(items: I, count_only: bool, limits: &Limits, out: Out) -> Result<i32, CliError>
where
    I: Iterator<Item = T>,
    T: std::fmt::Display,
{
    let mut count = 0u64;
    for item in items {
        count += 1;
        if count > limits.max_items {
            return Err(Error::ResourceLimit {
                what: "listed items",
                requested: count,
                cap: limits.max_items,
            }
            .into());
        }
        if !count_only {
            writeln!(out, "{item}")?;
        }
    }
    if count_only {
        writeln!(out, "{count}")?;
    }
    Ok(EXIT_OK)
}

fn enumerate(family: &Family, limits: &Limits, out: Out) -> Result<i32, CliError> {
    match family {
        Family::Words { n, k, j, listing } => {
            limits.check_word_len(*n)?;
            emit(
                WordFamilySpec::new(*n, *k, *j).generate(),
                listing.count_only,
                limits,
                out,
            )
        }
        Family::Ascseq { n, listing } => emit(ascent_sequences(*n, limits)?, listing.count_only, limits, out),
        Family::Avoiders {
            n,
            patterns,
            k,
            listing,
        } => emit(avoiders(*n, patterns, *k, limits)?, listing.count_only, limits, out),
        Family::Subsets { n, k, j, listing } => {
            limits.check_word_len(*n as usize)?;
            emit(restricted_subsets(*n, *k, *j)?, listing.count_only, limits, out)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn verify(
    name: &str,
    n_max: Option<i64>,
    modes: &[LhsMode],
    format: ReportFormat,
    timing: bool,
    word_len_pinned: bool,
    limits: &Limits,
    out: Out,
) -> Result<i32, CliError> {
    let config = GridConfig::load_default()?;
    let ids: Vec<&Identity> = if name == "all" {
        identity::list_identities().iter().collect()
    } else {
        vec![identity::identity(name)?]
    };
    let runs = match n_max {
        Some(n) => ids
            .iter()
            .flat_map(|id| {
                modes
                    .iter()
                    .map(move |&m| (id.name().to_string(), m, id.default_grid(n)))
            })
            .collect(),
        None => config
            .parsed_runs()?
            .into_iter()
            .filter(|(name, mode, _)| modes.contains(mode) && ids.iter().any(|id| id.name() == name))
            .collect::<Vec<_>>(),
    };
    let mut limits = *limits;
    if !word_len_pinned {
        limits.max_word_len = limits.max_word_len.max(config.max_word_len);
    }
    let mut reports: Vec<IdentityReport> = Vec::new();
    for (name, mode, grid) in &runs {
        let opts = VerifyOptions { mode: *mode, timing };
        reports.extend(identity::verify_range(name, grid, &opts, &limits)?);
    }
    match format {
        ReportFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?,
        ReportFormat::Table => verify_table(&reports, ids.len(), runs.len(), timing, out)?,
    }
    Ok(if effective_passed(&reports) {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}

fn status(r: &IdentityReport) -> String {
    match (r.passed(), r.effective) {
        (true, _) => "pass".to_string(),
        (false, true) => format!("FAIL ({} cells)", r.failures.len()),
        (false, false) => format!("FAIL ({} cells; the corrected variant decides)", r.failures.len()),
    }
}

fn verify_table(
    reports: &[IdentityReport],
    n_ids: usize,
    n_runs: usize,
    timing: bool,
    out: Out,
) -> std::io::Result<()> {
    let mut header = vec!["identity", "variant", "lhs", "grid", "cells", "status"];
    if timing {
        header.push("ms");
    }
    let mut rows: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
    let mut details: Vec<Vec<String>> = vec![Vec::new()];
    for r in reports {
        let mut row = vec![
            r.identity.clone(),
            r.variant.to_string(),
            r.lhs_mode.to_string(),
            r.grid.clone(),
            r.cells.to_string(),
            status(r),
        ];
        if timing {
            row.push(r.elapsed_ms.map_or_else(String::new, |ms| ms.to_string()));
        }
        rows.push(row);
        let mut lines: Vec<String> = r
            .failures
            .iter()
            .take(SHOWN_FAILURES)
            .map(|f| {
                let params: Vec<String> = f.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                format!("    {}: lhs {} vs rhs {}", params.join(" "), f.lhs, f.rhs)
            })
            .collect();
        if r.failures.len() > SHOWN_FAILURES {
            lines.push(format!("    ... and {} more", r.failures.len() - SHOWN_FAILURES));
        }
        details.push(lines);
    }
    let widths = column_widths(&rows);
    for (row, lines) in rows.iter().zip(&details) {
        writeln!(out, "{}", pad_row(row, &widths))?;
        for line in lines {
            writeln!(out, "{line}")?;
        }
    }
    let failing: Vec<&str> = reports
        .iter()
        .filter(|r| r.effective && !r.passed())
        .map(|r| r.identity.as_str())
        .collect();
    let mut discrepant: Vec<&str> = reports
        .iter()
        .filter(|r| !r.effective && !r.passed())
        .map(|r| r.identity.as_str())
        .collect();
    discrepant.dedup();
    let verdict = if failing.is_empty() {
        "all pass".to_string()
    } else {
        format!("FAILING: {}", dedup_join(failing))
    };
    let plural = |n: usize, one: &str, many: &str| format!("{n} {}", if n == 1 { one } else { many });
    write!(
        out,
        "{}, {}: {verdict}",
        plural(n_ids, "identity", "identities"),
        plural(n_runs, "grid run", "grid runs")
    )?;
    if !discrepant.is_empty() {
        write!(
            out,
            "; printed formula disagrees with the oracle: {}",
            dedup_join(discrepant)
        )?;
    }
    writeln!(out)
}

fn dedup_join(mut v: Vec<&str>) -> String {
    v.dedup();
    v.join(", ")
}

fn bijection_table(report: &BijectionReport, out: Out) -> std::io::Result<()> {
    let verdict = if report.passed() { "pass" } else { "FAIL" };
    writeln!(out, "{}: {verdict}, {} elements checked", report.name, report.checked)?;
    for line in &report.summary {
        writeln!(out, "{line}")?;
    }
    if !report.passed() {
        writeln!(out, "{} failures:", report.failure_count)?;
        for f in &report.failures {
            writeln!(out, "  {f}")?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct Entry {
    n: usize,
    k: usize,
    j: u32,
    e: String,
}

fn etable(n_max: usize, j_max: u32, format: EtableFormat, limits: &Limits, out: Out) -> Result<i32, CliError> {
    limits.check_rows(n_max)?;
    limits.check_cells(cells(n_max).saturating_mul(u64::from(j_max) + 1))?;
    let mut entries = Vec::new();
    for j in 0..=j_max {
        for n in 0..=n_max {
            for k in 0..=n {
                let (ni, ki) = (n as i64, k as i64);
                let e = with_fallback(|| e_defect::<i128>(ni, ki, j), || e_defect::<BigInt>(ni, ki, j))?;
                entries.push((n, k, j, e));
            }
        }
    }
    let negative: Vec<&(usize, usize, u32, BigInt)> = entries.iter().filter(|(.., e)| *e < BigInt::ZERO).collect();
    match format {
        EtableFormat::Csv => {
            writeln!(out, "n,k,j,e")?;
            for (n, k, j, e) in &entries {
                writeln!(out, "{n},{k},{j},{e}")?;
            }
        }
        EtableFormat::Json => {
            #[derive(Serialize)]
            struct Table {
                n_max: usize,
                j_max: u32,
                entries: Vec<Entry>,
                negative: Vec<Entry>,
            }
            let entry = |&(n, k, j, ref e): &(usize, usize, u32, BigInt)| Entry {
                n,
                k,
                j,
                e: e.to_string(),
            };
            let table = Table {
                n_max,
                j_max,
                entries: entries.iter().map(entry).collect(),
                negative: negative.iter().copied().map(entry).collect(),
            };
            writeln!(out, "{}", serde_json::to_string(&table)?)?;
        }
        EtableFormat::Table => {
            for j in 0..=j_max {
                writeln!(out, "j={j}")?;
                for n in 0..=n_max {
                    let row: Vec<String> = entries
                        .iter()
                        .filter(|&&(rn, _, rj, _)| rn == n && rj == j)
                        .map(|(.., e)| e.to_string())
                        .collect();
                    writeln!(out, "{}", row.join(" "))?;
                }
            }
            if negative.is_empty() {
                writeln!(out, "negative entries: none")?;
            } else {
                for (n, k, j, e) in &negative {
                    writeln!(out, "NEGATIVE E({n},{k},{j}) = {e}")?;
                }
            }
        }
    }
    Ok(if negative.is_empty() { EXIT_OK } else { EXIT_FAILURE })
}

fn column_widths<R: AsRef<[String]>>(rows: &[R]) -> Vec<usize> {
    let cols = rows.iter().map(|r| r.as_ref().len()).max().unwrap_or(0);
    (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.as_ref().get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect()
}

fn pad_row(row: &[String], widths: &[usize]) -> String {
    let last = row.len().saturating_sub(1);
    row.iter()
        .enumerate()
        .map(|(i, cell)| {
            if i == last {
                cell.clone()
            } else {
                format!("{cell:<w$}", w = widths[i])
            }
        })
        .collect::<Vec<_>>()
        .join("  ")
}

fn write_aligned(out: Out, rows: &[[String; 4]], prefix: &str) -> std::io::Result<()> {
    let widths = column_widths(rows);
    for row in rows {
        writeln!(out, "{prefix}{}", pad_row(row, &widths))?;
    }
    Ok(())
}
