use std::fmt::Display;
use std::io::Write;
use std::net::SocketAddr;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::json;

use euclid_core::play::SessionStore;
use euclid_core::verify::{self, Cell};
use euclid_core::{analyze, legal_moves, winning_move, ContinuedFraction, Position, Variant};

use crate::{Cli, Command, Format, VariantSet};

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<ExitCode> {
    let bound = cli.oracle_bound;
    match cli.command {
        Command::Analyze {
            variant,
            pos,
            oracle,
            format,
        } => cmd_analyze(out, variant, pos, oracle.then_some(bound), format)?,
        Command::Verify {
            variant,
            max,
            properties,
            format,
        } => {
            return cmd_verify(out, &variant, max, properties, bound, format);
        }
        Command::Table {
            variant,
            max_a,
            max_b,
            method,
            format,
        } => {
            let table = verify::grundy_table(variant, max_a, max_b, method.into(), bound)?;
            match format {
                Format::Text => write_grid(out, &table.rows)?,
                Format::Csv => table.write_csv(&mut *out)?,
                Format::Json => writeln!(out, "{}", serde_json::to_string(&table)?)?,
            }
        }
        Command::Census { max, format } => {
            let rows = verify::exception_census(max)?;
            match format {
                Format::Csv => verify::write_census_csv(&rows, &mut *out)?,
                Format::Json => {
                    for row in &rows {
                        writeln!(out, "{}", serde_json::to_string(&row.record())?)?;
                    }
                }
                Format::Text => {
                    for row in &rows {
                        let f = row.flags();
                        writeln!(
                            out,
                            "{} {} G_E={} G_G={} G_M={} m_vs_e={} m_vs_g={} g_vs_e={}",
                            row.position,
                            row.cf,
                            row.g_e,
                            row.g_g,
                            row.g_m,
                            f.m_vs_e,
                            f.m_vs_g,
                            f.g_vs_e
                        )?;
                    }
                }
            }
        }
        Command::Cf { pos } => {
            let cf = ContinuedFraction::expand(pos.a, pos.b)?;
            let j = cf
                .index_j()
                .map_or_else(|_| "-".to_owned(), |j| j.to_string());
            writeln!(out, "{cf}  I={} J={j}", cf.index_i())?;
        }
        Command::Hint { variant, pos, any } => cmd_hint(out, variant, pos, any)?,
        Command::Serve {
            host,
            port,
            static_dir,
            max_sessions,
        } => {
            let addr = SocketAddr::new(host, port);
            let store = Arc::new(SessionStore::with_capacity(max_sessions.max(1)));
            let runtime = tokio::runtime::Runtime::new()?;
            writeln!(out, "listening on http://{addr}")?;
            out.flush()?;
            runtime
                .block_on(euclid_service::serve(addr, store, static_dir))
                .with_context(|| format!("serving on {addr}"))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_analyze(
    out: &mut dyn Write,
    variant: Variant,
    p: Position,
    oracle: Option<u64>,
    format: Format,
) -> Result<()> {
    let a = analyze(variant, p, oracle)?;
    if format != Format::Text {
        writeln!(out, "{}", serde_json::to_string(&a)?)?;
        return Ok(());
    }
    let opt = |v: Option<usize>| v.map_or_else(|| "-".to_owned(), |v| v.to_string());
    writeln!(out, "variant   {variant}")?;
    writeln!(out, "position  {p}")?;
    writeln!(out, "terminal  {}", if a.terminal { "yes" } else { "no" })?;
    writeln!(out, "value     {}", a.report.value)?;
    writeln!(out, "method    closed_form")?;
    if let Some(cf) = &a.cf {
        writeln!(out, "cf        {cf}")?;
    }
    if let Some(q) = a.report.quotient {
        writeln!(out, "quotient  {q}")?;
    }
    writeln!(out, "I         {}", opt(a.report.index_i))?;
    writeln!(out, "J         {}", opt(a.report.index_j))?;
    match a.winning_moves.first() {
        _ if a.terminal => writeln!(out, "winning   -")?,
        Some(m) => writeln!(out, "winning   {m}")?,
        None => writeln!(out, "winning   none")?,
    }
    if let Some(check) = a.oracle {
        let status = if check.agrees { "agrees" } else { "DISAGREES" };
        writeln!(out, "oracle    {} ({status})", check.value)?;
    }
    Ok(())
}

fn cmd_hint(out: &mut dyn Write, variant: Variant, p: Position, any: bool) -> Result<()> {
    match winning_move(variant, p)? {
        Some(m) => writeln!(out, "{m}")?,
        None if any => {
            let first = legal_moves(variant, p)?
                .into_iter()
                .next()
                .context("no legal moves")?;
            writeln!(out, "no winning move; first legal move {first}")?;
        }
        None => writeln!(out, "no winning move")?,
    }
    Ok(())
}

struct Outcome {
    record: serde_json::Value,
    lines: Vec<String>,
    passed: bool,
}

fn outcome<T: Serialize + Display>(
    check: &str,
    variant: Option<Variant>,
    max: u64,
    empirical: bool,
    found: &[T],
) -> Result<Outcome> {
    let mut label = check.to_owned();
    if let Some(v) = variant {
        label = format!("{label} {v}");
    }
    label = format!("{label} max={max}");
    if empirical {
        label.push_str(" (empirical)");
    }
    let mut lines = vec![if found.is_empty() {
        format!("{label}: ok")
    } else {
        format!("{label}: {} violations", found.len())
    }];
    lines.extend(found.iter().map(|f| format!("  {f}")));
    let record = json!({
        "check": check,
        "variant": variant,
        "max_entry": max,
        "empirical": empirical,
        "passed": found.is_empty(),
        "violations": serde_json::to_value(found)?,
    });
    Ok(Outcome {
        record,
        lines,
        passed: found.is_empty(),
    })
}

fn cmd_verify(
    out: &mut dyn Write,
    variants: &VariantSet,
    max: u64,
    properties: bool,
    bound: u64,
    format: Format,
) -> Result<ExitCode> {
    if max > bound {
        bail!("--max {max} exceeds the oracle bound {bound}");
    }
    let mut outcomes = Vec::new();
    for &v in &variants.0 {
        let found = verify::verify_range(v, max, bound)?;
        outcomes.push(outcome("formula_vs_oracle", Some(v), max, false, &found)?);
    }
    if variants.is_all() {
        let found = verify::check_relations(max, bound)?;
        outcomes.push(outcome("relations", None, max, false, &found)?);
    }
    if properties {
        let report = verify::check_grundy_properties(max)?;
        for &v in &variants.0 {
            let empirical = v != Variant::MEuclid;
            outcomes.push(outcome(
                "properties",
                Some(v),
                max,
                empirical,
                report.for_variant(v),
            )?);
        }
    }

    for o in &outcomes {
        match format {
            Format::Json => writeln!(out, "{}", o.record)?,
            _ => {
                for line in &o.lines {
                    writeln!(out, "{line}")?;
                }
            }
        }
    }
    Ok(if outcomes.iter().all(|o| o.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn write_grid(out: &mut dyn Write, rows: &[Vec<Cell>]) -> Result<()> {
    let width = rows
        .iter()
        .flatten()
        .map(|c| c.to_string().len())
        .chain([
            r"a\b".len(),
            rows.len().to_string().len(),
            rows.first().map_or(0, Vec::len).to_string().len(),
        ])
        .max()
        .unwrap_or(1);
    write!(out, "{:>width$}", r"a\b")?;
    for b in 1..=rows.first().map_or(0, Vec::len) {
        write!(out, " {b:>width$}")?;
    }
    writeln!(out)?;
    for (i, row) in rows.iter().enumerate() {
        write!(out, "{:>width$}", i + 1)?;
        for c in row {
            write!(out, " {:>width$}", c.to_string())?;
        }
        writeln!(out)?;
    }
    Ok(())
}
