//! Table rendering. CSV columns are fixed and documented per function;
//! numbers are written in shortest round-trip form so reruns are byte-identical.

use std::fmt::Write as _;
use std::str::FromStr;

use mtsp_core::distlaw::SummaryRow;
use serde::Serialize;

use crate::compare::ComparisonRow;
use crate::experiment::SampleRecord;
use crate::law::LawReport;
use crate::BenchError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Markdown,
    Jsonl,
}

impl FromStr for Format {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            "jsonl" => Ok(Format::Jsonl),
            other => Err(BenchError::Config(format!("unknown format {other:?}"))),
        }
    }
}

fn csv_of<S: Serialize>(items: &[S]) -> Result<String, BenchError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for item in items {
        w.serialize(item)?;
    }
    let bytes = w.into_inner().map_err(|e| BenchError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn jsonl_of<S: Serialize>(items: &[S]) -> Result<String, BenchError> {
    let mut out = String::new();
    for item in items {
        out.push_str(&serde_json::to_string(item)?);
        out.push('\n');
    }
    Ok(out)
}

fn markdown_row(out: &mut String, cells: &[String]) {
    out.push_str("| ");
    out.push_str(&cells.join(" | "));
    out.push_str(" |\n");
}

fn markdown_header(out: &mut String, cells: &[String]) {
    markdown_row(out, cells);
    markdown_row(out, &vec!["---".to_string(); cells.len()]);
}

fn distinct<T: PartialEq + Clone>(items: impl Iterator<Item = T>) -> Vec<T> {
    let mut out = Vec::new();
    for x in items {
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// CSV columns: `t,m,algorithm,mean,std,samples`.
/// Markdown: one block per algorithm, node counts down, fleet sizes across, cells `mean ± std`.
pub fn summary_table(rows: &[SummaryRow], format: Format) -> Result<String, BenchError> {
    match format {
        Format::Csv => csv_of(rows),
        Format::Jsonl => jsonl_of(rows),
        Format::Markdown => {
            let mut out = String::new();
            let ms = distinct(rows.iter().map(|r| r.m));
            for algorithm in distinct(rows.iter().map(|r| r.algorithm.clone())) {
                writeln!(out, "**{algorithm}**\n").expect("write to string");
                let mut header = vec!["t".to_string()];
                header.extend(ms.iter().map(|m| format!("m={m}")));
                markdown_header(&mut out, &header);
                for t in distinct(rows.iter().filter(|r| r.algorithm == algorithm).map(|r| r.t)) {
                    let mut cells = vec![t.to_string()];
                    for &m in &ms {
                        let cell = rows
                            .iter()
                            .find(|r| r.algorithm == algorithm && r.t == t && r.m == m)
                            .map_or(String::new(), |r| format!("{:.1} ± {:.1}", r.mean, r.std));
                        cells.push(cell);
                    }
                    markdown_row(&mut out, &cells);
                }
                out.push('\n');
            }
            Ok(out)
        }
    }
}

/// CSV columns: `t,m,algorithm,sample,seed,total`.
pub fn sample_table(samples: &[SampleRecord]) -> Result<String, BenchError> {
    csv_of(samples)
}

fn fmt_opt(v: Option<f64>, markdown: bool) -> String {
    match (v, markdown) {
        (Some(x), true) => format!("{x:.2}"),
        (Some(x), false) => x.to_string(),
        (None, _) => String::new(),
    }
}

/// CSV columns: `instance,n,m`, one distance column per method, then
/// `gap_<a>_<b>` percentages for each ordered method pair. Methods and their
/// order come from the first row.
pub fn comparison_table(rows: &[ComparisonRow], format: Format) -> Result<String, BenchError> {
    if format == Format::Jsonl {
        return jsonl_of(rows);
    }
    let markdown = format == Format::Markdown;
    let Some(first) = rows.first() else { return Ok(String::new()) };
    let mut header: Vec<String> = vec!["instance".into(), "n".into(), "m".into()];
    header.extend(first.cells.iter().map(|c| c.method.to_string()));
    header.extend(first.gaps.iter().map(|g| {
        if markdown {
            format!("dist% {}→{}", g.from, g.to)
        } else {
            format!("gap_{}_{}", g.from, g.to)
        }
    }));
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut cells = vec![r.instance.clone(), r.n.to_string(), r.m.to_string()];
            cells.extend(first.cells.iter().map(|c| fmt_opt(r.distance(c.method), markdown)));
            cells.extend(first.gaps.iter().map(|g| {
                let v = r.gap(g.from, g.to);
                if markdown { v.map_or(String::new(), |x| format!("{x:.1}")) } else { fmt_opt(v, false) }
            }));
            cells
        })
        .collect();
    let mut out = String::new();
    if markdown {
        markdown_header(&mut out, &header);
        for cells in &body {
            markdown_row(&mut out, cells);
        }
    } else {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&header)?;
        for cells in &body {
            w.write_record(cells)?;
        }
        let bytes = w.into_inner().map_err(|e| BenchError::Io(e.into_error()))?;
        out = String::from_utf8(bytes).expect("csv output is utf-8");
    }
    Ok(out)
}

/// CSV columns: `t,m,algorithm,observed,published,published_deviation_pct,refit,refit_deviation_pct`.
/// Markdown adds a per-algorithm summary of the increment and fit first.
pub fn law_table(report: &LawReport, format: Format) -> Result<String, BenchError> {
    match format {
        Format::Csv => csv_of(&report.predictions),
        Format::Jsonl => {
            let mut out = jsonl_of(&report.laws)?;
            out.push_str(&jsonl_of(&report.predictions)?);
            Ok(out)
        }
        Format::Markdown => {
            let mut out = String::new();
            markdown_header(
                &mut out,
                &["algorithm", "Δ", "std Δ", "c", "p", "rss"].map(String::from),
            );
            for law in &report.laws {
                markdown_row(
                    &mut out,
                    &[
                        law.algorithm.clone(),
                        format!("{:.2}", law.delta.delta),
                        format!("{:.2}", law.delta.std),
                        format!("{:.2}", law.fit.coefficient),
                        format!("{:.4}", law.fit.exponent),
                        format!("{:.3e}", law.fit.rss),
                    ],
                );
            }
            out.push('\n');
            markdown_header(
                &mut out,
                &["algorithm", "t", "m", "observed", "published", "dev %", "refit", "dev %"].map(String::from),
            );
            for p in &report.predictions {
                markdown_row(
                    &mut out,
                    &[
                        p.algorithm.clone(),
                        p.t.to_string(),
                        p.m.to_string(),
                        format!("{:.1}", p.observed),
                        format!("{:.1}", p.published),
                        format!("{:.2}", p.published_deviation_pct),
                        format!("{:.1}", p.refit),
                        format!("{:.2}", p.refit_deviation_pct),
                    ],
                );
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::law::{law_pipeline, table3_rows};

    #[test]
    fn summary_csv_round_trips() {
        let rows = table3_rows();
        let csv = summary_table(&rows, Format::Csv).unwrap();
        assert!(csv.starts_with("t,m,algorithm,mean,std,samples\n"));
        let back = crate::law::read_summary_csv(csv.as_bytes()).unwrap();
        assert_eq!(back, rows);
    }

    #[test]
    fn summary_markdown_shape() {
        let md = summary_table(&table3_rows(), Format::Markdown).unwrap();
        assert!(md.contains("| t | m=2 | m=3 | m=4 | m=5 | m=6 | m=7 |"));
        assert!(md.contains("782.3 ± 53.3"));
    }

    #[test]
    fn law_formats() {
        let report = law_pipeline(&table3_rows()).unwrap();
        let csv = law_table(&report, Format::Csv).unwrap();
        assert_eq!(csv.lines().count(), 121);
        let md = law_table(&report, Format::Markdown).unwrap();
        assert!(md.contains("| closest | 90.41 |") || md.contains("| closest | 90.40 |"), "{md}");
        let jsonl = law_table(&report, Format::Jsonl).unwrap();
        assert_eq!(jsonl.lines().count(), 122);
    }

    #[test]
    fn format_names() {
        assert_eq!("md".parse::<Format>().unwrap(), Format::Markdown);
        assert!("xml".parse::<Format>().is_err());
    }
}
