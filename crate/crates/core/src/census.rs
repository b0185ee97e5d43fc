//! Census tables over a range of lengths and the checks run against them.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::Ratio;
use serde::Serialize;

use crate::enumeration::{enumerate_classes, ClassRecord};
use crate::error::Result;
use crate::graph::GraphType;

/// Counts for a single length.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusRow {
    pub length: usize,
    /// Indexed by [`GraphType::index`].
    pub type_counts: [usize; 10],
    /// Number of classes keyed by (type, size, weight).
    pub classes: BTreeMap<(GraphType, usize, usize), usize>,
    pub total_vertices: usize,
}

impl CensusRow {
    pub fn from_records(length: usize, records: &[ClassRecord]) -> CensusRow {
        let mut row = CensusRow {
            length,
            ..CensusRow::default()
        };
        for r in records {
            row.type_counts[r.graph_type.index()] += 1;
            *row.classes.entry((r.graph_type, r.size, r.weight)).or_default() += 1;
            row.total_vertices += r.size;
        }
        row
    }

    pub fn class_count(&self) -> usize {
        self.type_counts.iter().sum()
    }

    /// Classes matching a predicate on (type, size, weight).
    pub fn count_where(&self, pred: impl Fn(GraphType, usize, usize) -> bool) -> usize {
        self.classes
            .iter()
            .filter(|((t, s, w), _)| pred(*t, *s, *w))
            .map(|(_, c)| c)
            .sum()
    }

    /// Classes of a path type by size; entry `m - 1` counts size `m`.
    pub fn path_sizes(&self, ty: GraphType) -> Vec<usize> {
        let max = self
            .classes
            .keys()
            .filter(|(t, _, _)| *t == ty)
            .map(|(_, s, _)| *s)
            .max()
            .unwrap_or(0);
        (1..=max)
            .map(|m| self.count_where(|t, s, _| t == ty && s == m))
            .collect()
    }

    /// Mean number of vertices per class.
    pub fn expected_size(&self) -> Ratio<u64> {
        Ratio::new(self.total_vertices as u64, self.class_count().max(1) as u64)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusTables {
    pub rows: Vec<CensusRow>,
}

impl CensusTables {
    pub fn row(&self, n: usize) -> Option<&CensusRow> {
        self.rows.iter().find(|r| r.length == n)
    }

    /// Table of class counts per type.
    pub fn type_counts_csv(&self) -> String {
        let mut out = String::from("n");
        for t in GraphType::ALL {
            write!(out, ",{t}").unwrap();
        }
        out.push('\n');
        for row in &self.rows {
            write!(out, "{}", row.length).unwrap();
            for c in row.type_counts {
                write!(out, ",{c}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// One row per length: `n,count_size_1,count_size_2,...`, trailing zeros
    /// omitted.
    pub fn path_sizes_csv(&self, ty: GraphType) -> String {
        let mut out = format!("# n followed by the number of {ty} classes with m = 1, 2, ... vertices\n");
        for row in &self.rows {
            write!(out, "{}", row.length).unwrap();
            for c in row.path_sizes(ty) {
                write!(out, ",{c}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

pub fn census(lengths: impl IntoIterator<Item = usize>, workers: usize) -> Result<CensusTables> {
    let rows = lengths
        .into_iter()
        .map(|n| Ok(CensusRow::from_records(n, &enumerate_classes(n, workers)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CensusTables { rows })
}

pub fn expected_class_size(n: usize, workers: usize) -> Result<Ratio<u64>> {
    Ok(CensusRow::from_records(n, &enumerate_classes(n, workers)?).expected_size())
}

/// Decimal rendering with a fixed number of places, rounded half up.
pub fn ratio_decimal(r: Ratio<u64>, places: u32) -> String {
    let scale = 10u64.pow(places);
    let scaled = (r * scale + Ratio::new(1, 2)).floor().to_integer();
    let (int, frac) = (scaled / scale, scaled % scale);
    if places == 0 {
        int.to_string()
    } else {
        format!("{int}.{frac:0width$}", width = places as usize)
    }
}

/// Eventual constants of the number of classes of size `n - k`.
pub const LIMITING_COUNTS: [usize; 12] = [0, 0, 0, 0, 0, 5, 12, 17, 24, 67, 196, 437];

/// Eventual counts of weight-six P1 classes of size `n - k`, `k = 9..=12`.
pub const WEIGHT_SIX_COUNTS: [(usize, usize); 4] = [(9, 38), (10, 160), (11, 396), (12, 800)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    /// Not enough lengths computed to decide.
    Open,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub item: char,
    pub label: String,
    pub expected: String,
    pub observed: String,
    pub status: Status,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub checks: Vec<Check>,
}

impl ConjectureReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fails)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = match c.status {
                Status::Holds => "ok  ",
                Status::Fails => "MISS",
                Status::Open => "open",
            };
            writeln!(
                out,
                "{status} ({}) {}: expected {}, observed {}",
                c.item, c.label, c.expected, c.observed
            )
            .unwrap();
        }
        out
    }
}

fn check(item: char, label: String, expected: impl ToString, observed: impl ToString) -> Check {
    let (expected, observed) = (expected.to_string(), observed.to_string());
    let status = if expected == observed {
        Status::Holds
    } else {
        Status::Fails
    };
    Check {
        item,
        label,
        expected,
        observed,
        status,
    }
}

/// Counts of size-`(n - k)` classes per length, for the given types.
pub fn diagonal(tables: &CensusTables, k: usize, types: &[GraphType]) -> Vec<(usize, usize)> {
    tables
        .rows
        .iter()
        .filter(|r| r.length > k)
        .map(|r| {
            (
                r.length,
                r.count_where(|t, s, _| types.contains(&t) && s == r.length - k),
            )
        })
        .collect()
}

/// Value and first length of a series whose last three entries agree.
pub fn stabilized(series: &[(usize, usize)]) -> Option<(usize, usize)> {
    let (last_n, value) = *series.last()?;
    if series.len() < 3 || series[series.len() - 3..].iter().any(|&(_, v)| v != value) {
        return None;
    }
    let first = series
        .iter()
        .rev()
        .take_while(|&&(_, v)| v == value)
        .last()
        .map_or(last_n, |&(n, _)| n);
    Some((value, first))
}

fn size_one_nonroot(row: &CensusRow, w: usize) -> usize {
    row.count_where(|t, s, weight| t.is_path() && s == 1 && weight == w)
}

pub fn conjecture_report(tables: &CensusTables) -> ConjectureReport {
    let mut checks = Vec::new();

    for (types, what) in [(&GraphType::ALL[..], "classes"), (&[GraphType::P1][..], "P1 classes")] {
        for (k, &expected) in LIMITING_COUNTS.iter().enumerate() {
            let series = diagonal(tables, k, types);
            let (observed, status) = match stabilized(&series) {
                Some((value, from)) => {
                    let status = if value == expected {
                        Status::Holds
                    } else {
                        Status::Fails
                    };
                    (format!("{value} (from n = {from})"), status)
                }
                None => (
                    format!("not stabilized ({})", series.last().map_or(0, |&(_, v)| v)),
                    Status::Open,
                ),
            };
            checks.push(Check {
                item: 'a',
                label: format!("{what} of size n - {k}"),
                expected: expected.to_string(),
                observed,
                status,
            });
        }
    }

    for row in &tables.rows {
        let n = row.length;
        for k in 4..n {
            if n >= (2 * k).saturating_sub(2).max(9) {
                let expected = if k % 2 == 0 { 6 * k - 24 } else { 6 * k - 25 };
                let observed = row.count_where(|t, s, w| t == GraphType::P1 && s == n - k && w == 4);
                checks.push(check(
                    'b',
                    format!("n = {n}: weight-4 P1 classes of size n - {k}"),
                    expected,
                    observed,
                ));
            }
        }
        if n >= 5 {
            let expected = if n % 2 == 0 { n - 2 } else { n - 3 };
            checks.push(check(
                'c',
                format!("n = {n}: size-1 weight-2 non-root classes"),
                expected,
                size_one_nonroot(row, 2),
            ));
        }
        if n >= 7 {
            checks.push(check(
                'd',
                format!("n = {n}: size-1 weight-3 non-root classes"),
                3 * n - 11,
                size_one_nonroot(row, 3),
            ));
        }
        if n >= 9 {
            let m = n as i64;
            let numerator = match n % 4 {
                0 => 2 * m * m * m - 36 * m * m + 244 * m - 540,
                2 => 2 * m * m * m - 36 * m * m + 244 * m - 546,
                _ => 2 * m * m * m - 36 * m * m + 241 * m - 537,
            };
            checks.push(check(
                'e',
                format!("n = {n}: size-1 weight-4 non-root classes"),
                numerator / 6,
                size_one_nonroot(row, 4),
            ));
        }
        if n >= 11 {
            let m = n as i64;
            let expected = (35 * m * m * m - 645 * m * m + 3988 * m - 8262) / 6;
            checks.push(check(
                'f',
                format!("n = {n}: size-1 weight-5 non-root classes"),
                expected,
                size_one_nonroot(row, 5),
            ));
        }
        for (k, expected) in WEIGHT_SIX_COUNTS {
            if n > k && n + 5 >= 2 * k {
                let observed = row.count_where(|t, s, w| t == GraphType::P1 && s == n - k && w == 6);
                checks.push(check(
                    'g',
                    format!("n = {n}: weight-6 P1 classes of size n - {k}"),
                    expected,
                    observed,
                ));
            }
        }
        let mean = row.expected_size();
        checks.push(Check {
            item: 'h',
            label: format!("n = {n}: expected class size"),
            expected: "in [1, 1.76)".to_string(),
            observed: format!("{mean} ≈ {}", ratio_decimal(mean, 4)),
            status: if mean >= Ratio::from_integer(1) && mean < Ratio::new(176, 100) {
                Status::Holds
            } else {
                Status::Fails
            },
        });
    }
    checks.sort_by_key(|c| c.item);
    ConjectureReport { checks }
}

/// One JSON object per line.
pub fn records_jsonl(records: &[ClassRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    out
}
