use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use f2orbit_core::census::{conjecture_report, ratio_decimal, records_jsonl};
use f2orbit_core::{
    are_conjugate, build_graph, canonical_mod_j, cyclic_reduce, enumerate_classes, level_profile, minimize, CensusRow,
    CensusTables, CyclicWord, Error, GraphType, OneLetterAut, Word,
};
use serde_json::json;

use crate::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Violation(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Violation(_) => 3,
            _ => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::Violation(_) | Error::Unrecognized { .. } => CliError::Violation(e),
            _ => CliError::Input(e),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub struct RunConfig {
    pub lengths: RangeInclusive<usize>,
    pub weight_filter: Option<usize>,
    pub workers: usize,
    pub output_dir: Option<PathBuf>,
    pub format: Format,
    pub check_conjectures: bool,
}

fn unsupported(command: &str, format: Format) -> CliError {
    CliError::Usage(format!("{command} does not support --format {format}"))
}

fn show(w: &CyclicWord) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        w.to_string()
    }
}

fn joined<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|s| s.to_string()).collect();
    if parts.is_empty() {
        "none".to_string()
    } else {
        parts.join(" ")
    }
}

fn parse_word(s: &str) -> Result<Word> {
    Ok(s.parse::<Word>()?)
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn cmd_minimize(word: &str, format: Format) -> Result<()> {
    let input = parse_word(word)?;
    let m = minimize(&cyclic_reduce(&input).0);
    let canonical = canonical_mod_j(&m.word);
    match format {
        Format::Text => {
            println!("canonical: {}", show(canonical.word()));
            println!("length: {}", canonical.word().len());
            println!("trace: {}", joined(&m.trace));
        }
        Format::Json => {
            let doc = json!({
                "input": input.to_string(),
                "minimal": m.word.to_string(),
                "canonical": canonical.word().to_string(),
                "length": canonical.word().len(),
                "trace": m.trace.iter().map(|phi| phi.to_string()).collect::<Vec<_>>(),
            });
            println!("{doc}");
        }
        _ => return Err(unsupported("minimize", format)),
    }
    Ok(())
}

pub fn cmd_equiv(first: &str, second: &str, format: Format) -> Result<bool> {
    let (w, v) = (parse_word(first)?, parse_word(second)?);
    let result = are_conjugate(&w, &v);
    let steps: Vec<String> = result.witness.iter().flatten().map(|s| s.to_string()).collect();
    match format {
        Format::Text => {
            if result.conjugate {
                println!("conjugate");
                println!("witness: {}", joined(&steps));
            } else {
                println!("not conjugate");
            }
        }
        Format::Json => {
            let witness = result.conjugate.then_some(steps);
            println!("{}", json!({ "conjugate": result.conjugate, "witness": witness }));
        }
        _ => return Err(unsupported("equiv", format)),
    }
    Ok(result.conjugate)
}

pub fn cmd_profile(word: &str, format: Format) -> Result<()> {
    let w = cyclic_reduce(&parse_word(word)?).0;
    let p = level_profile(&w)?;
    match format {
        Format::Text => {
            println!("word: {}", show(&w));
            println!("length: {}", p.length);
            println!("root: {}", p.is_root);
            println!("alternating: {}", p.is_alternating);
            let level = OneLetterAut::PRINCIPAL
                .iter()
                .zip(p.level_flags)
                .map(|(phi, f)| format!("{phi}={}", if f { "level" } else { "-" }));
            println!("principal: {}", joined(level));
            println!("outdegree: {}", p.outdegree());
        }
        Format::Json => {
            let doc = json!({
                "word": w.to_string(),
                "length": p.length,
                "minimal": p.is_minimal,
                "root": p.is_root,
                "alternating": p.is_alternating,
                "level": p.level_flags,
            });
            println!("{doc}");
        }
        _ => return Err(unsupported("profile", format)),
    }
    Ok(())
}

pub fn cmd_graph(word: &str, format: Format, out: Option<&Path>) -> Result<()> {
    let m = minimize(&cyclic_reduce(&parse_word(word)?).0);
    let g = build_graph(&m.word)?;
    let name = g.vertices()[0].to_string();
    let (text, ext) = match format {
        Format::Dot => (g.to_dot(if name.is_empty() { "ε" } else { &name }), "dot"),
        Format::Json => (g.to_json() + "\n", "json"),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "type: {}", g.graph_type()).unwrap();
            writeln!(s, "length: {}", g.length()).unwrap();
            writeln!(s, "size: {}", g.size()).unwrap();
            writeln!(s, "root: {}", g.is_root()).unwrap();
            writeln!(s, "alternating: {}", g.is_alternating()).unwrap();
            for (i, v) in g.vertices().iter().enumerate() {
                writeln!(s, "vertex {i}: {}", show(v)).unwrap();
            }
            for e in g.edges() {
                writeln!(
                    s,
                    "edge {} -> {} by {}",
                    e.from,
                    e.to,
                    OneLetterAut::PRINCIPAL[e.principal as usize - 1]
                )
                .unwrap();
            }
            (s, "txt")
        }
        Format::Csv => return Err(unsupported("graph", format)),
    };
    match out {
        Some(dir) => {
            create_dir(dir)?;
            let stem = if name.is_empty() { "empty" } else { &name };
            let path = dir.join(format!("graph_{stem}.{ext}"));
            write_file(&path, &text)?;
            println!("{}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })
}

fn summary_header() -> String {
    let mut s = format!("{:>3} {:>9}", "n", "classes");
    for t in GraphType::ALL {
        write!(s, " {:>8}", t.to_string()).unwrap();
    }
    s + "  mean size"
}

fn summary_line(row: &CensusRow, shown: usize) -> String {
    let mut s = format!("{:>3} {:>9}", row.length, shown);
    for c in row.type_counts {
        write!(s, " {c:>8}").unwrap();
    }
    write!(s, "  {}", ratio_decimal(row.expected_size(), 4)).unwrap();
    s
}

pub fn cmd_enumerate(config: &RunConfig) -> Result<()> {
    if config.format == Format::Dot {
        return Err(unsupported("enumerate", config.format));
    }
    if let Some(dir) = &config.output_dir {
        create_dir(dir)?;
    }
    let stdout = io::stdout();
    let mut stdout = stdout.lock();
    let mut emit = |line: &str| {
        writeln!(stdout, "{line}").map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })
    };
    if config.format == Format::Text {
        emit(&summary_header())?;
    }

    let mut tables = CensusTables::default();
    for n in config.lengths.clone() {
        let records = enumerate_classes(n, config.workers)?;
        let row = CensusRow::from_records(n, &records);
        let kept: Vec<_> = records
            .into_iter()
            .filter(|r| config.weight_filter.map_or(true, |w| r.weight == w))
            .collect();
        if let Some(dir) = &config.output_dir {
            write_file(&dir.join(format!("classes_{n}.jsonl")), &records_jsonl(&kept))?;
        }
        match config.format {
            Format::Text => emit(&summary_line(&row, kept.len()))?,
            Format::Json => {
                let mut counts = serde_json::Map::new();
                for t in GraphType::ALL {
                    counts.insert(t.to_string(), row.type_counts[t.index()].into());
                }
                let doc = json!({
                    "length": n,
                    "classes": kept.len(),
                    "types": counts,
                    "vertices": row.total_vertices,
                    "mean_size": ratio_decimal(row.expected_size(), 4),
                });
                emit(&doc.to_string())?;
            }
            _ => {}
        }
        tables.rows.push(row);
    }

    if config.format == Format::Csv {
        emit(tables.type_counts_csv().trim_end())?;
    }
    if let Some(dir) = &config.output_dir {
        write_file(&dir.join("type_counts.csv"), &tables.type_counts_csv())?;
        for (ty, file) in [
            (GraphType::P1, "p1_sizes.csv"),
            (GraphType::P2, "p2_sizes.csv"),
            (GraphType::P3, "p3_sizes.csv"),
        ] {
            write_file(&dir.join(file), &tables.path_sizes_csv(ty))?;
        }
    }
    if config.check_conjectures {
        let report = conjecture_report(&tables);
        let json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
        match config.format {
            Format::Json => emit(&serde_json::to_string(&report).expect("report serializes"))?,
            _ => emit(report.to_text().trim_end())?,
        }
        if let Some(dir) = &config.output_dir {
            write_file(&dir.join("conjectures.txt"), &report.to_text())?;
            write_file(&dir.join("conjectures.json"), &json)?;
        }
    }
    Ok(())
}
