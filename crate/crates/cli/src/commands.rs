use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Serialize;
use serde_json::json;

use signotope_core::combinatorics::{Domain, GroundParams};
use signotope_core::components::{classify, p_sequence};
use signotope_core::counting::{
    appendix_counts, conjecture_sides, plus_count_formula, PlusCountTable,
};
use signotope_core::enumeration::{bfs_levels_dense, enumerate_naive, hasse_truncated};
use signotope_core::ferrers::{count_ferrers, enumerate_ferrers};
use signotope_core::{bijection::phi, CoSignotope};

use crate::cache::{self, CountCache};
use crate::Failure;

/// Bytes produced by a command and where they go.
#[derive(Debug)]
pub struct Output {
    text: String,
    path: Option<PathBuf>,
}

impl Output {
    fn new(text: String, path: Option<&Path>) -> Self {
        Self {
            text,
            path: path.map(Path::to_path_buf),
        }
    }

    pub fn bytes(&self) -> &[u8] {
        self.text.as_bytes()
    }

    pub fn emit(&self) -> io::Result<()> {
        match &self.path {
            Some(p) => fs::write(p, &self.text),
            None => {
                let mut out = io::stdout().lock();
                out.write_all(self.text.as_bytes())?;
                out.flush()
            }
        }
    }
}

/// A failed command may still carry output to emit.
pub type CmdResult = Result<Output, (Option<Output>, Failure)>;

fn fail<E: Into<Failure>>(e: E) -> (Option<Output>, Failure) {
    (None, e.into())
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn records(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_record(line_no: usize, line: &str) -> Result<CoSignotope, Failure> {
    CoSignotope::from_json(line).map_err(|e| Failure::Usage(format!("line {line_no}: {e}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Formula,
    Bfs,
    Naive,
    All,
}

#[derive(Debug, Args, Serialize)]
pub struct CountArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub p: usize,
    #[arg(long, value_enum, default_value_t = Method::Formula)]
    pub method: Method,
    /// Ground set size for bfs/naive; defaults to d+p (at least d+1).
    #[arg(long)]
    pub n: Option<usize>,
    /// Neither read nor write the count cache.
    #[arg(long)]
    #[serde(skip)]
    pub no_cache: bool,
    /// Cache directory; overrides the environment.
    #[arg(long, value_name = "DIR")]
    #[serde(skip)]
    pub cache_dir: Option<PathBuf>,
}

fn count_one(method: Method, d: usize, p: usize, n: Option<usize>) -> Result<u64, Failure> {
    if method == Method::Formula {
        return Ok(plus_count_formula(d, p)?);
    }
    let n = default_n(d, p, n);
    if n < d + p {
        return Err(Failure::Refused(format!(
            "n={n} < d+p={}: the level size depends on n below that",
            d + p
        )));
    }
    let params = GroundParams::new(n, d)?;
    let size = match method {
        Method::Bfs => {
            let domain = Domain::new(params)?;
            bfs_levels_dense(&domain, p)[p].len()
        }
        _ => enumerate_naive(params, p)?.level(p).len(),
    };
    Ok(size as u64)
}

fn default_n(d: usize, p: usize, n: Option<usize>) -> usize {
    n.unwrap_or((d + p).max(d + 1))
}

fn cache_key(method: Method, a: &CountArgs) -> String {
    let n = default_n(a.d, a.p, a.n);
    match method {
        Method::Formula => cache::key("formula", a.d, a.p, None),
        Method::Bfs => cache::key("bfs", a.d, a.p, Some(n)),
        _ => cache::key("naive", a.d, a.p, Some(n)),
    }
}

pub fn count(a: &CountArgs) -> CmdResult {
    if a.d == 0 {
        return Err(fail(Failure::Usage("d must be at least 1".into())));
    }
    let mut cache = if a.no_cache {
        None
    } else {
        a.cache_dir
            .clone()
            .or_else(cache::default_dir)
            .map(|dir| CountCache::load(&dir))
    };
    let mut eval = |method: Method| -> Result<u64, Failure> {
        let key = cache_key(method, a);
        if let Some(v) = cache.as_ref().and_then(|c| c.get(&key)) {
            return Ok(v);
        }
        let v = count_one(method, a.d, a.p, a.n)?;
        if let Some(c) = cache.as_mut() {
            c.insert(key, v);
        }
        Ok(v)
    };

    let result = if a.method == Method::All {
        let mut text = String::new();
        let mut values = Vec::new();
        for (name, m) in [
            ("formula", Method::Formula),
            ("bfs", Method::Bfs),
            ("naive", Method::Naive),
        ] {
            match eval(m) {
                Ok(v) => {
                    let _ = writeln!(text, "{name} {v}");
                    values.push(v);
                }
                Err(Failure::Refused(msg)) if m == Method::Naive => {
                    eprintln!("naive skipped: {msg}");
                }
                Err(f) => return Err(fail(f)),
            }
        }
        let out = Output::new(text, None);
        if values.windows(2).all(|w| w[0] == w[1]) {
            Ok(out)
        } else {
            Err((
                Some(out),
                Failure::Internal("count methods disagree".into()),
            ))
        }
    } else {
        eval(a.method)
            .map(|v| Output::new(format!("{v}\n"), None))
            .map_err(fail)
    };
    if let Some(c) = &cache {
        if let Err(e) = c.store() {
            eprintln!("warning: could not write count cache: {e}");
        }
    }
    result
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Args, Serialize)]
pub struct TableArgs {
    #[arg(long)]
    pub max_d: usize,
    #[arg(long)]
    pub max_p: usize,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn table(a: &TableArgs) -> CmdResult {
    let t = PlusCountTable::compute(a.max_d, a.max_p).map_err(fail)?;
    let text = match a.format {
        TableFormat::Csv => t.to_csv(),
        TableFormat::Json => t.to_json(),
    };
    Ok(Output::new(text, a.output.as_deref()))
}

#[derive(Debug, Args, Serialize)]
pub struct MapArgs {
    /// NDJSON co-signotope records, or `-` for stdin.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub to_n: usize,
    /// Level bound; defaults to each record's plus count.
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn map(a: &MapArgs) -> CmdResult {
    let input = read_input(&a.input).map_err(fail)?;
    let mut text = String::new();
    let mut failed = 0usize;
    for (line_no, line) in records(&input) {
        let t = parse_record(line_no, line).map_err(fail)?;
        match phi(&t, a.to_n, a.p.unwrap_or(t.plus_count())) {
            Ok(image) => {
                text.push_str(&image.to_json());
                text.push('\n');
            }
            Err(e) => {
                eprintln!("line {line_no}: {e}");
                failed += 1;
            }
        }
    }
    let out = Output::new(text, a.output.as_deref());
    if failed == 0 {
        Ok(out)
    } else {
        Err((
            Some(out),
            Failure::Partial(format!("{failed} record(s) not mapped")),
        ))
    }
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// NDJSON co-signotope records, or `-` for stdin.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn verify_record(t: &CoSignotope) -> serde_json::Value {
    let params = t.params();
    let plus: Vec<&[usize]> = t.plus_set().iter().map(|b| b.elements()).collect();
    let valid = t.is_valid();
    let mut report = json!({
        "n": params.n(),
        "d": params.d(),
        "plus": plus,
        "valid": valid,
        "plus_count": t.plus_count(),
        "p_sequence": null,
        "classification": null,
        "violations": t.violations(),
    });
    if valid {
        match p_sequence(t) {
            Ok(seq) => {
                let classes: Vec<_> = t
                    .plus_set()
                    .iter()
                    .map(|b| json!({"subset": b, "source": classify(t, b).ok()}))
                    .collect();
                report["p_sequence"] = json!(seq.sizes());
                report["classification"] = json!(classes);
            }
            Err(e) => report["note"] = json!(e.to_string()),
        }
    }
    report
}

pub fn verify(a: &VerifyArgs) -> CmdResult {
    let input = read_input(&a.input).map_err(fail)?;
    let mut text = String::new();
    for (line_no, line) in records(&input) {
        let t = parse_record(line_no, line).map_err(fail)?;
        text.push_str(&verify_record(&t).to_string());
        text.push('\n');
    }
    Ok(Output::new(text, a.output.as_deref()))
}

#[derive(Debug, Args, Serialize)]
pub struct FerrersArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub i: usize,
    #[arg(long)]
    pub p: usize,
    /// Print only the number of diagrams.
    #[arg(long)]
    pub count: bool,
}

pub fn ferrers(a: &FerrersArgs) -> CmdResult {
    let text = if a.count {
        format!("{}\n", count_ferrers(a.d, a.i, a.p).map_err(fail)?)
    } else {
        let mut s = String::new();
        for diagram in enumerate_ferrers(a.d, a.i, a.p).map_err(fail)? {
            s.push_str(&diagram.to_json());
            s.push('\n');
        }
        s
    };
    Ok(Output::new(text, None))
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HasseFormat {
    Dot,
    Json,
}

#[derive(Debug, Args, Serialize)]
pub struct HasseArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub p: usize,
    #[arg(long, value_enum, default_value_t = HasseFormat::Dot)]
    pub format: HasseFormat,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn hasse(a: &HasseArgs) -> CmdResult {
    let params = GroundParams::new(a.n, a.d).map_err(fail)?;
    let h = hasse_truncated(params, a.p).map_err(fail)?;
    let text = match a.format {
        HasseFormat::Dot => h.to_dot(),
        HasseFormat::Json => h.to_json() + "\n",
    };
    Ok(Output::new(text, a.output.as_deref()))
}

#[derive(Debug, Args, Serialize)]
pub struct ConjectureArgs {
    #[arg(long, default_value_t = 7)]
    pub max_d: usize,
}

pub fn conjecture(a: &ConjectureArgs) -> CmdResult {
    if a.max_d < 2 {
        return Err(fail(Failure::Usage("max-d must be at least 2".into())));
    }
    let mut text = String::new();
    let mut failing = Vec::new();
    for d in 2..=a.max_d {
        let (lhs, rhs) = conjecture_sides(d).map_err(fail)?;
        let status = if lhs == rhs { "holds" } else { "fails" };
        if lhs != rhs {
            failing.push(d);
        }
        let _ = writeln!(text, "d={d} P(d,3)={lhs} rhs={rhs} {status}");
    }
    if failing.is_empty() {
        let _ = writeln!(text, "holds for all d in [2,{}]", a.max_d);
    } else {
        let _ = writeln!(text, "fails for d in {failing:?}");
    }
    Ok(Output::new(text, None))
}

#[derive(Debug, Args, Serialize)]
pub struct AppendixArgs {
    #[arg(long)]
    pub n: usize,
}

pub fn appendix(a: &AppendixArgs) -> CmdResult {
    let c = appendix_counts(a.n).map_err(fail)?;
    let mut report = serde_json::to_value(&c).expect("appendix counts serialize");
    report["difference"] = json!(c.rank2_formula as i64 - c.rank1_formula as i64);
    report["consistent"] = json!(c.consistent());
    let out = Output::new(format!("{report}\n"), None);
    if c.consistent() {
        Ok(out)
    } else {
        Err((
            Some(out),
            Failure::Internal("appendix formula and oracle disagree".into()),
        ))
    }
}
