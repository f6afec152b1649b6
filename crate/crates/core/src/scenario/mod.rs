//! Verification scenarios: a line-oriented text format declaring a chart,
//! parameters, structures, fields, an optional connection, distributions and
//! a list of checks, plus the runner producing text and JSON reports.
//!
//! ```text
//! # comment
//! name: gold_diag
//! chart: x, y
//! params: 1, 1
//! seed: 7                      # optional
//!
//! [structure P product]        # product | metallic | tangent | complex
//! row: 1, 0
//! row: 0, -1
//! entry 1 2 = x                # 1-based T^h_i, overrides rows
//!
//! [field X]
//! components: x*y, 1
//!
//! [connection]                 # unspecified coefficients are 0
//! entry 1 1 2 = x              # Gamma^h_{l i}
//!
//! [distribution R]
//! structure: P
//! eigen: r                     # r: sigma-eigenspace, s: (alpha - sigma)-eigenspace
//! generator: 1, -x
//!
//! [checks]
//! metallic_from_product P
//! projector_algebra P
//! ```
//!
//! The check vocabulary is listed in [`CHECKS`].

mod checks;
mod report;

use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::{Connection, Tensor11Field, VectorField};
use crate::numfield::MetallicParams;
use crate::symexpr::{parse_expr, Chart, RatFunc};

pub use checks::{CheckInfo, CHECKS};
pub use report::{CheckReport, ClaimReport, Report, Verdict};

pub const DEFAULT_SEED: u64 = 20_240_917;

/// Bundled scenarios, by name.
pub const BUILTINS: &[(&str, &str)] = &[
    ("gold_diag", include_str!("../../scenarios/gold_diag.scn")),
    ("means_gold", include_str!("../../scenarios/means_gold.scn")),
    ("means_silver", include_str!("../../scenarios/means_silver.scn")),
    ("means_bronze", include_str!("../../scenarios/means_bronze.scn")),
    ("means_subtle", include_str!("../../scenarios/means_subtle.scn")),
    ("means_copper", include_str!("../../scenarios/means_copper.scn")),
    ("means_nickel", include_str!("../../scenarios/means_nickel.scn")),
    ("composite", include_str!("../../scenarios/composite.scn")),
    ("orthogonal_lines", include_str!("../../scenarios/orthogonal_lines.scn")),
    ("non_involutive_plane", include_str!("../../scenarios/non_involutive_plane.scn")),
    ("horizontal_flat", include_str!("../../scenarios/horizontal_flat.scn")),
    ("horizontal_curved", include_str!("../../scenarios/horizontal_curved.scn")),
    ("section_zero", include_str!("../../scenarios/section_zero.scn")),
    ("section_linear", include_str!("../../scenarios/section_linear.scn")),
    ("errata", include_str!("../../scenarios/errata.scn")),
];

pub fn builtin(name: &str) -> Option<&'static str> {
    BUILTINS.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

pub fn load_builtin(name: &str) -> Result<Scenario> {
    let text = builtin(name).ok_or_else(|| Error::Io(format!("no bundled scenario named `{name}`")))?;
    parse_scenario(text, &format!("<builtin {name}>"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureKind {
    Product,
    Metallic,
    Tangent,
    Complex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureDecl {
    pub name: String,
    pub kind: StructureKind,
    pub tensor: Tensor11Field,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Eigen {
    R,
    S,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionDecl {
    pub name: String,
    pub structure: String,
    pub eigen: Eigen,
    pub generators: Vec<VectorField>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckSpec {
    /// The check line as written.
    pub text: String,
    pub name: String,
    pub args: Vec<String>,
    /// Parsed expression argument, for checks that take one.
    pub expr: Option<RatFunc>,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub name: String,
    pub chart: Chart,
    pub params: MetallicParams,
    pub seed: u64,
    pub structures: Vec<StructureDecl>,
    pub fields: Vec<(String, VectorField)>,
    pub connection: Option<Connection>,
    pub distributions: Vec<DistributionDecl>,
    pub checks: Vec<CheckSpec>,
}

impl Scenario {
    pub fn structure(&self, name: &str) -> Option<&StructureDecl> {
        self.structures.iter().find(|s| s.name == name)
    }

    pub fn field(&self, name: &str) -> Option<&VectorField> {
        self.fields.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub fn distribution(&self, name: &str) -> Option<&DistributionDecl> {
        self.distributions.iter().find(|d| d.name == name)
    }

    pub fn run(&self) -> Report {
        run_scenario(self, self.seed)
    }
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_scenario(&text, &path.display().to_string())
}

pub fn run_scenario(s: &Scenario, seed: u64) -> Report {
    report::run(s, seed)
}

enum Section {
    Preamble,
    Structure {
        name: String,
        kind: StructureKind,
        rows: Vec<Vec<RatFunc>>,
        entries: Vec<(usize, usize, RatFunc)>,
        line: usize,
    },
    Field {
        name: String,
        comps: Option<Vec<RatFunc>>,
        line: usize,
    },
    Connection,
    Distribution {
        name: String,
        structure: Option<String>,
        eigen: Option<Eigen>,
        generators: Vec<VectorField>,
        line: usize,
    },
    Checks,
}

struct Parser<'a> {
    file: &'a str,
    name: Option<String>,
    chart: Option<Chart>,
    params: Option<MetallicParams>,
    seed: u64,
    structures: Vec<StructureDecl>,
    fields: Vec<(String, VectorField)>,
    connection: Option<Vec<RatFunc>>,
    distributions: Vec<DistributionDecl>,
    checks: Vec<CheckSpec>,
}

impl<'a> Parser<'a> {
    fn err(&self, line: usize, column: usize, message: impl Into<String>) -> Error {
        Error::Scenario {
            file: self.file.to_string(),
            line,
            column,
            message: message.into(),
        }
    }

    fn chart(&self, line: usize) -> Result<&Chart> {
        self.chart
            .as_ref()
            .ok_or_else(|| self.err(line, 1, "`chart:` must come before any expression"))
    }

    fn params(&self, line: usize) -> Result<&MetallicParams> {
        self.params
            .as_ref()
            .ok_or_else(|| self.err(line, 1, "`params:` must come before any expression"))
    }

    /// Parses `text`, which starts at 0-based byte `offset` of line `line`.
    fn expr(&self, text: &str, line: usize, offset: usize) -> Result<RatFunc> {
        let lead = text.len() - text.trim_start().len();
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(self.err(line, offset + 1, "expected an expression"));
        }
        parse_expr(trimmed, self.chart(line)?, self.params(line)?).map_err(|e| {
            let (column, message) = match &e {
                Error::Syntax { column, message } => (*column, message.clone()),
                Error::UnknownIdentifier { name, column } => {
                    (*column, format!("unknown identifier `{name}`"))
                }
                other => (1, other.to_string()),
            };
            self.err(line, offset + lead + column, message)
        })
    }

    /// Comma-separated expressions.
    fn exprs(&self, text: &str, line: usize, offset: usize) -> Result<Vec<RatFunc>> {
        let mut out = Vec::new();
        let mut start = 0;
        for cell in text.split(',') {
            out.push(self.expr(cell, line, offset + start)?);
            start += cell.len() + 1;
        }
        Ok(out)
    }

    fn sized(&self, cells: Vec<RatFunc>, line: usize, column: usize) -> Result<Vec<RatFunc>> {
        let n = self.chart(line)?.dim();
        if cells.len() != n {
            return Err(self.err(line, column, format!("expected {n} components, found {}", cells.len())));
        }
        Ok(cells)
    }

    /// 1-based indices in `1..=n`.
    fn indices(&self, text: &str, count: usize, line: usize, offset: usize) -> Result<Vec<usize>> {
        let n = self.chart(line)?.dim();
        let words: Vec<&str> = text.split_whitespace().collect();
        if words.len() != count {
            return Err(self.err(line, offset + 1, format!("expected {count} indices")));
        }
        words
            .iter()
            .map(|w| match w.parse::<usize>() {
                Ok(k) if (1..=n).contains(&k) => Ok(k - 1),
                _ => Err(self.err(line, offset + 1, format!("index `{w}` is not in 1..={n}"))),
            })
            .collect()
    }

    fn close(&mut self, section: Section) -> Result<()> {
        match section {
            Section::Preamble | Section::Checks | Section::Connection => Ok(()),
            Section::Structure { name, kind, rows, entries, line } => {
                let chart = self.chart(line)?.clone();
                let n = chart.dim();
                if !rows.is_empty() && rows.len() != n {
                    return Err(self.err(line, 1, format!("structure `{name}` has {} rows, expected {n}", rows.len())));
                }
                let mut comps: Vec<RatFunc> = if rows.is_empty() {
                    vec![RatFunc::zero(); n * n]
                } else {
                    rows.into_iter().flatten().collect()
                };
                for (h, i, f) in entries {
                    comps[h * n + i] = f;
                }
                let tensor = Tensor11Field::new(chart, comps).expect("sized");
                self.structures.push(StructureDecl { name, kind, tensor });
                Ok(())
            }
            Section::Field { name, comps, line } => {
                let comps = comps.ok_or_else(|| self.err(line, 1, format!("field `{name}` has no `components:`")))?;
                let chart = self.chart(line)?.clone();
                self.fields.push((name, VectorField::new(chart, comps).expect("sized")));
                Ok(())
            }
            Section::Distribution { name, structure, eigen, generators, line } => {
                let structure = structure
                    .ok_or_else(|| self.err(line, 1, format!("distribution `{name}` has no `structure:`")))?;
                let eigen = eigen.ok_or_else(|| self.err(line, 1, format!("distribution `{name}` has no `eigen:`")))?;
                self.distributions.push(DistributionDecl { name, structure, eigen, generators });
                Ok(())
            }
        }
    }

    fn header(&mut self, line_no: usize, line: &str) -> Result<Section> {
        let inner = line.trim().trim_start_matches('[').trim_end_matches(']');
        let words: Vec<&str> = inner.split_whitespace().collect();
        let bad = |p: &Self, m: &str| Err(p.err(line_no, 1, m.to_string()));
        match words.as_slice() {
            ["structure", name, kind] => {
                let kind = match *kind {
                    "product" => StructureKind::Product,
                    "metallic" => StructureKind::Metallic,
                    "tangent" => StructureKind::Tangent,
                    "complex" => StructureKind::Complex,
                    other => return bad(self, &format!("unknown structure kind `{other}`")),
                };
                self.fresh(name, line_no)?;
                self.chart(line_no)?;
                Ok(Section::Structure {
                    name: name.to_string(),
                    kind,
                    rows: Vec::new(),
                    entries: Vec::new(),
                    line: line_no,
                })
            }
            ["field", name] => {
                self.fresh(name, line_no)?;
                Ok(Section::Field { name: name.to_string(), comps: None, line: line_no })
            }
            ["connection"] => {
                if self.connection.is_some() {
                    return bad(self, "only one [connection] section is allowed");
                }
                let n = self.chart(line_no)?.dim();
                self.connection = Some(vec![RatFunc::zero(); n * n * n]);
                Ok(Section::Connection)
            }
            ["distribution", name] => {
                self.fresh(name, line_no)?;
                Ok(Section::Distribution {
                    name: name.to_string(),
                    structure: None,
                    eigen: None,
                    generators: Vec::new(),
                    line: line_no,
                })
            }
            ["checks"] => Ok(Section::Checks),
            _ => bad(self, &format!("unknown section `[{inner}]`")),
        }
    }

    fn fresh(&self, name: &str, line: usize) -> Result<()> {
        let taken = self.structures.iter().any(|s| s.name == name)
            || self.fields.iter().any(|(n, _)| n == name)
            || self.distributions.iter().any(|d| d.name == name);
        if taken {
            Err(self.err(line, 1, format!("`{name}` is declared twice")))
        } else {
            Ok(())
        }
    }
}

/// `key: value` with the 0-based offset of the value.
fn key_value(line: &str) -> Option<(&str, &str, usize)> {
    let colon = line.find(':')?;
    let key = line[..colon].trim();
    if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return None;
    }
    Some((key, &line[colon + 1..], colon + 1))
}

pub fn parse_scenario(text: &str, file: &str) -> Result<Scenario> {
    let mut p = Parser {
        file,
        name: None,
        chart: None,
        params: None,
        seed: DEFAULT_SEED,
        structures: Vec::new(),
        fields: Vec::new(),
        connection: None,
        distributions: Vec::new(),
        checks: Vec::new(),
    };
    let mut section = Section::Preamble;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        if line.trim_start().starts_with('[') {
            let prev = std::mem::replace(&mut section, Section::Checks);
            p.close(prev)?;
            section = p.header(line_no, line)?;
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        match &mut section {
            Section::Preamble => {
                let Some((key, value, off)) = key_value(line) else {
                    return Err(p.err(line_no, indent + 1, "expected `key: value`"));
                };
                match key {
                    "name" => p.name = Some(value.trim().to_string()),
                    "chart" => {
                        let names: Vec<&str> = value.split(',').map(str::trim).collect();
                        p.chart = Some(
                            Chart::new(names).map_err(|e| p.err(line_no, off + 1, e.to_string()))?,
                        );
                    }
                    "params" => {
                        let nums: Vec<i64> = value
                            .split(',')
                            .map(|w| w.trim().parse::<i64>())
                            .collect::<std::result::Result<_, _>>()
                            .map_err(|_| p.err(line_no, off + 1, "expected `params: alpha, beta`"))?;
                        let [a, b] = nums[..] else {
                            return Err(p.err(line_no, off + 1, "expected `params: alpha, beta`"));
                        };
                        p.params = Some(
                            MetallicParams::new(a, b).map_err(|e| p.err(line_no, off + 1, e.to_string()))?,
                        );
                    }
                    "seed" => {
                        p.seed = value
                            .trim()
                            .parse()
                            .map_err(|_| p.err(line_no, off + 1, "seed must be a nonnegative integer"))?;
                    }
                    other => return Err(p.err(line_no, indent + 1, format!("unknown key `{other}`"))),
                }
            }
            Section::Structure { rows, entries, .. } => {
                if let Some((key, value, off)) = key_value(line).filter(|(k, _, _)| *k == "row") {
                    let _ = key;
                    let cells = p.exprs(value, line_no, off)?;
                    rows.push(p.sized(cells, line_no, off + 1)?);
                } else if let Some(rest) = line.trim_start().strip_prefix("entry") {
                    let eq = rest.find('=').ok_or_else(|| p.err(line_no, indent + 1, "expected `entry h i = expr`"))?;
                    let base = indent + "entry".len();
                    let idx = p.indices(&rest[..eq], 2, line_no, base)?;
                    let f = p.expr(&rest[eq + 1..], line_no, base + eq + 1)?;
                    entries.push((idx[0], idx[1], f));
                } else {
                    return Err(p.err(line_no, indent + 1, "expected `row:` or `entry h i = expr`"));
                }
            }
            Section::Field { comps, .. } => match key_value(line) {
                Some(("components", value, off)) => {
                    let cells = p.exprs(value, line_no, off)?;
                    *comps = Some(p.sized(cells, line_no, off + 1)?);
                }
                _ => return Err(p.err(line_no, indent + 1, "expected `components:`")),
            },
            Section::Connection => {
                let Some(rest) = line.trim_start().strip_prefix("entry") else {
                    return Err(p.err(line_no, indent + 1, "expected `entry h l i = expr`"));
                };
                let eq = rest.find('=').ok_or_else(|| p.err(line_no, indent + 1, "expected `entry h l i = expr`"))?;
                let base = indent + "entry".len();
                let idx = p.indices(&rest[..eq], 3, line_no, base)?;
                let f = p.expr(&rest[eq + 1..], line_no, base + eq + 1)?;
                let n = p.chart(line_no)?.dim();
                p.connection.as_mut().expect("opened")[(idx[0] * n + idx[1]) * n + idx[2]] = f;
            }
            Section::Distribution { structure, eigen, generators, .. } => match key_value(line) {
                Some(("structure", value, _)) => *structure = Some(value.trim().to_string()),
                Some(("eigen", value, off)) => {
                    *eigen = Some(match value.trim() {
                        "r" => Eigen::R,
                        "s" => Eigen::S,
                        _ => return Err(p.err(line_no, off + 1, "eigen must be `r` or `s`")),
                    })
                }
                Some(("generator", value, off)) => {
                    let cells = p.exprs(value, line_no, off)?;
                    let cells = p.sized(cells, line_no, off + 1)?;
                    let chart = p.chart(line_no)?.clone();
                    generators.push(VectorField::new(chart, cells).expect("sized"));
                }
                _ => return Err(p.err(line_no, indent + 1, "expected `structure:`, `eigen:` or `generator:`")),
            },
            Section::Checks => {
                let req = checks::parse_check(&p, line, line_no)?;
                p.checks.push(req);
            }
        }
    }
    p.close(section)?;

    let last = text.lines().count().max(1);
    let chart = p.chart.clone().ok_or_else(|| p.err(last, 1, "missing `chart:`"))?;
    let params = p.params.clone().ok_or_else(|| p.err(last, 1, "missing `params:`"))?;
    let name = p.name.clone().unwrap_or_else(|| "unnamed".to_string());
    for d in &p.distributions {
        if !p.structures.iter().any(|s| s.name == d.structure) {
            return Err(p.err(last, 1, format!("distribution `{}` refers to unknown structure `{}`", d.name, d.structure)));
        }
    }
    let connection = p
        .connection
        .take()
        .map(|comps| Connection::new(chart.clone(), comps).expect("sized"));
    Ok(Scenario {
        name,
        chart,
        params,
        seed: p.seed,
        structures: p.structures,
        fields: p.fields,
        connection,
        distributions: p.distributions,
        checks: p.checks,
    })
}
