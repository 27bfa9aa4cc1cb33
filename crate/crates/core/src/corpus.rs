//! The golden-output corpus: input documents, case manifests and expected
//! outputs.
//!
//! ```text
//! corpus/
//!   inputs/     categories, computads, monads, adjunctions, squares, ...
//!   invalid/    negative controls, never loaded as corpus members
//!   cases/      one `case/v1` manifest per case
//!   golden/     expected stdout of each case, `<case>.out`
//! ```
//!
//! A manifest is `{"schema": "case/v1", "args": [...], "exit": 0}`; `args`
//! omits the program name and its paths are relative to the corpus root.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::acceptance::{self, Check};
use crate::cli::{run_in, to_json, CorpusOp, Fail, Rendered};
use crate::descent::FinMonad;
use crate::error::{Error, Result};
use crate::fincat::{CatRef, FinCat, FinCatData};
use crate::mates::{AdjunctionData, MateSquare};
use crate::present::Presentation;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema: String,
    pub args: Vec<String>,
    pub exit: i32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Case {
    pub name: String,
    pub manifest: Manifest,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

/// The mathematical content of `inputs/`, keyed by file stem.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub categories: Vec<(String, CatRef)>,
    pub presentations: Vec<(String, Presentation)>,
    pub monads: Vec<(String, FinMonad)>,
    pub adjunctions: Vec<(String, AdjunctionData)>,
    pub squares: Vec<(String, MateSquare)>,
}

fn json_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

fn stem(p: &Path) -> String {
    p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

impl Corpus {
    /// Loads every document of `dir/inputs` whose schema names a corpus kind.
    pub fn load(dir: &Path) -> Result<Corpus> {
        let mut c = Corpus::default();
        for path in json_files(&dir.join("inputs"))? {
            let name = stem(&path);
            let v: Value = serde_json::from_str(&std::fs::read_to_string(&path)?)?;
            let schema = v.get("schema").and_then(Value::as_str).unwrap_or("").to_string();
            match schema.as_str() {
                "fincat/v1" => {
                    let d: FinCatData = serde_json::from_value(v)?;
                    c.categories.push((name, Arc::new(FinCat::new_valid(&d)?)));
                }
                "computad/v1" => {
                    let p = Presentation::from_data(&serde_json::from_value(v)?)?;
                    c.presentations.push((name, p));
                }
                "monad/v1" => {
                    let m = FinMonad::from_wire(&serde_json::from_value(v)?)?;
                    c.monads.push((name, m));
                }
                "adjunction/v1" => {
                    let a = AdjunctionData::from_wire(&serde_json::from_value(v)?)?;
                    c.adjunctions.push((name, a));
                }
                "square/v1" => {
                    let s = MateSquare::from_wire(&serde_json::from_value(v)?)?;
                    c.squares.push((name, s));
                }
                _ => {}
            }
        }
        Ok(c)
    }

    pub fn presentation(&self, name: &str) -> Option<&Presentation> {
        self.presentations.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    pub fn square(&self, name: &str) -> Option<&MateSquare> {
        self.squares.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }
}

/// Reads `dir/cases`. An absent or empty case directory is an error.
pub fn load_cases(dir: &Path) -> Result<Vec<Case>> {
    let cases_dir = dir.join("cases");
    if !cases_dir.is_dir() {
        return Err(Error::MalformedInput(format!("{} has no cases directory", dir.display())));
    }
    let mut cases = Vec::new();
    for path in json_files(&cases_dir)? {
        let manifest: Manifest = serde_json::from_str(&std::fs::read_to_string(&path)?)?;
        cases.push(Case { name: stem(&path), manifest });
    }
    if cases.is_empty() {
        return Err(Error::MalformedInput(format!("{} contains no cases", cases_dir.display())));
    }
    Ok(cases)
}

/// Checks the manifest itself: known schema and existing input files.
fn check_manifest(dir: &Path, m: &Manifest) -> std::result::Result<(), String> {
    if m.schema != "case/v1" {
        return Err(format!("unsupported manifest schema `{}`", m.schema));
    }
    for w in m.args.windows(2) {
        if w[0] == "--in" && !dir.join(&w[1]).is_file() {
            return Err(format!("input `{}` does not exist", w[1]));
        }
    }
    Ok(())
}

/// Runs one case; the output is what the case would print on stdout.
pub fn run_case(dir: &Path, case: &Case) -> std::result::Result<crate::cli::Output, String> {
    check_manifest(dir, &case.manifest)?;
    let argv = std::iter::once("catkit".to_string()).chain(case.manifest.args.iter().cloned());
    Ok(run_in(dir, argv))
}

/// Every case's stdout, keyed by case name.
pub fn render_cases(dir: &Path, cases: &[Case]) -> BTreeMap<String, Vec<u8>> {
    cases
        .iter()
        .map(|c| {
            let bytes = match run_case(dir, c) {
                Ok(o) => o.stdout,
                Err(e) => format!("manifest error: {e}\n").into_bytes(),
            };
            (c.name.clone(), bytes)
        })
        .collect()
}

/// Compares every case with its golden file and expected exit code.
pub fn check_cases(dir: &Path, cases: &[Case]) -> (Vec<CaseResult>, BTreeMap<String, Vec<u8>>) {
    let mut results = Vec::new();
    let mut outputs = BTreeMap::new();
    for c in cases {
        let (pass, detail, bytes) = match run_case(dir, c) {
            Err(e) => (false, e.clone(), format!("manifest error: {e}\n").into_bytes()),
            Ok(o) => {
                let golden = std::fs::read(dir.join("golden").join(format!("{}.out", c.name)));
                let detail = match golden {
                    _ if o.code != c.manifest.exit => {
                        format!("exit {} (expected {}) {}", o.code, c.manifest.exit, o.stderr.trim())
                    }
                    Err(_) => "golden file missing".to_string(),
                    Ok(g) if g != o.stdout => "output differs from golden".to_string(),
                    Ok(_) => String::new(),
                };
                (detail.is_empty(), detail, o.stdout)
            }
        };
        results.push(CaseResult {
            name: c.name.clone(),
            pass,
            detail,
        });
        outputs.insert(c.name.clone(), bytes);
    }
    (results, outputs)
}

/// Full report: cases against goldens and every acceptance check.
pub fn run_corpus(dir: &Path) -> Result<(Value, BTreeMap<String, Vec<u8>>, bool)> {
    let cases = load_cases(dir)?;
    let corpus = Corpus::load(dir)?;
    let (results, outputs) = check_cases(dir, &cases);
    let checks: Vec<Check> = acceptance::run_all(dir, &corpus);
    let pass = results.iter().all(|r| r.pass) && checks.iter().all(|c| c.pass);
    let report = json!({ "cases": results, "acceptance": checks, "pass": pass });
    Ok((report, outputs, pass))
}

fn write_tree(out: &Path, report: &Value, outputs: &BTreeMap<String, Vec<u8>>) -> std::io::Result<()> {
    std::fs::create_dir_all(out)?;
    for (name, bytes) in outputs {
        std::fs::write(out.join(format!("{name}.out")), bytes)?;
    }
    std::fs::write(out.join("report.json"), to_json(report))
}

pub(crate) fn command(base: &Path, op: &CorpusOp) -> std::result::Result<Rendered, Fail> {
    let usage = |e: Error| Fail::Usage(e.to_string());
    match op {
        CorpusOp::Run { dir, out } => {
            let dir = crate::cli::resolve(base, dir);
            let (report, outputs, pass) = run_corpus(&dir).map_err(usage)?;
            if let Some(out) = out {
                write_tree(&crate::cli::resolve(base, out), &report, &outputs).map_err(|e| Fail::Usage(e.to_string()))?;
            }
            Ok(Rendered::check(&report, pass))
        }
        CorpusOp::Bless { dir } => {
            let dir = crate::cli::resolve(base, dir);
            let cases = load_cases(&dir).map_err(usage)?;
            let golden = dir.join("golden");
            std::fs::create_dir_all(&golden).map_err(|e| Fail::Usage(e.to_string()))?;
            let mut mismatched = Vec::new();
            for c in &cases {
                let o = run_case(&dir, c).map_err(Fail::Usage)?;
                if o.code != c.manifest.exit {
                    mismatched.push(json!({ "name": c.name, "exit": o.code, "expected": c.manifest.exit }));
                }
                std::fs::write(golden.join(format!("{}.out", c.name)), &o.stdout)
                    .map_err(|e| Fail::Usage(e.to_string()))?;
            }
            let ok = mismatched.is_empty();
            Ok(Rendered::check(&json!({ "blessed": cases.len(), "exit_mismatches": mismatched }), ok))
        }
    }
}
