//! Family files, flat input lists and output emission.
//!
//! A family file looks like
//!
//! ```json
//! {"version": 1, "n": 2, "reps": [
//!   {"id": "a", "arith_conductor": 3,
//!    "archimedean": [[0.1, 0.0], [-0.1, 0.0]],
//!    "finite": {
//!      "2": {"type": "unramified", "mu": [[0.0, 1.0], [0.0, -1.0]]},
//!      "3": {"type": "ramified", "segments": [
//!        {"twist_class": "sc", "r": 1, "L": 2, "s": [0.0, 0.0]}]}}}]}
//! ```
//!
//! Complex numbers are `[re, im]` arrays. Prime keys are decimal strings.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use rsdensity_core::repmodel::{
    Family, LocalComponent, RamifiedSegment, Representation, UnramifiedLocal,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const FAMILY_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub version: u32,
    pub n: usize,
    pub reps: Vec<RepEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepEntry {
    pub id: String,
    pub arith_conductor: u64,
    pub archimedean: Vec<[f64; 2]>,
    #[serde(default)]
    pub finite: BTreeMap<String, LocalEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum LocalEntry {
    Unramified { mu: Vec<[f64; 2]> },
    Ramified { segments: Vec<SegmentEntry> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentEntry {
    pub twist_class: String,
    pub r: u32,
    #[serde(rename = "L")]
    pub length: u32,
    pub s: [f64; 2],
}

pub fn cx(v: [f64; 2]) -> Complex64 {
    Complex64::new(v[0], v[1])
}

/// `[re, im]` with negative zeros cleared.
pub fn pair(z: Complex64) -> [f64; 2] {
    [z.re + 0.0, z.im + 0.0]
}

fn tuple(v: &[[f64; 2]]) -> UnramifiedLocal {
    UnramifiedLocal::new(v.iter().copied().map(cx).collect())
}

fn pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().copied().map(pair).collect()
}

impl FamilyFile {
    pub fn to_family(&self) -> Result<Family> {
        if self.version != FAMILY_VERSION {
            bail!("unsupported family file version {}", self.version);
        }
        let mut reps = Vec::with_capacity(self.reps.len());
        for e in &self.reps {
            let mut rep = Representation::new(e.id.clone(), tuple(&e.archimedean))
                .with_conductor(e.arith_conductor);
            for (key, local) in &e.finite {
                let p: u64 = key
                    .parse()
                    .with_context(|| format!("{}: prime key {key:?} is not an integer", e.id))?;
                rep = match local {
                    LocalEntry::Unramified { mu } => rep.with_unramified(p, tuple(mu)),
                    LocalEntry::Ramified { segments } => rep.with_ramified(
                        p,
                        segments
                            .iter()
                            .map(|s| RamifiedSegment::new(s.twist_class.clone(), s.r, s.length, cx(s.s)))
                            .collect(),
                    ),
                };
            }
            reps.push(rep);
        }
        Ok(Family::new(self.n, reps)?)
    }

    pub fn from_family(f: &Family) -> Self {
        let reps = f
            .reps()
            .iter()
            .map(|rep| RepEntry {
                id: rep.id.clone(),
                arith_conductor: rep.arith_conductor,
                archimedean: pairs(&rep.archimedean.mu),
                finite: rep
                    .finite
                    .iter()
                    .map(|(p, local)| {
                        let entry = match local {
                            LocalComponent::Unramified(u) => LocalEntry::Unramified { mu: pairs(&u.mu) },
                            LocalComponent::Ramified(segs) => LocalEntry::Ramified {
                                segments: segs
                                    .iter()
                                    .map(|s| SegmentEntry {
                                        twist_class: s.twist_class.clone(),
                                        r: s.r,
                                        length: s.length,
                                        s: pair(s.s),
                                    })
                                    .collect(),
                            },
                        };
                        (p.to_string(), entry)
                    })
                    .collect(),
            })
            .collect();
        Self {
            version: FAMILY_VERSION,
            n: f.rank(),
            reps,
        }
    }
}

pub fn read_family(path: &Path) -> Result<Family> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: FamilyFile =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    file.to_family()
        .with_context(|| format!("loading {}", path.display()))
}

/// A JSON list whose items are `[re, im]` pairs or plain reals.
pub fn read_complex_list(path: &Path) -> Result<Vec<Complex64>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let v: Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    complex_list(&v).with_context(|| format!("in {}", path.display()))
}

pub fn complex_list(v: &Value) -> Result<Vec<Complex64>> {
    let Value::Array(items) = v else {
        bail!("expected a JSON list");
    };
    items
        .iter()
        .enumerate()
        .map(|(i, item)| match item {
            Value::Number(x) => Ok(Complex64::new(number(x)?, 0.0)),
            Value::Array(p) if p.len() == 2 => match (&p[0], &p[1]) {
                (Value::Number(a), Value::Number(b)) => Ok(Complex64::new(number(a)?, number(b)?)),
                _ => bail!("item {i}: expected [re, im] numbers"),
            },
            _ => bail!("item {i}: expected a number or an [re, im] pair"),
        })
        .collect()
}

fn number(x: &serde_json::Number) -> Result<f64> {
    x.as_f64().context("number out of range")
}

/// `"RE,IM"` or `"RE"`.
pub fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected RE,IM, got {s:?}")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// A command result in both output shapes.
#[derive(Debug, Clone)]
pub struct Output {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Output {
    pub fn new(json: Value, header: &[&str]) -> Self {
        Self {
            json,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>> {
        match format {
            Format::Json => {
                let mut out = serde_json::to_vec_pretty(&self.json)?;
                out.push(b'\n');
                Ok(out)
            }
            Format::Csv => {
                if self.header.is_empty() {
                    bail!("this command has no CSV form");
                }
                let mut w = csv::WriterBuilder::new()
                    .flexible(true)
                    .from_writer(Vec::new());
                w.write_record(&self.header)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                Ok(w.into_inner()?)
            }
        }
    }
}

/// CSV cell for a complex number; the writer quotes it because of the comma.
pub fn cell(z: Complex64) -> String {
    let [re, im] = pair(z);
    format!("{},{}", num(re), num(im))
}

/// Shortest round-trip decimal, in exponent form when very small or large.
pub fn num(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && a.is_finite() && !(1e-5..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{}", x + 0.0)
    }
}

/// Writes `bytes` to `path` via a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating temporary file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
