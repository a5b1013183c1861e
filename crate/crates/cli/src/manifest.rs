//! The manifold file: a TOML document with one section per fact group.
//!
//! ```toml
//! [manifold]
//! name = "CP2"
//! b1 = 0
//! bplus = 1
//! bminus = 0
//! euler = 3
//! signature = 1
//!
//! [intersection_form]
//! rows = [[1]]
//!
//! [w2]
//! values = [1]
//!
//! [torsion]
//! tors2_order = 1
//!
//! [psc]
//! psc_ray = [1]
//! ```
//!
//! Optional sections: `[triple_cup]` with `entries = [[i, j, k, value], ...]`
//! (1-based, the `(j, i, k)` entry defaults to `-value`), `[kahler]` with
//! `canonical_class`, `ns_basis`, `effective_cone`, `pg_zero`, `kahler_ray`,
//! and `[psc]` with `psc_ray`. Rational entries may be written as integers
//! or as strings `"p/q"`.

use crate::error::CliError;
use serde::Deserialize;
use std::collections::BTreeSet;
use std::fmt::Write;
use swcalc::chambers::PeriodRay;
use swcalc::kahler::{KahlerFacts, TableFacts};
use swcalc::rational::{parse_q, render_q, Q};
use swcalc::topology::{ManifoldTopology, Sign, TripleCup, Violation};
use toml::Spanned;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    manifold: RawManifold,
    intersection_form: RawForm,
    w2: RawW2,
    torsion: RawTorsion,
    triple_cup: Option<RawTriple>,
    kahler: Option<RawKahler>,
    psc: Option<RawPsc>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifold {
    name: String,
    b1: usize,
    bplus: usize,
    bminus: usize,
    euler: i64,
    signature: i64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawForm {
    rows: Vec<Spanned<Vec<i64>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawW2 {
    values: Spanned<Vec<u8>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTorsion {
    tors2_order: u64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTriple {
    entries: Vec<Spanned<Vec<i64>>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawQ {
    Int(i64),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawKahler {
    canonical_class: Vec<i64>,
    ns_basis: Vec<Vec<i64>>,
    effective_cone: Vec<Spanned<Vec<RawQ>>>,
    pg_zero: bool,
    kahler_ray: Spanned<Vec<RawQ>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPsc {
    psc_ray: Spanned<Vec<RawQ>>,
}

/// Kähler facts as read, before they are checked against the topology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KahlerSection {
    pub canonical_class: Vec<i64>,
    pub ns_basis: Vec<Vec<i64>>,
    pub effective_cone: Vec<Vec<Q>>,
    pub pg_zero: bool,
    pub kahler_ray: Vec<Q>,
}

/// A parsed manifold file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifoldFile {
    pub topology: ManifoldTopology,
    pub kahler: Option<KahlerSection>,
    pub psc_ray: Option<Vec<Q>>,
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map(|i| i + 1).unwrap_or(0) + 1;
    (line, col)
}

fn parse_err(src: &str, span: std::ops::Range<usize>, msg: impl Into<String>) -> CliError {
    let (line, column) = line_col(src, span.start);
    CliError::Parse {
        line,
        column,
        message: msg.into(),
    }
}

fn rationals(src: &str, v: &Spanned<Vec<RawQ>>) -> Result<Vec<Q>, CliError> {
    v.get_ref()
        .iter()
        .map(|x| match x {
            RawQ::Int(i) => Ok(Q::from_integer((*i).into())),
            RawQ::Text(s) => parse_q(s)
                .ok_or_else(|| parse_err(src, v.span(), format!("invalid rational {s:?}"))),
        })
        .collect()
}

pub fn parse(src: &str) -> Result<ManifoldFile, CliError> {
    let raw: RawFile = toml::from_str(src).map_err(|e| {
        let (line, column) = e.span().map(|s| line_col(src, s.start)).unwrap_or((0, 0));
        CliError::Parse {
            line,
            column,
            message: e.message().to_string(),
        }
    })?;

    let b2 = raw.intersection_form.rows.len();
    let mut form = Vec::with_capacity(b2);
    for row in &raw.intersection_form.rows {
        if row.get_ref().len() != b2 {
            return Err(parse_err(
                src,
                row.span(),
                format!(
                    "matrix row has {} entries, expected {b2}",
                    row.get_ref().len()
                ),
            ));
        }
        form.push(row.get_ref().clone());
    }

    let mut w2 = Vec::with_capacity(b2);
    for &x in raw.w2.values.get_ref() {
        match x {
            0 => w2.push(false),
            1 => w2.push(true),
            _ => {
                return Err(parse_err(
                    src,
                    raw.w2.values.span(),
                    "w2 entries must be 0 or 1",
                ))
            }
        }
    }

    let b1 = raw.manifold.b1;
    let mut triple = TripleCup::zeros(b1, b2);
    if let Some(t) = &raw.triple_cup {
        let mut given = BTreeSet::new();
        for e in &t.entries {
            let [i, j, k, v] = e.get_ref()[..] else {
                return Err(parse_err(
                    src,
                    e.span(),
                    "triple_cup entry must be [i, j, k, value]",
                ));
            };
            let in_range = |x: i64, n: usize| x >= 1 && x as usize <= n;
            if !in_range(i, b1) || !in_range(j, b1) || !in_range(k, b2) {
                return Err(parse_err(src, e.span(), "triple_cup index out of range"));
            }
            let (i, j, k) = (i as usize - 1, j as usize - 1, k as usize - 1);
            if !given.insert((i, j, k)) {
                return Err(parse_err(src, e.span(), "duplicate triple_cup entry"));
            }
            triple.set(i, j, k, v);
        }
        for &(i, j, k) in &given {
            if !given.contains(&(j, i, k)) {
                triple.set(j, i, k, -triple.get(i, j, k));
            }
        }
    }

    let topology = ManifoldTopology {
        name: raw.manifold.name,
        b1,
        bplus: raw.manifold.bplus,
        bminus: raw.manifold.bminus,
        euler: raw.manifold.euler,
        signature: raw.manifold.signature,
        form,
        w2,
        tors2_order: raw.torsion.tors2_order,
        triple_cup: triple,
    };

    let kahler = match &raw.kahler {
        None => None,
        Some(k) => Some(KahlerSection {
            canonical_class: k.canonical_class.clone(),
            ns_basis: k.ns_basis.clone(),
            effective_cone: k
                .effective_cone
                .iter()
                .map(|g| rationals(src, g))
                .collect::<Result<_, _>>()?,
            pg_zero: k.pg_zero,
            kahler_ray: rationals(src, &k.kahler_ray)?,
        }),
    };
    let psc_ray = match &raw.psc {
        None => None,
        Some(p) => Some(rationals(src, &p.psc_ray)?),
    };
    Ok(ManifoldFile {
        topology,
        kahler,
        psc_ray,
    })
}

/// Problems found by [`ManifoldFile::check`]: topology violations plus
/// inconsistent Kähler or PSC data.
#[derive(Debug, Clone, Default)]
pub struct FileReport {
    pub violations: Vec<Violation>,
    pub fact_errors: Vec<String>,
}

impl FileReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty() && self.fact_errors.is_empty()
    }

    pub fn messages(&self) -> Vec<String> {
        self.violations
            .iter()
            .map(|v| v.to_string())
            .chain(self.fact_errors.iter().cloned())
            .collect()
    }
}

impl ManifoldFile {
    pub fn check(&self) -> FileReport {
        let report = self.topology.validate();
        let mut out = FileReport {
            violations: report.violations,
            fact_errors: Vec::new(),
        };
        if !out.violations.is_empty() {
            return out;
        }
        if let Err(e) = self.facts() {
            out.fact_errors.push(e.to_string());
        }
        out
    }

    /// Builds typed facts. Only meaningful on a topology that validates.
    pub fn facts(&self) -> swcalc::Result<TableFacts> {
        let m = &self.topology;
        let psc_ray = match &self.psc_ray {
            None => None,
            Some(h) => Some(PeriodRay::new(m, h.clone(), Sign::Plus)?),
        };
        let kahler = match &self.kahler {
            None => None,
            Some(k) => {
                let kf = KahlerFacts {
                    canonical_class: k.canonical_class.clone(),
                    ns_basis: k.ns_basis.clone(),
                    effective_cone: k.effective_cone.clone(),
                    pg_zero: k.pg_zero,
                    kahler_ray: PeriodRay::new(m, k.kahler_ray.clone(), Sign::Plus)?,
                };
                kf.validate(m)?;
                Some(kf)
            }
        };
        Ok(TableFacts { psc_ray, kahler })
    }

    /// Canonical text form; parsing it yields an identical `ManifoldFile`.
    pub fn emit(&self) -> String {
        let m = &self.topology;
        let mut s = String::new();
        let ints = |v: &[i64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        let rats = |v: &[Q]| {
            v.iter()
                .map(|x| {
                    if x.is_integer() {
                        render_q(x)
                    } else {
                        format!("\"{}\"", render_q(x))
                    }
                })
                .collect::<Vec<_>>()
                .join(", ")
        };
        writeln!(s, "[manifold]").unwrap();
        writeln!(s, "name = {}", toml_string(&m.name)).unwrap();
        writeln!(s, "b1 = {}", m.b1).unwrap();
        writeln!(s, "bplus = {}", m.bplus).unwrap();
        writeln!(s, "bminus = {}", m.bminus).unwrap();
        writeln!(s, "euler = {}", m.euler).unwrap();
        writeln!(s, "signature = {}", m.signature).unwrap();
        writeln!(s, "\n[intersection_form]").unwrap();
        let rows: Vec<String> = m.form.iter().map(|r| format!("[{}]", ints(r))).collect();
        writeln!(s, "rows = [{}]", rows.join(", ")).unwrap();
        writeln!(s, "\n[w2]").unwrap();
        let w: Vec<i64> = m.w2.iter().map(|&b| b as i64).collect();
        writeln!(s, "values = [{}]", ints(&w)).unwrap();
        writeln!(s, "\n[torsion]").unwrap();
        writeln!(s, "tors2_order = {}", m.tors2_order).unwrap();

        let t = &m.triple_cup;
        let mut entries = Vec::new();
        let mut push = |i: usize, j: usize, k: usize, v: i64| {
            entries.push(format!("[{}, {}, {}, {}]", i + 1, j + 1, k + 1, v));
        };
        for i in 0..t.b1() {
            for j in i..t.b1() {
                for k in 0..t.b2() {
                    let (a, b) = (t.get(i, j, k), t.get(j, i, k));
                    if i == j {
                        if a != 0 {
                            push(i, j, k, a);
                        }
                    } else if b == -a {
                        // The (j, i, k) entry is implied.
                        if a != 0 {
                            push(i, j, k, a);
                        }
                    } else {
                        push(i, j, k, a);
                        push(j, i, k, b);
                    }
                }
            }
        }
        if !entries.is_empty() {
            writeln!(s, "\n[triple_cup]").unwrap();
            writeln!(s, "entries = [{}]", entries.join(", ")).unwrap();
        }
        if let Some(k) = &self.kahler {
            writeln!(s, "\n[kahler]").unwrap();
            writeln!(s, "canonical_class = [{}]", ints(&k.canonical_class)).unwrap();
            let ns: Vec<String> = k
                .ns_basis
                .iter()
                .map(|r| format!("[{}]", ints(r)))
                .collect();
            writeln!(s, "ns_basis = [{}]", ns.join(", ")).unwrap();
            let cone: Vec<String> = k
                .effective_cone
                .iter()
                .map(|r| format!("[{}]", rats(r)))
                .collect();
            writeln!(s, "effective_cone = [{}]", cone.join(", ")).unwrap();
            writeln!(s, "pg_zero = {}", k.pg_zero).unwrap();
            writeln!(s, "kahler_ray = [{}]", rats(&k.kahler_ray)).unwrap();
        }
        if let Some(p) = &self.psc_ray {
            writeln!(s, "\n[psc]").unwrap();
            writeln!(s, "psc_ray = [{}]", rats(p)).unwrap();
        }
        s
    }
}

fn toml_string(s: &str) -> String {
    let mut out = String::from("\"");
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c if c.is_control() => out.push_str(&format!("\\u{:04X}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
