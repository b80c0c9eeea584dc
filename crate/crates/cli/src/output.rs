//! Command outputs. Tables are rendered from these records alone, so a
//! record read back from JSON renders the same table.

use serde::{Deserialize, Serialize};
use zigzag_hh::report::Method;

use crate::spec::JobSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreprojRow {
    pub n: usize,
    pub lambda: usize,
    pub trace: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreprojOutput {
    pub job: JobSpec,
    pub results: Vec<PreprojRow>,
    /// first degree of three consecutive zero rows
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finite_from: Option<usize>,
    pub bound: usize,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HHRow {
    pub p: i64,
    pub q: i64,
    pub method: Method,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HHOutput {
    pub job: JobSpec,
    pub results: Vec<HHRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
    pub bound: i64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformationRow {
    pub cycle: String,
    pub q: i64,
    pub nontrivial: bool,
    pub squares_to_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyOutput {
    pub job: JobSpec,
    pub results: Vec<HHRow>,
    pub agreement: bool,
    pub bound: i64,
    pub nonzero_q: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deformation: Option<DeformationRow>,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArityRow {
    pub arity: usize,
    pub tensors_checked: usize,
    pub violations: usize,
    pub conditional: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AInftyOutput {
    pub job: AInftyJob,
    /// `m4` values as `inputs ↦ coefficient·output`
    pub m4: Vec<String>,
    pub p: i64,
    pub q: i64,
    pub cocycle: bool,
    pub coboundary: bool,
    pub stasheff: Vec<ArityRow>,
    pub stasheff_verdict: String,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AInftyJob {
    pub command: String,
    pub characteristic: u64,
    /// coefficients on the four rotations of the defining cycle
    pub coefficients: [i64; 4],
    pub max_arity: usize,
}

impl AInftyOutput {
    pub fn succeeded(&self) -> bool {
        self.cocycle && !self.coboundary
    }
}

/// Right-aligned columns under a header row.
fn grid(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{}{c}", " ".repeat(w - c.chars().count())))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let mut out = line(header.to_vec());
    out.push('\n');
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    out
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn job_line(job: &JobSpec) -> String {
    let mut parts = vec![
        format!("graph {}", job.graph),
        format!("char {}", job.characteristic),
    ];
    if let Some((a, b)) = job.q {
        parts.push(format!("q {a}..{b}"));
    }
    if let Some(n) = job.max {
        parts.push(format!("max {n}"));
    }
    if let Some(m) = job.method {
        parts.push(format!(
            "method {}",
            serde_json::to_value(m).unwrap().as_str().unwrap()
        ));
    }
    parts.push(format!("orientation {}", job.orientation));
    format!("{}: {}\n", job.command, parts.join(", "))
}

fn witness_lines(results: &[HHRow]) -> String {
    let mut out = String::new();
    for r in results {
        if let Some(w) = r.witnesses.as_ref().filter(|w| !w.is_empty()) {
            out.push_str(&format!("  q={} {}: {}\n", r.q, r.method, w.join("; ")));
        }
    }
    if out.is_empty() {
        out
    } else {
        format!("witnesses:\n{out}")
    }
}

/// One row per `q`, one column per method present.
fn hh_grid(results: &[HHRow], with_agreement: bool) -> String {
    let mut methods: Vec<Method> = results.iter().map(|r| r.method).collect();
    methods.sort();
    methods.dedup();
    let mut qs: Vec<i64> = results.iter().map(|r| r.q).collect();
    qs.dedup();
    let mut header = vec!["q"];
    header.extend(methods.iter().map(|m| m.as_str()));
    if with_agreement {
        header.push("agree");
    }
    let rows: Vec<Vec<String>> = qs
        .iter()
        .map(|&q| {
            let dims: Vec<Option<usize>> = methods
                .iter()
                .map(|m| {
                    results
                        .iter()
                        .find(|r| r.q == q && r.method == *m)
                        .map(|r| r.dim)
                })
                .collect();
            let mut row = vec![q.to_string()];
            row.extend(
                dims.iter()
                    .map(|d| d.map_or("-".to_string(), |d| d.to_string())),
            );
            if with_agreement {
                let present: Vec<usize> = dims.iter().flatten().copied().collect();
                row.push(yes_no(present.windows(2).all(|w| w[0] == w[1])).to_string());
            }
            row
        })
        .collect();
    grid(&header, &rows)
}

pub trait Render {
    fn render(&self) -> String;
}

impl Render for PreprojOutput {
    fn render(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .results
            .iter()
            .map(|r| {
                vec![
                    r.n.to_string(),
                    r.lambda.to_string(),
                    r.trace.to_string(),
                    r.witnesses.join("; "),
                ]
            })
            .collect();
        let mut out = job_line(&self.job);
        out.push_str(&grid(
            &["n", "dim Λ^n", "dim trace^n", "trace witnesses"],
            &rows,
        ));
        out.push_str(&format!("verdict: {}\n", self.verdict));
        out
    }
}

impl Render for HHOutput {
    fn render(&self) -> String {
        let mut out = job_line(&self.job);
        out.push_str(&hh_grid(&self.results, self.agreement.is_some()));
        out.push_str(&witness_lines(&self.results));
        if let Some(a) = self.agreement {
            out.push_str(&format!("agreement: {} (q ≤ {})\n", yes_no(a), self.bound));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}

impl Render for ClassifyOutput {
    fn render(&self) -> String {
        let mut out = job_line(&self.job);
        out.push_str(&format!("verdict: {}\n", self.verdict));
        out.push_str("evidence:\n");
        out.push_str(&hh_grid(&self.results, true));
        out.push_str(&witness_lines(&self.results));
        if let Some(d) = &self.deformation {
            out.push_str(&format!(
                "deformation by {} (q = {}): nontrivial {}, d'^2 = 0 {}\n",
                d.cycle,
                d.q,
                yes_no(d.nontrivial),
                yes_no(d.squares_to_zero)
            ));
        }
        out
    }
}

impl Render for AInftyOutput {
    fn render(&self) -> String {
        let j = &self.job;
        let mut out = format!(
            "{}: char {}, rotation coefficients {:?}, Stasheff through arity {}\n",
            j.command, j.characteristic, j.coefficients, j.max_arity
        );
        out.push_str("m4:\n");
        for v in &self.m4 {
            out.push_str(&format!("  {v}\n"));
        }
        out.push_str(&format!(
            "class in C^{{{},{}}}: cocycle {}, coboundary {}\n",
            self.p,
            self.q,
            yes_no(self.cocycle),
            yes_no(self.coboundary)
        ));
        let rows: Vec<Vec<String>> = self
            .stasheff
            .iter()
            .map(|r| {
                vec![
                    r.arity.to_string(),
                    r.tensors_checked.to_string(),
                    r.violations.to_string(),
                    r.conditional.to_string(),
                ]
            })
            .collect();
        out.push_str(&grid(
            &["arity", "tensors", "violations", "conditional"],
            &rows,
        ));
        out.push_str(&format!("Stasheff: {}\n", self.stasheff_verdict));
        out.push_str(&format!("verdict: {}\n", self.verdict));
        out
    }
}
