//! Structured command output. The JSON form carries every field; the plain
//! form prints the same fields line by line.

use std::fmt::{self, Write as _};

use kerpair::{Element, Matrix, RingSpec, Submodule};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Violation,
    NotMember,
    NotAdmissible,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violation | Status::NotMember | Status::NotAdmissible => 1,
            Status::Error => 2,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violation => "violation",
            Status::NotMember => "not-member",
            Status::NotAdmissible => "not-admissible",
            Status::Error => "error",
        }
    }
}

/// A submodule as its canonical generators, entries in element syntax.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Basis {
    pub name: String,
    pub ambient: usize,
    /// Rank over a field or `GF(p)[z]`; absent over composite moduli.
    pub rank: Option<usize>,
    /// Number of elements over a finite ring, as a decimal string.
    pub count: Option<String>,
    pub generators: Vec<Vec<String>>,
}

impl Basis {
    pub fn of(name: &str, s: &Submodule) -> Self {
        Basis {
            name: name.to_string(),
            ambient: s.ambient_dim(),
            rank: s.rank(),
            count: s.count().map(|c| c.to_string()),
            generators: s.generators().iter().map(|v| strings(v)).collect(),
        }
    }

    /// Re-parses the generators in `ring` and spans them.
    pub fn to_submodule(&self, ring: &RingSpec) -> Result<Submodule, CliError> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.iter().map(|t| ring.parse_element(t)).collect::<kerpair::Result<Vec<Element>>>())
            .collect::<kerpair::Result<Vec<_>>>()?;
        Ok(Submodule::span(ring, self.ambient, &gens)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedMatrix {
    pub name: String,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl NamedMatrix {
    pub fn of(name: &str, m: &Matrix) -> Self {
        NamedMatrix {
            name: name.to_string(),
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows()).map(|i| strings(&m.row(i))).collect(),
        }
    }

    /// One row per vector.
    pub fn from_rows(name: &str, cols: usize, rows: &[Vec<Element>]) -> Self {
        NamedMatrix {
            name: name.to_string(),
            rows: rows.len(),
            cols,
            entries: rows.iter().map(|r| strings(r)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeEntry {
    pub prime: u64,
    /// Idempotent for this prime, when the ring decomposes.
    pub idempotent: Option<u64>,
    pub bases: Vec<Basis>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub command: Vec<String>,
    pub ring: Option<String>,
    pub status: Status,
    pub exit_code: i32,
    pub bases: Vec<Basis>,
    pub per_prime: Vec<PrimeEntry>,
    pub witnesses: Vec<NamedMatrix>,
    pub checks: Vec<Check>,
    pub messages: Vec<String>,
}

impl ResultDocument {
    pub fn new(command: Vec<String>) -> Self {
        ResultDocument {
            command,
            ring: None,
            status: Status::Ok,
            exit_code: 0,
            bases: Vec::new(),
            per_prime: Vec::new(),
            witnesses: Vec::new(),
            checks: Vec::new(),
            messages: Vec::new(),
        }
    }

    pub fn set_status(&mut self, status: Status) {
        self.status = status;
        self.exit_code = status.exit_code();
    }

    /// Records a check; a failure turns the status into a violation.
    pub fn check(&mut self, name: &str, outcome: Result<String, String>) {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        if !passed {
            self.set_status(Status::Violation);
        }
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

pub fn strings(v: &[Element]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn tuple(v: &[String]) -> String {
    format!("({})", v.join(" "))
}

fn write_basis(out: &mut String, indent: &str, b: &Basis) {
    let rank = b.rank.map_or("-".to_string(), |r| r.to_string());
    let count = b.count.as_deref().unwrap_or("infinite");
    let _ = writeln!(
        out,
        "{indent}{}: ambient {}, rank {rank}, count {count}, {} generators",
        b.name,
        b.ambient,
        b.generators.len()
    );
    for g in &b.generators {
        let _ = writeln!(out, "{indent}  {}", tuple(g));
    }
}

impl fmt::Display for ResultDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command.join(" "));
        if let Some(r) = &self.ring {
            let _ = writeln!(out, "ring: {r}");
        }
        for b in &self.bases {
            write_basis(&mut out, "", b);
        }
        for p in &self.per_prime {
            match p.idempotent {
                Some(e) => {
                    let _ = writeln!(out, "prime {}: idempotent {e}", p.prime);
                }
                None => {
                    let _ = writeln!(out, "prime {}:", p.prime);
                }
            }
            for b in &p.bases {
                write_basis(&mut out, "  ", b);
            }
        }
        for w in &self.witnesses {
            let _ = writeln!(out, "{}: {}x{}", w.name, w.rows, w.cols);
            for r in &w.entries {
                let _ = writeln!(out, "  {}", r.join(" "));
            }
        }
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{mark} {}: {}", c.name, c.detail);
        }
        for m in &self.messages {
            let _ = writeln!(out, "{m}");
        }
        let _ = write!(out, "status: {} (exit {})", self.status.label(), self.exit_code);
        writeln!(f, "{out}")
    }
}
