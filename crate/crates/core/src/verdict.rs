//! Pass/fail outcomes with concrete witnesses, and the report records built from them.

use std::fmt;
use std::time::Duration;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub what: String,
    pub at: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    pub fn new(what: impl Into<String>, at: &[usize], lhs: impl fmt::Display, rhs: impl fmt::Display) -> Self {
        Witness { what: what.into(), at: at.to_vec(), lhs: lhs.to_string(), rhs: rhs.to_string() }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at: Vec<String> = self.at.iter().map(|i| i.to_string()).collect();
        write!(f, "{} ({}) lhs={} rhs={}", self.what, at.join(","), self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Vec<Witness>),
}

impl Verdict {
    pub fn fail(w: Witness) -> Self {
        Verdict::Fail(vec![w])
    }

    pub fn from_witnesses(ws: Vec<Witness>) -> Self {
        if ws.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail(ws)
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witnesses(&self) -> &[Witness] {
        match self {
            Verdict::Pass => &[],
            Verdict::Fail(ws) => ws,
        }
    }

    /// Both must pass; witnesses accumulate.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Pass, v) | (v, Verdict::Pass) => v,
            (Verdict::Fail(mut a), Verdict::Fail(b)) => {
                a.extend(b);
                Verdict::Fail(a)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Record {
    pub name: String,
    pub status: Status,
    pub detail: Option<String>,
    pub elapsed: Duration,
}

impl Record {
    pub fn from_verdict(name: impl Into<String>, v: &Verdict, elapsed: Duration) -> Self {
        let (status, detail) = match v {
            Verdict::Pass => (Status::Pass, None),
            Verdict::Fail(ws) => (Status::Fail, ws.first().map(|w| format!("(witness: {w})"))),
        };
        Record { name: name.into(), status, detail, elapsed }
    }

    pub fn error(name: impl Into<String>, message: impl fmt::Display, elapsed: Duration) -> Self {
        Record { name: name.into(), status: Status::Error, detail: Some(format!("({message})")), elapsed }
    }
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CHECK {} {}", self.name, self.status)?;
        if let Some(d) = &self.detail {
            write!(f, " {d}")?;
        }
        write!(f, " {}ms", self.elapsed.as_millis())
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub records: Vec<Record>,
    pub lines: Vec<String>,
}

impl Report {
    pub fn push(&mut self, r: Record) {
        self.lines.push(r.to_string());
        self.records.push(r);
    }

    /// A preformatted line that still counts toward the exit status.
    pub fn push_line(&mut self, line: String, status: Status) {
        self.lines.push(line);
        self.records.push(Record { name: String::new(), status, detail: None, elapsed: Duration::ZERO });
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.status == Status::Pass)
    }

    pub fn any_error(&self) -> bool {
        self.records.iter().any(|r| r.status == Status::Error)
    }
}
