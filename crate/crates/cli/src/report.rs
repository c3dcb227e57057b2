//! Reports: a text body for humans and a tab separated record file.

use std::fmt::Write as _;
use std::time::Duration;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// A computed value; never a failure.
    Value(String),
    /// An entry that is supposed to fail. `observed` is whether it did.
    ExpectedFail { observed: bool },
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Failures that should make the process exit nonzero.
    pub fn is_unexpected_failure(&self) -> bool {
        matches!(self, Verdict::Fail | Verdict::ExpectedFail { observed: false })
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Pass => f.write_str("PASS"),
            Verdict::Fail => f.write_str("FAIL"),
            Verdict::Value(v) => f.write_str(v),
            Verdict::ExpectedFail { observed: true } => f.write_str("expected-fail: PASS"),
            Verdict::ExpectedFail { observed: false } => f.write_str("expected-fail: FAIL"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub operation: String,
    pub verdict: Verdict,
    /// Exact witness or detail; empty when there is nothing to show.
    pub witness: String,
}

impl Record {
    pub fn new(operation: impl Into<String>, verdict: Verdict, witness: impl Into<String>) -> Self {
        Record {
            operation: operation.into(),
            verdict,
            witness: witness.into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub operation: String,
    pub inputs: Vec<(String, String)>,
    pub records: Vec<Record>,
    pub seed: u64,
    pub elapsed: Duration,
}

fn one_line(s: &str) -> String {
    s.replace(['\t', '\n', '\r'], " ")
}

impl Report {
    pub fn passed(&self) -> bool {
        !self.records.iter().any(|r| r.verdict.is_unexpected_failure())
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    /// Human readable body. Depends only on the configuration, never on
    /// timing.
    pub fn body(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "operation: {}", self.operation);
        let _ = writeln!(s, "seed: {}", self.seed);
        for (k, v) in &self.inputs {
            let _ = writeln!(s, "input {k} = {v}");
        }
        for r in &self.records {
            if r.witness.is_empty() {
                let _ = writeln!(s, "[{}] {}", r.verdict, r.operation);
            } else {
                let _ = writeln!(s, "[{}] {}: {}", r.verdict, r.operation, one_line(&r.witness));
            }
        }
        if self.records.len() > 1 {
            let count = |p: fn(&Verdict) -> bool| self.records.iter().filter(|r| p(&r.verdict)).count();
            let _ = writeln!(
                s,
                "summary: {} entries, {} pass, {} fail, {} expected-fail, {} values",
                self.records.len(),
                count(|v| *v == Verdict::Pass),
                count(|v| *v == Verdict::Fail),
                count(|v| matches!(v, Verdict::ExpectedFail { .. })),
                count(|v| matches!(v, Verdict::Value(_))),
            );
        }
        s
    }

    /// One record per line: operation, verdict, witness, seed.
    pub fn tsv(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            let _ = writeln!(
                s,
                "{}\t{}\t{}\t{}",
                one_line(&r.operation),
                one_line(&r.verdict.to_string()),
                one_line(&r.witness),
                self.seed
            );
        }
        s
    }

    pub fn timing_line(&self) -> String {
        format!("elapsed: {:.3} s", self.elapsed.as_secs_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(records: Vec<Record>) -> Report {
        Report {
            operation: "suite".into(),
            inputs: vec![("trials".into(), "5".into())],
            records,
            seed: 7,
            elapsed: Duration::from_millis(12),
        }
    }

    #[test]
    fn exit_status_contract() {
        let ok = report(vec![
            Record::new("a", Verdict::Pass, ""),
            Record::new("b", Verdict::ExpectedFail { observed: true }, "w"),
            Record::new("c", Verdict::Value("3".into()), ""),
        ]);
        assert_eq!(ok.exit_code(), 0);
        let missing = report(vec![Record::new("b", Verdict::ExpectedFail { observed: false }, "")]);
        assert_eq!(missing.exit_code(), 1);
        let bad = report(vec![Record::new("a", Verdict::Fail, "w")]);
        assert_eq!(bad.exit_code(), 1);
    }

    #[test]
    fn tsv_fields() {
        let r = report(vec![Record::new("birkhoff", Verdict::Fail, "x1=(1, -1)\tx2=(1, 1)")]);
        assert_eq!(r.tsv(), "birkhoff\tFAIL\tx1=(1, -1) x2=(1, 1)\t7\n");
        assert!(!r.body().contains("elapsed"));
    }
}
