//! Check records and their text and JSON renderings.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    /// Serialized difference that should vanish, when there is one.
    pub residual: Option<String>,
    pub millis: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub records: Vec<Record>,
    /// Values of bare expressions, in order.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub outputs: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status == Status::Pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            passed: bool,
            #[serde(flatten)]
            report: &'a Report,
        }
        serde_json::to_string_pretty(&Out {
            passed: self.passed(),
            report: self,
        })
        .expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for o in &self.outputs {
            writeln!(s, "{o}").unwrap();
        }
        for r in &self.records {
            let status = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Error => "ERROR",
            };
            write!(s, "{status:5} {} ({} ms)  {}", r.id, r.millis, r.anchor).unwrap();
            if let Some(m) = &r.message {
                write!(s, "\n      {m}").unwrap();
            }
            if r.status != Status::Pass {
                if let Some(res) = &r.residual {
                    write!(s, "\n      residual: {res}").unwrap();
                }
            }
            s.push('\n');
        }
        let failed = self.records.iter().filter(|r| r.status != Status::Pass).count();
        writeln!(s, "{} checks, {} passed, {failed} failed", self.records.len(), self.records.len() - failed).unwrap();
        s
    }
}
