//! Pass/fail records shared by the verification suites.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub identity: String,
    pub instantiation: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckEntry {
    pub fn new(identity: &str, instantiation: impl Into<String>, residual: Option<String>) -> Self {
        CheckEntry { identity: identity.to_string(), instantiation: instantiation.into(), pass: residual.is_none(), witness: residual }
    }
}

/// Ordered list of checks; serialized as a JSON array.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Report {
    pub entries: Vec<CheckEntry>,
}

/// Per-identity totals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentitySummary {
    pub identity: String,
    pub checked: usize,
    pub failed: usize,
}

impl Report {
    pub fn push(&mut self, e: CheckEntry) {
        self.entries.push(e);
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Totals per identity, in order of first appearance.
    pub fn summary(&self) -> Vec<IdentitySummary> {
        let mut out: Vec<IdentitySummary> = Vec::new();
        for e in &self.entries {
            let idx = match out.iter().position(|s| s.identity == e.identity) {
                Some(i) => i,
                None => {
                    out.push(IdentitySummary { identity: e.identity.clone(), checked: 0, failed: 0 });
                    out.len() - 1
                }
            };
            out[idx].checked += 1;
            if !e.pass {
                out[idx].failed += 1;
            }
        }
        out
    }
}

impl FromIterator<CheckEntry> for Report {
    fn from_iter<I: IntoIterator<Item = CheckEntry>>(iter: I) -> Self {
        Report { entries: iter.into_iter().collect() }
    }
}
