//! Three-valued verdicts and the condition records built from them.
//!
//! Every boundary-sensitive decision in the crate answers pass, fail, or
//! indeterminate. Indeterminate is reserved for data inside a declared
//! margin band; it is never a silent pass.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Indeterminate,
}

impl Verdict {
    /// Combine verdicts: any fail dominates, then any indeterminate.
    pub fn combine(iter: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut out = Verdict::Pass;
        for v in iter {
            match v {
                Verdict::Fail => return Verdict::Fail,
                Verdict::Indeterminate => out = Verdict::Indeterminate,
                Verdict::Pass => {}
            }
        }
        out
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Indeterminate => "indeterminate",
        };
        f.write_str(s)
    }
}

/// One checked condition with a human-readable account of the evidence.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Condition {
    pub verdict: Verdict,
    pub summary: String,
}

impl Condition {
    pub fn pass(summary: impl Into<String>) -> Self {
        Condition {
            verdict: Verdict::Pass,
            summary: summary.into(),
        }
    }

    pub fn fail(summary: impl Into<String>) -> Self {
        Condition {
            verdict: Verdict::Fail,
            summary: summary.into(),
        }
    }

    pub fn indeterminate(summary: impl Into<String>) -> Self {
        Condition {
            verdict: Verdict::Indeterminate,
            summary: summary.into(),
        }
    }
}
