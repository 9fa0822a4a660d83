use std::fmt;

use serde::Serialize;

/// Three-valued answer; `Unknown` marks a case with no known characterization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Truth {
    Yes,
    No,
    Unknown,
}

impl Truth {
    pub fn from_bool(b: bool) -> Truth {
        if b {
            Truth::Yes
        } else {
            Truth::No
        }
    }
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Truth::Yes => "Yes",
            Truth::No => "No",
            Truth::Unknown => "Unknown",
        };
        write!(f, "{s}")
    }
}

/// A decided value together with the key of the characterization that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub verdict: Truth,
    pub citation: String,
}

impl Verdict {
    pub fn new(verdict: Truth, citation: impl Into<String>) -> Verdict {
        Verdict {
            verdict,
            citation: citation.into(),
        }
    }

    pub fn is_yes(&self) -> bool {
        self.verdict == Truth::Yes
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.verdict, self.citation)
    }
}
