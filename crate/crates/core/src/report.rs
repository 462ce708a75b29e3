//! Outcome of a gap verification.

use std::fmt;

/// Brute-force check of the two claims behind a gap-producing reduction.
///
/// For the monotone amplification, `k_prime` is `k'` and the optima
/// are minimum satisfying weights of `C` and `C'`. For the threshold
/// reduction, `k_prime` is `D`, `source_opt` is `Some(k)` when a
/// `k`-clique exists, and `target_opt` is the Threshold Set optimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport {
    pub kind: &'static str,
    pub k: usize,
    pub k_prime: usize,
    pub source_opt: Option<usize>,
    pub target_opt: Option<usize>,
    /// The source instance admits a solution of the parameter size.
    pub source_yes: bool,
    pub claim1_holds: bool,
    pub claim2_holds: bool,
    pub source_witness: Option<Vec<usize>>,
    pub target_witness: Option<Vec<usize>>,
    /// Extra `key=value` lines (family size, instance size, flags).
    pub details: Vec<(String, String)>,
}

impl GapReport {
    pub fn holds(&self) -> bool {
        self.claim1_holds && self.claim2_holds
    }

    pub fn detail(&self, key: &str) -> Option<&str> {
        self.details.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "none".to_owned(), |x| x.to_string())
}

fn list(v: &Option<Vec<usize>>) -> String {
    match v {
        None => "none".to_owned(),
        Some(xs) => xs.iter().map(usize::to_string).collect::<Vec<_>>().join(","),
    }
}

/// Line-keyed `key=value` rendering.
impl fmt::Display for GapReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "check={}", self.kind)?;
        writeln!(f, "k={}", self.k)?;
        writeln!(f, "k_prime={}", self.k_prime)?;
        for (key, value) in &self.details {
            writeln!(f, "{key}={value}")?;
        }
        writeln!(f, "source_yes={}", self.source_yes)?;
        writeln!(f, "source_opt={}", opt(self.source_opt))?;
        writeln!(f, "target_opt={}", opt(self.target_opt))?;
        writeln!(f, "source_witness={}", list(&self.source_witness))?;
        writeln!(f, "target_witness={}", list(&self.target_witness))?;
        writeln!(f, "claim1={}", self.claim1_holds)?;
        writeln!(f, "claim2={}", self.claim2_holds)
    }
}
