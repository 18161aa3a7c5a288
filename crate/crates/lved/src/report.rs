use std::fmt;

use serde::Serialize;

/// Outcome of one `solve` run. `verdict` always comes from the independent
/// verifier, never from the solver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub instance: String,
    pub algo: String,
    pub n: usize,
    pub m: usize,
    pub size: usize,
    pub solution: Vec<usize>,
    pub time_ns: u64,
    pub ok: bool,
    pub verdict: String,
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "instance {}", self.instance)?;
        writeln!(f, "algo {}", self.algo)?;
        writeln!(f, "n {} m {}", self.n, self.m)?;
        writeln!(f, "size {}", self.size)?;
        write!(f, "set")?;
        for v in &self.solution {
            write!(f, " {v}")?;
        }
        writeln!(f)?;
        writeln!(f, "verdict {}", self.verdict)?;
        write!(f, "time_ns {}", self.time_ns)
    }
}
