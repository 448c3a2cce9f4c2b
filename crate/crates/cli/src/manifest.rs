use std::fmt::Write as _;
use std::time::Duration;

use crate::{OrderArg, SolverFlags};

/// What a run was asked to do, printed ahead of its results.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Vec<String>,
    pub order: OrderArg,
    pub seed: u64,
    pub exact: bool,
    pub exact_limit: usize,
    pub lp: bool,
    pub version: String,
    /// Only filled when timings were requested.
    pub timings: Vec<(String, Duration)>,
}

impl RunManifest {
    pub(crate) fn new(command: &str, inputs: Vec<String>, flags: &SolverFlags) -> Self {
        RunManifest {
            command: command.to_string(),
            inputs,
            order: flags.order,
            seed: flags.seed,
            exact: flags.exact,
            exact_limit: flags.exact_limit,
            lp: flags.lp,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timings: Vec::new(),
        }
    }

    pub fn to_lines(&self) -> String {
        let onoff = |b: bool| if b { "on" } else { "off" };
        let order = match self.order {
            OrderArg::Ascending => "ascending",
            OrderArg::Shuffle => "shuffle",
        };
        let mut out = String::new();
        writeln!(out, "command={}", self.command).unwrap();
        for i in &self.inputs {
            writeln!(out, "input={i}").unwrap();
        }
        writeln!(
            out,
            "order={order} seed={} exact={} exact_limit={} lp={}",
            self.seed,
            onoff(self.exact),
            self.exact_limit,
            onoff(self.lp)
        )
        .unwrap();
        writeln!(out, "version={}", self.version).unwrap();
        out
    }

    /// `time_<name>_us=<micros>` pairs on one line, or nothing.
    pub fn timing_line(&self) -> String {
        if self.timings.is_empty() {
            return String::new();
        }
        let parts: Vec<String> = self
            .timings
            .iter()
            .map(|(k, d)| format!("time_{k}_us={}", d.as_micros()))
            .collect();
        format!("{}\n", parts.join(" "))
    }
}

/// Re-renders `key=value` tokens as an aligned two-column listing.
pub(crate) fn pretty(line: &str) -> String {
    let width = line
        .split_whitespace()
        .filter_map(|t| t.split_once('=').map(|(k, _)| k.len()))
        .max()
        .unwrap_or(0)
        .max(14)
        + 2;
    let mut out = String::new();
    for token in line.split_whitespace() {
        match token.split_once('=') {
            Some((k, v)) => writeln!(out, "  {k:<width$}{v}").unwrap(),
            None => writeln!(out, "  {token}").unwrap(),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pretty_aligns_pairs() {
        assert_eq!(
            pretty("n=5 F=4"),
            "  n               5\n  F               4\n"
        );
    }

    #[test]
    fn timings_are_opt_in() {
        let mut m = RunManifest {
            command: "solve".into(),
            inputs: vec!["a.ec2".into()],
            order: OrderArg::Ascending,
            seed: 0,
            exact: false,
            exact_limit: 14,
            lp: true,
            version: "0.1.0".into(),
            timings: Vec::new(),
        };
        assert_eq!(
            m.to_lines(),
            "command=solve\ninput=a.ec2\norder=ascending seed=0 exact=off exact_limit=14 lp=on\nversion=0.1.0\n"
        );
        assert_eq!(m.timing_line(), "");
        m.timings
            .push(("total".into(), Duration::from_micros(1500)));
        assert_eq!(m.timing_line(), "time_total_us=1500\n");
    }
}
