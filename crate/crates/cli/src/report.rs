//! Line-oriented `key: value` reports with a fixed field order.

use std::fmt::{self, Display};

use packmech_core::rational::{format_rational, to_decimal};
use packmech_core::Rational;

const DECIMAL_DIGITS: usize = 6;

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Report {
    lines: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn field(&mut self, key: impl Into<String>, value: impl Display) -> &mut Self {
        self.lines.push((key.into(), value.to_string()));
        self
    }

    /// Exact value followed by a decimal annotation: `21/5 (~4.200000)`.
    pub fn rational(&mut self, key: impl Into<String>, value: &Rational) -> &mut Self {
        self.field(key, exact_with_decimal(value))
    }
}

pub fn exact_with_decimal(value: &Rational) -> String {
    format!(
        "{} (~{})",
        format_rational(value),
        to_decimal(value, DECIMAL_DIGITS)
    )
}

/// `{0,1}` style set rendering.
pub fn agent_set<'a>(agents: impl IntoIterator<Item = &'a usize>) -> String {
    let parts: Vec<String> = agents.into_iter().map(|a| a.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

impl Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.lines {
            writeln!(f, "{k}: {v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use packmech_core::rational::rat;

    #[test]
    fn renders_in_insertion_order() {
        let mut r = Report::new();
        r.field("verdict", "PASS").rational("value", &rat(21, 5));
        r.field("bin 0", agent_set(&[0, 1]));
        assert_eq!(
            r.to_string(),
            "verdict: PASS\nvalue: 21/5 (~4.200000)\nbin 0: {0,1}\n"
        );
    }
}
