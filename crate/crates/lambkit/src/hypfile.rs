//! Hypothesis files: one sequent per line, `#` starts a comment.

use std::path::Path;

use anyhow::{Context, Result};
use lambkit_core::syntax::Sequent;

pub fn parse_hypotheses(text: &str) -> Result<Vec<Sequent>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = match line.find('#') {
            Some(k) => &line[..k],
            None => line,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let s: Sequent = line
            .parse()
            .with_context(|| format!("line {}: `{}`", i + 1, line))?;
        out.push(s);
    }
    Ok(out)
}

pub fn read_hypotheses(path: &Path) -> Result<Vec<Sequent>> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_hypotheses(&text).with_context(|| format!("in {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_blanks() {
        let h = parse_hypotheses("# chain\np => q\n\n  q => r  # second\n").unwrap();
        assert_eq!(
            h,
            vec!["p => q".parse().unwrap(), "q => r".parse().unwrap()]
        );
    }

    #[test]
    fn errors_carry_the_line() {
        let e = parse_hypotheses("p => q\np => (q").unwrap_err();
        assert!(format!("{:#}", e).contains("line 2"));
    }
}
