//! Solver configuration files and the enumeration ceiling override.

use std::path::Path;

use anyhow::{bail, Context, Result};
use specturan_core::SolverOptions;

pub const CEILING_VAR: &str = "SPECTURAN_CEILING";

/// Reads a TOML file whose keys are the [`SolverOptions`] fields; missing
/// keys keep their defaults.
pub fn load_solver_options(path: &Path) -> Result<SolverOptions> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_solver_options(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn parse_solver_options(text: &str) -> Result<SolverOptions> {
    let opts: SolverOptions = toml::from_str(text)?;
    opts.validate()?;
    Ok(opts)
}

/// The ceiling from `SPECTURAN_CEILING`, if set: a positive integer that
/// replaces the default maximum order for every uniformity.
pub fn ceiling_from_env() -> Result<Option<usize>> {
    match std::env::var(CEILING_VAR) {
        Ok(v) => parse_ceiling(&v).map(Some),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => bail!("{CEILING_VAR}: {e}"),
    }
}

pub fn parse_ceiling(text: &str) -> Result<usize> {
    match text.trim().parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => bail!("{CEILING_VAR} must be a positive integer, got {text:?}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_config_keeps_defaults() {
        let opts = parse_solver_options("restarts = 4\ntol_residual = 1e-10\n").unwrap();
        assert_eq!(opts.restarts, 4);
        assert_eq!(opts.tol_residual, 1e-10);
        assert_eq!(opts.max_iter, SolverOptions::default().max_iter);
        assert!(parse_solver_options("restarts = 0\n").is_err());
        assert!(parse_solver_options("unknown = 1\nrestarts = 2\n").is_err());
    }

    #[test]
    fn ceiling_values() {
        assert_eq!(parse_ceiling(" 12 ").unwrap(), 12);
        assert!(parse_ceiling("0").is_err());
        assert!(parse_ceiling("ten").is_err());
    }
}
