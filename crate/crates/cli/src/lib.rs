//! CLI companion for the d-Bonacci tiling core: figure rendering, JSON
//! export formats and the verification suites behind `bonacci verify`.

pub mod json;
pub mod plot;
pub mod render;
pub mod verify;

/// Default working precision in bits; `BONACCI_PRECISION` overrides it.
pub const DEFAULT_PRECISION: u32 = 192;

pub fn precision_from_env(cli_value: Option<u32>) -> u32 {
    if let Some(p) = cli_value {
        return p;
    }
    std::env::var("BONACCI_PRECISION")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_PRECISION)
}

/// Errors surfaced by the command-line layer. Everything here is a usage
/// or environment problem and maps to exit code 2; failed verification
/// checks are not errors (exit code 1, handled by the verify command).
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] bonacci_core::Error),
    #[error(transparent)]
    Render(#[from] render::RenderError),
    #[error("{0}")]
    Usage(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}
