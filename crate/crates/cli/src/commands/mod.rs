pub mod bh;
pub mod figures;
pub mod pcc;
pub mod sdc;

use rayon::prelude::*;

use crate::args::{global_params, Global};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or parameters; exit code 2.
    Usage(String),
    /// Unreadable input or unwritable output; exit code 3.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<qclone::Error> for CliError {
    fn from(e: qclone::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub struct Ctx {
    pub global: Global,
}

impl Ctx {
    pub fn params(&self) -> Vec<(String, Option<String>)> {
        global_params(&self.global)
    }
}

/// `α_i = i/(n − 1)`.
pub fn alpha_grid(n: usize) -> Vec<f64> {
    (0..n).map(|i| i as f64 / (n - 1) as f64).collect()
}

/// Maps `f` over `xs`, on the rayon pool when `--parallel` is set.
pub fn grid_map<X, Y, F>(ctx: &Ctx, xs: &[X], f: F) -> qclone::Result<Vec<Y>>
where
    X: Sync,
    Y: Send,
    F: Fn(&X) -> qclone::Result<Y> + Sync + Send,
{
    if ctx.global.parallel {
        xs.par_iter().map(&f).collect()
    } else {
        xs.iter().map(&f).collect()
    }
}
