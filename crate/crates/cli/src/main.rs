use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use symdet_cli::{
    cmd_refined, cmd_sym, cmd_table, cmd_verify, parse_shape, render_refined, render_sym,
    render_table, render_verify, CliError, Format, Scope,
};
use symdet_core::par::Exec;

/// Exact determinants of tensor symmetrizations of a bilinear form.
#[derive(Parser, Debug)]
#[command(name = "symdet", version)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads (default: all cores). `1` runs sequentially.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Golden tables to verify against instead of the embedded copy.
    #[arg(long, global = true)]
    golden: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Blocks, c(λ,N) and det Sym_λ(B) for one shape, e.g. `3,1^2`.
    Sym { shape: String },
    /// Dimension and c(λ,N) for every λ ⊢ n, 2 ≤ n ≤ N_MAX.
    Table {
        #[arg(long = "n")]
        n_max: usize,
    },
    /// Orthogonal constituents and det Sym'_λ(B).
    Refined { shape: String },
    /// Recompute and compare against the golden tables.
    Verify {
        #[arg(long, value_enum, default_value_t = Scope::All)]
        scope: Scope,
    },
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let exec = match cli.jobs {
        Some(0) => return Err(CliError::Usage(anyhow::anyhow!("--jobs must be positive"))),
        Some(1) => Exec::Sequential,
        Some(j) => {
            rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build_global()
                .map_err(|e| CliError::Failed(e.into()))?;
            Exec::Parallel
        }
        None => Exec::default(),
    };
    let (text, ok) = match cli.command {
        Command::Sym { shape } => {
            let r = cmd_sym(&parse_shape(&shape)?, exec)?;
            (render_sym(&r, cli.format), true)
        }
        Command::Table { n_max } => (render_table(&cmd_table(n_max, exec)?, cli.format), true),
        Command::Refined { shape } => {
            let r = cmd_refined(&parse_shape(&shape)?, exec)?;
            (render_refined(&r, cli.format), true)
        }
        Command::Verify { scope } => {
            let v = cmd_verify(scope, cli.golden.as_deref(), exec)?;
            (render_verify(&v, cli.format), v.ok())
        }
    };
    print!("{text}");
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("symdet: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
