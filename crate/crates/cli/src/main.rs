use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

use output::CliError;

/// Exact realizations of Verma and θ-Gelfand–Tsetlin modules.
#[derive(Parser, Debug)]
#[command(name = "gtr", version, about)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Root system type, e.g. `A2`, or a letter combined with --rank.
    #[arg(long = "type", global = true, value_name = "TYPE")]
    pub ty: Option<String>,
    #[arg(long, global = true)]
    pub rank: Option<usize>,
    /// Weight as comma-separated rationals over the simple coroots.
    #[arg(long, global = true, allow_hyphen_values = true, value_name = "L1,L2,..")]
    pub lambda: Option<String>,
    /// Degree bound for enumerations and closures.
    #[arg(long, global = true, default_value_t = 4)]
    pub bound: u32,
    /// Seed for randomized runs.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cartan matrix, positive roots, θ and ρ.
    Roots,
    /// Chevalley basis and structure constants.
    Algebra,
    /// Differential operators π_λ(a) or σ_λ(a).
    Realize(RealizeArgs),
    /// Weights, bases and Γ_θ data of W(λ).
    Wmodule {
        #[command(subcommand)]
        cmd: WmoduleCmd,
    },
    /// Central character on A/I_V and A/I_GT, and twisted modules.
    Verma(VermaArgs),
    /// The sl(3) table, ideals, intertwiners and simplicity.
    Sl3 {
        #[command(subcommand)]
        cmd: Sl3Cmd,
    },
    /// Generalized eigenspaces and the isomorphism φ for filtered operators.
    Eigen(EigenArgs),
    /// Run every invariant family; nonzero exit on any violation.
    VerifyAll,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Shift {
    /// π_{λ+ρ}: λ is a highest weight.
    Rho,
    /// π_λ: λ is the subscript.
    None,
}

#[derive(Args, Debug)]
pub struct RealizeArgs {
    /// Basis label (`e[1,1]`, `f[0,1]`, `h1`, `e_theta`, `f_theta`, `h_theta`); all when omitted.
    #[arg(long)]
    pub element: Option<String>,
    #[arg(long, value_enum, default_value_t = Shift::None)]
    pub shift: Shift,
    /// σ_λ instead of π_λ.
    #[arg(long)]
    pub sigma: bool,
}

#[derive(Args, Debug, Clone)]
pub struct AArgs {
    /// a ∈ ℤ^Π, comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum WmoduleCmd {
    /// μ_{λ,a}, or the Γ_θ-characters of all monomials up to --bound.
    Weights(AArgs),
    /// Basis of the weight space of μ_{λ,a} up to --bound.
    Basis(AArgs),
    /// The split π(Cas_θ) = s + n and its checks.
    Casimir,
    /// Dimension of a Γ_θ-weight space.
    GammaMult {
        #[command(flatten)]
        a: AArgs,
        /// Cas_θ eigenvalue; defaults to the value on the lowest x_θ-family.
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
    },
    /// Cyclic-action formulas and closure from the generator.
    Cyclic,
}

#[derive(Args, Debug)]
pub struct VermaArgs {
    /// Reduced word (simple reflection indices from 1) for a twisted check.
    #[arg(long)]
    pub word: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Sl3Cmd {
    /// Compare π_λ with the explicit sl(3) operator table.
    TableCheck,
    /// Simplicity of W(λ - ρ) with evidence; --lambda is the π subscript.
    Simplicity,
    /// Intertwiner for s1, s2 or the longest element.
    Intertwiner {
        #[arg(long, default_value = "s1")]
        case: String,
    },
    /// The eight left ideals and the general rule for I_w.
    Ideals,
}

#[derive(Args, Debug)]
pub struct EigenArgs {
    /// JSON file (`-` for stdin) holding {"grades", "matrix"} or {"ts": .., "tn": ..};
    /// a random pair from --seed when omitted.
    #[arg(long)]
    pub input: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    // internal invariant breaches surface as panics
    std::panic::set_hook(Box::new(|info| eprintln!("internal error: {info}")));
    let res = std::panic::catch_unwind(|| commands::dispatch(&cli));
    match res {
        Ok(Ok(out)) => {
            out.print(cli.common.json);
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Ok(Err(CliError::Usage(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Ok(Err(CliError::Failed(msg))) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(_) => ExitCode::from(3),
    }
}
