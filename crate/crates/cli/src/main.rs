mod commands;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Compile polynomial programs to QAPs and prove statements about them.
#[derive(Parser)]
#[command(name = "snarkpipe", version, about)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Global {
    /// Prime field modulus, decimal. Defaults to 2^64 - 2^32 + 1.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Group backend used for keys and proofs.
    #[arg(long, global = true, value_enum, default_value_t = Backend::Transparent)]
    pub backend: Backend,
    /// Hex-encoded seed for every random choice.
    #[arg(long, global = true, default_value = "")]
    pub seed: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    /// Elements carry their discrete logs; computable pairing, insecure.
    Transparent,
    /// Residues mod p; no pairing, so setup, prove and verify refuse it.
    Modular,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and flatten a .zkp program into a circuit.
    Compile {
        source: PathBuf,
        #[arg(short, long, default_value = "circuit.json")]
        out: PathBuf,
        /// Also write the QAP polynomials.
        #[arg(long, value_name = "PATH")]
        emit_qap: Option<PathBuf>,
    },
    /// Generate the evaluation and verification keys for a circuit.
    Setup {
        #[arg(default_value = "circuit.json")]
        circuit: PathBuf,
        /// Symbols whose values the verifier supplies.
        #[arg(long, value_delimiter = ',')]
        public: Vec<String>,
        #[arg(long, default_value = "evaluation_key.json")]
        ek: PathBuf,
        #[arg(long, default_value = "verification_key.json")]
        vk: PathBuf,
    },
    /// Produce a witness key from input values.
    Prove {
        #[arg(default_value = "circuit.json")]
        circuit: PathBuf,
        /// JSON object mapping input names to decimal values.
        #[arg(long)]
        inputs: PathBuf,
        #[arg(long, default_value = "evaluation_key.json")]
        ek: PathBuf,
        #[arg(short, long, default_value = "witness_key.json")]
        out: PathBuf,
    },
    /// Check a witness key. Exits 0 on accept and 2 on reject.
    Verify {
        #[arg(long, default_value = "verification_key.json")]
        vk: PathBuf,
        #[arg(long, default_value = "witness_key.json")]
        proof: PathBuf,
        /// JSON object with values for the public symbols.
        #[arg(long)]
        public_inputs: Option<PathBuf>,
    },
    /// Run the interactive commit-and-reveal protocol.
    Interactive {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long, default_value_t = 10)]
        rounds: usize,
        /// Run a prover that does not use the solution.
        #[arg(long)]
        cheat: bool,
        /// Run this many independent sessions and report the acceptance rate.
        #[arg(long)]
        repeat: Option<u64>,
        #[arg(short, long, default_value = "transcript.json")]
        out: PathBuf,
    },
    /// Run the bundled pipeline and invariant checks.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let result = match cli.command {
        Command::Compile { source, out, emit_qap } => commands::compile(g, &source, &out, emit_qap.as_deref()),
        Command::Setup { circuit, public, ek, vk } => commands::setup(g, &circuit, &public, &ek, &vk),
        Command::Prove { circuit, inputs, ek, out } => commands::prove(g, &circuit, &inputs, &ek, &out),
        Command::Verify { vk, proof, public_inputs } => commands::verify(g, &vk, &proof, public_inputs.as_deref()),
        Command::Interactive { problem, rounds, cheat, repeat, out } => {
            commands::interactive(g, &problem, rounds, cheat, repeat, &out)
        }
        Command::Selftest => selftest::run(),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            commands::exit_code_for(&e)
        }
    }
}
