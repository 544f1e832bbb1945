use clap::{Parser, Subcommand};
use hecke_cli::job::JobSpec;
use hecke_cli::run::{run, Command, Failure, Options};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hecke", version, about = "Exact spectral computations for affine Hecke algebras")]
struct Cli {
    /// Write the structured report to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Worker threads for enumeration and discovery.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Entry and phase-denominator bound for `stm discover`.
    #[arg(long, global = true)]
    bound: Option<i64>,
    /// Print the convention ledger.
    #[arg(long, global = true)]
    ledger: bool,
    #[command(subcommand)]
    command: Option<Cmd>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate residual cosets up to the Weyl group.
    Residual { jobfile: PathBuf },
    /// Print the mu-function.
    Mu { jobfile: PathBuf },
    /// Regularized residue at the job's point.
    Mres { jobfile: PathBuf },
    /// Formal degrees at residual points, or of a cuspidal table entry.
    Fdeg { jobfile: PathBuf },
    /// Adjoint L-function and gamma factor of the job's parameter.
    Gamma { jobfile: PathBuf },
    /// Compare formal degrees with gamma factors at every residual point.
    Match { jobfile: PathBuf },
    /// Spectral transfer maps.
    Stm {
        #[command(subcommand)]
        op: StmCmd,
    },
}

#[derive(Subcommand)]
enum StmCmd {
    Verify { jobfile: PathBuf },
    Discover { jobfile: PathBuf },
    Compose { jobfile: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.ledger {
        print!("{}", hecke_core::conventions::LEDGER);
    }
    let Some(cmd) = cli.command else {
        return if cli.ledger { ExitCode::SUCCESS } else { fail(&Failure::Input("no command given".into())) };
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            return fail(&Failure::Input(e.to_string()));
        }
    }
    let (command, path) = match cmd {
        Cmd::Residual { jobfile } => (Command::Residual, jobfile),
        Cmd::Mu { jobfile } => (Command::Mu, jobfile),
        Cmd::Mres { jobfile } => (Command::Mres, jobfile),
        Cmd::Fdeg { jobfile } => (Command::Fdeg, jobfile),
        Cmd::Gamma { jobfile } => (Command::Gamma, jobfile),
        Cmd::Match { jobfile } => (Command::Match, jobfile),
        Cmd::Stm { op: StmCmd::Verify { jobfile } } => (Command::StmVerify, jobfile),
        Cmd::Stm { op: StmCmd::Discover { jobfile } } => (Command::StmDiscover, jobfile),
        Cmd::Stm { op: StmCmd::Compose { jobfile } } => (Command::StmCompose, jobfile),
    };
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => return fail(&Failure::Input(format!("{}: {e}", path.display()))),
    };
    let job = match JobSpec::parse(&text) {
        Ok(j) => j,
        Err(e) => return fail(&Failure::Input(format!("{}: {e}", path.display()))),
    };
    let report = match run(command, &job, &Options { bound: cli.bound }) {
        Ok(r) => r,
        Err(f) => return fail(&f),
    };
    print!("{}", report.text);
    if let Some(p) = &cli.json {
        let body = serde_json::to_string_pretty(&report.json).expect("serializable") + "\n";
        if let Err(e) = std::fs::write(p, body) {
            return fail(&Failure::Input(format!("{}: {e}", p.display())));
        }
    }
    match report.failure {
        Some(m) => fail(&Failure::Math(m)),
        None => ExitCode::SUCCESS,
    }
}

fn fail(f: &Failure) -> ExitCode {
    match f {
        Failure::Input(m) => eprintln!("error: {m}"),
        Failure::Math(m) => eprintln!("failed: {m}"),
    }
    ExitCode::from(f.exit_code() as u8)
}
