use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use influence::commands::{self, CheckerboardOptions, Method, ParticleOptions, ParticleSource, Propagator, QuantifyOptions};
use influence::run::{resolve_out_dir, OUT_DIR_ENV};
use influence::{CliError, Emit, ExitKind, Outcome, RunConfig};
use influence_core::kinematics::Move;
use influence_core::scalar::parse_rational;
use influence_core::Rational;

const EXIT_CODES: &str = "Exit codes: 0 success, 1 domain violation, 2 I/O or parse error, 3 resource cap.";

#[derive(Parser)]
#[command(name = "influence", version, about = "Causal posets, influence kinematics and checkerboard kernels")]
#[command(after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Output {
    /// Artifact written to stdout; with an output directory, `svg` adds a chart.
    #[arg(long, value_enum, default_value_t = Emit::Csv)]
    emit: Emit,
    /// Directory for the report, every table and the chart. Defaults to $INFLUENCE_OUT_DIR.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a poset document: cross-chain influence, acyclicity, chain totality.
    Validate {
        file: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Per-event projections onto one observer chain, or coordinates from two.
    ///
    /// Columns p_fwd/p_bwd (and q_fwd/q_bwd) are chain values of the forward
    /// and backward projections; t and x are (p_fwd + q_fwd)/2 and
    /// (p_fwd - q_fwd)/2. Missing projections are written as null.
    Quantify {
        file: PathBuf,
        #[arg(long)]
        chain: String,
        #[arg(long)]
        chain2: Option<String>,
        /// Unit of length per chain step.
        #[arg(long, default_value = "1", value_parser = rational)]
        mu: Rational,
        /// Check coordination between chain positions START:END (zero based).
        #[arg(long, value_parser = position_range)]
        coordination: Option<(usize, usize)>,
        #[command(flatten)]
        output: Output,
    },
    /// Influence sequences, their zig-zag paths and rate-based kinematics.
    ///
    /// A P-move steps (t, x) by (+1/2, +1/2) with beta = +1, a Q-move by
    /// (+1/2, -1/2) with beta = -1. Rates are r_P = N/dp and r_Q = N/dq; the
    /// momentum is (r_Q - r_P)/2, so a particle that influences P more often
    /// has negative momentum.
    #[command(group(ArgGroup::new("source").required(true).args(["counts", "sequence", "random"])))]
    Particle {
        /// Unordered counts P,Q.
        #[arg(long, value_parser = counts)]
        counts: Option<(u64, u64)>,
        /// Move string such as PPQPQ.
        #[arg(long)]
        sequence: Option<String>,
        /// Random sequence LENGTH,PROB_P,SEED.
        #[arg(long, value_parser = random_spec)]
        random: Option<(usize, f64, u64)>,
        /// Direction of the move preceding the sequence.
        #[arg(long, value_parser = helicity)]
        initial: Option<Move>,
        #[arg(long, value_parser = rational)]
        dp: Option<Rational>,
        #[arg(long, value_parser = rational)]
        dq: Option<Rational>,
        /// Number of influence events N; defaults to the sequence length.
        #[arg(long, value_parser = rational)]
        events: Option<Rational>,
        /// List every ordering of the counts.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Amplitude kernel on the checkerboard lattice.
    ///
    /// Step t at site x is reported at the half-unit point (t/2, x/2). The
    /// propagator is a = cos(theta), b = sin(theta); --mass and --eps give
    /// theta = mass * eps. Without either the zero-momentum pair a = b = 1/sqrt 2
    /// is used. The path-sum method is limited to 20 steps.
    #[command(group(ArgGroup::new("prop").args(["theta", "mass"])))]
    Checkerboard {
        #[arg(long)]
        steps: usize,
        #[arg(long, requires = "eps")]
        mass: Option<f64>,
        #[arg(long, requires = "mass")]
        eps: Option<f64>,
        #[arg(long, conflicts_with = "eps")]
        theta: Option<f64>,
        #[arg(long, value_parser = helicity, default_value = "P")]
        initial: Move,
        #[arg(long, value_enum, default_value_t = Method::Matrix)]
        method: Method,
        #[command(flatten)]
        output: Output,
    },
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn helicity(s: &str) -> Result<Move, String> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Move::from_symbol(c).map_err(|e| e.to_string()),
        _ => Err(format!("expected P or Q, got {s:?}")),
    }
}

fn counts(s: &str) -> Result<(u64, u64), String> {
    let (p, q) = s.split_once(',').ok_or("expected P,Q")?;
    Ok((p.trim().parse().map_err(|e| format!("{e}"))?, q.trim().parse().map_err(|e| format!("{e}"))?))
}

fn random_spec(s: &str) -> Result<(usize, f64, u64), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [len, prob, seed] = parts[..] else {
        return Err("expected LENGTH,PROB_P,SEED".into());
    };
    Ok((
        len.parse().map_err(|e| format!("length: {e}"))?,
        prob.parse().map_err(|e| format!("probability: {e}"))?,
        seed.parse().map_err(|e| format!("seed: {e}"))?,
    ))
}

fn position_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or("expected START:END")?;
    let (a, b): (usize, usize) = (a.parse().map_err(|e| format!("{e}"))?, b.parse().map_err(|e| format!("{e}"))?);
    if a > b {
        return Err(format!("empty range {a}:{b}"));
    }
    Ok((a, b))
}

fn config(name: &str, output: &Output, dir: &Option<PathBuf>) -> RunConfig {
    let mut c = RunConfig::new(name, output.emit);
    c.output = dir.clone();
    c
}

fn run(cli: Cli) -> Result<(Outcome, Emit, Option<PathBuf>), CliError> {
    let (outcome, output) = match cli.command {
        Command::Validate { file, output } => {
            let dir = resolve_out_dir(output.out.clone());
            let mut c = config("validate", &output, &dir);
            c.input = Some(file.clone());
            (commands::validate(file, c)?, output)
        }
        Command::Quantify {
            file,
            chain,
            chain2,
            mu,
            coordination,
            output,
        } => {
            let dir = resolve_out_dir(output.out.clone());
            let mut c = config("quantify", &output, &dir);
            c.input = Some(file.clone());
            let opts = QuantifyOptions {
                input: file,
                chain,
                chain2,
                mu,
                coordination,
            };
            (commands::quantify(opts, c)?, output)
        }
        Command::Particle {
            counts,
            sequence,
            random,
            initial,
            dp,
            dq,
            events,
            list,
            output,
        } => {
            let dir = resolve_out_dir(output.out.clone());
            let mut c = config("particle", &output, &dir);
            let source = match (counts, sequence, random) {
                (Some((p, q)), _, _) => ParticleSource::Counts(p, q),
                (_, Some(s), _) => ParticleSource::Sequence(s),
                (_, _, Some((length, prob_p, seed))) => {
                    c.seed = Some(seed);
                    ParticleSource::Random { length, prob_p, seed }
                }
                _ => unreachable!("clap requires one source"),
            };
            let opts = ParticleOptions {
                source,
                initial,
                dp,
                dq,
                events,
                list,
            };
            (commands::particle(opts, c)?, output)
        }
        Command::Checkerboard {
            steps,
            mass,
            eps,
            theta,
            initial,
            method,
            output,
        } => {
            let dir = resolve_out_dir(output.out.clone());
            let c = config("checkerboard", &output, &dir);
            let propagator = match (theta, mass, eps) {
                (Some(t), _, _) => Propagator::Angle(t),
                (None, Some(mass), Some(epsilon)) => Propagator::Mass { mass, epsilon },
                _ => Propagator::ZeroMomentum,
            };
            let opts = CheckerboardOptions {
                steps,
                propagator,
                initial,
                method,
            };
            let outcome = commands::checkerboard(opts, c).map_err(|e| match e {
                CliError::Cap(msg) => CliError::Cap(format!("{msg} (for example --method matrix)")),
                other => other,
            })?;
            (outcome, output)
        }
    };
    let dir = resolve_out_dir(output.out);
    Ok((outcome, output.emit, dir))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { ExitKind::Input as u8 } else { 0 });
        }
    };
    let result = run(cli).and_then(|(outcome, emit, dir)| {
        let stdout = std::io::stdout();
        let mut lock = stdout.lock();
        let written = outcome.artifacts.emit(emit, dir.as_deref(), &mut lock)?;
        let _ = lock.flush();
        for note in &outcome.notes {
            eprintln!("{note}");
        }
        for path in written {
            eprintln!("wrote {}", path.display());
        }
        Ok(outcome.status)
    });
    match result {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Write { .. } = e {
                eprintln!("hint: check the --out directory or ${OUT_DIR_ENV}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
