use crate::bench::{append_csv, sweep, Algo};
use crate::io::{
    concat_with_separator, dump_fsd, load_instance, load_trajectory, points, save_instance, write_json, FsdFormat,
    InstanceFile, IoError,
};
use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use sc_continuous::{sc_decide_continuous, sc_decide_continuous_v2v};
use sc_discrete::{frechet_decide_discrete, sc_decide_discrete};
use sc_freespace::build_continuous_fsd;
use sc_generators::{gen_3ov, gen_and_gadget, gen_bringmann, gen_density, gen_or_gadget, GadgetPair, ThreeOVInput};
use sc_geometry::{SCInstance, SCWitness, Trajectory};
use sc_oracles::{
    continuous_frechet_decide_oracle, discrete_frechet_dp, sc_continuous_bruteforce, sc_discrete_bruteforce,
    GridResolution, MarginCertificate,
};
use sc_reachgraph::frechet_decide_continuous;
use serde::Serialize;
use serde_json::json;
use std::ffi::OsString;
use std::path::PathBuf;

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser)]
#[command(name = "sc-cli", about = "Subtrajectory clustering and Fréchet decisions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Fréchet distance decisions.
    Frechet {
        #[command(subcommand)]
        cmd: FrechetCmd,
    },
    /// Subtrajectory clustering decisions.
    Sc {
        #[command(subcommand)]
        cmd: ScCmd,
    },
    /// Instance generators.
    Gen {
        #[command(subcommand)]
        cmd: GenCmd,
    },
    /// Free-space diagram output.
    Fsd {
        #[command(subcommand)]
        cmd: FsdCmd,
    },
    /// Benchmark harness.
    Bench {
        #[command(subcommand)]
        cmd: BenchCmd,
    },
    /// Brute-force reference procedures.
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Discrete,
    Continuous,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    #[arg(long)]
    d: f64,
}

#[derive(Subcommand)]
enum FrechetCmd {
    Decide {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Use the reference procedure instead of the free-space decider.
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Subcommand)]
enum ScCmd {
    Decide {
        /// Instance file; repeat to cluster several trajectories at once.
        #[arg(long = "in", required = true)]
        input: Vec<PathBuf>,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        vertex2vertex: bool,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    Bringmann {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    Density {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    Or {
        #[arg(long, action = ArgAction::Set)]
        x: bool,
        #[arg(long, action = ArgAction::Set)]
        z: bool,
        #[arg(long)]
        out: PathBuf,
    },
    And {
        /// Bit string such as `101`.
        #[arg(long)]
        x: String,
        #[arg(long)]
        z: String,
        #[arg(long)]
        out: PathBuf,
    },
    Threeov {
        /// Comma-separated bit strings, one per vector.
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        z: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum FsdCmd {
    Dump {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        internal: bool,
        #[arg(long, requires = "internal")]
        ell: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum BenchCmd {
    Sweep {
        #[arg(long)]
        algo: String,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        seeds: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    Frechet {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_enum)]
        mode: Mode,
    },
    Sc {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Grid resolution for the continuous oracle.
        #[arg(long, default_value_t = 64)]
        res: usize,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure::Usage(msg.to_string())
}

fn check_d(d: f64) -> Result<(), Failure> {
    if d.is_finite() && d >= 0.0 {
        Ok(())
    } else {
        Err(usage(format!("invalid distance {d}")))
    }
}

fn load_instances(paths: &[PathBuf]) -> Result<(SCInstance, InstanceFile), Failure> {
    let files = paths.iter().map(|p| load_instance(p)).collect::<Result<Vec<_>, _>>()?;
    let first = files[0].clone();
    if files.iter().any(|f| f.m != first.m || f.ell != first.ell || f.d != first.d) {
        return Err(usage("instance files disagree on m, ell or d"));
    }
    let mut inst = first.instance().map_err(usage)?;
    if files.len() > 1 {
        let parts: Vec<Trajectory> = files.iter().map(|f| f.instance().map(|i| i.t)).collect::<Result<_, _>>().map_err(usage)?;
        let (t, seps) = concat_with_separator(&parts);
        inst.t = t;
        let mut f = InstanceFile::from_instance(&inst);
        f.meta = Some(json!({ "separator": "far point at 4x bounding-box diameter", "separator_vertices": seps }));
        return Ok((inst, f));
    }
    Ok((inst, first))
}

#[derive(Serialize)]
struct WitnessFile<'a> {
    answer: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a SCWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    meta: Option<&'a serde_json::Value>,
}

fn sc_decide(input: &[PathBuf], mode: Mode, v2v: bool, out: Option<&PathBuf>) -> Outcome {
    let (inst, file) = load_instances(input)?;
    let (yes, witness) = match (mode, v2v) {
        (Mode::Discrete, _) => {
            let r = sc_decide_discrete(&inst);
            let n = inst.t.len();
            if !r.stats.link_cut_budget_ok(n) || r.stats.revisit_violations > 0 {
                return Err(Failure::Internal(format!("sweep budget exceeded: {:?}", r.stats)));
            }
            (r.yes, r.witness)
        }
        (Mode::Continuous, false) => {
            let r = sc_decide_continuous(&inst);
            (r.yes, r.witness)
        }
        (Mode::Continuous, true) => {
            let r = sc_decide_continuous_v2v(&inst);
            (r.yes, r.witness)
        }
    };
    if yes != witness.is_some() {
        return Err(Failure::Internal("answer and witness disagree".into()));
    }
    if let Some(path) = out {
        write_json(&WitnessFile { answer: yes, witness: witness.as_ref(), meta: file.meta.as_ref() }, path)?;
    }
    Ok(yes)
}

fn bits(s: &str) -> Result<Vec<bool>, Failure> {
    s.trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(usage(format!("bad bit {c:?} in {s:?}"))),
        })
        .collect()
}

fn bit_list(s: &str) -> Result<Vec<Vec<bool>>, Failure> {
    s.split(',').map(bits).collect()
}

fn gadget_json(g: &GadgetPair, family: &str) -> serde_json::Value {
    json!({ "t1": points(&g.t1), "t2": points(&g.t2), "d": g.d, "w": g.w, "margin": g.margin, "meta": { "family": family } })
}

fn generate(cmd: &GenCmd) -> Outcome {
    match cmd {
        GenCmd::Bringmann { a, b, out } => {
            let inst = gen_bringmann(&load_trajectory(a)?, &load_trajectory(b)?).map_err(usage)?;
            let mut f = InstanceFile::from_instance(&inst);
            f.meta = Some(json!({ "family": "bringmann" }));
            save_instance(&f, out)?;
        }
        GenCmd::Density { n, out } => {
            let g = gen_density(*n);
            let copies = n.max(&1);
            let inst = SCInstance::new(g.t.clone(), copies + 2, g.t1.total_length(), g.d);
            let mut f = InstanceFile::from_instance(&inst);
            f.meta = Some(json!({
                "family": "density",
                "n": copies,
                "t1": points(&g.t1),
                "t2": points(&g.t2),
                "expected_kind2_per_copy": g.expected_kind2_per_copy,
            }));
            save_instance(&f, out)?;
        }
        GenCmd::Or { x, z, out } => write_json(&gadget_json(&gen_or_gadget(*x, *z), "or"), out)?,
        GenCmd::And { x, z, out } => {
            let g = gen_and_gadget(&bits(x)?, &bits(z)?).map_err(usage)?;
            write_json(&gadget_json(&g, "and"), out)?
        }
        GenCmd::Threeov { x, y, z, out } => {
            let input = ThreeOVInput::new(bit_list(x)?, bit_list(y)?, bit_list(z)?).map_err(usage)?;
            let g = gen_3ov(&input).map_err(usage)?;
            let mut f = InstanceFile::from_instance(&g.instance);
            f.margin = Some(g.margin.slack);
            f.meta = Some(json!({
                "family": "threeov",
                "n": g.params.n,
                "w": g.params.w,
                "orthogonal": input.orthogonal_triple().is_some(),
                "references": g.references,
            }));
            save_instance(&f, out)?;
        }
    }
    Ok(true)
}

fn oracle(cmd: &OracleCmd) -> Outcome {
    match cmd {
        OracleCmd::Frechet { pair, mode } => {
            check_d(pair.d)?;
            let (a, b) = (load_trajectory(&pair.a)?, load_trajectory(&pair.b)?);
            Ok(match mode {
                Mode::Discrete => discrete_frechet_dp(&a, &b) <= pair.d + sc_geometry::slack(pair.d),
                Mode::Continuous => continuous_frechet_decide_oracle(&a, &b, pair.d),
            })
        }
        OracleCmd::Sc { input, mode, res } => {
            let f = load_instance(input)?;
            let inst = f.instance().map_err(usage)?;
            match mode {
                Mode::Discrete => sc_discrete_bruteforce(&inst).map(|r| r.yes).map_err(usage),
                Mode::Continuous => {
                    let cert = f.margin.map(|slack| MarginCertificate { slack });
                    let res = GridResolution::new(*res).map_err(usage)?;
                    sc_continuous_bruteforce(&inst, res, cert.as_ref()).map_err(usage)
                }
            }
        }
    }
}

fn dispatch(cli: Cli) -> Outcome {
    match cli.cmd {
        Cmd::Frechet { cmd: FrechetCmd::Decide { pair, mode, oracle: use_oracle } } => {
            if use_oracle {
                return oracle(&OracleCmd::Frechet { pair, mode });
            }
            check_d(pair.d)?;
            let (a, b) = (load_trajectory(&pair.a)?, load_trajectory(&pair.b)?);
            Ok(match mode {
                Mode::Discrete => frechet_decide_discrete(&a, &b, pair.d),
                Mode::Continuous => frechet_decide_continuous(&a, &b, pair.d),
            })
        }
        Cmd::Sc { cmd: ScCmd::Decide { input, mode, vertex2vertex, witness } } => {
            sc_decide(&input, mode, vertex2vertex, witness.as_ref())
        }
        Cmd::Gen { cmd } => generate(&cmd),
        Cmd::Fsd { cmd: FsdCmd::Dump { pair, format, internal, ell, out } } => {
            check_d(pair.d)?;
            let format: FsdFormat = format.parse()?;
            let fsd = build_continuous_fsd(&load_trajectory(&pair.a)?, &load_trajectory(&pair.b)?, pair.d);
            dump_fsd(&fsd, format, internal.then_some(ell), &out)?;
            Ok(true)
        }
        Cmd::Bench { cmd: BenchCmd::Sweep { algo, sizes, seeds, out } } => {
            let algo: Algo = algo.parse().map_err(usage)?;
            let rows = sweep(algo, &sizes, seeds);
            append_csv(&rows, &out).map_err(usage)?;
            for r in &rows {
                if algo == Algo::Discrete && r.links + r.cuts > 6 * (r.n as u64).pow(2) {
                    return Err(Failure::Internal(format!("link/cut budget exceeded at n = {}", r.n)));
                }
            }
            Ok(true)
        }
        Cmd::Oracle { cmd } => oracle(&cmd),
    }
}

/// Runs the command line; returns the process exit code.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
        }
    };
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| dispatch(cli))) {
        Ok(Ok(true)) => EXIT_YES,
        Ok(Ok(false)) => EXIT_NO,
        Ok(Err(Failure::Usage(msg))) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Ok(Err(Failure::Internal(msg))) => {
            eprintln!("internal error: {msg}");
            EXIT_INTERNAL
        }
        Err(_) => EXIT_INTERNAL,
    }
}
