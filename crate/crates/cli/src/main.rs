use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, ValueEnum};

use slidetok::oracle::{
    self, crosscheck_exhaustive, crosscheck_random, gen_instance, GenClass, Report,
};
use slidetok::{
    format_moves, parse_moves, solve, validate_sequence, Class, ClassChoice, IndependentSet,
    Instance, Outcome, ReconfigSequence,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Command {
    /// Shortest sequence or a reason why none exists.
    Solve,
    /// Check a move sequence against an instance.
    Verify,
    /// Exhaustive breadth-first search.
    Oracle,
    /// Print a random instance.
    Gen,
    /// Compare solver and oracle over many instances.
    Crosscheck,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    Auto,
    Proper,
    Tp,
    Caterpillar,
}

impl ClassArg {
    fn choice(self) -> ClassChoice {
        match self {
            ClassArg::Auto => ClassChoice::Auto,
            ClassArg::Proper => ClassChoice::Only(Class::Proper),
            ClassArg::Tp => ClassChoice::Only(Class::TriviallyPerfect),
            ClassArg::Caterpillar => ClassChoice::Only(Class::Caterpillar),
        }
    }

    fn gen_classes(self) -> Vec<GenClass> {
        match self {
            ClassArg::Auto => vec![GenClass::Proper, GenClass::Tp, GenClass::Caterpillar],
            ClassArg::Proper => vec![GenClass::Proper],
            ClassArg::Tp => vec![GenClass::Tp],
            ClassArg::Caterpillar => vec![GenClass::Caterpillar],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Count {
    Exhaustive,
    Random(usize),
}

impl FromStr for Count {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("exhaustive") {
            return Ok(Count::Exhaustive);
        }
        s.parse()
            .map(Count::Random)
            .map_err(|_| format!("expected a number or `exhaustive`, got `{s}`"))
    }
}

/// Token sliding between independent sets on proper interval graphs,
/// trivially perfect graphs and caterpillars.
#[derive(Debug, Parser)]
#[command(name = "slidetok", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Solver class. For `gen`, `auto` is not allowed; for `crosscheck` it
    /// runs all three.
    #[arg(long, value_enum, default_value = "auto")]
    class: ClassArg,
    /// Instance file; standard input if omitted.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Output file; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Move sequence file for `verify`.
    #[arg(long)]
    seq: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Vertex count for `gen`; largest vertex count for `crosscheck`.
    #[arg(long)]
    n: Option<usize>,
    /// Token count for `gen`; largest token count for exhaustive `crosscheck`.
    #[arg(long)]
    k: Option<usize>,
    /// Number of random instances, or `exhaustive`.
    #[arg(long, default_value = "exhaustive")]
    count: Count,
    /// Cap on states explored by the oracle.
    #[arg(long, default_value_t = oracle::DEFAULT_BUDGET)]
    budget: usize,
    /// Worker threads for `crosscheck`; 0 means one per core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

const YES: u8 = 0;
const NO: u8 = 1;

fn read_text(path: Option<&PathBuf>) -> Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
        }
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .context("reading standard input")?;
            Ok(s)
        }
    }
}

fn read_instance(path: Option<&PathBuf>) -> Result<Instance> {
    let text = read_text(path)?;
    Instance::parse(&text).map_err(|e| anyhow!("instance: {e}"))
}

fn sets(inst: &Instance) -> Result<(slidetok::Graph, IndependentSet, IndependentSet)> {
    let g = inst.graph();
    let blue =
        IndependentSet::new(&g, inst.blue.iter().copied()).map_err(|e| anyhow!("blue set: {e}"))?;
    let red =
        IndependentSet::new(&g, inst.red.iter().copied()).map_err(|e| anyhow!("red set: {e}"))?;
    Ok((g, blue, red))
}

fn yes_text(moves: &[slidetok::Move]) -> String {
    format!("YES\n{}", format_moves(moves))
}

fn cmd_solve(cli: &Cli, out: &mut dyn Write) -> Result<u8> {
    let inst = read_instance(cli.input.as_ref())?;
    let (_, outcome) = solve(&inst, cli.class.choice())?;
    match outcome {
        Outcome::Yes(seq) => {
            out.write_all(yes_text(&seq.moves).as_bytes())?;
            Ok(YES)
        }
        Outcome::No(w) => {
            writeln!(out, "{w}")?;
            Ok(NO)
        }
    }
}

fn cmd_verify(cli: &Cli, out: &mut dyn Write) -> Result<u8> {
    let Some(seq_path) = &cli.seq else {
        bail!("verify needs --seq");
    };
    let inst = read_instance(cli.input.as_ref())?;
    let moves = parse_moves(&read_text(Some(seq_path))?).map_err(|e| anyhow!("sequence: {e}"))?;
    let (g, blue, red) = sets(&inst)?;
    let seq = ReconfigSequence {
        initial: blue.clone(),
        moves,
    };
    match validate_sequence(&g, &blue, &red, &seq) {
        Ok(()) => {
            writeln!(out, "OK")?;
            Ok(YES)
        }
        Err(v) => {
            writeln!(out, "INVALID {v}")?;
            Ok(NO)
        }
    }
}

fn cmd_oracle(cli: &Cli, out: &mut dyn Write) -> Result<u8> {
    let inst = read_instance(cli.input.as_ref())?;
    let (g, blue, red) = sets(&inst)?;
    let r = oracle::bfs(&g, &blue, &red, cli.budget)?;
    eprintln!("STATES {}", r.states_explored);
    match r.sequence {
        Some(seq) => {
            out.write_all(yes_text(&seq.moves).as_bytes())?;
            Ok(YES)
        }
        None => {
            writeln!(out, "NO")?;
            Ok(NO)
        }
    }
}

fn size_args(cli: &Cli) -> Result<(usize, usize)> {
    let n = cli.n.ok_or_else(|| anyhow!("--n is required"))?;
    let k = cli.k.ok_or_else(|| anyhow!("--k is required"))?;
    Ok((n, k))
}

fn cmd_gen(cli: &Cli, out: &mut dyn Write) -> Result<u8> {
    let [class] = cli.class.gen_classes()[..] else {
        bail!("gen needs --class proper, tp or caterpillar");
    };
    let (n, k) = size_args(cli)?;
    let inst = gen_instance(class, n, k, cli.seed)?;
    write!(out, "{inst}")?;
    Ok(YES)
}

fn cmd_crosscheck(cli: &Cli, out: &mut dyn Write) -> Result<u8> {
    let (n, k) = size_args(cli)?;
    let mut report = Report::default();
    for class in cli.class.gen_classes() {
        let r = match cli.count {
            Count::Exhaustive => crosscheck_exhaustive(class, n, k, cli.budget, cli.jobs),
            Count::Random(c) => crosscheck_random(class, n, k, c, cli.seed, cli.budget, cli.jobs),
        };
        report.checked += r.checked;
        report.mismatches.extend(r.mismatches);
    }
    write!(out, "{report}")?;
    Ok(if report.mismatches.is_empty() {
        YES
    } else {
        NO
    })
}

fn run(cli: &Cli) -> Result<u8> {
    let mut buf: Vec<u8> = Vec::new();
    let code = match cli.command {
        Command::Solve => cmd_solve(cli, &mut buf),
        Command::Verify => cmd_verify(cli, &mut buf),
        Command::Oracle => cmd_oracle(cli, &mut buf),
        Command::Gen => cmd_gen(cli, &mut buf),
        Command::Crosscheck => cmd_crosscheck(cli, &mut buf),
    }?;
    match &cli.out {
        Some(p) => fs::write(p, &buf).with_context(|| format!("writing {}", p.display()))?,
        None => io::stdout().lock().write_all(&buf)?,
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
