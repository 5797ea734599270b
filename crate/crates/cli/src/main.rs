use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use psplus::completion;
use psplus::families::{self, Family, Graph};
use psplus::ground::{self, GroundOptions};
use psplus::harness;
use psplus::lang::{parse_data, parse_program, Bindings, DataSet, Program, Theory};
use psplus::par::Exec;
use psplus::propcore;
use psplus::solver::{self, Mode};

const EXIT_SAT: u8 = 10;
const EXIT_UNSAT: u8 = 20;

/// Grounder, solver and tools for propositional schemata with cardinality atoms.
#[derive(Parser)]
#[command(name = "psplus", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ground data and program files into the .gnd format
    Ground {
        /// Data files (ground facts)
        #[arg(short = 'd', long = "data", num_args = 1..)]
        data: Vec<PathBuf>,
        /// Program files
        #[arg(short = 'p', long = "program", num_args = 1.., required = true)]
        program: Vec<PathBuf>,
        /// Value for a symbolic bound, as name=int
        #[arg(short = 'c', value_parser = parse_binding)]
        constants: Vec<(String, i64)>,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        /// Also list atoms of the Herbrand base that occur in no clause
        #[arg(long)]
        herbrand: bool,
    },
    /// Solve a ground theory: exit 10 on SAT, 20 on UNSAT
    Solve {
        file: PathBuf,
        /// Print every model
        #[arg(long, conflicts_with = "count")]
        all: bool,
        /// Print the number of models only
        #[arg(long)]
        count: bool,
        /// Also write the CNF translation in DIMACS format
        #[arg(long)]
        dimacs: Option<PathBuf>,
    },
    /// Translate a normal logic program into a closed-world program
    Complete {
        program: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Run a benchmark suite and write the report
    Bench {
        config: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        /// Run instances one at a time
        #[arg(long)]
        sequential: bool,
    },
    /// Write the data and program files of a benchmark instance
    Gen(GenArgs),
}

#[derive(Args)]
struct GenArgs {
    /// vertex-cover, vertex-cover-catom, nqueens, pigeonhole or schur
    family: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    h: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory for data.ps and program.ps
    #[arg(short = 'o', long = "output")]
    output: PathBuf,
}

fn parse_binding(s: &str) -> Result<(String, i64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected name=int, got '{s}'"))?;
    let value = value.trim().parse().map_err(|_| format!("'{value}' is not an integer"))?;
    Ok((name.trim().to_string(), value))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn ground_cmd(data: &[PathBuf], program: &[PathBuf], constants: Vec<(String, i64)>, output: &Path, herbrand: bool) -> Result<()> {
    let bindings: Bindings = constants.into_iter().collect();
    let mut d = DataSet::default();
    for path in data {
        d.extend(parse_data(&read(path)?).with_context(|| path.display().to_string())?);
    }
    let mut p = Program::default();
    for path in program {
        p.extend(parse_program(&read(path)?, &bindings).with_context(|| path.display().to_string())?);
    }
    let theory = Theory::new(d, p)?;
    let gt = ground::ground_theory_with(&theory, GroundOptions { herbrand_base: herbrand })?;
    write(output, &ground::write_ground(&gt))?;
    eprintln!("{} atoms, {} clauses", gt.atom_count(), gt.clauses.len());
    Ok(())
}

fn solve_cmd(file: &Path, all: bool, count: bool, dimacs: Option<&Path>) -> Result<u8> {
    let gt = ground::read_ground(&read(file)?).with_context(|| file.display().to_string())?;
    if let Some(path) = dimacs {
        write(path, &propcore::compile_cnf(&gt)?.to_dimacs())?;
    }
    let mode = match (all, count) {
        (_, true) => Mode::Count,
        (true, _) => Mode::All,
        _ => Mode::One,
    };
    let out = solver::solve(&gt, mode);
    if mode == Mode::Count {
        println!("{}", out.count);
        return Ok(0);
    }
    if !out.is_sat() {
        println!("UNSAT");
        return Ok(EXIT_UNSAT);
    }
    println!("SAT");
    for m in &out.models {
        println!("{}", m.render(&gt));
    }
    Ok(EXIT_SAT)
}

fn complete_cmd(program: &Path, output: &Path) -> Result<()> {
    let p = completion::parse_normal_program(&read(program)?).with_context(|| program.display().to_string())?;
    write(output, &completion::translate(&p).to_string())
}

fn bench_cmd(config: &Path, output: &Path, sequential: bool) -> Result<()> {
    let suite = harness::Suite::parse(&read(config)?)?;
    let exec = if sequential { Exec::Sequential } else { Exec::default() };
    let rows = harness::run_suite(&suite, exec)?;
    let text = harness::report(&rows);
    write(output, &text)?;
    print!("{}", text.split("\n\n").next().unwrap_or_default());
    println!();
    Ok(())
}

fn gen_cmd(a: &GenArgs) -> Result<()> {
    let need = |v: Option<usize>, name: &str| v.with_context(|| format!("{} needs --{name}", a.family));
    let family = Family::from_name(&a.family).with_context(|| format!("unknown family '{}'", a.family))?;
    let inst = match family {
        Family::VertexCover | Family::VertexCoverCatom => {
            let g = Graph::random(need(a.n, "n")?, need(a.m, "m")?, a.seed)?;
            let k = need(a.k, "k")?;
            if family == Family::VertexCover {
                families::vertex_cover(&g, k)
            } else {
                families::vertex_cover_catom(&g, k)
            }
        }
        Family::NQueens => families::nqueens(need(a.n, "n")?)?,
        Family::Pigeonhole => families::pigeonhole(need(a.p, "p")?, need(a.h, "h")?)?,
        Family::Schur => families::schur(need(a.n, "n")?, need(a.k, "k")?)?,
    };
    fs::create_dir_all(&a.output).with_context(|| format!("creating {}", a.output.display()))?;
    let data = a.output.join("data.ps");
    let program = a.output.join("program.ps");
    write(&data, &inst.data)?;
    write(&program, &inst.program)?;
    let mut cmd = format!("psplus ground -d {} -p {}", data.display(), program.display());
    for (name, v) in &inst.bindings {
        cmd.push_str(&format!(" -c {name}={v}"));
    }
    println!("{}\n{cmd} -o <out.gnd>", inst.label());
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Ground { data, program, constants, output, herbrand } => {
            ground_cmd(&data, &program, constants, &output, herbrand)?;
            Ok(0)
        }
        Command::Solve { file, all, count, dimacs } => solve_cmd(&file, all, count, dimacs.as_deref()),
        Command::Complete { program, output } => {
            complete_cmd(&program, &output)?;
            Ok(0)
        }
        Command::Bench { config, output, sequential } => {
            bench_cmd(&config, &output, sequential)?;
            Ok(0)
        }
        Command::Gen(args) => {
            if args.family.is_empty() {
                bail!("missing family");
            }
            gen_cmd(&args)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
