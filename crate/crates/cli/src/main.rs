use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cig_core::execution::{check_cycle, is_chordless, Orthogonality};
use cig_core::mll::{build_proof, check_correctness, cut_eliminate, parse_links, sequent_oracle, Matching, Verdict};
use cig_core::text::{parse_cig, to_dot, write_cig};
use cig_core::{
    canonical_form, execute, execute_simple, orthogonal, parse_formula, plug_coherent, CoherentGraph, Error, Plugging,
    VertexId, Walk,
};
use cig_laws::suites::{self, Report};

#[derive(Parser)]
#[command(name = "cig", version, about = "Coherent interaction graphs and cographic proof nets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a cographic proof: formula plus axiom links
    Check {
        formula: String,
        /// Links between leaves, e.g. 0-3,1-2
        #[arg(long)]
        links: String,
        /// Also search for a sequent derivation and compare
        #[arg(long)]
        oracle: bool,
        /// Sequent search without the Mix rule
        #[arg(long, requires = "oracle")]
        no_mix: bool,
    },
    /// Print the test graph (cograph) of a formula
    Cograph {
        formula: String,
        #[arg(long)]
        dot: bool,
    },
    /// Orthogonality of two graphs on the same vertices
    Orth { g1: PathBuf, g2: PathBuf },
    /// Execution of two graphs
    Exec {
        g1: PathBuf,
        g2: PathBuf,
        /// Write the result here instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Keep only vertex-simple walks
        #[arg(long)]
        simple: bool,
    },
    /// Cut elimination between two matchings
    Cut {
        g1: PathBuf,
        g2: PathBuf,
        /// The shared vertices, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        shared: Vec<String>,
    },
    /// Canonical representative: the incoherent sum of the maximal cliques
    Normalize { g: PathBuf },
    /// Rename vertices; unlisted vertices keep their names
    Rename {
        g: PathBuf,
        /// Renaming, e.g. a=x,b=y
        #[arg(long, value_delimiter = ',', required = true)]
        map: Vec<String>,
    },
    /// Run the randomized law suites
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
}

/// How a command ends, by exit code.
enum Outcome {
    /// 0: success, orthogonal, correct.
    Ok,
    /// 1: incorrect, not orthogonal, cycle in a cut, failed suite.
    Negative,
}

/// 2 for bad input, 3 for divergence.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DivergentExecution(_) => 3,
            _ => 2,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn input(msg: impl Into<String>) -> Failure {
    Failure { code: 2, msg: msg.into() }
}

fn read_graph(path: &Path) -> Result<CoherentGraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    parse_cig(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Prints a witness cycle after checking it again against the plugging.
fn print_witness(p: &Plugging, w: &Walk) -> Result<(), Failure> {
    check_cycle(p, w).map_err(|e| Failure {
        code: 2,
        msg: format!("internal error: witness {w} does not check: {e}"),
    })?;
    let chordless = if is_chordless(p, w) { "chordless" } else { "with chords" };
    println!("witness: {} edges, coherent, cyclically alternating, {chordless}", w.len());
    println!("  {w}");
    Ok(())
}

fn check(formula: &str, links: &str, oracle: bool, mix: bool) -> Result<Outcome, Failure> {
    let f = parse_formula(formula)?;
    let pairs = parse_links(links)?;
    let proof = build_proof(&f, &pairs)?;
    let verdict = check_correctness(&proof);
    match &verdict {
        Verdict::Correct => println!("Correct"),
        Verdict::Incorrect(w) => {
            println!("Incorrect");
            print_witness(&plug_coherent(&proof.cograph, &proof.links.graph()), w)?;
        }
    }
    if oracle {
        let provable = sequent_oracle(&f, &pairs, mix)?;
        let calculus = if mix { "MLL+Mix" } else { "MLL" };
        let found = if provable { "derivable" } else { "not derivable" };
        let agree = if provable == verdict.is_correct() { "agrees" } else { "differs" };
        println!("sequent calculus ({calculus}): {found}; {agree} with the graph criterion");
    }
    Ok(match verdict {
        Verdict::Correct => Outcome::Ok,
        Verdict::Incorrect(_) => Outcome::Negative,
    })
}

fn orth(g1: &Path, g2: &Path) -> Result<Outcome, Failure> {
    let (g, h) = (read_graph(g1)?, read_graph(g2)?);
    match orthogonal(&g, &h)? {
        Orthogonality::Orthogonal => {
            println!("orthogonal");
            Ok(Outcome::Ok)
        }
        Orthogonality::NotOrthogonal(w) => {
            println!("not orthogonal");
            print_witness(&plug_coherent(&g, &h), &w)?;
            Ok(Outcome::Negative)
        }
    }
}

fn exec(g1: &Path, g2: &Path, output: Option<&Path>, simple: bool) -> Result<Outcome, Failure> {
    let (g, h) = (read_graph(g1)?, read_graph(g2)?);
    let result = if simple { execute_simple(&g, &h) } else { execute(&g, &h)? };
    emit(&write_cig(result.graph()), output)?;
    Ok(Outcome::Ok)
}

fn cut(g1: &Path, g2: &Path, shared: &[String]) -> Result<Outcome, Failure> {
    let m = Matching::from_graph(read_graph(g1)?.graph())?;
    let n = Matching::from_graph(read_graph(g2)?.graph())?;
    let shared: BTreeSet<VertexId> = shared.iter().map(|s| VertexId::from(s.trim())).collect();
    match cut_eliminate(&m, &n, &shared) {
        Ok(result) => {
            print!("{}", write_cig(&result.graph()));
            Ok(Outcome::Ok)
        }
        Err(Error::Cycle(vs)) => {
            let names: Vec<&str> = vs.iter().map(VertexId::as_str).collect();
            println!("cycle through the cut: {}", names.join(" "));
            Ok(Outcome::Negative)
        }
        Err(e) => Err(e.into()),
    }
}

fn rename(g: &Path, map: &[String]) -> Result<Outcome, Failure> {
    let g = read_graph(g)?;
    let mut renaming: BTreeMap<VertexId, VertexId> = g.vertices().iter().map(|v| (v.clone(), v.clone())).collect();
    for entry in map {
        let (from, to) = entry
            .split_once('=')
            .ok_or_else(|| input(format!("`{entry}`: expected old=new")))?;
        let from = VertexId::from(from.trim());
        if !g.vertices().contains(&from) {
            return Err(input(format!("`{from}` is not a vertex")));
        }
        renaming.insert(from, VertexId::from(to.trim()));
    }
    print!("{}", write_cig(&g.rename_vertices(&renaming)?));
    Ok(Outcome::Ok)
}

fn selftest(seed: u64, cases: usize) -> Outcome {
    let runs: Vec<Report> = vec![
        suites::associativity(seed, cases),
        suites::adjunction(seed + 1, cases),
        suites::simplicity(seed + 2, cases),
        suites::chordless_cycles(seed + 3, cases),
        suites::quotient(seed + 4, cases),
        suites::mix_inclusion(seed + 5, cases),
        suites::identity_cut(seed + 6, cases),
        suites::correctness_sampled(seed + 7, cases, 10),
        suites::correctness_agrees_with_sequents(6),
        suites::cograph_laws(7, 6),
        suites::cut_soundness(6),
    ];
    println!("{:<6} {:>8} {:>8}  suite", "status", "checked", "failed");
    for r in &runs {
        let status = if r.passed() { "pass" } else { "FAIL" };
        println!("{status:<6} {:>8} {:>8}  {}", r.checked, r.failed, r.name);
    }
    for r in runs.iter().filter(|r| !r.passed()) {
        println!("\n{r}");
    }
    let passed = runs.iter().filter(|r| r.passed()).count();
    println!("\n{passed}/{} suites passed (seed {seed}, {cases} cases)", runs.len());
    if passed == runs.len() {
        Outcome::Ok
    } else {
        Outcome::Negative
    }
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    match cli.command {
        Command::Check {
            formula,
            links,
            oracle,
            no_mix,
        } => check(&formula, &links, oracle, !no_mix),
        Command::Cograph { formula, dot } => {
            let g = parse_formula(&formula)?.cograph();
            print!("{}", if dot { to_dot(&g) } else { write_cig(&g) });
            Ok(Outcome::Ok)
        }
        Command::Orth { g1, g2 } => orth(&g1, &g2),
        Command::Exec { g1, g2, output, simple } => exec(&g1, &g2, output.as_deref(), simple),
        Command::Cut { g1, g2, shared } => cut(&g1, &g2, &shared),
        Command::Normalize { g } => {
            print!("{}", write_cig(&canonical_form(&read_graph(&g)?)));
            Ok(Outcome::Ok)
        }
        Command::Rename { g, map } => rename(&g, &map),
        Command::Selftest { seed, cases } => Ok(selftest(seed, cases)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
