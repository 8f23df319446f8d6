//! `revival`: fractional revival on Cayley graphs of finite abelian groups.
//!
//! Exit codes: 0 success or revival found, 1 analyzed with no revival,
//! 2 input error, 3 undetermined in exact arithmetic.

mod input;
mod output;

use std::f64::consts::PI;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use revival_core::analysis::{
    build_n, check_conditions_ab, circulant_fr, cubelike_fr, first_failing_pair, search_all_fr, ConditionCheck,
    FrAnalyzer, FrDecision, FrTime, Outcome, TimeOf2Pi, Verdict,
};
use revival_core::bent::{is_bent, mm_bent, tan_connection_set, BooleanFunction};
use revival_core::oracle::{fidelity, Engine, FidelityProbe};
use revival_core::spectra::full_spectrum;

use input::{parse_element, parse_real_time, parse_time, GraphFile, InputError, Shape};
use output::{fixed, polynomial, DecisionRecord};

#[derive(Parser)]
#[command(name = "revival", version, about = "Fractional revival on abelian Cayley graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the file describes a valid Cayley graph.
    Validate { file: PathBuf },
    /// Print every eigenvalue, exactly and as a float.
    Spectrum { file: PathBuf },
    /// Decide revival for every candidate partner; prints JSON.
    Analyze { file: PathBuf },
    /// Exact check of revival between v and v + a at t = 2pi*p/q.
    Check {
        file: PathBuf,
        #[arg(long)]
        a: String,
        /// p/q, a multiple of 2pi.
        #[arg(long)]
        time: String,
    },
    /// Fidelity |H_uu|^2 + |H_uv|^2 on a grid, as CSV.
    Simulate {
        file: PathBuf,
        #[arg(long, default_value = "0")]
        u: String,
        #[arg(long)]
        v: String,
        /// e.g. 10, pi, 2pi/3.
        #[arg(long)]
        tmax: String,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = EngineArg::Spectral)]
        engine: EngineArg,
    },
    /// Revival on the graph of a bent function f on 2m variables.
    Bent {
        /// Use z1z2 + z3z4 + ... + z(2m-1)z(2m).
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=6), required_unless_present = "function")]
        m: Option<u32>,
        /// Truth table as hex (0x...) or 0/1 characters; bit j of the index is z(j+1).
        #[arg(long, conflicts_with = "m")]
        function: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Spectral,
    Series,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Spectral => Engine::Spectral,
            EngineArg::Series => Engine::Series,
        }
    }
}

/// Largest graph on which `bent` confirms fidelity with the series engine.
const SERIES_LIMIT: usize = 512;

enum Failure {
    Input(String),
    Exit(u8, String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.0)
    }
}

impl From<revival_core::Error> for Failure {
    fn from(e: revival_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Exit(1, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Spectrum { file } => spectrum(&file),
        Command::Analyze { file } => analyze(&file),
        Command::Check { file, a, time } => check(&file, &a, &time),
        Command::Simulate { file, u, v, tmax, steps, engine } => simulate(&file, &u, &v, &tmax, steps, engine.into()),
        Command::Bent { m, function } => bent(m, function.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Exit(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn validate(file: &Path) -> Result<u8, Failure> {
    let graph = GraphFile::read(file)?;
    match graph.connection_set() {
        Ok(set) => {
            println!("valid: Cay({}, S) with |S| = {}, {} vertices", graph.spec, set.len(), graph.spec.size());
            Ok(0)
        }
        Err(e) => {
            println!("{e}");
            for g in &graph.raw {
                let minus = graph.spec.neg(g)?;
                if !g.is_zero() && !graph.raw.contains(&minus) {
                    println!("  {g} is in S but -{g} = {minus} is not");
                }
            }
            Ok(2)
        }
    }
}

fn spectrum(file: &Path) -> Result<u8, Failure> {
    let graph = GraphFile::read(file)?;
    let set = graph.connection_set()?;
    let spectrum = full_spectrum(&graph.spec, &set)?;
    let mut out = BufWriter::new(io::stdout().lock());
    writeln!(out, "# w = exp(2 pi i / {})", spectrum.level())?;
    writeln!(out, "element\texact\tlambda")?;
    for (i, x) in graph.spec.elements().enumerate() {
        let exact = match spectrum.integer_value(i) {
            Some(v) => v.to_string(),
            None => polynomial(spectrum.reduced(i)),
        };
        writeln!(out, "{x}\t{exact}\t{}", fixed(spectrum.value(i)))?;
    }
    out.flush()?;
    Ok(0)
}

fn decisions(graph: &GraphFile) -> Result<Vec<FrDecision>, Failure> {
    let set = graph.connection_set()?;
    Ok(match graph.shape {
        Shape::Circulant => {
            let s: Vec<i64> = set.elements().iter().map(|g| g.coords()[0] as i64).collect();
            vec![circulant_fr(graph.spec.size(), &s)?]
        }
        Shape::Cubelike => {
            let s: Vec<Vec<u8>> =
                set.elements().iter().map(|g| g.coords().iter().map(|&b| b as u8).collect()).collect();
            cubelike_fr(graph.spec.rank(), &s)?
        }
        Shape::General => search_all_fr(&graph.spec, &set)?.decisions,
    })
}

fn analyze(file: &Path) -> Result<u8, Failure> {
    let graph = GraphFile::read(file)?;
    let decisions = decisions(&graph)?;
    let records: Vec<DecisionRecord> = decisions.iter().map(DecisionRecord::from).collect();
    let mut out = BufWriter::new(io::stdout().lock());
    serde_json::to_writer_pretty(&mut out, &records).map_err(|e| Failure::Exit(1, e.to_string()))?;
    writeln!(out)?;
    out.flush()?;
    let verdicts: Vec<Verdict> = decisions.iter().map(FrDecision::verdict).collect();
    Ok(if verdicts.contains(&Verdict::Yes) {
        0
    } else if verdicts.contains(&Verdict::UndeterminedExact) {
        3
    } else {
        1
    })
}

fn check(file: &Path, a: &str, time: &str) -> Result<u8, Failure> {
    let graph = GraphFile::read(file)?;
    let set = graph.connection_set()?;
    let a = parse_element(&graph.spec, a)?;
    let (p, q) = parse_time(time)?;
    let time = TimeOf2Pi::new(p, q)?;
    if let ConditionCheck::Fail(w) = check_conditions_ab(&graph.spec, &a)? {
        return Err(Failure::Input(format!("a = {a} is not a valid partner offset: {w}")));
    }
    let spectrum = full_spectrum(&graph.spec, &set)?;
    let n = build_n(&graph.spec, &a)?;
    match first_failing_pair(&spectrum, &n, time) {
        Ok(None) => {
            println!("FR between v and v + {a} at t = 2pi*{time}");
            Ok(0)
        }
        Ok(Some(f)) => {
            println!(
                "no FR between v and v + {a} at t = 2pi*{time}: lambda_{} - lambda_{} = {}, and ({time})*({}) is not an integer",
                f.x, f.y, f.difference, f.difference
            );
            Ok(1)
        }
        Err(e @ revival_core::Error::NonIntegerDifference { .. }) => Err(Failure::Exit(3, e.to_string())),
        Err(e) => Err(e.into()),
    }
}

fn simulate(file: &Path, u: &str, v: &str, tmax: &str, steps: usize, engine: Engine) -> Result<u8, Failure> {
    let graph = GraphFile::read(file)?;
    let set = graph.connection_set()?;
    let u = parse_element(&graph.spec, u)?;
    let v = parse_element(&graph.spec, v)?;
    let t_max = parse_real_time(tmax)?;
    let probe = FidelityProbe::new(&graph.spec, &set, engine)?;
    let samples = probe.scan(&u, &v, t_max, steps)?;
    let mut out = BufWriter::new(io::stdout().lock());
    writeln!(out, "t,p_uu,p_uv,total")?;
    for s in samples {
        writeln!(out, "{},{},{},{}", fixed(s.t), fixed(s.p_uu), fixed(s.p_uv), fixed(s.total))?;
    }
    out.flush()?;
    Ok(0)
}

fn bent(m: Option<u32>, function: Option<&str>) -> Result<u8, Failure> {
    let f = match (m, function) {
        (Some(m), _) => mm_bent(m as usize)?,
        (None, Some(table)) => {
            let f = BooleanFunction::parse(table)?;
            if !is_bent(&f) {
                return Err(Failure::Input(format!("{table} is not bent")));
            }
            if f.arity() < 4 || f.arity() > 12 {
                return Err(Failure::Input(format!("need 4 to 12 variables, got {}", f.arity())));
            }
            f
        }
        (None, None) => return Err(Failure::Input("one of --m or --function is required".into())),
    };
    let m = f.arity() / 2;
    let set = tan_connection_set(&f)?;
    let spec = set.spec().clone();
    let mut a = vec![0; spec.rank()];
    a[0] = 1;
    let a = spec.element(&a)?;
    let decision = FrAnalyzer::new(&spec, &set)?.decide(&a)?;
    let Outcome::Yes(c) = &decision.outcome else {
        return Err(Failure::Exit(1, format!("no revival found: {:?}", decision.witness())));
    };
    let FrTime::Rational(time) = c.time else {
        return Err(Failure::Exit(1, "revival at all times on a bent graph".into()));
    };
    let engine = if spec.size() <= SERIES_LIMIT { Engine::Series } else { Engine::Spectral };
    let sample = fidelity(&spec, &set, &spec.zero(), &a, c.sample_time, engine)?;
    println!("function: {f}");
    println!("variables: {}", f.arity());
    println!("vertices: {}", spec.size());
    println!("|S|: {}", set.len());
    println!("partner offset: {a}");
    println!("M = {}", c.m.unwrap_or(0));
    println!("t = 2pi*{time} = pi/{} = {}", 1u64 << m, fixed(c.sample_time));
    println!("classification: {}", c.classification);
    println!(
        "fidelity at t ({}): {}",
        if engine == Engine::Series { "series" } else { "spectral" },
        fixed(sample.total)
    );
    let expected = 1u64 << (m + 1);
    if c.m != Some(expected) || (c.sample_time - PI / (1u64 << m) as f64).abs() > 1e-12 {
        return Err(Failure::Exit(1, format!("expected M = {expected}")));
    }
    Ok(0)
}
