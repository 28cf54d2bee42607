use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use balkit::cache;
use balkit::construct;
use balkit::decomposition::{self, EarSearchOptions, SearchOutcome};
use balkit::enumerate::{self, Census, CensusOutcome, EnumerationSpec};
use balkit::io::ComplexDocument;
use balkit::report::{BudgetUse, RunReport, Status};
use balkit::suite;
use balkit::symmetry;
use balkit::verify;
use balkit::{homology, Coefficients, ColorSet, Error, FlagVector, Result};

#[derive(Parser)]
#[command(name = "balkit", version, about = "Balanced simplicial complexes: verification, decompositions, symmetry and enumeration")]
struct Cli {
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Complex file; standard input when omitted.
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Write a named complex to standard output.
    Construct {
        name: String,
    },
    /// Check predicates; exit 0 when all pass, 1 when one fails.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "D")]
        balanced: Option<usize>,
        #[arg(long, value_name = "K")]
        neighborly: Option<usize>,
        #[arg(long)]
        sphere: bool,
        #[arg(long)]
        ball: bool,
        #[arg(long)]
        manifold: bool,
        #[arg(long)]
        dehn_sommerville: bool,
        /// Link intersections of one color class (1-based color).
        #[arg(long, value_name = "COLOR")]
        link_profile: Option<usize>,
        /// Heegaard profile for a split `a,b/c,d` of a 4-vertex color class.
        #[arg(long, value_name = "A,B/C,D")]
        heegaard: Option<String>,
        #[arg(long, default_value = "integer")]
        coefficients: Coefficients,
    },
    /// Face vector, h-vector and (for colored input) flag vectors.
    Fvec {
        #[command(flatten)]
        input: Input,
    },
    /// Reduced homology as JSON.
    Homology {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "integer")]
        coefficients: Coefficients,
    },
    /// Automorphism group order, generators and vertex orbits.
    Aut {
        #[command(flatten)]
        input: Input,
        /// Only automorphisms fixing every color class.
        #[arg(long)]
        color_preserving: bool,
    },
    /// Search for an ear decomposition.
    Ear {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = decomposition::DEFAULT_BUDGET)]
        budget: u64,
        /// Disable the homological pre-check.
        #[arg(long)]
        no_pruning: bool,
    },
    /// Search for a shelling order.
    Shell {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = decomposition::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Isomorph-free census of balanced spheres.
    Enumerate {
        #[arg(long)]
        spec: PathBuf,
        /// Directory for the census files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for complexes invariant under the spec's symmetry.
    Search {
        #[arg(long)]
        spec: PathBuf,
        /// Stop at the first complex found.
        #[arg(long)]
        first: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance battery and print a scoreboard.
    PaperSuite {
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<u8>,
        /// Print JSON instead of the scoreboard.
        #[arg(long)]
        json: bool,
    },
}

fn read_input(input: &Input) -> Result<ComplexDocument> {
    match &input.input {
        Some(path) => ComplexDocument::load(path),
        None => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text)?;
            ComplexDocument::from_json_str(&text)
        }
    }
}

fn emit(text: &str) -> Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn emit_json(v: &Value) -> Result<i32> {
    emit(&(serde_json::to_string_pretty(v)? + "\n"))?;
    Ok(0)
}

fn emit_report(mut report: RunReport, started: Instant) -> Result<i32> {
    report.finish(started);
    emit(&report.to_json_string())?;
    Ok(report.exit_code())
}

fn parse_heegaard(doc: &ComplexDocument, text: &str) -> Result<([usize; 2], [usize; 2])> {
    let bad = || Error::Input(format!("--heegaard expects a,b/c,d, got {text:?}"));
    let (a, b) = text.split_once('/').ok_or_else(bad)?;
    let pair = |s: &str| -> Result<[usize; 2]> {
        let (x, y) = s.split_once(',').ok_or_else(bad)?;
        Ok([doc.resolve_vertex(x.trim())?, doc.resolve_vertex(y.trim())?])
    };
    Ok((pair(a)?, pair(b)?))
}

#[allow(clippy::too_many_arguments)]
fn run_verify(
    doc: ComplexDocument,
    balanced: Option<usize>,
    neighborly: Option<usize>,
    sphere: bool,
    ball: bool,
    manifold: bool,
    dehn_sommerville: bool,
    link_profile: Option<usize>,
    heegaard: Option<String>,
    coefficients: Coefficients,
) -> Result<i32> {
    let started = Instant::now();
    let mut report = RunReport::new("verify", Some(&doc));
    let k = &doc.complex;
    let mut coloring = doc.coloring.clone();
    if let Some(d) = balanced {
        match &coloring {
            Some(c) if c.num_colors() == d => report.add_predicate(verify::is_balanced_with(k, c)),
            _ => {
                let (r, found) = verify::is_balanced(k, d)?;
                report.add_predicate(r);
                if found.is_some() {
                    coloring = found;
                }
            }
        }
    }
    let need_coloring = || {
        coloring.as_ref().ok_or_else(|| {
            Error::Precondition("this check needs a coloring; add colors to the file or pass --balanced".into())
        })
    };
    if let Some(n) = neighborly {
        report.add_predicate(verify::is_k_neighborly(k, need_coloring()?, n)?);
    }
    if sphere {
        report.add_predicate(verify::is_homology_sphere_with(k, coefficients)?);
    }
    if ball {
        report.add_predicate(verify::is_homology_ball_with(k, coefficients)?);
    }
    if manifold {
        report.add_predicate(verify::is_closed_homology_manifold_with(k, coefficients)?);
    }
    if dehn_sommerville {
        report.add_predicate(verify::dehn_sommerville_flag(k, need_coloring()?)?);
    }
    if let Some(color) = link_profile {
        if color == 0 {
            return Err(Error::Input("--link-profile colors are 1-based".into()));
        }
        let profile = verify::link_intersection_profile(k, need_coloring()?, color - 1)?;
        report.add("link-intersection-profile", Status::Pass, serde_json::to_value(&profile)?);
    }
    if let Some(split) = heegaard {
        let (a, b) = parse_heegaard(&doc, &split)?;
        let h = verify::heegaard_profile(k, need_coloring()?, a, b)?;
        let mut r = h.report.clone();
        r.details = json!({
            "handlebody_a": h.handlebody_a,
            "handlebody_b": h.handlebody_b,
            "surface": h.surface,
            "surface_euler_characteristic": h.surface_euler_characteristic,
            "surface_closed": h.surface_closed,
        });
        report.add_predicate(r);
    }
    if report.checks.is_empty() {
        return Err(Error::Input("no checks requested; see balkit verify --help".into()));
    }
    emit_report(report, started)
}

fn run_fvec(doc: &ComplexDocument) -> Result<i32> {
    let fv = doc.complex.f_vector();
    let mut out = json!({ "f": fv.f, "h": fv.h });
    if let Some(c) = &doc.coloring {
        let flag = FlagVector::of(&doc.complex, c)?;
        let key = |s: u32| {
            let colors: Vec<String> = ColorSet(s).to_vec().iter().map(|c| (c + 1).to_string()).collect();
            format!("{{{}}}", colors.join(","))
        };
        let mut f = serde_json::Map::new();
        let mut h = serde_json::Map::new();
        for s in 0..1u32 << flag.num_colors {
            f.insert(key(s), flag.f_of(ColorSet(s)).into());
            h.insert(key(s), flag.h_of(ColorSet(s)).into());
        }
        out["flag_f"] = Value::Object(f);
        out["flag_h"] = Value::Object(h);
    }
    emit_json(&out)
}

fn search_report<T>(
    command: &str,
    doc: &ComplexDocument,
    outcome: &SearchOutcome<T>,
    budget: u64,
    render: impl Fn(&T) -> Value,
) -> RunReport {
    let mut report = RunReport::new(command, Some(doc));
    let status = match outcome {
        SearchOutcome::Undecided { .. } => Status::Undecided,
        _ => Status::Pass,
    };
    report.add(&format!("{command}-search"), status, json!({ "outcome": outcome.label() }));
    report.result = decomposition::outcome_json(outcome, render);
    report.budget = Some(BudgetUse { limit: budget, used: outcome.nodes() });
    report
}

fn load_spec(path: &Path) -> Result<EnumerationSpec> {
    EnumerationSpec::from_json_str(&std::fs::read_to_string(path)?)
}

fn census_report(command: &str, census: &Census, out: Option<&Path>, started: Instant) -> Result<i32> {
    if let Some(dir) = out {
        census.write_dir(dir)?;
    }
    let mut report = RunReport::new(command, None);
    let status = match census.outcome {
        CensusOutcome::Undecided { .. } => Status::Undecided,
        _ => Status::Pass,
    };
    report.add(&format!("{command}-census"), status, json!({ "count": census.entries.len() }));
    report.result = census.index_json();
    report.budget = Some(BudgetUse { limit: census.spec.budget(), used: census.nodes });
    emit_report(report, started)
}

fn run_suite(criterion: Option<u8>, as_json: bool) -> Result<i32> {
    let results = match criterion {
        Some(id) if suite::CRITERIA.iter().any(|c| c.0 == id) => vec![suite::criterion(id)],
        Some(id) => return Err(Error::Input(format!("no criterion {id}; criteria are 1-8"))),
        None => suite::run_all(),
    };
    if as_json {
        emit_json(&serde_json::to_value(&results)?)?;
    } else {
        emit(&suite::scoreboard(&results))?;
    }
    let code = if results.iter().any(|r| r.status == Status::Fail) {
        1
    } else if results.iter().any(|r| r.status == Status::Undecided) {
        3
    } else {
        0
    };
    Ok(code)
}

fn run(cli: Cli) -> Result<i32> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Input(format!("--jobs: {e}")))?;
    }
    match cli.command {
        Command::Construct { name } => {
            emit(&construct::named(&name)?.to_json_string())?;
            Ok(0)
        }
        Command::Verify {
            input,
            balanced,
            neighborly,
            sphere,
            ball,
            manifold,
            dehn_sommerville,
            link_profile,
            heegaard,
            coefficients,
        } => run_verify(
            read_input(&input)?,
            balanced,
            neighborly,
            sphere,
            ball,
            manifold,
            dehn_sommerville,
            link_profile,
            heegaard,
            coefficients,
        ),
        Command::Fvec { input } => run_fvec(&read_input(&input)?),
        Command::Homology { input, coefficients } => {
            emit_json(&homology(&read_input(&input)?.complex, coefficients)?.to_json())
        }
        Command::Aut { input, color_preserving } => {
            let doc = read_input(&input)?;
            let coloring = if color_preserving { Some(doc.require_coloring()?) } else { None };
            let group = symmetry::automorphism_group_with(&doc.complex, coloring)?;
            emit_json(&group.to_json(&doc.complex))
        }
        Command::Ear { input, budget, no_pruning } => {
            let started = Instant::now();
            let doc = read_input(&input)?;
            let options = EarSearchOptions { budget, homological_pruning: !no_pruning };
            let outcome = decomposition::find_ear_decomposition(&doc.complex, options)?;
            let report = search_report("ear", &doc, &outcome, budget, |w| json!(w.pieces));
            emit_report(report, started)
        }
        Command::Shell { input, budget } => {
            let started = Instant::now();
            let doc = read_input(&input)?;
            let outcome = decomposition::find_shelling(&doc.complex, budget)?;
            let report = search_report("shell", &doc, &outcome, budget, |w| json!(w.order));
            emit_report(report, started)
        }
        Command::Enumerate { spec, out } => {
            let started = Instant::now();
            let spec = load_spec(&spec)?;
            let census = cache::census_cached(&spec)?;
            census_report("enumerate", &census, out.as_deref(), started)
        }
        Command::Search { spec, first, out } => {
            let started = Instant::now();
            let mut spec = load_spec(&spec)?;
            spec.first_only |= first;
            let census = enumerate::search_symmetric(&spec)?;
            census_report("search", &census, out.as_deref(), started)
        }
        Command::PaperSuite { criterion, json } => run_suite(criterion, json),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("balkit: {e}");
            ExitCode::from(2)
        }
    }
}
