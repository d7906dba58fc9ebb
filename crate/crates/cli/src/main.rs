use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use djkm::config::{self, Config};
use djkm::error::{CliError, Result};
use djkm::format;
use djkm::report::{self as doc, ReportDocument};
use djkm::snapshot::{self, Status};
use djkm::states;
use djkm::suites;
use djkm_core::algebra::{Bracket, ClosedBracket, KasselBracket, PsiConvention};
use djkm_core::arith::{PolyC, Rational};
use djkm_core::families::{family_by_recursion, Family};
use djkm_core::fock::{HeisenbergSigns, HEISENBERG_CORRECTIONS};
use djkm_core::realization::{Conventions, E1Reading, EnumerationWindow};
use djkm_core::ring::{psi_table_generic, DjkmRing, PsiTable};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "djkm",
    version,
    about = "Exact checks for the DJKM algebra and its free-field realization"
)]
struct Cli {
    /// Worker threads for the verification suites.
    #[arg(long, global = true, env = config::WORKERS_ENV)]
    workers: Option<usize>,
    /// Flat key = value file with defaults for flags.
    #[arg(long, global = true, env = "DJKM_CONFIG")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Backend {
    Closed,
    Kassel,
}

#[derive(Clone, Copy, ValueEnum)]
enum PsiArg {
    Derived,
    Printed,
}

impl From<PsiArg> for PsiConvention {
    fn from(p: PsiArg) -> Self {
        match p {
            PsiArg::Derived => PsiConvention::Derived,
            PsiArg::Printed => PsiConvention::PrintedSubscript,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SignsArg {
    Corrected,
    Printed,
}

impl From<SignsArg> for HeisenbergSigns {
    fn from(s: SignsArg) -> Self {
        match s {
            SignsArg::Corrected => HeisenbergSigns::Corrected,
            SignsArg::Printed => HeisenbergSigns::Printed,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReadingArg {
    Normal,
    Literal,
}

#[derive(Clone, Copy, ValueEnum)]
enum WindowArg {
    Normal,
    Widened,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RArg {
    #[value(name = "0")]
    Zero,
    #[value(name = "1")]
    One,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Table of one polynomial family P_{which,k}, k = -4..kmax.
    Families {
        #[arg(long, allow_hyphen_values = true)]
        which: i64,
        #[arg(long, default_value_t = 20)]
        kmax: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: TableFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Class of a one-form in the w-basis: "t^1 u dt", "t^-2,u", or JSON.
    Reduce {
        #[arg(allow_hyphen_values = true)]
        form: String,
        /// Specialize c to this value.
        #[arg(long, allow_hyphen_values = true)]
        c0: Option<Rational>,
        /// All five coordinates as coefficient arrays instead of strings.
        #[arg(long)]
        exact: bool,
    },
    /// Psi(k) for kmin <= k <= kmax.
    Psi {
        #[arg(long, allow_hyphen_values = true, default_value_t = -10)]
        kmin: i64,
        #[arg(long, default_value_t = 10)]
        kmax: i64,
        #[arg(long, allow_hyphen_values = true)]
        c0: Option<Rational>,
    },
    /// Bracket of two basis keys such as e:1, f1:-1, w:0.
    Bracket {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(long, allow_hyphen_values = true)]
        c0: Option<Rational>,
        #[arg(long, value_enum, default_value = "closed")]
        backend: Backend,
        #[arg(long, value_enum, default_value = "derived")]
        psi: PsiArg,
    },
    /// Brackets of all pairs of currents in a window, over Q[c].
    BracketTable {
        #[arg(long, default_value_t = 2)]
        window: i64,
    },
    /// Antisymmetry and Jacobi over Q[c].
    VerifyAlgebra {
        /// Jacobi window (triples of currents).
        #[arg(long)]
        window: Option<i64>,
        /// Antisymmetry window (pairs, centrals included).
        #[arg(long)]
        pair_window: Option<i64>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Closed-form bracket against the cocycle bracket, over Q[c].
    VerifyBackends {
        #[arg(long)]
        window: Option<i64>,
        #[arg(long, value_enum, default_value = "derived")]
        psi: PsiArg,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Oscillator and Heisenberg defining relations on test states.
    VerifyRelations {
        #[arg(long, default_value_t = 8)]
        heisenberg_window: i64,
        #[arg(long, default_value_t = 5)]
        oscillator_window: i64,
        #[arg(long, value_enum, default_value = "corrected")]
        signs: SignsArg,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Commutators of the realization on Fock states.
    VerifyFock {
        #[arg(long)]
        window: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        c0: Vec<Rational>,
        #[arg(long, allow_hyphen_values = true)]
        kappa0: Vec<Rational>,
        /// "lambda,mu,nu,varkappa"; repeatable.
        #[arg(long, allow_hyphen_values = true)]
        params: Vec<String>,
        #[arg(long, value_enum)]
        r: Option<RArg>,
        /// JSON file with a list of states; default is the five-state suite.
        #[arg(long)]
        states: Option<PathBuf>,
        /// Seed of the random suite state.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "derived")]
        psi: PsiArg,
        #[arg(long, value_enum, default_value = "corrected")]
        signs: SignsArg,
        #[arg(long, value_enum, default_value = "normal")]
        e1_reading: ReadingArg,
        #[arg(long, value_enum, default_value = "normal")]
        enumeration: WindowArg,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Derived mode-enumeration windows against doubled ones.
    Soundness {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Compare canonical tables with the golden files.
    Snapshot {
        #[arg(long)]
        golden_dir: PathBuf,
        #[arg(long)]
        update: bool,
    },
    /// Summarize a written report; exit status follows its failure count.
    Report { file: PathBuf },
    /// The sign corrections applied to the Heisenberg representation.
    Corrections,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn finish(mut d: ReportDocument, started: Instant, out: Option<&Path>) -> Result<i32> {
    d.wall_time = started.elapsed();
    print!("{}", d.summary());
    if let Some(p) = out {
        emit(&format::canonical(&d.to_json(true)), Some(p))?;
    }
    Ok(d.exit_code())
}

fn parse_lambdas(s: &str) -> Result<[Rational; 4]> {
    let parts: Vec<Rational> = s
        .split(',')
        .map(|x| x.trim().parse::<Rational>())
        .collect::<djkm_core::Result<_>>()?;
    parts
        .try_into()
        .map_err(|_| CliError::usage(format!("--params needs four values, got {s:?}")))
}

fn run(cli: Cli) -> Result<i32> {
    let config = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let workers = config::resolve_workers(cli.workers, &config)?;
    let started = Instant::now();
    match cli.command {
        Command::Families {
            which,
            kmax,
            format: f,
            out,
        } => {
            let table = family_by_recursion(Family::from_index(which)?, kmax)?;
            let text = match f {
                TableFormat::Csv => format::family_csv(&table),
                TableFormat::Json => format::canonical(&format::family_json(&table)),
            };
            emit(&text, out.as_deref())?;
        }
        Command::Reduce { form, c0, exact } => {
            let w = format::parse_form(&form)?;
            let z = DjkmRing::generic().reduce(&w);
            let v = match (c0, exact) {
                (None, false) => format::central_compact(&z),
                (None, true) => format::central_json(&z),
                (Some(c0), exact) => {
                    DjkmRing::specialized(c0.clone())?;
                    let zc = z.map(|p| p.eval(&c0));
                    if exact {
                        format::central_json(&zc)
                    } else {
                        format::central_compact(&zc)
                    }
                }
            };
            print!("{}", format::canonical(&v));
        }
        Command::Psi { kmin, kmax, c0 } => {
            if kmin > kmax {
                return Err(CliError::usage("--kmin must not exceed --kmax"));
            }
            let table = psi_table_generic(kmax.max(-kmin));
            let v = match c0 {
                None => format::psi_table_json(&table, kmin),
                Some(c0) => {
                    DjkmRing::specialized(c0.clone())?;
                    format::psi_table_json(&PsiTable::from_generic(&table, &c0), kmin)
                }
            };
            let mut v = v;
            if let Some(entries) = v["entries"].as_array_mut() {
                entries.retain(|e| e["k"].as_i64().is_some_and(|k| k <= kmax));
            }
            v["k_max"] = json!(kmax);
            print!("{}", format::canonical(&v));
        }
        Command::Bracket { x, y, c0, backend, psi } => {
            let (a, b) = (format::parse_basis_key(&x)?, format::parse_basis_key(&y)?);
            let window = [a, b]
                .iter()
                .map(|k| match k {
                    djkm_core::algebra::BasisKey::Current { n, .. } => n.abs(),
                    djkm_core::algebra::BasisKey::Central(_) => 0,
                })
                .max()
                .unwrap_or(0);
            let v = match (c0, backend) {
                (None, Backend::Closed) => {
                    format::algebra_json(&ClosedBracket::new(PolyC::c(), window, psi.into()).bracket_basis(&a, &b))
                }
                (None, Backend::Kassel) => {
                    format::algebra_json(&KasselBracket::new(DjkmRing::generic()).bracket_basis(&a, &b))
                }
                (Some(c0), Backend::Closed) => {
                    DjkmRing::specialized(c0.clone())?;
                    format::algebra_json(&ClosedBracket::new(c0, window, psi.into()).bracket_basis(&a, &b))
                }
                (Some(c0), Backend::Kassel) => {
                    format::algebra_json(&KasselBracket::new(DjkmRing::specialized(c0)?).bracket_basis(&a, &b))
                }
            };
            print!("{}", format::canonical(&v));
        }
        Command::BracketTable { window } => {
            print!("{}", format::canonical(&snapshot::bracket_table_json(window)));
        }
        Command::VerifyAlgebra {
            window,
            pair_window,
            report,
        } => {
            let jw = window.or(config.get_parsed("window")?).unwrap_or(6);
            let pw = pair_window.or(config.get_parsed("pair_window")?).unwrap_or(12);
            let pool = suites::pool(workers)?;
            let mut d = ReportDocument::new(json!({"kind": "verify-algebra", "window": jw, "pair_window": pw}));
            for (name, r) in suites::verify_lie_axioms(pw, jw, &pool) {
                d.push(&name, r);
            }
            return finish(d, started, report.as_deref());
        }
        Command::VerifyBackends { window, psi, report } => {
            let w = window.or(config.get_parsed("pair_window")?).unwrap_or(12);
            let pool = suites::pool(workers)?;
            let conv: PsiConvention = psi.into();
            let mut d =
                ReportDocument::new(json!({"kind": "verify-backends", "window": w, "psi": format!("{conv:?}")}));
            d.push("agreement", suites::verify_backends(w, conv, &pool));
            return finish(d, started, report.as_deref());
        }
        Command::VerifyRelations {
            heisenberg_window,
            oscillator_window,
            signs,
            report,
        } => {
            let pool = suites::pool(workers)?;
            let signs: HeisenbergSigns = signs.into();
            let grid = suites::params_grid(
                &suites::default_c0s(),
                &suites::default_kappa0s(),
                &suites::default_lambdas()[..1],
                &[0, 1],
                signs,
            )?;
            let mut d = ReportDocument::new(json!({
                "kind": "verify-relations",
                "heisenberg_window": heisenberg_window,
                "oscillator_window": oscillator_window,
                "signs": format!("{signs:?}"),
            }));
            for (name, r) in suites::verify_relations(heisenberg_window, oscillator_window, &grid, &pool) {
                d.push(&name, r);
            }
            return finish(d, started, report.as_deref());
        }
        Command::VerifyFock {
            window,
            c0,
            kappa0,
            params,
            r,
            states: states_file,
            seed,
            psi,
            signs,
            e1_reading,
            enumeration,
            report,
        } => {
            let window = window.or(config.get_parsed("window")?).unwrap_or(4);
            let c0s = if c0.is_empty() {
                config.get_list("c0")?.unwrap_or_else(suites::default_c0s)
            } else {
                c0
            };
            let kappas = if kappa0.is_empty() {
                config.get_list("kappa0")?.unwrap_or_else(suites::default_kappa0s)
            } else {
                kappa0
            };
            let lambdas = if params.is_empty() {
                match config.get("params") {
                    Some(s) => s.split(';').map(parse_lambdas).collect::<Result<Vec<_>>>()?,
                    None => suites::default_lambdas(),
                }
            } else {
                params.iter().map(|s| parse_lambdas(s)).collect::<Result<Vec<_>>>()?
            };
            let r = match r {
                Some(r) => r,
                None => match config.get("r") {
                    None | Some("both") => RArg::Both,
                    Some("0") => RArg::Zero,
                    Some("1") => RArg::One,
                    Some(other) => return Err(CliError::usage(format!("config key r: {other:?}"))),
                },
            };
            let rs: &[u8] = match r {
                RArg::Zero => &[0],
                RArg::One => &[1],
                RArg::Both => &[0, 1],
            };
            let seed = seed.or(config.get_parsed("seed")?).unwrap_or(states::DEFAULT_SEED);
            let suite = match states_file {
                Some(p) => {
                    let text = std::fs::read_to_string(&p).map_err(|e| CliError::io(&p, e))?;
                    format::parse_states(&text)?
                        .into_iter()
                        .map(|s| (s.to_string(), s))
                        .collect()
                }
                None => states::default_suite(seed),
            };
            let signs: HeisenbergSigns = signs.into();
            let grid = suites::params_grid(&c0s, &kappas, &lambdas, rs, signs)?;
            let conventions = Conventions {
                psi: psi.into(),
                e1_reading: match e1_reading {
                    ReadingArg::Normal => E1Reading::NormalOrdered,
                    ReadingArg::Literal => E1Reading::Literal,
                },
                window: match enumeration {
                    WindowArg::Normal => EnumerationWindow::Normal,
                    WindowArg::Widened => EnumerationWindow::Widened,
                },
            };
            let task = json!({
                "kind": "verify-fock",
                "window": window,
                "c0": c0s.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "kappa0": kappas.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "params": lambdas.iter().map(|l| l.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")).collect::<Vec<_>>(),
                "r": rs,
                "seed": seed,
                "states": suite.iter().map(|(name, _)| name.clone()).collect::<Vec<_>>(),
                "conventions": format!("{conventions:?}"),
                "signs": format!("{signs:?}"),
            });
            let pool = suites::pool(workers)?;
            let mut d = ReportDocument::new(task);
            d.push(
                "commutators",
                suites::verify_fock(window, &grid, &suite, conventions, &pool)?,
            );
            return finish(d, started, report.as_deref());
        }
        Command::Soundness { samples, seed, report } => {
            let seed = seed.or(config.get_parsed("seed")?).unwrap_or(states::DEFAULT_SEED);
            let grid = suites::params_grid(
                &suites::default_c0s(),
                &suites::default_kappa0s(),
                &suites::default_lambdas(),
                &[0, 1],
                HeisenbergSigns::Corrected,
            )?;
            let pool = suites::pool(workers)?;
            let mut d = ReportDocument::new(json!({"kind": "soundness", "samples": samples, "seed": seed}));
            d.push(
                "enumeration",
                suites::enumeration_soundness(samples, seed, &grid, &pool)?,
            );
            return finish(d, started, report.as_deref());
        }
        Command::Snapshot { golden_dir, update } => {
            let mut failed = 0;
            for snap in snapshot::standard_snapshots()? {
                match snapshot::check(&snap, &golden_dir, update)? {
                    Status::Match => println!("ok      {}", snap.name),
                    Status::Written => println!("written {}", snap.name),
                    Status::Mismatch(why) => {
                        failed += 1;
                        println!("FAIL    {}: {why}", snap.name);
                    }
                }
            }
            return Ok(if failed == 0 { 0 } else { 1 });
        }
        Command::Report { file } => {
            let text = std::fs::read_to_string(&file).map_err(|e| CliError::io(&file, e))?;
            let v: Value = serde_json::from_str(&text)?;
            let failed = doc::failed_in(&v).ok_or_else(|| CliError::usage("not a schema-1 report"))?;
            println!(
                "{}: {} checked, {failed} failed",
                v["task"]["kind"].as_str().unwrap_or("report"),
                v["counts"]["checked"]
            );
            return Ok(if failed == 0 { 0 } else { 1 });
        }
        Command::Corrections => {
            let list: Vec<Value> = HEISENBERG_CORRECTIONS
                .iter()
                .map(|c| json!({"operator": c.operator, "printed": c.printed, "corrected": c.corrected, "reason": c.reason}))
                .collect();
            print!("{}", format::canonical(&Value::Array(list)));
        }
    }
    Ok(0)
}
