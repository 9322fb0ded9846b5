use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hra::constructions::{complement_deterministic, concatenation, intersection, kleene_star, registers_to_histories, to_packed, union};
use hra::counters::backward_coverability;
use hra::reductions::{emptiness, reduction_for, Engine, Verdict};
use hra::semantics::{trace, Configuration};
use hra::{classify, membership, Hra};
use hra_cli::{parse_counters, parse_hra, print_counters, print_hra, race, NameTable};

#[derive(Parser)]
#[command(name = "hra", version, about = "History-register automata: membership, closure and emptiness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exit 0 if the word is accepted, 1 otherwise.
    Member { file: PathBuf, word: Vec<String> },
    /// Like `member`, printing an accepting run with --trace.
    Run {
        file: PathBuf,
        word: Vec<String>,
        #[arg(long)]
        trace: bool,
    },
    /// Exit 0 if the language is empty, 1 if not.
    Empty {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = EngineArg::Auto)]
        engine: EngineArg,
        /// Run every applicable engine concurrently and compare.
        #[arg(long)]
        race: bool,
    },
    /// Complement of a deterministic automaton.
    Complement {
        file: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Union or intersection of two automata.
    Product {
        #[arg(long, value_enum)]
        op: ProductOp,
        a: PathBuf,
        b: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Concatenation of two languages.
    Concat {
        a: PathBuf,
        b: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Kleene star.
    Star {
        a: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Write the counter machine an engine would decide, with its query.
    ToCounters {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = TargetArg::Trvass)]
        target: TargetArg,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Exit 0 if the query target is coverable, 1 otherwise.
    Cover { file: PathBuf },
    /// Print the syntactic subclasses the automaton belongs to.
    Classify { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Auto,
    Trvass,
    Restricted,
    Vass,
    #[value(name = "one_rvass")]
    OneRvass,
    Bounded,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Engine {
        match e {
            EngineArg::Auto => Engine::Auto,
            EngineArg::Trvass => Engine::TrVass,
            EngineArg::Restricted => Engine::Restricted,
            EngineArg::Vass => Engine::Vass,
            EngineArg::OneRvass => Engine::OneRvass,
            EngineArg::Bounded => Engine::Bounded,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Trvass,
    Restricted,
    Vass,
    #[value(name = "one_rvass")]
    OneRvass,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProductOp {
    Union,
    Inter,
}

type Failure = String;

fn load(path: &Path, names: &mut NameTable) -> Result<Hra, Failure> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_hra(&text, names).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn show_config(a: &Hra, c: &Configuration, names: &NameTable) -> String {
    let h = &c.assignment;
    let places: Vec<String> = (1..=a.ty().places())
        .filter_map(|p| {
            let xs = h.contents(p);
            if xs.is_empty() {
                return None;
            }
            let xs: Vec<String> = xs.into_iter().map(|x| names.text(x)).collect();
            Some(format!("{p}:{{{}}}", xs.join(",")))
        })
        .collect();
    format!("({}, [{}])", a.state_label(c.state), places.join(" "))
}

fn verdict(yes: bool, affirmative: &str, negative: &str) -> ExitCode {
    println!("{}", if yes { affirmative } else { negative });
    ExitCode::from(if yes { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let mut names = NameTable::new();
    match cli.command {
        Command::Member { file, word } => {
            let a = load(&file, &mut names)?;
            let w = names.word(&word);
            Ok(verdict(membership(&a, &w), "accepted", "rejected"))
        }
        Command::Run { file, word, trace: show } => {
            let a = load(&file, &mut names)?;
            let w = names.word(&word);
            match trace(&a, &w) {
                Some(r) => {
                    if show {
                        println!("{}", show_config(&a, &r.start, &names));
                        for s in &r.steps {
                            let letter = s.letter.map(|x| names.text(x)).unwrap_or_else(|| "ε".into());
                            println!("  --{letter}--> {}", show_config(&a, &s.target, &names));
                        }
                    }
                    Ok(verdict(true, "accepted", ""))
                }
                None => Ok(verdict(false, "", "rejected")),
            }
        }
        Command::Empty { file, engine, race: racing } => {
            let a = load(&file, &mut names)?;
            let report = if racing {
                let out = race(&a).map_err(|e| e.to_string())?;
                let all: Vec<String> = out.all.iter().map(|r| format!("{}={}", r.engine, r.verdict)).collect();
                println!("engines: {}", all.join(" "));
                out.first
            } else {
                emptiness(&a, engine.into()).map_err(|e| e.to_string())?
            };
            if let Some(w) = &report.witness {
                println!("witness: {}", names.show_word(w));
            }
            match report.verdict {
                Verdict::Empty => Ok(verdict(true, &format!("empty ({})", report.engine), "")),
                Verdict::Nonempty => Ok(verdict(false, "", &format!("nonempty ({})", report.engine))),
                Verdict::Unknown => Err(format!("no verdict within the search bound ({})", report.engine)),
            }
        }
        Command::Complement { file, o } => {
            let a = load(&file, &mut names)?;
            let p = to_packed(&registers_to_histories(&a)).map_err(|e| e.to_string())?;
            let c = complement_deterministic(&p).map_err(|e| e.to_string())?;
            emit(&print_hra(&c.to_hra(), &names), o.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Product { op, a, b, o } => {
            let (a, b) = (load(&a, &mut names)?, load(&b, &mut names)?);
            let r = match op {
                ProductOp::Union => union(&a, &b),
                ProductOp::Inter => intersection(&a, &b),
            };
            emit(&print_hra(&r, &names), o.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Concat { a, b, o } => {
            let (a, b) = (load(&a, &mut names)?, load(&b, &mut names)?);
            emit(&print_hra(&concatenation(&a, &b), &names), o.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Star { a, o } => {
            let a = load(&a, &mut names)?;
            emit(&print_hra(&kleene_star(&a), &names), o.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ToCounters { file, target, o } => {
            let a = load(&file, &mut names)?;
            let engine = match target {
                TargetArg::Trvass => Engine::TrVass,
                TargetArg::Restricted => Engine::Restricted,
                TargetArg::Vass => Engine::Vass,
                TargetArg::OneRvass => Engine::OneRvass,
            };
            let red = reduction_for(&a, engine).map_err(|e| e.to_string())?.expect("counter engine");
            emit(&print_counters(&red.machine, Some((&red.init, red.target))), o.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Cover { file } => {
            let text = fs::read_to_string(&file).map_err(|e| format!("{}: {e}", file.display()))?;
            let doc = parse_counters(&text).map_err(|e| format!("{}: {e}", file.display()))?;
            let (init, target) = doc.query.ok_or_else(|| format!("{}: no QUERY line", file.display()))?;
            let yes = backward_coverability(&doc.machine, &init, target);
            Ok(verdict(yes, "coverable", "not coverable"))
        }
        Command::Classify { file } => {
            let a = load(&file, &mut names)?;
            let c = classify(&a);
            let flag = |name: &str, v: bool| if v { name.to_owned() } else { format!("{name}:false") };
            let flags = [
                flag("unary", c.unary),
                flag("non-reset", c.non_reset),
                flag("fra", c.fra),
                flag("ra", c.ra),
            ];
            println!("{}", flags.join(" "));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
