use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use divide_kh::complex::{build_complex, ComplexError};
use divide_kh::homology::{graded_euler, homology_table};
use divide_kh::moves::{apply_move, random_divide, MoveError, MoveSpec};
use divide_kh::poly::{check_euler_relation, w_statesum, EulerError, HalfLaurent, PolyError};
use divide_kh::states::{enumerate_enhanced, resolve_state, StateCube, StateError};
use divide_kh::text::{self, ParseError};
use divide_kh::{Divide, DivideError, ResolutionWord, DEFAULT_MAX_POINTS};

#[derive(Parser)]
#[command(name = "divide-kh", version, about = "Homology and state-sum polynomial of ordered Morse signed divides")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,
    /// Refuse divides with more singular points than this.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_POINTS)]
    max_points: usize,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for `rand`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Text,
    Json,
    Latex,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a divide and print its singular points.
    Check { input: Option<PathBuf> },
    /// List states, or enhanced states with --enhanced.
    States {
        input: Option<PathBuf>,
        #[arg(long)]
        enhanced: bool,
    },
    /// Chain-group dimensions per (i, j).
    Complex {
        input: Option<PathBuf>,
        /// Also list the nonzero differential entries.
        #[arg(long)]
        matrices: bool,
    },
    /// Homology table.
    Homology { input: Option<PathBuf> },
    /// The state-sum polynomial W.
    Poly { input: Option<PathBuf> },
    /// Compare W with the graded Euler characteristic of homology.
    Euler { input: Option<PathBuf> },
    /// Word rewrites.
    Moves {
        #[command(subcommand)]
        action: MovesCommand,
    },
    /// Print a seeded random divide.
    Rand {
        #[arg(long, default_value_t = 6)]
        points: usize,
        #[arg(long, default_value_t = 3)]
        strands: usize,
    },
}

#[derive(Subcommand)]
enum MovesCommand {
    /// Apply a move such as `II-insert@1:+1`, `II-cancel@0`, `commute@0` or `III@2`.
    Apply {
        #[arg(value_name = "MOVE")]
        descriptor: String,
        input: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    kind: String,
    message: String,
}

impl Failure {
    fn validation(kind: &str, message: impl ToString) -> Self {
        Failure { code: 1, kind: kind.into(), message: message.to_string() }
    }

    fn internal(kind: &str, message: impl ToString) -> Self {
        Failure { code: 2, kind: kind.into(), message: message.to_string() }
    }
}

impl From<DivideError> for Failure {
    fn from(e: DivideError) -> Self {
        let kind = match e {
            DivideError::StrandCountMismatch { .. } => "StrandCountMismatch",
            DivideError::CrossingOutOfRange { .. } => "CrossingOutOfRange",
            DivideError::EmptyDivide => "EmptyDivide",
        };
        Failure::validation(kind, e)
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::Invalid(d) => d.into(),
            other => Failure::validation("SyntaxError", other),
        }
    }
}

impl From<StateError> for Failure {
    fn from(e: StateError) -> Self {
        match e {
            StateError::Invalid(d) => d.into(),
            StateError::WordLengthMismatch { .. } => Failure::validation("WordLengthMismatch", e),
            StateError::TooManyPoints { .. } => Failure::validation("TooManyPoints", e),
            StateError::TooManyComponents(_) => Failure::validation("TooManyComponents", e),
        }
    }
}

impl From<ComplexError> for Failure {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::State(s) => s.into(),
            ComplexError::UnsupportedSaddle { .. } => Failure::internal("UnsupportedSaddle", e),
            ComplexError::GradingMismatch(_) => Failure::internal("GradingMismatch", e),
            ComplexError::Internal(_) | ComplexError::NotAdvanceable { .. } => Failure::internal("InternalError", e),
        }
    }
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::State(s) => s.into(),
            PolyError::NotDivisible { .. } => Failure::internal("NotDivisible", e),
        }
    }
}

impl From<EulerError> for Failure {
    fn from(e: EulerError) -> Self {
        match e {
            EulerError::Complex(c) => c.into(),
            EulerError::Poly(p) => p.into(),
        }
    }
}

impl From<MoveError> for Failure {
    fn from(e: MoveError) -> Self {
        match e {
            MoveError::NotApplicable(_) => Failure::validation("NotApplicable", e),
            MoveError::Descriptor { .. } => Failure::validation("BadMoveDescriptor", e),
        }
    }
}

fn read_divide(input: &Option<PathBuf>) -> Result<Divide, Failure> {
    let mut src = String::new();
    match input {
        Some(p) if p.as_os_str() != "-" => {
            src = std::fs::read_to_string(p).map_err(|e| Failure::validation("IoError", format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin().read_to_string(&mut src).map_err(|e| Failure::validation("IoError", e))?;
        }
    }
    Ok(text::parse(&src)?)
}

fn report(command: &str, body: Value) -> String {
    let mut obj = json!({ "schema": 1, "command": command });
    if let (Value::Object(o), Value::Object(b)) = (&mut obj, body) {
        o.extend(b);
    }
    serde_json::to_string_pretty(&obj).expect("serializable") + "\n"
}

fn unsupported(format: OutFormat, command: &str) -> Failure {
    let name = match format {
        OutFormat::Text => "text",
        OutFormat::Json => "json",
        OutFormat::Latex => "latex",
        OutFormat::Tsv => "tsv",
    };
    Failure::validation("UnsupportedFormat", format!("{command} has no {name} output"))
}

fn sign_string(signs: u64, components: usize) -> String {
    (0..components).map(|q| if (signs >> q) & 1 == 1 { '+' } else { '-' }).collect()
}

fn poly_terms(w: &HalfLaurent) -> Value {
    Value::Array(w.terms().map(|(e, c)| json!({ "sqrt_t_exp": e, "coeff": c })).collect())
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let fmt = cli.format;
    let max = cli.max_points;
    match &cli.command {
        Command::Check { input } => {
            let d = read_divide(input)?;
            let p = d.validate()?;
            let points: Vec<String> = p.points.iter().map(|k| k.to_string()).collect();
            match fmt {
                OutFormat::Json => Ok(report(
                    "check",
                    json!({
                        "name": d.name, "strands": p.strands, "n_plus": p.n_plus, "n_minus": p.n_minus,
                        "n_zero": p.n_zero, "points": points, "writhe": p.writhe(), "endpoints": p.endpoints,
                    }),
                )),
                OutFormat::Text => {
                    let mut out = String::new();
                    if let Some(n) = &d.name {
                        let _ = writeln!(out, "name: {n}");
                    }
                    let _ = writeln!(out, "strands: {}", p.strands);
                    let _ = writeln!(out, "points: {} (n+ {}, n- {}, n0 {})", p.n(), p.n_plus, p.n_minus, p.n_zero);
                    let _ = writeln!(out, "writhe: {}", p.writhe());
                    let _ = writeln!(out, "endpoints: {}", p.endpoints);
                    for (q, s) in points.iter().enumerate() {
                        let _ = writeln!(out, "  {q:>2}  {s}");
                    }
                    Ok(out)
                }
                other => Err(unsupported(other, "check")),
            }
        }
        Command::States { input, enhanced } => {
            let d = read_divide(input)?;
            let cube = StateCube::new(&d, max)?;
            if *enhanced {
                let groups = enumerate_enhanced(&d, max)?;
                let mut sizes: BTreeMap<ResolutionWord, usize> = BTreeMap::new();
                for s in groups.values().flatten() {
                    if !sizes.contains_key(&s.word) {
                        sizes.insert(s.word, resolve_state(&d, &s.word)?.0.len());
                    }
                }
                let rows: Vec<(i64, i64, String, String)> = groups
                    .values()
                    .flatten()
                    .map(|s| (s.i, s.j, s.word.to_string(), sign_string(s.signs, sizes[&s.word])))
                    .collect();
                match fmt {
                    OutFormat::Json => Ok(report(
                        "states",
                        json!({ "enhanced": rows.iter().map(|(i, j, w, s)| json!({"i": i, "j": j, "word": w, "signs": s})).collect::<Vec<_>>() }),
                    )),
                    OutFormat::Text | OutFormat::Tsv => {
                        let sep = if fmt == OutFormat::Tsv { "\t" } else { "  " };
                        let mut out = ["i", "j", "word", "signs"].join(sep) + "\n";
                        for (i, j, w, s) in rows {
                            let _ = writeln!(out, "{}", [i.to_string(), j.to_string(), w, s].join(sep));
                        }
                        Ok(out)
                    }
                    other => Err(unsupported(other, "states")),
                }
            } else {
                let rows: Vec<(String, usize, usize, i64, i64)> = cube
                    .vertices()
                    .map(|full| {
                        let c = cube.components(full);
                        let g = cube.gradings(full);
                        (cube.free_word(full).to_string(), c.op, c.cl, g.i, g.k)
                    })
                    .collect();
                match fmt {
                    OutFormat::Json => Ok(report(
                        "states",
                        json!({ "states": rows.iter().map(|(w, op, cl, i, k)| json!({"word": w, "op": op, "cl": cl, "i": i, "k": k})).collect::<Vec<_>>() }),
                    )),
                    OutFormat::Text | OutFormat::Tsv => {
                        let sep = if fmt == OutFormat::Tsv { "\t" } else { "  " };
                        let mut out = ["word", "op", "cl", "i", "k"].join(sep) + "\n";
                        for (w, op, cl, i, k) in rows {
                            let _ = writeln!(out, "{}", [w, op.to_string(), cl.to_string(), i.to_string(), k.to_string()].join(sep));
                        }
                        Ok(out)
                    }
                    other => Err(unsupported(other, "states")),
                }
            }
        }
        Command::Complex { input, matrices } => {
            let d = read_divide(input)?;
            let c = build_complex(&d, max)?;
            let dims = c.dims();
            let entries: Vec<[i64; 4]> = if *matrices {
                c.diff
                    .iter()
                    .flat_map(|(&(i, j), rows)| {
                        rows.iter().enumerate().flat_map(move |(x, r)| r.iter().map(move |&y| [i, j, x as i64, y as i64]))
                    })
                    .collect()
            } else {
                Vec::new()
            };
            match fmt {
                OutFormat::Json => {
                    let mut body = json!({
                        "dims": dims.iter().map(|(&(i, j), d)| json!({"i": i, "j": j, "dim": d})).collect::<Vec<_>>(),
                        "total": c.total_dim(),
                        "nonzero_entries": c.nonzero_entries(),
                    });
                    if *matrices {
                        body["matrices"] = json!(entries);
                    }
                    Ok(report("complex", body))
                }
                OutFormat::Text | OutFormat::Tsv => {
                    let sep = if fmt == OutFormat::Tsv { "\t" } else { "  " };
                    let mut out = ["i", "j", "dim"].join(sep) + "\n";
                    for (&(i, j), n) in &dims {
                        let _ = writeln!(out, "{i}{sep}{j}{sep}{n}");
                    }
                    if fmt == OutFormat::Text {
                        let _ = writeln!(out, "total {}, nonzero entries {}", c.total_dim(), c.nonzero_entries());
                    }
                    if *matrices {
                        let _ = writeln!(out, "{}", ["i", "j", "source", "target"].join(sep));
                        for [i, j, x, y] in entries {
                            let _ = writeln!(out, "{i}{sep}{j}{sep}{x}{sep}{y}");
                        }
                    }
                    Ok(out)
                }
                other => Err(unsupported(other, "complex")),
            }
        }
        Command::Homology { input } => {
            let d = read_divide(input)?;
            let h = homology_table(&build_complex(&d, max)?);
            Ok(match fmt {
                OutFormat::Text => h.to_grid(),
                OutFormat::Tsv => h.to_tsv(),
                OutFormat::Latex => h.to_latex(),
                OutFormat::Json => report(
                    "homology",
                    json!({
                        "table": h.entries.iter().map(|(&(i, j), d)| json!({"i": i, "j": j, "dim": d})).collect::<Vec<_>>(),
                        "euler": graded_euler(&h).to_t_string(),
                    }),
                ),
            })
        }
        Command::Poly { input } => {
            let d = read_divide(input)?;
            let w = w_statesum(&d, max)?;
            Ok(match fmt {
                OutFormat::Text => w.to_t_string() + "\n",
                OutFormat::Latex => w.to_t_latex() + "\n",
                OutFormat::Tsv => {
                    let mut out = String::from("sqrt_t_exp\tcoeff\n");
                    for (e, c) in w.terms() {
                        let _ = writeln!(out, "{e}\t{c}");
                    }
                    out
                }
                OutFormat::Json => report("poly", json!({ "w": w.to_t_string(), "terms": poly_terms(&w) })),
            })
        }
        Command::Euler { input } => {
            let d = read_divide(input)?;
            let e = check_euler_relation(&d, max)?;
            let out = match fmt {
                OutFormat::Json => report(
                    "euler",
                    json!({ "w": e.w.to_t_string(), "chi": e.chi.to_t_string(), "holds": e.holds }),
                ),
                OutFormat::Text => format!(
                    "W   = {}\nchi = {}\nW(t^2)(1 + t^2) = t chi: {}\n",
                    e.w.to_t_string(),
                    e.chi.to_t_string(),
                    if e.holds { "holds" } else { "FAILS" }
                ),
                other => return Err(unsupported(other, "euler")),
            };
            if e.holds {
                Ok(out)
            } else {
                Err(Failure::internal("EulerRelationFailed", format!("W = {}, chi = {}", e.w.to_t_string(), e.chi.to_t_string())))
            }
        }
        Command::Moves { action: MovesCommand::Apply { descriptor, input } } => {
            let d = read_divide(input)?;
            let mv: MoveSpec = descriptor.parse()?;
            let out = apply_move(&d, mv)?;
            match fmt {
                OutFormat::Text => Ok(text::emit(&out, text::Format::Text)),
                OutFormat::Json => Ok(text::emit(&out, text::Format::Json) + "\n"),
                other => Err(unsupported(other, "moves apply")),
            }
        }
        Command::Rand { points, strands } => {
            if *points > max {
                return Err(StateError::TooManyPoints { points: *points, limit: max }.into());
            }
            let d = random_divide(cli.seed, *points, *strands);
            match fmt {
                OutFormat::Text => Ok(text::emit(&d, text::Format::Text)),
                OutFormat::Json => Ok(text::emit(&d, text::Format::Json) + "\n"),
                other => Err(unsupported(other, "rand")),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("warning: {e}");
        }
    }
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            if cli.format == OutFormat::Json {
                let err = json!({ "schema": 1, "error": { "kind": f.kind, "message": f.message, "exit_code": f.code } });
                eprintln!("{}", serde_json::to_string(&err).expect("serializable"));
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
