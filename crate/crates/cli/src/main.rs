use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use unitsurj::corpus::{run_corpus, CorpusConfig};
use unitsurj::matrix::{gl_lift, Matrix};
use unitsurj::ring::parse_elem_list;
use unitsurj::semiunit::{rho, semi_inverses, semi_unit_decomposition};
use unitsurj::spectrum::{idempotents, is_connected_mod_rad, jacobson_radical, maximal_ideals};
use unitsurj::star::{presented_star_check, ring_has_star, star_report};
use unitsurj::{
    build_ring_str, ideal_closure, quotient_ring, Elem, ElemSet, Error, FiniteRing, Ideal, Limits,
    PresentedRing, RhoValue, RingRef, StarMethod,
};

const EXIT_FALSE: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_GUARD: u8 = 65;
const EXIT_DEFECT: u8 = 70;

/// Unit groups of finite commutative rings and their quotients.
#[derive(Parser)]
#[command(name = "unitsurj", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Exit with status 2 when the computed verdict is false.
    #[arg(long, global = true)]
    fail_on_false: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Structure of a single ring.
    #[command(subcommand)]
    Ring(RingCommand),
    /// The rho function.
    #[command(subcommand)]
    Rho(RhoCommand),
    /// Decompose a semi-unit as r = u*e + t.
    Decompose { spec: String, elem: String },
    /// Whether units lift along quotient maps.
    #[command(subcommand)]
    Star(StarCommand),
    /// Invertible matrices along quotient maps.
    #[command(subcommand)]
    Gl(GlCommand),
    /// The verification corpus.
    #[command(subcommand)]
    Corpus(CorpusCommand),
}

#[derive(Subcommand)]
enum RingCommand {
    /// Carrier, units, radical, maximal ideals and idempotents.
    Info { spec: String },
    /// Every ideal.
    Ideals { spec: String },
}

#[derive(Subcommand)]
enum RhoCommand {
    /// rho and semi-inverses of every element.
    Table { spec: String },
}

#[derive(Subcommand)]
enum StarCommand {
    /// All four checks for R ->> R/I.
    Check {
        spec: String,
        /// Generators of I, comma separated.
        #[arg(long)]
        ideal: String,
    },
    /// Whether every quotient map out of the ring lifts units.
    Ring { spec: String },
    /// Whether Z or GF(p)[x] maps its units onto those of a quotient.
    Presented { ring: String, modulus: String },
}

#[derive(Subcommand)]
enum GlCommand {
    /// Lift an invertible matrix over R/I to one over R.
    Lift {
        spec: String,
        /// Generators of the kernel I, comma separated.
        ideal: String,
        /// Entries in R, rows separated by `;`; reduced mod I first.
        #[arg(long)]
        matrix: String,
    },
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// Check every acceptance criterion.
    Run {
        #[arg(long, default_value_t = CorpusConfig::default().max_carrier)]
        max_carrier: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Only use base rings up to this size as product factors.
        #[arg(long)]
        product_factor_max: Option<usize>,
    },
}

/// What a command computed.
struct Outcome {
    spec: Option<String>,
    result: Value,
    /// The boolean answer, for commands that have one.
    verdict: Option<bool>,
    timing: Map<String, Value>,
}

impl Outcome {
    fn new(spec: impl Into<String>, result: Value) -> Self {
        Outcome {
            spec: Some(spec.into()),
            result,
            verdict: None,
            timing: Map::new(),
        }
    }

    fn verdict(mut self, v: bool) -> Self {
        self.verdict = Some(v);
        self
    }
}

fn elem_json(ring: &FiniteRing, e: Elem) -> Value {
    rendered_json(ring.renders_as_integer(), &ring.render(e))
}

fn rendered_json(as_integer: bool, text: &str) -> Value {
    match text.parse::<i64>() {
        Ok(k) if as_integer => json!(k),
        _ => json!(text),
    }
}

fn set_json(ring: &FiniteRing, set: &ElemSet) -> Value {
    Value::Array(set.iter().map(|e| elem_json(ring, e)).collect())
}

fn ideal_json(ideal: &Ideal) -> Value {
    let ring = ideal.ring();
    json!({
        "generators": ideal.generators().iter().map(|&g| elem_json(ring, g)).collect::<Vec<_>>(),
        "elements": set_json(ring, ideal.members()),
    })
}

fn parse_ideal(ring: &RingRef, gens: &str) -> Result<Ideal, Error> {
    let gens = parse_elem_list(gens)?
        .iter()
        .map(|lit| ring.elem_from_literal(lit))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ideal_closure(ring, &gens))
}

fn ring_info(spec: &str) -> Result<Outcome, Error> {
    let ring = build_ring_str(spec)?;
    let rad = jacobson_radical(&ring)?;
    let maximal = maximal_ideals(&ring)?;
    Ok(Outcome::new(
        ring.spec().to_string(),
        json!({
            "carrier": ring.size(),
            "units": set_json(&ring, ring.units()),
            "rad": set_json(&ring, rad.members()),
            "maximalIdeals": maximal.len(),
            "maximalIdealList": maximal.iter().map(ideal_json).collect::<Vec<_>>(),
            "idempotents": set_json(&ring, &idempotents(&ring)),
            "connectedModRad": is_connected_mod_rad(&ring)?,
            "isField": ring.is_field(),
        }),
    ))
}

fn ring_ideals(spec: &str) -> Result<Outcome, Error> {
    let ring = build_ring_str(spec)?;
    let ideals = unitsurj::ring::enumerate_ideals(&ring)?;
    Ok(Outcome::new(
        ring.spec().to_string(),
        json!({
            "count": ideals.len(),
            "ideals": ideals.iter().map(ideal_json).collect::<Vec<_>>(),
        }),
    ))
}

fn rho_table(spec: &str) -> Result<Outcome, Error> {
    let ring = build_ring_str(spec)?;
    let mut rows = Vec::new();
    for r in ring.elements() {
        let value = rho(&ring, r)?;
        let mut row = json!({ "r": elem_json(&ring, r), "rho": value });
        if value == RhoValue::One {
            row["semiInverses"] = set_json(&ring, &semi_inverses(&ring, r)?);
        }
        rows.push(row);
    }
    Ok(Outcome::new(
        ring.spec().to_string(),
        json!({ "rows": rows }),
    ))
}

fn decompose(spec: &str, elem: &str) -> Result<Outcome, Error> {
    let ring = build_ring_str(spec)?;
    let r = ring.parse_elem(elem)?;
    let d = semi_unit_decomposition(&ring, r)?;
    let e = |x| elem_json(&ring, x);
    Ok(Outcome::new(
        ring.spec().to_string(),
        json!({
            "r": e(d.r),
            "u": e(d.u),
            "e": e(d.e),
            "t": e(d.t),
            "semiInverse": e(d.s),
            "certificates": d.certificates,
        }),
    )
    .verdict(d.certificates.all()))
}

fn star_check(spec: &str, gens: &str) -> Result<Outcome, Error> {
    let ring = build_ring_str(spec)?;
    let ideal = parse_ideal(&ring, gens)?;
    let report = star_report(&ideal)?;
    let as_integer = ring.renders_as_integer();
    let methods: Map<String, Value> = StarMethod::ALL
        .iter()
        .map(|&m| {
            let v = report.verdict(m);
            let witness = v.witness.as_deref().map(|w| rendered_json(as_integer, w));
            (
                m.name().to_string(),
                json!({ "holds": v.holds, "witness": witness }),
            )
        })
        .collect();
    Ok(Outcome::new(
        ring.spec().to_string(),
        json!({
            "ideal": ideal_json(&ideal),
            "holds": report.holds,
            "methods": methods,
        }),
    )
    .verdict(report.holds))
}

fn star_ring(spec: &str) -> Result<Outcome, Error> {
    let ring = build_ring_str(spec)?;
    let report = ring_has_star(&ring)?;
    let as_integer = ring.renders_as_integer();
    let ideals: Vec<Value> = report
        .per_ideal
        .iter()
        .map(|v| {
            json!({
                "ideal": v.ideal,
                "holds": v.holds,
                "witness": v.witness.as_deref().map(|w| rendered_json(as_integer, w)),
            })
        })
        .collect();
    Ok(Outcome::new(
        ring.spec().to_string(),
        json!({ "holds": report.holds, "ideals": ideals }),
    )
    .verdict(report.holds))
}

fn star_presented(ring: &str, modulus: &str) -> Result<Outcome, Error> {
    let presented = PresentedRing::parse(ring)?;
    let modulus = presented.parse_elem(modulus)?;
    let report = presented_star_check(&presented, &modulus, Limits::default())?;
    let as_integer = matches!(presented, PresentedRing::Integers);
    let all = |xs: &[String]| {
        xs.iter()
            .map(|x| rendered_json(as_integer, x))
            .collect::<Vec<_>>()
    };
    Ok(Outcome::new(
        presented.to_string(),
        json!({
            "quotient": report.quotient,
            "hasStar": report.has_star,
            "witness": report.witness.as_deref().map(|w| rendered_json(as_integer, w)),
            "unitImage": all(&report.unit_image),
            "quotientUnits": all(&report.quotient_units),
        }),
    )
    .verdict(report.has_star))
}

fn gl_lift_command(spec: &str, gens: &str, matrix: &str) -> Result<Outcome, Error> {
    let ring = build_ring_str(spec)?;
    let ideal = parse_ideal(&ring, gens)?;
    let (target, p) = quotient_ring(&ring, &ideal)?;
    let b = Matrix::parse(&ring, matrix)?.map(&p);
    let lift = gl_lift(&p, &b)?;
    let inverse = lift
        .inverse()?
        .ok_or_else(|| Error::Defect(format!("lift [{}] is not invertible", lift.render())))?;
    let rows = |m: &Matrix| -> Value {
        let r = m.ring();
        (0..m.dimension())
            .map(|i| {
                (0..m.dimension())
                    .map(|j| elem_json(r, m.get(i, j)))
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
            .into()
    };
    Ok(Outcome::new(
        ring.spec().to_string(),
        json!({
            "target": target.spec().to_string(),
            "kernel": ideal_json(&ideal),
            "matrix": rows(&b),
            "lift": rows(&lift),
            "det": elem_json(&ring, lift.det()),
            "inverse": rows(&inverse),
        }),
    ))
}

fn corpus_run(max_carrier: usize, seed: u64, product_factor_max: Option<usize>) -> Outcome {
    let config = CorpusConfig {
        max_carrier,
        seed,
        product_factor_max,
        ..CorpusConfig::default()
    };
    let (report, timing) = run_corpus(&config);
    let passed = report.passed;
    let mut outcome = Outcome {
        spec: None,
        result: serde_json::to_value(&report).expect("report serializes"),
        verdict: Some(passed),
        timing: Map::new(),
    };
    outcome.timing.insert(
        "perCriterionMs".into(),
        serde_json::to_value(&timing.per_criterion_ms).expect("timing serializes"),
    );
    outcome
}

fn execute(command: &Command) -> Result<Outcome, Error> {
    match command {
        Command::Ring(RingCommand::Info { spec }) => ring_info(spec),
        Command::Ring(RingCommand::Ideals { spec }) => ring_ideals(spec),
        Command::Rho(RhoCommand::Table { spec }) => rho_table(spec),
        Command::Decompose { spec, elem } => decompose(spec, elem),
        Command::Star(StarCommand::Check { spec, ideal }) => star_check(spec, ideal),
        Command::Star(StarCommand::Ring { spec }) => star_ring(spec),
        Command::Star(StarCommand::Presented { ring, modulus }) => star_presented(ring, modulus),
        Command::Gl(GlCommand::Lift {
            spec,
            ideal,
            matrix,
        }) => gl_lift_command(spec, ideal, matrix),
        Command::Corpus(CorpusCommand::Run {
            max_carrier,
            seed,
            product_factor_max,
        }) => Ok(corpus_run(*max_carrier, *seed, *product_factor_max)),
    }
}

fn error_kind(e: &Error) -> (&'static str, u8) {
    if e.is_defect() {
        ("defect", EXIT_DEFECT)
    } else if e.is_guard() {
        ("guard", EXIT_GUARD)
    } else {
        ("input", EXIT_USAGE)
    }
}

/// Indented `key: value` lines; arrays of scalars stay on one line.
fn write_text(out: &mut String, value: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                if is_scalar_like(v) {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar_text(v)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    write_text(out, v, indent + 1);
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                if is_scalar_like(item) {
                    out.push_str(&format!("{pad}- {}\n", scalar_text(item)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    write_text(out, item, indent + 1);
                }
            }
        }
        v => out.push_str(&format!("{pad}{}\n", scalar_text(v))),
    }
}

fn is_scalar_like(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|i| !i.is_array() && !i.is_object()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        Value::Array(items) => {
            format!(
                "[{}]",
                items.iter().map(scalar_text).collect::<Vec<_>>().join(", ")
            )
        }
        other => other.to_string(),
    }
}

fn corpus_text(result: &Value) -> String {
    let mut out = String::new();
    for c in result["criteria"].as_array().into_iter().flatten() {
        let mark = if c["passed"] == json!(true) {
            "PASS"
        } else {
            "FAIL"
        };
        out.push_str(&format!(
            "{mark} {:>2} {} ({} checked)\n",
            c["id"],
            scalar_text(&c["name"]),
            c["checked"]
        ));
        for f in c["failures"].as_array().into_iter().flatten() {
            out.push_str(&format!("        {}\n", scalar_text(f)));
        }
    }
    out
}

/// A closed pipe downstream is not an error of ours.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let start = Instant::now();
    let outcome = execute(&cli.command);
    let total_ms = start.elapsed().as_secs_f64() * 1e3;

    let mut envelope = json!({
        "command": echo,
        "version": env!("CARGO_PKG_VERSION"),
    });
    let code = match &outcome {
        Ok(o) => {
            envelope["spec"] = json!(o.spec);
            envelope["result"] = o.result.clone();
            let mut timing = o.timing.clone();
            timing.insert("totalMs".into(), json!(total_ms));
            envelope["timing"] = Value::Object(timing);
            if cli.fail_on_false && o.verdict == Some(false) {
                EXIT_FALSE
            } else {
                0
            }
        }
        Err(e) => {
            let (kind, code) = error_kind(e);
            envelope["error"] = json!({ "kind": kind, "message": e.to_string() });
            code
        }
    };

    match cli.format {
        Format::Json => emit(&(serde_json::to_string_pretty(&envelope).expect("json") + "\n")),
        Format::Text => match &outcome {
            Ok(o) if matches!(cli.command, Command::Corpus(_)) => emit(&corpus_text(&o.result)),
            Ok(o) => {
                let mut out = String::new();
                write_text(&mut out, &o.result, 0);
                emit(&out);
            }
            Err(e) => eprintln!("error: {e}"),
        },
    }
    ExitCode::from(code)
}
