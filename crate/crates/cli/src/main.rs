use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use gamma_forge::arakelov::{
    class_invariant, h0_count, m_surjectivity_check, sections, ArakelovDivisor, OpenSet,
};
use gamma_forge::assembly::{assembly, assembly_hb, assembly_hb_generic, krel_rep, to_formal_sum};
use gamma_forge::constructions::{eilenberg_maclane, hyper_add};
use gamma_forge::krel::{act, canonical_form, enumerate_reduced, KRelation};
use gamma_forge::quotient::{quotient_algebra, recover_hyperring, UnitSubgroup};
use gamma_forge::rational::format_rational;
use gamma_forge::rays::sign_hyperfield_table;
use gamma_forge::suite::run_suite;
use gamma_forge::{FiniteSemiring, GammaError, PointedMap};

#[derive(Parser)]
#[command(name = "gamma-forge", version, about = "Executable Γ-sets, S-algebras and their invariants")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced k-relation classes up to a size bound
    EnumKrel {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max: usize,
        /// keep only one shape, e.g. 3x3
        #[arg(long)]
        shape: Option<String>,
    },
    /// Act on a k-relation class with a pointed map
    KrelAct {
        #[arg(long)]
        map: String,
        #[arg(long = "in")]
        input: String,
    },
    /// Hyperaddition of two level-1 elements
    Hyperadd {
        /// HB, HF2, HZ/n, HN<=m or H<table file>
        #[arg(long)]
        algebra: String,
        /// comma-separated units to quotient by
        #[arg(long)]
        units: Option<String>,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
    },
    /// Hyperring tables of HA/G, or the sign hyperfield through rays
    Hyperfield {
        #[arg(long, required_unless_present = "signs")]
        ring: Option<String>,
        #[arg(long)]
        units: Option<String>,
        #[arg(long, conflicts_with_all = ["ring", "units"])]
        signs: bool,
    },
    /// Assembly of a k-relation read as (F+, G+, v, all ones)
    Assembly {
        #[arg(long)]
        semiring: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        input: String,
    },
    /// Divisors on the compactified Spec Z
    Arakelov {
        #[command(subcommand)]
        command: ArakelovCommand,
    },
    /// The seeded property suite
    Check {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum ArakelovCommand {
    /// Number of global level-1 sections
    H0 {
        #[arg(long)]
        divisor: String,
    },
    /// Sections over an open set
    Sections {
        #[arg(long)]
        divisor: String,
        #[arg(long, default_value = "all", allow_hyphen_values = true)]
        open: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        height: Option<i128>,
        #[arg(long)]
        strict: bool,
    },
    /// Capacity, the invariant up to principal divisors
    Class {
        #[arg(long)]
        divisor: String,
    },
    /// Local factorization of the sections of D + D'
    Factor {
        #[arg(long)]
        divisor: String,
        #[arg(long)]
        other: String,
        #[arg(long, default_value_t = 20)]
        height: i128,
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Serialize)]
struct Report {
    command: String,
    status: &'static str,
    seed: u64,
    payload: Value,
}

struct Outcome {
    passed: bool,
    seed: u64,
    payload: Value,
}

fn pass(payload: Value) -> Outcome {
    Outcome { passed: true, seed: 0, payload }
}

fn read_arg_or_file(text: &str) -> Result<String, GammaError> {
    if text.trim_start().starts_with('{') || text.trim_start().starts_with('[') {
        return Ok(text.to_string());
    }
    fs::read_to_string(text).map_err(|e| GammaError::Parse(format!("cannot read `{text}`: {e}")))
}

fn read_krel(path: &str) -> Result<KRelation, GammaError> {
    let text = if path == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| GammaError::Parse(e.to_string()))?
    } else {
        fs::read_to_string(path).map_err(|e| GammaError::Parse(format!("cannot read `{path}`: {e}")))?
    };
    text.parse()
}

fn semiring(spec: &str) -> Result<FiniteSemiring, GammaError> {
    FiniteSemiring::builtin(spec).or_else(|e| match fs::read_to_string(spec) {
        Ok(text) => FiniteSemiring::parse_table(&text),
        Err(_) => Err(e),
    })
}

fn units(ring: &FiniteSemiring, list: Option<&str>) -> Result<UnitSubgroup, GammaError> {
    match list {
        None => UnitSubgroup::units(ring.clone()),
        Some(l) => {
            let elems = l
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| GammaError::Parse(format!("bad unit `{t}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            UnitSubgroup::new(ring.clone(), elems)
        }
    }
}

fn krel_json(c: &KRelation) -> Value {
    json!({"k": c.k(), "rows": c.rows(), "cols": c.cols(), "entries": c.to_rows()})
}

fn run(cmd: &Command) -> Result<Outcome, GammaError> {
    match cmd {
        Command::EnumKrel { k, max, shape } => {
            let shape = shape
                .as_deref()
                .map(|s| {
                    let (r, c) = s.split_once('x').ok_or_else(|| GammaError::Parse(format!("bad shape `{s}`")))?;
                    let p = |t: &str| t.trim().parse::<usize>().map_err(|_| GammaError::Parse(format!("bad shape `{s}`")));
                    Ok::<_, GammaError>((p(r)?, p(c)?))
                })
                .transpose()?;
            let classes: Vec<KRelation> =
                enumerate_reduced(*k, *max, *max)?.into_iter().filter(|c| shape.is_none_or(|s| c.shape() == s)).collect();
            Ok(pass(json!({
                "k": k,
                "max": max,
                "shape": shape.map(|(r, c)| format!("{r}x{c}")),
                "count": classes.len(),
                "classes": classes.iter().map(krel_json).collect::<Vec<_>>(),
            })))
        }
        Command::KrelAct { map, input } => {
            let f: PointedMap = map.parse()?;
            let c = read_krel(input)?;
            if f.source() != c.k() {
                return Err(GammaError::Domain(format!("map starts at {}+, relation lives at {}+", f.source(), c.k())));
            }
            let out = act(&f, &Some(canonical_form(&c)?))?;
            Ok(pass(json!({
                "map": f.to_string(),
                "input": krel_json(&canonical_form(&c)?),
                "output": out.as_ref().map(krel_json),
            })))
        }
        Command::Hyperadd { algebra, units: list, x, y } => {
            let name = algebra.strip_prefix('H').unwrap_or(algebra);
            let ring = semiring(name)?;
            for v in [x, y] {
                if *v >= ring.len() {
                    return Err(GammaError::Domain(format!("element {v} outside {}", ring.name())));
                }
            }
            let label = |i: usize| ring.labels()[i].clone();
            let sum: Vec<String> = match list {
                None => {
                    let h = eilenberg_maclane(ring.clone());
                    hyper_add(&h, &vec![*x], &vec![*y])?.into_iter().map(|v| label(v[0])).collect()
                }
                Some(l) => {
                    let q = quotient_algebra(units(&ring, Some(l))?);
                    let (a, b) = (q.project(&[*x]), q.project(&[*y]));
                    hyper_add(&q, &a, &b)?.into_iter().map(|v| label(v[0])).collect()
                }
            };
            Ok(pass(json!({"algebra": algebra, "units": list, "x": label(*x), "y": label(*y), "sum": sum})))
        }
        Command::Hyperfield { ring, units: list, signs } => {
            if *signs {
                return Ok(pass(serde_json::to_value(sign_hyperfield_table()).expect("serializable")));
            }
            let ring = semiring(ring.as_deref().expect("clap requires --ring"))?;
            let table = recover_hyperring(&units(&ring, list.as_deref())?)?;
            Ok(pass(json!({"ring": ring.name(), "table": table})))
        }
        Command::Assembly { semiring: spec, k, input } => {
            let ring = semiring(spec)?;
            let c = read_krel(input)?;
            if c.k() != *k {
                return Err(GammaError::Domain(format!("relation is at level {}, --k is {k}", c.k())));
            }
            let h = eilenberg_maclane(ring.clone());
            let sum = to_formal_sum(&ring, &assembly(&h, &h, &krel_rep(&c))?);
            let terms: Vec<Value> = sum
                .terms()
                .iter()
                .map(|(inner, &coeff)| {
                    let inner: Vec<String> = inner.iter().map(|&a| ring.labels()[a].clone()).collect();
                    json!({"coeff": ring.labels()[coeff], "inner": inner})
                })
                .collect();
            let mut payload = json!({"semiring": ring.name(), "k": k, "input": krel_json(&c), "terms": terms});
            if ring.name() == "B" {
                let closed: Vec<BTreeSet<usize>> = assembly_hb(&c).into_iter().collect();
                let generic: Vec<BTreeSet<usize>> = assembly_hb_generic(&c)?.into_iter().collect();
                let agree = closed == generic;
                payload["sets"] = json!(closed);
                payload["closed_formula_agrees"] = json!(agree);
                return Ok(Outcome { passed: agree, seed: 0, payload });
            }
            Ok(pass(payload))
        }
        Command::Arakelov { command } => run_arakelov(command),
        Command::Check { seed } => {
            let r = run_suite(*seed)?;
            Ok(Outcome { passed: r.passed(), seed: *seed, payload: serde_json::to_value(&r).expect("serializable") })
        }
    }
}

fn run_arakelov(cmd: &ArakelovCommand) -> Result<Outcome, GammaError> {
    match cmd {
        ArakelovCommand::H0 { divisor } => {
            let d = ArakelovDivisor::from_json(&read_arg_or_file(divisor)?)?;
            Ok(pass(json!({
                "divisor": d,
                "capacity": format_rational(&d.capacity()),
                "h0": u64::try_from(h0_count(&d)).map(Value::from).unwrap_or_else(|_| json!(h0_count(&d).to_string())),
            })))
        }
        ArakelovCommand::Sections { divisor, open, k, height, strict } => {
            let d = ArakelovDivisor::from_json(&read_arg_or_file(divisor)?)?;
            let u: OpenSet = open.parse()?;
            let height = height.unwrap_or_else(|| if u == OpenSet::global() { d.sufficient_height() } else { 10 });
            let found = sections(&d, &u, *k, height, *strict)?;
            Ok(pass(json!({
                "divisor": d,
                "open": u,
                "k": k,
                "height": height.to_string(),
                "strict": strict,
                "count": found.len(),
                "sections": found,
            })))
        }
        ArakelovCommand::Class { divisor } => {
            let d = ArakelovDivisor::from_json(&read_arg_or_file(divisor)?)?;
            Ok(pass(json!({"divisor": d, "capacity": format_rational(&class_invariant(&d))})))
        }
        ArakelovCommand::Factor { divisor, other, height, strict } => {
            let d = ArakelovDivisor::from_json(&read_arg_or_file(divisor)?)?;
            let e = ArakelovDivisor::from_json(&read_arg_or_file(other)?)?;
            let r = m_surjectivity_check(&d, &e, *height, *strict)?;
            Ok(Outcome { passed: r.passed(), seed: 0, payload: json!({"left": d, "right": e, "report": r}) })
        }
    }
}

fn error_kind(e: &GammaError) -> &'static str {
    match e {
        GammaError::Domain(_) => "domain",
        GammaError::Unsupported(_) => "unsupported",
        GammaError::Resource(_) => "resource",
        GammaError::Parse(_) => "parse",
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// `field,value` rows; nested values are written as compact JSON.
fn to_csv(r: &Report) -> String {
    let mut out = String::from("field,value\n");
    let mut row = |k: &str, v: &str| out.push_str(&format!("{},{}\n", csv_field(k), csv_field(v)));
    row("command", &r.command);
    row("status", r.status);
    row("seed", &r.seed.to_string());
    if let Value::Object(map) = &r.payload {
        for (k, v) in map {
            let text = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            row(k, &text);
        }
    } else {
        row("payload", &r.payload.to_string());
    }
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let command = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let (report, code) = match run(&cli.command) {
        Ok(o) => {
            let status = if o.passed { "pass" } else { "fail" };
            (Report { command, status, seed: o.seed, payload: o.payload }, u8::from(!o.passed))
        }
        Err(e) => {
            let payload = json!({"error": {"kind": error_kind(&e), "message": e.to_string()}});
            (Report { command, status: "fail", seed: 0, payload }, 1)
        }
    };
    let text = match cli.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&report).expect("serializable")),
        Format::Csv => to_csv(&report),
    };
    // a closed pipe is not an error of the computation
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    ExitCode::from(code)
}
