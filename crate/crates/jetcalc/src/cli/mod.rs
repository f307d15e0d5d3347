//! Command-line front end: deterministic text/JSON output over the
//! engine, with machine-readable single-line diagnostics on stderr.
//!
//! Exit codes: 0 success, 1 computation found no certificate within the
//! cap (or an identity sweep failed), 2 usage or parse error, 3
//! precondition violation.

pub mod expr;

pub use expr::{eval, parse, validate, Expr};

use std::collections::BTreeMap;
use std::io::Write;

use serde_json::{json, Value};

use crate::bigness::{morse_criterion_with, technical_lemma_audit_with};
use crate::degeneracy::{degeneracy_report, DegeneracyInput};
use crate::error::Error;
use crate::schur::{
    numerical_positivity_report, schur_delta, series_inverse, ClassSequence, Partition,
};
use crate::towerchow::{Tower, TowerGeometry};

const DEFAULT_DELTA_MAX: u32 = 200;

const USAGE: &str = "\
jetcalc - exact intersection calculus on jet towers over complete intersections

usage: jetcalc <command> [flags] [expression]

commands:
  segre        --N <int> --c <int> [--m <int>]      base Segre polynomials
  integrate    --N <int> --c <int> --level <int> <expr>
  delta        --N <int> --c <int> --a <int> [--max <int>]
  positivity   --N <int> --c <int> --a <int> [--max <int>]
  audit        --N <int> --c <int>
  degeneracy   --N <int> --c <int>
  schur-verify --weight <int>

flags:
  --json       emit JSON instead of text (degeneracy is always JSON)
  --help       print this help

environment:
  JETCALC_DELTA_MAX  default search cap for certified bounds (200)

expression grammar:
  expr := term (('+'|'-') term)* ; term := factor ('*' factor)*
  factor := atom ('^' uint)?
  atom := u(<k>) | h | s(<k>,<i>) | l(<k>) | d<i> | <uint> | (expr)
        | integrate(<k>, expr)
";

struct Flags {
    values: BTreeMap<String, i64>,
    json: bool,
    positional: Vec<String>,
}

fn parse_flags(args: &[String]) -> Result<Flags, Error> {
    let mut values = BTreeMap::new();
    let mut json = false;
    let mut positional = Vec::new();
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--json" => json = true,
            "--help" => {
                values.insert("help".to_string(), 1);
            }
            flag if flag.starts_with("--") => {
                let key = flag.trim_start_matches("--").to_string();
                if !["N", "c", "a", "m", "level", "max", "weight"].contains(&key.as_str()) {
                    return Err(Error::Usage(format!("unknown flag `{flag}`")));
                }
                let raw = it
                    .next()
                    .ok_or_else(|| Error::Usage(format!("flag `{flag}` needs a value")))?;
                let value: i64 = raw
                    .parse()
                    .map_err(|_| Error::Usage(format!("flag `{flag}` needs an integer, got `{raw}`")))?;
                values.insert(key, value);
            }
            other => positional.push(other.to_string()),
        }
    }
    Ok(Flags {
        values,
        json,
        positional,
    })
}

impl Flags {
    fn required(&self, key: &str) -> Result<i64, Error> {
        self.values
            .get(key)
            .copied()
            .ok_or_else(|| Error::Usage(format!("missing required flag `--{key}`")))
    }

    fn optional(&self, key: &str) -> Option<i64> {
        self.values.get(key).copied()
    }

    fn usize_flag(&self, key: &str) -> Result<usize, Error> {
        let v = self.required(key)?;
        usize::try_from(v).map_err(|_| Error::Usage(format!("flag `--{key}` must be nonnegative")))
    }
}

fn delta_cap(flags: &Flags) -> Result<u32, Error> {
    if let Some(v) = flags.optional("max") {
        return u32::try_from(v).map_err(|_| Error::Usage("--max must be nonnegative".into()));
    }
    match std::env::var("JETCALC_DELTA_MAX") {
        Ok(raw) => raw
            .parse::<u32>()
            .map_err(|_| Error::Usage(format!("JETCALC_DELTA_MAX must be a nonnegative integer, got `{raw}`"))),
        Err(_) => Ok(DEFAULT_DELTA_MAX),
    }
}

fn geometry(flags: &Flags) -> Result<TowerGeometry, Error> {
    TowerGeometry::new(flags.usize_flag("N")?, flags.usize_flag("c")?)
}

fn error_json(e: &Error) -> Value {
    match e {
        Error::Parse(d) => json!({
            "error": "parse",
            "line": d.line,
            "col": d.col,
            "expected": d.expected,
            "found": d.found,
        }),
        Error::Usage(m) => json!({"error": "usage", "message": m}),
        Error::OutOfRange { atom, max } => {
            json!({"error": "out-of-range", "atom": atom, "max": max})
        }
        Error::Precondition(m) => json!({"error": "precondition", "message": m}),
        Error::Domain(m) => json!({"error": "domain", "message": m}),
        Error::LevelMismatch { expected, found } => json!({
            "error": "level-mismatch", "expected": expected, "found": found,
        }),
        Error::DimensionMismatch(m) => json!({"error": "dimension-mismatch", "message": m}),
        Error::ZeroDominant => json!({"error": "domain", "message": "zero polynomial has no dominant part"}),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Usage(_) | Error::OutOfRange { .. } => 2,
        _ => 3,
    }
}

/// Run one invocation; output is written to the provided streams and the
/// process exit code is returned.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(args, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{}", error_json(&e));
            exit_code(&e)
        }
    }
}

fn dispatch(args: &[String], out: &mut dyn Write) -> Result<i32, Error> {
    let Some(command) = args.first() else {
        return Err(Error::Usage("missing command; try --help".into()));
    };
    if command == "--help" || command == "help" {
        write_out(out, USAGE)?;
        return Ok(0);
    }
    let flags = parse_flags(&args[1..])?;
    if flags.values.contains_key("help") {
        write_out(out, USAGE)?;
        return Ok(0);
    }
    match command.as_str() {
        "segre" => cmd_segre(&flags, out),
        "integrate" => cmd_integrate(&flags, out),
        "delta" => cmd_delta(&flags, out),
        "positivity" => cmd_positivity(&flags, out),
        "audit" => cmd_audit(&flags, out),
        "degeneracy" => cmd_degeneracy(&flags, out),
        "schur-verify" => cmd_schur_verify(&flags, out),
        other => Err(Error::Usage(format!("unknown command `{other}`; try --help"))),
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Error> {
    out.write_all(text.as_bytes())
        .map_err(|e| Error::Usage(format!("write failed: {e}")))
}

fn cmd_segre(flags: &Flags, out: &mut dyn Write) -> Result<i32, Error> {
    let geom = geometry(flags)?;
    let m = flags.optional("m").unwrap_or(0);
    let tower = Tower::new(geom);
    let segre = tower.base_segre(m);
    if flags.json {
        let v = json!({
            "N": geom.ambient_dim,
            "c": geom.codim,
            "m": m,
            "segre": segre.iter().map(|p| p.to_json()).collect::<Vec<Value>>(),
        });
        write_out(out, &format!("{v}\n"))?;
    } else {
        let mut text = String::new();
        for (l, p) in segre.iter().enumerate() {
            text.push_str(&format!("s~{l} = {p}\n"));
        }
        write_out(out, &text)?;
    }
    Ok(0)
}

fn cmd_integrate(flags: &Flags, out: &mut dyn Write) -> Result<i32, Error> {
    let geom = geometry(flags)?;
    let level = flags.usize_flag("level")?;
    let src = flags
        .positional
        .first()
        .ok_or_else(|| Error::Usage("integrate needs an expression argument".into()))?;
    let expr = parse(src)?;
    validate(&expr, geom.codim, geom.kappa, level)?;
    let tower = Tower::new(geom);
    let cls = eval(&expr, &tower, level)?;
    let result = tower.integrate(&cls)?;
    if flags.json {
        let v = json!({
            "N": geom.ambient_dim,
            "c": geom.codim,
            "level": level,
            "result": result.to_json(),
        });
        write_out(out, &format!("{v}\n"))?;
    } else {
        write_out(out, &format!("{result}\n"))?;
    }
    Ok(0)
}

fn cmd_delta(flags: &Flags, out: &mut dyn Write) -> Result<i32, Error> {
    let geom = geometry(flags)?;
    let a = flags.required("a")?;
    let a = u32::try_from(a)
        .map_err(|_| Error::Precondition(format!("delta needs a >= 0, got {a}")))?;
    let cap = delta_cap(flags)?;
    let tower = Tower::new(geom);
    let report = morse_criterion_with(&tower, a, cap)?;
    if flags.json {
        write_out(out, &format!("{}\n", report.to_json()))?;
    } else {
        write_out(out, &format!("{report}\n"))?;
    }
    Ok(if report.delta.is_some() { 0 } else { 1 })
}

fn cmd_positivity(flags: &Flags, out: &mut dyn Write) -> Result<i32, Error> {
    let geom = geometry(flags)?;
    let a = flags.required("a")?;
    let cap = delta_cap(flags)?;
    let report = numerical_positivity_report(&geom, a, cap)?;
    if flags.json {
        write_out(out, &format!("{}\n", report.to_json()))?;
    } else {
        write_out(out, &format!("{report}\n"))?;
    }
    Ok(if report.d_bound.is_some() { 0 } else { 1 })
}

fn cmd_audit(flags: &Flags, out: &mut dyn Write) -> Result<i32, Error> {
    let geom = geometry(flags)?;
    let tower = Tower::new(geom);
    let report = technical_lemma_audit_with(&tower)?;
    if flags.json {
        write_out(out, &format!("{}\n", report.to_json()))?;
    } else {
        write_out(out, &format!("{report}\n"))?;
    }
    Ok(if report.pass { 0 } else { 1 })
}

fn cmd_degeneracy(flags: &Flags, out: &mut dyn Write) -> Result<i32, Error> {
    let input = DegeneracyInput::new(flags.usize_flag("N")?, flags.usize_flag("c")?)?;
    let report = degeneracy_report(input);
    write_out(out, &format!("{}\n", report.to_json()))?;
    Ok(0)
}

fn cmd_schur_verify(flags: &Flags, out: &mut dyn Write) -> Result<i32, Error> {
    let weight = flags.usize_flag("weight")?;
    if weight == 0 || weight > 12 {
        return Err(Error::Usage("--weight must be between 1 and 12".into()));
    }
    let formal = ClassSequence::formal(weight);
    let inverse = series_inverse(&formal, weight);
    let mut results = Vec::new();
    let mut all_ok = true;
    for w in 1..=weight as u32 {
        for lambda in Partition::partitions_of(w) {
            let conjugate = lambda.conjugate();
            let ok = schur_delta(&lambda, &formal) == schur_delta(&conjugate, &inverse);
            all_ok &= ok;
            results.push((lambda, conjugate, ok));
        }
    }
    if flags.json {
        let v = json!({
            "weight": weight,
            "results": results
                .iter()
                .map(|(l, cj, ok)| json!({
                    "lambda": l.parts(),
                    "conjugate": cj.parts(),
                    "ok": ok,
                }))
                .collect::<Vec<Value>>(),
            "all_ok": all_ok,
        });
        write_out(out, &format!("{v}\n"))?;
    } else {
        let mut text = String::new();
        for (l, cj, ok) in &results {
            text.push_str(&format!(
                "{} {} conjugate {}\n",
                if *ok { "ok  " } else { "FAIL" },
                l,
                cj
            ));
        }
        text.push_str(&format!(
            "{} partitions checked, all_ok = {all_ok}\n",
            results.len()
        ));
        write_out(out, &text)?;
    }
    Ok(if all_ok { 0 } else { 1 })
}
