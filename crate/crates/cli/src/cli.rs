//! Command-line front end.
//!
//! Exit codes: 0 success or check passed, 1 check failed, 2 usage, parse or
//! input error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use ishuffle_core::{
    corollary_check, ideal_certificate, ideal_wheel_check, reduce2, reduce3, shuffle,
    verify_certificate, verify_ideal_certificate, verify_lemma, wheel_check, GeneratorWord,
    LemmaRelation, ShuffleElement,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::cert::{self, Certificate, SCHEMA};
use crate::expr::{self, parse_word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "ishuffle", version, about = "Exact computations in the integral shuffle algebra")]
struct Cli {
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized property commands
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression and print its canonical polynomial
    Expand {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Wheel conditions, by substitution and by reduction modulo the two ideals
    Wheel {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Divisibility of P(z1, -z1, ...) by (1 + q1)(1 + q2)(1 + q)
    Corollary {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Check a word relation: `a` is the uniform shift by (z1...zk)^N,
    /// `b` the power sum p_N acting letter by letter
    #[command(allow_negative_numbers = true)]
    Lemma {
        which: Which,
        #[arg(allow_hyphen_values = true)]
        word: String,
        n: i32,
    },
    /// Rewrite an arity-2 word in the basis [0,0], [1,0]
    Reduce2 {
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        verify: bool,
    },
    /// Rewrite an arity-3 word in the six-word basis
    Reduce3 {
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        verify: bool,
    },
    /// Cofactors A, B with expand(WORD) = A g1 + B g2
    IdealCert {
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        verify: bool,
    },
    /// Compare (z^A * z^B) * z^C with z^A * (z^B * z^C)
    #[command(allow_negative_numbers = true)]
    Assoc { a: i32, b: i32, c: i32 },
    /// Check a certificate file (`-` reads stdin)
    VerifyCert { file: String },
    /// Seeded random checks of associativity and the wheel conditions
    Props {
        #[arg(long, default_value_t = 20)]
        cases: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Which {
    A,
    B,
}

/// Error surfaced to the user with exit code 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

struct Ctx<'a> {
    json: bool,
    seed: u64,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn line(&mut self, s: impl std::fmt::Display) {
        let _ = writeln!(self.out, "{}", s);
    }

    fn emit(&mut self, v: serde_json::Value) {
        let _ = writeln!(self.out, "{}", serde_json::to_string_pretty(&v).expect("json"));
    }
}

fn code(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_FALSE
    }
}

/// Parses `args` (including the program name) and runs one command.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{}", text);
            } else {
                let _ = write!(out, "{}", text);
            }
            return code;
        }
    };
    let mut ctx = Ctx { json: cli.json, seed: cli.seed, out };
    match dispatch(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {}", msg);
            EXIT_ERROR
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = run_with(args, &mut stdout.lock(), &mut stderr.lock());
    let _ = std::io::stdout().flush();
    code
}

fn element(text: &str) -> Result<ShuffleElement, Failure> {
    Ok(expr::eval(&expr::parse(text)?)?)
}

fn word_of_arity(text: &str, k: usize) -> Result<GeneratorWord, Failure> {
    let w = parse_word(text)?;
    if w.arity() != k {
        return Err(Failure(format!("expected a word of arity {}, got {}", k, w)));
    }
    Ok(w)
}

fn dispatch(cmd: Command, ctx: &mut Ctx) -> Result<i32, Failure> {
    match cmd {
        Command::Expand { expr } => {
            let e = element(&expr)?;
            if ctx.json {
                ctx.emit(json!({"schema": SCHEMA, "arity": e.arity(), "poly": e.poly().to_string()}));
            } else {
                ctx.line(e.poly());
            }
            Ok(EXIT_OK)
        }
        Command::Wheel { expr } => {
            let e = element(&expr)?;
            let by_substitution = wheel_check(&e);
            let by_ideal = ideal_wheel_check(&e)?;
            let ok = by_substitution && by_ideal;
            if ctx.json {
                ctx.emit(json!({
                    "schema": SCHEMA,
                    "arity": e.arity(),
                    "vacuous": e.arity() < 3,
                    "wheel": by_substitution,
                    "ideal_wheel": by_ideal,
                }));
            } else {
                ctx.line(if ok { "true" } else { "false" });
                if by_substitution != by_ideal {
                    ctx.line(format!("substitution: {}, ideal reduction: {}", by_substitution, by_ideal));
                }
            }
            Ok(code(ok))
        }
        Command::Corollary { expr } => {
            let e = element(&expr)?;
            if e.arity() < 2 {
                if ctx.json {
                    ctx.emit(json!({"schema": SCHEMA, "arity": e.arity(), "vacuous": true, "divisible": true}));
                } else {
                    ctx.line("true (vacuous below arity 2)");
                }
                return Ok(EXIT_OK);
            }
            let c = corollary_check(&e)?;
            if ctx.json {
                ctx.emit(json!({
                    "schema": SCHEMA,
                    "arity": e.arity(),
                    "divisible": c.is_some(),
                    "cofactor": c.as_ref().map(|p| p.to_string()),
                }));
            } else {
                match &c {
                    Some(p) => ctx.line(format!("true\n{}", p)),
                    None => ctx.line("false"),
                }
            }
            Ok(code(c.is_some()))
        }
        Command::Lemma { which, word, n } => {
            let w = parse_word(&word)?;
            let rel = match which {
                Which::A => LemmaRelation::ProductPower,
                Which::B => LemmaRelation::PowerSum,
            };
            let ok = verify_lemma(&w, n, rel)?;
            if ctx.json {
                ctx.emit(json!({"schema": SCHEMA, "word": w.exponents(), "n": n, "holds": ok}));
            } else {
                ctx.line(ok);
            }
            Ok(code(ok))
        }
        Command::Reduce2 { word, verify } => module(ctx, &word_of_arity(&word, 2)?, verify, reduce2),
        Command::Reduce3 { word, verify } => module(ctx, &word_of_arity(&word, 3)?, verify, reduce3),
        Command::IdealCert { word, verify } => {
            let w = parse_word(&word)?;
            let c = ideal_certificate(&w)?;
            let verified = if verify { Some(verify_ideal_certificate(&c)?) } else { None };
            if ctx.json {
                ctx.line(cert::to_string(&cert::ideal_json(&c, verified)));
            } else {
                ctx.line(format!("target: {}", w));
                ctx.line(format!("A: {}", c.a));
                ctx.line(format!("B: {}", c.b));
                if let Some(v) = verified {
                    ctx.line(format!("verified: {}", v));
                }
            }
            Ok(code(verified != Some(false)))
        }
        Command::Assoc { a, b, c } => {
            let (x, y, z) = (ShuffleElement::z_power(a), ShuffleElement::z_power(b), ShuffleElement::z_power(c));
            let left = shuffle(&shuffle(&x, &y)?, &z)?;
            let right = shuffle(&x, &shuffle(&y, &z)?)?;
            let ok = left == right;
            if ctx.json {
                ctx.emit(json!({"schema": SCHEMA, "exponents": [a, b, c], "associative": ok}));
            } else {
                ctx.line(ok);
            }
            Ok(code(ok))
        }
        Command::VerifyCert { file } => {
            let text = if file == "-" {
                std::io::read_to_string(std::io::stdin())?
            } else {
                std::fs::read_to_string(&file).map_err(|e| Failure(format!("{}: {}", file, e)))?
            };
            let ok = match cert::from_json(&text)? {
                Certificate::Module(c) => verify_certificate(&c)?,
                Certificate::Ideal(c) => verify_ideal_certificate(&c)?,
            };
            if ctx.json {
                ctx.emit(json!({"schema": SCHEMA, "valid": ok}));
            } else {
                ctx.line(ok);
            }
            Ok(code(ok))
        }
        Command::Props { cases } => props(ctx, cases),
    }
}

fn module(
    ctx: &mut Ctx,
    w: &GeneratorWord,
    verify: bool,
    reduce: fn(&GeneratorWord) -> ishuffle_core::Result<ishuffle_core::ModuleCertificate>,
) -> Result<i32, Failure> {
    let c = reduce(w)?;
    let verified = if verify { Some(verify_certificate(&c)?) } else { None };
    if ctx.json {
        ctx.line(cert::to_string(&cert::module_json(&c, verified)));
    } else {
        ctx.line(format!("target: {}", c.target));
        for (p, word) in &c.combination {
            ctx.line(format!("{} : {}", word, p));
        }
        if let Some(v) = verified {
            ctx.line(format!("verified: {}", v));
        }
    }
    Ok(code(verified != Some(false)))
}

/// Random associativity triples and random arity-3 words for the wheel
/// conditions, drawn from a ChaCha stream seeded by `--seed`.
fn props(ctx: &mut Ctx, cases: usize) -> Result<i32, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut failures = Vec::new();
    for _ in 0..cases {
        let (a, b, c) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2), rng.gen_range(-2..=2));
        let (x, y, z) = (ShuffleElement::z_power(a), ShuffleElement::z_power(b), ShuffleElement::z_power(c));
        if shuffle(&shuffle(&x, &y)?, &z)? != shuffle(&x, &shuffle(&y, &z)?)? {
            failures.push(format!("assoc {} {} {}", a, b, c));
        }
        let w = GeneratorWord::new((0..3).map(|_| rng.gen_range(0..=2)).collect());
        let e = ishuffle_core::shuffle_word(&w)?;
        if !(wheel_check(&e) && ideal_wheel_check(&e)?) {
            failures.push(format!("wheel {}", w));
        }
    }
    if ctx.json {
        ctx.emit(json!({"schema": SCHEMA, "seed": ctx.seed, "cases": cases, "failures": failures}));
    } else {
        for f in &failures {
            ctx.line(format!("FAIL {}", f));
        }
        ctx.line(format!("{} cases, {} failures (seed {})", cases, failures.len(), ctx.seed));
    }
    Ok(code(failures.is_empty()))
}
