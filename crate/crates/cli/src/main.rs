use std::cmp::Ordering;
use std::fmt::Display;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use grz_core::correspond::{self, Coding, CorrespondError, Membership};
use grz_core::frep::{self, FrepError};
use grz_core::seq::{self, Outcome};
use grz_core::slowdown::{self, Chain};
use grz_core::{BoundedNat, Nat, Ordinal, Report};
use serde::Serialize;
use serde_json::json;

/// Grzegorczyk representations, base-shift sequences and their ordinals.
#[derive(Parser, Debug)]
#[command(name = "grz", version)]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Config {
    /// Values above this are reported as `>cap(N)`.
    #[arg(long, global = true, env = "GRZ_CAP", default_value = "10000000", value_parser = parse_cap)]
    cap: Nat,
    /// Step limit for sequences.
    #[arg(long, global = true, default_value_t = 10_000)]
    max_steps: u64,
    /// Exponent coding for the number-to-ordinal map.
    #[arg(long, global = true, default_value = "repaired")]
    coding: Coding,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// F-representation of X.
    Repr {
        #[arg(value_parser = parse_nat)]
        x: Nat,
        #[arg(long, value_parser = parse_nat)]
        base: Nat,
        /// Represent exponents and counts as well.
        #[arg(long)]
        total: bool,
    },
    /// Base shift X[K:=M].
    Shift {
        #[arg(value_parser = parse_nat)]
        x: Nat,
        #[arg(long, value_parser = parse_nat)]
        from: Nat,
        #[arg(long, value_parser = parse_nat)]
        to: Nat,
        /// Shift counts as well as exponents.
        #[arg(long)]
        hereditary: bool,
    },
    /// Grzegorczyk sequence starting at Z in base 2.
    Seq {
        #[arg(value_parser = parse_nat)]
        z: Nat,
        #[arg(long)]
        hereditary: bool,
        /// Record ordinal shadows and check the descent.
        #[arg(long)]
        shadow: bool,
    },
    /// Ordinal operations.
    #[command(subcommand)]
    Ord(OrdCommand),
    /// g_N(K, X).
    Gn {
        n: usize,
        #[arg(value_parser = parse_nat)]
        k: Nat,
        #[arg(value_parser = parse_nat)]
        x: Nat,
    },
    /// Descending chains, one ordinal per line.
    #[command(subcommand)]
    Chain(ChainCommand),
}

#[derive(Subcommand, Debug)]
enum OrdCommand {
    /// o_K(X).
    Encode {
        #[arg(value_parser = parse_nat)]
        x: Nat,
        #[arg(long, value_parser = parse_nat)]
        base: Nat,
    },
    /// Compare two ordinals: LT, EQ or GT.
    Compare { a: Ordinal, b: Ordinal },
    /// Maximal hereditary coefficient.
    #[command(name = "C")]
    Coeff { a: Ordinal },
    /// Membership in D_K.
    #[command(name = "inD")]
    InD {
        a: Ordinal,
        #[arg(long, value_parser = parse_nat)]
        base: Nat,
    },
    /// Largest element of D_K below A.
    #[command(name = "Q")]
    Pred {
        a: Ordinal,
        #[arg(long, value_parser = parse_nat)]
        base: Nat,
    },
    /// The number X with o_K(X) = A.
    #[command(name = "L")]
    Inverse {
        a: Ordinal,
        #[arg(long, value_parser = parse_nat)]
        base: Nat,
    },
}

#[derive(Subcommand, Debug)]
enum ChainCommand {
    /// Slow a descending chain down to C(γ_i) <= i + 1.
    Slowdown {
        /// Chain file, or `-` for standard input.
        #[arg(long)]
        input: String,
        /// Grzegorczyk index bounding C(α_{k+1}).
        #[arg(long)]
        index: usize,
        #[arg(long = "const", value_parser = parse_nat)]
        constant: Nat,
    },
    /// Check strict descent and C(γ_i) <= i + 1.
    Verify {
        #[arg(long)]
        input: String,
    },
}

fn parse_nat(s: &str) -> Result<Nat, String> {
    s.trim().parse().map_err(|_| format!("{s:?} is not a natural number"))
}

fn parse_cap(s: &str) -> Result<Nat, String> {
    let cap = parse_nat(s)?;
    if cap < Nat::from(2u32) {
        return Err("cap must be at least 2".into());
    }
    Ok(cap)
}

enum Failure {
    /// Overflow or step limit.
    Limit(String),
    Usage(String),
    Rejected(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Limit(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Rejected(_) => 3,
        }
    }
}

impl From<FrepError> for Failure {
    fn from(e: FrepError) -> Self {
        match e {
            FrepError::BaseTooSmall(_) | FrepError::ShiftOrder { .. } | FrepError::BaseMismatch(..) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Rejected(e.to_string()),
        }
    }
}

impl From<CorrespondError> for Failure {
    fn from(e: CorrespondError) -> Self {
        match e {
            CorrespondError::Frep(e) => e.into(),
            CorrespondError::BelowBase { .. } | CorrespondError::LiteralNotInvertible => Failure::Usage(e.to_string()),
            CorrespondError::ExceedsCap(_) => Failure::Limit(e.to_string()),
            _ => Failure::Rejected(e.to_string()),
        }
    }
}

impl From<slowdown::SlowdownError> for Failure {
    fn from(e: slowdown::SlowdownError) -> Self {
        match e {
            slowdown::SlowdownError::IndexTooSmall => Failure::Usage(e.to_string()),
            _ => Failure::Rejected(e.to_string()),
        }
    }
}

/// Decimal up to 40 digits, `≈10^d` beyond.
fn show_nat(v: &Nat) -> String {
    let s = v.to_string();
    if s.len() <= 40 {
        s
    } else {
        format!("≈10^{}", s.len() - 1)
    }
}

fn show_bounded(v: &BoundedNat) -> String {
    match v {
        BoundedNat::Exact(v) => show_nat(v),
        BoundedNat::ExceedsCap(_) => v.to_string(),
    }
}

struct Out {
    json: bool,
}

impl Out {
    fn emit<T: Serialize>(&self, value: &T, text: impl Display) {
        if self.json {
            println!("{}", serde_json::to_string(value).expect("serializable"));
        } else {
            println!("{text}");
        }
    }
}

fn overflow(v: &BoundedNat) -> Result<(), Failure> {
    match v {
        BoundedNat::ExceedsCap(cap) => Err(Failure::Limit(format!("value exceeds cap {cap}"))),
        BoundedNat::Exact(_) => Ok(()),
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

fn report_result(r: &Report) -> Result<(), Failure> {
    if r.passed() {
        Ok(())
    } else {
        Err(Failure::Rejected(format!("{} violations", r.violations.len())))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = &cli.config;
    let out = Out { json: cfg.json };
    match cli.command {
        Command::Repr { x, base, total } => {
            if total {
                let t = frep::to_total(&x, &base)?;
                out.emit(&t, &t);
            } else {
                let r = frep::encode(&x, &base)?;
                out.emit(&r, &r);
            }
        }
        Command::Shift { x, from, to, hereditary } => {
            let v = if hereditary {
                frep::shift_total_value(&x, &from, &to, &cfg.cap)?
            } else {
                frep::shift_value(&x, &from, &to, &cfg.cap)?
            };
            out.emit(&v, show_bounded(&v));
            overflow(&v)?;
        }
        Command::Seq { z, hereditary, shadow } => {
            let trace = seq::run(&z, hereditary, &cfg.cap, cfg.max_steps, shadow);
            if cfg.json {
                out.emit(&trace, "");
            } else {
                for s in &trace.steps {
                    let mut line = format!("k={} value={}", s.k, show_bounded(&s.value));
                    if let Some(r) = &s.rep {
                        line.push_str(&format!(" rep={r}"));
                    }
                    if let Some(o) = &s.shadow {
                        line.push_str(&format!(" shadow={o}"));
                    }
                    println!("{line} {}", s.phase.label());
                }
            }
            if shadow {
                let r = seq::shadow_check(&trace);
                eprintln!("shadow check: {r}");
                report_result(&r)?;
            }
            match &trace.outcome {
                Outcome::Terminated { .. } => {}
                Outcome::OverflowedCap { at, shifted } => {
                    let how = shifted.as_ref().map(|r| format!(" (shift gives {r})")).unwrap_or_default();
                    return Err(Failure::Limit(format!("step {at} exceeds cap {}{how}", cfg.cap)));
                }
                Outcome::StepLimit { at } => return Err(Failure::Limit(format!("step limit reached at k={at}"))),
            }
        }
        Command::Ord(cmd) => run_ord(cmd, cfg, &out)?,
        Command::Gn { n, k, x } => {
            let v = correspond::g(n, &k, &x)?;
            out.emit(&v, &v);
        }
        Command::Chain(ChainCommand::Slowdown { input, index, constant }) => {
            let entries = slowdown::parse_chain_file(&read_input(&input)?)?;
            let chain = Chain::new(entries)?;
            let slow = slowdown::compress(&chain, index, &constant)?;
            let report = slowdown::verify_slow(&slow.entries);
            if cfg.json {
                out.emit(&json!({ "chain": slow, "report": report }), "");
            } else {
                println!("# ell = {}", slow.tower_prefix_len);
                println!("# N = {}", slow.tower_height_base);
                println!("# n = {index}, c = {constant}");
                for note in &slow.notes {
                    println!("# note: {note}");
                }
                for line in report.to_string().lines() {
                    println!("# {line}");
                }
                print!("{}", slowdown::format_chain_file(&slow.entries));
            }
            report_result(&report)?;
        }
        Command::Chain(ChainCommand::Verify { input }) => {
            let entries = slowdown::parse_chain_file(&read_input(&input)?)?;
            let report = slowdown::verify_slow(&entries);
            out.emit(&report, &report);
            report_result(&report)?;
        }
    }
    Ok(())
}

fn run_ord(cmd: OrdCommand, cfg: &Config, out: &Out) -> Result<(), Failure> {
    match cmd {
        OrdCommand::Encode { x, base } => {
            let a = correspond::o_map(&x, &base, cfg.coding)?;
            out.emit(&a, &a);
        }
        OrdCommand::Compare { a, b } => {
            let word = match a.cmp(&b) {
                Ordering::Less => "LT",
                Ordering::Equal => "EQ",
                Ordering::Greater => "GT",
            };
            out.emit(&word, word);
        }
        OrdCommand::Coeff { a } => {
            let c = a.coeff_measure();
            out.emit(&c.to_string(), show_nat(&c));
        }
        OrdCommand::InD { a, base } => match correspond::in_d(&a, &base, cfg.coding, &cfg.cap)? {
            Membership::Member { skeleton, value } => {
                let text = format!("member {skeleton}_{base} value={}", show_bounded(&value));
                out.emit(&json!({ "member": true, "skeleton": skeleton.to_string(), "value": value }), text);
            }
            Membership::NonMember { reason } => {
                out.emit(&json!({ "member": false, "reason": reason }), format!("non-member: {reason}"));
                return Err(Failure::Rejected(format!("{a} is not in D_{base}")));
            }
        },
        OrdCommand::Pred { a, base } => {
            let q = correspond::q_pred(&a, &base, cfg.coding, &cfg.cap)?;
            out.emit(&q, &q);
        }
        OrdCommand::Inverse { a, base } => {
            let v = correspond::l_inverse(&a, &base, cfg.coding, &cfg.cap)?;
            out.emit(&v, show_bounded(&v));
            overflow(&v)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Limit(m) | Failure::Usage(m) | Failure::Rejected(m) => eprintln!("grz: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
