//! The `rtm` command line. [`run`] returns the exit status and both output
//! streams so it can be tested without spawning a process.
//!
//! Exit status: 0 on success, 1 on a definitive negative answer (machines
//! differ, not reversible, not oblivious, infinite order, invalid
//! certificate), 2 on usage, parse or validation errors.

use std::fmt::Write as _;

use clap::{Parser, Subcommand};

use crate::config::run_moving_head;
use crate::error::Error;
use crate::format::{
    parse_certificate, parse_config, parse_rule, parse_vector, parse_word, serialize_certificate, serialize_config,
    serialize_machine, serialize_word,
};
use crate::machine::{compose, machines_equal, Machine};
use crate::quotients::{phi, sign_vector};
use crate::reversibility::{average_movement, format_rational_vector, invert, measure_defect};
use crate::synthesis::{eval_word, synthesize_ob};
use crate::torsion::{decide_torsion_rfa1, order_upto, quotient_order_lcm, verify_certificate, TorsionVerdict};
use crate::vector::{Dims, IntVector};
use crate::zoo;

#[derive(Parser, Debug)]
#[command(name = "rtm", about = "Generalized Turing machines: algebra, reversibility, torsion, synthesis")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print F ∘ G (G runs first).
    Compose { f: String, g: String },
    /// Exit 0 iff the two machines are equal.
    Eq { a: String, b: String },
    /// Print the inverse machine.
    Invert { machine: String },
    /// Decide reversibility and print the measure defect.
    Check { machine: String },
    /// Print the average movement.
    Alpha { machine: String },
    /// Print subgroup membership flags.
    Classify { machine: String },
    /// Factor a classical machine as a state-dependent shift after a permutation.
    DecomposeClassical { machine: String },
    /// Run a machine on a configuration.
    Simulate {
        machine: String,
        config: String,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// Describe the permutation of the periodic quotient.
    Quotient {
        machine: String,
        #[arg(long)]
        period: usize,
    },
    /// Signs of the quotient permutations.
    Sign {
        machine: String,
        #[arg(long, value_delimiter = ',', required = true)]
        periods: Vec<usize>,
    },
    /// Least order up to a bound (a semi-decision in general).
    Order {
        machine: String,
        #[arg(long, default_value_t = 64)]
        bound: u64,
    },
    /// Decide torsion of a one-dimensional finite-state automaton.
    TorsionRfa1 { machine: String },
    /// Replay an escape certificate.
    VerifyCert { machine: String, certificate: String },
    /// Compile an oblivious machine into a generator word.
    Synth { machine: String },
    /// Evaluate a generator word.
    EvalWord { word: String },
    /// Print a machine from the zoo.
    Make {
        /// identity, shift, swap, surf, walker, cycler, write0
        family: String,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Family parameter: a vector for shift, an axis, a length or a symbol.
        #[arg(long)]
        param: Option<String>,
    },
}

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

type Res = std::result::Result<Out, (i32, String)>;

fn ok(stdout: String) -> Res {
    Ok(Out {
        code: 0,
        stdout,
        stderr: String::new(),
    })
}

fn negative(stdout: String) -> Res {
    Ok(Out {
        code: 1,
        stdout,
        stderr: String::new(),
    })
}

fn usage(e: impl std::fmt::Display) -> (i32, String) {
    (2, format!("error: {e}\n"))
}

fn read(path: &str) -> std::result::Result<String, (i32, String)> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))
}

fn load(path: &str) -> std::result::Result<Machine, (i32, String)> {
    parse_rule(&read(path)?).map_err(|e| usage(format!("{path}: {e}")))
}

fn flag(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn param<T: std::str::FromStr>(p: &Option<String>, default: T) -> std::result::Result<T, (i32, String)> {
    match p {
        None => Ok(default),
        Some(s) => s.parse().map_err(|_| usage(format!("bad parameter `{s}`"))),
    }
}

fn make(family: &str, dims: Dims, p: &Option<String>) -> std::result::Result<Machine, (i32, String)> {
    let m = match family {
        "identity" => Ok(Machine::identity(dims)),
        "shift" => {
            let v = match p {
                Some(s) => parse_vector(1, s, s).map_err(usage)?,
                None => IntVector::unit(dims.d, 0),
            };
            zoo::shift_machine(dims, &v)
        }
        "swap" => zoo::cell_swap(dims, param(p, 0)?),
        "surf" => zoo::surf_machine(dims, param(p, 1)?),
        "walker" => zoo::involution_walker(dims, param(p, 0)?),
        "cycler" => zoo::state_cycler(dims, param(p, 0)?),
        "write0" => zoo::write_zero(dims),
        other => return Err(usage(format!("unknown family `{other}`"))),
    };
    m.map_err(usage)
}

fn verdict_text(v: &TorsionVerdict) -> String {
    match v {
        TorsionVerdict::Finite(o) => format!("finite order={o}\n"),
        TorsionVerdict::Unknown(b) => format!("unknown bound={b}\n"),
        TorsionVerdict::Infinite(c) => format!("infinite\n{}", serialize_certificate(c)),
    }
}

fn dispatch(cmd: Cmd) -> Res {
    match cmd {
        Cmd::Compose { f, g } => {
            let m = compose(&load(&f)?, &load(&g)?).map_err(usage)?;
            ok(serialize_machine(&m))
        }
        Cmd::Eq { a, b } => {
            if machines_equal(&load(&a)?, &load(&b)?).map_err(usage)? {
                ok("equal\n".into())
            } else {
                negative("different\n".into())
            }
        }
        Cmd::Invert { machine } => match invert(&load(&machine)?) {
            Ok(inv) => ok(serialize_machine(&inv)),
            Err(e @ Error::NotReversible { .. }) => negative(format!("{e}\n")),
            Err(e) => Err(usage(e)),
        },
        Cmd::Check { machine } => {
            let m = load(&machine)?;
            let defect = measure_defect(&m);
            match invert(&m) {
                Ok(_) => ok(format!("reversible\ndefect={defect}\n")),
                Err(e) => negative(format!("{e}\ndefect={defect}\n")),
            }
        }
        Cmd::Alpha { machine } => ok(format!("{}\n", format_rational_vector(&average_movement(&load(&machine)?)))),
        Cmd::Classify { machine } => {
            let f = zoo::classify(&load(&machine)?);
            let mut s = String::new();
            for (name, v) in [
                ("sp", f.is_sp),
                ("lp", f.is_lp),
                ("shift", f.is_shift),
                ("oblivious", f.is_oblivious),
                ("rfa", f.is_rfa),
                ("classical", f.is_classical),
            ] {
                writeln!(s, "{name}={}", flag(v)).unwrap();
            }
            ok(s)
        }
        Cmd::DecomposeClassical { machine } => match zoo::classical_decompose(&load(&machine)?) {
            Ok(dc) => {
                let dirs: Vec<String> = dc.directions.iter().map(|d| d.to_string()).collect();
                let perm: Vec<String> = dc.perm.iter().map(|d| d.to_string()).collect();
                ok(format!("directions= {}\nperm= {}\n", dirs.join(" "), perm.join(" ")))
            }
            Err(e @ Error::NotReversible { .. }) => negative(format!("{e}\n")),
            Err(e) => Err(usage(e)),
        },
        Cmd::Simulate { machine, config, steps } => {
            let m = load(&machine)?;
            let mut c = parse_config(&read(&config)?).map_err(|e| usage(format!("{config}: {e}")))?;
            let mut s = String::new();
            for t in 1..=steps {
                c = run_moving_head(&m, &c, 1).map_err(usage)?;
                match &c.head {
                    Some((h, q)) => writeln!(s, "step {t} head={h} state={q}").unwrap(),
                    None => writeln!(s, "step {t} head=none").unwrap(),
                }
            }
            s.push_str(&serialize_config(&c));
            ok(s)
        }
        Cmd::Quotient { machine, period } => {
            let p = phi(&load(&machine)?, period).map_err(usage)?;
            let mut lens = p.cycle_lengths();
            lens.sort_unstable();
            let mut parts: Vec<String> = Vec::new();
            for l in lens.chunk_by(|a, b| a == b) {
                parts.push(format!("{}^{}", l[0], l.len()));
            }
            ok(format!(
                "points={}\norder={}\nsign={:+}\ncycles= {}\n",
                p.len(),
                p.order(),
                p.sign(),
                parts.join(" ")
            ))
        }
        Cmd::Sign { machine, periods } => {
            let signs = sign_vector(&load(&machine)?, &periods).map_err(usage)?;
            let mut s = String::new();
            for (m, sg) in periods.iter().zip(signs) {
                writeln!(s, "m={m} sign={sg:+}").unwrap();
            }
            ok(s)
        }
        Cmd::Order { machine, bound } => ok(verdict_text(&order_upto(&load(&machine)?, bound))),
        Cmd::TorsionRfa1 { machine } => {
            let m = load(&machine)?;
            let v = decide_torsion_rfa1(&m).map_err(usage)?;
            let mut text = verdict_text(&v);
            match v {
                TorsionVerdict::Finite(_) => {
                    let lcm = quotient_order_lcm(&m, &[2, 3, 4]).map_err(usage)?;
                    writeln!(text, "quotient-lcm={lcm}").unwrap();
                    ok(text)
                }
                _ => negative(text),
            }
        }
        Cmd::VerifyCert { machine, certificate } => {
            let m = load(&machine)?;
            let c = parse_certificate(&read(&certificate)?).map_err(|e| usage(format!("{certificate}: {e}")))?;
            if verify_certificate(&m, &c) {
                ok("valid\n".into())
            } else {
                negative("invalid\n".into())
            }
        }
        Cmd::Synth { machine } => match synthesize_ob(&load(&machine)?) {
            Ok(w) => ok(serialize_word(&w)),
            Err(e @ Error::NotOblivious) => negative(format!("{e}\n")),
            Err(e) => Err(usage(e)),
        },
        Cmd::EvalWord { word } => {
            let w = parse_word(&read(&word)?).map_err(|e| usage(format!("{word}: {e}")))?;
            ok(serialize_machine(&eval_word(&w).map_err(usage)?))
        }
        Cmd::Make { family, d, n, k, param } => {
            if d == 0 || n == 0 || k == 0 {
                return Err(usage("d, n and k must be positive"));
            }
            ok(serialize_machine(&make(&family, Dims::new(d, n, k), &param)?))
        }
    }
}

/// Run the command line on `argv` (including the program name).
pub fn run<I, S>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                (0, text, String::new())
            } else {
                (2, String::new(), text)
            };
        }
    };
    match dispatch(cli.cmd) {
        Ok(o) => (o.code, o.stdout, o.stderr),
        Err((code, msg)) => (code, String::new(), msg),
    }
}
