//! Command-line frontend. Results go to stdout as `KEY=VALUE` lines or
//! certificate lines; diagnostics go to stderr.
//!
//! Exit status: 0 on success, 1 when a computation's precondition fails (or a
//! certificate does not verify), 2 on unreadable or malformed input.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use crate::classdeg::{class_degree_with, theorem_length_bound, verify_transition_cert};
use crate::degree::{degree, verify_magic_cert};
use crate::error::{DegreeError, GenError, OracleError};
use crate::exec::Exec;
use crate::finiteness::{find_diamond, Diamond};
use crate::format::{
    format_magic_cert, format_transition_cert, format_x_word, parse_certificate, parse_triple,
    parse_triple_unnormalized, serialize_triple, Certificate,
};
use crate::gen::{random_triple, Density, GenParams};
use crate::oracle::{brute_force_class_degree_with, brute_force_degree_with, cross_check, Limits};
use crate::recode::higher_block_recode;
use crate::triple::{normalize, FactorTriple};

#[derive(Parser, Debug)]
#[command(name = "factor-degree", version, about = "Degree and class degree of one-block factor codes")]
struct Cli {
    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normalization report, irreducibility, finite-to-one test, alphabet sizes.
    Check { file: PathBuf },
    /// Degree of a finite-to-one code on an irreducible SFT.
    Degree {
        file: PathBuf,
        #[arg(long)]
        certificate: bool,
    },
    /// Class degree (least depth of a transition block).
    ClassDegree {
        file: PathBuf,
        #[arg(long)]
        certificate: bool,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Longest word the oracle method examines [default: min(bound, 8)].
        #[arg(long)]
        max_len: Option<usize>,
        /// Lift the oracle's size limits.
        #[arg(long)]
        force: bool,
    },
    /// Upper bound on the length of a minimal transition block.
    Bound { file: PathBuf },
    /// Higher-block presentation of the triple.
    Recode {
        file: PathBuf,
        #[arg(long)]
        block: usize,
    },
    /// Brute-force enumeration over words up to a length.
    Oracle {
        file: PathBuf,
        #[arg(long, value_enum)]
        what: What,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        force: bool,
    },
    /// Seeded random triple.
    Gen {
        #[arg(long)]
        nx: usize,
        #[arg(long)]
        ny: usize,
        /// Edge probability, as a decimal or `a/b`.
        #[arg(long)]
        density: String,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        finite_to_one: bool,
        #[arg(long)]
        irreducible: bool,
    },
    /// Check a `magic` or `transition` certificate.
    Verify {
        file: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Run every algorithm and oracle and compare.
    CrossCheck {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long)]
        force: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum What {
    Degree,
    ClassDegree,
}

/// Exit status and captured streams of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn fail(code: i32, msg: impl AsRef<str>) -> Self {
        Outcome { code, stdout: String::new(), stderr: format!("error: {}\n", msg.as_ref()) }
    }
}

fn read_file(path: &PathBuf) -> Result<String, Outcome> {
    std::fs::read_to_string(path).map_err(|e| Outcome::fail(2, format!("cannot read {}: {e}", path.display())))
}

fn load(path: &PathBuf) -> Result<FactorTriple, Outcome> {
    let text = read_file(path)?;
    parse_triple(&text).map_err(|e| Outcome::fail(2, format!("{}: {e}", path.display())))
}

fn limits(force: bool) -> Limits {
    if force {
        Limits::unbounded()
    } else {
        Limits::default()
    }
}

fn diamond_report(t: &FactorTriple, d: &Diamond) -> String {
    format!(
        "error: the code is not finite-to-one\ndiamond left={}\ndiamond right={}\n",
        format_x_word(t, &d.left),
        format_x_word(t, &d.right)
    )
}

fn oracle_failure(e: OracleError) -> Outcome {
    Outcome::fail(1, e.to_string())
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    match dispatch(cli.command, exec) {
        Ok(out) | Err(out) => out,
    }
}

fn dispatch(command: Command, exec: Exec) -> Result<Outcome, Outcome> {
    let mut out = Outcome::default();
    match command {
        Command::Check { file } => {
            let raw = parse_triple_unnormalized(&read_file(&file)?)
                .map_err(|e| Outcome::fail(2, format!("{}: {e}", file.display())))?;
            let t = normalize(&raw).map_err(|e| Outcome::fail(2, format!("{}: {e}", file.display())))?;
            let s = &mut out.stdout;
            let _ = writeln!(s, "x_symbols={}", t.nx());
            let _ = writeln!(s, "y_symbols={}", t.ny());
            let _ = writeln!(s, "edges={}", t.x().edge_count());
            let _ = writeln!(s, "trimmed={}", raw.nx() - t.nx());
            let _ = writeln!(s, "irreducible={}", t.x().is_irreducible());
            let diamond = find_diamond(&t);
            let _ = writeln!(s, "finite_to_one={}", diamond.is_none());
            let _ = writeln!(s, "max_fiber={}", t.max_fiber());
            if let Some(d) = diamond {
                let _ = writeln!(s, "diamond_left={}", format_x_word(&t, &d.left));
                let _ = writeln!(s, "diamond_right={}", format_x_word(&t, &d.right));
            }
        }
        Command::Degree { file, certificate } => {
            let t = load(&file)?;
            match degree(&t) {
                Ok(d) => {
                    let _ = writeln!(out.stdout, "degree={}", d.degree);
                    if certificate {
                        out.stdout.push_str(&format_magic_cert(&t, &d.certificate, d.degree));
                    }
                }
                Err(DegreeError::NotFiniteToOne(d)) => {
                    return Err(Outcome { code: 1, stdout: String::new(), stderr: diamond_report(&t, &d) })
                }
                Err(e @ DegreeError::NotIrreducible) => return Err(Outcome::fail(1, e.to_string())),
            }
        }
        Command::ClassDegree { file, certificate, method, max_len, force } => {
            let t = load(&file)?;
            if !t.x().is_irreducible() {
                out.stderr.push_str("warning: X is reducible; reporting the least depth of a transition block\n");
            }
            match method {
                Method::Auto => {
                    let cd = class_degree_with(&t, exec);
                    let _ = writeln!(out.stdout, "class_degree={}", cd.class_degree);
                    if certificate {
                        out.stdout.push_str(&format_transition_cert(&t, &cd.certificate, cd.class_degree));
                    }
                }
                Method::Oracle => {
                    let bound = theorem_length_bound(&t);
                    let len = max_len.unwrap_or_else(|| {
                        if bound < BigUint::from(8u32) {
                            usize::try_from(&bound).unwrap_or(8)
                        } else {
                            8
                        }
                    });
                    let (c, cert) = brute_force_class_degree_with(&t, len, limits(force), exec).map_err(oracle_failure)?;
                    let covered = BigUint::from(len) >= bound;
                    let _ = writeln!(out.stdout, "class_degree={c}");
                    let _ = writeln!(out.stdout, "max_len={len}");
                    let _ = writeln!(out.stdout, "limited_by={}", if covered { "bound" } else { "cutoff" });
                    if !covered {
                        let _ = writeln!(
                            out.stderr,
                            "note: search cut off at length {len} below the bound {bound}; the value is an upper bound"
                        );
                    }
                    if certificate {
                        out.stdout.push_str(&format_transition_cert(&t, &cert, c));
                    }
                }
            }
        }
        Command::Bound { file } => {
            let t = load(&file)?;
            let _ = writeln!(out.stdout, "bound={}", theorem_length_bound(&t));
        }
        Command::Recode { file, block } => {
            let t = load(&file)?;
            let (r, conj) = higher_block_recode(&t, block).map_err(|e| Outcome::fail(2, e.to_string()))?;
            let _ = writeln!(out.stdout, "# block_len={}", conj.block_len);
            for (a, w) in conj.words.iter().enumerate() {
                let _ = writeln!(out.stdout, "# {} = {}", r.x().name(a), format_x_word(&t, w));
            }
            out.stdout.push_str(&serialize_triple(&r));
        }
        Command::Oracle { file, what, max_len, force } => {
            let t = load(&file)?;
            match what {
                What::Degree => {
                    let d = brute_force_degree_with(&t, max_len, limits(force), exec).map_err(oracle_failure)?;
                    let _ = writeln!(out.stdout, "degree_oracle={d}");
                    let _ = writeln!(out.stdout, "max_len={max_len}");
                }
                What::ClassDegree => {
                    let (c, cert) =
                        brute_force_class_degree_with(&t, max_len, limits(force), exec).map_err(oracle_failure)?;
                    let _ = writeln!(out.stdout, "class_degree_oracle={c}");
                    let _ = writeln!(out.stdout, "max_len={max_len}");
                    out.stdout.push_str(&format_transition_cert(&t, &cert, c));
                }
            }
        }
        Command::Gen { nx, ny, density, seed, finite_to_one, irreducible } => {
            let density: Density = density.parse().map_err(|e: GenError| Outcome::fail(2, e.to_string()))?;
            let p = GenParams { nx, ny, density, seed, require_finite_to_one: finite_to_one, require_irreducible: irreducible };
            match random_triple(&p) {
                Ok(t) => out.stdout = serialize_triple(&t),
                Err(e @ GenError::InvalidParams(_)) => return Err(Outcome::fail(2, e.to_string())),
                Err(e) => return Err(Outcome::fail(1, e.to_string())),
            }
        }
        Command::Verify { file, cert } => {
            let t = load(&file)?;
            let text = read_file(&cert)?;
            let line = text
                .lines()
                .find(|l| l.starts_with("magic ") || l.starts_with("transition "))
                .ok_or_else(|| Outcome::fail(2, format!("{}: no certificate line", cert.display())))?;
            let parsed = parse_certificate(&t, line).map_err(|e| Outcome::fail(2, format!("{}: {e}", cert.display())))?;
            let ok = match &parsed {
                Certificate::Magic(c, d) => verify_magic_cert(&t, c, *d),
                Certificate::Transition(c, depth) => verify_transition_cert(&t, c, *depth),
            };
            let _ = writeln!(out.stdout, "verified={ok}");
            if !ok {
                out.code = 1;
                out.stderr.push_str("error: certificate does not verify\n");
            }
        }
        Command::CrossCheck { file, max_len, force } => {
            let t = load(&file)?;
            let report = cross_check(&t, max_len, limits(force), exec);
            out.stdout = report.render();
            if !report.agrees() {
                out.code = 1;
                let mut problems = report.disagreements.clone();
                if !report.certificates_ok {
                    problems.push("a certificate does not verify".into());
                }
                let _ = writeln!(out.stderr, "error: {}", problems.join("; "));
            }
        }
    }
    Ok(out)
}
