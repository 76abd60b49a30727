//! Command-line front end for `cohen`.
//!
//! Exit codes: 0 success or `true`, 1 `false` or mismatch, 2 usage error,
//! 3 internal inconsistency.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cohen::catalog;
use cohen::collect::collect_with_progress;
use cohen::steenrod::{gamma_mult, sq_on_power, ProjectiveClass};
use cohen::{
    alpha, element_order, equal, in_hn, magnus, verify_identity, AlgebraContext, Factorization, GroupError,
    GroupWord, ModuleError, SteenrodModule,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

const DEFAULT_MAX_N: usize = 10;

/// `alpha-power` reports progress on stderr from this many letters up.
const PROGRESS_FROM_N: usize = 8;

#[derive(Parser, Debug)]
#[command(name = "cohen", version, about = "Magnus-embedding calculus for Cohen groups and mod-2 Steenrod modules")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Largest accepted letter count; overrides COHEN_MAX_N.
    #[arg(long, global = true)]
    max_n: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct Letters {
    /// Number of letters.
    #[arg(long)]
    n: usize,

    /// Coefficient modulus.
    #[arg(long = "mod", default_value_t = cohen::DEFAULT_MODULUS)]
    modulus: u32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Check {
    Eq24,
    Shuffle,
    Hn,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Magnus image of a word.
    Magnus {
        #[command(flatten)]
        letters: Letters,
        word: String,
    },
    /// Whether two words are equal in the group.
    Equal {
        #[command(flatten)]
        letters: Letters,
        w1: String,
        w2: String,
    },
    /// Collect a word into basic commutators.
    Collect {
        #[command(flatten)]
        letters: Letters,
        word: String,
    },
    /// Collected form of (x1 x2 ... xn)^k.
    AlphaPower {
        #[command(flatten)]
        letters: Letters,
        #[arg(long)]
        k: u64,
    },
    /// Check a named identity.
    Verify {
        #[arg(long, value_enum)]
        check: Check,
        /// Letter count for the `hn` check.
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Order of a group element.
    Order {
        #[command(flatten)]
        letters: Letters,
        word: String,
    },
    /// Sq^i on u^j.
    Sq {
        #[arg(long)]
        i: u64,
        #[arg(long)]
        exp: u64,
        #[arg(long)]
        bottom: Option<u64>,
    },
    /// Product g_i * g_j in the divided-power algebra.
    Gamma {
        #[arg(long)]
        i: u64,
        #[arg(long)]
        j: u64,
    },
    /// Emit a catalog module: moore:M, cp2, point, d2, c, cbar, eta, h1, h2, smash-target.
    Module {
        #[arg(long)]
        name: String,
        #[arg(long)]
        n: Option<i64>,
        /// Also validate the module; violations go to stderr.
        #[arg(long)]
        check: bool,
    },
    /// Smash product of two module files ("-" reads stdin).
    Smash { left: PathBuf, right: PathBuf },
    /// Shift all degrees of a module file.
    Suspend {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
    },
    /// Whether two module files are isomorphic.
    Iso { left: PathBuf, right: PathBuf },
    /// Which cofibre candidate matches the suspended CP^2 ^ RP^2.
    Classify34 {
        #[arg(long)]
        n: i64,
    },
    /// The reduced evaluation map on homology.
    Sigmabar {
        #[arg(long)]
        n: i64,
    },
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        let code = match e {
            GroupError::Algebra(_) | GroupError::GeneratorOutOfRange { .. } | GroupError::UnknownIdentity(_) => {
                EXIT_USAGE
            }
            GroupError::ResidueNotInLieSpan { .. }
            | GroupError::NonTermination(_)
            | GroupError::OrderGuardExceeded(_) => EXIT_INTERNAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<ModuleError> for Failure {
    fn from(e: ModuleError) -> Self {
        let code = match e {
            ModuleError::AmbiguousClassification(_) | ModuleError::EquivarianceFailure { .. } => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

/// What a subcommand produced: the data line(s) and the exit code.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: impl Into<String>) -> Self {
        Outcome {
            text: text.into(),
            code: EXIT_OK,
        }
    }

    fn truth(value: bool, text: impl Into<String>) -> Self {
        Outcome {
            text: text.into(),
            code: if value { EXIT_OK } else { EXIT_FALSE },
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

/// Parses `args` (including the program name), runs the subcommand, and
/// writes data to `out` and diagnostics to `err`.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(&cli, err) {
        Ok(o) => {
            let _ = writeln!(out, "{}", o.text);
            o.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn max_n(cli: &Cli) -> Result<usize, Failure> {
    if let Some(m) = cli.max_n {
        return Ok(m);
    }
    match std::env::var("COHEN_MAX_N") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("COHEN_MAX_N must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

fn context(cli: &Cli, n: usize, modulus: u32) -> Result<AlgebraContext, Failure> {
    let cap = max_n(cli)?;
    if n > cap {
        return Err(Failure::usage(format!(
            "n = {n} exceeds the limit {cap}; raise it with --max-n or COHEN_MAX_N"
        )));
    }
    AlgebraContext::new(n, modulus).map_err(|e| Failure::usage(e.to_string()))
}

fn parse_word(text: &str, ctx: AlgebraContext) -> Result<GroupWord, Failure> {
    GroupWord::parse(text, ctx.n_letters()).map_err(|e| Failure::usage(format!("{text:?}: {e}")))
}

fn read_module(path: &Path) -> Result<SteenrodModule, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct FactorRecord {
    arrangement: Vec<usize>,
    exponent: i64,
}

#[derive(Serialize)]
struct FactorizationRecord {
    text: String,
    factors: Vec<FactorRecord>,
}

fn render_factorization(f: &Factorization, json: bool) -> String {
    if !json {
        return f.to_string();
    }
    to_json(&FactorizationRecord {
        text: f.to_string(),
        factors: f
            .factors()
            .iter()
            .map(|(fac, e)| FactorRecord {
                arrangement: fac.arrangement(),
                exponent: *e,
            })
            .collect(),
    })
}

fn render_bool(value: bool, key: &str, json: bool) -> Outcome {
    let text = if json {
        to_json(&serde_json::json!({ key: value }))
    } else {
        value.to_string()
    };
    Outcome::truth(value, text)
}

fn collect_and_report(
    w: &GroupWord,
    ctx: AlgebraContext,
    json: bool,
    err: &mut dyn Write,
) -> Result<Outcome, Failure> {
    let verbose = ctx.n_letters() >= PROGRESS_FROM_N;
    let f = collect_with_progress(w, ctx, |weight, count| {
        if verbose {
            let _ = writeln!(err, "weight {weight}/{}: {count} factors", ctx.n_letters());
        }
    })?;
    // the collected product must reproduce the input
    if !equal(&f.to_word(), w, ctx)? {
        return Err(Failure {
            code: EXIT_INTERNAL,
            message: format!("collected form {f} does not reproduce the input"),
        });
    }
    Ok(Outcome::ok(render_factorization(&f, json)))
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<Outcome, Failure> {
    let json = cli.json;
    match &cli.command {
        Command::Magnus { letters, word } => {
            let ctx = context(cli, letters.n, letters.modulus)?;
            let g = magnus(&parse_word(word, ctx)?, ctx)?;
            Ok(Outcome::ok(if json {
                to_json(g.image())
            } else {
                g.image().to_string()
            }))
        }
        Command::Equal { letters, w1, w2 } => {
            let ctx = context(cli, letters.n, letters.modulus)?;
            let value = equal(&parse_word(w1, ctx)?, &parse_word(w2, ctx)?, ctx)?;
            Ok(render_bool(value, "equal", json))
        }
        Command::Collect { letters, word } => {
            let ctx = context(cli, letters.n, letters.modulus)?;
            let w = parse_word(word, ctx)?;
            collect_and_report(&w, ctx, json, err)
        }
        Command::AlphaPower { letters, k } => {
            let ctx = context(cli, letters.n, letters.modulus)?;
            let k = i64::try_from(*k).map_err(|_| Failure::usage("k too large"))?;
            collect_and_report(&alpha(letters.n).pow(k), ctx, json, err)
        }
        Command::Verify { check, n } => {
            let value = match check {
                Check::Eq24 => verify_identity("eq24")?,
                Check::Shuffle => verify_identity("shuffle")?,
                Check::Hn => {
                    let ctx = context(cli, *n, cohen::DEFAULT_MODULUS)?;
                    in_hn(&alpha(*n), ctx)?
                }
            };
            Ok(render_bool(value, "verified", json))
        }
        Command::Order { letters, word } => {
            let ctx = context(cli, letters.n, letters.modulus)?;
            let order = element_order(&parse_word(word, ctx)?, ctx)?;
            Ok(Outcome::ok(if json {
                to_json(&serde_json::json!({ "order": order }))
            } else {
                order.to_string()
            }))
        }
        Command::Sq { i, exp, bottom } => {
            let class = match bottom {
                Some(b) => ProjectiveClass::stunted(*exp, *b),
                None => ProjectiveClass::new(*exp),
            }
            .ok_or_else(|| Failure::usage("need --exp >= 1 and --exp >= --bottom"))?;
            let result = sq_on_power(*i, class);
            let text = result.map_or_else(|| "0".to_string(), |c| c.to_string());
            Ok(Outcome::ok(if json {
                to_json(&serde_json::json!({
                    "class": text,
                    "exponent": result.map(|c| c.exponent()),
                    "bottom": result.and_then(|c| c.bottom()),
                }))
            } else {
                text
            }))
        }
        Command::Gamma { i, j } => {
            let result = gamma_mult(*i, *j);
            let text = result.map_or_else(|| "0".to_string(), |c| c.to_string());
            Ok(Outcome::ok(if json {
                to_json(&serde_json::json!({ "class": text, "index": result.map(|c| c.0) }))
            } else {
                text
            }))
        }
        Command::Module { name, n, check } => {
            let (base, param) = match name.split_once(':') {
                Some((b, p)) => {
                    let p = p
                        .parse::<i64>()
                        .map_err(|_| Failure::usage(format!("bad parameter in {name:?}")))?;
                    (b, Some(p))
                }
                None => (name.as_str(), *n),
            };
            let needs_param = !matches!(base, "point" | "cp2");
            let param = match (param, needs_param) {
                (Some(p), _) => p,
                (None, false) => 0,
                (None, true) => return Err(Failure::usage(format!("module {base} needs --n or {base}:N"))),
            };
            let m = catalog::build(base, param)?;
            let text = to_json(&m);
            if *check {
                let violations = m.violations();
                for v in &violations {
                    let _ = writeln!(err, "violation: {v}");
                }
                return Ok(Outcome::truth(violations.is_empty(), text));
            }
            Ok(Outcome::ok(text))
        }
        Command::Smash { left, right } => {
            let m = read_module(left)?.smash(&read_module(right)?);
            Ok(Outcome::ok(to_json(&m)))
        }
        Command::Suspend { file, s } => Ok(Outcome::ok(to_json(&read_module(file)?.suspend(*s)?))),
        Command::Iso { left, right } => {
            let value = read_module(left)?.is_isomorphic(&read_module(right)?)?;
            Ok(render_bool(value, "isomorphic", json))
        }
        Command::Classify34 { n } => {
            let name = catalog::classify_lemma_3_4(*n)?;
            Ok(Outcome::ok(if json {
                to_json(&serde_json::json!({ "n": n, "match": name }))
            } else {
                name.to_string()
            }))
        }
        Command::Sigmabar { n } => {
            let f = catalog::sigma_bar(*n)?;
            if json {
                return Ok(Outcome::ok(to_json(&f)));
            }
            let lines: Vec<String> = f
                .source
                .generators()
                .iter()
                .map(|g| {
                    let image = f.image_of(&g.name).unwrap_or_default();
                    let rendered = if image.is_empty() { "0".to_string() } else { image.join(" + ") };
                    format!("{} -> {}", g.name, rendered)
                })
                .collect();
            Ok(Outcome::ok(lines.join("\n")))
        }
    }
}
