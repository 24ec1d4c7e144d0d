//! Command-line front end: transforms, membership checks, enumeration,
//! verification sweeps and bound tables.
//!
//! Machine-readable output goes to stdout (or `--out`); human summaries go
//! to stderr. Exit codes: 0 success, 1 verification failure (a
//! counterexample was found), 2 usage or parse error.

use clap::{Args, Parser, Subcommand};
use readcode::bounds::{self, BoundReport};
use readcode::budget::Budget;
use readcode::codebook::{self, CodeFamilySpec, Family, ParamOverrides};
use readcode::characterize;
use readcode::oracle::{self, SweepGrid};
use readcode::seqcore::{self, Word};
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "readcode", version, about = "ℓ-read code toolkit", max_term_width = 100)]
struct Cli {
    /// Worker threads for the exhaustive scans (0 = library default).
    /// Results are deterministic regardless of this setting.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the ℓ-read vector of a word.
    Read {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        ell: usize,
        /// Word in the text format (digit string for q <= 10).
        #[arg(long, default_value = "")]
        word: String,
    },
    /// Hamming distance between the ℓ-read vectors of two words.
    Dist {
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 2)]
        ell: usize,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Canonical alternating-block decomposition of a distinct pair.
    Decompose {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Test one word for membership in a code family instance.
    Check {
        #[command(flatten)]
        family_args: FamilyArgs,
        /// Residues, comma separated, one per modulus.
        #[arg(long, value_delimiter = ',')]
        residues: Vec<u64>,
        #[arg(long)]
        word: String,
    },
    /// Enumerate a code: JSON header line, then one word per line.
    Enum {
        #[command(flatten)]
        family_args: FamilyArgs,
        /// Pick the residues maximizing the code size.
        #[arg(long, conflicts_with = "residues")]
        best: bool,
        #[arg(long, value_delimiter = ',')]
        residues: Option<Vec<u64>>,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<String>,
    },
    /// Run an exhaustive check: either a named sweep over a grid, or one
    /// family's guarantee. Exits 1 when a counterexample is found.
    Verify {
        /// Named sweep: char2, read_min_distance, ins_eq, del_eq,
        /// indicator_bound, indicator_binary, s1_recon_eq, l3_shape,
        /// harness_selftest.
        #[arg(long, conflicts_with = "family")]
        check: Option<String>,
        #[arg(long)]
        q: Option<u32>,
        /// Largest word length for a sweep grid.
        #[arg(long)]
        nmax: Option<usize>,
        /// Read lengths for sweeps that range over ℓ.
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        ells: Vec<usize>,
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        run_cap: Option<usize>,
        #[arg(long)]
        good_t: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        moduli: Option<Vec<u64>>,
        #[arg(long)]
        best: bool,
        #[arg(long, value_delimiter = ',')]
        residues: Option<Vec<u64>>,
    },
    /// Evaluate one named bound.
    Bounds {
        /// One of: hamming, cliquecover, d3lower, levenshtein, reconupper.
        #[arg(long)]
        name: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Best-residue code sizes over a grid of lengths, as CSV or JSON.
    Table {
        /// Comma-separated family names.
        #[arg(long, value_delimiter = ',')]
        families: Vec<String>,
        #[arg(long)]
        q: u32,
        /// Length range start..stop[..step], inclusive.
        #[arg(long)]
        n: String,
        /// Read length; defaults per family (3 for c33, otherwise 2).
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long)]
        out: Option<String>,
    },
}

/// Shared family-instance arguments.
#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    q: u32,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    ell: Option<usize>,
    /// Override the family's P parameter.
    #[arg(long, visible_alias = "P")]
    p: Option<u64>,
    /// Override the distance parameter (bounded family).
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    run_cap: Option<usize>,
    /// Override the goodness threshold (c33).
    #[arg(long)]
    good_t: Option<usize>,
    /// Override the moduli, comma separated, one per congruence.
    #[arg(long, value_delimiter = ',')]
    moduli: Option<Vec<u64>>,
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: msg.into(),
        }
    }
}

macro_rules! usage_err {
    ($e:expr) => {
        $e.map_err(|err| CliError::usage(err.to_string()))
    };
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        // Thread count must not change any output byte; it only shards work.
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn parse_word(q: u32, text: &str) -> Result<Word, CliError> {
    usage_err!(Word::parse(q, text))
}

fn family_spec(args: &FamilyArgs) -> Result<CodeFamilySpec, CliError> {
    let family = Family::parse(&args.family)
        .ok_or_else(|| CliError::usage(format!("unknown family {:?}", args.family)))?;
    let ell = args.ell.unwrap_or_else(|| family.default_ell());
    let overrides = ParamOverrides {
        p: args.p,
        d: args.d,
        run_cap: args.run_cap,
        good_t: args.good_t,
        moduli: args.moduli.clone(),
    };
    usage_err!(codebook::derive_params(family, args.n, args.q, ell, &overrides))
}

fn resolve_residues(
    spec: CodeFamilySpec,
    best: bool,
    residues: Option<Vec<u64>>,
    budget: &Budget,
) -> Result<CodeFamilySpec, CliError> {
    match (best, residues) {
        (true, _) => {
            let (spec, _) = usage_err!(codebook::best_residues(&spec, budget))?;
            Ok(spec)
        }
        (false, Some(r)) => usage_err!(spec.with_residues(r)),
        (false, None) => Err(CliError::usage(
            "provide --residues r1,r2,... or --best to optimize them",
        )),
    }
}

fn write_out(out: &Option<String>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, content)
                .map_err(|e| CliError::usage(format!("cannot write {path}: {e}")))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|e| CliError::usage(e.to_string()))
        }
    }
}

fn run(command: Command) -> Result<u8, CliError> {
    let budget = Budget::from_env();
    match command {
        Command::Read { q, ell, word } => {
            let x = parse_word(q, &word)?;
            let rv = usage_err!(seqcore::read_vector(&x, ell))?;
            println!("{rv}");
            Ok(0)
        }
        Command::Dist { q, ell, x, y } => {
            let xw = parse_word(q, &x)?;
            let yw = parse_word(q, &y)?;
            let d = usage_err!(seqcore::read_distance(&xw, &yw, ell))?;
            println!("{}", serde_json::json!({ "read_distance": d }));
            Ok(0)
        }
        Command::Decompose { q, x, y } => {
            let xw = parse_word(q, &x)?;
            let yw = parse_word(q, &y)?;
            let ps = usage_err!(characterize::decompose_pair(&xw, &yw))?;
            println!("{}", ps.to_json());
            Ok(0)
        }
        Command::Check {
            family_args,
            residues,
            word,
        } => {
            let spec = family_spec(&family_args)?;
            let spec = usage_err!(spec.with_residues(residues))?;
            let x = parse_word(family_args.q, &word)?;
            let member = usage_err!(codebook::is_member(&spec, &x))?;
            println!(
                "{}",
                serde_json::json!({ "member": member, "spec": spec })
            );
            Ok(0)
        }
        Command::Enum {
            family_args,
            best,
            residues,
            out,
        } => {
            let spec = family_spec(&family_args)?;
            let spec = resolve_residues(spec, best, residues, &budget)?;
            let code = usage_err!(codebook::enumerate(&spec, &budget))?;
            let header = serde_json::json!({
                "spec": code.spec,
                "size": code.size,
                "redundancy": code.redundancy.map(|r| format!("{r:.6}")),
            });
            let mut body = header.to_string();
            body.push('\n');
            for w in &code.words {
                body.push_str(&w.to_string());
                body.push('\n');
            }
            write_out(&out, &body)?;
            eprintln!("{}: {} words", code.spec.family, code.size);
            Ok(0)
        }
        Command::Verify {
            check,
            q,
            nmax,
            ells,
            family,
            n,
            ell,
            p,
            d,
            run_cap,
            good_t,
            moduli,
            best,
            residues,
        } => {
            let report = if let Some(check) = check {
                let grid = SweepGrid {
                    q: q.ok_or_else(|| CliError::usage("--q is required for a sweep"))?,
                    n_max: nmax.ok_or_else(|| CliError::usage("--nmax is required for a sweep"))?,
                    ells,
                };
                usage_err!(oracle::sweep(&check, &grid, &budget))?
            } else if let Some(family) = family {
                let args = FamilyArgs {
                    family,
                    q: q.ok_or_else(|| CliError::usage("--q is required"))?,
                    n: n.ok_or_else(|| CliError::usage("--n is required"))?,
                    ell,
                    p,
                    d,
                    run_cap,
                    good_t,
                    moduli,
                };
                let spec = family_spec(&args)?;
                let spec = resolve_residues(spec, best, residues, &budget)?;
                usage_err!(codebook::verify_family(&spec, &budget))?
            } else {
                return Err(CliError::usage("provide --check <name> or --family <name>"));
            };
            println!(
                "{}",
                serde_json::to_string(&report).expect("report serializes")
            );
            eprintln!("{}", report.summary());
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Bounds {
            name,
            n,
            q,
            t,
            d,
            ell,
            format,
        } => {
            let need = |opt: Option<usize>, what: &str| {
                opt.ok_or_else(|| CliError::usage(format!("--{what} is required for {name}")))
            };
            let report = match name.as_str() {
                "hamming" => BoundReport {
                    name: "hamming_bound_redundancy".into(),
                    n: Some(n),
                    q: Some(q),
                    t: None,
                    d: Some(5),
                    value: BoundReport::real_value(bounds::hamming_bound_redundancy(n, q)),
                    provenance: "log_q((q-1)n+1), distance-5 floor via classical distance 3".into(),
                },
                "cliquecover" => {
                    let t = need(t, "t")?;
                    BoundReport {
                        name: "clique_cover_size".into(),
                        n: Some(n),
                        q: Some(q),
                        t: Some(t),
                        d: Some(3),
                        value: BoundReport::rational_value(&bounds::clique_cover_size(n, q, t)),
                        provenance: "q^n/(2t+1)(1+2t(1-(2t+1)/q^{2t})^m), exact rational".into(),
                    }
                }
                "d3lower" => {
                    let value = usage_err!(bounds::redundancy_lower_bound_d3(n, q))?;
                    // The asymptotic trend (value → log_q log_q n) is
                    // reported, never asserted.
                    let lg = (n as f64).ln() / (q as f64).ln();
                    let trend = value - lg.ln() / (q as f64).ln();
                    BoundReport {
                        name: "redundancy_lower_bound_d3".into(),
                        n: Some(n),
                        q: Some(q),
                        t: None,
                        d: Some(3),
                        value: BoundReport::real_value(value),
                        provenance: format!(
                            "n - log_q |Q(t*)| at the prescribed t*; trend delta vs log_q log_q n = {trend:.6}"
                        ),
                    }
                }
                "levenshtein" => {
                    let t = need(t, "t")?;
                    let d = need(d, "d")?;
                    BoundReport {
                        name: "levenshtein_n".into(),
                        n: Some(n),
                        q: Some(q),
                        t: Some(t),
                        d: Some(d),
                        value: usage_err!(bounds::levenshtein_n(n, q as u64, t, d))?.to_string(),
                        provenance: "exact substitution-ball intersection maximum".into(),
                    }
                }
                "reconupper" => {
                    let t = need(t, "t")?;
                    let d = need(d, "d")?;
                    let ell = need(ell, "ell")?;
                    BoundReport {
                        name: format!("read_recon_upper(ell={ell})"),
                        n: Some(n),
                        q: Some(q),
                        t: Some(t),
                        d: Some(d),
                        value: usage_err!(bounds::read_recon_upper(n, ell, q, t, d))?.to_string(),
                        provenance: "levenshtein_n over the multiset-rank alphabet".into(),
                    }
                }
                other => return Err(CliError::usage(format!("unknown bound {other:?}"))),
            };
            match format.as_str() {
                "csv" => println!("{}\n{}", BoundReport::CSV_HEADER, report.csv_row()),
                "json" => println!(
                    "{}",
                    serde_json::to_string(&report).expect("report serializes")
                ),
                other => return Err(CliError::usage(format!("unknown format {other:?}"))),
            }
            Ok(0)
        }
        Command::Table {
            families,
            q,
            n,
            ell,
            format,
            out,
        } => {
            let (start, stop, step) = parse_range(&n)?;
            let mut rows: Vec<serde_json::Value> = Vec::new();
            let mut csv = String::from("family,n,q,P,moduli,size,redundancy\n");
            for name in &families {
                let family = Family::parse(name)
                    .ok_or_else(|| CliError::usage(format!("unknown family {name:?}")))?;
                let mut n_cur = start;
                while n_cur <= stop {
                    let ell = ell.unwrap_or_else(|| family.default_ell());
                    let spec = usage_err!(codebook::derive_params(
                        family,
                        n_cur,
                        q,
                        ell,
                        &ParamOverrides::default()
                    ))?;
                    let (spec, _) = usage_err!(codebook::best_residues(&spec, &budget))?;
                    let code = usage_err!(codebook::enumerate(&spec, &budget))?;
                    let moduli = spec
                        .moduli()
                        .iter()
                        .map(|m| m.to_string())
                        .collect::<Vec<_>>()
                        .join(";");
                    let p_str = spec
                        .p_param
                        .map(|p| p.to_string())
                        .unwrap_or_default();
                    let red_str = code
                        .redundancy
                        .map(|r| format!("{r:.6}"))
                        .unwrap_or_default();
                    csv.push_str(&format!(
                        "{},{},{},{},{},{},{}\n",
                        family, n_cur, q, p_str, moduli, code.size, red_str
                    ));
                    rows.push(serde_json::json!({
                        "family": family,
                        "n": n_cur,
                        "q": q,
                        "P": spec.p_param,
                        "moduli": spec.moduli(),
                        "size": code.size,
                        "redundancy": code.redundancy.map(|r| format!("{r:.6}")),
                    }));
                    n_cur += step;
                }
            }
            let content = match format.as_str() {
                "csv" => csv,
                "json" => {
                    let mut s = serde_json::to_string_pretty(&rows).expect("rows serialize");
                    s.push('\n');
                    s
                }
                other => return Err(CliError::usage(format!("unknown format {other:?}"))),
            };
            write_out(&out, &content)?;
            Ok(0)
        }
    }
}

/// Parse "start..stop[..step]", inclusive.
fn parse_range(text: &str) -> Result<(usize, usize, usize), CliError> {
    let parts: Vec<&str> = text.split("..").collect();
    let parse = |s: &str| {
        s.parse::<usize>()
            .map_err(|e| CliError::usage(format!("bad range component {s:?}: {e}")))
    };
    match parts.as_slice() {
        [a, b] => {
            let (start, stop) = (parse(a)?, parse(b)?);
            if stop < start {
                return Err(CliError::usage("range stop is below start"));
            }
            Ok((start, stop, 1))
        }
        [a, b, c] => {
            let (start, stop, step) = (parse(a)?, parse(b)?, parse(c)?);
            if step == 0 {
                return Err(CliError::usage("range step must be at least 1"));
            }
            if stop < start {
                return Err(CliError::usage("range stop is below start"));
            }
            Ok((start, stop, step))
        }
        _ => Err(CliError::usage(
            "range must be start..stop or start..stop..step",
        )),
    }
}
