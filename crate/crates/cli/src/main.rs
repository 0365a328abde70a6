//! `sf`: enumerate, measure, map and verify k-Stirling words and forests.

use std::collections::BTreeSet;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kstirling::gfs::parse_label_set;
use kstirling::poly::GammaExpansion;
use kstirling::stirling::ap_polynomial;
use kstirling::*;

#[derive(Parser)]
#[command(name = "sf", version, about = "k-Stirling permutations and increasing forests")]
struct Cli {
    /// Refuse enumerations larger than this many objects.
    #[arg(long, global = true, value_name = "COUNT")]
    max_objects: Option<u128>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Perms,
    Forests,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputKind {
    Word,
    Forest,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Filter {
    Bar,
    Hat,
    Tilde,
    Star,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    #[value(name = "A")]
    Whole,
    #[value(name = "a")]
    A,
    #[value(name = "b")]
    B,
    #[value(name = "c")]
    C,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GammaWhich {
    #[value(name = "a")]
    A,
    #[value(name = "b")]
    B,
    #[value(name = "c")]
    C,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    Ap,
    ExcCyc,
    Egf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum By {
    Census,
    Decomposition,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MapName {
    Xi,
    XiInv,
    Chi,
    ChiInv,
    Zeta,
    ZetaInv,
    Phi,
    PhiSet,
    Theta,
    ThetaPrime,
    Psi,
    Alpha,
    Beta,
    Gamma,
    GammaPrime,
}

#[derive(Subcommand)]
enum Command {
    /// List every word or forest on 1..=n.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, value_enum)]
        filter: Option<Filter>,
        /// Stop after this many lines.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Full statistic record of one word or forest, as JSON.
    Stats {
        #[arg(long)]
        k: usize,
        /// Word or forest text, or `-` for stdin.
        #[arg(long)]
        input: String,
        /// Skip autodetection.
        #[arg(long, value_enum)]
        kind: Option<InputKind>,
    },
    /// A_n^(k) or a part of it.
    Poly {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, value_enum, default_value = "egf")]
        route: Route,
        /// Print `1 + 10x + 4x^2` instead of `[1,10,4]`.
        #[arg(long)]
        pretty: bool,
    },
    /// Gamma coefficients of a, x*b or c.
    Gamma {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        which: GammaWhich,
        #[arg(long, value_enum, default_value = "census")]
        by: By,
    },
    /// Apply one of the maps to a word, tree, forest or marked forest.
    Map {
        #[arg(long, value_enum)]
        name: MapName,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        x: Option<u32>,
        /// Comma-separated labels, e.g. `3,5`.
        #[arg(long)]
        set: Option<String>,
        /// Input text, or `-` for stdin. Marked forests read `F | {1,3}`.
        #[arg(long)]
        input: String,
    },
    /// Run the identity suites and report each (identity, n, k).
    Verify {
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        k_max: usize,
        /// Comma-separated subset of polynomials,bijections,gfs,pipeline,theorems.
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn read_input(raw: &str) -> Result<String> {
    if raw == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s.trim_end_matches(['\n', '\r']).to_string())
    } else {
        Ok(raw.to_string())
    }
}

fn labels(set: &Option<String>) -> Result<BTreeSet<u32>> {
    match set {
        None => Ok(BTreeSet::new()),
        Some(s) => Ok(parse_label_set(s)?),
    }
}

fn word_record(w: &KStirlingWord) -> Value {
    let c = word_class(w);
    json!({
        "kind": "word",
        "word": w.to_string(),
        "k": w.k(),
        "n": w.order(),
        "ap": stat_ap(w),
        "lap": stat_lap(w),
        "in_bar": c.in_bar,
        "in_tilde": c.in_tilde,
        "starts_with_plateau": c.starts_with_plateau,
    })
}

fn forest_record(f: &Forest) -> Value {
    let s = forest_stats(f);
    let c = forest_class(f);
    let r = removable_labels(f);
    let ls = label_sets(f);
    json!({
        "kind": "forest",
        "forest": f.to_string(),
        "k": f.k,
        "n": f.size(),
        "lleaf": s.lleaf,
        "si": s.si,
        "oleaf": s.oleaf,
        "yleaf": s.yleaf,
        "oint": s.oint,
        "lint": s.lint,
        "rleaf": s.rleaf,
        "lleaf_minus_si": s.lleaf_minus_si(),
        "in_bar": c.in_bar,
        "in_star": c.in_star,
        "removable_old": r.old,
        "removable_young": r.young,
        "oint_star": ls.oint_star,
        "si_star": ls.si_star,
    })
}

fn looks_like_word(text: &str) -> bool {
    !text.trim().is_empty()
        && text
            .trim()
            .chars()
            .all(|c| c.is_ascii_digit() || c == '.')
}

fn stats(k: usize, text: &str, kind: Option<InputKind>) -> Result<Value> {
    let kind = kind.unwrap_or_else(|| {
        // a bare number such as "5" is a word only if it is a valid one
        if looks_like_word(text) && KStirlingWord::parse(text, k).is_ok() {
            InputKind::Word
        } else {
            InputKind::Forest
        }
    });
    Ok(match kind {
        InputKind::Word => word_record(&KStirlingWord::parse(text, k)?),
        InputKind::Forest => forest_record(&parse_forest(text, k)?),
    })
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    out: &mut impl Write,
    n: usize,
    k: usize,
    kind: Kind,
    filter: Option<Filter>,
    limit: Option<usize>,
    format: Format,
    l: &Limits,
) -> Result<()> {
    let cap = limit.unwrap_or(usize::MAX);
    let mut shown = 0;
    match kind {
        Kind::Perms => {
            for w in enumerate_k_stirling(n, k, l)? {
                if shown == cap {
                    break;
                }
                let c = word_class(&w);
                let keep = match filter {
                    None => true,
                    Some(Filter::Bar) => c.in_bar,
                    Some(Filter::Hat) => !c.in_bar,
                    Some(Filter::Tilde) => c.in_tilde,
                    Some(Filter::Star) => forest_class(&zeta(&w)).in_star,
                };
                if keep {
                    match format {
                        Format::Text => writeln!(out, "{w}")?,
                        Format::Json => writeln!(out, "{}", word_record(&w))?,
                    }
                    shown += 1;
                }
            }
        }
        Kind::Forests => {
            for f in enumerate_forests_n(n, k, l)? {
                if shown == cap {
                    break;
                }
                let keep = match filter {
                    None => true,
                    Some(Filter::Bar) => is_bar(&f),
                    Some(Filter::Hat) => !is_bar(&f),
                    Some(Filter::Tilde) => f.trees.len() == 1,
                    Some(Filter::Star) => forest_class(&f).in_star,
                };
                if keep {
                    match format {
                        Format::Text => writeln!(out, "{f}")?,
                        Format::Json => writeln!(out, "{}", serde_json::to_string(&f)?)?,
                    }
                    shown += 1;
                }
            }
        }
    }
    Ok(())
}

fn whole(n: usize, k: usize, route: Route, l: &Limits) -> Result<IntPolynomial> {
    Ok(match route {
        Route::Ap => ap_polynomial(n, k, l)?,
        Route::ExcCyc => exc_cyc_polynomial(n, k, l)?,
        Route::Egf => egf_one_over_k_eulerian(k, n)?.swap_remove(n),
    })
}

fn need_positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        bail!("--n must be at least 1 for {what}");
    }
    Ok(())
}

fn poly(n: usize, k: usize, which: Which, route: Route, l: &Limits) -> Result<IntPolynomial> {
    match which {
        Which::Whole => whole(n, k, route, l),
        Which::A | Which::B => {
            need_positive(n, "the decomposition")?;
            let d = symmetric_decompose(&whole(n, k, route, l)?, n - 1)?;
            Ok(if which == Which::A { d.a } else { d.b })
        }
        Which::C => {
            if route != Route::Ap {
                bail!("--which c is only available with --route ap");
            }
            Ok(distribution(Family::QTilde, Statistic::Ap, n, k, l)?)
        }
    }
}

fn gamma(n: usize, k: usize, which: GammaWhich, by: By, l: &Limits) -> Result<GammaExpansion> {
    need_positive(n, "gamma coefficients")?;
    let center = if which == GammaWhich::A { n - 1 } else { n };
    Ok(match by {
        By::Census => {
            let counts = match which {
                GammaWhich::A => gamma_census_bar_hat(n, k, l)?.gamma_bar,
                GammaWhich::B => gamma_census_bar_hat(n, k, l)?.gamma_hat,
                GammaWhich::C => gamma_census_tilde(n, k, l)?,
            };
            GammaExpansion::from_counts(center, &counts)?
        }
        By::Decomposition => {
            let h = match which {
                GammaWhich::C => {
                    if n < 2 {
                        bail!("--which c needs --n at least 2");
                    }
                    distribution(Family::QTilde, Statistic::Ap, n, k, l)?
                }
                _ => {
                    let d = symmetric_decompose(&egf_one_over_k_eulerian(k, n)?[n], n - 1)?;
                    if which == GammaWhich::A {
                        d.a
                    } else {
                        d.x_b()
                    }
                }
            };
            gamma_expand(&h, center)?
        }
    })
}

fn marked_input(text: &str, k: usize, set: &Option<String>) -> Result<MarkedForest> {
    let mut mf = MarkedForest::parse(text, k)?;
    if set.is_some() {
        if !mf.marks.is_empty() {
            bail!("marks given both inline and with --set");
        }
        let forest = mf.forest;
        let marks = labels(set)?;
        mf = MarkedForest::new(forest, marks);
        for &x in &mf.marks {
            if !mf.forest.labels().contains(&x) {
                return Err(Error::UnknownLabel(x).into());
            }
        }
    }
    Ok(mf)
}

fn need_x(x: Option<u32>, name: &str) -> Result<u32> {
    x.ok_or_else(|| anyhow!("--name {name} needs --x"))
}

fn apply_map(
    name: MapName,
    k: usize,
    x: Option<u32>,
    set: &Option<String>,
    text: &str,
) -> Result<String> {
    let word = || KStirlingWord::parse(text, k);
    let forest = || parse_forest(text, k);
    Ok(match name {
        MapName::Xi => xi(&word()?).to_string(),
        MapName::XiInv => xi_inv(&forest()?)?.to_string(),
        MapName::Chi => chi(&word()?)?.to_string(),
        MapName::ChiInv => chi_inv(&parse_tree(text, k)?, k)?.to_string(),
        MapName::Zeta => zeta(&word()?).to_string(),
        MapName::ZetaInv => zeta_inv(&forest()?)?.to_string(),
        MapName::Phi => {
            let x = need_x(x, "phi")?;
            let f = forest()?;
            if !f.labels().contains(&x) {
                return Err(Error::UnknownLabel(x).into());
            }
            phi_set(&f, &BTreeSet::from([x]))?.to_string()
        }
        MapName::PhiSet => {
            let s = set
                .as_ref()
                .ok_or_else(|| anyhow!("--name phi-set needs --set"))?;
            phi_set(&forest()?, &parse_label_set(s)?)?.to_string()
        }
        MapName::Theta => theta(&marked_input(text, k, set)?)?.to_string(),
        MapName::ThetaPrime => theta_prime(&marked_input(text, k, set)?)?.to_string(),
        MapName::Psi => psi(&forest()?, need_x(x, "psi")?)?.0.to_string(),
        MapName::Alpha => alpha_step(&marked_input(text, k, set)?)?.to_string(),
        MapName::Beta => beta_step(&marked_input(text, k, set)?)?.to_string(),
        MapName::Gamma => gamma_map(&marked_input(text, k, set)?)?.to_string(),
        MapName::GammaPrime => gamma_prime_map(&forest()?)?.to_string(),
    })
}

enum Outcome {
    Ok,
    IdentityFailed,
}

fn run(cli: Cli, out: &mut impl Write) -> Result<Outcome> {
    let mut limits = Limits::default();
    if let Some(m) = cli.max_objects {
        limits = limits.with_max_objects(m);
    }
    let l = &limits;
    match cli.command {
        Command::Enumerate {
            n,
            k,
            kind,
            filter,
            limit,
            format,
        } => enumerate(out, n, k, kind, filter, limit, format, l)?,
        Command::Stats { k, input, kind } => {
            let text = read_input(&input)?;
            writeln!(out, "{}", stats(k, &text, kind)?)?;
        }
        Command::Poly {
            n,
            k,
            which,
            route,
            pretty,
        } => {
            let h = poly(n, k, which, route, l)?;
            if pretty {
                writeln!(out, "{}", h.to_pretty_string())?;
            } else {
                writeln!(out, "{h}")?;
            }
        }
        Command::Gamma { n, k, which, by } => {
            let g = gamma(n, k, which, by, l)?;
            writeln!(out, "{}", serde_json::to_string(&g)?)?;
        }
        Command::Map {
            name,
            k,
            x,
            set,
            input,
        } => {
            let text = read_input(&input)?;
            writeln!(out, "{}", apply_map(name, k, x, &set, &text)?)?;
        }
        Command::Verify {
            n_max,
            k_max,
            suite,
            format,
        } => {
            let suites: Vec<Suite> = if suite.is_empty() {
                Suite::ALL.to_vec()
            } else {
                suite
                    .iter()
                    .map(|s| s.parse::<Suite>())
                    .collect::<kstirling::Result<_>>()?
            };
            let reports = run_suite(n_max, k_max, &suites, l)?;
            match format {
                Format::Text => write!(out, "{}", summary_table(&reports))?,
                Format::Json => {
                    for r in &reports {
                        writeln!(out, "{}", r.to_json())?;
                    }
                }
            }
            if reports.iter().any(|r| !r.pass) {
                return Ok(Outcome::IdentityFailed);
            }
        }
    }
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let res = run(cli, &mut out);
    let flushed = out.flush();
    match res {
        Ok(Outcome::Ok) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(Outcome::IdentityFailed) => ExitCode::from(1),
        Ok(Outcome::Ok) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_detection() {
        assert!(looks_like_word("1122"));
        assert!(looks_like_word("1.1.10.10"));
        assert!(!looks_like_word("1 2"));
        assert!(!looks_like_word("1[;2]"));
        assert_eq!(stats(2, "5", None).unwrap()["kind"], "forest");
        assert_eq!(stats(2, "1221", None).unwrap()["kind"], "word");
        assert_eq!(kstirling::gfs::format_label_set(&BTreeSet::from([1, 3])), "{1,3}");
    }
}
