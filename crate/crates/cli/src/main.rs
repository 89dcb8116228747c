use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use latticeroot_core::analysis::{self, OrbitSelector, Options, Representative, Target, ORIENTATION};
use latticeroot_core::lattice::{render_ascii, render_dot, render_text, BUDGET_ENV, DEFAULT_BUDGET};
use latticeroot_core::plumbing::{from_seifert, validate_form};
use latticeroot_core::report::fmt_rational;
use latticeroot_core::{build_intersection_form, Error, IntersectionForm, PlumbingGraph, Result, SeifertData};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "latticeroot", version, about = "Lattice cohomology and Pin(2) invariants of negative definite plumbings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the plumbing is a negative definite tree.
    Validate(Common),
    /// List the spin^c structures.
    Spinc(Common),
    /// HM of the orientation reversed boundary.
    Hm(Common),
    /// The graded root of each selected spin^c structure.
    Root(Common),
    /// Pin(2)-monopole Floer homology and its correction terms.
    Pin2(Common),
    /// The Neumann-Siebenmann invariant and its comparison with rho.
    Mubar(Common),
    /// Decomposition of the Gysin sequence.
    Gysin(Common),
    /// Convert Seifert data into a plumbing graph.
    Seifert(Common),
}

#[derive(Args, Clone)]
struct Common {
    /// Plumbing graph as a JSON file path or inline JSON.
    #[arg(long, short)]
    input: Option<String>,
    /// Seifert invariants {"b": .., "arms": [[alpha, omega], ..]}, path or inline.
    #[arg(long)]
    seifert: Option<String>,
    /// Brieskorn exponents, e.g. 2,3,5.
    #[arg(long, value_delimiter = ',')]
    brieskorn: Option<Vec<i64>>,
    /// all, self-conjugate or an orbit index.
    #[arg(long)]
    orbit: Option<String>,
    /// A characteristic vector to use as representative, e.g. -1,0,3.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    k: Option<Vec<i64>>,
    #[arg(long, value_enum, default_value_t = Rep::Minimal)]
    rep: Rep,
    /// Compute every level up to this one.
    #[arg(long, allow_hyphen_values = true)]
    max_level: Option<i64>,
    /// Maximum number of lattice points per sublevel set.
    #[arg(long, env = BUDGET_ENV, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Read the odd part of A' off the lattice.
    #[arg(long)]
    assume_conjecture: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Rep {
    Minimal,
    Canonical,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
    Ascii,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotNegativeDefinite { .. } => 2,
        Error::CapacityExceeded(_) | Error::StabilizationNotReached(_) => 3,
        Error::ConjectureRequired => 4,
        Error::AmbiguousGysinData(_) | Error::NotForced(_) => 5,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    match run(&cli.command, &mut out) {
        Ok(code) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(e) => {
            print!("{out}");
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn read_arg(arg: &str) -> Result<String> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(Path::new(arg)).map_err(|e| Error::Parse(format!("{arg}: {e}")))
}

fn load_graph(c: &Common) -> Result<PlumbingGraph> {
    match (&c.input, &c.seifert, &c.brieskorn) {
        (Some(i), None, None) => PlumbingGraph::from_json(&read_arg(i)?),
        (None, Some(_), None) | (None, None, Some(_)) => from_seifert(&load_seifert(c)?),
        _ => Err(Error::Parse("give exactly one of --input, --seifert, --brieskorn".into())),
    }
}

fn load_seifert(c: &Common) -> Result<SeifertData> {
    match (&c.seifert, &c.brieskorn) {
        (Some(s), None) => SeifertData::from_json(&read_arg(s)?),
        (None, Some(e)) => SeifertData::brieskorn(e),
        _ => Err(Error::Parse("give exactly one of --seifert, --brieskorn".into())),
    }
}

fn selector(c: &Common, default: OrbitSelector) -> Result<OrbitSelector> {
    if let Some(k) = &c.k {
        if c.orbit.is_some() {
            return Err(Error::Parse("--orbit and --k are exclusive".into()));
        }
        return Ok(OrbitSelector::Vector(k.clone()));
    }
    match c.orbit.as_deref() {
        None => Ok(default),
        Some("all") => Ok(OrbitSelector::All),
        Some("self-conjugate") => Ok(OrbitSelector::SelfConjugate),
        Some(s) => s
            .parse()
            .map(OrbitSelector::Index)
            .map_err(|_| Error::Parse(format!("unknown orbit selector {s:?}"))),
    }
}

fn options(c: &Common) -> Options {
    let mut opts = Options {
        representative: match c.rep {
            Rep::Minimal => Representative::Minimal,
            Rep::Canonical => Representative::CanonicalClass,
        },
        assume_conjecture: c.assume_conjecture,
        ..Options::default()
    };
    opts.root.max_level = c.max_level;
    opts.root.budget = c.budget;
    opts
}

fn json<T: Serialize>(out: &mut String, v: &T) {
    out.push_str(&serde_json::to_string_pretty(v).expect("reports serialize"));
    out.push('\n');
}

fn vector(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn targets(c: &Common, default: OrbitSelector) -> Result<(IntersectionForm, Vec<Target>, Options)> {
    let form = build_intersection_form(&load_graph(c)?)?;
    let opts = options(c);
    let sel = selector(c, default)?;
    let targets = analysis::select(&form, &sel, &opts.representative)?;
    Ok((form, targets, opts))
}

fn run(cmd: &Command, out: &mut String) -> Result<u8> {
    match cmd {
        Command::Validate(c) => validate(c, out),
        Command::Seifert(c) => {
            let g = from_seifert(&load_seifert(c)?)?;
            match c.format {
                Format::Json => {
                    out.push_str(&g.to_json());
                    out.push('\n');
                }
                _ => {
                    for v in &g.vertices {
                        out.push_str(&format!("vertex {} weight {}\n", v.id, v.weight));
                    }
                    for [a, b] in &g.edges {
                        out.push_str(&format!("edge {a} {b}\n"));
                    }
                }
            }
            Ok(0)
        }
        Command::Spinc(c) => {
            let (_, targets, _) = targets(c, OrbitSelector::All)?;
            if c.format == Format::Json {
                let orbits: Vec<_> = targets.iter().map(|t| &t.orbit).collect();
                json(out, &orbits);
            } else {
                for t in &targets {
                    let o = &t.orbit;
                    out.push_str(&format!(
                        "orbit {}: {} k^2 = {} sigma = {}{}\n",
                        o.index,
                        vector(o.representative.values()),
                        fmt_rational(&o.k_square),
                        fmt_rational(&o.sigma),
                        if o.self_conjugate { " self-conjugate" } else { "" }
                    ));
                }
            }
            Ok(0)
        }
        Command::Hm(c) => {
            let (form, targets, opts) = targets(c, OrbitSelector::All)?;
            let mut reports = Vec::new();
            for t in &targets {
                let r = analysis::hm_report(&form, t, &opts)?;
                if c.format != Format::Json {
                    out.push_str(&format!(
                        "orbit {} {}: HM of {ORIENTATION} = {}\n",
                        r.orbit,
                        vector(r.representative.values()),
                        r.description
                    ));
                }
                reports.push(r);
            }
            if c.format == Format::Json {
                json(out, &reports);
            }
            Ok(0)
        }
        Command::Root(c) => {
            let (form, targets, opts) = targets(c, OrbitSelector::All)?;
            let mut roots = Vec::new();
            for t in &targets {
                let root = analysis::compute_root(&form, t, &opts.root)?.root;
                match c.format {
                    Format::Json => {}
                    Format::Dot => out.push_str(&render_dot(&root)),
                    Format::Ascii => {
                        out.push_str(&format!("orbit {} of {ORIENTATION}\n", t.orbit.index));
                        out.push_str(&render_ascii(&root));
                    }
                    Format::Text => {
                        out.push_str(&format!("orbit {} of {ORIENTATION}\n", t.orbit.index));
                        out.push_str(&render_text(&root));
                    }
                }
                roots.push(root);
            }
            if c.format == Format::Json {
                json(out, &roots);
            }
            Ok(0)
        }
        Command::Mubar(c) => {
            let (form, targets, opts) = targets(c, OrbitSelector::SelfConjugate)?;
            let mut reports = Vec::new();
            for t in &targets {
                let r = analysis::mubar_report(&form, t, &opts)?;
                if c.format != Format::Json {
                    let check = match r.rho_equals_two_mubar {
                        Some(true) => "passed",
                        Some(false) => "FAILED",
                        None => "not asserted",
                    };
                    out.push_str(&format!(
                        "orbit {} of {ORIENTATION}: mubar = {}, rho = {}, rho = 2 mubar {check}\n",
                        r.orbit,
                        fmt_rational(&r.wu.mu_bar),
                        fmt_rational(&r.symmetry.rho)
                    ));
                }
                reports.push(r);
            }
            if c.format == Format::Json {
                json(out, &reports);
            }
            Ok(0)
        }
        Command::Pin2(c) | Command::Gysin(c) => {
            let gysin_only = matches!(cmd, Command::Gysin(_));
            let (form, targets, opts) = targets(c, OrbitSelector::SelfConjugate)?;
            let mut reports = Vec::new();
            for t in &targets {
                let r = analysis::pin2_report(&form, t, &opts)?;
                if c.format != Format::Json {
                    let gated = if r.conjecture_gated { " (assuming the odd identification)" } else { "" };
                    if gysin_only {
                        out.push_str(&format!(
                            "orbit {} of {ORIENTATION}: Gysin = {}{gated}\n",
                            r.orbit, r.gysin_description
                        ));
                    } else {
                        let tm = &r.terms;
                        out.push_str(&format!(
                            "orbit {} of {ORIENTATION}: HS = {}{gated}\n  alpha = {} beta = {} gamma = {} delta = {} rho = {}{}\n",
                            r.orbit,
                            r.description,
                            fmt_rational(&tm.alpha),
                            fmt_rational(&tm.beta),
                            fmt_rational(&tm.gamma),
                            fmt_rational(&tm.delta),
                            fmt_rational(&tm.rho),
                            tm.mu_bar.map(|m| format!(" mubar = {}", fmt_rational(&m))).unwrap_or_default()
                        ));
                    }
                }
                reports.push(r);
            }
            if c.format == Format::Json {
                if gysin_only {
                    let g: Vec<_> = reports.iter().map(|r| &r.gysin).collect();
                    json(out, &g);
                } else {
                    json(out, &reports);
                }
            }
            Ok(0)
        }
    }
}

fn validate(c: &Common, out: &mut String) -> Result<u8> {
    let form = build_intersection_form(&load_graph(c)?)?;
    let report = validate_form(&form);
    if c.format == Format::Json {
        json(out, &report);
    } else {
        out.push_str(&format!(
            "{}, {} bad {}, det {}\n",
            if report.is_negative_definite { "negative definite" } else { "not negative definite" },
            report.bad_count(),
            if report.bad_count() == 1 { "vertex" } else { "vertices" },
            report.determinant
        ));
    }
    Ok(if report.is_negative_definite { 0 } else { 2 })
}
