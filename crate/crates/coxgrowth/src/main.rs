//! Command-line front end: compute series, run verification checks, locate
//! poles, classify diagrams, and inspect the bundled catalog.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use coxgrowth::catalog::{self, CatalogEntry};
use coxgrowth::classify::{classify_components, group_type, infinite_poset, terminal_class, GroupType};
use coxgrowth::diagram::{parse_diagram, CoxeterMatrix};
use coxgrowth::growth::{steinberg_growth, GrowthResult};
use coxgrowth::poles::{annulus_statistics, compare_poles, csv_rows, pole_report, PoleReport};
use coxgrowth::verify::full_report;

#[derive(Parser)]
#[command(
    name = "coxgrowth",
    about = "Exact Poincare series of Coxeter groups: computation, verification, poles",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct InputArgs {
    /// Catalog label, e.g. QL4_1.
    #[arg(long)]
    label: Option<String>,
    /// Diagram file in the text format.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Run over the whole catalog.
    #[arg(long)]
    all: bool,
}

impl InputArgs {
    /// Resolve to (matrix, catalog entry) pairs; exactly one source.
    fn resolve(&self) -> Result<Vec<(CoxeterMatrix, Option<CatalogEntry>)>> {
        let sources = [self.label.is_some(), self.file.is_some(), self.all]
            .iter()
            .filter(|b| **b)
            .count();
        if sources != 1 {
            bail!("exactly one of --label, --file, --all must be given");
        }
        if let Some(label) = &self.label {
            let entry = catalog::lookup(label)?;
            return Ok(vec![(entry.matrix.clone(), Some(entry))]);
        }
        if let Some(path) = &self.file {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let m = parse_diagram(&text)?;
            return Ok(vec![(m, None)]);
        }
        let mut entries = catalog::load_catalog()?;
        entries.sort_by_key(|e| label_sort_key(&e.label));
        Ok(entries.into_iter().map(|e| (e.matrix.clone(), Some(e))).collect())
    }
}

fn label_sort_key(label: &str) -> (usize, usize) {
    let (fam, idx) = label.split_once('_').unwrap_or((label, "0"));
    let rank: usize = fam.trim_start_matches("QL").trim_start_matches('L').parse().unwrap_or(0);
    let quasi = fam.starts_with("QL") as usize;
    (quasi * 100 + rank, idx.parse().unwrap_or(0))
}

#[derive(Subcommand)]
enum Command {
    /// Compute the Poincare series of a diagram.
    Compute {
        #[command(flatten)]
        input: InputArgs,
        /// Number of series coefficients to print (length of the prefix).
        #[arg(long, default_value_t = 10)]
        prefix: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the structural verification checks.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Locate the poles of the series.
    Poles {
        #[command(flatten)]
        input: InputArgs,
        /// Root-finder residual tolerance.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Compare against the catalog's printed pole data.
        #[arg(long)]
        compare: bool,
        /// Write a root scatter CSV to this path.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Classify a diagram and its subdiagram poset.
    Classify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Inspect the bundled catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List every label with its family and degrees.
    List,
    /// Print one entry: the diagram and the printed data.
    Dump { label: String },
}

fn main() -> ExitCode {
    // die quietly when the output pipe closes (e.g. piping into head)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Compute { input, prefix, format } => cmd_compute(&input, prefix, format),
        Command::Verify { input, format } => cmd_verify(&input, format),
        Command::Poles { input, tol, compare, csv, format } => {
            cmd_poles(&input, tol, compare, csv.as_deref(), format)
        }
        Command::Classify { input, format } => cmd_classify(&input, format),
        Command::Catalog { action } => cmd_catalog(action),
    }
}

fn cmd_compute(input: &InputArgs, prefix: usize, format: Format) -> Result<bool> {
    let inputs = input.resolve()?;
    let results: Vec<_> = inputs
        .par_iter()
        .map(|(m, entry)| steinberg_growth(m).map(|g| (entry.clone(), g)))
        .collect::<std::result::Result<_, _>>()?;
    let mut json_out = Vec::new();
    for (entry, g) in &results {
        match format {
            Format::Text => {
                if let Some(e) = entry {
                    println!("== {}", e.label);
                }
                print!("{}", render_growth(g, prefix)?);
            }
            _ => {
                let mut v = g.to_json();
                if let Some(e) = entry {
                    v["label"] = serde_json::Value::String(e.label.clone());
                }
                v["series_prefix"] = serde_json::json!(g
                    .series_prefix(prefix)?
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>());
                json_out.push(v);
            }
        }
    }
    if format != Format::Text {
        println!("{}", serde_json::to_string_pretty(&json_out)?);
    }
    Ok(true)
}

fn render_growth(g: &GrowthResult, prefix: usize) -> Result<String> {
    let mut s = String::new();
    s.push_str(&format!("type:      {}\n", g.group_type.name()));
    s.push_str(&format!("virgin:    {}\n", g.virgin_numerator));
    let sign = if g.complete.sign < 0 { "-" } else { "" };
    s.push_str(&format!(
        "complete:  {sign}{} / ({})   degrees {:?}, m = {}\n",
        g.complete.render_numerator(),
        g.complete.denominator,
        g.complete.degrees,
        g.complete.m
    ));
    s.push_str(&format!(
        "reduced:   {}{} / ({})   degrees {:?}\n",
        if g.reduced_sign < 0 { "-" } else { "" },
        g.reduced_factors.render(),
        g.reduced.den(),
        g.reduced_degrees()
    ));
    s.push_str(&format!("           = ({}) / ({})\n", g.reduced.num(), g.reduced.den()));
    s.push_str(&format!("virgin form equals reduced: {}\n", g.virgin_equals_reduced()));
    let coeffs = g.series_prefix(prefix)?;
    let rendered: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
    s.push_str(&format!("series:    {}\n", rendered.join(", ")));
    Ok(s)
}

fn cmd_verify(input: &InputArgs, format: Format) -> Result<bool> {
    let inputs = input.resolve()?;
    let reports: Vec<_> = inputs
        .par_iter()
        .map(|(m, entry)| {
            let g = steinberg_growth(m)?;
            full_report(m, &g, entry.as_ref())
        })
        .collect::<std::result::Result<_, _>>()?;
    let mut all_ok = true;
    match format {
        Format::Text => {
            for r in &reports {
                print!("{}", r.render_text());
                all_ok &= r.all_passed();
            }
            println!(
                "{} of {} reports passed",
                reports.iter().filter(|r| r.all_passed()).count(),
                reports.len()
            );
        }
        _ => {
            let v: Vec<_> = reports.iter().map(|r| r.to_json()).collect();
            println!("{}", serde_json::to_string_pretty(&v)?);
            all_ok = reports.iter().all(|r| r.all_passed());
        }
    }
    Ok(all_ok)
}

fn cmd_poles(
    input: &InputArgs,
    tol: f64,
    compare: bool,
    csv: Option<&std::path::Path>,
    format: Format,
) -> Result<bool> {
    let inputs = input.resolve()?;
    let reports: Vec<(Option<CatalogEntry>, PoleReport)> = inputs
        .par_iter()
        .map(|(m, entry)| {
            let g = steinberg_growth(m)?;
            let mut r = pole_report(&g, tol)?;
            r.label = entry.as_ref().map(|e| e.label.clone());
            Ok((entry.clone(), r))
        })
        .collect::<std::result::Result<_, coxgrowth::Error>>()?;
    let mut all_ok = true;
    let mut json_out = Vec::new();
    for (entry, r) in &reports {
        let comparison = if compare {
            entry.as_ref().and_then(|e| {
                e.expected.poles.as_ref().map(|p| compare_poles(p, &e.expected.notes, r, 5e-5))
            })
        } else {
            None
        };
        if let Some(c) = &comparison {
            all_ok &= c.ok;
        }
        match format {
            Format::Text => {
                if let Some(l) = &r.label {
                    println!("== {l}");
                }
                println!(
                    "degree {} | trivial pole at 1 with multiplicity {}",
                    r.degree, r.trivial_pole_multiplicity
                );
                for (v, mult) in &r.real_poles {
                    if *mult > 1 {
                        println!("real pole {v} (multiplicity {mult})");
                    } else {
                        println!("real pole {v}");
                    }
                }
                match (r.nonreal_min_modulus, r.nonreal_max_modulus) {
                    (Some(lo), Some(hi)) => println!("non-real annulus m = {lo}, M = {hi}"),
                    _ => println!("no non-real poles"),
                }
                println!("growth exponent {}", r.growth_exponent);
                if let Some(c) = &comparison {
                    if c.ok && c.flags.is_empty() {
                        println!("compare: ok");
                    } else if c.ok {
                        println!("compare: flagged (annotated printed data)");
                        for f in &c.flags {
                            println!("  flag: {f}");
                        }
                    } else {
                        println!("compare: MISMATCH");
                        for f in &c.flags {
                            println!("  {f}");
                        }
                    }
                }
            }
            _ => {
                json_out.push(serde_json::json!({
                    "label": r.label,
                    "report": r,
                    "compare": comparison.as_ref().map(|c| serde_json::json!({
                        "ok": c.ok, "flags": c.flags,
                    })),
                }));
            }
        }
    }
    if format == Format::Json {
        println!("{}", serde_json::to_string_pretty(&json_out)?);
    }
    if format == Format::Csv || csv.is_some() {
        let mut rows = vec!["label,root_re,root_im,modulus,is_real,is_trivial".to_string()];
        for (_, r) in &reports {
            rows.extend(csv_rows(r));
        }
        let body = rows.join("\n") + "\n";
        match csv {
            Some(path) => std::fs::write(path, &body)
                .with_context(|| format!("writing {}", path.display()))?,
            None => print!("{body}"),
        }
    }
    if input.all && format == Format::Text {
        let only: Vec<PoleReport> = reports.iter().map(|(_, r)| r.clone()).collect();
        let summary = annulus_statistics(&only)?;
        println!(
            "annulus widths: min {:?} max {:?} mean {:?}",
            summary.min_width, summary.max_width, summary.mean_width
        );
    }
    Ok(all_ok)
}

fn cmd_classify(input: &InputArgs, format: Format) -> Result<bool> {
    let inputs = input.resolve()?;
    for (m, entry) in &inputs {
        let gt = group_type(m);
        let components: Vec<String> =
            classify_components(m).iter().map(|c| format!("{c:?}")).collect();
        let (inf, k, branch) = if gt.is_finite() {
            (0, 0, None)
        } else {
            let poset = infinite_poset(m)?;
            let (k, branch) = terminal_class(m)?;
            (poset.inf, k, branch)
        };
        match format {
            Format::Text => {
                if let Some(e) = entry {
                    print!("{}: ", e.label);
                }
                match &gt {
                    GroupType::Finite(types) => {
                        let names: Vec<String> = types.iter().map(|t| t.to_string()).collect();
                        println!("finite ({})", names.join(" x "));
                    }
                    _ => println!(
                        "{} | Inf = {inf}, k = {k}, branch = {}",
                        gt.name(),
                        branch.map(|b| b.to_string()).unwrap_or_else(|| "-".into())
                    ),
                }
            }
            _ => {
                let v = serde_json::json!({
                    "label": entry.as_ref().map(|e| e.label.clone()),
                    "type": gt.name(),
                    "components": components,
                    "inf": inf,
                    "k": k,
                    "branch": branch,
                });
                println!("{}", serde_json::to_string_pretty(&v)?);
            }
        }
    }
    Ok(true)
}

fn cmd_catalog(action: CatalogAction) -> Result<bool> {
    match action {
        CatalogAction::List => {
            let mut entries = catalog::load_catalog()?;
            entries.sort_by_key(|e| label_sort_key(&e.label));
            for e in entries {
                let (dr, ds) = e.complete_degrees();
                println!(
                    "{:8} rank {} | complete {} over a degree-{} denominator, degrees ({dr}, {ds})",
                    e.label,
                    e.matrix.rank(),
                    e.expected.complete_num,
                    ds,
                );
            }
            Ok(true)
        }
        CatalogAction::Dump { label } => {
            let e = catalog::lookup(&label)?;
            println!("label: {}", e.label);
            print!("{}", e.matrix.to_text());
            println!("complete numerator:   {}", e.expected.complete_num);
            println!("complete denominator: {}", e.expected.complete_den);
            if let (Some(n), Some(d)) = (&e.expected.reduced_num, &e.expected.reduced_den) {
                println!("reduced numerator:    {n}");
                println!("reduced denominator:  {d}");
            }
            if let Some(chi) = &e.expected.chi {
                println!("printed chi: {chi}");
            }
            if let Some(inf) = e.expected.inf {
                println!("printed Inf: {inf}");
            }
            if let Some(p) = &e.expected.poles {
                println!(
                    "printed poles: real {:?}, m {:?}, M {:?}",
                    p.real, p.min_modulus, p.max_modulus
                );
            }
            for n in &e.expected.notes {
                println!("note: {n}");
            }
            Ok(true)
        }
    }
}
