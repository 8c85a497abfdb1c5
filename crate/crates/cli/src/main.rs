//! Command-line frontend: construction, certification, invariants,
//! isomorphism testing, automorphism groups, and the standalone oracles.
//!
//! Exit codes: 0 for success (or a property that holds), 1 for a
//! definitive negative answer (non-isomorphic graphs, failed
//! certification), 2 for usage or input errors.
//!
//! Graph-consuming commands read from a file argument or, when none is
//! given, from standard input with format autodetection: graph6 when the
//! first non-whitespace byte is the optional header `>` or in the graph6
//! code range, adjacency list otherwise.

use clap::{Parser, Subcommand, ValueEnum};
use geocert::aut::automorphism_group;
use geocert::certify::{
    build_family, cayley_survey, certify_built_family, negative_controls, paley_common_neighbors,
    CertReport, Family, SUPPORTED_PRIMES,
};
use geocert::field::is_prime;
use geocert::formats::{from_adjlist, from_graph6, to_adjlist, to_dot, to_graph6};
use geocert::graph::{paley_graph, Graph};
use geocert::transitivity::{
    certify_level_with_group, intersection_parameters, TransitivityLevel,
};
use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "geocert",
    version,
    about = "Builds and certifies the prime-valency 2-geodesic-transitive graph family"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Graph6,
    Adjlist,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family member for a prime p = 1 (mod 4)
    Construct {
        #[arg(long)]
        p: u64,
        /// Exponent selecting the member; defaults to the first valid one
        #[arg(long)]
        i: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Graph6)]
        format: Format,
        /// Write the graph here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the clause-by-clause certification for one prime or all
    Certify {
        #[arg(long, conflicts_with = "all")]
        p: Option<u64>,
        /// Certify every supported prime, concurrently
        #[arg(long)]
        all: bool,
        /// Emit the structured report instead of the table
        #[arg(long)]
        json: bool,
        /// Allow primes outside the supported list
        #[arg(long)]
        force: bool,
        /// Write the report here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the Paley graph P(p)
    Paley {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = Format::Graph6)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print order, degree, girth, diameter, local parameters, and the
    /// transitivity ladder of a graph
    Invariants {
        /// Graph file; standard input when omitted
        input: Option<PathBuf>,
    },
    /// Test two graphs for isomorphism; prints a bijection on success
    Iso { a: PathBuf, b: PathBuf },
    /// Print automorphism group generators and order
    Aut {
        /// Graph file; standard input when omitted
        input: Option<PathBuf>,
        /// Print image arrays instead of cycle notation
        #[arg(long)]
        images: bool,
    },
    /// Run a standalone oracle
    Oracle {
        #[arg(value_enum)]
        name: OracleName,
        #[arg(long)]
        p: Option<u64>,
        /// Emit the structured report instead of text
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleName {
    /// Exhaustive survey of half-size Cayley graphs of Z_p
    Survey,
    /// Common-neighbor counts of the Paley graph
    CommonNeighbors,
    /// Negative controls on graphs outside the family
    Controls,
}

fn main() -> ExitCode {
    // Die quietly when a downstream pipe closes instead of panicking on
    // the failed write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Construct { p, i, format, out } => construct(p, i, format, &out),
        Command::Certify {
            p,
            all,
            json,
            force,
            out,
        } => certify(p, all, json, force, &out),
        Command::Paley { p, format, out } => {
            let graph = paley_graph(p).map_err(|e| e.to_string())?;
            let summary = summarize(&graph);
            emit(&render(&graph, format), &summary, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Invariants { input } => invariants(&input),
        Command::Iso { a, b } => iso(&a, &b),
        Command::Aut { input, images } => aut(&input, images),
        Command::Oracle { name, p, json } => oracle(name, p, json),
    }
}

fn check_congruence(p: u64) -> Result<(), String> {
    if !is_prime(p) {
        return Err(format!("p must be prime; got {p}"));
    }
    if p % 4 != 1 {
        return Err(format!("p must satisfy p \u{2261} 1 (mod 4); got {p}"));
    }
    Ok(())
}

fn family_for(p: u64) -> Result<Family, String> {
    check_congruence(p)?;
    build_family(p).map_err(|e| e.to_string())
}

fn construct(
    p: u64,
    i: Option<u64>,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<ExitCode, String> {
    let family = family_for(p)?;
    let index = match i {
        None => 0,
        Some(want) => family
            .exponents
            .iter()
            .position(|&e| e == want)
            .ok_or_else(|| {
                format!(
                    "no member with i = {want}; valid i: {}",
                    join(&family.exponents)
                )
            })?,
    };
    let graph = &family.graphs[index];
    let summary = format!(
        "{} i={} (valid i: {})",
        summarize(graph),
        family.exponents[index],
        join(&family.exponents)
    );
    emit(&render(graph, format), &summary, out)?;
    Ok(ExitCode::SUCCESS)
}

fn summarize(graph: &Graph) -> String {
    let degree = match graph.is_regular() {
        Some(k) => k.to_string(),
        None => "irregular".to_string(),
    };
    let girth = graph
        .girth()
        .map_or("-".to_string(), |g| g.to_string());
    let diam = graph
        .diameter()
        .map_or("-".to_string(), |d| d.to_string());
    format!(
        "n={} k={degree} girth={girth} diam={diam}",
        graph.num_vertices()
    )
}

fn join(values: &[u64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn render(graph: &Graph, format: Format) -> String {
    match format {
        Format::Graph6 => format!("{}\n", to_graph6(graph)),
        Format::Adjlist => to_adjlist(graph),
        Format::Dot => to_dot(graph),
    }
}

/// Writes data to the output file and the summary to standard output, or
/// data to standard output and the summary to standard error.
fn emit(data: &str, summary: &str, out: &Option<PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => {
            fs::write(path, data).map_err(|e| format!("{}: {e}", path.display()))?;
            println!("{summary}");
        }
        None => {
            print!("{data}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn certify(
    p: Option<u64>,
    all: bool,
    json: bool,
    force: bool,
    out: &Option<PathBuf>,
) -> Result<ExitCode, String> {
    let primes: Vec<u64> = if all {
        SUPPORTED_PRIMES.to_vec()
    } else {
        let p = p.ok_or("pass --p <prime> or --all")?;
        check_congruence(p)?;
        if !SUPPORTED_PRIMES.contains(&p) && !force {
            return Err(format!(
                "p = {p} is outside the supported list ({}); pass --force to run anyway",
                join(&SUPPORTED_PRIMES)
            ));
        }
        vec![p]
    };

    let reports = run_reports(&primes)?;
    let body = if json {
        if reports.len() == 1 {
            serde_json::to_string_pretty(&reports[0])
        } else {
            serde_json::to_string_pretty(&reports)
        }
        .map_err(|e| e.to_string())?
            + "\n"
    } else {
        let mut text = String::new();
        for r in &reports {
            text.push_str(&r.to_string());
            text.push('\n');
        }
        text
    };
    let verdicts: Vec<String> = reports
        .iter()
        .map(|r| {
            format!(
                "p={}: {}",
                r.p,
                if r.overall { "PASS" } else { "FAIL" }
            )
        })
        .collect();
    emit(&body, &verdicts.join("  "), out)?;
    if reports.iter().all(|r| r.overall) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

/// Certifies the primes concurrently and returns the reports in the
/// order the primes were given.
fn run_reports(primes: &[u64]) -> Result<Vec<CertReport>, String> {
    let families: Vec<Family> = primes
        .iter()
        .map(|&p| family_for(p))
        .collect::<Result<_, _>>()?;
    let mut slots: Vec<Option<Result<CertReport, String>>> = Vec::new();
    slots.resize_with(families.len(), || None);
    std::thread::scope(|scope| {
        for (slot, family) in slots.iter_mut().zip(&families) {
            scope.spawn(move || {
                *slot = Some(certify_built_family(family).map_err(|e| e.to_string()));
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.expect("every slot filled"))
        .collect()
}

fn read_graph(input: &Option<PathBuf>) -> Result<Graph, String> {
    let text = match input {
        Some(path) => {
            fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => {
            let mut buffer = String::new();
            std::io::stdin()
                .read_to_string(&mut buffer)
                .map_err(|e| e.to_string())?;
            buffer
        }
    };
    parse_graph(&text)
}

fn parse_graph(text: &str) -> Result<Graph, String> {
    let first = text
        .trim_start()
        .bytes()
        .next()
        .ok_or("empty graph input")?;
    if first == b'>' || first >= 63 {
        from_graph6(text.trim_end()).map_err(|e| format!("graph6: {e}"))
    } else {
        from_adjlist(text).map_err(|e| format!("adjlist: {e}"))
    }
}

fn invariants(input: &Option<PathBuf>) -> Result<ExitCode, String> {
    let graph = read_graph(input)?;
    println!("n: {}", graph.num_vertices());
    match graph.is_regular() {
        Some(k) => println!("valency: {k}"),
        None => {
            let degrees: Vec<usize> = (0..graph.num_vertices())
                .map(|v| graph.degree(v))
                .collect();
            println!(
                "degree range: {}..{}",
                degrees.iter().min().unwrap(),
                degrees.iter().max().unwrap()
            );
        }
    }
    match graph.girth() {
        Some(g) => println!("girth: {g}"),
        None => println!("girth: none (forest)"),
    }
    match graph.diameter() {
        Ok(d) => println!("diameter: {d}"),
        Err(_) => println!("diameter: infinite (disconnected)"),
    }
    println!("bipartite: {}", yes_no(graph.is_bipartite()));
    match intersection_parameters(&graph) {
        Ok(params) => {
            println!("lambda: {}", params.lambda);
            println!("mu: {}", params.mu);
            println!("k2: {}", params.k2);
            println!("k3: {}", params.k3);
            println!("tau: {}", params.tau);
        }
        Err(e) => println!("local parameters: not available ({e})"),
    }
    match automorphism_group(&graph) {
        Ok(aut) => {
            println!("aut order: {}", aut.order());
            let ladder = [
                ("vertex-transitive", TransitivityLevel::Vertex),
                ("arc-transitive", TransitivityLevel::Arc),
                ("2-arc-transitive", TransitivityLevel::TwoArc),
                ("2-geodesic-transitive", TransitivityLevel::TwoGeodesic),
                ("distance-transitive", TransitivityLevel::Distance),
            ];
            for (label, level) in ladder {
                match certify_level_with_group(&graph, &aut, level) {
                    Ok(cert) => println!("{label}: {}", yes_no(cert.holds)),
                    Err(e) => println!("{label}: not applicable ({e})"),
                }
            }
        }
        Err(e) => println!("transitivity ladder: not available ({e})"),
    }
    Ok(ExitCode::SUCCESS)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn iso(a: &PathBuf, b: &PathBuf) -> Result<ExitCode, String> {
    let left = read_graph(&Some(a.clone()))?;
    let right = read_graph(&Some(b.clone()))?;
    match geocert::aut::are_isomorphic(&left, &right).map_err(|e| e.to_string())? {
        Some(phi) => {
            for u in 0..left.num_vertices() {
                println!("{u} -> {}", phi.apply(u));
            }
            eprintln!("isomorphic");
            Ok(ExitCode::SUCCESS)
        }
        None => {
            eprintln!("not isomorphic");
            Ok(ExitCode::from(1))
        }
    }
}

fn aut(input: &Option<PathBuf>, images: bool) -> Result<ExitCode, String> {
    let graph = read_graph(input)?;
    let group = automorphism_group(&graph).map_err(|e| e.to_string())?;
    println!("order: {}", group.order());
    println!("generators: {}", group.generators().len());
    for g in group.generators() {
        if images {
            println!("{:?}", g.images());
        } else {
            println!("{g}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn oracle(name: OracleName, p: Option<u64>, json: bool) -> Result<ExitCode, String> {
    let need_p = || p.ok_or("this oracle needs --p <prime>");
    match name {
        OracleName::Survey => {
            let report = cayley_survey(need_p()?).map_err(|e| e.to_string())?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?
                );
            } else {
                println!(
                    "p={} candidates={} (expected {}) arc-transitive={} all-Paley={} aut-orders-ok={}",
                    report.p,
                    report.candidates,
                    report.expected_candidates,
                    report.arc_transitive,
                    yes_no(report.all_match_paley),
                    yes_no(report.aut_orders_ok)
                );
            }
            verdict(report.pass)
        }
        OracleName::CommonNeighbors => {
            let report = paley_common_neighbors(need_p()?).map_err(|e| e.to_string())?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?
                );
            } else {
                println!(
                    "p={} adjacent={} nonadjacent={} pairs={}",
                    report.p, report.adjacent_value, report.nonadjacent_value, report.pairs_checked
                );
            }
            verdict(report.pass)
        }
        OracleName::Controls => {
            let report = negative_controls().map_err(|e| e.to_string())?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?
                );
            } else {
                println!(
                    "petersen: 2-arc={} 2-geodesic={} aut={}",
                    yes_no(report.petersen_two_arc),
                    yes_no(report.petersen_two_geodesic),
                    report.petersen_aut_order
                );
                println!("complete graph rejected: {}", yes_no(report.complete_rejected));
                println!(
                    "paley 13: arc={} 2-geodesic={} aut={}",
                    yes_no(report.paley13_arc),
                    yes_no(report.paley13_two_geodesic),
                    report.paley13_aut_order
                );
                println!(
                    "doubled K6: bipartite={} other-cover-legs={} in-family={}",
                    yes_no(report.doubled_k6_bipartite),
                    yes_no(report.doubled_k6_cover_legs),
                    yes_no(report.doubled_k6_in_family)
                );
            }
            verdict(report.pass)
        }
    }
}

fn verdict(pass: bool) -> Result<ExitCode, String> {
    if pass {
        println!("verdict: PASS");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("verdict: FAIL");
        Ok(ExitCode::from(1))
    }
}
