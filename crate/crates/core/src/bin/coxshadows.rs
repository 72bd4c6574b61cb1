//! Command-line front end.
//!
//! Exit codes follow a CI-friendly protocol: 0 success, 2 usage or
//! unsupported input, 3 a cap was exceeded or the outcome is inconclusive,
//! 4 a verified property actually failed.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use coxeter_shadows::automata::{brink_howlett, minimize, BhAutomaton, Dfa};
use coxeter_shadows::cache::Cache;
use coxeter_shadows::conetype::gates;
use coxeter_shadows::enumerate::Ball;
use coxeter_shadows::group::CoxeterGroup;
use coxeter_shadows::render::{render, RenderMode};
use coxeter_shadows::roots::SmallRoots;
use coxeter_shadows::shi::{enumerate_m, signature};
use coxeter_shadows::system::CoxeterSystem;
use coxeter_shadows::verify::{run_suite, SuiteConfig, SUITE_NAMES};

#[derive(Parser)]
#[command(
    name = "coxshadows",
    version,
    about = "Small roots, Shi parts, cone types and reduced-word automata for Coxeter groups"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Directory for cached artifacts (automata, root lists).
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
    /// Cap on small roots and automaton states.
    #[arg(long, global = true, default_value_t = 100_000, value_name = "N")]
    max_states: usize,
    /// Cap on ball sizes (elements per ball).
    #[arg(long, global = true, default_value_t = 1 << 22, value_name = "N")]
    max_ball: usize,
    /// Worker threads for verification sweeps (0 = one per core).
    #[arg(long, global = true, default_value_t = 0, value_name = "N")]
    jobs: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Summarize a system: rank, bonds, field data, |Σ| when cached.
    Info {
        #[arg(long)]
        system: String,
    },
    /// Enumerate the small roots Σ with exact coordinates.
    Roots {
        #[arg(long)]
        system: String,
        /// Output file; stdout summary only when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Build the reduced-word automaton and export it.
    Automaton {
        #[arg(long)]
        system: String,
        #[arg(long, value_enum, default_value_t = Kind::Bh)]
        kind: Kind,
        /// Write a DOT rendering here.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write the JSON serialization here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Shi parts: signature, smallest element, and size within a ball.
    Shi {
        #[arg(long)]
        system: String,
        /// Ball radius used for part sizes.
        #[arg(long)]
        ball: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Cone-type parts: automaton states, gate words, sizes within a ball.
    Cones {
        #[arg(long)]
        system: String,
        #[arg(long)]
        ball: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the minimal automaton as DOT with gate-word state labels.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Reduced-word counts by length, from the automaton.
    Growth {
        #[arg(long)]
        system: String,
        /// Longest length to count.
        #[arg(long)]
        ball: u32,
        /// Output CSV file; printed to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and report each check.
    Verify {
        #[arg(long)]
        system: String,
        #[arg(long, default_value_t = 8)]
        radius: u32,
        /// One of: automata, shi, shadow, cone, bipodality, all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Draw the alcove picture of an affine rank-3 system as SVG.
    Render {
        #[arg(long)]
        system: String,
        #[arg(long, default_value_t = 8)]
        ball: u32,
        #[arg(long, value_enum, default_value_t = Coloring::Shi)]
        coloring: Coloring,
        #[arg(long)]
        out: PathBuf,
    },
    /// Dump ball elements as JSON: word, length, inversion roots.
    Export {
        #[arg(long)]
        system: String,
        #[arg(long)]
        ball: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    /// The Brink–Howlett automaton (states = small-root subsets).
    Bh,
    /// Its minimization (states = cone types).
    Minimal,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Coloring {
    Shi,
    Cone,
}

/// Everything that ends a run without a normal report.
enum Failure {
    /// Bad input or unsupported request → exit 2.
    Usage(String),
    /// A configured cap was exceeded → exit 3.
    Capped(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        // Affects the parallel verification sweeps only.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    match run(&cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Capped(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    let cache = Cache::new(cli.cache_dir.as_deref());
    match &cli.cmd {
        Cmd::Info { system } => cmd_info(system, &cache),
        Cmd::Roots { system, out, format } => cmd_roots(system, out.as_deref(), *format, cli, &cache),
        Cmd::Automaton { system, kind, dot, json } => {
            cmd_automaton(system, *kind, dot.as_deref(), json.as_deref(), cli, &cache)
        }
        Cmd::Shi { system, ball, out, format } => cmd_shi(system, *ball, out.as_deref(), *format, cli),
        Cmd::Cones { system, ball, out, format, dot } => {
            cmd_cones(system, *ball, out.as_deref(), *format, dot.as_deref(), cli)
        }
        Cmd::Growth { system, ball, out } => cmd_growth(system, *ball, out.as_deref(), cli, &cache),
        Cmd::Verify { system, radius, suite, report } => {
            cmd_verify(system, *radius, suite, report.as_deref(), cli)
        }
        Cmd::Render { system, ball, coloring, out } => cmd_render(system, *ball, *coloring, out, cli),
        Cmd::Export { system, ball, out } => cmd_export(system, *ball, out.as_deref(), cli),
    }
}

fn load_group(text: &str) -> Result<CoxeterGroup, Failure> {
    let sys = CoxeterSystem::parse(text).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(CoxeterGroup::new(sys))
}

fn checked_ball<'w>(w: &'w CoxeterGroup, radius: u32, cli: &Cli) -> Result<Ball<'w>, Failure> {
    let ball = Ball::new(w, radius);
    if ball.len() > cli.max_ball {
        return Err(Failure::Capped(format!(
            "ball({radius}) has {} elements, over the cap {} (raise --max-ball)",
            ball.len(),
            cli.max_ball
        )));
    }
    Ok(ball)
}

fn small_roots(w: &CoxeterGroup, cli: &Cli) -> Result<SmallRoots, Failure> {
    SmallRoots::compute(w, cli.max_states).map_err(Failure::Capped)
}

fn bh_automaton(w: &CoxeterGroup, sr: &SmallRoots, cli: &Cli) -> Result<BhAutomaton, Failure> {
    brink_howlett(sr, w.rank(), cli.max_states).map_err(Failure::Capped)
}

fn write_out(path: &std::path::Path, payload: &str) -> Result<(), Failure> {
    fs::write(path, payload)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn gen_names(w: &CoxeterGroup) -> Vec<String> {
    (0..w.rank()).map(|s| w.system().generator_label(s)).collect()
}

fn cmd_info(system: &str, cache: &Cache) -> Result<ExitCode, Failure> {
    let w = load_group(system)?;
    let sys = w.system();
    let key = sys.to_string();
    println!("system: {key}");
    println!("rank: {}", sys.rank());
    let mut bonds: Vec<String> = Vec::new();
    for i in 0..sys.rank() {
        for j in (i + 1)..sys.rank() {
            bonds.push(format!(
                "m({}, {}) = {}",
                sys.generator_label(i),
                sys.generator_label(j),
                sys.bond(i, j)
            ));
        }
    }
    if bonds.is_empty() {
        println!("bonds: none (rank 1)");
    } else {
        println!("bonds: {}", bonds.join(", "));
    }
    let f = w.field();
    println!("field: Q(2cos(pi/{})), degree {}", f.n(), f.degree());
    match cache
        .load(&key, "roots")
        .and_then(|text| serde_json::from_str::<serde_json::Value>(&text).ok())
        .and_then(|v| v.get("count").and_then(|c| c.as_u64()))
    {
        Some(count) => println!("small roots: {count} (cached)"),
        None => println!("small roots: not cached (run `coxshadows roots`)"),
    }
    Ok(ExitCode::SUCCESS)
}

fn roots_json(w: &CoxeterGroup, sr: &SmallRoots) -> String {
    let roots: Vec<serde_json::Value> = (0..sr.len() as u32)
        .map(|a| {
            let coords: Vec<String> = sr.root(a).iter().map(|x| x.to_string()).collect();
            serde_json::json!({ "index": a, "depth": sr.depth_of(a), "coords": coords })
        })
        .collect();
    let doc = serde_json::json!({
        "system": w.system().to_string(),
        "count": sr.len(),
        "roots": roots,
    });
    serde_json::to_string_pretty(&doc).expect("roots serialization")
}

fn cmd_roots(
    system: &str,
    out: Option<&std::path::Path>,
    format: Format,
    cli: &Cli,
    cache: &Cache,
) -> Result<ExitCode, Failure> {
    let w = load_group(system)?;
    let sr = small_roots(&w, cli)?;
    let json = roots_json(&w, &sr);
    cache.store(&w.system().to_string(), "roots", &json);
    let payload = match format {
        Format::Json => json,
        Format::Csv => {
            let mut csv = String::from("index,depth,coords\n");
            for a in 0..sr.len() as u32 {
                let coords: Vec<String> = sr.root(a).iter().map(|x| x.to_string()).collect();
                csv.push_str(&format!("{a},{},\"{}\"\n", sr.depth_of(a), coords.join("|")));
            }
            csv
        }
    };
    if let Some(path) = out {
        write_out(path, &payload)?;
    }
    let by_depth = {
        let mut counts: Vec<usize> = Vec::new();
        for a in 0..sr.len() as u32 {
            let d = sr.depth_of(a) as usize;
            if counts.len() <= d {
                counts.resize(d + 1, 0);
            }
            counts[d] += 1;
        }
        counts
            .iter()
            .enumerate()
            .skip(1)
            .map(|(d, c)| format!("depth {d}: {c}"))
            .collect::<Vec<_>>()
            .join(", ")
    };
    println!("{} small roots ({by_depth})", sr.len());
    Ok(ExitCode::SUCCESS)
}

fn cmd_automaton(
    system: &str,
    kind: Kind,
    dot: Option<&std::path::Path>,
    json: Option<&std::path::Path>,
    cli: &Cli,
    cache: &Cache,
) -> Result<ExitCode, Failure> {
    let w = load_group(system)?;
    let key = w.system().to_string();
    let cache_kind = match kind {
        Kind::Bh => "bh-dfa",
        Kind::Minimal => "minimal-dfa",
    };
    let (dfa, origin) = match cache.load(&key, cache_kind).and_then(|t| Dfa::from_json(&t).ok()) {
        Some(dfa) => (dfa, "cached"),
        None => {
            let sr = small_roots(&w, cli)?;
            let bh = bh_automaton(&w, &sr, cli)?;
            let dfa = match kind {
                Kind::Bh => bh.dfa,
                Kind::Minimal => minimize(&bh.dfa).0,
            };
            cache.store(&key, cache_kind, &dfa.to_json());
            (dfa, "built")
        }
    };
    if let Some(path) = json {
        write_out(path, &dfa.to_json())?;
    }
    if let Some(path) = dot {
        write_out(path, &dfa.to_dot(&gen_names(&w)))?;
    }
    let kind_name = match kind {
        Kind::Bh => "Brink-Howlett",
        Kind::Minimal => "minimal",
    };
    println!("{kind_name} automaton for {key}: {} states ({origin})", dfa.num_states());
    Ok(ExitCode::SUCCESS)
}

fn cmd_shi(
    system: &str,
    ball_radius: u32,
    out: Option<&std::path::Path>,
    format: Format,
    cli: &Cli,
) -> Result<ExitCode, Failure> {
    let w = load_group(system)?;
    let ball = checked_ball(&w, ball_radius, cli)?;
    let sr = small_roots(&w, cli)?;
    let bh = bh_automaton(&w, &sr, cli)?;

    let mut sizes: std::collections::HashMap<Vec<u32>, usize> = std::collections::HashMap::new();
    for id in 0..ball.len() as u32 {
        *sizes.entry(signature(&w, &sr, ball.elt(id))).or_insert(0) += 1;
    }
    let mut parts: Vec<(u32, String, Vec<u32>, usize)> = enumerate_m(&w, &bh)
        .iter()
        .map(|m| {
            let sig = signature(&w, &sr, m);
            let size = sizes.get(&sig).copied().unwrap_or(0);
            (m.len(), w.word_string(m), sig, size)
        })
        .collect();
    parts.sort();

    let payload = match format {
        Format::Json => {
            let items: Vec<serde_json::Value> = parts
                .iter()
                .map(|(len, word, sig, size)| {
                    serde_json::json!({ "min": word, "length": len, "signature": sig, "size": size })
                })
                .collect();
            let doc = serde_json::json!({
                "system": w.system().to_string(),
                "ball": ball_radius,
                "part_count": parts.len(),
                "parts": items,
            });
            serde_json::to_string_pretty(&doc).expect("parts serialization")
        }
        Format::Csv => {
            let mut csv = String::from("min,length,size,signature\n");
            for (len, word, sig, size) in &parts {
                let sig_str: Vec<String> = sig.iter().map(u32::to_string).collect();
                csv.push_str(&format!("{word},{len},{size},\"{}\"\n", sig_str.join("|")));
            }
            csv
        }
    };
    if let Some(path) = out {
        write_out(path, &payload)?;
    }
    let unseen = parts.iter().filter(|(.., size)| *size == 0).count();
    println!(
        "{} Shi parts ({} smallest elements); {} without members in ball({ball_radius})",
        parts.len(),
        parts.len(),
        unseen
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_cones(
    system: &str,
    ball_radius: u32,
    out: Option<&std::path::Path>,
    format: Format,
    dot: Option<&std::path::Path>,
    cli: &Cli,
) -> Result<ExitCode, Failure> {
    let w = load_group(system)?;
    let ball = checked_ball(&w, ball_radius, cli)?;
    let sr = small_roots(&w, cli)?;
    let bh = bh_automaton(&w, &sr, cli)?;
    let (min_dfa, _) = minimize(&bh.dfa);
    let gate_elts = gates(&w, &min_dfa);

    let mut sizes = vec![0usize; min_dfa.num_states()];
    for id in 0..ball.len() as u32 {
        let q = coxeter_shadows::conetype::cone_state(&w, &min_dfa, ball.elt(id));
        sizes[q as usize] += 1;
    }

    let payload = match format {
        Format::Json => {
            let items: Vec<serde_json::Value> = gate_elts
                .iter()
                .enumerate()
                .map(|(q, g)| {
                    serde_json::json!({
                        "state": q,
                        "gate": w.word_string(g),
                        "length": g.len(),
                        "size": sizes[q],
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "system": w.system().to_string(),
                "ball": ball_radius,
                "state_count": min_dfa.num_states(),
                "parts": items,
            });
            serde_json::to_string_pretty(&doc).expect("cones serialization")
        }
        Format::Csv => {
            let mut csv = String::from("state,gate,length,size\n");
            for (q, g) in gate_elts.iter().enumerate() {
                csv.push_str(&format!("{q},{},{},{}\n", w.word_string(g), g.len(), sizes[q]));
            }
            csv
        }
    };
    if let Some(path) = out {
        write_out(path, &payload)?;
    }
    if let Some(path) = dot {
        let mut labeled = min_dfa.clone();
        labeled.labels = gate_elts.iter().map(|g| w.word_string(g)).collect();
        write_out(path, &labeled.to_dot(&gen_names(&w)))?;
    }
    println!(
        "{} cone types; gates up to length {}",
        min_dfa.num_states(),
        gate_elts.iter().map(|g| g.len()).max().unwrap_or(0)
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_growth(
    system: &str,
    max_len: u32,
    out: Option<&std::path::Path>,
    cli: &Cli,
    cache: &Cache,
) -> Result<ExitCode, Failure> {
    let w = load_group(system)?;
    let key = w.system().to_string();
    let dfa = match cache.load(&key, "bh-dfa").and_then(|t| Dfa::from_json(&t).ok()) {
        Some(dfa) => dfa,
        None => {
            let sr = small_roots(&w, cli)?;
            let bh = bh_automaton(&w, &sr, cli)?;
            cache.store(&key, "bh-dfa", &bh.dfa.to_json());
            bh.dfa
        }
    };
    let counts = dfa.word_growth(max_len as usize);
    let mut csv = String::from("length,count\n");
    for (n, c) in counts.iter().enumerate() {
        csv.push_str(&format!("{n},{c}\n"));
    }
    if let Some(path) = out {
        write_out(path, &csv)?;
    }
    let series: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
    println!("reduced words by length: {}", series.join(", "));
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    system: &str,
    radius: u32,
    suite: &str,
    report_path: Option<&std::path::Path>,
    cli: &Cli,
) -> Result<ExitCode, Failure> {
    if !SUITE_NAMES.contains(&suite) {
        return Err(Failure::Usage(format!(
            "unknown suite `{suite}`; expected one of {}",
            SUITE_NAMES.join(", ")
        )));
    }
    let w = load_group(system)?;
    let cfg = SuiteConfig { radius, max_states: cli.max_states, max_ball: cli.max_ball };
    let report = run_suite(&w, suite, &cfg).map_err(Failure::Capped)?;
    print!("{}", report.render_text());
    if let Some(path) = report_path {
        write_out(path, &report.to_json())?;
    }
    if report.any_failed() {
        return Ok(ExitCode::from(4));
    }
    if report.any_inconclusive() {
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_render(
    system: &str,
    ball_radius: u32,
    coloring: Coloring,
    out: &std::path::Path,
    cli: &Cli,
) -> Result<ExitCode, Failure> {
    let w = load_group(system)?;
    let ball = checked_ball(&w, ball_radius, cli)?;
    let sr = small_roots(&w, cli)?;
    let bh = bh_automaton(&w, &sr, cli)?;
    let (min_dfa, _) = minimize(&bh.dfa);
    let mode = match coloring {
        Coloring::Shi => RenderMode::Shi,
        Coloring::Cone => RenderMode::Cones,
    };
    let picture = render(&ball, &sr, &min_dfa, mode)
        .map_err(|e| Failure::Usage(format!("{e}; use `automaton --dot` for a diagram instead")))?;
    write_out(out, &picture.svg)?;
    println!(
        "rendered {} alcoves in {} parts to {}",
        ball.len(),
        picture.classes,
        out.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_export(
    system: &str,
    ball_radius: u32,
    out: Option<&std::path::Path>,
    cli: &Cli,
) -> Result<ExitCode, Failure> {
    let w = load_group(system)?;
    let ball = checked_ball(&w, ball_radius, cli)?;
    let elements: Vec<serde_json::Value> = (0..ball.len() as u32)
        .map(|id| {
            let g = ball.elt(id);
            let inversions: Vec<Vec<String>> = ball
                .inversion_ids(id)
                .iter()
                .map(|&wid| ball.wall_root(wid).iter().map(|x| x.to_string()).collect())
                .collect();
            serde_json::json!({
                "word": w.word_string(g),
                "length": g.len(),
                "inversions": inversions,
            })
        })
        .collect();
    let doc = serde_json::json!({
        "system": w.system().to_string(),
        "ball": ball_radius,
        "count": elements.len(),
        "elements": elements,
    });
    let payload = serde_json::to_string_pretty(&doc).expect("export serialization");
    if let Some(path) = out {
        write_out(path, &payload)?;
    } else {
        println!("{payload}");
        return Ok(ExitCode::SUCCESS);
    }
    println!("exported {} elements of ball({ball_radius})", ball.len());
    Ok(ExitCode::SUCCESS)
}
