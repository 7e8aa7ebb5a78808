use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use thresholdlab::bipartite::check_bipartite_threshold;
use thresholdlab::counting::{
    bipartite_unlabeled_count, shared_table, t_asymptotic, t_labeled, unlabeled_count,
};
use thresholdlab::graph::{encode, CreationCode};
use thresholdlab::io::{self as gio, GraphFile};
use thresholdlab::montecarlo::{montecarlo, Statistic};
use thresholdlab::rng::RngState;
use thresholdlab::samplers::{sample, sample_degrees, Sample};
use thresholdlab::spectrum::{ferrers_check, laplacian_spectrum, verify_eigenpairs};
use thresholdlab::validation::{checks, run_check, Scale};

mod model;

/// Command-line misuse; exits with status 2.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

#[derive(Parser)]
#[command(name = "thresholdlab", version, about = "Random threshold graphs: sampling, counting, recognition, limits and spectra")]
struct Cli {
    /// Monte Carlo worker threads (default: THRESHOLDLAB_THREADS, else all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct Common {
    /// 64-bit seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Same as --format json.
    #[arg(long, conflicts_with = "format")]
    json: bool,
    /// Output file; `-` or absent for stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ModelArgs {
    /// Model, e.g. uniform-labeled or attachment:p=0.3 (see `sample --help`).
    #[arg(long)]
    model: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    n1: Option<usize>,
    #[arg(long)]
    n2: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    #[value(alias = "edges")]
    Graph,
    Code,
    Degrees,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpectrumFormat {
    List,
    Hist,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Draw random graphs from a model.
    #[command(after_help = model::MODEL_HELP)]
    Sample {
        #[command(flatten)]
        model: ModelArgs,
        /// Number of graphs; draw i uses the i-th stream derived from --seed.
        #[arg(long, visible_alias = "reps", default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        /// Representation [default: graph]; `--out graph|edges|code|degrees` also selects it.
        #[arg(long, value_enum)]
        emit: Option<Emit>,
        #[command(flatten)]
        common: Common,
    },
    /// Exact counts of threshold graphs.
    Count {
        /// t(n), labeled threshold graphs on n vertices.
        #[arg(long, group = "what")]
        t_labeled: Option<usize>,
        /// Unlabeled threshold graphs on n vertices.
        #[arg(long, group = "what")]
        unlabeled: Option<usize>,
        /// t(n, j): labeled graphs on n vertices with j isolated vertices (needs --j).
        #[arg(long, group = "what", requires = "j")]
        isolated: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
        /// Unlabeled bipartite threshold graphs with parts N1 N2.
        #[arg(long, group = "what", num_args = 2, value_names = ["N1", "N2"])]
        bipartite: Option<Vec<usize>>,
        /// t(n)/n! against its leading asymptotic term and error bound.
        #[arg(long, group = "what")]
        asymptotic: Option<usize>,
        /// List every value from 1 (or 2) up to the given n.
        #[arg(long)]
        range: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Decide whether a graph is threshold; exit 1 with a witness if not.
    Recognize {
        /// Graph file (`-` for stdin).
        #[arg(long = "in", default_value = "-")]
        input: String,
        #[command(flatten)]
        common: Common,
    },
    /// Creation code and peeling order of a threshold graph.
    Encode {
        #[arg(long = "in", default_value = "-")]
        input: String,
        #[command(flatten)]
        common: Common,
    },
    /// Graph of a creation code.
    Decode {
        /// Code α₂…α_n as a bit string.
        #[arg(long, conflicts_with = "input")]
        code: Option<String>,
        #[arg(long = "in")]
        input: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Monte Carlo statistics over a model.
    #[command(after_help = model::MODEL_HELP)]
    Stats {
        #[command(flatten)]
        model: ModelArgs,
        /// degree-hist, N0, ks-uniform or induced.
        #[arg(long, default_value = "degree-hist")]
        statistic: String,
        #[arg(long, default_value_t = 1000)]
        reps: usize,
        /// CSV with one row per replicate instead of the summary.
        #[arg(long)]
        per_replicate: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Limit of the degree distribution and its increasing set.
    #[command(after_help = model::MODEL_HELP)]
    Limit {
        #[command(flatten)]
        model: ModelArgs,
        /// Emit the boundary of the increasing set instead of the CDF.
        #[arg(long)]
        boundary: bool,
        /// Tabulate the CDF on the grid i/K, i = 0..K, instead of at its breakpoints.
        #[arg(long, value_name = "K", value_parser = clap::value_parser!(u64).range(1..))]
        resolution: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Laplacian spectrum of a threshold graph.
    Spectrum {
        #[arg(long = "in", default_value = "-")]
        input: String,
        #[arg(long, value_enum, default_value_t = SpectrumFormat::List)]
        format: SpectrumFormat,
        /// Verify the eigenbasis and the Ferrers duality; exit 1 on failure.
        #[arg(long)]
        check: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Acceptance checks at reduced replication.
    Selftest {
        /// Print check names without running them.
        #[arg(long)]
        list: bool,
        /// Run at full acceptance scale.
        #[arg(long)]
        full: bool,
        /// Run only checks whose name contains this string.
        #[arg(long)]
        only: Option<String>,
    },
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) if p.as_os_str() != "-" => {
            fs::write(p, text).with_context(|| format!("writing {}", p.display()))
        }
        _ => {
            let mut stdout = io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
                Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("json");
    s.push('\n');
    s
}

fn no_csv(format: Format, what: &str) -> Result<()> {
    if format == Format::Csv {
        return Err(Usage(format!("{what} has no CSV form; use text or json")).into());
    }
    Ok(())
}

fn file_of(s: Sample) -> GraphFile {
    match s {
        Sample::Code(c) => GraphFile::Code(c),
        Sample::Graph(g) => GraphFile::Graph(g),
        Sample::Bipartite(b) => GraphFile::Bipartite(b),
    }
}

fn cmd_sample(m: ModelArgs, count: u64, emit: Emit, common: Common) -> Result<String> {
    let model = model::parse(&m.model, m.n, m.n1, m.n2)?;
    let spec = &model.spec;
    if emit == Emit::Code && spec.is_bipartite() {
        return Err(Usage("creation codes describe one-part graphs; use --emit graph".into()).into());
    }
    let mut texts = Vec::new();
    let mut jsons = Vec::new();
    let mut rows = Vec::new();
    for i in 0..count {
        let mut rng = if count == 1 {
            RngState::new(common.seed)
        } else {
            RngState::for_replicate(common.seed, i)
        };
        match emit {
            Emit::Degrees if !spec.is_bipartite() => {
                let d = sample_degrees(spec, &mut rng)?;
                let cells: Vec<String> = d.iter().map(|x| x.to_string()).collect();
                texts.push(cells.join(" ") + "\n");
                rows.push(format!("{i},{}", cells.join(",")));
                jsons.push(json!({"kind": "degrees", "degrees": d}));
            }
            Emit::Degrees => {
                let Sample::Bipartite(b) = sample(spec, &mut rng)? else { unreachable!() };
                let (d1, d2) = (b.degrees1(), b.degrees2());
                let line = |d: &[usize]| d.iter().map(|x| x.to_string()).collect::<Vec<_>>();
                texts.push(format!("{}\n{}\n", line(&d1).join(" "), line(&d2).join(" ")));
                rows.push(format!("{i},{},{}", line(&d1).join(" "), line(&d2).join(" ")));
                jsons.push(json!({"kind": "degrees", "degrees1": d1, "degrees2": d2}));
            }
            Emit::Graph | Emit::Code => {
                let mut f = file_of(sample(spec, &mut rng)?);
                if emit == Emit::Code {
                    if let GraphFile::Graph(g) = &f {
                        f = GraphFile::Code(encode(g)?.code);
                    }
                } else if let GraphFile::Code(c) = &f {
                    f = GraphFile::Graph(c.decode());
                }
                texts.push(gio::to_text(&f));
                jsons.push(serde_json::from_str::<Value>(&gio::to_json(&f))?);
            }
        }
    }
    Ok(match common.format {
        Format::Text if emit == Emit::Degrees => texts.concat(),
        Format::Text => texts.join("\n"),
        Format::Json if count == 1 => json_line(&jsons[0]),
        Format::Json => json_line(&Value::Array(jsons)),
        Format::Csv if emit == Emit::Degrees => {
            let head = if spec.is_bipartite() {
                "draw,degrees1,degrees2".to_string()
            } else {
                let cols: Vec<String> = (1..=spec.order()).map(|v| format!("v{v}")).collect();
                format!("draw,{}", cols.join(","))
            };
            format!("{head}\n{}\n", rows.join("\n"))
        }
        Format::Csv => return Err(Usage("graphs have no CSV form; use --emit degrees".into()).into()),
    })
}

fn cmd_count(
    t_lab: Option<usize>,
    unl: Option<usize>,
    iso: Option<(usize, usize)>,
    bip: Option<Vec<usize>>,
    asym: Option<usize>,
    range: bool,
    common: Common,
) -> Result<String> {
    let fmt = common.format;
    let mut rows: Vec<(Value, String)> = Vec::new();
    let header;
    if let Some(n) = t_lab {
        header = "n,t";
        let lo = if range { 1 } else { n };
        for k in lo..=n {
            let v = t_labeled(k)?.to_string();
            rows.push((json!({"n": k, "t": v}), format!("{k},{v}")));
        }
    } else if let Some(n) = unl {
        header = "n,count";
        let lo = if range { 1 } else { n };
        for k in lo..=n {
            let v = unlabeled_count(k)?.to_string();
            rows.push((json!({"n": k, "count": v}), format!("{k},{v}")));
        }
    } else if let Some((n, j)) = iso {
        header = "n,j,t";
        let table = shared_table(n);
        let lo = if range { 0 } else { j };
        if j > n {
            return Err(thresholdlab::Error::Domain(format!("j = {j} exceeds n = {n}")).into());
        }
        for jj in lo..=j {
            let v = table.t_isolated(n, jj)?.to_string();
            rows.push((json!({"n": n, "j": jj, "t": v}), format!("{n},{jj},{v}")));
        }
    } else if let Some(b) = bip {
        header = "n1,n2,count";
        let v = bipartite_unlabeled_count(b[0], b[1])?.to_string();
        rows.push((json!({"n1": b[0], "n2": b[1], "count": v}), format!("{},{},{v}", b[0], b[1])));
    } else if let Some(n) = asym {
        header = "n,t_over_factorial,approximation,error_bound,abs_error";
        let lo = if range { 2 } else { n };
        let table = shared_table(n);
        for k in lo..=n {
            let a = t_asymptotic(k)?;
            let exact = thresholdlab::counting::t_over_factorial(&table, k);
            let err = (&exact - &a.approximation).abs();
            let cells = [exact.to_string(), a.approximation.to_string(), a.error_bound.to_string(), err.to_string()];
            rows.push((
                json!({"n": k, "t_over_factorial": cells[0], "approximation": cells[1],
                       "error_bound": cells[2], "abs_error": cells[3]}),
                format!("{k},{}", cells.join(",")),
            ));
        }
    } else {
        return Err(Usage(
            "count needs one of --t-labeled, --unlabeled, --isolated, --bipartite, --asymptotic".into(),
        )
        .into());
    }
    Ok(match fmt {
        Format::Text => {
            let lines: Vec<String> = rows
                .iter()
                .map(|(_, csv)| {
                    if rows.len() == 1 && asym.is_some() {
                        let names = header.split(',');
                        names.zip(csv.split(',')).map(|(k, v)| format!("{k} {v}")).collect::<Vec<_>>().join("\n")
                    } else if rows.len() == 1 {
                        csv.rsplit(',').next().unwrap_or("").to_string()
                    } else {
                        csv.replace(',', " ")
                    }
                })
                .collect();
            lines.join("\n") + "\n"
        }
        Format::Csv => {
            let body: Vec<&str> = rows.iter().map(|(_, c)| c.as_str()).collect();
            format!("{header}\n{}\n", body.join("\n"))
        }
        Format::Json if rows.len() == 1 => json_line(&rows[0].0),
        Format::Json => json_line(&Value::Array(rows.into_iter().map(|r| r.0).collect())),
    })
}

/// Ok(text) for threshold inputs; Err carries the witness and exits 1.
fn cmd_recognize(input: &str, common: Common) -> Result<String> {
    no_csv(common.format, "recognize")?;
    let file = gio::parse(&read_input(input)?)?;
    let verdict = match &file {
        GraphFile::Bipartite(b) => check_bipartite_threshold(b).map(|_| None),
        GraphFile::Graph(g) => encode(g).map(|e| Some(e.code)),
        GraphFile::Code(c) => Ok(Some(c.clone())),
    };
    match verdict {
        Ok(code) => Ok(match common.format {
            Format::Json => {
                let mut v = json!({"threshold": true});
                if let Some(c) = code {
                    v["code"] = json!(c.to_string());
                }
                json_line(&v)
            }
            _ => match code {
                Some(c) => format!("threshold graph, code {}\n", if c.bits().is_empty() { "(empty)".into() } else { c.to_string() }),
                None => "bipartite threshold graph\n".into(),
            },
        }),
        Err(e) => {
            if common.format == Format::Json {
                let mut v = json!({"threshold": false, "message": e.to_string()});
                match &e {
                    thresholdlab::Error::NotThreshold { pattern, quad } => {
                        v["pattern"] = json!(pattern.to_string());
                        v["vertices"] = json!(quad.iter().map(|q| q + 1).collect::<Vec<_>>());
                    }
                    thresholdlab::Error::NotBipartiteThreshold { v1, v2 } => {
                        v["pattern"] = json!("2K2");
                        v["vertices1"] = json!([v1[0] + 1, v1[1] + 1]);
                        v["vertices2"] = json!([v2[0] + 1, v2[1] + 1]);
                    }
                    _ => {}
                }
                write_output(&common.out, &json_line(&v))?;
            }
            Err(e.into())
        }
    }
}

fn cmd_encode(input: &str, common: Common) -> Result<String> {
    no_csv(common.format, "encode")?;
    let g = gio::parse(&read_input(input)?)?.into_graph()?;
    let enc = encode(&g)?;
    let order: Vec<usize> = enc.order.iter().map(|v| v + 1).collect();
    Ok(match common.format {
        Format::Json => json_line(&json!({
            "kind": "code",
            "n": g.n(),
            "code": enc.code.to_string(),
            "order": order,
        })),
        _ => {
            let ord: Vec<String> = order.iter().map(|v| v.to_string()).collect();
            format!("{}# order {}\n", gio::code_to_text(&enc.code), ord.join(" "))
        }
    })
}

fn cmd_decode(code: Option<String>, input: Option<String>, common: Common) -> Result<String> {
    no_csv(common.format, "decode")?;
    let c: CreationCode = match (code, input) {
        (Some(c), None) => c.parse()?,
        (None, Some(path)) => match gio::parse(&read_input(&path)?)? {
            GraphFile::Code(c) => c,
            _ => return Err(thresholdlab::Error::Format("input is not a code file".into()).into()),
        },
        _ => return Err(Usage("decode needs --code or --in".into()).into()),
    };
    let f = GraphFile::Graph(c.decode());
    Ok(match common.format {
        Format::Json => gio::to_json(&f) + "\n",
        _ => gio::to_text(&f),
    })
}

fn cmd_stats(m: ModelArgs, statistic: &str, reps: usize, per_rep: bool, common: Common) -> Result<String> {
    let model = model::parse(&m.model, m.n, m.n1, m.n2)?;
    if model.spec.is_bipartite() {
        return Err(Usage("stats is defined for one-part models".into()).into());
    }
    let st: Statistic = statistic.parse().map_err(|e: thresholdlab::Error| Usage(e.to_string()))?;
    let table = montecarlo(&model.spec, reps, common.seed, st, None)?;
    Ok(match common.format {
        Format::Json => {
            let mut v = serde_json::to_value(&table)?;
            v["statistic"] = json!(st.name());
            v["model"] = json!(m.model);
            json_line(&v)
        }
        _ if per_rep => table.replicates_csv(),
        _ => table.to_csv(),
    })
}

fn cmd_limit(m: ModelArgs, boundary: bool, resolution: Option<u64>, common: Common) -> Result<String> {
    // The limit does not depend on the size; fixed-weights takes its size from w.
    let n = if m.model.starts_with("fixed-weights") { m.n } else { m.n.or(Some(1)) };
    let model = model::parse(&m.model, n, m.n1.or(Some(1)), m.n2.or(Some(1)))?;
    let mu = model.limit()?;
    let curve = mu.upper_set().curve().to_vec();
    let xs: Vec<f64> = match resolution {
        Some(k) => (0..=k).map(|i| i as f64 / k as f64).collect(),
        None => mu.breakpoints().to_vec(),
    };
    Ok(match common.format {
        Format::Json => json_line(&json!({
            "kind": "limit",
            "model": m.model,
            "x": xs,
            "cdf_left": xs.iter().map(|&x| mu.cdf_left(x)).collect::<Vec<_>>(),
            "cdf": xs.iter().map(|&x| mu.cdf(x)).collect::<Vec<_>>(),
            "boundary": curve.iter().map(|&(x, y)| [x, y]).collect::<Vec<_>>(),
            "mean": mu.mean(),
            "edge_density": mu.edge_density(),
            "symmetric": mu.is_symmetric_within(1e-9),
        })),
        _ if boundary => {
            let mut s = String::from("x,y\n");
            for (x, y) in curve {
                s.push_str(&format!("{x},{y}\n"));
            }
            s
        }
        _ => {
            let mut s = String::from("x,cdf_left,cdf\n");
            for x in xs {
                s.push_str(&format!("{x},{},{}\n", mu.cdf_left(x), mu.cdf(x)));
            }
            s
        }
    })
}

fn cmd_spectrum(input: &str, format: SpectrumFormat, check: bool) -> Result<(String, bool)> {
    let g = gio::parse(&read_input(input)?)?.into_graph()?;
    let spec = laplacian_spectrum(&g)?;
    let ok = !check
        || (verify_eigenpairs(&g)? && ferrers_check(&g)? && spec.satisfies_trace_identities(&g));
    let n = g.n();
    let text = match format {
        SpectrumFormat::List => {
            let v: Vec<String> = spec.values().iter().map(|x| x.to_string()).collect();
            v.join(" ") + "\n"
        }
        SpectrumFormat::Hist => {
            let mut s = String::new();
            for (l, c) in spec.histogram(n).into_iter().enumerate() {
                if c > 0 {
                    s.push_str(&format!("{l} {c}\n"));
                }
            }
            s
        }
        SpectrumFormat::Csv => {
            let mut s = String::from("eigenvalue,multiplicity,normalized\n");
            for (l, c) in spec.histogram(n).into_iter().enumerate() {
                if c > 0 {
                    s.push_str(&format!("{l},{c},{}\n", l as f64 / n as f64));
                }
            }
            s
        }
        SpectrumFormat::Json => {
            let mut v = json!({"kind": "spectrum", "n": n, "eigenvalues": spec.values()});
            if check {
                v["checked"] = json!(ok);
            }
            json_line(&v)
        }
    };
    Ok((text, ok))
}

fn cmd_selftest(list: bool, full: bool, only: Option<String>) -> Result<bool> {
    let all = checks();
    if list {
        for c in &all {
            println!("{:<13} {}", c.name, c.summary);
        }
        return Ok(true);
    }
    let scale = if full { Scale::Full } else { Scale::Reduced };
    let mut failed = 0;
    let mut ran = 0;
    for c in all.iter().filter(|c| only.as_deref().is_none_or(|o| c.name.contains(o))) {
        let o = run_check(c, scale);
        ran += 1;
        failed += usize::from(!o.passed);
        println!("{} {:<13} {:>7.2}s  {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.seconds, o.detail);
    }
    if ran == 0 {
        return Err(Usage("no check matches --only".into()).into());
    }
    println!("{} of {ran} checks passed", ran - failed);
    Ok(failed == 0)
}

fn configure_threads(flag: Option<usize>) -> Result<()> {
    let threads = match flag {
        Some(k) => Some(k),
        None => match std::env::var("THRESHOLDLAB_THREADS") {
            Ok(v) if !v.trim().is_empty() => Some(
                v.trim()
                    .parse::<usize>()
                    .map_err(|_| Usage(format!("THRESHOLDLAB_THREADS={v} is not a count")))?,
            ),
            _ => None,
        },
    };
    if let Some(k) = threads {
        if k == 0 {
            return Err(Usage("--threads must be at least 1".into()).into());
        }
        rayon::ThreadPoolBuilder::new().num_threads(k).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    configure_threads(cli.threads)?;
    match cli.command {
        Command::Sample { model, count, emit, mut common } => {
            // `--out code` names a representation, not a file; write to ./code for that.
            let named = common.out.as_ref().and_then(|p| p.to_str()).and_then(|p| match p {
                "graph" | "edges" => Some(Emit::Graph),
                "code" => Some(Emit::Code),
                "degrees" => Some(Emit::Degrees),
                _ => None,
            });
            let emit = match (emit, named) {
                (Some(e), _) => e,
                (None, Some(e)) => {
                    common.out = None;
                    e
                }
                (None, None) => Emit::Graph,
            };
            let out = cmd_sample(model, count, emit, common_ref(&common))?;
            write_output(&common.out, &out)?;
        }
        Command::Count { t_labeled, unlabeled, isolated, j, bipartite, asymptotic, range, common } => {
            let iso = isolated.map(|n| (n, j.unwrap_or(0)));
            let out = cmd_count(t_labeled, unlabeled, iso, bipartite, asymptotic, range, common_ref(&common))?;
            write_output(&common.out, &out)?;
        }
        Command::Recognize { input, common } => {
            let out = cmd_recognize(&input, common_ref(&common))?;
            write_output(&common.out, &out)?;
        }
        Command::Encode { input, common } => {
            let out = cmd_encode(&input, common_ref(&common))?;
            write_output(&common.out, &out)?;
        }
        Command::Decode { code, input, common } => {
            let out = cmd_decode(code, input, common_ref(&common))?;
            write_output(&common.out, &out)?;
        }
        Command::Stats { model, statistic, reps, per_replicate, common } => {
            let out = cmd_stats(model, &statistic, reps, per_replicate, common_ref(&common))?;
            write_output(&common.out, &out)?;
        }
        Command::Limit { model, boundary, resolution, common } => {
            let out = cmd_limit(model, boundary, resolution, common_ref(&common))?;
            write_output(&common.out, &out)?;
        }
        Command::Spectrum { input, format, check, out } => {
            let (text, ok) = cmd_spectrum(&input, format, check)?;
            write_output(&out, &text)?;
            if !ok {
                anyhow::bail!("spectrum check failed");
            }
        }
        Command::Selftest { list, full, only } => return cmd_selftest(list, full, only),
    }
    Ok(true)
}

fn common_ref(c: &Common) -> Common {
    let format = if c.json { Format::Json } else { c.format };
    Common { seed: c.seed, format, json: c.json, out: c.out.clone() }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
