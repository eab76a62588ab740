use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gmd_core::experiments::{
    accuracy_csv, bench_csv, classify_topk, confusion_csv, planarize_records, run_ggd_stability, run_gmd_stability,
    scaling_benchmark, StabilityReport,
};
use gmd_core::io::{
    letter_prototypes, load_letter_dir, load_prototypes_dir, read_gxl_letter, read_json_graph, write_json_graph,
    Distortion,
};
use gmd_core::{ggd_exact, gmd, planarize, CostParams, Error, GeometricGraph, DEFAULT_EPS, EXACT_LIMIT};

#[derive(Parser)]
#[command(name = "gmd", version, about = "Distances between geometric graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Vertex translation cost C_V.
    #[arg(long, global = true, default_value_t = 4.5, value_parser = positive)]
    cv: f64,

    /// Edge length cost C_E.
    #[arg(long, global = true, default_value_t = 1.0, value_parser = positive)]
    ce: f64,

    /// Ranks at which retrieval accuracy is reported.
    #[arg(long, global = true, value_delimiter = ',', default_value = "1,3,5",
          value_parser = clap::value_parser!(u32).range(1..))]
    k: Vec<u32>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for classify (default: all processors).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Graph mover's distance between two graphs.
    Gmd { a: PathBuf, b: PathBuf },
    /// Exact geometric graph distance (at most 7 vertices per graph).
    Ggd { a: PathBuf, b: PathBuf },
    /// Insert vertices at edge crossings and write the native format.
    Planarize { input: PathBuf },
    /// Rewrite a GXL or native graph in the native format.
    Convert { input: PathBuf },
    /// Rank letter prototypes for every test drawing and report top-k accuracy.
    Classify {
        /// Dataset root containing LOW, MED and HIGH.
        root: PathBuf,
        /// Directory of <letter>.json prototypes (default: the bundled set).
        #[arg(long)]
        prototypes: Option<PathBuf>,
        /// Only these distortion levels.
        #[arg(long, value_delimiter = ',')]
        levels: Vec<String>,
    },
    /// Check the stability bounds on random graphs.
    Stability {
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Median gmd wall time on random graph pairs.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "50,100,200")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(x) => Err(format!("must be positive and finite, got {x}")),
        Err(e) => Err(e.to_string()),
    }
}

fn read_graph(path: &Path) -> Result<GeometricGraph<f64>, String> {
    let bytes = fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let is_gxl = path.extension().is_some_and(|x| x.eq_ignore_ascii_case("gxl"));
    let parsed = if is_gxl { read_gxl_letter(&bytes) } else { read_json_graph(&bytes) };
    parsed.map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, String> {
    rayon::ThreadPoolBuilder::new().num_threads(jobs.unwrap_or(0)).build().map_err(|e| e.to_string())
}

fn scalar_output(format: Format, name: &str, value: f64, json_extra: &str) -> String {
    match format {
        Format::Text => format!("{value:.9}\n"),
        Format::Csv => format!("{name}\n{value:.9}\n"),
        Format::Json => format!("{{\"{name}\":{value:.9}{json_extra}}}\n"),
    }
}

fn run(cli: Cli) -> Result<(), String> {
    let params = CostParams::new(cli.cv, cli.ce).map_err(|e| e.to_string())?;
    match &cli.command {
        Command::Gmd { a, b } => {
            let (g, h) = (read_graph(a)?, read_graph(b)?);
            let r = gmd(&g, &h, &params).map_err(|e| e.to_string())?;
            let flow: Vec<String> = r.flow.support().iter().map(|(i, j, f)| format!("[{i},{j},{f:.9}]")).collect();
            let extra = format!(",\"flow\":[{}]", flow.join(","));
            emit(&cli.out, &scalar_output(cli.format, "gmd", r.value, &extra))
        }
        Command::Ggd { a, b } => {
            let (g, h) = (read_graph(a)?, read_graph(b)?);
            let (value, matching) = ggd_exact(&g, &h, &params).map_err(|e| match e {
                Error::TooLarge { m, n, .. } => format!(
                    "ggd: the exact solver handles at most {EXACT_LIMIT} vertices per graph, got {m} and {n}"
                ),
                other => other.to_string(),
            })?;
            let image: Vec<String> =
                matching.forward().iter().map(|v| v.map_or("null".to_string(), |v| v.to_string())).collect();
            let extra = format!(",\"matching\":[{}]", image.join(","));
            emit(&cli.out, &scalar_output(cli.format, "ggd", value, &extra))
        }
        Command::Planarize { input } => {
            let g = read_graph(input)?;
            let p = planarize(&g, DEFAULT_EPS).map_err(|e| format!("{}: {e}", input.display()))?;
            emit(&cli.out, &String::from_utf8(write_json_graph(&p)).unwrap())
        }
        Command::Convert { input } => {
            let g = read_graph(input)?;
            emit(&cli.out, &String::from_utf8(write_json_graph(&g)).unwrap())
        }
        Command::Classify { root, prototypes, levels } => classify(&cli, &params, root, prototypes.as_deref(), levels),
        Command::Stability { trials } => {
            let e = |e: Error| e.to_string();
            let reports = [
                run_gmd_stability(*trials, 8, cli.seed, &params).map_err(e)?.0,
                run_ggd_stability(*trials, 5, true, cli.seed, &params).map_err(e)?.0,
                run_ggd_stability(*trials, 5, false, cli.seed, &params).map_err(e)?.0,
            ];
            let mut text = format!("{}\n", StabilityReport::CSV_HEADER);
            for r in &reports {
                text.push_str(&r.csv_row());
                text.push('\n');
            }
            emit(&cli.out, &text)
        }
        Command::Bench { sizes, trials } => {
            // Timings run one at a time so they are not skewed by contention.
            let rows = scaling_benchmark(sizes, *trials, cli.seed, &params).map_err(|e| e.to_string())?;
            let mut buf = Vec::new();
            bench_csv(&rows, &mut buf).map_err(|e| e.to_string())?;
            emit(&cli.out, &String::from_utf8(buf).unwrap())
        }
    }
}

fn classify(
    cli: &Cli,
    params: &CostParams<f64>,
    root: &Path,
    prototypes: Option<&Path>,
    levels: &[String],
) -> Result<(), String> {
    let protos = match prototypes {
        Some(dir) => load_prototypes_dir(dir).map_err(|e| e.to_string())?,
        None => letter_prototypes(),
    };
    let levels: Vec<Distortion> = if levels.is_empty() {
        Distortion::ALL.to_vec()
    } else {
        levels.iter().map(|l| l.parse().map_err(|e: Error| e.to_string())).collect::<Result<_, _>>()?
    };
    let ks: Vec<usize> = cli.k.iter().map(|&k| k as usize).collect();
    let workers = pool(cli.jobs)?;
    let mut reports = Vec::new();
    for level in levels {
        let dir = root.join(level.dir_name());
        let mut records = load_letter_dir(&dir, level).map_err(|e| format!("{}: {e}", dir.display()))?;
        let kept = planarize_records(&mut records).map_err(|e| e.to_string())?;
        if !kept.is_empty() {
            eprintln!("{level}: {} drawings with overlapping strokes left unplanarized", kept.len());
        }
        let report = workers
            .install(|| classify_topk(level, &records, &protos, params, &ks))
            .map_err(|e| e.to_string())?;
        reports.push(report);
    }
    let text = match cli.format {
        Format::Csv => accuracy_csv(&reports),
        Format::Json => {
            let rows: Vec<String> = reports
                .iter()
                .map(|r| {
                    let acc: Vec<String> = r.accuracies().iter().map(|(k, a)| format!("\"{k}\":{a:.9}")).collect();
                    format!("{{\"distortion\":\"{}\",\"total\":{},\"accuracy\":{{{}}}}}", r.distortion, r.total, acc.join(","))
                })
                .collect();
            format!("[{}]\n", rows.join(","))
        }
        Format::Text => {
            let mut t = String::new();
            for r in &reports {
                for (k, a) in r.accuracies() {
                    t.push_str(&format!("{} k={k} {:.9} ({} graphs)\n", r.distortion, a, r.total));
                }
            }
            t
        }
    };
    emit(&cli.out, &text)?;
    if let Some(out) = &cli.out {
        let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("classify");
        for r in &reports {
            let path = out.with_file_name(format!("{stem}_confusion_{}.csv", r.distortion));
            fs::write(&path, confusion_csv(r)).map_err(|e| format!("{}: {e}", path.display()))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
