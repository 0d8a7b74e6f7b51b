//! Command-line front end for the boxfacts toolkit.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use boxfacts::corpus::pipeline::{
    corpus_stats, extract_plans, normalize_corpus, purify_corpus, replenish_corpus, PipelineConfig,
};
use boxfacts::corpus::{load_corpus_with, save_corpus, split_indices, LoadReport, Ratios};
use boxfacts::eval::{evaluate_corpus, EvalPair};
use boxfacts::plan::ExportedItem;
use boxfacts::synth::synth_corpus;
use boxfacts::template::render_template_with_plan;
use boxfacts::{Granularity, MetricsReport, Sample, Summary};

#[derive(Parser)]
#[command(name = "boxfacts", version, about = "Ground, purify and evaluate boxscore summaries")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Opts {
    /// JSON array of record type descriptors replacing the default schema.
    #[arg(long, global = true)]
    schema: Option<PathBuf>,
    /// JSON cue lexicon replacing the default one.
    #[arg(long, global = true)]
    cues: Option<PathBuf>,
    /// JSON object mapping canonical entity names to extra aliases.
    #[arg(long, global = true)]
    aliases: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// train,valid,test
    #[arg(long, global = true, default_value = "0.7,0.15,0.15")]
    ratios: Ratios,
    #[arg(long, global = true, default_value_t = 5)]
    min_plan: usize,
    /// Largest gap, in percentage points, for rounding a stated percent.
    #[arg(long, global = true, default_value_t = 1.0)]
    percent_tol: f64,
    #[arg(long, global = true, default_value_t = 6)]
    k_players: usize,
    /// sentence or run
    #[arg(long, global = true, default_value = "sentence")]
    granularity: Granularity,
    #[arg(long, global = true, default_value = "out")]
    out_dir: PathBuf,
}

#[derive(Subcommand)]
enum Cmd {
    /// Drop ungrounded sentences; writes purified.json, plans.jsonl, retention.jsonl.
    Purify { corpus: PathBuf },
    /// Add derived team statistics; writes replenished.json.
    Replenish { corpus: PathBuf },
    /// Extract content plans; writes plans.jsonl.
    ExtractPlan { corpus: PathBuf },
    /// Score system summaries (one tokenized summary per line) against a gold corpus.
    Evaluate {
        gold: PathBuf,
        system: PathBuf,
    },
    /// Render template summaries; writes template.txt and template_plans.jsonl.
    Template { corpus: PathBuf },
    /// Dataset statistics; writes stats.json.
    Stats { corpus: PathBuf },
    /// Seeded train/valid/test split; writes the parts and split_manifest.json.
    Split { corpus: PathBuf },
    /// Generate a synthetic corpus of grounded games; writes synth.json.
    Synth {
        #[arg(long, default_value_t = 100)]
        games: usize,
    },
}

impl Opts {
    fn config(&self) -> PipelineConfig {
        PipelineConfig {
            schema: self.schema.clone(),
            cues: self.cues.clone(),
            aliases: self.aliases.clone(),
            ratios: self.ratios,
            seed: self.seed,
            percent_tolerance: self.percent_tol,
            min_plan: self.min_plan,
            k_players: self.k_players,
            granularity: self.granularity,
        }
    }
}

fn load(path: &Path, cfg: &PipelineConfig) -> Result<Vec<Sample>> {
    let LoadReport {
        samples,
        rejections,
        warnings,
    } = load_corpus_with(path, &cfg.schema()?)?;
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    for r in &rejections {
        let id = r.game_id.as_deref().unwrap_or("?");
        eprintln!("rejected game {} ({id}): {}", r.index, r.reasons.join("; "));
    }
    if samples.is_empty() {
        bail!("{}: no usable games", path.display());
    }
    Ok(samples)
}

fn out_path(dir: &Path, name: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    Ok(dir.join(name))
}

fn write_lines<T: serde::Serialize>(path: &Path, rows: impl IntoIterator<Item = T>) -> Result<()> {
    let mut buf = Vec::new();
    for row in rows {
        serde_json::to_writer(&mut buf, &row)?;
        buf.push(b'\n');
    }
    fs::write(path, buf).with_context(|| format!("writing {}", path.display()))
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
}

#[derive(serde::Serialize)]
struct PlanRow<'a> {
    game_id: &'a str,
    plan: Vec<ExportedItem>,
}

fn read_system(path: &Path) -> Result<Vec<Summary>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(text.lines().map(Summary::from_text).collect())
}

fn run(cli: Cli) -> Result<()> {
    let cfg = cli.opts.config();
    let aligner = cfg.aligner()?;
    let dir = &cli.opts.out_dir;
    let mut stdout = std::io::stdout().lock();
    match cli.cmd {
        Cmd::Purify { corpus } => {
            let samples = load(&corpus, &cfg)?;
            let out = purify_corpus(&samples, &aligner);
            save_corpus(&out_path(dir, "purified.json")?, &out.purified.iter().map(|p| p.sample.clone()).collect::<Vec<_>>())?;
            write_lines(
                &out_path(dir, "plans.jsonl")?,
                out.purified.iter().map(|p| PlanRow {
                    game_id: &p.sample.table.game_id,
                    plan: p.plan.export(&p.sample.table),
                }),
            )?;
            write_lines(&out_path(dir, "retention.jsonl")?, &out.logs)?;
            writeln!(stdout, "kept {} of {} games", out.purified.len(), samples.len())?;
        }
        Cmd::Replenish { corpus } => {
            let samples = load(&corpus, &cfg)?;
            let mut augmented = Vec::with_capacity(samples.len());
            for (s, warnings) in replenish_corpus(&samples) {
                for w in warnings {
                    eprintln!("{}: {w}", s.table.game_id);
                }
                augmented.push(s);
            }
            save_corpus(&out_path(dir, "replenished.json")?, &augmented)?;
            writeln!(stdout, "replenished {} games", augmented.len())?;
        }
        Cmd::ExtractPlan { corpus } => {
            let samples = normalize_corpus(&load(&corpus, &cfg)?, &aligner);
            let plans = extract_plans(&samples, &aligner);
            write_lines(
                &out_path(dir, "plans.jsonl")?,
                samples.iter().zip(&plans).map(|(s, p)| PlanRow {
                    game_id: &s.table.game_id,
                    plan: p.export(&s.table),
                }),
            )?;
            writeln!(stdout, "extracted {} plans", plans.len())?;
        }
        Cmd::Evaluate { gold, system } => {
            let gold = load(&gold, &cfg)?;
            let sys = read_system(&system)?;
            if sys.len() != gold.len() {
                bail!("{} gold games but {} system summaries", gold.len(), sys.len());
            }
            let sys_samples: Vec<Sample> = gold
                .iter()
                .zip(&sys)
                .map(|(g, s)| Sample {
                    table: g.table.clone(),
                    summary: s.clone(),
                })
                .collect();
            let gold_plans = extract_plans(&normalize_corpus(&gold, &aligner), &aligner);
            let sys_plans = extract_plans(&normalize_corpus(&sys_samples, &aligner), &aligner);
            let pairs: Vec<EvalPair> = (0..gold.len())
                .map(|i| EvalPair {
                    gold_plan: &gold_plans[i],
                    sys_plan: &sys_plans[i],
                    table: &gold[i].table,
                    gold_text: &gold[i].summary.tokens,
                    sys_text: &sys[i].tokens,
                })
                .collect();
            let report: MetricsReport = evaluate_corpus(&pairs, &aligner)?;
            write_json(&out_path(dir, "report.json")?, &report)?;
            write!(stdout, "{}", report.to_table())?;
        }
        Cmd::Template { corpus } => {
            let samples = load(&corpus, &cfg)?;
            let tcfg = cfg.template();
            let mut lines = String::new();
            let mut rows = Vec::new();
            for s in &samples {
                match render_template_with_plan(&s.table, &tcfg) {
                    Ok((summary, plan)) => {
                        lines.push_str(&summary.text());
                        rows.push(PlanRow {
                            game_id: &s.table.game_id,
                            plan: plan.export(&s.table),
                        });
                    }
                    Err(e) => {
                        eprintln!("{}: {e}", s.table.game_id);
                        rows.push(PlanRow {
                            game_id: &s.table.game_id,
                            plan: Vec::new(),
                        });
                    }
                }
                lines.push('\n');
            }
            fs::write(out_path(dir, "template.txt")?, lines)?;
            write_lines(&out_path(dir, "template_plans.jsonl")?, rows)?;
            writeln!(stdout, "rendered {} games", samples.len())?;
        }
        Cmd::Stats { corpus } => {
            let stats = corpus_stats(&load(&corpus, &cfg)?, &aligner)?;
            write_json(&out_path(dir, "stats.json")?, &stats)?;
            write!(stdout, "{}", stats.to_table())?;
        }
        Cmd::Split { corpus } => {
            let samples = load(&corpus, &cfg)?;
            let idx = split_indices(samples.len(), &cfg.ratios, cfg.seed)?;
            for (name, part) in [("train", &idx.train), ("valid", &idx.valid), ("test", &idx.test)] {
                let picked: Vec<Sample> = part.iter().map(|&i| samples[i].clone()).collect();
                save_corpus(&out_path(dir, &format!("{name}.json"))?, &picked)?;
            }
            let ids = |part: &[usize]| -> Vec<String> { part.iter().map(|&i| samples[i].table.game_id.clone()).collect() };
            let manifest = serde_json::json!({
                "seed": cfg.seed,
                "ratios": cfg.ratios,
                "indices": idx,
                "game_ids": {
                    "train": ids(&idx.train),
                    "valid": ids(&idx.valid),
                    "test": ids(&idx.test),
                },
            });
            write_json(&out_path(dir, "split_manifest.json")?, &manifest)?;
            writeln!(stdout, "train {} valid {} test {}", idx.train.len(), idx.valid.len(), idx.test.len())?;
        }
        Cmd::Synth { games } => {
            let samples = synth_corpus(games, cfg.seed);
            save_corpus(&out_path(dir, "synth.json")?, &samples)?;
            writeln!(stdout, "wrote {} games", samples.len())?;
        }
    }
    Ok(())
}

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
