//! The `majvote` command line.
//!
//! Exit codes: 0 on success, 2 on invalid input, 3 when exact enumeration
//! exceeds its caps and no fallback was requested.

use std::collections::HashMap;
use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::records::{
    estimate_distribution_with, parse_ground_truth, replay_majority, CostModel, EstimateOptions,
    EstimatedDistribution, Normalizer, QuestionSamples, Resampling, SampleLog,
};
use crate::report::*;
use crate::seed::derive_seed;
use crate::select::{
    accuracy_curve, adaptive_curve, best_for_n, best_under_cost, combined_curve, dominance_count,
    dynamic_curve, extreme_performance, mean_kl_to_uniform, parse_scenario, question_estimate,
    string_key, QuestionEntry, ScalingCurve, StrategyDataset,
};
use crate::difficulty::max_gap;
use crate::synth::synthesize;
use crate::vote::{check_grid, estimate, AnswerDistribution, Estimator, VoteProbability};

#[derive(Debug, Parser)]
#[command(name = "majvote", version, about = "Majority-vote accuracy analysis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact vote success probability by enumeration.
    Exact(ProbArgs),
    /// Normal approximation of the vote success probability.
    Approx(ProbArgs),
    /// Seeded Monte Carlo estimate with standard error.
    Mc(ProbArgs),
    /// Per-strategy accuracy curves and best strategy per n for a scenario.
    Predict(PredictArgs),
    /// Full report from sample logs and ground truth.
    Analyze(AnalyzeArgs),
    /// Sample logs drawn from the distributions of a scenario.
    Synth(SynthArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Exact,
    Approx,
    Mc,
}

#[derive(Debug, Args)]
pub struct EstimatorArgs {
    /// Monte Carlo trials per point.
    #[arg(long, default_value_t = 100_000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Use the normal approximation where exact enumeration is over its caps.
    #[arg(long)]
    pub fallback: bool,
}

#[derive(Debug, Args)]
pub struct ProbArgs {
    /// Comma-separated answer probabilities.
    #[arg(long, value_delimiter = ',', conflicts_with = "scenario")]
    pub dist: Option<Vec<f64>>,
    /// Index of the correct answer in --dist.
    #[arg(long, default_value_t = 0)]
    pub correct: usize,
    /// Scenario file; one result row per question.
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    #[arg(long, conflicts_with = "grid")]
    pub n: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub grid: Option<Vec<usize>>,
    #[command(flatten)]
    pub estimator: EstimatorArgs,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long, value_delimiter = ',', required = true)]
    pub grid: Vec<usize>,
    #[arg(long, value_enum, default_value_t = MethodArg::Approx)]
    pub method: MethodArg,
    #[command(flatten)]
    pub estimator: EstimatorArgs,
    /// Total dataset cost budget; adds cost_selection.csv.
    #[arg(long)]
    pub budget: Option<f64>,
    /// Prompt and completion prices per million tokens.
    #[arg(long, value_delimiter = ',')]
    pub prices: Option<Vec<f64>>,
    /// Report directory; CSV sections on stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Sample log files (JSONL); may be repeated.
    #[arg(long, required = true, num_args = 1..)]
    pub log: Vec<PathBuf>,
    /// Ground-truth file (JSONL).
    #[arg(long)]
    pub truth: PathBuf,
    #[arg(long, value_delimiter = ',', required = true)]
    pub grid: Vec<usize>,
    #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
    pub method: MethodArg,
    #[command(flatten)]
    pub estimator: EstimatorArgs,
    #[arg(long)]
    pub budget: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    pub prices: Option<Vec<f64>>,
    /// Replay trials per question and n.
    #[arg(long, default_value_t = 5)]
    pub replay_trials: usize,
    /// Add-one smoothing of estimated distributions.
    #[arg(long)]
    pub add_one: bool,
    /// Compare answers case-insensitively.
    #[arg(long)]
    pub case_fold: bool,
    /// Compare numeric answers by value.
    #[arg(long)]
    pub numeric: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    /// Samples per strategy and question.
    #[arg(long)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Directory receiving log.jsonl and truth.jsonl.
    #[arg(long)]
    pub out: PathBuf,
}

/// Parses `args` (program name first), runs the command and maps the
/// outcome to an exit code.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_capability() { 3 } else { 2 })
        }
    }
}

pub fn execute(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Exact(a) => cmd_probability(a, MethodArg::Exact),
        Command::Approx(a) => cmd_probability(a, MethodArg::Approx),
        Command::Mc(a) => cmd_probability(a, MethodArg::Mc),
        Command::Predict(a) => cmd_predict(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Synth(a) => cmd_synth(a),
    }
}

fn estimator(method: MethodArg, a: &EstimatorArgs) -> Result<Estimator> {
    Ok(match method {
        MethodArg::Exact if a.fallback => Estimator::exact_with_fallback(),
        MethodArg::Exact => Estimator::exact(),
        MethodArg::Approx => Estimator::NormalApprox,
        MethodArg::Mc => {
            if a.trials == 0 {
                return Err(Error::InvalidArgument("--trials must be at least 1".into()));
            }
            Estimator::monte_carlo(a.trials, a.seed)
        }
    })
}

fn cost_model(prices: &Option<Vec<f64>>) -> Result<CostModel> {
    match prices.as_deref() {
        None => Ok(CostModel::gpt_4o_mini()),
        Some([p, c]) => CostModel::per_million(*p, *c),
        Some(_) => Err(Error::InvalidArgument("--prices takes PROMPT,COMPLETION".into())),
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn read_scenario(path: &Path) -> Result<Vec<StrategyDataset>> {
    parse_scenario(open(path)?)
}

fn write_output<T: serde::Serialize>(out: &Option<PathBuf>, header: &[&str], rows: &[T]) -> Result<()> {
    match out {
        Some(p) => write_file(p, header, rows),
        None => write_rows(io::stdout().lock(), header, rows),
    }
}

fn stderr_of(v: &VoteProbability) -> Option<f64> {
    v.stderr
}

fn cmd_probability(a: &ProbArgs, method: MethodArg) -> Result<()> {
    let ns = match (&a.n, &a.grid) {
        (Some(n), None) => vec![*n],
        (None, Some(g)) => g.clone(),
        _ => return Err(Error::InvalidArgument("give --n or --grid".into())),
    };
    check_grid(&ns)?;
    let est = estimator(method, &a.estimator)?;
    match (&a.dist, &a.scenario) {
        (Some(probs), None) => {
            let dist = AnswerDistribution::new(probs.clone(), a.correct)?;
            let rows = ns
                .iter()
                .map(|&n| {
                    let v = estimate(&dist, n, &est)?;
                    Ok(ProbabilityRow {
                        n,
                        value: v.value,
                        method: v.method.as_str().to_string(),
                        stderr: stderr_of(&v),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            write_output(&a.out, PROBABILITY_HEADER, &rows)
        }
        (None, Some(path)) => {
            let dss = read_scenario(path)?;
            let mut rows = Vec::new();
            for ds in &dss {
                for q in ds.questions() {
                    for &n in &ns {
                        let v = question_estimate(ds.strategy_id(), q, n, &est)?;
                        rows.push(ScenarioProbabilityRow {
                            strategy_id: ds.strategy_id().to_string(),
                            question_id: q.question_id.clone(),
                            n,
                            value: v.value,
                            method: v.method.as_str().to_string(),
                            stderr: stderr_of(&v),
                        });
                    }
                }
            }
            write_output(&a.out, SCENARIO_PROBABILITY_HEADER, &rows)
        }
        _ => Err(Error::InvalidArgument("give --dist or --scenario".into())),
    }
}

fn curve_rows(curves: &[ScalingCurve]) -> Vec<CurveRow> {
    curves
        .iter()
        .flat_map(|c| {
            c.points.iter().map(|p| CurveRow {
                strategy_id: c.strategy_id.clone(),
                n: p.n,
                accuracy: p.accuracy,
                method: p.method.as_str().to_string(),
            })
        })
        .collect()
}

fn selection_rows(dss: &[StrategyDataset], ns: &[usize], est: &Estimator) -> Result<Vec<SelectionRow>> {
    ns.iter()
        .map(|&n| {
            let s = best_for_n(dss, n, est)?;
            Ok(SelectionRow {
                n,
                chosen_strategy: s.chosen_strategy,
                predicted_accuracy: s.predicted_accuracy,
            })
        })
        .collect()
}

fn cost_selection_rows(
    dss: &[StrategyDataset],
    budget: Option<f64>,
    model: &CostModel,
    ns: &[usize],
    est: &Estimator,
) -> Result<Option<Vec<CostSelectionRow>>> {
    let Some(budget) = budget else {
        return Ok(None);
    };
    if !(budget.is_finite() && budget >= 0.0) {
        return Err(Error::InvalidArgument("--budget must be finite and nonnegative".into()));
    }
    let s = best_under_cost(dss, budget, model, ns, est)?;
    Ok(Some(vec![CostSelectionRow {
        budget,
        chosen_strategy: s.chosen_strategy,
        chosen_n: s.chosen_n,
        predicted_accuracy: s.predicted_accuracy,
        cost: s.cost.unwrap_or(0.0),
    }]))
}

fn cmd_predict(a: &PredictArgs) -> Result<()> {
    check_grid(&a.grid)?;
    let est = estimator(a.method, &a.estimator)?;
    let model = cost_model(&a.prices)?;
    let dss = read_scenario(&a.scenario)?;
    let curves = dss
        .iter()
        .map(|ds| accuracy_curve(ds, &a.grid, &est))
        .collect::<Result<Vec<_>>>()?;
    let curves = curve_rows(&curves);
    let selection = selection_rows(&dss, &a.grid, &est)?;
    let cost_selection = cost_selection_rows(&dss, a.budget, &model, &a.grid, &est)?;

    match &a.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            write_file(&dir.join("curves.csv"), CURVE_HEADER, &curves)?;
            write_file(&dir.join("selection.csv"), SELECTION_HEADER, &selection)?;
            if let Some(rows) = &cost_selection {
                write_file(&dir.join("cost_selection.csv"), COST_SELECTION_HEADER, rows)?;
            }
        }
        None => {
            let mut out = io::stdout().lock();
            write_rows(&mut out, CURVE_HEADER, &curves)?;
            writeln!(out)?;
            write_rows(&mut out, SELECTION_HEADER, &selection)?;
            if let Some(rows) = &cost_selection {
                writeln!(out)?;
                write_rows(&mut out, COST_SELECTION_HEADER, rows)?;
            }
        }
    }
    Ok(())
}

struct Estimated {
    samples: QuestionSamples,
    estimate: EstimatedDistribution,
}

/// Groups estimated questions into one dataset per strategy, keeping the
/// order in which strategies first appear in the logs.
fn datasets(estimated: &[Estimated]) -> Result<(Vec<StrategyDataset>, Vec<Vec<usize>>)> {
    let mut order: Vec<&str> = Vec::new();
    let mut members: HashMap<&str, Vec<usize>> = HashMap::new();
    for (i, e) in estimated.iter().enumerate() {
        members
            .entry(e.samples.strategy_id.as_str())
            .or_insert_with(|| {
                order.push(e.samples.strategy_id.as_str());
                Vec::new()
            })
            .push(i);
    }
    let mut dss = Vec::new();
    let mut index = Vec::new();
    for sid in order {
        let ids = members.remove(sid).unwrap();
        let questions = ids
            .iter()
            .map(|&i| {
                let e = &estimated[i];
                QuestionEntry::new(e.samples.question_id.clone(), e.estimate.dist.clone())
                    .with_tokens(e.samples.mean_prompt_tokens, e.samples.mean_completion_tokens)
            })
            .collect();
        dss.push(StrategyDataset::new(sid, questions)?);
        index.push(ids);
    }
    Ok((dss, index))
}

fn cmd_analyze(a: &AnalyzeArgs) -> Result<()> {
    check_grid(&a.grid)?;
    if a.replay_trials == 0 {
        return Err(Error::InvalidArgument("--replay-trials must be at least 1".into()));
    }
    let est = estimator(a.method, &a.estimator)?;
    let model = cost_model(&a.prices)?;
    let canon = Normalizer {
        trim: true,
        case_fold: a.case_fold,
        numeric: a.numeric,
    };
    let truth = parse_ground_truth(open(&a.truth)?, &canon)?;
    let mut log = SampleLog::new();
    for path in &a.log {
        log.ingest(open(path)?, &canon)?;
    }
    if log.is_empty() {
        return Err(Error::Empty("logs contain no samples".into()));
    }
    let options = EstimateOptions { add_one: a.add_one };
    let estimated = log
        .into_groups(&truth)?
        .into_iter()
        .map(|samples| {
            let estimate = estimate_distribution_with(&samples, options)?;
            Ok(Estimated { samples, estimate })
        })
        .collect::<Result<Vec<_>>>()?;
    let (dss, members) = datasets(&estimated)?;

    let vanilla = dss
        .iter()
        .map(|ds| accuracy_curve(ds, &a.grid, &est))
        .collect::<Result<Vec<_>>>()?;
    let curves = curve_rows(&vanilla);
    let selection = selection_rows(&dss, &a.grid, &est)?;
    let cost_selection = cost_selection_rows(&dss, a.budget, &model, &a.grid, &est)?;

    let difficulty = dss
        .iter()
        .map(|ds| {
            let e = extreme_performance(ds)?;
            Ok(DifficultyRow {
                strategy_id: ds.strategy_id().to_string(),
                easy_frac: e.easy_frac,
                moderate_frac: e.moderate_frac,
                hard_frac: e.hard_frac,
                limit_accuracy: e.limit_accuracy,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut dominance = Vec::new();
    for first in &dss {
        for second in &dss {
            if first.strategy_id() != second.strategy_id() {
                dominance.push(DominanceRow {
                    strategy_i: first.strategy_id().to_string(),
                    strategy_i2: second.strategy_id().to_string(),
                    count: dominance_count(first, second)?,
                });
            }
        }
    }

    let kl: Vec<KlRow> = dss
        .iter()
        .map(|ds| {
            let s = mean_kl_to_uniform(ds);
            KlRow {
                strategy_id: ds.strategy_id().to_string(),
                mean_kl: s.mean_kl,
                questions: s.questions,
            }
        })
        .collect();

    let mut oracles = Vec::new();
    let mut push_curve = |kind: &str, sid: &str, c: &ScalingCurve| {
        for p in &c.points {
            oracles.push(OracleRow {
                curve: kind.to_string(),
                strategy_id: sid.to_string(),
                n: p.n,
                accuracy: p.accuracy,
            });
        }
    };
    for c in &vanilla {
        push_curve("vanilla", &c.strategy_id, c);
    }
    for ds in &dss {
        push_curve("adaptive", ds.strategy_id(), &adaptive_curve(ds, &a.grid, &est)?);
    }
    push_curve("dynamic", "", &dynamic_curve(&dss, &a.grid, &est)?);
    push_curve("combined", "", &combined_curve(&dss, &a.grid, &est)?);

    let mut questions = Vec::new();
    let mut distributions = Vec::new();
    for e in &estimated {
        let label = e.estimate.label();
        let dist = &e.estimate.dist;
        questions.push(QuestionRow {
            strategy_id: e.samples.strategy_id.clone(),
            question_id: e.samples.question_id.clone(),
            samples: e.samples.answers.len(),
            difficulty: label.kind().as_str().to_string(),
            tie_count: label.tie_count(),
            correct_prob: dist.correct_prob(),
            max_wrong_prob: dist.max_wrong_prob(),
            max_gap: max_gap(dist),
        });
        for (j, answer) in e.estimate.answers.iter().enumerate() {
            distributions.push(DistributionRow {
                strategy_id: e.samples.strategy_id.clone(),
                question_id: e.samples.question_id.clone(),
                answer: answer.clone(),
                count: e.estimate.counts[j],
                probability: dist.probs()[j],
                is_correct: j == dist.correct_index(),
            });
        }
    }

    let mut replay = Vec::new();
    for (ds, ids) in dss.iter().zip(&members) {
        let pool = ids
            .iter()
            .map(|&i| estimated[i].samples.answers.len())
            .min()
            .unwrap_or(0);
        for &n in a.grid.iter().filter(|&&n| n <= pool) {
            let mut total = 0.0;
            for &i in ids {
                let s = &estimated[i].samples;
                let seed = derive_seed(&[
                    a.estimator.seed,
                    string_key(&s.strategy_id),
                    string_key(&s.question_id),
                    n as u64,
                ]);
                total += replay_majority(s, n, a.replay_trials, seed, Resampling::WithoutReplacement)?;
            }
            replay.push(ReplayRow {
                strategy_id: ds.strategy_id().to_string(),
                n,
                accuracy: total / ids.len() as f64,
                trials: a.replay_trials,
            });
        }
    }

    let costs: Vec<CostRow> = dss
        .iter()
        .flat_map(|ds| {
            let per_round = ds.cost_per_round(&model);
            a.grid.iter().map(move |&n| CostRow {
                strategy_id: ds.strategy_id().to_string(),
                n,
                total_cost: n as f64 * per_round,
            })
        })
        .collect();

    let dir = &a.out;
    fs::create_dir_all(dir)?;
    write_file(&dir.join("curves.csv"), CURVE_HEADER, &curves)?;
    write_file(&dir.join("selection.csv"), SELECTION_HEADER, &selection)?;
    write_file(&dir.join("difficulty_table.csv"), DIFFICULTY_HEADER, &difficulty)?;
    write_file(&dir.join("dominance.csv"), DOMINANCE_HEADER, &dominance)?;
    write_file(&dir.join("kl.csv"), KL_HEADER, &kl)?;
    write_file(&dir.join("oracles.csv"), ORACLE_HEADER, &oracles)?;
    write_file(&dir.join("questions.csv"), QUESTION_HEADER, &questions)?;
    write_file(&dir.join("distributions.csv"), DISTRIBUTION_HEADER, &distributions)?;
    write_file(&dir.join("replay.csv"), REPLAY_HEADER, &replay)?;
    write_file(&dir.join("costs.csv"), COST_HEADER, &costs)?;
    if let Some(rows) = &cost_selection {
        write_file(&dir.join("cost_selection.csv"), COST_SELECTION_HEADER, rows)?;
    }
    Ok(())
}

fn cmd_synth(a: &SynthArgs) -> Result<()> {
    let dss = read_scenario(&a.scenario)?;
    let (mut log, mut truth) = (Vec::new(), Vec::new());
    synthesize(&dss, a.samples, a.seed, &mut log, &mut truth)?;
    fs::create_dir_all(&a.out)?;
    fs::write(a.out.join("log.jsonl"), log)?;
    fs::write(a.out.join("truth.jsonl"), truth)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flags() {
        let cli = Cli::try_parse_from(["majvote", "exact", "--dist", "0.64,0.35,0.01", "--grid", "1,3,5"]).unwrap();
        match cli.command {
            Command::Exact(a) => {
                assert_eq!(a.dist.unwrap(), vec![0.64, 0.35, 0.01]);
                assert_eq!(a.grid.unwrap(), vec![1, 3, 5]);
                assert_eq!(a.correct, 0);
            }
            other => panic!("{other:?}"),
        }
        assert!(Cli::try_parse_from(["majvote", "exact", "--dist", "1", "--n", "3", "--grid", "1"]).is_err());
        let p = Cli::try_parse_from([
            "majvote", "predict", "--scenario", "s", "--grid", "1", "--prices", "0.15,0.6",
        ])
        .unwrap();
        match p.command {
            Command::Predict(a) => {
                assert_eq!(a.prices.unwrap(), vec![0.15, 0.6]);
                assert_eq!(a.method, MethodArg::Approx);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["majvote", "exact", "--dist", "0.5,0.6", "--n", "3"]), ExitCode::from(2));
        assert_eq!(run(["majvote", "exact", "--dist", "0.5,0.5", "--n", "99"]), ExitCode::from(3));
        assert_eq!(run(["majvote", "nonsense"]), ExitCode::from(2));
    }
}
