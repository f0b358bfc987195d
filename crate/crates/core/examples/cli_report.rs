//! The command line driven from code: plant a scenario, draw a log from it,
//! then write the full report directory.

use std::fs;
use std::process::ExitCode;

use majvote::cli::run;

const SCENARIO: &str = r#"{"strategy_id":"cot","question_id":"q1","probs":[0.6,0.3,0.1],"correct_index":0,"mean_prompt_tokens":120,"mean_completion_tokens":250}
{"strategy_id":"cot","question_id":"q2","probs":[0.3,0.5,0.2],"correct_index":0,"mean_prompt_tokens":110,"mean_completion_tokens":240}
{"strategy_id":"l2m","question_id":"q1","probs":[0.5,0.5],"correct_index":0,"mean_prompt_tokens":200,"mean_completion_tokens":400}
{"strategy_id":"l2m","question_id":"q2","probs":[0.55,0.45],"correct_index":0,"mean_prompt_tokens":190,"mean_completion_tokens":380}
"#;

fn main() -> ExitCode {
    let dir = std::env::temp_dir().join("majvote-cli-report");
    fs::create_dir_all(&dir).unwrap();
    let scenario = dir.join("scenario.jsonl");
    fs::write(&scenario, SCENARIO).unwrap();
    let s = scenario.to_str().unwrap();
    let d = dir.to_str().unwrap();

    let code = run(["majvote", "synth", "--scenario", s, "--samples", "40", "--seed", "5", "--out", d]);
    if code != ExitCode::SUCCESS {
        return code;
    }
    let log = dir.join("log.jsonl");
    let truth = dir.join("truth.jsonl");
    let report = dir.join("report");
    let code = run([
        "majvote", "analyze",
        "--log", log.to_str().unwrap(),
        "--truth", truth.to_str().unwrap(),
        "--grid", "1,3,5,9,17,33",
        "--budget", "0.001",
        "--out", report.to_str().unwrap(),
    ]);
    if code != ExitCode::SUCCESS {
        return code;
    }
    for name in ["difficulty_table.csv", "selection.csv", "oracles.csv", "cost_selection.csv"] {
        println!("== {name}\n{}", fs::read_to_string(report.join(name)).unwrap());
    }
    ExitCode::SUCCESS
}
