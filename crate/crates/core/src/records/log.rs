use std::collections::{BTreeMap, HashMap};
use std::io::BufRead;

use serde::Deserialize;

use super::{QuestionSamples, SampleRecord, UNPARSEABLE};
use crate::error::{Error, Result};

/// Maps a raw extracted answer to its canonical form.
///
/// The library does not guess semantic equivalence; callers decide how
/// aggressively answers are merged.
pub trait Canonicalize {
    fn canonicalize(&self, raw: &str) -> String;
}

impl<F: Fn(&str) -> String> Canonicalize for F {
    fn canonicalize(&self, raw: &str) -> String {
        self(raw)
    }
}

/// Built-in normalization: trimming, case folding and numeric formatting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Normalizer {
    pub trim: bool,
    pub case_fold: bool,
    /// Rewrite answers that parse as numbers, so `"7.0"` and `"7"` agree.
    pub numeric: bool,
}

impl Default for Normalizer {
    fn default() -> Self {
        Self {
            trim: true,
            case_fold: false,
            numeric: false,
        }
    }
}

impl Canonicalize for Normalizer {
    fn canonicalize(&self, raw: &str) -> String {
        let mut s = if self.trim { raw.trim().to_string() } else { raw.to_string() };
        if self.case_fold {
            s = s.to_lowercase();
        }
        if self.numeric {
            if let Ok(v) = s.parse::<f64>() {
                if v.is_finite() {
                    s = if v.fract() == 0.0 && v.abs() < 1e15 {
                        format!("{}", v as i64)
                    } else {
                        format!("{v}")
                    };
                }
            }
        }
        s
    }
}

/// Correct answer per question.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroundTruth {
    answers: HashMap<String, String>,
}

impl GroundTruth {
    pub fn get(&self, question_id: &str) -> Option<&str> {
        self.answers.get(question_id).map(String::as_str)
    }

    pub fn insert(&mut self, question_id: impl Into<String>, correct_answer: impl Into<String>) {
        self.answers.insert(question_id.into(), correct_answer.into());
    }

    pub fn len(&self) -> usize {
        self.answers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.answers.is_empty()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TruthLine {
    question_id: String,
    correct_answer: String,
}

fn lines<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, String)>> {
    reader
        .lines()
        .enumerate()
        .map(|(i, l)| l.map(|l| (i + 1, l)).map_err(Error::from))
        .filter(|r| !matches!(r, Ok((_, l)) if l.trim().is_empty()))
}

pub fn parse_ground_truth<R: BufRead>(reader: R, canon: &dyn Canonicalize) -> Result<GroundTruth> {
    let mut truth = GroundTruth::default();
    for item in lines(reader) {
        let (line, text) = item?;
        let row: TruthLine = serde_json::from_str(&text).map_err(|e| Error::MalformedLine {
            line,
            reason: e.to_string(),
        })?;
        let answer = canon.canonicalize(&row.correct_answer);
        if answer.is_empty() || answer == UNPARSEABLE {
            return Err(Error::MalformedLine {
                line,
                reason: format!("question {} has an empty correct answer", row.question_id),
            });
        }
        if truth.answers.contains_key(&row.question_id) {
            return Err(Error::MalformedLine {
                line,
                reason: format!("question {} listed twice", row.question_id),
            });
        }
        truth.answers.insert(row.question_id, answer);
    }
    Ok(truth)
}

struct Group {
    question_id: String,
    strategy_id: String,
    samples: BTreeMap<u64, (String, u64, u64)>,
}

/// Accumulates records from one or more log streams.
///
/// Groups keep the order in which each (question, strategy) pair first
/// appeared; samples within a group are ordered by `sample_index`.
#[derive(Default)]
pub struct SampleLog {
    groups: Vec<Group>,
    index: HashMap<(String, String), usize>,
}

impl SampleLog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: SampleRecord, canon: &dyn Canonicalize) -> Result<()> {
        let answer = match record.answer.as_deref().map(|a| canon.canonicalize(a)) {
            Some(a) if !a.is_empty() => a,
            _ => UNPARSEABLE.to_string(),
        };
        let key = (record.question_id.clone(), record.strategy_id.clone());
        let slot = match self.index.get(&key) {
            Some(&i) => i,
            None => {
                self.groups.push(Group {
                    question_id: record.question_id.clone(),
                    strategy_id: record.strategy_id.clone(),
                    samples: BTreeMap::new(),
                });
                self.index.insert(key, self.groups.len() - 1);
                self.groups.len() - 1
            }
        };
        let group = &mut self.groups[slot];
        if group.samples.contains_key(&record.sample_index) {
            return Err(Error::DuplicateKey {
                question_id: record.question_id,
                strategy_id: record.strategy_id,
                sample_index: record.sample_index,
            });
        }
        group.samples.insert(
            record.sample_index,
            (answer, record.prompt_tokens, record.completion_tokens),
        );
        Ok(())
    }

    /// Reads every nonblank line of `reader` as a [`SampleRecord`].
    pub fn ingest<R: BufRead>(&mut self, reader: R, canon: &dyn Canonicalize) -> Result<()> {
        for item in lines(reader) {
            let (line, text) = item?;
            let record: SampleRecord = serde_json::from_str(&text).map_err(|e| Error::MalformedLine {
                line,
                reason: e.to_string(),
            })?;
            self.push(record, canon)?;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Attaches ground truth and returns the grouped samples.
    pub fn into_groups(self, truth: &GroundTruth) -> Result<Vec<QuestionSamples>> {
        self.groups
            .into_iter()
            .map(|g| {
                let correct = truth
                    .get(&g.question_id)
                    .ok_or_else(|| Error::MissingGroundTruth(g.question_id.clone()))?;
                let count = g.samples.len() as f64;
                let (mut prompt, mut completion) = (0u64, 0u64);
                let answers = g
                    .samples
                    .into_values()
                    .map(|(a, p, c)| {
                        prompt += p;
                        completion += c;
                        a
                    })
                    .collect();
                Ok(QuestionSamples {
                    question_id: g.question_id,
                    strategy_id: g.strategy_id,
                    correct_answer: correct.to_string(),
                    answers,
                    mean_prompt_tokens: prompt as f64 / count,
                    mean_completion_tokens: completion as f64 / count,
                })
            })
            .collect()
    }
}

/// Parses one log stream and groups it against `truth`.
pub fn parse_log<R: BufRead>(
    reader: R,
    truth: &GroundTruth,
    canon: &dyn Canonicalize,
) -> Result<Vec<QuestionSamples>> {
    let mut log = SampleLog::new();
    log.ingest(reader, canon)?;
    log.into_groups(truth)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn truth() -> GroundTruth {
        let mut t = GroundTruth::default();
        t.insert("q1", "7");
        t.insert("q2", "8");
        t
    }

    fn line(q: &str, s: &str, i: u64, a: &str) -> String {
        format!(
            r#"{{"question_id":"{q}","strategy_id":"{s}","sample_index":{i},"answer":"{a}","prompt_tokens":100,"completion_tokens":50}}"#
        )
    }

    #[test]
    fn groups_and_orders_by_index() {
        let text = [line("q1", "cot", 1, "8"), line("q1", "cot", 0, "7")].join("\n");
        let groups = parse_log(text.as_bytes(), &truth(), &Normalizer::default()).unwrap();
        assert_eq!(groups.len(), 1);
        assert_eq!(groups[0].answers, vec!["7", "8"]);
        assert_eq!(groups[0].correct_answer, "7");
        assert_eq!(groups[0].mean_prompt_tokens, 100.0);
        assert_eq!(groups[0].mean_completion_tokens, 50.0);
    }

    #[test]
    fn forty_samples_per_group() {
        let mut lines = Vec::new();
        for q in ["q1", "q2"] {
            for s in ["cot", "l2m"] {
                for i in 0..40 {
                    lines.push(line(q, s, i, "7"));
                }
            }
        }
        let groups = parse_log(lines.join("\n").as_bytes(), &truth(), &Normalizer::default()).unwrap();
        assert_eq!(groups.len(), 4);
        assert!(groups.iter().all(|g| g.answers.len() == 40));
        assert_eq!(
            groups.iter().map(|g| (g.question_id.as_str(), g.strategy_id.as_str())).collect::<Vec<_>>(),
            vec![("q1", "cot"), ("q1", "l2m"), ("q2", "cot"), ("q2", "l2m")]
        );
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let text = format!(
            "{}\n\n{}",
            line("q1", "cot", 0, "7"),
            r#"{"question_id":"q1","strategy_id":"cot","sample_index":1,"answer":"7","prompt_tokens":3}"#
        );
        match parse_log(text.as_bytes(), &truth(), &Normalizer::default()) {
            Err(Error::MalformedLine { line, reason }) => {
                assert_eq!(line, 3);
                assert!(reason.contains("completion_tokens"), "{reason}");
            }
            other => panic!("unexpected {other:?}"),
        }
        let negative = r#"{"question_id":"q1","strategy_id":"cot","sample_index":1,"answer":"7","prompt_tokens":-3,"completion_tokens":1}"#;
        assert!(matches!(
            parse_log(negative.as_bytes(), &truth(), &Normalizer::default()),
            Err(Error::MalformedLine { line: 1, .. })
        ));
        let extra = r#"{"question_id":"q1","strategy_id":"cot","sample_index":1,"answer":"7","prompt_tokens":3,"completion_tokens":1,"x":1}"#;
        assert!(parse_log(extra.as_bytes(), &truth(), &Normalizer::default()).is_err());
    }

    #[test]
    fn duplicates_and_missing_truth() {
        let text = [line("q1", "cot", 0, "7"), line("q1", "cot", 0, "8")].join("\n");
        assert!(matches!(
            parse_log(text.as_bytes(), &truth(), &Normalizer::default()),
            Err(Error::DuplicateKey { sample_index: 0, .. })
        ));
        let text = line("q9", "cot", 0, "7");
        assert!(matches!(
            parse_log(text.as_bytes(), &truth(), &Normalizer::default()),
            Err(Error::MissingGroundTruth(q)) if q == "q9"
        ));
    }

    #[test]
    fn unparseable_answers_become_sentinel() {
        let text = [
            line("q1", "cot", 0, "  "),
            r#"{"question_id":"q1","strategy_id":"cot","sample_index":1,"answer":null,"prompt_tokens":3,"completion_tokens":1}"#.to_string(),
            r#"{"question_id":"q1","strategy_id":"cot","sample_index":2,"prompt_tokens":3,"completion_tokens":1}"#.to_string(),
        ]
        .join("\n");
        let groups = parse_log(text.as_bytes(), &truth(), &Normalizer::default()).unwrap();
        assert_eq!(groups[0].answers, vec![UNPARSEABLE; 3]);
        assert!(!groups[0].is_correct(UNPARSEABLE));
    }

    #[test]
    fn normalizer_and_closure_hooks() {
        let n = Normalizer {
            trim: true,
            case_fold: true,
            numeric: true,
        };
        assert_eq!(n.canonicalize(" 7.0 "), "7");
        assert_eq!(n.canonicalize("2.50"), "2.5");
        assert_eq!(n.canonicalize(" Paris"), "paris");
        let strip_dollar = |s: &str| s.trim().trim_start_matches('$').to_string();
        assert_eq!(strip_dollar.canonicalize(" $18"), "18");
    }

    #[test]
    fn ground_truth_parsing() {
        let text = "{\"question_id\":\"q1\",\"correct_answer\":\" 7 \"}\n{\"question_id\":\"q2\",\"correct_answer\":\"8\"}\n";
        let t = parse_ground_truth(text.as_bytes(), &Normalizer::default()).unwrap();
        assert_eq!(t.get("q1"), Some("7"));
        assert_eq!(t.len(), 2);
        let dup = "{\"question_id\":\"q1\",\"correct_answer\":\"7\"}\n{\"question_id\":\"q1\",\"correct_answer\":\"8\"}";
        assert!(matches!(
            parse_ground_truth(dup.as_bytes(), &Normalizer::default()),
            Err(Error::MalformedLine { line: 2, .. })
        ));
        let sentinel = "{\"question_id\":\"q1\",\"correct_answer\":\"∅\"}";
        assert!(parse_ground_truth(sentinel.as_bytes(), &Normalizer::default()).is_err());
    }
}
