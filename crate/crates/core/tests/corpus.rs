use std::io::Write;

use sexakit::corpus::{
    bundled_corpus, find, load_corpus, parse_corpus, replay, CorpusError, StepStatus, BUNDLED_CORPUS,
};
use sexakit::Error;

#[test]
fn loads_from_disk() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(BUNDLED_CORPUS.as_bytes()).unwrap();
    assert_eq!(load_corpus(f.path()).unwrap(), bundled_corpus());
    let empty = tempfile::NamedTempFile::new().unwrap();
    assert!(load_corpus(empty.path()).unwrap().is_empty());
    assert!(matches!(load_corpus("/nonexistent/x.corpus"), Err(CorpusError::Io { .. })));
}

#[test]
fn out_of_range_digit_is_a_bad_literal() {
    let text = "[problem t]\nprocedure = labor-depth\nparam reach = 61\n";
    match parse_corpus(text) {
        Err(CorpusError::BadLiteral { line: 3, column: 15, source }) => {
            assert!(matches!(source, Error::MalformedLiteral { .. }));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn replays_are_deterministic_and_independent() {
    let problems = bundled_corpus();
    let first: Vec<_> = problems.iter().map(|p| replay(p).unwrap()).collect();
    let parallel: Vec<_> = std::thread::scope(|s| {
        let hs: Vec<_> = problems.iter().map(|p| s.spawn(move || replay(p).unwrap())).collect();
        hs.into_iter().map(|h| h.join().unwrap()).collect()
    });
    assert_eq!(first, parallel);
}

#[test]
fn every_expected_value_is_checked() {
    for p in bundled_corpus() {
        let r = replay(&p).unwrap();
        assert_eq!(r.steps.len(), p.expected_steps.len());
        assert!(r.steps.iter().all(|s| s.status == StepStatus::Match), "{r}");
        assert_eq!(r.answers.len(), p.expected_answers.len());
    }
}

#[test]
fn uncertain_readings_are_flagged_and_checked() {
    let ps = bundled_corpus();
    let p = find(&ps, "smt24.p2").unwrap();
    let uncertain: Vec<_> = p.expected_steps.iter().filter(|s| s.tag.is_uncertain()).map(|s| s.label.as_str()).collect();
    assert_eq!(uncertain, ["half_diff", "root"]);
    let r = replay(p).unwrap();
    for label in uncertain {
        let s = r.steps.iter().find(|s| s.label == label).unwrap();
        assert_eq!(s.status, StepStatus::Match);
    }
}

#[test]
fn repeated_values_are_stored_under_distinct_labels() {
    let ps = bundled_corpus();
    let p = find(&ps, "smt24.p2").unwrap();
    let lits: Vec<_> = p
        .expected_steps
        .iter()
        .filter(|s| s.label.starts_with("diff_sq") && !s.label.ends_with("x13"))
        .map(|s| (s.label.as_str(), s.literal.as_str()))
        .collect();
    assert_eq!(lits, [("diff_sq", "0;1,40"), ("diff_sq_again", "0:1,40")]);
}

#[test]
fn answer_mismatch_is_reported() {
    let text = BUNDLED_CORPUS.replace("expect answer z = 4;30 kus", "expect answer z = 4;31 kus");
    let ps = parse_corpus(&text).unwrap();
    let r = replay(find(&ps, "smt25.p1").unwrap()).unwrap();
    assert!(!r.pass);
    assert!(r.to_string().trim_end().ends_with("z = 4;31 kus MISMATCH (got 4;30 kus)"));
}
