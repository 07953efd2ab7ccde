//! End-to-end acceptance checks. Runs as a plain program so that each
//! criterion prints one PASS/FAIL line; exits nonzero if any fails.

mod common;

use std::io::Write;
use std::process::Command;

use num_rational::BigRational;
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, TestRunner};

use common::{ratio, to_big};
use sexakit::corpus::{bundled_corpus, find, parse_corpus, replay, CorpusError, ReplayReport, BUNDLED_CORPUS};
use sexakit::units::qmul;
use sexakit::{Dimension, Error, Quantity, Sexa};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn s(text: &str) -> Sexa {
    Sexa::parse(text).expect("valid literal")
}

fn replay_bundled(id: &str) -> Result<ReplayReport, String> {
    let problems = bundled_corpus();
    let p = find(&problems, id).map_err(|e| e.to_string())?;
    let r = replay(p).map_err(|e| e.to_string())?;
    if !r.pass {
        return Err(format!("replay failed:\n{r}"));
    }
    Ok(r)
}

/// Every `(label, literal)` appears in the trace with exactly that value, in
/// the given order.
fn chain(r: &ReplayReport, want: &[(&str, &str)]) -> Outcome {
    let mut last = None;
    for (label, lit) in want {
        let step = r.trace.get(label).ok_or_else(|| format!("no step {label}"))?;
        if step.value != s(lit) {
            return Err(format!("{label}: got {}, want {lit}", step.value));
        }
        let pos = r.trace.position(label);
        if pos <= last {
            return Err(format!("{label} is out of order"));
        }
        last = pos;
    }
    Ok(())
}

fn ac1() -> Outcome {
    let r = replay_bundled("smt24.p1")?;
    chain(
        &r,
        &[
            ("half_B", "34;41,15"),
            ("half_B_sq", "20,3;13,21,33,45"),
            ("AC", "1,5;55,4,41,15"),
            ("radicand", "21,9;8,26,15"),
            ("root", "35;37,30"),
            ("root_plus", "1,10;18,45"),
            ("u", "5"),
            ("v", "3"),
            ("z", "8"),
            ("S", "32"),
            ("x", "45"),
        ],
    )
}

fn ac2() -> Outcome {
    let r = replay_bundled("smt24.p2")?;
    chain(
        &r,
        &[
            ("rhs_x13", "16;15"),
            ("diff_sq", "0;1,40"),
            ("reduced_rhs", "16;13,20"),
            ("recip_z", "0;30"),
            ("rhs_over_z", "8;6,40"),
            ("diff_sq_x13", "0;21,40"),
            ("xy_rhs", "7;45"),
            ("recip_z_x13", "6;30"),
            ("recip_z_x2", "1"),
            ("coeff_partial", "7;30"),
            ("three_x13", "39"),
            ("xy_coeff", "46;30"),
            ("xy", "0;10"),
            ("half_diff", "0;5"),
            ("half_diff_sq", "0;0,25"),
            ("radicand", "0;10,25"),
            ("root", "0;25"),
            ("x", "0;30"),
            ("y", "0;20"),
        ],
    )?;
    // Substitute back into the system with plain rationals.
    let v = |l: &str| to_big(r.trace.value(l).expect("step present"));
    let (x, y, z) = (v("x"), v("y"), v("z"));
    let sq = &x * &x + &y * &y;
    let third = &z * &sq + &x * &y * (&z + ratio(1, 1)) + &sq / ratio(13, 1);
    let ok = &x - &y == ratio(1, 6) && z == ratio(12, 1) * (&x - &y) && third == ratio(5, 4);
    if ok {
        Ok(())
    } else {
        Err(format!("(x, y, z) = ({x}, {y}, {z}) does not satisfy the system"))
    }
}

fn ac3() -> Outcome {
    let r = replay_bundled("smt25.p1")?;
    chain(
        &r,
        &[
            ("recip_reach", "0;12"),
            ("water_per_nindan", "1,12,0"),
            ("recip_workers", "0;0,1,30"),
            ("water_per_worker", "1;48"),
            ("recip_constant", "1;15"),
            ("section", "2;15"),
            ("recip_width", "2"),
            ("z", "4;30"),
            ("z_water", "3;36"),
        ],
    )?;
    for (label, lit) in [("z", "4;30"), ("z_water", "3;36")] {
        let q = r.trace.get(label).and_then(|st| st.quantity());
        if q != Some(Quantity::kus(s(lit))) {
            return Err(format!("{label} should be {lit} kus, got {q:?}"));
        }
    }
    Ok(())
}

fn ac4() -> Outcome {
    let table = [
        ("5", "0;12"),
        ("45", "0;1,20"),
        ("32", "0;1,52,30"),
        ("40,0", "0;0,1,30"),
        ("0;48", "1;15"),
        ("0;10", "6"),
        ("12", "0;5"),
    ];
    for (n, want) in table {
        let got = s(n).reciprocal().map_err(|e| e.to_string())?;
        let rendered = got.render().map_err(|e| e.to_string())?;
        if rendered != want {
            return Err(format!("recip({n}) = {rendered}, want {want}"));
        }
    }
    Ok(())
}

fn run_property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), proptest::test_runner::TestCaseError>,
) -> Outcome {
    let config = Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new(config)
        .run(&strategy, test)
        .map_err(|e| format!("{name}: {e}"))
}

fn ac5() -> Outcome {
    use common::*;
    run_property("reciprocal", regular(), |x| checks::reciprocal_inverts(&x))?;
    run_property("sqrt of square", rational(), |x| checks::sqrt_of_square(&x))?;
    run_property("parse then render", literal(), |l| checks::literal_round_trip(&l))?;
    run_property("render then parse", terminating(), |x| checks::render_parse(&x))?;
    run_property(
        "quadratic",
        (positive_regular(), terminating(), positive_terminating()),
        |(a, b, u)| checks::quadratic_matches_formula(&a, &b, &u),
    )?;
    run_property(
        "sum and difference",
        (nonnegative_terminating(), nonnegative_terminating()),
        |(y, d)| checks::sum_difference_reconstructs(&y, &d),
    )?;
    run_property(
        "volume and length",
        (positive_regular(), positive_terminating()),
        |(sec, len)| checks::volume_inverts(&sec, &len),
    )?;
    for n in 1..=10_000u64 {
        checks::regularity_matches_factoring(n).map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn exit_code(args: &[&str], corpus: Option<&std::path::Path>) -> Option<i32> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sexakit"));
    cmd.args(args).env_remove("SEXAKIT_CORPUS");
    if let Some(path) = corpus {
        cmd.arg("--corpus").arg(path);
    }
    cmd.output().ok()?.status.code()
}

fn ac6() -> Outcome {
    match s("13").reciprocal() {
        Err(Error::IrregularDivisor { factor, .. }) if factor == 13u32.into() => {}
        other => return Err(format!("recip(13) gave {other:?}")),
    }
    match Sexa::from(2).sqrt_exact() {
        Err(Error::NotAPerfectSquare { .. }) => {}
        other => return Err(format!("sqrt(2) gave {other:?}")),
    }
    match Sexa::from_ratio(1, 7).render() {
        Err(Error::NonTerminating { .. }) => {}
        other => return Err(format!("render(1/7) gave {other:?}")),
    }
    let bad = BUNDLED_CORPUS.replace("param reach = 5", "param reach = 61");
    match parse_corpus(&bad) {
        Err(CorpusError::BadLiteral { .. }) => {}
        other => return Err(format!("digit 61 gave {other:?}")),
    }

    let mut mismatching = tempfile::NamedTempFile::new().map_err(|e| e.to_string())?;
    mismatching
        .write_all(BUNDLED_CORPUS.replace("= 2;15 @", "= 2;16 @").as_bytes())
        .map_err(|e| e.to_string())?;
    let cases: [(&[&str], Option<&std::path::Path>, i32); 5] = [
        (&["replay", "--all"], None, 0),
        (&["replay", "smt25.p1"], Some(mismatching.path()), 1),
        (&["replay", "nosuch"], None, 2),
        (&["eval", "1;60"], None, 2),
        (&["sqrt", "2"], None, 3),
    ];
    for (args, corpus, want) in cases {
        let got = exit_code(args, corpus);
        if got != Some(want) {
            return Err(format!("sexakit {args:?} exited {got:?}, want {want}"));
        }
    }
    Ok(())
}

fn ac7() -> Outcome {
    let section = qmul(&Quantity::nindan(s("0;30")), &Quantity::kus(s("4;30"))).map_err(|e| e.to_string())?;
    if section != Quantity::nindan_kus(s("2;15")) {
        return Err(format!("0;30 nindan x 4;30 kus = {section}"));
    }
    let volume = qmul(&Quantity::nindan(s("45")), &Quantity::nindan_kus(s("32"))).map_err(|e| e.to_string())?;
    if volume.dim != Dimension::VolumeSar || to_big(&volume.magnitude) != BigRational::from_integer(1440.into()) {
        return Err(format!("45 nindan x 32 nindan-kus = {volume}"));
    }
    match Quantity::nindan(s("1")).checked_add(&Quantity::kus(s("1"))) {
        Err(Error::DimensionMismatch { .. }) => Ok(()),
        other => Err(format!("nindan + kus gave {other:?}")),
    }
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("AC1 SMT 24 problem 1 replay", ac1),
        ("AC2 SMT 24 problem 2 replay and system check", ac2),
        ("AC3 SMT 25 replay", ac3),
        ("AC4 reciprocal table", ac4),
        ("AC5 property suite, 1000 cases each", ac5),
        ("AC6 error paths and exit codes", ac6),
        ("AC7 dimensional checks", ac7),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(()) => println!("[PASS] {name}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
