//! Acceptance criteria, one PASS/FAIL line each. All comparisons are exact.

use std::process::Command;
use std::time::Instant;

use moufang::gf3::Gf3;
use moufang::identities::verify_identities;
use moufang::linalg::rank_and_kernel;
use moufang::loops::{malbos_verify, mainid_check, tah_witness, v_words, verify_cml3, MainIdMode};
use moufang::rewrite::{
    case7_word, pattern_predicates_case7, rank_in_c, regular_words, relation_span, soundness_failures, v_list,
    PatternVerdict, RelationSet, TwoWord, CASE7_REGULAR,
};
use moufang::words::{dim_cn, enumerate_types, h_of_type, identity, word_vectors, TypeVector};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn tv(s: &str) -> TypeVector {
    s.parse().expect("type vector")
}

fn words(list: &[&str]) -> Vec<TwoWord> {
    let mut v: Vec<TwoWord> = list.iter().map(|s| s.parse().expect("2-word")).collect();
    v.sort();
    v
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Outcome {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn dimensions() -> Outcome {
    for (n, want) in [(3, 4u128), (4, 12), (5, 49), (6, 220), (7, 1014)] {
        expect_eq(&format!("dim C_{n}"), dim_cn(n).total, want)?;
    }
    Ok(())
}

fn h_table() -> Outcome {
    for s in 0..=4 {
        let a = if s == 0 { tv("3") } else { tv(&format!("3,{s}")) };
        expect_eq(&format!("h({a})"), h_of_type(&a), 1)?;
    }
    for (a, want) in [("6,0,1", 1), ("5", 4), ("5,1", 5), ("5,2", 6), ("7", 20)] {
        expect_eq(&format!("h({a})"), h_of_type(&tv(a)), want)?;
    }
    Ok(())
}

fn c7_table() -> Outcome {
    let expected: [(&str, u128); 11] = [
        ("1", 7),
        ("3", 35),
        ("5", 84),
        ("3,1", 140),
        ("7", 20),
        ("5,1", 210),
        ("3,2", 210),
        ("3,3", 140),
        ("6,0,1", 7),
        ("5,2", 126),
        ("3,4", 35),
    ];
    let report = dim_cn(7);
    for (a, want) in expected {
        let row = report.per_type.iter().find(|t| t.type_vector == tv(a)).ok_or(format!("type {a} missing"))?;
        expect_eq(&format!("c7({a})"), row.c_n, want)?;
    }
    let mut got = enumerate_types(7);
    got.sort();
    let mut want: Vec<TypeVector> = expected.iter().map(|(a, _)| tv(a)).collect();
    want.sort();
    expect_eq("types of C_7", got, want)
}

fn v_kernel_and_main_identity() -> Outcome {
    let rows = word_vectors(&v_words(), identity).map_err(|e| e.to_string())?;
    let r = rank_and_kernel(&rows);
    expect_eq("rank v1..v7", r.rank, 6)?;
    let want: Vec<Gf3> = [1, 1, 0, 2, 1, 1, 1].into_iter().map(Gf3::new).collect();
    expect_eq("kernel", r.kernel_basis, vec![want])?;
    let alg = mainid_check(MainIdMode::Algebra, 0, 0);
    if !alg.all_pass() {
        return Err(format!("algebra mode: {:?}", alg.failures().next()));
    }
    let lp = mainid_check(MainIdMode::Loop, 100, 0);
    expect_eq("loop mode instantiations", lp.len(), 102)?;
    if let Some(f) = lp.failures().next() {
        return Err(format!("loop mode: {f:?}"));
    }
    Ok(())
}

fn tah() -> Outcome {
    let t = Instant::now();
    let w = tah_witness();
    if w.is_zero() {
        return Err("witness vanishes".into());
    }
    if t.elapsed().as_secs_f64() >= 1.0 {
        return Err(format!("took {:?}", t.elapsed()));
    }
    Ok(())
}

fn regular_sets() -> Outcome {
    let cases: [(&str, RelationSet, Vec<TwoWord>); 4] = [
        ("5", RelationSet::X, words(&["12.34", "13.24", "23.14", "14.23"])),
        ("5,1", RelationSet::Y, words(&["12.35.45", "13.25.45", "23.15.45", "14.25.35", "15.23.45"])),
        ("7", RelationSet::Z1, {
            let mut v: Vec<TwoWord> = CASE7_REGULAR.iter().map(|&k| case7_word(k)).collect();
            v.sort();
            v
        }),
        ("5,2", RelationSet::Z2, {
            let mut v = v_list();
            v.sort();
            v
        }),
    ];
    for (case, set, want) in cases {
        let a = tv(case);
        let rows = relation_span(&a, set);
        let bad = soundness_failures(&rows);
        if !bad.is_empty() {
            return Err(format!("case ({case}): {} unsound relation rows", bad.len()));
        }
        let rep = regular_words(&a, set);
        expect_eq(&format!("bound ({case})"), rep.bound, want.len())?;
        expect_eq(&format!("regular ({case})"), &rep.regular, &want)?;
    }
    expect_eq("rank in C of v1..v7", rank_in_c(&v_list()), 6)?;
    let rep = regular_words(&tv("7"), RelationSet::Z1);
    for k in 1..=90 {
        let w = case7_word(k);
        let by_pattern = pattern_predicates_case7(&w).map_err(|e| e.to_string())? == PatternVerdict::Regular;
        let by_span = rep.regular.binary_search(&w).is_ok();
        if by_pattern != by_span {
            return Err(format!("word {k} ({w}): pattern {by_pattern}, span {by_span}"));
        }
    }
    Ok(())
}

fn suites() -> Outcome {
    for (name, report) in [
        ("cml3", verify_cml3(7, 500, 0)),
        ("identities", verify_identities(7, 500, 0)),
        ("malbos", malbos_verify(7, 500, 0)),
    ] {
        if report.is_empty() {
            return Err(format!("{name}: nothing checked"));
        }
        if let Some(f) = report.failures().next() {
            return Err(format!("{name}: {} failures, first {f:?}", report.failures().count()));
        }
    }
    Ok(())
}

fn run_json(args: &[&str], threads: &str) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_moufang"))
        .args(["--json", "--threads", threads])
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {}", out.status));
    }
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let commands: &[&[&str]] = &[
        &["dim", "--n", "7"],
        &["h", "--type", "7"],
        &["cn", "--n", "7", "--type", "5,2"],
        &["types", "--n", "7"],
        &["tah"],
        &["verify", "--suite", "cml3", "--n", "5", "--samples", "20"],
        &["verify", "--suite", "identities", "--n", "7", "--samples", "50"],
        &["verify", "--suite", "malbos", "--n", "7", "--samples", "50"],
        &["mainid", "--mode", "algebra"],
        &["mainid", "--mode", "loop", "--samples", "5"],
        &["regular", "--case", "7", "--cross-check"],
        &["regular", "--case", "5,2"],
    ];
    for args in commands {
        let one = run_json(args, "1")?;
        let eight = run_json(args, "8")?;
        if one != eight {
            return Err(format!("{args:?} differs between 1 and 8 threads"));
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 dimension table", dimensions),
        ("2 h table", h_table),
        ("3 per-type c7 values and types", c7_table),
        ("4 v-kernel and main identity", v_kernel_and_main_identity),
        ("5 TAH witness", tah),
        ("6 regular words", regular_sets),
        ("7 identity suites", suites),
        ("8 determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (name, f) in criteria {
        let t = Instant::now();
        match f() {
            Ok(()) => println!("PASS {name} ({:.1?})", t.elapsed()),
            Err(e) => {
                println!("FAIL {name}: {e}");
                failed.push(name);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed: {failed:?}");
        std::process::exit(1);
    }
}
