//! Command-line front end.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::identities::verify_identities;
use crate::loops::{malbos_verify, mainid_check, tah_witness, tah_word, verify_cml3, MainIdMode};
use crate::report::Report;
use crate::rewrite::{
    case7_word, default_relation_set, dump, pattern_predicates_case7, rank_in_c, relation_span,
    soundness_failures, v_list, PatternVerdict, RelationSet, TwoWord, CASE7_LIST, CASE7_REGULAR,
};
use crate::words::{c_n_of_type, dim_cn, h_of_type, type_table, TypeVector};

/// Largest number of generators handled without `--unsafe-n`.
pub const N_CAP: u32 = 7;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "moufang", version, about = "Exact computations in the Grassmann model of free CML3")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalOpts,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit CSV.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Allow more than 7 generators or letters.
    #[arg(long, global = true)]
    pub unsafe_n: bool,
    /// Compare the output with a golden file; exit 1 on any difference.
    #[arg(long, global = true, value_name = "FILE")]
    pub expect: Option<PathBuf>,
    /// Write the output here instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Dimension of C_n with the per-type breakdown.
    Dim {
        #[arg(long)]
        n: u32,
    },
    /// h of a type vector.
    H {
        #[arg(long = "type", value_name = "A1,A2,..")]
        type_vector: TypeVector,
    },
    /// c_n of a type vector.
    Cn {
        #[arg(long)]
        n: u32,
        #[arg(long = "type", value_name = "A1,A2,..")]
        type_vector: TypeVector,
    },
    /// Types with nonzero h for n generators.
    Types {
        #[arg(long)]
        n: u32,
    },
    /// Identity suites.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 7)]
        n: u32,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The associator ((((x,y,a),a,z),t,v),a,w) in C_7.
    Tah,
    /// The relation among v_1..v_7 in C_7 or in the loop.
    Mainid {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Regular 2-words of a case.
    Regular {
        #[arg(long = "case", value_name = "A1,A2,..")]
        case: TypeVector,
        /// Relation set; defaults to the one paired with the case.
        #[arg(long)]
        set: Option<RelationSet>,
        /// Print only the regular words, one per line.
        #[arg(long)]
        list: bool,
        /// Compare with the pattern predicates (case 7 only).
        #[arg(long)]
        cross_check: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Cml3,
    Identities,
    Malbos,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Algebra,
    Loop,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// What a command produced, before formatting.
pub struct Outcome {
    pub command: &'static str,
    pub config: Value,
    pub results: Value,
    pub pass: bool,
    pub text: String,
    pub csv_header: Vec<&'static str>,
    pub csv_rows: Vec<Vec<String>>,
}

impl Outcome {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => {
                let doc = json!({
                    "command": self.command,
                    "config": self.config,
                    "results": self.results,
                    "pass": self.pass,
                });
                let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.csv_header).expect("in-memory write");
                for r in &self.csv_rows {
                    w.write_record(r).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
            }
        }
    }
}

#[derive(Debug)]
pub struct UsageError(pub String);

fn check_cap(what: &str, value: u32, unsafe_n: bool) -> Result<(), UsageError> {
    if value > N_CAP {
        if !unsafe_n {
            return Err(UsageError(format!("{what} = {value} exceeds the cap of {N_CAP}; pass --unsafe-n to run anyway")));
        }
        eprintln!("warning: {what} = {value} exceeds {N_CAP}; this may take very long");
    }
    Ok(())
}

fn report_results(r: &Report) -> Value {
    json!({
        "checked": r.len(),
        "failed": r.failures().count(),
        "summary": r.summary(),
        "failures": r.failures().collect::<Vec<_>>(),
    })
}

fn report_text(header: &str, r: &Report) -> String {
    let mut s = String::new();
    if !header.is_empty() {
        let _ = writeln!(s, "{header}");
    }
    for e in r.summary() {
        let _ = writeln!(s, "identity={} checked={} failed={}", e.identity, e.checked, e.failed);
    }
    for e in r.failures() {
        let _ = writeln!(s, "FAIL identity={} instantiation={} witness={}", e.identity, e.instantiation, e.witness.as_deref().unwrap_or(""));
    }
    let _ = writeln!(s, "pass={}", r.all_pass());
    s
}

fn report_csv(r: &Report) -> (Vec<&'static str>, Vec<Vec<String>>) {
    let rows = r
        .summary()
        .into_iter()
        .map(|e| vec![e.identity, e.checked.to_string(), e.failed.to_string()])
        .collect();
    (vec!["identity", "checked", "failed"], rows)
}

fn words_json(ws: &[TwoWord]) -> Vec<String> {
    ws.iter().map(|w| w.to_string()).collect()
}

/// Expected regular words for the cases worked out by hand.
pub fn expected_regular(case: &TypeVector, set: RelationSet) -> Option<Vec<TwoWord>> {
    let parse = |xs: &[&str]| xs.iter().map(|s| s.parse().expect("static")).collect::<Vec<TwoWord>>();
    let mut out = match (case.counts(), set) {
        ([5], RelationSet::X) => parse(&["12.34", "13.24", "14.23", "23.14"]),
        ([5, 1], RelationSet::Y) => parse(&["12.35.45", "13.25.45", "14.25.35", "23.15.45", "15.23.45"]),
        ([7], RelationSet::Z1) => CASE7_REGULAR.iter().map(|&k| case7_word(k)).collect(),
        ([5, 2], RelationSet::Z2) => v_list(),
        _ => return None,
    };
    out.sort();
    Some(out)
}

pub fn execute(cmd: &Command, g: &GlobalOpts) -> Result<Outcome, UsageError> {
    match cmd {
        Command::Dim { n } => {
            check_cap("n", *n, g.unsafe_n)?;
            eprintln!("computing dim C_{n}");
            let rep = dim_cn(*n);
            let mut text = String::new();
            let _ = writeln!(text, "n={n}");
            for t in &rep.per_type {
                let _ = writeln!(text, "type={} h={} c={}", t.type_vector, t.h, t.c_n);
            }
            let _ = writeln!(text, "vanishing={}", rep.vanishing.len());
            let _ = writeln!(text, "total={}", rep.total);
            let rows = rep.per_type.iter().map(|t| vec![t.type_vector.to_string(), t.h.to_string(), t.c_n.to_string()]).collect();
            Ok(Outcome {
                command: "dim",
                config: json!({ "n": n }),
                results: serde_json::to_value(&rep).expect("serializable"),
                pass: true,
                text,
                csv_header: vec!["type", "h", "c_n"],
                csv_rows: rows,
            })
        }
        Command::H { type_vector } => {
            let (h, note) = h_with_note(type_vector, g.unsafe_n)?;
            let mut text = format!("type={type_vector} h={h}\n");
            if let Some(n) = &note {
                let _ = writeln!(text, "note={n}");
            }
            Ok(Outcome {
                command: "h",
                config: json!({ "type": type_vector }),
                results: json!({ "type": type_vector, "h": h, "note": note }),
                pass: true,
                text,
                csv_header: vec!["type", "h"],
                csv_rows: vec![vec![type_vector.to_string(), h.to_string()]],
            })
        }
        Command::Cn { n, type_vector } => {
            check_cap("n", *n, g.unsafe_n)?;
            let (h, note) = h_with_note(type_vector, g.unsafe_n)?;
            let c = if h == 0 { 0 } else { c_n_of_type(*n, type_vector) };
            let mut text = format!("n={n} type={type_vector} h={h} c={c}\n");
            if let Some(n) = &note {
                let _ = writeln!(text, "note={n}");
            }
            Ok(Outcome {
                command: "cn",
                config: json!({ "n": n, "type": type_vector }),
                results: json!({ "n": n, "type": type_vector, "h": h, "c_n": c, "note": note }),
                pass: true,
                text,
                csv_header: vec!["n", "type", "h", "c_n"],
                csv_rows: vec![vec![n.to_string(), type_vector.to_string(), h.to_string(), c.to_string()]],
            })
        }
        Command::Types { n } => {
            check_cap("n", *n, g.unsafe_n)?;
            let table = type_table(*n);
            let nonzero: Vec<&TypeVector> = table.iter().filter(|(_, h)| *h > 0).map(|(a, _)| a).collect();
            let text = nonzero.iter().map(|a| format!("type={a}\n")).collect();
            Ok(Outcome {
                command: "types",
                config: json!({ "n": n }),
                results: json!({ "types": nonzero, "count": nonzero.len() }),
                pass: true,
                text,
                csv_header: vec!["type"],
                csv_rows: nonzero.iter().map(|a| vec![a.to_string()]).collect(),
            })
        }
        Command::Verify { suite, n, samples, seed } => {
            check_cap("n", *n, g.unsafe_n)?;
            eprintln!("running {suite:?} suite, n={n}, samples={samples}, seed={seed}");
            let r = match suite {
                Suite::Cml3 => verify_cml3(*n, *samples, *seed),
                Suite::Identities => verify_identities(*n, *samples, *seed),
                Suite::Malbos => malbos_verify(*n, *samples, *seed),
            };
            let (csv_header, csv_rows) = report_csv(&r);
            Ok(Outcome {
                command: "verify",
                config: json!({ "suite": suite, "n": n, "samples": samples, "seed": seed }),
                results: report_results(&r),
                pass: r.all_pass(),
                text: report_text("", &r),
                csv_header,
                csv_rows,
            })
        }
        Command::Tah => {
            let w = tah_witness();
            let nonzero = !w.is_zero();
            let text = format!("word={}\nvalue={w}\nterms={}\nnonzero={nonzero}\n", tah_word(), w.len());
            Ok(Outcome {
                command: "tah",
                config: json!({}),
                results: json!({ "word": tah_word().to_string(), "value": w.to_string(), "terms": w.len(), "nonzero": nonzero }),
                pass: nonzero,
                text,
                csv_header: vec!["value", "terms", "nonzero"],
                csv_rows: vec![vec![w.to_string(), w.len().to_string(), nonzero.to_string()]],
            })
        }
        Command::Mainid { mode, samples, seed } => {
            eprintln!("checking main identity, mode {mode:?}");
            let m = match mode {
                Mode::Algebra => MainIdMode::Algebra,
                Mode::Loop => MainIdMode::Loop,
            };
            let r = mainid_check(m, *samples, *seed);
            let value = match mode {
                Mode::Algebra if r.all_pass() => "0",
                Mode::Loop if r.all_pass() => "1",
                _ => "nontrivial",
            };
            let mut config = json!({ "mode": mode });
            if *mode == Mode::Loop {
                config["samples"] = json!(samples);
                config["seed"] = json!(seed);
            }
            let mut results = report_results(&r);
            results["value"] = json!(value);
            let (csv_header, csv_rows) = report_csv(&r);
            Ok(Outcome {
                command: "mainid",
                config,
                results,
                pass: r.all_pass(),
                text: report_text(&format!("value={value}"), &r),
                csv_header,
                csv_rows,
            })
        }
        Command::Regular { case, set, list, cross_check } => {
            if case.letters() > N_CAP {
                check_cap("letters", case.letters(), g.unsafe_n)?;
            }
            let set = set.unwrap_or_else(|| default_relation_set(case));
            if *cross_check && case.counts() != [7] {
                return Err(UsageError("--cross-check applies to case 7 only".into()));
            }
            eprintln!("reducing relation span for case {case} with {set}");
            Ok(regular_outcome(case, set, *list, *cross_check))
        }
    }
}

fn h_with_note(a: &TypeVector, unsafe_n: bool) -> Result<(usize, Option<String>), UsageError> {
    if a.leaves().is_multiple_of(2) {
        return Ok((0, Some(format!("a 3-word has an odd number of leaves; this type has {}", a.leaves()))));
    }
    check_cap("letters", a.letters(), unsafe_n)?;
    Ok((h_of_type(a), None))
}

fn regular_outcome(case: &TypeVector, set: RelationSet, list: bool, cross_check: bool) -> Outcome {
    let rows = relation_span(case, set);
    let unsound = soundness_failures(&rows);
    let rep = crate::rewrite::regular_from_rows(case, set, rows);
    let h = h_of_type(case);
    let rank = rank_in_c(&rep.regular);
    let expected = expected_regular(case, set);
    let mut sorted = rep.regular.clone();
    sorted.sort();
    let matches_expected = expected.as_ref().map(|e| *e == sorted);
    let mut pass = unsound.is_empty() && rep.bound >= h && matches_expected != Some(false);

    let mut cross = Value::Null;
    let mut cross_text = String::new();
    if cross_check {
        let mut mismatches = Vec::new();
        let mut verdicts = Vec::new();
        for (i, s) in CASE7_LIST.iter().enumerate() {
            let w: TwoWord = s.parse().expect("static");
            let v = pattern_predicates_case7(&w).expect("type (7) word");
            let span_regular = rep.regular.contains(&w);
            if span_regular != (v == PatternVerdict::Regular) {
                mismatches.push(i + 1);
            }
            verdicts.push(json!({ "number": i + 1, "word": s, "pattern": v, "span_regular": span_regular }));
        }
        pass &= mismatches.is_empty();
        let _ = writeln!(cross_text, "cross_check mismatches={}", mismatches.len());
        cross = json!({ "agree": mismatches.is_empty(), "mismatches": mismatches, "verdicts": verdicts });
    }

    let text = if list {
        dump(&rep.regular)
    } else {
        let mut t = format!(
            "case={} set={} universe={} rows={} irregular={} bound={} rank_in_c={} h={}\n",
            case,
            set,
            rep.universe,
            rep.relation_rows,
            rep.irregular.len(),
            rep.bound,
            rank,
            h
        );
        let _ = writeln!(t, "soundness_failures={}", unsound.len());
        if let Some(m) = matches_expected {
            let _ = writeln!(t, "matches_expected={m}");
        }
        t.push_str(&cross_text);
        let _ = writeln!(t, "pass={pass}");
        t
    };
    let csv_rows = rep
        .regular
        .iter()
        .map(|w| vec![w.to_string(), "regular".to_string()])
        .chain(rep.irregular.iter().map(|w| vec![w.to_string(), "irregular".to_string()]))
        .collect();
    Outcome {
        command: "regular",
        config: json!({ "case": case, "set": set, "list": list, "cross_check": cross_check }),
        results: json!({
            "case": case,
            "relation_set": set,
            "universe": rep.universe,
            "relation_rows": rep.relation_rows,
            "regular": words_json(&rep.regular),
            "irregular": words_json(&rep.irregular),
            "bound": rep.bound,
            "rank_in_c": rank,
            "h": h,
            "soundness_failures": unsound.len(),
            "matches_expected": matches_expected,
            "cross_check": cross,
        }),
        pass,
        text,
        csv_header: vec!["word", "status"],
        csv_rows,
    }
}

/// Line-level difference between produced and expected output.
pub fn golden_diff(actual: &str, expected: &str) -> Vec<String> {
    let a: Vec<&str> = actual.lines().collect();
    let e: Vec<&str> = expected.lines().collect();
    let mut out = Vec::new();
    for i in 0..a.len().max(e.len()) {
        match (e.get(i), a.get(i)) {
            (Some(x), Some(y)) if x == y => {}
            (x, y) => out.push(format!("line {}: expected {:?}, got {:?}", i + 1, x.unwrap_or(&""), y.unwrap_or(&""))),
        }
    }
    out
}

/// Parses arguments, runs, writes output; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let g = &cli.global;
    if g.threads == 0 {
        eprintln!("error: --threads must be at least 1");
        return EXIT_USAGE;
    }
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(g.threads).build_global() {
        eprintln!("warning: thread pool already initialized: {e}");
    }
    let format = if g.json {
        Format::Json
    } else if g.csv {
        Format::Csv
    } else {
        Format::Text
    };
    let outcome = match execute(&cli.command, g) {
        Ok(o) => o,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let rendered = outcome.render(format);
    match &g.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => print!("{rendered}"),
    }
    let mut pass = outcome.pass;
    if let Some(path) = &g.expect {
        match std::fs::read_to_string(path) {
            Ok(expected) => {
                let diff = golden_diff(&rendered, &expected);
                if !diff.is_empty() {
                    pass = false;
                    for d in diff {
                        eprintln!("golden mismatch: {d}");
                    }
                }
            }
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
    }
    if pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}
