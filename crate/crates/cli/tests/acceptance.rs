//! Acceptance suite. Runs every criterion at its stated budget and prints
//! one PASS/FAIL line each; exits nonzero if any criterion fails.

use std::path::Path;
use std::process::Command as Process;
use std::time::{Duration, Instant};

use num::{One, Zero};
use tnlu_cli::{matrix_json, run, Command, Format, Input, Method, RunConfig};
use tnlu_core::identities::{
    CAUCHY_BINET, LAPLACE_COLS, LAPLACE_OVERLAP_ZERO, LAPLACE_ROWS, MUIR, SYLVESTER, VANISHING,
};
use tnlu_core::matrix::parse_scalar;
use tnlu_core::{
    all_classes, detect_class, explicit_decompose, in_class_m, is_tnn, neville_decompose,
    neville_decompose_with, neville_move, random_tnn, reconstruct_lu, selftest, tnn_corpus, ClassDesc,
    Error, IndexSet, LUPair, Mat, NevilleOptions, Scalar, SelftestConfig, DEFAULT_BRUTEFORCE_LIMIT,
};

const CORPUS_SEED: u64 = 20240611;
const CORPUS_SIZE: usize = 240;

type Outcome = Result<String, String>;
type Check<'a> = (usize, &'static str, u64, Box<dyn Fn() -> Outcome + 'a>);

fn cofactor_det(a: &Mat) -> Scalar {
    let n = a.rows();
    if n == 0 {
        return Scalar::one();
    }
    let mut acc = Scalar::zero();
    for j in 1..=n {
        if a[(1, j)].is_zero() {
            continue;
        }
        let sub = a.delete_row(1).unwrap().delete_col(j).unwrap();
        let term = &a[(1, j)] * cofactor_det(&sub);
        if j % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn cofactor_minor(a: &Mat, rows: &IndexSet, cols: &IndexSet) -> Scalar {
    cofactor_det(&a.submatrix(rows, cols).unwrap())
}

fn set(v: &[usize]) -> IndexSet {
    IndexSet::new(v.to_vec()).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn three_ways(a: &Mat, d: &ClassDesc) -> Result<[LUPair; 3], String> {
    let ex = explicit_decompose(a, d).map_err(|e| format!("explicit: {e}"))?;
    let rc = reconstruct_lu(a, d).map_err(|e| format!("reconstruct: {e}"))?;
    let (nv, _) = neville_decompose(a, false).map_err(|e| format!("neville: {e}"))?;
    Ok([ex, rc, nv])
}

fn golden(a: &Mat, class: ClassDesc, l: Mat, u: Mat) -> Result<(), String> {
    let found = detect_class(a).map_err(|e| e.to_string())?;
    ensure(found.as_ref() == Some(&class), || format!("class {found:?}"))?;
    for (name, lu) in ["explicit", "reconstruct", "neville"].iter().zip(three_ways(a, &class)?) {
        ensure(lu.l == l && lu.u == u && lu.class == class, || {
            format!("{name}: L = {:?}, U = {:?}", matrix_json(&lu.l), matrix_json(&lu.u))
        })?;
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let a = Mat::from_rows(&[[0, 0, 0], [1, 0, 1], [1, 0, 1]]);
    golden(&a, ClassDesc::new(set(&[2]), set(&[1])).unwrap(), Mat::column(&[0, 1, 1]), Mat::from_rows(&[[1, 0, 1]]))?;
    Ok("class ({2},{1}), L = [0;1;1], U = [1,0,1] by all three methods".into())
}

fn criterion_2() -> Outcome {
    let a = Mat::from_rows(&[[0, 1, 2, 1], [0, 2, 4, 2], [0, 1, 2, 3], [0, 3, 6, 11]]);
    let class = ClassDesc::new(set(&[1, 3]), set(&[2, 4])).unwrap();
    let l = Mat::from_rows(&[[1, 0], [2, 0], [1, 1], [3, 4]]);
    let u = Mat::from_rows(&[[0, 1, 2, 1], [0, 0, 0, 2]]);
    golden(&a, class, l, u)?;

    let (_, trace) = neville_decompose(&a, true).map_err(|e| e.to_string())?;
    let stages = trace.stages.as_ref().unwrap();
    let s = |rows: &[&[&str]]| {
        Mat::from_scalar_rows(
            rows.iter()
                .map(|r| r.iter().map(|x| parse_scalar(x).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    };
    let expected: [(Mat, Mat); 6] = [
        (
            s(&[&["1", "0", "0", "0"], &["0", "1", "0", "0"], &["0", "0", "1", "0"], &["0", "0", "3", "1"]]),
            s(&[&["0", "1", "2", "1"], &["0", "2", "4", "2"], &["0", "1", "2", "3"], &["0", "0", "0", "2"]]),
        ),
        (
            s(&[&["1", "0", "0", "0"], &["0", "1", "0", "0"], &["0", "1/2", "1", "0"], &["0", "3/2", "3", "1"]]),
            s(&[&["0", "1", "2", "1"], &["0", "2", "4", "2"], &["0", "0", "0", "2"], &["0", "0", "0", "2"]]),
        ),
        (
            s(&[&["1", "0", "0", "0"], &["2", "1", "0", "0"], &["1", "1/2", "1", "0"], &["3", "3/2", "3", "1"]]),
            s(&[&["0", "1", "2", "1"], &["0", "0", "0", "0"], &["0", "0", "0", "2"], &["0", "0", "0", "2"]]),
        ),
        (
            s(&[&["1", "0", "0"], &["2", "0", "0"], &["1", "1", "0"], &["3", "3", "1"]]),
            s(&[&["0", "1", "2", "1"], &["0", "0", "0", "2"], &["0", "0", "0", "2"]]),
        ),
        (
            s(&[&["1", "0", "0"], &["2", "0", "0"], &["1", "1", "0"], &["3", "4", "1"]]),
            s(&[&["0", "1", "2", "1"], &["0", "0", "0", "2"], &["0", "0", "0", "0"]]),
        ),
        (
            s(&[&["1", "0"], &["2", "0"], &["1", "1"], &["3", "4"]]),
            s(&[&["0", "1", "2", "1"], &["0", "0", "0", "2"]]),
        ),
    ];
    ensure(stages.len() == 6, || format!("{} stages", stages.len()))?;
    for (k, (got, want)) in stages.iter().zip(&expected).enumerate() {
        ensure(got == want, || format!("stage {} differs", k + 1))?;
    }
    let text = trace.to_text();
    ensure(text == "E 3 2 3\nE 2 2 1/2\nE 1 2 2\nD 2\nE 2 4 1\nD 3\n", || format!("trace {text:?}"))?;
    Ok("class ({1,3},{2,4}); six stages match; multipliers 3, 1/2, 2, 1 (3/2 appears in L)".into())
}

fn corpus() -> Vec<Mat> {
    tnn_corpus(CORPUS_SEED, CORPUS_SIZE, 6, 7)
}

fn criterion_3(corpus: &[Mat]) -> Outcome {
    let mut max_shape = (0, 0);
    for (k, a) in corpus.iter().enumerate() {
        let d = detect_class(a).map_err(|e| format!("case {k}: {e}"))?.ok_or(format!("case {k}: no class"))?;
        let [ex, rc, nv] = three_ways(a, &d).map_err(|e| format!("case {k}: {e}"))?;
        ensure(ex == rc && rc == nv, || format!("case {k}: methods disagree"))?;
        ensure(&ex.l.matmul(&ex.u).unwrap() == a, || format!("case {k}: L U != A"))?;
        max_shape = (max_shape.0.max(a.rows()), max_shape.1.max(a.cols()));
    }
    Ok(format!("{} matrices up to {}x{}, three methods agree, L U = A", corpus.len(), max_shape.0, max_shape.1))
}

fn criterion_4(corpus: &[Mat]) -> Outcome {
    let mut checked = 0;
    for (k, a) in corpus.iter().enumerate().filter(|(_, a)| a.rows().min(a.cols()) <= 6) {
        let d = detect_class(a).unwrap().unwrap();
        let lu = explicit_decompose(a, &d).map_err(|e| e.to_string())?;
        ensure(is_tnn(&lu.l).unwrap().is_tnn, || format!("case {k}: L not TNN"))?;
        ensure(is_tnn(&lu.u).unwrap().is_tnn, || format!("case {k}: U not TNN"))?;
        checked += 1;
    }
    Ok(format!("{checked} factor pairs totally nonnegative"))
}

fn criterion_5(corpus: &[Mat]) -> Outcome {
    let mut small = 0;
    for (k, a) in corpus.iter().enumerate() {
        let d = detect_class(a).unwrap().unwrap();
        ensure(in_class_m(a, &d).unwrap(), || format!("case {k}: not in detected class"))?;
        if a.rows() <= 4 && a.cols() <= 4 {
            let classes = all_classes(a, DEFAULT_BRUTEFORCE_LIMIT).unwrap();
            ensure(classes == vec![d.clone()], || format!("case {k}: classes {classes:?}"))?;
            small += 1;
        }
    }
    ensure(small >= 20, || format!("only {small} small cases"))?;
    Ok(format!("{} in detected class; {small} small cases have exactly one class", corpus.len()))
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    let mut minors = 0;
    let mut seed = 0u64;
    while checked < 50 {
        seed += 1;
        ensure(seed < 10_000, || "not enough matrices with a legal move".into())?;
        let a = random_tnn(5, 5, CORPUS_SEED ^ seed, 25);
        let first = (1..=5)
            .flat_map(|t| (1..5).map(move |s| (s, t)))
            .find_map(|(s, t)| neville_move(&a, s, t).ok().map(|b| (s, t, b)));
        let Some((s, t, b)) = first else { continue };
        let lambda = &a[(s + 1, t)] / &a[(s, t)];
        for k in 1..=5 {
            for i in IndexSet::combinations(5, k) {
                for j in IndexSet::combinations(5, k) {
                    let got = cofactor_minor(&b, &i, &j);
                    let want = if i.contains(s) || !i.contains(s + 1) {
                        cofactor_minor(&a, &i, &j)
                    } else {
                        let moved = i.without(s + 1).with(s).unwrap();
                        cofactor_minor(&a, &i, &j) - &lambda * cofactor_minor(&a, &moved, &j)
                    };
                    ensure(got == want, || format!("seed {seed}, move ({s},{t}), minor [{i}|{j}]"))?;
                    minors += 1;
                }
            }
        }
        checked += 1;
    }
    Ok(format!("{checked} matrices, {minors} minors against cofactor expansion"))
}

fn criterion_7(corpus: &[Mat]) -> Outcome {
    let (mut runs, mut moves) = (0, 0);
    for (k, a) in corpus.iter().enumerate().filter(|(_, a)| a.rows().min(a.cols()) <= 5) {
        let (_, trace) = neville_decompose(a, true).map_err(|e| format!("case {k}: {e}"))?;
        for (step, (_, u)) in trace.stages.unwrap().iter().enumerate() {
            ensure(is_tnn(u).unwrap().is_tnn, || format!("case {k}: U not TNN after move {}", step + 1))?;
            moves += 1;
        }
        runs += 1;
    }
    Ok(format!("{runs} runs, U totally nonnegative after all {moves} moves"))
}

fn criterion_8() -> Outcome {
    let report = selftest(&SelftestConfig {
        seed: CORPUS_SEED,
        instances: 100,
        ..SelftestConfig::default()
    })
    .map_err(|e| e.to_string())?;
    for name in [LAPLACE_ROWS, LAPLACE_COLS, CAUCHY_BINET, SYLVESTER, MUIR, VANISHING] {
        let t = report.get(name).ok_or(format!("{name} missing"))?;
        ensure(t.passed >= 100 && t.failed == 0, || format!("{name}: {t:?}"))?;
    }
    let overlap = report.get(LAPLACE_OVERLAP_ZERO).ok_or("overlap branch missing")?;
    ensure(overlap.passed > 0 && overlap.failed == 0, || format!("overlap: {overlap:?}"))?;
    Ok(format!(
        "100 instances each, zero failures; overlapping Laplace branch exactly 0 in {} cases",
        overlap.passed
    ))
}

fn criterion_9() -> Outcome {
    let b = Mat::from_rows(&[[0, 1], [1, 1]]);
    ensure(detect_class(&b).unwrap().is_none(), || "detect_class accepted [[0,1],[1,1]]".into())?;
    let rep = is_tnn(&b).unwrap();
    ensure(
        !rep.is_tnn && rep.witness.as_ref().map(|w| w.value.clone()) == Some(Scalar::from_integer((-1).into())),
        || format!("is_tnn report {rep:?}"),
    )?;
    let poisoned = [
        b.clone(),
        Mat::from_rows(&[[1, 1, 1], [1, 0, 1], [1, 1, 1]]),
        Mat::from_rows(&[[0, 1, 1], [1, 1, 1], [1, 1, 1]]),
        Mat::from_rows(&[[1, 0, 0], [0, 1, 0], [1, 0, 1]]),
        Mat::from_rows(&[[1, 2], [3, 4]]),
    ];
    let dynamic = NevilleOptions {
        record_stages: false,
        tnn_precheck_limit: None,
    };
    for a in &poisoned {
        for (mode, res) in [("default", neville_decompose(a, false)), ("dynamic", neville_decompose_with(a, &dynamic))] {
            match res {
                Err(Error::NotTnn(_)) => {}
                Err(e) => return Err(format!("{mode} on {:?}: wrong error {e}", matrix_json(a))),
                Ok(_) => return Err(format!("{mode} on {:?}: returned a decomposition", matrix_json(a))),
            }
        }
    }
    // random poisoned zero patterns: zero one entry of a positive matrix
    let mut count = 0;
    for seed in 0..60u64 {
        let mut rows = random_tnn(4, 4, seed, 40).row_vecs();
        for r in rows.iter_mut() {
            for x in r.iter_mut() {
                *x += Scalar::one();
            }
        }
        let (i, j) = (1 + seed as usize % 3, 1 + (seed as usize / 3) % 3);
        rows[i - 1][j - 1] = Scalar::zero();
        let a = Mat::from_scalar_rows(rows).unwrap();
        ensure(!is_tnn(&a).unwrap().is_tnn, || format!("seed {seed}: poisoned matrix still TNN"))?;
        ensure(matches!(neville_decompose(&a, false), Err(Error::NotTnn(_))), || {
            format!("seed {seed}: no NotTnn error")
        })?;
        count += 1;
    }
    Ok(format!("[[0,1],[1,1]] rejected (witness -1); {} poisoned inputs raise the TNN error", poisoned.len() + count))
}

fn criterion_10(corpus: &[Mat]) -> Outcome {
    for (k, a) in corpus.iter().enumerate() {
        let text = a.to_text();
        ensure(Mat::parse(&text).as_ref() == Ok(a), || format!("case {k}: text round trip"))?;
        let rows: Vec<Vec<Scalar>> = matrix_json(a)
            .iter()
            .map(|r| r.iter().map(|x| parse_scalar(x).unwrap()).collect())
            .collect();
        ensure(&Mat::from_scalar_rows(rows).unwrap() == a, || format!("case {k}: structured round trip"))?;
        let cfg = RunConfig::new(Command::Detect).input(Input::Inline(
            a.row_vecs()
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                .collect::<Vec<_>>()
                .join(";"),
        ));
        let out = run(&cfg);
        ensure(out.status == 0 && out.stdout != "none\n", || format!("case {k}: cli detect {out:?}"))?;
    }

    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests");
    let bin = env!("CARGO_BIN_EXE_tnlu");
    let mut goldens = 0;
    for (input, method, trace, file) in [
        ("cryer", "explicit", false, "cryer_explicit"),
        ("cryer", "reconstruct", false, "cryer_reconstruct"),
        ("cryer", "neville", false, "cryer_neville"),
        ("four", "explicit", false, "four_explicit"),
        ("four", "reconstruct", false, "four_reconstruct"),
        ("four", "neville", false, "four_neville"),
        ("four", "neville", true, "four_neville_trace"),
    ] {
        let want = std::fs::read(dir.join("golden").join(format!("{file}.json"))).map_err(|e| e.to_string())?;
        let path = dir.join("data").join(format!("{input}.txt"));
        let mut cmd = Process::new(bin);
        cmd.args(["decompose", path.to_str().unwrap(), "--method", method, "--format", "structured"]);
        if trace {
            cmd.arg("--trace");
        }
        let out = cmd.output().map_err(|e| e.to_string())?;
        ensure(out.status.success() && out.stdout == want, || format!("{file}: output differs from golden"))?;

        let m = match method {
            "explicit" => Method::Explicit,
            "reconstruct" => Method::Reconstruct,
            _ => Method::Neville,
        };
        let cfg = RunConfig::new(Command::Decompose {
            method: m,
            trace,
            class: None,
        })
        .input(Input::Path(path))
        .format(Format::Structured);
        ensure(run(&cfg).stdout.as_bytes() == want.as_slice(), || format!("{file}: library output differs"))?;
        goldens += 1;
    }
    Ok(format!("{} matrices round-trip; {goldens} golden documents byte-equal", corpus.len()))
}

fn main() {
    let corpus = corpus();
    let criteria: Vec<Check> = vec![
        (1, "golden example 1", 1, Box::new(criterion_1)),
        (2, "golden example 2", 1, Box::new(criterion_2)),
        (3, "triple-path agreement", 60, Box::new(|| criterion_3(&corpus))),
        (4, "factor total nonnegativity", 120, Box::new(|| criterion_4(&corpus))),
        (5, "class verification and uniqueness", 120, Box::new(|| criterion_5(&corpus))),
        (6, "neville-move minor law", 60, Box::new(criterion_6)),
        (7, "TNN preservation per move", 120, Box::new(|| criterion_7(&corpus))),
        (8, "identity suite", 30, Box::new(criterion_8)),
        (9, "negative controls", 60, Box::new(criterion_9)),
        (10, "CLI round trip and goldens", 60, Box::new(|| criterion_10(&corpus))),
    ];
    let mut failed = 0;
    for (n, name, budget, check) in &criteria {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > Duration::from_secs(*budget) => Err(format!("{msg}; over budget of {budget} s")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("criterion {n:>2} PASS  {name} ({:.2} s): {msg}", took.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name} ({:.2} s): {msg}", took.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
