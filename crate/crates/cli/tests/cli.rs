use std::io::Cursor;
use std::process::Command as Process;

use clap::Parser;
use proptest::prelude::*;
use tnlu_cli::*;
use tnlu_core::{random_tnn, Mat};

fn inline(cmd: Command, m: &str) -> RunConfig {
    RunConfig::new(cmd).input(Input::Inline(m.into()))
}

fn decompose(method: Method) -> Command {
    Command::Decompose {
        method,
        trace: false,
        class: None,
    }
}

fn cli(args: &[&str]) -> RunConfig {
    let mut argv = vec!["tnlu"];
    argv.extend_from_slice(args);
    RunConfig::from(Cli::try_parse_from(argv).unwrap())
}

#[test]
fn cryer_auto() {
    let out = run(&inline(decompose(Method::Auto), "0 0 0; 1 0 1; 1 0 1"));
    assert_eq!(out.status, 0);
    assert_eq!(
        out.stdout,
        "method: explicit\ncross-check: neville\nclass: r={2}, c={1}\nL:\n3 1\n0\n1\n1\nU:\n1 3\n1 0 1\n"
    );
}

#[test]
fn detect_non_member_prints_none() {
    let out = run(&inline(Command::Detect, "0 1; 1 1"));
    assert_eq!((out.status, out.stdout.as_str()), (0, "none\n"));
    let out = run(&inline(Command::Detect, "0 1; 1 1").format(Format::Structured));
    assert!(out.stdout.contains("\"found\": false"));
    assert!(out.stdout.contains("\"class\": null"));
}

#[test]
fn check_tnn_reports_witness() {
    let out = run(&inline(Command::CheckTnn, "0 1; 1 1"));
    assert_eq!(out.stdout, "tnn: false\nwitness: [{1,2}|{1,2}] = -1\n");
    assert_eq!(run(&inline(Command::CheckTnn, "0 0 0;1 0 1;1 0 1")).stdout, "tnn: true\n");
}

#[test]
fn error_categories() {
    let cases = [
        (inline(decompose(Method::Auto), "0 1; 1 1"), 5, "class-not-found"),
        (inline(decompose(Method::Neville), "1 2; 3 4"), 6, "not-tnn"),
        (inline(decompose(Method::Auto), "1 x"), 4, "parse"),
        (inline(decompose(Method::Auto), "1 2; 3"), 4, "parse"),
        (RunConfig::new(Command::Detect).input(Input::Path("/no/such/file".into())), 3, "io"),
        (RunConfig::new(Command::Detect), 9, "invalid-input"),
    ];
    for (cfg, code, cat) in cases {
        let out = run(&cfg);
        assert_eq!(out.status, code, "{cfg:?}");
        assert!(out.stderr.starts_with(&format!("error: {cat}: ")), "{}", out.stderr);
        let structured = run(&cfg.format(Format::Structured));
        assert!(structured.stdout.contains(&format!("\"category\": \"{cat}\"")));
    }
}

#[test]
fn wrong_declared_class() {
    let cfg = inline(
        Command::Decompose {
            method: Method::Explicit,
            trace: false,
            class: Some(parse_class("1:1").unwrap()),
        },
        "0 0 0; 1 0 1; 1 0 1",
    );
    assert_eq!(run(&cfg).status, 7);
}

#[test]
fn non_tnn_member_decomposes_without_cross_check() {
    let out = run(&inline(decompose(Method::Auto), "1 2; 3 4").format(Format::Structured));
    assert_eq!(out.status, 0);
    assert!(out.stdout.contains("\"cross_check\": null"));
    let traced = inline(
        Command::Decompose {
            method: Method::Auto,
            trace: true,
            class: None,
        },
        "1 2; 3 4",
    );
    assert_eq!(run(&traced).status, 6);
}

#[test]
fn zero_matrix_has_null_class() {
    let out = run(&inline(decompose(Method::Auto), "0 0; 0 0").format(Format::Structured));
    assert_eq!(out.status, 0);
    assert!(out.stdout.contains("\"class\": null"));
}

#[test]
fn unchecked_skips_prechecks() {
    let mut cfg = inline(decompose(Method::Explicit), "0 0 0; 1 0 1; 1 0 1");
    cfg.unchecked = true;
    assert_eq!(run(&cfg).status, 0);
}

#[test]
fn stdin_input() {
    let cfg = RunConfig::new(Command::Detect).input(Input::Stdin);
    let out = run_with_stdin(&cfg, &mut Cursor::new("2 2\n1 1\n1 2\n"));
    assert_eq!(out.stdout, "r={1,2}, c={1,2}\n");
}

#[test]
fn argument_parsing() {
    let cfg = cli(&["decompose", "-m", "1 2;3 4", "--method", "reconstruct", "--trace", "--format", "structured"]);
    assert_eq!(
        cfg.command,
        Command::Decompose {
            method: Method::Reconstruct,
            trace: true,
            class: None
        }
    );
    assert_eq!(cfg.format, Format::Structured);
    assert_eq!(cfg.input, Some(Input::Inline("1 2;3 4".into())));

    assert_eq!(cli(&["detect", "-"]).input, Some(Input::Stdin));
    assert_eq!(cli(&["check-tnn", "m.txt", "--max-bruteforce", "9"]).max_bruteforce, 9);
    assert!(cli(&["decompose", "x", "--unchecked", "--class", "1,3:2,4"]).unchecked);
    assert_eq!(cli(&["identities", "selftest", "--seed", "4"]), cli(&["identities-selftest", "--seed", "4"]));
    assert_eq!(
        cli(&["generate", "--seed", "9", "--size", "2", "3"]).command,
        Command::Generate {
            seed: 9,
            rows: 2,
            cols: 3,
            factors: None
        }
    );
    assert!(Cli::try_parse_from(["tnlu", "decompose", "--class", "1,2:3"]).is_err());
    assert!(Cli::try_parse_from(["tnlu", "decompose", "--method", "lu"]).is_err());
}

#[test]
fn generate_is_seeded() {
    let cfg = RunConfig::new(Command::Generate {
        seed: 5,
        rows: 3,
        cols: 4,
        factors: Some(10),
    });
    let out = run(&cfg);
    assert_eq!(out.stdout, random_tnn(3, 4, 5, 10).to_text());
    assert_eq!(run(&cfg), out);
}

#[test]
fn selftest_runs() {
    let out = run(&RunConfig::new(Command::IdentitiesSelftest { seed: 1, instances: 10 }));
    assert_eq!(out.status, 0);
    assert!(out.stdout.lines().all(|l| l.ends_with(", 0 failed")));
}

#[test]
fn binary_is_deterministic() {
    let bin = env!("CARGO_BIN_EXE_tnlu");
    let args = ["decompose", "-m", "0 1 2 1;0 2 4 2;0 1 2 3;0 3 6 11", "--trace", "--format", "structured"];
    let a = Process::new(bin).args(args).output().unwrap();
    let b = Process::new(bin).args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let fail = Process::new(bin).args(["detect", "-m", "1/0"]).output().unwrap();
    assert_eq!(fail.status.code(), Some(4));
}

proptest! {
    #[test]
    fn text_output_feeds_back((m, n, seed) in (1usize..5, 1usize..5, any::<u64>())) {
        let a = random_tnn(m, n, seed, 12);
        let gen = run(&RunConfig::new(Command::Generate { seed, rows: m, cols: n, factors: Some(12) }));
        prop_assert_eq!(Mat::parse(&gen.stdout).unwrap(), a.clone());
        let inline_text = gen.stdout.lines().skip(1).collect::<Vec<_>>().join(";");
        prop_assert_eq!(parse_inline(&inline_text).unwrap(), a.clone());

        let out = run(&inline(decompose(Method::Auto), &inline_text));
        prop_assert_eq!(out.status, 0);
        let again = run(&inline(decompose(Method::Auto), &inline_text));
        prop_assert_eq!(out, again);
    }
}
