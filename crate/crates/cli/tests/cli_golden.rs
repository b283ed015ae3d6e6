use std::process::Command;

use caratheodory::{AlgebraElement, Rat};
use caratheodory_cli::{cmd_laws_with, run, Format, EXIT_FALSIFIED, EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION};

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn carath(args: &[&str]) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_carath"))
        .args(args)
        .output()
        .expect("binary runs");
    Output {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn in_process(args: &[&str]) -> Output {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("carath").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn machine_interval(stdout: &str) -> (Rat, Rat) {
    let vals: Vec<Rat> = stdout.split_whitespace().map(|t| t.parse().unwrap()).collect();
    assert_eq!(vals.len(), 2, "{stdout:?}");
    (vals[0].clone(), vals[1].clone())
}

#[test]
fn measure_examples() {
    let o = carath(&["measure", "fatcantor", "--eps", "1/1024", "--format", "machine"]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout, "1/2 257/512\n");
    let o = in_process(&["measure", "[0,1)", "--eps", "1/100"]);
    assert_eq!(
        (o.code, o.stdout.as_str()),
        (EXIT_OK, "measure in [99/100, 101/100] (width 1/50)\n")
    );
    let o = in_process(&["measure", "[0,1/2) garbage"]);
    assert_eq!(o.code, EXIT_PARSE);
    assert!(o.stderr.starts_with("parse error at byte 8:"), "{}", o.stderr);
    assert!(o.stdout.is_empty());
}

#[test]
fn dist_examples() {
    let o = in_process(&["dist", "[0,1/2)", "[1/4,3/4)", "--eps", "1/100", "--format", "machine"]);
    let (lo, hi) = machine_interval(&o.stdout);
    assert!(lo <= Rat::new(1, 2) && Rat::new(1, 2) <= hi);
    for b in ["cantor3", "!(!cantor3)"] {
        let o = in_process(&["dist", "cantor3", b, "--eps", "1/100", "--format", "machine"]);
        assert_eq!(o.code, EXIT_OK);
        let (lo, hi) = machine_interval(&o.stdout);
        assert!(lo <= Rat::zero() && Rat::zero() <= hi, "{b}: {}", o.stdout);
    }
    assert_eq!(in_process(&["dist", "cantor3", "[0,"]).code, EXIT_PARSE);
    assert_eq!(
        in_process(&["dist", "cantor3", "cantor3", "--eps", "-1"]).code,
        EXIT_PRECONDITION
    );
}

#[test]
fn approx_examples() {
    let cases = [
        (
            ["approx", "cantor3", "--eps", "1/2"],
            "0/1,1/9 2/9,1/3 2/3,7/9 8/9,1/1\n",
        ),
        (["approx", "[0,1/2)", "--eps", "1/1000000"], "0/1,1/2\n"),
        (["approx", "fatcantor", "--eps", "1/4"], "0/1,3/8 5/8,1/1\n"),
    ];
    for (args, expected) in cases {
        let o = carath(&args);
        assert_eq!((o.code, o.stdout.as_str()), (EXIT_OK, expected), "{args:?}");
        let printed: AlgebraElement = o.stdout.parse().unwrap();
        assert_eq!(printed.to_string() + "\n", expected);
    }
    let o = in_process(&["approx", "!([0,1))"]);
    assert_eq!(o.stdout, "∅\n");
}

#[test]
fn precondition_exit_codes() {
    for eps in ["0", "-1/2", "abc", "0.5", "1/0"] {
        let o = in_process(&["measure", "cantor3", "--eps", eps]);
        assert_eq!(o.code, EXIT_PRECONDITION, "eps {eps}");
    }
    assert_eq!(in_process(&["laws", "--trials", "0"]).code, EXIT_PRECONDITION);
    assert_eq!(
        in_process(&["measure", "cantor3", "--eps", "1/1099511627776"]).code,
        EXIT_PRECONDITION
    );
    assert_eq!(in_process(&["oracle", "--random", "9", "10"]).code, EXIT_PRECONDITION);
    assert_eq!(in_process(&["oracle"]).code, EXIT_PRECONDITION);
    assert_eq!(in_process(&["frobnicate"]).code, EXIT_PRECONDITION);
    assert_eq!(in_process(&["--help"]).code, EXIT_OK);
}

#[test]
fn laws_report() {
    let o = carath(&["laws", "--trials", "1", "--seed", "0", "--format", "machine"]);
    assert_eq!(o.code, EXIT_OK);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines.len(), caratheodory::laws::LAWS.len());
    assert!(lines.iter().all(|l| l.ends_with(" 1 1")), "{}", o.stdout);
    let o = in_process(&["laws", "--trials", "500", "--seed", "7"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("pseudometric.triangle    500/500 ok"), "{}", o.stdout);
}

#[test]
fn broken_distance_exits_falsified() {
    fn off_by_a_bit(a: &AlgebraElement, b: &AlgebraElement) -> Rat {
        caratheodory::interval_algebra::distance(a, b) + Rat::new(1, 1000)
    }
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cmd_laws_with(20, 0, off_by_a_bit, Format::Human, &mut out, &mut err);
    assert_eq!(code, EXIT_FALSIFIED);
    let text = String::from_utf8(out).unwrap();
    assert!(text.contains("pseudometric.identity    0/20 FALSIFIED"), "{text}");
    assert!(text.contains("counterexample: a1="), "{text}");
}

#[test]
fn oracle_reports() {
    let o = carath(&["oracle", "0,1:1/2;2,3:1/2"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(
        o.stdout.contains("limit closure: 4 sets (0 outside the algebra)"),
        "{}",
        o.stdout
    );
    let o = carath(&["oracle", "0,1:0/1;2,3:1/1"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(
        o.stdout.contains("limit closure: 8 sets (4 outside the algebra)"),
        "{}",
        o.stdout
    );
    let o = carath(&["oracle", "0,1:0/1;2,3:1/1", "--format", "machine"]);
    assert_eq!(o.stdout, "0 pass\n");
    let o = carath(&["oracle", "--random", "6", "200", "--seed", "42"]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout, "200/200 spaces verified (universe ≤ 6, seed 42)\n");
    for bad in ["0,1", "0,1:1/2;1,2:1/2", "0,2:1", "a:1"] {
        assert_eq!(in_process(&["oracle", bad]).code, EXIT_PARSE, "{bad}");
    }
}

#[test]
fn machine_output_is_byte_stable() {
    for args in [
        &["laws", "--trials", "50", "--seed", "11", "--format", "machine"][..],
        &["oracle", "--random", "5", "30", "--seed", "3", "--format", "machine"][..],
        &["measure", "dyadictail", "--eps", "1/256", "--format", "machine"][..],
    ] {
        let (a, b) = (carath(args), carath(args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.code, EXIT_OK);
        for line in a.stdout.lines() {
            assert!(!line.trim().is_empty());
        }
    }
}
