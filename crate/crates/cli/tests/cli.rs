use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use supercardy_cli::report::Report;

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_supercardy"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn report(out: &Output) -> Report {
    serde_json::from_slice(&out.stdout).expect("stdout is a report")
}

fn construct(args: &[&str]) -> String {
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    let out = run(&full, None);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    stdout(&out)
}

fn tmp_file(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const NILPOTENT_BULK: &str = r#"{"kind":"cf_algebra",
 "bulk":{"dim":2,"parity":[0,0],"unit":["1","0"],"products":[[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"]]},
 "boundary":{"dim":0,"parity":[],"unit":[],"products":[]},
 "theta_bulk":["0","1"],"theta_boundary":[],"tau_star":[]}"#;

const SQRT_TWO_BULK: &str = r#"{"kind":"cf_algebra",
 "bulk":{"dim":2,"parity":[0,0],"unit":["1","0"],"products":[[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"],[1,1,0,"2"]]},
 "boundary":{"dim":0,"parity":[],"unit":[],"products":[]},
 "theta_bulk":["1","0"],"theta_boundary":[],"tau_star":[]}"#;

const X_CUBED: &str = r#"{"kind":"matrix_factorization","variables":["x"],
 "w":[[[3],"1"]],"d0":[[[[[1],"1"]]]],"d1":[[[[[2],"1"]]]]}"#;

const XY: &str = r#"{"kind":"matrix_factorization","variables":["x","y"],
 "w":[[[1,1],"1"]],"d0":[[[[[1,0],"1"]]]],"d1":[[[[[0,1],"1"]]]]}"#;

fn monomial_doc(var: &str, s: u32, a: u32) -> String {
    format!(
        r#"{{"variables":["{var}"],"w":[[[{s}],"1"]],"d0":[[[[[{a}],"1"]]]],"d1":[[[[[{}],"1"]]]]}}"#,
        s - a
    )
}

#[test]
fn verify_elementary() {
    // lambda = mu^2/2 fails under the printed sign of the multiplication operator
    let half = construct(&["q:1:1/2:1"]);
    let out = run(&["verify", "-", "--json"], Some(&half));
    assert_eq!(code(&out), 1);
    let r = report(&out);
    let cardy = r.checks.iter().find(|c| c.check == "cardy").unwrap();
    assert_eq!(cardy.verdict, "fail");
    assert!(cardy.note.is_some());

    let minus_half = construct(&["q:1:-1/2:1"]);
    assert_eq!(code(&run(&["verify", "-"], Some(&minus_half))), 0);

    let mat = construct(&["mat:1:1:2:1"]);
    let out = run(&["verify", "-", "--json"], Some(&mat));
    assert_eq!(code(&out), 1);
    let r = report(&out);
    let failed: Vec<_> = r.checks.iter().filter(|c| c.verdict == "fail").collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0].check, "cardy");
    assert_eq!(failed[0].witness.as_ref().unwrap().indices.len(), 2);

    let text = stdout(&run(&["verify", "-"], Some(&mat)));
    assert!(text.contains("cardy") && text.contains("fail"), "{text}");
}

#[test]
fn input_errors() {
    let mat = construct(&["mat:1:1:1:1"]);
    let truncated = tmp_file("truncated.json", &mat[..mat.len() / 2]);
    let out = run(&["verify", truncated.to_str().unwrap()], None);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));

    let zero_den = r#"{"kind":"elementary","type":"q","n":1,"lambda":"1/0","mu":"1"}"#;
    let out = run(&["verify", "-", "--json"], Some(zero_den));
    assert_eq!(code(&out), 2);
    let r = report(&out);
    assert_eq!(r.verdict, "input_error");
    assert!(r.detail.unwrap().contains("column"));

    let float = r#"{"kind":"elementary","type":"mat","n":1,"m":1,"lambda":0.5,"mu":"1"}"#;
    assert_eq!(code(&run(&["verify", "-"], Some(float))), 2);
    assert_eq!(code(&run(&["verify", "no-such-file.json"], None)), 2);
    assert_eq!(code(&run(&["classify", "-"], Some(&mat))), 2);
    assert_eq!(code(&run(&["construct", "mat:1:1"], None)), 2);
    assert_eq!(code(&run(&["construct", "q:1:1/2:0"], None)), 2);
}

#[test]
fn classify_documents() {
    let doc = construct(&["mat:1:1:1:1", "q:1:-1/2:1", "triv:3", "--scramble", "7"]);
    let out = run(&["classify", "-", "--json", "--seed", "2"], Some(&doc));
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r.verdict, "classified");
    let summands = r.summands.unwrap();
    let shapes: Vec<(&str, usize, usize, &str)> = summands
        .iter()
        .map(|s| (s.ty.as_str(), s.n, s.m, s.lambda.as_str()))
        .collect();
    assert_eq!(
        shapes,
        vec![("triv", 0, 0, "3"), ("mat", 1, 1, "1"), ("q", 1, 0, "-1/2")]
    );

    let out = run(&["classify", "-", "--json"], Some(NILPOTENT_BULK));
    assert_eq!(code(&out), 3);
    assert_eq!(report(&out).verdict, "not_semisimple");

    let out = run(&["classify", "-", "--json"], Some(SQRT_TWO_BULK));
    assert_eq!(code(&out), 3);
    assert_eq!(report(&out).verdict, "not_split");

    let bad = construct(&["mat:1:1:2:1", "--cf"]);
    assert_eq!(code(&run(&["classify", "-"], Some(&bad))), 1);
}

#[test]
fn matrix_factorizations() {
    let out = run(&["mf", "-", "--dao"], Some(X_CUBED));
    assert_eq!(code(&out), 0);
    assert!(
        stdout(&out).contains("χ = 0 (even 1, odd 1)"),
        "{}",
        stdout(&out)
    );

    let out = run(&["mf", "-", "--verify", "--json"], Some(X_CUBED));
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert!(r
        .checks
        .iter()
        .any(|c| c.check == "cardy" && c.verdict == "pass"));

    assert_eq!(code(&run(&["mf", "-", "--classify"], Some(X_CUBED))), 3);

    let out = run(&["mf", "-", "--dao"], Some(XY));
    assert_eq!(code(&out), 2);
    assert!(!out.stderr.is_empty());

    let tensor = format!(
        r#"{{"kind":"matrix_factorization","tensor_of":[{},{},{}]}}"#,
        monomial_doc("x", 2, 1),
        monomial_doc("y", 2, 1),
        monomial_doc("z", 3, 1)
    );
    let out = run(&["mf", "-", "--dao", "--json"], Some(&tensor));
    assert_eq!(code(&out), 0);
    let dao = report(&out).dao.unwrap();
    assert_eq!((dao.variables, dao.chi), (3, 0));
    assert_eq!(dao.even, dao.odd);

    let two = format!(
        r#"{{"kind":"matrix_factorization","tensor_of":[{},{}]}}"#,
        monomial_doc("x", 2, 1),
        monomial_doc("y", 2, 1)
    );
    assert_eq!(code(&run(&["mf", "-", "--dao"], Some(&two))), 2);
}

#[test]
fn emitted_data_verifies_like_mf_verify() {
    for s in 2..=4 {
        for a in 1..s {
            let doc = format!(
                r#"{{"kind":"matrix_factorization",{}"#,
                &monomial_doc("x", s, a)[1..]
            );
            let emitted = run(&["mf", "-", "--emit-cf"], Some(&doc));
            assert_eq!(code(&emitted), 0);
            let direct = run(&["mf", "-", "--verify", "--json"], Some(&doc));
            let round = run(&["verify", "-", "--json"], Some(&stdout(&emitted)));
            assert_eq!(code(&direct), code(&round));
            let (d, r) = (report(&direct), report(&round));
            assert_eq!(d.verdict, r.verdict);
            assert_eq!(d.checks, r.checks, "x^{s}, a={a}");
        }
    }
}

#[test]
fn reports_round_trip_byte_for_byte() {
    let docs = [
        (vec!["verify", "-", "--json"], construct(&["mat:1:1:2:1"])),
        (vec!["verify", "-", "--json"], construct(&["q:2:1/2:1"])),
        (
            vec!["classify", "-", "--json"],
            construct(&["mat:2:1:4:2", "triv:1/3", "--scramble", "1"]),
        ),
        (vec!["classify", "-", "--json"], SQRT_TWO_BULK.to_string()),
        (vec!["mf", "-", "--dao", "--json"], X_CUBED.to_string()),
        (vec!["verify", "-", "--json"], "{".to_string()),
    ];
    for (args, doc) in docs {
        let out = run(&args, Some(&doc));
        let text = stdout(&out);
        let parsed: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.to_json(), text);
        assert_eq!(parsed.exit_code, code(&out));
    }
}

#[test]
fn constructed_documents_round_trip() {
    let doc = construct(&["mat:2:1:4:2", "q:1:-2:2", "--scramble", "3"]);
    let parsed: supercardy_cli::doc::CfAlgebraDoc = serde_json::from_str(&doc).unwrap();
    let again = format!("{}\n", serde_json::to_string_pretty(&parsed).unwrap());
    assert_eq!(again, doc);

    let emitted = stdout(&run(&["mf", "-", "--emit-cf"], Some(X_CUBED)));
    let cf = parsed_cf(&emitted);
    let back = supercardy_cli::doc::CfAlgebraDoc::from_cf(&cf);
    assert_eq!(
        format!("{}\n", serde_json::to_string_pretty(&back).unwrap()),
        emitted
    );
}

fn parsed_cf(text: &str) -> supercardy::CFData<supercardy::Rational> {
    let doc: supercardy_cli::doc::CfAlgebraDoc = serde_json::from_str(text).unwrap();
    doc.build().unwrap()
}

#[test]
fn determinism() {
    let doc = construct(&[
        "mat:1:1:1:1",
        "q:2:-1/2:1",
        "triv:5",
        "mat:1:0:4:2",
        "--scramble",
        "11",
    ]);
    let a = run(&["classify", "-", "--json", "--seed", "9"], Some(&doc));
    let b = run(&["classify", "-", "--json", "--seed", "9"], Some(&doc));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(
        construct(&["mat:1:1:1:1", "--scramble", "4"]),
        construct(&["mat:1:1:1:1", "--scramble", "4"])
    );
}
