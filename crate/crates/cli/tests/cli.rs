use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

struct Run {
    code: u8,
    stdout: String,
    stderr: String,
}

fn owlax(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("owlax").chain(args.iter().copied());
    let code = owlax::run(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Rewrites every accept flag in a review file.
fn set_all_accept(review: &Path, accept: bool) {
    let text = fs::read_to_string(review).unwrap();
    let (from, to) = if accept {
        ("\"accept\": false", "\"accept\": true")
    } else {
        ("\"accept\": true", "\"accept\": false")
    };
    fs::write(review, text.replace(from, to)).unwrap();
}

fn set_accept(review: &Path, id: &str) {
    let text = fs::read_to_string(review).unwrap();
    let mut value: serde_json::Value = serde_json::from_str(&text).unwrap();
    for entry in value["entries"].as_array_mut().unwrap() {
        if entry["id"] == id {
            entry["accept"] = true.into();
        }
    }
    fs::write(review, serde_json::to_string_pretty(&value).unwrap()).unwrap();
}

#[test]
fn validate_examples() {
    let ok = owlax(&["validate", "-d", path_str(&fixture("single.json"))]);
    assert_eq!((ok.code, ok.stdout.as_str()), (0, ""));

    let empty = owlax(&["validate", "-d", path_str(&fixture("empty.json"))]);
    assert_eq!(empty.code, 1);
    assert_eq!(empty.stdout, "ERROR EMPTY_DIAGRAM -: diagram must contain at least one node\n");

    let bad = owlax(&["validate", "-d", path_str(&fixture("unknown_kind.json"))]);
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.contains("nodes[0].kind"), "{}", bad.stderr);
    assert!(bad.stderr.contains("enum"), "{}", bad.stderr);

    let missing = owlax(&["validate", "-d", "/nonexistent/diagram.json"]);
    assert_eq!(missing.code, 2);
    assert!(missing.stderr.contains("cannot read"));
}

#[test]
fn validate_prints_warnings_but_succeeds() {
    let dir = TempDir::new().unwrap();
    let d = dir.path().join("dup.json");
    fs::write(
        &d,
        r#"{"nodes":[{"id":"a","kind":"class","label":"A"},{"id":"b","kind":"class","label":"A"}]}"#,
    )
    .unwrap();
    let run = owlax(&["validate", "-d", path_str(&d)]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.starts_with("WARNING DUPLICATE_ENTITY b: "), "{}", run.stdout);
}

#[test]
fn candidates_examples() {
    let dir = TempDir::new().unwrap();
    let review = dir.path().join("review.json");
    let diagram = fixture("person_address.json");

    let run = owlax(&["candidates", "-d", path_str(&diagram), "-o", path_str(&review)]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(run.stdout, "11 candidates (0 existing)\n");
    let text = fs::read_to_string(&review).unwrap();
    assert!(text.contains("\"id\": \"e1#DOM\""));

    let run = owlax(&[
        "candidates",
        "-d",
        path_str(&diagram),
        "--ontology",
        path_str(&fixture("dom_only.ofn")),
        "-o",
        path_str(&review),
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(run.stdout, "11 candidates (1 existing)\n");

    let run = owlax(&["candidates", "-d", path_str(&fixture("empty.json")), "-o", path_str(&review)]);
    assert_eq!(run.code, 1);
    assert_eq!(run.stdout, "ERROR EMPTY_DIAGRAM -: diagram must contain at least one node\n");
}

#[test]
fn integrate_typing_entry() {
    let dir = TempDir::new().unwrap();
    let review = dir.path().join("review.json");
    let onto = dir.path().join("out.ofn");
    let diagram = fixture("typing.json");
    assert_eq!(owlax(&["candidates", "-d", path_str(&diagram), "-o", path_str(&review)]).code, 0);
    set_accept(&review, "e1#TYPE");
    let run = owlax(&["integrate", "-d", path_str(&diagram), "-r", path_str(&review), "-o", path_str(&onto)]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(run.stdout, "1 axioms written\n");
    let text = fs::read_to_string(&onto).unwrap();
    assert!(text.contains("ClassAssertion(:Person :mary)"));
    assert!(text.contains("Declaration(NamedIndividual(:mary))"));
}

#[test]
fn integrate_nothing_accepted_writes_declarations_only() {
    let dir = TempDir::new().unwrap();
    let review = dir.path().join("review.json");
    let onto = dir.path().join("out.ofn");
    let diagram = fixture("person_address.json");
    owlax(&["candidates", "-d", path_str(&diagram), "-o", path_str(&review)]);
    set_all_accept(&review, false);
    let run = owlax(&["integrate", "-d", path_str(&diagram), "-r", path_str(&review), "-o", path_str(&onto)]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(run.stdout, "0 axioms written\n");
    let text = fs::read_to_string(&onto).unwrap();
    let body: Vec<_> = text
        .lines()
        .skip_while(|l| *l != "Ontology(")
        .skip(1)
        .take_while(|l| *l != ")")
        .collect();
    assert_eq!(
        body,
        [
            "Declaration(Class(:Address))",
            "Declaration(Class(:Person))",
            "Declaration(ObjectProperty(:hasAddress))"
        ]
    );
}

#[test]
fn integrate_is_deterministic_and_leaves_inputs_alone() {
    let dir = TempDir::new().unwrap();
    let review = dir.path().join("review.json");
    let diagram = fixture("person_address.json");
    let input = dir.path().join("in.ofn");
    fs::copy(fixture("dom_only.ofn"), &input).unwrap();
    owlax(&["candidates", "-d", path_str(&diagram), "--ontology", path_str(&input), "-o", path_str(&review)]);
    set_accept(&review, "e1#EX");
    let review_before = fs::read(&review).unwrap();
    let input_before = fs::read(&input).unwrap();

    let mut outputs = Vec::new();
    for name in ["a.ofn", "b.ofn"] {
        let out = dir.path().join(name);
        let run = owlax(&[
            "integrate",
            "-d",
            path_str(&diagram),
            "-r",
            path_str(&review),
            "--ontology",
            path_str(&input),
            "-o",
            path_str(&out),
        ]);
        assert_eq!(run.code, 0, "{}", run.stderr);
        assert_eq!(run.stdout, "2 axioms written\n");
        outputs.push(fs::read(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(fs::read(&review).unwrap(), review_before);
    assert_eq!(fs::read(&input).unwrap(), input_before);

    let clobber = owlax(&[
        "integrate",
        "-d",
        path_str(&diagram),
        "-r",
        path_str(&review),
        "--ontology",
        path_str(&input),
        "-o",
        path_str(&input),
    ]);
    assert_eq!(clobber.code, 2);
    assert_eq!(fs::read(&input).unwrap(), input_before);
}

#[test]
fn integrate_removes_unchecked_existing() {
    let dir = TempDir::new().unwrap();
    let review = dir.path().join("review.json");
    let out = dir.path().join("out.ofn");
    let diagram = fixture("person_address.json");
    let dom = fixture("dom_only.ofn");
    owlax(&["candidates", "-d", path_str(&diagram), "--ontology", path_str(&dom), "-o", path_str(&review)]);
    set_all_accept(&review, false);
    let run = owlax(&[
        "integrate",
        "-d",
        path_str(&diagram),
        "-r",
        path_str(&review),
        "--ontology",
        path_str(&dom),
        "-o",
        path_str(&out),
    ]);
    assert_eq!(run.stdout, "0 axioms written\n");
}

#[test]
fn integrate_rejects_unknown_and_stale_ids() {
    let dir = TempDir::new().unwrap();
    let review = dir.path().join("review.json");
    let out = dir.path().join("out.ofn");
    let diagram = fixture("person_address.json");
    owlax(&["candidates", "-d", path_str(&diagram), "-o", path_str(&review)]);
    let text = fs::read_to_string(&review).unwrap();

    let unknown = text.replace("\"e1#DOM\"", "\"zzz#DOM\"").replace("\"e1#RAN\"", "\"aaa#RAN\"");
    fs::write(&review, unknown).unwrap();
    let run = owlax(&["integrate", "-d", path_str(&diagram), "-r", path_str(&review), "-o", path_str(&out)]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("UNKNOWN_CANDIDATE_ID: aaa#RAN, zzz#DOM"), "{}", run.stderr);
    assert!(!out.exists());

    // Same ids, but the diagram changed underneath the review.
    fs::write(&review, &text).unwrap();
    let renamed = dir.path().join("renamed.json");
    let d = fs::read_to_string(&diagram).unwrap().replace("hasAddress", "livesAt");
    fs::write(&renamed, d).unwrap();
    let run = owlax(&["integrate", "-d", path_str(&renamed), "-r", path_str(&review), "-o", path_str(&out)]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("STALE_REVIEW e1#DOM"), "{}", run.stderr);

    fs::write(&review, "{\"entries\": 3}").unwrap();
    let run = owlax(&["integrate", "-d", path_str(&diagram), "-r", path_str(&review), "-o", path_str(&out)]);
    assert_eq!(run.code, 2);
}

#[test]
fn render_examples() {
    let run = owlax(&["render", "--ontology", path_str(&fixture("dom_only.ofn")), "--format", "manchester"]);
    assert_eq!((run.code, run.stdout.as_str()), (0, "hasAddress some owl:Thing SubClassOf Person\n"));

    let dir = TempDir::new().unwrap();
    let empty = dir.path().join("empty.ofn");
    fs::write(&empty, "Ontology()").unwrap();
    let run = owlax(&["render", "--ontology", path_str(&empty), "--format", "manchester"]);
    assert_eq!((run.code, run.stdout.as_str()), (0, ""));

    // Functional rendering is a normalization pass and then a fixed point.
    let messy = dir.path().join("messy.ofn");
    fs::write(
        &messy,
        "Prefix(:=<http://example.org/onto#>)\nOntology(\n  # comment\n  DisjointClasses(:B :A)\n  SubClassOf(:A   :B)\n)\n",
    )
    .unwrap();
    let once = owlax(&["render", "--ontology", path_str(&messy), "--format", "functional"]);
    assert_eq!(once.code, 0, "{}", once.stderr);
    let normal = dir.path().join("normal.ofn");
    fs::write(&normal, &once.stdout).unwrap();
    let twice = owlax(&["render", "--ontology", path_str(&normal), "--format", "functional"]);
    assert_eq!(twice.stdout, once.stdout);
    assert!(once.stdout.contains("SubClassOf(:A :B)\nDisjointClasses(:A :B)\n"));

    fs::write(&messy, "Ontology(SubClassOf(:A))").unwrap();
    let run = owlax(&["render", "--ontology", path_str(&messy), "--format", "functional"]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("PARSE_ERROR"), "{}", run.stderr);

    let run = owlax(&["render", "--ontology", path_str(&normal), "--format", "turtle"]);
    assert_eq!(run.code, 2);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(owlax(&[]).code, 2);
    assert_eq!(owlax(&["frobnicate"]).code, 2);
    assert_eq!(owlax(&["candidates", "-d", "x.json"]).code, 2);
    let help = owlax(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("integrate"));

    let dir = TempDir::new().unwrap();
    let diagram = fixture("person_address.json");
    let nowhere = dir.path().join("missing/review.json");
    let run = owlax(&["candidates", "-d", path_str(&diagram), "-o", path_str(&nowhere)]);
    assert_eq!(run.code, 2);

    let out = dir.path().join("review.json");
    let run = owlax(&["candidates", "-d", path_str(&diagram), "-o", path_str(&out), "--base-iri", "relative#"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("invalid base IRI"));
}

#[test]
fn base_iri_flag_sets_the_default_prefix() {
    let dir = TempDir::new().unwrap();
    let review = dir.path().join("review.json");
    let out = dir.path().join("out.ofn");
    let diagram = fixture("typing.json");
    let base = "http://ex.com/people/";
    owlax(&["candidates", "-d", path_str(&diagram), "-o", path_str(&review), "--base-iri", base]);
    set_accept(&review, "e1#TYPE");
    let run = owlax(&[
        "integrate",
        "-d",
        path_str(&diagram),
        "-r",
        path_str(&review),
        "-o",
        path_str(&out),
        "--base-iri",
        base,
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(fs::read_to_string(&out).unwrap().contains("Prefix(:=<http://ex.com/people/>)"));

    // A conflicting explicit base would rename every entity of the input.
    let run = owlax(&[
        "candidates",
        "-d",
        path_str(&diagram),
        "--ontology",
        path_str(&out),
        "-o",
        path_str(&review),
        "--base-iri",
        "http://other.org/#",
    ]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("conflicts"));
}

#[test]
fn binary_reads_base_iri_from_environment() {
    let dir = TempDir::new().unwrap();
    let review = dir.path().join("review.json");
    let out = dir.path().join("out.ofn");
    let diagram = fixture("typing.json");
    let bin = env!("CARGO_BIN_EXE_owlax");
    let status = Command::new(bin)
        .args(["candidates", "-d", path_str(&diagram), "-o", path_str(&review)])
        .env("OWLAX_BASE_IRI", "http://env.example/onto#")
        .status()
        .unwrap();
    assert!(status.success());
    let output = Command::new(bin)
        .args(["integrate", "-d", path_str(&diagram), "-r", path_str(&review), "-o", path_str(&out)])
        .env("OWLAX_BASE_IRI", "http://env.example/onto#")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&output.stdout), "0 axioms written\n");
    assert!(fs::read_to_string(&out).unwrap().contains("Prefix(:=<http://env.example/onto#>)"));

    let empty = Command::new(bin)
        .args(["validate", "-d", path_str(&fixture("empty.json"))])
        .output()
        .unwrap();
    assert_eq!(empty.status.code(), Some(1));
    let bad = Command::new(bin)
        .args(["validate", "-d", path_str(&fixture("unknown_kind.json"))])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn serve_rejects_missing_static_dir() {
    let run = owlax(&["serve", "--port", "0", "--static", "/nonexistent/assets"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("static directory"));
}

#[test]
fn serve_answers_http() {
    use std::io::{BufRead, BufReader, Read, Write};
    use std::net::TcpStream;
    use std::process::Stdio;

    let mut child = Command::new(env!("CARGO_BIN_EXE_owlax"))
        .args(["serve", "--port", "0"])
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let mut line = String::new();
    BufReader::new(child.stdout.take().unwrap()).read_line(&mut line).unwrap();
    let addr = line.trim().strip_prefix("listening on http://").unwrap().to_owned();

    let mut stream = TcpStream::connect(&addr).unwrap();
    write!(stream, "POST /session HTTP/1.1\r\nHost: {addr}\r\nContent-Length: 0\r\nConnection: close\r\n\r\n").unwrap();
    let mut response = String::new();
    stream.read_to_string(&mut response).unwrap();
    child.kill().unwrap();
    child.wait().unwrap();
    assert!(response.starts_with("HTTP/1.1 201"), "{response}");
    assert!(response.contains("\"id\""));
}
