use std::io::Write;
use std::path::PathBuf;
use std::process::Command;

use kerpair::{Matrix, RingSpec};
use kerpair_cli::{run_args, MatrixFile, ResultDocument, Status};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> ResultDocument {
    run_args(std::iter::once("kerpair").chain(args.iter().copied()))
}

fn exit_code(args: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_kerpair"))
        .args(args)
        .output()
        .expect("binary runs")
        .status
        .code()
        .expect("exit code")
}

fn basis<'d>(doc: &'d ResultDocument, name: &str) -> &'d kerpair_cli::Basis {
    doc.bases.iter().find(|b| b.name == name).unwrap_or_else(|| panic!("no basis {name}"))
}

fn temp_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn idempotents_of_30_2_and_105() {
    let pairs = |doc: &ResultDocument| doc.per_prime.iter().map(|p| (p.prime, p.idempotent.unwrap())).collect::<Vec<_>>();
    let d30 = run(&["idempotents", "30"]);
    assert_eq!(d30.status, Status::Ok);
    assert_eq!(pairs(&d30), [(2, 15), (3, 10), (5, 6)]);
    assert_eq!(d30.checks.len(), 3);
    assert_eq!(pairs(&run(&["idempotents", "2"])), [(2, 1)]);
    // e is 1 mod its prime and 0 mod the others
    let scan = |p: u64| (0..105u64).find(|&e| [3, 5, 7].iter().all(|&q| e % q == u64::from(q == p))).unwrap();
    assert_eq!(pairs(&run(&["idempotents", "105"])), [(3, scan(3)), (5, scan(5)), (7, scan(7))]);
    assert_eq!(run(&["idempotents", "12"]).exit_code, 2);
    assert_eq!(run(&["idempotents", "1"]).exit_code, 2);
}

#[test]
fn kernel_examples() {
    let f = fixture("gf3.txt");
    let id = run(&["kernel", &f, "I"]);
    assert!(basis(&id, "kernel").generators.is_empty());
    assert_eq!(basis(&id, "kernel").rank, Some(0));
    assert_eq!(basis(&run(&["kernel", &f, "Z"]), "kernel").rank, Some(2));
    let poly = run(&["kernel", &fixture("polygf2.txt"), "A"]);
    assert_eq!(basis(&poly, "kernel").generators, [["[1]", "[1]"]]);
    assert!(poly.per_prime.is_empty());
}

#[test]
fn kernel_pair_over_z30_matches_enumeration() {
    let doc = run(&["kernel-pair", &fixture("z30.txt"), "A", "B"]);
    assert_eq!(doc.status, Status::Ok);
    let bar = basis(&doc, "ker_bar");
    assert_eq!(bar.count.as_deref(), Some("10"));
    let ring = RingSpec::mod_ring(30).unwrap();
    let span = bar.to_submodule(&ring).unwrap();
    for u in 0..30u64 {
        let admissible = (0..30u64).any(|x| (15 * x + 10 * u) % 30 == 0);
        assert_eq!(span.contains(&[ring.from_int(u as i64)]).unwrap(), admissible, "u = {u}");
    }
    let local: Vec<Option<usize>> = doc.per_prime.iter().map(|p| p.bases[0].rank).collect();
    assert_eq!(local, [Some(1), Some(0), Some(1)]);
    assert!(doc.messages.iter().any(|m| m == "prime 3: ker_bar zero"));
    assert!(doc.checks.iter().all(|c| c.passed));
}

#[test]
fn degenerate_kernel_pairs() {
    let f = fixture("gf3.txt");
    let zero_b = run(&["kernel-pair", &f, "A", "Z"]);
    assert_eq!(basis(&zero_b, "ker_bar").rank, Some(2));
    assert!(zero_b.messages.iter().any(|m| m.contains("ker(f₁|0) = M₂")));
    let zero_a = run(&["kernel-pair", &f, "Z", "I"]);
    assert!(basis(&zero_a, "ker_bar").generators.is_empty());
}

#[test]
fn methods_and_verification() {
    let f = fixture("gf3.txt");
    for method in ["projection", "preimage", "quotient", "oracle", "auto"] {
        let doc = run(&["kernel-pair", "--method", method, "--verify", &f, "A", "B"]);
        assert_eq!(doc.status, Status::Ok, "{method}: {:?}", doc.messages);
        assert_eq!(basis(&doc, "ker_bar").rank, Some(0));
    }
    let z30 = fixture("z30.txt");
    assert_eq!(run(&["kernel-pair", "--method", "preimage", &z30, "A", "B"]).exit_code, 2);
    let poly = fixture("polygf2.txt");
    assert_eq!(run(&["kernel-pair", "--method", "oracle", &poly, "D", "One"]).exit_code, 2);
    assert_eq!(run(&["kernel-pair", "--verify", &poly, "D", "One"]).exit_code, 0);
}

#[test]
fn member_queries() {
    let z30 = fixture("z30.txt");
    let yes = run(&["member", &z30, "A", "B", "3"]);
    assert_eq!(yes.status, Status::Ok);
    assert!(yes.checks.iter().any(|c| c.name == "witness" && c.passed));
    let x: i64 = yes.witnesses.iter().find(|w| w.name == "x").unwrap().entries[0][0].parse().unwrap();
    assert_eq!((15 * x + 30) % 30, 0);
    assert_eq!(run(&["member", &z30, "A", "B", "1"]).status, Status::NotMember);
    let zero = run(&["member", &z30, "A", "B", "0"]);
    assert_eq!(zero.witnesses.iter().find(|w| w.name == "x").unwrap().entries, [["0"]]);
    // u = z^2 for A = [z], B = [1]: x = z
    let poly = run(&["member", &fixture("polygf2.txt"), "D", "One", "[0,0,1]"]);
    assert_eq!(poly.witnesses.iter().find(|w| w.name == "x").unwrap().entries, [["[0,1]"]]);
    assert_eq!(run(&["member", &z30, "A", "B", "1", "2"]).exit_code, 2);
    assert_eq!(run(&["member", &z30, "A", "B", "[1,2]"]).exit_code, 2);
}

#[test]
fn simulation() {
    let delay = fixture("delay.txt");
    let doc = run(&["simulate", &delay, "A", "B", "--inputs", &fixture("delay_inputs.txt")]);
    let states = doc.witnesses.iter().find(|w| w.name == "states").unwrap();
    assert_eq!(states.entries, [["0", "0"], ["1", "0"], ["0", "1"]]);

    let zeros = run(&["simulate", &delay, "A", "B", "--steps", "3"]);
    let states = zeros.witnesses.iter().find(|w| w.name == "states").unwrap();
    assert!(states.entries.iter().flatten().all(|e| e == "0"));
    assert_eq!(states.rows, 4);

    let nil = fixture("nilpotent.txt");
    let periodic = run(&["simulate", &nil, "N", "B", "--steps", "2", "--boundary", "periodic"]);
    assert_eq!(periodic.status, Status::Ok);
    let ones = temp_file("1\n");
    let stuck = run(&["simulate", &nil, "I", "B", "--inputs", ones.path().to_str().unwrap(), "--boundary", "periodic"]);
    assert_eq!(stuck.status, Status::NotAdmissible);
    assert_eq!(stuck.exit_code, 1);
    let x0 = temp_file("1 1\n");
    let fixed = run(&["simulate", &nil, "N", "B", "--x0", x0.path().to_str().unwrap(), "--steps", "1"]);
    let states = fixed.witnesses.iter().find(|w| w.name == "states").unwrap();
    assert_eq!(states.entries, [["1", "1"], ["0", "1"]]);
    assert_eq!(run(&["simulate", &nil, "N", "B", "--x0", x0.path().to_str().unwrap(), "--boundary", "free"]).exit_code, 2);
}

#[test]
fn verify_suite() {
    let id = run(&["verify", &fixture("gf3.txt"), "I", "I"]);
    assert_eq!(id.status, Status::Ok, "{:?}", id.checks);
    let z30 = run(&["verify", "--trials", "4", &fixture("z30.txt"), "A", "B"]);
    assert_eq!(z30.status, Status::Ok);
    assert_eq!(z30.checks.iter().filter(|c| c.name.starts_with("base change")).count(), 3);
    let poly = run(&["verify", &fixture("polygf2.txt"), "A", "A"]);
    assert_eq!(poly.status, Status::Ok, "{:?}", poly.checks);
    let bad = run(&["verify", &fixture("bad_section.txt"), "A", "B", "--section", "S"]);
    assert_eq!(bad.status, Status::Violation);
    assert!(bad.checks.iter().any(|c| c.name == "splitting" && !c.passed));
    assert!(run(&["verify", &fixture("bad_section.txt"), "A", "B"]).checks.iter().all(|c| c.passed));
}

#[test]
fn seeds_are_reproducible() {
    let f = fixture("gf3.txt");
    let a = run(&["verify", "--seed", "7", &f, "A", "B"]);
    assert_eq!(a, run(&["verify", "--seed", "7", &f, "A", "B"]));
    assert!(a.checks.iter().any(|c| c.detail.contains("seed 7")));
}

#[test]
fn exit_codes_from_the_binary() {
    let z30 = fixture("z30.txt");
    assert_eq!(exit_code(&["kernel-pair", &z30, "A", "B"]), 0);
    assert_eq!(exit_code(&["member", &z30, "A", "B", "1"]), 1);
    assert_eq!(exit_code(&["verify", &fixture("bad_section.txt"), "A", "B", "--section", "S"]), 1);
    assert_eq!(exit_code(&["kernel", &fixture("broken.txt"), "A"]), 2);
    assert_eq!(exit_code(&["kernel", &z30, "C"]), 2);
    assert_eq!(exit_code(&["kernel", "/nonexistent/file", "A"]), 2);
    assert_eq!(exit_code(&["frobnicate"]), 2);
}

#[test]
fn parse_errors_report_lines() {
    let doc = run(&["kernel", &fixture("broken.txt"), "A"]);
    assert_eq!(doc.status, Status::Error);
    assert!(doc.messages[0].contains("line 4"), "{:?}", doc.messages);
}

#[test]
fn json_carries_the_plain_fields() {
    let args = ["--json", "kernel-pair", &fixture("z30.txt"), "A", "B"];
    let out = Command::new(env!("CARGO_BIN_EXE_kerpair")).args(args).output().unwrap();
    let parsed: ResultDocument = serde_json::from_slice(&out.stdout).unwrap();
    let mut direct = run(&args);
    direct.command = parsed.command.clone();
    assert_eq!(parsed, direct);

    let plain = direct.to_string();
    for b in &direct.bases {
        assert!(plain.contains(&b.name));
        for g in &b.generators {
            assert!(plain.contains(&format!("({})", g.join(" "))));
        }
    }
    for c in &direct.checks {
        assert!(plain.contains(&c.name));
    }
    for m in &direct.messages {
        assert!(plain.contains(m));
    }
}

/// Re-spanning every emitted basis reproduces it.
fn assert_bases_stable(doc: &ResultDocument, ring: &RingSpec) {
    for b in &doc.bases {
        let again = kerpair_cli::Basis::of(&b.name, &b.to_submodule(ring).unwrap());
        assert_eq!(&again, b, "{:?}", doc.command);
    }
    for p in &doc.per_prime {
        let local = ring.local_ring(p.prime).unwrap();
        for b in &p.bases {
            assert_eq!(&kerpair_cli::Basis::of(&b.name, &b.to_submodule(&local).unwrap()), b);
        }
    }
}

#[test]
fn result_bases_round_trip() {
    let cases = [
        ("z30.txt", vec!["A", "B"]),
        ("gf3.txt", vec!["A", "B"]),
        ("gf3.txt", vec!["Z", "I"]),
        ("polygf2.txt", vec!["A", "A"]),
        ("polygf2.txt", vec!["D", "One"]),
    ];
    for (name, mats) in cases {
        let path = fixture(name);
        let file = MatrixFile::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let doc = run(&["kernel-pair", &path, mats[0], mats[1]]);
        assert_bases_stable(&doc, &file.ring);
        let doc = run(&["kernel", &path, mats[0]]);
        assert_bases_stable(&doc, &file.ring);
    }
}

fn random_file(rng: &mut ChaCha8Rng) -> MatrixFile {
    let ring = match rng.gen_range(0..4) {
        0 => RingSpec::prime_field([2, 3, 5][rng.gen_range(0..3)]).unwrap(),
        1 => RingSpec::mod_ring([6, 30, 4][rng.gen_range(0..3)]).unwrap(),
        2 => RingSpec::poly_ring([2, 3][rng.gen_range(0..2)]).unwrap(),
        _ => RingSpec::poly_mod_ring(6).unwrap(),
    };
    let n = ring.modulus() as i64;
    let p = rng.gen_range(1..=3);
    let mut matrices = Vec::new();
    for name in ["A", "B"] {
        let cols = rng.gen_range(1..=3);
        let entries = (0..p * cols)
            .map(|_| {
                if ring.is_poly() {
                    let c: Vec<i64> = (0..rng.gen_range(0..4)).map(|_| rng.gen_range(0..n)).collect();
                    ring.poly(&c)
                } else {
                    ring.from_int(rng.gen_range(0..n))
                }
            })
            .collect();
        matrices.push((name.to_string(), Matrix::new(&ring, p, cols, entries).unwrap()));
    }
    MatrixFile { ring, matrices }
}

#[test]
fn random_files_round_trip_and_stay_canonical() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let file = random_file(&mut rng);
        let text = file.to_string();
        assert_eq!(MatrixFile::parse(&text).unwrap(), file);
        let tmp = temp_file(&text);
        let path = tmp.path().to_str().unwrap();
        let doc = run(&["kernel-pair", path, "A", "B"]);
        assert_eq!(doc.status, Status::Ok, "{text}\n{:?}", doc.messages);
        assert_bases_stable(&doc, &file.ring);
    }
}

#[test]
fn fixture_corpus_round_trips() {
    for name in ["z30.txt", "gf3.txt", "polygf2.txt", "delay.txt", "bad_section.txt", "nilpotent.txt"] {
        let file = MatrixFile::parse(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap();
        let printed = file.to_string();
        assert_eq!(MatrixFile::parse(&printed).unwrap(), file, "{name}");
    }
}
