use std::path::Path;
use std::process::{Command, Output};

fn obk(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_obk"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

#[test]
fn solve_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c.json");
    let out = obk(
        &[
            "solve",
            "--t1",
            "4",
            "--t2",
            "18",
            "--out",
            cert.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("21 factors"), "{stdout}");

    let out = obk(&["verify", cert.to_str().unwrap()], dir.path());
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("pass"));
}

#[test]
fn seed_flag_lands_in_provenance() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c.json");
    let out = obk(
        &[
            "solve",
            "--t1",
            "6",
            "--t2",
            "14",
            "--seed",
            "123",
            "--out",
            cert.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&cert).unwrap();
    assert!(text.contains("\"seed\": 123"), "{text}");
}

#[test]
fn out_of_scope_pair_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c.json");
    let out = obk(
        &[
            "solve",
            "--t1",
            "3",
            "--t2",
            "3",
            "--out",
            cert.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("(3,3)"));
    assert!(!cert.exists());
}

#[test]
fn special_case_is_flagged_in_provenance() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c.json");
    let out = obk(
        &[
            "solve",
            "--t1",
            "6",
            "--t2",
            "12",
            "--out",
            cert.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&cert).unwrap();
    assert!(text.contains("\"special_case\": true"));
}

#[test]
fn tampered_certificate_fails_with_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let cert_path = dir.path().join("c.json");
    obk(
        &[
            "solve",
            "--t1",
            "4",
            "--t2",
            "10",
            "--out",
            cert_path.to_str().unwrap(),
        ],
        dir.path(),
    );
    // Redirect factor 1's arcs onto factor 0's: every retargeted arc shows
    // up as a duplicate and the dropped ones as missing.
    let text = std::fs::read_to_string(&cert_path).unwrap();
    let mut cert = obk_core::cert::Certificate::from_json(&text).unwrap();
    cert.factors[1] = cert.factors[0].clone();
    std::fs::write(&cert_path, cert.to_json()).unwrap();

    let out = obk(&["verify", cert_path.to_str().unwrap()], dir.path());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(code(&out), 1, "{stdout}");
    assert!(stdout.contains("missing arc"), "{stdout}");
    assert!(stdout.contains("claimed by factors"), "{stdout}");
}

#[test]
fn truncated_certificate_is_malformed() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c.json");
    obk(
        &[
            "solve",
            "--t1",
            "4",
            "--t2",
            "10",
            "--out",
            cert.to_str().unwrap(),
        ],
        dir.path(),
    );
    let text = std::fs::read_to_string(&cert).unwrap();
    std::fs::write(&cert, &text[..text.len() / 3]).unwrap();
    let out = obk(&["verify", cert.to_str().unwrap()], dir.path());
    assert_eq!(code(&out), 2);
}

#[test]
fn missing_certificate_is_malformed() {
    let dir = tempfile::tempdir().unwrap();
    let out = obk(&["verify", "nope.json"], dir.path());
    assert_eq!(code(&out), 2);
}

#[test]
fn check_tuples_default_and_single_case() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.txt");
    let out = obk(
        &["check-tuples", "--report", report.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(code(&out), 0);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("64 tuples"), "{stdout}");
    assert!(stdout.contains("4 special"), "{stdout}");
    let text = std::fs::read_to_string(&report).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("tuple ")).count(), 64);

    let out = obk(
        &[
            "check-tuples",
            "--case",
            "4,10",
            "--report",
            report.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&report).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("tuple ")).count(), 9);

    let out = obk(&["check-tuples", "--case", "5,10"], dir.path());
    assert_eq!(code(&out), 2);
}

#[test]
fn corrupted_data_dir_fails_naming_tuple_and_condition() {
    let dir = tempfile::tempdir().unwrap();
    // Copy embedded data out, then corrupt one tuple in one case: swap the
    // anchor's interior to overlap the outbound path.
    let data = dir.path().join("data");
    std::fs::create_dir(&data).unwrap();
    for &(t1, q) in &obk_core::tuple_store::CASE_KEYS {
        let tuples =
            obk_core::tuple_store::load_case(&obk_core::tuple_store::DataSource::Embedded, t1, q)
                .unwrap();
        let mut text = obk_core::tuple_store::serialize_case(&tuples);
        if (t1, q) == (4, 10) {
            // Swap the first anchor's last vertex for x2: still a valid
            // host cycle of the right length, but x2 sits on tuple 0's
            // return path, so the audit must flag core disjointness.
            let needle = "X: x3 y5 y3 x4";
            assert!(text.contains(needle), "serialized layout changed");
            text = text.replacen(needle, "X: x3 y5 y3 x2", 1);
        }
        std::fs::write(data.join(format!("case_t{t1}_q{q}.txt")), text).unwrap();
    }
    for &(t1, t2) in &obk_core::tuple_store::SPECIAL_KEYS {
        let special = obk_core::tuple_store::load_special(
            &obk_core::tuple_store::DataSource::Embedded,
            t1,
            t2,
        )
        .unwrap();
        std::fs::write(
            data.join(format!("special_t{t1}_t{t2}.txt")),
            obk_core::tuple_store::serialize_special(&special),
        )
        .unwrap();
    }
    std::fs::write(data.join("km_cache.txt"), "").unwrap();

    let report = dir.path().join("report.txt");
    let out = Command::new(env!("CARGO_BIN_EXE_obk"))
        .args(["check-tuples", "--report", report.to_str().unwrap()])
        .env("OBK_DATA_DIR", &data)
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 1, "{}", String::from_utf8_lossy(&out.stdout));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("(4,10)#0"), "{stdout}");
    assert!(stdout.contains("core disjointness"), "{stdout}");
}

#[test]
fn export_dot_single_factor_and_all() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c.json");
    obk(
        &[
            "solve",
            "--t1",
            "4",
            "--t2",
            "10",
            "--out",
            cert.to_str().unwrap(),
        ],
        dir.path(),
    );

    let out = obk(
        &["export-dot", cert.to_str().unwrap(), "--factor", "0"],
        dir.path(),
    );
    assert_eq!(code(&out), 0);
    let dot = String::from_utf8_lossy(&out.stdout);
    assert_eq!(dot.matches(" -> ").count(), 14);
    assert!(dot.starts_with("digraph"));

    let out = obk(&["export-dot", cert.to_str().unwrap()], dir.path());
    let dot = String::from_utf8_lossy(&out.stdout);
    assert_eq!(dot.matches(" -> ").count(), 182);

    let out = obk(
        &["export-dot", cert.to_str().unwrap(), "--factor", "13"],
        dir.path(),
    );
    assert_eq!(code(&out), 2);

    let dot_file = dir.path().join("f.dot");
    let out = obk(
        &[
            "export-dot",
            cert.to_str().unwrap(),
            "--out",
            dot_file.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0);
    assert!(std::fs::read_to_string(&dot_file)
        .unwrap()
        .contains("digraph"));
}
