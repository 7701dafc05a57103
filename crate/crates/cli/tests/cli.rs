use std::io::Write;
use std::process::{Command, Output, Stdio};

fn tuplecode(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tuplecode"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn memory_model() {
    let o = tuplecode(
        &["memory", "--n", "8", "--N", "2", "--C", "4", "--m", "28"],
        None,
    );
    assert!(o.status.success());
    assert_eq!(stdout(&o), "56 bytes\n");
    let o = tuplecode(&["memory", "--n", "8", "--N", "3"], None);
    assert_eq!(stdout(&o), "224 bytes\n");
    let o = tuplecode(&["memory", "--n", "12", "--N", "3"], None);
    assert_eq!(stdout(&o), "1760/3 bytes (586.6667)\n");
}

#[test]
fn decode_from_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let book = dir.path().join("book.txt");
    std::fs::write(&book, "# n=7 C=4\n0001101\n0010011\n0010100\n0100010\n").unwrap();
    let book = book.to_str().unwrap();
    let o = tuplecode(
        &["decode", "--codebook", book, "--n", "7", "--N", "2"],
        Some("0 1 1 1 1 0 1\n0010011\n"),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "00011010010011");
    assert_eq!(lines[1], "# classifiers m=21");
    assert_eq!(
        lines[2],
        "# group 1 0111101 votes=[10,3,6,1] winner=1 confidence=4"
    );
    assert!(lines[3].starts_with("# group 2 0010011 votes=[3,21,6,6] winner=2 confidence=15"));

    let o = tuplecode(
        &[
            "decode",
            "--codebook",
            book,
            "--n",
            "7",
            "--N",
            "3",
            "--classifiers",
            "12,21,33",
            "--keep",
        ],
        Some("0001111"),
    );
    assert!(o.status.success());
    assert!(stdout(&o).contains("m=3"));

    let o = tuplecode(
        &["decode", "--codebook", book, "--n", "7", "--N", "2"],
        Some("010"),
    );
    assert!(!o.status.success());
    let o = tuplecode(
        &["decode", "--codebook", book, "--n", "8", "--N", "2"],
        Some(""),
    );
    assert!(!o.status.success());
}

#[test]
fn run_writes_deterministic_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.toml");
    std::fs::write(
        &cfg,
        "iterations = 2\nprobability_grid = [0.0, 0.1]\ncodeword_lengths = [3, 4]\n",
    )
    .unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        let o = tuplecode(
            &[
                "run",
                "--test",
                "1",
                "--config",
                cfg.to_str().unwrap(),
                "--out",
                out.to_str().unwrap(),
                "--seed",
                "5",
            ],
            None,
        );
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert!(String::from_utf8_lossy(&o.stderr).contains("running test1"));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "n,N,m,C,probability,iterations,ber,total_inversions,avg_inversions,undecided,ties"
    );
    // n=3: N=2,3; n=4: N=2,3,4; two probabilities each.
    assert_eq!(lines.len(), 1 + 5 * 2);
    assert!(lines[1].starts_with("3,2,3,4,0.0,2,0.0,0,0.0,"));
}

#[test]
fn run_rejects_bad_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.toml");
    std::fs::write(&cfg, "message_bits = 1000\n").unwrap();
    let o = tuplecode(
        &["run", "--test", "1", "--config", cfg.to_str().unwrap()],
        None,
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not divisible"));
    let o = tuplecode(
        &["run", "--test", "1", "--config", "/nonexistent/cfg.toml"],
        None,
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn codebook_generation() {
    let o = tuplecode(&["codebook", "--n", "8", "--seed", "3"], None);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("# n=8 C=4\n"));
    assert_eq!(out.lines().count(), 5);
    assert!(!tuplecode(&["codebook", "--n", "2"], None).status.success());
}
