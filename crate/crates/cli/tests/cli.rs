use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn mss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mss")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

struct Split {
    dir: TempDir,
    secret: Vec<u8>,
}

impl Split {
    fn share(&self, i: usize) -> PathBuf {
        self.dir.path().join("out").join(format!("share_{i}.mss"))
    }

    fn public(&self) -> PathBuf {
        self.dir.path().join("out/public.mss")
    }

    fn recover(&self, shares: &[usize]) -> (Output, PathBuf) {
        let out = self.dir.path().join("recovered.bin");
        let public = self.public();
        let share_paths: Vec<PathBuf> = shares.iter().map(|&i| self.share(i)).collect();
        let mut args = vec!["recover", "--out", p(&out), "--public", p(&public), "--share"];
        args.extend(share_paths.iter().map(|s| p(s)));
        (mss(&args), out)
    }
}

fn split(secret: Vec<u8>, flags: &[&str]) -> (Split, Output) {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("secret.bin");
    fs::write(&input, &secret).unwrap();
    let out_dir = dir.path().join("out");
    let mut args = vec!["split", "--in", p(&input), "--out", p(&out_dir)];
    args.extend_from_slice(flags);
    let output = mss(&args);
    (Split { dir, secret }, output)
}

fn pseudo_random(len: usize, seed: u32) -> Vec<u8> {
    let mut x = seed.wrapping_mul(2654435761) | 1;
    (0..len)
        .map(|_| {
            x ^= x << 13;
            x ^= x >> 17;
            x ^= x << 5;
            x as u8
        })
        .collect()
}

#[test]
fn gf8_seven_symbol_round_trip() {
    let flags = [
        "--participants",
        "6",
        "--threshold",
        "3",
        "--backend",
        "rs",
        "--field-bits",
        "3",
        "--seed",
        "0102",
        "--insecure-deterministic",
    ];
    let (s, out) = split(vec![4], &flags);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("k = 7, r = 4"));
    for i in 1..=6 {
        assert!(s.share(i).exists());
    }
    assert!(s.public().exists());
    let (out, path) = s.recover(&[2, 3, 5]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("participants 2, 3, 5"));
    assert_eq!(fs::read(path).unwrap(), s.secret);
}

#[test]
fn seeded_split_is_reproducible() {
    let flags =
        ["--participants", "4", "--threshold", "2", "--backend", "evenodd", "--seed", "aa", "--insecure-deterministic"];
    let (a, _) = split(b"same input".to_vec(), &flags);
    let (b, _) = split(b"same input".to_vec(), &flags);
    assert_eq!(fs::read(a.share(1)).unwrap(), fs::read(b.share(1)).unwrap());
    let (c, _) = split(b"same input".to_vec(), &["--participants", "4", "--threshold", "2", "--backend", "evenodd"]);
    assert_ne!(fs::read(a.share(1)).unwrap(), fs::read(c.share(1)).unwrap());
}

#[test]
fn every_backend_round_trips() {
    let cases: [&[&str]; 6] = [
        &["--participants", "5", "--threshold", "3", "--backend", "rs"],
        &["--participants", "5", "--threshold", "3", "--backend", "rs", "--field-bits", "5"],
        &["--participants", "5", "--threshold", "3", "--backend", "evenodd"],
        &["--participants", "8", "--threshold", "4", "--backend", "evenodd", "--prime", "11", "--lane-bytes", "3"],
        &["--participants", "6", "--threshold", "3", "--backend", "grdp"],
        &["--participants", "4", "--threshold", "2", "--backend", "grdp", "--lane-bytes", "1"],
    ];
    for (n, flags) in cases.iter().enumerate() {
        let (s, out) = split(pseudo_random(5000 + n, n as u32), flags);
        assert_eq!(code(&out), 0, "{flags:?}: {}", stderr(&out));
        let participants: usize = flags[1].parse().unwrap();
        let threshold: usize = flags[3].parse().unwrap();
        let chosen: Vec<usize> = (1..=participants).rev().take(threshold + 1).collect();
        let (out, path) = s.recover(&chosen);
        assert_eq!(code(&out), 0, "{flags:?}: {}", stderr(&out));
        assert_eq!(fs::read(path).unwrap(), s.secret, "{flags:?}");
    }
}

#[test]
fn single_participant_is_one_time_pad() {
    let (s, out) = split(b"xor".to_vec(), &["--participants", "1", "--threshold", "1", "--backend", "rs"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let share = fs::read(s.share(1)).unwrap();
    let public = fs::read(s.public()).unwrap();
    let body = |b: &[u8]| b[32..].to_vec();
    let xored: Vec<u8> = body(&share).iter().zip(body(&public)).map(|(a, b)| a ^ b).collect();
    assert_eq!(xored, b"xor");
    let (out, path) = s.recover(&[1]);
    assert_eq!(code(&out), 0);
    assert_eq!(fs::read(path).unwrap(), b"xor");
}

#[test]
fn invalid_flags_exit_2() {
    let cases: [&[&str]; 6] = [
        &["--participants", "4", "--threshold", "0", "--backend", "rs"],
        &["--participants", "4", "--threshold", "5", "--backend", "rs"],
        &["--participants", "4", "--threshold", "2", "--backend", "raid5"],
        &["--participants", "4", "--threshold", "2", "--backend", "rs", "--seed", "00"],
        &["--participants", "4", "--threshold", "2", "--backend", "evenodd", "--field-bits", "4"],
        &["--participants", "4", "--threshold", "2", "--backend", "rs", "--prime", "5"],
    ];
    for flags in cases {
        let (s, out) = split(b"x".to_vec(), flags);
        assert_eq!(code(&out), 2, "{flags:?}");
        assert!(!s.dir.path().join("out").exists(), "{flags:?} wrote output");
    }
}

#[test]
fn rejected_config_exit_4_without_output() {
    for flags in [
        &["--participants", "5", "--threshold", "2", "--backend", "grdp"][..],
        &["--participants", "9", "--threshold", "2", "--backend", "rs", "--field-bits", "3"],
        &["--participants", "6", "--threshold", "2", "--backend", "evenodd", "--prime", "5"],
    ] {
        let (s, out) = split(b"x".to_vec(), flags);
        assert_eq!(code(&out), 4, "{flags:?}: {}", stderr(&out));
        assert!(!s.dir.path().join("out").exists());
    }
}

#[test]
fn too_few_shares_exit_5() {
    let (s, _) = split(b"secret".to_vec(), &["--participants", "5", "--threshold", "3", "--backend", "rs"]);
    let (out, path) = s.recover(&[1, 4]);
    assert_eq!(code(&out), 5);
    assert!(stderr(&out).contains("threshold is 3"));
    assert!(!path.exists());
}

#[test]
fn mixed_packages_exit_6() {
    let flags = ["--participants", "5", "--threshold", "2", "--backend", "rs"];
    let (a, _) = split(b"first secret".to_vec(), &flags);
    let (b, _) = split(b"second, longer secret".to_vec(), &flags);
    let out_path = a.dir.path().join("mixed.bin");
    let out =
        mss(&["recover", "--out", p(&out_path), "--public", p(&a.public()), "--share", p(&a.share(1)), p(&b.share(2))]);
    assert_eq!(code(&out), 6, "{}", stderr(&out));
    assert!(!out_path.exists());
}

#[test]
fn corrupt_or_missing_artifacts_exit_3() {
    let (s, _) = split(b"payload".to_vec(), &["--participants", "3", "--threshold", "2", "--backend", "evenodd"]);
    let mut bytes = fs::read(s.share(2)).unwrap();
    *bytes.last_mut().unwrap() ^= 0x80;
    fs::write(s.share(2), &bytes).unwrap();

    let out = mss(&["inspect", p(&s.share(2))]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("CRC MISMATCH"));
    let (out, _) = s.recover(&[1, 2]);
    assert_eq!(code(&out), 3);
    let (out, _) = s.recover(&[1, 4]);
    assert_eq!(code(&out), 3, "missing file");
    let out = mss(&["inspect", p(&s.dir.path().join("secret.bin"))]);
    assert_eq!(code(&out), 3);
}

#[test]
fn inspect_reports_header() {
    let (s, _) =
        split(vec![7; 100], &["--participants", "4", "--threshold", "2", "--backend", "grdp", "--lane-bytes", "2"]);
    let out = mss(&["inspect", p(&s.share(4))]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for needle in
        ["share of participant 4", "backend:     grdp", "k:           5", "r:           3", "chunk_count: 13", "CRC OK"]
    {
        assert!(text.contains(needle), "{needle:?} missing from\n{text}");
    }
    let out = mss(&["inspect", p(&s.public())]);
    assert!(stdout(&out).contains("public parities"));
}

#[test]
fn audit_verdicts_and_codes() {
    let out = mss(&[
        "audit",
        "--backend",
        "rs",
        "--field-bits",
        "3",
        "--participants",
        "3",
        "--threshold",
        "2",
        "--adversary",
        "1",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("PerfectlyUniform"));

    let out = mss(&[
        "audit",
        "--backend",
        "grdp",
        "--participants",
        "4",
        "--threshold",
        "3",
        "--lane-bytes",
        "1",
        "--adversary",
        "1,4",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("PerfectlyUniform"));

    let out = mss(&[
        "audit",
        "--backend",
        "rs",
        "--field-bits",
        "3",
        "--participants",
        "3",
        "--threshold",
        "2",
        "--adversary",
        "1,2",
    ]);
    assert_eq!(code(&out), 2);
    let out = mss(&["audit", "--backend", "rs", "--participants", "5", "--threshold", "3", "--adversary", "1"]);
    assert_eq!(code(&out), 8);
}
