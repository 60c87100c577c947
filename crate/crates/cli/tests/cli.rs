use std::io::Write;
use std::process::{Command, Stdio};

use neretin_cli::run;

fn call(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["neretin"];
    argv.extend_from_slice(args);
    let out = run(argv, "");
    (out.code, out.stdout.trim_end().to_string())
}

fn ok(args: &[&str]) -> String {
    let (code, out) = call(args);
    assert_eq!(code, 0, "{args:?} -> {out}");
    out
}

#[test]
fn equality_after_expansion() {
    assert_eq!(ok(&["--q", "2", "eq", "tp{0,1,2->1,0,2}", "tp{00,01,1,2->10,11,0,2}"]), "true");
    assert_eq!(ok(&["--q", "2", "eq", "tp{0,1,2->1,0,2}", "tp{0,1,2->0,2,1}"]), "false");
}

#[test]
fn act_gives_the_swapped_end() {
    let out = ok(&["--q", "2", "act", "tp{0,1,2->1,0,2}", "ray{0.(1)}"]);
    // 1·1^ω in normal form
    assert_eq!(out, "ray{.(1)}");
    assert_eq!(ok(&["--q", "2", "dist", &out, "ray{1.(1)}"]), "0");
}

#[test]
fn theta_of_a_root_swap() {
    assert_eq!(ok(&["--q", "3", "theta", "ht[3,2]{t1:,t2: -> t2:,t1:}"]), "1");
    assert_eq!(ok(&["--q", "2", "theta", "ht[2,2]{t1:,t2: -> t2:,t1:}"]), "0");
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["--q", "2", "normalize", "tp{0,1 -> 1,0}"]).0, 1);
    assert_eq!(call(&["--q", "2", "normalize", "tp{0,1,2 -> 1,0"]).0, 1);
    assert_eq!(call(&["--q", "2", "theta", "tp{0,1,2->1,0,2}"]).0, 1);
    assert_eq!(call(&["--q", "1", "normalize", "e"]).0, 1);
    assert_eq!(call(&["normalize", "e"]).0, 1);
    // a similarity that is not an automorphism
    assert_eq!(call(&["--q", "2", "istp", "tp{00,01,1,2->0,10,11,2}"]).0, 2);
    assert_eq!(call(&["--q", "3", "evensplit", "ht[3,2]{t1:0,t1:1,t1:2,t2: -> t1:1,t1:0,t1:2,t2:}"]).0, 2);
}

#[test]
fn canonical_output_reparses() {
    for (q, expr) in [
        ("2", "tp{00,01,1,2->10,11,0,2}"),
        ("2", "pt{e:(1,0,2); 1:(1,0)}"),
        ("3", "tp{0,1,2,3 -> 3,2,1,0} * pt{2:(2,1,0)}"),
        ("2", "a = tp{0,1,2->1,0,2}; comm(a, pt{0:(1,0)})"),
    ] {
        let once = ok(&["--q", q, "normalize", expr]);
        assert_eq!(ok(&["--q", q, "normalize", &once]), once);
        assert_eq!(ok(&["--q", q, "eq", &once, expr]), "true");
    }
}

#[test]
fn automorphism_commands() {
    assert_eq!(ok(&["--q", "2", "isaut", "pt{e:(2,0,1)}"]), "true");
    assert_eq!(ok(&["--q", "2", "isaut", "tp{00,01,1,2->0,10,11,2}"]), "false");
    assert_eq!(ok(&["--q", "2", "istp", "pt{e:(1,0,2)}"]), "true");
    assert_eq!(ok(&["--q", "2", "vimage", "pt{e:(1,0,2)}", "01"]), "11");
    let factors = ok(&["--q", "2", "edgefactor", "pt{e:(1,0,2); 1:(1,0)}", "edge(e,0)"]);
    let product: Vec<&str> = factors.lines().map(|l| l.split("  fixes ").next().unwrap()).collect();
    assert_eq!(ok(&["--q", "2", "eq", &product.join(" * "), "pt{e:(1,0,2); 1:(1,0)}"]), "true");
}

#[test]
fn metric_commands() {
    assert_eq!(ok(&["--q", "2", "gromov", "ray{0.(1)}", "ray{01.(0)}"]), "2");
    assert_eq!(ok(&["--q", "2", "gromov", "ray{.(0)}", "ray{0.(0)}"]), "inf");
    assert_eq!(ok(&["--q", "2", "dist", "ray{0.(1)}", "ray{01.(0)}"]), "e^-2");
    assert_eq!(ok(&["--q", "2", "udist", "tp{0,1,2->1,0,2}", "tp{e->e}"]), "e^-0");
    assert_eq!(ok(&["--q", "2", "support", "tp{0,1,2->1,0,2}"]), "{0,1}");
    assert_eq!(ok(&["--q", "2", "scales", "tp{00,01,1,2->0,10,11,2}"]), "00: 1\n01: 0\n1: -1\n2: 0");
    assert_eq!(ok(&["--q", "2", "fixed", "tp{00,01,1,2->0,10,11,2}"]), "00: ray{.(0)}\n01: none\n1: ray{.(1)}\n2: ball");
}

#[test]
fn forest_commands() {
    let e = "ht[3,2]{t1:0,t1:1,t1:2,t2: -> t2:,t1:1,t1:2,t1:0}";
    let ts = ok(&["--q", "3", "transpositions", e]);
    assert_eq!(ok(&["--q", "3", "eq", &ts, e]), "true");
    let t = "ht[2,2]{t1:0,t1:1,t2: -> t2:,t1:1,t1:0}";
    let split = ok(&["--q", "2", "evensplit", t]);
    assert_eq!(split.matches("ht[").count(), 2);
    assert_eq!(ok(&["--q", "2", "eq", &split, t]), "true");
    let embedded = ok(&["--q", "2", "embed", "ht[2,2]{t1:,t2: -> t2:,t1:}", "edge(e,0)"]);
    assert_eq!(ok(&["--q", "2", "isaut", &embedded]), "true");
}

#[test]
fn conjugator_for_pair_products() {
    let p1 = "ht[2,2]{t1:0,t1:1,t2:0,t2:10,t2:11 -> t1:1,t1:0,t2:10,t2:0,t2:11}";
    let p2 = "ht[2,2]{t1:00,t1:01,t1:1,t2:0,t2:10,t2:11 -> t1:01,t1:00,t1:1,t2:0,t2:11,t2:10}";
    let c = ok(&["--q", "2", "conjpair", p1, p2]);
    let conj = format!("c = {c}; c * {p1} * inv(c)");
    assert_eq!(ok(&["--q", "2", "eq", &conj, p2]), "true");
}

#[test]
fn factor_recomposes() {
    let w = "tp{0,1,2->1,0,2} * pt{0:(1,0)} * tp{00,01,1,2->0,10,11,2}";
    let f = ok(&["--q", "2", "factor", w]);
    assert!(f.contains("pt{"), "{f}");
    assert_eq!(ok(&["--q", "2", "eq", &f, w]), "true");
}

#[test]
fn certificates_reverify() {
    let out = ok(&["--q", "2", "simplicity-cert", "tp{0,1,2->1,0,2}", "tp{0,1,20,21->0,1,21,20}", "tp{0,1,200,201,21->0,1,201,21,200}", "2"]);
    let target = out.lines().find_map(|l| l.strip_prefix("target = ")).unwrap();
    let cert = out.lines().find_map(|l| l.strip_prefix("certificate: ")).unwrap();
    assert_eq!(ok(&["--q", "2", "eq", cert, target]), "true");
    assert_eq!(ok(&["--q", "2", "eq", target, "comm(tp{0,1,20,21->0,1,21,20}, tp{0,1,200,201,21->0,1,201,21,200})"]), "true");

    let out = ok(&["--q", "2", "epstein-restrict", "tp{0,1,20,21->0,1,21,20}", "2", "tp{0,1,2->1,0,2}"]);
    let rho = out.lines().find_map(|l| l.strip_prefix("rho = ")).unwrap();
    let cert = out.lines().find_map(|l| l.strip_prefix("certificate: ")).unwrap();
    assert_eq!(ok(&["--q", "2", "eq", cert, rho]), "true");

    let g1 = "tp{0,1,20,21->0,1,21,20}";
    let g2 = "tp{0,1,200,201,21->0,1,201,21,200}";
    let out = ok(&["--q", "2", "epstein-comm", g1, g2, "2", "tp{0,1,2->1,0,2}", "tp{0,1,2->2,1,0}"]);
    let r1 = out.lines().find_map(|l| l.strip_prefix("rho1 = ")).unwrap();
    let r2 = out.lines().find_map(|l| l.strip_prefix("rho2 = ")).unwrap();
    assert_eq!(ok(&["--q", "2", "eq", &format!("comm({r1},{r2})"), &format!("comm({g1},{g2})")]), "true");
    assert_eq!(call(&["--q", "2", "simplicity-cert", "tp{e->e}", g1, g2, "2"]).0, 2);
    assert_eq!(call(&["--q", "2", "simplicity-cert", "tp{0,1,2->1,0,2}", g1, g1, "2"]).0, 2);
}

#[test]
fn nlc_demo_scales_grow() {
    let out = ok(&["--q", "2", "demo-nlc", "4"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[3].starts_with("B_4 = 00001  max scale 4"), "{}", lines[3]);
}

#[test]
fn random_is_seeded() {
    let a = ok(&["--q", "3", "--seed", "7", "random", "tp", "5"]);
    assert_eq!(a, ok(&["--q", "3", "--seed", "7", "random", "tp", "5"]));
    assert_ne!(a, ok(&["--q", "3", "--seed", "8", "random", "tp", "5"]));
    for kind in ["tp", "pt", "ray", "ht"] {
        for line in ok(&["--q", "3", "--seed", "1", "random", kind, "20"]).lines() {
            assert_eq!(ok(&["--q", "3", "normalize", line]), line);
        }
    }
    assert_eq!(call(&["--q", "3", "random", "nope"]).0, 1);
}

#[test]
fn json_lines_and_batch() {
    let out = run(
        ["neretin", "--q", "2", "--format", "json-lines", "--batch", "gromov"],
        "ray{0.(1)} | ray{01.(0)}\n\nray{.(0)}|ray{.(0)}\nray{.(5)}|ray{.(0)}\n",
    );
    assert_eq!(out.code, 1);
    let lines: Vec<serde_json::Value> = out.stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0]["format"], "neretin-json-lines");
    assert_eq!(lines[0]["version"], 1);
    assert_eq!(lines[1]["result"], 2);
    assert_eq!(lines[2]["result"], "inf");
    assert_eq!(lines[3]["ok"], false);
    assert_eq!(lines[3]["code"], 1);
}

#[test]
fn binary_round_trip() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_neretin"))
        .args(["--q", "2", "--batch", "normalize"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"tp{00,01,1,2->10,11,0,2}\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "tp{0,1,2 -> 1,0,2}\n");

    let status = Command::new(env!("CARGO_BIN_EXE_neretin"))
        .args(["--q", "2", "istp", "tp{00,01,1,2->0,10,11,2}"])
        .stderr(Stdio::null())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}
