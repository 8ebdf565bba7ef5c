use std::path::PathBuf;
use std::process::{Command, Output};

use subtope_core::decomp::{reconstruct, DecompositionDoc};

fn fig1() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/fig1.cycle")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subtope"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn decompose_positive_tope() {
    let f = fig1();
    let o = run(&["decompose", "--cycle", f.to_str().unwrap(), "++++++", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("++++++ = S^1 + S^2 + 5S^4 + 3S^6 + 3S^9 + 5S^11"), "{out}");
    assert!(out.contains("D^0 + D^2 + D^4 + D^7 + D^9"), "{out}");
    assert!(out.contains("reconstruction matches"), "{out}");
}

#[test]
fn decompose_subtope_after_separator() {
    let f = fig1();
    let o = run(&["decompose", "--cycle", f.to_str().unwrap(), "--subtope", "--", "--0+--"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("(0,2,-3,4,-4,2)"), "{out}");
    assert!(out.contains("= 2S^1 + 4S^3 + 2S^5 + 3S^8 + 4S^10"), "{out}");
}

#[test]
fn decompose_json_is_parseable() {
    let f = fig1();
    let o = run(&["decompose", "--cycle", f.to_str().unwrap(), "--target=++++++", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let doc: DecompositionDoc = serde_json::from_value(v["decomposition"].clone()).unwrap();
    let (dec, cycle) = doc.into_parts().unwrap();
    assert_eq!(cycle.vertices().len(), 12);
    assert_eq!(reconstruct(&dec, &cycle.subtopes()).unwrap(), vec![1; 6]);
}

#[test]
fn matrices_for_odd_t_print_n_and_refuse_p() {
    let o = run(&["matrices", "--t", "5"]);
    assert_eq!(o.status.code(), Some(3));
    let out = stdout(&o);
    assert!(out.contains("rank N(5) = 4"), "{out}");
    assert!(!out.contains("P(5) ="), "{out}");
}

#[test]
fn matrices_print_p4() {
    let o = run(&["matrices", "--t", "4", "--distinguished"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("P(4) ="), "{out}");
    assert!(out.contains("rank N(4) = 4"), "{out}");
}

#[test]
fn closedform_cases() {
    let o = run(&["closedform", "--t", "6", "--neg", "2-3,5", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("P^1 + P^4 + P^6 - P^2 - P^5"), "{out}");
    assert!(out.contains("(3,-5,5,-3,1,1)"), "{out}");
    assert!(out.contains("(iii)"), "{out}");

    let out = stdout(&run(&["closedform", "--t", "6", "--neg", "1-t"]));
    assert!(out.contains("(-1,1,-1,1,-1,1)"), "{out}");
    assert!(out.contains("(ii)"), "{out}");

    let out = stdout(&run(&["closedform", "--t", "6", "--neg", "1-2"]));
    assert!(out.contains("(-1,1,1,-1,1,-1)"), "{out}");
}

#[test]
fn verify_fig1_passes() {
    let f = fig1();
    let o = run(&["verify", "--cycle", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("[FAIL]"));
}

#[test]
fn verify_odd_t_skips_singular_checks() {
    let o = run(&["verify", "--t", "5", "--random", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("[SKIP] topes"), "{out}");
    assert!(out.contains("[PASS] oracle"), "{out}");
}

#[test]
fn bench_csv() {
    let o = run(&["bench", "--t", "4,8", "--reps", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("t,rho,closed_ns,solve_ns,speedup"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["decompose", "--t", "6", "+x++++"]).status.code(), Some(2));
    assert_eq!(run(&["decompose", "--t", "6", "+++"]).status.code(), Some(2));
    assert_eq!(run(&["decompose", "--t", "5", "+++++"]).status.code(), Some(3));
    assert_eq!(run(&["closedform", "--t", "5", "--neg", "2"]).status.code(), Some(3));
    assert_eq!(run(&["closedform", "--t", "6", "--neg", "7"]).status.code(), Some(2));
}
