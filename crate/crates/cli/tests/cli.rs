use assert_cmd::Command;
use serde_json::Value;

fn bin() -> Command {
    Command::cargo_bin("burstcover").unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = bin().args(args).args(["--emit", "json"]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn table1_passes_with_flagged_dependence() {
    let v = json(&["table1"]);
    let bch: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["bch"].as_u64().unwrap()).collect();
    let upper: Vec<i64> = v["rows"].as_array().unwrap().iter().map(|r| r["upper"].as_i64().unwrap()).collect();
    assert_eq!(bch, [9, 11, 12, 13, 14, 16]);
    assert_eq!(upper, [10, 11, 13, 14, 16, 17]);
    let dep = &v["dependences"][0];
    assert_eq!((dep["m"].as_u64(), dep["column"].as_str()), (Some(6), Some("melas")));
    assert!(v["unresolved"].as_array().unwrap().is_empty());
}

#[test]
fn table1_exit_codes() {
    bin().args(["table1", "--m-max", "6", "--strict"]).assert().code(3);
    bin().args(["table1", "--m-max", "6", "--strict", "--no-assert"]).assert().code(0);
    bin().args(["table1", "--m-max", "6", "--modulus", "0x5b", "--strict"]).assert().code(0);
    bin().args(["table1", "--m-max", "12"]).assert().code(4);
}

#[test]
fn table1_modulus_sweep() {
    let v = json(&["table1", "--m-max", "7", "--modulus", "all"]);
    let sweep = v["sensitivity"].as_array().unwrap();
    assert_eq!(sweep.len(), 2 * (6 + 18));
}

#[test]
fn radius_methods_agree() {
    let orbit = json(&["radius", "--code", "bch:2:5"]);
    let matrix = json(&["radius", "--code", "bch:2:5", "--method", "matrix"]);
    assert_eq!(orbit["result"]["b"], matrix["result"]["b"]);
    // Every syndrome of a Hamming code is a single column.
    let geometric = json(&["radius", "--code", "generic:15:0x13", "--method", "geometric"]);
    assert_eq!(geometric["result"]["b"], 1);
}

#[test]
fn csv_matches_json() {
    let v = json(&["radius", "--code", "melas:6", "--modulus", "0x5b"]);
    let out = bin().args(["radius", "--code", "melas:6", "--modulus", "0x5b", "--emit", "csv"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,r,g,method,cyclic,b,witness"));
    let cells: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(cells[0], v["code"]["n"].to_string());
    assert_eq!(cells[5], v["result"]["b"].to_string());
    assert_eq!(cells[5], "10");
}

#[test]
fn matrix_dump_packs_column_j_at_bit_j() {
    let v = json(&["radius", "--code", "generic:7:0xb", "--method", "matrix", "--dump-matrix"]);
    let rows: Vec<u64> = v["matrix"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| u64::from_str_radix(r.as_str().unwrap().trim_start_matches("0x"), 16).unwrap())
        .collect();
    assert_eq!(rows.len(), 3);
    // The first r columns of H are the unit vectors.
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row & 0b111, 1 << i);
        assert!(*row < 1 << 7);
    }
}

#[test]
fn descriptor_file_round_trip() {
    let v = json(&["radius", "--code", "bch:2:4"]);
    let dir = std::env::temp_dir().join(format!("burstcover-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bch24.json");
    std::fs::write(&path, v["code"].to_string()).unwrap();
    let again = json(&["radius", "--code", path.to_str().unwrap()]);
    assert_eq!(again, v);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn cover_certificate_verifies() {
    let v = json(&["cover", "--code", "bch:2:8", "--syndrome", "0xbeef", "--bprime", "12"]);
    assert_eq!(v["verified"], true);
    assert!(v["width"].as_u64().unwrap() <= 12);
    bin().args(["cover", "--code", "bch:2:8", "--syndrome", "0x10000"]).assert().code(1);
}

#[test]
fn bounds_hold() {
    let v = json(&["bounds", "--code", "melas:7"]);
    assert_eq!(v["radius"], 11);
    assert!(v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn lfsr_stats_dump_and_pattern() {
    let out = bin().args(["lfsr-stats", "--poly", "x^3+x+1", "--init", "0x1", "--dump", "7"]).output().unwrap();
    assert!(String::from_utf8(out.stdout).unwrap().contains("0x1 : 1001011"));
    let v = json(&["lfsr-stats", "--poly", "0xb", "--init", "0x1", "--pattern", "111"]);
    assert_eq!((v["period"].as_u64(), v["max_zero_run"].as_u64()), (Some(7), Some(2)));
    assert_eq!(v["pattern"]["count"], 1);
}

#[test]
fn verify_suites() {
    let v = json(&["verify", "appendix"]);
    assert_eq!(v["cases_checked"], 1600);
    let v = json(&["verify", "patterns", "--family", "bch", "--m", "6"]);
    assert!(v["violations"].as_array().unwrap().is_empty());
    let v = json(&["verify", "equivalence", "--nmax", "31"]);
    assert!(v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn seeded_output_is_deterministic() {
    let args = [
        "verify",
        "charsums",
        "--wcu-m-max",
        "4",
        "--laurent-m-max",
        "6",
        "--draws",
        "20",
        "--seed",
        "7",
        "--emit",
        "json",
    ];
    let a = bin().args(args).output().unwrap().stdout;
    let b = bin().env("BURSTCOVER_WORKERS", "1").args(args).output().unwrap().stdout;
    assert_eq!(a, b);
    assert!(String::from_utf8(a).unwrap().contains("\"seed\": 7"));
}

#[test]
fn bad_worker_count_is_rejected() {
    bin().env("BURSTCOVER_WORKERS", "0").args(["verify", "appendix"]).assert().code(1);
}
