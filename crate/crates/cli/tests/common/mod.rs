#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;
use std::process::Command;

/// `(name, arguments)`; the golden file is `tests/golden/<name>.txt`.
#[rustfmt::skip]
pub const CASES: &[(&str, &[&str])] = &[
    ("primes", &["primes", "--bound", "50"]),
    ("primes_csv", &["primes", "--bound", "20", "--format", "csv"]),
    ("factor", &["factor", "--n", "360"]),
    ("factor_one_json", &["factor", "--N", "1", "--format", "json"]),
    ("factor_zero", &["factor", "--n", "0"]),
    ("valuation", &["valuation", "--q", "12/5", "--p", "2"]),
    ("valuation_zero_json", &["valuation", "--q", "0", "--p", "3", "--format", "json"]),
    ("valuation_not_prime", &["valuation", "--q", "3", "--p", "4"]),
    ("absval_finite", &["absval", "--q", "12/5", "--place", "5"]),
    ("absval_inf_csv", &["absval", "--q", "-7/2", "--place", "inf", "--format", "csv"]),
    ("product_formula", &["product-formula", "--q", "31/30"]),
    ("product_formula_json", &["product-formula", "--q", "-360/77", "--format", "json"]),
    ("euclid_witness", &["euclid-witness", "--primes", "2,3,5,7"]),
    ("euclid_witness_json", &["euclid-witness", "--primes", "2,3", "--format", "json"]),
    ("approximate", &["approximate", "--targets", "2:1,3:0,inf:100", "--eps", "1/4"]),
    ("approximate_json", &["approximate", "--targets", "2:1,3:0,inf:100", "--eps", "1/4", "--format", "json"]),
    ("approximate_decimal_csv", &["approximate", "--targets", "5:1/3,inf:-2", "--eps", "1/10", "--decimal", "4", "--format", "csv"]),
    ("smooth", &["smooth", "--r", "2", "--n", "100"]),
    ("smooth_csv", &["smooth", "--r", "3", "--N", "30", "--format", "csv"]),
    ("erdos_bound", &["erdos-bound", "--r", "3", "--n", "1000"]),
    ("erdos_scan_json", &["erdos-bound", "--r", "2", "--n", "10000", "--scan", "--format", "json"]),
    ("tail_sum", &["tail-sum", "--r", "2", "--bound", "10"]),
    ("tail_sum_decimal", &["tail-sum", "--r", "1", "--bound", "100", "--decimal", "6"]),
    ("minimal_r", &["minimal-r", "--bound", "1000"]),
    ("minimal_r_json", &["minimal-r", "--bound", "100000", "--theta", "1/2", "--format", "json"]),
    ("recip_sum", &["recip-sum", "--bound", "30"]),
    ("recip_sum_decimal", &["recip-sum", "--bound", "1000", "--decimal", "12"]),
    ("recip_sum_enclosure", &["recip-sum", "--bound", "10000000", "--enclosure", "--decimal", "12"]),
    ("recip_sum_over_limit", &["recip-sum", "--bound", "2000000"]),
    ("density_json", &["density", "--r", "2", "--checkpoints", "10,100", "--format", "json"]),
    ("density_csv", &["density", "--r", "3", "--checkpoints", "10,20,30", "--format", "csv"]),
    ("classify", &["classify", "--n", "360", "--r", "3", "--m", "2"]),
    ("classify_json", &["classify", "--n", "1080", "--r", "3", "--m", "3", "--format", "json"]),
    ("classify_not_smooth", &["classify", "--n", "14", "--r", "3", "--m", "2"]),
    ("partition", &["partition", "--r", "2", "--n", "100", "--m", "3"]),
    ("partition_json", &["partition", "--r", "2", "--n", "50", "--m", "2", "--show", "3", "--format", "json"]),
    ("decompose", &["decompose", "--n", "1000", "--m", "2"]),
    ("decompose_json", &["decompose", "--n", "1296", "--m", "3", "--format", "json"]),
    ("find_ap", &["find-ap", "--set", "1,2,4,5,7"]),
    ("find_ap_none_json", &["find-ap", "--set", "1,2,4,5", "--format", "json"]),
    ("find_ap_k4", &["find-ap", "--set", "1-3,5,7,9,20", "--k", "4"]),
    ("ap_free_max", &["ap-free-max", "--n", "9"]),
    ("ap_free_max_json", &["ap-free-max", "--n", "12", "--format", "json"]),
    ("ap_free_max_over_limit", &["ap-free-max", "--n", "70"]),
    ("class_scan", &["class-scan", "--r", "4", "--n", "100", "--m", "2", "--k", "3"]),
    ("class_scan_one_json", &["class-scan", "--r", "4", "--n", "100", "--m", "2", "--k", "3", "--class", "(0,0,0,0)", "--format", "json"]),
    ("class_scan_cubes", &["class-scan", "--r", "2", "--n", "1000", "--m", "3", "--k", "3"]),
    ("verify_cubes", &["verify-cubes", "--bound", "100"]),
    ("verify_cubes_json", &["verify-cubes", "--bound", "100", "--format", "json"]),
    ("verify_powers", &["verify-powers", "--exp", "4", "--bound", "50"]),
    ("verify_powers_json", &["verify-powers", "--exp", "5", "--bound", "30", "--format", "json"]),
    ("verify_squares4_json", &["verify-squares4", "--bound", "100", "--format", "json"]),
    ("squares3", &["squares3", "--bound", "35"]),
    ("squares3_csv", &["squares3", "--bound", "20", "--format", "csv"]),
    ("prove_seki_json", &["prove", "--route", "seki", "--r", "2", "--N", "1000", "--format", "json"]),
    ("prove_demo", &["prove", "--route", "demo", "--r", "4", "--n", "100"]),
    ("prove_demo_csv", &["prove", "--route", "demo", "--r", "4", "--n", "100", "--format", "csv"]),
    ("prove_granville", &["prove", "--route", "granville", "--r", "3", "--n", "10000"]),
    ("prove_seki_threads", &["prove", "--route", "Seki", "--r", "3", "--n", "10000", "--threads", "4"]),
    ("unknown_subcommand", &["bogus"]),
    ("missing_argument", &["factor"]),
    ("bad_rational", &["product-formula", "--q", "1/0"]),
    ("bad_route", &["prove", "--route", "roth", "--r", "2", "--n", "10"]),
];

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_valprime")
}

/// Exit code, stdout and stderr of one run, in the golden file layout.
pub fn transcript(args: &[&str]) -> String {
    let out = Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs");
    format!(
        "$ valprime {}\nexit: {}\n--- stdout\n{}--- stderr\n{}",
        args.join(" "),
        out.status
            .code()
            .map_or("signal".to_string(), |c| c.to_string()),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr),
    )
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.txt"))
}

/// Compares every case with its golden file, or rewrites the files when
/// `update` is set. Returns the names that differ.
pub fn check_goldens(update: bool) -> Vec<String> {
    let mut mismatched = Vec::new();
    for (name, args) in CASES {
        let got = transcript(args);
        let path = golden_path(name);
        if update {
            fs::create_dir_all(path.parent().unwrap()).unwrap();
            fs::write(&path, &got).unwrap();
            continue;
        }
        match fs::read_to_string(&path) {
            Ok(want) if want == got => {}
            Ok(want) => {
                eprintln!("golden mismatch {name}\n--- want\n{want}\n--- got\n{got}");
                mismatched.push(name.to_string());
            }
            Err(_) => {
                eprintln!("golden file missing: {}", path.display());
                mismatched.push(name.to_string());
            }
        }
    }
    mismatched
}
