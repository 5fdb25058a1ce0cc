//! The JSON front end driven in-process, as the `dcm` binary does.

use dcmedia::cli::{self, Kind, Options};

fn main() {
    let built = cli::run("build", None, &Options { seed: 1, random: Some(Kind::Sdcm), ..Options::default() });
    let report: serde_json::Value = serde_json::from_str(&built.report).expect("report is JSON");
    let document = serde_json::to_string(&report["input"]).expect("document");
    println!("build exit {}, class {}", built.code, report["results"]["class"]);

    let detected = cli::run("detect-dcm", Some(&document), &Options::default());
    let report: serde_json::Value = serde_json::from_str(&detected.report).expect("report is JSON");
    println!("detect-dcm exit {}, witnesses {}", detected.code, report["results"]["witnesses"].as_array().map_or(0, Vec::len));

    let bad = cli::run("dispersion", Some("{\"kind\": "), &Options::default());
    println!("malformed input exit {}:\n{}", bad.code, bad.report);
}
