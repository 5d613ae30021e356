//! Staircase export to CSV and JSON files.

use std::fs;

use sturmian_jsr::family::builtin_hmst;
use sturmian_jsr::staircase::{build_staircase, export, ExportFormat, Staircase, CSV_HEADER};
use sturmian_jsr::{rat, FloatCtx};

#[test]
fn csv_has_header_and_one_row_per_step() {
    let ctx = FloatCtx::default();
    let st = build_staircase(&builtin_hmst(), 30, &ctx).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("stairs.csv");
    export(&st, ExportFormat::Csv, &path, None, 20).unwrap();
    let mut rdr = csv::Reader::from_path(&path).unwrap();
    assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>(), CSV_HEADER.to_vec());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), st.len());
    assert_eq!(&rows[0][2], "0");
    let half = rows.iter().find(|r| &r[2] == "1" && &r[3] == "2").unwrap();
    assert_eq!(&half[5], "4/5");
    assert_eq!(&half[6], "5/4");
    // Rows are sorted by alpha.
    let lo: Vec<f64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    assert!(lo.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn restricted_export_keeps_only_steps_in_range() {
    let ctx = FloatCtx::default();
    let st = build_staircase(&builtin_hmst(), 30, &ctx).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("part.json");
    let (a, b) = (rat(0, 1), rat(5, 4));
    export(&st, ExportFormat::Json, &path, Some((&a, Some(&b))), 12).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let steps = doc["steps"].as_array().unwrap();
    assert!(!steps.is_empty() && steps.len() < st.len());
    assert_eq!(doc["qmax"], 30);
    for s in steps {
        let hi: f64 = s["alpha_hi"].as_str().unwrap().parse().unwrap();
        assert!(hi <= 1.25 + 1e-12);
    }
    assert_eq!(steps.last().unwrap()["exact_hi"], "5/4");
}

#[test]
fn empty_staircase_exports_header_only() {
    let ctx = FloatCtx::default();
    let st = Staircase::empty("hmst", &ctx);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.csv");
    export(&st, ExportFormat::Csv, &path, None, 20).unwrap();
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.trim_end(), CSV_HEADER.join(","));
}
