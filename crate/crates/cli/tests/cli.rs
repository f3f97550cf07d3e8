use std::process::Command as Process;

use serde_json::Value;
use tripnet_cli::{
    cmd_base_curve, cmd_curve, cmd_optimal_net, cmd_verify, BaseCurveArgs, CliError, CurveArgs,
    Format, OptimalNetArgs, OutputArgs, RangeArgs, Suite, VerifyArgs,
};
use tripnet_core::Net;

fn out(format: Format, precision: usize) -> OutputArgs {
    OutputArgs {
        format,
        out: None,
        precision,
    }
}

fn range(p_min: f64, p_max: f64, step: f64) -> RangeArgs {
    RangeArgs {
        p_min,
        p_max,
        step,
        p: None,
    }
}

fn curve(n: f64, range: RangeArgs, format: Format) -> String {
    cmd_curve(&CurveArgs {
        n,
        range,
        output: out(format, 9),
    })
    .unwrap()
}

fn base(k: usize, format: Format) -> Result<String, CliError> {
    cmd_base_curve(&BaseCurveArgs {
        k,
        range: range(1.0, 4.0, 0.01),
        overlay_v: None,
        overlay_h: None,
        output: out(format, 9),
    })
}

fn net(k: usize, p: f64, format: Format, precision: usize) -> Result<String, CliError> {
    cmd_optimal_net(&OptimalNetArgs {
        k,
        p,
        format,
        out: None,
        precision,
    })
}

fn verify(suite: Suite, k: Option<usize>) -> VerifyArgs {
    VerifyArgs {
        suite,
        n: 1.0,
        k,
        p: 2.0,
        p_min: 1.0,
        p_max: 8.0,
        step: None,
        seed: 7,
        epsilon: 0.02,
        theta_res: 1e-5,
        count: None,
        c_prime: None,
        pivot_height: 0.5,
        out: None,
    }
}

#[test]
fn single_sample_curve_row() {
    let args = CurveArgs {
        n: 2.0,
        range: RangeArgs {
            p: Some(5.0),
            ..range(1.0, 2.0, 0.1)
        },
        output: out(Format::Csv, 6),
    };
    assert_eq!(cmd_curve(&args).unwrap(), "p,c,branch\n5,0.4,vertical\n");
    let args = CurveArgs {
        n: 2.0,
        range: RangeArgs {
            p: Some(7.0),
            ..args.range
        },
        ..args
    };
    assert!(cmd_curve(&args).unwrap().ends_with(",diagonal\n"));
}

#[test]
fn curve_markers_for_unit_hole() {
    let doc: Value =
        serde_json::from_str(&curve(1.0, range(1.0, 4.0, 0.01), Format::Json)).unwrap();
    let w = doc["w_n"].as_f64().unwrap();
    assert!((w - (1.0 + 2f64.sqrt())).abs() < 1e-9);
    assert_eq!(doc["markers"][0].as_f64(), Some(1.0));
    assert_eq!(doc["samples"].as_array().unwrap().len(), 301);
    let svg = curve(1.0, range(1.0, 4.0, 0.01), Format::Svg);
    assert!(svg.starts_with("<?xml") && svg.contains("version=\"1.1\""));
    assert!(svg.contains("w_n = 2.414214"));
    assert!(svg.contains("p = n = 1"));
}

#[test]
fn empty_range_is_a_usage_error() {
    let args = CurveArgs {
        n: 1.0,
        range: range(2.0, 2.0, 0.1),
        output: out(Format::Csv, 9),
    };
    assert!(matches!(cmd_curve(&args), Err(CliError::Usage(_))));
    let args = CurveArgs {
        n: 1.0,
        range: range(1.0, 2.0, 0.0),
        output: out(Format::Csv, 9),
    };
    assert!(matches!(cmd_curve(&args), Err(CliError::Usage(_))));
    let args = CurveArgs {
        n: 1.0,
        range: range(1.0, 2.0, 0.1),
        output: out(Format::Csv, 18),
    };
    assert!(matches!(cmd_curve(&args), Err(CliError::Usage(_))));
    let args = CurveArgs {
        n: 0.5,
        range: range(1.0, 2.0, 0.1),
        output: out(Format::Csv, 9),
    };
    assert!(matches!(cmd_curve(&args), Err(CliError::Core(_))));
}

#[test]
fn base_curve_crossover_annotations() {
    let doc: Value = serde_json::from_str(&base(2, Format::Json).unwrap()).unwrap();
    assert_eq!(doc["crossover"].as_f64(), Some(1.5));
    assert!(doc.get("crossover_unshifted_formula").is_none());

    let doc: Value = serde_json::from_str(&base(3, Format::Json).unwrap()).unwrap();
    assert_eq!(doc["crossover"].as_f64(), Some(2.0));
    assert_eq!(doc["crossover_unshifted_formula"].as_f64(), Some(1.0));
    let svg = base(3, Format::Svg).unwrap();
    assert!(svg.contains("crossover 2") && svg.contains("unshifted formula 1"));

    assert!(matches!(base(0, Format::Csv), Err(CliError::Usage(_))));
}

#[test]
fn base_curve_overlay_markers() {
    let args = BaseCurveArgs {
        k: 4,
        range: range(1.0, 8.0, 0.05),
        overlay_v: Some(1),
        overlay_h: Some(3),
        output: out(Format::Json, 9),
    };
    let doc: Value = serde_json::from_str(&cmd_base_curve(&args).unwrap()).unwrap();
    assert_eq!(doc["overlay"]["split"], "N(3,1)");
    let m: Vec<f64> = doc["overlay"]["markers"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert!((m[0] - 5.0 / 3.0).abs() < 1e-9);
    assert_eq!(m[1], 2.0);
    assert!((m[2] - (1.0 + 2f64.sqrt())).abs() < 1e-9);
    assert!(m[3] > 2.0);
    let csv = cmd_base_curve(&BaseCurveArgs {
        output: out(Format::Csv, 9),
        ..args
    })
    .unwrap();
    assert!(csv.starts_with("p,c,net,overlay\n"));
    for line in csv.lines().skip(1) {
        let f: Vec<f64> = line.split(',').filter_map(|x| x.parse().ok()).collect();
        assert!(f[1] <= f[2] + 1e-9, "base curve above overlay: {line}");
    }
}

#[test]
fn optimal_net_outputs() {
    let doc: Value = serde_json::from_str(&net(2, 3.0, Format::Json, 12).unwrap()).unwrap();
    assert_eq!(doc["split"], "N(1,1)");
    assert!((doc["scale_factor"].as_f64().unwrap() - 2f64.sqrt() / 8.0).abs() < 1e-12);
    let parsed: Net = serde_json::from_value(doc["net"].clone()).unwrap();
    assert_eq!(parsed, Net::evenly_spaced(1, 1));

    let doc: Value = serde_json::from_str(&net(2, 1.0, Format::Json, 9).unwrap()).unwrap();
    assert_eq!(doc["split"], "N(2,0)");
    assert_eq!(doc["scale_factor"].as_f64(), Some(0.333333333));

    let doc: Value = serde_json::from_str(&net(1, 1.0, Format::Json, 9).unwrap()).unwrap();
    assert_eq!(doc["split"], "N(1,0)");
    assert_eq!(doc["scale_factor"].as_f64(), Some(0.5));

    assert!(matches!(
        net(2, 1.0, Format::Csv, 9),
        Err(CliError::Usage(_))
    ));
    assert!(matches!(
        net(0, 1.0, Format::Json, 9),
        Err(CliError::Usage(_))
    ));
}

#[test]
fn intruder_stays_in_maximizing_hole() {
    for (k, p) in [(2, 3.0), (2, 1.0), (3, 2.5), (5, 7.0), (6, 1.2), (4, 12.0)] {
        let doc: Value = serde_json::from_str(&net(k, p, Format::Json, 17).unwrap()).unwrap();
        let h = &doc["hole"];
        let (x, y) = (h["x"].as_f64().unwrap(), h["y"].as_f64().unwrap());
        let (w, hh) = (h["width"].as_f64().unwrap(), h["height"].as_f64().unwrap());
        for q in h["intruder"].as_array().unwrap() {
            let (qx, qy) = (q[0].as_f64().unwrap(), q[1].as_f64().unwrap());
            assert!(qx >= x - 1e-9 && qx <= x + w + 1e-9, "k={k} p={p}");
            assert!(qy >= y - 1e-9 && qy <= y + hh + 1e-9, "k={k} p={p}");
        }
        let svg = net(k, p, Format::Svg, 9).unwrap();
        assert!(svg.contains("<polygon"));
        assert_eq!(svg.matches("stroke=\"firebrick\"").count(), k);
    }
}

#[test]
fn verify_suites_pass() {
    let r = cmd_verify(&verify(Suite::TheoremEven, Some(4))).unwrap();
    assert!(r.success);
    let doc: Value = serde_json::from_str(&r.text).unwrap();
    let first = &doc["reports"][0];
    assert_eq!(first["winner"], "N(4,0)");
    assert_eq!(first["candidates"].as_array().unwrap().len(), 5);

    let r = cmd_verify(&verify(Suite::CurveOracle, None)).unwrap();
    assert!(r.success);
    let doc: Value = serde_json::from_str(&r.text).unwrap();
    assert!(doc["reports"][0]["winning_value"].as_f64().unwrap() < 5e-5);

    let r = cmd_verify(&verify(Suite::LocalOptimum, Some(3))).unwrap();
    assert!(r.success);
    let doc: Value = serde_json::from_str(&r.text).unwrap();
    assert_eq!(doc["checks"], 502);
    assert_eq!(doc["parameters"]["seed"], 7);

    let r = cmd_verify(&verify(Suite::Lagrange, Some(6))).unwrap();
    assert!(r.success);
    let r = cmd_verify(&VerifyArgs {
        count: Some(50),
        ..verify(Suite::Irregular, Some(5))
    })
    .unwrap();
    assert!(r.success);
}

#[test]
fn failing_verification_reports_first_failure() {
    let r = cmd_verify(&VerifyArgs {
        c_prime: Some(0.9),
        ..verify(Suite::Lagrange, Some(2))
    })
    .unwrap();
    assert!(!r.success);
    assert!(r.failure.is_some());
    let doc: Value = serde_json::from_str(&r.text).unwrap();
    assert_eq!(doc["passed"], false);
}

#[test]
fn outputs_are_reproducible() {
    let a = curve(1.5, range(1.0, 9.0, 0.05), Format::Csv);
    let b = curve(1.5, range(1.0, 9.0, 0.05), Format::Csv);
    assert_eq!(a, b);
    let args = VerifyArgs {
        count: Some(40),
        ..verify(Suite::Irregular, Some(4))
    };
    assert_eq!(
        cmd_verify(&args).unwrap().text,
        cmd_verify(&args).unwrap().text
    );
}

#[test]
fn binary_exit_codes_and_files() {
    let bin = env!("CARGO_BIN_EXE_tripnet");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.csv");
    let status = Process::new(bin)
        .args(["curve", "--n", "2", "--p", "5", "--precision", "6", "--out"])
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "p,c,branch\n5,0.4,vertical\n"
    );

    let o = Process::new(bin)
        .args(["curve", "--p-min", "2", "--p-max", "2"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));

    let report = dir.path().join("report.json");
    let o = Process::new(bin)
        .args([
            "verify",
            "lagrange",
            "--k",
            "2",
            "--c-prime",
            "0.9",
            "--out",
        ])
        .arg(&report)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("verification failed"));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["suite"], "lagrange");

    let o = Process::new(bin)
        .args(["verify", "theorem-odd", "--k", "5"])
        .output()
        .unwrap();
    assert!(o.status.success());
}
