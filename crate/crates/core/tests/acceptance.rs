//! Acceptance criteria. Runs without the libtest harness so that each
//! criterion prints exactly one PASS/FAIL line; exits nonzero if any fail.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use owalink::conditions::{
    check_nec_monotone, check_nec_ratio, check_ratio_increasing, check_suf, default_bound,
};
use owalink::owa::e_bar;
use owalink::{
    cluster, compare_strategies, owa, search_counterexample, ClassicalKind, CoefficientSequence64,
    LinkageMethod64, OwaLinkageSpec64, Status, Strategy,
};
use rand::Rng;

const EPS: f64 = 1e-12;
const EIGHT_TERM: &str = "1,1/2,3/8,3/8,9/32,9/32,9/32,9/32;zero";
const FOUR_POINT: [[f64; 4]; 4] = [
    [0.0, 0.4, 0.6, 0.9],
    [0.4, 0.0, 0.9, 0.6],
    [0.6, 0.9, 0.0, 0.7],
    [0.9, 0.6, 0.7, 0.0],
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn seq(s: &str) -> CoefficientSequence64 {
    s.parse().unwrap()
}

fn method(s: &str, strategy: Strategy) -> LinkageMethod64 {
    LinkageMethod64::parse(s, strategy).unwrap()
}

fn heights(points: &[Vec<f64>], m: &LinkageMethod64) -> Vec<f64> {
    cluster(&dataset(points), m).unwrap().heights()
}

fn merges(points: &[Vec<f64>], m: &LinkageMethod64) -> Vec<(usize, usize, f64)> {
    cluster(&dataset(points), m)
        .unwrap()
        .merges()
        .iter()
        .map(|r| (r.left_id, r.right_id, r.height))
        .collect()
}

/// The 100 datasets shared by criteria 4 and 5.
fn shared_datasets() -> Vec<Vec<Vec<f64>>> {
    let mut r = rng(4);
    (0..100).map(|_| random_dataset(&mut r, 40, 5)).collect()
}

fn criterion_1() -> Outcome {
    let rows: Vec<Vec<f64>> = FOUR_POINT.iter().map(|r| r.to_vec()).collect();
    let data = matrix_dataset(&rows);
    let m = method("owa:lo:1,1;zero", Strategy::Incremental);
    let start = Instant::now();
    let tree = cluster(&data, &m).unwrap();
    let report = tree.detect_inversions(EPS);
    let elapsed = start.elapsed();
    let h = tree.heights();
    let expect = [0.4, 0.7, 0.6];
    let heights_ok = h.len() == 3 && h.iter().zip(expect).all(|(a, b)| (a - b).abs() <= 1e-12);
    let one = report.len() == 1 && report.inversions[0].step == 3;
    let fast = elapsed < Duration::from_millis(10);
    outcome(
        heights_ok && one && fast,
        format!("heights {h:?}, {} inversion(s), {elapsed:?}", report.len()),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let c = seq(EIGHT_TERM);
    let spec = OwaLinkageSpec64::largest_first(c.clone());
    let u = e_bar(&c, 1, 3).unwrap();
    let v = e_bar(&c, 2, 5).unwrap();
    let uv: Vec<f64> = u.iter().chain(&v).copied().collect();
    let owa_u = owa(&spec, &u).unwrap();
    let owa_v = owa(&spec, &v).unwrap();
    let owa_uv = owa(&spec, &uv).unwrap();
    let cw = [1.0, 0.5, 0.375, 0.375, 0.28125, 0.28125, 0.28125, 0.28125];
    let oracle_uv = naive_owa(&cw, false, true, &uv);
    let exact = 3.3515625 / 3.375;
    let search = search_counterexample(&c, 8).unwrap();
    let elapsed = start.elapsed();
    let cert_ok = search
        .certificate
        .as_ref()
        .is_some_and(|cert| cert.owa_uv < 1.0 && cert.replay(&c).unwrap() == 0.0);
    let pass = (owa_u - 1.0).abs() <= 1e-12
        && (owa_v - 1.0).abs() <= 1e-12
        && (owa_uv - 0.99306).abs() <= 1e-5
        && (owa_uv - exact).abs() <= 1e-12
        && (owa_uv - oracle_uv).abs() <= 1e-12
        && cert_ok
        && elapsed < Duration::from_secs(1);
    outcome(
        pass,
        format!("owa(u)={owa_u}, owa(v)={owa_v}, owa(u,v)={owa_uv}, certificate found: {cert_ok}, {elapsed:?}"),
    )
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut suf_pass = vec![
        "1,0;zero".to_string(),
        "1;repeat".to_string(),
        "1,1/2,1/5,7/75;zero".to_string(),
        "1,2,1,1;zero".to_string(),
        "1,2,2,1;zero".to_string(),
    ];
    for k in 1..=6 {
        suf_pass.push(format!("{};zero", vec!["1"; k].join(",")));
    }
    let mut failures = Vec::new();
    for s in &suf_pass {
        let c = seq(s);
        if !check_suf(&c, default_bound(&c)).unwrap().holds() {
            failures.push(format!("suf_main fails on {s}"));
        }
    }
    let c = seq(EIGHT_TERM);
    let m = default_bound(&c);
    if !check_nec_monotone(&c, m).unwrap().holds() {
        failures.push("nec_monotone fails on the 8-term sequence".into());
    }
    if !check_nec_ratio(&c, m).unwrap().holds() {
        failures.push("nec_ratio fails on the 8-term sequence".into());
    }
    if check_suf(&c, m).unwrap().status != Status::Fails {
        failures.push("suf_main does not fail on the 8-term sequence".into());
    }
    let c = seq("1,1/2,1/5,7/75;zero");
    let v = check_ratio_increasing(&c, default_bound(&c)).unwrap();
    let ratios = v.violation.map(|x| x.ratios).unwrap_or_default();
    let want = [2.0, 2.5, 15.0 / 7.0];
    let ratios_ok = v.status == Status::Fails
        && ratios.len() == 3
        && ratios.iter().zip(want).all(|(a, b)| (a - b).abs() <= 1e-12);
    if !ratios_ok {
        failures.push(format!("ratio_increasing witness ratios {ratios:?}"));
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(1) {
        failures.push(format!("took {elapsed:?}"));
    }
    let detail = if failures.is_empty() {
        format!(
            "{} sufficient sequences, ratios {ratios:?}, {elapsed:?}",
            suf_pass.len()
        )
    } else {
        failures.join("; ")
    };
    outcome(failures.is_empty(), detail)
}

fn criterion_4(datasets: &[Vec<Vec<f64>>]) -> Outcome {
    let kinds = [
        (ClassicalKind::Single, Oracle::Single),
        (ClassicalKind::Complete, Oracle::Complete),
        (ClassicalKind::Average, Oracle::Average),
        (ClassicalKind::WeightedAverage, Oracle::Weighted),
    ];
    let mut worst = 0.0f64;
    let mut mismatched = 0;
    for points in datasets {
        let dm = square_matrix(points);
        for (kind, oracle) in &kinds {
            let lw = merges(
                points,
                &LinkageMethod64::classical(*kind, Strategy::Incremental),
            );
            let defn = merges(
                points,
                &LinkageMethod64::classical(*kind, Strategy::Recompute),
            );
            let naive = oracle_cluster(oracle, points, &dm);
            for other in [&defn, &naive] {
                for (a, b) in lw.iter().zip(other.iter()) {
                    if (a.0, a.1) != (b.0, b.1) {
                        mismatched += 1;
                    }
                    worst = worst.max((a.2 - b.2).abs());
                }
            }
        }
    }
    outcome(
        mismatched == 0 && worst <= 1e-9,
        format!(
            "{} datasets x 4 kinds, merge mismatches {mismatched}, max height diff {worst:e}",
            datasets.len()
        ),
    )
}

fn criterion_5(datasets: &[Vec<Vec<f64>>]) -> Outcome {
    let pairs = [
        ("owa:hi:1,0;zero", ClassicalKind::Complete),
        ("owa:lo:1,0;zero", ClassicalKind::Single),
        ("owa:hi:1;repeat", ClassicalKind::Average),
        ("owa:lo:1;repeat", ClassicalKind::Average),
    ];
    let mut worst = 0.0f64;
    let mut mismatched = 0;
    for points in datasets {
        for (spec, kind) in pairs {
            let o = merges(points, &method(spec, Strategy::Incremental));
            for strategy in [Strategy::Recompute, Strategy::Incremental] {
                let c = merges(points, &LinkageMethod64::classical(kind, strategy));
                for (a, b) in o.iter().zip(&c) {
                    if (a.0, a.1) != (b.0, b.1) {
                        mismatched += 1;
                    }
                    worst = worst.max((a.2 - b.2).abs());
                }
            }
        }
    }
    outcome(
        mismatched == 0 && worst <= 1e-12,
        format!("merge mismatches {mismatched}, max height diff {worst:e}"),
    )
}

/// Third point at distance `b` from the origin and `c` from `(a, 0)`.
fn triangle(a: f64, b: f64, c: f64) -> Vec<Vec<f64>> {
    let x = (a * a + b * b - c * c) / (2.0 * a);
    let y = (b * b - x * x).sqrt();
    vec![vec![0.0, 0.0], vec![a, 0.0], vec![x, y]]
}

fn centroid_inversions(points: &[Vec<f64>]) -> (usize, usize, Vec<f64>) {
    let oracle = oracle_cluster(&Oracle::Centroid, points, &square_matrix(points));
    let oh: Vec<f64> = oracle.iter().map(|m| m.2).collect();
    let lib = cluster(
        &dataset(points),
        &LinkageMethod64::classical(ClassicalKind::Centroid, Strategy::Incremental),
    )
    .unwrap();
    (
        count_drops(&oh, EPS),
        lib.detect_inversions(EPS).len(),
        lib.heights(),
    )
}

fn criterion_6() -> (Outcome, String) {
    let kinds = [
        ClassicalKind::Single,
        ClassicalKind::Complete,
        ClassicalKind::Average,
        ClassicalKind::WeightedAverage,
        ClassicalKind::Ward,
    ];
    let mut r = rng(6);
    let mut total = 0;
    for _ in 0..200 {
        let points = random_dataset(&mut r, 40, 5);
        for kind in kinds {
            let tree = cluster(
                &dataset(&points),
                &LinkageMethod64::classical(kind, Strategy::Incremental),
            )
            .unwrap();
            total += tree.detect_inversions(EPS).len();
        }
    }
    // Near-equilateral: the pair at distance 2 merges first and its
    // centroid lies closer than 2 to the third point.
    let (oracle_drops, lib_inv, h) = centroid_inversions(&triangle(2.0, 2.0, 2.2));
    let crafted_ok = oracle_drops >= 1 && lib_inv >= 1;
    // With sides 2, 2, 3 the centroid ends up farther away (sqrt 5.5 > 2).
    let (wide_oracle, wide_lib, wide_h) = centroid_inversions(&triangle(2.0, 2.0, 3.0));
    let note = format!(
        "note: centroid on a 2-2-3 triangle gives heights {wide_h:?}, {wide_lib} inversion(s) (oracle {wide_oracle})"
    );
    (
        outcome(
            total == 0 && crafted_ok,
            format!(
                "monotone kinds: {total} inversions over 200 datasets; 2-2-2.2 centroid heights {h:?}, {lib_inv} inversion(s) (oracle {oracle_drops})"
            ),
        ),
        note,
    )
}

/// `c_1 = 1`, `c_2 >= c_3 >= ... >= c_s > 0` with `c_2` possibly above one.
fn random_monotone(r: &mut rand_chacha::ChaCha8Rng) -> CoefficientSequence64 {
    let s = r.gen_range(2..=6);
    let mut prefix = vec![1.0, r.gen_range(0.05..2.0)];
    while prefix.len() < s {
        let last = *prefix.last().unwrap();
        prefix.push(last * r.gen_range(0.3..=1.0));
    }
    CoefficientSequence64::new(prefix, owalink::TailPolicy::Zero).unwrap()
}

fn criterion_7() -> (Outcome, Option<String>) {
    let mut r = rng(7);
    let mut sufficient = Vec::new();
    let mut attempts = 0;
    while sufficient.len() < 50 && attempts < 100_000 {
        attempts += 1;
        let c = random_monotone(&mut r);
        if check_suf(&c, default_bound(&c)).unwrap().holds() {
            sufficient.push(c);
        }
    }
    let datasets: Vec<Vec<Vec<f64>>> = (0..50).map(|_| random_dataset(&mut r, 20, 5)).collect();
    let mut inversions = 0;
    for c in &sufficient {
        let m = LinkageMethod64::owa(
            OwaLinkageSpec64::largest_first(c.clone()),
            Strategy::Incremental,
        );
        for points in &datasets {
            inversions += count_drops(&heights(points, &m), EPS);
        }
    }

    let mut failing = 0;
    let mut required = 0;
    let mut found_required = 0;
    let mut found_small = 0;
    while failing < 20 {
        let s = r.gen_range(3..=6);
        let mut prefix: Vec<f64> = vec![1.0];
        prefix.extend((1..s).map(|_| r.gen_range(0.0..1.5)));
        let c = CoefficientSequence64::new(prefix, owalink::TailPolicy::Zero).unwrap();
        let v = check_nec_monotone(&c, default_bound(&c)).unwrap();
        let Some(viol) = v.violation else { continue };
        failing += 1;
        let found = search_counterexample(&c, 8)
            .unwrap()
            .certificate
            .is_some_and(|cert| cert.replay(&c).unwrap() <= 1e-12);
        if viol.rhs - viol.lhs > 1e-6 {
            required += 1;
            found_required += usize::from(found);
        } else {
            found_small += usize::from(found);
        }
    }
    let caveat = (required < failing).then(|| {
        format!(
            "note: {} sequence(s) violate monotonicity by at most 1e-6; certificates found for {found_small} of them (bounded search)",
            failing - required
        )
    });
    (
        outcome(
            sufficient.len() == 50 && inversions == 0 && found_required == required,
            format!(
                "{} sufficient sequences x 50 datasets: {inversions} inversions; certificates for {found_required}/{required} monotonicity violations",
                sufficient.len()
            ),
        ),
        caveat,
    )
}

fn criterion_8() -> Outcome {
    let mut r = rng(8);
    let fixed = [
        "owa:hi:1,1/2,3/8,3/8,9/32,9/32,9/32,9/32",
        "owa:lo:1,1",
        "owa:hi:1,1,1",
        "owa:lo:1,1/2;repeat",
    ];
    let mut worst = 0.0f64;
    let mut diverged = 0;
    for i in 0..100 {
        let points = random_dataset(&mut r, 40, 5);
        let data = dataset(&points);
        let mut specs: Vec<OwaLinkageSpec64> =
            fixed.iter().map(|s| s[4..].parse().unwrap()).collect();
        let c = random_monotone(&mut r);
        specs.push(if i % 2 == 0 {
            OwaLinkageSpec64::largest_first(c)
        } else {
            OwaLinkageSpec64::smallest_first(c)
        });
        for spec in specs {
            let cmp = compare_strategies(&data, &LinkageMethod64::owa(spec, Strategy::Recompute))
                .unwrap();
            worst = worst.max(cmp.max_height_difference);
            diverged += usize::from(cmp.first_divergence.is_some());
        }
    }
    outcome(
        worst <= 1e-12 && diverged == 0,
        format!("500 runs: max height diff {worst:e}, diverging merge sequences {diverged}"),
    )
}

fn main() -> ExitCode {
    let datasets = shared_datasets();
    let (c6, note6) = criterion_6();
    let (c7, note7) = criterion_7();
    let results = [
        ("1", "inversion instance", criterion_1()),
        ("2", "counterexample values", criterion_2()),
        ("3", "condition verdict table", criterion_3()),
        (
            "4",
            "Lance-Williams vs definitional",
            criterion_4(&datasets),
        ),
        (
            "5",
            "OWA reductions to classical linkages",
            criterion_5(&datasets),
        ),
        ("6", "inversion-freeness and centroid inversion", c6),
        ("7", "sufficient condition in action", c7),
        ("8", "strategy agreement", criterion_8()),
    ];
    let mut failed = 0;
    for (id, name, o) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {id} [{tag}] {name}: {}", o.detail);
        failed += usize::from(!o.pass);
    }
    println!("{note6}");
    if let Some(n) = note7 {
        println!("{n}");
    }
    println!(
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
