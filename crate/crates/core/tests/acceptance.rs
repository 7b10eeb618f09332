//! One PASS/FAIL line per acceptance criterion. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use burnside_lab::fpgroup::{perm_compose, perm_is_identity, regular_representation, CosetTable, CosetTableJson, Perm};
use burnside_lab::render::{hexagon_tiling_b23, interiors_overlap, Color};
use burnside_lab::schottky::{automorphy_residual, HExpr, SchottkyConfig};
use common::{brute_closure_mod8, cross_check, SMALL_GROUPS};
use num_complex::Complex64;
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_burnside-lab");

const LIMIT_ORDER_504: Duration = Duration::from_secs(10);
const LIMIT_VERIFY_504: Duration = Duration::from_secs(30);
const LIMIT_BURNSIDE_LARGE: Duration = Duration::from_secs(60);
const LIMIT_CROSS_ORACLE: Duration = Duration::from_secs(60);
const EXIT_UNDECIDED: i32 = 5;
const CERTIFY_BOUND: usize = 5_000;
const SAMPLE_POINTS: [[f64; 2]; 5] = [[0.3, 0.7], [0.0, 2.0], [1.5, -1.0], [-1.2, 0.4], [4.5, 1.5]];

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn cli(args: &[&str]) -> (i32, Value, Duration) {
    let start = Instant::now();
    let out = Command::new(BIN)
        .args(["--json", "--no-timing"])
        .args(args)
        .env_remove("BURNSIDE_LAB_MAX_COSETS")
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    let report = serde_json::from_slice(&out.stdout).expect("JSON report");
    (out.status.code().unwrap_or(-1), report, elapsed)
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn load_table(path: &Path) -> CosetTable {
    let json: CosetTableJson = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    CosetTable::from_json(&json).unwrap()
}

fn exponent_holds(t: &CosetTable, n: u64) -> Result<usize, String> {
    let g = regular_representation(t).map_err(|e| e.to_string())?;
    let elements = g.elements(CERTIFY_BOUND).map_err(|e| e.to_string())?;
    for e in &elements {
        let mut acc: Perm = (0..e.len() as u32).collect();
        for _ in 0..n {
            acc = perm_compose(&acc, e);
        }
        if !perm_is_identity(&acc) {
            return Err(format!("element violates g^{n} = 1"));
        }
    }
    Ok(elements.len())
}

fn criterion_1() -> Result<String, String> {
    let (code, r, t) = cli(&["order", data("psl504.grp").to_str().unwrap()]);
    ensure(code == 0, format!("exit {code}"))?;
    ensure(r["results"]["order"] == 504, format!("order {}", r["results"]["order"]))?;
    ensure(t < LIMIT_ORDER_504, format!("took {t:?}"))?;
    Ok(format!("order = 504 in {:.2}s", t.as_secs_f64()))
}

fn criterion_2() -> Result<String, String> {
    let (code, r, t) = cli(&["verify-504"]);
    let res = &r["results"];
    ensure(code == 0, format!("exit {code}: {}", r["error"]))?;
    ensure(res["psl_order"] == 504, "PSL(2,8) order")?;
    ensure(res["simple"] == true, "simplicity verdict")?;
    ensure(res["presentation_order"] == 504, "presentation order")?;
    ensure(res["witness_found"] == true && res["witness"].is_object(), "witness images")?;
    ensure(res["isomorphism"] == true, "isomorphism verdict")?;
    ensure(t < LIMIT_VERIFY_504, format!("took {t:?}"))?;
    Ok(format!("|PSL(2,8)| = 504, simple, presented order 504, witness {}, in {:.2}s", res["witness"], t.as_secs_f64()))
}

fn criterion_3_and_4(dir: &Path) -> (Result<String, String>, Result<String, String>) {
    let mut lines = Vec::new();
    let mut soundness = Vec::new();
    let mut c3 = Ok(());
    for (m, n, order) in [(2u64, 2u64, 4u64), (2, 3, 27), (3, 3, 2187), (2, 4, 4096)] {
        let table = dir.join(format!("b{m}{n}.json"));
        let (code, r, t) = cli(&[
            "burnside",
            "--gens",
            &m.to_string(),
            "--exp",
            &n.to_string(),
            "--table-out",
            table.to_str().unwrap(),
        ]);
        let res = &r["results"];
        let ok = code == 0
            && res["order"] == order
            && res["certified"] == true
            && (order < 2000 || t < LIMIT_BURNSIDE_LARGE);
        lines.push(format!("B({m},{n})={} L={} {:.2}s", res["order"], res["L"], t.as_secs_f64()));
        if !ok {
            c3 = Err(format!("B({m},{n}): exit {code}, result {res}, {t:?}"));
            continue;
        }
        soundness.push(exponent_holds(&load_table(&table), n).map(|k| format!("B({m},{n}) {k} elements")));
    }
    let c3 = c3.map(|_| lines.join(", "));

    let c4 = (|| {
        let (code, r, _) = cli(&["burnside", "--gens", "2", "--exp", "5", "--max-len", "4"]);
        ensure(code == EXIT_UNDECIDED, format!("exit {code}"))?;
        ensure(r["results"]["order"].is_null(), "a finite order was reported")?;
        ensure(r["error"]["code"] == "undecided", "error code")?;
        let checked: Result<Vec<String>, String> = soundness.into_iter().collect();
        let checked = checked?;
        ensure(checked.len() == 4, "not every decided case was checked")?;
        Ok(format!("B(2,5) max-len 4 undecided (exit 5); g^n = 1 on all of {}", checked.join(", ")))
    })();
    (c3, c4)
}

fn criterion_5() -> Result<String, String> {
    let (code, r, _) = cli(&["fricke-mod8"]);
    ensure(code == 0, format!("exit {code}"))?;
    let oracle = brute_closure_mod8(&[[1, 2, 0, 1], [1, 0, 2, 1]]).len();
    ensure(r["results"]["order"] == oracle, format!("cli {} vs oracle {oracle}", r["results"]["order"]))?;
    Ok(format!("closure order {oracle} matches brute-force oracle"))
}

fn criterion_6() -> Result<String, String> {
    for m in 1..=10u64 {
        for n in 2..=10u64 {
            let (code, r, _) = cli(&["dimension-count", "--m", &m.to_string(), "--n", &n.to_string()]);
            let res = &r["results"];
            let expect = [
                ("zeros", 2 * m * (n - 1)),
                ("independents", (2 * m + 1) * (n - 1)),
                ("arbitraries_left", n - 1),
                ("arbitraries_required", n),
                ("deficiency", 1),
            ];
            ensure(code == 0, format!("m={m} n={n}: exit {code}"))?;
            for (key, v) in expect {
                ensure(res[key] == v, format!("m={m} n={n}: {key} = {} expected {v}", res[key]))?;
            }
        }
    }
    Ok("deficiency 1 and all four counts exact for 1<=m<=10, 2<=n<=10".into())
}

fn criterion_7() -> Result<String, String> {
    let (code, r, _) = cli(&["poincare", data("reference_config.json").to_str().unwrap()]);
    ensure(code == 0, format!("exit {code}"))?;
    ensure(r["results"]["d"] == -4 && r["results"]["K"] == 8, "reference config is not d=-4, K=8")?;
    // decay_ratios[i] compares shell i+1 with shell i
    let ratios: Vec<f64> = r["results"]["decay_ratios"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    ensure(ratios.len() == 8, "ratio count")?;
    let tail = &ratios[2..];
    ensure(tail.iter().all(|&x| x < 1.0), format!("ratios {tail:?}"))?;

    let cfg = SchottkyConfig::reference();
    let h = HExpr::one();
    let mut worst: f64 = 0.0;
    for p in SAMPLE_POINTS {
        let z = Complex64::new(p[0], p[1]);
        for g in 1..=cfg.n() as i32 {
            let gamma = cfg.letter_map(g);
            let r2 = automorphy_residual(&cfg, &h, -4, z, &gamma, 2).map_err(|e| e.to_string())?;
            let r8 = automorphy_residual(&cfg, &h, -4, z, &gamma, 8).map_err(|e| e.to_string())?;
            ensure(r8 < r2, format!("z={z} g{g}: residual K=8 {r8:e} not below K=2 {r2:e}"))?;
            worst = worst.max(r8 / r2);
        }
    }
    Ok(format!(
        "max ratio k>=3 {:.2e}; residual K=8 / K=2 at most {worst:.2e} over 5 points",
        tail.iter().cloned().fold(0.0, f64::max)
    ))
}

fn criterion_8(dir: &Path) -> Result<String, String> {
    let table = dir.join("b23_render.json");
    let svg = dir.join("hexagon.svg");
    let (code, _, _) = cli(&["burnside", "--gens", "2", "--exp", "3", "--table-out", table.to_str().unwrap()]);
    ensure(code == 0, "burnside 2 3 failed")?;
    let (code, _, _) = cli(&[
        "render",
        "--kind",
        "hexagon",
        "--in",
        table.to_str().unwrap(),
        "--out",
        svg.to_str().unwrap(),
    ]);
    ensure(code == 0, format!("render exit {code}"))?;
    let text = std::fs::read_to_string(&svg).map_err(|e| e.to_string())?;
    let polygons = text.matches("<polygon").count();
    let black = text.matches(r#"fill="black""#).count();
    let white = text.matches(r#"fill="white""#).count();
    ensure((polygons, black, white) == (54, 27, 27), format!("{polygons} polygons, {black} black, {white} white"))?;

    let tiling = hexagon_tiling_b23(&load_table(&table)).map_err(|e| e.to_string())?;
    let tris = &tiling.triangles;
    for (i, s) in tris.iter().enumerate() {
        for t in &tris[i + 1..] {
            ensure(!interiors_overlap(&s.vertices, &t.vertices), "overlapping triangles")?;
        }
    }
    ensure(tiling.count(Color::Black) == 27, "tiling colour count")?;
    Ok("54 polygons, 27 black, 27 white, no two interiors overlap".into())
}

fn criterion_9() -> Result<String, String> {
    let start = Instant::now();
    for (name, text, order) in SMALL_GROUPS {
        cross_check(text, order).map_err(|e| format!("{name}: {e}"))?;
    }
    let t = start.elapsed();
    ensure(t < LIMIT_CROSS_ORACLE, format!("took {t:?}"))?;
    Ok(format!("{} presentations agree with BFS order and pass the relator audit in {:.2}s", SMALL_GROUPS.len(), t.as_secs_f64()))
}

fn guarded(f: impl FnOnce() -> Result<String, String>) -> Result<String, String> {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()))
}

#[test]
fn acceptance() {
    let dir = tempfile::tempdir().unwrap();
    let (c3, c4) = catch_unwind(AssertUnwindSafe(|| criterion_3_and_4(dir.path())))
        .unwrap_or_else(|_| (Err("panicked".into()), Err("panicked".into())));
    let results = [
        (1, guarded(criterion_1)),
        (2, guarded(criterion_2)),
        (3, c3),
        (4, c4),
        (5, guarded(criterion_5)),
        (6, guarded(criterion_6)),
        (7, guarded(criterion_7)),
        (8, guarded(|| criterion_8(dir.path()))),
        (9, guarded(criterion_9)),
    ];
    let mut failed = Vec::new();
    for (k, r) in &results {
        match r {
            Ok(msg) => println!("criterion {k}: PASS  {msg}"),
            Err(msg) => {
                println!("criterion {k}: FAIL  {msg}");
                failed.push(*k);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
