use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use super::{max_cosets, CliError, Command, ErrorKind, RenderKind};
use crate::algebra::{element_order, group_closure, mat_to_literal, Carrier, FiniteField, Mat2, DEFAULT_CLOSURE_MAX};
use crate::burnside::{compute_burnside, BurnsideError, BurnsideSpec};
use crate::fpgroup::{coset_enumerate, lcm, parse_presentation, parse_word, CosetTable, CosetTableJson, FpError};
use crate::psl::{
    build_psl2, conj_classes, is_simple_by_class_equation, psl2_order, search_presentation_images,
    verify_presentation_hom,
};
use crate::render::{cayley_from_table, emit_dot, emit_svg_tiling, hexagon_tiling_b23, Color};
use crate::schottky::{
    automorphy_residual, dimension_count, poincare_partial_sum, series_csv, series_svg, SchottkyConfig,
    SeriesConfigJson,
};

pub const PSL504_PRESENTATION: &str = include_str!("../../data/psl504.grp");

type Outcome = Result<Value, CliError>;

pub(super) fn dispatch(cmd: &Command) -> (&'static str, Value, Outcome) {
    match cmd {
        Command::Order { file, max_cosets, table_out } => (
            "order",
            json!({ "file": file, "max_cosets": max_cosets, "table_out": table_out }),
            cmd_order(file, *max_cosets, table_out.as_deref()),
        ),
        Command::Burnside { gens, exp, max_len, max_cosets, table_out } => (
            "burnside",
            json!({ "m": gens, "n": exp, "max_len": max_len, "max_cosets": max_cosets, "table_out": table_out }),
            cmd_burnside(*gens, *exp, *max_len, *max_cosets, table_out.as_deref()),
        ),
        Command::Verify504 { poly, override_relator } => (
            "verify-504",
            json!({ "poly": poly, "override_relator": override_relator }),
            cmd_verify504(poly, override_relator.as_deref()),
        ),
        Command::FrickeMod8 => ("fricke-mod8", json!({}), cmd_fricke_mod8()),
        Command::Poincare { config, csv_out, svg_out } => (
            "poincare",
            json!({ "config": config, "csv_out": csv_out, "svg_out": svg_out }),
            cmd_poincare(config, csv_out.as_deref(), svg_out.as_deref()),
        ),
        Command::DimensionCount { m, n } => {
            ("dimension-count", json!({ "m": m, "n": n }), cmd_dimension_count(*m, *n))
        }
        Command::Render { kind, input, out, scale } => (
            "render",
            json!({ "kind": kind, "in": input, "out": out, "scale": scale }),
            cmd_render(*kind, input, out, *scale),
        ),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::new(ErrorKind::Io, format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::new(ErrorKind::Io, format!("cannot write {}: {e}", path.display())))
}

pub fn table_sha256(t: &CosetTable) -> String {
    hex::encode(Sha256::digest(t.to_json_string().as_bytes()))
}

pub fn cmd_order(file: &Path, cap: Option<usize>, table_out: Option<&Path>) -> Outcome {
    let text = read(file)?;
    let p = parse_presentation(&text).map_err(|e| CliError::new(ErrorKind::Parse, e.to_string()))?;
    let t = coset_enumerate(&p, &[], max_cosets(cap)?)?;
    if let Some(path) = table_out {
        write(path, &t.to_json_string())?;
    }
    Ok(json!({
        "order": t.nrows(),
        "generators": p.names(),
        "relators": p.relators().len(),
        "table_sha256": table_sha256(&t),
    }))
}

pub fn cmd_burnside(m: usize, n: u64, max_len: Option<usize>, cap: Option<usize>, table_out: Option<&Path>) -> Outcome {
    let mut spec = BurnsideSpec::new(m, n);
    if let Some(l) = max_len {
        spec.max_word_len = l;
    }
    spec.max_cosets = max_cosets(cap)?;
    match compute_burnside(&spec) {
        Ok(r) => {
            if let Some(path) = table_out {
                write(path, &r.table.to_json_string())?;
            }
            Ok(json!({
                "m": m,
                "n": n,
                "order": r.order,
                "L": r.relator_len_used,
                "certified": r.exponent_certified,
                "steps": r.steps,
                "table_sha256": table_sha256(&r.table),
            }))
        }
        Err(BurnsideError::Undecided { max_word_len, n, steps }) => {
            let partial = json!({ "m": m, "n": n, "order": null, "L": null, "certified": false, "steps": steps });
            Err(CliError::from(BurnsideError::Undecided { max_word_len, n, steps: Vec::new() }).with_partial(partial))
        }
        Err(e) => Err(e.into()),
    }
}

struct Pipeline {
    results: Map<String, Value>,
}

impl Pipeline {
    fn set(&mut self, key: &str, v: Value) {
        self.results.insert(key.to_string(), v);
    }

    fn fail(&self, stage: &str, e: impl Into<CliError>) -> CliError {
        let mut e = e.into();
        if e.kind != ErrorKind::Parse {
            e.kind = ErrorKind::Stage;
        }
        e.at_stage(stage).with_partial(Value::Object(self.results.clone()))
    }

    fn stage_error(&self, stage: &str, message: String) -> CliError {
        self.fail(stage, CliError::new(ErrorKind::Stage, message))
    }
}

fn parse_poly(text: &str) -> Result<Vec<u32>, CliError> {
    text.split(',')
        .map(|c| c.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::new(ErrorKind::Validation, format!("polynomial {text:?} is not a comma-separated list of integers")))
}

pub fn cmd_verify504(poly: &str, override_relator: Option<&str>) -> Outcome {
    let mut pl = Pipeline { results: Map::new() };
    let coeffs = parse_poly(poly)?;
    if coeffs.len() < 2 {
        return Err(CliError::new(ErrorKind::Validation, "polynomial must have degree at least 1"));
    }

    let field = FiniteField::new(2, coeffs.len() as u32 - 1, coeffs.clone()).map_err(|e| pl.fail("field", e))?;
    if field.size() != 8 {
        return Err(pl.stage_error("field", format!("field has {} elements, expected 8", field.size())));
    }
    pl.set("field", json!({ "p": 2, "k": 3, "poly": coeffs }));
    let field = Arc::new(field);

    let group = build_psl2(field, 10_000).map_err(|e| pl.fail("psl", e))?;
    pl.set("psl_order", json!(group.len()));
    if group.len() as u64 != psl2_order(8) {
        return Err(pl.stage_error("psl", format!("PSL(2,8) has {} elements, expected 504", group.len())));
    }

    let classes = conj_classes(&group).map_err(|e| pl.fail("classes", e))?;
    pl.set("class_sizes", json!(classes.class_sizes));
    pl.set("class_orders", json!(classes.class_orders));

    let simple = is_simple_by_class_equation(&classes);
    pl.set("simple", json!(simple));
    if !simple {
        return Err(pl.stage_error("simplicity", "class equation admits a proper normal subgroup".into()));
    }

    let mut p = parse_presentation(PSL504_PRESENTATION).map_err(|e| pl.fail("presentation", FpError::from(e)))?;
    if let Some(text) = override_relator {
        let w = parse_word(text, p.names(), 1).map_err(|e| pl.fail("presentation", FpError::from(e)))?;
        p = p.replace_relator(0, w).map_err(|e| pl.fail("presentation", e))?;
    }
    pl.set("presentation", json!(p.to_text()));

    let table = coset_enumerate(&p, &[], max_cosets(None)?).map_err(|e| pl.fail("enumeration", e))?;
    pl.set("presentation_order", json!(table.nrows()));

    let witness = search_presentation_images(&p, &group, true).map_err(|e| pl.fail("witness", e))?;
    let hom = match &witness {
        Some(imgs) => {
            let w: Map<String, Value> = p
                .names()
                .iter()
                .zip(imgs)
                .map(|(name, x)| (name.clone(), json!(mat_to_literal(x.rep()))))
                .collect();
            pl.set("witness", Value::Object(w));
            verify_presentation_hom(&p, imgs, &group).map_err(|e| pl.fail("witness", e))?
        }
        None => {
            pl.set("witness", Value::Null);
            false
        }
    };
    pl.set("witness_found", json!(witness.is_some()));
    pl.set("homomorphism_verified", json!(hom));

    let iso = hom && table.nrows() == group.len();
    pl.set("isomorphism", json!(iso));
    if !iso {
        return Err(pl.stage_error(
            "isomorphism",
            format!(
                "presented group of order {} is not isomorphic to PSL(2,8) via a found witness",
                table.nrows()
            ),
        ));
    }
    Ok(Value::Object(pl.results))
}

pub fn fricke_generators() -> Vec<Mat2> {
    let z8 = Carrier::ring(8).expect("8 >= 2");
    vec![
        Mat2::new(&z8, 1, 2, 0, 1).expect("valid entries"),
        Mat2::new(&z8, 1, 0, 2, 1).expect("valid entries"),
    ]
}

pub fn cmd_fricke_mod8() -> Outcome {
    let gens = fricke_generators();
    let group = group_closure(&gens, DEFAULT_CLOSURE_MAX)?;
    let mut exponent = 1;
    for g in &group {
        exponent = lcm(exponent, element_order(g, group.len() as u64)?);
    }
    let literals: Vec<_> = gens.iter().map(mat_to_literal).collect();
    Ok(json!({
        "carrier": { "ring": { "mod": 8 } },
        "generators": literals,
        "order": group.len(),
        "exponent": exponent,
    }))
}

pub fn cmd_poincare(config: &Path, csv_out: Option<&Path>, svg_out: Option<&Path>) -> Outcome {
    let text = read(config)?;
    let spec: SeriesConfigJson = serde_json::from_str(&text)
        .map_err(|e| CliError::new(ErrorKind::Parse, format!("{}: {e}", config.display())))?;
    let cfg = SchottkyConfig::from_circles(&spec.pairs)?;
    spec.h.validate()?;
    let z = Complex64::new(spec.z[0], spec.z[1]);
    let report = poincare_partial_sum(&cfg, &spec.h, spec.d, z, spec.k)?;

    let mut residuals = Vec::new();
    for (i, letter) in (1..=cfg.n() as i32).enumerate() {
        let r = automorphy_residual(&cfg, &spec.h, spec.d, z, &cfg.letter_map(letter), spec.k)?;
        residuals.push(json!({ "generator": format!("g{}", i + 1), "residual": r }));
    }
    if let Some(path) = csv_out {
        write(path, &series_csv(&report))?;
    }
    if let Some(path) = svg_out {
        write(path, &series_svg(&report))?;
    }
    Ok(json!({
        "pairs": cfg.n(),
        "d": spec.d,
        "z": spec.z,
        "K": spec.k,
        "shell_counts": report.shells.iter().map(|s| s.count).collect::<Vec<_>>(),
        "decay_ratios": report.decay_ratios,
        "last_decay_ratio": report.decay_ratios.last(),
        "partial_sum": report.total,
        "automorphy_residuals": residuals,
        "csv_out": csv_out,
        "svg_out": svg_out,
    }))
}

pub fn cmd_dimension_count(m: u64, n: u64) -> Outcome {
    let c = dimension_count(m, n)?;
    Ok(serde_json::to_value(c).expect("counts serialize"))
}

fn read_table(path: &Path) -> Result<CosetTable, CliError> {
    let text = read(path)?;
    let json: CosetTableJson = serde_json::from_str(&text)
        .map_err(|e| CliError::new(ErrorKind::Parse, format!("{}: {e}", path.display())))?;
    Ok(CosetTable::from_json(&json)?)
}

pub fn cmd_render(kind: RenderKind, input: &Path, out: &Path, scale: f64) -> Outcome {
    let table = read_table(input)?;
    match kind {
        RenderKind::Cayley => {
            let g = cayley_from_table(&table, table.names())?;
            write(out, &emit_dot(&g))?;
            Ok(json!({ "kind": "cayley", "nodes": g.nodes, "edges": g.edges.len(), "out": out }))
        }
        RenderKind::Hexagon => {
            let tiling = hexagon_tiling_b23(&table)?;
            write(out, &emit_svg_tiling(&tiling, scale)?)?;
            Ok(json!({
                "kind": "hexagon",
                "triangles": tiling.triangles.len(),
                "black": tiling.count(Color::Black),
                "white": tiling.count(Color::White),
                "out": out,
            }))
        }
    }
}
