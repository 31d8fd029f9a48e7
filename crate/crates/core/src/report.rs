//! Command reports: a deterministic JSON object plus a plain-text rendering.
//!
//! Every report has the keys `command`, `inputs`, `results` and `verdict`.
//! Objects serialize with sorted keys, so equal inputs give byte-identical
//! output.

use std::fs;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::designs::{develop_in_group, pg2_f3, search_base_blocks, Block, Design, FiniteGroup, Issue, Validity};
use crate::error::{input, Error, Result};
use crate::gradings::{
    design_lattice_matrix, diag_invariants, e_from_grading, ecirc, grading_from_design, grading_from_subgroup,
    parse_subgroup, structure_constants_adapted, verify_group_grading_with, verify_set_grading_with, AdaptedBasis,
    GroupGrading, SetGrading, StructureTable, Verification,
};
use crate::lattice::{elementary_divisors, nonzero_divisors, smith_normal_form, Index, IntMatrix, Lattice};
use crate::rootsys::RootSystemD;
use crate::unigroup::{analyze_with, Verdict};

/// Outcome classes shared by all commands, mapped onto exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Ok,
    Violation,
    Found,
    NotFound,
    Realizable,
    NotRealizable,
}

impl Outcome {
    /// `0` for success or a positive answer, `1` for a negative verdict.
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Ok | Outcome::Found | Outcome::Realizable => 0,
            Outcome::Violation | Outcome::NotFound | Outcome::NotRealizable => 1,
        }
    }
}

/// Exit code for errors raised before a verdict exists.
pub const INPUT_ERROR_EXIT: i32 = 2;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Value,
    pub verdict: Outcome,
    #[serde(skip)]
    pub text: Vec<String>,
    #[serde(skip)]
    pub exit_override: Option<i32>,
}

impl Report {
    fn new(command: &str, inputs: Map<String, Value>, results: Value, verdict: Outcome, text: Vec<String>) -> Self {
        Report { command: command.to_string(), inputs, results, verdict, text, exit_override: None }
    }

    pub fn exit_code(&self) -> i32 {
        self.exit_override.unwrap_or_else(|| self.verdict.exit_code())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = self.text.join("\n");
        s.push('\n');
        s
    }
}

fn big(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

/// Finite indices as numbers, an infinite one as the string `"infinity"`.
fn index_value(i: &Index) -> Value {
    match i.finite() {
        Some(v) => big(v),
        None => json!(i.to_string()),
    }
}

fn bigs(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(big).collect())
}

fn show(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| bigs(m.row(i))).collect())
}

fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Reads a file; failures become input errors.
fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {}", path, e)))
}

fn file_input(inputs: &mut Map<String, Value>, key: &str, path: &str, text: &str) {
    inputs.insert(key.to_string(), json!({ "path": path, "sha256": digest(text) }));
}

/// `pg23` names the built-in plane; anything else is a design file.
pub fn load_design(source: &str, inputs: &mut Map<String, Value>) -> Result<Design> {
    if source == "pg23" {
        inputs.insert("design".into(), json!("pg23"));
        return Ok(pg2_f3());
    }
    let text = read(source)?;
    file_input(inputs, "design", source, &text);
    Design::parse(&text)
}

fn histogram_json(g: &SetGrading) -> Value {
    let h: Map<String, Value> = g.histogram().into_iter().map(|(d, c)| (d.to_string(), json!(c))).collect();
    Value::Object(h)
}

fn histogram_text(g: &SetGrading) -> String {
    let parts: Vec<String> = g.histogram().into_iter().map(|(d, c)| format!("{}x dim {}", c, d)).collect();
    parts.join(", ")
}

fn blocks_json(blocks: &[Block]) -> Value {
    Value::Array(blocks.iter().map(|b| json!(b)).collect())
}

fn issues_json(issues: &[Issue]) -> Value {
    Value::Array(issues.iter().map(|i| json!(i.to_string())).collect())
}

fn verification_json(v: &Verification, g: &SetGrading) -> Value {
    match v {
        Verification::Ok => json!({ "status": "ok" }),
        Verification::Fails(c) => json!({
            "status": "fails",
            "components": [c.first, c.second],
            "labels": [g.labels()[c.first], g.labels()[c.second]],
            "hit": c.hit,
            "expected": c.expected,
        }),
    }
}

fn lattice_json(l: &Lattice) -> Value {
    matrix_json(l.basis())
}

/// `[Q:E]` and `[W:E]` plus the Hermite basis of `E`.
fn lattice_summary(n: usize, e: &Lattice) -> Result<(Value, String)> {
    let rs = RootSystemD::new(n)?;
    let q_index = e.index_in(&rs.root_lattice())?;
    let w_index = e.index_in(&rs.weight_lattice())?;
    let value = json!({
        "basis": lattice_json(e),
        "index_in_root_lattice": index_value(&q_index),
        "index_in_weight_lattice": index_value(&w_index),
    });
    Ok((value, format!("[Q:E] = {}, [W:E] = {}", q_index, w_index)))
}

pub fn cmd_design_pg23() -> Report {
    let d = pg2_f3();
    let valid = d.validate().expect("built-in design is well formed");
    let text = d.write().lines().map(str::to_string).collect();
    Report::new(
        "design pg23",
        Map::new(),
        json!({ "n": 13, "blocks": blocks_json(d.blocks()), "valid": valid.is_valid() }),
        if valid.is_valid() { Outcome::Ok } else { Outcome::Violation },
        text,
    )
}

pub fn cmd_design_validate(path: &str) -> Result<Report> {
    let mut inputs = Map::new();
    let d = load_design(path, &mut inputs)?;
    let validity = d.validate()?;
    let (results, verdict, text) = match &validity {
        Validity::Valid => (
            json!({ "n": d.n(), "block_count": d.blocks().len(), "issues": [] }),
            Outcome::Ok,
            vec![format!("valid S(2,4,{}) with {} blocks", d.n(), d.blocks().len())],
        ),
        Validity::Invalid(v) => {
            let mut text = vec![format!("not a Steiner system S(2,4,{}): {} issue(s)", d.n(), v.issues.len())];
            text.extend(v.issues.iter().map(|i| format!("  {}", i)));
            (
                json!({ "n": d.n(), "block_count": d.blocks().len(), "issues": issues_json(&v.issues) }),
                Outcome::Violation,
                text,
            )
        }
    };
    Ok(Report::new("design validate", inputs, results, verdict, text))
}

/// `group` lists the moduli of the translation group; `None` means `Z/n`.
pub fn cmd_design_develop(n: u32, group: Option<&[u32]>, blocks: &[Block]) -> Result<Report> {
    let g = match group {
        Some(m) => FiniteGroup::new(m.to_vec())?,
        None => FiniteGroup::cyclic(n),
    };
    if g.order() != n {
        return input(format!("group of order {} does not match n = {}", g.order(), n));
    }
    let d = develop_in_group(&g, blocks)?;
    let mut inputs = Map::new();
    inputs.insert("n".into(), json!(n));
    inputs.insert("group".into(), json!(g.moduli()));
    inputs.insert("base_blocks".into(), blocks_json(blocks));
    let text = d.write().lines().map(str::to_string).collect();
    Ok(Report::new(
        "design develop",
        inputs,
        json!({ "n": n, "blocks": blocks_json(d.blocks()), "valid": true }),
        Outcome::Ok,
        text,
    ))
}

/// The search is deterministic; `seed` is echoed but has no effect.
/// `write` saves the developed design in the text format.
pub fn cmd_design_search(n: u32, seed: u64, write: Option<&str>) -> Result<Report> {
    let mut inputs = Map::new();
    inputs.insert("n".into(), json!(n));
    inputs.insert("seed".into(), json!(seed));
    let Some(fam) = search_base_blocks(n)? else {
        return Ok(Report::new(
            "design search",
            inputs,
            json!({ "found": false }),
            Outcome::NotFound,
            vec![format!("no difference family of 4-sets found for n = {}", n)],
        ));
    };
    let d = develop_in_group(&fam.group, &fam.base_blocks)?;
    if let Some(path) = write {
        fs::write(path, d.write()).map_err(|e| Error::Input(format!("cannot write {}: {}", path, e)))?;
        inputs.insert("write".into(), json!(path));
    }
    let group_name: Vec<String> = fam.group.moduli().iter().map(|m| format!("Z/{}", m)).collect();
    let mut text = vec![format!("difference family in {}", group_name.join(" x "))];
    for b in &fam.base_blocks {
        let labels: Vec<String> = b.iter().map(|&x| fam.group.label(x)).collect();
        text.push(format!("  {{{}}}", labels.join(", ")));
    }
    text.push(format!("developed: {} blocks, valid S(2,4,{})", d.blocks().len(), n));
    Ok(Report::new(
        "design search",
        inputs,
        json!({
            "found": true,
            "group": fam.group.moduli(),
            "base_blocks": blocks_json(&fam.base_blocks),
            "base_block_labels": fam.base_blocks.iter().map(|b| b.iter().map(|&x| fam.group.label(x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "developed_block_count": d.blocks().len(),
        }),
        Outcome::Found,
        text,
    ))
}

fn table_for(n: usize) -> Result<StructureTable> {
    Ok(structure_constants_adapted(&AdaptedBasis::new(n)?))
}

/// Shape, optional verification, lattice and diagonal group of a set
/// grading.
fn grading_section(g: &SetGrading, table: Option<&StructureTable>) -> Result<(Map<String, Value>, Vec<String>, bool)> {
    let mut r = Map::new();
    let mut text = vec![
        format!("components: {}", g.len()),
        format!("dimensions: {}", histogram_text(g)),
        format!("total dimension: {}", g.dim()),
    ];
    r.insert("component_count".into(), json!(g.len()));
    r.insert("histogram".into(), histogram_json(g));
    r.insert("total_dimension".into(), json!(g.dim()));
    let mut ok = true;
    if let Some(t) = table {
        let v = verify_set_grading_with(t, g);
        ok = v.is_ok();
        text.push(match &v {
            Verification::Ok => "set grading: ok".to_string(),
            Verification::Fails(c) => format!("set grading: fails, {}", c),
        });
        r.insert("set_grading".into(), verification_json(&v, g));
    }
    let e = e_from_grading(g)?;
    let (lat, lat_text) = lattice_summary(g.rank(), &e)?;
    text.push(lat_text);
    r.insert("lattice".into(), lat);
    if g.cartan_component().is_some() {
        let d = diag_invariants(g)?;
        text.push(format!("diagonal group invariants: {}", show(&d)));
        r.insert("diag_invariants".into(), bigs(&d));
    }
    Ok((r, text, ok))
}

pub fn cmd_grade_design(source: &str, verify: bool) -> Result<Report> {
    let mut inputs = Map::new();
    let d = load_design(source, &mut inputs)?;
    inputs.insert("verify".into(), json!(verify));
    let g = grading_from_design(&d).map_err(as_input)?;
    let table = if verify { Some(table_for(g.rank())?) } else { None };
    let (results, text, ok) = grading_section(&g, table.as_ref())?;
    Ok(Report::new("grade", inputs, Value::Object(results), if ok { Outcome::Ok } else { Outcome::Violation }, text))
}

fn group_json(gg: &GroupGrading) -> Value {
    json!({
        "moduli": bigs(gg.group().moduli()),
        "labels": gg.assignment().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
    })
}

fn load_subgroup(path: &str, n: usize, inputs: &mut Map<String, Value>) -> Result<Lattice> {
    let text = read(path)?;
    file_input(inputs, "subgroup", path, &text);
    inputs.insert("n".into(), json!(n));
    let (rank, e) = parse_subgroup(&text)?;
    if rank != n {
        return input(format!("subgroup file is for rank {}, but --n is {}", rank, n));
    }
    Ok(e)
}

/// Precondition failures on user-supplied subgroups are input errors at the
/// command line.
fn as_input(e: Error) -> Error {
    match e {
        Error::Precondition(m) => Error::Input(m),
        other => other,
    }
}

pub fn cmd_grade_subgroup(path: &str, n: usize, verify: bool) -> Result<Report> {
    let mut inputs = Map::new();
    let e = load_subgroup(path, n, &mut inputs)?;
    inputs.insert("verify".into(), json!(verify));
    let gg = grading_from_subgroup(n, &e).map_err(as_input)?;
    let table = if verify { Some(table_for(n)?) } else { None };
    let (mut results, mut text, mut ok) = grading_section(gg.underlying(), table.as_ref())?;
    results.insert("group".into(), group_json(&gg));
    text.push(format!("grading group moduli: {}", show(gg.group().moduli())));
    if let Some(t) = &table {
        let v = verify_group_grading_with(t, &gg);
        ok &= v.is_ok();
        text.push(match &v {
            Verification::Ok => "group grading: ok".to_string(),
            Verification::Fails(c) => format!("group grading: fails, {}", c),
        });
        results.insert("group_grading".into(), verification_json(&v, gg.underlying()));
    }
    Ok(Report::new("grade", inputs, Value::Object(results), if ok { Outcome::Ok } else { Outcome::Violation }, text))
}

fn universal_section(g: &SetGrading, table: &StructureTable) -> Result<(Map<String, Value>, Vec<String>, Outcome)> {
    let a = analyze_with(table, g)?;
    let u = &a.universal;
    let mut r = Map::new();
    r.insert("component_count".into(), json!(g.len()));
    r.insert("relation_count".into(), json!(a.presentation.relations().len()));
    r.insert("free_rank".into(), json!(u.free_rank));
    r.insert("invariant_factors".into(), bigs(&u.invariant_factors));
    let mut text = vec![
        format!("components: {}", g.len()),
        format!("relations: {}", a.presentation.relations().len()),
        format!("universal group: free rank {}, invariant factors {}", u.free_rank, show(&u.invariant_factors)),
    ];
    let outcome = match &a.verdict {
        Verdict::Realizable(gg) => {
            r.insert("induced_labels".into(), group_json(gg));
            text.push("verdict: Realizable".into());
            Outcome::Realizable
        }
        Verdict::NotRealizable(c) => {
            r.insert(
                "certificate".into(),
                json!({
                    "components": [c.first, c.second],
                    "labels": [g.labels()[c.first], g.labels()[c.second]],
                    "image": c.image.to_string(),
                }),
            );
            text.push("verdict: NotRealizable".into());
            text.push(format!(
                "certificate: components {} ({}) and {} ({}) both map to {}",
                c.first,
                g.labels()[c.first],
                c.second,
                g.labels()[c.second],
                c.image
            ));
            Outcome::NotRealizable
        }
    };
    Ok((r, text, outcome))
}

pub fn cmd_nongroup(source: &str) -> Result<Report> {
    let mut inputs = Map::new();
    let d = load_design(source, &mut inputs)?;
    let g = grading_from_design(&d).map_err(as_input)?;
    let table = table_for(g.rank())?;
    let (results, text, outcome) = universal_section(&g, &table)?;
    Ok(Report::new("nongroup", inputs, Value::Object(results), outcome, text))
}

pub fn cmd_pure(n: usize, path: &str) -> Result<Report> {
    let mut inputs = Map::new();
    let e = load_subgroup(path, n, &mut inputs)?;
    let gg = grading_from_subgroup(n, &e).map_err(as_input)?;
    let ec = ecirc(n, &e)?;
    let rs = RootSystemD::new(n)?;
    let q = rs.root_lattice();
    let two_q = q.scaled(2);
    let q_e = e.index_in(&q)?;
    let q_ec = ec.index_in(&q)?;
    let g = gg.underlying();
    let diag = diag_invariants(g)?;
    let table = table_for(n)?;
    let v = verify_group_grading_with(&table, &gg);
    let text = vec![
        format!("components: {}", g.len()),
        format!("dimensions: {}", histogram_text(g)),
        format!("grading group moduli: {}", show(gg.group().moduli())),
        format!("[Q:E] = {}, [Q:E°] = {}", q_e, q_ec),
        format!("E° = E: {}, E° = 2Q: {}", ec == e, ec == two_q),
        format!("diagonal group invariants: {}", show(&diag)),
        match &v {
            Verification::Ok => "group grading: ok".to_string(),
            Verification::Fails(c) => format!("group grading: fails, {}", c),
        },
    ];
    let results = json!({
        "component_count": g.len(),
        "histogram": histogram_json(g),
        "group": group_json(&gg),
        "e_basis": lattice_json(&e),
        "ecirc_basis": lattice_json(&ec),
        "index_q_e": index_value(&q_e),
        "index_q_ecirc": index_value(&q_ec),
        "ecirc_equals_e": ec == e,
        "ecirc_equals_2q": ec == two_q,
        "diag_invariants": bigs(&diag),
        "group_grading": verification_json(&v, g),
    });
    Ok(Report::new("pure", inputs, results, if v.is_ok() { Outcome::Ok } else { Outcome::Violation }, text))
}

pub fn cmd_snf(path: &str, transforms: bool) -> Result<Report> {
    let text_in = read(path)?;
    let mut inputs = Map::new();
    file_input(&mut inputs, "matrix", path, &text_in);
    inputs.insert("transforms".into(), json!(transforms));
    let m = IntMatrix::parse(&text_in)?;
    let mut results = Map::new();
    let divs = if transforms {
        let s = smith_normal_form(&m);
        results.insert("left".into(), matrix_json(&s.left));
        results.insert("right".into(), matrix_json(&s.right));
        s.divisors()
    } else {
        elementary_divisors(&m)
    };
    let nonzero = nonzero_divisors(&divs);
    results.insert("shape".into(), json!([m.rows(), m.cols()]));
    results.insert("elementary_divisors".into(), bigs(&divs));
    results.insert("nonzero_divisors".into(), bigs(&nonzero));
    results.insert("rank".into(), json!(nonzero.len()));
    let mut text = vec![
        format!("shape: {} x {}", m.rows(), m.cols()),
        format!("elementary divisors: {}", show(&divs)),
        format!("rank: {}", nonzero.len()),
    ];
    if transforms {
        let s = smith_normal_form(&m);
        text.push("left transform:".into());
        text.extend(s.left.write().lines().skip(1).map(|l| format!("  {}", l)));
        text.push("right transform:".into());
        text.extend(s.right.write().lines().skip(1).map(|l| format!("  {}", l)));
    }
    Ok(Report::new("snf", inputs, Value::Object(results), Outcome::Ok, text))
}

/// The whole pipeline on the projective plane of order 3. The verdict is
/// the realizability answer; the exit code is `0` when every stage ran.
pub fn cmd_demo_d13() -> Result<Report> {
    let d = pg2_f3();
    let valid = d.validate()?.is_valid();
    let g = grading_from_design(&d)?;
    let table = table_for(13)?;
    let (grading, mut text, _) = grading_section(&g, Some(&table))?;
    let divs = nonzero_divisors(&elementary_divisors(&design_lattice_matrix(&d)?));
    let (universal, utext, outcome) = universal_section(&g, &table)?;
    let mut lines = vec![format!("design: PG(2,3), 13 lines, valid: {}", valid)];
    lines.append(&mut text);
    lines.push(format!("nonzero elementary divisors of the lattice matrix: {}", show(&divs)));
    lines.extend(utext.into_iter().skip(1));
    let results = json!({
        "design": { "n": 13, "block_count": d.blocks().len(), "valid": valid },
        "grading": Value::Object(grading),
        "lattice_matrix_nonzero_divisors": bigs(&divs),
        "universal_group": Value::Object(universal),
    });
    let mut r = Report::new("demo-d13", Map::new(), results, outcome, lines);
    r.exit_override = Some(0);
    Ok(r)
}
