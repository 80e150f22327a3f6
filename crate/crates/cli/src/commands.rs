use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::{json, Value};

use twb_core::abelian::{reidemeister_abelian, reidemeister_abelian_sequence, twisted_class_reps_abelian};
use twb_core::chartab::{burnside_check, dual_action, CharacterTable, DualImage};
use twb_core::corpus::{run_corpus, CorpusOptions};
use twb_core::descriptor::{parse, AbelianInput, CongruenceInput, ExtensionInput, GroupMapInput, TorusInput};
use twb_core::extension::{fiber_class_reps, reidemeister_extension, reidemeister_extension_sequence};
use twb_core::group::{twisted_classes, GroupConfig};
use twb_core::mobius::{
    congruence_check_partial, finite_group_sequence, torus_map_reidemeister, CongruenceReport, ReidemeisterSequence,
};
use twb_core::ReidemeisterNumber;

pub enum Status {
    Ok,
    Violation,
}

pub struct Outcome {
    pub json: Value,
    pub table: String,
    pub status: Status,
}

impl Outcome {
    fn ok(json: Value, table: String) -> Self {
        Outcome { json, table, status: Status::Ok }
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn vector(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn sequence_line(values: &[ReidemeisterNumber]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
}

pub fn classes(text: &str, config: &GroupConfig) -> Result<Outcome, String> {
    let map = parse::<GroupMapInput>(text).map_err(err)?.build(config).map_err(err)?;
    let g = map.group();
    let p = twisted_classes(&map);
    let rows: Vec<Value> = (0..p.count())
        .map(|c| json!({"representative": p.class_reps[c], "label": g.label(p.class_reps[c]), "size": p.class_sizes[c]}))
        .collect();
    let mut table = format!("order {}\nR = {}\n\nclass  representative  size\n", g.order(), p.count());
    for c in 0..p.count() {
        let _ = writeln!(table, "{c:>5}  {:>14}  {:>4}", g.label(p.class_reps[c]), p.class_sizes[c]);
    }
    Ok(Outcome::ok(json!({"order": g.order(), "R": p.count(), "classes": rows}), table))
}

pub fn burnside(text: &str, config: &GroupConfig) -> Result<Outcome, String> {
    let map = parse::<GroupMapInput>(text).map_err(err)?.build(config).map_err(err)?;
    let table = CharacterTable::with_order_cap(map.group(), config.order_cap).map_err(err)?;
    let report = burnside_check(&table, &map);
    let dual = dual_action(&table, &map);
    let mut out = format!("R = {}\nS = {}\nequal: {}\n\ncharacter  degree  image under chi -> chi o phi\n", report.reidemeister, report.fixed_characters, report.equal);
    for (i, image) in dual.images.iter().enumerate() {
        let what = match image {
            DualImage::FixedBy(_) => "fixed".to_string(),
            DualImage::MappedTo(j) => format!("chi_{j}"),
            DualImage::Reducible(m) => {
                let parts: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(j, &k)| if k == 1 { format!("chi_{j}") } else { format!("{k}*chi_{j}") })
                    .collect();
                if parts.is_empty() { "0".to_string() } else { parts.join(" + ") }
            }
        };
        let _ = writeln!(out, "{:>9}  {:>6}  {what}", format!("chi_{i}"), table.degrees()[i]);
    }
    let mut value = serde_json::to_value(&report).map_err(err)?;
    value["dual_action"] = serde_json::to_value(&dual.images).map_err(err)?;
    let status = if report.equal { Status::Ok } else { Status::Violation };
    Ok(Outcome { json: value, table: out, status })
}

pub fn corpus(opts: &CorpusOptions) -> Result<Outcome, String> {
    let report = run_corpus(opts).map_err(err)?;
    let mut out = String::from("group                     order  classes  endomorphisms\n");
    for g in &report.groups {
        let _ = writeln!(out, "{:<24}  {:>5}  {:>7}  {:>13}", g.name, g.order, g.classes, g.maps);
    }
    let _ = writeln!(out, "\ngroups: {}\npairs checked: {}\nfailures: {}", report.groups.len(), report.pairs, report.failures.len());
    for f in &report.failures {
        let _ = writeln!(
            out,
            "  {} {:?}: R = {}, S = {}, burnside {}, congruences {}, eventual image {}",
            f.group, f.map, f.reidemeister, f.fixed_characters, f.burnside, f.congruences, f.eventual_image
        );
    }
    let status = if report.passes { Status::Ok } else { Status::Violation };
    Ok(Outcome { json: serde_json::to_value(&report).map_err(err)?, table: out, status })
}

pub fn abelian(text: &str, n_max: Option<usize>) -> Result<Outcome, String> {
    let phi = parse::<AbelianInput>(text).map_err(err)?.build().map_err(err)?;
    let r = reidemeister_abelian(&phi);
    let reps = twisted_class_reps_abelian(&phi).ok();
    let seq = n_max.map(|n| reidemeister_abelian_sequence(&phi, n as u32));
    let mut out = format!("R = {r}\n");
    if let Some(reps) = &reps {
        let _ = writeln!(out, "representatives: {}", reps.iter().map(|v| vector(v)).collect::<Vec<_>>().join(" "));
    }
    if let Some(seq) = &seq {
        let _ = writeln!(out, "R(phi^n), n = 1..{}: {}", seq.len(), sequence_line(seq));
    }
    let reps_json = reps.map(|r| r.iter().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>());
    Ok(Outcome::ok(json!({"R": r, "representatives": reps_json, "sequence": seq}), out))
}

pub fn extension(text: &str, n_max: Option<usize>) -> Result<Outcome, String> {
    let (g, phi) = parse::<ExtensionInput>(text).map_err(err)?.build().map_err(err)?;
    let r = reidemeister_extension(&g, &phi);
    let reps = fiber_class_reps(&g, &phi).ok();
    let seq = n_max.map(|n| reidemeister_extension_sequence(&g, &phi, n as u32));
    let mut out = format!("R = {r}\n");
    if let Some(reps) = &reps {
        for n0 in 0..2 {
            let fibre: Vec<String> = reps.iter().filter(|x| x.1 == n0).map(|x| vector(&x.0)).collect();
            let _ = writeln!(out, "fibre n = {n0}: {}", fibre.join(" "));
        }
    }
    if let Some(seq) = &seq {
        let _ = writeln!(out, "R(phi^n), n = 1..{}: {}", seq.len(), sequence_line(seq));
    }
    let reps_json = reps.map(|r| {
        r.iter()
            .map(|(v, n)| json!({"v": v.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "n": n}))
            .collect::<Vec<_>>()
    });
    Ok(Outcome::ok(json!({"R": r, "representatives": reps_json, "sequence": seq}), out))
}

pub fn torus(text: &str, n_max: usize) -> Result<Outcome, String> {
    let input = parse::<TorusInput>(text).map_err(err)?;
    input.validate().map_err(err)?;
    let seq = torus_map_reidemeister(&input.matrix, n_max);
    let mut out = String::from("    n  R(f^n)\n");
    for (i, v) in seq.values.iter().enumerate() {
        let _ = writeln!(out, "{:>5}  {v}", i + 1);
    }
    Ok(Outcome::ok(json!({"matrix": input.matrix, "sequence": seq.values}), out))
}

pub fn congruence(text: &str, n_max: usize, config: &GroupConfig) -> Result<Outcome, String> {
    let seq = match parse::<CongruenceInput>(text).map_err(err)? {
        CongruenceInput::Sequence { sequence } => ReidemeisterSequence::new("sequence", sequence),
        CongruenceInput::Torus { matrix } => {
            TorusInput { matrix: matrix.clone() }.validate().map_err(err)?;
            torus_map_reidemeister(&matrix, n_max)
        }
        CongruenceInput::Group(input) => finite_group_sequence(&input.build(config).map_err(err)?, n_max),
    };
    if seq.is_empty() {
        return Err("the sequence is empty".into());
    }
    let report = congruence_check_partial(&seq);
    let out = congruence_table(&seq, &report);
    let mut value = serde_json::to_value(&report).map_err(err)?;
    value["sequence"] = serde_json::to_value(&seq.values).map_err(err)?;
    let status = if report.passes { Status::Ok } else { Status::Violation };
    Ok(Outcome { json: value, table: out, status })
}

fn congruence_table(seq: &ReidemeisterSequence, report: &CongruenceReport) -> String {
    let mut out = String::from("    n  R(phi^n)  P_n  n | P_n\n");
    for (e, r) in report.entries.iter().zip(&seq.values) {
        let p = e.p_n.as_ref().map_or("infinite".to_string(), |p| p.to_string());
        let verdict = match e.passes {
            Some(true) => "yes",
            Some(false) => "NO",
            None => "-",
        };
        let _ = writeln!(out, "{:>5}  {r}  {p}  {verdict}", e.n);
    }
    let _ = writeln!(out, "\nall defined entries pass: {}", report.passes);
    out
}
