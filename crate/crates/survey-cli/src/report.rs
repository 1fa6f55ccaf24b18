use std::fmt::Write;

use crate::run::RunRecord;
use crate::verify::VerifyReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
}

fn rows(m: &[Vec<i128>]) -> String {
    m.iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" & "))
        .collect::<Vec<_>>()
        .join(" \\\\ ")
}

fn title(r: &RunRecord) -> String {
    match r.kind.as_str() {
        "elliptic" => "Elliptic type".into(),
        "parabolic" => "Parabolic type".into(),
        "hyperbolic" => format!("Hyperbolic type with (w,w)={}", r.w_norm.unwrap_or_default()),
        "not_reflective" => "Not reflective".into(),
        _ => "Undecided".into(),
    }
}

pub fn emit_report(records: &[RunRecord], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(records).expect("records serialize") + "\n",
        Format::Markdown => markdown(records),
    }
}

fn markdown(records: &[RunRecord]) -> String {
    let mut s = String::from("| n | lattice | type | walls | (w,w) | generators | certified |\n|---|---|---|---|---|---|---|\n");
    for r in records {
        let n = r.k.map(|k| k.to_string()).unwrap_or_else(|| "-".into());
        let gens: Vec<&str> = r.symmetries.iter().map(|g| g.kind.as_str()).collect();
        let wn = r.w_norm.map(|x| x.to_string()).unwrap_or_default();
        let _ = writeln!(
            s,
            "| {n} | {} | {} | {} | {wn} | {} | {} |",
            r.lattice,
            r.kind,
            r.roots.len(),
            gens.join(", "),
            r.certified
        );
    }
    for r in records {
        let n = r.k.map(|k| format!("n={k}")).unwrap_or_else(|| r.lattice.clone());
        let _ = writeln!(s, "\n### {n}: {}\n", title(r));
        match r.kind.as_str() {
            "elliptic" => {
                let _ = writeln!(s, "$$P(M)=\\begin{{pmatrix}}{}\\end{{pmatrix}},\\quad G(P(M))=\\begin{{pmatrix}}{}\\end{{pmatrix}}$$", rows(&r.roots), rows(&r.gram));
            }
            "hyperbolic" | "parabolic" => {
                for (name, v) in [("e", &r.e), ("f", &r.f)] {
                    if let Some(v) = v {
                        let _ = writeln!(s, "- {name} = {v:?}");
                    }
                }
                if let Some(w) = &r.w {
                    let _ = writeln!(s, "- w = {w:?}");
                }
                if let Some(c) = &r.c {
                    let _ = writeln!(s, "- c = {c:?}");
                }
                for g in &r.symmetries {
                    let _ = writeln!(s, "- {}: {:?}", g.kind, g.matrix);
                }
            }
            _ => {}
        }
    }
    s
}

pub fn emit_verification(v: &VerifyReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("report serializes") + "\n",
        Format::Markdown => {
            let mut s = String::from("| n | printed | computed | status | notes |\n|---|---|---|---|---|\n");
            for k in &v.per_k {
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} | {} |",
                    k.k,
                    k.printed_type,
                    k.computed_type,
                    k.status.label(),
                    k.notes.join("; ")
                );
            }
            for l in &v.lists {
                let _ = writeln!(s, "\n- list {}: {} (expected {:?}, computed {:?})", l.name, l.status.label(), l.expected, l.computed);
            }
            for c in v.self_checks.iter().filter(|c| c.status != crate::reference::CheckStatus::Pass) {
                let _ = writeln!(s, "- table k={:?} {}: {} {}", c.k, c.item, c.status.label(), c.detail);
            }
            s
        }
    }
}
