use std::collections::BTreeMap;
use std::fmt::Write;

use kborel_core::abelian::{GroupValue, Notation, Prime, Render};
use kborel_core::assemble::{
    assembly_report, con_p_tables, fuchsian_pipeline, mnm_assemble, mnm_unreduced, Assembly, AssemblyReport,
    GroupPackage, HypothesisStatus, KPresentation, QuotientK,
};
use kborel_core::complexes::{smith_consistency, surface_complex, ComplexRepr, CwComplex, GCwComplex, GCwRepr};
use kborel_core::groups::{augmentation_tower, completion_rank, CyclicRepRing, FiniteGroup, RepRingTable};
use kborel_core::pro::{colim_hom_ext, is_pro_trivial, lim_lim1, pro_pushforward_check, Tower, TowerMap};
use kborel_core::{Error, Result, SCHEMA};
use serde_json::{json, Map, Value};

use crate::input::{decode, read_group};

/// A command's result: the JSON document and the text report.
pub struct Report {
    pub json: Value,
    pub text: String,
}

fn document(command: &str, fields: Value) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), SCHEMA.into());
    map.insert("command".into(), command.into());
    if let Value::Object(rest) = fields {
        map.extend(rest);
    }
    Value::Object(map)
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn degrees(k: Option<i64>) -> Vec<usize> {
    match k {
        Some(k) => vec![k.rem_euclid(2) as usize],
        None => vec![0, 1],
    }
}

fn keep_degrees(mut r: AssemblyReport, ds: &[usize]) -> AssemblyReport {
    r.cohomology.retain(|p| ds.contains(&p.degree));
    r.homology.retain(|p| ds.contains(&p.degree));
    r.reduced_cohomology.retain(|p| ds.contains(&p.degree));
    r.reduced_homology.retain(|p| ds.contains(&p.degree));
    r.rationalized.retain(|p| ds.contains(&p.degree));
    r
}

fn best_value(p: &KPresentation) -> (bool, &GroupValue) {
    match &p.resolved {
        Some(v) => (true, v),
        None => (false, &p.value),
    }
}

/// `K^k(BG)`, `K_k(BG)` and their reduced forms, resolved when possible.
fn values(r: &AssemblyReport, n: Notation) -> Value {
    let mut map = Map::new();
    for p in r.cohomology.iter().chain(&r.homology).chain(&r.reduced_cohomology).chain(&r.reduced_homology) {
        let (resolved, value) = best_value(p);
        map.insert(
            p.target_name(Notation::Ascii).trim_end_matches("(BG)").to_string(),
            json!({ "resolved": resolved, "value": value, "text": value.render(n) }),
        );
    }
    Value::Object(map)
}

fn hypotheses_name(h: HypothesisStatus) -> Value {
    to_json(&h)
}

fn assembly_text(out: &mut String, r: &AssemblyReport, n: Notation) {
    writeln!(out, "r-table").unwrap();
    writeln!(out, "  p    r^0  r^1").unwrap();
    for row in r.r_table.rows() {
        writeln!(out, "  {:<4} {:<4} {}", row.p.to_string(), row.r0, row.r1).unwrap();
    }
    for (title, list) in [
        ("cohomology", &r.cohomology),
        ("homology", &r.homology),
        ("reduced cohomology", &r.reduced_cohomology),
        ("reduced homology", &r.reduced_homology),
    ] {
        writeln!(out, "{title}").unwrap();
        for p in list.iter() {
            writeln!(out, "  {}", p.render(n)).unwrap();
            let (resolved, value) = best_value(p);
            let tag = if resolved { "" } else { "  [unresolved]" };
            writeln!(out, "  {} = {}{tag}", p.target_name(n), value.render(n)).unwrap();
        }
    }
    if !r.rationalized.is_empty() {
        writeln!(out, "rationalized").unwrap();
        for q in &r.rationalized {
            writeln!(out, "  {}", q.render(n)).unwrap();
        }
    }
    for d in &r.duality {
        let verdict = if d.passed { "passed" } else { "FAILED" };
        writeln!(out, "duality K^{} / K_{}: {verdict}", d.cohomology_degree, d.homology_degree).unwrap();
        for c in d.checks.iter().filter(|c| !c.passed) {
            writeln!(out, "  {}: {}", c.name, c.detail).unwrap();
        }
    }
    writeln!(out, "euler predicate: {}", if r.euler_balanced { "holds" } else { "FAILS" }).unwrap();
}

fn con_p_json(g: &FiniteGroup) -> Value {
    let tables: BTreeMap<Prime, Value> = con_p_tables(g)
        .into_iter()
        .map(|(p, classes)| {
            let rows: Vec<Value> = classes
                .iter()
                .map(|c| {
                    json!({
                        "representative": c.representative,
                        "order": c.order_of_rep,
                        "class_size": c.class_size,
                        "centralizer_order": c.centralizer.len(),
                    })
                })
                .collect();
            (p, Value::Array(rows))
        })
        .collect();
    to_json(&tables)
}

fn con_p_text(out: &mut String, g: &FiniteGroup) {
    for (p, classes) in con_p_tables(g) {
        writeln!(out, "con_{p}: {} class{}", classes.len(), if classes.len() == 1 { "" } else { "es" }).unwrap();
        for c in classes {
            writeln!(
                out,
                "  g{} of order {}: class size {}, centralizer order {}",
                c.representative,
                c.order_of_rep,
                c.class_size,
                c.centralizer.len()
            )
            .unwrap();
        }
    }
}

fn group_summary(g: &FiniteGroup) -> Value {
    json!({ "order": g.order(), "abelian": g.is_abelian(), "primes": g.primes() })
}

fn finite_assembly(x: &GCwComplex, assume_acyclic: bool, k: Option<i64>) -> Result<(Assembly, AssemblyReport)> {
    let a = Assembly::from_complex(x, assume_acyclic)?;
    let r = keep_degrees(assembly_report(&a)?, &degrees(k));
    Ok((a, r))
}

pub fn finite_group(doc: Value, cap: usize, k: Option<i64>, n: Notation) -> Result<Report> {
    let (name, g) = read_group(doc, cap)?;
    let (a, r) = finite_assembly(&GCwComplex::point(g.clone()), false, k)?;
    let json = document(
        "finite-group",
        json!({
            "name": name,
            "group": group_summary(&g),
            "degrees": degrees(k),
            "hypotheses": hypotheses_name(a.hypotheses),
            "con_p": con_p_json(&g),
            "values": values(&r, n),
            "report": r,
        }),
    );
    let mut text = String::new();
    let label = name.unwrap_or_else(|| "G".into());
    writeln!(text, "{label}: finite group of order {}", g.order()).unwrap();
    con_p_text(&mut text, &g);
    assembly_text(&mut text, &r, n);
    Ok(Report { json, text })
}

pub fn package(pkg: GroupPackage, sharpen: bool, k: Option<i64>, n: Notation) -> Result<Report> {
    let pkg = if sharpen { pkg.sharpened() } else { pkg };
    let a = Assembly::from_package(&pkg);
    let r = keep_degrees(assembly_report(&a)?, &degrees(k));
    let json = document(
        "package",
        json!({
            "package": {
                "name": pkg.name(),
                "primes": pkg.primes(),
                "classes": pkg.classes().len(),
                "dim_bound": pkg.dim_bound(),
                "sharp": pkg.is_sharp(),
            },
            "degrees": degrees(k),
            "hypotheses": hypotheses_name(a.hypotheses),
            "values": values(&r, n),
            "report": r,
        }),
    );
    let mut text = String::new();
    writeln!(text, "package {} ({} classes{})", pkg.name(), pkg.classes().len(), if pkg.is_sharp() { ", sharp" } else { "" })
        .unwrap();
    assembly_text(&mut text, &r, n);
    Ok(Report { json, text })
}

pub fn gcw(doc: Value, cap: usize, assume_acyclic: bool, k: Option<i64>, n: Notation) -> Result<Report> {
    let repr: GCwRepr = decode(doc)?;
    let x = GCwComplex::from_repr(&repr, cap)?;
    let (a, r) = finite_assembly(&x, assume_acyclic, k)?;
    let g = x.group();
    let mut smith = Vec::new();
    for (p, classes) in con_p_tables(g) {
        for c in classes {
            smith.push(smith_consistency(&x, c.representative, p)?);
        }
    }
    let quotient = x.quotient();
    let json = document(
        "gcw",
        json!({
            "group": group_summary(g),
            "complex": {
                "ranks": x.base().ranks(),
                "orbits": x.orbit_counts(),
                "quotient_homology": quotient.homology(),
            },
            "degrees": degrees(k),
            "hypotheses": hypotheses_name(a.hypotheses),
            "smith": smith,
            "con_p": con_p_json(g),
            "values": values(&r, n),
            "report": r,
        }),
    );
    let mut text = String::new();
    writeln!(text, "group of order {} acting on a complex with cells {:?}", g.order(), x.base().ranks()).unwrap();
    let hyp = match a.hypotheses {
        HypothesisStatus::Verified => "acyclicity verified",
        HypothesisStatus::Assumed => "acyclicity ASSUMED, not checked",
        HypothesisStatus::Given => "hypotheses given",
    };
    writeln!(text, "{hyp}").unwrap();
    let qh: Vec<String> = quotient.homology().iter().map(|h| h.render(n)).collect();
    writeln!(text, "quotient homology: [{}]", qh.join(", ")).unwrap();
    for s in &smith {
        writeln!(
            text,
            "smith g{} (p = {}): fixed betti {:?}{}",
            s.element,
            s.prime,
            s.fixed_betti,
            if s.hypothesis_met { "" } else { " (complex not F_p-acyclic; nothing asserted)" }
        )
        .unwrap();
    }
    con_p_text(&mut text, g);
    assembly_text(&mut text, &r, n);
    Ok(Report { json, text })
}

pub fn fuchsian(genus: usize, periods: &[u64], k: Option<i64>, n: Notation) -> Result<Report> {
    let surface = QuotientK::from_complex(&surface_complex(genus));
    let mut maximal = Vec::new();
    for &gamma in periods {
        if gamma < 2 {
            return Err(Error::InvalidArgument(format!("cone orders must be at least 2, got {gamma}")));
        }
        let order = usize::try_from(gamma).ok().filter(|&o| o <= 1 << 20);
        let order = order.ok_or_else(|| Error::InvalidArgument(format!("cone order {gamma} is too large")))?;
        maximal.push(FiniteGroup::cyclic(order));
    }
    let mut reports = Vec::new();
    let mut mnm = Vec::new();
    let mut vals = Map::new();
    let mut text = String::new();
    let ps: Vec<String> = periods.iter().map(ToString::to_string).collect();
    if ps.is_empty() {
        writeln!(text, "Fuchsian group of signature ({genus})").unwrap();
    } else {
        writeln!(text, "Fuchsian group of signature ({genus}; {})", ps.join(", ")).unwrap();
    }
    let (tilde, z) = match n {
        Notation::Ascii => ("K~", "Z"),
        Notation::Unicode => ("K̃", "ℤ"),
    };
    for d in degrees(k) {
        let f = fuchsian_pipeline(genus, periods, d as i64)?;
        let m = mnm_assemble(&maximal, &surface, d as i64)?;
        if mnm_unreduced(&m).as_ref() != Some(&GroupValue::Adic(f.value.clone())) {
            return Err(Error::Inconsistent(format!("K^{d}: the Fuchsian sequence and the maximal-subgroup sequence disagree")));
        }
        writeln!(text, "K^{d}(S_g) = {}", f.surface.render(n)).unwrap();
        for (gamma, c) in &f.contributions {
            writeln!(text, "  {tilde}^{d}(B{z}/{gamma}) = {}", c.render(n)).unwrap();
        }
        writeln!(text, "K^{d}(BG) = {}", f.value.render(n)).unwrap();
        vals.insert(format!("K^{d}"), json!({ "resolved": true, "value": GroupValue::Adic(f.value.clone()), "text": f.value.render(n) }));
        reports.push(f);
        mnm.push(m);
    }
    writeln!(text, "maximal-subgroup route: agrees").unwrap();
    let json = document(
        "fuchsian",
        json!({
            "genus": genus,
            "periods": periods,
            "degrees": degrees(k),
            "values": vals,
            "pipeline": reports,
            "mnm": mnm,
            "cross_route": true,
        }),
    );
    Ok(Report { json, text })
}

pub fn pro_file(doc: Value, n: Notation) -> Result<Report> {
    let Value::Object(mut map) = doc else {
        return Err(Error::InvalidArgument("expected an object with a \"tower\" or a \"map\"".into()));
    };
    let mut text = String::new();
    if let Some(t) = map.remove("tower") {
        let t: Tower = decode(t)?;
        let trivial = is_pro_trivial(&t)?;
        let limits = lim_lim1(&t)?;
        let colimits = colim_hom_ext(&t)?;
        writeln!(text, "pro-trivial: {}", if trivial { "yes" } else { "no" }).unwrap();
        writeln!(text, "lim = {}", limits.lim.render(n)).unwrap();
        writeln!(text, "lim^1 = {}", limits.lim1.render(n)).unwrap();
        writeln!(text, "colim hom(-, Z) = {}", colimits.hom.render(n)).unwrap();
        writeln!(text, "colim ext(-, Z) = {}", colimits.ext.render(n)).unwrap();
        let json = document(
            "pro",
            json!({ "object": "tower", "pro_trivial": trivial, "limits": limits, "colimits": colimits }),
        );
        return Ok(Report { json, text });
    }
    if let Some(f) = map.remove("map") {
        let f: TowerMap = decode(f)?;
        let r = pro_pushforward_check(&f)?;
        writeln!(text, "pro-isomorphism: {}", if r.pro_isomorphism { "yes" } else { "no" }).unwrap();
        writeln!(text, "source: lim = {}, lim^1 = {}", r.source_limits.lim.render(n), r.source_limits.lim1.render(n)).unwrap();
        writeln!(text, "target: lim = {}, lim^1 = {}", r.target_limits.lim.render(n), r.target_limits.lim1.render(n)).unwrap();
        writeln!(text, "invariants agree: {}", if r.invariants_agree { "yes" } else { "no" }).unwrap();
        let json = document("pro", json!({ "object": "map", "report": r }));
        return Ok(Report { json, text });
    }
    Err(Error::InvalidArgument("expected an object with a \"tower\" or a \"map\"".into()))
}

pub fn ideal_tower(m: usize, depth: usize, p: Option<u64>, n: Notation) -> Result<Report> {
    let ring = CyclicRepRing::new(m)?;
    let g = FiniteGroup::cyclic(m);
    let tower = augmentation_tower(&ring, depth)?;
    let primes: Vec<Prime> = match p {
        Some(p) => vec![Prime::new(p)?],
        None => g.primes().into_iter().collect(),
    };
    let mut text = String::new();
    writeln!(text, "R(Z/{m}) / I^n").unwrap();
    let mut levels = Vec::new();
    for (i, level) in tower.prefix().iter().enumerate() {
        writeln!(text, "  n = {:<3} {}", i + 1, level.group.render(n)).unwrap();
        levels.push(json!({ "n": i + 1, "group": level.group, "text": level.group.render(n) }));
    }
    let mut rows = Vec::new();
    let mut all = true;
    for q in primes {
        let c = completion_rank(&ring, q, depth)?;
        let classes = g.con_p(q).len();
        let agrees = c.rank == classes;
        all &= agrees;
        writeln!(
            text,
            "p = {q}: completion rank {} (stable at depth {}), |con_{q}| = {classes}: {}",
            c.rank,
            c.depth,
            if agrees { "agree" } else { "DISAGREE" }
        )
        .unwrap();
        rows.push(json!({ "completion": c, "con_p": classes, "agrees": agrees }));
    }
    let json = document(
        "pro ideal-tower",
        json!({ "m": m, "depth": depth, "levels": levels, "primes": rows, "agrees": all }),
    );
    Ok(Report { json, text })
}

/// Recognizes the document kind from its fields and validates it.
pub fn validate(doc: Value, cap: usize, n: Notation) -> Result<Report> {
    let has = |k: &str| doc.get(k).is_some();
    let (kind, summary): (&str, Value) = if has("tower") {
        let t: Tower = decode(doc["tower"].clone())?;
        ("tower", json!({ "prefix_len": t.prefix_len(), "tail": t.tail() }))
    } else if has("map") {
        let f: TowerMap = decode(doc["map"].clone())?;
        ("tower-map", json!({ "prefix_len": f.source().prefix_len(), "tail": f.tail() }))
    } else if has("action") || (has("ranks") && has("group")) {
        let repr: GCwRepr = decode(doc.clone())?;
        let x = GCwComplex::from_repr(&repr, cap)?;
        ("gcw", json!({ "group_order": x.group().order(), "ranks": x.base().ranks() }))
    } else if has("classes") || has("quotient") {
        let pkg: GroupPackage = decode(doc.clone())?;
        ("package", json!({ "name": pkg.name(), "classes": pkg.classes().len() }))
    } else if has("irreducibles") || has("structure") {
        let t: RepRingTable = decode(doc.clone())?;
        ("representation-ring", json!({ "irreducibles": t.irreducibles() }))
    } else if has("ranks") {
        let c: ComplexRepr = decode(doc.clone())?;
        let c = CwComplex::from_repr(&c)?;
        let h: Vec<String> = c.homology().iter().map(|h| h.render(n)).collect();
        ("complex", json!({ "ranks": c.ranks(), "homology": h }))
    } else if has("group") || has("table") || has("perm_gens") || has("cyclic") || has("symmetric") {
        let (_, g) = read_group(doc.clone(), cap)?;
        ("group", group_summary(&g))
    } else {
        return Err(Error::InvalidArgument("unrecognized document: no known top-level fields".into()));
    };
    let json = document("validate", json!({ "kind": kind, "valid": true, "summary": summary }));
    Ok(Report { json, text: format!("valid {kind} document\n") })
}
