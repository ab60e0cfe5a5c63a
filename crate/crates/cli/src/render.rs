use serde_json::{json, Map, Value};

use arrangetop::arrangement::{Arrangement, IntersectionLattice, Point};
use arrangetop::braid::MonodromyData;
use arrangetop::cover::ConnectivityVerdict;
use arrangetop::cyclo::CycNumber;
use arrangetop::formality::{ObstructionReport, TangentConeComponent};
use arrangetop::milnorfiber::Spectrum;
use arrangetop::pencil::{BaseLocusReport, CurveMHS, EDims, LiftedCurve, Pencil};
use arrangetop::resonance::{ComponentKind, ResonanceComponent};

fn lit(c: &CycNumber) -> Value {
    Value::String(c.to_literal())
}

fn point(p: &Point) -> Value {
    Value::Array(p.iter().map(lit).collect())
}

fn one_based(v: &[usize]) -> Value {
    json!(v.iter().map(|i| i + 1).collect::<Vec<_>>())
}

pub fn lattice(a: &Arrangement, l: &IntersectionLattice) -> Value {
    let mut counts = Map::new();
    for m in 2..=l.max_multiplicity().max(2) {
        counts.insert(m.to_string(), json!(l.count_with_multiplicity(m)));
    }
    let points: Vec<Value> = l
        .points
        .iter()
        .map(|p| json!({"point": point(&p.point), "lines": one_based(&p.incident), "multiplicity": p.multiplicity()}))
        .collect();
    json!({
        "degree": a.degree(),
        "conductor": a.conductor(),
        "points": points,
        "counts": counts,
        "euler": arrangetop::arrangement::euler_complement(a, l),
    })
}

pub fn lattice_text(a: &Arrangement, l: &IntersectionLattice) -> String {
    let mut s = format!("{} lines over Q(zeta_{}), {} intersection points\n", a.degree(), a.conductor(), l.points.len());
    for m in 2..=l.max_multiplicity().max(2) {
        s += &format!("multiplicity {m}: {}\n", l.count_with_multiplicity(m));
    }
    for (k, p) in l.points.iter().enumerate() {
        let lines: Vec<String> = p.incident.iter().map(|i| (i + 1).to_string()).collect();
        let coords: Vec<String> = p.point.iter().map(|c| c.to_literal()).collect();
        s += &format!("P{} [{}] lines {}\n", k + 1, coords.join(" : "), lines.join(","));
    }
    s
}

pub fn component(c: &ResonanceComponent) -> Value {
    let kind = match &c.kind {
        ComponentKind::Local { point } => json!({"local": point + 1}),
        ComponentKind::Global(net) => {
            json!({"global": net.blocks.iter().map(|b| one_based(b)).collect::<Vec<_>>()})
        }
    };
    json!({
        "kind": kind,
        "support": one_based(&c.support),
        "dimension": c.dimension,
        "basis": c.basis.iter().map(|w| Value::Array(w.as_slice().iter().map(lit).collect())).collect::<Vec<_>>(),
    })
}

pub fn component_text(c: &ResonanceComponent) -> String {
    let kind = match &c.kind {
        ComponentKind::Local { point } => format!("local at P{}", point + 1),
        ComponentKind::Global(net) => {
            let blocks: Vec<String> = net
                .blocks
                .iter()
                .map(|b| format!("{{{}}}", b.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")))
                .collect();
            format!("global from net {}", blocks.join(" "))
        }
    };
    format!("{kind}, dimension {}", c.dimension)
}

fn edims(e: &EDims) -> Value {
    json!({"e11": e.e11, "e10": e.e10, "e01": e.e01})
}

pub fn base_locus(b: &BaseLocusReport) -> Value {
    json!({
        "points": b.points.iter().map(|p| json!({"point": point(&p.point), "multiplicities": p.multiplicities})).collect::<Vec<_>>(),
        "simple_point_exists": b.simple_point_exists,
    })
}

pub fn pencil(p: &Pencil, base: &BaseLocusReport, curve: &LiftedCurve, mhs: &CurveMHS, e: &EDims) -> Value {
    json!({
        "blocks": p.blocks.iter().map(|b| b.iter().map(|&(i, m)| json!([i + 1, m])).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "q": p.q.iter().map(|q| q.to_literal()).collect::<Vec<_>>(),
        "coords": p.coords.iter().map(|(a, b)| json!([a.to_literal(), b.to_literal()])).collect::<Vec<_>>(),
        "base_locus": base_locus(base),
        "lifted_equation": curve.equation(),
        "chi": mhs.chi,
        "genus": mhs.genus,
        "E_dims": edims(e),
        "certified": curve.certified,
    })
}

pub fn pencil_text(p: &Pencil, curve: &LiftedCurve, mhs: &CurveMHS, e: &EDims) -> String {
    let q: Vec<String> = p.q.iter().take(2).map(|q| q.to_literal()).collect();
    format!(
        "pencil ({} : {})\nlifted curve {}{}\nchi {}, genus {}\nE = ({}, {}, {})\n",
        q[0],
        q[1],
        curve.equation(),
        if curve.certified { " (certified)" } else { "" },
        mhs.chi,
        mhs.genus,
        e.e11,
        e.e10,
        e.e01
    )
}

pub fn verdict(v: &ConnectivityVerdict) -> Value {
    json!({
        "components": v.components,
        "r_values": v.r_values,
        "upper_bound": v.upper_bound,
        "lower_bound": v.lower_bound,
        "rationale": v.rationale,
    })
}

pub fn verdict_text(v: &ConnectivityVerdict) -> String {
    format!("{} component(s): {}\n", v.components, v.rationale)
}

pub fn braid(md: &MonodromyData) -> Value {
    json!({
        "strands": md.strands(),
        "infinity": md.infinity + 1,
        "basepoint": lit(&md.basepoint),
        "strand_order": one_based(&md.strand_order),
        "events": md.events.iter().map(|e| json!({
            "x": lit(&e.x),
            "multiplicity": e.multiplicity,
            "lines": one_based(&e.lines),
            "word": e.braid.letters,
        })).collect::<Vec<_>>(),
    })
}

pub fn braid_text(md: &MonodromyData) -> String {
    let mut s = format!("{} strands, {} critical values, line {} at infinity\n", md.strands(), md.events.len(), md.infinity + 1);
    for e in &md.events {
        let w: Vec<String> = e.braid.letters.iter().map(|l| l.to_string()).collect();
        s += &format!("x = {} (m = {}): {}\n", e.x.to_literal(), e.multiplicity, w.join(" "));
    }
    s
}

pub fn spectrum(s: &Spectrum) -> Value {
    let dims: Map<String, Value> = s.dims.iter().map(|(e, d)| (e.to_string(), json!(d))).collect();
    json!({"d": s.d, "dims": dims, "b1F": s.b1f})
}

pub fn spectrum_text(s: &Spectrum) -> String {
    let dims: Vec<String> = s.dims.iter().map(|(e, d)| format!("{e}:{d}")).collect();
    format!("d = {}, dims {{{}}}, b1(F) = {}\n", s.d, dims.join(", "), s.b1f)
}

pub fn candidate(c: &TangentConeComponent) -> Value {
    json!({
        "blocks": c.blocks.iter().map(|b| one_based(b)).collect::<Vec<_>>(),
        "q1": c.q1,
        "q2": c.q2,
        "lifted_equation": c.equation,
        "chi": c.chi,
        "E_dims": edims(&c.dims),
    })
}

pub fn obstruction(r: &ObstructionReport) -> Value {
    json!({
        "verdict": r.verdict.to_string(),
        "witness": {
            "inequality": r.witness.to_string(),
            "w1_h10": r.witness.w1_h10,
            "e10": r.witness.e10,
        },
        "pencil": r.component.as_ref().map(candidate),
        "fiber": {
            "h11F": r.fiber.h11f,
            "w1F": r.fiber.w1f,
            "w1_h10": r.fiber.w1_h10,
        },
        "conditions": r.conditions,
        "assumptions": r.assumptions.iter().map(|a| json!({"rule": a.rule, "citation": a.citation})).collect::<Vec<_>>(),
        "rationale": r.rationale,
    })
}

pub fn obstruction_text(r: &ObstructionReport) -> String {
    let mut s = String::new();
    if let Some(c) = &r.component {
        s += &format!("pencil ({} : {}) lifts to {}\n", c.q1, c.q2, c.equation);
        s += &format!("E = ({}, {}, {}), chi = {}\n", c.dims.e11, c.dims.e10, c.dims.e01, c.chi);
    }
    s += &format!("h11(F) = {}, dim W1(F) = {}\n", r.fiber.h11f, r.fiber.w1f);
    for a in &r.assumptions {
        s += &format!("assuming: {} [{}]\n", a.rule, a.citation);
    }
    s += &format!("{}\n", r.rationale);
    s += &format!("verdict {}, witness {}, w1F = {}\n", r.verdict, r.witness, r.fiber.w1f);
    s
}
