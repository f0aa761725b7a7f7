//! The machine-readable check report and its assembly.

use serde::{Deserialize, Serialize};

use schottky::cline::ClineRelationKind;
use schottky::family::{
    evaluate_pinch, in_f, mirror_relation_table, mirrors, symmetry_report, w_orbit_check,
    Membership, ParameterPoint,
};
use schottky::moebius::MapKind;

#[derive(Serialize, Deserialize)]
pub struct MirrorsOut {
    pub w0_re: f64,
    pub w0_im: f64,
    pub l4_center_re: f64,
    pub l4_center_im: f64,
    pub l4_radius: f64,
}

#[derive(Serialize, Deserialize)]
pub struct RelationOut {
    pub pair: String,
    pub observed: String,
    pub angle: Option<f64>,
    pub inversive_product: f64,
    pub inversive_distance: Option<f64>,
    pub expected: Option<String>,
    pub pass: bool,
}

#[derive(Serialize, Deserialize)]
pub struct SymmetryOut {
    pub relation: String,
    pub distance: f64,
    pub pass: bool,
}

#[derive(Serialize, Deserialize)]
pub struct PinchOut {
    pub label: String,
    pub word: String,
    pub t2_re: f64,
    pub t2_im: f64,
    pub class: String,
    pub translation_length: f64,
}

#[derive(Serialize, Deserialize)]
pub struct WOrbitOut {
    pub spread_123: f64,
    pub spread_456: f64,
    pub pass: bool,
}

/// Everything `check` verifies at one parameter point. Field order is the
/// serialization order, so parse → serialize is byte-stable.
#[derive(Serialize, Deserialize)]
pub struct CheckReport {
    pub p: f64,
    pub r: f64,
    pub membership: String,
    pub first_violation: Option<String>,
    pub on_p_boundary: bool,
    pub on_r_boundary: bool,
    pub mirrors: Option<MirrorsOut>,
    pub relations: Vec<RelationOut>,
    pub symmetry: Vec<SymmetryOut>,
    pub pinch: Vec<PinchOut>,
    pub w_orbit: Option<WOrbitOut>,
    pub verdict: String,
}

fn relation_kind_string(kind: &ClineRelationKind) -> (String, Option<f64>) {
    match kind {
        ClineRelationKind::Equal => ("equal".to_string(), None),
        ClineRelationKind::Disjoint => ("disjoint".to_string(), None),
        ClineRelationKind::Tangent => ("tangent".to_string(), None),
        ClineRelationKind::Intersecting { angle } => ("intersecting".to_string(), Some(*angle)),
    }
}

/// Run the full battery at `pt`. The verdict is `pass` exactly when the
/// point lies in the family closure, the mirror table matches the pattern
/// for its membership, the relation set and W-orbit checks hold, and each
/// pinch word is parabolic precisely on its degeneration locus.
pub fn build_check_report(pt: ParameterPoint, tolerance: f64) -> CheckReport {
    let membership = in_f(pt, tolerance);
    let geometry_ok = pt.p > 0.0 && pt.p < 1.0 && pt.r > 0.0 && pt.r < 1.0;

    let mut report = CheckReport {
        p: pt.p,
        r: pt.r,
        membership: membership.membership.to_string(),
        first_violation: membership.first_violation.map(|c| c.to_string()),
        on_p_boundary: membership.on_p_boundary,
        on_r_boundary: membership.on_r_boundary,
        mirrors: None,
        relations: Vec::new(),
        symmetry: Vec::new(),
        pinch: Vec::new(),
        w_orbit: None,
        verdict: "fail".to_string(),
    };
    if !geometry_ok {
        return report;
    }

    let system = mirrors(pt).expect("p, r in (0,1)");
    report.mirrors = Some(MirrorsOut {
        w0_re: system.w0.re,
        w0_im: system.w0.im,
        l4_center_re: system.l4_center.re,
        l4_center_im: system.l4_center.im,
        l4_radius: system.l4_radius,
    });

    let table = mirror_relation_table(pt).expect("geometry is defined");
    report.relations = table
        .entries
        .iter()
        .map(|e| {
            let (observed, angle) = relation_kind_string(&e.observed.kind);
            RelationOut {
                pair: format!("L{}/L{}", e.pair.0, e.pair.1),
                observed,
                angle,
                inversive_product: e.observed.inversive_product,
                inversive_distance: e.observed.inversive_distance,
                expected: e.expected.map(|x| x.to_string()),
                pass: e.pass,
            }
        })
        .collect();

    let sym = symmetry_report(pt).expect("geometry is defined");
    report.symmetry = sym
        .rows
        .iter()
        .map(|r| SymmetryOut {
            relation: r.name.to_string(),
            distance: r.distance,
            pass: r.pass,
        })
        .collect();

    let rows = evaluate_pinch(pt).expect("geometry is defined");
    report.pinch = rows
        .iter()
        .map(|row| PinchOut {
            label: row.label.to_string(),
            word: row.word.to_string(),
            t2_re: row.trace_squared.re,
            t2_im: row.trace_squared.im,
            class: row.class.kind.to_string(),
            translation_length: row.translation_length,
        })
        .collect();

    let orbit = w_orbit_check(pt).expect("geometry is defined");
    report.w_orbit = Some(WOrbitOut {
        spread_123: orbit.spread_123,
        spread_456: orbit.spread_456,
        pass: orbit.pass,
    });

    let pinch_consistent = rows.iter().enumerate().all(|(k, row)| {
        let expect_parabolic = if k < 3 {
            membership.on_p_boundary
        } else {
            membership.on_r_boundary
        };
        (row.class.kind == MapKind::Parabolic) == expect_parabolic
    });

    let pass = membership.membership != Membership::Outside
        && table.pass
        && sym.pass
        && orbit.pass
        && pinch_consistent;
    report.verdict = if pass { "pass" } else { "fail" }.to_string();
    report
}
