//! The two-parameter rank-3 family: parameter domain, the five mirrors
//! L₀..L₄ with their reflections τ₀..τ₄, the marked generators, the
//! symmetry relations, and the six pinchable words.
//!
//! Conventions pinned here (asserted by `composition_convention_*` tests):
//! a juxtaposed product applies the right factor first, A₁ = τ₄∘τ₂,
//! A₂ = τ₁∘A₁∘τ₁, A₃ = τ₃∘τ₀ (so A₃: z ↦ r²z), W = τ₂∘τ₁, J = τ₀∘τ₁,
//! L = τ₁∘τ₄. Under this convention A₁ is parabolic on p = 1/2 and A₂'s
//! coefficient quadruple is the complex conjugate of A₁'s.

use num_complex::Complex64;
use thiserror::Error;

use crate::cline::{Cline, ClineRelation, ClineRelationKind};
use crate::moebius::{AntiMoebiusMap, MapClass, MoebiusMap};
use crate::tol;
use crate::words::{LetterMaps, ReducedWord};

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum FamilyError {
    #[error("{name} = {value} is outside its domain")]
    ParameterOutOfRange { name: &'static str, value: f64 },
}

/// A point (p, r) of the parameter plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParameterPoint {
    pub p: f64,
    pub r: f64,
}

impl ParameterPoint {
    pub fn new(p: f64, r: f64) -> Self {
        ParameterPoint { p, r }
    }
}

/// The distinguished doubly-degenerate parameter point
/// (1/2, (√7 − √3)/2), built from radicals.
pub fn noded_point() -> ParameterPoint {
    ParameterPoint {
        p: 0.5,
        r: (7.0_f64.sqrt() - 3.0_f64.sqrt()) / 2.0,
    }
}

/// Upper bound of r over the family at a given p; equals |c| − R, the
/// radius at which the circle about 0 becomes tangent to L₄.
///
/// Defined for p ∈ (0, 1]; at p = 1 the value is exactly 1.
pub fn r_max(p: f64) -> Result<f64, FamilyError> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(FamilyError::ParameterOutOfRange {
            name: "p",
            value: p,
        });
    }
    let p2 = p * p;
    Ok(((1.0 + p2 + p2 * p2).sqrt() + p2 - 1.0) / (3.0_f64.sqrt() * p))
}

/// Membership of a parameter point in the (open) family domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Interior,
    Boundary,
    Outside,
}

impl std::fmt::Display for Membership {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Membership::Interior => "interior",
            Membership::Boundary => "boundary",
            Membership::Outside => "outside",
        };
        write!(f, "{s}")
    }
}

/// The defining constraints in their stated order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    RPositive,
    RBelowP,
    PBelowOne,
    PAboveHalf,
    RBelowRMax,
}

impl std::fmt::Display for Constraint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Constraint::RPositive => "0 < r",
            Constraint::RBelowP => "r < p",
            Constraint::PBelowOne => "p < 1",
            Constraint::PAboveHalf => "p > 1/2",
            Constraint::RBelowRMax => "r < r_max(p)",
        };
        write!(f, "{s}")
    }
}

/// Tri-state membership plus which tangency boundaries are active.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MembershipReport {
    pub membership: Membership,
    /// First constraint violated, in the order they are stated.
    pub first_violation: Option<Constraint>,
    /// |p − 1/2| within tolerance: the L₂/L₄ tangency locus.
    pub on_p_boundary: bool,
    /// |r − r_max(p)| within tolerance: the L₃/L₄ tangency locus.
    pub on_r_boundary: bool,
}

/// Membership with margin `tol`: interior needs every strict inequality to
/// hold with margin > tol; the two tangency loci count as boundary, the
/// other constraints as violations.
pub fn in_f(pt: ParameterPoint, tolerance: f64) -> MembershipReport {
    let ParameterPoint { p, r } = pt;
    let outside = |c: Constraint| MembershipReport {
        membership: Membership::Outside,
        first_violation: Some(c),
        on_p_boundary: false,
        on_r_boundary: false,
    };
    if !(r > tolerance) {
        return outside(Constraint::RPositive);
    }
    if !(p - r > tolerance) {
        return outside(Constraint::RBelowP);
    }
    if !(1.0 - p > tolerance) {
        return outside(Constraint::PBelowOne);
    }
    let on_p_boundary = (p - 0.5).abs() <= tolerance;
    if p - 0.5 < -tolerance {
        return outside(Constraint::PAboveHalf);
    }
    let rm = r_max(p).expect("0 < p < 1 at this point");
    let on_r_boundary = (rm - r).abs() <= tolerance;
    if rm - r < -tolerance {
        return outside(Constraint::RBelowRMax);
    }
    let membership = if on_p_boundary || on_r_boundary {
        Membership::Boundary
    } else {
        Membership::Interior
    };
    MembershipReport {
        membership,
        first_violation: None,
        on_p_boundary,
        on_r_boundary,
    }
}

/// The five mirrors and their reflections at a parameter point.
#[derive(Clone, Debug)]
pub struct MirrorSystem {
    /// L₀..L₄.
    pub clines: [Cline; 5],
    /// τ₀..τ₄.
    pub reflections: [AntiMoebiusMap; 5],
    /// e^{iπ/3}.
    pub w0: Complex64,
    /// Center of L₄.
    pub l4_center: Complex64,
    /// Radius of L₄.
    pub l4_radius: f64,
}

/// e^{iπ/3} from radicals.
pub fn w0() -> Complex64 {
    Complex64::new(0.5, 3.0_f64.sqrt() / 2.0)
}

/// Build the mirror system; needs p, r ∈ (0, 1).
pub fn mirrors(pt: ParameterPoint) -> Result<MirrorSystem, FamilyError> {
    let ParameterPoint { p, r } = pt;
    if !(p > 0.0 && p < 1.0) {
        return Err(FamilyError::ParameterOutOfRange {
            name: "p",
            value: p,
        });
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(FamilyError::ParameterOutOfRange {
            name: "r",
            value: r,
        });
    }
    let sq3 = 3.0_f64.sqrt();
    let c = Complex64::new((1.0 + p * p) / (2.0 * p), (1.0 - p * p) / (2.0 * p * sq3));
    let radius = (1.0 - p * p) / (sq3 * p);
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let clines = [
        Cline::circle(zero, 1.0).expect("unit circle"),
        Cline::line(zero, one).expect("real line"),
        Cline::line(zero, w0()).expect("line through w0"),
        Cline::circle(zero, r).expect("r > 0"),
        Cline::circle(c, radius).expect("R > 0 for p < 1"),
    ];
    let reflections = [
        clines[0].reflection(),
        clines[1].reflection(),
        clines[2].reflection(),
        clines[3].reflection(),
        clines[4].reflection(),
    ];
    Ok(MirrorSystem {
        clines,
        reflections,
        w0: w0(),
        l4_center: c,
        l4_radius: radius,
    })
}

/// The marked generators and the symmetry maps they come from.
#[derive(Clone, Debug)]
pub struct GeneratorTriple {
    pub a1: MoebiusMap,
    pub a2: MoebiusMap,
    pub a3: MoebiusMap,
    /// W = τ₂∘τ₁, order 3.
    pub w: MoebiusMap,
    /// J = τ₀∘τ₁, order 2.
    pub j: MoebiusMap,
    /// L = τ₁∘τ₄, order 3.
    pub l: MoebiusMap,
}

impl GeneratorTriple {
    pub fn letter_maps(&self) -> LetterMaps {
        LetterMaps::new(self.a1, self.a2, self.a3)
    }
}

pub fn generators(pt: ParameterPoint) -> Result<GeneratorTriple, FamilyError> {
    Ok(generators_from(&mirrors(pt)?))
}

pub fn generators_from(m: &MirrorSystem) -> GeneratorTriple {
    let t = &m.reflections;
    let a1 = t[4] * t[2];
    let a2 = (t[1] * a1) * t[1];
    let a3 = t[3] * t[0];
    GeneratorTriple {
        a1,
        a2,
        a3,
        w: t[2] * t[1],
        j: t[0] * t[1],
        l: t[1] * t[4],
    }
}

/// What the relation between a mirror pair should be at a valid parameter
/// point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExpectedRelation {
    Orthogonal,
    AnglePiOverThree,
    Disjoint,
    Tangent,
}

impl std::fmt::Display for ExpectedRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ExpectedRelation::Orthogonal => "orthogonal",
            ExpectedRelation::AnglePiOverThree => "angle pi/3",
            ExpectedRelation::Disjoint => "disjoint",
            ExpectedRelation::Tangent => "tangent",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RelationEntry {
    /// Indices into L₀..L₄.
    pub pair: (usize, usize),
    pub observed: ClineRelation,
    pub expected: Option<ExpectedRelation>,
    pub pass: bool,
}

/// The 10 pairwise mirror relations checked against the expected pattern.
#[derive(Clone, Debug)]
pub struct RelationTable {
    pub entries: Vec<RelationEntry>,
    /// False outside the family closure, where no pattern is defined.
    pub expected_defined: bool,
    pub pass: bool,
}

const ANGLE_GATE: f64 = 1e-10;

fn matches_expected(observed: &ClineRelation, expected: ExpectedRelation) -> bool {
    match expected {
        ExpectedRelation::Orthogonal => matches!(
            observed.kind,
            ClineRelationKind::Intersecting { angle }
                if (angle - std::f64::consts::FRAC_PI_2).abs() <= ANGLE_GATE
        ),
        ExpectedRelation::AnglePiOverThree => matches!(
            observed.kind,
            ClineRelationKind::Intersecting { angle }
                if (angle - std::f64::consts::FRAC_PI_3).abs() <= ANGLE_GATE
        ),
        ExpectedRelation::Disjoint => observed.kind == ClineRelationKind::Disjoint,
        ExpectedRelation::Tangent => observed.kind == ClineRelationKind::Tangent,
    }
}

/// Compute all pairwise relations at `pt` and compare them with the
/// pattern appropriate to its membership (tangencies expected exactly on
/// the boundary loci).
pub fn mirror_relation_table(pt: ParameterPoint) -> Result<RelationTable, FamilyError> {
    let membership = in_f(pt, tol::CLASSIFICATION_BAND);
    let system = mirrors(pt)?;
    Ok(relation_table_from(&system, &membership))
}

pub fn relation_table_from(system: &MirrorSystem, membership: &MembershipReport) -> RelationTable {
    let expected_defined = membership.membership != Membership::Outside;
    let expected_for = |i: usize, j: usize| -> Option<ExpectedRelation> {
        if !expected_defined {
            return None;
        }
        Some(match (i, j) {
            (0, 1) | (0, 2) | (0, 4) | (1, 3) | (2, 3) => ExpectedRelation::Orthogonal,
            (1, 2) | (1, 4) => ExpectedRelation::AnglePiOverThree,
            (0, 3) => ExpectedRelation::Disjoint,
            (2, 4) => {
                if membership.on_p_boundary {
                    ExpectedRelation::Tangent
                } else {
                    ExpectedRelation::Disjoint
                }
            }
            (3, 4) => {
                if membership.on_r_boundary {
                    ExpectedRelation::Tangent
                } else {
                    ExpectedRelation::Disjoint
                }
            }
            _ => unreachable!("pairs are enumerated with i < j"),
        })
    };
    let mut entries = Vec::with_capacity(10);
    let mut pass = expected_defined;
    for i in 0..5 {
        for j in (i + 1)..5 {
            let observed = system.clines[i].relate(&system.clines[j], tol::CLASSIFICATION_BAND);
            let expected = expected_for(i, j);
            let entry_pass = expected.is_some_and(|e| matches_expected(&observed, e));
            pass &= entry_pass;
            entries.push(RelationEntry {
                pair: (i, j),
                observed,
                expected,
                pass: entry_pass,
            });
        }
    }
    RelationTable {
        entries,
        expected_defined,
        pass,
    }
}

/// Projective-distance gate for the relation set, as stated.
pub const SYMMETRY_GATE: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct SymmetryRow {
    pub name: &'static str,
    pub distance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct SymmetryReport {
    pub rows: Vec<SymmetryRow>,
    pub pass: bool,
}

pub fn symmetry_report(pt: ParameterPoint) -> Result<SymmetryReport, FamilyError> {
    let system = mirrors(pt)?;
    Ok(symmetry_report_from(&system))
}

/// Check W³ = L³ = J² = (WJ)² = (LJ)² = 1 and τ₁A₁τ₁ = A₂ on a mirror
/// system (callers may pass a deliberately perturbed system to exercise
/// the checker).
pub fn symmetry_report_from(system: &MirrorSystem) -> SymmetryReport {
    let g = generators_from(system);
    let t1 = system.reflections[1];
    let wj = g.w * g.j;
    let lj = g.l * g.j;
    let conj_a1 = (t1 * g.a1) * t1;
    let rows = vec![
        ("W^3", g.w * g.w * g.w),
        ("L^3", g.l * g.l * g.l),
        ("J^2", g.j * g.j),
        ("(WJ)^2", wj * wj),
        ("(LJ)^2", lj * lj),
        ("tau1 A1 tau1 A2^-1", conj_a1 * g.a2.inverse()),
    ];
    let rows: Vec<SymmetryRow> = rows
        .into_iter()
        .map(|(name, m)| {
            let distance = m.projective_distance_to_identity();
            SymmetryRow {
                name,
                distance,
                pass: distance < SYMMETRY_GATE,
            }
        })
        .collect();
    let pass = rows.iter().all(|r| r.pass);
    SymmetryReport { rows, pass }
}

/// Labels γ₁..γ₆ of the pinchable words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PinchLabel(pub u8);

impl std::fmt::Display for PinchLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "gamma{}", self.0)
    }
}

#[derive(Clone, Debug)]
pub struct PinchWord {
    pub label: PinchLabel,
    pub word: ReducedWord,
}

/// The six pinchable words, as reduced words in the generator letters.
pub fn pinch_words() -> [PinchWord; 6] {
    let raw: [&[i8]; 6] = [
        &[-2],
        &[1],
        &[-1, 2],
        &[-1, 2, -3, -2, 1, 3],
        &[-2, -3, 2, 3],
        &[1, -3, -1, 3],
    ];
    let mut words = Vec::with_capacity(6);
    for (i, letters) in raw.iter().enumerate() {
        let reduced = ReducedWord::reduce(letters).expect("pinch letters are valid");
        assert_eq!(
            reduced.len(),
            letters.len(),
            "pinch word gamma{} cancels",
            i + 1
        );
        words.push(PinchWord {
            label: PinchLabel((i + 1) as u8),
            word: reduced,
        });
    }
    words.try_into().expect("exactly six pinch words")
}

/// One row of the pinch evaluation.
#[derive(Clone, Debug)]
pub struct PinchRow {
    pub label: PinchLabel,
    pub word: ReducedWord,
    pub trace_squared: Complex64,
    pub class: MapClass,
    pub translation_length: f64,
}

pub fn evaluate_pinch(pt: ParameterPoint) -> Result<[PinchRow; 6], FamilyError> {
    let g = generators(pt)?;
    Ok(evaluate_pinch_from(&g))
}

pub fn evaluate_pinch_from(g: &GeneratorTriple) -> [PinchRow; 6] {
    let maps = g.letter_maps();
    let rows: Vec<PinchRow> = pinch_words()
        .into_iter()
        .map(|pw| {
            let m = pw.word.evaluate(&maps);
            let class = m.classify(tol::CLASSIFICATION_BAND);
            PinchRow {
                label: pw.label,
                word: pw.word,
                trace_squared: m.normalized_trace_squared(),
                class,
                translation_length: m.translation_length(),
            }
        })
        .collect();
    rows.try_into().expect("six rows")
}

/// Result of the W-orbit trace check: conjugate words must share t².
#[derive(Clone, Copy, Debug)]
pub struct WOrbitReport {
    pub pass: bool,
    /// Largest chordal distance among t²(γ₁), t²(γ₂), t²(γ₃).
    pub spread_123: f64,
    /// Largest chordal distance among t²(γ₄), t²(γ₅), t²(γ₆).
    pub spread_456: f64,
    pub trace_squared: [Complex64; 6],
}

/// Check t²(γ₁)=t²(γ₂)=t²(γ₃) and t²(γ₄)=t²(γ₅)=t²(γ₆), comparing the
/// values as points of the sphere (chordal distance below the band).
pub fn w_orbit_check(pt: ParameterPoint) -> Result<WOrbitReport, FamilyError> {
    let rows = evaluate_pinch(pt)?;
    let t2: Vec<Complex64> = rows.iter().map(|r| r.trace_squared).collect();
    let spread = |idx: [usize; 3]| -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in (i + 1)..3 {
                worst = worst.max(tol::chordal(t2[idx[i]], t2[idx[j]]));
            }
        }
        worst
    };
    let spread_123 = spread([0, 1, 2]);
    let spread_456 = spread([3, 4, 5]);
    Ok(WOrbitReport {
        pass: spread_123 < tol::CLASSIFICATION_BAND && spread_456 < tol::CLASSIFICATION_BAND,
        spread_123,
        spread_456,
        trace_squared: t2.try_into().expect("six values"),
    })
}
