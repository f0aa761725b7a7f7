//! Circles and lines on the sphere as one Hermitian type.
//!
//! A cline is the zero set of A·z·z̄ + B·z̄ + B̄·z + D with A, D real and
//! discriminant |B|² − AD > 0. Clines are stored canonically: discriminant
//! 1, A ≥ 0, and for lines (A = 0) a unit B with Re B > 0, or Re B = 0 and
//! Im B > 0. A genuine circle has center −B/A and radius 1/A (canonical);
//! A = 0 is a line with unit normal B. Canonical storage makes equality and
//! deduplication deterministic.

use num_complex::Complex64;
use thiserror::Error;

use crate::moebius::{AntiMoebiusMap, MoebiusMap, SpherePoint};

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum ClineError {
    #[error("circle radius must be positive, got {0}")]
    InvalidRadius(f64),
    #[error("a line needs two distinct points")]
    CoincidentPoints,
    #[error("coefficients have non-positive discriminant |B|^2 - AD")]
    IndefiniteForm,
    #[error("clines are not tangent (inversive product {0})")]
    NotTangent(f64),
}

/// How two clines sit relative to each other.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ClineRelationKind {
    Equal,
    Disjoint,
    Tangent,
    /// Crossing at the given angle in (0, π/2].
    Intersecting {
        angle: f64,
    },
}

/// Classification of a cline pair together with the invariant it was
/// decided on. `band_hit` is set when |δ| landed inside the tangency band.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClineRelation {
    pub kind: ClineRelationKind,
    /// Normalized inversive product δ of the canonical forms.
    pub inversive_product: f64,
    /// acosh|δ| for disjoint pairs.
    pub inversive_distance: Option<f64>,
    pub band_hit: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cline {
    a: f64,
    b: Complex64,
    d: f64,
}

impl Cline {
    /// Canonicalize raw Hermitian coefficients.
    pub fn from_coefficients(a: f64, b: Complex64, d: f64) -> Result<Self, ClineError> {
        let disc = b.norm_sqr() - a * d;
        if !(disc > 0.0) || !disc.is_finite() {
            return Err(ClineError::IndefiniteForm);
        }
        let s = 1.0 / disc.sqrt();
        let (mut a, mut b, mut d) = (a * s, b * s, d * s);
        let flip = if a != 0.0 {
            a < 0.0
        } else {
            b.re < 0.0 || (b.re == 0.0 && b.im < 0.0)
        };
        if flip {
            a = -a;
            b = -b;
            d = -d;
        }
        // a may be a signed zero after scaling
        if a == 0.0 {
            a = 0.0;
        }
        Ok(Cline { a, b, d })
    }

    /// Circle with the given center and positive radius.
    pub fn circle(center: Complex64, radius: f64) -> Result<Self, ClineError> {
        if !(radius > 0.0) {
            return Err(ClineError::InvalidRadius(radius));
        }
        // |z - m|² = R²  ⇔  z z̄ − m z̄ − m̄ z + |m|² − R² = 0
        Self::from_coefficients(1.0, -center, center.norm_sqr() - radius * radius)
    }

    /// Line through two distinct points.
    pub fn line(z1: Complex64, z2: Complex64) -> Result<Self, ClineError> {
        if (z1 - z2).norm() == 0.0 {
            return Err(ClineError::CoincidentPoints);
        }
        let dir = (z2 - z1) / (z2 - z1).norm();
        let normal = Complex64::new(0.0, 1.0) * dir;
        // h(z) = 2 Re(B z̄) + D with B the unit normal
        let d = -2.0 * (normal * z1.conj()).re;
        Self::from_coefficients(0.0, normal, d)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn is_line(&self) -> bool {
        self.a == 0.0
    }

    pub fn center(&self) -> Option<Complex64> {
        (!self.is_line()).then(|| -self.b / self.a)
    }

    /// Radius of a genuine circle; canonical discriminant 1 makes it 1/A.
    pub fn radius(&self) -> Option<f64> {
        (!self.is_line()).then(|| 1.0 / self.a)
    }

    /// Value of the Hermitian form at a finite point. Negative inside a
    /// circle, positive outside; sign of the half-plane for a line.
    pub fn evaluate(&self, z: Complex64) -> f64 {
        self.a * z.norm_sqr() + 2.0 * (self.b * z.conj()).re + self.d
    }

    /// Signed side of a sphere point: the form value, with the point at
    /// infinity evaluating to A (outside every circle, on every line).
    pub fn side(&self, z: SpherePoint) -> f64 {
        match z {
            SpherePoint::Finite(z) => self.evaluate(z),
            SpherePoint::Infinity => self.a,
        }
    }

    /// `n` points on the locus.
    pub fn sample_points(&self, n: usize) -> Vec<Complex64> {
        if self.is_line() {
            // base point closest to the origin, then steps along the direction
            let base = -(self.d / 2.0) * self.b;
            let dir = Complex64::new(0.0, 1.0) * self.b;
            (0..n)
                .map(|k| base + dir * (0.8 * (k as f64) - 0.4 * (n as f64) + 0.3))
                .collect()
        } else {
            let m = self.center().unwrap();
            let r = self.radius().unwrap();
            (0..n)
                .map(|k| {
                    let th = 2.0 * std::f64::consts::PI * (k as f64 + 0.37) / (n as f64);
                    m + Complex64::from_polar(r, th)
                })
                .collect()
        }
    }

    /// The anticonformal involution fixing the cline pointwise.
    pub fn reflection(&self) -> AntiMoebiusMap {
        if self.is_line() {
            // z ↦ −B² z̄ − D·B for unit normal B
            AntiMoebiusMap::new(
                -self.b * self.b,
                -self.d * self.b,
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
            )
            .expect("line reflection is nondegenerate")
        } else {
            // z ↦ m + R²/(z̄ − m̄) as a coefficient matrix
            AntiMoebiusMap::new(
                -self.b,
                Complex64::new(-self.d, 0.0),
                Complex64::new(self.a, 0.0),
                self.b.conj(),
            )
            .expect("circle reflection is nondegenerate")
        }
    }

    fn hermitian(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.a, 0.0),
            self.b,
            self.b.conj(),
            Complex64::new(self.d, 0.0),
        ]
    }

    fn from_hermitian(h: [Complex64; 4]) -> Result<Self, ClineError> {
        Self::from_coefficients(h[0].re, h[1], h[3].re)
    }

    /// Push-forward under a conformal map, by coefficient substitution with
    /// the inverse matrix: H ↦ N* H N where N is the adjugate of f.
    pub fn image(&self, f: &MoebiusMap) -> Cline {
        let [a, b, c, d] = f.coefficients();
        let n = [d, -b, -c, a];
        Self::from_hermitian(congruence(n, self.hermitian()))
            .expect("image of a cline under a nondegenerate map is a cline")
    }

    /// Push-forward under an anticonformal map: H ↦ N* H̄ N.
    pub fn image_anti(&self, f: &AntiMoebiusMap) -> Cline {
        let [a, b, c, d] = f.coefficients();
        let n = [d, -b, -c, a];
        let h = self.hermitian();
        let h_conj = [h[0].conj(), h[1].conj(), h[2].conj(), h[3].conj()];
        Self::from_hermitian(congruence(n, h_conj))
            .expect("image of a cline under a nondegenerate map is a cline")
    }

    /// Normalized inversive product of two canonical clines. |δ| > 1 for
    /// disjoint loci, 1 at tangency, cos of the angle when they cross.
    pub fn inversive_product(&self, other: &Cline) -> f64 {
        (2.0 * (self.b * other.b.conj()).re - self.a * other.d - other.a * self.d) / 2.0
    }

    /// Componentwise comparison of canonical forms.
    pub fn approx_eq(&self, other: &Cline, tol: f64) -> bool {
        (self.a - other.a).abs() <= tol
            && (self.b - other.b).norm() <= tol
            && (self.d - other.d).abs() <= tol
    }

    /// Classify the pair via the inversive product, with a tangency band.
    pub fn relate(&self, other: &Cline, tol: f64) -> ClineRelation {
        let delta = self.inversive_product(other);
        let mag = delta.abs();
        let band_hit = (mag - 1.0).abs() < tol;
        if band_hit {
            let kind = if self.approx_eq(other, tol) {
                ClineRelationKind::Equal
            } else {
                ClineRelationKind::Tangent
            };
            return ClineRelation {
                kind,
                inversive_product: delta,
                inversive_distance: None,
                band_hit,
            };
        }
        if mag > 1.0 {
            ClineRelation {
                kind: ClineRelationKind::Disjoint,
                inversive_product: delta,
                inversive_distance: Some(mag.acosh()),
                band_hit,
            }
        } else {
            ClineRelation {
                kind: ClineRelationKind::Intersecting { angle: mag.acos() },
                inversive_product: delta,
                inversive_distance: None,
                band_hit,
            }
        }
    }

    /// The unique common point of two tangent clines. Parallel lines touch
    /// at infinity.
    pub fn tangency_point(&self, other: &Cline, tol: f64) -> Result<SpherePoint, ClineError> {
        let rel = self.relate(other, tol);
        if rel.kind != ClineRelationKind::Tangent {
            return Err(ClineError::NotTangent(rel.inversive_product));
        }
        match (self.is_line(), other.is_line()) {
            (true, true) => Ok(SpherePoint::Infinity),
            (false, false) => {
                let (m1, r1) = (self.center().unwrap(), self.radius().unwrap());
                let (m2, r2) = (other.center().unwrap(), other.radius().unwrap());
                let u = (m2 - m1) / (m2 - m1).norm();
                let cand1 = m1 + r1 * u;
                let cand2 = m1 - r1 * u;
                let miss = |z: Complex64| ((z - m2).norm() - r2).abs();
                Ok(SpherePoint::Finite(if miss(cand1) <= miss(cand2) {
                    cand1
                } else {
                    cand2
                }))
            }
            _ => {
                let (line, circle) = if self.is_line() {
                    (self, other)
                } else {
                    (other, self)
                };
                let m = circle.center().unwrap();
                // foot of the perpendicular from the center onto the line
                let foot = m - (line.evaluate(m) / 2.0) * line.b;
                Ok(SpherePoint::Finite(foot))
            }
        }
    }
}

/// N* H N for 2×2 matrices in row-major [a, b; c, d] layout.
fn congruence(n: [Complex64; 4], h: [Complex64; 4]) -> [Complex64; 4] {
    let [na, nb, nc, nd] = n;
    let [ha, hb, hc, hd] = h;
    // H N
    let m = [
        ha * na + hb * nc,
        ha * nb + hb * nd,
        hc * na + hd * nc,
        hc * nb + hd * nd,
    ];
    // N* (H N)
    [
        na.conj() * m[0] + nc.conj() * m[2],
        na.conj() * m[1] + nc.conj() * m[3],
        nb.conj() * m[0] + nd.conj() * m[2],
        nb.conj() * m[1] + nd.conj() * m[3],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tol::CLASSIFICATION_BAND;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unit_circle() -> Cline {
        Cline::circle(c(0.0, 0.0), 1.0).unwrap()
    }

    fn real_line() -> Cline {
        Cline::line(c(0.0, 0.0), c(1.0, 0.0)).unwrap()
    }

    #[test]
    fn circle_round_trips_center_and_radius() {
        let m = c(1.3, -0.4);
        let cl = Cline::circle(m, 0.75).unwrap();
        assert!((cl.center().unwrap() - m).norm() < 1e-12);
        assert!((cl.radius().unwrap() - 0.75).abs() < 1e-12);
        assert!(Cline::circle(m, 0.0).is_err());
        assert!(Cline::circle(m, -1.0).is_err());
    }

    #[test]
    fn canonical_form_has_unit_discriminant() {
        let cl = Cline::circle(c(2.0, 1.0), 3.0).unwrap();
        let disc = cl.b().norm_sqr() - cl.a() * cl.d();
        assert!((disc - 1.0).abs() < 1e-12);
        let ln = Cline::line(c(0.0, 1.0), c(1.0, 1.0)).unwrap();
        assert!((ln.b().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn line_through_i_and_one_plus_i_is_horizontal() {
        let ln = Cline::line(c(0.0, 1.0), c(1.0, 1.0)).unwrap();
        assert!(ln.is_line());
        for x in [-3.0, 0.0, 7.5] {
            assert!(ln.evaluate(c(x, 1.0)).abs() < 1e-12);
        }
        assert!(ln.evaluate(c(0.0, 0.0)).abs() > 0.1);
        assert!(Cline::line(c(0.0, 1.0), c(0.0, 1.0)).is_err());
    }

    #[test]
    fn reflection_in_unit_circle_is_inversion() {
        let tau = unit_circle().reflection();
        assert!(tau
            .apply(SpherePoint::finite(2.0, 0.0))
            .approx_eq(SpherePoint::finite(0.5, 0.0), 1e-14));
        assert!(tau
            .apply(SpherePoint::Infinity)
            .approx_eq(SpherePoint::finite(0.0, 0.0), 1e-14));
    }

    #[test]
    fn reflection_in_sixty_degree_line_is_w0_squared_conjugation() {
        let w0 = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
        let l2 = Cline::line(c(0.0, 0.0), w0).unwrap();
        let tau = l2.reflection();
        for z in [c(1.0, 0.0), c(-0.3, 0.8), c(2.0, -1.0)] {
            let expect = w0 * w0 * z.conj();
            assert!(tau.apply(z.into()).approx_eq(expect.into(), 1e-13));
        }
    }

    #[test]
    fn reflection_fixes_its_cline() {
        for cl in [
            unit_circle(),
            Cline::circle(c(-1.0, 2.0), 0.3).unwrap(),
            real_line(),
            Cline::line(c(1.0, 1.0), c(-2.0, 3.0)).unwrap(),
        ] {
            let tau = cl.reflection();
            for z in cl.sample_points(20) {
                assert!(tau.apply(z.into()).approx_eq(z.into(), 1e-10));
            }
            let sq = tau * tau;
            assert!(sq.projective_distance_to_identity() < 1e-12);
        }
    }

    #[test]
    fn image_of_unit_circle_under_inversion_is_itself() {
        let tau = unit_circle().reflection();
        let img = unit_circle().image_anti(&tau);
        assert!(img.approx_eq(&unit_circle(), 1e-12));
    }

    #[test]
    fn image_of_origin_circle_under_scaling() {
        let r = 0.4;
        let l3 = Cline::circle(c(0.0, 0.0), r).unwrap();
        let f = MoebiusMap::scaling(c(r * r, 0.0)).unwrap();
        let img = l3.image(&f);
        assert!(img.approx_eq(&Cline::circle(c(0.0, 0.0), 0.064).unwrap(), 1e-12));
    }

    #[test]
    fn image_matches_mapped_sample_points() {
        let cl = Cline::circle(c(0.7, -0.2), 1.9).unwrap();
        let f = MoebiusMap::new(c(1.0, 0.5), c(0.0, -1.0), c(0.3, 0.0), c(1.0, 0.0)).unwrap();
        let img = cl.image(&f);
        for z in cl.sample_points(10) {
            match f.apply(z.into()) {
                SpherePoint::Finite(w) => assert!(img.evaluate(w).abs() < 1e-9),
                SpherePoint::Infinity => {}
            }
        }
        let tau = Cline::circle(c(-0.4, 0.1), 0.8).unwrap().reflection();
        let img2 = cl.image_anti(&tau);
        for z in cl.sample_points(10) {
            match tau.apply(z.into()) {
                SpherePoint::Finite(w) => assert!(img2.evaluate(w).abs() < 1e-9),
                SpherePoint::Infinity => {}
            }
        }
    }

    #[test]
    fn concentric_circles_inversive_product() {
        for r in [0.2, 0.5, 0.9] {
            let inner = Cline::circle(c(0.0, 0.0), r).unwrap();
            let rel = inner.relate(&unit_circle(), CLASSIFICATION_BAND);
            assert_eq!(rel.kind, ClineRelationKind::Disjoint);
            let expect = (1.0 + r * r) / (2.0 * r);
            assert!((rel.inversive_product - expect).abs() < 1e-12);
            assert!(rel.inversive_distance.unwrap() > 0.0);
        }
    }

    #[test]
    fn line_through_circle_center_is_orthogonal() {
        let l3 = Cline::circle(c(0.0, 0.0), 0.37).unwrap();
        let rel = real_line().relate(&l3, CLASSIFICATION_BAND);
        match rel.kind {
            ClineRelationKind::Intersecting { angle } => {
                assert!((angle - std::f64::consts::FRAC_PI_2).abs() < 1e-12)
            }
            other => panic!("expected intersecting, got {other:?}"),
        }
    }

    #[test]
    fn equal_clines_detected_inside_band() {
        let rel = unit_circle().relate(&unit_circle(), CLASSIFICATION_BAND);
        assert_eq!(rel.kind, ClineRelationKind::Equal);
        assert!(rel.band_hit);
    }

    #[test]
    fn tangency_point_of_touching_circles() {
        let c1 = unit_circle();
        let c2 = Cline::circle(c(2.0, 0.0), 1.0).unwrap();
        let p = c1.tangency_point(&c2, 1e-9).unwrap();
        assert!(p.approx_eq(SpherePoint::finite(1.0, 0.0), 1e-12));
        // internal tangency
        let c3 = Cline::circle(c(0.5, 0.0), 0.5).unwrap();
        let q = c1.tangency_point(&c3, 1e-9).unwrap();
        assert!(q.approx_eq(SpherePoint::finite(1.0, 0.0), 1e-12));
    }

    #[test]
    fn parallel_lines_touch_at_infinity() {
        let l1 = real_line();
        let l2 = Cline::line(c(0.0, 1.0), c(1.0, 1.0)).unwrap();
        let p = l1.tangency_point(&l2, 1e-9).unwrap();
        assert!(p.is_infinity());
    }

    #[test]
    fn non_tangent_pair_is_an_error() {
        let c2 = Cline::circle(c(5.0, 0.0), 1.0).unwrap();
        assert!(matches!(
            unit_circle().tangency_point(&c2, 1e-9),
            Err(ClineError::NotTangent(_))
        ));
    }

    #[test]
    fn tangent_line_and_circle() {
        let circle = Cline::circle(c(0.0, 1.0), 1.0).unwrap();
        let rel = real_line().relate(&circle, CLASSIFICATION_BAND);
        assert_eq!(rel.kind, ClineRelationKind::Tangent);
        let p = real_line().tangency_point(&circle, 1e-9).unwrap();
        assert!(p.approx_eq(SpherePoint::finite(0.0, 0.0), 1e-12));
    }

    #[test]
    fn indefinite_coefficients_rejected() {
        assert!(Cline::from_coefficients(1.0, c(0.0, 0.0), 1.0).is_err());
    }
}
