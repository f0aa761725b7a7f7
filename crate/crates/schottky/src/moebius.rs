//! Conformal and anticonformal Möbius transformations on the Riemann sphere.
//!
//! A [`MoebiusMap`] is z ↦ (az+b)/(cz+d); an [`AntiMoebiusMap`] is
//! z ↦ (a·z̄+b)/(c·z̄+d). Both are stored as unnormalized coefficient
//! quadruples — two quadruples related by a nonzero complex scalar are the
//! same map, and every comparison normalizes on demand. Anticonformal maps
//! are a separate type so the parity algebra (reflection ∘ reflection =
//! conformal, and so on) is enforced by the `Mul` signatures.
//!
//! Composition is written multiplicatively with the right factor applied
//! first: `(f * g).apply(z) == f.apply(g.apply(z))`.

use num_complex::Complex64;
use std::fmt;
use std::ops::Mul;
use thiserror::Error;

use crate::tol;

/// A point of the Riemann sphere: a finite complex number or the point at
/// infinity. Infinity is a symbolic value, never a large float.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

impl SpherePoint {
    pub fn finite(re: f64, im: f64) -> Self {
        SpherePoint::Finite(Complex64::new(re, im))
    }

    pub fn is_infinity(self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }

    /// The finite value, if any.
    pub fn to_complex(self) -> Option<Complex64> {
        match self {
            SpherePoint::Finite(z) => Some(z),
            SpherePoint::Infinity => None,
        }
    }

    /// Equality within `tol`: finite points compare euclidean, infinity only
    /// matches infinity.
    pub fn approx_eq(self, other: SpherePoint, tol: f64) -> bool {
        match (self, other) {
            (SpherePoint::Finite(a), SpherePoint::Finite(b)) => (a - b).norm() <= tol,
            (SpherePoint::Infinity, SpherePoint::Infinity) => true,
            _ => false,
        }
    }
}

impl From<Complex64> for SpherePoint {
    fn from(z: Complex64) -> Self {
        SpherePoint::Finite(z)
    }
}

impl fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpherePoint::Finite(z) => write!(f, "{z}"),
            SpherePoint::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum MapError {
    /// ad − bc is zero relative to the coefficient scale.
    #[error("degenerate coefficient matrix: |ad - bc| below tolerance")]
    Degenerate,
    /// Fixed points of the identity are the whole sphere.
    #[error("identity map fixes every point")]
    IdentityFixedPoints,
}

/// Classification of a conformal map by its normalized trace squared.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Identity,
    Parabolic,
    Elliptic,
    Loxodromic,
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MapKind::Identity => "identity",
            MapKind::Parabolic => "parabolic",
            MapKind::Elliptic => "elliptic",
            MapKind::Loxodromic => "loxodromic",
        };
        write!(f, "{s}")
    }
}

/// Result of [`MoebiusMap::classify`]: the kind, the invariant t² it was
/// decided on, and a flag set when the decision came from inside the
/// parabolic tolerance band (ambiguous in floating point).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MapClass {
    pub kind: MapKind,
    pub trace_squared: Complex64,
    pub borderline: bool,
}

/// The one or two fixed points of a non-identity map.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FixedPoints {
    One(SpherePoint),
    Two(SpherePoint, SpherePoint),
}

impl FixedPoints {
    pub fn as_vec(self) -> Vec<SpherePoint> {
        match self {
            FixedPoints::One(a) => vec![a],
            FixedPoints::Two(a, b) => vec![a, b],
        }
    }
}

fn det(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    a * d - b * c
}

fn scale(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> f64 {
    a.norm().max(b.norm()).max(c.norm()).max(d.norm())
}

fn check_degeneracy(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
) -> Result<(), MapError> {
    let s = scale(a, b, c, d);
    if s == 0.0 || det(a, b, c, d).norm() <= tol::DEGENERACY_FLOOR * s * s {
        return Err(MapError::Degenerate);
    }
    Ok(())
}

/// z ↦ (az + b)/(cz + d) with ad − bc ≠ 0.
///
/// The determinant is carried alongside the coefficients and maintained
/// multiplicatively under composition: recomputing ad − bc from the
/// entries of a long word cancels catastrophically (the entries grow like
/// the word's multiplier while the determinant shrinks like the product of
/// letter determinants).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MoebiusMap {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
    det: Complex64,
}

/// z ↦ (a·z̄ + b)/(c·z̄ + d) with ad − bc ≠ 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AntiMoebiusMap {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
    det: Complex64,
}

impl MoebiusMap {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self, MapError> {
        check_degeneracy(a, b, c, d)?;
        Ok(MoebiusMap {
            a,
            b,
            c,
            d,
            det: det(a, b, c, d),
        })
    }

    pub fn identity() -> Self {
        MoebiusMap {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
            det: Complex64::new(1.0, 0.0),
        }
    }

    /// z ↦ kz, k ≠ 0.
    pub fn scaling(k: Complex64) -> Result<Self, MapError> {
        Self::new(
            k,
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        )
    }

    /// z ↦ z + t.
    pub fn translation(t: Complex64) -> Self {
        MoebiusMap {
            a: Complex64::new(1.0, 0.0),
            b: t,
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
            det: Complex64::new(1.0, 0.0),
        }
    }

    pub fn coefficients(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn determinant(&self) -> Complex64 {
        self.det
    }

    pub fn apply(&self, z: SpherePoint) -> SpherePoint {
        match z {
            SpherePoint::Infinity => {
                if self.c.norm() == 0.0 {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::Finite(self.a / self.c)
                }
            }
            SpherePoint::Finite(z) => {
                let den = self.c * z + self.d;
                if den.norm() == 0.0 {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::Finite((self.a * z + self.b) / den)
                }
            }
        }
    }

    pub fn inverse(&self) -> Self {
        // the adjugate represents the inverse projectively and has the
        // same determinant
        MoebiusMap {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
            det: self.det,
        }
    }

    /// tr(M)²/det(M): invariant under rescaling and conjugation.
    pub fn normalized_trace_squared(&self) -> Complex64 {
        let tr = self.a + self.d;
        tr * tr / self.det
    }

    /// The matrix scaled to determinant 1 (one of the two lifts).
    fn unit_det(&self) -> [Complex64; 4] {
        let s = self.determinant().sqrt();
        [self.a / s, self.b / s, self.c / s, self.d / s]
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        let s = scale(self.a, self.b, self.c, self.d);
        self.b.norm() <= tol * s && self.c.norm() <= tol * s && (self.a - self.d).norm() <= tol * s
    }

    /// Classify against the parabolic band `tol`. Band hits resolve to
    /// parabolic with `borderline` set.
    pub fn classify(&self, tol: f64) -> MapClass {
        let t2 = self.normalized_trace_squared();
        if self.is_identity(tol::IDENTITY_BAND) {
            return MapClass {
                kind: MapKind::Identity,
                trace_squared: t2,
                borderline: false,
            };
        }
        let four = Complex64::new(4.0, 0.0);
        if (t2 - four).norm() < tol {
            return MapClass {
                kind: MapKind::Parabolic,
                trace_squared: t2,
                borderline: true,
            };
        }
        if t2.im.abs() < tol && t2.re > -tol && t2.re < 4.0 {
            return MapClass {
                kind: MapKind::Elliptic,
                trace_squared: t2,
                borderline: false,
            };
        }
        MapClass {
            kind: MapKind::Loxodromic,
            trace_squared: t2,
            borderline: false,
        }
    }

    /// The two roots ((a−d) ± √(t²−4))/(2c) of cz² + (d−a)z − b = 0 on a
    /// determinant-1 lift, ordered so the first belongs to the eigenvalue
    /// of larger modulus. The sign of the square root is aligned with the
    /// trace and the second root is recovered from the product −b/c, which
    /// stays accurate when the subtraction would cancel.
    fn stable_roots(&self) -> (Complex64, Complex64, Complex64) {
        let [a, b, c, d] = self.unit_det();
        let t = a + d;
        let mut sq = (t * t - Complex64::new(4.0, 0.0)).sqrt();
        if (t + sq).norm() < (t - sq).norm() {
            sq = -sq;
        }
        let num = (a - d) + sq;
        let z_plus = num / (2.0 * c);
        let z_minus = if num.norm() > 0.0 {
            -2.0 * b / num
        } else {
            // a = d and t² = 4: degenerate toward a double root at 0
            Complex64::new(0.0, 0.0)
        };
        (z_plus, z_minus, sq)
    }

    /// Roots of cz² + (d−a)z − b = 0 on the sphere; a single point exactly
    /// when the map is parabolic (within the classification band).
    pub fn fixed_points(&self) -> Result<FixedPoints, MapError> {
        if self.is_identity(tol::IDENTITY_BAND) {
            return Err(MapError::IdentityFixedPoints);
        }
        let [a, b, c, d] = self.unit_det();
        let parabolic = {
            let tr = a + d;
            (tr * tr - Complex64::new(4.0, 0.0)).norm() < tol::CLASSIFICATION_BAND
        };
        let s = scale(a, b, c, d);
        if c.norm() <= tol::DEGENERACY_FLOOR * s {
            // affine: z ↦ (a/d) z + b/d
            if parabolic {
                return Ok(FixedPoints::One(SpherePoint::Infinity));
            }
            return Ok(FixedPoints::Two(
                SpherePoint::Finite(b / (d - a)),
                SpherePoint::Infinity,
            ));
        }
        if parabolic {
            return Ok(FixedPoints::One(SpherePoint::Finite((a - d) / (2.0 * c))));
        }
        let (z_plus, z_minus, _) = self.stable_roots();
        Ok(FixedPoints::Two(
            SpherePoint::Finite(z_plus),
            SpherePoint::Finite(z_minus),
        ))
    }

    /// Fixed point with derivative of modulus < 1, for loxodromic maps.
    ///
    /// On a determinant-1 lift the multiplier at the fixed point belonging
    /// to eigenvalue μ is 1/μ², so the attracting point is the one for the
    /// eigenvalue of larger modulus.
    pub fn attracting_fixed_point(&self) -> Option<SpherePoint> {
        if self.classify(tol::CLASSIFICATION_BAND).kind != MapKind::Loxodromic {
            return None;
        }
        let [a, _b, c, d] = self.unit_det();
        let s = scale(a, _b, c, d);
        if c.norm() <= tol::DEGENERACY_FLOOR * s {
            // eigenvalues are a and d; infinity belongs to a
            return Some(if a.norm() > d.norm() {
                SpherePoint::Infinity
            } else {
                self.fixed_points().ok().and_then(|f| match f {
                    FixedPoints::Two(p, _) => Some(p),
                    FixedPoints::One(_) => None,
                })?
            });
        }
        let (z_plus, _, _) = self.stable_roots();
        Some(SpherePoint::Finite(z_plus))
    }

    /// Hyperbolic translation length 2·Re(acosh(t/2)), t the square root of
    /// t² with Re t ≥ 0. Zero for elliptic, parabolic, and identity maps.
    pub fn translation_length(&self) -> f64 {
        let t = self.normalized_trace_squared().sqrt();
        let l = 2.0 * (t / 2.0).acosh().re;
        l.max(0.0)
    }

    /// Minimum over the two unit-determinant lifts of the root-sum-square
    /// coefficient distance to the identity matrix.
    pub fn projective_distance_to_identity(&self) -> f64 {
        self.projective_distance(&MoebiusMap::identity())
    }

    /// Projective distance between two maps: both are normalized to
    /// determinant 1 and compared over the ± lift ambiguity.
    pub fn projective_distance(&self, other: &MoebiusMap) -> f64 {
        let u = self.unit_det();
        let v = other.unit_det();
        let norm = |sign: f64| -> f64 {
            u.iter()
                .zip(v.iter())
                .map(|(x, y)| (x - sign * y).norm_sqr())
                .sum::<f64>()
                .sqrt()
        };
        norm(1.0).min(norm(-1.0))
    }
}

impl AntiMoebiusMap {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self, MapError> {
        check_degeneracy(a, b, c, d)?;
        Ok(AntiMoebiusMap {
            a,
            b,
            c,
            d,
            det: det(a, b, c, d),
        })
    }

    /// z ↦ z̄.
    pub fn conjugation() -> Self {
        AntiMoebiusMap {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
            det: Complex64::new(1.0, 0.0),
        }
    }

    pub fn coefficients(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn determinant(&self) -> Complex64 {
        self.det
    }

    pub fn apply(&self, z: SpherePoint) -> SpherePoint {
        let conj = match z {
            SpherePoint::Finite(z) => SpherePoint::Finite(z.conj()),
            SpherePoint::Infinity => SpherePoint::Infinity,
        };
        MoebiusMap {
            a: self.a,
            b: self.b,
            c: self.c,
            d: self.d,
            det: self.det,
        }
        .apply(conj)
    }

    pub fn inverse(&self) -> Self {
        // (a z̄ + b)/(c z̄ + d) inverted: z ↦ conj((dw − b)/(−cw + a))
        AntiMoebiusMap {
            a: self.d.conj(),
            b: -self.b.conj(),
            c: -self.c.conj(),
            d: self.a.conj(),
            det: self.det.conj(),
        }
    }
}

// f * g is f ∘ g: g applied first. Anticonformal right factors contribute
// conjugated coefficients, which is exactly the parity bookkeeping; the
// carried determinants multiply (conjugated along with the matrix).
impl Mul for MoebiusMap {
    type Output = MoebiusMap;
    fn mul(self, g: MoebiusMap) -> MoebiusMap {
        MoebiusMap {
            a: self.a * g.a + self.b * g.c,
            b: self.a * g.b + self.b * g.d,
            c: self.c * g.a + self.d * g.c,
            d: self.c * g.b + self.d * g.d,
            det: self.det * g.det,
        }
    }
}

impl Mul<AntiMoebiusMap> for MoebiusMap {
    type Output = AntiMoebiusMap;
    fn mul(self, g: AntiMoebiusMap) -> AntiMoebiusMap {
        AntiMoebiusMap {
            a: self.a * g.a + self.b * g.c,
            b: self.a * g.b + self.b * g.d,
            c: self.c * g.a + self.d * g.c,
            d: self.c * g.b + self.d * g.d,
            det: self.det * g.det,
        }
    }
}

impl Mul<MoebiusMap> for AntiMoebiusMap {
    type Output = AntiMoebiusMap;
    fn mul(self, g: MoebiusMap) -> AntiMoebiusMap {
        let (ga, gb, gc, gd) = (g.a.conj(), g.b.conj(), g.c.conj(), g.d.conj());
        AntiMoebiusMap {
            a: self.a * ga + self.b * gc,
            b: self.a * gb + self.b * gd,
            c: self.c * ga + self.d * gc,
            d: self.c * gb + self.d * gd,
            det: self.det * g.det.conj(),
        }
    }
}

impl Mul for AntiMoebiusMap {
    type Output = MoebiusMap;
    fn mul(self, g: AntiMoebiusMap) -> MoebiusMap {
        let (ga, gb, gc, gd) = (g.a.conj(), g.b.conj(), g.c.conj(), g.d.conj());
        MoebiusMap {
            a: self.a * ga + self.b * gc,
            b: self.a * gb + self.b * gd,
            c: self.c * ga + self.d * gc,
            d: self.c * gb + self.d * gd,
            det: self.det * g.det.conj(),
        }
    }
}
