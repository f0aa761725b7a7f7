//! Central tolerance policy.
//!
//! All geometric and group-theoretic predicates in this crate classify
//! against these bands unless a caller passes an explicit override. The
//! quantities involved are algebraic and well-conditioned at desk scale,
//! so the defaults are tight.

/// Band for trace-based classification: |t² − 4| below this is parabolic,
/// and tangency of clines is |δ| within this of 1.
pub const CLASSIFICATION_BAND: f64 = 1e-9;

/// Band for treating a map as the identity (projective coefficient distance).
pub const IDENTITY_BAND: f64 = 1e-12;

/// Grid size for merging nearby limit-set points, per real coordinate.
pub const DEDUP_GRID: f64 = 1e-9;

/// Relative determinant floor below which a coefficient matrix is rejected
/// as degenerate.
pub const DEGENERACY_FLOOR: f64 = 1e-12;

/// Chordal distance between two points of the Riemann sphere, both finite.
///
/// Used wherever two floating-point values of a sphere-valued invariant
/// (normalized trace squared) are compared for equality: absolute
/// comparison is meaningless once the invariant grows past ~1e8.
pub fn chordal(u: num_complex::Complex64, v: num_complex::Complex64) -> f64 {
    let num = 2.0 * (u - v).norm();
    let den = ((1.0 + u.norm_sqr()) * (1.0 + v.norm_sqr())).sqrt();
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn chordal_small_values_match_euclidean() {
        let u = Complex64::new(4.0, 0.0);
        let v = Complex64::new(4.0 + 1e-6, 0.0);
        // near t² = 4 the chordal metric is the euclidean one over (1+16) = 17
        assert!((chordal(u, v) - 2.0 * 1e-6 / 17.0).abs() < 1e-12);
    }

    #[test]
    fn chordal_huge_values_are_close_on_sphere() {
        let u = Complex64::new(1e13, 0.0);
        let v = Complex64::new(1e13 + 1e4, 0.0);
        assert!(chordal(u, v) < 1e-9);
    }
}
