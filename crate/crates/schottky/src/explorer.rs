//! Group-level exploration: freeness and discreteness screens and
//! limit-set sampling by attracting fixed points of reduced words.

use num_complex::Complex64;
use rayon::prelude::*;
use std::collections::HashMap;

use crate::family::GeneratorTriple;
use crate::moebius::{MapClass, MapKind, MoebiusMap, SpherePoint};
use crate::tol;
use crate::words::{scan_subtree, scan_words, Letter, LetterMaps, ReducedWord, ALPHABET};

/// Whether multi-core fan-out is used; results are identical either way.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    Parallel,
}

/// Result of scanning all nontrivial reduced words up to a length for
/// near-identity returns and non-loxodromic elements.
#[derive(Clone, Debug)]
pub struct FreenessReport {
    /// Smallest projective distance to the identity seen.
    pub min_distance: f64,
    /// The word attaining it.
    pub argmin: ReducedWord,
    /// Words that classified as something other than loxodromic.
    pub non_loxodromic: Vec<(ReducedWord, MapClass)>,
    pub words_scanned: usize,
}

/// Scan all nontrivial reduced words of length ≤ `max_len`. A small
/// minimum distance is evidence against freeness/discreteness at the given
/// parameters; non-loxodromic words must be empty at interior parameters.
pub fn freeness_screen(gens: &GeneratorTriple, max_len: usize, tol: f64) -> FreenessReport {
    let maps = gens.letter_maps();
    let mut min_distance = f64::INFINITY;
    let mut argmin = ReducedWord::identity();
    let mut non_loxodromic = Vec::new();
    let mut words_scanned = 0usize;
    scan_words(&maps, max_len, &mut |letters, m| {
        words_scanned += 1;
        let d = m.projective_distance_to_identity();
        if d < min_distance {
            min_distance = d;
            argmin =
                ReducedWord::from_letters(&letters.iter().map(|l| l.value()).collect::<Vec<_>>())
                    .expect("scan yields reduced words");
        }
        let class = m.classify(tol);
        if class.kind != MapKind::Loxodromic {
            non_loxodromic.push((
                ReducedWord::from_letters(&letters.iter().map(|l| l.value()).collect::<Vec<_>>())
                    .expect("scan yields reduced words"),
                class,
            ));
        }
    });
    FreenessReport {
        min_distance,
        argmin,
        non_loxodromic,
        words_scanned,
    }
}

/// One two-generator subgroup test.
#[derive(Clone, Debug)]
pub struct JorgensenRow {
    pub x: ReducedWord,
    pub y: ReducedWord,
    /// |t²(X) − 4| + |tr(XYX⁻¹Y⁻¹) − 2| on determinant-1 lifts.
    pub value: f64,
    /// The pair shares its fixed-point set, so the inequality does not apply.
    pub elementary: bool,
    /// value < 1 on a non-elementary pair: discreteness-suspicious.
    pub flagged: bool,
}

/// Evaluate the two-generator trace inequality over all ordered pairs of
/// distinct nontrivial words of length ≤ `max_len`. The inequality is a
/// necessary condition for a discrete non-elementary pair, so flags are
/// suppressed on elementary pairs (shared fixed-point sets).
pub fn jorgensen_screen(gens: &GeneratorTriple, max_len: usize) -> Vec<JorgensenRow> {
    let maps = gens.letter_maps();
    let mut words: Vec<(ReducedWord, MoebiusMap)> = Vec::new();
    scan_words(&maps, max_len, &mut |letters, m| {
        words.push((
            ReducedWord::from_letters(&letters.iter().map(|l| l.value()).collect::<Vec<_>>())
                .expect("reduced"),
            *m,
        ));
    });
    let mut rows = Vec::new();
    for (i, (wx, mx)) in words.iter().enumerate() {
        for (j, (wy, my)) in words.iter().enumerate() {
            if i == j {
                continue;
            }
            let elementary = same_fixed_set(mx, my);
            let value = jorgensen_value(mx, my);
            rows.push(JorgensenRow {
                x: wx.clone(),
                y: wy.clone(),
                value,
                elementary,
                flagged: !elementary && value < 1.0,
            });
        }
    }
    rows
}

/// |t²(X) − 4| + |tr(XYX⁻¹Y⁻¹) − 2| with determinant-1 normalization.
pub fn jorgensen_value(x: &MoebiusMap, y: &MoebiusMap) -> f64 {
    let t2 = x.normalized_trace_squared();
    let comm = *x * *y * x.inverse() * y.inverse();
    // the commutator of unit-det lifts has det 1 and a sign-free trace
    let [a, _, _, d] = comm.coefficients();
    let tr = (a + d) / comm.determinant().sqrt();
    (t2 - Complex64::new(4.0, 0.0)).norm() + (tr - Complex64::new(2.0, 0.0)).norm()
}

fn same_fixed_set(x: &MoebiusMap, y: &MoebiusMap) -> bool {
    let (Ok(fx), Ok(fy)) = (x.fixed_points(), y.fixed_points()) else {
        return true; // an identity factor makes the pair elementary
    };
    let fx = fx.as_vec();
    let fy = fy.as_vec();
    if fx.len() != fy.len() {
        return false;
    }
    let matches = |a: SpherePoint, b: SpherePoint| a.approx_eq(b, 1e-9);
    match fx.len() {
        1 => matches(fx[0], fy[0]),
        _ => {
            (matches(fx[0], fy[0]) && matches(fx[1], fy[1]))
                || (matches(fx[0], fy[1]) && matches(fx[1], fy[0]))
        }
    }
}

/// One sampled limit point and the word that produced it.
#[derive(Clone, Debug)]
pub struct LimitPoint {
    pub point: SpherePoint,
    pub word: ReducedWord,
}

/// Attracting fixed points of loxodromic words up to a depth.
#[derive(Clone, Debug)]
pub struct LimitSetSample {
    pub points: Vec<LimitPoint>,
    pub depth: usize,
    pub budget: usize,
    pub seed: u64,
    /// The word stream was cut off by the budget.
    pub truncated: bool,
    /// Words whose maps were evaluated.
    pub evaluated: usize,
    /// Words skipped because they were not (safely) loxodromic: fixed-point
    /// extraction is ill-conditioned inside the parabolic band.
    pub skipped_non_loxodromic: usize,
}

fn grid_key(p: SpherePoint) -> (i64, i64, bool) {
    match p {
        SpherePoint::Finite(z) => (
            (z.re / tol::DEDUP_GRID).round() as i64,
            (z.im / tol::DEDUP_GRID).round() as i64,
            false,
        ),
        SpherePoint::Infinity => (0, 0, true),
    }
}

struct SubtreeOutcome {
    points: Vec<(usize, LimitPoint)>, // (visit index within subtree, point)
    evaluated: usize,
    skipped: usize,
    truncated: bool,
}

fn sample_subtree(maps: &LetterMaps, depth: usize, first: Letter, budget: usize) -> SubtreeOutcome {
    let mut out = SubtreeOutcome {
        points: Vec::new(),
        evaluated: 0,
        skipped: 0,
        truncated: false,
    };
    scan_subtree(maps, depth, first, &mut |letters, m| {
        if out.evaluated >= budget {
            out.truncated = true;
            return;
        }
        out.evaluated += 1;
        let class = m.classify(tol::CLASSIFICATION_BAND);
        if class.kind != MapKind::Loxodromic {
            out.skipped += 1;
            return;
        }
        if let Some(fp) = m.attracting_fixed_point() {
            let word =
                ReducedWord::from_letters(&letters.iter().map(|l| l.value()).collect::<Vec<_>>())
                    .expect("reduced");
            out.points
                .push((out.evaluated, LimitPoint { point: fp, word }));
        } else {
            out.skipped += 1;
        }
    });
    out
}

/// Sample the limit set: attracting fixed points of all loxodromic reduced
/// words of length ≤ `depth`, each evaluated at most once, deduplicated on
/// a grid of `tol::DEDUP_GRID`. The `budget` caps the number of words
/// evaluated per first-letter subtree; exhausting it yields a partial
/// sample with `truncated` set. Output is independent of `parallelism`
/// (subtrees merge in alphabet order) and of `seed`, which is recorded for
/// provenance in downstream artifacts.
pub fn limit_set_sample(
    gens: &GeneratorTriple,
    depth: usize,
    budget: usize,
    seed: u64,
    parallelism: Parallelism,
) -> LimitSetSample {
    let maps = gens.letter_maps();
    let per_subtree = budget / ALPHABET.len().max(1);
    let outcomes: Vec<SubtreeOutcome> = match parallelism {
        Parallelism::Sequential => ALPHABET
            .iter()
            .map(|&first| sample_subtree(&maps, depth, first, per_subtree))
            .collect(),
        Parallelism::Parallel => ALPHABET
            .par_iter()
            .map(|&first| sample_subtree(&maps, depth, first, per_subtree))
            .collect(),
    };
    let mut seen: HashMap<(i64, i64, bool), ()> = HashMap::new();
    let mut points = Vec::new();
    let mut evaluated = 0;
    let mut skipped = 0;
    let mut truncated = false;
    for outcome in outcomes {
        evaluated += outcome.evaluated;
        skipped += outcome.skipped;
        truncated |= outcome.truncated;
        for (_, lp) in outcome.points {
            if seen.insert(grid_key(lp.point), ()).is_none() {
                points.push(lp);
            }
        }
    }
    LimitSetSample {
        points,
        depth,
        budget,
        seed,
        truncated,
        evaluated,
        skipped_non_loxodromic: skipped,
    }
}
