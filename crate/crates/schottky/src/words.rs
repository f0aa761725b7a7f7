//! Reduced words in a rank-3 free group and their evaluation as maps.
//!
//! Letters are the six symbols A₁^{±1}, A₂^{±1}, A₃^{±1}, encoded ±1, ±2,
//! ±3. Enumeration is in shortlex order over the fixed alphabet order
//! A₁ < A₁⁻¹ < A₂ < A₂⁻¹ < A₃ < A₃⁻¹, so every stream is deterministic.

use std::fmt;
use thiserror::Error;

use crate::moebius::MoebiusMap;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("letter {0} is not one of ±1, ±2, ±3")]
    InvalidLetter(i8),
    #[error("word is not freely reduced at position {0}")]
    NotReduced(usize),
    #[error("enumeration of {required} words exceeds the cap of {cap}")]
    BudgetExceeded { required: u128, cap: u128 },
}

/// One of the six generator symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter(i8);

/// The alphabet in shortlex order.
pub const ALPHABET: [Letter; 6] = [
    Letter(1),
    Letter(-1),
    Letter(2),
    Letter(-2),
    Letter(3),
    Letter(-3),
];

impl Letter {
    pub fn new(v: i8) -> Result<Self, WordError> {
        if v == 0 || v.abs() > 3 {
            return Err(WordError::InvalidLetter(v));
        }
        Ok(Letter(v))
    }

    pub fn value(self) -> i8 {
        self.0
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.0 == -other.0
    }

    /// Position in the shortlex alphabet.
    pub fn rank(self) -> usize {
        let g = (self.0.abs() - 1) as usize;
        2 * g + usize::from(self.0 < 0)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 > 0 {
            write!(f, "A{}", self.0)
        } else {
            write!(f, "A{}^-1", -self.0)
        }
    }
}

/// A freely reduced word; the empty word is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedWord(Vec<Letter>);

impl ReducedWord {
    pub fn identity() -> Self {
        ReducedWord(Vec::new())
    }

    /// Build from letters, rejecting adjacent inverse pairs.
    pub fn from_letters(values: &[i8]) -> Result<Self, WordError> {
        let mut letters = Vec::with_capacity(values.len());
        for &v in values {
            letters.push(Letter::new(v)?);
        }
        for (i, pair) in letters.windows(2).enumerate() {
            if pair[0].is_inverse_of(pair[1]) {
                return Err(WordError::NotReduced(i));
            }
        }
        Ok(ReducedWord(letters))
    }

    /// Free reduction of an arbitrary letter string.
    pub fn reduce(values: &[i8]) -> Result<Self, WordError> {
        let mut stack: Vec<Letter> = Vec::with_capacity(values.len());
        for &v in values {
            let l = Letter::new(v)?;
            if stack.last().is_some_and(|top| top.is_inverse_of(l)) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Ok(ReducedWord(stack))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn inverse(&self) -> ReducedWord {
        ReducedWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Group-element evaluation: the product of the letter maps, rightmost
    /// letter applied first.
    pub fn evaluate(&self, maps: &LetterMaps) -> MoebiusMap {
        self.0
            .iter()
            .fold(MoebiusMap::identity(), |acc, &l| acc * *maps.get(l))
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// The six letter maps of a marked group, indexed by shortlex rank.
#[derive(Clone, Debug)]
pub struct LetterMaps([MoebiusMap; 6]);

impl LetterMaps {
    pub fn new(a1: MoebiusMap, a2: MoebiusMap, a3: MoebiusMap) -> Self {
        LetterMaps([a1, a1.inverse(), a2, a2.inverse(), a3, a3.inverse()])
    }

    pub fn get(&self, l: Letter) -> &MoebiusMap {
        &self.0[l.rank()]
    }
}

/// 1 + Σ_{n=1..max_len} 6·5^(n−1).
pub fn reduced_word_count(max_len: usize) -> u128 {
    let mut total: u128 = 1;
    let mut level: u128 = 6;
    for _ in 1..=max_len {
        total += level;
        level *= 5;
    }
    total
}

/// All reduced words of length ≤ `max_len` in shortlex order, refusing to
/// materialize more than `cap` words.
pub fn enumerate_reduced_words(max_len: usize, cap: u128) -> Result<Vec<ReducedWord>, WordError> {
    let required = reduced_word_count(max_len);
    if required > cap {
        return Err(WordError::BudgetExceeded { required, cap });
    }
    let mut out = vec![ReducedWord::identity()];
    let mut level: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 1..=max_len {
        let mut next = Vec::with_capacity(level.len() * 5);
        for word in &level {
            for &l in ALPHABET.iter() {
                if word.last().is_some_and(|top| top.is_inverse_of(l)) {
                    continue;
                }
                let mut w = word.clone();
                w.push(l);
                next.push(w);
            }
        }
        out.extend(next.iter().cloned().map(ReducedWord));
        level = next;
    }
    Ok(out)
}

/// Depth-first scan over all nontrivial reduced words of length ≤
/// `max_len`, calling `visit` with each word (as letters) and its map.
/// Matrices are built incrementally; traversal order is shortlex within
/// each subtree, subtrees in alphabet order (depth-first, so the overall
/// order is *not* shortlex — callers needing shortlex order merge levels
/// themselves or use [`enumerate_reduced_words`]).
pub fn scan_words<F>(maps: &LetterMaps, max_len: usize, visit: &mut F)
where
    F: FnMut(&[Letter], &MoebiusMap),
{
    if max_len == 0 {
        return;
    }
    let mut prefix: Vec<Letter> = Vec::with_capacity(max_len);
    let mut stack: Vec<MoebiusMap> = Vec::with_capacity(max_len + 1);
    stack.push(MoebiusMap::identity());
    for &l in ALPHABET.iter() {
        descend(maps, max_len, &mut prefix, &mut stack, l, visit);
    }
}

/// Scan a single first-letter subtree; used for deterministic parallel
/// fan-out across the six subtrees.
pub fn scan_subtree<F>(maps: &LetterMaps, max_len: usize, first: Letter, visit: &mut F)
where
    F: FnMut(&[Letter], &MoebiusMap),
{
    if max_len == 0 {
        return;
    }
    let mut prefix: Vec<Letter> = Vec::with_capacity(max_len);
    let mut stack: Vec<MoebiusMap> = Vec::with_capacity(max_len + 1);
    stack.push(MoebiusMap::identity());
    descend(maps, max_len, &mut prefix, &mut stack, first, visit);
}

fn descend<F>(
    maps: &LetterMaps,
    max_len: usize,
    prefix: &mut Vec<Letter>,
    stack: &mut Vec<MoebiusMap>,
    letter: Letter,
    visit: &mut F,
) where
    F: FnMut(&[Letter], &MoebiusMap),
{
    let m = *stack.last().unwrap() * *maps.get(letter);
    prefix.push(letter);
    stack.push(m);
    visit(prefix, stack.last().unwrap());
    if prefix.len() < max_len {
        for &l in ALPHABET.iter() {
            if l.is_inverse_of(letter) {
                continue;
            }
            descend(maps, max_len, prefix, stack, l, visit);
        }
    }
    prefix.pop();
    stack.pop();
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn counts_match_formula() {
        assert_eq!(reduced_word_count(0), 1);
        assert_eq!(reduced_word_count(1), 7);
        assert_eq!(reduced_word_count(3), 187);
        assert_eq!(reduced_word_count(6), 23_437);
    }

    #[test]
    fn enumeration_matches_naive_filter() {
        // oracle: all 6^n letter strings with a naive adjacent-inverse filter
        let naive = |max_len: usize| -> Vec<Vec<i8>> {
            let mut out = vec![vec![]];
            let letters = [1i8, -1, 2, -2, 3, -3];
            let mut level: Vec<Vec<i8>> = vec![vec![]];
            for _ in 1..=max_len {
                let mut next = Vec::new();
                for w in &level {
                    for &l in &letters {
                        let mut v = w.clone();
                        v.push(l);
                        if v.windows(2).all(|pair| pair[0] != -pair[1]) {
                            next.push(v);
                        }
                    }
                }
                out.extend(next.iter().cloned());
                level = next;
            }
            out
        };
        for max_len in 0..=4 {
            let ours = enumerate_reduced_words(max_len, 1 << 30).unwrap();
            let naive_words = naive(max_len);
            assert_eq!(ours.len(), naive_words.len());
            assert_eq!(ours.len() as u128, reduced_word_count(max_len));
            for (a, b) in ours.iter().zip(naive_words.iter()) {
                let vals: Vec<i8> = a.letters().iter().map(|l| l.value()).collect();
                assert_eq!(&vals, b);
            }
        }
    }

    #[test]
    fn budget_cap_is_enforced() {
        assert!(matches!(
            enumerate_reduced_words(6, 100),
            Err(WordError::BudgetExceeded {
                required: 23_437,
                cap: 100
            })
        ));
    }

    #[test]
    fn reduction_and_inverse() {
        let w = ReducedWord::reduce(&[1, 2, -2, 1, 3]).unwrap();
        assert_eq!(
            w.letters().iter().map(|l| l.value()).collect::<Vec<_>>(),
            vec![1, 1, 3]
        );
        let inv = w.inverse();
        assert_eq!(
            inv.letters().iter().map(|l| l.value()).collect::<Vec<_>>(),
            vec![-3, -1, -1]
        );
        assert!(ReducedWord::from_letters(&[1, -1]).is_err());
        assert!(ReducedWord::from_letters(&[4]).is_err());
        assert_eq!(
            ReducedWord::reduce(&[1, -1]).unwrap(),
            ReducedWord::identity()
        );
    }

    #[test]
    fn evaluation_order_is_rightmost_first() {
        // a1: z+1, a3: 4z; word A1 A3 must send z to 4z+1
        let a1 = MoebiusMap::translation(Complex64::new(1.0, 0.0));
        let a3 = MoebiusMap::scaling(Complex64::new(4.0, 0.0)).unwrap();
        let maps = LetterMaps::new(a1, a1, a3);
        let w = ReducedWord::from_letters(&[1, 3]).unwrap();
        let m = w.evaluate(&maps);
        let got = m.apply(crate::moebius::SpherePoint::finite(1.0, 0.0));
        assert!(got.approx_eq(crate::moebius::SpherePoint::finite(5.0, 0.0), 1e-14));
    }

    #[test]
    fn scan_visits_every_word_once() {
        let a = MoebiusMap::translation(Complex64::new(1.0, 0.0));
        let maps = LetterMaps::new(a, a, a);
        let mut seen = std::collections::HashSet::new();
        let mut count = 0usize;
        scan_words(&maps, 4, &mut |letters, _| {
            count += 1;
            seen.insert(letters.iter().map(|l| l.value()).collect::<Vec<_>>());
        });
        assert_eq!(count as u128, reduced_word_count(4) - 1);
        assert_eq!(seen.len(), count);
    }

    #[test]
    fn display_forms() {
        assert_eq!(ReducedWord::identity().to_string(), "e");
        let w = ReducedWord::from_letters(&[-2, -3, 2, 3]).unwrap();
        assert_eq!(w.to_string(), "A2^-1 A3^-1 A2 A3");
    }
}
