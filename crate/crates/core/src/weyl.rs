//! Type-A Weyl group combinatorics.
//!
//! The symmetric group `S_n` is generated by the adjacent transpositions
//! `s_1, ..., s_{n-1}`. This module provides permutations in one-line
//! notation, reduced words, the Bruhat order, projection to minimal-length
//! parabolic coset representatives, and the subword machinery used to
//! assemble fans of toric Schubert varieties.
//!
//! Products of generators compose with the *rightmost* factor applied
//! first, so `s_1 s_2` in `S_4` is the one-line permutation `2314`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use thiserror::Error;

/// Errors from Weyl group operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    /// A word letter falls outside `1..=n-1`.
    #[error("letter {letter} out of range 1..={max} for rank {n}", max = .n.saturating_sub(1))]
    InvalidLetter { letter: usize, n: usize },
    /// A descent position falls outside `1..=n-1`.
    #[error("descent position {d} out of range 1..={max} for rank {n}", max = .n.saturating_sub(1))]
    InvalidDescent { d: usize, n: usize },
    /// The word has more letters than the inversion count of its product.
    #[error("word is not reduced")]
    NotReduced,
    /// An operation requiring pairwise-distinct letters received a repeat.
    #[error("word letters are not pairwise distinct")]
    NotDistinctWord,
    /// Parameters `(d, a, b)` do not describe a hook class.
    #[error("invalid hook class parameters d={d}, a={a}, b={b}")]
    InvalidHookParams { d: usize, a: usize, b: usize },
    /// A one-line sequence is not a bijection on `{1,...,n}`.
    #[error("invalid one-line notation: {0}")]
    InvalidOneLine(String),
}

/// A permutation of `{1,...,n}` in one-line notation: `one_line[i-1] = w(i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    one_line: Vec<usize>,
}

impl Permutation {
    /// The identity of `S_n`.
    pub fn identity(n: usize) -> Self {
        Permutation {
            one_line: (1..=n).collect(),
        }
    }

    /// Builds a permutation from one-line notation, validating that the
    /// entries are a bijection on `{1,...,n}`.
    pub fn from_one_line(one_line: Vec<usize>) -> Result<Self, WeylError> {
        let n = one_line.len();
        let mut seen = vec![false; n];
        for &v in &one_line {
            if v < 1 || v > n || seen[v - 1] {
                return Err(WeylError::InvalidOneLine(format!("{one_line:?}")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { one_line })
    }

    pub fn n(&self) -> usize {
        self.one_line.len()
    }

    /// The image `w(i)` for a 1-based position `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.one_line[i - 1]
    }

    pub fn one_line(&self) -> &[usize] {
        &self.one_line
    }

    pub fn is_identity(&self) -> bool {
        self.one_line.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Coxeter length: the number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.one_line;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Right multiplication by a simple reflection: `w * s_i` swaps the
    /// entries at positions `i` and `i+1`.
    pub fn times_simple(&self, i: usize) -> Self {
        debug_assert!(i >= 1 && i < self.n());
        let mut one_line = self.one_line.clone();
        one_line.swap(i - 1, i);
        Permutation { one_line }
    }

    /// Positions `i` with `w(i) > w(i+1)`.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.n())
            .filter(|&i| self.one_line[i - 1] > self.one_line[i])
            .collect()
    }

    /// Whether `w` is Grassmannian at `d`: increasing on `1..=d` and on
    /// `d+1..=n`. The identity qualifies for every `d`.
    pub fn is_grassmannian(&self, d: usize) -> Result<bool, WeylError> {
        let n = self.n();
        if d < 1 || d >= n {
            return Err(WeylError::InvalidDescent { d, n });
        }
        Ok(self.descents().iter().all(|&i| i == d))
    }

    /// The minimal-length representative of `w W_{P_d}`: sorts the blocks
    /// `1..=d` and `d+1..=n` of the one-line notation ascending.
    pub fn min_coset_rep(&self, d: usize) -> Result<Permutation, WeylError> {
        let n = self.n();
        if d < 1 || d >= n {
            return Err(WeylError::InvalidDescent { d, n });
        }
        let mut one_line = self.one_line.clone();
        one_line[..d].sort_unstable();
        one_line[d..].sort_unstable();
        Ok(Permutation { one_line })
    }

    /// Bruhat order via the sorted-prefix (Ehresmann) criterion:
    /// `u <= w` iff for every `k` the sorted prefix of `u` is entrywise
    /// at most the sorted prefix of `w`.
    pub fn bruhat_leq(&self, other: &Permutation) -> bool {
        assert_eq!(self.n(), other.n(), "Bruhat order compares equal ranks");
        let n = self.n();
        let mut su: Vec<usize> = Vec::with_capacity(n);
        let mut sw: Vec<usize> = Vec::with_capacity(n);
        for k in 0..n {
            let (u, w) = (self.one_line[k], other.one_line[k]);
            su.insert(su.partition_point(|&x| x < u), u);
            sw.insert(sw.partition_point(|&x| x < w), w);
            if su.iter().zip(&sw).any(|(a, b)| a > b) {
                return false;
            }
        }
        true
    }

    /// A reduced word for `w`, built by repeatedly removing the leftmost
    /// descent.
    pub fn reduced_word(&self) -> ReducedWord {
        let mut w = self.clone();
        let mut letters = Vec::with_capacity(self.length());
        while let Some(i) = (1..w.n()).find(|&i| w.one_line[i - 1] > w.one_line[i]) {
            w = w.times_simple(i);
            letters.push(i);
        }
        letters.reverse();
        ReducedWord {
            letters,
            n: self.n(),
        }
    }
}

impl fmt::Display for Permutation {
    /// Compact digit string for `n <= 9`, comma-separated values otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for &v in &self.one_line {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            write!(f, "{}", self.one_line.iter().join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = WeylError;

    fn from_str(s: &str) -> Result<Self, WeylError> {
        let vals: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| WeylError::InvalidOneLine(s.to_string()))?
        } else {
            s.trim()
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| WeylError::InvalidOneLine(s.to_string()))?
        };
        Permutation::from_one_line(vals)
    }
}

/// The product `s_{i_1} s_{i_2} ... s_{i_m}` of an arbitrary word,
/// applying the rightmost letter first. The empty word gives the identity.
pub fn perm_from_word(letters: &[usize], n: usize) -> Result<Permutation, WeylError> {
    let mut w = Permutation::identity(n);
    for &i in letters {
        if i < 1 || i >= n {
            return Err(WeylError::InvalidLetter { letter: i, n });
        }
        w = w.times_simple(i);
    }
    Ok(w)
}

/// Whether a word is reduced: its length equals the inversion count of
/// its product.
pub fn is_reduced(letters: &[usize], n: usize) -> Result<bool, WeylError> {
    Ok(perm_from_word(letters, n)?.length() == letters.len())
}

/// A reduced word. Construction fails on out-of-range letters and on
/// non-reduced words, so downstream consumers can rely on reducedness.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ReducedWord {
    letters: Vec<usize>,
    n: usize,
}

impl ReducedWord {
    pub fn new(letters: Vec<usize>, n: usize) -> Result<Self, WeylError> {
        if !is_reduced(&letters, n)? {
            return Err(WeylError::NotReduced);
        }
        Ok(ReducedWord { letters, n })
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn has_distinct_letters(&self) -> bool {
        let mut seen = vec![false; self.n];
        self.letters.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
    }

    /// The product permutation of the full word.
    pub fn permutation(&self) -> Permutation {
        perm_from_word(&self.letters, self.n).expect("letters validated at construction")
    }

    /// The subword permutation `w(J)` for a sorted 1-based position set.
    pub fn subword_perm(&self, positions: &[usize]) -> Permutation {
        let mut w = Permutation::identity(self.n);
        for &j in positions {
            w = w.times_simple(self.letters[j - 1]);
        }
        w
    }

    /// All `2^m` subword position sets with their permutations, in
    /// shortlex order (by size, then lexicographically), matching the
    /// `subsets_shortlex` enumeration.
    pub fn subwords(&self) -> impl Iterator<Item = (Vec<usize>, Permutation)> + '_ {
        subsets_shortlex(self.len()).map(move |js| {
            let p = self.subword_perm(&js);
            (js, p)
        })
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letters.iter().join(","))
    }
}

/// All subsets of `{1,...,m}` in shortlex order: by cardinality, then
/// lexicographically on the sorted tuples.
pub fn subsets_shortlex(m: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..=m).flat_map(move |k| (1..=m).combinations(k))
}

/// A parabolic coset class of subword position sets: every member `J`
/// has `w(J) W_P = representative W_P`, with the representative the
/// minimal-length (Grassmannian) element of the coset.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CosetClass {
    pub representative: Permutation,
    pub members: Vec<Vec<usize>>,
}

/// Partitions all `2^m` subword position sets of `word` by the coset of
/// their subword permutation in `W / W_{P_d}`. Classes are listed by
/// representative in one-line lexicographic order; members keep shortlex
/// order.
pub fn coset_classes(word: &ReducedWord, d: usize) -> Result<Vec<CosetClass>, WeylError> {
    if !word.has_distinct_letters() {
        return Err(WeylError::NotDistinctWord);
    }
    if d < 1 || d >= word.n() {
        return Err(WeylError::InvalidDescent { d, n: word.n() });
    }
    let mut classes: BTreeMap<Permutation, Vec<Vec<usize>>> = BTreeMap::new();
    for (js, perm) in word.subwords() {
        let rep = perm.min_coset_rep(d)?;
        classes.entry(rep).or_default().push(js);
    }
    Ok(classes
        .into_iter()
        .map(|(representative, members)| CosetClass {
            representative,
            members,
        })
        .collect())
}

fn interval(lo: usize, hi: usize) -> Vec<usize> {
    if hi < lo {
        Vec::new()
    } else {
        (lo..=hi).collect()
    }
}

/// The closed-form lift class `[v]` over `w_d`, as position sets into the
/// word `s_{2d-1} ... s_{d+1} s_1 ... s_d` of length `2d-1`.
///
/// For `0 <= b <= d-1` the class of `v = s_{2d-a-1} ... s_{d+1} s_{b+1} ... s_d`
/// is `{ J ∪ [a+1,d-1] ∪ [d+b,2d-1] : J ⊆ [a-1] ∪ [d,d+b-2] }`; `b = d`
/// encodes `v = e`, whose class is all subsets of `[2d-2]`. Intervals with
/// inverted bounds are empty. Output is sorted shortlex.
pub fn lifts_of_v_closed_form(d: usize, a: usize, b: usize) -> Result<Vec<Vec<usize>>, WeylError> {
    if d < 1 || a > d - 1 || b > d {
        return Err(WeylError::InvalidHookParams { d, a, b });
    }
    if b == d {
        return Ok(subsets_shortlex(2 * d - 2).collect());
    }
    let mut fixed = interval(a + 1, d - 1);
    fixed.extend(interval(d + b, 2 * d - 1));
    let mut free = if a >= 2 { interval(1, a - 1) } else { Vec::new() };
    if b >= 2 {
        free.extend(interval(d, d + b - 2));
    }
    let mut out = Vec::with_capacity(1 << free.len());
    for k in 0..=free.len() {
        for js in free.iter().copied().combinations(k) {
            let mut subset: Vec<usize> = js;
            subset.extend(fixed.iter().copied());
            subset.sort_unstable();
            out.push(subset);
        }
    }
    out.sort_by(|p, q| p.len().cmp(&q.len()).then_with(|| p.cmp(q)));
    Ok(out)
}
