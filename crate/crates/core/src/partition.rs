//! Partitions attached to Grassmannian permutations.
//!
//! A Grassmannian permutation `w` with descent at `d` in `S_n` corresponds
//! to the partition `λ_w = (λ_1, ..., λ_d)` with `λ_i = w(d-i+1) - (d-i+1)`,
//! drawn inside the `d × (n-d)` rectangle. Hooks, transposition, the
//! componentwise order, and the corners of the lower border path carry the
//! smoothness and Gorenstein criteria.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use thiserror::Error;

use crate::weyl::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    /// The permutation has a descent away from `d`.
    #[error("permutation {w} is not Grassmannian at descent {d}")]
    NotGrassmannian { w: String, d: usize },
    /// The partition does not fit inside the ambient rectangle.
    #[error("partition does not fit in the {rows} x {cols} rectangle")]
    DoesNotFit { rows: usize, cols: usize },
    /// Parts are not weakly decreasing positive integers.
    #[error("invalid partition parts {0:?}")]
    InvalidParts(Vec<usize>),
    /// Descent position out of range.
    #[error("descent position {d} out of range for rank {n}")]
    InvalidDescent { d: usize, n: usize },
}

/// A partition: weakly decreasing positive parts. The empty sequence is
/// the empty partition; trailing zeros are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition, trimming trailing zeros.
    pub fn new(mut parts: Vec<usize>) -> Result<Self, PartitionError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::InvalidParts(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of boxes; equals the dimension of the Schubert variety.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The part `λ_i` (1-based), reading missing parts as zero.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn fits_in(&self, rows: usize, cols: usize) -> bool {
        self.len() <= rows && self.part(1) <= cols
    }

    /// Conjugate partition (column lengths).
    pub fn transpose(&self) -> Partition {
        let cols = self.part(1);
        let parts = (1..=cols)
            .map(|c| self.parts.iter().take_while(|&&p| p >= c).count())
            .collect();
        Partition { parts }
    }

    /// Componentwise order, missing parts read as zero.
    pub fn leq(&self, other: &Partition) -> bool {
        (1..=self.len()).all(|i| self.part(i) <= other.part(i))
    }

    /// Recognizes a hook `(x, 1^y)`, returning `(x, y)`. The arm length is
    /// `x - 1` and the leg length is `y`. The empty partition is not a hook.
    pub fn is_hook(&self) -> Option<(usize, usize)> {
        if self.is_empty() {
            return None;
        }
        if self.parts[1..].iter().all(|&p| p == 1) {
            Some((self.parts[0], self.len() - 1))
        } else {
            None
        }
    }

    /// Whether the diagram is empty or a single `p × q` rectangle.
    pub fn is_single_rectangle(&self) -> bool {
        self.parts.iter().all_equal()
    }
}

impl fmt::Display for Partition {
    /// Comma-separated parts; the empty string for the empty partition.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.parts.iter().join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, PartitionError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts: Vec<usize> = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| PartitionError::InvalidParts(Vec::new()))?;
        Partition::new(parts)
    }
}

/// The partition `λ_w` of a Grassmannian permutation: `λ_i = w(d-i+1) - (d-i+1)`.
pub fn lambda_of(w: &Permutation, d: usize) -> Result<Partition, PartitionError> {
    let n = w.n();
    if d < 1 || d >= n {
        return Err(PartitionError::InvalidDescent { d, n });
    }
    if !w.is_grassmannian(d).expect("d validated") {
        return Err(PartitionError::NotGrassmannian {
            w: w.to_string(),
            d,
        });
    }
    let parts: Vec<usize> = (1..=d).map(|i| w.apply(d - i + 1) - (d - i + 1)).collect();
    Partition::new(parts)
}

/// The Grassmannian permutation with `λ_w = λ` in `Gr(d, n)`: positions
/// `d-i+1` carry `λ_i + (d-i+1)` and the remaining values fill ascending.
pub fn perm_of(lambda: &Partition, d: usize, n: usize) -> Result<Permutation, PartitionError> {
    if d < 1 || d >= n {
        return Err(PartitionError::InvalidDescent { d, n });
    }
    if !lambda.fits_in(d, n - d) {
        return Err(PartitionError::DoesNotFit {
            rows: d,
            cols: n - d,
        });
    }
    let first: Vec<usize> = (1..=d).rev().map(|i| lambda.part(i) + (d - i + 1)).collect();
    let mut used = vec![false; n];
    for &v in &first {
        used[v - 1] = true;
    }
    let rest = (1..=n).filter(|&v| !used[v - 1]);
    let one_line: Vec<usize> = first.iter().copied().chain(rest).collect();
    Ok(Permutation::from_one_line(one_line).expect("construction yields a bijection"))
}

/// Corners of the lower border path of `λ` in the `d × (n-d)` rectangle.
///
/// Rows run `1..=d` top-down and columns `1..=n-d`; the path goes from
/// `(d, 0)` to `(0, n-d)` along the boundary of the diagram. A corner is a
/// path vertex with path points directly above and directly to its left,
/// which happens at `(r, λ_r)` exactly when `λ_r > λ_{r+1}` (with
/// `λ_{d+1} = 0`). Corners are listed by decreasing row.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CornerSet {
    pub corners: Vec<(usize, usize)>,
    pub rows: usize,
    pub cols: usize,
}

impl CornerSet {
    pub fn count(&self) -> usize {
        self.corners.len()
    }

    /// Whether `row + col` is constant over all corners; vacuously true
    /// for at most one corner.
    pub fn same_antidiagonal(&self) -> bool {
        self.corners
            .iter()
            .map(|&(r, c)| r + c)
            .all_equal()
    }
}

pub fn corners(lambda: &Partition, d: usize, n: usize) -> Result<CornerSet, PartitionError> {
    if d < 1 || d >= n {
        return Err(PartitionError::InvalidDescent { d, n });
    }
    if !lambda.fits_in(d, n - d) {
        return Err(PartitionError::DoesNotFit {
            rows: d,
            cols: n - d,
        });
    }
    let corners = (1..=d)
        .rev()
        .filter(|&r| lambda.part(r) > lambda.part(r + 1))
        .map(|r| (r, lambda.part(r)))
        .collect();
    Ok(CornerSet {
        corners,
        rows: d,
        cols: n - d,
    })
}

/// Gorenstein criterion input: whether all corners of `λ` lie on one
/// antidiagonal.
pub fn corners_same_antidiagonal(
    lambda: &Partition,
    d: usize,
    n: usize,
) -> Result<bool, PartitionError> {
    Ok(corners(lambda, d, n)?.same_antidiagonal())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn lambda_of_examples() {
        assert_eq!(lambda_of(&perm("2457136"), 4).unwrap(), pt("3,2,2,1"));
        assert_eq!(lambda_of(&perm("2413"), 2).unwrap(), pt("2,1"));
        assert_eq!(lambda_of(&Permutation::identity(5), 3).unwrap(), Partition::empty());
        assert!(matches!(
            lambda_of(&perm("2143"), 2),
            Err(PartitionError::NotGrassmannian { .. })
        ));
    }

    #[test]
    fn perm_of_examples() {
        assert_eq!(perm_of(&pt("2,1"), 2, 4).unwrap(), perm("2413"));
        assert_eq!(perm_of(&Partition::empty(), 3, 7).unwrap(), Permutation::identity(7));
        assert_eq!(perm_of(&pt("3,2,2,1"), 4, 7).unwrap(), perm("2457136"));
        assert!(matches!(
            perm_of(&pt("4"), 2, 4),
            Err(PartitionError::DoesNotFit { .. })
        ));
    }

    #[test]
    fn lambda_perm_inverse_exhaustive() {
        use itertools::Itertools;
        for n in 2..=8usize {
            for d in 1..n {
                for first in (1..=n).combinations(d) {
                    let mut one_line = first.clone();
                    one_line.extend((1..=n).filter(|v| !first.contains(v)));
                    let w = Permutation::from_one_line(one_line).unwrap();
                    let lam = lambda_of(&w, d).unwrap();
                    assert!(lam.fits_in(d, n - d));
                    assert_eq!(perm_of(&lam, d, n).unwrap(), w);
                }
            }
        }
    }

    #[test]
    fn hooks() {
        assert_eq!(pt("2,1").is_hook(), Some((2, 1)));
        assert_eq!(pt("2,2").is_hook(), None);
        assert_eq!(pt("1").is_hook(), Some((1, 0)));
        assert_eq!(Partition::empty().is_hook(), None);
    }

    #[test]
    fn rectangles() {
        assert!(pt("2,2").is_single_rectangle());
        assert!(!pt("2,1").is_single_rectangle());
        assert!(Partition::empty().is_single_rectangle());
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(pt("2").transpose(), pt("1,1"));
        assert_eq!(pt("3,2,2,1").transpose(), pt("4,3,1"));
        assert_eq!(Partition::empty().transpose(), Partition::empty());
        for s in ["3,2,2,1", "4,1", "2,2,2", ""] {
            let lam: Partition = s.parse().unwrap();
            assert_eq!(lam.transpose().transpose(), lam);
        }
    }

    #[test]
    fn componentwise_order() {
        assert!(pt("1").leq(&pt("2,1")));
        assert!(!pt("2").leq(&pt("1,1")));
        assert!(Partition::empty().leq(&pt("1")));
    }

    #[test]
    fn corner_counts() {
        assert_eq!(corners(&pt("3,2,2,1"), 4, 7).unwrap().count(), 3);
        // (d, 1^{d-1}) in the d x d square has two corners
        for d in 2..=5 {
            let mut parts = vec![d];
            parts.extend(std::iter::repeat(1).take(d - 1));
            let lam = Partition::new(parts).unwrap();
            assert_eq!(corners(&lam, d, 2 * d).unwrap().count(), 2);
        }
        assert_eq!(corners(&pt("2"), 3, 6).unwrap().count(), 1);
        assert_eq!(corners(&Partition::empty(), 3, 6).unwrap().count(), 0);
    }

    #[test]
    fn corner_positions_match_path_walk() {
        let cs = corners(&pt("3,2,2,1"), 4, 7).unwrap();
        assert_eq!(cs.corners, vec![(4, 1), (3, 2), (1, 3)]);
    }

    #[test]
    fn antidiagonal_examples() {
        assert!(corners_same_antidiagonal(&pt("2,1"), 2, 4).unwrap());
        assert!(!corners_same_antidiagonal(&pt("3,1"), 2, 5).unwrap());
        assert!(corners_same_antidiagonal(&Partition::empty(), 2, 4).unwrap());
        // hooks in the 4 x 5 rectangle: same antidiagonal iff arm equals leg
        for x in 1..=5usize {
            for y in 0..=3usize {
                let mut parts = vec![x];
                parts.extend(std::iter::repeat(1).take(y));
                let lam = Partition::new(parts).unwrap();
                let gor = corners_same_antidiagonal(&lam, 4, 9).unwrap();
                let smooth = y == 0 || x == 1;
                assert_eq!(gor, smooth || x - 1 == y, "hook ({x},1^{y})");
            }
        }
    }

    #[test]
    fn corner_count_invariant_under_transpose() {
        for s in ["3,2,2,1", "2,1", "4", "1,1,1", ""] {
            let lam: Partition = s.parse().unwrap();
            let (d, c) = (4, 4);
            let a = corners(&lam, d, d + c).unwrap().count();
            let b = corners(&lam.transpose(), c, c + d).unwrap().count();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn text_format() {
        assert_eq!(pt("3,2,2,1").to_string(), "3,2,2,1");
        assert_eq!(Partition::empty().to_string(), "");
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,2".parse::<Partition>().is_err());
    }
}
