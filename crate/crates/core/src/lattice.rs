//! Exact integer and rational linear algebra with polyhedral cone
//! primitives: primitivization, fraction-free elimination, exact linear
//! solving, the double description method at desk scale, cone membership,
//! extremal generators, and unimodularity tests.
//!
//! Everything is computed over arbitrary-precision integers and rationals;
//! there is no floating point on any verdict path.

use std::fmt;
use std::sync::OnceLock;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use thiserror::Error;

/// Hard cap on ambient dimension for double description runs.
pub const DESK_SCALE_DIM: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("the zero vector has no primitive representative")]
    ZeroVector,
    #[error("generators span a non-pointed cone")]
    NotPointed,
    #[error("ambient dimension {dim} exceeds the desk-scale cap {DESK_SCALE_DIM}")]
    DeskScaleExceeded { dim: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// An integer vector in the ambient lattice.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    coords: Vec<BigInt>,
}

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticeVector { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVector {
            coords: coords.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        LatticeVector {
            coords: vec![BigInt::zero(); dim],
        }
    }

    /// Standard basis vector `e_k` (0-based) in the given dimension.
    pub fn unit(dim: usize, k: usize) -> Self {
        let mut v = Self::zero(dim);
        v.coords[k] = BigInt::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &LatticeVector) -> BigInt {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn dot_rational(&self, other: &RationalVector) -> BigRational {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(other.coords())
            .map(|(a, b)| BigRational::from_integer(a.clone()) * b)
            .sum()
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(self.dim(), other.dim());
        LatticeVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    /// `s * self + t * other`.
    pub fn combine(&self, s: &BigInt, other: &LatticeVector, t: &BigInt) -> LatticeVector {
        debug_assert_eq!(self.dim(), other.dim());
        LatticeVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| s * a + t * b)
                .collect(),
        }
    }

    /// Divides by the gcd of the entries, preserving signs.
    pub fn primitive(&self) -> Result<LatticeVector, LatticeError> {
        if self.is_zero() {
            return Err(LatticeError::ZeroVector);
        }
        let g = self
            .coords
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        Ok(LatticeVector {
            coords: self.coords.iter().map(|c| c / &g).collect(),
        })
    }

    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(|c| i64::try_from(c).ok()).collect()
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An exact rational vector; denominators are kept in lowest terms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalVector {
    coords: Vec<BigRational>,
}

impl RationalVector {
    pub fn new(coords: Vec<BigRational>) -> Self {
        RationalVector { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        RationalVector {
            coords: coords
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(BigRational::is_integer)
    }

    /// Entries as `"p/q"` strings in lowest terms.
    pub fn entries_pq(&self) -> Vec<String> {
        self.coords
            .iter()
            .map(|c| format!("{}/{}", c.numer(), c.denom()))
            .collect()
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Row echelon data from fraction-free (Bareiss) elimination.
struct Echelon {
    mat: Vec<Vec<BigInt>>,
    pivots: Vec<(usize, usize)>,
    sign: i8,
}

/// Fraction-free Gaussian elimination with deterministic pivoting: columns
/// are processed left to right and the first row with a nonzero entry is
/// chosen. All divisions are exact by the Bareiss identity.
fn eliminate(mut mat: Vec<Vec<BigInt>>) -> Echelon {
    let rows = mat.len();
    let cols = mat.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            mat.swap(p, r);
            sign = -sign;
        }
        let pivot_row = mat[r].clone();
        for row in mat.iter_mut().skip(r + 1) {
            let head = std::mem::replace(&mut row[c], BigInt::zero());
            for j in c + 1..cols {
                let num = &pivot_row[c] * &row[j] - &head * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                assert!(rem.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
        }
        prev = pivot_row[c].clone();
        pivots.push((r, c));
        r += 1;
    }
    Echelon { mat, pivots, sign }
}

/// Rank of the integer matrix whose rows are the given vectors.
pub fn rank(rows: &[LatticeVector]) -> usize {
    let mat: Vec<Vec<BigInt>> = rows.iter().map(|v| v.coords.clone()).collect();
    eliminate(mat).pivots.len()
}

/// Determinant of the square matrix whose rows are the given vectors.
pub fn det(rows: &[LatticeVector]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(rows.iter().all(|r| r.dim() == n));
    let mat: Vec<Vec<BigInt>> = rows.iter().map(|v| v.coords.clone()).collect();
    let ech = eliminate(mat);
    if ech.pivots.len() < n {
        return BigInt::zero();
    }
    let (r, c) = ech.pivots[n - 1];
    let d = ech.mat[r][c].clone();
    if ech.sign < 0 {
        -d
    } else {
        d
    }
}

/// Solves `A x = b` exactly over the rationals.
///
/// Returns `None` when the system is inconsistent. For underdetermined
/// consistent systems the non-pivot variables are set to zero, so the
/// result is deterministic.
pub fn solve_exact(rows: &[LatticeVector], b: &[BigInt]) -> Option<RationalVector> {
    assert_eq!(rows.len(), b.len(), "matrix and right-hand side must agree");
    let ncols = rows.first().map_or(0, LatticeVector::dim);
    let mat: Vec<Vec<BigInt>> = rows
        .iter()
        .zip(b)
        .map(|(v, rhs)| {
            let mut row = v.coords.clone();
            row.push(rhs.clone());
            row
        })
        .collect();
    let ech = eliminate(mat);
    // a pivot in the right-hand-side column means a row 0 = nonzero
    if ech.pivots.iter().any(|&(_, c)| c == ncols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for &(r, c) in ech.pivots.iter().rev() {
        let mut acc = BigRational::from_integer(ech.mat[r][ncols].clone());
        for j in c + 1..ncols {
            if !ech.mat[r][j].is_zero() {
                acc -= BigRational::from_integer(ech.mat[r][j].clone()) * &x[j];
            }
        }
        x[c] = acc / BigRational::from_integer(ech.mat[r][c].clone());
    }
    Some(RationalVector::new(x))
}

struct DdRay {
    v: LatticeVector,
    zero: u128,
}

/// Inward facet normals of the cone spanned by `gens`, by the double
/// description method run on the dual side.
///
/// For a full-dimensional pointed cone the output is exactly the facet
/// normal list. Cones of lower dimension additionally carry the defining
/// equalities of their span as two opposite inequalities each, so
/// membership is still `⟨h, p⟩ >= 0` for every returned `h`. Generators
/// are inserted in canonical sorted order and the output is sorted, making
/// the result reproducible.
pub fn dd_hrep(
    gens: &[LatticeVector],
    ambient_dim: usize,
) -> Result<Vec<LatticeVector>, LatticeError> {
    if ambient_dim > DESK_SCALE_DIM {
        return Err(LatticeError::DeskScaleExceeded { dim: ambient_dim });
    }
    let mut cons: Vec<LatticeVector> = gens
        .iter()
        .map(LatticeVector::primitive)
        .collect::<Result<_, _>>()?;
    for c in &cons {
        if c.dim() != ambient_dim {
            return Err(LatticeError::DimensionMismatch {
                expected: ambient_dim,
                got: c.dim(),
            });
        }
    }
    cons.sort();
    cons.dedup();
    assert!(cons.len() <= 128, "constraint bitmask limited to 128");

    let mut lin: Vec<LatticeVector> = (0..ambient_dim)
        .map(|k| LatticeVector::unit(ambient_dim, k))
        .collect();
    let mut rays: Vec<DdRay> = Vec::new();

    for (ci, a) in cons.iter().enumerate() {
        let bit = 1u128 << ci;
        if let Some(k) = lin.iter().position(|l| !a.dot(l).is_zero()) {
            // the constraint cuts the lineality space: split off one basis
            // vector and project everything else onto the hyperplane
            let mut l0 = lin.remove(k);
            if a.dot(&l0).is_negative() {
                l0 = l0.neg();
            }
            let al0 = a.dot(&l0);
            for l in lin.iter_mut() {
                let all = a.dot(l);
                if !all.is_zero() {
                    *l = l.combine(&al0, &l0, &(-all)).primitive().expect("nonzero");
                }
            }
            for ray in rays.iter_mut() {
                let ar = a.dot(&ray.v);
                if !ar.is_zero() {
                    ray.v = ray
                        .v
                        .combine(&al0, &l0, &(-ar))
                        .primitive()
                        .expect("nonzero");
                }
                ray.zero |= bit;
            }
            rays.push(DdRay {
                v: l0,
                zero: bit - 1,
            });
        } else {
            let evals: Vec<BigInt> = rays.iter().map(|r| a.dot(&r.v)).collect();
            let mut next: Vec<DdRay> = Vec::new();
            for (i, ray) in rays.iter().enumerate() {
                if evals[i].is_positive() {
                    next.push(DdRay {
                        v: ray.v.clone(),
                        zero: ray.zero,
                    });
                } else if evals[i].is_zero() {
                    next.push(DdRay {
                        v: ray.v.clone(),
                        zero: ray.zero | bit,
                    });
                }
            }
            for (p, rp) in rays.iter().enumerate() {
                if !evals[p].is_positive() {
                    continue;
                }
                for (q, rq) in rays.iter().enumerate() {
                    if !evals[q].is_negative() {
                        continue;
                    }
                    let meet = rp.zero & rq.zero;
                    let adjacent = !rays.iter().enumerate().any(|(k, rk)| {
                        k != p && k != q && (meet & !rk.zero) == 0
                    });
                    if adjacent {
                        let v = rq
                            .v
                            .combine(&evals[p], &rp.v, &(-evals[q].clone()))
                            .primitive()
                            .expect("combination of opposite-side rays is nonzero");
                        next.push(DdRay {
                            v,
                            zero: meet | bit,
                        });
                    }
                }
            }
            rays = next;
        }
    }

    // the primal cone is pointed iff the dual description spans everything
    let mut span: Vec<LatticeVector> = rays.iter().map(|r| r.v.clone()).collect();
    span.extend(lin.iter().cloned());
    if rank(&span) < ambient_dim {
        return Err(LatticeError::NotPointed);
    }

    let mut out: Vec<LatticeVector> = rays.into_iter().map(|r| r.v).collect();
    for l in lin {
        out.push(l.neg());
        out.push(l);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn member_of(gens: &[LatticeVector], p: &LatticeVector, ambient_dim: usize) -> bool {
    if gens.is_empty() {
        return p.is_zero();
    }
    dd_hrep(gens, ambient_dim)
        .expect("subset of a pointed cone is pointed")
        .iter()
        .all(|h| !h.dot(p).is_negative())
}

/// Minimal generating subset of a pointed cone: a generator is dropped iff
/// it is a nonnegative combination of the others. Output is primitive,
/// deduplicated, and canonically sorted.
pub fn extremal_generators(
    gens: &[LatticeVector],
    ambient_dim: usize,
) -> Result<Vec<LatticeVector>, LatticeError> {
    let mut kept: Vec<LatticeVector> = gens
        .iter()
        .map(LatticeVector::primitive)
        .collect::<Result<_, _>>()?;
    kept.sort();
    kept.dedup();
    // linearly independent generators are already extremal and pointed
    if rank(&kept) == kept.len() {
        return Ok(kept);
    }
    dd_hrep(&kept, ambient_dim)?;
    let mut i = 0;
    while i < kept.len() {
        let mut others = kept.clone();
        let g = others.remove(i);
        if member_of(&others, &g, ambient_dim) {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(kept)
}

/// A pointed rational polyhedral cone, stored by its extremal primitive
/// generators with a lazily cached facet description.
#[derive(Clone)]
pub struct Cone {
    ambient_dim: usize,
    generators: Vec<LatticeVector>,
    hrep: OnceLock<Vec<LatticeVector>>,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.generators == other.generators
    }
}

impl Eq for Cone {}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cone{:?}", self.generators)
    }
}

impl Cone {
    /// Builds a cone, reducing the generators to the extremal set and
    /// validating pointedness.
    pub fn from_generators(
        gens: &[LatticeVector],
        ambient_dim: usize,
    ) -> Result<Cone, LatticeError> {
        if ambient_dim > DESK_SCALE_DIM {
            return Err(LatticeError::DeskScaleExceeded { dim: ambient_dim });
        }
        for g in gens {
            if g.dim() != ambient_dim {
                return Err(LatticeError::DimensionMismatch {
                    expected: ambient_dim,
                    got: g.dim(),
                });
            }
        }
        let generators = extremal_generators(gens, ambient_dim)?;
        Ok(Cone {
            ambient_dim,
            generators,
            hrep: OnceLock::new(),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    /// Dimension of the linear span of the cone.
    pub fn dim(&self) -> usize {
        rank(&self.generators)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Inward facet normals (plus span equalities as opposite pairs for
    /// lower-dimensional cones). Computed once and cached.
    pub fn hrep(&self) -> &[LatticeVector] {
        self.hrep.get_or_init(|| {
            dd_hrep(&self.generators, self.ambient_dim)
                .expect("pointedness and dimension validated at construction")
        })
    }

    pub fn contains(&self, p: &LatticeVector) -> Result<bool, LatticeError> {
        if p.dim() != self.ambient_dim {
            return Err(LatticeError::DimensionMismatch {
                expected: self.ambient_dim,
                got: p.dim(),
            });
        }
        Ok(self.hrep().iter().all(|h| !h.dot(p).is_negative()))
    }

    pub fn contains_rational(&self, p: &RationalVector) -> Result<bool, LatticeError> {
        if p.dim() != self.ambient_dim {
            return Err(LatticeError::DimensionMismatch {
                expected: self.ambient_dim,
                got: p.dim(),
            });
        }
        Ok(self
            .hrep()
            .iter()
            .all(|h| !h.dot_rational(p).is_negative()))
    }

    pub fn is_simplicial(&self) -> bool {
        rank(&self.generators) == self.generators.len()
    }

    /// Simplicial, full-dimensional, and spanned by a lattice basis.
    pub fn is_unimodular(&self) -> bool {
        self.generators.len() == self.ambient_dim && det(&self.generators).abs().is_one()
    }
}

/// A triangulation of a pointed cone into simplicial subcones spanned by
/// its own generators, as index sets. Pulls from the first generator of
/// each face, recursively; deterministic for sorted input.
pub(crate) fn triangulate_pulling(
    gens: &[LatticeVector],
    ambient_dim: usize,
) -> Result<Vec<Vec<usize>>, LatticeError> {
    let r = rank(gens);
    if gens.len() == r {
        return Ok(vec![(0..gens.len()).collect()]);
    }
    let hrep = dd_hrep(gens, ambient_dim)?;
    let mut out = Vec::new();
    for h in &hrep {
        let tight: Vec<usize> = (0..gens.len())
            .filter(|&i| h.dot(&gens[i]).is_zero())
            .collect();
        // skip span equalities and facets through the pulling vertex
        if tight.len() == gens.len() || tight.contains(&0) {
            continue;
        }
        let facet_gens: Vec<LatticeVector> = tight.iter().map(|&i| gens[i].clone()).collect();
        for simplex in triangulate_pulling(&facet_gens, ambient_dim)? {
            let mut s: Vec<usize> = simplex.into_iter().map(|k| tight[k]).collect();
            s.push(0);
            s.sort_unstable();
            out.push(s);
        }
    }
    out.sort();
    Ok(out)
}
