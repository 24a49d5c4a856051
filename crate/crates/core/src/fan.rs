//! Fans of toric Schubert varieties and the Gorenstein/Fano verdicts.
//!
//! For a reduced word with distinct letters, the Schubert variety in the
//! full flag variety is a smooth toric variety whose fan lives in `R^m`
//! with `m` the word length: the rays are the columns of an `m x 2m`
//! integer matrix built from Cartan integers, and the `2^m` maximal cones
//! are indexed by the subword position sets. Projecting to a Grassmannian
//! merges the flag cones along parabolic coset classes; the merged cones
//! are reduced to their extremal generators algorithmically.
//!
//! The anticanonical divisor is tested by solving `⟨m_σ, u_ρ⟩ = -1` over
//! each maximal cone exactly; Gorenstein means every solution exists and
//! is integral, and Fano additionally requires the strict inequality
//! `⟨m_σ, u_ρ⟩ > -1` for every ray outside the cone.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigInt, BigRational, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::classify::{self, ClassifyError};
use crate::lattice::{
    self, det, rank, solve_exact, Cone, LatticeError, LatticeVector, RationalVector,
};
use crate::partition;
use crate::weyl::{perm_from_word, subsets_shortlex, CosetClass, Permutation, ReducedWord, WeylError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("permutation {w} is not Grassmannian at descent {d}")]
    NotGrassmannian { w: String, d: usize },
    #[error("Schubert variety of {w} in Gr({d},{n}) is not toric")]
    NotToric { w: String, d: usize, n: usize },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("maximal cone {index} is not full-dimensional")]
    DegenerateCone { index: usize },
    #[error("mismatched data: {0}")]
    MismatchedData(String),
    #[error("piece {index} is not a unimodular simplicial cone")]
    NotUnimodularPiece { index: usize },
    #[error("invalid fan: {0}")]
    InvalidFan(String),
}

/// Which homogeneous space the fan belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SpaceTag {
    Flag,
    Grassmannian,
}

impl SpaceTag {
    pub fn as_str(self) -> &'static str {
        match self {
            SpaceTag::Flag => "flag",
            SpaceTag::Grassmannian => "grassmannian",
        }
    }
}

/// A fan given by primitive ray generators, maximal cones as ascending
/// ray-index sets, and one fixed-point label per maximal cone.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fan {
    ambient_dim: usize,
    rays: Vec<LatticeVector>,
    max_cones: Vec<Vec<usize>>,
    labels: Vec<Permutation>,
    space: SpaceTag,
}

#[derive(Serialize)]
struct FanJson {
    ambient_dim: usize,
    space: &'static str,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
    labels: Vec<String>,
}

impl Fan {
    /// Validates the fan invariants: distinct primitive rays, every ray
    /// used, strictly ascending index sets with no containments, one label
    /// per cone, and every cone pointed with the listed rays extremal.
    pub fn new(
        ambient_dim: usize,
        rays: Vec<LatticeVector>,
        max_cones: Vec<Vec<usize>>,
        labels: Vec<Permutation>,
        space: SpaceTag,
    ) -> Result<Fan, FanError> {
        for r in &rays {
            if r.dim() != ambient_dim {
                return Err(FanError::InvalidFan(format!(
                    "ray {r} has dimension {} in ambient {ambient_dim}",
                    r.dim()
                )));
            }
            if r.primitive().map_err(|_| {
                FanError::InvalidFan("zero ray".into())
            })? != *r
            {
                return Err(FanError::InvalidFan(format!("ray {r} is not primitive")));
            }
        }
        let distinct: BTreeSet<&LatticeVector> = rays.iter().collect();
        if distinct.len() != rays.len() {
            return Err(FanError::InvalidFan("rays are not pairwise distinct".into()));
        }
        if labels.len() != max_cones.len() {
            return Err(FanError::InvalidFan("one label per maximal cone".into()));
        }
        assert!(rays.len() <= 128, "ray bitmask limited to 128");
        let mut used = vec![false; rays.len()];
        let mut masks: Vec<u128> = Vec::with_capacity(max_cones.len());
        for cone in &max_cones {
            let mut mask = 0u128;
            if !cone.windows(2).all(|w| w[0] < w[1]) {
                return Err(FanError::InvalidFan(
                    "cone index sets must be strictly ascending".into(),
                ));
            }
            for &i in cone {
                if i >= rays.len() {
                    return Err(FanError::InvalidFan(format!("ray index {i} out of range")));
                }
                used[i] = true;
                mask |= 1 << i;
            }
            masks.push(mask);
        }
        if !used.iter().all(|&u| u) {
            return Err(FanError::InvalidFan(
                "every ray must appear in a maximal cone".into(),
            ));
        }
        for i in 0..masks.len() {
            for j in 0..masks.len() {
                if i != j && masks[i] & masks[j] == masks[i] {
                    return Err(FanError::InvalidFan(
                        "maximal cone contained in another".into(),
                    ));
                }
            }
        }
        let fan = Fan {
            ambient_dim,
            rays,
            max_cones,
            labels,
            space,
        };
        for i in 0..fan.max_cones.len() {
            let cone = fan.cone(i)?;
            if cone.generators().len() != fan.max_cones[i].len() {
                return Err(FanError::InvalidFan(format!(
                    "cone {i} lists non-extremal rays"
                )));
            }
        }
        Ok(fan)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn labels(&self) -> &[Permutation] {
        &self.labels
    }

    pub fn space(&self) -> SpaceTag {
        self.space
    }

    /// The `i`-th maximal cone as a `Cone` value.
    pub fn cone(&self, i: usize) -> Result<Cone, FanError> {
        let gens: Vec<LatticeVector> = self.max_cones[i]
            .iter()
            .map(|&k| self.rays[k].clone())
            .collect();
        Ok(Cone::from_generators(&gens, self.ambient_dim)?)
    }

    /// Fixed-schema JSON: `ambient_dim`, `space`, `rays`, `max_cones`,
    /// `labels`, in that key order, byte-stable across runs.
    pub fn to_json(&self) -> String {
        let json = FanJson {
            ambient_dim: self.ambient_dim,
            space: self.space.as_str(),
            rays: self
                .rays
                .iter()
                .map(|r| r.to_i64_vec().expect("fan ray coordinates fit in i64"))
                .collect(),
            max_cones: self.max_cones.clone(),
            labels: self.labels.iter().map(Permutation::to_string).collect(),
        };
        serde_json::to_string(&json).expect("fan serializes")
    }
}

fn cartan_integer(i: usize, j: usize) -> i64 {
    if i == j {
        2
    } else if i.abs_diff(j) == 1 {
        -1
    } else {
        0
    }
}

/// Columns `v_1 ... v_m  w_1 ... w_m` of the flag-fan ray matrix: the
/// identity block and the block with `-1` on the diagonal and
/// `-c_{i_j, i_k}` below it (`j > k`), zero above.
fn flag_rays(word: &ReducedWord) -> Vec<LatticeVector> {
    let m = word.len();
    let letters = word.letters();
    let mut rays: Vec<LatticeVector> = (0..m).map(|k| LatticeVector::unit(m, k)).collect();
    for k in 0..m {
        let coords: Vec<BigInt> = (0..m)
            .map(|j| {
                if j == k {
                    BigInt::from(-1)
                } else if j > k {
                    BigInt::from(-cartan_integer(letters[j], letters[k]))
                } else {
                    BigInt::zero()
                }
            })
            .collect();
        rays.push(LatticeVector::new(coords));
    }
    rays
}

/// Ray indices of the flag cone `C_v^B` for the subword position set `J`:
/// `v_k` for `k` outside `J`, `w_k` for `k` in `J`, into the flag ray list
/// `[v_1, ..., v_m, w_1, ..., w_m]`.
pub fn flag_cone_ray_indices(m: usize, subset: &[usize]) -> Vec<usize> {
    let in_subset: Vec<bool> = {
        let mut v = vec![false; m + 1];
        for &k in subset {
            v[k] = true;
        }
        v
    };
    let mut idx: Vec<usize> = Vec::with_capacity(m);
    for k in 1..=m {
        idx.push(if in_subset[k] { m + k - 1 } else { k - 1 });
    }
    idx.sort_unstable();
    idx
}

/// The fan of the toric Schubert variety in the full flag variety for a
/// reduced word with distinct letters: `2m` rays and `2^m` maximal cones,
/// one per subword position set, labeled by the subword permutation.
pub fn flag_fan(word: &ReducedWord) -> Result<Fan, FanError> {
    if !word.has_distinct_letters() {
        return Err(WeylError::NotDistinctWord.into());
    }
    let m = word.len();
    let rays = flag_rays(word);
    let mut max_cones = Vec::with_capacity(1 << m);
    let mut labels = Vec::with_capacity(1 << m);
    for (subset, label) in word.subwords() {
        max_cones.push(flag_cone_ray_indices(m, &subset));
        labels.push(label);
    }
    Fan::new(m, rays, max_cones, labels, SpaceTag::Flag)
}

fn point_fan(n: usize) -> Fan {
    Fan {
        ambient_dim: 0,
        rays: Vec::new(),
        max_cones: vec![Vec::new()],
        labels: vec![Permutation::identity(n)],
        space: SpaceTag::Grassmannian,
    }
}

/// Merged generator sets of the Grassmannian fan: one cone per coset
/// class, the union of the member flag cones reduced to extremal rays.
fn merged_cones(
    word: &ReducedWord,
    classes: &[CosetClass],
) -> Result<Vec<(Permutation, Vec<LatticeVector>)>, FanError> {
    let m = word.len();
    let rays = flag_rays(word);
    let mut out = Vec::with_capacity(classes.len());
    for class in classes {
        let mut gens: BTreeSet<LatticeVector> = BTreeSet::new();
        for member in &class.members {
            for idx in flag_cone_ray_indices(m, member) {
                gens.insert(rays[idx].clone());
            }
        }
        let gens: Vec<LatticeVector> = gens.into_iter().collect();
        let reduced = lattice::extremal_generators(&gens, m)?;
        out.push((class.representative.clone(), reduced));
    }
    Ok(out)
}

/// The fan of a toric Schubert variety in `Gr(d, n)`, obtained from the
/// flag fan of its canonical word by merging maximal cones along the
/// coset classes. Labels are the Grassmannian permutations `v <= w`; the
/// ray order follows the flag matrix columns.
pub fn grassmannian_fan(w: &Permutation, d: usize) -> Result<Fan, FanError> {
    let n = w.n();
    if d < 1 || d >= n {
        return Err(FanError::InvalidParam(format!(
            "descent {d} out of range for rank {n}"
        )));
    }
    if !w.is_grassmannian(d)? {
        return Err(FanError::NotGrassmannian {
            w: w.to_string(),
            d,
        });
    }
    if !classify::is_toric(w, d)? {
        return Err(FanError::NotToric {
            w: w.to_string(),
            d,
            n,
        });
    }
    if w.is_identity() {
        return Ok(point_fan(n));
    }
    let lambda = partition::lambda_of(w, d).expect("Grassmannian checked");
    let (x, y) = lambda.is_hook().expect("toric and nonidentity means hook");
    let word = classify::toric_word(x, y, d, n)?;
    let classes = crate::weyl::coset_classes(&word, d)?;
    let merged = merged_cones(&word, &classes)?;

    let flag_ray_list = flag_rays(&word);
    let surviving: BTreeSet<&LatticeVector> =
        merged.iter().flat_map(|(_, gens)| gens.iter()).collect();
    let mut ray_index: BTreeMap<&LatticeVector, usize> = BTreeMap::new();
    let mut rays: Vec<LatticeVector> = Vec::new();
    for r in &flag_ray_list {
        if surviving.contains(r) {
            ray_index.insert(r, rays.len());
            rays.push(r.clone());
        }
    }
    debug_assert_eq!(rays.len(), surviving.len(), "merged rays come from the flag matrix");

    let mut max_cones = Vec::with_capacity(merged.len());
    let mut labels = Vec::with_capacity(merged.len());
    for (label, gens) in &merged {
        let mut idx: Vec<usize> = gens.iter().map(|g| ray_index[g]).collect();
        idx.sort_unstable();
        max_cones.push(idx);
        labels.push(label.clone());
    }
    Fan::new(word.len(), rays, max_cones, labels, SpaceTag::Grassmannian)
}

fn wd_case_label(d: usize, a: usize, b: usize) -> Permutation {
    let mut letters: Vec<usize> = (d + 1..=2 * d - 1 - a).rev().collect();
    letters.extend(b + 1..=d);
    perm_from_word(&letters, 2 * d).expect("letters in range")
}

/// The fan of `X_{w_d}` in `Gr(d, 2d)`, instantiated directly from the
/// case analysis of its maximal cones:
///
/// * `b = 0, 1 <= a <= d-1`: `Cone({v_1} ∪ {w_i : i != a})`
/// * `a = 0, 1 <= b <= d-1`: `Cone({v_d} ∪ {w_i : i != d+b-1})`
/// * `a, b >= 1`: `Cone({v_1, v_d} ∪ {w_i : i ∉ {a, d+b-1}})`
/// * `v = w_d` (`a = b = 0`): `Cone(w_1, ..., w_{2d-1})`
/// * `v = e`: `Cone({v_1, v_d} ∪ {w_1, ..., w_{2d-2}})`
///
/// giving `d² + 1` maximal cones on the rays `{v_1, v_d, w_1, ..., w_{2d-1}}`.
pub fn wd_fan(d: usize) -> Result<Fan, FanError> {
    if d < 1 {
        return Err(FanError::InvalidParam("d must be at least 1".into()));
    }
    let word = classify::wd_word(d)?;
    let m = 2 * d - 1;
    let all = flag_rays(&word);
    let v = |i: usize| all[i - 1].clone();
    let w_ = |i: usize| all[m + i - 1].clone();

    // rays in the order v_1, v_d, w_1, ..., w_{2d-1}; v_1 = v_d at d = 1
    let mut rays: Vec<LatticeVector> = Vec::new();
    let push_ray = |r: LatticeVector, rays: &mut Vec<LatticeVector>| {
        if !rays.contains(&r) {
            rays.push(r);
        }
    };
    push_ray(v(1), &mut rays);
    push_ray(v(d), &mut rays);
    for i in 1..=m {
        push_ray(w_(i), &mut rays);
    }
    let index_of = |r: &LatticeVector, rays: &[LatticeVector]| -> usize {
        rays.iter().position(|s| s == r).expect("ray listed")
    };

    let mut cones: Vec<(Permutation, Vec<usize>)> = Vec::with_capacity(d * d + 1);
    for a in 0..d {
        for b in 0..d {
            let label = wd_case_label(d, a, b);
            let mut gens: Vec<LatticeVector> = Vec::new();
            match (a, b) {
                (0, 0) => {
                    gens.extend((1..=m).map(&w_));
                }
                (a, 0) => {
                    gens.push(v(1));
                    gens.extend((1..=m).filter(|&i| i != a).map(&w_));
                }
                (0, b) => {
                    gens.push(v(d));
                    gens.extend((1..=m).filter(|&i| i != d + b - 1).map(&w_));
                }
                (a, b) => {
                    gens.push(v(1));
                    gens.push(v(d));
                    gens.extend((1..=m).filter(|&i| i != a && i != d + b - 1).map(&w_));
                }
            }
            let mut idx: Vec<usize> = gens.iter().map(|g| index_of(g, &rays)).collect();
            idx.sort_unstable();
            idx.dedup();
            cones.push((label, idx));
        }
    }
    // v = e
    {
        let mut gens: Vec<LatticeVector> = vec![v(1), v(d)];
        gens.extend((1..=2 * d - 2).map(&w_));
        let mut idx: Vec<usize> = gens.iter().map(|g| index_of(g, &rays)).collect();
        idx.sort_unstable();
        idx.dedup();
        cones.push((Permutation::identity(2 * d), idx));
    }

    cones.sort_by(|(p, _), (q, _)| p.cmp(q));
    let (labels, max_cones): (Vec<Permutation>, Vec<Vec<usize>>) = cones.into_iter().unzip();
    Fan::new(m, rays, max_cones, labels, SpaceTag::Grassmannian)
}

/// Checks the three ray-generator relations of the `w_d` flag fan:
/// `v_i + w_i = v_{i+1}` for `i != d-1, 2d-1`, `v_{d-1} + w_{d-1} = v_{2d-1}`,
/// and `v_{2d-1} + w_{2d-1} = 0`.
pub fn verify_ray_relations(d: usize) -> Result<bool, FanError> {
    if d < 2 {
        return Err(FanError::InvalidParam(
            "ray relations need d at least 2".into(),
        ));
    }
    let word = classify::wd_word(d)?;
    let m = 2 * d - 1;
    let all = flag_rays(&word);
    let v = |i: usize| &all[i - 1];
    let w_ = |i: usize| &all[m + i - 1];
    for i in 1..=2 * d - 2 {
        if i == d - 1 {
            continue;
        }
        if v(i).add(w_(i)) != *v(i + 1) {
            return Ok(false);
        }
    }
    if v(d - 1).add(w_(d - 1)) != *v(2 * d - 1) {
        return Ok(false);
    }
    if !v(2 * d - 1).add(w_(2 * d - 1)).is_zero() {
        return Ok(false);
    }
    Ok(true)
}

/// Per-cone solutions `m_σ` of the anticanonical conditions
/// `⟨m_σ, u_ρ⟩ = -1`; all entries integral when produced by
/// [`anticanonical_cartier`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CartierData {
    pub per_cone_m: Vec<RationalVector>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NotGorensteinReason {
    /// The linear system over the cone's rays has no solution.
    Inconsistent,
    /// The solution exists but has a non-integer coordinate.
    NonIntegral(RationalVector),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CartierOutcome {
    Gorenstein(CartierData),
    NotGorenstein {
        cone: usize,
        reason: NotGorensteinReason,
    },
}

/// Solves `⟨m, u_ρ⟩ = -1` over the rays of each maximal cone, exactly.
/// Any inconsistent or non-integral system makes the fan non-Gorenstein.
pub fn anticanonical_cartier(fan: &Fan) -> Result<CartierOutcome, FanError> {
    let mut per_cone_m = Vec::with_capacity(fan.max_cones().len());
    for (i, cone) in fan.max_cones().iter().enumerate() {
        let gens: Vec<LatticeVector> = cone.iter().map(|&k| fan.rays()[k].clone()).collect();
        if rank(&gens) != fan.ambient_dim() {
            return Err(FanError::DegenerateCone { index: i });
        }
        let b = vec![BigInt::from(-1); gens.len()];
        match solve_exact(&gens, &b) {
            None => {
                return Ok(CartierOutcome::NotGorenstein {
                    cone: i,
                    reason: NotGorensteinReason::Inconsistent,
                })
            }
            Some(m) => {
                if !m.is_integral() {
                    return Ok(CartierOutcome::NotGorenstein {
                        cone: i,
                        reason: NotGorensteinReason::NonIntegral(m),
                    });
                }
                per_cone_m.push(m);
            }
        }
    }
    Ok(CartierOutcome::Gorenstein(CartierData { per_cone_m }))
}

fn check_cartier_matches(fan: &Fan, data: &CartierData) -> Result<(), FanError> {
    if data.per_cone_m.len() != fan.max_cones().len() {
        return Err(FanError::MismatchedData(
            "one Cartier vector per maximal cone".into(),
        ));
    }
    let minus_one = BigRational::from_integer(BigInt::from(-1));
    for (cone, m) in fan.max_cones().iter().zip(&data.per_cone_m) {
        if m.dim() != fan.ambient_dim() {
            return Err(FanError::MismatchedData(
                "Cartier vector dimension mismatch".into(),
            ));
        }
        for &k in cone {
            if fan.rays()[k].dot_rational(m) != minus_one {
                return Err(FanError::MismatchedData(format!(
                    "⟨m_σ, u_ρ⟩ != -1 on ray {k} of its own cone"
                )));
            }
        }
    }
    Ok(())
}

/// First `(cone, ray)` pair violating the strict support inequality
/// `⟨m_σ, u_ρ⟩ > -1` for a ray outside the cone, if any.
pub fn first_fano_violation(fan: &Fan, data: &CartierData) -> Result<Option<(usize, usize)>, FanError> {
    check_cartier_matches(fan, data)?;
    let minus_one = BigRational::from_integer(BigInt::from(-1));
    for (i, cone) in fan.max_cones().iter().enumerate() {
        let m = &data.per_cone_m[i];
        for k in 0..fan.rays().len() {
            if cone.binary_search(&k).is_ok() {
                continue;
            }
            if fan.rays()[k].dot_rational(m) <= minus_one {
                return Ok(Some((i, k)));
            }
        }
    }
    Ok(None)
}

/// Ampleness of the anticanonical divisor: every strict inequality
/// `⟨m_σ, u_ρ⟩ > -1` holds for rays outside each cone, compared exactly.
pub fn is_fano(fan: &Fan, data: &CartierData) -> Result<bool, FanError> {
    Ok(first_fano_violation(fan, data)?.is_none())
}

/// Seeded completeness check: draws integer points of `[-1000, 1000]^m`
/// from a deterministic generator and tests that each lies in some
/// maximal cone.
pub fn is_complete_sampled(fan: &Fan, samples: usize, seed: u64) -> bool {
    if fan.ambient_dim() == 0 {
        return !fan.max_cones().is_empty();
    }
    let cones: Vec<Cone> = (0..fan.max_cones().len())
        .map(|i| fan.cone(i).expect("fan cones validated"))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let coords: Vec<i64> = (0..fan.ambient_dim())
            .map(|_| rng.random_range(-1000..=1000))
            .collect();
        let p = LatticeVector::from_i64(&coords);
        if !cones
            .iter()
            .any(|c| c.contains(&p).expect("dimensions match"))
        {
            return false;
        }
    }
    true
}

/// Recognizes the fan of a projective space: `l + 1` rays summing to
/// zero, any `l` of them a lattice basis, and the maximal cones exactly
/// the `l`-element subsets. Returns `l`. The trivial fan in dimension
/// zero is the point `P^0`.
pub fn is_projective_space_fan(fan: &Fan) -> Option<usize> {
    let l = fan.ambient_dim();
    if l == 0 {
        return (fan.rays().is_empty() && fan.max_cones() == [Vec::<usize>::new()]).then_some(0);
    }
    if fan.rays().len() != l + 1 {
        return None;
    }
    let mut sum = LatticeVector::zero(l);
    for r in fan.rays() {
        sum = sum.add(r);
    }
    if !sum.is_zero() {
        return None;
    }
    if !det(&fan.rays()[..l]).abs().is_one() {
        return None;
    }
    let got: BTreeSet<Vec<usize>> = fan.max_cones().iter().cloned().collect();
    let want: BTreeSet<Vec<usize>> = subsets_shortlex(l + 1)
        .filter(|s| s.len() == l)
        .map(|s| s.into_iter().map(|k| k - 1).collect())
        .collect();
    (got == want).then_some(l)
}

/// Exact tiling certificate for a merged cone: every piece sits inside
/// `merged`, every merged generator lies in some piece, and the truncated
/// volumes agree.
///
/// The pieces are required to be unimodular simplicial cones and are
/// pairwise interior-disjoint by fan structure, so with `f` the sum of the
/// inward facet normals of `merged` (strictly positive away from the
/// origin), the union equals `merged` iff
/// `Σ_pieces 1/Π_{g} ⟨f, g⟩ = Σ_simplices |det| / Π_{g} ⟨f, g⟩`,
/// the right side running over an independent triangulation of `merged`
/// computed from its own facet description.
pub fn cone_union_equals(merged: &Cone, pieces: &[Cone]) -> Result<bool, FanError> {
    for (i, p) in pieces.iter().enumerate() {
        if p.ambient_dim() != merged.ambient_dim() {
            return Err(FanError::MismatchedData(
                "piece dimension differs from merged cone".into(),
            ));
        }
        if !p.is_unimodular() {
            return Err(FanError::NotUnimodularPiece { index: i });
        }
    }
    if pieces.is_empty() {
        return Ok(false);
    }
    for p in pieces {
        for g in p.generators() {
            if !merged.contains(g)? {
                return Ok(false);
            }
        }
    }
    for g in merged.generators() {
        let mut covered = false;
        for p in pieces {
            if p.contains(g)? {
                covered = true;
                break;
            }
        }
        if !covered {
            return Ok(false);
        }
    }

    let dim = merged.ambient_dim();
    let mut f = LatticeVector::zero(dim);
    for h in merged.hrep() {
        f = f.add(h);
    }
    let height = |g: &LatticeVector| -> BigRational {
        let v = f.dot(g);
        debug_assert!(v.is_positive(), "truncating functional positive on cone");
        BigRational::from_integer(v)
    };
    let simplex_volume = |gens: &[LatticeVector]| -> BigRational {
        let d = BigRational::from_integer(det(gens).abs());
        gens.iter().fold(d, |acc, g| acc / height(g))
    };

    let mut vol_pieces = BigRational::zero();
    for p in pieces {
        vol_pieces += simplex_volume(p.generators());
    }
    let mut vol_merged = BigRational::zero();
    for simplex in lattice::triangulate_pulling(merged.generators(), dim)? {
        let gens: Vec<LatticeVector> = simplex
            .iter()
            .map(|&i| merged.generators()[i].clone())
            .collect();
        vol_merged += simplex_volume(&gens);
    }
    Ok(vol_pieces == vol_merged)
}

/// CartierData JSON: `{"gorenstein": bool, "fano": bool, "m": [["p/q", ...], ...]}`.
pub fn cartier_json(gorenstein: bool, fano: bool, per_cone_m: &[RationalVector]) -> String {
    #[derive(Serialize)]
    struct CartierJson {
        gorenstein: bool,
        fano: bool,
        m: Vec<Vec<String>>,
    }
    serde_json::to_string(&CartierJson {
        gorenstein,
        fano,
        m: per_cone_m.iter().map(RationalVector::entries_pq).collect(),
    })
    .expect("cartier data serializes")
}
