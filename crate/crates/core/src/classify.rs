//! Decision procedures for Schubert varieties in `Gr(d, n)`: toric,
//! smooth, Gorenstein, and the isomorphism class of the variety, together
//! with the canonical reduced words of the toric and `w_d` families.
//!
//! The toric test evaluates three equivalent criteria (hook-shaped
//! partition, canonical reduced word, one-line pattern) and insists they
//! agree; a disagreement is reported as `ClassifierBug` rather than
//! silently trusting one route.

use serde::Serialize;
use thiserror::Error;

use crate::partition::{self, Partition};
use crate::weyl::{Permutation, ReducedWord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("permutation {w} is not Grassmannian at descent {d}")]
    NotGrassmannian { w: String, d: usize },
    #[error("invalid hook parameters x={x}, y={y} for Gr({d},{n})")]
    InvalidHookParams { x: usize, y: usize, d: usize, n: usize },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("internal classifier disagreement: {0}")]
    ClassifierBug(String),
    #[error("descent position {d} out of range for rank {n}")]
    InvalidDescent { d: usize, n: usize },
}

fn require_grassmannian(w: &Permutation, d: usize) -> Result<(), ClassifyError> {
    let n = w.n();
    if d < 1 || d >= n {
        return Err(ClassifyError::InvalidDescent { d, n });
    }
    if !w.is_grassmannian(d).expect("d validated") {
        return Err(ClassifyError::NotGrassmannian {
            w: w.to_string(),
            d,
        });
    }
    Ok(())
}

/// The canonical reduced word of the toric Schubert variety with hook
/// `(x, 1^y)` in `Gr(d, n)`:
/// `s_{d+x-1} s_{d+x-2} ... s_{d+1} s_{d-y} s_{d-y+1} ... s_d`,
/// where the descending prefix is empty for `x = 1`.
pub fn toric_word(x: usize, y: usize, d: usize, n: usize) -> Result<ReducedWord, ClassifyError> {
    if d < 1 || d >= n || x < 1 || x > n - d || y > d - 1 {
        return Err(ClassifyError::InvalidHookParams { x, y, d, n });
    }
    let mut letters: Vec<usize> = (d + 1..=d + x - 1).rev().collect();
    letters.extend(d - y..=d);
    Ok(ReducedWord::new(letters, n).expect("hook words are reduced"))
}

/// The word `w_d = s_{2d-1} s_{2d-2} ... s_{d+1} s_1 ... s_d` in `S_{2d}`,
/// the singular Gorenstein toric model with `λ = (d, 1^{d-1})` in `Gr(d, 2d)`.
pub fn wd_word(d: usize) -> Result<ReducedWord, ClassifyError> {
    if d < 1 {
        return Err(ClassifyError::InvalidParam("d must be at least 1".into()));
    }
    toric_word(d, d - 1, d, 2 * d)
}

/// One-line pattern `1 ... p  p+2 ... d  f | p+1  d+1 ... f-1  f+1 ... n`.
fn one_line_pattern_hook(p: usize, f: usize, d: usize, n: usize) -> Permutation {
    let mut v: Vec<usize> = (1..=p).collect();
    v.extend(p + 2..=d);
    v.push(f);
    v.push(p + 1);
    v.extend(d + 1..=f - 1);
    v.extend(f + 1..=n);
    Permutation::from_one_line(v).expect("pattern is a bijection")
}

/// One-line pattern `1 ... d-1  f | d ... f-1  f+1 ... n`.
fn one_line_pattern_row(f: usize, d: usize, n: usize) -> Permutation {
    let mut v: Vec<usize> = (1..=d - 1).collect();
    v.push(f);
    v.extend(d..=f - 1);
    v.extend(f + 1..=n);
    Permutation::from_one_line(v).expect("pattern is a bijection")
}

/// Whether `X_w` in `Gr(d, n)` is a toric variety for the maximal torus.
///
/// Evaluates all three equivalent criteria — hook/empty partition,
/// canonical reduced-word form, one-line patterns — and returns their
/// common verdict.
pub fn is_toric(w: &Permutation, d: usize) -> Result<bool, ClassifyError> {
    require_grassmannian(w, d)?;
    let n = w.n();
    let lambda = partition::lambda_of(w, d).expect("Grassmannian checked");

    let by_partition = lambda.is_empty() || lambda.is_hook().is_some();

    let by_word = w.is_identity()
        || (1..=n - d).any(|x| {
            (0..=d - 1).any(|y| {
                toric_word(x, y, d, n)
                    .map(|word| word.permutation() == *w)
                    .unwrap_or(false)
            })
        });

    let by_pattern = w.is_identity()
        || (d + 1..=n).any(|f| one_line_pattern_row(f, d, n) == *w)
        || (d + 1..=n)
            .any(|f| (0..d.saturating_sub(1)).any(|p| one_line_pattern_hook(p, f, d, n) == *w));

    if by_partition != by_word || by_partition != by_pattern {
        return Err(ClassifyError::ClassifierBug(format!(
            "toric criteria disagree on {w}: partition={by_partition}, word={by_word}, pattern={by_pattern}"
        )));
    }
    Ok(by_partition)
}

/// Smoothness of `X_w` in `Gr(d, n)`: the partition is empty or a single
/// rectangle. For toric `w` the verdict is cross-checked against the
/// row/column word forms.
pub fn is_smooth(w: &Permutation, d: usize) -> Result<bool, ClassifyError> {
    require_grassmannian(w, d)?;
    let n = w.n();
    let lambda = partition::lambda_of(w, d).expect("Grassmannian checked");
    let general = lambda.is_single_rectangle();

    if is_toric(w, d)? {
        let by_word = w.is_identity()
            || (2..=n - d).any(|x| toric_word(x, 0, d, n).unwrap().permutation() == *w)
            || (0..=d - 1).any(|y| toric_word(1, y, d, n).unwrap().permutation() == *w);
        if by_word != general {
            return Err(ClassifyError::ClassifierBug(format!(
                "smoothness criteria disagree on {w}: rectangle={general}, word={by_word}"
            )));
        }
    }
    Ok(general)
}

/// Gorenstein property of `X_w` in `Gr(d, n)`: all corners of the
/// partition lie on one antidiagonal. For toric `w` the verdict is
/// cross-checked against the balanced-hook word form
/// `s_{d+k-1} ... s_{d+1} s_{d-k+1} ... s_d`.
pub fn is_gorenstein(w: &Permutation, d: usize) -> Result<bool, ClassifyError> {
    require_grassmannian(w, d)?;
    let n = w.n();
    let lambda = partition::lambda_of(w, d).expect("Grassmannian checked");
    let general =
        partition::corners_same_antidiagonal(&lambda, d, n).expect("fits by construction");

    if is_toric(w, d)? {
        let by_word = is_smooth(w, d)?
            || (1..=d.min(n - d))
                .any(|k| toric_word(k, k - 1, d, n).unwrap().permutation() == *w);
        if by_word != general {
            return Err(ClassifyError::ClassifierBug(format!(
                "Gorenstein criteria disagree on {w}: antidiagonal={general}, word={by_word}"
            )));
        }
    }
    Ok(general)
}

/// Canonical form of a partition under transposition: the lexicographically
/// smaller of `λ` and its transpose, so two Schubert varieties are
/// isomorphic iff their canonical forms coincide.
pub fn iso_canonical(lambda: &Partition) -> Partition {
    lambda.clone().min(lambda.transpose())
}

/// Aggregate classification of `X_w` in `Gr(d, n)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassificationReport {
    pub w: Permutation,
    pub d: usize,
    pub n: usize,
    pub lambda: Partition,
    pub is_toric: bool,
    pub is_smooth: bool,
    pub is_gorenstein: bool,
    pub hook: Option<(usize, usize)>,
    pub dimension: usize,
    pub iso_canonical: Partition,
}

#[derive(Serialize)]
struct ReportJson {
    perm: String,
    d: usize,
    n: usize,
    lambda: String,
    toric: bool,
    smooth: bool,
    gorenstein: bool,
    hook_x: Option<usize>,
    hook_y: Option<usize>,
    dim: usize,
    iso_canonical: String,
}

impl ClassificationReport {
    /// Flat JSON object with fixed key order.
    pub fn to_json(&self) -> String {
        let json = ReportJson {
            perm: self.w.to_string(),
            d: self.d,
            n: self.n,
            lambda: self.lambda.to_string(),
            toric: self.is_toric,
            smooth: self.is_smooth,
            gorenstein: self.is_gorenstein,
            hook_x: self.hook.map(|(x, _)| x),
            hook_y: self.hook.map(|(_, y)| y),
            dim: self.dimension,
            iso_canonical: self.iso_canonical.to_string(),
        };
        serde_json::to_string(&json).expect("report serializes")
    }
}

pub fn classify_report(w: &Permutation, d: usize) -> Result<ClassificationReport, ClassifyError> {
    require_grassmannian(w, d)?;
    let lambda = partition::lambda_of(w, d).expect("Grassmannian checked");
    Ok(ClassificationReport {
        w: w.clone(),
        d,
        n: w.n(),
        lambda: lambda.clone(),
        is_toric: is_toric(w, d)?,
        is_smooth: is_smooth(w, d)?,
        is_gorenstein: is_gorenstein(w, d)?,
        hook: lambda.is_hook(),
        dimension: w.length(),
        iso_canonical: iso_canonical(&lambda),
    })
}
