//! Acceptance suite: one test per shipped guarantee, each printing a
//! pass line with its runtime against the stated budget. Expected values
//! are exact; there are no tolerances anywhere.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num::BigInt;

use schubert_fans::classify::{self, wd_word};
use schubert_fans::fan::{
    anticanonical_cartier, cone_union_equals, flag_cone_ray_indices, flag_fan, grassmannian_fan,
    is_complete_sampled, is_fano, is_projective_space_fan, verify_ray_relations, CartierOutcome,
    Fan, NotGorensteinReason, SpaceTag,
};
use schubert_fans::lattice::{Cone, LatticeVector, RationalVector};
use schubert_fans::partition::{lambda_of, perm_of, Partition};
use schubert_fans::weyl::{coset_classes, lifts_of_v_closed_form, perm_from_word, Permutation};

fn pass_line(criterion: &str, what: &str, started: Instant, budget_s: u64) {
    let elapsed = started.elapsed();
    let budget = Duration::from_secs(budget_s);
    println!(
        "ACCEPTANCE {criterion} {what}: PASS ({elapsed:?} of {budget:?} budget)"
    );
    assert!(
        elapsed <= budget,
        "{criterion} exceeded its runtime budget: {elapsed:?} > {budget:?}"
    );
}

fn lv(coords: &[i64]) -> LatticeVector {
    LatticeVector::from_i64(coords)
}

fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn grassmannians(d: usize, n: usize) -> Vec<Permutation> {
    (1..=n)
        .combinations(d)
        .map(|first| {
            let mut v = first.clone();
            v.extend((1..=n).filter(|x| !first.contains(x)));
            Permutation::from_one_line(v).unwrap()
        })
        .collect()
}

/// Criterion 1: the enumerate command reproduces the Gr(2,4) table —
/// six varieties, the stated partitions, 2413 the only singular one,
/// everything Gorenstein, and the transposed pair isomorphic.
#[test]
fn criterion_01_gr24_table_reproduction() {
    let started = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_schubert-fans"))
        .args([
            "enumerate", "--n", "4", "--d", "2", "--filter", "all", "--format", "json",
        ])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let rows: Vec<serde_json::Value> =
        serde_json::from_slice(&out.stdout).expect("enumerate emits a JSON array");
    assert_eq!(rows.len(), 6);

    let field = |r: &serde_json::Value, k: &str| r[k].clone();
    let lambdas: BTreeSet<String> = rows
        .iter()
        .map(|r| field(r, "lambda").as_str().unwrap().to_string())
        .collect();
    assert_eq!(
        lambdas,
        ["", "1", "1,1", "2", "2,1", "2,2"]
            .into_iter()
            .map(String::from)
            .collect()
    );
    for r in &rows {
        let w = field(r, "perm").as_str().unwrap().to_string();
        assert_eq!(field(r, "gorenstein"), true, "{w} must be Gorenstein");
        assert_eq!(
            field(r, "smooth") == false,
            w == "2413",
            "only 2413 is singular"
        );
    }
    let iso = |w: &str| {
        rows.iter()
            .find(|r| r["perm"] == w)
            .map(|r| r["iso_canonical"].clone())
            .unwrap()
    };
    assert_eq!(iso("1423"), iso("2314"));
    pass_line("C1", "Gr(2,4) table reproduction", started, 1);
}

/// Criterion 2: the flag fans of s_1 s_2 and s_1 s_3 s_2 match the ray
/// matrices and cone tables entry-for-entry.
#[test]
fn criterion_02_ray_matrix_fidelity() {
    let started = Instant::now();

    let f2 = flag_fan(&schubert_fans::ReducedWord::new(vec![1, 2], 4).unwrap()).unwrap();
    assert_eq!(
        f2.rays(),
        &[lv(&[1, 0]), lv(&[0, 1]), lv(&[-1, 1]), lv(&[0, -1])]
    );
    assert_eq!(
        f2.max_cones(),
        &[vec![0, 1], vec![1, 2], vec![0, 3], vec![2, 3]]
    );
    assert_eq!(
        f2.labels(),
        &[perm("1234"), perm("2134"), perm("1324"), perm("2314")]
    );

    let f3 = flag_fan(&schubert_fans::ReducedWord::new(vec![1, 3, 2], 4).unwrap()).unwrap();
    assert_eq!(
        f3.rays(),
        &[
            lv(&[1, 0, 0]),
            lv(&[0, 1, 0]),
            lv(&[0, 0, 1]),
            lv(&[-1, 0, 1]),
            lv(&[0, -1, 1]),
            lv(&[0, 0, -1]),
        ]
    );
    let expected_cones: Vec<Vec<usize>> = vec![
        vec![0, 1, 2], // e
        vec![1, 2, 3], // s_1
        vec![0, 2, 4], // s_3
        vec![0, 1, 5], // s_2
        vec![2, 3, 4], // s_1 s_3
        vec![1, 3, 5], // s_1 s_2
        vec![0, 4, 5], // s_3 s_2
        vec![3, 4, 5], // s_1 s_3 s_2
    ];
    assert_eq!(f3.max_cones(), &expected_cones);
    assert_eq!(
        f3.labels(),
        &[
            perm("1234"),
            perm("2134"),
            perm("1243"),
            perm("1324"),
            perm("2143"),
            perm("2314"),
            perm("1423"),
            perm("2413"),
        ]
    );
    pass_line("C2", "ray-matrix fidelity", started, 1);
}

/// Criterion 3: projecting X_2314 to the Grassmannian merges the flag
/// cones along [e] = {e, s_1}, [s_2], [s_1 s_2] and yields the fan of
/// the projective plane.
#[test]
fn criterion_03_projection_fidelity() {
    let started = Instant::now();
    let word = schubert_fans::ReducedWord::new(vec![1, 2], 4).unwrap();
    let classes = coset_classes(&word, 2).unwrap();
    assert_eq!(classes.len(), 3);

    let as_perms = |members: &[Vec<usize>]| -> BTreeSet<Permutation> {
        members.iter().map(|j| word.subword_perm(j)).collect()
    };
    assert_eq!(classes[0].representative, perm("1234"));
    assert_eq!(
        as_perms(&classes[0].members),
        BTreeSet::from([perm("1234"), perm("2134")])
    );
    assert_eq!(classes[1].representative, perm("1324"));
    assert_eq!(as_perms(&classes[1].members), BTreeSet::from([perm("1324")]));
    assert_eq!(classes[2].representative, perm("2314"));
    assert_eq!(as_perms(&classes[2].members), BTreeSet::from([perm("2314")]));

    let fan = grassmannian_fan(&perm("2314"), 2).unwrap();
    assert_eq!(is_projective_space_fan(&fan), Some(2));
    pass_line("C3", "projection fidelity", started, 1);
}

/// Criterion 4: for d = 1..5 the fan of w_d has the stated ray and cone
/// counts, satisfies the ray relations, is Gorenstein with integral
/// Cartier data, Fano by exact strict inequalities, and complete under
/// 10^4 seeded samples. At d = 1 the rays v_1 and v_d coincide, so the
/// distinct-ray count is 2.
#[test]
fn criterion_04_theorem_at_desk_scale() {
    let started = Instant::now();
    for d in 1..=5usize {
        let fan = schubert_fans::fan::wd_fan(d).unwrap();
        let expected_rays = if d == 1 { 2 } else { 2 * d + 1 };
        assert_eq!(fan.rays().len(), expected_rays, "rays at d={d}");
        assert_eq!(fan.max_cones().len(), d * d + 1, "cones at d={d}");
        if d >= 2 {
            assert!(verify_ray_relations(d).unwrap(), "relations at d={d}");
        }
        let CartierOutcome::Gorenstein(data) = anticanonical_cartier(&fan).unwrap() else {
            panic!("w_{d} must be Gorenstein");
        };
        assert!(
            data.per_cone_m.iter().all(RationalVector::is_integral),
            "integral Cartier data at d={d}"
        );
        assert!(is_fano(&fan, &data).unwrap(), "Fano at d={d}");
        assert!(
            is_complete_sampled(&fan, 10_000, 42),
            "completeness at d={d}"
        );
    }
    pass_line("C4", "Gorenstein Fano family w_d, d <= 5", started, 30);
}

/// Criterion 5: lift-class arithmetic over w_d — sizes sum to 2^(2d-1)
/// for d <= 5, brute force equals the closed form set-for-set for
/// d <= 4, and the d = 3 table has exactly the ten known classes.
#[test]
fn criterion_05_lift_class_arithmetic() {
    let started = Instant::now();
    for d in 2..=5usize {
        let classes = coset_classes(&wd_word(d).unwrap(), d).unwrap();
        let total: usize = classes.iter().map(|c| c.members.len()).sum();
        assert_eq!(total, 1 << (2 * d - 1), "sizes sum at d={d}");
    }
    for d in 1..=4usize {
        let classes = coset_classes(&wd_word(d).unwrap(), d).unwrap();
        let mut seen = 0usize;
        for class in &classes {
            let lam = lambda_of(&class.representative, d).unwrap();
            let (a, b) = match lam.is_hook() {
                Some((x, y)) => (d - x, d - y - 1),
                None => {
                    assert!(lam.is_empty());
                    (0, d)
                }
            };
            let want = lifts_of_v_closed_form(d, a, b).unwrap();
            assert_eq!(class.members, want, "class of {} at d={d}", class.representative);
            seen += 1;
        }
        assert_eq!(seen, classes.len());
    }
    // the ten d = 3 classes, by their reduced words
    let classes = coset_classes(&wd_word(3).unwrap(), 3).unwrap();
    assert_eq!(classes.len(), 10);
    let got: BTreeSet<Permutation> = classes.iter().map(|c| c.representative.clone()).collect();
    let words: [&[usize]; 10] = [
        &[5, 4, 1, 2, 3],
        &[4, 1, 2, 3],
        &[1, 2, 3],
        &[5, 4, 2, 3],
        &[4, 2, 3],
        &[2, 3],
        &[5, 4, 3],
        &[4, 3],
        &[3],
        &[],
    ];
    let want: BTreeSet<Permutation> = words
        .iter()
        .map(|w| perm_from_word(w, 6).unwrap())
        .collect();
    assert_eq!(got, want);
    pass_line("C5", "lift-class arithmetic", started, 20);
}

/// Criterion 6: for d <= 4 every merged cone C_v is certified as the
/// exact union of its flag pieces; C_e is tiled by 2^(2d-2) unimodular
/// pieces.
#[test]
fn criterion_06_cone_merge_soundness() {
    let started = Instant::now();
    for d in 1..=4usize {
        let word = wd_word(d).unwrap();
        let m = 2 * d - 1;
        let classes = coset_classes(&word, d).unwrap();
        let flag = flag_fan(&word).unwrap();
        let merged_fan = schubert_fans::fan::wd_fan(d).unwrap();
        for class in &classes {
            let idx = merged_fan
                .labels()
                .iter()
                .position(|l| l == &class.representative)
                .expect("one merged cone per class");
            let merged = merged_fan.cone(idx).unwrap();
            let pieces: Vec<Cone> = class
                .members
                .iter()
                .map(|j| {
                    let gens: Vec<LatticeVector> = flag_cone_ray_indices(m, j)
                        .into_iter()
                        .map(|k| flag.rays()[k].clone())
                        .collect();
                    Cone::from_generators(&gens, m).unwrap()
                })
                .collect();
            if class.representative.is_identity() {
                assert_eq!(pieces.len(), 1 << (2 * d - 2), "C_e pieces at d={d}");
                assert!(pieces.iter().all(Cone::is_unimodular));
            }
            assert!(
                cone_union_equals(&merged, &pieces).unwrap(),
                "tiling of C_{} at d={d}",
                class.representative
            );
        }
    }
    pass_line("C6", "cone-merge soundness", started, 60);
}

/// Criterion 7: every smooth toric Schubert variety in Gr(d, n) with
/// n <= 8 has the fan of a projective space of its dimension.
#[test]
fn criterion_07_smooth_toric_is_projective_space() {
    let started = Instant::now();
    let mut checked = 0usize;
    for n in 2..=8usize {
        for d in 1..n {
            for w in grassmannians(d, n) {
                if !classify::is_toric(&w, d).unwrap() || !classify::is_smooth(&w, d).unwrap() {
                    continue;
                }
                let fan = grassmannian_fan(&w, d).unwrap();
                assert_eq!(
                    is_projective_space_fan(&fan),
                    Some(w.length()),
                    "Gr({d},{n}), w={w}"
                );
                checked += 1;
            }
        }
    }
    assert!(checked > 100, "the sweep covers the smooth toric families");
    pass_line("C7", "smooth toric varieties are projective spaces", started, 30);
}

/// Criterion 8: the sorted-prefix Bruhat criterion agrees with the
/// subword oracle on all of S_n for n <= 6, and with componentwise
/// partition comparison on all Grassmannian pairs for n <= 7.
#[test]
fn criterion_08_bruhat_partition_duality() {
    let started = Instant::now();
    for n in 2..=6usize {
        let perms: Vec<Permutation> = (1..=n)
            .permutations(n)
            .map(|v| Permutation::from_one_line(v).unwrap())
            .collect();
        for w in &perms {
            let below: BTreeSet<Permutation> =
                w.reduced_word().subwords().map(|(_, p)| p).collect();
            for u in &perms {
                assert_eq!(
                    u.bruhat_leq(w),
                    below.contains(u),
                    "subword oracle at u={u}, w={w}"
                );
            }
        }
    }
    for n in 2..=7usize {
        for d in 1..n {
            let gs = grassmannians(d, n);
            for w in &gs {
                let lw = lambda_of(w, d).unwrap();
                for v in &gs {
                    let lvp = lambda_of(v, d).unwrap();
                    assert_eq!(
                        v.bruhat_leq(w),
                        lvp.leq(&lw),
                        "partition order at v={v}, w={w}, d={d}"
                    );
                }
            }
        }
    }
    pass_line("C8", "Bruhat/partition duality", started, 60);
}

/// Criterion 9: the three toric criteria agree on every Grassmannian
/// permutation for n <= 8 (any disagreement would surface as a
/// ClassifierBug error), and the toric count is d(n-d) + 1.
#[test]
fn criterion_09_classifier_consistency() {
    let started = Instant::now();
    for n in 2..=8usize {
        for d in 1..n {
            let count = grassmannians(d, n)
                .iter()
                .filter(|w| classify::is_toric(w, d).expect("criteria agree"))
                .count();
            assert_eq!(count, d * (n - d) + 1, "toric count in Gr({d},{n})");
        }
    }
    pass_line("C9", "classifier consistency", started, 30);
}

/// Criterion 10: the verdict paths are falsifiable — a perturbed square
/// cone is reported non-Gorenstein, and a complete Gorenstein fan that
/// is not Fano is reported as such.
#[test]
fn criterion_10_falsifiability() {
    let started = Instant::now();

    let perturbed = Fan::new(
        3,
        vec![lv(&[1, 0, 0]), lv(&[0, 1, 0]), lv(&[-1, 0, 1]), lv(&[0, -1, 2])],
        vec![vec![0, 1, 2, 3]],
        vec![Permutation::identity(4)],
        SpaceTag::Grassmannian,
    )
    .unwrap();
    assert_eq!(
        anticanonical_cartier(&perturbed).unwrap(),
        CartierOutcome::NotGorenstein {
            cone: 0,
            reason: NotGorensteinReason::Inconsistent
        }
    );

    // the Hirzebruch surface F_2: smooth and complete but not Fano
    let f2 = Fan::new(
        2,
        vec![lv(&[1, 0]), lv(&[0, 1]), lv(&[-1, 2]), lv(&[0, -1])],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
        vec![
            Permutation::identity(2),
            Permutation::identity(2),
            Permutation::identity(2),
            Permutation::identity(2),
        ],
        SpaceTag::Grassmannian,
    )
    .unwrap();
    assert!(is_complete_sampled(&f2, 10_000, 42));
    let CartierOutcome::Gorenstein(data) = anticanonical_cartier(&f2).unwrap() else {
        panic!("smooth fan has integral Cartier data");
    };
    assert!(!is_fano(&f2, &data).unwrap());
    pass_line("C10", "falsifiability of the verdict paths", started, 1);
}

/// The Cartier values pinned for w_2: the square cone solves to
/// (-1, -1, -2) and the full w-cone to (2, 2, 1); both routes through
/// the solver stay exact.
#[test]
fn wd2_cartier_values_pinned() {
    let fan = schubert_fans::fan::wd_fan(2).unwrap();
    let CartierOutcome::Gorenstein(data) = anticanonical_cartier(&fan).unwrap() else {
        panic!("w_2 is Gorenstein");
    };
    assert_eq!(data.per_cone_m[0], RationalVector::from_i64(&[-1, -1, -2]));
    assert_eq!(data.per_cone_m[4], RationalVector::from_i64(&[2, 2, 1]));
    // spot check of the strict inequality of the support function
    let m0 = &data.per_cone_m[0];
    let w3 = lv(&[0, 0, -1]);
    assert_eq!(w3.dot_rational(m0), num::BigRational::from_integer(BigInt::from(2)));
}

/// The grassmannian_fan construction and the direct case analysis agree
/// as labeled fans, and the merged fan has one cone per Grassmannian
/// element below w_d.
#[test]
fn wd_fan_cross_construction() {
    for d in 1..=4usize {
        let w = wd_word(d).unwrap().permutation();
        let direct = schubert_fans::fan::wd_fan(d).unwrap();
        let merged = grassmannian_fan(&w, d).unwrap();
        assert_eq!(direct, merged, "d = {d}");

        let below = grassmannians(d, 2 * d)
            .iter()
            .filter(|v| v.bruhat_leq(&w))
            .count();
        assert_eq!(direct.max_cones().len(), below, "cone count at d = {d}");
    }
}

/// Maximal-cone counts of merged fans equal the number of Grassmannian
/// elements below w, for every toric Schubert variety with n <= 7.
#[test]
fn merged_cone_counts_match_bruhat_intervals() {
    for n in 2..=7usize {
        for d in 1..n {
            for w in grassmannians(d, n) {
                if !classify::is_toric(&w, d).unwrap() {
                    continue;
                }
                let fan = grassmannian_fan(&w, d).unwrap();
                let below = grassmannians(d, n)
                    .iter()
                    .filter(|v| v.bruhat_leq(&w))
                    .count();
                assert_eq!(fan.max_cones().len(), below, "Gr({d},{n}), w={w}");
            }
        }
    }
}
