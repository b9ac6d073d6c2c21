//! Property checks shared by the `properties` and `acceptance` targets. Each
//! entry drives a proptest runner from a fixed seed, so runs are repeatable.

#![allow(dead_code)]

use std::f64::consts::PI;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseResult, TestRng, TestRunner};

use qmix::channels::{embed_graph, random_unitary_channel, Superoperator};
use qmix::constructions::{
    covariant_haagerup_itoh, creation_operators, grothendieck_assembly, hodge_star, lift_matrix,
};
use qmix::experiments::{run, Command, ExperimentConfig};
use qmix::linalg::{self, haar_unitary, real, CMatrix, Rng, C64};
use qmix::norms::{
    cut_norm_superop, epsilon, grothendieck_norm_lower, lambda, linf_l1_phase_grid, matrix_cut_norm,
    matrix_lpq_norm, s1_sinfty_norm, s2s2_norm, sinfty_s1_norm, sinfty_s1_norm_from, AscentOptions, CutMode,
    NormEstimate, Witness,
};
use qmix::symmetry::{check_covariance, is_irreducible, permutation_matrix, transitive_cover_group, twirl, RepresentedGroup};

pub type Property = (&'static str, fn() -> Result<(), String>);

fn check<S: Strategy>(seed: u8, cases: u32, strategy: S, test: impl Fn(S::Value) -> TestCaseResult) -> Result<(), String> {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]);
    TestRunner::new_with_rng(config, rng).run(&strategy, test).map_err(|e| e.to_string())
}

fn ok<T>(r: qmix::Result<T>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

/// Circulant with nonnegative weights summing to one; `weights[0]` sits on
/// the diagonal.
fn circulant(weights: &[f64]) -> CMatrix {
    let n = weights.len();
    let total: f64 = weights.iter().sum();
    CMatrix::from_fn(n, n, |i, j| real(weights[(j + n - i) % n] / total))
}

fn random_graph(n: usize, rng: &mut Rng) -> CMatrix {
    let mut a = CMatrix::zeros(n, n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.uniform() < 0.5 {
                a[(u, v)] = real(1.0);
                a[(v, u)] = real(1.0);
            }
        }
    }
    let degree = (0..n).map(|i| (0..n).map(|j| a[(i, j)].re).sum::<f64>()).fold(1.0, f64::max);
    a.scale_real(1.0 / degree)
}

fn centered(a: &CMatrix) -> CMatrix {
    let n = a.rows() as f64;
    a.map(|z| z - real(1.0 / n))
}

fn cyclic_shift(n: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |i, j| real(if i == (j + 1) % n { 1.0 } else { 0.0 }))
}

fn seed_and_size(max_n: usize) -> impl Strategy<Value = (u64, usize)> {
    (any::<u64>(), 2..=max_n)
}

fn schatten_dominates_diagonal() -> Result<(), String> {
    check(1, 32, seed_and_size(6), |(seed, n)| {
        let x = linalg::ginibre(n, &mut Rng::new(seed));
        for p in [1.0, 1.5, 2.0, 3.0, f64::INFINITY] {
            let s = ok(linalg::schatten_norm(&x, p))?;
            let d = ok(linalg::lp_norm(&x.diagonal(), p))?;
            prop_assert!(s >= d - 1e-12, "p={p}: {s} < {d}");
        }
        Ok(())
    })
}

fn schatten_unitary_invariance() -> Result<(), String> {
    check(2, 32, seed_and_size(6), |(seed, n)| {
        let mut rng = Rng::new(seed);
        let x = linalg::ginibre(n, &mut rng);
        let u = ok(haar_unitary(n, &mut rng))?;
        let v = ok(haar_unitary(n, &mut rng))?;
        let moved = u.matmul(&x).matmul(&v);
        for p in [1.0, 2.0, 4.0, f64::INFINITY] {
            let a = ok(linalg::schatten_norm(&x, p))?;
            let b = ok(linalg::schatten_norm(&moved, p))?;
            prop_assert!((a - b).abs() <= 1e-10 * a.max(1.0), "p={p}: {a} vs {b}");
        }
        Ok(())
    })
}

fn holder_inequality() -> Result<(), String> {
    check(3, 32, (any::<u64>(), 2..=6usize, 1.0..6.0f64), |(seed, n, p)| {
        let mut rng = Rng::new(seed);
        let x = linalg::ginibre(n, &mut rng);
        let y = linalg::ginibre(n, &mut rng);
        let q = ok(linalg::dual_exponent(p))?;
        let lhs = ok(linalg::inner_normalized(&x, &y))?.norm();
        let rhs = ok(linalg::schatten_norm(&x, p))? * ok(linalg::schatten_norm(&y, q))?;
        prop_assert!(lhs <= rhs * (1.0 + 1e-12), "{lhs} > {rhs}");
        Ok(())
    })
}

fn polar_maximality() -> Result<(), String> {
    check(4, 16, seed_and_size(5), |(seed, n)| {
        let mut rng = Rng::new(seed);
        let x = linalg::ginibre(n, &mut rng);
        let w0 = ok(linalg::polar_unitary(&x))?;
        let best = w0.adjoint().matmul(&x).trace().re;
        for _ in 0..100 {
            let w = ok(haar_unitary(n, &mut rng))?;
            let other = w.adjoint().matmul(&x).trace().norm();
            prop_assert!(best >= other - 1e-10, "{best} < {other}");
        }
        Ok(())
    })
}

fn embedding_is_linear() -> Result<(), String> {
    check(5, 32, seed_and_size(5), |(seed, n)| {
        let mut rng = Rng::new(seed);
        let a = linalg::ginibre(n, &mut rng);
        let b = linalg::ginibre(n, &mut rng);
        let (alpha, beta) = (rng.complex_normal(), rng.complex_normal());
        let combined = ok(embed_graph(&(&a.scale(alpha) + &b.scale(beta))))?;
        let separate = &ok(embed_graph(&a))?.scale(alpha) + &ok(embed_graph(&b))?.scale(beta);
        prop_assert!(combined.max_abs_diff(&separate) <= 1e-12);
        let x = linalg::ginibre(n, &mut rng);
        let lhs = ok(combined.apply(&x))?;
        let rhs = ok(separate.apply(&x))?;
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
        Ok(())
    })
}

fn embedding_reads_only_the_diagonal() -> Result<(), String> {
    check(6, 32, seed_and_size(6), |(seed, n)| {
        let mut rng = Rng::new(seed);
        let phi = ok(embed_graph(&linalg::ginibre(n, &mut rng)))?;
        let x = linalg::ginibre(n, &mut rng);
        let noise = linalg::ginibre(n, &mut rng);
        let perturbed = CMatrix::from_fn(n, n, |i, j| if i == j { x[(i, j)] } else { noise[(i, j)] });
        prop_assert!(ok(phi.apply(&x))?.max_abs_diff(&ok(phi.apply(&perturbed))?) <= 1e-14);
        Ok(())
    })
}

fn adjoint_is_involution() -> Result<(), String> {
    check(7, 32, seed_and_size(5), |(seed, n)| {
        let mut rng = Rng::new(seed);
        let phi = ok(Superoperator::from_rep(n, linalg::ginibre(n * n, &mut rng)))?;
        prop_assert!(phi.adjoint().adjoint().max_abs_diff(&phi) <= 1e-12);
        Ok(())
    })
}

fn random_channels_are_unital_cptp() -> Result<(), String> {
    check(8, 32, (any::<u64>(), 2..=6usize, 1..=4usize), |(seed, n, m)| {
        let phi = ok(random_unitary_channel(n, m, &mut Rng::new(seed)))?;
        let image = ok(phi.apply(&CMatrix::identity(n)))?;
        prop_assert!(image.max_abs_diff(&CMatrix::identity(n)) <= 1e-10);
        let report = ok(phi.is_cptp(1e-10))?;
        prop_assert!(report.is_channel(), "{:?}", report.violation());
        Ok(())
    })
}

fn cut_below_sinfty_s1() -> Result<(), String> {
    check(9, 16, (any::<u64>(), 2..=4usize, 1..=3usize), |(seed, n, m)| {
        let opts = AscentOptions::with_seed(seed).restarts(4);
        let shifted = ok(random_unitary_channel(n, m, &mut Rng::new(seed)))?.minus_pi();
        let cut = ok(cut_norm_superop(&shifted, &opts))?;
        // Projectors lie in the S_∞ unit ball, so the cut witness is a valid start.
        let starts = match &cut.witness {
            Some(Witness::Matrices { x, .. }) => vec![x.clone()],
            _ => Vec::new(),
        };
        let inf = ok(sinfty_s1_norm_from(&shifted, &opts, &starts))?;
        prop_assert!(cut.value <= inf.value + 1e-8, "cut {} > {}", cut.value, inf.value);
        Ok(())
    })?;
    // Embedded graphs: the brute-force cut is exact, so the π² side is checkable.
    check(10, 16, seed_and_size(6), |(seed, n)| {
        let a = random_graph(n, &mut Rng::new(seed));
        let shifted = ok(embed_graph(&a))?.minus_pi();
        let inf = ok(sinfty_s1_norm(&shifted, &AscentOptions::with_seed(seed).restarts(8)))?.value;
        let cut = ok(matrix_cut_norm(&centered(&a), CutMode::Brute, &AscentOptions::default()))?.value;
        prop_assert!(inf <= PI * PI * cut + 1e-6, "{inf} > pi^2 {cut}");
        Ok(())
    })
}

fn mixing_lemma() -> Result<(), String> {
    check(11, 24, (any::<u64>(), 2..=6usize, 1..=4usize), |(seed, n, m)| {
        let phi = ok(random_unitary_channel(n, m, &mut Rng::new(seed)))?;
        let eps = ok(epsilon(&phi, &AscentOptions::with_seed(seed).restarts(4)))?.value;
        let lam = ok(lambda(&phi))?.value;
        prop_assert!(eps <= lam + 1e-9, "eps {eps} > lambda {lam}");
        Ok(())
    })
}

fn ascent_estimates(seed: u64, n: usize) -> qmix::Result<Vec<(&'static str, NormEstimate, Result<f64, String>)>> {
    let mut rng = Rng::new(seed);
    let phi = random_unitary_channel(n, 2, &mut rng)?.minus_pi();
    let a = linalg::ginibre(n, &mut rng);
    let opts = AscentOptions::with_seed(seed).restarts(3);
    let mut out = Vec::new();
    for (name, est) in [
        ("sinfty_s1", sinfty_s1_norm(&phi, &opts)?),
        ("cut", cut_norm_superop(&phi, &opts)?),
        ("s1_sinfty", s1_sinfty_norm(&phi, &opts)?),
        ("s2s2", s2s2_norm(&phi)?),
    ] {
        let replay = est.witness.as_ref().map(|w| w.evaluate_superop(&phi).map_err(|e| e.to_string()));
        out.push((name, est, replay.unwrap_or_else(|| Err("no witness".into()))));
    }
    for (name, est) in [
        ("matrix inf-1", matrix_lpq_norm(&a, f64::INFINITY, 1.0, &opts)?),
        ("matrix cut", matrix_cut_norm(&a, CutMode::Ascent, &opts)?),
        ("matrix grothendieck", grothendieck_norm_lower(&a, 3, &opts)?),
    ] {
        let replay = est.witness.as_ref().map(|w| w.evaluate_matrix(&a).map_err(|e| e.to_string()));
        out.push((name, est, replay.unwrap_or_else(|| Err("no witness".into()))));
    }
    Ok(out)
}

fn monotone_ascent() -> Result<(), String> {
    check(12, 16, seed_and_size(5), |(seed, n)| {
        for (name, est, _) in ok(ascent_estimates(seed, n))? {
            prop_assert!(
                est.max_sweep_drop <= 1e-12 * est.value.max(1.0),
                "{name}: objective dropped by {}",
                est.max_sweep_drop
            );
        }
        Ok(())
    })
}

fn witnesses_replay() -> Result<(), String> {
    check(13, 16, seed_and_size(5), |(seed, n)| {
        for (name, est, replay) in ok(ascent_estimates(seed, n))? {
            let value = replay.map_err(TestCaseError::fail)?;
            prop_assert!((value - est.value).abs() <= 1e-9, "{name}: {value} vs {}", est.value);
        }
        Ok(())
    })
}

fn embedding_equalities() -> Result<(), String> {
    check(14, 24, seed_and_size(8), |(seed, n)| {
        let a = random_graph(n, &mut Rng::new(seed));
        let b = centered(&a);
        let shifted = ok(embed_graph(&a))?.minus_pi();
        let opts = AscentOptions::with_seed(seed).restarts(128);
        let s2 = ok(s2s2_norm(&shifted))?.value;
        let l2 = ok(matrix_lpq_norm(&b, 2.0, 2.0, &opts))?.value;
        prop_assert!((s2 - l2).abs() <= 1e-8, "S2 {s2} vs {l2}");
        let s1 = ok(s1_sinfty_norm(&shifted, &opts))?.value;
        let l1 = ok(matrix_lpq_norm(&b, 1.0, f64::INFINITY, &opts))?.value;
        prop_assert!((s1 - l1).abs() <= 1e-8, "S1->Sinf {s1} vs {l1}");
        let cut = ok(cut_norm_superop(&shifted, &opts))?.value;
        let brute = ok(matrix_cut_norm(&b, CutMode::Brute, &opts))?.value;
        prop_assert!(brute <= cut + 1e-6 && cut <= brute + 1e-6, "cut {cut} vs brute {brute}");
        let inf = ok(sinfty_s1_norm(&shifted, &opts))?.value;
        let matrix_inf = ok(matrix_lpq_norm(&b, f64::INFINITY, 1.0, &opts))?.value;
        prop_assert!(matrix_inf <= inf + 1e-6, "(inf,1): matrix {matrix_inf} > superop {inf}");
        Ok(())
    })
}

fn commutative_converse() -> Result<(), String> {
    let weights = (3..=5usize).prop_flat_map(|n| proptest::collection::vec(0.0..1.0f64, n));
    check(15, 16, weights, |w| {
        prop_assume!(w.iter().sum::<f64>() > 1e-3);
        let b = centered(&circulant(&w));
        let l2 = ok(matrix_lpq_norm(&b, 2.0, 2.0, &AscentOptions::default()))?.value;
        let grid = ok(linf_l1_phase_grid(&b, 12))?.value;
        prop_assert!(l2 <= 1.4049 * grid + 1e-6, "{l2} > 1.4049 * {grid}");
        Ok(())
    })
}

fn random_permutation_group(seed: u64, n: usize, torus: bool) -> qmix::Result<RepresentedGroup> {
    let mut rng = Rng::new(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.below(i + 1));
    }
    RepresentedGroup::finite_symmetric(vec![cyclic_shift(n), permutation_matrix(&perm)], torus)
}

fn twirl_projects() -> Result<(), String> {
    check(16, 16, (any::<u64>(), 2..=5usize, any::<bool>()), |(seed, n, torus)| {
        let group = ok(random_permutation_group(seed, n, torus))?;
        let x = linalg::ginibre(n, &mut Rng::new(seed ^ 1));
        let once = ok(twirl(&group, &x, 0))?;
        let twice = ok(twirl(&group, &once.matrix, 0))?;
        prop_assert!(once.exact && once.matrix.max_abs_diff(&twice.matrix) <= 1e-10);
        let id = ok(twirl(&group, &CMatrix::identity(n), 0))?;
        prop_assert!(id.matrix.max_abs_diff(&CMatrix::identity(n)) <= 1e-12);
        Ok(())
    })
}

fn phase_averaging_dephases() -> Result<(), String> {
    check(17, 32, seed_and_size(6), |(seed, n)| {
        let group = ok(RepresentedGroup::finite_symmetric(vec![CMatrix::identity(n)], true))?;
        let x = linalg::ginibre(n, &mut Rng::new(seed));
        let t = ok(twirl(&group, &x, 0))?;
        prop_assert!(t.matrix.max_abs_diff(&x.dephased()) == 0.0);
        Ok(())
    })
}

fn converse_on_covariant_instances() -> Result<(), String> {
    let weights = (3..=6usize).prop_flat_map(|n| proptest::collection::vec(0.0..1.0f64, n));
    check(18, 12, (weights, any::<u64>()), |(w, seed)| {
        prop_assume!(w.iter().sum::<f64>() > 1e-3);
        let a = circulant(&w);
        let phi = ok(embed_graph(&a))?;
        let group = ok(transitive_cover_group(&a))?;
        prop_assert!(ok(check_covariance(&phi, &group, 1e-10, 0))?.verdict);
        prop_assert!(ok(is_irreducible(&group, 1e-9, 0))?.irreducible);
        let opts = AscentOptions::with_seed(seed).restarts(64);
        let s2 = ok(s2s2_norm(&phi.minus_pi()))?.value;
        let inf = ok(sinfty_s1_norm(&phi.minus_pi(), &opts))?.value;
        prop_assert!(s2 <= 2.0 * inf * (1.0 + 1e-3), "S2 {s2} > 2 * {inf}");
        let lam = ok(lambda(&phi))?.value;
        let eps = ok(matrix_cut_norm(&centered(&a), CutMode::Brute, &opts))?.value;
        prop_assert!(lam <= 2.0 * PI * PI * eps * (1.0 + 1e-2), "lambda {lam} > 2 pi^2 {eps}");
        Ok(())
    })
}

fn creation_covariance() -> Result<(), String> {
    check(19, 20, (any::<u64>(), 1..=2usize), |(seed, n)| {
        let family = ok(creation_operators(n))?;
        let u = ok(haar_unitary(2 * n + 1, &mut Rng::new(seed)))?;
        let residual = ok(family.covariance_residual(&u))?;
        prop_assert!(residual <= 1e-10, "residual {residual}");
        Ok(())
    })
}

fn creation_family_invariants() -> Result<(), String> {
    for n in 1..=4usize {
        let family = creation_operators(n).map_err(|e| e.to_string())?;
        let d = family.dim();
        let ops = family.ops();
        let target = (n + 1) as f64 / (2 * n + 1) as f64;
        let mut left = CMatrix::zeros(d, d);
        let mut right = CMatrix::zeros(d, d);
        for (i, ci) in ops.iter().enumerate() {
            for (j, cj) in ops.iter().enumerate() {
                let g = linalg::inner_normalized(ci, cj).map_err(|e| e.to_string())?;
                let expected = if i == j { target } else { 0.0 };
                if (g - real(expected)).norm() > 1e-12 {
                    return Err(format!("n={n}: <c_{i}, c_{j}> = {g}"));
                }
            }
            left = &left + &ci.matmul(&ci.adjoint());
            right = &right + &ci.adjoint().matmul(ci);
        }
        let scaled = CMatrix::identity(d).scale_real((n + 1) as f64);
        if left.max_abs_diff(&scaled) > 1e-12 || right.max_abs_diff(&scaled) > 1e-12 {
            return Err(format!("n={n}: sums of c c* differ from (n+1) Id"));
        }
    }
    Ok(())
}

fn hodge_is_signed_permutation() -> Result<(), String> {
    for ambient in 1..=9usize {
        for k in 0..=ambient {
            let v = hodge_star(ambient, k).map_err(|e| e.to_string())?;
            let ok_line = |entries: Vec<C64>| {
                let nonzero: Vec<&C64> = entries.iter().filter(|z| z.norm() != 0.0).collect();
                nonzero.len() == 1 && (nonzero[0].re.abs() == 1.0 && nonzero[0].im == 0.0)
            };
            for r in 0..v.rows() {
                if !ok_line(v.row(r).to_vec()) {
                    return Err(format!("({ambient},{k}): row {r}"));
                }
            }
            for c in 0..v.cols() {
                if !ok_line(v.column(c)) {
                    return Err(format!("({ambient},{k}): column {c}"));
                }
            }
        }
    }
    Ok(())
}

fn covariant_grothendieck_assembly() -> Result<(), String> {
    check(20, 4, (any::<u64>(), 1..=2usize), |(seed, n)| {
        let (cov, _) = ok(covariant_haagerup_itoh(n))?;
        let family = ok(creation_operators(n))?;
        let v = ok(hodge_star(2 * n + 1, n + 1))?;
        let members: Vec<CMatrix> = family.ops().iter().map(|c| c.matmul(&v)).collect();
        let inf = ok(sinfty_s1_norm(&cov, &AscentOptions::with_seed(seed).restarts(8)))?.value;
        let asm = ok(grothendieck_assembly(&cov, &members, inf))?;
        let target = (2 * n + 1) as f64 / (n + 1) as f64;
        prop_assert!((asm.constant_lower_bound - target).abs() <= 1e-6, "{} vs {target}", asm.constant_lower_bound);
        Ok(())
    })
}

fn lift_commutes_with_shifts() -> Result<(), String> {
    let case = (3..=5usize).prop_flat_map(|n| (proptest::collection::vec(0.0..1.0f64, n), 1..=6usize));
    check(21, 24, case, |(w, k)| {
        prop_assume!(w.iter().sum::<f64>() > 1e-3);
        let n = w.len();
        let lifted = ok(lift_matrix(&circulant(&w), k))?;
        // Index j·n + t; the product group shifts t mod n and j mod k.
        let space = CMatrix::from_fn(n * k, n * k, |r, c| {
            real(if r / n == c / n && r % n == (c % n + 1) % n { 1.0 } else { 0.0 })
        });
        let level = CMatrix::from_fn(n * k, n * k, |r, c| {
            real(if r % n == c % n && r / n == (c / n + 1) % k { 1.0 } else { 0.0 })
        });
        for g in [&space, &level] {
            prop_assert!(g.matmul(&lifted).max_abs_diff(&lifted.matmul(g)) <= 1e-12);
        }
        Ok(())
    })
}

fn experiments_are_deterministic() -> Result<(), String> {
    let configs = [
        ExperimentConfig {
            n: Some(4),
            m: Some(2),
            trials: Some(3),
            seed: Some(5),
            ..ExperimentConfig::new(Command::Mixing)
        },
        ExperimentConfig {
            n: Some(5),
            trials: Some(2),
            seed: Some(9),
            ..ExperimentConfig::new(Command::Randomizing)
        },
        ExperimentConfig {
            n: Some(1),
            ..ExperimentConfig::new(Command::HaagerupItoh)
        },
    ];
    for config in configs {
        let first = run(&config).map_err(|e| e.to_string())?;
        let second = run(&config).map_err(|e| e.to_string())?;
        if first.scalars != second.scalars || first.rows != second.rows {
            return Err(format!("{:?}: scalars differ between runs", config.command));
        }
        if first.verdicts.iter().any(|v| v.claim.is_empty() || !(v.tolerance >= 0.0)) {
            return Err(format!("{:?}: verdict without claim or tolerance", config.command));
        }
    }
    Ok(())
}

pub fn property_suite() -> Vec<Property> {
    vec![
        ("schatten dominates diagonal", schatten_dominates_diagonal),
        ("schatten unitary invariance", schatten_unitary_invariance),
        ("holder inequality", holder_inequality),
        ("polar maximality", polar_maximality),
        ("embedding linearity", embedding_is_linear),
        ("embedding reads only the diagonal", embedding_reads_only_the_diagonal),
        ("adjoint involution", adjoint_is_involution),
        ("random channels unital and cptp", random_channels_are_unital_cptp),
        ("cut below sinfty_s1", cut_below_sinfty_s1),
        ("mixing lemma", mixing_lemma),
        ("monotone ascent", monotone_ascent),
        ("witness replay", witnesses_replay),
        ("embedding equalities", embedding_equalities),
        ("commutative converse", commutative_converse),
        ("twirl projects", twirl_projects),
        ("phase averaging dephases", phase_averaging_dephases),
        ("converse on covariant instances", converse_on_covariant_instances),
        ("creation covariance", creation_covariance),
        ("creation family invariants", creation_family_invariants),
        ("hodge signed permutation", hodge_is_signed_permutation),
        ("covariant grothendieck assembly", covariant_grothendieck_assembly),
        ("lift commutes with shifts", lift_commutes_with_shifts),
        ("experiments deterministic", experiments_are_deterministic),
    ]
}
