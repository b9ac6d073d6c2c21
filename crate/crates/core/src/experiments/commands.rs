use std::f64::consts::PI;

use super::{ExperimentConfig, ReportBuilder};
use crate::channels::{random_unitary_channel, Graph, Superoperator};
use crate::constructions::{
    cayley_abelian, complete, covariant_haagerup_itoh, cycle, cz_extremal_matrix,
    grothendieck_assembly, haagerup_itoh, hodge_star, lift_matrix, pibound_max, MAX_SUPEROP_N,
};
use crate::error::{Error, Result};
use crate::linalg::{self, real, CMatrix, Rng, C64};
use crate::norms::{
    epsilon, lambda, linf_l1_phase_grid, matrix_cut_norm, matrix_lpq_norm, matrix_pairing, ncgowers_check,
    s1_sinfty_norm, s2s2_norm, sinfty_s1_norm, CutMode, BRUTE_CUT_MAX_N, PHASE_GRID_MAX_N,
};
use crate::symmetry::{check_covariance, is_irreducible, transitive_cover_group, MAX_AUTOMORPHISM_N};

fn size(value: Option<usize>, default: usize, min: usize, max: usize, what: &str) -> Result<usize> {
    let v = value.unwrap_or(default);
    if v < min {
        return Err(Error::InvalidArgument(format!("{what} must be at least {min}, got {v}")));
    }
    if v > max {
        return Err(Error::TooLarge(format!("{what} must be at most {max}, got {v}")));
    }
    Ok(v)
}

fn centered(a: &CMatrix) -> CMatrix {
    let n = a.rows() as f64;
    a.map(|z| z - real(1.0 / n))
}

/// `lhs <= rhs + tol`.
fn within(lhs: f64, rhs: f64, tol: f64) -> bool {
    lhs <= rhs + tol
}

pub(super) fn mixing(config: &ExperimentConfig) -> Result<ReportBuilder> {
    let n = size(config.n, 6, 2, 16, "n")?;
    let m = size(config.m, 3, 1, 64, "m")?;
    let trials = size(config.trials, 20, 0, 10_000, "trials")?;
    let tol = config.tol.unwrap_or(1e-9);
    let opts = config.ascent_options();
    let mut rng = Rng::new(config.seed.expect("validated"));
    let mut out = ReportBuilder::with_columns(&["trial", "epsilon", "lambda"]);
    let mut failures = Vec::new();
    let mut worst_gap = f64::INFINITY;
    for t in 0..trials {
        let phi = random_unitary_channel(n, m, &mut rng)?;
        let eps = epsilon(&phi, &opts)?.value;
        let lam = lambda(&phi)?.value;
        worst_gap = worst_gap.min(lam - eps);
        if !within(eps, lam, tol) {
            failures.push(t);
        }
        out.row(vec![t as f64, eps, lam]);
    }
    out.scalar("trials", trials as f64);
    if trials > 0 {
        out.scalar("min_lambda_minus_epsilon", worst_gap);
    }
    out.verdict(
        "mixing lemma: epsilon <= lambda",
        tol,
        failures.is_empty(),
        if failures.is_empty() { String::new() } else { format!("failing trials {failures:?}") },
    );
    Ok(out)
}

fn default_transitive_graphs(n: usize) -> Result<Vec<Graph>> {
    let mut graphs = vec![complete(n)?];
    if n >= 3 {
        graphs.push(cycle(n)?);
    }
    if n >= 4 && n % 2 == 0 {
        graphs.push(cayley_abelian(n, &[1, n - 1, n / 2])?);
    }
    if n >= 5 {
        graphs.push(cayley_abelian(n, &[1, n - 1, 2, n - 2])?);
    }
    Ok(graphs)
}

pub(super) fn converse_mixing(config: &ExperimentConfig) -> Result<ReportBuilder> {
    let graphs = match &config.graph {
        Some(path) => vec![Graph::from_json_file(path)?],
        None => default_transitive_graphs(size(config.n, 6, 2, MAX_AUTOMORPHISM_N, "n")?)?,
    };
    let opts = crate::norms::AscentOptions {
        restarts: config.restarts.unwrap_or(256),
        ..config.ascent_options()
    };
    let spectral_tol = config.tol.unwrap_or(1e-6);
    let norm_tol = config.tol.unwrap_or(1e-3);
    let mut out = ReportBuilder::with_columns(&[
        "instance",
        "n",
        "lambda",
        "epsilon",
        "s2s2",
        "sinfty_s1",
        "covariance_residual",
    ]);
    let (mut covariant, mut spectral, mut norm) = (Vec::new(), Vec::new(), Vec::new());
    let (mut worst_spectral, mut worst_norm) = (0.0f64, 0.0f64);
    for (t, g) in graphs.iter().enumerate() {
        let n = g.n();
        if n > BRUTE_CUT_MAX_N.min(MAX_AUTOMORPHISM_N) {
            return Err(Error::TooLarge(format!(
                "converse-mixing needs n <= {}, got {n}",
                BRUTE_CUT_MAX_N.min(MAX_AUTOMORPHISM_N)
            )));
        }
        let a = g.normalized_adjacency();
        let phi = g.embed();
        let group = transitive_cover_group(g.adjacency())?;
        let cov = check_covariance(&phi, &group, 1e-10, 0)?;
        let irr = is_irreducible(&group, 1e-9, 0)?;
        if !(cov.verdict && irr.irreducible) {
            covariant.push(t);
        }
        let lam = lambda(&phi)?.value;
        let eps = matrix_cut_norm(&centered(&a), CutMode::Brute, &opts)?.value;
        let shifted = phi.minus_pi();
        let s2 = s2s2_norm(&shifted)?.value;
        let inf = sinfty_s1_norm(&shifted, &opts)?.value;
        let bound_spectral = 2.0 * PI * PI * eps;
        if lam > bound_spectral * (1.0 + spectral_tol) {
            spectral.push(t);
        }
        if s2 > 2.0 * inf * (1.0 + norm_tol) {
            norm.push(t);
        }
        if bound_spectral > 0.0 {
            worst_spectral = worst_spectral.max(lam / bound_spectral);
        }
        if inf > 0.0 {
            worst_norm = worst_norm.max(s2 / (2.0 * inf));
        }
        out.row(vec![t as f64, n as f64, lam, eps, s2, inf, cov.max_residual]);
    }
    out.scalar("instances", graphs.len() as f64);
    out.scalar("max_lambda_over_2pi2_epsilon", worst_spectral);
    out.scalar("max_s2s2_over_2_sinfty_s1", worst_norm);
    let listed = |v: &Vec<usize>| if v.is_empty() { String::new() } else { format!("failing instances {v:?}") };
    out.verdict("irreducible covariance of the embedded graph", 1e-10, covariant.is_empty(), listed(&covariant));
    out.verdict(
        "converse mixing: lambda <= 2 pi^2 epsilon (relative tolerance)",
        spectral_tol,
        spectral.is_empty(),
        listed(&spectral),
    );
    out.verdict(
        "irreducibly covariant maps: s2s2 <= 2 sinfty_s1 (relative tolerance)",
        norm_tol,
        norm.is_empty(),
        listed(&norm),
    );
    Ok(out)
}

pub(super) fn embed(config: &ExperimentConfig) -> Result<ReportBuilder> {
    let path = config
        .graph
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("embed needs a graph file".into()))?;
    let g = Graph::from_json_file(path)?;
    let n = g.n();
    if n > BRUTE_CUT_MAX_N {
        return Err(Error::TooLarge(format!("embed handles graphs with n <= {BRUTE_CUT_MAX_N}, got {n}")));
    }
    let opts = config.ascent_options();
    let exact_tol = config.tol.unwrap_or(1e-8);
    let ascent_tol = config.tol.unwrap_or(1e-6);
    let a = g.normalized_adjacency();
    let b = centered(&a);
    let shifted = g.embed().minus_pi();
    let mut out = ReportBuilder::default();

    let s2 = s2s2_norm(&shifted)?.value;
    let l2 = matrix_lpq_norm(&b, 2.0, 2.0, &opts)?.value;
    let s1 = s1_sinfty_norm(&shifted, &opts)?.value;
    let l1 = matrix_lpq_norm(&b, 1.0, f64::INFINITY, &opts)?.value;
    let cut = crate::norms::cut_norm_superop(&shifted, &opts)?.value;
    let brute = matrix_cut_norm(&b, CutMode::Brute, &opts)?.value;
    let inf = sinfty_s1_norm(&shifted, &opts)?.value;
    let matrix_inf = matrix_lpq_norm(&b, f64::INFINITY, 1.0, &opts)?.value;
    for (name, v) in [
        ("superop_s2s2", s2),
        ("matrix_l2l2", l2),
        ("superop_s1_sinfty", s1),
        ("matrix_l1_linfty", l1),
        ("superop_cut", cut),
        ("matrix_cut_brute", brute),
        ("superop_sinfty_s1", inf),
        ("matrix_linfty_l1", matrix_inf),
    ] {
        out.scalar(name, v);
    }
    out.scalar("n", n as f64);
    let gap = |x: f64, y: f64| format!("gap {:.3e}", (x - y).abs());
    out.verdict("embedding equality for S2->S2", exact_tol, (s2 - l2).abs() <= exact_tol, gap(s2, l2));
    out.verdict("embedding equality for S1->Sinf", exact_tol, (s1 - l1).abs() <= exact_tol, gap(s1, l1));
    out.verdict("embedding equality for the cut norm", ascent_tol, (cut - brute).abs() <= ascent_tol, gap(cut, brute));
    out.verdict(
        "embedding equality for Sinf->S1 (both lower bounds)",
        ascent_tol,
        (inf - matrix_inf).abs() <= ascent_tol,
        gap(inf, matrix_inf),
    );
    Ok(out)
}

pub(super) fn haagerup_itoh_identities(config: &ExperimentConfig) -> Result<ReportBuilder> {
    let n = size(config.n, 1, 1, MAX_SUPEROP_N, "n")?;
    let trials = size(config.trials, 20, 1, 10_000, "trials")?;
    let opts = crate::norms::AscentOptions {
        restarts: config.restarts.unwrap_or(if n == 3 { 8 } else { 16 }),
        ..config.ascent_options()
    };
    let mut rng = Rng::new(config.seed.unwrap_or(0));
    let (nf, width) = (n as f64, (2 * n + 1) as f64);
    let diag = (nf + 1.0) / width;
    let (phi, family) = haagerup_itoh(n)?;
    let ops = family.ops();
    let mut out = ReportBuilder::default();

    let mut gram_error = 0.0f64;
    for (i, ci) in ops.iter().enumerate() {
        for (j, cj) in ops.iter().enumerate() {
            let expected = if i == j { diag } else { 0.0 };
            gram_error = gram_error.max((linalg::inner_normalized(ci, cj)? - real(expected)).norm());
        }
    }
    let mut trace_norm_error = 0.0f64;
    for _ in 0..trials {
        let alpha: Vec<C64> = ops.iter().map(|_| rng.complex_normal()).collect();
        let l2 = (alpha.iter().map(|a| a.norm_sqr()).sum::<f64>() / width).sqrt();
        let s1 = linalg::schatten_norm(&family.combination(&alpha)?, 1.0)?;
        trace_norm_error = trace_norm_error.max((s1 - l2 * (nf + 1.0) / width.sqrt()).abs());
    }
    let s2 = s2s2_norm(&phi)?.value;
    let inf = sinfty_s1_norm(&phi, &opts)?.value;
    let assembly = grothendieck_assembly(&phi, ops, inf)?;

    let (cov, group) = covariant_haagerup_itoh(n)?;
    let v = hodge_star(2 * n + 1, n + 1)?;
    let rotated: Vec<CMatrix> = ops.iter().map(|c| c.matmul(&v)).collect();
    let cov_s2 = s2s2_norm(&cov)?.value;
    let cov_inf = sinfty_s1_norm(&cov, &opts)?.value;
    let cov_assembly = grothendieck_assembly(&cov, &rotated, cov_inf)?;
    let covariance = check_covariance(&cov, &group.with_seed(config.seed.unwrap_or(0)), 1e-10, trials)?;
    let ratio = cov_s2 / cov_inf;

    for (name, value) in [
        ("n", nf),
        ("d", ops[0].rows() as f64),
        ("gram_diagonal", diag),
        ("gram_max_error", gram_error),
        ("trace_norm_max_error", trace_norm_error),
        ("s2s2", s2),
        ("sinfty_s1", inf),
        ("pairing_sum", assembly.pairing_sum),
        ("family_factor", assembly.family_factor),
        ("constant_lower_bound", assembly.constant_lower_bound),
        ("covariant_s2s2", cov_s2),
        ("covariant_sinfty_s1", cov_inf),
        ("covariant_constant_lower_bound", cov_assembly.constant_lower_bound),
        ("covariant_ratio", ratio),
        ("covariance_residual", covariance.max_residual),
    ] {
        out.scalar(name, value);
    }
    let tol = |default: f64| config.tol.unwrap_or(default);
    let target_k = width / (nf + 1.0);
    out.verdict("<c_i, c_j> = delta_ij (n+1)/(2n+1)", tol(1e-12), gram_error <= tol(1e-12), String::new());
    out.verdict(
        "||sum alpha_i c_i||_S1 = ||alpha||_2 (n+1)/sqrt(2n+1)",
        tol(1e-10),
        trace_norm_error <= tol(1e-10),
        format!("{trials} random coefficient vectors"),
    );
    out.verdict("s2s2 = (n+1)/(2n+1)", tol(1e-10), (s2 - diag).abs() <= tol(1e-10), String::new());
    out.verdict(
        "sinfty_s1 = (n+1)^2/(2n+1)^2",
        tol(1e-6),
        (inf - diag * diag).abs() <= tol(1e-6),
        String::new(),
    );
    out.verdict(
        "non-commutative Grothendieck constant >= (2n+1)/(n+1)",
        tol(1e-6),
        (assembly.constant_lower_bound - target_k).abs() <= tol(1e-6)
            && (cov_assembly.constant_lower_bound - target_k).abs() <= tol(1e-6),
        String::new(),
    );
    out.verdict(
        "covariant modification is SO(2n+1)-covariant",
        1e-10,
        covariance.verdict,
        format!("{} sampled rotations", covariance.checked_elements),
    );
    out.verdict(
        "covariant modification keeps the Schatten norms",
        tol(1e-8),
        (cov_s2 - s2).abs() <= tol(1e-8) && (cov_inf - inf).abs() <= tol(1e-8),
        String::new(),
    );
    out.verdict(
        "s2s2 / sinfty_s1 >= (2n+1)/(n+1) (relative tolerance)",
        1e-3,
        ratio >= target_k * (1.0 - 1e-3),
        String::new(),
    );
    Ok(out)
}

pub(super) fn cz_extremal(config: &ExperimentConfig) -> Result<ReportBuilder> {
    let n = size(config.n, 16, 1, 4096, "n")?;
    let opts = config.ascent_options();
    let a = cz_extremal_matrix(n)?;
    let v: Vec<C64> = (0..n).map(|s| C64::from_polar(1.0, 2.0 * PI * s as f64 / n as f64)).collect();
    let witness = matrix_pairing(&a, &v, &v)?;
    let ascent = matrix_lpq_norm(&a, f64::INFINITY, 1.0, &opts)?.value;
    let (cut, exact) = if n <= BRUTE_CUT_MAX_N {
        (matrix_cut_norm(&a, CutMode::Brute, &opts)?.value, true)
    } else {
        (matrix_cut_norm(&a, CutMode::Ascent, &opts)?.value, false)
    };
    let nf = n as f64;
    let mut out = ReportBuilder::default();
    out.scalar("n", nf);
    out.scalar("linfty_l1_witness", witness);
    out.scalar("linfty_l1_ascent", ascent);
    out.scalar("cut", cut);
    out.scalar("cut_exact", if exact { 1.0 } else { 0.0 });
    out.scalar("cut_over_n", cut / nf);
    out.scalar("inverse_pi_squared", 1.0 / (PI * PI));
    let tol = config.tol.unwrap_or(1e-9);
    out.verdict(
        "(inf,1) norm of the extremal matrix equals n (closed-form witness)",
        tol,
        (witness - nf).abs() <= tol * nf && (ascent - nf).abs() <= tol * nf,
        String::new(),
    );
    if exact {
        out.verdict(
            "(inf,1) norm <= pi^2 cut norm",
            tol,
            witness <= PI * PI * cut + tol,
            String::new(),
        );
    }
    let finite_tol = 0.05;
    out.verdict(
        "cut norm / n close to 1/pi^2 at finite n",
        finite_tol,
        (cut / nf - 1.0 / (PI * PI)).abs() <= finite_tol,
        if exact { "brute force".into() } else { "ascent lower bound".into() },
    );
    Ok(out)
}

pub(super) fn lift(config: &ExperimentConfig) -> Result<ReportBuilder> {
    let n = size(config.n, 3, 1, PHASE_GRID_MAX_N, "n")?;
    let k = size(config.k, 16, 1, 64, "k")?;
    let opts = config.ascent_options();
    let b = linalg::ginibre(n, &mut Rng::new(config.seed.expect("validated")));
    let grid_roots = if n <= 4 { 64 } else { 8 };
    let grid = linf_l1_phase_grid(&b, grid_roots)?.value;
    // Rounding the optimal x to m-th roots loses at most a factor cos(π/m).
    let upper = grid / (PI / grid_roots as f64).cos();
    let pk = pibound_max(k)?;
    let p256 = pibound_max(256)?;
    let lifted = lift_matrix(&b, k)?;
    let l2_base = matrix_lpq_norm(&b, 2.0, 2.0, &opts)?.value;
    let l2_lift = matrix_lpq_norm(&lifted, 2.0, 2.0, &opts)?.value;
    let cut = matrix_cut_norm(&lifted, CutMode::Ascent, &opts)?.value;
    let bound = pk * pk * upper;
    let mut out = ReportBuilder::default();
    for (name, value) in [
        ("n", n as f64),
        ("k", k as f64),
        ("pibound_k", pk),
        ("pibound_256", p256),
        ("inverse_pi", 1.0 / PI),
        ("base_l2l2", l2_base),
        ("lift_l2l2", l2_lift),
        ("base_linfty_l1_grid", grid),
        ("base_linfty_l1_upper", upper),
        ("lift_cut", cut),
        ("lift_cut_bound", bound),
    ] {
        out.scalar(name, value);
    }
    let tol = config.tol.unwrap_or(1e-8);
    out.verdict("lift keeps the L2 norm from below", tol, l2_lift >= l2_base - tol, String::new());
    out.verdict(
        "lift cut norm <= pibound_max(k)^2 ||B||_(inf,1)",
        tol,
        cut <= bound + tol,
        "cut is an ascent lower bound; the right side is a certified upper bound".into(),
    );
    out.verdict("pibound_max(k) >= 1/pi", tol, pk >= 1.0 / PI - tol, String::new());
    out.verdict("pibound_max(256) within 0.005 of 1/pi", 0.005, (p256 - 1.0 / PI).abs() <= 0.005, String::new());
    Ok(out)
}

pub(super) fn randomizing(config: &ExperimentConfig) -> Result<ReportBuilder> {
    let n = size(config.n, 4, 2, 16, "n")?;
    let m = size(config.m, 2, 1, 64, "m")?;
    let trials = size(config.trials, 10, 0, 10_000, "trials")?;
    let tol = config.tol.unwrap_or(1e-9);
    let opts = config.ascent_options();
    let mut rng = Rng::new(config.seed.expect("validated"));
    let mut out = ReportBuilder::with_columns(&["instance", "lambda", "quartic_rhs", "c", "sinfty_s1", "epsilon", "dense_rhs"]);
    let mut instances: Vec<(Superoperator, Option<f64>)> = Vec::new();
    // The embedded complete graph first: C = n max|A_ij - 1/n| in closed form.
    let nf = n as f64;
    let closed_c = nf * (1.0 / nf).max(1.0 / (nf - 1.0) - 1.0 / nf);
    instances.push((complete(n)?.embed(), Some(closed_c)));
    for _ in 0..trials {
        instances.push((random_unitary_channel(n, m, &mut rng)?, None));
    }
    let (mut quartic, mut dense) = (Vec::new(), Vec::new());
    let mut min_margin = f64::INFINITY;
    for (t, (phi, c)) in instances.iter().enumerate() {
        let shifted = phi.minus_pi();
        let report = ncgowers_check(&shifted, &opts, *c, tol)?;
        let eps = epsilon(phi, &opts)?.value;
        let dense_rhs = (report.c.powi(3) * PI * PI * eps).powf(0.25);
        if !report.holds {
            quartic.push(t);
        }
        if !within(report.lhs, dense_rhs, tol) {
            dense.push(t);
        }
        min_margin = min_margin.min(report.margin);
        out.row(vec![t as f64, report.lhs, report.rhs, report.c, report.sinfty_s1, eps, dense_rhs]);
    }
    out.scalar("instances", instances.len() as f64);
    out.scalar("min_margin", min_margin);
    let listed = |v: &Vec<usize>| if v.is_empty() { String::new() } else { format!("failing instances {v:?}") };
    out.verdict("s2s2 <= (C^3 sinfty_s1)^(1/4)", tol, quartic.is_empty(), listed(&quartic));
    out.verdict("lambda <= (C^3 pi^2 epsilon)^(1/4)", tol, dense.is_empty(), listed(&dense));
    Ok(out)
}
