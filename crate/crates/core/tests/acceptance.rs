//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};

use quadrigid::families::{balanced_bipartite_grid, preset, FamilySpec, Host};
use quadrigid::graph::{
    attach_chain, complete, complete_bipartite, cone, four_chain, recognize_balanced_join, vertex_connectivity_at_least,
    JoinStructure,
};
use quadrigid::matrix::rank_of_vectors;
use quadrigid::quadric::{generic_qrm_rank, is_glr_via_qrm, qrm, qrm_width, quadric_basis, quadric_flex};
use quadrigid::report::{hendrickson_report, ReportOptions};
use quadrigid::rigidity::{
    binomial, flex_dim_mod_trivial, is_glr, redundant_edges, redundant_edges_by_deletion, rigidity_matrix, stress_basis,
    target_rank, trivial_motion_basis, trial_rng, Configuration,
};
use quadrigid::{Field, GgrVerdict, Matrix, Rational, F61};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn opts(seed: u64) -> ReportOptions {
    ReportOptions { seed, ..Default::default() }
}

fn golden_rigidity_matrix() -> Outcome {
    let p = Configuration::<Rational>::from_i64(2, &[&[0, 2], &[2, -2], &[1, 3]]).map_err(err)?;
    let m = rigidity_matrix(&complete(3), &p).map_err(err)?;
    let expected =
        Matrix::<Rational>::from_i64_rows(&[&[-2, 4, 2, -4, 0, 0], &[-1, -1, 0, 0, 1, 1], &[0, 0, 1, -5, -1, 5]])
            .map_err(err)?;
    ensure!(m == expected, "got {m:?}");
    Ok("3x6 matrix matches".into())
}

fn golden_qrm() -> Outcome {
    let js = JoinStructure::from_parts(vec![0, 1, 2], vec![3, 4, 5], vec![(0, 1)]).map_err(err)?;
    let p = Configuration::<Rational>::from_i64(
        2,
        &[&[4, -5], &[2, 4], &[-1, 3], &[-4, -1], &[-9, 0], &[5, 7]],
    )
    .map_err(err)?;
    let m = qrm(&js, &p).map_err(err)?;
    let expected = Matrix::<Rational>::from_i64_rows(&[
        &[16, 25, -40, 8, -10, 1],
        &[4, 16, 16, 4, 8, 1],
        &[1, 9, -6, -2, 6, 1],
        &[16, 1, 8, -8, -2, 1],
        &[81, 0, 0, -18, 0, 1],
        &[25, 49, 24, 10, 14, 1],
        &[8, -20, 6, 6, -1, 1],
    ])
    .map_err(err)?;
    let mut diffs = Vec::new();
    for r in 0..expected.rows() {
        for c in 0..expected.cols() {
            if m.get(r, c) != expected.get(r, c) {
                diffs.push(format!("row {} col {}: computed {}, printed {}", r + 1, c + 1, m.get(r, c), expected.get(r, c)));
            }
        }
    }
    ensure!(diffs.is_empty(), "{} of 42 entries differ ({})", diffs.len(), diffs.join("; "));
    Ok(format!("7x6 matrix matches, rank {}", m.rank()))
}

fn bolker_roth_grid() -> Outcome {
    let mut checked = 0;
    for d in 2..=5 {
        for (a, b) in balanced_bipartite_grid(d) {
            let g = complete_bipartite(a, b);
            for t in 0..2 {
                let p = Configuration::<F61>::random(a + b, d, &mut trial_rng(d as u64, t)).map_err(err)?;
                let dim = stress_basis(&g, &p).map_err(err)?.len();
                let expected = (a - d - 1) * (b - d - 1);
                ensure!(dim == expected, "K_{{{a},{b}}} in R^{d}: stress dim {dim}, expected {expected}");
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} bipartite graphs"))
}

fn flex_grid() -> Outcome {
    let mut checked = 0;
    for d in 2..=5 {
        let c = binomial(d + 2, 2);
        for (a, b) in balanced_bipartite_grid(d).into_iter().filter(|&(a, b)| a + b < c) {
            let g = complete_bipartite(a, b);
            let mut rng = trial_rng(100 + d as u64, 0);
            let dim = flex_dim_mod_trivial::<F61>(&g, d, &mut rng, 2).map_err(err)?;
            ensure!(dim == c - a - b, "K_{{{a},{b}}} in R^{d}: {dim} flexes, expected {}", c - a - b);
            let (_, js) = quadrigid::graph::join(&quadrigid::graph::empty_graph(a), &quadrigid::graph::empty_graph(b));
            let p = Configuration::<F61>::random(a + b, d, &mut rng).map_err(err)?;
            let m = rigidity_matrix(&g, &p).map_err(err)?;
            let mut span = trivial_motion_basis(&p);
            for qc in quadric_basis(&js, &p).map_err(err)? {
                span.push(quadric_flex(&qc, &js, &p).map_err(err)?.flatten());
            }
            let nullity = m.cols() - m.rank();
            let r = rank_of_vectors(&span, m.cols());
            ensure!(r == nullity, "K_{{{a},{b}}} in R^{d}: span rank {r}, kernel dim {nullity}");
            ensure!(
                span.iter().all(|v| m.mul_vec(v).unwrap().iter().all(Field::is_zero)),
                "K_{{{a},{b}}} in R^{d}: a flex leaves the kernel"
            );
            checked += 1;
        }
    }
    Ok(format!("{checked} bipartite graphs"))
}

fn connelly_instances() -> Outcome {
    let mut lines = Vec::new();
    for (a, b, d) in [(5, 5, 3), (6, 9, 4), (7, 8, 4)] {
        let g = complete_bipartite(a, b);
        let r = hendrickson_report::<F61>(&g, d, &opts(5)).map_err(err)?;
        ensure!(r.glr && r.grr && r.connectivity_ok, "K_{{{a},{b}}}: glr {} grr {} conn {}", r.glr, r.grr, r.connectivity_ok);
        ensure!(
            r.ggr_certificate.verdict == GgrVerdict::NotGgrProbable,
            "K_{{{a},{b}}}: verdict {}",
            r.ggr_certificate.verdict
        );
        // every trial individually stays below the threshold
        for t in 0..4 {
            let p = Configuration::<F61>::random(a + b, d, &mut trial_rng(50, t)).map_err(err)?;
            let rank = quadrigid::rigidity::max_stress_matrix_rank(&g, &p, 3, &mut trial_rng(51, t)).map_err(err)?;
            ensure!(rank < a + b - d - 1, "K_{{{a},{b}}}: stress matrix rank {rank} in trial {t}");
        }
        lines.push(format!("K{a},{b}: max rank {} < {}", r.ggr_certificate.max_stress_matrix_rank, r.ggr_certificate.threshold));
    }
    Ok(lines.join("; "))
}

fn h_graph_rigid() -> Outcome {
    for d in 3..=7 {
        let (g, js) = quadrigid::families::h_graph(d);
        let mut rng = trial_rng(6, d);
        let rank = generic_qrm_rank::<F61>(&js, d, &mut rng, 2).map_err(err)?;
        ensure!(rank == qrm_width(d), "H_{d}: QRM rank {rank}, expected {}", qrm_width(d));
        ensure!(is_glr_via_qrm::<F61>(&g, d, &mut rng, 2).map_err(err)?, "H_{d}: recognized join is not rigid");
    }
    Ok("H_3..H_7 full QRM rank".into())
}

fn partial_coning() -> Outcome {
    let inst = FamilySpec::PartialConing { a: 10, b: 6, d: 5 }.build().map_err(err)?;
    let r = hendrickson_report::<F61>(&inst.graph, 5, &opts(7)).map_err(err)?;
    let q = r.qrm.as_ref().ok_or("no balanced join recognized")?;
    ensure!(q.rank == 21, "QRM rank {}", q.rank);
    ensure!(r.rank == 65 && r.target_rank == 65, "rigidity rank {} (target {})", r.rank, r.target_rank);
    ensure!(
        r.hendrickson_pass,
        "grr {} connectivity {}, {} non-redundant edges",
        r.grr,
        r.connectivity_ok,
        r.e - r.redundant_edges.len()
    );
    ensure!(r.ggr_certificate.verdict == GgrVerdict::NotGgrProbable, "verdict {}", r.ggr_certificate.verdict);
    Ok(format!("n 16, e {}, QRM 22x21 rank 21, stress dim {}", r.e, r.stress_dim))
}

fn chain_attachment() -> Outcome {
    let g = attach_chain(&four_chain([2, 3, 5, 4]), &complete(6)).map_err(err)?;
    let d = 5;
    let r = hendrickson_report::<F61>(&g, d, &opts(8)).map_err(err)?;
    let js = recognize_balanced_join(&g, d).ok_or("no balanced join recognized")?;
    let extraneous = js.extraneous().to_vec();
    let non_redundant: Vec<_> = g.edges().filter(|e| !r.redundant_edge_list().contains(e)).collect();
    let facts = format!(
        "6-connected {}, glr {}, grr {}, verdict {}, stress dim {}, non-redundant {} (extraneous {})",
        r.connectivity_ok, r.glr, r.grr, r.ggr_certificate.verdict, r.stress_dim, non_redundant.len(), extraneous.len()
    );
    ensure!(vertex_connectivity_at_least(&g, 6), "not 6-connected: {facts}");
    ensure!(r.glr, "not GLR: {facts}");
    ensure!(r.stress_dim == (3 - 2) * (d - 3 - 1), "stress dim: {facts}");
    ensure!(non_redundant == extraneous, "non-redundant set differs from extraneous edges: {facts}");
    ensure!(r.ggr_certificate.verdict == GgrVerdict::NotGgrProbable, "verdict: {facts}");
    ensure!(r.grr, "not GRR: {facts}");
    Ok(facts)
}

fn class_move_triple() -> Outcome {
    let mut ranks = Vec::new();
    let mut verdicts = Vec::new();
    for (k, (g, js)) in common::class_move_triple().into_iter().enumerate() {
        let mut rng = trial_rng(9, k);
        ranks.push(generic_qrm_rank::<F61>(&js, 3, &mut rng, 2).map_err(err)?);
        let rm = is_glr::<F61>(&g, 3, &mut rng, 2).map_err(err)?;
        let via_qrm = is_glr_via_qrm::<F61>(&g, 3, &mut rng, 2).map_err(err)?;
        ensure!(rm == via_qrm, "graph {k}: engines disagree");
        verdicts.push(rm);
    }
    ensure!(ranks.iter().all(|&r| r == ranks[0]), "QRM ranks {ranks:?}");
    ensure!(verdicts.iter().all(|&v| v), "verdicts {verdicts:?}");
    Ok(format!("QRM ranks {ranks:?}, all rigid"))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut rigid, mut flexible) = (0, 0);
    for k in 0..120 {
        let d = 2 + k % 3;
        let width = qrm_width(d);
        let n = rng.random_range(2 * d + 2..=20.min(width + 3));
        let a = rng.random_range(d + 1..=n - d - 1);
        let prob = rng.random_range(0.0..0.35);
        let g = common::random_join(a, n - a, prob, &mut rng);
        let mut trial = trial_rng(11, k);
        let via_qrm = is_glr_via_qrm::<F61>(&g, d, &mut trial, 2).map_err(err)?;
        let rm = is_glr::<F61>(&g, d, &mut trial, 2).map_err(err)?;
        ensure!(via_qrm == rm, "instance {k} (d {d}, n {n}, e {}): qrm {via_qrm}, rm {rm}", g.edge_count());
        if rm {
            rigid += 1;
        } else {
            flexible += 1;
        }
    }
    Ok(format!("120 joins agree ({rigid} rigid, {flexible} flexible)"))
}

fn recognition_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut brute = 0;
    for k in 0..120 {
        let d = 1 + k % 3;
        let n = rng.random_range(2 * d + 2..=16);
        let a = rng.random_range(d + 1..=n - d - 1);
        let g = common::random_join(a, n - a, rng.random_range(0.0..0.8), &mut rng);
        let js = recognize_balanced_join(&g, d).ok_or(format!("join {k} not recognized"))?;
        js.validate(&g).map_err(err)?;
        ensure!(js.is_balanced(d), "join {k} unbalanced");
        if n <= 12 {
            ensure!(common::brute_force_join_exists(&g, d + 1), "brute force disagrees on join {k}");
            brute += 1;
        }
    }
    let mut non_joins = 0;
    while non_joins < 20 {
        let n = rng.random_range(6..=12);
        let g = common::random_graph(n, 0.3, &mut rng);
        if !quadrigid::graph::is_connected(&g.complement()) {
            continue;
        }
        for d in 1..=2 {
            ensure!(recognize_balanced_join(&g, d).is_none(), "non-join recognized");
            ensure!(!common::brute_force_join_exists(&g, d + 1), "brute force found a join");
        }
        brute += 1;
        non_joins += 1;
    }
    Ok(format!("120 joins, 20 non-joins, {brute} brute-force checks"))
}

fn coning_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut agree = 0;
    for k in 0..30 {
        let n = rng.random_range(3..=9);
        let g = common::random_graph(n, rng.random_range(0.2..0.9), &mut rng);
        for d in 2..=3 {
            let mut trial = trial_rng(13, 2 * k + d);
            let base = is_glr::<F61>(&g, d - 1, &mut trial, 2).map_err(err)?;
            let coned = is_glr::<F61>(&cone(&g), d, &mut trial, 2).map_err(err)?;
            ensure!(base == coned, "graph {k} ({} edges), d {d}: G {base}, cone {coned}", g.edge_count());
            agree += 1;
        }
    }
    Ok(format!("{agree} pairs agree"))
}

fn redundancy_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut graphs = common::corpus();
    while graphs.len() < 60 {
        let n = rng.random_range(4..=12);
        let d = rng.random_range(2..=3);
        graphs.push((common::random_graph(n, rng.random_range(0.5..0.95), &mut rng), d));
    }
    let mut compared = 0;
    for (k, (g, d)) in graphs.iter().enumerate() {
        let p = Configuration::<F61>::random(g.vertex_count(), *d, &mut trial_rng(15, k)).map_err(err)?;
        if rigidity_matrix(g, &p).map_err(err)?.rank() != target_rank(g.vertex_count(), *d) {
            continue;
        }
        let support = redundant_edges(g, &p).map_err(err)?;
        let deletion = redundant_edges_by_deletion(g, &p).map_err(err)?;
        ensure!(support == deletion, "graph {k}: support {support:?} vs deletion {deletion:?}");
        compared += 1;
    }
    ensure!(compared >= 30, "only {compared} rigid graphs compared");
    Ok(format!("{compared} rigid frameworks compared"))
}

fn outlier_preset() -> Outcome {
    let spec = preset("c3355-outlier").map_err(err)?;
    ensure!(spec.host() == Some(Host::complete(8)), "host {:?}", spec.host());
    let inst = spec.build().map_err(err)?;
    let chain = four_chain([3, 3, 5, 5]);
    ensure!(chain.end_vertices().len() == 8, "chain ends {}", chain.end_vertices().len());
    ensure!(inst.graph.vertex_count() == 16, "n = {}", inst.graph.vertex_count());
    ensure!(inst.graph.edge_count() == 49 + 28, "e = {}", inst.graph.edge_count());
    let r = hendrickson_report::<F61>(&inst.graph, 6, &opts(16)).map_err(err)?;
    Ok(format!(
        "glr {}, grr {}, 7-connected {}, verdict {}, stress dim {}",
        r.glr, r.grr, r.connectivity_ok, r.ggr_certificate.verdict, r.stress_dim
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 14] = [
        ("golden rigidity matrix", golden_rigidity_matrix),
        ("golden quadric rigidity matrix", golden_qrm),
        ("bipartite stress dimensions", bolker_roth_grid),
        ("bipartite flex counts and span", flex_grid),
        ("bipartite counterexamples", connelly_instances),
        ("H_d rigid via QRM", h_graph_rigid),
        ("partial coning", partial_coning),
        ("chain attachment onto K_6", chain_attachment),
        ("equal QRM triple", class_move_triple),
        ("QRM and rigidity matrix agree", oracle_equivalence),
        ("join recognition round trip", recognition_round_trip),
        ("coning equivalence", coning_equivalence),
        ("redundancy by support and deletion", redundancy_oracle),
        ("C_{3,3,5,5} outlier preset", outlier_preset),
    ];
    let mut failed = 0;
    for (k, (title, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {title}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {title}: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
