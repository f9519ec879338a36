//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runs without the libtest harness so the lines are always
//! printed.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cremona::degree2::{
    build_graph, classify, diameter, diameter_lower_bound, edge_graph, inverse_entry_profile,
    inversion_factor_degree2, is_cremona_degree2, structural_linear_type, structural_p_involution,
};
use cremona::hilbert::{
    find_cremona_subsets, is_hilbert_base, is_normal_ideal, lift, smith_lattice_index, Verdict,
};
use cremona::inversion::{verify_by_matrix, verify_by_substitution};
use cremona::permutation::{equivalent_sets, find_equivalence};
use cremona::{invert, is_cremona, log_matrix, ExponentVector, IntMatrix, InversionData};
use num::{BigInt, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{degree2_corpus, full_corpus, parse};

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ac1() -> Outcome {
    let set = parse("x1*x2\nx1*x3\nx2*x3");
    let inv = invert(&set).map_err(|e| e.to_string())?;
    ensure(inv.inverse_set(set.variables()) == set, || "inverse differs from the input set".into())?;
    ensure(inv.gamma().as_slice() == [1, 1, 1], || format!("gamma {:?}", inv.gamma()))?;
    ensure(inv.delta() == 2, || format!("delta {}", inv.delta()))?;
    let c = classify(&set).map_err(|e| e.to_string())?;
    ensure(c.p_involution, || "p_involution false".into())?;
    Ok("self-inverse, gamma (1,1,1), delta 2, p-involution".into())
}

fn ac2() -> Outcome {
    let set = parse("x1*x2\nx2*x3\nx3*x4\nx4*x5\nx5*x1");
    let inv = invert(&set).map_err(|e| e.to_string())?;
    ensure(inv.delta() == 3, || format!("delta {}", inv.delta()))?;
    ensure(inv.gamma().as_slice() == [1; 5], || format!("gamma {:?}", inv.gamma()))?;
    let vectors = inv.inverse_vectors();
    ensure(vectors.contains(&ExponentVector::new(vec![1, 0, 1, 0, 1])), || "x1*x3*x5 missing".into())?;
    ensure(vectors.iter().all(ExponentVector::is_squarefree), || "inverse not squarefree".into())?;
    Ok(format!("delta 3, gamma 1s, inverse {}", inv.inverse_set(set.variables())))
}

fn ac3() -> Outcome {
    let set = parse("x1^2\nx1*x2\nx2*x3");
    let inv = invert(&set).map_err(|e| e.to_string())?;
    let expected = parse("vars: x1, x2, x3\nx1*x2\nx2^2\nx1*x3");
    ensure(inv.inverse_set(set.variables()) == expected, || {
        format!("inverse {}", inv.inverse_set(set.variables()))
    })?;
    ensure(inv.gamma().as_slice() == [2, 1, 0], || format!("gamma {:?}", inv.gamma()))?;
    ensure(inv.delta() == 2, || format!("delta {}", inv.delta()))?;
    Ok("inverse {x1*x2, x2^2, x1*x3}, gamma (2,1,0), delta 2".into())
}

fn ac4() -> Outcome {
    let corpus = degree2_corpus();
    ensure(corpus.len() >= 500, || format!("only {} instances", corpus.len()))?;
    let mut shapes = BTreeSet::new();
    for (n, r, set) in &corpus {
        let graph = build_graph(set).map_err(|e| e.to_string())?;
        let root = graph.root().ok_or_else(|| format!("{set}: no root"))?;
        ensure(root.r() == *r, || format!("{set}: root length {} != {r}", root.r()))?;
        let inv = invert(set).map_err(|e| format!("{set}: {e}"))?;
        let formula = (r.div_ceil(2) + root.s) as u64;
        ensure(inv.delta() == formula, || format!("{set}: delta {} vs formula {formula}", inv.delta()))?;
        let gamma = inversion_factor_degree2(&graph).map_err(|e| e.to_string())?;
        ensure(&gamma == inv.gamma(), || format!("{set}: gamma {:?} vs graph {gamma:?}", inv.gamma()))?;
        shapes.insert((*n, *r, root.layer_sizes()));
    }
    let roots: BTreeSet<usize> = corpus.iter().map(|(_, r, _)| *r).collect();
    ensure(roots == BTreeSet::from([1, 3, 5, 7]), || format!("roots covered {roots:?}"))?;
    Ok(format!("{} instances, {} distinct attachment shapes", corpus.len(), shapes.len()))
}

fn ac5() -> Outcome {
    let corpus = degree2_corpus();
    let mut with_two = 0;
    for (_, _, set) in &corpus {
        let profile = inverse_entry_profile(set).map_err(|e| e.to_string())?;
        ensure(profile.holds(), || format!("{set}: {profile:?}"))?;
        with_two += usize::from(!profile.rows_with_two.is_empty());
    }
    Ok(format!("{} instances, {with_two} with entries equal to 2", corpus.len()))
}

fn ac6() -> Outcome {
    let corpus = full_corpus();
    for set in &corpus {
        let d = set.degree().unwrap();
        let inv = invert(set).map_err(|e| format!("{set}: {e}"))?;
        let inverse = inv.inverse_set(set.variables());
        let back = invert(&inverse).map_err(|e| format!("{inverse}: {e}"))?;
        let again = back.inverse_set(set.variables());
        ensure(equivalent_sets(&again, set), || format!("{set}: inverse of inverse is {again}"))?;
        ensure(inv.gamma().degree() + 1 == d * inv.delta(), || format!("{set}: |gamma| + 1 != d * delta"))?;
        ensure(back.gamma().degree() + 1 == inv.delta() * back.delta(), || {
            format!("{inverse}: |gamma| + 1 != d * delta")
        })?;
    }
    Ok(format!("{} instances", corpus.len()))
}

fn ac7() -> Outcome {
    let corpus = degree2_corpus();
    let mut linear = 0;
    for (_, _, set) in &corpus {
        let graph = build_graph(set).map_err(|e| e.to_string())?;
        let root = graph.root().ok_or("no root")?;
        let diam = diameter(&edge_graph(&graph)).map_err(|e| e.to_string())?;
        let structural = structural_linear_type(root);
        ensure(structural == (diam <= 2), || format!("{set}: structural {structural}, diameter {diam}"))?;
        let bound = diameter_lower_bound(root);
        ensure(diam >= bound, || format!("{set}: diameter {diam} < bound {bound}"))?;
        linear += usize::from(structural);
    }
    Ok(format!("{} instances, {linear} of linear type", corpus.len()))
}

fn ac8() -> Outcome {
    let corpus = degree2_corpus();
    let (mut positive, mut searched) = (0, 0);
    for (n, _, set) in &corpus {
        let graph = build_graph(set).map_err(|e| e.to_string())?;
        let structural = structural_p_involution(graph.root().ok_or("no root")?);
        let inv = invert(set).map_err(|e| e.to_string())?;
        let degree_two = inv.delta() == 2;
        ensure(structural == degree_two, || format!("{set}: structural {structural}, delta {}", inv.delta()))?;
        if *n <= 10 {
            let matched = find_equivalence(log_matrix(set).matrix(), inv.inverse_matrix()).is_some();
            ensure(matched == structural, || format!("{set}: permutation match {matched}"))?;
            searched += 1;
        }
        positive += usize::from(structural);
    }
    ensure(positive > 0 && positive < corpus.len(), || "corpus lacks both cases".into())?;
    Ok(format!("{} instances ({searched} searched), {positive} p-involutions", corpus.len()))
}

fn ac9() -> Outcome {
    let set = parse("x1^2\nx1*x2\nx1*x3\nx2^2\nx2*x3\nx3^2");
    let normal = is_normal_ideal(&set, 3).map_err(|e| e.to_string())?;
    ensure(normal.verdict() == Verdict::Holds, || format!("normal-check {:?}", normal.verdict()))?;
    let hilbert = is_hilbert_base(&lift(&set).map_err(|e| e.to_string())?, 3).map_err(|e| e.to_string())?;
    ensure(hilbert.verdict == Verdict::Holds, || format!("hilbert-check {:?}", hilbert.verdict))?;
    let found = find_cremona_subsets(&set).map_err(|e| e.to_string())?;
    let reps = found.proper_representatives();
    ensure(reps.len() == 2, || format!("{} classes", reps.len()))?;
    let expected = [parse("x*y\nx*z\ny*z"), parse("x^2\nx*y\ny*z")];
    for target in &expected {
        let hit = reps
            .iter()
            .any(|r| equivalent_sets(&set.select(&r.columns).unwrap(), target));
        ensure(hit, || format!("class of {target} missing"))?;
    }
    Ok("normal and Hilbert at B = 3, classes {xy,xz,yz} and {x^2,xy,yz}".into())
}

fn ac10() -> Outcome {
    let set = parse("x1^2\nx2^2");
    let hilbert = is_hilbert_base(&lift(&set).map_err(|e| e.to_string())?, 2).map_err(|e| e.to_string())?;
    ensure(hilbert.verdict == Verdict::Fails, || format!("hilbert-check {:?}", hilbert.verdict))?;
    ensure(hilbert.counterexample.as_deref() == Some(&[1, 1, 1][..]), || {
        format!("counterexample {:?}", hilbert.counterexample)
    })?;
    let normal = is_normal_ideal(&set, 2).map_err(|e| e.to_string())?;
    ensure(normal.verdict() == Verdict::Fails, || format!("normal-check {:?}", normal.verdict()))?;
    let square = parse("x1*x2\nx2*x3\nx3*x4\nx4*x1");
    let report = is_cremona(&square).map_err(|e| e.to_string())?;
    ensure(!report.is_cremona, || "4-cycle accepted by the determinant test".into())?;
    let graph = build_graph(&square).map_err(|e| e.to_string())?;
    ensure(!is_cremona_degree2(&graph), || "4-cycle accepted by the graph test".into())?;
    Ok("counterexample (1,1,1); 4-cycle rejected twice".into())
}

fn ac11() -> Outcome {
    let corpus = full_corpus();
    for set in &corpus {
        let inv = invert(set).map_err(|e| e.to_string())?;
        let (m, s) = (verify_by_matrix(set, &inv), verify_by_substitution(set, &inv));
        ensure(m && s, || format!("{set}: matrix {m}, substitution {s}"))?;
        let mut gamma = inv.gamma().clone().into_inner();
        gamma[0] += 1;
        let wrong = InversionData::from_parts(&inv.inverse_vectors(), ExponentVector::new(gamma), inv.delta());
        let (m, s) = (verify_by_matrix(set, &wrong), verify_by_substitution(set, &wrong));
        ensure(m == s && !m, || format!("{set}: perturbed gamma gives matrix {m}, substitution {s}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in 0..200 {
        let n = if k % 2 == 0 { 3 } else { 4 };
        let columns: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-5..=5)).collect()).collect();
        let det = IntMatrix::from_columns(&columns).determinant().abs();
        let index: BigInt = smith_lattice_index(&columns).map_err(|e| e.to_string())?;
        ensure(index == det, || format!("{columns:?}: index {index}, |det| {det}"))?;
    }
    Ok(format!("{} instances agree; 200 lattice indices match", corpus.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("AC-1", "triangle involution", Duration::from_secs(1), ac1),
        ("AC-2", "pentagon inverse", Duration::from_secs(1), ac2),
        ("AC-3", "loop inverse", Duration::from_secs(1), ac3),
        ("AC-4", "degree formula sweep", Duration::from_secs(30), ac4),
        ("AC-5", "entry profile sweep", Duration::from_secs(60), ac5),
        ("AC-6", "group law", Duration::from_secs(60), ac6),
        ("AC-7", "linear-type agreement", Duration::from_secs(60), ac7),
        ("AC-8", "p-involution triple agreement", Duration::from_secs(60), ac8),
        ("AC-9", "Hilbert/normality pipeline", Duration::from_secs(10), ac9),
        ("AC-10", "negative controls", Duration::from_secs(1), ac10),
        ("AC-11", "oracle equivalence", Duration::from_secs(60), ac11),
    ];
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > limit => Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("[PASS] {id} {name} ({elapsed:.2?}): {detail}"),
            Err(reason) => {
                failed += 1;
                println!("[FAIL] {id} {name} ({elapsed:.2?}): {reason}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
