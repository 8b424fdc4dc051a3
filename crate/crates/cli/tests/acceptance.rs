//! Release acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::{BTreeMap, HashSet};
use std::process::Command;
use std::time::{Duration, Instant};

use gpfact_core::{
    alon_tarsi_sum, brute_force_colourings, closed_form_signed_t, closed_form_t, count_1f,
    extend_outer, jacobsthal, lift_walk, sign_of, signed_count_1f, solve_list_colouring,
    verify_choosability_sample, BruteForce, EdgeColouring, GpGraph, ListAssignment, ListOutcome,
    OneFactorisation, SignedCount, TriangleDistance, TripleGraph,
};
use num_bigint::{BigInt, BigUint};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

/// Theorem 1 through the walk-count route, k = 1..=20.
fn c1_counting_theorem() -> Outcome {
    let start = Instant::now();
    for k in 1..=20 {
        let expected = if k % 2 == 1 { jacobsthal(k) } else { jacobsthal(k) * 4u32 };
        let got = count_1f(k);
        ensure(got == expected, || format!("k={k}: count {got}, expected {expected}"))?;
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("k=1..20 exact, {:?}", start.elapsed()))
}

/// Brute-force colouring count equals 6 × count_1f, k = 1..=5.
fn c2_oracle_counts() -> Outcome {
    let start = Instant::now();
    for k in 1..=5 {
        let g = GpGraph::gp3k(k).unwrap();
        let found = BruteForce::default().count(&g).map_err(|e| e.to_string())?;
        let expected = count_1f(k) * 6u32;
        ensure(BigUint::from(found) == expected, || {
            format!("k={k}: {found} colourings, expected {expected}")
        })?;
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("k=1..5 exact, {:?}", start.elapsed()))
}

/// Exhaustive signs per 1-factorisation reproduce signed_count_1f, k = 1..=5.
fn c3_oracle_signs() -> Outcome {
    let start = Instant::now();
    for k in 1..=5 {
        let g = GpGraph::gp3k(k).unwrap();
        let mut classes: BTreeMap<OneFactorisation, Vec<_>> = BTreeMap::new();
        for gamma in brute_force_colourings(&g).map_err(|e| e.to_string())? {
            let f = OneFactorisation::from_colouring(&gamma).unwrap();
            classes.entry(f).or_default().push(sign_of(&gamma).unwrap());
        }
        let mut tally = SignedCount::zero();
        for signs in classes.values() {
            ensure(signs.len() == 6 && signs.iter().all(|s| *s == signs[0]), || {
                format!("k={k}: inconsistent signs in a class")
            })?;
            tally = &tally + &SignedCount::of_sign(signs[0]);
        }
        let expected = signed_count_1f(k);
        ensure(tally == expected, || format!("k={k}: exhaustive {tally}, walks {expected}"))?;
    }
    ensure(signed_count_1f(4) == SignedCount::new(4u32, 16u32), || "k=4 not (4,16)".into())?;
    ensure(alon_tarsi_sum(4) == BigInt::from(-12), || "k=4 sign sum not -12".into())?;
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("k=1..5 componentwise, k=4 -> (4,16) sum -12, {:?}", start.elapsed()))
}

/// Transfer matrix equals the closed forms for k = 0..=64.
fn c4_closed_forms() -> Outcome {
    let start = Instant::now();
    let (t, h) = (TripleGraph::t(), TripleGraph::h());
    let (ts, hs) = (TripleGraph::t_signed(), TripleGraph::h_signed());
    for k in 0..=64 {
        let e = |x: gpfact_core::Result<SignedCount>| x.map_err(|e| e.to_string());
        let t_adj = e(t.count_walks(k, 0, 2))?.total();
        let t_same = e(t.count_walks(k, 0, 0))?.total();
        let cf_adj = closed_form_t(k, TriangleDistance::Adjacent).map_err(|e| e.to_string())?;
        let cf_same = closed_form_t(k, TriangleDistance::Same).map_err(|e| e.to_string())?;
        ensure(t_adj == cf_adj && t_adj == jacobsthal(k), || format!("k={k}: t_k(1)"))?;
        ensure(t_same == cf_same, || format!("k={k}: t_k(0)"))?;
        let t_signed = e(ts.count_walks(k, 0, 2))?;
        let cf_signed = closed_form_signed_t(k).map_err(|e| e.to_string())?;
        ensure(t_signed == cf_signed, || format!("k={k}: t±_k(2) {t_signed} vs {cf_signed}"))?;
        let h_total = e(h.count_walks(k, 0, 2))?.total();
        let h_signed = e(hs.count_walks(k, 0, 2))?;
        if k % 2 == 1 {
            ensure(h_total == BigUint::from(0u32), || format!("k={k}: h_k(2) nonzero"))?;
        } else {
            ensure(h_total == t_adj, || format!("k={k}: h_k(2) != t_k(1)"))?;
            ensure(h_signed == t_signed, || format!("k={k}: h±_k(2) != t±_k(2)"))?;
        }
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("k=0..64 exact, {:?}", start.elapsed()))
}

/// Sign sum nonzero for k = 1..=64; count odd for odd k.
fn c5_alon_tarsi() -> Outcome {
    let start = Instant::now();
    for k in 1..=64 {
        let sum = alon_tarsi_sum(k);
        ensure(sum != BigInt::from(0), || format!("k={k}: sign sum zero"))?;
        if k % 2 == 1 {
            ensure(count_1f(k).bit(0), || format!("k={k}: count even"))?;
        }
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("k=1..64 nonzero, {:?}", start.elapsed()))
}

/// extend_outer succeeds exactly on outer assignments with a unique total
/// extension, over all 3^(3k) assignments for k = 1..=4.
fn c6_extension_lemma() -> Outcome {
    let start = Instant::now();
    let bf = BruteForce::default();
    let mut summary = Vec::new();
    for k in 1..=4 {
        let g = GpGraph::gp3k(k).unwrap();
        let n = g.n();
        let mut outer = vec![1u8; n];
        let (mut total, mut extendable) = (0u64, 0u64);
        loop {
            total += 1;
            let oracle = bf.count_extensions(&g, &outer).map_err(|e| e.to_string())?;
            let phi = EdgeColouring::from_outer(&g, &outer);
            match extend_outer(&phi) {
                Ok(gamma) => {
                    ensure(oracle == 1 && gamma.is_proper(), || {
                        format!("k={k} {outer:?}: extended but oracle found {oracle}")
                    })?;
                    extendable += 1;
                }
                Err(_) => ensure(oracle == 0, || {
                    format!("k={k} {outer:?}: rejected but oracle found {oracle}")
                })?,
            }
            let Some(j) = outer.iter().position(|&c| c < 3) else { break };
            outer[j] += 1;
            outer[..j].fill(1);
        }
        ensure(total == 3u64.pow(n as u32), || "assignment sweep incomplete".into())?;
        summary.push(format!("k={k}: {extendable}/{total}"));
    }
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!("{}, {:?}", summary.join(" "), start.elapsed()))
}

/// Direction-preserving lift is a bijection onto H-walks y0 -> y2, even k <= 12.
fn c7_walk_lifting() -> Outcome {
    let start = Instant::now();
    let (t, h) = (TripleGraph::t(), TripleGraph::h());
    for k in (0..=12).step_by(2) {
        let t_walks: Vec<_> = t.walks(k, 0, 2).unwrap().collect();
        let mut images = HashSet::new();
        for w in &t_walks {
            let lifted = lift_walk(w).ok_or("walk not liftable")?;
            ensure(lifted.last() == Some(&2), || format!("k={k}: lift of {w:?} misses y2"))?;
            for (a, b) in w.windows(2).zip(lifted.windows(2)) {
                ensure(t.direction(a[0], a[1]) == h.direction(b[0], b[1]), || {
                    format!("k={k}: direction changed in {w:?}")
                })?;
            }
            ensure(images.insert(lifted), || format!("k={k}: lift not injective"))?;
        }
        let h_walks: HashSet<_> = h.walks(k, 0, 2).unwrap().collect();
        ensure(images == h_walks, || format!("k={k}: lift not onto"))?;
        let counted = h.count_walks(k, 0, 2).unwrap().total();
        ensure(BigUint::from(t_walks.len()) == counted, || format!("k={k}: size mismatch"))?;
    }
    within(start.elapsed(), Duration::from_secs(5))?;
    Ok(format!("even k<=12 bijective, {:?}", start.elapsed()))
}

/// 1000/1000 random 3-list trials for k = 2, 3, 4; Petersen unsolvable.
fn c8_list_colouring() -> Outcome {
    let start = Instant::now();
    let mut summary = Vec::new();
    for k in [2, 3, 4] {
        let palette = gpfact_core::default_palette(k);
        let report =
            verify_choosability_sample(k, 1000, palette, 0x5eed + k as u64).map_err(|e| e.to_string())?;
        ensure(report.successes == 1000 && report.failures.is_empty(), || {
            format!("k={k}: {} successes, failures {:?}", report.successes, report.failures)
        })?;
        summary.push(format!("k={k}: 1000/1000"));
    }
    let petersen = GpGraph::new(5, 2).unwrap();
    let lists = ListAssignment::uniform(&petersen, &[1, 2, 3]).unwrap();
    let outcome = solve_list_colouring(&petersen, &lists).map_err(|e| e.to_string())?;
    ensure(matches!(outcome, ListOutcome::Unsolvable { .. }), || {
        "GP(5,2) with lists {1,2,3} was coloured".into()
    })?;
    within(start.elapsed(), Duration::from_secs(600))?;
    Ok(format!("{}, GP(5,2) unsolvable, {:?}", summary.join(" "), start.elapsed()))
}

fn gpfact(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_gpfact"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

/// Every CLI command gives byte-identical output across runs.
fn c9_cli_determinism() -> Outcome {
    let commands: &[&[&str]] = &[
        &["count", "--k", "7"],
        &["count", "--k", "64"],
        &["enumerate", "--k", "5"],
        &["signsum", "--k", "6"],
        &["verify", "--k-max", "3", "--oracle"],
        &["listcolor", "--k", "3", "--trials", "200", "--seed", "42"],
        &["listcolor", "--k", "2", "--trials", "50", "--seed", "7", "--palette", "4"],
        &["export", "--n", "9", "--k", "3", "--format", "json"],
        &["export", "--n", "5", "--k", "2", "--format", "dot"],
    ];
    for args in commands {
        let (code_a, a) = gpfact(args)?;
        let (code_b, b) = gpfact(args)?;
        ensure(code_a == 0 && code_b == 0, || format!("{args:?} exited {code_a}/{code_b}"))?;
        ensure(a == b && !a.is_empty(), || format!("{args:?} output differs between runs"))?;
    }
    let (_, seq) = gpfact(&["enumerate", "--k", "6"])?;
    let (_, par) = gpfact(&["--parallel", "4", "enumerate", "--k", "6"])?;
    ensure(seq == par, || "parallel enumeration differs from sequential".into())?;
    let (_, seq) = gpfact(&["listcolor", "--k", "4", "--trials", "100", "--seed", "3"])?;
    let (_, par) = gpfact(&["--parallel", "3", "listcolor", "--k", "4", "--trials", "100", "--seed", "3"])?;
    ensure(seq == par, || "parallel listcolor differs from sequential".into())?;
    Ok(format!("{} commands stable", commands.len() + 2))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 counting theorem (k=1..20)", c1_counting_theorem),
        ("2 oracle colouring counts (k=1..5)", c2_oracle_counts),
        ("3 oracle signed counts (k=1..5)", c3_oracle_signs),
        ("4 closed forms vs transfer matrix (k=0..64)", c4_closed_forms),
        ("5 Alon-Tarsi sign sum nonzero (k=1..64)", c5_alon_tarsi),
        ("6 extension lemma (k=1..4, all assignments)", c6_extension_lemma),
        ("7 walk lifting bijection (even k<=12)", c7_walk_lifting),
        ("8 list-colouring harness", c8_list_colouring),
        ("9 CLI determinism", c9_cli_determinism),
    ];
    let mut failed = 0;
    for (name, criterion) in criteria {
        match criterion() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
