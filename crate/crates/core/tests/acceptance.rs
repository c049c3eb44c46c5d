//! One PASS/FAIL line per acceptance criterion. Counts are exact
//! (tolerance 0); time limits are wall-clock on the test machine.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use quasipave::counting::{b_grid, small};
use quasipave::quasi::{quasi_from_labels, EXAMPLE_H1, EXAMPLE_H2};
use quasipave::{
    c_grid, c_lines, check_circuit_axioms, decompose_grid, decompose_lines, decompose_to_tame, dependency_leq,
    egf_expand, q_s_multinomial, Classification, Decomposition, Method, ProfileSet, QuasiRep,
};

use common::{brute_count_nice_grid, brute_q, grid_profile_allowed, random_quasi_rep, rng};

const TABLE_GRID: [((usize, usize), u64); 5] = [((4, 4), 2), ((4, 5), 22), ((5, 5), 127), ((4, 6), 86), ((5, 6), 417)];
const TABLE_LINES: [(usize, u64); 5] = [(4, 2), (5, 2), (6, 17), (7, 58), (8, 191)];
const GRID_TIME_LIMIT: Duration = Duration::from_secs(60);
const LINES_TIME_LIMIT: Duration = Duration::from_secs(10);

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, summary: String) -> Outcome {
    let pass = failures.is_empty();
    let detail = if pass { summary } else { failures.join("; ") };
    Outcome { pass, detail }
}

fn table_grid() -> Outcome {
    let mut failures = Vec::new();
    let mut enumerate_time = Duration::ZERO;
    for ((k, l), expected) in TABLE_GRID {
        for method in Method::ALL {
            let start = Instant::now();
            let got = c_grid(k, l, method).map(|c| small(&c));
            if method == Method::Enumerate {
                enumerate_time += start.elapsed();
            }
            if got != Ok(Some(expected)) {
                failures.push(format!("c_grid({k},{l}) by {method} = {got:?}, expected {expected}"));
            }
        }
    }
    if enumerate_time > GRID_TIME_LIMIT {
        failures.push(format!("enumeration took {enumerate_time:?}"));
    }
    outcome(failures, format!("2, 22, 127, 86, 417 by all methods; enumeration {enumerate_time:.2?}"))
}

fn table_lines() -> Outcome {
    let mut failures = Vec::new();
    let start = Instant::now();
    for (n, expected) in TABLE_LINES {
        let methods: &[Method] = if n >= 5 { &Method::ALL } else { &[Method::Enumerate] };
        for &method in methods {
            let got = c_lines(n, method).map(|c| small(&c));
            if got != Ok(Some(expected)) {
                failures.push(format!("c_lines({n}) by {method} = {got:?}, expected {expected}"));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > LINES_TIME_LIMIT {
        failures.push(format!("took {elapsed:?}"));
    }
    outcome(failures, format!("2, 2, 17, 58, 191; {elapsed:.2?}"))
}

fn count_kind(dec: &Decomposition, kind: &Classification) -> usize {
    dec.components.iter().filter(|c| &c.classification == kind).count()
}

fn three_by_l() -> Outcome {
    let mut failures = Vec::new();
    for l in 4..=8 {
        match decompose_grid(3, l) {
            Ok(dec) => {
                let uniform = count_kind(&dec, &Classification::Uniform { rank: 2, d: 3 * l });
                let base = count_kind(&dec, &Classification::EqualsBase);
                if dec.components.len() != 2 || uniform != 1 || base != 1 {
                    failures.push(format!("3x{l}: {} components", dec.components.len()));
                }
            }
            Err(e) => failures.push(format!("3x{l}: {e}")),
        }
    }
    outcome(failures, "l = 4..8: uniform(2,3l) and the grid itself".into())
}

fn examples() -> Outcome {
    let mut failures = Vec::new();
    let g45 = decompose_grid(4, 5).unwrap();
    if g45.components.len() != 22
        || count_kind(&g45, &Classification::Uniform { rank: 2, d: 20 }) != 1
        || count_kind(&g45, &Classification::EqualsBase) != 1
    {
        failures.push(format!("4x5: {} components", g45.components.len()));
    }
    let l6 = decompose_lines(6).unwrap();
    let one_four_block = l6
        .components
        .iter()
        .filter(|c| c.partition.blocks().iter().filter(|b| b.len() == 4).count() == 1)
        .count();
    if l6.components.len() != 17 || one_four_block != 15 {
        failures.push(format!("L_6: {} components, {one_four_block} with a 4-block", l6.components.len()));
    }
    let g33 = decompose_grid(3, 3).unwrap();
    if g33.components.len() != 1 || count_kind(&g33, &Classification::EqualsBase) != 1 {
        failures.push("3x3".into());
    }
    let g34 = decompose_grid(3, 4).unwrap();
    if g34.components.len() != 2 || count_kind(&g34, &Classification::Uniform { rank: 2, d: 12 }) != 1 {
        failures.push("3x4".into());
    }
    for dec in [&g45, &l6, &g33, &g34] {
        if !dec.components_distinct().unwrap() {
            failures.push("repeated component".into());
        }
    }
    outcome(failures, "4x5: 22, L_6: 17 (15 with a 4-block), 3x3: 1, 3x4: 2".into())
}

fn axioms() -> Outcome {
    let mut r = rng(500);
    let mut failures = Vec::new();
    let trials = 500;
    for _ in 0..trials {
        let rep = random_quasi_rep(&mut r, 12);
        let m = rep.matroid();
        if let Err(e) = check_circuit_axioms(rep.ground_size(), m.circuits().unwrap()) {
            failures.push(format!("{rep:?}: {e}"));
        }
    }
    outcome(failures, format!("{trials} random representations, 0 failures"))
}

fn replay_matches(rep: &QuasiRep) -> Result<(), String> {
    let dec = decompose_to_tame(rep).map_err(|e| e.to_string())?;
    let replayed = dec.replay().map_err(|e| e.to_string())?;
    match replayed.same_dependence(&rep.matroid(), 5_000_000) {
        Ok(true) => Ok(()),
        Ok(false) => Err(format!("mismatch for {rep:?}")),
        Err(e) => Err(e.to_string()),
    }
}

fn round_trip() -> Outcome {
    let mut failures = Vec::new();
    for rep in [quasi_from_labels(9, 3, &EXAMPLE_H1).unwrap(), quasi_from_labels(7, 3, &EXAMPLE_H2).unwrap()] {
        if let Err(e) = replay_matches(&rep) {
            failures.push(e);
        }
    }
    let mut r = rng(600);
    let mut tested = 0;
    while tested < 100 {
        let rep = random_quasi_rep(&mut r, 10);
        if rep.matroid().rank() != rep.level() {
            continue;
        }
        tested += 1;
        if let Err(e) = replay_matches(&rep) {
            failures.push(e);
        }
    }
    outcome(failures, "M_1, M_2 and 100 random rank-n representations, 0 mismatches".into())
}

fn invariant_violations(dec: &Decomposition) -> usize {
    let base = dec.base.to_matroid();
    let n = dec.base.rank();
    let hs = dec.base.hyperplanes();
    let mut bad = 0;
    for c in &dec.components {
        let m = &c.matroid;
        if !dependency_leq(&base, m, 5_000_000).map(|v| v.leq).unwrap_or(false) {
            bad += 1;
        }
        bad += hs.iter().filter(|h| m.rank_of(h).ok() != Some(n - 1)).count();
        let rgs = c.partition.rgs();
        for i in 0..hs.len() {
            for j in i + 1..hs.len() {
                if rgs[i] != rgs[j] && m.rank_of(&hs[i].union(&hs[j])).ok() != Some(n) {
                    bad += 1;
                }
            }
        }
    }
    bad
}

fn invariants() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for k in 3..=6 {
        for l in 3..=9 - k {
            let dec = decompose_grid(k, l).unwrap();
            checked += dec.components.len();
            let bad = invariant_violations(&dec);
            if bad > 0 {
                failures.push(format!("{k}x{l}: {bad} violations"));
            }
        }
    }
    for n in 4..=7 {
        let dec = decompose_lines(n).unwrap();
        checked += dec.components.len();
        let bad = invariant_violations(&dec);
        if bad > 0 {
            failures.push(format!("L_{n}: {bad} violations"));
        }
    }
    outcome(failures, format!("{checked} components, 0 violations"))
}

fn counting_oracles() -> Outcome {
    let mut failures = Vec::new();
    for forbidden in [vec![2, 3], vec![1], vec![2], vec![3, 5], vec![]] {
        let s = ProfileSet::sizes(&forbidden);
        let egf = egf_expand(&s, &[9]).unwrap();
        for n in 0..=9 {
            let brute = brute_q(&[n], |p| !forbidden.contains(&p[0]));
            let q = q_s_multinomial(&[n], &s).unwrap();
            if small(&q) != Some(brute) || egf.count_at(&[n]).as_ref() != Some(&q) {
                failures.push(format!("S = {forbidden:?}, n = {n}"));
            }
        }
    }
    let egf = egf_expand(&ProfileSet::Grid, &[9, 9]).unwrap();
    for k in 0..=9 {
        for l in 0..=9 - k {
            let brute = brute_q(&[k, l], grid_profile_allowed);
            let q = q_s_multinomial(&[k, l], &ProfileSet::Grid).unwrap();
            if small(&q) != Some(brute) || egf.count_at(&[k, l]).as_ref() != Some(&q) {
                failures.push(format!("grid profile ({k},{l})"));
            }
        }
    }
    for k in 4..=6 {
        for l in 4..=6 {
            let violating = brute_q(&[k, l], grid_profile_allowed) - brute_count_nice_grid(k, l);
            if b_grid(k, l).ok().and_then(|b| small(&b)) != Some(violating) {
                failures.push(format!("b({k},{l})"));
            }
        }
    }
    outcome(failures, "q_S, EGF and b(k,l) agree with brute force, 0 mismatches".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("grid component counts", table_grid),
        ("line arrangement component counts", table_lines),
        ("3 x l grids have two components", three_by_l),
        ("worked examples", examples),
        ("circuit axioms for random quasi-paving matroids", axioms),
        ("extension round trip", round_trip),
        ("dependency order and rank invariants", invariants),
        ("counting oracle equivalence", counting_oracles),
    ];
    let mut all = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        all &= o.pass;
        println!("{} {}. {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!(
        "SKIP 9. irreducibility, irredundancy and complex realizability of the varieties: not checkable \
         combinatorially; distinctness and dependency order are covered by 4 and 7"
    );
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
