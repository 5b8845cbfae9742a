//! Acceptance runner: one PASS/FAIL line per criterion, details indented
//! beneath. Exits non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use enthom::classifier::{barcode_count_bound, ClassTable, Scheme};
use enthom::filtration::{cech_filtration, rips_filtration, ComplexKind};
use enthom::homology::{betti_at, compute_barcode};
use enthom::monotones::{evaluate, negativity, MonotoneKind, MonotoneSettings};
use enthom::pipeline::{analyze, barcode_of, classify, Classification};
use enthom::semimetric::{distance_matrix, DistanceKind};
use enthom::statevec::{named_state, Bipartition, PureState, NAMED_STATES};
use enthom::survey::{haar_state, survey};
use nalgebra::Matrix2;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    details: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            pass: true,
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if !ok {
            self.pass = false;
            self.details.push(format!("MISMATCH {what}"));
        } else {
            self.details.push(format!("ok {what}"));
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.details.push(what.into());
    }

    fn within(&mut self, elapsed: Duration, limit: Duration) {
        self.check(
            elapsed < limit,
            format!("runtime {:.3}s < {:.0}s", elapsed.as_secs_f64(), limit.as_secs_f64()),
        );
    }
}

fn state(name: &str) -> PureState {
    named_state(name).expect("named state exists")
}

fn infinite_h0_dtilde(name: &str) -> usize {
    let dm = distance_matrix(&state(name), DistanceKind::Dtilde, &MonotoneSettings::default())
        .expect("distance matrix");
    barcode_of(&dm, ComplexKind::Rips, 2).infinite_count(0)
}

fn separability_suite(cases: &[(&str, usize)]) -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    for &(name, want) in cases {
        let got = infinite_h0_dtilde(name);
        out.check(got == want, format!("{name}: {got} infinite H0 bars (want {want})"));
    }
    out.within(start.elapsed(), Duration::from_secs(1));
    out
}

fn criterion_1() -> Outcome {
    separability_suite(&[
        ("product3", 3),
        ("bisep3", 2),
        ("ghz3", 1),
        ("w3", 1),
        ("psi_b3", 1),
        ("psi_c3", 1),
    ])
}

fn criterion_2() -> Outcome {
    separability_suite(&[
        ("product4", 4),
        ("trisep4", 3),
        ("bisep4", 2),
        ("bisep22", 2),
        ("ghz4", 1),
        ("w4", 1),
        ("B", 1),
        ("C", 1),
        ("Dpp", 1),
        ("E", 1),
        ("F", 1),
    ])
}

fn classified(name: &str, settings: &MonotoneSettings) -> Classification {
    classify(&state(name), settings, 2).expect("classification")
}

fn criterion_3() -> Outcome {
    let mut out = Outcome::new();
    let settings = MonotoneSettings::default();
    for (name, want) in [("ghz3", "3q-a"), ("psi_b3", "3q-b"), ("psi_c3", "3q-c"), ("w3", "3q-c")] {
        let got = classified(name, &settings).genuine_rips_label().map(String::from);
        out.check(got.as_deref() == Some(want), format!("{name} rips: {got:?} (want {want})"));
    }
    for (name, want, h1) in [("w3", "3q-c-W", true), ("psi_c3", "3q-c-chain", false)] {
        let got = classified(name, &settings).genuine_cech_label().map(String::from);
        out.check(got.as_deref() == Some(want), format!("{name} cech: {got:?} (want {want})"));
        let dm = distance_matrix(&state(name), DistanceKind::D, &settings).unwrap();
        let bars = barcode_of(&dm, ComplexKind::Cech, 2).bars(1).len();
        out.check((bars > 0) == h1, format!("{name} cech H1 bars: {bars}"));
    }
    out
}

/// (state, Rips id, Čech id) as listed in the paper's tables.
const TABLE_ROWS: &[(&str, &str, &str)] = &[
    ("ghz4", "B1", "B1"),
    ("B", "B2", "B2"),
    ("C", "B3", "B3"),
    ("Cp", "B3", "B3"),
    ("Cpp", "B3", "B7"),
    ("D", "B4", "B4"),
    ("Dp", "B4", "B4"),
    ("Dpp", "B4", "B5"),
    ("Dppp", "B4", "B8"),
    ("w4", "B4", "B9"),
    ("E", "B5", "B10"),
    ("F", "B6", "B6"),
];

fn ids(c: &Classification) -> (Option<String>, Option<String>, String, String) {
    let id = |g: &Option<enthom::pipeline::GenuineOutcome>| {
        g.as_ref()
            .and_then(|g| g.label.as_ref())
            .and_then(|l| l.barcode_id().map(String::from))
    };
    let sig = |g: &Option<enthom::pipeline::GenuineOutcome>| {
        g.as_ref().map_or(String::from("-"), |g| g.signature.key())
    };
    (id(&c.genuine_rips), id(&c.genuine_cech), sig(&c.genuine_rips), sig(&c.genuine_cech))
}

fn criterion_4() -> Outcome {
    let mut out = Outcome::new();
    let settings = MonotoneSettings::default();
    for &(name, rips, _) in TABLE_ROWS {
        let c = classified(name, &settings);
        let (got, _, sig, _) = ids(&c);
        out.check(
            got.as_deref() == Some(rips),
            format!("{name}: rips {} [{sig}] (want {rips})", got.as_deref().unwrap_or("none")),
        );
    }
    // Shape checks on the B5 and B6 representatives.
    for (name, finite) in [("E", true), ("F", false)] {
        let dm = distance_matrix(&state(name), DistanceKind::D, &settings).unwrap();
        let bc = barcode_of(&dm, ComplexKind::Rips, 2);
        let ok = if finite { bc.finite_count(1) >= 1 } else { !bc.bars(1).is_empty() };
        out.check(
            ok,
            format!(
                "{name}: H1 has {} finite / {} infinite bars",
                bc.finite_count(1),
                bc.infinite_count(1)
            ),
        );
    }
    out
}

fn criterion_5() -> Outcome {
    let mut out = Outcome::new();
    for kind in [MonotoneKind::Negativity, MonotoneKind::Concurrence] {
        let settings = MonotoneSettings::with_kind(kind);
        let mut flagged = Vec::new();
        for &(name, rips, cech) in TABLE_ROWS {
            let (r, c, rs, cs) = ids(&classified(name, &settings));
            let got = (r.as_deref().unwrap_or("none"), c.as_deref().unwrap_or("none"));
            let ok = got == (rips, cech);
            let line = format!(
                "[{kind}] {name}: ({}, {}) [{rs} | {cs}] (want ({rips}, {cech}))",
                got.0, got.1
            );
            if kind == MonotoneKind::Negativity {
                out.check(ok, line);
            } else {
                out.note(format!("{} {line}", if ok { "info-ok" } else { "info-mismatch" }));
            }
            if !ok {
                flagged.push(name);
            }
        }
        out.note(format!("[{kind}] flagged discrepancies: {flagged:?}"));
    }
    out
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9
}

fn criterion_6() -> Outcome {
    let mut out = Outcome::new();
    let neg = MonotoneSettings::default();
    let conc = MonotoneSettings::with_kind(MonotoneKind::Concurrence);

    let dt = distance_matrix(&state("ghz3"), DistanceKind::Dtilde, &neg).unwrap();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let v = dt.get(i, j).to_f64();
        out.check(close(v, 4.0), format!("ghz3 D~({i},{j}) = {v}"));
    }
    let d = distance_matrix(&state("w3"), DistanceKind::D, &conc).unwrap();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let v = d.get(i, j).to_f64();
        out.check(close(v, 1.5), format!("w3 D({i},{j}) = {v}"));
    }
    let a = analyze(&state("w3"), DistanceKind::D, &conc, ComplexKind::Cech, 2).unwrap();
    let h1 = a.barcode.bars(1);
    let ok = h1.len() == 1 && close(h1[0].birth, 1.5) && close(h1[0].death.to_f64(), 3f64.sqrt());
    out.check(ok, format!("w3 cech H1 = {h1:?}"));
    let bp = Bipartition::new(&[0], &[1], 3).unwrap();
    let n01 = negativity(&state("w3"), &bp, neg.zero_eps).unwrap().value;
    out.check(close(n01, (5f64.sqrt() - 1.0) / 6.0), format!("w3 N(0|1) = {n01}"));
    out
}

fn criterion_7() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut mismatches = 0;
    let mut checks = 0;
    for trial in 0..500 {
        let n = rng.random_range(1..=6);
        let dm = common::random_semimetric(&mut rng, n, 0.2);
        let fc = if trial % 2 == 0 {
            rips_filtration(&dm, 3)
        } else {
            cech_filtration(&dm, 3)
        };
        let bc = compute_barcode(&fc);
        for eps in common::critical_values(&fc) {
            checks += 1;
            let want = common::betti_by_rank(&fc, eps);
            let got = betti_at(&bc, eps).betti;
            if got.get(..want.len()) != Some(&want[..]) {
                mismatches += 1;
            }
        }
    }
    out.check(mismatches == 0, format!("{checks} critical scales, {mismatches} mismatches"));
    out.within(start.elapsed(), Duration::from_secs(30));
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn random_unitary(rng: &mut impl Rng) -> Matrix2<Complex64> {
    let [a, b, c, d]: [f64; 4] = std::array::from_fn(|_| rng.random_range(-3.2..3.2));
    let e = |x: f64| Complex64::from_polar(1.0, x);
    let (cc, sc) = ((c / 2.0).cos(), (c / 2.0).sin());
    Matrix2::new(
        e(a - b / 2.0 - d / 2.0) * cc,
        -e(a - b / 2.0 + d / 2.0) * sc,
        e(a + b / 2.0 - d / 2.0) * sc,
        e(a + b / 2.0 + d / 2.0) * cc,
    )
}

fn criterion_8() -> Outcome {
    let mut out = Outcome::new();
    let settings = MonotoneSettings::default();

    let mut perm_failures = Vec::new();
    for name in NAMED_STATES {
        let s = state(name);
        let base = classify(&s, &settings, 2).unwrap().to_json();
        for perm in permutations(s.n()) {
            let c = classify(&s.relabeled(&perm).unwrap(), &settings, 2).unwrap().to_json();
            if ["separability", "genuine_rips", "genuine_cech"].iter().any(|k| c[k] != base[k]) {
                perm_failures.push(format!("{name}{perm:?}"));
            }
        }
    }
    out.check(perm_failures.is_empty(), format!("permutation invariance {perm_failures:?}"));

    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let kinds = [MonotoneKind::Negativity, MonotoneKind::Concurrence, MonotoneKind::Entropy];
    let mut worst: f64 = 0.0;
    for trial in 0..100 {
        let s = state(NAMED_STATES[trial % NAMED_STATES.len()]);
        let us: Vec<_> = (0..s.n()).map(|_| random_unitary(&mut rng)).collect();
        let t = s.apply_local(&us).unwrap();
        let kind = MonotoneSettings::with_kind(kinds[trial % 3]);
        let n = s.n();
        for a_mask in 1..(1u32 << n) - 1 {
            let a: Vec<usize> = (0..n).filter(|q| a_mask & (1 << q) != 0).collect();
            let b: Vec<usize> = (0..n).filter(|q| a_mask & (1 << q) == 0).collect();
            let bp = Bipartition::new(&a, &b, n).unwrap();
            let x = evaluate(&s, &bp, &kind).unwrap().value;
            let y = evaluate(&t, &bp, &kind).unwrap().value;
            worst = worst.max((x - y).abs());
        }
        for i in 0..n {
            for j in i + 1..n {
                let bp = Bipartition::new(&[i], &[j], n).unwrap();
                let x = evaluate(&s, &bp, &kind).unwrap().value;
                let y = evaluate(&t, &bp, &kind).unwrap().value;
                worst = worst.max((x - y).abs());
            }
        }
    }
    out.check(worst < 1e-8, format!("local-unitary invariance, max deviation {worst:.2e}"));

    let mut dominated = true;
    for seed in 0..50u64 {
        let n = 3 + (seed % 3) as usize;
        let s = haar_state(n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let d = distance_matrix(&s, DistanceKind::D, &settings).unwrap();
        let dt = distance_matrix(&s, DistanceKind::Dtilde, &settings).unwrap();
        for i in 0..n {
            for j in 0..n {
                dominated &= dt.get(i, j) <= d.get(i, j);
            }
        }
    }
    for name in NAMED_STATES {
        let s = state(name);
        let d = distance_matrix(&s, DistanceKind::D, &settings).unwrap();
        let dt = distance_matrix(&s, DistanceKind::Dtilde, &settings).unwrap();
        for i in 0..s.n() {
            for j in 0..s.n() {
                dominated &= dt.get(i, j) <= d.get(i, j);
            }
        }
    }
    out.check(dominated, "D~ <= D on named and random states");

    let mut rips_le_cech = true;
    let mut euler = true;
    for _ in 0..300 {
        let n = rng.random_range(1..=6);
        let dm = common::random_semimetric(&mut rng, n, 0.2);
        let rips = rips_filtration(&dm, 3);
        let cech = cech_filtration(&dm, 3);
        let births: std::collections::HashMap<_, _> =
            rips.simplices().iter().map(|s| (s.vertices.clone(), s.birth)).collect();
        rips_le_cech &= cech.simplices().iter().all(|s| births[&s.vertices] <= s.birth);
        for fc in [&rips, &cech] {
            let bc = compute_barcode(fc);
            for eps in common::critical_values(fc) {
                let alt = |k: usize, x: usize| if k % 2 == 0 { x as i64 } else { -(x as i64) };
                let cells: i64 = common::simplices_at(fc, eps)
                    .iter()
                    .enumerate()
                    .map(|(k, s)| alt(k, s.len()))
                    .sum();
                let betti: i64 = betti_at(&bc, eps).betti.iter().enumerate().map(|(k, &b)| alt(k, b)).sum();
                euler &= cells == betti;
            }
        }
    }
    out.check(rips_le_cech, "Rips births <= Cech births");
    out.check(euler, "Euler characteristic identity at every critical scale");
    out
}

fn criterion_9() -> Outcome {
    let mut out = Outcome::new();
    let bound = barcode_count_bound(3).unwrap();
    out.check(bound == 10, format!("B_3 = {bound}"));
    let start = Instant::now();
    let report = survey(3, 1000, 12345, &MonotoneSettings::default(), ComplexKind::Rips, 2).unwrap();
    let elapsed = start.elapsed();
    let table = ClassTable::builtin();
    let known: Vec<String> = table
        .entries()
        .iter()
        .filter(|e| e.scheme == Scheme::GenuineRips && e.label.starts_with("3q-"))
        .map(|e| e.signature.clone())
        .collect();
    out.note(format!("{} fully inseparable samples", report.fully_inseparable));
    for c in &report.signatures {
        out.note(format!("  {} x{} -> {:?}", c.signature, c.count, c.label));
    }
    out.check(report.distinct() <= 3, format!("{} distinct signatures", report.distinct()));
    out.check(
        report.signatures.iter().all(|c| known.contains(&c.signature)),
        "all signatures in the 3-qubit table",
    );
    out.within(elapsed, Duration::from_secs(10));
    out
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("separability n=3", criterion_1),
        ("separability n=4", criterion_2),
        ("genuine 3-qubit classes", criterion_3),
        ("genuine 4-qubit Rips table", criterion_4),
        ("genuine 4-qubit Cech table", criterion_5),
        ("quantitative spot values", criterion_6),
        ("homology oracle", criterion_7),
        ("property suite", criterion_8),
        ("barcode bound and survey", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        println!("{} criterion {}: {name}", if outcome.pass { "PASS" } else { "FAIL" }, i + 1);
        for d in &outcome.details {
            println!("    {d}");
        }
        if !outcome.pass {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
