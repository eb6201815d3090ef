//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (visible with `--nocapture`).
//!
//! The oracles here are deliberately dumb: exhaustive double-derivation
//! sweeps, fixpoint join closures, and pairwise comparison sorts. The
//! library must agree with them exactly.

use lectic::bitset::BitSet;
use lectic::closure::classic_enumerate;
use lectic::context::{enumerate_intents, FormalContext, IntentClosure, ObjectIntentTable};
use lectic::cxt::{parse_cxt, write_cxt};
use lectic::random::{random_context, SplitMix64};
use lectic::semilattice::{
    BitSetIntersection, BitSetUnion, GeneratorTable, JoinSemilattice, LecticOrdering,
};
use std::collections::HashSet;
use std::time::Instant;

fn report(number: u8, name: &str, pass: bool) {
    println!(
        "acceptance criterion {number} ({name}): {}",
        if pass { "PASS" } else { "FAIL" }
    );
}

/// The seeded random-context corpus shared by criteria 1, 2 and 8:
/// all shapes up to 7×7 at three densities, four seeds each (588 > 500).
fn corpus() -> Vec<FormalContext> {
    let mut seeds = SplitMix64::new(0xC0FFEE);
    let mut out = Vec::new();
    for objects in 1..=7 {
        for attributes in 1..=7 {
            for density in [0.3, 0.5, 0.7] {
                for _ in 0..4 {
                    out.push(
                        random_context(objects, attributes, density, seeds.next_u64()).unwrap(),
                    );
                }
            }
        }
    }
    out
}

/// Oracle: every intent, as the closure of every attribute subset.
fn brute_force_intents(context: &FormalContext) -> HashSet<BitSet> {
    let m = context.attribute_count();
    (0..(1u64 << m))
        .map(|mask| context.intent_closure(&BitSet::from_mask(m, mask)))
        .collect()
}

#[test]
fn criterion_1_intent_oracle_equivalence() {
    let start = Instant::now();
    let corpus = corpus();
    assert!(corpus.len() >= 500, "corpus holds {} contexts", corpus.len());
    let mut mismatches = 0;
    for context in &corpus {
        let enumerated: HashSet<BitSet> = enumerate_intents(context).into_iter().collect();
        if enumerated != brute_force_intents(context) {
            mismatches += 1;
        }
    }
    let elapsed = start.elapsed();
    let pass = mismatches == 0 && elapsed.as_secs() < 30;
    report(1, "intent sets equal brute force on 588 random contexts", pass);
    assert_eq!(mismatches, 0, "intent-set mismatches in the corpus");
    assert!(elapsed.as_secs() < 30, "corpus sweep took {elapsed:?}");
}

#[test]
fn criterion_2_order_soundness() {
    let mut violations = 0;
    for context in corpus() {
        let reduced = context.clarify_reduce_objects();
        let table = ObjectIntentTable::new(&reduced);
        let order = GeneratorTable::new(BitSetIntersection, table.rows().to_vec());
        let run = enumerate_intents(&context);
        let distinct: HashSet<&BitSet> = run.iter().collect();
        if distinct.len() != run.len() {
            violations += 1;
        }
        for pair in run.windows(2) {
            if !matches!(
                order.lectic_compare(&pair[0], &pair[1]),
                LecticOrdering::Less { .. }
            ) {
                violations += 1;
            }
        }
    }
    let pass = violations == 0;
    report(2, "emitted intents strictly increase, no repeats", pass);
    assert_eq!(violations, 0);
}

#[test]
fn criterion_3_reconstruction_equivalence() {
    let mut seeds = SplitMix64::new(0xBEEF);
    let mut cases = 0;
    let mut mismatches = 0;
    for objects in 1..=5 {
        for attributes in 1..=7 {
            for density in [0.3, 0.5, 0.7] {
                for _ in 0..2 {
                    let context =
                        random_context(objects, attributes, density, seeds.next_u64()).unwrap();
                    let operator = IntentClosure(&context);
                    let classic = classic_enumerate(&operator);
                    let generic = lectic::closure::closure_generators(&operator)
                        .enumerate_all()
                        .unwrap();
                    cases += 1;
                    if classic != generic {
                        mismatches += 1;
                    }
                }
            }
        }
    }
    let pass = cases >= 200 && mismatches == 0;
    report(
        3,
        "generic engine on singleton closures replays classic Next-Closure",
        pass,
    );
    assert!(cases >= 200, "only {cases} operators tested");
    assert_eq!(mismatches, 0);
}

struct LawCounters {
    totality: u64,
    transitivity: u64,
    order_extension: u64,
    witness_transfer: u64,
    plus_advances: u64,
    plus_is_tight: u64,
    plus_keeps_witness: u64,
    prefix_agreement: u64,
}

#[test]
fn criterion_4_order_law_suites() {
    const TARGET: u64 = 10_000;
    let mut rng = SplitMix64::new(0x1e_c71c);
    let mut counts = LawCounters {
        totality: 0,
        transitivity: 0,
        order_extension: 0,
        witness_transfer: 0,
        plus_advances: 0,
        plus_is_tight: 0,
        plus_keeps_witness: 0,
        prefix_agreement: 0,
    };
    let mut failures: Vec<String> = Vec::new();

    let done = |c: &LawCounters| {
        [
            c.totality,
            c.transitivity,
            c.order_extension,
            c.witness_transfer,
            c.plus_advances,
            c.plus_is_tight,
            c.plus_keeps_witness,
            c.prefix_agreement,
        ]
        .iter()
        .all(|&n| n >= TARGET)
    };

    let mut rounds = 0;
    while !done(&counts) {
        rounds += 1;
        assert!(rounds < 100_000, "sampling failed to reach the target count");

        // A fresh random union-semilattice: up to 8 generators of width 8.
        let width = 1 + rng.below(8);
        let generator_count = 1 + rng.below(8);
        let generators: Vec<BitSet> = (0..generator_count)
            .map(|_| {
                let mut s = BitSet::new(width);
                for i in 0..width {
                    if rng.next_u64() & 1 == 0 {
                        s.insert(i);
                    }
                }
                s
            })
            .collect();
        let table = GeneratorTable::new(BitSetUnion, generators);
        let elements = table.generated_semilattice();
        let pick = |rng: &mut SplitMix64| elements[rng.below(elements.len())].clone();

        for _ in 0..24 {
            let a = pick(&mut rng);
            let b = pick(&mut rng);
            let c = pick(&mut rng);

            // Totality and irreflexivity: exactly one outcome, EQUAL iff equal.
            counts.totality += 1;
            let ab = table.lectic_compare(&a, &b);
            let ba = table.lectic_compare(&b, &a);
            let consistent = match ab {
                LecticOrdering::Equal => a == b && ba == LecticOrdering::Equal,
                LecticOrdering::Less { witness } => {
                    a != b && ba == LecticOrdering::Greater { witness }
                }
                LecticOrdering::Greater { witness } => {
                    a != b && ba == LecticOrdering::Less { witness }
                }
            };
            if !consistent {
                failures.push(format!("totality broken on {a:?}, {b:?}"));
            }

            // Transitivity on sampled triples.
            counts.transitivity += 1;
            if ab.is_less()
                && table.lectic_compare(&b, &c).is_less()
                && !table.lectic_compare(&a, &c).is_less()
            {
                failures.push(format!("transitivity broken on {a:?}, {b:?}, {c:?}"));
            }

            // Order extension: a ≤ a ∨ b in the lectic order too.
            counts.order_extension += 1;
            let join = table.lattice().join(&a, &b);
            if !table.lectic_compare(&a, &join).is_le() {
                failures.push(format!("order extension broken on {a:?} vs {join:?}"));
            }

            // Witness transfer: a <_i b, a <_j c, i < j implies c <_i b.
            if let (LecticOrdering::Less { witness: i }, LecticOrdering::Less { witness: j }) =
                (ab, table.lectic_compare(&a, &c))
            {
                if i < j {
                    counts.witness_transfer += 1;
                    if table.lectic_compare(&c, &b) != (LecticOrdering::Less { witness: i }) {
                        failures.push(format!("witness transfer broken on {a:?}, {b:?}, {c:?}"));
                    }
                }
            }

            // ⊕ advances: x_i ≰ a implies a < a ⊕ i.
            let i = rng.below(table.len());
            if !table.leq(table.generator(i), &a) {
                counts.plus_advances += 1;
                let plus = table.plus(&a, i);
                if !table.lectic_compare(&a, &plus).is_less() {
                    failures.push(format!("a ⊕ {i} did not advance past {a:?}"));
                }
            }

            // Tightness, witness keeping and prefix agreement need a <_i b.
            if let LecticOrdering::Less { witness } = ab {
                let plus = table.plus(&a, witness);
                counts.plus_is_tight += 1;
                if !table.lectic_compare(&plus, &b).is_le() {
                    failures.push(format!("a ⊕ witness overshot {b:?} from {a:?} <_{witness}"));
                }
                counts.plus_keeps_witness += 1;
                if table.lectic_compare(&a, &plus) != (LecticOrdering::Less { witness }) {
                    failures.push(format!("a ⊕ witness lost witness {witness} from {a:?} (target {b:?})"));
                }
                counts.prefix_agreement += 1;
                for k in 0..witness {
                    if table.leq(table.generator(k), &a) != table.leq(table.generator(k), &b) {
                        failures.push(format!(
                            "prefix agreement broken at {k} on {a:?} <_{witness} {b:?}"
                        ));
                    }
                }
            }
        }
    }

    let pass = failures.is_empty();
    report(4, "comparison and successor laws hold on ≥10⁴ samples each", pass);
    assert!(pass, "{} counterexamples, first: {}", failures.len(), failures[0]);
}

#[test]
fn criterion_5_successor_cost_bound() {
    let mut seeds = SplitMix64::new(0xFA57);
    let mut worst_ratio = 0.0f64;
    let mut violations = 0;
    for objects in [16usize, 32, 64] {
        let bound = (2 * objects * objects + objects) as u64;
        for density in [0.3, 0.5, 0.7] {
            let context = random_context(objects, 12, density, seeds.next_u64()).unwrap();
            let reduced = context.clarify_reduce_objects();
            let table = ObjectIntentTable::new(&reduced);
            let mut current = BitSet::full(12);
            loop {
                let (next, counters) = table.next_intent_instrumented(&current);
                if counters.superset_tests > bound {
                    violations += 1;
                }
                worst_ratio = worst_ratio.max(counters.superset_tests as f64 / bound as f64);
                match next {
                    Some(intent) => current = intent,
                    None => break,
                }
            }
        }
    }
    let pass = violations == 0;
    report(5, "every successor call stays within 2|G|²+|G| superset tests", pass);
    println!("    worst observed fraction of the bound: {worst_ratio:.3}");
    assert_eq!(violations, 0);
}

#[test]
fn criterion_6_golden_trace() {
    let k1 = FormalContext::from_cross_table(
        vec!["g0".into(), "g1".into(), "g2".into()],
        vec!["m0".into(), "m1".into(), "m2".into()],
        &["XX.", ".XX", "X.X"],
    )
    .unwrap();
    let attrs = |ix: &[usize]| BitSet::from_indices(3, ix);
    let expected = vec![
        attrs(&[0, 1, 2]),
        attrs(&[0, 2]),
        attrs(&[1, 2]),
        attrs(&[2]),
        attrs(&[0, 1]),
        attrs(&[0]),
        attrs(&[1]),
        attrs(&[]),
    ];
    let run = enumerate_intents(&k1);
    let pass = run == expected;
    report(6, "K1 yields the hand-verified intent sequence", pass);
    assert_eq!(run, expected);
}

#[test]
fn criterion_7_single_traversal() {
    let mut seeds = SplitMix64::new(0x51);
    let mut violations = 0;
    for (objects, attributes, density) in
        [(3, 3, 0.5), (6, 5, 0.3), (8, 6, 0.5), (10, 4, 0.7), (12, 7, 0.5)]
    {
        let context = random_context(objects, attributes, density, seeds.next_u64()).unwrap();
        let reduced = context.clarify_reduce_objects();
        reduced.reset_incidence_reads();
        let table = ObjectIntentTable::new(&reduced);
        let build_reads = reduced.incidence_reads();
        if build_reads != (reduced.object_count() * reduced.attribute_count()) as u64 {
            violations += 1;
        }
        reduced.reset_incidence_reads();
        let mut current = BitSet::full(attributes);
        while let Some(next) = table.next_intent(&current) {
            current = next;
        }
        if reduced.incidence_reads() != 0 {
            violations += 1;
        }
    }
    let pass = violations == 0;
    report(7, "one matrix pass to build the table, zero reads afterwards", pass);
    assert_eq!(violations, 0);
}

#[test]
fn criterion_8_reduction_soundness() {
    let mut violations = 0;
    for context in corpus() {
        let reduced = context.clarify_reduce_objects();
        if brute_force_intents(&reduced) != brute_force_intents(&context) {
            violations += 1;
        }
        let table = ObjectIntentTable::new(&reduced);
        let rows = table.rows();
        let full = BitSet::full(context.attribute_count());
        for (g, row) in rows.iter().enumerate() {
            if *row == full {
                violations += 1;
            }
            if rows[..g].contains(row) {
                violations += 1;
            }
            let mut meet: Option<BitSet> = None;
            for (h, other) in rows.iter().enumerate() {
                if h != g && other.is_superset_of(row) && other != row {
                    match &mut meet {
                        None => meet = Some(other.clone()),
                        Some(acc) => acc.intersect_with(other),
                    }
                }
            }
            if meet.as_ref() == Some(row) {
                violations += 1;
            }
        }
    }
    let pass = violations == 0;
    report(8, "reduction keeps the intent set and leaves irreducible rows", pass);
    assert_eq!(violations, 0);
}

#[test]
fn criterion_9_cli_round_trip_and_golden_output() {
    use lectic::cli::run_command;

    let dir = tempfile::tempdir().unwrap();

    // 20-file corpus, including degenerate shapes.
    let mut seeds = SplitMix64::new(0x20F11E5);
    let mut round_trip_failures = 0;
    let mut shapes: Vec<(usize, usize, f64)> = vec![(0, 3, 0.5), (3, 0, 0.5), (1, 1, 0.0)];
    for i in 0..17 {
        shapes.push((1 + i % 9, 1 + (i * 3) % 8, [0.2, 0.5, 0.8][i % 3]));
    }
    assert_eq!(shapes.len(), 20);
    for (i, (objects, attributes, density)) in shapes.into_iter().enumerate() {
        let context = random_context(objects, attributes, density, seeds.next_u64()).unwrap();
        let text = write_cxt(&context);
        let path = dir.path().join(format!("corpus{i}.cxt"));
        std::fs::write(&path, &text).unwrap();
        let reread = parse_cxt(&std::fs::read_to_string(&path).unwrap()).unwrap();
        if reread != context || write_cxt(&reread) != text {
            round_trip_failures += 1;
        }
    }

    let k1_path = dir.path().join("k1.cxt");
    std::fs::write(
        &k1_path,
        "B\n\n3\n3\n\ng0\ng1\ng2\nm0\nm1\nm2\nXX.\n.XX\nX.X\n",
    )
    .unwrap();

    let run = |args: &[&str]| {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_command(
            std::iter::once("lectic".to_string()).chain(args.iter().map(|s| s.to_string())),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    };

    let k1_str = k1_path.to_str().unwrap();
    let (code, stdout, stderr) = run(&["intents", k1_str]);
    let golden = "m0 m1 m2\nm0 m2\nm1 m2\nm2\nm0 m1\nm0\nm1\n\n";
    let intents_ok = code == 0 && stdout == golden && stderr.is_empty();

    let (code_limit, stdout_limit, _) = run(&["intents", k1_str, "--limit", "1"]);
    let limit_ok = code_limit == 0 && stdout_limit == "m0 m1 m2\n";

    let pass = round_trip_failures == 0 && intents_ok && limit_ok;
    report(9, "cxt round trip and golden CLI output", pass);
    assert_eq!(round_trip_failures, 0);
    assert!(intents_ok, "intents output was {stdout:?} (exit {code})");
    assert!(limit_ok, "--limit 1 output was {stdout_limit:?}");
}
