//! Acceptance suite: one test per criterion, each printing a pass line.
//! Everything is exact arithmetic or an oracle comparison at desk scale.

mod common;

use std::time::Instant;

use num_bigint::BigUint;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use resolute::error::{Error, HypothesisTag, NoRefinementReason};
use resolute::perm::{factorial, gcd, Partition, Perm, PermGroup};
use resolute::profile::{
    is_regular, is_regular_with_table, orbit_decomposition, Profile, ProfileAction, SymmetryGroup,
};
use resolute::refine::{
    build_consistent_kscc_refinement, build_consistent_spc_refinement, count_consistent_spc_refinements,
    count_symmetric_refinements, existence_gate, president_preset, reversal_invariant_extension,
    split_committee_partitions, uk_correspondence, ChoicePolicy, GateMode, Verdict,
};
use resolute::relation::{order_aut_stats, LinearOrder, Relation, Reversal};
use resolute::rules::{
    check_consistent_kscc, check_consistent_spc, check_symmetric, evaluate_all, induce_kscc,
    NamedGroup, RuleId,
};

#[test]
fn criterion_01_type_numbers() {
    // gamma of the full symmetric group is its degree
    for m in 2..=7 {
        assert_eq!(PermGroup::symmetric(m).unwrap().type_number(), m as u64, "gamma(S_{m})");
    }
    assert_eq!(PermGroup::trivial(5).type_number(), 1);

    // gamma divides the degree, over 500 random subgroups
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE01);
    for _ in 0..500 {
        let m = rng.gen_range(2..=6);
        let count = rng.gen_range(1..=3);
        let gens: Vec<Perm> = (0..count).map(|_| common::random_perm(&mut rng, m)).collect();
        let u = PermGroup::generate(m, &gens, 1_000_000).unwrap();
        let gamma = u.type_number();
        assert_eq!(m as u64 % gamma, 0, "gamma {gamma} does not divide {m}");
    }
    println!("criterion 1 (type numbers): pass");
}

#[test]
fn criterion_02_order_automorphism_formulas() {
    // exhaustive over set partitions with a fixed class ranking, m <= 5
    let mut checked = 0usize;
    for m in 1..=5 {
        for partition in common::set_partitions(m) {
            let classes: Vec<Vec<usize>> =
                partition.iter().map(|c| c.iter().map(|&e| e + 1).collect()).collect();
            let r = Relation::from_order_classes(m, &classes).unwrap();
            let aut = r.aut_group().unwrap();
            let (_, t) = r.indifference_partition().unwrap();
            let (gamma_formula, order_formula) = order_aut_stats(&t);
            assert_eq!(BigUint::from(aut.order()), order_formula, "|Aut| at {t}");
            assert_eq!(aut.type_number(), gamma_formula, "gamma at {t}");
            checked += 1;
        }
    }
    assert!(checked >= 52);

    // plus 100 random orders on m = 6
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE02);
    for _ in 0..100 {
        let r = common::random_order(&mut rng, 6);
        let aut = r.aut_group().unwrap();
        let (_, t) = r.indifference_partition().unwrap();
        let (gamma_formula, order_formula) = order_aut_stats(&t);
        assert_eq!(BigUint::from(aut.order()), order_formula);
        assert_eq!(aut.type_number(), gamma_formula);
    }
    println!("criterion 2 (order automorphism formulas): pass");
}

#[test]
fn criterion_03_regularity_criteria() {
    // the direct stabilizer-template scan agrees with the coprimality
    // criteria over every product group at h, n in {2, 3}
    let mut disagreements = 0usize;
    let mut checked = 0usize;
    for h in 2..=3 {
        for n in 2..=3 {
            for v in common::all_subgroups(h) {
                for w in common::all_subgroups(n) {
                    for omega in [false, true] {
                        let u = SymmetryGroup::from_product(&v, &w, omega);
                        let report = is_regular(&u).unwrap();
                        let criterion = report.criterion.expect("product groups carry a criterion");
                        if criterion != report.regular {
                            disagreements += 1;
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    assert_eq!(disagreements, 0, "criteria disagreed on {disagreements} of {checked} groups");
    assert!(checked >= 2 * (2 * 6 + 6 * 2 + 4 + 36) / 2);
    println!("criterion 3 (regularity criteria, {checked} groups, 0 disagreements): pass");
}

#[test]
fn criterion_04_invariant_ranking_counts() {
    // |S(p)| is n! off the reversal-stabilized profiles and exactly
    // 2^(n/2) (n/2)! on them, for every regular group in the catalog
    for h in 2..=3 {
        for n in 2..=4 {
            let expected_free = factorial(n);
            let half = n / 2;
            let expected_pinned = (1u64 << half) * factorial(half);
            for group in common::test_catalog(h, n) {
                let table = orbit_decomposition(&group).unwrap();
                if !is_regular_with_table(&group, &table).unwrap().regular {
                    continue;
                }
                let action = ProfileAction::build(&group);
                let elems = group.elements();
                let size = Profile::space_size(h, n) as u64;
                for idx in 0..size {
                    let stab: Vec<usize> =
                        (0..elems.len()).filter(|&e| action.apply(idx, e) == idx).collect();
                    let pinned = stab.iter().any(|&e| elems[e].rho == Reversal::Rev);
                    let nontrivial: Vec<usize> = stab
                        .iter()
                        .copied()
                        .filter(|&e| !elems[e].psi.is_identity() || elems[e].rho == Reversal::Rev)
                        .collect();
                    let s_size = if nontrivial.is_empty() {
                        expected_free
                    } else {
                        LinearOrder::all(n)
                            .filter(|q| {
                                nontrivial.iter().all(|&e| {
                                    let g = &elems[e];
                                    q.relabel(&g.psi).unwrap().reverse_if(g.rho) == *q
                                })
                            })
                            .count() as u64
                    };
                    let expected = if pinned { expected_pinned } else { expected_free };
                    assert_eq!(
                        s_size, expected,
                        "|S| mismatch at h={h} n={n} profile {idx} (group order {})",
                        group.order()
                    );
                }
            }
        }
    }
    println!("criterion 4 (invariant ranking counts): pass");
}

#[test]
fn criterion_05_counting_oracle() {
    // h = 2, n = 2, anonymity, Borda: brute-force enumeration of all
    // resolute refinements agrees with both product formulas
    let group = resolute::rules::named_group(2, 2, &NamedGroup::Anonymity).unwrap();
    let borda = evaluate_all(&RuleId::Borda, 2, 2).unwrap();

    let refinements = common::all_resolute_refinements(&borda);
    let brute_symmetric = refinements
        .iter()
        .filter(|t| common::resolute_is_symmetric(t, 2, 2, &group))
        .count() as u64;
    let brute_consistent = refinements
        .iter()
        .filter(|t| common::resolute_is_consistent(t, 2, 2, &group))
        .count() as u64;

    let formula_symmetric = count_symmetric_refinements(&group, &borda).unwrap();
    let formula_consistent = count_consistent_spc_refinements(&group, &borda).unwrap();

    assert_eq!(formula_symmetric.value(), &BigUint::from(brute_symmetric));
    assert_eq!(formula_consistent.value(), &BigUint::from(brute_consistent));
    // on an identity-slice group the two notions coincide
    assert_eq!(brute_symmetric, brute_consistent);
    assert_eq!(brute_symmetric, 2);
    println!(
        "criterion 5 (counting oracle: brute {brute_symmetric} == formula {formula_symmetric}): pass"
    );
}

#[test]
fn criterion_06_consistent_builder_constructive() {
    // every regular catalog group and every consistent catalog rule:
    // the builder succeeds and its output is consistent and pointwise
    // inside the rule
    let sizes: &[(usize, usize)] = &[(2, 2), (2, 3), (3, 2), (3, 3), (2, 4)];
    let rules = [RuleId::Borda, RuleId::Copeland, RuleId::Kemeny];
    let mut built = 0usize;
    for &(h, n) in sizes {
        let tables: Vec<_> = rules.iter().map(|r| evaluate_all(r, h, n).unwrap()).collect();
        for group in common::test_catalog(h, n) {
            let orbit_table = orbit_decomposition(&group).unwrap();
            if !is_regular_with_table(&group, &orbit_table).unwrap().regular {
                continue;
            }
            for c in &tables {
                if !check_consistent_spc(c, &group).unwrap().0 {
                    continue;
                }
                let (f, count) =
                    build_consistent_spc_refinement(&group, c, ChoicePolicy::LexMin).unwrap();
                assert!(!count.is_zero());
                let as_spc = f.as_spc().unwrap();
                assert!(check_consistent_spc(&as_spc, &group).unwrap().0);
                for idx in 0..Profile::space_size(h, n) as u64 {
                    assert!(c.value(idx).contains(&f.value(idx)));
                }
                built += 1;
            }
        }
    }
    assert!(built > 50, "only {built} builder runs exercised");
    println!("criterion 6 (consistent builder, {built} constructions verified): pass");
}

#[test]
fn criterion_07_committee_dichotomy() {
    let group = common::involution_omega_group(2, 4, "(1 4)(2 3)");

    // k = 2 lies outside the rescue set: the extremal correspondence is
    // decisive and consistent yet admits no consistent resolute refinement
    assert!(!resolute::refine::t_set_contains(4, 2).unwrap());
    let u2 = uk_correspondence(&group, 2).unwrap();
    assert!(u2.is_decisive());
    assert!(check_consistent_kscc(&u2, &group).unwrap().0);
    let err = build_consistent_kscc_refinement(&group, &u2, ChoicePolicy::LexMin).unwrap_err();
    match err {
        Error::NoRefinement { orbit, reason } => {
            assert_eq!(reason, NoRefinementReason::A2Empty);
            let table = orbit_decomposition(&group).unwrap();
            assert_eq!(table.orbits()[orbit].class, resolute::profile::OrbitClass::P2);
        }
        other => panic!("expected NoRefinement, got {other:?}"),
    }

    // the same nonexistence surfaces as exit code 2 through the CLI
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("involution_omega.grp");
    std::fs::write(&path, "phi:id psi:(1 4)(2 3) rho:rho0\n").unwrap();
    let spec = format!("file:{}", path.display());
    let out = resolute::cli::run_args([
        "resolute", "build", "--h", "2", "--n", "4", "--k", "2", "--U", &spec, "--rule", "uk",
        "--format", "json",
    ]);
    assert_eq!(out.exit_code, 2, "stderr: {}", out.stderr);
    let report: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(report["outcome"]["reason"], "A2Empty");

    // k in {1, 3}: every decisive consistent catalog correspondence
    // admits a refinement
    for k in [1usize, 3] {
        assert!(resolute::refine::t_set_contains(4, k).unwrap());
        let mut candidates: Vec<resolute::rules::KsccValue> =
            [RuleId::Borda, RuleId::Copeland, RuleId::Minimax, RuleId::Kemeny]
                .iter()
                .map(|r| induce_kscc(&evaluate_all(r, 2, 4).unwrap(), k).unwrap())
                .collect();
        candidates.push(uk_correspondence(&group, k).unwrap());
        let mut exercised = 0usize;
        for c in &candidates {
            if !c.is_decisive() || !check_consistent_kscc(c, &group).unwrap().0 {
                continue;
            }
            let (f, count) =
                build_consistent_kscc_refinement(&group, c, ChoicePolicy::LexMin).unwrap();
            assert!(!count.is_zero());
            assert!(check_consistent_kscc(&f.as_kscc().unwrap(), &group).unwrap().0);
            for idx in 0..Profile::space_size(2, 4) as u64 {
                assert!(c.value(idx).contains(&f.value(idx)));
            }
            exercised += 1;
        }
        assert!(exercised >= 3, "k={k}: only {exercised} correspondences exercised");
    }
    println!("criterion 7 (committee dichotomy at n=4): pass");
}

#[test]
fn criterion_08_invariant_extension_randomized() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE08);
    let mut successes = 0usize;
    for round in 0..200 {
        let n = [4, 5, 6][round % 3];
        let sigma = common::random_perm(&mut rng, n);
        let rho0 = Perm::order_reversing(n);
        let psi = sigma.compose(&rho0).unwrap().compose(&sigma.inverse()).unwrap();

        // grow a random relation closed under the mirror symmetry,
        // dropping any addition that would create a cycle
        let mut rp = Relation::empty(n);
        for _ in 0..n {
            let x = rng.gen_range(0..n);
            let y = rng.gen_range(0..n);
            if x == y || psi.apply(y) == x {
                continue;
            }
            let mut candidate = rp.clone();
            candidate.insert(x, y);
            candidate.insert(psi.apply(y), psi.apply(x));
            if candidate.classify().acyclic {
                rp = candidate;
            }
        }

        let q = reversal_invariant_extension(&psi, &rp).unwrap();
        assert_eq!(q.relabel(&psi).unwrap().reverse_if(Reversal::Rev), q, "round {round}");
        for (x, y) in rp.pairs() {
            assert!(q.rank_of(x) < q.rank_of(y), "round {round}: pair ({x}, {y}) flipped");
        }
        successes += 1;
    }
    assert_eq!(successes, 200);

    // hypothesis violations are rejected with the right tags
    let psi = resolute::perm::parse_cycles(4, "(1 4)(2 3)").unwrap();
    assert!(matches!(
        reversal_invariant_extension(&Perm::identity(4), &Relation::empty(4)),
        Err(Error::HypothesisViolated { tag: HypothesisTag::NotInvolution, .. })
    ));
    assert!(matches!(
        reversal_invariant_extension(&psi, &Relation::from_pairs(4, &[(1, 2), (2, 1)]).unwrap()),
        Err(Error::HypothesisViolated { tag: HypothesisTag::NotAcyclic, .. })
    ));
    assert!(matches!(
        reversal_invariant_extension(&psi, &Relation::from_pairs(4, &[(1, 2)]).unwrap()),
        Err(Error::HypothesisViolated { tag: HypothesisTag::ConditionA, .. })
    ));
    println!("criterion 8 (invariant extension, 200/200 randomized instances): pass");
}

#[test]
fn criterion_09_worked_examples() {
    // the president order has indifference sizes [1, h-1]
    for h in [2usize, 4, 5, 7] {
        let (r, _) = president_preset(h).unwrap();
        let (_, t) = r.indifference_partition().unwrap();
        assert_eq!(t, Partition::from_terms(vec![1, h - 1]).unwrap());
    }

    // president gates pass for every order Q at n <= 4, both for ranking
    // and committee refinements
    let (president, _) = president_preset(5).unwrap();
    for n in 2..=4 {
        for q in common::all_orders(n) {
            let v = existence_gate(&president, &q, GateMode::SymId, None).unwrap();
            assert_eq!(v.verdict, Verdict::Exists, "sym_id gate at n={n}");
            assert_eq!(v.gamma_aut_r, 1);
            let v = existence_gate(&president, &q, GateMode::ConsKsccId, Some(1)).unwrap();
            assert_eq!(v.verdict, Verdict::Exists, "committee gate at n={n}");
        }
    }

    // full-symmetry gate equals the coprimality of h with n!
    for (h, n) in [(7usize, 4usize), (2, 2), (6, 3), (5, 4), (7, 5)] {
        let v = existence_gate(&Relation::total(h), &Relation::total(n), GateMode::SymId, None)
            .unwrap();
        let coprime = gcd(h as u64, factorial(n)) == 1;
        let expected = if coprime { Verdict::Exists } else { Verdict::NotExists };
        assert_eq!(v.verdict, expected, "full-symmetry gate at h={h}, n={n}");
        assert_eq!(v.gamma_aut_r, h as u64);
        assert_eq!(v.aut_q_order, factorial(n));
    }
    // the committee-reversal reading of the same pairs: mid-range k has
    // no rescue condition at (5,4) and (7,5)
    for (h, n) in [(5usize, 4usize), (7, 5)] {
        let v = existence_gate(
            &Relation::total(h),
            &Relation::total(n),
            GateMode::ConsKsccReversal,
            Some(2),
        )
        .unwrap();
        assert_eq!(v.gcd_rev, 1);
        assert_eq!(v.verdict, Verdict::NotExists, "committee reversal gate at h={h}, n={n}, k=2");
    }

    // split-committee options for seven voters
    assert_eq!(split_committee_partitions(7), vec![(1, 6), (2, 5), (3, 4)]);
    println!("criterion 9 (worked examples): pass");
}

#[test]
fn criterion_10_classical_rule_symmetry() {
    for &(h, n) in &[(2usize, 2usize), (2, 3), (3, 2), (3, 3), (2, 4)] {
        let full = SymmetryGroup::full(h, n).unwrap();
        let id_slice = SymmetryGroup::from_product(
            &PermGroup::symmetric(h).unwrap(),
            &PermGroup::symmetric(n).unwrap(),
            false,
        );
        for rule in [RuleId::Borda, RuleId::Copeland] {
            let c = evaluate_all(&rule, h, n).unwrap();
            let (ok, witness) = check_symmetric(&c, &full).unwrap();
            assert!(ok, "{} not fully symmetric at ({h}, {n}): {witness:?}", rule.name());
        }
        let minimax = evaluate_all(&RuleId::Minimax, h, n).unwrap();
        let (ok, witness) = check_symmetric(&minimax, &id_slice).unwrap();
        assert!(ok, "minimax not id-slice symmetric at ({h}, {n}): {witness:?}");
    }
    println!("criterion 10 (classical rule symmetry): pass");
}

#[test]
fn criterion_11_performance_and_determinism() {
    // (4!)^3 = 13824 profiles under the order-288 full group
    let group = SymmetryGroup::full(3, 4).unwrap();
    let started = Instant::now();
    let table = orbit_decomposition(&group).unwrap();
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "orbit decomposition took {elapsed:?}");
    let total: u64 = table.orbits().iter().map(|o| o.size).sum();
    assert_eq!(total as u128, Profile::space_size(3, 4));
    let baseline = serde_json::to_string(&table.to_json()).unwrap();

    // byte-identical across thread counts, both at the library level and
    // through the CLI
    for threads in [1usize, 8] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let json = pool.install(|| {
            let table = orbit_decomposition(&group).unwrap();
            serde_json::to_string(&table.to_json()).unwrap()
        });
        assert_eq!(json, baseline, "orbit table changed at {threads} threads");
    }
    let run = |threads: &str| {
        resolute::cli::run_args([
            "resolute", "orbits", "--h", "3", "--n", "4", "--U", "full", "--format", "json",
            "--threads", threads,
        ])
    };
    let one = run("1");
    let eight = run("8");
    assert_eq!(one.exit_code, 0);
    assert_eq!(one.stdout, eight.stdout, "CLI output differs across thread counts");
    println!(
        "criterion 11 (performance: {} orbits in {:.2}s, thread-identical): pass",
        table.orbits().len(),
        elapsed.as_secs_f64()
    );
}
