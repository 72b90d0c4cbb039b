//! Committee size decides everything: under a reversal-pairing symmetry
//! group, k-winner tie-breaking exists exactly when (n, k) falls in the
//! rescue set, and the extremal correspondence witnesses the failure.
//!
//! Run with: cargo run --example committee_tiebreak_limits

use resolute::error::Error;
use resolute::perm::{parse_cycles, Perm};
use resolute::profile::{GroupElement, SymmetryGroup};
use resolute::refine::{
    build_consistent_kscc_refinement, t_set_contains, uk_correspondence, ChoicePolicy,
};
use resolute::relation::Reversal;
use resolute::rules::{check_consistent_kscc, evaluate_all, induce_kscc, RuleId};

fn main() {
    let gen = GroupElement {
        phi: Perm::identity(2),
        psi: parse_cycles(4, "(1 4)(2 3)").unwrap(),
        rho: Reversal::Rev,
    };
    let group = SymmetryGroup::generate(2, 4, &[gen], 100).unwrap();
    println!("n = 4 alternatives, committee sizes k = 1..3\n");

    for k in 1..=3usize {
        let in_set = t_set_contains(4, k).unwrap();
        println!("k = {k}: rescue set membership = {in_set}");

        // the extremal consistent correspondence attached to the group
        let uk = uk_correspondence(&group, k).unwrap();
        println!("  extremal correspondence decisive? {}", uk.is_decisive());
        if uk.is_decisive() {
            assert!(check_consistent_kscc(&uk, &group).unwrap().0);
            match build_consistent_kscc_refinement(&group, &uk, ChoicePolicy::LexMin) {
                Ok((_, count)) => println!("  refinement exists; count = {count}"),
                Err(Error::NoRefinement { orbit, reason }) => {
                    println!("  NO refinement: orbit {orbit} blocked ({reason})")
                }
                Err(e) => println!("  unexpected: {e}"),
            }
        }

        // the Borda committee rule at the same k
        let borda_k = induce_kscc(&evaluate_all(&RuleId::Borda, 2, 4).unwrap(), k).unwrap();
        if check_consistent_kscc(&borda_k, &group).unwrap().0 {
            match build_consistent_kscc_refinement(&group, &borda_k, ChoicePolicy::LexMin) {
                Ok((_, count)) => println!("  borda top-{k}: refinement exists, count = {count}"),
                Err(Error::NoRefinement { orbit, .. }) => {
                    println!("  borda top-{k}: blocked at orbit {orbit}")
                }
                Err(e) => println!("  borda top-{k}: {e}"),
            }
        }
        println!();
    }
}
