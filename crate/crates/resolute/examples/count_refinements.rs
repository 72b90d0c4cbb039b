//! Exact counting of symmetry-respecting tie-breaking rules: per-orbit
//! factors multiply into the total, and zero factors pinpoint why none
//! exists.
//!
//! Run with: cargo run --example count_refinements

use resolute::perm::PermGroup;
use resolute::profile::SymmetryGroup;
use resolute::refine::{
    build_symmetric_refinement, count_consistent_spc_refinements, count_symmetric_refinements,
    ChoicePolicy,
};
use resolute::rules::{evaluate_all, RuleId};

fn main() {
    // three voters over two alternatives with full anonymity+neutrality:
    // gcd(3, 2) = 1, so symmetric resolute refinements exist
    let group = SymmetryGroup::from_product(
        &PermGroup::symmetric(3).unwrap(),
        &PermGroup::symmetric(2).unwrap(),
        false,
    );
    let borda = evaluate_all(&RuleId::Borda, 3, 2).unwrap();

    let count = count_symmetric_refinements(&group, &borda).unwrap();
    println!("symmetric refinements of Borda at h=3, n=2: {count}");
    println!("per-orbit factors: {:?}", count.factors());

    let (f, _) = build_symmetric_refinement(&group, &borda, ChoicePolicy::LexMin).unwrap();
    println!("\nlex-min refinement:");
    for idx in 0..8 {
        println!("  profile {idx}: {}", f.ranking(idx).unwrap());
    }

    // the consistent count over a reversal-containing group
    let rev = SymmetryGroup::from_product(
        &PermGroup::trivial(2),
        &PermGroup::trivial(2),
        true,
    );
    let borda22 = evaluate_all(&RuleId::Borda, 2, 2).unwrap();
    let count = count_consistent_spc_refinements(&rev, &borda22).unwrap();
    println!("\nreversal-consistent refinements of Borda at h=2, n=2: {count}");
    println!("(each paired orbit contributes choices with the mirror locked out)");
}
