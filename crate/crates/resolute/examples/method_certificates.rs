//! Social methods as existence certificates: a profile-indexed family of
//! partial comparisons whose linear extensions stay inside a
//! correspondence certifies that symmetric tie-breaking is possible,
//! provided each relation mirrors correctly under the profile's
//! stabilizer.
//!
//! Run with: cargo run --example method_certificates

use resolute::perm::{parse_cycles, Perm};
use resolute::profile::{GroupElement, Profile, SymmetryGroup};
use resolute::refine::{
    build_symmetric_refinement, social_method_check, ChoicePolicy, SocialMethod,
};
use resolute::relation::{Relation, Reversal};
use resolute::rules::{evaluate_all, RuleId};

fn main() {
    let gen = GroupElement {
        phi: Perm::identity(2),
        psi: parse_cycles(4, "(1 4)(2 3)").unwrap(),
        rho: Reversal::Rev,
    };
    let group = SymmetryGroup::generate(2, 4, &[gen], 100).unwrap();
    let borda = evaluate_all(&RuleId::Borda, 2, 4).unwrap();

    // any symmetric resolute refinement certifies itself: strip the
    // diagonal from its rankings and check the resulting method
    let (f, _) = build_symmetric_refinement(&group, &borda, ChoicePolicy::LexMin).unwrap();
    let method = SocialMethod::from_resolute(&f).unwrap();
    let check = social_method_check(&borda, &group, &method).unwrap();
    println!("stripped refinement graph: refines={} mirrors={}", check.refines, check.condition_a);

    // the empty method refines nothing smaller than the full set of
    // rankings
    let size = Profile::space_size(2, 4) as usize;
    let empty = SocialMethod::new(2, 4, vec![Relation::empty(4); size]).unwrap();
    let check = social_method_check(&borda, &group, &empty).unwrap();
    println!(
        "empty method: refines={} (first leak at profile {:?}) mirrors={}",
        check.refines, check.refines_witness, check.condition_a
    );

    // a method that ignores the stabilizer mirror fails the certificate
    let lopsided = SocialMethod::new(
        2,
        4,
        vec![Relation::from_pairs(4, &[(1, 2)]).unwrap(); size],
    )
    .unwrap();
    let check = social_method_check(&borda, &group, &lopsided).unwrap();
    match check.condition_a_witness {
        Some((profile, element, pair)) => println!(
            "constant 1-over-2 method: mirror breaks at profile {profile}, element {element}, pair {pair:?}"
        ),
        None => println!("constant 1-over-2 method: mirror holds"),
    }
}
