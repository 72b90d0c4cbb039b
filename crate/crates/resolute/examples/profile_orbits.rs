//! The symmetry action on preference profiles: orbits, stabilizers, the
//! two orbit classes, and the regularity test with its gcd criterion.
//!
//! Run with: cargo run --example profile_orbits

use resolute::perm::{parse_cycles, Perm, PermGroup};
use resolute::profile::{
    is_regular, orbit_decomposition, stabilizer, GroupElement, Profile, SymmetryGroup,
};
use resolute::relation::{LinearOrder, Reversal};

fn main() {
    // two voters, four alternatives, and the group generated by pairing
    // the alternative involution (1 4)(2 3) with the rank reversal
    let gen = GroupElement {
        phi: Perm::identity(2),
        psi: parse_cycles(4, "(1 4)(2 3)").unwrap(),
        rho: Reversal::Rev,
    };
    let group = SymmetryGroup::generate(2, 4, &[gen], 100).unwrap();
    println!("group order {}", group.order());

    let p = Profile::new(vec![
        LinearOrder::from_ranking(&[1, 2, 3, 4]).unwrap(),
        LinearOrder::from_ranking(&[1, 2, 3, 4]).unwrap(),
    ])
    .unwrap();
    println!("profile index {} is fixed by:", p.index());
    for g in stabilizer(&group, &p).unwrap() {
        println!("  {g}");
    }

    let table = orbit_decomposition(&group).unwrap();
    let (p1, p2) = table.class_counts();
    println!("\norbits: {} total, {p1} free, {p2} reversal-stabilized", table.orbits().len());
    for orbit in table.orbits().iter().filter(|o| o.psi.is_some()).take(4) {
        println!(
            "  rep {} (size {}): reversal partner {}",
            orbit.rep_index,
            orbit.size,
            orbit.psi.as_ref().unwrap()
        );
    }

    // regularity: the template every stabilizer must fit
    let report = is_regular(&group).unwrap();
    println!("\nregular? {}", report.regular);

    // for product groups the answer is pure arithmetic
    for (v, w, omega, label) in [
        (PermGroup::symmetric(3).unwrap(), PermGroup::symmetric(2).unwrap(), false, "S3 x S2 x id"),
        (PermGroup::symmetric(2).unwrap(), PermGroup::symmetric(2).unwrap(), false, "S2 x S2 x id"),
        (PermGroup::trivial(3), PermGroup::trivial(2), true, "reversal only"),
    ] {
        let u = SymmetryGroup::from_product(&v, &w, omega);
        let r = is_regular(&u).unwrap();
        println!(
            "{label:<14} regular={} criterion={:?} agreement={:?}",
            r.regular, r.criterion, r.criterion_agreement
        );
    }
}
