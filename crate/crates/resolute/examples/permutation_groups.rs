//! Permutations, cycle types, and the type number of a group: the
//! arithmetic invariant that decides when symmetric tie-breaking exists.
//!
//! Run with: cargo run --example permutation_groups

use resolute::perm::{parse_cycles, Perm, PermGroup, GROUP_CAP};

fn main() {
    let sigma = parse_cycles(9, "(1 2 3)(4 5 6)(7 8)").unwrap();
    println!("sigma          = {sigma}");
    println!("cycle type     = {}", sigma.cycle_type());
    println!("order          = {}", sigma.order());
    println!("inverse        = {}", sigma.inverse());

    let rho0 = Perm::order_reversing(5);
    println!("\nrank reversal on 5 ranks: {rho0} (type {})", rho0.cycle_type());
    println!(
        "conjugate to (1 5)(2 4)? {}",
        rho0.is_conjugate(&parse_cycles(5, "(1 5)(2 4)").unwrap()).unwrap()
    );

    // explicit subgroup generation and the type number
    println!("\ngroup           order  type number");
    for m in 2..=7 {
        let s_m = PermGroup::symmetric(m).unwrap();
        println!("S_{m}             {:>5}  {}", s_m.order(), s_m.type_number());
    }
    let v4 = PermGroup::generate(
        4,
        &[parse_cycles(4, "(1 2)(3 4)").unwrap(), parse_cycles(4, "(1 3)(2 4)").unwrap()],
        GROUP_CAP,
    )
    .unwrap();
    println!("<(12)(34),(13)(24)> {:>2}  {}", v4.order(), v4.type_number());
    println!("\n(the type number of a voter group being coprime to the size of an");
    println!("alternative group is exactly what licenses symmetric tie-breaking)");
}
