//! The constructive core of reversal-symmetric tie-breaking: given an
//! involution psi pairing alternatives and a partial comparison relation
//! that mirrors correctly, produce a full ranking that contains the
//! relation and turns into itself under "rename by psi, then reverse".
//!
//! Run with: cargo run --example invariant_ranking

use resolute::perm::parse_cycles;
use resolute::refine::reversal_invariant_extension;
use resolute::relation::{Relation, Reversal};

fn main() {
    // five alternatives; psi swaps 1<->5 and 2<->4, fixing 3
    let psi = parse_cycles(5, "(1 5)(2 4)").unwrap();

    // seed comparisons: 2 over 3 forces its mirror 3 over 4
    let rp = Relation::from_pairs(5, &[(2, 3), (3, 4), (5, 2), (4, 1)]).unwrap();
    println!("psi = {psi}");
    println!("seed relation: {:?}", rp.pairs().iter().map(|&(x, y)| (x + 1, y + 1)).collect::<Vec<_>>());

    let q = reversal_invariant_extension(&psi, &rp).unwrap();
    println!("invariant ranking: {q}");
    let mirrored = q.relabel(&psi).unwrap().reverse_if(Reversal::Rev);
    println!("rename-and-reverse: {mirrored}  (identical: {})", mirrored == q);

    // the fixed point of psi always lands dead centre
    let free = reversal_invariant_extension(&psi, &Relation::empty(5)).unwrap();
    println!("\nwith no constraints: {free} (alternative 3 at rank 3)");

    // inputs that break a hypothesis are rejected with a named tag
    let wrong = parse_cycles(5, "(1 2)").unwrap();
    println!("\npsi = (1 2)? {:?}", reversal_invariant_extension(&wrong, &Relation::empty(5)).unwrap_err());
    let unmirrored = Relation::from_pairs(5, &[(1, 2)]).unwrap();
    println!("missing mirror pair? {:?}", reversal_invariant_extension(&psi, &unmirrored).unwrap_err());
}
