//! Automorphism groups of orders read off the indifference partition:
//! brute force and the closed formulas side by side.
//!
//! Run with: cargo run --example order_automorphisms

use resolute::relation::{order_aut_stats, parse_relation, Relation};

fn main() {
    // classes listed best first; within a class everyone is tied
    let text = "m=11\norder:\n1 2\n3 4 5\n6 7\n8\n9 10 11\n";
    let r = parse_relation(text).unwrap();
    let flags = r.classify();
    println!("order? {}   linear? {}", flags.is_order, flags.is_linear);

    let (classes, sizes) = r.indifference_partition().unwrap();
    println!("indifference sizes: {sizes}");
    let (gamma, aut_order) = order_aut_stats(&sizes);
    println!("by formula: |Aut| = {aut_order}, type number = {gamma}");

    // brute force on a small restriction agrees
    let first_five = Relation::from_order_classes(5, &[vec![1, 2], vec![3, 4, 5]]).unwrap();
    let aut = first_five.aut_group().unwrap();
    println!(
        "restriction to the top two classes: brute-force |Aut| = {} (2! * 3! = 12)",
        aut.order()
    );

    // what the committee can still decide: k-maximum sets
    for k in [2usize, 3, 5] {
        let sets: Vec<String> = r
            .k_max_sets(k)
            .unwrap()
            .iter()
            .map(|&w| resolute::relation::mask_to_string(11, w))
            .collect();
        println!("k = {k}: maximum sets {}", sets.join(" "));
    }
    let _ = classes;
}
