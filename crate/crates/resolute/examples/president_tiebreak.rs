//! The committee-with-a-president story: weakening anonymity to "the
//! president outranks an interchangeable floor" makes tie-breaking
//! possible for any number of voters, and the classic president-decides
//! selector realizes it.
//!
//! Run with: cargo run --example president_tiebreak

use resolute::refine::{
    existence_gate, president_preset, president_tiebreak, split_committee_partitions, GateMode,
    PresidentPolicy,
};
use resolute::relation::{LinearOrder, Relation};
use resolute::profile::Profile;
use resolute::rules::{evaluate_all, induce_kscc, RuleId};

fn main() {
    let h = 5;
    let (president, description) = president_preset(h).unwrap();
    println!("power relation: {description}");
    let (_, sizes) = president.indifference_partition().unwrap();
    println!("indifference sizes {sizes} -> type number 1, so the gate always opens:\n");

    for n in 2..=4 {
        let gate = existence_gate(&president, &Relation::total(n), GateMode::SymId, None).unwrap();
        println!(
            "n = {n}: verdict {} (gcd({}, {}) = {})",
            gate.verdict, gate.gamma_aut_r, gate.aut_q_order, gate.gcd_id
        );
    }

    // the concrete selector: the president's favourite among the winners
    let borda = evaluate_all(&RuleId::Borda, h, 3).unwrap();
    let winners = induce_kscc(&borda, 1).unwrap();
    let best = president_tiebreak(&winners, PresidentPolicy::Best).unwrap();
    let worst = president_tiebreak(&winners, PresidentPolicy::Worst).unwrap();
    // scores tie alternatives 1 and 2 at 7 points each
    let p = Profile::new(vec![
        LinearOrder::from_ranking(&[1, 2, 3]).unwrap(),
        LinearOrder::from_ranking(&[2, 1, 3]).unwrap(),
        LinearOrder::from_ranking(&[2, 1, 3]).unwrap(),
        LinearOrder::from_ranking(&[2, 1, 3]).unwrap(),
        LinearOrder::from_ranking(&[1, 3, 2]).unwrap(),
    ])
    .unwrap();
    let tied: Vec<String> = winners
        .value(p.index())
        .iter()
        .map(|&w| resolute::relation::mask_to_string(3, w))
        .collect();
    println!("\na tied Borda outcome: {}", tied.join(" "));
    println!(
        "president (voter 1, ballot {}) picks {} best, {} worst",
        p.ballot(0),
        resolute::relation::mask_to_string(3, best.value(p.index())),
        resolute::relation::mask_to_string(3, worst.value(p.index()))
    );

    // no single president? split the committee into coprime halves
    println!("\ncoprime splits for a committee of 7: {:?}", split_committee_partitions(7));
    println!("(either block may be any size; only the coprimality matters)");
}
