//! The rule catalog on a profile with genuine ties, and the symmetry
//! checkers that classify each rule.
//!
//! Run with: cargo run --example classic_rules

use resolute::profile::{Profile, SymmetryGroup};
use resolute::relation::LinearOrder;
use resolute::rules::{check_symmetric, evaluate_all, evaluate_spc, induce_kscc, RuleId};

fn main() {
    let p = Profile::new(vec![
        LinearOrder::from_ranking(&[1, 2, 3]).unwrap(),
        LinearOrder::from_ranking(&[2, 1, 3]).unwrap(),
    ])
    .unwrap();
    println!("profile:\n{p}");

    for rule in [RuleId::Borda, RuleId::Copeland, RuleId::Minimax, RuleId::Kemeny] {
        let value = evaluate_spc(&rule, &p).unwrap();
        let listed: Vec<String> = value.iter().map(|q| q.to_string()).collect();
        println!("{:<8} -> {}", rule.name(), listed.join(" | "));
    }

    // induced single-winner committees
    let borda = evaluate_all(&RuleId::Borda, 2, 3).unwrap();
    let winners = induce_kscc(&borda, 1).unwrap();
    let sets: Vec<String> = winners
        .value(p.index())
        .iter()
        .map(|&w| resolute::relation::mask_to_string(3, w))
        .collect();
    println!("borda winners (k = 1): {}", sets.join(" "));

    // which symmetries does each rule carry?
    let full = SymmetryGroup::full(2, 3).unwrap();
    println!("\nsymmetric under the full voter/alternative/reversal group?");
    for rule in [RuleId::Borda, RuleId::Copeland, RuleId::Minimax, RuleId::Kemeny] {
        let table = evaluate_all(&rule, 2, 3).unwrap();
        let (ok, witness) = check_symmetric(&table, &full).unwrap();
        match witness {
            None => println!("{:<8} yes", rule.name()),
            Some((p, g)) => println!(
                "{:<8} no  (breaks at profile {} under {})",
                rule.name(),
                p.index(),
                g
            ),
        }
        let _ = ok;
    }
}
