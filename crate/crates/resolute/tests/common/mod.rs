//! Shared helpers for the integration suites: exhaustive subgroup
//! catalogs, seeded random generators, and brute-force oracles that stay
//! independent of the orbit machinery they cross-check.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use resolute::perm::{factorial, Perm, PermGroup, GROUP_CAP};
use resolute::profile::{GroupElement, Profile, SymmetryGroup};
use resolute::relation::{LinearOrder, Relation, Reversal};
use resolute::rules::SpcValue;

/// Every subgroup of S_m for tiny m, by closing all element subsets.
pub fn all_subgroups(m: usize) -> Vec<PermGroup> {
    let elements: Vec<Perm> = Perm::all(m).collect();
    assert!(elements.len() <= 6, "subset enumeration only works for m <= 3");
    let mut out: Vec<PermGroup> = Vec::new();
    for mask in 0u32..1 << elements.len() {
        let gens: Vec<Perm> = elements
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, p)| p.clone())
            .collect();
        let g = PermGroup::generate(m, &gens, GROUP_CAP).unwrap();
        if !out.iter().any(|o| o.elements() == g.elements()) {
            out.push(g);
        }
    }
    out
}

/// All subgroups generated by at most two elements; for m <= 4 this
/// reaches every subgroup.
pub fn two_generated_subgroups(m: usize) -> Vec<PermGroup> {
    let elements: Vec<Perm> = Perm::all(m).collect();
    let mut out: Vec<PermGroup> = vec![PermGroup::trivial(m)];
    let mut seen: Vec<Vec<Perm>> = vec![out[0].elements().to_vec()];
    let push = |g: PermGroup, seen: &mut Vec<Vec<Perm>>, out: &mut Vec<PermGroup>| {
        if !seen.iter().any(|e| e == g.elements()) {
            seen.push(g.elements().to_vec());
            out.push(g);
        }
    };
    for a in &elements {
        let g = PermGroup::generate(m, std::slice::from_ref(a), GROUP_CAP).unwrap();
        push(g, &mut seen, &mut out);
    }
    for (i, a) in elements.iter().enumerate() {
        for b in elements.iter().skip(i + 1) {
            let g = PermGroup::generate(m, &[a.clone(), b.clone()], GROUP_CAP).unwrap();
            push(g, &mut seen, &mut out);
        }
    }
    out
}

/// The canonical negative witness: the order-2 group pairing an
/// alternative involution with the rank reversal.
pub fn involution_omega_group(h: usize, n: usize, psi_cycles: &str) -> SymmetryGroup {
    let g = GroupElement {
        phi: Perm::identity(h),
        psi: resolute::perm::parse_cycles(n, psi_cycles).unwrap(),
        rho: Reversal::Rev,
    };
    SymmetryGroup::generate(h, n, &[g], GROUP_CAP).unwrap()
}

/// Product-group catalog for one (h, n): every V x W x ({id} | Omega)
/// over the two-generated subgroup catalogs, deduplicated.
pub fn product_group_catalog(h: usize, n: usize) -> Vec<SymmetryGroup> {
    let mut out = Vec::new();
    for v in two_generated_subgroups(h) {
        for w in two_generated_subgroups(n) {
            for omega in [false, true] {
                out.push(SymmetryGroup::from_product(&v, &w, omega));
            }
        }
    }
    out
}

/// The group catalog the suites quantify over: every product group
/// V x W x ({id} | Omega) from the two-generated subgroup catalogs for
/// n <= 3; for n = 4 the alternative side is curtailed to a spanning set
/// of subgroup shapes to keep scans fast, and the involution-reversal
/// witness group is always included.
pub fn test_catalog(h: usize, n: usize) -> Vec<SymmetryGroup> {
    let mut groups = if n <= 3 {
        product_group_catalog(h, n)
    } else {
        let w_shapes: Vec<Vec<&str>> = vec![
            vec![],
            vec!["(1 2)"],
            vec!["(1 2)(3 4)"],
            vec!["(1 2 3)"],
            vec!["(1 2 3 4)"],
            vec!["(1 2)", "(3 4)"],
            vec!["(1 2)", "(1 2 3 4)"],
        ];
        let mut out = Vec::new();
        for v in two_generated_subgroups(h) {
            for shape in &w_shapes {
                let gens: Vec<Perm> = shape
                    .iter()
                    .map(|s| resolute::perm::parse_cycles(n, s).unwrap())
                    .collect();
                let w = PermGroup::generate(n, &gens, GROUP_CAP).unwrap();
                for omega in [false, true] {
                    out.push(SymmetryGroup::from_product(&v, &w, omega));
                }
            }
        }
        out
    };
    if n.is_multiple_of(2) && n >= 4 {
        let pairs: String = (1..=n / 2).map(|i| format!("({} {})", i, n + 1 - i)).collect();
        groups.push(involution_omega_group(h, n, &pairs));
    }
    // deduplicate by element lists
    let mut seen: Vec<Vec<GroupElement>> = Vec::new();
    groups.retain(|g| {
        if seen.iter().any(|e| e == g.elements()) {
            false
        } else {
            seen.push(g.elements().to_vec());
            true
        }
    });
    groups
}

/// Every order on m elements: ordered set partitions.
pub fn all_orders(m: usize) -> Vec<Relation> {
    let mut out = Vec::new();
    for partition in set_partitions(m) {
        let c = partition.len();
        for arrangement in Perm::all(c) {
            let classes: Vec<Vec<usize>> = (0..c)
                .map(|rank| partition[arrangement.apply(rank)].iter().map(|&e| e + 1).collect())
                .collect();
            out.push(Relation::from_order_classes(m, &classes).unwrap());
        }
    }
    out
}

/// A random order on m elements: shuffle, then cut into ranked blocks.
pub fn random_order(rng: &mut ChaCha8Rng, m: usize) -> Relation {
    let mut elems: Vec<usize> = (1..=m).collect();
    for i in (1..m).rev() {
        let j = rng.gen_range(0..=i);
        elems.swap(i, j);
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut current = vec![elems[0]];
    for &e in &elems[1..] {
        if rng.gen_bool(0.5) {
            classes.push(std::mem::take(&mut current));
        }
        current.push(e);
    }
    classes.push(current);
    Relation::from_order_classes(m, &classes).unwrap()
}

pub fn random_perm(rng: &mut ChaCha8Rng, m: usize) -> Perm {
    Perm::from_lehmer(m, rng.gen_range(0..factorial(m)))
}

/// All set partitions of {0, ..., m-1} via restricted growth strings.
pub fn set_partitions(m: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut assignment = vec![0usize; m];
    fn rec(m: usize, i: usize, max_used: usize, assignment: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == m {
            let classes = max_used + 1;
            let mut partition = vec![Vec::new(); classes];
            for (e, &c) in assignment.iter().enumerate() {
                partition[c].push(e);
            }
            out.push(partition);
            return;
        }
        for c in 0..=max_used + 1 {
            assignment[i] = c;
            rec(m, i + 1, max_used.max(c), assignment, out);
        }
    }
    if m == 0 {
        return out;
    }
    rec(m, 1, 0, &mut assignment, &mut out);
    out
}

/// Direct definition check: is the table of a resolute function
/// symmetric for a group? Works straight from the action, no orbit
/// machinery.
pub fn resolute_is_symmetric(table: &[u32], h: usize, n: usize, group: &SymmetryGroup) -> bool {
    for idx in 0..table.len() as u64 {
        let p = Profile::from_index(h, n, idx);
        let q = LinearOrder::from_rank(n, table[idx as usize] as u64);
        for g in group.elements() {
            let moved = p.act(g).unwrap().index();
            let expected = q.relabel(&g.psi).unwrap().reverse_if(g.rho);
            if table[moved as usize] as u64 != expected.rank() {
                return false;
            }
        }
    }
    true
}

/// Direct definition check of the two consistency clauses for a resolute
/// ranking table.
pub fn resolute_is_consistent(table: &[u32], h: usize, n: usize, group: &SymmetryGroup) -> bool {
    for idx in 0..table.len() as u64 {
        let p = Profile::from_index(h, n, idx);
        let q = LinearOrder::from_rank(n, table[idx as usize] as u64);
        for g in group.elements() {
            let moved = p.act(g).unwrap().index();
            let shifted = q.relabel(&g.psi).unwrap();
            let ok = match g.rho {
                Reversal::Id => table[moved as usize] as u64 == shifted.rank(),
                Reversal::Rev => table[moved as usize] as u64 != shifted.rank(),
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Every resolute refinement of a tabulated correspondence, as per-profile
/// chosen ranks. Only sane for tiny value products.
pub fn all_resolute_refinements(c: &SpcValue) -> Vec<Vec<u32>> {
    let size = Profile::space_size(c.h(), c.n()) as usize;
    let mut out: Vec<Vec<u32>> = vec![Vec::new()];
    for idx in 0..size {
        let choices = c.value(idx as u64);
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for partial in &out {
            for &choice in choices {
                let mut extended = partial.clone();
                extended.push(choice);
                next.push(extended);
            }
        }
        out = next;
        assert!(out.len() <= 1 << 20, "refinement enumeration exploded");
    }
    out
}
