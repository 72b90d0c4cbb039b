//! Concrete social preference correspondences (Borda, Copeland, Minimax,
//! Kemeny, custom tables), induced k-winner correspondences, and the
//! symmetry / consistency decision procedures.

use rayon::prelude::*;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::{factorial, Perm, PermGroup, GROUP_CAP};
use crate::profile::{
    ProfileAction, GroupElement, Profile, SymmetryGroup, PROFILE_SPACE_CAP,
};
use crate::relation::{apply_perm_to_mask, LinearOrder, Relation, Reversal};

/// A social preference correspondence tabulated over the whole profile
/// space: `sets[p]` holds the selected rankings as sorted canonical ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpcValue {
    h: usize,
    n: usize,
    sets: Vec<Vec<u32>>,
}

impl SpcValue {
    pub fn new(h: usize, n: usize, sets: Vec<Vec<u32>>) -> Result<SpcValue> {
        let expected = Profile::space_size(h, n);
        if sets.len() as u128 != expected {
            return Err(Error::BrokenInvariant(format!(
                "table covers {} profiles, expected {expected}",
                sets.len()
            )));
        }
        Ok(SpcValue { h, n, sets })
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, index: u64) -> &[u32] {
        &self.sets[index as usize]
    }

    pub fn orders(&self, index: u64) -> Vec<LinearOrder> {
        self.sets[index as usize]
            .iter()
            .map(|&r| LinearOrder::from_rank(self.n, r as u64))
            .collect()
    }

    /// First profile with an empty value, if any.
    pub fn first_empty(&self) -> Option<u64> {
        self.sets.iter().position(|s| s.is_empty()).map(|i| i as u64)
    }

    pub fn is_decisive(&self) -> bool {
        self.first_empty().is_none()
    }

    pub fn is_resolute(&self) -> bool {
        self.sets.iter().all(|s| s.len() == 1)
    }

    pub(crate) fn sets(&self) -> &[Vec<u32>] {
        &self.sets
    }
}

/// A k-winner correspondence tabulated over the profile space:
/// `sets[p]` holds the selected committees as sorted subset bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KsccValue {
    h: usize,
    n: usize,
    k: usize,
    sets: Vec<Vec<u32>>,
}

impl KsccValue {
    pub fn new(h: usize, n: usize, k: usize, sets: Vec<Vec<u32>>) -> Result<KsccValue> {
        if k < 1 || k >= n {
            return Err(Error::InvalidK { k, n });
        }
        let expected = Profile::space_size(h, n);
        if sets.len() as u128 != expected {
            return Err(Error::BrokenInvariant(format!(
                "table covers {} profiles, expected {expected}",
                sets.len()
            )));
        }
        Ok(KsccValue { h, n, k, sets })
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn value(&self, index: u64) -> &[u32] {
        &self.sets[index as usize]
    }

    pub fn first_empty(&self) -> Option<u64> {
        self.sets.iter().position(|s| s.is_empty()).map(|i| i as u64)
    }

    pub fn is_decisive(&self) -> bool {
        self.first_empty().is_none()
    }

    pub fn is_resolute(&self) -> bool {
        self.sets.iter().all(|s| s.len() == 1)
    }

    pub(crate) fn sets(&self) -> &[Vec<u32>] {
        &self.sets
    }
}

/// Which rule to evaluate.
#[derive(Clone, Debug)]
pub enum RuleId {
    Borda,
    Copeland,
    Minimax,
    Kemeny,
    /// A full table keyed by canonical profile index.
    Custom(Arc<SpcValue>),
}

impl RuleId {
    pub fn name(&self) -> &'static str {
        match self {
            RuleId::Borda => "borda",
            RuleId::Copeland => "copeland",
            RuleId::Minimax => "minimax",
            RuleId::Kemeny => "kemeny",
            RuleId::Custom(_) => "custom",
        }
    }
}

/// Pairwise support: entry (x, y) counts voters ranking x above y.
fn support_matrix(p: &Profile) -> Vec<Vec<usize>> {
    let n = p.n();
    let mut m = vec![vec![0usize; n]; n];
    for b in p.ballots() {
        let inv = b.as_perm().inverse();
        for x in 0..n {
            for y in 0..n {
                if inv.apply(x) < inv.apply(y) {
                    m[x][y] += 1;
                }
            }
        }
    }
    m
}

/// All linear extensions of the weak order "better score first": within a
/// score tie every arrangement appears, so the result is the full set of
/// rankings compatible with the scores, in canonical order.
fn score_extensions(scores: &[i64], ascending: bool) -> Vec<LinearOrder> {
    let n = scores.len();
    let mut alts: Vec<usize> = (0..n).collect();
    alts.sort_by_key(|&x| (if ascending { scores[x] } else { -scores[x] }, x));
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for x in alts {
        match blocks.last_mut() {
            Some(b) if scores[b[0]] == scores[x] => b.push(x),
            _ => blocks.push(vec![x]),
        }
    }
    let mut out = Vec::new();
    let mut current: Vec<usize> = Vec::with_capacity(n);
    fn rec(blocks: &[Vec<usize>], current: &mut Vec<usize>, out: &mut Vec<LinearOrder>) {
        match blocks.first() {
            None => out.push(LinearOrder::from_rank_to_alt(current.clone()).unwrap()),
            Some(block) => {
                let mut perm: Vec<usize> = block.clone();
                loop {
                    current.extend_from_slice(&perm);
                    rec(&blocks[1..], current, out);
                    current.truncate(current.len() - perm.len());
                    if !next_permutation(&mut perm) {
                        break;
                    }
                }
            }
        }
    }
    rec(&blocks, &mut current, &mut out);
    out.sort();
    out
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Evaluates one rule at one profile. Every catalog rule is decisive by
/// construction (score rules return all extensions of a weak order,
/// Kemeny returns all total-distance minimizers).
pub fn evaluate_spc(rule: &RuleId, p: &Profile) -> Result<Vec<LinearOrder>> {
    let n = p.n();
    match rule {
        RuleId::Borda => {
            let mut scores = vec![0i64; n];
            for b in p.ballots() {
                for r in 0..n {
                    scores[b.alt_at(r)] += (n - 1 - r) as i64;
                }
            }
            Ok(score_extensions(&scores, false))
        }
        RuleId::Copeland => {
            let m = support_matrix(p);
            let mut scores = vec![0i64; n];
            for x in 0..n {
                for y in 0..n {
                    if x == y {
                        continue;
                    }
                    if m[x][y] > m[y][x] {
                        scores[x] += 1;
                    } else if m[y][x] > m[x][y] {
                        scores[x] -= 1;
                    }
                }
            }
            Ok(score_extensions(&scores, false))
        }
        RuleId::Minimax => {
            let m = support_matrix(p);
            let scores: Vec<i64> = (0..n)
                .map(|x| (0..n).filter(|&y| y != x).map(|y| m[y][x] as i64).max().unwrap_or(0))
                .collect();
            Ok(score_extensions(&scores, true))
        }
        RuleId::Kemeny => {
            let mut best = u64::MAX;
            let mut winners: Vec<LinearOrder> = Vec::new();
            for q in LinearOrder::all(n) {
                let total: u64 = p
                    .ballots()
                    .iter()
                    .map(|b| kendall_tau(&q, b) as u64)
                    .sum();
                if total < best {
                    best = total;
                    winners.clear();
                }
                if total == best {
                    winners.push(q);
                }
            }
            Ok(winners)
        }
        RuleId::Custom(table) => {
            if table.h() != p.h() || table.n() != n {
                return Err(Error::DegreeMismatch { expected: table.n(), found: n });
            }
            Ok(table.orders(p.index()))
        }
    }
}

/// Number of discordant pairs between two rankings.
pub fn kendall_tau(a: &LinearOrder, b: &LinearOrder) -> usize {
    let n = a.degree();
    let ia = a.as_perm().inverse();
    let ib = b.as_perm().inverse();
    let mut d = 0;
    for x in 0..n {
        for y in x + 1..n {
            if (ia.apply(x) < ia.apply(y)) != (ib.apply(x) < ib.apply(y)) {
                d += 1;
            }
        }
    }
    d
}

/// Tabulates a rule over the whole profile space.
pub fn evaluate_all(rule: &RuleId, h: usize, n: usize) -> Result<SpcValue> {
    let size = Profile::space_size(h, n);
    if size > PROFILE_SPACE_CAP as u128 {
        return Err(Error::ProfileSpaceTooLarge { size, cap: PROFILE_SPACE_CAP });
    }
    let sets: Result<Vec<Vec<u32>>> = (0..size as u64)
        .into_par_iter()
        .map(|idx| {
            let p = Profile::from_index(h, n, idx);
            Ok(evaluate_spc(rule, &p)?.iter().map(|q| q.rank() as u32).collect())
        })
        .collect();
    SpcValue::new(h, n, sets?)
}

/// The k-winner correspondence induced by taking top-k sets pointwise.
pub fn induce_kscc(c: &SpcValue, k: usize) -> Result<KsccValue> {
    if k < 1 || k >= c.n() {
        return Err(Error::InvalidK { k, n: c.n() });
    }
    let sets = c
        .sets
        .iter()
        .map(|orders| {
            let mut masks: Vec<u32> = orders
                .iter()
                .map(|&r| LinearOrder::from_rank(c.n(), r as u64).top_k(k))
                .collect();
            masks.sort_unstable();
            masks.dedup();
            masks
        })
        .collect();
    KsccValue::new(c.h(), c.n(), k, sets)
}

/// Maps a canonical ranking rank through q -> psi q rho.
pub(crate) fn order_map(n: usize, psi: &Perm, rho: Reversal) -> Vec<u32> {
    (0..factorial(n))
        .map(|r| {
            LinearOrder::from_rank(n, r)
                .relabel(psi)
                .expect("degrees match")
                .reverse_if(rho)
                .rank() as u32
        })
        .collect()
}

/// Maps a subset bitmask through psi.
pub(crate) fn mask_map(n: usize, psi: &Perm) -> Vec<u32> {
    (0u32..1 << n).map(|w| apply_perm_to_mask(psi, w)).collect()
}

fn map_set(set: &[u32], map: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> = set.iter().map(|&v| map[v as usize]).collect();
    out.sort_unstable();
    out
}

fn check_dims(h: usize, n: usize, group: &SymmetryGroup) -> Result<()> {
    if group.h() != h {
        return Err(Error::DegreeMismatch { expected: h, found: group.h() });
    }
    if group.n() != n {
        return Err(Error::DegreeMismatch { expected: n, found: group.n() });
    }
    Ok(())
}

/// Decides whether C(p^g) = psi C(p) rho for every profile and every
/// group element; reports the first violation in canonical order
/// (profile index, then element index).
pub fn check_symmetric(
    c: &SpcValue,
    group: &SymmetryGroup,
) -> Result<(bool, Option<(Profile, GroupElement)>)> {
    check_dims(c.h(), c.n(), group)?;
    let tables = ProfileAction::build(group);
    let maps: Vec<Vec<u32>> = group
        .elements()
        .iter()
        .map(|g| order_map(c.n(), &g.psi, g.rho))
        .collect();
    for idx in 0..c.sets.len() as u64 {
        for (e, g) in group.elements().iter().enumerate() {
            let moved = tables.apply(idx, e);
            if c.value(moved) != map_set(c.value(idx), &maps[e]) {
                return Ok((false, Some((Profile::from_index(c.h(), c.n(), idx), g.clone()))));
            }
        }
    }
    Ok((true, None))
}

/// The two consistency clauses for a tabulated SPC: equivariance on the
/// identity slice, and no fixed singleton under a reversal element.
pub fn check_consistent_spc(
    c: &SpcValue,
    group: &SymmetryGroup,
) -> Result<(bool, Option<(Profile, GroupElement)>)> {
    check_dims(c.h(), c.n(), group)?;
    let tables = ProfileAction::build(group);
    let psi_maps: Vec<Vec<u32>> = group
        .elements()
        .iter()
        .map(|g| order_map(c.n(), &g.psi, Reversal::Id))
        .collect();
    for idx in 0..c.sets.len() as u64 {
        for (e, g) in group.elements().iter().enumerate() {
            let moved = tables.apply(idx, e);
            let shifted = map_set(c.value(idx), &psi_maps[e]);
            let ok = match g.rho {
                Reversal::Id => c.value(moved) == shifted,
                Reversal::Rev => c.value(idx).len() != 1 || c.value(moved) != shifted,
            };
            if !ok {
                return Ok((false, Some((Profile::from_index(c.h(), c.n(), idx), g.clone()))));
            }
        }
    }
    Ok((true, None))
}

/// Same clauses for a k-winner correspondence; psi acts on committees.
pub fn check_consistent_kscc(
    c: &KsccValue,
    group: &SymmetryGroup,
) -> Result<(bool, Option<(Profile, GroupElement)>)> {
    check_dims(c.h(), c.n(), group)?;
    let tables = ProfileAction::build(group);
    let psi_maps: Vec<Vec<u32>> = group
        .elements()
        .iter()
        .map(|g| mask_map(c.n(), &g.psi))
        .collect();
    for idx in 0..c.sets.len() as u64 {
        for (e, g) in group.elements().iter().enumerate() {
            let moved = tables.apply(idx, e);
            let shifted = map_set(c.value(idx), &psi_maps[e]);
            let ok = match g.rho {
                Reversal::Id => c.value(moved) == shifted,
                Reversal::Rev => c.value(idx).len() != 1 || c.value(moved) != shifted,
            };
            if !ok {
                return Ok((false, Some((Profile::from_index(c.h(), c.n(), idx), g.clone()))));
            }
        }
    }
    Ok((true, None))
}

/// The classical property groups, including the relation-generalized
/// forms built from automorphism groups.
#[derive(Clone, Debug)]
pub enum NamedGroup<'a> {
    /// S_h x {id} x {id}
    Anonymity,
    /// {id} x S_n x {id}
    Neutrality,
    /// {id} x {id} x Omega
    Reversal,
    /// S_h x S_n x Omega
    FullG,
    /// Aut(R) x {id} x {id} for a relation on the voters
    RAnon(&'a Relation),
    /// {id} x Aut(Q) x {id} for a relation on the alternatives
    QNeut(&'a Relation),
}

/// Builds the subgroup expressing a named property. Combinations are
/// joins: generate from the union of the parts.
pub fn named_group(h: usize, n: usize, name: &NamedGroup) -> Result<SymmetryGroup> {
    match name {
        NamedGroup::Anonymity => Ok(SymmetryGroup::from_product(
            &PermGroup::symmetric(h)?,
            &PermGroup::trivial(n),
            false,
        )),
        NamedGroup::Neutrality => Ok(SymmetryGroup::from_product(
            &PermGroup::trivial(h),
            &PermGroup::symmetric(n)?,
            false,
        )),
        NamedGroup::Reversal => Ok(SymmetryGroup::from_product(
            &PermGroup::trivial(h),
            &PermGroup::trivial(n),
            true,
        )),
        NamedGroup::FullG => SymmetryGroup::full(h, n),
        NamedGroup::RAnon(r) => {
            if r.degree() != h {
                return Err(Error::DegreeMismatch { expected: h, found: r.degree() });
            }
            Ok(SymmetryGroup::from_product(&r.aut_group()?, &PermGroup::trivial(n), false))
        }
        NamedGroup::QNeut(q) => {
            if q.degree() != n {
                return Err(Error::DegreeMismatch { expected: n, found: q.degree() });
            }
            Ok(SymmetryGroup::from_product(&PermGroup::trivial(h), &q.aut_group()?, false))
        }
    }
}

/// Joins a list of named groups into one subgroup.
pub fn joined_group(h: usize, n: usize, names: &[NamedGroup]) -> Result<SymmetryGroup> {
    let mut acc = SymmetryGroup::trivial(h, n);
    for name in names {
        acc = acc.join(&named_group(h, n, name)?, GROUP_CAP)?;
    }
    Ok(acc)
}

/// Parses a custom rule table: one line per profile,
/// `profile_index : order ; order ; ...` with orders listed best to worst.
pub fn parse_custom_table(text: &str, h: usize, n: usize) -> Result<SpcValue> {
    let size = Profile::space_size(h, n);
    if size > PROFILE_SPACE_CAP as u128 {
        return Err(Error::ProfileSpaceTooLarge { size, cap: PROFILE_SPACE_CAP });
    }
    let mut sets: Vec<Option<Vec<u32>>> = vec![None; size as usize];
    for (ln0, line) in text.lines().enumerate() {
        let ln = ln0 + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (idx_part, rest) = line.split_once(':').ok_or(Error::Parse {
            line: ln,
            msg: "expected `profile_index : order ; ...`".into(),
        })?;
        let idx: usize = idx_part.trim().parse().map_err(|_| Error::Parse {
            line: ln,
            msg: format!("bad profile index {idx_part:?}"),
        })?;
        if idx >= sets.len() {
            return Err(Error::Parse { line: ln, msg: format!("profile index {idx} out of range") });
        }
        if sets[idx].is_some() {
            return Err(Error::Parse { line: ln, msg: format!("profile index {idx} repeated") });
        }
        let mut ranks = Vec::new();
        for order_text in rest.split(';').map(str::trim).filter(|t| !t.is_empty()) {
            let ranking: Vec<usize> = order_text
                .split_whitespace()
                .map(|t| {
                    t.parse().map_err(|_| Error::Parse {
                        line: ln,
                        msg: format!("bad alternative {t:?}"),
                    })
                })
                .collect::<Result<_>>()?;
            if ranking.len() != n {
                return Err(Error::Parse { line: ln, msg: format!("expected {n} alternatives") });
            }
            let q = LinearOrder::from_ranking(&ranking).map_err(|e| match e {
                Error::Parse { msg, .. } => Error::Parse { line: ln, msg },
                other => other,
            })?;
            ranks.push(q.rank() as u32);
        }
        ranks.sort_unstable();
        ranks.dedup();
        sets[idx] = Some(ranks);
    }
    let sets: Vec<Vec<u32>> = sets
        .into_iter()
        .enumerate()
        .map(|(i, s)| s.ok_or(Error::Parse { line: 0, msg: format!("profile index {i} missing") }))
        .collect::<Result<_>>()?;
    SpcValue::new(h, n, sets)
}

/// A constant table, handy for tests and counterexamples.
pub fn constant_spc(h: usize, n: usize, orders: &[LinearOrder]) -> Result<SpcValue> {
    let mut ranks: Vec<u32> = orders.iter().map(|q| q.rank() as u32).collect();
    ranks.sort_unstable();
    ranks.dedup();
    let size = Profile::space_size(h, n) as usize;
    SpcValue::new(h, n, vec![ranks; size])
}
