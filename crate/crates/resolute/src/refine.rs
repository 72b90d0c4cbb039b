//! Building and counting resolute refinements: the per-orbit feasibility
//! sets, the invariant-ranking correspondence S, the extremal committee
//! correspondence attached to a group, the arithmetic existence gates,
//! and the reversal-invariant ranking construction.

use num_bigint::BigUint;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

use crate::error::{Error, HypothesisTag, NoRefinementReason, Result};
use crate::perm::{gcd, lcm, Perm};
use crate::profile::{
    is_regular_with_table, orbit_decomposition, stab_psi, stabilizer, ProfileAction, GroupElement,
    OrbitClass, OrbitTable, Profile, SymmetryGroup,
};
use crate::relation::{
    apply_perm_to_mask, k_subset_masks, order_aut_stats, LinearOrder, Relation, Reversal,
};
use crate::rules::{
    check_consistent_kscc, check_consistent_spc, check_symmetric, mask_map, order_map, KsccValue,
    SpcValue,
};

/// How to choose one element from a per-orbit candidate list. Candidates
/// are always presented in canonical order (ranking ranks or subset
/// encodings ascending), so every policy is deterministic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChoicePolicy {
    LexMin,
    LexMax,
    /// Uniform choice from a seeded generator; the orbit id is mixed into
    /// the stream so runs are reproducible.
    Seeded(u64),
}

impl ChoicePolicy {
    pub fn name(&self) -> String {
        match self {
            ChoicePolicy::LexMin => "lex-min".into(),
            ChoicePolicy::LexMax => "lex-max".into(),
            ChoicePolicy::Seeded(s) => format!("seeded:{s}"),
        }
    }

    fn pick<'a, T>(&self, candidates: &'a [T], orbit: u64) -> &'a T {
        debug_assert!(!candidates.is_empty());
        match self {
            ChoicePolicy::LexMin => &candidates[0],
            ChoicePolicy::LexMax => candidates.last().unwrap(),
            ChoicePolicy::Seeded(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(
                    seed ^ orbit.wrapping_mul(0x9E37_79B9_7F4A_7C15),
                );
                &candidates[rng.gen_range(0..candidates.len())]
            }
        }
    }
}

/// Exact refinement count together with its per-orbit factorization
/// (orbits in ascending representative order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinementCount {
    value: BigUint,
    factors: Vec<u64>,
}

impl RefinementCount {
    pub fn from_factors(factors: Vec<u64>) -> RefinementCount {
        let value = factors.iter().fold(BigUint::from(1u32), |acc, &f| acc * f);
        RefinementCount { value, factors }
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn is_zero(&self) -> bool {
        self.factors.contains(&0)
    }
}

impl std::fmt::Display for RefinementCount {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// What a resolute function returns per profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctionKind {
    Ranking,
    Committee { k: usize },
}

/// A resolute tie-breaking function tabulated over the profile space:
/// one ranking rank or committee bitmask per profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResoluteFunction {
    h: usize,
    n: usize,
    kind: FunctionKind,
    policy: String,
    table: Vec<u32>,
}

impl ResoluteFunction {
    pub fn h(&self) -> usize {
        self.h
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> FunctionKind {
        self.kind
    }

    pub fn policy(&self) -> &str {
        &self.policy
    }

    pub fn value(&self, index: u64) -> u32 {
        self.table[index as usize]
    }

    pub fn ranking(&self, index: u64) -> Option<LinearOrder> {
        match self.kind {
            FunctionKind::Ranking => {
                Some(LinearOrder::from_rank(self.n, self.table[index as usize] as u64))
            }
            FunctionKind::Committee { .. } => None,
        }
    }

    /// View as a singleton-valued SPC table (ranking kind only).
    pub fn as_spc(&self) -> Option<SpcValue> {
        match self.kind {
            FunctionKind::Ranking => Some(
                SpcValue::new(self.h, self.n, self.table.iter().map(|&v| vec![v]).collect())
                    .expect("table covers the space"),
            ),
            FunctionKind::Committee { .. } => None,
        }
    }

    /// View as a singleton-valued k-winner table (committee kind only).
    pub fn as_kscc(&self) -> Option<KsccValue> {
        match self.kind {
            FunctionKind::Ranking => None,
            FunctionKind::Committee { k } => Some(
                KsccValue::new(self.h, self.n, k, self.table.iter().map(|&v| vec![v]).collect())
                    .expect("table covers the space"),
            ),
        }
    }

    /// Top-k of a resolute ranking function, as a resolute committee
    /// function.
    pub fn induce_top_k(&self, k: usize) -> Result<ResoluteFunction> {
        match self.kind {
            FunctionKind::Committee { .. } => Err(Error::InvalidK { k, n: self.n }),
            FunctionKind::Ranking => {
                if k < 1 || k >= self.n {
                    return Err(Error::InvalidK { k, n: self.n });
                }
                Ok(ResoluteFunction {
                    h: self.h,
                    n: self.n,
                    kind: FunctionKind::Committee { k },
                    policy: self.policy.clone(),
                    table: self
                        .table
                        .iter()
                        .map(|&v| LinearOrder::from_rank(self.n, v as u64).top_k(k))
                        .collect(),
                })
            }
        }
    }

    fn value_json(&self, v: u32) -> serde_json::Value {
        match self.kind {
            FunctionKind::Ranking => {
                let q = LinearOrder::from_rank(self.n, v as u64);
                serde_json::json!((0..self.n).map(|r| q.alt_at(r) + 1).collect::<Vec<_>>())
            }
            FunctionKind::Committee { .. } => {
                let members: Vec<usize> =
                    (0..self.n).filter(|&x| v & (1 << x) != 0).map(|x| x + 1).collect();
                serde_json::json!(members)
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let kind = match self.kind {
            FunctionKind::Ranking => serde_json::json!("ranking"),
            FunctionKind::Committee { k } => serde_json::json!({ "committee": k }),
        };
        serde_json::json!({
            "kind": kind,
            "policy": self.policy,
            "entries": self
                .table
                .iter()
                .enumerate()
                .map(|(i, &v)| serde_json::json!({ "profile_index": i, "value": self.value_json(v) }))
                .collect::<Vec<_>>(),
        })
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("profile_index\tvalue\n");
        for (i, &v) in self.table.iter().enumerate() {
            let text = match self.kind {
                FunctionKind::Ranking => LinearOrder::from_rank(self.n, v as u64).to_string(),
                FunctionKind::Committee { .. } => {
                    let members: Vec<String> = (0..self.n)
                        .filter(|&x| v & (1 << x) != 0)
                        .map(|x| (x + 1).to_string())
                        .collect();
                    members.join(" ")
                }
            };
            out.push_str(&format!("{i}\t{text}\n"));
        }
        out
    }
}

/// The rankings invariant under the stabilizer of p: the feasible values
/// at p for any symmetric resolute function. Decided by scanning all n!
/// rankings; no regularity assumption, and an empty result is meaningful.
pub fn s_correspondence(group: &SymmetryGroup, p: &Profile) -> Result<Vec<LinearOrder>> {
    let stab = stabilizer(group, p)?;
    Ok(s_from_stab(group.n(), &stab))
}

fn s_from_stab(n: usize, stab: &[GroupElement]) -> Vec<LinearOrder> {
    LinearOrder::all(n)
        .filter(|q| {
            stab.iter().all(|g| {
                let moved = q.relabel(&g.psi).expect("degrees match").reverse_if(g.rho);
                &moved == q
            })
        })
        .collect()
}

fn require_regular(group: &SymmetryGroup, table: &OrbitTable) -> Result<()> {
    let report = is_regular_with_table(group, table)?;
    if !report.regular {
        return Err(Error::NotRegular { witness: report.witness });
    }
    Ok(())
}

/// Per-orbit candidate sets for the symmetric builder: the ranking ranks
/// in S(rep) ∩ C(rep), per orbit.
fn symmetric_orbit_candidates(
    group: &SymmetryGroup,
    table: &OrbitTable,
    c: &SpcValue,
) -> Vec<Vec<u32>> {
    let elems = group.elements();
    table
        .orbits()
        .iter()
        .map(|orbit| {
            let stab: Vec<GroupElement> =
                orbit.stabilizer.iter().map(|&e| elems[e].clone()).collect();
            let s: Vec<u32> =
                s_from_stab(group.n(), &stab).iter().map(|q| q.rank() as u32).collect();
            let cv = c.value(orbit.rep_index);
            s.iter().copied().filter(|r| cv.binary_search(r).is_ok()).collect()
        })
        .collect()
}

/// Exact number of symmetric resolute refinements of a decisive symmetric
/// correspondence: the product over orbits of |S(rep) ∩ C(rep)|. A zero
/// factor means no refinement exists.
pub fn count_symmetric_refinements(
    group: &SymmetryGroup,
    c: &SpcValue,
) -> Result<RefinementCount> {
    let table = orbit_decomposition(group)?;
    preflight_symmetric(group, &table, c)?;
    let factors = symmetric_orbit_candidates(group, &table, c)
        .iter()
        .map(|cand| cand.len() as u64)
        .collect();
    Ok(RefinementCount::from_factors(factors))
}

fn preflight_symmetric(group: &SymmetryGroup, table: &OrbitTable, c: &SpcValue) -> Result<()> {
    if let Some(p) = c.first_empty() {
        return Err(Error::NotDecisive { profile: p });
    }
    require_regular(group, table)?;
    if let (false, Some((p, g))) = check_symmetric(c, group)? {
        let element = group.elements().iter().position(|e| e == &g).unwrap_or(0);
        return Err(Error::NotSymmetric { profile: p.index(), element });
    }
    Ok(())
}

/// Builds a symmetric resolute refinement: pick one invariant ranking per
/// orbit and extend along the action. Also returns the exact count of all
/// such refinements.
pub fn build_symmetric_refinement(
    group: &SymmetryGroup,
    c: &SpcValue,
    policy: ChoicePolicy,
) -> Result<(ResoluteFunction, RefinementCount)> {
    let table = orbit_decomposition(group)?;
    preflight_symmetric(group, &table, c)?;
    let candidates = symmetric_orbit_candidates(group, &table, c);
    let mut chosen = Vec::with_capacity(candidates.len());
    for (j, cand) in candidates.iter().enumerate() {
        if cand.is_empty() {
            return Err(Error::EmptyIntersection { orbit: j });
        }
        chosen.push(*policy.pick(cand, j as u64));
    }
    let count = RefinementCount::from_factors(candidates.iter().map(|c| c.len() as u64).collect());

    // extension: the value at rep^g is psi . q_j . rho
    let n = group.n();
    let mut maps: HashMap<(Vec<usize>, Reversal), Vec<u32>> = HashMap::new();
    let size = Profile::space_size(group.h(), n) as u64;
    let mut out = vec![0u32; size as usize];
    for idx in 0..size {
        let orbit = table.orbit_of(idx);
        let g = &group.elements()[table.witness_of(idx)];
        let map = maps
            .entry((g.psi.images().to_vec(), g.rho))
            .or_insert_with(|| order_map(n, &g.psi, g.rho));
        out[idx as usize] = map[chosen[orbit] as usize];
    }
    let f = ResoluteFunction {
        h: group.h(),
        n,
        kind: FunctionKind::Ranking,
        policy: policy.name(),
        table: out,
    };
    Ok((f, count))
}

/// The two per-orbit feasibility ingredients of the consistent builder in
/// the reversal-containing case.
struct MixedData {
    /// index of the canonical reversal element in the group
    star: usize,
    /// per P2 orbit id: (psi_j, sigma_j) with psi_j = sigma_j rho0 sigma_j^-1
    conjugators: HashMap<usize, (Perm, Perm)>,
}

fn find_conjugator(n: usize, psi: &Perm) -> Result<Perm> {
    let rho0 = Perm::order_reversing(n);
    for sigma in Perm::all(n) {
        let conj = sigma.compose(&rho0)?.compose(&sigma.inverse())?;
        if &conj == psi {
            return Ok(sigma);
        }
    }
    Err(Error::BrokenInvariant(format!("{psi} is not conjugate to the rank reversal")))
}

struct ConsistentOutcome {
    factors: Vec<u64>,
    table: Option<Vec<u32>>,
    blocking: Option<usize>,
}

fn consistent_engine(
    group: &SymmetryGroup,
    table: &OrbitTable,
    values: &[Vec<u32>],
    apply: &mut dyn FnMut(&Perm, u32) -> u32,
    policy: ChoicePolicy,
    build: bool,
) -> Result<ConsistentOutcome> {
    let elems = group.elements();
    let n = group.n();
    let id_slice = group.contained_in_id_slice();
    let size = values.len() as u64;

    let mixed = if id_slice {
        None
    } else {
        let star = elems
            .iter()
            .position(|g| g.rho == Reversal::Rev)
            .expect("a non-id-slice group has a reversal element");
        let mut conjugators = HashMap::new();
        for (j, orbit) in table.orbits().iter().enumerate() {
            if orbit.class == OrbitClass::P2 {
                let stab: Vec<GroupElement> =
                    orbit.stabilizer.iter().map(|&e| elems[e].clone()).collect();
                let psi_j = stab_psi(group, &stab)?.ok_or_else(|| {
                    Error::BrokenInvariant("reversal-stabilized orbit without a partner".into())
                })?;
                let sigma_j = find_conjugator(n, &psi_j)?;
                conjugators.insert(j, (psi_j, sigma_j));
            }
        }
        Some(MixedData { star, conjugators })
    };

    let action = ProfileAction::build(group);
    let mut factors = Vec::with_capacity(table.orbits().len());
    // chosen values per orbit: one for id-slice / P2, a pair for mixed P1
    let mut chosen_single: Vec<u32> = vec![0; table.orbits().len()];
    let mut chosen_pair: Vec<(u32, u32)> = vec![(0, 0); table.orbits().len()];
    let mut blocking = None;

    for (j, orbit) in table.orbits().iter().enumerate() {
        let rep_values = &values[orbit.rep_index as usize];
        match &mixed {
            None => {
                factors.push(rep_values.len() as u64);
                if build {
                    chosen_single[j] = *policy.pick(rep_values, j as u64);
                }
            }
            Some(data) => match orbit.class {
                OrbitClass::P1 => {
                    let star = &elems[data.star];
                    let translate = action.apply(orbit.rep_index, data.star);
                    let translate_values = &values[translate as usize];
                    let mut pairs: Vec<(u32, u32)> = Vec::new();
                    for &y in rep_values {
                        let shifted = apply(&star.psi, y);
                        for &z in translate_values {
                            if z != shifted {
                                pairs.push((y, z));
                            }
                        }
                    }
                    factors.push(pairs.len() as u64);
                    if pairs.is_empty() {
                        // decisive consistent inputs cannot reach this
                        blocking.get_or_insert(j);
                    } else if build {
                        chosen_pair[j] = *policy.pick(&pairs, j as u64);
                    }
                }
                OrbitClass::P2 => {
                    let (psi_j, _) = &data.conjugators[&j];
                    let feasible: Vec<u32> = rep_values
                        .iter()
                        .copied()
                        .filter(|&x| apply(psi_j, x) != x)
                        .collect();
                    factors.push(feasible.len() as u64);
                    if feasible.is_empty() {
                        blocking.get_or_insert(j);
                    } else if build {
                        chosen_single[j] = *policy.pick(&feasible, j as u64);
                    }
                }
            },
        }
    }

    if !build || blocking.is_some() {
        return Ok(ConsistentOutcome { factors, table: None, blocking });
    }

    let mut out = vec![0u32; size as usize];
    for idx in 0..size {
        let j = table.orbit_of(idx);
        let g = &elems[table.witness_of(idx)];
        out[idx as usize] = match &mixed {
            None => apply(&g.psi, chosen_single[j]),
            Some(data) => match table.orbits()[j].class {
                OrbitClass::P1 => {
                    let (y, z) = chosen_pair[j];
                    match g.rho {
                        Reversal::Id => apply(&g.psi, y),
                        Reversal::Rev => {
                            let star = &elems[data.star];
                            let shift = g.psi.compose(&star.psi.inverse())?;
                            apply(&shift, z)
                        }
                    }
                }
                OrbitClass::P2 => {
                    // psi . sigma_j . rho . sigma_j^-1; the conjugate is
                    // the stabilizer partner for the reversal and the
                    // identity otherwise
                    let x = chosen_single[j];
                    let (_, sigma_j) = &data.conjugators[&j];
                    let shift = g
                        .psi
                        .compose(sigma_j)?
                        .compose(&g.rho.as_perm(n))?
                        .compose(&sigma_j.inverse())?;
                    apply(&shift, x)
                }
            },
        };
    }
    Ok(ConsistentOutcome { factors, table: Some(out), blocking: None })
}

fn preflight_consistent_spc(group: &SymmetryGroup, table: &OrbitTable, c: &SpcValue) -> Result<()> {
    if let Some(p) = c.first_empty() {
        return Err(Error::NotDecisive { profile: p });
    }
    require_regular(group, table)?;
    if let (false, Some((p, g))) = check_consistent_spc(c, group)? {
        let element = group.elements().iter().position(|e| e == &g).unwrap_or(0);
        return Err(Error::NotConsistent { profile: p.index(), element });
    }
    Ok(())
}

fn preflight_consistent_kscc(
    group: &SymmetryGroup,
    table: &OrbitTable,
    c: &KsccValue,
) -> Result<()> {
    if let Some(p) = c.first_empty() {
        return Err(Error::NotDecisive { profile: p });
    }
    require_regular(group, table)?;
    if let (false, Some((p, g))) = check_consistent_kscc(c, group)? {
        let element = group.elements().iter().position(|e| e == &g).unwrap_or(0);
        return Err(Error::NotConsistent { profile: p.index(), element });
    }
    Ok(())
}

fn order_apply_cache(n: usize) -> impl FnMut(&Perm, u32) -> u32 {
    let mut cache: HashMap<Vec<usize>, Vec<u32>> = HashMap::new();
    move |psi: &Perm, v: u32| {
        let map = cache
            .entry(psi.images().to_vec())
            .or_insert_with(|| order_map(n, psi, Reversal::Id));
        map[v as usize]
    }
}

fn mask_apply_cache(n: usize) -> impl FnMut(&Perm, u32) -> u32 {
    let mut cache: HashMap<Vec<usize>, Vec<u32>> = HashMap::new();
    move |psi: &Perm, v: u32| {
        let map = cache.entry(psi.images().to_vec()).or_insert_with(|| mask_map(n, psi));
        map[v as usize]
    }
}

/// Builds a consistent resolute refinement of a decisive consistent SPC.
/// Always succeeds for rankings (a per-orbit feasible value always
/// exists); the count multiplies per-orbit factor sizes.
pub fn build_consistent_spc_refinement(
    group: &SymmetryGroup,
    c: &SpcValue,
    policy: ChoicePolicy,
) -> Result<(ResoluteFunction, RefinementCount)> {
    let table = orbit_decomposition(group)?;
    preflight_consistent_spc(group, &table, c)?;
    let mut apply = order_apply_cache(c.n());
    let outcome = consistent_engine(group, &table, c.sets(), &mut apply, policy, true)?;
    if let Some(orbit) = outcome.blocking {
        return Err(Error::NoRefinement { orbit, reason: NoRefinementReason::A2Empty });
    }
    let f = ResoluteFunction {
        h: c.h(),
        n: c.n(),
        kind: FunctionKind::Ranking,
        policy: policy.name(),
        table: outcome.table.expect("built"),
    };
    Ok((f, RefinementCount::from_factors(outcome.factors)))
}

pub fn count_consistent_spc_refinements(
    group: &SymmetryGroup,
    c: &SpcValue,
) -> Result<RefinementCount> {
    let table = orbit_decomposition(group)?;
    preflight_consistent_spc(group, &table, c)?;
    let mut apply = order_apply_cache(c.n());
    let outcome = consistent_engine(group, &table, c.sets(), &mut apply, ChoicePolicy::LexMin, false)?;
    Ok(RefinementCount::from_factors(outcome.factors))
}

/// Builds a consistent resolute refinement of a decisive consistent
/// k-winner correspondence. Reports the blocking orbit when every
/// committee at a reversal-stabilized representative is fixed by its
/// stabilizer partner.
pub fn build_consistent_kscc_refinement(
    group: &SymmetryGroup,
    c: &KsccValue,
    policy: ChoicePolicy,
) -> Result<(ResoluteFunction, RefinementCount)> {
    let table = orbit_decomposition(group)?;
    preflight_consistent_kscc(group, &table, c)?;
    let mut apply = mask_apply_cache(c.n());
    let outcome = consistent_engine(group, &table, c.sets(), &mut apply, policy, true)?;
    if let Some(orbit) = outcome.blocking {
        return Err(Error::NoRefinement { orbit, reason: NoRefinementReason::A2Empty });
    }
    let f = ResoluteFunction {
        h: c.h(),
        n: c.n(),
        kind: FunctionKind::Committee { k: c.k() },
        policy: policy.name(),
        table: outcome.table.expect("built"),
    };
    Ok((f, RefinementCount::from_factors(outcome.factors)))
}

pub fn count_consistent_kscc_refinements(
    group: &SymmetryGroup,
    c: &KsccValue,
) -> Result<RefinementCount> {
    let table = orbit_decomposition(group)?;
    preflight_consistent_kscc(group, &table, c)?;
    let mut apply = mask_apply_cache(c.n());
    let outcome = consistent_engine(group, &table, c.sets(), &mut apply, ChoicePolicy::LexMin, false)?;
    Ok(RefinementCount::from_factors(outcome.factors))
}

/// The extremal consistent k-winner correspondence attached to a regular
/// group: all committees on orbits whose stabilizer avoids the reversal,
/// and exactly the stabilizer-fixed committees elsewhere.
pub fn uk_correspondence(group: &SymmetryGroup, k: usize) -> Result<KsccValue> {
    let n = group.n();
    if k < 1 || k >= n {
        return Err(Error::InvalidK { k, n });
    }
    let table = orbit_decomposition(group)?;
    require_regular(group, &table)?;
    let all: Vec<u32> = k_subset_masks(n, k);
    let size = Profile::space_size(group.h(), n) as u64;
    let mut sets = vec![Vec::new(); size as usize];
    for idx in 0..size {
        let orbit = &table.orbits()[table.orbit_of(idx)];
        sets[idx as usize] = match orbit.class {
            OrbitClass::P1 => all.clone(),
            OrbitClass::P2 => {
                // the partner at a member is the conjugate of the
                // representative's partner by the witness
                let g = &group.elements()[table.witness_of(idx)];
                let psi_j = orbit.psi.as_ref().ok_or_else(|| {
                    Error::BrokenInvariant("regular P2 orbit without a unique partner".into())
                })?;
                let psi_p = g.psi.compose(psi_j)?.compose(&g.psi.inverse())?;
                all.iter().copied().filter(|&w| apply_perm_to_mask(&psi_p, w) == w).collect()
            }
        };
    }
    KsccValue::new(group.h(), n, k, sets)
}

/// Membership in the committee-size set for which consistent resolute
/// refinements of k-winner correspondences survive reversal symmetry:
/// n <= 3, or k extreme, or n even with k odd.
pub fn t_set_contains(n: usize, k: usize) -> Result<bool> {
    if n < 2 || k < 1 || k > n - 1 {
        return Err(Error::InvalidK { k, n });
    }
    Ok(n <= 3 || k == 1 || k == n - 1 || (n.is_multiple_of(2) && !k.is_multiple_of(2)))
}

/// Builds a ranking q with psi . q . rho0 = q containing a given
/// irreflexive acyclic relation, provided the relation is
/// psi-reverse-symmetric. This is the constructive core behind the
/// reversal-symmetric existence results.
///
/// The construction: close the relation transitively, collect the
/// elements that dominate both members of some psi-orbit, pick one
/// element per psi-orbit (preferring dominated-side members, breaking
/// the free choices by the lexicographically minimal linear extension),
/// rank the picks first in extension order, the reflection
/// psi-images last in mirrored order, and the psi fixed point (odd n)
/// exactly in the middle.
pub fn reversal_invariant_extension(psi: &Perm, rp: &Relation) -> Result<LinearOrder> {
    let n = psi.degree();
    if rp.degree() != n {
        return Err(Error::DegreeMismatch { expected: n, found: rp.degree() });
    }
    let rho0 = Perm::order_reversing(n);
    if psi.cycle_type() != rho0.cycle_type() {
        return Err(Error::HypothesisViolated { tag: HypothesisTag::NotInvolution, pair: None });
    }
    for x in 0..n {
        if rp.contains(x, x) {
            return Err(Error::HypothesisViolated {
                tag: HypothesisTag::NotAcyclic,
                pair: Some((x + 1, x + 1)),
            });
        }
    }
    if !rp.classify().acyclic {
        return Err(Error::HypothesisViolated { tag: HypothesisTag::NotAcyclic, pair: None });
    }
    for (x, y) in rp.pairs() {
        if !rp.contains(psi.apply(y), psi.apply(x)) {
            return Err(Error::HypothesisViolated {
                tag: HypothesisTag::ConditionA,
                pair: Some((x + 1, y + 1)),
            });
        }
    }

    // transitive closure; acyclicity makes it the chain relation
    let mut reach = vec![false; n * n];
    for (x, y) in rp.pairs() {
        reach[x * n + y] = true;
    }
    for mid in 0..n {
        for x in 0..n {
            if reach[x * n + mid] {
                for y in 0..n {
                    if reach[mid * n + y] {
                        reach[x * n + y] = true;
                    }
                }
            }
        }
    }
    let reaches = |x: usize, y: usize| reach[x * n + y];

    // gamma: elements dominating both members of some psi-orbit
    let mut gamma = vec![false; n];
    for x in 0..n {
        gamma[x] = (0..n).any(|z| reaches(x, z) && reaches(x, psi.apply(z)));
    }

    let fixed_point = (0..n).find(|&x| psi.apply(x) == x);
    if let Some(f) = fixed_point {
        if gamma[f] {
            return Err(Error::BrokenInvariant(
                "the fixed point cannot dominate a full orbit".into(),
            ));
        }
    }

    // one pick per two-element psi-orbit: the gamma member when the orbit
    // meets gamma, otherwise deferred to the extension over t
    let mut decided: Vec<usize> = Vec::new();
    let mut deferred: Vec<(usize, usize)> = Vec::new();
    let mut t_members: Vec<usize> = Vec::new();
    for x in 0..n {
        let y = psi.apply(x);
        if x >= y {
            continue;
        }
        match (gamma[x], gamma[y]) {
            (true, true) => {
                return Err(Error::BrokenInvariant(
                    "both members of an orbit dominate full orbits".into(),
                ))
            }
            (true, false) => {
                decided.push(x);
                t_members.push(x);
            }
            (false, true) => {
                decided.push(y);
                t_members.push(y);
            }
            (false, false) => {
                deferred.push((x, y));
                t_members.push(x);
                t_members.push(y);
            }
        }
    }
    t_members.sort_unstable();

    // lexicographically minimal linear extension of rp restricted to t
    let ext = lex_min_extension(&t_members, |x, y| rp.contains(x, y));
    let pos: HashMap<usize, usize> =
        ext.iter().enumerate().map(|(rank, &x)| (x, rank)).collect();
    let mut picks = decided;
    for (x, y) in deferred {
        picks.push(if pos[&x] < pos[&y] { x } else { y });
    }
    // rank the picks by the extension
    picks.sort_by_key(|x| pos[x]);

    let mut ranking: Vec<usize> = picks.clone();
    if let Some(f) = fixed_point {
        ranking.push(f);
    }
    for &x in picks.iter().rev() {
        ranking.push(psi.apply(x));
    }
    let q = LinearOrder::from_rank_to_alt(ranking)?;

    // verify both postconditions rather than trusting the construction
    let mirrored = q.relabel(psi)?.reverse_if(Reversal::Rev);
    if mirrored != q {
        return Err(Error::BrokenInvariant("output is not reversal invariant".into()));
    }
    for (x, y) in rp.pairs() {
        if q.rank_of(x) >= q.rank_of(y) {
            return Err(Error::BrokenInvariant("output does not extend the relation".into()));
        }
    }
    Ok(q)
}

/// Greedy lexicographically minimal topological order of `members` under
/// the strict part of `edge`.
fn lex_min_extension(members: &[usize], edge: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    let mut remaining: Vec<usize> = members.to_vec();
    let mut out = Vec::with_capacity(members.len());
    while !remaining.is_empty() {
        let next = remaining
            .iter()
            .position(|&x| remaining.iter().all(|&y| y == x || !edge(y, x)))
            .expect("acyclic restriction always has a source");
        out.push(remaining.remove(next));
    }
    out
}

/// A profile-indexed family of relations over the alternatives; its
/// linear extensions define an SPC.
#[derive(Clone, Debug)]
pub struct SocialMethod {
    h: usize,
    n: usize,
    table: Vec<Relation>,
}

impl SocialMethod {
    pub fn new(h: usize, n: usize, table: Vec<Relation>) -> Result<SocialMethod> {
        if table.len() as u128 != Profile::space_size(h, n) {
            return Err(Error::BrokenInvariant("method table does not cover the space".into()));
        }
        for r in &table {
            if r.degree() != n {
                return Err(Error::DegreeMismatch { expected: n, found: r.degree() });
            }
        }
        Ok(SocialMethod { h, n, table })
    }

    /// The diagonal-stripped graph of a resolute ranking function: the
    /// canonical method certifying that function.
    pub fn from_resolute(f: &ResoluteFunction) -> Result<SocialMethod> {
        match f.kind() {
            FunctionKind::Committee { .. } => {
                Err(Error::BrokenInvariant("committee functions have no method graph".into()))
            }
            FunctionKind::Ranking => {
                let table = (0..f.table.len())
                    .map(|i| f.ranking(i as u64).unwrap().to_relation().strip_diagonal())
                    .collect();
                SocialMethod::new(f.h(), f.n(), table)
            }
        }
    }

    pub fn value(&self, index: u64) -> &Relation {
        &self.table[index as usize]
    }
}

/// Outcome of checking a social method against a correspondence and a
/// group: does every extension set land inside the correspondence, and is
/// the method reverse-symmetric under every profile stabilizer?
#[derive(Clone, Debug)]
pub struct MethodCheck {
    pub refines: bool,
    /// First profile where extensions leak outside C, are empty by
    /// cyclicity, or the relation is reflexive.
    pub refines_witness: Option<u64>,
    pub condition_a: bool,
    /// (profile, element index, 1-based pair) of the first stabilizer
    /// violation.
    pub condition_a_witness: Option<(u64, usize, (usize, usize))>,
}

/// Certifies the constructive existence route: a refining method whose
/// relations are irreflexive, acyclic and stabilizer-reverse-symmetric
/// guarantees a symmetric resolute refinement for a regular group.
pub fn social_method_check(
    c: &SpcValue,
    group: &SymmetryGroup,
    method: &SocialMethod,
) -> Result<MethodCheck> {
    if method.h != c.h() || method.n != c.n() {
        return Err(Error::DegreeMismatch { expected: c.n(), found: method.n });
    }
    let size = Profile::space_size(c.h(), c.n()) as u64;
    let mut refines = true;
    let mut refines_witness = None;
    for idx in 0..size {
        let r = method.value(idx);
        let flags = r.classify();
        let ok = flags.irreflexive && flags.acyclic && {
            let cv = c.value(idx);
            r.linear_extensions()?
                .iter()
                .all(|q| cv.binary_search(&(q.rank() as u32)).is_ok())
        };
        if !ok {
            refines = false;
            refines_witness = Some(idx);
            break;
        }
    }
    let mut condition_a = true;
    let mut condition_a_witness = None;
    'outer: for idx in 0..size {
        let p = Profile::from_index(c.h(), c.n(), idx);
        let r = method.value(idx);
        for (e, g) in group.elements().iter().enumerate() {
            if g.rho != Reversal::Rev || p.act(g)? != p {
                continue;
            }
            for (x, y) in r.pairs() {
                if !r.contains(g.psi.apply(y), g.psi.apply(x)) {
                    condition_a = false;
                    condition_a_witness = Some((idx, e, (x + 1, y + 1)));
                    break 'outer;
                }
            }
            for x in 0..c.n() {
                for y in 0..c.n() {
                    if r.contains(g.psi.apply(y), g.psi.apply(x)) && !r.contains(x, y) {
                        condition_a = false;
                        condition_a_witness = Some((idx, e, (x + 1, y + 1)));
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(MethodCheck { refines, refines_witness, condition_a, condition_a_witness })
}

/// Which refinement-existence question a gate answers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateMode {
    /// Ranking refinements, symmetries without reversal.
    SymId,
    /// Ranking refinements, reversal-symmetric.
    SymReversal,
    /// Ranking refinements, reversal-consistent (no fixed singleton).
    ConsSpcReversal,
    /// Committee refinements, symmetries without reversal.
    ConsKsccId,
    /// Committee refinements, reversal-consistent.
    ConsKsccReversal,
}

impl GateMode {
    pub fn name(&self) -> &'static str {
        match self {
            GateMode::SymId => "sym_id",
            GateMode::SymReversal => "sym_reversal",
            GateMode::ConsSpcReversal => "cons_spc_reversal",
            GateMode::ConsKsccId => "cons_kscc_id",
            GateMode::ConsKsccReversal => "cons_kscc_reversal",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Exists,
    NotExists,
    /// The arithmetic criterion alone does not settle the question; the
    /// reason string says what else is needed.
    Conditional,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Exists => f.write_str("exists"),
            Verdict::NotExists => f.write_str("not-exists"),
            Verdict::Conditional => f.write_str("conditional"),
        }
    }
}

/// The four disjunctive conditions of the committee reversal gate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CommitteeConditions {
    /// (a) no alternative symmetry is conjugate to the rank reversal
    pub no_reversal_conjugate: bool,
    /// (b) n <= 3
    pub small_n: bool,
    /// (c) k in {1, n-1}
    pub extreme_k: bool,
    /// (d) n even, k odd
    pub parity: bool,
}

impl CommitteeConditions {
    pub fn any(&self) -> bool {
        self.no_reversal_conjugate || self.small_n || self.extreme_k || self.parity
    }
}

/// A gate verdict with every number it was computed from.
#[derive(Clone, Debug)]
pub struct GateVerdict {
    pub mode: GateMode,
    pub verdict: Verdict,
    pub gamma_aut_r: u64,
    pub aut_q_order: u64,
    /// gcd(gamma(Aut R), |Aut Q|)
    pub gcd_id: u64,
    /// lcm(|Aut Q|, 2)
    pub lcm_rev: u64,
    /// gcd(gamma(Aut R), lcm(|Aut Q|, 2))
    pub gcd_rev: u64,
    pub conditions: Option<CommitteeConditions>,
    pub reason: String,
}

/// Decides refinement existence from the two relations alone, by the
/// coprimality of the voter-side type number with the alternative-side
/// symmetry count. Automorphism groups come from brute force; when a
/// relation is an order the result is cross-checked against the
/// indifference-partition formulas.
pub fn existence_gate(
    r: &Relation,
    q: &Relation,
    mode: GateMode,
    k: Option<usize>,
) -> Result<GateVerdict> {
    let aut_r = r.aut_group()?;
    let aut_q = q.aut_group()?;
    let gamma = aut_r.type_number();
    let aut_q_order = aut_q.order();
    if r.classify().is_order {
        let (_, t) = r.indifference_partition()?;
        let (g_formula, o_formula) = order_aut_stats(&t);
        if g_formula != gamma || o_formula != BigUint::from(aut_r.order()) {
            return Err(Error::BrokenInvariant(
                "voter-side automorphism formulas disagree with brute force".into(),
            ));
        }
    }
    if q.classify().is_order {
        let (_, t) = q.indifference_partition()?;
        let (_, o_formula) = order_aut_stats(&t);
        if o_formula != BigUint::from(aut_q_order) {
            return Err(Error::BrokenInvariant(
                "alternative-side automorphism formulas disagree with brute force".into(),
            ));
        }
    }
    let gcd_id = gcd(gamma, aut_q_order);
    let lcm_rev = lcm(aut_q_order, 2);
    let gcd_rev = gcd(gamma, lcm_rev);
    let n = q.degree();
    let rho0_type = Perm::order_reversing(n).cycle_type();

    let (verdict, conditions, reason) = match mode {
        GateMode::SymId => {
            if gcd_id == 1 {
                (Verdict::Exists, None, format!("gcd(gamma, |Aut Q|) = gcd({gamma}, {aut_q_order}) = 1"))
            } else {
                (Verdict::NotExists, None, format!("gcd(gamma, |Aut Q|) = {gcd_id} > 1: the product group is not regular"))
            }
        }
        GateMode::SymReversal => {
            if gcd_rev == 1 {
                (
                    Verdict::Conditional,
                    None,
                    "gcd(gamma, lcm(|Aut Q|, 2)) = 1; existence further requires a refining social method that is reverse-symmetric on stabilizers (certify one with the method check)".to_string(),
                )
            } else {
                (Verdict::NotExists, None, format!("gcd(gamma, lcm(|Aut Q|, 2)) = {gcd_rev} > 1"))
            }
        }
        GateMode::ConsSpcReversal => {
            if gcd_rev == 1 {
                (Verdict::Exists, None, "gcd(gamma, lcm(|Aut Q|, 2)) = 1".into())
            } else {
                (
                    Verdict::NotExists,
                    None,
                    format!(
                        "gcd(gamma, lcm(|Aut Q|, 2)) = {gcd_rev} > 1: some profile stabilizer forces a fixed ranking"
                    ),
                )
            }
        }
        GateMode::ConsKsccId => {
            if gcd_id == 1 {
                (Verdict::Exists, None, "gcd(gamma, |Aut Q|) = 1".into())
            } else {
                (
                    Verdict::Conditional,
                    None,
                    format!(
                        "gcd(gamma, |Aut Q|) = {gcd_id} > 1: the coprimality criterion is sufficient only; committee refinements may still exist"
                    ),
                )
            }
        }
        GateMode::ConsKsccReversal => {
            let k = k.ok_or_else(|| Error::Parse {
                line: 0,
                msg: "the committee reversal gate needs a committee size k".into(),
            })?;
            if k < 1 || k >= n {
                return Err(Error::InvalidK { k, n });
            }
            let conds = CommitteeConditions {
                no_reversal_conjugate: aut_q
                    .elements()
                    .iter()
                    .all(|s| s.cycle_type() != rho0_type),
                small_n: n <= 3,
                extreme_k: k == 1 || k == n - 1,
                parity: n.is_multiple_of(2) && !k.is_multiple_of(2),
            };
            if gcd_rev != 1 {
                (
                    Verdict::Conditional,
                    Some(conds),
                    format!("gcd(gamma, lcm(|Aut Q|, 2)) = {gcd_rev} > 1: the gate requires coprimality before the committee conditions apply"),
                )
            } else if conds.any() {
                (Verdict::Exists, Some(conds), "coprimality holds and a committee condition applies".into())
            } else {
                (
                    Verdict::NotExists,
                    Some(conds),
                    "coprimality holds but every committee condition fails; the extremal correspondence has no consistent resolute refinement".into(),
                )
            }
        }
    };
    Ok(GateVerdict {
        mode,
        verdict,
        gamma_aut_r: gamma,
        aut_q_order,
        gcd_id,
        lcm_rev,
        gcd_rev,
        conditions,
        reason,
    })
}

/// Tie-break direction for the president.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresidentPolicy {
    Best,
    Worst,
}

/// The order putting voter 1 strictly above everyone else, everyone else
/// mutually indifferent.
pub fn president_preset(h: usize) -> Result<(Relation, String)> {
    if h < 2 {
        return Err(Error::DegreeMismatch { expected: 2, found: h });
    }
    let rest: Vec<usize> = (2..=h).collect();
    let r = Relation::from_order_classes(h, &[vec![1], rest])?;
    Ok((r, format!("voter 1 above an indifferent block of {} voters", h - 1)))
}

/// Resolves a decisive single-winner correspondence by the president's
/// ballot: pick the selected alternative the president ranks best (or
/// worst).
pub fn president_tiebreak(c: &KsccValue, policy: PresidentPolicy) -> Result<ResoluteFunction> {
    if c.k() != 1 {
        return Err(Error::InvalidK { k: c.k(), n: c.n() });
    }
    if let Some(p) = c.first_empty() {
        return Err(Error::NotDecisive { profile: p });
    }
    let size = Profile::space_size(c.h(), c.n()) as u64;
    let mut table = vec![0u32; size as usize];
    for idx in 0..size {
        let p = Profile::from_index(c.h(), c.n(), idx);
        let ballot = p.ballot(0);
        let best = c
            .value(idx)
            .iter()
            .copied()
            .min_by_key(|&w| {
                let alt = w.trailing_zeros() as usize;
                let rank = ballot.rank_of(alt);
                match policy {
                    PresidentPolicy::Best => (rank, alt),
                    PresidentPolicy::Worst => (c.n() - 1 - rank, alt),
                }
            })
            .expect("decisive");
        table[idx as usize] = best;
    }
    Ok(ResoluteFunction {
        h: c.h(),
        n: c.n(),
        kind: FunctionKind::Committee { k: 1 },
        policy: match policy {
            PresidentPolicy::Best => "president-best".into(),
            PresidentPolicy::Worst => "president-worst".into(),
        },
        table,
    })
}

/// All two-block committee splits with coprime sizes, ascending. Equal
/// blocks survive the filter only as (1, 1).
pub fn split_committee_partitions(h: usize) -> Vec<(usize, usize)> {
    (1..=h / 2)
        .filter(|&a| gcd(a as u64, (h - a) as u64) == 1)
        .map(|a| (a, h - a))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;
    use crate::rules::{evaluate_all, RuleId};

    fn ranking(r: &[usize]) -> LinearOrder {
        LinearOrder::from_ranking(r).unwrap()
    }

    fn involution_omega_group() -> SymmetryGroup {
        let g = GroupElement {
            phi: Perm::identity(2),
            psi: parse_cycles(4, "(1 4)(2 3)").unwrap(),
            rho: Reversal::Rev,
        };
        SymmetryGroup::generate(2, 4, &[g], 100).unwrap()
    }

    #[test]
    fn s_correspondence_examples() {
        // trivial stabilizer: all rankings
        let omega = SymmetryGroup::from_product(
            &crate::perm::PermGroup::trivial(2),
            &crate::perm::PermGroup::trivial(3),
            true,
        );
        let p = Profile::new(vec![ranking(&[1, 2, 3]), ranking(&[2, 1, 3])]).unwrap();
        assert_eq!(s_correspondence(&omega, &p).unwrap().len(), 6);

        // reversal-stabilized profile: 2^2 * 2! = 8 invariant rankings
        let group = involution_omega_group();
        let unanimous = Profile::new(vec![ranking(&[1, 2, 3, 4]); 2]).unwrap();
        let s = s_correspondence(&group, &unanimous).unwrap();
        assert_eq!(s.len(), 8);
        let psi = parse_cycles(4, "(1 4)(2 3)").unwrap();
        for q in &s {
            assert_eq!(q.relabel(&psi).unwrap().reverse_if(Reversal::Rev), *q);
        }

        // a non-regular group has an empty set somewhere
        let bad = SymmetryGroup::from_product(
            &crate::perm::PermGroup::symmetric(2).unwrap(),
            &crate::perm::PermGroup::symmetric(2).unwrap(),
            false,
        );
        let found_empty = (0..4u64).any(|idx| {
            s_correspondence(&bad, &Profile::from_index(2, 2, idx)).unwrap().is_empty()
        });
        assert!(found_empty);
    }

    #[test]
    fn symmetric_builder_trivial_group() {
        let trivial = SymmetryGroup::trivial(2, 2);
        let borda = evaluate_all(&RuleId::Borda, 2, 2).unwrap();
        let (f, count) = build_symmetric_refinement(&trivial, &borda, ChoicePolicy::LexMin).unwrap();
        let expected: u64 = (0..4u64).map(|i| borda.value(i).len() as u64).product();
        assert_eq!(count.value(), &BigUint::from(expected));
        // pointwise refinement
        for idx in 0..4u64 {
            assert!(borda.value(idx).contains(&f.value(idx)));
        }
    }

    #[test]
    fn symmetric_builder_anonymity() {
        let anon = SymmetryGroup::from_product(
            &crate::perm::PermGroup::symmetric(2).unwrap(),
            &crate::perm::PermGroup::trivial(2),
            false,
        );
        let borda = evaluate_all(&RuleId::Borda, 2, 2).unwrap();
        let (f, count) = build_symmetric_refinement(&anon, &borda, ChoicePolicy::LexMin).unwrap();
        assert_eq!(count.value(), &BigUint::from(2u32));
        assert!(check_symmetric(&f.as_spc().unwrap(), &anon).unwrap().0);
    }

    #[test]
    fn symmetric_builder_regular_product() {
        // gcd(3, 2) = 1 so S3 x S2 x {id} is regular
        let u = SymmetryGroup::from_product(
            &crate::perm::PermGroup::symmetric(3).unwrap(),
            &crate::perm::PermGroup::symmetric(2).unwrap(),
            false,
        );
        let borda = evaluate_all(&RuleId::Borda, 3, 2).unwrap();
        let (f, _) = build_symmetric_refinement(&u, &borda, ChoicePolicy::LexMin).unwrap();
        let spc = f.as_spc().unwrap();
        assert!(check_symmetric(&spc, &u).unwrap().0);
        for idx in 0..8u64 {
            assert!(borda.value(idx).contains(&f.value(idx)));
        }
    }

    #[test]
    fn symmetric_builder_rejects_non_regular() {
        let bad = SymmetryGroup::from_product(
            &crate::perm::PermGroup::symmetric(2).unwrap(),
            &crate::perm::PermGroup::symmetric(2).unwrap(),
            false,
        );
        let borda = evaluate_all(&RuleId::Borda, 2, 2).unwrap();
        assert!(matches!(
            build_symmetric_refinement(&bad, &borda, ChoicePolicy::LexMin),
            Err(Error::NotRegular { .. })
        ));
    }

    #[test]
    fn symmetric_builder_mixed_group() {
        // a reversal-containing group exercises the rho-composed
        // extension at pinned orbits
        let group = involution_omega_group();
        let borda = evaluate_all(&RuleId::Borda, 2, 4).unwrap();
        let (f, count) = build_symmetric_refinement(&group, &borda, ChoicePolicy::LexMin).unwrap();
        assert!(!count.is_zero());
        assert!(check_symmetric(&f.as_spc().unwrap(), &group).unwrap().0);
        for idx in 0..Profile::space_size(2, 4) as u64 {
            assert!(borda.value(idx).contains(&f.value(idx)));
            // the chosen ranking always lies in the invariant set
            let p = Profile::from_index(2, 4, idx);
            let s = s_correspondence(&group, &p).unwrap();
            assert!(s.contains(&f.ranking(idx).unwrap()));
        }
    }

    #[test]
    fn consistent_builder_spc_always_succeeds() {
        let group = involution_omega_group();
        let borda = evaluate_all(&RuleId::Borda, 2, 4).unwrap();
        let (f, count) =
            build_consistent_spc_refinement(&group, &borda, ChoicePolicy::LexMin).unwrap();
        assert!(!count.is_zero());
        let spc = f.as_spc().unwrap();
        assert!(check_consistent_spc(&spc, &group).unwrap().0);
        for idx in 0..Profile::space_size(2, 4) as u64 {
            assert!(borda.value(idx).contains(&f.value(idx)));
        }
    }

    #[test]
    fn consistent_builder_detects_blocked_committee() {
        // the extremal correspondence at k = 2 admits no refinement here
        let group = involution_omega_group();
        let uk = uk_correspondence(&group, 2).unwrap();
        assert!(uk.is_decisive());
        assert!(check_consistent_kscc(&uk, &group).unwrap().0);
        let err = build_consistent_kscc_refinement(&group, &uk, ChoicePolicy::LexMin).unwrap_err();
        assert!(matches!(err, Error::NoRefinement { reason: NoRefinementReason::A2Empty, .. }));
    }

    #[test]
    fn consistent_builder_committee_succeeds_at_extreme_k() {
        let group = involution_omega_group();
        let borda = evaluate_all(&RuleId::Borda, 2, 4).unwrap();
        for k in [1usize, 3] {
            let ck = crate::rules::induce_kscc(&borda, k).unwrap();
            assert!(check_consistent_kscc(&ck, &group).unwrap().0);
            let (f, count) =
                build_consistent_kscc_refinement(&group, &ck, ChoicePolicy::LexMin).unwrap();
            assert!(!count.is_zero());
            let kscc = f.as_kscc().unwrap();
            assert!(check_consistent_kscc(&kscc, &group).unwrap().0);
            for idx in 0..Profile::space_size(2, 4) as u64 {
                assert!(ck.value(idx).contains(&f.value(idx)));
            }
        }
    }

    #[test]
    fn uk_examples() {
        let omega = SymmetryGroup::from_product(
            &crate::perm::PermGroup::trivial(2),
            &crate::perm::PermGroup::trivial(3),
            true,
        );
        let uk = uk_correspondence(&omega, 2).unwrap();
        for idx in 0..Profile::space_size(2, 3) as u64 {
            assert_eq!(uk.value(idx).len(), 3); // all 2-subsets of 3
        }

        let group = involution_omega_group();
        let unanimous = Profile::new(vec![ranking(&[1, 2, 3, 4]); 2]).unwrap();
        let u2 = uk_correspondence(&group, 2).unwrap();
        assert_eq!(u2.value(unanimous.index()), &[0b0110, 0b1001]);
        let u1 = uk_correspondence(&group, 1).unwrap();
        assert!(u1.value(unanimous.index()).is_empty());
        assert!(!u1.is_decisive());
    }

    #[test]
    fn t_set_examples() {
        assert!(t_set_contains(3, 2).unwrap());
        assert!(!t_set_contains(4, 2).unwrap());
        assert!(t_set_contains(6, 3).unwrap());
        assert!(t_set_contains(4, 1).unwrap());
        assert!(t_set_contains(5, 4).unwrap());
        assert!(!t_set_contains(5, 2).unwrap());
        assert!(t_set_contains(2, 1).unwrap());
        assert!(matches!(t_set_contains(4, 4), Err(Error::InvalidK { .. })));
    }

    #[test]
    fn invariant_extension_examples() {
        let psi = parse_cycles(4, "(1 4)(2 3)").unwrap();
        let q = reversal_invariant_extension(&psi, &Relation::empty(4)).unwrap();
        assert_eq!(q, ranking(&[1, 2, 3, 4]));

        // odd degree: the fixed point lands exactly in the middle
        let psi5 = parse_cycles(5, "(1 5)(2 4)").unwrap();
        let q = reversal_invariant_extension(&psi5, &Relation::empty(5)).unwrap();
        assert_eq!(q.alt_at(2), 2);

        // a seeded pair is preserved and mirrored
        let rp = Relation::from_pairs(4, &[(2, 3)]).unwrap();
        let q = reversal_invariant_extension(&psi, &rp).unwrap();
        assert!(q.rank_of(1) < q.rank_of(2));
        assert_eq!(q.relabel(&psi).unwrap().reverse_if(Reversal::Rev), q);
    }

    #[test]
    fn invariant_extension_rejections() {
        let psi = parse_cycles(4, "(1 4)(2 3)").unwrap();
        // wrong involution shape
        assert!(matches!(
            reversal_invariant_extension(&Perm::identity(4), &Relation::empty(4)),
            Err(Error::HypothesisViolated { tag: HypothesisTag::NotInvolution, .. })
        ));
        assert!(matches!(
            reversal_invariant_extension(&parse_cycles(4, "(1 2)").unwrap(), &Relation::empty(4)),
            Err(Error::HypothesisViolated { tag: HypothesisTag::NotInvolution, .. })
        ));
        // reflexive pair and cycle
        let mut refl = Relation::empty(4);
        refl.insert(1, 1);
        assert!(matches!(
            reversal_invariant_extension(&psi, &refl),
            Err(Error::HypothesisViolated { tag: HypothesisTag::NotAcyclic, pair: Some((2, 2)) })
        ));
        let cyc = Relation::from_pairs(4, &[(2, 3), (3, 2)]).unwrap();
        assert!(matches!(
            reversal_invariant_extension(&psi, &cyc),
            Err(Error::HypothesisViolated { tag: HypothesisTag::NotAcyclic, .. })
        ));
        // missing the mirrored pair
        let asym = Relation::from_pairs(4, &[(1, 2)]).unwrap();
        assert!(matches!(
            reversal_invariant_extension(&psi, &asym),
            Err(Error::HypothesisViolated { tag: HypothesisTag::ConditionA, pair: Some((1, 2)) })
        ));
    }

    #[test]
    fn social_method_check_examples() {
        // the graph of any reasonable resolute selection refines
        let trivial = SymmetryGroup::trivial(2, 2);
        let borda = evaluate_all(&RuleId::Borda, 2, 2).unwrap();
        let (f, _) = build_symmetric_refinement(&trivial, &borda, ChoicePolicy::LexMin).unwrap();
        let method = SocialMethod::from_resolute(&f).unwrap();
        let check = social_method_check(&borda, &trivial, &method).unwrap();
        assert!(check.refines && check.condition_a);

        // the empty method refines only the full correspondence
        let empty = SocialMethod::new(
            2,
            2,
            vec![Relation::empty(2); 4],
        )
        .unwrap();
        let full_c = crate::rules::constant_spc(2, 2, &LinearOrder::all(2).collect::<Vec<_>>()).unwrap();
        let check = social_method_check(&full_c, &trivial, &empty).unwrap();
        assert!(check.refines && check.condition_a);
        let smaller = crate::rules::constant_spc(2, 2, &[ranking(&[1, 2])]).unwrap();
        let check = social_method_check(&smaller, &trivial, &empty).unwrap();
        assert!(!check.refines);

        // a two-cycle kills the extension set
        let mut bad_table = vec![Relation::empty(2); 4];
        bad_table[0] = Relation::from_pairs(2, &[(1, 2), (2, 1)]).unwrap();
        let bad = SocialMethod::new(2, 2, bad_table).unwrap();
        let check = social_method_check(&full_c, &trivial, &bad).unwrap();
        assert!(!check.refines);
        assert_eq!(check.refines_witness, Some(0));
    }

    #[test]
    fn gate_examples() {
        // president order: gamma = 1, so existence holds for any Q
        let (pres, _) = president_preset(5).unwrap();
        let q = Relation::total(3);
        let v = existence_gate(&pres, &q, GateMode::SymId, None).unwrap();
        assert_eq!(v.verdict, Verdict::Exists);
        assert_eq!(v.gamma_aut_r, 1);

        // full anonymity + neutrality at h=7, n=4: gcd(7, 24) = 1
        let v = existence_gate(&Relation::total(7), &Relation::total(4), GateMode::SymId, None)
            .unwrap();
        assert_eq!(v.verdict, Verdict::Exists);
        assert_eq!((v.gamma_aut_r, v.aut_q_order, v.gcd_id), (7, 24, 1));

        // h = n = 2: gcd(2, 2) = 2
        let v = existence_gate(&Relation::total(2), &Relation::total(2), GateMode::SymId, None)
            .unwrap();
        assert_eq!(v.verdict, Verdict::NotExists);
        assert_eq!(v.gcd_id, 2);
    }

    #[test]
    fn gate_modes() {
        let r = Relation::total(3);
        let q = Relation::total(4);
        // gcd(3, lcm(24, 2)) = 3
        let v = existence_gate(&r, &q, GateMode::SymReversal, None).unwrap();
        assert_eq!(v.verdict, Verdict::NotExists);
        let v = existence_gate(&r, &q, GateMode::ConsSpcReversal, None).unwrap();
        assert_eq!(v.verdict, Verdict::NotExists);

        let (pres, _) = president_preset(5).unwrap();
        let v = existence_gate(&pres, &q, GateMode::SymReversal, None).unwrap();
        assert_eq!(v.verdict, Verdict::Conditional);
        let v = existence_gate(&pres, &q, GateMode::ConsSpcReversal, None).unwrap();
        assert_eq!(v.verdict, Verdict::Exists);
        let v = existence_gate(&pres, &q, GateMode::ConsKsccId, Some(2)).unwrap();
        assert_eq!(v.verdict, Verdict::Exists);

        // committee reversal gate: k = 2 at n = 4 fails every condition
        let v = existence_gate(&pres, &q, GateMode::ConsKsccReversal, Some(2)).unwrap();
        assert_eq!(v.verdict, Verdict::NotExists);
        let c = v.conditions.unwrap();
        assert!(!c.any());
        // k = 1 and k = 3 are rescued by the extreme-k condition
        for k in [1usize, 3] {
            let v = existence_gate(&pres, &q, GateMode::ConsKsccReversal, Some(k)).unwrap();
            assert_eq!(v.verdict, Verdict::Exists);
        }
    }

    #[test]
    fn president_examples() {
        let (r, _) = president_preset(4).unwrap();
        let (_, t) = r.indifference_partition().unwrap();
        assert_eq!(t.to_string(), "[1,3]");
        assert_eq!(r.aut_group().unwrap().order(), 6);

        let (r2, _) = president_preset(2).unwrap();
        assert_eq!(r2.aut_group().unwrap().order(), 1);

        // the president's best pick is the selected alternative they rank
        // highest
        let borda = evaluate_all(&RuleId::Borda, 2, 3).unwrap();
        let c1 = crate::rules::induce_kscc(&borda, 1).unwrap();
        let f = president_tiebreak(&c1, PresidentPolicy::Best).unwrap();
        let p = Profile::new(vec![ranking(&[2, 1, 3]), ranking(&[1, 2, 3])]).unwrap();
        // Borda tops tie between 1 and 2; the president (voter 1) prefers 2
        assert_eq!(c1.value(p.index()), &[0b001, 0b010]);
        assert_eq!(f.value(p.index()), 0b010);
        let w = president_tiebreak(&c1, PresidentPolicy::Worst).unwrap();
        assert_eq!(w.value(p.index()), 0b001);
    }

    #[test]
    fn split_committee_examples() {
        assert_eq!(split_committee_partitions(7), vec![(1, 6), (2, 5), (3, 4)]);
        assert_eq!(split_committee_partitions(8), vec![(1, 7), (3, 5)]);
        assert_eq!(split_committee_partitions(5), vec![(1, 4), (2, 3)]);
        assert_eq!(split_committee_partitions(4), vec![(1, 3)]);
        // a unique option exactly for 2, 3, 4 and 6 voters
        for h in 2..=12usize {
            let unique = split_committee_partitions(h).len() == 1;
            assert_eq!(unique, matches!(h, 2 | 3 | 4 | 6), "h={h}");
        }
        // for larger committees the option count is half the totient
        for h in 7..=12usize {
            let phi = (1..=h).filter(|&a| gcd(a as u64, h as u64) == 1).count();
            assert_eq!(split_committee_partitions(h).len(), phi / 2, "h={h}");
        }
    }

    #[test]
    fn seeded_policy_is_reproducible() {
        let group = involution_omega_group();
        let borda = evaluate_all(&RuleId::Borda, 2, 4).unwrap();
        let a = build_consistent_spc_refinement(&group, &borda, ChoicePolicy::Seeded(7)).unwrap();
        let b = build_consistent_spc_refinement(&group, &borda, ChoicePolicy::Seeded(7)).unwrap();
        assert_eq!(a.0, b.0);
    }
}
