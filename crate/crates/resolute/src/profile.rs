//! Preference profiles and the action of voter relabellings, alternative
//! relabellings and ranking reversal on them; orbit decomposition of the
//! profile space with stabilizers and regularity testing.

use rayon::prelude::*;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::perm::{gcd, lcm, Perm, PermGroup};
use crate::relation::{LinearOrder, Reversal};

/// Default cap on the profile-space size (n!)^h.
pub const PROFILE_SPACE_CAP: u64 = 10_000_000;

/// One symmetry: rename voter i to phi(i), alternative x to psi(x), and
/// move rank r to rho(r).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    pub phi: Perm,
    pub psi: Perm,
    pub rho: Reversal,
}

impl GroupElement {
    pub fn identity(h: usize, n: usize) -> GroupElement {
        GroupElement { phi: Perm::identity(h), psi: Perm::identity(n), rho: Reversal::Id }
    }

    /// Component-wise product (right-to-left, like permutations).
    pub fn product(&self, other: &GroupElement) -> Result<GroupElement> {
        Ok(GroupElement {
            phi: self.phi.compose(&other.phi)?,
            psi: self.psi.compose(&other.psi)?,
            rho: self.rho.compose(other.rho),
        })
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement { phi: self.phi.inverse(), psi: self.psi.inverse(), rho: self.rho }
    }

    pub fn is_identity(&self) -> bool {
        self.phi.is_identity() && self.psi.is_identity() && self.rho == Reversal::Id
    }

    /// Whether the reversal component is trivial.
    pub fn in_id_slice(&self) -> bool {
        self.rho == Reversal::Id
    }
}

impl std::fmt::Display for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "phi:{} psi:{} rho:{}", self.phi, self.psi, self.rho)
    }
}

/// The projections of a product-shaped group onto its factors.
#[derive(Clone, Debug)]
pub struct ProductShape {
    pub voters: PermGroup,
    pub alts: PermGroup,
    pub omega_full: bool,
}

/// An explicitly enumerated subgroup of S_h x S_n x {id, rho0}.
#[derive(Clone, Debug)]
pub struct SymmetryGroup {
    h: usize,
    n: usize,
    elements: Vec<GroupElement>,
    contained_in_id_slice: bool,
    product_shape: Option<ProductShape>,
}

impl SymmetryGroup {
    /// Closure of the generators, canonically sorted.
    pub fn generate(h: usize, n: usize, gens: &[GroupElement], cap: usize) -> Result<SymmetryGroup> {
        for g in gens {
            if g.phi.degree() != h {
                return Err(Error::DegreeMismatch { expected: h, found: g.phi.degree() });
            }
            if g.psi.degree() != n {
                return Err(Error::DegreeMismatch { expected: n, found: g.psi.degree() });
            }
        }
        let mut seen = std::collections::HashSet::new();
        let id = GroupElement::identity(h, n);
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = g.product(&x)?;
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    frontier.push(y);
                }
            }
        }
        let mut elements: Vec<GroupElement> = seen.into_iter().collect();
        elements.sort();
        Ok(SymmetryGroup::from_closed_elements(h, n, elements))
    }

    /// The product group V x W x ({id} or Omega); no closure pass needed.
    pub fn from_product(voters: &PermGroup, alts: &PermGroup, omega_full: bool) -> SymmetryGroup {
        let h = voters.degree();
        let n = alts.degree();
        let rhos: &[Reversal] =
            if omega_full { &[Reversal::Id, Reversal::Rev] } else { &[Reversal::Id] };
        let mut elements = Vec::with_capacity(
            voters.elements().len() * alts.elements().len() * rhos.len(),
        );
        for phi in voters.elements() {
            for psi in alts.elements() {
                for &rho in rhos {
                    elements.push(GroupElement { phi: phi.clone(), psi: psi.clone(), rho });
                }
            }
        }
        elements.sort();
        SymmetryGroup::from_closed_elements(h, n, elements)
    }

    pub fn trivial(h: usize, n: usize) -> SymmetryGroup {
        SymmetryGroup::from_closed_elements(h, n, vec![GroupElement::identity(h, n)])
    }

    /// The full group S_h x S_n x Omega.
    pub fn full(h: usize, n: usize) -> Result<SymmetryGroup> {
        Ok(SymmetryGroup::from_product(
            &PermGroup::symmetric(h)?,
            &PermGroup::symmetric(n)?,
            true,
        ))
    }

    fn from_closed_elements(h: usize, n: usize, elements: Vec<GroupElement>) -> SymmetryGroup {
        let contained_in_id_slice = elements.iter().all(GroupElement::in_id_slice);
        let product_shape = Self::detect_product_shape(h, n, &elements);
        SymmetryGroup { h, n, elements, contained_in_id_slice, product_shape }
    }

    /// A group is product-shaped exactly when it equals the product of its
    /// three component projections.
    fn detect_product_shape(h: usize, n: usize, elements: &[GroupElement]) -> Option<ProductShape> {
        let mut phis: Vec<Perm> = elements.iter().map(|g| g.phi.clone()).collect();
        phis.sort();
        phis.dedup();
        let mut psis: Vec<Perm> = elements.iter().map(|g| g.psi.clone()).collect();
        psis.sort();
        psis.dedup();
        let omega_full = elements.iter().any(|g| g.rho == Reversal::Rev);
        let rho_count = if omega_full { 2 } else { 1 };
        if phis.len() * psis.len() * rho_count == elements.len() {
            Some(ProductShape {
                voters: PermGroup::from_sorted_elements(h, phis),
                alts: PermGroup::from_sorted_elements(n, psis),
                omega_full,
            })
        } else {
            None
        }
    }

    /// The subgroup generated by this group and another.
    pub fn join(&self, other: &SymmetryGroup, cap: usize) -> Result<SymmetryGroup> {
        if self.h != other.h || self.n != other.n {
            return Err(Error::DegreeMismatch { expected: self.h, found: other.h });
        }
        let gens: Vec<GroupElement> =
            self.elements.iter().chain(other.elements.iter()).cloned().collect();
        SymmetryGroup::generate(self.h, self.n, &gens, cap)
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in canonical order (lexicographic on phi, psi, rho).
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn contained_in_id_slice(&self) -> bool {
        self.contained_in_id_slice
    }

    pub fn product_shape(&self) -> Option<&ProductShape> {
        self.product_shape.as_ref()
    }

    /// First element with a reversal component, in canonical order.
    pub fn first_reversal_element(&self) -> Option<&GroupElement> {
        self.elements.iter().find(|g| g.rho == Reversal::Rev)
    }

    pub fn space_size(&self) -> u128 {
        Profile::space_size(self.h, self.n)
    }
}

/// A preference profile: one ranking per voter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    ballots: Vec<LinearOrder>,
}

impl Profile {
    pub fn new(ballots: Vec<LinearOrder>) -> Result<Profile> {
        if ballots.is_empty() {
            return Err(Error::Parse { line: 0, msg: "a profile needs at least one voter".into() });
        }
        let n = ballots[0].degree();
        for b in &ballots {
            if b.degree() != n {
                return Err(Error::DegreeMismatch { expected: n, found: b.degree() });
            }
        }
        Ok(Profile { ballots })
    }

    pub fn h(&self) -> usize {
        self.ballots.len()
    }

    pub fn n(&self) -> usize {
        self.ballots[0].degree()
    }

    pub fn ballot(&self, voter: usize) -> &LinearOrder {
        &self.ballots[voter]
    }

    pub fn ballots(&self) -> &[LinearOrder] {
        &self.ballots
    }

    /// (n!)^h, saturating so cap checks survive oversized inputs.
    pub fn space_size(h: usize, n: usize) -> u128 {
        let f = crate::perm::factorial(n) as u128;
        (0..h).fold(1u128, |acc, _| acc.saturating_mul(f))
    }

    /// Canonical index: mixed radix over per-ballot ranks, voter 1 most
    /// significant. Lexicographically minimal profiles get index 0.
    pub fn index(&self) -> u64 {
        let f = crate::perm::factorial(self.n());
        self.ballots.iter().fold(0u64, |acc, b| acc * f + b.rank())
    }

    pub fn from_index(h: usize, n: usize, mut index: u64) -> Profile {
        let f = crate::perm::factorial(n);
        let mut ranks = vec![0u64; h];
        for i in (0..h).rev() {
            ranks[i] = index % f;
            index /= f;
        }
        Profile {
            ballots: ranks.into_iter().map(|r| LinearOrder::from_rank(n, r)).collect(),
        }
    }

    /// The action: voter i's new ballot is psi . p_{phi^-1(i)} . rho.
    pub fn act(&self, g: &GroupElement) -> Result<Profile> {
        if g.phi.degree() != self.h() {
            return Err(Error::DegreeMismatch { expected: self.h(), found: g.phi.degree() });
        }
        if g.psi.degree() != self.n() {
            return Err(Error::DegreeMismatch { expected: self.n(), found: g.psi.degree() });
        }
        let phi_inv = g.phi.inverse();
        let ballots = (0..self.h())
            .map(|i| {
                self.ballots[phi_inv.apply(i)]
                    .relabel(&g.psi)
                    .map(|b| b.reverse_if(g.rho))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Profile { ballots })
    }
}

impl std::fmt::Display for Profile {
    /// The profile file format: a header line then one ballot per line.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "h={} n={}", self.h(), self.n())?;
        for b in &self.ballots {
            writeln!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Parses the profile text format: `h=<int> n=<int>` then h ballot lines,
/// each a space-separated permutation of 1..n listed best to worst.
pub fn parse_profile(text: &str) -> Result<Profile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line_no, header) =
        lines.next().ok_or(Error::Parse { line: 0, msg: "empty profile file".into() })?;
    let mut h = None;
    let mut n = None;
    for tok in header.split_whitespace() {
        if let Some(v) = tok.strip_prefix("h=") {
            h = v.parse().ok();
        } else if let Some(v) = tok.strip_prefix("n=") {
            n = v.parse().ok();
        }
    }
    let (h, n): (usize, usize) = match (h, n) {
        (Some(h), Some(n)) => (h, n),
        _ => return Err(Error::Parse { line: line_no, msg: "expected `h=<int> n=<int>`".into() }),
    };
    let mut ballots = Vec::with_capacity(h);
    for (ln, l) in lines {
        let ranking: Vec<usize> = l
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse { line: ln, msg: format!("bad alternative {t:?}") }))
            .collect::<Result<_>>()?;
        if ranking.len() != n {
            return Err(Error::Parse { line: ln, msg: format!("expected {n} alternatives") });
        }
        ballots.push(LinearOrder::from_ranking(&ranking).map_err(|e| match e {
            Error::Parse { msg, .. } => Error::Parse { line: ln, msg },
            other => other,
        })?);
    }
    if ballots.len() != h {
        return Err(Error::Parse { line: 0, msg: format!("expected {h} ballots, found {}", ballots.len()) });
    }
    Profile::new(ballots)
}

/// Precomputed tables turning the group action into array lookups on
/// profile indices: `apply(p, e)` is the index of the profile obtained by
/// acting on profile `p` with the group's `e`-th element. Build once,
/// share freely across threads.
pub struct ProfileAction {
    h: usize,
    fact_n: u64,
    /// per distinct (psi, rho): ballot-rank -> ballot-rank
    ballot_tables: Vec<Vec<u32>>,
    /// per group element: (phi inverse images, ballot table id)
    per_element: Vec<(Vec<usize>, usize)>,
}

impl ProfileAction {
    pub fn build(group: &SymmetryGroup) -> ProfileAction {
        let n = group.n();
        let fact_n = crate::perm::factorial(n);
        let mut table_ids: HashMap<(Vec<usize>, Reversal), usize> = HashMap::new();
        let mut ballot_tables: Vec<Vec<u32>> = Vec::new();
        let mut per_element = Vec::with_capacity(group.order());
        for g in group.elements() {
            let key = (g.psi.images().to_vec(), g.rho);
            let id = *table_ids.entry(key).or_insert_with(|| {
                let table: Vec<u32> = (0..fact_n)
                    .map(|r| {
                        let q = LinearOrder::from_rank(n, r);
                        q.relabel(&g.psi).expect("degrees match").reverse_if(g.rho).rank() as u32
                    })
                    .collect();
                ballot_tables.push(table);
                ballot_tables.len() - 1
            });
            per_element.push((g.phi.inverse().images().to_vec(), id));
        }
        ProfileAction { h: group.h(), fact_n, ballot_tables, per_element }
    }

    /// Index of the profile obtained by acting with element `elem`.
    pub fn apply(&self, index: u64, elem: usize) -> u64 {
        let (phi_inv, table_id) = &self.per_element[elem];
        let table = &self.ballot_tables[*table_id];
        let mut digits = vec![0u64; self.h];
        let mut idx = index;
        for i in (0..self.h).rev() {
            digits[i] = idx % self.fact_n;
            idx /= self.fact_n;
        }
        let mut out = 0u64;
        for i in 0..self.h {
            out = out * self.fact_n + table[digits[phi_inv[i]] as usize] as u64;
        }
        out
    }
}

/// All elements of U fixing p, in canonical order. Always a subgroup.
pub fn stabilizer(group: &SymmetryGroup, p: &Profile) -> Result<Vec<GroupElement>> {
    let mut out = Vec::new();
    for g in group.elements() {
        if &p.act(g)? == p {
            out.push(g.clone());
        }
    }
    Ok(out)
}

/// Orbit classification: does the orbit's stabilizer stay inside the
/// rho = id slice?
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum OrbitClass {
    P1,
    P2,
}

/// One orbit of the action.
#[derive(Clone, Debug)]
pub struct OrbitInfo {
    /// Minimal profile index in the orbit (the canonical representative).
    pub rep_index: u64,
    pub size: u64,
    pub class: OrbitClass,
    /// Indices into the group's element list of the representative's
    /// stabilizer.
    pub stabilizer: Vec<usize>,
    /// For P2 representatives: the unique alternative permutation paired
    /// with the reversal in the stabilizer, when it is unique and an
    /// involution conjugate to the rank reversal (always the case for
    /// regular groups).
    pub psi: Option<Perm>,
}

/// The complete orbit decomposition of the profile space under a group.
pub struct OrbitTable {
    h: usize,
    n: usize,
    orbits: Vec<OrbitInfo>,
    orbit_of: Vec<u32>,
    witness_of: Vec<u32>,
}

impl OrbitTable {
    pub fn h(&self) -> usize {
        self.h
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn orbits(&self) -> &[OrbitInfo] {
        &self.orbits
    }

    pub fn orbit_of(&self, index: u64) -> usize {
        self.orbit_of[index as usize] as usize
    }

    /// Index (into the group's element list) of an element mapping the
    /// orbit representative to this profile.
    pub fn witness_of(&self, index: u64) -> usize {
        self.witness_of[index as usize] as usize
    }

    pub fn class_counts(&self) -> (usize, usize) {
        let p1 = self.orbits.iter().filter(|o| o.class == OrbitClass::P1).count();
        (p1, self.orbits.len() - p1)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "orbits": self
                .orbits
                .iter()
                .map(|o| {
                    serde_json::json!({
                        "rep_index": o.rep_index,
                        "size": o.size,
                        "class": o.class,
                        "psi": o.psi.as_ref().map(|p| p.to_string()),
                    })
                })
                .collect::<Vec<_>>(),
        })
    }
}

/// Decomposes the whole profile space into orbits. Representatives are the
/// minimal indices; the scan visits indices in ascending order, so the
/// result is deterministic and independent of thread count.
pub fn orbit_decomposition(group: &SymmetryGroup) -> Result<OrbitTable> {
    orbit_decomposition_capped(group, PROFILE_SPACE_CAP)
}

pub fn orbit_decomposition_capped(group: &SymmetryGroup, cap: u64) -> Result<OrbitTable> {
    let size = Profile::space_size(group.h(), group.n());
    if size > cap as u128 {
        return Err(Error::ProfileSpaceTooLarge { size, cap });
    }
    let size = size as u64;
    let tables = ProfileAction::build(group);
    let m = group.order();
    let mut orbit_of = vec![u32::MAX; size as usize];
    let mut witness_of = vec![0u32; size as usize];
    let mut orbits = Vec::new();
    let rho0 = Perm::order_reversing(group.n());
    for rep in 0..size {
        if orbit_of[rep as usize] != u32::MAX {
            continue;
        }
        let orbit_id = orbits.len() as u32;
        // the full element list applied to the representative yields the
        // orbit, the stabilizer, and a witness per member in one pass
        let targets: Vec<u64> = (0..m).into_par_iter().map(|e| tables.apply(rep, e)).collect();
        let mut stab = Vec::new();
        let mut orbit_size = 0u64;
        for (e, &t) in targets.iter().enumerate() {
            if t == rep {
                stab.push(e);
            }
            if orbit_of[t as usize] == u32::MAX {
                orbit_of[t as usize] = orbit_id;
                witness_of[t as usize] = e as u32;
                orbit_size += 1;
            }
        }
        let elems = group.elements();
        let class = if stab.iter().all(|&e| elems[e].in_id_slice()) {
            OrbitClass::P1
        } else {
            OrbitClass::P2
        };
        let psi = match class {
            OrbitClass::P1 => None,
            OrbitClass::P2 => {
                let mut psis: Vec<&Perm> = stab
                    .iter()
                    .filter(|&&e| !elems[e].in_id_slice())
                    .map(|&e| &elems[e].psi)
                    .collect();
                psis.dedup();
                if psis.len() == 1 && psis[0].cycle_type() == rho0.cycle_type() {
                    Some(psis[0].clone())
                } else {
                    None
                }
            }
        };
        orbits.push(OrbitInfo { rep_index: rep, size: orbit_size, class, stabilizer: stab, psi });
    }
    Ok(OrbitTable { h: group.h(), n: group.n(), orbits, orbit_of, witness_of })
}

/// Outcome of a regularity test.
#[derive(Clone, Debug)]
pub struct RegularityReport {
    pub regular: bool,
    /// First profile (by canonical index) whose stabilizer breaks the
    /// template, when not regular.
    pub witness: Option<u64>,
    /// The gcd criterion verdict, when the group is product-shaped.
    pub criterion: Option<bool>,
    /// Whether the direct scan and the criterion agree.
    pub criterion_agreement: Option<bool>,
}

/// Checks whether every stabilizer fits inside
/// (S_h x {id} x {id}) U (S_h x {psi*} x {rho0}) with psi* conjugate to
/// the rank reversal. The scan visits orbit representatives in ascending
/// order; the verdict is constant on orbits, so the first failing
/// representative is the first failing profile.
pub fn is_regular(group: &SymmetryGroup) -> Result<RegularityReport> {
    let table = orbit_decomposition(group)?;
    is_regular_with_table(group, &table)
}

pub fn is_regular_with_table(group: &SymmetryGroup, table: &OrbitTable) -> Result<RegularityReport> {
    let elems = group.elements();
    let rho0 = Perm::order_reversing(group.n());
    let mut witness = None;
    for orbit in table.orbits() {
        let mut ok = true;
        let mut rev_psi: Option<&Perm> = None;
        for &e in &orbit.stabilizer {
            let g = &elems[e];
            match g.rho {
                Reversal::Id => {
                    if !g.psi.is_identity() {
                        ok = false;
                        break;
                    }
                }
                Reversal::Rev => {
                    if g.psi.cycle_type() != rho0.cycle_type() {
                        ok = false;
                        break;
                    }
                    match rev_psi {
                        None => rev_psi = Some(&g.psi),
                        Some(prev) if prev == &g.psi => {}
                        Some(_) => {
                            ok = false;
                            break;
                        }
                    }
                }
            }
        }
        if !ok {
            witness = Some(orbit.rep_index);
            break;
        }
    }
    let criterion = group.product_shape().map(|shape| {
        let gamma = shape.voters.type_number();
        let w = shape.alts.order();
        if shape.omega_full {
            gcd(gamma, lcm(w, 2)) == 1
        } else {
            gcd(gamma, w) == 1
        }
    });
    let regular = witness.is_none();
    Ok(RegularityReport {
        regular,
        witness,
        criterion,
        criterion_agreement: criterion.map(|c| c == regular),
    })
}

/// The unique alternative permutation paired with the reversal in the
/// stabilizer of p, or `None` when the stabilizer stays in the
/// S_h x {id} x {id} corner. Verifies regularity first and re-verifies
/// uniqueness at runtime.
pub fn psi_for_profile(group: &SymmetryGroup, p: &Profile) -> Result<Option<Perm>> {
    let report = is_regular(group)?;
    if !report.regular {
        return Err(Error::NotRegular { witness: report.witness });
    }
    stab_psi(group, &stabilizer(group, p)?)
}

/// Extracts psi_p from an already computed stabilizer; `BrokenInvariant`
/// signals a regularity bug (two distinct reversal partners).
pub(crate) fn stab_psi(group: &SymmetryGroup, stab: &[GroupElement]) -> Result<Option<Perm>> {
    let rho0 = Perm::order_reversing(group.n());
    let mut found: Option<&Perm> = None;
    for g in stab {
        if g.rho == Reversal::Rev {
            match found {
                None => found = Some(&g.psi),
                Some(prev) if prev == &g.psi => {}
                Some(prev) => {
                    return Err(Error::BrokenInvariant(format!(
                        "profile stabilizer pairs the reversal with both {prev} and {}",
                        g.psi
                    )));
                }
            }
        }
    }
    if let Some(psi) = found {
        if psi.cycle_type() != rho0.cycle_type() {
            return Err(Error::BrokenInvariant(format!(
                "reversal partner {psi} is not conjugate to the rank reversal"
            )));
        }
    }
    Ok(found.cloned())
}
