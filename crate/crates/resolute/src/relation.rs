//! Relations on `{1, ..., m}`: classification, automorphism groups,
//! indifference partitions of orders, linear extensions and k-maximum
//! sets, plus the ranking type used for ballots and social outcomes.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::perm::{factorial, gcd, Partition, Perm, PermGroup};

/// Degree cap for scans over all of S_m (automorphisms, extensions).
pub const BRUTE_FORCE_CAP: usize = 8;

/// The reversal component: either leave a relation/ranking alone or
/// reverse it (compose with the order-reversing permutation).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Reversal {
    Id,
    Rev,
}

impl Reversal {
    pub fn compose(self, other: Reversal) -> Reversal {
        if self == other {
            Reversal::Id
        } else {
            Reversal::Rev
        }
    }

    /// The corresponding permutation of ranks.
    pub fn as_perm(self, n: usize) -> Perm {
        match self {
            Reversal::Id => Perm::identity(n),
            Reversal::Rev => Perm::order_reversing(n),
        }
    }
}

impl std::fmt::Display for Reversal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Reversal::Id => f.write_str("id"),
            Reversal::Rev => f.write_str("rho0"),
        }
    }
}

/// A relation on `{0, ..., m-1}` as an adjacency matrix;
/// `contains(x, y)` means "x is at least as good as y".
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    m: usize,
    adj: Vec<bool>,
}

/// Classification flags per the standard definitions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct RelationFlags {
    pub complete: bool,
    pub reflexive: bool,
    pub irreflexive: bool,
    pub antisymmetric: bool,
    pub asymmetric: bool,
    pub transitive: bool,
    pub acyclic: bool,
    pub is_order: bool,
    pub is_linear: bool,
}

impl Relation {
    pub fn empty(m: usize) -> Relation {
        Relation { m, adj: vec![false; m * m] }
    }

    pub fn total(m: usize) -> Relation {
        Relation { m, adj: vec![true; m * m] }
    }

    /// From 1-based pairs.
    pub fn from_pairs(m: usize, pairs: &[(usize, usize)]) -> Result<Relation> {
        let mut r = Relation::empty(m);
        for &(x, y) in pairs {
            if x < 1 || x > m || y < 1 || y > m {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("pair ({x}, {y}) out of range 1..={m}"),
                });
            }
            r.insert(x - 1, y - 1);
        }
        Ok(r)
    }

    /// The order whose indifference classes are given best class first
    /// (1-based labels). Reflexive pairs are implied.
    pub fn from_order_classes(m: usize, classes: &[Vec<usize>]) -> Result<Relation> {
        let mut class_of = vec![usize::MAX; m];
        for (c, class) in classes.iter().enumerate() {
            for &x in class {
                if x < 1 || x > m {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!("label {x} out of range 1..={m}"),
                    });
                }
                if class_of[x - 1] != usize::MAX {
                    return Err(Error::Parse { line: 0, msg: format!("label {x} repeated") });
                }
                class_of[x - 1] = c;
            }
        }
        if class_of.contains(&usize::MAX) {
            return Err(Error::Parse { line: 0, msg: "classes do not cover 1..=m".into() });
        }
        let mut r = Relation::empty(m);
        for x in 0..m {
            for y in 0..m {
                if class_of[x] <= class_of[y] {
                    r.insert(x, y);
                }
            }
        }
        Ok(r)
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.adj[x * self.m + y]
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        self.adj[x * self.m + y] = true;
    }

    pub fn remove(&mut self, x: usize, y: usize) {
        self.adj[x * self.m + y] = false;
    }

    /// 0-based pairs in row-major order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.m {
            for y in 0..self.m {
                if self.contains(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// The relation without its diagonal.
    pub fn strip_diagonal(&self) -> Relation {
        let mut r = self.clone();
        for x in 0..self.m {
            r.remove(x, x);
        }
        r
    }

    pub fn classify(&self) -> RelationFlags {
        let m = self.m;
        let mut f = RelationFlags::default();
        f.reflexive = (0..m).all(|x| self.contains(x, x));
        f.irreflexive = (0..m).all(|x| !self.contains(x, x));
        f.complete = (0..m).all(|x| (0..m).all(|y| self.contains(x, y) || self.contains(y, x)));
        f.antisymmetric =
            (0..m).all(|x| (0..m).all(|y| x == y || !(self.contains(x, y) && self.contains(y, x))));
        f.asymmetric = (0..m).all(|x| (0..m).all(|y| !self.contains(x, y) || !self.contains(y, x)));
        f.transitive = (0..m).all(|x| {
            (0..m).all(|y| {
                !self.contains(x, y)
                    || (0..m).all(|z| !self.contains(y, z) || self.contains(x, z))
            })
        });
        f.acyclic = self.is_acyclic();
        f.is_order = f.complete && f.transitive;
        f.is_linear = f.is_order && f.antisymmetric;
        f
    }

    /// No returning chain of distinct elements; self-loops are ignored.
    fn is_acyclic(&self) -> bool {
        // DFS three-colouring on the off-diagonal digraph.
        const WHITE: u8 = 0;
        const GREY: u8 = 1;
        const BLACK: u8 = 2;
        let m = self.m;
        let mut color = vec![WHITE; m];
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for s in 0..m {
            if color[s] != WHITE {
                continue;
            }
            stack.push((s, 0));
            color[s] = GREY;
            while let Some(&mut (x, ref mut next)) = stack.last_mut() {
                let mut advanced = false;
                while *next < m {
                    let y = *next;
                    *next += 1;
                    if y == x || !self.contains(x, y) {
                        continue;
                    }
                    match color[y] {
                        GREY => return false,
                        WHITE => {
                            color[y] = GREY;
                            stack.push((y, 0));
                            advanced = true;
                            break;
                        }
                        _ => {}
                    }
                }
                if !advanced && stack.last().map(|&(v, _)| v) == Some(x) {
                    color[x] = BLACK;
                    stack.pop();
                }
            }
        }
        true
    }

    /// σRρ: relabel the elements by σ, then reverse if asked.
    pub fn transform(&self, sigma: &Perm, rho: Reversal) -> Result<Relation> {
        if sigma.degree() != self.m {
            return Err(Error::DegreeMismatch { expected: self.m, found: sigma.degree() });
        }
        let mut r = Relation::empty(self.m);
        for (x, y) in self.pairs() {
            match rho {
                Reversal::Id => r.insert(sigma.apply(x), sigma.apply(y)),
                Reversal::Rev => r.insert(sigma.apply(y), sigma.apply(x)),
            }
        }
        Ok(r)
    }

    /// All σ with σR = R, by scanning S_m.
    pub fn aut_group(&self) -> Result<PermGroup> {
        if self.m > BRUTE_FORCE_CAP {
            return Err(Error::DegreeTooLarge { degree: self.m, cap: BRUTE_FORCE_CAP });
        }
        let elements: Vec<Perm> = Perm::all(self.m)
            .filter(|s| {
                (0..self.m).all(|x| {
                    (0..self.m)
                        .all(|y| self.contains(x, y) == self.contains(s.apply(x), s.apply(y)))
                })
            })
            .collect();
        Ok(PermGroup::from_sorted_elements(self.m, elements))
    }

    /// Indifference classes of an order, best class first (0-based
    /// members), together with the partition of their sizes.
    pub fn indifference_partition(&self) -> Result<(Vec<Vec<usize>>, Partition)> {
        if !self.classify().is_order {
            return Err(Error::NotAnOrder);
        }
        let m = self.m;
        let mut assigned = vec![false; m];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..m {
            if assigned[x] {
                continue;
            }
            let class: Vec<usize> = (0..m)
                .filter(|&y| self.contains(x, y) && self.contains(y, x))
                .collect();
            for &y in &class {
                assigned[y] = true;
            }
            classes.push(class);
        }
        // best class first: representatives compare strictly across classes
        classes.sort_by(|a, b| {
            if a[0] == b[0] {
                std::cmp::Ordering::Equal
            } else if self.contains(a[0], b[0]) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        let sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        Ok((classes, Partition::from_terms(sizes)?))
    }

    /// All linear orders containing R minus its diagonal, enumerated by
    /// depth-first completion in ascending alternative order (so the
    /// result is sorted by ranking). Empty exactly when R∖Δ has a cycle.
    pub fn linear_extensions(&self) -> Result<Vec<LinearOrder>> {
        if self.m > BRUTE_FORCE_CAP {
            return Err(Error::DegreeTooLarge { degree: self.m, cap: BRUTE_FORCE_CAP });
        }
        let m = self.m;
        let mut out = Vec::new();
        let mut placed = vec![false; m];
        let mut prefix: Vec<usize> = Vec::with_capacity(m);
        fn dfs(
            r: &Relation,
            placed: &mut Vec<bool>,
            prefix: &mut Vec<usize>,
            out: &mut Vec<LinearOrder>,
        ) {
            let m = r.degree();
            if prefix.len() == m {
                out.push(LinearOrder::from_rank_to_alt(prefix.clone()).unwrap());
                return;
            }
            for x in 0..m {
                // x may be ranked next once all its predecessors are ranked;
                // a mutual pair (x,y),(y,x) blocks both forever, so a cyclic
                // relation dead-ends with no output
                if placed[x] {
                    continue;
                }
                if (0..m).any(|y| y != x && r.contains(y, x) && !placed[y]) {
                    continue;
                }
                placed[x] = true;
                prefix.push(x);
                dfs(r, placed, prefix, out);
                prefix.pop();
                placed[x] = false;
            }
        }
        dfs(self, &mut placed, &mut prefix, &mut out);
        Ok(out)
    }

    /// All k-subsets W with every member at least as good as every
    /// non-member, as bitmasks in ascending encoding order.
    pub fn k_max_sets(&self, k: usize) -> Result<Vec<u32>> {
        if k < 1 || k >= self.m {
            return Err(Error::InvalidK { k, n: self.m });
        }
        Ok(k_subset_masks(self.m, k)
            .into_iter()
            .filter(|&w| {
                (0..self.m).all(|x| {
                    w & (1 << x) == 0
                        || (0..self.m).all(|y| w & (1 << y) != 0 || self.contains(x, y))
                })
            })
            .collect())
    }

    /// JSON form mirroring the matrix as a 1-based pair list.
    pub fn to_json(&self) -> serde_json::Value {
        let pairs: Vec<[usize; 2]> = self.pairs().iter().map(|&(x, y)| [x + 1, y + 1]).collect();
        serde_json::json!({ "m": self.m, "pairs": pairs })
    }
}

/// Parses the relation text format:
///
/// ```text
/// m=<int>
/// order:            (or `pairs:`)
/// 1 2               one indifference class per line, best first
/// 3 4 5             (for `pairs:`: one `x y` pair per line)
/// ```
pub fn parse_relation(text: &str) -> Result<Relation> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line_no, header) = lines
        .next()
        .ok_or(Error::Parse { line: 0, msg: "empty relation file".into() })?;
    let m: usize = header
        .strip_prefix("m=")
        .and_then(|v| v.trim().parse().ok())
        .ok_or(Error::Parse { line: line_no, msg: "expected `m=<int>`".into() })?;
    let (line_no, kind) = lines
        .next()
        .ok_or(Error::Parse { line: line_no, msg: "expected `order:` or `pairs:`".into() })?;
    match kind {
        "order:" => {
            let mut classes = Vec::new();
            for (ln, l) in lines {
                let class: Vec<usize> = l
                    .split_whitespace()
                    .map(|t| {
                        t.parse().map_err(|_| Error::Parse {
                            line: ln,
                            msg: format!("bad label {t:?}"),
                        })
                    })
                    .collect::<Result<_>>()?;
                classes.push(class);
            }
            Relation::from_order_classes(m, &classes)
        }
        "pairs:" => {
            let mut pairs = Vec::new();
            for (ln, l) in lines {
                let nums: Vec<usize> = l
                    .split_whitespace()
                    .map(|t| {
                        t.parse().map_err(|_| Error::Parse {
                            line: ln,
                            msg: format!("bad label {t:?}"),
                        })
                    })
                    .collect::<Result<_>>()?;
                if nums.len() != 2 {
                    return Err(Error::Parse { line: ln, msg: "expected `x y`".into() });
                }
                pairs.push((nums[0], nums[1]));
            }
            Relation::from_pairs(m, &pairs)
        }
        other => Err(Error::Parse {
            line: line_no,
            msg: format!("expected `order:` or `pairs:`, found {other:?}"),
        }),
    }
}

/// A ranking of n alternatives stored as the rank-to-alternative
/// permutation: position r holds the alternative ranked r-th.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearOrder {
    perm: Perm,
}

impl LinearOrder {
    /// From a 0-based rank-to-alternative array.
    pub fn from_rank_to_alt(images: Vec<usize>) -> Result<LinearOrder> {
        Ok(LinearOrder { perm: Perm::from_images(images)? })
    }

    /// From a 1-based best-to-worst listing, e.g. `[2, 1, 3]`.
    pub fn from_ranking(ranking: &[usize]) -> Result<LinearOrder> {
        for &x in ranking {
            if x < 1 || x > ranking.len() {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("alternative {x} out of range 1..={}", ranking.len()),
                });
            }
        }
        LinearOrder::from_rank_to_alt(ranking.iter().map(|&x| x - 1).collect())
    }

    pub fn from_perm(perm: Perm) -> LinearOrder {
        LinearOrder { perm }
    }

    pub fn degree(&self) -> usize {
        self.perm.degree()
    }

    pub fn as_perm(&self) -> &Perm {
        &self.perm
    }

    /// Alternative at a 0-based rank.
    pub fn alt_at(&self, rank: usize) -> usize {
        self.perm.apply(rank)
    }

    /// 0-based rank of a 0-based alternative.
    pub fn rank_of(&self, alt: usize) -> usize {
        self.perm.inverse().apply(alt)
    }

    /// ψ·q: rename alternatives.
    pub fn relabel(&self, psi: &Perm) -> Result<LinearOrder> {
        Ok(LinearOrder { perm: psi.compose(&self.perm)? })
    }

    /// q·ρ: reverse the ranking when ρ is the reversal.
    pub fn reverse_if(&self, rho: Reversal) -> LinearOrder {
        match rho {
            Reversal::Id => self.clone(),
            Reversal::Rev => LinearOrder {
                perm: self
                    .perm
                    .compose(&Perm::order_reversing(self.degree()))
                    .expect("degrees match"),
            },
        }
    }

    /// The top-k alternatives as a bitmask (bit i = alternative i).
    pub fn top_k(&self, k: usize) -> u32 {
        (0..k).fold(0u32, |acc, r| acc | (1 << self.alt_at(r)))
    }

    /// Canonical rank among all rankings (lexicographic).
    pub fn rank(&self) -> u64 {
        self.perm.lehmer_rank()
    }

    pub fn from_rank(n: usize, rank: u64) -> LinearOrder {
        LinearOrder { perm: Perm::from_lehmer(n, rank) }
    }

    pub fn all(n: usize) -> impl Iterator<Item = LinearOrder> {
        Perm::all(n).map(LinearOrder::from_perm)
    }

    /// The ranking as a complete reflexive relation.
    pub fn to_relation(&self) -> Relation {
        let n = self.degree();
        let mut r = Relation::empty(n);
        let inv = self.perm.inverse();
        for x in 0..n {
            for y in 0..n {
                if inv.apply(x) <= inv.apply(y) {
                    r.insert(x, y);
                }
            }
        }
        r
    }

    pub fn from_relation(r: &Relation) -> Result<LinearOrder> {
        if !r.classify().is_linear {
            return Err(Error::NotAnOrder);
        }
        let m = r.degree();
        let mut with_count: Vec<(usize, usize)> = (0..m)
            .map(|x| ((0..m).filter(|&y| r.contains(x, y)).count(), x))
            .collect();
        with_count.sort_by_key(|&(count, _)| std::cmp::Reverse(count));
        LinearOrder::from_rank_to_alt(with_count.into_iter().map(|(_, x)| x).collect())
    }
}

impl std::fmt::Display for LinearOrder {
    /// Space-separated 1-based alternatives, best to worst.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for r in 0..self.degree() {
            if r > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.alt_at(r) + 1)?;
        }
        Ok(())
    }
}

/// γ(Aut(R)) and |Aut(R)| for an order from the partition of its
/// indifference-set sizes: gcd of the distinct sizes, and the product of
/// factorials raised to multiplicities.
pub fn order_aut_stats(t: &Partition) -> (u64, BigUint) {
    let gamma = t.distinct_terms().iter().fold(0u64, |acc, &v| gcd(acc, v as u64));
    let mut order = BigUint::from(1u32);
    for &(v, mult) in t.normal_form() {
        let f = BigUint::from(factorial(v));
        for _ in 0..mult {
            order *= &f;
        }
    }
    (gamma.max(1), order)
}

/// All k-subset bitmasks of an n-set, ascending by encoding.
pub fn k_subset_masks(n: usize, k: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|w| w.count_ones() as usize == k).collect()
}

/// Image of a subset under a permutation of the ground set.
pub fn apply_perm_to_mask(psi: &Perm, mask: u32) -> u32 {
    let mut out = 0u32;
    for x in 0..psi.degree() {
        if mask & (1 << x) != 0 {
            out |= 1 << psi.apply(x);
        }
    }
    out
}

/// Human-readable 1-based member list of a subset mask, e.g. `{1, 4}`.
pub fn mask_to_string(n: usize, mask: u32) -> String {
    let mut parts = Vec::new();
    for x in 0..n {
        if mask & (1 << x) != 0 {
            parts.push((x + 1).to_string());
        }
    }
    format!("{{{}}}", parts.join(" "))
}
