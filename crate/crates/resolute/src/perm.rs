//! Permutations of `{1, ..., m}`, their cycle types, and explicitly
//! enumerated permutation groups.
//!
//! Points are 0-based in memory and 1-based in every textual interface
//! (cycle notation, files, JSON). Composition is right-to-left:
//! `(a * b)(x) = a(b(x))`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Greatest common divisor.
pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Least common multiple; `lcm(0, x) = 0` never occurs here since all
/// inputs are positive.
pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Factorial as an unsigned 64-bit value, saturating past 20! so that
/// size-cap comparisons stay meaningful for absurd inputs.
pub fn factorial(m: usize) -> u64 {
    (1..=m as u64).fold(1u64, |acc, x| acc.saturating_mul(x))
}

/// A bijection of `{0, ..., m-1}` stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    /// Builds a permutation from 0-based images, validating bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &x in &images {
            if x >= m || seen[x] {
                return Err(Error::BrokenInvariant(format!(
                    "image array {images:?} is not a permutation"
                )));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(m: usize) -> Perm {
        Perm { images: (0..m).collect() }
    }

    /// The order-reversing permutation `r -> m - r + 1` (1-based).
    pub fn order_reversing(m: usize) -> Perm {
        Perm { images: (0..m).rev().collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based point.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Right-to-left composition: `self.compose(b)` maps `x` to `self(b(x))`.
    pub fn compose(&self, b: &Perm) -> Result<Perm> {
        if self.degree() != b.degree() {
            return Err(Error::DegreeMismatch { expected: self.degree(), found: b.degree() });
        }
        Ok(Perm { images: (0..self.degree()).map(|x| self.apply(b.apply(x))).collect() })
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Perm { images: inv }
    }

    /// Disjoint cycles of length >= 2, each rotated to start at its least
    /// point, sorted by starting point (0-based).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let m = self.degree();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for start in 0..m {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// The partition of m by orbit sizes; fixed points contribute 1s.
    pub fn cycle_type(&self) -> Partition {
        let mut terms: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        let fixed = self.degree() - terms.iter().sum::<usize>();
        terms.extend(std::iter::repeat_n(1, fixed));
        Partition::from_terms(terms).expect("orbit sizes sum to the degree")
    }

    /// Smallest t >= 1 with self^t = id; equals lcm of the cycle type.
    pub fn order(&self) -> u64 {
        self.cycle_type().lcm_terms()
    }

    /// Conjugacy test by type comparison.
    pub fn is_conjugate(&self, other: &Perm) -> Result<bool> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { expected: self.degree(), found: other.degree() });
        }
        Ok(self.cycle_type() == other.cycle_type())
    }

    /// Lexicographic rank of the image array among all degree-m
    /// permutations (the Lehmer code in factorial base).
    pub fn lehmer_rank(&self) -> u64 {
        let m = self.degree();
        let mut rank = 0u64;
        for i in 0..m {
            let smaller = (i + 1..m).filter(|&j| self.images[j] < self.images[i]).count() as u64;
            rank += smaller * factorial(m - 1 - i);
        }
        rank
    }

    /// Inverse of [`Perm::lehmer_rank`].
    pub fn from_lehmer(m: usize, mut rank: u64) -> Perm {
        let mut pool: Vec<usize> = (0..m).collect();
        let mut images = Vec::with_capacity(m);
        for i in 0..m {
            let f = factorial(m - 1 - i);
            let d = (rank / f) as usize;
            rank %= f;
            images.push(pool.remove(d));
        }
        Perm { images }
    }

    /// All degree-m permutations in lexicographic (Lehmer) order.
    pub fn all(m: usize) -> impl Iterator<Item = Perm> {
        (0..factorial(m)).map(move |r| Perm::from_lehmer(m, r))
    }
}

impl fmt::Display for Perm {
    /// Cycle notation with 1-based points, e.g. `(1 2)(3 4)`; the identity
    /// prints as `id`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("id");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Parses 1-based cycle notation against an explicit degree, since the
/// degree is not recoverable from the text.
pub fn parse_cycles(m: usize, s: &str) -> Result<Perm> {
    let s = s.trim();
    if s == "id" || s.is_empty() || s == "()" {
        return Ok(Perm::identity(m));
    }
    let mut images: Vec<usize> = (0..m).collect();
    let mut moved = vec![false; m];
    let body = s;
    let mut rest = body;
    while !rest.is_empty() {
        let rest_trim = rest.trim_start();
        if rest_trim.is_empty() {
            break;
        }
        if !rest_trim.starts_with('(') {
            return Err(Error::Parse { line: 0, msg: format!("expected '(' in cycles: {s:?}") });
        }
        let close = rest_trim.find(')').ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("unclosed cycle in {s:?}"),
        })?;
        let inner = &rest_trim[1..close];
        rest = &rest_trim[close + 1..];
        let mut cycle = Vec::new();
        for tok in inner.split([' ', ',']).filter(|t| !t.is_empty()) {
            let v: usize = tok.parse().map_err(|_| Error::Parse {
                line: 0,
                msg: format!("bad point {tok:?} in cycles"),
            })?;
            if v < 1 || v > m {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("point {v} out of range 1..={m}"),
                });
            }
            cycle.push(v - 1);
        }
        if cycle.len() < 2 {
            continue;
        }
        for w in &cycle {
            if moved[*w] {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("point {} repeated across cycles", w + 1),
                });
            }
            moved[*w] = true;
        }
        for i in 0..cycle.len() {
            images[cycle[i]] = cycle[(i + 1) % cycle.len()];
        }
    }
    Perm::from_images(images)
}

impl FromStr for Perm {
    type Err = Error;

    /// Parsing without a degree context: the degree is the largest point
    /// mentioned (so `"(1 2)"` is a degree-2 permutation).
    fn from_str(s: &str) -> Result<Perm> {
        let max = s
            .split(|c: char| !c.is_ascii_digit())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().unwrap_or(0))
            .max()
            .unwrap_or(0);
        parse_cycles(max.max(1), s)
    }
}

/// A number-theoretic partition of m, kept in normal form
/// `[m_1^{t_1}, ..., m_s^{t_s}]` with `m_1 < ... < m_s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    m: usize,
    normal_form: Vec<(usize, usize)>,
}

impl Partition {
    pub fn from_terms(mut terms: Vec<usize>) -> Result<Partition> {
        if terms.contains(&0) {
            return Err(Error::BrokenInvariant("partition terms must be positive".into()));
        }
        terms.sort_unstable();
        let m = terms.iter().sum();
        let mut normal_form: Vec<(usize, usize)> = Vec::new();
        for t in terms {
            match normal_form.last_mut() {
                Some((v, mult)) if *v == t => *mult += 1,
                _ => normal_form.push((t, 1)),
            }
        }
        Ok(Partition { m, normal_form })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `(value, multiplicity)` pairs, values strictly increasing.
    pub fn normal_form(&self) -> &[(usize, usize)] {
        &self.normal_form
    }

    /// The terms with multiplicity, ascending.
    pub fn terms(&self) -> Vec<usize> {
        self.normal_form
            .iter()
            .flat_map(|&(v, t)| std::iter::repeat_n(v, t))
            .collect()
    }

    pub fn distinct_terms(&self) -> Vec<usize> {
        self.normal_form.iter().map(|&(v, _)| v).collect()
    }

    /// gcd of all terms; for the one-term partition `[m]` this is m.
    pub fn gcd_terms(&self) -> u64 {
        self.normal_form.iter().fold(0, |acc, &(v, _)| gcd(acc, v as u64))
    }

    /// lcm of all terms; over an empty term list this is 1.
    pub fn lcm_terms(&self) -> u64 {
        self.normal_form.iter().fold(1, |acc, &(v, _)| lcm(acc, v as u64))
    }
}

impl fmt::Display for Partition {
    /// Normal-form notation, e.g. `[1,2^2,3^2]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, &(v, t)) in self.normal_form.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if t == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{t}")?;
            }
        }
        write!(f, "]")
    }
}

/// Default cap on explicit group closures.
pub const GROUP_CAP: usize = 1_000_000;

/// A subgroup of S_m held as its full, canonically sorted element list.
///
/// No stabilizer chains here: the crate works at a scale where explicit
/// enumeration is the simplest correct tool.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
}

impl PermGroup {
    /// Closure of the generators under composition, sorted lexicographically
    /// on image arrays. Deterministic.
    pub fn generate(degree: usize, gens: &[Perm], cap: usize) -> Result<PermGroup> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
            }
        }
        let mut seen = std::collections::HashSet::new();
        let id = Perm::identity(degree);
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = g.compose(&x)?;
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    frontier.push(y);
                }
            }
        }
        let mut elements: Vec<Perm> = seen.into_iter().collect();
        elements.sort();
        Ok(PermGroup { degree, generators: gens.to_vec(), elements })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup {
            degree,
            generators: Vec::new(),
            elements: vec![Perm::identity(degree)],
        }
    }

    /// Wraps an element list that is already known to be closed (such as an
    /// automorphism set), sorting it and extracting a small generating set
    /// greedily. Closure is not re-verified.
    pub(crate) fn from_sorted_elements(degree: usize, mut elements: Vec<Perm>) -> PermGroup {
        elements.sort();
        elements.dedup();
        let mut generators: Vec<Perm> = Vec::new();
        let mut closure: std::collections::HashSet<Perm> =
            std::iter::once(Perm::identity(degree)).collect();
        for e in &elements {
            if closure.contains(e) {
                continue;
            }
            generators.push(e.clone());
            let regen = PermGroup::generate(degree, &generators, elements.len())
                .expect("closed input cannot exceed its own size");
            closure = regen.elements.into_iter().collect();
        }
        PermGroup { degree, generators, elements }
    }

    /// The full symmetric group S_m.
    pub fn symmetric(degree: usize) -> Result<PermGroup> {
        if degree <= 1 {
            return Ok(PermGroup::trivial(degree));
        }
        let transposition = {
            let mut im: Vec<usize> = (0..degree).collect();
            im.swap(0, 1);
            Perm::from_images(im)?
        };
        let cycle = {
            let mut im: Vec<usize> = (1..degree).collect();
            im.push(0);
            Perm::from_images(im)?
        };
        PermGroup::generate(degree, &[transposition, cycle], GROUP_CAP)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// All elements in canonical (lexicographic) order.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|e| other.contains(e))
    }

    /// The type number: lcm over elements of the gcd of their cycle type.
    /// Divides the degree; 1 for the trivial group.
    pub fn type_number(&self) -> u64 {
        self.elements
            .iter()
            .map(|e| e.cycle_type().gcd_terms())
            .fold(1, lcm)
    }

    /// JSON form `{degree, generators, order}` with cycle-notation
    /// generator strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "degree": self.degree,
            "generators": self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "order": self.order(),
        })
    }
}
