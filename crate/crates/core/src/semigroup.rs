//! The path semigroup with zero and its congruences.
//!
//! Elements are indexed `0..n`: index 0 is the zero element and index
//! `i + 1` is the `i`-th path of [`Quiver::enumerate_paths`]. Congruences are
//! stored as canonical block labels, so two congruences are equal exactly
//! when their label vectors are.

use std::collections::{HashSet, VecDeque};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::quiver::{Path, Quiver};

/// Default cap on the number of semigroup elements accepted by the
/// enumerators.
pub const DEFAULT_MAX_ELEMENTS: usize = 20;

/// Largest semigroup the partition brute force will run on.
pub const BRUTE_FORCE_MAX_ELEMENTS: usize = 10;

pub const ZERO: usize = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemigroupElement<'a> {
    Zero,
    Path(&'a Path),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSemigroup {
    quiver: Quiver,
    paths: Vec<Path>,
    names: Vec<String>,
    table: Vec<usize>,
}

impl PathSemigroup {
    /// Builds the full multiplication table. Trivial paths act as local
    /// identities; a product whose endpoints do not meet is zero.
    pub fn new(quiver: &Quiver) -> Result<Self> {
        let paths = quiver.enumerate_paths()?;
        let n = paths.len() + 1;
        let index: std::collections::HashMap<&Path, usize> =
            paths.iter().enumerate().map(|(i, p)| (p, i + 1)).collect();
        let mut table = vec![ZERO; n * n];
        for (i, p) in paths.iter().enumerate() {
            for (j, r) in paths.iter().enumerate() {
                if let Some(prod) = p.compose(r) {
                    table[(i + 1) * n + j + 1] = index[&prod];
                }
            }
        }
        let mut names = vec!["0".to_string()];
        names.extend(paths.iter().map(|p| p.name(quiver)));
        Ok(PathSemigroup {
            quiver: quiver.clone(),
            paths,
            names,
            table,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    /// Number of elements, zero included.
    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn element(&self, x: usize) -> SemigroupElement<'_> {
        if x == ZERO {
            SemigroupElement::Zero
        } else {
            SemigroupElement::Path(&self.paths[x - 1])
        }
    }

    /// The path behind a nonzero element.
    pub fn path(&self, x: usize) -> Option<&Path> {
        x.checked_sub(1).map(|i| &self.paths[i])
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size() + y]
    }

    /// Path length; `None` for zero.
    pub fn length(&self, x: usize) -> Option<usize> {
        self.path(x).map(Path::len)
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.size()).filter(|&x| self.mul(x, x) == x).collect()
    }

    /// First triple violating associativity, if any.
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.size();
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Identity relation `1_S`.
    pub fn identity_congruence(&self) -> Congruence {
        Congruence {
            labels: (0..self.size() as u32).collect(),
        }
    }

    /// Universal relation `S × S`.
    pub fn universal_congruence(&self) -> Congruence {
        Congruence {
            labels: vec![0; self.size()],
        }
    }

    /// Rees congruence collapsing `ideal ∪ {0}` to a single class.
    pub fn rees_congruence(&self, ideal: &[usize]) -> Congruence {
        let mut uf = UnionFind::new(self.size());
        for &x in ideal {
            uf.union(ZERO, x);
        }
        uf.into_congruence()
    }

    /// True iff `c` is compatible with multiplication on both sides.
    pub fn is_compatible(&self, c: &Congruence) -> bool {
        self.compatibility_violation(c).is_none()
    }

    fn compatibility_violation(&self, c: &Congruence) -> Option<(usize, usize)> {
        let n = self.size();
        let reps = c.representatives();
        for x in 0..n {
            let r = reps[c.labels[x] as usize];
            if r == x {
                continue;
            }
            for a in 0..n {
                if c.labels[self.mul(a, x)] != c.labels[self.mul(a, r)]
                    || c.labels[self.mul(x, a)] != c.labels[self.mul(r, a)]
                {
                    return Some((x, r));
                }
            }
        }
        None
    }

    /// Least congruence containing `(x, y)`: the equivalence generated by
    /// all pairs `(a x b, a y b)` with `a, b` ranging over `S` and the
    /// empty multiplier.
    pub fn principal_congruence(&self, x: usize, y: usize) -> Congruence {
        let n = self.size();
        let mut uf = UnionFind::new(n);
        // `n` stands for the adjoined identity.
        let lmul = |a: usize, z: usize| if a == n { z } else { self.mul(a, z) };
        let rmul = |z: usize, b: usize| if b == n { z } else { self.mul(z, b) };
        for a in 0..=n {
            let (ax, ay) = (lmul(a, x), lmul(a, y));
            for b in 0..=n {
                uf.union(rmul(ax, b), rmul(ay, b));
            }
        }
        uf.into_congruence()
    }

    pub fn meet_congruences(&self, a: &Congruence, b: &Congruence) -> Result<Congruence> {
        self.check_operands(a, b)?;
        let mut seen = std::collections::HashMap::new();
        let labels = a
            .labels
            .iter()
            .zip(&b.labels)
            .map(|pair| {
                let next = seen.len() as u32;
                *seen.entry(pair).or_insert(next)
            })
            .collect();
        Ok(Congruence { labels })
    }

    /// Least congruence containing both. The equivalence closure of the
    /// union of two congruences is already compatible; the check below
    /// falls back to an explicit closure if that ever fails.
    pub fn join_congruences(&self, a: &Congruence, b: &Congruence) -> Result<Congruence> {
        self.check_operands(a, b)?;
        let mut uf = UnionFind::new(self.size());
        for c in [a, b] {
            let reps = c.representatives();
            for (x, &l) in c.labels.iter().enumerate() {
                uf.union(x, reps[l as usize]);
            }
        }
        let joined = uf.into_congruence();
        if self.is_compatible(&joined) {
            Ok(joined)
        } else {
            debug_assert!(false, "union of two congruences was not compatible");
            Ok(self.compatible_closure(joined))
        }
    }

    fn compatible_closure(&self, mut c: Congruence) -> Congruence {
        while let Some((x, y)) = self.compatibility_violation(&c) {
            let mut uf = UnionFind::from_congruence(&c);
            for a in 0..self.size() {
                uf.union(self.mul(a, x), self.mul(a, y));
                uf.union(self.mul(x, a), self.mul(y, a));
            }
            c = uf.into_congruence();
        }
        c
    }

    fn check_operands(&self, a: &Congruence, b: &Congruence) -> Result<()> {
        if a.labels.len() != self.size() || b.labels.len() != self.size() {
            return Err(Error::Mismatch("semigroups"));
        }
        Ok(())
    }

    fn check_cap(&self, cap: usize) -> Result<()> {
        if self.size() > cap {
            return Err(Error::CapExceeded {
                what: "path semigroup",
                size: self.size(),
                cap,
            });
        }
        Ok(())
    }

    /// Every congruence, by breadth-first join-closure of the principal
    /// congruences starting from `1_S`. Sorted finest first, so the first
    /// entry is `1_S` and the last is `S × S`.
    pub fn enumerate_congruences(&self, max_elements: usize) -> Result<Vec<Congruence>> {
        self.check_cap(max_elements)?;
        let n = self.size();
        let mut principals: Vec<Congruence> = Vec::new();
        let mut seen_principal = HashSet::new();
        for x in 0..n {
            for y in x + 1..n {
                let p = self.principal_congruence(x, y);
                if seen_principal.insert(p.clone()) {
                    principals.push(p);
                }
            }
        }
        let identity = self.identity_congruence();
        let mut found: HashSet<Congruence> = HashSet::from([identity.clone()]);
        let mut queue = VecDeque::from([identity]);
        while let Some(c) = queue.pop_front() {
            for p in &principals {
                if p.is_finer_than(&c) {
                    continue;
                }
                let j = self.join_congruences(&c, p)?;
                if !found.contains(&j) {
                    found.insert(j.clone());
                    queue.push_back(j);
                }
            }
        }
        let mut out: Vec<Congruence> = found.into_iter().collect();
        sort_congruences(&mut out);
        Ok(out)
    }

    /// Independent oracle: every set partition of the element set, filtered
    /// by the compatibility condition.
    pub fn enumerate_congruences_bruteforce(&self) -> Result<Vec<Congruence>> {
        self.check_cap(BRUTE_FORCE_MAX_ELEMENTS)?;
        let mut out = Vec::new();
        for labels in SetPartitions::new(self.size()) {
            let c = Congruence { labels };
            if self.is_compatible(&c) {
                out.push(c);
            }
        }
        sort_congruences(&mut out);
        Ok(out)
    }

    pub fn congruence_to_json(&self, c: &Congruence) -> Value {
        let blocks: Vec<Vec<&str>> = c
            .blocks()
            .iter()
            .map(|b| b.iter().map(|&x| self.name(x)).collect())
            .collect();
        json!({ "blocks": blocks })
    }

    /// Compact text form: non-singleton blocks, e.g. `{0,alpha}{1,2}`.
    pub fn describe_congruence(&self, c: &Congruence) -> String {
        let parts: Vec<String> = c
            .blocks()
            .iter()
            .filter(|b| b.len() > 1)
            .map(|b| {
                let names: Vec<&str> = b.iter().map(|&x| self.name(x)).collect();
                format!("{{{}}}", names.join(","))
            })
            .collect();
        if parts.is_empty() {
            "1_S".to_string()
        } else {
            parts.concat()
        }
    }
}

fn sort_congruences(cs: &mut [Congruence]) {
    cs.sort_by(|a, b| {
        b.num_blocks()
            .cmp(&a.num_blocks())
            .then_with(|| a.labels.cmp(&b.labels))
    });
}

/// A partition of the semigroup's elements. `labels[x]` is the block number
/// of `x`, with blocks numbered by their least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    labels: Vec<u32>,
}

impl Congruence {
    /// Canonicalizes arbitrary block labels.
    pub fn from_labels<T: Copy + Eq + std::hash::Hash>(raw: &[T]) -> Self {
        let mut seen = std::collections::HashMap::new();
        let labels = raw
            .iter()
            .map(|l| {
                let next = seen.len() as u32;
                *seen.entry(*l).or_insert(next)
            })
            .collect();
        Congruence { labels }
    }

    /// Builds a partition from explicit blocks; unlisted elements become
    /// singletons. Returns `None` if blocks overlap or go out of range.
    pub fn from_blocks(size: usize, blocks: &[Vec<usize>]) -> Option<Self> {
        let mut raw: Vec<usize> = (0..size).collect();
        let mut used = vec![false; size];
        for b in blocks {
            let first = *b.first()?;
            for &x in b {
                if x >= size || used[x] {
                    return None;
                }
                used[x] = true;
                raw[x] = first;
            }
        }
        Some(Self::from_labels(&raw))
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.labels.iter().max().map_or(0, |&m| m as usize + 1)
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.labels[x] == self.labels[y]
    }

    /// Least element of each block.
    fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.num_blocks()];
        for (x, &l) in self.labels.iter().enumerate() {
            if reps[l as usize] == usize::MAX {
                reps[l as usize] = x;
            }
        }
        reps
    }

    /// Blocks sorted by least element, each block sorted.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (x, &l) in self.labels.iter().enumerate() {
            blocks[l as usize].push(x);
        }
        blocks
    }

    /// The class of zero, `0ρ`.
    pub fn zero_block(&self) -> Vec<usize> {
        (0..self.size()).filter(|&x| self.related(x, ZERO)).collect()
    }

    /// Inclusion of relations: every pair related here is related in `other`.
    pub fn is_finer_than(&self, other: &Congruence) -> bool {
        let mut image = vec![u32::MAX; self.num_blocks()];
        for (x, &l) in self.labels.iter().enumerate() {
            let slot = &mut image[l as usize];
            if *slot == u32::MAX {
                *slot = other.labels[x];
            } else if *slot != other.labels[x] {
                return false;
            }
        }
        true
    }

    /// Rees congruences are those whose only non-singleton class is `0ρ`.
    pub fn is_rees(&self) -> bool {
        let mut sizes = vec![0usize; self.num_blocks()];
        for &l in &self.labels {
            sizes[l as usize] += 1;
        }
        let zero = self.labels[ZERO] as usize;
        sizes.iter().enumerate().all(|(b, &s)| b == zero || s == 1)
    }

    /// Unordered related pairs `(x, y)` with `x < y`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.size();
        (0..n).flat_map(move |x| (x + 1..n).filter(move |&y| self.related(x, y)).map(move |y| (x, y)))
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn from_congruence(c: &Congruence) -> Self {
        let mut uf = Self::new(c.size());
        let reps = c.representatives();
        for (x, &l) in c.labels.iter().enumerate() {
            uf.union(x, reps[l as usize]);
        }
        uf
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, x: usize, y: usize) {
        let (a, b) = (self.find(x), self.find(y));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }

    pub(crate) fn into_congruence(mut self) -> Congruence {
        let roots: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Congruence::from_labels(&roots)
    }
}

/// Restricted growth strings of length `n`, i.e. all set partitions of
/// `0..n` in canonical label form.
struct SetPartitions {
    current: Option<Vec<u32>>,
}

impl SetPartitions {
    fn new(n: usize) -> Self {
        SetPartitions {
            current: Some(vec![0; n]),
        }
    }
}

impl Iterator for SetPartitions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        // prefix maxima
        let mut maxima = vec![0u32; next.len()];
        for i in 1..next.len() {
            maxima[i] = maxima[i - 1].max(next[i - 1]);
        }
        for i in (1..next.len()).rev() {
            if next[i] <= maxima[i] {
                next[i] += 1;
                for slot in &mut next[i + 1..] {
                    *slot = 0;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}
