//! Explicit finite lattices: materialized order, join and meet tables, the
//! cover relation, and the law-based property predicates.
//!
//! Every predicate that fails reports a witness: a triple for the
//! distributive and modular laws, a pair for the four semimodularity
//! conditions, and a five-element sublattice for pentagon/diamond search.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::hash::Hash;

use fixedbitset::FixedBitSet;
use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct FiniteLattice {
    labels: Vec<String>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    join: Vec<usize>,
    meet: Vec<usize>,
    cover: Vec<FixedBitSet>,
    covers: Vec<(usize, usize)>,
    bottom: usize,
    top: usize,
}

/// The six lattice conditions decided by [`FiniteLattice::properties`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeProperties {
    pub distributive: bool,
    pub modular: bool,
    pub strong_upper_semimodular: bool,
    pub strong_lower_semimodular: bool,
    pub upper_semimodular: bool,
    pub lower_semimodular: bool,
}

impl LatticeProperties {
    pub fn to_json(&self) -> Value {
        json!({
            "distributive": self.distributive,
            "modular": self.modular,
            "strong_upper_semimodular": self.strong_upper_semimodular,
            "strong_lower_semimodular": self.strong_lower_semimodular,
            "upper_semimodular": self.upper_semimodular,
            "lower_semimodular": self.lower_semimodular,
        })
    }

    /// `(name, value)` pairs in a fixed order.
    pub fn entries(&self) -> [(&'static str, bool); 6] {
        [
            ("distributive", self.distributive),
            ("modular", self.modular),
            ("strong_upper_semimodular", self.strong_upper_semimodular),
            ("strong_lower_semimodular", self.strong_lower_semimodular),
            ("upper_semimodular", self.upper_semimodular),
            ("lower_semimodular", self.lower_semimodular),
        ]
    }
}

/// Pentagon `N₅` as `[bottom, low, high, side, top]` with
/// `bottom < low < high < top` and `bottom < side < top`.
pub type Pentagon = [usize; 5];

/// Diamond `M₃` as `[bottom, x, y, z, top]`.
pub type Diamond = [usize; 5];

// order patterns on positions 0..5: PATTERN[i][j] == (i <= j)
const N5_ORDER: [[bool; 5]; 5] = [
    [true, true, true, true, true],
    [false, true, true, false, true],
    [false, false, true, false, true],
    [false, false, false, true, true],
    [false, false, false, false, true],
];

const M3_ORDER: [[bool; 5]; 5] = [
    [true, true, true, true, true],
    [false, true, false, false, true],
    [false, false, true, false, true],
    [false, false, false, true, true],
    [false, false, false, false, true],
];

fn violation(msg: String) -> Error {
    Error::Lattice(msg)
}

impl FiniteLattice {
    /// Materializes and validates a lattice over `elements`.
    ///
    /// Fails with a witness if the supplied order is not a partial order, if
    /// a join or meet leaves the element set, or if a join (meet) is not the
    /// least upper (greatest lower) bound under `leq`.
    pub fn build<T, L, J, M>(elements: &[T], labels: Vec<String>, leq: L, join: J, meet: M) -> Result<Self>
    where
        T: Eq + Hash,
        L: Fn(&T, &T) -> bool,
        J: Fn(&T, &T) -> Result<T>,
        M: Fn(&T, &T) -> Result<T>,
    {
        let n = elements.len();
        assert_eq!(labels.len(), n, "one label per element");
        if n == 0 {
            return Err(violation("a lattice needs at least one element".into()));
        }
        let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        if index.len() != n {
            return Err(violation("duplicate elements".into()));
        }
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (a, ea) in elements.iter().enumerate() {
            for (b, eb) in elements.iter().enumerate() {
                if leq(ea, eb) {
                    up[a].insert(b);
                    down[b].insert(a);
                }
            }
        }
        for a in 0..n {
            if !up[a].contains(a) {
                return Err(violation(format!("order is not reflexive at {}", labels[a])));
            }
            for b in up[a].ones() {
                if b != a && up[b].contains(a) {
                    return Err(violation(format!(
                        "order is not antisymmetric on ({}, {})",
                        labels[a], labels[b]
                    )));
                }
                if !up[b].is_subset(&up[a]) {
                    let c = up[b].difference(&up[a]).next().unwrap();
                    return Err(violation(format!(
                        "order is not transitive on ({}, {}, {})",
                        labels[a], labels[b], labels[c]
                    )));
                }
            }
        }

        let lookup = |e: T, what: &str, a: usize, b: usize| {
            index.get(&e).copied().ok_or_else(|| {
                violation(format!("{what} of ({}, {}) is not an element", labels[a], labels[b]))
            })
        };
        let mut join_t = vec![0; n * n];
        let mut meet_t = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let j = lookup(join(&elements[a], &elements[b])?, "join", a, b)?;
                let m = lookup(meet(&elements[a], &elements[b])?, "meet", a, b)?;
                // the upper set of the join is exactly the common upper bounds
                let mut common = up[a].clone();
                common.intersect_with(&up[b]);
                if common != up[j] {
                    return Err(violation(format!(
                        "join of ({}, {}) is not the least upper bound",
                        labels[a], labels[b]
                    )));
                }
                let mut common = down[a].clone();
                common.intersect_with(&down[b]);
                if common != down[m] {
                    return Err(violation(format!(
                        "meet of ({}, {}) is not the greatest lower bound",
                        labels[a], labels[b]
                    )));
                }
                join_t[a * n + b] = j;
                meet_t[a * n + b] = m;
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = a * n + b;
                if meet_t[a * n + join_t[ab]] != a || join_t[a * n + meet_t[ab]] != a {
                    return Err(violation(format!(
                        "absorption fails on ({}, {})",
                        labels[a], labels[b]
                    )));
                }
            }
        }
        let bottom = (0..n).find(|&a| up[a].count_ones(..) == n).ok_or_else(|| violation("no bottom element".into()))?;
        let top = (0..n).find(|&a| down[a].count_ones(..) == n).ok_or_else(|| violation("no top element".into()))?;

        // a ≺ b iff the interval [a, b] is exactly {a, b}
        let mut cover = vec![FixedBitSet::with_capacity(n); n];
        let mut covers = Vec::new();
        for a in 0..n {
            for b in up[a].ones() {
                if b == a {
                    continue;
                }
                let mut interval = up[a].clone();
                interval.intersect_with(&down[b]);
                if interval.count_ones(..) == 2 {
                    cover[a].insert(b);
                    covers.push((a, b));
                }
            }
        }
        Ok(FiniteLattice {
            labels,
            up,
            down,
            join: join_t,
            meet: meet_t,
            cover,
            covers,
            bottom,
            top,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    /// `lower ≺ upper`
    #[inline]
    pub fn covers(&self, lower: usize, upper: usize) -> bool {
        self.cover[lower].contains(upper)
    }

    /// Cover pairs `(lower, upper)`, sorted.
    pub fn cover_pairs(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Elements strictly between `a` and `b`.
    pub fn strictly_between(&self, a: usize, b: usize) -> Vec<usize> {
        let mut interval = self.up[a].clone();
        interval.intersect_with(&self.down[b]);
        interval.ones().filter(|&c| c != a && c != b).collect()
    }

    /// A triple violating `(a∨b)∧c = (a∧c)∨(b∧c)`.
    pub fn distributive_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for a in 0..n {
            for b in a + 1..n {
                let ab = self.join(a, b);
                for c in 0..n {
                    if self.meet(ab, c) != self.join(self.meet(a, c), self.meet(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// A triple with `a ≤ c` violating `(a∨b)∧c = a∨(b∧c)`.
    pub fn modular_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for a in 0..n {
            for c in self.up[a].ones() {
                for b in 0..n {
                    if self.meet(self.join(a, b), c) != self.join(a, self.meet(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributive_witness().is_none()
    }

    pub fn is_modular(&self) -> bool {
        self.modular_witness().is_none()
    }

    fn pair_witness(&self, violates: impl Fn(usize, usize) -> bool) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| violates(a, b))
    }

    /// `a ≻ a∧b` but not `a∨b ≻ b`.
    pub fn violates_strong_upper(&self, a: usize, b: usize) -> bool {
        self.covers(self.meet(a, b), a) && !self.covers(b, self.join(a, b))
    }

    /// `a∨b ≻ a` but not `b ≻ a∧b`.
    pub fn violates_strong_lower(&self, a: usize, b: usize) -> bool {
        self.covers(a, self.join(a, b)) && !self.covers(self.meet(a, b), b)
    }

    /// `a, b ≻ a∧b` but not `a∨b ≻ a, b`.
    pub fn violates_upper(&self, a: usize, b: usize) -> bool {
        let (m, j) = (self.meet(a, b), self.join(a, b));
        self.covers(m, a) && self.covers(m, b) && !(self.covers(a, j) && self.covers(b, j))
    }

    /// `a∨b ≻ a, b` but not `a, b ≻ a∧b`.
    pub fn violates_lower(&self, a: usize, b: usize) -> bool {
        let (m, j) = (self.meet(a, b), self.join(a, b));
        self.covers(a, j) && self.covers(b, j) && !(self.covers(m, a) && self.covers(m, b))
    }

    pub fn strong_upper_semimodular_witness(&self) -> Option<(usize, usize)> {
        self.pair_witness(|a, b| self.violates_strong_upper(a, b))
    }

    pub fn strong_lower_semimodular_witness(&self) -> Option<(usize, usize)> {
        self.pair_witness(|a, b| self.violates_strong_lower(a, b))
    }

    pub fn upper_semimodular_witness(&self) -> Option<(usize, usize)> {
        self.pair_witness(|a, b| self.violates_upper(a, b))
    }

    pub fn lower_semimodular_witness(&self) -> Option<(usize, usize)> {
        self.pair_witness(|a, b| self.violates_lower(a, b))
    }

    pub fn is_strong_upper_semimodular(&self) -> bool {
        self.strong_upper_semimodular_witness().is_none()
    }

    pub fn is_strong_lower_semimodular(&self) -> bool {
        self.strong_lower_semimodular_witness().is_none()
    }

    pub fn is_upper_semimodular(&self) -> bool {
        self.upper_semimodular_witness().is_none()
    }

    pub fn is_lower_semimodular(&self) -> bool {
        self.lower_semimodular_witness().is_none()
    }

    pub fn properties(&self) -> LatticeProperties {
        LatticeProperties {
            distributive: self.is_distributive(),
            modular: self.is_modular(),
            strong_upper_semimodular: self.is_strong_upper_semimodular(),
            strong_lower_semimodular: self.is_strong_lower_semimodular(),
            upper_semimodular: self.is_upper_semimodular(),
            lower_semimodular: self.is_lower_semimodular(),
        }
    }

    /// Checks that the five elements form a sublattice whose order matches
    /// `pattern` position by position.
    fn is_sublattice_like(&self, elems: &[usize; 5], pattern: &[[bool; 5]; 5]) -> bool {
        for i in 0..5 {
            for j in 0..5 {
                if i != j && elems[i] == elems[j] {
                    return false;
                }
                if self.leq(elems[i], elems[j]) != pattern[i][j] {
                    return false;
                }
            }
        }
        // order agrees, so each join/meet must land on the pattern's
        let position = |x: usize| elems.iter().position(|&e| e == x);
        for i in 0..5 {
            for j in 0..5 {
                let (Some(pj), Some(pm)) = (
                    position(self.join(elems[i], elems[j])),
                    position(self.meet(elems[i], elems[j])),
                ) else {
                    return false;
                };
                let upper_bound = |k: usize| pattern[i][k] && pattern[j][k];
                let lower_bound = |k: usize| pattern[k][i] && pattern[k][j];
                if !upper_bound(pj) || (0..5).any(|k| upper_bound(k) && !pattern[pj][k]) {
                    return false;
                }
                if !lower_bound(pm) || (0..5).any(|k| lower_bound(k) && !pattern[k][pm]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_pentagon(&self, p: &Pentagon) -> bool {
        self.is_sublattice_like(p, &N5_ORDER)
    }

    pub fn is_diamond(&self, d: &Diamond) -> bool {
        self.is_sublattice_like(d, &M3_ORDER)
    }

    /// A pentagon, extracted from a modular-law violation when there is one
    /// and found by exhaustive search otherwise.
    ///
    /// For `a ≤ c` violating the law, `x = a∨(b∧c) < y = (a∨b)∧c` and
    /// `{b∧c, x, y, b, a∨b}` is a pentagon.
    pub fn find_pentagon(&self) -> Option<Pentagon> {
        if let Some((a, b, c)) = self.modular_witness() {
            let low = self.join(a, self.meet(b, c));
            let high = self.meet(self.join(a, b), c);
            let p = [self.meet(b, c), low, high, b, self.join(a, b)];
            if self.is_pentagon(&p) {
                return Some(p);
            }
        }
        self.find_pentagon_exhaustive()
    }

    /// Complete search: a pentagon is a chain `x < y` and an element `b`
    /// incomparable to both with `b∧x = b∧y` and `b∨x = b∨y`.
    pub fn find_pentagon_exhaustive(&self) -> Option<Pentagon> {
        let n = self.len();
        for x in 0..n {
            for y in self.up[x].ones() {
                if y == x {
                    continue;
                }
                for b in 0..n {
                    if self.comparable(b, x) || self.comparable(b, y) {
                        continue;
                    }
                    if self.meet(b, x) == self.meet(b, y) && self.join(b, x) == self.join(b, y) {
                        let p = [self.meet(b, x), x, y, b, self.join(b, x)];
                        debug_assert!(self.is_pentagon(&p));
                        return Some(p);
                    }
                }
            }
        }
        None
    }

    /// A diamond. In a modular lattice a distributive-law violation `(a,b,c)`
    /// yields one: with `d` the join of the pairwise meets and `u` the meet
    /// of the pairwise joins, `{d, (a∧u)∨d, (b∧u)∨d, (c∧u)∨d, u}`.
    /// Otherwise falls back to exhaustive search.
    pub fn find_diamond(&self) -> Option<Diamond> {
        if let Some((a, b, c)) = self.distributive_witness() {
            let d = self.join(self.join(self.meet(a, b), self.meet(b, c)), self.meet(c, a));
            let u = self.meet(self.meet(self.join(a, b), self.join(b, c)), self.join(c, a));
            let lift = |x: usize| self.join(self.meet(x, u), d);
            let cand = [d, lift(a), lift(b), lift(c), u];
            if self.is_diamond(&cand) {
                return Some(cand);
            }
        }
        self.find_diamond_exhaustive()
    }

    /// Complete search over pairwise-incomparable triples sharing a common
    /// pairwise meet and join.
    pub fn find_diamond_exhaustive(&self) -> Option<Diamond> {
        let n = self.len();
        for x in 0..n {
            for y in x + 1..n {
                if self.comparable(x, y) {
                    continue;
                }
                let (o, i) = (self.meet(x, y), self.join(x, y));
                for z in y + 1..n {
                    if self.meet(x, z) == o
                        && self.meet(y, z) == o
                        && self.join(x, z) == i
                        && self.join(y, z) == i
                        && !self.comparable(x, z)
                        && !self.comparable(y, z)
                    {
                        let d = [o, x, y, z, i];
                        debug_assert!(self.is_diamond(&d));
                        return Some(d);
                    }
                }
            }
        }
        None
    }

    /// Hasse diagram in DOT, edges drawn from lower to upper element.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, label) in self.labels.iter().enumerate() {
            let escaped = label.replace('\\', "\\\\").replace('"', "\\\"");
            let _ = writeln!(out, "  n{i} [label=\"{escaped}\"];");
        }
        for &(a, b) in &self.covers {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        let covers: Vec<[usize; 2]> = self.covers.iter().map(|&(a, b)| [a, b]).collect();
        json!({
            "elements": self.labels,
            "covers": covers,
            "properties": self.properties().to_json(),
        })
    }
}
