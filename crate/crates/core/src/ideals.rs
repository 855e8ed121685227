//! Relations of the path algebra, the special ideals they generate, and the
//! correspondence between special ideals and congruences on the path
//! semigroup.
//!
//! A congruence `ρ` maps to the ideal generated by `α` for every `α` in the
//! zero class and by `α − β` for every other related pair. An ideal `I`
//! maps back to `{(x, y) : x − y ∈ I}`, with zero read as the zero vector.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::hash::{Hash, Hasher};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{row_reduce, subspace_intersection, subspace_sum, PathVector, Subspace};
use crate::semigroup::{Congruence, PathSemigroup, UnionFind, ZERO};

/// A monomial relation `α` or a commutative relation `α − β`, by path index.
/// In a commutative relation the lesser path comes first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Monomial(usize),
    Commutative(usize, usize),
}

impl Relation {
    /// `α − β` in canonical order. The paths must be distinct and parallel.
    pub fn commutative(s: &PathSemigroup, a: usize, b: usize) -> Result<Self> {
        let r = Relation::Commutative(a.min(b), a.max(b));
        r.validate(s)?;
        Ok(r)
    }

    pub fn validate(&self, s: &PathSemigroup) -> Result<()> {
        let paths = s.paths();
        match *self {
            Relation::Monomial(a) if a < paths.len() => Ok(()),
            Relation::Commutative(a, b) if a < b && b < paths.len() => {
                let (p, q) = (&paths[a], &paths[b]);
                if p.source == q.source && p.target == q.target {
                    Ok(())
                } else {
                    Err(Error::InvalidRelation(format!(
                        "{} and {} are not parallel",
                        p.name(s.quiver()),
                        q.name(s.quiver())
                    )))
                }
            }
            _ => Err(Error::InvalidRelation(format!("{self:?}"))),
        }
    }

    pub fn vector(&self) -> PathVector {
        match *self {
            Relation::Monomial(a) => PathVector::unit(a),
            Relation::Commutative(a, b) => PathVector::from_ints(&[(a, 1), (b, -1)]),
        }
    }

    /// `"alpha"` or `"alpha - beta"`.
    pub fn name(&self, s: &PathSemigroup) -> String {
        let path = |i: usize| s.name(i + 1);
        match *self {
            Relation::Monomial(a) => path(a).to_string(),
            Relation::Commutative(a, b) => format!("{} - {}", path(a), path(b)),
        }
    }

    /// `u · self · v` for semigroup elements `u`, `v`; `None` when zero.
    fn multiply(&self, s: &PathSemigroup, u: usize, v: usize) -> Option<Relation> {
        let side = |a: usize| s.mul(s.mul(u, a + 1), v).checked_sub(1);
        match *self {
            Relation::Monomial(a) => side(a).map(Relation::Monomial),
            Relation::Commutative(a, b) => {
                // parallel paths vanish together
                let (x, y) = (side(a)?, side(b)?);
                Some(Relation::Commutative(x.min(y), x.max(y)))
            }
        }
    }
}

/// A special ideal: its generating relations and the ideal itself as a
/// subspace. Equality and hashing look only at the subspace.
#[derive(Debug, Clone)]
pub struct SpecialIdeal {
    generators: BTreeSet<Relation>,
    space: Subspace,
}

impl PartialEq for SpecialIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space
    }
}

impl Eq for SpecialIdeal {}

impl Hash for SpecialIdeal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.space.hash(state);
    }
}

impl SpecialIdeal {
    pub fn generators(&self) -> &BTreeSet<Relation> {
        &self.generators
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, v: &PathVector) -> bool {
        self.space.contains(v)
    }

    pub fn contains_ideal(&self, other: &SpecialIdeal) -> bool {
        self.space.contains_subspace(&other.space)
    }
}

/// The path algebra of an acyclic quiver together with its path semigroup
/// and the full list of relations.
#[derive(Debug, Clone)]
pub struct PathAlgebra {
    semigroup: PathSemigroup,
    relations: Vec<Relation>,
}

impl PathAlgebra {
    pub fn new(semigroup: PathSemigroup) -> Self {
        let relations = all_relations(&semigroup);
        PathAlgebra { semigroup, relations }
    }

    pub fn semigroup(&self) -> &PathSemigroup {
        &self.semigroup
    }

    /// Dimension of the algebra, i.e. the number of paths.
    pub fn dim(&self) -> usize {
        self.semigroup.paths().len()
    }

    /// All monomial relations, then all commutative relations.
    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Display names of the basis paths, indexed like [`PathVector`]
    /// coordinates.
    pub fn path_names(&self) -> &[String] {
        &self.semigroup.names()[1..]
    }

    pub fn zero_ideal(&self) -> SpecialIdeal {
        SpecialIdeal {
            generators: BTreeSet::new(),
            space: Subspace::zero(self.dim()),
        }
    }

    /// The whole algebra, generated by the trivial paths.
    pub fn full_ideal(&self) -> SpecialIdeal {
        let n = self.semigroup.quiver().vertices().len();
        SpecialIdeal {
            generators: (0..n).map(Relation::Monomial).collect(),
            space: Subspace::full(self.dim()),
        }
    }

    /// The ideal generated by `gens`: the span of every nonzero `u·g·v`
    /// with `u`, `v` paths (trivial ones included).
    pub fn generate_ideal<I>(&self, gens: I) -> Result<SpecialIdeal>
    where
        I: IntoIterator<Item = Relation>,
    {
        let s = &self.semigroup;
        let generators: BTreeSet<Relation> = gens.into_iter().collect();
        let mut multiples = BTreeSet::new();
        for g in &generators {
            g.validate(s)?;
            for u in 1..s.size() {
                for v in 1..s.size() {
                    if let Some(r) = g.multiply(s, u, v) {
                        multiples.insert(r);
                    }
                }
            }
        }
        let space = row_reduce(multiples.iter().map(Relation::vector), self.dim());
        Ok(SpecialIdeal { generators, space })
    }

    fn check(&self, i: &SpecialIdeal) -> Result<()> {
        if i.space.ambient_dim() != self.dim() {
            return Err(Error::Mismatch("quivers"));
        }
        Ok(())
    }

    /// Sum of ideals; the generating sets are united.
    pub fn ideal_join(&self, a: &SpecialIdeal, b: &SpecialIdeal) -> Result<SpecialIdeal> {
        self.check(a)?;
        self.check(b)?;
        Ok(SpecialIdeal {
            generators: a.generators.union(&b.generators).copied().collect(),
            space: subspace_sum(&a.space, &b.space)?,
        })
    }

    /// The ideal generated by the relations lying in `a ∩ b`. This can be
    /// strictly smaller than the intersection itself.
    pub fn ideal_meet(&self, a: &SpecialIdeal, b: &SpecialIdeal) -> Result<SpecialIdeal> {
        self.check(a)?;
        self.check(b)?;
        let common = subspace_intersection(&a.space, &b.space)?;
        self.generate_ideal(self.relations_in(&common))
    }

    /// Every relation whose vector lies in `space`.
    pub fn relations_in<'a>(&'a self, space: &'a Subspace) -> impl Iterator<Item = Relation> + 'a {
        self.relations.iter().copied().filter(move |r| space.contains(&r.vector()))
    }

    /// All special ideals, by join-closure from the zero ideal and the
    /// single-relation ideals. Sorted by dimension, then by basis.
    pub fn enumerate_special_ideals(&self, max_elements: usize) -> Result<Vec<SpecialIdeal>> {
        let size = self.semigroup.size();
        if size > max_elements {
            return Err(Error::CapExceeded {
                what: "path semigroup",
                size,
                cap: max_elements,
            });
        }
        let seeds: Vec<(Relation, SpecialIdeal)> = self
            .relations
            .iter()
            .map(|&r| Ok((r, self.generate_ideal([r])?)))
            .collect::<Result<_>>()?;
        let zero = self.zero_ideal();
        let mut found: HashSet<SpecialIdeal> = HashSet::from([zero.clone()]);
        let mut queue = VecDeque::from([zero]);
        while let Some(ideal) = queue.pop_front() {
            for (r, seed) in &seeds {
                if ideal.contains(&r.vector()) {
                    continue;
                }
                let j = self.ideal_join(&ideal, seed)?;
                if !found.contains(&j) {
                    found.insert(j.clone());
                    queue.push_back(j);
                }
            }
        }
        let mut out: Vec<SpecialIdeal> = found.into_iter().collect();
        out.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.space.cmp(&b.space)));
        Ok(out)
    }

    /// Ideal of a congruence: monomials for the zero class, commutative
    /// relations for every related pair outside it.
    pub fn congruence_to_ideal(&self, c: &Congruence) -> Result<SpecialIdeal> {
        if c.size() != self.semigroup.size() {
            return Err(Error::Mismatch("semigroups"));
        }
        let mut gens = Vec::new();
        for block in c.blocks() {
            if block[0] == ZERO {
                gens.extend(block[1..].iter().map(|&x| Relation::Monomial(x - 1)));
            } else {
                for (i, &x) in block.iter().enumerate() {
                    for &y in &block[i + 1..] {
                        gens.push(Relation::commutative(&self.semigroup, x - 1, y - 1)?);
                    }
                }
            }
        }
        self.generate_ideal(gens)
    }

    /// Congruence of an ideal: `x ~ y` iff `x − y` lies in the ideal.
    pub fn ideal_to_congruence(&self, i: &SpecialIdeal) -> Result<Congruence> {
        self.check(i)?;
        let s = &self.semigroup;
        let n = s.size();
        let vector = |x: usize| {
            if x == ZERO {
                PathVector::new()
            } else {
                PathVector::unit(x - 1)
            }
        };
        let mut related = vec![false; n * n];
        let mut uf = UnionFind::new(n);
        for x in 0..n {
            for y in x + 1..n {
                if i.contains(&vector(x).sub(&vector(y))) {
                    related[x * n + y] = true;
                    uf.union(x, y);
                }
            }
        }
        let c = uf.into_congruence();
        debug_assert!(
            c.pairs().all(|(x, y)| related[x * n + y]),
            "difference relation is not transitive"
        );
        debug_assert!(s.is_compatible(&c), "ideal congruence is not compatible");
        Ok(c)
    }

    /// Drops generators that the remaining ones already generate, scanning
    /// from the last generator backwards.
    pub fn minimal_generators(&self, i: &SpecialIdeal) -> Vec<Relation> {
        let mut gens: Vec<Relation> = if i.generators.is_empty() {
            self.relations_in(&i.space).collect()
        } else {
            i.generators.iter().copied().collect()
        };
        let mut k = gens.len();
        while k > 0 {
            k -= 1;
            let mut rest = gens.clone();
            rest.remove(k);
            if self
                .generate_ideal(rest.iter().copied())
                .is_ok_and(|j| j.space == i.space)
            {
                gens = rest;
            }
        }
        gens
    }

    /// `<alpha, beta - gamma>`
    pub fn describe_ideal(&self, i: &SpecialIdeal) -> String {
        let gens: Vec<String> = self
            .minimal_generators(i)
            .iter()
            .map(|r| r.name(&self.semigroup))
            .collect();
        format!("<{}>", gens.join(", "))
    }

    /// `span{alpha, beta - gamma}`
    pub fn describe_span(&self, space: &Subspace) -> String {
        let names = self.path_names();
        let vs: Vec<String> = space.basis().iter().map(|v| v.describe(names)).collect();
        format!("span{{{}}}", vs.join(", "))
    }

    pub fn ideal_to_json(&self, i: &SpecialIdeal) -> Value {
        let gens: Vec<String> = self
            .minimal_generators(i)
            .iter()
            .map(|r| r.name(&self.semigroup))
            .collect();
        let basis: Vec<Value> = i
            .space
            .basis()
            .iter()
            .map(|v| v.to_json(self.path_names()))
            .collect();
        json!({ "generators": gens, "basis": basis })
    }
}

/// One monomial relation per path, then one commutative relation per
/// unordered pair of distinct parallel paths.
pub fn all_relations(s: &PathSemigroup) -> Vec<Relation> {
    let paths = s.paths();
    let mut out: Vec<Relation> = (0..paths.len()).map(Relation::Monomial).collect();
    for a in 0..paths.len() {
        for b in a + 1..paths.len() {
            if paths[a].source == paths[b].source && paths[a].target == paths[b].target {
                out.push(Relation::Commutative(a, b));
            }
        }
    }
    out
}
