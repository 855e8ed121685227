//! Exact sparse linear algebra over the path basis.
//!
//! Coordinates are path indices in [`Quiver::enumerate_paths`] order and
//! coefficients are arbitrary-precision rationals. A [`Subspace`] always
//! holds its basis in reduced row-echelon form, which makes structural
//! equality coincide with equality of spans.
//!
//! [`Quiver::enumerate_paths`]: crate::quiver::Quiver::enumerate_paths

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// Sparse vector; zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathVector {
    entries: BTreeMap<usize, BigRational>,
}

impl PathVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(index: usize) -> Self {
        let mut v = Self::new();
        v.entries.insert(index, BigRational::one());
        v
    }

    pub fn from_entries<I: IntoIterator<Item = (usize, BigRational)>>(entries: I) -> Self {
        let mut v = Self::new();
        for (i, c) in entries {
            v.add_at(i, &c);
        }
        v
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_ints(entries: &[(usize, i64)]) -> Self {
        Self::from_entries(entries.iter().map(|&(i, c)| (i, BigRational::from_integer(BigInt::from(c)))))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&BigRational> {
        self.entries.get(&index)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.entries.iter().map(|(&i, c)| (i, c))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Index of the first nonzero coordinate.
    pub fn leading(&self) -> Option<usize> {
        self.entries.keys().next().copied()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    fn add_at(&mut self, index: usize, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.entries.entry(index).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.entries.remove(&index);
        }
    }

    /// `self += factor * other`
    pub fn add_scaled(&mut self, other: &PathVector, factor: &BigRational) {
        if factor.is_zero() {
            return;
        }
        for (&i, c) in &other.entries {
            self.add_at(i, &(c * factor));
        }
    }

    pub fn scale(&mut self, factor: &BigRational) {
        if factor.is_zero() {
            self.entries.clear();
        } else {
            for c in self.entries.values_mut() {
                *c *= factor;
            }
        }
    }

    pub fn sub(&self, other: &PathVector) -> PathVector {
        let mut out = self.clone();
        out.add_scaled(other, &-BigRational::one());
        out
    }

    /// `{"path-name": "num/den", ...}` with names looked up by index.
    pub fn to_json(&self, names: &[String]) -> Value {
        let mut map = Map::new();
        for (&i, c) in &self.entries {
            map.insert(names[i].clone(), Value::String(format!("{}/{}", c.numer(), c.denom())));
        }
        Value::Object(map)
    }

    /// Human-readable linear combination such as `alpha - beta + 2*gamma`.
    pub fn describe(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (&i, c)) in self.entries.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            let abs = c.abs();
            if !abs.is_one() {
                out.push_str(&format!("{abs}*"));
            }
            out.push_str(&names[i]);
        }
        out
    }
}

/// A subspace of an ambient coordinate space, kept in reduced row-echelon
/// form: pivots (leading coordinates) strictly increase, each pivot is 1, and
/// every pivot column is zero in all other basis vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<PathVector>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(PathVector::unit).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[PathVector] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().filter_map(PathVector::leading).collect()
    }

    /// Remainder of `v` after eliminating every pivot coordinate.
    fn reduce(&self, mut v: PathVector) -> PathVector {
        for b in &self.basis {
            let p = b.leading().expect("basis vectors are nonzero");
            if let Some(c) = v.get(p).cloned() {
                v.add_scaled(b, &-c);
            }
        }
        v
    }

    /// Adds `v` to the span, keeping the basis reduced. Returns whether the
    /// dimension grew.
    fn insert(&mut self, v: PathVector) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.leading() else {
            return false;
        };
        let inv = v.get(p).unwrap().recip();
        v.scale(&inv);
        for b in &mut self.basis {
            if let Some(c) = b.get(p).cloned() {
                b.add_scaled(&v, &-c);
            }
        }
        let pos = self.basis.partition_point(|b| b.leading() < Some(p));
        self.basis.insert(pos, v);
        true
    }

    pub fn contains(&self, v: &PathVector) -> bool {
        if v.max_index().is_some_and(|i| i >= self.ambient) {
            return false;
        }
        self.reduce(v.clone()).is_zero()
    }

    /// Coefficients of `v` in terms of the basis, if `v` lies in the span.
    /// In reduced form these are just the pivot coordinates of `v`.
    pub fn coordinates(&self, v: &PathVector) -> Option<Vec<BigRational>> {
        if !self.contains(v) {
            return None;
        }
        Some(
            self.basis
                .iter()
                .map(|b| v.get(b.leading().unwrap()).cloned().unwrap_or_else(BigRational::zero))
                .collect(),
        )
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && other.basis.iter().all(|b| self.contains(b))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }
}

/// Reduced row-echelon basis of the span of `vectors` inside a space of
/// dimension `dim`.
///
/// # Panics
///
/// If a vector has a coordinate `>= dim`.
pub fn row_reduce<I>(vectors: I, dim: usize) -> Subspace
where
    I: IntoIterator<Item = PathVector>,
{
    let mut s = Subspace::zero(dim);
    for v in vectors {
        assert!(
            v.max_index().is_none_or(|i| i < dim),
            "coordinate out of range for dimension {dim}"
        );
        s.insert(v);
    }
    s
}

pub fn membership(s: &Subspace, v: &PathVector) -> bool {
    s.contains(v)
}

pub fn subspace_sum(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.check_ambient(b)?;
    let mut out = a.clone();
    for v in &b.basis {
        out.insert(v.clone());
    }
    Ok(out)
}

/// Intersection by the kernel method: row-reduce the basis vectors of both
/// subspaces augmented with identity coordinates. Rows whose vector part
/// cancels record coefficient vectors `(x, y)` with `Σ xᵢaᵢ = −Σ yⱼbⱼ`, and
/// `Σ xᵢaᵢ` ranges over the intersection.
pub fn subspace_intersection(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.check_ambient(b)?;
    let dim = a.ambient;
    let k = a.dim();
    let m = b.dim();
    let rows = a
        .basis
        .iter()
        .chain(&b.basis)
        .enumerate()
        .map(|(i, v)| {
            let mut row = v.clone();
            row.add_at(dim + i, &BigRational::one());
            row
        });
    let augmented = row_reduce(rows, dim + k + m);
    let mut out = Subspace::zero(dim);
    for row in augmented.basis {
        if row.leading().unwrap() < dim {
            continue;
        }
        let mut w = PathVector::new();
        for (j, c) in row.iter() {
            if j < dim + k {
                w.add_scaled(&a.basis[j - dim], c);
            }
        }
        out.insert(w);
    }
    Ok(out)
}
