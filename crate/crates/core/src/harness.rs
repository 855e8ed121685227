//! Predictions from quiver shape, and the harness that checks them against
//! the lattices computed along both routes (congruences and special ideals).

use std::collections::HashMap;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::Result;
use crate::ideals::{PathAlgebra, SpecialIdeal};
use crate::lattice::{FiniteLattice, LatticeProperties};
use crate::linalg::{row_reduce, subspace_sum};
use crate::quiver::Quiver;
use crate::semigroup::{Congruence, PathSemigroup};

/// Congruence lattice ordered by inclusion of relations.
pub fn congruence_lattice(s: &PathSemigroup, congruences: &[Congruence]) -> Result<FiniteLattice> {
    FiniteLattice::build(
        congruences,
        congruences.iter().map(|c| s.describe_congruence(c)).collect(),
        |a, b| a.is_finer_than(b),
        |a, b| s.join_congruences(a, b),
        |a, b| s.meet_congruences(a, b),
    )
}

/// Lattice of special ideals under inclusion, with join the sum and meet the
/// ideal generated by the common relations.
pub fn ideal_lattice(alg: &PathAlgebra, ideals: &[SpecialIdeal]) -> Result<FiniteLattice> {
    FiniteLattice::build(
        ideals,
        ideals.iter().map(|i| alg.describe_ideal(i)).collect(),
        |a, b| b.contains_ideal(a),
        |a, b| alg.ideal_join(a, b),
        |a, b| alg.ideal_meet(a, b),
    )
}

/// Lattice properties expected from the shape of the quiver alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prediction {
    pub lattice: LatticeProperties,
    pub all_rees: bool,
}

impl Prediction {
    pub fn entries(&self) -> Vec<(&'static str, bool)> {
        let mut out = self.lattice.entries().to_vec();
        out.push(("all_congruences_rees", self.all_rees));
        out
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.lattice.to_json();
        v["all_congruences_rees"] = json!(self.all_rees);
        v
    }
}

/// The congruence lattice of an acyclic quiver is always strong upper
/// semimodular; it is modular (equivalently lower or strong lower
/// semimodular) iff no vertex pair has more than two paths, and distributive
/// (equivalently all congruences are Rees) iff no pair has more than one.
pub fn predict_properties(q: &Quiver) -> Result<Prediction> {
    let mpp = q.max_parallel_paths()?;
    let modular = mpp <= 2;
    let mut distributive = mpp <= 1;
    if q.underlying_graph_is_tree() {
        distributive = true;
    }
    Ok(Prediction {
        lattice: LatticeProperties {
            distributive,
            modular,
            strong_upper_semimodular: true,
            strong_lower_semimodular: modular,
            upper_semimodular: true,
            lower_semimodular: modular,
        },
        all_rees: distributive,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    Violation(String),
}

impl Verdict {
    fn from_failures(failures: Vec<String>) -> Self {
        if failures.is_empty() {
            Verdict::Consistent
        } else {
            Verdict::Violation(failures.join("; "))
        }
    }

    pub fn is_consistent(&self) -> bool {
        matches!(self, Verdict::Consistent)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremCheck {
    pub name: &'static str,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverSummary {
    pub vertices: usize,
    pub arrows: usize,
    pub paths: usize,
    pub max_parallel_paths: u64,
    pub is_tree: bool,
}

#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub summary: QuiverSummary,
    pub congruences: usize,
    pub ideals: usize,
    pub covers: usize,
    pub predicted: Prediction,
    pub computed: Prediction,
    /// Human-readable witnesses for the properties that fail.
    pub witnesses: Vec<(String, String)>,
    pub checks: Vec<TheoremCheck>,
}

impl TheoremReport {
    pub fn is_consistent(&self) -> bool {
        self.checks.iter().all(|c| c.verdict.is_consistent())
    }

    pub fn violations(&self) -> impl Iterator<Item = &TheoremCheck> {
        self.checks.iter().filter(|c| !c.verdict.is_consistent())
    }

    pub fn to_text(&self) -> String {
        let s = &self.summary;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "quiver: {} vertices, {} arrows, {} paths, max parallel paths {}, tree: {}",
            s.vertices,
            s.arrows,
            s.paths,
            s.max_parallel_paths,
            if s.is_tree { "yes" } else { "no" }
        );
        let _ = writeln!(
            out,
            "lattice: {} congruences, {} special ideals, {} covers",
            self.congruences, self.ideals, self.covers
        );
        let _ = writeln!(out, "properties (computed / predicted):");
        for ((name, got), (_, want)) in self.computed.entries().into_iter().zip(self.predicted.entries()) {
            let mark = |b: bool| if b { "✓" } else { "✗" };
            let _ = writeln!(out, "  {name:<26} {} / {}", mark(got), mark(want));
        }
        for (what, w) in &self.witnesses {
            let _ = writeln!(out, "witness {what}: {w}");
        }
        let _ = writeln!(out, "checks:");
        for c in &self.checks {
            match &c.verdict {
                Verdict::Consistent => {
                    let _ = writeln!(out, "  {:<26} consistent", c.name);
                }
                Verdict::Violation(w) => {
                    let _ = writeln!(out, "  {:<26} VIOLATION: {w}", c.name);
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let s = &self.summary;
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| match &c.verdict {
                Verdict::Consistent => json!({"name": c.name, "verdict": "consistent"}),
                Verdict::Violation(w) => json!({"name": c.name, "verdict": "VIOLATION", "witness": w}),
            })
            .collect();
        let witnesses: Vec<Value> = self
            .witnesses
            .iter()
            .map(|(k, v)| json!({"property": k, "witness": v}))
            .collect();
        json!({
            "quiver": {
                "vertices": s.vertices,
                "arrows": s.arrows,
                "paths": s.paths,
                "max_parallel_paths": s.max_parallel_paths,
                "is_tree": s.is_tree,
            },
            "congruences": self.congruences,
            "ideals": self.ideals,
            "covers": self.covers,
            "predicted": self.predicted.to_json(),
            "computed": self.computed.to_json(),
            "witnesses": witnesses,
            "checks": checks,
        })
    }
}

/// Both enumerations of one quiver and the lattices built from them.
pub struct Computation {
    pub algebra: PathAlgebra,
    pub congruences: Vec<Congruence>,
    pub ideals: Vec<SpecialIdeal>,
    pub congruence_lattice: FiniteLattice,
    pub ideal_lattice: FiniteLattice,
}

impl Computation {
    pub fn run(q: &Quiver, max_elements: usize) -> Result<Self> {
        let s = PathSemigroup::new(q)?;
        let congruences = s.enumerate_congruences(max_elements)?;
        let algebra = PathAlgebra::new(s);
        let ideals = algebra.enumerate_special_ideals(max_elements)?;
        let congruence_lattice = congruence_lattice(algebra.semigroup(), &congruences)?;
        let ideal_lattice = ideal_lattice(&algebra, &ideals)?;
        Ok(Computation {
            algebra,
            congruences,
            ideals,
            congruence_lattice,
            ideal_lattice,
        })
    }

    pub fn semigroup(&self) -> &PathSemigroup {
        self.algebra.semigroup()
    }
}

/// Round trips and order preservation of the congruence ↔ ideal maps.
pub fn check_bijection(c: &Computation) -> Result<Verdict> {
    let alg = &c.algebra;
    let mut failures = Vec::new();
    if c.congruences.len() != c.ideals.len() {
        failures.push(format!(
            "{} congruences but {} special ideals",
            c.congruences.len(),
            c.ideals.len()
        ));
    }
    let ideal_index: HashMap<&SpecialIdeal, usize> = c.ideals.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut image = Vec::with_capacity(c.congruences.len());
    for rho in &c.congruences {
        let ideal = alg.congruence_to_ideal(rho)?;
        let back = alg.ideal_to_congruence(&ideal)?;
        if &back != rho {
            failures.push(format!(
                "congruence {} maps back to {}",
                c.semigroup().describe_congruence(rho),
                c.semigroup().describe_congruence(&back)
            ));
        }
        match ideal_index.get(&ideal) {
            Some(&k) => image.push(k),
            None => failures.push(format!(
                "ideal {} of congruence {} was not enumerated",
                alg.describe_span(ideal.space()),
                c.semigroup().describe_congruence(rho)
            )),
        }
    }
    for ideal in &c.ideals {
        let rho = alg.ideal_to_congruence(ideal)?;
        let back = alg.congruence_to_ideal(&rho)?;
        if back.space() != ideal.space() {
            failures.push(format!("ideal {} does not round-trip", alg.describe_span(ideal.space())));
        }
    }
    if failures.is_empty() {
        let mut sorted = image.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != c.ideals.len() {
            failures.push("congruence → ideal map is not a bijection".into());
        }
        let (lc, li) = (&c.congruence_lattice, &c.ideal_lattice);
        'pairs: for a in 0..lc.len() {
            for b in 0..lc.len() {
                if lc.leq(a, b) != li.leq(image[a], image[b]) {
                    failures.push(format!(
                        "order not preserved on ({}, {})",
                        lc.labels()[a],
                        lc.labels()[b]
                    ));
                    break 'pairs;
                }
            }
        }
    }
    Ok(Verdict::from_failures(failures))
}

/// For every cover `I₁ ≺ I₂` of the ideal lattice: the dimension grows by one
/// and every relation of `I₂` outside `I₁` regenerates `I₂` from `I₁`.
pub fn check_covering(c: &Computation) -> Result<Verdict> {
    let alg = &c.algebra;
    let l = &c.ideal_lattice;
    let mut failures = Vec::new();
    for &(lo, hi) in l.cover_pairs() {
        let (small, big) = (&c.ideals[lo], &c.ideals[hi]);
        if big.dim() != small.dim() + 1 {
            failures.push(format!(
                "cover {} ≺ {} has dimensions {} and {}",
                l.labels()[lo],
                l.labels()[hi],
                small.dim(),
                big.dim()
            ));
            continue;
        }
        for x in alg.relations_in(big.space()) {
            let v = x.vector();
            if small.contains(&v) {
                continue;
            }
            let grown = subspace_sum(small.space(), &row_reduce([v], alg.dim()))?;
            if &grown != big.space() {
                failures.push(format!(
                    "relation {} does not regenerate {} from {}",
                    x.name(alg.semigroup()),
                    l.labels()[hi],
                    l.labels()[lo]
                ));
            }
        }
    }
    Ok(Verdict::from_failures(failures))
}

fn computed_prediction(c: &Computation) -> Prediction {
    Prediction {
        lattice: c.congruence_lattice.properties(),
        all_rees: c.congruences.iter().all(Congruence::is_rees),
    }
}

/// Runs both enumeration routes and checks, in order: the bijection and
/// lattice isomorphism; predicted against computed properties; all-Rees
/// against the single-path condition; the component decomposition; the
/// covering property of the ideal lattice; and the pentagon/diamond
/// characterizations against the law-based verdicts.
pub fn check_theorems(q: &Quiver, max_elements: usize) -> Result<TheoremReport> {
    let predicted = predict_properties(q)?;
    let c = Computation::run(q, max_elements)?;
    let computed = computed_prediction(&c);
    let mpp = q.max_parallel_paths()?;
    let mut checks = Vec::new();

    checks.push(TheoremCheck {
        name: "bijection",
        verdict: check_bijection(&c)?,
    });

    let mut failures = Vec::new();
    for ((name, got), (_, want)) in computed.entries().into_iter().zip(predicted.entries()) {
        if got != want {
            failures.push(format!("{name}: computed {got}, predicted {want}"));
        }
    }
    let ideal_props = c.ideal_lattice.properties();
    if ideal_props != computed.lattice {
        failures.push("ideal lattice properties differ from congruence lattice".into());
    }
    checks.push(TheoremCheck {
        name: "predicted properties",
        verdict: Verdict::from_failures(failures),
    });

    checks.push(TheoremCheck {
        name: "rees characterization",
        verdict: if computed.all_rees == (mpp <= 1) {
            Verdict::Consistent
        } else {
            Verdict::Violation(format!(
                "all congruences Rees is {} with max parallel paths {mpp}",
                computed.all_rees
            ))
        },
    });

    let mut failures = Vec::new();
    let components = q.connected_components();
    if components.len() > 1 {
        let mut all_modular = true;
        let mut all_distributive = true;
        for comp in &components {
            let s = PathSemigroup::new(comp)?;
            let l = congruence_lattice(&s, &s.enumerate_congruences(max_elements)?)?;
            all_modular &= l.is_modular();
            all_distributive &= l.is_distributive();
        }
        if all_modular != computed.lattice.modular {
            failures.push(format!(
                "whole lattice modular: {}, every component modular: {all_modular}",
                computed.lattice.modular
            ));
        }
        if all_distributive != computed.lattice.distributive {
            failures.push(format!(
                "whole lattice distributive: {}, every component distributive: {all_distributive}",
                computed.lattice.distributive
            ));
        }
    }
    checks.push(TheoremCheck {
        name: "component decomposition",
        verdict: Verdict::from_failures(failures),
    });

    checks.push(TheoremCheck {
        name: "covering property",
        verdict: check_covering(&c)?,
    });

    let l = &c.congruence_lattice;
    let pentagon = l.find_pentagon_exhaustive();
    let diamond = l.find_diamond_exhaustive();
    let mut failures = Vec::new();
    if computed.lattice.modular != pentagon.is_none() {
        failures.push(format!(
            "modular is {} but pentagon search found {:?}",
            computed.lattice.modular, pentagon
        ));
    }
    if computed.lattice.distributive != (pentagon.is_none() && diamond.is_none()) {
        failures.push(format!(
            "distributive is {} but pentagon/diamond search found {:?}/{:?}",
            computed.lattice.distributive, pentagon, diamond
        ));
    }
    checks.push(TheoremCheck {
        name: "sublattice criteria",
        verdict: Verdict::from_failures(failures),
    });

    let labels = l.labels();
    let name_tuple = |xs: &[usize]| {
        let names: Vec<&str> = xs.iter().map(|&x| labels[x].as_str()).collect();
        format!("({})", names.join(", "))
    };
    let mut witnesses = Vec::new();
    if let Some((a, b, cc)) = l.modular_witness() {
        witnesses.push(("modular law".into(), name_tuple(&[a, b, cc])));
    }
    if let Some((a, b)) = l.lower_semimodular_witness() {
        witnesses.push(("lower semimodular".into(), name_tuple(&[a, b])));
    }
    if let Some((a, b)) = l.strong_lower_semimodular_witness() {
        witnesses.push(("strong lower semimodular".into(), name_tuple(&[a, b])));
    }
    if let Some(p) = l.find_pentagon() {
        witnesses.push(("pentagon".into(), name_tuple(&p)));
    }
    if let Some(d) = l.find_diamond() {
        witnesses.push(("diamond".into(), name_tuple(&d)));
    }

    Ok(TheoremReport {
        summary: QuiverSummary {
            vertices: q.vertices().len(),
            arrows: q.arrows().len(),
            paths: c.semigroup().paths().len(),
            max_parallel_paths: mpp,
            is_tree: q.underlying_graph_is_tree(),
        },
        congruences: c.congruences.len(),
        ideals: c.ideals.len(),
        covers: l.cover_pairs().len(),
        predicted,
        computed,
        witnesses,
        checks,
    })
}

/// Random acyclic quiver on vertices `1..=vertices`: `arrows` arrows, each
/// joining a uniformly chosen pair `i < j` in the fixed order, with at most
/// `multiplicity` arrows per pair. Stops early if every pair is saturated.
pub fn random_quiver<R: Rng>(rng: &mut R, vertices: usize, arrows: usize, multiplicity: usize) -> Quiver {
    let pairs: Vec<(usize, usize)> = (0..vertices)
        .flat_map(|i| (i + 1..vertices).map(move |j| (i, j)))
        .collect();
    let mut used: HashMap<(usize, usize), usize> = HashMap::new();
    let mut out = Vec::new();
    for k in 0..arrows {
        let open: Vec<&(usize, usize)> = pairs
            .iter()
            .filter(|p| used.get(p).copied().unwrap_or(0) < multiplicity)
            .collect();
        let Some(&&(i, j)) = open.choose(rng) else {
            break;
        };
        *used.entry((i, j)).or_insert(0) += 1;
        out.push((arrow_name(k), (i + 1).to_string(), (j + 1).to_string()));
    }
    Quiver::new((1..=vertices).map(|v| v.to_string()), out).expect("generated quiver is well-formed")
}

/// `a`, `b`, …, `z`, `a1`, `b1`, …
fn arrow_name(k: usize) -> String {
    let letter = (b'a' + (k % 26) as u8) as char;
    if k < 26 {
        letter.to_string()
    } else {
        format!("{letter}{}", k / 26)
    }
}

/// Parameters for a seeded family of random quivers.
#[derive(Debug, Clone, Copy)]
pub struct RandomSuite {
    pub seed: u64,
    pub count: usize,
    /// Vertex counts are drawn from `1..=max_vertices`.
    pub max_vertices: usize,
    /// Arrow counts are drawn from `0..=max_arrows`.
    pub max_arrows: usize,
    pub multiplicity: usize,
    /// Quivers whose path semigroup exceeds this are redrawn.
    pub max_elements: usize,
}

impl Default for RandomSuite {
    fn default() -> Self {
        RandomSuite {
            seed: 42,
            count: 50,
            max_vertices: 4,
            max_arrows: 5,
            multiplicity: 3,
            max_elements: 20,
        }
    }
}

impl RandomSuite {
    pub fn generate(&self) -> Vec<Quiver> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut out = Vec::with_capacity(self.count);
        while out.len() < self.count {
            let v = rng.gen_range(1..=self.max_vertices.max(1));
            let m = rng.gen_range(0..=self.max_arrows);
            let q = random_quiver(&mut rng, v, m, self.multiplicity);
            let size = q.enumerate_paths().map(|p| p.len() + 1).unwrap_or(usize::MAX);
            if size <= self.max_elements {
                out.push(q);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_quiver;

    const SINGLE_ARROW: &str = "vertices: 1 2\narrow alpha: 1 -> 2";
    const THREE_ARROWS: &str = "vertices: 1 2\narrow alpha: 1 -> 2\narrow beta: 1 -> 2\narrow gamma: 1 -> 2";
    const KRONECKER: &str = "vertices: 1 2\narrow alpha: 1 -> 2\narrow beta: 1 -> 2";

    #[test]
    fn predictions() {
        let p = predict_properties(&parse_quiver(SINGLE_ARROW).unwrap()).unwrap();
        assert!(p.entries().iter().all(|&(_, v)| v));
        let p = predict_properties(&parse_quiver(KRONECKER).unwrap()).unwrap();
        assert!(p.lattice.modular && !p.lattice.distributive && !p.all_rees);
        let p = predict_properties(&parse_quiver(THREE_ARROWS).unwrap()).unwrap();
        assert!(p.lattice.strong_upper_semimodular && p.lattice.upper_semimodular);
        assert!(!p.lattice.lower_semimodular && !p.lattice.modular);
        let cyclic = parse_quiver("vertices: v\narrow l: v -> v").unwrap();
        assert!(predict_properties(&cyclic).is_err());
    }

    #[test]
    fn reference_quivers_consistent() {
        for (text, n) in [(SINGLE_ARROW, 5), (KRONECKER, 8), (THREE_ARROWS, 18)] {
            let r = check_theorems(&parse_quiver(text).unwrap(), 20).unwrap();
            assert!(r.is_consistent(), "{}", r.to_text());
            assert_eq!((r.congruences, r.ideals), (n, n));
            assert_eq!(r.checks.len(), 6);
        }
    }

    #[test]
    fn three_arrows_report_has_lower_witness() {
        let r = check_theorems(&parse_quiver(THREE_ARROWS).unwrap(), 20).unwrap();
        assert!(r.witnesses.iter().any(|(k, _)| k == "lower semimodular"));
        assert!(r.witnesses.iter().any(|(k, _)| k == "pentagon"));
        assert!(!r.to_text().contains("VIOLATION"));
    }

    #[test]
    fn random_generation_is_seeded() {
        let suite = RandomSuite {
            count: 5,
            ..RandomSuite::default()
        };
        assert_eq!(suite.generate(), suite.generate());
        for q in suite.generate() {
            assert!(q.is_acyclic());
            assert!(q.vertices().len() <= 4 && q.arrows().len() <= 5);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let q = random_quiver(&mut rng, 2, 10, 3);
        assert_eq!(q.arrows().len(), 3);
        assert_eq!(arrow_name(27), "b1");
    }
}
