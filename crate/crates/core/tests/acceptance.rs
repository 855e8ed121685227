//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any criterion fails.
//!
//! Run with `cargo test -p pathcong --test acceptance`.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pathcong::harness::{
    check_bijection, check_covering, congruence_lattice, ideal_lattice, predict_properties, Computation, RandomSuite,
};
use pathcong::{
    parse_quiver, row_reduce, subspace_intersection, subspace_sum, Congruence, FiniteLattice, PathAlgebra,
    PathSemigroup, PathVector, Quiver, Relation, SpecialIdeal, Subspace,
};

const SINGLE_ARROW: &str = "vertices: 1 2\narrow alpha: 1 -> 2\n";
const THREE_ARROWS: &str = "vertices: 1 2\narrow alpha: 1 -> 2\narrow beta: 1 -> 2\narrow gamma: 1 -> 2\n";
const KRONECKER: &str = "vertices: 1 2\narrow alpha: 1 -> 2\narrow beta: 1 -> 2\n";

const CAP: usize = 20;

type Outcome = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn algebra(text: &str) -> PathAlgebra {
    PathAlgebra::new(PathSemigroup::new(&parse_quiver(text).unwrap()).unwrap())
}

fn element(s: &PathSemigroup, name: &str) -> usize {
    s.index_of(name).unwrap_or_else(|| panic!("no element {name}"))
}

/// `"alpha"` or `"alpha-beta"`
fn relation(alg: &PathAlgebra, text: &str) -> Relation {
    let s = alg.semigroup();
    match text.split_once('-') {
        None => Relation::Monomial(element(s, text) - 1),
        Some((a, b)) => Relation::commutative(s, element(s, a) - 1, element(s, b) - 1).unwrap(),
    }
}

fn ideal(alg: &PathAlgebra, gens: &[&str]) -> SpecialIdeal {
    alg.generate_ideal(gens.iter().map(|g| relation(alg, g))).unwrap()
}

/// Cover pairs of `l` translated to 1-based reference labels through `label_of`.
fn reference_covers(l: &FiniteLattice, label_of: &[usize]) -> BTreeSet<(usize, usize)> {
    l.cover_pairs().iter().map(|&(a, b)| (label_of[a], label_of[b])).collect()
}

/// For each lattice index, the 1-based position of that element in `reference`.
fn reference_labels<T: PartialEq>(enumerated: &[T], reference: &[T]) -> Result<Vec<usize>, String> {
    enumerated
        .iter()
        .map(|x| {
            reference
                .iter()
                .position(|p| p == x)
                .map(|i| i + 1)
                .ok_or_else(|| "enumerated element missing from the reference's list".to_string())
        })
        .collect()
}

fn edges(list: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    list.iter().copied().collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let alg = algebra(SINGLE_ARROW);
    let s = alg.semigroup();
    let congruences = s.enumerate_congruences(CAP).map_err(|e| e.to_string())?;
    let ideals = alg.enumerate_special_ideals(CAP).map_err(|e| e.to_string())?;
    ensure!(congruences.len() == 5, "{} congruences", congruences.len());
    ensure!(ideals.len() == 5, "{} ideals", ideals.len());

    let spans: BTreeSet<String> = ideals.iter().map(|i| alg.describe_span(i.space())).collect();
    let expected: BTreeSet<String> = ["span{}", "span{alpha}", "span{1, alpha}", "span{2, alpha}", "span{1, 2, alpha}"]
        .map(String::from)
        .into();
    ensure!(spans == expected, "spans {spans:?}");
    let e1_ideal = ideal(&alg, &["1"]);
    ensure!(
        alg.describe_span(e1_ideal.space()) == "span{1, alpha}" && ideals.contains(&e1_ideal),
        "<1> = {}",
        alg.describe_span(e1_ideal.space())
    );

    let (e1, e2, a) = (element(s, "1"), element(s, "2"), element(s, "alpha"));
    let reference = [
        s.identity_congruence(),
        s.rees_congruence(&[a]),
        s.rees_congruence(&[e1, a]),
        s.rees_congruence(&[e2, a]),
        s.universal_congruence(),
    ];
    let l = congruence_lattice(s, &congruences).map_err(|e| e.to_string())?;
    let labels = reference_labels(&congruences, &reference)?;
    let covers = reference_covers(&l, &labels);
    ensure!(
        covers == edges(&[(1, 2), (2, 3), (2, 4), (3, 5), (4, 5)]),
        "Hasse diagram {covers:?}"
    );
    ensure!(l.is_distributive(), "not distributive");
    ensure!(congruences.iter().all(Congruence::is_rees), "non-Rees congruence");
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("5 congruences, 5 ideals, expected covers, distributive ({elapsed:.2?})"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let alg = algebra(THREE_ARROWS);
    let ideals = alg.enumerate_special_ideals(CAP).map_err(|e| e.to_string())?;
    ensure!(ideals.len() == 18, "{} special ideals", ideals.len());

    let reference: Vec<SpecialIdeal> = [
        &[][..],
        &["alpha"],
        &["beta"],
        &["gamma"],
        &["alpha", "beta"],
        &["beta", "gamma"],
        &["alpha", "gamma"],
        &["alpha", "beta", "gamma"],
        &["alpha-beta"],
        &["beta-gamma"],
        &["alpha-gamma"],
        &["alpha", "beta-gamma"],
        &["beta", "alpha-gamma"],
        &["gamma", "alpha-beta"],
        &["alpha-beta", "alpha-gamma"],
        &["1"],
        &["2"],
        &["1", "2"],
    ]
    .iter()
    .map(|g| ideal(&alg, g))
    .collect();
    let i = |k: usize| &reference[k - 1];
    // the three generating sets of I_15 agree
    ensure!(
        *i(15) == ideal(&alg, &["alpha-beta", "beta-gamma"]) && *i(15) == ideal(&alg, &["alpha-gamma", "beta-gamma"]),
        "I_15 generating sets disagree"
    );
    ensure!(
        alg.describe_span(i(16).space()) == "span{1, alpha, beta, gamma}",
        "I_16 = {}",
        alg.describe_span(i(16).space())
    );

    let common = subspace_intersection(i(12).space(), i(14).space()).map_err(|e| e.to_string())?;
    ensure!(common.dim() == 1, "intersection has dimension {}", common.dim());
    ensure!(
        alg.describe_span(&common) == "span{alpha - beta + gamma}",
        "intersection {}",
        alg.describe_span(&common)
    );
    let meet = alg.ideal_meet(i(12), i(14)).map_err(|e| e.to_string())?;
    ensure!(meet == alg.zero_ideal(), "meet is {}", alg.describe_span(meet.space()));
    let join = alg.ideal_join(i(12), i(14)).map_err(|e| e.to_string())?;
    ensure!(join == *i(8), "join is {}", alg.describe_span(join.space()));
    ensure!(alg.describe_span(join.space()) == "span{alpha, beta, gamma}", "join span");

    let l = ideal_lattice(&alg, &ideals).map_err(|e| e.to_string())?;
    ensure!(l.is_strong_upper_semimodular(), "not strong upper semimodular");
    let witness = l.lower_semimodular_witness().ok_or("lower semimodular, no witness")?;
    ensure!(l.violates_lower(witness.0, witness.1), "witness does not violate");
    let labels = reference_labels(&ideals, &reference)?;
    let idx = |k: usize| labels.iter().position(|&x| x == k).unwrap();
    ensure!(l.violates_lower(idx(12), idx(14)), "(I_12, I_14) is not a lower-semimodularity witness");

    let covers = reference_covers(&l, &labels);
    let expected = edges(&[
        (1, 2), (1, 3), (1, 4), (1, 9), (1, 10), (1, 11),
        (2, 5), (2, 7), (2, 12),
        (3, 5), (3, 6), (3, 13),
        (4, 6), (4, 7), (4, 14),
        (9, 5), (9, 14), (9, 15),
        (10, 6), (10, 12), (10, 15),
        (11, 7), (11, 13), (11, 15),
        (5, 8), (6, 8), (7, 8), (12, 8), (13, 8), (14, 8), (15, 8),
        (8, 16), (8, 17), (16, 18), (17, 18),
    ]);
    ensure!(covers.len() == 35, "{} covers", covers.len());
    ensure!(covers == expected, "covers differ from the expected diagram: {:?}", covers.symmetric_difference(&expected).collect::<Vec<_>>());

    // the pentagon 0 < I_2 < I_12 < I_8 with I_14 on the side
    let pentagon = [idx(1), idx(2), idx(12), idx(14), idx(8)];
    ensure!(l.is_pentagon(&pentagon), "reference pentagon not a sublattice");
    ensure!(l.find_pentagon().is_some_and(|p| l.is_pentagon(&p)), "no pentagon found");

    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    Ok(format!(
        "18 ideals, meet(I12,I14)=0 with 1-dim intersection, join=I8, lower witness ({}, {}), 35 covers ({elapsed:.2?})",
        l.labels()[witness.0],
        l.labels()[witness.1]
    ))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let s = PathSemigroup::new(&parse_quiver(KRONECKER).unwrap()).unwrap();
    let congruences = s.enumerate_congruences(CAP).map_err(|e| e.to_string())?;
    ensure!(congruences.len() == 8, "{} congruences", congruences.len());
    let (e1, e2, a, b) = (element(&s, "1"), element(&s, "2"), element(&s, "alpha"), element(&s, "beta"));
    let reference = [
        s.identity_congruence(),
        s.principal_congruence(a, b),
        s.rees_congruence(&[a]),
        s.rees_congruence(&[b]),
        s.rees_congruence(&[a, b]),
        s.rees_congruence(&[e1, a, b]),
        s.rees_congruence(&[e2, a, b]),
        s.universal_congruence(),
    ];
    let l = congruence_lattice(&s, &congruences).map_err(|e| e.to_string())?;
    let labels = reference_labels(&congruences, &reference)?;
    let covers = reference_covers(&l, &labels);
    let expected = edges(&[(1, 2), (1, 3), (1, 4), (2, 5), (3, 5), (4, 5), (5, 6), (5, 7), (6, 8), (7, 8)]);
    ensure!(covers == expected, "Hasse diagram {covers:?}");
    ensure!(l.is_modular(), "not modular");
    ensure!(!l.is_distributive(), "distributive");
    let diamond = l.find_diamond().ok_or("no diamond")?;
    ensure!(l.is_diamond(&diamond), "diamond is not a sublattice");
    let found: BTreeSet<usize> = diamond.iter().map(|&x| labels[x]).collect();
    ensure!(found == BTreeSet::from([1, 2, 3, 4, 5]), "diamond {found:?}");
    ensure!(l.find_pentagon().is_none(), "pentagon found");
    ensure!(l.find_pentagon_exhaustive().is_none(), "pentagon found by exhaustive search");
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("8 congruences, expected covers, modular, diamond {{1,2,3,4,5}}, no pentagon ({elapsed:.2?})"))
}

struct Suite {
    quivers: Vec<Quiver>,
    computations: Vec<Computation>,
    elapsed: Duration,
}

fn build_suite() -> Suite {
    let start = Instant::now();
    let mut quivers: Vec<Quiver> = [SINGLE_ARROW, THREE_ARROWS, KRONECKER].iter().map(|t| parse_quiver(t).unwrap()).collect();
    quivers.extend(RandomSuite::default().generate());
    let computations = quivers
        .iter()
        .map(|q| Computation::run(q, CAP).expect("suite quiver within caps"))
        .collect();
    Suite {
        quivers,
        computations,
        elapsed: start.elapsed(),
    }
}

fn criterion_4(suite: &Suite) -> Outcome {
    let start = Instant::now();
    ensure!(suite.quivers.len() == 53, "{} quivers", suite.quivers.len());
    for (q, c) in suite.quivers.iter().zip(&suite.computations) {
        ensure!(q.vertices().len() <= 4 && q.arrows().len() <= 5, "quiver too large:\n{q}");
        ensure!(c.semigroup().size() <= CAP, "semigroup too large:\n{q}");
        ensure!(c.congruences.len() == c.ideals.len(), "count mismatch on\n{q}");
        let verdict = check_bijection(c).map_err(|e| e.to_string())?;
        ensure!(verdict.is_consistent(), "{verdict:?} on\n{q}");
    }
    let total = suite.elapsed + start.elapsed();
    ensure!(total < Duration::from_secs(120), "suite took {total:?}");
    let largest = suite.computations.iter().map(|c| c.congruences.len()).max().unwrap();
    Ok(format!("53 quivers, round trips and order isomorphism exact, largest lattice {largest} ({total:.2?})"))
}

fn criterion_5(suite: &Suite) -> Outcome {
    let mut compared = 0;
    for (q, c) in suite.quivers.iter().zip(&suite.computations) {
        let s = c.semigroup();
        if s.size() > 9 {
            continue;
        }
        let brute = s.enumerate_congruences_bruteforce().map_err(|e| e.to_string())?;
        ensure!(brute == c.congruences, "oracle disagrees on\n{q}");
        compared += 1;
    }
    ensure!(compared > 0, "no quiver small enough");
    Ok(format!("{compared} quivers with |S| <= 9 agree exactly"))
}

fn criterion_6(suite: &Suite) -> Outcome {
    for (q, c) in suite.quivers.iter().zip(&suite.computations) {
        let predicted = predict_properties(q).map_err(|e| e.to_string())?;
        for l in [&c.congruence_lattice, &c.ideal_lattice] {
            let computed = l.properties();
            ensure!(computed == predicted.lattice, "predicted {predicted:?}, computed {computed:?} on\n{q}");
            let pentagon = l.find_pentagon_exhaustive();
            let diamond = l.find_diamond_exhaustive();
            ensure!(computed.modular == pentagon.is_none(), "modular vs pentagon on\n{q}");
            ensure!(
                computed.distributive == (pentagon.is_none() && diamond.is_none()),
                "distributive vs pentagon/diamond on\n{q}"
            );
            if let Some(p) = l.find_pentagon() {
                ensure!(l.is_pentagon(&p), "bad pentagon witness on\n{q}");
            }
            if let Some(d) = l.find_diamond() {
                ensure!(l.is_diamond(&d), "bad diamond witness on\n{q}");
            }
        }
        let all_rees = c.congruences.iter().all(Congruence::is_rees);
        ensure!(all_rees == predicted.all_rees, "all-Rees {all_rees} on\n{q}");
    }
    Ok(format!("{} quivers, 6 lattice predicates + all-Rees, N5/M3 cross-checks agree", suite.quivers.len()))
}

fn criterion_7(suite: &Suite) -> Outcome {
    let mut covers = 0;
    for (q, c) in suite.quivers.iter().zip(&suite.computations) {
        let verdict = check_covering(c).map_err(|e| e.to_string())?;
        ensure!(verdict.is_consistent(), "{verdict:?} on\n{q}");
        covers += c.ideal_lattice.cover_pairs().len();
    }
    Ok(format!("{covers} cover pairs checked"))
}

fn criterion_8(suite: &Suite) -> Outcome {
    for (q, c) in suite.quivers.iter().zip(&suite.computations) {
        let s = c.semigroup();
        ensure!(s.associativity_violation().is_none(), "not associative on\n{q}");
        for x in 0..s.size() {
            ensure!(s.mul(0, x) == 0 && s.mul(x, 0) == 0, "zero not absorbing");
            for y in 0..s.size() {
                let xy = s.mul(x, y);
                if let (Some(lx), Some(ly), Some(lxy)) = (s.length(x), s.length(y), s.length(xy)) {
                    ensure!(lxy == lx + ly, "length grading fails on\n{q}");
                }
            }
        }
        let mut expected = vec![0];
        expected.extend(1..=q.vertices().len());
        ensure!(s.idempotents() == expected, "idempotents {:?} on\n{q}", s.idempotents());
    }
    Ok(format!("{} semigroups", suite.quivers.len()))
}

fn random_vector<R: Rng>(rng: &mut R, dim: usize) -> PathVector {
    let mut entries = Vec::new();
    for i in 0..dim {
        if rng.gen_bool(0.5) {
            entries.push((i, rng.gen_range(-4i64..=4)));
        }
    }
    PathVector::from_ints(&entries)
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..1000 {
        let dim = rng.gen_range(1..=12);
        let gens_a: Vec<PathVector> = (0..rng.gen_range(0..=dim)).map(|_| random_vector(&mut rng, dim)).collect();
        let gens_b: Vec<PathVector> = (0..rng.gen_range(0..=dim)).map(|_| random_vector(&mut rng, dim)).collect();
        let a = row_reduce(gens_a.clone(), dim);
        let b = row_reduce(gens_b.clone(), dim);
        let sum = subspace_sum(&a, &b).map_err(|e| e.to_string())?;
        let meet = subspace_intersection(&a, &b).map_err(|e| e.to_string())?;
        ensure!(
            a.dim() + b.dim() == sum.dim() + meet.dim(),
            "trial {trial}: {} + {} != {} + {}",
            a.dim(),
            b.dim(),
            sum.dim(),
            meet.dim()
        );
        ensure!(meet.basis().iter().all(|v| a.contains(v) && b.contains(v)), "trial {trial}: intersection escapes");
        ensure!(row_reduce(a.basis().to_vec(), dim) == a, "trial {trial}: not idempotent");

        // same span from shuffled generators plus random integer combinations
        let mut other = gens_a.clone();
        other.shuffle(&mut rng);
        for _ in 0..2 {
            let mut v = PathVector::new();
            for g in &gens_a {
                v.add_scaled(g, &BigRational::from_integer(BigInt::from(rng.gen_range(-3i64..=3))));
            }
            other.push(v);
        }
        ensure!(row_reduce(other, dim) == a, "trial {trial}: basis depends on input order");

        for g in &gens_a {
            let coords = a.coordinates(g).ok_or(format!("trial {trial}: generator not a member"))?;
            let mut back = PathVector::new();
            for (c, v) in coords.iter().zip(a.basis()) {
                back.add_scaled(v, c);
            }
            ensure!(&back == g, "trial {trial}: reconstruction is inexact");
        }
        ensure!(sum.contains_subspace(&a) && sum.contains_subspace(&b), "trial {trial}: sum too small");
        ensure!(Subspace::full(dim).contains_subspace(&sum), "trial {trial}: ambient");
    }
    Ok("1000 random subspace pairs, exact".into())
}

fn run(name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panicked".into()))
    });
    match outcome {
        Ok(detail) => {
            println!("PASS  {name}: {detail}");
            true
        }
        Err(why) => {
            println!("FAIL  {name}: {why}");
            false
        }
    }
}

fn main() -> ExitCode {
    let mut ok = true;
    ok &= run("AC1 single arrow", criterion_1);
    ok &= run("AC2 three parallel arrows", criterion_2);
    ok &= run("AC3 Kronecker quiver", criterion_3);
    let suite = build_suite();
    ok &= run("AC4 bijection suite", || criterion_4(&suite));
    ok &= run("AC5 brute-force oracle", || criterion_5(&suite));
    ok &= run("AC6 theorem predicates", || criterion_6(&suite));
    ok &= run("AC7 covering property", || criterion_7(&suite));
    ok &= run("AC8 semigroup axioms", || criterion_8(&suite));
    ok &= run("AC9 exact linear algebra", criterion_9);
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
