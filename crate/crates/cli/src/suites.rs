//! Property suites for `verify`. Each property is tallied over its cases and
//! keeps the first counterexample.

use nestalg::algebra::{
    alg_basis, idempotent_onto, in_alg, invariant_lattice, rank_decompose, rank_one_generators, rank_one_in_alg,
    reflexivity_witness, strict_approximant, ENUMERATION_MAX_DIM,
};
use nestalg::nest::{all_nests, compositions};
use nestalg::radical::{
    in_strict_ideal, ordsum_analyze, ordsum_radical_law, quasi_inverse, raddef_probe, radical_exclusion_witness,
    radical_report, strict_ideal_basis,
};
use nestalg::random::{self, SeededRng};
use nestalg::subspace::all_subspaces;
use nestalg::support::{graded_quasi_inverse, grading_containment, truncated_dual_nest};
use nestalg::{Gf2, Gf3, Matrix, Nest, Rational, Scalar, Subspace};
use rand::Rng;
use serde_json::{json, Value};

use crate::c00;
use crate::encode;
use crate::input::InputResult;
use crate::report::{Tally, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Suite {
    Lattice,
    Reflexivity,
    Radical,
    Dual,
    C00,
    Ordsum,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Lattice => "lattice",
            Suite::Reflexivity => "reflexivity",
            Suite::Radical => "radical",
            Suite::Dual => "dual",
            Suite::C00 => "c00",
            Suite::Ordsum => "ordsum",
            Suite::All => "all",
        }
    }

    pub fn members(self) -> Vec<Suite> {
        use Suite::*;
        match self {
            All => vec![Lattice, Reflexivity, Radical, Dual, C00, Ordsum],
            s => vec![s],
        }
    }

    /// Default dimension bound when `--max-dim` is absent.
    fn default_max_dim(self) -> usize {
        match self {
            Suite::Lattice | Suite::Reflexivity | Suite::Dual => 4,
            Suite::Radical => 6,
            Suite::C00 => 8,
            Suite::Ordsum | Suite::All => 3,
        }
    }

    /// Fixed offset so each suite draws the same stream alone or under `all`.
    fn stream(self) -> u64 {
        self as u64
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Params {
    pub seed: u64,
    pub cases: usize,
    pub max_dim: Option<usize>,
}

pub struct SuiteOutcome {
    pub results: Value,
    pub verdicts: Vec<Verdict>,
}

pub fn run(suite: Suite, params: Params) -> InputResult<SuiteOutcome> {
    let max_dim = params.max_dim.unwrap_or(suite.default_max_dim());
    if max_dim == 0 {
        return Err("--max-dim must be at least 1".into());
    }
    let mut rng = random::seeded(params.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(suite.stream()));
    let mut extra = Value::Null;
    let tallies = match suite {
        Suite::Lattice => lattice(&mut rng, params.cases, max_dim),
        Suite::Reflexivity => reflexivity(&mut rng, params.cases, max_dim)?,
        Suite::Radical => radical(&mut rng, params.cases, max_dim, params.seed),
        Suite::Dual => dual(&mut rng, params.cases, max_dim),
        Suite::C00 => {
            let (t, catalog, verdicts) = c00_suite(&mut rng, params.cases, max_dim)?;
            extra = catalog;
            let mut out = summarize(suite, max_dim, &t, extra);
            out.verdicts.splice(0..0, verdicts);
            return Ok(out);
        }
        Suite::Ordsum => ordsum(&mut rng, params.cases, max_dim),
        Suite::All => unreachable!("expanded by the caller"),
    };
    Ok(summarize(suite, max_dim, &tallies, extra))
}

fn summarize(suite: Suite, max_dim: usize, tallies: &[Tally], extra: Value) -> SuiteOutcome {
    let failures: usize = tallies.iter().map(|t| t.failures).sum();
    let mut results = json!({
        "max_dim": max_dim,
        "properties": tallies.iter().map(Tally::summary).collect::<Vec<_>>(),
        "failures": failures,
    });
    if !extra.is_null() {
        results["catalog"] = extra;
    }
    let verdicts = tallies
        .iter()
        .map(|t| {
            let mut v = t.verdict();
            v.property = format!("{}: {}", suite.name(), v.property);
            v
        })
        .collect();
    SuiteOutcome { results, verdicts }
}

fn dims(rng: &mut SeededRng, max_dim: usize) -> usize {
    rng.random_range(1..=max_dim)
}

fn lattice_case<S: Scalar>(rng: &mut SeededRng, n: usize, t: &mut [Tally; 4]) {
    let sub = |rng: &mut SeededRng| {
        let d = rng.random_range(0..=n);
        random::subspace::<S, _>(rng, n, d)
    };
    let (a, b, c) = (sub(rng), sub(rng), sub(rng));
    let j = |x: &Subspace<S>, y: &Subspace<S>| x.join(y).expect("same ambient");
    let m = |x: &Subspace<S>, y: &Subspace<S>| x.meet(y).expect("same ambient");
    let witness = || json!({ "a": encode::subspace(&a), "b": encode::subspace(&b), "c": encode::subspace(&c) });

    let ac = j(&a, &m(&a, &c));
    let modular = j(&m(&a, &c), &m(&b, &c)) == m(&j(&m(&a, &c), &b), &c);
    let laws = m(&a, &j(&a, &b)) == a && j(&a, &m(&a, &b)) == a && ac == a && modular && j(&a, &b) == j(&b, &a);
    t[0].record(laws, witness);

    let ann = j(&a, &b).annihilator() == m(&a.annihilator(), &b.annihilator())
        && m(&a, &b).annihilator() == j(&a.annihilator(), &b.annihilator())
        && a.annihilator().annihilator() == a
        && a.leq(&j(&a, &b)).unwrap()
        && j(&a, &b).annihilator().leq(&a.annihilator()).unwrap();
    t[1].record(ann, witness);

    t[2].record(j(&a, &b).dim() + m(&a, &b).dim() == a.dim() + b.dim(), witness);

    let x = random::vector::<S, _>(rng, n);
    if !a.contains_vector(&x).unwrap() {
        let phi = a.separating_functional(&x).unwrap();
        let ok = phi.apply(&x) == S::one() && a.basis_vectors().iter().all(|v| phi.apply(v).is_zero());
        t[3].record(ok, || json!({ "subspace": encode::subspace(&a), "x": encode::vector(&x) }));
    }
}

fn lattice(rng: &mut SeededRng, cases: usize, max_dim: usize) -> Vec<Tally> {
    let mut t = [
        Tally::new("absorption, commutativity and modularity"),
        Tally::new("annihilation is an order-reversing involution exchanging meet and join"),
        Tally::new("dim(a join b) + dim(a meet b) = dim a + dim b"),
        Tally::new("separating functional vanishes on the subspace and is 1 at x"),
    ];
    for _ in 0..cases {
        let n = dims(rng, max_dim);
        lattice_case::<Rational>(rng, n, &mut t);
        lattice_case::<Gf2>(rng, n, &mut t);
        lattice_case::<Gf3>(rng, n, &mut t);
    }
    let mut points = Tally::new("meet is set intersection and order is inclusion over GF(2)^n");
    for n in 1..=max_dim.min(3) {
        let subs = all_subspaces::<Gf2>(n).expect("finite field");
        let elems: Vec<std::collections::BTreeSet<Vec<Gf2>>> =
            subs.iter().map(|s| s.elements().expect("finite").into_iter().collect()).collect();
        for (i, a) in subs.iter().enumerate() {
            for (k, b) in subs.iter().enumerate() {
                let meet: std::collections::BTreeSet<_> = a.meet(b).unwrap().elements().unwrap().into_iter().collect();
                let inter: std::collections::BTreeSet<_> = elems[i].intersection(&elems[k]).cloned().collect();
                let ok = meet == inter && a.leq(b).unwrap() == elems[i].is_subset(&elems[k]);
                points.record(ok, || json!({ "a": encode::subspace(a), "b": encode::subspace(b) }));
            }
        }
    }
    let mut out = t.to_vec();
    out.push(points);
    out
}

fn reflexivity_exhaustive<S: Scalar>(max_dim: usize, t: &mut [Tally; 3]) -> InputResult<()> {
    for n in 1..=max_dim {
        let subs = all_subspaces::<S>(n).map_err(|e| e.to_string())?;
        for nest in all_nests::<S>(n).map_err(|e| e.to_string())? {
            let w = || encode::nest(&nest);
            let lat = invariant_lattice(&alg_basis(&nest).basis, n).map_err(|e| e.to_string())?;
            t[0].record(lat == nest.chain(), w);
            let gens = rank_one_generators(&nest).map_err(|e| e.to_string())?;
            let lat = invariant_lattice(&gens, n).map_err(|e| e.to_string())?;
            t[1].record(lat == nest.chain(), w);
            let mut bad = None;
            for m in subs.iter().filter(|m| !nest.contains_member(m)) {
                let ok = reflexivity_witness(&nest, m).is_ok_and(|r| {
                    m.contains_vector(&r.x).unwrap()
                        && !m.contains_vector(&r.image()).unwrap()
                        && rank_one_in_alg(&nest, &r.rank_one).unwrap()
                });
                if !ok && bad.is_none() {
                    bad = Some(encode::subspace(m));
                }
            }
            t[2].record(bad.is_none(), || json!({ "nest": encode::nest(&nest), "subspace": bad }));
        }
    }
    Ok(())
}

fn decomposition_case<S: Scalar>(rng: &mut SeededRng, n: usize, t: &mut [Tally; 3]) {
    let nest: Nest<S> = random::nest(rng, n);
    let alg = alg_basis(&nest).basis;
    let op = random::combination(rng, &alg, n);
    if !op.is_zero() {
        let ok = rank_decompose(&nest, &op).is_ok_and(|parts| {
            parts.len() == op.rank()
                && parts.iter().all(|p| p.rank() == 1 && in_alg(&nest, p).unwrap())
                && parts.iter().fold(Matrix::zeros(n, n), |acc, p| &acc + p) == op
        });
        t[0].record(ok, || json!({ "nest": encode::nest(&nest), "operator": encode::matrix(&op) }));
    }
    let d = rng.random_range(1..=n);
    let m = random::subspace::<S, _>(rng, n, d);
    let ok =
        idempotent_onto(&nest, &m).is_ok_and(|dec| {
            let p = &dec.idempotent;
            p.matmul(p) == *p
                && Subspace::column_space(p) == m
                && dec.parts.len() == m.dim()
                && dec.parts.iter().all(|r| r.is_idempotent() && rank_one_in_alg(&nest, r).unwrap())
                && dec.parts.iter().enumerate().all(|(i, a)| {
                    dec.parts.iter().enumerate().all(|(j, b)| i == j || a.matrix.matmul(&b.matrix).is_zero())
                })
        });
    t[1].record(ok, || json!({ "nest": encode::nest(&nest), "subspace": encode::subspace(&m) }));
    let f: Vec<Vec<S>> = (0..rng.random_range(1..=n)).map(|_| random::vector(rng, n)).collect();
    let ok = strict_approximant(&nest, &op, &f)
        .is_ok_and(|a| in_alg(&nest, &a.matrix).unwrap() && f.iter().all(|v| a.matrix.mul_vec(v) == op.mul_vec(v)));
    t[2].record(ok, || json!({ "nest": encode::nest(&nest), "operator": encode::matrix(&op) }));
}

fn reflexivity(rng: &mut SeededRng, cases: usize, max_dim: usize) -> InputResult<Vec<Tally>> {
    if max_dim > ENUMERATION_MAX_DIM {
        return Err(format!(
            "enumeration bound exceeded: reflexivity enumerates GF(2)^n for n <= {ENUMERATION_MAX_DIM}, got --max-dim {max_dim}"
        ));
    }
    let mut t = [
        Tally::new("Lat Alg N = N for every GF(2) nest"),
        Tally::new("Lat of the rank-one elements of Alg N = N for every GF(2) nest"),
        Tally::new("every non-member has a rank-one witness"),
    ];
    reflexivity_exhaustive::<Gf2>(max_dim, &mut t)?;
    let mut g3 = [
        Tally::new("Lat Alg N = N for every GF(3) nest"),
        Tally::new("Lat of the rank-one elements of Alg N = N for every GF(3) nest"),
        Tally::new("every GF(3) non-member has a rank-one witness"),
    ];
    reflexivity_exhaustive::<Gf3>(max_dim.min(3), &mut g3)?;
    let mut d = [
        Tally::new("rank decomposition: rank-many rank-one summands in Alg N"),
        Tally::new("idempotent onto M: sum of dim M pairwise-annihilating rank-one idempotents"),
        Tally::new("strict approximant lies in Alg N and agrees on the given vectors"),
    ];
    for _ in 0..cases {
        let n = dims(rng, max_dim);
        decomposition_case::<Rational>(rng, n, &mut d);
        decomposition_case::<Gf2>(rng, n, &mut d);
    }
    Ok(t.into_iter().chain(g3).chain(d).collect())
}

fn radical(rng: &mut SeededRng, cases: usize, max_dim: usize, seed: u64) -> Vec<Tally> {
    let mut equal = Tally::new("Rad A = A_- with the predicted dimensions over Q");
    for n in 1..=max_dim.min(6) {
        for atoms in compositions(n) {
            let nest = Nest::<Rational>::from_atoms(&atoms).expect("composition");
            let r = radical_report(&nest);
            equal.record(r.passes() && r.equal == Some(true), || json!({ "atoms": atoms }));
        }
    }
    for _ in 0..cases {
        let n = dims(rng, max_dim);
        let nest: Nest<Rational> = random::nest(rng, n);
        let r = radical_report(&nest);
        equal.record(r.passes() && r.equal == Some(true), || encode::nest(&nest));
    }

    let mut structural = Tally::new("structural radical checks over GF(2)");
    let mut exclusion = Tally::new("exclusion witness makes 1 - (x⊗φ)T singular for T outside A_-");
    let mut probe = Tally::new("probe rejects operators outside A_- and accepts elements of A_-");
    let mut quasi = Tally::new("quasi-inverse of 1 - AT lies in Alg N with series length at most the atom count");
    for case in 0..cases {
        let n = dims(rng, max_dim);
        let g: Nest<Gf2> = random::nest(rng, n);
        let r = radical_report(&g);
        structural.record(r.passes() && r.equal.is_none(), || encode::nest(&g));

        let nest: Nest<Rational> = random::nest(rng, n);
        let alg = alg_basis(&nest).basis;
        let strict = strict_ideal_basis(&nest).basis;
        let mut t = random::combination(rng, &alg, n);
        if in_strict_ideal(&nest, &t).unwrap() {
            t = &t + &Matrix::identity(n);
        }
        let ok = radical_exclusion_witness(&nest, &t)
            .is_ok_and(|w| w.defect.try_invert().unwrap().is_none() && in_alg(&nest, &w.rank_one.matrix).unwrap());
        exclusion.record(ok, || json!({ "nest": encode::nest(&nest), "operator": encode::matrix(&t) }));

        let s = random::combination(rng, &strict, n);
        let probe_seed = seed.wrapping_add(case as u64);
        let ok = !raddef_probe(&nest, &t, 4, probe_seed).unwrap() && raddef_probe(&nest, &s, 4, probe_seed).unwrap();
        probe.record(
            ok,
            || json!({ "nest": encode::nest(&nest), "outside": encode::matrix(&t), "inside": encode::matrix(&s) }),
        );

        let a = random::combination(rng, &alg, n);
        let ok = quasi_inverse(&nest, &a, &s).is_ok_and(|q| {
            let one_minus = &Matrix::identity(n) - &a.matmul(&s);
            q.inverse.matmul(&one_minus) == Matrix::identity(n)
                && one_minus.matmul(&q.inverse) == Matrix::identity(n)
                && in_alg(&nest, &q.inverse).unwrap()
                && q.series_length <= nest.num_atoms()
        });
        quasi.record(ok, || json!({ "nest": encode::nest(&nest), "a": encode::matrix(&a), "t": encode::matrix(&s) }));
    }
    vec![equal, structural, exclusion, probe, quasi]
}

fn dual(rng: &mut SeededRng, cases: usize, max_dim: usize) -> Vec<Tally> {
    let mut double = Tally::new("dual of the dual is the nest");
    let mut reverse = Tally::new("annihilation maps members onto dual members, reversing order and atoms");
    for _ in 0..cases {
        let n = dims(rng, max_dim);
        let nest: Nest<Rational> = random::nest(rng, n);
        let d = nest.dual();
        double.record(d.dual() == nest, || encode::nest(&nest));
        let mut atoms = nest.atom_dims();
        atoms.reverse();
        let ok = d.atom_dims() == atoms
            && nest.chain().iter().all(|a| {
                d.contains_member(&a.annihilator())
                    && nest.chain().iter().all(|b| a.leq(b).unwrap() == b.annihilator().leq(&a.annihilator()).unwrap())
            });
        reverse.record(ok, || encode::nest(&nest));
    }
    let mut families = Tally::new("meet and join identities for every family of subspaces of GF(2)^n");
    for n in 1..=max_dim.min(3) {
        let subs = all_subspaces::<Gf2>(n).expect("finite field");
        let anns: Vec<Subspace<Gf2>> = subs.iter().map(|s| s.annihilator()).collect();
        let count = 1usize << subs.len();
        let mut join = vec![Subspace::zero(n); count];
        let mut meet = vec![Subspace::full(n); count];
        let mut ann_join = vec![Subspace::zero(n); count];
        let mut ann_meet = vec![Subspace::full(n); count];
        for mask in 1..count {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            join[mask] = join[rest].join(&subs[low]).unwrap();
            meet[mask] = meet[rest].meet(&subs[low]).unwrap();
            ann_join[mask] = ann_join[rest].join(&anns[low]).unwrap();
            ann_meet[mask] = ann_meet[rest].meet(&anns[low]).unwrap();
            let ok = ann_meet[mask] == join[mask].annihilator() && ann_join[mask] == meet[mask].annihilator();
            families.record(ok, || json!({ "dim": n, "family": mask }));
        }
    }
    vec![double, reverse, families]
}

type C00Outcome = (Vec<Tally>, Value, Vec<Verdict>);

fn c00_suite(rng: &mut SeededRng, cases: usize, max_dim: usize) -> InputResult<C00Outcome> {
    let mut catalog = serde_json::Map::new();
    let mut verdicts = Vec::new();
    for name in c00::catalog_names() {
        let (payload, v) = c00::analyze(name)?;
        catalog.insert(name.to_string(), payload);
        verdicts.extend(v.into_iter().map(|mut v| {
            v.property = format!("c00: {}", v.property);
            v
        }));
    }
    let mut radical = Tally::new("truncation: Rad A = A_- on each level");
    let mut series = Tally::new("truncation: graded series terminates and equals the inverse of 1 - at");
    for m in 2..=max_dim.max(2) {
        let nest = truncated_dual_nest::<Rational>(m);
        radical.record(radical_report(&nest).equal == Some(true), || json!({ "level": m }));
        let alg = alg_basis(&nest).basis;
        let strict = strict_ideal_basis(&nest).basis;
        for _ in 0..cases {
            let a = random::combination(rng, &alg, m);
            let t = random::combination(rng, &strict, m);
            let q = a.matmul(&t);
            let exact = (&Matrix::identity(m) - &q).try_invert().unwrap();
            let ok = grading_containment(&q, m) && graded_quasi_inverse(&t, &a, m).is_ok_and(|s| exact == Some(s));
            series.record(ok, || json!({ "level": m, "a": encode::matrix(&a), "t": encode::matrix(&t) }));
        }
    }
    Ok((vec![radical, series], Value::Object(catalog), verdicts))
}

fn ordsum(rng: &mut SeededRng, cases: usize, max_dim: usize) -> Vec<Tally> {
    let mut agree = Tally::new("blockwise membership agrees with the summed nest");
    let mut law = Tally::new("Rad = A_- for the sum and both summands");
    let f2 = Nest::<Rational>::flag(2);
    for i in 0..4 {
        for j in 0..4 {
            let t = Matrix::unit(4, i, j);
            let ok = ordsum_analyze(&f2, &f2, &t).is_ok_and(|a| a.agrees() && a.direct.in_radical.is_some());
            agree.record(ok, || json!({ "operator": encode::matrix(&t) }));
        }
    }
    law.record(ordsum_radical_law(&f2, &f2) == Some((true, true, true)), || json!("flag(2) + flag(2)"));
    for _ in 0..cases {
        let (d1, d2) = (dims(rng, max_dim), dims(rng, max_dim));
        let a: Nest<Rational> = random::nest(rng, d1);
        let b: Nest<Rational> = random::nest(rng, d2);
        let s = a.ordinal_sum(&b);
        let n = d1 + d2;
        let candidates = [
            random::combination(rng, &alg_basis(&s).basis, n),
            random::combination(rng, &strict_ideal_basis(&s).basis, n),
            random::matrix(rng, n, n),
        ];
        for t in &candidates {
            let ok = ordsum_analyze(&a, &b, t).is_ok_and(|r| r.agrees());
            agree.record(
                ok,
                || json!({ "first": encode::nest(&a), "second": encode::nest(&b), "operator": encode::matrix(t) }),
            );
        }
        let ok = ordsum_radical_law(&a, &b) == Some((true, true, true));
        law.record(ok, || json!({ "first": encode::nest(&a), "second": encode::nest(&b) }));
    }
    vec![agree, law]
}
