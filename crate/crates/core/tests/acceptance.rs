//! Acceptance suite: one pass/fail line per criterion.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use facewise::chain::{FormalSum, ProductSimplex, Tensor};
use facewise::contraction::AxiomReport;
use facewise::ez::{aw_n, esa, ez_contraction, naive_higher_diagonal, HomotopySign};
use facewise::fixtures;
use facewise::homology::{operation_matrix, HomologyContraction};
use facewise::simplex::{Simplex, SimplicialComplex};
use facewise::simplifier::{
    generate_dnr, is_all_degenerate, seed_awn, Factor, FormulaCache, IntervalTerm, SignExpr,
};
use facewise::steenrod::{HigherDiagonal, OperationKind, OperationRequest};
use facewise::Prime;

struct Outcome {
    pass: bool,
    detail: String,
}

fn run(id: usize, title: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let in_time = elapsed <= limit;
    let pass = out.pass && in_time;
    println!(
        "criterion {id} {}: {title} [{:.2?} / limit {:?}] {}{}",
        if pass { "PASS" } else { "FAIL" },
        elapsed,
        limit,
        out.detail,
        if in_time { "" } else { " (over time limit)" }
    );
    pass
}

/// Every simplex, degenerate or not, of dimension `m` in the simplicial set
/// of `k`.
fn all_simplices(k: &SimplicialComplex, m: usize) -> Vec<Simplex> {
    let mut out = BTreeSet::new();
    for q in 0..=m.min(k.dim().unwrap_or(0)) {
        for x in k.simplices(q) {
            let v = x.vertices();
            // Multiplicities summing to m + 1 with each at least 1.
            let mut counts = vec![1usize; v.len()];
            let extra = m - q;
            extend(&mut counts, 0, extra, &mut |c| {
                let verts = v
                    .iter()
                    .zip(c)
                    .flat_map(|(&a, &n)| std::iter::repeat_n(a, n))
                    .collect();
                out.insert(Simplex::new(verts).unwrap());
            });
        }
    }
    out.into_iter().collect()
}

fn extend(counts: &mut Vec<usize>, i: usize, left: usize, emit: &mut impl FnMut(&[usize])) {
    if i + 1 == counts.len() {
        counts[i] += left;
        emit(counts);
        counts[i] -= left;
        return;
    }
    for e in 0..=left {
        counts[i] += e;
        extend(counts, i + 1, left - e, emit);
        counts[i] -= e;
    }
}

fn criterion_1() -> Outcome {
    let k = fixtures::sphere();
    let mut large = Vec::new();
    for m in 0..=3 {
        let xs = all_simplices(&k, m);
        for x in &xs {
            for y in &xs {
                if let Ok(t) = ProductSimplex::new(vec![x.clone(), y.clone()]) {
                    if !facewise::chain::Basis::is_degenerate(&t) {
                        large.push(t);
                    }
                }
            }
        }
    }
    let mut small = Vec::new();
    for a in 0..=3 {
        for b in 0..=3 - a {
            for x in k.simplices(a) {
                for y in k.simplices(b) {
                    small.push(Tensor(vec![x.clone(), y.clone()]));
                }
            }
        }
    }
    let mut pass = true;
    let mut detail = format!("{} products, {} tensors;", large.len(), small.len());
    for p in [Prime::TWO, Prime::THREE] {
        let report: AxiomReport =
            ez_contraction(p, HomotopySign::Negated).check_axioms(&large, &small);
        pass &= report.holds();
        detail += &format!(" Z_{p}: {} failures", report.failures());
        let literal = ez_contraction(p, HomotopySign::Displayed).check_axioms(&large, &small);
        detail += &format!(" (displayed sign: {} homotopy)", literal.homotopy);
    }
    Outcome { pass, detail }
}

const DIAGONALS: [(usize, usize); 6] = [(2, 0), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2)];

fn test_simplices() -> Vec<Simplex> {
    let mut out = Vec::new();
    for k in [fixtures::sphere3(), fixtures::rp2()] {
        for q in 0..=4 {
            out.extend(k.simplices(q).iter().cloned());
        }
    }
    // ∂Δ^4 has no 4-simplex; the filled one makes dimension 4 explicit.
    out.push(Simplex::new(vec![0, 1, 2, 3, 4]).unwrap());
    out.sort();
    out.dedup();
    out
}

fn criterion_2(cache: &FormulaCache) -> Outcome {
    let xs = test_simplices();
    let mut checked = 0;
    let mut bad = Vec::new();
    for (n, r) in DIAGONALS {
        let f = cache.get(n, r).unwrap();
        for p in [Prime::TWO, Prime::THREE] {
            let mismatches: Vec<String> = xs
                .par_iter()
                .filter(|x| f.evaluate(x, p) != naive_higher_diagonal(n, r, x, p).unwrap())
                .map(|x| format!("D^{n}_{r} Z_{p} {x}"))
                .collect();
            checked += xs.len();
            bad.extend(mismatches);
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "{checked} evaluations, {} mismatches {:?}",
            bad.len(),
            bad.first()
        ),
    }
}

fn criterion_3() -> Outcome {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut bad = Vec::new();
    let mut n_files = 0;
    for n in 2..=4 {
        for r in 1..=2 {
            n_files += 1;
            let golden =
                std::fs::read_to_string(dir.join(format!("d{n}_{r}.txt"))).unwrap_or_default();
            if generate_dnr(n, r).unwrap().to_string() != golden {
                bad.push(format!("d{n}_{r}"));
            }
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("{n_files} golden files, mismatched: {bad:?}"),
    }
}

fn criterion_4(cache: &FormulaCache) -> Outcome {
    let xs = test_simplices();
    let mut checked = 0;
    let mut bad = Vec::new();
    for (n, r) in DIAGONALS {
        let hd = HigherDiagonal::new(n, r, cache).unwrap();
        for p in [Prime::TWO, Prime::THREE] {
            bad.extend(
                xs.par_iter()
                    .filter(|x| !hd.recurrence_holds(x, p))
                    .map(|x| format!("D^{n}_{r} Z_{p} {x}"))
                    .collect::<Vec<_>>(),
            );
            checked += xs.len();
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("{checked} checks, {} failures {:?}", bad.len(), bad.first()),
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn criterion_5() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    // AW_(n) on the diagonal of a generic m-simplex: summands and face counts.
    let mut aw_c = 0f64;
    let mut aw_data = Vec::new();
    for n in 2..=4usize {
        for m in 1..=8usize {
            let x = Simplex::new((0..=m as u32).collect()).unwrap();
            let p = Prime::THREE;
            let summands =
                aw_n(&FormalSum::basis(p, ProductSimplex::diagonal(&x, n))).len() as u128;
            if summands != binomial((m + n - 1) as u128, (n - 1) as u128) {
                pass = false;
                notes.push(format!("aw_{n} m={m}: {summands} summands"));
            }
            let mut seed = facewise::simplifier::IntervalFormula::empty(n, 0);
            seed.terms.push(seed_awn(n));
            let faces = seed.count_face_operators(m) as f64;
            let ratio = faces / (n as f64 * (m as f64).powi(n as i32));
            if m <= 3 {
                aw_c = aw_c.max(ratio);
            }
            aw_data.push(ratio);
        }
    }
    if aw_data.iter().any(|&r| r > aw_c) {
        pass = false;
        notes.push("aw_n face counts exceed fitted bound".into());
    }
    let mut dnr_c = 0f64;
    let mut dnr_data = Vec::new();
    for p in 2..=3usize {
        for r in 0..=2usize {
            let f = generate_dnr(p, r).unwrap();
            for m in 1..=6usize {
                let faces = f.count_face_operators(m) as f64;
                let bound = (p as f64).powi(r as i32 + 1) * (m as f64).powi((p + r + 1) as i32);
                let ratio = faces / bound;
                if m <= 3 {
                    dnr_c = dnr_c.max(ratio);
                }
                dnr_data.push(ratio);
            }
        }
    }
    if dnr_data.iter().any(|&r| r > dnr_c) {
        pass = false;
        notes.push("D^p_r face counts exceed fitted bound".into());
    }
    Outcome {
        pass,
        detail: format!("aw_n c={aw_c:.3}, D^p_r c={dnr_c:.3} {notes:?}"),
    }
}

fn criterion_6(cache: &FormulaCache) -> Outcome {
    let mut bad = Vec::new();
    let ranks = [
        ("circle", 2, vec![1, 1]),
        ("circle", 3, vec![1, 1]),
        ("sphere", 2, vec![1, 0, 1]),
        ("sphere", 3, vec![1, 0, 1]),
        ("torus", 2, vec![1, 2, 1]),
        ("rp2", 2, vec![1, 1, 1]),
        ("rp2", 3, vec![1, 0, 0]),
    ];
    for (name, p, expected) in ranks {
        let hc =
            HomologyContraction::compute(&fixtures::by_name(name).unwrap(), Prime::new(p).unwrap());
        if hc.ranks() != expected {
            bad.push(format!("{name} Z_{p} ranks {:?}", hc.ranks()));
        }
    }
    let sq = |i, q| OperationRequest {
        prime: Prime::TWO,
        kind: OperationKind::Square { i },
        degree: q,
    };
    for name in fixtures::names() {
        let k = fixtures::by_name(name).unwrap();
        let hc = HomologyContraction::compute(&k, Prime::TWO);
        for q in 0..=k.dim().unwrap() {
            if !operation_matrix(&sq(0, q), &hc, cache)
                .unwrap()
                .is_identity()
            {
                bad.push(format!("Sq^0 {name} q={q}"));
            }
        }
    }
    let rp2 = HomologyContraction::compute(&fixtures::rp2(), Prime::TWO);
    if operation_matrix(&sq(1, 1), &rp2, cache).unwrap().is_zero() {
        bad.push("Sq^1 = 0 on RP^2".into());
    }
    let torus = HomologyContraction::compute(&fixtures::torus(), Prime::TWO);
    if !operation_matrix(&sq(1, 1), &torus, cache)
        .unwrap()
        .is_zero()
    {
        bad.push("Sq^1 != 0 on torus".into());
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("failures: {bad:?}"),
    }
}

fn random_term(rng: &mut impl Rng) -> IntervalTerm {
    loop {
        let n = rng.gen_range(2..=4);
        let slots = n + rng.gen_range(0..=2);
        let mut owner: Vec<usize> = (0..n).collect();
        owner.extend((n..slots).map(|_| rng.gen_range(0..n)));
        // Shuffle which factor owns each interval.
        for i in (1..owner.len()).rev() {
            owner.swap(i, rng.gen_range(0..=i));
        }
        let mut sources: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            sources.swap(i, rng.gen_range(0..=i));
        }
        let factors = (0..n)
            .map(|t| Factor {
                source: sources[t],
                slots: (1..=slots).filter(|&s| owner[s - 1] == t).collect(),
            })
            .collect();
        let sign = (1..=slots).fold(SignExpr::zero(), |acc, j| {
            if rng.gen_bool(0.5) {
                acc + SignExpr::var(j)
            } else {
                acc
            }
        });
        let term = IntervalTerm {
            n,
            slots,
            factors,
            sign,
            origin: Vec::new(),
        };
        if term.check_integrity().is_ok() {
            return term;
        }
    }
}

fn generic_tuple(n: usize, m: usize) -> ProductSimplex {
    ProductSimplex::new(
        (0..n as u32)
            .map(|j| Simplex::new((0..=m as u32).map(|v| 16 * j + v).collect()).unwrap())
            .collect(),
    )
    .unwrap()
}

fn criterion_7() -> Outcome {
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
    let mut flagged = Vec::new();
    let mut drawn = 0;
    while flagged.len() < 1000 {
        drawn += 1;
        let h = random_term(&mut rng);
        let level = rng.gen_range(0..=h.n - 2);
        if is_all_degenerate(&h, level).unwrap() {
            flagged.push((h, level));
        }
    }
    let bad: Vec<String> = flagged
        .par_iter()
        .filter_map(|(h, level)| {
            (0..=3).find_map(|m| {
                let p = Prime::THREE;
                let input = FormalSum::basis(p, generic_tuple(h.n, m));
                let out = h.evaluate_chain(&esa(h.n, *level, &input).unwrap());
                (!out.is_zero()).then(|| format!("{h} level {level} m={m}"))
            })
        })
        .collect();
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "{} flagged of {drawn} drawn, {} nonzero {:?}",
            flagged.len(),
            bad.len(),
            bad.first()
        ),
    }
}

fn main() {
    let cache = FormulaCache::new();
    let s = Duration::from_secs;
    let results = [
        run(
            1,
            "EZ contraction axioms on ∂Δ^3 × ∂Δ^3",
            s(10),
            criterion_1,
        ),
        run(
            2,
            "oracle equivalence of generated diagonals",
            s(300),
            || criterion_2(&cache),
        ),
        run(3, "golden formulas D^n_1, D^n_2", s(10), criterion_3),
        run(4, "higher diagonal recurrence", s(120), || {
            criterion_4(&cache)
        }),
        run(5, "complexity bounds", s(60), criterion_5),
        run(6, "topology regressions", s(30), || criterion_6(&cache)),
        run(7, "degeneracy soundness", s(60), criterion_7),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
