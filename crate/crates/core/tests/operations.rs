use std::sync::Arc;

use facewise::chain::Cochain;
use facewise::ez::naive_higher_diagonal;
use facewise::fixtures;
use facewise::homology::{operation_matrix, HomologyContraction};
use facewise::simplex::SimplicialComplex;
use facewise::simplifier::FormulaCache;
use facewise::steenrod::{
    cup_i, evaluate_tensor, power_cochain, square_cochain, NormalizationConstant, OperationKind,
    OperationRequest,
};
use facewise::Prime;

fn square(i: usize, q: usize) -> OperationRequest {
    OperationRequest {
        prime: Prime::TWO,
        kind: OperationKind::Square { i },
        degree: q,
    }
}

fn power(p: u32, k: usize, q: usize) -> OperationRequest {
    OperationRequest {
        prime: Prime::new(p).unwrap(),
        kind: OperationKind::Power { k },
        degree: q,
    }
}

/// A coboundary `δb` for a deterministic `(q−1)`-cochain `b`.
fn perturbation(k: &SimplicialComplex, q: usize, p: Prime, salt: u32) -> Cochain {
    let b = Cochain::from_values(
        q - 1,
        p,
        k.simplices(q - 1)
            .iter()
            .enumerate()
            .map(|(j, x)| (x.clone(), (j as u32 * 7 + salt) % p.get())),
    );
    b.coboundary(k)
}

#[test]
fn sq1_on_rp2_is_nonzero() {
    let hc = HomologyContraction::compute(&fixtures::rp2(), Prime::TWO);
    let m = operation_matrix(&square(1, 1), &hc, &FormulaCache::new()).unwrap();
    assert_eq!(m.entries, vec![vec![1]]);
}

#[test]
fn sq1_on_torus_vanishes() {
    let hc = HomologyContraction::compute(&fixtures::torus(), Prime::TWO);
    let m = operation_matrix(&square(1, 1), &hc, &FormulaCache::new()).unwrap();
    assert_eq!((m.rows(), m.cols()), (1, 2));
    assert!(m.is_zero());
}

#[test]
fn sq0_is_the_identity() {
    let cache = FormulaCache::new();
    for name in fixtures::names() {
        let k = fixtures::by_name(name).unwrap();
        let hc = HomologyContraction::compute(&k, Prime::TWO);
        for q in 0..=k.dim().unwrap() {
            let m = operation_matrix(&square(0, q), &hc, &cache).unwrap();
            assert!(m.is_identity(), "{name} q={q}: {:?}", m.entries);
        }
    }
}

#[test]
fn top_square_is_the_cup_square() {
    let cache = FormulaCache::new();
    for k in [fixtures::rp2(), fixtures::torus()] {
        let hc = HomologyContraction::compute(&k, Prime::TWO);
        for c in hc.cohomology_basis(1) {
            let sq = square_cochain(&k, &c, 1, &cache).unwrap();
            assert_eq!(sq, facewise::steenrod::cup_product(&k, &c, &c).unwrap());
        }
    }
}

#[test]
fn squares_of_cocycles_are_cocycles_and_class_invariant() {
    let cache = FormulaCache::new();
    for k in [fixtures::rp2(), fixtures::torus(), fixtures::sphere()] {
        let hc = HomologyContraction::compute(&k, Prime::TWO);
        for q in 1..=2 {
            for c in hc.cohomology_basis(q) {
                for i in 0..=q {
                    let target = hc.homology_basis(q + i);
                    let sq = square_cochain(&k, &c, i, &cache).unwrap();
                    assert!(sq.coboundary(&k).is_zero(), "{} q={q} i={i}", k.name());
                    for salt in 0..3 {
                        let c2 = c.add(&perturbation(&k, q, Prime::TWO, salt)).unwrap();
                        let sq2 = square_cochain(&k, &c2, i, &cache).unwrap();
                        for z in &target {
                            assert_eq!(sq.evaluate(z), sq2.evaluate(z));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn powers_of_cocycles_are_cocycles_and_class_invariant() {
    let cache = FormulaCache::new();
    let p = Prime::THREE;
    for k in [fixtures::torus(), fixtures::circle(), fixtures::sphere()] {
        let hc = HomologyContraction::compute(&k, p);
        for q in 1..=2 {
            for c in hc.cohomology_basis(q) {
                let img = power_cochain(&k, &c, 0, &cache).unwrap();
                assert_eq!(img.degree(), q);
                assert!(img.coboundary(&k).is_zero());
                let c2 = c.add(&perturbation(&k, q, p, 1)).unwrap();
                let img2 = power_cochain(&k, &c2, 0, &cache).unwrap();
                for z in hc.homology_basis(q) {
                    assert_eq!(img.evaluate(&z), img2.evaluate(&z));
                }
            }
        }
    }
}

#[test]
fn power_matches_naive_diagonal() {
    // P^0 on H^1(torus; Z_3) runs through D^3_2.
    let k = fixtures::torus();
    let p = Prime::THREE;
    let cache = FormulaCache::new();
    let hc = HomologyContraction::compute(&k, p);
    let r = NormalizationConstant::new(p, 0, 1).0;
    for c in hc.cohomology_basis(1) {
        let fast = power_cochain(&k, &c, 0, &cache).unwrap();
        for x in k.simplices(1) {
            let naive = naive_higher_diagonal(3, 2, x, p).unwrap();
            let v = p.mul(r, evaluate_tensor(&[&c, &c, &c], &naive));
            assert_eq!(fast.value(x), v, "{x}");
        }
    }
}

#[test]
fn power_zero_matrices() {
    let cache = FormulaCache::new();
    let p = Prime::THREE;
    for name in ["circle", "torus", "sphere"] {
        let hc = HomologyContraction::compute(&fixtures::by_name(name).unwrap(), p);
        for q in 1..=2 {
            let m = operation_matrix(&power(3, 0, q), &hc, &cache).unwrap();
            // With R as given, P^0 acts as −1 in every tested degree.
            for (i, row) in m.entries.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    assert_eq!(v, if i == j { 2 } else { 0 }, "{name} q={q}");
                }
            }
        }
    }
}

#[test]
fn requests_are_checked() {
    let hc = HomologyContraction::compute(&fixtures::rp2(), Prime::TWO);
    let cache = FormulaCache::new();
    assert!(operation_matrix(&square(2, 1), &hc, &cache).is_err());
    assert!(operation_matrix(&power(3, 1, 2), &hc, &cache).is_err());
    let hc3 = HomologyContraction::compute(&fixtures::rp2(), Prime::THREE);
    assert!(operation_matrix(&power(3, 1, 1), &hc3, &cache).is_err());
}

#[test]
fn cup_one_is_homotopy_between_cup_orders() {
    // δ(a ⌣_1 b) = ±(a ⌣ b ∓ b ⌣ a) for cocycles; over Z_2 the sum.
    let k = fixtures::torus();
    let p = Prime::TWO;
    let cache = FormulaCache::new();
    let hc = Arc::new(HomologyContraction::compute(&k, p));
    let basis = hc.cohomology_basis(1);
    for a in &basis {
        for b in &basis {
            let lhs = cup_i(&k, a, b, 1, &cache).unwrap().coboundary(&k);
            let rhs = cup_i(&k, a, b, 0, &cache)
                .unwrap()
                .add(&cup_i(&k, b, a, 0, &cache).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
