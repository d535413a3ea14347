//! Invariants of Gröbner bases and minimal resolutions on random
//! homogeneous ideals, with graded Tor from the Koszul complex as the
//! independent oracle for the Betti numbers.

use proptest::prelude::*;

use gradecone::groebner::ideal_basis;
use gradecone::koszul::koszul_homology_on_variables;
use gradecone::resolution::{betti_table, minimal_free_resolution, Presentation};
use gradecone::ring::{Field, Monomial, MonomialOrder, Polynomial, PrimeField, Ring};

fn ring(n: usize) -> Ring<PrimeField> {
    let names = ["x", "y", "z"];
    Ring::new(PrimeField::new(32003).unwrap(), &names[..n], MonomialOrder::GRevLex).unwrap()
}

/// (degree, [(coefficient, monomial index)]) per generator.
type Spec = Vec<(u32, Vec<(i64, usize)>)>;

fn spec(max_gens: usize) -> impl Strategy<Value = Spec> {
    prop::collection::vec(
        (1u32..=4, prop::collection::vec((-4i64..=4, 0usize..64), 1..=3)),
        1..=max_gens,
    )
}

fn build(r: &Ring<PrimeField>, s: &Spec) -> Vec<Polynomial<PrimeField>> {
    s.iter()
        .map(|(d, terms)| {
            let monos = Monomial::all_of_degree(r.nvars(), *d);
            let terms = terms
                .iter()
                .map(|&(c, i)| (r.field().from_i64(c), monos[i % monos.len()].clone()))
                .collect();
            r.from_terms(terms)
        })
        .filter(|f| !f.is_zero())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, ..ProptestConfig::default() })]

    #[test]
    fn groebner_basis_contains_generators(n in 2usize..=3, s in spec(4)) {
        let r = ring(n);
        let gens = build(&r, &s);
        let gb = ideal_basis(&r, &gens);
        prop_assert!(gb.verify());
        for g in &gens {
            prop_assert!(gb.contains_polynomial(g));
        }
    }

    #[test]
    fn resolution_is_minimal_exact_and_short(n in 2usize..=3, s in spec(4)) {
        let r = ring(n);
        let gens = build(&r, &s);
        prop_assume!(!gens.is_empty());
        let p = Presentation::cyclic(&r, &gens);
        let res = minimal_free_resolution(&p).unwrap();
        prop_assert!(res.is_minimal());
        prop_assert!(res.verify_complex());
        prop_assert!(res.verify_exactness().unwrap());
        prop_assert!(res.length() <= n);
        for d in res.degrees() {
            prop_assert!(d.windows(2).all(|w| w[0] <= w[1]), "twists not sorted: {:?}", d);
        }
        let bt = betti_table(&res).unwrap();
        prop_assert!(bt.pd() <= n);
        prop_assert!(bt.alpha().windows(2).all(|w| w[0] < w[1]), "alpha {:?}", bt.alpha());
        prop_assert!(bt.gamma().windows(2).all(|w| w[0] < w[1]), "gamma {:?}", bt.gamma());
    }

    #[test]
    fn betti_numbers_match_koszul_tor(n in 2usize..=3, s in spec(3)) {
        let r = ring(n);
        let gens = build(&r, &s);
        prop_assume!(!gens.is_empty());
        let p = Presentation::cyclic(&r, &gens);
        let bt = betti_table(&minimal_free_resolution(&p).unwrap()).unwrap();
        let tor = koszul_homology_on_variables(&p).unwrap();
        for i in 0..=n {
            for j in tor.range.0..=tor.range.1 {
                prop_assert_eq!(bt.get(i, j), tor.get(i, j), "beta_{},{}", i, j);
            }
        }
        for ((i, j), b) in bt.entries() {
            prop_assert_eq!(b, tor.get(i, j));
        }
    }
}

#[test]
fn twisted_cubic_resolution() {
    // 2x2 minors of [[x, y, z], [y, z, w]]: the Eagon-Northcott complex
    let r = Ring::new(PrimeField::new(32003).unwrap(), &["x", "y", "z", "w"], MonomialOrder::GRevLex).unwrap();
    let gens: Vec<_> = ["x*z - y^2", "x*w - y*z", "y*w - z^2"].iter().map(|s| r.parse(s).unwrap()).collect();
    let res = minimal_free_resolution(&Presentation::cyclic(&r, &gens)).unwrap();
    assert_eq!(res.twists(), vec![vec![0], vec![-2, -2, -2], vec![-3, -3]]);
    assert!(res.verify_exactness().unwrap());
}

#[test]
fn four_variable_complete_intersection() {
    let r = Ring::new(PrimeField::new(32003).unwrap(), &["x", "y", "z", "w"], MonomialOrder::GRevLex).unwrap();
    let gens: Vec<_> = ["x^2", "y^2", "z^2", "w^2"].iter().map(|s| r.parse(s).unwrap()).collect();
    let bt = betti_table(&minimal_free_resolution(&Presentation::cyclic(&r, &gens)).unwrap()).unwrap();
    assert_eq!(bt.totals(), vec![1, 4, 6, 4, 1]);
    assert_eq!(bt.alpha(), &[0, 2, 4, 6, 8]);
    assert!(bt.is_pure());
}
