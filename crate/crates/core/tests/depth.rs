//! Depth computed three ways: Auslander-Buchsbaum from the Betti table,
//! Koszul homology on the variables, and the local Koszul scan; plus the
//! splitting identity of Koszul homology along a sequence.

use gradecone::hilbert::HilbertData;
use gradecone::koszul::{check_splitting, depth_via_koszul, local_depth_via_koszul};
use gradecone::local::{associated_graded, cm_certificate, LocalInstance};
use gradecone::resolution::Presentation;
use gradecone::ring::{PrimeField, Ring};
use gradecone::theorems::{generate_corpus, CorpusKind, CorpusParams};
use gradecone::Error;

fn field() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

fn corpus(kind: CorpusKind, nvars: usize, max_degree: u32, count: usize, seed: u64) -> Vec<LocalInstance<PrimeField>> {
    generate_corpus(&CorpusParams::new(kind, nvars, max_degree, count), seed)
        .iter()
        .map(|f| LocalInstance::from_file(f, field()).unwrap())
        .collect()
}

#[test]
fn graded_depths_agree() {
    for inst in corpus(CorpusKind::Monomial, 3, 5, 60, 31) {
        let g = associated_graded(&inst).unwrap();
        let ab = inst.nvars() - g.betti.pd();
        let p = Presentation::cyclic(&inst.ring, &inst.ideal);
        assert_eq!(depth_via_koszul(&p).unwrap(), ab);
        assert_eq!(local_depth_via_koszul(&inst).unwrap(), ab);
    }
}

fn certified(inst: &LocalInstance<PrimeField>, h: &HilbertData, seed: u64) -> bool {
    cm_certificate(inst, h, seed).unwrap().is_some()
}

#[test]
fn multiplicity_certificate_is_sound() {
    let mut certified_count = 0;
    for (i, inst) in corpus(CorpusKind::PerturbedHomogeneous, 2, 5, 60, 32).iter().enumerate() {
        let g = match associated_graded(inst) {
            Ok(g) => g,
            Err(Error::Limit(_)) => continue,
            Err(e) => panic!("#{i}: {e}"),
        };
        if certified(inst, &g.hilbert, i as u64) {
            certified_count += 1;
            assert_eq!(local_depth_via_koszul(inst).unwrap() as i64, g.hilbert.dim, "#{i}");
        }
    }
    assert!(certified_count > 10, "{certified_count}");
}

#[test]
fn certificate_rejects_embedded_point() {
    // (x^2, xy) has depth 0 in dimension 1
    let inst = LocalInstance::parse(field(), &["x", "y"], &["x^2", "x*y"]).unwrap();
    let g = associated_graded(&inst).unwrap();
    for seed in 0..10 {
        assert!(!certified(&inst, &g.hilbert, seed));
    }
    assert_eq!(local_depth_via_koszul(&inst).unwrap(), 0);
}

#[test]
fn koszul_splitting_identity() {
    for inst in corpus(CorpusKind::Monomial, 3, 4, 25, 33) {
        let ring: &Ring<PrimeField> = &inst.ring;
        let vars: Vec<_> = (0..ring.nvars()).map(|i| ring.var(i)).collect();
        let p = Presentation::cyclic(ring, &inst.ideal);
        assert_eq!(check_splitting(&p, &vars, (0, 10)).unwrap(), None, "{:?}", inst.to_file().ideal);
    }
}
