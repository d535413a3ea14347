//! The first steps of a minimal resolution over a graded quotient ring
//! A = R/J, and the complexity estimate read off its Betti numbers.

use serde::{Deserialize, Serialize};

use super::{prune_units, Presentation};
use crate::groebner::{minimal_generators, syzygy_module};
use crate::ring::{Field, FreeModule, Polynomial, Vector};
use crate::Error;

/// Graded Betti data of steps 0..=N of a minimal resolution over R/J.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteStageBetti {
    /// Basis degrees of each step, sorted ascending.
    pub degrees: Vec<Vec<i64>>,
}

impl FiniteStageBetti {
    pub fn totals(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.len()).collect()
    }
}

/// J·F as generators: f·e_c for every generator f and basis element e_c.
fn extend_ideal<F: Field>(fm: &FreeModule<F>, ideal: &[Polynomial<F>]) -> Vec<Vector<F>> {
    (0..fm.rank())
        .flat_map(|c| ideal.iter().map(move |f| fm.from_polynomial(f, c)))
        .filter(|v| !v.is_zero())
        .collect()
}

/// Steps 0..=stages of a minimal graded resolution of coker(presentation)
/// over R/J. Elements are carried as representatives over R, with J·F
/// adjoined to every submodule, so no quotient-ring arithmetic is needed.
pub fn finite_stage_resolution<F: Field>(
    ideal: &[Polynomial<F>],
    presentation: &Presentation<F>,
    stages: usize,
) -> Result<FiniteStageBetti, Error> {
    if stages < 2 {
        return Err(Error::Usage(format!("at least 2 stages are needed, got {stages}")));
    }
    if let Some(f) = ideal.iter().find(|f| !f.is_homogeneous()) {
        return Err(Error::NotHomogeneous(presentation.module.ring().format(f)));
    }
    if let Some(bad) = presentation.columns.iter().find(|c| !presentation.module.is_homogeneous(c)) {
        return Err(Error::NotHomogeneous(presentation.module.format(bad)));
    }
    let p = prune_units(presentation);
    let mut fm = p.module.clone();
    let base = extend_ideal(&fm, ideal);
    // a generator of F_0 lying in J·F_0 + columns would make the
    // presentation non-minimal over A; the unit pruning above handles R,
    // and J has no constants, so F_0 is already minimal
    let (mut cols, gb) = minimal_generators(&fm, &base, &p.columns)?;
    if gb.is_everything() || fm.rank() == 0 {
        return Err(Error::ZeroModule);
    }
    let mut degrees = vec![fm.degrees().to_vec()];
    for _ in 0..stages {
        if cols.is_empty() {
            degrees.push(Vec::new());
            continue;
        }
        let modulo = extend_ideal(&fm, ideal);
        let (e, syz) = syzygy_module(&fm, &cols, &modulo)?;
        let base = extend_ideal(&e, ideal);
        let (next, _) = minimal_generators(&e, &base, &syz)?;
        degrees.push(e.degrees().to_vec());
        fm = e;
        cols = next;
    }
    Ok(FiniteStageBetti { degrees })
}

/// Complexity estimate from a finite Betti sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityEstimate {
    pub cx: usize,
    /// The differences used for the estimate vanish on the last three entries.
    pub stable: bool,
}

/// Smallest b such that the tail of the sequence looks like a polynomial of
/// degree b − 1: the b-th finite difference vanishes on its last three
/// entries (b = 0 when the sequence itself ends in three zeros). This is a
/// heuristic; finite data cannot certify an asymptotic growth rate.
pub fn estimate_complexity(betti: &[usize]) -> Result<ComplexityEstimate, Error> {
    const NEEDED: usize = 5;
    if betti.len() < NEEDED {
        return Err(Error::TooShort {
            needed: NEEDED,
            got: betti.len(),
        });
    }
    let mut seq: Vec<i64> = betti.iter().map(|&b| b as i64).collect();
    let tail_zero = |s: &[i64]| s.len() >= 3 && s[s.len() - 3..].iter().all(|&v| v == 0);
    let mut k = 0;
    loop {
        if tail_zero(&seq) {
            return Ok(ComplexityEstimate { cx: k, stable: true });
        }
        if seq.len() <= 3 {
            return Ok(ComplexityEstimate { cx: k + 1, stable: false });
        }
        seq = seq.windows(2).map(|w| w[1] - w[0]).collect();
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{MonomialOrder, Rationals, Ring};

    fn ring() -> Ring<Rationals> {
        Ring::new(Rationals, &["x", "y"], MonomialOrder::GRevLex).unwrap()
    }

    fn parse_all(r: &Ring<Rationals>, s: &[&str]) -> Vec<Polynomial<Rationals>> {
        s.iter().map(|t| r.parse(t).unwrap()).collect()
    }

    #[test]
    fn residue_field_over_artinian_ci() {
        let r = ring();
        let j = parse_all(&r, &["x^2", "y^2"]);
        let k = Presentation::cyclic(&r, &parse_all(&r, &["x", "y"]));
        let b = finite_stage_resolution(&j, &k, 6).unwrap();
        assert_eq!(b.totals(), vec![1, 2, 3, 4, 5, 6, 7]);
        // linear resolution
        for (i, d) in b.degrees.iter().enumerate() {
            assert!(d.iter().all(|&x| x == i as i64));
        }
    }

    #[test]
    fn periodic_module() {
        let r = ring();
        let j = parse_all(&r, &["x^2", "y^2"]);
        let m = Presentation::cyclic(&r, &parse_all(&r, &["x"]));
        let b = finite_stage_resolution(&j, &m, 6).unwrap();
        assert_eq!(b.totals(), vec![1; 7]);
    }

    #[test]
    fn polynomial_ring_is_koszul() {
        let r = ring();
        let k = Presentation::cyclic(&r, &parse_all(&r, &["x", "y"]));
        let b = finite_stage_resolution(&[], &k, 4).unwrap();
        assert_eq!(b.totals(), vec![1, 2, 1, 0, 0]);
    }

    #[test]
    fn complexity_examples() {
        assert_eq!(estimate_complexity(&[1, 1, 1, 1, 1, 1, 1]).unwrap(), ComplexityEstimate { cx: 1, stable: true });
        assert_eq!(estimate_complexity(&[1, 2, 3, 4, 5, 6, 7]).unwrap(), ComplexityEstimate { cx: 2, stable: true });
        assert_eq!(estimate_complexity(&[1, 2, 1, 0, 0, 0, 0]).unwrap(), ComplexityEstimate { cx: 0, stable: true });
        assert_eq!(estimate_complexity(&[1, 3, 6, 10, 15, 21]).unwrap().cx, 3);
        assert!(matches!(estimate_complexity(&[1, 2, 3]), Err(Error::TooShort { needed: 5, got: 3 })));
    }

    #[test]
    fn exponential_growth_is_unstable() {
        let e = estimate_complexity(&[1, 2, 4, 8, 16, 32]).unwrap();
        assert!(!e.stable);
    }
}
