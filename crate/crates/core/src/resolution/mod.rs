//! Minimal graded free resolutions, Betti tables and the invariants derived
//! from them; finite-stage resolutions over graded quotient rings.

mod betti;
mod finite;

pub use betti::{homological_invariants, BettiTable, HomologicalInvariants};
pub use finite::{estimate_complexity, finite_stage_resolution, ComplexityEstimate, FiniteStageBetti};

use crate::groebner::{buchberger, syzygy_module, GroebnerBasis};
use crate::ring::{Field, FreeModule, Monomial, MonomialOrder, Polynomial, Ring, Vector};
use crate::Error;

/// A graded module given as the cokernel of a homogeneous matrix: the
/// columns generate a submodule of ⊕ R(-row_degrees[i]).
#[derive(Clone, Debug)]
pub struct Presentation<F: Field> {
    pub module: FreeModule<F>,
    pub columns: Vec<Vector<F>>,
}

impl<F: Field> Presentation<F> {
    /// R/I for an ideal given by generators.
    pub fn cyclic(ring: &Ring<F>, ideal: &[Polynomial<F>]) -> Self {
        let module = FreeModule::free(ring.clone(), 1);
        let columns = ideal.iter().map(|f| module.from_polynomial(f, 0)).collect();
        Presentation { module, columns }
    }

    /// The free module ⊕ R(-d).
    pub fn free(ring: &Ring<F>, degrees: Vec<i64>) -> Self {
        Presentation {
            module: FreeModule::new(ring.clone(), degrees),
            columns: Vec::new(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.columns.iter().all(|c| self.module.is_homogeneous(c))
    }
}

/// Remove unit entries by Gaussian cancellation. Pivot choice is
/// deterministic: lowest row, then lowest column.
pub fn prune_units<F: Field>(p: &Presentation<F>) -> Presentation<F> {
    let mut fm = p.module.clone();
    let mut cols: Vec<Vector<F>> = p.columns.iter().filter(|c| !c.is_zero()).cloned().collect();
    loop {
        let ring = fm.ring();
        let field = fm.field();
        let mut pivot = None;
        'search: for row in 0..fm.rank() {
            for (c, col) in cols.iter().enumerate() {
                let entry = fm.component(col, row);
                let k = ring.constant_term(&entry);
                if !field.is_zero(&k) {
                    pivot = Some((row, c, k));
                    break 'search;
                }
            }
        }
        let Some((row, c, unit)) = pivot else { break };
        let pcol = cols.remove(c);
        let inv = field.inv(&unit).expect("unit");
        let pivot_entry = fm.component(&pcol, row);
        // homogeneous pivot columns have a constant entry only; otherwise the
        // entry is 1 + (higher terms) and we only cancel by its constant part
        debug_assert!(!p.is_homogeneous() || pivot_entry.len() == 1);
        let cols2: Vec<Vector<F>> = cols
            .iter()
            .map(|col| {
                let e = fm.component(col, row);
                let factor = ring.scale(&e, &inv);
                fm.sub(col, &fm.mul_poly(&factor, &pcol))
            })
            .collect();
        let mut degrees = fm.degrees().to_vec();
        degrees.remove(row);
        let smaller = FreeModule::new(ring.clone(), degrees);
        let drop_row = |v: &Vector<F>| {
            let comps = fm.components(v);
            let kept: Vec<Polynomial<F>> = comps
                .into_iter()
                .enumerate()
                .filter(|(i, _)| *i != row)
                .map(|(_, q)| q)
                .collect();
            smaller.from_components(&kept)
        };
        cols = cols2.iter().map(drop_row).filter(|v| !v.is_zero()).collect();
        fm = smaller;
    }
    Presentation { module: fm, columns: cols }
}

/// A graded free resolution ... → F_2 → F_1 → F_0. `maps[i]` holds the
/// columns of d_{i+1}: F_{i+1} → F_i as elements of F_i.
#[derive(Clone, Debug)]
pub struct GradedFreeResolution<F: Field> {
    modules: Vec<FreeModule<F>>,
    maps: Vec<Vec<Vector<F>>>,
    minimal: bool,
}

impl<F: Field> GradedFreeResolution<F> {
    /// Assemble a resolution from explicit data; minimality is detected.
    pub fn from_parts(modules: Vec<FreeModule<F>>, maps: Vec<Vec<Vector<F>>>) -> Self {
        let mut res = GradedFreeResolution {
            modules,
            maps,
            minimal: false,
        };
        res.minimal = res.has_no_unit_entries();
        res
    }

    pub fn ring(&self) -> &Ring<F> {
        self.modules[0].ring()
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn modules(&self) -> &[FreeModule<F>] {
        &self.modules
    }

    pub fn maps(&self) -> &[Vec<Vector<F>>] {
        &self.maps
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// Basis degrees of each step.
    pub fn degrees(&self) -> Vec<Vec<i64>> {
        self.modules.iter().map(|m| m.degrees().to_vec()).collect()
    }

    /// Twists as written in R(-a): the negated basis degrees.
    pub fn twists(&self) -> Vec<Vec<i64>> {
        self.modules.iter().map(|m| m.degrees().iter().map(|d| -d).collect()).collect()
    }

    fn has_no_unit_entries(&self) -> bool {
        self.maps
            .iter()
            .all(|cols| cols.iter().all(|c| c.terms().iter().all(|t| !t.mono.is_one())))
    }

    /// Apply d_i (i ≥ 1) to an element of F_i.
    pub fn apply(&self, i: usize, v: &Vector<F>) -> Vector<F> {
        let src = &self.modules[i];
        let dst = &self.modules[i - 1];
        let comps = src.components(v);
        dst.combine(&comps, &self.maps[i - 1])
    }

    /// d_i ∘ d_{i+1} = 0 for every i.
    pub fn verify_complex(&self) -> bool {
        (1..self.maps.len()).all(|i| self.maps[i].iter().all(|col| self.apply(i, col).is_zero()))
    }

    /// Exactness at each interior step: every syzygy of the columns of d_i
    /// lies in the span of the columns of d_{i+1}, and the last map is
    /// injective.
    pub fn verify_exactness(&self) -> Result<bool, Error> {
        for i in 0..self.maps.len() {
            let fm = &self.modules[i];
            let (e, syz) = syzygy_module(fm, &self.maps[i], &[])?;
            let next: Vec<Vector<F>> = match self.maps.get(i + 1) {
                Some(cols) => cols.iter().map(|c| e.adopt(c)).collect(),
                None => Vec::new(),
            };
            let gb = buchberger(&e, &next)?;
            if !syz.iter().all(|s| gb.contains(s)) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Minimal graded free resolution of the cokernel of a homogeneous
/// presentation over a polynomial ring.
///
/// A Schreyer frame is built first: a Gröbner basis of the columns, then at
/// each step the syzygies of the previous basis, which already form a
/// Gröbner basis for the induced Schreyer order. Sorting each basis
/// lexicographically inside a component keeps the frame no longer than the
/// number of variables. The frame is then made minimal by cancelling unit
/// entries.
pub fn minimal_free_resolution<F: Field>(p: &Presentation<F>) -> Result<GradedFreeResolution<F>, Error> {
    if let Some(bad) = p.columns.iter().find(|c| !p.module.is_homogeneous(c)) {
        return Err(Error::NotHomogeneous(p.module.format(bad)));
    }
    let p = prune_units(p);
    if p.module.rank() == 0 {
        return Err(Error::ZeroModule);
    }
    let nvars = p.module.ring().nvars();
    let (modules, maps) = schreyer_frame(&p.module, &p.columns)?;
    assert!(maps.len() <= nvars, "frame longer than the number of variables");
    let res = minimize(modules, maps);
    debug_assert!(res.is_minimal());
    Ok(res)
}

/// Inside each leading component, leading monomials descending in lex.
fn sort_for_schreyer<F: Field>(gens: &mut [Vector<F>]) {
    gens.sort_by(|a, b| {
        let (la, lb) = (a.lead().expect("nonzero"), b.lead().expect("nonzero"));
        la.comp
            .cmp(&lb.comp)
            .then_with(|| MonomialOrder::Lex.cmp(&lb.mono, &la.mono))
    });
}

type Frame<F> = (Vec<FreeModule<F>>, Vec<Vec<Vector<F>>>);

fn schreyer_frame<F: Field>(f0: &FreeModule<F>, columns: &[Vector<F>]) -> Result<Frame<F>, Error> {
    let mut gens = buchberger(f0, columns)?.generators().to_vec();
    sort_for_schreyer(&mut gens);
    let mut modules = vec![f0.clone()];
    let mut maps = Vec::new();
    while !gens.is_empty() {
        let fm = modules.last().expect("nonempty").clone();
        let next = FreeModule::schreyer(&fm, &gens);
        let gb = GroebnerBasis::from_known_basis(fm, gens);
        let mut syz = schreyer_syzygies(&gb, &next);
        sort_for_schreyer(&mut syz);
        maps.push(gb.generators().to_vec());
        modules.push(next);
        gens = syz;
    }
    Ok((modules, maps))
}

/// One syzygy per minimal leading term m_ab e_a (a < b), where m_ab is
/// lcm(lead g_a, lead g_b) / lead g_a. These generate the syzygies of the
/// basis and form a Gröbner basis in `target`.
fn schreyer_syzygies<F: Field>(gb: &GroebnerBasis<F>, target: &FreeModule<F>) -> Vec<Vector<F>> {
    let fm = gb.module();
    let ring = fm.ring();
    let k = fm.field();
    let leads = gb.leading_terms();
    let gens = gb.generators();
    let mut out = Vec::new();
    for a in 0..gens.len() {
        let mut cands: Vec<(Monomial, usize)> = (a + 1..gens.len())
            .filter(|&b| leads[b].comp == leads[a].comp)
            .map(|b| {
                let l = leads[a].mono.lcm(&leads[b].mono);
                (leads[a].mono.quotient_of(&l).expect("lcm"), b)
            })
            .collect();
        cands.sort_by_key(|c| (c.0.degree(), c.1));
        let mut kept: Vec<(Monomial, usize)> = Vec::new();
        for (m, b) in cands {
            if !kept.iter().any(|(q, _)| q.divides(&m)) {
                kept.push((m, b));
            }
        }
        for (ma, b) in kept {
            let l = leads[a].mono.mul(&ma);
            let mb = leads[b].mono.quotient_of(&l).expect("lcm");
            let ca = k.inv(&leads[a].coeff).expect("nonzero lead");
            let cb = k.inv(&leads[b].coeff).expect("nonzero lead");
            let s = fm.sub(&fm.mul_term(&gens[a], &ca, &ma), &fm.mul_term(&gens[b], &cb, &mb));
            let (quots, rem) = gb.divide(&s);
            debug_assert!(rem.is_zero(), "frame step is not a Gröbner basis");
            let mut comps: Vec<Polynomial<F>> = quots.iter().map(|q| ring.neg(q)).collect();
            comps[a] = ring.add(&comps[a], &ring.monomial(ca, ma));
            comps[b] = ring.sub(&comps[b], &ring.monomial(cb, mb));
            out.push(target.from_components(&comps));
        }
    }
    out
}

/// Cancel unit entries of a free resolution, lowest homological step first,
/// pivoting on the lowest row and then the lowest column. A unit u at row r,
/// column c of d_i splits off R(-a) → R(-a): column c leaves d_i after
/// clearing row r from the other columns, row c leaves d_{i+1} and column r
/// leaves d_{i-1}. Each module's basis is finally sorted by degree.
fn minimize<F: Field>(modules: Vec<FreeModule<F>>, maps: Vec<Vec<Vector<F>>>) -> GradedFreeResolution<F> {
    let ring = modules[0].ring().clone();
    let field = ring.field().clone();
    let mut degrees: Vec<Vec<i64>> = modules.iter().map(|m| m.degrees().to_vec()).collect();
    // mats[i][col][row], the dense matrix of d_{i+1}
    let mut mats: Vec<Vec<Vec<Polynomial<F>>>> = maps
        .iter()
        .enumerate()
        .map(|(i, cols)| cols.iter().map(|c| modules[i].components(c)).collect())
        .collect();
    for i in 0..mats.len() {
        loop {
            let mut pivot = None;
            'search: for r in 0..degrees[i].len() {
                for (c, col) in mats[i].iter().enumerate() {
                    if degrees[i + 1][c] != degrees[i][r] {
                        continue;
                    }
                    let u = ring.constant_term(&col[r]);
                    if !field.is_zero(&u) {
                        pivot = Some((r, c, u));
                        break 'search;
                    }
                }
            }
            let Some((r, c, u)) = pivot else { break };
            let inv = field.inv(&u).expect("unit");
            let pcol = mats[i].remove(c);
            for col in mats[i].iter_mut() {
                if col[r].is_zero() {
                    continue;
                }
                let factor = ring.scale(&col[r], &inv);
                for (e, pe) in col.iter_mut().zip(&pcol) {
                    if !pe.is_zero() {
                        *e = ring.sub(e, &ring.mul(&factor, pe));
                    }
                }
            }
            for col in mats[i].iter_mut() {
                col.remove(r);
            }
            if let Some(next) = mats.get_mut(i + 1) {
                for col in next.iter_mut() {
                    col.remove(c);
                }
            }
            if i > 0 {
                mats[i - 1].remove(r);
            }
            degrees[i].remove(r);
            degrees[i + 1].remove(c);
        }
    }
    while mats.last().is_some_and(|m| m.is_empty()) {
        mats.pop();
        degrees.pop();
    }
    // sort every basis by degree, keeping the relative order otherwise
    let perms: Vec<Vec<usize>> = degrees
        .iter()
        .map(|d| {
            let mut idx: Vec<usize> = (0..d.len()).collect();
            idx.sort_by_key(|&j| d[j]);
            idx
        })
        .collect();
    let out_modules: Vec<FreeModule<F>> = perms
        .iter()
        .zip(&degrees)
        .map(|(p, d)| FreeModule::new(ring.clone(), p.iter().map(|&j| d[j]).collect()))
        .collect();
    let out_maps: Vec<Vec<Vector<F>>> = mats
        .iter()
        .enumerate()
        .map(|(i, m)| {
            perms[i + 1]
                .iter()
                .map(|&c| {
                    let comps: Vec<Polynomial<F>> = perms[i].iter().map(|&r| m[c][r].clone()).collect();
                    out_modules[i].from_components(&comps)
                })
                .collect()
        })
        .collect();
    GradedFreeResolution::from_parts(out_modules, out_maps)
}

/// Betti table of a minimal resolution.
pub fn betti_table<F: Field>(res: &GradedFreeResolution<F>) -> Result<BettiTable, Error> {
    if !res.is_minimal() {
        return Err(Error::NotMinimal("a differential has a unit entry".into()));
    }
    BettiTable::from_degrees(&res.degrees())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{MonomialOrder, PrimeField, Rationals};

    fn ring() -> Ring<Rationals> {
        Ring::new(Rationals, &["x", "y"], MonomialOrder::GRevLex).unwrap()
    }

    fn resolve(ideal: &[&str]) -> GradedFreeResolution<Rationals> {
        let r = ring();
        let gens: Vec<_> = ideal.iter().map(|s| r.parse(s).unwrap()).collect();
        minimal_free_resolution(&Presentation::cyclic(&r, &gens)).unwrap()
    }

    #[test]
    fn embedded_shifts() {
        let res = resolve(&["x^2", "x*y"]);
        assert_eq!(res.twists(), vec![vec![0], vec![-2, -2], vec![-3]]);
        assert!(res.verify_complex());
        assert!(res.verify_exactness().unwrap());
    }

    #[test]
    fn quasipure_shifts() {
        let res = resolve(&["x^3", "x^2*y", "y^4"]);
        assert_eq!(res.twists(), vec![vec![0], vec![-3, -3, -4], vec![-4, -6]]);
    }

    #[test]
    fn residue_field_is_koszul() {
        let res = resolve(&["x", "y"]);
        assert_eq!(res.twists(), vec![vec![0], vec![-1, -1], vec![-2]]);
    }

    #[test]
    fn non_homogeneous_is_rejected() {
        let r = ring();
        let p = Presentation::cyclic(&r, &[r.parse("x^2 - y^3").unwrap()]);
        assert!(matches!(minimal_free_resolution(&p), Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let res = resolve(&["x^2", "x*y", "x^2 + x*y", "x^3"]);
        assert_eq!(res.twists(), vec![vec![0], vec![-2, -2], vec![-3]]);
    }

    #[test]
    fn unit_entries_are_cancelled() {
        // coker of [1, x; 0, y] on R^2 (degrees 0, 0 and columns of degree 0 and 1)
        let r = ring();
        let fm = FreeModule::new(r.clone(), vec![0, 0]);
        let c1 = fm.from_components(&[r.one(), r.zero()]);
        let c2 = fm.from_components(&[r.parse("x").unwrap(), r.parse("y").unwrap()]);
        let p = Presentation {
            module: fm,
            columns: vec![c1, c2],
        };
        let res = minimal_free_resolution(&p).unwrap();
        // coker ≅ R/(y)
        assert_eq!(res.twists(), vec![vec![0], vec![-1]]);
        let bt = betti_table(&res).unwrap();
        assert_eq!(bt.render(), "total: 1 1\n0: 1 1\n");
    }

    #[test]
    fn free_module_resolution() {
        let r = ring();
        let res = minimal_free_resolution(&Presentation::free(&r, vec![2])).unwrap();
        let bt = betti_table(&res).unwrap();
        assert_eq!(bt.get(0, 2), 1);
        assert_eq!(bt.pd(), 0);
    }

    #[test]
    fn non_minimal_input_is_rejected() {
        let r = ring();
        let f0 = FreeModule::new(r.clone(), vec![0]);
        let f1 = FreeModule::new(r.clone(), vec![0]);
        let res = GradedFreeResolution::from_parts(vec![f0.clone(), f1], vec![vec![f0.from_polynomial(&r.one(), 0)]]);
        assert!(!res.is_minimal());
        assert!(matches!(betti_table(&res), Err(Error::NotMinimal(_))));
    }

    #[test]
    fn three_variable_resolution_is_exact() {
        let r = Ring::new(PrimeField::new(32003).unwrap(), &["x", "y", "z"], MonomialOrder::GRevLex).unwrap();
        let gens: Vec<_> = ["x^2 - y*z", "x*y - z^2", "y^2 - x*z", "x^3 - x*y*z"].iter().map(|s| r.parse(s).unwrap()).collect();
        let res = minimal_free_resolution(&Presentation::cyclic(&r, &gens)).unwrap();
        assert!(res.verify_complex());
        assert!(res.verify_exactness().unwrap());
        assert!(res.length() <= 3);
        let bt = betti_table(&res).unwrap();
        // 2x2 minors of a 2x3 matrix; the cubic is x times a minor
        assert_eq!(bt.totals(), vec![1, 3, 2]);
    }
}
