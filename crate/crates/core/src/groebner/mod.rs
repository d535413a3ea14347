//! Gröbner bases of submodules of graded free modules, normal forms and
//! syzygies.

mod engine;
mod local;
mod reduce;

use engine::{Engine, Input};
pub use local::{local_standard_basis, local_standard_basis_with, LocalLimits};

use crate::ring::{Field, FreeModule, Monomial, Polynomial, Ring, Term, Vector};
use crate::Error;

/// A reduced Gröbner basis. Generators are monic and sorted descending by
/// leading term.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis<F: Field> {
    module: FreeModule<F>,
    gens: Vec<Vector<F>>,
    leads: Vec<Term<F>>,
    reduced: bool,
}

fn check_rank<F: Field>(fm: &FreeModule<F>, gens: &[Vector<F>]) -> Result<(), Error> {
    for g in gens {
        if let Some(t) = g.terms().iter().find(|t| t.comp >= fm.rank()) {
            return Err(Error::RankMismatch(t.comp + 1, fm.rank()));
        }
    }
    Ok(())
}

/// Buchberger's algorithm. Homogeneous input is processed degree by degree.
pub fn buchberger<F: Field>(fm: &FreeModule<F>, gens: &[Vector<F>]) -> Result<GroebnerBasis<F>, Error> {
    check_rank(fm, gens)?;
    let gens: Vec<Vector<F>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut engine = Engine::new(fm);
    if gens.iter().all(|g| fm.is_homogeneous(g)) {
        engine.run_graded(
            gens.into_iter()
                .map(|vec| Input { vec, counted: false })
                .collect(),
        );
    } else {
        engine.run(&gens);
    }
    Ok(GroebnerBasis::from_reduced(fm.clone(), engine.into_reduced()))
}

/// Gröbner basis of the ideal generated by `polys`.
pub fn ideal_basis<F: Field>(ring: &Ring<F>, polys: &[Polynomial<F>]) -> GroebnerBasis<F> {
    let fm = FreeModule::free(ring.clone(), 1);
    let gens: Vec<Vector<F>> = polys.iter().map(|p| fm.from_polynomial(p, 0)).collect();
    buchberger(&fm, &gens).expect("rank one")
}

/// As [`ideal_basis`], giving up with `None` after `max_pairs` S-pairs.
pub fn ideal_basis_within<F: Field>(ring: &Ring<F>, polys: &[Polynomial<F>], max_pairs: usize) -> Option<GroebnerBasis<F>> {
    let fm = FreeModule::free(ring.clone(), 1);
    let gens: Vec<Vector<F>> = polys.iter().filter(|p| !p.is_zero()).map(|p| fm.from_polynomial(p, 0)).collect();
    let mut engine = Engine::new(&fm).with_budget(max_pairs);
    if gens.iter().all(|g| fm.is_homogeneous(g)) {
        engine.run_graded(gens.into_iter().map(|vec| Input { vec, counted: false }).collect());
    } else {
        engine.run(&gens);
    }
    if engine.exhausted() {
        return None;
    }
    Some(GroebnerBasis::from_reduced(fm.clone(), engine.into_reduced()))
}

/// Minimal homogeneous generators of the submodule generated by `base`
/// together with `gens`, keeping only elements of `gens` that are not
/// redundant. Returns the minimal generators (reduced representatives, in
/// degree order) and a Gröbner basis of the whole submodule.
pub fn minimal_generators<F: Field>(
    fm: &FreeModule<F>,
    base: &[Vector<F>],
    gens: &[Vector<F>],
) -> Result<(Vec<Vector<F>>, GroebnerBasis<F>), Error> {
    check_rank(fm, base)?;
    check_rank(fm, gens)?;
    for g in base.iter().chain(gens) {
        if !fm.is_homogeneous(g) {
            return Err(Error::NotHomogeneous(fm.format(g)));
        }
    }
    let mut inputs: Vec<Input<F>> = base
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| Input {
            vec: v.clone(),
            counted: false,
        })
        .collect();
    let offset = inputs.len();
    inputs.extend(gens.iter().filter(|v| !v.is_zero()).map(|v| Input {
        vec: v.clone(),
        counted: true,
    }));
    let mut engine = Engine::new(fm);
    let found = engine.run_graded(inputs);
    let mut minimal: Vec<(i64, usize, Vector<F>)> = found
        .into_iter()
        .enumerate()
        .skip(offset)
        .filter_map(|(i, v)| v.map(|v| (fm.homogeneous_degree(&v).expect("homogeneous"), i, v)))
        .collect();
    minimal.sort_by_key(|m| (m.0, m.1));
    let gb = GroebnerBasis::from_reduced(fm.clone(), engine.into_reduced());
    Ok((minimal.into_iter().map(|(_, _, v)| fm.make_monic(&v)).collect(), gb))
}

/// Generators of the module of syzygies of `gens` modulo the submodule
/// generated by `modulo`: all (a_j) with Σ a_j gens_j ∈ ⟨modulo⟩. Computed
/// as the elimination part of a Gröbner basis of {(g_j, e_j)} ∪ {(h, 0)} in
/// `fm ⊕ E`, E having basis degrees equal to the generator degrees. The
/// result is a Gröbner basis of the syzygy module in E.
pub fn syzygy_module<F: Field>(
    fm: &FreeModule<F>,
    gens: &[Vector<F>],
    modulo: &[Vector<F>],
) -> Result<(FreeModule<F>, Vec<Vector<F>>), Error> {
    check_rank(fm, gens)?;
    check_rank(fm, modulo)?;
    let degrees: Vec<i64> = gens
        .iter()
        .map(|g| fm.homogeneous_degree(g).or_else(|| fm.top_degree(g)).unwrap_or(0))
        .collect();
    let target = FreeModule::new(fm.ring().clone(), degrees.clone());
    let big = fm.eliminating_sum(&degrees);
    let r = fm.rank();
    let mut aug: Vec<Vector<F>> = gens
        .iter()
        .enumerate()
        .map(|(j, g)| {
            let e = big.embed(&target.basis_vector(j), r);
            big.add(&big.adopt(g), &e)
        })
        .collect();
    aug.extend(modulo.iter().filter(|v| !v.is_zero()).map(|v| big.adopt(v)));
    let gb = buchberger(&big, &aug)?;
    let syz: Vec<Vector<F>> = gb
        .gens
        .iter()
        .filter(|v| v.lead().is_some_and(|t| t.comp >= r))
        .map(|v| target.project(v, r..r + gens.len()))
        .collect();
    Ok((target, syz))
}

impl<F: Field> GroebnerBasis<F> {
    fn from_reduced(module: FreeModule<F>, gens: Vec<Vector<F>>) -> Self {
        let leads = gens.iter().map(|g| g.lead().expect("nonzero").clone()).collect();
        GroebnerBasis {
            module,
            gens,
            leads,
            reduced: true,
        }
    }

    /// Wrap elements already known to form a Gröbner basis of the
    /// submodule they generate, under the order of `module`.
    pub fn from_known_basis(module: FreeModule<F>, gens: Vec<Vector<F>>) -> Self {
        let leads = gens.iter().map(|g| g.lead().expect("nonzero").clone()).collect();
        GroebnerBasis {
            module,
            gens,
            leads,
            reduced: false,
        }
    }

    pub fn module(&self) -> &FreeModule<F> {
        &self.module
    }

    pub fn ring(&self) -> &Ring<F> {
        self.module.ring()
    }

    pub fn generators(&self) -> &[Vector<F>] {
        &self.gens
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn leading_terms(&self) -> &[Term<F>] {
        &self.leads
    }

    /// Generators as polynomials (rank-one case).
    pub fn polynomials(&self) -> Vec<Polynomial<F>> {
        self.gens.iter().map(|g| self.module.component(g, 0)).collect()
    }

    pub fn normal_form(&self, f: &Vector<F>) -> Vector<F> {
        reduce::reduce(&self.module, &self.gens, &self.leads, f)
    }

    pub fn reduce_polynomial(&self, f: &Polynomial<F>) -> Polynomial<F> {
        let v = self.module.from_polynomial(f, 0);
        self.module.component(&self.normal_form(&v), 0)
    }

    pub fn contains(&self, f: &Vector<F>) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_polynomial(&self, f: &Polynomial<F>) -> bool {
        self.reduce_polynomial(f).is_zero()
    }

    /// Division with quotients against the basis elements.
    pub fn divide(&self, f: &Vector<F>) -> (Vec<Polynomial<F>>, Vector<F>) {
        reduce::divide(&self.module, &self.gens, &self.leads, f)
    }

    /// Whether the basis is the whole module (contains a unit in every component).
    pub fn is_everything(&self) -> bool {
        (0..self.module.rank()).all(|c| self.leads.iter().any(|t| t.comp == c && t.mono.is_one()))
    }

    /// Monomials m*e_c of the given total degree that are not divisible by
    /// any leading term, in descending module order.
    pub fn standard_terms_of_degree(&self, degree: i64) -> Vec<(Monomial, usize)> {
        let n = self.ring().nvars();
        let mut out = Vec::new();
        for (c, &dc) in self.module.degrees().iter().enumerate() {
            let d = degree - dc;
            if d < 0 {
                continue;
            }
            for m in Monomial::all_of_degree(n, d as u32) {
                if !self.leads.iter().any(|t| t.comp == c && t.mono.divides(&m)) {
                    out.push((m, c));
                }
            }
        }
        out.sort_by(|a, b| self.module.cmp_pos((&b.0, b.1), (&a.0, a.1)));
        out
    }

    /// Re-reduce every S-vector of the basis; a Gröbner basis certificate.
    pub fn verify(&self) -> bool {
        let fm = &self.module;
        let one = fm.field().one();
        for i in 0..self.gens.len() {
            for j in (i + 1)..self.gens.len() {
                let (li, lj) = (&self.leads[i], &self.leads[j]);
                if li.comp != lj.comp {
                    continue;
                }
                let l = li.mono.lcm(&lj.mono);
                let s = fm.sub(
                    &fm.mul_term(&self.gens[i], &fm.field().div(&one, &li.coeff).unwrap(), &li.mono.quotient_of(&l).unwrap()),
                    &fm.mul_term(&self.gens[j], &fm.field().div(&one, &lj.coeff).unwrap(), &lj.mono.quotient_of(&l).unwrap()),
                );
                if !self.normal_form(&s).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Schreyer syzygies: one syzygy per S-pair of basis elements with equal
    /// leading component, read off from the division of the S-vector. They
    /// generate the syzygy module of the basis elements, as elements of a
    /// free module whose basis degrees are the generator degrees.
    pub fn syzygies(&self) -> (FreeModule<F>, Vec<Vector<F>>) {
        let fm = &self.module;
        let k = fm.field();
        let ring = fm.ring();
        let degrees: Vec<i64> = self
            .gens
            .iter()
            .map(|g| fm.homogeneous_degree(g).or_else(|| fm.top_degree(g)).unwrap_or(0))
            .collect();
        let target = FreeModule::new(ring.clone(), degrees);
        let mut out = Vec::new();
        for j in 0..self.gens.len() {
            for i in 0..j {
                let (li, lj) = (&self.leads[i], &self.leads[j]);
                if li.comp != lj.comp {
                    continue;
                }
                let l = li.mono.lcm(&lj.mono);
                let qi = li.mono.quotient_of(&l).unwrap();
                let qj = lj.mono.quotient_of(&l).unwrap();
                let ci = k.inv(&li.coeff).unwrap();
                let cj = k.inv(&lj.coeff).unwrap();
                let s = fm.sub(
                    &fm.mul_term(&self.gens[i], &ci, &qi),
                    &fm.mul_term(&self.gens[j], &cj, &qj),
                );
                let (quots, rem) = self.divide(&s);
                debug_assert!(rem.is_zero(), "basis is not a Gröbner basis");
                let mut comps: Vec<Polynomial<F>> = quots.iter().map(|q| ring.neg(q)).collect();
                comps[i] = ring.add(&comps[i], &ring.monomial(ci, qi));
                comps[j] = ring.sub(&comps[j], &ring.monomial(cj, qj));
                let v = target.from_components(&comps);
                if !v.is_zero() {
                    out.push(v);
                }
            }
        }
        (target, out)
    }
}
