//! Standard bases for the local degree order, via Mora's normal form.
//!
//! Monomials compare first by *lower* total degree, then by the ring's own
//! order. The leading term of f is therefore the ring-largest term of its
//! initial form, and the initial forms of a standard basis generate the
//! initial-form ideal in*(I).

use std::cmp::Ordering;

use crate::ring::{Field, Monomial, Polynomial, Ring};

fn lead<'a, F: Field>(ring: &Ring<F>, f: &'a Polynomial<F>) -> &'a (F::Elem, Monomial) {
    let d = f.ord().expect("nonzero");
    f.terms()
        .iter()
        .filter(|(_, m)| m.degree() == d)
        .max_by(|a, b| ring.cmp_monomials(&a.1, &b.1))
        .expect("nonzero")
}

/// A nonzero polynomial with its local leading term and ecart cached.
#[derive(Clone)]
struct Elem<F: Field> {
    poly: Polynomial<F>,
    coeff: F::Elem,
    mono: Monomial,
    ecart: u32,
}

impl<F: Field> Elem<F> {
    fn new(ring: &Ring<F>, poly: Polynomial<F>) -> Self {
        let (coeff, mono) = lead(ring, &poly).clone();
        let ecart = poly.total_degree().unwrap() - mono.degree();
        Elem { poly, coeff, mono, ecart }
    }
}

/// The local order itself: smaller degree first, then the ring order.
fn cmp_local<F: Field>(ring: &Ring<F>, a: &Monomial, b: &Monomial) -> Ordering {
    b.degree().cmp(&a.degree()).then_with(|| ring.cmp_monomials(a, b))
}

/// h − (lt(h)/lt(g))·g, which cancels the leading term of h.
fn cancel_lead<F: Field>(ring: &Ring<F>, h: &Elem<F>, g: &Elem<F>) -> Polynomial<F> {
    let q = g.mono.quotient_of(&h.mono).expect("divisible");
    let c = ring.field().div(&h.coeff, &g.coeff).expect("nonzero lead");
    ring.sub(&h.poly, &ring.mul_term(&g.poly, &c, &q))
}

fn s_polynomial<F: Field>(ring: &Ring<F>, f: &Elem<F>, g: &Elem<F>) -> Polynomial<F> {
    let l = f.mono.lcm(&g.mono);
    let field = ring.field();
    let a = ring.mul_term(&f.poly, &field.inv(&f.coeff).unwrap(), &f.mono.quotient_of(&l).unwrap());
    let b = ring.mul_term(&g.poly, &field.inv(&g.coeff).unwrap(), &g.mono.quotient_of(&l).unwrap());
    ring.sub(&a, &b)
}

/// Bounds on a standard basis computation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LocalLimits {
    /// Drop every term of degree ≥ N. Exact when m^N lies in the ideal
    /// locally; the standard basis is then one of I/m^N.
    pub truncate_at: Option<u32>,
    /// Give up after this many single-term reductions.
    pub max_steps: Option<usize>,
}

struct Budget {
    limits: LocalLimits,
    steps: usize,
}

impl Budget {
    fn cut<F: Field>(&self, ring: &Ring<F>, f: Polynomial<F>) -> Polynomial<F> {
        match self.limits.truncate_at {
            Some(n) if f.total_degree().is_some_and(|d| d >= n) => ring.from_terms(
                f.terms().iter().filter(|(_, m)| m.degree() < n).cloned().collect(),
            ),
            _ => f,
        }
    }

    fn tick(&mut self) -> Option<()> {
        self.steps += 1;
        match self.limits.max_steps {
            Some(max) if self.steps > max => None,
            _ => Some(()),
        }
    }
}

/// Mora's weak normal form: reducers of minimal ecart, with intermediate
/// results joining the reducer set when they have smaller ecart than the
/// reducer used. Terminates for local degree orders.
///
/// `extra` holds the intermediate results of all earlier reductions. They
/// lie in the ideal, so they stay valid reducers for the whole computation,
/// and reusing them is what keeps unit multiples from being expanded over
/// and over.
fn mora_normal_form<F: Field>(
    ring: &Ring<F>,
    f: Polynomial<F>,
    basis: &[Elem<F>],
    extra: &mut Vec<Elem<F>>,
    budget: &mut Budget,
) -> Option<Polynomial<F>> {
    let h = budget.cut(ring, f);
    if h.is_zero() {
        return Some(h);
    }
    let mut h = Elem::new(ring, h);
    loop {
        // ties go to the most recent intermediate result
        let reducer = extra
            .iter()
            .rev()
            .chain(basis.iter())
            .filter(|g| g.mono.divides(&h.mono))
            .min_by_key(|g| g.ecart)
            .cloned();
        let Some(g) = reducer else { return Some(h.poly) };
        if g.ecart > h.ecart {
            extra.push(h.clone());
        }
        let next = budget.cut(ring, cancel_lead(ring, &h, &g));
        budget.tick()?;
        if next.is_zero() {
            return Some(next);
        }
        h = Elem::new(ring, next);
    }
}

/// A standard basis of the ideal generated by `gens` in the localization
/// at the origin. Zero generators are dropped.
pub fn local_standard_basis<F: Field>(ring: &Ring<F>, gens: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
    local_standard_basis_with(ring, gens, LocalLimits::default()).expect("no step limit")
}

/// As [`local_standard_basis`], within `limits`; `None` when the step
/// budget runs out.
pub fn local_standard_basis_with<F: Field>(
    ring: &Ring<F>,
    gens: &[Polynomial<F>],
    limits: LocalLimits,
) -> Option<Vec<Polynomial<F>>> {
    let mut budget = Budget { limits, steps: 0 };
    let mut basis: Vec<Elem<F>> = Vec::new();
    let mut extra: Vec<Elem<F>> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let add = |basis: &mut Vec<Elem<F>>, pairs: &mut Vec<(usize, usize)>, h: Polynomial<F>| {
        let j = basis.len();
        pairs.extend((0..j).map(|i| (i, j)));
        let e = Elem::new(ring, h);
        let c = ring.field().inv(&e.coeff).expect("nonzero lead");
        basis.push(Elem::new(ring, ring.scale(&e.poly, &c)));
    };
    for g in gens {
        let h = mora_normal_form(ring, g.clone(), &basis, &mut extra, &mut budget)?;
        if !h.is_zero() {
            add(&mut basis, &mut pairs, h);
        }
    }
    while !pairs.is_empty() {
        // lowest lcm in the local order first keeps intermediate ecarts small
        let lcm = |(i, j): (usize, usize)| basis[i].mono.lcm(&basis[j].mono);
        let pick = (0..pairs.len())
            .min_by(|&a, &b| cmp_local(ring, &lcm(pairs[b]), &lcm(pairs[a])))
            .unwrap();
        let (i, j) = pairs.swap_remove(pick);
        if basis[i].mono.is_coprime(&basis[j].mono) {
            continue;
        }
        let s = s_polynomial(ring, &basis[i], &basis[j]);
        let h = mora_normal_form(ring, s, &basis, &mut extra, &mut budget)?;
        if !h.is_zero() {
            add(&mut basis, &mut pairs, h);
        }
    }
    Some(basis.into_iter().map(|e| e.poly).collect())
}
