//! Graded free modules over a polynomial ring and their elements.

use std::cmp::Ordering;
use std::sync::Arc;

use super::field::Field;
use super::monomial::{Monomial, MonomialOrder};
use super::poly::{Polynomial, Ring};

/// A term c * m * e_comp of a free-module element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term<F: Field> {
    pub coeff: F::Elem,
    pub mono: Monomial,
    pub comp: usize,
}

/// Element of a free module, as a sparse list of terms sorted strictly
/// descending in the module order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector<F: Field> {
    terms: Vec<Term<F>>,
}

/// The free module ⊕ R(-d_i). `degrees[i]` is the degree of basis element
/// e_i, so a twist R(-2) has degree 2.
///
/// Terms compare position-aware: when `block` is set, components below the
/// split dominate all components at or above it; inside a block, graded ring
/// orders compare `deg(m) + degrees[i]` first, then the monomial, then the
/// lower component index wins.
///
/// A module built by [`FreeModule::schreyer`] instead orders m*e_i by the
/// image term m*lead(g_i) in the previous module, ties going to the lower
/// index.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeModule<F: Field> {
    ring: Ring<F>,
    degrees: Vec<i64>,
    block: Option<usize>,
    schreyer: Option<Arc<SchreyerLeads<F>>>,
}

#[derive(Clone, Debug, PartialEq)]
struct SchreyerLeads<F: Field> {
    prev: FreeModule<F>,
    leads: Vec<(Monomial, usize)>,
}

impl<F: Field> FreeModule<F> {
    pub fn new(ring: Ring<F>, degrees: Vec<i64>) -> Self {
        FreeModule {
            ring,
            degrees,
            block: None,
            schreyer: None,
        }
    }

    /// The free module with one basis element per entry of `gens`, of the
    /// same degree, carrying the Schreyer order induced by their leading
    /// terms. Every element of `gens` must be nonzero and homogeneous.
    pub fn schreyer(prev: &FreeModule<F>, gens: &[Vector<F>]) -> Self {
        let degrees = gens
            .iter()
            .map(|g| prev.homogeneous_degree(g).expect("homogeneous generator"))
            .collect();
        let leads = gens
            .iter()
            .map(|g| {
                let t = g.lead().expect("nonzero generator");
                (t.mono.clone(), t.comp)
            })
            .collect();
        FreeModule {
            ring: prev.ring.clone(),
            degrees,
            block: None,
            schreyer: Some(Arc::new(SchreyerLeads {
                prev: prev.clone(),
                leads,
            })),
        }
    }

    /// The same basis with the plain position-aware order.
    pub fn plain(&self) -> Self {
        FreeModule::new(self.ring.clone(), self.degrees.clone())
    }

    pub fn free(ring: Ring<F>, rank: usize) -> Self {
        Self::new(ring, vec![0; rank])
    }

    /// `self ⊕ other` with the components of `self` dominating (an
    /// elimination order for the first summand).
    pub fn eliminating_sum(&self, other_degrees: &[i64]) -> Self {
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(other_degrees);
        FreeModule {
            ring: self.ring.clone(),
            degrees,
            block: Some(self.rank()),
            schreyer: None,
        }
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn block(&self) -> Option<usize> {
        self.block
    }

    pub fn term_degree(&self, m: &Monomial, comp: usize) -> i64 {
        m.degree() as i64 + self.degrees[comp]
    }

    pub fn cmp_pos(&self, a: (&Monomial, usize), b: (&Monomial, usize)) -> Ordering {
        if let Some(s) = &self.schreyer {
            let (la, lb) = (&s.leads[a.1], &s.leads[b.1]);
            let (ma, mb) = (a.0.mul(&la.0), b.0.mul(&lb.0));
            return s
                .prev
                .cmp_pos((&ma, la.1), (&mb, lb.1))
                .then_with(|| b.1.cmp(&a.1));
        }
        if let Some(split) = self.block {
            let (ba, bb) = (a.1 < split, b.1 < split);
            if ba != bb {
                return if ba { Ordering::Greater } else { Ordering::Less };
            }
        }
        let order = self.ring.order();
        if order.is_graded() {
            let o = self.term_degree(a.0, a.1).cmp(&self.term_degree(b.0, b.1));
            if o != Ordering::Equal {
                return o;
            }
        }
        order.cmp(a.0, b.0).then_with(|| b.1.cmp(&a.1))
    }

    pub fn cmp_terms(&self, a: &Term<F>, b: &Term<F>) -> Ordering {
        self.cmp_pos((&a.mono, a.comp), (&b.mono, b.comp))
    }

    pub fn zero(&self) -> Vector<F> {
        Vector { terms: Vec::new() }
    }

    pub fn basis_vector(&self, i: usize) -> Vector<F> {
        Vector {
            terms: vec![Term {
                coeff: self.field().one(),
                mono: Monomial::one(self.ring.nvars()),
                comp: i,
            }],
        }
    }

    pub fn from_terms(&self, mut terms: Vec<Term<F>>) -> Vector<F> {
        terms.sort_by(|a, b| self.cmp_terms(b, a));
        let k = self.field();
        let mut out: Vec<Term<F>> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono && last.comp == t.comp => {
                    last.coeff = k.add(&last.coeff, &t.coeff);
                }
                _ => {
                    if out.last().is_some_and(|l| k.is_zero(&l.coeff)) {
                        out.pop();
                    }
                    out.push(t);
                }
            }
        }
        if out.last().is_some_and(|l| k.is_zero(&l.coeff)) {
            out.pop();
        }
        Vector { terms: out }
    }

    /// Build from one polynomial per component.
    pub fn from_components(&self, comps: &[Polynomial<F>]) -> Vector<F> {
        let terms = comps
            .iter()
            .enumerate()
            .flat_map(|(i, p)| {
                p.terms().iter().map(move |(c, m)| Term {
                    coeff: c.clone(),
                    mono: m.clone(),
                    comp: i,
                })
            })
            .collect();
        self.from_terms(terms)
    }

    pub fn from_polynomial(&self, f: &Polynomial<F>, comp: usize) -> Vector<F> {
        let terms = f
            .terms()
            .iter()
            .map(|(c, m)| Term {
                coeff: c.clone(),
                mono: m.clone(),
                comp,
            })
            .collect();
        self.from_terms(terms)
    }

    /// Components as polynomials of the underlying ring.
    pub fn components(&self, v: &Vector<F>) -> Vec<Polynomial<F>> {
        let mut parts: Vec<Vec<(F::Elem, Monomial)>> = vec![Vec::new(); self.rank()];
        for t in &v.terms {
            parts[t.comp].push((t.coeff.clone(), t.mono.clone()));
        }
        parts.into_iter().map(|p| self.ring.from_terms(p)).collect()
    }

    pub fn component(&self, v: &Vector<F>, comp: usize) -> Polynomial<F> {
        self.ring.from_terms(
            v.terms
                .iter()
                .filter(|t| t.comp == comp)
                .map(|t| (t.coeff.clone(), t.mono.clone()))
                .collect(),
        )
    }

    fn merge(&self, a: &Vector<F>, b: &Vector<F>, negate_b: bool) -> Vector<F> {
        let k = self.field();
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() || j < b.terms.len() {
            let ord = if i == a.terms.len() {
                Ordering::Less
            } else if j == b.terms.len() {
                Ordering::Greater
            } else {
                self.cmp_terms(&a.terms[i], &b.terms[j])
            };
            match ord {
                Ordering::Greater => {
                    out.push(a.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let mut t = b.terms[j].clone();
                    if negate_b {
                        t.coeff = k.neg(&t.coeff);
                    }
                    out.push(t);
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_b {
                        k.sub(&a.terms[i].coeff, &b.terms[j].coeff)
                    } else {
                        k.add(&a.terms[i].coeff, &b.terms[j].coeff)
                    };
                    if !k.is_zero(&c) {
                        out.push(Term {
                            coeff: c,
                            mono: a.terms[i].mono.clone(),
                            comp: a.terms[i].comp,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Vector { terms: out }
    }

    pub fn add(&self, a: &Vector<F>, b: &Vector<F>) -> Vector<F> {
        self.merge(a, b, false)
    }

    pub fn sub(&self, a: &Vector<F>, b: &Vector<F>) -> Vector<F> {
        self.merge(a, b, true)
    }

    pub fn neg(&self, a: &Vector<F>) -> Vector<F> {
        let k = self.field();
        Vector {
            terms: a
                .terms
                .iter()
                .map(|t| Term {
                    coeff: k.neg(&t.coeff),
                    ..t.clone()
                })
                .collect(),
        }
    }

    pub fn scale(&self, a: &Vector<F>, c: &F::Elem) -> Vector<F> {
        self.mul_term(a, c, &Monomial::one(self.ring.nvars()))
    }

    pub fn mul_term(&self, a: &Vector<F>, c: &F::Elem, m: &Monomial) -> Vector<F> {
        let k = self.field();
        if k.is_zero(c) {
            return self.zero();
        }
        Vector {
            terms: a
                .terms
                .iter()
                .map(|t| Term {
                    coeff: k.mul(&t.coeff, c),
                    mono: t.mono.mul(m),
                    comp: t.comp,
                })
                .collect(),
        }
    }

    pub fn mul_poly(&self, f: &Polynomial<F>, a: &Vector<F>) -> Vector<F> {
        let mut acc = self.zero();
        for (c, m) in f.terms() {
            acc = self.add(&acc, &self.mul_term(a, c, m));
        }
        acc
    }

    /// Σ coeffs[j] * elems[j].
    pub fn combine(&self, coeffs: &[Polynomial<F>], elems: &[Vector<F>]) -> Vector<F> {
        let mut acc = self.zero();
        for (f, v) in coeffs.iter().zip(elems) {
            if !f.is_zero() {
                acc = self.add(&acc, &self.mul_poly(f, v));
            }
        }
        acc
    }

    pub fn make_monic(&self, a: &Vector<F>) -> Vector<F> {
        match a.terms.first() {
            None => a.clone(),
            Some(t) => {
                let inv = self.field().inv(&t.coeff).expect("nonzero");
                self.scale(a, &inv)
            }
        }
    }

    /// Re-sort an element produced under another module order with the same rank.
    pub fn adopt(&self, a: &Vector<F>) -> Vector<F> {
        let mut terms = a.terms.clone();
        terms.sort_by(|x, y| self.cmp_terms(y, x));
        Vector { terms }
    }

    /// Move components by `offset` (embedding into a larger free module).
    pub fn embed(&self, a: &Vector<F>, offset: usize) -> Vector<F> {
        self.from_terms(
            a.terms
                .iter()
                .map(|t| Term {
                    comp: t.comp + offset,
                    ..t.clone()
                })
                .collect(),
        )
    }

    /// Keep the components in `range`, renumbered from zero, landing in `self`.
    pub fn project(&self, a: &Vector<F>, range: std::ops::Range<usize>) -> Vector<F> {
        self.from_terms(
            a.terms
                .iter()
                .filter(|t| range.contains(&t.comp))
                .map(|t| Term {
                    comp: t.comp - range.start,
                    ..t.clone()
                })
                .collect(),
        )
    }

    /// Degree of a homogeneous element, `None` for zero or inhomogeneous.
    pub fn homogeneous_degree(&self, a: &Vector<F>) -> Option<i64> {
        let first = a.terms.first()?;
        let d = self.term_degree(&first.mono, first.comp);
        a.terms
            .iter()
            .all(|t| self.term_degree(&t.mono, t.comp) == d)
            .then_some(d)
    }

    pub fn is_homogeneous(&self, a: &Vector<F>) -> bool {
        a.is_zero() || self.homogeneous_degree(a).is_some()
    }

    /// Largest term degree (the sugar of an element).
    pub fn top_degree(&self, a: &Vector<F>) -> Option<i64> {
        a.terms.iter().map(|t| self.term_degree(&t.mono, t.comp)).max()
    }

    pub fn format(&self, a: &Vector<F>) -> String {
        let comps = self.components(a);
        let parts: Vec<String> = comps.iter().map(|p| self.ring.format(p)).collect();
        format!("[{}]", parts.join(", "))
    }

    /// Same module with another monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        FreeModule {
            ring: self.ring.with_order(order),
            degrees: self.degrees.clone(),
            block: self.block,
            schreyer: None,
        }
    }
}

impl<F: Field> Vector<F> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }

    pub fn lead(&self) -> Option<&Term<F>> {
        self.terms.first()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn from_sorted_terms(terms: Vec<Term<F>>) -> Self {
        Vector { terms }
    }

    pub(crate) fn into_terms(self) -> Vec<Term<F>> {
        self.terms
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Rationals;

    #[test]
    fn shifts_refine_the_term_order() {
        let r = Ring::new(Rationals, &["x", "y"], MonomialOrder::GRevLex).unwrap();
        let fm = FreeModule::new(r.clone(), vec![0, 3]);
        let x2 = r.parse("x^2").unwrap();
        let y = r.parse("y").unwrap();
        // y*e_1 has degree 4 and beats x^2*e_0 of degree 2
        let v = fm.from_components(&[x2.clone(), y.clone()]);
        assert_eq!(v.lead().unwrap().comp, 1);
        assert!(!fm.is_homogeneous(&v));
        let w = fm.from_components(&[r.parse("x^2*y^2").unwrap(), y]);
        assert_eq!(fm.homogeneous_degree(&w), Some(4));
    }

    #[test]
    fn eliminating_sum_puts_first_block_on_top() {
        let r = Ring::new(Rationals, &["x", "y"], MonomialOrder::GRevLex).unwrap();
        let fm = FreeModule::free(r.clone(), 1).eliminating_sum(&[5]);
        let v = fm.from_components(&[r.parse("x").unwrap(), r.parse("y^9").unwrap()]);
        assert_eq!(v.lead().unwrap().comp, 0);
        let comps = fm.components(&v);
        assert_eq!(comps[1], r.parse("y^9").unwrap());
        let small = FreeModule::free(r.clone(), 1);
        assert_eq!(small.project(&v, 1..2), small.from_polynomial(&r.parse("y^9").unwrap(), 0));
    }
}
