use crate::ring::{Field, FreeModule, Polynomial, Term, Vector};

/// Index of the first basis element whose leading term divides `t`.
pub(crate) fn find_divisor<F: Field>(leads: &[Term<F>], t: &Term<F>) -> Option<usize> {
    leads
        .iter()
        .position(|l| l.comp == t.comp && l.mono.divides(&t.mono))
}

/// Full reduction of `f` modulo `basis` (leading terms in `leads`). The
/// remainder has no term divisible by any leading term.
pub(crate) fn reduce<F: Field>(
    fm: &FreeModule<F>,
    basis: &[Vector<F>],
    leads: &[Term<F>],
    f: &Vector<F>,
) -> Vector<F> {
    let k = fm.field();
    let mut p = f.clone();
    let mut rem: Vec<Term<F>> = Vec::new();
    loop {
        let Some(lt) = p.lead().cloned() else { break };
        match find_divisor(leads, &lt) {
            Some(i) => {
                let q = leads[i].mono.quotient_of(&lt.mono).expect("divides");
                let c = k.div(&lt.coeff, &leads[i].coeff).expect("nonzero lead");
                p = fm.sub(&p, &fm.mul_term(&basis[i], &c, &q));
            }
            None => {
                let mut terms = p.into_terms();
                rem.push(terms.remove(0));
                p = Vector::from_sorted_terms(terms);
            }
        }
    }
    Vector::from_sorted_terms(rem)
}

/// Division with quotients: f = Σ q_i basis_i + r.
pub(crate) fn divide<F: Field>(
    fm: &FreeModule<F>,
    basis: &[Vector<F>],
    leads: &[Term<F>],
    f: &Vector<F>,
) -> (Vec<Polynomial<F>>, Vector<F>) {
    let k = fm.field();
    let ring = fm.ring();
    let mut quotients: Vec<Vec<(F::Elem, crate::ring::Monomial)>> = vec![Vec::new(); basis.len()];
    let mut p = f.clone();
    let mut rem: Vec<Term<F>> = Vec::new();
    loop {
        let Some(lt) = p.lead().cloned() else { break };
        match find_divisor(leads, &lt) {
            Some(i) => {
                let q = leads[i].mono.quotient_of(&lt.mono).expect("divides");
                let c = k.div(&lt.coeff, &leads[i].coeff).expect("nonzero lead");
                p = fm.sub(&p, &fm.mul_term(&basis[i], &c, &q));
                quotients[i].push((c, q));
            }
            None => {
                let mut terms = p.into_terms();
                rem.push(terms.remove(0));
                p = Vector::from_sorted_terms(terms);
            }
        }
    }
    let qs = quotients.into_iter().map(|t| ring.from_terms(t)).collect();
    (qs, Vector::from_sorted_terms(rem))
}
