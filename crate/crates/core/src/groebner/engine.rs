//! Buchberger's algorithm with the normal selection strategy and the
//! Gebauer–Möller installation of Buchberger's criteria.

use std::collections::BTreeMap;

use super::reduce::reduce;
use crate::ring::{Field, FreeModule, Monomial, Term, Vector};

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: usize,
}

/// Selection key: lcm degree first (normal strategy), then indices.
type PairKey = (i64, usize, usize);

pub(crate) struct Engine<'a, F: Field> {
    fm: &'a FreeModule<F>,
    pub(crate) basis: Vec<Vector<F>>,
    pub(crate) leads: Vec<Term<F>>,
    active: Vec<bool>,
    pairs: BTreeMap<PairKey, Pair>,
    product_criterion: bool,
    /// S-pairs left before the run gives up; unlimited when `None`.
    budget: Option<usize>,
    gave_up: bool,
}

/// One input to the graded engine. Uncounted inputs are part of the
/// submodule but never reported as minimal generators.
pub(crate) struct Input<F: Field> {
    pub vec: Vector<F>,
    pub counted: bool,
}

impl<'a, F: Field> Engine<'a, F> {
    pub fn new(fm: &'a FreeModule<F>) -> Self {
        Engine {
            fm,
            basis: Vec::new(),
            leads: Vec::new(),
            active: Vec::new(),
            pairs: BTreeMap::new(),
            product_criterion: fm.rank() == 1 && fm.block().is_none(),
            budget: None,
            gave_up: false,
        }
    }

    pub fn with_budget(mut self, pairs: usize) -> Self {
        self.budget = Some(pairs);
        self
    }

    pub fn exhausted(&self) -> bool {
        self.gave_up
    }

    fn pair_degree(&self, p: &Pair) -> i64 {
        self.fm.term_degree(&p.lcm, p.comp)
    }

    fn reduce(&self, v: &Vector<F>) -> Vector<F> {
        reduce(self.fm, &self.basis, &self.leads, v)
    }

    fn s_vector(&self, p: &Pair) -> Vector<F> {
        let fm = self.fm;
        let one = fm.field().one();
        let (li, lj) = (&self.leads[p.i], &self.leads[p.j]);
        let qi = li.mono.quotient_of(&p.lcm).expect("lcm");
        let qj = lj.mono.quotient_of(&p.lcm).expect("lcm");
        fm.sub(
            &fm.mul_term(&self.basis[p.i], &one, &qi),
            &fm.mul_term(&self.basis[p.j], &one, &qj),
        )
    }

    /// Insert a nonzero, fully reduced element and update the pair set.
    fn insert(&mut self, v: Vector<F>) {
        let v = self.fm.make_monic(&v);
        let lead = v.lead().expect("nonzero").clone();
        let k = self.basis.len();
        self.basis.push(v);
        self.leads.push(lead.clone());
        self.active.push(true);

        let coprime = |a: &Monomial, b: &Monomial| self.product_criterion && a.is_coprime(b);

        // candidate pairs with the new element
        let mut cands: Vec<Pair> = (0..k)
            .filter(|&i| self.active[i] && self.leads[i].comp == lead.comp)
            .map(|i| Pair {
                i,
                j: k,
                lcm: self.leads[i].mono.lcm(&lead.mono),
                comp: lead.comp,
            })
            .collect();

        // chain criterion on the new pairs, keeping one pair per lcm
        let mut kept: Vec<Pair> = Vec::new();
        while !cands.is_empty() {
            let p = cands.remove(0);
            let is_coprime = coprime(&self.leads[p.i].mono, &lead.mono);
            let dominated = cands.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if is_coprime || !dominated {
                kept.push(p);
            }
        }
        kept.retain(|p| !coprime(&self.leads[p.i].mono, &lead.mono));

        // chain criterion on the old pairs
        let leads = &self.leads;
        self.pairs.retain(|_, p| {
            if p.comp != lead.comp || !lead.mono.divides(&p.lcm) {
                return true;
            }
            let lik = leads[p.i].mono.lcm(&lead.mono);
            let ljk = leads[p.j].mono.lcm(&lead.mono);
            lik == p.lcm || ljk == p.lcm
        });

        for p in kept {
            let key = (self.pair_degree(&p), p.j, p.i);
            self.pairs.insert(key, p);
        }

        for i in 0..k {
            if self.active[i] && self.leads[i].comp == lead.comp && lead.mono.divides(&self.leads[i].mono) {
                self.active[i] = false;
            }
        }
    }

    fn min_pair_degree(&self) -> Option<i64> {
        self.pairs.keys().next().map(|k| k.0)
    }

    fn process_next_pair(&mut self) {
        if let Some(b) = self.budget.as_mut() {
            if *b == 0 {
                self.gave_up = true;
                self.pairs.clear();
                return;
            }
            *b -= 1;
        }
        let (_, p) = self.pairs.pop_first().expect("pending pair");
        let s = self.s_vector(&p);
        let r = self.reduce(&s);
        if !r.is_zero() {
            self.insert(r);
        }
    }

    /// Ungraded run: all inputs first, then pairs by lcm degree.
    pub fn run(&mut self, inputs: &[Vector<F>]) {
        for v in inputs {
            let r = self.reduce(v);
            if !r.is_zero() {
                self.insert(r);
            }
        }
        while !self.pairs.is_empty() {
            self.process_next_pair();
        }
    }

    /// Graded run for homogeneous inputs, degree by degree. Returns, for
    /// each counted input, whether it was a minimal generator together with
    /// the reduced element that was inserted.
    pub fn run_graded(&mut self, inputs: Vec<Input<F>>) -> Vec<Option<Vector<F>>> {
        let n = inputs.len();
        let mut order: Vec<(i64, bool, usize)> = inputs
            .iter()
            .enumerate()
            .filter_map(|(idx, inp)| {
                self.fm
                    .homogeneous_degree(&inp.vec)
                    .map(|d| (d, inp.counted, idx))
            })
            .collect();
        order.sort();
        let mut out: Vec<Option<Vector<F>>> = vec![None; n];
        let mut pos = 0;
        loop {
            let gen_deg = order.get(pos).map(|o| o.0);
            let pair_deg = self.min_pair_degree();
            let d = match (gen_deg, pair_deg) {
                (None, None) => break,
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (Some(a), Some(b)) => a.min(b),
            };
            while self.min_pair_degree() == Some(d) {
                self.process_next_pair();
            }
            while pos < order.len() && order[pos].0 == d {
                let idx = order[pos].2;
                let r = self.reduce(&inputs[idx].vec);
                if !r.is_zero() {
                    if inputs[idx].counted {
                        out[idx] = Some(r.clone());
                    }
                    self.insert(r);
                }
                pos += 1;
            }
        }
        out
    }

    /// The reduced Gröbner basis, sorted descending by leading term.
    pub fn into_reduced(self) -> Vec<Vector<F>> {
        let fm = self.fm;
        // minimal leading terms; the earliest element wins among equal leads
        let mut keep: Vec<usize> = Vec::new();
        for i in 0..self.basis.len() {
            let li = &self.leads[i];
            let redundant = (0..self.basis.len()).any(|j| {
                j != i
                    && self.leads[j].comp == li.comp
                    && self.leads[j].mono.divides(&li.mono)
                    && (self.leads[j].mono != li.mono || j < i)
            });
            if !redundant {
                keep.push(i);
            }
        }
        let mut elems: Vec<Vector<F>> = keep.iter().map(|&i| self.basis[i].clone()).collect();
        let leads: Vec<Term<F>> = keep.iter().map(|&i| self.leads[i].clone()).collect();
        for idx in 0..elems.len() {
            let others: Vec<Vector<F>> =
                elems.iter().enumerate().filter(|(j, _)| *j != idx).map(|(_, v)| v.clone()).collect();
            let other_leads: Vec<Term<F>> =
                leads.iter().enumerate().filter(|(j, _)| *j != idx).map(|(_, t)| t.clone()).collect();
            let v = &elems[idx];
            let head = v.lead().expect("nonzero").clone();
            let tail = Vector::from_sorted_terms(v.terms()[1..].to_vec());
            let tail = reduce(fm, &others, &other_leads, &tail);
            let mut terms = vec![head];
            terms.extend(tail.into_terms());
            elems[idx] = fm.make_monic(&Vector::from_sorted_terms(terms));
        }
        elems.sort_by(|a, b| fm.cmp_terms(b.lead().unwrap(), a.lead().unwrap()));
        elems
    }
}
