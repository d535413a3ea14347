use std::cmp::Ordering;

use super::field::Field;
use super::monomial::{Monomial, MonomialOrder};
use crate::Error;

/// A polynomial ring k[x_0, ..., x_{n-1}] with a fixed monomial order.
#[derive(Clone, Debug, PartialEq)]
pub struct Ring<F: Field> {
    field: F,
    vars: Vec<String>,
    order: MonomialOrder,
}

/// A polynomial: terms sorted strictly descending in the ring's order, no
/// zero coefficients. The empty term list is the zero polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<F: Field> {
    terms: Vec<(F::Elem, Monomial)>,
}

fn valid_var_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl<F: Field> Ring<F> {
    pub fn new<S: AsRef<str>>(field: F, vars: &[S], order: MonomialOrder) -> Result<Self, Error> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !valid_var_name(v) {
                return Err(Error::Usage(format!("invalid variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Usage(format!("duplicate variable {v:?}")));
            }
        }
        Ok(Ring { field, vars, order })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables and field under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Ring<F> {
        Ring {
            field: self.field.clone(),
            vars: self.vars.clone(),
            order,
        }
    }

    /// The ring with an extra variable inserted at `index`.
    pub fn with_var_inserted(&self, index: usize, name: &str, order: MonomialOrder) -> Ring<F> {
        let mut vars = self.vars.clone();
        vars.insert(index, name.to_string());
        Ring {
            field: self.field.clone(),
            vars,
            order,
        }
    }

    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    pub fn zero(&self) -> Polynomial<F> {
        Polynomial { terms: Vec::new() }
    }

    pub fn one(&self) -> Polynomial<F> {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: F::Elem) -> Polynomial<F> {
        self.monomial(c, Monomial::one(self.nvars()))
    }

    pub fn monomial(&self, c: F::Elem, m: Monomial) -> Polynomial<F> {
        if self.field.is_zero(&c) {
            self.zero()
        } else {
            Polynomial { terms: vec![(c, m)] }
        }
    }

    pub fn var(&self, index: usize) -> Polynomial<F> {
        self.monomial(self.field.one(), Monomial::variable(self.nvars(), index))
    }

    /// Canonicalize an arbitrary term list: sort, merge equal monomials, drop zeros.
    pub fn from_terms(&self, mut terms: Vec<(F::Elem, Monomial)>) -> Polynomial<F> {
        terms.sort_by(|a, b| self.order.cmp(&b.1, &a.1));
        let mut out: Vec<(F::Elem, Monomial)> = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            match out.last_mut() {
                Some((lc, lm)) if *lm == m => *lc = self.field.add(lc, &c),
                _ => {
                    if let Some((lc, _)) = out.last() {
                        if self.field.is_zero(lc) {
                            out.pop();
                        }
                    }
                    out.push((c, m));
                }
            }
        }
        if let Some((lc, _)) = out.last() {
            if self.field.is_zero(lc) {
                out.pop();
            }
        }
        Polynomial { terms: out }
    }

    /// Re-sort a polynomial coming from a ring with the same variables but
    /// another order.
    pub fn reorder(&self, f: &Polynomial<F>) -> Polynomial<F> {
        let mut terms = f.terms.clone();
        terms.sort_by(|a, b| self.order.cmp(&b.1, &a.1));
        Polynomial { terms }
    }

    fn merge(&self, f: &Polynomial<F>, g: &Polynomial<F>, negate_g: bool) -> Polynomial<F> {
        let k = &self.field;
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < f.terms.len() || j < g.terms.len() {
            let ord = if i == f.terms.len() {
                Ordering::Less
            } else if j == g.terms.len() {
                Ordering::Greater
            } else {
                self.order.cmp(&f.terms[i].1, &g.terms[j].1)
            };
            match ord {
                Ordering::Greater => {
                    out.push(f.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (c, m) = &g.terms[j];
                    let c = if negate_g { k.neg(c) } else { c.clone() };
                    out.push((c, m.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_g {
                        k.sub(&f.terms[i].0, &g.terms[j].0)
                    } else {
                        k.add(&f.terms[i].0, &g.terms[j].0)
                    };
                    if !k.is_zero(&c) {
                        out.push((c, f.terms[i].1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { terms: out }
    }

    pub fn add(&self, f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
        self.merge(f, g, false)
    }

    pub fn sub(&self, f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
        self.merge(f, g, true)
    }

    pub fn neg(&self, f: &Polynomial<F>) -> Polynomial<F> {
        Polynomial {
            terms: f.terms.iter().map(|(c, m)| (self.field.neg(c), m.clone())).collect(),
        }
    }

    pub fn scale(&self, f: &Polynomial<F>, c: &F::Elem) -> Polynomial<F> {
        if self.field.is_zero(c) {
            return self.zero();
        }
        Polynomial {
            terms: f.terms.iter().map(|(a, m)| (self.field.mul(a, c), m.clone())).collect(),
        }
    }

    /// c * m * f; multiplication by a term preserves the order of terms.
    pub fn mul_term(&self, f: &Polynomial<F>, c: &F::Elem, m: &Monomial) -> Polynomial<F> {
        if self.field.is_zero(c) {
            return self.zero();
        }
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|(a, n)| (self.field.mul(a, c), n.mul(m)))
                .collect(),
        }
    }

    pub fn mul(&self, f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
        let mut acc = self.zero();
        for (c, m) in &g.terms {
            acc = self.add(&acc, &self.mul_term(f, c, m));
        }
        acc
    }

    pub fn pow(&self, f: &Polynomial<F>, e: u32) -> Polynomial<F> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, f);
        }
        acc
    }

    pub fn make_monic(&self, f: &Polynomial<F>) -> Polynomial<F> {
        match f.leading_coeff() {
            None => f.clone(),
            Some(c) => {
                let inv = self.field.inv(c).expect("nonzero leading coefficient");
                self.scale(f, &inv)
            }
        }
    }

    /// Homogeneous component of lowest degree (the initial form f*).
    pub fn initial_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>, Error> {
        let ord = f.ord().ok_or(Error::ZeroPolynomial)?;
        Ok(Polynomial {
            terms: f.terms.iter().filter(|(_, m)| m.degree() == ord).cloned().collect(),
        })
    }

    /// Homogenization with a new variable inserted at `t_index`, returned in
    /// `target` (which must have `nvars + 1` variables).
    pub fn homogenize(
        &self,
        f: &Polynomial<F>,
        t_index: usize,
        target: &Ring<F>,
    ) -> Result<Polynomial<F>, Error> {
        let d = f.total_degree().ok_or(Error::ZeroPolynomial)?;
        debug_assert_eq!(target.nvars(), self.nvars() + 1);
        let terms = f
            .terms
            .iter()
            .map(|(c, m)| (c.clone(), m.insert_var(t_index, d - m.degree())))
            .collect();
        Ok(target.from_terms(terms))
    }

    /// Substitute 1 for the variable at `t_index` of `source`, landing in `self`.
    pub fn dehomogenize(&self, f: &Polynomial<F>, t_index: usize) -> Polynomial<F> {
        let terms = f.terms.iter().map(|(c, m)| (c.clone(), m.remove_var(t_index).0)).collect();
        self.from_terms(terms)
    }

    /// Value at the origin.
    pub fn constant_term(&self, f: &Polynomial<F>) -> F::Elem {
        f.terms
            .iter()
            .find(|(_, m)| m.is_one())
            .map(|(c, _)| c.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    /// Substitute polynomials for the variables (all landing in `target`).
    pub fn substitute(&self, f: &Polynomial<F>, images: &[Polynomial<F>], target: &Ring<F>) -> Polynomial<F> {
        let mut acc = target.zero();
        for (c, m) in &f.terms {
            let mut t = target.constant(c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = target.mul(&t, &target.pow(&images[v], e));
                }
            }
            acc = target.add(&acc, &t);
        }
        acc
    }

    pub fn format(&self, f: &Polynomial<F>) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (c, m)) in f.terms.iter().enumerate() {
            let (neg, abs) = self.field.display(c);
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.format_monomial(m);
            if mono.is_empty() {
                out.push_str(&abs);
            } else if abs == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&abs);
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (v, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.vars[v].clone()),
                e => parts.push(format!("{}^{}", self.vars[v], e)),
            }
        }
        parts.join("*")
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial<F>, Error> {
        super::parse::parse_polynomial(text, self)
    }
}

impl<F: Field> Polynomial<F> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(F::Elem, Monomial)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(F::Elem, Monomial)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.0)
    }

    /// Largest degree of a term.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(_, m)| m.degree()).max()
    }

    /// Degree of the lowest-degree term.
    pub fn ord(&self) -> Option<u32> {
        self.terms.iter().map(|(_, m)| m.degree()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((_, m)) => self.terms.iter().all(|(_, n)| n.degree() == m.degree()),
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }
}
