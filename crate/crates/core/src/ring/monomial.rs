use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// A monomial as a dense exponent vector with its total degree cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u32; 8]>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial {
            degree: exps.iter().sum(),
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[index] = 1;
        m.degree = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u32; 8]> =
            self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        Monomial {
            degree: exps.iter().sum(),
            exps,
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Insert a new variable with the given exponent at `index`.
    pub fn insert_var(&self, index: usize, exp: u32) -> Monomial {
        let mut exps = self.exps.clone();
        exps.insert(index, exp);
        Monomial {
            exps,
            degree: self.degree + exp,
        }
    }

    /// Drop the variable at `index`, returning its exponent.
    pub fn remove_var(&self, index: usize) -> (Monomial, u32) {
        let mut exps = self.exps.clone();
        let e = exps.remove(index);
        (
            Monomial {
                exps,
                degree: self.degree - e,
            },
            e,
        )
    }

    /// All monomials of the given degree in `nvars` variables, in
    /// lexicographically descending order.
    pub fn all_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; nvars];
        fn rec(pos: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if pos + 1 == exps.len() {
                exps[pos] = left;
                out.push(Monomial::from_exponents(exps));
                return;
            }
            for e in (0..=left).rev() {
                exps[pos] = e;
                rec(pos + 1, left - e, exps, out);
            }
            exps[pos] = 0;
        }
        if nvars == 0 {
            if degree == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        rec(0, degree, &mut exps, &mut out);
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{:?}", self.exps.as_slice())
    }
}

/// Global monomial orders on the polynomial ring. Variables are ordered
/// x_0 > x_1 > ... > x_{n-1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    #[serde(rename = "grlex")]
    GrLex,
    #[default]
    #[serde(rename = "grevlex")]
    GRevLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::GrLex => a.degree.cmp(&b.degree).then_with(|| lex(a, b)),
            MonomialOrder::GRevLex => a.degree.cmp(&b.degree).then_with(|| revlex(a, b)),
        }
    }

    pub fn is_graded(&self) -> bool {
        !matches!(self, MonomialOrder::Lex)
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lex" => Ok(MonomialOrder::Lex),
            "grlex" => Ok(MonomialOrder::GrLex),
            "grevlex" => Ok(MonomialOrder::GRevLex),
            _ => Err(crate::Error::Usage(format!("unknown monomial order {s:?}"))),
        }
    }
}

fn lex(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.exps.iter().zip(&b.exps) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

// equal degrees assumed; smaller exponent in the last differing variable wins
fn revlex(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.exps.iter().zip(&b.exps).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_prefers_degree_then_small_last_exponent() {
        let o = MonomialOrder::GRevLex;
        // y^3 > x^2 (degree first)
        assert_eq!(o.cmp(&m(&[0, 3]), &m(&[2, 0])), Ordering::Greater);
        // x^2 > x*y > y^2
        assert_eq!(o.cmp(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1]), &m(&[0, 2])), Ordering::Greater);
        // x*z < y^2 in grevlex on three variables
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(MonomialOrder::GrLex.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_ignores_degree() {
        assert_eq!(MonomialOrder::Lex.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
    }

    #[test]
    fn enumerates_monomials_of_degree() {
        assert_eq!(Monomial::all_of_degree(2, 3).len(), 4);
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_of_degree(3, 0), vec![Monomial::one(3)]);
    }

    fn arb_mono(n: usize) -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..5, n).prop_map(|e| Monomial::from_exponents(&e))
    }

    proptest! {
        #[test]
        fn orders_are_multiplicative_and_global(a in arb_mono(3), b in arb_mono(3), w in arb_mono(3)) {
            for o in [MonomialOrder::Lex, MonomialOrder::GrLex, MonomialOrder::GRevLex] {
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&w), &b.mul(&w)));
                prop_assert_ne!(o.cmp(&Monomial::one(3), &a), Ordering::Greater);
                if a != b {
                    prop_assert_ne!(o.cmp(&a, &b), Ordering::Equal);
                }
            }
        }

        #[test]
        fn lcm_is_divisible_by_both(a in arb_mono(3), b in arb_mono(3)) {
            let l = a.lcm(&b);
            prop_assert!(a.divides(&l) && b.divides(&l));
            prop_assert_eq!(a.quotient_of(&l).unwrap().mul(&a), l);
        }
    }
}
