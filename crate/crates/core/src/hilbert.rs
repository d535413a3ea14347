//! Hilbert series, h-polynomials, Krull dimension and Hilbert coefficients
//! of graded modules, plus a standard-monomial counting oracle.

use serde::{Deserialize, Serialize};

use crate::resolution::BettiTable;
use crate::ring::{Field, Monomial, Polynomial};
use crate::Error;

/// Hilbert data of a finitely generated graded module over k[x_1..x_n].
///
/// The coefficient convention is e_i = h^{(i)}(1)/i!, so e_0 = h(1) and
/// e_1 = h'(1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    /// Σ_i (−1)^i Σ_j β_{i,j} z^j, index = power of z.
    pub numerator: Vec<i64>,
    pub h_poly: Vec<i64>,
    pub dim: i64,
    pub e: Vec<i64>,
    pub mu: usize,
}

fn trim(p: &mut Vec<i64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

/// Divide by (1 − z), assuming p(1) = 0.
fn divide_one_minus_z(p: &[i64]) -> Vec<i64> {
    // q_k = Σ_{j ≤ k} p_j
    let mut q = Vec::with_capacity(p.len());
    let mut acc = 0;
    for &c in &p[..p.len().saturating_sub(1)] {
        acc += c;
        q.push(acc);
    }
    debug_assert_eq!(acc + p.last().copied().unwrap_or(0), 0);
    q
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

impl HilbertData {
    /// The Hilbert function in degrees 0..=up_to, from h/(1−z)^dim.
    pub fn hilbert_function(&self, up_to: usize) -> Vec<i64> {
        expand_series(&self.h_poly, self.dim, up_to)
    }

    /// Total length for a module of dimension zero.
    pub fn length(&self) -> Option<i64> {
        (self.dim == 0).then(|| self.h_poly.iter().sum())
    }

    pub fn e0(&self) -> i64 {
        self.e[0]
    }

    pub fn e1(&self) -> i64 {
        self.e.get(1).copied().unwrap_or(0)
    }
}

/// Coefficients of p(z)/(1−z)^d through degree `up_to`.
pub fn expand_series(p: &[i64], d: i64, up_to: usize) -> Vec<i64> {
    (0..=up_to as i64)
        .map(|m| {
            p.iter()
                .enumerate()
                .map(|(j, &c)| {
                    let k = m - j as i64;
                    if k < 0 {
                        0
                    } else if d == 0 {
                        if k == 0 {
                            c
                        } else {
                            0
                        }
                    } else {
                        c * binomial(k + d - 1, d - 1)
                    }
                })
                .sum()
        })
        .collect()
}

/// Hilbert data of the module resolved by `bt` over a polynomial ring in
/// `nvars` variables.
pub fn hilbert_series(bt: &BettiTable, nvars: usize) -> Result<HilbertData, Error> {
    let mut numerator: Vec<i64> = Vec::new();
    for ((i, j), b) in bt.entries() {
        if j < 0 {
            return Err(Error::Usage(format!("generator in negative degree {j} is not supported")));
        }
        let j = j as usize;
        if numerator.len() <= j {
            numerator.resize(j + 1, 0);
        }
        let sign = if i % 2 == 0 { 1 } else { -1 };
        numerator[j] += sign * b as i64;
    }
    trim(&mut numerator);
    if numerator.is_empty() {
        return Err(Error::ZeroModule);
    }
    let mut h = numerator.clone();
    let mut divisions = 0;
    while h.iter().sum::<i64>() == 0 {
        h = divide_one_minus_z(&h);
        trim(&mut h);
        divisions += 1;
    }
    let e = (0..h.len() as i64)
        .map(|i| h.iter().enumerate().map(|(k, &c)| binomial(k as i64, i) * c).sum())
        .collect();
    Ok(HilbertData {
        numerator,
        h_poly: h,
        dim: nvars as i64 - divisions,
        e,
        mu: min_generators(bt),
    })
}

/// μ = Σ_j β_{0,j}.
pub fn min_generators(bt: &BettiTable) -> usize {
    bt.min_generators()
}

/// Number of monomials of each degree 0..=up_to divisible by none of the
/// given monomial generators. Independent of any Gröbner machinery.
pub fn standard_monomial_hilbert<F: Field>(
    nvars: usize,
    gens: &[Polynomial<F>],
    up_to: usize,
) -> Result<Vec<u64>, Error> {
    let mut monos: Vec<&Monomial> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        if !g.is_monomial() {
            return Err(Error::NotMonomial(format!("generator with {} terms", g.len())));
        }
        monos.push(g.leading_monomial().unwrap());
    }
    Ok((0..=up_to as u32)
        .map(|d| {
            Monomial::all_of_degree(nvars, d)
                .iter()
                .filter(|m| !monos.iter().any(|g| g.divides(m)))
                .count() as u64
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{MonomialOrder, Rationals, Ring};

    fn table(steps: &[Vec<i64>]) -> BettiTable {
        BettiTable::from_degrees(steps).unwrap()
    }

    #[test]
    fn example_tables() {
        let h = hilbert_series(&table(&[vec![0], vec![2, 2, 5], vec![3, 6]]), 2).unwrap();
        assert_eq!(h.h_poly, vec![1, 2, 1, 1, 1]);
        assert_eq!((h.dim, h.e0(), h.e1()), (0, 6, 11));
        let h = hilbert_series(&table(&[vec![0], vec![3, 3, 4], vec![4, 6]]), 2).unwrap();
        assert_eq!(h.h_poly, vec![1, 2, 3, 2, 1]);
        assert_eq!((h.e0(), h.e1()), (9, 18));
        let h = hilbert_series(&table(&[vec![0], vec![2, 2], vec![3]]), 2).unwrap();
        assert_eq!(h.numerator, vec![1, 0, -2, 1]);
        assert_eq!(h.h_poly, vec![1, 1, -1]);
        assert_eq!((h.dim, h.e0(), h.e1()), (1, 1, -1));
        assert_eq!(h.mu, 1);
    }

    #[test]
    fn free_module_series() {
        let h = hilbert_series(&table(&[vec![1, 3]]), 2).unwrap();
        assert_eq!(h.mu, 2);
        assert_eq!(h.dim, 2);
        assert_eq!(h.hilbert_function(4), vec![0, 1, 2, 4, 6]);
    }

    #[test]
    fn oracle_examples() {
        let r = Ring::new(Rationals, &["x", "y"], MonomialOrder::GRevLex).unwrap();
        let g: Vec<_> = ["x^2", "x*y", "y^5"].iter().map(|s| r.parse(s).unwrap()).collect();
        assert_eq!(standard_monomial_hilbert(2, &g, 6).unwrap(), vec![1, 2, 1, 1, 1, 0, 0]);
        assert_eq!(standard_monomial_hilbert(2, &[r.one()], 3).unwrap(), vec![0; 4]);
        assert_eq!(standard_monomial_hilbert::<Rationals>(2, &[], 3).unwrap(), vec![1, 2, 3, 4]);
        assert!(standard_monomial_hilbert(2, &[r.parse("x + y").unwrap()], 3).is_err());
    }

    #[test]
    fn series_expansion_matches_hilbert_function() {
        let h = hilbert_series(&table(&[vec![0], vec![2, 2], vec![3]]), 2).unwrap();
        // R/(x^2, xy): 1, 2, 1, 1, ...
        assert_eq!(h.hilbert_function(5), vec![1, 2, 1, 1, 1, 1]);
        assert_eq!(expand_series(&h.numerator, 2, 5), h.hilbert_function(5));
    }
}
