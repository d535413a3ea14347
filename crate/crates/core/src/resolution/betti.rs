use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Graded Betti numbers β_{i,j} of a minimal graded free resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    beta: BTreeMap<(usize, i64), usize>,
    p: usize,
    alpha: Vec<i64>,
    gamma: Vec<i64>,
}

impl BettiTable {
    /// Build from the basis degrees of each step F_0, ..., F_p. Trailing
    /// empty steps are dropped; an empty F_0 is the zero module.
    pub fn from_degrees(steps: &[Vec<i64>]) -> Result<Self, crate::Error> {
        let mut steps: Vec<&Vec<i64>> = steps.iter().collect();
        while steps.last().is_some_and(|s| s.is_empty()) {
            steps.pop();
        }
        if steps.is_empty() {
            return Err(crate::Error::ZeroModule);
        }
        let mut beta = BTreeMap::new();
        let mut alpha = Vec::new();
        let mut gamma = Vec::new();
        for (i, degs) in steps.iter().enumerate() {
            if degs.is_empty() {
                return Err(crate::Error::NotMinimal(format!("step {i} is empty inside the resolution")));
            }
            for &d in degs.iter() {
                *beta.entry((i, d)).or_insert(0) += 1;
            }
            alpha.push(*degs.iter().max().unwrap());
            gamma.push(*degs.iter().min().unwrap());
        }
        Ok(BettiTable {
            beta,
            p: steps.len() - 1,
            alpha,
            gamma,
        })
    }

    pub fn get(&self, i: usize, j: i64) -> usize {
        self.beta.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, i64), usize)> + '_ {
        self.beta.iter().map(|(k, v)| (*k, *v))
    }

    /// Projective dimension.
    pub fn pd(&self) -> usize {
        self.p
    }

    /// α_i = max{j : β_{i,j} ≠ 0}.
    pub fn alpha(&self) -> &[i64] {
        &self.alpha
    }

    /// γ_i = min{j : β_{i,j} ≠ 0}.
    pub fn gamma(&self) -> &[i64] {
        &self.gamma
    }

    pub fn total(&self, i: usize) -> usize {
        self.beta.range((i, i64::MIN)..=(i, i64::MAX)).map(|(_, v)| v).sum()
    }

    pub fn totals(&self) -> Vec<usize> {
        (0..=self.p).map(|i| self.total(i)).collect()
    }

    pub fn is_pure(&self) -> bool {
        let pure = self.alpha == self.gamma;
        debug_assert!(!pure || self.is_quasi_pure());
        pure
    }

    pub fn is_quasi_pure(&self) -> bool {
        (1..=self.p).all(|i| self.gamma[i] >= self.alpha[i - 1])
    }

    /// max_i (α_i − i).
    pub fn regularity(&self) -> i64 {
        self.alpha.iter().enumerate().map(|(i, a)| a - i as i64).max().unwrap()
    }

    /// Σ_j β_{0,j}.
    pub fn min_generators(&self) -> usize {
        self.total(0)
    }

    /// Text rendering: a `total:` line, then one line per row r with entries
    /// β_{i,i+r}, zeros shown as `.`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let totals: Vec<String> = self.totals().iter().map(|t| t.to_string()).collect();
        writeln!(out, "total: {}", totals.join(" ")).unwrap();
        let lo = (0..=self.p).map(|i| self.gamma[i] - i as i64).min().unwrap();
        let hi = (0..=self.p).map(|i| self.alpha[i] - i as i64).max().unwrap();
        for r in lo..=hi {
            let row: Vec<String> = (0..=self.p)
                .map(|i| match self.get(i, i as i64 + r) {
                    0 => ".".to_string(),
                    b => b.to_string(),
                })
                .collect();
            writeln!(out, "{r}: {}", row.join(" ")).unwrap();
        }
        out
    }
}

/// Invariants read off a minimal resolution over a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologicalInvariants {
    pub pd: usize,
    pub depth: i64,
    pub dim: i64,
    pub reg: i64,
    pub is_cm: bool,
}

/// pd, depth (Auslander–Buchsbaum), dimension, regularity and the
/// Cohen–Macaulay test for a module over a polynomial ring in `nvars`
/// variables whose Krull dimension is `hilbert_dim`.
pub fn homological_invariants(bt: &BettiTable, nvars: usize, hilbert_dim: i64) -> HomologicalInvariants {
    let pd = bt.pd();
    let depth = nvars as i64 - pd as i64;
    HomologicalInvariants {
        pd,
        depth,
        dim: hilbert_dim,
        reg: bt.regularity(),
        is_cm: depth == hilbert_dim,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn embedded() -> BettiTable {
        BettiTable::from_degrees(&[vec![0], vec![2, 2], vec![3]]).unwrap()
    }

    #[test]
    fn renders_example_table() {
        assert_eq!(embedded().render(), "total: 1 2 1\n0: 1 . .\n1: . 2 1\n");
    }

    #[test]
    fn purity_flags() {
        let t = embedded();
        assert!(t.is_pure() && t.is_quasi_pure());
        let t3 = BettiTable::from_degrees(&[vec![0], vec![3, 3, 4], vec![4, 6]]).unwrap();
        assert!(!t3.is_pure() && t3.is_quasi_pure());
        assert_eq!(t3.gamma(), &[0, 3, 4]);
        assert_eq!(t3.alpha(), &[0, 4, 6]);
        let t4 = BettiTable::from_degrees(&[vec![0], vec![2, 2, 5], vec![3, 6]]).unwrap();
        assert!(!t4.is_quasi_pure());
        assert_eq!(t4.regularity(), 4);
    }

    #[test]
    fn free_module_table() {
        let t = BettiTable::from_degrees(&[vec![2]]).unwrap();
        assert_eq!(t.get(0, 2), 1);
        assert_eq!(t.pd(), 0);
        assert_eq!(t.render(), "total: 1\n2: 1\n");
        let t = BettiTable::from_degrees(&[vec![1, 3]]).unwrap();
        assert_eq!(t.min_generators(), 2);
    }

    #[test]
    fn invariants_of_examples() {
        let inv = homological_invariants(&embedded(), 2, 1);
        assert_eq!((inv.pd, inv.depth, inv.dim, inv.is_cm), (2, 0, 1, false));
        let t3 = BettiTable::from_degrees(&[vec![0], vec![3, 3, 4], vec![4, 6]]).unwrap();
        let inv = homological_invariants(&t3, 2, 0);
        assert!(inv.is_cm);
        assert_eq!(inv.depth, 0);
    }

    #[test]
    fn zero_module_is_rejected() {
        assert!(BettiTable::from_degrees(&[]).is_err());
        assert!(BettiTable::from_degrees(&[vec![]]).is_err());
    }
}
