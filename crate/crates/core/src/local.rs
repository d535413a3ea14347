//! Local quotients k[x]_(x)/I: tangent cones, Artinian truncations,
//! Loewy length, superficial elements and Hilbert coefficients of G(A/I).

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::groebner::{ideal_basis, ideal_basis_within, local_standard_basis_with, GroebnerBasis, LocalLimits};
use crate::hilbert::{hilbert_series, HilbertData};
use crate::linalg::Matrix;
use crate::resolution::{betti_table, minimal_free_resolution, BettiTable, GradedFreeResolution, Presentation};
use crate::ring::{Field, FieldSpec, Monomial, MonomialOrder, Polynomial, Ring};
use crate::Error;

/// Invariants an instance may declare instead of having them computed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Declared {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cx: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cm: Option<bool>,
}

/// The on-disk form of an instance.
///
/// `ambient` optionally lists a sequence f_1..f_c defining A = Q/(f); the
/// module is then M = A/(ideal), i.e. the quotient of Q by `ambient` and
/// `ideal` together. Without it, A is the polynomial ring localized at the
/// origin and M = A/(ideal).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub vars: Vec<String>,
    #[serde(default)]
    pub ideal: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ambient: Vec<String>,
    #[serde(default, skip_serializing_if = "is_default")]
    pub declared: Declared,
}

fn is_default(d: &Declared) -> bool {
    *d == Declared::default()
}

impl InstanceFile {
    pub fn from_json(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::Instance(format!("line {}, column {}: {e}", e.line(), e.column())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// The field named in the file, or the default.
    pub fn field_spec(&self) -> Result<FieldSpec, Error> {
        match &self.field {
            Some(s) => s.parse(),
            None => Ok(FieldSpec::default()),
        }
    }
}

/// An ideal I ⊆ m of k[x_1..x_n], standing for the local module
/// M = k[x]_(x)/I, optionally over A = k[x]_(x)/(ambient).
#[derive(Clone, Debug)]
pub struct LocalInstance<F: Field> {
    pub ring: Ring<F>,
    pub ideal: Vec<Polynomial<F>>,
    pub ambient: Vec<Polynomial<F>>,
    pub declared: Declared,
}

fn parse_all<F: Field>(ring: &Ring<F>, items: &[String], what: &str) -> Result<Vec<Polynomial<F>>, Error> {
    items
        .iter()
        .enumerate()
        .map(|(i, s)| {
            ring.parse(s)
                .map_err(|e| Error::Instance(format!("{what}[{i}] {s:?}: {e}")))
        })
        .collect()
}

impl<F: Field> LocalInstance<F> {
    pub fn new(ring: Ring<F>, ideal: Vec<Polynomial<F>>) -> Result<Self, Error> {
        let inst = LocalInstance {
            ring,
            ideal,
            ambient: Vec::new(),
            declared: Declared::default(),
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn with_ambient(mut self, ambient: Vec<Polynomial<F>>) -> Result<Self, Error> {
        self.ambient = ambient;
        self.validate()?;
        Ok(self)
    }

    pub fn from_file(file: &InstanceFile, field: F) -> Result<Self, Error> {
        let ring = Ring::new(field, &file.vars, MonomialOrder::GRevLex)?;
        let ideal = parse_all(&ring, &file.ideal, "ideal")?;
        let ambient = parse_all(&ring, &file.ambient, "ambient")?;
        let inst = LocalInstance {
            ring,
            ideal,
            ambient,
            declared: file.declared.clone(),
        };
        inst.validate()?;
        Ok(inst)
    }

    /// Instance from text generators, for tests and examples.
    pub fn parse(field: F, vars: &[&str], ideal: &[&str]) -> Result<Self, Error> {
        let ring = Ring::new(field, vars, MonomialOrder::GRevLex)?;
        let ideal = ideal.iter().map(|s| ring.parse(s)).collect::<Result<_, _>>()?;
        Self::new(ring, ideal)
    }

    pub fn to_file(&self) -> InstanceFile {
        let spec = match self.ring.field().characteristic() {
            0 => "q".to_string(),
            p => format!("fp:{p}"),
        };
        InstanceFile {
            field: Some(spec),
            vars: self.ring.var_names().to_vec(),
            ideal: self.ideal.iter().map(|f| self.ring.format(f)).collect(),
            ambient: self.ambient.iter().map(|f| self.ring.format(f)).collect(),
            declared: self.declared.clone(),
        }
    }

    fn validate(&self) -> Result<(), Error> {
        for f in self.ambient.iter().chain(&self.ideal) {
            if !self.ring.field().is_zero(&self.ring.constant_term(f)) {
                return Err(Error::UnitIdeal(self.ring.format(f)));
            }
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    /// Generators of the ideal defining M as a quotient of the polynomial ring.
    pub fn module_ideal(&self) -> Vec<Polynomial<F>> {
        self.ambient.iter().chain(&self.ideal).filter(|f| !f.is_zero()).cloned().collect()
    }

    /// The same module cut by further elements of m.
    pub fn with_extra(&self, extra: &[Polynomial<F>]) -> Result<Self, Error> {
        let mut out = self.clone();
        out.ideal.extend(extra.iter().cloned());
        out.validate()?;
        Ok(out)
    }

    /// The ring A itself, as an instance (the ambient sequence as its ideal).
    pub fn ambient_instance(&self) -> Self {
        LocalInstance {
            ring: self.ring.clone(),
            ideal: self.ambient.clone(),
            ambient: Vec::new(),
            declared: Declared::default(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.module_ideal().iter().all(|f| f.is_homogeneous())
    }
}

/// Single-term reductions allowed to Mora's algorithm before switching to
/// the homogenization route.
const MORA_STEPS: usize = 10_000;

/// S-pairs allowed to the homogenization route.
const LAZARD_PAIRS: usize = 600;

/// Initial-form ideal in*(I) of the module ideal, as a reduced Gröbner
/// basis under the ring's order.
///
/// The initial forms of a standard basis for the local degree order
/// generate in*(I). When the quotient is Artinian at the origin, with
/// m^N ⊆ I locally, all terms of degree ≥ N are dropped along the way and
/// the computation is always finite and fast. Otherwise Mora's algorithm
/// runs under a step budget; if that runs out, the standard basis comes from
/// homogenizing with a new variable t and computing a Gröbner basis under a
/// graded order in which a larger power of t wins among monomials of equal
/// degree, again under a budget. Both routes are exact; when both budgets
/// run out the result is [`Error::Limit`], never a guess.
pub fn tangent_cone<F: Field>(inst: &LocalInstance<F>) -> Result<GroebnerBasis<F>, Error> {
    inst.validate()?;
    let gens = inst.module_ideal();
    let ring = &inst.ring;
    if gens.iter().all(|f| f.is_homogeneous()) {
        return Ok(ideal_basis(ring, &gens));
    }
    let (standard, corner) = match artinian_level(inst, &gens) {
        Some(level) => {
            let limits = LocalLimits { truncate_at: Some(level), max_steps: None };
            (local_standard_basis_with(ring, &gens, limits).expect("no step limit"), Some(level))
        }
        None => {
            let limits = LocalLimits { truncate_at: None, max_steps: Some(MORA_STEPS) };
            let sb = match local_standard_basis_with(ring, &gens, limits) {
                Some(sb) => sb,
                None => lazard_standard_basis(ring, &gens)?.ok_or_else(|| {
                    Error::Limit(format!(
                        "tangent cone: no standard basis within {MORA_STEPS} reduction steps or {LAZARD_PAIRS} homogenized S-pairs"
                    ))
                })?,
            };
            (sb, None)
        }
    };
    let mut forms: Vec<Polynomial<F>> =
        standard.iter().filter(|f| !f.is_zero()).map(|f| ring.initial_form(f)).collect::<Result<_, _>>()?;
    if let Some(level) = corner {
        forms.extend(Monomial::all_of_degree(ring.nvars(), level).into_iter().map(|m| ring.monomial(ring.field().one(), m)));
    }
    Ok(ideal_basis(ring, &forms))
}

/// The least N with m^N ⊆ I in the local ring, when k[x]/I is
/// zero-dimensional; `None` otherwise. By Nakayama, m^N ⊆ I locally as soon
/// as dim k[x]/(I + m^N) = dim k[x]/(I + m^{N+1}).
fn artinian_level<F: Field>(inst: &LocalInstance<F>, gens: &[Polynomial<F>]) -> Option<u32> {
    let global = ideal_basis(&inst.ring, gens);
    let leads: Vec<Monomial> =
        global.polynomials().iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
    let n = inst.nvars();
    let zero_dim = (0..n).all(|v| leads.iter().any(|m| m.degree() == m.exponent(v)));
    if !zero_dim {
        return None;
    }
    let mut level = 1;
    let mut dim = Truncation::new(inst, level).dim();
    loop {
        let next = Truncation::new(inst, level + 1).dim();
        if next == dim {
            return Some(level);
        }
        level += 1;
        dim = next;
    }
}

/// Standard basis from a Gröbner basis of the homogenized ideal, or `None`
/// past the pair budget.
fn lazard_standard_basis<F: Field>(
    ring: &Ring<F>,
    gens: &[Polynomial<F>],
) -> Result<Option<Vec<Polynomial<F>>>, Error> {
    let hring = ring.with_var_inserted(0, "_t", MonomialOrder::GrLex);
    let homog: Vec<Polynomial<F>> = gens.iter().map(|f| ring.homogenize(f, 0, &hring)).collect::<Result<_, _>>()?;
    Ok(ideal_basis_within(&hring, &homog, LAZARD_PAIRS)
        .map(|gb| gb.polynomials().iter().map(|g| ring.dehomogenize(g, 0)).collect()))
}

/// Everything about G(M) = R/in*(I) that the graded side computes.
#[derive(Clone, Debug)]
pub struct AssociatedGraded<F: Field> {
    pub tangent_cone: GroebnerBasis<F>,
    pub resolution: GradedFreeResolution<F>,
    pub betti: BettiTable,
    pub hilbert: HilbertData,
}

pub fn associated_graded<F: Field>(inst: &LocalInstance<F>) -> Result<AssociatedGraded<F>, Error> {
    let tc = tangent_cone(inst)?;
    let res = minimal_free_resolution(&Presentation::cyclic(&inst.ring, &tc.polynomials()))?;
    let betti = betti_table(&res)?;
    let hilbert = hilbert_series(&betti, inst.nvars())?;
    Ok(AssociatedGraded {
        tangent_cone: tc,
        resolution: res,
        betti,
        hilbert,
    })
}

/// Hilbert data of M, which is that of G(M) = R/in*(I).
pub fn local_hilbert_coefficients<F: Field>(inst: &LocalInstance<F>) -> Result<HilbertData, Error> {
    Ok(associated_graded(inst)?.hilbert)
}

/// Loewy length min{i : m^i M = 0}, the top degree of G(M) plus one.
pub fn loewy_length<F: Field>(inst: &LocalInstance<F>) -> Result<usize, Error> {
    let h = local_hilbert_coefficients(inst)?;
    if h.dim != 0 {
        return Err(Error::InfiniteLength);
    }
    Ok(h.h_poly.len())
}

/// The Artinian quotient k[x]/(I + m^N) with its standard-monomial basis.
#[derive(Clone, Debug)]
pub struct Truncation<F: Field> {
    pub level: u32,
    pub gb: GroebnerBasis<F>,
    pub basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl<F: Field> Truncation<F> {
    pub fn new(inst: &LocalInstance<F>, level: u32) -> Self {
        assert!(level >= 1, "truncation level must be positive");
        let n = inst.nvars();
        let mut gens = inst.module_ideal();
        gens.extend(Monomial::all_of_degree(n, level).into_iter().map(|m| inst.ring.monomial(inst.ring.field().one(), m)));
        let gb = ideal_basis(&inst.ring, &gens);
        let leads: Vec<Monomial> = gb.polynomials().iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
        let basis: Vec<Monomial> = (0..level)
            .flat_map(|d| Monomial::all_of_degree(n, d))
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .collect();
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Truncation { level, gb, basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of the class of f in the standard-monomial basis.
    pub fn coords(&self, f: &Polynomial<F>) -> Vec<F::Elem> {
        let field = self.gb.ring().field();
        let nf = self.gb.reduce_polynomial(f);
        let mut v = vec![field.zero(); self.basis.len()];
        for (c, m) in nf.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    /// The polynomial Σ v_i b_i.
    pub fn lift(&self, v: &[F::Elem]) -> Polynomial<F> {
        let ring = self.gb.ring();
        ring.from_terms(
            v.iter()
                .zip(&self.basis)
                .filter(|(c, _)| !ring.field().is_zero(c))
                .map(|(c, m)| (c.clone(), m.clone()))
                .collect(),
        )
    }
}

/// Standard monomials of k[x]/(I + m^N): a basis of M/m^N M.
pub fn truncated_quotient_basis<F: Field>(inst: &LocalInstance<F>, level: u32) -> Vec<Monomial> {
    Truncation::new(inst, level).basis
}

/// Outcome of the window test for a candidate superficial element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperficialCheck {
    pub window: (u32, u32),
    pub holds: bool,
    /// First n in the window where (m^{n+1}M : ℓ) ∩ m^c M ≠ m^n M.
    pub failed_at: Option<u32>,
}

/// Test (m^{n+1}M : ℓ) ∩ m^c M = m^n M for all n in the window, with c the
/// window start. Equivalently, multiplication by ℓ from M/m^n M to
/// M/m^{n+1} M is injective on the image of m^c M.
pub fn check_superficial<F: Field>(
    inst: &LocalInstance<F>,
    ell: &Polynomial<F>,
    window: (u32, u32),
) -> Result<SuperficialCheck, Error> {
    let (c, hi) = window;
    if c < 1 || c > hi {
        return Err(Error::Usage(format!("bad window {c}:{hi}")));
    }
    let ring = &inst.ring;
    let field = ring.field();
    let n_vars = inst.nvars();
    let mut lower = Truncation::new(inst, c);
    for n in c..=hi {
        let upper = Truncation::new(inst, n + 1);
        if n > c {
            lower = Truncation::new(inst, n);
        }
        let spanning: Vec<Vec<F::Elem>> = (c..n)
            .flat_map(|d| Monomial::all_of_degree(n_vars, d))
            .map(|m| lower.coords(&ring.monomial(field.one(), m)))
            .collect();
        let images: Vec<Vec<F::Elem>> = spanning
            .iter()
            .map(|v| upper.coords(&ring.mul(ell, &lower.lift(v))))
            .collect();
        let before = Matrix::from_columns(field, lower.dim(), &spanning).rank(field);
        let after = Matrix::from_columns(field, upper.dim(), &images).rank(field);
        if after < before {
            return Ok(SuperficialCheck {
                window,
                holds: false,
                failed_at: Some(n),
            });
        }
    }
    Ok(SuperficialCheck {
        window,
        holds: true,
        failed_at: None,
    })
}

/// Random linear form with coefficients drawn from the field.
pub fn random_linear_form<F: Field, R: rand::Rng>(ring: &Ring<F>, rng: &mut R) -> Polynomial<F> {
    let n = ring.nvars();
    ring.from_terms((0..n).map(|i| (ring.field().random(rng), Monomial::variable(n, i))).collect())
}

/// Search for a superficial linear form among `trials` random candidates
/// drawn from a generator seeded with `seed`.
pub fn find_superficial<F: Field>(
    inst: &LocalInstance<F>,
    trials: usize,
    window: (u32, u32),
    seed: u64,
) -> Result<(Polynomial<F>, SuperficialCheck), Error> {
    let dim = local_hilbert_coefficients(inst)?.dim;
    if dim < 1 {
        return Err(Error::Usage("superficial elements are only sought when dim M ≥ 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_failure = -1;
    for _ in 0..trials {
        let ell = random_linear_form(&inst.ring, &mut rng);
        let check = check_superficial(inst, &ell, window)?;
        if check.holds {
            return Ok((ell, check));
        }
        last_failure = check.failed_at.map_or(-1, i64::from);
    }
    Err(Error::NoSuperficial { trials, last_failure })
}

/// Length of the local ring k[x]_(x)/(I + extra) when it is at most
/// `bound`, else `None`. The dimensions of k[x]/(J + m^N) grow with N until
/// two consecutive ones agree, and then m^N ⊆ J locally by Nakayama.
fn local_length_at_most<F: Field>(inst: &LocalInstance<F>, bound: usize) -> Option<usize> {
    let mut prev = Truncation::new(inst, 1).dim();
    for level in 2.. {
        let d = Truncation::new(inst, level).dim();
        if d > bound {
            return None;
        }
        if d == prev {
            return Some(d);
        }
        prev = d;
    }
    unreachable!()
}

/// Linear forms cutting M down to length e_0, with that length.
pub type Certificate<F> = (Vec<Polynomial<F>>, usize);

/// Proof that M is Cohen–Macaulay, from q = (ℓ_1..ℓ_d) for d = dim M random
/// linear forms.
///
/// For any system of parameters λ(M/qM) ≥ e(q, M) ≥ e_0(M), and the first
/// inequality is an equality exactly when M is Cohen–Macaulay. So
/// λ(M/qM) = e_0(M) settles the question. Any other outcome proves nothing,
/// since the forms may fail to generate a reduction of m, and gives `None`.
/// Returns the forms and the length.
pub fn cm_certificate<F: Field>(
    inst: &LocalInstance<F>,
    hilbert: &HilbertData,
    seed: u64,
) -> Result<Option<Certificate<F>>, Error> {
    if hilbert.dim < 1 {
        return Ok(None);
    }
    let e0 = hilbert.e0();
    if e0 < 1 {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let forms: Vec<Polynomial<F>> = (0..hilbert.dim).map(|_| random_linear_form(&inst.ring, &mut rng)).collect();
    let cut = inst.with_extra(&forms)?;
    Ok(match local_length_at_most(&cut, e0 as usize) {
        Some(len) if len as i64 == e0 => Some((forms, len)),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{PrimeField, Rationals};

    fn q(ideal: &[&str]) -> LocalInstance<Rationals> {
        LocalInstance::parse(Rationals, &["x", "y"], ideal).unwrap()
    }

    fn tc_strings(inst: &LocalInstance<Rationals>) -> Vec<String> {
        tangent_cone(inst).unwrap().polynomials().iter().map(|f| inst.ring.format(f)).collect()
    }

    #[test]
    fn tangent_cone_examples() {
        assert_eq!(tc_strings(&q(&["x^2", "x*y"])), vec!["x^2", "x*y"]);
        assert_eq!(tc_strings(&q(&["x^2 - y^3"])), vec!["x^2"]);
        assert_eq!(tc_strings(&q(&["x^2 - y^3", "x*y"])), vec!["y^4", "x^2", "x*y"]);
    }

    #[test]
    fn unit_generators_are_rejected() {
        assert!(matches!(LocalInstance::parse(Rationals, &["x"], &["x + 1"]), Err(Error::UnitIdeal(_))));
    }

    #[test]
    fn truncations() {
        let b = truncated_quotient_basis(&q(&["x^2 - y^3", "x*y"]), 10);
        assert_eq!(b.len(), 5);
        assert_eq!(truncated_quotient_basis(&q(&[]), 2).len(), 3);
        assert_eq!(truncated_quotient_basis(&q(&["x", "y"]), 4).len(), 1);
    }

    #[test]
    fn loewy_lengths() {
        assert_eq!(loewy_length(&q(&["x^2", "x*y", "y^5"])).unwrap(), 5);
        assert_eq!(loewy_length(&q(&["x", "y"])).unwrap(), 1);
        assert_eq!(loewy_length(&q(&["x^2 - y^3", "x*y"])).unwrap(), 4);
        assert!(matches!(loewy_length(&q(&["x^2"])), Err(Error::InfiniteLength)));
    }

    #[test]
    fn local_hilbert_data() {
        let h = local_hilbert_coefficients(&q(&["x^2 - y^3"])).unwrap();
        assert_eq!((h.h_poly.clone(), h.e0(), h.e1(), h.dim), (vec![1, 1], 2, 1, 1));
        let h = local_hilbert_coefficients(&q(&["x^2 - y^3", "x*y"])).unwrap();
        assert_eq!((h.e0(), h.dim), (5, 0));
    }

    #[test]
    fn superficial_examples() {
        let cusp = q(&["x^2 - y^3"]);
        let y = cusp.ring.parse("y").unwrap();
        let x = cusp.ring.parse("x").unwrap();
        assert!(check_superficial(&cusp, &y, (2, 12)).unwrap().holds);
        assert!(!check_superficial(&cusp, &x, (2, 12)).unwrap().holds);
        let free = q(&[]);
        assert!(check_superficial(&free, &free.ring.parse("x").unwrap(), (2, 12)).unwrap().holds);
        let emb = LocalInstance::parse(PrimeField::new(32003).unwrap(), &["x", "y"], &["x^2", "x*y"]).unwrap();
        let (ell, check) = find_superficial(&emb, 5, (2, 12), 1).unwrap();
        assert!(check.holds);
        assert_eq!(ell.total_degree(), Some(1));
    }

    #[test]
    fn instance_json_round_trip() {
        let text = r#"{"field": "q", "vars": ["x", "y"], "ideal": ["x^2-y^3", "x*y"], "declared": {"cx": 1}}"#;
        let file = InstanceFile::from_json(text).unwrap();
        assert_eq!(file.declared.cx, Some(1));
        let inst = LocalInstance::from_file(&file, Rationals).unwrap();
        assert_eq!(inst.ideal.len(), 2);
        let again = InstanceFile::from_json(&inst.to_file().to_json()).unwrap();
        assert_eq!(again.ideal, vec!["-y^3 + x^2", "x*y"]);
        assert!(InstanceFile::from_json("{\"vars\": 3}").is_err());
    }
}
