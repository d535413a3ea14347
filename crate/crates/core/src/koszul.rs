//! Koszul complexes on graded modules and on truncations of
//! L(M) = ⊕_n M/m^{n+1}M, their homology by degreewise linear algebra, and
//! depth via Koszul vanishing.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::groebner::{buchberger, syzygy_module, GroebnerBasis};
use crate::linalg::Matrix;
use crate::local::{check_superficial, tangent_cone, LocalInstance, Truncation};
use crate::resolution::{prune_units, Presentation};
use crate::ring::{Field, FreeModule, Monomial, Polynomial, Term, Vector};
use crate::theorems::{Hypothesis, Verdict};
use crate::Error;

/// A graded module given degree by degree, together with homogeneous
/// elements acting on it.
pub trait GradedPieces<F: Field> {
    fn field(&self) -> &F;
    fn piece_dim(&self, n: i64) -> Result<usize, Error>;
    fn num_elements(&self) -> usize;
    fn element_degree(&self, j: usize) -> i64;
    /// Multiply a degree-n element (in coordinates) by element j.
    fn act(&self, j: usize, n: i64, v: &[F::Elem]) -> Result<Vec<F::Elem>, Error>;
}

struct Piece {
    basis: Vec<(Monomial, usize)>,
    index: HashMap<(Monomial, usize), usize>,
}

/// The graded pieces of coker(presentation) in a window of degrees, with
/// homogeneous ring elements acting.
pub struct GradedQuotient<F: Field> {
    gb: GroebnerBasis<F>,
    elements: Vec<Polynomial<F>>,
    degrees: Vec<i64>,
    range: (i64, i64),
    pieces: BTreeMap<i64, Piece>,
}

impl<F: Field> GradedQuotient<F> {
    /// Pieces in degrees lo..=hi.
    pub fn new(p: &Presentation<F>, elements: &[Polynomial<F>], range: (i64, i64)) -> Result<Self, Error> {
        let ring = p.module.ring();
        for f in elements {
            if f.is_zero() || !f.is_homogeneous() {
                return Err(Error::NotHomogeneous(ring.format(f)));
            }
        }
        let gb = buchberger(&p.module, &p.columns)?;
        let degrees = elements.iter().map(|f| f.total_degree().unwrap() as i64).collect();
        let mut pieces = BTreeMap::new();
        for n in range.0..=range.1 {
            let basis = gb.standard_terms_of_degree(n);
            let index = basis.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
            pieces.insert(n, Piece { basis, index });
        }
        Ok(GradedQuotient {
            gb,
            elements: elements.to_vec(),
            degrees,
            range,
            pieces,
        })
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis<F> {
        &self.gb
    }

    fn piece(&self, n: i64) -> Result<Option<&Piece>, Error> {
        if n > self.range.1 {
            return Err(Error::BeyondCutoff {
                requested: n,
                cutoff: self.range.1,
            });
        }
        Ok(self.pieces.get(&n))
    }
}

impl<F: Field> GradedPieces<F> for GradedQuotient<F> {
    fn field(&self) -> &F {
        self.gb.module().field()
    }

    fn piece_dim(&self, n: i64) -> Result<usize, Error> {
        if n < self.range.0 {
            // below the window the caller is expected to know the module vanishes
            return Ok(0);
        }
        Ok(self.piece(n)?.map_or(0, |p| p.basis.len()))
    }

    fn num_elements(&self) -> usize {
        self.elements.len()
    }

    fn element_degree(&self, j: usize) -> i64 {
        self.degrees[j]
    }

    fn act(&self, j: usize, n: i64, v: &[F::Elem]) -> Result<Vec<F::Elem>, Error> {
        let target = n + self.degrees[j];
        let field = self.field();
        let out_dim = self.piece_dim(target)?;
        let mut out = vec![field.zero(); out_dim];
        let Some(src) = self.piece(n)? else { return Ok(out) };
        if n < self.range.0 {
            return Ok(out);
        }
        let fm = self.gb.module();
        let terms: Vec<Term<F>> = v
            .iter()
            .zip(&src.basis)
            .filter(|(c, _)| !field.is_zero(c))
            .map(|(c, (m, comp))| Term {
                coeff: c.clone(),
                mono: m.clone(),
                comp: *comp,
            })
            .collect();
        let vec = fm.mul_poly(&self.elements[j], &fm.from_terms(terms));
        let nf = self.gb.normal_form(&vec);
        if let Some(dst) = self.piece(target)? {
            for t in nf.terms() {
                out[dst.index[&(t.mono.clone(), t.comp)]] = t.coeff.clone();
            }
        }
        Ok(out)
    }
}

/// The Koszul complex K(f_{j}, j ∈ elements; N) on a graded module N given
/// by pieces. K_{i,n} = ⊕_{|S|=i} N_{n − deg S}.
pub struct KoszulComplex<'a, F: Field, P: GradedPieces<F>> {
    pieces: &'a P,
    elements: Vec<usize>,
    subsets: Vec<Vec<Vec<usize>>>,
    _field: std::marker::PhantomData<F>,
}

fn subsets_of_size(r: usize, i: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, r: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for s in start..=(r - left) {
            cur.push(s);
            go(s + 1, r, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if i <= r {
        go(0, r, i, &mut Vec::new(), &mut out);
    }
    out
}

impl<'a, F: Field, P: GradedPieces<F>> KoszulComplex<'a, F, P> {
    /// Koszul complex on all elements of `pieces`.
    pub fn new(pieces: &'a P) -> Self {
        Self::on(pieces, (0..pieces.num_elements()).collect())
    }

    /// Koszul complex on a sub-list of the elements.
    pub fn on(pieces: &'a P, elements: Vec<usize>) -> Self {
        let r = elements.len();
        let subsets = (0..=r).map(|i| subsets_of_size(r, i)).collect();
        KoszulComplex {
            pieces,
            elements,
            subsets,
            _field: std::marker::PhantomData,
        }
    }

    pub fn length(&self) -> usize {
        self.elements.len()
    }

    fn subset_degree(&self, s: &[usize]) -> i64 {
        s.iter().map(|&k| self.pieces.element_degree(self.elements[k])).sum()
    }

    fn offsets(&self, i: usize, n: i64) -> Result<(Vec<usize>, usize), Error> {
        let mut offs = Vec::new();
        let mut total = 0;
        for s in &self.subsets[i] {
            offs.push(total);
            total += self.pieces.piece_dim(n - self.subset_degree(s))?;
        }
        Ok((offs, total))
    }

    /// dim_k K_{i,n}.
    pub fn chain_dim(&self, i: usize, n: i64) -> Result<usize, Error> {
        if i > self.length() {
            return Ok(0);
        }
        Ok(self.offsets(i, n)?.1)
    }

    /// Matrix of d_i: K_{i,n} → K_{i−1,n}, for 1 ≤ i ≤ r.
    pub fn differential(&self, i: usize, n: i64) -> Result<Matrix<F>, Error> {
        let field = self.pieces.field();
        let (row_offs, rows) = self.offsets(i - 1, n)?;
        let (col_offs, cols) = self.offsets(i, n)?;
        let mut m = Matrix::zeros(field, rows, cols);
        let position: HashMap<&Vec<usize>, usize> =
            self.subsets[i - 1].iter().enumerate().map(|(k, t)| (t, k)).collect();
        for (si, s) in self.subsets[i].iter().enumerate() {
            let deg = n - self.subset_degree(s);
            let dim = self.pieces.piece_dim(deg)?;
            for b in 0..dim {
                let mut unit = vec![field.zero(); dim];
                unit[b] = field.one();
                for (k, &elem) in s.iter().enumerate() {
                    let mut t = s.clone();
                    t.remove(k);
                    let ti = position[&t];
                    let img = self.pieces.act(self.elements[elem], deg, &unit)?;
                    for (r, v) in img.into_iter().enumerate() {
                        if field.is_zero(&v) {
                            continue;
                        }
                        let v = if k % 2 == 0 { v } else { field.neg(&v) };
                        m.set(row_offs[ti] + r, col_offs[si] + b, v);
                    }
                }
            }
        }
        Ok(m)
    }

    fn rank_of_d(&self, i: usize, n: i64) -> Result<usize, Error> {
        if i == 0 || i > self.length() {
            return Ok(0);
        }
        Ok(self.differential(i, n)?.rank(self.pieces.field()))
    }

    /// dim_k H_i(K)_n.
    pub fn homology_dim(&self, i: usize, n: i64) -> Result<usize, Error> {
        let c = self.chain_dim(i, n)?;
        if c == 0 {
            return Ok(0);
        }
        Ok(c - self.rank_of_d(i, n)? - self.rank_of_d(i + 1, n)?)
    }

    /// d_{i−1} ∘ d_i = 0 at degree n.
    pub fn check_square_zero(&self, i: usize, n: i64) -> Result<bool, Error> {
        if i < 2 || i > self.length() {
            return Ok(true);
        }
        let field = self.pieces.field();
        let a = self.differential(i - 1, n)?;
        let b = self.differential(i, n)?;
        Ok(a.mul(field, &b).is_zero(field))
    }

    /// Multiply a chain in K_{i,n} by a module element j, componentwise.
    fn act_on_chain(&self, j: usize, i: usize, n: i64, v: &[F::Elem]) -> Result<Vec<F::Elem>, Error> {
        let (src_offs, _) = self.offsets(i, n)?;
        let target = n + self.pieces.element_degree(j);
        let (dst_offs, total) = self.offsets(i, target)?;
        let mut out = vec![self.pieces.field().zero(); total];
        for (k, s) in self.subsets[i].iter().enumerate() {
            let deg = n - self.subset_degree(s);
            let dim = self.pieces.piece_dim(deg)?;
            let img = self.pieces.act(j, deg, &v[src_offs[k]..src_offs[k] + dim])?;
            for (r, x) in img.into_iter().enumerate() {
                out[dst_offs[k] + r] = x;
            }
        }
        Ok(out)
    }

    /// Rank of the map H_i(K)_n → H_i(K)_{n + deg f_j} induced by f_j.
    pub fn induced_rank(&self, j: usize, i: usize, n: i64) -> Result<usize, Error> {
        let field = self.pieces.field();
        let target = n + self.pieces.element_degree(j);
        let dim_src = self.chain_dim(i, n)?;
        let dim_dst = self.chain_dim(i, target)?;
        if dim_src == 0 || dim_dst == 0 {
            return Ok(0);
        }
        let cycles = if i == 0 {
            (0..dim_src)
                .map(|b| {
                    let mut v = vec![field.zero(); dim_src];
                    v[b] = field.one();
                    v
                })
                .collect()
        } else {
            self.differential(i, n)?.kernel(field)
        };
        let boundaries: Vec<Vec<F::Elem>> = if i < self.length() {
            let d = self.differential(i + 1, target)?;
            (0..d.cols()).map(|c| d.column(c)).collect()
        } else {
            Vec::new()
        };
        let base = Matrix::from_columns(field, dim_dst, &boundaries).rank(field);
        let mut all = boundaries;
        for z in &cycles {
            all.push(self.act_on_chain(j, i, n, z)?);
        }
        Ok(Matrix::from_columns(field, dim_dst, &all).rank(field) - base)
    }
}

/// dim_k H_i(elements; N)_n over a degree range, i = 0..=r.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulHomology {
    pub range: (i64, i64),
    pub elements: usize,
    /// dims[i][n − range.0]
    pub dims: Vec<Vec<usize>>,
}

impl KoszulHomology {
    pub fn get(&self, i: usize, n: i64) -> usize {
        if n < self.range.0 || n > self.range.1 {
            return 0;
        }
        self.dims.get(i).map_or(0, |row| row[(n - self.range.0) as usize])
    }

    pub fn total(&self, i: usize) -> usize {
        self.dims.get(i).map_or(0, |row| row.iter().sum())
    }

    /// max{i : H_i ≠ 0 somewhere in the range}.
    pub fn top_nonvanishing(&self) -> Option<usize> {
        (0..self.dims.len()).rev().find(|&i| self.total(i) > 0)
    }
}

fn homology_table<F: Field, P: GradedPieces<F>>(k: &KoszulComplex<'_, F, P>, range: (i64, i64)) -> Result<KoszulHomology, Error> {
    let mut dims = Vec::new();
    for i in 0..=k.length() {
        let mut row = Vec::new();
        for n in range.0..=range.1 {
            debug_assert!(k.check_square_zero(i, n)?);
            row.push(k.homology_dim(i, n)?);
        }
        dims.push(row);
    }
    Ok(KoszulHomology {
        range,
        elements: k.length(),
        dims,
    })
}

/// Lowest basis degree of a presentation (the module vanishes below it).
fn lowest_degree<F: Field>(p: &Presentation<F>) -> i64 {
    p.module.degrees().iter().copied().min().unwrap_or(0)
}

/// Koszul homology of coker(presentation) on homogeneous elements, in
/// internal degrees range.0..=range.1.
pub fn koszul_homology<F: Field>(
    p: &Presentation<F>,
    elements: &[Polynomial<F>],
    range: (i64, i64),
) -> Result<KoszulHomology, Error> {
    let lo = lowest_degree(p).min(range.0);
    let q = GradedQuotient::new(p, elements, (lo, range.1))?;
    homology_table(&KoszulComplex::new(&q), range)
}

/// A degree beyond which Tor_i(k, N) vanishes for every i: the largest
/// degree of a basis element plus lcm of the leading monomials in its
/// component. The Taylor resolution of the initial module has shifts
/// bounded this way, and Betti numbers only drop from in(U) to U.
pub fn tor_degree_bound<F: Field>(gb: &GroebnerBasis<F>) -> i64 {
    let fm = gb.module();
    let n = fm.ring().nvars();
    (0..fm.rank())
        .map(|c| {
            let lcm_deg: i64 = (0..n)
                .map(|v| {
                    gb.leading_terms()
                        .iter()
                        .filter(|t| t.comp == c)
                        .map(|t| t.mono.exponent(v))
                        .max()
                        .unwrap_or(0) as i64
                })
                .sum();
            fm.degrees()[c] + lcm_deg
        })
        .max()
        .unwrap_or(0)
}

/// Koszul homology on all variables over the full range where it can be
/// nonzero, i.e. the graded Tor_i(k, N).
pub fn koszul_homology_on_variables<F: Field>(p: &Presentation<F>) -> Result<KoszulHomology, Error> {
    let ring = p.module.ring();
    let vars: Vec<Polynomial<F>> = (0..ring.nvars()).map(|i| ring.var(i)).collect();
    let gb = buchberger(&p.module, &p.columns)?;
    if gb.is_everything() {
        return Err(Error::ZeroModule);
    }
    let hi = tor_degree_bound(&gb) + ring.nvars() as i64;
    koszul_homology(p, &vars, (lowest_degree(p), hi))
}

/// depth N = n − max{i : H_i(x_1..x_n; N) ≠ 0} for a graded module.
pub fn depth_via_koszul<F: Field>(p: &Presentation<F>) -> Result<usize, Error> {
    let p = prune_units(p);
    let h = koszul_homology_on_variables(&p)?;
    let top = h.top_nonvanishing().ok_or(Error::ZeroModule)?;
    Ok(p.module.ring().nvars() - top)
}

/// Check the dimension identity coming from the short exact sequence
/// 0 → H_0(x_m, H_i(x')) → H_i(x) → H_1(x_m, H_{i−1}(x')) → 0, x' = x_1..x_{m−1},
/// at every (i, n) in the range. Returns the first violation.
pub fn check_splitting<F: Field>(
    p: &Presentation<F>,
    elements: &[Polynomial<F>],
    range: (i64, i64),
) -> Result<Option<(usize, i64)>, Error> {
    let m = elements.len();
    if m == 0 {
        return Ok(None);
    }
    let top = range.1;
    let lo = lowest_degree(p).min(range.0);
    let q = GradedQuotient::new(p, elements, (lo, top))?;
    let full = KoszulComplex::new(&q);
    let part = KoszulComplex::on(&q, (0..m - 1).collect());
    let last = m - 1;
    let d = q.element_degree(last);
    for i in 0..=m {
        for n in range.0..=range.1 {
            let lhs = full.homology_dim(i, n)?;
            let h0 = if i < m {
                let prev = if n - d >= lo { part.induced_rank(last, i, n - d)? } else { 0 };
                part.homology_dim(i, n)? - prev
            } else {
                0
            };
            let h1 = if i >= 1 && n - d >= lo {
                part.homology_dim(i - 1, n - d)? - part.induced_rank(last, i - 1, n - d)?
            } else {
                0
            };
            if lhs != h0 + h1 {
                return Ok(Some((i, n)));
            }
        }
    }
    Ok(None)
}

/// Koszul complex K_i = R^{C(n, i)} on the variables, d_i as columns in K_{i−1}.
fn koszul_free<F: Field>(ring: &crate::ring::Ring<F>) -> (Vec<FreeModule<F>>, Vec<Vec<Vector<F>>>) {
    let n = ring.nvars();
    let subsets: Vec<Vec<Vec<usize>>> = (0..=n).map(|i| subsets_of_size(n, i)).collect();
    let modules: Vec<FreeModule<F>> = (0..=n)
        .map(|i| FreeModule::new(ring.clone(), subsets[i].iter().map(|s| s.len() as i64).collect()))
        .collect();
    let mut maps = Vec::new();
    for i in 1..=n {
        let pos: HashMap<&Vec<usize>, usize> = subsets[i - 1].iter().enumerate().map(|(k, t)| (t, k)).collect();
        let cols = subsets[i]
            .iter()
            .map(|s| {
                let mut comps = vec![ring.zero(); subsets[i - 1].len()];
                for (k, &v) in s.iter().enumerate() {
                    let mut t = s.clone();
                    t.remove(k);
                    let x = ring.var(v);
                    comps[pos[&t]] = if k % 2 == 0 { x } else { ring.neg(&x) };
                }
                modules[i - 1].from_components(&comps)
            })
            .collect();
        maps.push(cols);
    }
    (modules, maps)
}

/// dim_k H_i(x_1..x_n; M) for the local module M = k[x]_(x)/I, i = 0..=n.
pub fn local_koszul_dims<F: Field>(inst: &LocalInstance<F>) -> Result<Vec<usize>, Error> {
    let complex = LocalKoszul::new(inst);
    (0..=inst.nvars()).map(|i| complex.homology_dim(i)).collect()
}

/// The Koszul complex on the variables over R/I.
///
/// Cycles are Z_i = {v : d_i v ∈ I·K_{i−1}}, found by elimination, and
/// boundaries are U_i = im d_{i+1} + I·K_i. Koszul homology on the variables
/// is killed by m, so it is supported at the origin and equals its
/// localization, and dim_k Z_i/U_i is the rank of the normal forms of the
/// generators of Z_i modulo U_i.
struct LocalKoszul<F: Field> {
    ideal: Vec<Polynomial<F>>,
    modules: Vec<FreeModule<F>>,
    maps: Vec<Vec<Vector<F>>>,
}

impl<F: Field> LocalKoszul<F> {
    fn new(inst: &LocalInstance<F>) -> Self {
        let (modules, maps) = koszul_free(&inst.ring);
        LocalKoszul { ideal: inst.module_ideal(), modules, maps }
    }

    /// I·K for a free module K.
    fn extend(&self, fm: &FreeModule<F>) -> Vec<Vector<F>> {
        (0..fm.rank())
            .flat_map(|c| self.ideal.iter().map(move |f| fm.from_polynomial(f, c)))
            .collect()
    }

    fn homology_dim(&self, i: usize) -> Result<usize, Error> {
        let n = self.modules.len() - 1;
        let fm = &self.modules[i];
        let cycles: Vec<Vector<F>> = if i == 0 {
            (0..fm.rank()).map(|c| fm.basis_vector(c)).collect()
        } else {
            let prev = &self.modules[i - 1];
            let (e, syz) = syzygy_module(prev, &self.maps[i - 1], &self.extend(prev))?;
            syz.iter().map(|v| fm.adopt(&e.project(v, 0..e.rank()))).collect()
        };
        let mut bounds = self.extend(fm);
        if i < n {
            bounds.extend(self.maps[i].iter().cloned());
        }
        let gb = buchberger(fm, &bounds)?;
        let nfs: Vec<Vector<F>> = cycles.iter().map(|z| gb.normal_form(z)).filter(|v| !v.is_zero()).collect();
        Ok(vector_rank(fm.field(), &nfs))
    }
}

/// Rank over k of module elements viewed as coefficient vectors.
fn vector_rank<F: Field>(field: &F, vecs: &[Vector<F>]) -> usize {
    let mut index: HashMap<(Monomial, usize), usize> = HashMap::new();
    for v in vecs {
        for t in v.terms() {
            let len = index.len();
            index.entry((t.mono.clone(), t.comp)).or_insert(len);
        }
    }
    let cols: Vec<Vec<F::Elem>> = vecs
        .iter()
        .map(|v| {
            let mut c = vec![field.zero(); index.len()];
            for t in v.terms() {
                c[index[&(t.mono.clone(), t.comp)]] = t.coeff.clone();
            }
            c
        })
        .collect();
    Matrix::from_columns(field, index.len(), &cols).rank(field)
}

/// depth of the local module M = k[x]_(x)/I, from its Koszul homology:
/// n − max{i : H_i ≠ 0}. The scan runs down from i = n and stops at the
/// first nonzero homology, so deep modules cost more than shallow ones.
pub fn local_depth_via_koszul<F: Field>(inst: &LocalInstance<F>) -> Result<usize, Error> {
    let complex = LocalKoszul::new(inst);
    let n = inst.nvars();
    for i in (0..=n).rev() {
        if complex.homology_dim(i)? > 0 {
            return Ok(n - i);
        }
    }
    Err(Error::ZeroModule)
}

/// Truncation of L(M) = ⊕_n M/m^{n+1}M to degrees 0..=cutoff, with the
/// action of linear forms ℓ (as ℓt in the Rees algebra) mapping
/// L(M)_n → L(M)_{n+1}.
pub struct TruncatedLM<F: Field> {
    field: F,
    pub cutoff: i64,
    pub piece_dims: Vec<usize>,
    /// mult[j][n]: matrix of ℓ_j from L(M)_n to L(M)_{n+1}.
    mult: Vec<Vec<Matrix<F>>>,
}

impl<F: Field> TruncatedLM<F> {
    pub fn new(inst: &LocalInstance<F>, forms: &[Polynomial<F>], cutoff: i64) -> Result<Self, Error> {
        let ring = &inst.ring;
        for f in forms {
            if f.is_zero() || !f.is_homogeneous() || f.total_degree() != Some(1) {
                return Err(Error::Usage(format!("{} is not a linear form", ring.format(f))));
            }
        }
        let levels: Vec<Truncation<F>> = (0..=cutoff).map(|n| Truncation::new(inst, n as u32 + 1)).collect();
        let field = ring.field().clone();
        let mult = forms
            .iter()
            .map(|f| {
                (0..cutoff as usize)
                    .map(|n| {
                        let cols: Vec<Vec<F::Elem>> = levels[n]
                            .basis
                            .iter()
                            .map(|m| levels[n + 1].coords(&ring.mul_term(f, &field.one(), m)))
                            .collect();
                        Matrix::from_columns(&field, levels[n + 1].dim(), &cols)
                    })
                    .collect()
            })
            .collect();
        Ok(TruncatedLM {
            field,
            cutoff,
            piece_dims: levels.iter().map(|t| t.dim()).collect(),
            mult,
        })
    }

    /// The multiplication maps commute on the whole truncation range.
    pub fn maps_commute(&self) -> bool {
        let f = &self.field;
        for a in 0..self.mult.len() {
            for b in (a + 1)..self.mult.len() {
                for n in 0..(self.cutoff as usize).saturating_sub(1) {
                    let ab = self.mult[a][n + 1].mul(f, &self.mult[b][n]);
                    let ba = self.mult[b][n + 1].mul(f, &self.mult[a][n]);
                    if ab != ba {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl<F: Field> GradedPieces<F> for TruncatedLM<F> {
    fn field(&self) -> &F {
        &self.field
    }

    fn piece_dim(&self, n: i64) -> Result<usize, Error> {
        if n > self.cutoff {
            return Err(Error::BeyondCutoff {
                requested: n,
                cutoff: self.cutoff,
            });
        }
        Ok(if n < 0 { 0 } else { self.piece_dims[n as usize] })
    }

    fn num_elements(&self) -> usize {
        self.mult.len()
    }

    fn element_degree(&self, _j: usize) -> i64 {
        1
    }

    fn act(&self, j: usize, n: i64, v: &[F::Elem]) -> Result<Vec<F::Elem>, Error> {
        let out_dim = self.piece_dim(n + 1)?;
        if n < 0 {
            return Ok(vec![self.field.zero(); out_dim]);
        }
        let m = &self.mult[j][n as usize];
        let f = &self.field;
        Ok((0..m.rows())
            .map(|r| {
                (0..m.cols()).fold(f.zero(), |acc, c| f.add(&acc, &f.mul(m.get(r, c), &v[c])))
            })
            .collect())
    }
}

/// Koszul homology of L(M) on the Rees-degree-one elements ℓ_j t in
/// internal degrees 0..=cutoff − margin, margin = number of elements.
pub fn lm_koszul_homology<F: Field>(lm: &TruncatedLM<F>, elements: Vec<usize>) -> Result<KoszulHomology, Error> {
    let margin = elements.len() as i64;
    let k = KoszulComplex::on(lm, elements);
    homology_table(&k, (0, lm.cutoff - margin))
}

/// One finite-length claim checked on a truncation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LmClaim {
    pub label: String,
    pub elements: usize,
    /// Homology is claimed to have finite length for i ≥ min_index.
    pub min_index: usize,
    pub tail_window: (i64, i64),
    /// Largest internal degree with nonzero H_i, per i ≥ min_index.
    pub last_nonzero: BTreeMap<usize, Option<i64>>,
    pub holds_on_window: bool,
    pub homology: KoszulHomology,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LmReport {
    pub cutoff: i64,
    pub hypotheses: Vec<Hypothesis>,
    pub claims: Vec<LmClaim>,
    pub verdict: Verdict,
}

fn check_claim<F: Field>(lm: &TruncatedLM<F>, label: &str, elements: Vec<usize>, min_index: usize) -> Result<LmClaim, Error> {
    let r = elements.len();
    let h = lm_koszul_homology(lm, elements)?;
    let top = h.range.1;
    let window = (top / 2 + 1, top);
    let mut last_nonzero = BTreeMap::new();
    let mut ok = true;
    for i in min_index.max(1)..=r {
        let last = (h.range.0..=top).rev().find(|&n| h.get(i, n) > 0);
        if last.is_some_and(|n| n >= window.0) {
            ok = false;
        }
        last_nonzero.insert(i, last);
    }
    Ok(LmClaim {
        label: label.to_string(),
        elements: r,
        min_index,
        tail_window: window,
        last_nonzero,
        holds_on_window: ok,
        homology: h,
    })
}

/// Truncated evidence that H_i(Xt, L(M)) has finite length for i ≥ 1 on a
/// superficial sequence X of length dim M, and that H_i(Xt, Yt, L(M)) has
/// finite length for i > s when Y = y_1..y_s completes X to generators of m.
pub fn check_lm_homology_vanishing<F: Field>(
    inst: &LocalInstance<F>,
    superficials: &[Polynomial<F>],
    extra: &[Polynomial<F>],
    cutoff: i64,
    window: (u32, u32),
) -> Result<LmReport, Error> {
    let ring = &inst.ring;
    let mut hyps = Vec::new();
    let tc = tangent_cone(inst)?;
    let graded = Presentation::cyclic(ring, &tc.polynomials());
    let dim = crate::hilbert::hilbert_series(
        &crate::resolution::betti_table(&crate::resolution::minimal_free_resolution(&graded)?)?,
        ring.nvars(),
    )?
    .dim;
    let depth = local_depth_via_koszul(inst)? as i64;
    hyps.push(Hypothesis::new("M Cohen-Macaulay", depth == dim, format!("depth {depth}, dim {dim}")));
    hyps.push(Hypothesis::new(
        "dim M ≥ 1 and one superficial element per dimension",
        dim >= 1 && superficials.len() as i64 == dim,
        format!("dim {dim}, {} elements", superficials.len()),
    ));
    let linear = superficials.iter().chain(extra).all(|f| f.is_homogeneous() && f.total_degree() == Some(1));
    let n = ring.nvars();
    let span = if linear {
        let cols: Vec<Vec<F::Elem>> = superficials
            .iter()
            .chain(extra)
            .map(|f| {
                let mut c = vec![ring.field().zero(); n];
                for (coef, m) in f.terms() {
                    let v = (0..n).find(|&v| m.exponent(v) == 1).unwrap();
                    c[v] = coef.clone();
                }
                c
            })
            .collect();
        Matrix::from_columns(ring.field(), n, &cols).rank(ring.field())
    } else {
        0
    };
    hyps.push(Hypothesis::new("linear forms spanning m", linear && span == n, format!("rank {span} of {n}")));
    // superficial sequence: each element superficial modulo the previous ones
    let mut seq_ok = true;
    let mut witness = Vec::new();
    for k in 0..superficials.len() {
        let cut = inst.with_extra(&superficials[..k])?;
        let c = check_superficial(&cut, &superficials[k], window)?;
        witness.push(match c.failed_at {
            None => format!("{}: window {}..{}", ring.format(&superficials[k]), window.0, window.1),
            Some(d) => format!("{}: fails at {d}", ring.format(&superficials[k])),
        });
        seq_ok &= c.holds;
    }
    hyps.push(Hypothesis::new("superficial sequence", seq_ok, witness.join("; ")));
    if hyps.iter().any(|h| !h.holds) {
        return Ok(LmReport {
            cutoff,
            hypotheses: hyps,
            claims: Vec::new(),
            verdict: Verdict::NotApplicable,
        });
    }
    let mut forms = superficials.to_vec();
    forms.extend(extra.iter().cloned());
    let lm = TruncatedLM::new(inst, &forms, cutoff)?;
    debug_assert!(lm.maps_commute());
    let r = superficials.len();
    let mut claims = vec![check_claim(&lm, "superficial", (0..r).collect(), 1)?];
    if !extra.is_empty() {
        claims.push(check_claim(&lm, "superficial+extra", (0..forms.len()).collect(), extra.len() + 1)?);
    }
    let verdict = if claims.iter().all(|c| c.holds_on_window) {
        Verdict::PassOnWindow
    } else {
        Verdict::Fail
    };
    Ok(LmReport {
        cutoff,
        hypotheses: hyps,
        claims,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{MonomialOrder, PrimeField, Rationals, Ring};

    fn ring() -> Ring<Rationals> {
        Ring::new(Rationals, &["x", "y"], MonomialOrder::GRevLex).unwrap()
    }

    fn cyclic(ideal: &[&str]) -> Presentation<Rationals> {
        let r = ring();
        Presentation::cyclic(&r, &ideal.iter().map(|s| r.parse(s).unwrap()).collect::<Vec<_>>())
    }

    #[test]
    fn polynomial_ring_on_variables() {
        let h = koszul_homology_on_variables(&cyclic(&[])).unwrap();
        assert_eq!(h.get(0, 0), 1);
        assert_eq!(h.total(0), 1);
        assert_eq!(h.total(1) + h.total(2), 0);
    }

    #[test]
    fn embedded_point_has_depth_zero() {
        let h = koszul_homology_on_variables(&cyclic(&["x^2", "x*y"])).unwrap();
        assert_eq!(h.top_nonvanishing(), Some(2));
        assert_eq!(h.get(2, 3), 1);
        assert_eq!(h.get(1, 2), 2);
        assert_eq!(depth_via_koszul(&cyclic(&["x^2", "x*y"])).unwrap(), 0);
    }

    #[test]
    fn depths() {
        assert_eq!(depth_via_koszul(&cyclic(&["x", "y"])).unwrap(), 0);
        assert_eq!(depth_via_koszul(&cyclic(&["x^3", "x^2*y", "y^4"])).unwrap(), 0);
        assert_eq!(depth_via_koszul(&cyclic(&["x^2"])).unwrap(), 1);
        assert_eq!(depth_via_koszul(&cyclic(&[])).unwrap(), 2);
    }

    #[test]
    fn empty_sequence_gives_module() {
        let p = cyclic(&["x^2", "x*y"]);
        let h = koszul_homology(&p, &[], (0, 4)).unwrap();
        assert_eq!(h.dims, vec![vec![1, 2, 1, 1, 1]]);
    }

    #[test]
    fn splitting_identity() {
        let r = ring();
        let vars = [r.parse("x").unwrap(), r.parse("y").unwrap()];
        for ideal in [&["x^2", "x*y"][..], &["x^3", "x^2*y", "y^4"], &["x*y"], &[]] {
            assert_eq!(check_splitting(&cyclic(ideal), &vars, (0, 6)).unwrap(), None, "{ideal:?}");
        }
    }

    #[test]
    fn local_depth_matches_graded_on_homogeneous() {
        for ideal in [&["x^2", "x*y"][..], &["x^3", "x^2*y", "y^4"], &["x^2"], &[]] {
            let inst = LocalInstance::parse(Rationals, &["x", "y"], ideal).unwrap();
            assert_eq!(
                local_depth_via_koszul(&inst).unwrap(),
                depth_via_koszul(&cyclic(ideal)).unwrap(),
                "{ideal:?}"
            );
        }
        let cusp = LocalInstance::parse(Rationals, &["x", "y"], &["x^2 - y^3"]).unwrap();
        assert_eq!(local_depth_via_koszul(&cusp).unwrap(), 1);
        assert_eq!(local_koszul_dims(&cusp).unwrap(), vec![1, 1, 0]);
    }

    #[test]
    fn lm_vanishing_on_cusp() {
        let inst = LocalInstance::parse(PrimeField::new(32003).unwrap(), &["x", "y"], &["x^2 - y^3"]).unwrap();
        let y = inst.ring.parse("y").unwrap();
        let x = inst.ring.parse("x").unwrap();
        let rep = check_lm_homology_vanishing(&inst, std::slice::from_ref(&y), std::slice::from_ref(&x), 15, (2, 12)).unwrap();
        assert_eq!(rep.verdict, Verdict::PassOnWindow);
        assert!(rep.claims[0].last_nonzero[&1].is_none());
        let bad = check_lm_homology_vanishing(&inst, &[x], &[y], 15, (2, 12)).unwrap();
        assert_eq!(bad.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn lm_on_dvr() {
        let inst = LocalInstance::parse(Rationals, &["x"], &[]).unwrap();
        let x = inst.ring.parse("x").unwrap();
        let lm = TruncatedLM::new(&inst, std::slice::from_ref(&x), 15).unwrap();
        assert_eq!(lm.piece_dims[3], 4);
        let h = lm_koszul_homology(&lm, vec![0]).unwrap();
        assert_eq!(h.total(1), 0);
        let rep = check_lm_homology_vanishing(&inst, &[x], &[], 15, (2, 12)).unwrap();
        assert_eq!(rep.verdict, Verdict::PassOnWindow);
    }

    #[test]
    fn truncation_stabilizes_in_dimension_zero() {
        let inst = LocalInstance::parse(Rationals, &["x", "y"], &["x^2 - y^3", "x*y"]).unwrap();
        let x = inst.ring.parse("x").unwrap();
        let y = inst.ring.parse("y").unwrap();
        let lm = TruncatedLM::new(&inst, &[x, y], 8).unwrap();
        assert_eq!(lm.piece_dims, vec![1, 3, 4, 5, 5, 5, 5, 5, 5]);
        assert!(lm.maps_commute());
        assert!(matches!(lm.piece_dim(9), Err(Error::BeyondCutoff { .. })));
    }
}
