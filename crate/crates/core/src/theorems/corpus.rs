//! Seeded random instance families and parallel checker sweeps.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_file_with, is_regular_sequence, CheckOptions, TheoremId, Verdict};
use crate::local::{Declared, InstanceFile};
use crate::ring::{Field, FieldSpec, Monomial, MonomialOrder, Rationals, Ring};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusKind {
    Monomial,
    PerturbedHomogeneous,
    Ci,
}

impl FromStr for CorpusKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "monomial" => Ok(CorpusKind::Monomial),
            "perturbed-homogeneous" => Ok(CorpusKind::PerturbedHomogeneous),
            "ci" => Ok(CorpusKind::Ci),
            _ => Err(Error::Usage(format!(
                "unknown corpus kind {s:?} (expected monomial, perturbed-homogeneous or ci)"
            ))),
        }
    }
}

impl fmt::Display for CorpusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CorpusKind::Monomial => "monomial",
            CorpusKind::PerturbedHomogeneous => "perturbed-homogeneous",
            CorpusKind::Ci => "ci",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusParams {
    pub nvars: usize,
    pub max_degree: u32,
    pub count: usize,
    pub kind: CorpusKind,
    /// Generators per instance; random in 1..=nvars+1 when absent
    /// (always 2 for complete intersections unless given).
    pub gens: Option<usize>,
    pub field: FieldSpec,
}

impl CorpusParams {
    pub fn new(kind: CorpusKind, nvars: usize, max_degree: u32, count: usize) -> Self {
        CorpusParams {
            nvars,
            max_degree,
            count,
            kind,
            gens: None,
            field: FieldSpec::default(),
        }
    }
}

const VAR_NAMES: [&str; 8] = ["x", "y", "z", "w", "u", "v", "s", "t"];

fn var_names(n: usize) -> Vec<String> {
    assert!(n >= 1 && n <= VAR_NAMES.len(), "between 1 and 8 variables");
    VAR_NAMES[..n].iter().map(|s| s.to_string()).collect()
}

fn random_monomial<R: Rng>(rng: &mut R, n: usize, degree: u32) -> Monomial {
    let mut e = vec![0u32; n];
    for _ in 0..degree {
        e[rng.gen_range(0..n)] += 1;
    }
    Monomial::from_exponents(&e)
}

fn small_coeff<R: Rng>(rng: &mut R) -> i64 {
    let c = rng.gen_range(1..=5);
    if rng.gen_bool(0.5) {
        c
    } else {
        -c
    }
}

/// A random nonzero form of the given degree with small integer coefficients.
fn random_form<R: Rng>(rng: &mut R, ring: &Ring<Rationals>, degree: u32) -> crate::ring::Polynomial<Rationals> {
    let n = ring.nvars();
    let all = Monomial::all_of_degree(n, degree);
    loop {
        let k = rng.gen_range(1..=all.len().min(3));
        let terms = all
            .choose_multiple(rng, k)
            .map(|m| (ring.field().from_i64(small_coeff(rng)), m.clone()))
            .collect();
        let f = ring.from_terms(terms);
        if !f.is_zero() {
            return f;
        }
    }
}

/// One or two random terms with degrees in lo..=hi.
fn random_tail<R: Rng>(rng: &mut R, ring: &Ring<Rationals>, lo: u32, hi: u32) -> crate::ring::Polynomial<Rationals> {
    if lo > hi {
        return ring.zero();
    }
    let k = rng.gen_range(1..=2);
    let terms = (0..k)
        .map(|_| {
            let d = rng.gen_range(lo..=hi);
            (ring.field().from_i64(small_coeff(rng)), random_monomial(rng, ring.nvars(), d))
        })
        .collect();
    ring.from_terms(terms)
}

/// Two generators u² + c·v^a + …, uv + c'·w^b + … in distinct variables
/// u, v, w, with 3 ≤ b < a. The initial forms share the factor u, and the
/// w^b tail leaves u·w^b in the tangent cone, which then acquires an embedded
/// component: the quotient is a complete intersection, hence Cohen–Macaulay,
/// while its associated graded ring has depth zero. The shape is modelled on
/// the monomial curve (t^6, t^7, t^15).
fn embedded_cone_pair<R: Rng>(rng: &mut R, ring: &Ring<Rationals>, maxd: u32) -> Vec<String> {
    let n = ring.nvars();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let (u, v, w) = (idx[0], idx[1], idx[2]);
    let unit = |i: usize, e: u32| {
        let mut x = vec![0u32; n];
        x[i] = e;
        x
    };
    let b = 3;
    let a = rng.gen_range(b + 1..=maxd.max(b + 1) + 1);
    let f = ring.field();
    let mono = |e: Vec<u32>| Monomial::from_exponents(&e);
    let mut uv = unit(u, 1);
    uv[v] = 1;
    let g1 = ring.from_terms(vec![
        (f.one(), mono(unit(u, 2))),
        (f.from_i64(small_coeff(rng)), mono(unit(v, a))),
    ]);
    let g2 = ring.from_terms(vec![
        (f.one(), mono(uv)),
        (f.from_i64(small_coeff(rng)), mono(unit(w, b))),
    ]);
    [g1, g2]
        .into_iter()
        .map(|g| {
            let h = if rng.gen_bool(0.5) { random_tail(rng, ring, b + 1, a + 1) } else { ring.zero() };
            ring.format(&ring.add(&g, &h))
        })
        .collect()
}

/// Deterministic list of instances for a seed.
pub fn generate_corpus(params: &CorpusParams, seed: u64) -> Vec<InstanceFile> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = params.nvars;
    let vars = var_names(n);
    let ring = Ring::new(Rationals, &vars, MonomialOrder::GRevLex).expect("valid names");
    let maxd = params.max_degree.max(2);
    let field = Some(params.field.to_string());
    let mut out = Vec::with_capacity(params.count);
    while out.len() < params.count {
        let k = params.gens.unwrap_or_else(|| match params.kind {
            CorpusKind::Ci => 2.min(n),
            _ => rng.gen_range(1..=n + 1),
        });
        let file = match params.kind {
            CorpusKind::Monomial => {
                let ideal = (0..k)
                    .map(|_| {
                        let d = rng.gen_range(1..=maxd);
                        ring.format_monomial(&random_monomial(&mut rng, n, d))
                    })
                    .collect();
                InstanceFile {
                    field: field.clone(),
                    vars: vars.clone(),
                    ideal,
                    ambient: Vec::new(),
                    declared: Declared::default(),
                }
            }
            CorpusKind::PerturbedHomogeneous => {
                let ideal = if n >= 3 && rng.gen_bool(0.5) {
                    embedded_cone_pair(&mut rng, &ring, maxd)
                } else {
                    let top = maxd.saturating_sub(1).max(2);
                    (0..k)
                        .map(|_| {
                            let d = rng.gen_range(2..=top);
                            let g = random_form(&mut rng, &ring, d);
                            let h = random_tail(&mut rng, &ring, d + 1, maxd.max(d + 1));
                            ring.format(&ring.add(&g, &h))
                        })
                        .collect()
                };
                InstanceFile {
                    field: field.clone(),
                    vars: vars.clone(),
                    ideal,
                    ambient: Vec::new(),
                    declared: Declared::default(),
                }
            }
            CorpusKind::Ci => {
                let s = rng.gen_range(2..=maxd.saturating_sub(1).max(2));
                let forms: Vec<_> = (0..k).map(|_| random_form(&mut rng, &ring, s)).collect();
                if !is_regular_sequence(&ring, &forms).map(|r| r.0).unwrap_or(false) {
                    continue;
                }
                let ambient = forms
                    .iter()
                    .map(|g| {
                        let h = random_tail(&mut rng, &ring, s + 1, maxd.max(s + 1));
                        ring.format(&ring.add(g, &h))
                    })
                    .collect();
                InstanceFile {
                    field: field.clone(),
                    vars: vars.clone(),
                    ideal: Vec::new(),
                    ambient,
                    declared: Declared::default(),
                }
            }
        };
        out.push(file);
    }
    out
}

/// Outcome of a checker sweep, in instance order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub theorem: TheoremId,
    pub seed: u64,
    pub count: usize,
    pub verdicts: BTreeMap<String, usize>,
    pub errors: usize,
    /// (index, verdict or error message) per instance.
    pub results: Vec<(usize, String)>,
}

impl CorpusSummary {
    pub fn count_of(&self, v: Verdict) -> usize {
        self.verdicts.get(v.as_str()).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Exit status of the sweep: 3 when any instance fails, else 0.
    /// Instances that hit a computation limit are counted in `errors` and
    /// reported, but they are not counterexamples.
    pub fn exit_code(&self) -> i32 {
        if self.count_of(Verdict::Fail) > 0 {
            3
        } else {
            0
        }
    }
}

/// Run a checker on every instance with `workers` threads. Instance i uses
/// seed `seed + i`; results are ordered by index, so the output does not
/// depend on the number of workers.
pub fn run_corpus(
    theorem: TheoremId,
    files: &[InstanceFile],
    spec: FieldSpec,
    opts: &CheckOptions,
    workers: usize,
) -> Result<CorpusSummary, Error> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Usage(format!("cannot start worker pool: {e}")))?;
    let results: Vec<Result<Verdict, Error>> = pool.install(|| {
        files
            .par_iter()
            .enumerate()
            .map(|(i, f)| {
                let o = CheckOptions {
                    seed: opts.seed.wrapping_add(i as u64),
                    ..opts.clone()
                };
                check_file_with(theorem, f, spec, &o).map(|r| r.verdict)
            })
            .collect()
    });
    let mut verdicts = BTreeMap::new();
    let mut errors = 0;
    let mut listed = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(v) => {
                *verdicts.entry(v.as_str().to_string()).or_insert(0) += 1;
                listed.push((i, v.as_str().to_string()));
            }
            Err(e) => {
                errors += 1;
                listed.push((i, format!("error: {e}")));
            }
        }
    }
    Ok(CorpusSummary {
        theorem,
        seed: opts.seed,
        count: files.len(),
        verdicts,
        errors,
        results: listed,
    })
}
