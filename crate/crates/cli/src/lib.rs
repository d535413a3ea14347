//! The `gradecone` command line: parse an instance file, run one pipeline,
//! print a text table or a single JSON document.
//!
//! Exit status: 0 on success, PASS, VACUOUS and PASS-ON-WINDOW; 2 on
//! NOT-APPLICABLE; 3 on FAIL; 1 on usage, input and computation errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use gradecone::hilbert::HilbertData;
use gradecone::koszul::{check_lm_homology_vanishing, koszul_homology_on_variables, local_depth_via_koszul, local_koszul_dims, LmReport};
use gradecone::local::{associated_graded, find_superficial, loewy_length, tangent_cone, InstanceFile, LocalInstance};
use gradecone::resolution::{BettiTable, Presentation};
use gradecone::ring::{Field, FieldSpec, Monomial, Polynomial};
use gradecone::theorems::{check, generate_corpus, run_corpus, CheckOptions, CheckReport, CorpusKind, CorpusParams, TheoremId, Verdict};
use gradecone::{linalg::Matrix, Error};

#[derive(Parser, Debug)]
#[command(
    name = "gradecone",
    version,
    about = "Gröbner bases, minimal resolutions, tangent cones and Koszul homology of local quotients"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Print exactly one JSON document on standard output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "GRADECONE_SEED", default_value_t = 0)]
    seed: u64,
    /// Highest degree of the L(M) truncation and of printed Hilbert functions.
    #[arg(long, global = true, default_value_t = 15)]
    cutoff: i64,
    /// Degree window a:b for superficiality checks.
    #[arg(long, global = true, value_parser = parse_window, default_value = "2:10")]
    window: Window,
    /// Random linear forms tried when looking for a superficial element.
    #[arg(long, global = true, default_value_t = 20)]
    trials: usize,
    /// Coefficient field, overriding the instance file: fp:<p> or q.
    #[arg(long, global = true)]
    field: Option<FieldSpec>,
    /// Steps of finite-stage resolutions.
    #[arg(long, global = true, default_value_t = 5)]
    stages: usize,
    /// Complexity to assume instead of estimating it.
    #[arg(long = "declare-cx", global = true)]
    declare_cx: Option<usize>,
    /// Worker threads for corpus sweeps (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Window(u32, u32);

fn parse_window(s: &str) -> Result<Window, String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected a:b, got {s:?}"))?;
    let a: u32 = a.trim().parse().map_err(|_| format!("bad window start in {s:?}"))?;
    let b: u32 = b.trim().parse().map_err(|_| format!("bad window end in {s:?}"))?;
    if a < 1 || a > b {
        return Err(format!("window {s:?} must satisfy 1 ≤ a ≤ b"));
    }
    Ok(Window(a, b))
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Reduced Gröbner basis of the defining ideal (graded reverse lex).
    Gb { file: PathBuf },
    /// Normal form of a polynomial modulo the defining ideal.
    Nf { file: PathBuf, poly: String },
    /// Minimal graded free resolution of G(M).
    Res { file: PathBuf },
    /// Betti table of G(M).
    Betti { file: PathBuf },
    /// Hilbert series and coefficients of G(M).
    Hilbert { file: PathBuf },
    /// Tangent cone: the initial-form ideal in*(I).
    Tc { file: PathBuf },
    /// Koszul homology on the variables, or L(M) evidence with --lm.
    Koszul {
        file: PathBuf,
        /// Check vanishing of H_i(ℓt, L(M)) on a superficial sequence.
        #[arg(long)]
        lm: bool,
    },
    /// Depth of M (Koszul) and of G(M) (Auslander–Buchsbaum).
    Depth { file: PathBuf },
    /// Search for a superficial linear form.
    Superficial { file: PathBuf },
    /// Loewy length of a finite-length M.
    Loewy { file: PathBuf },
    /// Run a theorem checker: thm-3.1, thm-3.3, cor-3.4, lem-4.2, thm-4.3, thm-5.7.
    Check { theorem: String, file: PathBuf },
    /// Generate a seeded instance corpus and optionally sweep a checker over it.
    Corpus {
        #[arg(long, value_parser = parse_kind, default_value = "perturbed-homogeneous")]
        kind: CorpusKind,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        nvars: usize,
        #[arg(long = "max-degree", default_value_t = 5)]
        max_degree: u32,
        /// Generators per instance (random when absent).
        #[arg(long)]
        gens: Option<usize>,
        /// Checker to sweep over the corpus.
        #[arg(long)]
        check: Option<String>,
    },
}

fn parse_kind(s: &str) -> Result<CorpusKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// What a subcommand produced.
struct Output {
    text: String,
    json: Value,
    code: i32,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, code: 0 }
    }
}

/// Run the command line on `args` (program name first), writing results to
/// `out` and diagnostics to `err`, and return the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    match execute(&cli, err) {
        Ok(o) => {
            let written = if cli.opts.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("serializable"))
            } else {
                write!(out, "{}", o.text)
            };
            if written.is_err() {
                return 1;
            }
            o.code
        }
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<Output, String> {
    let o = &cli.opts;
    match &cli.command {
        Command::Corpus { kind, count, nvars, max_degree, gens, check } => {
            corpus(o, *kind, *count, *nvars, *max_degree, *gens, check.as_deref(), err)
        }
        Command::Check { theorem, file } => {
            let claim = parse_claim(theorem)?;
            let (inst, spec) = load(file, o.field)?;
            with_instance(&inst, spec, |i| match claim {
                Claim::Theorem(t) => check_cmd(i, t, o),
                Claim::LmVanishing => lm_cmd(i, o),
            })
        }
        cmd => {
            let path = match cmd {
                Command::Gb { file }
                | Command::Nf { file, .. }
                | Command::Res { file }
                | Command::Betti { file }
                | Command::Hilbert { file }
                | Command::Tc { file }
                | Command::Koszul { file, .. }
                | Command::Depth { file }
                | Command::Superficial { file }
                | Command::Loewy { file } => file,
                Command::Check { .. } | Command::Corpus { .. } => unreachable!(),
            };
            let (inst, spec) = load(path, o.field)?;
            with_instance(&inst, spec, |i| match cmd {
                Command::Gb { .. } => gb_cmd(i),
                Command::Nf { poly, .. } => nf_cmd(i, poly),
                Command::Res { .. } => res_cmd(i),
                Command::Betti { .. } => betti_cmd(i),
                Command::Hilbert { .. } => hilbert_cmd(i, o),
                Command::Tc { .. } => tc_cmd(i),
                Command::Koszul { lm: true, .. } => lm_cmd(i, o),
                Command::Koszul { lm: false, .. } => koszul_cmd(i),
                Command::Depth { .. } => depth_cmd(i),
                Command::Superficial { .. } => superficial_cmd(i, o),
                Command::Loewy { .. } => loewy_cmd(i),
                Command::Check { .. } | Command::Corpus { .. } => unreachable!(),
            })
        }
    }
}

fn load(path: &Path, field: Option<FieldSpec>) -> Result<(InstanceFile, FieldSpec), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let file = InstanceFile::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let spec = match field {
        Some(f) => f,
        None => file.field_spec().map_err(|e| format!("{}: {e}", path.display()))?,
    };
    Ok((file, spec))
}

/// Build the instance over the chosen field and hand it to `f`. The body is
/// instantiated once per field type.
fn with_instance(
    file: &InstanceFile,
    spec: FieldSpec,
    f: impl Fn(&Inst) -> Result<Output, Error>,
) -> Result<Output, String> {
    let run = || -> Result<Output, Error> {
        gradecone::with_field!(spec, |field| {
            let inst = LocalInstance::from_file(file, field)?;
            f(&Inst::wrap(inst))
        })
    };
    run().map_err(|e| e.to_string())
}

/// An instance over either field, so that one closure serves both.
enum Inst {
    Prime(LocalInstance<gradecone::ring::PrimeField>),
    Rational(LocalInstance<gradecone::ring::Rationals>),
}

trait Wrap: Field + Sized {
    fn wrap(inst: LocalInstance<Self>) -> Inst;
}

impl Wrap for gradecone::ring::PrimeField {
    fn wrap(inst: LocalInstance<Self>) -> Inst {
        Inst::Prime(inst)
    }
}

impl Wrap for gradecone::ring::Rationals {
    fn wrap(inst: LocalInstance<Self>) -> Inst {
        Inst::Rational(inst)
    }
}

impl Inst {
    fn wrap<F: Wrap>(inst: LocalInstance<F>) -> Inst {
        F::wrap(inst)
    }
}

/// Dispatch a generic function over the field of an [`Inst`].
macro_rules! on {
    ($inst:expr, |$i:ident| $body:expr) => {
        match $inst {
            Inst::Prime($i) => $body,
            Inst::Rational($i) => $body,
        }
    };
}

fn strings<F: Field>(inst: &LocalInstance<F>, polys: &[Polynomial<F>]) -> Vec<String> {
    polys.iter().map(|p| inst.ring.format(p)).collect()
}

fn lines(items: &[String]) -> String {
    items.iter().map(|s| format!("{s}\n")).collect()
}

fn gb_cmd(inst: &Inst) -> Result<Output, Error> {
    on!(inst, |i| {
        let gb = gradecone::groebner::ideal_basis(&i.ring, &i.module_ideal());
        let basis = strings(i, &gb.polynomials());
        Ok(Output::ok(lines(&basis), json!({"order": "grevlex", "basis": basis})))
    })
}

fn nf_cmd(inst: &Inst, poly: &str) -> Result<Output, Error> {
    on!(inst, |i| {
        let f = i.ring.parse(poly)?;
        let gb = gradecone::groebner::ideal_basis(&i.ring, &i.module_ideal());
        let nf = gb.reduce_polynomial(&f);
        let text = i.ring.format(&nf);
        Ok(Output::ok(
            format!("{text}\n"),
            json!({"input": i.ring.format(&f), "normal_form": text, "in_ideal": nf.is_zero()}),
        ))
    })
}

fn tc_cmd(inst: &Inst) -> Result<Output, Error> {
    on!(inst, |i| {
        let tc = tangent_cone(i)?;
        let gens = strings(i, &tc.polynomials());
        Ok(Output::ok(lines(&gens), json!({"homogeneous_input": i.is_homogeneous(), "tangent_cone": gens})))
    })
}

/// `R(-2)^2 + R(-3)` for the basis degrees of one step.
fn free_module_text(degrees: &[i64]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut k = 0;
    while k < degrees.len() {
        let d = degrees[k];
        let run = degrees[k..].iter().take_while(|&&e| e == d).count();
        let base = if d == 0 { "R".to_string() } else { format!("R({})", -d) };
        parts.push(if run == 1 { base } else { format!("{base}^{run}") });
        k += run;
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn res_cmd(inst: &Inst) -> Result<Output, Error> {
    on!(inst, |i| {
        let g = associated_graded(i)?;
        let res = &g.resolution;
        let mut degrees = res.degrees();
        for d in &mut degrees {
            d.sort_unstable();
        }
        let mut text = String::new();
        for (k, d) in degrees.iter().enumerate() {
            writeln!(text, "F{k}: {}", free_module_text(d)).unwrap();
        }
        let maps: Vec<Vec<String>> = res
            .maps()
            .iter()
            .enumerate()
            .map(|(k, cols)| cols.iter().map(|c| res.modules()[k].format(c)).collect())
            .collect();
        let verified = res.verify_complex() && res.verify_exactness()?;
        Ok(Output::ok(
            text,
            json!({
                "twists": res.twists(),
                "maps": maps,
                "minimal": res.is_minimal(),
                "verified": verified,
            }),
        ))
    })
}

fn betti_value(bt: &BettiTable) -> Value {
    let entries: Vec<Value> = bt.entries().map(|((i, j), b)| json!([i, j, b])).collect();
    json!({
        "table": bt.render(),
        "entries": entries,
        "alpha": bt.alpha(),
        "gamma": bt.gamma(),
        "pd": bt.pd(),
        "reg": bt.regularity(),
        "pure": bt.is_pure(),
        "quasi_pure": bt.is_quasi_pure(),
    })
}

fn betti_cmd(inst: &Inst) -> Result<Output, Error> {
    on!(inst, |i| {
        let g = associated_graded(i)?;
        Ok(Output::ok(g.betti.render(), betti_value(&g.betti)))
    })
}

fn joined<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn hilbert_text(h: &HilbertData, up_to: usize) -> String {
    let mut text = String::new();
    writeln!(text, "dim: {}", h.dim).unwrap();
    writeln!(text, "h: {}", joined(&h.h_poly)).unwrap();
    writeln!(text, "e: {}", joined(&h.e)).unwrap();
    writeln!(text, "mu: {}", h.mu).unwrap();
    writeln!(text, "HF 0..{up_to}: {}", joined(&h.hilbert_function(up_to))).unwrap();
    text
}

fn hilbert_cmd(inst: &Inst, o: &Opts) -> Result<Output, Error> {
    let up_to = o.cutoff.max(0) as usize;
    on!(inst, |i| {
        let h = associated_graded(i)?.hilbert;
        Ok(Output::ok(
            hilbert_text(&h, up_to),
            json!({
                "numerator": h.numerator,
                "h_poly": h.h_poly,
                "dim": h.dim,
                "e": h.e,
                "mu": h.mu,
                "hilbert_function": h.hilbert_function(up_to),
            }),
        ))
    })
}

fn koszul_cmd(inst: &Inst) -> Result<Output, Error> {
    on!(inst, |i| {
        let g = associated_graded(i)?;
        let pres = Presentation::cyclic(&i.ring, &g.tangent_cone.polynomials());
        let h = koszul_homology_on_variables(&pres)?;
        let local = local_koszul_dims(i)?;
        let mut text = format!("H_i(x; G(M))_n for n = {}..{}\n", h.range.0, h.range.1);
        for (k, row) in h.dims.iter().enumerate() {
            writeln!(text, "{k}: {}", joined(row)).unwrap();
        }
        writeln!(text, "dim H_i(x; M): {}", joined(&local)).unwrap();
        Ok(Output::ok(
            text,
            json!({"graded": {"range": [h.range.0, h.range.1], "dims": h.dims}, "local": local}),
        ))
    })
}

fn depth_cmd(inst: &Inst) -> Result<Output, Error> {
    on!(inst, |i| {
        let g = associated_graded(i)?;
        let n = i.nvars() as i64;
        let depth_m = local_depth_via_koszul(i)? as i64;
        let depth_g = n - g.betti.pd() as i64;
        let dim = g.hilbert.dim;
        let text = format!(
            "dim: {dim}\ndepth M: {depth_m}\ndepth G(M): {depth_g}\nM Cohen-Macaulay: {}\nG(M) Cohen-Macaulay: {}\n",
            depth_m == dim,
            depth_g == dim
        );
        Ok(Output::ok(
            text,
            json!({
                "dim": dim,
                "depth_M": depth_m,
                "depth_G": depth_g,
                "M_cm": depth_m == dim,
                "G_cm": depth_g == dim,
            }),
        ))
    })
}

fn superficial_cmd(inst: &Inst, o: &Opts) -> Result<Output, Error> {
    let Window(a, b) = o.window;
    on!(inst, |i| {
        let (ell, c) = find_superficial(i, o.trials, (a, b), o.seed)?;
        let form = i.ring.format(&ell);
        Ok(Output::ok(
            format!("{form}\nsuperficial on window {a}:{b}\n"),
            json!({"form": form, "window": [a, b], "holds": c.holds, "seed": o.seed}),
        ))
    })
}

fn loewy_cmd(inst: &Inst) -> Result<Output, Error> {
    on!(inst, |i| {
        let ll = loewy_length(i)?;
        let reg = associated_graded(i)?.betti.regularity();
        Ok(Output::ok(format!("loewy length: {ll}\nreg G(M): {reg}\n"), json!({"loewy_length": ll, "reg": reg})))
    })
}

enum Claim {
    Theorem(TheoremId),
    /// Finite length of H_i(ℓt, L(M)), checked on a truncation.
    LmVanishing,
}

fn parse_claim(s: &str) -> Result<Claim, String> {
    if s == "thm-3.1" {
        return Ok(Claim::LmVanishing);
    }
    s.parse().map(Claim::Theorem).map_err(|e: Error| e.to_string())
}

fn report_text(r: &CheckReport) -> String {
    let mut text = String::new();
    writeln!(text, "theorem: {}", r.theorem).unwrap();
    writeln!(text, "seed: {}", r.seed).unwrap();
    for h in &r.hypotheses {
        writeln!(text, "hypothesis: {} = {} ({})", h.name, h.holds, h.witness).unwrap();
    }
    for (k, v) in &r.invariants {
        match v {
            Value::String(s) => writeln!(text, "{k}: {s}").unwrap(),
            _ => writeln!(text, "{k}: {v}").unwrap(),
        }
    }
    for n in &r.notes {
        writeln!(text, "note: {n}").unwrap();
    }
    writeln!(text, "verdict: {}", r.verdict).unwrap();
    text
}

fn check_cmd(inst: &Inst, theorem: TheoremId, o: &Opts) -> Result<Output, Error> {
    let opts = CheckOptions {
        seed: o.seed,
        stages: o.stages,
        declared_cx: o.declare_cx,
    };
    let report = on!(inst, |i| check(theorem, i, &opts))?;
    Ok(Output {
        text: report_text(&report),
        json: serde_json::to_value(&report).expect("serializable"),
        code: report.verdict.exit_code(),
    })
}

/// Linear forms among the variables completing `forms` to a spanning set
/// of m/m², chosen greedily in variable order.
fn completing_variables<F: Field>(inst: &LocalInstance<F>, forms: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
    let ring = &inst.ring;
    let field = ring.field();
    let n = ring.nvars();
    let coords = |f: &Polynomial<F>| {
        let mut c = vec![field.zero(); n];
        for (coef, m) in f.terms() {
            if m.degree() == 1 {
                let v = (0..n).find(|&v| m.exponent(v) == 1).unwrap();
                c[v] = coef.clone();
            }
        }
        c
    };
    let mut cols: Vec<Vec<F::Elem>> = forms.iter().map(coords).collect();
    let mut rank = Matrix::from_columns(field, n, &cols).rank(field);
    let mut extra = Vec::new();
    for v in 0..n {
        if rank == n {
            break;
        }
        let x = ring.monomial(field.one(), Monomial::variable(n, v));
        cols.push(coords(&x));
        let r = Matrix::from_columns(field, n, &cols).rank(field);
        if r > rank {
            rank = r;
            extra.push(x);
        } else {
            cols.pop();
        }
    }
    extra
}

fn lm_text(r: &LmReport) -> String {
    let mut text = String::new();
    writeln!(text, "cutoff: {}", r.cutoff).unwrap();
    for h in &r.hypotheses {
        writeln!(text, "hypothesis: {} = {} ({})", h.name, h.holds, h.witness).unwrap();
    }
    for c in &r.claims {
        let last: Vec<String> = c
            .last_nonzero
            .iter()
            .map(|(i, n)| match n {
                Some(n) => format!("H_{i} last nonzero at {n}"),
                None => format!("H_{i} zero"),
            })
            .collect();
        writeln!(
            text,
            "claim {}: i >= {}, tail window {}..{}, {}, holds = {}",
            c.label,
            c.min_index.max(1),
            c.tail_window.0,
            c.tail_window.1,
            last.join(", "),
            c.holds_on_window
        )
        .unwrap();
    }
    writeln!(text, "verdict: {}", r.verdict).unwrap();
    text
}

/// Superficial sequence of length dim M, each element found modulo the
/// previous ones, then the L(M) homology check.
fn lm_cmd(inst: &Inst, o: &Opts) -> Result<Output, Error> {
    let Window(a, b) = o.window;
    let report = on!(inst, |i| {
        let dim = associated_graded(i)?.hilbert.dim.max(0) as u64;
        let mut seq = Vec::new();
        for k in 0..dim {
            let cut = i.with_extra(&seq)?;
            let (ell, _) = find_superficial(&cut, o.trials, (a, b), o.seed.wrapping_add(k))?;
            seq.push(ell);
        }
        let extra = completing_variables(i, &seq);
        let mut r = check_lm_homology_vanishing(i, &seq, &extra, o.cutoff, (a, b))?;
        r.hypotheses.insert(
            0,
            gradecone::theorems::Hypothesis::new(
                "superficial sequence found",
                true,
                format!("{:?}", strings(i, &seq)),
            ),
        );
        r
    });
    let mut json = serde_json::to_value(&report).expect("serializable");
    json["theorem"] = json!("thm-3.1");
    json["seed"] = json!(o.seed);
    Ok(Output {
        text: lm_text(&report),
        json,
        code: report.verdict.exit_code(),
    })
}

#[allow(clippy::too_many_arguments)]
fn corpus(
    o: &Opts,
    kind: CorpusKind,
    count: usize,
    nvars: usize,
    max_degree: u32,
    gens: Option<usize>,
    check_id: Option<&str>,
    err: &mut dyn Write,
) -> Result<Output, String> {
    if count == 0 {
        return Err("--count must be at least 1".into());
    }
    if !(1..=8).contains(&nvars) {
        return Err("--nvars must lie in 1..=8".into());
    }
    let params = CorpusParams {
        gens,
        field: o.field.unwrap_or_default(),
        ..CorpusParams::new(kind, nvars, max_degree, count)
    };
    let files = generate_corpus(&params, o.seed);
    let Some(id) = check_id else {
        let text = files.iter().map(|f| format!("{}\n", f.to_json())).collect();
        return Ok(Output::ok(text, json!({"kind": kind.to_string(), "seed": o.seed, "instances": files})));
    };
    let theorem: TheoremId = id.parse().map_err(|e: Error| e.to_string())?;
    let opts = CheckOptions {
        seed: o.seed,
        stages: o.stages,
        declared_cx: o.declare_cx,
    };
    let workers = o
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let summary = run_corpus(theorem, &files, params.field, &opts, workers).map_err(|e| e.to_string())?;
    for (idx, r) in &summary.results {
        if r == Verdict::Fail.as_str() || r.starts_with("error") {
            let _ = writeln!(err, "instance {idx}: {r}: {}", files[*idx].to_json());
        }
    }
    let mut text = String::new();
    writeln!(text, "theorem: {theorem}").unwrap();
    writeln!(text, "kind: {kind}").unwrap();
    writeln!(text, "seed: {}", o.seed).unwrap();
    writeln!(text, "count: {}", summary.count).unwrap();
    for (v, n) in &summary.verdicts {
        writeln!(text, "{v}: {n}").unwrap();
    }
    writeln!(text, "errors: {}", summary.errors).unwrap();
    Ok(Output {
        text,
        json: serde_json::to_value(&summary).expect("serializable"),
        code: summary.exit_code(),
    })
}
