#![allow(dead_code)]

use std::path::PathBuf;

/// One CLI invocation with a frozen standard output and exit status.
pub struct Golden {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub code: i32,
}

/// Arguments name example instances as `@name`, expanded to the shipped file.
pub const GOLDENS: &[Golden] = &[
    Golden { name: "betti_embedded", args: &["betti", "@embedded"], code: 0 },
    Golden { name: "betti_residue", args: &["betti", "@residue"], code: 0 },
    Golden { name: "betti_quasipure", args: &["betti", "@quasipure"], code: 0 },
    Golden { name: "betti_not_quasipure", args: &["betti", "@not_quasipure"], code: 0 },
    Golden { name: "betti_not_quasipure_json", args: &["betti", "@not_quasipure", "--json"], code: 0 },
    Golden { name: "res_quasipure", args: &["res", "@quasipure"], code: 0 },
    Golden { name: "gb_curve", args: &["gb", "@curve"], code: 0 },
    Golden { name: "nf_quasipure", args: &["nf", "@quasipure", "x^3 + x*y^4 + y^3"], code: 0 },
    Golden { name: "tc_cusp_point", args: &["tc", "@cusp_point"], code: 0 },
    Golden { name: "tc_curve", args: &["tc", "@curve"], code: 0 },
    Golden { name: "hilbert_cusp", args: &["hilbert", "@cusp"], code: 0 },
    Golden { name: "hilbert_curve_json", args: &["hilbert", "@curve", "--json", "--cutoff", "8"], code: 0 },
    Golden { name: "koszul_residue", args: &["koszul", "@residue"], code: 0 },
    Golden { name: "depth_embedded", args: &["depth", "@embedded"], code: 0 },
    Golden { name: "depth_curve", args: &["depth", "@curve"], code: 0 },
    Golden { name: "superficial_cusp", args: &["superficial", "@cusp", "--seed", "3"], code: 0 },
    Golden { name: "loewy_not_quasipure", args: &["loewy", "@not_quasipure"], code: 0 },
    Golden { name: "check_thm33_embedded", args: &["check", "thm-3.3", "@embedded"], code: 2 },
    Golden { name: "check_thm33_residue", args: &["check", "thm-3.3", "@residue"], code: 0 },
    Golden { name: "check_thm33_curve_json", args: &["check", "thm-3.3", "@curve", "--json"], code: 0 },
    Golden { name: "check_cor34_quasipure_json", args: &["check", "cor-3.4", "@quasipure", "--json"], code: 0 },
    Golden { name: "check_cor34_not_quasipure", args: &["check", "cor-3.4", "@not_quasipure"], code: 0 },
    Golden { name: "check_cor34_embedded", args: &["check", "cor-3.4", "@embedded"], code: 2 },
    Golden { name: "check_lem42_hyper2", args: &["check", "lem-4.2", "@hyper2"], code: 0 },
    Golden { name: "check_thm43_hyper3_json", args: &["check", "thm-4.3", "@hyper3", "--json"], code: 0 },
    Golden { name: "check_thm57_sci", args: &["check", "thm-5.7", "@sci"], code: 0 },
    Golden { name: "check_thm31_cusp", args: &["check", "thm-3.1", "@cusp", "--cutoff", "15"], code: 0 },
    Golden { name: "koszul_lm_cusp_json", args: &["koszul", "--lm", "@cusp", "--json"], code: 0 },
    Golden {
        name: "corpus_monomial",
        args: &["corpus", "--kind", "monomial", "--nvars", "2", "--max-degree", "4", "--count", "10", "--seed", "7"],
        code: 0,
    },
    Golden {
        name: "corpus_thm33_2vars",
        args: &["corpus", "--kind", "perturbed-homogeneous", "--count", "100", "--seed", "1", "--check", "thm-3.3"],
        code: 0,
    },
    Golden {
        name: "corpus_cor34_2vars",
        args: &["corpus", "--kind", "perturbed-homogeneous", "--max-degree", "5", "--count", "100", "--seed", "1", "--check", "cor-3.4"],
        code: 0,
    },
    Golden {
        name: "corpus_thm33_3vars",
        args: &[
            "corpus", "--kind", "perturbed-homogeneous", "--nvars", "3", "--max-degree", "4", "--count", "300", "--seed", "11",
            "--check", "thm-3.3",
        ],
        code: 0,
    },
    Golden {
        name: "corpus_thm33_3vars_json",
        args: &[
            "corpus", "--kind", "perturbed-homogeneous", "--nvars", "3", "--max-degree", "4", "--count", "40", "--seed", "11",
            "--check", "thm-3.3", "--json",
        ],
        code: 0,
    },
];

pub fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(format!("{name}.json"))
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.out"))
}

/// Run the CLI in-process; returns (exit code, stdout, stderr).
pub fn run(args: &[&str]) -> (i32, String, String) {
    let mut argv: Vec<std::ffi::OsString> = vec!["gradecone".into()];
    for a in args {
        match a.strip_prefix('@') {
            Some(name) => argv.push(example(name).into_os_string()),
            None => argv.push(a.into()),
        }
    }
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = gradecone_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

pub fn run_golden(g: &Golden) -> (i32, String) {
    let (code, out, _) = run(g.args);
    (code, out)
}
