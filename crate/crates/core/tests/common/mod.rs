//! Shared helpers: the golden CLI command matrix and small independent
//! oracles that do not go through the library's arithmetic.

#![allow(dead_code)]

use std::path::PathBuf;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

const F2X: &str = r#"{"ring":"PolyRing","p":2}"#;
const F3X: &str = r#"{"ring":"PolyRing","p":3}"#;
const F4: &str = r#"{"ring":"GF","p":2,"r":2}"#;
const F9: &str = r#"{"ring":"GF","p":3,"r":2}"#;
const F2T: &str = r#"{"ring":"RatFunc","p":2}"#;
const PTS_F2: &str = r#"{"ring":"Points","p":2,"count":3}"#;
const PTS_F3: &str = r#"{"ring":"Points","p":3,"count":2}"#;
const PTS_F4: &str = r#"{"ring":"Points","p":2,"baseExp":2,"count":2}"#;

macro_rules! case {
    ($name:literal, $exit:literal, [$($a:expr),* $(,)?]) => {
        Case { name: $name, args: &[$($a),*], exit: $exit }
    };
}

pub const CASES: &[Case] = &[
    case!("skew_mul_f2x", 0, ["skew", "mul", "--ring", F2X, "F", "x"]),
    case!("skew_mul_f2", 0, ["skew", "mul", "(F+1)^2", "1"]),
    case!("skew_mul_f9", 0, ["skew", "mul", "--ring", F9, "w*F^2 + 2", "F + w"]),
    case!("skew_mul_f2t", 0, ["skew", "mul", "--ring", F2T, "F", "1/t"]),
    case!("skew_divr_f4", 0, ["skew", "divr", "--ring", F4, "F^2 + w*F + 1", "F + w"]),
    case!("skew_divl_f4", 0, ["skew", "divl", "--ring", F4, "F^3 + w", "w*F + 1"]),
    case!("skew_divl_f2t", 1, ["skew", "divl", "--ring", F2T, "F^2", "F + t"]),
    case!("skew_gcrd_f2", 0, ["skew", "gcrd", "F + 1", "F"]),
    case!("skew_gcrd_f9", 0, ["skew", "gcrd", "--ring", F9, "(F+w)*(F+1)", "(F+2)*(F+1)"]),
    case!("skew_syntax", 1, ["skew", "mul", "F +", "1"]),
    case!("skew_unknown_symbol", 1, ["skew", "mul", "x", "F"]),
    case!("ore_witness_left", 0, ["ore", "witness", "--ring", F2X, "x", "F^2 + x*F + 1"]),
    case!("ore_witness_right", 0, ["ore", "witness", "--side", "right", "--ring", F3X, "x+1", "F^2 + x"]),
    case!("ore_search_f2t", 0, ["ore", "search", "--maxdeg", "8", "F", "t*F", "--ring", F2T]),
    case!("ore_search_f4", 0, ["ore", "search", "--ring", F4, "F + w", "F^2 + 1"]),
    case!("ore_localize", 0, ["ore", "localize", "--ring", F2X, "F", "x"]),
    case!("ore_localize_bad_den", 1, ["ore", "localize", "--ring", F2X, "F", "x+1"]),
    case!("ore_dfrac_reduce", 0, ["ore", "dfrac", "--ring", F4, "(F+w)*F", "(F+1)*F"]),
    case!("ore_dfrac_add", 0, ["ore", "dfrac", "--op", "add", "--ring", F4, "F", "F+1", "1", "F"]),
    case!("ore_dfrac_not_perfect", 1, ["ore", "dfrac", "--ring", F2T, "F", "t"]),
    case!("koszul_present", 0, ["koszul", "present", "--ring", F4, r#"[["0","1"],["0","0"]]"#]),
    case!("koszul_check", 0, ["koszul", "check", "--ring", F9, r#"[["w","1"],["2","w+1"]]"#]),
    case!("koszul_bound_zero", 1, ["koszul", "check", "--bound", "0", r#"[["1"]]"#]),
    case!("ideal_reduce", 0, ["ideal", "reduce", "F + 1", "F"]),
    case!("ideal_reduce_f4", 0, ["ideal", "reduce", "--ring", F4, "F^3 + w*F", "F^2 + 1"]),
    case!("ideal_filtration", 0, ["ideal", "filtration", "--d", "3", "--ring", F4, "F^2 + w"]),
    case!("ideal_coker", 0, ["ideal", "coker", "--dbound", "5", "--ring", F4, "F + w"]),
    case!("ideal_empty", 1, ["ideal", "reduce", "0"]),
    case!("cartier_analyze_mixed", 0, ["cartier", "analyze", "tests/golden/fixtures/f2_mixed.json"]),
    case!("cartier_analyze_points", 0, ["cartier", "analyze", "tests/golden/fixtures/points3.json"]),
    case!("cartier_analyze_nonreduced", 1, ["cartier", "analyze", "tests/golden/fixtures/nonreduced.json"]),
    case!("cartier_analyze_bad", 1, ["cartier", "analyze", "tests/golden/fixtures/bad_entry.json"]),
    case!("cartier_delta", 0, ["cartier", "delta", "--ring", PTS_F3, "--point", "1", "--scalar", "2"]),
    case!("cartier_delta_f4", 0, ["cartier", "delta", "--ring", PTS_F4, "--point", "0", "--scalar", "w"]),
    case!("k0_class", 0, ["k0", "class", "tests/golden/fixtures/f3_two_points.json"]),
    case!("k0_trace", 0, ["k0", "trace", "tests/golden/fixtures/points3.json"]),
    case!("k0_ses_f2", 0, ["k0", "ses", "--ring", PTS_F2, "--samples", "30", "--seed", "7"]),
    case!("k0_ses_f4", 0, ["k0", "ses", "--ring", PTS_F4, "--samples", "20", "--seed", "11"]),
    case!("k0_qdrank", 0, ["k0", "qdrank", "--ring", F4, "--generators", "3", r#"[["F","1","0"]]"#, "--scramble", "6", "--seed", "3"]),
    case!("k0_qdrank_not_perfect", 1, ["k0", "qdrank", "--ring", F2T, "--generators", "1", "[]"]),
    case!("k0_chow", 0, ["k0", "chow", "--n", "2", "--q", "3"]),
    case!("k0_chow_bad_q", 1, ["k0", "chow", "--n", "2", "--q", "6"]),
    case!("k0_defect", 0, ["k0", "defect", "tests/golden/fixtures/f4_point.json"]),
    case!("k0_defect_many", 1, ["k0", "defect", "tests/golden/fixtures/points3.json"]),
    case!("usage_bad_ring", 2, ["skew", "mul", "--ring", r#"{"ring":"Quaternions","p":2}"#, "F", "F"]),
];

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.out"))
}

pub fn run_case(c: &Case) -> fskew::cli::Outcome {
    fskew::cli::run(std::iter::once("fskew").chain(c.args.iter().copied()))
}

/// Compares one case with its golden file; rewrites it when `FSKEW_BLESS` is set.
pub fn check_case(c: &Case) -> Result<(), String> {
    let o = run_case(c);
    if o.code != c.exit {
        return Err(format!("{}: exit {} (want {}): {}{}", c.name, o.code, c.exit, o.stdout, o.stderr));
    }
    let path = golden_path(c.name);
    if std::env::var_os("FSKEW_BLESS").is_some() {
        std::fs::write(&path, &o.stdout).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let want = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if want != o.stdout {
        return Err(format!("{}: output differs\n got: {}want: {}", c.name, o.stdout, want));
    }
    Ok(())
}

/// `F_4 = F_2[w]/(w^2+w+1)` as pairs `(a, b) = a + b·w`, by table.
pub mod gf4 {
    pub type E = (u8, u8);

    pub fn add(x: E, y: E) -> E {
        (x.0 ^ y.0, x.1 ^ y.1)
    }

    pub fn mul(x: E, y: E) -> E {
        // (a + bw)(c + dw) = ac + (ad + bc)w + bd·w², w² = w + 1
        let (a, b, c, d) = (x.0, x.1, y.0, y.1);
        let ac = a & c;
        let mid = (a & d) ^ (b & c);
        let bd = b & d;
        (ac ^ bd, mid ^ bd)
    }

    pub fn square(x: E) -> E {
        mul(x, x)
    }

    /// Product in `F_4[F]` with `F·a = a²·F`, coefficients ascending.
    pub fn skew_mul(a: &[E], b: &[E]) -> Vec<E> {
        let mut out = vec![(0, 0); (a.len() + b.len()).saturating_sub(1)];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                let mut t = bj;
                for _ in 0..i {
                    t = square(t);
                }
                out[i + j] = add(out[i + j], mul(ai, t));
            }
        }
        while out.last() == Some(&(0, 0)) {
            out.pop();
        }
        out
    }

    pub fn skew_add(a: &[E], b: &[E]) -> Vec<E> {
        let n = a.len().max(b.len());
        let mut out: Vec<E> = (0..n)
            .map(|i| add(*a.get(i).unwrap_or(&(0, 0)), *b.get(i).unwrap_or(&(0, 0))))
            .collect();
        while out.last() == Some(&(0, 0)) {
            out.pop();
        }
        out
    }
}

/// Square matrices over `F_p` as plain nested vectors.
pub fn mat_mul(p: u32, a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    (0..b.len()).fold(0u64, |acc, k| (acc + a[i][k] as u64 * b[k][j] as u64) % p as u64) as u32
                })
                .collect()
        })
        .collect()
}

pub fn mat_pow_is_zero(p: u32, a: &[Vec<u32>], e: usize) -> bool {
    let n = a.len();
    let mut acc: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u32).collect()).collect();
    for _ in 0..e {
        acc = mat_mul(p, &acc, a);
    }
    acc.iter().flatten().all(|&x| x == 0)
}
