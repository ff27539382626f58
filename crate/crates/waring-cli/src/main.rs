//! Command-line surface: parse polynomial files, run the decomposition
//! pipelines, and emit decompositions, rank bounds, formula tables, and
//! generated test instances.
//!
//! File format, one polynomial per file:
//!
//! ```text
//! waring <n> <d> <exact|float>
//! # comment lines start with '#'
//! <coefficient> <e0> <e1> ... <en>
//! ```
//!
//! with exponents summing to `d`; exact coefficients are integers or `p/q`
//! fractions, float coefficients are decimals. Exit codes: 0 success, 1
//! input error, 2 structured pipeline failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;

use waring::bounds::{applicability, eigenvector_count, generic_rank, uniqueness_class};
use waring::bounds::{Applicability, EigenvectorCount, UniquenessClass};
use waring::poly::{monomial_count, MonomialBasis, Multidegree};
use waring::scalar::Scalar;
use waring::{
    decompose, generate_random_rank_r, Complex, DecomposeError, FailureStage, HomPoly, Method,
    Rational, WaringOutput,
};

#[derive(Parser)]
#[command(
    name = "waring",
    about = "Decompose homogeneous polynomials into sums of powers of linear forms",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decompose the polynomial in FILE and print the terms.
    Decompose {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Working scalar field; defaults to the file header's field.
        #[arg(long, value_enum)]
        field: Option<FieldArg>,
        #[arg(long, default_value_t = waring::DEFAULT_SEED)]
        seed: u64,
        /// Emit a single JSON object instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Print the flattening rank lower bound for the polynomial in FILE.
    RankBound {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[arg(long, value_enum)]
        field: Option<FieldArg>,
    },
    /// Print generic rank, uniqueness class, method bounds and eigenvector
    /// counts for the given shape.
    Info {
        n: usize,
        d: usize,
        r: Option<usize>,
    },
    /// Write a random rank-R polynomial file plus a ground-truth sidecar.
    Generate {
        n: usize,
        d: usize,
        r: usize,
        #[arg(long, default_value_t = waring::DEFAULT_SEED)]
        seed: u64,
        #[arg(short, long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Catalecticant,
    Koszul,
    KoszulGeneral,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Catalecticant => Method::Catalecticant,
            MethodArg::Koszul => Method::KoszulA1,
            MethodArg::KoszulGeneral => Method::KoszulGeneral,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FieldArg {
    Exact,
    Float,
}

struct ParseError {
    line: usize,
    col: usize,
    msg: String,
}

impl ParseError {
    fn at(line: usize, col: usize, msg: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            msg: msg.into(),
        }
    }
}

enum ParsedPoly {
    Exact(HomPoly<Rational>),
    Float(HomPoly<f64>),
}

impl ParsedPoly {
    fn shape(&self) -> (usize, usize) {
        match self {
            ParsedPoly::Exact(f) => (f.nvars() - 1, f.degree()),
            ParsedPoly::Float(f) => (f.nvars() - 1, f.degree()),
        }
    }
}

fn parse_rational(tok: &str) -> Option<Rational> {
    match tok.split_once('/') {
        Some((p, q)) => {
            let num: BigInt = p.parse().ok()?;
            let den: BigInt = q.parse().ok()?;
            if den.is_zero() {
                return None;
            }
            Some(Rational::new(num, den))
        }
        None => {
            let num: BigInt = tok.parse().ok()?;
            Some(Rational::from_integer(num))
        }
    }
}

fn parse_poly_text(text: &str) -> Result<ParsedPoly, ParseError> {
    let mut lines = text.lines().enumerate();
    let (hline_no, header) = loop {
        match lines.next() {
            Some((i, l)) => {
                let t = l.trim();
                if t.is_empty() || t.starts_with('#') {
                    continue;
                }
                break (i + 1, l);
            }
            None => return Err(ParseError::at(1, 1, "empty file")),
        }
    };
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "waring" {
        return Err(ParseError::at(
            hline_no,
            1,
            "header must be `waring <n> <d> <exact|float>`",
        ));
    }
    let n: usize = toks[1]
        .parse()
        .map_err(|_| ParseError::at(hline_no, 1, "invalid n in header"))?;
    let d: usize = toks[2]
        .parse()
        .map_err(|_| ParseError::at(hline_no, 1, "invalid d in header"))?;
    let exact_field = match toks[3] {
        "exact" => true,
        "float" => false,
        _ => return Err(ParseError::at(hline_no, 1, "field must be exact or float")),
    };
    if n < 1 || d < 1 {
        return Err(ParseError::at(hline_no, 1, "need n >= 1 and d >= 1"));
    }
    let nvars = n + 1;
    let basis = MonomialBasis::get(nvars, d);
    let mut exact_coeffs = vec![Rational::zero(); basis.len()];
    let mut float_coeffs = vec![0.0f64; basis.len()];
    let mut seen = vec![false; basis.len()];

    for (i, raw) in lines {
        let line_no = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let col_of = |tok: &str| raw.find(tok).map_or(1, |p| p + 1);
        let toks: Vec<&str> = t.split_whitespace().collect();
        if toks.len() != nvars + 1 {
            return Err(ParseError::at(
                line_no,
                1,
                format!("expected `<coefficient> {}`", vec!["<e>"; nvars].join(" ")),
            ));
        }
        let mut exps = Vec::with_capacity(nvars);
        for tok in &toks[1..] {
            let e: u32 = tok
                .parse()
                .map_err(|_| ParseError::at(line_no, col_of(tok), "invalid exponent"))?;
            exps.push(e);
        }
        let md = Multidegree(exps);
        if md.total_degree() != d {
            return Err(ParseError::at(
                line_no,
                col_of(toks[1]),
                format!("exponents must sum to {d}"),
            ));
        }
        let ix = basis.index_of(&md).expect("degree checked");
        if seen[ix] {
            return Err(ParseError::at(line_no, 1, "duplicate monomial line"));
        }
        seen[ix] = true;
        if exact_field {
            let c = parse_rational(toks[0]).ok_or_else(|| {
                ParseError::at(
                    line_no,
                    col_of(toks[0]),
                    "invalid exact coefficient (p or p/q)",
                )
            })?;
            exact_coeffs[ix] = c;
        } else {
            let c: f64 = toks[0].parse().map_err(|_| {
                ParseError::at(line_no, col_of(toks[0]), "invalid float coefficient")
            })?;
            if !c.is_finite() {
                return Err(ParseError::at(
                    line_no,
                    col_of(toks[0]),
                    "coefficient must be finite",
                ));
            }
            float_coeffs[ix] = c;
        }
    }
    Ok(if exact_field {
        ParsedPoly::Exact(HomPoly::from_coeffs(nvars, d, exact_coeffs))
    } else {
        ParsedPoly::Float(HomPoly::from_coeffs(nvars, d, float_coeffs))
    })
}

fn print_poly_exact(f: &HomPoly<Rational>) -> String {
    let n = f.nvars() - 1;
    let d = f.degree();
    let basis = MonomialBasis::get(f.nvars(), d);
    let mut out = format!("waring {n} {d} exact\n");
    for (ix, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let exps: Vec<String> = basis
            .multidegree(ix)
            .exponents()
            .iter()
            .map(|e| e.to_string())
            .collect();
        let _ = writeln!(out, "{} {}", c, exps.join(" "));
    }
    out
}

fn fmt_complex(z: &Complex) -> String {
    let scale = z.re.abs().max(1.0);
    if z.im.abs() <= 1e-9 * scale {
        format!("{}", z.re)
    } else if z.im >= 0.0 {
        format!("{}+{}i", z.re, z.im)
    } else {
        format!("{}{}i", z.re, z.im)
    }
}

fn term_lines(out: &WaringOutput) -> Vec<(String, Vec<String>)> {
    match out {
        WaringOutput::Exact(dec) => dec
            .terms
            .iter()
            .map(|(c, v)| {
                (
                    c.to_string(),
                    v.coords().iter().map(|x| x.to_string()).collect(),
                )
            })
            .collect(),
        WaringOutput::Numeric(dec) => dec
            .terms
            .iter()
            .map(|(c, v)| (fmt_complex(c), v.coords().iter().map(fmt_complex).collect()))
            .collect(),
    }
}

/// Render an exact decomposition with float formatting when the working
/// field is float.
fn term_lines_as_float(dec: &waring::Decomposition<Rational>) -> Vec<(String, Vec<String>)> {
    dec.terms
        .iter()
        .map(|(c, v)| {
            (
                format!("{}", Scalar::to_f64(c)),
                v.coords()
                    .iter()
                    .map(|x| format!("{}", Scalar::to_f64(x)))
                    .collect(),
            )
        })
        .collect()
}

fn stage_name(stage: FailureStage) -> &'static str {
    match stage {
        FailureStage::TrivialKernel => "trivial_kernel",
        FailureStage::InfiniteBaseLocus { .. } => "infinite_base_locus",
        FailureStage::NonReduced => "non_reduced",
        FailureStage::NoCoefficientSolution => "no_coefficient_solution",
        FailureStage::Budget => "budget",
    }
}

fn cmd_decompose(
    path: &Path,
    method: MethodArg,
    field: Option<FieldArg>,
    seed: u64,
    json: bool,
) -> ExitCode {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return ExitCode::from(1);
        }
    };
    let parsed = match parse_poly_text(&text) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {}:{}:{}: {}", path.display(), e.line, e.col, e.msg);
            return ExitCode::from(1);
        }
    };
    let (n, d) = parsed.shape();
    let file_field = match parsed {
        ParsedPoly::Exact(_) => FieldArg::Exact,
        ParsedPoly::Float(_) => FieldArg::Float,
    };
    let field = field.unwrap_or(file_field);
    let result = match &parsed {
        ParsedPoly::Exact(f) => decompose(f, method.into(), seed),
        ParsedPoly::Float(f) => decompose(f, method.into(), seed),
    };
    match result {
        Ok(out) => {
            let (field_name, lines) = match (&out, field) {
                (WaringOutput::Exact(dec), FieldArg::Float) => ("float", term_lines_as_float(dec)),
                (WaringOutput::Exact(_), FieldArg::Exact) => ("exact", term_lines(&out)),
                (WaringOutput::Numeric(_), _) => ("float", term_lines(&out)),
            };
            let residual = out.residual();
            if json {
                let terms: Vec<serde_json::Value> = lines
                    .iter()
                    .map(|(c, coords)| serde_json::json!({ "coefficient": c, "point": coords }))
                    .collect();
                let obj = serde_json::json!({
                    "status": "ok",
                    "n": n,
                    "d": d,
                    "field": field_name,
                    "method": out.method().to_string(),
                    "rank_lower_bound": out.rank_lower_bound(),
                    "terms": terms,
                    "residual": residual,
                    "exact": out.is_exact(),
                });
                println!("{}", serde_json::to_string_pretty(&obj).unwrap());
            } else {
                println!("method: {}", out.method());
                println!("field: {field_name}");
                println!("rank lower bound: {}", out.rank_lower_bound());
                println!("terms: {}", out.num_terms());
                if out.is_exact() {
                    println!("residual: 0 (exact)");
                } else {
                    println!("residual: {residual:e}");
                }
                for (c, coords) in &lines {
                    println!("term {c} : {}", coords.join(" "));
                }
            }
            ExitCode::SUCCESS
        }
        Err(DecomposeError::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(DecomposeError::Failed(report)) => {
            if json {
                let mut obj = serde_json::json!({
                    "status": "failed",
                    "n": n,
                    "d": d,
                    "method": report.method.to_string(),
                    "stage": stage_name(report.stage),
                });
                if let Some(b) = report.rank_lower_bound {
                    obj["rank_lower_bound"] = serde_json::json!(b);
                }
                if let FailureStage::InfiniteBaseLocus { dimension } = report.stage {
                    obj["dimension"] = serde_json::json!(dimension);
                }
                println!("{}", serde_json::to_string_pretty(&obj).unwrap());
            } else {
                println!("failure: {}", stage_name(report.stage));
                println!("method: {}", report.method);
                if let FailureStage::InfiniteBaseLocus { dimension } = report.stage {
                    println!("base locus dimension: {dimension}");
                }
                if let Some(b) = report.rank_lower_bound {
                    println!("rank lower bound: {b}");
                }
            }
            ExitCode::from(2)
        }
    }
}

fn cmd_rank_bound(path: &Path, method: MethodArg, field: Option<FieldArg>) -> ExitCode {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return ExitCode::from(1);
        }
    };
    let parsed = match parse_poly_text(&text) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {}:{}:{}: {}", path.display(), e.line, e.col, e.msg);
            return ExitCode::from(1);
        }
    };
    let (n, d) = parsed.shape();
    if d < 2 {
        eprintln!("error: degree must be at least 2");
        return ExitCode::from(1);
    }
    let resolved = Method::from(method).resolve(n, d);
    let field = field.unwrap_or(match parsed {
        ParsedPoly::Exact(_) => FieldArg::Exact,
        ParsedPoly::Float(_) => FieldArg::Float,
    });

    fn bound_for<T: Scalar>(f: &HomPoly<T>, method: Method) -> (usize, usize) {
        let n = f.nvars() - 1;
        let d = f.degree();
        let fl = match method {
            Method::Catalecticant => waring::catalecticant(f, d.div_ceil(2)),
            Method::KoszulA1 => waring::koszul_flattening(f, (d - 1).div_ceil(2).max(1), 1),
            Method::KoszulGeneral => {
                waring::koszul_flattening(f, (d - 1).div_ceil(2).max(1), n.div_ceil(2))
            }
            Method::Auto => unreachable!(),
        };
        let rank = waring::rank_of(&fl.matrix);
        (rank, fl.bundle_rank)
    }

    let (rank, bundle) = match (&parsed, field) {
        (ParsedPoly::Exact(f), FieldArg::Exact) => bound_for(f, resolved),
        (ParsedPoly::Exact(f), FieldArg::Float) => {
            bound_for(&f.map_scalars(|c| Scalar::to_f64(c)), resolved)
        }
        (ParsedPoly::Float(f), FieldArg::Float) => bound_for(f, resolved),
        (ParsedPoly::Float(f), FieldArg::Exact) => {
            let exact = f.map_scalars(|c| c.to_rational().expect("finite float"));
            bound_for(&exact, resolved)
        }
    };
    println!("{}", rank.div_ceil(bundle));
    ExitCode::SUCCESS
}

fn describe_uniqueness(class: UniquenessClass) -> &'static str {
    match class {
        UniquenessClass::Unique => "unique",
        UniquenessClass::DefectiveInfinitelyMany => "defective (infinitely many decompositions)",
        UniquenessClass::WeaklyDefectiveTwo => "weakly defective (exactly two decompositions)",
        UniquenessClass::FinitelyManyGeneric => "finitely many decompositions",
        UniquenessClass::InfinitelyManyGeneric => "infinitely many decompositions",
        UniquenessClass::RankExceedsGeneric => "rank exceeds the generic rank",
    }
}

fn guaranteed_up_to(n: usize, d: usize, method: Method) -> Option<usize> {
    let mut best = None;
    for r in 1..=generic_rank(n, d) + 2 {
        if applicability(n, d, r, method) == Applicability::Guaranteed {
            best = Some(r);
        }
    }
    best
}

fn cmd_info(n: usize, d: usize, r: Option<usize>) -> ExitCode {
    if n < 1 || d < 2 {
        eprintln!("error: need n >= 1 and d >= 2");
        return ExitCode::from(1);
    }
    let g = generic_rank(n, d);
    println!("shape: {} variables, degree {d}", n + 1);
    println!("generic rank: {g}");
    let rank = r.unwrap_or(g);
    println!(
        "decompositions at rank {rank}: {}",
        describe_uniqueness(uniqueness_class(n, d, rank))
    );
    let m_cat = d.div_ceil(2);
    match guaranteed_up_to(n, d, Method::Catalecticant) {
        Some(b) => println!("catalecticant (m={m_cat}): guaranteed up to rank {b}"),
        None => println!("catalecticant (m={m_cat}): no guaranteed range"),
    }
    let m_k = (d - 1).div_ceil(2).max(1);
    for (label, method, a) in [
        ("koszul (a=1)", Method::KoszulA1, 1usize),
        ("koszul-general", Method::KoszulGeneral, n.div_ceil(2)),
    ] {
        match guaranteed_up_to(n, d, method) {
            Some(b) => println!("{label} (m={m_k}, a={a}): guaranteed up to rank {b}"),
            None => println!("{label} (m={m_k}, a={a}): no guaranteed range"),
        }
        let count = match eigenvector_count(n, m_k, a) {
            EigenvectorCount::Finite(c) => c.to_string(),
            EigenvectorCount::Infinite => "infinite".to_string(),
        };
        println!("{label} eigenvector count per general map: {count}");
    }
    ExitCode::SUCCESS
}

fn cmd_generate(n: usize, d: usize, r: usize, seed: u64, out: &Path) -> ExitCode {
    if n < 1 || d < 2 || r < 1 {
        eprintln!("error: need n >= 1, d >= 2, r >= 1");
        return ExitCode::from(1);
    }
    if r > monomial_count(n + 1, d) {
        eprintln!("error: rank exceeds the dimension of the space of forms");
        return ExitCode::from(1);
    }
    let (f, truth, coeffs) = generate_random_rank_r(n, d, r, seed);
    let poly_text = print_poly_exact(&f);
    if let Err(e) = std::fs::write(out, &poly_text) {
        eprintln!("error: cannot write {}: {e}", out.display());
        return ExitCode::from(1);
    }
    let mut truth_text = format!("waring-truth {n} {d}\n# seed {seed}\n");
    for (c, v) in coeffs.iter().zip(&truth) {
        let coords: Vec<String> = v.coords().iter().map(|x| x.to_string()).collect();
        let _ = writeln!(truth_text, "term {c} : {}", coords.join(" "));
    }
    let truth_path = out.with_file_name(format!(
        "{}.truth",
        out.file_name().map(|s| s.to_string_lossy()).unwrap_or_default()
    ));
    if let Err(e) = std::fs::write(&truth_path, &truth_text) {
        eprintln!("error: cannot write {}: {e}", truth_path.display());
        return ExitCode::from(1);
    }
    println!("wrote {} and {}", out.display(), truth_path.display());
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Decompose {
            path,
            method,
            field,
            seed,
            json,
        } => cmd_decompose(&path, method, field, seed, json),
        Cmd::RankBound {
            path,
            method,
            field,
        } => cmd_rank_bound(&path, method, field),
        Cmd::Info { n, d, r } => cmd_info(n, d, r),
        Cmd::Generate {
            n,
            d,
            r,
            seed,
            out,
        } => cmd_generate(n, d, r, seed, &out),
    }
}
