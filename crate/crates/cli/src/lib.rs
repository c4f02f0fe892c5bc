//! The `canform` command line.
//!
//! Exit codes: 0 for success or a "yes" answer, 1 for a "no" answer from
//! `similar` and `contra-equiv`, 2 for any error (with one line on stderr).

pub mod report;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use canform::{
    contragredient_canonical_with, factor_with, is_contra_equivalent_with, is_similar_with, jordan_canonical_with,
    parse_field, parse_matrix, rank_profile, ContraBlock, ContraPair, ContraReport, FactorOptions, Field, JordanForm,
    JordanReport, Matrix, Polynomial, RankProfile,
};
use clap::{Parser, Subcommand};
use serde::Serialize;

use report::{ContraEquivJson, ContraJson, FactorJson, JordanJson, MinpolyJson, SimilarJson};

#[derive(Debug, Parser)]
#[command(
    name = "canform",
    version,
    about = "Exact canonical forms of matrices and matrix pairs"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for the randomized splitting step of factorization over GF(p).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest polynomial degree factored over Q.
    #[arg(long, global = true, default_value_t = 12)]
    pub max_degree: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generalized Jordan form with its change of basis.
    Jordan { file: PathBuf },
    /// Minimal polynomial.
    Minpoly { file: PathBuf },
    /// Factor a polynomial literal such as "x^2 - 1".
    Factor {
        poly: String,
        /// q, gf7, gf:7 or "gf 7".
        #[arg(long, default_value = "q")]
        field: String,
    },
    /// Decide similarity of two square matrices.
    Similar { a: PathBuf, b: PathBuf },
    /// Canonical form of the pair (A, B), A m x n and B n x m.
    Contra { a: PathBuf, b: PathBuf },
    /// Decide whether (A, B) and (C, D) are contragrediently equivalent.
    ContraEquiv {
        a: PathBuf,
        b: PathBuf,
        c: PathBuf,
        d: PathBuf,
    },
}

#[derive(Debug)]
struct Failure(String);

impl From<canform::Error> for Failure {
    fn from(e: canform::Error) -> Self {
        Failure(e.to_string())
    }
}

enum Outcome {
    Done,
    Answer(bool),
}

/// Runs one invocation and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "{first}");
            return 2;
        }
    };
    match execute(&cli, out) {
        Ok(Outcome::Done) | Ok(Outcome::Answer(true)) => 0,
        Ok(Outcome::Answer(false)) => 1,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn read_matrix(path: &Path) -> Result<Matrix, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))?;
    parse_matrix(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn read_pair(a: &Path, b: &Path) -> Result<ContraPair, Failure> {
    Ok(ContraPair::new(read_matrix(a)?, read_matrix(b)?)?)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure(format!("cannot write output: {e}")))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, Failure> {
    let opts = FactorOptions {
        seed: cli.seed,
        max_rational_degree: cli.max_degree,
    };
    match &cli.command {
        Command::Jordan { file } => {
            let a = read_matrix(file)?;
            let r = jordan_canonical_with(&a, &opts)?;
            let text = if cli.json {
                to_json(&JordanJson::new(a.field(), &r))
            } else {
                render_jordan(a.field(), &r)
            };
            emit(out, &text)?;
            Ok(Outcome::Done)
        }
        Command::Minpoly { file } => {
            let a = read_matrix(file)?;
            let p = a.minimal_polynomial()?;
            let text = if cli.json {
                to_json(&MinpolyJson {
                    field: a.field().to_string(),
                    minimal_polynomial: report::coeffs(&p),
                    text: p.to_string(),
                })
            } else {
                format!("{p}\n")
            };
            emit(out, &text)?;
            Ok(Outcome::Done)
        }
        Command::Factor { poly, field } => {
            let field = parse_field(field)?;
            let p = Polynomial::parse(poly, field)?;
            let f = factor_with(&p, &opts)?;
            let text = if cli.json {
                to_json(&FactorJson::new(&p, &f))
            } else {
                let mut s = format!("field: {field}\nunit: {}\n", f.unit);
                for (q, k) in &f.factors {
                    let _ = writeln!(s, "({q})^{k}");
                }
                s
            };
            emit(out, &text)?;
            Ok(Outcome::Done)
        }
        Command::Similar { a, b } => {
            let (a, b) = (read_matrix(a)?, read_matrix(b)?);
            let similar = is_similar_with(&a, &b, &opts)?;
            let text = if cli.json {
                let fa = jordan_canonical_with(&a, &opts)?.form;
                let fb = jordan_canonical_with(&b, &opts)?.form;
                to_json(&SimilarJson::new(a.field(), similar, &fa, &fb))
            } else if similar {
                "similar\n".to_string()
            } else {
                "not similar\n".to_string()
            };
            emit(out, &text)?;
            Ok(Outcome::Answer(similar))
        }
        Command::Contra { a, b } => {
            let p = read_pair(a, b)?;
            let r = contragredient_canonical_with(&p, &opts)?;
            let profile = rank_profile(&p);
            let text = if cli.json {
                to_json(&ContraJson::new(p.field(), &r, &profile))
            } else {
                render_contra(p.field(), &r, &profile)
            };
            emit(out, &text)?;
            Ok(Outcome::Done)
        }
        Command::ContraEquiv { a, b, c, d } => {
            let p = read_pair(a, b)?;
            let q = read_pair(c, d)?;
            let equivalent = is_contra_equivalent_with(&p, &q, &opts)?;
            let text = if cli.json {
                let same_shape = (p.m(), p.n()) == (q.m(), q.n());
                let products_similar = same_shape && is_similar_with(&p.ab(), &q.ab(), &opts)?;
                to_json(&ContraEquivJson {
                    field: p.field().to_string(),
                    equivalent,
                    products_similar,
                    rank_profile_first: (&rank_profile(&p)).into(),
                    rank_profile_second: (&rank_profile(&q)).into(),
                })
            } else if equivalent {
                "equivalent\n".to_string()
            } else {
                "not equivalent\n".to_string()
            };
            emit(out, &text)?;
            Ok(Outcome::Answer(equivalent))
        }
    }
}

fn push_matrix(s: &mut String, title: &str, m: &Matrix) {
    let _ = writeln!(s, "{title}:");
    for row in m.to_rows_text() {
        let _ = writeln!(s, "  {row}");
    }
}

fn push_form(s: &mut String, indent: &str, form: &JordanForm) {
    for b in form.blocks() {
        let _ = writeln!(s, "{indent}({})^{}", b.prime, b.power);
    }
}

pub fn render_jordan(field: Field, r: &JordanReport) -> String {
    let mut s = format!("field: {field}\nblocks:\n");
    push_form(&mut s, "  ", &r.form);
    push_matrix(&mut s, "form", &r.form_matrix);
    push_matrix(&mut s, "transform", &r.transform);
    s
}

pub fn render_contra(field: Field, r: &ContraReport, profile: &RankProfile) -> String {
    let mut s = format!("field: {field}\nblocks:\n");
    for b in &r.blocks {
        let (rows, cols) = b.a_shape();
        let _ = writeln!(s, "  {} size {} (A block {rows}x{cols})", b.kind(), b.size());
        if let ContraBlock::Invertible(j) = b {
            push_form(&mut s, "    ", j);
        }
    }
    push_matrix(&mut s, "canonical A", &r.canonical_a);
    push_matrix(&mut s, "canonical B", &r.canonical_b);
    push_matrix(&mut s, "S", &r.s);
    push_matrix(&mut s, "T", &r.t);
    let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    let _ = writeln!(s, "rank profile (t = {}):", profile.t);
    let _ = writeln!(s, "  A, BA, ABA, ...: {}", join(&profile.a_chain));
    let _ = writeln!(s, "  B, AB, BAB, ...: {}", join(&profile.b_chain));
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("canform").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn factor_text_and_json() {
        let (code, out, _) = run_str(&["factor", "x^2 - 1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "field: q\nunit: 1\n(x - 1)^1\n(x + 1)^1\n");
        let (code, out, _) = run_str(&["factor", "x^2 + 1", "--field", "gf2", "--json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["factors"][0]["prime"], serde_json::json!(["1", "1"]));
        assert_eq!(v["factors"][0]["multiplicity"], 2);
    }

    #[test]
    fn usage_errors_exit_two_with_one_line() {
        let (code, _, err) = run_str(&["jordan"]);
        assert_eq!(code, 2);
        assert_eq!(err.lines().count(), 1);
        let (code, _, err) = run_str(&["factor", "x^2 +", "--field", "gf 4"]);
        assert_eq!(code, 2);
        assert!(err.starts_with("error: modulus 4"));
        let (code, _, err) = run_str(&["factor", "x^14 + 1", "--max-degree", "12"]);
        assert_eq!(code, 2);
        assert!(err.contains("cap 12"));
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("contra-equiv"));
    }
}
