//! Command-line front end: input parsing, dispatch, and rendering in
//! three formats. `table` is for people (unicode λ, optional wall-time
//! line); `csv` and `kv` are machine formats with "L" for the variable
//! and no timestamps, so identical invocations produce identical bytes.
//!
//! Exit codes: 0 success/all-match, 1 verification mismatch, 2 input
//! error, 3 budget refusal, 4 internal invariant violation.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Deserialize;

use crate::chromatic::{count_sequence_colorings, sequence_chromatic_polynomial};
use crate::complex::build_chain_complex;
use crate::defaults;
use crate::error::{Error, Result};
use crate::eulerian::{descent_class_value, symmetric_group};
use crate::graphs::{Graph, GraphSequence};
use crate::hodge::{hodge_table, HodgeTable};
use crate::verify::{
    scan_corpus, verify_corollary, verify_hanlon, verify_jonsson_wedge, verify_theorem,
    ReportDetail, ScanKind, ScanOptions, ScanReport, VerificationReport,
};
use crate::Limits;

#[derive(Parser)]
#[command(
    name = "colorhodge",
    version,
    about = "Coloring complexes of graph sequences: chain complexes, Hodge pieces, \
             chromatic polynomials, and exact verification of the identities between them"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Input document, e.g. {"n": 4, "graphs": [[[1,2]],[[3,4]]]}
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Vertex-count guard
    #[arg(long, global = true, default_value_t = defaults::MAX_N, value_name = "N")]
    max_n: usize,
    /// Idempotent degree guard
    #[arg(long, global = true, default_value_t = defaults::MAX_K, value_name = "K")]
    max_k: usize,
    /// Edge-count guard for acyclic-orientation enumeration
    #[arg(long, global = true, default_value_t = defaults::MAX_ORIENT_EDGES, value_name = "E")]
    max_orient_edges: usize,
    /// Operation guard for brute-force coloring counts (n·λ^n)
    #[arg(long, global = true, default_value_t = defaults::MAX_COLORING_OPS, value_name = "OPS")]
    max_coloring_ops: u64,
    /// Verify through both the chain and homology routes
    #[arg(long, global = true, action = ArgAction::Set, default_value_t = true, value_name = "BOOL")]
    both_routes: bool,
    /// Corpus sampling seed
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Suppress wall-time lines in table output
    #[arg(long, global = true)]
    quiet: bool,
}

impl GlobalOpts {
    fn limits(&self) -> Limits {
        Limits {
            max_n: self.max_n,
            max_k: self.max_k,
            max_orient_edges: self.max_orient_edges,
            max_coloring_ops: self.max_coloring_ops,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Kv,
}

#[derive(Subcommand)]
enum Command {
    /// Print the (sequence) chromatic polynomial
    Chromatic {
        /// Also brute-force count colorings at λ = 0..n+1 and compare
        #[arg(long)]
        check: bool,
    },
    /// Per-degree chain dimensions and boundary ranks
    Complex,
    /// Betti numbers of the coloring complex
    Homology,
    /// Hodge piece dimensions and Euler characteristics X^(j)
    Hodge,
    /// Verification checks with per-row match flags
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Replay the Euler-characteristic identity across a corpus
    Scan {
        /// Longest sequence to sample
        #[arg(long, default_value_t = 2)]
        max_m: usize,
        /// Sampled sequences per (n, m) cell
        #[arg(long, default_value_t = 8)]
        samples: usize,
        /// Stop after this many milliseconds and flag the run partial
        #[arg(long, value_name = "MS")]
        budget_ms: Option<u64>,
    },
    /// Print Eulerian idempotent coefficients grouped by descent class
    Idempotents { k: usize },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// X^(j) against the chromatic-coefficient prediction, both routes
    Theorem {
        /// JSON array of expected X^(j) values to compare against
        #[arg(long, value_name = "FILE")]
        expect: Option<PathBuf>,
    },
    /// Homology concentration and |coefficient| comparison (single graph)
    Hanlon,
    /// Wedge profile and acyclic-orientation count (single graph)
    Jonsson,
    /// Coefficient comparison for diagonally cycle-free sequences
    Corollary,
}

/// The accepted input document shape.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub n: usize,
    pub graphs: Vec<Vec<(u8, u8)>>,
}

impl InputDocument {
    pub fn into_sequence(self) -> Result<GraphSequence> {
        let mut graphs = Vec::with_capacity(self.graphs.len());
        for (i, edges) in self.graphs.iter().enumerate() {
            let g = Graph::new(self.n, edges).map_err(|e| match e {
                Error::Input(msg) => Error::input(format!("graph {}: {msg}", i + 1)),
                other => other,
            })?;
            graphs.push(g);
        }
        GraphSequence::new(graphs)
    }
}

/// Parse an input document into a validated graph sequence.
pub fn parse_input(text: &str) -> Result<GraphSequence> {
    let doc: InputDocument =
        serde_json::from_str(text).map_err(|e| Error::input(e.to_string()))?;
    doc.into_sequence()
}

fn load_sequence(opts: &GlobalOpts) -> Result<GraphSequence> {
    let path = opts
        .input
        .as_ref()
        .ok_or_else(|| Error::input("missing --input <FILE>"))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
    parse_input(&text).map_err(|e| match e {
        Error::Input(msg) => Error::input(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn guard_n(seq: &GraphSequence, limits: &Limits) -> Result<()> {
    if seq.n() > limits.max_n {
        return Err(Error::budget(format!(
            "n = {} exceeds the n ≤ {} guard",
            seq.n(),
            limits.max_n
        )));
    }
    Ok(())
}

fn single_graph(seq: &GraphSequence) -> Result<&Graph> {
    if seq.len() != 1 {
        return Err(Error::input(format!(
            "this check takes a single graph, got m = {}",
            seq.len()
        )));
    }
    Ok(&seq.graphs()[0])
}

/// Right-aligned columns with a two-space gutter.
fn render_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let push_row = |cells: Vec<String>, out: &mut String| {
        for (i, cell) in cells.iter().enumerate() {
            let pad = widths[i] - cell.chars().count();
            if i > 0 {
                out.push_str("  ");
            }
            for _ in 0..pad {
                out.push(' ');
            }
            out.push_str(cell);
        }
        out.push('\n');
    };
    push_row(headers.iter().map(|h| h.to_string()).collect(), &mut out);
    for row in rows {
        push_row(row.clone(), &mut out);
    }
    out
}

fn yn(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn input_line(seq: &GraphSequence) -> String {
    format!("input: {} (n = {}, m = {})\n", seq, seq.n(), seq.len())
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

/// The pinned machine schema for Hodge tables: one row per (degree,
/// piece) cell with piece ≤ degree + 2, zeros included.
pub fn hodge_csv(t: &HodgeTable) -> String {
    let mut s = String::from("kind,degree,piece,dimension\n");
    let emit = |kind: &str, dims: &[Vec<usize>], s: &mut String| {
        for (idx, row) in dims.iter().enumerate() {
            for j in 1..=idx + 1 {
                s.push_str(&format!("{kind},{},{},{}\n", idx as i64 - 1, j, row[j - 1]));
            }
        }
    };
    emit("chain", &t.chain_dims, &mut s);
    if let Some(hom) = &t.homology_dims {
        emit("homology", hom, &mut s);
    }
    s
}

/// The pinned machine schema for the Euler-characteristic table.
pub fn theorem_csv(rep: &VerificationReport) -> String {
    let mut s = String::from("j,euler_chain,euler_homology,expected,match\n");
    if let ReportDetail::Theorem { rows } = &rep.detail {
        for r in rows {
            s.push_str(&format!(
                "{},{},{},{},{}\n",
                r.j,
                r.x_chain,
                r.x_homology.map(|h| h.to_string()).unwrap_or_default(),
                r.rhs,
                r.matches
            ));
        }
    }
    s
}

/// The pinned machine schema for corpus scans.
pub fn scan_csv(rep: &ScanReport) -> String {
    let mut s = String::from("kind,n,m,graphs,all_match,euler,rhs\n");
    for row in &rep.rows {
        let kind = match row.kind {
            ScanKind::Single => "single",
            ScanKind::Sequence => "sequence",
        };
        s.push_str(&format!(
            "{kind},{},{},{},{},{},{}\n",
            row.n,
            row.m,
            row.graphs,
            row.all_match,
            join(row.euler.iter(), ";"),
            join(row.rhs.iter(), ";"),
        ));
    }
    if rep.partial {
        s.push_str("partial,,,,,,\n");
    }
    s
}

fn wall_line(out: &mut String, quiet: bool, start: Instant) {
    if !quiet {
        out.push_str(&format!("wall-time: {} ms\n", start.elapsed().as_millis()));
    }
}

fn cmd_chromatic(opts: &GlobalOpts, check: bool, start: Instant) -> Result<(String, i32)> {
    let seq = load_sequence(opts)?;
    let limits = opts.limits();
    guard_n(&seq, &limits)?;
    let chi = sequence_chromatic_polynomial(&seq);
    let n = seq.n();

    let mut checks: Vec<(u64, BigInt, u64, bool)> = Vec::new();
    let mut mismatch = false;
    if check {
        for lambda in 0..=(n as u64 + 1) {
            let evaluated = chi.evaluate(&BigInt::from(lambda));
            let brute = count_sequence_colorings(&seq, lambda, limits.max_coloring_ops)?;
            let ok = evaluated == BigInt::from(brute);
            mismatch |= !ok;
            checks.push((lambda, evaluated, brute, ok));
        }
    }

    let mut out = String::new();
    match opts.format {
        Format::Table => {
            out.push_str(&input_line(&seq));
            out.push_str(&format!("χ(λ) = {}\n", chi.format_with("λ")));
            if check {
                let rows: Vec<Vec<String>> = checks
                    .iter()
                    .map(|(l, ev, br, ok)| {
                        vec![l.to_string(), ev.to_string(), br.to_string(), yn(*ok)]
                    })
                    .collect();
                out.push_str(&render_table(&["λ", "χ(λ)", "brute", "match"], &rows));
            }
            wall_line(&mut out, opts.quiet, start);
        }
        Format::Csv => {
            if check {
                out.push_str("lambda,evaluated,brute,match\n");
                for (l, ev, br, ok) in &checks {
                    out.push_str(&format!("{l},{ev},{br},{ok}\n"));
                }
            } else {
                out.push_str("degree,coefficient\n");
                for (d, c) in chi.coefficients_ascending().iter().enumerate() {
                    out.push_str(&format!("{d},{c}\n"));
                }
            }
        }
        Format::Kv => {
            out.push_str(&format!("input={seq}\nn={n}\nm={}\n", seq.len()));
            out.push_str(&format!("polynomial={}\n", chi.format_with("L")));
            for (d, c) in chi.coefficients_ascending().iter().enumerate() {
                out.push_str(&format!("coefficient.{d}={c}\n"));
            }
            for (l, ev, br, ok) in &checks {
                out.push_str(&format!("check.{l}.evaluated={ev}\n"));
                out.push_str(&format!("check.{l}.brute={br}\n"));
                out.push_str(&format!("check.{l}.match={ok}\n"));
            }
        }
    }
    Ok((out, i32::from(mismatch)))
}

fn cmd_complex(opts: &GlobalOpts, start: Instant) -> Result<(String, i32)> {
    let seq = load_sequence(opts)?;
    let limits = opts.limits();
    guard_n(&seq, &limits)?;
    let cc = build_chain_complex(&seq, limits.max_n)?;
    let dims = cc.dims();
    let ranks: Vec<usize> = (0..cc.degree_slots()).map(|i| cc.boundary(i).rank()).collect();
    let euler = crate::hodge::alternating_sum(dims.iter().copied());

    let mut out = String::new();
    match opts.format {
        Format::Table => {
            out.push_str(&input_line(&seq));
            let rows: Vec<Vec<String>> = (0..dims.len())
                .map(|i| {
                    vec![
                        cc.degree_of(i).to_string(),
                        dims[i].to_string(),
                        ranks[i].to_string(),
                    ]
                })
                .collect();
            out.push_str(&render_table(&["degree", "dimension", "rank ∂"], &rows));
            out.push_str(&format!("reduced Euler characteristic: {euler}\n"));
            wall_line(&mut out, opts.quiet, start);
        }
        Format::Csv => {
            out.push_str("degree,dimension,boundary_rank\n");
            for i in 0..dims.len() {
                out.push_str(&format!("{},{},{}\n", cc.degree_of(i), dims[i], ranks[i]));
            }
        }
        Format::Kv => {
            out.push_str(&format!("input={seq}\nn={}\nm={}\n", seq.n(), seq.len()));
            for i in 0..dims.len() {
                out.push_str(&format!("dim.{}={}\n", cc.degree_of(i), dims[i]));
                out.push_str(&format!("rank.{}={}\n", cc.degree_of(i), ranks[i]));
            }
            out.push_str(&format!("euler={euler}\n"));
        }
    }
    Ok((out, 0))
}

fn cmd_homology(opts: &GlobalOpts, start: Instant) -> Result<(String, i32)> {
    let seq = load_sequence(opts)?;
    let limits = opts.limits();
    guard_n(&seq, &limits)?;
    let cc = build_chain_complex(&seq, limits.max_n)?;
    let betti = cc.betti_numbers();

    let mut out = String::new();
    match opts.format {
        Format::Table => {
            out.push_str(&input_line(&seq));
            let rows: Vec<Vec<String>> = betti
                .iter()
                .enumerate()
                .map(|(i, b)| vec![cc.degree_of(i).to_string(), b.to_string()])
                .collect();
            out.push_str(&render_table(&["degree", "betti"], &rows));
            wall_line(&mut out, opts.quiet, start);
        }
        Format::Csv => {
            out.push_str("degree,betti\n");
            for (i, b) in betti.iter().enumerate() {
                out.push_str(&format!("{},{b}\n", cc.degree_of(i)));
            }
        }
        Format::Kv => {
            out.push_str(&format!("input={seq}\nn={}\nm={}\n", seq.n(), seq.len()));
            for (i, b) in betti.iter().enumerate() {
                out.push_str(&format!("betti.{}={b}\n", cc.degree_of(i)));
            }
        }
    }
    Ok((out, 0))
}

fn hodge_matrix_table(label: &str, n: usize, dims: &[Vec<usize>], degree_of: impl Fn(usize) -> i64) -> String {
    let mut headers = vec!["degree".to_string()];
    headers.extend((1..=n).map(|j| format!("j={j}")));
    let header_refs: Vec<&str> = headers.iter().map(|h| h.as_str()).collect();
    let rows: Vec<Vec<String>> = dims
        .iter()
        .enumerate()
        .map(|(idx, row)| {
            let mut cells = vec![degree_of(idx).to_string()];
            cells.extend(row.iter().map(|d| d.to_string()));
            cells
        })
        .collect();
    format!("{label}:\n{}", render_table(&header_refs, &rows))
}

fn cmd_hodge(opts: &GlobalOpts, start: Instant) -> Result<(String, i32)> {
    let seq = load_sequence(opts)?;
    let limits = opts.limits();
    guard_n(&seq, &limits)?;
    let cc = build_chain_complex(&seq, limits.max_n)?;
    let table = hodge_table(&cc, opts.both_routes)?;
    let n = table.n;

    let mut out = String::new();
    match opts.format {
        Format::Table => {
            out.push_str(&input_line(&seq));
            out.push_str(&hodge_matrix_table("chain dimensions", n, &table.chain_dims, |i| {
                cc.degree_of(i)
            }));
            if let Some(hom) = &table.homology_dims {
                out.push_str(&hodge_matrix_table("homology dimensions", n, hom, |i| {
                    cc.degree_of(i)
                }));
            }
            out.push_str(&format!("X^(j) for j = 1..{n}: {}\n", join(table.euler.iter(), " ")));
            wall_line(&mut out, opts.quiet, start);
        }
        Format::Csv => out.push_str(&hodge_csv(&table)),
        Format::Kv => {
            out.push_str(&format!("input={seq}\nn={n}\nm={}\n", seq.len()));
            for (idx, row) in table.chain_dims.iter().enumerate() {
                for j in 1..=idx + 1 {
                    out.push_str(&format!("chain.{}.{j}={}\n", cc.degree_of(idx), row[j - 1]));
                }
            }
            if let Some(hom) = &table.homology_dims {
                for (idx, row) in hom.iter().enumerate() {
                    for j in 1..=idx + 1 {
                        out.push_str(&format!(
                            "homology.{}.{j}={}\n",
                            cc.degree_of(idx),
                            row[j - 1]
                        ));
                    }
                }
            }
            for (j0, x) in table.euler.iter().enumerate() {
                out.push_str(&format!("euler.{}={x}\n", j0 + 1));
            }
        }
    }
    Ok((out, 0))
}

fn load_expect(path: &PathBuf, n: usize) -> Result<Vec<i64>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
    let values: Vec<i64> = serde_json::from_str(&text)
        .map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
    if values.len() != n {
        return Err(Error::input(format!(
            "{}: expected {n} values (one per j), got {}",
            path.display(),
            values.len()
        )));
    }
    Ok(values)
}

fn cmd_verify_theorem(
    opts: &GlobalOpts,
    expect: Option<&PathBuf>,
    start: Instant,
) -> Result<(String, i32)> {
    let seq = load_sequence(opts)?;
    let limits = opts.limits();
    guard_n(&seq, &limits)?;
    let rep = verify_theorem(&seq, &limits, opts.both_routes)?;
    let ReportDetail::Theorem { rows } = &rep.detail else {
        return Err(Error::invariant("theorem report carries the wrong detail"));
    };

    let mut fixture_failures: Vec<(usize, i64, i64)> = Vec::new();
    if let Some(path) = expect {
        for (row, want) in rows.iter().zip(load_expect(path, rep.n)?) {
            if row.x_chain != want {
                fixture_failures.push((row.j, want, row.x_chain));
            }
        }
    }
    let ok = rep.all_match && fixture_failures.is_empty();

    let mut out = String::new();
    match opts.format {
        Format::Table => {
            out.push_str(&input_line(&seq));
            let table_rows: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.j.to_string(),
                        r.x_chain.to_string(),
                        r.x_homology.map(|h| h.to_string()).unwrap_or_else(|| "-".into()),
                        r.rhs.to_string(),
                        yn(r.matches),
                    ]
                })
                .collect();
            out.push_str(&render_table(
                &["j", "X (chains)", "X (homology)", "expected", "match"],
                &table_rows,
            ));
            if let Some(degrees) = &rep.nonzero_homology_degrees {
                out.push_str(&format!(
                    "nonzero homology degrees: {}\n",
                    if degrees.is_empty() { "none".to_string() } else { join(degrees.iter(), " ") }
                ));
            }
            for (j, want, got) in &fixture_failures {
                out.push_str(&format!(
                    "expected-value fixture mismatch at j = {j}: fixture {want}, computed {got}\n"
                ));
            }
            out.push_str(&format!("all match: {}\n", yn(ok)));
            wall_line(&mut out, opts.quiet, start);
        }
        Format::Csv => out.push_str(&theorem_csv(&rep)),
        Format::Kv => {
            out.push_str(&format!("input={seq}\nn={}\nm={}\n", rep.n, rep.m));
            for r in rows {
                out.push_str(&format!("j.{}.chain={}\n", r.j, r.x_chain));
                if let Some(h) = r.x_homology {
                    out.push_str(&format!("j.{}.homology={h}\n", r.j));
                }
                out.push_str(&format!("j.{}.expected={}\n", r.j, r.rhs));
                out.push_str(&format!("j.{}.match={}\n", r.j, r.matches));
            }
            if let Some(degrees) = &rep.nonzero_homology_degrees {
                out.push_str(&format!("nonzero_degrees={}\n", join(degrees.iter(), ";")));
            }
            out.push_str(&format!("fixture_match={}\n", fixture_failures.is_empty()));
            out.push_str(&format!("all_match={ok}\n"));
        }
    }
    Ok((out, i32::from(!ok)))
}

fn cmd_verify_hanlon(opts: &GlobalOpts, start: Instant) -> Result<(String, i32)> {
    let seq = load_sequence(opts)?;
    let limits = opts.limits();
    guard_n(&seq, &limits)?;
    let rep = verify_hanlon(single_graph(&seq)?, &limits)?;
    let ReportDetail::Hanlon { rows, stray } = &rep.detail else {
        return Err(Error::invariant("hanlon report carries the wrong detail"));
    };

    let mut out = String::new();
    match opts.format {
        Format::Table => {
            out.push_str(&input_line(&seq));
            out.push_str(&format!("comparison at degree {} (n − 3):\n", rep.n as i64 - 3));
            let table_rows: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.j.to_string(),
                        r.dimension.to_string(),
                        r.expected.to_string(),
                        yn(r.matches),
                    ]
                })
                .collect();
            out.push_str(&render_table(
                &["j", "dim H^(j)", "|coefficient|", "match"],
                &table_rows,
            ));
            if stray.is_empty() {
                out.push_str("stray homology: none\n");
            } else {
                for s in stray {
                    out.push_str(&format!(
                        "stray homology: degree {} piece {} dimension {}\n",
                        s.degree, s.piece, s.dimension
                    ));
                }
            }
            out.push_str(&format!("all match: {}\n", yn(rep.all_match)));
            wall_line(&mut out, opts.quiet, start);
        }
        Format::Csv => {
            out.push_str("kind,degree,piece,dimension,expected,match\n");
            for r in rows {
                out.push_str(&format!(
                    "piece,{},{},{},{},{}\n",
                    rep.n as i64 - 3,
                    r.j,
                    r.dimension,
                    r.expected,
                    r.matches
                ));
            }
            for s in stray {
                out.push_str(&format!(
                    "stray,{},{},{},,false\n",
                    s.degree, s.piece, s.dimension
                ));
            }
        }
        Format::Kv => {
            out.push_str(&format!("input={seq}\nn={}\nm=1\n", rep.n));
            out.push_str(&format!("degree={}\n", rep.n as i64 - 3));
            for r in rows {
                out.push_str(&format!("piece.{}.dimension={}\n", r.j, r.dimension));
                out.push_str(&format!("piece.{}.expected={}\n", r.j, r.expected));
                out.push_str(&format!("piece.{}.match={}\n", r.j, r.matches));
            }
            out.push_str(&format!("stray.count={}\n", stray.len()));
            for (i, s) in stray.iter().enumerate() {
                out.push_str(&format!("stray.{i}.degree={}\n", s.degree));
                out.push_str(&format!("stray.{i}.piece={}\n", s.piece));
                out.push_str(&format!("stray.{i}.dimension={}\n", s.dimension));
            }
            out.push_str(&format!("all_match={}\n", rep.all_match));
        }
    }
    Ok((out, i32::from(!rep.all_match)))
}

fn cmd_verify_jonsson(opts: &GlobalOpts, start: Instant) -> Result<(String, i32)> {
    let seq = load_sequence(opts)?;
    let limits = opts.limits();
    guard_n(&seq, &limits)?;
    let rep = verify_jonsson_wedge(single_graph(&seq)?, &limits)?;
    let ReportDetail::Jonsson(w) = &rep.detail else {
        return Err(Error::invariant("jonsson report carries the wrong detail"));
    };

    let mut out = String::new();
    match opts.format {
        Format::Table => {
            out.push_str(&input_line(&seq));
            out.push_str(&format!("applicable: {}\n", yn(w.applicable)));
            if w.applicable {
                out.push_str(&format!("acyclic orientations: {}\n", w.acyclic_orientations));
                out.push_str(&format!(
                    "(−1)^n χ(−1) = {} (match: {})\n",
                    w.stanley_value,
                    yn(w.stanley_matches)
                ));
                out.push_str(&format!("betti: {}\n", join(w.betti.iter(), " ")));
                out.push_str(&format!(
                    "expected: {} concentrated in degree {}\n",
                    w.acyclic_orientations - 1,
                    w.expected_degree
                ));
                out.push_str(&format!("profile match: {}\n", yn(w.profile_matches)));
            }
            out.push_str(&format!("all match: {}\n", yn(rep.all_match)));
            wall_line(&mut out, opts.quiet, start);
        }
        Format::Csv => {
            out.push_str(
                "applicable,expected_degree,acyclic_orientations,stanley_value,stanley_match,profile_match,betti\n",
            );
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                w.applicable,
                w.expected_degree,
                w.acyclic_orientations,
                w.stanley_value,
                w.stanley_matches,
                w.profile_matches,
                join(w.betti.iter(), ";"),
            ));
        }
        Format::Kv => {
            out.push_str(&format!("input={seq}\nn={}\nm=1\n", rep.n));
            out.push_str(&format!("applicable={}\n", w.applicable));
            out.push_str(&format!("expected_degree={}\n", w.expected_degree));
            out.push_str(&format!("acyclic_orientations={}\n", w.acyclic_orientations));
            out.push_str(&format!("stanley_value={}\n", w.stanley_value));
            out.push_str(&format!("stanley_match={}\n", w.stanley_matches));
            out.push_str(&format!("profile_match={}\n", w.profile_matches));
            out.push_str(&format!("betti={}\n", join(w.betti.iter(), ";")));
            out.push_str(&format!("all_match={}\n", rep.all_match));
        }
    }
    Ok((out, i32::from(!rep.all_match)))
}

fn cmd_verify_corollary(opts: &GlobalOpts, start: Instant) -> Result<(String, i32)> {
    let seq = load_sequence(opts)?;
    let limits = opts.limits();
    guard_n(&seq, &limits)?;
    let rep = verify_corollary(&seq, &limits)?;
    let ReportDetail::Corollary(c) = &rep.detail else {
        return Err(Error::invariant("corollary report carries the wrong detail"));
    };

    let piece_table = |rows: &[crate::verify::PieceRow]| -> Vec<Vec<String>> {
        rows.iter()
            .map(|r| {
                vec![
                    r.j.to_string(),
                    r.dimension.to_string(),
                    r.expected.to_string(),
                    yn(r.matches),
                ]
            })
            .collect()
    };

    let mut out = String::new();
    match opts.format {
        Format::Table => {
            out.push_str(&input_line(&seq));
            out.push_str("diagonally cycle-free: yes\n");
            let degrees = rep.nonzero_homology_degrees.as_deref().unwrap_or(&[]);
            out.push_str(&format!(
                "nonzero homology degrees: {} (concentrated: {})\n",
                join(degrees.iter(), " "),
                yn(c.concentrated)
            ));
            out.push_str(&format!(
                "top degree: {}, literal degree (n − 3): {}, equal: {}\n",
                c.top_degree,
                c.literal_degree,
                yn(c.degrees_equal)
            ));
            out.push_str(&format!("at top degree {}:\n", c.top_degree));
            out.push_str(&render_table(
                &["j", "dim H^(j)", "|coefficient|", "match"],
                &piece_table(&c.rows_at_top),
            ));
            if !c.degrees_equal {
                out.push_str(&format!("at literal degree {}:\n", c.literal_degree));
                out.push_str(&render_table(
                    &["j", "dim H^(j)", "|coefficient|", "match"],
                    &piece_table(&c.rows_at_literal),
                ));
            }
            out.push_str(&format!(
                "all match (top-degree reading): {}\n",
                yn(rep.all_match)
            ));
            wall_line(&mut out, opts.quiet, start);
        }
        Format::Csv => {
            out.push_str("reading,degree,j,dimension,expected,match\n");
            for r in &c.rows_at_top {
                out.push_str(&format!(
                    "top,{},{},{},{},{}\n",
                    c.top_degree, r.j, r.dimension, r.expected, r.matches
                ));
            }
            for r in &c.rows_at_literal {
                out.push_str(&format!(
                    "literal,{},{},{},{},{}\n",
                    c.literal_degree, r.j, r.dimension, r.expected, r.matches
                ));
            }
        }
        Format::Kv => {
            out.push_str(&format!("input={seq}\nn={}\nm={}\n", rep.n, rep.m));
            let degrees = rep.nonzero_homology_degrees.as_deref().unwrap_or(&[]);
            out.push_str(&format!("nonzero_degrees={}\n", join(degrees.iter(), ";")));
            out.push_str(&format!("concentrated={}\n", c.concentrated));
            out.push_str(&format!("top_degree={}\n", c.top_degree));
            out.push_str(&format!("literal_degree={}\n", c.literal_degree));
            out.push_str(&format!("degrees_equal={}\n", c.degrees_equal));
            for r in &c.rows_at_top {
                out.push_str(&format!("top.{}.dimension={}\n", r.j, r.dimension));
                out.push_str(&format!("top.{}.expected={}\n", r.j, r.expected));
                out.push_str(&format!("top.{}.match={}\n", r.j, r.matches));
            }
            for r in &c.rows_at_literal {
                out.push_str(&format!("literal.{}.dimension={}\n", r.j, r.dimension));
                out.push_str(&format!("literal.{}.expected={}\n", r.j, r.expected));
                out.push_str(&format!("literal.{}.match={}\n", r.j, r.matches));
            }
            out.push_str(&format!("all_match={}\n", rep.all_match));
        }
    }
    Ok((out, i32::from(!rep.all_match)))
}

fn cmd_scan(
    opts: &GlobalOpts,
    max_m: usize,
    samples: usize,
    budget_ms: Option<u64>,
    start: Instant,
) -> Result<(String, i32)> {
    let limits = opts.limits();
    let scan_opts = ScanOptions {
        max_n: opts.max_n,
        max_m,
        samples_per_cell: samples,
        seed: opts.seed,
        budget_ms,
        both_routes: opts.both_routes,
    };
    let rep = scan_corpus(&scan_opts, &limits)?;

    let mut out = String::new();
    match opts.format {
        Format::Table => {
            let rows: Vec<Vec<String>> = rep
                .rows
                .iter()
                .map(|r| {
                    vec![
                        match r.kind {
                            ScanKind::Single => "single".to_string(),
                            ScanKind::Sequence => "sequence".to_string(),
                        },
                        r.n.to_string(),
                        r.m.to_string(),
                        r.graphs.clone(),
                        yn(r.all_match),
                        join(r.euler.iter(), " "),
                    ]
                })
                .collect();
            out.push_str(&render_table(
                &["kind", "n", "m", "graphs", "match", "X^(j)"],
                &rows,
            ));
            out.push_str(&format!(
                "rows: {}, mismatches: {}, partial: {}\n",
                rep.rows.len(),
                rep.mismatches,
                yn(rep.partial)
            ));
            wall_line(&mut out, opts.quiet, start);
        }
        Format::Csv => out.push_str(&scan_csv(&rep)),
        Format::Kv => {
            for (i, r) in rep.rows.iter().enumerate() {
                let kind = match r.kind {
                    ScanKind::Single => "single",
                    ScanKind::Sequence => "sequence",
                };
                out.push_str(&format!("row.{i}.kind={kind}\n"));
                out.push_str(&format!("row.{i}.n={}\n", r.n));
                out.push_str(&format!("row.{i}.m={}\n", r.m));
                out.push_str(&format!("row.{i}.graphs={}\n", r.graphs));
                out.push_str(&format!("row.{i}.match={}\n", r.all_match));
                out.push_str(&format!("row.{i}.euler={}\n", join(r.euler.iter(), ";")));
                out.push_str(&format!("row.{i}.expected={}\n", join(r.rhs.iter(), ";")));
            }
            out.push_str(&format!("total={}\n", rep.rows.len()));
            out.push_str(&format!("mismatches={}\n", rep.mismatches));
            out.push_str(&format!("partial={}\n", rep.partial));
        }
    }
    let code = if rep.mismatches > 0 {
        1
    } else if rep.partial {
        3
    } else {
        0
    };
    Ok((out, code))
}

fn cmd_idempotents(opts: &GlobalOpts, k: usize, start: Instant) -> Result<(String, i32)> {
    if k < 1 {
        return Err(Error::input("k must be at least 1"));
    }
    if k > opts.max_k {
        return Err(Error::budget(format!(
            "k = {k} exceeds the k ≤ {} guard",
            opts.max_k
        )));
    }
    let mut class_sizes = vec![0usize; k];
    for p in symmetric_group(k) {
        class_sizes[p.descent_count()] += 1;
    }

    let mut out = String::new();
    match opts.format {
        Format::Table => {
            out.push_str(&format!(
                "Eulerian idempotent coefficients for k = {k}\n\
                 (the coefficient of a permutation with d descents is its sign times the value)\n"
            ));
            let mut rows = Vec::new();
            for j in 1..=k {
                for d in 0..k {
                    rows.push(vec![
                        j.to_string(),
                        d.to_string(),
                        class_sizes[d].to_string(),
                        descent_class_value(k, d, j).to_string(),
                    ]);
                }
            }
            out.push_str(&render_table(&["j", "descents", "class size", "value"], &rows));
            wall_line(&mut out, opts.quiet, start);
        }
        Format::Csv => {
            out.push_str("j,descents,class_size,value\n");
            for j in 1..=k {
                for d in 0..k {
                    out.push_str(&format!(
                        "{j},{d},{},{}\n",
                        class_sizes[d],
                        descent_class_value(k, d, j)
                    ));
                }
            }
        }
        Format::Kv => {
            out.push_str(&format!("k={k}\n"));
            for d in 0..k {
                out.push_str(&format!("class_size.{d}={}\n", class_sizes[d]));
            }
            for j in 1..=k {
                for d in 0..k {
                    out.push_str(&format!("value.{j}.{d}={}\n", descent_class_value(k, d, j)));
                }
            }
        }
    }
    Ok((out, 0))
}

fn dispatch(cli: &Cli, start: Instant) -> Result<(String, i32)> {
    match &cli.command {
        Command::Chromatic { check } => cmd_chromatic(&cli.global, *check, start),
        Command::Complex => cmd_complex(&cli.global, start),
        Command::Homology => cmd_homology(&cli.global, start),
        Command::Hodge => cmd_hodge(&cli.global, start),
        Command::Verify(v) => match v {
            VerifyCmd::Theorem { expect } => {
                cmd_verify_theorem(&cli.global, expect.as_ref(), start)
            }
            VerifyCmd::Hanlon => cmd_verify_hanlon(&cli.global, start),
            VerifyCmd::Jonsson => cmd_verify_jonsson(&cli.global, start),
            VerifyCmd::Corollary => cmd_verify_corollary(&cli.global, start),
        },
        Command::Scan {
            max_m,
            samples,
            budget_ms,
        } => cmd_scan(&cli.global, *max_m, *samples, *budget_ms, start),
        Command::Idempotents { k } => cmd_idempotents(&cli.global, *k, start),
    }
}

/// Parse arguments (including argv[0]), run, print, and return the exit
/// code: 0 success, 1 mismatch, 2 input error, 3 budget, 4 invariant.
pub fn run(args: impl IntoIterator<Item = OsString>) -> i32 {
    let start = Instant::now();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli, start) {
        Ok((out, code)) => {
            print!("{out}");
            code
        }
        Err(e) => {
            eprintln!("{e}");
            match e {
                Error::Input(_) => 2,
                Error::Budget(_) => 3,
                Error::Invariant(_) => 4,
            }
        }
    }
}
