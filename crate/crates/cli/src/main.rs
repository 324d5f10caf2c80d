//! `superspherical`: command-line front end.

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use superspherical::algebra::{construct, root_datum, Family, LieSuperalgebra, Positivity};
use superspherical::functions::{lattice_coords, FunctionModel, DEFAULT_DEGREE};
use superspherical::gl11::{to_dot, verify_socle_and_block};
use superspherical::hyperborel::{distinguished, extend_to_hyperborels, verify_hyperborel, Hyperborel};
use superspherical::orbit::{cross_validate, linear_sphericity, DEFAULT_SEED};
use superspherical::rep::{highest_weight_spaces, pi_shift, standard_rep, sym2, with_scalars, Representation};
use superspherical::symmetric::{
    iwasawa_test, iwasawa_to_hyperborel, pair_sphericity, standard_involution, swap_involution, InvolutionKind,
    IwasawaStatus, SymmetricPair,
};
use superspherical::table::{
    evaluate_pair_rows, evaluate_rep_rows, parse_pair_rows, parse_rep_rows, spherical_rep_rows, symmetric_pair_rows,
};

const EXIT_MISMATCH: u8 = 2;
const EXIT_USAGE: u8 = 64;
const OUT_DIR_VAR: &str = "SUPERSPHERICAL_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "superspherical", version, about = "Exact sphericity computations for Lie superalgebras")]
struct Cli {
    #[command(flatten)]
    config: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
struct Global {
    /// Degree bound for function-side computations.
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE)]
    degree: usize,
    /// Seed for the randomized rank fast path.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Positivity functional on frame weights, comma separated.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    positivity: Option<Vec<i64>>,
    /// Output file; relative paths go under $SUPERSPHERICAL_OUT_DIR when set. Default: stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format (json, csv, svg, dot); each subcommand accepts a subset.
    #[arg(long, global = true)]
    format: Option<Format>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
    Svg,
    Dot,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Enumerate the hyperborels over a positive system.
    Hyperborels(AlgebraArgs),
    /// Dump a representation, optionally with its highest weight vectors.
    Rep(RepArgs),
    /// Open-orbit sphericity test for a linear action.
    Spherical(SphericalArgs),
    /// Weight monoid of C[V] up to the degree bound.
    Monoid(MonoidArgs),
    /// Monoid figures as lattice plots.
    Figure(FigureArgs),
    /// Iwasawa test for a symmetric pair.
    Iwasawa(IwasawaArgs),
    /// Recompute an expectation table.
    Table(TableArgs),
    /// Socle filtration and arrow diagram of the principal block of C[GL(1|1)].
    Gl11(Gl11Args),
}

#[derive(Args, Debug, Clone, Serialize)]
struct AlgebraArgs {
    /// gl, sl, osp, p or q.
    #[arg(long)]
    algebra: String,
    #[arg(long, default_value_t = 0)]
    m: usize,
    #[arg(long)]
    n: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
struct RepArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    /// standard, pi-standard, S2 or pi-S2.
    #[arg(long, default_value = "standard")]
    rep: String,
    /// Add a gl(1) acting by scalars.
    #[arg(long)]
    scalars: bool,
    /// List the highest weight vectors for each hyperborel.
    #[arg(long)]
    show_hw: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
struct SphericalArgs {
    #[command(flatten)]
    rep: RepArgs,
    /// Report the rank certificate of every hyperborel.
    #[arg(long)]
    all_hyperborels: bool,
    /// Also run the function-side test at the degree bound and compare.
    #[arg(long)]
    cross_check: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Borel {
    Upper,
    Lower,
}

#[derive(Args, Debug, Clone, Serialize)]
struct MonoidArgs {
    #[command(flatten)]
    rep: RepArgs,
    /// Distinguished hyperborel of the positivity (upper) or of its negative (lower).
    #[arg(long, value_enum, default_value_t = Borel::Upper)]
    borel: Borel,
}

#[derive(Args, Debug, Clone, Serialize)]
struct FigureArgs {
    /// Only gl12-s2: GL(1|2) acting on S^2 C^{1|2}.
    #[arg(long, default_value = "gl12-s2")]
    example: String,
    #[arg(long, value_enum, default_value_t = Borel::Upper)]
    borel: Borel,
}

#[derive(Args, Debug, Clone, Serialize)]
struct IwasawaArgs {
    /// grading, diagonal, gl-block, gl-osp, gl-p, gl-q, osp-block, osp-gl, p-block, p-gl.
    #[arg(long)]
    pair: String,
    /// Family, for `grading` and `diagonal`.
    #[arg(long)]
    algebra: Option<String>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    r: usize,
    #[arg(long, default_value_t = 0)]
    s: usize,
    /// Also run the homogeneous sphericity test.
    #[arg(long)]
    spherical: bool,
    /// Construct a hyperborel b with b + k = g when the decomposition exists.
    #[arg(long)]
    hyperborel: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
struct TableArgs {
    #[arg(value_enum)]
    table: TableName,
    /// Largest row size to evaluate.
    #[arg(long, alias = "max-rank", default_value_t = 3)]
    max_size: usize,
    /// Expectation CSV to compare against instead of the shipped one (same header).
    #[arg(long)]
    expected: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum TableName {
    SphericalReps,
    SymmetricPairs,
}

#[derive(Args, Debug, Clone, Serialize)]
struct Gl11Args {
    /// Laurent exponents range over [-band, band].
    #[arg(long, default_value_t = 2)]
    band: i64,
    /// Write the arrow diagram as Graphviz DOT to this path.
    #[arg(long)]
    emit_diagram: Option<PathBuf>,
}

/// Errors that are the caller's fault: reported with exit code 64.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(Usage(msg.into()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                eprintln!("run `superspherical --help` for usage");
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

fn config_value(cli: &Cli) -> Value {
    json!({
        "command": cli.command,
        "degree": cli.config.degree,
        "seed": cli.config.seed,
        "positivity": cli.config.positivity,
        "out": cli.config.out,
        "format": cli.config.format,
    })
}

fn resolve(path: &PathBuf) -> PathBuf {
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
        _ => path.clone(),
    }
}

fn emit_to(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => {
            let p = resolve(p);
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            }
            std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json(cli: &Cli, result: Value) -> Result<()> {
    let doc = json!({ "config": config_value(cli), "result": result });
    emit_to(cli.config.out.as_ref(), &(serde_json::to_string_pretty(&doc)? + "\n"))
}

/// CSV with the config as a leading comment line.
fn emit_csv(cli: &Cli, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let body = String::from_utf8(w.into_inner().map_err(|e| anyhow!("{e}"))?)?;
    let text = format!("# config: {}\n{body}", serde_json::to_string(&config_value(cli))?);
    emit_to(cli.config.out.as_ref(), &text)
}

fn format_of(cli: &Cli, allowed: &[Format]) -> Result<Format> {
    let f = cli.config.format.unwrap_or(allowed[0]);
    if !allowed.contains(&f) {
        return Err(usage(format!("format {f:?} is not supported here; use one of {allowed:?}")));
    }
    Ok(f)
}

fn family(s: &str) -> Result<Family> {
    s.parse::<Family>().map_err(|e| usage(e.to_string()))
}

fn algebra(a: &AlgebraArgs) -> Result<LieSuperalgebra> {
    Ok(construct(family(&a.algebra)?, a.m, a.n)?)
}

fn positivity(cli: &Cli, g: &LieSuperalgebra) -> Result<Positivity> {
    let Some(f) = &cli.config.positivity else { return Ok(Positivity::default_for(g)) };
    if f.len() != g.frame_labels.len() {
        return Err(usage(format!(
            "positivity needs {} values (frame {:?}), got {}",
            g.frame_labels.len(),
            g.frame_labels,
            f.len()
        )));
    }
    let p = Positivity { functional: f.clone() };
    if !p.is_generic(g) {
        return Err(usage("positivity vanishes on a root"));
    }
    Ok(p)
}

fn representation(r: &RepArgs) -> Result<(LieSuperalgebra, Representation)> {
    let g = algebra(&r.algebra)?;
    let v0 = standard_rep(&g)?;
    let v = match r.rep.to_ascii_lowercase().as_str() {
        "standard" => v0,
        "pi-standard" => pi_shift(&v0),
        "s2" | "sym2" => sym2(&g, &v0),
        "pi-s2" | "pi-sym2" => pi_shift(&sym2(&g, &v0)),
        other => return Err(usage(format!("unknown representation {other:?}"))),
    };
    Ok(if r.scalars { with_scalars(&g, &v) } else { (g, v) })
}

fn hyperborels(cli: &Cli, g: &LieSuperalgebra) -> Result<Vec<Hyperborel>> {
    Ok(extend_to_hyperborels(g, &root_datum(g, positivity(cli, g)?)))
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Hyperborels(a) => {
            format_of(cli, &[Format::Json])?;
            let g = algebra(a)?;
            let out: Vec<Value> = hyperborels(cli, &g)?
                .iter()
                .map(|b| json!({ "hyperborel": b.to_doc(&g), "axioms_ok": verify_hyperborel(&g, b).ok }))
                .collect();
            emit_json(cli, json!({ "algebra": g.name, "sdim": g.sdim(), "hyperborels": out }))?;
        }
        Command::Rep(r) => {
            format_of(cli, &[Format::Json])?;
            let (g, v) = representation(r)?;
            let mut res = json!({ "algebra": g.name, "sdim": v.sdim(), "weights": v.weights(&g)?, "rep": v.to_doc() });
            if r.show_hw {
                let mut hw = Vec::new();
                for b in hyperborels(cli, &g)? {
                    hw.push(json!({ "hyperborel": b.to_doc(&g), "highest_weight": highest_weight_spaces(&g, &v, &b)? }));
                }
                res["highest_weight"] = Value::Array(hw);
            }
            emit_json(cli, res)?;
        }
        Command::Spherical(s) => {
            format_of(cli, &[Format::Json])?;
            let (g, v) = representation(&s.rep)?;
            let hs = hyperborels(cli, &g)?;
            let report = linear_sphericity(&g, &v, &hs, cli.config.seed);
            let mut res = json!({
                "algebra": g.name,
                "rep": v.name,
                "sdim": v.sdim(),
                "verdict": report.status,
                "hyperborels": hs.len(),
                "open_hyperborel": report.open.map(|i| hs[i].to_doc(&g)),
            });
            if s.all_hyperborels {
                res["certificates"] = serde_json::to_value(&report.certificates)?;
            }
            if s.cross_check {
                let mut checks = Vec::new();
                for b in &hs {
                    let c = cross_validate(&g, &v, b, cli.config.degree, cli.config.seed)?;
                    checks.push(json!({ "hyperborel": b.to_doc(&g), "rank_full": c.rank.full, "functions": c.functions }));
                }
                res["cross_check"] = Value::Array(checks);
            }
            emit_json(cli, res)?;
        }
        Command::Monoid(m) => {
            let fmt = format_of(cli, &[Format::Json, Format::Csv])?;
            let (g, v) = representation(&m.rep)?;
            let b = borel(cli, &g, m.borel)?;
            let fm = FunctionModel::new(&g, &v, &b, cli.config.degree)?;
            let (mon, verdict) = fm.monoid_and_verdict(cli.config.degree)?;
            let coords: Vec<Option<Vec<i64>>> =
                mon.entries.iter().map(|e| lattice_coords(&e.weight, &fm.alg.even_weights)).collect();
            if fmt == Format::Csv {
                let rows: Vec<Vec<String>> = mon
                    .entries
                    .iter()
                    .zip(&coords)
                    .map(|(e, c)| {
                        vec![
                            join(&e.weight),
                            c.as_ref().map_or(String::new(), |c| join(c)),
                            e.degree.to_string(),
                            e.certificate_text.clone(),
                        ]
                    })
                    .collect();
                emit_csv(cli, &["weight", "coords", "degree", "certificate"], &rows)?;
            } else {
                emit_json(
                    cli,
                    json!({
                        "algebra": g.name,
                        "rep": v.name,
                        "hyperborel": b.to_doc(&g),
                        "generators": fm.alg.even_labels,
                        "weights": coords,
                        "raw_weights": mon.entries.iter().map(|e| &e.weight).collect::<Vec<_>>(),
                        "certificates": mon.entries.iter().map(|e| &e.certificate_text).collect::<Vec<_>>(),
                        "excluded_nilpotent": mon.nilpotent_only,
                        "verdict": verdict.status,
                        "evidence": verdict.evidence,
                    }),
                )?;
            }
        }
        Command::Figure(f) => {
            let fmt = format_of(cli, &[Format::Svg, Format::Csv])?;
            if f.example != "gl12-s2" {
                return Err(usage(format!("unknown example {:?}; available: gl12-s2", f.example)));
            }
            let g = construct(Family::Gl, 1, 2)?;
            let v = sym2(&g, &standard_rep(&g)?);
            let b = borel(cli, &g, f.borel)?;
            let fm = FunctionModel::new(&g, &v, &b, cli.config.degree)?;
            let mon = fm.monoid(cli.config.degree)?;
            let pts: BTreeSet<(i64, i64)> = mon
                .entries
                .iter()
                .filter_map(|e| lattice_coords(&e.weight, &fm.alg.even_weights))
                .map(|c| (c[0], c[1]))
                .collect();
            if fmt == Format::Csv {
                let rows: Vec<Vec<String>> = pts.iter().map(|(i, j)| vec![i.to_string(), j.to_string()]).collect();
                emit_csv(cli, &["i", "j"], &rows)?;
            } else {
                let title = format!("GL(1|2) on S^2 C^(1|2), {:?} Borel, degree <= {}", f.borel, cli.config.degree);
                let svg = lattice_svg(&pts, cli.config.degree as i64, &title, &serde_json::to_string(&config_value(cli))?);
                emit_to(cli.config.out.as_ref(), &svg)?;
            }
        }
        Command::Iwasawa(a) => {
            format_of(cli, &[Format::Json])?;
            let pair = SymmetricPair::new(involution(a)?)?;
            let r = iwasawa_test(&pair)?;
            let mut res = json!({ "iwasawa": r, "a_maximal_verified": pair.a_maximal_verified });
            if a.spherical {
                res["spherical"] = json!(pair_sphericity(&pair, cli.config.seed)?.status);
            }
            if a.hyperborel && r.status == IwasawaStatus::HasIwasawa {
                let h = iwasawa_to_hyperborel(&pair)?;
                res["hyperborel"] = json!({
                    "basis": (0..h.algebra.dim()).map(|i| h.algebra.label(i).to_string()).collect::<Vec<_>>(),
                    "hyperborel": h.hyperborel.to_doc(&h.algebra),
                    "b_plus_k_dim": h.b_plus_k_dim,
                    "dim": h.algebra.dim(),
                });
            }
            emit_json(cli, res)?;
        }
        Command::Table(t) => return table(cli, t),
        Command::Gl11(a) => {
            format_of(cli, &[Format::Json])?;
            if a.band < 0 {
                return Err(usage("band must be nonnegative"));
            }
            let rep = verify_socle_and_block(a.band)?;
            if let Some(p) = &a.emit_diagram {
                let dot = format!("// config: {}\n{}", serde_json::to_string(&config_value(cli))?, to_dot(&rep));
                emit_to(Some(p), &dot)?;
            }
            emit_json(cli, json!({ "ok": rep.ok(), "report": rep }))?;
        }
    }
    Ok(0)
}

fn borel(cli: &Cli, g: &LieSuperalgebra, which: Borel) -> Result<Hyperborel> {
    let p = positivity(cli, g)?;
    let p = if which == Borel::Lower { p.negated() } else { p };
    distinguished(g, &root_datum(g, p)).ok_or_else(|| anyhow!("{} has no distinguished hyperborel", g.name))
}

fn involution(a: &IwasawaArgs) -> Result<superspherical::symmetric::Involution> {
    let pick = |default: Family| -> Result<Family> { a.algebra.as_deref().map_or(Ok(default), family) };
    let (fam, kind) = match a.pair.as_str() {
        "diagonal" => {
            let f = family(a.algebra.as_deref().ok_or_else(|| usage("--pair diagonal needs --algebra"))?)?;
            return Ok(swap_involution(&construct(f, a.m.unwrap_or(0), a.n)?)?);
        }
        "grading" => (
            family(a.algebra.as_deref().ok_or_else(|| usage("--pair grading needs --algebra"))?)?,
            InvolutionKind::Grading,
        ),
        "gl-block" => (pick(Family::Gl)?, InvolutionKind::GlBlock { r: a.r, s: a.s }),
        "gl-osp" => (pick(Family::Gl)?, InvolutionKind::GlOsp),
        "gl-p" => (pick(Family::Gl)?, InvolutionKind::GlP),
        "gl-q" => (pick(Family::Gl)?, InvolutionKind::GlQ),
        "osp-block" => (pick(Family::Osp)?, InvolutionKind::OspBlock { r: a.r, s: a.s }),
        "osp-gl" => (pick(Family::Osp)?, InvolutionKind::OspGl),
        "p-block" => (pick(Family::P)?, InvolutionKind::PBlock { r: a.r }),
        "p-gl" => (pick(Family::P)?, InvolutionKind::PGl { r: a.r }),
        other => return Err(usage(format!("unknown pair {other:?}"))),
    };
    // gl(n|n) pairs and p(n) take a single size.
    let square = matches!(kind, InvolutionKind::GlP | InvolutionKind::GlQ) || fam == Family::P || fam == Family::Q;
    let m = a.m.unwrap_or(if square { a.n } else { 0 });
    Ok(standard_involution(fam, m, a.n, &kind)?)
}

fn table(cli: &Cli, t: &TableArgs) -> Result<u8> {
    let fmt = format_of(cli, &[Format::Csv, Format::Json])?;
    let seed = cli.config.seed;
    let expected = match &t.expected {
        Some(p) => Some(std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?),
        None => None,
    };
    let (header, rows, mismatches, value): (Vec<&str>, Vec<Vec<String>>, usize, Value) = match t.table {
        TableName::SphericalReps => {
            let rows = match &expected {
                Some(text) => parse_rep_rows(text).map_err(|e| usage(e.to_string()))?,
                None => spherical_rep_rows()?,
            };
            let out = evaluate_rep_rows(&rows, t.max_size, seed)?;
            let rows = out
                .iter()
                .map(|o| {
                    vec![
                        o.row.clone(),
                        o.algebra.clone(),
                        sdim(o.sdim),
                        sdim(o.expected_sdim),
                        o.verdict.to_string(),
                        yes_no(o.expected_spherical),
                        o.open_hyperborel.as_ref().map_or(String::new(), |l| l.join(" ")),
                        if o.matches { "MATCH" } else { "MISMATCH" }.to_string(),
                    ]
                })
                .collect();
            let bad = out.iter().filter(|o| !o.matches).count();
            (
                vec!["row", "algebra", "sdim", "expected_sdim", "verdict", "expected_spherical", "open_hyperborel", "match"],
                rows,
                bad,
                serde_json::to_value(&out)?,
            )
        }
        TableName::SymmetricPairs => {
            let rows = match &expected {
                Some(text) => parse_pair_rows(text).map_err(|e| usage(e.to_string()))?,
                None => symmetric_pair_rows()?,
            };
            let out = evaluate_pair_rows(&rows, t.max_size, seed)?;
            let rows = out
                .iter()
                .map(|o| {
                    vec![
                        o.row.clone(),
                        o.sizes.clone(),
                        o.spherical.map_or("UNIMPLEMENTED".to_string(), |s| s.to_string()),
                        o.iwasawa.map_or("UNIMPLEMENTED".to_string(), |s| s.to_string()),
                        yes_no(o.expected_spherical),
                        yes_no(o.expected_iwasawa),
                        o.status().to_string(),
                    ]
                })
                .collect();
            let bad = out.iter().filter(|o| o.matches == Some(false)).count();
            (
                vec!["pair", "sizes", "spherical", "iwasawa", "expected_spherical", "expected_iwasawa", "match"],
                rows,
                bad,
                serde_json::to_value(&out)?,
            )
        }
    };
    if fmt == Format::Csv {
        emit_csv(cli, &header, &rows)?;
    } else {
        emit_json(cli, json!({ "rows": value, "mismatches": mismatches }))?;
    }
    if mismatches > 0 {
        eprintln!("{mismatches} rows disagree with the expected table");
        return Ok(EXIT_MISMATCH);
    }
    Ok(0)
}

fn join(w: &[i64]) -> String {
    w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn sdim(s: (usize, usize)) -> String {
    format!("{}|{}", s.0, s.1)
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

/// Scatter plot of lattice points in the triangle i + j <= d.
fn lattice_svg(pts: &BTreeSet<(i64, i64)>, d: i64, title: &str, config: &str) -> String {
    let cell = 30;
    let margin = 40;
    let side = d * cell + 2 * margin;
    let x = |i: i64| margin + i * cell;
    let y = |j: i64| side - margin - j * cell;
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{side}" height="{side}" viewBox="0 0 {side} {side}">"#);
    let _ = writeln!(s, "<!-- config: {} -->", config.replace("--", "- -"));
    let _ = writeln!(s, r#"<title>{title}</title>"#);
    let _ = writeln!(s, r#"<rect width="{side}" height="{side}" fill="white"/>"#);
    let _ = writeln!(s, r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#, x(0), y(0), x(d), y(0));
    let _ = writeln!(s, r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#, x(0), y(0), x(0), y(d));
    for i in 0..=d {
        for j in 0..=d - i {
            let (fill, r) = if pts.contains(&(i, j)) { ("black", 6) } else { ("none", 3) };
            let _ = writeln!(
                s,
                r#"<circle cx="{}" cy="{}" r="{r}" fill="{fill}" stroke="gray"><title>({i},{j})</title></circle>"#,
                x(i),
                y(j)
            );
        }
    }
    s.push_str("</svg>\n");
    s
}
