//! Reproduction of the two expectation tables shipped in `data/`.

use crate::algebra::{construct, Family};
use crate::error::{Error, Result};
use crate::functions::Status;
use crate::orbit::{default_hyperborels, linear_sphericity};
use crate::rep::{pi_shift, standard_rep, sym2, with_scalars};
use crate::symmetric::{iwasawa_test, pair_sphericity, InvolutionKind, IwasawaStatus, PairCase, SymmetricPair};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const SYMMETRIC_PAIRS_CSV: &str = include_str!("../data/symmetric_pairs.csv");
pub const SPHERICAL_REPS_CSV: &str = include_str!("../data/spherical_reps.csv");

fn read_rows<T: for<'de> Deserialize<'de>>(text: &str) -> Result<Vec<T>> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes())
        .deserialize()
        .map(|r| r.map_err(|e| Error::Invalid(format!("table data: {e}"))))
        .collect()
}

fn yes(s: &str) -> bool {
    s == "yes"
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRow {
    pub row: String,
    pub family: String,
    pub m: usize,
    pub n: usize,
    pub kind: String,
    pub r: usize,
    pub s: usize,
    pub size: usize,
    pub spherical: String,
    pub iwasawa: String,
}

impl PairRow {
    pub fn case(&self) -> Result<Option<PairCase>> {
        let kind = match self.kind.as_str() {
            "exceptional" => return Ok(None),
            "grading" => InvolutionKind::Grading,
            "gl-block" => InvolutionKind::GlBlock { r: self.r, s: self.s },
            "gl-osp" => InvolutionKind::GlOsp,
            "gl-p" => InvolutionKind::GlP,
            "gl-q" => InvolutionKind::GlQ,
            "osp-block" => InvolutionKind::OspBlock { r: self.r, s: self.s },
            "osp-gl" => InvolutionKind::OspGl,
            "p-block" => InvolutionKind::PBlock { r: self.r },
            "p-gl" => InvolutionKind::PGl { r: self.r },
            k => return Err(Error::Invalid(format!("unknown involution kind {k}"))),
        };
        Ok(Some(PairCase {
            row: self.row.clone(),
            family: self.family.parse::<Family>()?,
            m: self.m,
            n: self.n,
            kind: Some(kind),
            diagonal: false,
        }))
    }
}

pub fn symmetric_pair_rows() -> Result<Vec<PairRow>> {
    read_rows(SYMMETRIC_PAIRS_CSV)
}

/// Rows from a CSV text with the same header as the shipped file.
pub fn parse_pair_rows(text: &str) -> Result<Vec<PairRow>> {
    read_rows(text)
}

/// One evaluated row. `matches` is `None` for rows that are not implemented.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairOutcome {
    pub row: String,
    pub sizes: String,
    pub spherical: Option<Status>,
    pub iwasawa: Option<IwasawaStatus>,
    pub expected_spherical: bool,
    pub expected_iwasawa: bool,
    pub matches: Option<bool>,
}

impl PairOutcome {
    pub fn status(&self) -> &'static str {
        match self.matches {
            None => "UNIMPLEMENTED",
            Some(true) => "MATCH",
            Some(false) => "MISMATCH",
        }
    }
}

pub fn evaluate_pair_row(row: &PairRow, seed: u64) -> Result<PairOutcome> {
    let expected_spherical = yes(&row.spherical);
    let expected_iwasawa = yes(&row.iwasawa);
    let Some(case) = row.case()? else {
        return Ok(PairOutcome {
            row: row.row.clone(),
            sizes: "-".into(),
            spherical: None,
            iwasawa: None,
            expected_spherical,
            expected_iwasawa,
            matches: None,
        });
    };
    let pair = SymmetricPair::new(case.involution()?)?;
    let iw = iwasawa_test(&pair)?.status;
    let sph = pair_sphericity(&pair, seed)?.status;
    let matches = (sph == Status::Spherical) == expected_spherical
        && sph != Status::InconclusiveAtDegree
        && (iw == IwasawaStatus::HasIwasawa) == expected_iwasawa;
    Ok(PairOutcome {
        row: row.row.clone(),
        sizes: case.sizes(),
        spherical: Some(sph),
        iwasawa: Some(iw),
        expected_spherical,
        expected_iwasawa,
        matches: Some(matches),
    })
}

/// Evaluates every row with `size <= max_size` in parallel; output keeps row order.
pub fn symmetric_pair_table(max_size: usize, seed: u64) -> Result<Vec<PairOutcome>> {
    evaluate_pair_rows(&symmetric_pair_rows()?, max_size, seed)
}

pub fn evaluate_pair_rows(rows: &[PairRow], max_size: usize, seed: u64) -> Result<Vec<PairOutcome>> {
    rows.par_iter().filter(|r| r.size <= max_size).map(|r| evaluate_pair_row(r, seed)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepRow {
    pub row: String,
    pub family: String,
    pub m: usize,
    pub n: usize,
    pub rep: String,
    pub scalars: String,
    pub size: usize,
    pub dim_even: usize,
    pub dim_odd: usize,
    pub spherical: String,
}

pub fn spherical_rep_rows() -> Result<Vec<RepRow>> {
    read_rows(SPHERICAL_REPS_CSV)
}

pub fn parse_rep_rows(text: &str) -> Result<Vec<RepRow>> {
    read_rows(text)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepOutcome {
    pub row: String,
    pub algebra: String,
    pub sdim: (usize, usize),
    pub expected_sdim: (usize, usize),
    pub verdict: Status,
    pub expected_spherical: bool,
    /// Label list of the odd part of the first hyperborel with an open orbit.
    pub open_hyperborel: Option<Vec<String>>,
    pub matches: bool,
}

pub fn evaluate_rep_row(row: &RepRow, seed: u64) -> Result<RepOutcome> {
    let g = construct(row.family.parse()?, row.m, row.n)?;
    let v0 = standard_rep(&g)?;
    let v = match row.rep.as_str() {
        "standard" => v0,
        "pi-standard" => pi_shift(&v0),
        "sym2" => sym2(&g, &v0),
        "pi-sym2" => pi_shift(&sym2(&g, &v0)),
        r => return Err(Error::Invalid(format!("unknown representation {r}"))),
    };
    let (g, v) = if yes(&row.scalars) { with_scalars(&g, &v) } else { (g, v) };
    let report = linear_sphericity(&g, &v, &default_hyperborels(&g), seed);
    let expected_spherical = yes(&row.spherical);
    let expected_sdim = (row.dim_even, row.dim_odd);
    let sdim = v.sdim();
    Ok(RepOutcome {
        row: row.row.clone(),
        algebra: g.name.clone(),
        sdim,
        expected_sdim,
        verdict: report.status,
        expected_spherical,
        open_hyperborel: report.open.map(|i| report.certificates[i].0.clone()),
        matches: sdim == expected_sdim && (report.status == Status::Spherical) == expected_spherical,
    })
}

/// Evaluates every row with `size <= max_size` in parallel; output keeps row order.
pub fn spherical_rep_table(max_size: usize, seed: u64) -> Result<Vec<RepOutcome>> {
    evaluate_rep_rows(&spherical_rep_rows()?, max_size, seed)
}

pub fn evaluate_rep_rows(rows: &[RepRow], max_size: usize, seed: u64) -> Result<Vec<RepOutcome>> {
    rows.par_iter().filter(|r| r.size <= max_size).map(|r| evaluate_rep_row(r, seed)).collect()
}
