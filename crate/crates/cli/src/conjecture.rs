//! The orthogonal-group survey: recompute the equal-parameter generic
//! Hilbert series for `O`-family groups and compare the reduced series
//! against the conjectured closed forms
//!
//!   O+_2(F_q): (1 + z)(1 + z + … + z^(q-2))
//!   O-_2(F_q): (1 + z)(1 + z + … + z^q)
//!   O_3(F_q):  1
//!
//! on the locus where all class parameters are equal.  A mismatch is a
//! reported finding, not a failure: the survey's job is to document what
//! the computation says.

use crate::output::align_table;
use crate::{derived_seed, SCHEMA};
use cherednik_core::dunkl::{DunklContext, ParamMode};
use cherednik_core::form::FormContext;
use cherednik_core::groups::{Family, GroupData, GroupSpec};
use cherednik_core::series::{
    equal_parameter_hilbert_series, reduced_series, HilbertSeries, StopReason,
};
use cherednik_core::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const DEFAULT_PAIRS: &[(usize, u64)] = &[(2, 3), (2, 5), (3, 3)];
pub const SLOW_PAIRS: &[(usize, u64)] = &[(2, 9)];

/// Parse `--pairs` input like `2,3;2,5;3,3`.
pub fn parse_pairs(s: &str) -> Result<Vec<(usize, u64)>> {
    let mut pairs = Vec::new();
    for chunk in s.split(';') {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        let (n_s, q_s) = chunk.split_once(',').ok_or_else(|| {
            Error::Config(format!(
                "cannot parse pair '{chunk}': expected n,q (e.g. \"2,3;2,5\")"
            ))
        })?;
        let n: usize = n_s
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("cannot parse n in pair '{chunk}'")))?;
        let q: u64 = q_s
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("cannot parse q in pair '{chunk}'")))?;
        pairs.push((n, q));
    }
    if pairs.is_empty() {
        return Err(Error::Config("no pairs given".into()));
    }
    Ok(pairs)
}

fn check_budget(n: usize, q: u64) -> Result<()> {
    let ok = match n {
        2 => q <= 13,
        3 => q <= 5,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "pair ({n},{q}) exceeds the built-in budget (n=2: q<=13; n=3: q<=5)"
        )))
    }
}

/// The conjectured reduced series for one orthogonal family.
pub fn conjectured_series(family: Family, q: u64) -> Result<HilbertSeries> {
    match family {
        Family::OPlus => Ok(HilbertSeries::geometric(2).mul(&HilbertSeries::geometric(q - 1))),
        Family::OMinus => Ok(HilbertSeries::geometric(2).mul(&HilbertSeries::geometric(q + 1))),
        Family::OOdd => Ok(HilbertSeries::one()),
        _ => Err(Error::Config(format!(
            "no conjectured series for family {}",
            family.label()
        ))),
    }
}

/// Degree cutoff that, when the conjecture holds, lets the scan witness a
/// full zero run: the raw series tops out at `p*deg + n(p-1)` and `n`
/// further zero blocks end the scan.
fn cutoff(conj: &HilbertSeries, p: u64, n: usize) -> u32 {
    let deg = conj.degree().unwrap_or(0) as u64;
    (p * deg + (n as u64) * (p - 1) + n as u64) as u32
}

#[derive(Debug, Serialize)]
pub struct GroupOutcome {
    pub group: String,
    pub family: &'static str,
    pub n: usize,
    pub q: u64,
    pub conjectured: Vec<u64>,
    pub raw: Vec<u64>,
    pub reduced: Option<Vec<u64>>,
    pub reduced_error: Option<String>,
    pub finite: bool,
    pub matches: bool,
    pub stop: String,
    pub scanned_to: u32,
}

#[derive(Debug, Serialize)]
pub struct ConjectureReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub pairs: Vec<[u64; 2]>,
    pub slow: bool,
    pub seed: u64,
    pub outcomes: Vec<GroupOutcome>,
    pub all_match: bool,
    pub findings: Vec<String>,
    pub status: &'static str,
}

fn survey_group(family: Family, n: usize, q: u64, seed: u64) -> Result<GroupOutcome> {
    let spec = GroupSpec::new(family, n, q)?;
    let group = GroupData::new(spec)?;
    let label = group.label();
    let p = group.field().p();
    let dim = group.dim();
    let conj = conjectured_series(family, q)?;
    let max_degree = cutoff(&conj, p, dim);
    let mut rng =
        ChaCha8Rng::seed_from_u64(derived_seed(seed, &format!("conjecture:{label}")));
    let ctx = DunklContext::new(group, 1, ParamMode::Symbolic)?;
    let form = FormContext::new(ctx);
    let scan = equal_parameter_hilbert_series(&form, Some(max_degree), &mut rng)?;
    let finite = matches!(scan.stop, StopReason::ZeroRun { .. });
    let (reduced, reduced_error) = match reduced_series(&scan.series, p, dim) {
        Ok(r) => (Some(r.coeffs().to_vec()), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let matches = finite && reduced.as_deref() == Some(conj.coeffs());
    Ok(GroupOutcome {
        group: label,
        family: family.label(),
        n,
        q,
        conjectured: conj.coeffs().to_vec(),
        raw: scan.series.coeffs().to_vec(),
        reduced,
        reduced_error,
        finite,
        matches,
        stop: scan.stop.describe(),
        scanned_to: scan.scanned_to,
    })
}

/// Run the survey over the requested `(n, q)` pairs.
pub fn run_survey(pairs: &[(usize, u64)], slow: bool, seed: u64) -> Result<ConjectureReport> {
    let mut all: Vec<(usize, u64)> = pairs.to_vec();
    if slow {
        for &extra in SLOW_PAIRS {
            if !all.contains(&extra) {
                all.push(extra);
            }
        }
    }
    for &(n, q) in &all {
        check_budget(n, q)?;
    }
    let mut outcomes = Vec::new();
    for &(n, q) in &all {
        let families: &[Family] = if n == 2 {
            &[Family::OPlus, Family::OMinus]
        } else {
            &[Family::OOdd]
        };
        for &family in families {
            outcomes.push(survey_group(family, n, q, seed)?);
        }
    }
    let findings: Vec<String> = outcomes
        .iter()
        .filter(|o| !o.matches)
        .map(|o| match (&o.reduced, &o.reduced_error) {
            (_, Some(e)) => format!(
                "{}: raw series {:?} does not reduce cleanly ({e})",
                o.group, o.raw
            ),
            (Some(r), None) if !o.finite => format!(
                "{}: scan reached the cutoff without a zero run; reduced prefix {:?} vs conjectured {:?}",
                o.group, r, o.conjectured
            ),
            (Some(r), None) => format!(
                "{}: reduced series {:?} differs from conjectured {:?}",
                o.group, r, o.conjectured
            ),
            (None, None) => unreachable!("reduced and reduced_error cannot both be absent"),
        })
        .collect();
    let all_match = findings.is_empty();
    Ok(ConjectureReport {
        schema: SCHEMA,
        command: "orthogonal-conjecture",
        pairs: all.iter().map(|&(n, q)| [n as u64, q]).collect(),
        slow,
        seed,
        outcomes,
        all_match,
        findings,
        status: if all_match { "pass" } else { "findings" },
    })
}

pub fn render_table(report: &ConjectureReport) -> String {
    let mut lines = vec![format!(
        "orthogonal-conjecture: {} group(s), seed {}",
        report.outcomes.len(),
        report.seed
    )];
    let mut rows = Vec::new();
    for o in &report.outcomes {
        rows.push(vec![
            if o.matches {
                "[ok]".to_string()
            } else {
                "[MISMATCH]".to_string()
            },
            o.group.clone(),
            format!("conjectured {:?}", o.conjectured),
            match (&o.reduced, &o.reduced_error) {
                (Some(r), _) => format!("reduced {r:?}"),
                (None, Some(e)) => format!("reduction failed: {e}"),
                (None, None) => String::new(),
            },
        ]);
    }
    lines.push(align_table(&rows));
    for f in &report.findings {
        lines.push(format!("finding: {f}"));
    }
    lines.push(format!("status: {}", report.status));
    lines.join("\n")
}
