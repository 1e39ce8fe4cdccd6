//! The verify-tables claim matrix: every published character-table entry
//! for the `GL`/`SL` families at `t = 0` and `t = 1`, with the Hilbert
//! series each one asserts, plus the runner that recomputes them all.

use crate::output::align_table;
use crate::{derived_seed, SCHEMA};
use cherednik_core::dunkl::{DunklContext, ParamMode};
use cherednik_core::form::FormContext;
use cherednik_core::gf::Fq;
use cherednik_core::groups::{Family, GroupData, GroupSpec};
use cherednik_core::series::hilbert_series;
use cherednik_core::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

/// Which slice of the claim matrix to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Scope {
    /// `GL` groups at t = 0.
    #[value(name = "GL0")]
    Gl0,
    /// `GL` groups at t = 1.
    #[value(name = "GL1")]
    Gl1,
    /// `SL` groups at t = 0.
    #[value(name = "SL0")]
    Sl0,
    /// `SL` groups at t = 1.
    #[value(name = "SL1")]
    Sl1,
    /// Everything.
    #[value(name = "ALL")]
    All,
}

impl Scope {
    pub fn label(&self) -> &'static str {
        match self {
            Scope::Gl0 => "GL0",
            Scope::Gl1 => "GL1",
            Scope::Sl0 => "SL0",
            Scope::Sl1 => "SL1",
            Scope::All => "ALL",
        }
    }

    fn includes(&self, claim: &ClaimSpec) -> bool {
        match self {
            Scope::All => true,
            Scope::Gl0 => claim.family == Family::GL && claim.t == 0,
            Scope::Gl1 => claim.family == Family::GL && claim.t == 1,
            Scope::Sl0 => claim.family == Family::SL && claim.t == 0,
            Scope::Sl1 => claim.family == Family::SL && claim.t == 1,
        }
    }
}

/// How the class parameters are chosen for one claim.
#[derive(Clone, Copy, Debug)]
pub enum CSpec {
    /// Symbolic parameters (generic locus).
    Generic,
    /// A fixed specialization, as field element indices in class-id order.
    Point(&'static [u64]),
    /// A fresh uniform draw from the claim's derived RNG stream.
    Random,
}

/// A linear condition the claim's parameter point must satisfy; checked
/// before scanning so that a wrong table entry cannot silently pass by
/// sitting on the wrong locus.
#[derive(Clone, Copy, Debug)]
pub enum Hyperplane {
    /// `sum(c) = 1` and `sum(lambda * c) != -1`.
    SumCIsOne,
    /// `sum(lambda * c) = -1` and `sum(c) != 1`.
    WeightedSumIsMinusOne,
    /// `c_1 + c_2 = 2` and `c_1 + c_2 != -2` (two-class `SL` groups).
    PairSumIsTwo,
    /// `c_1 + c_2 = -2` and `c_1 + c_2 != 2` (two-class `SL` groups).
    PairSumIsMinusTwo,
}

impl Hyperplane {
    fn check(&self, group: &GroupData, point: &[Fq]) -> Result<()> {
        let field = group.field();
        let one = field.one();
        let two = &one + &one;
        let sum = point
            .iter()
            .fold(field.zero(), |acc, v| &acc + v);
        let weighted = group
            .classes()
            .iter()
            .zip(point)
            .fold(field.zero(), |acc, (cl, v)| &acc + &(&cl.lambda * v));
        let fail = |what: &str| {
            Err(Error::Internal(format!(
                "claim point is off its locus: {what} (sum(c) = {}, sum(lambda*c) = {})",
                sum.render(),
                weighted.render()
            )))
        };
        match self {
            Hyperplane::SumCIsOne => {
                if sum != one || weighted == -&one {
                    return fail("need sum(c) = 1 away from sum(lambda*c) = -1");
                }
            }
            Hyperplane::WeightedSumIsMinusOne => {
                if weighted != -&one || sum == one {
                    return fail("need sum(lambda*c) = -1 away from sum(c) = 1");
                }
            }
            Hyperplane::PairSumIsTwo => {
                if sum != two || sum == -&two {
                    return fail("need c_1 + c_2 = 2 away from c_1 + c_2 = -2");
                }
            }
            Hyperplane::PairSumIsMinusTwo => {
                if sum != -&two || sum == two {
                    return fail("need c_1 + c_2 = -2 away from c_1 + c_2 = 2");
                }
            }
        }
        Ok(())
    }
}

/// One published table entry.
pub struct ClaimSpec {
    pub id: &'static str,
    pub locus: &'static str,
    pub family: Family,
    pub n: usize,
    pub q: u64,
    pub t: u64,
    pub c: CSpec,
    pub max_degree: Option<u32>,
    pub expected: &'static [u64],
    pub hyperplane: Option<Hyperplane>,
}

macro_rules! claim {
    ($id:literal, $locus:literal, $fam:ident, $n:literal, $q:literal, $t:literal,
     $c:expr, $expected:expr) => {
        claim!($id, $locus, $fam, $n, $q, $t, $c, $expected, None)
    };
    ($id:literal, $locus:literal, $fam:ident, $n:literal, $q:literal, $t:literal,
     $c:expr, $expected:expr, $hyp:expr) => {
        ClaimSpec {
            id: $id,
            locus: $locus,
            family: Family::$fam,
            n: $n,
            q: $q,
            t: $t,
            c: $c,
            max_degree: None,
            expected: $expected,
            hyperplane: $hyp,
        }
    };
}

/// The full claim matrix.
pub static CLAIMS: &[ClaimSpec] = &[
    // ----- GL, t = 0 ------------------------------------------------------
    claim!("gl0.q3.n2.sym", "t=0, GL_2(F_3), generic c", GL, 2, 3, 0, CSpec::Generic, &[1]),
    claim!("gl0.q3.n2.rnd1", "t=0, GL_2(F_3), random c #1", GL, 2, 3, 0, CSpec::Random, &[1]),
    claim!("gl0.q3.n2.rnd2", "t=0, GL_2(F_3), random c #2", GL, 2, 3, 0, CSpec::Random, &[1]),
    claim!("gl0.q3.n2.rnd3", "t=0, GL_2(F_3), random c #3", GL, 2, 3, 0, CSpec::Random, &[1]),
    claim!("gl0.q2.n3.sym", "t=0, GL_3(F_2), generic c", GL, 3, 2, 0, CSpec::Generic, &[1]),
    claim!("gl0.q2.n3.rnd1", "t=0, GL_3(F_2), random c #1", GL, 3, 2, 0, CSpec::Random, &[1]),
    claim!("gl0.q2.n3.rnd2", "t=0, GL_3(F_2), random c #2", GL, 3, 2, 0, CSpec::Random, &[1]),
    claim!("gl0.q2.n3.rnd3", "t=0, GL_3(F_2), random c #3", GL, 3, 2, 0, CSpec::Random, &[1]),
    claim!("gl0.q4.n2.sym", "t=0, GL_2(F_4), generic c", GL, 2, 4, 0, CSpec::Generic, &[1]),
    claim!("gl0.q4.n2.rnd1", "t=0, GL_2(F_4), random c #1", GL, 2, 4, 0, CSpec::Random, &[1]),
    claim!("gl0.q4.n2.rnd2", "t=0, GL_2(F_4), random c #2", GL, 2, 4, 0, CSpec::Random, &[1]),
    claim!("gl0.q4.n2.rnd3", "t=0, GL_2(F_4), random c #3", GL, 2, 4, 0, CSpec::Random, &[1]),
    claim!("gl0.q5.n2.sym", "t=0, GL_2(F_5), generic c", GL, 2, 5, 0, CSpec::Generic, &[1]),
    claim!("gl0.q5.n2.rnd1", "t=0, GL_2(F_5), random c #1", GL, 2, 5, 0, CSpec::Random, &[1]),
    claim!("gl0.q5.n2.rnd2", "t=0, GL_2(F_5), random c #2", GL, 2, 5, 0, CSpec::Random, &[1]),
    claim!("gl0.q5.n2.rnd3", "t=0, GL_2(F_5), random c #3", GL, 2, 5, 0, CSpec::Random, &[1]),
    claim!("gl0.q2.n2.c0", "t=0, GL_2(F_2), c = 0", GL, 2, 2, 0, CSpec::Point(&[0]), &[1]),
    claim!("gl0.q2.n2.c1", "t=0, GL_2(F_2), c = 1", GL, 2, 2, 0, CSpec::Point(&[1]), &[1, 2, 2, 1]),
    // ----- GL, t = 1 ------------------------------------------------------
    claim!("gl1.q3.n2.generic", "t=1, GL_2(F_3), generic c", GL, 2, 3, 1, CSpec::Generic,
        &[1, 2, 3, 2, 1]),
    claim!("gl1.q5.n2.generic", "t=1, GL_2(F_5), generic c", GL, 2, 5, 1, CSpec::Generic,
        &[1, 2, 3, 4, 5, 4, 3, 2, 1]),
    claim!("gl1.q2.n3.generic", "t=1, GL_3(F_2), generic c", GL, 3, 2, 1, CSpec::Generic,
        &[1, 3, 3, 1]),
    claim!("gl1.q4.n2.generic", "t=1, GL_2(F_4), generic c", GL, 2, 4, 1, CSpec::Generic,
        &[1, 2, 1]),
    claim!("gl1.q3.n3.generic", "t=1, GL_3(F_3), generic c", GL, 3, 3, 1, CSpec::Generic,
        &[1, 3, 6, 7, 6, 3, 1]),
    claim!("gl1.q2.n2.generic", "t=1, GL_2(F_2), generic c", GL, 2, 2, 1, CSpec::Generic,
        &[1, 2, 3, 4, 4, 4, 3, 2, 1]),
    claim!("gl1.q2.n3.c1", "t=1, GL_3(F_2), c = 1", GL, 3, 2, 1, CSpec::Point(&[1]), &[1, 3]),
    claim!("gl1.q3.n2.pt10", "t=1, GL_2(F_3), point on sum(c) = 1", GL, 2, 3, 1,
        CSpec::Point(&[1, 0]), &[1, 2], Some(Hyperplane::SumCIsOne)),
    claim!("gl1.q3.n2.pt20", "t=1, GL_2(F_3), point on sum(lambda*c) = -1", GL, 2, 3, 1,
        CSpec::Point(&[2, 0]), &[1, 2, 3], Some(Hyperplane::WeightedSumIsMinusOne)),
    claim!("gl1.q2.n2.c1", "t=1, GL_2(F_2), c = 1", GL, 2, 2, 1, CSpec::Point(&[1]), &[1]),
    claim!("gl1.q2.n2.c0", "t=1, GL_2(F_2), c = 0", GL, 2, 2, 1, CSpec::Point(&[0]), &[1, 2, 1]),
    // ----- SL, t = 0 ------------------------------------------------------
    claim!("sl0.q3.n2.sym", "t=0, SL_2(F_3), generic c", SL, 2, 3, 0, CSpec::Generic, &[1]),
    claim!("sl0.q3.n2.rnd1", "t=0, SL_2(F_3), random c #1", SL, 2, 3, 0, CSpec::Random, &[1]),
    claim!("sl0.q5.n2.sym", "t=0, SL_2(F_5), generic c", SL, 2, 5, 0, CSpec::Generic, &[1]),
    claim!("sl0.q5.n2.rnd1", "t=0, SL_2(F_5), random c #1", SL, 2, 5, 0, CSpec::Random, &[1]),
    claim!("sl0.q2.n2.c0", "t=0, SL_2(F_2), c = 0", SL, 2, 2, 0, CSpec::Point(&[0]), &[1]),
    claim!("sl0.q2.n2.c1", "t=0, SL_2(F_2), c = 1", SL, 2, 2, 0, CSpec::Point(&[1]), &[1, 2, 2, 1]),
    // ----- SL, t = 1 ------------------------------------------------------
    claim!("sl1.q5.n2.generic", "t=1, SL_2(F_5), generic c", SL, 2, 5, 1, CSpec::Generic,
        &[1, 2, 3, 4, 5, 4, 3, 2, 1]),
    claim!("sl1.q5.n2.pt11", "t=1, SL_2(F_5), point on c_1+c_2 = 2", SL, 2, 5, 1,
        CSpec::Point(&[1, 1]), &[1, 2, 3, 4], Some(Hyperplane::PairSumIsTwo)),
    claim!("sl1.q5.n2.pt12", "t=1, SL_2(F_5), point on c_1+c_2 = -2", SL, 2, 5, 1,
        CSpec::Point(&[1, 2]), &[1, 2, 3, 4, 5], Some(Hyperplane::PairSumIsMinusTwo)),
    claim!("sl1.q3.n2.generic", "t=1, SL_2(F_3), generic c (series truncated at the cutoff)",
        SL, 2, 3, 1, CSpec::Generic,
        &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 12, 12, 12, 12, 12, 12, 11, 10, 9, 8, 7, 6,
          5, 4, 3, 2, 1]),
    claim!("sl1.q2.n3.generic", "t=1, SL_3(F_2), generic c", SL, 3, 2, 1, CSpec::Generic,
        &[1, 3, 3, 1]),
    claim!("sl1.q2.n3.c1", "t=1, SL_3(F_2), c = 1", SL, 3, 2, 1, CSpec::Point(&[1]), &[1, 3]),
];

/// The result of recomputing one claim.
#[derive(Clone, Debug, Serialize)]
pub struct ClaimOutcome {
    pub id: String,
    pub locus: String,
    pub group: String,
    pub family: String,
    pub n: usize,
    pub q: u64,
    pub t: u64,
    pub c: Value,
    pub expected: Vec<u64>,
    pub computed: Vec<u64>,
    pub stop: String,
    pub pass: bool,
}

/// Recompute one claim from scratch.  The RNG stream is derived from the
/// base seed and the claim id, so claims are independent of scope,
/// ordering, and worker count.
pub fn run_claim(claim: &ClaimSpec, base_seed: u64) -> Result<ClaimOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(derived_seed(base_seed, claim.id));
    let spec = GroupSpec::new(claim.family, claim.n, claim.q)?;
    let group = GroupData::new(spec)?;
    let field = group.field().clone();
    let label = group.label();
    let (mode, c_json) = match claim.c {
        CSpec::Generic => (ParamMode::Symbolic, json!("generic")),
        CSpec::Point(idxs) => {
            let vals: Vec<Fq> = idxs.iter().map(|&v| field.element(v as u32)).collect();
            (ParamMode::Specialized(vals), json!(idxs))
        }
        CSpec::Random => {
            let idxs: Vec<u64> = (0..group.class_count())
                .map(|_| rng.gen_range(0..field.q()))
                .collect();
            let vals: Vec<Fq> = idxs.iter().map(|&v| field.element(v as u32)).collect();
            (ParamMode::Specialized(vals), json!(idxs))
        }
    };
    if let (Some(h), ParamMode::Specialized(point)) = (&claim.hyperplane, &mode) {
        h.check(&group, point)?;
    }
    let ctx = DunklContext::new(group, claim.t, mode)?;
    let form = FormContext::new(ctx);
    let scan = hilbert_series(&form, claim.max_degree, &mut rng)?;
    let computed = scan.series.coeffs().to_vec();
    let pass = computed == claim.expected;
    Ok(ClaimOutcome {
        id: claim.id.to_string(),
        locus: claim.locus.to_string(),
        group: label,
        family: claim.family.label().to_string(),
        n: claim.n,
        q: claim.q,
        t: claim.t,
        c: c_json,
        expected: claim.expected.to_vec(),
        computed,
        stop: scan.stop.describe(),
        pass,
    })
}

/// Full verification report.
#[derive(Debug, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub scope: &'static str,
    pub seed: u64,
    pub workers: usize,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub status: &'static str,
    pub claims: Vec<ClaimOutcome>,
}

/// Recompute every claim in scope across a small worker pool.  Results
/// are reported in claim-id order regardless of completion order.
pub fn run_verification(scope: Scope, seed: u64, workers: usize) -> Result<VerificationReport> {
    let mut selected: Vec<&ClaimSpec> = CLAIMS.iter().filter(|c| scope.includes(c)).collect();
    selected.sort_by_key(|c| c.id);
    let workers = workers.clamp(1, selected.len().max(1));
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Result<ClaimOutcome>>>> =
        (0..selected.len()).map(|_| Mutex::new(None)).collect();
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= selected.len() {
                    break;
                }
                let outcome = run_claim(selected[i], seed);
                *slots[i].lock().expect("claim slot poisoned") = Some(outcome);
            });
        }
    });
    let mut claims = Vec::with_capacity(selected.len());
    for slot in slots {
        let outcome = slot
            .into_inner()
            .expect("claim slot poisoned")
            .expect("worker pool filled every slot");
        claims.push(outcome?);
    }
    let total = claims.len();
    let passed = claims.iter().filter(|c| c.pass).count();
    let failed = total - passed;
    Ok(VerificationReport {
        schema: SCHEMA,
        command: "verify-tables",
        scope: scope.label(),
        seed,
        workers,
        total,
        passed,
        failed,
        status: if failed == 0 { "pass" } else { "fail" },
        claims,
    })
}

pub fn render_table(report: &VerificationReport) -> String {
    let mut lines = vec![format!(
        "verify-tables: scope {}, seed {}, {} claim(s), {} passed, {} failed",
        report.scope, report.seed, report.total, report.passed, report.failed
    )];
    let mut rows = Vec::new();
    for c in &report.claims {
        rows.push(vec![
            if c.pass { "[ok]".to_string() } else { "[FAIL]".to_string() },
            c.id.clone(),
            c.locus.clone(),
            format!("{:?}", c.computed),
        ]);
        if !c.pass {
            rows.push(vec![
                String::new(),
                String::new(),
                "expected".to_string(),
                format!("{:?}", c.expected),
            ]);
        }
    }
    lines.push(align_table(&rows));
    lines.push(format!("status: {}", report.status));
    lines.join("\n")
}
