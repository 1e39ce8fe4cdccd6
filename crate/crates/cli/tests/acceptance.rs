//! Acceptance gate: thirteen end-to-end criteria covering the Gram golden
//! block, every published character-table row, the structural properties
//! of the contravariant form, the reduction identities, singular vectors,
//! the Dickson suite, dimension bounds, finite-field lemmas, Frobenius
//! structure, and the orthogonal-group survey.  Each test prints one
//! pass/fail line (visible with `--nocapture`).

use cherednik_cli::claims::{self, ClaimOutcome, Scope, VerificationReport};
use cherednik_cli::conjecture;
use cherednik_cli::derived_seed;
use cherednik_core::dunkl::{DunklContext, ParamMode};
use cherednik_core::form::{rank_kernel, FormContext, GramEntries};
use cherednik_core::gf::{power_sum, square_class, Field, Fq, PowerDomain};
use cherednik_core::groups::{
    dual_action_matrix, factor_prime_power, ClassKind, Family, GroupData, GroupSpec,
};
use cherednik_core::poly::{
    evaluate_at, monomial_basis, proportionality_test, ParamScalar, Polynomial, XMono,
};
use cherednik_core::series::{
    baby_verma_series, dickson_invariants, dimension_bound, frobenius_check, reduced_series,
    HilbertSeries,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

// ---------------------------------------------------------------------------
// harness
// ---------------------------------------------------------------------------

fn criterion<F: FnOnce()>(no: u32, name: &str, limit: Duration, body: F) {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    let ok = result.is_ok() && elapsed <= limit;
    println!(
        "criterion {no:02} [{name}]: {} ({elapsed:.2?} of {limit:?} allowed)",
        if ok { "PASS" } else { "FAIL" }
    );
    if let Err(payload) = result {
        resume_unwind(payload);
    }
    assert!(
        elapsed <= limit,
        "criterion {no:02} exceeded its {limit:?} budget (took {elapsed:.2?})"
    );
}

fn group(family: Family, n: usize, q: u64) -> GroupData {
    GroupData::new(GroupSpec::new(family, n, q).expect("valid spec")).expect("valid group")
}

fn symbolic_form(family: Family, n: usize, q: u64, t: u64) -> FormContext {
    FormContext::new(
        DunklContext::new(group(family, n, q), t, ParamMode::Symbolic).expect("valid context"),
    )
}

fn specialized_form(family: Family, n: usize, q: u64, t: u64, c: &[u64]) -> FormContext {
    let g = group(family, n, q);
    let point: Vec<Fq> = c.iter().map(|&v| g.field().element(v as u32)).collect();
    FormContext::new(
        DunklContext::new(g, t, ParamMode::Specialized(point)).expect("valid context"),
    )
}

fn rng(label: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derived_seed(0, label))
}

fn outcome<'a>(report: &'a VerificationReport, id: &str) -> &'a ClaimOutcome {
    report
        .claims
        .iter()
        .find(|c| c.id == id)
        .unwrap_or_else(|| panic!("claim {id} missing from report"))
}

fn random_homogeneous(n: usize, d: u32, field: &Field, rg: &mut ChaCha8Rng) -> Polynomial<Fq> {
    let mut terms: Vec<(XMono, Fq)> = monomial_basis(n, d)
        .into_iter()
        .map(|m| (m, field.element(rg.gen_range(0..field.q()) as u32)))
        .collect();
    if terms.iter().all(|(_, c)| c.is_zero()) {
        terms[0].1 = field.one();
    }
    Polynomial::from_terms(n, &field.zero(), terms)
}

// ---------------------------------------------------------------------------
// 1. Gram golden block for GL_2(F_2)
// ---------------------------------------------------------------------------

#[test]
fn criterion_01_gram_golden_block() {
    criterion(1, "degree-4 Gram block of GL_2(F_2)", Duration::from_secs(1), || {
        let form = symbolic_form(Family::GL, 2, 2, 1);
        let block = form.block(4).expect("degree-4 block");
        let basis: Vec<String> = block.basis().iter().map(|m| m.render(2)).collect();
        assert_eq!(
            basis,
            ["x1^4", "x1^3*x2", "x1^2*x2^2", "x1*x2^3", "x2^4"]
        );
        let expected = [
            ["c^3 + c^2", "c^3 + c^2", "c^3 + c^2", "c^3 + c^2", "0"],
            ["c^3 + c^2", "c^2 + c", "0", "0", "c^3 + c^2"],
            ["c^3 + c^2", "0", "0", "0", "c^3 + c^2"],
            ["c^3 + c^2", "0", "0", "c^2 + c", "c^3 + c^2"],
            ["0", "c^3 + c^2", "c^3 + c^2", "c^3 + c^2", "c^3 + c^2"],
        ];
        let rows = block.render_rows();
        for (got, want) in rows.iter().zip(&expected) {
            assert_eq!(got, want, "degree-4 Gram entries");
        }
        let report = rank_kernel(&block, &mut rng("acc1")).expect("rank");
        assert_eq!(report.rank, 4, "generic rank of the degree-4 block");
        let kernel: Vec<Vec<String>> = report
            .kernel
            .vectors
            .iter()
            .map(|v| v.iter().map(|x| x.render()).collect())
            .collect();
        // x1^4 + x1^2*x2^2 + x2^4 in the basis order above.
        assert_eq!(kernel, vec![vec!["1", "0", "1", "0", "1"]]);
        assert!(report.kernel.in_base_field);

        let zero_form = specialized_form(Family::GL, 2, 2, 1, &[0]);
        let zero_block = zero_form.block(4).expect("degree-4 block at c=0");
        assert!(zero_block.is_zero(), "block must vanish at c = 0");
        assert_eq!(rank_kernel(&zero_block, &mut rng("acc1z")).expect("rank").rank, 0);
    });
}

// ---------------------------------------------------------------------------
// 2. t = 0 GL table
// ---------------------------------------------------------------------------

#[test]
fn criterion_02_t0_gl_table() {
    criterion(2, "t=0 GL character table", Duration::from_secs(10), || {
        let report = claims::run_verification(Scope::Gl0, 0, 4).expect("t=0 GL run");
        assert_eq!(report.total, 18);
        assert_eq!(report.failed, 0, "failing claims: {:?}",
            report.claims.iter().filter(|c| !c.pass).map(|c| &c.id).collect::<Vec<_>>());
        assert_eq!(outcome(&report, "gl0.q2.n2.c0").computed, vec![1]);
        assert_eq!(outcome(&report, "gl0.q2.n2.c1").computed, vec![1, 2, 2, 1]);
        // each non-exceptional family is checked symbolically and at three
        // independent random points
        for (q, n) in [(3u64, 2usize), (2, 3), (4, 2), (5, 2)] {
            for suffix in ["sym", "rnd1", "rnd2", "rnd3"] {
                let id = format!("gl0.q{q}.n{n}.{suffix}");
                assert_eq!(outcome(&report, &id).computed, vec![1], "{id}");
            }
        }
    });
}

// ---------------------------------------------------------------------------
// 3. t = 1 GL table
// ---------------------------------------------------------------------------

#[test]
fn criterion_03_t1_gl_table() {
    criterion(3, "t=1 GL character table", Duration::from_secs(120), || {
        let report = claims::run_verification(Scope::Gl1, 0, 4).expect("t=1 GL run");
        assert_eq!(report.total, 11);
        assert_eq!(report.failed, 0, "failing claims: {:?}",
            report.claims.iter().filter(|c| !c.pass).map(|c| &c.id).collect::<Vec<_>>());
        // generic series must match ((1 - z^p)/(1 - z))^n exactly
        for (q, n, p) in [(3u64, 2usize, 3u64), (5, 2, 5), (2, 3, 2), (4, 2, 2), (3, 3, 3)] {
            let id = format!("gl1.q{q}.n{n}.generic");
            let oracle = HilbertSeries::geometric(p).pow(n as u32);
            assert_eq!(outcome(&report, &id).computed, oracle.coeffs(), "{id}");
        }
        // the exceptional group factors as (1-z^4)(1-z^6)/(1-z)^2
        let g22 = outcome(&report, "gl1.q2.n2.generic");
        let series = HilbertSeries::new(g22.computed.clone());
        assert_eq!(series.render_factored(), "(1-z^4)(1-z^6)/(1-z)^2");
        let oracle = HilbertSeries::geometric(4).mul(&HilbertSeries::geometric(6));
        assert_eq!(series.coeffs(), oracle.coeffs());
        // special parameter rows
        assert_eq!(outcome(&report, "gl1.q2.n3.c1").computed, vec![1, 3]);
        assert_eq!(outcome(&report, "gl1.q3.n2.pt10").computed, vec![1, 2]);
        assert_eq!(outcome(&report, "gl1.q3.n2.pt20").computed, vec![1, 2, 3]);
        assert_eq!(outcome(&report, "gl1.q2.n2.c1").computed, vec![1]);
        assert_eq!(outcome(&report, "gl1.q2.n2.c0").computed, vec![1, 2, 1]);
    });
}

// ---------------------------------------------------------------------------
// 4. structural properties of the Gram blocks
// ---------------------------------------------------------------------------

#[test]
fn criterion_04_block_structure() {
    criterion(4, "Gram block structure", Duration::from_secs(120), || {
        for (q, n) in [(3u64, 2usize), (5, 2), (2, 3), (4, 2), (3, 3)] {
            let g = group(Family::GL, n, q);
            let p = g.field().p();
            let lambdas: Vec<Fq> = g.classes().iter().map(|cl| cl.lambda.clone()).collect();
            let form =
                FormContext::new(DunklContext::new(g, 1, ParamMode::Symbolic).expect("ctx"));
            let cap = (n as u64 * (p - 1)) as u32;
            for k in 1..=cap {
                let b = form.block(k).expect("block");
                assert!(b.is_diagonal(), "GL_{n}(F_{q}) degree-{k} block is diagonal");
                assert!(
                    b.diagonal_proportional().expect("proportionality"),
                    "GL_{n}(F_{q}) degree-{k} diagonal entries are pairwise proportional"
                );
            }
            for k in cap + 1..=cap + 2 {
                assert!(
                    form.block(k).expect("block").is_zero(),
                    "GL_{n}(F_{q}) blocks vanish from degree {}",
                    cap + 1
                );
            }
            // hyperplane-factor divisibility for the prime fields GL_2(F_p)
            if n == 2 && q == p && p > 2 {
                let ring = form.dunkl().param_ring().clone();
                let one = ParamScalar::one(&ring);
                let mut sum = ParamScalar::zero(&ring);
                let mut weighted = ParamScalar::zero(&ring);
                for (m, lam) in lambdas.iter().enumerate() {
                    sum = sum.add(&ParamScalar::var(&ring, m));
                    weighted = weighted.add(&ParamScalar::var(&ring, m).mul_base(lam));
                }
                let ell1 = sum.sub(&one);
                let ell2 = weighted.add(&one);
                for k in 1..=cap {
                    let b = form.block(k).expect("block");
                    assert_eq!(
                        b.divisible_by(&ell1).expect("divisibility"),
                        k as u64 >= p - 1,
                        "GL_2(F_{q}) degree-{k} divisibility by sum(c) - 1"
                    );
                    assert_eq!(
                        b.divisible_by(&ell2).expect("divisibility"),
                        k as u64 >= p,
                        "GL_2(F_{q}) degree-{k} divisibility by sum(lambda*c) + 1"
                    );
                }
            }
            // the single-parameter group divides by c + 1 from degree 2 on
            if (q, n) == (2, 3) {
                let ring = form.dunkl().param_ring().clone();
                let ell = ParamScalar::var(&ring, 0).add(&ParamScalar::one(&ring));
                for k in 1..=cap {
                    let b = form.block(k).expect("block");
                    assert_eq!(
                        b.divisible_by(&ell).expect("divisibility"),
                        k >= 2,
                        "GL_3(F_2) degree-{k} divisibility by c + 1"
                    );
                }
            }
        }
        // the exceptional group is genuinely non-diagonal
        let exceptional = symbolic_form(Family::GL, 2, 2, 1);
        assert!(!exceptional.block(2).expect("block").is_diagonal());
        assert!(!exceptional.block(4).expect("block").is_diagonal());
        // SL_2(F_5) blocks vanish from degree 2p - 1 = 9
        let sl = symbolic_form(Family::SL, 2, 5, 1);
        assert!(!sl.block(8).expect("block").is_zero());
        assert!(sl.block(9).expect("block").is_zero());
        assert!(sl.block(10).expect("block").is_zero());
    });
}

// ---------------------------------------------------------------------------
// 5. t = 0 SL table
// ---------------------------------------------------------------------------

#[test]
fn criterion_05_t0_sl_table() {
    criterion(5, "t=0 SL character table", Duration::from_secs(10), || {
        let report = claims::run_verification(Scope::Sl0, 0, 4).expect("t=0 SL run");
        assert_eq!(report.total, 6);
        assert_eq!(report.failed, 0, "failing claims: {:?}",
            report.claims.iter().filter(|c| !c.pass).map(|c| &c.id).collect::<Vec<_>>());
        for (q, suffix) in [(3u64, "sym"), (3, "rnd1"), (5, "sym"), (5, "rnd1")] {
            let id = format!("sl0.q{q}.n2.{suffix}");
            assert_eq!(outcome(&report, &id).computed, vec![1], "{id}");
        }
        // SL_2(F_2) = GL_2(F_2): identical rows and identical blocks
        assert_eq!(outcome(&report, "sl0.q2.n2.c0").computed, vec![1]);
        assert_eq!(outcome(&report, "sl0.q2.n2.c1").computed, vec![1, 2, 2, 1]);
        for t in [0u64, 1] {
            let gl = symbolic_form(Family::GL, 2, 2, t);
            let sl = symbolic_form(Family::SL, 2, 2, t);
            for k in 0..=4u32 {
                assert_eq!(
                    gl.block(k).expect("block").render_rows(),
                    sl.block(k).expect("block").render_rows(),
                    "SL_2(F_2) and GL_2(F_2) degree-{k} blocks at t={t}"
                );
            }
        }
    });
}

// ---------------------------------------------------------------------------
// 6. t = 1 SL table
// ---------------------------------------------------------------------------

#[test]
fn criterion_06_t1_sl_table() {
    criterion(6, "t=1 SL character table", Duration::from_secs(300), || {
        let report = claims::run_verification(Scope::Sl1, 0, 4).expect("t=1 SL run");
        assert_eq!(report.total, 6);
        assert_eq!(report.failed, 0, "failing claims: {:?}",
            report.claims.iter().filter(|c| !c.pass).map(|c| &c.id).collect::<Vec<_>>());
        // SL_2(F_5) generic = ((1 - z^5)/(1 - z))^2
        let oracle = HilbertSeries::geometric(5).pow(2);
        assert_eq!(outcome(&report, "sl1.q5.n2.generic").computed, oracle.coeffs());
        assert_eq!(outcome(&report, "sl1.q5.n2.pt11").computed, vec![1, 2, 3, 4]);
        assert_eq!(outcome(&report, "sl1.q5.n2.pt12").computed, vec![1, 2, 3, 4, 5]);
        // SL_2(F_3) generic = (1 - z^12)(1 - z^18)/(1 - z)^2, complete at
        // the degree-28 cutoff
        let oracle = HilbertSeries::geometric(12).mul(&HilbertSeries::geometric(18));
        assert_eq!(outcome(&report, "sl1.q3.n2.generic").computed, oracle.coeffs());
        // SL_3(F_2) = GL_3(F_2) rows
        let gl_generic = claims::CLAIMS.iter().find(|c| c.id == "gl1.q2.n3.generic").unwrap();
        let gl_row = claims::run_claim(gl_generic, 0).expect("GL_3(F_2) generic");
        assert_eq!(outcome(&report, "sl1.q2.n3.generic").computed, gl_row.computed);
        assert_eq!(outcome(&report, "sl1.q2.n3.c1").computed, vec![1, 3]);
    });
}

// ---------------------------------------------------------------------------
// 7. reduction identities between SL and GL blocks
// ---------------------------------------------------------------------------

#[test]
fn criterion_07_reduction_identities() {
    criterion(7, "SL-from-GL reduction identities", Duration::from_secs(60), || {
        // SL_2(F_5): substituting c_unipotent -> (c_1 + c_2)/2 and every
        // semisimple parameter -> 0 into the GL_2(F_5) blocks gives the
        // SL_2(F_5) blocks exactly.
        let gl = symbolic_form(Family::GL, 2, 5, 1);
        let sl = symbolic_form(Family::SL, 2, 5, 1);
        let sl_ring = sl.dunkl().param_ring().clone();
        let half = gl.dunkl().group().field().from_u64(2).inv();
        let average = ParamScalar::var(&sl_ring, 0)
            .add(&ParamScalar::var(&sl_ring, 1))
            .mul_base(&half);
        let images: Vec<ParamScalar> = gl
            .dunkl()
            .group()
            .classes()
            .iter()
            .map(|cl| match cl.kind {
                ClassKind::Unipotent => average.clone(),
                ClassKind::Semisimple => ParamScalar::zero(&sl_ring),
            })
            .collect();
        for d in 0..=9u32 {
            let gb = gl.block(d).expect("GL block");
            let sb = sl.block(d).expect("SL block");
            let (GramEntries::Symbolic(grows), GramEntries::Symbolic(srows)) =
                (gb.entries(), sb.entries())
            else {
                panic!("symbolic blocks expected");
            };
            for (grow, srow) in grows.iter().zip(srows) {
                for (ge, se) in grow.iter().zip(srow) {
                    let mapped = ge.substitute(&sl_ring, &images);
                    assert_eq!(
                        mapped, *se,
                        "degree {d}: GL_2(F_5) entry {} should map to SL entry {}",
                        ge.render(),
                        se.render()
                    );
                }
            }
        }
        // SL_2(F_4): the same with c_unipotent -> c (no averaging needed;
        // the group has a single unipotent parameter on the SL side).
        let gl4 = symbolic_form(Family::GL, 2, 4, 1);
        let sl4 = symbolic_form(Family::SL, 2, 4, 1);
        let sl4_ring = sl4.dunkl().param_ring().clone();
        let images4: Vec<ParamScalar> = gl4
            .dunkl()
            .group()
            .classes()
            .iter()
            .map(|cl| match cl.kind {
                ClassKind::Unipotent => ParamScalar::var(&sl4_ring, 0),
                ClassKind::Semisimple => ParamScalar::zero(&sl4_ring),
            })
            .collect();
        for d in 0..=4u32 {
            let gb = gl4.block(d).expect("GL block");
            let sb = sl4.block(d).expect("SL block");
            let (GramEntries::Symbolic(grows), GramEntries::Symbolic(srows)) =
                (gb.entries(), sb.entries())
            else {
                panic!("symbolic blocks expected");
            };
            for (grow, srow) in grows.iter().zip(srows) {
                for (ge, se) in grow.iter().zip(srow) {
                    assert_eq!(ge.substitute(&sl4_ring, &images4), *se, "degree {d}");
                }
            }
        }
    });
}

// ---------------------------------------------------------------------------
// 8. singular vectors and Dunkl operator properties
// ---------------------------------------------------------------------------

#[test]
fn criterion_08_singular_vectors_and_dunkl() {
    criterion(8, "singular vectors and Dunkl properties", Duration::from_secs(60), || {
        let singular_configs = [
            (Family::GL, 2usize, 3u64),
            (Family::GL, 2, 5),
            (Family::GL, 3, 2),
            (Family::GL, 2, 4),
            (Family::GL, 3, 3),
            (Family::SL, 2, 5),
            (Family::SL, 3, 2),
        ];
        for (fam, n, q) in singular_configs {
            let g = group(fam, n, q);
            let p = g.field().p();
            let one = g.field().one();
            let ctx = DunklContext::new(g, 1, ParamMode::Symbolic).expect("ctx");
            for i in 0..n {
                let mut exps = vec![0u32; n];
                exps[i] = p as u32;
                let f = Polynomial::monomial(n, XMono::pack(&exps), one.clone());
                assert!(
                    ctx.is_singular(&f).expect("singularity"),
                    "x{}^{p} singular for {}_{n}(F_{q})",
                    i + 1,
                    fam.label()
                );
            }
        }
        // the two exceptions where x_i^p is NOT singular
        for (fam, n, q) in [(Family::GL, 2usize, 2u64), (Family::SL, 2, 3)] {
            let g = group(fam, n, q);
            let p = g.field().p();
            let one = g.field().one();
            let ctx = DunklContext::new(g, 1, ParamMode::Symbolic).expect("ctx");
            for i in 0..n {
                let mut exps = vec![0u32; n];
                exps[i] = p as u32;
                let f = Polynomial::monomial(n, XMono::pack(&exps), one.clone());
                assert!(
                    !ctx.is_singular(&f).expect("singularity"),
                    "x{}^{p} must not be singular for {}_{n}(F_{q})",
                    i + 1,
                    fam.label()
                );
            }
        }
        // at t = 0 every degree-1 Dunkl image vanishes identically in c,
        // except for the exceptional group
        let t0_configs = [
            (Family::GL, 2usize, 3u64),
            (Family::GL, 2, 5),
            (Family::GL, 3, 2),
            (Family::GL, 2, 4),
            (Family::GL, 3, 3),
            (Family::SL, 2, 3),
            (Family::SL, 2, 5),
            (Family::SL, 3, 2),
        ];
        for (fam, n, q) in t0_configs {
            let g = group(fam, n, q);
            let one = g.field().one();
            let ctx = DunklContext::new(g, 0, ParamMode::Symbolic).expect("ctx");
            for i in 0..n {
                let x = Polynomial::monomial(n, XMono::var(i), one.clone());
                let lifted = ctx.lift_symbolic(&x);
                for j in 0..n {
                    assert!(
                        ctx.apply_symbolic(j, &lifted).expect("apply").is_zero(),
                        "t=0 Dunkl image of x{} under D_{} for {}_{n}(F_{q})",
                        i + 1,
                        j + 1,
                        fam.label()
                    );
                }
            }
        }
        {
            let g = group(Family::GL, 2, 2);
            let one = g.field().one();
            let ctx = DunklContext::new(g, 0, ParamMode::Symbolic).expect("ctx");
            let mut any_nonzero = false;
            for i in 0..2 {
                let x = Polynomial::monomial(2, XMono::var(i), one.clone());
                let lifted = ctx.lift_symbolic(&x);
                for j in 0..2 {
                    any_nonzero |= !ctx.apply_symbolic(j, &lifted).expect("apply").is_zero();
                }
            }
            assert!(any_nonzero, "GL_2(F_2) keeps a nonzero t=0 degree-1 Dunkl image");
        }
        // Dunkl operators commute pairwise on random homogeneous inputs
        let commute_configs = [
            (Family::GL, 2usize, 3u64),
            (Family::GL, 3, 2),
            (Family::GL, 2, 4),
            (Family::SL, 2, 5),
        ];
        for (fam, n, q) in commute_configs {
            let g = group(fam, n, q);
            let field = g.field().clone();
            let ctx = DunklContext::new(g, 1, ParamMode::Symbolic).expect("ctx");
            let mut rg = rng(&format!("acc8-{}-{n}-{q}", fam.label()));
            let pairs: &[(usize, usize)] = if n == 2 {
                &[(0, 1)]
            } else {
                &[(0, 1), (0, 2), (1, 2)]
            };
            for trial in 0..50 {
                let d = rg.gen_range(1..=4u32);
                let f = random_homogeneous(n, d, &field, &mut rg);
                let (j1, j2) = pairs[trial % pairs.len()];
                assert!(
                    ctx.commute_check(j1, j2, &f).expect("commute"),
                    "[D_{}, D_{}] = 0 on {} for {}_{n}(F_{q})",
                    j1 + 1,
                    j2 + 1,
                    f.render(),
                    fam.label()
                );
            }
        }
    });
}

// ---------------------------------------------------------------------------
// 9. Dickson invariants and baby Verma series
// ---------------------------------------------------------------------------

#[test]
fn criterion_09_dickson_suite() {
    criterion(9, "Dickson invariants and baby Verma series", Duration::from_secs(30), || {
        for (n, q) in [(2usize, 2u64), (2, 3), (3, 2)] {
            let (p, r) = factor_prime_power(q).expect("prime power");
            let field = Field::new(p, r).expect("field");
            let set = dickson_invariants(&field, n).expect("Dickson set");
            let expected_degrees: Vec<u64> =
                (0..n as u32).map(|i| q.pow(n as u32) - q.pow(i)).collect();
            assert_eq!(set.degrees, expected_degrees, "Q degrees for (n,q)=({n},{q})");
            let l_degree: u64 = (0..n as u32).map(|i| q.pow(i)).sum();
            assert_eq!(
                set.l.homogeneous_degree(),
                Some(l_degree as u32),
                "deg L = 1 + q + ... + q^(n-1)"
            );
            for (qi, deg) in set.qs.iter().zip(&set.degrees) {
                assert_eq!(qi.homogeneous_degree(), Some(*deg as u32));
            }
            // invariance under the dual action of the group generators
            let gl = group(Family::GL, n, q);
            for gen in gl.standard_generators() {
                let dual = dual_action_matrix(&gen);
                for qi in &set.qs {
                    assert_eq!(qi.linear_substitute(&dual), *qi, "Q invariant under GL");
                }
                let l_image = set.l.linear_substitute(&dual);
                assert!(
                    proportionality_test(&[set.l.clone(), l_image]),
                    "L is GL-semi-invariant (det twist)"
                );
            }
            let sl = group(Family::SL, n, q);
            for gen in sl.standard_generators() {
                let dual = dual_action_matrix(&gen);
                assert_eq!(set.l.linear_substitute(&dual), set.l, "L invariant under SL");
            }
        }
        // baby Verma series match their product formulas, with the
        // fundamental degrees recomputed here independently
        let degree_oracle = |fam: Family, n: usize, q: u64| -> Vec<u64> {
            let qn = q.pow(n as u32);
            let mut ds: Vec<u64> = match fam {
                Family::GL => (0..n as u32).map(|i| qn - q.pow(i)).collect(),
                Family::SL => {
                    let mut v: Vec<u64> = (1..n as u32).map(|i| qn - q.pow(i)).collect();
                    v.push((qn - 1) / (q - 1));
                    v
                }
                _ => unreachable!(),
            };
            ds.sort_unstable();
            ds
        };
        for (n, q) in [(2usize, 2u64), (2, 3), (3, 2)] {
            let (p, _) = factor_prime_power(q).expect("prime power");
            for fam in [Family::GL, Family::SL] {
                let spec = GroupSpec::new(fam, n, q).expect("spec");
                for t in [0u64, 1] {
                    let manual = degree_oracle(fam, n, q).into_iter().fold(
                        HilbertSeries::one(),
                        |acc, d| {
                            acc.mul(&HilbertSeries::geometric(if t == 1 { p * d } else { d }))
                        },
                    );
                    assert_eq!(
                        baby_verma_series(&spec, p, t).expect("series").coeffs(),
                        manual.coeffs(),
                        "baby Verma product formula for {}_{n}(F_{q}) at t={t}",
                        fam.label()
                    );
                }
            }
        }
    });
}

// ---------------------------------------------------------------------------
// 10. dimension bounds and reduced series across every table row
// ---------------------------------------------------------------------------

#[test]
fn criterion_10_dimension_bounds() {
    criterion(10, "dimension bounds and h(1) values", Duration::from_secs(120), || {
        let report = claims::run_verification(Scope::All, 0, 4).expect("full run");
        assert_eq!(report.total, 41);
        assert_eq!(report.failed, 0);
        for claim in &report.claims {
            let fam = Family::parse(&claim.family).expect("family");
            let g = group(fam, claim.n, claim.q);
            let p = g.field().p();
            let dim = g.dim();
            let order = g.group_order();
            let series = HilbertSeries::new(claim.computed.clone());
            let bound = dimension_bound(&series, p, dim, order).expect("bound");
            assert!(
                bound.within,
                "{}: dim L = {} exceeds p^n |G| = {}",
                claim.id, bound.total, bound.bound
            );
            if claim.t == 0 {
                let h1 = series.eval_one();
                assert!(
                    h1 == 1 || h1 == order,
                    "{}: t=0 series evaluates to {h1}, expected 1 or |G| = {order}",
                    claim.id
                );
            }
            if claim.t == 1 && claim.c == serde_json::json!("generic") {
                let reduced = reduced_series(&series, p, dim).unwrap_or_else(|e| {
                    panic!("{}: reduced series must exist for generic t=1 rows: {e}", claim.id)
                });
                let h1 = reduced.eval_one();
                assert!(
                    h1 == 1 || h1 == order,
                    "{}: reduced series evaluates to {h1}, expected 1 or |G| = {order}",
                    claim.id
                );
            }
        }
    });
}

// ---------------------------------------------------------------------------
// 11. finite-field power sums and the multivariate sum lemma
// ---------------------------------------------------------------------------

#[test]
fn criterion_11_field_lemmas() {
    criterion(11, "power sums and the sum lemma", Duration::from_secs(10), || {
        for q in [3u64, 5, 7, 9] {
            let (p, r) = factor_prime_power(q).expect("prime power");
            let field = Field::new(p, r).expect("field");
            for d in 0..=3 * (q - 1) {
                // brute force with the documented 0^0 = 1 convention
                let brute = |xs: Box<dyn Iterator<Item = Fq>>| {
                    xs.fold(field.zero(), |acc, x| {
                        let term = if d == 0 { field.one() } else { x.pow(d) };
                        &acc + &term
                    })
                };
                let all = brute(Box::new(field.elements()));
                assert_eq!(
                    power_sum(&field, d, PowerDomain::All).expect("closed form"),
                    all,
                    "sum over F_{q} of x^{d}"
                );
                let squares = brute(Box::new(field.nonzero_elements().filter(square_class)));
                assert_eq!(
                    power_sum(&field, d, PowerDomain::Squares).expect("closed form"),
                    squares,
                    "sum over squares of F_{q} of x^{d}"
                );
                let non_squares =
                    brute(Box::new(field.nonzero_elements().filter(|a| !square_class(a))));
                assert_eq!(
                    power_sum(&field, d, PowerDomain::NonSquares).expect("closed form"),
                    non_squares,
                    "sum over non-squares of F_{q} of x^{d}"
                );
            }
        }
        // multivariate sum lemma: sum over F_q^n of f equals the closed
        // form assembled from per-variable power sums
        let mut rg = rng("acc11-sum-lemma");
        for trial in 0..100usize {
            let q = [3u64, 5, 9][trial % 3];
            let n = 1 + trial % 3;
            let (p, r) = factor_prime_power(q).expect("prime power");
            let field = Field::new(p, r).expect("field");
            let terms: Vec<(XMono, Fq)> = (0..6)
                .map(|_| {
                    let exps: Vec<u32> =
                        (0..n).map(|_| rg.gen_range(0..=2 * (q as u32 - 1))).collect();
                    let coef = field.element(rg.gen_range(0..field.q()) as u32);
                    (XMono::pack(&exps), coef)
                })
                .collect();
            let f = Polynomial::from_terms(n, &field.zero(), terms);
            let mut brute = field.zero();
            for idx in 0..q.pow(n as u32) {
                let mut rem = idx;
                let point: Vec<Fq> = (0..n)
                    .map(|_| {
                        let digit = (rem % q) as u32;
                        rem /= q;
                        field.element(digit)
                    })
                    .collect();
                brute = &brute + &evaluate_at(&f, &point);
            }
            let mut closed = field.zero();
            for (mono, coef) in f.terms() {
                let mut contribution = coef.clone();
                for j in 0..n {
                    let ps = power_sum(&field, mono.exp(j) as u64, PowerDomain::All)
                        .expect("closed form");
                    contribution = &contribution * &ps;
                }
                closed = &closed + &contribution;
            }
            assert_eq!(brute, closed, "sum lemma, trial {trial} over F_{q}^{n}");
        }
    });
}

// ---------------------------------------------------------------------------
// 12. Frobenius structure of the small quotients
// ---------------------------------------------------------------------------

#[test]
fn criterion_12_frobenius_structure() {
    criterion(12, "Frobenius structure", Duration::from_secs(120), || {
        for q in [3u64, 2] {
            let form = symbolic_form(Family::GL, 2, q, 1);
            let report =
                frobenius_check(&form, None, &mut rng(&format!("acc12-gl-{q}"))).expect("check");
            assert_eq!(report.top_dim, 1, "GL_2(F_{q}) top degree is one-dimensional");
            assert!(report.palindromic, "GL_2(F_{q}) series is palindromic");
            assert!(
                report
                    .pairings
                    .iter()
                    .all(|pc| pc.left_nondegenerate && pc.right_nondegenerate),
                "GL_2(F_{q}) multiplication pairings are nondegenerate"
            );
            assert!(report.frobenius, "GL_2(F_{q}) generic quotient is Frobenius");
        }
        // Sym(5) in characteristic 3 at t=0: series matches the closed
        // form, top dimension 4, not Frobenius
        let form = symbolic_form(Family::Sym, 5, 3, 0);
        let report = frobenius_check(&form, Some(10), &mut rng("acc12-sym")).expect("check");
        let oracle = HilbertSeries::geometric(2)
            .mul(&HilbertSeries::geometric(3))
            .mul(&HilbertSeries::new(vec![1, 2, 3, 4]));
        assert_eq!(report.series.coeffs(), oracle.coeffs());
        assert_eq!(report.series.coeffs(), [1, 4, 9, 15, 16, 11, 4]);
        assert_eq!(report.top_dim, 4);
        assert!(!report.palindromic);
        assert!(!report.frobenius);
    });
}

// ---------------------------------------------------------------------------
// 13. orthogonal-group survey
// ---------------------------------------------------------------------------

#[test]
fn criterion_13_orthogonal_survey() {
    criterion(13, "orthogonal-group survey", Duration::from_secs(600), || {
        let report =
            conjecture::run_survey(conjecture::DEFAULT_PAIRS, false, 0).expect("survey");
        assert_eq!(report.outcomes.len(), 5);
        assert_eq!(report.status, "pass");
        assert!(report.all_match, "findings: {:?}", report.findings);
        for o in &report.outcomes {
            assert!(o.finite, "{}: scan must end in a zero run", o.group);
            assert_eq!(
                o.reduced.as_deref(),
                Some(o.conjectured.as_slice()),
                "{}: reduced series equals the conjectured closed form",
                o.group
            );
        }
        // the larger field is optional but must also complete and match
        let slow = conjecture::run_survey(conjecture::DEFAULT_PAIRS, true, 0).expect("survey");
        assert_eq!(slow.outcomes.len(), 7);
        assert!(slow.all_match, "findings: {:?}", slow.findings);
    });
}
