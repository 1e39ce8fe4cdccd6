//! Hilbert series of the irreducible quotient, baby Verma comparisons,
//! Dickson invariants, and the Frobenius (Poincaré-duality) check.

use crate::dunkl::ParamMode;
use crate::error::{Error, Result};
use crate::form::{
    choose_extension, rank_kernel, specialize_block, FormContext, GramBlock, RankReport,
};
use crate::gf::{Embedding, Field, Fq};
use crate::groups::{Family, GroupData, GroupSpec};
use crate::matrix::Mat;
use crate::poly::{div_exact_poly, Polynomial, XMono};
use rand::Rng;
use std::collections::HashMap;
use std::sync::Arc;

// ---------------------------------------------------------------------------
// Hilbert series
// ---------------------------------------------------------------------------

/// A polynomial in `z` with nonnegative integer coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HilbertSeries {
    coeffs: Vec<u64>,
}

impl HilbertSeries {
    /// Normalizing constructor: trims trailing zeros.
    pub fn new(mut coeffs: Vec<u64>) -> HilbertSeries {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        HilbertSeries { coeffs }
    }

    pub fn one() -> HilbertSeries {
        HilbertSeries { coeffs: vec![1] }
    }

    /// `1 + z + … + z^{k-1}`.
    pub fn geometric(k: u64) -> HilbertSeries {
        HilbertSeries {
            coeffs: vec![1; k as usize],
        }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    /// Degree, or `None` for the zero series.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    pub fn coefficient(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }
    /// Value at `z = 1` (the total dimension).
    pub fn eval_one(&self) -> u128 {
        self.coeffs.iter().map(|&c| c as u128).sum()
    }

    pub fn mul(&self, rhs: &HilbertSeries) -> HilbertSeries {
        if self.is_zero() || rhs.is_zero() {
            return HilbertSeries::new(Vec::new());
        }
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        HilbertSeries::new(out)
    }

    /// Exact division over the integers with a nonnegative quotient;
    /// `None` if the division leaves a remainder or goes negative.
    pub fn try_div_exact(&self, rhs: &HilbertSeries) -> Option<HilbertSeries> {
        assert!(!rhs.is_zero(), "division by the zero series");
        if self.is_zero() {
            return Some(HilbertSeries::new(Vec::new()));
        }
        if self.coeffs.len() < rhs.coeffs.len() {
            return None;
        }
        let qlen = self.coeffs.len() - rhs.coeffs.len() + 1;
        let lead = *rhs.coeffs.first().unwrap() as i128;
        let mut rem: Vec<i128> = self.coeffs.iter().map(|&c| c as i128).collect();
        let mut quo = vec![0i128; qlen];
        for i in 0..qlen {
            let q = rem[i] / lead;
            if q * lead != rem[i] {
                return None;
            }
            quo[i] = q;
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                rem[i + j] -= q * b as i128;
            }
        }
        if rem.iter().any(|&r| r != 0) || quo.iter().any(|&q| q < 0) {
            return None;
        }
        Some(HilbertSeries::new(
            quo.into_iter().map(|q| q as u64).collect(),
        ))
    }

    pub fn pow(&self, e: u32) -> HilbertSeries {
        let mut acc = HilbertSeries::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Plain polynomial rendering, e.g. `1 + 2*z + z^2`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "z".to_string(),
                (1, c) => format!("{c}*z"),
                (i, 1) => format!("z^{i}"),
                (i, c) => format!("{c}*z^{i}"),
            })
            .collect();
        parts.join(" + ")
    }

    /// Factored rendering `(1-z^{k_1})…(1-z^{k_m})/(1-z)^m` found by
    /// greedy exact division by `1 + z + … + z^{k-1}` with `k`
    /// descending; falls back to the plain rendering when the residual
    /// is not 1.  Cosmetic only — consumers should use the coefficients.
    pub fn render_factored(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        if self.coeffs == [1] {
            return "1".to_string();
        }
        let mut factors: Vec<u64> = Vec::new();
        let mut rem = self.clone();
        let mut k = rem.coeffs.len() as u64;
        while k >= 2 {
            match rem.try_div_exact(&HilbertSeries::geometric(k)) {
                Some(q) => {
                    factors.push(k);
                    rem = q;
                    k = k.min(rem.coeffs.len() as u64);
                }
                None => k -= 1,
            }
        }
        if rem.coeffs != [1] || factors.is_empty() {
            return self.render();
        }
        factors.sort_unstable();
        let num: String = factors.iter().map(|k| format!("(1-z^{k})")).collect();
        let denom = if factors.len() == 1 {
            "(1-z)".to_string()
        } else {
            format!("(1-z)^{}", factors.len())
        };
        format!("{num}/{denom}")
    }
}

// ---------------------------------------------------------------------------
// invariant degrees and baby Verma modules
// ---------------------------------------------------------------------------

/// Fundamental invariant degrees, ascending.  `GL_n(F_q)` has degrees
/// `q^n - q^i` (`i = n-1, …, 0`); `SL_n(F_q)` replaces the smallest by
/// `(q^n - 1)/(q - 1)`.  Other families have no closed form here.
pub fn invariant_degrees(spec: &GroupSpec) -> Result<Vec<u64>> {
    let n = spec.n as u32;
    let q = spec.q;
    match spec.family {
        Family::GL => {
            let qn = q.pow(n);
            let mut ds: Vec<u64> = (0..n).map(|i| qn - q.pow(i)).collect();
            ds.sort_unstable();
            Ok(ds)
        }
        Family::SL => {
            let qn = q.pow(n);
            let mut ds: Vec<u64> = (1..n).map(|i| qn - q.pow(i)).collect();
            ds.push((qn - 1) / (q - 1));
            ds.sort_unstable();
            Ok(ds)
        }
        _ => Err(Error::Config(format!(
            "no closed-form invariant degrees for family {}",
            spec.family.label()
        ))),
    }
}

/// Hilbert series of the baby Verma module: `∏_i (1 + z + … + z^{e_i-1})`
/// with `e_i = p·d_i` at `t = 1` and `e_i = d_i` at `t = 0`.
pub fn baby_verma_series(spec: &GroupSpec, p: u64, t: u64) -> Result<HilbertSeries> {
    let degrees = invariant_degrees(spec)?;
    let mut acc = HilbertSeries::one();
    for d in degrees {
        let e = if t == 1 { p * d } else { d };
        acc = acc.mul(&HilbertSeries::geometric(e));
    }
    Ok(acc)
}

/// Default scan cutoff: the top degree of the baby Verma module,
/// `Σ e_i - n`.  Only available for `GL`/`SL`.
pub fn default_max_degree(spec: &GroupSpec, p: u64, t: u64) -> Result<u32> {
    let degrees = invariant_degrees(spec)?;
    let sum: u64 = degrees.iter().sum();
    let top = if t == 1 {
        p * sum - spec.n as u64
    } else {
        sum - spec.n as u64
    };
    u32::try_from(top).map_err(|_| Error::Config("degree cutoff overflows".into()))
}

// ---------------------------------------------------------------------------
// the Hilbert series scan
// ---------------------------------------------------------------------------

/// Why a scan stopped.
#[derive(Clone, Debug)]
pub enum StopReason {
    /// `run` consecutive zero blocks starting at `first_zero_degree`.
    /// One zero block already forces all later blocks to vanish.
    ZeroRun { first_zero_degree: u32, run: u32 },
    /// Reached the degree cutoff.
    MaxDegree { max_degree: u32 },
}

impl StopReason {
    pub fn describe(&self) -> String {
        match self {
            StopReason::ZeroRun {
                first_zero_degree,
                run,
            } => format!("{run} consecutive zero blocks from degree {first_zero_degree}"),
            StopReason::MaxDegree { max_degree } => {
                format!("reached the degree cutoff {max_degree}")
            }
        }
    }
}

/// Result of a Hilbert-series scan.
pub struct ScanResult {
    pub series: HilbertSeries,
    pub stop: StopReason,
    /// Last degree whose block was computed.
    pub scanned_to: u32,
    /// Per-degree rank reports (degree `i` at index `i`).
    pub reports: Vec<RankReport>,
}

/// Hilbert series of the irreducible quotient: coefficient `i` is the
/// rank of the degree-`i` Gram block in the context's parameter mode.
///
/// The scan stops at `max_degree` (defaulting to the baby Verma top
/// degree for `GL`/`SL`; required otherwise) or once `dim` consecutive
/// blocks are zero, whichever comes first.
pub fn hilbert_series(
    form: &FormContext,
    max_degree: Option<u32>,
    rng: &mut dyn rand::RngCore,
) -> Result<ScanResult> {
    scan_blocks(form, max_degree, rng, false)
}

/// Hilbert series on the locus where every reflection class shares a
/// single generic parameter value (`c_i ↦ c`).  Requires symbolic mode.
///
/// This is a proper subvariety of the full parameter space, so ranks can
/// only drop relative to [`hilbert_series`]; for some groups the two
/// scans genuinely differ.
pub fn equal_parameter_hilbert_series(
    form: &FormContext,
    max_degree: Option<u32>,
    rng: &mut dyn rand::RngCore,
) -> Result<ScanResult> {
    if !matches!(form.dunkl().mode(), ParamMode::Symbolic) {
        return Err(Error::Config(
            "the equal-parameter scan runs at generic (symbolic) parameters".into(),
        ));
    }
    scan_blocks(form, max_degree, rng, true)
}

fn scan_blocks(
    form: &FormContext,
    max_degree: Option<u32>,
    rng: &mut dyn rand::RngCore,
    equal_parameters: bool,
) -> Result<ScanResult> {
    let group = form.dunkl().group();
    let p = group.field().p();
    let cutoff = match max_degree {
        Some(d) => d,
        None => default_max_degree(group.spec(), p, form.dunkl().t()).map_err(|_| {
            Error::Config(format!(
                "max_degree is required for family {}",
                group.spec().family.label()
            ))
        })?,
    };
    let zero_run_needed = group.dim() as u32;
    let mut ranks: Vec<u64> = Vec::new();
    let mut reports: Vec<RankReport> = Vec::new();
    let mut zero_run = 0u32;
    let mut stop = StopReason::MaxDegree { max_degree: cutoff };
    let mut scanned_to = 0u32;
    for d in 0..=cutoff {
        let block = form.block(d)?;
        let report = if equal_parameters {
            let restricted = block.restrict_to_equal_parameters()?;
            rank_kernel(&restricted, &mut *rng)?
        } else {
            rank_kernel(&block, &mut *rng)?
        };
        scanned_to = d;
        ranks.push(report.rank as u64);
        if report.rank == 0 {
            zero_run += 1;
        } else {
            zero_run = 0;
        }
        reports.push(report);
        if zero_run >= zero_run_needed {
            stop = StopReason::ZeroRun {
                first_zero_degree: d + 1 - zero_run,
                run: zero_run,
            };
            break;
        }
    }
    Ok(ScanResult {
        series: HilbertSeries::new(ranks),
        stop,
        scanned_to,
        reports,
    })
}

// ---------------------------------------------------------------------------
// reduced series and dimension bounds
// ---------------------------------------------------------------------------

/// Divide by `(1 + z + … + z^{p-1})^n`, check that the quotient is
/// supported on powers of `z^p`, and compress `z^p → z`.
pub fn reduced_series(h: &HilbertSeries, p: u64, n: usize) -> Result<HilbertSeries> {
    let factor = HilbertSeries::geometric(p).pow(n as u32);
    let quotient = h.try_div_exact(&factor).ok_or_else(|| {
        Error::Division(format!(
            "series {} is not divisible by (1+…+z^{})^{}",
            h.render(),
            p - 1,
            n
        ))
    })?;
    for (i, &c) in quotient.coeffs().iter().enumerate() {
        if c != 0 && i as u64 % p != 0 {
            return Err(Error::Division(format!(
                "quotient {} is not supported on powers of z^{}",
                quotient.render(),
                p
            )));
        }
    }
    let compressed: Vec<u64> = quotient
        .coeffs()
        .iter()
        .step_by(p as usize)
        .copied()
        .collect();
    Ok(HilbertSeries::new(compressed))
}

/// Total dimension versus the `p^n · |G|` bound.
pub struct DimensionBound {
    pub total: u128,
    pub bound: u128,
    pub within: bool,
}

pub fn dimension_bound(
    series: &HilbertSeries,
    p: u64,
    dim: usize,
    group_order: u128,
) -> Result<DimensionBound> {
    let total = series.eval_one();
    let bound = (p as u128)
        .checked_pow(dim as u32)
        .and_then(|pn| pn.checked_mul(group_order))
        .ok_or_else(|| Error::Config("dimension bound overflows".into()))?;
    Ok(DimensionBound {
        total,
        bound,
        within: total <= bound,
    })
}

// ---------------------------------------------------------------------------
// Dickson invariants
// ---------------------------------------------------------------------------

/// The Dickson generators of the `GL_n(F_q)` polynomial invariants.
pub struct DicksonSet {
    /// `L_n = [n-1, …, 1, 0]`, the product of all nonzero linear forms
    /// up to scalars.
    pub l: Polynomial<Fq>,
    /// `Q_0, …, Q_{n-1}` with `deg Q_i = q^n - q^i`.
    pub qs: Vec<Polynomial<Fq>>,
    /// The degrees `q^n - q^i`, ascending with `i` descending.
    pub degrees: Vec<u64>,
}

/// Determinant `det(x_j^{q^{e_i}})` expanded over permutations.
fn bracket(field: &Field, n: usize, es: &[u32]) -> Polynomial<Fq> {
    assert_eq!(es.len(), n);
    let q = field.q();
    let mut terms: Vec<(XMono, Fq)> = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        // Sign of the permutation by counting inversions.
        let mut inversions = 0usize;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        let sign = if inversions % 2 == 0 {
            field.one()
        } else {
            -&field.one()
        };
        let mut exps = vec![0u32; n];
        for (i, &col) in perm.iter().enumerate() {
            exps[col] = q.pow(es[i]) as u32;
        }
        terms.push((XMono::pack(&exps), sign));
        if !next_perm(&mut perm) {
            break;
        }
    }
    Polynomial::from_terms(n, &field.zero(), terms)
}

fn next_perm(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Build the Dickson invariants for `GL_n(F_q)`.  Requires `q^n ≤ 255`
/// (monomial exponent cap) and `n ≤ 3` (determinant expansion).
pub fn dickson_invariants(field: &Field, n: usize) -> Result<DicksonSet> {
    if n == 0 || n > 3 {
        return Err(Error::Config(
            "Dickson invariants are implemented for 1 ≤ n ≤ 3".into(),
        ));
    }
    let q = field.q();
    if q.pow(n as u32) > 255 {
        return Err(Error::Config(
            "q^n exceeds the monomial exponent cap".into(),
        ));
    }
    // L_n = [n-1, …, 1, 0].
    let l_es: Vec<u32> = (0..n as u32).rev().collect();
    let l = bracket(field, n, &l_es);
    let mut qs: Vec<Polynomial<Fq>> = Vec::with_capacity(n);
    let mut degrees: Vec<u64> = Vec::with_capacity(n);
    for i in 0..n {
        degrees.push(q.pow(n as u32) - q.pow(i as u32));
        if i == 0 {
            // Q_0 = L^{q-1}.
            let mut acc = Polynomial::constant(n, field.one());
            for _ in 0..q - 1 {
                acc = acc.mul(&l);
            }
            qs.push(acc);
        } else {
            // Q_i = [n, …, î, …, 0] / L.
            let es: Vec<u32> = (0..=n as u32).rev().filter(|&e| e != i as u32).collect();
            let num = bracket(field, n, &es);
            let quot = div_exact_poly(&num, &l).ok_or_else(|| {
                Error::Internal("the bracket is divisible by L".into())
            })?;
            qs.push(quot);
        }
    }
    Ok(DicksonSet { l, qs, degrees })
}

// ---------------------------------------------------------------------------
// Frobenius property check
// ---------------------------------------------------------------------------

/// Nondegeneracy of the multiplication pairing `L_i × L_{D-i} → L_D`.
pub struct PairingCheck {
    pub degree: u32,
    pub left_nondegenerate: bool,
    pub right_nondegenerate: bool,
}

pub struct FrobeniusReport {
    pub series: HilbertSeries,
    pub stop: StopReason,
    pub top_degree: u32,
    pub top_dim: u64,
    pub palindromic: bool,
    pub pairings: Vec<PairingCheck>,
    /// `top_dim == 1`, palindromic, and every pairing nondegenerate.
    pub frobenius: bool,
    pub extension_field: Field,
    pub point: Vec<Fq>,
    pub redraws: u32,
}

/// Check the Frobenius (Poincaré-duality) structure of the irreducible
/// quotient at generic parameters.
///
/// A single random parameter point in a large extension field is used for
/// **all** degrees: its per-degree ranks are re-verified against the
/// exact generic ranks (one redraw allowed), so every quotient basis,
/// reduction, and pairing matrix is consistent across degrees.
pub fn frobenius_check(
    form: &FormContext,
    max_degree: Option<u32>,
    rng: &mut dyn rand::RngCore,
) -> Result<FrobeniusReport> {
    if !matches!(form.dunkl().mode(), ParamMode::Symbolic) {
        return Err(Error::Config(
            "the Frobenius check runs at generic (symbolic) parameters".into(),
        ));
    }
    let scan = hilbert_series(form, max_degree, &mut *rng)?;
    let series = scan.series.clone();
    let top = series
        .degree()
        .ok_or_else(|| Error::Internal("the quotient contains the constants".into()))? as u32;
    let blocks: Vec<Arc<GramBlock>> = (0..=top).map(|d| form.block(d)).collect::<Result<_>>()?;

    let field = form.dunkl().group().field().clone();
    let dparam = blocks.iter().map(|b| b.max_param_degree()).max().unwrap_or(0);
    let nmax = blocks.iter().map(|b| b.dim()).max().unwrap_or(1);
    // Union bound over all scanned degrees.
    let ext = choose_extension(&field, dparam, nmax * (top as usize + 1))?;
    let emb = Embedding::new(&field, &ext)?;
    let m = form.dunkl().param_ring().m();

    let mut redraws = 0u32;
    let (point, mats) = loop {
        let point: Vec<Fq> = (0..m)
            .map(|_| ext.element(rng.gen_range(0..ext.q()) as u32))
            .collect();
        let mats: Vec<Mat> = blocks
            .iter()
            .map(|b| specialize_block(b, &emb, &point))
            .collect::<Result<_>>()?;
        let ok = mats
            .iter()
            .enumerate()
            .all(|(i, mat)| mat.rank() as u64 == series.coefficient(i));
        if ok {
            break (point, mats);
        }
        redraws += 1;
        if redraws > 1 {
            return Err(Error::Internal(
                "global specialization disagreed with exact ranks after a redraw".into(),
            ));
        }
    };

    // Quotient bases: non-pivot monomials of the RREF'd kernels, columns
    // in decreasing lexicographic order (pivot = lex-greatest monomial).
    let mut quotient_bases: Vec<Vec<usize>> = Vec::with_capacity(top as usize + 1);
    let mut kernel_rows: Vec<(Vec<usize>, Mat)> = Vec::with_capacity(top as usize + 1);
    for mat in &mats {
        let dim = mat.cols();
        let mut kmat = Mat::from_rows(&ext, mat.right_kernel_basis());
        let pivots = if kmat.rows() == 0 {
            Vec::new()
        } else {
            kmat.rref_in_place()
        };
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; dim];
            for &p in &pivots {
                s[p] = true;
            }
            s
        };
        let basis: Vec<usize> = (0..dim).filter(|&c| !pivot_set[c]).collect();
        quotient_bases.push(basis);
        kernel_rows.push((pivots, kmat));
    }
    for (i, basis) in quotient_bases.iter().enumerate() {
        if basis.len() as u64 != series.coefficient(i) {
            return Err(Error::Internal(
                "quotient basis size disagrees with the block rank".into(),
            ));
        }
    }

    // Reduction table at the top degree: column index -> coordinates over
    // the top quotient basis.
    let top_block = &blocks[top as usize];
    let top_basis_monos = top_block.basis();
    let top_quotient = &quotient_bases[top as usize];
    let (top_pivots, top_kmat) = &kernel_rows[top as usize];
    let col_of_mono: HashMap<u64, usize> = top_basis_monos
        .iter()
        .enumerate()
        .map(|(i, m)| (m.0, i))
        .collect();
    let quotient_pos: HashMap<usize, usize> = top_quotient
        .iter()
        .enumerate()
        .map(|(pos, &col)| (col, pos))
        .collect();
    let tdim = top_quotient.len();
    let mut reduction: Vec<Vec<Fq>> = vec![vec![ext.zero(); tdim]; top_basis_monos.len()];
    for (col, red) in reduction.iter_mut().enumerate() {
        if let Some(&pos) = quotient_pos.get(&col) {
            red[pos] = ext.one();
        } else {
            // Pivot column: x^p ≡ -Σ (kernel row entries at non-pivot
            // columns) in the quotient.
            let row_idx = top_pivots
                .iter()
                .position(|&p| p == col)
                .ok_or_else(|| Error::Internal("pivot column without a kernel row".into()))?;
            for (pos, &qcol) in top_quotient.iter().enumerate() {
                red[pos] = -top_kmat.get(row_idx, qcol);
            }
        }
    }

    // Pairing nondegeneracy per degree.
    let mut pairings = Vec::with_capacity(top as usize + 1);
    for i in 0..=top {
        let j = top - i;
        let li = &quotient_bases[i as usize];
        let lj = &quotient_bases[j as usize];
        let bi = blocks[i as usize].basis();
        let bj = blocks[j as usize].basis();
        let pair_coord = |r: usize, v: usize, w: usize| -> Result<Fq> {
            let prod = bi[li[r]].mul(&bj[lj[v]]);
            let col = *col_of_mono
                .get(&prod.0)
                .ok_or_else(|| Error::Internal("product monomial outside the top basis".into()))?;
            Ok(reduction[col][w].clone())
        };
        let mut err: Option<Error> = None;
        let left = Mat::from_fn(&ext, li.len(), lj.len() * tdim, |r, c| {
            match pair_coord(r, c / tdim, c % tdim) {
                Ok(v) => v,
                Err(e) => {
                    err.get_or_insert(e);
                    ext.zero()
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        let mut err: Option<Error> = None;
        let right = Mat::from_fn(&ext, lj.len(), li.len() * tdim, |r, c| {
            match pair_coord(c / tdim, r, c % tdim) {
                Ok(v) => v,
                Err(e) => {
                    err.get_or_insert(e);
                    ext.zero()
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        pairings.push(PairingCheck {
            degree: i,
            left_nondegenerate: left.rank() == li.len(),
            right_nondegenerate: right.rank() == lj.len(),
        });
    }

    let palindromic = (0..=top as usize)
        .all(|i| series.coefficient(i) == series.coefficient(top as usize - i));
    let top_dim = series.coefficient(top as usize);
    let frobenius = top_dim == 1
        && palindromic
        && pairings
            .iter()
            .all(|p| p.left_nondegenerate && p.right_nondegenerate);
    Ok(FrobeniusReport {
        series,
        stop: scan.stop,
        top_degree: top,
        top_dim,
        palindromic,
        pairings,
        frobenius,
        extension_field: ext,
        point,
        redraws,
    })
}

// ---------------------------------------------------------------------------
// t = 0 versus t = 1 comparison
// ---------------------------------------------------------------------------

pub struct H0H1Report {
    pub h0: HilbertSeries,
    pub h1_raw: HilbertSeries,
    pub h1_reduced: HilbertSeries,
    /// `h0[i] ≤ reduced(h1)[i]` for every `i`.
    pub termwise_le: bool,
    pub stop0: StopReason,
    pub stop1: StopReason,
}

/// Compare the generic `t = 0` Hilbert series against the reduced generic
/// `t = 1` series, termwise.
pub fn compare_h0_h1(
    spec: &GroupSpec,
    max_degree: Option<u32>,
    rng: &mut impl Rng,
) -> Result<H0H1Report> {
    use crate::dunkl::DunklContext;
    let scan_for = |t: u64, rng: &mut dyn rand::RngCore| -> Result<ScanResult> {
        let group = GroupData::new(spec.clone())?;
        let ctx = DunklContext::new(group, t, ParamMode::Symbolic)?;
        let form = FormContext::new(ctx);
        hilbert_series(&form, max_degree, rng)
    };
    let scan0 = scan_for(0, &mut *rng)?;
    let scan1 = scan_for(1, &mut *rng)?;
    let p = spec.q; // reduced by (1+…+z^{p-1})^dim with p the characteristic
    let (p, _) = crate::groups::factor_prime_power(p)?;
    let dim = spec.dim();
    let h1_reduced = reduced_series(&scan1.series, p, dim)?;
    let len = scan0.series.coeffs().len().max(h1_reduced.coeffs().len());
    let termwise_le =
        (0..len).all(|i| scan0.series.coefficient(i) <= h1_reduced.coefficient(i));
    Ok(H0H1Report {
        h0: scan0.series,
        h1_raw: scan1.series,
        h1_reduced,
        termwise_le,
        stop0: scan0.stop,
        stop1: scan1.stop,
    })
}
