//! The contravariant form on the polynomial representation: graded Gram
//! blocks, exact generic-rank computation, and kernel extraction.
//!
//! The degree-`d` Gram block `B_d` is indexed by the monomial basis of
//! degree `d` (decreasing lexicographic order) and defined by
//!
//! ```text
//!   B_d[a][b] = constant term of  D^{word(b)} x^a
//! ```
//!
//! where `D^{word(b)}` applies the Dunkl operator `D_j` once per power of
//! `x_j` in `x^b`.  Blocks are built by an incremental recurrence that
//! peels one operator at a time:  with `j = min support(b)`,
//!
//! ```text
//!   B_d[a][b] = Σ_m  [D_j x^a]_m · B_{d-1}[m][b - e_j]
//! ```
//!
//! which is an exact restatement of the iterated-word definition since
//! the coefficients of `D_j x^a` are exactly the degree-`(d-1)` expansion
//! of the first application.  A from-scratch evaluator over full words is
//! kept alongside for cross-checking.
//!
//! Generic ranks (symbolic parameter entries) are computed by
//! fraction-free Bareiss elimination on connected components of the
//! nonzero pattern, then certified against Gaussian elimination at a
//! random parameter point in an extension field large enough that a rank
//! drop is caught with probability > 1/2 per draw.

use crate::dunkl::{DunklContext, ParamMode};
use crate::error::{Error, Result};
use crate::gf::{Embedding, Field, Fq};
use crate::poly::{monomial_basis, ParamRing, ParamScalar, Polynomial, Scalar, XMono};
use crate::matrix::Mat;
use rand::Rng;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// Entries of a Gram block: symbolic in the class parameters, or values
/// in the base field at a specialized parameter point.
pub enum GramEntries {
    Symbolic(Vec<Vec<ParamScalar>>),
    Specialized(Vec<Vec<Fq>>),
}

/// A graded block of the contravariant form.
pub struct GramBlock {
    degree: u32,
    basis: Vec<XMono>,
    entries: GramEntries,
}

impl GramBlock {
    pub fn degree(&self) -> u32 {
        self.degree
    }
    /// Monomial basis, decreasing lexicographic.
    pub fn basis(&self) -> &[XMono] {
        &self.basis
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn entries(&self) -> &GramEntries {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        match &self.entries {
            GramEntries::Symbolic(rows) => rows.iter().flatten().all(|e| e.is_zero()),
            GramEntries::Specialized(rows) => rows.iter().flatten().all(|e| e.is_zero()),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        match &self.entries {
            GramEntries::Symbolic(rows) => {
                (0..n).all(|i| (0..i).all(|j| rows[i][j] == rows[j][i]))
            }
            GramEntries::Specialized(rows) => {
                (0..n).all(|i| (0..i).all(|j| rows[i][j] == rows[j][i]))
            }
        }
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.dim();
        match &self.entries {
            GramEntries::Symbolic(rows) => {
                (0..n).all(|i| (0..n).all(|j| i == j || rows[i][j].is_zero()))
            }
            GramEntries::Specialized(rows) => {
                (0..n).all(|i| (0..n).all(|j| i == j || rows[i][j].is_zero()))
            }
        }
    }

    /// Largest total degree in the class parameters over all entries
    /// (zero for specialized blocks).
    pub fn max_param_degree(&self) -> u32 {
        match &self.entries {
            GramEntries::Symbolic(rows) => rows
                .iter()
                .flatten()
                .map(|e| e.total_degree())
                .max()
                .unwrap_or(0),
            GramEntries::Specialized(_) => 0,
        }
    }

    /// Render all entries as strings (row-major).
    pub fn render_rows(&self) -> Vec<Vec<String>> {
        match &self.entries {
            GramEntries::Symbolic(rows) => rows
                .iter()
                .map(|r| r.iter().map(|e| e.render()).collect())
                .collect(),
            GramEntries::Specialized(rows) => rows
                .iter()
                .map(|r| r.iter().map(|e| e.render()).collect())
                .collect(),
        }
    }

    /// Are the diagonal entries of a symbolic block pairwise proportional
    /// with constants in the base field?  (Only meaningful for diagonal
    /// blocks.)
    pub fn diagonal_proportional(&self) -> Result<bool> {
        let GramEntries::Symbolic(rows) = &self.entries else {
            return Err(Error::Config(
                "proportionality profile applies to symbolic blocks".into(),
            ));
        };
        let field = {
            let Some(first_row) = rows.first() else {
                return Ok(true);
            };
            first_row[0].ring().field().clone()
        };
        let diag: Vec<&ParamScalar> = (0..self.dim()).map(|i| &rows[i][i]).collect();
        let Some(&d0) = diag.iter().find(|e| !e.is_zero()) else {
            return Ok(true);
        };
        let a0 = field.element(d0.leading().unwrap().1);
        for &di in &diag {
            if di.is_zero() {
                continue;
            }
            let ai = field.element(di.leading().unwrap().1);
            // d_i · a_0 == d_0 · a_i  ⇔  d_i = (a_i / a_0) d_0.
            if di.mul_base(&a0) != d0.mul_base(&ai) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Restrict a symbolic block to the locus where every class parameter
    /// takes the same value: entries are mapped into the one-parameter
    /// ring `c` by `c_i ↦ c`.  The basis is unchanged.
    pub fn restrict_to_equal_parameters(&self) -> Result<GramBlock> {
        let GramEntries::Symbolic(rows) = &self.entries else {
            return Err(Error::Config(
                "the equal-parameter restriction applies to symbolic blocks".into(),
            ));
        };
        let source_ring = rows
            .first()
            .and_then(|r| r.first())
            .map(|e| e.ring().clone())
            .ok_or_else(|| Error::Internal("empty Gram block".into()))?;
        let target = ParamRing::new(source_ring.field().clone(), vec!["c".to_string()]);
        let c = ParamScalar::var(&target, 0);
        let images = vec![c; source_ring.m()];
        let mapped: Vec<Vec<ParamScalar>> = rows
            .iter()
            .map(|r| r.iter().map(|e| e.substitute(&target, &images)).collect())
            .collect();
        Ok(GramBlock {
            degree: self.degree,
            basis: self.basis.clone(),
            entries: GramEntries::Symbolic(mapped),
        })
    }

    /// Does the linear parameter polynomial `ell` divide every entry of a
    /// symbolic block?
    pub fn divisible_by(&self, ell: &ParamScalar) -> Result<bool> {
        let GramEntries::Symbolic(rows) = &self.entries else {
            return Err(Error::Config(
                "divisibility profile applies to symbolic blocks".into(),
            ));
        };
        for row in rows {
            for e in row {
                if e.is_zero() {
                    continue;
                }
                if !crate::poly::divisibility_test(ell, e)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Gram-block builder and cache on top of a Dunkl context.
pub struct FormContext {
    dunkl: DunklContext,
    /// Blocks by degree, built incrementally: `blocks[d]` is `B_d`.
    blocks: Mutex<Vec<Arc<GramBlock>>>,
}

impl FormContext {
    pub fn new(dunkl: DunklContext) -> FormContext {
        FormContext {
            dunkl,
            blocks: Mutex::new(Vec::new()),
        }
    }

    pub fn dunkl(&self) -> &DunklContext {
        &self.dunkl
    }

    /// The degree-`d` Gram block (cached; builds lower degrees on demand).
    pub fn block(&self, d: u32) -> Result<Arc<GramBlock>> {
        let mut blocks = self.blocks.lock().unwrap();
        while blocks.len() <= d as usize {
            let next = self.build_next(&blocks)?;
            blocks.push(Arc::new(next));
        }
        Ok(blocks[d as usize].clone())
    }

    fn build_next(&self, blocks: &[Arc<GramBlock>]) -> Result<GramBlock> {
        let n = self.dunkl.dim();
        let d = blocks.len() as u32;
        if d == 0 {
            let basis = vec![XMono::one()];
            let entries = match self.dunkl.mode() {
                ParamMode::Symbolic => GramEntries::Symbolic(vec![vec![ParamScalar::one(
                    self.dunkl.param_ring(),
                )]]),
                ParamMode::Specialized(_) => GramEntries::Specialized(vec![vec![self
                    .dunkl
                    .group()
                    .field()
                    .one()]]),
            };
            return Ok(GramBlock {
                degree: 0,
                basis,
                entries,
            });
        }
        let prev = &blocks[d as usize - 1];
        let basis = monomial_basis(n, d);
        // A zero block forces all later blocks to zero: every entry of the
        // recurrence is a combination of previous-block entries.
        if prev.is_zero() {
            let dim = basis.len();
            let entries = match self.dunkl.mode() {
                ParamMode::Symbolic => {
                    let z = ParamScalar::zero(self.dunkl.param_ring());
                    GramEntries::Symbolic(vec![vec![z; dim]; dim])
                }
                ParamMode::Specialized(_) => {
                    let z = self.dunkl.group().field().zero();
                    GramEntries::Specialized(vec![vec![z; dim]; dim])
                }
            };
            return Ok(GramBlock {
                degree: d,
                basis,
                entries,
            });
        }

        let entries = match (&prev.entries, self.dunkl.mode()) {
            (GramEntries::Symbolic(prev_rows), ParamMode::Symbolic) => {
                let one = ParamScalar::one(self.dunkl.param_ring());
                let rows = self.recurrence_rows(
                    &basis,
                    prev.basis(),
                    prev_rows,
                    &one,
                    |j, f| self.dunkl.apply_symbolic(j, f),
                )?;
                GramEntries::Symbolic(rows)
            }
            (GramEntries::Specialized(prev_rows), ParamMode::Specialized(_)) => {
                let one = self.dunkl.group().field().one();
                let rows = self.recurrence_rows(
                    &basis,
                    prev.basis(),
                    prev_rows,
                    &one,
                    |j, f| self.dunkl.apply_at(j, f),
                )?;
                GramEntries::Specialized(rows)
            }
            _ => {
                return Err(Error::Internal(
                    "block cache mode diverged from context mode".into(),
                ))
            }
        };
        Ok(GramBlock {
            degree: d,
            basis,
            entries,
        })
    }

    /// One step of the peeling recurrence, generic over the entry ring.
    fn recurrence_rows<C: Scalar>(
        &self,
        basis: &[XMono],
        prev_basis: &[XMono],
        prev: &[Vec<C>],
        one: &C,
        apply: impl Fn(usize, &Polynomial<C>) -> Result<Polynomial<C>>,
    ) -> Result<Vec<Vec<C>>> {
        let n = self.dunkl.dim();
        let prev_index: HashMap<u64, usize> = prev_basis
            .iter()
            .enumerate()
            .map(|(i, m)| (m.0, i))
            .collect();
        // Peeled variable and reduced column for each column monomial.
        let peeled: Vec<(usize, usize)> = basis
            .iter()
            .map(|b| {
                let j = (0..n).find(|&j| b.exp(j) > 0).expect("positive degree");
                let reduced = b.try_div(&XMono::var(j)).expect("exponent is positive");
                (j, prev_index[&reduced.0])
            })
            .collect();
        let mut rows: Vec<Vec<C>> = Vec::with_capacity(basis.len());
        for a in basis {
            let mono = Polynomial::monomial(n, *a, one.clone());
            let images: Vec<Polynomial<C>> =
                (0..n).map(|j| apply(j, &mono)).collect::<Result<_>>()?;
            let mut row = Vec::with_capacity(basis.len());
            for &(j, reduced_col) in &peeled {
                let mut acc = one.zero_like();
                for (m, coef) in images[j].terms() {
                    let r = prev_index[&m.0];
                    let pe = &prev[r][reduced_col];
                    if pe.is_zero() {
                        continue;
                    }
                    acc = acc.add(&coef.mul(pe));
                }
                row.push(acc);
            }
            rows.push(row);
        }
        Ok(rows)
    }

    /// From-scratch block: apply the full operator word for each column
    /// monomial.  Exponential in the degree; used to cross-check the
    /// recurrence at small degrees.
    pub fn block_direct(&self, d: u32) -> Result<GramBlock> {
        let n = self.dunkl.dim();
        let basis = monomial_basis(n, d);
        let entries = match self.dunkl.mode() {
            ParamMode::Symbolic => {
                let one = ParamScalar::one(self.dunkl.param_ring());
                GramEntries::Symbolic(self.direct_rows(&basis, &one, |j, f| {
                    self.dunkl.apply_symbolic(j, f)
                })?)
            }
            ParamMode::Specialized(_) => {
                let one = self.dunkl.group().field().one();
                GramEntries::Specialized(self.direct_rows(&basis, &one, |j, f| {
                    self.dunkl.apply_at(j, f)
                })?)
            }
        };
        Ok(GramBlock {
            degree: d,
            basis,
            entries,
        })
    }

    fn direct_rows<C: Scalar>(
        &self,
        basis: &[XMono],
        one: &C,
        apply: impl Fn(usize, &Polynomial<C>) -> Result<Polynomial<C>>,
    ) -> Result<Vec<Vec<C>>> {
        let n = self.dunkl.dim();
        let mut rows = Vec::with_capacity(basis.len());
        for a in basis {
            let mut row = Vec::with_capacity(basis.len());
            for b in basis {
                let mut f = Polynomial::monomial(n, *a, one.clone());
                for j in 0..n {
                    for _ in 0..b.exp(j) {
                        f = apply(j, &f)?;
                    }
                }
                let c = f
                    .coefficient(&XMono::one())
                    .cloned()
                    .unwrap_or_else(|| one.zero_like());
                row.push(c);
            }
            rows.push(row);
        }
        Ok(rows)
    }
}

/// Where a reported kernel lives.
pub struct KernelReport {
    /// Base field, or the extension field of the specialization when the
    /// kernel could not be projected back.
    pub field: Field,
    /// True when the vectors are expressed in the base field.
    pub in_base_field: bool,
    /// Kernel vectors (RREF-canonical, sorted by pivot), coordinates
    /// matching the block's monomial basis.
    pub vectors: Vec<Vec<Fq>>,
}

/// The random specialization used to certify a generic rank.
pub struct SpecializationInfo {
    pub extension_field: Field,
    pub point: Vec<Fq>,
    pub redraws: u32,
}

/// Rank and kernel of one Gram block.
pub struct RankReport {
    pub degree: u32,
    pub dim: usize,
    pub rank: usize,
    pub kernel: KernelReport,
    /// `None` for specialized blocks (plain Gaussian elimination).
    pub specialization: Option<SpecializationInfo>,
}

/// Smallest extension `F_{q^k}` with `q^k > 2 · max(deg, 1) · dim`, which
/// bounds the failure probability of a random rank specialization below
/// 1/2 (a nonzero certifying minor has total degree at most `deg · dim`).
pub fn choose_extension(field: &Field, max_entry_degree: u32, dim: usize) -> Result<Field> {
    let bound = 2u128 * max_entry_degree.max(1) as u128 * dim.max(1) as u128;
    let q = field.q() as u128;
    let mut k = 1u32;
    let mut qk = q;
    while qk <= bound {
        k += 1;
        qk = qk
            .checked_mul(q)
            .ok_or_else(|| Error::Config("certification field is too large".into()))?;
        if qk > 1 << 20 {
            return Err(Error::Config(
                "certification field exceeds the supported field size".into(),
            ));
        }
    }
    Field::new(field.p(), field.r() * k)
}

/// Specialize a symbolic block at a parameter point with coordinates in
/// an extension field.
pub fn specialize_block(block: &GramBlock, emb: &Embedding, point: &[Fq]) -> Result<Mat> {
    let GramEntries::Symbolic(rows) = &block.entries else {
        return Err(Error::Config("block is already specialized".into()));
    };
    let dim = block.dim();
    let big = emb.big().clone();
    let mut mat = Mat::zero(&big, dim, dim);
    for (i, row) in rows.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            mat.set(i, j, e.evaluate_embedded(emb, point));
        }
    }
    Ok(mat)
}

/// Compute the rank and kernel of a Gram block.
///
/// Specialized blocks use plain Gaussian elimination over `F_q`.
/// Symbolic blocks use fraction-free Bareiss elimination on connected
/// components of the nonzero pattern (exact), then certify the result by
/// Gaussian elimination at a random parameter point in an extension
/// field; a disagreement triggers one redraw, and a persistent
/// disagreement is reported as an internal error.  The kernel is read off
/// at the certified point and projected to the base field when all
/// coordinates lie in it.
pub fn rank_kernel(block: &GramBlock, rng: &mut dyn rand::RngCore) -> Result<RankReport> {
    match &block.entries {
        GramEntries::Specialized(rows) => {
            let field = rows
                .first()
                .and_then(|r| r.first())
                .map(|e| e.field().clone())
                .ok_or_else(|| Error::Internal("empty Gram block".into()))?;
            let dim = block.dim();
            let mat = Mat::from_fn(&field, dim, dim, |i, j| rows[i][j].clone());
            let rank = mat.rank();
            let vectors = mat.right_kernel_basis();
            Ok(RankReport {
                degree: block.degree,
                dim,
                rank,
                kernel: KernelReport {
                    field,
                    in_base_field: true,
                    vectors,
                },
                specialization: None,
            })
        }
        GramEntries::Symbolic(rows) => rank_kernel_symbolic(block, rows, rng),
    }
}

fn rank_kernel_symbolic(
    block: &GramBlock,
    rows: &[Vec<ParamScalar>],
    rng: &mut dyn rand::RngCore,
) -> Result<RankReport> {
    let dim = block.dim();
    let ring = rows[0][0].ring().clone();
    let field = ring.field().clone();

    // Exact route: Bareiss on each connected component of the nonzero
    // pattern (row/column i and j are linked when entry (i,j) or (j,i)
    // is nonzero).
    let components = split_components(rows, dim);
    let mut sym_rank = 0usize;
    for comp in &components {
        sym_rank += bareiss_rank(rows, comp)?;
    }

    // Certification route: random point in a large enough extension.
    let ext = choose_extension(&field, block.max_param_degree(), dim)?;
    let emb = Embedding::new(&field, &ext)?;
    let m = ring.m();
    let mut redraws = 0u32;
    let (point, spec_mat) = loop {
        let point: Vec<Fq> = (0..m)
            .map(|_| ext.element(rng.gen_range(0..ext.q()) as u32))
            .collect();
        let spec_mat = specialize_block(block, &emb, &point)?;
        let spec_rank = spec_mat.rank();
        if spec_rank == sym_rank {
            break (point, spec_mat);
        }
        if spec_rank > sym_rank {
            // Specialization can only lower the rank; a higher rank means
            // the exact elimination is wrong.
            return Err(Error::Internal(format!(
                "rank certification failed at degree {}: exact {} < specialized {}",
                block.degree, sym_rank, spec_rank
            )));
        }
        redraws += 1;
        if redraws > 1 {
            return Err(Error::Internal(format!(
                "rank certification failed at degree {} after a redraw: exact {}, specialized {}",
                block.degree, sym_rank, spec_rank
            )));
        }
    };

    // Kernel at the certified point, projected back when possible.
    let vectors_ext = spec_mat.right_kernel_basis();
    let mut vectors_base: Option<Vec<Vec<Fq>>> = Some(Vec::new());
    'proj: for v in &vectors_ext {
        let mut back = Vec::with_capacity(v.len());
        for x in v {
            match emb.preimage(x) {
                Some(b) => back.push(b),
                None => {
                    vectors_base = None;
                    break 'proj;
                }
            }
        }
        if let Some(vb) = vectors_base.as_mut() {
            vb.push(back);
        }
    }
    let kernel = match vectors_base {
        Some(vectors) => KernelReport {
            field: field.clone(),
            in_base_field: true,
            vectors,
        },
        None => KernelReport {
            field: ext.clone(),
            in_base_field: false,
            vectors: vectors_ext,
        },
    };
    Ok(RankReport {
        degree: block.degree,
        dim,
        rank: sym_rank,
        kernel,
        specialization: Some(SpecializationInfo {
            extension_field: ext,
            point,
            redraws,
        }),
    })
}

/// Connected components of the nonzero pattern (union of index sets).
fn split_components(rows: &[Vec<ParamScalar>], dim: usize) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..dim).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..dim {
        for j in 0..dim {
            if i != j && !rows[i][j].is_zero() {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..dim {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut comps: Vec<Vec<usize>> = groups.into_values().collect();
    comps.sort_by_key(|c| c[0]);
    comps
}

/// Exact rank of the submatrix on `indices` by fraction-free Bareiss
/// elimination with full pivoting (pivot chosen to minimize term count,
/// then degree).  Entry at stage `k` is an exact `(k+1) × (k+1)` minor of
/// the original matrix, so each division is exact.
fn bareiss_rank(rows: &[Vec<ParamScalar>], indices: &[usize]) -> Result<usize> {
    let nn = indices.len();
    if nn == 1 {
        let e = &rows[indices[0]][indices[0]];
        return Ok(usize::from(!e.is_zero()));
    }
    let ring = rows[indices[0]][indices[0]].ring().clone();
    let mut m: Vec<Vec<ParamScalar>> = indices
        .iter()
        .map(|&i| indices.iter().map(|&j| rows[i][j].clone()).collect())
        .collect();
    let mut prev = ParamScalar::one(&ring);
    let mut rank = 0usize;
    for step in 0..nn {
        // Full pivoting: smallest (terms, degree, row, col) nonzero entry.
        let mut best: Option<(usize, u32, usize, usize)> = None;
        for i in step..nn {
            for j in step..nn {
                if m[i][j].is_zero() {
                    continue;
                }
                let key = (m[i][j].terms().len(), m[i][j].total_degree(), i, j);
                if best.map_or(true, |b| key < (b.0, b.1, b.2, b.3)) {
                    best = Some(key);
                }
            }
        }
        let Some((_, _, pi, pj)) = best else {
            break; // remaining submatrix is identically zero
        };
        m.swap(step, pi);
        for row in m.iter_mut() {
            row.swap(step, pj);
        }
        rank += 1;
        if step + 1 == nn {
            break;
        }
        let pivot = m[step][step].clone();
        for i in step + 1..nn {
            if m[i][step].is_zero() {
                // Still must rescale the row to keep the minor structure:
                // new = (pivot · old - 0) / prev.
                for j in step + 1..nn {
                    if m[i][j].is_zero() {
                        continue;
                    }
                    let num = pivot.mul(&m[i][j]);
                    m[i][j] = num.div_exact(&prev).ok_or_else(|| {
                        Error::Internal("fraction-free elimination division failed".into())
                    })?;
                }
                continue;
            }
            for j in step + 1..nn {
                let num = pivot.mul(&m[i][j]).sub(&m[i][step].mul(&m[step][j]));
                m[i][j] = num.div_exact(&prev).ok_or_else(|| {
                    Error::Internal("fraction-free elimination division failed".into())
                })?;
            }
            m[i][step] = ParamScalar::zero(&ring);
        }
        prev = pivot;
    }
    Ok(rank)
}
