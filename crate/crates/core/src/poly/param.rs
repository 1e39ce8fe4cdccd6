//! Symbolic class parameters: the polynomial ring `F_q[c_1, …, c_m]` in
//! one parameter per reflection class.
//!
//! A [`ParamScalar`] is a sparse polynomial in the class parameters with
//! `F_q` coefficients, used as the coefficient ring for "generic c"
//! computations.  Terms are kept in strictly decreasing lexicographic
//! order (`c_1 > c_2 > …`), packed one byte per exponent into a `u128`.
//!
//! Multiplication and exact division switch to dense accumulation grids
//! when `m ≤ 2`; fraction-free elimination on the deeper `SL_2` blocks
//! multiplies polynomials with thousands of terms, where sparse merging is
//! too slow.  Both paths are exact and produce identical canonical output.

use crate::error::{Error, Result};
use crate::gf::{Embedding, Field, Fq};
use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Maximum number of class parameters.
pub const MAX_PARAMS: usize = 16;

/// Largest total degree the dense multiplication grid covers.
const DENSE_DEG_CAP: u32 = 2047;

// ---------------------------------------------------------------------------
// parameter monomials
// ---------------------------------------------------------------------------

/// A packed parameter monomial: one byte per exponent, `c_1` most
/// significant, so `u128` comparison is lexicographic comparison.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CMono(pub u128);

impl CMono {
    pub fn one() -> CMono {
        CMono(0)
    }

    pub fn var(j: usize) -> CMono {
        assert!(j < MAX_PARAMS);
        CMono(1u128 << (8 * (MAX_PARAMS - 1 - j)))
    }

    pub fn pack(exps: &[u32]) -> CMono {
        assert!(exps.len() <= MAX_PARAMS);
        let mut v = 0u128;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e < 256, "parameter exponent {e} exceeds the 255 cap");
            v |= (e as u128) << (8 * (MAX_PARAMS - 1 - i));
        }
        CMono(v)
    }

    #[inline]
    pub fn exp(&self, j: usize) -> u32 {
        ((self.0 >> (8 * (MAX_PARAMS - 1 - j))) & 0xff) as u32
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        let mut v = self.0;
        let mut d = 0u32;
        while v != 0 {
            d += (v & 0xff) as u32;
            v >>= 8;
        }
        d
    }

    pub fn is_one(&self) -> bool {
        self.0 == 0
    }

    pub fn mul(&self, rhs: &CMono) -> CMono {
        debug_assert!(
            (0..MAX_PARAMS).all(|j| self.exp(j) + rhs.exp(j) < 256),
            "parameter exponent overflow"
        );
        CMono(self.0 + rhs.0)
    }

    pub fn try_div(&self, rhs: &CMono) -> Option<CMono> {
        let mut v = 0u128;
        for j in 0..MAX_PARAMS {
            let (a, b) = (self.exp(j), rhs.exp(j));
            if a < b {
                return None;
            }
            v |= ((a - b) as u128) << (8 * (MAX_PARAMS - 1 - j));
        }
        Some(CMono(v))
    }
}

impl fmt::Debug for CMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exps: Vec<u32> = (0..MAX_PARAMS).map(|j| self.exp(j)).collect();
        write!(f, "c{exps:?}")
    }
}

// ---------------------------------------------------------------------------
// the ring handle
// ---------------------------------------------------------------------------

/// The polynomial ring `F_q[c_1, …, c_m]` of class parameters.
pub struct ParamRing {
    field: Field,
    m: usize,
    names: Vec<String>,
}

impl ParamRing {
    pub fn new(field: Field, names: Vec<String>) -> Arc<ParamRing> {
        assert!(
            !names.is_empty() && names.len() <= MAX_PARAMS,
            "1..={MAX_PARAMS} parameters supported"
        );
        Arc::new(ParamRing {
            field,
            m: names.len(),
            names,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn same_ring(a: &Arc<ParamRing>, b: &Arc<ParamRing>) -> bool {
        Arc::ptr_eq(a, b) || (a.field == b.field && a.names == b.names)
    }
}

impl fmt::Debug for ParamRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[{}]", self.field.q(), self.names.join(","))
    }
}

// ---------------------------------------------------------------------------
// dense scratch buffers (thread-local, reused across products)
// ---------------------------------------------------------------------------

struct Scratch {
    vals: Vec<u32>,
    stamp: Vec<u32>,
    gen: u32,
    touched: Vec<u32>,
}

impl Scratch {
    fn new() -> Scratch {
        Scratch {
            vals: Vec::new(),
            stamp: Vec::new(),
            gen: 0,
            touched: Vec::new(),
        }
    }
    fn begin(&mut self, size: usize) {
        if self.vals.len() < size {
            self.vals.resize(size, 0);
            self.stamp.resize(size, 0);
        }
        self.gen = self.gen.wrapping_add(1);
        if self.gen == 0 {
            // Stamp wrap-around: reset everything once per 2^32 uses.
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.gen = 1;
        }
        self.touched.clear();
    }
    #[inline]
    fn slot(&mut self, idx: u32) -> &mut u32 {
        let i = idx as usize;
        if self.stamp[i] != self.gen {
            self.stamp[i] = self.gen;
            self.vals[i] = 0;
            self.touched.push(idx);
        }
        &mut self.vals[i]
    }
}

thread_local! {
    static MUL_SCRATCH: RefCell<Scratch> = RefCell::new(Scratch::new());
    static DIV_SCRATCH: RefCell<Scratch> = RefCell::new(Scratch::new());
}

// ---------------------------------------------------------------------------
// the scalar
// ---------------------------------------------------------------------------

/// A polynomial in the class parameters with `F_q` coefficients; the
/// coefficient ring for symbolic (generic-`c`) computations.
#[derive(Clone)]
pub struct ParamScalar {
    ring: Arc<ParamRing>,
    /// `(monomial, coefficient index)`, strictly decreasing in the monomial.
    terms: Vec<(CMono, u32)>,
}

impl PartialEq for ParamScalar {
    fn eq(&self, other: &Self) -> bool {
        ParamRing::same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}
impl Eq for ParamScalar {}

impl ParamScalar {
    pub fn zero(ring: &Arc<ParamRing>) -> ParamScalar {
        ParamScalar {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<ParamRing>, value: &Fq) -> ParamScalar {
        assert!(value.field() == ring.field(), "field mismatch");
        let mut terms = Vec::new();
        if !value.is_zero() {
            terms.push((CMono::one(), value.idx()));
        }
        ParamScalar {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn one(ring: &Arc<ParamRing>) -> ParamScalar {
        Self::constant(ring, &ring.field().one())
    }

    /// The parameter `c_{j+1}` (0-based index).
    pub fn var(ring: &Arc<ParamRing>, j: usize) -> ParamScalar {
        assert!(j < ring.m(), "parameter index out of range");
        ParamScalar {
            ring: ring.clone(),
            terms: vec![(CMono::var(j), 1)],
        }
    }

    pub fn from_terms(ring: &Arc<ParamRing>, mut terms: Vec<(CMono, u32)>) -> ParamScalar {
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let field = ring.field().clone();
        let mut merged: Vec<(CMono, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = merged.last_mut() {
                if last.0 == m {
                    last.1 = field.add_idx(last.1, c);
                    continue;
                }
            }
            merged.push((m, c));
        }
        merged.retain(|&(_, c)| c != 0);
        ParamScalar {
            ring: ring.clone(),
            terms: merged,
        }
    }

    pub fn ring(&self) -> &Arc<ParamRing> {
        &self.ring
    }
    pub fn terms(&self) -> &[(CMono, u32)] {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(value)` if the scalar is a constant (including zero).
    pub fn as_constant(&self) -> Option<Fq> {
        match self.terms.as_slice() {
            [] => Some(self.ring.field().zero()),
            [(m, c)] if m.is_one() => Some(self.ring.field().element(*c)),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(CMono, u32)> {
        self.terms.first().copied()
    }

    pub fn coefficient_of(&self, mono: &CMono) -> u32 {
        self.terms
            .binary_search_by(|(m, _)| mono.0.cmp(&m.0))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    pub fn add(&self, rhs: &ParamScalar) -> ParamScalar {
        debug_assert!(ParamRing::same_ring(&self.ring, &rhs.ring));
        let field = self.ring.field();
        let mut terms = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            let (ma, ca) = self.terms[i];
            let (mb, cb) = rhs.terms[j];
            match mb.0.cmp(&ma.0) {
                std::cmp::Ordering::Less => {
                    terms.push((ma, ca));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    terms.push((mb, cb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = field.add_idx(ca, cb);
                    if s != 0 {
                        terms.push((ma, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&rhs.terms[j..]);
        ParamScalar {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn neg(&self) -> ParamScalar {
        let field = self.ring.field();
        ParamScalar {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|&(m, c)| (m, field.neg_idx(c))).collect(),
        }
    }

    pub fn sub(&self, rhs: &ParamScalar) -> ParamScalar {
        self.add(&rhs.neg())
    }

    pub fn mul_base(&self, k: &Fq) -> ParamScalar {
        assert!(k.field() == self.ring.field());
        if k.is_zero() {
            return ParamScalar::zero(&self.ring);
        }
        let field = self.ring.field();
        ParamScalar {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|&(m, c)| (m, field.mul_idx(c, k.idx())))
                .collect(),
        }
    }

    /// Dense-grid index of a 2-parameter monomial: `e_1 * width + e_2`.
    #[inline]
    fn dense_idx(m: CMono, width: u32) -> u32 {
        m.exp(0) * width + m.exp(1)
    }

    fn dense_mono(idx: u32, width: u32) -> CMono {
        CMono::pack(&[idx / width, idx % width])
    }

    pub fn mul(&self, rhs: &ParamScalar) -> ParamScalar {
        debug_assert!(ParamRing::same_ring(&self.ring, &rhs.ring));
        if self.is_zero() || rhs.is_zero() {
            return ParamScalar::zero(&self.ring);
        }
        let field = self.ring.field().clone();
        // Single-term fast path: shift and scale stays sorted.
        if rhs.terms.len() == 1 {
            let (m, c) = rhs.terms[0];
            let fq = field.element(c);
            return self.shift_scale(&m, &fq);
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms[0];
            let fq = field.element(c);
            return rhs.shift_scale(&m, &fq);
        }

        let prod_deg = self.total_degree() + rhs.total_degree();
        if self.ring.m() <= 2 && prod_deg <= DENSE_DEG_CAP {
            // Dense accumulation: one byte-pair grid, stamped and reused.
            let width = prod_deg + 1;
            let size = (width * width) as usize;
            return MUL_SCRATCH.with(|cell| {
                let mut s = cell.borrow_mut();
                s.begin(size);
                for &(ma, ca) in &self.terms {
                    let ia = Self::dense_idx(ma, width);
                    for &(mb, cb) in &rhs.terms {
                        let ib = Self::dense_idx(mb, width);
                        let prod = field.mul_idx(ca, cb);
                        let slot = s.slot(ia + ib);
                        *slot = field.add_idx(*slot, prod);
                    }
                }
                let mut touched = std::mem::take(&mut s.touched);
                touched.sort_unstable_by(|a, b| b.cmp(a));
                let terms = touched
                    .iter()
                    .filter(|&&i| s.vals[i as usize] != 0)
                    .map(|&i| (Self::dense_mono(i, width), s.vals[i as usize]))
                    .collect();
                s.touched = touched;
                ParamScalar {
                    ring: self.ring.clone(),
                    terms,
                }
            });
        }

        // Sparse fallback: hash accumulation, then canonical sort.
        let mut acc: HashMap<u128, u32> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &rhs.terms {
                let m = ma.mul(&mb);
                let prod = field.mul_idx(ca, cb);
                let e = acc.entry(m.0).or_insert(0);
                *e = field.add_idx(*e, prod);
            }
        }
        let mut terms: Vec<(CMono, u32)> = acc
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(m, c)| (CMono(m), c))
            .collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        ParamScalar {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// `self * mono * k` (single-term product; preserves sortedness).
    fn shift_scale(&self, mono: &CMono, k: &Fq) -> ParamScalar {
        if k.is_zero() {
            return ParamScalar::zero(&self.ring);
        }
        let field = self.ring.field();
        ParamScalar {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|&(m, c)| (m.mul(mono), field.mul_idx(c, k.idx())))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> ParamScalar {
        let mut acc = ParamScalar::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division; `None` if `rhs` does not divide `self`.
    pub fn div_exact(&self, rhs: &ParamScalar) -> Option<ParamScalar> {
        debug_assert!(ParamRing::same_ring(&self.ring, &rhs.ring));
        assert!(!rhs.is_zero(), "division by zero");
        if self.is_zero() {
            return Some(ParamScalar::zero(&self.ring));
        }
        let field = self.ring.field().clone();
        let (dlead_m, dlead_c) = rhs.leading().unwrap();
        let dlead_inv = field.inv_idx(dlead_c);

        // Single-term divisor: divide termwise.
        if rhs.terms.len() == 1 {
            let mut terms = Vec::with_capacity(self.terms.len());
            for &(m, c) in &self.terms {
                let qm = m.try_div(&dlead_m)?;
                terms.push((qm, field.mul_idx(c, dlead_inv)));
            }
            return Some(ParamScalar {
                ring: self.ring.clone(),
                terms,
            });
        }

        let self_deg = self.total_degree();
        if self.ring.m() <= 2 && self_deg <= DENSE_DEG_CAP && rhs.terms.len() > 1 {
            // Dense long division: the remainder lives in a stamped grid,
            // scanned from the top index downward (top index = lex lead).
            let width = self_deg + 1;
            let size = (width * width) as usize;
            return DIV_SCRATCH.with(|cell| {
                let mut s = cell.borrow_mut();
                s.begin(size);
                for &(m, c) in &self.terms {
                    *s.slot(Self::dense_idx(m, width)) = c;
                }
                let dterms: Vec<(u32, u32)> = rhs
                    .terms
                    .iter()
                    .map(|&(m, c)| (Self::dense_idx(m, width), c))
                    .collect();
                let dlead_idx = dterms[0].0;
                let mut quo: Vec<(CMono, u32)> = Vec::new();
                let mut ptr = Self::dense_idx(self.terms[0].0, width) as i64;
                loop {
                    // Find the current leading nonzero cell.
                    while ptr >= 0 {
                        let i = ptr as usize;
                        if s.stamp[i] == s.gen && s.vals[i] != 0 {
                            break;
                        }
                        ptr -= 1;
                    }
                    if ptr < 0 {
                        return Some(ParamScalar {
                            ring: self.ring.clone(),
                            terms: quo,
                        });
                    }
                    let lead_idx = ptr as u32;
                    let lead_mono = Self::dense_mono(lead_idx, width);
                    let qm = lead_mono.try_div(&dlead_m)?;
                    let qi = Self::dense_idx(qm, width);
                    // Dense index arithmetic must agree with monomial
                    // arithmetic, i.e. no e_2 underflow across rows.
                    if qi + dlead_idx != lead_idx {
                        return None;
                    }
                    let qc = field.mul_idx(s.vals[lead_idx as usize], dlead_inv);
                    quo.push((qm, qc));
                    for &(di, dc) in &dterms {
                        let sub = field.mul_idx(qc, dc);
                        let slot = s.slot(qi + di);
                        *slot = field.sub_idx(*slot, sub);
                    }
                }
            });
        }

        // Sparse long division.
        let mut rem = self.clone();
        let mut quo: Vec<(CMono, u32)> = Vec::new();
        while let Some((lm, lc)) = rem.leading() {
            let qm = lm.try_div(&dlead_m)?;
            let qc = field.mul_idx(lc, dlead_inv);
            quo.push((qm, qc));
            let single = ParamScalar {
                ring: self.ring.clone(),
                terms: vec![(qm, qc)],
            };
            rem = rem.sub(&single.mul(rhs));
        }
        Some(ParamScalar {
            ring: self.ring.clone(),
            terms: quo,
        })
    }

    /// Evaluate at a point of the base field.
    pub fn evaluate(&self, point: &[Fq]) -> Fq {
        let field = self.ring.field().clone();
        assert_eq!(point.len(), self.ring.m(), "point arity mismatch");
        for x in point {
            assert!(x.field() == &field, "evaluation point field mismatch");
        }
        let pows = self.power_tables(point, &field);
        let mut acc = 0u32;
        for &(m, c) in &self.terms {
            let mut t = c;
            for (j, tab) in pows.iter().enumerate() {
                let e = m.exp(j) as usize;
                if e > 0 {
                    t = field.mul_idx(t, tab[e]);
                }
            }
            acc = field.add_idx(acc, t);
        }
        field.element(acc)
    }

    /// Evaluate at a point of an extension field, mapping coefficients
    /// through the embedding.
    pub fn evaluate_embedded(&self, emb: &Embedding, point: &[Fq]) -> Fq {
        assert!(emb.small() == self.ring.field(), "embedding source mismatch");
        let big = emb.big().clone();
        assert_eq!(point.len(), self.ring.m(), "point arity mismatch");
        for x in point {
            assert!(x.field() == &big, "evaluation point field mismatch");
        }
        let pows = self.power_tables(point, &big);
        let mut acc = 0u32;
        for &(m, c) in &self.terms {
            let mut t = emb.map(&self.ring.field().element(c)).idx();
            for (j, tab) in pows.iter().enumerate() {
                let e = m.exp(j) as usize;
                if e > 0 {
                    t = big.mul_idx(t, tab[e]);
                }
            }
            acc = big.add_idx(acc, t);
        }
        big.element(acc)
    }

    fn power_tables(&self, point: &[Fq], field: &Field) -> Vec<Vec<u32>> {
        let m = self.ring.m();
        let mut maxes = vec![0u32; m];
        for &(mono, _) in &self.terms {
            for (j, mx) in maxes.iter_mut().enumerate() {
                *mx = (*mx).max(mono.exp(j));
            }
        }
        (0..m)
            .map(|j| {
                let mut tab = Vec::with_capacity(maxes[j] as usize + 1);
                tab.push(1u32);
                for _ in 0..maxes[j] {
                    let last = *tab.last().unwrap();
                    tab.push(field.mul_idx(last, point[j].idx()));
                }
                tab
            })
            .collect()
    }

    /// Ring homomorphism into another parameter ring over the same field:
    /// `c_j ↦ images[j]`.
    pub fn substitute(&self, target: &Arc<ParamRing>, images: &[ParamScalar]) -> ParamScalar {
        assert_eq!(images.len(), self.ring.m(), "one image per parameter");
        for img in images {
            assert!(ParamRing::same_ring(img.ring(), target));
        }
        assert!(self.ring.field() == target.field(), "field mismatch");
        let mut pows: Vec<Vec<ParamScalar>> = (0..self.ring.m())
            .map(|_| vec![ParamScalar::one(target)])
            .collect();
        let mut acc = ParamScalar::zero(target);
        for &(m, c) in &self.terms {
            let mut t = ParamScalar::constant(target, &self.ring.field().element(c));
            for (j, tab) in pows.iter_mut().enumerate() {
                let e = m.exp(j) as usize;
                if e == 0 {
                    continue;
                }
                while tab.len() <= e {
                    let next = tab.last().unwrap().mul(&images[j]);
                    tab.push(next);
                }
                t = t.mul(&tab[e]);
            }
            acc = acc.add(&t);
        }
        acc
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let field = self.ring.field();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|&(m, c)| {
                let coef = field.element(c);
                let cs = coef.render();
                let vars: Vec<String> = (0..self.ring.m())
                    .filter_map(|j| match m.exp(j) {
                        0 => None,
                        1 => Some(self.ring.names()[j].clone()),
                        e => Some(format!("{}^{}", self.ring.names()[j], e)),
                    })
                    .collect();
                if vars.is_empty() {
                    cs
                } else if cs == "1" {
                    vars.join("*")
                } else if coef.render_is_composite() {
                    format!("({})*{}", cs, vars.join("*"))
                } else {
                    format!("{}*{}", cs, vars.join("*"))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl super::Scalar for ParamScalar {
    fn is_zero(&self) -> bool {
        ParamScalar::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        ParamScalar::zero(&self.ring)
    }
    fn one_like(&self) -> Self {
        ParamScalar::one(&self.ring)
    }
    fn add(&self, rhs: &Self) -> Self {
        ParamScalar::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        ParamScalar::sub(self, rhs)
    }
    fn neg(&self) -> Self {
        ParamScalar::neg(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        ParamScalar::mul(self, rhs)
    }
    fn from_base(&self, a: &Fq) -> Self {
        ParamScalar::constant(&self.ring, a)
    }
    fn nat(&self, k: u64) -> Self {
        ParamScalar::constant(&self.ring, &self.ring.field().from_u64(k))
    }
    fn render(&self) -> String {
        ParamScalar::render(self)
    }
    fn render_is_composite(&self) -> bool {
        // A sum needs parentheses; so does a bare constant whose field
        // rendering is itself a sum.  A single parameter term already
        // parenthesizes a composite coefficient.
        self.terms.len() > 1
            || self.terms.first().is_some_and(|&(m, c)| {
                m.is_one() && self.ring.field().element(c).render_is_composite()
            })
    }
}

/// Does the affine-linear parameter polynomial `ell` divide `p`?
///
/// `ell` must have total degree exactly 1.  The test substitutes the
/// solved hyperplane equation into `p` and checks the result is zero,
/// which is equivalent to divisibility since degree-1 polynomials are
/// irreducible over a field.
pub fn divisibility_test(ell: &ParamScalar, p: &ParamScalar) -> Result<bool> {
    if ell.total_degree() != 1 {
        return Err(Error::Config(
            "divisibility test requires a linear (degree-1) parameter polynomial".into(),
        ));
    }
    let ring = ell.ring().clone();
    assert!(ParamRing::same_ring(&ring, p.ring()), "ring mismatch");
    let field = ring.field().clone();
    // Smallest parameter with a nonzero linear coefficient.
    let jstar = (0..ring.m())
        .find(|&j| ell.coefficient_of(&CMono::var(j)) != 0)
        .expect("degree-1 polynomial has a linear term");
    let a = field.element(ell.coefficient_of(&CMono::var(jstar)));
    // Solve ell = 0 for c_{jstar}:  c_{jstar} = -(ell - a c_{jstar}) / a.
    let rest = ell.sub(&ParamScalar::var(&ring, jstar).mul_base(&a));
    let image = rest.mul_base(&-&a.inv());
    let images: Vec<ParamScalar> = (0..ring.m())
        .map(|j| {
            if j == jstar {
                image.clone()
            } else {
                ParamScalar::var(&ring, j)
            }
        })
        .collect();
    Ok(p.substitute(&ring, &images).is_zero())
}
