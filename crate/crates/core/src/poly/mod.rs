//! Multivariate polynomials in the variables `x_1, …, x_n` (n ≤ 8) with
//! exact coefficients, plus the linear-form machinery the Dunkl operators
//! need (substitution along a group element, exact division by a linear
//! form with a remainder witness).
//!
//! Coefficients are anything implementing [`Scalar`]: either plain field
//! elements [`crate::gf::Fq`] (specialized runs) or symbolic class
//! parameters [`ParamScalar`] (generic runs).
//!
//! # Monomial order
//!
//! Terms are kept sorted in strictly *decreasing* lexicographic order with
//! `x_1 > x_2 > … > x_n`.  A monomial packs its exponent vector into a
//! `u64`, one byte per variable with `x_1` in the most significant byte, so
//! the packed integer order *is* the lex order.  Exponents are capped at
//! 255 (asserted).

mod param;

pub use param::{divisibility_test, CMono, ParamRing, ParamScalar, MAX_PARAMS};

use crate::error::Error;
use crate::gf::Fq;
use crate::matrix::Mat;
use std::fmt;

/// Maximum number of `x` variables a monomial can pack.
pub const MAX_VARS: usize = 8;

// ---------------------------------------------------------------------------
// monomials
// ---------------------------------------------------------------------------

/// A packed monomial in `x_1, …, x_n`: one byte per exponent, `x_1` most
/// significant, so `u64` comparison is lexicographic comparison.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct XMono(pub u64);

impl XMono {
    pub fn one() -> XMono {
        XMono(0)
    }

    pub fn pack(exps: &[u32]) -> XMono {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut v = 0u64;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e < 256, "exponent {e} exceeds the 255 cap");
            v |= (e as u64) << (8 * (MAX_VARS - 1 - i));
        }
        XMono(v)
    }

    /// The monomial `x_{j+1}` (0-based variable index).
    pub fn var(j: usize) -> XMono {
        assert!(j < MAX_VARS);
        XMono(1u64 << (8 * (MAX_VARS - 1 - j)))
    }

    pub fn unpack(&self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.exp(i)).collect()
    }

    #[inline]
    pub fn exp(&self, j: usize) -> u32 {
        ((self.0 >> (8 * (MAX_VARS - 1 - j))) & 0xff) as u32
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

    /// Product of monomials; asserts no per-variable overflow past 255.
    pub fn mul(&self, rhs: &XMono) -> XMono {
        let sum = self.0 + rhs.0;
        // Overflow in any byte would carry into the next; detect it.
        debug_assert!(
            (0..MAX_VARS).all(|j| self.exp(j) + rhs.exp(j) < 256),
            "monomial exponent overflow"
        );
        XMono(sum)
    }

    /// Exact division, if `rhs` divides `self`.
    pub fn try_div(&self, rhs: &XMono) -> Option<XMono> {
        let mut v = 0u64;
        for j in 0..MAX_VARS {
            let (a, b) = (self.exp(j), rhs.exp(j));
            if a < b {
                return None;
            }
            v |= ((a - b) as u64) << (8 * (MAX_VARS - 1 - j));
        }
        Some(XMono(v))
    }

    pub fn render(&self, n: usize) -> String {
        let mut parts = Vec::new();
        for j in 0..n {
            let e = self.exp(j);
            if e == 1 {
                parts.push(format!("x{}", j + 1));
            } else if e > 1 {
                parts.push(format!("x{}^{}", j + 1, e));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for XMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(MAX_VARS))
    }
}

/// All monomials of `n` variables and total degree exactly `d`, in
/// decreasing lexicographic order.
pub fn monomial_basis(n: usize, d: u32) -> Vec<XMono> {
    assert!(n >= 1 && n <= MAX_VARS, "1 ≤ n ≤ {MAX_VARS} required");
    assert!(d < 256, "degree exceeds the monomial cap");
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fn rec(out: &mut Vec<XMono>, exps: &mut Vec<u32>, pos: usize, rem: u32) {
        if pos + 1 == exps.len() {
            exps[pos] = rem;
            out.push(XMono::pack(exps));
            return;
        }
        for e in (0..=rem).rev() {
            exps[pos] = e;
            rec(out, exps, pos + 1, rem - e);
        }
    }
    rec(&mut out, &mut exps, 0, d);
    out
}

// ---------------------------------------------------------------------------
// the coefficient abstraction
// ---------------------------------------------------------------------------

/// Coefficient ring abstraction: field elements for specialized runs,
/// symbolic class parameters for generic runs.
///
/// Values carry their own context (field or parameter-ring handle), so the
/// trait works "prototype style": `zero_like`, `one_like`, `from_base`, and
/// `nat` build new values in the same context as `self`.
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Image of a base-field element in this coefficient ring.
    fn from_base(&self, a: &Fq) -> Self;
    /// Image of the natural number `k` (i.e. `k · 1`).
    fn nat(&self, k: u64) -> Self;
    fn render(&self) -> String;
    /// Whether `render()` must be parenthesized when used as a factor.
    fn render_is_composite(&self) -> bool;
}

impl Scalar for Fq {
    fn is_zero(&self) -> bool {
        Fq::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn from_base(&self, a: &Fq) -> Self {
        assert!(self.field() == a.field(), "field mismatch");
        a.clone()
    }
    fn nat(&self, k: u64) -> Self {
        self.field().from_u64(k)
    }
    fn render(&self) -> String {
        Fq::render(self)
    }
    fn render_is_composite(&self) -> bool {
        Fq::render_is_composite(self)
    }
}

// ---------------------------------------------------------------------------
// polynomials
// ---------------------------------------------------------------------------

/// A sparse multivariate polynomial with terms in strictly decreasing
/// lexicographic monomial order.  Carries a zero-valued `proto` coefficient
/// so that context (field / parameter ring) survives even for the zero
/// polynomial.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<C: Scalar> {
    n: usize,
    proto: C,
    terms: Vec<(XMono, C)>,
}

impl<C: Scalar> Polynomial<C> {
    pub fn zero(n: usize, proto: &C) -> Self {
        assert!(n >= 1 && n <= MAX_VARS);
        Polynomial {
            n,
            proto: proto.zero_like(),
            terms: Vec::new(),
        }
    }

    pub fn constant(n: usize, value: C) -> Self {
        Self::from_terms(n, &value.zero_like(), vec![(XMono::one(), value)])
    }

    pub fn monomial(n: usize, mono: XMono, coef: C) -> Self {
        Self::from_terms(n, &coef.zero_like(), vec![(mono, coef)])
    }

    /// Normalizing constructor: sorts, merges duplicates, drops zeros.
    pub fn from_terms(n: usize, proto: &C, mut terms: Vec<(XMono, C)>) -> Self {
        assert!(n >= 1 && n <= MAX_VARS);
        debug_assert!(
            terms.iter().all(|(m, _)| (n..MAX_VARS).all(|j| m.exp(j) == 0)),
            "monomial uses variables beyond n"
        );
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut merged: Vec<(XMono, C)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = merged.last_mut() {
                if last.0 == m {
                    last.1 = last.1.add(&c);
                    continue;
                }
            }
            merged.push((m, c));
        }
        merged.retain(|(_, c)| !c.is_zero());
        Polynomial {
            n,
            proto: proto.zero_like(),
            terms: merged,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn proto(&self) -> &C {
        &self.proto
    }
    pub fn terms(&self) -> &[(XMono, C)] {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(XMono, C)> {
        self.terms.first()
    }

    pub fn coefficient(&self, mono: &XMono) -> Option<&C> {
        self.terms
            .binary_search_by(|(m, _)| mono.0.cmp(&m.0))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    /// Total degree (`None` for the zero polynomial).
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// `Some(d)` if every term has total degree `d` (the zero polynomial is
    /// homogeneous of degree 0 by convention).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        match self.terms.first() {
            None => Some(0),
            Some((m0, _)) => {
                let d = m0.degree();
                if self.terms.iter().all(|(m, _)| m.degree() == d) {
                    Some(d)
                } else {
                    None
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let mut terms = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &rhs.terms[j];
            match mb.0.cmp(&ma.0) {
                std::cmp::Ordering::Less => {
                    terms.push((*ma, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    terms.push((*mb, cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = ca.add(cb);
                    if !s.is_zero() {
                        terms.push((*ma, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend(rhs.terms[j..].iter().cloned());
        Polynomial {
            n: self.n,
            proto: self.proto.clone(),
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            n: self.n,
            proto: self.proto.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Polynomial::zero(self.n, &self.proto);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, c.mul(k)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Polynomial {
            n: self.n,
            proto: self.proto.clone(),
            terms,
        }
    }

    pub fn mul_mono(&self, mono: &XMono) -> Self {
        Polynomial {
            n: self.n,
            proto: self.proto.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let mut acc: Vec<(XMono, C)> = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                acc.push((ma.mul(mb), ca.mul(cb)));
            }
        }
        Polynomial::from_terms(self.n, &self.proto, acc)
    }

    /// Formal partial derivative with respect to `x_{j+1}` (0-based `j`);
    /// exponents act through the prime subfield.
    pub fn partial_derivative(&self, j: usize) -> Self {
        assert!(j < self.n);
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(j);
            if e == 0 {
                continue;
            }
            let coef = c.mul(&c.nat(e as u64));
            if coef.is_zero() {
                continue;
            }
            let newmono = m.try_div(&XMono::var(j)).expect("e ≥ 1");
            terms.push((newmono, coef));
        }
        Polynomial::from_terms(self.n, &self.proto, terms)
    }

    /// Substitute `x_j ↦ Σ_i M_{ij} x_i` (columns of `M` give the images of
    /// the variables).  `M` is over the base field; its entries are lifted
    /// into the coefficient ring.
    pub fn linear_substitute(&self, m: &Mat) -> Self {
        assert_eq!(m.rows(), self.n);
        assert_eq!(m.cols(), self.n);
        if self.is_zero() {
            return self.clone();
        }
        // Images of the variables as degree-1 polynomials.
        let images: Vec<Polynomial<C>> = (0..self.n)
            .map(|j| {
                let terms = (0..self.n)
                    .filter_map(|i| {
                        let a = m.get(i, j);
                        if a.is_zero() {
                            None
                        } else {
                            Some((XMono::var(i), self.proto.from_base(a)))
                        }
                    })
                    .collect();
                Polynomial::from_terms(self.n, &self.proto, terms)
            })
            .collect();
        // Power cache per variable, built on demand.
        let one = Polynomial::constant(self.n, self.proto.one_like());
        let mut pows: Vec<Vec<Polynomial<C>>> = (0..self.n).map(|_| vec![one.clone()]).collect();
        let mut out = Polynomial::zero(self.n, &self.proto);
        for (mono, coef) in &self.terms {
            let mut prod = one.clone();
            for j in 0..self.n {
                let e = mono.exp(j) as usize;
                if e == 0 {
                    continue;
                }
                while pows[j].len() <= e {
                    let next = pows[j].last().unwrap().mul(&images[j]);
                    pows[j].push(next);
                }
                prod = prod.mul(&pows[j][e]);
            }
            out = out.add(&prod.scale(coef));
        }
        out
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let cs = c.render();
                if m.is_one() {
                    cs
                } else if cs == "1" {
                    m.render(self.n)
                } else if c.render_is_composite() {
                    format!("({})*{}", cs, m.render(self.n))
                } else {
                    format!("{}*{}", cs, m.render(self.n))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl<C: Scalar> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

// ---------------------------------------------------------------------------
// linear forms and exact division
// ---------------------------------------------------------------------------

/// A linear form `Σ a_j x_j` over the base field (a root `α` lives here).
#[derive(Clone, PartialEq, Eq)]
pub struct LinearForm {
    coeffs: Vec<Fq>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Fq>) -> LinearForm {
        assert!(!coeffs.is_empty() && coeffs.len() <= MAX_VARS);
        LinearForm { coeffs }
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }
    pub fn n(&self) -> usize {
        self.coeffs.len()
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// The form as a degree-1 polynomial with coefficients lifted into `C`.
    pub fn as_polynomial<C: Scalar>(&self, proto: &C) -> Polynomial<C> {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (XMono::var(j), proto.from_base(c)))
            .collect();
        Polynomial::from_terms(self.n(), proto, terms)
    }

    pub fn render(&self) -> String {
        let poly: Polynomial<Fq> = self.as_polynomial(&self.coeffs[0].field().zero());
        poly.render()
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Failure of exact division by a linear form: carries the nonzero
/// remainder as a witness.
#[derive(Debug)]
pub struct DivideError<C: Scalar> {
    pub witness: Polynomial<C>,
}

impl<C: Scalar> DivideError<C> {
    pub fn into_error(self) -> Error {
        Error::Division(format!(
            "polynomial is not divisible by the linear form; remainder witness: {}",
            self.witness.render()
        ))
    }
}

/// Exact division of `f` by a nonzero linear form `α`.
///
/// Change coordinates so `α` becomes the first variable of a new basis: the
/// basis is `α` followed by the standard coordinates `x_j` for `j ≠ k`,
/// where `k` is the position of `α`'s first nonzero coefficient.  In the
/// new coordinates division is term filtering; the quotient is transformed
/// back.  If the remainder is nonzero the error carries it (transformed
/// back to the original coordinates) as a witness.
pub fn divide_exact<C: Scalar>(
    f: &Polynomial<C>,
    alpha: &LinearForm,
) -> std::result::Result<Polynomial<C>, DivideError<C>> {
    let n = f.n();
    assert_eq!(alpha.n(), n, "variable count mismatch");
    let k = alpha
        .first_nonzero()
        .expect("division by the zero linear form");
    if f.is_zero() {
        return Ok(f.clone());
    }
    let field = alpha.coeffs()[0].field().clone();

    // Rows of A: the functional α first, then the coordinates x_j, j ≠ k.
    let mut rows = Vec::with_capacity(n);
    rows.push(alpha.coeffs().to_vec());
    for j in 0..n {
        if j == k {
            continue;
        }
        let mut e = vec![field.zero(); n];
        e[j] = field.one();
        rows.push(e);
    }
    let a = Mat::from_rows(&field, rows);
    let a_inv = a.inverse().expect("A is unimodular by construction");

    // f in the new coordinates u = A x:  F(u) = f(A^{-1} u).
    let fwd = f.linear_substitute(&a_inv.transpose());

    // Split off the terms divisible by u_1.
    let u1 = XMono::var(0);
    let mut quo_terms = Vec::new();
    let mut rem_terms = Vec::new();
    for (m, c) in fwd.terms() {
        match m.try_div(&u1) {
            Some(m2) => quo_terms.push((m2, c.clone())),
            None => rem_terms.push((*m, c.clone())),
        }
    }
    let quo_u = Polynomial::from_terms(n, f.proto(), quo_terms);
    let rem_u = Polynomial::from_terms(n, f.proto(), rem_terms);

    // Back to the original coordinates via x ↦ u = A x.
    let at = a.transpose();
    if rem_u.is_zero() {
        Ok(quo_u.linear_substitute(&at))
    } else {
        Err(DivideError {
            witness: rem_u.linear_substitute(&at),
        })
    }
}

/// Evaluate a base-coefficient polynomial at a field point.
pub fn evaluate_at(f: &Polynomial<Fq>, point: &[Fq]) -> Fq {
    assert_eq!(point.len(), f.n());
    let field = point
        .first()
        .map(|x| x.field().clone())
        .expect("nonempty point");
    let mut acc = field.zero();
    for (m, c) in f.terms() {
        let mut term = c.clone();
        for (j, x) in point.iter().enumerate() {
            let e = m.exp(j);
            if e > 0 {
                term = &term * &x.pow(e as u64);
            }
        }
        acc = &acc + &term;
    }
    acc
}

/// Exact multivariate polynomial division in lexicographic order:
/// `Some(f / g)` when `g` divides `f` exactly, `None` otherwise.
///
/// Leading terms are multiplicative in the lexicographic order, so when
/// `g | f` the division runs to a zero remainder; when it does not, some
/// step produces a leading term not divisible by `lead(g)`.
pub fn div_exact_poly(
    f: &Polynomial<Fq>,
    g: &Polynomial<Fq>,
) -> Option<Polynomial<Fq>> {
    assert_eq!(f.n(), g.n(), "variable count mismatch");
    assert!(!g.is_zero(), "division by the zero polynomial");
    let (gm, gc) = g.leading().expect("nonzero divisor").clone();
    let gc_inv = gc.inv();
    let zero = gc.field().zero();
    let mut rem = f.clone();
    let mut quo_terms: Vec<(XMono, Fq)> = Vec::new();
    while !rem.is_zero() {
        let (rm, rc) = rem.leading().expect("nonzero remainder").clone();
        let qm = rm.try_div(&gm)?;
        let qc = &rc * &gc_inv;
        let single = Polynomial::monomial(f.n(), qm, qc.clone());
        rem = rem.sub(&single.mul(g));
        quo_terms.push((qm, qc));
    }
    Some(Polynomial::from_terms(f.n(), &zero, quo_terms))
}

/// Are all pairwise 2×2 minors of the coefficient matrix of `polys` zero?
/// I.e., is every polynomial in the list a scalar multiple of a single one?
/// (Zero polynomials are proportional to everything; an empty list passes.)
pub fn proportionality_test<C: Scalar>(polys: &[Polynomial<C>]) -> bool {
    let Some(p0) = polys.iter().find(|p| !p.is_zero()) else {
        return true;
    };
    let (mu0, a0) = p0.leading().expect("nonzero");
    for p in polys {
        if p.is_zero() {
            continue;
        }
        // p ∝ p0  ⟺  a0·p == b·p0 where b is p's coefficient at p0's
        // leading monomial (cross-multiplication identity).
        let b = match p.coefficient(mu0) {
            Some(c) => c.clone(),
            None => a0.zero_like(),
        };
        if p.scale(a0) != p0.scale(&b) {
            return false;
        }
    }
    true
}
