//! Finite fields `F_q`, `q = p^r`, with a canonical, fully deterministic
//! construction.
//!
//! # Canonical construction
//!
//! `F_{p^r}` is realized as `F_p[x] / (m(x))` where `m` is the
//! *lexicographically smallest* monic irreducible polynomial of degree `r`:
//! writing `m = x^r + a_{r-1} x^{r-1} + … + a_1 x + a_0`, candidate tuples
//! `(a_0, a_1, …, a_{r-1})` are compared lexicographically with `a_0` most
//! significant, and the first irreducible candidate wins.  (This is *not*
//! the Conway polynomial convention; e.g. for `F_8` it selects
//! `x^3 + x^2 + 1`.)  Irreducibility is certified by trial division against
//! every monic polynomial of degree `1..=r/2`.
//!
//! # Element representation
//!
//! An element is the canonical index `0..q` of its residue vector: the
//! element `Σ d_i g^i` (where `g` is the class of `x`, `0 ≤ d_i < p`) has
//! index `Σ d_i p^i`.  Enumeration order is ascending index, so the prime
//! subfield appears first as `0, 1, …, p-1`, followed by `g, g+1, …`.
//! Multiplication and inversion go through discrete-log tables built on the
//! smallest generator of the multiplicative group; addition is digit-wise.
//!
//! Subfield embeddings `F_q ↪ F_{q^k}` map `g` to the *smallest* root of
//! the small field's modulus in the big field, which again is canonical.

use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Desk-scale cap on the field size; keeps every table construction cheap.
pub const MAX_Q: u64 = 1 << 20;

// ---------------------------------------------------------------------------
// construction helpers over F_p[x] (dense coefficient vectors, low-to-high)
// ---------------------------------------------------------------------------

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn poly_deg(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// Remainder of `a` modulo monic `m`, coefficients mod `p`.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let md = poly_deg(m).expect("monic modulus");
    let mut r: Vec<u64> = a.to_vec();
    while let Some(d) = poly_deg(&r) {
        if d < md {
            break;
        }
        let lead = r[d];
        // m is monic, so subtract lead * x^(d-md) * m.
        for i in 0..=md {
            let sub = (lead * m[i]) % p;
            r[d - md + i] = (r[d - md + i] + p - sub) % p;
        }
    }
    r.truncate(md);
    r.resize(md, 0);
    r
}

/// Product of `a` and `b` reduced modulo monic `m`, coefficients mod `p`.
fn poly_mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if bj == 0 {
                continue;
            }
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    poly_rem(&prod, m, p)
}

/// Does any monic polynomial of degree `1..=deg(f)/2` divide `f` exactly?
fn has_small_factor(f: &[u64], p: u64) -> bool {
    let fd = poly_deg(f).expect("nonzero");
    for d in 1..=(fd / 2) {
        // Enumerate all monic divisors x^d + c_{d-1} x^{d-1} + … + c_0.
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut g = vec![0u64; d + 1];
            g[d] = 1;
            let mut c = code;
            for coeff in g.iter_mut().take(d) {
                *coeff = c % p;
                c /= p;
            }
            let r = poly_rem(f, &g, p);
            if poly_deg(&r).is_none() {
                return true;
            }
        }
    }
    false
}

/// The lexicographically smallest monic irreducible of degree `r` over `F_p`
/// (tuple `(a_0, …, a_{r-1})` with `a_0` most significant), as coefficients
/// low-to-high including the leading 1.
fn smallest_irreducible(p: u64, r: u32) -> Vec<u64> {
    let r = r as usize;
    if r == 1 {
        // x itself: F_p[x]/(x) = F_p.
        return vec![0, 1];
    }
    let count = p.pow(r as u32);
    for code in 0..count {
        let mut f = vec![0u64; r + 1];
        f[r] = 1;
        // a_0 is the most significant base-p digit of `code`.
        let mut c = code;
        for i in (0..r).rev() {
            f[i] = c % p;
            c /= p;
        }
        if !has_small_factor(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible of every degree exists over every F_p")
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---------------------------------------------------------------------------
// the field proper
// ---------------------------------------------------------------------------

struct FieldInner {
    p: u64,
    r: u32,
    q: u64,
    /// Monic modulus, coefficients low-to-high, length r+1.
    modulus: Vec<u64>,
    /// exp[k] = index of g0^k for the chosen generator g0, length q-1.
    exp: Vec<u32>,
    /// log[idx] = k with g0^k = element idx (idx > 0), length q.
    log: Vec<u32>,
    /// Index of the smallest generator of the multiplicative group.
    generator: u32,
    /// Index of -1.
    minus_one: u32,
}

/// A finite field `F_q`.  Cheap to clone (shared handle); two handles
/// compare equal iff they describe the same `(p, r)`, and the canonical
/// construction guarantees their element indices then agree.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.r == other.0.r
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

/// Serializable description of a field (for reports and CLI output).
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct FieldDescriptor {
    pub p: u64,
    pub r: u32,
    pub q: u64,
    /// Modulus coefficients, low-to-high, including the leading 1.
    pub modulus: Vec<u64>,
    pub modulus_string: String,
    pub generator: String,
}

impl Field {
    /// Construct `F_{p^r}` canonically.  Errors if `p` is not prime,
    /// `r = 0`, or `p^r` exceeds the desk-scale cap.
    pub fn new(p: u64, r: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::Config(format!("{p} is not prime")));
        }
        if r == 0 {
            return Err(Error::Config("extension degree r must be positive".into()));
        }
        let q = p
            .checked_pow(r)
            .filter(|&q| q <= MAX_Q)
            .ok_or_else(|| Error::Config(format!("field size {p}^{r} exceeds cap {MAX_Q}")))?;

        let modulus = smallest_irreducible(p, r);
        let rr = r as usize;

        let digits_of = |idx: u64| -> Vec<u64> {
            let mut d = vec![0u64; rr];
            let mut v = idx;
            for di in d.iter_mut() {
                *di = v % p;
                v /= p;
            }
            d
        };
        let idx_of = |digits: &[u64]| -> u64 {
            let mut v = 0u64;
            for &d in digits.iter().rev() {
                v = v * p + d;
            }
            v
        };

        // Find the smallest generator of the multiplicative group.
        let factors = prime_factors(q - 1);
        let pow_digits = |base: &[u64], mut e: u64| -> Vec<u64> {
            let mut acc = digits_of(1);
            let mut b = base.to_vec();
            while e > 0 {
                if e & 1 == 1 {
                    acc = poly_mul_mod(&acc, &b, &modulus, p);
                    acc.resize(rr, 0);
                }
                b = poly_mul_mod(&b, &b, &modulus, p);
                b.resize(rr, 0);
                e >>= 1;
            }
            acc
        };
        let one_digits = digits_of(1);
        let mut generator = 0u64;
        'cand: for cand in 2..q {
            let cd = digits_of(cand);
            for &f in &factors {
                if pow_digits(&cd, (q - 1) / f) == one_digits {
                    continue 'cand;
                }
            }
            generator = cand;
            break;
        }
        if generator == 0 {
            // q = 2 has generator 1 (the empty factor list accepts it).
            generator = 1;
        }

        // Discrete-log tables for the generator.
        let mut exp = vec![0u32; (q - 1) as usize];
        let mut log = vec![0u32; q as usize];
        let gd = digits_of(generator);
        let mut cur = digits_of(1);
        for (k, slot) in exp.iter_mut().enumerate() {
            let idx = idx_of(&cur) as u32;
            *slot = idx;
            log[idx as usize] = k as u32;
            cur = poly_mul_mod(&cur, &gd, &modulus, p);
            cur.resize(rr, 0);
        }

        let mut minus_one_digits = vec![0u64; rr];
        minus_one_digits[0] = (p - 1) % p;
        let minus_one = idx_of(&minus_one_digits) as u32;

        Ok(Field(Arc::new(FieldInner {
            p,
            r,
            q,
            modulus,
            exp,
            log,
            generator: generator as u32,
            minus_one,
        })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }
    pub fn r(&self) -> u32 {
        self.0.r
    }
    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// Modulus coefficients, low-to-high, including the leading 1.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.0.p,
            r: self.0.r,
            q: self.0.q,
            modulus: self.0.modulus.clone(),
            modulus_string: self.modulus_string(),
            generator: self.element(self.0.generator).render(),
        }
    }

    /// The modulus rendered like `x^2+x+1` (high-to-low, decimal coefficients).
    pub fn modulus_string(&self) -> String {
        let m = &self.0.modulus;
        let mut parts = Vec::new();
        for i in (0..m.len()).rev() {
            let c = m[i];
            if c == 0 {
                continue;
            }
            let part = match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}*x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}*x^{i}"),
            };
            parts.push(part);
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }

    pub fn zero(&self) -> Fq {
        self.element(0)
    }
    pub fn one(&self) -> Fq {
        self.element(1)
    }

    /// The element with the given canonical index (digits base `p`).
    pub fn element(&self, idx: u32) -> Fq {
        debug_assert!((idx as u64) < self.0.q, "element index out of range");
        Fq {
            field: self.clone(),
            idx,
        }
    }

    /// The image of an integer in the prime subfield (`v mod p`).
    pub fn from_u64(&self, v: u64) -> Fq {
        self.element((v % self.0.p) as u32)
    }

    /// The image of a signed integer in the prime subfield.
    pub fn from_i64(&self, v: i64) -> Fq {
        let p = self.0.p as i64;
        self.element(v.rem_euclid(p) as u32)
    }

    /// The element with the given residue digits (low-to-high, length ≤ r).
    pub fn from_digits(&self, digits: &[u64]) -> Fq {
        assert!(digits.len() <= self.0.r as usize, "too many digits");
        let mut idx = 0u64;
        for &d in digits.iter().rev() {
            idx = idx * self.0.p + (d % self.0.p);
        }
        self.element(idx as u32)
    }

    /// All elements in canonical enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> + '_ {
        (0..self.0.q as u32).map(move |i| self.element(i))
    }

    /// All nonzero elements in canonical enumeration order.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fq> + '_ {
        (1..self.0.q as u32).map(move |i| self.element(i))
    }

    /// The smallest generator of the multiplicative group.
    pub fn multiplicative_generator(&self) -> Fq {
        self.element(self.0.generator)
    }

    // -- index-level arithmetic -------------------------------------------

    pub fn add_idx(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        let (mut x, mut y) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut pow = 1u64;
        for _ in 0..self.0.r {
            out += ((x % p + y % p) % p) * pow;
            x /= p;
            y /= p;
            pow *= p;
        }
        out as u32
    }

    pub fn neg_idx(&self, a: u32) -> u32 {
        let p = self.0.p;
        let mut x = a as u64;
        let mut out = 0u64;
        let mut pow = 1u64;
        for _ in 0..self.0.r {
            out += ((p - x % p) % p) * pow;
            x /= p;
            pow *= p;
        }
        out as u32
    }

    pub fn sub_idx(&self, a: u32, b: u32) -> u32 {
        self.add_idx(a, self.neg_idx(b))
    }

    pub fn mul_idx(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &self.0;
        let n = inner.q - 1;
        let k = (inner.log[a as usize] as u64 + inner.log[b as usize] as u64) % n;
        inner.exp[k as usize]
    }

    /// Multiplicative inverse; panics on zero (callers guard).
    pub fn inv_idx(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let inner = &self.0;
        let n = inner.q - 1;
        let k = (n - inner.log[a as usize] as u64) % n;
        inner.exp[k as usize]
    }

    /// `a^e` with the convention `0^0 = 1`.
    pub fn pow_idx(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let inner = &self.0;
        let n = inner.q - 1;
        let k = ((inner.log[a as usize] as u128 * e as u128) % n as u128) as u64;
        inner.exp[k as usize]
    }

    fn minus_one_idx(&self) -> u32 {
        self.0.minus_one
    }
}

/// An element of a [`Field`].  Carries its field handle, so values from
/// different fields never silently mix (panics in debug on mismatch).
#[derive(Clone)]
pub struct Fq {
    field: Field,
    idx: u32,
}

impl Fq {
    pub fn field(&self) -> &Field {
        &self.field
    }
    /// Canonical index in `0..q`.
    pub fn idx(&self) -> u32 {
        self.idx
    }
    /// Residue digits low-to-high, length r.
    pub fn digits(&self) -> Vec<u64> {
        let p = self.field.p();
        let mut v = self.idx as u64;
        let mut d = vec![0u64; self.field.r() as usize];
        for di in d.iter_mut() {
            *di = v % p;
            v /= p;
        }
        d
    }
    pub fn is_zero(&self) -> bool {
        self.idx == 0
    }
    pub fn is_one(&self) -> bool {
        self.idx == 1
    }
    pub fn inv(&self) -> Fq {
        self.field.element(self.field.inv_idx(self.idx))
    }
    /// `self^e` with the convention `0^0 = 1`.
    pub fn pow(&self, e: u64) -> Fq {
        self.field.element(self.field.pow_idx(self.idx, e))
    }

    /// Render for human-readable output: decimal for prime fields, a
    /// polynomial in the generator `g` otherwise (e.g. `g^2+2*g+1`).
    pub fn render(&self) -> String {
        if self.field.r() == 1 {
            return format!("{}", self.idx);
        }
        let d = self.digits();
        let mut parts = Vec::new();
        for i in (0..d.len()).rev() {
            let c = d[i];
            if c == 0 {
                continue;
            }
            let part = match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "g".to_string(),
                (1, c) => format!("{c}*g"),
                (i, 1) => format!("g^{i}"),
                (i, c) => format!("{c}*g^{i}"),
            };
            parts.push(part);
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }

    /// Whether the rendering needs parentheses when used as a factor.
    pub fn render_is_composite(&self) -> bool {
        self.render().contains('+')
    }
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.idx == other.idx
    }
}
impl Eq for Fq {}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}∈F_{}", self.render(), self.field.q())
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

macro_rules! check_same_field {
    ($a:expr, $b:expr) => {
        debug_assert!($a.field == $b.field, "elements from different fields");
    };
}

impl std::ops::Add for &Fq {
    type Output = Fq;
    fn add(self, rhs: &Fq) -> Fq {
        check_same_field!(self, rhs);
        self.field.element(self.field.add_idx(self.idx, rhs.idx))
    }
}
impl std::ops::Sub for &Fq {
    type Output = Fq;
    fn sub(self, rhs: &Fq) -> Fq {
        check_same_field!(self, rhs);
        self.field.element(self.field.sub_idx(self.idx, rhs.idx))
    }
}
impl std::ops::Mul for &Fq {
    type Output = Fq;
    fn mul(self, rhs: &Fq) -> Fq {
        check_same_field!(self, rhs);
        self.field.element(self.field.mul_idx(self.idx, rhs.idx))
    }
}
impl std::ops::Neg for &Fq {
    type Output = Fq;
    fn neg(self) -> Fq {
        self.field.element(self.field.neg_idx(self.idx))
    }
}
impl std::ops::Add for Fq {
    type Output = Fq;
    fn add(self, rhs: Fq) -> Fq {
        &self + &rhs
    }
}
impl std::ops::Sub for Fq {
    type Output = Fq;
    fn sub(self, rhs: Fq) -> Fq {
        &self - &rhs
    }
}
impl std::ops::Mul for Fq {
    type Output = Fq;
    fn mul(self, rhs: Fq) -> Fq {
        &self * &rhs
    }
}
impl std::ops::Neg for Fq {
    type Output = Fq;
    fn neg(self) -> Fq {
        -&self
    }
}

// ---------------------------------------------------------------------------
// squares / non-squares
// ---------------------------------------------------------------------------

/// The partition of `F_q^×` into squares `Q` and non-squares `R`.
/// For `p = 2` every element is a square, so `R` is empty.
#[derive(Debug, Clone)]
pub struct SquaresPartition {
    pub field: Field,
    /// Nonzero squares, ascending index.
    pub squares: Vec<Fq>,
    /// Non-squares, ascending index (empty in characteristic 2).
    pub nonsquares: Vec<Fq>,
}

impl SquaresPartition {
    /// Is the (nonzero) element a square?
    pub fn is_square(&self, a: &Fq) -> bool {
        assert!(!a.is_zero(), "square class of zero is undefined");
        square_class(a)
    }
}

/// Square-class of a nonzero element: true iff it is a square in `F_q^×`.
pub fn square_class(a: &Fq) -> bool {
    assert!(!a.is_zero(), "square class of zero is undefined");
    let f = a.field();
    if f.p() == 2 {
        return true;
    }
    f.0.log[a.idx() as usize] % 2 == 0
}

/// Compute the squares/non-squares partition of `F_q^×`.
pub fn squares_partition(field: &Field) -> SquaresPartition {
    let mut squares = Vec::new();
    let mut nonsquares = Vec::new();
    for a in field.nonzero_elements() {
        if square_class(&a) {
            squares.push(a);
        } else {
            nonsquares.push(a);
        }
    }
    SquaresPartition {
        field: field.clone(),
        squares,
        nonsquares,
    }
}

/// The smallest non-square of `F_q^×` in enumeration order (`None` when
/// `p = 2`, where every element is a square).
pub fn smallest_nonsquare(field: &Field) -> Option<Fq> {
    field.nonzero_elements().find(|a| !square_class(a))
}

// ---------------------------------------------------------------------------
// power sums
// ---------------------------------------------------------------------------

/// Domain of a power sum: all of `F_q`, the nonzero squares, or the
/// non-squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerDomain {
    All,
    Squares,
    NonSquares,
}

/// `Σ_{x ∈ D} x^d` in closed form, with the convention `0^0 = 1`.
///
/// * `All`: `-1` if `d > 0` and `(q-1) | d`, else `0`.
/// * `Squares` (odd `q`): `(q-1)/2` if `(q-1) | 2d`, else `0`.
/// * `NonSquares` (odd `q`): `(q-1)/2` if `(q-1) | d`; `-(q-1)/2` if
///   `(q-1) | 2d` but `(q-1) ∤ d`; else `0`.
///
/// The square/non-square domains error in characteristic 2.
pub fn power_sum(field: &Field, d: u64, domain: PowerDomain) -> Result<Fq> {
    let q = field.q();
    match domain {
        PowerDomain::All => {
            if d > 0 && d % (q - 1) == 0 {
                Ok(field.element(field.minus_one_idx()))
            } else {
                Ok(field.zero())
            }
        }
        PowerDomain::Squares | PowerDomain::NonSquares => {
            if field.p() == 2 {
                return Err(Error::Config(
                    "square/non-square power sums require odd characteristic".into(),
                ));
            }
            let h = (q - 1) / 2;
            let half = field.from_u64(h);
            if d % (q - 1) == 0 {
                // Includes d = 0 (each domain has (q-1)/2 terms of value 1).
                Ok(half)
            } else if (2 * d) % (q - 1) == 0 {
                match domain {
                    PowerDomain::Squares => Ok(half),
                    PowerDomain::NonSquares => Ok(-&half),
                    PowerDomain::All => unreachable!(),
                }
            } else {
                Ok(field.zero())
            }
        }
    }
}

// ---------------------------------------------------------------------------
// subfield embeddings
// ---------------------------------------------------------------------------

/// The canonical embedding `F_q ↪ F_{q^k}` sending the small generator `g`
/// to the smallest root of the small field's modulus in the big field.
pub struct Embedding {
    small: Field,
    big: Field,
    /// Forward image of every small element, by index.
    fwd: Vec<u32>,
    /// Reverse lookup: big index -> small index, for elements in the image.
    back: HashMap<u32, u32>,
}

impl Embedding {
    pub fn new(small: &Field, big: &Field) -> Result<Embedding> {
        if small.p() != big.p() {
            return Err(Error::Config(
                "embedding requires equal characteristics".into(),
            ));
        }
        if big.r() % small.r() != 0 {
            return Err(Error::Config(format!(
                "F_{} does not embed in F_{}: {} does not divide {}",
                small.q(),
                big.q(),
                small.r(),
                big.r()
            )));
        }

        // Smallest root of the small modulus in the big field.  For r = 1
        // the modulus is x and only the coefficient embedding is used.
        let theta = if small.r() == 1 {
            big.zero()
        } else {
            let modulus = small.modulus().to_vec();
            let mut found = None;
            for cand in big.elements() {
                // Horner evaluation with coefficients in the prime subfield.
                let mut acc = big.zero();
                for &c in modulus.iter().rev() {
                    acc = &(&acc * &cand) + &big.from_u64(c);
                }
                if acc.is_zero() {
                    found = Some(cand);
                    break;
                }
            }
            found.ok_or_else(|| {
                Error::Internal("modulus has no root in the extension field".into())
            })?
        };

        // Powers 1, θ, θ^2, … θ^(r-1); the map is digit-wise on these.
        let rr = small.r() as usize;
        let mut theta_pows = Vec::with_capacity(rr);
        let mut cur = big.one();
        for _ in 0..rr {
            theta_pows.push(cur.clone());
            cur = &cur * &theta;
        }

        let mut fwd = Vec::with_capacity(small.q() as usize);
        let mut back = HashMap::with_capacity(small.q() as usize);
        for a in small.elements() {
            let mut img = big.zero();
            for (i, d) in a.digits().into_iter().enumerate() {
                if d != 0 {
                    img = &img + &(&big.from_u64(d) * &theta_pows[i]);
                }
            }
            fwd.push(img.idx());
            back.insert(img.idx(), a.idx());
        }

        Ok(Embedding {
            small: small.clone(),
            big: big.clone(),
            fwd,
            back,
        })
    }

    pub fn small(&self) -> &Field {
        &self.small
    }
    pub fn big(&self) -> &Field {
        &self.big
    }

    pub fn map(&self, a: &Fq) -> Fq {
        debug_assert!(a.field() == &self.small);
        self.big.element(self.fwd[a.idx() as usize])
    }

    /// Preimage of a big-field element, if it lies in the embedded copy.
    pub fn preimage(&self, b: &Fq) -> Option<Fq> {
        debug_assert!(b.field() == &self.big);
        self.back.get(&b.idx()).map(|&i| self.small.element(i))
    }
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{} ↪ F_{}", self.small.q(), self.big.q())
    }
}
