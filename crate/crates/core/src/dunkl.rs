//! Dunkl operators for the trivial module of a rational Cherednik algebra
//! in positive characteristic.
//!
//! For a reflection group `G` on `h` with reflections `s` (root `α_s`,
//! coroot `α∨_s`, class parameter `c_{class(s)}`) and `t ∈ {0, 1}`, the
//! Dunkl operator attached to the basis vector `y_j ∈ h` acts on
//! polynomials `f ∈ F_q[x_1, …, x_n]` by
//!
//! ```text
//!   D_j f = t ∂_j f - Σ_s c_{class(s)} · α_s[j] · (f - f∘s) / α_s
//! ```
//!
//! where `f∘s` substitutes the dual action of `s` on `h*` and the
//! division is exact.  Operators are computed either symbolically (class
//! parameters as indeterminates) or at a specialized parameter point.

use crate::error::{Error, Result};
use crate::gf::Fq;
use crate::groups::GroupData;
use crate::poly::{divide_exact, ParamRing, ParamScalar, Polynomial, Scalar, XMono};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// How the class parameters are treated.
#[derive(Clone, Debug)]
pub enum ParamMode {
    /// Keep `c_1, …, c_m` as polynomial indeterminates.
    Symbolic,
    /// Evaluate at a point, one value per reflection class (by class id).
    Specialized(Vec<Fq>),
}

/// Cached Dunkl image of a single monomial under `D_j`, split by class so
/// both the symbolic and every specialized assembly can reuse it:
///
/// `D_j x^a = t · deriv - Σ_m c_m · class_parts[m]`.
struct MonomialImage {
    deriv: Polynomial<Fq>,
    class_parts: Vec<Polynomial<Fq>>,
}

/// A reflection group with a choice of `t` and parameter mode; owns the
/// per-monomial Dunkl image cache.
pub struct DunklContext {
    group: GroupData,
    t: u64,
    mode: ParamMode,
    ring: Arc<ParamRing>,
    cache: Mutex<HashMap<(usize, u64), Arc<MonomialImage>>>,
}

impl DunklContext {
    pub fn new(group: GroupData, t: u64, mode: ParamMode) -> Result<DunklContext> {
        if t > 1 {
            return Err(Error::Config(format!("t = {t} is out of range: use 0 or 1")));
        }
        if group.class_count() == 0 {
            return Err(Error::Config(format!(
                "{} has no reflections",
                group.label()
            )));
        }
        if let ParamMode::Specialized(point) = &mode {
            if point.len() != group.class_count() {
                return Err(Error::Config(format!(
                    "expected {} parameter values (one per reflection class), got {}",
                    group.class_count(),
                    point.len()
                )));
            }
            for v in point {
                if v.field() != group.field() {
                    return Err(Error::Config(
                        "parameter values must lie in the base field".into(),
                    ));
                }
            }
        }
        let ring = ParamRing::new(group.field().clone(), group.param_names());
        Ok(DunklContext {
            group,
            t,
            mode,
            ring,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn group(&self) -> &GroupData {
        &self.group
    }
    pub fn t(&self) -> u64 {
        self.t
    }
    pub fn mode(&self) -> &ParamMode {
        &self.mode
    }
    /// The class-parameter ring `F_q[c_1, …, c_m]`.
    pub fn param_ring(&self) -> &Arc<ParamRing> {
        &self.ring
    }
    pub fn dim(&self) -> usize {
        self.group.dim()
    }

    /// Compute (or fetch) the class-split image of `x^a` under `D_j`.
    fn monomial_image(&self, j: usize, mono: XMono) -> Result<Arc<MonomialImage>> {
        if let Some(hit) = self.cache.lock().unwrap().get(&(j, mono.0)) {
            return Ok(hit.clone());
        }
        let n = self.group.dim();
        let field = self.group.field();
        let f = Polynomial::monomial(n, mono, field.one());
        let deriv = f.partial_derivative(j);
        let mut class_parts: Vec<Polynomial<Fq>> =
            vec![Polynomial::zero(n, &field.zero()); self.group.class_count()];
        for refl in self.group.reflections() {
            let aj = &refl.alpha()[j];
            if aj.is_zero() {
                continue;
            }
            let moved = f.linear_substitute(refl.dual_matrix());
            let diff = f.sub(&moved);
            if diff.is_zero() {
                continue;
            }
            let quot = divide_exact(&diff, &refl.alpha_form()).map_err(|_| {
                Error::Internal(
                    "reflection difference is divisible by the root".into(),
                )
            })?;
            let part = quot.scale(aj);
            let slot = &mut class_parts[refl.class_id() - 1];
            *slot = slot.add(&part);
        }
        let image = Arc::new(MonomialImage { deriv, class_parts });
        self.cache
            .lock()
            .unwrap()
            .insert((j, mono.0), image.clone());
        Ok(image)
    }

    /// Shared assembly: apply `D_j` to a polynomial with coefficients in
    /// any scalar ring, given `t` and the class parameters in that ring.
    fn apply_generic<C: Scalar>(
        &self,
        j: usize,
        f: &Polynomial<C>,
        t_scalar: &C,
        c_params: &[C],
    ) -> Result<Polynomial<C>> {
        if j >= self.group.dim() {
            return Err(Error::Config(format!(
                "operator index {j} out of range for dimension {}",
                self.group.dim()
            )));
        }
        if f.homogeneous_degree().is_none() {
            return Err(Error::Config(
                "Dunkl operators are applied to homogeneous polynomials".into(),
            ));
        }
        let proto = f.proto();
        let mut acc = Polynomial::zero(f.n(), proto);
        for (mono, coef) in f.terms() {
            let image = self.monomial_image(j, *mono)?;
            if !t_scalar.is_zero() && !image.deriv.is_zero() {
                let lifted = lift(&image.deriv, proto).scale(&coef.mul(t_scalar));
                acc = acc.add(&lifted);
            }
            for (part, c) in image.class_parts.iter().zip(c_params) {
                if part.is_zero() || c.is_zero() {
                    continue;
                }
                let lifted = lift(part, proto).scale(&coef.mul(c).neg());
                acc = acc.add(&lifted);
            }
        }
        Ok(acc)
    }

    /// Apply `D_j` at the specialized parameter point.
    pub fn apply_at(&self, j: usize, f: &Polynomial<Fq>) -> Result<Polynomial<Fq>> {
        let ParamMode::Specialized(point) = &self.mode else {
            return Err(Error::Config(
                "context is symbolic; use the symbolic application".into(),
            ));
        };
        let field = self.group.field();
        let t_scalar = field.from_u64(self.t);
        self.apply_generic(j, f, &t_scalar, point)
    }

    /// Apply `D_j` with symbolic class parameters.
    pub fn apply_symbolic(
        &self,
        j: usize,
        f: &Polynomial<ParamScalar>,
    ) -> Result<Polynomial<ParamScalar>> {
        if !matches!(self.mode, ParamMode::Symbolic) {
            return Err(Error::Config(
                "context is specialized; use the specialized application".into(),
            ));
        }
        let t_scalar =
            ParamScalar::constant(&self.ring, &self.group.field().from_u64(self.t));
        let c_params: Vec<ParamScalar> = (0..self.group.class_count())
            .map(|m| ParamScalar::var(&self.ring, m))
            .collect();
        self.apply_generic(j, f, &t_scalar, &c_params)
    }

    /// Lift an `F_q` polynomial into the symbolic coefficient ring.
    pub fn lift_symbolic(&self, f: &Polynomial<Fq>) -> Polynomial<ParamScalar> {
        let proto = ParamScalar::zero(&self.ring);
        lift(f, &proto)
    }

    /// Is `f` (nonzero, homogeneous) annihilated by every `D_j` in this
    /// context's mode?
    pub fn is_singular(&self, f: &Polynomial<Fq>) -> Result<bool> {
        if f.is_zero() {
            return Err(Error::Config(
                "the singular-vector test needs a nonzero polynomial".into(),
            ));
        }
        match &self.mode {
            ParamMode::Specialized(_) => {
                for j in 0..self.group.dim() {
                    if !self.apply_at(j, f)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
            ParamMode::Symbolic => {
                let lifted = self.lift_symbolic(f);
                for j in 0..self.group.dim() {
                    if !self.apply_symbolic(j, &lifted)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Check `D_{j1} D_{j2} f = D_{j2} D_{j1} f` in this context's mode.
    pub fn commute_check(&self, j1: usize, j2: usize, f: &Polynomial<Fq>) -> Result<bool> {
        match &self.mode {
            ParamMode::Specialized(_) => {
                let a = self.apply_at(j1, &self.apply_at(j2, f)?)?;
                let b = self.apply_at(j2, &self.apply_at(j1, f)?)?;
                Ok(a == b)
            }
            ParamMode::Symbolic => {
                let lifted = self.lift_symbolic(f);
                let a = self.apply_symbolic(j1, &self.apply_symbolic(j2, &lifted)?)?;
                let b = self.apply_symbolic(j2, &self.apply_symbolic(j1, &lifted)?)?;
                Ok(a == b)
            }
        }
    }
}

/// Lift an `F_q`-coefficient polynomial into coefficient ring `C`.
fn lift<C: Scalar>(f: &Polynomial<Fq>, proto: &C) -> Polynomial<C> {
    let terms = f
        .terms()
        .iter()
        .map(|(m, c)| (*m, proto.from_base(c)))
        .collect();
    Polynomial::from_terms(f.n(), proto, terms)
}
