//! Reflection groups over finite fields: general linear, special linear,
//! orthogonal, and symmetric groups, together with their reflections,
//! root data, and reflection conjugacy classes.
//!
//! A *reflection* is a group element `g` with `rank(1 - g) = 1`.  Every
//! reflection is stored with a root `α` (a linear form on `h`, normalized
//! so its first nonzero coordinate is `1`), a coroot `α∨ ∈ h`, the scalar
//! `λ = 1 - ⟨α, α∨⟩` (the nontrivial eigenvalue of the dual action on
//! `h*`), and a 1-based conjugacy class id.  The stored matrix is the
//! action on `h`:
//!
//! ```text
//!   g   = I + (1/λ) α∨ αᵀ          (action on h, columns = images of e_j)
//!   g*  = I - α α∨ᵀ                 (dual action on h*, i.e. (g⁻¹)ᵀ)
//! ```

use crate::error::{Error, Result};
use crate::gf::{smallest_nonsquare, square_class, Field, Fq};
use crate::matrix::Mat;
use crate::poly::LinearForm;
use std::collections::HashMap;

/// Families of reflection groups supported by the enumeration.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Family {
    /// `GL_n(F_q)`, all invertible matrices.
    GL,
    /// `SL_n(F_q)`, determinant one.
    SL,
    /// Orthogonal group of the identity form, `n` odd.
    OOdd,
    /// Orthogonal group of the hyperbolic (plus-type) form, `n` even.
    OPlus,
    /// Orthogonal group of the minus-type form, `n` even.
    OMinus,
    /// Symmetric group `Sym(N)` acting on the standard `(N-1)`-dimensional
    /// representation over `F_p`.
    Sym,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        match s.to_ascii_uppercase().as_str() {
            "GL" => Ok(Family::GL),
            "SL" => Ok(Family::SL),
            "O" => Ok(Family::OOdd),
            "O+" => Ok(Family::OPlus),
            "O-" => Ok(Family::OMinus),
            "SYM" => Ok(Family::Sym),
            other => Err(Error::Config(format!(
                "unknown family {other:?}: expected GL, SL, O, O+, O-, or Sym"
            ))),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Family::GL => "GL",
            Family::SL => "SL",
            Family::OOdd => "O",
            Family::OPlus => "O+",
            Family::OMinus => "O-",
            Family::Sym => "Sym",
        }
    }

    pub fn is_orthogonal(&self) -> bool {
        matches!(self, Family::OOdd | Family::OPlus | Family::OMinus)
    }
}

/// Factor `q` as a prime power `p^r`.
pub fn factor_prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::Config(format!("q = {q} is not a prime power")));
    }
    let mut p = 0u64;
    let mut d = 2u64;
    while d * d <= q {
        if q % d == 0 {
            p = d;
            break;
        }
        d += 1;
    }
    if p == 0 {
        p = q; // q itself is prime
    }
    let mut rest = q;
    let mut r = 0u32;
    while rest > 1 {
        if rest % p != 0 {
            return Err(Error::Config(format!("q = {q} is not a prime power")));
        }
        rest /= p;
        r += 1;
    }
    Ok((p, r))
}

/// Requested group: family, size parameter, and field order.
///
/// For `GL`/`SL`/orthogonal families `n` is the matrix size; for `Sym` it
/// is the symmetric-group degree `N` (the representation has dimension
/// `N - 1`).
#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub family: Family,
    pub n: usize,
    pub q: u64,
}

impl GroupSpec {
    pub fn new(family: Family, n: usize, q: u64) -> Result<GroupSpec> {
        let spec = GroupSpec { family, n, q };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        let (p, r) = factor_prime_power(self.q)?;
        match self.family {
            Family::GL | Family::SL => {
                if self.n < 1 || self.n > crate::poly::MAX_VARS {
                    return Err(Error::Config(format!(
                        "n = {} out of range 1..={}",
                        self.n,
                        crate::poly::MAX_VARS
                    )));
                }
                // Keep the reflection enumeration at desk scale.
                let pairs = self
                    .q
                    .checked_pow(2 * self.n as u32)
                    .unwrap_or(u64::MAX);
                if pairs > 1 << 26 {
                    return Err(Error::Config(format!(
                        "{}_{}(F_{}) is too large to enumerate",
                        self.family.label(),
                        self.n,
                        self.q
                    )));
                }
            }
            Family::OOdd | Family::OPlus | Family::OMinus => {
                if p == 2 {
                    return Err(Error::Config(
                        "orthogonal families require odd characteristic".into(),
                    ));
                }
                if self.n < 1 || self.n > crate::poly::MAX_VARS {
                    return Err(Error::Config(format!(
                        "n = {} out of range 1..={}",
                        self.n,
                        crate::poly::MAX_VARS
                    )));
                }
                if self.family == Family::OOdd && self.n % 2 == 0 {
                    return Err(Error::Config(
                        "family O requires odd n; use O+ or O- for even n".into(),
                    ));
                }
                if self.family != Family::OOdd && self.n % 2 != 0 {
                    return Err(Error::Config(
                        "families O+ and O- require even n; use O for odd n".into(),
                    ));
                }
                if self.q.checked_pow(self.n as u32).unwrap_or(u64::MAX) > 1 << 17 {
                    return Err(Error::Config(format!(
                        "orthogonal group on F_{}^{} is too large to enumerate",
                        self.q, self.n
                    )));
                }
            }
            Family::Sym => {
                if r != 1 {
                    return Err(Error::Config(
                        "family Sym requires a prime field (q = p)".into(),
                    ));
                }
                if self.n < 2 || self.n > crate::poly::MAX_VARS + 1 {
                    return Err(Error::Config(format!(
                        "Sym degree N = {} out of range 2..={}",
                        self.n,
                        crate::poly::MAX_VARS + 1
                    )));
                }
                if self.n as u64 % p == 0 {
                    return Err(Error::Config(format!(
                        "Sym({}) over F_{} is not allowed: the characteristic divides N",
                        self.n, self.q
                    )));
                }
            }
        }
        Ok(())
    }

    /// Dimension of the reflection representation `h`.
    pub fn dim(&self) -> usize {
        match self.family {
            Family::Sym => self.n - 1,
            _ => self.n,
        }
    }
}

/// A reflection with its root data.
#[derive(Clone, Debug)]
pub struct Reflection {
    matrix: Mat,
    dual: Mat,
    alpha: Vec<Fq>,
    alpha_check: Vec<Fq>,
    lambda: Fq,
    class_id: usize,
}

impl Reflection {
    /// Build a reflection from root data.  `alpha` must be projectively
    /// normalized (first nonzero coordinate `1`) and `1 - ⟨α, α∨⟩ ≠ 0`.
    fn from_root_data(field: &Field, alpha: Vec<Fq>, alpha_check: Vec<Fq>) -> Reflection {
        let n = alpha.len();
        let pairing = dot(field, &alpha, &alpha_check);
        let lambda = &field.one() - &pairing;
        assert!(!lambda.is_zero(), "degenerate root data: λ = 0");
        let lambda_inv = lambda.inv();
        let matrix = Mat::from_fn(field, n, n, |i, j| {
            let delta = if i == j { field.one() } else { field.zero() };
            &delta + &(&(&alpha_check[i] * &alpha[j]) * &lambda_inv)
        });
        let dual = Mat::from_fn(field, n, n, |i, j| {
            let delta = if i == j { field.one() } else { field.zero() };
            &delta - &(&alpha[i] * &alpha_check[j])
        });
        Reflection {
            matrix,
            dual,
            alpha,
            alpha_check,
            lambda,
            class_id: 0,
        }
    }

    /// Recover root data from a matrix `g` with `rank(1 - g) = 1` acting
    /// on `h`.  Returns `None` if `g` is not a reflection.
    fn from_matrix(field: &Field, g: &Mat) -> Option<Reflection> {
        let n = g.rows();
        let ident = Mat::identity(field, n);
        let c = ident.sub(g); // c = u αᵀ for some column u
        if c.rank() != 1 {
            return None;
        }
        // First nonzero row of c is a multiple of αᵀ; normalize it.
        let i0 = (0..n).find(|&i| c.row(i).iter().any(|x| !x.is_zero()))?;
        let row = c.row(i0);
        let j0 = (0..n).find(|&j| !row[j].is_zero())?;
        let scale = row[j0].inv();
        let alpha: Vec<Fq> = row.iter().map(|x| x * &scale).collect();
        // Column j0 of c equals α_{j0} · u.
        let u: Vec<Fq> = (0..n)
            .map(|i| c.get(i, j0) * &alpha[j0].inv())
            .collect();
        let t = dot(field, &alpha, &u);
        let det = &field.one() - &t;
        if det.is_zero() {
            return None; // not invertible; cannot happen for group elements
        }
        let lambda = det.inv();
        let alpha_check: Vec<Fq> = u.iter().map(|x| -&(x * &lambda)).collect();
        let refl = Reflection::from_root_data(field, alpha, alpha_check);
        debug_assert_eq!(refl.matrix.key(), g.key(), "root-data reconstruction");
        Some(refl)
    }

    /// Action on `h` (columns are images of the basis vectors).
    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }
    /// Dual action on `h*`, i.e. `(g⁻¹)ᵀ`.
    pub fn dual_matrix(&self) -> &Mat {
        &self.dual
    }
    /// The root, normalized so its first nonzero coordinate is `1`.
    pub fn alpha(&self) -> &[Fq] {
        &self.alpha
    }
    pub fn alpha_form(&self) -> LinearForm {
        LinearForm::new(self.alpha.clone())
    }
    pub fn alpha_check(&self) -> &[Fq] {
        &self.alpha_check
    }
    /// `λ = 1 - ⟨α, α∨⟩`, the nontrivial eigenvalue of the dual action.
    pub fn lambda(&self) -> &Fq {
        &self.lambda
    }
    /// 1-based conjugacy class id; parameter `c_{class_id}` weights this
    /// reflection in the Dunkl operators.
    pub fn class_id(&self) -> usize {
        self.class_id
    }
    pub fn is_unipotent(&self) -> bool {
        self.lambda.is_one()
    }
}

/// Kind of a reflection conjugacy class.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum ClassKind {
    /// `λ = 1`: transvections.
    Unipotent,
    /// `λ ≠ 1`: diagonalizable reflections.
    Semisimple,
}

/// A conjugacy class of reflections.
#[derive(Clone, Debug)]
pub struct ReflectionClass {
    pub class_id: usize,
    pub kind: ClassKind,
    pub size: usize,
    /// Index into `GroupData::reflections` of the class representative.
    pub representative: usize,
    /// Common eigenvalue `λ` of the class.
    pub lambda: Fq,
}

/// A reflection group with its enumerated reflections and classes.
pub struct GroupData {
    spec: GroupSpec,
    field: Field,
    dim: usize,
    reflections: Vec<Reflection>,
    classes: Vec<ReflectionClass>,
    group_order: u128,
    nonresidue: Option<Fq>,
    /// Full element list for orthogonal and symmetric groups.
    elements: Option<Vec<Mat>>,
    /// Gram matrix of the invariant form (orthogonal families only).
    form: Option<Mat>,
}

impl GroupData {
    pub fn new(spec: GroupSpec) -> Result<GroupData> {
        spec.validate()?;
        let (p, r) = factor_prime_power(spec.q)?;
        let field = Field::new(p, r)?;
        let nonresidue = smallest_nonsquare(&field);
        match spec.family {
            Family::GL | Family::SL => Self::build_linear(spec, field, nonresidue),
            Family::OOdd | Family::OPlus | Family::OMinus => {
                Self::build_orthogonal(spec, field, nonresidue)
            }
            Family::Sym => Self::build_symmetric(spec, field, nonresidue),
        }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    /// Dimension of the reflection representation.
    pub fn dim(&self) -> usize {
        self.dim
    }
    /// Reflections sorted by class id, then by enumeration order.
    pub fn reflections(&self) -> &[Reflection] {
        &self.reflections
    }
    pub fn classes(&self) -> &[ReflectionClass] {
        &self.classes
    }
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
    pub fn group_order(&self) -> u128 {
        self.group_order
    }
    pub fn nonresidue(&self) -> Option<&Fq> {
        self.nonresidue.as_ref()
    }
    /// All group elements (orthogonal and symmetric families only).
    pub fn elements(&self) -> Option<&[Mat]> {
        self.elements.as_deref()
    }
    /// Gram matrix of the preserved bilinear form (orthogonal only).
    pub fn form(&self) -> Option<&Mat> {
        self.form.as_ref()
    }

    /// Human-readable group name, e.g. `GL_2(F_3)` or `Sym(5)/F_3`.
    pub fn label(&self) -> String {
        match self.spec.family {
            Family::Sym => format!("Sym({})/F_{}", self.spec.n, self.spec.q),
            f => format!("{}_{}(F_{})", f.label(), self.spec.n, self.spec.q),
        }
    }

    /// Parameter names for the class parameters `c_1, …, c_m`: a single
    /// class is named `c`; the two transvection classes of `SL_2` over an
    /// odd field are `cQ` (square class) and `cR` (nonsquare class);
    /// otherwise `c1, …, cm`.
    pub fn param_names(&self) -> Vec<String> {
        let m = self.classes.len();
        if m == 1 {
            return vec!["c".to_string()];
        }
        if self.spec.family == Family::SL
            && self.spec.n == 2
            && self.field.p() != 2
            && m == 2
        {
            return vec!["cQ".to_string(), "cR".to_string()];
        }
        (1..=m).map(|i| format!("c{i}")).collect()
    }

    /// Class indices (into `classes`) in display order: semisimple classes
    /// first for linear families, natural id order otherwise.
    pub fn display_class_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.classes.len()).collect();
        if matches!(self.spec.family, Family::GL | Family::SL) {
            order.sort_by_key(|&i| {
                let cls = &self.classes[i];
                (cls.kind == ClassKind::Unipotent, cls.class_id)
            });
        }
        order
    }

    /// A generating set: elementary transvections `I + θ^k E_{ij}` for
    /// `SL`, plus `diag(ĝ, 1, …, 1)` for `GL`; the full element list for
    /// orthogonal and symmetric families.
    pub fn standard_generators(&self) -> Vec<Mat> {
        match self.spec.family {
            Family::GL | Family::SL => {
                let n = self.dim;
                let field = &self.field;
                let theta = field.multiplicative_generator();
                let mut gens = Vec::new();
                if n >= 2 {
                    for i in 0..n {
                        for j in 0..n {
                            if i == j {
                                continue;
                            }
                            let mut pow = field.one();
                            for _ in 0..field.r() {
                                let mut g = Mat::identity(field, n);
                                g.set(i, j, pow.clone());
                                gens.push(g);
                                pow = &pow * &theta;
                            }
                        }
                    }
                }
                if self.spec.family == Family::GL && !theta.is_one() {
                    let mut g = Mat::identity(field, n);
                    g.set(0, 0, theta);
                    gens.push(g);
                }
                if gens.is_empty() {
                    gens.push(Mat::identity(field, n));
                }
                gens
            }
            _ => self
                .elements
                .as_ref()
                .expect("orthogonal/symmetric groups store their elements")
                .clone(),
        }
    }

    // -- GL / SL ----------------------------------------------------------

    fn build_linear(spec: GroupSpec, field: Field, nonresidue: Option<Fq>) -> Result<GroupData> {
        let n = spec.n;
        let q = field.q();
        let sl_only = spec.family == Family::SL;

        let mut reflections: Vec<Reflection> = Vec::new();
        // Roots in projective normal form: pivot position k holds 1,
        // earlier coordinates are 0, the tail runs in ascending order
        // (first tail coordinate most significant).
        for k in 0..n {
            let tail_len = n - 1 - k;
            let tail_count = q.pow(tail_len as u32);
            for tail_code in 0..tail_count {
                let mut alpha = vec![field.zero(); n];
                alpha[k] = field.one();
                let mut rest = tail_code;
                for offset in (0..tail_len).rev() {
                    alpha[k + 1 + offset] = field.element((rest % q) as u32);
                    rest /= q;
                }
                // Coroots: every nonzero vector, ascending by code
                // (coordinate 0 least significant).
                for code in 1..q.pow(n as u32) {
                    let mut check = vec![field.zero(); n];
                    let mut rest = code;
                    for c in check.iter_mut() {
                        *c = field.element((rest % q) as u32);
                        rest /= q;
                    }
                    let pairing = dot(&field, &alpha, &check);
                    if pairing.is_one() {
                        continue; // λ = 0: not invertible
                    }
                    if sl_only && !pairing.is_zero() {
                        continue; // det ≠ 1
                    }
                    let mut refl = Reflection::from_root_data(&field, alpha.clone(), check);
                    refl.class_id = linear_class_id(&spec, &field, &refl);
                    reflections.push(refl);
                }
            }
        }

        reflections.sort_by_key(|r| r.class_id);
        // Renumber class ids contiguously (1..=m) preserving their order,
        // so ids line up with parameter indices even when some eigenvalues
        // do not occur.
        let mut new_id = 0usize;
        let mut last_old = usize::MAX;
        for refl in reflections.iter_mut() {
            if refl.class_id != last_old {
                last_old = refl.class_id;
                new_id += 1;
            }
            refl.class_id = new_id;
        }
        let classes = collect_classes(&reflections);
        let group_order = linear_group_order(&spec, q)?;
        Ok(GroupData {
            spec,
            field,
            dim: n,
            reflections,
            classes,
            group_order,
            nonresidue,
            elements: None,
            form: None,
        })
    }

    // -- orthogonal -------------------------------------------------------

    fn build_orthogonal(
        spec: GroupSpec,
        field: Field,
        nonresidue: Option<Fq>,
    ) -> Result<GroupData> {
        let n = spec.n;
        // Diagonal Gram matrix of the form.
        let mut diag = vec![field.one(); n];
        match spec.family {
            Family::OOdd => {}
            Family::OPlus => {
                // x² - y² per hyperbolic pair: always split.
                for d in diag.iter_mut().skip(1).step_by(2) {
                    *d = -&field.one();
                }
            }
            Family::OMinus => {
                for d in diag.iter_mut().skip(1).step_by(2) {
                    *d = -&field.one();
                }
                // Twist the last entry by a nonresidue to flip the type.
                let r = nonresidue
                    .clone()
                    .ok_or_else(|| Error::Internal("odd field has a nonresidue".into()))?;
                diag[n - 1] = -&r;
            }
            _ => unreachable!(),
        }
        let form = Mat::from_fn(&field, n, n, |i, j| {
            if i == j {
                diag[i].clone()
            } else {
                field.zero()
            }
        });

        let elements = enumerate_isometries(&field, &form)?;
        let group_order = elements.len() as u128;
        let (reflections, classes) = classify_by_conjugation(&field, n, &elements)?;

        Ok(GroupData {
            spec,
            field,
            dim: n,
            reflections,
            classes,
            group_order,
            nonresidue,
            elements: Some(elements),
            form: Some(form),
        })
    }

    // -- symmetric --------------------------------------------------------

    fn build_symmetric(
        spec: GroupSpec,
        field: Field,
        nonresidue: Option<Fq>,
    ) -> Result<GroupData> {
        let big_n = spec.n;
        let dim = big_n - 1;
        let mut perm: Vec<usize> = (0..big_n).collect();
        let mut elements: Vec<Mat> = Vec::new();
        loop {
            elements.push(permutation_matrix(&field, &perm));
            if !next_permutation(&mut perm) {
                break;
            }
        }
        let group_order = elements.len() as u128;
        let (reflections, classes) = classify_by_conjugation(&field, dim, &elements)?;
        Ok(GroupData {
            spec,
            field,
            dim,
            reflections,
            classes,
            group_order,
            nonresidue,
            elements: Some(elements),
            form: None,
        })
    }
}

/// Class id for a `GL`/`SL` reflection.
///
/// `GL`: classes are indexed by the eigenvalue `λ ∈ F_q^*`; the id is the
/// element index of `λ`, so the transvection class (`λ = 1`) is id 1.
/// `SL`: one class (id 1), except `SL_2` over an odd field, where the
/// transvections split into the square class (id 1) and nonsquare class
/// (id 2) according to the square class of `γ`, where `T = α α∨ᵀ` and
/// `γ = -T_{12}` if `α = (1, a)`, `γ = T_{21}` if `α = (0, 1)`.
fn linear_class_id(spec: &GroupSpec, field: &Field, refl: &Reflection) -> usize {
    match spec.family {
        Family::GL => refl.lambda.idx() as usize,
        Family::SL => {
            if spec.n != 2 || field.p() == 2 {
                return 1;
            }
            let alpha = &refl.alpha;
            let check = &refl.alpha_check;
            let gamma = if !alpha[0].is_zero() {
                -&check[1]
            } else {
                check[0].clone()
            };
            if square_class(&gamma) {
                1
            } else {
                2
            }
        }
        _ => unreachable!("linear classification applies to GL/SL only"),
    }
}

/// Order of `GL_n(F_q)` or `SL_n(F_q)` with overflow checking.
fn linear_group_order(spec: &GroupSpec, q: u64) -> Result<u128> {
    let n = spec.n as u32;
    let qn = (q as u128).pow(n);
    let mut order: u128 = 1;
    for i in 0..n {
        let term = qn - (q as u128).pow(i);
        order = order
            .checked_mul(term)
            .ok_or_else(|| Error::Config("group order overflows".into()))?;
    }
    if spec.family == Family::SL {
        order /= (q - 1) as u128;
    }
    Ok(order)
}

/// Group the (already classified) reflections into `ReflectionClass`
/// records.  Reflections must be sorted by class id.
fn collect_classes(reflections: &[Reflection]) -> Vec<ReflectionClass> {
    let mut classes: Vec<ReflectionClass> = Vec::new();
    for (idx, refl) in reflections.iter().enumerate() {
        match classes.last_mut() {
            Some(last) if last.class_id == refl.class_id => last.size += 1,
            _ => classes.push(ReflectionClass {
                class_id: refl.class_id,
                kind: if refl.is_unipotent() {
                    ClassKind::Unipotent
                } else {
                    ClassKind::Semisimple
                },
                size: 1,
                representative: idx,
                lambda: refl.lambda.clone(),
            }),
        }
    }
    classes
}

/// All isometries of the bilinear form with Gram matrix `a`, by
/// depth-first search over columns with pairwise pruning.
fn enumerate_isometries(field: &Field, a: &Mat) -> Result<Vec<Mat>> {
    let n = a.rows();
    let q = field.q();
    let total = q.pow(n as u32);
    // All vectors in ascending code order (coordinate 0 least significant).
    let vectors: Vec<Vec<Fq>> = (0..total)
        .map(|code| {
            let mut v = vec![field.zero(); n];
            let mut rest = code;
            for c in v.iter_mut() {
                *c = field.element((rest % q) as u32);
                rest /= q;
            }
            v
        })
        .collect();
    let pairing = |u: &[Fq], v: &[Fq]| -> Fq {
        let mut acc = field.zero();
        for i in 0..n {
            for j in 0..n {
                let aij = a.get(i, j);
                if aij.is_zero() {
                    continue;
                }
                acc = &acc + &(&(&u[i] * aij) * &v[j]);
            }
        }
        acc
    };

    let mut elements = Vec::new();
    let mut cols: Vec<usize> = Vec::new();
    // Iterative DFS: stack of candidate cursors per depth.
    let mut cursors = vec![0u64];
    while !cursors.is_empty() {
        let li = cursors.len() - 1;
        let depth = cols.len();
        let mut exhausted = false;
        loop {
            let cursor = cursors[li];
            if cursor >= total {
                exhausted = true;
                break;
            }
            cursors[li] = cursor + 1;
            let cand = cursor as usize;
            let v = &vectors[cand];
            if pairing(v, v) != *a.get(depth, depth) {
                continue;
            }
            if cols
                .iter()
                .enumerate()
                .any(|(i, &ci)| pairing(&vectors[ci], v) != *a.get(i, depth))
            {
                continue;
            }
            cols.push(cand);
            if cols.len() == n {
                let g = Mat::from_fn(field, n, n, |i, j| vectors[cols[j]][i].clone());
                elements.push(g);
                if elements.len() > 200_000 {
                    return Err(Error::Config(
                        "orthogonal group is too large to enumerate".into(),
                    ));
                }
                cols.pop();
            } else {
                cursors.push(0);
            }
            break;
        }
        if exhausted {
            cursors.pop();
            cols.pop();
        }
    }
    Ok(elements)
}

/// Find the reflections among `elements`, then split them into conjugacy
/// classes by direct orbit computation.  Class ids follow discovery order
/// over the element-ordered reflection list.
fn classify_by_conjugation(
    field: &Field,
    n: usize,
    elements: &[Mat],
) -> Result<(Vec<Reflection>, Vec<ReflectionClass>)> {
    let mut reflections: Vec<Reflection> = Vec::new();
    let mut key_to_idx: HashMap<Vec<u32>, usize> = HashMap::new();
    for g in elements {
        debug_assert_eq!(g.rows(), n);
        if let Some(refl) = Reflection::from_matrix(field, g) {
            key_to_idx.insert(g.key(), reflections.len());
            reflections.push(refl);
        }
    }
    let inverses: Vec<Mat> = elements
        .iter()
        .map(|g| {
            g.inverse()
                .ok_or_else(|| Error::Internal("failed to invert a group element".into()))
        })
        .collect::<Result<_>>()?;

    let mut class_of = vec![0usize; reflections.len()];
    let mut next_id = 0usize;
    for i in 0..reflections.len() {
        if class_of[i] != 0 {
            continue;
        }
        next_id += 1;
        class_of[i] = next_id;
        for (h, hinv) in elements.iter().zip(&inverses) {
            let conj = h.mul(reflections[i].matrix()).mul(hinv);
            let j = *key_to_idx
                .get(&conj.key())
                .ok_or_else(|| Error::Internal("conjugate of a reflection is a reflection".into()))?;
            class_of[j] = next_id;
        }
    }
    for (refl, &cid) in reflections.iter_mut().zip(&class_of) {
        refl.class_id = cid;
    }
    reflections.sort_by_key(|r| r.class_id);
    let classes = collect_classes(&reflections);
    Ok((reflections, classes))
}

/// Matrix of the permutation `perm` (0-based one-line notation, `i ↦
/// perm[i]`) acting on the standard representation in the basis
/// `f_i = e_i - e_{i+1}`, `i = 1, …, N-1`.
fn permutation_matrix(field: &Field, perm: &[usize]) -> Mat {
    let big_n = perm.len();
    let dim = big_n - 1;
    let mut mat = Mat::zero(field, dim, dim);
    for j in 0..dim {
        // σ(f_{j+1}) = e_{σ(j+1)} - e_{σ(j+2)}, expanded in the f basis:
        // e_a - e_b = f_a + … + f_{b-1} (a < b), negated if a > b.
        let a = perm[j];
        let b = perm[j + 1];
        if a < b {
            for i in a..b {
                mat.set(i, j, field.one());
            }
        } else {
            for i in b..a {
                mat.set(i, j, -&field.one());
            }
        }
    }
    mat
}

/// Advance `perm` to the next permutation in lexicographic order;
/// `false` when `perm` was already the last one.
fn next_permutation(perm: &mut [usize]) -> bool {
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

/// The dual action `(g⁻¹)ᵀ` on `h*` of an arbitrary invertible `g`.
pub fn dual_action_matrix(g: &Mat) -> Mat {
    g.inverse()
        .expect("dual action requires an invertible matrix")
        .transpose()
}

fn dot(field: &Field, u: &[Fq], v: &[Fq]) -> Fq {
    let mut acc = field.zero();
    for (a, b) in u.iter().zip(v) {
        acc = &acc + &(a * b);
    }
    acc
}
