//! The stable category: maps modulo those factoring through E-projectives, stable
//! equivalences with explicit inverses, stabilized isomorphism certificates, syzygies
//! and Oort-type presentations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::modcat::{direct_sum, hom_space, kernel, solve_in_span, Module, Morphism};
use crate::relclass::{a_linear_retraction, has_minimal_covers, is_self_injective, AllowableClass, ClassKind, PdValue};

/// `Hom(X, Y)` with its stably trivial subspace `{p ∘ u}` for the canonical cover `p` of `Y`.
#[derive(Clone, Debug)]
pub struct StableHom {
    pub source: Module,
    pub target: Module,
    pub hom: Vec<Morphism>,
    /// Spanning set (reduced to a basis) of the stably trivial maps.
    pub trivial: Vec<Matrix>,
    pub quotient_dim: usize,
}

impl StableHom {
    pub fn hom_dim(&self) -> usize {
        self.hom.len()
    }
}

fn reduce_basis(ms: Vec<Matrix>, rows: usize, cols: usize) -> Vec<Matrix> {
    let mut out: Vec<Matrix> = Vec::new();
    let mut acc: Option<Matrix> = None;
    for m in ms {
        let row = Matrix::from_fn(m.field(), 1, rows * cols, |_, c| m.entries()[c]);
        let next = match &acc {
            Some(a) => a.vstack(&row),
            None => row,
        };
        let before = acc.as_ref().map_or(0, |a| a.rank());
        if next.rank() > before {
            acc = Some(next);
            out.push(m);
        }
    }
    out
}

/// Maps `X -> Y` that factor through the canonical cover of `Y`.
fn trivial_maps(class: &AllowableClass, x: &Module, y: &Module) -> Result<Vec<Matrix>> {
    if x.is_zero() || y.is_zero() {
        return Ok(vec![]);
    }
    let p = class.cover(y)?;
    let us = hom_space(x, p.source())?;
    let imgs = us.iter().map(|u| p.matrix().mul(u.matrix())).collect();
    Ok(reduce_basis(imgs, y.dim(), x.dim()))
}

pub fn stable_hom(class: &AllowableClass, x: &Module, y: &Module) -> Result<StableHom> {
    let hom = hom_space(x, y)?;
    let trivial = trivial_maps(class, x, y)?;
    let quotient_dim = hom.len() - trivial.len();
    Ok(StableHom { source: x.clone(), target: y.clone(), hom, trivial, quotient_dim })
}

pub fn is_stably_trivial(class: &AllowableClass, f: &Morphism) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    let trivial = trivial_maps(class, f.source(), f.target())?;
    Ok(solve_in_span(&trivial, f.matrix()).is_some())
}

/// Whether `f` and `g` (same ends) are stably equal.
pub fn stably_equal(class: &AllowableClass, f: &Morphism, g: &Morphism) -> Result<bool> {
    is_stably_trivial(class, &f.sub(g)?)
}

/// A stable inverse `h` of `f`: `f h - id` and `h f - id` factor through E-projectives.
pub fn stable_inverse(class: &AllowableClass, f: &Morphism) -> Result<Option<Morphism>> {
    let (x, y) = (f.source(), f.target());
    class.check_module(x)?;
    let fld = x.field();
    let hs = hom_space(y, x)?;
    let ty = trivial_maps(class, y, y)?;
    let tx = trivial_maps(class, x, x)?;
    let (ny, nx) = (y.dim() * y.dim(), x.dim() * x.dim());
    let total = ny + nx;
    if total == 0 {
        return Ok(Some(Morphism::zero(y, x)));
    }
    let ncols = hs.len() + ty.len() + tx.len();
    let mut a = Matrix::zeros(fld, total, ncols);
    for (k, h) in hs.iter().enumerate() {
        let fh = f.matrix().mul(h.matrix());
        let hf = h.matrix().mul(f.matrix());
        for (r, &v) in fh.entries().iter().enumerate() {
            a.set(r, k, v);
        }
        for (r, &v) in hf.entries().iter().enumerate() {
            a.set(ny + r, k, v);
        }
    }
    for (l, t) in ty.iter().enumerate() {
        for (r, &v) in t.entries().iter().enumerate() {
            a.set(r, hs.len() + l, fld.neg(v));
        }
    }
    for (m, t) in tx.iter().enumerate() {
        for (r, &v) in t.entries().iter().enumerate() {
            a.set(ny + r, hs.len() + ty.len() + m, fld.neg(v));
        }
    }
    let iy = Matrix::identity(fld, y.dim());
    let ix = Matrix::identity(fld, x.dim());
    let rhs = Matrix::from_fn(fld, total, 1, |r, _| if r < ny { iy.entries()[r] } else { ix.entries()[r - ny] });
    let Some(sol) = a.solve(&rhs)? else {
        return Ok(None);
    };
    let mut h = Matrix::zeros(fld, x.dim(), y.dim());
    for (k, hk) in hs.iter().enumerate() {
        h.add_scaled(hk.matrix(), sol.get(k, 0));
    }
    Ok(Some(Morphism::new_unchecked(y.clone(), x.clone(), h)))
}

pub fn is_stable_equivalence(class: &AllowableClass, f: &Morphism) -> Result<bool> {
    if class.is_split_semantics() {
        return Ok(true);
    }
    if frobenius_fast_path(class, f.source())? {
        // in the triangulated stable category, 0 -> K -> X ⊕ P -> Y -> 0 makes f invertible iff K ≅ 0
        let s = class.cover(f.target())?;
        let p = s.source().clone();
        let sum = direct_sum(f.source().algebra(), &[f.source().clone(), p])?;
        let m = Morphism::new_unchecked(sum.module, f.target().clone(), f.matrix().hstack(s.matrix()));
        return class.is_projective(&kernel(&m).object);
    }
    Ok(stable_inverse(class, f)?.is_some())
}

fn frobenius_fast_path(class: &AllowableClass, x: &Module) -> Result<bool> {
    let a = x.algebra();
    Ok(matches!(class.kind(), ClassKind::Absolute) && has_minimal_covers(a) && is_self_injective(a)?)
}

/// `X ⊕ P ≅ Y ⊕ Q` with `proj_Y ∘ iso ∘ inj_X = f`.
#[derive(Clone, Debug)]
pub struct StabilizedIsoCertificate {
    pub f: Morphism,
    pub p: Module,
    pub q: Module,
    pub iso: Morphism,
}

impl StabilizedIsoCertificate {
    /// Re-checks the certificate: `iso` is an invertible A-linear map `X ⊕ P -> Y ⊕ Q`,
    /// `P` and `Q` are E-projective, and the compatibility equation holds.
    pub fn verify(&self, class: &AllowableClass) -> Result<bool> {
        let (x, y) = (self.f.source(), self.f.target());
        let (dx, dy, dp, dq) = (x.dim(), y.dim(), self.p.dim(), self.q.dim());
        let g = &self.iso;
        if g.source().dim() != dx + dp || g.target().dim() != dy + dq {
            return Ok(false);
        }
        let a = x.algebra();
        let src = direct_sum(a, &[x.clone(), self.p.clone()])?.module;
        let tgt = direct_sum(a, &[y.clone(), self.q.clone()])?.module;
        let Ok(g) = Morphism::new(src, tgt, g.matrix().clone()) else {
            return Ok(false);
        };
        if !g.matrix().is_invertible() {
            return Ok(false);
        }
        if !class.is_projective(&self.p)? || !class.is_projective(&self.q)? {
            return Ok(false);
        }
        Ok(g.matrix().block(0, 0, dy, dx) == *self.f.matrix())
    }
}

/// Certificate built from the split sequence `0 -> ker m -> X ⊕ P -> Y -> 0` with `m = (f, s)`
/// and `s` the canonical cover of `Y`. Isomorphisms get `P = Q = 0`.
pub fn hilton_rees_certificate(class: &AllowableClass, f: &Morphism) -> Result<Option<StabilizedIsoCertificate>> {
    let (x, y) = (f.source(), f.target());
    let a = x.algebra().clone();
    let zero = Module::zero(a.clone());
    if f.is_iso() {
        let src = direct_sum(&a, &[x.clone(), zero.clone()])?.module;
        let tgt = direct_sum(&a, &[y.clone(), zero.clone()])?.module;
        let iso = Morphism::new_unchecked(src, tgt, f.matrix().clone());
        return Ok(Some(StabilizedIsoCertificate { f: f.clone(), p: zero.clone(), q: zero, iso }));
    }
    if !is_stable_equivalence(class, f)? {
        return Ok(None);
    }
    let s = class.cover(y)?;
    let p = s.source().clone();
    let sum = direct_sum(&a, &[x.clone(), p.clone()])?;
    let m = Morphism::new_unchecked(sum.module.clone(), y.clone(), f.matrix().hstack(s.matrix()));
    let k = kernel(&m);
    if !class.is_projective(&k.object)? {
        return Ok(None);
    }
    let Some(r) = a_linear_retraction(&k.map)? else {
        return Ok(None);
    };
    let tgt = direct_sum(&a, &[y.clone(), k.object.clone()])?.module;
    let g = Morphism::new_unchecked(sum.module.clone(), tgt, m.matrix().vstack(&r));
    let cert = StabilizedIsoCertificate { f: f.clone(), p, q: k.object, iso: g };
    if !cert.verify(class)? {
        return Err(Error::Hypothesis("assembled certificate failed verification".into()));
    }
    Ok(Some(cert))
}

/// `Ω^i f` between the `i`-th syzygies of canonical resolutions, with the commuting squares checked.
pub fn chain_lift(class: &AllowableClass, f: &Morphism, i: usize) -> Result<Morphism> {
    if i == 0 {
        return Ok(f.clone());
    }
    let rx = class.resolution(f.source(), i)?;
    let ry = class.resolution(f.target(), i)?;
    let chain = class.chain_map(&rx, &ry, f, i - 1)?;
    // squares: p_0^Y θ_0 = f p_0^X and d^Y θ_j = θ_{j-1} d^X
    let aug = ry.augmentation().matrix().mul(chain.levels[0].matrix());
    if aug != f.matrix().mul(rx.augmentation().matrix()) {
        return Err(Error::NonCommuting("lift fails over the augmentation".into()));
    }
    for j in 1..i {
        let l = ry.differential(j).matrix().mul(chain.levels[j].matrix());
        let r = chain.levels[j - 1].matrix().mul(rx.differential(j).matrix());
        if l != r {
            return Err(Error::NonCommuting(format!("lift fails at degree {j}")));
        }
    }
    Ok(chain.syzygy_maps[i - 1].clone())
}

/// `0 -> Q -> P ⊕ X -> Y -> 0` in E with `P` E-projective, the map restricting to `f` on `X`,
/// and `Q` of E-projective dimension at most `i - 1`.
#[derive(Clone, Debug)]
pub struct OortPresentation {
    pub degree: usize,
    pub f: Morphism,
    pub p: Module,
    pub q: Module,
    pub inclusion: Morphism,
    pub projection: Morphism,
    pub q_dimension: PdValue,
}

#[derive(Clone, Debug)]
pub struct OortFailure {
    pub degree: usize,
    /// The syzygy stage whose comparison map was examined.
    pub stage: usize,
    pub q_dimension: PdValue,
    pub syzygy_map_is_stable_equivalence: bool,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub enum OortOutcome {
    Presented(OortPresentation),
    Failed(OortFailure),
}

impl OortOutcome {
    pub fn presentation(&self) -> Option<&OortPresentation> {
        match self {
            OortOutcome::Presented(p) => Some(p),
            OortOutcome::Failed(_) => None,
        }
    }
}

impl OortPresentation {
    pub fn verify(&self, class: &AllowableClass, bound: usize) -> Result<bool> {
        let inc = &self.inclusion;
        let pr = &self.projection;
        if !inc.is_injective() || !pr.is_surjective() || !pr.matrix().mul(inc.matrix()).is_zero() {
            return Ok(false);
        }
        if inc.source().dim() + pr.target().dim() != pr.source().dim() {
            return Ok(false);
        }
        if !class.is_epi(pr)? || !class.is_projective(&self.p)? {
            return Ok(false);
        }
        let dx = self.f.source().dim();
        let dp = self.p.dim();
        if pr.matrix().block(0, dp, pr.target().dim(), dx) != *self.f.matrix() {
            return Ok(false);
        }
        let pd = class.projective_dimension(&self.q, bound.max(self.degree))?;
        Ok(matches!(pd, PdValue::Finite(n) if n + 1 <= self.degree))
    }
}

/// Presentation of `f: X -> Y` at degree `i >= 1`, built from `(s, f): P ⊕ X -> Y` with `s`
/// the canonical cover of `Y`; `Q` is its kernel.
pub fn oort_presentation(class: &AllowableClass, f: &Morphism, i: usize) -> Result<OortOutcome> {
    if i == 0 {
        return Err(Error::Hypothesis("presentation degree must be at least 1".into()));
    }
    let (x, y) = (f.source(), f.target());
    let a = x.algebra().clone();
    let s = class.cover(y)?;
    let p = s.source().clone();
    let sum = direct_sum(&a, &[p.clone(), x.clone()])?;
    let projection = Morphism::new_unchecked(sum.module.clone(), y.clone(), s.matrix().hstack(f.matrix()));
    let k = kernel(&projection);
    let pd = class.projective_dimension(&k.object, i.max(8))?;
    let ok_dim = matches!(pd, PdValue::Finite(n) if n < i);
    let in_class = class.is_epi(&projection)?;
    if ok_dim && in_class {
        return Ok(OortOutcome::Presented(OortPresentation {
            degree: i,
            f: f.clone(),
            p,
            q: k.object,
            inclusion: k.map,
            projection,
            q_dimension: pd,
        }));
    }
    let omega = chain_lift(class, f, i)?;
    let syzygy_ok = is_stable_equivalence(class, &omega)?;
    let reason = if !in_class {
        "presentation sequence is not in the class".to_string()
    } else {
        format!("kernel has E-projective dimension {pd}, need at most {}", i - 1)
    };
    Ok(OortOutcome::Failed(OortFailure {
        degree: i,
        stage: i,
        q_dimension: pd,
        syzygy_map_is_stable_equivalence: syzygy_ok,
        reason,
    }))
}

/// Searches `Hom(x, y)` for a stable equivalence: exhaustively for at most 1024 maps,
/// otherwise by `trials` seeded random combinations.
pub fn find_stable_equivalence(
    class: &AllowableClass,
    x: &Module,
    y: &Module,
    seed: u64,
    trials: usize,
) -> Result<Option<Morphism>> {
    let hs = hom_space(x, y)?;
    let fld = x.field();
    let p = fld.p() as u64;
    let k = hs.len();
    let combine = |coef: &[u32]| {
        let mut m = Matrix::zeros(fld, y.dim(), x.dim());
        for (c, h) in coef.iter().zip(&hs) {
            m.add_scaled(h.matrix(), *c);
        }
        Morphism::new_unchecked(x.clone(), y.clone(), m)
    };
    if let Some(total) = p.checked_pow(k as u32).filter(|&t| t <= 1024) {
        let mut coef = vec![0u32; k];
        for code in 0..total {
            let mut c = code;
            for v in coef.iter_mut() {
                *v = (c % p) as u32;
                c /= p;
            }
            let f = combine(&coef);
            if is_stable_equivalence(class, &f)? {
                return Ok(Some(f));
            }
        }
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let coef: Vec<u32> = (0..k).map(|_| rng.gen_range(0..fld.p())).collect();
        let f = combine(&coef);
        if is_stable_equivalence(class, &f)? {
            return Ok(Some(f));
        }
    }
    Ok(None)
}
