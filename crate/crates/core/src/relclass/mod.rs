//! Allowable classes of short exact sequences and the relative notions they define:
//! E-monics and E-epics, E-projectives and E-injectives, canonical covers and envelopes,
//! resolutions, relative Ext and E-projective dimension.

mod covers;
pub(crate) use covers::has_minimal_covers;
mod resolution;

use crate::algebra::{AlgebraRef, Subalgebra};
use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::modcat::{cokernel, hom_space, intertwiners, solve_in_span, Module, Morphism};

pub use resolution::{ext_from_resolution, ChainMap, ExtGroup, ExtMap, PdValue, Resolution};

#[derive(Clone, Debug)]
pub enum ClassKind {
    /// All short exact sequences.
    Absolute,
    /// Split sequences only.
    Split,
    /// Sequences that split over the subalgebra.
    Relative(Subalgebra),
    /// Sequences on which `Hom(P, -)` is exact for every listed generator.
    Heller(Vec<Module>),
}

#[derive(Clone, Debug)]
pub struct AllowableClass {
    algebra: AlgebraRef,
    kind: ClassKind,
}

impl AllowableClass {
    pub fn absolute(algebra: AlgebraRef) -> Self {
        AllowableClass { algebra, kind: ClassKind::Absolute }
    }

    pub fn split(algebra: AlgebraRef) -> Self {
        AllowableClass { algebra, kind: ClassKind::Split }
    }

    pub fn relative(sub: Subalgebra) -> Self {
        AllowableClass { algebra: sub.parent().clone(), kind: ClassKind::Relative(sub) }
    }

    /// The listed generators are taken to be the E-projectives; "enough E-projectives" is checked
    /// lazily when a cover is requested.
    pub fn heller(algebra: AlgebraRef, generators: Vec<Module>) -> Result<Self> {
        if generators.iter().any(|g| !g.algebra().same_as(&algebra)) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(AllowableClass { algebra, kind: ClassKind::Heller(generators) })
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn kind(&self) -> &ClassKind {
        &self.kind
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            ClassKind::Absolute => "absolute",
            ClassKind::Split => "split",
            ClassKind::Relative(_) => "relative",
            ClassKind::Heller(_) => "heller",
        }
    }

    /// True when only split sequences are in the class, so every module is E-projective.
    pub fn is_split_semantics(&self) -> bool {
        match &self.kind {
            ClassKind::Split => true,
            ClassKind::Relative(b) => b.is_whole(),
            _ => false,
        }
    }

    pub(crate) fn check_module(&self, m: &Module) -> Result<()> {
        if m.algebra().same_as(&self.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    fn subalgebra_pairs<'a>(b: &Subalgebra, s: &'a Module, t: &'a Module) -> Vec<(Matrix, Matrix)> {
        b.basis().iter().map(|v| (s.combination(v), t.combination(v))).collect()
    }

    /// A section of `f` that is linear for the class's splitting ring, if one exists.
    pub fn section(&self, f: &Morphism) -> Result<Option<Matrix>> {
        self.check_module(f.source())?;
        if !f.is_surjective() {
            return Ok(None);
        }
        let (x, y) = (f.source(), f.target());
        let fld = x.field();
        let id = Matrix::identity(fld, y.dim());
        let candidates: Vec<Matrix> = match &self.kind {
            ClassKind::Absolute | ClassKind::Heller(_) => {
                return Ok(f.matrix().solve(&id)?);
            }
            ClassKind::Split => hom_space(y, x)?.into_iter().map(|h| h.matrix().clone()).collect(),
            ClassKind::Relative(b) => {
                let pairs = Self::subalgebra_pairs(b, y, x);
                let refs: Vec<(&Matrix, &Matrix)> = pairs.iter().map(|(a, b)| (a, b)).collect();
                intertwiners(fld, y.dim(), x.dim(), &refs)
            }
        };
        Ok(combine_solution(&candidates, (x.dim(), y.dim()), |s| f.matrix().mul(s), &id))
    }

    /// A retraction of `f` that is linear for the class's splitting ring, if one exists.
    pub fn retraction(&self, f: &Morphism) -> Result<Option<Matrix>> {
        self.check_module(f.source())?;
        if !f.is_injective() {
            return Ok(None);
        }
        let (x, y) = (f.source(), f.target());
        let fld = x.field();
        let id = Matrix::identity(fld, x.dim());
        let candidates: Vec<Matrix> = match &self.kind {
            ClassKind::Absolute | ClassKind::Heller(_) => {
                let t = f.matrix().transpose().solve(&id)?;
                return Ok(t.map(|t| t.transpose()));
            }
            ClassKind::Split => hom_space(y, x)?.into_iter().map(|h| h.matrix().clone()).collect(),
            ClassKind::Relative(b) => {
                let pairs = Self::subalgebra_pairs(b, y, x);
                let refs: Vec<(&Matrix, &Matrix)> = pairs.iter().map(|(a, b)| (a, b)).collect();
                intertwiners(fld, y.dim(), x.dim(), &refs)
            }
        };
        Ok(combine_solution(&candidates, (x.dim(), y.dim()), |r| r.mul(f.matrix()), &id))
    }

    pub fn is_epi(&self, f: &Morphism) -> Result<bool> {
        self.check_module(f.source())?;
        if !f.is_surjective() {
            return Ok(false);
        }
        match &self.kind {
            ClassKind::Absolute => Ok(true),
            ClassKind::Heller(gens) => {
                for p in gens {
                    if !heller_surjective(p, f)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            _ => Ok(self.section(f)?.is_some()),
        }
    }

    pub fn is_mono(&self, f: &Morphism) -> Result<bool> {
        self.check_module(f.source())?;
        if !f.is_injective() {
            return Ok(false);
        }
        match &self.kind {
            ClassKind::Absolute => Ok(true),
            ClassKind::Heller(_) => self.is_epi(&cokernel(f).map),
            _ => Ok(self.retraction(f)?.is_some()),
        }
    }

    /// An A-linear section of the canonical cover when `m` is E-projective.
    pub fn projectivity_witness(&self, m: &Module) -> Result<Option<Morphism>> {
        self.check_module(m)?;
        let p = self.cover(m)?;
        Ok(a_linear_section(&p)?.map(|s| Morphism::new_unchecked(m.clone(), p.source().clone(), s)))
    }

    pub fn is_projective(&self, m: &Module) -> Result<bool> {
        if m.is_zero() || self.is_split_semantics() {
            return Ok(true);
        }
        if matches!(self.kind, ClassKind::Absolute) && covers::has_minimal_covers(m.algebra()) {
            self.check_module(m)?;
            return Ok(self.cover(m)?.source().dim() == m.dim());
        }
        Ok(self.projectivity_witness(m)?.is_some())
    }

    /// An A-linear retraction of the canonical envelope when `m` is E-injective.
    pub fn injectivity_witness(&self, m: &Module) -> Result<Option<Morphism>> {
        self.check_module(m)?;
        let e = self.envelope(m)?;
        Ok(a_linear_retraction(&e)?.map(|r| Morphism::new_unchecked(e.target().clone(), m.clone(), r)))
    }

    pub fn is_injective(&self, m: &Module) -> Result<bool> {
        if m.is_zero() || self.is_split_semantics() {
            return Ok(true);
        }
        if let ClassKind::Absolute = self.kind {
            let op = AllowableClass::absolute(m.dual().algebra().clone());
            return op.is_projective(&m.dual());
        }
        Ok(self.injectivity_witness(m)?.is_some())
    }
}

/// Whether the regular module of an absolute class is injective (cached on the algebra).
pub(crate) fn is_self_injective(a: &AlgebraRef) -> Result<bool> {
    if let Some(&b) = a.self_injective_cache().get() {
        return Ok(b);
    }
    let b = AllowableClass::absolute(a.clone()).is_injective(&Module::regular(a.clone()))?;
    Ok(*a.self_injective_cache().get_or_init(|| b))
}

/// Whether `Hom(p, f)` is surjective.
fn heller_surjective(p: &Module, f: &Morphism) -> Result<bool> {
    let to_y = hom_space(p, f.target())?;
    if to_y.is_empty() {
        return Ok(true);
    }
    let to_x = hom_space(p, f.source())?;
    let fld = p.field();
    let n = p.dim() * f.target().dim();
    let images = Matrix::from_fn(fld, to_x.len(), n, |r, c| f.matrix().mul(to_x[r].matrix()).entries()[c]);
    Ok(images.rank() == to_y.len())
}

/// Some combination `s` (of shape `shape`) of `candidates` with `apply(s) = rhs`.
fn combine_solution(
    candidates: &[Matrix],
    shape: (usize, usize),
    apply: impl Fn(&Matrix) -> Matrix,
    rhs: &Matrix,
) -> Option<Matrix> {
    let mut s = Matrix::zeros(rhs.field(), shape.0, shape.1);
    if rhs.is_zero() {
        return Some(s);
    }
    let images: Vec<Matrix> = candidates.iter().map(&apply).collect();
    let coef = solve_in_span(&images, rhs)?;
    for (c, m) in coef.iter().zip(candidates) {
        s.add_scaled(m, *c);
    }
    Some(s)
}

/// An A-linear section of a surjection, if any.
pub(crate) fn a_linear_section(p: &Morphism) -> Result<Option<Matrix>> {
    if !p.is_surjective() {
        return Ok(None);
    }
    let y = p.target();
    let homs: Vec<Matrix> = hom_space(y, p.source())?.into_iter().map(|h| h.matrix().clone()).collect();
    let shape = (p.source().dim(), y.dim());
    Ok(combine_solution(&homs, shape, |s| p.matrix().mul(s), &Matrix::identity(y.field(), y.dim())))
}

/// An A-linear retraction of an injection, if any.
pub(crate) fn a_linear_retraction(i: &Morphism) -> Result<Option<Matrix>> {
    if !i.is_injective() {
        return Ok(None);
    }
    let x = i.source();
    let homs: Vec<Matrix> = hom_space(i.target(), x)?.into_iter().map(|h| h.matrix().clone()).collect();
    let shape = (x.dim(), i.target().dim());
    Ok(combine_solution(&homs, shape, |r| r.mul(i.matrix()), &Matrix::identity(x.field(), x.dim())))
}
