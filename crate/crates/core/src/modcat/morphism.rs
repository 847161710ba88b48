use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::Matrix;

use super::Module;

/// An A-linear map. `matrix` is `dim(target) x dim(source)` and satisfies
/// `matrix * action_src(b) = action_tgt(b) * matrix`.
#[derive(Clone, PartialEq)]
pub struct Morphism {
    source: Module,
    target: Module,
    matrix: Matrix,
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism({} -> {}) {:?}", self.source.dim(), self.target.dim(), self.matrix)
    }
}

impl Morphism {
    pub fn new(source: Module, target: Module, matrix: Matrix) -> Result<Self> {
        if !source.same_algebra(&target) {
            return Err(Error::AlgebraMismatch);
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::InvalidMorphism(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        let m = Morphism { source, target, matrix };
        if !m.intertwines() {
            return Err(Error::InvalidMorphism("matrix does not intertwine the actions".into()));
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(source: Module, target: Module, matrix: Matrix) -> Self {
        debug_assert_eq!(matrix.rows(), target.dim());
        debug_assert_eq!(matrix.cols(), source.dim());
        Morphism { source, target, matrix }
    }

    pub fn intertwines(&self) -> bool {
        (0..self.source.algebra().dim()).all(|b| {
            self.matrix.mul(self.source.action(b)) == self.target.action(b).mul(&self.matrix)
        })
    }

    pub fn identity(m: &Module) -> Self {
        Morphism::new_unchecked(m.clone(), m.clone(), Matrix::identity(m.field(), m.dim()))
    }

    pub fn zero(source: &Module, target: &Module) -> Self {
        Morphism::new_unchecked(
            source.clone(),
            target.clone(),
            Matrix::zeros(source.field(), target.dim(), source.dim()),
        )
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `self ∘ g`: first `g`, then `self`.
    pub fn compose(&self, g: &Morphism) -> Result<Morphism> {
        if g.target != self.source {
            return Err(Error::ShapeMismatch("composition: target and source differ".into()));
        }
        Ok(Morphism::new_unchecked(g.source.clone(), self.target.clone(), self.matrix.mul(&g.matrix)))
    }

    /// Composition that only checks dimensions; for internal use where modules agree by construction.
    pub(crate) fn then_unchecked(&self, f: &Morphism) -> Morphism {
        Morphism::new_unchecked(self.source.clone(), f.target.clone(), f.matrix.mul(&self.matrix))
    }

    fn same_ends(&self, other: &Morphism) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::ShapeMismatch("morphisms have different source or target".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        self.same_ends(other)?;
        Ok(Morphism::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.add(&other.matrix)))
    }

    pub fn sub(&self, other: &Morphism) -> Result<Morphism> {
        self.same_ends(other)?;
        Ok(Morphism::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.sub(&other.matrix)))
    }

    pub fn neg(&self) -> Morphism {
        Morphism::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.neg())
    }

    pub fn scale(&self, s: u32) -> Morphism {
        Morphism::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.scale(s))
    }

    /// Same matrix with source and target replaced by equal modules.
    pub fn retarget(&self, source: &Module, target: &Module) -> Result<Morphism> {
        if *source != self.source || *target != self.target {
            return Err(Error::ShapeMismatch("retarget onto unequal modules".into()));
        }
        Ok(Morphism::new_unchecked(source.clone(), target.clone(), self.matrix.clone()))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_iso(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.matrix.is_identity()
    }

    pub fn inverse(&self) -> Option<Morphism> {
        let inv = self.matrix.inverse()?;
        Some(Morphism::new_unchecked(self.target.clone(), self.source.clone(), inv))
    }

    /// The transpose, a map between duals over the opposite algebra.
    pub fn dual(&self) -> Morphism {
        Morphism::new_unchecked(self.target.dual(), self.source.dual(), self.matrix.transpose())
    }

    /// The dual with explicit (already dualized) ends.
    pub fn dual_between(&self, target_dual: &Module, source_dual: &Module) -> Morphism {
        Morphism::new_unchecked(target_dual.clone(), source_dual.clone(), self.matrix.transpose())
    }
}
