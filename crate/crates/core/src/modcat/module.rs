use std::fmt;
use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraRef};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};

use super::Morphism;

/// A finite-dimensional right module. `action[b]` is the matrix of `v -> v * b_b`
/// acting on column vectors, so `action(b_i b_j) = action(b_j) * action(b_i)`.
#[derive(Clone)]
pub struct Module {
    inner: Arc<ModuleInner>,
}

struct ModuleInner {
    algebra: AlgebraRef,
    dim: usize,
    action: Vec<Matrix>,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module(dim {})", self.dim())
    }
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.dim() == other.dim()
                && self.inner.action == other.inner.action
                && self.algebra().same_as(other.algebra()))
    }
}

impl Module {
    /// Validates the unit and multiplication laws on all basis pairs.
    pub fn new(algebra: AlgebraRef, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        let m = Self::new_unchecked(algebra, dim, action)?;
        m.validate()?;
        Ok(m)
    }

    /// Shape checks only.
    pub fn new_unchecked(algebra: AlgebraRef, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        if action.len() != algebra.dim() {
            return Err(Error::InvalidModule(format!(
                "expected {} action matrices, got {}",
                algebra.dim(),
                action.len()
            )));
        }
        if action.iter().any(|a| a.rows() != dim || a.cols() != dim || a.field() != algebra.field()) {
            return Err(Error::InvalidModule(format!("action matrices must be {dim}x{dim} over the algebra field")));
        }
        Ok(Module { inner: Arc::new(ModuleInner { algebra, dim, action }) })
    }

    pub fn validate(&self) -> Result<()> {
        let a = self.algebra();
        if self.combination(a.unit()) != Matrix::identity(a.field(), self.dim()) {
            return Err(Error::InvalidModule("unit does not act as the identity".into()));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.combination(a.product(i, j));
                let rhs = self.inner.action[j].mul(&self.inner.action[i]);
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!("action fails on basis pair ({i}, {j})")));
                }
            }
        }
        Ok(())
    }

    pub fn zero(algebra: AlgebraRef) -> Self {
        let f = algebra.field();
        let action = vec![Matrix::zeros(f, 0, 0); algebra.dim()];
        Module { inner: Arc::new(ModuleInner { algebra, dim: 0, action }) }
    }

    /// A acting on itself from the right.
    pub fn regular(algebra: AlgebraRef) -> Self {
        let d = algebra.dim();
        let f = algebra.field();
        let action = (0..d)
            .map(|b| Matrix::from_fn(f, d, d, |m, k| algebra.product(k, b)[m]))
            .collect();
        Module { inner: Arc::new(ModuleInner { algebra, dim: d, action }) }
    }

    /// Free module A^n.
    pub fn free(algebra: AlgebraRef, n: usize) -> Self {
        let r = Self::regular(algebra.clone());
        Self::direct_sum_modules(&algebra, &vec![r; n])
    }

    /// `e_v A` together with its inclusion into the regular module.
    pub fn indecomposable_projective(algebra: &AlgebraRef, vertex: usize) -> Result<(Module, Morphism)> {
        let prov = algebra.provenance().ok_or(Error::MissingProvenance)?;
        if vertex >= prov.idempotents.len() {
            return Err(Error::InvalidModule(format!("vertex {vertex} out of range")));
        }
        let idx: Vec<usize> = (0..algebra.dim()).filter(|&b| prov.endpoints[b].0 == vertex).collect();
        let f = algebra.field();
        let basis = Matrix::from_fn(f, algebra.dim(), idx.len(), |r, c| u32::from(r == idx[c]));
        let reg = Module::regular(algebra.clone());
        reg.submodule(&basis)
    }

    pub fn indecomposable_projectives(algebra: &AlgebraRef) -> Result<Vec<Module>> {
        let n = algebra.vertex_count().ok_or(Error::MissingProvenance)?;
        (0..n).map(|v| Self::indecomposable_projective(algebra, v).map(|p| p.0)).collect()
    }

    /// The simple module at a vertex: `e_v` acts as 1, everything else as 0.
    pub fn simple(algebra: &AlgebraRef, vertex: usize) -> Result<Module> {
        let prov = algebra.provenance().ok_or(Error::MissingProvenance)?;
        if vertex >= prov.idempotents.len() {
            return Err(Error::InvalidModule(format!("vertex {vertex} out of range")));
        }
        let f = algebra.field();
        let e = prov.idempotents[vertex];
        let action = (0..algebra.dim()).map(|b| Matrix::from_fn(f, 1, 1, |_, _| u32::from(b == e))).collect();
        Module::new(algebra.clone(), 1, action)
    }

    pub fn simples(algebra: &AlgebraRef) -> Result<Vec<Module>> {
        let n = algebra.vertex_count().ok_or(Error::MissingProvenance)?;
        (0..n).map(|v| Self::simple(algebra, v)).collect()
    }

    /// All one-dimensional modules, found by enumerating characters on the generators.
    /// Returns an error when the enumeration would exceed `limit` candidates.
    pub fn one_dimensional(algebra: &AlgebraRef, limit: usize) -> Result<Vec<Module>> {
        let gens = algebra.generators().to_vec();
        let p = algebra.field().p() as usize;
        let total = p.checked_pow(gens.len() as u32).filter(|&t| t <= limit);
        let Some(total) = total else {
            return Err(Error::Unsupported("too many characters to enumerate".into()));
        };
        let f = algebra.field();
        // span of products of generators, expressed as a matrix from monomials to basis
        let span = algebra.generated_subalgebra(&gens.iter().map(|&g| algebra.basis_vector(g)).collect::<Vec<_>>());
        let mut out = Vec::new();
        for code in 0..total {
            let mut vals = Vec::with_capacity(gens.len());
            let mut c = code;
            for _ in &gens {
                vals.push((c % p) as u32);
                c /= p;
            }
            // the character is determined on the algebra by linearity; solve for it
            let chi = character_from_generators(algebra, &gens, &vals, &span, f);
            if let Some(chi) = chi {
                let action = chi.iter().map(|&x| Matrix::from_fn(f, 1, 1, |_, _| x)).collect();
                if let Ok(m) = Module::new(algebra.clone(), 1, action) {
                    out.push(m);
                }
            }
        }
        Ok(out)
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.inner.algebra
    }

    pub fn field(&self) -> Field {
        self.inner.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    pub fn is_zero(&self) -> bool {
        self.inner.dim == 0
    }

    pub fn action(&self, b: usize) -> &Matrix {
        &self.inner.action[b]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.inner.action
    }

    /// Action matrix of an arbitrary algebra element given in coordinates.
    pub fn combination(&self, x: &[u32]) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dim(), self.dim());
        for (b, &c) in x.iter().enumerate() {
            m.add_scaled(&self.inner.action[b], c);
        }
        m
    }

    pub fn act(&self, v: &[u32], b: usize) -> Vec<u32> {
        self.inner.action[b].apply(v)
    }

    pub fn ptr_eq(&self, other: &Module) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    pub fn same_algebra(&self, other: &Module) -> bool {
        Arc::ptr_eq(self.algebra(), other.algebra()) || self.algebra().same_as(other.algebra())
    }

    /// Generators of the algebra whose action equations determine hom spaces.
    pub(crate) fn generator_actions(&self) -> impl Iterator<Item = &Matrix> {
        self.algebra().generators().iter().map(move |&g| &self.inner.action[g])
    }

    /// The submodule spanned by the columns of `basis` (which must be independent and invariant),
    /// with its inclusion.
    pub fn submodule(&self, basis: &Matrix) -> Result<(Module, Morphism)> {
        let f = self.field();
        if basis.rows() != self.dim() {
            return Err(Error::ShapeMismatch("submodule basis has the wrong height".into()));
        }
        let r = basis.cols();
        if basis.rank() != r {
            return Err(Error::InvalidModule("submodule basis is not independent".into()));
        }
        let mut action = Vec::with_capacity(self.algebra().dim());
        for a in &self.inner.action {
            let img = a.mul(basis);
            let x = basis
                .solve(&img)?
                .ok_or_else(|| Error::InvalidModule("subspace is not invariant".into()))?;
            action.push(x);
        }
        let sub = Module::new_unchecked(self.algebra().clone(), r, action)?;
        let inc = Morphism::new_unchecked(sub.clone(), self.clone(), basis.clone());
        debug_assert_eq!(f, basis.field());
        Ok((sub, inc))
    }

    /// Quotient by the invariant subspace spanned by the columns of `basis`. Returns the
    /// quotient map and a linear (not necessarily A-linear) section of it.
    pub fn quotient(&self, basis: &Matrix) -> Result<(Module, Morphism, Matrix)> {
        let f = self.field();
        let n = self.dim();
        if basis.rows() != n {
            return Err(Error::ShapeMismatch("quotient basis has the wrong height".into()));
        }
        let sub = basis.image_basis();
        let comp = sub.complement_indices();
        let e = Matrix::from_fn(f, n, comp.len(), |r, c| u32::from(r == comp[c]));
        let full = sub.hstack(&e);
        let inv = full.inverse().ok_or_else(|| Error::InvalidModule("quotient basis completion failed".into()))?;
        let q = inv.block(sub.cols(), 0, comp.len(), n);
        for a in &self.inner.action {
            // invariance: q * a * sub = 0
            if !q.mul(&a.mul(&sub)).is_zero() {
                return Err(Error::InvalidModule("subspace is not invariant".into()));
            }
        }
        let action = self.inner.action.iter().map(|a| q.mul(&a.mul(&e))).collect();
        let quo = Module::new_unchecked(self.algebra().clone(), comp.len(), action)?;
        let map = Morphism::new_unchecked(self.clone(), quo.clone(), q);
        Ok((quo, map, e))
    }

    /// Smallest submodule containing the columns of `vectors`, as a column basis.
    pub fn generated_subspace(&self, vectors: &Matrix) -> Matrix {
        let f = self.field();
        let mut span = vectors.image_basis();
        loop {
            let mut parts = vec![span.clone()];
            for g in self.generator_actions() {
                parts.push(g.mul(&span));
            }
            let next = Matrix::hstack_all(f, self.dim(), &parts).image_basis();
            if next.cols() == span.cols() {
                return span;
            }
            span = next;
        }
    }

    pub(crate) fn direct_sum_modules(algebra: &AlgebraRef, ms: &[Module]) -> Module {
        let f = algebra.field();
        let dim = ms.iter().map(|m| m.dim()).sum();
        let action = (0..algebra.dim())
            .map(|b| {
                ms.iter()
                    .fold(Matrix::zeros(f, 0, 0), |acc, m| acc.direct_sum(m.action(b)))
            })
            .collect();
        Module { inner: Arc::new(ModuleInner { algebra: algebra.clone(), dim, action }) }
    }

    /// The same vector space over the opposite algebra with transposed action:
    /// the vector-space dual, a right module over A^op.
    pub fn dual(&self) -> Module {
        let op = self.algebra().opposite();
        let action = self.inner.action.iter().map(|a| a.transpose()).collect();
        Module { inner: Arc::new(ModuleInner { algebra: op, dim: self.dim(), action }) }
    }

    /// Same action matrices, reinterpreted over a content-equal algebra.
    pub fn rebase(&self, algebra: &AlgebraRef) -> Result<Module> {
        if !self.algebra().same_as(algebra) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Module {
            inner: Arc::new(ModuleInner {
                algebra: algebra.clone(),
                dim: self.dim(),
                action: self.inner.action.clone(),
            }),
        })
    }
}

fn character_from_generators(
    algebra: &Algebra,
    gens: &[usize],
    vals: &[u32],
    span: &[Vec<u32>],
    f: Field,
) -> Option<Vec<u32>> {
    // evaluate the character on words by closure: track (element, value) pairs
    let d = algebra.dim();
    let mut elems: Vec<Vec<u32>> = vec![algebra.unit().to_vec()];
    let mut values: Vec<u32> = vec![1];
    for (&g, &v) in gens.iter().zip(vals) {
        elems.push(algebra.basis_vector(g));
        values.push(v);
    }
    let mut frontier: Vec<usize> = (0..elems.len()).collect();
    while elems.len() < 4 * d + 8 && !frontier.is_empty() {
        let mut next = Vec::new();
        for &i in &frontier {
            for (k, &g) in gens.iter().enumerate() {
                let e = algebra.mul(&elems[i], &algebra.basis_vector(g));
                elems.push(e);
                values.push(f.mul(values[i], vals[k]));
                next.push(elems.len() - 1);
            }
        }
        frontier = next;
        let m = Matrix::from_fn(f, elems.len(), d, |r, c| elems[r][c]);
        if m.rank() == span.len() {
            break;
        }
    }
    // solve chi (as a row over basis) with elems * chi = values
    let m = Matrix::from_fn(f, elems.len(), d, |r, c| elems[r][c]);
    let rhs = Matrix::from_fn(f, elems.len(), 1, |r, _| values[r]);
    let sol = m.solve(&rhs).ok()??;
    Some((0..d).map(|b| sol.get(b, 0)).collect())
}
