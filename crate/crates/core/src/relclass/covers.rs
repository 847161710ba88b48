use crate::algebra::{AlgebraRef, Subalgebra};
use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::modcat::{direct_sum, hom_space, intertwiners, Module, Morphism};

use super::{AllowableClass, ClassKind};

impl AllowableClass {
    /// Canonical E-epi onto `m` from an E-projective.
    ///
    /// Absolute class: the projective cover built from the top of `m` when the algebra has
    /// quiver provenance, otherwise a free cover on a greedy generating set. Relative class:
    /// the induced module `m ⊗_B A` with its counit. Split semantics: the identity.
    /// Heller class: the sum map from copies of the generators indexed by hom bases.
    pub fn cover(&self, m: &Module) -> Result<Morphism> {
        self.check_module(m)?;
        if m.is_zero() {
            return Ok(Morphism::identity(m));
        }
        if self.is_split_semantics() {
            return Ok(Morphism::identity(m));
        }
        match &self.kind {
            ClassKind::Absolute => {
                if m.algebra().provenance().is_some() {
                    minimal_projective_cover(m)
                } else if m.algebra().is_split_local() {
                    local_cover(m)
                } else {
                    free_cover(m)
                }
            }
            ClassKind::Relative(b) => induced_cover(b, m),
            ClassKind::Heller(gens) => heller_cover(gens, m),
            ClassKind::Split => unreachable!(),
        }
    }

    /// Canonical E-mono from `m` into an E-injective.
    ///
    /// Absolute class: the dual of the cover of the dual module over the opposite algebra.
    /// Relative class: the coinduced module `Hom_B(A, m)` with its unit.
    pub fn envelope(&self, m: &Module) -> Result<Morphism> {
        self.check_module(m)?;
        if m.is_zero() || self.is_split_semantics() {
            return Ok(Morphism::identity(m));
        }
        match &self.kind {
            ClassKind::Absolute => {
                let d = m.dual();
                let op = AllowableClass::absolute(d.algebra().clone());
                let p = op.cover(&d)?;
                let target = p.source().dual().rebase(m.algebra())?;
                Ok(Morphism::new_unchecked(m.clone(), target, p.matrix().transpose()))
            }
            ClassKind::Relative(b) => coinduced_envelope(b, m),
            ClassKind::Heller(_) => Err(Error::Unsupported("envelopes for generator-defined classes".into())),
            ClassKind::Split => unreachable!(),
        }
    }
}

/// Minimal projective cover: lift a basis of `m / m·rad` vertex by vertex.
fn minimal_projective_cover(m: &Module) -> Result<Morphism> {
    let a = m.algebra().clone();
    let prov = a.provenance().ok_or(Error::MissingProvenance)?;
    let f = m.field();
    let n = m.dim();
    let rad_parts: Vec<Matrix> = prov.radical.iter().map(|&r| m.action(r).clone()).collect();
    let mut span = Matrix::hstack_all(f, n, &rad_parts).image_basis();
    let mut gens: Vec<(usize, Vec<u32>)> = Vec::new();
    for (v, &e) in prov.idempotents.iter().enumerate() {
        let ev = m.action(e);
        for c in 0..n {
            let col = ev.col(c);
            if col.iter().all(|&x| x == 0) {
                continue;
            }
            let test = span.hstack(&Matrix::column(f, &col));
            if test.rank() > span.cols() {
                span = test;
                gens.push((v, col));
            }
        }
    }
    let mut summands = Vec::new();
    let mut columns = Vec::new();
    for (v, g) in &gens {
        let (p, _) = Module::indecomposable_projective(&a, *v)?;
        let idx: Vec<usize> = (0..a.dim()).filter(|&b| prov.endpoints[b].0 == *v).collect();
        for &b in &idx {
            columns.push(Matrix::column(f, &m.act(g, b)));
        }
        summands.push(p);
    }
    finish_sum_map(&a, &summands, columns, m)
}

/// Over a local algebra with residue field `k`: `A^t -> m` on a lift of a basis of `m / m·rad`.
fn local_cover(m: &Module) -> Result<Morphism> {
    let a = m.algebra().clone();
    let f = m.field();
    let n = m.dim();
    let rad = a.radical_basis().ok_or(Error::MissingProvenance)?;
    let parts: Vec<Matrix> = rad.iter().map(|r| m.combination(r)).collect();
    let mut span = Matrix::hstack_all(f, n, &parts).image_basis();
    let mut gens: Vec<Vec<u32>> = Vec::new();
    for i in 0..n {
        let e: Vec<u32> = (0..n).map(|r| u32::from(r == i)).collect();
        let test = span.hstack(&Matrix::column(f, &e));
        if test.rank() > span.cols() {
            span = test;
            gens.push(e);
        }
    }
    let reg = Module::regular(a.clone());
    let summands = vec![reg; gens.len()];
    let mut columns = Vec::new();
    for g in &gens {
        for b in 0..a.dim() {
            columns.push(Matrix::column(f, &m.act(g, b)));
        }
    }
    finish_sum_map(&a, &summands, columns, m)
}

/// Whether canonical absolute covers are minimal, so that `m` is projective iff its cover is bijective.
pub(crate) fn has_minimal_covers(a: &AlgebraRef) -> bool {
    a.provenance().is_some() || a.is_split_local()
}

/// Free cover `A^r -> m` on a greedily chosen generating set of standard basis vectors.
fn free_cover(m: &Module) -> Result<Morphism> {
    let a = m.algebra().clone();
    let f = m.field();
    let n = m.dim();
    let mut gens: Vec<Vec<u32>> = Vec::new();
    let mut sub = Matrix::zeros(f, n, 0);
    for i in 0..n {
        if sub.cols() == n {
            break;
        }
        let e: Vec<u32> = (0..n).map(|r| u32::from(r == i)).collect();
        if sub.hstack(&Matrix::column(f, &e)).rank() == sub.cols() {
            continue;
        }
        gens.push(e);
        let g = Matrix::from_fn(f, n, gens.len(), |r, c| gens[c][r]);
        sub = m.generated_subspace(&g);
    }
    let reg = Module::regular(a.clone());
    let summands = vec![reg; gens.len()];
    let mut columns = Vec::new();
    for g in &gens {
        for b in 0..a.dim() {
            columns.push(Matrix::column(f, &m.act(g, b)));
        }
    }
    finish_sum_map(&a, &summands, columns, m)
}

fn finish_sum_map(a: &AlgebraRef, summands: &[Module], columns: Vec<Matrix>, m: &Module) -> Result<Morphism> {
    let src = direct_sum(a, summands)?.module;
    let mat = Matrix::hstack_all(m.field(), m.dim(), &columns);
    let p = Morphism::new(src, m.clone(), mat)?;
    debug_assert!(p.is_surjective());
    Ok(p)
}

/// `m ⊗_B A` with the counit `x ⊗ a -> x a`.
fn induced_cover(b: &Subalgebra, m: &Module) -> Result<Morphism> {
    let a = b.parent().clone();
    let f = m.field();
    let (dm, da) = (m.dim(), a.dim());
    let reg = Module::regular(a.clone());
    let eye_m = Matrix::identity(f, dm);
    let eye_a = Matrix::identity(f, da);
    // M ⊗_k A with index i * da + j; A acts on the right factor
    let action: Vec<Matrix> = (0..da).map(|c| eye_m.kron(reg.action(c))).collect();
    let big = Module::new_unchecked(a.clone(), dm * da, action)?;
    let mut rels = Vec::new();
    for v in b.basis() {
        let left = left_multiplication(&a, v);
        rels.push(m.combination(v).kron(&eye_a).sub(&eye_m.kron(&left)));
    }
    let rel = Matrix::hstack_all(f, dm * da, &rels);
    let (ind, q, section) = big.quotient(&rel)?;
    // counit on M ⊗_k A: e_i ⊗ e_j -> e_i · b_j
    let eps = Matrix::from_fn(f, dm, dm * da, |r, c| m.action(c % da).get(r, c / da));
    let counit = eps.mul(&section);
    if counit.mul(q.matrix()) != eps {
        return Err(Error::InvalidModule("counit does not descend to the induced module".into()));
    }
    Ok(Morphism::new_unchecked(ind, m.clone(), counit))
}

/// Matrix of `x -> v x` on the regular basis.
fn left_multiplication(a: &AlgebraRef, v: &[u32]) -> Matrix {
    let d = a.dim();
    let cols: Vec<Vec<u32>> = (0..d).map(|j| a.mul(v, &a.basis_vector(j))).collect();
    Matrix::from_fn(a.field(), d, d, |r, c| cols[c][r])
}

/// `Hom_B(A, m)` with the unit `x -> (a -> x a)`.
fn coinduced_envelope(b: &Subalgebra, m: &Module) -> Result<Morphism> {
    let a = b.parent().clone();
    let f = m.field();
    let (dm, da) = (m.dim(), a.dim());
    let reg = Module::regular(a.clone());
    // right B-linear maps phi: A -> M, phi(x b) = phi(x) b
    let pairs: Vec<(Matrix, Matrix)> = b.basis().iter().map(|v| (reg.combination(v), m.combination(v))).collect();
    let refs: Vec<(&Matrix, &Matrix)> = pairs.iter().map(|(s, t)| (s, t)).collect();
    let basis = intertwiners(f, da, dm, &refs);
    let r = basis.len();
    let flat = Matrix::from_fn(f, dm * da, r, |row, c| basis[c].entries()[row]);
    let coords = |phi: &Matrix| -> Result<Vec<u32>> {
        let rhs = Matrix::from_fn(f, dm * da, 1, |row, _| phi.entries()[row]);
        let x = flat
            .solve(&rhs)?
            .ok_or_else(|| Error::InvalidModule("coinduced action leaves the hom space".into()))?;
        Ok((0..r).map(|k| x.get(k, 0)).collect())
    };
    // (phi · c)(x) = phi(c x)
    let mut action = Vec::with_capacity(da);
    for c in 0..da {
        let left = left_multiplication(&a, &a.basis_vector(c));
        let mut mat = Matrix::zeros(f, r, r);
        for (k, phi) in basis.iter().enumerate() {
            let co = coords(&phi.mul(&left))?;
            for (row, v) in co.into_iter().enumerate() {
                mat.set(row, k, v);
            }
        }
        action.push(mat);
    }
    let coind = Module::new_unchecked(a.clone(), r, action)?;
    let mut unit = Matrix::zeros(f, r, dm);
    for i in 0..dm {
        // phi_i(e_j) = e_i · b_j
        let phi = Matrix::from_fn(f, dm, da, |row, j| m.action(j).get(row, i));
        for (row, v) in coords(&phi)?.into_iter().enumerate() {
            unit.set(row, i, v);
        }
    }
    Morphism::new(m.clone(), coind, unit)
}

fn heller_cover(gens: &[Module], m: &Module) -> Result<Morphism> {
    let a = m.algebra().clone();
    let f = m.field();
    let mut summands = Vec::new();
    let mut columns = Vec::new();
    for p in gens {
        for h in hom_space(p, m)? {
            summands.push(p.clone());
            columns.push(h.matrix().clone());
        }
    }
    let mat = Matrix::hstack_all(f, m.dim(), &columns);
    if mat.rank() < m.dim() {
        return Err(Error::NoCover);
    }
    let src = direct_sum(&a, &summands)?.module;
    Ok(Morphism::new_unchecked(src, m.clone(), mat))
}
