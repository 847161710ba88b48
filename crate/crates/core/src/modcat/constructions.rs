use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::AlgebraRef;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};

use super::{Module, Morphism};

const ISO_SEED: u64 = 0x5eed_150;
const ISO_EXHAUSTIVE_LIMIT: u64 = 4096;
const ISO_TRIALS: usize = 256;

/// Basis of `Hom_A(m, n)`, from the kernel of the intertwiner equations on algebra generators.
pub fn hom_space(m: &Module, n: &Module) -> Result<Vec<Morphism>> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    let gens = m.algebra().generators();
    let pairs: Vec<(&Matrix, &Matrix)> = gens.iter().map(|&g| (m.action(g), n.action(g))).collect();
    Ok(intertwiners(m.field(), m.dim(), n.dim(), &pairs)
        .into_iter()
        .map(|mat| Morphism::new_unchecked(m.clone(), n.clone(), mat))
        .collect())
}

/// Basis of the `dt x ds` matrices `M` with `M * s = t * M` for every pair `(s, t)`.
/// The unknown entry `M[i][k]` sits at position `i * ds + k`.
pub fn intertwiners(f: Field, ds: usize, dt: usize, pairs: &[(&Matrix, &Matrix)]) -> Vec<Matrix> {
    let vars = ds * dt;
    if vars == 0 {
        return vec![];
    }
    let mut eqs = Matrix::zeros(f, pairs.len() * vars, vars);
    for (gi, (rs, rt)) in pairs.iter().enumerate() {
        // (M rs - rt M)[i][j] = sum_k M[i][k] rs[k][j] - sum_l rt[i][l] M[l][j]
        for i in 0..dt {
            for j in 0..ds {
                let row = gi * vars + i * ds + j;
                for k in 0..ds {
                    let c = rs.get(k, j);
                    if c != 0 {
                        let col = i * ds + k;
                        eqs.set(row, col, f.add(eqs.get(row, col), c));
                    }
                }
                for l in 0..dt {
                    let c = rt.get(i, l);
                    if c != 0 {
                        let col = l * ds + j;
                        eqs.set(row, col, f.sub(eqs.get(row, col), c));
                    }
                }
            }
        }
    }
    let ker = eqs.kernel_basis();
    (0..ker.rows()).map(|r| Matrix::from_fn(f, dt, ds, |i, k| ker.get(r, i * ds + k))).collect()
}

pub fn hom_dim(m: &Module, n: &Module) -> Result<usize> {
    Ok(hom_space(m, n)?.len())
}

/// Coefficients `c` with `sum_k c_k * images[k] = rhs`, all matrices of one shape.
pub fn solve_in_span(images: &[Matrix], rhs: &Matrix) -> Option<Vec<u32>> {
    let f = rhs.field();
    let n = rhs.rows() * rhs.cols();
    let a = Matrix::from_fn(f, n, images.len(), |r, c| images[c].entries()[r]);
    let b = Matrix::from_fn(f, n, 1, |r, _| rhs.entries()[r]);
    let x = a.solve(&b).ok()??;
    Some((0..images.len()).map(|k| x.get(k, 0)).collect())
}

/// A sub- or quotient object with its canonical map.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub object: Module,
    pub map: Morphism,
}

pub fn kernel(f: &Morphism) -> Subquotient {
    let basis = f.matrix().kernel_basis().transpose();
    let (object, map) = f.source().submodule(&basis).expect("kernel of an A-linear map is a submodule");
    Subquotient { object, map }
}

pub fn image(f: &Morphism) -> Subquotient {
    let basis = f.matrix().image_basis();
    let (object, map) = f.target().submodule(&basis).expect("image of an A-linear map is a submodule");
    Subquotient { object, map }
}

pub fn cokernel(f: &Morphism) -> Subquotient {
    let (object, map, _) = f.target().quotient(f.matrix()).expect("image of an A-linear map is a submodule");
    Subquotient { object, map }
}

#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Module,
    pub summands: Vec<Module>,
    pub injections: Vec<Morphism>,
    pub projections: Vec<Morphism>,
}

pub fn direct_sum(algebra: &AlgebraRef, ms: &[Module]) -> Result<DirectSum> {
    if ms.iter().any(|m| !m.algebra().same_as(algebra)) {
        return Err(Error::AlgebraMismatch);
    }
    let module = Module::direct_sum_modules(algebra, ms);
    let f = algebra.field();
    let total = module.dim();
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut off = 0;
    for m in ms {
        let d = m.dim();
        let inj = Matrix::from_fn(f, total, d, |r, c| u32::from(r == off + c));
        injections.push(Morphism::new_unchecked(m.clone(), module.clone(), inj.clone()));
        projections.push(Morphism::new_unchecked(module.clone(), m.clone(), inj.transpose()));
        off += d;
    }
    Ok(DirectSum { module, summands: ms.to_vec(), injections, projections })
}

/// The map `⊕ sources -> ⊕ targets` whose `(t, s)` block is `blocks[t][s]`.
pub fn matrix_morphism(sources: &[Module], targets: &[Module], blocks: &[Vec<Morphism>]) -> Result<Morphism> {
    let algebra = sources
        .first()
        .or(targets.first())
        .map(|m| m.algebra().clone())
        .ok_or_else(|| Error::IncompatibleBlocks("no summands".into()))?;
    if blocks.len() != targets.len() || blocks.iter().any(|r| r.len() != sources.len()) {
        return Err(Error::IncompatibleBlocks(format!(
            "need a {}x{} grid of blocks",
            targets.len(),
            sources.len()
        )));
    }
    let src = direct_sum(&algebra, sources)?;
    let tgt = direct_sum(&algebra, targets)?;
    let f = algebra.field();
    let mut mat = Matrix::zeros(f, tgt.module.dim(), src.module.dim());
    let mut r0 = 0;
    for (t, row) in blocks.iter().enumerate() {
        let mut c0 = 0;
        for (s, b) in row.iter().enumerate() {
            if b.source() != &sources[s] || b.target() != &targets[t] {
                return Err(Error::IncompatibleBlocks(format!("block ({t}, {s}) has the wrong ends")));
            }
            if !b.intertwines() {
                return Err(Error::IncompatibleBlocks(format!("block ({t}, {s}) is not A-linear")));
            }
            mat.set_block(r0, c0, b.matrix());
            c0 += sources[s].dim();
        }
        r0 += targets[t].dim();
    }
    Ok(Morphism::new_unchecked(src.module, tgt.module, mat))
}

/// Pushout of `f: X -> Y` and `g: X -> Z`, computed as the cokernel of `(f, -g): X -> Y ⊕ Z`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub object: Module,
    pub leg_y: Morphism,
    pub leg_z: Morphism,
    pub sum: DirectSum,
    pub quotient: Morphism,
    section: Matrix,
}

pub fn pushout(f: &Morphism, g: &Morphism) -> Result<Pushout> {
    if f.source() != g.source() {
        return Err(Error::SourceMismatch);
    }
    let algebra = f.source().algebra().clone();
    let sum = direct_sum(&algebra, &[f.target().clone(), g.target().clone()])?;
    let h = f.matrix().vstack(&g.matrix().neg());
    let (object, quotient, section) = sum.module.quotient(&h)?;
    let leg_y = sum.injections[0].then_unchecked(&quotient);
    let leg_z = sum.injections[1].then_unchecked(&quotient);
    Ok(Pushout { object, leg_y, leg_z, sum, quotient, section })
}

impl Pushout {
    /// The induced map to another pushout, given compatible maps on the two legs' targets.
    pub fn induced(&self, other: &Pushout, on_y: &Morphism, on_z: &Morphism) -> Result<Morphism> {
        let psi = on_y.matrix().direct_sum(on_z.matrix());
        let qpsi = other.quotient.matrix().mul(&psi);
        let m = qpsi.mul(&self.section);
        if m.mul(self.quotient.matrix()) != qpsi {
            return Err(Error::NonCommuting("maps do not descend to the pushouts".into()));
        }
        Ok(Morphism::new_unchecked(self.object.clone(), other.object.clone(), m))
    }

    /// The map out of the pushout determined by maps on `Y` and `Z` agreeing on `X`.
    pub fn universal(&self, on_y: &Morphism, on_z: &Morphism) -> Result<Morphism> {
        if on_y.target() != on_z.target() {
            return Err(Error::NonCommuting("universal maps need a common target".into()));
        }
        let both = on_y.matrix().hstack(on_z.matrix());
        let m = both.mul(&self.section);
        if m.mul(self.quotient.matrix()) != both {
            return Err(Error::NonCommuting("maps disagree on the common source".into()));
        }
        Ok(Morphism::new_unchecked(self.object.clone(), on_y.target().clone(), m))
    }
}

/// Pullback of `f: Y -> X` and `g: Z -> X`, the kernel of `(f, -g): Y ⊕ Z -> X`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub object: Module,
    pub leg_y: Morphism,
    pub leg_z: Morphism,
    pub sum: DirectSum,
    pub inclusion: Morphism,
}

pub fn pullback(f: &Morphism, g: &Morphism) -> Result<Pullback> {
    if f.target() != g.target() {
        return Err(Error::SourceMismatch);
    }
    let algebra = f.target().algebra().clone();
    let sum = direct_sum(&algebra, &[f.source().clone(), g.source().clone()])?;
    let h = f.matrix().hstack(&g.matrix().neg());
    let basis = h.kernel_basis().transpose();
    let (object, inclusion) = sum.module.submodule(&basis)?;
    let leg_y = inclusion.then_unchecked(&sum.projections[0]);
    let leg_z = inclusion.then_unchecked(&sum.projections[1]);
    Ok(Pullback { object, leg_y, leg_z, sum, inclusion })
}

/// A short exact sequence `0 -> A --mono--> B --epi--> C -> 0`, checked by rank.
#[derive(Clone, Debug)]
pub struct SesWitness {
    pub mono: Morphism,
    pub epi: Morphism,
}

impl SesWitness {
    pub fn new(mono: Morphism, epi: Morphism) -> Result<Self> {
        if mono.target() != epi.source() {
            return Err(Error::ShapeMismatch("sequence maps do not compose".into()));
        }
        if !mono.is_injective() || !epi.is_surjective() {
            return Err(Error::InvalidMorphism("sequence ends are not mono and epi".into()));
        }
        if !epi.matrix().mul(mono.matrix()).is_zero()
            || mono.source().dim() + epi.target().dim() != mono.target().dim()
        {
            return Err(Error::InvalidMorphism("sequence is not exact in the middle".into()));
        }
        Ok(SesWitness { mono, epi })
    }
}

#[derive(Clone, Debug)]
pub enum IsoSearch {
    Found(Morphism),
    /// Certified: dimensions or hom-space dimensions differ, or the search was exhaustive.
    Impossible(String),
    /// Randomized search failed; the modules may still be isomorphic.
    NotFound { trials: usize },
}

impl IsoSearch {
    pub fn found(&self) -> Option<&Morphism> {
        match self {
            IsoSearch::Found(m) => Some(m),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, IsoSearch::Found(_))
    }
}

/// Searches `Hom(m, n)` for an invertible map: exhaustively when the space has at most
/// 4096 elements, otherwise by 256 seeded random combinations.
pub fn find_isomorphism(m: &Module, n: &Module) -> Result<IsoSearch> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    if m.dim() != n.dim() {
        return Ok(IsoSearch::Impossible(format!("dimensions {} and {} differ", m.dim(), n.dim())));
    }
    if m.dim() == 0 {
        return Ok(IsoSearch::Found(Morphism::zero(m, n)));
    }
    if m == n {
        return Ok(IsoSearch::Found(Morphism::identity(m)));
    }
    let basis = hom_space(m, n)?;
    let end_m = hom_dim(m, m)?;
    let end_n = hom_dim(n, n)?;
    if basis.len() != end_m || end_m != end_n {
        return Ok(IsoSearch::Impossible(format!(
            "hom dimensions differ: Hom(M,N)={}, End(M)={}, End(N)={}",
            basis.len(),
            end_m,
            end_n
        )));
    }
    let f = m.field();
    let p = f.p() as u64;
    let k = basis.len();
    let combine = |coef: &[u32]| {
        let mut mat = Matrix::zeros(f, n.dim(), m.dim());
        for (c, b) in coef.iter().zip(&basis) {
            mat.add_scaled(b.matrix(), *c);
        }
        mat
    };
    let space = p.checked_pow(k as u32);
    if let Some(total) = space.filter(|&t| t <= ISO_EXHAUSTIVE_LIMIT) {
        let mut coef = vec![0u32; k];
        for code in 0..total {
            let mut c = code;
            for x in coef.iter_mut() {
                *x = (c % p) as u32;
                c /= p;
            }
            let mat = combine(&coef);
            if mat.is_invertible() {
                return Ok(IsoSearch::Found(Morphism::new_unchecked(m.clone(), n.clone(), mat)));
            }
        }
        return Ok(IsoSearch::Impossible("exhaustive search over the hom space".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ISO_SEED);
    for _ in 0..ISO_TRIALS {
        let coef: Vec<u32> = (0..k).map(|_| rng.gen_range(0..f.p())).collect();
        let mat = combine(&coef);
        if mat.is_invertible() {
            return Ok(IsoSearch::Found(Morphism::new_unchecked(m.clone(), n.clone(), mat)));
        }
    }
    Ok(IsoSearch::NotFound { trials: ISO_TRIALS })
}
