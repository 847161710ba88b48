use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::modcat::{hom_space, kernel, solve_in_span, Module, Morphism, Subquotient};

use super::{a_linear_section, AllowableClass, ClassKind};

/// E-projective resolution `... -> P_1 -> P_0 -> X -> 0`, kept as the covers
/// `p_i: P_i -> K_{i-1}` and the kernel inclusions `K_i -> P_i` (with `K_{-1} = X`).
#[derive(Clone, Debug)]
pub struct Resolution {
    target: Module,
    covers: Vec<Morphism>,
    kernels: Vec<Subquotient>,
}

impl Resolution {
    pub fn target(&self) -> &Module {
        &self.target
    }

    /// Number of computed stages.
    pub fn stages(&self) -> usize {
        self.covers.len()
    }

    /// True when the last computed kernel is zero, so the resolution is complete.
    pub fn is_finite(&self) -> bool {
        self.kernels.last().is_some_and(|k| k.object.is_zero())
    }

    /// Index of the last nonzero term, when the resolution is complete.
    pub fn length(&self) -> Option<usize> {
        if !self.is_finite() {
            return None;
        }
        Some((0..self.stages()).rev().find(|&i| !self.covers[i].source().is_zero()).unwrap_or(0))
    }

    /// `P_i`; zero past a complete resolution.
    pub fn module(&self, i: usize) -> Module {
        match self.covers.get(i) {
            Some(p) => p.source().clone(),
            None => Module::zero(self.target.algebra().clone()),
        }
    }

    pub fn augmentation(&self) -> &Morphism {
        &self.covers[0]
    }

    pub fn cover(&self, i: usize) -> &Morphism {
        &self.covers[i]
    }

    pub fn kernel(&self, i: usize) -> &Subquotient {
        &self.kernels[i]
    }

    /// `Ω^i X`: the target for `i = 0`, otherwise the kernel of `P_{i-1} -> K_{i-2}`.
    pub fn syzygy(&self, i: usize) -> Module {
        if i == 0 {
            self.target.clone()
        } else {
            match self.kernels.get(i - 1) {
                Some(k) => k.object.clone(),
                None => Module::zero(self.target.algebra().clone()),
            }
        }
    }

    /// `d_i: P_i -> P_{i-1}` for `i >= 1`.
    pub fn differential(&self, i: usize) -> Morphism {
        assert!(i >= 1);
        let (src, tgt) = (self.module(i), self.module(i - 1));
        if i >= self.stages() {
            return Morphism::zero(&src, &tgt);
        }
        self.covers[i].then_unchecked(&self.kernels[i - 1].map)
    }

    pub fn stage_dims(&self) -> Vec<usize> {
        self.covers.iter().map(|p| p.source().dim()).collect()
    }
}

/// `Ext^n` as the cohomology of `Hom(P_•, M)`.
#[derive(Clone, Debug)]
pub struct ExtGroup {
    pub degree: usize,
    pub source: Module,
    pub target: Module,
    pub dim: usize,
    /// Cocycles `P_n -> M` whose classes form a basis.
    pub cocycles: Vec<Matrix>,
    /// A spanning set of the coboundaries.
    pub coboundaries: Vec<Matrix>,
}

impl ExtGroup {
    /// Coordinates of the class of a cocycle in the basis `cocycles`.
    pub fn coords(&self, phi: &Matrix) -> Option<Vec<u32>> {
        if self.dim == 0 {
            return Some(vec![]);
        }
        let mut span = self.cocycles.clone();
        span.extend(self.coboundaries.iter().cloned());
        let c = solve_in_span(&span, phi)?;
        Some(c[..self.dim].to_vec())
    }
}

/// Induced map `Ext^n(Y, M) -> Ext^n(X, M)` of some `f: X -> Y`.
#[derive(Clone, Debug)]
pub struct ExtMap {
    pub degree: usize,
    pub matrix: Matrix,
    pub source_dim: usize,
    pub target_dim: usize,
}

impl ExtMap {
    pub fn is_iso(&self) -> bool {
        self.source_dim == self.target_dim && self.matrix.rank() == self.source_dim
    }
}

/// A chain map between the resolutions of `X` and `Y` lifting `f`:
/// `levels[i]: P_i(X) -> P_i(Y)` and `syzygy_maps[i]: Ω^{i+1} X -> Ω^{i+1} Y`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub levels: Vec<Morphism>,
    pub syzygy_maps: Vec<Morphism>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum PdValue {
    Finite(usize),
    AtLeast(usize),
}

impl std::fmt::Display for PdValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PdValue::Finite(n) => write!(f, "{n}"),
            PdValue::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

impl AllowableClass {
    /// Resolution with stages `0..=n`, stopping early once a kernel vanishes.
    pub fn resolution(&self, x: &Module, n: usize) -> Result<Resolution> {
        self.check_module(x)?;
        let mut covers: Vec<Morphism> = Vec::new();
        let mut kernels: Vec<Subquotient> = Vec::new();
        let mut current = x.clone();
        for _ in 0..=n {
            let p = self.cover(&current)?;
            let k = kernel(&p);
            let done = k.object.is_zero();
            current = k.object.clone();
            covers.push(p);
            kernels.push(k);
            if done {
                break;
            }
        }
        Ok(Resolution { target: x.clone(), covers, kernels })
    }

    pub fn ext(&self, x: &Module, m: &Module, n: usize) -> Result<ExtGroup> {
        let res = self.resolution(x, n + 1)?;
        ext_from_resolution(&res, m, n)
    }

    /// Lift `g: P -> target(p)` through the E-epi `p`, for E-projective `P`.
    pub fn lift(&self, p: &Morphism, g: &Morphism) -> Result<Morphism> {
        if g.is_zero() {
            return Ok(Morphism::zero(g.source(), p.source()));
        }
        let homs = hom_space(g.source(), p.source())?;
        let images: Vec<Matrix> = homs.iter().map(|h| p.matrix().mul(h.matrix())).collect();
        let coef = solve_in_span(&images, g.matrix())
            .ok_or_else(|| Error::Hypothesis("map does not lift through the cover".into()))?;
        let mut mat = Matrix::zeros(g.source().field(), p.source().dim(), g.source().dim());
        for (c, h) in coef.iter().zip(&homs) {
            mat.add_scaled(h.matrix(), *c);
        }
        Ok(Morphism::new_unchecked(g.source().clone(), p.source().clone(), mat))
    }

    /// Lift `f: X -> Y` to resolutions through `n` stages (both must have at least `n + 1` stages
    /// or be complete).
    pub fn chain_map(&self, rx: &Resolution, ry: &Resolution, f: &Morphism, n: usize) -> Result<ChainMap> {
        let mut g = f.clone();
        let mut levels = Vec::new();
        let mut syzygy_maps = Vec::new();
        for i in 0..=n {
            let px = rx.module(i);
            let py = ry.module(i);
            if i >= rx.stages() || i >= ry.stages() {
                levels.push(Morphism::zero(&px, &py));
                let (kx, ky) = (rx.syzygy(i + 1), ry.syzygy(i + 1));
                syzygy_maps.push(Morphism::zero(&kx, &ky));
                g = Morphism::zero(&kx, &ky);
                continue;
            }
            let along = rx.cover(i).then_unchecked(&g);
            let fi = self.lift(ry.cover(i), &along)?;
            let ix = &rx.kernel(i).map;
            let iy = &ry.kernel(i).map;
            let rhs = fi.matrix().mul(ix.matrix());
            let gm = iy
                .matrix()
                .solve(&rhs)?
                .ok_or_else(|| Error::NonCommuting("lift does not restrict to kernels".into()))?;
            g = Morphism::new_unchecked(ix.source().clone(), iy.source().clone(), gm);
            levels.push(fi);
            syzygy_maps.push(g.clone());
        }
        Ok(ChainMap { levels, syzygy_maps })
    }

    /// The map `Ext^n(Y, M) -> Ext^n(X, M)` induced by `f: X -> Y`.
    pub fn ext_map(&self, f: &Morphism, m: &Module, n: usize) -> Result<ExtMap> {
        let rx = self.resolution(f.source(), n + 1)?;
        let ry = self.resolution(f.target(), n + 1)?;
        self.ext_map_with(&rx, &ry, f, m, n)
    }

    pub fn ext_map_with(&self, rx: &Resolution, ry: &Resolution, f: &Morphism, m: &Module, n: usize) -> Result<ExtMap> {
        let ex = ext_from_resolution(rx, m, n)?;
        let ey = ext_from_resolution(ry, m, n)?;
        let chain = self.chain_map(rx, ry, f, n)?;
        let fnm = chain.levels[n].matrix();
        let fld = m.field();
        let mut matrix = Matrix::zeros(fld, ex.dim, ey.dim);
        for (j, phi) in ey.cocycles.iter().enumerate() {
            let pulled = phi.mul(fnm);
            let c = ex
                .coords(&pulled)
                .ok_or_else(|| Error::NonCommuting("pulled-back cocycle is not a cocycle".into()))?;
            for (i, v) in c.into_iter().enumerate() {
                matrix.set(i, j, v);
            }
        }
        Ok(ExtMap { degree: n, matrix, source_dim: ey.dim, target_dim: ex.dim })
    }

    /// Least `n <= bound` with `Ω^n x` E-projective, or `AtLeast(bound + 1)`.
    pub fn projective_dimension(&self, x: &Module, bound: usize) -> Result<PdValue> {
        self.check_module(x)?;
        let mut current = x.clone();
        for n in 0..=bound {
            if self.is_projective(&current)? {
                return Ok(PdValue::Finite(n));
            }
            let k = kernel(&self.cover(&current)?).object;
            current = self.strip_projectives(&k)?.object;
        }
        Ok(PdValue::AtLeast(bound + 1))
    }

    /// Syzygy `Ω x` (kernel of the canonical cover) with E-projective summands stripped.
    pub fn syzygy(&self, x: &Module) -> Result<Module> {
        let k = kernel(&self.cover(x)?).object;
        Ok(self.strip_projectives(&k)?.object)
    }

    /// Indecomposable E-projectives used to split summands off, when they are known.
    fn projective_candidates(&self) -> Vec<Module> {
        match &self.kind {
            ClassKind::Absolute => match Module::indecomposable_projectives(&self.algebra) {
                Ok(ps) => ps,
                Err(_) => vec![Module::regular(self.algebra.clone())],
            },
            ClassKind::Heller(gens) => gens.clone(),
            _ => vec![],
        }
    }

    /// A complement of a maximal E-projective summand found by the deterministic summand finder,
    /// with its inclusion. Candidates are tried in order; for each, hom-basis pairs `(h, g)` with
    /// `g h` invertible give a split summand.
    pub fn strip_projectives(&self, m: &Module) -> Result<Subquotient> {
        let mut object = m.clone();
        let mut map = Morphism::identity(m);
        if m.is_zero() {
            return Ok(Subquotient { object, map });
        }
        if self.is_projective(m)? {
            let zero = Module::zero(m.algebra().clone());
            return Ok(Subquotient { map: Morphism::zero(&zero, m), object: zero });
        }
        let candidates = self.projective_candidates();
        'outer: loop {
            if object.is_zero() {
                break;
            }
            for p in &candidates {
                let hs = hom_space(p, &object)?;
                if hs.is_empty() {
                    continue;
                }
                let gs = hom_space(&object, p)?;
                for h in &hs {
                    for g in &gs {
                        let u = g.matrix().mul(h.matrix());
                        if let Some(uinv) = u.inverse() {
                            let r = Morphism::new_unchecked(object.clone(), p.clone(), uinv.mul(g.matrix()));
                            let k = kernel(&r);
                            map = k.map.then_unchecked(&map);
                            object = k.object;
                            continue 'outer;
                        }
                    }
                }
            }
            break;
        }
        Ok(Subquotient { object, map })
    }

    /// E-projectivity with the splitting witness, via the A-linear section of the cover.
    pub fn cover_splits(&self, m: &Module) -> Result<Option<Matrix>> {
        a_linear_section(&self.cover(m)?)
    }
}

/// `Ext^n(X, M)` from a resolution of `X` with at least `n + 1` stages (or complete).
pub fn ext_from_resolution(res: &Resolution, m: &Module, n: usize) -> Result<ExtGroup> {
    let x = res.target().clone();
    if !x.same_algebra(m) {
        return Err(Error::AlgebraMismatch);
    }
    if res.stages() < n + 2 && !res.is_finite() {
        return Err(Error::Hypothesis(format!("resolution too short for Ext^{n}")));
    }
    let pn = res.module(n);
    let cn: Vec<Morphism> = hom_space(&pn, m)?;
    let fld = m.field();
    // cocycles: phi with phi ∘ d_{n+1} = 0
    let dnext = res.differential(n + 1);
    let width = dnext.source().dim() * m.dim();
    let images = Matrix::from_fn(fld, width, cn.len(), |r, c| cn[c].matrix().mul(dnext.matrix()).entries()[r]);
    let ker = images.kernel_basis();
    let combine = |coef: &[u32]| {
        let mut mat = Matrix::zeros(fld, m.dim(), pn.dim());
        for (c, h) in coef.iter().zip(&cn) {
            mat.add_scaled(h.matrix(), *c);
        }
        mat
    };
    let cocycle_space: Vec<Matrix> = (0..ker.rows()).map(|r| combine(ker.row(r))).collect();
    let coboundaries: Vec<Matrix> = if n == 0 {
        vec![]
    } else {
        let d = res.differential(n);
        hom_space(&res.module(n - 1), m)?.iter().map(|g| g.matrix().mul(d.matrix())).collect()
    };
    let flat = |ms: &[Matrix]| Matrix::from_fn(fld, ms.len(), m.dim() * pn.dim(), |r, c| ms[r].entries()[c]);
    let mut basis_rank = flat(&coboundaries).rank();
    let mut chosen: Vec<Matrix> = coboundaries.clone();
    let mut cocycles = Vec::new();
    for z in cocycle_space {
        chosen.push(z.clone());
        let r = flat(&chosen).rank();
        if r > basis_rank {
            basis_rank = r;
            cocycles.push(z);
        } else {
            chosen.pop();
        }
    }
    Ok(ExtGroup { degree: n, source: x, target: m.clone(), dim: cocycles.len(), cocycles, coboundaries })
}
